use std::sync::Arc;

use super::step::StepFuzzySet;
use super::validate::{self, ValidationReport};
use super::Leveled;
use crate::error::{Error, Result};
use crate::extreal::Dist;
use crate::region::{point_set_hausdorff, Region};
use crate::space::GroundSpace;

/// An element of `P^1_USC`: the sendograph of `base` together with
/// `ghost x {0}`.
///
/// `<v>_0 = [base]_0 ∪ ghost` and `<v>_α = [base]_α` for `α > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SendoElement {
    base: StepFuzzySet,
    ghost: Region,
}

impl SendoElement {
    pub fn from_parts(base: StepFuzzySet, ghost: Region) -> Self {
        SendoElement { base, ghost }
    }

    /// Validated in USC mode: ghost closed, base valid.
    pub fn new(base: StepFuzzySet, ghost: Region) -> Result<Self> {
        let v = Self::from_parts(base, ghost);
        let r = v.validate();
        if r.is_valid() {
            Ok(v)
        } else {
            Err(Error::InvalidFuzzySet(r.to_string()))
        }
    }

    pub fn base(&self) -> &StepFuzzySet {
        &self.base
    }

    pub fn ghost(&self) -> &Region {
        &self.ghost
    }

    pub fn space_arc(&self) -> &Arc<GroundSpace> {
        self.base.space_arc()
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate_sendo(self, false)
    }

    /// Validation with compact ghost and support, for `P^1_USCB`.
    pub fn validate_uscb(&self) -> ValidationReport {
        validate::validate_sendo(self, true)
    }

    /// `→u`: the sendograph of `u`, with no ghost.
    pub fn arrow_forward(u: &StepFuzzySet) -> SendoElement {
        SendoElement {
            ghost: Region::empty_in(u.space_arc()),
            base: u.clone(),
        }
    }

    /// `←v`: discards the ghost; the 0-cut becomes `cl(C_1)` again.
    pub fn arrow_back(&self) -> StepFuzzySet {
        self.base.clone()
    }

    /// `v'`: same positive levels, level 0 recomputed from them.
    pub fn v_prime(&self) -> SendoElement {
        Self::arrow_forward(&self.arrow_back())
    }
}

impl Leveled for SendoElement {
    fn space(&self) -> &GroundSpace {
        self.base.space_arc()
    }

    fn thresholds(&self) -> &[f64] {
        self.base.thresholds()
    }

    fn band_cut(&self, i: usize) -> &Region {
        self.base.band_cut(i)
    }

    fn zero_level(&self) -> Region {
        self.base
            .support()
            .union(&self.ghost)
            .expect("ghost kind checked by validation")
    }
}

impl From<StepFuzzySet> for SendoElement {
    fn from(u: StepFuzzySet) -> Self {
        SendoElement::arrow_forward(&u)
    }
}

/// The six equivalent descriptions of `v` being the sendograph of a fuzzy
/// set, each computed on its own.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrowImageReport {
    /// `v = →u` for some USC `u`: the ghost lies in `cl(C_1)`.
    pub is_image: bool,
    /// `<v>_0 = cl(∪_{δ>0} <v>_δ)`.
    pub zero_is_closure_of_positive: bool,
    /// `v = v'`, compared level by level.
    pub equals_v_prime: bool,
    /// `<v>_0 = [←v]_0`.
    pub zero_matches_back: bool,
    /// Image of a USCB set: as `is_image`, with a compact 0-level.
    pub is_uscb_image: bool,
    /// `H(<v>_δ, <v>_0)` for small `δ`; the limit as `δ -> 0+` is this value
    /// since the cuts are constant on the first band.
    pub first_band_gap: Dist,
}

impl ArrowImageReport {
    pub fn gap_vanishes(&self) -> bool {
        self.first_band_gap == Dist::ZERO
    }

    /// Whether the six conditions agree, as they must in USCB mode.
    pub fn consistent(&self) -> bool {
        let c = [
            self.is_image,
            self.zero_is_closure_of_positive,
            self.equals_v_prime,
            self.zero_matches_back,
            self.is_uscb_image,
            self.gap_vanishes(),
        ];
        c.iter().all(|&b| b == c[0])
    }
}

/// Evaluates the arrow-image conditions for `v`.
pub fn is_arrow_image(v: &SendoElement) -> Result<ArrowImageReport> {
    let r = v.validate();
    if !r.is_valid() {
        return Err(Error::InvalidFuzzySet(r.to_string()));
    }
    let space = v.space();
    let c1 = v.base.band_cut(0);
    let closed_c1 = c1.closure();
    let zero = v.zero_level();
    let is_image = v.ghost.is_subset(&closed_c1)?;
    let zero_is_closure_of_positive = zero == closed_c1;
    let vp = v.v_prime();
    let equals_v_prime = super::equivalent(v, &vp);
    let zero_matches_back = zero == v.arrow_back().cut(0.0)?;
    let is_uscb_image = is_image && zero.is_compact();
    let first_band_gap = point_set_hausdorff(c1, &zero, space)?;
    Ok(ArrowImageReport {
        is_image,
        zero_is_closure_of_positive,
        equals_v_prime,
        zero_matches_back,
        is_uscb_image,
        first_band_gap,
    })
}
