//! Exact endograph, sendograph, supremum and `L_p` distances between
//! finitely represented fuzzy sets, with level-structure diagnostics,
//! compactness certificates and completion constructions.

pub mod completion;
pub mod convergence;
pub mod doc;
pub mod envelope;
pub mod error;
pub mod extreal;
pub mod fuzzy;
pub mod interval;
pub mod metrics;
pub mod region;
pub mod space;

pub use error::{Error, Result};
pub use extreal::{Dist, ExtReal};
pub use interval::{Interval, IntervalUnion};
pub use region::Region;
pub use space::{GroundSpace, Point};
