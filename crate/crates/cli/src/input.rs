use std::collections::HashMap;
use std::io::Read;

use endograph::doc::{check_document, DocCheck, Document, FuzzyObject};

use crate::{CliError, CliResult};

/// Reads documents from paths or stdin, reading stdin at most once.
pub(crate) struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    cache: HashMap<String, String>,
}

impl<'a> Inputs<'a> {
    pub(crate) fn new(stdin: &'a mut dyn Read) -> Self {
        Inputs {
            stdin,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn text(&mut self, path: &str) -> CliResult<String> {
        if let Some(t) = self.cache.get(path) {
            return Ok(t.clone());
        }
        let t = if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::failure(format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::failure(format!("{path}: {e}")))?
        };
        self.cache.insert(path.to_string(), t.clone());
        Ok(t)
    }

    pub(crate) fn check(&mut self, path: &str) -> CliResult<DocCheck> {
        Ok(check_document(&self.text(path)?))
    }

    pub(crate) fn document(&mut self, path: &str) -> CliResult<Document> {
        let c = self.check(path)?;
        match c.document {
            Some(d) if c.problems.is_empty() => Ok(d),
            _ => {
                let lines: Vec<String> = c.problems.iter().map(|p| format!("{path}: {p}")).collect();
                Err(CliError::failure(lines.join("\n")))
            }
        }
    }

    pub(crate) fn object(&mut self, spec: &str) -> CliResult<Loaded> {
        let (path, name) = split_spec(spec);
        let doc = self.document(path)?;
        load_object(doc, name).map_err(|m| CliError::failure(format!("{spec}: {m}")))
    }
}

/// A set picked out of a document, with the document it came from.
pub struct Loaded {
    pub document: Document,
    pub name: String,
    pub object: FuzzyObject,
}

fn split_spec(spec: &str) -> (&str, Option<&str>) {
    match spec.rsplit_once('#') {
        Some((p, n)) if !n.is_empty() => (p, Some(n)),
        _ => (spec, None),
    }
}

/// Picks the set called `name`, or the only set when `name` is `None`.
pub fn load_object(document: Document, name: Option<&str>) -> Result<Loaded, String> {
    let pick = match name {
        Some(n) => document.sets.iter().find(|s| s.name == n).ok_or(format!("no set named {n:?}"))?,
        None => match document.sets.as_slice() {
            [one] => one,
            [] => return Err("document has no sets".into()),
            _ => return Err("document has several sets; name one with path#name".into()),
        },
    };
    Ok(Loaded {
        name: pick.name.clone(),
        object: pick.object.clone(),
        document,
    })
}
