//! Resolving algebra references: `catalog:NAME`, a file path, or `-` for stdin.

use std::io::Read;

use geodesy_core::catalog::{self, Params};

use crate::document::AlgebraDocument;
use crate::error::CliError;

pub const CATALOG_PREFIX: &str = "catalog:";

#[derive(Clone, Debug)]
pub struct Input {
    pub doc: AlgebraDocument,
    /// Entry name and the parameters given for it.
    pub catalog: Option<(String, Params)>,
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io { path: "<stdin>".into(), source: e })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_string(), source: e })
}

/// Loads an algebra; `params` (`key=value` items) only apply to catalog references.
pub fn load(reference: &str, params: &[String]) -> Result<Input, CliError> {
    if let Some(name) = reference.strip_prefix(CATALOG_PREFIX) {
        let p = catalog::parse_params(&params.join(","))?;
        let g = catalog::instantiate(name, &p)?;
        let label = if p.is_empty() { name.to_string() } else { format!("{name} {}", catalog::render_params(&p)) };
        let doc = AlgebraDocument::from_algebra(&label, &g, None, None);
        return Ok(Input { doc, catalog: Some((name.to_string(), p)) });
    }
    if !params.is_empty() {
        return Err(CliError::Usage(format!("parameters {params:?} only apply to catalog references")));
    }
    let doc = AlgebraDocument::parse(&read_text(reference)?)?;
    Ok(Input { doc, catalog: None })
}
