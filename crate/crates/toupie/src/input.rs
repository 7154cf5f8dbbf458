//! The input document: a strict TOML description of a toupie algebra with
//! exact rational coefficients. Branch indices are 1-based in files and
//! 0-based inside the library; coefficients are strings `p` or `p/q`, never
//! floats.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{BuildError, MonomialWindow, QuiverSpec, ToupieAlgebra};
use crate::rat::parse_rat;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub branches: Vec<usize>,
    #[serde(default)]
    pub monomial_relations: Vec<WindowEntry>,
    #[serde(default)]
    pub linear_relations: Vec<LinearEntry>,
    #[serde(default)]
    pub options: InputOptions,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowEntry {
    pub branch: usize,
    pub start: usize,
    pub length: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearEntry {
    pub coefficients: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    pub max_degree: Option<usize>,
    pub oracle_budget: Option<usize>,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{}", diagnostics.join("\n"))]
    Invalid { diagnostics: Vec<String> },
    #[error("invalid algebra: {0}")]
    Build(#[from] BuildError),
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument, InputError> {
        toml::from_str(text).map_err(|e| InputError::Parse(e.to_string()))
    }

    /// Converts the 1-based document into a library spec, collecting one
    /// diagnostic per violation.
    pub fn to_spec(&self) -> Result<QuiverSpec, InputError> {
        let mut diagnostics = Vec::new();
        let nb = self.branches.len();
        let check_branch = |field: String, b: usize, diagnostics: &mut Vec<String>| -> bool {
            if b == 0 || b > nb {
                diagnostics.push(format!(
                    "{field}: branch index {b} out of range 1..={nb}"
                ));
                false
            } else {
                true
            }
        };

        let mut spec = QuiverSpec {
            branch_lengths: self.branches.clone(),
            ..Default::default()
        };
        for (i, w) in self.monomial_relations.iter().enumerate() {
            if check_branch(
                format!("monomial_relations[{i}].branch"),
                w.branch,
                &mut diagnostics,
            ) {
                spec.monomial_relations.push(MonomialWindow {
                    branch: w.branch - 1,
                    start: w.start,
                    length: w.length,
                });
            }
        }
        for (i, row) in self.linear_relations.iter().enumerate() {
            let mut entries = BTreeMap::new();
            for (key, value) in &row.coefficients {
                let field = format!("linear_relations[{i}].coefficients.{key}");
                let Ok(b) = key.parse::<usize>() else {
                    diagnostics.push(format!("{field}: key is not a branch index"));
                    continue;
                };
                if !check_branch(field.clone(), b, &mut diagnostics) {
                    continue;
                }
                match parse_rat(value) {
                    Ok(c) => {
                        entries.insert(b - 1, c);
                    }
                    Err(e) => diagnostics.push(format!("{field}: {e}")),
                }
            }
            spec.linear_relations.push(entries);
        }
        if !diagnostics.is_empty() {
            return Err(InputError::Invalid { diagnostics });
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<ToupieAlgebra, InputError> {
        Ok(ToupieAlgebra::build(self.to_spec()?)?)
    }
}
