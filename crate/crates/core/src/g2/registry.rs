use std::collections::HashSet;
use std::path::Path;

use rug::Rational;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numkernel::{format_sig, parse_decimal, BigReal};

/// Registry shipped with the crate.
pub const SHIPPED_REGISTRY: &str = include_str!("../../data/registry.json");

/// A quoted value with its uncertainty components (same units as the value).
#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub label: String,
    pub value: Rational,
    pub value_text: String,
    pub uncertainty_components: Vec<Rational>,
    pub year: i32,
    pub source: String,
}

impl Measurement {
    /// Quadrature sum of the components.
    pub fn uncertainty(&self) -> f64 {
        let parts: Vec<f64> = self.uncertainty_components.iter().map(Rational::to_f64).collect();
        super::combine_uncertainties(&parts)
    }

    pub fn value_big(&self, prec: u32) -> BigReal {
        BigReal::from_rational(&self.value, prec)
    }

    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Row {
    label: String,
    value: String,
    uncertainty_components: Vec<String>,
    year: i32,
    source_eq: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Registry {
    entries: Vec<Measurement>,
}

impl Registry {
    pub fn shipped() -> Self {
        Registry::from_json(SHIPPED_REGISTRY).expect("shipped registry is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        Registry::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Row> = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let mut seen = HashSet::new();
        let mut entries = Vec::with_capacity(rows.len());
        for (i, r) in rows.into_iter().enumerate() {
            let field_err = |field: &str, msg: String| {
                Error::Schema(format!("entry {i} ({}), field `{field}`: {msg}", r.label))
            };
            if r.label.is_empty() {
                return Err(field_err("label", "empty label".into()));
            }
            if !seen.insert(r.label.clone()) {
                return Err(field_err("label", "duplicate label".into()));
            }
            let value = parse_decimal(&r.value).map_err(|e| field_err("value", e.to_string()))?;
            let mut comps = Vec::new();
            for c in &r.uncertainty_components {
                let q = parse_decimal(c).map_err(|e| field_err("uncertainty_components", e.to_string()))?;
                if q < 0 {
                    return Err(field_err(
                        "uncertainty_components",
                        format!("negative component {c}"),
                    ));
                }
                comps.push(q);
            }
            entries.push(Measurement {
                label: r.label,
                value,
                value_text: r.value,
                uncertainty_components: comps,
                year: r.year,
                source: r.source_eq,
            });
        }
        Ok(Registry { entries })
    }

    pub fn entries(&self) -> &[Measurement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &str) -> Result<&Measurement> {
        self.entries
            .iter()
            .find(|m| m.label == label)
            .ok_or_else(|| Error::Input(format!("no registry entry labelled {label:?}")))
    }
}

/// One line per entry: label, value, total uncertainty, year, source.
pub fn registry_listing(reg: &Registry) -> Vec<String> {
    reg.entries()
        .iter()
        .map(|m| {
            let u = m.uncertainty();
            let unc = if u == 0.0 {
                "exact".to_string()
            } else {
                format_sig(&rug::Float::with_val(64, u), 2)
            };
            format!("{}\t{}\t{}\t{}\t{}", m.label, m.value_text, unc, m.year, m.source)
        })
        .collect()
}
