//! The JSON manifest format.
//!
//! A manifest names an algebra by its structure constants and carries any
//! number of named scalar products and named products. Rationals are strings
//! in lowest terms, keys are sorted and the output is pretty-printed with a
//! trailing newline, so `emit_manifest(parse_manifest(s)) == s` for canonical
//! `s`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use flatlie::algebra::BracketEntry;
use flatlie::connections::ProductEntry;
use flatlie::rational::{format_rational, parse_rational};
use flatlie::{LieAlgebra, Matrix, Product, Rational, ScalarProduct, Vector};

use crate::error::CliError;

pub type RawEntry = (usize, usize, Vec<(usize, String)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawManifest {
    pub basis: Vec<String>,
    pub brackets: Vec<RawEntry>,
    pub dim: usize,
    #[serde(default)]
    pub forms: BTreeMap<String, Vec<Vec<String>>>,
    pub name: String,
    #[serde(default)]
    pub products: BTreeMap<String, Vec<RawEntry>>,
}

#[derive(Clone, Debug)]
pub struct Manifest {
    pub algebra: Arc<LieAlgebra>,
    pub forms: BTreeMap<String, ScalarProduct>,
    pub products: BTreeMap<String, Product>,
}

impl Manifest {
    pub fn new(algebra: Arc<LieAlgebra>) -> Self {
        Self {
            algebra,
            forms: BTreeMap::new(),
            products: BTreeMap::new(),
        }
    }

    pub fn with_form(mut self, name: &str, form: ScalarProduct) -> Self {
        self.forms.insert(name.to_string(), form);
        self
    }

    pub fn with_product(mut self, name: &str, product: Product) -> Self {
        self.products.insert(name.to_string(), product);
        self
    }

    pub fn form(&self, name: &str) -> Result<&ScalarProduct, CliError> {
        self.forms
            .get(name)
            .ok_or_else(|| CliError::Validation(format!("forms: no form named {name:?}")))
    }

    pub fn product(&self, name: &str) -> Result<&Product, CliError> {
        self.products
            .get(name)
            .ok_or_else(|| CliError::Validation(format!("products: no product named {name:?}")))
    }

    /// The form named `name`, or the only form when `name` is absent.
    pub fn pick_form(&self, name: Option<&str>) -> Result<&ScalarProduct, CliError> {
        match name {
            Some(n) => self.form(n),
            None if self.forms.len() == 1 => Ok(self.forms.values().next().expect("one form")),
            None => Err(CliError::Usage(
                "--form is required unless the manifest has exactly one form".into(),
            )),
        }
    }
}

fn rational(field: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|_| CliError::Validation(format!("{field}: invalid rational {text:?}")))
}

fn entries(field: &str, raw: &[RawEntry]) -> Result<Vec<BracketEntry>, CliError> {
    raw.iter()
        .enumerate()
        .map(|(pos, (i, j, coeffs))| {
            let coeffs = coeffs
                .iter()
                .map(|(k, c)| Ok((*k, rational(&format!("{field}[{pos}]"), c)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok((*i, *j, coeffs))
        })
        .collect()
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => CliError::Validation(e.to_string()),
        _ => CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        },
    })
}

pub fn parse_matrix(field: &str, rows: &[Vec<String>], n: usize) -> Result<Matrix, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Validation(format!("{field}: expected a {n}x{n} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|c| rational(field, c)).collect::<Result<Vector, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows).expect("square"))
}

pub fn emit_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| emit_vector(r)).collect()
}

pub fn emit_vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl TryFrom<RawManifest> for Manifest {
    type Error = CliError;

    fn try_from(raw: RawManifest) -> Result<Self, CliError> {
        if raw.dim == 0 {
            return Err(CliError::Validation("dim: must be positive".into()));
        }
        if raw.basis.len() != raw.dim {
            return Err(CliError::Validation(format!(
                "basis: expected {} names, got {}",
                raw.dim,
                raw.basis.len()
            )));
        }
        let brackets: Vec<BracketEntry> = entries("brackets", &raw.brackets)?;
        let algebra = Arc::new(LieAlgebra::new(raw.name, raw.basis, brackets).map_err(core_validation)?);
        let mut out = Manifest::new(Arc::clone(&algebra));
        for (name, rows) in &raw.forms {
            let field = format!("forms.{name}");
            let m = parse_matrix(&field, rows, raw.dim)?;
            if !m.is_symmetric() {
                return Err(CliError::Validation(format!("{field}: not symmetric")));
            }
            let form = ScalarProduct::new(m).map_err(|_| CliError::Validation(format!("{field}: degenerate")))?;
            out.forms.insert(name.clone(), form);
        }
        for (name, raw_entries) in &raw.products {
            let field = format!("products.{name}");
            let e: Vec<ProductEntry> = entries(&field, raw_entries)?;
            let p = Product::new(Arc::clone(&algebra), e)
                .map_err(|err| CliError::Validation(format!("{field}: {}", strip(&err))))?;
            out.products.insert(name.clone(), p);
        }
        Ok(out)
    }
}

fn strip(err: &flatlie::Error) -> String {
    match err {
        flatlie::Error::Validation(m) => m.clone(),
        other => other.to_string(),
    }
}

fn core_validation(err: flatlie::Error) -> CliError {
    CliError::Validation(strip(&err))
}

fn raw_entries(entries: Vec<BracketEntry>) -> Vec<RawEntry> {
    entries
        .into_iter()
        .map(|(i, j, c)| (i, j, c.into_iter().map(|(k, v)| (k, format_rational(&v))).collect()))
        .collect()
}

impl From<&Manifest> for RawManifest {
    fn from(m: &Manifest) -> Self {
        let a = &m.algebra;
        RawManifest {
            basis: a.basis_names().to_vec(),
            brackets: raw_entries(a.bracket_entries()),
            dim: a.dim(),
            forms: m
                .forms
                .iter()
                .map(|(k, f)| (k.clone(), emit_matrix(f.gram())))
                .collect(),
            name: a.name().to_string(),
            products: m
                .products
                .iter()
                .map(|(k, p)| (k.clone(), raw_entries(p.entries())))
                .collect(),
        }
    }
}

/// Accepts a manifest, or a report document whose `derived.manifest` holds one.
pub fn parse_manifest(text: &str) -> Result<Manifest, CliError> {
    let value: serde_json::Value = parse_json(text)?;
    let inner = match value.get("derived").and_then(|d| d.get("manifest")) {
        Some(m) if value.get("tool").is_some() => m.clone(),
        _ => value,
    };
    let raw: RawManifest = serde_json::from_value(inner).map_err(|e| CliError::Validation(e.to_string()))?;
    raw.try_into()
}

pub fn emit_manifest(m: &Manifest) -> String {
    to_canonical_json(&RawManifest::from(m))
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub(crate) fn parse_value<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    parse_json(text)
}
