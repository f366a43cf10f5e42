//! Algebra data files, built-in algebras, and serialization helpers.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::base::{BaseElement, BaseRing};
use crate::error::{AlgebraError, Result};
use crate::extension::{ExtensionSpec, OkElement};
use crate::order::AlgebraSpec;

/// On-disk layout of an algebra description. Integers are decimal strings
/// (elements of `O_F` such as `"1+i"` or `"-2w"`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub base_ring: String,
    pub degree: usize,
    pub basis: Vec<String>,
    pub mult_table: Vec<Vec<Vec<String>>>,
    pub sigma_matrix: Vec<Vec<String>>,
    pub embeddings: Vec<Vec<[f64; 2]>>,
    pub u: String,
    #[serde(default)]
    pub claims_division: bool,
    #[serde(default)]
    pub primitive_element: Option<Vec<String>>,
}

const BUILTINS: [(&str, &str); 5] = [
    ("golden_u_i", include_str!("../data/golden_u_i.json")),
    ("golden_u_1pi", include_str!("../data/golden_u_1pi.json")),
    ("q7_cubic", include_str!("../data/q7_cubic.json")),
    ("q15_quartic", include_str!("../data/q15_quartic.json")),
    ("gauss_over_Q", include_str!("../data/gauss_over_Q.json")),
];

/// Names of the shipped algebras.
pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

/// A shipped algebra by name (with or without the `.json` suffix).
pub fn builtin_algebra(name: &str) -> Result<AlgebraSpec> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    BUILTINS
        .iter()
        .find(|(n, _)| *n == stem)
        .ok_or_else(|| AlgebraError::invalid(format!("unknown built-in algebra {name:?}")))
        .and_then(|(_, text)| parse_algebra(text))
}

/// Reads an algebra from a file; a path that does not exist but names a
/// built-in (e.g. `golden_u_i.json`) resolves to that built-in.
pub fn load_algebra(path: impl AsRef<Path>) -> Result<AlgebraSpec> {
    let path = path.as_ref();
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AlgebraError::invalid(format!("cannot read {}: {e}", path.display())))?;
        return parse_algebra(&text);
    }
    let stem = path.file_name().and_then(|s| s.to_str()).unwrap_or_default();
    builtin_algebra(stem)
        .map_err(|_| AlgebraError::invalid(format!("no such file or built-in algebra: {}", path.display())))
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSpec> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| AlgebraError::invalid(format!("algebra file: {e}")))?;
    file.to_algebra()
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<AlgebraSpec> {
        let ring = BaseRing::from_name(&self.base_ring)
            .ok_or_else(|| AlgebraError::invalid(format!("unknown base ring {:?}", self.base_ring)))?;
        let el = |s: &String| BaseElement::parse(ring, s);
        let row = |r: &Vec<String>| r.iter().map(el).collect::<Result<Vec<_>>>();
        let mult = self
            .mult_table
            .iter()
            .map(|m| m.iter().map(row).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let sigma = self.sigma_matrix.iter().map(row).collect::<Result<Vec<_>>>()?;
        let embeddings = self
            .embeddings
            .iter()
            .map(|e| e.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let prim = self.primitive_element.as_ref().map(row).transpose()?.map(OkElement::new);
        if self.basis.len() != self.degree {
            return Err(AlgebraError::invalid("basis length differs from degree"));
        }
        let ext = ExtensionSpec::new(
            self.name.clone(),
            ring,
            self.basis.clone(),
            mult,
            sigma,
            embeddings,
            prim,
        )?;
        AlgebraSpec::new(ext, el(&self.u)?, self.claims_division)
            .map(|a| a.with_description(self.description.clone()))
    }
}

/// Serde adapter storing a [`BaseElement`] as its display string.
pub mod base_element_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::base::{BaseElement, BaseRing};

    pub fn serialize<S: Serializer>(x: &BaseElement, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    /// Accepts strings in any base ring; the symbol decides (`i` or `w`,
    /// plain integers default to ℤ[i]).
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BaseElement, D::Error> {
        let s = String::deserialize(d)?;
        let ring = if s.contains('w') {
            BaseRing::EisensteinIntegers
        } else {
            BaseRing::GaussianIntegers
        };
        BaseElement::parse(ring, &s).map_err(serde::de::Error::custom)
    }
}

/// `"[c0, c1, …]"`.
pub fn format_coords(coords: impl IntoIterator<Item = BaseElement>) -> String {
    let parts: Vec<String> = coords.into_iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in builtin_names() {
            let a = builtin_algebra(name).unwrap();
            assert_eq!(a.extension().name(), name);
        }
        assert!(builtin_algebra("nope").is_err());
        assert!(load_algebra("golden_u_i.json").is_ok());
    }

    #[test]
    fn unknown_fields_rejected() {
        let mut v: serde_json::Value =
            serde_json::from_str(include_str!("../data/golden_u_i.json")).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(parse_algebra(&v.to_string()).is_err());
    }
}
