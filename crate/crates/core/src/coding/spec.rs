//! Code-spec files: a JSON description of a coset code and its search.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::base::BaseElement;
use crate::error::{AlgebraError, Result};
use crate::extension::IdealSpec;
use crate::io::{builtin_algebra, load_algebra};
use crate::order::AlgebraSpec;

use super::{FieldCodeKind, LiftStrategy, OuterCode};

/// `{alpha, s}` for `J = α^sΛ`, or `{alpha, monomial: j}` for `J = ⟨z^j⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeSpecIdeal {
    Monomial {
        alpha: String,
        monomial: u32,
    },
    Principal {
        alpha: String,
        #[serde(default = "one")]
        s: u32,
    },
}

fn one() -> u32 {
    1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeSpecKind {
    /// Parity over `Λ/J` (or over `O_K/qO_K` for a monomial ideal).
    Parity,
    /// Reed-Solomon on the first coefficients.
    ReedSolomon,
    /// Parity on the first coefficients, other coefficients free.
    FirstCoefficient,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecOuter {
    pub kind: CodeSpecKind,
    #[serde(rename = "L")]
    pub length: usize,
    #[serde(default)]
    pub k: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    /// A built-in name or a path to an algebra file.
    pub algebra_spec: String,
    pub ideal: CodeSpecIdeal,
    pub outer: CodeSpecOuter,
    #[serde(default = "default_strategy")]
    pub lift_strategy: LiftStrategy,
    #[serde(default = "one")]
    pub box_bound: u32,
    #[serde(default)]
    pub seed: u64,
}

fn default_strategy() -> LiftStrategy {
    LiftStrategy::CanonicalZero
}

impl CodeSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AlgebraError::invalid(format!("code spec: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| AlgebraError::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn algebra(&self) -> Result<AlgebraSpec> {
        builtin_algebra(&self.algebra_spec).or_else(|_| load_algebra(&self.algebra_spec))
    }

    pub fn build(&self) -> Result<(AlgebraSpec, OuterCode)> {
        let algebra = self.algebra()?;
        let ring = algebra.base();
        let len = self.outer.length;
        let code = match (&self.ideal, self.outer.kind) {
            (CodeSpecIdeal::Principal { alpha, s }, CodeSpecKind::Parity) => {
                let ideal = IdealSpec::new(BaseElement::parse(ring, alpha)?, *s)?;
                OuterCode::parity(&algebra, &ideal, len)?
            }
            (CodeSpecIdeal::Monomial { alpha, monomial }, kind) => {
                if *monomial != 1 {
                    return Err(AlgebraError::UnsupportedCase(format!(
                        "codes over Λ/⟨z^{monomial}⟩ (only ⟨z⟩ is supported)"
                    )));
                }
                let q = BaseElement::parse(ring, alpha)?;
                if !q.divides(algebra.u()) {
                    return Err(AlgebraError::WrongCase(format!(
                        "u = {} is not in ({q}), so ⟨z⟩ is the whole order",
                        algebra.u()
                    )));
                }
                OuterCode::first_coefficient(&algebra, &q, self.field_kind(kind)?, len)?
            }
            (CodeSpecIdeal::Principal { alpha, s }, kind) => {
                if *s != 1 {
                    return Err(AlgebraError::UnsupportedCase(
                        "first-coefficient codes need a prime ideal".into(),
                    ));
                }
                let q = BaseElement::parse(ring, alpha)?;
                OuterCode::first_coefficient(&algebra, &q, self.field_kind(kind)?, len)?
            }
        };
        Ok((algebra, code))
    }

    fn field_kind(&self, kind: CodeSpecKind) -> Result<FieldCodeKind> {
        Ok(match kind {
            CodeSpecKind::Parity | CodeSpecKind::FirstCoefficient => FieldCodeKind::Parity,
            CodeSpecKind::ReedSolomon => FieldCodeKind::ReedSolomon {
                k: self
                    .outer
                    .k
                    .ok_or_else(|| AlgebraError::invalid("a Reed-Solomon code needs k"))?,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::OuterKind;

    #[test]
    fn parses_both_ideal_shapes() {
        let s = CodeSpec::parse(
            r#"{"algebra_spec": "golden_u_i", "ideal": {"alpha": "1+i", "s": 1},
                "outer": {"kind": "parity", "L": 3}, "box_bound": 1, "seed": 4}"#,
        )
        .unwrap();
        let (_, code) = s.build().unwrap();
        assert_eq!(code.kind(), OuterKind::ParityOverRing);
        let s = CodeSpec::parse(
            r#"{"algebra_spec": "golden_u_1pi.json", "ideal": {"alpha": "1+i", "monomial": 1},
                "outer": {"kind": "parity", "L": 3}, "lift_strategy": {"randomized": 9}}"#,
        )
        .unwrap();
        assert_eq!(s.lift_strategy, LiftStrategy::Randomized(9));
        let (_, code) = s.build().unwrap();
        assert_eq!(code.kind(), OuterKind::FirstCoefficientScheme);
        assert!(code.free_part_in_ideal());
        let bad = CodeSpec::parse(
            r#"{"algebra_spec": "golden_u_i", "ideal": {"alpha": "1+i"},
                "outer": {"kind": "parity", "L": 3}, "colour": 1}"#,
        );
        assert!(bad.is_err());
        let s = CodeSpec::parse(
            r#"{"algebra_spec": "golden_u_i", "ideal": {"alpha": "1+i", "monomial": 1},
                "outer": {"kind": "parity", "L": 3}}"#,
        )
        .unwrap();
        assert_eq!(s.build().unwrap_err().name(), "WrongCase");
    }
}
