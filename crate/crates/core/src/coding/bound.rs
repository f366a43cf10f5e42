//! Lower bounds on `Δ_min = min |det(Σ X_i X_i*)|` for coset codes.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::base::BaseElement;
use crate::error::{AlgebraError, Result};
use crate::order::AlgebraSpec;

use super::search::SearchMode;
use super::CosetCodeword;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundFormula {
    /// `min(d_H² · min_{x∉J} |det x|², min_{0≠x∈J} |det x|²)`.
    General,
    /// `min|det|² · min(d_H², |α|^{2n})` for `J = αΛ`.
    Principal,
    /// `min|det|² · min(d_H², |α|^{2sn})` for `J = α^sΛ`.
    PrincipalPower,
    /// `min|det|² · min(d_H², |u|^{2j})` for `J = ⟨z^j⟩`, `u ∈ q`.
    NilpotentU,
}

/// Shape of the ideal `J` the outer code lives over.
#[derive(Clone, Debug, PartialEq)]
pub enum IdealShape {
    /// `J = α^sΛ`.
    Principal { alpha: BaseElement, s: u32 },
    /// `J = ⟨z^j⟩ + qΛ` in `Λ/qΛ`, `q = (alpha)`.
    ZPower { alpha: BaseElement, j: u32 },
}

impl IdealShape {
    pub fn describe(&self) -> String {
        match self {
            IdealShape::Principal { alpha, s: 1 } => format!("({alpha})Λ"),
            IdealShape::Principal { alpha, s } => format!("({alpha})^{s}Λ"),
            IdealShape::ZPower { alpha, j } => format!("⟨z^{j}⟩ over ({alpha})"),
        }
    }

    /// The formula tailored to this shape.
    pub fn natural_formula(&self) -> BoundFormula {
        match self {
            IdealShape::Principal { s: 1, .. } => BoundFormula::Principal,
            IdealShape::Principal { .. } => BoundFormula::PrincipalPower,
            IdealShape::ZPower { .. } => BoundFormula::NilpotentU,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundInputs {
    pub d_h: u64,
    /// `min_{0≠x∈Λ} |det M(x)|²`.
    pub min_det_sq: f64,
    /// `min_{0≠x∈J} |det M(x)|²`, needed by the general formula only.
    pub ideal_min_det_sq: Option<f64>,
}

/// A bound, optionally with the result of an exhaustive or sampled search.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub lower_bound: f64,
    pub bound_formula: BoundFormula,
    pub d_h: u64,
    pub min_det_sq: f64,
    /// The ideal-side term of the bound (`|α|^{2sn}`, `|u|^{2j}` or the
    /// minimum over `J`).
    pub ideal_term: f64,
    pub search_min: Option<f64>,
    pub argmin: Option<CosetCodeword>,
    /// Codewords attaining `search_min`, smallest first, capped.
    pub minimizers: Vec<CosetCodeword>,
    pub minimizer_count: u64,
    pub search_mode: Option<SearchMode>,
    pub box_bound: Option<u32>,
    pub search_space: Option<u128>,
    pub evaluations: u64,
}

impl DeltaReport {
    /// `search_min ≥ lower_bound` up to `1e-9`, when a search was run.
    pub fn consistent(&self) -> bool {
        self.search_min
            .is_none_or(|m| m >= self.lower_bound - 1e-9 * self.lower_bound.max(1.0))
    }
}

fn norm_f64(x: &BaseElement) -> f64 {
    x.norm().to_f64().unwrap_or(f64::INFINITY)
}

pub fn delta_lower_bound(
    algebra: &AlgebraSpec,
    shape: &IdealShape,
    formula: BoundFormula,
    inputs: BoundInputs,
) -> Result<DeltaReport> {
    let n = algebra.degree() as i32;
    let mismatch = || AlgebraError::FormulaMismatch {
        requested: format!("{formula:?}"),
        shape: shape.describe(),
    };
    let d2 = (inputs.d_h * inputs.d_h) as f64;
    let (lower_bound, ideal_term) = match (formula, shape) {
        (BoundFormula::Principal, IdealShape::Principal { alpha, s: 1 }) => {
            let t = norm_f64(alpha).powi(n);
            (inputs.min_det_sq * d2.min(t), t)
        }
        (BoundFormula::PrincipalPower, IdealShape::Principal { alpha, s }) => {
            let t = norm_f64(alpha).powi(n * *s as i32);
            (inputs.min_det_sq * d2.min(t), t)
        }
        (BoundFormula::NilpotentU, IdealShape::ZPower { alpha, j }) => {
            if *j == 0 || !alpha.divides(algebra.u()) {
                return Err(mismatch());
            }
            let t = norm_f64(algebra.u()).powi(*j as i32);
            (inputs.min_det_sq * d2.min(t), t)
        }
        (BoundFormula::General, _) => {
            let t = inputs.ideal_min_det_sq.ok_or_else(|| {
                AlgebraError::invalid("the general bound needs the minimum of |det|² over J")
            })?;
            ((d2 * inputs.min_det_sq).min(t), t)
        }
        _ => return Err(mismatch()),
    };
    Ok(DeltaReport {
        lower_bound,
        bound_formula: formula,
        d_h: inputs.d_h,
        min_det_sq: inputs.min_det_sq,
        ideal_term,
        search_min: None,
        argmin: None,
        minimizers: Vec::new(),
        minimizer_count: 0,
        search_mode: None,
        box_bound: None,
        search_space: None,
        evaluations: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_algebra;

    #[test]
    fn worked_bounds() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let alpha = BaseElement::parse(a.base(), "1+i").unwrap();
        let inputs = BoundInputs {
            d_h: 2,
            min_det_sq: 1.0,
            ideal_min_det_sq: None,
        };
        let shape = IdealShape::Principal { alpha: alpha.clone(), s: 1 };
        let r = delta_lower_bound(&a, &shape, BoundFormula::Principal, inputs).unwrap();
        assert_eq!(r.lower_bound, 4.0);
        let sq = IdealShape::Principal { alpha: alpha.clone(), s: 2 };
        let r = delta_lower_bound(&a, &sq, BoundFormula::PrincipalPower, inputs).unwrap();
        assert_eq!((r.lower_bound, r.ideal_term), (4.0, 16.0));
        let err = delta_lower_bound(&a, &sq, BoundFormula::Principal, inputs).unwrap_err();
        assert_eq!(err.name(), "FormulaMismatch");

        let b = builtin_algebra("golden_u_1pi").unwrap();
        let z = IdealShape::ZPower { alpha: alpha.clone(), j: 1 };
        let r = delta_lower_bound(&b, &z, BoundFormula::NilpotentU, inputs).unwrap();
        assert_eq!(r.lower_bound, 2.0);
        // u = i is a unit, so ⟨z⟩ is not a proper nilpotent ideal there
        let err = delta_lower_bound(&a, &z, BoundFormula::NilpotentU, inputs).unwrap_err();
        assert_eq!(err.name(), "FormulaMismatch");

        let weak = BoundInputs {
            d_h: 1,
            min_det_sq: 1.0,
            ideal_min_det_sq: Some(4.0),
        };
        let r = delta_lower_bound(&a, &shape, BoundFormula::General, weak).unwrap();
        assert_eq!(r.lower_bound, 1.0);
        let r = delta_lower_bound(&a, &shape, BoundFormula::Principal, weak).unwrap();
        assert_eq!(r.lower_bound, 1.0);
    }
}
