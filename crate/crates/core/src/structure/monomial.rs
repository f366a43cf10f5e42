//! Monomial ideals of `Λ/qΛ` for a split prime with `u ∈ q`.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::extension::FactorizationData;
use crate::residue::{GcaElement, QuotientRing};

/// Whether `v_p z^q` lies in the cyclic stairwell of `v_i z^j`
/// (rows are 1-based and taken modulo `g`).
pub fn stairwell_contains(anchor: (usize, usize), probe: (usize, usize), g: usize, n: usize) -> bool {
    let (i, j) = anchor;
    let (p, q) = probe;
    let d = (p as i64 - i as i64).rem_euclid(g as i64) as usize;
    j + d <= q && q < n
}

/// A two-sided ideal generated by monomials `v_i z^j`, listed with
/// increasing `i`; no generator lies in another one's stairwell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialIdeal {
    pub g: usize,
    pub n: usize,
    pub generators: Vec<(usize, usize)>,
}

impl MonomialIdeal {
    /// Every monomial `(p, q)` in the ideal.
    pub fn monomials(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 1..=self.g {
            for q in 0..self.n {
                if self.generators.iter().any(|&a| stairwell_contains(a, (p, q), self.g, self.n)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn is_minimal(&self) -> bool {
        self.generators.iter().enumerate().all(|(a, &x)| {
            self.generators
                .iter()
                .enumerate()
                .all(|(b, &y)| a == b || !stairwell_contains(y, x, self.g, self.n))
        })
    }

    pub fn display(&self) -> String {
        if self.generators.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|&(i, j)| match j {
                0 => format!("v{i}"),
                1 => format!("v{i}z"),
                _ => format!("v{i}z^{j}"),
            })
            .collect();
        format!("<{}>", parts.join(", "))
    }

    /// Number of elements, given `|K̄^(i)|`.
    pub fn size(&self, component_size: u128) -> u128 {
        component_size.saturating_pow(self.monomials().len() as u32)
    }
}

/// `v_i z^j` as a ring element (1-based `i`).
pub fn monomial_element(q: &QuotientRing, fac: &FactorizationData, i: usize, j: usize) -> GcaElement {
    q.from_k(&fac.residues[i - 1], j)
}

/// Every two-sided ideal of `Λ/qΛ` for a split prime with `u ∈ q` and `s = 1`.
///
/// The monomial content of an ideal is determined by the lowest power
/// `c_p` present in each row `p`; closure under left multiplication by `z`
/// forces `c_{p+1} ≤ c_p + 1` whenever `c_p + 1 < n`.
pub fn enumerate_monomial_ideals(q: &QuotientRing, fac: &FactorizationData) -> Result<Vec<MonomialIdeal>> {
    let ideal = q.ideal().ok_or_else(|| AlgebraError::WrongCase("not a prime-power quotient".into()))?;
    if fac.g < 2 || !q.ubar().is_zero() || ideal.s != 1 {
        return Err(AlgebraError::WrongCase(
            "monomial ideals need a split prime q with u ∈ q and s = 1".into(),
        ));
    }
    let (g, n) = (fac.g, q.degree());
    let mut out = Vec::new();
    // c[p] = n means row p is empty
    let mut c = vec![0usize; g];
    loop {
        let closed = (0..g).all(|p| c[p] + 1 >= n || c[(p + 1) % g] <= c[p] + 1);
        if closed {
            let anchors: Vec<(usize, usize)> = (0..g).filter(|&p| c[p] < n).map(|p| (p + 1, c[p])).collect();
            let gens: Vec<(usize, usize)> = anchors
                .iter()
                .filter(|&&x| !anchors.iter().any(|&y| y != x && stairwell_contains(y, x, g, n)))
                .copied()
                .collect();
            out.push(MonomialIdeal { g, n, generators: gens });
        }
        // next assignment in 0..=n per row
        let mut k = 0;
        while k < g {
            c[k] += 1;
            if c[k] <= n {
                break;
            }
            c[k] = 0;
            k += 1;
        }
        if k == g {
            break;
        }
    }
    let comp = fac.residue_field_size as u128;
    out.sort_by(|a, b| (a.size(comp), &a.generators).cmp(&(b.size(comp), &b.generators)));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stairwell_examples() {
        assert!(stairwell_contains((1, 0), (1, 0), 2, 2));
        assert!(stairwell_contains((1, 0), (1, 1), 2, 2));
        assert!(stairwell_contains((1, 0), (2, 1), 2, 2));
        assert!(!stairwell_contains((1, 0), (2, 0), 2, 2));
        assert!(!stairwell_contains((1, 1), (2, 1), 2, 2));
        assert!(stairwell_contains((2, 3), (2, 3), 3, 6));
        assert!(stairwell_contains((3, 1), (1, 2), 3, 6));
    }
}
