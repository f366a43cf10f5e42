//! The norm equation `N_{K̄^(1)/F̄}(k) = t` in a finite field.

use crate::error::{AlgebraError, Result};
use crate::residue::poly::inv_mod;
use crate::residue::FiniteField;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `∏_{t<f} τ^t(k)` where `τ(a) = a^{p^frob}`.
pub fn field_norm(field: &FiniteField, frob: usize, f: usize, k: u32) -> u32 {
    (0..f).fold(field.one(), |acc, t| field.mul(acc, field.frobenius(k, frob * t)))
}

/// Solves `∏_{t<f} τ^t(k) = target` for `τ = Frob^frob` of order `f`.
///
/// Writing `k = γ^e`, the norm is `γ^{e·E}` with `E = Σ p^{frob·t}`, so the
/// equation becomes a linear congruence modulo `|field| − 1`. The smallest
/// nonnegative exponent is returned, so `target = 1` gives `k = 1`.
pub fn solve_norm_equation(field: &FiniteField, frob: usize, f: usize, target: u32) -> Result<u32> {
    let l = field.log(target).ok_or(AlgebraError::ZeroTarget)?;
    let order = field.size() - 1;
    if order == 0 {
        return Ok(field.one());
    }
    let step = field.frobenius(field.generator(), frob);
    let step_log = field.log(step).unwrap();
    // E = Σ_t p^{frob·t} (mod order), read off as the exponent of γ under the norm
    let mut e_big: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..f {
        e_big = (e_big + pw) % order;
        pw = (pw as u128 * step_log as u128 % order as u128) as u64;
    }
    let d = gcd(e_big, order);
    let k = if l % d == 0 {
        let m = order / d;
        let inv = if m == 1 { 0 } else { inv_mod((e_big / d) % m, m) };
        let e = ((l / d) as u128 * inv as u128 % m.max(1) as u128) as u64;
        field.exp(e)
    } else {
        return Err(AlgebraError::invalid("target is not a norm"));
    };
    debug_assert_eq!(field_norm(field, frob, f, k), target);
    if field_norm(field, frob, f, k) != target {
        // exhaustive fallback for small fields
        if field.size() <= 1 << 16 {
            return field
                .elements()
                .find(|&x| x != 0 && field_norm(field, frob, f, x) == target)
                .ok_or_else(|| AlgebraError::invalid("target is not a norm"));
        }
        return Err(AlgebraError::invalid("norm equation solver failed"));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_degree_one() {
        let f7 = FiniteField::with_degree(7, 1).unwrap();
        for t in 1..7 {
            assert_eq!(solve_norm_equation(&f7, 0, 1, t).unwrap(), t);
        }
        assert_eq!(solve_norm_equation(&f7, 0, 1, 0).unwrap_err().name(), "ZeroTarget");
        let f16 = FiniteField::with_degree(2, 4).unwrap();
        assert_eq!(solve_norm_equation(&f16, 1, 4, 1).unwrap(), 1);
    }

    #[test]
    fn f4_norms_to_f2() {
        let f4 = FiniteField::with_degree(2, 2).unwrap();
        for k in 1..4 {
            assert_eq!(field_norm(&f4, 1, 2, k), 1);
        }
    }

    #[test]
    fn every_target_in_subfield_is_hit() {
        // F_81 over F_9: τ = Frob^2, f = 2
        let f81 = FiniteField::with_degree(3, 4).unwrap();
        let sub: Vec<u32> = f81.elements().filter(|&x| x != 0 && f81.frobenius(x, 2) == x).collect();
        assert_eq!(sub.len(), 8);
        for t in sub {
            let k = solve_norm_equation(&f81, 2, 2, t).unwrap();
            assert_eq!(field_norm(&f81, 2, 2, k), t);
        }
    }
}
