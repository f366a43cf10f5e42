//! Two-sided ideals of small quotient rings by exhaustive closure, and the
//! ideal chain of `K̄[x; σ̄]/(x^n)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::exec::Execution;
use crate::extension::factor_prime;

use super::quotient::{GcaElement, QuotientRing};

/// Exhaustive ideal search is limited to rings of at most this many elements.
pub const IDEAL_SEARCH_LIMIT: u128 = 1 << 12;

/// A subset of `Λ/mΛ`, stored as a bitset over element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(size: u64) -> Self {
        ElementSet {
            bits: vec![0; size.div_ceil(64) as usize],
        }
    }

    pub fn contains(&self, i: u64) -> bool {
        self.bits[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: u64) {
        self.bits[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub fn len(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.bits.iter().zip(&o.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w as u64 * 64 + b)
        })
    }
}

/// A two-sided ideal: its element set and the additive generators that
/// produced it.
#[derive(Clone, Debug)]
pub struct IdealClosure {
    pub elements: ElementSet,
    pub generators: Vec<GcaElement>,
}

struct Closer<'a> {
    q: &'a QuotientRing,
    ring_gens: Vec<GcaElement>,
    size: u64,
}

impl<'a> Closer<'a> {
    fn new(q: &'a QuotientRing) -> Result<Self> {
        let size = q.check_enumerable(IDEAL_SEARCH_LIMIT)?;
        Ok(Closer {
            q,
            ring_gens: q.additive_generators(),
            size,
        })
    }

    /// `H ← H + ⟨x⟩` as additive groups; returns whether `H` grew.
    fn add_cyclic(&self, h: &mut ElementSet, members: &mut Vec<u64>, x: &GcaElement) -> bool {
        let q = self.q;
        if h.contains(q.index(x)) {
            return false;
        }
        let base: Vec<GcaElement> = members.iter().map(|&i| q.from_index(i)).collect();
        let mut tx = x.clone();
        while !h.contains(q.index(&tx)) {
            for b in &base {
                let y = q.add(b, &tx);
                let i = q.index(&y);
                if !h.contains(i) {
                    h.insert(i);
                    members.push(i);
                }
            }
            tx = q.add(&tx, x);
        }
        true
    }

    /// Smallest two-sided ideal containing `start` and the generators.
    fn close(&self, start: Option<&IdealClosure>, gens: &[GcaElement]) -> IdealClosure {
        let q = self.q;
        let (mut h, mut generators) = match start {
            Some(s) => (s.elements.clone(), s.generators.clone()),
            None => {
                let mut h = ElementSet::empty(self.size);
                h.insert(q.index(&q.zero()));
                (h, Vec::new())
            }
        };
        let mut members: Vec<u64> = h.iter().collect();
        let mut queue: Vec<GcaElement> = gens.to_vec();
        while let Some(x) = queue.pop() {
            if self.add_cyclic(&mut h, &mut members, &x) {
                for r in &self.ring_gens {
                    queue.push(q.mul(r, &x));
                    queue.push(q.mul(&x, r));
                }
                generators.push(x);
            }
        }
        IdealClosure {
            elements: h,
            generators,
        }
    }
}

/// The two-sided ideal generated by `gens`.
pub fn ideal_generated(q: &QuotientRing, gens: &[GcaElement]) -> Result<IdealClosure> {
    Ok(Closer::new(q)?.close(None, gens))
}

/// Every two-sided ideal of `q` (at most [`IDEAL_SEARCH_LIMIT`] elements),
/// sorted by size and then by element set.
pub fn all_two_sided_ideals(q: &QuotientRing, exec: Execution) -> Result<Vec<IdealClosure>> {
    let closer = Closer::new(q)?;
    let principal = exec.map_range(closer.size as usize, |i| {
        closer.close(None, &[q.from_index(i as u64)])
    });
    let mut seen = BTreeSet::new();
    let mut ideals: Vec<IdealClosure> = Vec::new();
    for id in principal {
        if seen.insert(id.elements.clone()) {
            ideals.push(id);
        }
    }
    // close under sums
    let mut frontier = 0;
    while frontier < ideals.len() {
        let end = ideals.len();
        for i in frontier..end {
            for j in 0..end {
                if ideals[j].elements.is_subset(&ideals[i].elements)
                    || ideals[i].elements.is_subset(&ideals[j].elements)
                {
                    continue;
                }
                let s = closer.close(Some(&ideals[i]), &ideals[j].generators);
                if seen.insert(s.elements.clone()) {
                    ideals.push(s);
                }
            }
        }
        frontier = end;
    }
    ideals.sort_by(|a, b| (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements)));
    Ok(ideals)
}

/// `⟨z^i⟩ = ⊕_{j ≥ i} K̄ z^j` in `K̄[x; σ̄]/(x^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewIdeal {
    pub i: usize,
    pub generator: String,
    pub size: u128,
    /// Description of the quotient `⊕_{j<i} K̄ z^j`.
    pub quotient: String,
    pub quotient_size: u128,
}

/// The chain `⟨z⟩ ⊃ ⟨z²⟩ ⊃ … ⊃ ⟨z^n⟩ = 0` for an inert prime with `u ∈ q`, `s = 1`.
pub fn skew_poly_ideal_chain(q: &QuotientRing) -> Result<Vec<SkewIdeal>> {
    let ideal = q
        .ideal()
        .ok_or_else(|| AlgebraError::WrongCase("ideal chain needs a prime-power quotient".into()))?;
    if ideal.s != 1 {
        return Err(AlgebraError::WrongCase("ideal chain needs s = 1".into()));
    }
    if !q.ubar().is_zero() {
        return Err(AlgebraError::WrongCase("u is a unit modulo q".into()));
    }
    let fac = factor_prime(q.algebra().extension(), ideal)?;
    if fac.g != 1 {
        return Err(AlgebraError::WrongCase(format!("q splits into {} primes", fac.g)));
    }
    let n = q.degree();
    let kbar = fac.residue_field_size as u128;
    Ok((1..=n)
        .map(|i| SkewIdeal {
            i,
            generator: if i == 1 { "z".into() } else { format!("z^{i}") },
            size: kbar.pow((n - i) as u32),
            quotient: (0..i)
                .map(|j| match j {
                    0 => "K̄".to_string(),
                    1 => "K̄z".to_string(),
                    _ => format!("K̄z^{j}"),
                })
                .collect::<Vec<_>>()
                .join(" ⊕ "),
            quotient_size: kbar.pow(i as u32),
        })
        .collect())
}

/// Element set of `⟨z^i⟩` (all elements whose `z^j` coordinates vanish for `j < i`).
pub fn z_power_ideal(q: &QuotientRing, i: usize) -> Result<ElementSet> {
    let size = q.check_enumerable(IDEAL_SEARCH_LIMIT)?;
    let n = q.degree();
    let mut s = ElementSet::empty(size);
    for idx in 0..size {
        let x = q.from_index(idx);
        if x.c[..i.min(n) * n].iter().all(|r| r.is_zero()) {
            s.insert(idx);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::IdealSpec;
    use crate::io::builtin_algebra;

    #[test]
    fn golden_nilpotent_chain_matches_brute_force() {
        let a = builtin_algebra("golden_u_1pi").unwrap();
        let q = QuotientRing::new(&a, &IdealSpec::parse(a.base(), "1+i").unwrap()).unwrap();
        let ideals = all_two_sided_ideals(&q, Execution::Sequential).unwrap();
        let sizes: Vec<u64> = ideals.iter().map(|i| i.elements.len()).collect();
        assert_eq!(sizes, vec![1, 4, 16]);
        assert_eq!(ideals[1].elements, z_power_ideal(&q, 1).unwrap());
        let chain = skew_poly_ideal_chain(&q).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0].quotient_size, 4);
        assert_eq!(chain[1].size, 1);
    }

    #[test]
    fn simple_ring_has_two_ideals() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let q = QuotientRing::new(&a, &IdealSpec::parse(a.base(), "1+i").unwrap()).unwrap();
        let ideals = all_two_sided_ideals(&q, Execution::Parallel).unwrap();
        assert_eq!(ideals.len(), 2);
        assert_eq!(skew_poly_ideal_chain(&q).unwrap_err().name(), "WrongCase");
    }
}
