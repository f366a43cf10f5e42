//! Exhaustive and sampled evaluation of `Δ_min` over a coordinate box.
//!
//! Codewords are parametrized as in the lifted constructions: the parity
//! code is `(x_1, …, x_{L-1}, Σ x_i)`, the first-coefficient parity code is
//! `(x_1, …, x_{L-1}, Σ x_{i,0} + t)` with `t` free in the higher
//! `z`-coefficients, and any other first-coefficient code is the full
//! preimage of its outer code. Every free parameter ranges over the box of
//! elements whose `O_F`-coordinates all lie in `[-B, B]`.
//!
//! Subtrees are discarded with the determinant inequality
//! `Δ ≥ (Σ |det X_i|)²`, comparing against a bound that is seeded from
//! single-parameter codewords. Each chunk keeps its own running bound, so
//! the evaluation count and the result do not depend on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base::BaseElement;
use crate::error::{AlgebraError, Result};
use crate::exec::Execution;
use crate::extension::OkElement;
use crate::linalg::CMatrix;
use crate::order::{AlgebraSpec, OrderElement};

use super::bound::{delta_lower_bound, BoundInputs, DeltaReport, IdealShape};
use super::{hamming_distance, outer_image, CosetCodeword, FieldCode, FieldCodeKind, OuterCode};

/// Maximum number of determinant evaluations of a search.
pub const SEARCH_BUDGET: u128 = 100_000_000;
/// Largest coordinate box that is materialized.
pub const BOX_ELEMENT_LIMIT: u128 = 1 << 22;
/// Number of minimizing codewords kept in a report.
pub const MINIMIZER_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub box_bound: u32,
    pub budget: u128,
    pub exec: Execution,
    /// Fall back to seeded random sampling instead of failing when the
    /// budget is exhausted.
    pub allow_random: bool,
    pub seed: u64,
    pub random_samples: u64,
}

impl SearchOptions {
    pub fn new(box_bound: u32) -> Self {
        SearchOptions {
            box_bound,
            budget: SEARCH_BUDGET,
            exec: Execution::default(),
            allow_random: false,
            seed: 0,
            random_samples: 1_000_000,
        }
    }

    pub fn exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn randomized_fallback(mut self, seed: u64, samples: u64) -> Self {
        self.allow_random = true;
        self.seed = seed;
        self.random_samples = samples;
        self
    }
}

fn tol(x: f64) -> f64 {
    1e-9 * x.max(1.0)
}

/// The elements of `Λ` whose varying coordinates lie in `[-B, B]`, with
/// their numeric matrices and exact `|det|²`.
pub(crate) struct LatticeBox {
    coords: Vec<Vec<i64>>,
    d: Vec<f64>,
    sqrt_d: Vec<f64>,
    mat: Vec<CMatrix>,
    mat0: Vec<CMatrix>,
    gram: Vec<CMatrix>,
    /// Indices sorted by `|det|²`, ties in coordinate order.
    by_det: Vec<usize>,
    zero: usize,
}

struct Coordinates<'a> {
    algebra: &'a AlgebraSpec,
    n: usize,
    rank: usize,
    unit_mats: Vec<CMatrix>,
}

impl<'a> Coordinates<'a> {
    fn new(algebra: &'a AlgebraSpec) -> Self {
        let n = algebra.degree();
        let rank = algebra.base().rank();
        let mut c = Coordinates {
            algebra,
            n,
            rank,
            unit_mats: Vec::new(),
        };
        let total = c.len();
        c.unit_mats = (0..total)
            .map(|t| {
                let mut v = vec![0; total];
                v[t] = 1;
                algebra.numeric_matrix(&c.element(&v))
            })
            .collect();
        c
    }

    fn len(&self) -> usize {
        self.n * self.n * self.rank
    }

    fn first_len(&self) -> usize {
        self.n * self.rank
    }

    fn element(&self, v: &[i64]) -> OrderElement {
        let ring = self.algebra.base();
        let (n, r) = (self.n, self.rank);
        OrderElement {
            zcoords: (0..n)
                .map(|j| {
                    OkElement::new(
                        (0..n)
                            .map(|k| {
                                let t = (j * n + k) * r;
                                BaseElement::new(ring, v[t], if r == 2 { v[t + 1] } else { 0 })
                            })
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    fn matrix(&self, v: &[i64], upto: usize) -> CMatrix {
        let n = self.n;
        let mut m = CMatrix::zeros(n);
        for (t, &c) in v[..upto].iter().enumerate() {
            if c != 0 {
                for (x, y) in m.a.iter_mut().zip(&self.unit_mats[t].a) {
                    *x += y * c as f64;
                }
            }
        }
        m
    }

    /// All vectors varying on `positions` (the first one most significant).
    fn lattice_box(&self, positions: std::ops::Range<usize>, bound: u32, exec: Execution) -> Result<LatticeBox> {
        let side = 2 * bound as u128 + 1;
        let count = side.checked_pow(positions.len() as u32).unwrap_or(u128::MAX);
        if count > BOX_ELEMENT_LIMIT {
            return Err(AlgebraError::TooLargeToEnumerate {
                what: "coordinate box".into(),
                size: count,
                limit: BOX_ELEMENT_LIMIT,
            });
        }
        let total = self.len();
        let b = bound as i64;
        let width = positions.len();
        let entries = exec.map_range(count as usize, |i| {
            let mut v = vec![0i64; total];
            let mut rest = i as u128;
            for p in (0..width).rev() {
                v[positions.start + p] = (rest % side) as i64 - b;
                rest /= side;
            }
            let d = self.algebra.abs_det_sq(&self.element(&v));
            let mat = self.matrix(&v, total);
            let mat0 = self.matrix(&v, self.first_len());
            let mut gram = CMatrix::zeros(self.n);
            gram.add_gram(&mat);
            (v, d, mat, mat0, gram)
        });
        let mut out = LatticeBox {
            coords: Vec::with_capacity(entries.len()),
            d: Vec::with_capacity(entries.len()),
            sqrt_d: Vec::with_capacity(entries.len()),
            mat: Vec::with_capacity(entries.len()),
            mat0: Vec::with_capacity(entries.len()),
            gram: Vec::with_capacity(entries.len()),
            by_det: Vec::new(),
            zero: 0,
        };
        for (v, d, mat, mat0, gram) in entries {
            let d = d?;
            if v.iter().all(|&c| c == 0) {
                out.zero = out.coords.len();
            }
            out.coords.push(v);
            out.sqrt_d.push(d.sqrt());
            out.d.push(d);
            out.mat.push(mat);
            out.mat0.push(mat0);
            out.gram.push(gram);
        }
        let mut order: Vec<usize> = (0..out.coords.len()).collect();
        order.sort_by(|&x, &y| out.d[x].total_cmp(&out.d[y]).then(x.cmp(&y)));
        out.by_det = order;
        Ok(out)
    }
}

impl LatticeBox {
    fn len(&self) -> usize {
        self.coords.len()
    }
}

/// `min |det M(x)|²` over the nonzero elements of the box, with the
/// smallest minimizer in coordinate order.
pub fn min_det_sq_in_box(algebra: &AlgebraSpec, bound: u32, exec: Execution) -> Result<(f64, OrderElement)> {
    let coords = Coordinates::new(algebra);
    let bx = coords.lattice_box(0..coords.len(), bound, exec)?;
    let best = (0..bx.len())
        .filter(|&i| i != bx.zero)
        .min_by(|&x, &y| bx.d[x].total_cmp(&bx.d[y]).then(x.cmp(&y)))
        .ok_or(AlgebraError::EmptyCode)?;
    Ok((bx.d[best], coords.element(&bx.coords[best])))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    /// `x_L = Σ x_i`.
    SumParity,
    /// `x_{L,0} = Σ x_{i,0}`, higher coefficients of `x_L` free.
    FirstCoefficientParity,
    /// All `L` components free, first coefficients must lie in the code.
    Preimage,
}

struct Candidate {
    value: f64,
    key: Vec<i64>,
}

#[derive(Default)]
struct ChunkState {
    best: f64,
    count: u64,
    minimizers: Vec<Candidate>,
    evaluations: u64,
    aborted: bool,
}

impl ChunkState {
    fn new(best: f64) -> Self {
        ChunkState {
            best,
            ..Default::default()
        }
    }

    fn offer(&mut self, value: f64, key: impl FnOnce() -> Vec<i64>) {
        if value < self.best - tol(self.best) {
            self.best = value;
            self.count = 0;
            self.minimizers.clear();
        } else if value > self.best + tol(self.best) {
            return;
        }
        self.count += 1;
        let key = key();
        let pos = self.minimizers.partition_point(|c| c.key < key);
        if pos < MINIMIZER_CAP {
            self.minimizers.insert(pos, Candidate { value, key });
            self.minimizers.truncate(MINIMIZER_CAP);
        }
        // a strictly smaller value among ties becomes the reference
        self.best = self.best.min(value);
    }
}

struct Searcher<'a> {
    coords: &'a Coordinates<'a>,
    family: Family,
    length: usize,
    elements: &'a LatticeBox,
    free: Option<&'a LatticeBox>,
    symbols: Vec<u32>,
    inner: Option<&'a FieldCode>,
    budget: u128,
    spent: &'a AtomicU64,
    stop: &'a AtomicBool,
}

impl Searcher<'_> {
    fn blocks(&self) -> usize {
        match self.family {
            Family::SumParity => self.length - 1,
            Family::FirstCoefficientParity => self.length,
            Family::Preimage => self.length,
        }
    }

    fn domain(&self, level: usize) -> &LatticeBox {
        if self.family == Family::FirstCoefficientParity && level == self.length - 1 {
            self.free.expect("free coefficient box")
        } else {
            self.elements
        }
    }

    /// Whether the parameter at `level` is itself a component (and so
    /// enters the determinant-inequality bound).
    fn bounded(&self, level: usize) -> bool {
        !(self.family == Family::FirstCoefficientParity && level == self.length - 1)
    }

    fn search_space(&self) -> u128 {
        (0..self.blocks())
            .map(|l| self.domain(l).len() as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    /// Component coordinate vectors of the codeword with parameters `idx`.
    fn components(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        let e = self.elements;
        let total = self.coords.len();
        match self.family {
            Family::Preimage => idx.iter().map(|&i| e.coords[i].clone()).collect(),
            Family::SumParity => {
                let mut out: Vec<Vec<i64>> = idx.iter().map(|&i| e.coords[i].clone()).collect();
                let mut last = vec![0i64; total];
                for v in &out {
                    for (a, b) in last.iter_mut().zip(v) {
                        *a += b;
                    }
                }
                out.push(last);
                out
            }
            Family::FirstCoefficientParity => {
                let l = self.length - 1;
                let mut out: Vec<Vec<i64>> = idx[..l].iter().map(|&i| e.coords[i].clone()).collect();
                let mut last = self.free.unwrap().coords[idx[l]].clone();
                let first = self.coords.first_len();
                for v in &out {
                    for t in 0..first {
                        last[t] += v[t];
                    }
                }
                out.push(last);
                out
            }
        }
    }

    fn key(&self, idx: &[usize]) -> Vec<i64> {
        self.components(idx).concat()
    }

    fn charge(&self, st: &mut ChunkState) -> bool {
        st.evaluations += 1;
        if st.evaluations.is_multiple_of(256) {
            let total = self.spent.fetch_add(256, Ordering::Relaxed) + 256;
            if total as u128 > self.budget {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        if self.stop.load(Ordering::Relaxed) {
            st.aborted = true;
        }
        !st.aborted
    }

    /// `|det(Σ X X*)|` of the codeword with parameters `idx`, or `None`
    /// for the zero codeword and for parameters outside the code.
    fn evaluate(&self, idx: &[usize], gram: &CMatrix, sum: &CMatrix) -> Option<f64> {
        let nonzero = (0..idx.len()).any(|l| idx[l] != self.domain(l).zero);
        if !nonzero {
            return None;
        }
        let total = match self.family {
            Family::Preimage => {
                let word: Vec<u32> = idx.iter().map(|&i| self.symbols[i]).collect();
                if !self.inner.unwrap().contains(&word) {
                    return None;
                }
                gram.clone()
            }
            Family::SumParity => {
                let mut g = gram.clone();
                g.add_gram(sum);
                g
            }
            Family::FirstCoefficientParity => {
                let t = &self.free.unwrap().mat[*idx.last().unwrap()];
                let mut g = gram.clone();
                g.add_gram(&sum.add(t));
                g
            }
        };
        Some(total.det().norm())
    }

    fn leaf(&self, st: &mut ChunkState, idx: &[usize], gram: &CMatrix, sum: &CMatrix) {
        if !self.charge(st) {
            return;
        }
        if let Some(v) = self.evaluate(idx, gram, sum) {
            st.offer(v, || self.key(idx));
        }
    }

    /// Enumerates level `level` over domain positions `range` (in the
    /// `|det|²` order for bounded levels).
    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        st: &mut ChunkState,
        level: usize,
        range: std::ops::Range<usize>,
        idx: &mut Vec<usize>,
        root: f64,
        gram: &CMatrix,
        sum: &CMatrix,
    ) {
        let dom = self.domain(level);
        let bounded = self.bounded(level);
        let last = level + 1 == self.blocks();
        for pos in range {
            if st.aborted {
                return;
            }
            let i = if bounded { dom.by_det[pos] } else { pos };
            let r = if bounded { root + dom.sqrt_d[i] } else { root };
            if bounded && r * r > st.best + tol(st.best) {
                break;
            }
            idx.push(i);
            let (g, s) = if bounded {
                let s = match self.family {
                    Family::SumParity => sum.add(&dom.mat[i]),
                    Family::FirstCoefficientParity => sum.add(&dom.mat0[i]),
                    Family::Preimage => sum.clone(),
                };
                (gram.add(&dom.gram[i]), s)
            } else {
                (gram.clone(), sum.clone())
            };
            if last {
                self.leaf(st, idx, &g, &s);
            } else {
                let next = self.domain(level + 1).len();
                self.walk(st, level + 1, 0..next, idx, r, &g, &s);
            }
            idx.pop();
        }
    }

    fn params_gram(&self, idx: &[usize]) -> (CMatrix, CMatrix) {
        let n = self.coords.n;
        let mut g = CMatrix::zeros(n);
        let mut s = CMatrix::zeros(n);
        for (l, &i) in idx.iter().enumerate() {
            if !self.bounded(l) {
                continue;
            }
            let d = self.domain(l);
            g = g.add(&d.gram[i]);
            s = match self.family {
                Family::SumParity => s.add(&d.mat[i]),
                Family::FirstCoefficientParity => s.add(&d.mat0[i]),
                Family::Preimage => s,
            };
        }
        (g, s)
    }

    /// Smallest value over codewords with a single nonzero parameter.
    fn seed_bound(&self) -> (f64, u64) {
        let mut best = f64::INFINITY;
        let mut evals = 0;
        let zeros: Vec<usize> = (0..self.blocks()).map(|l| self.domain(l).zero).collect();
        for l in 0..self.blocks() {
            for i in 0..self.domain(l).len() {
                let mut idx = zeros.clone();
                idx[l] = i;
                let (g, s) = self.params_gram(&idx);
                evals += 1;
                if let Some(v) = self.evaluate(&idx, &g, &s) {
                    best = best.min(v);
                }
            }
        }
        (best, evals)
    }
}

fn first_symbols(outer: &OuterCode, coords: &Coordinates, elements: &LatticeBox) -> Result<Vec<u32>> {
    let OuterCode::FirstCoefficientScheme {
        quotient, component, ..
    } = outer
    else {
        return Ok(Vec::new());
    };
    elements
        .coords
        .iter()
        .map(|v| {
            let x = coords.element(v);
            let r = quotient.ring().from_ok(&x.zcoords[0]);
            component
                .to_field(quotient.ring(), &r)
                .ok_or_else(|| AlgebraError::invalid("first coefficient outside the residue field"))
        })
        .collect()
}

struct Outcome {
    best: f64,
    count: u64,
    minimizers: Vec<Candidate>,
    evaluations: u64,
    aborted: bool,
}

fn merge(states: Vec<ChunkState>) -> Outcome {
    let best = states.iter().map(|s| s.best).fold(f64::INFINITY, f64::min);
    let mut out = Outcome {
        best,
        count: 0,
        minimizers: Vec::new(),
        evaluations: 0,
        aborted: false,
    };
    for s in states {
        out.evaluations += s.evaluations;
        out.aborted |= s.aborted;
        if best.is_finite() && s.best <= best + tol(best) {
            out.count += s.count;
            out.minimizers.extend(s.minimizers.into_iter().filter(|c| c.value <= best + tol(best)));
        }
    }
    out.minimizers.sort_by(|a, b| a.key.cmp(&b.key));
    out.minimizers.truncate(MINIMIZER_CAP);
    out
}

fn exhaustive(s: &Searcher, seed: f64, exec: Execution) -> Outcome {
    let n = s.coords.n;
    let first = s.domain(0).len() as u64;
    let chunk = (first / 256).max(1);
    let states = exec.map_chunks(first, chunk, |start, end| {
        let mut st = ChunkState::new(seed);
        let mut idx = Vec::with_capacity(s.blocks());
        let zero = CMatrix::zeros(n);
        s.walk(&mut st, 0, start as usize..end as usize, &mut idx, 0.0, &zero, &zero);
        st
    });
    merge(states)
}

fn randomized(s: &Searcher, seed: u64, samples: u64, exec: Execution) -> Outcome {
    const CHUNK: u64 = 4096;
    let states = exec.map_chunks(samples, CHUNK, |start, end| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(start / CHUNK);
        let mut st = ChunkState::new(f64::INFINITY);
        let mut idx = vec![0; s.blocks()];
        for _ in start..end {
            for (l, slot) in idx.iter_mut().enumerate() {
                *slot = rng.random_range(0..s.domain(l).len());
            }
            let (g, sum) = s.params_gram(&idx);
            st.evaluations += 1;
            if let Some(v) = s.evaluate(&idx, &g, &sum) {
                st.offer(v, || s.key(&idx));
            }
        }
        st
    });
    merge(states)
}

fn ideal_shape(outer: &OuterCode) -> Result<IdealShape> {
    let q = outer
        .quotient()
        .ok_or_else(|| AlgebraError::invalid("the outer code has no quotient ring"))?;
    let ideal = q.ideal().expect("coset codes live over prime power quotients");
    Ok(match outer {
        OuterCode::FirstCoefficientScheme { .. } if outer.free_part_in_ideal() => IdealShape::ZPower {
            alpha: ideal.alpha.clone(),
            j: 1,
        },
        _ => IdealShape::Principal {
            alpha: ideal.alpha.clone(),
            s: ideal.s,
        },
    })
}

/// Bound and search for the lifted code of `outer`, all components in the
/// box of radius `opts.box_bound`.
pub fn delta_min_search(outer: &OuterCode, opts: &SearchOptions) -> Result<DeltaReport> {
    let algebra = outer
        .algebra()
        .ok_or_else(|| AlgebraError::invalid("a bare Reed-Solomon code has no ring to lift into"))?;
    let family = match outer {
        OuterCode::ParityOverRing { .. } => Family::SumParity,
        OuterCode::FirstCoefficientScheme { inner, .. } => match inner.kind() {
            FieldCodeKind::Parity => Family::FirstCoefficientParity,
            FieldCodeKind::ReedSolomon { .. } => Family::Preimage,
        },
        OuterCode::ReedSolomon(_) => unreachable!(),
    };
    let exec = opts.exec.effective();
    let coords = Coordinates::new(algebra);
    let elements = coords.lattice_box(0..coords.len(), opts.box_bound, exec)?;
    let free = match family {
        Family::FirstCoefficientParity => {
            Some(coords.lattice_box(coords.first_len()..coords.len(), opts.box_bound, exec)?)
        }
        _ => None,
    };
    let symbols = match family {
        Family::Preimage => first_symbols(outer, &coords, &elements)?,
        _ => Vec::new(),
    };
    let inner = match outer {
        OuterCode::FirstCoefficientScheme { inner, .. } => Some(inner),
        _ => None,
    };

    let min_det_sq = (0..elements.len())
        .filter(|&i| i != elements.zero)
        .map(|i| elements.d[i])
        .fold(f64::INFINITY, f64::min);
    let shape = ideal_shape(outer)?;
    let inputs = BoundInputs {
        d_h: hamming_distance(outer)?,
        min_det_sq: if min_det_sq.is_finite() { min_det_sq } else { 0.0 },
        ideal_min_det_sq: None,
    };
    let mut report = delta_lower_bound(algebra, &shape, shape.natural_formula(), inputs)?;

    let spent = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let searcher = Searcher {
        coords: &coords,
        family,
        length: outer.length(),
        elements: &elements,
        free: free.as_ref(),
        symbols,
        inner,
        budget: opts.budget,
        spent: &spent,
        stop: &stop,
    };
    let space = searcher.search_space();
    if searcher.blocks() == 0 {
        return Err(AlgebraError::EmptyCode);
    }
    let (seed_value, seed_evals) = searcher.seed_bound();
    let mut outcome = exhaustive(&searcher, seed_value, exec);
    let mut mode = SearchMode::Exhaustive;
    if outcome.aborted {
        if !opts.allow_random {
            return Err(AlgebraError::SearchBudgetExceeded {
                needed: space,
                budget: opts.budget,
            });
        }
        outcome = randomized(&searcher, opts.seed, opts.random_samples, exec);
        mode = SearchMode::Randomized;
    } else {
        outcome.evaluations += seed_evals;
    }
    if !outcome.best.is_finite() {
        return Err(AlgebraError::EmptyCode);
    }

    let to_codeword = |key: &[i64]| -> Result<CosetCodeword> {
        let total = coords.len();
        let components: Vec<OrderElement> = key.chunks(total).map(|v| coords.element(v)).collect();
        let outer_image = outer_image(outer, &components)?;
        Ok(CosetCodeword {
            components,
            outer_image,
        })
    };
    let minimizers = outcome
        .minimizers
        .iter()
        .map(|c| to_codeword(&c.key))
        .collect::<Result<Vec<_>>>()?;
    report.search_min = Some(outcome.best);
    report.argmin = minimizers.first().cloned();
    report.minimizers = minimizers;
    report.minimizer_count = outcome.count;
    report.search_mode = Some(mode);
    report.box_bound = Some(opts.box_bound);
    report.search_space = Some(space);
    report.evaluations = outcome.evaluations;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::IdealSpec;
    use crate::io::builtin_algebra;

    #[test]
    fn unit_box_minimum_is_one() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let (m, _) = min_det_sq_in_box(&a, 1, Execution::default()).unwrap();
        assert_eq!(m, 1.0);
        assert_eq!(a.abs_det_sq(&a.one()).unwrap(), 1.0);
    }

    #[test]
    fn tiny_parity_search_matches_modes() {
        let a = builtin_algebra("gauss_over_Q").unwrap();
        let q = IdealSpec::parse(a.base(), "3").unwrap();
        let code = OuterCode::parity(&a, &q, 2).unwrap();
        let s = delta_min_search(&code, &SearchOptions::new(1).exec(Execution::Sequential)).unwrap();
        let p = delta_min_search(&code, &SearchOptions::new(1).exec(Execution::Parallel)).unwrap();
        assert_eq!(s.search_min, p.search_min);
        assert_eq!(s.evaluations, p.evaluations);
        assert_eq!(s.minimizer_count, p.minimizer_count);
        assert_eq!(s.argmin, p.argmin);
        assert!(s.consistent());
        // (x, x) has Δ = 2|det x|²·... = 4 |det x|² for n = 2
        let argmin = s.argmin.unwrap();
        assert_eq!(argmin.components[0], argmin.components[1]);
        assert!((s.search_min.unwrap() - argmin.delta(&a)).abs() < 1e-9);
    }

    #[test]
    fn length_one_parity_is_empty() {
        let a = builtin_algebra("gauss_over_Q").unwrap();
        let q = IdealSpec::parse(a.base(), "3").unwrap();
        let code = OuterCode::parity(&a, &q, 1).unwrap();
        let err = delta_min_search(&code, &SearchOptions::new(1)).unwrap_err();
        assert_eq!(err.name(), "EmptyCode");
    }

    #[test]
    fn budget_is_enforced() {
        let a = builtin_algebra("golden_u_1pi").unwrap();
        let q = BaseElement::parse(a.base(), "1+i").unwrap();
        let code = OuterCode::first_coefficient(&a, &q, FieldCodeKind::ReedSolomon { k: 1 }, 3).unwrap();
        let full = delta_min_search(&code, &SearchOptions::new(1)).unwrap();
        assert!((full.search_min.unwrap() - 2.0).abs() < 1e-9);
        let opts = SearchOptions::new(1).budget(1000);
        let err = delta_min_search(&code, &opts).unwrap_err();
        assert_eq!(err.name(), "SearchBudgetExceeded");
        let opts = opts.randomized_fallback(5, 20_000);
        let r = delta_min_search(&code, &opts).unwrap();
        assert_eq!(r.search_mode, Some(SearchMode::Randomized));
        assert!(r.consistent());
    }
}
