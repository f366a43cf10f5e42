//! Coset codes: an outer code over a finite quotient `Λ/J`, lifted through
//! the reduction map to a space-time code over `Λ`.

mod bound;
mod search;
mod spec;

pub use bound::{delta_lower_bound, BoundFormula, BoundInputs, DeltaReport, IdealShape};
pub use search::{
    delta_min_search, min_det_sq_in_box, SearchMode, SearchOptions, SEARCH_BUDGET,
};
pub use spec::{CodeSpec, CodeSpecIdeal, CodeSpecOuter};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::base::BaseElement;
use crate::error::{AlgebraError, Result};
use crate::exec::Execution;
use crate::extension::IdealSpec;
use crate::linalg::{exact_gram_dets, CMatrix};
use crate::order::{AlgebraSpec, OrderElement};
use crate::residue::{FieldComponent, FiniteField, GcaElement, QuotientRing};

/// Largest code the Hamming distance is computed for by enumeration.
pub const HAMMING_ENUMERATION_LIMIT: u128 = 1 << 20;

/// Result of testing `|det(Σ X_i X_i*)| ≥ (Σ |det X_i|)²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DetInequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Both sides are computed exactly from the binary values of the entries
/// and rounded once, so equality cases survive ill-conditioned inputs.
pub fn det_inequality_check(matrices: &[CMatrix]) -> Result<DetInequalityReport> {
    let n = matrices
        .first()
        .map(|m| m.n)
        .ok_or_else(|| AlgebraError::invalid("no matrices given"))?;
    if matrices.iter().any(|m| m.n != n) {
        return Err(AlgebraError::invalid("matrices of different sizes"));
    }
    let (singles, lhs) = exact_gram_dets(matrices);
    let mut sum = 0.0;
    for d2 in singles {
        let d = d2.sqrt();
        if d.is_nan() || d <= 1e-12 {
            return Err(AlgebraError::SingularInput(d));
        }
        sum += d;
    }
    let rhs = sum * sum;
    Ok(DetInequalityReport {
        lhs,
        rhs,
        holds: lhs >= rhs - 1e-9 * rhs.max(1.0),
    })
}

/// Outcome of [`det_lemma_study`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaStudy {
    pub trials: u64,
    pub holds: u64,
    pub violations: u64,
    /// Draws rejected as numerically singular.
    pub singular: u64,
    /// Smallest `lhs / rhs` seen.
    pub min_ratio: f64,
    /// Largest `|lhs - rhs| / rhs` over the `k = 1` trials.
    pub max_equality_gap: Option<f64>,
    pub seed: u64,
}

const LEMMA_CHUNK: u64 = 500;

/// Runs the determinant inequality on `trials` tuples of complex Gaussian
/// matrices. Trial `t` uses size `sizes[t mod |sizes|]` and
/// `ks[(t / |sizes|) mod |ks|]` matrices. Each block of 500 trials has its
/// own random stream, so results do not depend on the execution mode.
pub fn det_lemma_study(trials: u64, sizes: &[usize], ks: &[usize], seed: u64, exec: Execution) -> Result<LemmaStudy> {
    if sizes.is_empty() || ks.is_empty() || sizes.contains(&0) || ks.contains(&0) {
        return Err(AlgebraError::invalid("matrix sizes and counts must be positive"));
    }
    let chunks = exec.map_chunks(trials, LEMMA_CHUNK, |start, end| -> Result<LemmaStudy> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(start / LEMMA_CHUNK);
        let mut out = LemmaStudy {
            trials: end - start,
            holds: 0,
            violations: 0,
            singular: 0,
            min_ratio: f64::INFINITY,
            max_equality_gap: None,
            seed,
        };
        for t in start..end {
            let n = sizes[(t % sizes.len() as u64) as usize];
            let k = ks[((t / sizes.len() as u64) % ks.len() as u64) as usize];
            let ms: Vec<CMatrix> = (0..k)
                .map(|_| {
                    let mut m = CMatrix::zeros(n);
                    for x in m.a.iter_mut() {
                        *x = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
                    }
                    m
                })
                .collect();
            let r = match det_inequality_check(&ms) {
                Ok(r) => r,
                Err(AlgebraError::SingularInput(_)) => {
                    out.singular += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if r.holds {
                out.holds += 1;
            } else {
                out.violations += 1;
            }
            out.min_ratio = out.min_ratio.min(r.lhs / r.rhs);
            if k == 1 {
                let gap = (r.lhs - r.rhs).abs() / r.rhs;
                out.max_equality_gap = Some(out.max_equality_gap.map_or(gap, |g: f64| g.max(gap)));
            }
        }
        Ok(out)
    });
    let mut total = LemmaStudy {
        trials: 0,
        holds: 0,
        violations: 0,
        singular: 0,
        min_ratio: f64::INFINITY,
        max_equality_gap: None,
        seed,
    };
    for c in chunks {
        let c = c?;
        total.trials += c.trials;
        total.holds += c.holds;
        total.violations += c.violations;
        total.singular += c.singular;
        total.min_ratio = total.min_ratio.min(c.min_ratio);
        total.max_equality_gap = match (total.max_equality_gap, c.max_equality_gap) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OuterKind {
    ParityOverRing,
    ReedSolomon,
    FirstCoefficientScheme,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldCodeKind {
    /// `(m_1, …, m_{L-1}, Σ m_i)`.
    Parity,
    /// Evaluations of a polynomial of degree `< k`, encoded systematically:
    /// the message is the value vector on the first `k` points.
    ReedSolomon { k: usize },
}

/// A linear code of length `L` over a finite field.
#[derive(Clone, Debug)]
pub struct FieldCode {
    field: FiniteField,
    length: usize,
    kind: FieldCodeKind,
    points: Vec<u32>,
}

impl FieldCode {
    pub fn parity(field: FiniteField, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(AlgebraError::invalid("code length must be positive"));
        }
        Ok(FieldCode {
            field,
            length,
            kind: FieldCodeKind::Parity,
            points: Vec::new(),
        })
    }

    /// Evaluation points are `0, 1, γ, γ², …` for the field generator `γ`.
    pub fn reed_solomon(field: FiniteField, length: usize, k: usize) -> Result<Self> {
        if k == 0 || k > length || length as u64 > field.size() {
            return Err(AlgebraError::invalid(format!(
                "no ({length},{k}) Reed-Solomon code over a field of {} elements",
                field.size()
            )));
        }
        let mut points = vec![field.zero()];
        points.extend((0..length as u64 - 1).map(|e| field.exp(e)));
        Ok(FieldCode {
            field,
            length,
            kind: FieldCodeKind::ReedSolomon { k },
            points,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn kind(&self) -> FieldCodeKind {
        self.kind
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            FieldCodeKind::Parity => self.length - 1,
            FieldCodeKind::ReedSolomon { k } => k,
        }
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        let f = &self.field;
        if message.len() != self.dimension() {
            return Err(AlgebraError::BadMessageLength {
                got: message.len(),
                expected: self.dimension(),
            });
        }
        if let Some(&bad) = message.iter().find(|&&m| m as u64 >= f.size()) {
            return Err(AlgebraError::invalid(format!("symbol {bad} is not a field element")));
        }
        Ok(match self.kind {
            FieldCodeKind::Parity => {
                let mut w = message.to_vec();
                w.push(message.iter().fold(f.zero(), |s, &m| f.add(s, m)));
                w
            }
            FieldCodeKind::ReedSolomon { k } => self
                .points
                .iter()
                .map(|&x| self.interpolate(&self.points[..k], message, x))
                .collect(),
        })
    }

    /// Value at `x` of the polynomial of degree `< xs.len()` through
    /// `(xs_i, ys_i)`.
    fn interpolate(&self, xs: &[u32], ys: &[u32], x: u32) -> u32 {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..xs.len() {
            let mut l = f.one();
            for j in 0..xs.len() {
                if i != j {
                    let den = f.inv(f.sub(xs[i], xs[j])).expect("distinct points");
                    l = f.mul(l, f.mul(f.sub(x, xs[j]), den));
                }
            }
            acc = f.add(acc, f.mul(ys[i], l));
        }
        acc
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        let f = &self.field;
        if word.len() != self.length {
            return false;
        }
        match self.kind {
            FieldCodeKind::Parity => {
                let s = word[..self.length - 1].iter().fold(f.zero(), |s, &m| f.add(s, m));
                s == word[self.length - 1]
            }
            // interpolate through the first k positions, compare the rest
            FieldCodeKind::ReedSolomon { k } => (k..self.length)
                .all(|t| self.interpolate(&self.points[..k], &word[..k], self.points[t]) == word[t]),
        }
    }

    pub fn hamming_distance(&self) -> Result<u64> {
        match self.kind {
            FieldCodeKind::ReedSolomon { k } => Ok((self.length - k + 1) as u64),
            FieldCodeKind::Parity => {
                let q = self.field.size() as u128;
                let size = q.pow(self.dimension() as u32);
                check_enumerable("parity code", size)?;
                let mut best = u64::MAX;
                for idx in 1..size {
                    let msg = digits(idx, q, self.dimension());
                    let w = self.encode(&msg)?;
                    best = best.min(w.iter().filter(|&&s| s != 0).count() as u64);
                }
                Ok(if best == u64::MAX { 0 } else { best })
            }
        }
    }
}

fn check_enumerable(what: &str, size: u128) -> Result<()> {
    if size > HAMMING_ENUMERATION_LIMIT {
        return Err(AlgebraError::TooLargeToEnumerate {
            what: what.into(),
            size,
            limit: HAMMING_ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

fn digits(mut idx: u128, base: u128, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = idx % base;
            idx /= base;
            d as u32
        })
        .collect()
}

/// The outer code `C̄`.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum OuterCode {
    /// `x̄_L = x̄_1 + … + x̄_{L-1}` over `Λ/q^sΛ`.
    ParityOverRing { quotient: QuotientRing, length: usize },
    /// A Reed-Solomon code on its own, without a ring to lift into.
    ReedSolomon(FieldCode),
    /// The first coefficients `x̄_{i,0} ∈ O_K/qO_K` form a codeword of
    /// `inner`; the other coefficients are free.
    FirstCoefficientScheme {
        quotient: QuotientRing,
        component: FieldComponent,
        inner: FieldCode,
    },
}

impl OuterCode {
    pub fn parity(algebra: &AlgebraSpec, ideal: &IdealSpec, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(AlgebraError::invalid("code length must be positive"));
        }
        Ok(OuterCode::ParityOverRing {
            quotient: QuotientRing::new(algebra, ideal)?,
            length,
        })
    }

    /// The field `O_K/qO_K` for an inert prime `q`, as used by the
    /// first-coefficient scheme.
    pub fn residue_field(algebra: &AlgebraSpec, prime: &BaseElement) -> Result<(QuotientRing, FieldComponent)> {
        let ideal = IdealSpec::new(prime.clone(), 1)?;
        let quotient = QuotientRing::new(algebra, &ideal)?;
        let p = quotient.local().expect("prime power quotient").p();
        let component = FieldComponent::new(quotient.ring(), &quotient.ring().one(), p).map_err(|_| {
            AlgebraError::WrongCase(format!("{prime} is not inert, O_K/qO_K is not a field"))
        })?;
        Ok((quotient, component))
    }

    pub fn first_coefficient(
        algebra: &AlgebraSpec,
        prime: &BaseElement,
        kind: FieldCodeKind,
        length: usize,
    ) -> Result<Self> {
        let (quotient, component) = Self::residue_field(algebra, prime)?;
        let field = component.field().clone();
        let inner = match kind {
            FieldCodeKind::Parity => FieldCode::parity(field, length)?,
            FieldCodeKind::ReedSolomon { k } => FieldCode::reed_solomon(field, length, k)?,
        };
        Ok(OuterCode::FirstCoefficientScheme {
            quotient,
            component,
            inner,
        })
    }

    pub fn kind(&self) -> OuterKind {
        match self {
            OuterCode::ParityOverRing { .. } => OuterKind::ParityOverRing,
            OuterCode::ReedSolomon(_) => OuterKind::ReedSolomon,
            OuterCode::FirstCoefficientScheme { .. } => OuterKind::FirstCoefficientScheme,
        }
    }

    pub fn length(&self) -> usize {
        match self {
            OuterCode::ParityOverRing { length, .. } => *length,
            OuterCode::ReedSolomon(c) => c.length,
            OuterCode::FirstCoefficientScheme { inner, .. } => inner.length,
        }
    }

    pub fn quotient(&self) -> Option<&QuotientRing> {
        match self {
            OuterCode::ParityOverRing { quotient, .. } => Some(quotient),
            OuterCode::ReedSolomon(_) => None,
            OuterCode::FirstCoefficientScheme { quotient, .. } => Some(quotient),
        }
    }

    pub fn algebra(&self) -> Option<&AlgebraSpec> {
        self.quotient().map(QuotientRing::algebra)
    }

    /// Whether the free coefficients of the first-coefficient scheme lie in
    /// the ideal, i.e. `J = ⟨z⟩` with `u ∈ q` and `Λ/J ≅ O_K/qO_K`.
    pub fn free_part_in_ideal(&self) -> bool {
        match self {
            OuterCode::FirstCoefficientScheme { quotient, .. } => {
                quotient.degree() == 1 || quotient.ubar().is_zero()
            }
            _ => true,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            OuterCode::ParityOverRing { quotient, length } => format!(
                "parity code of length {length} over Λ/{}Λ",
                quotient.ideal().map(|i| i.to_string()).unwrap_or_default()
            ),
            OuterCode::ReedSolomon(c) => format!(
                "({}, {}) Reed-Solomon code over {}",
                c.length,
                c.dimension(),
                c.field.describe()
            ),
            OuterCode::FirstCoefficientScheme { inner, quotient, .. } => {
                let ideal = quotient.ideal().map(|i| i.to_string()).unwrap_or_default();
                let target = if self.free_part_in_ideal() {
                    format!("Λ/⟨z⟩ with q = {ideal}")
                } else {
                    format!("Λ/{ideal}Λ")
                };
                let code = match inner.kind {
                    FieldCodeKind::Parity => format!("parity code of length {}", inner.length),
                    FieldCodeKind::ReedSolomon { k } => {
                        format!("({}, {k}) Reed-Solomon code", inner.length)
                    }
                };
                format!("{code} over {} on first coefficients, {target}", inner.field.describe())
            }
        }
    }
}

/// An outer codeword: `L` elements of `Λ/J`, or `L` field symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OuterWord {
    Ring(Vec<GcaElement>),
    Field(Vec<u32>),
}

impl OuterWord {
    pub fn len(&self) -> usize {
        match self {
            OuterWord::Ring(w) => w.len(),
            OuterWord::Field(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weight(&self) -> usize {
        match self {
            OuterWord::Ring(w) => w.iter().filter(|x| !x.is_zero()).count(),
            OuterWord::Field(w) => w.iter().filter(|&&x| x != 0).count(),
        }
    }

    pub fn display(&self, code: &OuterCode) -> Vec<String> {
        match (self, code) {
            (OuterWord::Ring(w), OuterCode::ParityOverRing { quotient, .. })
            | (OuterWord::Ring(w), OuterCode::FirstCoefficientScheme { quotient, .. }) => {
                w.iter().map(|x| quotient.display(x)).collect()
            }
            (OuterWord::Field(w), OuterCode::ReedSolomon(c)) => {
                w.iter().map(|&x| c.field.display(x)).collect()
            }
            (OuterWord::Field(w), OuterCode::FirstCoefficientScheme { inner, .. }) => {
                w.iter().map(|&x| inner.field.display(x)).collect()
            }
            (OuterWord::Ring(w), _) => w.iter().map(|x| x.to_string()).collect(),
            (OuterWord::Field(w), _) => w.iter().map(|x| x.to_string()).collect(),
        }
    }
}

pub fn encode(outer: &OuterCode, message: &OuterWord) -> Result<OuterWord> {
    match (outer, message) {
        (OuterCode::ParityOverRing { quotient, length }, OuterWord::Ring(m)) => {
            if m.len() + 1 != *length {
                return Err(AlgebraError::BadMessageLength {
                    got: m.len(),
                    expected: length - 1,
                });
            }
            let n2 = quotient.degree() * quotient.degree();
            if m.iter().any(|x| x.c.len() != n2) {
                return Err(AlgebraError::invalid("message symbol from a different ring"));
            }
            let mut w = m.clone();
            w.push(m.iter().fold(quotient.zero(), |s, x| quotient.add(&s, x)));
            Ok(OuterWord::Ring(w))
        }
        (OuterCode::ReedSolomon(c), OuterWord::Field(m))
        | (OuterCode::FirstCoefficientScheme { inner: c, .. }, OuterWord::Field(m)) => {
            Ok(OuterWord::Field(c.encode(m)?))
        }
        _ => Err(AlgebraError::invalid("message symbols do not match the outer code")),
    }
}

/// Minimum Hamming weight of a nonzero codeword of `C̄ ⊆ (Λ/J)^L`.
///
/// For the first-coefficient scheme over `Λ/qΛ` with free coefficients
/// outside `J`, a single free coefficient already gives a weight-one
/// codeword, so the distance is 1 there.
pub fn hamming_distance(outer: &OuterCode) -> Result<u64> {
    match outer {
        OuterCode::ParityOverRing { quotient, length } => {
            let r = quotient.cardinality();
            let size = r
                .checked_pow(*length as u32 - 1)
                .unwrap_or(u128::MAX);
            check_enumerable("parity code", size)?;
            let mut best = u64::MAX;
            for idx in 1..size {
                let msg: Vec<GcaElement> = digits(idx, r, length - 1)
                    .into_iter()
                    .map(|d| quotient.from_index(d as u64))
                    .collect();
                let w = encode(outer, &OuterWord::Ring(msg))?;
                best = best.min(w.weight() as u64);
            }
            Ok(if best == u64::MAX { 0 } else { best })
        }
        OuterCode::ReedSolomon(c) => c.hamming_distance(),
        OuterCode::FirstCoefficientScheme { inner, quotient, .. } => {
            if outer.free_part_in_ideal() || quotient.degree() == 1 {
                inner.hamming_distance()
            } else {
                Ok(1)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftStrategy {
    CanonicalZero,
    FirstCoefficient,
    Randomized(u64),
}

/// A codeword of the inner code together with its outer image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCodeword {
    pub components: Vec<OrderElement>,
    pub outer_image: OuterWord,
}

impl CosetCodeword {
    pub fn numeric_matrices(&self, algebra: &AlgebraSpec) -> Vec<CMatrix> {
        self.components.iter().map(|x| algebra.numeric_matrix(x)).collect()
    }

    /// `|det(Σ M(x_i) M(x_i)*)|`.
    pub fn delta(&self, algebra: &AlgebraSpec) -> f64 {
        let n = algebra.degree();
        let mut g = CMatrix::zeros(n);
        for m in self.numeric_matrices(algebra) {
            g.add_gram(&m);
        }
        g.det().norm()
    }

    pub fn display(&self) -> Vec<String> {
        self.components.iter().map(|x| x.to_string()).collect()
    }
}

impl Serialize for CosetCodeword {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let outer: Vec<String> = match &self.outer_image {
            OuterWord::Ring(w) => w.iter().map(|x| x.to_string()).collect(),
            OuterWord::Field(w) => w.iter().map(|x| x.to_string()).collect(),
        };
        let mut st = s.serialize_struct("CosetCodeword", 2)?;
        st.serialize_field("components", &self.display())?;
        st.serialize_field("outer_image", &outer)?;
        st.end()
    }
}

/// The reduction `π` applied componentwise, read in the outer code's alphabet.
pub fn outer_image(outer: &OuterCode, components: &[OrderElement]) -> Result<OuterWord> {
    match outer {
        OuterCode::ParityOverRing { quotient, .. } => {
            Ok(OuterWord::Ring(components.iter().map(|x| quotient.reduce(x)).collect()))
        }
        OuterCode::FirstCoefficientScheme {
            quotient, component, ..
        } => components
            .iter()
            .map(|x| {
                let first = quotient.ring().from_ok(&x.zcoords[0]);
                component
                    .to_field(quotient.ring(), &first)
                    .ok_or_else(|| AlgebraError::invalid("first coefficient outside the residue field"))
            })
            .collect::<Result<Vec<u32>>>()
            .map(OuterWord::Field),
        OuterCode::ReedSolomon(_) => Err(AlgebraError::invalid(
            "a bare Reed-Solomon code has no ring to reduce into",
        )),
    }
}

/// A random element of the box `[-1, 1]` on every coordinate.
fn random_box_element(algebra: &AlgebraSpec, rng: &mut ChaCha8Rng) -> OrderElement {
    let ext = algebra.extension();
    let n = algebra.degree();
    let rank = algebra.base().rank();
    OrderElement {
        zcoords: (0..n)
            .map(|_| {
                crate::extension::OkElement::new(
                    (0..n)
                        .map(|_| {
                            let a: i64 = rng.random_range(-1..=1);
                            let b: i64 = if rank == 2 { rng.random_range(-1..=1) } else { 0 };
                            BaseElement::new(ext.base(), a, b)
                        })
                        .collect(),
                )
            })
            .collect(),
    }
}

/// Lifts an outer codeword to `Λ^L` so that `π(lift) = word`.
///
/// `CanonicalZero` and `FirstCoefficient` use the canonical residue
/// representatives (and zero free coefficients); `Randomized` adds, per
/// component, a seeded random element of `J` drawn from the unit box.
pub fn lift_codeword(outer: &OuterCode, word: &OuterWord, strategy: LiftStrategy) -> Result<CosetCodeword> {
    if word.len() != outer.length() {
        return Err(AlgebraError::BadMessageLength {
            got: word.len(),
            expected: outer.length(),
        });
    }
    let mut rng = match strategy {
        LiftStrategy::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let components: Vec<OrderElement> = match (outer, word) {
        (OuterCode::ParityOverRing { quotient, .. }, OuterWord::Ring(w)) => {
            let algebra = quotient.algebra();
            let m = quotient.modulus().clone();
            w.iter()
                .map(|x| {
                    let base = quotient.lift(x);
                    match rng.as_mut() {
                        Some(rng) => {
                            let y = random_box_element(algebra, rng);
                            algebra.add(&base, &algebra.scale(&m, &y))
                        }
                        None => base,
                    }
                })
                .collect()
        }
        (
            OuterCode::FirstCoefficientScheme {
                quotient, component, ..
            },
            OuterWord::Field(w),
        ) => {
            let algebra = quotient.algebra();
            let ext = algebra.extension();
            let ring = quotient.ring();
            let size = component.size();
            let mut out = Vec::with_capacity(w.len());
            for &sym in w {
                if sym as u64 >= size {
                    return Err(AlgebraError::invalid(format!("symbol {sym} is not a field element")));
                }
                let mut x = algebra.zero();
                x.zcoords[0] = ring.to_ok(component.from_field(sym));
                if let Some(rng) = rng.as_mut() {
                    let y = random_box_element(algebra, rng);
                    x.zcoords[0] = ext.add(&x.zcoords[0], &ext.scale(quotient.modulus(), &y.zcoords[0]));
                    for j in 1..algebra.degree() {
                        x.zcoords[j] = y.zcoords[j].clone();
                    }
                }
                out.push(x);
            }
            out
        }
        (OuterCode::ReedSolomon(_), _) => {
            return Err(AlgebraError::invalid(
                "a bare Reed-Solomon code has no ring to lift into; use the first-coefficient scheme",
            ))
        }
        _ => return Err(AlgebraError::invalid("codeword symbols do not match the outer code")),
    };
    let outer_image = outer_image(outer, &components)?;
    Ok(CosetCodeword {
        components,
        outer_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::builtin_algebra;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lemma_equality_cases() {
        let i2 = CMatrix::identity(2);
        let r = det_inequality_check(&[i2.clone(), i2.clone()]).unwrap();
        assert!((r.lhs - 4.0).abs() < 1e-12 && (r.rhs - 4.0).abs() < 1e-12 && r.holds);
        let x = CMatrix::from_rows(&[vec![c(1.0, 2.0), c(0.5, 0.0)], vec![c(0.0, -1.0), c(3.0, 1.0)]]);
        let r = det_inequality_check(&[x]).unwrap();
        assert!((r.lhs - r.rhs).abs() <= 1e-12 * r.rhs);
        let z = CMatrix::zeros(2);
        assert_eq!(det_inequality_check(&[z]).unwrap_err().name(), "SingularInput");
    }

    #[test]
    fn parity_over_golden_quotient() {
        let a = builtin_algebra("golden_u_i").unwrap();
        let q = IdealSpec::parse(a.base(), "1+i").unwrap();
        let code = OuterCode::parity(&a, &q, 3).unwrap();
        assert_eq!(hamming_distance(&code).unwrap(), 2);
        let OuterCode::ParityOverRing { quotient, .. } = &code else { unreachable!() };
        let m1 = quotient.from_index(5);
        let m2 = quotient.from_index(9);
        let w = encode(&code, &OuterWord::Ring(vec![m1.clone(), m2.clone()])).unwrap();
        assert_eq!(w, OuterWord::Ring(vec![m1.clone(), m2.clone(), quotient.add(&m1, &m2)]));
        let err = encode(&code, &OuterWord::Ring(vec![m1])).unwrap_err();
        assert_eq!(err.name(), "BadMessageLength");
        for strategy in [LiftStrategy::CanonicalZero, LiftStrategy::Randomized(3)] {
            let l = lift_codeword(&code, &w, strategy).unwrap();
            assert_eq!(l.outer_image, w);
        }
        let zero = OuterWord::Ring(vec![quotient.zero(); 3]);
        let l = lift_codeword(&code, &zero, LiftStrategy::CanonicalZero).unwrap();
        assert!(l.components.iter().all(OrderElement::is_zero));
    }

    #[test]
    fn reed_solomon_over_f16() {
        let f = FiniteField::with_degree(2, 4).unwrap();
        let rs = FieldCode::reed_solomon(f.clone(), 7, 4).unwrap();
        let code = OuterCode::ReedSolomon(rs.clone());
        assert_eq!(hamming_distance(&code).unwrap(), 4);
        let full = FieldCode::reed_solomon(f.clone(), 5, 5).unwrap();
        let msg = vec![3, 0, 7, 1, 15];
        assert_eq!(full.encode(&msg).unwrap(), msg);
        assert_eq!(full.hamming_distance().unwrap(), 1);
        // k = 1: constant polynomials, every nonzero codeword has weight L
        let rep = FieldCode::reed_solomon(f.clone(), 4, 1).unwrap();
        for m in 1..16 {
            let w = rep.encode(&[m]).unwrap();
            assert_eq!(w.iter().filter(|&&s| s != 0).count(), 4);
            assert!(rep.contains(&w));
        }
        let w = rs.encode(&[1, 2, 3, 4]).unwrap();
        assert!(rs.contains(&w));
        let mut bad = w.clone();
        bad[6] ^= 1;
        assert!(!rs.contains(&bad));
        assert!(FieldCode::reed_solomon(f, 17, 2).is_err());
    }

    #[test]
    fn first_coefficient_scheme_over_f4() {
        let a = builtin_algebra("golden_u_1pi").unwrap();
        let q = BaseElement::parse(a.base(), "1+i").unwrap();
        let code = OuterCode::first_coefficient(&a, &q, FieldCodeKind::Parity, 3).unwrap();
        assert!(code.free_part_in_ideal());
        assert_eq!(hamming_distance(&code).unwrap(), 2);
        let w = encode(&code, &OuterWord::Field(vec![1, 2])).unwrap();
        for strategy in [
            LiftStrategy::CanonicalZero,
            LiftStrategy::FirstCoefficient,
            LiftStrategy::Randomized(11),
        ] {
            assert_eq!(lift_codeword(&code, &w, strategy).unwrap().outer_image, w);
        }
        let b = builtin_algebra("golden_u_i").unwrap();
        let code = OuterCode::first_coefficient(&b, &q, FieldCodeKind::Parity, 3).unwrap();
        assert!(!code.free_part_in_ideal());
        assert_eq!(hamming_distance(&code).unwrap(), 1);
    }
}
