//! Formal sums of noncommutative motives `U(-)` with coefficients in
//! `Z[1/r]`, and the rewrite rules that reduce them.
//!
//! Rules applied by [`motive_reduce`]:
//!
//! * `PROD`: a semisimple algebra with several simple components is the sum
//!   of its components.
//! * `WEDD`: `M_n(D)` is Morita equivalent to `D`; a field, or a matrix
//!   algebra over a field, reduces to that field.
//! * `AZU`: a central simple algebra of rank `r` over its center `Z`
//!   reduces to `U(Z)` when every prime of `r` is inverted.
//! * `TPOW`: a tensor power of an algebra is expanded (or reduced through
//!   its base) before `AZU`.
//!
//! Anything else stays as it is: an atom that cannot be reduced is a
//! normal result, not an error.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::center::center_basis;
use crate::algebra::ops::{quotient, tensor};
use crate::algebra::wedderburn::{canonical_center, resolve_piece, semisimple_split, Resolution, DEFAULT_SEED};
use crate::algebra::{
    field_algebra, is_central_simple, is_separable, jacobson_radical, Algebra, GlobalDim, IdealBasis,
};
use crate::error::{Error, Result};
use crate::exactmath::field::render_rational;
use crate::exactmath::modular::{is_prime, prime_factors};
use crate::exactmath::{Field, Poly};
use crate::quadform::{even_clifford, QuadraticForm};

/// Largest dimension to which a tensor power is expanded concretely.
pub const TENSOR_POWER_CAP: usize = 64;

/// `Z[1/r]`, stored as the set of inverted primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CoefficientRing {
    primes: Vec<u64>,
}

impl CoefficientRing {
    pub fn integers() -> CoefficientRing {
        CoefficientRing::default()
    }

    pub fn inverting(primes: &[u64]) -> Result<CoefficientRing> {
        let mut v = primes.to_vec();
        v.sort_unstable();
        v.dedup();
        if let Some(p) = v.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{p} is not a prime")));
        }
        Ok(CoefficientRing { primes: v })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn inverts_prime(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Whether the nonzero integer `n` is a unit.
    pub fn inverts(&self, n: &BigInt) -> bool {
        if n.is_zero() {
            return false;
        }
        let mut m = n.abs();
        for &p in &self.primes {
            let p = BigInt::from(p);
            while (&m % &p).is_zero() {
                m /= &p;
            }
        }
        m.is_one()
    }

    pub fn inverts_usize(&self, n: usize) -> bool {
        self.inverts(&BigInt::from(n))
    }

    /// Whether `q` lies in this ring.
    pub fn contains(&self, q: &BigRational) -> bool {
        self.inverts(q.denom())
    }

    pub fn is_subring_of(&self, o: &CoefficientRing) -> bool {
        self.primes.iter().all(|p| o.inverts_prime(*p))
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primes.is_empty() {
            write!(f, "Z")
        } else {
            let r: BigInt = self.primes.iter().map(|&p| BigInt::from(p)).product();
            write!(f, "Z[1/{r}]")
        }
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug)]
pub enum Atom {
    /// `U(k[t]/(poly))` with `poly` in canonical form; degree one is `U(k)`.
    Field { field: Field, poly: Poly },
    Algebra(Arc<Algebra>),
    /// `U(A)^{(x) exponent}`.
    TensorPower { base: Arc<Algebra>, exponent: u32 },
}

impl Atom {
    pub fn base_field(k: &Field) -> Atom {
        Atom::Field { field: k.clone(), poly: Poly::x(k) }
    }

    /// `U(k[t]/(p))`, canonicalized.
    pub fn field_from_minpoly(k: &Field, p: &Poly) -> Result<Atom> {
        let (poly, _) = canonical_center(k, p)?;
        Ok(Atom::Field { field: k.clone(), poly })
    }

    pub fn algebra(a: Algebra) -> Atom {
        Atom::Algebra(Arc::new(a))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Atom::Field { .. })
    }

    pub fn field_degree(&self) -> Option<usize> {
        match self {
            Atom::Field { poly, .. } => poly.degree(),
            _ => None,
        }
    }

    /// Sort and identity key: fields first by degree, then algebras.
    pub fn key(&self) -> String {
        match self {
            Atom::Field { field, poly } => {
                format!("0|{:04}|{}|{}", poly.degree().unwrap_or(0), field.name(), poly.render(field, "t"))
            }
            Atom::Algebra(a) => format!("1|{}|{}", a.label(), a.fingerprint()),
            Atom::TensorPower { base, exponent } => format!("2|{}|{}|{exponent}", base.label(), base.fingerprint()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Atom::Field { field, poly } if poly.degree() == Some(1) => format!("U({})", field.name()),
            Atom::Field { field, poly } => format!("U({}[t]/({}))", field.name(), poly.render(field, "t")),
            Atom::Algebra(a) => format!("U({})", a.label()),
            Atom::TensorPower { base, exponent } => format!("U({})^{exponent}", base.label()),
        }
    }
}

/// A finite formal sum `sum c_i U(X_i)` with coefficients in a
/// [`CoefficientRing`].
#[derive(Clone, Debug)]
pub struct MotiveExpr {
    ring: CoefficientRing,
    terms: BTreeMap<String, (Atom, BigRational)>,
}

impl PartialEq for MotiveExpr {
    fn eq(&self, o: &MotiveExpr) -> bool {
        self.ring == o.ring
            && self.terms.len() == o.terms.len()
            && self.terms.iter().zip(&o.terms).all(|((k1, (_, c1)), (k2, (_, c2)))| k1 == k2 && c1 == c2)
    }
}

impl MotiveExpr {
    pub fn zero(ring: &CoefficientRing) -> MotiveExpr {
        MotiveExpr { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn atom(ring: &CoefficientRing, atom: Atom) -> MotiveExpr {
        let mut e = MotiveExpr::zero(ring);
        e.push(atom, BigRational::one());
        e
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &BigRational)> {
        self.terms.values().map(|(a, c)| (a, c))
    }

    pub fn coefficient(&self, atom: &Atom) -> BigRational {
        self.terms.get(&atom.key()).map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    fn check(&self, c: &BigRational) -> Result<()> {
        if self.ring.contains(c) {
            Ok(())
        } else {
            Err(Error::CoefficientDenominator { value: render_rational(c), ring: self.ring.to_string() })
        }
    }

    fn push(&mut self, atom: Atom, c: BigRational) {
        let key = atom.key();
        let entry = self.terms.entry(key.clone()).or_insert_with(|| (atom, BigRational::zero()));
        entry.1 += c;
        if entry.1.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds `c * atom`.
    pub fn add_term(&mut self, atom: Atom, c: BigRational) -> Result<()> {
        self.check(&c)?;
        self.push(atom, c);
        Ok(())
    }

    pub fn add(&self, o: &MotiveExpr) -> Result<MotiveExpr> {
        if self.ring != o.ring {
            return Err(Error::InvalidArgument(format!("cannot add expressions over {} and {}", self.ring, o.ring)));
        }
        let mut out = self.clone();
        for (a, c) in o.terms.values() {
            out.push(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Result<MotiveExpr> {
        self.check(c)?;
        let mut out = MotiveExpr::zero(&self.ring);
        for (a, x) in self.terms.values() {
            out.push(a.clone(), x * c);
        }
        Ok(out)
    }

    /// The same sum over another coefficient ring.
    pub fn over(&self, ring: &CoefficientRing) -> Result<MotiveExpr> {
        let mut out = MotiveExpr::zero(ring);
        for (a, c) in self.terms.values() {
            out.add_term(a.clone(), c.clone())?;
        }
        Ok(out)
    }

    /// Only field atoms remain.
    pub fn is_fully_reduced(&self) -> bool {
        self.terms.values().all(|(a, _)| a.is_field())
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (a, c)) in self.terms.values().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let abs = c.abs();
            if !abs.is_one() {
                out.push_str(&render_rational(&abs));
                out.push('*');
            }
            out.push_str(&a.render());
        }
        out
    }
}

impl fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize)]
struct TermJson {
    atom: String,
    coeff: String,
}

impl Serialize for MotiveExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> =
            self.terms.values().map(|(a, c)| TermJson { atom: a.render(), coeff: render_rational(c) }).collect();
        terms.serialize(s)
    }
}

/// `1 * U(A)`; one-dimensional algebras are the base field.
pub fn motive_atom(a: &Algebra, ring: &CoefficientRing) -> MotiveExpr {
    if a.dim() == 1 {
        MotiveExpr::atom(ring, Atom::base_field(a.field()))
    } else {
        MotiveExpr::atom(ring, Atom::algebra(a.clone()))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: &'static str,
    pub from: String,
    pub to: String,
    pub hypothesis: String,
    /// For `AZU`: the rank over the center that had to be inverted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub input: String,
    pub ring: CoefficientRing,
    pub normal_form: String,
    pub expr: MotiveExpr,
    pub fully_reduced: bool,
    pub trace: Vec<TraceStep>,
    pub seed: u64,
}

struct Reducer<'a> {
    ring: &'a CoefficientRing,
    seed: u64,
    trace: Vec<TraceStep>,
}

fn render_sum(parts: &[(Atom, BigRational)]) -> String {
    let mut e = MotiveExpr::zero(&CoefficientRing::integers());
    for (a, c) in parts {
        e.push(a.clone(), c.clone());
    }
    e.render()
}

fn prime_list(n: usize) -> String {
    prime_factors(n as u64).iter().map(|p| format!("1/{p}")).collect::<Vec<_>>().join(", ")
}

impl Reducer<'_> {
    fn step(&mut self, rule: &'static str, from: &Atom, to: &[(Atom, BigRational)], hypothesis: String, rank: Option<usize>) {
        self.trace.push(TraceStep { rule, from: from.render(), to: render_sum(to), hypothesis, rank });
    }

    fn unanalyzable(atom: &Atom, e: Error) -> Error {
        match e {
            Error::UnsupportedCharacteristic(r) | Error::UnsupportedField(r) => {
                Error::UnanalyzableAtom { atom: atom.render(), reason: r }
            }
            other => other,
        }
    }

    /// Fully reduces one atom to a sum with integer multiplicities.
    fn atom(&mut self, atom: &Atom) -> Result<Vec<(Atom, BigRational)>> {
        match atom {
            Atom::Field { .. } => Ok(vec![(atom.clone(), BigRational::one())]),
            Atom::Algebra(a) => self.algebra(atom, a),
            Atom::TensorPower { base, exponent } => self.tensor_power(atom, base, *exponent),
        }
    }

    fn algebra(&mut self, atom: &Atom, a: &Arc<Algebra>) -> Result<Vec<(Atom, BigRational)>> {
        let k = a.field();
        if a.dim() == 1 {
            let to = vec![(Atom::base_field(k), BigRational::one())];
            self.step("WEDD", atom, &to, "one-dimensional algebra is the base field".into(), None);
            return Ok(to);
        }
        let split = semisimple_split(a, self.seed).map_err(|e| Self::unanalyzable(atom, e))?;
        if split.radical_dim > 0 {
            self.step(
                "STUCK",
                atom,
                &[(atom.clone(), BigRational::one())],
                format!("radical of dimension {}; nilpotent extensions are handled by nil_reduce", split.radical_dim),
                None,
            );
            return Ok(vec![(atom.clone(), BigRational::one())]);
        }
        if split.pieces.len() > 1 {
            let parts: Vec<(Atom, BigRational)> =
                split.pieces.iter().map(|p| (Atom::algebra(p.algebra.clone()), BigRational::one())).collect();
            self.step("PROD", atom, &parts, format!("{} central idempotents", parts.len()), None);
            let mut out = Vec::new();
            for (p, _) in &parts {
                out.extend(self.atom(p)?);
            }
            return Ok(out);
        }
        let piece = &split.pieces[0];
        let m = piece.dim_over_center();
        let center = Atom::field_from_minpoly(k, &piece.center_poly)?;
        let to = vec![(center.clone(), BigRational::one())];
        if m == 1 {
            self.step("WEDD", atom, &to, "commutative simple algebra is a field".into(), None);
            return Ok(to);
        }
        if k.is_finite() {
            self.step("WEDD", atom, &to, "over a finite field every simple algebra is a matrix algebra over its center".into(), None);
            return Ok(to);
        }
        if self.ring.inverts_usize(m) {
            let hyp = format!("central simple of rank {m} over its center; {} in {}", prime_list(m), self.ring);
            self.step("AZU", atom, &to, hyp, Some(m));
            return Ok(to);
        }
        let comp = resolve_piece(piece, self.seed)?;
        let (e, exact) = match (comp.resolution, comp.division_degree_squared) {
            (Resolution::Resolved, Some(e)) => (e, true),
            _ => (comp.division_bound, false),
        };
        if e == 1 {
            let hyp = if exact {
                format!("matrix algebra M_{} over its center", comp.matrix_size.unwrap_or(0))
            } else {
                "split by an idempotent of rank one".into()
            };
            self.step("WEDD", atom, &to, hyp, None);
            return Ok(to);
        }
        if self.ring.inverts_usize(e) {
            let what = if exact { "division part of rank" } else { "division part of rank dividing" };
            let hyp = format!("{what} {e} over its center; {} in {}", prime_list(e), self.ring);
            self.step("AZU", atom, &to, hyp, Some(e));
            return Ok(to);
        }
        let missing: Vec<String> = prime_factors(e as u64)
            .into_iter()
            .filter(|p| !self.ring.inverts_prime(*p))
            .map(|p| format!("1/{p}"))
            .collect();
        let what = if exact { "division part of rank" } else { "unresolved division part, rank dividing" };
        let stuck = vec![(atom.clone(), BigRational::one())];
        let hyp = format!("{what} {e} over its center; {} not in {}", missing.join(", "), self.ring);
        self.step("STUCK", atom, &stuck, hyp, None);
        Ok(stuck)
    }

    fn tensor_power(&mut self, atom: &Atom, base: &Arc<Algebra>, exponent: u32) -> Result<Vec<(Atom, BigRational)>> {
        let k = base.field();
        let unit = vec![(Atom::base_field(k), BigRational::one())];
        let base_atom = Atom::Algebra(base.clone());
        let mark = self.trace.len();
        let reduced = self.atom(&base_atom)?;
        if reduced.len() == 1 && reduced[0].0.key() == unit[0].0.key() && reduced[0].1.is_one() {
            self.step("TPOW", atom, &unit, format!("base reduces to U({}), the unit", k.name()), None);
            return Ok(unit);
        }
        self.trace.truncate(mark);
        let dim = base.dim().checked_pow(exponent).unwrap_or(usize::MAX);
        if dim > TENSOR_POWER_CAP {
            let stuck = vec![(atom.clone(), BigRational::one())];
            self.step("STUCK", atom, &stuck, format!("tensor power has dimension {dim} > {TENSOR_POWER_CAP}"), None);
            return Ok(stuck);
        }
        let mut power = (**base).clone();
        for _ in 1..exponent {
            power = tensor(&power, base)?;
        }
        let power = power.with_label(format!("{}^(x){exponent}", base.label()));
        let expanded = Atom::algebra(power);
        self.step("TPOW", atom, &[(expanded.clone(), BigRational::one())], format!("expanded to dimension {dim}"), None);
        self.atom(&expanded)
    }
}

pub fn motive_reduce(e: &MotiveExpr, ring: &CoefficientRing) -> Result<Reduction> {
    motive_reduce_seeded(e, ring, DEFAULT_SEED)
}

/// Applies the rewrite rules exhaustively, atom by atom in canonical
/// order. The result is deterministic for a given seed.
pub fn motive_reduce_seeded(e: &MotiveExpr, ring: &CoefficientRing, seed: u64) -> Result<Reduction> {
    let e = e.over(ring)?;
    let mut r = Reducer { ring, seed, trace: Vec::new() };
    let mut out = MotiveExpr::zero(ring);
    for (atom, c) in e.terms.values() {
        for (a, m) in r.atom(atom)? {
            out.push(a, m * c);
        }
    }
    Ok(Reduction {
        input: e.render(),
        ring: ring.clone(),
        normal_form: out.render(),
        fully_reduced: out.is_fully_reduced(),
        expr: out,
        trace: r.trace,
        seed,
    })
}

/// `sum c * [Z : k]` over the atoms, with `Z` the center of an algebra atom.
/// For semisimple algebras over a field of characteristic zero this is the
/// dimension of `HH_0` and is preserved by every rule.
pub fn center_degree_sum(e: &MotiveExpr) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for (atom, c) in e.terms() {
        let d = match atom {
            Atom::Field { poly, .. } => poly.degree().unwrap_or(1),
            Atom::Algebra(a) => center_basis(a).len(),
            Atom::TensorPower { .. } => {
                return Err(Error::InvalidArgument("center degree of an unexpanded tensor power".into()))
            }
        };
        total += c * BigRational::from_integer(BigInt::from(d));
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct NilReduction {
    /// Which hypothesis licensed the passage to the quotient.
    pub branch: String,
    pub nilpotency_index: usize,
    pub quotient_dim: usize,
    pub reduction: Reduction,
}

/// `U(S) = U(S/I)` for a nilpotent ideal `I`, followed by
/// [`motive_reduce`]. Requires `S` and `S/I` to have finite global
/// dimension and either `S/J(S)` separable or `1/p` in `R`. When `I` is
/// not the radical, `quotient_finite_gldim` must assert the hypothesis
/// on `S/I`.
pub fn nil_reduce(
    s: &Algebra,
    ideal: &IdealBasis,
    ring: &CoefficientRing,
    quotient_finite_gldim: bool,
) -> Result<NilReduction> {
    let index = ideal.nilpotency_index(s).ok_or_else(|| Error::HypothesisUnsatisfied {
        clause: "ideal is nilpotent".into(),
    })?;
    match s.flags().finite_global_dimension {
        GlobalDim::Yes => {}
        g => {
            return Err(Error::HypothesisUnsatisfied { clause: format!("finite_global_dimension = {}", g.as_str()) })
        }
    }
    let j = jacobson_radical(s)?;
    let is_radical = ideal.dim() == j.dim();
    if !is_radical && !quotient_finite_gldim {
        return Err(Error::HypothesisUnsatisfied {
            clause: "S/I has finite global dimension (not asserted, and I is not the radical)".into(),
        });
    }
    let semisimple = if j.is_zero() { s.clone() } else { quotient(s, &j)? };
    let p = s.field().characteristic();
    let branch = if p != 0 && ring.inverts_prime(p) {
        format!("1/{p} in {ring}")
    } else if is_separable(&semisimple)?.separable {
        "S/J(S) is separable".to_string()
    } else {
        return Err(Error::HypothesisUnsatisfied {
            clause: format!("S/J(S) separable or 1/{p} in {ring}"),
        });
    };
    let q = if ideal.is_zero() { s.clone() } else { quotient(s, ideal)? };
    let q = q.with_label(format!("{}/I", s.label()));
    let mut reduction = motive_reduce(&motive_atom(&q, ring), ring)?;
    let nil = TraceStep {
        rule: "NIL",
        from: format!("U({})", s.label()),
        to: format!("U({})", q.label()),
        hypothesis: format!("nilpotent ideal of dimension {} (index {index}); {branch}", ideal.dim()),
        rank: None,
    };
    reduction.trace.insert(0, nil);
    reduction.input = format!("U({})", s.label());
    Ok(NilReduction { branch, nilpotency_index: index, quotient_dim: q.dim(), reduction })
}

/// Largest degree accepted by [`severi_brauer_motive`].
pub const MAX_SB_DEGREE: usize = 4;

/// `U(SB(A)) = U(k) + U(A) + U(A)^2 + ... + U(A)^{d-1}` for a central simple
/// algebra of degree `d`, then reduced.
pub fn severi_brauer_motive(a: &Algebra, ring: &CoefficientRing) -> Result<Reduction> {
    let check = is_central_simple(a)?;
    if !check.central_simple {
        return Err(Error::NotCentralSimple(format!(
            "{}: enveloping map has rank {} of {}",
            a.label(),
            check.enveloping_rank,
            check.expected_rank
        )));
    }
    let d = a.dim().sqrt();
    if d > MAX_SB_DEGREE {
        return Err(Error::DimensionCap(format!("degree {d} exceeds {MAX_SB_DEGREE}")));
    }
    let mut e = MotiveExpr::atom(ring, Atom::base_field(a.field()));
    let base = Arc::new(a.clone());
    for i in 1..d {
        let atom = if i == 1 {
            Atom::Algebra(base.clone())
        } else {
            Atom::TensorPower { base: base.clone(), exponent: i as u32 }
        };
        e.add_term(atom, BigRational::one())?;
    }
    motive_reduce(&e, ring)
}

/// `U(Q_q) = U(C_0(q)) + (n-2) U(k)`, then reduced.
pub fn quadric_motive(q: &QuadraticForm, ring: &CoefficientRing) -> Result<Reduction> {
    let n = q.dim();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("quadrics need n >= 3, got {n}")));
    }
    let c0 = even_clifford(q)?;
    let mut e = motive_atom(&c0, ring);
    e.add_term(Atom::base_field(q.field()), BigRational::from_integer(BigInt::from(n - 2)))?;
    motive_reduce(&e, ring)
}

/// `U(k)` for the base field as a convenience.
pub fn unit_motive(k: &Field, ring: &CoefficientRing) -> Result<MotiveExpr> {
    Ok(motive_atom(&field_algebra(k)?, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::algebra::ops::product;

    fn q() -> Field {
        Field::rationals()
    }

    fn ring(p: &[u64]) -> CoefficientRing {
        CoefficientRing::inverting(p).unwrap()
    }

    fn hamilton() -> Algebra {
        let f = q();
        quaternion(&f, &f.from_i64(-1), &f.from_i64(-1)).unwrap().with_label("H")
    }

    #[test]
    fn expressions() {
        let z = ring(&[]);
        let u = unit_motive(&q(), &z).unwrap();
        assert_eq!(u.render(), "U(Q)");
        assert_eq!(u.add(&u).unwrap().render(), "2*U(Q)");
        let h = motive_atom(&hamilton(), &z);
        let half = BigRational::new(1.into(), 2.into());
        assert!(matches!(h.scale(&half), Err(Error::CoefficientDenominator { .. })));
        assert_eq!(h.over(&ring(&[2])).unwrap().scale(&half).unwrap().render(), "1/2*U(H)");
        assert_eq!(ring(&[3, 2, 3]).to_string(), "Z[1/6]");
        assert!(u.add(&u.scale(&BigRational::from_integer((-1).into())).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn azumaya_guard() {
        let h = motive_atom(&hamilton(), &ring(&[]));
        let r = motive_reduce(&h, &ring(&[2])).unwrap();
        assert_eq!(r.normal_form, "U(Q)");
        assert!(r.trace.iter().any(|s| s.rule == "AZU" && s.rank == Some(4)));
        let r = motive_reduce(&h, &ring(&[])).unwrap();
        assert_eq!(r.normal_form, "U(H)");
        assert!(!r.fully_reduced);
        let r = motive_reduce(&h, &ring(&[3])).unwrap();
        assert_eq!(r.normal_form, "U(H)");
    }

    #[test]
    fn morita_and_products() {
        let f = q();
        let z = ring(&[]);
        let r = motive_reduce(&motive_atom(&matrix(&f, 3).unwrap(), &z), &z).unwrap();
        assert_eq!(r.normal_form, "U(Q)");
        let qq = product(&field_algebra(&f).unwrap(), &field_algebra(&f).unwrap()).unwrap();
        assert_eq!(motive_reduce(&motive_atom(&qq, &z), &z).unwrap().normal_form, "2*U(Q)");
        let c3 = cyclic_group_algebra(&f, 3).unwrap();
        assert_eq!(motive_reduce(&motive_atom(&c3, &z), &z).unwrap().normal_form, "U(Q) + U(Q[t]/(t^2+3))");
        let r2 = motive_reduce(&motive_atom(&c3, &z), &z).unwrap();
        let again = motive_reduce(&r2.expr, &z).unwrap();
        assert_eq!(again.expr, r2.expr);
    }

    #[test]
    fn nilinvariance() {
        let f = q();
        let z = ring(&[]);
        let t = upper_triangular(&f, 2).unwrap();
        let j = jacobson_radical(&t).unwrap();
        assert_eq!(nil_reduce(&t, &j, &z, false).unwrap().reduction.normal_form, "2*U(Q)");
        let k = kronecker(&f).unwrap();
        let j = jacobson_radical(&k).unwrap();
        assert_eq!(nil_reduce(&k, &j, &z, false).unwrap().reduction.normal_form, "2*U(Q)");
        let f2 = Field::prime(2).unwrap();
        let d = dual_numbers(&f2).unwrap();
        let j = jacobson_radical(&d).unwrap();
        match nil_reduce(&d, &j, &z, false) {
            Err(Error::HypothesisUnsatisfied { clause }) => assert_eq!(clause, "finite_global_dimension = no"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn severi_brauer() {
        let h = hamilton();
        assert_eq!(severi_brauer_motive(&h, &ring(&[])).unwrap().normal_form, "U(Q) + U(H)");
        assert_eq!(severi_brauer_motive(&h, &ring(&[2])).unwrap().normal_form, "2*U(Q)");
        assert_eq!(severi_brauer_motive(&matrix(&q(), 2).unwrap(), &ring(&[])).unwrap().normal_form, "2*U(Q)");
        assert_eq!(severi_brauer_motive(&matrix(&q(), 3).unwrap(), &ring(&[])).unwrap().normal_form, "3*U(Q)");
        let c = poly_quotient(&q(), &Poly::from_i64(&q(), &[1, 0, 1])).unwrap();
        assert!(matches!(severi_brauer_motive(&c, &ring(&[])), Err(Error::NotCentralSimple(_))));
    }

    #[test]
    fn quadrics() {
        let f = q();
        let two = ring(&[2]);
        let form = |d: &[i64]| QuadraticForm::diagonal_i64(&f, d).unwrap();
        assert_eq!(quadric_motive(&form(&[1, 1, 1]), &two).unwrap().normal_form, "2*U(Q)");
        assert_eq!(quadric_motive(&form(&[1, 1, 1, 1]), &two).unwrap().normal_form, "4*U(Q)");
        assert_eq!(
            quadric_motive(&form(&[1, 1, 1, -1]), &two).unwrap().normal_form,
            "2*U(Q) + U(Q[t]/(t^2+1))"
        );
    }
}
