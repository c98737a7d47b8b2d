//! Finite-rank commutative rings with a rank map to `Z^m`, standing in for
//! `K_0(X)`: nilpotence of rank-zero elements and inversion of elements of
//! invertible rank after inverting primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::field::render_rational;
use crate::exactmath::{smith_normal_form, Field, IntMat, Mat, Scalar};
use crate::motives::CoefficientRing;

/// Default bound on exponents searched for nilpotence.
pub const DEFAULT_MAX_EXP: u32 = 64;

/// Coordinates on the generators: the first `free_rank` are free, the rest
/// cyclic of the listed orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Element(pub Vec<BigRational>);

#[derive(Clone, Debug)]
pub struct K0RingModel {
    label: String,
    free_rank: usize,
    torsion: Vec<BigInt>,
    /// `mult[i][j]` is `g_i * g_j` in coordinates.
    mult: Vec<Vec<Vec<BigInt>>>,
    unit: Vec<BigInt>,
    /// `m x n` integer matrix; torsion columns are zero.
    rank_map: Vec<Vec<BigInt>>,
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

impl K0RingModel {
    /// Validates the ring axioms on generators and the homomorphism
    /// property of the rank map.
    pub fn new(
        label: impl Into<String>,
        free_rank: usize,
        torsion: Vec<BigInt>,
        mult: Vec<Vec<Vec<BigInt>>>,
        unit: Vec<BigInt>,
        rank_map: Vec<Vec<BigInt>>,
    ) -> Result<K0RingModel> {
        let n = free_rank + torsion.len();
        let violation = |triple: Vec<usize>, detail: String| Error::AxiomViolation { triple, detail };
        if n == 0 {
            return Err(Error::InvalidArgument("a ring needs at least one generator".into()));
        }
        if let Some(c) = torsion.iter().find(|c| **c < BigInt::from(2)) {
            return Err(Error::InvalidArgument(format!("torsion modulus {c} must be at least 2")));
        }
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::InvalidArgument(format!("multiplication table must be {n} x {n} x {n}")));
        }
        if unit.len() != n {
            return Err(Error::InvalidArgument(format!("unit must have {n} coordinates")));
        }
        if rank_map.is_empty() || rank_map.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!("rank map must have m >= 1 rows of length {n}")));
        }
        let mut model = K0RingModel { label: label.into(), free_rank, torsion, mult, unit, rank_map };
        let z = CoefficientRing::integers();
        // reduce table entries into canonical ranges
        for i in 0..n {
            for j in 0..n {
                let v: Vec<BigRational> = model.mult[i][j].iter().map(rat).collect();
                let r = model.normalize(v, &z)?;
                model.mult[i][j] = r.0.iter().map(|x| x.to_integer()).collect();
            }
        }
        let u = model.normalize(model.unit.iter().map(rat).collect(), &z)?;
        model.unit = u.0.iter().map(|x| x.to_integer()).collect();
        for row in &model.rank_map {
            for (t, c) in row[free_rank..].iter().enumerate() {
                if !c.is_zero() {
                    return Err(violation(vec![free_rank + t], "rank map is nonzero on a torsion generator".into()));
                }
            }
        }
        let gens: Vec<K0Element> = (0..n).map(|i| model.generator(i)).collect();
        for i in free_rank..n {
            let c = &model.torsion[i - free_rank];
            for (j, g) in gens.iter().enumerate() {
                let p = model.mul(&gens[i], g, &z);
                if !model.scale(&p, &rat(c), &z)?.is_zero() {
                    return Err(violation(vec![i, j], format!("{c} * g_{i} g_{j} != 0 although g_{i} has order {c}")));
                }
            }
        }
        let unit = model.unit_element();
        for (i, g) in gens.iter().enumerate() {
            if &model.mul(&unit, g, &z) != g {
                return Err(violation(vec![i], "unit law fails".into()));
            }
            for (j, h) in gens.iter().enumerate() {
                if model.mul(g, h, &z) != model.mul(h, g, &z) {
                    return Err(violation(vec![i, j], "not commutative".into()));
                }
                let rg = model.rank(g);
                let rh = model.rank(h);
                let prod: Vec<BigRational> = rg.iter().zip(&rh).map(|(a, b)| a * b).collect();
                if model.rank(&model.mul(g, h, &z)) != prod {
                    return Err(violation(vec![i, j], "rank is not multiplicative".into()));
                }
                for (l, w) in gens.iter().enumerate() {
                    let left = model.mul(&model.mul(g, h, &z), w, &z);
                    let right = model.mul(g, &model.mul(h, w, &z), &z);
                    if left != right {
                        return Err(violation(vec![i, j, l], "not associative".into()));
                    }
                }
            }
        }
        if model.rank(&unit).iter().any(|r| !r.is_one()) {
            return Err(violation(vec![], "rank of the unit is not (1, ..., 1)".into()));
        }
        Ok(model)
    }

    /// `Pn` (n <= 4): `Z[x]/(x^{n+1})`, rank = constant term.
    /// `dedekind-c` (2 <= c <= 1000): `Z + Z/c` with square-zero torsion.
    /// `point`: `Z`.
    pub fn builtin(name: &str) -> Result<K0RingModel> {
        if name == "point" {
            return K0RingModel::new("point", 1, vec![], vec![vec![big(&[1])]], big(&[1]), vec![big(&[1])]);
        }
        if let Some(n) = name.strip_prefix('P').and_then(|s| s.parse::<usize>().ok()) {
            if !(1..=4).contains(&n) {
                return Err(Error::InvalidArgument(format!("built-in P{n}: n must be in 1..=4")));
            }
            let g = n + 1;
            let mult = (0..g)
                .map(|i| {
                    (0..g)
                        .map(|j| {
                            let mut v = vec![BigInt::zero(); g];
                            if i + j < g {
                                v[i + j] = BigInt::one();
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            let mut unit = vec![BigInt::zero(); g];
            unit[0] = BigInt::one();
            let rank = vec![unit.clone()];
            return K0RingModel::new(name, g, vec![], mult, unit, rank);
        }
        if let Some(c) = name.strip_prefix("dedekind-").and_then(|s| s.parse::<i64>().ok()) {
            if !(2..=1000).contains(&c) {
                return Err(Error::InvalidArgument(format!("built-in dedekind-{c}: c must be in 2..=1000")));
            }
            let mult = vec![vec![big(&[1, 0]), big(&[0, 1])], vec![big(&[0, 1]), big(&[0, 0])]];
            return K0RingModel::new(name, 1, vec![BigInt::from(c)], mult, big(&[1, 0]), vec![big(&[1, 0])]);
        }
        Err(Error::InvalidArgument(format!("unknown built-in model {name:?} (point, P1..P4, dedekind-c)")))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `m`, the number of rank components.
    pub fn components(&self) -> usize {
        self.rank_map.len()
    }

    /// Invariant factors of the torsion subgroup.
    pub fn torsion_invariants(&self) -> Vec<BigInt> {
        let t = self.torsion.len();
        if t == 0 {
            return Vec::new();
        }
        let mut m = IntMat::zeros(t, t);
        for (i, c) in self.torsion.iter().enumerate() {
            m.data[i * t + i] = c.clone();
        }
        smith_normal_form(&m).diagonal.into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn generator(&self, i: usize) -> K0Element {
        let mut v = vec![BigRational::zero(); self.len()];
        v[i] = BigRational::one();
        K0Element(v)
    }

    pub fn zero(&self) -> K0Element {
        K0Element(vec![BigRational::zero(); self.len()])
    }

    pub fn unit_element(&self) -> K0Element {
        K0Element(self.unit.iter().map(rat).collect())
    }

    /// Order of torsion generator `t` after tensoring with `R`: the part of
    /// its order prime to the inverted primes.
    fn local_modulus(&self, t: usize, ring: &CoefficientRing) -> BigInt {
        let mut c = self.torsion[t].clone();
        for &p in ring.primes() {
            let p = BigInt::from(p);
            while (&c % &p).is_zero() {
                c /= &p;
            }
        }
        c
    }

    /// Checks denominators against `R` and reduces torsion coordinates.
    pub fn normalize(&self, v: Vec<BigRational>, ring: &CoefficientRing) -> Result<K0Element> {
        if v.len() != self.len() {
            return Err(Error::InvalidArgument(format!("element needs {} coordinates, got {}", self.len(), v.len())));
        }
        let mut out = Vec::with_capacity(v.len());
        for (i, x) in v.into_iter().enumerate() {
            if !ring.contains(&x) {
                return Err(Error::CoefficientDenominator { value: render_rational(&x), ring: ring.to_string() });
            }
            if i < self.free_rank {
                out.push(x);
                continue;
            }
            let c = self.local_modulus(i - self.free_rank, ring);
            if c.is_one() {
                out.push(BigRational::zero());
                continue;
            }
            // a/b with b a unit of R, hence invertible mod c
            let inv = mod_inverse(x.denom(), &c).expect("denominator is a unit of R");
            out.push(rat(&(x.numer() * inv).mod_floor(&c)));
        }
        Ok(K0Element(out))
    }

    pub fn element(&self, coords: &[i64]) -> Result<K0Element> {
        self.normalize(coords.iter().map(|&x| BigRational::from_integer(x.into())).collect(), &CoefficientRing::integers())
    }

    pub fn add(&self, x: &K0Element, y: &K0Element, ring: &CoefficientRing) -> K0Element {
        let v = x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect();
        self.normalize(v, ring).expect("sum of elements of R-modules")
    }

    pub fn sub(&self, x: &K0Element, y: &K0Element, ring: &CoefficientRing) -> K0Element {
        let v = x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect();
        self.normalize(v, ring).expect("difference of elements of R-modules")
    }

    pub fn scale(&self, x: &K0Element, c: &BigRational, ring: &CoefficientRing) -> Result<K0Element> {
        self.normalize(x.0.iter().map(|a| a * c).collect(), ring)
    }

    pub fn mul(&self, x: &K0Element, y: &K0Element, ring: &CoefficientRing) -> K0Element {
        let n = self.len();
        let mut v = vec![BigRational::zero(); n];
        for (i, a) in x.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (l, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        v[l] += &ab * rat(c);
                    }
                }
            }
        }
        self.normalize(v, ring).expect("product of elements of R-algebras")
    }

    pub fn pow(&self, x: &K0Element, e: u32, ring: &CoefficientRing) -> K0Element {
        let mut out = self.normalize(self.unit_element().0, ring).expect("unit");
        for _ in 0..e {
            out = self.mul(&out, x, ring);
        }
        out
    }

    pub fn rank(&self, x: &K0Element) -> Vec<BigRational> {
        self.rank_map
            .iter()
            .map(|row| row.iter().zip(&x.0).fold(BigRational::zero(), |acc, (r, a)| acc + rat(r) * a))
            .collect()
    }

    pub fn render(&self, x: &K0Element) -> String {
        x.0.iter().map(render_rational).collect::<Vec<_>>().join(", ")
    }
}

impl K0Element {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

fn render_vec(v: &[BigRational]) -> Vec<String> {
    v.iter().map(render_rational).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotenceReport {
    pub model: String,
    pub element: String,
    /// Least `N` with `e^N = 0`, if found within the bound.
    pub exponent: Option<u32>,
    pub max_exp: u32,
    pub note: String,
}

/// Least `N <= max_exp` with `e^N = 0` for an element of rank zero.
pub fn nilpotence_witness(model: &K0RingModel, e: &K0Element, max_exp: u32) -> Result<NilpotenceReport> {
    let rank = model.rank(e);
    if rank.iter().any(|r| !r.is_zero()) {
        return Err(Error::RankNonzero(format!("rank is ({})", render_vec(&rank).join(", "))));
    }
    let z = CoefficientRing::integers();
    let mut power = model.normalize(model.unit_element().0, &z)?;
    let mut exponent = None;
    for n in 1..=max_exp {
        power = model.mul(&power, e, &z);
        if power.is_zero() {
            exponent = Some(n);
            break;
        }
    }
    let note = match exponent {
        Some(_) => "nilpotent".to_string(),
        None => format!(
            "no N <= {max_exp} with e^N = 0; rank-zero elements of a genuine K_0 ring are nilpotent, so either the bound is too small or the model is not one"
        ),
    };
    Ok(NilpotenceReport { model: model.label.clone(), element: model.render(e), exponent, max_exp, note })
}

#[derive(Clone, Debug, Serialize)]
pub struct InversionReport {
    pub model: String,
    pub ring: CoefficientRing,
    pub element: String,
    pub rank: Vec<String>,
    /// An element of rank `(1/r_1, ..., 1/r_m)`.
    pub beta: String,
    /// `nu = 1 - a beta`, of rank zero.
    pub nu: String,
    /// Least `N` with `nu^{N+1} = 0`.
    pub nilpotence_exponent: u32,
    pub inverse: String,
    #[serde(skip)]
    pub inverse_element: K0Element,
    /// `a * inverse = 1`, checked exactly.
    pub verified: bool,
}

/// Inverts `a` in `K_0 (x) R` when every rank component is a unit of `R`:
/// pick `beta` of rank `(1/r_i)`, set `nu = 1 - a beta`, which is nilpotent,
/// and return `beta (1 + nu + ... + nu^N)`.
pub fn localize_invert(model: &K0RingModel, a: &K0Element, ring: &CoefficientRing, max_exp: u32) -> Result<InversionReport> {
    if max_exp == 0 {
        return Err(Error::InvalidArgument("max_exp must be at least 1".into()));
    }
    let a = model.normalize(a.0.clone(), ring)?;
    let rank = model.rank(&a);
    for r in &rank {
        if r.is_zero() || !ring.contains(&r.recip()) {
            return Err(Error::RankNotInvertible(format!("rank component {} is not a unit of {ring}", render_rational(r))));
        }
    }
    let beta = rank_preimage(model, &rank.iter().map(|r| r.recip()).collect::<Vec<_>>(), ring)?;
    let one = model.normalize(model.unit_element().0, ring)?;
    let nu = model.sub(&one, &model.mul(&a, &beta, ring), ring);
    // least N with nu^{N+1} = 0
    let mut power = nu.clone();
    let mut n = None;
    for k in 0..max_exp {
        if power.is_zero() {
            n = Some(k);
            break;
        }
        power = model.mul(&power, &nu, ring);
    }
    let n = n.ok_or(Error::NoNilpotenceWithinBound { bound: max_exp })?;
    let mut series = one.clone();
    let mut term = one.clone();
    for _ in 0..n {
        term = model.mul(&term, &nu, ring);
        series = model.add(&series, &term, ring);
    }
    let inverse = model.mul(&beta, &series, ring);
    let verified = model.mul(&a, &inverse, ring) == one;
    if !verified {
        return Err(Error::AxiomViolation {
            triple: vec![],
            detail: "geometric series did not invert the element; the model is not a ring".into(),
        });
    }
    Ok(InversionReport {
        model: model.label.clone(),
        ring: ring.clone(),
        element: model.render(&a),
        rank: render_vec(&rank),
        beta: model.render(&beta),
        nu: model.render(&nu),
        nilpotence_exponent: n,
        inverse: model.render(&inverse),
        inverse_element: inverse,
        verified,
    })
}

/// Solution of `rank(beta) = target` supported on free generators, taken
/// from the reduced row echelon form with free variables set to zero.
fn rank_preimage(model: &K0RingModel, target: &[BigRational], ring: &CoefficientRing) -> Result<K0Element> {
    let q = Field::rationals();
    let g = model.free_rank;
    let rows: Vec<Vec<Scalar>> =
        model.rank_map.iter().map(|row| row[..g].iter().map(|c| Scalar::Q(rat(c))).collect()).collect();
    let m = Mat::from_rows(&q, rows);
    let rhs: Vec<Scalar> = target.iter().map(|t| Scalar::Q(t.clone())).collect();
    let sol = m
        .solve(&rhs)?
        .ok_or_else(|| Error::RankNotInvertible("no element has the required rank (rank map not surjective)".into()))?;
    let mut v: Vec<BigRational> = sol.iter().map(|s| q.to_rational(s).unwrap()).collect();
    v.resize(model.len(), BigRational::zero());
    model.normalize(v, ring).map_err(|_| {
        Error::RankNotInvertible(format!("the chosen element of rank 1/r has denominators outside {ring}"))
    })
}
