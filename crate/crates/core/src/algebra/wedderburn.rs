//! Wedderburn–Artin decomposition of the semisimple quotient.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::field::squarefree_part;
use crate::exactmath::mat::RowReducer;
use crate::exactmath::{is_irreducible, poly_factor, Factorization, Field, FieldKind, Mat, Poly, Scalar};

use super::center::center;
use super::ops::quotient;
use super::quaternion::{recognize, QuaternionData};
use super::radical::jacobson_radical;
use super::{Algebra, Coords, Flags, GlobalDim, Vector};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Bound on random trials in primitive-element and idempotent searches.
pub const MAX_TRIALS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Resolution {
    Resolved,
    Unresolved,
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    /// `n_i` in `M_{n_i}(D_i)`.
    pub matrix_size: Option<usize>,
    /// `e_i = dim_{Z_i} D_i`.
    pub division_degree_squared: Option<usize>,
    pub resolution: Resolution,
    /// Center as a field, presented by the minimal polynomial of a
    /// primitive element.
    pub center: String,
    pub center_minpoly: String,
    /// Isomorphism-invariant presentation where one is available.
    pub center_canonical: String,
    pub center_canonical_is_invariant: bool,
    pub center_degree: usize,
    pub component_dim: usize,
    /// `n_i^2 * e_i`.
    pub dim_over_center: usize,
    /// Dimension over the center of the smallest corner `fCf` found; `e_i`
    /// divides it.
    pub division_bound: usize,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quaternion: Option<QuaternionData>,
    #[serde(skip)]
    pub center_poly: Poly,
    #[serde(skip)]
    pub canonical_poly: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct WedderburnReport {
    pub field: String,
    pub dim: usize,
    pub radical_dim: usize,
    pub semisimple_dim: usize,
    pub components: Vec<Component>,
    pub seed: u64,
}

/// A simple component `e S e` of the semisimple quotient `S`.
#[derive(Clone, Debug)]
pub struct SimplePiece {
    /// The component in its own coordinates, with unit `e`.
    pub algebra: Algebra,
    /// Central primitive idempotent in the coordinates of `S`.
    pub idempotent: Vector,
    /// Minimal polynomial over the base field of a primitive element of
    /// the component's center.
    pub center_poly: Poly,
}

impl SimplePiece {
    pub fn center_degree(&self) -> usize {
        self.center_poly.degree().unwrap_or(1)
    }

    /// `dim` over the center.
    pub fn dim_over_center(&self) -> usize {
        self.algebra.dim() / self.center_degree()
    }
}

#[derive(Clone, Debug)]
pub struct Split {
    /// `A / J(A)`.
    pub semisimple: Algebra,
    pub radical_dim: usize,
    pub pieces: Vec<SimplePiece>,
}

/// `A / J(A)` split into simple components along the primitive central
/// idempotents.
pub fn semisimple_split(a: &Algebra, seed: u64) -> Result<Split> {
    let j = jacobson_radical(a)?;
    let semisimple = if j.is_zero() {
        a.clone()
    } else {
        quotient(a, &j)?.with_flags(Flags::new(GlobalDim::Yes, "semisimple quotient")).with_label(format!("{}/J", a.label()))
    };
    let z = center(&semisimple)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = split_commutative(&z.algebra, &mut rng)?;
    let f = a.field();
    let mut pieces = Vec::with_capacity(fields.len());
    if fields.len() == 1 {
        // already simple: keep the original coordinates
        let piece = fields.into_iter().next().unwrap();
        let algebra = semisimple.clone();
        let idempotent = algebra.unit().clone();
        pieces.push(SimplePiece { algebra, idempotent, center_poly: piece.minpoly });
        return Ok(Split { semisimple, radical_dim: j.dim(), pieces });
    }
    for piece in fields {
        let e = z.embed(&semisimple, &piece.idempotent);
        let mut red = RowReducer::new(f, semisimple.dim());
        for i in 0..semisimple.dim() {
            red.insert(semisimple.mul(&e, &semisimple.basis_vec(i)));
        }
        let basis = red.basis();
        let label = format!("{} component", semisimple.label());
        let algebra = semisimple.subalgebra(&basis, &e, Flags::new(GlobalDim::Yes, "simple component"), label)?;
        pieces.push(SimplePiece { algebra, idempotent: e, center_poly: piece.minpoly });
    }
    pieces.sort_by_cached_key(|p| {
        let (canon, _) = canonical_center(f, &p.center_poly).unwrap_or((p.center_poly.clone(), false));
        (p.center_degree(), p.algebra.dim(), canon.render(f, "t"))
    });
    Ok(Split { semisimple, radical_dim: j.dim(), pieces })
}

pub fn wedderburn(a: &Algebra, seed: u64) -> Result<WedderburnReport> {
    wedderburn_with_split(a, seed).map(|(r, _)| r)
}

pub fn wedderburn_with_split(a: &Algebra, seed: u64) -> Result<(WedderburnReport, Split)> {
    let split = semisimple_split(a, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let f = a.field();
    let mut components = Vec::new();
    for piece in &split.pieces {
        components.push(resolve(f, piece, &mut rng)?);
    }
    let report = WedderburnReport {
        field: f.name(),
        dim: a.dim(),
        radical_dim: split.radical_dim,
        semisimple_dim: split.semisimple.dim(),
        components,
        seed,
    };
    Ok((report, split))
}

/// Resolves a single simple component on its own.
pub fn resolve_piece(piece: &SimplePiece, seed: u64) -> Result<Component> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    resolve(piece.algebra.field(), piece, &mut rng)
}

fn field_name(k: &Field, p: &Poly) -> String {
    if p.degree() == Some(1) {
        k.name()
    } else {
        format!("{}[t]/({})", k.name(), p.render(k, "t"))
    }
}

fn resolve(k: &Field, piece: &SimplePiece, rng: &mut ChaCha8Rng) -> Result<Component> {
    let deg = piece.center_degree();
    let m = piece.dim_over_center();
    let root = m.sqrt();
    if root * root != m {
        return Err(Error::InvalidStructureConstants(format!(
            "simple component has dimension {m} over its center, not a square"
        )));
    }
    let (canonical, invariant) = canonical_center(k, &piece.center_poly)?;
    let mut c = Component {
        matrix_size: None,
        division_degree_squared: None,
        resolution: Resolution::Unresolved,
        center: field_name(k, &piece.center_poly),
        center_minpoly: piece.center_poly.render(k, "t"),
        center_canonical: field_name(k, &canonical),
        center_canonical_is_invariant: invariant,
        center_degree: deg,
        component_dim: piece.algebra.dim(),
        dim_over_center: m,
        division_bound: m,
        method: String::new(),
        quaternion: None,
        center_poly: piece.center_poly.clone(),
        canonical_poly: canonical,
    };
    let finish = |c: &mut Component, e: usize, method: &str| {
        c.division_degree_squared = Some(e);
        c.matrix_size = Some((m / e).sqrt());
        c.resolution = Resolution::Resolved;
        c.division_bound = e;
        c.method = method.to_string();
    };
    if m == 1 {
        finish(&mut c, 1, "field");
        return Ok(c);
    }
    if k.is_finite() {
        // finite division rings are commutative
        finish(&mut c, 1, "finite-field");
        return Ok(c);
    }
    if k.is_extension() {
        c.method = "unsupported-field".into();
        return Ok(c);
    }
    let alg = &piece.algebra;
    let mut idem = alg.unit().clone();
    let mut trials = 0;
    loop {
        let basis = corner_basis(alg, &idem);
        let s = basis.len() / deg;
        c.division_bound = s;
        if s == 1 {
            finish(&mut c, 1, "idempotent-search");
            return Ok(c);
        }
        if s == 4 && deg == 1 {
            let corner = alg.subalgebra(&basis, &idem, Flags::new(GlobalDim::Yes, "corner"), "corner")?;
            let data = recognize(&corner)?;
            let e = if data.split { 1 } else { 4 };
            finish(&mut c, e, "quaternion-recognition");
            c.quaternion = Some(data);
            return Ok(c);
        }
        match find_splitting_idempotent(k, alg, &idem, &basis, rng, &mut trials)? {
            Some(next) => idem = next,
            None => {
                c.method = format!("idempotent-search gave up after {trials} trials");
                return Ok(c);
            }
        }
    }
}

fn corner_basis(alg: &Algebra, f: &[Scalar]) -> Vec<Vector> {
    let mut red = RowReducer::new(alg.field(), alg.dim());
    for i in 0..alg.dim() {
        let fb = alg.mul(f, &alg.basis_vec(i));
        red.insert(alg.mul(&fb, f));
    }
    red.basis()
}

/// Looks for an element of the corner `fCf` whose minimal polynomial has
/// two coprime factors and returns the resulting idempotent with the
/// smallest corner.
fn find_splitting_idempotent(
    k: &Field,
    alg: &Algebra,
    f: &[Scalar],
    basis: &[Vector],
    rng: &mut ChaCha8Rng,
    trials: &mut usize,
) -> Result<Option<Vector>> {
    let mut candidate = 0usize;
    while *trials < MAX_TRIALS {
        *trials += 1;
        let x = if candidate < basis.len() {
            candidate += 1;
            basis[candidate - 1].clone()
        } else {
            let mut x = alg.zero_vec();
            for b in basis {
                let c = k.from_i64(rng.gen_range(-1..=1));
                x = alg.add(&x, &alg.scale(&c, b));
            }
            x
        };
        let mp = alg.minpoly_with_unit(&x, f);
        if mp.degree().unwrap_or(0) < 2 {
            continue;
        }
        let fac = poly_factor(k, &mp)?;
        if fac.factors.len() < 2 {
            continue;
        }
        let idems = crt_idempotents(alg, &x, f, &mp, &fac);
        let best = idems.into_iter().min_by_key(|e| corner_basis(alg, e).len());
        return Ok(best);
    }
    Ok(None)
}

/// Orthogonal idempotents `E_i(x)` from a coprime factorization of the
/// minimal polynomial of `x` inside the corner with unit `e`.
fn crt_idempotents(alg: &Algebra, x: &[Scalar], e: &[Scalar], mp: &Poly, fac: &Factorization) -> Vec<Vector> {
    let k = alg.field();
    fac.factors
        .iter()
        .map(|(g, mult)| {
            let mut big = Poly::one(k);
            for _ in 0..*mult {
                big = big.mul(k, g);
            }
            let (h, _) = mp.divrem(k, &big);
            let (_, s, _) = h.ext_gcd(k, &big);
            let idem = s.mul(k, &h).rem(k, mp);
            alg.eval_poly(&idem, x, e)
        })
        .collect()
}

struct FieldPiece {
    idempotent: Vector,
    minpoly: Poly,
}

/// Splits a commutative semisimple algebra into fields: primitive
/// idempotents together with the minimal polynomial of a primitive
/// element of each field factor.
fn split_commutative(z: &Algebra, rng: &mut ChaCha8Rng) -> Result<Vec<FieldPiece>> {
    let k = z.field();
    let mut todo = vec![z.unit().clone()];
    let mut out = Vec::new();
    while let Some(e) = todo.pop() {
        let mut red = RowReducer::new(k, z.dim());
        for i in 0..z.dim() {
            red.insert(z.mul(&e, &z.basis_vec(i)));
        }
        let basis = red.basis();
        if basis.len() == 1 {
            out.push(FieldPiece { minpoly: z.minpoly_with_unit(&e, &e), idempotent: e });
            continue;
        }
        match classify(z, &e, &basis, rng)? {
            Classified::Field(minpoly) => out.push(FieldPiece { idempotent: e, minpoly }),
            Classified::Split(parts) => todo.extend(parts.into_iter().rev()),
        }
    }
    Ok(out)
}

enum Classified {
    Field(Poly),
    Split(Vec<Vector>),
}

fn random_combination(z: &Algebra, basis: &[Vector], rng: &mut ChaCha8Rng) -> Vector {
    let k = z.field();
    let mut x = z.zero_vec();
    for b in basis {
        let c = match k.kind() {
            FieldKind::Rationals => k.from_i64(rng.gen_range(-3..=3)),
            _ => k.random(rng),
        };
        x = z.add(&x, &z.scale(&c, b));
    }
    x
}

fn classify(z: &Algebra, e: &[Scalar], basis: &[Vector], rng: &mut ChaCha8Rng) -> Result<Classified> {
    let k = z.field();
    let d = basis.len();
    match k.kind() {
        FieldKind::Rationals => {
            for t in 0..basis.len() + MAX_TRIALS {
                let x = if t < basis.len() { basis[t].clone() } else { random_combination(z, basis, rng) };
                let mp = z.minpoly_with_unit(&x, e);
                if mp.degree().unwrap_or(0) < 2 {
                    continue;
                }
                let fac = poly_factor(k, &mp)?;
                if fac.factors.len() >= 2 {
                    return Ok(Classified::Split(crt_idempotents(z, &x, e, &mp, &fac)));
                }
                if mp.degree() == Some(d) {
                    return Ok(Classified::Field(mp));
                }
            }
            Err(Error::ResourceGuard(format!("no primitive element found in {MAX_TRIALS} trials")))
        }
        FieldKind::Prime(_) | FieldKind::Extension { .. } if k.is_finite() => {
            // Berlekamp: the Frobenius-fixed elements form F_q^r with r the
            // number of field factors.
            let q = k.order().unwrap();
            let coords = Coords::new(k, basis)?;
            let mut cols = Vec::with_capacity(d);
            for (j, v) in basis.iter().enumerate() {
                let mut c = coords.coords(&z.pow(v, &q)).expect("Frobenius preserves the piece");
                c[j] = k.sub(&c[j], &k.one());
                cols.push(c);
            }
            let m = Mat::from_rows(k, (0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
            let fixed = m.kernel_basis();
            if fixed.len() == 1 {
                for t in 0..basis.len() + MAX_TRIALS {
                    let x = if t < basis.len() { basis[t].clone() } else { random_combination(z, basis, rng) };
                    let mp = z.minpoly_with_unit(&x, e);
                    if mp.degree() == Some(d) {
                        return Ok(Classified::Field(mp));
                    }
                }
                return Err(Error::ResourceGuard(format!("no primitive element found in {MAX_TRIALS} trials")));
            }
            let mut scalar = RowReducer::new(k, z.dim());
            scalar.insert(e.to_vec());
            for cvec in fixed {
                let mut x = z.zero_vec();
                for (c, b) in cvec.iter().zip(basis) {
                    x = z.add(&x, &z.scale(c, b));
                }
                if scalar.contains(&x) {
                    continue;
                }
                let mp = z.minpoly_with_unit(&x, e);
                let fac = poly_factor(k, &mp)?;
                debug_assert!(fac.factors.len() >= 2);
                return Ok(Classified::Split(crt_idempotents(z, &x, e, &mp, &fac)));
            }
            unreachable!("a fixed space of dimension >= 2 has a non-scalar element")
        }
        _ => Err(Error::UnsupportedField(format!("splitting centers over {}", k.name()))),
    }
}

/// Canonical defining polynomial of the field `k[t]/(p)`; the flag says
/// whether it is an isomorphism invariant. Degree one gives `t`;
/// quadratic fields over ℚ give `t^2 - D` with `D` squarefree; finite
/// fields give the first irreducible polynomial of the same degree in a
/// fixed enumeration. Higher degree over ℚ is only made monic with
/// integer coefficients.
pub fn canonical_center(k: &Field, p: &Poly) -> Result<(Poly, bool)> {
    let d = p.degree().unwrap_or(0);
    let p = p.monic(k);
    if d <= 1 {
        return Ok((Poly::x(k), true));
    }
    match k.kind() {
        FieldKind::Rationals if d == 2 => {
            let b = k.to_rational(&p.coeff(k, 1)).unwrap();
            let c = k.to_rational(&p.coeff(k, 0)).unwrap();
            let disc = &b * &b - BigRational::from_integer(BigInt::from(4)) * c;
            let dsf = squarefree_part(&(disc.numer() * disc.denom()));
            let canon = Poly::new(k, vec![Scalar::Q(BigRational::from_integer(-dsf)), k.zero(), k.one()]);
            Ok((canon, true))
        }
        FieldKind::Rationals => {
            let lcm = p
                .coeffs()
                .iter()
                .map(|c| k.to_rational(c).unwrap().denom().clone())
                .fold(BigInt::one(), |acc, den| num_integer::Integer::lcm(&acc, &den));
            let coeffs = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let scale = num_traits::pow(lcm.clone(), d - i);
                    Scalar::Q(k.to_rational(c).unwrap() * BigRational::from_integer(scale))
                })
                .collect();
            Ok((Poly::new(k, coeffs), false))
        }
        _ if k.is_finite() => {
            let q = k.order().unwrap();
            let limit: u64 = 1 << 20;
            for idx in 0..limit {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut rest = idx;
                for _ in 0..d {
                    let qq = num_traits::ToPrimitive::to_u64(&q).unwrap_or(u64::MAX);
                    coeffs.push(k.element_at(rest % qq));
                    rest /= qq;
                }
                if rest != 0 {
                    break;
                }
                coeffs.push(k.one());
                let cand = Poly::new(k, coeffs);
                if is_irreducible(k, &cand)? {
                    return Ok((cand, true));
                }
            }
            Ok((p, false))
        }
        _ => Ok((p, false)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::algebra::ops::{opposite, tensor};

    fn sizes(r: &WedderburnReport) -> Vec<(Option<usize>, Option<usize>, String)> {
        r.components.iter().map(|c| (c.matrix_size, c.division_degree_squared, c.center_canonical.clone())).collect()
    }

    #[test]
    fn matrix_and_group_algebras() {
        let q = Field::rationals();
        let r = wedderburn(&matrix(&q, 2).unwrap(), DEFAULT_SEED).unwrap();
        assert_eq!(sizes(&r), vec![(Some(2), Some(1), "Q".to_string())]);
        let r = wedderburn(&cyclic_group_algebra(&q, 3).unwrap(), DEFAULT_SEED).unwrap();
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.components[0].center, "Q");
        assert_eq!(r.components[1].center_canonical, "Q[t]/(t^2+3)");
        let f5 = Field::prime(5).unwrap();
        let r = wedderburn(&cyclic_group_algebra(&f5, 4).unwrap(), DEFAULT_SEED).unwrap();
        assert_eq!(r.components.len(), 4);
        assert!(r.components.iter().all(|c| c.matrix_size == Some(1) && c.center == "F_5"));
    }

    #[test]
    fn quaternions() {
        let q = Field::rationals();
        let h = quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let r = wedderburn(&h, DEFAULT_SEED).unwrap();
        assert_eq!(sizes(&r), vec![(Some(1), Some(4), "Q".to_string())]);
        let env = tensor(&opposite(&h), &h).unwrap();
        let r = wedderburn(&env, DEFAULT_SEED).unwrap();
        assert_eq!(sizes(&r), vec![(Some(4), Some(1), "Q".to_string())]);
        let m2h = tensor(&matrix(&q, 2).unwrap(), &h).unwrap();
        let r = wedderburn(&m2h, DEFAULT_SEED).unwrap();
        assert_eq!(sizes(&r), vec![(Some(2), Some(4), "Q".to_string())]);
    }

    #[test]
    fn finite_field_centers() {
        let f7 = Field::prime(7).unwrap();
        // F_7[t]/(t^2+1) is F_49
        let a = poly_quotient(&f7, &Poly::from_i64(&f7, &[1, 0, 1])).unwrap();
        let r = wedderburn(&a, DEFAULT_SEED).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].center_canonical, "F_7[t]/(t^2+1)");
        let f2 = Field::prime(2).unwrap();
        let r = wedderburn(&upper_triangular(&f2, 3).unwrap(), DEFAULT_SEED).unwrap();
        assert_eq!(r.radical_dim, 3);
        assert_eq!(r.components.len(), 3);
    }
}
