//! Quadratic forms, signed determinants and Clifford algebras.

use serde::Serialize;

use crate::algebra::wedderburn::{semisimple_split, wedderburn, WedderburnReport, DEFAULT_SEED};
use crate::algebra::{Algebra, Flags, GlobalDim, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{Field, Mat, Poly, Scalar};

/// Largest `n` accepted by the Clifford constructions (`2^6 = 64`).
pub const MAX_CLIFFORD_RANK: usize = 6;

/// A nondegenerate symmetric bilinear form over a field of characteristic
/// other than 2, given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    field: Field,
    gram: Mat,
}

#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub diag: Vec<Scalar>,
    /// Columns are the new basis vectors: `P^T G P = diag`.
    pub p: Mat,
}

impl QuadraticForm {
    pub fn new(field: &Field, gram: Mat) -> Result<QuadraticForm> {
        if field.characteristic() == 2 {
            return Err(Error::UnsupportedCharacteristic("quadratic forms need characteristic != 2".into()));
        }
        let n = gram.rows();
        if n == 0 || gram.cols() != n {
            return Err(Error::InvalidArgument("Gram matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(Error::InvalidArgument(format!("Gram matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        if field.is_zero(&gram.det()?) {
            return Err(Error::InvalidArgument("quadratic form is degenerate".into()));
        }
        Ok(QuadraticForm { field: field.clone(), gram })
    }

    /// The diagonal form `<d_1, ..., d_n>`.
    pub fn diagonal(field: &Field, diag: &[Scalar]) -> Result<QuadraticForm> {
        let n = diag.len();
        let mut g = Mat::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            g.set(i, i, d.clone());
        }
        QuadraticForm::new(field, g)
    }

    pub fn diagonal_i64(field: &Field, diag: &[i64]) -> Result<QuadraticForm> {
        let d: Vec<Scalar> = diag.iter().map(|&x| field.from_i64(x)).collect();
        QuadraticForm::diagonal(field, &d)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn render(&self) -> String {
        let f = &self.field;
        match self.diagonal_entries() {
            Some(d) => format!("<{}> over {}", d.iter().map(|x| f.render(x)).collect::<Vec<_>>().join(","), f.name()),
            None => format!("form of rank {} over {}", self.dim(), f.name()),
        }
    }

    fn diagonal_entries(&self) -> Option<Vec<Scalar>> {
        let n = self.dim();
        let f = &self.field;
        for i in 0..n {
            for j in 0..n {
                if i != j && !f.is_zero(self.gram.get(i, j)) {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.gram.get(i, i).clone()).collect())
    }

    /// Congruence diagonalization. Each diagonal entry is rescaled by a
    /// square to its canonical square-class representative when a square
    /// root is computable; the basis change is recorded in `p`.
    pub fn diagonalize(&self) -> Result<Diagonalization> {
        let f = &self.field;
        let n = self.dim();
        let mut g: Vec<Vec<Scalar>> = self.gram.row_vecs();
        // columns of p as vectors
        let mut basis: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vec(f, n, i)).collect();
        for i in 0..n {
            if f.is_zero(&g[i][i]) {
                if let Some(j) = (i + 1..n).find(|&j| !f.is_zero(&g[j][j])) {
                    swap_sym(&mut g, i, j);
                    basis.swap(i, j);
                } else if let Some(j) = (i + 1..n).find(|&j| !f.is_zero(&g[i][j])) {
                    // v_i <- v_i + v_j gives q(v_i) = 2 b(v_i, v_j) != 0
                    add_sym(f, &mut g, i, j, &f.one());
                    let vj = basis[j].clone();
                    basis[i] = add_vec(f, &basis[i], &vj, &f.one());
                }
            }
            if f.is_zero(&g[i][i]) {
                return Err(Error::InvalidArgument("quadratic form is degenerate".into()));
            }
            for j in i + 1..n {
                if f.is_zero(&g[i][j]) {
                    continue;
                }
                // v_j <- v_j - (b_ij / b_ii) v_i
                let c = f.neg(&f.div(&g[i][j], &g[i][i]));
                add_sym(f, &mut g, j, i, &c);
                let vi = basis[i].clone();
                basis[j] = add_vec(f, &basis[j], &vi, &c);
            }
        }
        let mut diag = Vec::with_capacity(n);
        for (i, v) in basis.iter_mut().enumerate() {
            let d = g[i][i].clone();
            let rep = f.square_class_rep(&d).ok();
            let scaled = rep.and_then(|r| {
                let s = f.sqrt(&f.div(&d, &r)).ok().flatten()?;
                Some((r, s))
            });
            match scaled {
                Some((r, s)) => {
                    let inv = f.inv(&s);
                    *v = v.iter().map(|x| f.mul(x, &inv)).collect();
                    diag.push(r);
                }
                None => diag.push(d),
            }
        }
        let p = Mat::from_rows(f, (0..n).map(|r| basis.iter().map(|v| v[r].clone()).collect()).collect());
        Ok(Diagonalization { diag, p })
    }

    /// `delta(q) = (-1)^{n(n-1)/2} det(q)`.
    pub fn signed_determinant(&self) -> Result<SignedDeterminant> {
        let f = &self.field;
        let n = self.dim();
        let det = self.gram.det()?;
        let sign = if (n * (n - 1) / 2) % 2 == 1 { f.neg(&f.one()) } else { f.one() };
        let delta = f.mul(&sign, &det);
        let rep = f.square_class_rep(&delta)?;
        Ok(SignedDeterminant { is_square: f.is_square(&delta)?, representative: f.render(&rep), value: rep })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignedDeterminant {
    pub representative: String,
    pub is_square: bool,
    #[serde(skip)]
    pub value: Scalar,
}

fn unit_vec(f: &Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

fn add_vec(f: &Field, x: &[Scalar], y: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| f.add(a, &f.mul(c, b))).collect()
}

fn swap_sym(g: &mut [Vec<Scalar>], i: usize, j: usize) {
    g.swap(i, j);
    for row in g.iter_mut() {
        row.swap(i, j);
    }
}

/// Congruence by `v_i <- v_i + c v_j`.
fn add_sym(f: &Field, g: &mut [Vec<Scalar>], i: usize, j: usize, c: &Scalar) {
    let n = g.len();
    let rj = g[j].clone();
    for (k, x) in g[i].iter_mut().enumerate() {
        *x = f.add(x, &f.mul(c, &rj[k]));
    }
    for row in g.iter_mut().take(n) {
        let v = f.add(&row[i], &f.mul(c, &row[j]));
        row[i] = v;
    }
}

/// Sign of `e_S e_T` relative to `e_{S xor T}` times the squares: the parity
/// of the number of pairs `i in S`, `j in T` with `i > j`.
fn clifford_sign(s: usize, t: usize) -> bool {
    let mut count = 0u32;
    let mut ss = s;
    while ss != 0 {
        let i = ss.trailing_zeros();
        ss &= ss - 1;
        count += (t & ((1usize << i) - 1)).count_ones();
    }
    count % 2 == 1
}

fn clifford_product(f: &Field, d: &[Scalar], s: usize, t: usize) -> Scalar {
    let mut c = f.one();
    let common = s & t;
    for (i, di) in d.iter().enumerate() {
        if common >> i & 1 == 1 {
            c = f.mul(&c, di);
        }
    }
    if clifford_sign(s, t) {
        f.neg(&c)
    } else {
        c
    }
}

fn clifford_on(q: &QuadraticForm, even: bool) -> Result<Algebra> {
    let n = q.dim();
    if n > MAX_CLIFFORD_RANK {
        return Err(Error::DimensionCap(format!("Clifford algebras are limited to n <= {MAX_CLIFFORD_RANK}")));
    }
    let f = q.field();
    let d = q.diagonalize()?.diag;
    let masks: Vec<usize> = (0..1usize << n).filter(|m| !even || m.count_ones() % 2 == 0).collect();
    let index = |m: usize| masks.binary_search(&m).unwrap();
    let dim = masks.len();
    let mut table = vec![Vec::new(); dim * dim];
    for (a, &s) in masks.iter().enumerate() {
        for (b, &t) in masks.iter().enumerate() {
            table[a * dim + b] = vec![(index(s ^ t), clifford_product(f, &d, s, t))];
        }
    }
    let mut unit: Vector = vec![f.zero(); dim];
    unit[0] = f.one();
    let name = if even { "C_0" } else { "C" };
    let label = format!("{name}({})", QuadraticForm::diagonal(f, &d)?.render());
    Algebra::new(f, dim, table, unit, Flags::new(GlobalDim::Yes, "clifford"), label)
}

/// `C(q)` on the monomial basis `e_S`, `S` a subset of `{1..n}` encoded as a
/// bitmask, after diagonalizing `q`.
pub fn clifford(q: &QuadraticForm) -> Result<Algebra> {
    clifford_on(q, false)
}

/// `C_0(q)`: the span of the even monomials, in increasing bitmask order.
pub fn even_clifford(q: &QuadraticForm) -> Result<Algebra> {
    clifford_on(q, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    #[serde(rename = "central-simple-over-k")]
    CentralSimple,
    #[serde(rename = "central-simple-over-k(sqrt(delta))")]
    CentralSimpleOverQuadratic,
    #[serde(rename = "product-of-two-central-simple")]
    ProductOfTwo,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordPrediction {
    pub n: usize,
    pub parity: &'static str,
    pub delta: SignedDeterminant,
    pub clifford: Shape,
    pub even_clifford: Shape,
    /// `t^2 - delta` when one of the algebras has the center `k(sqrt(delta))`.
    pub center_minpoly: Option<String>,
}

/// Expected structure of `C(q)` and `C_0(q)` from the parity of `n` and the
/// square class of `delta(q)`.
pub fn clifford_predict(q: &QuadraticForm) -> Result<CliffordPrediction> {
    let f = q.field();
    let delta = q.signed_determinant()?;
    let n = q.dim();
    let other = if delta.is_square { Shape::ProductOfTwo } else { Shape::CentralSimpleOverQuadratic };
    let (parity, clifford, even_clifford) =
        if n % 2 == 1 { ("odd", other, Shape::CentralSimple) } else { ("even", Shape::CentralSimple, other) };
    let center_minpoly =
        (!delta.is_square).then(|| Poly::new(f, vec![f.neg(&delta.value), f.zero(), f.one()]).render(f, "t"));
    Ok(CliffordPrediction { n, parity, delta, clifford, even_clifford, center_minpoly })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComputedStructure {
    pub dim: usize,
    pub radical_dim: usize,
    pub center_dim: usize,
    /// Dimensions and center degrees of the simple components.
    pub components: Vec<(usize, usize)>,
    /// For a quadratic center: whether it is `k(sqrt(delta))`.
    pub center_is_k_sqrt_delta: Option<bool>,
    pub shape: Option<Shape>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wedderburn: Option<WedderburnReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordVerification {
    pub form: String,
    pub prediction: CliffordPrediction,
    pub clifford: ComputedStructure,
    pub even_clifford: ComputedStructure,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Full Wedderburn reports are attached up to this dimension.
const REPORT_DIM: usize = 16;

fn computed(a: &Algebra, delta: &Scalar) -> Result<ComputedStructure> {
    let f = a.field();
    let split = semisimple_split(a, DEFAULT_SEED)?;
    let components: Vec<(usize, usize)> = split.pieces.iter().map(|p| (p.algebra.dim(), p.center_degree())).collect();
    let center_dim: usize = components.iter().map(|c| c.1).sum();
    let mut center_is_k_sqrt_delta = None;
    let shape = if split.radical_dim != 0 {
        None
    } else {
        match components.as_slice() {
            [(_, 1)] => Some(Shape::CentralSimple),
            [(_, 2)] => {
                // k[t]/(t^2 + b t + c) = k(sqrt(b^2 - 4c))
                let p = split.pieces[0].center_poly.monic(f);
                let (b, c) = (p.coeff(f, 1), p.coeff(f, 0));
                let disc = f.sub(&f.mul(&b, &b), &f.mul(&f.from_i64(4), &c));
                let same = f.is_square(&f.mul(&disc, delta))?;
                center_is_k_sqrt_delta = Some(same);
                same.then_some(Shape::CentralSimpleOverQuadratic)
            }
            [(d1, 1), (d2, 1)] if d1 == d2 => Some(Shape::ProductOfTwo),
            _ => None,
        }
    };
    let wedderburn = if a.dim() <= REPORT_DIM { Some(wedderburn(a, DEFAULT_SEED)?) } else { None };
    if let (Some(Shape::ProductOfTwo), Some(w)) = (shape, &wedderburn) {
        // the two factors must agree in matrix size and division part
        let c = &w.components;
        if c[0].matrix_size != c[1].matrix_size || c[0].division_degree_squared != c[1].division_degree_squared {
            return Ok(ComputedStructure {
                dim: a.dim(),
                radical_dim: split.radical_dim,
                center_dim,
                components,
                center_is_k_sqrt_delta,
                shape: None,
                wedderburn,
            });
        }
    }
    Ok(ComputedStructure {
        dim: a.dim(),
        radical_dim: split.radical_dim,
        center_dim,
        components,
        center_is_k_sqrt_delta,
        shape,
        wedderburn,
    })
}

/// Builds `C(q)` and `C_0(q)`, analyses both and compares with
/// [`clifford_predict`].
pub fn clifford_verify(q: &QuadraticForm) -> Result<CliffordVerification> {
    let prediction = clifford_predict(q)?;
    let c = computed(&clifford(q)?, &prediction.delta.value)?;
    let c0 = computed(&even_clifford(q)?, &prediction.delta.value)?;
    let matches = c.shape == Some(prediction.clifford) && c0.shape == Some(prediction.even_clifford);
    Ok(CliffordVerification { form: q.render(), prediction, clifford: c, even_clifford: c0, matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::quaternion;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn diagonalization() {
        let f = q();
        let h = QuadraticForm::new(&f, Mat::from_i64(&f, &[&[0, 1], &[1, 0]])).unwrap();
        let d = h.diagonalize().unwrap();
        assert_eq!(d.diag, vec![f.from_i64(2), f.from_i64(-2)]);
        // P^T G P is the reported diagonal
        let pt_g_p = d.p.transpose().mul(h.gram()).unwrap().mul(&d.p).unwrap();
        assert_eq!(pt_g_p.get(0, 0), &f.from_i64(2));
        assert_eq!(pt_g_p.get(1, 1), &f.from_i64(-2));
        assert!(f.is_zero(pt_g_p.get(0, 1)));
        let f5 = Field::prime(5).unwrap();
        let d = QuadraticForm::diagonal_i64(&f5, &[1, 1, 1]).unwrap().diagonalize().unwrap();
        assert_eq!(d.diag, vec![f5.one(); 3]);
        assert!(QuadraticForm::new(&f, Mat::from_i64(&f, &[&[1, 1], &[1, 1]])).is_err());
        assert!(QuadraticForm::diagonal_i64(&Field::prime(2).unwrap(), &[1]).is_err());
    }

    #[test]
    fn signed_determinants() {
        let f = q();
        let sd = |d: &[i64]| QuadraticForm::diagonal_i64(&f, d).unwrap().signed_determinant().unwrap();
        assert_eq!((sd(&[1, 1]).representative, sd(&[1, 1]).is_square), ("-1".to_string(), false));
        assert!(sd(&[1, -1]).is_square);
        assert_eq!(sd(&[1, 1, 1]).representative, "-1");
        assert_eq!(sd(&[2, 8]).representative, "-1");
    }

    #[test]
    fn clifford_tables() {
        let f = q();
        let c = clifford(&QuadraticForm::diagonal_i64(&f, &[1, 1]).unwrap()).unwrap();
        assert_eq!(c.dim(), 4);
        let e12 = c.basis_vec(3);
        assert_eq!(c.mul(&e12, &e12), c.scale(&f.from_i64(-1), c.unit()));
        let c0 = even_clifford(&QuadraticForm::diagonal_i64(&f, &[1, -1]).unwrap()).unwrap();
        assert_eq!(c0.dim(), 2);
        let x = c0.basis_vec(1);
        assert_eq!(c0.mul(&x, &x), c0.unit().clone());
        // C_0(<1,1,1>) with basis 1, e12, e13, e23 matches (-1,-1) with
        // i = e12, j = e13, k = -e23
        let c0 = even_clifford(&QuadraticForm::diagonal_i64(&f, &[1, 1, 1]).unwrap()).unwrap();
        let h = quaternion(&f, &f.from_i64(-1), &f.from_i64(-1)).unwrap();
        let sign = [1, 1, 1, -1];
        for a in 0..4 {
            for b in 0..4 {
                let lhs = c0.mul(&c0.basis_vec(a), &c0.basis_vec(b));
                let rhs = h.mul(&h.basis_vec(a), &h.basis_vec(b));
                for l in 0..4 {
                    let s = f.from_i64(sign[a] * sign[b] * sign[l]);
                    assert_eq!(lhs[l], f.mul(&s, &rhs[l]), "({a},{b})");
                }
            }
        }
    }

    #[test]
    fn predictions_and_verification() {
        let f = q();
        let form = |d: &[i64]| QuadraticForm::diagonal_i64(&f, d).unwrap();
        let p = clifford_predict(&form(&[1, 1, 1])).unwrap();
        assert_eq!((p.even_clifford, p.clifford), (Shape::CentralSimple, Shape::CentralSimpleOverQuadratic));
        let p = clifford_predict(&form(&[1, -1])).unwrap();
        assert_eq!((p.clifford, p.even_clifford), (Shape::CentralSimple, Shape::ProductOfTwo));
        let p = clifford_predict(&form(&[1, 1])).unwrap();
        assert_eq!(p.even_clifford, Shape::CentralSimpleOverQuadratic);

        let v = clifford_verify(&form(&[1, 1, 1])).unwrap();
        assert!(v.matches);
        let w = v.even_clifford.wedderburn.as_ref().unwrap();
        assert_eq!(w.components[0].division_degree_squared, Some(4));
        let v = clifford_verify(&form(&[1, -1])).unwrap();
        assert!(v.matches);
        assert_eq!(v.even_clifford.components, vec![(1, 1), (1, 1)]);
        let f7 = Field::prime(7).unwrap();
        let v = clifford_verify(&QuadraticForm::diagonal_i64(&f7, &[1, 1]).unwrap()).unwrap();
        assert!(v.matches);
        assert_eq!(v.even_clifford.wedderburn.as_ref().unwrap().components[0].center_canonical, "F_7[t]/(t^2+1)");
    }
}
