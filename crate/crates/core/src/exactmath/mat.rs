//! Dense matrices over a [`Field`] and the shared elimination core:
//! rank, kernel, solving and minimal polynomials.
//!
//! Over ℚ, dense inputs are eliminated fraction-free (Bareiss) on rows
//! scaled to integers; sparse inputs go through an incremental reduced
//! echelon builder, which touches only the nonzero pattern. Prime fields
//! use word-sized residues throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, FieldKind, Scalar};
use super::modular::{self, RANK_PRIMES};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form: `rows[k]` has a 1 in column `pivots[k]` and
/// zeros in every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<Scalar>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Mat { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Result<Mat> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, o.field)));
        }
        if self.cols != o.rows {
            return Err(Error::InvalidArgument(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !f.is_zero(b) {
                        let v = f.add(out.get(i, j), &f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument("vector length does not match column count".into()));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !f.is_zero(a) && !f.is_zero(b))
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn echelon(&self) -> Echelon {
        echelon_rows(&self.field, self.row_vecs(), self.cols)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.field.is_rationals() {
            // rank mod p never exceeds the rank over ℚ, so full rank mod p
            // is a certificate.
            if let Some(r) = rational_rank_mod_p(&self.row_vecs(), self.cols, RANK_PRIMES[0]) {
                if r == self.rows.min(self.cols) {
                    return r;
                }
            }
        }
        self.echelon().rank()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        kernel_from_echelon(&self.field, &self.echelon(), self.cols)
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is not in the
    /// column space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::InvalidArgument("right-hand side length mismatch".into()));
        }
        let rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let ech = echelon_rows(&self.field, rows, self.cols + 1);
        Ok(solution_from_echelon(&self.field, &ech, self.cols))
    }

    /// Monic polynomial of least degree annihilating a square matrix.
    pub fn min_poly(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("minimal polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut power = Mat::identity(&self.field, n);
        let mut dep = DependenceFinder::new(&self.field, n * n, n + 1);
        loop {
            if let Some(p) = dep.push(power.data.clone()) {
                return Ok(p);
            }
            power = power.mul(self)?;
        }
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(&a[r][c])) else {
                return Ok(f.zero());
            };
            if p != c {
                a.swap(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, &a[c][c]);
            let inv = f.inv(&a[c][c]);
            for r in c + 1..n {
                if f.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = f.mul(&a[r][c], &inv);
                for j in c..n {
                    let v = f.sub(&a[r][j], &f.mul(&factor, &a[c][j]));
                    a[r][j] = v;
                }
            }
        }
        Ok(det)
    }
}

/// Reduced echelon form of the given rows.
pub fn echelon_rows(f: &Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    match f.kind() {
        FieldKind::Prime(p) => echelon_mod_p(rows, cols, *p),
        FieldKind::Rationals => {
            let nnz = rows.iter().flatten().filter(|x| !f.is_zero(x)).count();
            let total = rows.len() * cols;
            if total > 0 && nnz * 2 > total && rows.len() > 4 {
                echelon_bareiss(rows, cols)
            } else {
                echelon_incremental(f, rows, cols)
            }
        }
        FieldKind::Extension { .. } => echelon_incremental(f, rows, cols),
    }
}

fn echelon_incremental(f: &Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    let mut red = RowReducer::new(f, cols);
    for r in rows {
        red.insert(r);
    }
    red.into_echelon()
}

fn echelon_mod_p(rows: Vec<Vec<Scalar>>, cols: usize, p: u64) -> Echelon {
    let mut a: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| match x {
                    Scalar::P(v) => v,
                    _ => unreachable!("prime field scalar expected"),
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = modular::inv_mod(a[r][c], p).unwrap();
        for x in a[r].iter_mut() {
            *x = modular::mul_mod(*x, inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let fct = row[c];
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = modular::sub_mod(row[j], modular::mul_mod(fct, pivot_row[j], p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        pivots,
        rows: a.into_iter().map(|row| row.into_iter().map(Scalar::P).collect()).collect(),
    }
}

fn scale_to_integers(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| match x {
        Scalar::Q(q) => acc.lcm(q.denom()),
        _ => unreachable!("rational scalar expected"),
    });
    row.iter()
        .map(|x| match x {
            Scalar::Q(q) => (q.numer() * &lcm) / q.denom(),
            _ => unreachable!(),
        })
        .collect()
}

/// Rank modulo `p` of a rational matrix (rows scaled to integers), or
/// `None` if some denominator vanishes mod p.
pub fn rational_rank_mod_p(rows: &[Vec<Scalar>], cols: usize, p: u64) -> Option<usize> {
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let ints = scale_to_integers(r);
        out.push(
            ints.iter()
                .map(|x| {
                    let m = x.mod_floor(&pb);
                    m.to_u64_digits().1.first().copied().unwrap_or(0)
                })
                .collect::<Vec<u64>>(),
        );
    }
    let _ = cols;
    Some(modular::dense_rank(out, p))
}

fn echelon_bareiss(rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| scale_to_integers(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let n = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(piv) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                let v = &prow[c] * &row[j] - &row[c] * &prow[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    // back-substitute to reduced form over ℚ
    let mut rr: Vec<Vec<BigRational>> = a[..r]
        .iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let lead = row[pc].clone();
            row.iter().map(|x| BigRational::new(x.clone(), lead.clone())).collect()
        })
        .collect();
    for k in (0..r).rev() {
        let pc = pivots[k];
        let (upper, lower) = rr.split_at_mut(k);
        let prow = &lower[0];
        for row in upper.iter_mut() {
            let fct = row[pc].clone();
            if fct.is_zero() {
                continue;
            }
            for j in pc..cols {
                if !prow[j].is_zero() {
                    row[j] = &row[j] - &fct * &prow[j];
                }
            }
        }
    }
    Echelon { pivots, rows: rr.into_iter().map(|row| row.into_iter().map(Scalar::Q).collect()).collect() }
}

pub fn kernel_from_echelon(f: &Field, ech: &Echelon, cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = f.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// Particular solution from the echelon form of an augmented matrix whose
/// last column (index `cols`) is the right-hand side.
pub fn solution_from_echelon(f: &Field, ech: &Echelon, cols: usize) -> Option<Vec<Scalar>> {
    if ech.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Incrementally maintained reduced echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(field: &Field, cols: usize) -> RowReducer {
        RowReducer { field: field.clone(), cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (j, x) in row.iter().enumerate() {
                if !f.is_zero(x) {
                    v[j] = f.sub(&v[j], &f.mul(&c, x));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(lead) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[lead]);
        for x in r.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[lead]) {
                continue;
            }
            let c = row[lead].clone();
            for (j, x) in r.iter().enumerate() {
                if !f.is_zero(x) {
                    row[j] = f.sub(&row[j], &f.mul(&c, x));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(lead);
        true
    }

    pub fn into_echelon(self) -> Echelon {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        Echelon {
            pivots: idx.iter().map(|&i| self.pivots[i]).collect(),
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.clone().into_echelon().rows
    }
}

/// Detects the first linear dependence in a sequence `v_0, v_1, ...` and
/// returns it as a monic polynomial `sum c_i x^i` with `sum c_i v_i = 0`.
pub struct DependenceFinder {
    field: Field,
    len: usize,
    max_terms: usize,
    reducer: RowReducer,
    count: usize,
}

impl DependenceFinder {
    pub fn new(field: &Field, len: usize, max_terms: usize) -> DependenceFinder {
        DependenceFinder {
            field: field.clone(),
            len,
            max_terms,
            reducer: RowReducer::new(field, len + max_terms),
            count: 0,
        }
    }

    pub fn push(&mut self, v: Vec<Scalar>) -> Option<Poly> {
        assert!(self.count < self.max_terms, "dependence search exceeded its bound");
        let f = &self.field;
        let mut aug = v;
        aug.resize(self.len + self.max_terms, f.zero());
        aug[self.len + self.count] = f.one();
        self.count += 1;
        let r = self.reducer.reduce(aug.clone());
        if r[..self.len].iter().all(|x| f.is_zero(x)) {
            let k = self.count - 1;
            let lead = r[self.len + k].clone();
            let coeffs: Vec<Scalar> = (0..=k).map(|i| f.div(&r[self.len + i], &lead)).collect();
            return Some(Poly::new(f, coeffs));
        }
        self.reducer.insert(aug);
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::rat;

    #[test]
    fn ranks() {
        let q = Field::rationals();
        assert_eq!(Mat::identity(&q, 3).rank(), 3);
        assert_eq!(Mat::from_i64(&q, &[&[1, 2], &[2, 4]]).rank(), 1);
        let f5 = Field::prime(5).unwrap();
        let k = Mat::from_i64(&f5, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![Scalar::P(4), Scalar::P(1)]]);
    }

    #[test]
    fn bareiss_matches_incremental() {
        let q = Field::rationals();
        let rows: Vec<Vec<Scalar>> = [[2, 3, 5, 7, 1], [1, 1, 2, 3, 0], [3, 4, 7, 10, 1], [0, 1, 1, 1, 5], [5, 7, 12, 17, 2], [1, 0, 0, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::Q(rat(x, 1))).collect())
            .collect();
        let a = echelon_bareiss(rows.clone(), 5);
        let b = echelon_incremental(&q, rows, 5);
        assert_eq!(a.pivots, b.pivots);
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn solve_and_inconsistent() {
        let q = Field::rationals();
        let m = Mat::from_i64(&q, &[&[1, 2], &[2, 4]]);
        let x = m.solve(&[q.from_i64(3), q.from_i64(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![q.from_i64(3), q.from_i64(6)]);
        assert!(m.solve(&[q.from_i64(1), q.from_i64(1)]).unwrap().is_none());
    }

    #[test]
    fn minimal_polynomials() {
        let q = Field::rationals();
        let companion = Mat::from_i64(&q, &[&[0, -1], &[1, 0]]);
        assert_eq!(companion.min_poly().unwrap(), Poly::from_i64(&q, &[1, 0, 1]));
        assert_eq!(Mat::identity(&q, 2).min_poly().unwrap(), Poly::from_i64(&q, &[-1, 1]));
        let jordan = Mat::from_i64(&q, &[&[0, 1], &[0, 0]]);
        assert_eq!(jordan.min_poly().unwrap(), Poly::from_i64(&q, &[0, 0, 1]));
    }

    #[test]
    fn determinant() {
        let q = Field::rationals();
        assert_eq!(Mat::from_i64(&q, &[&[2, 4], &[6, 8]]).det().unwrap(), q.from_i64(-8));
    }
}
