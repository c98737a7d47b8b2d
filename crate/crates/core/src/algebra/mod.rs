//! Finite-dimensional unital associative algebras given by structure
//! constants, with constructors and structure analysis.

pub mod center;
pub mod construct;
pub mod ops;
pub mod prime;
pub mod quaternion;
pub mod radical;
pub mod separable;
pub mod units;
pub mod wedderburn;

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactmath::mat::{DependenceFinder, RowReducer};
use crate::exactmath::{Field, Mat, Poly, Scalar};

pub use center::{center, Center};
pub use construct::*;
pub use ops::{opposite, product, quotient, tensor};
pub use radical::{is_semisimple, jacobson_radical};
pub use separable::{is_central_simple, is_separable, verify_separability_idempotent, CentralSimpleCheck, Separability};
pub use units::unit_group_order;
pub use wedderburn::{wedderburn, Component, Resolution, WedderburnReport};

/// Hard cap on algebra dimension.
pub const MAX_DIM: usize = 64;

pub type Vector = Vec<Scalar>;

/// Whether the algebra is known to have finite global dimension. This is
/// asserted by constructors, never computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlobalDim {
    Yes,
    No,
    Unknown,
}

impl GlobalDim {
    pub fn as_str(self) -> &'static str {
        match self {
            GlobalDim::Yes => "yes",
            GlobalDim::No => "no",
            GlobalDim::Unknown => "unknown",
        }
    }

    pub fn and(self, o: GlobalDim) -> GlobalDim {
        match (self, o) {
            (GlobalDim::Yes, GlobalDim::Yes) => GlobalDim::Yes,
            (GlobalDim::No, _) | (_, GlobalDim::No) => GlobalDim::No,
            _ => GlobalDim::Unknown,
        }
    }
}

impl fmt::Display for GlobalDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flags {
    pub finite_global_dimension: GlobalDim,
    /// Which constructor (or user document) produced the algebra.
    pub provenance: String,
}

impl Flags {
    pub fn new(gldim: GlobalDim, provenance: impl Into<String>) -> Flags {
        Flags { finite_global_dimension: gldim, provenance: provenance.into() }
    }
}

/// Sparse structure constants: `table[i * dim + j]` lists `(l, c)` with
/// `b_i * b_j = sum c * b_l`, sorted by `l`, zero coefficients dropped.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Vector,
    flags: Flags,
    label: String,
}

impl Algebra {
    /// Builds and fully validates an algebra.
    pub fn new(
        field: &Field,
        dim: usize,
        table: Vec<Vec<(usize, Scalar)>>,
        unit: Vector,
        flags: Flags,
        label: impl Into<String>,
    ) -> Result<Algebra> {
        let a = Algebra::unchecked(field, dim, table, unit, flags, label)?;
        a.validate()?;
        Ok(a)
    }

    /// Builds from dense structure constants `dense[i][j][l]`.
    pub fn from_dense(
        field: &Field,
        dense: &[Vec<Vector>],
        unit: Vector,
        flags: Flags,
        label: impl Into<String>,
    ) -> Result<Algebra> {
        let dim = dense.len();
        let mut table = Vec::with_capacity(dim * dim);
        for (i, row) in dense.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidStructureConstants(format!("row {i} has {} entries, expected {dim}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::InvalidStructureConstants(format!(
                        "product ({i},{j}) has {} coordinates, expected {dim}",
                        v.len()
                    )));
                }
                table.push(v.iter().cloned().enumerate().collect());
            }
        }
        Algebra::new(field, dim, table, unit, flags, label)
    }

    /// Shape checks and normalization only; associativity and unit laws are
    /// the caller's responsibility (used for algebras derived from
    /// validated ones).
    pub(crate) fn unchecked(
        field: &Field,
        dim: usize,
        table: Vec<Vec<(usize, Scalar)>>,
        unit: Vector,
        flags: Flags,
        label: impl Into<String>,
    ) -> Result<Algebra> {
        if dim == 0 {
            return Err(Error::InvalidStructureConstants("dimension must be at least 1".into()));
        }
        if dim > MAX_DIM {
            return Err(Error::DimensionCap(format!("dimension {dim} exceeds the cap {MAX_DIM}")));
        }
        if table.len() != dim * dim {
            return Err(Error::InvalidStructureConstants(format!("expected {} products, got {}", dim * dim, table.len())));
        }
        if unit.len() != dim {
            return Err(Error::InvalidStructureConstants(format!("unit has {} coordinates, expected {dim}", unit.len())));
        }
        let mut norm = Vec::with_capacity(table.len());
        for entries in table {
            let mut dense: Vec<Option<Scalar>> = vec![None; dim];
            for (l, c) in entries {
                if l >= dim {
                    return Err(Error::InvalidStructureConstants(format!("basis index {l} out of range")));
                }
                let acc = match dense[l].take() {
                    Some(prev) => field.add(&prev, &c),
                    None => c,
                };
                dense[l] = Some(acc);
            }
            norm.push(
                dense
                    .into_iter()
                    .enumerate()
                    .filter_map(|(l, c)| c.filter(|c| !field.is_zero(c)).map(|c| (l, c)))
                    .collect(),
            );
        }
        Ok(Algebra { field: field.clone(), dim, table: norm, unit, flags, label: label.into() })
    }

    /// Checks associativity on every basis triple and the unit laws on
    /// every basis element.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        let f = &self.field;
        for i in 0..n {
            let b = self.basis_vec(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidStructureConstants(format!("unit law fails on basis element {i}")));
            }
        }
        let mut left = vec![f.zero(); n];
        let mut right = vec![f.zero(); n];
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i * n + j];
                for k in 0..n {
                    left.iter_mut().for_each(|x| *x = f.zero());
                    right.iter_mut().for_each(|x| *x = f.zero());
                    for (l, c) in ij {
                        for (m, d) in &self.table[l * n + k] {
                            left[*m] = f.add(&left[*m], &f.mul(c, d));
                        }
                    }
                    for (l, c) in &self.table[j * n + k] {
                        for (m, d) in &self.table[i * n + l] {
                            right[*m] = f.add(&right[*m], &f.mul(c, d));
                        }
                    }
                    if left != right {
                        return Err(Error::InvalidStructureConstants(format!(
                            "associativity fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn flags(&self) -> &Flags {
        &self.flags
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Algebra {
        self.label = label.into();
        self
    }

    pub fn with_flags(mut self, flags: Flags) -> Algebra {
        self.flags = flags;
        self
    }

    /// Sparse product `b_i * b_j`.
    pub fn product_of(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> Scalar {
        self.product_of(i, j)
            .iter()
            .find(|(m, _)| *m == l)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Dense structure constants `c[i][j][l]`.
    pub fn dense_table(&self) -> Vec<Vec<Vector>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.sparse_to_dense(self.product_of(i, j))).collect())
            .collect()
    }

    fn sparse_to_dense(&self, s: &[(usize, Scalar)]) -> Vector {
        let mut v = self.zero_vec();
        for (l, c) in s {
            v[*l] = c.clone();
        }
        v
    }

    pub fn zero_vec(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn is_zero_vec(&self, v: &[Scalar]) -> bool {
        v.iter().all(|x| self.field.is_zero(x))
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: &Scalar, x: &[Scalar]) -> Vector {
        x.iter().map(|a| self.field.mul(c, a)).collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = &self.field;
        let n = self.dim;
        let mut out = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (l, s) in &self.table[i * n + j] {
                    out[*l] = f.add(&out[*l], &f.mul(&c, s));
                }
            }
        }
        out
    }

    /// `x*y - y*x`
    pub fn commutator(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn pow(&self, x: &[Scalar], e: &BigUint) -> Vector {
        let mut acc = self.unit.clone();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    /// Matrix of `y -> x*y` in the basis (column `j` is `x * b_j`).
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(&self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(x, &self.basis_vec(j));
            for (l, c) in col.into_iter().enumerate() {
                m.set(l, j, c);
            }
        }
        m
    }

    /// `Tr(L_{b_i})` for every basis element.
    pub fn trace_vector(&self) -> Vector {
        let f = &self.field;
        (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(f.zero(), |acc, k| {
                    let c = self.product_of(i, k).iter().find(|(l, _)| *l == k).map(|(_, c)| c.clone());
                    match c {
                        Some(c) => f.add(&acc, &c),
                        None => acc,
                    }
                })
            })
            .collect()
    }

    /// Trace of left multiplication by `x`.
    pub fn trace(&self, x: &[Scalar]) -> Scalar {
        let f = &self.field;
        self.trace_vector().iter().zip(x).fold(f.zero(), |acc, (t, c)| f.add(&acc, &f.mul(t, c)))
    }

    /// Minimal polynomial of `x` over the base field.
    pub fn minpoly(&self, x: &[Scalar]) -> Poly {
        self.minpoly_with_unit(x, &self.unit)
    }

    /// Minimal polynomial of `x` inside a corner `e A e` whose unit is `e`.
    pub fn minpoly_with_unit(&self, x: &[Scalar], e: &[Scalar]) -> Poly {
        let mut dep = DependenceFinder::new(&self.field, self.dim, self.dim + 2);
        let mut power = e.to_vec();
        loop {
            if let Some(p) = dep.push(power.clone()) {
                return p;
            }
            power = self.mul(&power, x);
        }
    }

    /// `p(x)` with `x^0 = e`.
    pub fn eval_poly(&self, p: &Poly, x: &[Scalar], e: &[Scalar]) -> Vector {
        let mut acc = self.zero_vec();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scale(c, e));
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i + 1..n).all(|j| self.product_of(i, j) == self.product_of(j, i)))
    }

    /// Coordinate index where the unit vector is nonzero, preferring an
    /// index where it equals one.
    pub fn unit_pivot(&self) -> usize {
        let f = &self.field;
        self.unit
            .iter()
            .position(|c| f.is_one(c))
            .or_else(|| self.unit.iter().position(|c| !f.is_zero(c)))
            .expect("unit of a nonzero algebra is nonzero")
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        (0..self.dim).map(|_| self.field.random(rng)).collect()
    }

    /// Stable digest of field, structure constants and unit; two algebras
    /// with equal fingerprints have identical tables.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field.name().as_bytes());
        h.update(format!("|{}|", self.dim).as_bytes());
        for (idx, entries) in self.table.iter().enumerate() {
            for (l, c) in entries {
                h.update(format!("{idx}:{l}={};", self.field.render(c)).as_bytes());
            }
        }
        for c in &self.unit {
            h.update(self.field.render(c).as_bytes());
            h.update(b",");
        }
        let digest = h.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Same structure constants and unit (labels and flags ignored).
    pub fn table_eq(&self, o: &Algebra) -> bool {
        self.field == o.field && self.dim == o.dim && self.table == o.table && self.unit == o.unit
    }

    /// The subalgebra spanned by `basis` (linearly independent vectors,
    /// closed under multiplication) with unit `unit`, in the coordinates
    /// of `basis`.
    pub fn subalgebra(&self, basis: &[Vector], unit: &[Scalar], flags: Flags, label: impl Into<String>) -> Result<Algebra> {
        let coords = Coords::new(&self.field, basis)?;
        let k = basis.len();
        let mut table = Vec::with_capacity(k * k);
        for x in basis {
            for y in basis {
                let c = coords.coords(&self.mul(x, y)).ok_or_else(|| {
                    Error::InvalidStructureConstants("subspace is not closed under multiplication".into())
                })?;
                table.push(c.into_iter().enumerate().collect());
            }
        }
        let u = coords
            .coords(unit)
            .ok_or_else(|| Error::InvalidStructureConstants("unit does not lie in the subspace".into()))?;
        Algebra::unchecked(&self.field, k, table, u, flags, label)
    }
}

/// Two-sided ideal, stored as an echelonized basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ambient: usize,
    basis: Vec<Vector>,
}

impl IdealBasis {
    /// Verifies that the span of `vectors` is a two-sided ideal of `a`.
    pub fn new(a: &Algebra, vectors: Vec<Vector>) -> Result<IdealBasis> {
        if vectors.iter().any(|v| v.len() != a.dim()) {
            return Err(Error::NotAnIdeal("vector length differs from the algebra dimension".into()));
        }
        let mut red = RowReducer::new(a.field(), a.dim());
        for v in vectors {
            red.insert(v);
        }
        let ideal = IdealBasis { ambient: a.dim(), basis: red.basis() };
        for v in &ideal.basis {
            for i in 0..a.dim() {
                let b = a.basis_vec(i);
                if !red.contains(&a.mul(v, &b)) || !red.contains(&a.mul(&b, v)) {
                    return Err(Error::NotAnIdeal(format!("span is not closed under multiplication by basis element {i}")));
                }
            }
        }
        Ok(ideal)
    }

    pub(crate) fn trusted(a: &Algebra, vectors: Vec<Vector>) -> IdealBasis {
        let mut red = RowReducer::new(a.field(), a.dim());
        for v in vectors {
            red.insert(v);
        }
        IdealBasis { ambient: a.dim(), basis: red.basis() }
    }

    pub fn zero(a: &Algebra) -> IdealBasis {
        IdealBasis { ambient: a.dim(), basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether `I^k = 0` for some `k <= dim(A)`; returns the least such `k`.
    pub fn nilpotency_index(&self, a: &Algebra) -> Option<usize> {
        if self.basis.is_empty() {
            return Some(1);
        }
        let mut power = self.basis.clone();
        for k in 2..=a.dim() + 1 {
            let mut red = RowReducer::new(a.field(), a.dim());
            for x in &power {
                for y in &self.basis {
                    red.insert(a.mul(x, y));
                }
            }
            power = red.basis();
            if power.is_empty() {
                return Some(k);
            }
        }
        None
    }
}

/// Coordinates with respect to a list of independent vectors.
pub(crate) struct Coords {
    len: usize,
    k: usize,
    reducer: RowReducer,
    field: Field,
}

impl Coords {
    pub(crate) fn new(field: &Field, basis: &[Vector]) -> Result<Coords> {
        let len = basis.first().map_or(0, |v| v.len());
        let k = basis.len();
        let mut reducer = RowReducer::new(field, len + k);
        for (i, b) in basis.iter().enumerate() {
            let mut row = b.clone();
            row.resize(len + k, field.zero());
            row[len + i] = field.one();
            if !reducer.insert(row) {
                return Err(Error::InvalidArgument("basis vectors are linearly dependent".into()));
            }
        }
        Ok(Coords { len, k, reducer, field: field.clone() })
    }

    pub(crate) fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let mut row = v.to_vec();
        row.resize(self.len + self.k, self.field.zero());
        let r = self.reducer.reduce(row);
        if !r[..self.len].iter().all(|x| self.field.is_zero(x)) {
            return None;
        }
        Some(r[self.len..].iter().map(|x| self.field.neg(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn custom(q: &Field, dim: usize, products: &[(usize, usize, usize)]) -> Result<Algebra> {
        // b_0 is the unit; `products` lists b_i * b_j = b_l for i, j >= 1
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            table[i] = vec![(i, q.one())];
            table[i * dim] = vec![(i, q.one())];
        }
        for &(i, j, l) in products {
            table[i * dim + j] = vec![(l, q.one())];
        }
        let mut unit = vec![q.zero(); dim];
        unit[0] = q.one();
        Algebra::new(q, dim, table, unit, Flags::new(GlobalDim::Unknown, "custom"), "custom")
    }

    #[test]
    fn validation() {
        let q = Field::rationals();
        assert!(custom(&q, 2, &[(1, 1, 1)]).is_ok());
        // (b1 b1) b2 = 0 but b1 (b1 b2) = b2
        let bad = custom(&q, 3, &[(1, 1, 2), (1, 2, 1)]);
        assert!(matches!(bad, Err(Error::InvalidStructureConstants(m)) if m.contains("associativity")));
        let mut table = vec![vec![(1, q.one())], vec![(1, q.one())], vec![(1, q.one())], vec![(1, q.one())]];
        table[0] = vec![(1, q.one())];
        let bad = Algebra::new(&q, 2, table, vec![q.one(), q.zero()], Flags::new(GlobalDim::Unknown, "custom"), "bad");
        assert!(matches!(bad, Err(Error::InvalidStructureConstants(m)) if m.contains("unit")));
    }

    #[test]
    fn minpoly_and_ideal_checks() {
        let q = Field::rationals();
        let t = upper_triangular(&q, 2).unwrap();
        // basis e11, e12, e22
        let e12 = t.basis_vec(1);
        assert_eq!(t.minpoly(&e12), Poly::from_i64(&q, &[0, 0, 1]));
        let j = IdealBasis::new(&t, vec![e12.clone()]).unwrap();
        assert_eq!(j.nilpotency_index(&t), Some(2));
        assert!(IdealBasis::new(&t, vec![t.basis_vec(0)]).is_err());
    }
}
