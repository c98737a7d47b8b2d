//! Opposite, tensor, product and quotient algebras.

use crate::error::{Error, Result};
use crate::exactmath::mat::RowReducer;
use crate::exactmath::Scalar;

use super::radical::is_semisimple;
use super::{Algebra, Flags, GlobalDim, IdealBasis, MAX_DIM};

fn same_field(a: &Algebra, b: &Algebra) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field().name(), b.field().name())));
    }
    Ok(())
}

pub fn opposite(a: &Algebra) -> Algebra {
    let n = a.dim();
    let table = (0..n * n).map(|idx| a.product_of(idx % n, idx / n).to_vec()).collect();
    Algebra::unchecked(a.field(), n, table, a.unit().clone(), a.flags().clone(), format!("{}^op", a.label()))
        .expect("opposite preserves shape")
}

/// `A (x) B` with basis `a_i (x) b_j` at index `i * dim(B) + j`. Finite
/// global dimension is asserted when both factors have it and one of
/// them is semisimple (hence separable: every supported field is perfect).
pub fn tensor(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    same_field(a, b)?;
    let f = a.field();
    let (n, m) = (a.dim(), b.dim());
    let dim = n * m;
    if dim > MAX_DIM {
        return Err(Error::DimensionCap(format!("tensor product has dimension {dim} > {MAX_DIM}")));
    }
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                for l in 0..m {
                    let mut out = Vec::new();
                    for (x, c) in a.product_of(i, k) {
                        for (y, d) in b.product_of(j, l) {
                            out.push((x * m + y, f.mul(c, d)));
                        }
                    }
                    table.push(out);
                }
            }
        }
    }
    let mut unit = vec![f.zero(); dim];
    for (i, c) in a.unit().iter().enumerate() {
        for (j, d) in b.unit().iter().enumerate() {
            unit[i * m + j] = f.mul(c, d);
        }
    }
    let both = a.flags().finite_global_dimension == GlobalDim::Yes && b.flags().finite_global_dimension == GlobalDim::Yes;
    let gldim = if both && (is_semisimple(a).unwrap_or(false) || is_semisimple(b).unwrap_or(false)) {
        GlobalDim::Yes
    } else {
        GlobalDim::Unknown
    };
    let label = format!("{} (x) {}", a.label(), b.label());
    Algebra::unchecked(f, dim, table, unit, Flags::new(gldim, "tensor"), label)
}

/// `A x B` with the basis of `A` followed by that of `B`.
pub fn product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    same_field(a, b)?;
    let f = a.field();
    let (n, m) = (a.dim(), b.dim());
    let dim = n + m;
    if dim > MAX_DIM {
        return Err(Error::DimensionCap(format!("product has dimension {dim} > {MAX_DIM}")));
    }
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            table[i * dim + j] = a.product_of(i, j).to_vec();
        }
    }
    for i in 0..m {
        for j in 0..m {
            table[(n + i) * dim + n + j] = b.product_of(i, j).iter().map(|(l, c)| (l + n, c.clone())).collect();
        }
    }
    let mut unit = a.unit().clone();
    unit.extend(b.unit().iter().cloned());
    let gldim = a.flags().finite_global_dimension.and(b.flags().finite_global_dimension);
    let label = format!("{} x {}", a.label(), b.label());
    Algebra::unchecked(f, dim, table, unit, Flags::new(gldim, "product"), label)
}

/// `A / I`. The basis is the images of the standard basis vectors at the
/// non-pivot positions of the echelonized ideal basis. The quotient's
/// global dimension is unknown unless the caller knows better.
pub fn quotient(a: &Algebra, ideal: &IdealBasis) -> Result<Algebra> {
    quotient_with_map(a, ideal).map(|(q, _)| q)
}

/// Quotient together with the projection matrix (rows indexed by quotient
/// coordinates, applied to vectors of `A`).
pub(crate) fn quotient_with_map(a: &Algebra, ideal: &IdealBasis) -> Result<(Algebra, Projection)> {
    if ideal.ambient_dim() != a.dim() {
        return Err(Error::NotAnIdeal("ideal belongs to an algebra of different dimension".into()));
    }
    if ideal.dim() == a.dim() {
        return Err(Error::NotAnIdeal("quotient by the whole algebra is the zero ring".into()));
    }
    let f = a.field();
    let mut red = RowReducer::new(f, a.dim());
    for v in ideal.basis() {
        red.insert(v.clone());
    }
    let pivots = red.clone().into_echelon().pivots;
    let keep: Vec<usize> = (0..a.dim()).filter(|i| !pivots.contains(i)).collect();
    let proj = Projection { reducer: red, keep };
    let k = proj.keep.len();
    let mut table = Vec::with_capacity(k * k);
    for &i in &proj.keep {
        for &j in &proj.keep {
            let v = a.mul(&a.basis_vec(i), &a.basis_vec(j));
            table.push(proj.apply(&v).into_iter().enumerate().collect());
        }
    }
    let unit = proj.apply(a.unit());
    let label = format!("{}/I", a.label());
    let q = Algebra::unchecked(f, k, table, unit, Flags::new(GlobalDim::Unknown, "quotient"), label)?;
    Ok((q, proj))
}

#[derive(Clone)]
pub(crate) struct Projection {
    reducer: RowReducer,
    keep: Vec<usize>,
}

impl Projection {
    pub(crate) fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reducer.reduce(v.to_vec());
        self.keep.iter().map(|&i| r[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::exactmath::Field;

    #[test]
    fn opposite_is_involution() {
        let q = Field::rationals();
        let t = upper_triangular(&q, 3).unwrap();
        let op = opposite(&t);
        op.validate().unwrap();
        assert!(opposite(&op).table_eq(&t));
    }

    #[test]
    fn tensor_with_field_is_identity() {
        let q = Field::rationals();
        let h = quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let t = tensor(&h, &field_algebra(&q).unwrap()).unwrap();
        assert!(t.table_eq(&h));
        let hh = tensor(&h, &h).unwrap();
        assert_eq!(hh.dim(), 16);
        hh.validate().unwrap();
    }

    #[test]
    fn quotient_of_upper_triangular() {
        let q = Field::rationals();
        let t = upper_triangular(&q, 2).unwrap();
        let j = IdealBasis::new(&t, vec![t.basis_vec(1)]).unwrap();
        let s = quotient(&t, &j).unwrap();
        s.validate().unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.is_commutative());
        let p = product(&field_algebra(&q).unwrap(), &field_algebra(&q).unwrap()).unwrap();
        assert!(s.table_eq(&p));
    }
}
