//! The center as a commutative subalgebra.

use crate::error::Result;
use crate::exactmath::mat::{echelon_rows, kernel_from_echelon, RowReducer};
use crate::exactmath::Scalar;

use super::{Algebra, Flags, GlobalDim, Vector};

#[derive(Clone, Debug)]
pub struct Center {
    /// The center with its own structure constants.
    pub algebra: Algebra,
    /// Basis of the center inside the parent algebra; the center's `i`-th
    /// basis element is `embedding[i]`.
    pub embedding: Vec<Vector>,
}

impl Center {
    pub fn dim(&self) -> usize {
        self.embedding.len()
    }

    /// Image in the parent of an element given in center coordinates.
    pub fn embed(&self, parent: &Algebra, x: &[Scalar]) -> Vector {
        let f = parent.field();
        let mut out = parent.zero_vec();
        for (c, b) in x.iter().zip(&self.embedding) {
            if !f.is_zero(c) {
                out = parent.add(&out, &parent.scale(c, b));
            }
        }
        out
    }
}

/// Basis (in `a`'s coordinates) of the centralizer of all basis elements.
pub fn center_basis(a: &Algebra) -> Vec<Vector> {
    let n = a.dim();
    let f = a.field();
    // x = sum x_k b_k commutes with b_i iff sum_k x_k (c[k][i] - c[i][k]) = 0
    let mut rows = Vec::new();
    for i in 0..n {
        let mut block = vec![vec![f.zero(); n]; n];
        for k in 0..n {
            for (l, c) in a.product_of(k, i) {
                block[*l][k] = f.add(&block[*l][k], c);
            }
            for (l, c) in a.product_of(i, k) {
                block[*l][k] = f.sub(&block[*l][k], c);
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !f.is_zero(x))));
    }
    let ech = echelon_rows(f, rows, n);
    let kernel = kernel_from_echelon(f, &ech, n);
    // put the unit first so the center's basis starts with 1
    let mut red = RowReducer::new(f, n);
    red.insert(a.unit().clone());
    let mut basis = vec![a.unit().clone()];
    for v in kernel {
        if red.insert(v.clone()) {
            basis.push(v);
        }
    }
    basis
}

pub fn center(a: &Algebra) -> Result<Center> {
    let basis = center_basis(a);
    let algebra = a.subalgebra(&basis, a.unit(), Flags::new(GlobalDim::Unknown, "center"), format!("Z({})", a.label()))?;
    Ok(Center { algebra, embedding: basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::algebra::ops::product;
    use crate::exactmath::{Field, Poly};

    #[test]
    fn centers() {
        let q = Field::rationals();
        assert_eq!(center(&matrix(&q, 3).unwrap()).unwrap().dim(), 1);
        let qq = product(&field_algebra(&q).unwrap(), &field_algebra(&q).unwrap()).unwrap();
        assert_eq!(center(&qq).unwrap().dim(), 2);
        let t = upper_triangular(&q, 2).unwrap();
        assert_eq!(center(&t).unwrap().dim(), 1);
        let c = poly_quotient(&q, &Poly::from_i64(&q, &[1, 0, 1])).unwrap();
        let z = center(&c).unwrap();
        assert_eq!(z.dim(), 2);
        z.algebra.validate().unwrap();
    }
}
