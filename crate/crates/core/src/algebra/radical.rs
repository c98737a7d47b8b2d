//! Jacobson radical.

use crate::error::{Error, Result};
use crate::exactmath::mat::{echelon_rows, kernel_from_echelon};
use crate::exactmath::FieldKind;

use super::prime::PrimeAlgebra;
use super::{Algebra, IdealBasis};

/// The Jacobson radical. Characteristic 0 and characteristic `p > dim`
/// use the kernel of the trace form `(x, y) -> Tr(L_{xy})`; finite fields
/// of small characteristic use iterated p-power traces over the prime
/// field.
pub fn jacobson_radical(a: &Algebra) -> Result<IdealBasis> {
    let f = a.field();
    let p = f.characteristic();
    if p == 0 || p > a.dim() as u64 {
        return Ok(IdealBasis::trusted(a, trace_form_kernel(a)));
    }
    match f.kind() {
        FieldKind::Prime(_) | FieldKind::Extension { .. } => {
            let pa = PrimeAlgebra::restrict(a);
            let rad = pa.radical();
            Ok(IdealBasis::trusted(a, rad.iter().map(|v| pa.lift_to(a, v)).collect()))
        }
        FieldKind::Rationals => Err(Error::UnsupportedCharacteristic("no radical algorithm applies".into())),
    }
}

fn trace_form_kernel(a: &Algebra) -> Vec<Vec<crate::exactmath::Scalar>> {
    let f = a.field();
    let n = a.dim();
    let tr = a.trace_vector();
    let rows: Vec<_> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    a.product_of(i, j).iter().fold(f.zero(), |acc, (l, c)| f.add(&acc, &f.mul(c, &tr[*l])))
                })
                .collect()
        })
        .collect();
    let ech = echelon_rows(f, rows, n);
    kernel_from_echelon(f, &ech, n)
}

pub fn is_semisimple(a: &Algebra) -> Result<bool> {
    Ok(jacobson_radical(a)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::algebra::ops::quotient;
    use crate::exactmath::Field;

    #[test]
    fn radicals() {
        let q = Field::rationals();
        let t = upper_triangular(&q, 2).unwrap();
        let j = jacobson_radical(&t).unwrap();
        assert_eq!(j.basis(), &[t.basis_vec(1)]);
        assert!(jacobson_radical(&matrix(&q, 2).unwrap()).unwrap().is_zero());
        let f2 = Field::prime(2).unwrap();
        let d = dual_numbers(&f2).unwrap();
        assert_eq!(jacobson_radical(&d).unwrap().basis(), &[d.basis_vec(1)]);
        let k = kronecker(&q).unwrap();
        let jk = jacobson_radical(&k).unwrap();
        assert_eq!(jk.dim(), 2);
        assert!(jacobson_radical(&quotient(&k, &jk).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn weyl_is_semisimple_in_small_characteristic() {
        for p in [2, 3, 5] {
            assert!(is_semisimple(&weyl_fiber(p, 0, 0).unwrap()).unwrap(), "p = {p}");
        }
        let f2 = Field::prime(2).unwrap();
        let m = matrix(&f2, 3).unwrap();
        assert!(is_semisimple(&m).unwrap());
        let t = triangular_t(&m).unwrap();
        assert_eq!(jacobson_radical(&t).unwrap().dim(), 9);
    }
}
