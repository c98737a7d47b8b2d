//! Separability idempotents and the central-simplicity test.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::mat::rational_rank_mod_p;
use crate::exactmath::modular::{self, RANK_PRIMES};
use crate::exactmath::{FieldKind, Mat, Scalar};

use super::center::center_basis;
use super::radical::is_semisimple;
use super::Algebra;

/// Largest dimension for which the separability idempotent is found by
/// solving the `dim^3`-equation linear system. Above it the answer comes
/// from semisimplicity, which is equivalent over perfect fields (all
/// supported fields are perfect) but carries no witness.
pub const SEPARABILITY_SYSTEM_CAP: usize = 16;

/// Largest dimension accepted by the central-simplicity test (the
/// enveloping map is a `dim^2 x dim^2` matrix).
pub const CENTRAL_SIMPLE_CAP: usize = 32;

#[derive(Clone, Debug)]
pub struct Separability {
    pub separable: bool,
    pub method: &'static str,
    /// Coefficients `w[i][j]` of `e = sum w[i][j] b_i (x) b_j`.
    pub witness: Option<Vec<Vec<Scalar>>>,
}

/// Searches for `e` in `A (x) A` with `m(e) = 1` and `(a (x) 1) e = e (1 (x) a)`
/// for every basis element `a`.
pub fn is_separable(a: &Algebra) -> Result<Separability> {
    let n = a.dim();
    if n > SEPARABILITY_SYSTEM_CAP {
        let s = is_semisimple(a)?;
        return Ok(Separability { separable: s, method: "semisimple-over-perfect-field", witness: None });
    }
    let f = a.field();
    let cols = n * n;
    let var = |i: usize, j: usize| i * n + j;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |eq: BTreeMap<usize, Scalar>, rhs: Scalar, rows: &mut Vec<Vec<Scalar>>| {
        let mut row = vec![f.zero(); cols + 1];
        for (k, v) in eq {
            row[k] = v;
        }
        row[cols] = rhs;
        if row.iter().all(|x| f.is_zero(x)) || !seen.insert(row.clone()) {
            return;
        }
        rows.push(row);
    };
    let add = |eq: &mut BTreeMap<usize, Scalar>, k: usize, v: Scalar| {
        let e = eq.entry(k).or_insert_with(|| f.zero());
        *e = f.add(e, &v);
    };
    // m(e) = 1
    for l in 0..n {
        let mut eq = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for (m, c) in a.product_of(i, j) {
                    if *m == l {
                        add(&mut eq, var(i, j), c.clone());
                    }
                }
            }
        }
        push(eq, a.unit()[l].clone(), &mut rows);
    }
    // coefficient of b_s (x) b_t in (b_k (x) 1) e - e (1 (x) b_k)
    for k in 0..n {
        let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for i in 0..n {
            for (s, c) in a.product_of(k, i) {
                for t in 0..n {
                    add(eqs.entry((*s, t)).or_default(), var(i, t), c.clone());
                }
            }
        }
        for s in 0..n {
            for j in 0..n {
                for (t, c) in a.product_of(j, k) {
                    add(eqs.entry((s, *t)).or_default(), var(s, j), f.neg(c));
                }
            }
        }
        for (_, eq) in eqs {
            let eq: BTreeMap<usize, Scalar> = eq.into_iter().filter(|(_, v)| !f.is_zero(v)).collect();
            push(eq, f.zero(), &mut rows);
        }
    }
    let m = Mat::from_rows(f, rows.iter().map(|r| r[..cols].to_vec()).collect());
    let rhs: Vec<Scalar> = rows.iter().map(|r| r[cols].clone()).collect();
    let sol = m.solve(&rhs)?;
    let witness = sol.map(|x| (0..n).map(|i| x[i * n..(i + 1) * n].to_vec()).collect::<Vec<_>>());
    if let Some(w) = &witness {
        debug_assert!(verify_separability_idempotent(a, w));
    }
    Ok(Separability { separable: witness.is_some(), method: "idempotent-system", witness })
}

/// Checks both defining identities exactly for `e = sum w[i][j] b_i (x) b_j`.
pub fn verify_separability_idempotent(a: &Algebra, w: &[Vec<Scalar>]) -> bool {
    let n = a.dim();
    let f = a.field();
    if w.len() != n || w.iter().any(|r| r.len() != n) {
        return false;
    }
    // m(e)
    let mut me = a.zero_vec();
    for i in 0..n {
        for j in 0..n {
            if !f.is_zero(&w[i][j]) {
                let p = a.mul(&a.basis_vec(i), &a.basis_vec(j));
                me = a.add(&me, &a.scale(&w[i][j], &p));
            }
        }
    }
    if &me != a.unit() {
        return false;
    }
    for k in 0..n {
        let bk = a.basis_vec(k);
        // tensors as n x n coefficient grids
        let mut lhs = vec![vec![f.zero(); n]; n];
        let mut rhs = vec![vec![f.zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if f.is_zero(&w[i][j]) {
                    continue;
                }
                let left = a.mul(&bk, &a.basis_vec(i));
                for (s, c) in left.iter().enumerate() {
                    lhs[s][j] = f.add(&lhs[s][j], &f.mul(c, &w[i][j]));
                }
                let right = a.mul(&a.basis_vec(j), &bk);
                for (t, c) in right.iter().enumerate() {
                    rhs[i][t] = f.add(&rhs[i][t], &f.mul(c, &w[i][j]));
                }
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralSimpleCheck {
    pub central_simple: bool,
    /// Rank of `A^op (x) A -> End_k(A)`, `a (x) b -> (x -> a x b)`.
    pub enveloping_rank: usize,
    pub expected_rank: usize,
    /// How the rank was certified.
    pub method: String,
}

/// Rank test of the enveloping map `A^op (x) A -> End_k(A)`.
pub fn is_central_simple(a: &Algebra) -> Result<CentralSimpleCheck> {
    let n = a.dim();
    if n > CENTRAL_SIMPLE_CAP {
        return Err(Error::DimensionCap(format!("central simplicity test is limited to dimension {CENTRAL_SIMPLE_CAP}")));
    }
    let f = a.field();
    let expected = n * n;
    // row (i, j) is the matrix of x -> b_i x b_j, flattened as [k * n + l]
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(expected);
    for i in 0..n {
        let left: Vec<Vec<Scalar>> = (0..n).map(|k| a.mul(&a.basis_vec(i), &a.basis_vec(k))).collect();
        for j in 0..n {
            let mut row = Vec::new();
            for (k, bik) in left.iter().enumerate() {
                for (l, c) in a.mul(bik, &a.basis_vec(j)).into_iter().enumerate() {
                    if !f.is_zero(&c) {
                        row.push((k * n + l, c));
                    }
                }
            }
            rows.push(row);
        }
    }
    let dense = |rows: &[Vec<(usize, Scalar)>]| -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| {
                let mut v = vec![f.zero(); expected];
                for (k, c) in r {
                    v[*k] = c.clone();
                }
                v
            })
            .collect()
    };
    let (rank, method) = match f.kind() {
        FieldKind::Prime(p) => {
            let sparse: Vec<Vec<(u32, u64)>> = rows
                .iter()
                .map(|r| r.iter().map(|(k, c)| (*k as u32, if let Scalar::P(x) = c { *x } else { 0 })).collect())
                .collect();
            (modular::sparse_rank(&sparse, *p), "exact mod p".to_string())
        }
        FieldKind::Rationals => {
            let d = dense(&rows);
            let best = RANK_PRIMES
                .iter()
                .filter_map(|&p| rational_rank_mod_p(&d, expected, p))
                .max()
                .unwrap_or(0);
            if best == expected {
                (best, "full rank modulo a prime".to_string())
            } else if n <= 16 {
                (Mat::from_rows(f, d).rank(), "exact rational elimination".to_string())
            } else {
                // A deficient rank modulo several large primes. Decide by
                // structure: the map is bijective iff the algebra is
                // central and semisimple.
                let central = center_basis(a).len() == 1;
                if central && is_semisimple(a)? {
                    (expected, "center and radical (modular ranks deficient)".to_string())
                } else {
                    (best, "modular rank; structurally not central simple".to_string())
                }
            }
        }
        FieldKind::Extension { .. } => (Mat::from_rows(f, dense(&rows)).rank(), "exact elimination".to_string()),
    };
    Ok(CentralSimpleCheck { central_simple: rank == expected, enveloping_rank: rank, expected_rank: expected, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::exactmath::{Field, Poly};

    #[test]
    fn separability() {
        let f3 = Field::prime(3).unwrap();
        let m = matrix(&f3, 2).unwrap();
        let s = is_separable(&m).unwrap();
        assert!(s.separable);
        assert!(verify_separability_idempotent(&m, s.witness.as_ref().unwrap()));
        // sum_i e_i1 (x) e_1i
        let mut w = vec![vec![f3.zero(); 4]; 4];
        w[0][0] = f3.one();
        w[2][1] = f3.one();
        assert!(verify_separability_idempotent(&m, &w));
        let q = Field::rationals();
        let c = poly_quotient(&q, &Poly::from_i64(&q, &[1, 0, 1])).unwrap();
        let s = is_separable(&c).unwrap();
        assert!(s.separable);
        // (1 (x) 1 - t (x) t) / 2
        let half = q.from_rational(&crate::exactmath::field::rat(1, 2)).unwrap();
        let w = vec![vec![half.clone(), q.zero()], vec![q.zero(), q.neg(&half)]];
        assert!(verify_separability_idempotent(&c, &w));
        let d = dual_numbers(&Field::prime(2).unwrap()).unwrap();
        assert!(!is_separable(&d).unwrap().separable);
    }

    #[test]
    fn central_simple() {
        let q = Field::rationals();
        assert!(is_central_simple(&matrix(&q, 3).unwrap()).unwrap().central_simple);
        let c = poly_quotient(&q, &Poly::from_i64(&q, &[1, 0, 1])).unwrap();
        assert!(!is_central_simple(&c).unwrap().central_simple);
        let w = is_central_simple(&weyl_fiber(2, 0, 0).unwrap()).unwrap();
        assert!(w.central_simple);
        assert_eq!(w.enveloping_rank, 16);
    }
}
