//! Hochschild homology dimensions from the normalized bar complex
//! `C_d = A (x) Abar^{(x) d}`, `Abar = A / k 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactmath::mat::RowReducer;
use crate::exactmath::modular::{sparse_rank, RANK_PRIMES};
use crate::exactmath::{Field, FieldKind, Mat, Scalar};

/// Default cap on `dim C_{max_degree}`.
pub const DEFAULT_MAX_CELLS: usize = 20_000;

/// Highest degree accepted by [`hh_dims`].
pub const MAX_HH_DEGREE: usize = 4;

/// Exact rational elimination is used as a fallback up to this many
/// matrix entries.
const EXACT_FALLBACK_ENTRIES: usize = 400_000;

/// The chain cap, overridable through `MOTIVECALC_MAX_CELLS`.
pub fn max_cells_from_env() -> usize {
    std::env::var("MOTIVECALC_MAX_CELLS").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_CELLS)
}

type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, Serialize)]
pub struct HHDims {
    pub algebra: String,
    pub field: String,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub chain_dims: Vec<usize>,
    /// `rank b_d` for `d = 1..=max_degree + 1`.
    pub boundary_ranks: Vec<usize>,
    /// Whether every rank is known exactly (always over finite fields;
    /// over ℚ by the bounds described in [`hh_dims`] or exact fallback).
    pub certified: bool,
    pub rank_method: String,
    /// `b_{d} b_{d+1} = 0` was checked on the assembled matrices.
    pub boundary_check: bool,
}

/// Coordinates in `Abar`: the basis of `A` without the unit pivot, and the
/// projection `x -> x - (x_piv / u_piv) 1`.
struct Bar<'a> {
    a: &'a Algebra,
    piv: usize,
    /// `Abar` index -> `A` index.
    lift: Vec<usize>,
    /// `A` index -> `Abar` index.
    index: Vec<Option<usize>>,
}

impl<'a> Bar<'a> {
    fn new(a: &'a Algebra) -> Bar<'a> {
        let piv = a.unit_pivot();
        let lift: Vec<usize> = (0..a.dim()).filter(|&i| i != piv).collect();
        let mut index = vec![None; a.dim()];
        for (k, &i) in lift.iter().enumerate() {
            index[i] = Some(k);
        }
        Bar { a, piv, lift, index }
    }

    /// Projection of the sparse vector `v` (in `A`) to `Abar`.
    fn project(&self, v: &[(usize, Scalar)]) -> SparseRow {
        let f = self.a.field();
        let u = self.a.unit();
        let lam = v.iter().find(|(l, _)| *l == self.piv).map(|(_, c)| f.div(c, &u[self.piv]));
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        for (l, c) in v {
            if let Some(k) = self.index[*l] {
                out.push((k, c.clone()));
            }
        }
        if let Some(lam) = lam {
            for (l, ul) in u.iter().enumerate() {
                if l != self.piv && !f.is_zero(ul) {
                    out.push((self.index[l].unwrap(), f.neg(&f.mul(&lam, ul))));
                }
            }
        }
        combine(f, out)
    }
}

fn combine(f: &Field, mut v: SparseRow) -> SparseRow {
    v.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d = f.add(d, &c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !f.is_zero(c));
    out
}

fn chain_dim(n: usize, d: usize) -> Option<usize> {
    (n - 1).checked_pow(d as u32).and_then(|x| x.checked_mul(n))
}

/// Mixed-radix tuple `(i0; i1..id)` with `i0 < n` and the rest `< n - 1`.
fn decode(mut idx: usize, n: usize, d: usize) -> Vec<usize> {
    let m = n - 1;
    let mut t = vec![0; d + 1];
    for k in (1..=d).rev() {
        t[k] = idx % m;
        idx /= m;
    }
    t[0] = idx;
    debug_assert!(t[0] < n);
    t
}

fn encode(t: &[usize], n: usize) -> usize {
    let m = n - 1;
    let _ = n;
    t[1..].iter().fold(t[0], |acc, &x| acc * m + x)
}

/// Rows of `b_d : C_d -> C_{d-1}`, one per basis element of `C_d`.
fn boundary(bar: &Bar, d: usize) -> Vec<SparseRow> {
    let a = bar.a;
    let f = a.field();
    let n = a.dim();
    let rows = chain_dim(n, d).unwrap();
    let minus = |c: &Scalar, sign: bool| if sign { f.neg(c) } else { c.clone() };
    (0..rows)
        .into_par_iter()
        .map(|idx| {
            let t = decode(idx, n, d);
            let mut out: SparseRow = Vec::new();
            // a0 a1 (x) a2 ... ad
            for (l, c) in a.product_of(t[0], bar.lift[t[1]]) {
                let mut s = Vec::with_capacity(d);
                s.push(*l);
                s.extend_from_slice(&t[2..]);
                out.push((encode(&s, n), c.clone()));
            }
            // (-1)^i a0 (x) ... (x) a_i a_{i+1} (x) ...
            for i in 1..d {
                let prod = bar.project(a.product_of(bar.lift[t[i]], bar.lift[t[i + 1]]));
                for (k, c) in prod {
                    let mut s = Vec::with_capacity(d);
                    s.extend_from_slice(&t[..i]);
                    s.push(k);
                    s.extend_from_slice(&t[i + 2..]);
                    out.push((encode(&s, n), minus(&c, i % 2 == 1)));
                }
            }
            // (-1)^d a_d a0 (x) a1 ... a_{d-1}
            for (l, c) in a.product_of(bar.lift[t[d]], t[0]) {
                let mut s = Vec::with_capacity(d);
                s.push(*l);
                s.extend_from_slice(&t[1..d]);
                out.push((encode(&s, n), minus(c, d % 2 == 1)));
            }
            combine(f, out)
        })
        .collect()
}

/// Applies the matrix with rows `m` (as a map on row vectors) to `v`.
fn apply(f: &Field, v: &SparseRow, m: &[SparseRow]) -> SparseRow {
    let mut out = Vec::new();
    for (i, c) in v {
        for (j, x) in &m[*i] {
            out.push((*j, f.mul(c, x)));
        }
    }
    combine(f, out)
}

fn to_mod_p(row: &SparseRow, p: u64) -> Option<Vec<(u32, u64)>> {
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(row.len());
    for (i, c) in row {
        let r = match c {
            Scalar::Q(q) => {
                let den = q.denom().mod_floor(&pb);
                if den.is_zero() {
                    return None;
                }
                let inv = den.modpow(&(&pb - 2u32), &pb);
                (q.numer() * inv).mod_floor(&pb)
            }
            Scalar::P(x) => BigInt::from(*x),
            Scalar::E(_) => return None,
        };
        out.push((*i as u32, r.to_u64().unwrap()));
    }
    Some(out)
}

/// Lower bound for the rank over ℚ: the largest rank modulo the
/// primes in [`RANK_PRIMES`].
fn modular_lower_bound(rows: &[SparseRow]) -> usize {
    RANK_PRIMES
        .par_iter()
        .filter_map(|&p| {
            let m: Option<Vec<_>> = rows.iter().map(|r| to_mod_p(r, p)).collect();
            m.map(|m| sparse_rank(&m, p))
        })
        .max()
        .unwrap_or(0)
}

fn exact_rank(f: &Field, rows: &[SparseRow], cols: usize) -> usize {
    let dense: Vec<Vec<Scalar>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut v = vec![f.zero(); cols];
            for (i, c) in r {
                v[*i] = c.clone();
            }
            v
        })
        .collect();
    if dense.is_empty() {
        return 0;
    }
    Mat::from_rows(f, dense).rank()
}

/// `dim HH_0 = dim A - dim [A, A]`.
pub fn hh0_dim(a: &Algebra) -> usize {
    let mut red = RowReducer::new(a.field(), a.dim());
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            red.insert(a.commutator(&a.basis_vec(i), &a.basis_vec(j)));
        }
    }
    a.dim() - red.rank()
}

/// Homology dimensions of the normalized bar complex up to `max_degree`.
///
/// Over F_p ranks are exact. Over ℚ each rank is bounded below by its
/// rank modulo large primes, and above by `dim C_d - rank b_d` since
/// `b_d b_{d+1} = 0`; `rank b_1` is exact (commutators). When the bounds
/// meet in every degree the result is certified; otherwise small
/// matrices are eliminated exactly and large ones are reported
/// uncertified.
pub fn hh_dims(a: &Algebra, max_degree: usize, max_cells: usize) -> Result<HHDims> {
    if max_degree > MAX_HH_DEGREE {
        return Err(Error::InvalidArgument(format!("max_degree {max_degree} exceeds {MAX_HH_DEGREE}")));
    }
    let n = a.dim();
    let f = a.field();
    let top = chain_dim(n, max_degree).unwrap_or(usize::MAX);
    if top > max_cells {
        return Err(Error::ResourceGuard(format!(
            "dim C_{max_degree} = {top} exceeds the chain cap {max_cells} (MOTIVECALC_MAX_CELLS)"
        )));
    }
    let chain_dims: Vec<usize> = (0..=max_degree + 1).map(|d| chain_dim(n, d).unwrap()).collect();
    if n == 1 {
        let mut dims = vec![0; max_degree + 1];
        dims[0] = 1;
        return Ok(HHDims {
            algebra: a.label().to_string(),
            field: f.name(),
            max_degree,
            dims,
            chain_dims,
            boundary_ranks: vec![0; max_degree + 1],
            certified: true,
            rank_method: "trivial".into(),
            boundary_check: true,
        });
    }
    let bar = Bar::new(a);
    let boundaries: Vec<Vec<SparseRow>> = (1..=max_degree + 1).map(|d| boundary(&bar, d)).collect();
    // b_d b_{d+1} = 0
    let check = boundaries.windows(2).all(|w| w[1].par_iter().all(|row| apply(f, row, &w[0]).is_empty()));
    if !check {
        return Err(Error::InvalidStructureConstants("bar boundary does not square to zero".into()));
    }
    let (ranks, certified, method) = match f.kind() {
        FieldKind::Prime(p) => {
            let ranks = boundaries
                .par_iter()
                .map(|rows| sparse_rank(&rows.iter().map(|r| to_mod_p(r, *p).unwrap()).collect::<Vec<_>>(), *p))
                .collect();
            (ranks, true, "exact sparse elimination mod p".to_string())
        }
        FieldKind::Rationals => rational_ranks(a, &boundaries, &chain_dims),
        FieldKind::Extension { .. } => {
            let mut ranks = Vec::new();
            for (d, rows) in boundaries.iter().enumerate() {
                if rows.len() * chain_dims[d] > EXACT_FALLBACK_ENTRIES {
                    return Err(Error::ResourceGuard("exact elimination over extension fields is limited".into()));
                }
                ranks.push(exact_rank(f, rows, chain_dims[d]));
            }
            (ranks, true, "exact elimination".to_string())
        }
    };
    let dims = (0..=max_degree)
        .map(|d| {
            let incoming = if d == 0 { 0 } else { ranks[d - 1] };
            chain_dims[d].saturating_sub(incoming + ranks[d])
        })
        .collect();
    Ok(HHDims {
        algebra: a.label().to_string(),
        field: f.name(),
        max_degree,
        dims,
        chain_dims,
        boundary_ranks: ranks,
        certified,
        rank_method: method,
        boundary_check: check,
    })
}

fn rational_ranks(a: &Algebra, boundaries: &[Vec<SparseRow>], chain_dims: &[usize]) -> (Vec<usize>, bool, String) {
    let f = a.field();
    let lower: Vec<usize> = boundaries.par_iter().map(|rows| modular_lower_bound(rows)).collect();
    let mut ranks = Vec::with_capacity(lower.len());
    let mut certified = true;
    let mut exact_used = false;
    // rank b_1 is exact
    let r1 = chain_dims[0] - hh0_dim(a);
    ranks.push(r1);
    for d in 1..boundaries.len() {
        // rank b_{d+1} <= dim C_d - rank b_d
        let upper = chain_dims[d] - ranks[d - 1];
        if lower[d] == upper {
            ranks.push(lower[d]);
            continue;
        }
        let entries = boundaries[d].len().saturating_mul(chain_dims[d]);
        if certified && entries <= EXACT_FALLBACK_ENTRIES {
            ranks.push(exact_rank(f, &boundaries[d], chain_dims[d]));
            exact_used = true;
        } else {
            certified = false;
            ranks.push(lower[d]);
        }
    }
    let method = match (certified, exact_used) {
        (true, false) => "modular lower bounds meeting the upper bound dim C_d - rank b_d",
        (true, true) => "modular bounds with exact rational elimination where they differ",
        (false, _) => "modular ranks (uncertified: bounds differ and the matrix is too large for exact elimination)",
    };
    (ranks, certified, method.to_string())
}

/// Componentwise sum of two dimension vectors.
pub fn add_dims(x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::algebra::ops::product;
    use crate::exactmath::Poly;

    fn hh(a: &Algebra, d: usize) -> Vec<usize> {
        hh_dims(a, d, DEFAULT_MAX_CELLS).unwrap().dims
    }

    #[test]
    fn small_algebras() {
        let q = Field::rationals();
        assert_eq!(hh(&field_algebra(&q).unwrap(), 3), vec![1, 0, 0, 0]);
        assert_eq!(hh(&matrix(&q, 2).unwrap(), 2), vec![1, 0, 0]);
        assert_eq!(hh(&upper_triangular(&q, 2).unwrap(), 2), vec![2, 0, 0]);
        let qq = product(&field_algebra(&q).unwrap(), &field_algebra(&q).unwrap()).unwrap();
        assert_eq!(hh(&qq, 2), vec![2, 0, 0]);
        assert_eq!(hh(&kronecker(&q).unwrap(), 2), vec![2, 0, 0]);
    }

    #[test]
    fn dual_numbers_have_homology_in_every_degree() {
        // HH_n(k[e]/e^2) over Q is 2 in degree 0 and 1 in each positive degree
        let q = Field::rationals();
        let r = hh_dims(&dual_numbers(&q).unwrap(), 4, DEFAULT_MAX_CELLS).unwrap();
        assert_eq!(r.dims, vec![2, 1, 1, 1, 1]);
        assert!(r.certified);
    }

    #[test]
    fn hh0_fast_path() {
        let q = Field::rationals();
        let h = quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        assert_eq!(hh0_dim(&h), 1);
        assert_eq!(hh0_dim(&matrix(&Field::prime(5).unwrap(), 2).unwrap()), 1);
        let c = poly_quotient(&q, &Poly::from_i64(&q, &[1, 0, 1])).unwrap();
        assert_eq!(hh0_dim(&c), 2);
        assert_eq!(hh(&h, 0), vec![1]);
    }

    #[test]
    fn resource_guard() {
        let q = Field::rationals();
        let m = matrix(&q, 3).unwrap();
        assert!(matches!(hh_dims(&m, 4, DEFAULT_MAX_CELLS), Err(Error::ResourceGuard(_))));
        assert!(hh_dims(&m, 5, usize::MAX).is_err());
    }
}
