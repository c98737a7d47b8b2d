//! Algebras over finite fields viewed over their prime field, with dense
//! word-sized structure constants.

use crate::exactmath::modular::{self, add_mod, mul_mod};
use crate::exactmath::{FieldKind, Scalar};

use super::{Algebra, Vector};

pub(crate) struct PrimeAlgebra {
    pub p: u64,
    pub n: usize,
    /// Extension degree of the original field over F_p.
    pub d: usize,
    /// `c[(i * n + j) * n + l]`
    c: Vec<u64>,
}

impl PrimeAlgebra {
    /// Restriction of scalars to the prime field. Basis element `b_i t^s`
    /// of the original algebra sits at index `i * d + s`.
    pub fn restrict(a: &Algebra) -> PrimeAlgebra {
        let f = a.field();
        let p = f.characteristic();
        assert!(p != 0, "restriction of scalars needs a finite field");
        let d = f.degree();
        let n = a.dim() * d;
        let mut c = vec![0u64; n * n * n];
        let gen = f.generator();
        let tpow = |e: usize| -> Scalar {
            match &gen {
                Some(g) => f.pow(g, e as u64),
                None => f.one(),
            }
        };
        let powers: Vec<Scalar> = (0..2 * d).map(tpow).collect();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for (l, coeff) in a.product_of(i, j) {
                    for s in 0..d {
                        for r in 0..d {
                            let v = f.mul(coeff, &powers[s + r]);
                            let row = (i * d + s) * n + (j * d + r);
                            for (u, x) in prime_coords(&v, d).into_iter().enumerate() {
                                if x != 0 {
                                    c[row * n + l * d + u] = x;
                                }
                            }
                        }
                    }
                }
            }
        }
        PrimeAlgebra { p, n, d, c }
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let (n, p) = (self.n, self.p);
        let mut out = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let s = mul_mod(xi, yj, p);
                let base = (i * n + j) * n;
                for l in 0..n {
                    let cl = self.c[base + l];
                    if cl != 0 {
                        out[l] = add_mod(out[l], mul_mod(s, cl, p), p);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x`, row-major, entries in `[0, p)`.
    pub fn left_matrix(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let (n, p) = (self.n, self.p);
        let mut m = vec![vec![0u64; n]; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..n {
                let base = (i * n + j) * n;
                for l in 0..n {
                    let cl = self.c[base + l];
                    if cl != 0 {
                        m[l][j] = add_mod(m[l][j], mul_mod(xi, cl, p), p);
                    }
                }
            }
        }
        m
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        v[i] = 1;
        v
    }

    /// Converts a prime-field vector back to the original field.
    pub fn lift_to(&self, a: &Algebra, v: &[u64]) -> Vector {
        let f = a.field();
        (0..a.dim())
            .map(|i| match f.kind() {
                FieldKind::Prime(_) => Scalar::P(v[i]),
                _ => Scalar::E((0..self.d).map(|s| Scalar::P(v[i * self.d + s])).collect()),
            })
            .collect()
    }

    /// Jacobson radical by iterated p-power traces: with `I_{-1} = A`,
    /// `I_i = { x in I_{i-1} : g_i(x y) = 0 for all y }` where
    /// `g_i(x) = Tr(L~_x^{p^i}) / p^i mod p` for an integer lift `L~_x`, and
    /// the radical is `I_l` with `l = floor(log_p n)`.
    pub fn radical(&self) -> Vec<Vec<u64>> {
        let (n, p) = (self.n, self.p);
        let mut ideal: Vec<Vec<u64>> = (0..n).map(|i| self.basis_vec(i)).collect();
        let mut level = 0u32;
        let mut pi = 1u128; // p^level
        while pi <= n as u128 {
            if ideal.is_empty() {
                break;
            }
            let modulus = pi * p as u128;
            let mut rows = Vec::with_capacity(n);
            for k in 0..n {
                let y = self.basis_vec(k);
                let row: Vec<u64> = ideal
                    .iter()
                    .map(|x| {
                        let z = self.mul(x, &y);
                        let m = self.left_matrix(&z);
                        let t = trace_of_power(&m, pi, modulus);
                        debug_assert!(t.is_multiple_of(pi), "p-power trace not divisible at level {level}");
                        ((t / pi) % p as u128) as u64
                    })
                    .collect();
                rows.push(row);
            }
            let kernel = kernel_mod_p(rows, ideal.len(), p);
            ideal = kernel
                .iter()
                .map(|coeffs| {
                    let mut v = vec![0u64; n];
                    for (c, x) in coeffs.iter().zip(&ideal) {
                        if *c != 0 {
                            for (vi, xi) in v.iter_mut().zip(x) {
                                *vi = add_mod(*vi, mul_mod(*c, *xi, p), p);
                            }
                        }
                    }
                    v
                })
                .collect();
            level += 1;
            pi *= p as u128;
        }
        ideal
    }

    /// Whether `x` is invertible (its left multiplication is bijective).
    pub fn is_unit(&self, x: &[u64]) -> bool {
        modular::dense_rank(self.left_matrix(x), self.p) == self.n
    }
}

fn prime_coords(v: &Scalar, d: usize) -> Vec<u64> {
    match v {
        Scalar::P(x) => {
            let mut out = vec![0u64; d];
            out[0] = *x;
            out
        }
        Scalar::E(cs) => cs
            .iter()
            .map(|c| match c {
                Scalar::P(x) => *x,
                _ => unreachable!("finite extension over a prime field"),
            })
            .collect(),
        Scalar::Q(_) => unreachable!("rational scalar in a finite field"),
    }
}

fn mat_mul_mod(a: &[Vec<u128>], b: &[Vec<u128>], m: u128) -> Vec<Vec<u128>> {
    let n = a.len();
    let mut out = vec![vec![0u128; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = (out[i][j] + aik * b[k][j]) % m;
            }
        }
    }
    out
}

/// `Tr(M^e) mod m` over the integers.
fn trace_of_power(mat: &[Vec<u64>], e: u128, m: u128) -> u128 {
    let n = mat.len();
    let base: Vec<Vec<u128>> = mat.iter().map(|r| r.iter().map(|&x| x as u128 % m).collect()).collect();
    let mut acc: Option<Vec<Vec<u128>>> = None;
    let mut sq = base;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => mat_mul_mod(&a, &sq, m),
            });
        }
        e >>= 1;
        if e > 0 {
            sq = mat_mul_mod(&sq, &sq, m);
        }
    }
    let acc = acc.expect("exponent is positive");
    (0..n).fold(0u128, |t, i| (t + acc[i][i]) % m)
}

/// Basis of `{ c : rows * c = 0 }` over F_p.
pub(crate) fn kernel_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = modular::inv_mod(rows[r][c], p).unwrap();
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let fct = rows[i][c];
                for j in 0..cols {
                    let v = mul_mod(fct, rows[r][j], p);
                    rows[i][j] = modular::sub_mod(rows[i][j], v, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = modular::sub_mod(0, rows[i][fc], p);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::exactmath::{Field, Poly};

    #[test]
    fn restriction_keeps_dimension() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::extension(&f2, Poly::from_i64(&f2, &[1, 1, 1])).unwrap();
        let d = dual_numbers(&f4).unwrap();
        let r = PrimeAlgebra::restrict(&d);
        assert_eq!(r.n, 4);
        let rad = r.radical();
        assert_eq!(rad.len(), 2);
    }

    #[test]
    fn radical_of_group_algebra_in_char_p() {
        // F_3[C_3] = F_3[g]/(g-1)^3, radical (g-1) of dimension 2
        let f3 = Field::prime(3).unwrap();
        let a = cyclic_group_algebra(&f3, 3).unwrap();
        assert_eq!(PrimeAlgebra::restrict(&a).radical().len(), 2);
        let m = matrix(&Field::prime(2).unwrap(), 2).unwrap();
        assert!(PrimeAlgebra::restrict(&m).radical().is_empty());
    }
}
