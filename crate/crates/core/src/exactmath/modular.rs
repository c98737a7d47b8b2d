//! Word-sized arithmetic modulo primes below 2^31, and the modular rank
//! kernels used for certified rank bounds.

use std::collections::HashMap;

/// Largest allowed characteristic (exclusive).
pub const PRIME_CAP: u64 = 1 << 31;

/// Primes just below 2^31 used for modular rank computations.
pub const RANK_PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579];

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    // a, b < 2^31 so the product fits in 62 bits.
    (a * b) % p
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    Some(pow_mod(a, p - 2, p))
}

/// Deterministic primality test for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulw = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let poww = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulw(r, b);
            }
            b = mulw(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = poww(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulw(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factors of `n` without multiplicity, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a nonresidue")
}

/// Square root modulo a prime (Tonelli–Shanks), if `a` is a residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = least_nonresidue(p);
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Rank of a dense matrix over F_p given as rows of residues.
pub fn dense_rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p).unwrap();
        for x in rows[rank][c..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of a sparse matrix over F_p, given as a list of sparse vectors
/// (index, residue). Vectors are reduced one at a time against pivots
/// keyed by their lowest index.
pub fn sparse_rank(vectors: &[Vec<(u32, u64)>], p: u64) -> usize {
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&i| vectors[i].len());
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut scratch: Vec<(u32, u64)> = Vec::new();
    for i in order {
        let mut v: Vec<(u32, u64)> = vectors[i].iter().copied().filter(|e| e.1 % p != 0).collect();
        v.sort_unstable_by_key(|e| e.0);
        v.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 = add_mod(a.1, b.1, p);
                true
            } else {
                false
            }
        });
        v.retain(|e| e.1 != 0);
        while let Some(&(lead, coeff)) = v.first() {
            let Some(piv) = pivots.get(&lead) else {
                break;
            };
            // v <- v - coeff * piv, where piv has leading coefficient 1
            scratch.clear();
            let (mut a, mut b) = (0, 0);
            while a < v.len() || b < piv.len() {
                if b == piv.len() || (a < v.len() && v[a].0 < piv[b].0) {
                    scratch.push(v[a]);
                    a += 1;
                } else if a == v.len() || piv[b].0 < v[a].0 {
                    scratch.push((piv[b].0, sub_mod(0, mul_mod(coeff, piv[b].1, p), p)));
                    b += 1;
                } else {
                    let val = sub_mod(v[a].1, mul_mod(coeff, piv[b].1, p), p);
                    if val != 0 {
                        scratch.push((v[a].0, val));
                    }
                    a += 1;
                    b += 1;
                }
            }
            std::mem::swap(&mut v, &mut scratch);
        }
        if let Some(&(lead, coeff)) = v.first() {
            let inv = inv_mod(coeff, p).unwrap();
            for e in v.iter_mut() {
                e.1 = mul_mod(e.1, inv, p);
            }
            pivots.insert(lead, v);
        }
    }
    pivots.len()
}
