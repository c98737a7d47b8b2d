//! Recognition of four-dimensional central simple algebras over ℚ and
//! Hilbert symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::mat::{echelon_rows, kernel_from_echelon};
use crate::exactmath::{modular, Scalar};

use super::{Algebra, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuaternionData {
    /// `i^2` for the chosen pure element `i`.
    pub a: String,
    /// `j^2` for a pure `j` anticommuting with `i`; absent when the
    /// algebra was already seen to be split from `a` alone.
    pub b: Option<String>,
    pub split: bool,
    /// Places where the Hilbert symbol `(a, b)` is -1 ("inf" or a prime).
    pub ramified: Vec<String>,
}

/// Scalar `c` with `x = c * 1`, if any.
fn as_scalar(alg: &Algebra, x: &[Scalar]) -> Option<Scalar> {
    let f = alg.field();
    let piv = alg.unit_pivot();
    let c = f.div(&x[piv], &alg.unit()[piv]);
    (alg.scale(&c, alg.unit()) == x).then_some(c)
}

/// Decides whether a four-dimensional central simple algebra over ℚ is a
/// division algebra by computing a quaternion presentation `(a, b)` and
/// its Hilbert symbols at infinity, 2 and the odd primes dividing `ab`.
pub fn recognize(alg: &Algebra) -> Result<QuaternionData> {
    let f = alg.field();
    if !f.is_rationals() || alg.dim() != 4 {
        return Err(Error::InvalidArgument("quaternion recognition needs a 4-dimensional algebra over Q".into()));
    }
    let tr = alg.trace_vector();
    let pure = kernel_from_echelon(f, &echelon_rows(f, vec![tr.clone()], 4), 4);
    let scalar_of = |x: &Vector| {
        as_scalar(alg, &alg.mul(x, x))
            .ok_or_else(|| Error::NotCentralSimple("a trace-zero element does not square to a scalar".into()))
    };
    let i = pure.first().cloned().ok_or_else(|| Error::NotCentralSimple("no trace-zero elements".into()))?;
    let a = scalar_of(&i)?;
    let ar = f.to_rational(&a).unwrap();
    if f.is_zero(&a) || f.is_square(&a)? {
        return Ok(QuaternionData { a: f.render(&a), b: None, split: true, ramified: Vec::new() });
    }
    // pure y with i y + y i = 0
    let rows: Vec<Vector> = {
        let images: Vec<Vector> = pure.iter().map(|y| alg.add(&alg.mul(&i, y), &alg.mul(y, &i))).collect();
        (0..4).map(|l| images.iter().map(|v| v[l].clone()).collect()).collect()
    };
    let sol = kernel_from_echelon(f, &echelon_rows(f, rows, pure.len()), pure.len());
    let coeffs = sol.first().ok_or_else(|| Error::NotCentralSimple("no element anticommutes with i".into()))?;
    let mut j = alg.zero_vec();
    for (c, y) in coeffs.iter().zip(&pure) {
        j = alg.add(&j, &alg.scale(c, y));
    }
    let b = scalar_of(&j)?;
    if f.is_zero(&b) {
        return Ok(QuaternionData { a: f.render(&a), b: Some(f.render(&b)), split: true, ramified: Vec::new() });
    }
    let br = f.to_rational(&b).unwrap();
    let ramified = ramified_places(&ar, &br)?;
    Ok(QuaternionData { a: f.render(&a), b: Some(f.render(&b)), split: ramified.is_empty(), ramified })
}

/// Integer in the same square class as a nonzero rational.
fn integral_class(q: &BigRational) -> BigInt {
    q.numer() * q.denom()
}

fn to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::UnsupportedField("Hilbert symbols are limited to 64-bit entries".into()))
}

fn valuation(mut n: i64, p: i64) -> (u32, i64) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Hilbert symbol `(a, b)_v` for nonzero integers; `p = None` is the real
/// place.
pub fn hilbert_symbol(a: i64, b: i64, p: Option<u64>) -> i32 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    match p {
        None => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Some(2) => {
            let (al, u) = valuation(a, 2);
            let (be, v) = valuation(b, 2);
            let eps = |x: i64| (x.mod_floor(&4) == 3) as u32;
            let omega = |x: i64| matches!(x.mod_floor(&8), 3 | 5) as u32;
            let e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Some(p) => {
            let pi = p as i64;
            let (al, u) = valuation(a, pi);
            let (be, v) = valuation(b, pi);
            let leg = |x: i64| -> i32 {
                let r = modular::pow_mod(x.mod_floor(&pi) as u64, (p - 1) / 2, p);
                if r == 1 {
                    1
                } else {
                    -1
                }
            };
            let mut s = if (al as u64 * be as u64 * ((p - 1) / 2)) % 2 == 1 { -1 } else { 1 };
            if be % 2 == 1 {
                s *= leg(u);
            }
            if al % 2 == 1 {
                s *= leg(v);
            }
            s
        }
    }
}

/// Places where the quaternion algebra `(a, b)_ℚ` ramifies.
pub fn ramified_places(a: &BigRational, b: &BigRational) -> Result<Vec<String>> {
    let (ai, bi) = (integral_class(a), integral_class(b));
    if ai.is_zero() || bi.is_zero() {
        return Err(Error::InvalidArgument("quaternion parameters must be nonzero".into()));
    }
    let (a, b) = (to_i64(&ai)?, to_i64(&bi)?);
    let mut primes = vec![2u64];
    for x in [a, b] {
        for q in modular::prime_factors(x.unsigned_abs()) {
            if !primes.contains(&q) {
                primes.push(q);
            }
        }
    }
    primes.sort_unstable();
    let mut out = Vec::new();
    if hilbert_symbol(a, b, None) == -1 {
        out.push("inf".to_string());
    }
    for q in primes {
        if hilbert_symbol(a, b, Some(q)) == -1 {
            out.push(q.to_string());
        }
    }
    Ok(out)
}

/// Whether `(a, b)_ℚ` is a matrix algebra.
pub fn is_split(a: &BigRational, b: &BigRational) -> Result<bool> {
    Ok(ramified_places(a, b)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::construct::*;
    use crate::exactmath::field::rat;
    use crate::exactmath::Field;

    #[test]
    fn hilbert_symbols() {
        assert_eq!(hilbert_symbol(-1, -1, None), -1);
        assert_eq!(hilbert_symbol(-1, -1, Some(2)), -1);
        assert_eq!(hilbert_symbol(-1, -1, Some(3)), 1);
        assert_eq!(hilbert_symbol(2, 3, Some(3)), -1);
        assert_eq!(hilbert_symbol(2, 3, Some(2)), -1);
        assert_eq!(hilbert_symbol(1, -7, Some(7)), 1);
        // product formula
        for (a, b) in [(-1, -1), (2, 3), (-3, 5), (6, -10), (7, 7)] {
            let places = [None, Some(2), Some(3), Some(5), Some(7)];
            let prod: i32 = places.iter().map(|&v| hilbert_symbol(a, b, v)).product();
            assert_eq!(prod, 1, "({a},{b})");
        }
    }

    #[test]
    fn recognition() {
        let q = Field::rationals();
        let h = quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let d = recognize(&h).unwrap();
        assert!(!d.split);
        assert_eq!(d.ramified, vec!["inf", "2"]);
        let m = matrix(&q, 2).unwrap();
        assert!(recognize(&m).unwrap().split);
        let s = quaternion(&q, &q.from_i64(1), &q.from_i64(-3)).unwrap();
        assert!(recognize(&s).unwrap().split);
        assert!(is_split(&rat(-1, 1), &rat(2, 1)).unwrap());
        assert!(!is_split(&rat(-1, 1), &rat(3, 1)).unwrap());
    }
}
