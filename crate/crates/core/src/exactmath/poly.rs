//! Dense univariate polynomials over a [`Field`], coefficients stored
//! lowest degree first with no trailing zeros.

use num_bigint::BigUint;
use num_traits::Signed;

use super::field::{render_rational, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(f: &Field, coeffs: Vec<Scalar>) -> Poly {
        Poly { coeffs }.trimmed(f)
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(f: &Field, c: Scalar) -> Poly {
        Poly::new(f, vec![c])
    }

    pub fn one(f: &Field) -> Poly {
        Poly::constant(f, f.one())
    }

    /// The indeterminate.
    pub fn x(f: &Field) -> Poly {
        Poly { coeffs: vec![f.zero(), f.one()] }
    }

    pub fn from_i64(f: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(f, coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn trimmed(mut self, f: &Field) -> Poly {
        while self.coeffs.last().is_some_and(|c| f.is_zero(c)) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn coeff(&self, f: &Field, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(f, i), &o.coeff(f, i))).collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(f, i), &o.coeff(f, i))).collect();
        Poly::new(f, c)
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn scale(&self, f: &Field, s: &Scalar) -> Poly {
        Poly::new(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn divrem(&self, f: &Field, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lead = f.inv(d.lead());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &inv_lead);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead());
        self.scale(f, &inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &Field, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn ext_gcd(&self, f: &Field, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            let s = s0.sub(f, &q.mul(f, &s1));
            let t = t0.sub(f, &q.mul(f, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead());
        (r0.scale(f, &inv), s0.scale(f, &inv), t0.scale(f, &inv))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f, c)
    }

    pub fn eval(&self, f: &Field, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, f: &Field, e: &BigUint, m: &Poly) -> Poly {
        let base = self.rem(f, m);
        let mut acc = Poly::one(f).rem(f, m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(f, &acc).rem(f, m);
            if e.bit(i) {
                acc = acc.mul(f, &base).rem(f, m);
            }
        }
        acc
    }

    pub fn render(&self, f: &Field, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let (negative, mag) = match c {
                Scalar::Q(q) => (q.is_negative(), render_rational(&q.abs())),
                _ => (false, f.render(c)),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let unit = mag == "1";
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !unit {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}
