//! Exact base fields: the rationals, prime fields, and a single simple
//! extension layer `base[t]/(f)` over either of them.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::modular::{self, PRIME_CAP};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A field element. The variant always matches the kind of the field it
/// was produced by; extension elements carry exactly `deg(minpoly)` base
/// coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    P(u64),
    E(Vec<Scalar>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Extension { base: Field, minpoly: Poly },
}

/// Cheaply clonable handle to a field descriptor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldKind>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if p >= PRIME_CAP {
            return Err(Error::UnsupportedField(format!("prime {p} is not below 2^31")));
        }
        if !modular::is_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// `base[t]/(minpoly)`. The polynomial must be monic, of degree at
    /// least two and irreducible over `base`, which must itself be ℚ or F_p.
    pub fn extension(base: &Field, minpoly: Poly) -> Result<Field> {
        if base.is_extension() {
            return Err(Error::UnsupportedField(
                "only a single extension layer over Q or F_p is supported".into(),
            ));
        }
        let minpoly = minpoly.trimmed(base);
        if minpoly.degree().unwrap_or(0) < 2 {
            return Err(Error::UnsupportedField("extension polynomial must have degree >= 2".into()));
        }
        if !base.is_one(minpoly.lead()) {
            return Err(Error::UnsupportedField("extension polynomial must be monic".into()));
        }
        if !super::factor::is_irreducible(base, &minpoly)? {
            return Err(Error::UnsupportedField(format!(
                "{} is reducible over {}",
                minpoly.render(base, "t"),
                base
            )));
        }
        Ok(Field(Arc::new(FieldKind::Extension { base: base.clone(), minpoly })))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn is_extension(&self) -> bool {
        matches!(*self.0, FieldKind::Extension { .. })
    }

    pub fn is_rationals(&self) -> bool {
        matches!(*self.0, FieldKind::Rationals)
    }

    /// The prime field (ℚ or F_p) underneath this field.
    pub fn prime_field(&self) -> Field {
        match &*self.0 {
            FieldKind::Extension { base, .. } => base.clone(),
            _ => self.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { base, .. } => base.characteristic(),
        }
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { minpoly, .. } => minpoly.degree().unwrap(),
            _ => 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<BigUint> {
        match self.characteristic() {
            0 => None,
            p => Some(BigUint::from(p).pow(self.degree() as u32)),
        }
    }

    pub fn name(&self) -> String {
        match &*self.0 {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Prime(p) => format!("F_{p}"),
            FieldKind::Extension { base, minpoly } => {
                format!("{}[t]/({})", base.name(), minpoly.render(base, "t"))
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match &*self.0 {
            FieldKind::Rationals => Scalar::Q(BigRational::zero()),
            FieldKind::Prime(_) => Scalar::P(0),
            FieldKind::Extension { base, .. } => Scalar::E(vec![base.zero(); self.degree()]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match &*self.0 {
            FieldKind::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => Scalar::P(n.mod_floor(&BigInt::from(*p)).to_u64().unwrap()),
            FieldKind::Extension { base, .. } => self.embed(&base.from_bigint(n)),
        }
    }

    /// Image of a rational number; fails in characteristic p when the
    /// denominator vanishes.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match &*self.0 {
            FieldKind::Rationals => Ok(Scalar::Q(q.clone())),
            _ => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = self.try_inv(&den).ok_or_else(|| {
                    Error::InvalidArgument(format!("{q} has no image in {}", self.name()))
                })?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    /// Embeds an element of the base field into an extension.
    pub fn embed(&self, b: &Scalar) -> Scalar {
        match &*self.0 {
            FieldKind::Extension { base, .. } => {
                let mut v = vec![base.zero(); self.degree()];
                v[0] = b.clone();
                Scalar::E(v)
            }
            _ => b.clone(),
        }
    }

    /// The class of `t` in an extension field.
    pub fn generator(&self) -> Option<Scalar> {
        match &*self.0 {
            FieldKind::Extension { base, .. } => {
                let mut v = vec![base.zero(); self.degree()];
                v[1] = base.one();
                Some(Scalar::E(v))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P(x) => *x == 0,
            Scalar::E(v) => {
                let base = self.prime_field();
                v.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (FieldKind::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(modular::add_mod(*x, *y, *p)),
            (FieldKind::Extension { base, .. }, Scalar::E(x), Scalar::E(y)) => {
                Scalar::E(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&*self.0, a) {
            (FieldKind::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            (FieldKind::Prime(p), Scalar::P(x)) => Scalar::P(modular::sub_mod(0, *x, *p)),
            (FieldKind::Extension { base, .. }, Scalar::E(x)) => {
                Scalar::E(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x - y),
            (FieldKind::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(modular::sub_mod(*x, *y, *p)),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (FieldKind::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(modular::mul_mod(*x, *y, *p)),
            (FieldKind::Extension { base, minpoly }, Scalar::E(x), Scalar::E(y)) => {
                let prod = Poly::new(base, x.clone()).mul(base, &Poly::new(base, y.clone()));
                self.from_poly(&prod.rem(base, minpoly))
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    /// Reduces a base-field polynomial in `t` to an extension element.
    pub fn from_poly(&self, poly: &Poly) -> Scalar {
        match &*self.0 {
            FieldKind::Extension { base, minpoly } => {
                let r = poly.rem(base, minpoly);
                let mut v = vec![base.zero(); self.degree()];
                for (i, c) in r.coeffs().iter().enumerate() {
                    v[i] = c.clone();
                }
                Scalar::E(v)
            }
            _ => poly.coeffs().first().cloned().unwrap_or_else(|| self.zero()),
        }
    }

    pub fn try_inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (&*self.0, a) {
            (FieldKind::Rationals, Scalar::Q(x)) => Some(Scalar::Q(x.recip())),
            (FieldKind::Prime(p), Scalar::P(x)) => modular::inv_mod(*x, *p).map(Scalar::P),
            (FieldKind::Extension { base, minpoly }, Scalar::E(x)) => {
                let (g, s, _) = Poly::new(base, x.clone()).ext_gcd(base, minpoly);
                // g is a nonzero constant since minpoly is irreducible
                let c = base.try_inv(&g.coeffs()[0])?;
                Some(self.from_poly(&s.scale(base, &c)))
            }
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    /// Inverse of a nonzero element. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        self.pow_big(a, &BigUint::from(e))
    }

    pub fn pow_big(&self, a: &Scalar, e: &BigUint) -> Scalar {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Uniform element of a finite field; a small integer for ℚ.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match &*self.0 {
            FieldKind::Rationals => self.from_i64(rng.gen_range(-3..=3)),
            FieldKind::Prime(p) => Scalar::P(rng.gen_range(0..*p)),
            FieldKind::Extension { base, .. } => {
                Scalar::E((0..self.degree()).map(|_| base.random(rng)).collect())
            }
        }
    }

    /// The `index`-th element of a finite field in a fixed enumeration.
    pub fn element_at(&self, mut index: u64) -> Scalar {
        match &*self.0 {
            FieldKind::Prime(p) => Scalar::P(index % p),
            FieldKind::Extension { base, .. } => {
                let p = base.characteristic();
                let mut v = Vec::with_capacity(self.degree());
                for _ in 0..self.degree() {
                    v.push(Scalar::P(index % p));
                    index /= p;
                }
                Scalar::E(v)
            }
            FieldKind::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(index))),
        }
    }

    /// Whether `a` is a square in this field. Defined for ℚ and finite
    /// fields only.
    pub fn is_square(&self, a: &Scalar) -> Result<bool> {
        if self.is_zero(a) {
            return Ok(true);
        }
        match (&*self.0, a) {
            (FieldKind::Rationals, Scalar::Q(q)) => {
                if q.is_negative() {
                    return Ok(false);
                }
                Ok(is_perfect_square(q.numer()) && is_perfect_square(q.denom()))
            }
            (FieldKind::Prime(2), _) => Ok(true),
            (FieldKind::Prime(p), Scalar::P(x)) => Ok(modular::pow_mod(*x, (p - 1) / 2, *p) == 1),
            (FieldKind::Extension { base, .. }, _) if base.is_finite() => {
                let q = self.order().unwrap();
                if q.is_even() {
                    return Ok(true);
                }
                let e = (q - 1u32) / 2u32;
                Ok(self.is_one(&self.pow_big(a, &e)))
            }
            _ => Err(Error::UnsupportedField(format!("square test over {}", self.name()))),
        }
    }

    /// Canonical representative of the square class of a nonzero element:
    /// the signed squarefree integer over ℚ, and 1 or the least nonresidue
    /// over F_p.
    pub fn square_class_rep(&self, a: &Scalar) -> Result<Scalar> {
        match (&*self.0, a) {
            (FieldKind::Rationals, Scalar::Q(q)) => {
                let prod = q.numer() * q.denom();
                Ok(Scalar::Q(BigRational::from_integer(squarefree_part(&prod))))
            }
            (FieldKind::Prime(p), Scalar::P(_)) => {
                if self.is_square(a)? {
                    Ok(self.one())
                } else {
                    Ok(Scalar::P(modular::least_nonresidue(*p)))
                }
            }
            (FieldKind::Extension { base, .. }, _) if base.is_finite() => {
                if self.is_square(a)? {
                    return Ok(self.one());
                }
                let q = self.order().unwrap().to_u64().unwrap_or(u64::MAX);
                let found = (1..q.min(1 << 20))
                    .map(|i| self.element_at(i))
                    .find(|x| !self.is_zero(x) && !self.is_square(x).unwrap_or(true));
                found.ok_or_else(|| Error::UnsupportedField("no nonresidue found".into()))
            }
            _ => Err(Error::UnsupportedField(format!("square classes over {}", self.name()))),
        }
    }

    /// A square root of `a`, or `None` when `a` is not a square. Finite
    /// extension fields are searched exhaustively up to 2^20 elements.
    pub fn sqrt(&self, a: &Scalar) -> Result<Option<Scalar>> {
        match (&*self.0, a) {
            (FieldKind::Rationals, Scalar::Q(q)) => {
                if q.is_negative() || !is_perfect_square(q.numer()) || !is_perfect_square(q.denom()) {
                    return Ok(None);
                }
                Ok(Some(Scalar::Q(BigRational::new(q.numer().sqrt(), q.denom().sqrt()))))
            }
            (FieldKind::Prime(p), Scalar::P(x)) => Ok(modular::sqrt_mod(*x, *p).map(Scalar::P)),
            (FieldKind::Extension { base, .. }, _) if base.is_finite() => {
                if !self.is_square(a)? {
                    return Ok(None);
                }
                let q = self.order().unwrap().to_u64().unwrap_or(u64::MAX);
                if q > 1 << 20 {
                    return Err(Error::UnsupportedField(format!("square roots in {} are limited to 2^20 elements", self.name())));
                }
                Ok((0..q).map(|i| self.element_at(i)).find(|x| &self.mul(x, x) == a))
            }
            _ => Err(Error::UnsupportedField(format!("square roots over {}", self.name()))),
        }
    }

    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Q(q) => render_rational(q),
            Scalar::P(x) => x.to_string(),
            Scalar::E(v) => {
                let base = self.prime_field();
                let parts: Vec<String> = v.iter().map(|c| base.render(c)).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }

    /// Lifts a prime-field element to a rational (ℚ) or its least
    /// nonnegative residue.
    pub fn to_rational(&self, a: &Scalar) -> Option<BigRational> {
        match a {
            Scalar::Q(q) => Some(q.clone()),
            Scalar::P(x) => Some(BigRational::from_integer(BigInt::from(*x))),
            Scalar::E(_) => None,
        }
    }
}

pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Signed squarefree part of a nonzero integer.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= m {
        let mut e = 0;
        while (&m % &f).is_zero() {
            m /= &f;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &f;
        }
        f += 1;
    }
    out * m * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_tests() {
        let q = Field::rationals();
        assert!(q.is_square(&Scalar::Q(rat(4, 9))).unwrap());
        assert!(!q.is_square(&Scalar::Q(rat(-1, 1))).unwrap());
        assert!(!q.is_square(&Scalar::Q(rat(2, 1))).unwrap());
        let f7 = Field::prime(7).unwrap();
        // squares mod 7 by enumeration
        let squares: Vec<u64> = (0..7).map(|x| x * x % 7).collect();
        for a in 1..7 {
            assert_eq!(f7.is_square(&Scalar::P(a)).unwrap(), squares.contains(&a));
        }
        assert!(!f7.is_square(&Scalar::P(3)).unwrap());
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2147483659).is_err());
    }

    #[test]
    fn extension_arithmetic() {
        let f7 = Field::prime(7).unwrap();
        // t^2 + 1 is irreducible mod 7
        let f49 = Field::extension(&f7, Poly::from_i64(&f7, &[1, 0, 1])).unwrap();
        let t = f49.generator().unwrap();
        let t2 = f49.mul(&t, &t);
        assert_eq!(t2, f49.from_i64(-1));
        let inv = f49.inv(&f49.add(&t, &f49.one()));
        assert!(f49.is_one(&f49.mul(&inv, &f49.add(&t, &f49.one()))));
        assert_eq!(f49.order().unwrap(), BigUint::from(49u32));
        // every element of F_7 is a square in F_49
        assert!(f49.is_square(&f49.from_i64(3)).unwrap());
        assert!(Field::extension(&f7, Poly::from_i64(&f7, &[-1, 0, 1])).is_err());
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(-12)), BigInt::from(-3));
        assert_eq!(squarefree_part(&BigInt::from(50)), BigInt::from(2));
        let q = Field::rationals();
        assert_eq!(q.square_class_rep(&Scalar::Q(rat(-1, 2))).unwrap(), Scalar::Q(rat(-2, 1)));
    }
}
