//! Polynomial factorization over finite fields (squarefree, distinct-degree
//! and Cantor–Zassenhaus equal-degree splitting) and over ℚ (rational roots,
//! then Hensel lifting of a modular factorization with degree-pattern
//! pruning and subset recombination).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::modular;
use super::poly::Poly;
use crate::error::{Error, Result};

pub const MAX_FACTOR_DEGREE: usize = 64;

/// `unit * prod(factor^mult)`; factors are monic, irreducible and distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, f: &Field) -> Poly {
        let mut acc = Poly::constant(f, self.unit.clone());
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f, g);
            }
        }
        acc
    }
}

pub fn poly_factor(f: &Field, p: &Poly) -> Result<Factorization> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::InvalidArgument("cannot factor the zero polynomial".into()))?;
    if deg > MAX_FACTOR_DEGREE {
        return Err(Error::TooLarge(format!("factorization of degree {deg} > {MAX_FACTOR_DEGREE}")));
    }
    let unit = p.lead().clone();
    let monic = p.monic(f);
    let mut factors = if deg == 0 {
        Vec::new()
    } else if f.is_finite() {
        factor_finite(f, &monic)
    } else if f.is_rationals() {
        factor_rational(f, &monic)
    } else {
        return Err(Error::UnsupportedField(format!("factorization over {}", f.name())));
    };
    factors.sort();
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(f: &Field, p: &Poly) -> Result<bool> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fac = poly_factor(f, p)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

// ---- finite fields ----

fn factor_finite(f: &Field, monic: &Poly) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = Vec::new();
    for (sq, mult) in squarefree_finite(f, monic) {
        for (g, d) in distinct_degree(f, &sq) {
            for h in equal_degree(f, &g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out
}

/// p-th root of an element of a finite field: a^(q/p).
fn pth_root(f: &Field, a: &Scalar) -> Scalar {
    let q = f.order().unwrap();
    f.pow_big(a, &(q / f.characteristic()))
}

fn squarefree_finite(f: &Field, monic: &Poly) -> Vec<(Poly, usize)> {
    let p = f.characteristic() as usize;
    let one = Poly::one(f);
    let mut out = Vec::new();
    let mut c = monic.gcd(f, &monic.derivative(f));
    let mut w = monic.divrem(f, &c).0;
    let mut i = 1;
    while w != one {
        let y = w.gcd(f, &c);
        let fac = w.divrem(f, &y).0;
        if fac != one {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.divrem(f, &y).0;
        i += 1;
    }
    if c != one {
        let root: Vec<Scalar> = c.coeffs().iter().step_by(p).map(|a| pth_root(f, a)).collect();
        let root = Poly::new(f, root);
        for (g, m) in squarefree_finite(f, &root) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &Field, sq: &Poly) -> Vec<(Poly, usize)> {
    let q = f.order().unwrap();
    let x = Poly::x(f);
    let one = Poly::one(f);
    let mut out = Vec::new();
    let mut rest = sq.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(f, &q, &rest);
        let g = rest.gcd(f, &h.sub(f, &x));
        if g != one {
            rest = rest.divrem(f, &g).0;
            h = h.rem(f, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn equal_degree(f: &Field, g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.degree().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let q = f.order().unwrap();
    let one = Poly::one(f);
    loop {
        let a = Poly::new(f, (0..n).map(|_| f.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q.is_odd() {
            let e = (q.pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(f, &e, g).sub(f, &one)
        } else {
            // trace map to F_2
            let k = f.degree() * d;
            let mut acc = Poly::zero();
            let mut term = a.rem(f, g);
            for _ in 0..k {
                acc = acc.add(f, &term);
                term = term.mul(f, &term).rem(f, g);
            }
            acc
        };
        let h = g.gcd(f, &b);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < n {
            let other = g.divrem(f, &h).0;
            let mut out = equal_degree(f, &h, d, rng);
            out.extend(equal_degree(f, &other, d, rng));
            return out;
        }
    }
}

// ---- rationals ----

fn factor_rational(f: &Field, monic: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (sq, mult) in squarefree_rational(f, monic) {
        let z = primitive_integer(&sq);
        for g in factor_squarefree_integer(&z) {
            out.push((integer_to_monic(f, &g), mult));
        }
    }
    out
}

/// Yun's squarefree decomposition in characteristic zero.
fn squarefree_rational(f: &Field, monic: &Poly) -> Vec<(Poly, usize)> {
    let one = Poly::one(f);
    let mut out = Vec::new();
    let d = monic.derivative(f);
    let a0 = monic.gcd(f, &d);
    let mut b = monic.divrem(f, &a0).0;
    let c = d.divrem(f, &a0).0;
    let mut dd = c.sub(f, &b.derivative(f));
    let mut i = 1;
    while b != one {
        let a = b.gcd(f, &dd);
        b = b.divrem(f, &a).0;
        let c = dd.divrem(f, &a).0;
        dd = c.sub(f, &b.derivative(f));
        if a != one {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

type ZPoly = Vec<BigInt>;

fn zdeg(p: &ZPoly) -> usize {
    p.len() - 1
}

fn primitive_integer(p: &Poly) -> ZPoly {
    let rats: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Q(q) => q.clone(),
            _ => unreachable!("rational polynomial expected"),
        })
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: ZPoly = rats.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    make_primitive(ints)
}

fn make_primitive(mut p: ZPoly) -> ZPoly {
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

fn integer_to_monic(f: &Field, p: &ZPoly) -> Poly {
    let lead = BigRational::from_integer(p.last().unwrap().clone());
    Poly::new(
        f,
        p.iter().map(|c| Scalar::Q(BigRational::from_integer(c.clone()) / &lead)).collect(),
    )
}

fn to_rational_poly(p: &ZPoly) -> Poly {
    let q = Field::rationals();
    Poly::new(&q, p.iter().map(|c| Scalar::Q(BigRational::from_integer(c.clone()))).collect())
}

/// Exact division test over ℚ (equivalently over ℤ for primitive divisors).
fn zdivides(d: &ZPoly, p: &ZPoly) -> Option<ZPoly> {
    let q = Field::rationals();
    let (quot, r) = to_rational_poly(p).divrem(&q, &to_rational_poly(d));
    if !r.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for c in quot.coeffs() {
        let Scalar::Q(c) = c else { unreachable!() };
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}

fn to_fp(p: &ZPoly, fp: &Field) -> Poly {
    Poly::new(fp, p.iter().map(|c| fp.from_bigint(c)).collect())
}

fn from_fp(p: &Poly) -> ZPoly {
    p.coeffs()
        .iter()
        .map(|c| match c {
            Scalar::P(x) => BigInt::from(*x),
            _ => unreachable!(),
        })
        .collect()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn zmod_sym(p: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = p
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

fn divisors_upto(n: &BigInt, cap: u64) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > cap {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn factor_squarefree_integer(z: &ZPoly) -> Vec<ZPoly> {
    let mut rest = z.clone();
    let mut out = Vec::new();
    // rational roots first when the end coefficients are small
    while zdeg(&rest) >= 1 {
        if rest[0].is_zero() {
            out.push(vec![BigInt::zero(), BigInt::one()]);
            rest.remove(0);
            continue;
        }
        let (Some(num), Some(den)) = (divisors_upto(&rest[0], 1 << 40), divisors_upto(rest.last().unwrap(), 1 << 40))
        else {
            break;
        };
        let mut found = None;
        'search: for b in &den {
            for a in &num {
                for sgn in [1, -1] {
                    // root a/b  <=>  factor b*x - a
                    let cand: ZPoly = vec![-(a * BigInt::from(sgn)), b.clone()];
                    if let Some(q) = zdivides(&cand, &rest) {
                        found = Some((cand, q));
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some((lin, q)) => {
                out.push(make_primitive(lin));
                rest = make_primitive(q);
            }
            None => break,
        }
    }
    match zdeg(&rest) {
        0 => {}
        1 => out.push(rest),
        _ => out.extend(zassenhaus(&rest)),
    }
    out
}

fn mignotte_bound(z: &ZPoly) -> BigInt {
    let norm2: BigInt = z.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = z.last().unwrap().abs();
    (BigInt::one() << zdeg(z)) * norm * lc
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

fn zassenhaus(z: &ZPoly) -> Vec<ZPoly> {
    let n = zdeg(z);
    let lc = z.last().unwrap().clone();
    // collect modular factorizations at several good primes
    let mut candidates: Vec<(u64, Vec<Poly>)> = Vec::new();
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut p = 3u64;
    while candidates.len() < 5 {
        p += 2;
        if !modular::is_prime(p) || (&lc % p).is_zero() {
            continue;
        }
        let fp = Field::prime(p).unwrap();
        let zp = to_fp(z, &fp).monic(&fp);
        if zp.gcd(&fp, &zp.derivative(&fp)).degree() != Some(0) {
            continue;
        }
        let facs: Vec<Poly> = factor_finite(&fp, &zp).into_iter().map(|(g, _)| g).collect();
        let degs: Vec<usize> = facs.iter().map(|g| g.degree().unwrap()).collect();
        let sums = subset_sums(&degs);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        });
        if facs.len() == 1 {
            return vec![z.clone()];
        }
        candidates.push((p, facs));
    }
    let allowed = allowed.unwrap();
    if !allowed.iter().any(|&d| d > 0 && d < n) {
        return vec![z.clone()];
    }
    let (p, facs) = candidates.into_iter().min_by_key(|(_, f)| f.len()).unwrap();
    let fp = Field::prime(p).unwrap();

    // lift to p^k > 2B
    let bound = mignotte_bound(z) * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted: Vec<ZPoly> = facs.iter().map(|g| hensel_lift(z, g, &fp, k)).collect();

    // recombination
    let mut rest = z.clone();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for subset in combinations(&remaining, s) {
            let deg: usize = subset.iter().map(|&i| zdeg(&lifted[i])).sum();
            if !allowed.contains(&deg) {
                continue;
            }
            let lc_rest = rest.last().unwrap().clone();
            let mut h = vec![lc_rest];
            for &i in &subset {
                h = zmod_sym(&zmul(&h, &lifted[i]), &modulus);
            }
            let cand = make_primitive(h);
            if zdeg(&cand) == 0 {
                continue;
            }
            if let Some(q) = zdivides(&cand, &rest) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = make_primitive(q);
                remaining.retain(|i| !subset.contains(i));
            }
            None => s += 1,
        }
    }
    if zdeg(&rest) > 0 {
        out.push(rest);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Lifts a monic factor `g` of `z` modulo p to the unique monic factor
/// modulo p^k, by linear Hensel steps against the cofactor.
fn hensel_lift(z: &ZPoly, g: &Poly, fp: &Field, k: u32) -> ZPoly {
    let zp = to_fp(z, fp);
    let hp = zp.divrem(fp, g).0;
    let (one, s, t) = g.ext_gcd(fp, &hp);
    debug_assert_eq!(one, Poly::one(fp));
    let p = BigInt::from(fp.characteristic());
    let mut gz = from_fp(g);
    let mut hz = from_fp(&hp);
    let mut pk = p.clone();
    for _ in 1..k {
        let diff = zsub(z, &zmul(&gz, &hz));
        let e: ZPoly = diff.iter().map(|c| c / &pk).collect();
        let ep = to_fp(&e, fp);
        let (quot, dg) = ep.mul(fp, &t).divrem(fp, g);
        let dh = ep.mul(fp, &s).add(fp, &hp_mul(&quot, &hz, fp));
        let dgz = from_fp(&dg);
        let dhz = from_fp(&dh);
        for (i, c) in dgz.iter().enumerate() {
            gz[i] += c * &pk;
        }
        if hz.len() < dhz.len() {
            hz.resize(dhz.len(), BigInt::zero());
        }
        for (i, c) in dhz.iter().enumerate() {
            hz[i] += c * &pk;
        }
        pk *= &p;
    }
    gz.iter().map(|c| c.mod_floor(&pk)).collect()
}

fn hp_mul(a: &Poly, hz: &ZPoly, fp: &Field) -> Poly {
    a.mul(fp, &to_fp(hz, fp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(f: &Field, p: &Poly) -> Factorization {
        let fac = poly_factor(f, p).unwrap();
        assert_eq!(fac.expand(f), *p, "product reproduces input");
        for (g, _) in &fac.factors {
            assert!(g.degree().unwrap() >= 1);
        }
        fac
    }

    #[test]
    fn cubic_minus_one_over_q() {
        let q = Field::rationals();
        let fac = check(&q, &Poly::from_i64(&q, &[-1, 0, 0, 1]));
        let expected = vec![(Poly::from_i64(&q, &[-1, 1]), 1), (Poly::from_i64(&q, &[1, 1, 1]), 1)];
        assert_eq!(fac.factors, expected);
    }

    #[test]
    fn quartic_minus_one_over_f5_splits() {
        let f = Field::prime(5).unwrap();
        let fac = check(&f, &Poly::from_i64(&f, &[-1, 0, 0, 0, 1]));
        assert_eq!(fac.factors.len(), 4);
        assert!(fac.factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn irreducibles() {
        let q = Field::rationals();
        assert!(is_irreducible(&q, &Poly::from_i64(&q, &[1, 0, 1])).unwrap());
        // x^4 + 1 is irreducible over Q but reducible mod every prime
        assert!(is_irreducible(&q, &Poly::from_i64(&q, &[1, 0, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&q, &Poly::from_i64(&q, &[-4, 0, 1])).unwrap());
    }

    #[test]
    fn needs_recombination() {
        let q = Field::rationals();
        // (x^4+1)(x^4+x^3+x^2+x+1)(x^2-2)
        let a = Poly::from_i64(&q, &[1, 0, 0, 0, 1]);
        let b = Poly::from_i64(&q, &[1, 1, 1, 1, 1]);
        let c = Poly::from_i64(&q, &[-2, 0, 1]);
        let prod = a.mul(&q, &b).mul(&q, &c).scale(&q, &q.from_i64(3));
        let fac = check(&q, &prod);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.unit, q.from_i64(3));
    }

    #[test]
    fn repeated_factors() {
        let q = Field::rationals();
        let a = Poly::from_i64(&q, &[1, 1]);
        let p = a.mul(&q, &a).mul(&q, &Poly::from_i64(&q, &[1, 0, 1]));
        let fac = check(&q, &p);
        assert!(fac.factors.contains(&(a, 2)));
        let f3 = Field::prime(3).unwrap();
        // x^3 - x^... : (x+1)^3 = x^3 + 1 in char 3
        let g = Poly::from_i64(&f3, &[1, 0, 0, 1]).mul(&f3, &Poly::from_i64(&f3, &[1, 0, 1]));
        let fac = check(&f3, &g);
        assert!(fac.factors.contains(&(Poly::from_i64(&f3, &[1, 1]), 3)));
    }

    #[test]
    fn over_f4() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::extension(&f2, Poly::from_i64(&f2, &[1, 1, 1])).unwrap();
        // x^4 - x splits completely over F_4
        let p = Poly::new(&f4, vec![f4.zero(), f4.from_i64(-1), f4.zero(), f4.zero(), f4.one()]);
        let fac = check(&f4, &p);
        assert_eq!(fac.factors.len(), 4);
    }
}
