//! Integer matrices and Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        IntMat { rows: r, cols: c, data: rows.iter().flat_map(|row| row.iter().map(|&x| BigInt::from(x))).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = IntMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = a * o.get(k, j);
                    *out.at(i, j) += v;
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = k * self.get(src, j);
            *self.at(dst, j) += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = k * self.get(i, src);
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            *self.at(i, j) = v;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries d_1 | d_2 | ... (length min(rows, cols)).
    pub diagonal: Vec<BigInt>,
    pub u: IntMat,
    pub v: IntMat,
    pub d: IntMat,
}

/// Smith normal form: `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with nonnegative entries forming a divisibility chain.
pub fn smith_normal_form(m: &IntMat) -> Smith {
    let mut a = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        // pivot: smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            break;
        };
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut changed = false;
            for i in t + 1..a.rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !a.get(i, t).is_zero() {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..a.cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !a.get(t, j).is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let piv = a.get(t, t).clone();
            let bad = (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| !(a.get(i, j) % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let diagonal = (0..n).map(|i| a.get(i, i).clone()).collect();
    Smith { diagonal, u, v, d: a }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMat) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        for w in s.diagonal.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "{:?}", s.diagonal);
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn examples() {
        assert_eq!(check(&IntMat::from_i64(&[&[2, 0], &[0, 3]])).diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(check(&IntMat::from_i64(&[&[0]])).diagonal, vec![BigInt::from(0)]);
        assert_eq!(check(&IntMat::from_i64(&[&[2, 4], &[6, 8]])).diagonal, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn rectangular() {
        let s = check(&IntMat::from_i64(&[&[4, 6, 8], &[10, 12, 14]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6)]);
    }
}
