//! Standard algebras.

use crate::error::{Error, Result};
use crate::exactmath::{Field, Poly, Scalar};

use super::{Algebra, Flags, GlobalDim, Vector, MAX_DIM};

fn unit_at(f: &Field, dim: usize, idx: &[usize]) -> Vector {
    let mut u = vec![f.zero(); dim];
    for &i in idx {
        u[i] = f.one();
    }
    u
}

/// `M_n(k)` with basis `e_ij` at index `i*n + j`.
pub fn matrix(f: &Field, n: usize) -> Result<Algebra> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("matrix size {n} outside 1..=8")));
    }
    let dim = n * n;
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                table[(i * n + j) * dim + (j * n + l)] = vec![(i * n + l, f.one())];
            }
        }
    }
    let unit = unit_at(f, dim, &(0..n).map(|i| i * n + i).collect::<Vec<_>>());
    Algebra::new(f, dim, table, unit, Flags::new(GlobalDim::Yes, "matrix"), format!("M_{n}({})", f.name()))
}

/// The base field as a one-dimensional algebra.
pub fn field_algebra(f: &Field) -> Result<Algebra> {
    Algebra::new(f, 1, vec![vec![(0, f.one())]], vec![f.one()], Flags::new(GlobalDim::Yes, "field"), f.name())
}

/// `(a, b)_k` with basis `1, i, j, k`: `i^2 = a`, `j^2 = b`, `ij = -ji = k`.
pub fn quaternion(f: &Field, a: &Scalar, b: &Scalar) -> Result<Algebra> {
    if f.characteristic() == 2 {
        return Err(Error::UnsupportedCharacteristic("quaternion algebras need characteristic != 2".into()));
    }
    if f.is_zero(a) || f.is_zero(b) {
        return Err(Error::InvalidArgument("quaternion parameters must be nonzero".into()));
    }
    let one = f.one();
    let ab = f.mul(a, b);
    let mut t: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); 16];
    let mut set = |x: usize, y: usize, l: usize, c: Scalar| t[x * 4 + y] = vec![(l, c)];
    for x in 0..4 {
        set(0, x, x, one.clone());
        set(x, 0, x, one.clone());
    }
    set(1, 1, 0, a.clone());
    set(2, 2, 0, b.clone());
    set(3, 3, 0, f.neg(&ab));
    set(1, 2, 3, one.clone());
    set(2, 1, 3, f.neg(&one));
    set(1, 3, 2, a.clone());
    set(3, 1, 2, f.neg(a));
    set(2, 3, 1, f.neg(b));
    set(3, 2, 1, b.clone());
    let label = format!("({},{})_{}", f.render(a), f.render(b), f.name());
    Algebra::new(f, 4, t, unit_at(f, 4, &[0]), Flags::new(GlobalDim::Yes, "quaternion"), label)
}

/// Path algebra of an acyclic quiver. Basis: trivial paths `e_v` (index
/// `v`) followed by nontrivial paths ordered by length, then arrow
/// sequence. The product `p * q` is "p then q", nonzero when `p` ends
/// where `q` starts.
pub fn path_algebra(f: &Field, vertices: usize, arrows: &[(usize, usize)]) -> Result<Algebra> {
    if !(1..=8).contains(&vertices) || arrows.len() > 8 {
        return Err(Error::InvalidArgument("path algebras are limited to 8 vertices and 8 arrows".into()));
    }
    if let Some(&(s, t)) = arrows.iter().find(|(s, t)| *s >= vertices || *t >= vertices) {
        return Err(Error::InvalidArgument(format!("arrow {s}->{t} references a missing vertex")));
    }
    // paths as (source, target, arrow list)
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..vertices).map(|v| (v, v, Vec::new())).collect();
    let mut frontier: Vec<(usize, usize, Vec<usize>)> =
        arrows.iter().enumerate().map(|(k, &(s, t))| (s, t, vec![k])).collect();
    let mut length = 1;
    while !frontier.is_empty() {
        if length > vertices {
            return Err(Error::InvalidArgument("quiver has an oriented cycle".into()));
        }
        frontier.sort_by(|a, b| a.2.cmp(&b.2));
        paths.extend(frontier.iter().cloned());
        if paths.len() > MAX_DIM {
            return Err(Error::DimensionCap(format!("path algebra has more than {MAX_DIM} paths")));
        }
        let mut next = Vec::new();
        for (s, t, seq) in &frontier {
            for (k, &(s2, t2)) in arrows.iter().enumerate() {
                if s2 == *t {
                    let mut seq2 = seq.clone();
                    seq2.push(k);
                    next.push((*s, t2, seq2));
                }
            }
        }
        frontier = next;
        length += 1;
    }
    let dim = paths.len();
    let index = |p: &(usize, usize, Vec<usize>)| paths.iter().position(|q| q == p);
    let mut table = vec![Vec::new(); dim * dim];
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate() {
            if p.1 != q.0 {
                continue;
            }
            let mut seq = p.2.clone();
            seq.extend(q.2.iter().copied());
            let r = (p.0, q.1, seq);
            let l = index(&r).expect("concatenation of paths is a path");
            table[i * dim + j] = vec![(l, f.one())];
        }
    }
    let unit = unit_at(f, dim, &(0..vertices).collect::<Vec<_>>());
    let label = format!("path({vertices};{})", arrows.iter().map(|(s, t)| format!("{s}->{t}")).collect::<Vec<_>>().join(","));
    Algebra::new(f, dim, table, unit, Flags::new(GlobalDim::Yes, "path"), label)
}

/// The Kronecker quiver: two vertices, two parallel arrows.
pub fn kronecker(f: &Field) -> Result<Algebra> {
    Ok(path_algebra(f, 2, &[(0, 1), (0, 1)])?.with_label(format!("Kronecker({})", f.name())))
}

/// Upper triangular `n x n` matrices, basis `e_ij` (`i <= j`) in
/// lexicographic order.
pub fn upper_triangular(f: &Field, n: usize) -> Result<Algebra> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("matrix size {n} outside 1..=8")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let dim = pairs.len();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let mut table = vec![Vec::new(); dim * dim];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                table[a * dim + b] = vec![(idx(i, l), f.one())];
            }
        }
    }
    let unit = unit_at(f, dim, &(0..n).map(|i| idx(i, i)).collect::<Vec<_>>());
    Algebra::new(f, dim, table, unit, Flags::new(GlobalDim::Yes, "upper_triangular"), format!("UT_{n}({})", f.name()))
}

/// `k[t]/(p)` with basis `1, t, ..., t^{d-1}`. Finite global dimension
/// exactly when `p` is squarefree.
pub fn poly_quotient(f: &Field, p: &Poly) -> Result<Algebra> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Err(Error::InvalidArgument("quotient polynomial must have positive degree".into()));
    }
    if d > MAX_DIM {
        return Err(Error::DimensionCap(format!("dimension {d} exceeds the cap {MAX_DIM}")));
    }
    let p = p.monic(f);
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut c = vec![f.zero(); i + j + 1];
            c[i + j] = f.one();
            let r = Poly::new(f, c).rem(f, &p);
            table.push(r.coeffs().iter().cloned().enumerate().collect());
        }
    }
    let squarefree = p.gcd(f, &p.derivative(f)).degree() == Some(0);
    let gldim = if squarefree { GlobalDim::Yes } else { GlobalDim::No };
    let label = format!("{}[t]/({})", f.name(), p.render(f, "t"));
    Algebra::new(f, d, table, unit_at(f, d, &[0]), Flags::new(gldim, "poly_quotient"), label)
}

/// `k[e]/(e^2)`.
pub fn dual_numbers(f: &Field) -> Result<Algebra> {
    let a = poly_quotient(f, &Poly::from_i64(f, &[0, 0, 1]))?;
    Ok(a.with_flags(Flags::new(GlobalDim::No, "dual_numbers")).with_label(format!("{}[e]/(e^2)", f.name())))
}

/// Group algebra of the cyclic group of order `n`, basis `g^i`.
pub fn cyclic_group_algebra(f: &Field, n: usize) -> Result<Algebra> {
    if !(1..=MAX_DIM).contains(&n) {
        return Err(Error::InvalidArgument(format!("group order {n} outside 1..={MAX_DIM}")));
    }
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(vec![((i + j) % n, f.one())]);
        }
    }
    let p = f.characteristic();
    let gldim = if p != 0 && (n as u64).is_multiple_of(p) { GlobalDim::No } else { GlobalDim::Yes };
    Algebra::new(f, n, table, unit_at(f, n, &[0]), Flags::new(gldim, "cyclic_group_algebra"), format!("{}[C_{n}]", f.name()))
}

/// `F_p<x, d>/([d, x] = 1, x^p = a, d^p = b)`, basis `x^i d^j` at index
/// `i*p + j`.
pub fn weyl_fiber(p: u64, a: i64, b: i64) -> Result<Algebra> {
    let f = Field::prime(p)?;
    let pu = p as usize;
    if pu * pu > MAX_DIM {
        return Err(Error::DimensionCap(format!("weyl_fiber({p}) has dimension {} > {MAX_DIM}", pu * pu)));
    }
    let (a, b) = (f.from_i64(a), f.from_i64(b));
    let dim = pu * pu;
    let binom = |n: usize, k: usize| -> u64 {
        let mut r = 1u64;
        for t in 0..k {
            r = r * (n - t) as u64 / (t + 1) as u64;
        }
        r
    };
    let falling = |n: usize, k: usize| -> u64 { (0..k).map(|t| (n - t) as u64 % p).fold(1, |acc, x| acc * x % p) };
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..pu {
        for j in 0..pu {
            for k in 0..pu {
                for l in 0..pu {
                    // x^i (d^j x^k) d^l, d^j x^k = sum_m C(j,m) (k)_m x^{k-m} d^{j-m}
                    let mut out: Vec<(usize, Scalar)> = Vec::new();
                    for m in 0..=j.min(k) {
                        let c = f.mul(&f.from_i64((binom(j, m) % p) as i64), &f.from_i64(falling(k, m) as i64));
                        if f.is_zero(&c) {
                            continue;
                        }
                        let (mut xe, mut de) = (i + k - m, j - m + l);
                        let mut c = c;
                        if xe >= pu {
                            xe -= pu;
                            c = f.mul(&c, &a);
                        }
                        if de >= pu {
                            de -= pu;
                            c = f.mul(&c, &b);
                        }
                        out.push((xe * pu + de, c));
                    }
                    table.push(out);
                }
            }
        }
    }
    let label = format!("Weyl_{p}({},{})", f.render(&a), f.render(&b));
    Algebra::new(&f, dim, table, unit_at(&f, dim, &[0]), Flags::new(GlobalDim::Yes, "weyl_fiber"), label)
}

/// `T(A)`: upper triangular 2x2 matrices with diagonal entries in `A` and
/// corner in the bimodule `A`. Basis: the three copies of `A`'s basis in
/// the order (top-left, corner, bottom-right).
pub fn triangular_t(a: &Algebra) -> Result<Algebra> {
    let n = a.dim();
    let dim = 3 * n;
    if dim > MAX_DIM {
        return Err(Error::DimensionCap(format!("T(A) has dimension {dim} > {MAX_DIM}")));
    }
    let f = a.field();
    let mut table = vec![Vec::new(); dim * dim];
    let shift = |v: &[(usize, Scalar)], s: usize| v.iter().map(|(l, c)| (l + s, c.clone())).collect::<Vec<_>>();
    for i in 0..n {
        for j in 0..n {
            let p = a.product_of(i, j);
            table[i * dim + j] = shift(p, 0);
            table[i * dim + (n + j)] = shift(p, n);
            table[(n + i) * dim + (2 * n + j)] = shift(p, n);
            table[(2 * n + i) * dim + (2 * n + j)] = shift(p, 2 * n);
        }
    }
    let mut unit = vec![f.zero(); dim];
    for (i, c) in a.unit().iter().enumerate() {
        unit[i] = c.clone();
        unit[2 * n + i] = c.clone();
    }
    let gldim = a.flags().finite_global_dimension;
    Algebra::new(f, dim, table, unit, Flags::new(gldim, "triangular_T"), format!("T({})", a.label()))
}
