use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use motivecalc::algebra::ops::{opposite, tensor};
use motivecalc::algebra::{cyclic_group_algebra, is_central_simple, jacobson_radical, quaternion, upper_triangular};
use motivecalc::exactmath::{is_irreducible, poly_factor, Field, Mat, Poly, Scalar};
use motivecalc::hochschild::hh0_dim;
use motivecalc::k0ring::K0RingModel;
use motivecalc::motives::{center_degree_sum, motive_atom, motive_reduce, CoefficientRing};

fn fields() -> Vec<Field> {
    vec![Field::rationals(), Field::prime(7).unwrap()]
}

fn to_mat(f: &Field, cols: usize, data: &[i64]) -> Mat {
    Mat::from_rows(f, data.chunks(cols).map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
}

fn matrix_data() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

fn square_data() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=3, n * n)))
}

fn is_zero_vec(f: &Field, v: &[Scalar]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// `p(m)` by Horner's rule.
fn eval_at(f: &Field, p: &Poly, m: &Mat) -> Mat {
    let n = m.rows();
    let mut acc = Mat::zeros(f, n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).unwrap();
        for i in 0..n {
            let v = f.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant((r, c, data) in matrix_data()) {
        for f in fields() {
            let m = to_mat(&f, c, &data);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= r.min(c));
        }
    }

    #[test]
    fn kernel_has_complementary_dimension((_r, c, data) in matrix_data()) {
        for f in fields() {
            let m = to_mat(&f, c, &data);
            let k = m.kernel_basis();
            prop_assert_eq!(k.len() + m.rank(), c);
            for v in &k {
                prop_assert!(is_zero_vec(&f, &m.mul_vec(v).unwrap()));
            }
        }
    }

    #[test]
    fn consistent_systems_are_solved((_r, c, data) in matrix_data(), x in prop::collection::vec(-4i64..=4, 5)) {
        for f in fields() {
            let m = to_mat(&f, c, &data);
            let x: Vec<Scalar> = x[..c].iter().map(|&v| f.from_i64(v)).collect();
            let b = m.mul_vec(&x).unwrap();
            let y = m.solve(&b).unwrap();
            prop_assert!(y.is_some());
            prop_assert_eq!(m.mul_vec(&y.unwrap()).unwrap(), b);
        }
    }

    #[test]
    fn minimal_polynomial_annihilates((n, data) in square_data()) {
        for f in fields() {
            let m = to_mat(&f, n, &data);
            let p = m.min_poly().unwrap();
            prop_assert!(p.degree().unwrap() <= n);
            prop_assert!(eval_at(&f, &p, &m).is_zero());
        }
    }

    #[test]
    fn determinant_is_multiplicative((n, a) in square_data(), b in prop::collection::vec(-3i64..=3, 16)) {
        for f in fields() {
            let x = to_mat(&f, n, &a);
            let y = to_mat(&f, n, &b[..n * n]);
            let lhs = x.mul(&y).unwrap().det().unwrap();
            prop_assert_eq!(lhs, f.mul(&x.det().unwrap(), &y.det().unwrap()));
        }
    }

    #[test]
    fn factorization_over_fp_multiplies_back(coeffs in prop::collection::vec(0i64..7, 2..9), lead in 1i64..7) {
        let f = Field::prime(7).unwrap();
        let mut c = coeffs;
        c.push(lead);
        let p = Poly::from_i64(&f, &c);
        let fac = poly_factor(&f, &p).unwrap();
        prop_assert_eq!(fac.expand(&f), p);
        for (g, _) in &fac.factors {
            prop_assert!(is_irreducible(&f, g).unwrap());
        }
    }

    #[test]
    fn factorization_over_q_multiplies_back(coeffs in prop::collection::vec(-6i64..=6, 2..7), lead in 1i64..=3) {
        let f = Field::rationals();
        let mut c = coeffs;
        c.push(lead);
        let p = Poly::from_i64(&f, &c);
        let fac = poly_factor(&f, &p).unwrap();
        prop_assert_eq!(fac.expand(&f), p);
        for (g, _) in &fac.factors {
            prop_assert!(is_irreducible(&f, g).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quaternion_algebras_are_central_simple(a in -9i64..=9, b in -9i64..=9) {
        prop_assume!(a != 0 && b != 0);
        let q = Field::rationals();
        let h = quaternion(&q, &q.from_i64(a), &q.from_i64(b)).unwrap();
        h.validate().unwrap();
        prop_assert!(is_central_simple(&h).unwrap().central_simple);
        prop_assert_eq!(jacobson_radical(&h).unwrap().dim(), 0);
    }

    #[test]
    fn opposite_is_an_involution(a in -5i64..=5, b in -5i64..=5, seed in any::<u64>()) {
        prop_assume!(a != 0 && b != 0);
        let q = Field::rationals();
        let h = quaternion(&q, &q.from_i64(a), &q.from_i64(b)).unwrap();
        let back = opposite(&opposite(&h));
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let (x, y) = (h.random_element(&mut rng), h.random_element(&mut rng));
        prop_assert_eq!(back.mul(&x, &y), h.mul(&x, &y));
        prop_assert_eq!(opposite(&h).mul(&x, &y), h.mul(&y, &x));
    }

    #[test]
    fn tensor_dimensions_multiply(n in 1usize..=3, m in 2usize..=4) {
        let q = Field::rationals();
        let a = upper_triangular(&q, n).unwrap();
        let b = cyclic_group_algebra(&q, m).unwrap();
        let t = tensor(&a, &b).unwrap();
        prop_assert_eq!(t.dim(), a.dim() * b.dim());
        t.validate().unwrap();
    }

    #[test]
    fn upper_triangular_radical(n in 1usize..=5) {
        let a = upper_triangular(&Field::rationals(), n).unwrap();
        prop_assert_eq!(jacobson_radical(&a).unwrap().dim(), n * (n - 1) / 2);
    }

    #[test]
    fn group_algebra_fingerprint_is_group_order(n in 1usize..=8, inverted in prop::sample::subsequence(vec![2u64, 3, 5], 0..=3)) {
        // Q[C_n] is commutative and semisimple, so every reduction keeps n
        // as the total center degree
        let q = Field::rationals();
        let a = cyclic_group_algebra(&q, n).unwrap();
        let ring = CoefficientRing::inverting(&inverted).unwrap();
        let once = motive_reduce(&motive_atom(&a, &ring), &ring).unwrap();
        let twice = motive_reduce(&once.expr, &ring).unwrap();
        prop_assert_eq!(&twice.expr, &once.expr);
        prop_assert_eq!(center_degree_sum(&once.expr).unwrap(), BigRational::from_integer(BigInt::from(n)));
        prop_assert_eq!(hh0_dim(&a), n);
    }

    #[test]
    fn k0_rank_is_multiplicative(n in 1usize..=4, x in prop::collection::vec(-4i64..=4, 5), y in prop::collection::vec(-4i64..=4, 5)) {
        let m = K0RingModel::builtin(&format!("P{n}")).unwrap();
        let z = CoefficientRing::integers();
        let (a, b) = (m.element(&x[..=n]).unwrap(), m.element(&y[..=n]).unwrap());
        let ab = m.mul(&a, &b, &z);
        let expected: Vec<BigRational> = m.rank(&a).iter().zip(m.rank(&b)).map(|(p, q)| p * q).collect();
        prop_assert_eq!(m.rank(&ab), expected);
        prop_assert_eq!(ab, m.mul(&b, &a, &z));
    }
}
