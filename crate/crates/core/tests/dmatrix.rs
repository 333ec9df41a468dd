use dualmat::gen::Generator;
use dualmat::{ComplexMatrix, DualMatrix, Error};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), rows * cols).prop_map(move |v| {
        ComplexMatrix::from_vec(
            rows,
            cols,
            v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
        )
    })
}

fn dual(rows: usize, cols: usize) -> impl Strategy<Value = DualMatrix> {
    (matrix(rows, cols), matrix(rows, cols)).prop_map(|(s, d)| DualMatrix::new(s, d).unwrap())
}

/// `A_s + εA_d ↦ [A_s 0; A_d A_s]`, a ring homomorphism into ordinary
/// block matrices.
fn embed(a: &DualMatrix) -> DMatrix<Complex64> {
    let (m, n) = a.shape();
    DMatrix::from_fn(2 * m, 2 * n, |i, j| {
        let (bi, bj) = (i / m, j / n);
        let (ii, jj) = (i % m, j % n);
        match (bi, bj) {
            (0, 0) | (1, 1) => a.standard().get(ii, jj),
            (1, 0) => a.infinitesimal().get(ii, jj),
            _ => Complex64::new(0.0, 0.0),
        }
    })
}

fn unembed(e: &DMatrix<Complex64>, m: usize, n: usize) -> DualMatrix {
    let s = ComplexMatrix::from_fn(m, n, |i, j| e[(i, j)]);
    let d = ComplexMatrix::from_fn(m, n, |i, j| e[(m + i, j)]);
    DualMatrix::new(s, d).unwrap()
}

fn shapes() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..5, 1usize..5, 1usize..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_block_embedding(
        (a, b) in shapes().prop_flat_map(|(m, k, n)| (dual(m, k), dual(k, n)))
    ) {
        let got = &a * &b;
        let want = unembed(&(embed(&a) * embed(&b)), a.rows(), b.cols());
        prop_assert!(got.approx_eq(&want, 1e-13));
    }

    #[test]
    fn associativity_and_adjoint_of_product(
        (a, b, c) in shapes().prop_flat_map(|(m, k, n)| (dual(m, k), dual(k, n), dual(n, m)))
    ) {
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        prop_assert!(left.approx_eq(&right, 1e-12));
        let ab = &a * &b;
        prop_assert!(ab.adjoint().approx_eq(&(&b.adjoint() * &a.adjoint()), 1e-12));
    }

    #[test]
    fn inverse_matches_block_inverse(a in (1usize..6).prop_flat_map(|n| dual(n, n))) {
        let Ok(ai) = a.inv() else {
            return Ok(());
        };
        let n = a.rows();
        prop_assume!(ai.max_abs() < 1e3);
        let id = DualMatrix::identity(n);
        let scale = ai.scale() * a.scale();
        prop_assert!((&a * &ai).approx_eq(&id, 1e-10 * scale));
        prop_assert!((&ai * &a).approx_eq(&id, 1e-10 * scale));
        let block = embed(&a).try_inverse().unwrap();
        prop_assert!(unembed(&block, n, n).approx_eq(&ai, 1e-9 * scale));
    }

    #[test]
    fn products_of_dual_unitaries_stay_unitary(seed in any::<u64>(), n in 1usize..7) {
        let mut g = Generator::new(seed);
        let u = g.dual_unitary(n);
        let v = g.dual_unitary(n);
        prop_assert!(u.is_dual_unitary(1e-12));
        prop_assert!((&u * &v).is_dual_unitary(1e-10));
    }
}

#[test]
fn shape_errors() {
    let a = DualMatrix::zeros(2, 3);
    assert!(matches!(a.try_mul(&a), Err(Error::ShapeMismatch { .. })));
    assert!(matches!(
        a.try_add(&DualMatrix::zeros(3, 2)),
        Err(Error::ShapeMismatch { .. })
    ));
    assert!(matches!(a.inv(), Err(Error::ShapeMismatch { .. })));
}

#[test]
fn approx_eq_ignores_tiny_noise() {
    let x = DualMatrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]], &[[0.5, 0.0], [0.0, 0.5]]).unwrap();
    let noise = DualMatrix::from_real_rows(&[[1e-15, 0.0], [0.0, 0.0]], &[[0.0, 0.0], [0.0, 1e-15]]).unwrap();
    assert!(x.approx_eq(&(&x + &noise), 1e-12));
    assert!(!x.approx_eq(&(&x + &noise.scale_real(1e6)), 1e-12));
}

#[test]
fn block_assembly_round_trips() {
    let mut g = Generator::new(3);
    let a = g.dual_matrix(5, 4);
    let top = a.block(0, 0, 2, 4);
    let bottom = a.block(2, 0, 3, 4);
    assert_eq!(DualMatrix::from_blocks(&[&[&top], &[&bottom]]), a);
    let left = a.block(0, 0, 5, 1);
    let right = a.block(0, 1, 5, 3);
    assert_eq!(DualMatrix::from_blocks(&[&[&left, &right]]), a);
}
