use dualmat::cmatrix::{core_inv, eigh, group_inv, inverse, pinv, rank_tol, svd_complex};
use dualmat::{ComplexMatrix, Error, Tolerances};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), rows * cols).prop_map(move |v| {
        ComplexMatrix::from_vec(
            rows,
            cols,
            v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
        )
    })
}

fn sized(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| matrix(m, n))
}

fn to_nalgebra(a: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j))
}

/// Low-rank product `X Y` with inner dimension `k`.
fn low_rank(n: usize, k: usize) -> impl Strategy<Value = ComplexMatrix> {
    (matrix(n, k), matrix(k, n)).prop_map(|(x, y)| &x * &y)
}

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn rank_examples() {
    assert_eq!(rank_tol(&ComplexMatrix::identity(5), &tol()).unwrap(), 5);
    let u = ComplexMatrix::from_fn(4, 1, |i, _| Complex64::new(i as f64 + 1.0, 1.0));
    let v = ComplexMatrix::from_fn(1, 3, |_, j| Complex64::new(1.0, -(j as f64)));
    assert_eq!(rank_tol(&(&u * &v), &tol()).unwrap(), 1);
    assert_eq!(rank_tol(&ComplexMatrix::from_diag(&[1.0, 1e-20]), &tol()).unwrap(), 1);
}

#[test]
fn pinv_examples() {
    let p = pinv(&ComplexMatrix::from_diag(&[2.0, 0.0]), &tol()).unwrap();
    assert!(p.max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.0])) < 1e-15);
    let q = ComplexMatrix::from_fn(2, 2, |i, j| {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match (i, j) {
            (0, 0) => Complex64::new(s, 0.0),
            (0, 1) => Complex64::new(0.0, s),
            (1, 0) => Complex64::new(0.0, s),
            _ => Complex64::new(s, 0.0),
        }
    });
    assert!(pinv(&q, &tol()).unwrap().max_abs_diff(&q.adjoint()) < 1e-15);
}

#[test]
fn group_and_core_of_invertible() {
    let a = ComplexMatrix::from_real_rows(&[[2.0, 1.0], [1.0, 3.0]]);
    let ai = inverse(&a).unwrap();
    assert!(group_inv(&a, &tol()).unwrap().max_abs_diff(&ai) < 1e-14);
    assert!(core_inv(&a, &tol()).unwrap().max_abs_diff(&ai) < 1e-14);
}

#[test]
fn group_inverse_of_similarity_form() {
    // P diag(D, 0) P⁻¹ with D invertible has index one.
    let p = ComplexMatrix::from_fn(4, 4, |i, j| {
        Complex64::new(if i == j { 2.0 } else { 0.3 * (i + j) as f64 }, (i as f64) * 0.1)
    });
    let d = ComplexMatrix::from_diag(&[1.5, -2.0, 0.0, 0.0]);
    let a = &(&p * &d) * &inverse(&p).unwrap();
    let x = group_inv(&a, &tol()).unwrap();
    let scale = a.max_abs() * x.max_abs();
    assert!((&(&a * &x) * &a).max_abs_diff(&a) < 1e-12 * scale);
    assert!((&(&x * &a) * &x).max_abs_diff(&x) < 1e-12 * scale * x.max_abs());
    assert!((&a * &x).max_abs_diff(&(&x * &a)) < 1e-12 * scale);
    let n = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
    assert_eq!(group_inv(&n, &tol()), Err(Error::NotIndexOne));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn svd_matches_gram_eigenvalues(a in sized(6)) {
        let svd = svd_complex(&a, &tol()).unwrap();
        prop_assert!(svd.u.unitarity_error() < 1e-12);
        prop_assert!(svd.v.unitarity_error() < 1e-12);
        prop_assert!(svd.reconstruct().max_abs_diff(&a) < 1e-12 * a.max_abs().max(1.0));
        // Oracle: square roots of the eigenvalues of A*A from nalgebra.
        let na = to_nalgebra(&a);
        let gram = na.adjoint() * &na;
        let mut ev: Vec<f64> = gram.symmetric_eigenvalues().iter().map(|&x| x.max(0.0).sqrt()).collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        for (s, e) in svd.sigma.iter().zip(&ev) {
            prop_assert!((s - e).abs() < 1e-6 * ev[0].max(1.0), "{s} vs {e}");
        }
    }

    #[test]
    fn svd_singular_values_match_nalgebra(a in sized(6)) {
        let ours = svd_complex(&a, &tol()).unwrap().sigma;
        let mut theirs: Vec<f64> = to_nalgebra(&a).singular_values().iter().copied().collect();
        theirs.sort_by(|x, y| y.total_cmp(x));
        for (s, t) in ours.iter().zip(&theirs) {
            prop_assert!((s - t).abs() < 1e-11 * theirs[0].max(1.0));
        }
    }

    #[test]
    fn rank_is_adjoint_invariant(a in (1usize..6, 0usize..4).prop_flat_map(|(n, k)| low_rank(n, k.min(n)))) {
        prop_assert_eq!(rank_tol(&a, &tol()).unwrap(), rank_tol(&a.adjoint(), &tol()).unwrap());
    }

    #[test]
    fn pinv_penrose_and_involution(a in sized(5)) {
        let x = pinv(&a, &tol()).unwrap();
        let s = a.max_abs().max(1.0) * x.max_abs().max(1.0);
        prop_assert!((&(&a * &x) * &a).max_abs_diff(&a) < 1e-10 * s * a.max_abs().max(1.0));
        prop_assert!((&(&x * &a) * &x).max_abs_diff(&x) < 1e-10 * s * x.max_abs().max(1.0));
        let ax = &a * &x;
        let xa = &x * &a;
        prop_assert!(ax.max_abs_diff(&ax.adjoint()) < 1e-10 * s);
        prop_assert!(xa.max_abs_diff(&xa.adjoint()) < 1e-10 * s);
        let back = pinv(&x, &tol()).unwrap();
        prop_assert!(back.max_abs_diff(&a) < 1e-9 * a.max_abs().max(1.0));
    }

    #[test]
    fn eigh_reconstructs(a in (1usize..7).prop_flat_map(|n| matrix(n, n))) {
        let h = (&a + &a.adjoint()).scale_real(0.5);
        let e = eigh(&a, 100).unwrap();
        prop_assert!(e.vectors.unitarity_error() < 1e-12);
        let back = &(&e.vectors * &ComplexMatrix::from_diag(&e.values)) * &e.vectors.adjoint();
        prop_assert!(back.max_abs_diff(&h) < 1e-11 * h.max_abs().max(1.0));
        let mut theirs: Vec<f64> = to_nalgebra(&h).symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(|x, y| y.total_cmp(x));
        for (s, t) in e.values.iter().zip(&theirs) {
            prop_assert!((s - t).abs() < 1e-11 * h.max_abs().max(1.0));
        }
    }

    #[test]
    fn group_and_core_inverse_equations(
        (p, d) in (2usize..6).prop_flat_map(|n| (matrix(n, n), proptest::collection::vec(0.5f64..2.0, n)))
    ) {
        let n = p.rows();
        let Ok(pi) = inverse(&p) else { return Ok(()) };
        prop_assume!(pi.max_abs() < 50.0);
        let mut diag = d.clone();
        diag[n - 1] = 0.0;
        let a = &(&p * &ComplexMatrix::from_diag(&diag)) * &pi;
        let tol = Tolerances::default;
        let g = group_inv(&a, &tol()).unwrap();
        let s = a.max_abs().max(1.0) * g.max_abs().max(1.0);
        prop_assert!((&(&a * &g) * &a).max_abs_diff(&a) < 1e-9 * s * a.max_abs().max(1.0));
        prop_assert!((&a * &g).max_abs_diff(&(&g * &a)) < 1e-9 * s);
        let back = group_inv(&g, &tol()).unwrap();
        prop_assert!(back.max_abs_diff(&a) < 1e-8 * s * s);
        let c = core_inv(&a, &tol()).unwrap();
        let ac = &a * &c;
        prop_assert!(ac.max_abs_diff(&ac.adjoint()) < 1e-10 * s);
        prop_assert!((&ac * &c).max_abs_diff(&c) < 1e-9 * s * c.max_abs().max(1.0));
        prop_assert!((&ac * &a).max_abs_diff(&a) < 1e-9 * s * a.max_abs().max(1.0));
    }
}
