//! One-sided (Hestenes) Jacobi SVD for complex matrices.

use num_complex::Complex64;

use super::{axpy, dot, norm, ComplexMatrix, ONE, ZERO};
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Full SVD `A = U diag(sigma) V*` with `U` `m×m`, `V` `n×n` unitary and
/// `sigma` of length `min(m, n)`, sorted descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    /// `U diag(sigma) V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let s = ComplexMatrix::diag_rect(self.u.cols(), self.v.cols(), &self.sigma);
        &(&self.u * &s) * &self.v.adjoint()
    }
}

pub fn svd_complex(a: &ComplexMatrix, tol: &Tolerances) -> Result<Svd> {
    if !a.is_finite() {
        return Err(Error::ToleranceBreach("non-finite entry in matrix".into()));
    }
    let (m, n) = a.shape();
    if m >= n {
        let (u, sigma, v) = jacobi_tall(a, tol.max_sweeps)?;
        Ok(Svd { u, sigma, v })
    } else {
        let (v, sigma, u) = jacobi_tall(&a.adjoint(), tol.max_sweeps)?;
        Ok(Svd { u, sigma, v })
    }
}

/// SVD of a matrix with `rows >= cols`.
fn jacobi_tall(a: &ComplexMatrix, max_sweeps: usize) -> Result<(ComplexMatrix, Vec<f64>, ComplexMatrix)> {
    let (m, n) = a.shape();
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect())
        .collect();
    let tol = m.max(1) as f64 * f64::EPSILON;
    // Columns this small are rounding noise; they take no part in rotations
    // and get their left singular vectors from the basis completion.
    let negligible = tol * a.frobenius();
    let neg2 = negligible * negligible;

    let mut converged = n < 2;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = w[p].iter().map(|z| z.norm_sqr()).sum::<f64>();
                let beta = w[q].iter().map(|z| z.norm_sqr()).sum::<f64>();
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if alpha <= neg2 || beta <= neg2 || g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // e^{-iφ} with γ = |γ| e^{iφ}.
                let ph = gamma.conj() / g;
                rotate(&mut w, p, q, c, s, ph);
                rotate(&mut v, p, q, c, s, ph);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            what: "Jacobi SVD",
            sweeps: max_sweeps,
        });
    }

    let norms: Vec<f64> = w.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut ucols = Vec::with_capacity(m);
    for &j in &order {
        if norms[j] > negligible && norms[j] > 0.0 {
            ucols.push(w[j].iter().map(|z| z / norms[j]).collect::<Vec<_>>());
        } else {
            ucols.push(vec![ZERO; m]);
        }
    }
    // Columns for zero singular values, plus the rest of an m×m basis.
    let missing: Vec<usize> = (0..n).filter(|&k| norm(&ucols[k]) == 0.0).collect();
    let mut basis: Vec<Vec<Complex64>> = ucols.iter().filter(|c| norm(c) > 0.0).cloned().collect();
    complete_basis(&mut basis, m);
    let mut extra = basis.split_off(n - missing.len());
    for &k in &missing {
        ucols[k] = extra.remove(0);
    }
    ucols.extend(extra);

    let vcols: Vec<Vec<Complex64>> = order.iter().map(|&j| v[j].clone()).collect();
    Ok((
        ComplexMatrix::from_columns(m, &ucols),
        sigma,
        ComplexMatrix::from_columns(n, &vcols),
    ))
}

/// `w_p ← c w_p − s e^{−iφ} w_q`, `w_q ← s w_p + c e^{−iφ} w_q`.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, ph: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (wp, wq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in wp.iter_mut().zip(wq.iter_mut()) {
        let yp = ph * *y;
        let nx = *x * c - yp * s;
        let ny = *x * s + yp * c;
        *x = nx;
        *y = ny;
    }
}

/// Extend orthonormal `basis` to `dim` vectors using standard basis
/// vectors, taking at each step the one with the largest residual.
pub(crate) fn complete_basis(basis: &mut Vec<Vec<Complex64>>, dim: usize) {
    while basis.len() < dim {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for k in 0..dim {
            let mut e = vec![ZERO; dim];
            e[k] = ONE;
            for _ in 0..2 {
                for b in basis.iter() {
                    let proj = dot(b, &e);
                    axpy(&mut e, -proj, b);
                }
            }
            let r = norm(&e);
            if best.as_ref().is_none_or(|(br, _)| r > *br) {
                best = Some((r, e));
            }
        }
        let (r, mut e) = best.expect("dim > 0 when basis is incomplete");
        e.iter_mut().for_each(|z| *z /= r);
        basis.push(e);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &ComplexMatrix) {
        let svd = svd_complex(a, &Tolerances::default()).unwrap();
        let scale = a.max_abs().max(1.0);
        assert!(svd.u.unitarity_error() < 1e-13, "U not unitary");
        assert!(svd.v.unitarity_error() < 1e-13, "V not unitary");
        assert!(svd.reconstruct().max_abs_diff(a) < 1e-13 * scale);
        assert!(svd.sigma.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn diagonal_with_zeros() {
        check(&ComplexMatrix::from_diag(&[1.0, 2.0, 0.0, 0.0]));
        let s = svd_complex(&ComplexMatrix::from_diag(&[1.0, 2.0, 0.0, 0.0]), &Tolerances::default()).unwrap();
        assert_eq!(s.sigma, vec![2.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn rectangular_and_empty() {
        let a = ComplexMatrix::from_fn(3, 5, |i, j| Complex64::new((i * j) as f64 - 1.0, i as f64 - j as f64));
        check(&a);
        check(&a.adjoint());
        check(&ComplexMatrix::zeros(3, 2));
        check(&ComplexMatrix::zeros(0, 0));
        let e = svd_complex(&ComplexMatrix::zeros(2, 0), &Tolerances::default()).unwrap();
        assert_eq!(e.u.shape(), (2, 2));
        assert_eq!(e.v.shape(), (0, 0));
    }

    #[test]
    fn sweep_cap_is_reported() {
        let a = ComplexMatrix::from_fn(4, 4, |i, j| Complex64::new((i + 2 * j) as f64, (i * j) as f64));
        let tol = Tolerances {
            max_sweeps: 0,
            ..Tolerances::default()
        };
        assert!(matches!(svd_complex(&a, &tol), Err(Error::ConvergenceFailure { .. })));
    }

    #[test]
    fn rejects_non_finite() {
        let mut a = ComplexMatrix::identity(2);
        a.set(0, 1, Complex64::new(f64::NAN, 0.0));
        assert!(svd_complex(&a, &Tolerances::default()).is_err());
    }
}
