//! Ranks and classical inverses built on the SVD.

use num_complex::Complex64;

use super::{svd_complex, ComplexMatrix, Svd};
use crate::config::Tolerances;
use crate::error::{Error, Result};

pub fn singular_values(a: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    Ok(svd_complex(a, tol)?.sigma)
}

fn rank_of(svd: &Svd, shape: (usize, usize), tol: &Tolerances) -> usize {
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let thr = tol.rank_threshold(shape.0, shape.1, smax);
    svd.sigma.iter().filter(|&&s| s > thr).count()
}

/// Numerical rank: singular values above `tol.rank_threshold`.
pub fn rank_tol(a: &ComplexMatrix, tol: &Tolerances) -> Result<usize> {
    let svd = svd_complex(a, tol)?;
    Ok(rank_of(&svd, a.shape(), tol))
}

/// Rank together with `min |log10(sigma_i / threshold)|` over the nonzero
/// singular values, i.e. how many decades the closest one sits from the
/// cutoff. Infinite when no singular value is nonzero.
pub fn rank_margin(a: &ComplexMatrix, tol: &Tolerances) -> Result<(usize, f64)> {
    let svd = svd_complex(a, tol)?;
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let thr = tol.rank_threshold(a.rows(), a.cols(), smax);
    let margin = svd
        .sigma
        .iter()
        .filter(|&&s| s > 0.0 && thr > 0.0)
        .map(|&s| (s / thr).log10().abs())
        .fold(f64::INFINITY, f64::min);
    Ok((rank_of(&svd, a.shape(), tol), margin))
}

/// Moore–Penrose inverse.
pub fn pinv(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let svd = svd_complex(a, tol)?;
    let r = rank_of(&svd, a.shape(), tol);
    let inv: Vec<f64> = svd.sigma[..r].iter().map(|s| 1.0 / s).collect();
    let vr = svd.v.block(0, 0, a.cols(), r);
    let ur = svd.u.block(0, 0, a.rows(), r);
    Ok(&(&vr * &ComplexMatrix::from_diag(&inv)) * &ur.adjoint())
}

/// Group inverse via the full-rank factorization `A = F G`:
/// `A^# = F (G F)^{-2} G`. Fails with `NotIndexOne` when `G F` is singular.
pub fn group_inv(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::shape("group_inv", a.shape(), a.shape()));
    }
    let n = a.rows();
    let svd = svd_complex(a, tol)?;
    let r = rank_of(&svd, a.shape(), tol);
    if r == 0 {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let f = &svd.u.block(0, 0, n, r) * &ComplexMatrix::from_diag(&svd.sigma[..r]);
    let g = svd.v.block(0, 0, n, r).adjoint();
    let gf = &g * &f;
    if rank_tol(&gf, tol)? < r {
        return Err(Error::NotIndexOne);
    }
    let m = inverse(&gf).map_err(|_| Error::NotIndexOne)?;
    Ok(&(&(&f * &m) * &m) * &g)
}

/// Core inverse `A^# A A^†`.
pub fn core_inv(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let g = group_inv(a, tol)?;
    Ok(&(&g * a) * &pinv(a, tol)?)
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::shape("inverse", a.shape(), a.shape()));
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut inv = ComplexMatrix::identity(n);
    let cutoff = n as f64 * f64::EPSILON * a.max_abs();
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| m.get(i, k).norm().total_cmp(&m.get(j, k).norm()))
            .expect("non-empty pivot range");
        let p = m.get(piv, k);
        if p.norm() <= cutoff || p.norm() == 0.0 {
            return Err(Error::SingularStandardPart);
        }
        if piv != k {
            swap_rows(&mut m, piv, k);
            swap_rows(&mut inv, piv, k);
        }
        let pinv = Complex64::new(1.0, 0.0) / p;
        for j in 0..n {
            m.set(k, j, m.get(k, j) * pinv);
            inv.set(k, j, inv.get(k, j) * pinv);
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m.get(i, k);
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                m.set(i, j, m.get(i, j) - f * m.get(k, j));
                inv.set(i, j, inv.get(i, j) - f * inv.get(k, j));
            }
        }
    }
    Ok(inv)
}

fn swap_rows(m: &mut ComplexMatrix, a: usize, b: usize) {
    for j in 0..m.cols() {
        let t = m.get(a, j);
        m.set(a, j, m.get(b, j));
        m.set(b, j, t);
    }
}
