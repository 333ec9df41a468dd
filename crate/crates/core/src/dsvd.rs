//! Dual singular value decomposition `Â = Û Σ̂ V̂*`.
//!
//! The factors are first-order perturbations of a complex SVD of the
//! standard part: `Û = U_s(I + εX)`, `V̂ = V_s(I + εY)` with `X`, `Y`
//! skew-Hermitian. Writing `B = U_s* A_d V_s`, the infinitesimal part of
//! `Û* Â V̂` is `B − XΣ + ΣY`, and `X`, `Y` are chosen so that this is
//! diagonal and real.

use num_complex::Complex64;

use crate::cmatrix::{eigh, svd_complex, ComplexMatrix};
use crate::config::Tolerances;
use crate::dmatrix::DualMatrix;
use crate::dualnum::DualReal;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct DualSvd {
    /// `m×m` dual unitary.
    pub u: DualMatrix,
    /// `n×n` dual unitary.
    pub v: DualMatrix,
    /// The `t` nonzero dual singular values: `r` appreciable ones, then the
    /// infinitesimal ones, each run in decreasing dual order.
    pub sigma: Vec<DualReal>,
    /// Appreciable rank.
    pub r: usize,
    /// Dual rank.
    pub t: usize,
    /// Every singular value of the infinitesimal null block, including the
    /// ones below the cutoff; the first `t − r` are the infinitesimal
    /// singular values.
    pub null_sigma: Vec<f64>,
}

impl DualSvd {
    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.v.rows()
    }

    /// Standard parts of the appreciable singular values.
    pub fn sigma1_s(&self) -> Vec<f64> {
        self.sigma[..self.r].iter().map(|x| x.s).collect()
    }

    /// Infinitesimal parts of the appreciable singular values.
    pub fn sigma1_d(&self) -> Vec<f64> {
        self.sigma[..self.r].iter().map(|x| x.d).collect()
    }

    /// The infinitesimal singular values, length `t − r`.
    pub fn sigma2_d(&self) -> Vec<f64> {
        self.sigma[self.r..].iter().map(|x| x.d).collect()
    }

    /// `Σ₂` zero-padded to length `min(m, n) − r`.
    pub fn sigma2_padded(&self) -> Vec<DualReal> {
        let k = self.rows().min(self.cols()) - self.r;
        let mut out: Vec<DualReal> = self.sigma[self.r..].to_vec();
        out.resize(k, DualReal::default());
        out
    }

    /// `m×n` dual diagonal matrix of singular values.
    pub fn sigma_matrix(&self) -> DualMatrix {
        DualMatrix::diag_rect(self.rows(), self.cols(), &self.sigma)
    }

    /// `Σ₁` as an `r×r` dual diagonal matrix.
    pub fn sigma1(&self) -> DualMatrix {
        DualMatrix::diag_rect(self.r, self.r, &self.sigma[..self.r])
    }

    pub fn reconstruct(&self) -> DualMatrix {
        &(&self.u * &self.sigma_matrix()) * &self.v.adjoint()
    }

    /// `Û [Σ₁ 0; 0 0] V̂*`.
    pub fn essential_part(&self) -> DualMatrix {
        let s = DualMatrix::diag_rect(self.rows(), self.cols(), &self.sigma[..self.r]);
        &(&self.u * &s) * &self.v.adjoint()
    }
}

pub fn dual_svd(a: &DualMatrix, tol: &Tolerances) -> Result<DualSvd> {
    let (m, n) = a.shape();
    let (a_s, a_d) = (a.standard(), a.infinitesimal());
    let scale = a.scale();

    let base = svd_complex(a_s, tol)?;
    let smax = base.sigma.first().copied().unwrap_or(0.0);
    let thr = tol.rank_threshold(m, n, smax);
    let r = base.sigma.iter().filter(|&&s| s > thr).count();
    let mut us = base.u;
    let mut vs = base.v;

    // Null block: diagonalize B22 and rotate the trailing singular vectors.
    let b = &(&us.adjoint() * a_d) * &vs;
    let null = svd_complex(&b.block(r, r, m - r, n - r), tol)?;
    rotate_trailing(&mut us, r, &null.u);
    rotate_trailing(&mut vs, r, &null.v);
    let tau: Vec<f64> = null
        .sigma
        .iter()
        .copied()
        .take_while(|&x| x > tol.zero * scale)
        .collect();

    // Clusters of equal standard singular values, each with its mean.
    let groups = cluster(&base.sigma[..r], tol.cluster_gap);
    let mut sig = vec![0.0; r];
    for g in &groups {
        let mean = g.clone().map(|i| base.sigma[i]).sum::<f64>() / g.len() as f64;
        sig[g.clone()].iter_mut().for_each(|x| *x = mean);
    }

    // Within a cluster the common rotation U_G W, V_G W is free; pick W to
    // diagonalize the Hermitian part of B_G.
    let b = &(&us.adjoint() * a_d) * &vs;
    for g in groups.iter().filter(|g| g.len() > 1) {
        let bg = b.block(g.start, g.start, g.len(), g.len());
        let w = eigh(&bg, tol.max_sweeps)?.vectors;
        rotate_columns(&mut us, g.start, &w);
        rotate_columns(&mut vs, g.start, &w);
    }

    canonicalize_phases(&mut us, &mut vs);

    let b = &(&us.adjoint() * a_d) * &vs;
    let mut x = ComplexMatrix::zeros(m, m);
    let mut y = ComplexMatrix::zeros(n, n);
    let group_of: Vec<usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(k, g)| g.clone().map(move |_| k))
        .collect();
    for i in 0..r {
        for j in 0..r {
            let (bij, bji) = (b.get(i, j), b.get(j, i).conj());
            if group_of[i] == group_of[j] {
                x.set(i, j, (bij - bji) / (2.0 * sig[i]));
            } else {
                let (si, sj) = (sig[i], sig[j]);
                let den = sj * sj - si * si;
                x.set(i, j, (bij * sj + bji * si) / den);
                y.set(i, j, (bij * si + bji * sj) / den);
            }
        }
    }
    for (i, &si) in sig.iter().enumerate().take(r) {
        for j in r..n {
            let v = -b.get(i, j) / si;
            y.set(i, j, v);
            y.set(j, i, -v.conj());
        }
        for k in r..m {
            let v = b.get(k, i) / si;
            x.set(k, i, v);
            x.set(i, k, -v.conj());
        }
    }

    let mut sigma: Vec<DualReal> = (0..r).map(|i| DualReal::new(sig[i], b.get(i, i).re)).collect();
    sigma.extend(tau.iter().map(|&d| DualReal::new(0.0, d)));
    let t = sigma.len();

    let u = DualMatrix::from_parts(us.clone(), &us * &x);
    let v = DualMatrix::from_parts(vs.clone(), &vs * &y);
    Ok(DualSvd {
        u,
        v,
        sigma,
        r,
        t,
        null_sigma: null.sigma,
    })
}

pub fn appreciable_rank(a: &DualMatrix, tol: &Tolerances) -> Result<usize> {
    crate::cmatrix::rank_tol(a.standard(), tol)
}

pub fn dual_rank(a: &DualMatrix, tol: &Tolerances) -> Result<usize> {
    Ok(dual_svd(a, tol)?.t)
}

pub fn essential_part(a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    Ok(dual_svd(a, tol)?.essential_part())
}

/// Consecutive index ranges whose neighbouring values differ by less than
/// `gap` relative to the larger one. `values` must be sorted descending.
fn cluster(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        let split = i == values.len() || (values[i - 1] - values[i]) > gap * values[i - 1];
        if split {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Replace columns `from..from+w.rows()` of `m` by those columns times `w`.
fn rotate_columns(m: &mut ComplexMatrix, from: usize, w: &ComplexMatrix) {
    let k = w.rows();
    let cols = &m.block(0, from, m.rows(), k) * w;
    m.set_block(0, from, &cols);
}

fn rotate_trailing(m: &mut ComplexMatrix, from: usize, w: &ComplexMatrix) {
    if w.rows() > 0 {
        rotate_columns(m, from, w);
    }
}

/// Make the first largest-modulus entry of each column of `u` real positive,
/// applying the same phase to the matching column of `v`. Columns of the
/// larger factor without a partner are normalized on their own.
fn canonicalize_phases(u: &mut ComplexMatrix, v: &mut ComplexMatrix) {
    let paired = u.cols().min(v.cols());
    for j in 0..u.cols().max(v.cols()) {
        if j < paired {
            let f = leading_phase(&u.column(j)).conj();
            scale_column(u, j, f);
            scale_column(v, j, f);
        } else if j < u.cols() {
            let f = leading_phase(&u.column(j)).conj();
            scale_column(u, j, f);
        } else {
            let f = leading_phase(&v.column(j)).conj();
            scale_column(v, j, f);
        }
    }
}

fn leading_phase(col: &[Complex64]) -> Complex64 {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let z = col
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-12))
        .expect("maximum is attained");
    z / z.norm()
}

fn scale_column(m: &mut ComplexMatrix, j: usize, f: Complex64) {
    for i in 0..m.rows() {
        m.set(i, j, m.get(i, j) * f);
    }
}
