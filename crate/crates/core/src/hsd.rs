//! Hartwig–Spindelböck decomposition of square dual matrices,
//! `Â = Û [ΣK ΣL; ΣM ΣN] Û*` with `[K L; M N] = V̂* Û` dual unitary.

use crate::cmatrix::ComplexMatrix;
use crate::config::Tolerances;
use crate::dmatrix::DualMatrix;
use crate::dsvd::{dual_svd, DualSvd};
use crate::dualnum::DualReal;
use crate::error::{Error, Result};

/// One dual SVD and the product `W = V̂* Û`; all three forms are read off it.
#[derive(Debug, Clone)]
pub struct HsDecomposition {
    pub svd: DualSvd,
    pub w: DualMatrix,
}

/// `Â = Û [Σ₀K₀ Σ₀L₀; 0 0] Û*` with `K₀K₀* + L₀L₀* = I_t`.
#[derive(Debug, Clone)]
pub struct HsBasic {
    pub u: DualMatrix,
    pub sigma0: Vec<DualReal>,
    pub k0: DualMatrix,
    pub l0: DualMatrix,
}

/// Blocks split at the appreciable rank `r`; `sigma2` is zero-padded to `n − r`.
#[derive(Debug, Clone)]
pub struct HsPartitioned {
    pub u: DualMatrix,
    pub sigma1: Vec<DualReal>,
    pub sigma2: Vec<DualReal>,
    pub k: DualMatrix,
    pub l: DualMatrix,
    pub m: DualMatrix,
    pub n: DualMatrix,
}

/// The partitioned blocks split into standard (`*1`) and infinitesimal
/// (`*2`) parts.
#[derive(Debug, Clone)]
pub struct HsRefined {
    pub u: DualMatrix,
    pub sigma1_s: Vec<f64>,
    pub sigma1_d: Vec<f64>,
    /// Zero-padded to `n − r`.
    pub sigma2_d: Vec<f64>,
    pub k1: ComplexMatrix,
    pub k2: ComplexMatrix,
    pub l1: ComplexMatrix,
    pub l2: ComplexMatrix,
    pub m1: ComplexMatrix,
    pub m2: ComplexMatrix,
    pub n1: ComplexMatrix,
    pub n2: ComplexMatrix,
}

impl HsDecomposition {
    pub fn new(a: &DualMatrix, tol: &Tolerances) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::shape("H-S decomposition", a.shape(), a.shape()));
        }
        let svd = dual_svd(a, tol)?;
        let w = &svd.v.adjoint() * &svd.u;
        Ok(HsDecomposition { svd, w })
    }

    pub fn n(&self) -> usize {
        self.w.rows()
    }

    pub fn basic(&self) -> HsBasic {
        let (n, t) = (self.n(), self.svd.t);
        HsBasic {
            u: self.svd.u.clone(),
            sigma0: self.svd.sigma.clone(),
            k0: self.w.block(0, 0, t, t),
            l0: self.w.block(0, t, t, n - t),
        }
    }

    pub fn partitioned(&self) -> HsPartitioned {
        let (n, r) = (self.n(), self.svd.r);
        HsPartitioned {
            u: self.svd.u.clone(),
            sigma1: self.svd.sigma[..r].to_vec(),
            sigma2: self.svd.sigma2_padded(),
            k: self.w.block(0, 0, r, r),
            l: self.w.block(0, r, r, n - r),
            m: self.w.block(r, 0, n - r, r),
            n: self.w.block(r, r, n - r, n - r),
        }
    }

    pub fn refined(&self) -> HsRefined {
        let p = self.partitioned();
        let split = |x: &DualMatrix| (x.standard().clone(), x.infinitesimal().clone());
        let (k1, k2) = split(&p.k);
        let (l1, l2) = split(&p.l);
        let (m1, m2) = split(&p.m);
        let (n1, n2) = split(&p.n);
        HsRefined {
            u: p.u,
            sigma1_s: self.svd.sigma1_s(),
            sigma1_d: self.svd.sigma1_d(),
            sigma2_d: p.sigma2.iter().map(|x| x.d).collect(),
            k1,
            k2,
            l1,
            l2,
            m1,
            m2,
            n1,
            n2,
        }
    }

    /// `Û ([Σ₁K₁ Σ₁L₁; 0 0] + ε[Σ₁sK₂ Σ₁sL₂; 0 0]) Û*`.
    pub fn essential(&self) -> DualMatrix {
        let h = self.refined();
        let (n, r) = (self.n(), self.svd.r);
        let s1 = DualMatrix::diag_rect(r, r, &self.svd.sigma[..r]);
        let s1s = ComplexMatrix::from_diag(&h.sigma1_s);
        let top = DualMatrix::from_blocks(&[&[
            &(&s1 * &DualMatrix::from_standard(h.k1.clone())),
            &(&s1 * &DualMatrix::from_standard(h.l1.clone())),
        ]]);
        let top2 = ComplexMatrix::from_blocks(&[&[&(&s1s * &h.k2), &(&s1s * &h.l2)]]);
        let top = DualMatrix::from_parts(top.standard().clone(), top.infinitesimal() + &top2);
        let mid = DualMatrix::from_blocks(&[&[&top], &[&DualMatrix::zeros(n - r, n)]]);
        &(&h.u * &mid) * &h.u.adjoint()
    }
}

fn identity_gap(x: &DualMatrix, k: usize) -> f64 {
    let (es, ed) = x.max_abs_diff(&DualMatrix::identity(k));
    es.max(ed)
}

impl HsBasic {
    pub fn t(&self) -> usize {
        self.sigma0.len()
    }

    /// `‖K₀K₀* + L₀L₀* − I_t‖`.
    pub fn constraint_residual(&self) -> f64 {
        let g = &(&self.k0 * &self.k0.adjoint()) + &(&self.l0 * &self.l0.adjoint());
        identity_gap(&g, self.t())
    }

    pub fn reconstruct(&self) -> DualMatrix {
        let (n, t) = (self.u.rows(), self.t());
        let s0 = DualMatrix::diag_rect(t, t, &self.sigma0);
        let top = DualMatrix::from_blocks(&[&[&(&s0 * &self.k0), &(&s0 * &self.l0)]]);
        let mid = DualMatrix::from_blocks(&[&[&top], &[&DualMatrix::zeros(n - t, n)]]);
        &(&self.u * &mid) * &self.u.adjoint()
    }
}

impl HsPartitioned {
    pub fn r(&self) -> usize {
        self.sigma1.len()
    }

    /// Residuals of `KK* + LL* = I_r`, `KM* + LN* = 0`, `MM* + NN* = I_{n−r}`.
    pub fn constraint_residuals(&self) -> Vec<(&'static str, f64)> {
        let (k, l, m, n) = (&self.k, &self.l, &self.m, &self.n);
        let kk = &(k * &k.adjoint()) + &(l * &l.adjoint());
        let km = &(k * &m.adjoint()) + &(l * &n.adjoint());
        let mm = &(m * &m.adjoint()) + &(n * &n.adjoint());
        vec![
            ("KK*+LL*=I", identity_gap(&kk, self.r())),
            ("KM*+LN*=0", km.max_abs()),
            ("MM*+NN*=I", identity_gap(&mm, self.sigma2.len())),
        ]
    }

    pub fn reconstruct(&self) -> DualMatrix {
        let (r, q) = (self.r(), self.sigma2.len());
        let s1 = DualMatrix::diag_rect(r, r, &self.sigma1);
        let s2 = DualMatrix::diag_rect(q, q, &self.sigma2);
        let mid = DualMatrix::from_blocks(&[
            &[&(&s1 * &self.k), &(&s1 * &self.l)],
            &[&(&s2 * &self.m), &(&s2 * &self.n)],
        ]);
        &(&self.u * &mid) * &self.u.adjoint()
    }
}

impl HsRefined {
    pub fn r(&self) -> usize {
        self.sigma1_s.len()
    }

    /// Residuals of the four standard/infinitesimal block constraints.
    pub fn constraint_residuals(&self) -> Vec<(&'static str, f64)> {
        let (k1, k2, l1, l2) = (&self.k1, &self.k2, &self.l1, &self.l2);
        let (m1, n1) = (&self.m1, &self.n1);
        let a = &(k1 * &k1.adjoint()) + &(l1 * &l1.adjoint());
        let b = &(&(&(k1 * &k2.adjoint()) + &(k2 * &k1.adjoint())) + &(l1 * &l2.adjoint())) + &(l2 * &l1.adjoint());
        let c = &(m1 * &m1.adjoint()) + &(n1 * &n1.adjoint());
        let d = &(k1 * &m1.adjoint()) + &(l1 * &n1.adjoint());
        vec![
            ("K1K1*+L1L1*=I", a.max_abs_diff(&ComplexMatrix::identity(self.r()))),
            ("K1K2*+K2K1*+L1L2*+L2L1*=0", b.max_abs()),
            (
                "M1M1*+N1N1*=I",
                c.max_abs_diff(&ComplexMatrix::identity(self.sigma2_d.len())),
            ),
            ("K1M1*+L1N1*=0", d.max_abs()),
        ]
    }

    fn sigma1(&self) -> DualMatrix {
        let s: Vec<DualReal> = self
            .sigma1_s
            .iter()
            .zip(&self.sigma1_d)
            .map(|(&s, &d)| DualReal::new(s, d))
            .collect();
        DualMatrix::diag_rect(s.len(), s.len(), &s)
    }

    fn sigma2(&self) -> DualMatrix {
        let s: Vec<DualReal> = self.sigma2_d.iter().map(|&d| DualReal::new(0.0, d)).collect();
        DualMatrix::diag_rect(s.len(), s.len(), &s)
    }

    /// `Û ([Σ₁K₁ Σ₁L₁; Σ₂M₁ Σ₂N₁] + ε[Σ₁K₂ Σ₁L₂; Σ₂M₂ Σ₂N₂]) Û*`.
    pub fn reconstruct_blockwise(&self) -> DualMatrix {
        let (s1, s2) = (self.sigma1(), self.sigma2());
        let std = |x: &ComplexMatrix| DualMatrix::from_standard(x.clone());
        let first = DualMatrix::from_blocks(&[
            &[&(&s1 * &std(&self.k1)), &(&s1 * &std(&self.l1))],
            &[&(&s2 * &std(&self.m1)), &(&s2 * &std(&self.n1))],
        ]);
        let second = DualMatrix::from_blocks(&[
            &[&(&s1 * &std(&self.k2)), &(&s1 * &std(&self.l2))],
            &[&(&s2 * &std(&self.m2)), &(&s2 * &std(&self.n2))],
        ]);
        // ε · second keeps only its standard part.
        let mid = DualMatrix::from_parts(first.standard().clone(), first.infinitesimal() + second.standard());
        &(&self.u * &mid) * &self.u.adjoint()
    }

    /// `Û ([Σ₁sK₁ Σ₁sL₁; 0 0] + ε[Σ₁dK₁+Σ₁sK₂ Σ₁dL₁+Σ₁sL₂; Σ₂dM₁ Σ₂dN₁]) Û*`.
    pub fn reconstruct_split(&self) -> DualMatrix {
        let s1s = ComplexMatrix::from_diag(&self.sigma1_s);
        let s1d = ComplexMatrix::from_diag(&self.sigma1_d);
        let s2d = ComplexMatrix::from_diag(&self.sigma2_d);
        let q = self.sigma2_d.len();
        let n = self.r() + q;
        let std_top = ComplexMatrix::from_blocks(&[&[&(&s1s * &self.k1), &(&s1s * &self.l1)]]);
        let std = ComplexMatrix::from_blocks(&[&[&std_top], &[&ComplexMatrix::zeros(q, n)]]);
        let inf = ComplexMatrix::from_blocks(&[
            &[
                &(&(&s1d * &self.k1) + &(&s1s * &self.k2)),
                &(&(&s1d * &self.l1) + &(&s1s * &self.l2)),
            ],
            &[&(&s2d * &self.m1), &(&s2d * &self.n1)],
        ]);
        let mid = DualMatrix::from_parts(std, inf);
        &(&self.u * &mid) * &self.u.adjoint()
    }
}

pub fn hs_basic(a: &DualMatrix, tol: &Tolerances) -> Result<HsBasic> {
    Ok(HsDecomposition::new(a, tol)?.basic())
}

pub fn hs_partitioned(a: &DualMatrix, tol: &Tolerances) -> Result<HsPartitioned> {
    Ok(HsDecomposition::new(a, tol)?.partitioned())
}

pub fn hs_refined(a: &DualMatrix, tol: &Tolerances) -> Result<HsRefined> {
    Ok(HsDecomposition::new(a, tol)?.refined())
}

pub fn essential_in_hs(a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    Ok(HsDecomposition::new(a, tol)?.essential())
}
