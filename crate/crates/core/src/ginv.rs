//! Dual generalized inverses: DMPGI, NDMPI, DGGI and DCGI, each by a closed
//! formula over standard-part inverses and by the H-S decomposition, plus
//! their existence tests.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cmatrix::{core_inv, group_inv, pinv, singular_values, ComplexMatrix};
use crate::config::Tolerances;
use crate::dmatrix::DualMatrix;
use crate::dsvd::DualSvd;
use crate::dualnum::DualReal;
use crate::error::{Error, Result};
use crate::hsd::HsDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InverseKind {
    Dmpgi,
    Ndmpi,
    Dggi,
    Dcgi,
}

impl InverseKind {
    pub const ALL: [InverseKind; 4] = [
        InverseKind::Dmpgi,
        InverseKind::Ndmpi,
        InverseKind::Dggi,
        InverseKind::Dcgi,
    ];
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InverseKind::Dmpgi => "DMPGI",
            InverseKind::Ndmpi => "NDMPI",
            InverseKind::Dggi => "DGGI",
            InverseKind::Dcgi => "DCGI",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Decomposition,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Decomposition => "decomposition",
        })
    }
}

#[derive(Debug, Clone)]
pub struct GinvResult {
    pub kind: InverseKind,
    pub method: Method,
    pub value: DualMatrix,
    /// `R` in `value = X_s − εR`.
    pub correction: ComplexMatrix,
    /// Relative residual of each defining equation.
    pub residuals: Vec<(String, f64)>,
}

impl GinvResult {
    fn new(kind: InverseKind, method: Method, a: &DualMatrix, value: DualMatrix, tol: &Tolerances) -> Result<Self> {
        let residuals = verify_defining_equations(kind, a, &value, tol)?;
        let correction = -value.infinitesimal();
        Ok(GinvResult {
            kind,
            method,
            value,
            correction,
            residuals,
        })
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }
}

/// One existence criterion evaluated on its own.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Predicate {
    pub name: &'static str,
    pub holds: bool,
    /// Decades between the deciding quantity and its threshold (the smallest
    /// such distance when several quantities are involved).
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExistenceReport {
    /// What is being decided, e.g. `"DMPGI exists"`.
    pub subject: &'static str,
    pub predicates: Vec<Predicate>,
    pub agree: bool,
    pub exists: bool,
    /// Some predicate sits within one decade of its threshold.
    pub borderline: bool,
}

impl ExistenceReport {
    fn from_predicates(subject: &'static str, predicates: Vec<Predicate>) -> Self {
        let first = predicates.first().is_none_or(|p| p.holds);
        let agree = predicates.iter().all(|p| p.holds == first);
        let borderline = predicates.iter().any(|p| p.margin < 1.0);
        ExistenceReport {
            subject,
            predicates,
            agree,
            exists: agree && first,
            borderline,
        }
    }

    /// `Ok(())` when the object exists, `ToleranceBreach` when the predicates
    /// disagree, `missing` otherwise.
    fn require(&self, missing: Error) -> Result<()> {
        if !self.agree {
            let detail: Vec<String> = self
                .predicates
                .iter()
                .map(|p| format!("{}={} (margin {:.2})", p.name, p.holds, p.margin))
                .collect();
            return Err(Error::ToleranceBreach(format!(
                "existence predicates for '{}' disagree: {}",
                self.subject,
                detail.join(", ")
            )));
        }
        if self.exists {
            Ok(())
        } else {
            Err(missing)
        }
    }
}

fn decades(value: f64, threshold: f64) -> f64 {
    if value <= 0.0 || threshold <= 0.0 {
        f64::INFINITY
    } else {
        (value / threshold).log10().abs()
    }
}

/// Rank with an absolute cutoff, and the margin of the closest singular value.
fn rank_at(m: &ComplexMatrix, threshold: f64, tol: &Tolerances) -> Result<(usize, f64)> {
    let sv = singular_values(m, tol)?;
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    let margin = sv.iter().map(|&s| decades(s, threshold)).fold(f64::INFINITY, f64::min);
    Ok((rank, margin))
}

/// Structural threshold for a matrix: `zero · max(1, ‖M‖_max)`.
fn zero_cut(m: &ComplexMatrix, tol: &Tolerances) -> f64 {
    tol.zero * m.max_abs().max(1.0)
}

/// `(I − A_s A_s†) A_d (I − A_s† A_s)`.
fn residual_projection(a: &DualMatrix, ps: &ComplexMatrix) -> ComplexMatrix {
    let (a_s, a_d) = (a.standard(), a.infinitesimal());
    let left = &ComplexMatrix::identity(a.rows()) - &(a_s * ps);
    let right = &ComplexMatrix::identity(a.cols()) - &(ps * a_s);
    &(&left * a_d) * &right
}

fn projector_predicate(a: &DualMatrix, tol: &Tolerances) -> Result<Predicate> {
    let ps = pinv(a.standard(), tol)?;
    let size = residual_projection(a, &ps).max_abs();
    let thr = tol.zero * a.scale();
    Ok(Predicate {
        name: "projector condition",
        holds: size <= thr,
        margin: decades(size, thr),
    })
}

/// The appreciable-rank decision and the infinitesimal singular values,
/// each measured against its own cutoff.
fn svd_margin(a: &DualMatrix, svd: &DualSvd, tol: &Tolerances) -> f64 {
    let sv = singular_values(a.standard(), tol).unwrap_or_default();
    let smax = sv.first().copied().unwrap_or(0.0);
    let rank_thr = tol.rank_threshold(a.rows(), a.cols(), smax);
    let zero_thr = tol.zero * a.scale();
    let m1 = sv.iter().map(|&s| decades(s, rank_thr)).fold(f64::INFINITY, f64::min);
    let m2 = svd
        .null_sigma
        .iter()
        .map(|&s| decades(s, zero_thr))
        .fold(f64::INFINITY, f64::min);
    m1.min(m2)
}

/// Evaluates the projector condition, the bordered-rank condition and
/// `ARank = Rank` independently.
pub fn dmpgi_exists(a: &DualMatrix, tol: &Tolerances) -> Result<ExistenceReport> {
    let b = projector_predicate(a, tol)?;

    let (a_s, a_d) = (a.standard(), a.infinitesimal());
    let zero = ComplexMatrix::zeros(a.rows(), a.cols());
    let bordered = ComplexMatrix::from_blocks(&[&[a_d, a_s], &[a_s, &zero]]);
    let thr = tol.zero * a.scale();
    let (rb, mb) = rank_at(&bordered, thr, tol)?;
    let (rs, ms) = rank_at(a_s, thr, tol)?;
    let c = Predicate {
        name: "bordered rank",
        holds: rb == 2 * rs,
        margin: mb.min(ms),
    };

    let svd = crate::dsvd::dual_svd(a, tol)?;
    let e = Predicate {
        name: "ARank = Rank",
        holds: svd.r == svd.t,
        margin: svd_margin(a, &svd, tol),
    };
    Ok(ExistenceReport::from_predicates("DMPGI exists", vec![b, c, e]))
}

/// Evaluates `AInd = 1 ∧ DMPGI exists`, `K₁ invertible ∧ Σ₂d = 0` and
/// `K invertible ∧ Σ₂d = 0` independently.
pub fn dual_index_is_one(a: &DualMatrix, tol: &Tolerances) -> Result<ExistenceReport> {
    if !a.is_square() {
        return Err(Error::shape("dual index", a.shape(), a.shape()));
    }
    let a_s = a.standard();
    let sq = a_s * a_s;
    let (r1, m1) = rank_at(a_s, zero_cut(a_s, tol), tol)?;
    let (r2, m2) = rank_at(&sq, zero_cut(&sq, tol), tol)?;
    let proj = projector_predicate(a, tol)?;
    let b = Predicate {
        name: "AInd = 1 and DMPGI exists",
        holds: r1 == r2 && proj.holds,
        margin: m1.min(m2).min(proj.margin),
    };

    let hs = HsDecomposition::new(a, tol)?;
    let r = hs.svd.r;
    let part = hs.partitioned();
    let k1 = part.k.standard();
    let (rk, mk) = rank_at(k1, tol.zero, tol)?;
    let e = Predicate {
        name: "K1 invertible and Sigma2d = 0",
        holds: rk == r && hs.svd.t == r,
        margin: mk.min(svd_margin(a, &hs.svd, tol)),
    };

    // K through its elimination pivots, Σ₂ through the trailing rows of Û*ÂÛ.
    let pivot = min_pivot(k1);
    let k_inv = pivot > tol.zero && part.k.inv().is_ok();
    let n = a.rows();
    let core = &(&hs.svd.u.adjoint() * a) * &hs.svd.u;
    let tail = core.block(r, 0, n - r, n).max_abs();
    let thr = tol.zero * a.scale();
    let f = Predicate {
        name: "K invertible and Sigma2d = 0",
        holds: k_inv && tail <= thr,
        margin: decades(pivot, tol.zero).min(decades(tail, thr)),
    };
    Ok(ExistenceReport::from_predicates("dual index one", vec![b, e, f]))
}

/// Smallest pivot modulus of Gaussian elimination with partial pivoting.
/// Zero for a singular matrix, one for an empty one. Only applied to blocks
/// of unitary matrices, whose entries are at most one.
fn min_pivot(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    if n == 0 {
        return 1.0;
    }
    let mut w: Vec<Vec<_>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    let mut smallest = f64::INFINITY;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| w[i][k].norm().total_cmp(&w[j][k].norm()))
            .unwrap();
        w.swap(k, p);
        let piv = w[k][k];
        smallest = smallest.min(piv.norm());
        if piv.norm() == 0.0 {
            return 0.0;
        }
        let pivot_row = w[k].clone();
        for row in w.iter_mut().skip(k + 1) {
            let f = row[k] / piv;
            for (x, &t) in row.iter_mut().zip(&pivot_row).skip(k) {
                *x -= f * t;
            }
        }
    }
    smallest
}

/// `Â − ε (I − A_sA_s†) A_d (I − A_s†A_s)`, the essential part without a
/// dual SVD.
pub fn essential_by_projection(a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    let ps = pinv(a.standard(), tol)?;
    let drop = residual_projection(a, &ps);
    Ok(DualMatrix::from_parts(a.standard().clone(), a.infinitesimal() - &drop))
}

/// `R` with `Â† = A_s† − εR`.
fn mp_correction(a: &DualMatrix, tol: &Tolerances) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (a_s, a_d) = (a.standard(), a.infinitesimal());
    let p = pinv(a_s, tol)?;
    let (m, n) = a.shape();
    let a_dh = a_d.adjoint();
    let left = &ComplexMatrix::identity(m) - &(a_s * &p);
    let right = &ComplexMatrix::identity(n) - &(&p * a_s);
    // (A*A)† = A†A†* and (AA*)† = A†*A†, without squaring the condition.
    let ss = &p * &p.adjoint();
    let tt = &p.adjoint() * &p;
    let r = &(&(&(&p * a_d) * &p) - &(&(&ss * &a_dh) * &left)) - &(&(&right * &a_dh) * &tt);
    Ok((p, r))
}

fn from_correction(s: ComplexMatrix, r: &ComplexMatrix) -> DualMatrix {
    DualMatrix::from_parts(s, -r)
}

/// `Σ₁⁻¹` as a dual diagonal matrix.
fn sigma1_inv(svd: &DualSvd) -> Result<DualMatrix> {
    let inv = svd.sigma[..svd.r]
        .iter()
        .map(|x| x.inv())
        .collect::<Result<Vec<DualReal>>>()?;
    Ok(DualMatrix::diag_rect(svd.r, svd.r, &inv))
}

/// `Û [K*Σ₁⁻¹ 0; L*Σ₁⁻¹ 0] Û*` for square input, `V̂ [Σ₁⁻¹ 0; 0 0] Û*` otherwise.
fn mp_by_decomposition(a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    if a.is_square() {
        let hs = HsDecomposition::new(a, tol)?;
        let (n, r) = (a.rows(), hs.svd.r);
        let p = hs.partitioned();
        let si = sigma1_inv(&hs.svd)?;
        let left = DualMatrix::from_blocks(&[&[&(&p.k.adjoint() * &si)], &[&(&p.l.adjoint() * &si)]]);
        let mid = DualMatrix::from_blocks(&[&[&left, &DualMatrix::zeros(n, n - r)]]);
        Ok(&(&hs.svd.u * &mid) * &hs.svd.u.adjoint())
    } else {
        let svd = crate::dsvd::dual_svd(a, tol)?;
        let (m, n, r) = (a.rows(), a.cols(), svd.r);
        let si = sigma1_inv(&svd)?;
        let mid = DualMatrix::from_blocks(&[
            &[&si, &DualMatrix::zeros(r, m - r)],
            &[&DualMatrix::zeros(n - r, r), &DualMatrix::zeros(n - r, m - r)],
        ]);
        Ok(&(&svd.v * &mid) * &svd.u.adjoint())
    }
}

pub fn dmpgi(a: &DualMatrix, method: Method, tol: &Tolerances) -> Result<GinvResult> {
    let kind = InverseKind::Dmpgi;
    dmpgi_exists(a, tol)?.require(Error::InverseNotExists { kind })?;
    let value = match method {
        Method::Formula => {
            let (p, r) = mp_correction(a, tol)?;
            from_correction(p, &r)
        }
        Method::Decomposition => mp_by_decomposition(a, tol)?,
    };
    GinvResult::new(kind, method, a, value, tol)
}

/// The NDMPI always exists; the formula route applies the DMPGI formula to
/// the essential part.
pub fn ndmpi(a: &DualMatrix, method: Method, tol: &Tolerances) -> Result<GinvResult> {
    let value = match method {
        Method::Formula => {
            let e = essential_by_projection(a, tol)?;
            let (p, r) = mp_correction(&e, tol)?;
            from_correction(p, &r)
        }
        Method::Decomposition => mp_by_decomposition(a, tol)?,
    };
    GinvResult::new(InverseKind::Ndmpi, method, a, value, tol)
}

fn require_index_one(a: &DualMatrix, tol: &Tolerances) -> Result<()> {
    if !a.is_square() {
        return Err(Error::shape("group/core inverse", a.shape(), a.shape()));
    }
    dual_index_is_one(a, tol)?.require(Error::NotIndexOne)
}

/// Shared pieces of the H-S route for the group and core inverses:
/// `(Û, K⁻¹Σ₁⁻¹, L, r)`.
fn index_one_blocks(
    a: &DualMatrix,
    tol: &Tolerances,
) -> Result<(DualMatrix, DualMatrix, DualMatrix, DualMatrix, usize)> {
    let hs = HsDecomposition::new(a, tol)?;
    let p = hs.partitioned();
    let k_inv = p.k.inv()?;
    let t = &k_inv * &sigma1_inv(&hs.svd)?;
    Ok((hs.svd.u.clone(), t, k_inv, p.l, hs.svd.r))
}

pub fn dggi(a: &DualMatrix, method: Method, tol: &Tolerances) -> Result<GinvResult> {
    require_index_one(a, tol)?;
    let value = match method {
        Method::Formula => {
            let (a_s, a_d) = (a.standard(), a.infinitesimal());
            let g = group_inv(a_s, tol)?;
            let g2 = &g * &g;
            let q = &ComplexMatrix::identity(a.rows()) - &(a_s * &g);
            let r = &(&(&(&g * a_d) * &g) - &(&(&g2 * a_d) * &q)) - &(&(&q * a_d) * &g2);
            from_correction(g, &r)
        }
        Method::Decomposition => {
            let (u, t, k_inv, l, r) = index_one_blocks(a, tol)?;
            let n = a.rows();
            let top = DualMatrix::from_blocks(&[&[&t, &(&(&t * &k_inv) * &l)]]);
            let mid = DualMatrix::from_blocks(&[&[&top], &[&DualMatrix::zeros(n - r, n)]]);
            &(&u * &mid) * &u.adjoint()
        }
    };
    GinvResult::new(InverseKind::Dggi, method, a, value, tol)
}

pub fn dcgi(a: &DualMatrix, method: Method, tol: &Tolerances) -> Result<GinvResult> {
    require_index_one(a, tol)?;
    let value = match method {
        Method::Formula => {
            let (a_s, a_d) = (a.standard(), a.infinitesimal());
            let n = a.rows();
            let c = core_inv(a_s, tol)?;
            let g = group_inv(a_s, tol)?;
            let p = pinv(a_s, tol)?;
            let id = ComplexMatrix::identity(n);
            let dp = a_d * &p;
            let r = &(&(&(&(&c * &dp) - &(&g * &dp)) + &(&(&g * a_d) * &c))
                - &(&(&c * &dp.adjoint()) * &(&id - &(a_s * &p))))
                - &(&(&(&(&id - &(a_s * &g)) * a_d) * &g) * &c);
            from_correction(c, &r)
        }
        Method::Decomposition => {
            let (u, t, _, _, r) = index_one_blocks(a, tol)?;
            let n = a.rows();
            let mid = DualMatrix::from_blocks(&[
                &[&t, &DualMatrix::zeros(r, n - r)],
                &[&DualMatrix::zeros(n - r, r), &DualMatrix::zeros(n - r, n - r)],
            ]);
            &(&u * &mid) * &u.adjoint()
        }
    };
    GinvResult::new(InverseKind::Dcgi, method, a, value, tol)
}

pub fn compute(kind: InverseKind, a: &DualMatrix, method: Method, tol: &Tolerances) -> Result<GinvResult> {
    match kind {
        InverseKind::Dmpgi => dmpgi(a, method, tol),
        InverseKind::Ndmpi => ndmpi(a, method, tol),
        InverseKind::Dggi => dggi(a, method, tol),
        InverseKind::Dcgi => dcgi(a, method, tol),
    }
}

/// `‖lhs − rhs‖_max / scale` over both parts.
fn rel(lhs: &DualMatrix, rhs: &DualMatrix, scale: f64) -> f64 {
    let (s, d) = lhs.max_abs_diff(rhs);
    s.max(d) / scale
}

/// Residual of each defining equation of `kind` for the candidate `x`,
/// relative to the scales of the factors involved.
pub fn verify_defining_equations(
    kind: InverseKind,
    a: &DualMatrix,
    x: &DualMatrix,
    tol: &Tolerances,
) -> Result<Vec<(String, f64)>> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::shape("defining equations", a.shape(), x.shape()));
    }
    let (sa, sx) = (a.scale(), x.scale());
    let ax = a.try_mul(x)?;
    let xa = x.try_mul(a)?;
    let axa = &ax * a;
    let xax = &xa * x;
    let mut out = Vec::new();
    match kind {
        InverseKind::Dmpgi | InverseKind::Ndmpi => {
            if kind == InverseKind::Dmpgi {
                out.push(("AXA=A".to_string(), rel(&axa, a, sa * sa * sx)));
            } else {
                let e = essential_by_projection(a, tol)?;
                out.push(("AXA=A_e".to_string(), rel(&axa, &e, sa * sa * sx)));
            }
            out.push(("XAX=X".to_string(), rel(&xax, x, sx * sx * sa)));
            out.push(("(AX)*=AX".to_string(), rel(&ax.adjoint(), &ax, sa * sx)));
            out.push(("(XA)*=XA".to_string(), rel(&xa.adjoint(), &xa, sa * sx)));
        }
        InverseKind::Dggi => {
            if !a.is_square() {
                return Err(Error::shape("group inverse equations", a.shape(), a.shape()));
            }
            out.push(("AXA=A".to_string(), rel(&axa, a, sa * sa * sx)));
            out.push(("XAX=X".to_string(), rel(&xax, x, sx * sx * sa)));
            out.push(("AX=XA".to_string(), rel(&ax, &xa, sa * sx)));
        }
        InverseKind::Dcgi => {
            if !a.is_square() {
                return Err(Error::shape("core inverse equations", a.shape(), a.shape()));
            }
            out.push(("AXA=A".to_string(), rel(&axa, a, sa * sa * sx)));
            out.push(("AX^2=X".to_string(), rel(&(&ax * x), x, sx * sx * sa)));
            out.push(("(AX)*=AX".to_string(), rel(&ax.adjoint(), &ax, sa * sx)));
        }
    }
    Ok(out)
}
