//! Relations among the inverses of a dual index-one matrix: coincidence
//! and self-inverse characterizations, the composite identity suites, and
//! the dual core and dual minus partial orders.

use std::fmt;

use serde::Serialize;

use crate::cmatrix::{singular_values, ComplexMatrix};
use crate::config::Tolerances;
use crate::dmatrix::DualMatrix;
use crate::error::{Error, Result};
use crate::ginv::{dcgi, dggi, dmpgi, dmpgi_exists, dual_index_is_one, ndmpi, Method};
use crate::hsd::HsDecomposition;

/// One checked equality. `lhs`/`rhs` are absent when a side could not be
/// computed; `note` then carries the reason.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: Option<DualMatrix>,
    pub rhs: Option<DualMatrix>,
    /// `‖lhs − rhs‖_max / scale` over both parts, infinite if a side failed.
    pub residual: f64,
    pub pass: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub tolerance: f64,
}

impl IdentityReport {
    fn new(tolerance: f64) -> Self {
        IdentityReport {
            checks: Vec::new(),
            tolerance,
        }
    }

    fn push(&mut self, name: &str, sides: Result<(DualMatrix, DualMatrix)>) {
        let check = match sides {
            Ok((lhs, rhs)) => {
                let residual = if lhs.shape() == rhs.shape() {
                    let (s, d) = lhs.max_abs_diff(&rhs);
                    s.max(d) / lhs.scale().max(rhs.scale())
                } else {
                    f64::INFINITY
                };
                IdentityCheck {
                    name: name.to_string(),
                    pass: residual < self.tolerance,
                    residual,
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                    note: None,
                }
            }
            Err(e) => IdentityCheck {
                name: name.to_string(),
                lhs: None,
                rhs: None,
                residual: f64::INFINITY,
                pass: false,
                note: Some(e.to_string()),
            },
        };
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Every check passes or every check fails.
    pub fn jointly_consistent(&self) -> bool {
        let first = self.checks.first().is_none_or(|c| c.pass);
        self.checks.iter().all(|c| c.pass == first)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Both sides of `left ⇔ right`, each decided on its own.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equivalence {
    pub name: &'static str,
    pub left: bool,
    pub right: bool,
    pub left_residual: f64,
    pub right_residual: f64,
}

impl Equivalence {
    pub fn agree(&self) -> bool {
        self.left == self.right
    }
}

fn require_index_one(a: &DualMatrix, tol: &Tolerances) -> Result<()> {
    if !a.is_square() {
        return Err(Error::shape("dual index", a.shape(), a.shape()));
    }
    let report = dual_index_is_one(a, tol)?;
    if !report.agree {
        return Err(Error::ToleranceBreach(format!(
            "index-one predicates disagree for input of shape {:?}",
            a.shape()
        )));
    }
    if !report.exists {
        return Err(Error::NotIndexOne);
    }
    Ok(())
}

fn mp(a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    Ok(dmpgi(a, Method::Formula, tol)?.value)
}

fn group(a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    Ok(dggi(a, Method::Formula, tol)?.value)
}

fn core(a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    Ok(dcgi(a, Method::Formula, tol)?.value)
}

fn rel(x: &DualMatrix, y: &DualMatrix) -> f64 {
    let (s, d) = x.max_abs_diff(y);
    s.max(d) / x.scale().max(y.scale())
}

/// The statements `Â^N = Â^#`, `Â^N = Â^⊕`, `Â^# = Â^⊕` and `L = 0`, which
/// hold or fail together for a dual index-one matrix.
pub fn coincidence(a: &DualMatrix, tol: &Tolerances) -> Result<IdentityReport> {
    require_index_one(a, tol)?;
    let n_inv = ndmpi(a, Method::Formula, tol)?.value;
    let g = group(a, tol)?;
    let c = core(a, tol)?;
    let l = HsDecomposition::new(a, tol)?.partitioned().l;
    let mut out = IdentityReport::new(tol.identity);
    out.push("A^N=A^#", Ok((n_inv.clone(), g.clone())));
    out.push("A^N=A^core", Ok((n_inv, c.clone())));
    out.push("A^#=A^core", Ok((g, c)));
    let zero = DualMatrix::zeros(l.rows(), l.cols());
    out.push("L=0", Ok((l, zero)));
    Ok(out)
}

/// `Â = Â^# ⇔ (Σ₁K)² = I`, `Â = Â^⊕ ⇔ L = 0 ∧ (Σ₁K)² = I`,
/// `Â* = Â^# ⇔ L = 0 ∧ Σ₁ = I`, `Â* = Â^⊕ ⇔ L = 0 ∧ Σ₁ = I`.
pub fn self_inverse_checks(a: &DualMatrix, tol: &Tolerances) -> Result<Vec<Equivalence>> {
    require_index_one(a, tol)?;
    let g = group(a, tol)?;
    let c = core(a, tol)?;
    let ah = a.adjoint();

    let hs = HsDecomposition::new(a, tol)?;
    let p = hs.partitioned();
    let r = p.r();
    let s1 = DualMatrix::diag_rect(r, r, &p.sigma1);
    let t = &s1 * &p.k;
    let sq = rel(&(&t * &t), &DualMatrix::identity(r));
    let l0 = p.l.max_abs() / p.l.scale();
    let s1i = rel(&s1, &DualMatrix::identity(r));

    let eps = tol.identity;
    let eq = |x: &DualMatrix, y: &DualMatrix| rel(x, y);
    let both = |u: f64, v: f64| u.max(v);
    let mk = |name, left: f64, right: f64| Equivalence {
        name,
        left: left < eps,
        right: right < eps,
        left_residual: left,
        right_residual: right,
    };
    Ok(vec![
        mk("A=A^# <=> (S1K)^2=I", eq(a, &g), sq),
        mk("A=A^core <=> L=0 and (S1K)^2=I", eq(a, &c), both(l0, sq)),
        mk("A*=A^# <=> L=0 and S1=I", eq(&ah, &g), both(l0, s1i)),
        mk("A*=A^core <=> L=0 and S1=I", eq(&ah, &c), both(l0, s1i)),
    ])
}

/// The eight group-inverse identities (a)–(h); every side is rebuilt from
/// `a` without sharing intermediates with the other side.
pub fn identity_suite_group(a: &DualMatrix, tol: &Tolerances) -> Result<IdentityReport> {
    require_index_one(a, tol)?;
    let t = tol;
    let mut out = IdentityReport::new(tol.identity);
    let cube = |a: &DualMatrix| &(a * a) * a;

    out.push(
        "(a) A^# = A (A^3)^+ A",
        (|| Ok((group(a, t)?, &(a * &mp(&cube(a), t)?) * a)))(),
    );
    out.push("(b) (A^#)^# = A", (|| Ok((group(&group(a, t)?, t)?, a.clone())))());
    out.push(
        "(c) (A^#)^+ = A^+ A^3 A^+",
        (|| {
            let p = mp(a, t)?;
            Ok((mp(&group(a, t)?, t)?, &(&p * &cube(a)) * &p))
        })(),
    );
    out.push(
        "(d) (A*)^# = (A^#)*",
        (|| Ok((group(&a.adjoint(), t)?, group(a, t)?.adjoint())))(),
    );
    out.push(
        "(e) A A^# (A^#)^+ = A^2 A^+",
        (|| {
            let g = group(a, t)?;
            let gp = mp(&group(a, t)?, t)?;
            Ok((&(a * &g) * &gp, &(a * a) * &mp(a, t)?))
        })(),
    );
    out.push(
        "(f) (A^#)^+ A^# A = A",
        (|| Ok((&(&mp(&group(a, t)?, t)? * &group(a, t)?) * a, a.clone())))(),
    );
    out.push(
        "(g) (A*)^# = (A^+)^#",
        (|| Ok((group(&a.adjoint(), t)?, group(&mp(a, t)?, t)?)))(),
    );
    out.push(
        "(h) (A^+)^# = (A*)^# A* A A* (A*)^#",
        (|| {
            let ah = a.adjoint();
            let gh = group(&ah, t)?;
            let mid = &(&ah * a) * &ah;
            Ok((group(&mp(a, t)?, t)?, &(&gh * &mid) * &group(&a.adjoint(), t)?))
        })(),
    );
    Ok(out)
}

/// The seven core-inverse identities (a)–(g), sides rebuilt independently.
pub fn identity_suite_core(a: &DualMatrix, tol: &Tolerances) -> Result<IdentityReport> {
    require_index_one(a, tol)?;
    let t = tol;
    let mut out = IdentityReport::new(tol.identity);
    let sq_mp = |a: &DualMatrix| -> Result<DualMatrix> { Ok(&(a * a) * &mp(a, t)?) };

    out.push(
        "(a) A^core = A^# A A^+",
        (|| Ok((core(a, t)?, &(&group(a, t)? * a) * &mp(a, t)?)))(),
    );
    out.push("(b) (A^core)^+ = A^2 A^+", (|| Ok((mp(&core(a, t)?, t)?, sq_mp(a)?)))());
    out.push(
        "(c) (A^core)^+ = (A^core)^#",
        (|| Ok((mp(&core(a, t)?, t)?, group(&core(a, t)?, t)?)))(),
    );
    out.push(
        "(d) (A^core)^core = A^2 A^+",
        (|| Ok((core(&core(a, t)?, t)?, sq_mp(a)?)))(),
    );
    out.push("(e) A^core A = A^# A", (|| Ok((&core(a, t)? * a, &group(a, t)? * a)))());
    out.push(
        "(f) (A^core)^2 A = A^#",
        (|| {
            let c = core(a, t)?;
            Ok((&(&c * &c) * a, group(a, t)?))
        })(),
    );
    out.push(
        "(g) A^core (A^core)^+ = (A^core)^+ A^core",
        (|| {
            let c1 = core(a, t)?;
            let c2 = core(a, t)?;
            Ok((&c1 * &mp(&c2, t)?, &mp(&c1, t)? * &c2))
        })(),
    );
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Dcore,
    Dminus,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Dcore => "dcore",
            OrderKind::Dminus => "dminus",
        })
    }
}

/// One sub-condition of an order relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub name: &'static str,
    pub holds: bool,
    /// Residual of the equality or rank gap behind the decision, if any.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub kind: OrderKind,
    pub holds: bool,
    pub evidence: Vec<Evidence>,
}

impl OrderVerdict {
    fn new(kind: OrderKind, evidence: Vec<Evidence>) -> Self {
        OrderVerdict {
            kind,
            holds: evidence.iter().all(|e| e.holds),
            evidence,
        }
    }
}

fn index_one(a: &DualMatrix, tol: &Tolerances) -> Result<bool> {
    let r = dual_index_is_one(a, tol)?;
    Ok(r.agree && r.exists)
}

/// `Â ≤ B̂` in the dual core order: both have dual index one,
/// `Â^⊕Â = Â^⊕B̂` and `ÂÂ^⊕ = B̂Â^⊕`.
pub fn dcore_leq(a: &DualMatrix, b: &DualMatrix, tol: &Tolerances) -> Result<OrderVerdict> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::shape("dual core order", a.shape(), b.shape()));
    }
    let ia = index_one(a, tol)?;
    let ib = index_one(b, tol)?;
    let mut ev = vec![
        Evidence {
            name: "A has dual index one",
            holds: ia,
            residual: None,
        },
        Evidence {
            name: "B has dual index one",
            holds: ib,
            residual: None,
        },
    ];
    let (left, right) = if ia {
        let c = core(a, tol)?;
        (rel(&(&c * a), &(&c * b)), rel(&(a * &c), &(b * &c)))
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    ev.push(Evidence {
        name: "A^core A = A^core B",
        holds: left < tol.identity,
        residual: Some(left),
    });
    ev.push(Evidence {
        name: "A A^core = B A^core",
        holds: right < tol.identity,
        residual: Some(right),
    });
    Ok(OrderVerdict::new(OrderKind::Dcore, ev))
}

fn structural_rank(m: &ComplexMatrix, tol: &Tolerances) -> Result<usize> {
    let thr = tol.zero * m.max_abs().max(1.0);
    Ok(singular_values(m, tol)?.iter().filter(|&&s| s > thr).count())
}

/// `Â ≤ B̂` in the dual minus order: `A_s` below `B_s` in the minus order
/// (rank subtractivity) and the DMPGIs of `Â`, `B̂` and `B̂ − Â` all exist.
pub fn dminus_leq(a: &DualMatrix, b: &DualMatrix, tol: &Tolerances) -> Result<OrderVerdict> {
    if a.shape() != b.shape() {
        return Err(Error::shape("dual minus order", a.shape(), b.shape()));
    }
    let diff = b - a;
    let ra = structural_rank(a.standard(), tol)? as i64;
    let rb = structural_rank(b.standard(), tol)? as i64;
    let rd = structural_rank(diff.standard(), tol)? as i64;
    let exists = |m: &DualMatrix| -> Result<bool> {
        let r = dmpgi_exists(m, tol)?;
        Ok(r.agree && r.exists)
    };
    let ev = vec![
        Evidence {
            name: "rank(Bs - As) = rank(Bs) - rank(As)",
            holds: rd == rb - ra,
            residual: Some((rd - (rb - ra)).abs() as f64),
        },
        Evidence {
            name: "A^+ exists",
            holds: exists(a)?,
            residual: None,
        },
        Evidence {
            name: "B^+ exists",
            holds: exists(b)?,
            residual: None,
        },
        Evidence {
            name: "(B - A)^+ exists",
            holds: exists(&diff)?,
            residual: None,
        },
    ];
    Ok(OrderVerdict::new(OrderKind::Dminus, ev))
}

/// `B̂ = Û [Σ₁K Σ₁L; 0 P] Û*` built from the canonical form of `a`; `p` must
/// be `(n − r) × (n − r)` with dual index one.
pub fn dcore_dominator(a: &DualMatrix, p: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    require_index_one(a, tol)?;
    let hs = HsDecomposition::new(a, tol)?;
    let part = hs.partitioned();
    let (n, r) = (a.rows(), part.r());
    if p.shape() != (n - r, n - r) {
        return Err(Error::shape("dominator block", (n - r, n - r), p.shape()));
    }
    require_index_one(p, tol)?;
    let s1 = DualMatrix::diag_rect(r, r, &part.sigma1);
    let mid = DualMatrix::from_blocks(&[
        &[&(&s1 * &part.k), &(&s1 * &part.l)],
        &[&DualMatrix::zeros(n - r, r), p],
    ]);
    Ok(&(&part.u * &mid) * &part.u.adjoint())
}
