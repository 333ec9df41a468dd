//! One function per CLI verb. Each returns the payload and residual table
//! that go into the report; none of them print.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use dualmat::dsvd::dual_svd;
use dualmat::gen::{Generator, LBlock};
use dualmat::ginv::{self, dmpgi_exists, dual_index_is_one, InverseKind, Method};
use dualmat::hsd::HsDecomposition;
use dualmat::relations::{
    coincidence, dcore_dominator, dcore_leq, dminus_leq, identity_suite_core, identity_suite_group,
    self_inverse_checks, IdentityReport, OrderKind,
};
use dualmat::{DualMatrix, Tolerances};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::io::{complex_rows, write_matrix, MatrixFile};
use crate::report::{Outcome, Residual};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Basic,
    Partitioned,
    Refined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Orders,
    Existence,
    Coincidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    DmpgiExists,
    Index1,
    DcorePair,
}

/// Largest entrywise difference of either part, relative to the larger
/// scale of the two.
pub fn relative_diff(x: &DualMatrix, y: &DualMatrix) -> f64 {
    let (s, d) = x.max_abs_diff(y);
    s.max(d) / x.scale().max(y.scale())
}

fn unitarity(u: &DualMatrix) -> f64 {
    let (s, d) = u.unitarity_error();
    s.max(d)
}

fn mf(a: &DualMatrix) -> MatrixFile {
    MatrixFile::from_dual(a)
}

pub fn svd(a: &DualMatrix, tol: &Tolerances) -> Result<Outcome, CliError> {
    let f = dual_svd(a, tol)?;
    let result = json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "r": f.r,
        "t": f.t,
        "sigma": f.sigma,
        "u": mf(&f.u),
        "v": mf(&f.v),
    });
    let residuals = vec![
        Residual::new("reconstruction", relative_diff(&f.reconstruct(), a), tol.residual),
        Residual::new("U unitarity", unitarity(&f.u), tol.residual),
        Residual::new("V unitarity", unitarity(&f.v), tol.residual),
    ];
    Ok(Outcome::new(result, residuals, true))
}

pub fn hsd(a: &DualMatrix, form: Form, tol: &Tolerances) -> Result<Outcome, CliError> {
    let h = HsDecomposition::new(a, tol)?;
    let res = |name: &str, v: f64| Residual::new(name, v, tol.residual);
    let (result, residuals) = match form {
        Form::Basic => {
            let b = h.basic();
            let result = json!({
                "form": form,
                "u": mf(&b.u),
                "sigma0": b.sigma0,
                "k0": mf(&b.k0),
                "l0": mf(&b.l0),
            });
            let residuals = vec![
                res("K0K0*+L0L0*=I", b.constraint_residual()),
                res("reconstruction", relative_diff(&b.reconstruct(), a)),
            ];
            (result, residuals)
        }
        Form::Partitioned => {
            let p = h.partitioned();
            let result = json!({
                "form": form,
                "u": mf(&p.u),
                "sigma1": p.sigma1,
                "sigma2": p.sigma2,
                "k": mf(&p.k),
                "l": mf(&p.l),
                "m": mf(&p.m),
                "n": mf(&p.n),
            });
            let mut residuals: Vec<Residual> = p.constraint_residuals().into_iter().map(|(n, v)| res(n, v)).collect();
            residuals.push(res("reconstruction", relative_diff(&p.reconstruct(), a)));
            (result, residuals)
        }
        Form::Refined => {
            let r = h.refined();
            let result = json!({
                "form": form,
                "u": mf(&r.u),
                "sigma1_s": r.sigma1_s,
                "sigma1_d": r.sigma1_d,
                "sigma2_d": r.sigma2_d,
                "k1": complex_rows(&r.k1),
                "k2": complex_rows(&r.k2),
                "l1": complex_rows(&r.l1),
                "l2": complex_rows(&r.l2),
                "m1": complex_rows(&r.m1),
                "m2": complex_rows(&r.m2),
                "n1": complex_rows(&r.n1),
                "n2": complex_rows(&r.n2),
            });
            let mut residuals: Vec<Residual> = r.constraint_residuals().into_iter().map(|(n, v)| res(n, v)).collect();
            residuals.push(res(
                "reconstruction (blockwise)",
                relative_diff(&r.reconstruct_blockwise(), a),
            ));
            residuals.push(res("reconstruction (split)", relative_diff(&r.reconstruct_split(), a)));
            (result, residuals)
        }
    };
    Ok(Outcome::new(result, residuals, true))
}

pub fn inv(a: &DualMatrix, kind: InverseKind, method: Method, tol: &Tolerances) -> Result<Outcome, CliError> {
    let g = ginv::compute(kind, a, method, tol)?;
    let result = json!({
        "kind": g.kind,
        "method": g.method,
        "value": mf(&g.value),
        "correction": complex_rows(&g.correction),
    });
    let residuals = g
        .residuals
        .iter()
        .map(|(n, v)| Residual::new(n.clone(), *v, tol.residual))
        .collect();
    Ok(Outcome::new(result, residuals, true))
}

fn identity_rows(report: &IdentityReport, prefix: &str, residuals: &mut Vec<Residual>) -> Value {
    let rows: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            residuals.push(Residual::new(
                format!("{prefix} {}", c.name),
                c.residual,
                report.tolerance,
            ));
            json!({"name": c.name, "residual": c.residual, "pass": c.pass, "note": c.note})
        })
        .collect();
    Value::Array(rows)
}

pub fn check(a: &DualMatrix, suite: Suite, tol: &Tolerances) -> Result<Outcome, CliError> {
    match suite {
        Suite::Identities => {
            let group = identity_suite_group(a, tol)?;
            let core = identity_suite_core(a, tol)?;
            let mut residuals = Vec::new();
            let result = json!({
                "suite": suite,
                "group": identity_rows(&group, "group", &mut residuals),
                "core": identity_rows(&core, "core", &mut residuals),
            });
            Ok(Outcome::new(result, residuals, true))
        }
        Suite::Orders => {
            // Reflexivity, then the pair built with P = I on the null block.
            let dcore_self = dcore_leq(a, a, tol)?;
            let dminus_self = dminus_leq(a, a, tol)?;
            let r = dual_svd(a, tol)?.r;
            let q = a.rows() - r;
            let b = dcore_dominator(a, &DualMatrix::identity(q), tol)?;
            let dcore = dcore_leq(a, &b, tol)?;
            let dminus = dminus_leq(a, &b, tol)?;
            let verdict = dcore_self.holds && dminus_self.holds && dcore.holds && dminus.holds;
            let result = json!({
                "suite": suite,
                "reflexive": {"dcore": dcore_self, "dminus": dminus_self},
                "dominator": mf(&b),
                "dominated": {"dcore": dcore, "dminus": dminus},
            });
            Ok(Outcome::new(result, Vec::new(), verdict))
        }
        Suite::Existence => {
            let mp = dmpgi_exists(a, tol)?;
            let idx = if a.is_square() {
                Some(dual_index_is_one(a, tol)?)
            } else {
                None
            };
            let verdict = mp.agree && idx.as_ref().is_none_or(|r| r.agree);
            let result = json!({"suite": suite, "dmpgi": mp, "index_one": idx});
            Ok(Outcome::new(result, Vec::new(), verdict))
        }
        Suite::Coincidence => {
            let c = coincidence(a, tol)?;
            let eqs = self_inverse_checks(a, tol)?;
            let verdict = c.jointly_consistent() && eqs.iter().all(|e| e.agree());
            let statements: Vec<Value> = c
                .checks
                .iter()
                .map(|x| json!({"name": x.name, "holds": x.pass, "residual": x.residual}))
                .collect();
            let result = json!({
                "suite": suite,
                "statements": statements,
                "jointly_consistent": c.jointly_consistent(),
                "self_inverse": eqs,
            });
            Ok(Outcome::new(result, Vec::new(), verdict))
        }
    }
}

pub fn order(a: &DualMatrix, b: &DualMatrix, kind: OrderKind, tol: &Tolerances) -> Result<Outcome, CliError> {
    let v = match kind {
        OrderKind::Dcore => dcore_leq(a, b, tol)?,
        OrderKind::Dminus => dminus_leq(a, b, tol)?,
    };
    let holds = v.holds;
    Ok(Outcome::new(
        serde_json::to_value(v).expect("verdicts serialize"),
        Vec::new(),
        holds,
    ))
}

/// A generated instance and the re-check it passed.
#[derive(Debug, Clone)]
pub struct Generated {
    pub a: DualMatrix,
    pub b: Option<DualMatrix>,
    pub verification: Value,
}

/// Builds an instance of the requested kind and checks it through the
/// corresponding predicate before handing it out.
pub fn generate(kind: GenKind, n: usize, seed: u64, tol: &Tolerances) -> Result<Generated, CliError> {
    if n == 0 {
        return Err(CliError::Invalid("n must be at least 1".into()));
    }
    let mut g = Generator::with_tolerances(seed, *tol);
    match kind {
        GenKind::DmpgiExists => {
            let a = g.dmpgi_exists(n, n)?;
            let rep = dmpgi_exists(&a, tol)?;
            if !(rep.exists && rep.agree) {
                return Err(CliError::Unverified(format!("DMPGI predicates: {rep:?}")));
            }
            Ok(Generated {
                a,
                b: None,
                verification: json!(rep),
            })
        }
        GenKind::Index1 => {
            let a = g.index_one(n, LBlock::Any)?.a;
            let rep = dual_index_is_one(&a, tol)?;
            if !(rep.exists && rep.agree) {
                return Err(CliError::Unverified(format!("index-one predicates: {rep:?}")));
            }
            Ok(Generated {
                a,
                b: None,
                verification: json!(rep),
            })
        }
        GenKind::DcorePair => {
            let (a, b) = g.dcore_pair(n)?;
            let dcore = dcore_leq(&a, &b, tol)?;
            let dminus = dminus_leq(&a, &b, tol)?;
            if !(dcore.holds && dminus.holds) {
                return Err(CliError::Unverified(format!("order checks: {dcore:?} {dminus:?}")));
            }
            Ok(Generated {
                a,
                b: Some(b),
                verification: json!({"dcore": dcore, "dminus": dminus}),
            })
        }
    }
}

/// `pair.json` becomes `pair_a.json` and `pair_b.json`.
pub fn pair_paths(path: &Path) -> (PathBuf, PathBuf) {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|e| format!(".{}", e.to_string_lossy()))
        .unwrap_or_default();
    (
        path.with_file_name(format!("{stem}_a{ext}")),
        path.with_file_name(format!("{stem}_b{ext}")),
    )
}

/// Runs the generator and, when `output` is given, writes the matrices
/// there. The report carries the matrices either way.
pub fn gen(kind: GenKind, n: usize, seed: u64, output: Option<&Path>, tol: &Tolerances) -> Result<Outcome, CliError> {
    let g = generate(kind, n, seed, tol)?;
    let mut written = Vec::new();
    if let Some(path) = output {
        match &g.b {
            None => {
                write_matrix(path, &g.a)?;
                written.push(path.display().to_string());
            }
            Some(b) => {
                let (pa, pb) = pair_paths(path);
                write_matrix(&pa, &g.a)?;
                write_matrix(&pb, b)?;
                written.push(pa.display().to_string());
                written.push(pb.display().to_string());
            }
        }
    }
    let result = json!({
        "kind": kind,
        "n": n,
        "seed": seed,
        "a": mf(&g.a),
        "b": g.b.as_ref().map(mf),
        "verification": g.verification,
        "written": written,
    });
    Ok(Outcome::new(result, Vec::new(), true))
}
