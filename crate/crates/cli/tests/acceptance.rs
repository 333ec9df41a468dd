//! Acceptance criteria. Prints one `PASS`/`FAIL` line per criterion and
//! exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use dualmat::dsvd::dual_svd;
use dualmat::gen::{Generator, LBlock};
use dualmat::ginv::{self, dmpgi_exists, dual_index_is_one, InverseKind, Method};
use dualmat::hsd::hs_basic;
use dualmat::relations::{coincidence, dcore_leq, dminus_leq, identity_suite_core, identity_suite_group};
use dualmat::{DualMatrix, DualReal, Error, Tolerances};
use dualmat_cli::commands::{generate, GenKind};
use dualmat_cli::io::read_matrix;

const EXAMPLE_TOL: f64 = 1e-9;
const CROSS_METHOD_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-8;
const STRESS_TOL: f64 = 1e-8;
const SVD_TIME_LIMIT: Duration = Duration::from_secs(1);

const METHODS: [Method; 2] = [Method::Formula, Method::Decomposition];

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Largest entrywise deviation over both parts.
fn max_diff(x: &DualMatrix, y: &DualMatrix) -> f64 {
    let (s, d) = x.max_abs_diff(y);
    s.max(d)
}

fn sorted(v: &[DualReal]) -> Vec<DualReal> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn dual_values_match(got: &[DualReal], want: &[DualReal], tol: f64) -> bool {
    got.len() == want.len()
        && sorted(got)
            .iter()
            .zip(sorted(want))
            .all(|(g, w)| (g.s - w.s).abs() <= tol && (g.d - w.d).abs() <= tol)
}

/// `sigma = {1+ε, 2+ε, 3ε}`.
fn first_example_sigma() -> Vec<DualReal> {
    vec![
        DualReal::new(1.0, 1.0),
        DualReal::new(2.0, 1.0),
        DualReal::new(0.0, 3.0),
    ]
}

/// The printed Moore-Penrose inverse of the second example, which is also
/// the printed NDMPI of the first.
fn printed_mp_inverse() -> DualMatrix {
    DualMatrix::from_real_rows(
        &[[1.0, 0.0, 0.0, 0.0], [0.0, 0.5, 0.0, 0.0], [0.0; 4], [0.0; 4]],
        &[
            [-1.0, 1.5, -1.0, 1.0],
            [-1.5, -0.25, 0.5, -0.5],
            [0.0, -1.0, 0.0, 0.0],
            [-3.0, -0.5, 0.0, 0.0],
        ],
    )
    .unwrap()
}

fn printed_group_inverse() -> DualMatrix {
    DualMatrix::from_real_rows(
        &[[0.5, 0.0, 0.0], [0.0, 1.0 / 3.0, 0.0], [0.0; 3]],
        &[
            [-0.75, 1.0 / 6.0, -1.5],
            [-2.0 / 3.0, -4.0 / 9.0, 1.0 / 3.0],
            [-1.5, 0.0, 0.0],
        ],
    )
    .unwrap()
}

fn printed_core_inverse() -> DualMatrix {
    DualMatrix::from_real_rows(
        &[[0.5, 0.0, 0.0], [0.0, 1.0 / 3.0, 0.0], [0.0; 3]],
        &[
            [-0.75, 1.0 / 6.0, -1.5],
            [-2.0 / 3.0, -4.0 / 9.0, 0.0],
            [-1.5, 0.0, 0.0],
        ],
    )
    .unwrap()
}

fn sizes(i: usize) -> usize {
    2 + i % 9
}

fn c1_first_example_svd() -> Verdict {
    let start = Instant::now();
    let a = read_matrix(&fixture("example_3_1.json")).unwrap();
    let f = dual_svd(&a, &tol()).unwrap();
    let elapsed = start.elapsed();
    let recon = max_diff(&f.reconstruct(), &a);
    let sigma_ok = dual_values_match(&f.sigma, &first_example_sigma(), EXAMPLE_TOL);
    let pass = sigma_ok && f.r == 2 && f.t == 3 && recon < EXAMPLE_TOL && elapsed < SVD_TIME_LIMIT;
    let sigma: Vec<String> = f.sigma.iter().map(|x| x.to_string()).collect();
    verdict(
        pass,
        format!(
            "sigma [{}], r = {}, t = {}, reconstruction {recon:.1e}, {:.1} ms",
            sigma.join(", "),
            f.r,
            f.t,
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn c2_first_example_hs_basic() -> Verdict {
    let a = read_matrix(&fixture("example_3_1.json")).unwrap();
    let b = hs_basic(&a, &tol()).unwrap();
    let constraint = b.constraint_residual();
    let recon = max_diff(&b.reconstruct(), &a);
    let sigma_ok = dual_values_match(&b.sigma0, &first_example_sigma(), EXAMPLE_TOL);
    let pass = sigma_ok && b.t() == 3 && constraint < EXAMPLE_TOL && recon < EXAMPLE_TOL;
    verdict(
        pass,
        format!("constraint {constraint:.1e}, reconstruction {recon:.1e}, sigma matches: {sigma_ok}"),
    )
}

fn c3_dmpgi_and_ndmpi_examples() -> Verdict {
    let second = read_matrix(&fixture("example_3_2.json")).unwrap();
    let first = read_matrix(&fixture("example_3_1.json")).unwrap();
    let want = printed_mp_inverse();
    let mut worst: f64 = 0.0;
    let mut missing = Vec::new();
    for m in METHODS {
        match ginv::dmpgi(&second, m, &tol()) {
            Ok(x) => worst = worst.max(max_diff(&x.value, &want)),
            Err(e) => missing.push(format!("DMPGI/{m}: {e}")),
        }
        match ginv::ndmpi(&first, m, &tol()) {
            Ok(x) => worst = worst.max(max_diff(&x.value, &want)),
            Err(e) => missing.push(format!("NDMPI/{m}: {e}")),
        }
    }
    let refused = METHODS.iter().all(|&m| {
        matches!(
            ginv::dmpgi(&first, m, &tol()),
            Err(Error::InverseNotExists {
                kind: InverseKind::Dmpgi
            })
        )
    });
    let pass = missing.is_empty() && worst < EXAMPLE_TOL && refused;
    verdict(
        pass,
        format!("max deviation {worst:.1e}, DMPGI of first example refused: {refused} {missing:?}"),
    )
}

fn c4_group_and_core_example() -> Verdict {
    let a = read_matrix(&fixture("example_4_3.json")).unwrap();
    let mut worst: f64 = 0.0;
    let mut missing = Vec::new();
    for m in METHODS {
        for (kind, want) in [
            (InverseKind::Dggi, printed_group_inverse()),
            (InverseKind::Dcgi, printed_core_inverse()),
        ] {
            match ginv::compute(kind, &a, m, &tol()) {
                Ok(x) => worst = worst.max(max_diff(&x.value, &want)),
                Err(e) => missing.push(format!("{kind}/{m}: {e}")),
            }
        }
    }
    verdict(
        missing.is_empty() && worst < EXAMPLE_TOL,
        format!("max deviation {worst:.1e} {missing:?}"),
    )
}

fn c5_cross_method() -> Verdict {
    let t = tol();
    let (mut compared, mut both_refused, mut failures) = (0, 0, Vec::new());
    let (mut worst_diff, mut worst_res): (f64, f64) = (0.0, 0.0);
    for i in 0..200u64 {
        let n = sizes(i as usize);
        // Alternate index-one instances with DMPGI-only ones.
        let kind = if i % 2 == 0 {
            GenKind::Index1
        } else {
            GenKind::DmpgiExists
        };
        let a = generate(kind, n, 5000 + i, &t).unwrap().a;
        for k in InverseKind::ALL {
            let f = ginv::compute(k, &a, Method::Formula, &t);
            let d = ginv::compute(k, &a, Method::Decomposition, &t);
            match (f, d) {
                (Ok(f), Ok(d)) => {
                    compared += 1;
                    let diff = max_diff(&f.value, &d.value) / f.value.scale().max(d.value.scale());
                    let res = f.max_residual().max(d.max_residual());
                    worst_diff = worst_diff.max(diff);
                    worst_res = worst_res.max(res);
                    if !(diff < CROSS_METHOD_TOL && res < CROSS_METHOD_TOL) {
                        failures.push(format!(
                            "seed {} n {n} {k}: diff {diff:.1e} residual {res:.1e}",
                            5000 + i
                        ));
                    }
                }
                (Err(e1), Err(e2)) if e1 == e2 && matches!(k, InverseKind::Dggi | InverseKind::Dcgi) => {
                    both_refused += 1
                }
                (f, d) => failures.push(format!("seed {} n {n} {k}: {:?} vs {:?}", 5000 + i, f.err(), d.err())),
            }
        }
    }
    verdict(
        failures.is_empty() && compared >= 600,
        format!(
            "{compared} inverse pairs, {both_refused} refused by both routes, worst diff {worst_diff:.1e}·scale, worst residual {worst_res:.1e} {:?}",
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn c6_existence_predicates() -> Verdict {
    let t = tol();
    let mut g = Generator::new(6000);
    let (mut reports, mut borderline, mut disagree) = (0, 0, Vec::new());
    for i in 0..500 {
        let inst = g.mixed(sizes(i)).unwrap();
        for rep in [
            dmpgi_exists(&inst.a, &t).unwrap(),
            dual_index_is_one(&inst.a, &t).unwrap(),
        ] {
            reports += 1;
            if rep.borderline {
                borderline += 1;
            } else if !rep.agree {
                disagree.push(format!("instance {i} {:?}: {}", inst.category, rep.subject));
            }
        }
    }
    verdict(
        disagree.is_empty(),
        format!(
            "500 instances, {reports} reports, {borderline} borderline excluded, {} disagreements {:?}",
            disagree.len(),
            disagree.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn c7_identity_suites() -> Verdict {
    let t = tol();
    let mut instances: Vec<(String, DualMatrix)> = (0..100u64)
        .map(|i| {
            (
                format!("seed {}", 7000 + i),
                generate(GenKind::Index1, sizes(i as usize), 7000 + i, &t).unwrap().a,
            )
        })
        .collect();
    instances.push(("example".into(), read_matrix(&fixture("example_4_3.json")).unwrap()));
    let mut failing: std::collections::BTreeMap<String, (usize, f64)> = Default::default();
    let mut checks = 0;
    for (_, a) in &instances {
        let group = identity_suite_group(a, &t).unwrap();
        let core = identity_suite_core(a, &t).unwrap();
        for (suite, report) in [("group", group), ("core", core)] {
            for c in report.checks {
                checks += 1;
                if c.residual.is_nan() || c.residual >= IDENTITY_TOL {
                    let e = failing.entry(format!("{suite} {}", c.name)).or_insert((0, 0.0));
                    e.0 += 1;
                    e.1 = e.1.max(c.residual);
                }
            }
        }
    }
    let summary: Vec<String> = failing
        .iter()
        .map(|(k, (n, r))| format!("{k}: {n}/101 fail, max {r:.1e}"))
        .collect();
    verdict(
        failing.is_empty(),
        format!(
            "{} instances, {checks} identity checks; {}",
            instances.len(),
            summary.join("; ")
        ),
    )
}

fn c8_coincidence() -> Verdict {
    let t = tol();
    let mut g = Generator::new(8000);
    let mut bad = Vec::new();
    for i in 0..100 {
        let n = sizes(i);
        let (l, expect) = if i < 50 {
            (LBlock::Zero, true)
        } else {
            (LBlock::Nonzero, false)
        };
        let a = g.index_one(n, l).unwrap().a;
        let rep = coincidence(&a, &t).unwrap();
        let truth: Vec<bool> = rep.checks.iter().map(|c| c.pass).collect();
        if !rep.jointly_consistent() || truth.iter().any(|&x| x != expect) {
            bad.push(format!("instance {i} ({l:?}): {truth:?}"));
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "50 with L = 0 all true, 50 with L ≠ 0 all false; {} inconsistent {bad:?}",
            bad.len()
        ),
    )
}

fn c9_partial_orders() -> Verdict {
    let t = tol();
    let mut bad = Vec::new();
    for i in 0..100u64 {
        let n = sizes(i as usize);
        let g = generate(GenKind::DcorePair, n, 9000 + i, &t).unwrap();
        let b = g.b.unwrap();
        let dcore = dcore_leq(&g.a, &b, &t).unwrap().holds;
        let dminus = dminus_leq(&g.a, &b, &t).unwrap().holds;
        if !(dcore && dminus) {
            bad.push(format!("pair seed {}: dcore {dcore} dminus {dminus}", 9000 + i));
        }
    }
    let mut g = Generator::new(9500);
    for i in 0..100 {
        let (a, b) = g.perturbed_pair(sizes(i)).unwrap();
        if dcore_leq(&a, &b, &t).unwrap().holds {
            bad.push(format!("perturbed pair {i}: dcore holds"));
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "100 constructed pairs, 100 perturbed pairs; {} wrong {bad:?}",
            bad.len()
        ),
    )
}

fn c10_repeated_sigma() -> Verdict {
    let t = tol();
    let mut g = Generator::new(10_000);
    let (mut worst_recon, mut worst_unit): (f64, f64) = (0.0, 0.0);
    let mut bad = Vec::new();
    for i in 0..50 {
        let (m, n) = (sizes(i), sizes(i * 7 + 3));
        let inst = g.repeated_sigma(m, n).unwrap();
        let f = dual_svd(&inst.a, &t).unwrap();
        let recon = max_diff(&f.reconstruct(), &inst.a);
        let (us, ud) = f.u.unitarity_error();
        let (vs, vd) = f.v.unitarity_error();
        let unit = us.max(ud).max(vs).max(vd);
        worst_recon = worst_recon.max(recon);
        worst_unit = worst_unit.max(unit);
        let repeated = inst.multiplicities.iter().any(|&k| k >= 2);
        if !(recon < STRESS_TOL && unit < STRESS_TOL && repeated && f.t == inst.sigma.len()) {
            bad.push(format!(
                "instance {i} ({m}×{n}): reconstruction {recon:.1e}, unitarity {unit:.1e}"
            ));
        }
    }
    verdict(
        bad.is_empty(),
        format!("50 instances, worst reconstruction {worst_recon:.1e}, worst unitarity {worst_unit:.1e} {bad:?}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("first example dual SVD", c1_first_example_svd),
        ("first example H-S basic form", c2_first_example_hs_basic),
        ("DMPGI and NDMPI examples", c3_dmpgi_and_ndmpi_examples),
        ("DGGI and DCGI example", c4_group_and_core_example),
        ("formula and decomposition routes agree", c5_cross_method),
        ("existence predicates agree", c6_existence_predicates),
        ("identity suites", c7_identity_suites),
        ("coincidence statements", c8_coincidence),
        ("D-core and D-minus orders", c9_partial_orders),
        ("dual SVD with repeated singular values", c10_repeated_sigma),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        if !v.pass {
            failed += 1;
        }
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} {:>2} {title} ({:.2} s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
