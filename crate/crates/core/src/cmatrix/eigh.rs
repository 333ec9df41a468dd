//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// `A = W diag(values) W*`, values descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Eigendecomposition of the Hermitian part `(A + A*)/2` of a square matrix.
pub fn eigh(a: &ComplexMatrix, max_sweeps: usize) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::shape("eigh", a.shape(), a.shape()));
    }
    let n = a.rows();
    let mut h = (a + &a.adjoint()).scale_real(0.5);
    let mut w = ComplexMatrix::identity(n);
    let scale = h.frobenius();
    let tol = f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    let mut converged = n < 2;
    for _ in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| h.get(i, j).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = h.get(p, q);
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                // Phase so the (p, q) entry becomes real, then a real rotation.
                let ph = apq / g;
                let tau = (h.get(q, q).re - h.get(p, p).re) / (2.0 * g);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // J acts on columns p, q: col_p' = c col_p − s conj(ph) col_q,
                // col_q' = s ph col_p + c col_q.
                let jpp = Complex64::new(c, 0.0);
                let jqp = -ph.conj() * s;
                let jpq = ph * s;
                let jqq = Complex64::new(c, 0.0);
                apply_right(&mut h, p, q, jpp, jqp, jpq, jqq);
                apply_left_adjoint(&mut h, p, q, jpp, jqp, jpq, jqq);
                apply_right(&mut w, p, q, jpp, jqp, jpq, jqq);
                h.set(p, q, Complex64::new(0.0, 0.0));
                h.set(q, p, Complex64::new(0.0, 0.0));
            }
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            what: "Hermitian Jacobi",
            sweeps: max_sweeps,
        });
    }
    let raw: Vec<f64> = (0..n).map(|i| h.get(i, i).re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[j].total_cmp(&raw[i]));
    Ok(HermitianEigen {
        values: order.iter().map(|&i| raw[i]).collect(),
        vectors: w.select_columns(&order),
    })
}

/// `M ← M J` where `J` differs from the identity only in rows/cols p, q.
fn apply_right(
    m: &mut ComplexMatrix,
    p: usize,
    q: usize,
    jpp: Complex64,
    jqp: Complex64,
    jpq: Complex64,
    jqq: Complex64,
) {
    for i in 0..m.rows() {
        let (xp, xq) = (m.get(i, p), m.get(i, q));
        m.set(i, p, xp * jpp + xq * jqp);
        m.set(i, q, xp * jpq + xq * jqq);
    }
}

/// `M ← J* M`.
fn apply_left_adjoint(
    m: &mut ComplexMatrix,
    p: usize,
    q: usize,
    jpp: Complex64,
    jqp: Complex64,
    jpq: Complex64,
    jqq: Complex64,
) {
    for j in 0..m.cols() {
        let (xp, xq) = (m.get(p, j), m.get(q, j));
        m.set(p, j, jpp.conj() * xp + jqp.conj() * xq);
        m.set(q, j, jpq.conj() * xp + jqq.conj() * xq);
    }
}
