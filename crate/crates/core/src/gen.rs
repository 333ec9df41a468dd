//! Seeded random instances with known structure. Every generator checks its
//! output with the library's own predicates and redraws on failure.

use num_complex::Complex64;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cmatrix::{singular_values, ComplexMatrix};
use crate::config::Tolerances;
use crate::dmatrix::DualMatrix;
use crate::dualnum::DualReal;
use crate::error::{Error, Result};
use crate::ginv::{dmpgi_exists, dual_index_is_one, ExistenceReport};
use crate::relations::{dcore_dominator, dcore_leq, dminus_leq};

const MAX_ATTEMPTS: usize = 200;

/// Shape of the `L` block in a generated index-one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LBlock {
    Any,
    Zero,
    Nonzero,
}

/// An index-one matrix together with the pieces it was built from:
/// `a = u [Σ₁K Σ₁L; 0 0] u*`.
#[derive(Debug, Clone)]
pub struct IndexOneInstance {
    pub a: DualMatrix,
    pub u: DualMatrix,
    pub sigma1: Vec<DualReal>,
    pub k: DualMatrix,
    pub l: DualMatrix,
}

impl IndexOneInstance {
    pub fn r(&self) -> usize {
        self.sigma1.len()
    }
}

/// A matrix with prescribed dual singular values, `u Σ v*`.
#[derive(Debug, Clone)]
pub struct SvdInstance {
    pub a: DualMatrix,
    pub sigma: Vec<DualReal>,
    /// Multiplicities of the standard singular values, largest value first.
    pub multiplicities: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedCategory {
    /// `A_d = A_sX + YA_s`; the DMPGI exists.
    DmpgiExists,
    /// Rank-deficient `A_s` with an unrelated `A_d`.
    RandomInfinitesimal,
    /// Dual index one in canonical form.
    IndexOne,
    /// `A_s` of index two with `A_d = A_sX + YA_s`.
    HigherIndex,
    /// Index-one standard part plus a nonzero infinitesimal null block.
    ProjectedNoise,
}

impl MixedCategory {
    pub const ALL: [MixedCategory; 5] = [
        MixedCategory::DmpgiExists,
        MixedCategory::RandomInfinitesimal,
        MixedCategory::IndexOne,
        MixedCategory::HigherIndex,
        MixedCategory::ProjectedNoise,
    ];
}

#[derive(Debug, Clone)]
pub struct MixedInstance {
    pub a: DualMatrix,
    pub category: MixedCategory,
}

pub struct Generator {
    rng: ChaCha8Rng,
    tol: Tolerances,
}

fn clean(r: &ExistenceReport) -> bool {
    r.agree && !r.borderline
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator::with_tolerances(seed, Tolerances::default())
    }

    pub fn with_tolerances(seed: u64, tol: Tolerances) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            tol,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    fn complex(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal()) / std::f64::consts::SQRT_2
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Entries i.i.d. standard complex normal.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let data: Vec<Complex64> = (0..rows * cols).map(|_| self.complex()).collect();
        ComplexMatrix::from_vec(rows, cols, data)
    }

    pub fn dual_matrix(&mut self, rows: usize, cols: usize) -> DualMatrix {
        let s = self.matrix(rows, cols);
        let d = self.matrix(rows, cols);
        DualMatrix::from_parts(s, d)
    }

    /// Haar-like unitary from orthonormalizing a Gaussian matrix.
    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        loop {
            let g = self.matrix(n, n);
            let q = g.orthonormalize_columns();
            if q.unitarity_error() < 1e-13 {
                return q;
            }
        }
    }

    pub fn skew_hermitian(&mut self, n: usize) -> ComplexMatrix {
        let g = self.matrix(n, n);
        (&g - &g.adjoint()).scale_real(0.5)
    }

    /// `U₀ + ε U₀S` with `S` skew-Hermitian.
    pub fn dual_unitary(&mut self, n: usize) -> DualMatrix {
        let u0 = self.unitary(n);
        let s = self.skew_hermitian(n);
        let d = &u0 * &s;
        DualMatrix::from_parts(u0, d)
    }

    /// `k` distinct values in `[0.5, 3]`, pairwise at least 0.06 apart,
    /// sorted descending.
    fn spaced_values(&mut self, k: usize) -> Vec<f64> {
        let mut grid: Vec<f64> = (0..26).map(|i| 0.5 + 0.1 * i as f64).collect();
        grid.shuffle(&mut self.rng);
        let mut out: Vec<f64> = grid.into_iter().take(k).collect();
        for x in out.iter_mut() {
            *x += self.uniform(-0.02, 0.02);
            *x = x.clamp(0.5, 3.0);
        }
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    fn dual_values(&mut self, k: usize) -> Vec<DualReal> {
        let s = self.spaced_values(k);
        s.into_iter()
            .map(|s| DualReal::new(s, self.uniform(-1.0, 1.0)))
            .collect()
    }

    /// A random `r` in `lo..=hi`.
    fn pick(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    /// `Â` with `A_d = A_sX + YA_s`, so the DMPGI exists. Rectangular shapes
    /// are allowed.
    pub fn dmpgi_exists(&mut self, rows: usize, cols: usize) -> Result<DualMatrix> {
        for _ in 0..MAX_ATTEMPTS {
            let r = self.pick(1.min(rows.min(cols)), rows.min(cols));
            let a_s = self.standard_of_rank(rows, cols, r);
            let x = self.matrix(cols, cols).scale_real(0.5);
            let y = self.matrix(rows, rows).scale_real(0.5);
            let a_d = &(&a_s * &x) + &(&y * &a_s);
            let a = DualMatrix::from_parts(a_s, a_d);
            let rep = dmpgi_exists(&a, &self.tol)?;
            if clean(&rep) && rep.exists {
                return Ok(a);
            }
        }
        Err(self.exhausted("dmpgi-exists"))
    }

    /// `U diag(σ) V*` with `r` singular values spaced in `[0.5, 3]`.
    fn standard_of_rank(&mut self, rows: usize, cols: usize, r: usize) -> ComplexMatrix {
        let u = self.unitary(rows);
        let v = self.unitary(cols);
        let mut sig = self.spaced_values(r);
        sig.resize(rows.min(cols), 0.0);
        &(&u * &ComplexMatrix::diag_rect(rows, cols, &sig)) * &v.adjoint()
    }

    /// Dual index one in canonical form `Û [Σ₁K Σ₁L; 0 0] Û*` with `K`
    /// well conditioned.
    pub fn index_one(&mut self, n: usize, l: LBlock) -> Result<IndexOneInstance> {
        if n == 0 || (l == LBlock::Nonzero && n < 2) {
            return Err(Error::ToleranceBreach(format!(
                "no index-one instance of size {n} with {l:?} L"
            )));
        }
        for _ in 0..MAX_ATTEMPTS {
            let r = match l {
                LBlock::Nonzero => self.pick(1, n - 1),
                _ => self.pick(1, n),
            };
            let w = match l {
                LBlock::Zero => {
                    let top = self.dual_unitary(r);
                    let bottom = self.dual_unitary(n - r);
                    DualMatrix::from_blocks(&[
                        &[&top, &DualMatrix::zeros(r, n - r)],
                        &[&DualMatrix::zeros(n - r, r), &bottom],
                    ])
                }
                _ => self.dual_unitary(n),
            };
            let k = w.block(0, 0, r, r);
            let lb = w.block(0, r, r, n - r);
            let sv = singular_values(k.standard(), &self.tol)?;
            if sv.last().copied().unwrap_or(1.0) < 0.1 {
                continue;
            }
            if l == LBlock::Nonzero && lb.standard().max_abs() < 0.1 {
                continue;
            }
            let sigma1 = self.dual_values(r);
            let u = self.dual_unitary(n);
            let a = canonical(&u, &sigma1, &k, &lb, &DualMatrix::zeros(n - r, n - r));
            let rep = dual_index_is_one(&a, &self.tol)?;
            if clean(&rep) && rep.exists {
                return Ok(IndexOneInstance { a, u, sigma1, k, l: lb });
            }
        }
        Err(self.exhausted("index1"))
    }

    /// `(Â, B̂)` with `Â ≤ B̂` in the dual core order, `B̂` built by the
    /// dominator construction with a random index-one block `P`.
    pub fn dcore_pair(&mut self, n: usize) -> Result<(DualMatrix, DualMatrix)> {
        for _ in 0..MAX_ATTEMPTS {
            let inst = self.index_one(n, LBlock::Any)?;
            let q = n - inst.r();
            let p = if q == 0 {
                DualMatrix::zeros(0, 0)
            } else {
                match self.pick(0, 2) {
                    0 => DualMatrix::zeros(q, q),
                    1 => DualMatrix::identity(q),
                    _ => self.index_one(q, LBlock::Any)?.a,
                }
            };
            let b = dcore_dominator(&inst.a, &p, &self.tol)?;
            let core = dcore_leq(&inst.a, &b, &self.tol)?;
            let minus = dminus_leq(&inst.a, &b, &self.tol)?;
            let clean_b = dual_index_is_one(&b, &self.tol)?;
            if core.holds && minus.holds && clean(&clean_b) {
                return Ok((inst.a, b));
            }
        }
        Err(self.exhausted("dcore-pair"))
    }

    /// A dominator pair whose larger matrix is moved by a random
    /// infinitesimal perturbation, so the core order no longer holds.
    pub fn perturbed_pair(&mut self, n: usize) -> Result<(DualMatrix, DualMatrix)> {
        for _ in 0..MAX_ATTEMPTS {
            let (a, b) = self.dcore_pair(n)?;
            let e = self.matrix(n, n);
            let b = DualMatrix::from_parts(b.standard().clone(), b.infinitesimal() + &e);
            if !dcore_leq(&a, &b, &self.tol)?.holds {
                return Ok((a, b));
            }
        }
        Err(self.exhausted("perturbed pair"))
    }

    /// `Û Σ̂ V̂*` whose standard singular values come in groups of two or
    /// three equal values. When `rank < min(rows, cols)` the remaining
    /// values may be purely infinitesimal.
    pub fn repeated_sigma(&mut self, rows: usize, cols: usize) -> Result<SvdInstance> {
        let k = rows.min(cols);
        if k < 2 {
            return Err(Error::ToleranceBreach(
                "repeated singular values need min(rows, cols) >= 2".into(),
            ));
        }
        for _ in 0..MAX_ATTEMPTS {
            let mut mult = Vec::new();
            let mut used = 0;
            while k - used >= 2 {
                let m = if k - used >= 3 { self.pick(2, 3) } else { 2 };
                mult.push(m);
                used += m;
                if used < k && self.rng.random_bool(0.3) {
                    break;
                }
            }
            let base = self.spaced_values(mult.len());
            let mut sigma = Vec::new();
            for (&m, &s) in mult.iter().zip(&base) {
                let mut ds: Vec<f64> = (0..m).map(|_| self.uniform(-1.0, 1.0)).collect();
                ds.sort_by(|a, b| b.total_cmp(a));
                sigma.extend(ds.into_iter().map(|d| DualReal::new(s, d)));
            }
            let mut tail: Vec<f64> = (used..k).map(|_| self.uniform(0.5, 2.0)).collect();
            tail.sort_by(|a, b| b.total_cmp(a));
            let tail_keep = self.pick(0, tail.len());
            sigma.extend(tail.into_iter().take(tail_keep).map(|d| DualReal::new(0.0, d)));
            let u = self.dual_unitary(rows);
            let v = self.dual_unitary(cols);
            let a = &(&u * &DualMatrix::diag_rect(rows, cols, &sigma)) * &v.adjoint();
            if a.is_finite() {
                return Ok(SvdInstance {
                    a,
                    sigma,
                    multiplicities: mult,
                });
            }
        }
        Err(self.exhausted("repeated sigma"))
    }

    /// A square instance from a random category; about half of them have a
    /// DMPGI and some of those have dual index one.
    pub fn mixed(&mut self, n: usize) -> Result<MixedInstance> {
        let n = n.max(2);
        let category = *MixedCategory::ALL.choose(&mut self.rng).expect("non-empty");
        for _ in 0..MAX_ATTEMPTS {
            let a = match category {
                MixedCategory::DmpgiExists => self.dmpgi_exists(n, n)?,
                MixedCategory::IndexOne => self.index_one(n, LBlock::Any)?.a,
                MixedCategory::RandomInfinitesimal => {
                    let r = self.pick(1, n - 1);
                    let a_s = self.standard_of_rank(n, n, r);
                    DualMatrix::from_parts(a_s, self.matrix(n, n))
                }
                MixedCategory::HigherIndex => {
                    let a_s = self.index_two_standard(n);
                    let x = self.matrix(n, n).scale_real(0.5);
                    let y = self.matrix(n, n).scale_real(0.5);
                    let a_d = &(&a_s * &x) + &(&y * &a_s);
                    DualMatrix::from_parts(a_s, a_d)
                }
                MixedCategory::ProjectedNoise => {
                    let inst = self.index_one(n, LBlock::Any)?;
                    let r = inst.r();
                    if r == n {
                        continue;
                    }
                    let u = inst.u.standard();
                    let e = self.matrix(n - r, n - r);
                    let mut g = ComplexMatrix::zeros(n, n);
                    g.set_block(r, r, &e);
                    let noise = &(u * &g) * &u.adjoint();
                    DualMatrix::from_parts(inst.a.standard().clone(), inst.a.infinitesimal() + &noise)
                }
            };
            return Ok(MixedInstance { a, category });
        }
        Err(self.exhausted("mixed"))
    }

    /// `U T U*` with `T` upper triangular, diagonal `(0, 0, d₃, …)` and
    /// `T₀₁ ≠ 0`, so zero is an eigenvalue with a single Jordan block of
    /// size two.
    fn index_two_standard(&mut self, n: usize) -> ComplexMatrix {
        let d = self.spaced_values(n - 2);
        let mut t = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                t.set(i, j, self.complex() * 0.3);
            }
        }
        t.set(0, 1, Complex64::new(self.uniform(0.5, 2.0), 0.0));
        for (i, &x) in d.iter().enumerate() {
            t.set(i + 2, i + 2, Complex64::new(x, 0.0));
        }
        let u = self.unitary(n);
        &(&u * &t) * &u.adjoint()
    }

    fn exhausted(&self, what: &str) -> Error {
        Error::ToleranceBreach(format!(
            "generator '{what}' found no valid instance in {MAX_ATTEMPTS} attempts"
        ))
    }
}

/// `Û [Σ₁K Σ₁L; 0 P] Û*`.
fn canonical(u: &DualMatrix, sigma1: &[DualReal], k: &DualMatrix, l: &DualMatrix, p: &DualMatrix) -> DualMatrix {
    let r = sigma1.len();
    let q = p.rows();
    let s1 = DualMatrix::diag_rect(r, r, sigma1);
    let mid = DualMatrix::from_blocks(&[&[&(&s1 * k), &(&s1 * l)], &[&DualMatrix::zeros(q, r), p]]);
    &(u * &mid) * &u.adjoint()
}
