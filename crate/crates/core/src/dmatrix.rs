//! Dual complex matrices `Â = A_s + ε A_d`, stored as two complex parts.

use std::ops::{Add, Mul, Neg, Sub};

use crate::cmatrix::{self, ComplexMatrix};
use crate::dualnum::{DualComplex, DualReal};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DualMatrix {
    s: ComplexMatrix,
    d: ComplexMatrix,
}

impl DualMatrix {
    pub fn new(standard: ComplexMatrix, infinitesimal: ComplexMatrix) -> Result<Self> {
        if standard.shape() != infinitesimal.shape() {
            return Err(Error::shape(
                "dual matrix parts",
                standard.shape(),
                infinitesimal.shape(),
            ));
        }
        Ok(DualMatrix {
            s: standard,
            d: infinitesimal,
        })
    }

    /// Internal constructor for parts already known to agree in shape.
    pub(crate) fn from_parts(s: ComplexMatrix, d: ComplexMatrix) -> Self {
        debug_assert_eq!(s.shape(), d.shape());
        DualMatrix { s, d }
    }

    /// Real matrices given row by row.
    pub fn from_real_rows<R: AsRef<[f64]>>(standard: &[R], infinitesimal: &[R]) -> Result<Self> {
        DualMatrix::new(
            ComplexMatrix::from_real_rows(standard),
            ComplexMatrix::from_real_rows(infinitesimal),
        )
    }

    pub fn from_standard(s: ComplexMatrix) -> Self {
        let d = ComplexMatrix::zeros(s.rows(), s.cols());
        DualMatrix { s, d }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DualMatrix::from_standard(ComplexMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        DualMatrix::from_standard(ComplexMatrix::identity(n))
    }

    /// `rows × cols` matrix with dual reals on the main diagonal.
    pub fn diag_rect(rows: usize, cols: usize, diag: &[DualReal]) -> Self {
        let s: Vec<f64> = diag.iter().map(|x| x.s).collect();
        let d: Vec<f64> = diag.iter().map(|x| x.d).collect();
        DualMatrix {
            s: ComplexMatrix::diag_rect(rows, cols, &s),
            d: ComplexMatrix::diag_rect(rows, cols, &d),
        }
    }

    pub fn standard(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn infinitesimal(&self) -> &ComplexMatrix {
        &self.d
    }

    pub fn into_parts(self) -> (ComplexMatrix, ComplexMatrix) {
        (self.s, self.d)
    }

    pub fn rows(&self) -> usize {
        self.s.rows()
    }

    pub fn cols(&self) -> usize {
        self.s.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.s.shape()
    }

    pub fn is_square(&self) -> bool {
        self.s.is_square()
    }

    pub fn get(&self, i: usize, j: usize) -> DualComplex {
        DualComplex::new(self.s.get(i, j), self.d.get(i, j))
    }

    pub fn is_finite(&self) -> bool {
        self.s.is_finite() && self.d.is_finite()
    }

    /// `(A_s + ε A_d)* = A_s* + ε A_d*`.
    pub fn adjoint(&self) -> Self {
        DualMatrix {
            s: self.s.adjoint(),
            d: self.d.adjoint(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        DualMatrix {
            s: self.s.scale_real(c),
            d: self.d.scale_real(c),
        }
    }

    /// `(A_s + ε A_d)(B_s + ε B_d) = A_s B_s + ε (A_s B_d + A_d B_s)`.
    pub fn try_mul(&self, rhs: &DualMatrix) -> Result<DualMatrix> {
        let s = self.s.try_mul(&rhs.s)?;
        let d = &self.s.try_mul(&rhs.d)? + &self.d.try_mul(&rhs.s)?;
        Ok(DualMatrix { s, d })
    }

    pub fn try_add(&self, rhs: &DualMatrix) -> Result<DualMatrix> {
        Ok(DualMatrix {
            s: self.s.try_add(&rhs.s)?,
            d: self.d.try_add(&rhs.d)?,
        })
    }

    pub fn try_sub(&self, rhs: &DualMatrix) -> Result<DualMatrix> {
        Ok(DualMatrix {
            s: self.s.try_sub(&rhs.s)?,
            d: self.d.try_sub(&rhs.d)?,
        })
    }

    /// `A_s⁻¹ − ε A_s⁻¹ A_d A_s⁻¹`.
    pub fn inv(&self) -> Result<DualMatrix> {
        if !self.is_square() {
            return Err(Error::shape("dual inverse", self.shape(), self.shape()));
        }
        let si = cmatrix::inverse(&self.s)?;
        let d = -&(&(&si * &self.d) * &si);
        Ok(DualMatrix { s: si, d })
    }

    /// `max(‖A_s‖_max, ‖A_d‖_max, 1)`, the scale residuals are measured against.
    pub fn scale(&self) -> f64 {
        self.s.max_abs().max(self.d.max_abs()).max(1.0)
    }

    /// Entrywise max distance of each part.
    pub fn max_abs_diff(&self, other: &DualMatrix) -> (f64, f64) {
        (self.s.max_abs_diff(&other.s), self.d.max_abs_diff(&other.d))
    }

    /// Larger of the two part norms, `max(‖A_s‖_max, ‖A_d‖_max)`.
    pub fn max_abs(&self) -> f64 {
        self.s.max_abs().max(self.d.max_abs())
    }

    /// Both parts within `tol * scale` of `other`, with the scale taken
    /// from the larger of the two operands.
    pub fn approx_eq(&self, other: &DualMatrix, tol: f64) -> bool {
        if self.shape() != other.shape() {
            return false;
        }
        let (es, ed) = self.max_abs_diff(other);
        let scale = self.scale().max(other.scale());
        es <= tol * scale && ed <= tol * scale
    }

    /// `(‖XX* − I‖_max` on the standard part, same on the infinitesimal part).
    pub fn unitarity_error(&self) -> (f64, f64) {
        let g = &self.adjoint() * self;
        let h = self * &self.adjoint();
        let (gs, gd) = g.max_abs_diff(&DualMatrix::identity(self.cols()));
        let (hs, hd) = h.max_abs_diff(&DualMatrix::identity(self.rows()));
        (gs.max(hs), gd.max(hd))
    }

    pub fn is_dual_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let (es, ed) = self.unitarity_error();
        es < tol && ed < tol
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> DualMatrix {
        DualMatrix {
            s: self.s.block(r0, c0, nr, nc),
            d: self.d.block(r0, c0, nr, nc),
        }
    }

    /// Block assembly with the same conventions as [`ComplexMatrix::from_blocks`].
    pub fn from_blocks(grid: &[&[&DualMatrix]]) -> DualMatrix {
        let s_rows: Vec<Vec<&ComplexMatrix>> = grid.iter().map(|r| r.iter().map(|b| &b.s).collect()).collect();
        let d_rows: Vec<Vec<&ComplexMatrix>> = grid.iter().map(|r| r.iter().map(|b| &b.d).collect()).collect();
        let s_refs: Vec<&[&ComplexMatrix]> = s_rows.iter().map(|r| r.as_slice()).collect();
        let d_refs: Vec<&[&ComplexMatrix]> = d_rows.iter().map(|r| r.as_slice()).collect();
        DualMatrix {
            s: ComplexMatrix::from_blocks(&s_refs),
            d: ComplexMatrix::from_blocks(&d_refs),
        }
    }
}

impl Mul for &DualMatrix {
    type Output = DualMatrix;
    /// Panics on shape mismatch; see [`DualMatrix::try_mul`].
    fn mul(self, rhs: &DualMatrix) -> DualMatrix {
        self.try_mul(rhs).expect("dual matrix product shape mismatch")
    }
}

impl Add for &DualMatrix {
    type Output = DualMatrix;
    fn add(self, rhs: &DualMatrix) -> DualMatrix {
        self.try_add(rhs).expect("dual matrix sum shape mismatch")
    }
}

impl Sub for &DualMatrix {
    type Output = DualMatrix;
    fn sub(self, rhs: &DualMatrix) -> DualMatrix {
        self.try_sub(rhs).expect("dual matrix difference shape mismatch")
    }
}

impl Neg for &DualMatrix {
    type Output = DualMatrix;
    fn neg(self) -> DualMatrix {
        DualMatrix {
            s: -&self.s,
            d: -&self.d,
        }
    }
}
