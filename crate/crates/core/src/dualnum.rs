//! Dual real and dual complex scalars, `a = s + ε d` with `ε² = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default appreciability cutoff, relative to `max(1, scale)`.
pub const APPRECIABLE_TOL: f64 = 1e-12;

/// A dual complex number `s + ε d`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualComplex {
    pub s: Complex64,
    pub d: Complex64,
}

impl DualComplex {
    pub const ZERO: DualComplex = DualComplex {
        s: Complex64::new(0.0, 0.0),
        d: Complex64::new(0.0, 0.0),
    };
    pub const ONE: DualComplex = DualComplex {
        s: Complex64::new(1.0, 0.0),
        d: Complex64::new(0.0, 0.0),
    };
    /// The infinitesimal unit.
    pub const EPS: DualComplex = DualComplex {
        s: Complex64::new(0.0, 0.0),
        d: Complex64::new(1.0, 0.0),
    };

    pub fn new(s: Complex64, d: Complex64) -> Self {
        DualComplex { s, d }
    }

    pub fn from_reals(s: f64, d: f64) -> Self {
        DualComplex::new(Complex64::new(s, 0.0), Complex64::new(d, 0.0))
    }

    pub fn conj(self) -> Self {
        DualComplex::new(self.s.conj(), self.d.conj())
    }

    pub fn is_appreciable(&self) -> bool {
        self.is_appreciable_with(APPRECIABLE_TOL, 1.0)
    }

    /// `|s| > tol * max(1, scale)`.
    pub fn is_appreciable_with(&self, tol: f64, scale: f64) -> bool {
        self.s.norm() > tol * scale.max(1.0)
    }

    /// `(s⁻¹, −s⁻² d)`.
    pub fn inv(self) -> Result<Self> {
        self.inv_with(APPRECIABLE_TOL, 1.0)
    }

    pub fn inv_with(self, tol: f64, scale: f64) -> Result<Self> {
        if !self.is_appreciable_with(tol, scale) {
            return Err(Error::NotAppreciable {
                magnitude: self.s.norm(),
            });
        }
        let si = self.s.inv();
        Ok(DualComplex::new(si, -si * si * self.d))
    }

    /// The `[re_s, im_s, re_d, im_d]` wire form.
    pub fn to_array(self) -> [f64; 4] {
        [self.s.re, self.s.im, self.d.re, self.d.im]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        DualComplex::new(Complex64::new(a[0], a[1]), Complex64::new(a[2], a[3]))
    }
}

impl Add for DualComplex {
    type Output = DualComplex;
    fn add(self, o: Self) -> Self {
        DualComplex::new(self.s + o.s, self.d + o.d)
    }
}

impl Sub for DualComplex {
    type Output = DualComplex;
    fn sub(self, o: Self) -> Self {
        DualComplex::new(self.s - o.s, self.d - o.d)
    }
}

impl Neg for DualComplex {
    type Output = DualComplex;
    fn neg(self) -> Self {
        DualComplex::new(-self.s, -self.d)
    }
}

impl Mul for DualComplex {
    type Output = DualComplex;
    fn mul(self, o: Self) -> Self {
        DualComplex::new(self.s * o.s, self.s * o.d + self.d * o.s)
    }
}

impl From<DualReal> for DualComplex {
    fn from(x: DualReal) -> Self {
        DualComplex::from_reals(x.s, x.d)
    }
}

impl fmt::Display for DualComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ε({})", self.s, self.d)
    }
}

impl Serialize for DualComplex {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DualComplex {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(de).map(DualComplex::from_array)
    }
}

/// A dual real number `s + ε d`, totally ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualReal {
    pub s: f64,
    pub d: f64,
}

impl DualReal {
    pub fn new(s: f64, d: f64) -> Self {
        DualReal { s, d }
    }

    /// `s < o.s`, or `s == o.s` and `d <= o.d`.
    pub fn leq(&self, o: &DualReal) -> bool {
        self.total_cmp(o) != Ordering::Greater
    }

    pub fn total_cmp(&self, o: &DualReal) -> Ordering {
        self.s.total_cmp(&o.s).then(self.d.total_cmp(&o.d))
    }

    pub fn is_positive(&self) -> bool {
        self.s > 0.0 || (self.s == 0.0 && self.d > 0.0)
    }

    pub fn is_appreciable_with(&self, tol: f64, scale: f64) -> bool {
        self.s.abs() > tol * scale.max(1.0)
    }

    pub fn inv(self) -> Result<Self> {
        let c = DualComplex::from(self).inv()?;
        Ok(DualReal::new(c.s.re, c.d.re))
    }
}

/// Free-function form of [`DualReal::leq`].
pub fn dreal_leq(a: DualReal, b: DualReal) -> bool {
    a.leq(&b)
}

impl PartialOrd for DualReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        match self.s.partial_cmp(&o.s)? {
            Ordering::Equal => self.d.partial_cmp(&o.d),
            ord => Some(ord),
        }
    }
}

impl fmt::Display for DualReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.s, self.d)
    }
}

impl Serialize for DualReal {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        [self.s, self.d].serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DualReal {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        <[f64; 2]>::deserialize(de).map(|[s, d]| DualReal::new(s, d))
    }
}
