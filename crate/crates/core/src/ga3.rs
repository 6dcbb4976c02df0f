//! Fixed-dimension Clifford algebra Cl(3,0).
//!
//! Components are laid out as `(scalar; e₁, e₂, e₃; e₂e₃, e₃e₁, e₁e₂; e₁e₂e₃)`
//! with Euclidean metric. The pseudoscalar `I = e₁e₂e₃` is central and squares
//! to −1, so a multivector `s + v + I·b + I·t` multiplies exactly like a pair
//! `(s + i t, v + i b)` of a complex scalar and a complex 3-vector in the Pauli
//! algebra. The product below uses that form.
//!
//! The hidden variable is the handedness of the frame. Bivector beables carry
//! it as a sign, and [`handed_product`] evaluates products in the frame of
//! that handedness: the right-handed frame uses `xy`, the left-handed frame
//! the opposite product `yx`. Reversion maps one frame onto the other, so every
//! product identity holds verbatim in both.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Builds a vector that must already be unit length (within 1e-9).
    pub fn unit(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self::new(x, y, z);
        v.ensure_unit()?;
        Ok(v)
    }

    /// Direction with polar angle `theta` and azimuth `phi`.
    pub fn spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self::new(st * cp, st * sp, ct)
    }

    /// Polar and azimuthal angles `(θ, φ)` with φ in (−π, π].
    pub fn to_spherical(&self) -> (f64, f64) {
        let r = self.norm();
        ((self.z / r).clamp(-1.0, 1.0).acos(), self.y.atan2(self.x))
    }

    pub fn from_array(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, o: &Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, k: f64) -> Vec3 {
        Vec3::new(k * self.x, k * self.y, k * self.z)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn normalized(&self) -> Result<Vec3> {
        let n = self.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn ensure_unit(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = self.norm();
        if (n - 1.0).abs() > tolerances::UNIT_INPUT {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, o: &Vec3) -> f64 {
        (self.x - o.x)
            .abs()
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        self.scale(k)
    }
}

/// Normalized axis `(a×b)/|a×b|`; undefined for (anti)parallel inputs.
pub fn cross_axis(a: &Vec3, b: &Vec3) -> Result<Vec3> {
    let c = a.cross(b);
    let n = c.norm();
    if n < tolerances::PARALLEL_AXIS {
        return Err(Error::ParallelAxes { cross_norm: n });
    }
    Ok(c.scale(1.0 / n))
}

/// Handedness of the frame, `λ = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HiddenVariable {
    Right,
    Left,
}

impl HiddenVariable {
    pub const BOTH: [HiddenVariable; 2] = [HiddenVariable::Right, HiddenVariable::Left];

    pub fn sign(self) -> f64 {
        match self {
            HiddenVariable::Right => 1.0,
            HiddenVariable::Left => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Option<Self> {
        if s == 1.0 {
            Some(HiddenVariable::Right)
        } else if s == -1.0 {
            Some(HiddenVariable::Left)
        } else {
            None
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            HiddenVariable::Right => HiddenVariable::Left,
            HiddenVariable::Left => HiddenVariable::Right,
        }
    }
}

/// A ± label, used for tilt branches and measurement outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Multivector3 {
    /// Scalar part.
    pub s: f64,
    /// Vector part over e₁, e₂, e₃.
    pub v: Vec3,
    /// Bivector part over e₂e₃, e₃e₁, e₁e₂.
    pub b: Vec3,
    /// Pseudoscalar coefficient of e₁e₂e₃.
    pub t: f64,
}

impl Multivector3 {
    pub const ZERO: Multivector3 = Multivector3::new(0.0, Vec3::ZERO, Vec3::ZERO, 0.0);
    pub const ONE: Multivector3 = Multivector3::new(1.0, Vec3::ZERO, Vec3::ZERO, 0.0);

    pub const fn new(s: f64, v: Vec3, b: Vec3, t: f64) -> Self {
        Self { s, v, b, t }
    }

    pub const fn scalar(s: f64) -> Self {
        Self::new(s, Vec3::ZERO, Vec3::ZERO, 0.0)
    }

    pub const fn vector(v: Vec3) -> Self {
        Self::new(0.0, v, Vec3::ZERO, 0.0)
    }

    pub const fn bivector(b: Vec3) -> Self {
        Self::new(0.0, Vec3::ZERO, b, 0.0)
    }

    /// Scalar plus bivector: a point of the 3-sphere when normalized.
    pub const fn even(s: f64, b: Vec3) -> Self {
        Self::new(s, Vec3::ZERO, b, 0.0)
    }

    pub const fn pseudoscalar(t: f64) -> Self {
        Self::new(0.0, Vec3::ZERO, Vec3::ZERO, t)
    }

    /// Basis element by layout index 0..8.
    pub fn basis(index: usize) -> Self {
        let mut c = [0.0; 8];
        c[index] = 1.0;
        Self::from_components(c)
    }

    pub fn from_components(c: [f64; 8]) -> Self {
        Self::new(
            c[0],
            Vec3::new(c[1], c[2], c[3]),
            Vec3::new(c[4], c[5], c[6]),
            c[7],
        )
    }

    pub fn components(&self) -> [f64; 8] {
        [
            self.s, self.v.x, self.v.y, self.v.z, self.b.x, self.b.y, self.b.z, self.t,
        ]
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }

    pub fn norm_sq(&self) -> f64 {
        self.components().iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// True when the odd grades vanish within `tol`.
    pub fn is_even(&self, tol: f64) -> bool {
        self.v.norm() <= tol && self.t.abs() <= tol
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(k * self.s, self.v.scale(k), self.b.scale(k), k * self.t)
    }

    /// Reversion: flips the sign of the bivector and trivector parts.
    pub fn reverse(&self) -> Self {
        Self::new(self.s, self.v, -self.b, -self.t)
    }

    pub fn max_abs_diff(&self, o: &Multivector3) -> f64 {
        self.components()
            .iter()
            .zip(o.components())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn to_pauli(self) -> (Complex64, [Complex64; 3]) {
        (
            Complex64::new(self.s, self.t),
            [
                Complex64::new(self.v.x, self.b.x),
                Complex64::new(self.v.y, self.b.y),
                Complex64::new(self.v.z, self.b.z),
            ],
        )
    }

    fn from_pauli(z0: Complex64, z: [Complex64; 3]) -> Self {
        Self::new(
            z0.re,
            Vec3::new(z[0].re, z[1].re, z[2].re),
            Vec3::new(z[0].im, z[1].im, z[2].im),
            z0.im,
        )
    }
}

impl Add for Multivector3 {
    type Output = Multivector3;
    fn add(self, o: Multivector3) -> Multivector3 {
        Multivector3::new(self.s + o.s, self.v + o.v, self.b + o.b, self.t + o.t)
    }
}

impl Sub for Multivector3 {
    type Output = Multivector3;
    fn sub(self, o: Multivector3) -> Multivector3 {
        Multivector3::new(self.s - o.s, self.v - o.v, self.b - o.b, self.t - o.t)
    }
}

impl Neg for Multivector3 {
    type Output = Multivector3;
    fn neg(self) -> Multivector3 {
        self.scale(-1.0)
    }
}

impl Mul for Multivector3 {
    type Output = Multivector3;
    fn mul(self, o: Multivector3) -> Multivector3 {
        geometric_product(&self, &o)
    }
}

impl fmt::Display for Multivector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + ({}, {}, {})e + ({}e23 + {}e31 + {}e12) + {}e123",
            self.s, self.v.x, self.v.y, self.v.z, self.b.x, self.b.y, self.b.z, self.t
        )
    }
}

/// The right-handed Cl(3,0) geometric product.
pub fn geometric_product(x: &Multivector3, y: &Multivector3) -> Multivector3 {
    let (z0, z) = x.to_pauli();
    let (w0, w) = y.to_pauli();
    let i = Complex64::i();
    let dot = z[0] * w[0] + z[1] * w[1] + z[2] * w[2];
    let cross = [
        z[1] * w[2] - z[2] * w[1],
        z[2] * w[0] - z[0] * w[2],
        z[0] * w[1] - z[1] * w[0],
    ];
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for k in 0..3 {
        out[k] = z0 * w[k] + w0 * z[k] + i * cross[k];
    }
    Multivector3::from_pauli(z0 * w0 + dot, out)
}

/// Geometric product evaluated in the frame of handedness `lambda`.
pub fn handed_product(x: &Multivector3, y: &Multivector3, lambda: HiddenVariable) -> Multivector3 {
    match lambda {
        HiddenVariable::Right => geometric_product(x, y),
        HiddenVariable::Left => geometric_product(y, x),
    }
}

/// The unit bivector `μ·n`, with components `λ·n` over (e₂e₃, e₃e₁, e₁e₂).
pub fn bivector_beable(n: &Vec3, lambda: HiddenVariable) -> Result<Multivector3> {
    n.ensure_unit()?;
    Ok(Multivector3::bivector(n.scale(lambda.sign())))
}

/// The 3-sphere point `cos χ + sign · sin χ · (μ·n)`.
pub fn tilted_point(chi: f64, n: &Vec3, lambda: HiddenVariable, sign: Sign) -> Result<Multivector3> {
    let beable = bivector_beable(n, lambda)?;
    let (s, c) = chi.sin_cos();
    Ok(Multivector3::even(c, beable.b.scale(sign.value() * s)))
}

/// Left-to-right fold of [`handed_product`].
pub fn product_chain(points: &[Multivector3], lambda: HiddenVariable) -> Result<Multivector3> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyProduct)?;
    Ok(rest
        .iter()
        .fold(*first, |acc, p| handed_product(&acc, p, lambda)))
}

/// `xy − yx` in the frame of handedness `lambda`.
pub fn commutator(x: &Multivector3, y: &Multivector3, lambda: HiddenVariable) -> Multivector3 {
    handed_product(x, y, lambda) - handed_product(y, x, lambda)
}
