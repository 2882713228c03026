//! Quaternion algebra with the identifications ℍ ≅ ℝ⁴ ≅ ℂ².
//!
//! A quaternion `a = w + xi + yj + zk` is stored by its four real parts.
//! Complex numbers embed as `re + im·i`. Two complex splittings are in use:
//!
//! * [`Quaternion::split_complex`] is the coordinate identification
//!   `w + xi + yj + zk ≅ (w + xi, y − zi)` used for the metric and the
//!   symplectic form of ℂ²;
//! * [`Quaternion::decompose_j`] writes `a = a₀ + a₁j` with complex `a₀, a₁`
//!   acting from the left, which is the coefficient form of sections of the
//!   left quaternionic line bundle in the frame `(1, j)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{Real, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

/// The ℂ² coordinates of a quaternion under `(w + xi, y − zi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPair<T> {
    pub first: Complex<T>,
    pub second: Complex<T>,
}

impl<T: Scalar> ComplexPair<T> {
    pub fn new(first: Complex<T>, second: Complex<T>) -> Self {
        Self { first, second }
    }

    pub fn norm_sqr(&self) -> T {
        self.first.norm_sqr() + self.second.norm_sqr()
    }
}

impl<T: Scalar> Quaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// `â = w − xi − yj − zk`.
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn re(self) -> T {
        self.w
    }

    /// `Im a = xi + yj + zk` (the imaginary part keeps its units).
    pub fn im(self) -> Self {
        Self::new(T::zero(), self.x, self.y, self.z)
    }

    pub fn norm_sqr(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Two-sided inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            None
        } else {
            let c = self.conj();
            Some(Self::new(c.w / n, c.x / n, c.y / n, c.z / n))
        }
    }

    /// Quaternionic hermitian product `⟨a, b⟩ = a·b̂`.
    pub fn herm(self, other: Self) -> Self {
        self * other.conj()
    }

    /// Euclidean inner product `g(a, b) = Re⟨a, b⟩`.
    pub fn metric(self, other: Self) -> T {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Symplectic form `Θ(a, b) = g(a·i, b)` of ℂ².
    pub fn symplectic(self, other: Self) -> T {
        (self * Self::i()).metric(other)
    }

    /// Both pairings at once: `(g(a, b), Θ(a, b))`.
    pub fn pairings(self, other: Self) -> (T, T) {
        (self.metric(other), self.symplectic(other))
    }

    /// Embeds `c = re + im·i`.
    pub fn from_complex(c: Complex<T>) -> Self {
        Self::new(c.re, c.im, T::zero(), T::zero())
    }

    /// `a₀ + a₁j` for complex `a₀, a₁`.
    pub fn compose_j(a0: Complex<T>, a1: Complex<T>) -> Self {
        Self::new(a0.re, a0.im, a1.re, a1.im)
    }

    /// Inverse of [`Quaternion::compose_j`].
    pub fn decompose_j(self) -> (Complex<T>, Complex<T>) {
        (Complex::new(self.w, self.x), Complex::new(self.y, self.z))
    }

    /// `w + xi + yj + zk ↦ (w + xi, y − zi)`.
    pub fn split_complex(self) -> ComplexPair<T> {
        ComplexPair::new(Complex::new(self.w, self.x), Complex::new(self.y, -self.z))
    }

    /// Inverse of [`Quaternion::split_complex`].
    pub fn join_complex(pair: ComplexPair<T>) -> Self {
        Self::new(pair.first.re, pair.first.im, pair.second.re, -pair.second.im)
    }

    pub fn map<U>(self, f: impl Fn(T) -> U) -> Quaternion<U> {
        Quaternion { w: f(self.w), x: f(self.x), y: f(self.y), z: f(self.z) }
    }
}

impl<T: Real> Quaternion<T> {
    pub fn norm(self) -> T {
        // hypot-style scaling is unnecessary at the magnitudes used here
        self.norm_sqr().sqrt()
    }

    /// `e^{θi} = cos θ + i sin θ`.
    pub fn exp_i(theta: T) -> Self {
        Self::new(theta.cos(), theta.sin(), T::zero(), T::zero())
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> T {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl<T: Scalar> From<Complex<T>> for Quaternion<T> {
    fn from(c: Complex<T>) -> Self {
        Self::from_complex(c)
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> AddAssign for Quaternion<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> SubAssign for Quaternion<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product: `i² = j² = k² = −1`, `ij = k`, `jk = i`, `ki = j`.
impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl<T: Scalar> Mul<T> for Quaternion<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Scalar> Div<T> for Quaternion<T> {
    type Output = Self;
    fn div(self, s: T) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl<T: Scalar> Zero for Quaternion<T> {
    fn zero() -> Self {
        Self::real(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<T: Scalar> One for Quaternion<T> {
    fn one() -> Self {
        Self::real(T::one())
    }
}

impl<T: fmt::Display> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

/// `a·b`.
pub fn qmul<T: Scalar>(a: Quaternion<T>, b: Quaternion<T>) -> Quaternion<T> {
    a * b
}

/// `⟨a, b⟩ = a·b̂`.
pub fn qherm<T: Scalar>(a: Quaternion<T>, b: Quaternion<T>) -> Quaternion<T> {
    a.herm(b)
}

/// `(g(a, b), Θ(a, b))`.
pub fn pairings<T: Scalar>(a: Quaternion<T>, b: Quaternion<T>) -> (T, T) {
    a.pairings(b)
}
