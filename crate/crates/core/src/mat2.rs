//! Small dense 2×2 complex matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        let z = Complex::zero();
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        Self::diag(Complex::new(T::one(), T::zero()), Complex::new(T::one(), T::zero()))
    }

    pub fn diag(a: Complex<T>, d: Complex<T>) -> Self {
        let z = Complex::zero();
        Self::new(a, z, z, d)
    }

    pub fn scale(self, c: Complex<T>) -> Self {
        let m = self.m;
        Self::new(c * m[0][0], c * m[0][1], c * m[1][0], c * m[1][1])
    }

    pub fn trace(self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn transpose(self) -> Self {
        let m = self.m;
        Self::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    pub fn adjoint(self) -> Self {
        let m = self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    /// Two-sided inverse when `det ≠ 0`.
    pub fn inverse(self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let m = self.m;
        Some(Self::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d))
    }

    /// Frobenius norm.
    pub fn norm(self) -> T {
        self.m.iter().flatten().map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
    }

    pub fn commutator(self, other: Self) -> Self {
        self * other - other * self
    }

    /// `M·v` for a column vector.
    pub fn apply(self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        let m = self.m;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// `v·M` for a row vector.
    pub fn apply_row(self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        let m = self.m;
        [v[0] * m[0][0] + v[1] * m[1][0], v[0] * m[0][1] + v[1] * m[1][1]]
    }

    /// Largest eigenvalue modulus of a traceless matrix, `|√(−det)|`.
    pub fn traceless_spectral_radius(self) -> T {
        (-self.det()).sqrt().norm()
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (self.m, o.m);
        Self::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(Complex::new(-T::one(), T::zero()))
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.m, o.m);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}
