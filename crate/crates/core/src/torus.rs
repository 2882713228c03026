//! Flat tori `ℂ/Λ_δ` and their harmonic Lagrangian angle maps.
//!
//! Points are addressed either conformally, `z = x + yi`, or in lattice
//! coordinates `(u, v)` with `z = u + vδ`. The lattice generators `1` and `δ`
//! are the unit steps in `u` and `v`, so functions periodic on `Λ_δ` are
//! exactly 1-periodic in both lattice coordinates.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// `δ₀` and `δ₁²` as exact rationals, for the integer classification constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDelta {
    pub delta0: BigRational,
    pub delta1_sq: BigRational,
}

impl ExactDelta {
    pub fn new(delta0: BigRational, delta1_sq: BigRational) -> Self {
        Self { delta0, delta1_sq }
    }

    /// From integer fractions `p0/q0` and `p1/q1 = δ₁²`.
    pub fn from_fractions(p0: i64, q0: i64, p1: i64, q1: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(p0), BigInt::from(q0)),
            BigRational::new(BigInt::from(p1), BigInt::from(q1)),
        )
    }
}

/// Which lattice a sampled object is periodic on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Covering {
    /// `Λ_δ = {m + nδ}`.
    Base,
    /// `Λ̃_δ = {2m + 2nδ}`.
    Double,
}

impl Covering {
    pub fn factor(self) -> usize {
        match self {
            Covering::Base => 1,
            Covering::Double => 2,
        }
    }

    pub fn from_factor(f: usize) -> Option<Self> {
        match f {
            1 => Some(Covering::Base),
            2 => Some(Covering::Double),
            _ => None,
        }
    }
}

/// The lattice `Λ_δ = ℤ + δℤ`, `δ = δ₀ + δ₁i`, `δ₁ > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusLattice<T> {
    delta0: T,
    delta1: T,
    exact: Option<ExactDelta>,
}

impl<T: Scalar> TorusLattice<T> {
    /// Validates `δ₁ > 0`. Membership of `δ` in the closure of the standard
    /// fundamental region is available from [`Self::in_fundamental_closure`]
    /// but is not required.
    pub fn new(delta0: T, delta1: T) -> Result<Self> {
        if !(delta1 > T::zero()) {
            return Err(Error::NonPositiveDelta1(delta1.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { delta0, delta1, exact: None })
    }

    pub fn delta0(&self) -> T {
        self.delta0
    }

    pub fn delta1(&self) -> T {
        self.delta1
    }

    pub fn exact(&self) -> Option<&ExactDelta> {
        self.exact.as_ref()
    }

    /// `δ₀² + δ₁² ≥ 1`, `|δ₀| ≤ 1/2`, `δ₁ > 0`.
    pub fn in_fundamental_closure(&self) -> bool {
        let half = T::one() / T::from_int(2);
        self.delta0 * self.delta0 + self.delta1 * self.delta1 >= T::one() && self.delta0 >= -half && self.delta0 <= half
    }

    /// Lattice coordinates `(u, v)` to conformal `(x, y)`.
    pub fn to_conformal(&self, u: T, v: T) -> (T, T) {
        (u + v * self.delta0, v * self.delta1)
    }

    /// Conformal `(x, y)` to lattice coordinates `(u, v)`.
    pub fn to_lattice(&self, x: T, y: T) -> (T, T) {
        let v = y / self.delta1;
        (x - v * self.delta0, v)
    }
}

impl<T: Real> TorusLattice<T> {
    /// Lattice from exact `δ₀` and `δ₁²`; the float `δ₁` is `√δ₁²`.
    pub fn from_exact(exact: ExactDelta) -> Result<Self> {
        if !exact.delta1_sq.is_positive() {
            return Err(Error::NonPositiveDelta1(exact.delta1_sq.to_f64().unwrap_or(f64::NAN)));
        }
        let d0 = T::lit(exact.delta0.to_f64().unwrap_or(f64::NAN));
        let d1 = T::lit(exact.delta1_sq.to_f64().unwrap_or(f64::NAN)).sqrt();
        let mut lat = Self::new(d0, d1)?;
        lat.exact = Some(exact);
        Ok(lat)
    }

    pub fn delta(&self) -> Complex<T> {
        Complex::new(self.delta0, self.delta1)
    }
}

/// Validated lattice; see [`TorusLattice::new`].
pub fn make_lattice<T: Scalar>(delta0: T, delta1: T) -> Result<TorusLattice<T>> {
    TorusLattice::new(delta0, delta1)
}

/// The harmonic angle `β = 2πr·x − 2π(rδ₀ − s)/δ₁·y`, `(r, s) ∈ ℤ² ∖ {0}`.
///
/// In lattice coordinates `β = 2π(r·u + s·v)`, so `e^{iβ}` is `Λ_δ`-periodic
/// and `e^{iβ/2}` changes sign by `(−1)^r` and `(−1)^s` along the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleMap<T> {
    r: i64,
    s: i64,
    lattice: TorusLattice<T>,
}

impl<T: Scalar> AngleMap<T> {
    pub fn new(lattice: TorusLattice<T>, r: i64, s: i64) -> Result<Self> {
        if r == 0 && s == 0 {
            return Err(Error::ConstantAngle);
        }
        Ok(Self { r, s, lattice })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn lattice(&self) -> &TorusLattice<T> {
        &self.lattice
    }

    /// Sign of `e^{iβ/2}` after one step along the generators `1` and `δ`.
    pub fn half_angle_signs(&self) -> (i64, i64) {
        let sign = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
        (sign(self.r), sign(self.s))
    }
}

impl<T: Real> AngleMap<T> {
    fn two_pi() -> T {
        T::TAU()
    }

    /// `β_x = 2πr`.
    pub fn beta_x(&self) -> T {
        Self::two_pi() * T::from_int(self.r)
    }

    /// `β_y = −2π(rδ₀ − s)/δ₁`.
    pub fn beta_y(&self) -> T {
        let l = &self.lattice;
        -Self::two_pi() * (T::from_int(self.r) * l.delta0 - T::from_int(self.s)) / l.delta1
    }

    /// `β_z = (β_x − iβ_y)/2 = π(rδ₁ + (rδ₀ − s)i)/δ₁`.
    pub fn beta_z(&self) -> Complex<T> {
        let half = T::lit(0.5);
        Complex::new(self.beta_x() * half, -self.beta_y() * half)
    }

    /// `β_z̄ = conj(β_z)`.
    pub fn beta_zbar(&self) -> Complex<T> {
        self.beta_z().conj()
    }

    /// Unreduced affine value at conformal `(x, y)`.
    pub fn beta(&self, x: T, y: T) -> T {
        self.beta_x() * x + self.beta_y() * y
    }

    /// Unreduced affine value at lattice coordinates `(u, v)`: `2π(ru + sv)`.
    pub fn beta_lattice(&self, u: T, v: T) -> T {
        Self::two_pi() * (T::from_int(self.r) * u + T::from_int(self.s) * v)
    }

    /// `β(x, y)` reduced to `[0, 2π)`.
    pub fn eval(&self, x: T, y: T) -> T {
        let tau = Self::two_pi();
        let raw = self.beta(x, y);
        let b = raw - tau * (raw / tau).floor();
        // tiny negative inputs round up to 2π itself
        if b >= Self::two_pi() {
            T::zero()
        } else {
            b
        }
    }

    /// Largest `|e^{iβ(p+λ)} − e^{iβ(p)}|` over the generators `λ ∈ {1, δ}`.
    pub fn periodicity_defect(&self, x: T, y: T) -> T {
        let e = |x: T, y: T| Complex::from_polar(T::one(), self.beta(x, y));
        let base = e(x, y);
        let l = &self.lattice;
        let d0 = (e(x + T::one(), y) - base).norm();
        let d1 = (e(x + l.delta0, y + l.delta1) - base).norm();
        d0.max(d1)
    }
}

/// See [`AngleMap::new`].
pub fn make_angle_map<T: Scalar>(lattice: TorusLattice<T>, r: i64, s: i64) -> Result<AngleMap<T>> {
    AngleMap::new(lattice, r, s)
}

/// `β(x, y) mod 2π`.
pub fn eval_angle<T: Real>(am: &AngleMap<T>, x: T, y: T) -> T {
    am.eval(x, y)
}
