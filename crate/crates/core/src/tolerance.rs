//! Tolerance profiles for residual reports.
//!
//! Finite-difference residuals scale like `(K/n)²` where `K` is the number of
//! radians the sampled field turns through across one grid axis, so every
//! FD tolerance has the form `coeff · n⁻² · K² · M` with `M` the magnitude of
//! the quantity being tested.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TolProfile {
    pub name: &'static str,
    /// Relative tolerance for identities evaluated in closed form.
    pub closed_form: f64,
    /// Coefficient of the finite-difference surface tolerance.
    pub fd_coeff: f64,
    /// Coefficient of the parallel-transport and Dirac tolerance.
    pub parallel_coeff: f64,
}

impl TolProfile {
    pub const PAPER: Self = Self { name: "paper", closed_form: 1e-10, fd_coeff: 50.0, parallel_coeff: 100.0 };
    pub const STRICT: Self = Self { name: "strict", closed_form: 1e-12, fd_coeff: 5.0, parallel_coeff: 10.0 };

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "paper" => Some(Self::PAPER),
            "strict" => Some(Self::STRICT),
            _ => None,
        }
    }

    pub fn closed(&self, magnitude: f64) -> f64 {
        self.closed_form * magnitude.max(1.0)
    }

    /// `fd_coeff · n⁻² · K² · M`.
    pub fn fd(&self, n: usize, k: f64, magnitude: f64) -> f64 {
        self.fd_coeff * k * k * magnitude / (n as f64 * n as f64)
    }

    /// `parallel_coeff · n⁻² · K² · M`.
    pub fn parallel(&self, n: usize, k: f64, magnitude: f64) -> f64 {
        self.parallel_coeff * k * k * magnitude / (n as f64 * n as f64)
    }
}

impl Default for TolProfile {
    fn default() -> Self {
        Self::PAPER
    }
}

/// A residual compared against its tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Check {
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    /// `value ≤ tol`; NaN fails.
    pub fn at_most(value: f64, tol: f64) -> Self {
        Self { value, tol, pass: value <= tol }
    }

    /// `value ≥ tol`; NaN fails.
    pub fn at_least(value: f64, tol: f64) -> Self {
        Self { value, tol, pass: value >= tol }
    }
}
