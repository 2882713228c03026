//! Sampled surfaces `ψ: ℂ/Λ → ℍ` and their first-order invariants.
//!
//! Derivatives come from central differences unless the surface was built
//! from a closed form, in which case the exact derivatives are carried along
//! and used instead. [`SurfaceGrid::finite_difference`] drops them.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{wedge, Exterior, Grid, GridField, MaxNorm, QOneForm, QTwoForm};
use crate::quat::Quaternion;
use crate::scalar::Real;
use crate::tolerance::{Check, TolProfile};
use crate::torus::{AngleMap, Covering, TorusLattice};

type Q<T> = Quaternion<T>;

/// Below this `|ψ_x|` a grid point is treated as a branch point.
pub const DEGENERATE_DIFFERENTIAL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceGrid<T> {
    psi: GridField<T>,
    exact: Option<(GridField<T>, GridField<T>)>,
}

impl<T: Real> SurfaceGrid<T> {
    /// Surface with finite-difference derivatives.
    pub fn new(psi: GridField<T>) -> Self {
        Self { psi, exact: None }
    }

    /// Surface with known lattice derivatives `ψ_u`, `ψ_v`.
    pub fn with_derivatives(psi: GridField<T>, du: GridField<T>, dv: GridField<T>) -> Result<Self> {
        if psi.grid() != du.grid() || psi.grid() != dv.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { psi, exact: Some((du, dv)) })
    }

    /// Samples `f(x, y) = (ψ, ψ_x, ψ_y)` in conformal coordinates.
    pub fn from_closed_form(grid: Grid<T>, f: impl Fn(T, T) -> [Q<T>; 3]) -> Self {
        let (d0, d1) = (grid.lattice().delta0(), grid.lattice().delta1());
        let samples = GridField::from_fn(grid, f);
        let psi = samples.map(|s| s[0]);
        let du = samples.map(|s| s[1]);
        let dv = samples.map(|s| s[1] * d0 + s[2] * d1);
        Self { psi, exact: Some((du, dv)) }
    }

    pub fn psi(&self) -> &GridField<T> {
        &self.psi
    }

    pub fn grid(&self) -> &Grid<T> {
        self.psi.grid()
    }

    pub fn lattice(&self) -> &TorusLattice<T> {
        self.grid().lattice()
    }

    pub fn covering(&self) -> Covering {
        self.grid().covering()
    }

    pub fn has_exact_derivatives(&self) -> bool {
        self.exact.is_some()
    }

    /// Same samples, derivatives by central differences.
    pub fn finite_difference(&self) -> Self {
        Self::new(self.psi.clone())
    }

    /// `dψ` in lattice components.
    pub fn differential(&self) -> Result<QOneForm<T>> {
        match &self.exact {
            Some((du, dv)) => QOneForm::new(du.clone(), dv.clone()),
            None => self.psi.ext_d(),
        }
    }

    /// `(ψ_x, ψ_y)`.
    pub fn conformal_derivatives(&self) -> Result<(GridField<T>, GridField<T>)> {
        let d = self.differential()?;
        Ok((d.dx_slot(), d.dy_slot()))
    }

    /// `ψ + q`; derivatives unchanged.
    pub fn translated(&self, q: Q<T>) -> Self {
        Self { psi: self.psi.map(|p| p + q), exact: self.exact.clone() }
    }

    /// `q·ψ`.
    pub fn left_multiplied(&self, q: Q<T>) -> Self {
        let exact = self.exact.as_ref().map(|(a, b)| (a.map(|p| q * p), b.map(|p| q * p)));
        Self { psi: self.psi.map(|p| q * p), exact }
    }

    /// `K = c·max|ψ_u|/min|ψ|`, the turning scale of FD tolerances.
    pub fn turning_scale(&self) -> Result<T> {
        let d = self.differential()?;
        let lo = self.psi.values().iter().map(|p| p.norm()).fold(T::infinity(), T::min);
        let hi = d.max_norm();
        let c = T::from_int(self.covering().factor() as i64);
        if lo.is_zero() {
            return Ok(T::infinity());
        }
        Ok(c * hi / lo)
    }

    /// `max|ψ| − min|ψ|`.
    pub fn norm_spread(&self) -> T {
        let norms = self.psi.values().iter().map(|p| p.norm());
        let (lo, hi) = norms.fold((T::infinity(), T::neg_infinity()), |(l, h), v| (l.min(v), h.max(v)));
        hi - lo
    }
}

/// `f = r(e^{2πxi} + jδ₁e^{2πyi/δ₁})` on a rectangular lattice, with exact derivatives.
pub fn homogeneous_torus<T: Real>(lat: TorusLattice<T>, scale: T, n: usize) -> Result<SurfaceGrid<T>> {
    if !(scale > T::zero()) {
        return Err(Error::BadScale(scale.widen()));
    }
    if !lat.delta0().is_zero() {
        return Err(Error::NotRectangular(lat.delta0().widen()));
    }
    let d1 = lat.delta1();
    let tau = T::TAU();
    let grid = Grid::new(lat, n, Covering::Base)?;
    Ok(SurfaceGrid::from_closed_form(grid, |x, y| {
        let a = Complex::from_polar(scale, tau * x);
        let b = Complex::from_polar(scale * d1, tau * y / d1);
        let i = Complex::i();
        let psi = Q::compose_j(a, Complex::zero()) + Q::j() * Q::from_complex(b);
        let px = Q::from_complex(a * i * tau);
        let py = Q::j() * Q::from_complex(b * i * (tau / d1));
        [psi, px, py]
    }))
}

#[derive(Clone, Debug)]
pub struct RightNormal<T> {
    /// `R = −ψ_x⁻¹ψ_y`; zero at masked points.
    pub field: GridField<T>,
    /// `max|R² + 1|`, the conformality defect.
    pub square_residual: T,
    /// `max|Re R|`.
    pub real_residual: T,
    /// Points with `|ψ_x|` below [`DEGENERATE_DIFFERENTIAL`].
    pub masked: Vec<(usize, usize)>,
}

/// Right normal from `ψ_y = −ψ_x R`.
pub fn right_normal<T: Real>(s: &SurfaceGrid<T>) -> Result<RightNormal<T>> {
    let (px, py) = s.conformal_derivatives()?;
    let eps = T::lit(DEGENERATE_DIFFERENTIAL);
    let raw = px.zip_with(&py, |a, b| if a.norm() < eps { None } else { a.inverse().map(|ai| -(ai * b)) })?;
    let masked: Vec<_> = s.grid().points().filter(|&(ix, iy)| raw.at(ix, iy).is_none()).collect();
    if masked.len() == s.grid().len() {
        return Err(Error::DegenerateDifferential);
    }
    let live = raw.values().iter().flatten();
    let sq = live.clone().map(|&r| (r * r + Q::real(T::one())).norm()).fold(T::zero(), T::max);
    let re = live.map(|r| r.re().abs()).fold(T::zero(), T::max);
    let field = raw.map(|r| r.unwrap_or_else(Q::zero));
    Ok(RightNormal { field, square_residual: sq, real_residual: re, masked })
}

#[derive(Clone, Debug)]
pub struct LagrangianFit<T> {
    /// `β` with `R = e^{−βi}j`, in `(−π, π]`.
    pub beta: GridField<T, T>,
    pub r: i64,
    pub s: i64,
    /// Fitted constant: `β ≈ 2π(ru + sv) + offset`.
    pub offset: T,
    /// Largest wrapped deviation from the fit.
    pub residual: T,
    /// `max|R₀|` for `R = R₀ + R₁j`.
    pub j_free_part: T,
    /// `(r, s) = (0, 0)`: the angle is constant.
    pub constant_angle: bool,
}

impl<T: Real> LagrangianFit<T> {
    /// The fitted angle map; `None` when it is constant.
    pub fn angle_map(&self, lattice: &TorusLattice<T>) -> Option<AngleMap<T>> {
        AngleMap::new(lattice.clone(), self.r, self.s).ok()
    }
}

fn wrap_pi<T: Real>(a: T) -> T {
    let tau = T::TAU();
    let w = a - tau * ((a + T::PI()) / tau).floor();
    if w <= -T::PI() {
        w + tau
    } else {
        w
    }
}

/// Reads `β` off `R = e^{−βi}j` and fits integer windings along the grid axes.
pub fn lagrangian_angle<T: Real>(field: &GridField<T>, tol: T) -> Result<LagrangianFit<T>> {
    let grid = field.grid();
    let n = grid.n();
    let j_free = field.values().iter().map(|r| r.decompose_j().0.norm()).fold(T::zero(), T::max);
    if !(j_free <= tol) {
        return Err(Error::NotLagrangian(j_free.widen()));
    }
    let beta = field.map(|r| -r.decompose_j().1.arg());
    let winding = |row: &dyn Fn(usize) -> T| {
        let mut total = T::zero();
        for k in 0..n {
            total = total + wrap_pi(row((k + 1) % n) - row(k));
        }
        total / T::TAU()
    };
    let mut wu = T::zero();
    let mut wv = T::zero();
    for line in 0..n {
        wu = wu + winding(&|ix| beta.at(ix, line));
        wv = wv + winding(&|iy| beta.at(line, iy));
    }
    let c = T::from_int(grid.covering().factor() as i64);
    let nn = T::from_int(n as i64);
    let r = (wu / nn / c).round().to_i64().unwrap_or(0);
    let s = (wv / nn / c).round().to_i64().unwrap_or(0);
    let model = |ix: usize, iy: usize| {
        let (u, v) = grid.lattice_coords(ix, iy);
        T::TAU() * (T::from_int(r) * u + T::from_int(s) * v)
    };
    let (mut sc, mut ss) = (T::zero(), T::zero());
    for (ix, iy) in grid.points() {
        let d = beta.at(ix, iy) - model(ix, iy);
        sc = sc + d.cos();
        ss = ss + d.sin();
    }
    let offset = ss.atan2(sc);
    let residual =
        grid.points().map(|(ix, iy)| wrap_pi(beta.at(ix, iy) - model(ix, iy) - offset).abs()).fold(T::zero(), T::max);
    Ok(LagrangianFit { beta, r, s, offset, residual, j_free_part: j_free, constant_angle: r == 0 && s == 0 })
}

#[derive(Clone, Debug)]
pub struct ConnectionForm<T> {
    /// `ω = −ψ⁻¹dψ`.
    pub omega: QOneForm<T>,
    /// `max|dω − ω∧ω|` on the `dx∧dy` coefficient, by finite differences.
    pub flatness: T,
}

/// `ω = −ψ⁻¹dψ` with its flatness residual.
pub fn connection_form<T: Real>(s: &SurfaceGrid<T>) -> Result<ConnectionForm<T>> {
    let inv = s.psi.map(|p| p.inverse());
    if inv.values().iter().any(|p| p.is_none()) {
        return Err(Error::ZeroSection);
    }
    let inv = inv.map(|p| p.expect("checked"));
    let d = s.differential()?;
    let cx = inv.zip_with(&d.cx, |a, b| -(a * b))?;
    let cy = inv.zip_with(&d.cy, |a, b| -(a * b))?;
    let omega = QOneForm::new(cx, cy)?;
    let flatness = if s.grid().n() >= 4 {
        let dw = omega.ext_d()?;
        let ww = wedge(&omega, &omega)?;
        let curv = QTwoForm { c: dw.c.zip_with(&ww.c, |a, b| a - b)? };
        curv.conformal().max_norm()
    } else {
        T::nan()
    };
    Ok(ConnectionForm { omega, flatness })
}

/// Largest value of a one-form on the conformal frame `∂x, ∂y`.
pub fn conformal_max<T: Real>(w: &QOneForm<T>) -> T {
    w.dx_slot().max_norm().max(w.dy_slot().max_norm())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SphereReport<T> {
    /// `max|Re ω|` on the conformal frame.
    pub max_re_omega: T,
    /// `max|ψ| − min|ψ|`.
    pub norm_spread: T,
}

/// `Re ω = −½d log|ψ|²` vanishes iff `ψ` lies on a sphere about the origin.
pub fn sphere_residual<T: Real>(s: &SurfaceGrid<T>) -> Result<SphereReport<T>> {
    let cf = connection_form(s)?;
    let re = cf.omega.map(|q| Q::real(q.re()));
    Ok(SphereReport { max_re_omega: conformal_max(&re), norm_spread: s.norm_spread() })
}

/// `max|Re ω|` against `closed(max|ω|)`, or `fd(n, K, max|ω|)` for sampled derivatives.
pub fn sphere_check<T: Real>(s: &SurfaceGrid<T>, tol: &TolProfile) -> Result<Check> {
    let cf = connection_form(s)?;
    let w = conformal_max(&cf.omega).widen();
    let re = conformal_max(&cf.omega.map(|q| Q::real(q.re()))).widen();
    let t = if s.has_exact_derivatives() { tol.closed(w) } else { tol.fd(s.grid().n(), s.turning_scale()?.widen(), w) };
    Ok(Check::at_most(re, t))
}

/// `max|Θ(ψ_x, ψ_y)|`.
pub fn lagrangian_residual<T: Real>(s: &SurfaceGrid<T>) -> Result<T> {
    let (px, py) = s.conformal_derivatives()?;
    Ok(px.zip_with(&py, |a, b| a.symplectic(b))?.max_abs())
}

#[derive(Clone, Debug)]
pub struct FundamentalForm<T> {
    pub e: GridField<T, T>,
    pub f: GridField<T, T>,
    pub g: GridField<T, T>,
}

fn spread<T: Real>(f: &GridField<T, T>) -> T {
    let (lo, hi) = f.values().iter().fold((T::infinity(), T::neg_infinity()), |(l, h), &v| (l.min(v), h.max(v)));
    hi - lo
}

impl<T: Real> FundamentalForm<T> {
    /// `max(|E − G|, |F|)`.
    pub fn conformality_defect(&self) -> T {
        let eg = self.e.zip_with(&self.g, |a, b| a - b).expect("same grid").max_abs();
        eg.max(self.f.max_abs())
    }

    /// Largest gridwise spread among `E`, `F`, `G`.
    pub fn spread(&self) -> T {
        spread(&self.e).max(spread(&self.f)).max(spread(&self.g))
    }

    pub fn mean_e(&self) -> T {
        let n = T::from_int(self.e.values().len() as i64);
        self.e.values().iter().fold(T::zero(), |a, &b| a + b) / n
    }
}

/// `E = g(ψ_x, ψ_x)`, `F = g(ψ_x, ψ_y)`, `G = g(ψ_y, ψ_y)`.
pub fn fundamental_form<T: Real>(s: &SurfaceGrid<T>) -> Result<FundamentalForm<T>> {
    let (px, py) = s.conformal_derivatives()?;
    Ok(FundamentalForm {
        e: px.map(|a| a.metric(a)),
        f: px.zip_with(&py, |a, b| a.metric(b))?,
        g: py.map(|b| b.metric(b)),
    })
}

/// `max|ω₁ − (∗ω₀)e^{−βi}|` over the conformal frame, where `ω = ω₀ + ω₁j`.
pub fn split_omega_residual<T: Real>(omega: &QOneForm<T>, beta: &GridField<T, T>) -> Result<T> {
    let wx = omega.dx_slot();
    let wy = omega.dy_slot();
    let mut worst = T::zero();
    for (ix, iy) in wx.grid().points() {
        let (x0, x1) = wx.at(ix, iy).decompose_j();
        let (y0, y1) = wy.at(ix, iy).decompose_j();
        let rot = Complex::from_polar(T::one(), -beta.at(ix, iy));
        worst = worst.max((x1 - y0 * rot).norm()).max((y1 + x0 * rot).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type Q64 = Quaternion<f64>;

    fn clifford(n: usize) -> SurfaceGrid<f64> {
        homogeneous_torus(TorusLattice::new(0.0, 1.0).unwrap(), 1.0, n).unwrap()
    }

    fn close(a: Q64, b: Q64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn homogeneous_torus_samples() {
        let s = clifford(16);
        assert!(close(s.psi().at(0, 0), Q64::new(1.0, 0.0, 1.0, 0.0), 1e-15));
        assert!(close(s.psi().at(4, 0), Q64::new(0.0, 1.0, 1.0, 0.0), 1e-15));
        assert!(s.norm_spread() < 1e-14);
        let wide = homogeneous_torus(TorusLattice::new(0.0, 2.0).unwrap(), 1.0, 32).unwrap();
        assert!(wide.psi().values().iter().all(|p| (p.norm() - 5f64.sqrt()).abs() < 1e-14));
        assert!(matches!(homogeneous_torus(TorusLattice::new(0.0, 1.0).unwrap(), 0.0, 8), Err(Error::BadScale(_))));
        assert!(matches!(
            homogeneous_torus(TorusLattice::new(0.5, 1.0).unwrap(), 1.0, 8),
            Err(Error::NotRectangular(_))
        ));
    }

    #[test]
    fn clifford_right_normal() {
        let s = clifford(16);
        let rn = right_normal(&s).unwrap();
        assert!(close(rn.field.at(0, 0), Q64::j(), 1e-14));
        assert!(close(rn.field.at(4, 0), -Q64::k(), 1e-14));
        for (ix, iy) in s.grid().points() {
            let (x, y) = s.grid().conformal_coords(ix, iy);
            let expect = Q64::exp_i(-2.0 * PI * (x + y)) * Q64::j();
            assert!(close(rn.field.at(ix, iy), expect, 1e-13));
        }
        assert!(rn.square_residual < 1e-13 && rn.real_residual < 1e-13);
        let moved = right_normal(&s.translated(Q64::new(3.0, -1.0, 0.5, 2.0))).unwrap();
        assert!(close(moved.field.at(3, 7), rn.field.at(3, 7), 1e-14));
    }

    #[test]
    fn lagrangian_angle_of_clifford() {
        let s = clifford(32);
        let rn = right_normal(&s).unwrap();
        let fit = lagrangian_angle(&rn.field, 1e-10).unwrap();
        assert_eq!((fit.r, fit.s), (1, 1));
        assert!(fit.residual < 1e-12 && fit.offset.abs() < 1e-12);
        let g = s.grid().clone();
        let constant = lagrangian_angle(&GridField::constant(g.clone(), Q64::j()), 1e-10).unwrap();
        assert!(constant.constant_angle);
        assert!(matches!(lagrangian_angle(&GridField::constant(g, Q64::i()), 1e-10), Err(Error::NotLagrangian(_))));
    }

    #[test]
    fn clifford_connection_form() {
        let s = clifford(64);
        let cf = connection_form(&s).unwrap();
        assert!(close(cf.omega.dx_slot().at(0, 0), Q64::new(0.0, -PI, 0.0, -PI), 1e-13));
        let fd = connection_form(&s.finite_difference()).unwrap();
        assert!(fd.flatness < 50.0 / 64.0 / 64.0 * 4.0 * PI * PI * 8.0 * PI * PI);
        let one = SurfaceGrid::new(GridField::constant(s.grid().clone(), Q64::real(1.0)));
        assert_eq!(conformal_max(&connection_form(&one).unwrap().omega), 0.0);
        let doubled = connection_form(&s.left_multiplied(Q64::real(2.0))).unwrap();
        assert!(conformal_max(&doubled.omega.zip_with(&cf.omega, |a, b| a - b).unwrap()) < 1e-13);
        let zero = SurfaceGrid::new(GridField::constant(s.grid().clone(), Q64::zero()));
        assert!(matches!(connection_form(&zero), Err(Error::ZeroSection)));
    }

    #[test]
    fn sphere_and_lagrangian_residuals() {
        let s = clifford(128).finite_difference();
        let sr = sphere_residual(&s).unwrap();
        assert!(sr.max_re_omega < 1e-12 && sr.norm_spread < 1e-12);
        assert!(lagrangian_residual(&s).unwrap() < 1e-10);
        let moved = sphere_residual(&s.translated(Q64::real(2.0))).unwrap();
        assert!(moved.max_re_omega > 0.5 && moved.norm_spread > 0.5);
    }

    #[test]
    fn lagrangian_pullback_of_sheared_torus() {
        let grid = Grid::new(TorusLattice::new(0.0, 1.0).unwrap(), 64, Covering::Base).unwrap();
        let tau = 2.0 * PI;
        let s = SurfaceGrid::from_closed_form(grid, |x, y| {
            let ex = Complex::from_polar(1.0, tau * x);
            let ey = Complex::from_polar(1.0, tau * y);
            let i = Complex::i();
            let psi = Q64::from_complex(ex) + Q64::j() * Q64::from_complex(ey + ex * 0.3);
            let px = Q64::from_complex(ex * i * tau) + Q64::j() * Q64::from_complex(ex * i * (0.3 * tau));
            let py = Q64::j() * Q64::from_complex(ey * i * tau);
            [psi, px, py]
        });
        let (px, py) = s.conformal_derivatives().unwrap();
        for (ix, iy) in s.grid().points() {
            let (x, y) = s.grid().conformal_coords(ix, iy);
            let theta = px.at(ix, iy).symplectic(py.at(ix, iy));
            assert!((theta - 1.2 * PI * PI * (tau * (y - x)).sin()).abs() < 1e-12);
        }
        let max = lagrangian_residual(&s).unwrap();
        assert!((max - 1.2 * PI * PI).abs() < 1e-3 * max);
    }

    #[test]
    fn fundamental_form_of_clifford() {
        let ff = fundamental_form(&clifford(32)).unwrap();
        assert!((ff.mean_e() - 4.0 * PI * PI).abs() < 1e-12);
        assert!(ff.conformality_defect() < 1e-12 && ff.spread() < 1e-12);
        let one = SurfaceGrid::new(GridField::constant(clifford(8).grid().clone(), Q64::real(1.0)));
        let z = fundamental_form(&one).unwrap();
        assert_eq!(z.e.max_abs() + z.f.max_abs() + z.g.max_abs(), 0.0);
    }

    #[test]
    fn split_omega_on_clifford() {
        let s = clifford(32);
        let cf = connection_form(&s).unwrap();
        let fit = lagrangian_angle(&right_normal(&s).unwrap().field, 1e-10).unwrap();
        assert!(split_omega_residual(&cf.omega, &fit.beta).unwrap() < 1e-12);
    }
}
