//! Integer classification of the compact members of the associated family.
//!
//! For an angle map with windings `(r, s)` on `Λ_δ`, a member `∇_{η²}` has a
//! parallel section periodic on `Λ̃_δ` exactly when there are integers
//! `(m, n)` with
//!
//! `(m² − r²)δ₀² − 2(mn − rs)δ₀ + (m² − r²)δ₁² + n² − s² = 0`,
//!
//! and then `η = (mδ₁ − (mδ₀ − n)i)/(rδ₁ − (rδ₀ − s)i)`. The parallel section
//! is the homogeneous torus
//!
//! `ψ = (F₀₀ − ηF₃₀ij)[(1 − η)e^{iπ((m+r)u + (n+s)v)} + (1 + η)ie^{iπ((m−r)u + (n−s)v)}j]`
//!
//! in lattice coordinates `z = u + vδ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{
    dirac_residual, family_matrix_form, frame_convert, parallel_residual, FamilyPoint, Frame, Section, Spinor,
};
use crate::grid::{Grid, GridField, MaxNorm};
use crate::quat::Quaternion;
use crate::scalar::Real;
use crate::spectral::trace_closed_form;
use crate::surface::{connection_form, fundamental_form, lagrangian_residual, sphere_check, SurfaceGrid};
use crate::tolerance::{Check, TolProfile};
use crate::torus::{AngleMap, Covering, ExactDelta};

type C<T> = Complex<T>;
type Q<T> = Quaternion<T>;

/// Relative tolerance of the floating fallback for the constraint.
pub const INEXACT_TOL: f64 = 1e-9;

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The constraint evaluated exactly.
pub fn constraint_exact(d: &ExactDelta, r: i64, s: i64, m: i64, n: i64) -> BigRational {
    let a = &d.delta0 * &d.delta0 + &d.delta1_sq;
    (big(m * m) - big(r * r)) * a - big(2 * (m * n - r * s)) * &d.delta0 + big(n * n) - big(s * s)
}

/// The constraint in floating point, with the magnitude of its largest term.
pub fn constraint_float(d0: f64, d1: f64, r: i64, s: i64, m: i64, n: i64) -> (f64, f64) {
    let (r, s, m, n) = (r as f64, s as f64, m as f64, n as f64);
    let terms = [(m * m - r * r) * d0 * d0, -2.0 * (m * n - r * s) * d0, (m * m - r * r) * d1 * d1, n * n, -s * s];
    let scale = terms.iter().map(|t| t.abs()).fold(0.0, f64::max);
    (terms.iter().sum(), scale)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (p, d) = (q.numer(), q.denom());
    let (sp, sd) = (p.sqrt(), d.sqrt());
    if &(&sp * &sp) == p && &(&sd * &sd) == d {
        Some(BigRational::new(sp, sd))
    } else {
        None
    }
}

/// All `(m, n)` in `[−bound, bound]²` solving the constraint, by solving the
/// quadratic in `n` for each `m` with exact rational square roots.
pub fn solve_exact(d: &ExactDelta, r: i64, s: i64, bound: i64) -> Vec<(i64, i64)> {
    let a = &d.delta0 * &d.delta0 + &d.delta1_sq;
    let mut out = Vec::new();
    for m in -bound..=bound {
        let c = (big(m * m) - big(r * r)) * &a + big(2 * r * s) * &d.delta0 - big(s * s);
        let center = big(m) * &d.delta0;
        let disc = &center * &center - c;
        let Some(root) = rational_sqrt(&disc) else { continue };
        let mut ns: Vec<i64> = [&center - &root, &center + &root]
            .iter()
            .filter(|n| n.is_integer())
            .filter_map(|n| n.to_integer().to_i64())
            .filter(|n| n.abs() <= bound)
            .collect();
        ns.dedup();
        out.extend(ns.into_iter().map(|n| (m, n)));
    }
    out
}

/// Floating fallback: brute force with relative tolerance [`INEXACT_TOL`].
pub fn solve_float(d0: f64, d1: f64, r: i64, s: i64, bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            let (v, scale) = constraint_float(d0, d1, r, s, m, n);
            if v.abs() <= INEXACT_TOL * scale.max(1.0) {
                out.push((m, n));
            }
        }
    }
    out
}

/// `(m, n) ∈ {(±r, ±s)}`.
pub fn is_excluded(r: i64, s: i64, m: i64, n: i64) -> bool {
    m.abs() == r.abs() && n.abs() == s.abs()
}

/// `η = ±1`, i.e. `(m, n) = ±(r, s)`: the member is the trivial connection.
pub fn is_trivial(r: i64, s: i64, m: i64, n: i64) -> bool {
    (m, n) == (r, s) || (m, n) == (-r, -s)
}

/// `(mδ₁ − (mδ₀ − n)i)/(rδ₁ − (rδ₀ − s)i)`, without the exclusion check.
pub fn eta_raw<T: Real>(am: &AngleMap<T>, m: i64, n: i64) -> C<T> {
    let l = am.lattice();
    let (d0, d1) = (l.delta0(), l.delta1());
    let f = |k: i64| T::from_int(k);
    let num = C::new(f(m) * d1, -(f(m) * d0 - f(n)));
    let den = C::new(f(am.r()) * d1, -(f(am.r()) * d0 - f(am.s())));
    num / den
}

/// `(rδ₁ + (rδ₀ − s)i)/(mδ₁ + (mδ₀ − n)i)`.
pub fn eta_alternate<T: Real>(am: &AngleMap<T>, m: i64, n: i64) -> C<T> {
    let l = am.lattice();
    let (d0, d1) = (l.delta0(), l.delta1());
    let f = |k: i64| T::from_int(k);
    let num = C::new(f(am.r()) * d1, f(am.r()) * d0 - f(am.s()));
    let den = C::new(f(m) * d1, f(m) * d0 - f(n));
    num / den
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionQuad<T> {
    pub m: i64,
    pub n: i64,
    pub am: AngleMap<T>,
    pub eta: C<T>,
    pub excluded: bool,
    /// The constraint was decided in exact arithmetic.
    pub exact: bool,
}

impl<T: Real> SolutionQuad<T> {
    pub fn r(&self) -> i64 {
        self.am.r()
    }

    pub fn s(&self) -> i64 {
        self.am.s()
    }

    /// `(|Re(β_zη̄) − mπ|, |Re(β_zη̄δ) − nπ|)`.
    pub fn periodicity_defects(&self) -> (T, T) {
        let w = self.am.beta_z() * self.eta.conj();
        let pi = T::PI();
        let d = self.am.lattice().delta();
        ((w.re - pi * T::from_int(self.m)).abs(), ((w * d).re - pi * T::from_int(self.n)).abs())
    }

    /// `π·max(|m|, |n|)`, the largest axis wavenumber of the parallel section.
    pub fn wavenumber(&self) -> T {
        T::PI() * T::from_int(self.m.abs().max(self.n.abs()).max(1))
    }

    /// Closed-form checks of the quad alone.
    pub fn closed_form_checks(&self, tol: &TolProfile) -> BTreeMap<&'static str, Check> {
        let mut c = BTreeMap::new();
        let l = self.am.lattice();
        let value = match l.exact() {
            Some(d) => constraint_exact(d, self.r(), self.s(), self.m, self.n).to_f64().unwrap_or(f64::NAN).abs(),
            None => {
                constraint_float(l.delta0().widen(), l.delta1().widen(), self.r(), self.s(), self.m, self.n).0.abs()
            }
        };
        let ctol = if self.exact { 0.0 } else { INEXACT_TOL };
        c.insert("constraint", Check::at_most(value, ctol));
        c.insert("eta_unit", Check::at_most((self.eta.norm() - T::one()).abs().widen(), 1e-12));
        let (p0, p1) = self.periodicity_defects();
        let scale = self.wavenumber().widen();
        c.insert("periodicity_m", Check::at_most(p0.widen(), tol.closed(scale)));
        c.insert("periodicity_n", Check::at_most(p1.widen(), tol.closed(scale)));
        let alt = (eta_alternate(&self.am, self.m, self.n) - self.eta).norm().widen();
        c.insert("eta_alternate", Check::at_most(alt, 1e-12));
        c
    }
}

/// All solutions with `|m|, |n| ≤ bound`. Exact when the lattice carries
/// exact `δ₀`, `δ₁²`; otherwise a flagged floating search.
pub fn enumerate_solutions<T: Real>(am: &AngleMap<T>, bound: i64) -> Result<Vec<SolutionQuad<T>>> {
    if bound < 1 {
        return Err(Error::BadBound);
    }
    let (r, s) = (am.r(), am.s());
    let l = am.lattice();
    let (pairs, exact) = match l.exact() {
        Some(d) => (solve_exact(d, r, s, bound), true),
        None => (solve_float(l.delta0().widen(), l.delta1().widen(), r, s, bound), false),
    };
    Ok(pairs
        .into_iter()
        .map(|(m, n)| SolutionQuad {
            m,
            n,
            am: am.clone(),
            eta: eta_raw(am, m, n),
            excluded: is_excluded(r, s, m, n),
            exact,
        })
        .collect())
}

/// `η` of a non-excluded quad.
pub fn eta_of_solution<T: Real>(q: &SolutionQuad<T>) -> Result<C<T>> {
    if q.excluded {
        return Err(Error::TrivialEta { m: q.m, n: q.n });
    }
    Ok(q.eta)
}

#[derive(Clone, Debug)]
pub struct ConstructedTorus<T> {
    pub quad: SolutionQuad<T>,
    pub f00: C<T>,
    pub f30: C<T>,
    /// `ψ` on the doubled grid, with closed-form derivatives.
    pub surface: SurfaceGrid<T>,
    /// `λ = (1, ηi)F₀₀e^{iRe(β_zη̄z)} + (1, −ηi)F₃₀e^{−iRe(β_zη̄z)}` in the frame `(θ, jθ)`.
    pub lambda: GridField<T, Spinor<T>>,
}

/// The bracket `b₀e^{iθ₀} + b₁ie^{iθ₁}j` of the construction and its lattice derivatives.
struct Bracket<T> {
    c0: C<T>,
    c1: C<T>,
    k0: (T, T),
    k1: (T, T),
}

impl<T: Real> Bracket<T> {
    fn eval(&self, u: T, v: T) -> [Q<T>; 3] {
        let i = C::<T>::i();
        let e0 = C::from_polar(T::one(), self.k0.0 * u + self.k0.1 * v) * self.c0;
        let e1 = C::from_polar(T::one(), self.k1.0 * u + self.k1.1 * v) * self.c1 * i;
        let q = |a: C<T>, b: C<T>| Q::compose_j(a, b);
        [q(e0, e1), q(e0 * i * self.k0.0, e1 * i * self.k1.0), q(e0 * i * self.k0.1, e1 * i * self.k1.1)]
    }
}

fn bracket<T: Real>(q: &SolutionQuad<T>, c0: C<T>, c1: C<T>) -> Bracket<T> {
    let pi = T::PI();
    let f = |k: i64| pi * T::from_int(k);
    let (m, n, r, s) = (q.m, q.n, q.r(), q.s());
    Bracket { c0, c1, k0: (f(m + r), f(n + s)), k1: (f(m - r), f(n - s)) }
}

fn sample<T: Real>(grid: &Grid<T>, pre: Q<T>, b: &Bracket<T>) -> Result<SurfaceGrid<T>> {
    let vals = GridField::from_lattice_fn(grid.clone(), |u, v| b.eval(u, v));
    SurfaceGrid::with_derivatives(vals.map(|w| pre * w[0]), vals.map(|w| pre * w[1]), vals.map(|w| pre * w[2]))
}

/// Samples the parallel section of a non-excluded quad on the doubled grid.
pub fn construct_parallel_section<T: Real>(
    q: &SolutionQuad<T>,
    f00: C<T>,
    f30: C<T>,
    n: usize,
) -> Result<ConstructedTorus<T>> {
    let eta = eta_of_solution(q)?;
    if f00.is_zero() && f30.is_zero() {
        return Err(Error::ZeroConstants);
    }
    let one = C::new(T::one(), T::zero());
    let i = C::<T>::i();
    let grid = Grid::new(q.am.lattice().clone(), n, Covering::Double)?;
    let pre = Q::compose_j(f00, -(eta * f30 * i));
    let surface = sample(&grid, pre, &bracket(q, one - eta, one + eta))?;
    let pi = T::PI();
    let (m, nn) = (T::from_int(q.m), T::from_int(q.n));
    let lambda = GridField::from_lattice_fn(grid, |u, v| {
        let e = C::from_polar(T::one(), pi * (m * u + nn * v));
        let a = Spinor::new(one, eta * i).scale(f00 * e);
        let b = Spinor::new(one, -(eta * i)).scale(f30 * e.conj());
        a + b
    });
    Ok(ConstructedTorus { quad: q.clone(), f00, f30, surface, lambda })
}

/// A second closed form of the same torus, kept as a cross-check:
/// prefactor `F₀₀ − κF₃₀ij` with `κ = (mδ₁ − (nδ₀ − s))/(rδ₁ − (rδ₀ − s))`, and
/// bracket coefficients `{(r∓m)δ₁ − [(r∓m)δ₀ − (s∓n)]i}/(rδ₁ − (rδ₀ − s)i)`.
pub fn alternate_surface<T: Real>(t: &ConstructedTorus<T>) -> Result<SurfaceGrid<T>> {
    let q = &t.quad;
    let l = q.am.lattice();
    let (d0, d1) = (l.delta0(), l.delta1());
    let f = |k: i64| T::from_int(k);
    let (m, n, r, s) = (q.m, q.n, q.r(), q.s());
    let kappa = (f(m) * d1 - (f(n) * d0 - f(s))) / (f(r) * d1 - (f(r) * d0 - f(s)));
    let den = C::new(f(r) * d1, -(f(r) * d0 - f(s)));
    let coeff = |a: i64, b: i64| C::new(f(a) * d1, -(f(a) * d0 - f(b))) / den;
    let i = C::<T>::i();
    let pre = Q::compose_j(t.f00, -(t.f30 * i * kappa));
    sample(t.surface.grid(), pre, &bracket(q, coeff(r - m, s - n), coeff(r + m, s + n)))
}

/// `λ₀θ + λ₁jθ` in the frame `ε`, as quaternions.
pub fn lambda_surface<T: Real>(t: &ConstructedTorus<T>) -> Result<GridField<T>> {
    let sec = Section::new(t.lambda.clone(), Frame::Theta);
    frame_convert(&t.quad.am, &sec, Frame::Epsilon)?.to_quaternions()
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub residuals: BTreeMap<&'static str, Check>,
    /// Diagnostics without a pass/fail verdict.
    pub info: BTreeMap<&'static str, f64>,
    pub pass: bool,
}

impl Report {
    fn new(residuals: BTreeMap<&'static str, Check>, info: BTreeMap<&'static str, f64>) -> Self {
        let pass = residuals.values().all(|c| c.pass);
        Self { residuals, info, pass }
    }
}

/// Geometric checks of an arbitrary sampled surface: sphere containment,
/// the Lagrangian condition and homogeneity of the first fundamental form.
///
/// Tolerances are closed-form when exact derivatives are present and
/// `fd_coeff·n⁻²·K²·M` otherwise.
pub fn verify_surface<T: Real>(s: &SurfaceGrid<T>, tol: &TolProfile) -> Result<Report> {
    let mut res = BTreeMap::new();
    let mut info = BTreeMap::new();
    let n = s.grid().n();
    let k = s.turning_scale()?.widen();
    let exact = s.has_exact_derivatives();
    let pick = |m: f64| if exact { tol.closed(m) } else { tol.fd(n, k, m) };
    let mean = {
        let v = s.psi().values();
        v.iter().map(|p| p.norm().widen()).sum::<f64>() / v.len() as f64
    };
    res.insert("norm_spread", Check::at_most(s.norm_spread().widen(), 1e-12 * mean.max(1.0)));
    res.insert("sphere", sphere_check(s, tol)?);
    let (px, py) = s.conformal_derivatives()?;
    let pxy = (px.max_norm() * py.max_norm()).widen();
    res.insert("lagrangian", Check::at_most(lagrangian_residual(s)?.widen(), pick(pxy)));
    let ff = fundamental_form(s)?;
    let e = ff.mean_e().widen();
    let homo_tol = if exact { 1e-8 * e } else { tol.fd(n, k, e) };
    res.insert("conformal", Check::at_most(ff.conformality_defect().widen(), homo_tol));
    res.insert("homogeneous", Check::at_most(ff.spread().widen(), homo_tol));
    info.insert("mean_norm", mean);
    info.insert("mean_e", e);
    info.insert("turning_scale", k);
    info.insert("flatness_fd", connection_form(s)?.flatness.widen());
    info.insert("grid", n as f64);
    info.insert("covering", s.covering().factor() as f64);
    Ok(Report::new(res, info))
}

/// `ψ(u + 1, v)/ψ(u, v)` and `ψ(u, v + 1)/ψ(u, v)` on the doubled grid, as real signs.
fn measured_signs<T: Real>(s: &SurfaceGrid<T>) -> (f64, f64, f64) {
    let psi = s.psi();
    let half = (s.grid().n() / 2) as i64;
    let mut worst = 0.0f64;
    let mut sign = |du: i64, dv: i64| {
        let mut acc = 0.0;
        for (ix, iy) in s.grid().points() {
            let a = psi.at(ix, iy);
            let b = psi.get(ix as i64 + du, iy as i64 + dv);
            acc += a.metric(b).widen() / a.norm_sqr().widen();
        }
        let mean = acc / s.grid().len() as f64;
        let sg = mean.signum();
        for (ix, iy) in s.grid().points() {
            let a = psi.at(ix, iy);
            let b = psi.get(ix as i64 + du, iy as i64 + dv);
            worst = worst.max((b - a * T::lit(sg)).norm().widen() / a.norm().widen().max(f64::MIN_POSITIVE));
        }
        sg
    };
    let s0 = sign(half, 0);
    let s1 = sign(0, half);
    (s0, s1, worst)
}

/// Full report for a constructed torus.
pub fn verify_torus<T: Real>(t: &ConstructedTorus<T>, tol: &TolProfile) -> Result<Report> {
    let mut report = verify_surface(&t.surface, tol)?;
    let q = &t.quad;
    let n = t.surface.grid().n();
    let c = t.surface.covering().factor() as f64;
    let mut res = q.closed_form_checks(tol);
    let mut info = BTreeMap::new();

    let gc = family_matrix_form(&q.am, FamilyPoint::new(q.eta)?);
    let l = q.am.lattice();
    let (d0, d1) = (l.delta0().widen().abs(), l.delta1().widen());
    let rho = q.wavenumber().widen();
    let geom = 1.0 + (1.0 + d0) / d1;

    let psi_sec = Section::from_quaternions(t.surface.psi());
    let v = frame_convert(&q.am, &psi_sec, Frame::EpsilonTilde)?;
    let amp = v.coeffs.max_norm().widen();
    let par = parallel_residual(&gc, &v)?.widen();
    res.insert("parallel", Check::at_most(par, tol.parallel(n, c * rho, amp * rho * geom)));

    let lam_amp = t.lambda.max_norm().widen();
    let dirac = dirac_residual(&q.am, &t.lambda)?.widen();
    res.insert("dirac", Check::at_most(dirac, tol.parallel(n, c * rho, lam_amp * rho * geom)));

    let mag = t.surface.psi().max_norm().widen();
    let from_lambda = lambda_surface(t)?;
    let lam_gap = crate::grid::max_diff(&from_lambda, t.surface.psi())?.widen();
    res.insert("lambda_reconstruction", Check::at_most(lam_gap, tol.closed(mag)));

    let alternate = alternate_surface(t)?;
    let alternate_gap = crate::grid::max_diff(alternate.psi(), t.surface.psi())?.widen();
    info.insert("alternate_vs_construction", alternate_gap);
    info.insert("alternate_vs_lambda", crate::grid::max_diff(alternate.psi(), &from_lambda)?.widen());

    let (s0, s1, sign_gap) = measured_signs(&t.surface);
    let traces = trace_closed_form(&q.am, q.eta)?;
    let parity = |k: i64| if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let p0 = traces.g0.re.widen() / 2.0 * parity(q.r());
    let p1 = traces.g1.re.widen() / 2.0 * parity(q.s());
    res.insert("covering_sign", Check::at_most(sign_gap + (s0 - p0).abs() + (s1 - p1).abs(), tol.closed(1.0)));
    info.insert("sign0", s0);
    info.insert("sign1", s1);
    info.insert("g0_re", traces.g0.re.widen());
    info.insert("g1_re", traces.g1.re.widen());
    info.insert("base_periodic", if s0 > 0.0 && s1 > 0.0 { 1.0 } else { 0.0 });

    report.residuals.append(&mut res);
    report.info.append(&mut info);
    report.pass = report.residuals.values().all(|c| c.pass);
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadRecord {
    pub m: i64,
    pub n: i64,
    pub r: i64,
    pub s: i64,
    pub delta0: f64,
    pub delta1: f64,
    pub eta: [f64; 2],
    pub excluded: bool,
    pub exact: bool,
    pub residuals: BTreeMap<&'static str, Check>,
    pub pass: bool,
}

impl QuadRecord {
    pub fn new<T: Real>(q: &SolutionQuad<T>, residuals: BTreeMap<&'static str, Check>) -> Self {
        let l = q.am.lattice();
        let pass = residuals.values().all(|c| c.pass);
        Self {
            m: q.m,
            n: q.n,
            r: q.r(),
            s: q.s(),
            delta0: l.delta0().widen(),
            delta1: l.delta1().widen(),
            eta: [q.eta.re.widen(), q.eta.im.widen()],
            excluded: q.excluded,
            exact: q.exact,
            residuals,
            pass,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorusLattice;

    type C64 = Complex<f64>;
    type Q64 = Quaternion<f64>;

    fn exact_am(p0: i64, q0: i64, p1: i64, q1: i64, r: i64, s: i64) -> AngleMap<f64> {
        let lat = TorusLattice::from_exact(ExactDelta::from_fractions(p0, q0, p1, q1)).unwrap();
        AngleMap::new(lat, r, s).unwrap()
    }

    fn kept(qs: &[SolutionQuad<f64>]) -> Vec<(i64, i64)> {
        qs.iter().filter(|q| !q.excluded).map(|q| (q.m, q.n)).collect()
    }

    #[test]
    fn enumeration_examples() {
        let qs = enumerate_solutions(&exact_am(0, 1, 1, 1, 1, 0), 6).unwrap();
        assert_eq!(kept(&qs), vec![(0, -1), (0, 1)]);
        let qs = enumerate_solutions(&exact_am(0, 1, 1, 1, 3, 4), 10).unwrap();
        let mut k = kept(&qs);
        k.sort();
        let mut want = vec![(0, 5), (0, -5), (5, 0), (-5, 0), (4, 3), (4, -3), (-4, 3), (-4, -3)];
        want.sort();
        assert_eq!(k, want);
        let qs = enumerate_solutions(&exact_am(1, 2, 1, 1, 1, 0), 3).unwrap();
        assert!(kept(&qs).contains(&(1, 1)));
        assert!(matches!(enumerate_solutions(&exact_am(0, 1, 1, 1, 1, 0), 0), Err(Error::BadBound)));
    }

    #[test]
    fn float_fallback_agrees() {
        let am = AngleMap::new(TorusLattice::new(0.0, 1.0).unwrap(), 3, 4).unwrap();
        let qs = enumerate_solutions(&am, 10).unwrap();
        assert!(qs.iter().all(|q| !q.exact));
        let exact = enumerate_solutions(&exact_am(0, 1, 1, 1, 3, 4), 10).unwrap();
        let pairs = |v: &[SolutionQuad<f64>]| v.iter().map(|q| (q.m, q.n)).collect::<Vec<_>>();
        assert_eq!(pairs(&qs), pairs(&exact));
    }

    #[test]
    fn eta_examples() {
        let close = |a: C64, b: C64| (a - b).norm() < 1e-14;
        assert!(close(eta_raw(&exact_am(0, 1, 1, 1, 1, 0), 0, 1), C64::i()));
        assert!(close(eta_raw(&exact_am(0, 1, 1, 1, 3, 4), 5, 0), C64::new(0.6, -0.8)));
        assert!(close(eta_raw(&exact_am(1, 2, 1, 1, 1, 0), 1, 1), C64::new(0.6, 0.8)));
        let am = exact_am(0, 1, 1, 1, 3, 4);
        for q in enumerate_solutions(&am, 10).unwrap() {
            if q.excluded {
                assert!(matches!(eta_of_solution(&q), Err(Error::TrivialEta { .. })));
            } else {
                let checks = q.closed_form_checks(&TolProfile::PAPER);
                assert!(checks.values().all(|c| c.pass), "{checks:?}");
            }
        }
        assert!(is_trivial(3, 4, -3, -4) && !is_trivial(3, 4, 3, -4));
        assert!(close(eta_raw(&am, 3, -4), C64::new(-7.0, -24.0) / 25.0));
    }

    #[test]
    fn constructed_example() {
        let am = exact_am(0, 1, 1, 1, 1, 0);
        let q = enumerate_solutions(&am, 1).unwrap().into_iter().find(|q| (q.m, q.n) == (0, 1)).unwrap();
        let t = construct_parallel_section(&q, C64::new(1.0, 0.0), C64::new(0.0, 0.0), 32).unwrap();
        assert!((t.surface.psi().at(0, 0) - Q64::new(1.0, -1.0, -1.0, 1.0)).norm() < 1e-14);
        assert!(t.surface.psi().values().iter().all(|p| (p.norm() - 2.0).abs() < 1e-14));
        let report = verify_torus(&t, &TolProfile::PAPER).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.info["sign1"], -1.0);
        assert!(matches!(
            construct_parallel_section(&q, C64::new(0.0, 0.0), C64::new(0.0, 0.0), 32),
            Err(Error::ZeroConstants)
        ));
    }
}
