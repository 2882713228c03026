//! Holonomy of the extended family and the spectral curve `η² = ζ`.
//!
//! The traces `g₀`, `g₁` of the holonomy matrices are single-valued in `η`,
//! so everything here is parameterized by `η` and never by a root of `ζ`.
//!
//! The discriminants `g² − 4` are evaluated as `−4 sin²(A)` where
//! `g = 2cos A`, which keeps their zeros free of cancellation.

use std::io::Write;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{family_matrix_form, FamilyPoint, GaugedConnection};
use crate::format::fmt_f64;
use crate::mat2::Mat2;
use crate::scalar::Real;
use crate::torus::AngleMap;

type C<T> = Complex<T>;

/// `exp [[a, b], [b, −a]] = cosh t·I + (sinh t/t)·G` with `t² = a² + b²`.
///
/// Both coefficients are even in `t`, so the branch of the root is
/// irrelevant; near `t = 0` they are summed as series.
pub fn expm_traceless<T: Real>(a: C<T>, b: C<T>) -> Mat2<T> {
    let t2 = a * a + b * b;
    let one = C::new(T::one(), T::zero());
    let (ch, shc) = if t2.norm() < T::lit(1e-4) {
        let t4 = t2 * t2;
        let t6 = t4 * t2;
        (
            one + t2 / T::lit(2.0) + t4 / T::lit(24.0) + t6 / T::lit(720.0),
            one + t2 / T::lit(6.0) + t4 / T::lit(120.0) + t6 / T::lit(5040.0),
        )
    } else {
        let t = t2.sqrt();
        (t.cosh(), t.sinh() / t)
    };
    Mat2::identity().scale(ch) + Mat2::new(a, b, b, -a).scale(shc)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolonomyPair<T> {
    pub g0: Mat2<T>,
    pub g1: Mat2<T>,
    pub eta: C<T>,
}

impl<T: Real> HolonomyPair<T> {
    /// `max(|det G₀ − 1|, |det G₁ − 1|)`.
    pub fn det_defect(&self) -> T {
        let one = C::new(T::one(), T::zero());
        (self.g0.det() - one).norm().max((self.g1.det() - one).norm())
    }

    /// `‖G₀G₁ − G₁G₀‖`.
    pub fn commutator_norm(&self) -> T {
        self.g0.commutator(self.g1).norm()
    }
}

/// `G_m = exp[−B(γ̇_m)]`, exact since `B` is constant.
pub fn holonomy_matrices<T: Real>(gc: &GaugedConnection<T>) -> HolonomyPair<T> {
    let exp_neg = |b: &Mat2<T>| expm_traceless(-b.m[0][0], -b.m[0][1]);
    HolonomyPair { g0: exp_neg(&gc.bx), g1: exp_neg(&gc.bv), eta: gc.point.eta() }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralSample<T> {
    pub eta: C<T>,
    pub g0: C<T>,
    pub g1: C<T>,
    /// `g₀² − 4`.
    pub disc0: C<T>,
    /// `g₁² − 4`.
    pub disc1: C<T>,
}

/// Cosine arguments `A₀`, `A₁` with `g_m = 2cos A_m`.
pub fn trace_arguments<T: Real>(am: &AngleMap<T>, eta: C<T>) -> Result<(C<T>, C<T>)> {
    if eta.norm() == T::zero() {
        return Err(Error::ZeroEta);
    }
    let (bz, bzb) = (am.beta_z(), am.beta_zbar());
    let d = am.lattice().delta();
    let zeta = eta * eta;
    let two = T::lit(2.0);
    Ok(((bzb * zeta + bz) / (eta * two), (bzb * d.conj() * zeta + bz * d) / (eta * two)))
}

/// `g₀ = 2cos((β_z̄ζ + β_z)/(2η))`, `g₁ = 2cos((β_z̄δ̄ζ + β_zδ)/(2η))`.
pub fn trace_closed_form<T: Real>(am: &AngleMap<T>, eta: C<T>) -> Result<SpectralSample<T>> {
    let (a0, a1) = trace_arguments(am, eta)?;
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let s0 = a0.sin();
    let s1 = a1.sin();
    Ok(SpectralSample {
        eta,
        g0: a0.cos() * two,
        g1: a1.cos() * two,
        disc0: -(s0 * s0) * four,
        disc1: -(s1 * s1) * four,
    })
}

/// `|g₀(η) − g₀(−η)| + |g₁(η) − g₁(−η)|`.
pub fn sheet_symmetry_defect<T: Real>(am: &AngleMap<T>, eta: C<T>) -> Result<T> {
    let p = trace_closed_form(am, eta)?;
    let m = trace_closed_form(am, -eta)?;
    Ok((p.g0 - m.g0).norm() + (p.g1 - m.g1).norm())
}

/// Holonomy through the matrix exponential at `η`.
pub fn holonomy_at<T: Real>(am: &AngleMap<T>, eta: C<T>) -> Result<HolonomyPair<T>> {
    Ok(holonomy_matrices(&family_matrix_form(am, FamilyPoint::new(eta)?)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    pub phi: f64,
    pub disc_abs: f64,
    /// `|d disc₀/dφ|` by central differences with step [`DERIVATIVE_STEP`].
    pub d1_abs: f64,
    /// `|d² disc₀/dφ²|`, same step.
    pub d2_abs: f64,
    /// `log₂(|disc₀(φ + 2h)| / |disc₀(φ + h)|)`: 2 at a double zero.
    pub order: f64,
}

#[derive(Clone, Debug)]
pub struct SpectralScan<T> {
    pub phis: Vec<T>,
    pub samples: Vec<SpectralSample<T>>,
    pub zeros: Vec<ZeroReport>,
    /// `max|disc₀|` over the samples.
    pub scale: T,
}

pub const DERIVATIVE_STEP: f64 = 1e-4;
/// A refined minimum counts as a zero when `|disc₀| ≤ ZERO_TOL · scale`.
pub const ZERO_TOL: f64 = 1e-8;

fn golden_min<T: Real>(f: impl Fn(T) -> T, mut a: T, mut b: T) -> T {
    let g = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let mut c = b - (b - a) * g;
    let mut d = a + (b - a) * g;
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= T::epsilon() * (T::one() + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * g;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * g;
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// Samples `η = e^{φi}`, `φ = 2πk/count`, and locates the zeros of `disc₀`.
pub fn spectral_scan<T: Real>(am: &AngleMap<T>, count: usize) -> Result<SpectralScan<T>> {
    if count < 16 {
        return Err(Error::TooFewSamples(count));
    }
    let disc = |phi: T| trace_closed_form(am, C::from_polar(T::one(), phi)).map(|s| s.disc0);
    let step = T::TAU() / T::from_int(count as i64);
    let phis: Vec<T> = (0..count).map(|k| step * T::from_int(k as i64)).collect();
    let samples =
        phis.iter().map(|&p| trace_closed_form(am, C::from_polar(T::one(), p))).collect::<Result<Vec<_>>>()?;
    let mags: Vec<T> = samples.iter().map(|s| s.disc0.norm()).collect();
    let scale = mags.iter().copied().fold(T::zero(), T::max);
    let mut zeros = Vec::new();
    for k in 0..count {
        let prev = mags[(k + count - 1) % count];
        let next = mags[(k + 1) % count];
        if !(mags[k] < prev && mags[k] <= next) {
            continue;
        }
        let phi = golden_min(|p| disc(p).map(|d| d.norm()).unwrap_or(T::infinity()), phis[k] - step, phis[k] + step);
        let at = disc(phi)?;
        if at.norm() > T::lit(ZERO_TOL) * scale {
            continue;
        }
        let h = T::lit(DERIVATIVE_STEP);
        let (dp, dm) = (disc(phi + h)?, disc(phi - h)?);
        let d1 = (dp - dm) / (h * T::lit(2.0));
        let d2 = (dp - at * T::lit(2.0) + dm) / (h * h);
        let order = (disc(phi + h * T::lit(2.0))?.norm() / dp.norm()).log2();
        let tau = T::TAU();
        let phi = phi - tau * (phi / tau).floor();
        zeros.push(ZeroReport {
            phi: phi.widen(),
            disc_abs: at.norm().widen(),
            d1_abs: d1.norm().widen(),
            d2_abs: d2.norm().widen(),
            order: order.widen(),
        });
    }
    zeros.sort_by(|a, b| a.phi.total_cmp(&b.phi));
    Ok(SpectralScan { phis, samples, zeros, scale })
}

impl<T: Real> SpectralScan<T> {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(["phi", "eta_re", "eta_im", "g0_re", "g0_im", "g1_re", "g1_im", "disc0_abs", "disc1_abs"])
            .map_err(io)?;
        for (phi, s) in self.phis.iter().zip(&self.samples) {
            let vals = [
                phi.widen(),
                s.eta.re.widen(),
                s.eta.im.widen(),
                s.g0.re.widen(),
                s.g0.im.widen(),
                s.g1.re.widen(),
                s.g1.im.widen(),
                s.disc0.norm().widen(),
                s.disc1.norm().widen(),
            ];
            w.write_record(vals.iter().map(|&v| fmt_f64(v))).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn zeros_json(&self) -> String {
        crate::format::to_json(&self.zeros).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorusLattice;
    use std::f64::consts::PI;

    type C64 = Complex<f64>;

    fn am(r: i64, s: i64) -> AngleMap<f64> {
        AngleMap::new(TorusLattice::new(0.0, 1.0).unwrap(), r, s).unwrap()
    }

    fn mnear(a: Mat2<f64>, b: Mat2<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn exponential_examples() {
        let i = C64::i();
        let z = C64::new(0.0, 0.0);
        assert!(mnear(expm_traceless(i * (PI / 2.0), z), Mat2::diag(i, -i), 1e-15));
        let e = expm_traceless(z, C64::new(2f64.ln(), 0.0));
        let r = |v: f64| C64::new(v, 0.0);
        assert!(mnear(e, Mat2::new(r(1.25), r(0.75), r(0.75), r(1.25)), 1e-15));
        assert_eq!(expm_traceless(z, z), Mat2::identity());
        // nilpotent: a² + b² = 0 exactly
        let n = expm_traceless(i, C64::new(1.0, 0.0));
        assert!(mnear(n, Mat2::identity() + Mat2::new(i, r(1.0), r(1.0), -i), 1e-15));
    }

    #[test]
    fn holonomy_examples() {
        let h = holonomy_at(&am(1, 0), C64::i()).unwrap();
        assert!(mnear(h.g0, Mat2::identity(), 1e-15));
        let h = holonomy_at(&am(1, 0), C64::new(1.0, 0.0)).unwrap();
        assert!((h.g0.trace() - C64::new(-2.0, 0.0)).norm() < 1e-14);
        assert!(h.det_defect() < 1e-14);
    }

    #[test]
    fn closed_form_traces() {
        let s = trace_closed_form(&am(1, 0), C64::new(1.0, 0.0)).unwrap();
        assert!((s.g0 + 2.0).norm() < 1e-14 && (s.g1 - 2.0).norm() < 1e-14);
        let s = trace_closed_form(&am(1, 0), C64::i()).unwrap();
        assert!((s.g0 - 2.0).norm() < 1e-14 && (s.g1 + 2.0).norm() < 1e-14);
        for s in [s, trace_closed_form(&am(2, -3), C64::new(0.3, 1.1)).unwrap()] {
            assert!((s.disc0 - (s.g0 * s.g0 - 4.0)).norm() < 1e-12 * (1.0 + s.g0.norm_sqr()));
            assert!((s.disc1 - (s.g1 * s.g1 - 4.0)).norm() < 1e-12 * (1.0 + s.g1.norm_sqr()));
        }
        assert!(sheet_symmetry_defect(&am(1, 0), C64::from_polar(1.0, PI / 4.0)).unwrap() < 1e-14);
        assert!(matches!(trace_closed_form(&am(1, 0), C64::new(0.0, 0.0)), Err(Error::ZeroEta)));
    }

    #[test]
    fn scan_finds_zeros() {
        let scan = spectral_scan(&am(1, 0), 1024).unwrap();
        let phis: Vec<f64> = scan.zeros.iter().map(|z| z.phi).collect();
        assert_eq!(phis.len(), 4);
        for (p, q) in phis.iter().zip([0.0, PI / 2.0, PI, 1.5 * PI]) {
            assert!((p - q).abs() < 1e-6, "{phis:?}");
        }
        let scan = spectral_scan(&am(2, 0), 1024).unwrap();
        assert_eq!(scan.zeros.len(), 8);
        assert!(matches!(spectral_scan(&am(1, 0), 15), Err(Error::TooFewSamples(15))));
    }

    #[test]
    fn zero_orders() {
        let scan = spectral_scan(&am(1, 0), 1024).unwrap();
        let orders: Vec<f64> = scan.zeros.iter().map(|z| z.order).collect();
        // π cos φ ∈ πℤ with vanishing slope at φ = 0, π
        for (o, want) in orders.iter().zip([4.0, 2.0, 4.0, 2.0]) {
            assert!((o - want).abs() < 1e-2, "{orders:?}");
        }
    }

    #[test]
    fn csv_and_json() {
        let scan = spectral_scan(&am(1, 0), 16).unwrap();
        let mut buf = Vec::new();
        scan.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("phi,eta_re,eta_im,g0_re,g0_im,g1_re,g1_im,disc0_abs,disc1_abs"));
        assert_eq!(lines.count(), 16);
        let z: Vec<serde_json::Value> = serde_json::from_str(&scan.zeros_json()).unwrap();
        assert_eq!(z.len(), 4);
        assert!(z[0].get("d2_abs").is_some());
    }
}
