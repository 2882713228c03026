//! Stereographic OBJ export of sphere-contained surfaces.

use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::scalar::Real;
use crate::surface::{sphere_check, SurfaceGrid};
use crate::tolerance::TolProfile;

/// Denominators `1 − ⟨p, pole⟩` below this are clamped.
pub const POLE_CLAMP: f64 = 1e-9;
/// Faces with twice-area below this are flagged degenerate.
pub const AREA_FLOOR: f64 = 1e-14;

/// Projection pole `±e_axis` on `S³`, axes ordered `w, x, y, z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pole {
    pub axis: usize,
    pub positive: bool,
}

impl Default for Pole {
    fn default() -> Self {
        Self { axis: 0, positive: true }
    }
}

impl FromStr for Pole {
    type Err = String;

    /// `w`, `+w`, `-x`, ...
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (positive, name) = match s.as_bytes().first() {
            Some(b'-') => (false, &s[1..]),
            Some(b'+') => (true, &s[1..]),
            _ => (true, s),
        };
        let axis = match name {
            "w" => 0,
            "x" => 1,
            "y" => 2,
            "z" => 3,
            _ => return Err(format!("unknown pole `{s}`")),
        };
        Ok(Self { axis, positive })
    }
}

#[derive(Clone, Debug, Default)]
pub struct ObjMesh {
    pub vertices: Vec<[f64; 3]>,
    /// 1-based vertex indices, counter-clockwise in `(u, v)`.
    pub faces: Vec<[usize; 4]>,
    /// Vertices whose denominator was clamped.
    pub clamped: Vec<usize>,
    /// Faces of (numerically) zero area.
    pub degenerate: Vec<usize>,
}

/// `p ↦ (p_a, p_b, p_c)/(1 − p·pole)` for the three axes other than the pole's.
pub fn stereographic(p: [f64; 4], pole: Pole) -> ([f64; 3], bool) {
    let sign = if pole.positive { 1.0 } else { -1.0 };
    let mut den = 1.0 - sign * p[pole.axis];
    let clamped = den < POLE_CLAMP;
    if clamped {
        den = POLE_CLAMP;
    }
    let mut out = [0.0; 3];
    let mut k = 0;
    for (a, &c) in p.iter().enumerate() {
        if a != pole.axis {
            out[k] = c / den;
            k += 1;
        }
    }
    (out, clamped)
}

fn twice_area(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let w = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt()
}

/// Projects `ψ/|ψ|` and connects the periodic grid by quads.
pub fn export_mesh<T: Real>(s: &SurfaceGrid<T>, pole: Pole, tol: &TolProfile) -> Result<ObjMesh> {
    let check = sphere_check(s, tol)?;
    if !check.pass {
        return Err(Error::NotSpherical(check.value));
    }
    let grid = s.grid();
    let n = grid.n();
    let mut mesh = ObjMesh::default();
    for (k, p) in s.psi().values().iter().enumerate() {
        let r = p.norm();
        if r.is_zero() {
            return Err(Error::ZeroSection);
        }
        let q = [p.w / r, p.x / r, p.y / r, p.z / r].map(|c| c.widen());
        let (v, clamped) = stereographic(q, pole);
        if clamped {
            mesh.clamped.push(k);
        }
        mesh.vertices.push(v);
    }
    for (ix, iy) in grid.points() {
        let (jx, jy) = ((ix + 1) % n, (iy + 1) % n);
        let face = [grid.index(ix, iy), grid.index(jx, iy), grid.index(jx, jy), grid.index(ix, jy)];
        let vs = face.map(|i| mesh.vertices[i]);
        let area = twice_area(vs[0], vs[1], vs[2]) + twice_area(vs[0], vs[2], vs[3]);
        if area < AREA_FLOOR {
            mesh.degenerate.push(mesh.faces.len());
        }
        mesh.faces.push(face.map(|i| i + 1));
    }
    Ok(mesh)
}

impl ObjMesh {
    pub fn write_obj<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# vertices {} faces {}", self.vertices.len(), self.faces.len())?;
        if !self.clamped.is_empty() {
            writeln!(out, "# clamped {}", self.clamped.len())?;
        }
        if !self.degenerate.is_empty() {
            writeln!(out, "# degenerate {}", self.degenerate.len())?;
        }
        for v in &self.vertices {
            writeln!(out, "v {} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]))?;
        }
        for f in &self.faces {
            writeln!(out, "f {} {} {} {}", f[0], f[1], f[2], f[3])?;
        }
        Ok(())
    }

    pub fn to_obj_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_obj(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("OBJ output is ASCII")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Grid, GridField};
    use crate::quat::Quaternion;
    use crate::surface::homogeneous_torus;
    use crate::torus::{Covering, TorusLattice};

    #[test]
    fn vertex_example() {
        let (v, c) = stereographic([0.5, -0.5, -0.5, 0.5], Pole::default());
        assert_eq!(v, [-1.0, -1.0, 1.0]);
        assert!(!c);
        let (v, _) = stereographic([0.5, -0.5, -0.5, 0.5], "-z".parse().unwrap());
        assert_eq!(v, [0.5 / 1.5, -0.5 / 1.5, -0.5 / 1.5]);
        assert!("q".parse::<Pole>().is_err());
    }

    #[test]
    fn clifford_mesh() {
        let s = homogeneous_torus(TorusLattice::new(0.0, 1.0).unwrap(), 1.0, 16).unwrap();
        let mesh = export_mesh(&s, Pole::default(), &TolProfile::PAPER).unwrap();
        assert_eq!(mesh.vertices.len(), 256);
        assert_eq!(mesh.faces[0], [1, 2, 18, 17]);
        assert_eq!(mesh.faces[15], [16, 1, 17, 32]);
        assert!(mesh.clamped.is_empty() && mesh.degenerate.is_empty());
        assert!(mesh.vertices.iter().flatten().all(|c| c.is_finite()));
        let text = mesh.to_obj_string();
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 256);
    }

    #[test]
    fn constant_and_translated() {
        let grid = Grid::new(TorusLattice::new(0.0, 1.0).unwrap(), 8, Covering::Base).unwrap();
        let s = SurfaceGrid::new(GridField::constant(grid, Quaternion::real(3.0)));
        let mesh = export_mesh(&s, Pole::default(), &TolProfile::PAPER).unwrap();
        assert_eq!(mesh.clamped.len(), 64);
        assert_eq!(mesh.degenerate.len(), 64);
        let t =
            homogeneous_torus(TorusLattice::new(0.0, 1.0).unwrap(), 1.0, 32).unwrap().translated(Quaternion::real(1.0));
        assert!(matches!(export_mesh(&t, Pole::default(), &TolProfile::PAPER), Err(Error::NotSpherical(v)) if v > 0.5));
    }
}
