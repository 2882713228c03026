//! Discrete exterior calculus on doubly periodic grids.
//!
//! A [`Grid`] samples the fundamental domain of `Λ_δ` (or of `Λ̃_δ = 2Λ_δ`)
//! along the lattice axes: point `(ix, iy)` sits at lattice coordinates
//! `u = ix·h`, `v = iy·h` with `h = c/n` and `c` the covering factor. Fields
//! are stored row-major, `index = iy·n + ix`, and wrap cyclically.
//!
//! One-forms are stored by their values on the lattice axis vectors `∂u = ∂x`
//! and `∂v = δ₀∂x + δ₁∂y`; two-forms by their `du∧dv` coefficient. The Hodge
//! star is the only operator that needs the conformal structure.

use std::fmt::Debug;
use std::io::{Read, Write};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::quat::Quaternion;
use crate::scalar::{Real, Scalar};
use crate::torus::{Covering, TorusLattice};

/// Values that can be differenced on a grid.
pub trait FieldValue<T>:
    Copy + Debug + Zero + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> + Mul<T, Output = Self>
{
}

impl<T, V> FieldValue<T> for V where
    V: Copy + Debug + Zero + Add<Output = V> + Sub<Output = V> + Neg<Output = V> + Mul<T, Output = V>
{
}

/// Pointwise modulus.
pub trait Magnitude<T> {
    fn magnitude(&self) -> T;
}

impl<T: Real> Magnitude<T> for Quaternion<T> {
    fn magnitude(&self) -> T {
        self.norm()
    }
}

impl<T: Real> Magnitude<T> for Complex<T> {
    fn magnitude(&self) -> T {
        self.norm()
    }
}

impl Magnitude<f64> for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Magnitude<f32> for f32 {
    fn magnitude(&self) -> f32 {
        self.abs()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid<T> {
    lattice: TorusLattice<T>,
    n: usize,
    covering: Covering,
}

impl<T: Scalar> Grid<T> {
    /// An `n × n` grid. Differentiation needs `n ≥ 4`; see [`ext_d`].
    pub fn new(lattice: TorusLattice<T>, n: usize, covering: Covering) -> Result<Self> {
        if n == 0 {
            return Err(Error::GridTooCoarse(n));
        }
        Ok(Self { lattice, n, covering })
    }

    pub fn lattice(&self) -> &TorusLattice<T> {
        &self.lattice
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covering(&self) -> Covering {
        self.covering
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Lattice-coordinate step `h = c/n`.
    pub fn spacing(&self) -> T {
        T::from_int(self.covering.factor() as i64) / T::from_int(self.n as i64)
    }

    fn inv_two_h(&self) -> T {
        T::from_int(self.n as i64) / T::from_int(2 * self.covering.factor() as i64)
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.n + ix
    }

    /// Index with cyclic wrap.
    pub fn wrap(&self, ix: i64, iy: i64) -> usize {
        let n = self.n as i64;
        self.index(ix.rem_euclid(n) as usize, iy.rem_euclid(n) as usize)
    }

    pub fn lattice_coords(&self, ix: usize, iy: usize) -> (T, T) {
        let h = self.spacing();
        (T::from_int(ix as i64) * h, T::from_int(iy as i64) * h)
    }

    pub fn conformal_coords(&self, ix: usize, iy: usize) -> (T, T) {
        let (u, v) = self.lattice_coords(ix, iy);
        self.lattice.to_conformal(u, v)
    }

    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |iy| (0..n).map(move |ix| (ix, iy)))
    }

    fn check_diff(&self) -> Result<()> {
        if self.n < 4 {
            Err(Error::GridTooCoarse(self.n))
        } else {
            Ok(())
        }
    }
}

/// Samples of a section on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridField<T, V = Quaternion<T>> {
    grid: Grid<T>,
    values: Vec<V>,
}

impl<T: Scalar, V: Copy> GridField<T, V> {
    pub fn from_values(grid: Grid<T>, values: Vec<V>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, values })
    }

    pub fn from_index(grid: Grid<T>, f: impl Fn(usize, usize) -> V) -> Self {
        let values = grid.points().map(|(ix, iy)| f(ix, iy)).collect();
        Self { grid, values }
    }

    /// Samples `f(u, v)` in lattice coordinates.
    pub fn from_lattice_fn(grid: Grid<T>, f: impl Fn(T, T) -> V) -> Self {
        let values = grid
            .points()
            .map(|(ix, iy)| {
                let (u, v) = grid.lattice_coords(ix, iy);
                f(u, v)
            })
            .collect();
        Self { grid, values }
    }

    /// Samples `f(x, y)` in conformal coordinates.
    pub fn from_fn(grid: Grid<T>, f: impl Fn(T, T) -> V) -> Self {
        let values = grid
            .points()
            .map(|(ix, iy)| {
                let (x, y) = grid.conformal_coords(ix, iy);
                f(x, y)
            })
            .collect();
        Self { grid, values }
    }

    pub fn constant(grid: Grid<T>, value: V) -> Self {
        let values = vec![value; grid.len()];
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn at(&self, ix: usize, iy: usize) -> V {
        self.values[self.grid.index(ix, iy)]
    }

    /// Value with cyclic wrap of the indices.
    pub fn get(&self, ix: i64, iy: i64) -> V {
        self.values[self.grid.wrap(ix, iy)]
    }

    pub fn map<U: Copy>(&self, f: impl Fn(V) -> U) -> GridField<T, U> {
        GridField { grid: self.grid.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Pointwise map with indices.
    pub fn map_indexed<U: Copy>(&self, f: impl Fn(usize, usize, V) -> U) -> GridField<T, U> {
        GridField::from_index(self.grid.clone(), |ix, iy| f(ix, iy, self.at(ix, iy)))
    }

    pub fn zip_with<W: Copy, U: Copy>(
        &self,
        other: &GridField<T, W>,
        f: impl Fn(V, W) -> U,
    ) -> Result<GridField<T, U>> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(GridField { grid: self.grid.clone(), values })
    }
}

impl<T: Scalar, V: FieldValue<T>> GridField<T, V> {
    /// Central difference along the first lattice axis.
    pub fn diff_u(&self) -> Self {
        let s = self.grid.inv_two_h();
        self.map_indexed(|ix, iy, _| {
            let (ix, iy) = (ix as i64, iy as i64);
            (self.get(ix + 1, iy) - self.get(ix - 1, iy)) * s
        })
    }

    /// Central difference along the second lattice axis.
    pub fn diff_v(&self) -> Self {
        let s = self.grid.inv_two_h();
        self.map_indexed(|ix, iy, _| {
            let (ix, iy) = (ix as i64, iy as i64);
            (self.get(ix, iy + 1) - self.get(ix, iy - 1)) * s
        })
    }

    pub fn scaled(&self, c: T) -> Self {
        self.map(|v| v * c)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

impl<T: Real> GridField<T, T> {
    /// `max|f|` of a real field.
    pub fn max_abs(&self) -> T {
        self.values.iter().map(|v| v.abs()).fold(T::zero(), T::max)
    }
}

impl<T: Real> GridField<T, Quaternion<T>> {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["ix", "iy", "w", "x", "y", "z"]).map_err(csv_io)?;
        for (ix, iy) in self.grid.points() {
            let q = self.at(ix, iy);
            w.write_record([
                ix.to_string(),
                iy.to_string(),
                fmt_f64(q.w.widen()),
                fmt_f64(q.x.widen()),
                fmt_f64(q.y.widen()),
                fmt_f64(q.z.widen()),
            ])
            .map_err(csv_io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ASCII output")
    }

    /// Reads the `ix,iy,w,x,y,z` format. Every index pair of an `n × n` grid
    /// must appear exactly once; `n` is inferred from the row count.
    pub fn read_csv<R: Read>(input: R, lattice: TorusLattice<T>, covering: Covering) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let headers = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
        let expected = ["ix", "iy", "w", "x", "y", "z"];
        if headers.len() != 6 || headers.iter().zip(expected).any(|(a, b)| a != b) {
            return Err(parse_err(1, format!("expected header {}", expected.join(","))));
        }
        let mut rows = Vec::new();
        for (k, rec) in rdr.records().enumerate() {
            let line = k + 2;
            let rec = rec.map_err(|e| parse_err(line, e.to_string()))?;
            if rec.len() != 6 {
                return Err(parse_err(line, format!("expected 6 fields, found {}", rec.len())));
            }
            let ix: usize = rec[0].parse().map_err(|e| parse_err(line, format!("ix: {e}")))?;
            let iy: usize = rec[1].parse().map_err(|e| parse_err(line, format!("iy: {e}")))?;
            let mut c = [T::zero(); 4];
            for (slot, field) in c.iter_mut().zip(rec.iter().skip(2)) {
                let v: f64 = field.parse().map_err(|e| parse_err(line, format!("{field:?}: {e}")))?;
                *slot = T::lit(v);
            }
            rows.push((line, ix, iy, Quaternion::new(c[0], c[1], c[2], c[3])));
        }
        let n = (rows.len() as f64).sqrt().round() as usize;
        if n * n != rows.len() || n == 0 {
            return Err(parse_err(rows.len() + 1, format!("{} rows do not form a square grid", rows.len())));
        }
        let grid = Grid::new(lattice, n, covering)?;
        let mut values: Vec<Option<Quaternion<T>>> = vec![None; n * n];
        for (line, ix, iy, q) in rows {
            if ix >= n || iy >= n {
                return Err(parse_err(line, format!("index ({ix}, {iy}) outside {n}x{n} grid")));
            }
            let slot = &mut values[grid.index(ix, iy)];
            if slot.is_some() {
                return Err(parse_err(line, format!("duplicate index ({ix}, {iy})")));
            }
            *slot = Some(q);
        }
        let values = values.into_iter().map(|v| v.expect("all slots filled")).collect();
        Ok(Self { grid, values })
    }
}

fn parse_err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// `ω = cx·du + cy·dv`: `cx = ω(∂u)`, `cy = ω(∂v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QOneForm<T, V = Quaternion<T>> {
    pub cx: GridField<T, V>,
    pub cy: GridField<T, V>,
}

impl<T: Scalar, V: FieldValue<T>> QOneForm<T, V> {
    pub fn new(cx: GridField<T, V>, cy: GridField<T, V>) -> Result<Self> {
        if cx.grid != cy.grid {
            return Err(Error::GridMismatch);
        }
        Ok(Self { cx, cy })
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.cx.grid
    }

    /// From the values `ω(∂x)`, `ω(∂y)` on the conformal frame.
    pub fn from_conformal(wx: GridField<T, V>, wy: GridField<T, V>) -> Result<Self> {
        let (d0, d1) = (wx.grid.lattice.delta0(), wx.grid.lattice.delta1());
        let cy = wx.zip_with(&wy, |a, b| a * d0 + b * d1)?;
        Self::new(wx, cy)
    }

    pub fn dx_slot(&self) -> GridField<T, V> {
        self.cx.clone()
    }

    /// `ω(∂y) = (ω(∂v) − δ₀ω(∂u))/δ₁`.
    pub fn dy_slot(&self) -> GridField<T, V> {
        let l = &self.cx.grid.lattice;
        let (d0, inv) = (l.delta0(), T::one() / l.delta1());
        self.cy.zip_with(&self.cx, |b, a| (b - a * d0) * inv).expect("same grid")
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(V, V) -> V) -> Result<Self> {
        Self::new(self.cx.zip_with(&other.cx, &f)?, self.cy.zip_with(&other.cy, &f)?)
    }

    pub fn map(&self, f: impl Fn(V) -> V) -> Self {
        Self { cx: self.cx.map(&f), cy: self.cy.map(&f) }
    }
}

/// `c·du∧dv`.
#[derive(Clone, Debug, PartialEq)]
pub struct QTwoForm<T, V = Quaternion<T>> {
    pub c: GridField<T, V>,
}

impl<T: Scalar, V: FieldValue<T>> QTwoForm<T, V> {
    pub fn grid(&self) -> &Grid<T> {
        &self.c.grid
    }

    /// Coefficient of `dx∧dy`, `c/δ₁`.
    pub fn conformal(&self) -> GridField<T, V> {
        self.c.scaled(T::one() / self.c.grid.lattice.delta1())
    }
}

/// Central-difference exterior derivative.
pub trait Exterior {
    type Output;
    fn ext_d(&self) -> Result<Self::Output>;
}

impl<T: Scalar, V: FieldValue<T>> Exterior for GridField<T, V> {
    type Output = QOneForm<T, V>;
    fn ext_d(&self) -> Result<QOneForm<T, V>> {
        self.grid.check_diff()?;
        Ok(QOneForm { cx: self.diff_u(), cy: self.diff_v() })
    }
}

impl<T: Scalar, V: FieldValue<T>> Exterior for QOneForm<T, V> {
    type Output = QTwoForm<T, V>;
    fn ext_d(&self) -> Result<QTwoForm<T, V>> {
        self.grid().check_diff()?;
        let c = self.cy.diff_u().zip_with(&self.cx.diff_v(), |a, b| a - b)?;
        Ok(QTwoForm { c })
    }
}

/// `d` of a function or of a one-form.
pub fn ext_d<E: Exterior>(e: &E) -> Result<E::Output> {
    e.ext_d()
}

/// Hodge star with `∗dx = −dy`, `∗dy = dx`.
pub fn hodge_star<T: Scalar, V: FieldValue<T>>(w: &QOneForm<T, V>) -> QOneForm<T, V> {
    let d0 = w.grid().lattice.delta0();
    let d1 = w.grid().lattice.delta1();
    let wx = w.dx_slot();
    let wy = w.dy_slot();
    let cy = wy.zip_with(&wx, |b, a| b * d0 - a * d1).expect("same grid");
    QOneForm { cx: wy, cy }
}

/// `(ω∧ρ)(∂u, ∂v) = ω(∂u)ρ(∂v) − ω(∂v)ρ(∂u)`, factors never commuted.
pub fn wedge<T: Scalar, V: FieldValue<T> + Mul<Output = V>>(
    w: &QOneForm<T, V>,
    r: &QOneForm<T, V>,
) -> Result<QTwoForm<T, V>> {
    let a = w.cx.zip_with(&r.cy, |p, q| p * q)?;
    let b = w.cy.zip_with(&r.cx, |p, q| p * q)?;
    Ok(QTwoForm { c: a.zip_with(&b, |p, q| p - q)? })
}

/// Supremum of the pointwise modulus.
pub trait MaxNorm<T> {
    fn max_norm(&self) -> T;
}

impl<T: Real, V: Copy + Magnitude<T>> MaxNorm<T> for GridField<T, V> {
    fn max_norm(&self) -> T {
        self.values.iter().map(|v| v.magnitude()).fold(T::zero(), T::max)
    }
}

impl<T: Real, V: Copy + Magnitude<T>> MaxNorm<T> for QOneForm<T, V> {
    fn max_norm(&self) -> T {
        self.cx.max_norm().max(self.cy.max_norm())
    }
}

impl<T: Real, V: Copy + Magnitude<T>> MaxNorm<T> for QTwoForm<T, V> {
    fn max_norm(&self) -> T {
        self.c.max_norm()
    }
}

pub fn max_norm<T, M: MaxNorm<T>>(m: &M) -> T {
    m.max_norm()
}

/// `max |a − b|` over two fields on the same grid.
pub fn max_diff<T: Real, V: FieldValue<T> + Magnitude<T>>(a: &GridField<T, V>, b: &GridField<T, V>) -> Result<T> {
    Ok(a.zip_with(b, |p, q| p - q)?.max_norm())
}
