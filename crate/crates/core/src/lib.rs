//! Hamiltonian stationary Lagrangian tori in the hypersphere of ℂ² ≅ ℍ.
//!
//! The crate samples quaternion-valued sections on flat tori and checks the
//! geometric identities of the quaternionic holomorphic description of such
//! tori: right normals and Lagrangian angles, flat connection forms, the
//! associated `S¹`-family of connections and its holonomy spectrum, and the
//! integer classification of the parallel sections that produce compact
//! examples.
//!
//! Algebraic code is generic over the scalar type; see [`scalar`].

pub mod classifier;
pub mod error;
pub mod family;
pub mod format;
pub mod grid;
pub mod mat2;
pub mod mesh;
pub mod quat;
pub mod scalar;
pub mod spectral;
pub mod surface;
pub mod tolerance;
pub mod torus;

pub use classifier::{ConstructedTorus, SolutionQuad};
pub use error::{Error, Result};
pub use grid::{ext_d, hodge_star, max_diff, max_norm, wedge, Exterior, Grid, GridField, MaxNorm, QOneForm, QTwoForm};
pub use mat2::Mat2;
pub use mesh::{ObjMesh, Pole};
pub use quat::{ComplexPair, Quaternion};
pub use scalar::{Real, Scalar};
pub use surface::SurfaceGrid;
pub use tolerance::{Check, TolProfile};
pub use torus::{make_angle_map, make_lattice, AngleMap, Covering, ExactDelta, TorusLattice};

pub type Quat64 = Quaternion<f64>;
pub type Quat32 = Quaternion<f32>;
pub type Lattice64 = TorusLattice<f64>;
pub type Angle64 = AngleMap<f64>;
pub type Grid64 = Grid<f64>;
pub type Field64 = GridField<f64>;
pub type OneForm64 = QOneForm<f64>;
pub type Mat64 = Mat2<f64>;
