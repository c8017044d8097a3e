//! Constant slope surfaces in Euclidean 3-space.
//!
//! A constant slope surface is one whose unit normal makes a constant angle
//! with the position vector at every point. Every such surface (other than a
//! sphere centered at the origin) can be written as
//!
//! ```text
//! r(u, v) = u sin(theta) (cos(xi) f(v) + sin(xi) f(v) x f'(v)),   xi = cot(theta) log(u)
//! ```
//!
//! for a unit-speed curve `f` on the unit sphere. This crate builds those
//! surfaces from spherical curves, checks the defining identities numerically
//! (constant angle, principal curvatures, structure functions, the
//! characterizing ODE, Levi-Civita connection coefficients), and generates the
//! related curve families: logarithmic and golden spirals, loxodromes,
//! generalized helices, and conchospirals.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm` feature
//! when building without `std`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("slope-core requires either the `std` or the `libm` feature");

mod float;

pub mod diffgeo;
pub mod numkit;
pub mod slope_surface;
pub mod sphere_curves;
pub mod spiral_toolkit;

pub use numkit::{Sym2, Vec2, Vec3};
pub use slope_surface::{SlopeSurface, StructureFunctions, SurfaceJet};
pub use sphere_curves::{CurveJet, SphereCurve};
