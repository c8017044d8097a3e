//! Small-dimension numerical kernel.
//!
//! Everything downstream (curve jets, surface verification, trace checks)
//! funnels through these primitives: 3-vectors, 5-point finite-difference
//! stencils, adaptive Simpson quadrature, monotone cubic interpolation and a
//! closed-form symmetric 2x2 eigensolver. All operations are pure functions
//! of their inputs.

mod diff;
mod eig;
mod interp;
mod quad;
mod vec;

pub use diff::{central_diff, default_step, default_step_order2, DiffOrder};
pub use eig::{eig_sym2, Sym2};
pub(crate) use eig::{smallest_eigvec_sym3, Sym3};
pub use interp::{invert_monotone, InterpError, MonotoneCubic};
pub use quad::{gauss_legendre, integrate, QuadratureError, DEFAULT_QUAD_TOL};
pub use vec::{Vec2, Vec3};
