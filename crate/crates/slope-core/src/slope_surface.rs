//! The constant slope surface immersion and its closed-form jets.
//!
//! A surface whose unit normal makes the constant angle `theta` with the
//! position vector is, away from the origin-centered sphere, parametrized by
//!
//! ```text
//! r(u, v) = u sin(theta) (cos(xi) f(v) + sin(xi) f(v) x f'(v)),
//! xi(u) = cot(theta) log(u)
//! ```
//!
//! with `f` unit speed on the unit sphere. This module evaluates the
//! immersion, its first and second partials and unit normal in closed form,
//! the structure functions `rho`, `lambda`, `Q`, `beta` behind the second
//! principal curvature, the characterizing ODE residual
//! `r - u sin^2(theta) r_u + u^2 sin^2(theta) r_uu`, and the degenerate
//! branches (sphere for `theta = 0`, cone/plane for `theta = pi/2`).

use alloc::format;
use alloc::string::String;
use core::f64::consts::FRAC_PI_2;
use core::fmt;

use crate::numkit::{central_diff, DiffOrder, Vec3};
use crate::sphere_curves::{CurveError, SphereCurve};

#[cfg(not(feature = "std"))]
use crate::float::FloatExt;

/// Default `u` interval. `xi` grows without bound as `u -> 0+`, producing
/// infinitely many windings no finite mesh resolves; this keeps at most a few
/// windings for `theta >= pi/15`.
pub const DEFAULT_U_DOMAIN: (f64, f64) = (0.05, 5.0);

/// Singularity threshold on `|r_v|`, scaled by `u` since `|r_v|` grows
/// linearly with `u`.
const SINGULAR_RV_FACTOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceError {
    /// Argument outside the parameter or constructor domain.
    DomainError(String),
    /// Parameter outside an admissible family range.
    InvalidParam(String),
    /// `|r_v|` vanished at the requested point.
    SingularPoint,
    /// `cos(xi + Q)` vanished; `rho` blows up exactly where `r_v`
    /// degenerates.
    StructureSingularity,
    /// Error from the underlying spherical curve.
    Curve(CurveError),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::DomainError(msg) => write!(f, "domain error: {msg}"),
            SurfaceError::InvalidParam(msg) => write!(f, "invalid parameter: {msg}"),
            SurfaceError::SingularPoint => write!(f, "surface is singular at this point"),
            SurfaceError::StructureSingularity => {
                write!(f, "structure functions singular (cos(xi + Q) = 0)")
            }
            SurfaceError::Curve(e) => write!(f, "curve error: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SurfaceError {}

impl From<CurveError> for SurfaceError {
    fn from(e: CurveError) -> Self {
        SurfaceError::Curve(e)
    }
}

/// `xi(u) = cot(theta) log(u)`; identically zero for `theta = pi/2`.
pub fn xi(u: f64, theta: f64) -> Result<f64, SurfaceError> {
    if u <= 0.0 {
        return Err(SurfaceError::DomainError(format!("u must be > 0, got {u}")));
    }
    Ok(cot(theta) * u.ln())
}

// cos(pi/2) is ~6e-17 rather than zero in f64; pin the exact right-angle
// case so the theta = pi/2 branch is literally the cone r = u f(v).
pub(crate) fn cot(theta: f64) -> f64 {
    if theta == FRAC_PI_2 {
        0.0
    } else {
        theta.cos() / theta.sin()
    }
}

/// Per-point bundle: position, first partials, unit normal and singularity
/// flag.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceJet {
    pub r: Vec3,
    pub r_u: Vec3,
    pub r_v: Vec3,
    /// Unit normal; the normalized `r_u x r_v` sign-aligned to the closed
    /// form `cos(xi - theta) f + sin(xi - theta) f x f'`.
    pub normal: Vec3,
    pub xi: f64,
    /// `|r|`, which must equal `u sin(theta)`.
    pub mu: f64,
    pub singular: bool,
}

/// The auxiliary functions controlling the second principal curvature.
///
/// `lambda` is the shape-operator eigenvalue orthogonal to `r_u`,
/// `rho = lambda u sin(theta)`, `Q(v) = arctan(kappa_g)` and `beta` scales
/// the coordinate field `d/dv = beta e2`.
#[derive(Debug, Clone, Copy)]
pub struct StructureFunctions {
    pub rho: f64,
    pub lambda: f64,
    pub q: f64,
    pub beta_factor: f64,
    pub phi_v: f64,
}

/// A constant slope surface: the pair `(theta, f)` with `theta` in
/// `(0, pi/2]` and `f` unit speed on the sphere.
#[derive(Debug, Clone)]
pub struct SlopeSurface {
    theta: f64,
    curve: SphereCurve,
    u_domain: (f64, f64),
}

impl SlopeSurface {
    /// Build a surface over a unit-speed spherical curve.
    ///
    /// `theta = 0` is served by [`DegenerateSurface::sphere`]; obtuse angles
    /// are not supported.
    pub fn new(
        theta: f64,
        curve: SphereCurve,
        u_domain: (f64, f64),
    ) -> Result<SlopeSurface, SurfaceError> {
        if !(theta > 0.0 && theta <= FRAC_PI_2) {
            return Err(SurfaceError::InvalidParam(format!(
                "theta must lie in (0, pi/2], got {theta}"
            )));
        }
        if !curve.is_unit_speed() {
            return Err(SurfaceError::InvalidParam(String::from(
                "curve must be unit speed; reparametrize first",
            )));
        }
        if !(u_domain.0 > 0.0 && u_domain.0 < u_domain.1) {
            return Err(SurfaceError::InvalidParam(format!(
                "u domain must satisfy 0 < u_min < u_max, got {u_domain:?}"
            )));
        }
        Ok(SlopeSurface {
            theta,
            curve,
            u_domain,
        })
    }

    /// As [`SlopeSurface::new`] with the default `u` interval.
    pub fn with_default_domain(theta: f64, curve: SphereCurve) -> Result<SlopeSurface, SurfaceError> {
        SlopeSurface::new(theta, curve, DEFAULT_U_DOMAIN)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn curve(&self) -> &SphereCurve {
        &self.curve
    }

    pub fn u_domain(&self) -> (f64, f64) {
        self.u_domain
    }

    pub fn v_domain(&self) -> (f64, f64) {
        self.curve.domain()
    }

    fn check_domains(&self, u: f64, v: f64) -> Result<(), SurfaceError> {
        if !(u >= self.u_domain.0 && u <= self.u_domain.1) {
            return Err(SurfaceError::DomainError(format!(
                "u = {u} outside {:?}",
                self.u_domain
            )));
        }
        let (a, b) = self.curve.domain();
        if !(v >= a && v <= b) {
            return Err(SurfaceError::DomainError(format!(
                "v = {v} outside ({a}, {b})"
            )));
        }
        Ok(())
    }

    /// Evaluate the immersion without domain checks; used by
    /// finite-difference stencils that step slightly past the boundary.
    pub fn position_unchecked(&self, u: f64, v: f64) -> Vec3 {
        let xi = cot(self.theta) * u.ln();
        let f = self.curve.eval(v);
        let b = f.cross(self.curve.d1(v));
        u * self.theta.sin() * (xi.cos() * f + xi.sin() * b)
    }

    /// `r(u, v)`; the result has norm `u sin(theta)`.
    pub fn position(&self, u: f64, v: f64) -> Result<Vec3, SurfaceError> {
        self.check_domains(u, v)?;
        Ok(self.position_unchecked(u, v))
    }

    /// Closed-form jet: `r_u = -sin(xi - theta) f + cos(xi - theta) f x f'`,
    /// `r_v = u sin(theta) (cos(xi) f' + sin(xi) f x f'')`, normal from the
    /// cross product sign-aligned to the closed form.
    pub fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet, SurfaceError> {
        self.check_domains(u, v)?;
        self.jet_unchecked(u, v)
    }

    // Same closed forms without the domain clamp, so finite-difference
    // stencils can step marginally past the parameter box.
    pub(crate) fn jet_unchecked(&self, u: f64, v: f64) -> Result<SurfaceJet, SurfaceError> {
        let cj = self.curve.jet(v)?;
        let xi = cot(self.theta) * u.ln();
        let st = self.theta.sin();
        let r = u * st * (xi.cos() * cj.f + xi.sin() * cj.binormal);
        let a = xi - self.theta;
        let r_u = -a.sin() * cj.f + a.cos() * cj.binormal;
        let r_v = u * st * (xi.cos() * cj.f1 + xi.sin() * cj.f.cross(cj.f2));
        let n_closed = a.cos() * cj.f + a.sin() * cj.binormal;
        Ok(self.assemble_jet(u, xi, r, r_u, r_v, n_closed))
    }

    /// Finite-difference jet: partials from 5-point stencils on the
    /// immersion; the oracle counterpart of [`SlopeSurface::jet`].
    pub fn jet_fd(&self, u: f64, v: f64) -> Result<SurfaceJet, SurfaceError> {
        self.check_domains(u, v)?;
        let cj = self.curve.jet(v)?;
        let xi = cot(self.theta) * u.ln();
        let r = self.position_unchecked(u, v);
        let hu = crate::numkit::default_step(u);
        let hv = crate::numkit::default_step(v);
        let r_u = central_diff(|t| self.position_unchecked(t, v), u, DiffOrder::First, hu);
        let r_v = central_diff(|t| self.position_unchecked(u, t), v, DiffOrder::First, hv);
        let a = xi - self.theta;
        let n_closed = a.cos() * cj.f + a.sin() * cj.binormal;
        Ok(self.assemble_jet(u, xi, r, r_u, r_v, n_closed))
    }

    fn assemble_jet(
        &self,
        u: f64,
        xi: f64,
        r: Vec3,
        r_u: Vec3,
        r_v: Vec3,
        n_closed: Vec3,
    ) -> SurfaceJet {
        let singular = r_v.norm() < SINGULAR_RV_FACTOR * u;
        let normal = if singular {
            n_closed
        } else {
            match r_u.cross(r_v).normalized() {
                Some(n) if n.dot(n_closed) < 0.0 => -n,
                Some(n) => n,
                None => n_closed,
            }
        };
        SurfaceJet {
            r,
            r_u,
            r_v,
            normal,
            xi,
            mu: r.norm(),
            singular,
        }
    }

    /// Angle between the unit normal and the position vector; the defining
    /// constant of the surface, equal to `theta` at every non-singular point.
    pub fn angle_with_position(&self, u: f64, v: f64) -> Result<f64, SurfaceError> {
        let jet = self.jet(u, v)?;
        if jet.singular {
            return Err(SurfaceError::SingularPoint);
        }
        Ok(jet.normal.angle_to(jet.r))
    }

    /// As [`SlopeSurface::angle_with_position`] with finite-difference
    /// partials.
    pub fn angle_with_position_fd(&self, u: f64, v: f64) -> Result<f64, SurfaceError> {
        let jet = self.jet_fd(u, v)?;
        if jet.singular {
            return Err(SurfaceError::SingularPoint);
        }
        Ok(jet.normal.angle_to(jet.r))
    }

    /// Structure functions at `(u, v)` with `Q = arctan(kappa_g)`.
    pub fn structure_functions(&self, u: f64, v: f64) -> Result<StructureFunctions, SurfaceError> {
        self.check_domains(u, v)?;
        let kappa_g = self.curve.jet(v)?.kappa_g;
        let q = kappa_g.atan();
        let xi = cot(self.theta) * u.ln();
        let phase = xi + q;
        if phase.cos().abs() < 1e-8 {
            return Err(SurfaceError::StructureSingularity);
        }
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let rho = -ct - st * phase.tan();
        Ok(StructureFunctions {
            rho,
            lambda: rho / (u * st),
            q,
            beta_factor: u * phase.cos(),
            phi_v: st / q.cos(),
        })
    }

    /// Norm of `r - u sin^2(theta) r_u + u^2 sin^2(theta) r_uu` with the
    /// analytic `r_uu`; an identity (zero) on the family.
    pub fn ode_residual(&self, u: f64, v: f64) -> Result<f64, SurfaceError> {
        let jet = self.jet(u, v)?;
        // r_u depends on u only through xi; d(xi)/du = cot(theta)/u.
        let a = jet.xi - self.theta;
        let cj = self.curve.jet(v)?;
        let r_uu = cot(self.theta) / u * (-a.cos() * cj.f - a.sin() * cj.binormal);
        let s2 = self.theta.sin() * self.theta.sin();
        Ok((jet.r - u * s2 * jet.r_u + u * u * s2 * r_uu).norm())
    }

    /// As [`SlopeSurface::ode_residual`] with `r_u`, `r_uu` from
    /// finite differences.
    pub fn ode_residual_fd(&self, u: f64, v: f64) -> Result<f64, SurfaceError> {
        self.check_domains(u, v)?;
        let r = self.position_unchecked(u, v);
        let h1 = crate::numkit::default_step(u);
        let h2 = crate::numkit::default_step_order2(u);
        let r_u = central_diff(|t| self.position_unchecked(t, v), u, DiffOrder::First, h1);
        let r_uu = central_diff(|t| self.position_unchecked(t, v), u, DiffOrder::Second, h2);
        let s2 = self.theta.sin() * self.theta.sin();
        Ok((r - u * s2 * r_u + u * u * s2 * r_uu).norm())
    }
}

/// The two branches the classification treats separately: `theta = 0`
/// (origin-centered sphere) and `theta = pi/2` (cone, or plane when the
/// spherical curve is a great circle).
#[derive(Debug, Clone)]
pub enum DegenerateSurface {
    Sphere { radius: f64 },
    Cone { surface: SlopeSurface },
    Plane { surface: SlopeSurface },
}

impl DegenerateSurface {
    /// Origin-centered sphere; position is normal to the surface everywhere.
    pub fn sphere(radius: f64) -> Result<DegenerateSurface, SurfaceError> {
        if radius <= 0.0 {
            return Err(SurfaceError::InvalidParam(format!(
                "sphere radius must be > 0, got {radius}"
            )));
        }
        Ok(DegenerateSurface::Sphere { radius })
    }

    /// `theta = pi/2` branch: `r(u, v) = u f(v)`, a cone with vertex at the
    /// origin, degenerating to a plane through the origin when `f` is a
    /// great circle (`kappa_g = 0` everywhere).
    pub fn cone_or_plane(curve: SphereCurve) -> Result<DegenerateSurface, SurfaceError> {
        let curve = curve.into_unit_speed()?;
        let (a, b) = curve.domain();
        let mut max_kg: f64 = 0.0;
        for i in 0..64 {
            let v = a + (b - a) * (i as f64 + 0.5) / 64.0;
            max_kg = max_kg.max(curve.jet(v)?.kappa_g.abs());
        }
        let surface = SlopeSurface::with_default_domain(FRAC_PI_2, curve)?;
        if max_kg < 1e-8 {
            Ok(DegenerateSurface::Plane { surface })
        } else {
            Ok(DegenerateSurface::Cone { surface })
        }
    }

    pub fn position(&self, u: f64, v: f64) -> Vec3 {
        match self {
            DegenerateSurface::Sphere { radius } => {
                *radius * Vec3::new(u.sin() * v.cos(), u.sin() * v.sin(), u.cos())
            }
            DegenerateSurface::Cone { surface } | DegenerateSurface::Plane { surface } => {
                surface.position_unchecked(u, v)
            }
        }
    }

    pub fn u_domain(&self) -> (f64, f64) {
        match self {
            // Colatitude, kept off the poles.
            DegenerateSurface::Sphere { .. } => (0.1, core::f64::consts::PI - 0.1),
            DegenerateSurface::Cone { surface } | DegenerateSurface::Plane { surface } => {
                surface.u_domain()
            }
        }
    }

    pub fn v_domain(&self) -> (f64, f64) {
        match self {
            DegenerateSurface::Sphere { .. } => (0.0, 2.0 * core::f64::consts::PI),
            DegenerateSurface::Cone { surface } | DegenerateSurface::Plane { surface } => {
                surface.v_domain()
            }
        }
    }

    /// Angle between normal and position: `0` on the sphere branch, `pi/2`
    /// on cones and planes.
    pub fn angle_with_position(&self, u: f64, v: f64) -> Result<f64, SurfaceError> {
        match self {
            DegenerateSurface::Sphere { .. } => {
                let r = self.position(u, v);
                let hu = crate::numkit::default_step(u);
                let hv = crate::numkit::default_step(v);
                let r_u = central_diff(|t| self.position(t, v), u, DiffOrder::First, hu);
                let r_v = central_diff(|t| self.position(u, t), v, DiffOrder::First, hv);
                let n = r_u
                    .cross(r_v)
                    .normalized()
                    .ok_or(SurfaceError::SingularPoint)?;
                let angle = n.angle_to(r);
                // Orientation-free: a sphere normal is parallel to r.
                Ok(angle.min(core::f64::consts::PI - angle))
            }
            DegenerateSurface::Cone { surface } | DegenerateSurface::Plane { surface } => {
                surface.angle_with_position(u, v)
            }
        }
    }
}
