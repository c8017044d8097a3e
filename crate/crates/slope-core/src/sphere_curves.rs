//! Curves on the unit sphere: built-in families, validation, numerical
//! unit-speed reparametrization, derivatives and geodesic curvature.
//!
//! The slope-surface construction requires a *unit-speed* spherical curve, so
//! arbitrary inputs are run through [`SphereCurve::reparametrize_unit_speed`]
//! before any surface is built. Note that the raw built-in families (other
//! than the great circle) are *not* unit speed as written.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::numkit::{
    central_diff, default_step, default_step_order2, gauss_legendre, DiffOrder, MonotoneCubic, Vec3,
};

#[cfg(not(feature = "std"))]
use crate::float::FloatExt;

/// Minimum admissible sampled speed during reparametrization.
const MIN_SPEED: f64 = 1e-8;

/// Arc-length table rows used by default. Keeps the inverse-interpolation
/// error below the 1e-7 unit-speed budget for curves with `|f''| <= 10`.
pub const DEFAULT_REPARAM_RESOLUTION: usize = 2048;

/// Shared evaluation closure for curve points and derivatives.
pub type CurveFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// Family parameter outside its admissible range.
    InvalidParam(String),
    /// A sampled speed fell below `1e-8`; the curve is not regular enough to
    /// reparametrize.
    DegenerateCurve,
    /// Operation requires the unit-speed flag.
    NotUnitSpeed,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::InvalidParam(msg) => write!(f, "invalid curve parameter: {msg}"),
            CurveError::DegenerateCurve => write!(f, "curve speed vanishes; cannot reparametrize"),
            CurveError::NotUnitSpeed => write!(f, "operation requires a unit-speed curve"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CurveError {}

/// Built-in spherical curve families, matching the surface galleries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinCurve {
    /// `f(v) = (cos v, sin v, 0)`; the only built-in that is already unit
    /// speed.
    GreatCircle,
    /// Circle at colatitude `psi0`: `(sin psi0 cos v, sin psi0 sin v, cos psi0)`.
    SmallCircle { psi0: f64 },
    /// `f(v) = (cos^2 v, cos v sin v, sin v)`.
    Figure8,
    /// `(sin psi cos phi, sin psi sin phi, cos psi)` with `phi = log v`,
    /// `psi = v`, on `[v0, 3]`.
    SphereSpiral { v0: f64 },
    /// `f(v) = (cos v, sqrt 3, sin v) / 2`; a circle whose cone is the
    /// standard slope-surface example.
    ConeCircle,
}

/// Per-point data of a unit-speed spherical curve.
///
/// `kappa_g` is the scalar triple product `det(f, f', f'')`, which for a
/// unit-speed spherical curve is the geodesic curvature up to sign. The sign
/// is kept as the orientation gives it; no absolute value is taken.
#[derive(Debug, Clone, Copy)]
pub struct CurveJet {
    pub f: Vec3,
    pub f1: Vec3,
    pub f2: Vec3,
    /// `f x f'`.
    pub binormal: Vec3,
    pub kappa_g: f64,
}

/// A parametrized curve on the unit sphere.
///
/// Immutable after construction (reparametrized curves build their arc-length
/// table eagerly), so values can be shared and evaluated concurrently.
#[derive(Clone)]
pub struct SphereCurve {
    eval: CurveFn,
    d1: Option<CurveFn>,
    d2: Option<CurveFn>,
    domain: (f64, f64),
    unit_speed: bool,
    provenance: String,
}

impl fmt::Debug for SphereCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SphereCurve")
            .field("domain", &self.domain)
            .field("unit_speed", &self.unit_speed)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl SphereCurve {
    /// Construct a built-in family.
    pub fn builtin(id: BuiltinCurve) -> Result<SphereCurve, CurveError> {
        match id {
            BuiltinCurve::GreatCircle => Ok(SphereCurve {
                eval: Arc::new(|v: f64| Vec3::new(v.cos(), v.sin(), 0.0)),
                d1: Some(Arc::new(|v: f64| Vec3::new(-v.sin(), v.cos(), 0.0))),
                d2: Some(Arc::new(|v: f64| Vec3::new(-v.cos(), -v.sin(), 0.0))),
                domain: (0.0, 2.0 * PI),
                unit_speed: true,
                provenance: String::from("great-circle"),
            }),
            BuiltinCurve::SmallCircle { psi0 } => {
                if !(psi0 > 0.0 && psi0 < PI) {
                    return Err(CurveError::InvalidParam(format!(
                        "small-circle psi0 must lie in (0, pi), got {psi0}"
                    )));
                }
                let (sp, cp) = (psi0.sin(), psi0.cos());
                Ok(SphereCurve {
                    eval: Arc::new(move |v: f64| Vec3::new(sp * v.cos(), sp * v.sin(), cp)),
                    d1: Some(Arc::new(move |v: f64| {
                        Vec3::new(-sp * v.sin(), sp * v.cos(), 0.0)
                    })),
                    d2: Some(Arc::new(move |v: f64| {
                        Vec3::new(-sp * v.cos(), -sp * v.sin(), 0.0)
                    })),
                    domain: (0.0, 2.0 * PI),
                    unit_speed: false,
                    provenance: format!("small-circle(psi0={psi0})"),
                })
            }
            BuiltinCurve::Figure8 => Ok(SphereCurve {
                eval: Arc::new(|v: f64| {
                    Vec3::new(v.cos() * v.cos(), v.cos() * v.sin(), v.sin())
                }),
                d1: Some(Arc::new(|v: f64| {
                    Vec3::new(-(2.0 * v).sin(), (2.0 * v).cos(), v.cos())
                })),
                d2: Some(Arc::new(|v: f64| {
                    Vec3::new(-2.0 * (2.0 * v).cos(), -2.0 * (2.0 * v).sin(), -v.sin())
                })),
                domain: (0.0, 2.0 * PI),
                unit_speed: false,
                provenance: String::from("figure8"),
            }),
            BuiltinCurve::SphereSpiral { v0 } => {
                if !(v0 > 0.0 && v0 < 2.9) {
                    return Err(CurveError::InvalidParam(format!(
                        "sphere-spiral v0 must lie in (0, 2.9), got {v0}"
                    )));
                }
                // log v blows up at v <= 0; the closures clamp so that
                // finite-difference stencils just outside the domain stay
                // evaluable.
                let clamp = |v: f64| v.max(1e-9);
                Ok(SphereCurve {
                    eval: Arc::new(move |v: f64| {
                        let v = clamp(v);
                        let (s, c) = (v.ln().sin(), v.ln().cos());
                        Vec3::new(v.sin() * c, v.sin() * s, v.cos())
                    }),
                    d1: Some(Arc::new(move |v: f64| {
                        let v = clamp(v);
                        let (s, c) = (v.ln().sin(), v.ln().cos());
                        Vec3::new(
                            v.cos() * c - v.sin() * s / v,
                            v.cos() * s + v.sin() * c / v,
                            -v.sin(),
                        )
                    })),
                    d2: Some(Arc::new(move |v: f64| {
                        let v = clamp(v);
                        let (s, c) = (v.ln().sin(), v.ln().cos());
                        let v2 = v * v;
                        Vec3::new(
                            -v.sin() * c - 2.0 * s * v.cos() / v + v.sin() * (s - c) / v2,
                            -v.sin() * s + 2.0 * c * v.cos() / v - v.sin() * (s + c) / v2,
                            -v.cos(),
                        )
                    })),
                    domain: (v0, 3.0),
                    unit_speed: false,
                    provenance: format!("sphere-spiral(v0={v0})"),
                })
            }
            BuiltinCurve::ConeCircle => Ok(SphereCurve {
                eval: Arc::new(|v: f64| Vec3::new(0.5 * v.cos(), 0.5 * 3f64.sqrt(), 0.5 * v.sin())),
                d1: Some(Arc::new(|v: f64| Vec3::new(-0.5 * v.sin(), 0.0, 0.5 * v.cos()))),
                d2: Some(Arc::new(|v: f64| Vec3::new(-0.5 * v.cos(), 0.0, -0.5 * v.sin()))),
                domain: (0.0, 2.0 * PI),
                unit_speed: false,
                provenance: String::from("cone-circle"),
            }),
        }
    }

    /// Build a curve from `(v, point)` samples. Points are renormalized onto
    /// the sphere, interpolated componentwise with monotone cubics, and the
    /// interpolated point is renormalized again so the image stays on the
    /// sphere exactly.
    pub fn from_samples(rows: &[(f64, Vec3)]) -> Result<SphereCurve, CurveError> {
        if rows.len() < 4 {
            return Err(CurveError::InvalidParam(String::from(
                "need at least 4 samples",
            )));
        }
        let vs: Vec<f64> = rows.iter().map(|r| r.0).collect();
        if vs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CurveError::InvalidParam(String::from(
                "sample parameters must be strictly increasing",
            )));
        }
        let mut xs = Vec::with_capacity(rows.len());
        let mut ys = Vec::with_capacity(rows.len());
        let mut zs = Vec::with_capacity(rows.len());
        for &(_, p) in rows {
            let p = p
                .normalized()
                .ok_or_else(|| CurveError::InvalidParam(String::from("zero sample point")))?;
            xs.push(p.x);
            ys.push(p.y);
            zs.push(p.z);
        }
        let cx = MonotoneCubic::fit(&vs, &xs).map_err(table_err)?;
        let cy = MonotoneCubic::fit(&vs, &ys).map_err(table_err)?;
        let cz = MonotoneCubic::fit(&vs, &zs).map_err(table_err)?;
        let domain = (vs[0], *vs.last().unwrap());
        Ok(SphereCurve {
            eval: Arc::new(move |v: f64| {
                let p = Vec3::new(
                    cx.eval_extrapolate(v),
                    cy.eval_extrapolate(v),
                    cz.eval_extrapolate(v),
                );
                p.normalized().unwrap_or(Vec3::new(1.0, 0.0, 0.0))
            }),
            d1: None,
            d2: None,
            domain,
            unit_speed: false,
            provenance: String::from("samples"),
        })
    }

    /// Build a curve from user-supplied closures.
    ///
    /// The `unit_speed` flag is caller-asserted; downstream identities only
    /// hold if it is accurate. Derivative closures are optional, falling back
    /// to finite differences.
    pub fn custom(
        eval: CurveFn,
        d1: Option<CurveFn>,
        d2: Option<CurveFn>,
        domain: (f64, f64),
        unit_speed: bool,
        provenance: String,
    ) -> SphereCurve {
        SphereCurve {
            eval,
            d1,
            d2,
            domain,
            unit_speed,
            provenance,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn is_unit_speed(&self) -> bool {
        self.unit_speed
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn eval(&self, v: f64) -> Vec3 {
        (self.eval)(v)
    }

    /// First derivative: analytic when the family ships one, 4th-order
    /// finite differences otherwise.
    pub fn d1(&self, v: f64) -> Vec3 {
        match &self.d1 {
            Some(d) => d(v),
            None => central_diff(&*self.eval, v, DiffOrder::First, default_step(v)),
        }
    }

    /// Second derivative; see [`SphereCurve::d1`].
    pub fn d2(&self, v: f64) -> Vec3 {
        match &self.d2 {
            Some(d) => d(v),
            None => central_diff(&*self.eval, v, DiffOrder::Second, default_step_order2(v)),
        }
    }

    /// Max over `samples` uniform parameters of `| |f(v)| - 1 |`.
    pub fn validate_on_sphere(&self, samples: usize) -> f64 {
        debug_assert!(samples >= 2);
        let (a, b) = self.domain;
        let mut max_dev: f64 = 0.0;
        for i in 0..samples {
            let v = a + (b - a) * i as f64 / (samples - 1) as f64;
            max_dev = max_dev.max((self.eval(v).norm() - 1.0).abs());
        }
        max_dev
    }

    /// Reparametrize by arc length.
    ///
    /// The returned curve has domain `[0, L]` (total arc length), the
    /// unit-speed flag set, and evaluates through the inverse of the
    /// arc-length table (monotone cubic initial guess plus two Newton
    /// corrections against the exact arc-length integral, so derivatives
    /// taken through the composition see a smooth map).
    pub fn reparametrize_unit_speed(
        &self,
        resolution: usize,
    ) -> Result<SphereCurve, CurveError> {
        let resolution = resolution.max(16);
        let (a, b) = self.domain;
        let n = resolution;
        let mut vs = Vec::with_capacity(n + 1);
        let mut ss = Vec::with_capacity(n + 1);
        let speed_of = {
            let inner = self.clone();
            move |v: f64| inner.d1(v).norm()
        };
        let mut s_acc = 0.0;
        vs.push(a);
        ss.push(0.0);
        for i in 0..n {
            let v0 = a + (b - a) * i as f64 / n as f64;
            let v1 = a + (b - a) * (i + 1) as f64 / n as f64;
            if speed_of(v0) < MIN_SPEED || speed_of(v1) < MIN_SPEED {
                return Err(CurveError::DegenerateCurve);
            }
            // Fixed-order quadrature: smooth in the endpoints, so the
            // inverse map built on this table can be finite-differenced
            // without picking up adaptive-subdivision noise.
            s_acc += gauss_legendre(&speed_of, v0, v1);
            vs.push(v1);
            ss.push(s_acc);
        }
        let total = s_acc;
        let inverse = MonotoneCubic::fit(&ss, &vs).map_err(table_err)?;

        let inner = self.clone();
        let knots_v = vs;
        let knots_s = ss;
        let param_of = Arc::new(move |s: f64| -> f64 {
            let mut v = inverse.eval_extrapolate(s);
            // Newton against the exact arc-length from the bracketing knot.
            for _ in 0..2 {
                let j = match knots_s
                    .binary_search_by(|x| x.partial_cmp(&s).unwrap())
                {
                    Ok(j) => j,
                    Err(j) => j.saturating_sub(1).min(knots_s.len() - 1),
                };
                let (vj, sj) = (knots_v[j], knots_s[j]);
                let speed = |t: f64| inner.d1(t).norm();
                let s_of_v = sj + gauss_legendre(speed, vj, v);
                let sigma = speed(v);
                if sigma < MIN_SPEED {
                    break;
                }
                v -= (s_of_v - s) / sigma;
            }
            v
        });

        let inner_eval = self.eval.clone();
        Ok(SphereCurve {
            eval: Arc::new(move |s: f64| inner_eval(param_of(s))),
            d1: None,
            d2: None,
            domain: (0.0, total),
            unit_speed: true,
            provenance: format!("reparametrized({})", self.provenance),
        })
    }

    /// Reparametrize with the default table resolution.
    pub fn into_unit_speed(&self) -> Result<SphereCurve, CurveError> {
        if self.unit_speed {
            Ok(self.clone())
        } else {
            self.reparametrize_unit_speed(DEFAULT_REPARAM_RESOLUTION)
        }
    }

    /// Full jet at `v`: position, two derivatives, binormal `f x f'` and
    /// geodesic curvature `det(f, f', f'')`.
    pub fn jet(&self, v: f64) -> Result<CurveJet, CurveError> {
        if !self.unit_speed {
            return Err(CurveError::NotUnitSpeed);
        }
        let f = self.eval(v);
        let f1 = self.d1(v);
        let f2 = self.d2(v);
        Ok(CurveJet {
            f,
            f1,
            f2,
            binormal: f.cross(f1),
            kappa_g: Vec3::triple(f, f1, f2),
        })
    }
}

fn table_err(_: crate::numkit::InterpError) -> CurveError {
    CurveError::InvalidParam(String::from("could not build interpolation table"))
}
