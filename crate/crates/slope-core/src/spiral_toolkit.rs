//! The curve zoo around constant-angle geometry: logarithmic and golden
//! spirals, loxodromes, stereographic projection, generalized-helix
//! detection, and conchospirals as `u`-parameter lines of cones.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

use crate::numkit::{smallest_eigvec_sym3, Sym3, Vec3};
use crate::slope_surface::{cot, SlopeSurface, SurfaceError};

#[cfg(not(feature = "std"))]
use crate::float::FloatExt;

#[derive(Debug, Clone, PartialEq)]
pub enum SpiralError {
    InvalidParam(String),
    /// A trace sample sits at the origin; the radial direction is undefined.
    OriginSample,
    /// Stereographic projection is undefined at (or too near) the north pole.
    PoleSingularity,
    /// Curvature or torsion vanishes at an interior sample; the Frenet
    /// apparatus (and hence the helix criteria) degenerates.
    DegenerateFrenet,
    Surface(SurfaceError),
}

impl fmt::Display for SpiralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpiralError::InvalidParam(msg) => write!(f, "invalid parameter: {msg}"),
            SpiralError::OriginSample => write!(f, "trace sample at the origin"),
            SpiralError::PoleSingularity => write!(f, "point at the projection pole"),
            SpiralError::DegenerateFrenet => {
                write!(f, "curvature or torsion vanishes; not a Frenet curve")
            }
            SpiralError::Surface(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SpiralError {}

impl From<SurfaceError> for SpiralError {
    fn from(e: SurfaceError) -> Self {
        SpiralError::Surface(e)
    }
}

/// Sampled planar curve: rows `(t, x, y)` with strictly increasing `t`.
#[derive(Debug, Clone)]
pub struct PlanarCurveTrace {
    pub samples: Vec<(f64, f64, f64)>,
    pub meta: String,
}

/// Sampled space curve: rows `(t, point)` with strictly increasing `t`.
#[derive(Debug, Clone)]
pub struct SpaceCurveTrace {
    pub samples: Vec<(f64, Vec3)>,
    pub meta: String,
}

/// Equiangular spiral `(a e^{t cot(theta)} cos t, a e^{t cot(theta)} sin t)`.
///
/// `theta = pi/2` degenerates to the circle of radius `a`.
pub fn log_spiral(
    a: f64,
    theta: f64,
    t_range: (f64, f64),
    n: usize,
) -> Result<PlanarCurveTrace, SpiralError> {
    if a <= 0.0 {
        return Err(SpiralError::InvalidParam(format!("a must be > 0, got {a}")));
    }
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(SpiralError::InvalidParam(format!(
            "theta must lie in (0, pi/2], got {theta}"
        )));
    }
    if n < 2 || t_range.1 <= t_range.0 {
        return Err(SpiralError::InvalidParam(String::from(
            "need n >= 2 and a nonempty t range",
        )));
    }
    let b = cot(theta);
    let samples = (0..n)
        .map(|i| {
            let t = t_range.0 + (t_range.1 - t_range.0) * i as f64 / (n - 1) as f64;
            let rho = a * (b * t).exp();
            (t, rho * t.cos(), rho * t.sin())
        })
        .collect();
    Ok(PlanarCurveTrace {
        samples,
        meta: format!("log-spiral(a={a},theta={theta})"),
    })
}

/// Logarithmic spiral whose radius multiplies by the golden ratio every
/// quarter turn: growth rate `b = ln(Phi) / (pi/2)`.
pub fn golden_spiral(
    a: f64,
    t_range: (f64, f64),
    n: usize,
) -> Result<PlanarCurveTrace, SpiralError> {
    if a <= 0.0 {
        return Err(SpiralError::InvalidParam(format!("a must be > 0, got {a}")));
    }
    if n < 2 || t_range.1 <= t_range.0 {
        return Err(SpiralError::InvalidParam(String::from(
            "need n >= 2 and a nonempty t range",
        )));
    }
    let phi = 0.5 * (1.0 + 5f64.sqrt());
    let b = phi.ln() / FRAC_PI_2;
    let samples = (0..n)
        .map(|i| {
            let t = t_range.0 + (t_range.1 - t_range.0) * i as f64 / (n - 1) as f64;
            let rho = a * (b * t).exp();
            (t, rho * t.cos(), rho * t.sin())
        })
        .collect();
    Ok(PlanarCurveTrace {
        samples,
        meta: format!("golden-spiral(a={a})"),
    })
}

/// Per-sample angle between the finite-difference tangent and the radial
/// direction: returns `(mean_angle, max_deviation_from_mean)`.
pub fn equiangular_check(trace: &PlanarCurveTrace) -> Result<(f64, f64), SpiralError> {
    let s = &trace.samples;
    if s.len() < 5 {
        return Err(SpiralError::InvalidParam(String::from(
            "need at least 5 samples",
        )));
    }
    let mut angles = Vec::with_capacity(s.len());
    for i in 2..s.len() - 2 {
        let (_, x, y) = s[i];
        if x.hypot(y) < 1e-12 {
            return Err(SpiralError::OriginSample);
        }
        let (tx, ty) = stencil_tangent_2d(s, i);
        let radial_angle = cross2(x, y, tx, ty).abs().atan2(x * tx + y * ty);
        // Fold to [0, pi/2]: the traversal direction is immaterial.
        angles.push(radial_angle.min(PI - radial_angle));
    }
    Ok(mean_and_max_dev(&angles))
}

fn cross2(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    ax * by - ay * bx
}

// 4th-order tangent from five consecutive rows; falls back to a two-point
// difference when the parameter spacing is visibly nonuniform.
fn stencil_tangent_2d(s: &[(f64, f64, f64)], i: usize) -> (f64, f64) {
    let h = s[i + 1].0 - s[i].0;
    let spacing_ok = {
        let d0 = s[i - 1].0 - s[i - 2].0;
        let d1 = s[i].0 - s[i - 1].0;
        let d2 = s[i + 1].0 - s[i].0;
        let d3 = s[i + 2].0 - s[i + 1].0;
        let m = (d0 + d1 + d2 + d3) / 4.0;
        [d0, d1, d2, d3].iter().all(|&d| (d - m).abs() <= 1e-6 * m)
    };
    if spacing_ok {
        let tx = (s[i - 2].1 - s[i + 2].1 + 8.0 * (s[i + 1].1 - s[i - 1].1)) / (12.0 * h);
        let ty = (s[i - 2].2 - s[i + 2].2 + 8.0 * (s[i + 1].2 - s[i - 1].2)) / (12.0 * h);
        (tx, ty)
    } else {
        let dt = s[i + 1].0 - s[i - 1].0;
        (
            (s[i + 1].1 - s[i - 1].1) / dt,
            (s[i + 1].2 - s[i - 1].2) / dt,
        )
    }
}

fn mean_and_max_dev(values: &[f64]) -> (f64, f64) {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let max_dev = values
        .iter()
        .fold(0.0f64, |acc, &v| acc.max((v - mean).abs()));
    (mean, max_dev)
}

/// Loxodrome crossing all meridians at angle `theta`:
/// `psi(phi) = 2 arctan(exp(sign phi cot(theta)))` on the unit sphere.
pub fn loxodrome(
    theta: f64,
    sign: i8,
    phi_range: (f64, f64),
    n: usize,
) -> Result<SpaceCurveTrace, SpiralError> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(SpiralError::InvalidParam(format!(
            "theta must lie in (0, pi/2), got {theta}"
        )));
    }
    if !(sign == 1 || sign == -1) {
        return Err(SpiralError::InvalidParam(String::from("sign must be +-1")));
    }
    if n < 2 || phi_range.1 <= phi_range.0 {
        return Err(SpiralError::InvalidParam(String::from(
            "need n >= 2 and a nonempty phi range",
        )));
    }
    let k = sign as f64 * cot(theta);
    let samples = (0..n)
        .map(|i| {
            let phi = phi_range.0 + (phi_range.1 - phi_range.0) * i as f64 / (n - 1) as f64;
            let psi = 2.0 * (k * phi).exp().atan();
            (
                phi,
                Vec3::new(psi.sin() * phi.cos(), psi.sin() * phi.sin(), psi.cos()),
            )
        })
        .collect();
    Ok(SpaceCurveTrace {
        samples,
        meta: format!("loxodrome(theta={theta},sign={sign})"),
    })
}

/// Max deviation of the angle between the trace tangent and the local
/// meridian from `theta`, over interior samples. Angles are folded onto
/// `[0, pi/2]` so the meridian orientation does not matter.
pub fn loxodrome_meridian_check(trace: &SpaceCurveTrace, theta: f64) -> Result<f64, SpiralError> {
    let s = &trace.samples;
    if s.len() < 5 {
        return Err(SpiralError::InvalidParam(String::from(
            "need at least 5 samples",
        )));
    }
    let mut max_dev: f64 = 0.0;
    for i in 2..s.len() - 2 {
        let p = s[i].1;
        let h = s[i + 1].0 - s[i].0;
        let tangent =
            (s[i - 2].1 - s[i + 2].1 + 8.0 * (s[i + 1].1 - s[i - 1].1)) / (12.0 * h);
        let phi = p.y.atan2(p.x);
        let psi = p.z.clamp(-1.0, 1.0).acos();
        let meridian = Vec3::new(psi.cos() * phi.cos(), psi.cos() * phi.sin(), -psi.sin());
        let angle = tangent.angle_to(meridian);
        let folded = angle.min(PI - angle);
        max_dev = max_dev.max((folded - theta).abs());
    }
    Ok(max_dev)
}

/// Stereographic projection from the north pole onto the equatorial plane:
/// `(x, y, z) -> (x, y) / (1 - z)`.
pub fn stereographic(p: Vec3) -> Result<(f64, f64), SpiralError> {
    if (p.norm() - 1.0).abs() > 1e-9 {
        return Err(SpiralError::InvalidParam(format!(
            "point not on the unit sphere: |p| = {}",
            p.norm()
        )));
    }
    if 1.0 - p.z < 1e-12 {
        return Err(SpiralError::PoleSingularity);
    }
    Ok((p.x / (1.0 - p.z), p.y / (1.0 - p.z)))
}

/// Project a spherical trace to the plane, keeping the parameter column.
pub fn stereographic_trace(trace: &SpaceCurveTrace) -> Result<PlanarCurveTrace, SpiralError> {
    let mut samples = Vec::with_capacity(trace.samples.len());
    for &(t, p) in &trace.samples {
        let (x, y) = stereographic(p)?;
        samples.push((t, x, y));
    }
    Ok(PlanarCurveTrace {
        samples,
        meta: format!("stereographic({})", trace.meta),
    })
}

/// Result of the generalized-helix criteria on a sampled space curve.
#[derive(Debug, Clone, Copy)]
pub struct HelixCheck {
    /// Max deviation of the tangent/axis angle from its mean.
    pub axis_angle_dev: f64,
    /// Mean of `kappa / tau` over interior samples (signed).
    pub kappa_over_tau_mean: f64,
    /// Max relative deviation of `kappa / tau` from its mean.
    pub kappa_over_tau_dev: f64,
    /// Unit direction minimizing the variance of `<T, axis>`.
    pub best_axis: Vec3,
}

/// Check both helix characterizations on a densely sampled trace.
///
/// Derivatives come from nested 4th-order stencils, so eight samples of
/// margin are consumed at each end. Errors with `DegenerateFrenet` when the
/// finite-difference curvature or torsion vanishes at an interior sample.
pub fn helix_check(trace: &SpaceCurveTrace) -> Result<HelixCheck, SpiralError> {
    let s = &trace.samples;
    let n = s.len();
    if n < 17 {
        return Err(SpiralError::InvalidParam(String::from(
            "need at least 17 samples",
        )));
    }
    let h = s[1].0 - s[0].0;
    let uniform = s
        .windows(2)
        .all(|w| ((w[1].0 - w[0].0) - h).abs() <= 1e-9 * h.abs().max(1e-9));
    if !uniform {
        return Err(SpiralError::InvalidParam(String::from(
            "helix check requires uniform parameter spacing",
        )));
    }

    let d1: Vec<Vec3> = (2..n - 2).map(|i| stencil_d1(s, i, h)).collect();
    let d2: Vec<Vec3> = (2..n - 2).map(|i| stencil_d2(s, i, h)).collect();
    // Third derivative: 4th-order stencil over the second-derivative array.
    let m = d2.len();
    let d3: Vec<Vec3> = (2..m - 2)
        .map(|j| (d2[j - 2] - d2[j + 2] + 8.0 * (d2[j + 1] - d2[j - 1])) / (12.0 * h))
        .collect();

    let mut tangents = Vec::with_capacity(d3.len());
    let mut ratios = Vec::with_capacity(d3.len());
    for (j, &r3) in d3.iter().enumerate() {
        let i = j + 2; // index into d1/d2
        let (r1, r2) = (d1[i], d2[i]);
        let cross = r1.cross(r2);
        let speed = r1.norm();
        let kappa = cross.norm() / speed.powi(3);
        let tau = Vec3::triple(r1, r2, r3) / cross.norm_squared();
        if kappa < 1e-10 || tau.abs() < 1e-10 || !tau.is_finite() {
            return Err(SpiralError::DegenerateFrenet);
        }
        tangents.push(r1 / speed);
        ratios.push(kappa / tau);
    }

    let mean_t = tangents.iter().fold(Vec3::ZERO, |a, &t| a + t) / tangents.len() as f64;
    let mut cov = Sym3 {
        a11: 0.0,
        a12: 0.0,
        a13: 0.0,
        a22: 0.0,
        a23: 0.0,
        a33: 0.0,
    };
    for t in &tangents {
        let d = *t - mean_t;
        cov.a11 += d.x * d.x;
        cov.a12 += d.x * d.y;
        cov.a13 += d.x * d.z;
        cov.a22 += d.y * d.y;
        cov.a23 += d.y * d.z;
        cov.a33 += d.z * d.z;
    }
    let best_axis = smallest_eigvec_sym3(cov);

    let angles: Vec<f64> = tangents.iter().map(|t| t.angle_to(best_axis)).collect();
    let (_, axis_angle_dev) = mean_and_max_dev(&angles);
    let (ratio_mean, ratio_dev) = mean_and_max_dev(&ratios);
    Ok(HelixCheck {
        axis_angle_dev,
        kappa_over_tau_mean: ratio_mean,
        kappa_over_tau_dev: ratio_dev / ratio_mean.abs().max(1e-300),
        best_axis,
    })
}

fn stencil_d1(s: &[(f64, Vec3)], i: usize, h: f64) -> Vec3 {
    (s[i - 2].1 - s[i + 2].1 + 8.0 * (s[i + 1].1 - s[i - 1].1)) / (12.0 * h)
}

fn stencil_d2(s: &[(f64, Vec3)], i: usize, h: f64) -> Vec3 {
    (-s[i - 2].1 - s[i + 2].1 + 16.0 * (s[i - 1].1 + s[i + 1].1) - 30.0 * s[i].1)
        / (12.0 * h * h)
}

/// Trace the `u`-parameter line `u -> r(u, v0)` of a slope surface. Over a
/// small circle this is a conchospiral winding on the cone `|r| = u
/// sin(theta)`; over a great circle at `theta = pi/2` it degenerates to a
/// straight ray.
pub fn conchospiral_on_cone(
    s: &SlopeSurface,
    v0: f64,
    u_range: (f64, f64),
    n: usize,
) -> Result<SpaceCurveTrace, SpiralError> {
    if n < 2 || u_range.1 <= u_range.0 {
        return Err(SpiralError::InvalidParam(String::from(
            "need n >= 2 and a nonempty u range",
        )));
    }
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let u = u_range.0 + (u_range.1 - u_range.0) * i as f64 / (n - 1) as f64;
        samples.push((u, s.position(u, v0)?));
    }
    Ok(SpaceCurveTrace {
        samples,
        meta: format!("conchospiral(theta={},v0={v0})", s.theta()),
    })
}
