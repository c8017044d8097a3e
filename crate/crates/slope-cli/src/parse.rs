//! Parsers for the CLI micro-formats: angles, ranges, grids, curve specs.

use anyhow::{anyhow, bail, Context, Result};
use slope_core::sphere_curves::BuiltinCurve;
use slope_core::{SphereCurve, Vec3};
use std::path::Path;

/// `pi/<k>` (k a positive number) or plain decimal radians.
pub fn parse_theta(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("pi/") {
        let k: f64 = rest
            .parse()
            .with_context(|| format!("bad angle denominator {rest:?}"))?;
        if !(k.is_finite() && k > 0.0) {
            bail!("angle denominator must be positive, got {k}");
        }
        return Ok(std::f64::consts::PI / k);
    }
    let v: f64 = s.parse().with_context(|| format!("bad angle {s:?}"))?;
    if !v.is_finite() {
        bail!("angle must be finite");
    }
    Ok(v)
}

/// `min:max:n` with `n >= 2`.
pub fn parse_range(s: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("range must be min:max:n, got {s:?}");
    }
    let min: f64 = parts[0].parse().with_context(|| format!("bad range min {:?}", parts[0]))?;
    let max: f64 = parts[1].parse().with_context(|| format!("bad range max {:?}", parts[1]))?;
    let n: usize = parts[2].parse().with_context(|| format!("bad range count {:?}", parts[2]))?;
    if !(min.is_finite() && max.is_finite() && max > min) {
        bail!("range must be nonempty, got {s:?}");
    }
    if n < 2 {
        bail!("range count must be >= 2, got {n}");
    }
    Ok((min, max, n))
}

/// `NxM` with both factors `>= 2`.
pub fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once('x')
        .ok_or_else(|| anyhow!("grid must be NxM, got {s:?}"))?;
    let n: usize = a.parse().with_context(|| format!("bad grid rows {a:?}"))?;
    let m: usize = b.parse().with_context(|| format!("bad grid cols {b:?}"))?;
    if n < 2 || m < 2 {
        bail!("grid sides must be >= 2, got {n}x{m}");
    }
    Ok((n, m))
}

/// Curve micro-format:
/// `circle`, `smallcircle:psi0=<r>`, `figure8`, `spherespiral:v0=<r>`,
/// `conecircle`, or `samples:<path.csv>` (header `v,x,y,z`; points are
/// renormalized onto the sphere and interpolated).
pub fn parse_curve(spec: &str) -> Result<SphereCurve> {
    let spec = spec.trim();
    let builtin = |id| SphereCurve::builtin(id).map_err(|e| anyhow!("{e}"));
    match spec {
        "circle" => return builtin(BuiltinCurve::GreatCircle),
        "figure8" => return builtin(BuiltinCurve::Figure8),
        "conecircle" => return builtin(BuiltinCurve::ConeCircle),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("smallcircle:") {
        let psi0 = parse_named_param(rest, "psi0")?;
        return builtin(BuiltinCurve::SmallCircle { psi0 });
    }
    if let Some(rest) = spec.strip_prefix("spherespiral:") {
        let v0 = parse_named_param(rest, "v0")?;
        return builtin(BuiltinCurve::SphereSpiral { v0 });
    }
    if let Some(path) = spec.strip_prefix("samples:") {
        return curve_from_csv(Path::new(path));
    }
    bail!(
        "unknown curve spec {spec:?}; expected circle, smallcircle:psi0=<r>, \
         figure8, spherespiral:v0=<r>, conecircle, or samples:<path.csv>"
    );
}

fn parse_named_param(s: &str, name: &str) -> Result<f64> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| anyhow!("expected {name}=<value>, got {s:?}"))?;
    if key != name {
        bail!("expected parameter {name:?}, got {key:?}");
    }
    value
        .parse()
        .with_context(|| format!("bad value for {name}: {value:?}"))
}

fn curve_from_csv(path: &Path) -> Result<SphereCurve> {
    let mut rdr = csv::Reader::from_path(path)
        .with_context(|| format!("cannot open curve samples {}", path.display()))?;
    {
        let headers = rdr.headers()?;
        let expect = ["v", "x", "y", "z"];
        if headers.len() != 4 || headers.iter().zip(expect).any(|(h, e)| h.trim() != e) {
            bail!("curve sample CSV must have header v,x,y,z");
        }
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let get = |i: usize| -> Result<f64> {
            rec.get(i)
                .ok_or_else(|| anyhow!("short row in {}", path.display()))?
                .trim()
                .parse()
                .with_context(|| format!("bad number in {}", path.display()))
        };
        rows.push((get(0)?, Vec3::new(get(1)?, get(2)?, get(3)?)));
    }
    SphereCurve::from_samples(&rows).map_err(|e| anyhow!("{e}"))
}
