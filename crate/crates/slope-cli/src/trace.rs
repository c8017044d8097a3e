//! CSV serialization of planar and space curve traces.

use anyhow::{anyhow, bail, Context, Result};
use slope_core::spiral_toolkit::{PlanarCurveTrace, SpaceCurveTrace};
use slope_core::Vec3;
use std::io::Write;
use std::path::Path;

/// `t,x,y` rows, 17 significant digits, LF endings.
pub fn write_planar_trace(trace: &PlanarCurveTrace, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "t,x,y")?;
    for &(t, x, y) in &trace.samples {
        writeln!(w, "{t:.16e},{x:.16e},{y:.16e}")?;
    }
    Ok(())
}

/// `t,x,y,z` rows, 17 significant digits, LF endings.
pub fn write_space_trace(trace: &SpaceCurveTrace, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "t,x,y,z")?;
    for &(t, p) in &trace.samples {
        writeln!(w, "{t:.16e},{:.16e},{:.16e},{:.16e}", p.x, p.y, p.z)?;
    }
    Ok(())
}

/// Read a space trace back (header `t,x,y,z`), e.g. for `helix-check`.
pub fn read_space_trace(path: &Path) -> Result<SpaceCurveTrace> {
    let mut rdr = csv::Reader::from_path(path)
        .with_context(|| format!("cannot open trace {}", path.display()))?;
    {
        let headers = rdr.headers()?;
        let expect = ["t", "x", "y", "z"];
        if headers.len() != 4 || headers.iter().zip(expect).any(|(h, e)| h.trim() != e) {
            bail!("trace CSV must have header t,x,y,z");
        }
    }
    let mut samples = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let get = |i: usize| -> Result<f64> {
            rec.get(i)
                .ok_or_else(|| anyhow!("short row in {}", path.display()))?
                .trim()
                .parse()
                .with_context(|| format!("bad number in {}", path.display()))
        };
        samples.push((get(0)?, Vec3::new(get(1)?, get(2)?, get(3)?)));
    }
    Ok(SpaceCurveTrace {
        samples,
        meta: format!("file({})", path.display()),
    })
}
