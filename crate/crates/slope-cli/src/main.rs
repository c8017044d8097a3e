//! `slope`: generate and verify constant slope surfaces and the
//! surrounding spiral/loxodrome/helix toolkit from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad arguments,
//! 3 I/O error. All diagnostics go to stderr; stdout carries only data.

use clap::{Parser, Subcommand, ValueEnum};
use slope_cli::{
    parse_curve, parse_grid, parse_range, parse_theta, report_csv, report_lines, sample_mesh,
    thresholds, write_obj, Mesh, MeshError,
};
use slope_core::diffgeo::{verify_surface, JetMode};
use slope_core::slope_surface::DegenerateSurface;
use slope_core::spiral_toolkit::{
    equiangular_check, golden_spiral, helix_check, log_spiral, loxodrome,
    loxodrome_meridian_check, SpiralError,
};
use slope_core::SlopeSurface;
use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "slope", version, about = "Constant slope surface toolkit")]
struct Cli {
    /// Worker threads for grid sampling (output is thread-count independent).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Closed-form partial derivatives.
    Analytic,
    /// Finite-difference partials of the immersion.
    Oracle,
}

impl From<Mode> for JetMode {
    fn from(m: Mode) -> JetMode {
        match m {
            Mode::Analytic => JetMode::Analytic,
            Mode::Oracle => JetMode::Oracle,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample a constant slope surface into a Wavefront OBJ mesh.
    Surface {
        /// Slope angle: `pi/<k>` or radians, in (0, pi/2].
        #[arg(long)]
        theta: String,
        /// Curve spec (circle, smallcircle:psi0=<r>, figure8,
        /// spherespiral:v0=<r>, conecircle, samples:<path.csv>).
        #[arg(long)]
        curve: String,
        /// u grid as min:max:n (spacing geometric in u).
        #[arg(long)]
        u: String,
        /// v grid as min:max:n (defaults to the curve domain).
        #[arg(long)]
        v: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Analytic)]
        mode: Mode,
    },
    /// Check the defining identities over a grid and print a report.
    Verify {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        curve: String,
        /// Sample grid as NxM (u rows x v columns).
        #[arg(long, default_value = "64x64")]
        grid: String,
        /// u range as min:max (defaults to the standard domain).
        #[arg(long)]
        u: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Analytic)]
        mode: Mode,
        /// Emit the report as single-row CSV instead of key=value lines.
        #[arg(long)]
        csv: bool,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a logarithmic spiral trace as CSV (t,x,y).
    Spiral {
        /// Radius at t = 0.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Pitch angle in (0, pi/2]; pi/2 gives a circle.
        #[arg(long, required_unless_present = "golden")]
        theta: Option<String>,
        /// Golden spiral: radius grows by the golden ratio per quarter turn.
        #[arg(long, conflicts_with = "theta")]
        golden: bool,
        /// Parameter range as min:max:n.
        #[arg(long, default_value = "0:6.283185307179586:1000")]
        t: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a loxodrome trace as CSV (t,x,y,z).
    Loxodrome {
        /// Meridian angle in (0, pi/2).
        #[arg(long)]
        theta: String,
        /// Winding direction, +1 or -1.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i8,
        /// Longitude range as min:max:n.
        #[arg(
            long,
            default_value = "-6.283185307179586:6.283185307179586:2000",
            allow_hyphen_values = true
        )]
        phi: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the generalized-helix criteria on a trace CSV (t,x,y,z).
    HelixCheck {
        input: PathBuf,
    },
    /// Mesh the theta = 0 degenerate branch: a sphere about the origin.
    Sphere {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value = "64x64")]
        grid: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Mesh the theta = pi/2 degenerate branch: a cone (or plane).
    Cone {
        #[arg(long, default_value = "conecircle")]
        curve: String,
        /// u grid as min:max:n.
        #[arg(long, default_value = "0.1:4:100")]
        u: String,
        /// v grid as min:max:n (defaults to the curve domain).
        #[arg(long)]
        v: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Failure paths mapped to process exit codes.
enum Failure {
    /// Exit 1: a numerical check did not pass.
    Check(String),
    /// Exit 2: arguments invalid or inconsistent.
    Usage(String),
    /// Exit 3: filesystem problems.
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn io_err(e: impl std::fmt::Display) -> Failure {
    Failure::Io(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be >= 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Surface { theta, curve, u, v, output, mode } => {
            surface_cmd(&theta, &curve, &u, v.as_deref(), &output, mode)
        }
        Cmd::Verify { theta, curve, grid, u, mode, csv, output } => {
            verify_cmd(&theta, &curve, &grid, u.as_deref(), mode, csv, output.as_deref())
        }
        Cmd::Spiral { a, theta, golden, t, output } => {
            spiral_cmd(a, theta.as_deref(), golden, &t, output.as_deref())
        }
        Cmd::Loxodrome { theta, sign, phi, output } => {
            loxodrome_cmd(&theta, sign, &phi, output.as_deref())
        }
        Cmd::HelixCheck { input } => helix_check_cmd(&input),
        Cmd::Sphere { radius, grid, output } => sphere_cmd(radius, &grid, &output),
        Cmd::Cone { curve, u, v, output } => cone_cmd(&curve, &u, v.as_deref(), &output),
    }
}

fn build_surface(
    theta_spec: &str,
    curve_spec: &str,
    u_domain: (f64, f64),
) -> Result<SlopeSurface, Failure> {
    let theta = parse_theta(theta_spec).map_err(usage)?;
    if theta.abs() < 1e-12 {
        return Err(Failure::Usage(String::from(
            "theta = 0 degenerates to the sphere branch; use the `sphere` subcommand",
        )));
    }
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Failure::Usage(format!(
            "theta must lie in (0, pi/2], got {theta}"
        )));
    }
    let curve = parse_curve(curve_spec).map_err(usage)?;
    let curve = curve.into_unit_speed().map_err(usage)?;
    SlopeSurface::new(theta, curve, u_domain).map_err(usage)
}

fn v_grid(s: &SlopeSurface, v: Option<&str>, default_n: usize) -> Result<(f64, f64, usize), Failure> {
    match v {
        Some(spec) => parse_range(spec).map_err(usage),
        None => {
            let (v0, v1) = s.v_domain();
            Ok((v0, v1, default_n))
        }
    }
}

fn mesh_summary(mesh: &Mesh, max_angle_dev: f64) {
    eprintln!(
        "vertices={} faces={} degenerate_skipped={} max_angle_dev={:.3e}",
        mesh.vertices.len(),
        mesh.faces.len(),
        mesh.degenerate_skipped,
        max_angle_dev
    );
}

fn surface_cmd(
    theta: &str,
    curve: &str,
    u: &str,
    v: Option<&str>,
    output: &Path,
    mode: Mode,
) -> Result<(), Failure> {
    let (u0, u1, nu) = parse_range(u).map_err(usage)?;
    if u0 <= 0.0 {
        return Err(Failure::Usage(format!("u must stay positive, got min {u0}")));
    }
    let s = build_surface(theta, curve, (u0, u1))?;
    let (v0, v1, nv) = v_grid(&s, v, nu)?;
    let mesh = sample_mesh(&s, (u0, u1), (v0, v1), nu, nv).map_err(|e| match e {
        MeshError::AllSingular => Failure::Check(e.to_string()),
        MeshError::BadGrid(_) => Failure::Usage(e.to_string()),
    })?;
    write_obj(&mesh, output).map_err(io_err)?;
    // Cheap verification pass for the summary line.
    let report = verify_surface(&s, nu.min(32), nv.min(32), mode.into());
    mesh_summary(&mesh, report.max_angle_dev);
    Ok(())
}

fn verify_cmd(
    theta: &str,
    curve: &str,
    grid: &str,
    u: Option<&str>,
    mode: Mode,
    csv: bool,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let (nu, nv) = parse_grid(grid).map_err(usage)?;
    let u_domain = match u {
        Some(spec) => {
            let parts: Vec<&str> = spec.split(':').collect();
            if parts.len() < 2 {
                return Err(Failure::Usage(format!("u range must be min:max, got {spec:?}")));
            }
            let lo: f64 = parts[0].parse().map_err(usage)?;
            let hi: f64 = parts[1].parse().map_err(usage)?;
            if !(lo > 0.0 && hi > lo) {
                return Err(Failure::Usage(format!("bad u range {spec:?}")));
            }
            (lo, hi)
        }
        None => (0.05, 5.0),
    };
    let s = build_surface(theta, curve, u_domain)?;
    let report = verify_surface(&s, nu, nv, mode.into());
    let text = if csv { report_csv(&report) } else { report_lines(&report) };
    match output {
        Some(path) => std::fs::write(path, text).map_err(io_err)?,
        None => print!("{text}"),
    }
    let t = thresholds(mode.into());
    if t.passes(&report) {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "deviations exceed thresholds: angle {:.3e}/{:.0e} norm {:.3e}/{:.0e} \
             ode {:.3e}/{:.0e} k1 {:.3e}/{:.0e} lambda {:.3e}/{:.0e} connection {:.3e}/{:.0e}",
            report.max_angle_dev, t.angle,
            report.max_norm_dev, t.norm,
            report.max_ode_residual, t.ode,
            report.max_k1_dev, t.k1,
            report.max_lambda_dev, t.lambda,
            report.max_connection_dev, t.connection,
        )))
    }
}

fn write_text_or_stdout(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(io_err),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn spiral_cmd(
    a: f64,
    theta: Option<&str>,
    golden: bool,
    t: &str,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let (t0, t1, n) = parse_range(t).map_err(usage)?;
    let trace = if golden {
        golden_spiral(a, (t0, t1), n).map_err(usage)?
    } else {
        let theta = parse_theta(theta.expect("clap enforces theta unless --golden")).map_err(usage)?;
        log_spiral(a, theta, (t0, t1), n).map_err(usage)?
    };
    if let Ok((mean, max_dev)) = equiangular_check(&trace) {
        eprintln!("equiangular mean={mean:.12} max_dev={max_dev:.3e}");
    }
    let mut buf = Vec::new();
    slope_cli::trace::write_planar_trace(&trace, &mut buf).map_err(io_err)?;
    write_text_or_stdout(std::str::from_utf8(&buf).expect("ascii"), output)
}

fn loxodrome_cmd(
    theta: &str,
    sign: i8,
    phi: &str,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let theta = parse_theta(theta).map_err(usage)?;
    let (p0, p1, n) = parse_range(phi).map_err(usage)?;
    let trace = loxodrome(theta, sign, (p0, p1), n).map_err(usage)?;
    let dev = loxodrome_meridian_check(&trace, theta).map_err(usage)?;
    eprintln!("meridian_angle_max_dev={dev:.3e}");
    let mut buf = Vec::new();
    slope_cli::trace::write_space_trace(&trace, &mut buf).map_err(io_err)?;
    write_text_or_stdout(std::str::from_utf8(&buf).expect("ascii"), output)
}

fn helix_check_cmd(input: &Path) -> Result<(), Failure> {
    let trace = slope_cli::trace::read_space_trace(input).map_err(io_err)?;
    match helix_check(&trace) {
        Ok(check) => {
            println!("axis_angle_dev={:.17e}", check.axis_angle_dev);
            println!("kappa_over_tau_dev={:.17e}", check.kappa_over_tau_dev);
            println!(
                "best_axis={:.17e},{:.17e},{:.17e}",
                check.best_axis.x, check.best_axis.y, check.best_axis.z
            );
            Ok(())
        }
        Err(SpiralError::DegenerateFrenet) => Err(Failure::Check(String::from(
            "curvature or torsion vanishes; not a generalized helix candidate",
        ))),
        Err(e) => Err(usage(e)),
    }
}

fn sphere_cmd(radius: f64, grid: &str, output: &Path) -> Result<(), Failure> {
    let (nu, nv) = parse_grid(grid).map_err(usage)?;
    let sph = DegenerateSurface::sphere(radius).map_err(usage)?;
    let (u0, u1) = sph.u_domain();
    let (v0, v1) = sph.v_domain();
    let mut vertices = Vec::with_capacity(nu * nv);
    let mut normals = Vec::with_capacity(nu * nv);
    let mut max_angle_dev: f64 = 0.0;
    for i in 0..nu {
        let u = u0 + (u1 - u0) * i as f64 / (nu - 1) as f64;
        for j in 0..nv {
            let v = v0 + (v1 - v0) * j as f64 / (nv - 1) as f64;
            let p = sph.position(u, v);
            vertices.push(p);
            normals.push(p / radius);
            if let Ok(angle) = sph.angle_with_position(u, v) {
                max_angle_dev = max_angle_dev.max(angle.abs());
            }
        }
    }
    let mut faces = Vec::new();
    for i in 0..nu - 1 {
        for j in 0..nv - 1 {
            let a = i * nv + j;
            let b = (i + 1) * nv + j;
            let c = (i + 1) * nv + j + 1;
            let d = i * nv + j + 1;
            faces.push((a, b, c));
            faces.push((a, c, d));
        }
    }
    let mesh = Mesh { vertices, normals, faces, degenerate_skipped: 0 };
    write_obj(&mesh, output).map_err(io_err)?;
    mesh_summary(&mesh, max_angle_dev);
    Ok(())
}

fn cone_cmd(curve: &str, u: &str, v: Option<&str>, output: &Path) -> Result<(), Failure> {
    let (u0, u1, nu) = parse_range(u).map_err(usage)?;
    if u0 <= 0.0 {
        return Err(Failure::Usage(format!("u must stay positive, got min {u0}")));
    }
    let parsed = parse_curve(curve).map_err(usage)?;
    let branch = DegenerateSurface::cone_or_plane(parsed).map_err(usage)?;
    let (label, inner) = match &branch {
        DegenerateSurface::Cone { surface } => ("cone", surface),
        DegenerateSurface::Plane { surface } => ("plane", surface),
        DegenerateSurface::Sphere { .. } => unreachable!("cone_or_plane never yields a sphere"),
    };
    let s = SlopeSurface::new(FRAC_PI_2, inner.curve().clone(), (u0, u1)).map_err(usage)?;
    let (v0, v1, nv) = v_grid(&s, v, nu)?;
    let mesh = sample_mesh(&s, (u0, u1), (v0, v1), nu, nv).map_err(|e| match e {
        MeshError::AllSingular => Failure::Check(e.to_string()),
        MeshError::BadGrid(_) => Failure::Usage(e.to_string()),
    })?;
    write_obj(&mesh, output).map_err(io_err)?;
    let report = verify_surface(&s, nu.min(32), nv.min(32), JetMode::Analytic);
    eprintln!("branch={label}");
    mesh_summary(&mesh, report.max_angle_dev);
    Ok(())
}
