//! End-to-end acceptance suite: one test per release criterion, each
//! printing a single `[acceptance] criterion NN <name>: pass|fail` line.
//!
//! Criteria cover the four gallery configurations — (theta=pi/5, great
//! circle), (theta=pi/15, figure-eight), (theta=pi/4, sphere spiral),
//! (theta=pi/2, cone circle) — plus the degenerate branches, the planar
//! spiral toolkit, and output determinism.

use slope_core::diffgeo::{
    curvature, estimate_lambda_sign, principal_curvature_along_ru, verify_connection,
    verify_lambda, verify_surface, JetMode,
};
use slope_core::slope_surface::DegenerateSurface;
use slope_core::sphere_curves::{BuiltinCurve, SphereCurve};
use slope_core::spiral_toolkit::{
    conchospiral_on_cone, equiangular_check, helix_check, log_spiral, loxodrome,
    loxodrome_meridian_check, stereographic_trace, PlanarCurveTrace, SpaceCurveTrace,
};
use slope_core::{SlopeSurface, Vec3};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::Command;

/// Samples closer than this to the `cos(xi + Q) = 0` set are treated as
/// singular for structure-dependent checks.
const REGULAR_MARGIN: f64 = 1e-2;

fn verdict(name: &str, ok: bool, detail: &str) {
    println!(
        "[acceptance] {name}: {} ({detail})",
        if ok { "pass" } else { "fail" }
    );
    assert!(ok, "{name} failed: {detail}");
}

fn configs() -> Vec<(&'static str, SlopeSurface)> {
    let mk = |theta: f64, c: BuiltinCurve| {
        let curve = SphereCurve::builtin(c).unwrap().into_unit_speed().unwrap();
        SlopeSurface::with_default_domain(theta, curve).unwrap()
    };
    vec![
        ("circle/pi5", mk(PI / 5.0, BuiltinCurve::GreatCircle)),
        ("figure8/pi15", mk(PI / 15.0, BuiltinCurve::Figure8)),
        (
            "spiral/pi4",
            mk(FRAC_PI_4, BuiltinCurve::SphereSpiral { v0: 0.1 }),
        ),
        ("cone/pi2", mk(FRAC_PI_2, BuiltinCurve::ConeCircle)),
    ]
}

/// Deterministic splitmix64 stream mapped to [0, 1).
struct Rng(u64);

impl Rng {
    fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Random point in the parameter box, log-uniform in `u`.
fn random_point(s: &SlopeSurface, rng: &mut Rng) -> (f64, f64) {
    let (u0, u1) = s.u_domain();
    let (v0, v1) = s.v_domain();
    let u = u0 * (u1 / u0).powf(rng.next_f64());
    let v = v0 + (v1 - v0) * rng.next_f64();
    (u, v)
}

fn is_regular(s: &SlopeSurface, u: f64, v: f64) -> bool {
    match (s.jet(u, v), s.curve().jet(v)) {
        (Ok(jet), Ok(cj)) => {
            !jet.singular && (jet.xi + cj.kappa_g.atan()).cos().abs() > REGULAR_MARGIN
        }
        _ => false,
    }
}

/// Draw `n` regular random samples, bailing out if the acceptance rate is
/// pathologically low.
fn regular_samples(s: &SlopeSurface, n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = Rng(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..50 * n {
        if out.len() == n {
            break;
        }
        let (u, v) = random_point(s, &mut rng);
        if is_regular(s, u, v) {
            out.push((u, v));
        }
    }
    assert_eq!(out.len(), n, "could not draw {n} regular samples");
    out
}

#[test]
fn criterion_01_constant_angle() {
    let mut worst_analytic: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for (_, s) in configs() {
        worst_analytic =
            worst_analytic.max(verify_surface(&s, 64, 64, JetMode::Analytic).max_angle_dev);
        worst_oracle = worst_oracle.max(verify_surface(&s, 64, 64, JetMode::Oracle).max_angle_dev);
    }
    verdict(
        "criterion 01 constant-angle",
        worst_analytic <= 1e-9 && worst_oracle <= 1e-6,
        &format!("max dev analytic {worst_analytic:.3e}, oracle {worst_oracle:.3e}"),
    );
}

#[test]
fn criterion_02_norm_identity() {
    let mut worst: f64 = 0.0;
    for (_, s) in configs() {
        worst = worst.max(verify_surface(&s, 64, 64, JetMode::Analytic).max_norm_dev);
    }
    verdict(
        "criterion 02 norm-identity",
        worst <= 1e-9,
        &format!("max | |r| - u sin(theta) | = {worst:.3e}"),
    );
}

#[test]
fn criterion_03_characterizing_ode() {
    let mut worst_analytic: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for (_, s) in configs() {
        worst_analytic =
            worst_analytic.max(verify_surface(&s, 64, 64, JetMode::Analytic).max_ode_residual);
        worst_oracle =
            worst_oracle.max(verify_surface(&s, 64, 64, JetMode::Oracle).max_ode_residual);
    }
    verdict(
        "criterion 03 characterizing-ode",
        worst_analytic <= 1e-8 && worst_oracle <= 1e-5,
        &format!("max residual analytic {worst_analytic:.3e}, oracle {worst_oracle:.3e}"),
    );
}

#[test]
fn criterion_04_principal_curvature_along_ru() {
    let mut worst_val: f64 = 0.0;
    let mut worst_ang: f64 = 0.0;
    for (i, (_, s)) in configs().into_iter().enumerate() {
        let theta = s.theta();
        for (u, v) in regular_samples(&s, 500, 0xC4 + i as u64) {
            let data = curvature(&s, u, v).unwrap();
            let jet = s.jet(u, v).unwrap();
            let (k, angle) = principal_curvature_along_ru(&data, jet.r_u);
            let expected = -theta.cos() / (u * theta.sin());
            worst_val = worst_val.max((k - expected).abs());
            // Eigenvector direction is only well defined away from umbilics.
            if !data.umbilic && (data.k1 - data.k2).abs() > 1e-3 {
                worst_ang = worst_ang.max(angle);
            }
        }
    }
    verdict(
        "criterion 04 principal-curvature",
        worst_val <= 1e-6 && worst_ang <= 1e-4,
        &format!("max eigenvalue dev {worst_val:.3e}, max direction angle {worst_ang:.3e} rad"),
    );
}

#[test]
fn criterion_05_second_eigenvalue_closed_form() {
    let mut worst: f64 = 0.0;
    for (i, (_, s)) in configs().into_iter().enumerate() {
        let sign = estimate_lambda_sign(&s);
        for (u, v) in regular_samples(&s, 200, 0x1A + i as u64) {
            let check = verify_lambda(&s, u, v, sign).unwrap();
            worst = worst.max(check.dev / (1.0 + check.closed.abs()));
        }
    }
    verdict(
        "criterion 05 second-eigenvalue",
        worst <= 1e-5,
        &format!("max relative dev {worst:.3e}"),
    );
}

#[test]
fn criterion_06_connection_coefficients() {
    let curve = SphereCurve::builtin(BuiltinCurve::GreatCircle).unwrap();
    let s = SlopeSurface::with_default_domain(PI / 5.0, curve).unwrap();
    let sign = estimate_lambda_sign(&s);
    let mut worst: f64 = 0.0;
    for (u, v) in regular_samples(&s, 100, 0x6) {
        worst = worst.max(verify_connection(&s, u, v, sign).unwrap());
    }
    verdict(
        "criterion 06 connection-coefficients",
        worst <= 1e-4,
        &format!("max identity dev {worst:.3e}"),
    );
}

#[test]
fn criterion_07_degenerate_branches() {
    // Sphere branch: normal parallel to position everywhere.
    let sphere = DegenerateSurface::sphere(2.0).unwrap();
    let (su0, su1) = sphere.u_domain();
    let (sv0, sv1) = sphere.v_domain();
    let mut worst_sphere: f64 = 0.0;
    for i in 0..32 {
        for j in 0..32 {
            let u = su0 + (su1 - su0) * i as f64 / 31.0;
            let v = sv0 + (sv1 - sv0) * j as f64 / 31.0;
            worst_sphere = worst_sphere.max(sphere.angle_with_position(u, v).unwrap());
        }
    }

    // theta = pi/2 over a small circle: flat cone. Over a great circle:
    // flat and minimal plane.
    let flat_extremes = |curve: BuiltinCurve, want_plane: bool| -> (f64, f64) {
        let deg =
            DegenerateSurface::cone_or_plane(SphereCurve::builtin(curve).unwrap()).unwrap();
        let s = match (&deg, want_plane) {
            (DegenerateSurface::Plane { surface }, true) => surface.clone(),
            (DegenerateSurface::Cone { surface }, false) => surface.clone(),
            _ => panic!("unexpected degenerate classification: {deg:?}"),
        };
        let (u0, u1) = s.u_domain();
        let (v0, v1) = s.v_domain();
        let (mut max_k, mut max_h): (f64, f64) = (0.0, 0.0);
        for i in 0..24 {
            for j in 0..24 {
                // Cell midpoints: endpoint rounding must not step outside
                // the reparametrized curve domain.
                let u = u0 * (u1 / u0).powf((i as f64 + 0.5) / 24.0);
                let v = v0 + (v1 - v0) * (j as f64 + 0.5) / 24.0;
                let data = curvature(&s, u, v).unwrap();
                max_k = max_k.max(data.gaussian.abs());
                max_h = max_h.max(data.mean.abs());
            }
        }
        (max_k, max_h)
    };
    let (cone_k, _) = flat_extremes(BuiltinCurve::ConeCircle, false);
    let (plane_k, plane_h) = flat_extremes(BuiltinCurve::GreatCircle, true);

    verdict(
        "criterion 07 degenerate-branches",
        worst_sphere <= 1e-9 && cone_k <= 1e-7 && plane_k <= 1e-7 && plane_h <= 1e-7,
        &format!(
            "sphere angle {worst_sphere:.3e}, cone K {cone_k:.3e}, plane K {plane_k:.3e} H {plane_h:.3e}"
        ),
    );
}

#[test]
fn criterion_08_spiral_toolkit() {
    // Equiangular property of the log spiral at several pitches.
    let mut worst_spiral: f64 = 0.0;
    for theta in [PI / 3.0, PI / 5.0, 1.1] {
        let tr = log_spiral(1.0, theta, (0.0, 4.0 * PI), 4000).unwrap();
        let (mean, _) = equiangular_check(&tr).unwrap();
        worst_spiral = worst_spiral.max((mean - theta).abs());
    }

    let lox = loxodrome(FRAC_PI_4, 1, (-3.0 * PI, 3.0 * PI), 6000).unwrap();
    let meridian_dev = loxodrome_meridian_check(&lox, FRAC_PI_4).unwrap();

    // Pole projection of the pi/4 loxodrome is again equiangular at pi/4.
    let lox_half = loxodrome(FRAC_PI_4, 1, (0.0, 3.0 * PI), 6000).unwrap();
    let flat = stereographic_trace(&lox_half).unwrap();
    let (proj_mean, _) = equiangular_check(&flat).unwrap();
    let proj_dev = (proj_mean - FRAC_PI_4).abs();

    let mut worst_helix: f64 = 0.0;
    for (a, b) in [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)] {
        let trace = SpaceCurveTrace {
            samples: (0..4000)
                .map(|i| {
                    let t = 4.0 * PI * i as f64 / 3999.0;
                    (t, Vec3::new(a * t.cos(), a * t.sin(), b * t))
                })
                .collect(),
            meta: String::from("circular-helix"),
        };
        let check = helix_check(&trace).unwrap();
        let expect = a / b;
        worst_helix = worst_helix.max((check.kappa_over_tau_mean - expect).abs() / expect);
    }

    verdict(
        "criterion 08 spiral-toolkit",
        worst_spiral <= 1e-6 && meridian_dev <= 1e-6 && proj_dev <= 1e-4 && worst_helix <= 1e-5,
        &format!(
            "spiral mean dev {worst_spiral:.3e}, meridian dev {meridian_dev:.3e}, projection dev {proj_dev:.3e}, helix ratio dev {worst_helix:.3e}"
        ),
    );
}

#[test]
fn criterion_09_u_line_planar_spiral() {
    let curve = SphereCurve::builtin(BuiltinCurve::GreatCircle).unwrap();
    let s = SlopeSurface::new(PI / 5.0, curve, (0.05, 10.0)).unwrap();
    let tr = conchospiral_on_cone(&s, 0.0, (0.1, 8.0), 3000).unwrap();
    let max_y = tr
        .samples
        .iter()
        .fold(0.0f64, |m, &(_, p)| m.max(p.y.abs()));
    let planar = PlanarCurveTrace {
        samples: tr.samples.iter().map(|&(t, p)| (t, p.x, p.z)).collect(),
        meta: String::from("u-line v=0 in the xz-plane"),
    };
    let (mean, max_dev) = equiangular_check(&planar).unwrap();
    let expect = FRAC_PI_2 - s.theta();
    verdict(
        "criterion 09 u-line-spiral",
        max_y <= 1e-12 && (mean - expect).abs() <= 1e-6 && max_dev <= 1e-4,
        &format!(
            "max |y| {max_y:.3e}, angle mean dev {:.3e}, spread {max_dev:.3e}",
            (mean - expect).abs()
        ),
    );
}

#[test]
fn criterion_10_oracle_and_determinism() {
    // Analytic partials and normal against their finite-difference oracles.
    let mut worst: f64 = 0.0;
    for (_, s) in configs() {
        let (u0, u1) = s.u_domain();
        let (v0, v1) = s.v_domain();
        for i in 0..32 {
            for j in 0..32 {
                let u = u0 * (u1 / u0).powf(i as f64 / 31.0);
                let v = v0 + (v1 - v0) * j as f64 / 31.0;
                if !is_regular(&s, u, v) {
                    continue;
                }
                let a = s.jet(u, v).unwrap();
                let o = s.jet_fd(u, v).unwrap();
                for (x, y) in [(a.r_u, o.r_u), (a.r_v, o.r_v), (a.normal, o.normal)] {
                    worst = worst
                        .max((x.x - y.x).abs())
                        .max((x.y - y.y).abs())
                        .max((x.z - y.z).abs());
                }
            }
        }
    }

    // Byte-identical OBJ output across repeated runs and thread counts.
    let dir = tempfile::tempdir().unwrap();
    let render = |name: &str, threads: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_slope"))
            .args([
                "--threads", threads, "surface", "--theta", "pi/5", "--curve", "circle", "--u",
                "0.1:4:80", "--v", "0:6.2832:80", "-o",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(&path).unwrap()
    };
    let first = render("a.obj", "1");
    let repeat = render("b.obj", "1");
    let threaded = render("c.obj", "4");
    let deterministic = first == repeat && first == threaded;

    verdict(
        "criterion 10 oracle-and-determinism",
        worst <= 1e-6 && deterministic,
        &format!("max componentwise dev {worst:.3e}, byte-identical OBJ: {deterministic}"),
    );
}
