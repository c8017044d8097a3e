//! Closed-form symmetric eigensolvers.

use super::{Vec2, Vec3};

#[cfg(not(feature = "std"))]
use crate::float::FloatExt;

/// Symmetric 2x2 matrix; hosts the shape-operator matrix in an orthonormal
/// tangent basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl Sym2 {
    pub const fn new(a11: f64, a12: f64, a22: f64) -> Sym2 {
        Sym2 { a11, a12, a22 }
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.a11 * v.x + self.a12 * v.y,
            self.a12 * v.x + self.a22 * v.y,
        )
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }
}

/// Eigendecomposition of a symmetric 2x2 matrix.
///
/// Returns `(l1, l2, v1, v2)` with `l1 <= l2` and `v1, v2` orthonormal.
pub fn eig_sym2(m: Sym2) -> (f64, f64, Vec2, Vec2) {
    let mean = 0.5 * (m.a11 + m.a22);
    let half_diff = 0.5 * (m.a11 - m.a22);
    let disc = half_diff.hypot(m.a12);
    let l1 = mean - disc;
    let l2 = mean + disc;

    if disc == 0.0 {
        // Multiple of the identity; any orthonormal pair works.
        return (l1, l2, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0));
    }

    // Eigenvector for l2 from whichever row gives the better-conditioned
    // expression, then rotate by 90 degrees for the other.
    let c1 = Vec2::new(m.a12, l2 - m.a11);
    let c2 = Vec2::new(l2 - m.a22, m.a12);
    let v2 = if c1.norm() >= c2.norm() { c1 } else { c2 };
    let n = v2.norm();
    let v2 = Vec2::new(v2.x / n, v2.y / n);
    let v1 = Vec2::new(-v2.y, v2.x);
    (l1, l2, v1, v2)
}

/// Symmetric 3x3 matrix, row-major upper triangle.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Sym3 {
    pub a11: f64,
    pub a12: f64,
    pub a13: f64,
    pub a22: f64,
    pub a23: f64,
    pub a33: f64,
}

impl Sym3 {
    fn apply(&self, v: Vec3) -> Vec3 {
        Vec3::new(
            self.a11 * v.x + self.a12 * v.y + self.a13 * v.z,
            self.a12 * v.x + self.a22 * v.y + self.a23 * v.z,
            self.a13 * v.x + self.a23 * v.y + self.a33 * v.z,
        )
    }
}

/// Unit eigenvector for the smallest eigenvalue of a symmetric 3x3 matrix.
///
/// Eigenvalues come from the trigonometric closed form; the eigenvector is the
/// largest cross product of rows of `m - l_min I`, with an `eig_sym2`
/// deflation fallback when all row crosses degenerate (near-double eigenvalue).
pub(crate) fn smallest_eigvec_sym3(m: Sym3) -> Vec3 {
    let l = smallest_eigenvalue(m);
    let r1 = Vec3::new(m.a11 - l, m.a12, m.a13);
    let r2 = Vec3::new(m.a12, m.a22 - l, m.a23);
    let r3 = Vec3::new(m.a13, m.a23, m.a33 - l);
    let candidates = [r1.cross(r2), r1.cross(r3), r2.cross(r3)];
    let best = candidates
        .iter()
        .copied()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
        .unwrap();
    if let Some(v) = best.normalized() {
        let scale = m.a11.abs() + m.a22.abs() + m.a33.abs() + 1e-300;
        if (m.apply(v) - l * v).norm() <= 1e-6 * scale {
            return v;
        }
    }
    // Deflate: the eigenspace is (near-)degenerate in the plane orthogonal to
    // the remaining simple eigenvector; project onto a coordinate plane and
    // reuse the 2x2 solver.
    deflate_fallback(m)
}

fn smallest_eigenvalue(m: Sym3) -> f64 {
    let p1 = m.a12 * m.a12 + m.a13 * m.a13 + m.a23 * m.a23;
    let q = (m.a11 + m.a22 + m.a33) / 3.0;
    let p2 = (m.a11 - q).powi(2) + (m.a22 - q).powi(2) + (m.a33 - q).powi(2) + 2.0 * p1;
    if p2 <= 0.0 {
        return q;
    }
    let p = (p2 / 6.0).sqrt();
    let b = Sym3 {
        a11: (m.a11 - q) / p,
        a12: m.a12 / p,
        a13: m.a13 / p,
        a22: (m.a22 - q) / p,
        a23: m.a23 / p,
        a33: (m.a33 - q) / p,
    };
    let det_b = b.a11 * (b.a22 * b.a33 - b.a23 * b.a23)
        - b.a12 * (b.a12 * b.a33 - b.a23 * b.a13)
        + b.a13 * (b.a12 * b.a23 - b.a22 * b.a13);
    let r = (det_b / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    // Smallest root of the depressed characteristic polynomial.
    q + 2.0 * p * (phi + 2.0 * core::f64::consts::FRAC_PI_3).cos()
}

fn deflate_fallback(m: Sym3) -> Vec3 {
    // Use the xy block; adequate for the near-isotropic cases that reach here.
    let (_, _, v1, _) = eig_sym2(Sym2::new(m.a11, m.a12, m.a22));
    Vec3::new(v1.x, v1.y, 0.0)
}
