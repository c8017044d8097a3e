//! Surface grid sampling and triangle mesh assembly.

use rayon::prelude::*;
use slope_core::slope_surface::SurfaceJet;
use slope_core::{SlopeSurface, Vec3};
use std::fmt;

#[derive(Debug)]
pub enum MeshError {
    /// Every quad touched a singular sample; nothing to emit.
    AllSingular,
    BadGrid(String),
}

impl fmt::Display for MeshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshError::AllSingular => write!(f, "all grid quads touch singular points"),
            MeshError::BadGrid(msg) => write!(f, "bad grid: {msg}"),
        }
    }
}

impl std::error::Error for MeshError {}

/// Triangle mesh over a parameter grid. `normals` parallels `vertices` and
/// carries the closed-form surface normal at each sample (not face
/// averages). Faces are 0-based and never reference a singular sample.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    pub faces: Vec<(usize, usize, usize)>,
    pub degenerate_skipped: usize,
}

/// Sample `s` over `nu x nv` rows: geometric spacing in `u` (so the spiral
/// phase advances uniformly per row), uniform in `v`. Each regular quad
/// becomes two triangles wound so face orientation agrees with the surface
/// normal; quads touching a singular sample are skipped and counted.
///
/// Rows are sampled in parallel but written back by index, so the result is
/// identical for every thread count.
pub fn sample_mesh(
    s: &SlopeSurface,
    u_range: (f64, f64),
    v_range: (f64, f64),
    nu: usize,
    nv: usize,
) -> Result<Mesh, MeshError> {
    if nu < 2 || nv < 2 {
        return Err(MeshError::BadGrid(format!("need nu, nv >= 2, got {nu}x{nv}")));
    }
    if u_range.0 <= 0.0 || u_range.1 <= u_range.0 || v_range.1 <= v_range.0 {
        return Err(MeshError::BadGrid(String::from("empty or invalid range")));
    }

    let jets: Vec<Option<SurfaceJet>> = (0..nu * nv)
        .into_par_iter()
        .map(|idx| {
            let i = idx / nv;
            let j = idx % nv;
            let u = u_range.0 * (u_range.1 / u_range.0).powf(i as f64 / (nu - 1) as f64);
            let v = v_range.0 + (v_range.1 - v_range.0) * j as f64 / (nv - 1) as f64;
            s.jet(u, v).ok().filter(|j| !j.singular)
        })
        .collect();

    // Every grid point gets a vertex (positions are finite even at singular
    // samples); faces only reference regular ones.
    let mut vertices = Vec::with_capacity(nu * nv);
    let mut normals = Vec::with_capacity(nu * nv);
    for (idx, jet) in jets.iter().enumerate() {
        match jet {
            Some(j) => {
                vertices.push(j.r);
                normals.push(j.normal);
            }
            None => {
                let i = idx / nv;
                let j = idx % nv;
                let u = u_range.0 * (u_range.1 / u_range.0).powf(i as f64 / (nu - 1) as f64);
                let v = v_range.0 + (v_range.1 - v_range.0) * j as f64 / (nv - 1) as f64;
                vertices.push(s.position_unchecked(u, v));
                normals.push(Vec3::new(0.0, 0.0, 1.0));
            }
        }
    }

    let mut faces = Vec::new();
    let mut skipped = 0usize;
    for i in 0..nu - 1 {
        for j in 0..nv - 1 {
            let a = i * nv + j;
            let b = (i + 1) * nv + j;
            let c = (i + 1) * nv + j + 1;
            let d = i * nv + j + 1;
            if [a, b, c, d].iter().any(|&k| jets[k].is_none()) {
                skipped += 1;
                continue;
            }
            let n = normals[a];
            faces.push(orient((a, b, c), &vertices, n));
            faces.push(orient((a, c, d), &vertices, n));
        }
    }

    if faces.is_empty() {
        return Err(MeshError::AllSingular);
    }
    Ok(Mesh {
        vertices,
        normals,
        faces,
        degenerate_skipped: skipped,
    })
}

fn orient(
    (a, b, c): (usize, usize, usize),
    vertices: &[Vec3],
    normal: Vec3,
) -> (usize, usize, usize) {
    let face_n = (vertices[b] - vertices[a]).cross(vertices[c] - vertices[a]);
    if face_n.dot(normal) < 0.0 {
        (a, c, b)
    } else {
        (a, b, c)
    }
}
