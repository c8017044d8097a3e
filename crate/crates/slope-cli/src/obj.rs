//! Wavefront OBJ writer.

use crate::mesh::Mesh;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Serialize a mesh as OBJ text: `v` lines, `vn` lines, then `f a//a b//b
/// c//c` with 1-based indices. Floats print with 17 significant digits and
/// LF endings, so identical meshes produce byte-identical files.
///
/// Refuses an empty mesh and creates no file in that case.
pub fn write_obj(mesh: &Mesh, path: &Path) -> io::Result<()> {
    if mesh.faces.is_empty() || mesh.vertices.is_empty() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "refusing to write an empty mesh",
        ));
    }
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    write_obj_to(mesh, &mut w)?;
    w.flush()
}

pub fn write_obj_to(mesh: &Mesh, w: &mut impl Write) -> io::Result<()> {
    for v in &mesh.vertices {
        writeln!(w, "v {:.16e} {:.16e} {:.16e}", v.x, v.y, v.z)?;
    }
    for n in &mesh.normals {
        writeln!(w, "vn {:.16e} {:.16e} {:.16e}", n.x, n.y, n.z)?;
    }
    for &(a, b, c) in &mesh.faces {
        writeln!(
            w,
            "f {0}//{0} {1}//{1} {2}//{2}",
            a + 1,
            b + 1,
            c + 1
        )?;
    }
    Ok(())
}
