//! ASCII OFF mesh ingestion: closed triangulated surfaces with outward
//! orientation (signed volume > 0; inverted input is flipped with a warning).

use std::collections::HashMap;
use std::path::Path;

use nalgebra::Vector3;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct TriMesh {
    pub vertices: Vec<Vector3<f64>>,
    pub triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    /// Signed volume via the divergence theorem; positive for outward
    /// orientation.
    pub fn signed_volume(&self) -> f64 {
        let mut v = 0.0;
        for t in &self.triangles {
            let (a, b, c) = (
                self.vertices[t[0]],
                self.vertices[t[1]],
                self.vertices[t[2]],
            );
            v += a.dot(&b.cross(&c)) / 6.0;
        }
        v
    }

    pub fn aabb(&self) -> (Vector3<f64>, Vector3<f64>) {
        let mut lo = Vector3::repeat(f64::INFINITY);
        let mut hi = Vector3::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Every edge must be shared by exactly two triangles with opposite
    /// orientation for the surface to be closed and consistently oriented.
    pub fn check_closed(&self) -> Result<()> {
        let mut edges: HashMap<(usize, usize), i64> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                let dir = if a < b { 1 } else { -1 };
                *edges.entry(key).or_insert(0) += dir;
            }
        }
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                *counts.entry(key).or_insert(0) += 1;
            }
        }
        for (edge, n) in &counts {
            if *n != 2 {
                return Err(Error::Mesh(format!(
                    "edge {edge:?} used by {n} faces; surface not closed"
                )));
            }
        }
        for (edge, imbalance) in &edges {
            if *imbalance != 0 {
                return Err(Error::Mesh(format!(
                    "edge {edge:?} orientation imbalance {imbalance}"
                )));
            }
        }
        Ok(())
    }
}

/// Parses an ASCII OFF file ("OFF\n V F E\n" header, polygon faces
/// fan-triangulated). Checks closedness and fixes inverted orientation.
pub fn load_off(path: &Path) -> Result<TriMesh> {
    let text = std::fs::read_to_string(path)?;
    parse_off(&text)
}

pub fn parse_off(text: &str) -> Result<TriMesh> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .peekable();

    match tokens.next() {
        Some("OFF") => {}
        other => {
            return Err(Error::Mesh(format!(
                "expected OFF header, found {other:?}"
            )))
        }
    }
    let mut next_usize = |what: &str, tokens: &mut dyn Iterator<Item = &str>| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| Error::Mesh(format!("truncated file at {what}")))?
            .parse::<usize>()
            .map_err(|e| Error::Mesh(format!("bad {what}: {e}")))
    };
    let nv = next_usize("vertex count", &mut tokens)?;
    let nf = next_usize("face count", &mut tokens)?;
    let _ne = next_usize("edge count", &mut tokens)?;

    let mut vertices = Vec::with_capacity(nv);
    for i in 0..nv {
        let mut coords = [0.0f64; 3];
        for c in &mut coords {
            *c = tokens
                .next()
                .ok_or_else(|| Error::Mesh(format!("truncated vertex {i}")))?
                .parse::<f64>()
                .map_err(|e| Error::Mesh(format!("bad vertex {i}: {e}")))?;
        }
        vertices.push(Vector3::new(coords[0], coords[1], coords[2]));
    }

    let mut triangles = Vec::with_capacity(nf);
    for i in 0..nf {
        let k = next_usize(&format!("face {i} arity"), &mut tokens)?;
        if k < 3 {
            return Err(Error::Mesh(format!("face {i} has {k} vertices")));
        }
        let mut idx = Vec::with_capacity(k);
        for _ in 0..k {
            let v = next_usize(&format!("face {i} index"), &mut tokens)?;
            if v >= nv {
                return Err(Error::Mesh(format!(
                    "face {i} references vertex {v} >= {nv}"
                )));
            }
            idx.push(v);
        }
        for j in 1..(k - 1) {
            triangles.push([idx[0], idx[j], idx[j + 1]]);
        }
    }

    let mut mesh = TriMesh {
        vertices,
        triangles,
    };
    mesh.check_closed()?;
    if mesh.signed_volume() < 0.0 {
        eprintln!("warning: mesh orientation inverted (signed volume < 0); flipping faces");
        for t in &mut mesh.triangles {
            t.swap(1, 2);
        }
    }
    if mesh.signed_volume() <= 0.0 {
        return Err(Error::Mesh("mesh volume not positive after orientation fix".into()));
    }
    Ok(mesh)
}

/// Writes a TriMesh as ASCII OFF (used by tests and examples).
pub fn write_off(mesh: &TriMesh) -> String {
    let mut s = String::from("OFF\n");
    s.push_str(&format!(
        "{} {} 0\n",
        mesh.vertices.len(),
        mesh.triangles.len()
    ));
    for v in &mesh.vertices {
        s.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
    }
    for t in &mesh.triangles {
        s.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    s
}

/// An icosphere mesh (unit radius) for tests: `level` midpoint subdivisions.
pub fn icosphere_mesh(level: u32) -> TriMesh {
    use super::sphere_grid::{triangulated_sphere, SphereBase};
    let tris = triangulated_sphere(SphereBase::Icosahedral, level);
    let mut vertices: Vec<Vector3<f64>> = Vec::new();
    let mut triangles = Vec::new();
    let mut find = |v: Vector3<f64>, vertices: &mut Vec<Vector3<f64>>| -> usize {
        for (i, w) in vertices.iter().enumerate() {
            if (w - v).norm() < 1e-12 {
                return i;
            }
        }
        vertices.push(v);
        vertices.len() - 1
    };
    for t in &tris {
        let a = find(t[0], &mut vertices);
        let b = find(t[1], &mut vertices);
        let c = find(t[2], &mut vertices);
        triangles.push([a, b, c]);
    }
    TriMesh {
        vertices,
        triangles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn parse_tetrahedron() {
        let off = "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";
        let mesh = parse_off(off).unwrap();
        assert_eq!(mesh.vertices.len(), 4);
        assert_eq!(mesh.triangles.len(), 4);
        assert!((mesh.signed_volume() - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn inverted_orientation_fixed() {
        // Same tetrahedron with all faces reversed.
        let off = "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";
        let mesh = parse_off(off).unwrap();
        assert!(mesh.signed_volume() > 0.0);
    }

    #[test]
    fn open_mesh_rejected() {
        let off = "OFF\n4 3 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n";
        assert!(parse_off(off).is_err());
    }

    #[test]
    fn malformed_rejected() {
        assert!(parse_off("not off").is_err());
        assert!(parse_off("OFF\n4 4").is_err());
        assert!(parse_off("OFF\n1 1 0\n0 0 0\n3 0 0 5\n").is_err());
    }

    #[test]
    fn icosphere_volume_near_ball() {
        let mesh = icosphere_mesh(3);
        let v = mesh.signed_volume();
        let exact = 4.0 * PI / 3.0;
        assert!((v - exact).abs() / exact < 0.01, "volume {v} vs {exact}");
        mesh.check_closed().unwrap();
    }
}
