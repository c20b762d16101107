//! Shape descriptors with unit-volume normalization, surface and volume
//! quadrature rules, voxelization, and ray-domain intersections.

pub mod mesh;
pub mod quadrature;
pub mod sphere_grid;
pub mod voxel;

use std::path::PathBuf;
use std::sync::Arc;

use nalgebra::Vector3;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use mesh::TriMesh;

pub use quadrature::{SurfQuad, VolQuad};
pub use voxel::VoxelGrid;

#[derive(Debug, Clone)]
pub enum ShapeKind {
    Ball { r: f64 },
    Ellipsoid { a: f64, b: f64, c: f64 },
    Cuboid { lx: f64, ly: f64, lz: f64 },
    Superellipsoid { a: f64, b: f64, c: f64, p: f64 },
    Mesh { path: PathBuf, mesh: Arc<TriMesh> },
}

/// A geometric inclusion: a shape kind plus a uniform scale factor.
#[derive(Debug, Clone)]
pub struct Shape {
    pub kind: ShapeKind,
    pub scale: f64,
}

impl Shape {
    pub fn ball(r: f64) -> Result<Self> {
        if r <= 0.0 || !r.is_finite() {
            return Err(Error::DegenerateShape(format!("ball radius {r}")));
        }
        Ok(Shape {
            kind: ShapeKind::Ball { r },
            scale: 1.0,
        })
    }

    pub fn ellipsoid(a: f64, b: f64, c: f64) -> Result<Self> {
        if [a, b, c].iter().any(|v| *v <= 0.0 || !v.is_finite()) {
            return Err(Error::DegenerateShape(format!("ellipsoid axes {a},{b},{c}")));
        }
        Ok(Shape {
            kind: ShapeKind::Ellipsoid { a, b, c },
            scale: 1.0,
        })
    }

    pub fn cuboid(lx: f64, ly: f64, lz: f64) -> Result<Self> {
        if [lx, ly, lz].iter().any(|v| *v <= 0.0 || !v.is_finite()) {
            return Err(Error::DegenerateShape(format!("cuboid edges {lx},{ly},{lz}")));
        }
        Ok(Shape {
            kind: ShapeKind::Cuboid { lx, ly, lz },
            scale: 1.0,
        })
    }

    pub fn superellipsoid(a: f64, b: f64, c: f64, p: f64) -> Result<Self> {
        if [a, b, c].iter().any(|v| *v <= 0.0 || !v.is_finite()) || p < 1.0 || !p.is_finite() {
            return Err(Error::DegenerateShape(format!(
                "superellipsoid {a},{b},{c} exponent {p} (need p >= 1)"
            )));
        }
        Ok(Shape {
            kind: ShapeKind::Superellipsoid { a, b, c, p },
            scale: 1.0,
        })
    }

    pub fn from_mesh(path: PathBuf, mesh: TriMesh) -> Result<Self> {
        if mesh.signed_volume() <= 0.0 {
            return Err(Error::DegenerateShape("mesh volume not positive".into()));
        }
        Ok(Shape {
            kind: ShapeKind::Mesh {
                path,
                mesh: Arc::new(mesh),
            },
            scale: 1.0,
        })
    }

    pub fn load_mesh(path: &std::path::Path) -> Result<Self> {
        let mesh = mesh::load_off(path)?;
        Shape::from_mesh(path.to_path_buf(), mesh)
    }

    /// Parses the CLI shape grammar: `ball:r`, `ellipsoid:a,b,c`,
    /// `cuboid:lx,ly,lz`, `superellipsoid:a,b,c,p`, `mesh:path.off`.
    pub fn parse(text: &str) -> Result<Self> {
        let (head, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::ShapeGrammar(format!("missing ':' in {text:?}")))?;
        let nums = |n: usize| -> Result<Vec<f64>> {
            let vals: Vec<f64> = rest
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::ShapeGrammar(format!("{text:?}: {e}")))?;
            if vals.len() != n {
                return Err(Error::ShapeGrammar(format!(
                    "{head} expects {n} parameters, got {}",
                    vals.len()
                )));
            }
            Ok(vals)
        };
        match head {
            "ball" => {
                let v = nums(1)?;
                Shape::ball(v[0])
            }
            "ellipsoid" => {
                let v = nums(3)?;
                Shape::ellipsoid(v[0], v[1], v[2])
            }
            "cuboid" => {
                let v = nums(3)?;
                Shape::cuboid(v[0], v[1], v[2])
            }
            "superellipsoid" => {
                let v = nums(4)?;
                Shape::superellipsoid(v[0], v[1], v[2], v[3])
            }
            "mesh" => Shape::load_mesh(std::path::Path::new(rest)),
            other => Err(Error::ShapeGrammar(format!("unknown shape kind {other:?}"))),
        }
    }

    /// Grammar string for report echoes.
    pub fn describe(&self) -> String {
        let s = self.scale;
        match &self.kind {
            ShapeKind::Ball { r } => format!("ball:{}", r * s),
            ShapeKind::Ellipsoid { a, b, c } => format!("ellipsoid:{},{},{}", a * s, b * s, c * s),
            ShapeKind::Cuboid { lx, ly, lz } => {
                format!("cuboid:{},{},{}", lx * s, ly * s, lz * s)
            }
            ShapeKind::Superellipsoid { a, b, c, p } => {
                format!("superellipsoid:{},{},{},{}", a * s, b * s, c * s, p)
            }
            ShapeKind::Mesh { path, .. } => format!("mesh:{} (scale {})", path.display(), s),
        }
    }

    /// Whether the shape is a ball or an ellipsoid (the constant-strain class).
    pub fn is_ellipsoidal(&self) -> bool {
        matches!(
            self.kind,
            ShapeKind::Ball { .. } | ShapeKind::Ellipsoid { .. }
        )
    }

    /// Effective semi-axes (scale applied) for the analytic kinds.
    pub fn semi_axes(&self) -> Option<Vector3<f64>> {
        let s = self.scale;
        match self.kind {
            ShapeKind::Ball { r } => Some(Vector3::repeat(r * s)),
            ShapeKind::Ellipsoid { a, b, c } => Some(Vector3::new(a * s, b * s, c * s)),
            ShapeKind::Cuboid { lx, ly, lz } => {
                Some(Vector3::new(lx * s / 2.0, ly * s / 2.0, lz * s / 2.0))
            }
            ShapeKind::Superellipsoid { a, b, c, .. } => Some(Vector3::new(a * s, b * s, c * s)),
            ShapeKind::Mesh { .. } => None,
        }
    }

    pub fn volume(&self) -> f64 {
        let s3 = self.scale.powi(3);
        match &self.kind {
            ShapeKind::Ball { r } => 4.0 / 3.0 * std::f64::consts::PI * r.powi(3) * s3,
            ShapeKind::Ellipsoid { a, b, c } => 4.0 / 3.0 * std::f64::consts::PI * a * b * c * s3,
            ShapeKind::Cuboid { lx, ly, lz } => lx * ly * lz * s3,
            ShapeKind::Superellipsoid { a, b, c, p } => {
                let g1 = gamma(1.0 + 1.0 / p);
                let g3 = gamma(1.0 + 3.0 / p);
                8.0 * a * b * c * g1.powi(3) / g3 * s3
            }
            ShapeKind::Mesh { mesh, .. } => mesh.signed_volume() * s3,
        }
    }

    /// Uniformly rescaled copy with unit volume.
    pub fn normalize_volume(&self) -> Result<Shape> {
        let v = self.volume();
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::DegenerateShape(format!("volume {v}")));
        }
        let mut out = self.clone();
        out.scale *= v.powf(-1.0 / 3.0);
        Ok(out)
    }

    pub fn aabb(&self) -> (Vector3<f64>, Vector3<f64>) {
        match &self.kind {
            ShapeKind::Mesh { mesh, .. } => {
                let (lo, hi) = mesh.aabb();
                (lo * self.scale, hi * self.scale)
            }
            _ => {
                let h = self.semi_axes().expect("analytic kind");
                (-h, h)
            }
        }
    }

    pub fn diam(&self) -> f64 {
        match &self.kind {
            ShapeKind::Ball { r } => 2.0 * r * self.scale,
            ShapeKind::Ellipsoid { a, b, c } => 2.0 * a.max(*b).max(*c) * self.scale,
            ShapeKind::Cuboid { lx, ly, lz } => {
                (lx * lx + ly * ly + lz * lz).sqrt() * self.scale
            }
            _ => {
                let (lo, hi) = self.aabb();
                (hi - lo).norm()
            }
        }
    }

    /// Minkowski gauge: 1-homogeneous, < 1 inside, = 1 on the boundary.
    /// None for meshes.
    pub fn gauge(&self, x: &Vector3<f64>) -> Option<f64> {
        let h = self.semi_axes()?;
        match self.kind {
            ShapeKind::Ball { .. } | ShapeKind::Ellipsoid { .. } => {
                Some((0..3).map(|i| (x[i] / h[i]).powi(2)).sum::<f64>().sqrt())
            }
            ShapeKind::Cuboid { .. } => Some(
                (0..3)
                    .map(|i| (x[i] / h[i]).abs())
                    .fold(0.0f64, |m, v| m.max(v)),
            ),
            ShapeKind::Superellipsoid { p, .. } => Some(
                (0..3)
                    .map(|i| (x[i] / h[i]).abs().powf(p))
                    .sum::<f64>()
                    .powf(1.0 / p),
            ),
            ShapeKind::Mesh { .. } => None,
        }
    }

    pub fn inside(&self, x: &Vector3<f64>) -> bool {
        match &self.kind {
            ShapeKind::Mesh { mesh, .. } => {
                let y = x / self.scale;
                // ray parity along an irrational direction
                let dir = Vector3::new(0.5377, 0.3576, 0.7642).normalize();
                let mut hits = 0usize;
                for t in &mesh.triangles {
                    if ray_triangle(
                        &y,
                        &dir,
                        &mesh.vertices[t[0]],
                        &mesh.vertices[t[1]],
                        &mesh.vertices[t[2]],
                    )
                    .is_some()
                    {
                        hits += 1;
                    }
                }
                hits % 2 == 1
            }
            _ => self.gauge(x).map(|g| g <= 1.0).unwrap_or(false),
        }
    }

    /// Radius of a ball around the origin contained in the shape
    /// (conservative; used for gauge-based distance bounds).
    pub fn inscribed_radius(&self) -> f64 {
        match &self.kind {
            ShapeKind::Superellipsoid { .. } => {
                // minimum boundary distance over a direction sample
                let (dirs, _) = sphere_grid::sphere_rule(sphere_grid::SphereBase::Octahedral, 2);
                dirs.iter()
                    .map(|u| self.ray_exit_from_origin(u))
                    .fold(f64::INFINITY, f64::min)
                    * 0.999
            }
            ShapeKind::Mesh { mesh, .. } => {
                let origin = Vector3::zeros();
                mesh.triangles
                    .iter()
                    .map(|t| {
                        point_triangle_distance(
                            &origin,
                            &(mesh.vertices[t[0]] * self.scale),
                            &(mesh.vertices[t[1]] * self.scale),
                            &(mesh.vertices[t[2]] * self.scale),
                        )
                    })
                    .fold(f64::INFINITY, f64::min)
            }
            _ => {
                let h = self.semi_axes().expect("analytic");
                h[0].min(h[1]).min(h[2])
            }
        }
    }

    fn ray_exit_from_origin(&self, u: &Vector3<f64>) -> f64 {
        self.ray_intervals(&Vector3::zeros(), u)
            .first()
            .map(|(_, t1)| *t1)
            .unwrap_or(0.0)
    }

    /// Lower bound on the distance from an interior point to the boundary.
    /// Exact for balls and cuboids, gauge-based for the other analytic
    /// kinds, point-to-triangle for meshes.
    pub fn interior_distance(&self, x: &Vector3<f64>) -> f64 {
        match &self.kind {
            ShapeKind::Ball { r } => (r * self.scale - x.norm()).max(0.0),
            ShapeKind::Cuboid { .. } => {
                let h = self.semi_axes().unwrap();
                (0..3)
                    .map(|i| h[i] - x[i].abs())
                    .fold(f64::INFINITY, f64::min)
                    .max(0.0)
            }
            ShapeKind::Mesh { mesh, .. } => {
                if !self.inside(x) {
                    return 0.0;
                }
                mesh.triangles
                    .iter()
                    .map(|t| {
                        point_triangle_distance(
                            x,
                            &(mesh.vertices[t[0]] * self.scale),
                            &(mesh.vertices[t[1]] * self.scale),
                            &(mesh.vertices[t[2]] * self.scale),
                        )
                    })
                    .fold(f64::INFINITY, f64::min)
            }
            _ => {
                let g = self.gauge(x).unwrap();
                ((1.0 - g) * self.inscribed_radius()).max(0.0)
            }
        }
    }

    /// Intersections of the ray x + t u (t >= 0) with the interior:
    /// disjoint intervals in increasing order. For interior x the first
    /// interval starts at 0.
    pub fn ray_intervals(&self, x: &Vector3<f64>, u: &Vector3<f64>) -> Vec<(f64, f64)> {
        match &self.kind {
            ShapeKind::Ball { .. } | ShapeKind::Ellipsoid { .. } => {
                let h = self.semi_axes().unwrap();
                let xp = Vector3::new(x[0] / h[0], x[1] / h[1], x[2] / h[2]);
                let up = Vector3::new(u[0] / h[0], u[1] / h[1], u[2] / h[2]);
                let a = up.norm_squared();
                let b = 2.0 * xp.dot(&up);
                let c = xp.norm_squared() - 1.0;
                let disc = b * b - 4.0 * a * c;
                if disc <= 0.0 || a == 0.0 {
                    return vec![];
                }
                let sq = disc.sqrt();
                let t0 = (-b - sq) / (2.0 * a);
                let t1 = (-b + sq) / (2.0 * a);
                clip_interval(t0, t1)
            }
            ShapeKind::Cuboid { .. } => {
                let h = self.semi_axes().unwrap();
                let mut lo = f64::NEG_INFINITY;
                let mut hi = f64::INFINITY;
                for i in 0..3 {
                    if u[i].abs() < 1e-300 {
                        if x[i].abs() > h[i] {
                            return vec![];
                        }
                    } else {
                        let t0 = (-h[i] - x[i]) / u[i];
                        let t1 = (h[i] - x[i]) / u[i];
                        lo = lo.max(t0.min(t1));
                        hi = hi.min(t0.max(t1));
                    }
                }
                if lo >= hi {
                    return vec![];
                }
                clip_interval(lo, hi)
            }
            ShapeKind::Superellipsoid { .. } => {
                let g = |t: f64| self.gauge(&(x + u * t)).unwrap() - 1.0;
                // bounding sphere limits the search window
                let rmax = {
                    let h = self.semi_axes().unwrap();
                    h[0].max(h[1]).max(h[2])
                };
                let reach = x.norm() + rmax + 1.0;
                let g0 = g(0.0);
                if g0 < 0.0 {
                    // interior: single exit by convexity
                    let t1 = bisect_root(&g, 0.0, reach);
                    return vec![(0.0, t1)];
                }
                // exterior: minimize the convex gauge along the ray
                let (mut a, mut b) = (0.0, reach);
                for _ in 0..200 {
                    let m1 = a + (b - a) / 3.0;
                    let m2 = b - (b - a) / 3.0;
                    if g(m1) < g(m2) {
                        b = m2;
                    } else {
                        a = m1;
                    }
                }
                let tm = 0.5 * (a + b);
                if g(tm) >= 0.0 {
                    return vec![];
                }
                let t0 = bisect_root(&|t| -g(t), tm, 0.0).min(tm);
                let t1 = bisect_root(&g, tm, reach);
                clip_interval(t0.min(t1), t1.max(t0))
            }
            ShapeKind::Mesh { mesh, .. } => {
                let y = x / self.scale;
                let mut ts: Vec<f64> = Vec::new();
                for t in &mesh.triangles {
                    if let Some(tt) = ray_triangle(
                        &y,
                        u,
                        &mesh.vertices[t[0]],
                        &mesh.vertices[t[1]],
                        &mesh.vertices[t[2]],
                    ) {
                        ts.push(tt * self.scale);
                    }
                }
                ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                ts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
                let inside = self.inside(x);
                let mut intervals = Vec::new();
                let mut iter = ts.into_iter();
                if inside {
                    if let Some(t1) = iter.next() {
                        intervals.push((0.0, t1));
                    }
                }
                while let (Some(a), Some(b)) = (iter.next(), iter.next()) {
                    intervals.push((a, b));
                }
                intervals
            }
        }
    }

    pub fn surface_quadrature(&self, level: u32) -> Result<SurfQuad> {
        quadrature::surface_quadrature(self, level)
    }

    pub fn volume_quadrature(&self, level: u32) -> Result<VolQuad> {
        quadrature::volume_quadrature(self, level)
    }

    pub fn voxelize(&self, n: usize) -> Result<VoxelGrid> {
        voxel::voxelize(self, n)
    }
}

/// Short serializable echo of a shape for reports.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeEcho {
    pub shape: String,
    pub volume: f64,
}

impl From<&Shape> for ShapeEcho {
    fn from(s: &Shape) -> Self {
        ShapeEcho {
            shape: s.describe(),
            volume: s.volume(),
        }
    }
}

fn clip_interval(t0: f64, t1: f64) -> Vec<(f64, f64)> {
    let a = t0.max(0.0);
    if t1 <= a {
        vec![]
    } else {
        vec![(a, t1)]
    }
}

fn bisect_root(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    // assumes g(a) < 0 < g(b) or the reverse along the segment
    let fa = g(a);
    for _ in 0..90 {
        let m = 0.5 * (a + b);
        let fm = g(m);
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Moller-Trumbore ray/triangle intersection; returns t > 1e-12.
pub(crate) fn ray_triangle(
    orig: &Vector3<f64>,
    dir: &Vector3<f64>,
    v0: &Vector3<f64>,
    v1: &Vector3<f64>,
    v2: &Vector3<f64>,
) -> Option<f64> {
    let e1 = v1 - v0;
    let e2 = v2 - v0;
    let p = dir.cross(&e2);
    let det = e1.dot(&p);
    if det.abs() < 1e-14 {
        return None;
    }
    let inv = 1.0 / det;
    let s = orig - v0;
    let uu = s.dot(&p) * inv;
    if !(0.0..=1.0).contains(&uu) {
        return None;
    }
    let q = s.cross(&e1);
    let vv = dir.dot(&q) * inv;
    if vv < 0.0 || uu + vv > 1.0 {
        return None;
    }
    let t = e2.dot(&q) * inv;
    if t > 1e-12 {
        Some(t)
    } else {
        None
    }
}

pub(crate) fn point_triangle_distance(
    p: &Vector3<f64>,
    a: &Vector3<f64>,
    b: &Vector3<f64>,
    c: &Vector3<f64>,
) -> f64 {
    // project into the triangle plane, clamp to edges
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return ap.norm();
    }
    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return bp.norm();
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return (ap - ab * v).norm();
    }
    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return cp.norm();
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return (ap - ac * w).norm();
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (bp - (c - b) * w).norm();
    }
    let n = ab.cross(&ac);
    (ap.dot(&n) / n.norm()).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn volumes() {
        assert_relative_eq!(Shape::ball(1.0).unwrap().volume(), 4.0 * PI / 3.0);
        assert_relative_eq!(Shape::cuboid(1.0, 1.0, 1.0).unwrap().volume(), 1.0);
        assert_relative_eq!(
            Shape::ellipsoid(2.0, 1.0, 0.5).unwrap().volume(),
            4.0 * PI / 3.0
        );
        // p = 2 superellipsoid is the ellipsoid
        assert_relative_eq!(
            Shape::superellipsoid(2.0, 1.0, 0.5, 2.0).unwrap().volume(),
            4.0 * PI / 3.0,
            max_relative = 1e-12
        );
        // p -> large approaches the cuboid 8abc
        let v = Shape::superellipsoid(1.0, 1.0, 1.0, 200.0).unwrap().volume();
        assert!((v - 8.0).abs() < 0.3);
    }

    #[test]
    fn normalize_volume_cases() {
        let b = Shape::ball(1.0).unwrap().normalize_volume().unwrap();
        assert_relative_eq!(b.volume(), 1.0, epsilon = 1e-12);
        let expect = (3.0 / (4.0 * PI)).powf(1.0 / 3.0);
        assert_relative_eq!(b.scale, expect, epsilon = 1e-12);
        assert!((expect - 0.62035).abs() < 1e-5);

        let c = Shape::cuboid(1.0, 1.0, 1.0).unwrap().normalize_volume().unwrap();
        assert_relative_eq!(c.scale, 1.0, epsilon = 1e-14);

        let e = Shape::ellipsoid(2.0, 1.0, 1.0).unwrap().normalize_volume().unwrap();
        assert_relative_eq!(e.scale, (3.0 / (8.0 * PI)).powf(1.0 / 3.0), epsilon = 1e-12);
    }

    #[test]
    fn grammar_roundtrip() {
        for s in [
            "ball:0.5",
            "ellipsoid:2,1,0.5",
            "cuboid:1,2,3",
            "superellipsoid:1,1,1,4",
        ] {
            let shape = Shape::parse(s).unwrap();
            assert_eq!(shape.describe(), s.replace("0.5", "0.5"));
        }
        assert!(Shape::parse("ball:-1").is_err());
        assert!(Shape::parse("torus:1").is_err());
        assert!(Shape::parse("superellipsoid:1,1,1,0.5").is_err());
        assert!(Shape::parse("mesh:/nonexistent/file.off").is_err());
    }

    #[test]
    fn ray_intervals_ball() {
        let b = Shape::ball(1.0).unwrap();
        let x = Vector3::new(0.3, 0.0, 0.0);
        let u = Vector3::new(1.0, 0.0, 0.0);
        let iv = b.ray_intervals(&x, &u);
        assert_eq!(iv.len(), 1);
        assert_relative_eq!(iv[0].0, 0.0);
        assert_relative_eq!(iv[0].1, 0.7, epsilon = 1e-12);
        // exterior, pointing away: empty
        let x = Vector3::new(2.0, 0.0, 0.0);
        assert!(b.ray_intervals(&x, &u).is_empty());
        // exterior, pointing in: chord
        let iv = b.ray_intervals(&x, &(-u));
        assert_eq!(iv.len(), 1);
        assert_relative_eq!(iv[0].0, 1.0, epsilon = 1e-12);
        assert_relative_eq!(iv[0].1, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn ray_intervals_cuboid_and_superellipsoid() {
        let c = Shape::cuboid(2.0, 2.0, 2.0).unwrap();
        let iv = c.ray_intervals(&Vector3::zeros(), &Vector3::new(0.0, 1.0, 0.0));
        assert_relative_eq!(iv[0].1, 1.0, epsilon = 1e-12);

        let se = Shape::superellipsoid(1.0, 1.0, 1.0, 4.0).unwrap();
        // along an axis the exit is at 1
        let iv = se.ray_intervals(&Vector3::zeros(), &Vector3::new(1.0, 0.0, 0.0));
        assert_relative_eq!(iv[0].1, 1.0, epsilon = 1e-9);
        // along the diagonal the exit is 3^(1/2 - 1/4) ... check gauge = 1
        let u = Vector3::new(1.0, 1.0, 1.0).normalize();
        let iv = se.ray_intervals(&Vector3::zeros(), &u);
        let x = u * iv[0].1;
        assert_relative_eq!(se.gauge(&x).unwrap(), 1.0, epsilon = 1e-9);
        // exterior miss
        assert!(se
            .ray_intervals(&Vector3::new(3.0, 0.0, 0.0), &Vector3::new(0.0, 1.0, 0.0))
            .is_empty());
    }

    #[test]
    fn interior_distance_bounds() {
        let e = Shape::ellipsoid(2.0, 1.0, 0.5).unwrap();
        let x = Vector3::new(0.5, 0.2, 0.1);
        let d = e.interior_distance(&x);
        assert!(d > 0.0);
        // the bound must not exceed the true distance: walk to the boundary
        let steps = 200;
        let mut min_true = f64::INFINITY;
        for k in 0..steps {
            let th = 2.0 * PI * k as f64 / steps as f64;
            for m in 0..steps / 2 {
                let ph = PI * m as f64 / (steps / 2) as f64;
                let u = Vector3::new(ph.sin() * th.cos(), ph.sin() * th.sin(), ph.cos());
                if let Some((_, t1)) = e.ray_intervals(&x, &u).first() {
                    min_true = min_true.min(*t1);
                }
            }
        }
        assert!(d <= min_true + 1e-9, "bound {d} vs true {min_true}");
    }

    #[test]
    fn mesh_shape_basics() {
        let mesh = mesh::icosphere_mesh(2);
        let s = Shape::from_mesh(PathBuf::from("icosphere"), mesh).unwrap();
        assert!(s.inside(&Vector3::new(0.1, 0.2, 0.0)));
        assert!(!s.inside(&Vector3::new(1.5, 0.0, 0.0)));
        let iv = s.ray_intervals(&Vector3::zeros(), &Vector3::new(0.0, 0.0, 1.0));
        assert_eq!(iv.len(), 1);
        assert!((iv[0].1 - 1.0).abs() < 0.02);
        let v = s.volume();
        assert!((v - 4.0 * PI / 3.0).abs() / (4.0 * PI / 3.0) < 0.05);
    }
}
