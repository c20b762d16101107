//! Surface and volume quadrature rules for the shape kinds.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::geometry::sphere_grid::{triangle_rule_7, triangulated_sphere, SphereBase};
use crate::geometry::{Shape, ShapeKind};

/// Surface quadrature: points on the boundary, unit outward normals, and
/// positive area weights.
#[derive(Debug, Clone)]
pub struct SurfQuad {
    pub points: Vec<Vector3<f64>>,
    pub normals: Vec<Vector3<f64>>,
    pub weights: Vec<f64>,
}

impl SurfQuad {
    pub fn area(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Mean spacing between quadrature points, the resolution scale for
    /// near-surface accuracy cutoffs.
    pub fn spacing(&self) -> f64 {
        (self.area() / self.points.len() as f64).sqrt()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Volume quadrature: interior points and positive weights summing to |Omega|.
#[derive(Debug, Clone)]
pub struct VolQuad {
    pub points: Vec<Vector3<f64>>,
    pub weights: Vec<f64>,
}

impl VolQuad {
    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

fn gauss_legendre_01(n: usize) -> Vec<(f64, f64)> {
    // Nodes/weights on [0,1] by Newton iteration on Legendre polynomials.
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for j in 2..=n {
            let jf = j as f64;
            let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (x + 1.0), 0.5 * w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

pub fn surface_quadrature(shape: &Shape, level: u32) -> Result<SurfQuad> {
    if level < 1 {
        return Err(Error::Config("quadrature level must be >= 1".into()));
    }
    match &shape.kind {
        ShapeKind::Ball { .. } | ShapeKind::Ellipsoid { .. } => {
            let h = shape.semi_axes().unwrap();
            Ok(mapped_sphere_surface(
                SphereBase::Icosahedral,
                level,
                |u| Vector3::new(h[0] * u[0], h[1] * u[1], h[2] * u[2]),
                |x| Vector3::new(x[0] / (h[0] * h[0]), x[1] / (h[1] * h[1]), x[2] / (h[2] * h[2])),
            ))
        }
        ShapeKind::Superellipsoid { p, .. } => {
            let h = shape.semi_axes().unwrap();
            let p = *p;
            let gauge = move |w: &Vector3<f64>| -> f64 {
                (0..3).map(|i| (w[i] / h[i]).abs().powf(p)).sum::<f64>()
            };
            Ok(mapped_sphere_surface(
                SphereBase::Octahedral,
                level,
                move |u| {
                    let w = Vector3::new(h[0] * u[0], h[1] * u[1], h[2] * u[2]);
                    w * gauge(&w).powf(-1.0 / p)
                },
                move |x| {
                    Vector3::from_fn(|i, _| {
                        x[i].signum() * (x[i] / h[i]).abs().powf(p - 1.0) / h[i]
                    })
                },
            ))
        }
        ShapeKind::Cuboid { .. } => {
            let h = shape.semi_axes().unwrap();
            let m = 1usize << level; // cells per edge
            let gl = [
                0.5 - 0.5 / 3.0f64.sqrt(),
                0.5 + 0.5 / 3.0f64.sqrt(),
            ];
            let mut points = Vec::new();
            let mut normals = Vec::new();
            let mut weights = Vec::new();
            for axis in 0..3 {
                let (t1, t2) = ((axis + 1) % 3, (axis + 2) % 3);
                for side in [-1.0f64, 1.0] {
                    let cell1 = 2.0 * h[t1] / m as f64;
                    let cell2 = 2.0 * h[t2] / m as f64;
                    for i in 0..m {
                        for j in 0..m {
                            for &g1 in &gl {
                                for &g2 in &gl {
                                    let mut x = Vector3::zeros();
                                    x[axis] = side * h[axis];
                                    x[t1] = -h[t1] + (i as f64 + g1) * cell1;
                                    x[t2] = -h[t2] + (j as f64 + g2) * cell2;
                                    let mut n = Vector3::zeros();
                                    n[axis] = side;
                                    points.push(x);
                                    normals.push(n);
                                    weights.push(cell1 * cell2 / 4.0);
                                }
                            }
                        }
                    }
                }
            }
            Ok(SurfQuad {
                points,
                normals,
                weights,
            })
        }
        ShapeKind::Mesh { mesh, .. } => {
            let s = shape.scale;
            let sub = level.saturating_sub(2).min(3);
            let rule = triangle_rule_7();
            let mut points = Vec::new();
            let mut normals = Vec::new();
            let mut weights = Vec::new();
            for t in &mesh.triangles {
                let base = [
                    mesh.vertices[t[0]] * s,
                    mesh.vertices[t[1]] * s,
                    mesh.vertices[t[2]] * s,
                ];
                let mut tris = vec![base];
                for _ in 0..sub {
                    let mut next = Vec::with_capacity(tris.len() * 4);
                    for tr in &tris {
                        let m01 = (tr[0] + tr[1]) * 0.5;
                        let m12 = (tr[1] + tr[2]) * 0.5;
                        let m20 = (tr[2] + tr[0]) * 0.5;
                        next.push([tr[0], m01, m20]);
                        next.push([m01, tr[1], m12]);
                        next.push([m20, m12, tr[2]]);
                        next.push([m01, m12, m20]);
                    }
                    tris = next;
                }
                for tr in &tris {
                    let e1 = tr[1] - tr[0];
                    let e2 = tr[2] - tr[0];
                    let cr = e1.cross(&e2);
                    let area2 = cr.norm();
                    if area2 < 1e-30 {
                        continue;
                    }
                    let n = cr / area2;
                    for &(xi, eta, w) in &rule {
                        points.push(tr[0] + e1 * xi + e2 * eta);
                        normals.push(n);
                        weights.push(0.5 * w * area2);
                    }
                }
            }
            Ok(SurfQuad {
                points,
                normals,
                weights,
            })
        }
    }
}

fn mapped_sphere_surface(
    base: SphereBase,
    level: u32,
    map: impl Fn(&Vector3<f64>) -> Vector3<f64>,
    grad: impl Fn(&Vector3<f64>) -> Vector3<f64>,
) -> SurfQuad {
    let tris = triangulated_sphere(base, level);
    let rule = triangle_rule_7();
    let mut points = Vec::with_capacity(tris.len() * 7);
    let mut normals = Vec::with_capacity(tris.len() * 7);
    let mut weights = Vec::with_capacity(tris.len() * 7);
    // jacobian of the composite map by central differences in the
    // triangle parameters; the sphere-to-surface maps here are smooth and
    // the parametric step is far from the noise floor
    for t in &tris {
        let e1 = t[1] - t[0];
        let e2 = t[2] - t[0];
        let surf = |xi: f64, eta: f64| -> Vector3<f64> {
            let w = t[0] + e1 * xi + e2 * eta;
            map(&w.normalize())
        };
        for &(xi, eta, w) in &rule {
            let x = surf(xi, eta);
            let hstep = 1e-5;
            let dxi = (surf(xi + hstep, eta) - surf(xi - hstep, eta)) / (2.0 * hstep);
            let deta = (surf(xi, eta + hstep) - surf(xi, eta - hstep)) / (2.0 * hstep);
            let jac = dxi.cross(&deta).norm();
            let g = grad(&x);
            points.push(x);
            normals.push(g.normalize());
            weights.push(0.5 * w * jac);
        }
    }
    SurfQuad {
        points,
        normals,
        weights,
    }
}

pub fn volume_quadrature(shape: &Shape, level: u32) -> Result<VolQuad> {
    if level < 1 {
        return Err(Error::Config("quadrature level must be >= 1".into()));
    }
    match &shape.kind {
        ShapeKind::Ball { .. } | ShapeKind::Ellipsoid { .. } | ShapeKind::Superellipsoid { .. } => {
            let base = if matches!(shape.kind, ShapeKind::Superellipsoid { .. }) {
                SphereBase::Octahedral
            } else {
                SphereBase::Icosahedral
            };
            let (dirs, wdir) = crate::geometry::sphere_grid::sphere_rule(base, level);
            let radial = gauss_legendre_01(2 * level as usize + 2);
            let mut points = Vec::with_capacity(dirs.len() * radial.len());
            let mut weights = Vec::with_capacity(dirs.len() * radial.len());
            for (u, wu) in dirs.iter().zip(&wdir) {
                let r_ext = shape
                    .ray_intervals(&Vector3::zeros(), u)
                    .first()
                    .map(|iv| iv.1)
                    .unwrap_or(0.0);
                for &(t, wt) in &radial {
                    points.push(u * (t * r_ext));
                    weights.push(wu * wt * t * t * r_ext.powi(3));
                }
            }
            Ok(VolQuad { points, weights })
        }
        ShapeKind::Cuboid { .. } => {
            let h = shape.semi_axes().unwrap();
            let ng = 4 * level as usize;
            let gl = gauss_legendre_01(ng);
            let mut points = Vec::with_capacity(ng * ng * ng);
            let mut weights = Vec::with_capacity(ng * ng * ng);
            for &(tx, wx) in &gl {
                for &(ty, wy) in &gl {
                    for &(tz, wz) in &gl {
                        points.push(Vector3::new(
                            (2.0 * tx - 1.0) * h[0],
                            (2.0 * ty - 1.0) * h[1],
                            (2.0 * tz - 1.0) * h[2],
                        ));
                        weights.push(wx * wy * wz * 8.0 * h[0] * h[1] * h[2]);
                    }
                }
            }
            Ok(VolQuad { points, weights })
        }
        ShapeKind::Mesh { .. } => {
            let n = (8 * level as usize).max(16);
            let grid = shape.voxelize(n)?;
            let mut points = Vec::new();
            let mut weights = Vec::new();
            let cell3 = grid.cell.powi(3);
            for (idx, f) in grid.fractions.iter().enumerate() {
                if *f > 0.0 {
                    points.push(grid.cell_center(idx));
                    weights.push(f * cell3);
                }
            }
            Ok(VolQuad { points, weights })
        }
    }
}
