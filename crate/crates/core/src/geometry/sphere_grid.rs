//! Triangulations of the unit sphere and curved-triangle quadrature.
//!
//! An icosahedral base avoids pole clustering for smooth surfaces; an
//! octahedral base keeps triangle edges on the coordinate planes, which is
//! where superellipsoid integrands lose smoothness.

use nalgebra::Vector3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereBase {
    Icosahedral,
    Octahedral,
}

/// Degree-5 seven-point rule on the reference triangle, weights summing to 1.
/// Usage: integral over the unit right triangle = (1/2) * sum w_i f(p_i).
pub fn triangle_rule_7() -> [(f64, f64, f64); 7] {
    let s15 = 15.0f64.sqrt();
    let b = (6.0 - s15) / 21.0;
    let d = (6.0 + s15) / 21.0;
    let w1 = (155.0 - s15) / 1200.0;
    let w2 = (155.0 + s15) / 1200.0;
    [
        (1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0),
        (1.0 - 2.0 * b, b, w1),
        (b, 1.0 - 2.0 * b, w1),
        (b, b, w1),
        (1.0 - 2.0 * d, d, w2),
        (d, 1.0 - 2.0 * d, w2),
        (d, d, w2),
    ]
}

fn icosahedron() -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut verts: Vec<Vector3<f64>> = vec![
        Vector3::new(-1.0, phi, 0.0),
        Vector3::new(1.0, phi, 0.0),
        Vector3::new(-1.0, -phi, 0.0),
        Vector3::new(1.0, -phi, 0.0),
        Vector3::new(0.0, -1.0, phi),
        Vector3::new(0.0, 1.0, phi),
        Vector3::new(0.0, -1.0, -phi),
        Vector3::new(0.0, 1.0, -phi),
        Vector3::new(phi, 0.0, -1.0),
        Vector3::new(phi, 0.0, 1.0),
        Vector3::new(-phi, 0.0, -1.0),
        Vector3::new(-phi, 0.0, 1.0),
    ];
    for v in &mut verts {
        v.normalize_mut();
    }
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (verts, faces)
}

fn octahedron() -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let verts = vec![
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(-1.0, 0.0, 0.0),
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(0.0, -1.0, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
        Vector3::new(0.0, 0.0, -1.0),
    ];
    let faces = vec![
        [0, 2, 4],
        [2, 1, 4],
        [1, 3, 4],
        [3, 0, 4],
        [2, 0, 5],
        [1, 2, 5],
        [3, 1, 5],
        [0, 3, 5],
    ];
    (verts, faces)
}

/// Spherical triangles (vertex triples on the unit sphere) after `level`
/// midpoint subdivisions of the base polyhedron.
pub fn triangulated_sphere(base: SphereBase, level: u32) -> Vec<[Vector3<f64>; 3]> {
    let (verts, faces) = match base {
        SphereBase::Icosahedral => icosahedron(),
        SphereBase::Octahedral => octahedron(),
    };
    let mut tris: Vec<[Vector3<f64>; 3]> = faces
        .iter()
        .map(|f| [verts[f[0]], verts[f[1]], verts[f[2]]])
        .collect();
    for _ in 0..level {
        let mut next = Vec::with_capacity(tris.len() * 4);
        for t in &tris {
            let m01 = (t[0] + t[1]).normalize();
            let m12 = (t[1] + t[2]).normalize();
            let m20 = (t[2] + t[0]).normalize();
            next.push([t[0], m01, m20]);
            next.push([m01, t[1], m12]);
            next.push([m20, m12, t[2]]);
            next.push([m01, m12, m20]);
        }
        tris = next;
    }
    tris
}

/// Quadrature rule for integrals over the unit sphere: directions and
/// positive weights with sum close to 4 pi. Each spherical triangle carries
/// the seven-point rule mapped through barycentric normalization, with the
/// exact curved-surface jacobian.
pub fn sphere_rule(base: SphereBase, level: u32) -> (Vec<Vector3<f64>>, Vec<f64>) {
    let tris = triangulated_sphere(base, level);
    let rule = triangle_rule_7();
    let mut dirs = Vec::with_capacity(tris.len() * 7);
    let mut weights = Vec::with_capacity(tris.len() * 7);
    for t in &tris {
        let e1 = t[1] - t[0];
        let e2 = t[2] - t[0];
        for &(xi, eta, w) in &rule {
            let wv = t[0] + e1 * xi + e2 * eta;
            let wn = wv.norm();
            let u = wv / wn;
            // d(u)/d(xi) = (I - u u^T) e / |w|
            let proj = |e: &Vector3<f64>| (e - u * u.dot(e)) / wn;
            let ux = proj(&e1);
            let ue = proj(&e2);
            let jac = ux.cross(&ue).norm();
            dirs.push(u);
            weights.push(0.5 * w * jac);
        }
    }
    (dirs, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sphere_area_converges() {
        for base in [SphereBase::Icosahedral, SphereBase::Octahedral] {
            let mut prev_err = f64::INFINITY;
            for level in 1..=4 {
                let (_, w) = sphere_rule(base, level);
                let total: f64 = w.iter().sum();
                let err = (total - 4.0 * PI).abs();
                assert!(err < prev_err, "area error must decrease with level");
                prev_err = err;
            }
            assert!(prev_err < 1e-9, "level-4 sphere area error {prev_err}");
        }
    }

    #[test]
    fn first_moments_vanish() {
        let (dirs, w) = sphere_rule(SphereBase::Icosahedral, 2);
        let mut m = Vector3::zeros();
        for (u, wi) in dirs.iter().zip(&w) {
            m += u * *wi;
        }
        assert!(m.norm() < 1e-12);
    }

    #[test]
    fn second_moments_match_analytic() {
        // integral of u_i u_j over S^2 = (4 pi / 3) delta_ij
        let (dirs, w) = sphere_rule(SphereBase::Octahedral, 3);
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = dirs
                    .iter()
                    .zip(&w)
                    .map(|(u, wi)| u[i] * u[j] * wi)
                    .sum();
                let want = if i == j { 4.0 * PI / 3.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-10, "moment ({i},{j}) = {s}");
            }
        }
    }
}
