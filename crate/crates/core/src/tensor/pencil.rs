//! Eigenvalue-pencil analysis for pairs of symmetric 3x3 matrices: decides
//! whether B1 + t B2 has a multiple eigenvalue for every real t, in which
//! case the pair is simultaneously diagonalizable, and otherwise produces a
//! witness t at which the spectrum is simple.

use nalgebra::Matrix3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::sym_eigen3;
use crate::tensor::SymMat;

/// Spectrum classification of a symmetric 3x3 matrix at a relative
/// separation tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EigenClass {
    AllEqual,
    AllDistinct,
    Double,
}

/// Result of the pencil analysis.
#[derive(Debug, Clone, Serialize)]
pub struct PencilReport {
    /// True iff the discriminant of the characteristic polynomial of
    /// B1 + t B2 vanishes identically in t.
    pub always_multiple: bool,
    /// Common orthogonal diagonalizer (rows discarded into row-major 3x3),
    /// present iff `always_multiple`.
    pub diagonalizer: Option<[[f64; 3]; 3]>,
    /// A value of t at which B1 + t B2 has three well-separated eigenvalues,
    /// present iff not `always_multiple`.
    pub witness_t: Option<f64>,
    /// Coefficients of the discriminant polynomial Gamma(t), ascending in t
    /// (degree <= 6).
    pub discriminant: Vec<f64>,
}

const COEFF_REL_TOL: f64 = 1e-10;
const WITNESS_SEP: f64 = 1e-8;

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64], sb: f64) -> Vec<f64> {
    let n = a.len().max(b.len());
    let mut out = vec![0.0; n];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += sb * y;
    }
    out
}

/// Coefficients (ascending in t) of tr, second elementary symmetric
/// function, and det of B1 + t B2.
fn charpoly_coeffs(b1: &Matrix3<f64>, b2: &Matrix3<f64>) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let c2 = vec![b1.trace(), b2.trace()];

    // e2(A + tB): sum of principal 2x2 minors, quadratic in t.
    let mut e0 = 0.0;
    let mut e1 = 0.0;
    let mut e2q = 0.0;
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let (a_ii, a_jj, a_ij) = (b1[(i, i)], b1[(j, j)], b1[(i, j)]);
        let (b_ii, b_jj, b_ij) = (b2[(i, i)], b2[(j, j)], b2[(i, j)]);
        e0 += a_ii * a_jj - a_ij * a_ij;
        e1 += a_ii * b_jj + b_ii * a_jj - 2.0 * a_ij * b_ij;
        e2q += b_ii * b_jj - b_ij * b_ij;
    }
    let c1 = vec![e0, e1, e2q];

    // det(A + tB): cubic in t; mixed terms via tr(adj(A) B) and tr(adj(B) A).
    let adj = |m: &Matrix3<f64>| -> Matrix3<f64> {
        let mut a = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let mut minor = [[0.0; 2]; 2];
                let (mut r, mut c);
                r = 0;
                for ii in 0..3 {
                    if ii == i {
                        continue;
                    }
                    c = 0;
                    for jj in 0..3 {
                        if jj == j {
                            continue;
                        }
                        minor[r][c] = m[(ii, jj)];
                        c += 1;
                    }
                    r += 1;
                }
                let det2 = minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0];
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                // adjugate = transpose of cofactor matrix
                a[(j, i)] = sign * det2;
            }
        }
        a
    };
    let d0 = b1.determinant();
    let d3 = b2.determinant();
    let d1 = (adj(b1) * b2).trace();
    let d2 = (adj(b2) * b1).trace();
    let c0 = vec![d0, d1, d2, d3];

    (c2, c1, c0)
}

/// Discriminant of the characteristic polynomial of B1 + t B2 as a
/// polynomial in t (degree <= 6, ascending coefficients). Nonnegative for
/// all t, zero exactly at multiple-eigenvalue parameters.
pub fn pencil_discriminant(b1: &Matrix3<f64>, b2: &Matrix3<f64>) -> Vec<f64> {
    let (c2, c1, c0) = charpoly_coeffs(b1, b2);
    // Char poly l^3 - c2 l^2 + c1 l - c0; discriminant of l^3 + p l^2 + q l + r
    // with p = -c2, q = c1, r = -c0:
    // 18 p q r - 4 p^3 r + p^2 q^2 - 4 q^3 - 27 r^2
    // = 18 c2 c1 c0 - 4 c2^3 c0 + c2^2 c1^2 - 4 c1^3 - 27 c0^2.
    let c2c1 = poly_mul(&c2, &c1);
    let t18 = poly_mul(&c2c1, &c0);
    let c2cub = poly_mul(&poly_mul(&c2, &c2), &c2);
    let t4p = poly_mul(&c2cub, &c0);
    let c2sq_c1sq = poly_mul(&poly_mul(&c2, &c2), &poly_mul(&c1, &c1));
    let c1cub = poly_mul(&poly_mul(&c1, &c1), &c1);
    let c0sq = poly_mul(&c0, &c0);

    let mut g = poly_add(&poly_mul(&[18.0], &t18), &t4p, -4.0);
    g = poly_add(&g, &c2sq_c1sq, 1.0);
    g = poly_add(&g, &c1cub, -4.0);
    g = poly_add(&g, &c0sq, -27.0);
    g.truncate(7);
    g
}

fn sorted_eigen(m: &Matrix3<f64>) -> (Vec<f64>, Matrix3<f64>) {
    let (vals, q) = sym_eigen3(m);
    (vec![vals[0], vals[1], vals[2]], q)
}

fn min_gap(ev: &[f64]) -> f64 {
    let mut g = f64::INFINITY;
    for i in 0..ev.len() {
        for j in (i + 1)..ev.len() {
            g = g.min((ev[i] - ev[j]).abs());
        }
    }
    g
}

/// Classifies the spectrum of a symmetric 3x3 matrix with relative
/// separation tolerance 1e-8 * ||B||. Ties between AllEqual and Double are
/// resolved to Double.
pub fn eigen_class(b: &SymMat) -> EigenClass {
    assert_eq!(b.d, 3, "eigen_class requires d = 3");
    let norm = b.norm();
    if norm == 0.0 {
        return EigenClass::AllEqual;
    }
    let tau = 1e-8 * norm;
    let ev = b.eigenvalues();
    let max_gap = (ev[2] - ev[0]).abs();
    let mg = min_gap(&ev);
    if max_gap < tau {
        EigenClass::AllEqual
    } else if mg > tau {
        EigenClass::AllDistinct
    } else {
        EigenClass::Double
    }
}

fn to_rows(q: &Matrix3<f64>) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = q[(i, j)];
        }
    }
    out
}

/// Searches for a t at which the pencil has three well-separated
/// eigenvalues. Almost every t works when the discriminant is not
/// identically zero; a fixed grid keeps the result deterministic.
fn find_witness(b1: &Matrix3<f64>, b2: &Matrix3<f64>) -> Option<f64> {
    let mut best_t = 0.0;
    let mut best_gap = -1.0;
    let mut candidates: Vec<f64> = vec![0.0];
    for k in 1..=40 {
        let t = 0.25 * k as f64;
        candidates.push(t);
        candidates.push(-t);
    }
    // Irrational offsets dodge structured degeneracies exactly at grid points.
    for k in 0..8 {
        candidates.push(0.5 + k as f64 * std::f64::consts::SQRT_2);
        candidates.push(-(0.5 + k as f64 * std::f64::consts::E));
    }
    for t in candidates {
        let m = b1 + b2 * t;
        let (ev, _) = sorted_eigen(&m);
        let g = min_gap(&ev);
        if g > best_gap {
            best_gap = g;
            best_t = t;
        }
    }
    if best_gap > WITNESS_SEP {
        Some(best_t)
    } else {
        None
    }
}

/// Decides whether B1 + t B2 has a multiple eigenvalue for all t, following
/// the normalized-coordinates procedure: B2 proportional to the identity is
/// handled as its own branch; otherwise B2 is diagonalized, brought to
/// diag(0,0,1) by an affine reparametrization, and the t^4 coefficient
/// (a - b)^2 + 4 d^2 and t^2 coefficient (e^2 + f^2)^2 of the discriminant
/// are tested against zero at relative tolerance 1e-10.
pub fn pencil_check(b1: &SymMat, b2: &SymMat) -> Result<PencilReport> {
    if b1.d != 3 || b2.d != 3 {
        return Err(Error::UnsupportedDimension(b1.d.max(b2.d)));
    }
    let m1 = b1.to_matrix3();
    let m2 = b2.to_matrix3();
    if !m1.iter().chain(m2.iter()).all(|v| v.is_finite()) {
        return Err(Error::NonSymmetric("non-finite entries".into()));
    }
    let discriminant = pencil_discriminant(&m1, &m2);
    let scale2 = m2.norm().max(1e-300);

    // Branch 1: B2 proportional to I. The pencil shifts the spectrum of B1
    // uniformly, so multiplicity is decided by B1 alone.
    let s = m2.trace() / 3.0;
    let dev2 = m2 - Matrix3::identity() * s;
    if dev2.norm() <= 1e-12 * scale2 || m2.norm() == 0.0 {
        let (ev, q) = sorted_eigen(&m1);
        let tau = 1e-10 * m1.norm().max(1e-300);
        let multiple = min_gap(&ev) <= tau;
        if multiple {
            return Ok(PencilReport {
                always_multiple: true,
                diagonalizer: Some(to_rows(&q)),
                witness_t: None,
                discriminant,
            });
        }
        let witness = find_witness(&m1, &m2).ok_or(Error::EigenFailure(
            "no witness with separated spectrum found".into(),
        ))?;
        return Ok(PencilReport {
            always_multiple: false,
            diagonalizer: None,
            witness_t: Some(witness),
            discriminant,
        });
    }

    // Branch 2: diagonalize B2. An identically multiple pencil forces B2 to
    // have a multiple eigenvalue; with all three distinct the answer is no.
    let (ev2, q) = sorted_eigen(&m2);
    let gaps = [
        (ev2[1] - ev2[0]).abs(),
        (ev2[2] - ev2[1]).abs(),
        (ev2[2] - ev2[0]).abs(),
    ];
    let tau2 = 1e-10 * scale2;
    if gaps[0] > tau2 && gaps[1] > tau2 {
        let witness = find_witness(&m1, &m2).ok_or(Error::EigenFailure(
            "no witness with separated spectrum found".into(),
        ))?;
        return Ok(PencilReport {
            always_multiple: false,
            diagonalizer: None,
            witness_t: Some(witness),
            discriminant,
        });
    }

    // B2 has a double eigenvalue s (and a simple one c). Reorder the
    // eigenbasis so the simple eigenvalue sits last, then (B2 - s I)/(c - s)
    // = Q diag(0,0,1) Q^T and B1 transforms to Q^T B1 Q; the affine t-change
    // preserves "multiple for all t".
    let (s_val, c_val, qn) = if gaps[0] <= gaps[1] {
        // double at the low end, simple eigenvalue = ev2[2], already last
        (0.5 * (ev2[0] + ev2[1]), ev2[2], q)
    } else {
        // double at the high end: move the simple (lowest) column last
        let mut qq = Matrix3::zeros();
        qq.set_column(0, &q.column(1));
        qq.set_column(1, &q.column(2));
        qq.set_column(2, &q.column(0));
        (0.5 * (ev2[1] + ev2[2]), ev2[0], qq)
    };
    let b1n = qn.transpose() * m1 * qn;
    let (a, b, c_) = (b1n[(0, 0)], b1n[(1, 1)], b1n[(2, 2)]);
    let (dcoef, e, f) = (b1n[(0, 1)], b1n[(0, 2)], b1n[(1, 2)]);
    let _ = (c_, c_val, s_val);
    let scale1 = m1.norm().max(1e-300);

    // t^4 coefficient of Gamma in normalized coordinates: (a-b)^2 + 4 d^2;
    // if it vanishes, the t^2 coefficient is (e^2 + f^2)^2.
    let t4 = (a - b) * (a - b) + 4.0 * dcoef * dcoef;
    let t2 = (e * e + f * f) * (e * e + f * f);
    let multiple = t4 <= COEFF_REL_TOL * scale1 * scale1 && t2 <= COEFF_REL_TOL * scale1.powi(4);

    if multiple {
        Ok(PencilReport {
            always_multiple: true,
            diagonalizer: Some(to_rows(&qn)),
            witness_t: None,
            discriminant,
        })
    } else {
        let witness = find_witness(&m1, &m2).ok_or(Error::EigenFailure(
            "no witness with separated spectrum found".into(),
        ))?;
        Ok(PencilReport {
            always_multiple: false,
            diagonalizer: None,
            witness_t: Some(witness),
            discriminant,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::SymMat;
    use nalgebra::Vector3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sym(rows: [[f64; 3]; 3]) -> SymMat {
        SymMat::new(3, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn random_rotation(rng: &mut impl Rng) -> Matrix3<f64> {
        // QR of a random matrix, sign-fixed.
        let m = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
        let qr = m.qr();
        let mut q = qr.q();
        if q.determinant() < 0.0 {
            let col = -q.column(0);
            q.set_column(0, &col);
        }
        q
    }

    #[test]
    fn discriminant_matches_pointwise_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
            let b = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
            let a = (a + a.transpose()) * 0.5;
            let b = (b + b.transpose()) * 0.5;
            let g = pencil_discriminant(&a, &b);
            for &t in &[-1.7, -0.3, 0.0, 0.42, 2.1] {
                let m = a + b * t;
                let ev = m.symmetric_eigen().eigenvalues;
                let direct = ((ev[0] - ev[1]) * (ev[1] - ev[2]) * (ev[0] - ev[2])).powi(2);
                let poly: f64 = g
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c * t.powi(k as i32))
                    .sum();
                let scale = direct.abs().max(1.0);
                assert!(
                    (direct - poly).abs() < 1e-8 * scale,
                    "t = {t}: direct {direct} vs poly {poly}"
                );
            }
        }
    }

    #[test]
    fn appendix_normal_form_is_multiple() {
        let b1 = sym([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 4.0]]);
        let b2 = sym([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let rep = pencil_check(&b1, &b2).unwrap();
        assert!(rep.always_multiple);
        let q = rep.diagonalizer.unwrap();
        // Diagonalizer conjugates both to diagonal; here the identity works
        // and whatever orthogonal Q is returned must diagonalize both.
        for m in [b1.to_matrix3(), b2.to_matrix3()] {
            let qm = Matrix3::from_fn(|i, j| q[i][j]);
            let d = qm.transpose() * m * qm;
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert!(d[(i, j)].abs() < 1e-10, "off-diagonal {}", d[(i, j)]);
                    }
                }
            }
        }
    }

    #[test]
    fn off_diagonal_block_matrix_is_not_multiple() {
        // B1 + t B2 has eigenvalues {1, -1, t}: multiple only at t = +-1.
        let b1 = sym([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let b2 = sym([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let rep = pencil_check(&b1, &b2).unwrap();
        assert!(!rep.always_multiple);
        let t = rep.witness_t.unwrap();
        let m = b1.to_matrix3() + b2.to_matrix3() * t;
        let (ev, _) = sorted_eigen(&m);
        assert!(min_gap(&ev) > 1e-8);
    }

    #[test]
    fn b2_proportional_to_identity_branch() {
        let b2 = sym([[3.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 3.0]]);
        // B1 with a multiple eigenvalue: always multiple.
        let b1 = sym([[2.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 5.0]]);
        let rep = pencil_check(&b1, &b2).unwrap();
        assert!(rep.always_multiple);
        // B1 with distinct eigenvalues: never multiple (same gaps for all t).
        let b1 = sym([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 5.0]]);
        let rep = pencil_check(&b1, &b2).unwrap();
        assert!(!rep.always_multiple);
    }

    #[test]
    fn commuting_family_positive_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let q = random_rotation(&mut rng);
            let a = rng.gen_range(-2.0..2.0);
            let c = rng.gen_range(-2.0..2.0);
            let b = rng.gen_range(-2.0..2.0);
            let e = rng.gen_range(-2.0..2.0);
            let d1 = Matrix3::from_diagonal(&Vector3::new(a, a, c));
            let d2 = Matrix3::from_diagonal(&Vector3::new(b, b, e));
            let b1 = SymMat::from_matrix3(&(q * d1 * q.transpose()));
            let b2 = SymMat::from_matrix3(&(q * d2 * q.transpose()));
            let rep = pencil_check(&b1, &b2).unwrap();
            assert!(rep.always_multiple, "shared diag(a,a,c) family must pass");
        }
    }

    #[test]
    fn independent_random_pairs_negative_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
            let b = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
            let b1 = SymMat::from_matrix3(&((a + a.transpose()) * 0.5));
            let b2 = SymMat::from_matrix3(&((b + b.transpose()) * 0.5));
            let rep = pencil_check(&b1, &b2).unwrap();
            assert!(!rep.always_multiple);
            assert!(rep.witness_t.is_some());
        }
    }

    #[test]
    fn eigen_class_cases() {
        assert_eq!(
            eigen_class(&SymMat::identity(3).scale(2.0)),
            EigenClass::AllEqual
        );
        assert_eq!(
            eigen_class(&sym([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]])),
            EigenClass::AllDistinct
        );
        assert_eq!(
            eigen_class(&sym([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 3.0]])),
            EigenClass::Double
        );
        assert_eq!(eigen_class(&SymMat::zeros(3)), EigenClass::AllEqual);
    }
}
