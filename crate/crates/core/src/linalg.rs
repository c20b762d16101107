//! Small dense symmetric eigensolver (cyclic Jacobi).
//!
//! The matrices here are 3x3 and 6x6 with frequently degenerate spectra
//! (double eigenvalues, isotropic blocks). Jacobi rotations keep the
//! eigenvalue/eigenvector pairing exact by construction, which the
//! tridiagonalization-based solver does not guarantee on degenerate input.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
/// Returns eigenvalues in ascending order with matching eigenvector columns.
pub fn sym_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix required");
    let mut a = m.clone();
    // Work on the exactly symmetric part.
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.iter().fold(0.0f64, |s, x| s.max(x.abs())).max(1e-300);

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[(i, j)].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let vals = DVector::from_iterator(n, idx.iter().map(|&i| a[(i, i)]));
    let mut vecs = DMatrix::zeros(n, n);
    for (col, &i) in idx.iter().enumerate() {
        vecs.set_column(col, &v.column(i));
    }
    (vals, vecs)
}

/// 3x3 convenience wrapper.
pub fn sym_eigen3(m: &Matrix3<f64>) -> (Vector3<f64>, Matrix3<f64>) {
    let dm = DMatrix::from_fn(3, 3, |i, j| m[(i, j)]);
    let (vals, vecs) = sym_eigen(&dm);
    (
        Vector3::new(vals[0], vals[1], vals[2]),
        Matrix3::from_fn(|i, j| vecs[(i, j)]),
    )
}

/// Inverse of a symmetric matrix through its eigendecomposition, together
/// with the spectral condition number. Fails softly by returning None when
/// the matrix is numerically singular.
pub fn sym_inverse(m: &DMatrix<f64>) -> Option<(DMatrix<f64>, f64)> {
    let (vals, vecs) = sym_eigen(m);
    let amax = vals.iter().fold(0.0f64, |s, &x| s.max(x.abs()));
    let amin = vals.iter().fold(f64::INFINITY, |s, &x| s.min(x.abs()));
    if amax == 0.0 || amin <= 1e-14 * amax {
        return None;
    }
    let n = m.nrows();
    let mut inv = DMatrix::zeros(n, n);
    for k in 0..n {
        let vk = vecs.column(k);
        let w = 1.0 / vals[k];
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] += w * vk[i] * vk[j];
            }
        }
    }
    Some((inv, amax / amin))
}
