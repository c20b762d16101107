//! Symmetric-matrix and 4-tensor algebra on the space of d x d symmetric
//! matrices (d = 2, 3), the orthonormal basis adapted to the
//! hydrostatic/deviatoric splitting, and the isotropic tensor family.

mod material;
mod pencil;

pub use material::{MaterialPair, Phase};
pub use pencil::{eigen_class, pencil_check, EigenClass, PencilReport};

use nalgebra::{DMatrix, DVector, Matrix3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A d x d real symmetric matrix (strain, stress, or loading).
///
/// Stored dense; symmetry is enforced at construction. Conversion to
/// coefficients in an [`OrthoBasis`] is an isometry for the Frobenius
/// inner product `A : B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMat {
    pub d: usize,
    pub entries: Vec<Vec<f64>>,
}

impl SymMat {
    pub fn new(d: usize, entries: Vec<Vec<f64>>) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::UnsupportedDimension(d));
        }
        if entries.len() != d || entries.iter().any(|r| r.len() != d) {
            return Err(Error::NonSymmetric(format!("expected {d}x{d} array")));
        }
        let scale: f64 = entries
            .iter()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(1e-300);
        for i in 0..d {
            for j in (i + 1)..d {
                if (entries[i][j] - entries[j][i]).abs() > 1e-12 * scale {
                    return Err(Error::NonSymmetric(format!(
                        "entries[{i}][{j}] = {} vs entries[{j}][{i}] = {}",
                        entries[i][j], entries[j][i]
                    )));
                }
            }
        }
        // Store the exactly symmetric representative.
        let mut e = entries;
        for i in 0..d {
            for j in (i + 1)..d {
                let v = 0.5 * (e[i][j] + e[j][i]);
                e[i][j] = v;
                e[j][i] = v;
            }
        }
        Ok(SymMat { d, entries: e })
    }

    pub fn zeros(d: usize) -> Self {
        SymMat {
            d,
            entries: vec![vec![0.0; d]; d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.entries[i][i] = 1.0;
        }
        m
    }

    pub fn from_matrix3(m: &Matrix3<f64>) -> Self {
        let mut e = vec![vec![0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                e[i][j] = 0.5 * (m[(i, j)] + m[(j, i)]);
            }
        }
        SymMat { d: 3, entries: e }
    }

    pub fn to_matrix3(&self) -> Matrix3<f64> {
        assert_eq!(self.d, 3, "to_matrix3 requires d = 3");
        Matrix3::from_fn(|i, j| self.entries[i][j])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.d).map(|i| self.entries[i][i]).sum()
    }

    /// Frobenius contraction A : B.
    pub fn dot(&self, other: &SymMat) -> f64 {
        assert_eq!(self.d, other.d);
        let mut s = 0.0;
        for i in 0..self.d {
            for j in 0..self.d {
                s += self.entries[i][j] * other.entries[i][j];
            }
        }
        s
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> SymMat {
        let mut out = self.clone();
        for row in &mut out.entries {
            for v in row {
                *v *= s;
            }
        }
        out
    }

    pub fn add(&self, other: &SymMat) -> SymMat {
        assert_eq!(self.d, other.d);
        let mut out = self.clone();
        for i in 0..self.d {
            for j in 0..self.d {
                out.entries[i][j] += other.entries[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &SymMat) -> SymMat {
        self.add(&other.scale(-1.0))
    }

    /// Coefficient vector in the given orthonormal basis (an isometry).
    pub fn to_coeffs(&self, basis: &OrthoBasis) -> DVector<f64> {
        assert_eq!(self.d, basis.d);
        DVector::from_iterator(basis.elements.len(), basis.elements.iter().map(|b| self.dot(b)))
    }

    pub fn from_coeffs(basis: &OrthoBasis, coeffs: &DVector<f64>) -> SymMat {
        assert_eq!(coeffs.len(), basis.elements.len());
        let mut out = SymMat::zeros(basis.d);
        for (c, b) in coeffs.iter().zip(basis.elements.iter()) {
            out = out.add(&b.scale(*c));
        }
        out
    }

    /// Eigenvalues in ascending order (symmetric eigensolve).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.d;
        let m = DMatrix::from_fn(n, n, |i, j| self.entries[i][j]);
        let (vals, _) = crate::linalg::sym_eigen(&m);
        vals.iter().copied().collect()
    }
}

/// Orthonormal basis of the space of d x d symmetric matrices, d* = d(d+1)/2
/// elements. The first element is I/sqrt(d) (the hydrostatic direction);
/// the rest are trace-free.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    pub d: usize,
    pub elements: Vec<SymMat>,
}

/// Number of independent components of a d x d symmetric matrix.
pub fn dstar(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Builds the fixed orthonormal basis of M_d^s.
///
/// d = 3: I/sqrt(3); (e1e1 - e2e2)/sqrt(2); (e1e1 + e2e2 - 2 e3e3)/sqrt(6);
/// sqrt(2) sym(e_i e_j) for i < j in the order (1,2), (1,3), (2,3).
/// d = 2: I/sqrt(2); (e1e1 - e2e2)/sqrt(2); sqrt(2) sym(e1 e2).
pub fn make_basis(d: usize) -> Result<OrthoBasis> {
    let mut elements = Vec::new();
    match d {
        2 => {
            let s = 1.0 / 2.0f64.sqrt();
            elements.push(SymMat::new(2, vec![vec![s, 0.0], vec![0.0, s]])?);
            elements.push(SymMat::new(2, vec![vec![s, 0.0], vec![0.0, -s]])?);
            elements.push(SymMat::new(2, vec![vec![0.0, s], vec![s, 0.0]])?);
        }
        3 => {
            let r3 = 3.0f64.sqrt();
            let r2 = 2.0f64.sqrt();
            let r6 = 6.0f64.sqrt();
            elements.push(SymMat::identity(3).scale(1.0 / r3));
            let mut b2 = SymMat::zeros(3);
            b2.entries[0][0] = 1.0 / r2;
            b2.entries[1][1] = -1.0 / r2;
            elements.push(b2);
            let mut b3 = SymMat::zeros(3);
            b3.entries[0][0] = 1.0 / r6;
            b3.entries[1][1] = 1.0 / r6;
            b3.entries[2][2] = -2.0 / r6;
            elements.push(b3);
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let mut b = SymMat::zeros(3);
                b.entries[i][j] = 1.0 / r2;
                b.entries[j][i] = 1.0 / r2;
                elements.push(b);
            }
        }
        _ => return Err(Error::UnsupportedDimension(d)),
    }
    Ok(OrthoBasis { d, elements })
}

/// The Lambda_1 / Lambda_2 orthogonal projections of a symmetric matrix:
/// which = 1 returns the hydrostatic part (tr X / d) I, which = 2 the
/// trace-free remainder.
pub fn lambda_project(x: &SymMat, which: u8) -> SymMat {
    let t = x.trace() / x.d as f64;
    let hydro = SymMat::identity(x.d).scale(t);
    match which {
        1 => hydro,
        2 => x.sub(&hydro),
        _ => panic!("lambda_project: which must be 1 or 2"),
    }
}

/// A symmetric linear map on M_d^s stored as its d* x d* coefficient matrix
/// in the [`make_basis`] coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tensor4 {
    pub d: usize,
    pub coeffs: Vec<Vec<f64>>,
}

impl Tensor4 {
    pub fn zeros(d: usize) -> Self {
        let n = dstar(d);
        Tensor4 {
            d,
            coeffs: vec![vec![0.0; n]; n],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut t = Self::zeros(d);
        for k in 0..dstar(d) {
            t.coeffs[k][k] = 1.0;
        }
        t
    }

    pub fn from_dmatrix(d: usize, m: &DMatrix<f64>) -> Self {
        let n = dstar(d);
        assert_eq!(m.nrows(), n);
        assert_eq!(m.ncols(), n);
        Tensor4 {
            d,
            coeffs: (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect(),
        }
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        let n = dstar(self.d);
        DMatrix::from_fn(n, n, |i, j| self.coeffs[i][j])
    }

    /// Builds the coefficient matrix of a linear map on M_d^s from its
    /// action on symmetric matrices.
    pub fn from_map(d: usize, f: impl Fn(&SymMat) -> SymMat) -> Result<Self> {
        let basis = make_basis(d)?;
        let n = dstar(d);
        let mut t = Self::zeros(d);
        for l in 0..n {
            let img = f(&basis.elements[l]);
            for k in 0..n {
                t.coeffs[k][l] = basis.elements[k].dot(&img);
            }
        }
        Ok(t)
    }

    /// Applies the map to a symmetric matrix.
    pub fn apply(&self, x: &SymMat) -> SymMat {
        let basis = make_basis(self.d).expect("valid dimension");
        let c = x.to_coeffs(&basis);
        let out = self.to_dmatrix() * c;
        SymMat::from_coeffs(&basis, &out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    pub fn symmetry_defect(&self) -> f64 {
        let m = self.to_dmatrix();
        let a = &m - m.transpose();
        let n = self.frobenius_norm();
        if n == 0.0 {
            0.0
        } else {
            a.norm() / n
        }
    }

    pub fn symmetrized(&self) -> Tensor4 {
        let m = self.to_dmatrix();
        let s = (&m + m.transpose()) * 0.5;
        Tensor4::from_dmatrix(self.d, &s)
    }
}

/// Trace of a symmetric 4-tensor: sum over the basis of T(B_k) : B_k,
/// i.e. the trace of the coefficient matrix. Basis-independent.
pub fn tensor_trace(t: &Tensor4) -> f64 {
    (0..dstar(t.d)).map(|k| t.coeffs[k][k]).sum()
}

/// Isotropic elasticity tensor lambda I (x) I + 2 mu II, as the map
/// d kappa_conv Lambda_1 + 2 mu Lambda_2 (kappa_conv = lambda + 2 mu / d).
/// Applying it to I yields (d lambda + 2 mu) I.
pub fn iso_tensor(lambda: f64, mu: f64, d: usize) -> Result<Tensor4> {
    if d != 2 && d != 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    if mu <= 0.0 || d as f64 * lambda + 2.0 * mu <= 0.0 {
        return Err(Error::ConvexityViolation(format!(
            "mu = {mu}, d*lambda + 2*mu = {}",
            d as f64 * lambda + 2.0 * mu
        )));
    }
    let n = dstar(d);
    let mut t = Tensor4::zeros(d);
    let bulk_eig = d as f64 * lambda + 2.0 * mu; // d * kappa_conv
    t.coeffs[0][0] = bulk_eig;
    for k in 1..n {
        t.coeffs[k][k] = 2.0 * mu;
    }
    Ok(t)
}

/// The contrast map B* = (lambda~ - lambda) tr(B) I + 2 (mu~ - mu) B,
/// equal to (C^1 - C^0)(B).
pub fn bstar(b: &SymMat, pair: &MaterialPair) -> SymMat {
    let dl = pair.lambda_tilde - pair.lambda;
    let dm = pair.mu_tilde - pair.mu;
    let mut out = b.scale(2.0 * dm);
    let t = dl * b.trace();
    for i in 0..b.d {
        out.entries[i][i] += t;
    }
    out
}
