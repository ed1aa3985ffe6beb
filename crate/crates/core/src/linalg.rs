//! Dense complex linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> CMat {
    CMat::from_row_iterator(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)))
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Max-entry deviation of `m m*` from the identity.
pub fn unitarity_residual(m: &CMat) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(m * m.adjoint()), &identity(m.nrows()))
}

pub fn trace(m: &CMat) -> C64 {
    m.diagonal().iter().sum()
}

/// Returns `λ` if `m = λ·1`: off-diagonal max below `tol` and diagonal spread below `tol`.
pub fn scalar_value(m: &CMat, tol: f64) -> Option<C64> {
    let n = m.nrows();
    if n == 0 || !m.is_square() {
        return None;
    }
    let d0 = m[(0, 0)];
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            if i == j {
                if (z - d0).norm() >= tol {
                    return None;
                }
            } else if z.norm() >= tol {
                return None;
            }
        }
    }
    Some(trace(m) / n as f64)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Column-major vectorization.
pub fn vectorize(m: &CMat) -> CVec {
    CVec::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &CVec, rows: usize, cols: usize) -> CMat {
    CMat::from_column_slice(rows, cols, v.as_slice())
}

pub fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMat::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

fn singular_threshold(values: &[f64], tol: f64) -> f64 {
    let smax = values.iter().cloned().fold(0.0, f64::max);
    tol * smax.max(1.0)
}

/// Orthonormal basis of the right null space of `m`.
///
/// Singular values at or below `tol · max(1, σ_max)` count as zero.
pub fn null_space(m: &CMat, tol: f64) -> Vec<CVec> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Vec::new();
    }
    // nalgebra's thin SVD only yields the full V when rows >= cols.
    let padded;
    let a = if rows < cols {
        let mut p = CMat::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        padded = p;
        &padded
    } else {
        m
    };
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let s: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let thresh = singular_threshold(&s, tol);
    s.iter()
        .enumerate()
        .filter(|(_, &x)| x <= thresh)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect()
}

pub fn rank(m: &CMat, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let s: Vec<f64> = m.singular_values().iter().cloned().collect();
    let thresh = singular_threshold(&s, tol);
    s.iter().filter(|&&x| x > thresh).count()
}

/// Smallest and largest singular values.
pub fn singular_range(m: &CMat) -> (f64, f64) {
    let s = m.singular_values();
    (s.min(), s.max())
}

/// Unitary polar factor `W V*` of `m = W Σ V*`.
pub fn polar_unitary(m: &CMat) -> CMat {
    let svd = m.clone().svd(true, true);
    svd.u.expect("requested U") * svd.v_t.expect("requested V")
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(m.nrows(), m.ncols());
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Splits sorted values into maximal runs whose consecutive gaps are at most `tol`.
pub fn cluster_sorted(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMat {
    polar_unitary(&random_matrix(rng, n, n))
}

/// Incrementally grown orthonormal basis of a subspace of `ℂ^len`.
#[derive(Clone, Debug)]
pub struct Subspace {
    len: usize,
    basis: Vec<CVec>,
}

impl Subspace {
    pub fn new(len: usize) -> Self {
        Subspace { len, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn basis(&self) -> &[CVec] {
        &self.basis
    }

    /// Component of `v` orthogonal to the subspace (two Gram-Schmidt passes).
    pub fn residual(&self, v: &CVec) -> CVec {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let c = b.dotc(&r);
                r.axpy(-c, b, ONE);
            }
        }
        r
    }

    /// Relative distance of `v` from the subspace.
    pub fn distance(&self, v: &CVec) -> f64 {
        let n = v.norm();
        if n == 0.0 {
            return 0.0;
        }
        self.residual(v).norm() / n
    }

    pub fn contains(&self, v: &CVec, tol: f64) -> bool {
        self.distance(v) <= tol
    }

    /// Adds `v` if it is not already in the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &CVec, tol: f64) -> bool {
        let n = v.norm();
        if n == 0.0 {
            return false;
        }
        let r = self.residual(v);
        let rn = r.norm();
        if rn / n <= tol {
            return false;
        }
        self.basis.push(r / C64::new(rn, 0.0));
        true
    }

    /// Orthogonal projection coefficients onto the basis.
    pub fn coordinates(&self, v: &CVec) -> Vec<C64> {
        self.basis.iter().map(|b| b.dotc(v)).collect()
    }
}
