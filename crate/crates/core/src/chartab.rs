//! Character tables over double-precision complex numbers.
//!
//! The table is obtained by simultaneously diagonalizing the class-sum
//! multiplication matrices: a random real combination of them generically
//! has one eigenvector per irreducible character, namely its vector of
//! central character values.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{null_space, CMat, C64};

/// Tolerance used to accept a computed table.
pub const TABLE_TOL: f64 = 1e-9;
const MAX_ATTEMPTS: usize = 16;

/// A function constant on conjugacy classes, stored per class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<C64>,
}

impl ClassFunction {
    pub fn new(values: Vec<C64>) -> Self {
        ClassFunction { values }
    }

    pub fn constant(classes: usize, v: C64) -> Self {
        ClassFunction { values: vec![v; classes] }
    }

    /// `(1/|G|) Σ_g self(g)·conj(other(g))`.
    pub fn inner(&self, other: &ClassFunction, g: &FiniteGroup) -> C64 {
        let conj = g.conjugacy();
        let s: C64 = (0..conj.len())
            .map(|k| self.values[k] * other.values[k].conj() * conj.class_size(k) as f64)
            .sum();
        s / g.order() as f64
    }

    pub fn product(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|z| z.conj()).collect() }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|z| z.im.abs() < tol)
    }

    pub fn max_abs_diff(&self, other: &ClassFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Value at the identity class.
    pub fn degree(&self) -> C64 {
        self.values[0]
    }
}

/// Irreducible characters of a group; row 0 is the trivial character.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    rows: Vec<ClassFunction>,
    degrees: Vec<usize>,
    conjugates: Vec<usize>,
}

impl CharacterTable {
    pub fn compute(g: &FiniteGroup, cap: usize, seed: u64) -> Result<Self> {
        if g.order() > cap {
            return Err(Error::OrderCapExceeded { order: g.order(), cap });
        }
        let class_mats = class_multiplication_matrices(g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last = String::new();
        for _ in 0..MAX_ATTEMPTS {
            let weights: Vec<f64> = (0..class_mats.len()).map(|_| rng.random::<f64>() + 0.5).collect();
            match attempt(g, &class_mats, &weights) {
                Ok(table) => return Ok(table),
                Err(msg) => last = msg,
            }
        }
        Err(Error::CharacterTable(last))
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Index of the complex-conjugate row of row `i`.
    pub fn conjugate_of(&self, i: usize) -> usize {
        self.conjugates[i]
    }

    /// Largest deviation of the row Gram matrix from the identity.
    pub fn orthonormality_error(&self, g: &FiniteGroup) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.inner(b, g) - target).norm());
            }
        }
        worst
    }

    /// Inner products `⟨χ, χ_i⟩` rounded to nonnegative integers.
    pub fn decompose(&self, chi: &ClassFunction, g: &FiniteGroup) -> Result<Vec<u128>> {
        self.rows.iter().map(|row| round_multiplicity(chi.inner(row, g))).collect()
    }
}

/// Rounds an inner product that must be a nonnegative integer.
pub fn round_multiplicity(z: C64) -> Result<u128> {
    let r = z.re.round();
    let scale = z.re.abs().max(1.0);
    if (z.re - r).abs() > 1e-6 * scale || z.im.abs() > 1e-6 * scale || r < 0.0 {
        return Err(Error::NonIntegerMultiplicity(z.re));
    }
    Ok(r as u128)
}

/// `mats[i][(j, k)] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}` for fixed `z_k ∈ C_k`.
fn class_multiplication_matrices(g: &FiniteGroup) -> Vec<DMatrix<f64>> {
    let conj = g.conjugacy();
    let r = conj.len();
    let mut mats = vec![DMatrix::<f64>::zeros(r, r); r];
    for k in 0..r {
        let z = conj.representative(k);
        for x in 0..g.order() {
            let i = conj.class_of(x);
            let j = conj.class_of(g.mul(g.inv(x), z));
            mats[i][(j, k)] += 1.0;
        }
    }
    mats
}

fn attempt(g: &FiniteGroup, mats: &[DMatrix<f64>], weights: &[f64]) -> std::result::Result<CharacterTable, String> {
    let conj = g.conjugacy();
    let r = conj.len();
    let mut m = DMatrix::<f64>::zeros(r, r);
    for (w, a) in weights.iter().zip(mats) {
        m += a * *w;
    }
    let scale = m.abs().max().max(1.0);
    let eigenvalues = m.complex_eigenvalues();
    for i in 0..r {
        for j in 0..i {
            if (eigenvalues[i] - eigenvalues[j]).norm() < 1e-6 * scale {
                return Err("repeated eigenvalue in random class-sum combination".into());
            }
        }
    }
    let mc: CMat = m.map(|x| C64::new(x, 0.0));
    let mut rows = Vec::with_capacity(r);
    for lambda in eigenvalues.iter() {
        let shifted = &mc - CMat::identity(r, r) * *lambda;
        let ns = null_space(&(shifted / C64::new(scale, 0.0)), 1e-9);
        if ns.len() != 1 {
            return Err(format!("eigenspace of dimension {}", ns.len()));
        }
        let w = &ns[0];
        if w[0].norm() < 1e-12 {
            return Err("central character vanishes at the identity".into());
        }
        let w: Vec<C64> = w.iter().map(|x| x / w[0]).collect();
        let norm: f64 = (0..r).map(|k| w[k].norm_sqr() / conj.class_size(k) as f64).sum();
        let degree_f = (g.order() as f64 / norm).sqrt();
        let degree = degree_f.round();
        if (degree - degree_f).abs() > 1e-6 {
            return Err(format!("non-integral degree {degree_f}"));
        }
        let values = (0..r).map(|k| w[k] * degree / conj.class_size(k) as f64).collect();
        rows.push((degree as usize, ClassFunction::new(values)));
    }
    // Canonical order: trivial, then by degree, then by rounded values.
    let key = |cf: &ClassFunction| -> Vec<(i64, i64)> {
        cf.values.iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect()
    };
    let is_trivial = |cf: &ClassFunction| cf.values.iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-6);
    rows.sort_by(|(da, a), (db, b)| {
        is_trivial(b).cmp(&is_trivial(a)).then(da.cmp(db)).then_with(|| key(b).cmp(&key(a)))
    });
    let degrees: Vec<usize> = rows.iter().map(|(d, _)| *d).collect();
    let rows: Vec<ClassFunction> = rows.into_iter().map(|(_, cf)| cf).collect();
    if !is_trivial(&rows[0]) {
        return Err("trivial character missing".into());
    }
    let conjugates = rows
        .iter()
        .map(|row| {
            let c = row.conj();
            rows.iter().position(|other| other.max_abs_diff(&c) < 1e-6).ok_or("row without conjugate")
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let table = CharacterTable { rows, degrees, conjugates };
    let err = table.orthonormality_error(g);
    if err > TABLE_TOL {
        return Err(format!("orthonormality error {err:.2e}"));
    }
    if table.degrees.iter().map(|d| d * d).sum::<usize>() != g.order() {
        return Err("sum of squared degrees differs from the group order".into());
    }
    Ok(table)
}
