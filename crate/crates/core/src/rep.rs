//! Ordinary and projective unitary representations.
//!
//! A projective representation `π` of a subgroup `H ≤ G` carries one unitary
//! matrix per element of `H` and the cocycle `c` defined by
//! `c(g,h)·π(g)·π(h) = π(gh)`. Ordinary representations are those with
//! `c ≡ 1`. Every representation is normalized so that `π(e) = 1`.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chartab::{round_multiplicity, CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::group::{linear_characters, FiniteGroup, LinearCharacter, Subgroup};
use crate::linalg::{
    identity, kron, max_abs_diff, null_space, polar_unitary, random_complex, scalar_value, singular_range,
    trace, unitarity_residual, unvectorize, CMat, C64, ONE,
};

/// Default equality tolerance for scalars and matrix entries.
pub const EPS: f64 = 1e-9;
/// Relative singular-value cutoff for null-space computations.
pub const NULL_TOL: f64 = 1e-8;

/// A `T`-valued 2-cocycle on a subgroup, indexed by element positions.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    n: usize,
    values: Vec<C64>,
}

impl Cocycle {
    pub fn trivial(n: usize) -> Self {
        Cocycle { n, values: vec![ONE; n * n] }
    }

    /// `c(g, h)` for element positions `i`, `j` in the domain.
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.values[i * self.n + j]
    }

    pub fn max_deviation_from_one(&self) -> f64 {
        self.values.iter().map(|z| (z - ONE).norm()).fold(0.0, f64::max)
    }

    pub fn is_trivial(&self, tol: f64) -> bool {
        self.max_deviation_from_one() < tol
    }

    pub fn conj(&self) -> Cocycle {
        Cocycle { n: self.n, values: self.values.iter().map(|z| z.conj()).collect() }
    }

    pub fn product(&self, other: &Cocycle) -> Cocycle {
        Cocycle { n: self.n, values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn max_abs_diff(&self, other: &Cocycle) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest violation of `c(g,h)c(gh,k) = c(g,hk)c(h,k)`.
    pub fn identity_residual(&self, g: &FiniteGroup, domain: &Subgroup) -> f64 {
        let pos = |x: usize| domain.position(x).expect("closed");
        let els = domain.elements();
        let mut worst = 0.0f64;
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                let ab = pos(g.mul(a, b));
                for (k, &c) in els.iter().enumerate() {
                    let bc = pos(g.mul(b, c));
                    let lhs = self.at(i, j) * self.at(ab, k);
                    let rhs = self.at(i, bc) * self.at(j, k);
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
        worst
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }
}

/// A normalized projective unitary representation of a subgroup.
#[derive(Clone, Debug)]
pub struct ProjectiveRep {
    group: Arc<FiniteGroup>,
    domain: Subgroup,
    dim: usize,
    matrices: Vec<CMat>,
    cocycle: Cocycle,
}

impl ProjectiveRep {
    /// Validates candidate matrices (one per domain element, in domain order):
    /// unitarity, projectivity and the cocycle identity. Returns the
    /// representation together with its recovered cocycle.
    pub fn new(group: Arc<FiniteGroup>, domain: Subgroup, mut matrices: Vec<CMat>, tol: f64) -> Result<Self> {
        if matrices.len() != domain.order() {
            return Err(Error::DimensionMismatch { expected: domain.order(), found: matrices.len() });
        }
        let dim = matrices.first().map_or(0, CMat::nrows);
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for (m, &x) in matrices.iter().zip(domain.elements()) {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::BadShape { element: group.label(x).into(), rows: m.nrows(), cols: m.ncols(), dim });
            }
            let residual = unitarity_residual(m);
            if residual > tol {
                return Err(Error::NotUnitary { element: group.label(x).into(), residual });
            }
        }
        let e_pos = domain.position(group.identity()).expect("subgroup contains e");
        match scalar_value(&matrices[e_pos], tol) {
            Some(_) => matrices[e_pos] = identity(dim),
            None => {
                let e = group.label(group.identity()).to_string();
                return Err(Error::NotProjective { g: e.clone(), h: e, residual: f64::NAN });
            }
        }
        let cocycle = recover_cocycle(&group, &domain, &matrices, tol)?;
        let residual = cocycle.identity_residual(&group, &domain);
        if residual > tol.max(1e-12) * 10.0 {
            return Err(Error::Residual { what: "cocycle identity".into(), value: residual, limit: tol * 10.0 });
        }
        Ok(ProjectiveRep { group, domain, dim, matrices, cocycle })
    }

    /// Builds a representation from generator images by breadth-first
    /// products `π(x·s) = π(x)·π(s)`, then validates it.
    pub fn from_generator_images(
        group: Arc<FiniteGroup>,
        images: &[(usize, CMat)],
        tol: f64,
    ) -> Result<Self> {
        let gens: Vec<usize> = images.iter().map(|(g, _)| *g).collect();
        let domain = Subgroup::generated_by(&group, &gens);
        let dim = images.first().map_or(1, |(_, m)| m.nrows());
        let mut mats: Vec<Option<CMat>> = vec![None; domain.order()];
        let e = group.identity();
        mats[domain.position(e).expect("e")] = Some(identity(dim));
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let mx = mats[domain.position(x).expect("closed")].clone().expect("visited");
            for (s, ms) in images {
                if ms.shape() != (dim, dim) {
                    return Err(Error::BadShape {
                        element: group.label(*s).into(),
                        rows: ms.nrows(),
                        cols: ms.ncols(),
                        dim,
                    });
                }
                let y = group.mul(x, *s);
                let slot = &mut mats[domain.position(y).expect("closed")];
                if slot.is_none() {
                    *slot = Some(&mx * ms);
                    queue.push_back(y);
                }
            }
        }
        let matrices = mats.into_iter().map(|m| m.expect("generated")).collect();
        Self::new(group, domain, matrices, tol)
    }

    /// Trusted constructor for matrices that are ordinary by construction.
    pub(crate) fn ordinary_unchecked(group: Arc<FiniteGroup>, domain: Subgroup, matrices: Vec<CMat>) -> Self {
        let n = domain.order();
        let dim = matrices[0].nrows();
        ProjectiveRep { group, domain, dim, matrices, cocycle: Cocycle::trivial(n) }
    }

    pub fn trivial(group: Arc<FiniteGroup>, domain: Subgroup) -> Self {
        let matrices = vec![identity(1); domain.order()];
        Self::ordinary_unchecked(group, domain, matrices)
    }

    pub fn from_linear_character(group: Arc<FiniteGroup>, domain: Subgroup, chi: &LinearCharacter) -> Self {
        let matrices = (0..domain.order()).map(|i| CMat::from_element(1, 1, chi.value(i))).collect();
        Self::ordinary_unchecked(group, domain, matrices)
    }

    /// Left-regular representation on `ℂ[G]`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let matrices = (0..n)
            .map(|g| {
                let mut m = CMat::zeros(n, n);
                for x in 0..n {
                    m[(group.mul(g, x), x)] = ONE;
                }
                m
            })
            .collect();
        let domain = Subgroup::whole(&group);
        Self::ordinary_unchecked(group, domain, matrices)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    /// Matrix of group element `x` (a `G` index).
    pub fn matrix(&self, x: usize) -> &CMat {
        &self.matrices[self.domain.position(x).expect("element outside the domain")]
    }

    pub fn is_ordinary(&self, tol: f64) -> bool {
        self.cocycle.is_trivial(tol)
    }

    fn same_domain(&self, other: &ProjectiveRep) -> Result<()> {
        if *self.group != *other.group || self.domain != other.domain {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Entrywise complex conjugate; its cocycle is `c̄`.
    pub fn conjugate(&self) -> ProjectiveRep {
        ProjectiveRep {
            group: self.group.clone(),
            domain: self.domain.clone(),
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| m.map(|z| z.conj())).collect(),
            cocycle: self.cocycle.conj(),
        }
    }

    /// Kronecker product; cocycles multiply.
    pub fn tensor(&self, other: &ProjectiveRep) -> Result<ProjectiveRep> {
        self.same_domain(other)?;
        Ok(ProjectiveRep {
            group: self.group.clone(),
            domain: self.domain.clone(),
            dim: self.dim * other.dim,
            matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| kron(a, b)).collect(),
            cocycle: self.cocycle.product(&other.cocycle),
        })
    }

    /// Block-diagonal sum; requires equal cocycles.
    pub fn direct_sum(&self, other: &ProjectiveRep, tol: f64) -> Result<ProjectiveRep> {
        self.same_domain(other)?;
        if self.cocycle.max_abs_diff(&other.cocycle) > tol {
            return Err(Error::NotProjective {
                g: "direct sum".into(),
                h: "summands with different cocycles".into(),
                residual: self.cocycle.max_abs_diff(&other.cocycle),
            });
        }
        Ok(ProjectiveRep {
            group: self.group.clone(),
            domain: self.domain.clone(),
            dim: self.dim + other.dim,
            matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| crate::linalg::block_diag(a, b)).collect(),
            cocycle: self.cocycle.clone(),
        })
    }

    /// Multiplies every matrix by a phase `mu(position)`; the cocycle picks up
    /// the corresponding coboundary.
    pub fn twisted(&self, mu: impl Fn(usize) -> C64, tol: f64) -> Result<ProjectiveRep> {
        let matrices = self.matrices.iter().enumerate().map(|(i, m)| m * mu(i)).collect();
        ProjectiveRep::new(self.group.clone(), self.domain.clone(), matrices, tol)
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, to: &Subgroup) -> Result<ProjectiveRep> {
        if !to.is_subset_of(&self.domain) {
            return Err(Error::NotASubgroup("restriction target is not inside the domain".into()));
        }
        let pos: Vec<usize> = to.elements().iter().map(|&x| self.domain.position(x).expect("subset")).collect();
        let n = to.order();
        let mut values = Vec::with_capacity(n * n);
        for &i in &pos {
            for &j in &pos {
                values.push(self.cocycle.at(i, j));
            }
        }
        Ok(ProjectiveRep {
            group: self.group.clone(),
            domain: to.clone(),
            dim: self.dim,
            matrices: pos.iter().map(|&i| self.matrices[i].clone()).collect(),
            cocycle: Cocycle { n, values },
        })
    }

    /// Replaces a numerically trivial cocycle by the exact trivial one.
    pub fn into_ordinary(mut self, tol: f64) -> Result<ProjectiveRep> {
        if !self.cocycle.is_trivial(tol) {
            return Err(Error::NontrivialCocycle);
        }
        self.cocycle = Cocycle::trivial(self.domain.order());
        Ok(self)
    }

    /// Conjugates every matrix by a unitary: `U π(g) U*`.
    pub fn conjugated_by(&self, u: &CMat) -> ProjectiveRep {
        let ua = u.adjoint();
        ProjectiveRep {
            group: self.group.clone(),
            domain: self.domain.clone(),
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| u * m * &ua).collect(),
            cocycle: self.cocycle.clone(),
        }
    }

    /// Largest entrywise distance between matching matrices.
    pub fn max_abs_diff(&self, other: &ProjectiveRep) -> Result<f64> {
        self.same_domain(other)?;
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(self.matrices.iter().zip(&other.matrices).map(|(a, b)| max_abs_diff(a, b)).fold(0.0, f64::max))
    }

    /// Trace per domain element.
    pub fn traces(&self) -> Vec<C64> {
        self.matrices.iter().map(trace).collect()
    }

    /// Character of an ordinary representation of the whole group.
    pub fn character(&self, tol: f64) -> Result<ClassFunction> {
        if self.domain.order() != self.group.order() {
            return Err(Error::NotWholeGroup);
        }
        if !self.is_ordinary(tol) {
            return Err(Error::NontrivialCocycle);
        }
        let conj = self.group.conjugacy();
        Ok(ClassFunction::new((0..conj.len()).map(|k| trace(self.matrix(conj.representative(k)))).collect()))
    }
}

fn recover_cocycle(group: &FiniteGroup, domain: &Subgroup, mats: &[CMat], tol: f64) -> Result<Cocycle> {
    let n = domain.order();
    let dim = mats[0].nrows() as f64;
    let els = domain.elements();
    let mut values = Vec::with_capacity(n * n);
    for (i, &a) in els.iter().enumerate() {
        for (j, &b) in els.iter().enumerate() {
            let ab = domain
                .position(group.mul(a, b))
                .ok_or_else(|| Error::NotASubgroup("matrix keys are not closed under products".into()))?;
            let prod = &mats[i] * &mats[j];
            let c = (&mats[ab] * prod.adjoint()).trace() / dim;
            let residual = max_abs_diff(&mats[ab], &(&prod * c)).max((c.norm() - 1.0).abs());
            if residual > tol {
                return Err(Error::NotProjective { g: group.label(a).into(), h: group.label(b).into(), residual });
            }
            values.push(c / c.norm());
        }
    }
    Ok(Cocycle { n, values })
}

/// Multiplicity of an irreducible character in an ordinary representation.
pub fn multiplicity(chi_irr: &ClassFunction, pi: &ProjectiveRep, tol: f64) -> Result<u128> {
    let chi = pi.character(tol)?;
    round_multiplicity(chi.inner(chi_irr, pi.group()))
}

/// Multiplicities of every irreducible of `table` in `pi`.
pub fn decompose(table: &CharacterTable, pi: &ProjectiveRep, tol: f64) -> Result<Vec<u128>> {
    let chi = pi.character(tol)?;
    table.decompose(&chi, pi.group())
}

/// Basis of `{X : X·a(g) = b(g)·X for all generators g}`.
fn intertwiners(a: &ProjectiveRep, b: &ProjectiveRep, scale_b: impl Fn(usize) -> C64) -> Vec<CMat> {
    let gens = a.group().generators_of(a.domain());
    let (m, n) = (b.dim(), a.dim());
    let unknowns = m * n;
    let rows = gens.len().max(1) * unknowns;
    let mut sys = CMat::zeros(rows, unknowns);
    for (t, &g) in gens.iter().enumerate() {
        let pa = a.matrix(g);
        let pos = b.domain().position(g).expect("same domain");
        let pb = b.matrix(g) * scale_b(pos);
        // vec(X A) = (Aᵀ ⊗ I) vec X,  vec(B X) = (I ⊗ B) vec X (column-major).
        let block = kron(&pa.transpose(), &identity(m)) - kron(&identity(n), &pb);
        sys.view_mut((t * unknowns, 0), (unknowns, unknowns)).copy_from(&block);
    }
    null_space(&sys, NULL_TOL).iter().map(|v| unvectorize(v, m, n)).collect()
}

/// Dimension of the commutant `{A : A π(g) = π(g) A}`.
pub fn commutant_dimension(pi: &ProjectiveRep) -> usize {
    intertwiners(pi, pi, |_| ONE).len()
}

/// `{g ∈ restrict_to : π(g) ∈ ℂ1}`.
pub fn projective_kernel(pi: &ProjectiveRep, restrict_to: &Subgroup, tol: f64) -> Result<Subgroup> {
    if !restrict_to.is_subset_of(pi.domain()) {
        return Err(Error::NotASubgroup("projective kernel target is not inside the domain".into()));
    }
    let els = restrict_to.elements().iter().copied().filter(|&x| scalar_value(pi.matrix(x), tol).is_some());
    Subgroup::new(pi.group(), els)
}

/// Outcome of an equivalence test between two representations with equal cocycles.
#[derive(Clone, Debug)]
pub struct Equivalence {
    /// Unitary `U` with `U π₁(g) U* = π₂(g)`.
    pub strict: Option<CMat>,
    /// A linear character `μ` (index into `linear_characters` of the domain)
    /// and unitary with `U π₁(g) U* = μ(g) π₂(g)`; tried only when no strict
    /// witness exists.
    pub twisted: Option<(usize, CMat)>,
}

impl Equivalence {
    pub fn is_strict(&self) -> bool {
        self.strict.is_some()
    }

    pub fn is_equivalent(&self) -> bool {
        self.strict.is_some() || self.twisted.is_some()
    }
}

fn invertible_witness(basis: &[CMat], seed: u64) -> Option<CMat> {
    if basis.is_empty() || basis[0].nrows() != basis[0].ncols() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 {
        let mut x = CMat::zeros(basis[0].nrows(), basis[0].ncols());
        for b in basis {
            x += b * random_complex(&mut rng);
        }
        let (smin, smax) = singular_range(&x);
        if smax > 0.0 && smin > 1e-6 * smax {
            return Some(polar_unitary(&x));
        }
    }
    None
}

/// Strict equivalence (`μ ≡ 1`), falling back to twists by the degree-one
/// characters of the domain.
pub fn strictly_equivalent(p1: &ProjectiveRep, p2: &ProjectiveRep, tol: f64, seed: u64) -> Result<Equivalence> {
    p1.same_domain(p2)?;
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch { expected: p1.dim(), found: p2.dim() });
    }
    let none = Equivalence { strict: None, twisted: None };
    if p1.cocycle().max_abs_diff(p2.cocycle()) > tol {
        return Ok(none);
    }
    if let Some(u) = invertible_witness(&intertwiners(p1, p2, |_| ONE), seed) {
        return Ok(Equivalence { strict: Some(u), twisted: None });
    }
    let chars = linear_characters(p1.group(), p1.domain())?;
    for (idx, mu) in chars.iter().enumerate().skip(1) {
        if let Some(u) = invertible_witness(&intertwiners(p1, p2, |pos| mu.value(pos)), seed) {
            return Ok(Equivalence { strict: None, twisted: Some((idx, u)) });
        }
    }
    Ok(none)
}

/// Witness of projective equivalence: `U π₁(g) U* = μ(g) π₂(g)` for all `g`.
#[derive(Clone, Debug)]
pub struct ProjectiveEquivalence {
    pub unitary: CMat,
    /// `μ` per domain position.
    pub mu: Vec<C64>,
}

/// Projective equivalence with an arbitrary phase function `μ`.
///
/// On a generator `s` of order `o`, both `π₁(s)^o` and `π₂(s)^o` are scalars,
/// so `μ(s)` must be an `o`-th root of their ratio. The finitely many
/// assignments on generators are tried in turn.
pub fn projectively_equivalent(
    p1: &ProjectiveRep,
    p2: &ProjectiveRep,
    tol: f64,
    seed: u64,
) -> Result<Option<ProjectiveEquivalence>> {
    p1.same_domain(p2)?;
    if p1.dim() != p2.dim() {
        return Ok(None);
    }
    let g = p1.group().clone();
    let gens = g.generators_of(p1.domain());
    let mut candidates: Vec<Vec<C64>> = Vec::new();
    for &s in &gens {
        let o = g.element_order(s);
        let power = |m: &CMat| (0..o).fold(identity(m.nrows()), |acc, _| acc * m);
        let l1 = scalar_value(&power(p1.matrix(s)), 1e-6).ok_or(Error::Degenerate("π(s)^o not scalar".into()))?;
        let l2 = scalar_value(&power(p2.matrix(s)), 1e-6).ok_or(Error::Degenerate("π(s)^o not scalar".into()))?;
        let base = (l1 / l2).powf(1.0 / o as f64);
        candidates.push(
            (0..o)
                .map(|j| base * C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / o as f64))
                .collect(),
        );
    }
    let total: usize = candidates.iter().map(Vec::len).product();
    const MAX_ASSIGNMENTS: usize = 1 << 16;
    if total > MAX_ASSIGNMENTS {
        return Err(Error::Degenerate(format!("{total} phase assignments to test")));
    }
    for code in 0..total {
        let mut rest = code;
        let mut mu_gen = Vec::with_capacity(gens.len());
        for c in &candidates {
            mu_gen.push(c[rest % c.len()]);
            rest /= c.len();
        }
        let scale = |pos: usize| {
            let x = p2.domain().elements()[pos];
            gens.iter().position(|&s| s == x).map_or(ONE, |i| mu_gen[i])
        };
        if let Some(u) = invertible_witness(&intertwiners(p1, p2, scale), seed) {
            let ua = u.adjoint();
            let d = p1.dim() as f64;
            let mu: Vec<C64> = p1
                .domain()
                .elements()
                .iter()
                .map(|&x| (&u * p1.matrix(x) * &ua * p2.matrix(x).adjoint()).trace() / d)
                .collect();
            let ok = p1.domain().elements().iter().zip(&mu).all(|(&x, &m)| {
                max_abs_diff(&(&u * p1.matrix(x) * &ua), &(p2.matrix(x) * m)) < tol.max(1e-8) * 100.0
            });
            if ok {
                return Ok(Some(ProjectiveEquivalence { unitary: u, mu }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::DEFAULT_MAX_ORDER;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], DEFAULT_MAX_ORDER).unwrap())
    }

    #[test]
    fn ordinary_rep_has_trivial_cocycle() {
        let g = s3();
        let reg = ProjectiveRep::regular(g.clone());
        let v = ProjectiveRep::new(g, reg.domain().clone(), reg.matrices().to_vec(), EPS).unwrap();
        assert!(v.cocycle().is_trivial(EPS));
    }

    #[test]
    fn pauli_cocycle_value() {
        let (g, psi) = fixtures::pauli();
        let a = g.element_by_label("a").unwrap();
        let b = g.element_by_label("b").unwrap();
        let (ia, ib) = (psi.domain().position(a).unwrap(), psi.domain().position(b).unwrap());
        let c = psi.cocycle().at(ia, ib);
        assert!((c - C64::new(0.0, -1.0)).norm() < 1e-12, "c = {c}");
        assert!(!psi.is_ordinary(EPS));
    }

    #[test]
    fn perturbed_matrix_is_not_projective() {
        let (g, psi) = fixtures::pauli();
        let mut mats = psi.matrices().to_vec();
        mats[1][(0, 1)] += C64::new(1e-3, 0.0);
        let err = ProjectiveRep::new(g, psi.domain().clone(), mats, EPS).unwrap_err();
        assert!(matches!(err, Error::NotProjective { .. } | Error::NotUnitary { .. }));
    }

    #[test]
    fn pauli_bar_tensor_pauli_is_regular() {
        let (g, psi) = fixtures::pauli();
        let t = psi.conjugate().tensor(&psi).unwrap();
        assert!(t.is_ordinary(1e-12));
        let chi = t.character(EPS).unwrap();
        assert!((chi.values[0] - C64::new(4.0, 0.0)).norm() < 1e-12);
        for z in &chi.values[1..] {
            assert!(z.norm() < 1e-12);
        }
        let table = CharacterTable::compute(&g, 128, 0).unwrap();
        assert_eq!(multiplicity(&table.rows()[0], &t, EPS).unwrap(), 1);
    }

    #[test]
    fn tensor_of_sign_characters() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let chars = linear_characters(&g, &Subgroup::whole(&g)).unwrap();
        let sign = ProjectiveRep::from_linear_character(g.clone(), Subgroup::whole(&g), &chars[1]);
        let sq = sign.tensor(&sign).unwrap();
        assert!(sq.character(EPS).unwrap().max_abs_diff(&ClassFunction::constant(2, ONE)) < 1e-12);
        assert_eq!(commutant_dimension(&ProjectiveRep::regular(g)), 2);
    }

    #[test]
    fn regular_multiplicities_s3() {
        let g = s3();
        let table = CharacterTable::compute(&g, 128, 0).unwrap();
        let reg = ProjectiveRep::regular(g.clone());
        assert_eq!(multiplicity(&table.rows()[0], &reg, EPS).unwrap(), 1);
        assert_eq!(multiplicity(&table.rows()[2], &reg, EPS).unwrap(), 2);
        assert_eq!(commutant_dimension(&reg), 6);
    }

    #[test]
    fn pauli_commutant_and_kernel() {
        let (g, psi) = fixtures::pauli();
        assert_eq!(commutant_dimension(&psi), 1);
        assert!(projective_kernel(&psi, &Subgroup::whole(&g), EPS).unwrap().is_trivial());
    }

    #[test]
    fn degree_one_projective_kernel_is_everything() {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let whole = Subgroup::whole(&g);
        let chars = linear_characters(&g, &whole).unwrap();
        let faithful = chars.iter().find(|c| c.kernel_positions().len() == 1).unwrap();
        let pi = ProjectiveRep::from_linear_character(g.clone(), whole.clone(), faithful);
        assert_eq!(projective_kernel(&pi, &whole, EPS).unwrap(), whole);
        let triv = ProjectiveRep::trivial(g, whole.clone());
        assert_eq!(projective_kernel(&triv, &whole, EPS).unwrap(), whole);
    }

    #[test]
    fn equivalence_examples() {
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let whole = Subgroup::whole(&z3);
        let chars = linear_characters(&z3, &whole).unwrap();
        let a = ProjectiveRep::from_linear_character(z3.clone(), whole.clone(), &chars[1]);
        let b = ProjectiveRep::from_linear_character(z3.clone(), whole.clone(), &chars[2]);
        let eq = strictly_equivalent(&a, &b, EPS, 0).unwrap();
        assert!(!eq.is_strict());
        assert!(eq.twisted.is_some());
        let same = strictly_equivalent(&a, &a, EPS, 0).unwrap();
        let u = same.strict.as_ref().unwrap();
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-12);

        let s3 = s3();
        let whole = Subgroup::whole(&s3);
        let chars = linear_characters(&s3, &whole).unwrap();
        let triv = ProjectiveRep::from_linear_character(s3.clone(), whole.clone(), &chars[0]);
        let sign = ProjectiveRep::from_linear_character(s3.clone(), whole.clone(), &chars[1]);
        let eq = strictly_equivalent(&triv, &sign, EPS, 0).unwrap();
        assert!(!eq.is_strict());
        // Twisting by the sign character itself carries trivial to sign.
        assert!(eq.twisted.is_some());
    }

    #[test]
    fn projective_equivalence_detects_rephased_pauli() {
        let (_, psi) = fixtures::pauli();
        let phases = [ONE, C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::from_polar(1.0, 0.3)];
        let twisted = psi.twisted(|i| phases[i], EPS).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = crate::linalg::random_unitary(&mut rng, 2);
        let moved = twisted.conjugated_by(&u);
        assert!(!strictly_equivalent(&psi, &moved, EPS, 0).unwrap().is_equivalent());
        let w = projectively_equivalent(&psi, &moved, EPS, 0).unwrap().expect("equivalent");
        assert!(unitarity_residual(&w.unitary) < 1e-9);
    }
}
