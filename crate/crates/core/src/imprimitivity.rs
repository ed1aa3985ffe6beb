//! Systems of imprimitivity: from an ordinary representation `σ` of `G` and
//! an `Ad σ`-invariant *-subalgebra `B ⊂ L(ℂ^m)` whose center carries a
//! transitive action, recover `H`, `ρ`, `ψ` and a unitary `U` with
//! `U σ(g) U* = ind(ρ ⊗ ψ)(g)`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{CosetSystem, FiniteGroup, Subgroup};
use crate::induction::induce;
use crate::linalg::{
    cluster_sorted, hermitian_eigen, identity, kron, max_abs_diff, null_space, random_complex, unvectorize,
    vectorize, CMat, CVec, Subspace, C64, ONE,
};
use crate::rep::{ProjectiveRep, NULL_TOL};

/// Tolerance for span membership of vectorized matrices.
const SPAN_TOL: f64 = 1e-8;
/// Eigenvalue clustering tolerance for splitting off projections.
pub const CLUSTER_TOL: f64 = 1e-7;
/// Largest accepted residual in the recovered decomposition.
pub const RESIDUAL_LIMIT: f64 = 1e-6;
const ATTEMPTS: u64 = 8;

/// A unital *-subalgebra of `L(ℂ^m)`, kept as an orthonormal basis in the
/// Hilbert–Schmidt inner product.
#[derive(Clone, Debug)]
pub struct MatrixStarAlgebra {
    m: usize,
    span: Subspace,
    basis: Vec<CMat>,
    /// Dimension of the span of the matrices it was generated from.
    pub spanning_dim: usize,
    pub contains_identity: bool,
}

impl MatrixStarAlgebra {
    /// The *-algebra generated by `spanning` and the identity.
    ///
    /// Closure is reached when the product of two random elements stays
    /// in the span; such a product leaves the span with probability one
    /// if the span is not yet multiplicatively closed.
    pub fn generate(m: usize, spanning: &[CMat], seed: u64) -> Result<Self> {
        for x in spanning {
            if x.shape() != (m, m) {
                return Err(Error::DimensionMismatch { expected: m, found: x.nrows() });
            }
        }
        let mut span = Subspace::new(m * m);
        for x in spanning {
            span.insert(&vectorize(x), SPAN_TOL);
            span.insert(&vectorize(&x.adjoint()), SPAN_TOL);
        }
        let spanning_dim = span.dim();
        let had_identity = span.contains(&vectorize(&identity(m)), SPAN_TOL);
        span.insert(&vectorize(&identity(m)), SPAN_TOL);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut quiet = 0;
        while quiet < 3 {
            let a = random_in(&span, m, &mut rng);
            let b = random_in(&span, m, &mut rng);
            let c = &a * &b;
            let grew = span.insert(&vectorize(&c), SPAN_TOL);
            span.insert(&vectorize(&c.adjoint()), SPAN_TOL);
            quiet = if grew { 0 } else { quiet + 1 };
        }
        let basis = span.basis().iter().map(|v| unvectorize(v, m, m)).collect();
        Ok(MatrixStarAlgebra { m, span, basis, spanning_dim, contains_identity: had_identity })
    }

    pub fn scalars(m: usize) -> Self {
        Self::generate(m, &[], 0).expect("identity spans an algebra")
    }

    pub fn full(m: usize) -> Self {
        let units: Vec<CMat> = (0..m * m).map(|k| unit(m, k / m, k % m)).collect();
        Self::generate(m, &units, 0).expect("matrix units span an algebra")
    }

    pub fn diagonal(m: usize) -> Self {
        let units: Vec<CMat> = (0..m).map(|k| unit(m, k, k)).collect();
        Self::generate(m, &units, 0).expect("diagonal units span an algebra")
    }

    pub fn ambient(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    pub fn contains(&self, x: &CMat) -> bool {
        x.shape() == (self.m, self.m) && self.span.contains(&vectorize(x), SPAN_TOL * 100.0)
    }

    /// `u B u*` for a unitary `u`.
    pub fn conjugated_by(&self, u: &CMat) -> Result<Self> {
        let mats: Vec<CMat> = self.basis.iter().map(|b| u * b * u.adjoint()).collect();
        Self::generate(self.m, &mats, 0)
    }

    /// Orthonormal basis of the center `Z_B`.
    ///
    /// An element of `B` is central when it commutes with two random
    /// elements, which generically generate `B`.
    pub fn center(&self, seed: u64) -> Vec<CMat> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let probes = [random_in(&self.span, self.m, &mut rng), random_in(&self.span, self.m, &mut rng)];
        let mm = self.m * self.m;
        let mut sys = CMat::zeros(2 * mm, self.dim());
        for (i, b) in self.basis.iter().enumerate() {
            for (t, a) in probes.iter().enumerate() {
                let c = b * a - a * b;
                sys.view_mut((t * mm, i), (mm, 1)).copy_from(&vectorize(&c));
            }
        }
        let mut z = Subspace::new(mm);
        for coeffs in null_space(&sys, NULL_TOL) {
            z.insert(&vectorize(&combine(&self.basis, coeffs.as_slice())), SPAN_TOL);
        }
        z.basis().iter().map(|v| unvectorize(v, self.m, self.m)).collect()
    }
}

fn unit(m: usize, i: usize, j: usize) -> CMat {
    let mut e = CMat::zeros(m, m);
    e[(i, j)] = ONE;
    e
}

fn combine(mats: &[CMat], coeffs: &[C64]) -> CMat {
    let mut out = CMat::zeros(mats[0].nrows(), mats[0].ncols());
    for (c, x) in coeffs.iter().zip(mats) {
        out += x * *c;
    }
    out
}

fn random_in(span: &Subspace, m: usize, rng: &mut ChaCha8Rng) -> CMat {
    let mut v = CVec::zeros(m * m);
    for b in span.basis() {
        v.axpy(random_complex(rng), b, ONE);
    }
    unvectorize(&v, m, m)
}

fn random_hermitian(mats: &[CMat], rng: &mut ChaCha8Rng) -> CMat {
    let coeffs: Vec<C64> = mats.iter().map(|_| random_complex(rng)).collect();
    let x = combine(mats, &coeffs);
    (&x + x.adjoint()) * C64::new(0.5, 0.0)
}

fn check_dims(b: &MatrixStarAlgebra, sigma: &ProjectiveRep) -> Result<()> {
    if b.ambient() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: sigma.dim(), found: b.ambient() });
    }
    if sigma.domain().order() != sigma.group().order() {
        return Err(Error::NotWholeGroup);
    }
    Ok(())
}

/// True when `σ(g) B σ(g)* = B` for every `g`. Checking generators of `G`
/// suffices, and inclusion implies equality since conjugation is injective.
pub fn invariant_check(b: &MatrixStarAlgebra, sigma: &ProjectiveRep) -> Result<bool> {
    check_dims(b, sigma)?;
    let g = sigma.group();
    for s in g.generators_of(&Subgroup::whole(g)) {
        let u = sigma.matrix(s);
        if !b.basis().iter().all(|x| b.contains(&(u * x * u.adjoint()))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the `Ad σ`-fixed part of `Z_B`.
pub fn fixed_center_dim(b: &MatrixStarAlgebra, sigma: &ProjectiveRep, seed: u64) -> Result<usize> {
    check_dims(b, sigma)?;
    let g = sigma.group();
    let z = b.center(seed);
    let gens = g.generators_of(&Subgroup::whole(g));
    if gens.is_empty() {
        return Ok(z.len());
    }
    let mm = b.ambient() * b.ambient();
    let mut sys = CMat::zeros(gens.len() * mm, z.len());
    for (i, zi) in z.iter().enumerate() {
        for (t, &s) in gens.iter().enumerate() {
            let u = sigma.matrix(s);
            let d = u * zi * u.adjoint() - zi;
            sys.view_mut((t * mm, i), (mm, 1)).copy_from(&vectorize(&d));
        }
    }
    Ok(null_space(&sys, NULL_TOL).len())
}

/// True when the `Ad σ`-fixed elements of `Z_B` are the scalars.
pub fn is_factor_correspondence(b: &MatrixStarAlgebra, sigma: &ProjectiveRep, seed: u64) -> Result<bool> {
    if !invariant_check(b, sigma)? {
        return Err(Error::NotInvariant);
    }
    Ok(fixed_center_dim(b, sigma, seed)? == 1)
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    pub tol: f64,
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { tol: 1e-9, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct ImprimitivitySystem {
    pub sigma: ProjectiveRep,
    pub algebra_dim: usize,
    pub center_dim: usize,
    /// Minimal central projections; `projections[0]` is `p₁`.
    pub projections: Vec<CMat>,
    /// `action[g][j]` = index of `σ(g) p_j σ(g)*`.
    pub action: Vec<Vec<usize>>,
    pub stabilizer: Subgroup,
    pub cosets: CosetSystem,
    pub d: usize,
    pub r: usize,
    pub rho: ProjectiveRep,
    pub psi: ProjectiveRep,
    /// `ρ ⊗ ψ` as an ordinary representation of `H`.
    pub pi: ProjectiveRep,
    pub u: CMat,
    /// `max_g ‖U σ(g) U* − ind(ρ⊗ψ)(g)‖_max`.
    pub residual: f64,
    /// `max_h ‖π(h) − ρ(h) ⊗ ψ(h)‖_max` on the first block.
    pub factor_residual: f64,
}

/// Orthonormal basis of the range of a projection, picking columns with
/// the largest remaining norm first so that coordinate projections give
/// coordinate vectors.
fn range_basis(p: &CMat, rank: usize) -> Result<CMat> {
    let n = p.nrows();
    let mut span = Subspace::new(n);
    while span.dim() < rank {
        let best = (0..n)
            .map(|j| (j, span.residual(&p.column(j).into_owned()).norm()))
            .fold((usize::MAX, 0.0), |acc, (j, r)| if r > acc.1 + 1e-12 { (j, r) } else { acc });
        if best.0 == usize::MAX || best.1 < 1e-6 {
            return Err(Error::Degenerate("projection of lower rank than its trace".into()));
        }
        span.insert(&p.column(best.0).into_owned(), 0.0);
    }
    let mut w = CMat::zeros(n, rank);
    for (k, v) in span.basis().iter().enumerate() {
        w.set_column(k, v);
    }
    Ok(w)
}

/// Spectral projections of a Hermitian matrix, one per eigenvalue cluster,
/// with their ranks.
fn spectral_projections(h: &CMat) -> Vec<(CMat, usize)> {
    let (vals, vecs) = hermitian_eigen(h);
    let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1e-300);
    let normalized: Vec<f64> = vals.iter().map(|v| v / scale).collect();
    cluster_sorted(&normalized, CLUSTER_TOL)
        .into_iter()
        .map(|range| {
            let v = vecs.columns(range.start, range.len()).into_owned();
            (&v * v.adjoint(), range.len())
        })
        .collect()
}

fn diagonal_key(p: &CMat) -> Vec<i64> {
    (0..p.nrows()).map(|i| -(p[(i, i)].re * 1e6).round() as i64).collect()
}

/// Minimal central projections from one random central Hermitian element.
fn central_projections(b: &MatrixStarAlgebra, center: &[CMat], rng: &mut ChaCha8Rng) -> Result<Vec<(CMat, usize)>> {
    let h = random_hermitian(center, rng);
    let mut projs = spectral_projections(&h);
    if projs.len() != center.len() {
        return Err(Error::Degenerate(format!(
            "random central element split into {} projections, center has dimension {}",
            projs.len(),
            center.len()
        )));
    }
    for (p, _) in &projs {
        if !b.contains(p) {
            return Err(Error::Degenerate("spectral projection is not in the algebra".into()));
        }
    }
    projs.sort_by_key(|(a, _)| diagonal_key(a));
    Ok(projs)
}

fn find_projection(projs: &[(CMat, usize)], x: &CMat) -> Option<usize> {
    projs.iter().position(|(p, _)| max_abs_diff(p, x) < 1e-6)
}

/// Permutation action of every group element on the projections.
fn projection_action(sigma: &ProjectiveRep, projs: &[(CMat, usize)]) -> Result<Vec<Vec<usize>>> {
    let g = sigma.group();
    let gens = g.generators_of(&Subgroup::whole(g));
    let mut gen_perm = Vec::new();
    for &s in &gens {
        let u = sigma.matrix(s);
        let perm = projs
            .iter()
            .map(|(p, _)| find_projection(projs, &(u * p * u.adjoint())).ok_or(Error::NotInvariant))
            .collect::<Result<Vec<_>>>()?;
        gen_perm.push(perm);
    }
    // action(x·s)(j) = action(x)(action(s)(j)).
    let mut action: Vec<Option<Vec<usize>>> = vec![None; g.order()];
    action[g.identity()] = Some((0..projs.len()).collect());
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (s, perm) in gens.iter().zip(&gen_perm) {
            let y = g.mul(x, *s);
            if action[y].is_none() {
                let ax = action[x].as_ref().expect("visited");
                action[y] = Some(perm.iter().map(|&j| ax[j]).collect());
                queue.push(y);
            }
        }
    }
    Ok(action.into_iter().map(|a| a.expect("generators generate")).collect())
}

/// Best approximation `x ≈ a ⊗ b` with `a` of size `d`, `b` of size `r`,
/// `a` scaled to Frobenius norm `√d` and gauged so that its first entry of
/// modulus above `tol` is positive real.
fn kron_factor(x: &CMat, d: usize, r: usize, tol: f64) -> Result<(CMat, CMat)> {
    // For x = A ⊗ B the blocks are x_ab = A_ab B; project every block onto
    // the largest one.
    let block = |a: usize, b: usize| x.view((a * r, b * r), (r, r)).into_owned();
    let (mut best, mut best_norm) = ((0, 0), 0.0);
    for a in 0..d {
        for b in 0..d {
            let n = block(a, b).norm();
            if n > best_norm {
                (best, best_norm) = ((a, b), n);
            }
        }
    }
    if best_norm <= tol {
        return Err(Error::Degenerate("vanishing Kronecker factor".into()));
    }
    let b0 = block(best.0, best.1);
    let b0_sq = C64::new(best_norm * best_norm, 0.0);
    let mut a = CMat::from_fn(d, d, |i, j| b0.dotc(&block(i, j)) / b0_sq);
    a *= C64::new((d as f64).sqrt() / a.norm(), 0.0);
    let pivot = (0..d * d)
        .map(|k| a[(k / d, k % d)])
        .find(|z| z.norm() > tol)
        .ok_or(Error::Degenerate("vanishing Kronecker factor".into()))?;
    a *= pivot.conj() / pivot.norm();
    // B = (1/d) Σ_ab conj(A_ab) x_ab.
    let mut bmat = CMat::zeros(r, r);
    for ai in 0..d {
        for bi in 0..d {
            bmat += block(ai, bi) * a[(ai, bi)].conj();
        }
    }
    bmat /= C64::new(d as f64, 0.0);
    Ok((a, bmat))
}

/// Recovers `(H, ρ, ψ, U)` from `σ` and an invariant algebra `B`.
pub fn decompose(sigma: &ProjectiveRep, b: &MatrixStarAlgebra, opts: &DecomposeOptions) -> Result<ImprimitivitySystem> {
    if !sigma.is_ordinary(opts.tol.max(1e-9)) {
        return Err(Error::NontrivialCocycle);
    }
    if !invariant_check(b, sigma)? {
        return Err(Error::NotInvariant);
    }
    let mut last = Error::Degenerate("no attempt made".into());
    for attempt in 0..ATTEMPTS {
        match decompose_once(sigma, b, opts, opts.seed.wrapping_add(attempt)) {
            Ok(sys) => return Ok(sys),
            Err(e @ Error::Degenerate(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn decompose_once(
    sigma: &ProjectiveRep,
    b: &MatrixStarAlgebra,
    opts: &DecomposeOptions,
    seed: u64,
) -> Result<ImprimitivitySystem> {
    let g: &Arc<FiniteGroup> = sigma.group();
    let m = sigma.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = b.center(seed);
    let projs = central_projections(b, &center, &mut rng)?;
    let action = projection_action(sigma, &projs)?;
    let mut orbit = vec![false; projs.len()];
    for perm in &action {
        orbit[perm[0]] = true;
    }
    if orbit.iter().any(|&o| !o) {
        return Err(Error::NotFactor);
    }
    let stabilizer = Subgroup::new(g, (0..g.order()).filter(|&x| action[x][0] == 0))?;
    let cosets = CosetSystem::new(g, &stabilizer)?;

    // The first block: p₁ B p₁ ≅ L(ℂ^d) ⊗ 1_r on a space of dimension d·r.
    let (p1, rank) = &projs[0];
    let w = range_basis(p1, *rank)?;
    let compressed: Vec<CMat> = b.basis().iter().map(|x| w.adjoint() * x * &w).collect();
    let mut block_span = Subspace::new(rank * rank);
    for x in &compressed {
        // Compressions of the other blocks vanish up to rounding.
        if x.norm() > SPAN_TOL {
            block_span.insert(&vectorize(x), SPAN_TOL);
        }
    }
    let block_basis: Vec<CMat> = block_span.basis().iter().map(|v| unvectorize(v, *rank, *rank)).collect();
    let d = (block_basis.len() as f64).sqrt().round() as usize;
    if d * d != block_basis.len() || rank % d != 0 {
        return Err(Error::Degenerate(format!("p₁Bp₁ has dimension {}, not a full matrix algebra", block_basis.len())));
    }
    let r = rank / d;

    // Matrix units: minimal projections q_a and partial isometries v_a: q₁ → q_a.
    let mut qs = spectral_projections(&random_hermitian(&block_basis, &mut rng));
    if qs.len() != d || qs.iter().any(|(_, k)| *k != r) {
        return Err(Error::Degenerate("random element of p₁Bp₁ has a repeated eigenvalue".into()));
    }
    qs.sort_by_key(|(a, _)| diagonal_key(a));
    let coeffs: Vec<C64> = block_basis.iter().map(|_| random_complex(&mut rng)).collect();
    let y = combine(&block_basis, &coeffs);
    let q1 = &qs[0].0;
    let f = range_basis(q1, r)?;
    let mut adapted = CMat::zeros(*rank, *rank);
    for (a, (qa, _)) in qs.iter().enumerate() {
        let v = if a == 0 {
            q1.clone()
        } else {
            let raw = qa * &y * q1;
            let n = (raw.adjoint() * &raw).trace().re / r as f64;
            if n < 1e-10 {
                return Err(Error::Degenerate("vanishing matrix unit".into()));
            }
            raw / C64::new(n.sqrt(), 0.0)
        };
        let cols = &v * &f;
        for s in 0..r {
            adapted.set_column(a * r + s, &cols.column(s));
        }
    }
    let w_adapted = &w * adapted;

    let tol = opts.tol.max(1e-12);
    let mut rhos = Vec::with_capacity(stabilizer.order());
    let mut psis = Vec::with_capacity(stabilizer.order());
    let mut pis = Vec::with_capacity(stabilizer.order());
    let mut factor_residual = 0.0f64;
    for &h in stabilizer.elements() {
        let pi_h = w_adapted.adjoint() * sigma.matrix(h) * &w_adapted;
        let (rho_h, psi_h) = kron_factor(&pi_h, d, r, 1e-6)?;
        factor_residual = factor_residual.max(max_abs_diff(&pi_h, &kron(&rho_h, &psi_h)));
        rhos.push(rho_h);
        psis.push(psi_h);
        pis.push(pi_h);
    }
    if factor_residual > RESIDUAL_LIMIT {
        return Err(Error::Residual { what: "ρ ⊗ ψ factorization".into(), value: factor_residual, limit: RESIDUAL_LIMIT });
    }
    let rep_tol = RESIDUAL_LIMIT.max(tol);
    let rho = ProjectiveRep::new(g.clone(), stabilizer.clone(), rhos, rep_tol)?;
    let psi = ProjectiveRep::new(g.clone(), stabilizer.clone(), psis, rep_tol)?;
    let cocycle_gap = rho.cocycle().max_abs_diff(&psi.cocycle().conj());
    if cocycle_gap > RESIDUAL_LIMIT {
        return Err(Error::Residual { what: "cocycle conjugacy of ρ and ψ".into(), value: cocycle_gap, limit: RESIDUAL_LIMIT });
    }
    let pi = ProjectiveRep::new(g.clone(), stabilizer.clone(), pis, rep_tol)?.into_ordinary(rep_tol)?;

    // U* e_{α·l + j} = σ(k_j) W' e_α.
    let l = cosets.index();
    let mut u_star = CMat::zeros(m, m);
    for (j, &k) in cosets.reps().iter().enumerate() {
        let cols = sigma.matrix(k) * &w_adapted;
        for alpha in 0..*rank {
            u_star.set_column(alpha * l + j, &cols.column(alpha));
        }
    }
    let u = u_star.adjoint();
    let induced = induce(&pi, &cosets, rep_tol)?;
    let residual = (0..g.order())
        .map(|x| max_abs_diff(&(&u * sigma.matrix(x) * &u_star), induced.total.matrix(x)))
        .fold(0.0, f64::max);
    if residual > RESIDUAL_LIMIT {
        return Err(Error::Residual { what: "U σ U* = ind(ρ⊗ψ)".into(), value: residual, limit: RESIDUAL_LIMIT });
    }
    Ok(ImprimitivitySystem {
        sigma: sigma.clone(),
        algebra_dim: b.dim(),
        center_dim: center.len(),
        projections: projs.into_iter().map(|(p, _)| p).collect(),
        action,
        stabilizer,
        cosets,
        d,
        r,
        rho,
        psi,
        pi,
        u,
        residual,
        factor_residual,
    })
}

/// `L(ℂ^d) ⊗ 1_r ⊗ ℓ^∞(G/H)` in the basis of `ind(ρ⊗ψ)`, index
/// `(a·r + s)·l + j`.
pub fn coset_algebra(d: usize, r: usize, l: usize) -> MatrixStarAlgebra {
    let m = d * r * l;
    let mut gens = Vec::with_capacity(d * d * l);
    for a in 0..d {
        for b in 0..d {
            for j in 0..l {
                let mut e = CMat::zeros(m, m);
                for s in 0..r {
                    e[((a * r + s) * l + j, (b * r + s) * l + j)] = ONE;
                }
                gens.push(e);
            }
        }
    }
    MatrixStarAlgebra::generate(m, &gens, 0).expect("matrix units span an algebra")
}

/// Serializable summary of an [`ImprimitivitySystem`].
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub schema: u64,
    pub dim: usize,
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub projections: usize,
    pub stabilizer: Vec<String>,
    pub coset_reps: Vec<String>,
    pub d: usize,
    pub r: usize,
    pub rho: crate::io::RepJson,
    pub psi: crate::io::RepJson,
    pub residual: f64,
    pub factor_residual: f64,
    pub u: Vec<Vec<[f64; 2]>>,
}

impl ImprimitivitySystem {
    pub fn report(&self, tol: f64) -> DecompositionReport {
        let g = self.sigma.group();
        DecompositionReport {
            schema: crate::io::SCHEMA_VERSION,
            dim: self.sigma.dim(),
            algebra_dim: self.algebra_dim,
            center_dim: self.center_dim,
            projections: self.projections.len(),
            stabilizer: self.stabilizer.labels(g),
            coset_reps: self.cosets.reps().iter().map(|&k| g.label(k).to_string()).collect(),
            d: self.d,
            r: self.r,
            rho: crate::io::RepJson::new(&self.rho, tol),
            psi: crate::io::RepJson::new(&self.psi, tol),
            residual: crate::io::clean(self.residual),
            factor_residual: crate::io::clean(self.factor_residual),
            u: crate::io::matrix_json(&self.u),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::{are_conjugate, linear_characters};
    use crate::linalg::random_unitary;
    use crate::rep::{projectively_equivalent, EPS};

    fn s3_coset_sigma() -> (Arc<FiniteGroup>, ProjectiveRep) {
        let g = fixtures::group("s3").unwrap();
        let h = Subgroup::generated_by(&g, &[g.element_by_label("(12)").unwrap()]);
        let sigma = crate::induction::build_sigma(&h, &ProjectiveRep::trivial(g.clone(), h.clone()), EPS).unwrap();
        (g, sigma.total)
    }

    #[test]
    fn algebra_generation() {
        assert_eq!(MatrixStarAlgebra::scalars(3).dim(), 1);
        assert_eq!(MatrixStarAlgebra::full(3).dim(), 9);
        assert_eq!(MatrixStarAlgebra::diagonal(4).dim(), 4);
        // A single off-diagonal unit generates M₂ together with its adjoint.
        let e12 = unit(2, 0, 1);
        let a = MatrixStarAlgebra::generate(2, &[e12], 0).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(!a.contains_identity);
        assert_eq!(coset_algebra(2, 2, 3).dim(), 12);
    }

    #[test]
    fn centers() {
        assert_eq!(MatrixStarAlgebra::full(3).center(0).len(), 1);
        assert_eq!(MatrixStarAlgebra::diagonal(3).center(0).len(), 3);
        assert_eq!(coset_algebra(2, 2, 3).center(0).len(), 3);
    }

    #[test]
    fn invariance_examples() {
        let (_, sigma) = s3_coset_sigma();
        assert!(invariant_check(&MatrixStarAlgebra::full(3), &sigma).unwrap());
        assert!(invariant_check(&MatrixStarAlgebra::scalars(3), &sigma).unwrap());
        assert!(invariant_check(&MatrixStarAlgebra::diagonal(3), &sigma).unwrap());
        assert!(is_factor_correspondence(&MatrixStarAlgebra::diagonal(3), &sigma, 0).unwrap());
        assert!(is_factor_correspondence(&MatrixStarAlgebra::scalars(3), &sigma, 0).unwrap());
        let g = fixtures::group("s3").unwrap();
        let triv3 = ProjectiveRep::new(g.clone(), Subgroup::whole(&g), vec![identity(3); 6], EPS).unwrap();
        assert!(!is_factor_correspondence(&MatrixStarAlgebra::diagonal(3), &triv3, 0).unwrap());
        assert!(matches!(
            decompose(&triv3, &MatrixStarAlgebra::diagonal(3), &DecomposeOptions::default()),
            Err(Error::NotFactor)
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_unitary(&mut rng, 3);
        let tilted = MatrixStarAlgebra::diagonal(3).conjugated_by(&q).unwrap();
        assert!(!invariant_check(&tilted, &sigma).unwrap());
    }

    #[test]
    fn center_is_invariant() {
        let (_, sigma) = s3_coset_sigma();
        let b = MatrixStarAlgebra::diagonal(3);
        let mut z = Subspace::new(9);
        for c in b.center(3) {
            z.insert(&vectorize(&c), SPAN_TOL);
        }
        for x in sigma.matrices() {
            for c in b.center(3) {
                assert!(z.contains(&vectorize(&(x * c * x.adjoint())), 1e-8));
            }
        }
    }

    #[test]
    fn decompose_coset_rep() {
        let (g, sigma) = s3_coset_sigma();
        let sys = decompose(&sigma, &MatrixStarAlgebra::diagonal(3), &DecomposeOptions::default()).unwrap();
        assert_eq!((sys.d, sys.r), (1, 1));
        assert_eq!(sys.stabilizer.order(), 2);
        let h = Subgroup::generated_by(&g, &[g.element_by_label("(12)").unwrap()]);
        assert!(are_conjugate(&g, &sys.stabilizer, &h));
        assert!(sys.residual < 1e-9);
    }

    #[test]
    fn scalars_give_whole_group() {
        let g = fixtures::group("s3").unwrap();
        let c = -0.5;
        let sn = 3f64.sqrt() / 2.0;
        let images = [
            (g.element_by_label("(12)").unwrap(), crate::linalg::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])),
            (g.element_by_label("(123)").unwrap(), crate::linalg::from_real(2, 2, &[c, -sn, sn, c])),
        ];
        let sigma = ProjectiveRep::from_generator_images(g.clone(), &images, EPS).unwrap();
        assert!(sigma.is_ordinary(EPS));
        let sys = decompose(&sigma, &MatrixStarAlgebra::scalars(2), &DecomposeOptions::default()).unwrap();
        assert_eq!(sys.stabilizer.order(), 6);
        assert_eq!((sys.d, sys.r), (1, 2));
        assert!(sys.psi.max_abs_diff(&sigma).unwrap() < 1e-9);
    }

    #[test]
    fn pauli_leg_recovers_pauli() {
        let (g, psi) = fixtures::pauli();
        let sigma = crate::induction::build_sigma(&Subgroup::whole(&g), &psi, EPS).unwrap().total;
        let b = MatrixStarAlgebra::generate(4, &[kron(&unit(2, 0, 1), &identity(2)), kron(&unit(2, 0, 0), &identity(2))], 0)
            .unwrap();
        assert_eq!(b.dim(), 4);
        let sys = decompose(&sigma, &b, &DecomposeOptions::default()).unwrap();
        assert_eq!((sys.d, sys.r), (2, 2));
        assert!(projectively_equivalent(&sys.psi, &psi, 1e-6, 0).unwrap().is_some());
        assert!(projectively_equivalent(&sys.rho, &psi.conjugate(), 1e-6, 0).unwrap().is_some());
    }

    #[test]
    fn rotated_round_trip() {
        let g = fixtures::group("d4").unwrap();
        let h = Subgroup::generated_by(&g, &[g.element_by_label("(13)").unwrap()]);
        let chars = linear_characters(&g, &h).unwrap();
        let rho = ProjectiveRep::from_linear_character(g.clone(), h.clone(), &chars[1]);
        let pi = rho.tensor(&ProjectiveRep::trivial(g.clone(), h.clone())).unwrap();
        let cosets = CosetSystem::new(&g, &h).unwrap();
        let sigma = induce(&pi, &cosets, EPS).unwrap().total;
        let b = coset_algebra(1, 1, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = random_unitary(&mut rng, 4);
        let sys = decompose(&sigma.conjugated_by(&q), &b.conjugated_by(&q).unwrap(), &DecomposeOptions::default()).unwrap();
        assert!(are_conjugate(&g, &sys.stabilizer, &h));
        assert!(sys.residual < 1e-6);
    }

    #[test]
    fn kron_factor_tolerates_noise() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = random_unitary(&mut rng, 2);
        let b = random_unitary(&mut rng, 2);
        let x = kron(&a, &b) + crate::linalg::random_matrix(&mut rng, 4, 4) * C64::new(1e-15, 0.0);
        let (fa, fb) = kron_factor(&x, 2, 2, 1e-6).unwrap();
        assert!(max_abs_diff(&kron(&fa, &fb), &x) < 1e-12);
        let y = identity(4) + crate::linalg::random_matrix(&mut rng, 4, 4) * C64::new(1e-15, 0.0);
        let (fa, fb) = kron_factor(&y, 2, 2, 1e-6).unwrap();
        assert!(max_abs_diff(&kron(&fa, &fb), &y) < 1e-12);
    }
}
