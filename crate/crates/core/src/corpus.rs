//! Seeded random families of `(G, H, ψ)` and of induced representations
//! with their imprimitivity algebras, used by `selftest`, the acceptance
//! suite and the benchmarks.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fixtures;
use crate::group::{all_subgroups, linear_characters, CosetSystem, FiniteGroup, Subgroup, DEFAULT_SUBGROUP_CAP};
use crate::imprimitivity::{coset_algebra, MatrixStarAlgebra};
use crate::induction::induce;
use crate::linalg::{from_real, random_unitary, CMat};
use crate::rep::{ProjectiveRep, EPS};

/// Groups of order at most 24: cyclic groups and the small fixtures.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

pub fn random_group(rng: &mut ChaCha8Rng) -> NamedGroup {
    let kinds = ["cyclic", "v4", "s3", "d4", "q8"];
    let kind = *kinds.choose(rng).expect("nonempty");
    if kind == "cyclic" {
        let n = rng.random_range(2..=24);
        NamedGroup { name: format!("Z{n}"), group: Arc::new(FiniteGroup::cyclic(n).expect("n ≥ 1")) }
    } else {
        NamedGroup { name: kind.to_uppercase(), group: fixtures::group(kind).expect("bundled") }
    }
}

/// True when `h` is a Klein four-group.
pub fn is_klein_four(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.order() == 4 && h.elements().iter().all(|&x| g.mul(x, x) == g.identity())
}

/// The Pauli representation transported to a Klein four-subgroup: the two
/// smallest non-identity elements go to `σ_x` and `σ_z`.
pub fn pauli_on(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<ProjectiveRep> {
    let gens = g.generators_of(h);
    let x = from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let z = from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    ProjectiveRep::from_generator_images(g.clone(), &[(gens[0], x), (gens[1], z)], EPS)
}

pub fn random_linear(g: &Arc<FiniteGroup>, h: &Subgroup, rng: &mut ChaCha8Rng) -> Result<(usize, ProjectiveRep)> {
    let chars = linear_characters(g, h)?;
    let i = rng.random_range(0..chars.len());
    Ok((i, ProjectiveRep::from_linear_character(g.clone(), h.clone(), &chars[i])))
}

/// A two-dimensional ordinary representation: a sum of two random
/// characters seen in a random basis.
pub fn random_two_dim(g: &Arc<FiniteGroup>, h: &Subgroup, rng: &mut ChaCha8Rng) -> Result<ProjectiveRep> {
    let (_, a) = random_linear(g, h, rng)?;
    let (_, b) = random_linear(g, h, rng)?;
    let q = random_unitary(rng, 2);
    let sum = a.direct_sum(&b, EPS)?.conjugated_by(&q);
    ProjectiveRep::new(g.clone(), h.clone(), sum.matrices().to_vec(), 1e-8)
}

#[derive(Clone, Debug)]
pub struct KernelCase {
    pub label: String,
    pub group: Arc<FiniteGroup>,
    pub subgroup: Subgroup,
    pub psi: ProjectiveRep,
}

fn case(name: &str, g: &Arc<FiniteGroup>, h: &Subgroup, psi: ProjectiveRep, psi_label: &str) -> KernelCase {
    KernelCase {
        label: format!("{name} H={{{}}} ψ={psi_label}", h.labels(g).join(",")),
        group: g.clone(),
        subgroup: h.clone(),
        psi,
    }
}

/// `count` cases of `(G, H, ψ)` with `|G| ≤ 24`; `ψ` is a degree-one
/// character or the Pauli representation (possibly twisted by a character)
/// on a Klein four-subgroup. The first cases are fixed Pauli examples.
pub fn kernel_corpus(count: usize, seed: u64) -> Result<Vec<KernelCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let (v4, pauli) = fixtures::pauli();
    out.push(case("V4", &v4, &Subgroup::whole(&v4), pauli, "pauli"));
    let d4 = fixtures::group("d4").expect("bundled");
    for h in all_subgroups(&d4, DEFAULT_SUBGROUP_CAP)? {
        if is_klein_four(&d4, &h) {
            out.push(case("D4", &d4, &h, pauli_on(&d4, &h)?, "pauli"));
        }
    }
    while out.len() < count {
        let NamedGroup { name, group: g } = random_group(&mut rng);
        let subs = all_subgroups(&g, DEFAULT_SUBGROUP_CAP)?;
        let h = subs.choose(&mut rng).expect("nonempty").clone();
        if is_klein_four(&g, &h) && rng.random_bool(0.6) {
            let (i, chi) = random_linear(&g, &h, &mut rng)?;
            let psi = pauli_on(&g, &h)?.tensor(&chi)?;
            out.push(case(&name, &g, &h, psi, &format!("pauli·χ{i}")));
        } else {
            let (i, psi) = random_linear(&g, &h, &mut rng)?;
            out.push(case(&name, &g, &h, psi, &format!("χ{i}")));
        }
    }
    out.truncate(count);
    Ok(out)
}

/// `ind(ρ⊗ψ)` together with `L(ℂ^d) ⊗ 1 ⊗ ℓ^∞(G/H)`, both conjugated by
/// the same random unitary.
#[derive(Clone, Debug)]
pub struct InducedCase {
    pub label: String,
    pub group: Arc<FiniteGroup>,
    pub subgroup: Subgroup,
    pub d: usize,
    pub r: usize,
    pub rho: ProjectiveRep,
    pub psi: ProjectiveRep,
    pub sigma: ProjectiveRep,
    pub algebra: MatrixStarAlgebra,
    pub rotation: CMat,
}

pub fn induced_case(
    label: String,
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    rho: ProjectiveRep,
    psi: ProjectiveRep,
    rng: &mut ChaCha8Rng,
) -> Result<InducedCase> {
    let pi = rho.tensor(&psi)?.into_ordinary(1e-8)?;
    let cosets = CosetSystem::new(g, h)?;
    let sigma = induce(&pi, &cosets, 1e-8)?.total;
    let (d, r) = (rho.dim(), psi.dim());
    let algebra = coset_algebra(d, r, cosets.index());
    let q = random_unitary(rng, sigma.dim());
    Ok(InducedCase {
        label,
        group: g.clone(),
        subgroup: h.clone(),
        d,
        r,
        rho,
        psi,
        sigma: sigma.conjugated_by(&q),
        algebra: algebra.conjugated_by(&q)?,
        rotation: q,
    })
}

/// `count` constructions with `|G| ≤ 24` and `d, r ≤ 2`; the first ones
/// use the Pauli representation on Klein four-subgroups.
pub fn imprimitivity_corpus(count: usize, seed: u64) -> Result<Vec<InducedCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let (v4, pauli) = fixtures::pauli();
    let whole = Subgroup::whole(&v4);
    out.push(induced_case("V4 pauli".into(), &v4, &whole, pauli.conjugate(), pauli, &mut rng)?);
    let d4 = fixtures::group("d4").expect("bundled");
    for h in all_subgroups(&d4, DEFAULT_SUBGROUP_CAP)? {
        if is_klein_four(&d4, &h) {
            let p = pauli_on(&d4, &h)?;
            let (i, chi) = random_linear(&d4, &h, &mut rng)?;
            let label = format!("D4 H={{{}}} d=2 r=2 pauli·χ{i}", h.labels(&d4).join(","));
            out.push(induced_case(label, &d4, &h, p.conjugate(), p.tensor(&chi)?, &mut rng)?);
        }
    }
    while out.len() < count {
        let NamedGroup { name, group: g } = random_group(&mut rng);
        let subs = all_subgroups(&g, DEFAULT_SUBGROUP_CAP)?;
        let h = subs.choose(&mut rng).expect("nonempty").clone();
        let d = rng.random_range(1..=2);
        let r = rng.random_range(1..=2);
        let (rho, psi, kind) = if d == 2 && r == 2 && is_klein_four(&g, &h) && rng.random_bool(0.7) {
            let p = pauli_on(&g, &h)?;
            let (_, chi) = random_linear(&g, &h, &mut rng)?;
            (p.conjugate(), p.tensor(&chi)?, "pauli")
        } else {
            let pick = |k: usize, rng: &mut ChaCha8Rng| -> Result<ProjectiveRep> {
                if k == 1 {
                    Ok(random_linear(&g, &h, rng)?.1)
                } else {
                    random_two_dim(&g, &h, rng)
                }
            };
            (pick(d, &mut rng)?, pick(r, &mut rng)?, "ordinary")
        };
        let label = format!("{name} H={{{}}} d={d} r={r} {kind}", h.labels(&g).join(","));
        out.push(induced_case(label, &g, &h, rho, psi, &mut rng)?);
    }
    out.truncate(count);
    Ok(out)
}
