//! Induced representations on `𝒦 ⊗ ℓ²(G/H)` and the generator
//! `σ = ind(ψ̄ ⊗ ψ)`.
//!
//! For `ξ ∈ 𝒦` and a coset representative `k`,
//! `ind π(g) (ξ ⊗ δ_{kH}) = π(h(gk)) ξ ⊗ δ_{gkH}`, where `x = k(x)·h(x)` is
//! the factorization through the fixed transversal. Basis vector
//! `ξ_a ⊗ δ_j` has index `a·[G:H] + j`.

use std::sync::Arc;

use crate::chartab::ClassFunction;
use crate::error::{Error, Result};
use crate::group::{CosetSystem, FiniteGroup, Subgroup};
use crate::linalg::{trace, CMat, C64};
use crate::rep::ProjectiveRep;

#[derive(Clone, Debug)]
pub struct InducedRep {
    pub base: ProjectiveRep,
    pub cosets: CosetSystem,
    pub total: ProjectiveRep,
}

impl InducedRep {
    pub fn dim(&self) -> usize {
        self.total.dim()
    }
}

fn check_base(pi: &ProjectiveRep, system: &CosetSystem, tol: f64) -> Result<()> {
    if !pi.is_ordinary(tol) {
        return Err(Error::NontrivialCocycle);
    }
    if pi.domain() != system.subgroup() {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// Induces an ordinary representation of `H` to `G`.
pub fn induce(pi: &ProjectiveRep, system: &CosetSystem, tol: f64) -> Result<InducedRep> {
    check_base(pi, system, tol)?;
    let g: &Arc<FiniteGroup> = pi.group();
    let n = pi.dim();
    let l = system.index();
    let matrices = (0..g.order())
        .map(|x| {
            let mut m = CMat::zeros(n * l, n * l);
            for (j, &k) in system.reps().iter().enumerate() {
                let xk = g.mul(x, k);
                let target = system.coset_of(xk);
                let (_, h) = system.factorize(xk);
                let block = pi.matrix(h);
                for b in 0..n {
                    for a in 0..n {
                        m[(b * l + target, a * l + j)] = block[(b, a)];
                    }
                }
            }
            m
        })
        .collect();
    let total = ProjectiveRep::ordinary_unchecked(g.clone(), Subgroup::whole(g), matrices);
    Ok(InducedRep { base: pi.clone(), cosets: system.clone(), total })
}

/// `χ_ind(g) = Σ_{k ∈ reps, k⁻¹gk ∈ H} tr π(k⁻¹gk)`, evaluated per class.
pub fn frobenius_character(pi: &ProjectiveRep, system: &CosetSystem, tol: f64) -> Result<ClassFunction> {
    check_base(pi, system, tol)?;
    let g = pi.group();
    let h = system.subgroup();
    let conj = g.conjugacy();
    let values = (0..conj.len())
        .map(|c| {
            let x = conj.representative(c);
            system
                .reps()
                .iter()
                .map(|&k| g.mul(g.mul(g.inv(k), x), k))
                .filter(|&y| h.contains(y))
                .map(|y| trace(pi.matrix(y)))
                .sum::<C64>()
        })
        .collect();
    Ok(ClassFunction::new(values))
}

/// `σ = ind(ψ̄ ⊗ ψ)` on `ℂ^r̄ ⊗ ℂ^r ⊗ ℓ²(G/H)`.
pub fn build_sigma(h: &Subgroup, psi: &ProjectiveRep, tol: f64) -> Result<InducedRep> {
    if psi.domain() != h {
        return Err(Error::GroupMismatch);
    }
    let base = psi.conjugate().tensor(psi)?.into_ordinary(tol.max(1e-9))?;
    let system = CosetSystem::new(psi.group(), h)?;
    induce(&base, &system, tol)
}

/// `{g : π(g) = 1}` for an ordinary representation of the whole group.
pub fn kernel(pi: &ProjectiveRep, tol: f64) -> Result<Subgroup> {
    if !pi.is_ordinary(tol) {
        return Err(Error::NontrivialCocycle);
    }
    let id = crate::linalg::identity(pi.dim());
    let els = pi
        .domain()
        .elements()
        .iter()
        .copied()
        .filter(|&x| crate::linalg::max_abs_diff(pi.matrix(x), &id) < tol);
    Subgroup::new(pi.group(), els)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::CharacterTable;
    use crate::fixtures;
    use crate::group::{is_normal, linear_characters};
    use crate::rep::{multiplicity, EPS};

    fn labels_sub(g: &FiniteGroup, labels: &[&str]) -> Subgroup {
        Subgroup::new(g, labels.iter().map(|l| g.element_by_label(l).unwrap())).unwrap()
    }

    /// Class values in the order (e, 3-cycles, transpositions).
    fn s3_profile(g: &FiniteGroup, chi: &ClassFunction) -> [f64; 3] {
        let conj = g.conjugacy();
        let at = |label: &str| chi.values[conj.class_of(g.element_by_label(label).unwrap())].re;
        [at("e"), at("(123)"), at("(12)")]
    }

    #[test]
    fn induction_from_whole_group_is_identity() {
        let (g, psi) = fixtures::pauli();
        let base = psi.conjugate().tensor(&psi).unwrap().into_ordinary(EPS).unwrap();
        let sys = CosetSystem::new(&g, &Subgroup::whole(&g)).unwrap();
        let ind = induce(&base, &sys, EPS).unwrap();
        assert!(ind.total.max_abs_diff(&base).unwrap() < 1e-15);
    }

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let g = fixtures::group("s3").unwrap();
        let e = Subgroup::trivial(&g);
        let triv = ProjectiveRep::trivial(g.clone(), e.clone());
        let ind = induce(&triv, &CosetSystem::new(&g, &e).unwrap(), EPS).unwrap();
        let reg = ProjectiveRep::regular(g.clone());
        assert!(ind.total.max_abs_diff(&reg).unwrap() < 1e-15);
        let chi = frobenius_character(&triv, &CosetSystem::new(&g, &e).unwrap(), EPS).unwrap();
        assert_eq!(s3_profile(&g, &chi), [6.0, 0.0, 0.0]);
    }

    #[test]
    fn s3_over_c3_faithful_character() {
        let g = fixtures::group("s3").unwrap();
        let c3 = labels_sub(&g, &["e", "(123)", "(132)"]);
        let chars = linear_characters(&g, &c3).unwrap();
        let faithful = ProjectiveRep::from_linear_character(g.clone(), c3.clone(), &chars[1]);
        let sys = CosetSystem::new(&g, &c3).unwrap();
        let ind = induce(&faithful, &sys, EPS).unwrap();
        assert_eq!(ind.dim(), 2);
        let by_trace = ind.total.character(EPS).unwrap();
        let by_formula = frobenius_character(&faithful, &sys, EPS).unwrap();
        assert!(by_trace.max_abs_diff(&by_formula) < 1e-12);
        let p = s3_profile(&g, &by_formula);
        assert!((p[0] - 2.0).abs() < 1e-12 && (p[1] + 1.0).abs() < 1e-12 && p[2].abs() < 1e-12);
        // Validates as an ordinary representation.
        let v = ProjectiveRep::new(g.clone(), Subgroup::whole(&g), ind.total.matrices().to_vec(), EPS).unwrap();
        assert!(v.is_ordinary(EPS));
    }

    #[test]
    fn induced_restricted_to_e_block_is_base() {
        let g = fixtures::group("d4").unwrap();
        let h = Subgroup::generated_by(&g, &[g.element_by_label("(24)").unwrap()]);
        let chars = linear_characters(&g, &h).unwrap();
        let pi = ProjectiveRep::from_linear_character(g.clone(), h.clone(), &chars[1]);
        let sys = CosetSystem::new(&g, &h).unwrap();
        let ind = induce(&pi, &sys, EPS).unwrap();
        let l = sys.index();
        for &x in h.elements() {
            // e-coset is column/row 0 of each internal block.
            assert_eq!(ind.total.matrix(x)[(0, 0)], pi.matrix(x)[(0, 0)]);
            for j in 1..l {
                assert_eq!(ind.total.matrix(x)[(0, j)], C64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let (g, psi) = fixtures::pauli();
        let sigma = build_sigma(&Subgroup::whole(&g), &psi, EPS).unwrap();
        let chi = sigma.total.character(EPS).unwrap();
        assert!((chi.values[0].re - 4.0).abs() < 1e-12);
        assert!(chi.values[1..].iter().all(|z| z.norm() < 1e-12));

        let s3 = fixtures::group("s3").unwrap();
        let e = Subgroup::trivial(&s3);
        let s = build_sigma(&e, &ProjectiveRep::trivial(s3.clone(), e.clone()), EPS).unwrap();
        assert_eq!(s.dim(), 6);

        let t = labels_sub(&s3, &["e", "(12)"]);
        let s = build_sigma(&t, &ProjectiveRep::trivial(s3.clone(), t.clone()), EPS).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s3_profile(&s3, &s.total.character(EPS).unwrap()), [3.0, 0.0, 1.0]);
        assert!(kernel(&s.total, EPS).unwrap().is_trivial());
        let table = CharacterTable::compute(&s3, 128, 0).unwrap();
        assert!(multiplicity(&table.rows()[0], &s.total, EPS).unwrap() >= 1);
    }

    #[test]
    fn kernels() {
        let g = fixtures::group("s3").unwrap();
        let reg = ProjectiveRep::regular(g.clone());
        assert!(kernel(&reg, EPS).unwrap().is_trivial());
        let whole = Subgroup::whole(&g);
        assert_eq!(kernel(&ProjectiveRep::trivial(g.clone(), whole.clone()), EPS).unwrap(), whole);
        let chars = linear_characters(&g, &whole).unwrap();
        let sign = ProjectiveRep::from_linear_character(g.clone(), whole, &chars[1]);
        let k = kernel(&sign, EPS).unwrap();
        assert_eq!(k.order(), 3);
        assert!(is_normal(&g, &k));
    }

    #[test]
    fn projective_base_rejected() {
        let (g, psi) = fixtures::pauli();
        let sys = CosetSystem::new(&g, &Subgroup::whole(&g)).unwrap();
        assert!(matches!(induce(&psi, &sys, EPS), Err(Error::NontrivialCocycle)));
    }
}
