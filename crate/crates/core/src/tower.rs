//! Intertwiner towers of a generator `σ`, their Bratteli inclusions, the
//! principal graph and the generation criterion.
//!
//! The upper tower uses the words `σ, σσ̄, σσ̄σ, …` and the lower tower
//! `σ̄, σ̄σ, σ̄σσ̄, …`. Level `n` is `End(w_n)`, of dimension `Σ mᵢ(n)²`
//! where `mᵢ(n)` is the multiplicity of the irreducible `χᵢ` in `w_n`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::chartab::{round_multiplicity, CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rep::{strictly_equivalent, ProjectiveRep};

/// Character values beyond this size are not decomposed directly.
const DIRECT_ROUTE_LIMIT: f64 = (1u64 << 50) as f64;
/// Largest dimension for which self-conjugacy is also confirmed by an
/// explicit intertwiner.
const WITNESS_DIM: usize = 12;

/// Fusion rules for tensoring by `σ` and by `σ̄`.
#[derive(Clone, Debug)]
pub struct Fusion {
    dim: usize,
    degrees: Vec<usize>,
    /// `by_sigma[k][j]` = multiplicity of `χ_k` in `χ_j ⊗ σ`.
    by_sigma: Vec<Vec<u128>>,
    by_conjugate: Vec<Vec<u128>>,
}

impl Fusion {
    pub fn new(sigma: &ProjectiveRep, table: &CharacterTable, tol: f64) -> Result<Self> {
        let chi = sigma.character(tol)?;
        Self::from_character(sigma.group(), table, &chi, sigma.dim())
    }

    pub fn from_character(g: &FiniteGroup, table: &CharacterTable, chi: &ClassFunction, dim: usize) -> Result<Self> {
        let fuse = |tau: &ClassFunction| -> Result<Vec<Vec<u128>>> {
            let prods: Vec<ClassFunction> = table.rows().iter().map(|row| row.product(tau)).collect();
            table
                .rows()
                .iter()
                .map(|target| prods.iter().map(|p| round_multiplicity(p.inner(target, g))).collect())
                .collect()
        };
        Ok(Fusion {
            dim,
            degrees: table.degrees().to_vec(),
            by_sigma: fuse(chi)?,
            by_conjugate: fuse(&chi.conj())?,
        })
    }

    pub fn irreducibles(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Multiplicity of `χ_k` in `χ_j ⊗ σ` (or `σ̄`).
    pub fn entry(&self, conjugate: bool, k: usize, j: usize) -> u128 {
        if conjugate {
            self.by_conjugate[k][j]
        } else {
            self.by_sigma[k][j]
        }
    }

    fn apply(&self, conjugate: bool, m: &[u128], level: usize) -> Result<Vec<u128>> {
        (0..self.irreducibles())
            .map(|k| {
                m.iter().enumerate().try_fold(0u128, |acc, (j, &mj)| {
                    self.entry(conjugate, k, j).checked_mul(mj).and_then(|x| acc.checked_add(x)).ok_or(Error::Overflow(level))
                })
            })
            .collect()
    }

    fn unit(&self) -> Vec<u128> {
        let mut m = vec![0; self.irreducibles()];
        m[0] = 1;
        m
    }

    /// Letter `n + 1` of a word: upper words start with `σ`, lower with `σ̄`.
    fn letter_is_conjugate(lower: bool, n: usize) -> bool {
        lower ^ (n % 2 == 1)
    }

    fn multiplicities(&self, lower: bool, n_max: usize) -> Result<Vec<Vec<u128>>> {
        let mut out = vec![self.unit()];
        for n in 0..n_max {
            let next = self.apply(Self::letter_is_conjugate(lower, n), &out[n], n + 1)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Smallest set of irreducibles containing the trivial one and closed
    /// under tensoring by `σ` and `σ̄`.
    pub fn closure(&self) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(j) = frontier.pop() {
            for conjugate in [false, true] {
                for k in 0..self.irreducibles() {
                    if self.entry(conjugate, k, j) > 0 && seen.insert(k) {
                        frontier.push(k);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn support(m: &[u128]) -> Vec<usize> {
    m.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i).collect()
}

fn algebra_dim(m: &[u128], level: usize) -> Result<u128> {
    m.iter().try_fold(0u128, |acc, &x| x.checked_mul(x).and_then(|y| acc.checked_add(y)).ok_or(Error::Overflow(level)))
}

/// Bratteli inclusion `End(w_n) ⊂ End(w_{n+1})`: `entries[a][b]` is the
/// multiplicity of `rows[a]` in `cols[b] ⊗ τ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InclusionMatrix {
    pub level: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<u128>>,
}

fn inclusions(fusion: &Fusion, lower: bool, ms: &[Vec<u128>]) -> Vec<InclusionMatrix> {
    ms.windows(2)
        .enumerate()
        .map(|(n, pair)| {
            let cols = support(&pair[0]);
            let rows = support(&pair[1]);
            let conj = Fusion::letter_is_conjugate(lower, n);
            let entries = rows.iter().map(|&k| cols.iter().map(|&j| fusion.entry(conj, k, j)).collect()).collect();
            InclusionMatrix { level: n, rows, cols, entries }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerReport {
    pub sigma_dim: usize,
    pub degrees: Vec<usize>,
    pub upper_multiplicities: Vec<Vec<u128>>,
    pub lower_multiplicities: Vec<Vec<u128>>,
    pub upper_dims: Vec<u128>,
    pub lower_dims: Vec<u128>,
    pub upper_inclusions: Vec<InclusionMatrix>,
    pub lower_inclusions: Vec<InclusionMatrix>,
    pub depth: usize,
    /// `d(σ)²`.
    pub index: u128,
}

/// Multiplicities of the words of one tower computed by multiplying
/// characters and decomposing, for as long as the values stay small.
fn direct_multiplicities(
    g: &FiniteGroup,
    table: &CharacterTable,
    chi: &ClassFunction,
    lower: bool,
    n_max: usize,
) -> Result<Vec<Vec<u128>>> {
    let mut word = ClassFunction::constant(chi.values.len(), crate::linalg::ONE);
    let mut out = vec![table.decompose(&word, g)?];
    let dim = chi.degree().re.max(1.0);
    for n in 0..n_max {
        if dim.powi(n as i32 + 1) >= DIRECT_ROUTE_LIMIT {
            break;
        }
        let letter = if Fusion::letter_is_conjugate(lower, n) { chi.conj() } else { chi.clone() };
        word = word.product(&letter);
        out.push(table.decompose(&word, g)?);
    }
    Ok(out)
}

/// Computes both towers up to level `n_max`.
///
/// Multiplicities come from the fusion recursion `m(n+1) = F m(n)` and are
/// checked against direct character powers wherever those are computable.
pub fn tower(sigma: &ProjectiveRep, table: &CharacterTable, n_max: usize, tol: f64) -> Result<TowerReport> {
    let g = sigma.group();
    let chi = sigma.character(tol)?;
    let fusion = Fusion::from_character(g, table, &chi, sigma.dim())?;
    let upper = fusion.multiplicities(false, n_max)?;
    let lower = fusion.multiplicities(true, n_max)?;
    for (is_lower, ms) in [(false, &upper), (true, &lower)] {
        let direct = direct_multiplicities(g, table, &chi, is_lower, n_max)?;
        if let Some(n) = direct.iter().zip(ms.iter()).position(|(a, b)| a != b) {
            return Err(Error::Inconsistency(format!("fusion recursion and character powers disagree at level {n}")));
        }
    }
    let dims = |ms: &[Vec<u128>]| -> Result<Vec<u128>> { ms.iter().enumerate().map(|(n, m)| algebra_dim(m, n)).collect() };
    let dim = sigma.dim() as u128;
    let index = dim * dim;
    if n_max >= 1 {
        let from_degrees: u128 = upper[1].iter().zip(fusion.degrees()).map(|(&m, &d)| m * d as u128).sum();
        if from_degrees * from_degrees != index {
            return Err(Error::Inconsistency(format!("Σ mᵢ dᵢ = {from_degrees} but dim σ = {dim}")));
        }
    }
    Ok(TowerReport {
        sigma_dim: sigma.dim(),
        degrees: fusion.degrees().to_vec(),
        upper_dims: dims(&upper)?,
        lower_dims: dims(&lower)?,
        upper_inclusions: inclusions(&fusion, false, &upper),
        lower_inclusions: inclusions(&fusion, true, &lower),
        upper_multiplicities: upper,
        lower_multiplicities: lower,
        depth: graph_from_fusion(&fusion, false).depth,
        index,
    })
}

/// A vertex of the principal graph: an irreducible and the first word
/// length at which it occurs with the vertex's parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub irreducible: usize,
    pub degree: usize,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub even: usize,
    pub odd: usize,
    pub multiplicity: u128,
}

/// Bipartite fusion graph of `σ` starting from the trivial character.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrincipalGraph {
    pub even: Vec<Vertex>,
    pub odd: Vec<Vertex>,
    /// Edge `(i, j)` joins even irreducible `i` to odd irreducible `j`
    /// with the multiplicity of `χ_j` in `χ_i ⊗ σ`.
    pub edges: Vec<Edge>,
    pub depth: usize,
    pub sigma_dim: usize,
    pub self_conjugate: bool,
    pub warnings: Vec<String>,
}

fn graph_from_fusion(fusion: &Fusion, self_conjugate_known: bool) -> PrincipalGraph {
    let k = fusion.irreducibles();
    // Supports grow monotonically within each parity, so the sequence is
    // eventually periodic with period 2 once two consecutive levels repeat.
    let mut levels: Vec<Vec<usize>> = vec![vec![0]];
    let mut m = fusion.unit();
    let mut n = 0;
    loop {
        let next = (0..k)
            .map(|t| m.iter().enumerate().map(|(j, &x)| (x > 0 && fusion.entry(Fusion::letter_is_conjugate(false, n), t, j) > 0) as u128).sum())
            .collect::<Vec<u128>>();
        m = next;
        levels.push(support(&m));
        n += 1;
        if n >= 3 && levels[n] == levels[n - 2] && levels[n - 1] == levels[n - 3] {
            break;
        }
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (level, supp) in levels.iter().enumerate() {
        let side: &mut Vec<Vertex> = if level % 2 == 0 { &mut even } else { &mut odd };
        for &i in supp {
            if !side.iter().any(|v| v.irreducible == i) {
                side.push(Vertex { irreducible: i, degree: fusion.degrees()[i], level });
            }
        }
    }
    even.sort_by_key(|v| (v.level, v.irreducible));
    odd.sort_by_key(|v| (v.level, v.irreducible));
    let mut edges = Vec::new();
    for a in &even {
        for b in &odd {
            let mult = fusion.entry(false, b.irreducible, a.irreducible);
            if mult > 0 {
                edges.push(Edge { even: a.irreducible, odd: b.irreducible, multiplicity: mult });
            }
        }
    }
    // Depth: one more than the number of fusion steps after which the set
    // of irreducibles reached so far stops growing.
    let mut reached = BTreeSet::new();
    let mut last_growth = 0;
    for (level, supp) in levels.iter().enumerate() {
        let before = reached.len();
        reached.extend(supp.iter().copied());
        if reached.len() > before && level > 0 {
            last_growth = level;
        }
    }
    PrincipalGraph {
        even,
        odd,
        edges,
        depth: last_growth + 1,
        sigma_dim: fusion.dim,
        self_conjugate: self_conjugate_known,
        warnings: Vec::new(),
    }
}

pub fn principal_graph(sigma: &ProjectiveRep, table: &CharacterTable, tol: f64) -> Result<PrincipalGraph> {
    let chi = sigma.character(tol)?;
    let fusion = Fusion::from_character(sigma.group(), table, &chi, sigma.dim())?;
    let self_conjugate = chi.is_real(tol.max(1e-9));
    let mut graph = graph_from_fusion(&fusion, self_conjugate);
    if !self_conjugate {
        graph.warnings.push("σ is not self-conjugate; the graph follows alternating words σσ̄σ…".into());
    }
    Ok(graph)
}

impl PrincipalGraph {
    /// Graphviz rendering with a fixed vertex order.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph principal {{");
        let _ = writeln!(s, "  label=\"principal graph, depth {}, dim σ = {}\";", self.depth, self.sigma_dim);
        for v in &self.even {
            let _ = writeln!(
                s,
                "  e{} [shape=circle, label=\"χ{}\\ndeg {}\\nlevel {}\"];",
                v.irreducible, v.irreducible, v.degree, v.level
            );
        }
        for v in &self.odd {
            let _ = writeln!(
                s,
                "  o{} [shape=box, label=\"χ{}\\ndeg {}\\nlevel {}\"];",
                v.irreducible, v.irreducible, v.degree, v.level
            );
        }
        for e in &self.edges {
            if e.multiplicity == 1 {
                let _ = writeln!(s, "  e{} -- o{};", e.even, e.odd);
            } else {
                let _ = writeln!(s, "  e{} -- o{} [label=\"{}\"];", e.even, e.odd, e.multiplicity);
            }
        }
        s.push_str("}\n");
        s
    }

    /// Sorted vertex degrees (number of incident edges, with multiplicity).
    pub fn degree_sequence(&self) -> Vec<u128> {
        let mut out: Vec<u128> = self
            .even
            .iter()
            .map(|v| self.edges.iter().filter(|e| e.even == v.irreducible).map(|e| e.multiplicity).sum())
            .chain(
                self.odd
                    .iter()
                    .map(|v| self.edges.iter().filter(|e| e.odd == v.irreducible).map(|e| e.multiplicity).sum()),
            )
            .collect();
        out.sort_unstable();
        out
    }
}

/// Irreducibles occurring in some word in `σ` and `σ̄`.
pub fn closure_irreducibles(sigma: &ProjectiveRep, table: &CharacterTable, tol: f64) -> Result<Vec<usize>> {
    Ok(Fusion::new(sigma, table, tol)?.closure())
}

/// True when every irreducible occurs in some tensor power of `σ` and `σ̄`.
pub fn generates(sigma: &ProjectiveRep, table: &CharacterTable, tol: f64) -> Result<bool> {
    Ok(closure_irreducibles(sigma, table, tol)?.len() == table.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorProperties {
    /// `σ ≅ σ̄`.
    pub self_conjugate: bool,
    /// The trivial representation is a proper subobject of `σ`.
    pub contains_trivial: bool,
    pub generates: bool,
}

pub fn check_generator_properties(
    sigma: &ProjectiveRep,
    table: &CharacterTable,
    tol: f64,
) -> Result<GeneratorProperties> {
    let chi = sigma.character(tol)?;
    let self_conjugate = chi.is_real(tol.max(1e-9));
    if sigma.dim() <= WITNESS_DIM {
        let witness = strictly_equivalent(sigma, &sigma.conjugate(), tol.max(1e-9), 0)?.is_strict();
        if witness != self_conjugate {
            return Err(Error::Inconsistency(format!(
                "real character is {self_conjugate} but an intertwiner σ → σ̄ exists is {witness}"
            )));
        }
    }
    let trivial = round_multiplicity(chi.inner(&table.rows()[0], sigma.group()))?;
    let fusion = Fusion::from_character(sigma.group(), table, &chi, sigma.dim())?;
    Ok(GeneratorProperties {
        self_conjugate,
        contains_trivial: trivial >= 1 && sigma.dim() > 1,
        generates: fusion.closure().len() == table.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::{linear_characters, Subgroup};
    use crate::induction::{build_sigma, kernel};
    use crate::rep::EPS;
    use std::sync::Arc;

    fn table(g: &FiniteGroup) -> CharacterTable {
        CharacterTable::compute(g, 128, 0).unwrap()
    }

    #[test]
    fn z2_regular_tower() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let t = tower(&ProjectiveRep::regular(g.clone()), &table(&g), 3, EPS).unwrap();
        assert_eq!(t.lower_dims, vec![1, 2, 8, 32]);
        assert_eq!(t.upper_dims, vec![1, 2, 8, 32]);
        assert_eq!(t.index, 4);
        assert_eq!(t.depth, 2);
        assert_eq!(t.lower_multiplicities[3], vec![4, 4]);
    }

    #[test]
    fn pauli_sigma_tower() {
        let (g, psi) = fixtures::pauli();
        let sigma = build_sigma(&Subgroup::whole(&g), &psi, EPS).unwrap();
        let t = tower(&sigma.total, &table(&g), 2, EPS).unwrap();
        assert_eq!(t.upper_dims, vec![1, 4, 64]);
        assert_eq!(t.lower_dims, vec![1, 4, 64]);
        assert_eq!(t.index, 16);
        assert_eq!(t.depth, 2);
        let inc = &t.upper_inclusions[1];
        assert_eq!(inc.rows, vec![0, 1, 2, 3]);
        assert!(inc.entries.iter().flatten().all(|&x| x == 1));
    }

    #[test]
    fn trivial_tower() {
        let g = fixtures::group("s3").unwrap();
        let triv = ProjectiveRep::trivial(g.clone(), Subgroup::whole(&g));
        let tb = table(&g);
        let t = tower(&triv, &tb, 4, EPS).unwrap();
        assert_eq!(t.upper_dims, vec![1; 5]);
        assert_eq!(t.index, 1);
        assert_eq!(t.depth, 1);
        let pg = principal_graph(&triv, &tb, EPS).unwrap();
        assert_eq!(pg.even.len(), 1);
        assert_eq!(pg.depth, 1);
        assert_eq!(closure_irreducibles(&triv, &tb, EPS).unwrap(), vec![0]);
        let props = check_generator_properties(&triv, &tb, EPS).unwrap();
        assert_eq!(props, GeneratorProperties { self_conjugate: true, contains_trivial: false, generates: false });
    }

    #[test]
    fn sign_closure() {
        let g = fixtures::group("s3").unwrap();
        let whole = Subgroup::whole(&g);
        let chars = linear_characters(&g, &whole).unwrap();
        let sign = ProjectiveRep::from_linear_character(g.clone(), whole, &chars[1]);
        let tb = table(&g);
        assert_eq!(closure_irreducibles(&sign, &tb, EPS).unwrap(), vec![0, 1]);
        assert!(!generates(&sign, &tb, EPS).unwrap());
    }

    #[test]
    fn s3_coset_sigma() {
        let g = fixtures::group("s3").unwrap();
        let h = Subgroup::generated_by(&g, &[g.element_by_label("(12)").unwrap()]);
        let sigma = build_sigma(&h, &ProjectiveRep::trivial(g.clone(), h.clone()), EPS).unwrap().total;
        let tb = table(&g);
        let props = check_generator_properties(&sigma, &tb, EPS).unwrap();
        assert_eq!(props, GeneratorProperties { self_conjugate: true, contains_trivial: true, generates: true });
        assert!(kernel(&sigma, EPS).unwrap().is_trivial());
        let pg = principal_graph(&sigma, &tb, EPS).unwrap();
        // 1 + χ₂ at level 1; the sign character appears at levels 2 and 3.
        assert_eq!(pg.odd.iter().map(|v| (v.irreducible, v.level)).collect::<Vec<_>>(), vec![(0, 1), (2, 1), (1, 3)]);
        assert_eq!(pg.even.iter().map(|v| v.irreducible).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(pg.depth, 3);
        let t = tower(&sigma, &tb, 3, EPS).unwrap();
        assert_eq!(t.upper_dims, vec![1, 2, 14, 122]);
    }

    #[test]
    fn regular_rep_properties() {
        for name in ["z2", "v4", "s3", "d4", "q8"] {
            let g = fixtures::group(name).unwrap();
            let tb = table(&g);
            let reg = ProjectiveRep::regular(g.clone());
            let props = check_generator_properties(&reg, &tb, EPS).unwrap();
            assert_eq!(props, GeneratorProperties { self_conjugate: true, contains_trivial: true, generates: true });
            let pg = principal_graph(&reg, &tb, EPS).unwrap();
            if g.is_abelian() {
                assert_eq!(pg.depth, 2, "{name}");
            }
        }
    }

    #[test]
    fn non_self_conjugate_warns() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let whole = Subgroup::whole(&g);
        let chars = linear_characters(&g, &whole).unwrap();
        let chi = ProjectiveRep::from_linear_character(g.clone(), whole, &chars[1]);
        let tb = table(&g);
        let pg = principal_graph(&chi, &tb, EPS).unwrap();
        assert!(!pg.self_conjugate);
        assert_eq!(pg.warnings.len(), 1);
        let props = check_generator_properties(&chi, &tb, EPS).unwrap();
        assert!(!props.self_conjugate);
        assert!(props.generates);
    }

    #[test]
    fn dot_is_deterministic() {
        let (g, psi) = fixtures::pauli();
        let sigma = build_sigma(&Subgroup::whole(&g), &psi, EPS).unwrap().total;
        let a = principal_graph(&sigma, &table(&g), EPS).unwrap().to_dot();
        let b = principal_graph(&sigma, &CharacterTable::compute(&g, 128, 5).unwrap(), EPS).unwrap().to_dot();
        assert_eq!(a, b);
        assert!(a.contains("depth 2"));
        assert!(a.contains("e0 -- o3;"));
    }
}
