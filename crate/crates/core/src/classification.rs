//! Reports for the data `(G, H, ψ)` and enumeration of candidate pairs.
//!
//! Several quantities are computed twice by unrelated routes and compared;
//! a disagreement is returned as [`Error::Inconsistency`] and never patched.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::chartab::{round_multiplicity, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, conjugacy_class_representatives, core, linear_characters, FiniteGroup, Subgroup};
use crate::induction::{build_sigma, kernel};
use crate::io::RepJson;
use crate::linalg::trace;
use crate::rep::{commutant_dimension, projective_kernel, ProjectiveRep};
use crate::tower::{check_generator_properties, principal_graph, tower, GeneratorProperties, TowerReport};

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub n_max: usize,
    pub tol: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { n_max: 6, tol: 1e-9 }
    }
}

/// `core(G, H)` and the projective kernel of `ψ` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub core: Subgroup,
    pub projective_kernel: Subgroup,
}

impl Condition {
    pub fn holds(&self) -> bool {
        self.projective_kernel.is_trivial()
    }
}

pub fn condition(g: &FiniteGroup, h: &Subgroup, psi: &ProjectiveRep, tol: f64) -> Result<Condition> {
    if psi.domain() != h || psi.group().as_ref() != g {
        return Err(Error::GroupMismatch);
    }
    let n = core(g, h)?;
    let projective_kernel = projective_kernel(psi, &n, tol)?;
    Ok(Condition { core: n, projective_kernel })
}

/// Whether `proj ker ψ|N(H)` is trivial.
pub fn check_condition(g: &FiniteGroup, h: &Subgroup, psi: &ProjectiveRep, tol: f64) -> Result<bool> {
    Ok(condition(g, h, psi, tol)?.holds())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub index: u128,
    pub depth: usize,
    pub degree_sequence: Vec<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRecord {
    pub group_order: usize,
    pub subgroup: Vec<String>,
    pub normal_core: Vec<String>,
    pub psi_label: String,
    pub psi: RepJson,
    pub r: usize,
    pub condition_holds: bool,
    pub projective_kernel: Vec<String>,
    #[serde(rename = "kernel_K")]
    pub kernel_k: Vec<String>,
    /// `[G:H]·r²`.
    pub index: u128,
    pub irreducible: bool,
    pub rel_commutant_dim: usize,
    #[serde(rename = "category_is_UG")]
    pub category_is_ug: bool,
    pub sigma_dim: usize,
    pub generator_properties: GeneratorProperties,
    pub depth: usize,
    pub tower: TowerReport,
    pub fingerprint: Fingerprint,
}

fn inconsistency(what: impl Into<String>) -> Error {
    Error::Inconsistency(what.into())
}

/// `(1/|H|) Σ_h |tr ψ(h)|²`, the trivial multiplicity in `ψ̄ ⊗ ψ`.
fn trivial_multiplicity_in_square(psi: &ProjectiveRep) -> Result<usize> {
    let s: f64 = psi.matrices().iter().map(|m| trace(m).norm_sqr()).sum();
    Ok(round_multiplicity((s / psi.domain().order() as f64).into())? as usize)
}

/// Full report for one `(H, ψ)`.
pub fn report(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    psi: &ProjectiveRep,
    psi_label: &str,
    table: &CharacterTable,
    opts: &ReportOptions,
) -> Result<ClassificationRecord> {
    let tol = opts.tol;
    let cond = condition(g, h, psi, tol)?;
    let sigma = build_sigma(h, psi, tol)?.total;
    let kernel_k = kernel(&sigma, tol)?;
    let props = check_generator_properties(&sigma, table, tol)?;
    let condition_holds = cond.holds();
    if kernel_k != cond.projective_kernel {
        return Err(inconsistency(format!(
            "kernel of σ {:?} differs from proj ker ψ|N(H) {:?}",
            kernel_k.labels(g),
            cond.projective_kernel.labels(g)
        )));
    }
    if condition_holds != kernel_k.is_trivial() || condition_holds != props.generates {
        return Err(inconsistency(format!(
            "condition {condition_holds}, trivial kernel {}, generates {}",
            kernel_k.is_trivial(),
            props.generates
        )));
    }
    let commutant = commutant_dimension(psi);
    let rel_commutant_dim = trivial_multiplicity_in_square(psi)?;
    if commutant != rel_commutant_dim {
        return Err(inconsistency(format!(
            "commutant of ψ has dimension {commutant} but ψ̄⊗ψ contains the trivial character {rel_commutant_dim} times"
        )));
    }
    let r = psi.dim();
    let l = g.order() / h.order();
    let index = (l as u128) * (r as u128) * (r as u128);
    if sigma.dim() as u128 != index {
        return Err(inconsistency(format!("dim σ = {} but [G:H]·r² = {index}", sigma.dim())));
    }
    let tw = tower(&sigma, table, opts.n_max, tol)?;
    if tw.index != index * index {
        return Err(inconsistency("tower index differs from the square of [G:H]·r²"));
    }
    let graph = principal_graph(&sigma, table, tol)?;
    if graph.depth != tw.depth {
        return Err(inconsistency("tower and principal graph disagree on depth"));
    }
    Ok(ClassificationRecord {
        group_order: g.order(),
        subgroup: h.labels(g),
        normal_core: cond.core.labels(g),
        psi_label: psi_label.to_string(),
        psi: RepJson::new(psi, tol),
        r,
        condition_holds,
        projective_kernel: cond.projective_kernel.labels(g),
        kernel_k: kernel_k.labels(g),
        index,
        irreducible: commutant == 1,
        rel_commutant_dim,
        category_is_ug: props.generates,
        sigma_dim: sigma.dim(),
        generator_properties: props,
        depth: tw.depth,
        fingerprint: Fingerprint { index, depth: tw.depth, degree_sequence: graph.degree_sequence() },
        tower: tw,
    })
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub report: ReportOptions,
    /// One subgroup per conjugacy class when set.
    pub up_to_conjugacy: bool,
    pub subgroup_cap: usize,
    /// Extra `(label, ψ)` pairs; each is reported on its own domain.
    pub user_reps: Vec<(String, ProjectiveRep)>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            report: ReportOptions::default(),
            up_to_conjugacy: true,
            subgroup_cap: crate::group::DEFAULT_SUBGROUP_CAP,
            user_reps: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumeratedRecord {
    pub id: usize,
    /// Other records with the same fingerprint. Whether the subfactors are
    /// isomorphic is not decided.
    pub possibly_isomorphic: Vec<usize>,
    pub record: ClassificationRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub group_order: usize,
    pub subgroups_considered: usize,
    pub records: Vec<EnumeratedRecord>,
}

/// Reports every subgroup with each of its degree-one characters, plus the
/// user-supplied representations, sorted by `(index, depth)`.
pub fn enumerate(g: &Arc<FiniteGroup>, table: &CharacterTable, opts: &EnumerateOptions) -> Result<Enumeration> {
    let subs = all_subgroups(g, opts.subgroup_cap)?;
    let subs = if opts.up_to_conjugacy { conjugacy_class_representatives(g, &subs) } else { subs };
    let mut records = Vec::new();
    for h in &subs {
        for (i, chi) in linear_characters(g, h)?.iter().enumerate() {
            let psi = ProjectiveRep::from_linear_character(g.clone(), h.clone(), chi);
            let label = if i == 0 { "trivial".to_string() } else { format!("linear character {i}") };
            records.push(report(g, h, &psi, &label, table, &opts.report)?);
        }
    }
    for (label, psi) in &opts.user_reps {
        if psi.group().as_ref() != g.as_ref() {
            return Err(Error::GroupMismatch);
        }
        records.push(report(g, psi.domain(), psi, label, table, &opts.report)?);
    }
    // Stable sort: ties keep subgroup order, then character order.
    records.sort_by_key(|r| (r.index, r.depth));
    let mut classes: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (id, rec) in records.iter().enumerate() {
        classes.entry(&rec.fingerprint).or_default().push(id);
    }
    let peers: Vec<Vec<usize>> = records
        .iter()
        .enumerate()
        .map(|(id, rec)| classes[&rec.fingerprint].iter().copied().filter(|&j| j != id).collect())
        .collect();
    Ok(Enumeration {
        group_order: g.order(),
        subgroups_considered: subs.len(),
        records: records
            .into_iter()
            .zip(peers)
            .enumerate()
            .map(|(id, (record, possibly_isomorphic))| EnumeratedRecord { id, possibly_isomorphic, record })
            .collect(),
    })
}
