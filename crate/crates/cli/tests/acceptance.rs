//! One line per acceptance criterion. Reference values are recomputed here
//! from raw matrices and multiplication tables wherever possible instead of
//! being read back from the library.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use serde_json::Value;

use ghsub::chartab::CharacterTable;
use ghsub::corpus::{imprimitivity_corpus, kernel_corpus};
use ghsub::fixtures;
use ghsub::group::DEFAULT_SUBGROUP_CAP;
use ghsub::imprimitivity::{decompose, DecomposeOptions};
use ghsub::induction::{build_sigma, kernel};
use ghsub::linalg::{max_abs_diff, trace, CMat};
use ghsub::rep::{projective_kernel, ProjectiveRep, EPS};
use ghsub::tower::{generates, tower};
use ghsub::{CosetSystem, FiniteGroup, Subgroup};

const SEED: u64 = 20_240_601;
const PAULI_LIMIT: Duration = Duration::from_secs(1);
const KERNEL_LIMIT: Duration = Duration::from_secs(30);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(60);
const SELFTEST_LIMIT: Duration = Duration::from_secs(120);
const KERNEL_CASES: usize = 60;
const ROUND_TRIP_CASES: usize = 24;
const FROBENIUS_TOL: f64 = 1e-8;
const ORTHONORMALITY_TOL: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-6;
const MATRIX_TOL: f64 = 1e-9;

fn ghsub(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ghsub")).args(args).output().expect("binary runs")
}

fn is_identity(m: &CMat) -> bool {
    max_abs_diff(m, &CMat::identity(m.nrows(), m.ncols())) < MATRIX_TOL
}

fn is_scalar(m: &CMat) -> bool {
    let z = m[(0, 0)];
    max_abs_diff(m, &(CMat::identity(m.nrows(), m.ncols()) * z)) < MATRIX_TOL
}

/// `⋂_g gHg⁻¹` straight from the multiplication table.
fn normal_core(g: &FiniteGroup, h: &Subgroup) -> BTreeSet<usize> {
    h.elements()
        .iter()
        .copied()
        .filter(|&n| (0..g.order()).all(|x| h.contains(g.mul(g.mul(g.inv(x), n), x))))
        .collect()
}

/// Number of distinct values of a character, which bounds the tensor power
/// needed to reach every irreducible of a faithful representation.
fn distinct_values(values: &[C64]) -> usize {
    let mut seen: Vec<C64> = Vec::new();
    for &v in values {
        if seen.iter().all(|s| (s - v).norm() > 1e-6) {
            seen.push(v);
        }
    }
    seen.len()
}

/// Whether every irreducible occurs in some `σ^{⊗n}`, by raw trace powers.
fn reaches_every_irreducible(g: &FiniteGroup, table: &CharacterTable, sigma: &ProjectiveRep) -> bool {
    let traces: Vec<C64> = (0..g.order()).map(|x| trace(sigma.matrix(x))).collect();
    let bound = distinct_values(&traces);
    let cls = g.conjugacy();
    table.rows().iter().all(|row| {
        (0..bound).any(|n| {
            let s: C64 = (0..g.order()).map(|x| traces[x].powu(n as u32) * row.values[cls.class_of(x)].conj()).sum();
            s.norm() / g.order() as f64 > 0.5
        })
    })
}

/// `(1/|G|) Σ_g |tr σ(g)|^{2n}`.
fn brute_force_dims(sigma: &ProjectiveRep, levels: usize) -> Vec<u128> {
    let g = sigma.group();
    (0..=levels)
        .map(|n| {
            let s: f64 = (0..g.order()).map(|x| trace(sigma.matrix(x)).norm_sqr().powi(n as i32)).sum();
            (s / g.order() as f64).round() as u128
        })
        .collect()
}

/// `ind π(g)` assembled entry by entry: `g k_j = k_i h` puts `π(h)` in
/// block `(i, j)`; basis index `a·l + j`.
fn induced_matrix(g: &FiniteGroup, pi: &ProjectiveRep, cosets: &CosetSystem, x: usize) -> CMat {
    let reps = cosets.reps();
    let (l, r) = (reps.len(), pi.dim());
    let mut m = CMat::zeros(r * l, r * l);
    for (j, &kj) in reps.iter().enumerate() {
        let y = g.mul(x, kj);
        let i = reps.iter().position(|&ki| pi.domain().contains(g.mul(g.inv(ki), y))).expect("some coset contains y");
        let h = g.mul(g.inv(reps[i]), y);
        let block = pi.matrix(h);
        for a in 0..r {
            for b in 0..r {
                m[(a * l + i, b * l + j)] = block[(a, b)];
            }
        }
    }
    m
}

fn conjugate_subgroups(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    let target: BTreeSet<usize> = b.elements().iter().copied().collect();
    (0..g.order()).any(|x| a.elements().iter().map(|&s| g.mul(g.mul(x, s), g.inv(x))).collect::<BTreeSet<_>>() == target)
}

type Check = Result<String, String>;

fn pauli_report() -> Check {
    let start = Instant::now();
    let out = ghsub(&["report", "--group", "v4.json", "--subgroup", "all", "--rep", "pauli.json"]);
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    // Index and depth of the Pauli subfactor of ℤ₂×ℤ₂.
    let (index, depth) = (4, 2);
    let (_, psi) = fixtures::pauli();
    let commutant: f64 = psi.matrices().iter().map(|m| trace(m).norm_sqr()).sum::<f64>() / psi.domain().order() as f64;
    let ok = v["index"] == index
        && v["depth"] == depth
        && v["irreducible"] == true
        && (commutant - 1.0).abs() < 1e-9
        && v["condition_holds"] == true
        && elapsed < PAULI_LIMIT;
    let detail = format!(
        "index {}, irreducible {}, depth {}, condition {} in {:.3}s",
        v["index"], v["irreducible"], v["depth"], v["condition_holds"], elapsed.as_secs_f64()
    );
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

struct KernelOutcome {
    identity: Check,
    generation: Check,
    frobenius: Check,
}

fn kernel_corpus_checks() -> KernelOutcome {
    let start = Instant::now();
    let cases = match kernel_corpus(KERNEL_CASES, SEED) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.to_string();
            return KernelOutcome { identity: Err(msg.clone()), generation: Err(msg.clone()), frobenius: Err(msg) };
        }
    };
    let (mut id_bad, mut gen_bad, mut frob) = (Vec::new(), Vec::new(), 0.0f64);
    let mut trivial = 0;
    for c in &cases {
        let g = &c.group;
        let sigma = build_sigma(&c.subgroup, &c.psi, EPS).unwrap();
        let lib_kernel = kernel(&sigma.total, EPS).unwrap();
        let lib_pk = projective_kernel(&c.psi, &ghsub::group::core(g, &c.subgroup).unwrap(), EPS).unwrap();
        let oracle_kernel: BTreeSet<usize> = (0..g.order()).filter(|&x| is_identity(sigma.total.matrix(x))).collect();
        let oracle_pk: BTreeSet<usize> =
            normal_core(g, &c.subgroup).into_iter().filter(|&n| is_scalar(c.psi.matrix(n))).collect();
        let as_set = |s: &Subgroup| s.elements().iter().copied().collect::<BTreeSet<_>>();
        if lib_kernel != lib_pk || oracle_kernel != oracle_pk || as_set(&lib_kernel) != oracle_kernel {
            id_bad.push(c.label.clone());
        }
        let table = CharacterTable::compute(g, DEFAULT_SUBGROUP_CAP, SEED).unwrap();
        let lib_gen = generates(&sigma.total, &table, EPS).unwrap();
        let faithful = oracle_kernel.len() == 1;
        trivial += faithful as usize;
        if lib_gen != faithful || reaches_every_irreducible(g, &table, &sigma.total) != faithful {
            gen_bad.push(c.label.clone());
        }
        // Frobenius: χ(x) = Σ_j [k_j⁻¹ x k_j ∈ H] |tr ψ(k_j⁻¹ x k_j)|².
        for x in 0..g.order() {
            let by_formula: f64 = sigma
                .cosets
                .reps()
                .iter()
                .map(|&k| g.mul(g.mul(g.inv(k), x), k))
                .filter(|&y| c.subgroup.contains(y))
                .map(|y| trace(c.psi.matrix(y)).norm_sqr())
                .sum();
            frob = frob.max((trace(sigma.total.matrix(x)) - by_formula).norm());
        }
    }
    let elapsed = start.elapsed();
    let n = cases.len();
    let identity = if id_bad.is_empty() && n >= 50 && elapsed < KERNEL_LIMIT {
        Ok(format!("{n}/{n} cases, exact set equality, {:.2}s", elapsed.as_secs_f64()))
    } else {
        Err(format!("{} of {n} cases disagree {:?}, {:.2}s", id_bad.len(), id_bad, elapsed.as_secs_f64()))
    };
    let generation = if gen_bad.is_empty() {
        Ok(format!("{n}/{n} cases agree ({trivial} faithful)"))
    } else {
        Err(format!("{} of {n} cases disagree {:?}", gen_bad.len(), gen_bad))
    };
    let frobenius =
        if frob < FROBENIUS_TOL { Ok(format!("max deviation {frob:.2e}")) } else { Err(format!("max deviation {frob:.2e}")) };
    KernelOutcome { identity, generation, frobenius }
}

fn character_tables() -> Check {
    let mut worst = 0.0f64;
    let mut names = Vec::new();
    for (name, _) in fixtures::GROUPS {
        let g = fixtures::group(name).unwrap();
        let t = CharacterTable::compute(&g, DEFAULT_SUBGROUP_CAP, SEED).map_err(|e| e.to_string())?;
        let cls = g.conjugacy();
        let rows = t.rows();
        for (i, a) in rows.iter().enumerate() {
            for (j, b) in rows.iter().enumerate() {
                let s: C64 = (0..g.order()).map(|x| a.values[cls.class_of(x)] * b.values[cls.class_of(x)].conj()).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s / g.order() as f64 - expected).norm());
            }
        }
        let sum: f64 = rows.iter().map(|r| r.values[cls.class_of(g.identity())].norm_sqr()).sum();
        if sum.round() as usize != g.order() {
            return Err(format!("{name}: Σd² = {sum} but |G| = {}", g.order()));
        }
        names.push(format!("{name}({})", g.order()));
    }
    if worst < ORTHONORMALITY_TOL {
        Ok(format!("{}, max error {worst:.2e}", names.join(" ")))
    } else {
        Err(format!("orthonormality error {worst:.2e}"))
    }
}

fn tower_values() -> Check {
    let z2 = fixtures::group("z2").unwrap();
    let regular = ProjectiveRep::regular(z2.clone());
    let t = tower(&regular, &CharacterTable::compute(&z2, DEFAULT_SUBGROUP_CAP, SEED).unwrap(), 3, EPS).map_err(|e| e.to_string())?;
    let oracle = brute_force_dims(&regular, 3);
    let dim = trace(regular.matrix(z2.identity())).re.round() as u128;
    if t.lower_dims != [1, 2, 8, 32] || t.lower_dims != oracle || t.index != 4 || t.index != dim * dim {
        return Err(format!("Z2 regular: dims {:?} (oracle {oracle:?}), index {}", t.lower_dims, t.index));
    }
    let (v4, psi) = fixtures::pauli();
    let sigma = build_sigma(&Subgroup::whole(&v4), &psi, EPS).unwrap().total;
    let t = tower(&sigma, &CharacterTable::compute(&v4, DEFAULT_SUBGROUP_CAP, SEED).unwrap(), 2, EPS).map_err(|e| e.to_string())?;
    let oracle = brute_force_dims(&sigma, 2);
    let dim = trace(sigma.matrix(v4.identity())).re.round() as u128;
    if t.upper_dims != [1, 4, 64] || t.lower_dims != [1, 4, 64] || t.upper_dims != oracle || t.index != 16 || t.index != dim * dim {
        return Err(format!("Pauli σ: dims {:?} (oracle {oracle:?}), index {}", t.upper_dims, t.index));
    }
    Ok("Z2 regular (1, 2, 8, 32) index 4; Pauli σ (1, 4, 64) index 16".into())
}

fn round_trip() -> Check {
    let start = Instant::now();
    let cases = imprimitivity_corpus(ROUND_TRIP_CASES, SEED).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    let mut projective = 0;
    for c in &cases {
        let sys = decompose(&c.sigma, &c.algebra, &DecomposeOptions { tol: EPS, seed: SEED })
            .map_err(|e| format!("{}: {e}", c.label))?;
        if !conjugate_subgroups(&c.group, &sys.stabilizer, &c.subgroup) {
            return Err(format!("{}: stabilizer {:?} not conjugate to H", c.label, sys.stabilizer.labels(&c.group)));
        }
        projective += !c.psi.is_ordinary(EPS) as usize;
        for x in 0..c.group.order() {
            let lhs = &sys.u * c.sigma.matrix(x) * sys.u.adjoint();
            worst = worst.max(max_abs_diff(&lhs, &induced_matrix(&c.group, &sys.pi, &sys.cosets, x)));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} constructions ({projective} with projective ψ), max residual {worst:.2e}, {:.2}s",
        cases.len(),
        elapsed.as_secs_f64()
    );
    if worst < RESIDUAL_TOL && cases.len() >= 20 && elapsed < ROUND_TRIP_LIMIT {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn determinism() -> Check {
    let args = ["enumerate", "--group", "s3.json", "--seed", "11"];
    let (a, b) = (ghsub(&args), ghsub(&args));
    if !a.status.success() || !b.status.success() {
        return Err(String::from_utf8_lossy(&a.stderr).into_owned());
    }
    serde_json::from_slice::<Value>(&a.stdout).map_err(|e| e.to_string())?;
    if a.stdout == b.stdout {
        Ok(format!("{} identical bytes", a.stdout.len()))
    } else {
        Err("outputs differ".into())
    }
}

fn selftest() -> Check {
    let start = Instant::now();
    let out = ghsub(&["selftest"]);
    let elapsed = start.elapsed();
    let detail = format!("exit {:?} in {:.2}s", out.status.code(), elapsed.as_secs_f64());
    if out.status.success() && elapsed < SELFTEST_LIMIT {
        Ok(detail)
    } else {
        Err(format!("{detail}: {}", String::from_utf8_lossy(&out.stdout)))
    }
}

fn main() {
    let kernel = kernel_corpus_checks();
    let results = [
        ("1 Pauli report", pauli_report()),
        ("2 kernel identity", kernel.identity),
        ("3 Hewitt-Ross criterion", kernel.generation),
        ("4 Frobenius oracle", kernel.frobenius),
        ("5 character tables", character_tables()),
        ("6 tower values", tower_values()),
        ("7 imprimitivity round trip", round_trip()),
        ("8 enumerate determinism", determinism()),
        ("9 selftest runtime", selftest()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(d) => println!("PASS  criterion {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL  criterion {name}: {d}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
