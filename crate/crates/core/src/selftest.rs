//! Embedded end-to-end checks run by `ghsub selftest`.

use std::time::Instant;

use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::classification::{enumerate, report, EnumerateOptions, ReportOptions};
use crate::corpus::{imprimitivity_corpus, kernel_corpus};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::{are_conjugate, core, FiniteGroup, Subgroup, DEFAULT_SUBGROUP_CAP};
use crate::imprimitivity::{decompose, DecomposeOptions};
use crate::induction::{build_sigma, frobenius_character, induce, kernel};
use crate::linalg::max_abs_diff;
use crate::rep::{projective_kernel, ProjectiveRep, EPS};
use crate::tower::{generates, tower};

pub const KERNEL_CORPUS_SIZE: usize = 60;
pub const IMPRIMITIVITY_CORPUS_SIZE: usize = 24;
pub const FROBENIUS_LIMIT: f64 = 1e-8;
pub const ORTHONORMALITY_LIMIT: f64 = 1e-8;
pub const ROUND_TRIP_LIMIT: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub schema: u64,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Inconsistency(msg.into())
}

fn timed(name: &str, f: impl FnOnce() -> Result<String>) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    CheckOutcome { name: name.into(), passed, detail, seconds: start.elapsed().as_secs_f64() }
}

fn table(g: &FiniteGroup, seed: u64) -> Result<CharacterTable> {
    CharacterTable::compute(g, DEFAULT_SUBGROUP_CAP, seed)
}

pub fn pauli_report(seed: u64) -> Result<String> {
    let (g, psi) = fixtures::pauli();
    let rec = report(&g, &Subgroup::whole(&g), &psi, "pauli", &table(&g, seed)?, &ReportOptions::default())?;
    if rec.index != 4 || !rec.irreducible || rec.depth != 2 || !rec.condition_holds {
        return Err(fail(format!(
            "index {}, irreducible {}, depth {}, condition {}",
            rec.index, rec.irreducible, rec.depth, rec.condition_holds
        )));
    }
    Ok("index 4, irreducible, depth 2, condition holds".into())
}

/// Kernel identity, generation criterion and Frobenius formula over the
/// random corpus. Returns the three details.
pub fn kernel_checks(seed: u64) -> Result<(String, String, String)> {
    let cases = kernel_corpus(KERNEL_CORPUS_SIZE, seed)?;
    let mut frob = 0.0f64;
    let mut trivial_kernels = 0;
    for c in &cases {
        let sigma = build_sigma(&c.subgroup, &c.psi, EPS)?;
        let k = kernel(&sigma.total, EPS)?;
        let pk = projective_kernel(&c.psi, &core(&c.group, &c.subgroup)?, EPS)?;
        if k != pk {
            return Err(fail(format!("{}: kernel {:?} vs projective kernel {:?}", c.label, k.labels(&c.group), pk.labels(&c.group))));
        }
        let tb = table(&c.group, seed)?;
        if generates(&sigma.total, &tb, EPS)? != k.is_trivial() {
            return Err(fail(format!("{}: generation and trivial kernel disagree", c.label)));
        }
        trivial_kernels += k.is_trivial() as usize;
        let by_trace = sigma.total.character(EPS)?;
        let by_formula = frobenius_character(&sigma.base, &sigma.cosets, EPS)?;
        frob = frob.max(by_trace.max_abs_diff(&by_formula));
    }
    if frob >= FROBENIUS_LIMIT {
        return Err(fail(format!("Frobenius deviation {frob:.2e}")));
    }
    Ok((
        format!("{} cases agree", cases.len()),
        format!("{} cases agree ({trivial_kernels} with trivial kernel)", cases.len()),
        format!("max deviation {frob:.2e}"),
    ))
}

pub fn character_tables(seed: u64) -> Result<String> {
    let mut worst = 0.0f64;
    for (name, _) in fixtures::GROUPS {
        let g = fixtures::group(name).expect("bundled");
        let t = table(&g, seed)?;
        worst = worst.max(t.orthonormality_error(&g));
        if t.degrees().iter().map(|d| d * d).sum::<usize>() != g.order() {
            return Err(fail(format!("{name}: Σd² ≠ |G|")));
        }
    }
    if worst >= ORTHONORMALITY_LIMIT {
        return Err(fail(format!("orthonormality error {worst:.2e}")));
    }
    Ok(format!("{} fixtures, max error {worst:.2e}", fixtures::GROUPS.len()))
}

pub fn tower_values(seed: u64) -> Result<String> {
    let z2 = fixtures::group("z2").expect("bundled");
    let t = tower(&ProjectiveRep::regular(z2.clone()), &table(&z2, seed)?, 3, EPS)?;
    if t.lower_dims != [1, 2, 8, 32] || t.index != 4 {
        return Err(fail(format!("Z2 regular: dims {:?}, index {}", t.lower_dims, t.index)));
    }
    let (v4, psi) = fixtures::pauli();
    let sigma = build_sigma(&Subgroup::whole(&v4), &psi, EPS)?.total;
    let t = tower(&sigma, &table(&v4, seed)?, 2, EPS)?;
    if t.upper_dims != [1, 4, 64] || t.lower_dims != [1, 4, 64] || t.index != 16 {
        return Err(fail(format!("Pauli σ: dims {:?}, index {}", t.upper_dims, t.index)));
    }
    Ok("Z2 regular (1, 2, 8, 32) index 4; Pauli σ (1, 4, 64) index 16".into())
}

pub fn imprimitivity_round_trip(seed: u64) -> Result<String> {
    let cases = imprimitivity_corpus(IMPRIMITIVITY_CORPUS_SIZE, seed)?;
    let mut worst = 0.0f64;
    for c in &cases {
        let sys = decompose(&c.sigma, &c.algebra, &DecomposeOptions { tol: EPS, seed })?;
        if !are_conjugate(&c.group, &sys.stabilizer, &c.subgroup) {
            return Err(fail(format!("{}: stabilizer {:?} not conjugate to H", c.label, sys.stabilizer.labels(&c.group))));
        }
        let pi = sys.rho.tensor(&sys.psi)?.into_ordinary(ROUND_TRIP_LIMIT)?;
        let ind = induce(&pi, &sys.cosets, ROUND_TRIP_LIMIT)?.total;
        let u_star = sys.u.adjoint();
        for x in 0..c.group.order() {
            worst = worst.max(max_abs_diff(&(&sys.u * c.sigma.matrix(x) * &u_star), ind.matrix(x)));
        }
    }
    if worst >= ROUND_TRIP_LIMIT {
        return Err(fail(format!("round-trip residual {worst:.2e}")));
    }
    Ok(format!("{} constructions, max residual {worst:.2e}", cases.len()))
}

pub fn enumerate_determinism(seed: u64) -> Result<String> {
    let g = fixtures::group("s3").expect("bundled");
    let run = || -> Result<String> {
        let en = enumerate(&g, &table(&g, seed)?, &EnumerateOptions::default())?;
        serde_json::to_string(&en).map_err(|e| fail(e.to_string()))
    };
    let (a, b) = (run()?, run()?);
    if a != b {
        return Err(fail("two enumerations of S3 differ"));
    }
    Ok(format!("{} identical bytes", a.len()))
}

pub fn run(seed: u64) -> SelftestReport {
    let mut checks = vec![timed("pauli-report", || pauli_report(seed))];
    let start = Instant::now();
    match kernel_checks(seed) {
        Ok((a, b, c)) => {
            let secs = start.elapsed().as_secs_f64();
            for (name, detail) in [("kernel-identity", a), ("generation-criterion", b), ("frobenius-oracle", c)] {
                checks.push(CheckOutcome { name: name.into(), passed: true, detail, seconds: secs });
            }
        }
        Err(e) => {
            let secs = start.elapsed().as_secs_f64();
            for name in ["kernel-identity", "generation-criterion", "frobenius-oracle"] {
                checks.push(CheckOutcome { name: name.into(), passed: false, detail: e.to_string(), seconds: secs });
            }
        }
    }
    checks.push(timed("character-tables", || character_tables(seed)));
    checks.push(timed("tower-values", || tower_values(seed)));
    checks.push(timed("imprimitivity-round-trip", || imprimitivity_round_trip(seed)));
    checks.push(timed("enumerate-determinism", || enumerate_determinism(seed)));
    SelftestReport { schema: crate::io::SCHEMA_VERSION, seed, passed: checks.iter().all(|c| c.passed), checks }
}

#[cfg(test)]
mod tests {
    #[test]
    fn selftest_passes() {
        let report = super::run(0);
        for c in &report.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
