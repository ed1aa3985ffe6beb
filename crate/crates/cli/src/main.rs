//! `ghsub`: command-line front end. Every subcommand loads its inputs, makes
//! one library call and prints the result.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ghsub::chartab::CharacterTable;
use ghsub::classification::{condition, enumerate, report, EnumerateOptions, ReportOptions};
use ghsub::group::{FiniteGroup, Subgroup, DEFAULT_MAX_ORDER, DEFAULT_SUBGROUP_CAP};
use ghsub::imprimitivity::{coset_algebra, decompose, DecomposeOptions, MatrixStarAlgebra};
use ghsub::induction::{build_sigma, induce, kernel};
use ghsub::io::{parse_algebra, parse_group, parse_rep, parse_subgroup, read_or_bundled, RepJson, SCHEMA_VERSION};
use ghsub::rep::ProjectiveRep;
use ghsub::tower::{principal_graph, tower};
use ghsub::{CosetSystem, Error};

#[derive(Parser, Debug)]
#[command(name = "ghsub", version, about = "Finite invariants of group-subgroup subfactors")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Group file, or the name of a bundled fixture (z2.json, v4.json, s3.json, d4.json, q8.json, s4.json).
    #[arg(long, global = true, value_name = "PATH")]
    group: Option<String>,
    /// Comma-separated element labels generating H, or `all`.
    #[arg(long, global = true, value_name = "SPEC")]
    subgroup: Option<String>,
    /// Representation file (or bundled pauli.json), or `trivial`.
    #[arg(long, global = true, value_name = "PATH|trivial")]
    rep: Option<String>,
    /// Last tower level computed.
    #[arg(long, global = true, default_value_t = 6)]
    nmax: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Numerical tolerance, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Largest group order accepted when closing permutation generators.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Largest number of subgroups enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBGROUP_CAP)]
    subgroup_cap: usize,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whether proj ker ψ restricted to the normal core of H is trivial.
    Check,
    /// The induced representation of an ordinary ψ.
    Induce,
    /// σ = ind(ψ̄⊗ψ) and its kernel.
    Sigma,
    /// Dimensions and inclusion matrices of the towers of σ.
    Tower,
    /// Principal graph of σ.
    Graph,
    /// Full classification record for (G, H, ψ).
    Report,
    /// Records for every subgroup and degree-one character, plus `--rep`.
    Enumerate {
        /// Keep conjugate subgroups instead of one per class.
        #[arg(long)]
        all_subgroups: bool,
    },
    /// Recover (H, ρ, ψ) from σ and an invariant algebra.
    Decompose {
        /// Ordinary representation of G used as σ; defaults to ind(ψ̄⊗ψ).
        #[arg(long, value_name = "PATH")]
        sigma: Option<String>,
        /// Spanning-set file, or `scalars`, `coset` (1 ⊗ ℓ∞(G/H)) or `leg`
        /// (the ψ̄ leg L(ℂ^r) ⊗ 1 ⊗ ℓ∞(G/H)).
        #[arg(long, value_name = "PATH|scalars|coset|leg", default_value = "coset")]
        algebra: String,
    },
    /// Run the built-in acceptance checks.
    Selftest,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
    Dot,
}

enum Failure {
    Usage(String),
    Lib(Error),
    /// The checks ran but some failed; the report has been printed.
    Selftest,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// A command result: JSON plus an optional DOT rendering.
struct Output {
    json: Value,
    dot: Option<String>,
    table: Option<String>,
}

impl Output {
    fn new(value: impl Serialize) -> Run<Self> {
        let mut json = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
        if let Value::Object(map) = &mut json {
            map.insert("schema".into(), json!(SCHEMA_VERSION));
        }
        Ok(Output { json, dot: None, table: None })
    }
}

struct Inputs {
    g: Arc<FiniteGroup>,
    h: Subgroup,
    psi: ProjectiveRep,
    label: String,
}

fn labels(g: &FiniteGroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

impl Cli {
    fn validate(&self) -> Run<()> {
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(Failure::Usage(format!("--tol must lie in (0, 1e-3], got {}", self.tol)));
        }
        for (name, v) in [("--nmax", self.nmax), ("--max-order", self.max_order), ("--subgroup-cap", self.subgroup_cap)] {
            if v == 0 {
                return Err(Failure::Usage(format!("{name} must be positive")));
            }
        }
        if self.format == Format::Dot && !matches!(self.command, Command::Graph) {
            return Err(Failure::Usage("--format dot is only available for `graph`".into()));
        }
        Ok(())
    }

    fn group(&self) -> Run<Arc<FiniteGroup>> {
        let path = self.group.as_deref().ok_or_else(|| Failure::Usage("--group is required".into()))?;
        Ok(Arc::new(parse_group(path, &read_or_bundled(path)?, self.max_order)?))
    }

    fn table(&self, g: &FiniteGroup) -> Run<CharacterTable> {
        Ok(CharacterTable::compute(g, self.subgroup_cap, self.seed)?)
    }

    fn load_rep(&self, g: &Arc<FiniteGroup>, path: &str) -> Run<ProjectiveRep> {
        Ok(parse_rep(path, &read_or_bundled(path)?, g, self.tol)?)
    }

    /// `G`, `H` and `ψ`. `H` defaults to the domain of the representation
    /// file, or to `G` for `--rep trivial`.
    fn inputs(&self) -> Run<Inputs> {
        let g = self.group()?;
        let h = self.subgroup.as_deref().map(|s| parse_subgroup(&g, s)).transpose()?;
        let spec = self.rep.as_deref().unwrap_or("trivial");
        if spec == "trivial" {
            let h = h.unwrap_or_else(|| Subgroup::whole(&g));
            let psi = ProjectiveRep::trivial(g.clone(), h.clone());
            return Ok(Inputs { g, h, psi, label: "trivial".into() });
        }
        let psi = self.load_rep(&g, spec)?;
        if let Some(h) = &h {
            if h != psi.domain() {
                return Err(Failure::Usage(format!(
                    "--subgroup {:?} differs from the domain {:?} of {spec}",
                    h.labels(&g),
                    psi.domain().labels(&g)
                )));
            }
        }
        let label = std::path::Path::new(spec).file_stem().map_or(spec.to_string(), |s| s.to_string_lossy().into_owned());
        Ok(Inputs { h: psi.domain().clone(), g, psi, label })
    }

    fn run(&self) -> Run<Output> {
        self.validate()?;
        let tol = self.tol;
        match &self.command {
            Command::Check => {
                let Inputs { g, h, psi, .. } = self.inputs()?;
                let c = condition(&g, &h, &psi, tol)?;
                Output::new(json!({
                    "subgroup": h.labels(&g),
                    "r": psi.dim(),
                    "normal_core": c.core.labels(&g),
                    "projective_kernel": c.projective_kernel.labels(&g),
                    "condition_holds": c.holds(),
                }))
            }
            Command::Induce => {
                let Inputs { g, h, psi, .. } = self.inputs()?;
                let ind = induce(&psi, &CosetSystem::new(&g, &h)?, tol)?;
                Output::new(json!({
                    "dim": ind.dim(),
                    "index": ind.cosets.index(),
                    "coset_reps": labels(&g, ind.cosets.reps()),
                    "representation": RepJson::new(&ind.total, tol),
                }))
            }
            Command::Sigma => {
                let Inputs { g, h, psi, .. } = self.inputs()?;
                let sigma = build_sigma(&h, &psi, tol)?;
                Output::new(json!({
                    "dim": sigma.dim(),
                    "kernel": kernel(&sigma.total, tol)?.labels(&g),
                    "coset_reps": labels(&g, sigma.cosets.reps()),
                    "sigma": RepJson::new(&sigma.total, tol),
                }))
            }
            Command::Tower => {
                let Inputs { g, h, psi, .. } = self.inputs()?;
                let sigma = build_sigma(&h, &psi, tol)?.total;
                Output::new(tower(&sigma, &self.table(&g)?, self.nmax, tol)?)
            }
            Command::Graph => {
                let Inputs { g, h, psi, .. } = self.inputs()?;
                let sigma = build_sigma(&h, &psi, tol)?.total;
                let graph = principal_graph(&sigma, &self.table(&g)?, tol)?;
                let mut out = Output::new(&graph)?;
                out.dot = Some(graph.to_dot());
                Ok(out)
            }
            Command::Report => {
                let Inputs { g, h, psi, label } = self.inputs()?;
                let opts = ReportOptions { n_max: self.nmax, tol };
                Output::new(report(&g, &h, &psi, &label, &self.table(&g)?, &opts)?)
            }
            Command::Enumerate { all_subgroups } => {
                let g = self.group()?;
                let mut user_reps = Vec::new();
                if let Some(spec) = self.rep.as_deref().filter(|s| *s != "trivial") {
                    let label = std::path::Path::new(spec).file_stem().map_or(spec.to_string(), |s| s.to_string_lossy().into_owned());
                    user_reps.push((label, self.load_rep(&g, spec)?));
                }
                let opts = EnumerateOptions {
                    report: ReportOptions { n_max: self.nmax, tol },
                    up_to_conjugacy: !all_subgroups,
                    subgroup_cap: self.subgroup_cap,
                    user_reps,
                };
                let en = enumerate(&g, &self.table(&g)?, &opts)?;
                let mut out = Output::new(&en)?;
                out.table = Some(enumeration_table(&en));
                Ok(out)
            }
            Command::Decompose { sigma, algebra } => {
                let Inputs { g, h, psi, .. } = self.inputs()?;
                let (sigma, built) = match sigma {
                    Some(path) => (self.load_rep(&g, path)?, false),
                    None => (build_sigma(&h, &psi, tol)?.total, true),
                };
                let m = sigma.dim();
                let l = g.order() / h.order();
                let b = match algebra.as_str() {
                    "scalars" => MatrixStarAlgebra::scalars(m),
                    "coset" if m % l == 0 => coset_algebra(1, m / l, l),
                    "leg" if built => coset_algebra(psi.dim(), psi.dim(), l),
                    "coset" => return Err(Failure::Usage(format!("dim σ = {m} is not a multiple of [G:H] = {l}"))),
                    "leg" => return Err(Failure::Usage("--algebra leg needs σ = ind(ψ̄⊗ψ); drop --sigma".into())),
                    path => {
                        let mats = parse_algebra(path, &read_or_bundled(path)?)?;
                        if let Some(x) = mats.iter().find(|x| x.nrows() != m) {
                            return Err(Error::DimensionMismatch { expected: m, found: x.nrows() }.into());
                        }
                        MatrixStarAlgebra::generate(m, &mats, self.seed)?
                    }
                };
                let sys = decompose(&sigma, &b, &DecomposeOptions { tol, seed: self.seed })?;
                Output::new(sys.report(tol))
            }
            Command::Selftest => {
                let rep = ghsub::selftest::run(self.seed);
                let mut out = Output::new(&rep)?;
                out.table = Some(
                    rep.checks
                        .iter()
                        .map(|c| {
                            let verdict = if c.passed { "PASS" } else { "FAIL" };
                            format!("{verdict} {:<26} {:>7.2}s  {}\n", c.name, c.seconds, c.detail)
                        })
                        .collect(),
                );
                if !rep.passed {
                    emit(self, &out).map_err(Failure::Lib)?;
                    return Err(Failure::Selftest);
                }
                Ok(out)
            }
        }
    }
}

fn enumeration_table(en: &ghsub::classification::Enumeration) -> String {
    let mut s = format!("{:>3}  {:<28} {:<20} {:>5} {:>5}  {:<9} {}\n", "id", "subgroup", "psi", "index", "depth", "condition", "peers");
    for r in &en.records {
        let rec = &r.record;
        s += &format!(
            "{:>3}  {:<28} {:<20} {:>5} {:>5}  {:<9} {:?}\n",
            r.id,
            format!("{{{}}}", rec.subgroup.join(",")),
            rec.psi_label,
            rec.index,
            rec.depth,
            rec.condition_holds,
            r.possibly_isomorphic
        );
    }
    s
}

/// Top-level fields as `key  value` lines, nested values in compact JSON.
fn generic_table(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k:<24} {v}\n")).collect(),
        other => format!("{other}\n"),
    }
}

fn render(cli: &Cli, out: &Output) -> String {
    match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("JSON value serializes") + "\n",
        Format::Dot => out.dot.clone().unwrap_or_default(),
        Format::Table => out.table.clone().unwrap_or_else(|| generic_table(&out.json)),
    }
}

fn emit(cli: &Cli, out: &Output) -> ghsub::Result<()> {
    let text = render(cli, out);
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    let body = json!({ "schema": SCHEMA_VERSION, "error": { "kind": kind, "message": message } });
    eprintln!("{body}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail("usage", e.to_string().trim(), 1);
        }
    };
    match cli.run() {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e.kind(), &e.to_string(), 1),
        },
        Err(Failure::Usage(msg)) => fail("usage", &msg, 1),
        Err(Failure::Lib(e)) => fail(e.kind(), &e.to_string(), if e.is_inconsistency() { 2 } else { 1 }),
        Err(Failure::Selftest) => ExitCode::from(2),
    }
}
