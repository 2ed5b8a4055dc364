use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cohom::abgroup::FgAbGroup;
use cohom::bench::{builtin_suite, parse_suite, ring_modulus, run_case, BenchCase, CaseStatus, RunReport};
use cohom::complex::CellComplex;
use cohom::cup::{cohomology_ring, match_presentation, GradedRing, RingPresentation};
use cohom::sequences::{
    axiom_suite, cp2_preset, euler_powers, gysin, gysin_ring, mayer_vietoris, reduced_mayer_vietoris,
    rp_infinity_preset, ExactnessReport, GysinData, LongExactSequence, NodeStatus,
};
use cohom::spaces::{SimplicialComplex, SpaceId};
use rayon::prelude::*;
use serde_json::{json, Value};

const THREADS_VAR: &str = "COHOM_THREADS";

#[derive(Parser)]
#[command(name = "cohom", version, about = "Exact integral cohomology of spaces")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print H^n(X; G) in invariant-factor form
    Group {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        deg: i64,
        /// Reduced cohomology
        #[arg(long)]
        reduced: bool,
    },
    /// Cohomology ring with structure constants, optionally checked against a presentation
    Ring {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        claim: Option<String>,
        #[arg(long)]
        maxdeg: Option<usize>,
    },
    /// Run a benchmark suite (the builtin one by default)
    Bench {
        /// JSON array of cases
        #[arg(long)]
        suite: Option<PathBuf>,
    },
    /// Check the Eilenberg-Steenrod axioms on a space
    Axioms {
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Build and check a long exact sequence
    Sequence {
        #[command(subcommand)]
        kind: SequenceKind,
    },
}

#[derive(Args)]
struct Source {
    /// Space id: pt, s<n>, rp<n>, cp2, torus, klein, wedge:<a>,<b>,..., susp:<a>
    #[arg(long, conflicts_with = "complex", required_unless_present = "complex")]
    space: Option<String>,
    /// JSON file with a cell complex {"cells", "boundaries"} or a simplicial complex {"vertices", "facets"}
    #[arg(long)]
    complex: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SequenceKind {
    /// Mayer-Vietoris sequence of the space's fixture cover
    Mv {
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        maxdeg: Option<usize>,
        /// Use reduced cohomology
        #[arg(long)]
        reduced: bool,
        /// Forget the group at these nodes, then try to deduce it
        #[arg(long, value_name = "LABEL")]
        forget: Vec<String>,
    },
    /// Gysin sequence of a preset sphere bundle
    Gysin {
        #[arg(long, value_enum)]
        preset: Preset,
        /// Range for the rpinf preset
        #[arg(long, default_value_t = 6)]
        maxdeg: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Cp2,
    Rpinf,
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// A check did not hold: exit code 1.
    Check,
}

impl From<cohom::Error> for Failure {
    fn from(e: cohom::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var(THREADS_VAR) {
        match n.parse::<usize>() {
            Ok(n) => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            Err(_) => {
                eprintln!("error: {THREADS_VAR} must be a number, got {n:?}");
                return ExitCode::from(2);
            }
        }
    }
    let json = cli.json;
    let outcome = match cli.command {
        Command::Group {
            source,
            coeff,
            deg,
            reduced,
        } => cmd_group(&source, &coeff, deg, reduced, json),
        Command::Ring {
            source,
            coeff,
            claim,
            maxdeg,
        } => cmd_ring(&source, &coeff, claim.as_deref(), maxdeg, json),
        Command::Bench { suite } => cmd_bench(suite.as_deref(), json),
        Command::Axioms { space, coeff } => cmd_axioms(&space, &coeff, json),
        Command::Sequence { kind } => match kind {
            SequenceKind::Mv {
                space,
                coeff,
                maxdeg,
                reduced,
                forget,
            } => cmd_mv(&space, &coeff, maxdeg, reduced, &forget, json),
            SequenceKind::Gysin { preset, maxdeg } => cmd_gysin(preset, maxdeg, json),
        },
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json renders"));
}

enum Loaded {
    Named(SpaceId),
    Cells(CellComplex),
    Simplices(SimplicialComplex),
}

impl Loaded {
    fn name(&self, src: &Source) -> String {
        match (self, &src.complex) {
            (Loaded::Named(id), _) => id.to_string(),
            (_, Some(p)) => p.display().to_string(),
            _ => "complex".into(),
        }
    }

    fn cells(&self) -> Result<CellComplex, Failure> {
        Ok(match self {
            Loaded::Named(id) => id.cellular()?,
            Loaded::Cells(c) => c.clone(),
            Loaded::Simplices(k) => k.to_cell_complex(),
        })
    }
}

fn load(src: &Source) -> Result<Loaded, Failure> {
    if let Some(path) = &src.complex {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let raw: Value = serde_json::from_str(&text)?;
        return Ok(if raw.get("facets").is_some() {
            Loaded::Simplices(SimplicialComplex::from_json(&text)?)
        } else {
            Loaded::Cells(CellComplex::from_json(&text)?)
        });
    }
    let space = src.space.as_deref().expect("clap requires --space or --complex");
    Ok(Loaded::Named(space.parse()?))
}

fn cmd_group(src: &Source, coeff: &str, deg: i64, reduced: bool, json: bool) -> Outcome {
    let g: FgAbGroup = coeff.parse()?;
    let loaded = load(src)?;
    let x = loaded.cells()?;
    let h = if reduced {
        x.reduced_cohomology(deg, &g)?
    } else {
        x.cohomology(deg, &g).group
    };
    if json {
        print_json(&json!({
            "space": loaded.name(src),
            "coefficients": g.to_string(),
            "degree": deg,
            "reduced": reduced,
            "group": h.to_string(),
        }));
    } else {
        println!("{h}");
    }
    Ok(())
}

fn modulus_of(g: &FgAbGroup) -> Result<u64, Failure> {
    ring_modulus(g).ok_or_else(|| Failure::Usage(format!("ring coefficients must be Z or Z/m, not {g}")))
}

fn ring_for(loaded: &Loaded, modulus: u64, maxdeg: Option<usize>) -> Result<GradedRing, Failure> {
    match loaded {
        Loaded::Simplices(k) => Ok(cohomology_ring(k, modulus, maxdeg)?),
        Loaded::Cells(_) => Err(Failure::Usage("cup products need a simplicial complex".into())),
        Loaded::Named(SpaceId::Cp2) if !SpaceId::Cp2.has_simplicial_model() => {
            if modulus != 0 {
                return Err(Failure::Usage("the cp2 ring is available over Z only".into()));
            }
            let data = cp2_preset();
            let seq = gysin(&data)?.solve();
            Ok(gysin_ring(&seq, &data)?)
        }
        Loaded::Named(id) => Ok(cohomology_ring(&id.simplicial()?, modulus, maxdeg)?),
    }
}

fn ring_json(ring: &GradedRing) -> Value {
    let groups: Vec<String> = ring.groups().iter().map(|g| g.to_string()).collect();
    let mut products = Vec::new();
    let top = ring.max_degree();
    for p in 1..=top {
        for q in p..=top.saturating_sub(p) {
            for i in 0..ring.group(p).num_generators() {
                for j in 0..ring.group(q).num_generators() {
                    let v = ring.product(p, i, q, j);
                    products.push(json!({
                        "left": GradedRing::label(p, i),
                        "right": GradedRing::label(q, j),
                        "value": v.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    }));
                }
            }
        }
    }
    json!({ "groups": groups, "products": products })
}

fn cmd_ring(src: &Source, coeff: &str, claim: Option<&str>, maxdeg: Option<usize>, json: bool) -> Outcome {
    let g: FgAbGroup = coeff.parse()?;
    let modulus = modulus_of(&g)?;
    let claim: Option<RingPresentation> = claim.map(str::parse).transpose()?;
    let loaded = load(src)?;
    let ring = ring_for(&loaded, modulus, maxdeg)?;
    let matched = claim.as_ref().map(|c| match_presentation(&ring, c, maxdeg));
    if json {
        let mut out = ring_json(&ring);
        out["space"] = json!(loaded.name(src));
        out["coefficients"] = json!(g.to_string());
        if let (Some(c), Some(m)) = (&claim, &matched) {
            out["claim"] = json!(c.to_string());
            out["match"] = json!(m.matched);
            out["witness"] = m
                .witness
                .iter()
                .map(|(name, e)| {
                    json!({
                        "generator": name,
                        "degree": e.degree,
                        "value": e.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            if let Some(r) = &m.reason {
                out["reason"] = json!(r);
            }
        }
        print_json(&out);
    } else {
        print!("{ring}");
        if let (Some(c), Some(m)) = (&claim, &matched) {
            println!("claim: {c}");
            println!("match: {}", m.matched);
            for (name, e) in &m.witness {
                let coords: Vec<String> = e.coords.iter().map(|c| c.to_string()).collect();
                println!("  {name} -> degree {} ({})", e.degree, coords.join(", "));
            }
            if let Some(r) = &m.reason {
                println!("reason: {r}");
            }
        }
    }
    match matched {
        Some(m) if !m.matched => Err(Failure::Check),
        _ => Ok(()),
    }
}

fn run_suite(cases: &[BenchCase]) -> RunReport {
    RunReport {
        cases: cases.par_iter().map(run_case).collect(),
    }
}

fn render_status(s: &CaseStatus) -> (String, String, String) {
    let coords = |v: &[i64]| {
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(", "))
    };
    match s {
        CaseStatus::Match { group, value } => ("match".into(), group.clone(), coords(value)),
        CaseStatus::Computed { group, value } => ("computed".into(), group.clone(), coords(value)),
        CaseStatus::Mismatch { group, value, expected } => (
            "MISMATCH".into(),
            group.clone(),
            format!("{} (expected {expected})", coords(value)),
        ),
        CaseStatus::Error { message } => ("ERROR".into(), String::new(), message.clone()),
    }
}

fn cmd_bench(suite: Option<&Path>, json: bool) -> Outcome {
    let cases = match suite {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            parse_suite(&text)?
        }
        None => builtin_suite(),
    };
    let report = run_suite(&cases);
    if json {
        println!("{}", report.to_json());
    } else {
        println!(
            "{:<16} {:<7} {:>3}  {:<26} {:<9} {:<10} {:<22} {:>9}",
            "space", "coeff", "deg", "expression", "status", "group", "value", "time"
        );
        for r in &report.cases {
            let (status, group, value) = render_status(&r.status);
            println!(
                "{:<16} {:<7} {:>3}  {:<26} {:<9} {:<10} {:<22} {:>7}us",
                r.case.space, r.case.coeff, r.case.degree, r.case.expr, status, group, value, r.elapsed_us
            );
        }
        let failed = report.failures();
        println!("{}/{} cases without mismatch or error", report.cases.len() - failed, report.cases.len());
    }
    if report.failures() > 0 {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn cmd_axioms(space: &str, coeff: &str, json: bool) -> Outcome {
    let g: FgAbGroup = coeff.parse()?;
    let id: SpaceId = space.parse()?;
    let report = axiom_suite(&id, &g)?;
    if json {
        let mut v = serde_json::to_value(&report)?;
        v["passed"] = json!(report.passed());
        print_json(&v);
    } else {
        println!("{report}");
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn exactness_json(r: &ExactnessReport) -> Value {
    r.nodes
        .iter()
        .map(|n| {
            let (status, reason) = match &n.status {
                NodeStatus::Exact => ("exact", None),
                NodeStatus::NotExact(why) => ("not_exact", Some(why)),
                NodeStatus::Unchecked(why) => ("unchecked", Some(why)),
            };
            json!({ "index": n.index, "label": n.label, "status": status, "reason": reason })
        })
        .collect()
}

fn print_exactness(r: &ExactnessReport) {
    let exact = r.nodes.iter().filter(|n| matches!(n.status, NodeStatus::Exact)).count();
    for n in &r.nodes {
        match &n.status {
            NodeStatus::Exact => {}
            NodeStatus::NotExact(why) => println!("not exact at {}: {why}", n.label),
            NodeStatus::Unchecked(why) => println!("unchecked at {}: {why}", n.label),
        }
    }
    println!("exact at {exact}/{} interior nodes", r.nodes.len());
}

fn report_sequence(seq: &LongExactSequence, extra: Value, json: bool) -> Outcome {
    let report = seq.check_exact();
    let open: Vec<String> = seq.indeterminate().iter().map(|&i| seq.nodes()[i].label.clone()).collect();
    if json {
        let mut v = seq.to_json();
        v["exactness"] = exactness_json(&report);
        v["exact"] = json!(report.is_exact());
        v["indeterminate"] = json!(open);
        if let Value::Object(m) = extra {
            for (k, x) in m {
                v[k] = x;
            }
        }
        print_json(&v);
    } else {
        println!("{seq}");
        print_exactness(&report);
        if !open.is_empty() {
            println!("indeterminate: {}", open.join(", "));
        }
        if let Value::Object(m) = extra {
            for (k, x) in m {
                match x {
                    Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
        }
    }
    if report.is_exact() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_mv(space: &str, coeff: &str, maxdeg: Option<usize>, reduced: bool, forget: &[String], json: bool) -> Outcome {
    let g: FgAbGroup = coeff.parse()?;
    let id: SpaceId = space.parse()?;
    let cover = id.covering_pair()?;
    let maxdeg = maxdeg.unwrap_or(cover.space.dim());
    let mut seq = if reduced {
        reduced_mayer_vietoris(&cover, &g, maxdeg)?
    } else {
        mayer_vietoris(&cover, &g, maxdeg)?
    };
    for label in forget {
        let i = seq
            .find(label)
            .ok_or_else(|| Failure::Usage(format!("no node labelled {label:?}")))?;
        seq.forget(i);
    }
    if !forget.is_empty() {
        seq = seq.solve();
    }
    report_sequence(&seq, json!({}), json)
}

fn cmd_gysin(preset: Preset, maxdeg: usize, json: bool) -> Outcome {
    let data: GysinData = match preset {
        Preset::Cp2 => cp2_preset(),
        Preset::Rpinf => rp_infinity_preset(maxdeg),
    };
    let seq = gysin(&data)?.solve();
    let mut extra = serde_json::Map::new();
    let top = format!("H^{}(B)", data.max_deg);
    if let Some(h) = seq.group_of(&top) {
        extra.insert(top, json!(h.to_string()));
    }
    if let Ok(powers) = euler_powers(&seq, &data) {
        let rendered: Vec<String> = powers
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let c: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("e^{k} = ({})", c.join(", "))
            })
            .collect();
        extra.insert("euler powers".into(), json!(rendered.join(", ")));
    }
    report_sequence(&seq, Value::Object(extra), json)
}
