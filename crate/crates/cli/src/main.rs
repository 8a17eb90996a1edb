use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use perfect_crystal::algebra::{full_multiplication_table, multiplication_table};
use perfect_crystal::energy::{maximal_vector_energies, two_theta_mismatch};
use perfect_crystal::export;
use perfect_crystal::oracle::{compare, oracle_character};
use perfect_crystal::{
    build_psi, crystal_for, energy_by_classification, energy_for, valid_psi_indices, verify_perfect_graph,
    AffineType, AffineWeight, Classifier, CrystalError, CrystalGraph, PathModel, PerfectReport, TensorSquare,
    Traversal,
};

#[derive(Debug, Parser)]
#[command(name = "crystal", version, about = "Level-one perfect crystals of affine Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each command picks a sensible default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of standard out.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest finite rank in `--all` sweeps.
    #[arg(long, global = true, default_value_t = 5)]
    max_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export the crystal graph.
    Build {
        #[arg(value_parser = parse_type)]
        ty: AffineType,
    },
    /// Check the perfectness axioms.
    Verify {
        #[arg(value_parser = parse_type, required_unless_present = "all")]
        ty: Option<AffineType>,
        /// Every family up to `--max-rank`, plus the exceptional types.
        #[arg(long)]
        all: bool,
        /// Remove the 0-arrow out of x_{-theta} before checking (negative control).
        #[arg(long)]
        inject_fault: bool,
    },
    /// Energy function by propagation, cross-checked by classification.
    Energy {
        #[arg(value_parser = parse_type)]
        ty: AffineType,
    },
    /// Crystal algebra multiplication table.
    Multiply {
        #[arg(value_parser = parse_type)]
        ty: AffineType,
        /// Node i adjacent to 0 defining the product; defaults to the first valid one.
        #[arg(long)]
        index: Option<usize>,
        /// All of B(theta) on both axes instead of positives against negatives.
        #[arg(long)]
        full: bool,
    },
    /// Truncated character of a level-one module from the path model.
    Character {
        #[arg(value_parser = parse_type)]
        ty: AffineType,
        /// Highest weight as L<i>.
        #[arg(default_value = "L0")]
        weight: String,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
        /// Compare with the lattice multiplicities where available.
        #[arg(long)]
        oracle: bool,
    },
}

fn parse_type(s: &str) -> Result<AffineType, String> {
    s.parse().map_err(|e: CrystalError| e.to_string())
}

/// Rendered output plus whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<CrystalError> for Failure {
    fn from(e: CrystalError) -> Self {
        match e {
            CrystalError::InvalidType(_) | CrystalError::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn build(ty: AffineType, format: Format) -> Result<Outcome, Failure> {
    let g = crystal_for(ty)?;
    let text = match format {
        Format::Json => pretty(&export::crystal_json(&g)),
        Format::Dot => export::crystal_dot(&g),
        Format::Text => {
            let mut s = format!("{ty}: {} elements, {} arrows\n", g.len(), g.arrows.edges().len());
            for (src, i, dst) in g.arrows.edges() {
                let _ = writeln!(s, "  {} -{i}-> {}", g.label(src), g.label(dst));
            }
            s
        }
    };
    Ok(Outcome { text, ok: true })
}

fn report_text(r: &PerfectReport) -> String {
    let mut s = format!("{}: {} ({} elements)\n", r.ty, if r.passed() { "PASS" } else { "FAIL" }, r.elements);
    for a in &r.axioms {
        let _ = write!(s, "  ({}) {}: {:?}", a.axiom, a.name, a.status);
        if let Some(w) = &a.witness {
            let _ = write!(s, " -- {w}");
        }
        s.push('\n');
    }
    for m in &r.minimal {
        let show = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "  {}: b^ = {}, b_ = {}", m.weight, show(&m.upper), show(&m.lower));
    }
    s
}

fn verify_one(ty: AffineType, inject: bool) -> Result<PerfectReport, CrystalError> {
    let g = crystal_for(ty)?;
    let g = if inject { g.with_injected_fault() } else { g };
    Ok(verify_perfect_graph(&g))
}

fn verify(ty: Option<AffineType>, all: bool, inject: bool, max_rank: usize, format: Format) -> Result<Outcome, Failure> {
    let types = match (all, ty) {
        (true, _) => AffineType::sweep(max_rank, true),
        (false, Some(t)) => vec![t],
        (false, None) => return Err(Failure::Usage("give a type or --all".into())),
    };
    let reports: Vec<PerfectReport> = types
        .par_iter()
        .map(|&t| verify_one(t, inject))
        .collect::<Result<_, _>>()?;
    let ok = reports.iter().all(PerfectReport::passed);
    let text = match format {
        Format::Json if reports.len() == 1 && !all => pretty(&export::report_json(&reports[0])),
        Format::Json => pretty(&json!({
            "passed": ok,
            "reports": reports.iter().map(export::report_json).collect::<Vec<_>>(),
        })),
        _ => reports.iter().map(report_text).collect(),
    };
    Ok(Outcome { text, ok })
}

fn energy(ty: AffineType, format: Format) -> Result<Outcome, Failure> {
    let g = crystal_for(ty)?;
    let h = energy_for(&g)?;
    let by_class = energy_by_classification(&g)?;
    let agree = h == by_class;
    let classifier = Classifier::new(&g)?;
    let maxima = maximal_vector_energies(&g, &h);
    let comps = export::component_report(&g, &classifier);
    let mismatch = two_theta_mismatch(&g, &TensorSquare::of(&g));
    let text = match format {
        Format::Json => pretty(&json!({
            "type": ty,
            "methods_agree": agree,
            "entries": export::energy_map(&g, &h),
            "maximal_vectors": maxima.iter().map(|(shape, v, e)| json!({"shape": shape, "vector": v, "energy": e})).collect::<Vec<_>>(),
            "components": comps,
            "two_theta_closed_form": {
                "exact": mismatch.is_exact(),
                "component_size": mismatch.component_size,
                "predicate_size": mismatch.predicate_size,
            },
        })),
        _ => {
            let mut s = format!(
                "{ty}: {} entries, methods {}\n",
                h.values.len(),
                if agree { "agree" } else { "DISAGREE" }
            );
            s.push_str("maximal vectors:\n");
            for (shape, v, e) in &maxima {
                let _ = writeln!(s, "  H = {e}  {v}  [{shape}]");
            }
            s.push_str("classical components:\n");
            for c in &comps {
                let _ = writeln!(
                    s,
                    "  {:>5}  {:<14} H = {}  {}",
                    c["size"].as_u64().unwrap_or_default(),
                    c["label"].as_str().unwrap_or_default(),
                    c["energy"],
                    c["representative_maximal_vector"].as_str().unwrap_or_default()
                );
            }
            let _ = writeln!(
                s,
                "closed form for C(x_theta (x) x_theta): {} (component {}, predicate {})",
                if mismatch.is_exact() { "exact" } else { "differs" },
                mismatch.component_size,
                mismatch.predicate_size
            );
            s
        }
    };
    Ok(Outcome { text, ok: agree })
}

fn multiply(ty: AffineType, index: Option<usize>, full: bool, format: Format) -> Result<Outcome, Failure> {
    let g = crystal_for(ty)?;
    let valid = valid_psi_indices(&g);
    let i = match index.or_else(|| valid.first().copied()) {
        Some(i) => i,
        None => return Err(Failure::Usage(format!("{ty} has no crystal algebra: no node next to 0 with alpha_i in Lambda"))),
    };
    let psi = build_psi(&g, i)?;
    let table = if full { full_multiplication_table(&g, &psi) } else { compact_axes(&g, |r, c| multiplication_table(&g, &psi, r, c)) };
    let text = match format {
        Format::Json => pretty(&export::multiplication_json(ty, i, &table)),
        _ => {
            let mut s = format!("{ty}, i = {i}: rows (x) columns\n");
            let width = table.columns.iter().chain(&table.rows).map(String::len).max().unwrap_or(1);
            let _ = write!(s, "{:width$} |", "");
            for c in &table.columns {
                let _ = write!(s, " {c:width$}");
            }
            s.push('\n');
            for (r, cells) in table.rows.iter().zip(&table.cells) {
                let _ = write!(s, "{r:width$} |");
                for c in cells {
                    let _ = write!(s, " {:width$}", c.as_deref().unwrap_or("0"));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome { text, ok: true })
}

/// Rows: `Λ⁺` then the `y_i`; columns: the negatives in matching order, then the `y_i`.
fn compact_axes<T>(g: &CrystalGraph, f: impl Fn(&[usize], &[usize]) -> T) -> T {
    let positives = g.lambda.positive.len();
    let ys: Vec<usize> = g.lambda.has_y.iter().map(|&i| g.y(i)).collect();
    let rows: Vec<usize> = (0..positives).chain(ys.iter().copied()).collect();
    let cols: Vec<usize> = (0..positives)
        .map(|b| g.neg_theta() - b)
        .chain(ys.iter().copied())
        .collect();
    f(&rows, &cols)
}

fn character(ty: AffineType, weight: &str, max_degree: i64, oracle: bool, format: Format) -> Result<Outcome, Failure> {
    if max_degree < 0 {
        return Err(Failure::Usage("--max-degree must be non-negative".into()));
    }
    let g = crystal_for(ty)?;
    let lam = AffineWeight::parse_fundamental(&g.datum, weight)?;
    let model = PathModel::new(g, &lam)?;
    let mult = model.multiplicities(max_degree, Traversal::BreadthFirst)?;
    let entries = perfect_crystal::character_entries(&mult);
    let is_l0 = lam.lambda.iter().enumerate().all(|(i, &c)| c == i64::from(i == 0));
    let oracle_result = oracle.then(|| {
        if !is_l0 {
            return Err(format!("the lattice oracle covers L0 only, got {weight}"));
        }
        oracle_character(&model.g.datum, max_degree)
            .map(|o| compare(&mult, &o))
            .map_err(|e| e.to_string())
    });
    let ok = !matches!(&oracle_result, Some(Ok(d)) if !d.is_empty());
    let text = match format {
        Format::Json => {
            let oracle_json = match &oracle_result {
                None => Value::Null,
                Some(Err(e)) => json!({"supported": false, "reason": e}),
                Some(Ok(d)) => json!({
                    "supported": true,
                    "differences": d.iter().map(|(w, deg, p, o)| json!({"classical_weight": w, "delta_degree": deg, "paths": p, "oracle": o})).collect::<Vec<_>>(),
                }),
            };
            pretty(&json!({
                "type": ty,
                "weight": weight,
                "max_degree": max_degree,
                "character": export::character_json(&entries),
                "oracle": oracle_json,
            }))
        }
        _ => {
            let mut s = format!("{ty} {weight}, degree <= {max_degree}: {} weights\n", entries.len());
            for e in &entries {
                let _ = writeln!(s, "  {:>3}  {:?}  {}", e.delta_degree, e.classical_weight, e.multiplicity);
            }
            match &oracle_result {
                None => {}
                Some(Err(e)) => {
                    let _ = writeln!(s, "oracle: unsupported ({e})");
                }
                Some(Ok(d)) if d.is_empty() => s.push_str("oracle: 0 differences\n"),
                Some(Ok(d)) => {
                    let _ = writeln!(s, "oracle: {} differences", d.len());
                    for (w, deg, p, o) in d {
                        let _ = writeln!(s, "  {deg} {w:?}: paths {p}, oracle {o}");
                    }
                }
            }
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Build { ty } => build(*ty, fmt(Format::Dot)),
        Command::Verify { ty, all, inject_fault } => verify(*ty, *all, *inject_fault, cli.max_rank, fmt(Format::Text)),
        Command::Energy { ty } => energy(*ty, fmt(Format::Text)),
        Command::Multiply { ty, index, full } => multiply(*ty, *index, *full, fmt(Format::Text)),
        Command::Character { ty, weight, max_degree, oracle } => {
            character(*ty, weight, *max_degree, *oracle, fmt(Format::Text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("crystal: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("crystal: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("crystal: {msg}");
            ExitCode::from(1)
        }
    }
}
