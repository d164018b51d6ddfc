//! `biq`: enumerate, classify and measure the biquotients `Sp(3)//Sp(1)^2`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biq_core::catalog::{catalog, lookup, CURVATURE_NAMES};
use biq_core::cohomology::{self, CohomologyReport};
use biq_core::curvature::{self, MetricConfig, MinDefect, OptimizerConfig};
use biq_core::freeness::{self, Classification};
use biq_core::report::{ReportBundle, SCHEMA};
use biq_core::reps::{enumerate_sp1, enumerate_sp1xsp1, torus_image, RepDecomposition};
use biq_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Golden markdown compiled into the binary.
const GOLDEN: [(&str, &str); 9] = [
    ("table1.md", include_str!("../golden/table1.md")),
    ("table2.md", include_str!("../golden/table2.md")),
    ("table3.md", include_str!("../golden/table3.md")),
    ("table4.md", include_str!("../golden/table4.md")),
    ("table5.md", include_str!("../golden/table5.md")),
    ("table6.md", include_str!("../golden/table6.md")),
    ("table7.md", include_str!("../golden/table7.md")),
    ("sp1_pairs.md", include_str!("../golden/sp1_pairs.md")),
    ("curvature.md", include_str!("../golden/curvature.md")),
];

#[derive(Parser)]
#[command(
    name = "biq",
    version,
    about = "Biquotients Sp(3)//Sp(1)^2: classification, invariants, curvature"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Sp1,
    Sp1xsp1,
}

#[derive(Subcommand)]
enum Command {
    /// List symplectic representations into Sp(hdim).
    Enumerate {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, default_value_t = 3)]
        hdim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Classify effectively free actions up to equivalence.
    Classify {
        #[arg(long)]
        json: bool,
        /// Also list rejected candidates with their witnesses.
        #[arg(long)]
        witnesses: bool,
    },
    /// Cohomological invariants of one spec or of all of them.
    Invariants {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Minimize the zero-plane defect at p(theta).
    Curvature {
        name: String,
        /// Angles in radians; repeat or separate with commas.
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        theta: Vec<f64>,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, env = "BIQ_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Regenerate every table and compare it with the golden copies.
    ReproducePaper {
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Directory of golden files replacing the built-in ones.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, env = "BIQ_SEED", default_value_t = 42)]
        seed: u64,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownSpec(_)
            | Error::UnsupportedEmbedding { .. }
            | Error::InvalidArgument(_)
            | Error::WrongDimension { .. } => EXIT_USAGE,
            _ => EXIT_MISMATCH,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    data: T,
}

fn print_json<T: Serialize>(command: &str, data: T) {
    let env = Envelope {
        schema: SCHEMA,
        command,
        data,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&env).expect("serializable output")
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { group, hdim, json } => cmd_enumerate(group, hdim, json),
        Command::Classify { json, witnesses } => cmd_classify(json, witnesses),
        Command::Invariants { name, all, json } => cmd_invariants(name.as_deref(), all, json),
        Command::Curvature {
            name,
            theta,
            restarts,
            seed,
            json,
            csv,
        } => cmd_curvature(&name, &theta, restarts, seed, json, csv),
        Command::ReproducePaper {
            out,
            golden,
            restarts,
            seed,
        } => cmd_reproduce(&out, golden.as_deref(), restarts, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[derive(Serialize)]
struct EnumRow {
    representation: String,
    torus_image: Option<String>,
    weights: Vec<[i64; 2]>,
}

fn enum_row(r: &RepDecomposition, hdim: usize) -> EnumRow {
    EnumRow {
        representation: r.to_string(),
        torus_image: (hdim == 3).then(|| torus_image(r).expect("symplectic").to_string()),
        weights: r.weights(),
    }
}

fn cmd_enumerate(group: Group, hdim: usize, json: bool) -> CmdResult {
    let reps = match group {
        Group::Sp1 => enumerate_sp1(hdim),
        Group::Sp1xsp1 => enumerate_sp1xsp1(hdim),
    };
    let rows: Vec<EnumRow> = reps.iter().map(|r| enum_row(r, hdim)).collect();
    if json {
        print_json("enumerate", &rows);
        return Ok(());
    }
    for r in &rows {
        match &r.torus_image {
            Some(t) => println!("{:<24} {t}", r.representation),
            None => println!("{:<24} weights {:?}", r.representation, r.weights),
        }
    }
    println!("{} representations", rows.len());
    Ok(())
}

fn cmd_classify(json: bool, witnesses: bool) -> CmdResult {
    let mut c: Classification = freeness::classify_all()?;
    if !witnesses {
        c.rejected.clear();
    }
    if json {
        print_json("classify", &c);
        return Ok(());
    }
    for s in &c.classes {
        let kind = if s.homogeneous {
            "homogeneous"
        } else {
            "inhomogeneous"
        };
        println!(
            "{:<28} {:<14} {} | {}  ({}, {})",
            s.spec.name, kind, s.spec.left, s.spec.right, s.left_rep, s.right_rep
        );
    }
    println!(
        "{} classes: {} homogeneous, {} inhomogeneous",
        c.classes.len(),
        c.homogeneous_count(),
        c.inhomogeneous_count()
    );
    if witnesses {
        for r in &c.rejected {
            println!(
                "rejected ({}, {}) {} | {}",
                r.left_rep, r.right_rep, r.spec.left, r.spec.right
            );
            for w in &r.verdict.witnesses {
                println!(
                    "  x = {}  left {}  right {}",
                    biq_core::intlin::fmt_ratvec(&w.x),
                    biq_core::intlin::fmt_ratvec(&w.left_eval),
                    biq_core::intlin::fmt_ratvec(&w.right_eval)
                );
            }
        }
    }
    Ok(())
}

fn print_report(r: &CohomologyReport) {
    println!("{}", r.name);
    println!("  dx3   {}", r.dx3);
    println!("  dx7   {}", r.dx7);
    println!("  H4    ℤ (alpha = {}, beta = {})", r.alpha, r.beta);
    let snf: Vec<String> = r.snf_diagonal.iter().map(|d| d.to_string()).collect();
    println!("  |H8|  {} (SNF diag({}))", r.h8_order, snf.join(", "));
    println!("  p1    {}", r.p1);
    println!("  pi2   {}", r.pi2);
}

fn cmd_invariants(name: Option<&str>, all: bool, json: bool) -> CmdResult {
    let reports: Vec<CohomologyReport> = if all {
        catalog()
            .iter()
            .map(|e| cohomology::report(&e.spec))
            .collect::<Result<_, _>>()?
    } else {
        let name = name.ok_or_else(|| Failure::usage("a spec name or --all is required"))?;
        vec![cohomology::report(&lookup(name)?.spec)?]
    };
    if json {
        print_json("invariants", &reports);
        return Ok(());
    }
    if all {
        println!(
            "{:<5} {:<22} {:>6} {:>6} {:>4}",
            "name", "dx3", "|H8|", "p1", "pi2"
        );
        for r in &reports {
            println!(
                "{:<5} {:<22} {:>6} {:>6} {:>4}",
                r.name,
                r.dx3.to_string(),
                r.h8_order,
                r.p1,
                r.pi2.to_string()
            );
        }
    } else {
        print_report(&reports[0]);
    }
    Ok(())
}

fn cmd_curvature(
    name: &str,
    thetas: &[f64],
    restarts: usize,
    seed: u64,
    json: bool,
    csv: bool,
) -> CmdResult {
    let entry = lookup(name)?;
    if restarts == 0 {
        return Err(Failure::usage("--restarts must be at least 1"));
    }
    let exploratory = !CURVATURE_NAMES.contains(&entry.name.as_str());
    if exploratory {
        eprintln!(
            "note: {} is exploratory; no positivity result is known for it",
            entry.name
        );
    }
    let opt = OptimizerConfig {
        seed,
        restarts,
        ..OptimizerConfig::default()
    };
    let metric = MetricConfig::default();
    let rows: Vec<MinDefect> = curvature::theta_scan(&entry.spec, thetas, &opt, &metric)?;
    if json {
        print_json("curvature", &rows);
    } else if csv {
        print!("{}", curvature::scan_csv(&rows));
    } else {
        for r in &rows {
            println!(
                "{} theta={} min_defect={:.3e} verdict={} horizontal_dim={} converged={}",
                r.spec, r.theta, r.min_defect, r.verdict, r.horizontal_dim, r.converged
            );
        }
    }
    Ok(())
}

/// Only the stable columns of the curvature table; the minima themselves are
/// floating-point noise when they vanish.
fn curvature_digest(md: &str) -> String {
    md.lines()
        .filter(|l| l.starts_with("| N"))
        .map(|l| {
            let cols: Vec<&str> = l.split('|').map(str::trim).collect();
            format!("{} {} {} {}", cols[1], cols[2], cols[4], cols[5])
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn compare(name: &str, golden: &str, actual: &str) -> Option<String> {
    let (g, a) = if name == "curvature.md" {
        (curvature_digest(golden), curvature_digest(actual))
    } else {
        (golden.to_string(), actual.to_string())
    };
    (g != a).then(|| {
        similar::TextDiff::from_lines(&g, &a)
            .unified_diff()
            .header(&format!("golden/{name}"), &format!("out/{name}"))
            .to_string()
    })
}

fn cmd_reproduce(out: &Path, golden_dir: Option<&Path>, restarts: usize, seed: u64) -> CmdResult {
    if restarts == 0 {
        return Err(Failure::usage("--restarts must be at least 1"));
    }
    fs::create_dir_all(out).map_err(|e| Failure::io(out, e))?;
    let bundle = ReportBundle::build(seed, restarts)?;
    let files = bundle.markdown_files()?;
    for (name, text) in &files {
        let path = out.join(name);
        fs::write(&path, text).map_err(|e| Failure::io(&path, e))?;
    }
    let path = out.join("bundle.json");
    fs::write(&path, bundle.to_json()).map_err(|e| Failure::io(&path, e))?;

    let mut mismatches = 0;
    for (name, embedded) in GOLDEN {
        let golden = match golden_dir {
            Some(dir) => {
                let p = dir.join(name);
                fs::read_to_string(&p).map_err(|e| Failure::io(&p, e))?
            }
            None => embedded.to_string(),
        };
        match compare(name, &golden, &files[name]) {
            None => println!("ok       {name}"),
            Some(diff) => {
                mismatches += 1;
                println!("MISMATCH {name}");
                print!("{diff}");
            }
        }
    }
    println!("wrote {} files to {}", files.len() + 1, out.display());
    if mismatches > 0 {
        return Err(Failure {
            code: EXIT_MISMATCH,
            message: format!("{mismatches} golden comparison(s) failed"),
        });
    }
    Ok(())
}
