use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fqg_core::category::{
    closure_with_progress, compare, hk_direction, level, moments, roundtrip, CategoryId, CategorySpec, ClosureRound,
    GeneratorSet, LevelResult,
};
use fqg_core::group::{verify_thm14_with, FiniteGroup, LambdaMap};
use fqg_core::linear::{gram, rank_exact, span_dim_oracle, Dimension, MAX_DENSE_N};
use fqg_core::{Diagram, Error, Word};

#[derive(Parser)]
#[command(name = "fqg", version, about = "Diagram categories of free quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct CellArgs {
    #[arg(long)]
    category: CategoryId,
    /// Upper word; empty for ∅.
    #[arg(long, default_value = "")]
    upper: Word,
    /// Lower word; empty for ∅.
    #[arg(long, default_value = "")]
    lower: Word,
}

#[derive(clap::Args)]
struct CapArgs {
    #[arg(long, default_value_t = 12)]
    max_points: usize,
    #[arg(long, default_value_t = 4)]
    slack: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List the diagrams of one cell in canonical order.
    Enumerate(CellArgs),
    /// Compare the closure of a category's generators with its predicate.
    ClosureCheck {
        #[arg(long)]
        category: CategoryId,
        #[command(flatten)]
        cap: CapArgs,
        /// Leave out a generator by name (negative control).
        #[arg(long)]
        drop_generator: Option<String>,
    },
    /// Complexification round trips; `h` and `k` also report the direction
    /// of their correspondence.
    Roundtrip {
        #[arg(long)]
        category: CategoryId,
        #[command(flatten)]
        cap: CapArgs,
    },
    /// Fixed-point counts `|D(∅, a^k)|` or `|D(∅, γ_k)|`.
    Moments {
        #[arg(long)]
        category: CategoryId,
        #[arg(long, default_value_t = 8)]
        k: usize,
    },
    /// Smallest `l ≤ k` with a fixed vector in the `2l+1` power.
    Level {
        #[arg(long)]
        category: CategoryId,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Gram matrix and exact rank of one cell.
    Gram {
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Ball-bounded check of the free product description of the group of `z·g_i`.
    GroupCheck {
        /// Built-in group: Z2, Z4, Z2xZ2, S3.
        #[arg(long, conflicts_with = "table")]
        group: Option<String>,
        /// Cayley table JSON file.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        radius: usize,
        /// Use the wrong map `λ ↦ e`; the check is expected to fail.
        #[arg(long)]
        negative_control: bool,
    },
}

/// A rendered result and whether its verdict passed.
struct Outcome {
    json: String,
    csv: String,
    passed: bool,
}

impl Outcome {
    fn new(value: &impl Serialize, csv: String, passed: bool) -> Result<Self, Error> {
        let json = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))? + "\n";
        Ok(Outcome { json, csv, passed })
    }
}

fn progress(label: &str) -> impl FnMut(&ClosureRound) + '_ {
    move |r| eprintln!("[{label}] round {}: {} new, {} total", r.round, r.new_diagrams, r.total)
}

fn pairs_field(d: &Diagram) -> String {
    d.pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}

fn checks_csv<'a>(rows: impl IntoIterator<Item = (&'a str, bool)>) -> String {
    let mut s = String::from("check,passed\n");
    for (name, ok) in rows {
        let _ = writeln!(s, "\"{}\",{ok}", name.replace('"', "\"\""));
    }
    s
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Enumerate(c) => {
            let ds = CategorySpec::Named(c.category).cell(&c.upper, &c.lower)?;
            let mut csv = String::from("index,upper,lower,pairs\n");
            for (i, d) in ds.iter().enumerate() {
                let _ = writeln!(csv, "{i},{},{},{}", d.upper(), d.lower(), pairs_field(d));
            }
            #[derive(Serialize)]
            struct Listing<'a> {
                category: CategoryId,
                upper: &'a Word,
                lower: &'a Word,
                count: usize,
                diagrams: &'a [Diagram],
            }
            let listing = Listing { category: c.category, upper: &c.upper, lower: &c.lower, count: ds.len(), diagrams: &ds };
            Outcome::new(&listing, csv, true)
        }
        Command::ClosureCheck { category, cap, drop_generator } => {
            let mut gens = GeneratorSet::presentation(*category);
            if let Some(name) = drop_generator {
                let before = gens.items.len();
                gens.items.retain(|(n, _)| n != name);
                if gens.items.len() == before {
                    return Err(Error::Guard(format!("{category} has no generator named {name}")));
                }
            }
            let closed = closure_with_progress(&gens, cap.max_points, cap.slack, &mut progress("closure"))?;
            let cmp = compare(&CategorySpec::Generated(closed), &CategorySpec::Named(*category), cap.max_points)?;
            let csv = checks_csv([(format!("closure = {category}").as_str(), cmp.equal)]);
            Outcome::new(&cmp, csv, cmp.equal)
        }
        Command::Roundtrip { category, cap } => {
            let report = roundtrip(*category, cap.max_points, cap.slack, &mut progress("roundtrip"))?;
            let direction = match category {
                CategoryId::H | CategoryId::K => {
                    Some(hk_direction(cap.max_points, cap.slack, &mut progress("direction"))?)
                }
                _ => None,
            };
            let mut rows: Vec<(String, bool)> = report.checks.iter().map(|c| (c.name.clone(), c.passed)).collect();
            if let Some(d) = &direction {
                rows.push(("complexify(h) = k".into(), d.complexify_h_is_k));
                rows.push(("decomplexify(k) = h".into(), d.decomplexify_k_is_h));
            }
            let passed = report.passed && direction.as_ref().is_none_or(|d| d.complexify_h_is_k);
            let csv = checks_csv(rows.iter().map(|(n, p)| (n.as_str(), *p)));
            #[derive(Serialize)]
            struct Full<'a> {
                roundtrip: &'a fqg_core::category::RoundTripReport,
                #[serde(skip_serializing_if = "Option::is_none")]
                direction: Option<&'a fqg_core::category::DirectionReport>,
            }
            Outcome::new(&Full { roundtrip: &report, direction: direction.as_ref() }, csv, passed)
        }
        Command::Moments { category, k } => {
            let m = moments(&CategorySpec::Named(*category), *k)?;
            let mut csv = String::from("k,count\n");
            for (i, c) in m.iter().enumerate() {
                let _ = writeln!(csv, "{i},{c}");
            }
            #[derive(Serialize)]
            struct Moments<'a> {
                category: CategoryId,
                moments: &'a [usize],
            }
            Outcome::new(&Moments { category: *category, moments: &m }, csv, true)
        }
        Command::Level { category, k } => {
            let l = level(&CategorySpec::Named(*category), *k)?;
            let shown = match l {
                LevelResult::Finite(v) => v.to_string(),
                LevelResult::AboveCap(c) => format!("above {c}"),
            };
            #[derive(Serialize)]
            struct Level {
                category: CategoryId,
                level: LevelResult,
            }
            Outcome::new(&Level { category: *category, level: l }, format!("category,level\n{category},{shown}\n"), true)
        }
        Command::Gram { cell, n } => {
            let dim = Dimension::new(*n)?;
            let ds = CategorySpec::Named(cell.category).cell(&cell.upper, &cell.lower)?;
            let g = gram(&ds, dim)?;
            let rank = rank_exact(&g);
            let oracle = if *n <= MAX_DENSE_N { Some(span_dim_oracle(&ds, dim)?) } else { None };
            let id = format!("{}({},{})", cell.category, cell.upper, cell.lower);
            let csv = format!("cell,n,diagram_count,rank\n{id},{n},{},{rank}\n", ds.len());
            #[derive(Serialize)]
            struct GramReport<'a> {
                cell: String,
                n: u32,
                basis: &'a [Diagram],
                matrix: &'a [Vec<u64>],
                rank: usize,
                span_dimension: Option<usize>,
            }
            let passed = oracle.is_none_or(|o| o == rank);
            let report = GramReport { cell: id, n: *n, basis: &g.basis, matrix: &g.entries, rank, span_dimension: oracle };
            Outcome::new(&report, csv, passed)
        }
        Command::GroupCheck { group, table, radius, negative_control } => {
            let g = match (group, table) {
                (Some(name), None) => FiniteGroup::builtin(name)?,
                (None, Some(path)) => {
                    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let name = path.file_stem().map_or("table".into(), |s| s.to_string_lossy().into_owned());
                    FiniteGroup::from_json(&name, &text)?
                }
                _ => return Err(Error::Guard("give exactly one of --group or --table".into())),
            };
            let map = if *negative_control { LambdaMap::Trivial } else { LambdaMap::Embedding };
            let r = verify_thm14_with(&g, *radius, map)?;
            let csv = checks_csv([
                ("injective", r.injective),
                ("image in t-ball", r.image_in_t_ball),
                ("t-ball in image", r.t_ball_in_image),
                ("ball bijection", r.ball_bijection),
                ("homomorphism", r.homomorphism),
            ]);
            Outcome::new(&r, csv, r.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => &outcome.json,
        Format::Csv => &outcome.csv,
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
