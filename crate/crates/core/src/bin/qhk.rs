use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qhk::basis::GradedBasis;
use qhk::cache::{load_or_compute, CacheStatus};
use qhk::json::{element_to_json, ElementJson};
use qhk::parse::parse_expr;
use qhk::sieve::{annihilated_in, max_reachable_length, primitive_in, spherical_in};
use qhk::steenrod::sq_down;
use qhk::verify::{verify_square_root, verify_theorem1, verify_theorem2, verify_theorem3, VerifyReport};
use qhk::{Element, Space};

/// `println!` that exits quietly when the reader has gone away.
macro_rules! out {
    ($($arg:tt)*) => {
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    };
}

#[derive(Parser)]
#[command(name = "qhk", version, about = "Dyer-Lashof and Steenrod calculus in H_*(QX; F_2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    Root,
}

#[derive(clap::Args)]
struct Common {
    /// S<n>, P or SCP, optionally followed by ^s<k>.
    #[arg(long)]
    space: Space,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(clap::Args)]
struct Range {
    #[arg(long, conflicts_with = "max_degree")]
    degree: Option<u32>,
    #[arg(long)]
    max_degree: Option<u32>,
    /// Word length cap; defaults to the largest length reachable in the top degree.
    #[arg(long)]
    max_length: Option<usize>,
    /// Directory for cached monomial bases.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print an expression in canonical form.
    Normalize {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the dual Steenrod square Sq^a_*.
    Act {
        #[arg(long)]
        sq: u32,
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Monomial basis of graded pieces.
    Basis {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        range: Range,
    },
    /// Basis of the A-annihilated classes.
    Annihilated {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        range: Range,
    },
    /// Basis of the primitives.
    Primitives {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        range: Range,
    },
    /// Basis of the A-annihilated primitives.
    Sieve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        range: Range,
    },
    /// Run a verifier and print its report.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long, default_value_t = 64)]
        max_vectors: usize,
    },
}

#[derive(Serialize)]
struct Piece {
    degree: u32,
    dim: usize,
    basis: Vec<ElementJson>,
}

#[derive(Serialize)]
struct Listing {
    space: String,
    max_length: usize,
    pieces: Vec<Piece>,
}

enum Failure {
    Usage(String),
    Verify,
}

impl From<qhk::Error> for Failure {
    fn from(e: qhk::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn print_element(e: &Element, format: Format) {
    match format {
        Format::Text => out!("{e}"),
        Format::Json => out!("{}", element_to_json(e)),
    }
}

fn degrees(range: &Range) -> Result<Vec<u32>, Failure> {
    match (range.degree, range.max_degree) {
        (Some(d), _) => Ok(vec![d]),
        (None, Some(m)) => Ok((1..=m).collect()),
        (None, None) => Err(Failure::Usage("one of --degree or --max-degree is required".into())),
    }
}

fn graded_basis(space: Space, degree: u32, cap: usize, cache: Option<&PathBuf>) -> Result<GradedBasis, Failure> {
    let Some(dir) = cache else {
        return Ok(GradedBasis::new(space, degree, cap));
    };
    let (basis, status) = load_or_compute(dir, space, degree, cap)?;
    if let CacheStatus::Rebuilt(why) = status {
        eprintln!("warning: cache for degree {degree} ignored ({why}); recomputed");
    }
    Ok(basis)
}

/// Coordinates of a subspace basis inside a graded monomial basis.
type KernelFn = fn(&GradedBasis) -> Vec<Vec<usize>>;

fn listing(
    common: &Common,
    range: &Range,
    kernel: Option<KernelFn>,
) -> Result<(), Failure> {
    let degs = degrees(range)?;
    let top = degs.iter().copied().max().unwrap_or(0);
    let cap = range.max_length.unwrap_or_else(|| max_reachable_length(common.space, top));
    let mut pieces = Vec::new();
    for d in degs {
        let basis = graded_basis(common.space, d, cap, range.cache.as_ref())?;
        let elements: Vec<Element> = match kernel {
            None => basis.monomials().iter().map(|m| Element::from(m.clone())).collect(),
            Some(f) => f(&basis).into_iter().map(|v| basis.element(v)).collect(),
        };
        pieces.push((d, elements));
    }
    match common.format {
        Format::Text => {
            out!("space {} max-length {cap}", common.space);
            for (d, elements) in &pieces {
                out!("degree {d}: dim {}", elements.len());
                for e in elements {
                    out!("  {e}");
                }
            }
        }
        Format::Json => {
            let out = Listing {
                space: common.space.to_string(),
                max_length: cap,
                pieces: pieces
                    .iter()
                    .map(|(d, es)| Piece { degree: *d, dim: es.len(), basis: es.iter().map(ElementJson::from).collect() })
                    .collect(),
            };
            out!("{}", serde_json::to_string(&out).expect("plain data"));
        }
    }
    Ok(())
}

fn print_report(r: &VerifyReport, format: Format) {
    match format {
        Format::Json => out!("{}", serde_json::to_string(r).expect("plain data")),
        Format::Text => {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            out!("theorem {} on {}: {status}", r.theorem, r.space);
            let (lo, hi) = (r.bounds.degrees.first().unwrap_or(&0), r.bounds.degrees.last().unwrap_or(&0));
            out!("degrees {lo}..{hi}, max-length {}, checked {}, skipped {}, {} ms", r.bounds.max_length, r.checked, r.skipped, r.millis);
            for n in &r.notes {
                out!("note: {n}");
            }
            for e in &r.excluded {
                out!("excluded: {e}");
            }
            for f in &r.failures {
                out!("failure: {f}");
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Normalize { expr, common } => {
            print_element(&parse_expr(&expr, common.space)?, common.format);
        }
        Command::Act { sq, expr, common } => {
            let e = parse_expr(&expr, common.space)?;
            print_element(&sq_down(sq, &e)?, common.format);
        }
        Command::Basis { common, range } => listing(&common, &range, None)?,
        Command::Annihilated { common, range } => listing(&common, &range, Some(annihilated_in))?,
        Command::Primitives { common, range } => listing(&common, &range, Some(primitive_in))?,
        Command::Sieve { common, range } => listing(&common, &range, Some(spherical_in))?,
        Command::Verify { theorem, common, max_degree, max_length, max_vectors } => {
            let space = common.space;
            let cap = max_length.unwrap_or_else(|| max_reachable_length(space, max_degree));
            let report = match theorem {
                Theorem::One => verify_theorem1(space, max_degree, cap),
                Theorem::Two => verify_theorem2(space, max_degree, cap, max_vectors)?,
                Theorem::Three => {
                    let degs: Vec<u32> = (1..=max_degree).collect();
                    verify_theorem3(space, &degs, cap, max_vectors)
                }
                Theorem::Root => verify_square_root(space, max_degree, cap),
            };
            print_report(&report, common.format);
            if !report.passed() {
                return Err(Failure::Verify);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
