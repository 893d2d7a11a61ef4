//! `unimod`: unimodularity of hierarchical-model design matrices.
//!
//! Exit codes: 0 unimodular (or success), 1 not unimodular (or census
//! disagreement), 2 error or unknown.

mod describe;

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unimod_core::census::{enumerate_complexes, verify_theorem_with, CensusConfig, CENSUS_SEED};
use unimod_core::classify::{classify_binary_with, ClassifyConfig, Method};
use unimod_core::complex::ComplexFile;
use unimod_core::matrix::{design_matrix, kernel_spanning_set};
use unimod_core::nonbinary::{bad_pairs_catalog, classify_d_with, NonbinaryConfig, Verdict};
use unimod_core::oracle::DEFAULT_SEED;
use unimod_core::{DVector, Error, IntegerMatrix, NamedComplex, Relabeled, SimplicialComplex, VertexSet};

#[derive(Parser)]
#[command(name = "unimod", version, about = "Unimodularity of hierarchical-model design matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A complex file, or the name of a built-in complex (see `catalog`).
#[derive(Args)]
struct Input {
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide unimodularity with all levels 2.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "structural")]
        method: Method,
        /// Seed of the randomized circuit search (matrix method).
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Work cap of the exhaustive circuit scan.
        #[arg(long)]
        cap: Option<u128>,
        #[arg(long)]
        json: bool,
    },
    /// Decide unimodularity with the levels in the file's "d" field.
    CheckD {
        #[command(flatten)]
        input: Input,
        /// Levels, overriding the file, e.g. 2,3,2.
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<u64>>,
        /// Work cap of the exhaustive circuit scan.
        #[arg(long)]
        cap: Option<u128>,
        /// Largest design matrix (in columns) handed to the oracle.
        #[arg(long)]
        max_columns: Option<u128>,
        #[arg(long)]
        json: bool,
    },
    /// Print the design matrix.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value_t = Format::Dense)]
        format: Format,
    },
    /// Print the Alexander dual.
    Dual(Input),
    /// Print the link of a face.
    Link {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        face: Vec<usize>,
    },
    /// Print the complex with vertices deleted.
    Delete {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<usize>,
    },
    /// Add cone vertices.
    Cone {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Add ghost vertices.
    Ghost {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Print the Lawrence lifting.
    Lawrence(Input),
    /// Print the kernel spanning set of the binary design matrix, one vector per column.
    Kernel {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Dense)]
        format: Format,
    },
    /// Count complexes on n vertices, or cross-check the classifiers on all of them.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value = "all")]
        method: Method,
        #[arg(long, default_value_t = CENSUS_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// List the built-in complexes.
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dense,
    Csv,
}

fn load(input: &Input) -> Result<ComplexFile, Error> {
    let path = Path::new(&input.input);
    if path.exists() {
        let file = ComplexFile::read(path)?;
        file.complex()?;
        return Ok(file);
    }
    match input.input.parse::<NamedComplex>() {
        Ok(kind) => Ok(ComplexFile::from_complex(&kind.complex()?)),
        Err(_) => Err(Error::Input(format!(
            "{}: no such file, and not the name of a built-in complex",
            input.input
        ))),
    }
}

fn levels(file: &ComplexFile, d: Option<Vec<u64>>) -> Result<DVector, Error> {
    match d {
        Some(d) => ComplexFile { d: Some(d), ..file.clone() }.levels(),
        None => file.levels(),
    }
}

fn print_matrix(m: &IntegerMatrix, format: Format) -> Result<(), Error> {
    match format {
        Format::Dense => print!("{}", m.to_dense_string()),
        Format::Csv => print!("{}", m.to_csv()?),
    }
    Ok(())
}

fn print_complex(c: &SimplicialComplex) {
    println!("{}", ComplexFile::from_complex(c).to_json());
}

fn print_relabeled(r: &Relabeled) {
    println!("{}", ComplexFile::from_relabeled(r).to_json());
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Check { input, method, seed, cap, json } => {
            let c = load(&input)?.complex()?;
            let mut cfg = ClassifyConfig { seed, ..ClassifyConfig::default() };
            if let Some(cap) = cap {
                cfg.oracle.scan_cap = cap;
            }
            let v = classify_binary_with(&c, method, &cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("{}", describe::binary(&c, &v));
            }
            Ok(if v.unimodular { 0 } else { 1 })
        }
        Command::CheckD { input, d, cap, max_columns, json } => {
            let file = load(&input)?;
            let c = file.complex()?;
            let d = levels(&file, d)?;
            let mut cfg = NonbinaryConfig::default();
            if let Some(cap) = cap {
                cfg.oracle.scan_cap = cap;
            }
            if let Some(m) = max_columns {
                cfg.max_oracle_columns = m;
            }
            let v = classify_d_with(&c, &d, &cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("{}", describe::nonbinary(&c, &d, &v));
            }
            Ok(match v.verdict {
                Verdict::Unimodular => 0,
                Verdict::NonUnimodular => 1,
                Verdict::Unknown => 2,
            })
        }
        Command::Matrix { input, d, format } => {
            let file = load(&input)?;
            let a = design_matrix(&file.complex()?, &levels(&file, d)?)?;
            print_matrix(&a, format)?;
            Ok(0)
        }
        Command::Dual(input) => {
            print_complex(&load(&input)?.complex()?.alexander_dual());
            Ok(0)
        }
        Command::Link { input, face } => {
            let c = load(&input)?.complex()?;
            print_relabeled(&c.link(vertex_set(&c, &face)?)?);
            Ok(0)
        }
        Command::Delete { input, vertices } => {
            let c = load(&input)?.complex()?;
            print_relabeled(&c.delete(vertex_set(&c, &vertices)?)?);
            Ok(0)
        }
        Command::Cone { input, count } => {
            print_complex(&load(&input)?.complex()?.cone(count)?);
            Ok(0)
        }
        Command::Ghost { input, count } => {
            print_complex(&load(&input)?.complex()?.add_ghosts(count)?);
            Ok(0)
        }
        Command::Lawrence(input) => {
            print_complex(&load(&input)?.complex()?.lawrence()?);
            Ok(0)
        }
        Command::Kernel { input, format } => {
            print_matrix(&kernel_spanning_set(&load(&input)?.complex()?), format)?;
            Ok(0)
        }
        Command::Census { n, verify, method, seed, json } => census(n, verify, method, seed, json),
        Command::Catalog { json } => {
            catalog(json)?;
            Ok(0)
        }
    }
}

fn vertex_set(c: &SimplicialComplex, labels: &[usize]) -> Result<VertexSet, Error> {
    if let Some(&v) = labels.iter().find(|&&v| v == 0 || v > c.n()) {
        return Err(Error::Input(format!("vertex {v} is not in 1..={}", c.n())));
    }
    Ok(labels.iter().copied().collect())
}

fn census(n: usize, verify: bool, method: Method, seed: u64, json: bool) -> Result<u8, Error> {
    if !verify {
        let labeled = enumerate_complexes(n, false)?.len();
        let classes = enumerate_complexes(n, true)?.len();
        if json {
            println!("{}", serde_json::json!({ "n": n, "labeled": labeled, "isomorphism_classes": classes }));
        } else {
            println!("n = {n}: {labeled} labeled complexes, {classes} up to isomorphism");
        }
        return Ok(0);
    }
    let r = verify_theorem_with(n, &[method], seed, &CensusConfig::default())?;
    if json {
        println!("{}", serde_json::to_string_pretty(&r)?);
    } else {
        print!("{}", describe::census(&r));
    }
    Ok(if r.passed() { 0 } else { 1 })
}

fn catalog(json: bool) -> Result<(), Error> {
    let mut named: Vec<NamedComplex> = NamedComplex::FORBIDDEN.to_vec();
    named.extend((1..=3).map(NamedComplex::BoundarySimplexPlusVertex));
    named.extend([NamedComplex::Cycle4, NamedComplex::DisjointSimplices(1, 1), NamedComplex::Dmn(1, 2)]);
    let pairs = bad_pairs_catalog();
    if json {
        let complexes: Vec<_> = named
            .iter()
            .map(|k| {
                let c = k.complex()?;
                Ok(serde_json::json!({ "name": k.to_string(), "n": c.n(), "facets": c.facet_lists() }))
            })
            .collect::<Result<_, Error>>()?;
        println!("{}", serde_json::to_string_pretty(&serde_json::json!({ "complexes": complexes, "bad_pairs": pairs }))?);
        return Ok(());
    }
    println!("forbidden minors (all levels 2) and examples:");
    for k in named {
        let c = k.complex()?;
        println!("  {:<24} n={} facets {}", k.to_string(), c.n(), describe::facets(&c.facet_lists()));
    }
    println!("bad pairs for larger levels:");
    for p in pairs {
        let d: Vec<String> = p.pattern.iter().map(u64::to_string).collect();
        println!("  {:<44} facets {} d=({})", p.name, describe::facets(&p.facets), d.join(","));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
