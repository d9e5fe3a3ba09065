//! `bookram` command-line front end.
//!
//! Exit codes: 0 success or property holds, 1 property violated or
//! certificate rejected, 2 usage or input error, 3 inconclusive.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bookram::books::{local_profile, max_book, verify_certificate, SpineSearch};
use bookram::constructions::{
    find_hyper_base, hyper_max_book, hypergraph_blowup, multicolour_blowup, random_colouring,
    verify_no_book_multicolour,
};
use bookram::graph::{emit_colouring, emit_hyper, parse_colouring, parse_hyper, BookCertificate, Colouring};
use bookram::lemmas::{degprod_certify, dichotomy_certify};
use bookram::pipeline::{run_pipeline, ExtractOptions, PipelineParams};
use bookram::search::{find_witness, ramsey_book, sat_export, Budget, SearchOptions, Status, WitnessOutcome};

const OK: u8 = 0;
const VIOLATED: u8 = 1;
const USAGE: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "bookram", version, about = "Monochromatic books in edge colourings of complete graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "BOOKRAM_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest monochromatic book with a k-vertex spine.
    Book {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also write the certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Page-count histogram over all monochromatic k-cliques.
    Profile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Exact book Ramsey number by exhaustive search.
    Search(SearchArgs),
    /// DIMACS CNF that is satisfiable iff K_N has a book-free colouring.
    SatExport {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "vertices")]
        vertices: usize,
        #[arg(long, default_value_t = bookram::search::DEFAULT_CLAUSE_CAP)]
        cap: u128,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate colourings.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a certificate, or check that a colouring has no book.
    Verify(VerifyArgs),
    /// Numerically certify the optimisation lemmas.
    #[command(subcommand)]
    Lemmas(Lemmas),
    /// Partition, reduced graph and case analysis, returning a verified book.
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Search only this vertex count instead of walking N upward.
    #[arg(long)]
    at: Option<usize>,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    seconds: Option<f64>,
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long, default_value_t = 0)]
    split_depth: usize,
    /// Write the largest book-free witness here.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Uniform random two-colouring.
    Random {
        #[arg(long = "vertices")]
        vertices: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Multicolour blow-up of a base colouring; internal edges get a new colour.
    Blowup {
        /// Base KNC file; defaults to the pentagon.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        n: usize,
    },
    /// Hypergraph blow-up of a KNSC base, given or found by random search.
    Hblowup {
        #[arg(long)]
        base: Option<PathBuf>,
        /// Base vertex count when searching.
        #[arg(long, default_value_t = 5)]
        base_vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        tries: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// KNC colouring (or KNSC with --hyper).
    #[arg(long)]
    input: PathBuf,
    /// Certificate to check; without it the colouring is checked for having
    /// no book B_n^(k) at all.
    #[arg(long)]
    cert: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    hyper: bool,
}

#[derive(Subcommand)]
enum Lemmas {
    Dichotomy {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    Degprod {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    parts: usize,
    #[arg(long, default_value_t = 0.25)]
    eta: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 3)]
    t_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Swap rounds of partition local search.
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long)]
    trace: Option<PathBuf>,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_colouring(path: &Path) -> Result<Colouring, Failure> {
    parse_colouring(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn print_book(result: &SpineSearch) {
    match result.certificate() {
        None => println!("no spine"),
        Some(c) => print!("{}", c.to_text()),
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    match cli.command {
        Command::Book { input, k, cert } => {
            let col = load_colouring(&input)?;
            let result = max_book(&col, k)?;
            print_book(&result);
            if let (Some(path), Some(c)) = (cert, result.certificate()) {
                write(&path, &c.to_text())?;
            }
            Ok(OK)
        }
        Command::Profile { input, k } => {
            let col = load_colouring(&input)?;
            print!("{}", local_profile(&col, k)?.to_tsv());
            Ok(OK)
        }
        Command::Search(args) => search(args),
        Command::SatExport {
            k,
            n,
            vertices,
            cap,
            output,
        } => {
            let cnf = sat_export(k, n, vertices, cap)?;
            match output {
                Some(path) => write(&path, &cnf)?,
                None => std::io::stdout().write_all(cnf.as_bytes())?,
            }
            Ok(OK)
        }
        Command::Construct(c) => construct(c),
        Command::Verify(args) => verify(args),
        Command::Lemmas(l) => {
            let report = match l {
                Lemmas::Dichotomy {
                    k,
                    t,
                    samples,
                    seed,
                    tol,
                } => dichotomy_certify(k, t, samples, seed, tol)?,
                Lemmas::Degprod {
                    l,
                    k,
                    samples,
                    seed,
                    tol,
                } => degprod_certify(l, k, samples, seed, tol)?,
            };
            print!("{}", report.to_tsv());
            Ok(if report.holds() { OK } else { VIOLATED })
        }
        Command::Pipeline(args) => pipeline(args),
    }
}

fn search(args: SearchArgs) -> Outcome {
    let budget = Budget {
        nodes: args.max_nodes,
        seconds: args.seconds,
    };
    let opts = SearchOptions {
        symmetry: !args.no_symmetry,
        split_depth: args.split_depth,
    };
    if let Some(nv) = args.at {
        let found = find_witness(args.k, args.n, nv, budget, opts)?;
        let (label, code) = match &found.outcome {
            WitnessOutcome::Found(_) => ("found", OK),
            WitnessOutcome::NoneExists => ("none", OK),
            WitnessOutcome::Inconclusive => ("inconclusive", INCONCLUSIVE),
        };
        println!("k\tn\tN\toutcome\tnodes");
        println!("{}\t{}\t{nv}\t{label}\t{}", args.k, args.n, found.nodes);
        if let (Some(path), WitnessOutcome::Found(col)) = (&args.witness, &found.outcome) {
            write(path, &emit_colouring(col))?;
        }
        return Ok(code);
    }
    let result = ramsey_book(args.k, args.n, budget, opts)?;
    print!("{}", result.to_tsv());
    if let Some(path) = &args.witness {
        write(path, &emit_colouring(&result.witness))?;
    }
    Ok(match result.status {
        Status::Exact => OK,
        Status::Bounded => INCONCLUSIVE,
    })
}

fn construct(c: Construct) -> Outcome {
    let text = match c {
        Construct::Random { vertices, seed } => {
            if vertices == 0 {
                return Err(Failure("--vertices must be at least 1".into()));
            }
            emit_colouring(&random_colouring(vertices, seed))
        }
        Construct::Blowup { base, n } => {
            let base = match base {
                Some(path) => load_colouring(&path)?,
                None => Colouring::pentagon(),
            };
            emit_colouring(&multicolour_blowup(&base, n)?)
        }
        Construct::Hblowup {
            base,
            base_vertices,
            seed,
            tries,
            n,
            k,
            s,
        } => {
            let base = match base {
                Some(path) => parse_hyper(&read(&path)?)?,
                None => {
                    if s == 0 || k % s != 0 {
                        return Err(Failure(format!("k = {k} must be a multiple of s = {s}")));
                    }
                    match find_hyper_base(base_vertices, s, k / s, seed, tries)? {
                        Some(h) => h,
                        None => {
                            eprintln!("no base without a monochromatic K_{}^({s}) in {tries} tries", k / s);
                            return Ok(INCONCLUSIVE);
                        }
                    }
                }
            };
            emit_hyper(&hypergraph_blowup(&base, n, k, s)?)
        }
    };
    print!("{text}");
    Ok(OK)
}

fn verify(args: VerifyArgs) -> Outcome {
    let text = read(&args.input)?;
    if args.hyper {
        let h = parse_hyper(&text)?;
        let k = args.k.ok_or_else(|| Failure("--hyper needs --k".into()))?;
        return Ok(match hyper_max_book(&h, k)? {
            SpineSearch::Book(c) if c.page_count() >= args.n => {
                println!("reject: book with {} pages", c.page_count());
                print!("{}", c.to_text());
                VIOLATED
            }
            _ => {
                println!("accept");
                OK
            }
        });
    }
    let col = parse_colouring(&text)?;
    match (&args.cert, args.k) {
        (Some(path), _) => {
            let cert = BookCertificate::parse(&read(path)?)?;
            Ok(match verify_certificate(&col, &cert, args.n) {
                Ok(()) => {
                    println!("accept");
                    OK
                }
                Err(why) => {
                    println!("reject: {why}");
                    VIOLATED
                }
            })
        }
        (None, Some(k)) => Ok(match verify_no_book_multicolour(&col, k, args.n) {
            Ok(()) => {
                println!("accept");
                OK
            }
            Err(cert) => {
                println!("reject: colour {} has a book with {} pages", cert.colour, cert.page_count());
                print!("{}", cert.to_text());
                VIOLATED
            }
        }),
        (None, None) => Err(Failure("verify needs --cert or --k".into())),
    }
}

fn pipeline(args: PipelineArgs) -> Outcome {
    let col = load_colouring(&args.input)?;
    let params = PipelineParams {
        k: args.k,
        parts: args.parts,
        eta: args.eta,
        delta: args.delta,
        seed: args.seed,
        steps: args.steps,
        extract: ExtractOptions {
            t_max: args.t_max,
            ..ExtractOptions::default()
        },
    };
    let x = run_pipeline(&col, &params)?;
    if let Some(path) = &args.trace {
        write(path, &x.trace)?;
    }
    match x.winner {
        Some(w) => println!("case\t{}", x.candidates[w].prescription.case.name()),
        None => println!("case\tnone"),
    }
    print_book(&x.result);
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
