use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hvlab::factbase::{seed_facts, FactSet, DEFAULT_MAX_CODIM};
use hvlab::macaulay::{gotzmann_persistence, green_restrict, macaulay_next, macaulay_prev, macaulay_rep};
use hvlab::prover::{
    build_knowledge, canonical_json, refute_by_enumeration, shipped_plans, tabulate, verify_certificate, CasePlan,
    Certificate, Knowledge, Refutation,
};
use hvlab::sequences::{
    compressed_level_candidate, first_macaulay_violation, is_o_sequence, is_symmetric, level_decomposition_check,
    reverse_difference, trivial_extension, HVector,
};
use hvlab::Error;

const EXIT_DOMAIN: u8 = 1;
const EXIT_REFUTED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "hvlab", version, about = "Hilbert function bounds and Gorenstein h-vector certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the d-binomial expansion of N
    Expand {
        n: u64,
        #[arg(short = 'd')]
        degree: usize,
    },
    /// Evaluate a growth bound on N in degree d
    Bound {
        #[arg(value_enum)]
        kind: BoundKind,
        n: u64,
        #[arg(short = 'd')]
        degree: usize,
        /// Steps for `persist`
        #[arg(short = 's', default_value_t = 1)]
        steps: usize,
    },
    /// Test an h-vector
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Build h-vectors
    Construct {
        #[command(subcommand)]
        what: ConstructCommand,
    },
    /// Tabulate statuses of (1,r,h2,r,1) or (1,r,h2,h2,r,1)
    Classify {
        #[arg(short = 'e', value_parser = clap::value_parser!(u8).range(4..=5))]
        socle_degree: u8,
        #[arg(long = "max-codim", value_parser = clap::value_parser!(u64).range(1..=64))]
        max_codim: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Refute an h-vector, by a shipped plan or by diagram enumeration
    Prove {
        hvector: String,
        #[arg(long = "emit-cert")]
        emit_cert: Option<PathBuf>,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Replay a certificate
    Verify {
        cert: PathBuf,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Inspect and merge fact files
    Facts {
        #[command(subcommand)]
        what: FactsCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Next,
    Prev,
    Green,
    Persist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum CheckCommand {
    Oseq { hvector: String },
    Symmetric { hvector: String },
    /// Reverse-difference test against a quotient h-vector
    LevelDecomp { hvector: String, quotient: String },
}

#[derive(Subcommand)]
enum ConstructCommand {
    TrivialExt {
        hvector: String,
    },
    CompressedLevel {
        #[arg(short = 'r')]
        r: u64,
        #[arg(short = 't')]
        t: u64,
        #[arg(short = 'e')]
        e: usize,
    },
}

#[derive(Subcommand)]
enum FactsCommand {
    /// One line per record
    List {
        /// Show the closed knowledge base instead of the seeds
        #[arg(long)]
        closed: bool,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Write the fact file to stdout
    Export {
        #[arg(long)]
        closed: bool,
        #[command(flatten)]
        data: DataArgs,
    },
    /// Merge a fact file into the current seeds
    Import {
        file: PathBuf,
        /// Write the merged file here instead of stdout
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        data: DataArgs,
    },
}

#[derive(Args, Clone)]
struct DataArgs {
    /// Seed fact file (default: $HVLAB_DATA/facts.hvf)
    #[arg(long)]
    facts: Option<PathBuf>,
    /// Directory of case plans (default: $HVLAB_DATA/plans)
    #[arg(long)]
    plans: Option<PathBuf>,
}

enum Failure {
    Domain(String),
    Refuted(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn data_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("HVLAB_DATA") {
        return Some(PathBuf::from(dir));
    }
    let dev = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    dev.is_dir().then_some(dev)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

impl DataArgs {
    fn seeds(&self) -> Result<FactSet, Failure> {
        let path = self.facts.clone().or_else(|| data_dir().map(|d| d.join("facts.hvf")));
        match path {
            Some(p) if p.exists() || self.facts.is_some() => Ok(FactSet::import(&read(&p)?)?),
            _ => Ok(seed_facts()),
        }
    }

    fn plans(&self) -> Result<Vec<CasePlan>, Failure> {
        let dir = self.plans.clone().or_else(|| data_dir().map(|d| d.join("plans")));
        let Some(dir) = dir.filter(|d| d.is_dir() || self.plans.is_some()) else {
            return Ok(shipped_plans()?);
        };
        let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
            .map_err(|e| Failure::Domain(format!("{}: {e}", dir.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        paths
            .iter()
            .map(|p| CasePlan::from_json(&read(p)?).map_err(|e| Failure::Domain(format!("{}: {e}", p.display()))))
            .collect()
    }

    fn knowledge(&self, max_codim: u64) -> Result<Knowledge, Failure> {
        Ok(build_knowledge(&self.seeds()?, &self.plans()?, max_codim.max(DEFAULT_MAX_CODIM))?)
    }
}

fn hvector(text: &str) -> Result<HVector, Failure> {
    Ok(text.parse()?)
}

/// Writes bulk output; a closed pipe downstream is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn verdict(ok: bool, message: String) -> Outcome {
    println!("{message}");
    if ok {
        Ok(())
    } else {
        Err(Failure::Refuted(String::new()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Expand { n, degree } => {
            let rep = macaulay_rep(n, degree)?;
            println!("{n} = {rep}");
        }
        Command::Bound { kind, n, degree, steps } => {
            let value = match kind {
                BoundKind::Next => macaulay_next(n, degree)?,
                BoundKind::Prev => macaulay_prev(n, degree)?,
                BoundKind::Green => green_restrict(n, degree)?,
                BoundKind::Persist => gotzmann_persistence(n, degree, steps)?,
            };
            println!("{value}");
        }
        Command::Check { what } => match what {
            CheckCommand::Oseq { hvector: text } => {
                let h = hvector(&text)?;
                return match first_macaulay_violation(h.entries()) {
                    None => verdict(true, format!("{h} is an O-sequence")),
                    Some(d) => {
                        let bound = macaulay_next(h.get(d), d)?;
                        verdict(
                            false,
                            format!(
                                "{h} is not an O-sequence: first violating degree {}, h_{} = {} > {bound} = h_{d}^<{d}>",
                                d + 1,
                                d + 1,
                                h.get(d + 1)
                            ),
                        )
                    }
                };
            }
            CheckCommand::Symmetric { hvector: text } => {
                let h = hvector(&text)?;
                let ok = is_symmetric(&h);
                return verdict(ok, format!("{h} is {}symmetric", if ok { "" } else { "not " }));
            }
            CheckCommand::LevelDecomp { hvector: h, quotient: q } => {
                let (h, q) = (hvector(&h)?, hvector(&q)?);
                let diff = reverse_difference(&h, &q)?;
                let ok = level_decomposition_check(&h, &q)?;
                return verdict(
                    ok,
                    format!(
                        "reverse difference {diff} is {}an O-sequence",
                        if ok { "" } else { "not " }
                    ),
                );
            }
        },
        Command::Construct { what } => {
            let h = match what {
                ConstructCommand::TrivialExt { hvector: text } => trivial_extension(&hvector(&text)?)?,
                ConstructCommand::CompressedLevel { r, t, e } => compressed_level_candidate(r, t, e)?,
            };
            println!("{h}");
        }
        Command::Classify {
            socle_degree,
            max_codim,
            format,
            data,
        } => {
            let k = data.knowledge(max_codim)?;
            let table = tabulate(usize::from(socle_degree), max_codim, &k.facts)?;
            let text = match format {
                Format::Table => table.to_table(),
                Format::Json => canonical_json(&table),
                Format::Csv => table.to_csv(),
            };
            emit(&text);
        }
        Command::Prove {
            hvector: text,
            emit_cert,
            data,
        } => {
            let h = hvector(&text)?;
            if !is_o_sequence(&h) {
                return Err(Failure::Domain(format!("{h} is not an O-sequence")));
            }
            let k = data.knowledge(h.codimension())?;
            let cert = match k.certificates.iter().find(|c| c.target == h) {
                Some(c) => c.clone(),
                None => match refute_by_enumeration(&h, &k.facts)? {
                    Refutation::Refuted(c) => c,
                    Refutation::Inconclusive { survivors } => {
                        println!("{h}: inconclusive, {} surviving diagram(s)", survivors.len());
                        for d in survivors {
                            println!("  mid={:?} bot={:?}", d.mid, d.bot);
                        }
                        return Err(Failure::Refuted(String::new()));
                    }
                },
            };
            println!("{h}: {} by {} (sha256 {})", cert.conclusion, cert.id, cert.digest());
            if let Some(path) = emit_cert {
                fs::write(&path, cert.to_canonical_json())
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            }
        }
        Command::Verify { cert, data } => {
            let text = read(&cert)?;
            let cert = Certificate::from_json(&text).map_err(|e| Failure::Refuted(format!("malformed certificate: {e}")))?;
            let k = data.knowledge(cert.target.codimension())?;
            match verify_certificate(&cert, &k.facts) {
                Ok(()) => println!("verified {} for {}: {}", cert.id, cert.target, cert.conclusion),
                Err(e) => return Err(Failure::Refuted(format!("verification failed: {e}"))),
            }
        }
        Command::Facts { what } => match what {
            FactsCommand::List { closed, data } => {
                let fs = if closed { data.knowledge(DEFAULT_MAX_CODIM)?.facts } else { data.seeds()? };
                let mut out = std::io::stdout().lock();
                for rec in fs.records() {
                    let prov = rec.provenance.as_ref().map_or_else(|| "none".into(), |p| p.to_string());
                    let _ = writeln!(out, "{:<22} {:<13} {prov}", rec.hvector.to_string(), rec.status.to_string());
                }
            }
            FactsCommand::Export { closed, data } => {
                let fs = if closed { data.knowledge(DEFAULT_MAX_CODIM)?.facts } else { data.seeds()? };
                emit(&fs.export());
            }
            FactsCommand::Import { file, output, data } => {
                let incoming = FactSet::import(&read(&file)?)?;
                let mut merged = data.seeds()?;
                if let Some(rule) = incoming.unimodal_rule() {
                    merged = merged.with_unimodal_rule(rule);
                }
                let mut added = 0;
                for rec in incoming.records() {
                    if merged.insert(rec.clone())? {
                        added += 1;
                    }
                }
                let text = merged.export();
                match output {
                    Some(path) => {
                        fs::write(&path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
                        eprintln!("{added} new record(s), {} total", merged.len());
                    }
                    None => emit(&text),
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Refuted(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(EXIT_REFUTED)
        }
    }
}
