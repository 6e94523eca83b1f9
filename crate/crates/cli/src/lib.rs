//! The `cphg` command line.
//!
//! Exit codes: 0 when a command reached a decision (including not-cp), 1 on
//! usage or input-file errors, 2 when a precondition or capability limit
//! prevented a decision.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cphg_core::format::{self, Document, Warning};
use cphg_core::{
    construct_cp_tensor, corollary_check, decompose, is_zero_one_cp, oracle_cp_rank, oracle_is_cp,
    reducibility_witness, verify_certificate, zero_entry_dominance, Error, MultiHypergraph,
    OracleBudget, SymTensor, DEFAULT_EXHAUSTIVE_LIMIT,
};

pub mod report;

use report::{
    dense_slices, first_non_binary, AnalyzeReport, BlockOut, Check, ConstructReport,
    DecomposeReport, InputKind, IsCpReport, OracleReport, PatternReport, Report, TensorOut,
    WitnessOut, ZeroBlockOut,
};

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cphg",
    version,
    about = "Completely positive tensors and multi-hypergraphs"
)]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Pretty)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Pretty,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, co-rank, branches, bases, Property R and dominance.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
        exhaustive_limit: usize,
    },
    /// Decide whether a (0,1) tensor is {0,1}-completely positive.
    IsCp { file: PathBuf },
    /// Build a {0,1}-cp tensor associated with a hypergraph.
    ConstructCp {
        file: PathBuf,
        /// Write the constructed tensor file here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Permute a tensor into a direct sum of branch blocks and a zero block.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
        exhaustive_limit: usize,
    },
    /// Exhaustive search for a {0,1} factorization and the cp-rank.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Convert a tensor to its pattern hypergraph, or a hypergraph to its
    /// associated (0,1) tensor.
    Pattern {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = OracleBudget::default().max_dimension)]
    pub max_dimension: usize,
    /// Cap on the number of rank-one terms.
    #[arg(long, default_value_t = OracleBudget::default().max_total_vectors)]
    pub max_vectors: u64,
    /// Cap on visited search nodes.
    #[arg(long, default_value_t = OracleBudget::default().node_limit)]
    pub node_limit: u64,
}

impl From<&BudgetArgs> for OracleBudget {
    fn from(b: &BudgetArgs) -> Self {
        OracleBudget {
            max_dimension: b.max_dimension,
            max_total_vectors: b.max_vectors,
            node_limit: b.node_limit,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Undecided(String),
    /// A report was produced but the decision was not reached.
    UndecidedReport(Box<Report>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Undecided(other.to_string()),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_DECIDED,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let emit = |report: &Report| match cli.format {
        OutputFormat::Pretty => report.pretty(),
        OutputFormat::Structured => report.structured(),
    };
    let warnings = |report: &Report| -> String {
        report
            .warnings()
            .iter()
            .map(|w| format!("warning: {w}\n"))
            .collect()
    };
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: EXIT_DECIDED,
            stdout: emit(&report),
            stderr: warnings(&report),
        },
        Err(Failure::UndecidedReport(report)) => Outcome {
            code: EXIT_UNDECIDED,
            stdout: emit(&report),
            stderr: format!(
                "{}error: could not decide within the search budget\n",
                warnings(&report)
            ),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Undecided(msg)) => Outcome {
            code: EXIT_UNDECIDED,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    format::parse_document(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Tensor view of any input: hypergraphs become their associated tensor.
fn as_tensor(doc: Document) -> (InputKind, SymTensor, Vec<Warning>) {
    match doc {
        Document::Tensor(a) => (InputKind::Tensor, a, Vec::new()),
        Document::Hypergraph(h) => (
            InputKind::Hypergraph,
            h.hypergraph.associated_tensor().to_tensor(),
            h.warnings,
        ),
    }
}

/// Hypergraph view of any input: tensors become their pattern hypergraph.
fn as_hypergraph(doc: Document) -> (InputKind, MultiHypergraph, SymTensor, Vec<Warning>) {
    match doc {
        Document::Tensor(a) => {
            let p = MultiHypergraph::from_pattern(&a.pattern());
            (InputKind::Tensor, p, a, Vec::new())
        }
        Document::Hypergraph(h) => {
            let a = h.hypergraph.associated_tensor().to_tensor();
            (InputKind::Hypergraph, h.hypergraph, a, h.warnings)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<String, Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn execute(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Analyze {
            file,
            exhaustive_limit,
        } => {
            let (input, p, a, warnings) = as_hypergraph(load(file)?);
            let (rank, corank) = match p.rank_corank() {
                Ok((r, c)) => (Some(r), Some(c)),
                Err(_) => (None, None),
            };
            Ok(Report::Analyze(AnalyzeReport {
                input,
                vertices: p.vertex_count(),
                uniformity: p.uniformity(),
                edges: p.edge_counts(),
                rank,
                corank,
                maximal_bases: p.maximal_bases().unwrap_or_default(),
                minimal_bases: p.minimal_bases().unwrap_or_default(),
                branches: p.branches(),
                property_r: Check::from(p.property_r()),
                zero_entry_dominance: Check::from(zero_entry_dominance(&a)),
                corollary: corollary_check(&p),
                zero_structures: a.find_zero_structures(*exhaustive_limit),
                warnings,
            }))
        }
        Command::IsCp { file } => {
            let (input, a, warnings) = as_tensor(load(file)?);
            if let Some((key, value)) = first_non_binary(&a) {
                return Err(Failure::Undecided(format!(
                    "is-cp needs a (0,1) tensor, but entry {key} is {value}; use `oracle` for general tensors"
                )));
            }
            Ok(Report::IsCp(IsCpReport {
                input,
                verdict: is_zero_one_cp(&a.pattern()),
                warnings,
            }))
        }
        Command::ConstructCp { file, output } => {
            let (_, p, _, warnings) = as_hypergraph(load(file)?);
            let (a, certificate) = construct_cp_tensor(&p)?;
            let output = match output {
                Some(path) => Some(write_file(path, &format::write_tensor(&a))?),
                None => None,
            };
            Ok(Report::ConstructCp(ConstructReport {
                verified: verify_certificate(&a, &certificate)?,
                associated: p.is_associated(&a)?,
                slices: dense_slices(&a),
                tensor: TensorOut::new(&a),
                certificate,
                output,
                warnings,
            }))
        }
        Command::Decompose {
            file,
            exhaustive_limit,
        } => {
            let (_, a, warnings) = as_tensor(load(file)?);
            let d = decompose(&a);
            let witness = match reducibility_witness(&a, *exhaustive_limit) {
                Ok(Some(set)) => WitnessOut::Found { set },
                Ok(None) => WitnessOut::None,
                Err(Error::CapabilityExceeded { .. }) => WitnessOut::Skipped {
                    limit: *exhaustive_limit,
                    dimension: a.dimension(),
                },
                Err(e) => return Err(e.into()),
            };
            Ok(Report::Decompose(DecomposeReport {
                permutation: d.permutation.images().to_vec(),
                blocks: d
                    .branch_vertex_sets
                    .iter()
                    .zip(&d.blocks)
                    .map(|(v, b)| BlockOut {
                        vertices: v.clone(),
                        dimension: b.dimension(),
                        block: TensorOut::new(b),
                    })
                    .collect(),
                zero_block: ZeroBlockOut {
                    dimension: d.zero_block_dim,
                    vertices: d.zero_vertices.clone(),
                },
                reducibility_witness: witness,
                zero_structures: a.find_zero_structures(*exhaustive_limit),
                warnings,
            }))
        }
        Command::Oracle { file, budget } => {
            let (_, a, warnings) = as_tensor(load(file)?);
            let budget = OracleBudget::from(budget);
            let verdict = oracle_is_cp(&a, &budget)?;
            let rank = if verdict.is_cp() {
                Some(oracle_cp_rank(&a, &budget)?)
            } else {
                None
            };
            let report = OracleReport {
                budget,
                verdict,
                rank,
                warnings,
            };
            if report.budget_exceeded() {
                return Err(Failure::UndecidedReport(Box::new(Report::Oracle(report))));
            }
            Ok(Report::Oracle(report))
        }
        Command::Pattern { file, output } => {
            let (from, to, document, warnings) = match load(file)? {
                Document::Tensor(a) => (
                    InputKind::Tensor,
                    InputKind::Hypergraph,
                    format::write_hypergraph(&MultiHypergraph::from_pattern(&a.pattern())),
                    Vec::new(),
                ),
                Document::Hypergraph(h) => (
                    InputKind::Hypergraph,
                    InputKind::Tensor,
                    format::write_tensor(&h.hypergraph.associated_tensor().to_tensor()),
                    h.warnings,
                ),
            };
            let output = match output {
                Some(path) => Some(write_file(path, &document)?),
                None => None,
            };
            Ok(Report::Pattern(PatternReport {
                from,
                to,
                document,
                output,
                warnings,
            }))
        }
    }
}
