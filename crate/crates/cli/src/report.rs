//! Command reports. Each report serializes to JSON for `--format structured`
//! and renders itself as text for `--format pretty`.

use std::fmt::Write as _;

use cphg_core::format::Warning;
use cphg_core::{
    Base, BranchPartition, BudgetReason, CorollaryReport, CpCertificate, DominanceViolation,
    EdgeCounts, MultisetIndex, NotCpReason, OracleBudget, OracleVerdict, PropertyRViolation,
    RankOutcome, SymTensor, ZeroOneVerdict, ZeroStructures,
};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct EntryOut {
    pub index: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct TensorOut {
    pub order: usize,
    pub dimension: usize,
    pub entries: Vec<EntryOut>,
}

impl TensorOut {
    pub fn new(a: &SymTensor) -> Self {
        Self {
            order: a.order(),
            dimension: a.dimension(),
            entries: a
                .entries()
                .map(|(k, v)| EntryOut {
                    index: k.entries().to_vec(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    Tensor,
    Hypergraph,
}

#[derive(Debug, Serialize)]
pub struct Check<V> {
    pub holds: bool,
    pub violation: Option<V>,
}

impl<V> From<Result<(), V>> for Check<V> {
    fn from(r: Result<(), V>) -> Self {
        match r {
            Ok(()) => Check {
                holds: true,
                violation: None,
            },
            Err(v) => Check {
                holds: false,
                violation: Some(v),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub input: InputKind,
    pub vertices: usize,
    pub uniformity: usize,
    pub edges: EdgeCounts,
    pub rank: Option<usize>,
    pub corank: Option<usize>,
    pub maximal_bases: Vec<Base>,
    pub minimal_bases: Vec<Base>,
    pub branches: BranchPartition,
    pub property_r: Check<PropertyRViolation>,
    pub zero_entry_dominance: Check<DominanceViolation>,
    pub corollary: CorollaryReport,
    pub zero_structures: ZeroStructures,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Serialize)]
pub struct IsCpReport {
    pub input: InputKind,
    #[serde(flatten)]
    pub verdict: ZeroOneVerdict,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Serialize)]
pub struct ConstructReport {
    pub certificate: CpCertificate,
    pub tensor: TensorOut,
    pub verified: bool,
    pub associated: bool,
    pub output: Option<String>,
    #[serde(skip)]
    pub slices: Vec<(Vec<usize>, Vec<Vec<String>>)>,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Serialize)]
pub struct BlockOut {
    pub vertices: Base,
    pub dimension: usize,
    pub block: TensorOut,
}

#[derive(Debug, Serialize)]
pub struct ZeroBlockOut {
    pub dimension: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum WitnessOut {
    Found { set: Base },
    None,
    Skipped { limit: usize, dimension: usize },
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub permutation: Vec<usize>,
    pub blocks: Vec<BlockOut>,
    pub zero_block: ZeroBlockOut,
    pub reducibility_witness: WitnessOut,
    pub zero_structures: ZeroStructures,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub budget: OracleBudget,
    pub verdict: OracleVerdict,
    pub rank: Option<RankOutcome>,
    pub warnings: Vec<Warning>,
}

impl OracleReport {
    pub fn budget_exceeded(&self) -> bool {
        matches!(self.verdict, OracleVerdict::BudgetExceeded(_))
            || matches!(self.rank, Some(RankOutcome::BudgetExceeded(_)))
    }
}

#[derive(Debug, Serialize)]
pub struct PatternReport {
    pub from: InputKind,
    pub to: InputKind,
    pub document: String,
    pub output: Option<String>,
    pub warnings: Vec<Warning>,
}

// One report is built per process, so variant size does not matter.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Analyze(AnalyzeReport),
    IsCp(IsCpReport),
    ConstructCp(ConstructReport),
    Decompose(DecomposeReport),
    Oracle(OracleReport),
    Pattern(PatternReport),
}

impl Report {
    pub fn warnings(&self) -> &[Warning] {
        match self {
            Report::Analyze(r) => &r.warnings,
            Report::IsCp(r) => &r.warnings,
            Report::ConstructCp(r) => &r.warnings,
            Report::Decompose(r) => &r.warnings,
            Report::Oracle(r) => &r.warnings,
            Report::Pattern(r) => &r.warnings,
        }
    }

    pub fn structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Analyze(r) => pretty_analyze(&mut out, r),
            Report::IsCp(r) => pretty_is_cp(&mut out, r),
            Report::ConstructCp(r) => pretty_construct(&mut out, r),
            Report::Decompose(r) => pretty_decompose(&mut out, r),
            Report::Oracle(r) => pretty_oracle(&mut out, r),
            Report::Pattern(r) => match &r.output {
                Some(path) => {
                    let _ = writeln!(out, "wrote {} to {path}", kind_name(&r.to));
                }
                None => out.push_str(&r.document),
            },
        }
        out
    }
}

fn kind_name(k: &InputKind) -> &'static str {
    match k {
        InputKind::Tensor => "tensor",
        InputKind::Hypergraph => "hypergraph",
    }
}

fn bases(list: &[Base]) -> String {
    if list.is_empty() {
        return "none".into();
    }
    list.iter()
        .map(Base::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn vertices(list: &[usize]) -> String {
    if list.is_empty() {
        return "none".into();
    }
    list.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn certificate_lines(out: &mut String, cert: &CpCertificate) {
    if cert.vectors().is_empty() {
        out.push_str("  (empty)\n");
    }
    for v in cert.vectors() {
        let _ = writeln!(out, "  support {} x{}", v.support, v.multiplicity);
    }
}

/// Dense slices `A(:,:,k..)`, one per assignment of the trailing indices in
/// odometer order (last index slowest).
pub fn dense_slices(a: &SymTensor) -> Vec<(Vec<usize>, Vec<Vec<String>>)> {
    let (m, n) = (a.order(), a.dimension());
    let mut fixed = vec![1usize; m - 2];
    let mut out = Vec::new();
    loop {
        let slice = a
            .slice(&fixed)
            .expect("fixed indices are in range")
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.to_string()).collect())
            .collect();
        out.push((fixed.clone(), slice));
        let mut i = 0;
        loop {
            if i == fixed.len() {
                return out;
            }
            if fixed[i] < n {
                fixed[i] += 1;
                break;
            }
            fixed[i] = 1;
            i += 1;
        }
    }
}

/// Renders a slice with right-aligned columns of a common width.
pub fn render_slice(out: &mut String, fixed: &[usize], rows: &[Vec<String>]) {
    let label: String = fixed.iter().map(|k| format!(",{k}")).collect();
    let _ = writeln!(out, "A(:,:{label}) =");
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

fn pretty_analyze(out: &mut String, r: &AnalyzeReport) {
    let _ = writeln!(
        out,
        "{}: {} vertices, uniformity {}",
        kind_name(&r.input),
        r.vertices,
        r.uniformity
    );
    let _ = writeln!(
        out,
        "edges: {} distinct, {} ordered",
        r.edges.distinct, r.edges.ordered
    );
    match (r.rank, r.corank) {
        (Some(rk), Some(ck)) => {
            let _ = writeln!(out, "rank {rk}, co-rank {ck}");
        }
        _ => out.push_str("rank undefined (no edges)\n"),
    }
    let _ = writeln!(out, "maximal bases: {}", bases(&r.maximal_bases));
    let _ = writeln!(out, "minimal bases: {}", bases(&r.minimal_bases));
    let _ = writeln!(out, "branches: {}", bases(&r.branches.branches));
    let _ = writeln!(out, "isolated vertices: {}", vertices(&r.branches.isolated));
    match &r.property_r.violation {
        None => out.push_str("Property R: holds\n"),
        Some(v) => {
            let _ = writeln!(
                out,
                "Property R: fails, edge {} present but {} missing",
                v.edge, v.missing
            );
        }
    }
    match &r.zero_entry_dominance.violation {
        None => out.push_str("zero-entry dominance: holds\n"),
        Some(v) => {
            let _ = writeln!(
                out,
                "zero-entry dominance: fails, {} is zero but {} is not",
                v.zero, v.nonzero
            );
        }
    }
    let c = &r.corollary;
    let _ = writeln!(
        out,
        "ordered edges {} vs sum of branch dim^m {} ({})",
        c.lhs,
        c.rhs,
        if c.holds { "equal" } else { "differ" }
    );
    match &r.zero_structures.maximal_zero_blocks {
        Some(blocks) => {
            let _ = writeln!(out, "maximal zero blocks: {}", bases(blocks));
        }
        None => out.push_str("maximal zero blocks: skipped (dimension above exhaustive limit)\n"),
    }
}

fn pretty_is_cp(out: &mut String, r: &IsCpReport) {
    match &r.verdict {
        ZeroOneVerdict::Cp {
            certificate,
            zero_block,
        } => {
            out.push_str("verdict: cp\ncertificate:\n");
            certificate_lines(out, certificate);
            let _ = writeln!(out, "zero block: {}", vertices(zero_block));
        }
        ZeroOneVerdict::NotCp { branch, missing } => {
            out.push_str("verdict: not-cp\n");
            let _ = writeln!(out, "branch {branch} is not complete: {missing} is missing");
        }
    }
}

fn pretty_construct(out: &mut String, r: &ConstructReport) {
    out.push_str("certificate:\n");
    certificate_lines(out, &r.certificate);
    let _ = writeln!(out, "verified: {}", if r.verified { "yes" } else { "no" });
    let _ = writeln!(
        out,
        "associated with input: {}",
        if r.associated { "yes" } else { "no" }
    );
    for (fixed, rows) in &r.slices {
        render_slice(out, fixed, rows);
    }
    if let Some(path) = &r.output {
        let _ = writeln!(out, "wrote tensor to {path}");
    }
}

fn pretty_decompose(out: &mut String, r: &DecomposeReport) {
    let _ = writeln!(out, "permutation: {}", vertices(&r.permutation));
    for (i, b) in r.blocks.iter().enumerate() {
        let _ = writeln!(
            out,
            "block {}: vertices {}, dimension {}, {} stored entries",
            i + 1,
            b.vertices,
            b.dimension,
            b.block.entries.len()
        );
    }
    let _ = writeln!(
        out,
        "zero block: dimension {}, vertices {}",
        r.zero_block.dimension,
        vertices(&r.zero_block.vertices)
    );
    match &r.reducibility_witness {
        WitnessOut::Found { set } => {
            let _ = writeln!(out, "reducibility witness: {set}");
        }
        WitnessOut::None => out.push_str("reducibility witness: none\n"),
        WitnessOut::Skipped { limit, dimension } => {
            let _ = writeln!(
                out,
                "reducibility witness: skipped (dimension {dimension} above limit {limit})"
            );
        }
    }
}

fn not_cp_reason(out: &mut String, r: &NotCpReason) {
    match r {
        NotCpReason::NonIntegral { key } => {
            let _ = writeln!(out, "verdict: not-cp ({key} is not an integer)");
        }
        NotCpReason::UnequalWithinBase { first, second } => {
            let _ = writeln!(
                out,
                "verdict: not-cp ({first} and {second} share a base but differ)"
            );
        }
        NotCpReason::Infeasible => {
            out.push_str("verdict: not-cp (no {0,1} factorization exists)\n")
        }
    }
}

fn budget_reason(out: &mut String, r: &BudgetReason) {
    match r {
        BudgetReason::NodeLimit { nodes } => {
            let _ = writeln!(out, "budget exceeded after {nodes} search nodes");
        }
        BudgetReason::VectorCap { cap, trace } => {
            let _ = writeln!(
                out,
                "budget exceeded: vector cap {cap} is below the trace bound {trace}"
            );
        }
    }
}

fn pretty_oracle(out: &mut String, r: &OracleReport) {
    match &r.verdict {
        OracleVerdict::Cp { certificate } => {
            out.push_str("verdict: cp\ncertificate:\n");
            certificate_lines(out, certificate);
        }
        OracleVerdict::NotCp(reason) => not_cp_reason(out, reason),
        OracleVerdict::BudgetExceeded(reason) => budget_reason(out, reason),
    }
    match &r.rank {
        Some(RankOutcome::Rank { rank, certificate }) => {
            let _ = writeln!(out, "cp-rank: {rank}");
            certificate_lines(out, certificate);
        }
        Some(RankOutcome::BudgetExceeded(reason)) => {
            out.push_str("cp-rank: ");
            budget_reason(out, reason);
        }
        Some(RankOutcome::NotCp(reason)) => not_cp_reason(out, reason),
        None => {}
    }
}

/// First stored entry outside {0,1}, for precondition messages.
pub fn first_non_binary(a: &SymTensor) -> Option<(MultisetIndex, String)> {
    a.entries()
        .find(|(_, v)| **v != 1.into())
        .map(|(k, v)| (k.clone(), v.to_string()))
}
