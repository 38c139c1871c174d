//! Command-line interface: argument parsing, reports and exit codes.
//!
//! Exit codes: 0 success, 1 domain error, 2 budget refusal.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::chainring::RingSpec;
use crate::code::{presets, CodeDescriptor, CodeError, CyclicCodeR};
use crate::cyclotomic::FactorCache;
use crate::field::{modulus_bits, parse_modulus, self_dual_basis, DualBasis, FieldElement, FieldSpec};
use crate::fqlinear::{matrix_text, DistanceBudget};
use crate::gray::{gray_image_code, gray_vector, gray_weight};
use crate::quantum::{construction_i, construction_ii, stabilizer_matrices, QuantumError, QuantumParams};
use crate::search::{self, ComparedRow, RowStatus, SearchConfig, SearchError, SearchReport};
use crate::tracemap::binary_image_code;

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "CHAINQC_CACHE_DIR";
pub const RESULTS_ENV: &str = "CHAINQC_RESULTS_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Budget(_) => 2,
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<QuantumError> for CliError {
    fn from(e: QuantumError) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "chainqc", version, about = "Cyclic codes over F_{2^m}[u]/(u^{k+1}) and the quantum codes they give")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by all commands.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Field modulus as a bit string, highest degree first (e.g. 111 for x²+x+1).
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// Largest number of words a full enumeration may visit.
    #[arg(long, global = true, default_value_t = 1 << 26)]
    pub max_enumeration: u64,
    /// Step cap for the low-weight distance search.
    #[arg(long, global = true, default_value_t = 1 << 22)]
    pub max_search_steps: u64,
    /// Largest number of slot assignments a search may visit.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub max_assignments: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Directory for cached factorizations.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Directory for search results.
    #[arg(long, global = true, env = RESULTS_ENV, default_value = "results")]
    pub results_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.max_enumeration == 0 || self.max_search_steps == 0 || self.max_assignments == 0 {
            return Err(CliError::Domain("budgets must be positive".into()));
        }
        Ok(())
    }

    fn distance_budget(&self) -> DistanceBudget {
        DistanceBudget {
            max_enumeration: self.max_enumeration,
            quick_enumeration: (1 << 16).min(self.max_enumeration),
            max_search_steps: self.max_search_steps,
        }
    }

    fn search_config(&self, binary: bool) -> SearchConfig {
        let defaults = SearchConfig::default();
        SearchConfig {
            distance: self.distance_budget(),
            binary_distance: if binary { defaults.binary_distance } else { None },
            max_assignments: self.max_assignments,
            workers: self.workers,
        }
    }

    fn field(&self, m: u32) -> Result<Arc<FieldSpec>, CliError> {
        let modulus =
            self.modulus.as_deref().map(parse_modulus).transpose().map_err(|e| CliError::Domain(e.to_string()))?;
        FieldSpec::shared(m, modulus).map_err(|e| CliError::Domain(e.to_string()))
    }

    fn cache(&self) -> FactorCache {
        FactorCache::new(self.cache_dir.clone())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor x^n - 1 over GF(2^m).
    Factor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
    },
    /// Analyse one code given by a descriptor file or a preset.
    Code {
        /// Code descriptor JSON file.
        #[arg(long, conflicts_with = "preset")]
        descriptor: Option<PathBuf>,
        /// One of: n15-k3, n15-k3-shifted, n21-m2, n21-m2-single.
        #[arg(long)]
        preset: Option<String>,
        /// Write generator and stabilizer matrices into this directory.
        #[arg(long)]
        emit_matrices: Option<PathBuf>,
    },
    /// Print the descriptor of a preset.
    Descriptor {
        #[arg(long)]
        preset: String,
    },
    /// Exhaustive search over slot assignments.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: usize,
        /// Skip the binary image.
        #[arg(long)]
        no_binary: bool,
        /// Rows of the ranked list to print.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Compare the reference rows for F_4[u]/(u^2) with exhaustive search.
    #[command(name = "table1", alias = "reference-table")]
    ReferenceTable,
    /// Gray image of a vector over R.
    Gray {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: usize,
        /// Symbols separated by ';', each as comma-separated hex β-coordinates.
        #[arg(long)]
        vector: String,
    },
}

/// Structured note on a convention or a disagreement with published values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub code: &'static str,
    pub message: String,
}

fn warning(code: &'static str, message: impl Into<String>) -> Warning {
    Warning { code, message: message.into() }
}

#[derive(Debug, Clone, Serialize)]
pub struct Conventions {
    pub version: &'static str,
    pub m: u32,
    pub modulus: String,
    pub basis: Vec<String>,
    pub ring_coordinates: &'static str,
    pub gray_order: &'static str,
    pub expansion_order: &'static str,
}

fn conventions(field: &FieldSpec, basis: &DualBasis) -> Conventions {
    Conventions {
        version: env!("CARGO_PKG_VERSION"),
        m: field.m(),
        modulus: modulus_bits(field.modulus()),
        basis: basis.vectors.iter().map(|v| format!("{:x}", v.0)).collect(),
        ring_coordinates: "block: beta_0 of all positions, then beta_1, ...",
        gray_order: "component-major: Phi_0 of all positions, then Phi_1, ...",
        expansion_order: "basis-major: coefficient of alpha_1 at all positions, then alpha_2, ...",
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses arguments (program name first) and runs, returning the output text.
pub fn execute_args<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Domain(e.to_string()))?;
    execute(&cli)
}

/// Runs a parsed command and returns its output text.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let cfg = &cli.config;
    cfg.validate()?;
    match &cli.command {
        Command::Factor { n, m } => cmd_factor(cfg, *n, *m),
        Command::Code { descriptor, preset, emit_matrices } => {
            let cache = cfg.cache();
            let (code, label) = load_code(cfg, &cache, descriptor.as_ref(), preset.as_deref())?;
            cmd_code(cfg, &cache, &code, label, emit_matrices.as_ref())
        }
        Command::Descriptor { preset } => {
            let cache = cfg.cache();
            let (code, label) = load_code(cfg, &cache, None, Some(preset))?;
            let mut d = code.descriptor();
            d.label = label;
            Ok(d.to_json() + "\n")
        }
        Command::Search { n, m, k, no_binary, top } => cmd_search(cfg, *n, *m, *k, !no_binary, *top),
        Command::ReferenceTable => cmd_reference_table(cfg),
        Command::Gray { m, k, vector } => cmd_gray(cfg, *m, *k, vector),
    }
}

fn load_code(
    cfg: &RunConfig,
    cache: &FactorCache,
    descriptor: Option<&PathBuf>,
    preset: Option<&str>,
) -> Result<(CyclicCodeR, Option<String>), CliError> {
    match (descriptor, preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
            let d = CodeDescriptor::from_json(&text)?;
            let label = d.label.clone();
            Ok((d.build(cache)?, label))
        }
        (None, Some(name)) => {
            if cfg.modulus.is_some() {
                return Err(CliError::Domain("presets use the default modulus; pass a descriptor instead".into()));
            }
            let code = presets::by_name(name, cache).ok_or_else(|| {
                CliError::Domain(format!("unknown preset {name:?}; known: {}", presets::NAMES.join(", ")))
            })??;
            Ok((code, Some(name.to_string())))
        }
        (None, None) => Err(CliError::Domain("pass --descriptor FILE or --preset NAME".into())),
    }
}

#[derive(Debug, Serialize)]
struct FactorRow {
    index: usize,
    coset_rep: u64,
    degree: usize,
    factor: String,
    reciprocal_index: usize,
    self_reciprocal: bool,
}

#[derive(Debug, Serialize)]
struct FactorReport {
    schema_version: u32,
    n: usize,
    m: u32,
    modulus: String,
    factors: Vec<FactorRow>,
}

fn csv_text<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Domain(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

pub fn cmd_factor(cfg: &RunConfig, n: usize, m: u32) -> Result<String, CliError> {
    let field = cfg.field(m)?;
    let fac = cfg.cache().get(n, &field).map_err(|e| CliError::Domain(e.to_string()))?;
    let rows: Vec<FactorRow> = (0..fac.len())
        .map(|i| FactorRow {
            index: i,
            coset_rep: fac.cosets[i].rep,
            degree: fac.factors[i].deg(),
            factor: fac.factors[i].to_string(),
            reciprocal_index: fac.partner[i],
            self_reciprocal: fac.is_self_reciprocal(i),
        })
        .collect();
    match cfg.format {
        Format::Json => Ok(json_text(&FactorReport {
            schema_version: REPORT_SCHEMA_VERSION,
            n,
            m,
            modulus: modulus_bits(field.modulus()),
            factors: rows,
        })),
        Format::Csv => csv_text(&rows),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "x^{n} - 1 over GF(2^{m}), modulus {}: {} factors",
                modulus_bits(field.modulus()),
                rows.len()
            );
            let _ = writeln!(s, "{:>3} {:>5} {:>4}  {:<40} reciprocal", "#", "coset", "deg", "factor");
            for r in &rows {
                let rec = if r.self_reciprocal { "self".to_string() } else { format!("#{}", r.reciprocal_index) };
                let _ = writeln!(s, "{:>3} {:>5} {:>4}  {:<40} {}", r.index, r.coset_rep, r.degree, r.factor, rec);
            }
            Ok(s)
        }
    }
}

#[derive(Debug, Serialize)]
struct Certificate {
    holds: bool,
    divisor: String,
    target: String,
    quotient: String,
    remainder: String,
    r_polynomials: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CodeReport {
    schema_version: u32,
    label: Option<String>,
    conventions: Conventions,
    descriptor: CodeDescriptor,
    n: usize,
    k: usize,
    type_vector: Vec<usize>,
    log2_size: usize,
    dual_log2_size: usize,
    divisibility: Certificate,
    dual_containing_by_matrix: bool,
    /// Coset representatives of factors p with s(p) + s(p*) > k + 1.
    containment_violations: Vec<u64>,
    gray_length: usize,
    gray_dim: usize,
    gray_image_cyclic: bool,
    gray_image_quasi_cyclic: bool,
    binary_length: usize,
    binary_dim: usize,
    construction_i: Option<QuantumParams>,
    construction_ii: Option<QuantumParams>,
    not_dual_containing: Option<String>,
    /// The same example under its other reading, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    alternative: Option<Box<CodeReport>>,
    warnings: Vec<Warning>,
}

fn code_warnings(code: &CyclicCodeR, label: Option<&str>, basis: &DualBasis) -> Vec<Warning> {
    let mut w = Vec::new();
    if code.spec().m() == 2 {
        w.push(warning(
            "basis_claim",
            format!(
                "{{1, w}} is not a self-dual basis of GF(4) since Tr(1) = 0; using {{{}}}",
                basis.vectors.iter().map(|v| format!("{:x}", v.0)).collect::<Vec<_>>().join(", ")
            ),
        ));
    }
    let cert = code.divisibility_certificate();
    if cert.holds && !code.contains_dual() {
        w.push(warning(
            "criterion_unsound",
            format!(
                "f_0·r_2⋯r_(k+1) divides f_1* but C^⊥ ⊄ C: factors with cosets {:?} have s(p) + s(p*) > k + 1",
                code.containment_violations()
            ),
        ));
    }
    if !cert.holds && code.contains_dual() {
        w.push(warning("criterion_incomplete", "C^⊥ ⊆ C holds although the divisibility criterion fails"));
    }
    match label {
        Some("n21-m2") => w.push(warning(
            "generator_reading",
            "reconciled reading f_0 = 1, f_1 = (x^21-1)/(x+1), f_2 = x+1; the single-generator reading is preset n21-m2-single",
        )),
        Some("n21-m2-single") => w.push(warning(
            "generator_reading",
            "literal reading <f·h, u·f·g> with f·g = x^21-1: the second generator vanishes",
        )),
        Some("n15-k3-shifted") => w.push(warning(
            "label_reading",
            "labels f_1..f_5 read as slots 1..5 do not fit k = 3; x+1 falls into slot 0",
        )),
        _ => {}
    }
    w
}

pub fn code_report(
    cfg: &RunConfig,
    cache: &FactorCache,
    code: &CyclicCodeR,
    label: Option<String>,
) -> Result<CodeReport, CliError> {
    report_with(cfg, cache, code, label, true)
}

fn report_with(
    cfg: &RunConfig,
    cache: &FactorCache,
    code: &CyclicCodeR,
    label: Option<String>,
    with_alternative: bool,
) -> Result<CodeReport, CliError> {
    let alternative = match label.as_deref().filter(|_| with_alternative) {
        Some("n21-m2") => Some("n21-m2-single"),
        Some("n21-m2-single") => Some("n21-m2"),
        _ => None,
    };
    let field = &code.spec().field;
    let basis = self_dual_basis(field);
    let budget = cfg.distance_budget();
    let cert = code.divisibility_certificate();
    let gray = gray_image_code(code);
    let binary = binary_image_code(code, &basis).map_err(|e| CliError::Domain(e.to_string()))?;
    let (ci, cii, refusal) = if cert.holds {
        let (p1, _) = construction_i(code, &budget)?;
        let (p2, _) = construction_ii(code, &basis, &budget, Some(p1.distance()))?;
        (Some(p1), Some(p2), None)
    } else {
        let e = QuantumError::NotDualContaining {
            divisor: cert.divisor.clone(),
            target: cert.target.clone(),
            remainder: cert.remainder.clone(),
        };
        (None, None, Some(e.to_string()))
    };
    Ok(CodeReport {
        schema_version: REPORT_SCHEMA_VERSION,
        warnings: code_warnings(code, label.as_deref(), &basis),
        label,
        conventions: conventions(field, &basis),
        descriptor: code.descriptor(),
        n: code.n(),
        k: code.k(),
        type_vector: code.type_vector(),
        log2_size: code.log2_size(),
        dual_log2_size: code.dual().log2_size(),
        divisibility: Certificate {
            holds: cert.holds,
            divisor: cert.divisor.to_string(),
            target: cert.target.to_string(),
            quotient: cert.quotient.to_string(),
            remainder: cert.remainder.to_string(),
            r_polynomials: code.r_polynomials().iter().map(|r| r.to_string()).collect(),
        },
        dual_containing_by_matrix: code.contains_dual(),
        containment_violations: code.containment_violations(),
        gray_length: gray.n(),
        gray_dim: gray.dim(),
        gray_image_cyclic: gray.is_cyclic(),
        gray_image_quasi_cyclic: gray.is_quasi_cyclic(code.k() + 1),
        binary_length: binary.n(),
        binary_dim: binary.dim(),
        construction_i: ci,
        construction_ii: cii,
        not_dual_containing: refusal,
        alternative: match alternative {
            Some(name) => {
                let other = presets::by_name(name, cache).expect("preset exists")?;
                Some(Box::new(report_with(cfg, cache, &other, Some(name.to_string()), false)?))
            }
            None => None,
        },
    })
}

#[derive(Debug, Serialize)]
struct CodeCsvRow {
    label: String,
    n: usize,
    m: u32,
    k: usize,
    type_vector: String,
    log2_size: usize,
    criterion_holds: bool,
    dual_containing_by_matrix: bool,
    construction_i: String,
    construction_i_mds: bool,
    construction_ii: String,
}

fn cmd_code(
    cfg: &RunConfig,
    cache: &FactorCache,
    code: &CyclicCodeR,
    label: Option<String>,
    emit: Option<&PathBuf>,
) -> Result<String, CliError> {
    let r = code_report(cfg, cache, code, label)?;
    if let Some(dir) = emit {
        emit_matrices(dir, code)?;
    }
    let label_of = |p: &Option<QuantumParams>| p.as_ref().map_or("-".to_string(), QuantumParams::label);
    match cfg.format {
        Format::Json => Ok(json_text(&r)),
        Format::Csv => csv_text(&[CodeCsvRow {
            label: r.label.clone().unwrap_or_default(),
            n: r.n,
            m: r.conventions.m,
            k: r.k,
            type_vector: join(&r.type_vector),
            log2_size: r.log2_size,
            criterion_holds: r.divisibility.holds,
            dual_containing_by_matrix: r.dual_containing_by_matrix,
            construction_i: label_of(&r.construction_i),
            construction_i_mds: r.construction_i.as_ref().is_some_and(|p| p.mds),
            construction_ii: label_of(&r.construction_ii),
        }]),
        Format::Table => {
            let mut s = String::new();
            let c = &r.conventions;
            let _ = writeln!(s, "code {}", r.label.as_deref().unwrap_or("(descriptor)"));
            let _ = writeln!(s, "  ring        GF(2^{})[u]/(u^{}), modulus {}, n = {}", c.m, r.k + 1, c.modulus, r.n);
            let _ = writeln!(s, "  basis       {{{}}}", c.basis.join(", "));
            let _ = writeln!(s, "  type        ({})", join(&r.type_vector));
            let _ = writeln!(s, "  log2 |C|    {}   log2 |C^⊥| {}", r.log2_size, r.dual_log2_size);
            let d = &r.divisibility;
            let _ = writeln!(
                s,
                "  criterion   {}: ({}) | ({})",
                if d.holds { "holds" } else { "fails" },
                d.divisor,
                d.target
            );
            if d.holds {
                let _ = writeln!(s, "              quotient {}", d.quotient);
            } else {
                let _ = writeln!(s, "              remainder {}", d.remainder);
            }
            let _ = writeln!(s, "  C^⊥ ⊆ C     {} (matrix check)", r.dual_containing_by_matrix);
            let _ = writeln!(
                s,
                "  Gray image  [{}, {}]_{}  cyclic: {}  quasi-cyclic of index {}: {}",
                r.gray_length,
                r.gray_dim,
                1u32 << c.m,
                r.gray_image_cyclic,
                r.k + 1,
                r.gray_image_quasi_cyclic
            );
            let _ = writeln!(s, "  binary      [{}, {}]_2", r.binary_length, r.binary_dim);
            for (name, p) in [("I ", &r.construction_i), ("II", &r.construction_ii)] {
                if let Some(p) = p {
                    let mut notes = vec![format!("slack {}", p.singleton_slack)];
                    if p.mds {
                        notes.push("MDS".into());
                    }
                    notes.extend(p.anomalies.iter().cloned());
                    let _ = writeln!(s, "  construction {name} {}  ({})", p.label(), notes.join("; "));
                }
            }
            if let Some(e) = &r.not_dual_containing {
                let _ = writeln!(s, "  not dual-containing: {e}");
            }
            for w in &r.warnings {
                let _ = writeln!(s, "  warning [{}] {}", w.code, w.message);
            }
            if let Some(a) = &r.alternative {
                let q = 1u32 << c.m;
                let _ = writeln!(
                    s,
                    "  other reading {}: type ({}), Gray image [{}, {}]_{q}, criterion {}, C^⊥ ⊆ C {}, construction I {}",
                    a.label.as_deref().unwrap_or("-"),
                    join(&a.type_vector),
                    a.gray_length,
                    a.gray_dim,
                    if a.divisibility.holds { "holds" } else { "fails" },
                    a.dual_containing_by_matrix,
                    a.construction_i.as_ref().map_or("none".into(), QuantumParams::label)
                );
            }
            Ok(s)
        }
    }
}

fn emit_matrices(dir: &PathBuf, code: &CyclicCodeR) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Domain(format!("cannot write into {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let gray = gray_image_code(code);
    std::fs::write(dir.join("gray_generator.txt"), gray.generator_text()).map_err(io)?;
    std::fs::write(dir.join("gray_parity_check.txt"), matrix_text(&gray.parity_check())).map_err(io)?;
    let stab = stabilizer_matrices(&gray)?;
    std::fs::write(dir.join("stabilizers.txt"), stab.block_text()).map_err(io)?;
    Ok(())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Serialize)]
struct ResultCsvRow {
    rank: usize,
    index: u64,
    pareto_rank: usize,
    type_vector: String,
    gray_dim: usize,
    d_g: usize,
    d_g_exact: bool,
    construction_i: String,
    mds: bool,
    construction_ii: String,
}

fn result_rows(report: &SearchReport) -> Vec<ResultCsvRow> {
    report
        .results
        .iter()
        .enumerate()
        .map(|(i, r)| ResultCsvRow {
            rank: i,
            index: r.index,
            pareto_rank: r.pareto_rank,
            type_vector: join(&r.type_vector),
            gray_dim: r.gray_dim,
            d_g: r.d_g.value,
            d_g_exact: r.d_g.exact,
            construction_i: r.params_i.label(),
            mds: r.params_i.mds,
            construction_ii: r.params_ii.as_ref().map_or("-".into(), QuantumParams::label),
        })
        .collect()
}

fn search_warnings(report: &SearchReport) -> Vec<Warning> {
    let mut w = Vec::new();
    if !report.rejected_by_matrix.is_empty() {
        w.push(warning(
            "criterion_unsound",
            format!(
                "{} assignments pass the divisibility criterion but fail C^⊥ ⊆ C and were dropped",
                report.rejected_by_matrix.len()
            ),
        ));
    }
    for r in &report.refusals {
        w.push(warning("budget_refusal", format!("assignment {}: {}", r.index, r.reason)));
    }
    w
}

pub fn cmd_search(cfg: &RunConfig, n: usize, m: u32, k: usize, binary: bool, top: usize) -> Result<String, CliError> {
    let field = cfg.field(m)?;
    let fac = cfg.cache().get(n, &field).map_err(|e| CliError::Domain(e.to_string()))?;
    let spec = RingSpec::new(field.clone(), k);
    let report = search::search_best(&spec, fac, &cfg.search_config(binary))?;
    let path = search::write_results(&cfg.results_dir, &report)?;
    let warnings = search_warnings(&report);
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema_version: u32,
                conventions: Conventions,
                results_file: String,
                report: &'a SearchReport,
                warnings: Vec<Warning>,
            }
            Ok(json_text(&Out {
                schema_version: search::RESULTS_SCHEMA_VERSION,
                conventions: conventions(&field, &self_dual_basis(&field)),
                results_file: path.display().to_string(),
                report: &report,
                warnings,
            }))
        }
        Format::Csv => csv_text(&result_rows(&report)),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "search n = {n}, GF(2^{m}) modulus {}, k = {k}: {} assignments, {} pass the criterion, {} evaluated",
                modulus_bits(field.modulus()),
                report.assignments,
                report.passed_filter,
                report.results.len()
            );
            let _ = writeln!(s, "results written to {}", path.display());
            let _ = writeln!(
                s,
                "{:>4} {:>6} {:>5} {:<12} {:<18} {:<20}",
                "rank", "index", "front", "type", "construction I", "construction II"
            );
            for row in result_rows(&report).iter().take(top) {
                let _ = writeln!(
                    s,
                    "{:>4} {:>6} {:>5} {:<12} {:<18} {:<20}",
                    row.rank, row.index, row.pareto_rank, row.type_vector, row.construction_i, row.construction_ii
                );
            }
            for w in &warnings {
                let _ = writeln!(s, "warning [{}] {}", w.code, w.message);
            }
            Ok(s)
        }
    }
}

fn reference_warnings(rows: &[ComparedRow]) -> Vec<Warning> {
    let mut w = vec![warning(
        "type_column_reading",
        "the three-entry type column is read as (l_0, l_1) = (first, last) for the two-level ring",
    )];
    for r in rows {
        if r.status != RowStatus::Irreproducible {
            continue;
        }
        let (qn, ql, qd) = r.reference.quaternary;
        let a = &r.dimension_argument;
        let reason = if !a.attainable {
            format!("Gray dimension {} is not reachable for any slot assignment", a.required_gray_dim)
        } else if r.full_torsion_forced {
            format!("every dual-containing code of Gray dimension {} contains uR^n, so d_G ≤ 2", a.required_gray_dim)
        } else {
            match &r.closest {
                Some(c) => format!("largest Gray distance at this dimension is {}", c.d_g),
                None => format!("no dual-containing code of Gray dimension {}", a.required_gray_dim),
            }
        };
        w.push(warning(
            "irreproducible_row",
            format!(
                "n = {}: [[{qn},{ql},{qd}]]_4 not found: {reason}; the type column gives l = {}",
                r.reference.n, r.type_reading_l
            ),
        ));
        if let Some(b) = &r.binary {
            let (bn, bl, bd) = r.reference.binary;
            if r.binary_ok {
                w.push(warning(
                    "binary_row_met",
                    format!(
                        "n = {}: the closest code's binary image {} meets [[{bn},{bl},>={bd}]]_2",
                        r.reference.n,
                        b.label()
                    ),
                ));
            }
        }
    }
    w
}

#[derive(Debug, Serialize)]
struct ReferenceCsvRow {
    n: usize,
    status: RowStatus,
    reference_i: String,
    computed_i: String,
    reference_ii: String,
    computed_ii: String,
    type_reading: String,
    computed_type: String,
    best: String,
    assignments: u64,
    elapsed_ms: u128,
}

fn reference_rows(rows: &[ComparedRow]) -> Vec<ReferenceCsvRow> {
    rows.iter()
        .map(|r| {
            let (qn, ql, qd) = r.reference.quaternary;
            let (bn, bl, bd) = r.reference.binary;
            ReferenceCsvRow {
                n: r.reference.n,
                status: r.status,
                reference_i: format!("[[{qn},{ql},{qd}]]_4"),
                computed_i: r.matched.as_ref().or(r.closest.as_ref()).map_or("-".into(), |m| m.params_i.label()),
                reference_ii: format!("[[{bn},{bl},>={bd}]]_2"),
                computed_ii: r.binary.as_ref().map_or("-".into(), QuantumParams::label),
                type_reading: format!("{},{}", r.type_reading.0, r.type_reading.1),
                computed_type: r.matched.as_ref().or(r.closest.as_ref()).map_or("-".into(), |m| join(&m.type_vector)),
                best: {
                    let mut labels: Vec<String> = Vec::new();
                    for b in &r.best {
                        let l = b.params_i.label();
                        if !labels.contains(&l) {
                            labels.push(l);
                        }
                    }
                    labels.join(" ")
                },
                assignments: r.assignments,
                elapsed_ms: r.elapsed_ms,
            }
        })
        .collect()
}

pub fn cmd_reference_table(cfg: &RunConfig) -> Result<String, CliError> {
    if cfg.modulus.is_some() {
        return Err(CliError::Domain("the reference table uses the default modulus of GF(4)".into()));
    }
    let cache = cfg.cache();
    let pairs = search::reproduce_reference_table(&cache, &cfg.search_config(true))?;
    for (_, report) in &pairs {
        search::write_results(&cfg.results_dir, report)?;
    }
    let rows: Vec<ComparedRow> = pairs.into_iter().map(|(r, _)| r).collect();
    let warnings = reference_warnings(&rows);
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                schema_version: u32,
                conventions: Conventions,
                rows: &'a [ComparedRow],
                warnings: Vec<Warning>,
            }
            let field = FieldSpec::shared(2, None).expect("GF(4) exists");
            Ok(json_text(&Out {
                schema_version: REPORT_SCHEMA_VERSION,
                conventions: conventions(&field, &self_dual_basis(&field)),
                rows: &rows,
                warnings,
            }))
        }
        Format::Csv => csv_text(&reference_rows(&rows)),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>3}  {:<14} {:<16} {:<16} {:<20} {:<20} {:<8} {:<8}",
                "n", "status", "reference I", "computed I", "reference II", "computed II", "type", "found"
            );
            for r in reference_rows(&rows) {
                let status = match r.status {
                    RowStatus::Matched => "match",
                    RowStatus::Improved => "improved",
                    RowStatus::Irreproducible => "irreproducible",
                };
                let _ = writeln!(
                    s,
                    "{:>3}  {:<14} {:<16} {:<16} {:<20} {:<20} {:<8} {:<8}",
                    r.n,
                    status,
                    r.reference_i,
                    r.computed_i,
                    r.reference_ii,
                    r.computed_ii,
                    r.type_reading,
                    r.computed_type
                );
                if r.status != RowStatus::Matched {
                    let _ = writeln!(s, "     best found: {}", r.best);
                }
            }
            for w in &warnings {
                let _ = writeln!(s, "warning [{}] {}", w.code, w.message);
            }
            Ok(s)
        }
    }
}

pub fn cmd_gray(cfg: &RunConfig, m: u32, k: usize, vector: &str) -> Result<String, CliError> {
    let spec = RingSpec::new(cfg.field(m)?, k);
    let v = spec.parse_vector(vector).map_err(|e| CliError::Domain(e.to_string()))?;
    let image = gray_vector(&v);
    let weight = gray_weight(&v);
    let hex: Vec<String> = image.iter().map(|x: &FieldElement| format!("{:x}", x.0)).collect();
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                image: Vec<String>,
                gray_weight: usize,
            }
            Ok(json_text(&Out { image: hex, gray_weight: weight }))
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                image: String,
                gray_weight: usize,
            }
            csv_text(&[Row { image: hex.join(" "), gray_weight: weight }])
        }
        Format::Table => Ok(format!("{}\nweight {weight}\n", hex.join(" "))),
    }
}
