//! The `jointcode` command line.
//!
//! Exit codes: 0 success, 1 parse, IO or usage error, 2 unknown cap
//! exceeded, 3 construction precondition or post-check failed, 4 code
//! verification failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use jointcode_core::algo1::{build_decoder_de, run_algorithm1, Algo1Inputs, Algo1Trace, DEFAULT_SAMPLED_TRIALS};
use jointcode_core::bounds::{
    lemma2_construct, lemma2_search, lower_bound, theorem1_check, theorem2_cycle, BoundReport,
};
use jointcode_core::decode::{find_decoding_matrix, verify_code, DecoderSearch, Verdict};
use jointcode_core::extension::ExtensionSpec;
use jointcode_core::minrank::MinrankResult;
use jointcode_core::triangular::{enumerate_triangulable_submatrices, is_upper_triangulable, write_set};
use jointcode_core::{BinMatrix, Condition, Error, Permutation, TriMatrix};

use crate::format::{emit_bin, emit_tri, parse_bin, parse_problem, parse_tri};
use crate::manifest::load_extension;
use crate::parallel::{available_threads, exact_minrank_parallel};
use crate::{read_text, LoadError};

#[derive(Debug, Parser)]
#[command(name = "jointcode", version, about = "Minrank, bounds and code construction for jointly extended index coding problems")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Largest number of unknown entries searched exhaustively.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u8).range(0..=30))]
    pub max_unknowns: u8,
    /// Seed for sampled decoding trials.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Message counts up to this are simulated exhaustively.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u8).range(0..=24))]
    pub exhaustive_threshold: u8,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Worker threads for minrank search (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    /// Line-oriented `key=value`.
    Kv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lemma2,
    Algo1,
    Cycle,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minrank of a fitting matrix (or problem file) with a witness completion.
    Minrank { file: PathBuf },
    /// Upper-triangulability of a square fitting matrix.
    Triangulable {
        file: PathBuf,
        /// List every upper-triangulable submatrix instead.
        #[arg(long)]
        all: bool,
    },
    /// Builds the extended fitting matrix of a manifest.
    Extend {
        manifest: PathBuf,
        /// Also write the matrix to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bound on the minrank of an extension.
    LowerBound {
        manifest: PathBuf,
        /// Component minranks, in component order.
        #[arg(long, value_delimiter = ',')]
        minranks: Option<Vec<usize>>,
    },
    /// Builds an encoder for an extension.
    Construct(ConstructArgs),
    /// Checks an encoder against a fitting matrix (or problem file).
    Verify {
        encoder: PathBuf,
        fitting: PathBuf,
        /// Write the decoder found to this file.
        #[arg(long)]
        decoder_out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ConstructArgs {
    manifest: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Component encoders, one per component in order.
    #[arg(long = "code")]
    codes: Vec<PathBuf>,
    /// Base encoder (algo1); derived from a base minrank witness if omitted.
    #[arg(long)]
    base_code: Option<PathBuf>,
    /// Base decoder (algo1); searched for if omitted.
    #[arg(long)]
    base_decoder: Option<PathBuf>,
    /// Component completions, one per component in order.
    #[arg(long = "completion")]
    completions: Vec<PathBuf>,
    /// Base completion (lemma2); searched for if omitted.
    #[arg(long)]
    base_completion: Option<PathBuf>,
    /// Component visiting order, 1-based.
    #[arg(long, value_delimiter = ',')]
    sigma: Option<Vec<usize>>,
    /// Component minranks for the reported lower bound.
    #[arg(long, value_delimiter = ',')]
    minranks: Option<Vec<usize>>,
    /// Write the encoder to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the extension decoder to this file.
    #[arg(long)]
    decoder_out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsatisfied(String),
    #[error("{}: {source}", .path.display())]
    Write { path: PathBuf, source: std::io::Error },
}

fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::TooManyUnknowns { .. } | Error::TooManyMessages { .. } => 2,
        Error::Precondition(_) | Error::Invariant(_) => 3,
        _ => 1,
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) | CliError::Load(LoadError::Core(e)) => core_exit_code(e),
            CliError::Unsatisfied(_) => 3,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 1;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let mut report = String::new();
    let result = dispatch(&cli, &mut report);
    let _ = out.write_all(report.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> CliResult<i32> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Minrank { file } => cmd_minrank(cfg, file, out),
        Command::Triangulable { file, all } => cmd_triangulable(cfg, file, *all, out),
        Command::Extend { manifest, out: path } => cmd_extend(cfg, manifest, path.as_deref(), out),
        Command::LowerBound { manifest, minranks } => cmd_lower_bound(cfg, manifest, minranks.as_deref(), out),
        Command::Construct(args) => cmd_construct(cfg, args, out),
        Command::Verify {
            encoder,
            fitting,
            decoder_out,
        } => cmd_verify(cfg, encoder, fitting, decoder_out.as_deref(), out),
    }
}

/// Writes `label = value` (text) or `key=value` (kv).
struct Report<'a> {
    format: OutputFormat,
    out: &'a mut String,
}

impl Report<'_> {
    fn field(&mut self, key: &str, label: &str, value: impl std::fmt::Display) {
        let _ = match self.format {
            OutputFormat::Text => writeln!(self.out, "{label} = {value}"),
            OutputFormat::Kv => writeln!(self.out, "{key}={value}"),
        };
    }

    /// Rows one per line after `label:` (text) or joined by `/` (kv).
    fn matrix(&mut self, key: &str, label: &str, text: &str) {
        match self.format {
            OutputFormat::Text => {
                let _ = writeln!(self.out, "{label}:");
                self.out.push_str(text);
            }
            OutputFormat::Kv => {
                let _ = writeln!(self.out, "{key}={}", text.lines().collect::<Vec<_>>().join("/"));
            }
        }
    }

    fn text_line(&mut self, line: impl std::fmt::Display) {
        if self.format == OutputFormat::Text {
            let _ = writeln!(self.out, "{line}");
        }
    }
}

fn set(items: &[usize]) -> String {
    let mut s = String::new();
    let _ = write_set(&mut s, items);
    s
}

fn list(items: &[usize], offset: usize) -> String {
    items.iter().map(|i| (i + offset).to_string()).collect::<Vec<_>>().join(",")
}

fn load_bin(path: &Path) -> CliResult<BinMatrix> {
    let text = read_text(path)?;
    parse_bin(&text).map_err(|e| LoadError::Parse { path: path.to_path_buf(), error: e }.into())
}

/// A fitting matrix, or a problem file starting with `m=`.
fn load_fitting(path: &Path) -> CliResult<TriMatrix> {
    let text = read_text(path)?;
    let parsed = if text.trim_start().starts_with("m=") {
        parse_problem(&text).map(|p| p.fitting_matrix())
    } else {
        parse_tri(&text)
    };
    parsed.map_err(|e| LoadError::Parse { path: path.to_path_buf(), error: e }.into())
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn threads(cfg: &CliConfig) -> usize {
    cfg.threads.unwrap_or_else(available_threads)
}

fn minrank_of(cfg: &CliConfig, fm: &TriMatrix) -> CliResult<MinrankResult> {
    Ok(exact_minrank_parallel(fm, cfg.max_unknowns.into(), threads(cfg))?)
}

fn component_minranks(cfg: &CliConfig, spec: &ExtensionSpec) -> CliResult<Vec<MinrankResult>> {
    spec.components().iter().map(|c| minrank_of(cfg, c)).collect()
}

fn check_count<T>(what: &str, items: &[T], expected: usize) -> CliResult<()> {
    if items.len() != expected {
        return Err(CliError::Usage(format!(
            "{what}: expected {expected} values, found {}",
            items.len()
        )));
    }
    Ok(())
}

/// Supplied minranks, or exact ones computed per component.
fn resolve_minranks(cfg: &CliConfig, spec: &ExtensionSpec, given: Option<&[usize]>) -> CliResult<Vec<usize>> {
    match given {
        Some(m) => {
            check_count("--minranks", m, spec.components().len())?;
            Ok(m.to_vec())
        }
        None => Ok(component_minranks(cfg, spec)?.into_iter().map(|r| r.value).collect()),
    }
}

fn cmd_minrank(cfg: &CliConfig, file: &Path, out: &mut String) -> CliResult<i32> {
    let fm = load_fitting(file)?;
    let res = minrank_of(cfg, &fm)?;
    let mut r = Report { format: cfg.format, out };
    r.field("minrank", "minrank", res.value);
    r.field("unknowns", "unknowns", fm.unknown_count());
    r.matrix("witness", "witness", &emit_bin(&res.witness));
    Ok(0)
}

fn cmd_triangulable(cfg: &CliConfig, file: &Path, all: bool, out: &mut String) -> CliResult<i32> {
    let fm = load_fitting(file)?;
    let mut r = Report { format: cfg.format, out };
    if all {
        let ws = enumerate_triangulable_submatrices(&fm);
        r.field("count", "upper-triangulable submatrices", ws.len());
        for w in &ws {
            r.field("witness", "witness", format!("size={} {w}", w.size()));
        }
        return Ok(0);
    }
    match is_upper_triangulable(&fm)? {
        Some(w) => {
            r.field("triangulable", "upper-triangulable", "yes");
            r.field("row_order", "row order", list(&w.ordered_rows(), 1));
            r.field("col_order", "column order", list(&w.ordered_cols(), 1));
        }
        None => r.field("triangulable", "upper-triangulable", "no"),
    }
    Ok(0)
}

fn cmd_extend(cfg: &CliConfig, manifest: &Path, path: Option<&Path>, out: &mut String) -> CliResult<i32> {
    let spec = load_extension(manifest)?;
    let fe = spec.fitting_matrix();
    let layout = spec.layout();
    let mut r = Report { format: cfg.format, out };
    r.field("rows", "receivers", fe.rows());
    r.field("cols", "messages", fe.cols());
    r.field("block_heights", "block-row heights", list(&layout.row_heights, 0));
    r.field("block_widths", "block-column widths", list(&layout.col_widths, 0));
    match path {
        Some(p) => write_file(p, &emit_tri(&fe))?,
        None => r.matrix("matrix", "fitting matrix", &emit_tri(&fe)),
    }
    Ok(0)
}

fn report_bound(r: &mut Report<'_>, lb: &BoundReport, minranks: &[usize]) {
    match r.format {
        OutputFormat::Text => r.text_line(format!(
            "lower bound = {}, cols = {}",
            lb.value,
            set(&lb.witness.col_indices)
        )),
        OutputFormat::Kv => {
            r.field("lower_bound", "", lb.value);
            r.field("cols", "", set(&lb.witness.col_indices));
        }
    }
    r.field("rows", "rows", set(&lb.witness.row_indices));
    r.field("minranks", "minranks", list(minranks, 0));
}

fn cmd_lower_bound(cfg: &CliConfig, manifest: &Path, given: Option<&[usize]>, out: &mut String) -> CliResult<i32> {
    let spec = load_extension(manifest)?;
    let minranks = resolve_minranks(cfg, &spec, given)?;
    let lb = lower_bound(&spec, &minranks)?;
    let mut r = Report { format: cfg.format, out };
    report_bound(&mut r, &lb, &minranks);
    Ok(0)
}

/// The greedy basis rows of a completion: a code of length equal to its
/// rank.
fn code_of(completion: &BinMatrix) -> BinMatrix {
    completion.select_rows(&completion.basis_rows())
}

fn load_all(paths: &[PathBuf], what: &str, expected: usize) -> CliResult<Option<Vec<BinMatrix>>> {
    if paths.is_empty() {
        return Ok(None);
    }
    check_count(what, paths, expected)?;
    paths.iter().map(|p| load_bin(p)).collect::<CliResult<Vec<_>>>().map(Some)
}

/// Supplied component codes, or the basis rows of minrank completions.
fn resolve_codes(cfg: &CliConfig, spec: &ExtensionSpec, args: &ConstructArgs) -> CliResult<Vec<BinMatrix>> {
    match load_all(&args.codes, "--code", spec.components().len())? {
        Some(codes) => Ok(codes),
        None => Ok(component_minranks(cfg, spec)?
            .iter()
            .map(|r| code_of(&r.witness))
            .collect()),
    }
}

fn decoder_for(g: &BinMatrix, fm: &TriMatrix, missing: Condition) -> CliResult<BinMatrix> {
    match find_decoding_matrix(g, fm)? {
        DecoderSearch::Found(d) => Ok(d),
        DecoderSearch::Infeasible { .. } => Err(Error::Precondition(missing).into()),
    }
}

struct Built {
    encoder: BinMatrix,
    decoder: BinMatrix,
    trace: Option<Algo1Trace>,
    detail: Vec<(&'static str, &'static str, String)>,
}

fn construct_lemma2(cfg: &CliConfig, spec: &ExtensionSpec, args: &ConstructArgs) -> CliResult<Built> {
    let completions = match load_all(&args.completions, "--completion", spec.components().len())? {
        Some(c) => c,
        None => component_minranks(cfg, spec)?.into_iter().map(|r| r.witness).collect(),
    };
    let base_completion = args.base_completion.as_deref().map(load_bin).transpose()?;
    let inputs = lemma2_search(spec, completions, base_completion.as_ref(), cfg.max_unknowns.into())?
        .ok_or_else(|| {
            CliError::Unsatisfied(
                "no upper-triangulable submatrix of the base is top-ranked and matched by a base completion of equal rank with independent rows".into(),
            )
        })?;
    let result = lemma2_construct(spec, &inputs)?;
    let fe = spec.fitting_matrix();
    let decoder = find_decoding_matrix(&result.encoder, &fe)?
        .decoder()
        .ok_or(Error::Invariant("explicit completion encoder has no decoder"))?;
    let w = inputs.witness();
    Ok(Built {
        encoder: result.encoder,
        decoder,
        trace: None,
        detail: vec![
            ("witness_rows", "witness rows", set(&w.row_indices)),
            ("witness_cols", "witness cols", set(&w.col_indices)),
        ],
    })
}

fn construct_algo1(cfg: &CliConfig, spec: &ExtensionSpec, args: &ConstructArgs) -> CliResult<Built> {
    let codes = resolve_codes(cfg, spec, args)?;
    let decoders = codes
        .iter()
        .zip(spec.components())
        .enumerate()
        .map(|(j, (g, fx))| decoder_for(g, fx, Condition::ComponentDecoderInvalid { component: j }))
        .collect::<CliResult<Vec<_>>>()?;
    let base_code = match &args.base_code {
        Some(p) => load_bin(p)?,
        None => code_of(&minrank_of(cfg, spec.base())?.witness),
    };
    let base_decoder = match &args.base_decoder {
        Some(p) => load_bin(p)?,
        None => decoder_for(&base_code, spec.base(), Condition::BaseDecoderInvalid)?,
    };
    let sigma = match &args.sigma {
        Some(s) => {
            check_count("--sigma", s, codes.len())?;
            let mapping = s
                .iter()
                .map(|&i| i.checked_sub(1).ok_or_else(|| CliError::Usage("--sigma is 1-based".into())))
                .collect::<CliResult<Vec<_>>>()?;
            Some(Permutation::new(mapping).map_err(|e| CliError::Usage(format!("--sigma: {e}")))?)
        }
        None => None,
    };
    let inputs = Algo1Inputs::new(codes, base_code, base_decoder, spec.base().clone(), sigma)?;
    let (result, trace) = run_algorithm1(&inputs)?;
    let decoder = build_decoder_de(spec, &inputs, &decoders, &result)?;
    Ok(Built {
        encoder: result.encoder,
        decoder,
        trace: Some(trace),
        detail: vec![(
            "sigma",
            "sigma",
            list(inputs.sigma().mapping(), 1),
        )],
    })
}

fn construct_cycle(cfg: &CliConfig, spec: &ExtensionSpec, args: &ConstructArgs, minranks: &[usize]) -> CliResult<Built> {
    let codes = resolve_codes(cfg, spec, args)?;
    let c = theorem2_cycle(spec, minranks, &codes)?;
    Ok(Built {
        encoder: c.result.encoder,
        decoder: c.decoder,
        trace: Some(c.trace),
        detail: vec![("base_code", "base code", emit_bin(&c.base_encoder).trim_end().replace('\n', "/"))],
    })
}

fn cmd_construct(cfg: &CliConfig, args: &ConstructArgs, out: &mut String) -> CliResult<i32> {
    let spec = load_extension(&args.manifest)?;
    let minranks = resolve_minranks(cfg, &spec, args.minranks.as_deref())?;
    let built = match args.mode {
        Mode::Lemma2 => construct_lemma2(cfg, &spec, args)?,
        Mode::Algo1 => construct_algo1(cfg, &spec, args)?,
        Mode::Cycle => construct_cycle(cfg, &spec, args, &minranks)?,
    };
    let lb = lower_bound(&spec, &minranks)?;
    let codelength = built.encoder.rows();
    // The certificate search may exceed the unknown cap; the verdict then
    // stays UNKNOWN.
    let optimal = codelength == lb.value
        || matches!(theorem1_check(&spec, &minranks, cfg.max_unknowns.into()), Ok(Some(v)) if v == codelength);
    let fe = spec.fitting_matrix();
    let verdict = verify_code(
        &built.encoder,
        &fe,
        cfg.exhaustive_threshold.into(),
        DEFAULT_SAMPLED_TRIALS,
        cfg.seed,
    )?;

    let mut r = Report { format: cfg.format, out };
    r.field("mode", "mode", format!("{:?}", args.mode).to_lowercase());
    r.field("codelength", "codelength", codelength);
    r.field("lower_bound", "lower bound", lb.value);
    r.field("verdict", "verdict", if optimal { "OPTIMAL" } else { "UNKNOWN" });
    for (key, label, value) in &built.detail {
        r.field(key, label, value);
    }
    if let Some(trace) = &built.trace {
        match r.format {
            OutputFormat::Text => r.matrix("", "trace", &trace.to_string()),
            OutputFormat::Kv => {
                for line in trace.to_string().lines() {
                    r.field("trace", "", line);
                }
            }
        }
    }
    let receiver = match &verdict {
        Verdict::Valid { .. } => None,
        Verdict::Invalid { receiver } => Some(*receiver),
    };
    match receiver {
        None => r.field("verify", "verify", "VALID"),
        Some(k) => r.field("verify", "verify", format!("INVALID, receiver {}", k + 1)),
    }
    match &args.out {
        Some(p) => write_file(p, &emit_bin(&built.encoder))?,
        None => r.matrix("encoder", "encoder", &emit_bin(&built.encoder)),
    }
    if let Some(p) = &args.decoder_out {
        write_file(p, &emit_bin(&built.decoder))?;
    }
    Ok(if receiver.is_some() { 4 } else { 0 })
}

fn cmd_verify(
    cfg: &CliConfig,
    encoder: &Path,
    fitting: &Path,
    decoder_out: Option<&Path>,
    out: &mut String,
) -> CliResult<i32> {
    let g = load_bin(encoder)?;
    let fm = load_fitting(fitting)?;
    let verdict = verify_code(&g, &fm, cfg.exhaustive_threshold.into(), DEFAULT_SAMPLED_TRIALS, cfg.seed)?;
    let mut r = Report { format: cfg.format, out };
    match verdict {
        Verdict::Valid { decoder } => {
            match r.format {
                OutputFormat::Text => r.text_line("VALID"),
                OutputFormat::Kv => r.field("verdict", "", "VALID"),
            }
            match decoder_out {
                Some(p) => write_file(p, &emit_bin(&decoder))?,
                None => r.matrix("decoder", "decoder", &emit_bin(&decoder)),
            }
            Ok(0)
        }
        Verdict::Invalid { receiver } => {
            match r.format {
                OutputFormat::Text => r.text_line(format!("INVALID, receiver {}", receiver + 1)),
                OutputFormat::Kv => {
                    r.field("verdict", "", "INVALID");
                    r.field("receiver", "", receiver + 1);
                }
            }
            Ok(4)
        }
    }
}
