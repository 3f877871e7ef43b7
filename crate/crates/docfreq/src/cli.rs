//! Command-line surface: build, query, pseudoalign, bench and gen.

use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchConfig};
use crate::collection::{Collection, InputFormat};
use crate::container;
use crate::engine::{Method, QueryEngine};
use crate::error::{Error, Result};
use crate::pseudoalign::{kmer_assign, maxrun_assign, Assignment, Criterion, Status};
use crate::rindex::ProviderKind;
use crate::suffix::validate_pattern;
use crate::synthgen::{gen_concat, Alphabet, ConcatParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(name = "docfreq", version, about = "Document listing with term frequencies over repetitive collections")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an index over a document collection and write it to a file.
    Build(BuildArgs),
    /// Answer document-frequency queries from an index file.
    Query(QueryArgs),
    /// Assign reads to documents with a pseudoalignment criterion.
    Pseudoalign(PseudoalignArgs),
    /// Generate a synthetic collection, build every method and report CSV.
    Bench(BenchArgs),
    /// Generate a synthetic collection and write it as files + manifest.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Fasta,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProviderArg {
    Plain,
    GrammarDiff,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Kmer,
    Maxrun,
}

#[derive(Args)]
struct BuildArgs {
    /// Manifest file: one document path per line, '#' comments.
    #[arg(long)]
    input: PathBuf,
    /// Input format.
    #[arg(long, value_enum, default_value = "plain")]
    format: FormatArg,
    /// Listing method: pdl, gcda, ilcp, ilcp-star, sada, wt or scan.
    #[arg(long)]
    method: String,
    /// SA/ISA random-access provider.
    #[arg(long = "sa-provider", value_enum, default_value = "grammar-diff")]
    sa_provider: ProviderArg,
    /// Store no document list for grammar symbols expanding to fewer
    /// positions than this (pdl only).
    #[arg(long = "pdl-threshold", default_value_t = 0)]
    pdl_threshold: usize,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    index: PathBuf,
    /// Pattern file, one pattern per line.
    #[arg(long)]
    patterns: PathBuf,
}

#[derive(Args)]
struct PseudoalignArgs {
    #[arg(long)]
    index: PathBuf,
    /// FASTA file of reads.
    #[arg(long)]
    reads: PathBuf,
    #[arg(short)]
    k: usize,
    #[arg(long, value_enum, default_value = "kmer")]
    criterion: CriterionArg,
    /// Also query the reverse complement of every k-mer / segment.
    #[arg(long)]
    rc: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Generator spec: comma-separated key=value pairs among
    /// d, versions, R, base_len, seed, alphabet, m, patterns.
    #[arg(long)]
    gen: String,
    /// Comma-separated method list, or "all".
    #[arg(long, default_value = "all")]
    methods: String,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long = "sa-provider", value_enum, default_value = "grammar-diff")]
    sa_provider: ProviderArg,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 10)]
    d: usize,
    #[arg(long, default_value_t = 1000)]
    versions: usize,
    #[arg(long = "mutation-rate", default_value_t = 0.01)]
    mutation_rate: f64,
    #[arg(long = "base-len", default_value_t = 1000)]
    base_len: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = "letters")]
    alphabet: String,
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.cmd {
        Cmd::Build(args) => cmd_build(args),
        Cmd::Query(args) => cmd_query(args),
        Cmd::Pseudoalign(args) => cmd_pseudoalign(args),
        Cmd::Bench(args) => cmd_bench(args),
        Cmd::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("docfreq: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::CorruptIndex(_) => EXIT_IO,
        Error::InvalidParameter(_) => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => InputFormat::Plain,
            FormatArg::Fasta => InputFormat::Fasta,
        }
    }
}

impl From<ProviderArg> for ProviderKind {
    fn from(p: ProviderArg) -> Self {
        match p {
            ProviderArg::Plain => ProviderKind::Plain,
            ProviderArg::GrammarDiff => ProviderKind::GrammarDiff,
        }
    }
}

fn cmd_build(args: BuildArgs) -> Result<()> {
    let method: Method = args.method.parse()?;
    let coll = Collection::ingest(&args.input, args.format.into())?;
    let engine =
        QueryEngine::build_with_threshold(coll, method, args.sa_provider.into(), args.pdl_threshold);
    container::save_to_path(&engine, &args.output)?;
    println!("{}", engine.stats().to_json());
    Ok(())
}

fn cmd_query(args: QueryArgs) -> Result<()> {
    let engine = container::load_from_path(&args.index)?;
    let raw = std::fs::read(&args.patterns).map_err(|e| Error::UnreadableFile {
        file: args.patterns.display().to_string(),
        source: e,
    })?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (lineno, line) in raw.split(|&b| b == b'\n').enumerate() {
        let pattern = match line.last() {
            Some(b'\r') => &line[..line.len() - 1],
            _ => line,
        };
        if lineno == raw.split(|&b| b == b'\n').count() - 1 && pattern.is_empty() {
            break; // trailing newline
        }
        if let Err(e) = validate_pattern(pattern) {
            eprintln!("docfreq: skipping pattern on line {}: {e}", lineno + 1);
            continue;
        }
        let freqs = engine.doc_freq(pattern)?;
        for (doc, freq) in freqs {
            out.write_all(pattern)?;
            writeln!(out, "\t{doc}\t{freq}")?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Parse a FASTA file into `(id, sequence)` records.
fn read_fasta_records(path: &Path) -> Result<Vec<(String, Vec<u8>)>> {
    let raw = std::fs::read(path).map_err(|e| Error::UnreadableFile {
        file: path.display().to_string(),
        source: e,
    })?;
    let mut records: Vec<(String, Vec<u8>)> = Vec::new();
    for line in raw.split(|&b| b == b'\n') {
        let line = match line.last() {
            Some(b'\r') => &line[..line.len() - 1],
            _ => line,
        };
        if line.is_empty() {
            continue;
        }
        if line[0] == b'>' {
            let header = String::from_utf8_lossy(&line[1..]);
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            records.push((id, Vec::new()));
        } else {
            match records.last_mut() {
                Some((_, seq)) => seq.extend_from_slice(line),
                None => {
                    return Err(Error::InvalidFasta {
                        file: path.display().to_string(),
                        reason: "sequence data before first header".into(),
                    })
                }
            }
        }
    }
    if records.is_empty() {
        return Err(Error::InvalidFasta {
            file: path.display().to_string(),
            reason: "no records".into(),
        });
    }
    Ok(records)
}

fn format_assignment(read_id: &str, a: &Assignment) -> String {
    let (status, doc) = match &a.status {
        Status::Assigned(d) => ("ASSIGNED", d.to_string()),
        Status::Ambiguous(_) => ("AMBIGUOUS", "-".to_string()),
        Status::Unassigned => ("UNASSIGNED", "-".to_string()),
    };
    let evidence = if a.evidence.is_empty() {
        "-".to_string()
    } else {
        a.evidence
            .iter()
            .map(|seg| {
                let freqs = if seg.freqs.is_empty() {
                    "none".to_string()
                } else {
                    seg.freqs
                        .iter()
                        .map(|(d, f)| format!("{d}={f}"))
                        .collect::<Vec<_>>()
                        .join(",")
                };
                format!("{}-{}:{}", seg.start, seg.end, freqs)
            })
            .collect::<Vec<_>>()
            .join(";")
    };
    let flag = if a.evidence.iter().any(|s| s.contains_n) {
        "has_n"
    } else {
        "-"
    };
    format!("{read_id}\t{status}\t{doc}\t{evidence}\t{flag}")
}

fn cmd_pseudoalign(args: PseudoalignArgs) -> Result<()> {
    let engine = container::load_from_path(&args.index)?;
    let reads = read_fasta_records(&args.reads)?;
    let criterion = match args.criterion {
        CriterionArg::Kmer => Criterion::Kmer,
        CriterionArg::Maxrun => Criterion::MaxRun,
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (id, seq) in &reads {
        let assigned = match criterion {
            Criterion::Kmer => kmer_assign(&engine, seq, args.k, args.rc),
            Criterion::MaxRun => maxrun_assign(engine.global(), &engine, seq, args.k, args.rc),
        };
        match assigned {
            Ok(a) => writeln!(out, "{}", format_assignment(id, &a))?,
            Err(Error::ReadShorterThanK { .. }) => {
                writeln!(out, "{id}\tUNASSIGNED\t-\t-\tshort_read")?;
            }
            Err(e) => return Err(e),
        }
    }
    out.flush()?;
    Ok(())
}

fn parse_gen_spec(spec: &str) -> Result<(ConcatParams, usize, usize)> {
    let mut params = ConcatParams::default();
    let mut pattern_len = 8usize;
    let mut pattern_count = 200usize;
    for kv in spec.split(',') {
        let kv = kv.trim();
        if kv.is_empty() {
            continue;
        }
        let (key, value) = kv.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!("expected key=value in gen spec, got {kv:?}"))
        })?;
        let bad = |what: &str| Error::InvalidParameter(format!("bad {what} value {value:?}"));
        match key {
            "d" => params.base_docs = value.parse().map_err(|_| bad("d"))?,
            "versions" => params.versions_total = value.parse().map_err(|_| bad("versions"))?,
            "R" => params.mutation_rate = value.parse().map_err(|_| bad("R"))?,
            "base_len" => params.base_len = value.parse().map_err(|_| bad("base_len"))?,
            "seed" => params.seed = value.parse().map_err(|_| bad("seed"))?,
            "alphabet" => params.alphabet = value.parse()?,
            "m" => pattern_len = value.parse().map_err(|_| bad("m"))?,
            "patterns" => pattern_count = value.parse().map_err(|_| bad("patterns"))?,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown gen key {other:?}"
                )))
            }
        }
    }
    Ok((params, pattern_len, pattern_count))
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let (gen, pattern_len, pattern_count) = parse_gen_spec(&args.gen)?;
    let methods = if args.methods == "all" {
        Method::ALL.to_vec()
    } else {
        args.methods
            .split(',')
            .map(|m| m.trim().parse())
            .collect::<Result<Vec<Method>>>()?
    };
    let cfg = BenchConfig {
        gen,
        methods,
        provider: args.sa_provider.into(),
        pattern_len,
        pattern_count,
        reps: args.reps,
        ..Default::default()
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    bench::run(&cfg, &mut out)?;
    out.flush()?;
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let params = ConcatParams {
        base_docs: args.d,
        versions_total: args.versions,
        mutation_rate: args.mutation_rate,
        base_len: args.base_len,
        seed: args.seed,
        alphabet: args.alphabet.parse::<Alphabet>()?,
    };
    let coll = gen_concat(&params)?;
    std::fs::create_dir_all(&args.out_dir)?;
    let mut manifest = String::new();
    for d in 1..=coll.doc_count() as u32 {
        let name = format!("doc_{d:05}.txt");
        std::fs::write(args.out_dir.join(&name), coll.doc_body(d))?;
        manifest.push_str(&name);
        manifest.push('\n');
    }
    let manifest_path = args.out_dir.join("manifest.txt");
    std::fs::write(&manifest_path, manifest)?;
    println!("{}", manifest_path.display());
    Ok(())
}
