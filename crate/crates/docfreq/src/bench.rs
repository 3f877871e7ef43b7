//! Benchmark harness: generate a synthetic collection, build the selected
//! methods over it, cross-check their answers and report per-method size
//! and timing rows as CSV.

use std::io::Write;
use std::time::Instant;

use crate::engine::{Method, QueryEngine};
use crate::error::{Error, Result};
use crate::rindex::ProviderKind;
use crate::suffix::DocFreqs;
use crate::synthgen::{gen_concat, gen_patterns, ConcatParams};

pub const CSV_HEADER: &str = "method,n,t,r,nu,index_bits_per_symbol,mean_query_microsec,ndoc_mean";

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub gen: ConcatParams,
    pub methods: Vec<Method>,
    pub provider: ProviderKind,
    pub pattern_len: usize,
    pub pattern_count: usize,
    pub pattern_seed: u64,
    pub reps: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            gen: ConcatParams::default(),
            methods: Method::ALL.to_vec(),
            provider: ProviderKind::GrammarDiff,
            pattern_len: 8,
            pattern_count: 200,
            pattern_seed: 0xbe9c,
            reps: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub method: Method,
    pub n: usize,
    pub t: usize,
    pub r: usize,
    pub nu: Option<usize>,
    pub index_bits_per_symbol: f64,
    pub mean_query_microsec: f64,
    pub ndoc_mean: f64,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{:.4},{:.3},{:.3}",
            self.method.name(),
            self.n,
            self.t,
            self.r,
            self.nu.map_or(String::new(), |v| v.to_string()),
            self.index_bits_per_symbol,
            self.mean_query_microsec,
            self.ndoc_mean,
        )
    }
}

/// Run the benchmark, writing the CSV to `out` and returning the rows.
/// Every method's answers are checked against the first method's; any
/// disagreement is a hard failure.
pub fn run(cfg: &BenchConfig, out: &mut dyn Write) -> Result<Vec<BenchRow>> {
    if cfg.methods.is_empty() {
        return Err(Error::InvalidParameter("no methods selected".into()));
    }
    if cfg.reps == 0 {
        return Err(Error::InvalidParameter("reps must be positive".into()));
    }
    let coll = gen_concat(&cfg.gen)?;
    let patterns = gen_patterns(&coll, cfg.pattern_len, cfg.pattern_count, cfg.pattern_seed)?;

    writeln!(out, "{CSV_HEADER}")?;
    let mut reference: Option<Vec<DocFreqs>> = None;
    let mut rows = Vec::with_capacity(cfg.methods.len());
    for &method in &cfg.methods {
        let engine = QueryEngine::build(gen_concat(&cfg.gen)?, method, cfg.provider);

        let mut answers = Vec::with_capacity(patterns.len());
        for p in &patterns {
            answers.push(engine.doc_freq(p)?);
        }
        match &reference {
            None => reference = Some(answers.clone()),
            Some(expect) => {
                for (i, (got, want)) in answers.iter().zip(expect).enumerate() {
                    assert_eq!(
                        got, want,
                        "method {} disagrees on pattern {i}",
                        method.name()
                    );
                }
            }
        }

        let start = Instant::now();
        for _ in 0..cfg.reps {
            for p in &patterns {
                let _ = engine.doc_freq(p)?;
            }
        }
        let elapsed = start.elapsed();
        let queries = (cfg.reps * patterns.len()) as f64;
        let ndoc_total: usize = answers.iter().map(|a| a.len()).sum();

        let row = BenchRow {
            method,
            n: engine.stats().n,
            t: engine.stats().t,
            r: engine.stats().r,
            nu: engine.stats().nu,
            index_bits_per_symbol: engine.stats().bits_per_symbol,
            mean_query_microsec: elapsed.as_secs_f64() * 1e6 / queries,
            ndoc_mean: ndoc_total as f64 / patterns.len() as f64,
        };
        writeln!(out, "{}", row.to_csv())?;
        rows.push(row);
    }
    Ok(rows)
}
