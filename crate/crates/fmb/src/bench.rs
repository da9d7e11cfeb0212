//! Pattern sampling, the query benchmark (time per character vs pattern
//! length) and index statistics.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::serialized_size;
use crate::linear::minimizer_positions;
use crate::superlinear::SchemeKind;
use crate::text::{Pattern, Text};
use crate::{Error, Index, Result};

/// Benchmark settings. Queries are substrings extracted from the indexed
/// text at uniformly random positions.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub pattern_lengths: Vec<usize>,
    pub queries_per_length: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            pattern_lengths: (10..=128).collect(),
            queries_per_length: 1_000_000,
            seed: 0,
        }
    }
}

/// One measured benchmark row.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub m: usize,
    pub queries: usize,
    pub total_ns: u128,
    pub ns_per_char: f64,
    pub avg_steps: f64,
    pub matched: usize,
}

/// `k` substrings of the payload of length `m`, at uniformly random start
/// positions. Deterministic for a fixed seed.
pub fn sample_patterns(text: &Text, m: usize, k: usize, seed: u64) -> Result<Vec<Pattern>> {
    let n = text.len();
    if m == 0 || m > n {
        return Err(Error::InvalidInput(format!(
            "pattern length {m} out of range for text of length {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..k)
        .map(|_| {
            let start = rng.gen_range(0..=n - m);
            Pattern::new(text.payload()[start..start + m].to_vec())
                .expect("text substrings are sentinel-free")
        })
        .collect())
}

/// Run the benchmark; lengths exceeding the text are returned in the
/// skipped list instead of producing a row. The timed loop performs count
/// queries only.
pub fn run_bench(index: &Index, config: &BenchConfig) -> (Vec<BenchRow>, Vec<usize>) {
    let text = index.text();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &m in &config.pattern_lengths {
        if m == 0 || m > text.len() {
            skipped.push(m);
            continue;
        }
        let k = config.queries_per_length.max(1);
        let patterns = sample_patterns(text, m, k, config.seed.wrapping_add(m as u64))
            .expect("length validated above");

        // Warm-up pass over 1% of the queries before measuring.
        for p in patterns.iter().take((k / 100).max(1)) {
            std::hint::black_box(index.count(p));
        }

        let mut steps = 0usize;
        let mut matched = 0usize;
        let start = Instant::now();
        for p in &patterns {
            let r = index.count(p);
            steps += r.steps;
            matched += usize::from(r.count > 0);
            std::hint::black_box(r.count);
        }
        let total_ns = start.elapsed().as_nanos();
        rows.push(BenchRow {
            m,
            queries: k,
            total_ns,
            ns_per_char: total_ns as f64 / (k * m) as f64,
            avg_steps: steps as f64 / k as f64,
            matched,
        });
    }
    (rows, skipped)
}

pub const CSV_HEADER: &str = "variant,scheme,q,p,m,queries,total_ns,ns_per_char,avg_steps,matched";

/// Variant descriptor used in CSV rows and stats output:
/// (variant, scheme, q, p).
pub fn describe(index: &Index) -> (&'static str, String, u8, u8) {
    match index {
        Index::Superlinear(idx) => {
            let scheme = match idx.scheme.kind {
                SchemeKind::Pow2 => format!("pow2-{}", idx.scheme.max_len),
                SchemeKind::Fibonacci => format!("fib-{}", idx.scheme.max_len),
            };
            ("superlinear", scheme, 0, 0)
        }
        Index::Linear(idx) => ("linear", "minimizer".to_string(), idx.params.q, idx.params.p),
    }
}

pub fn write_csv(index: &Index, rows: &[BenchRow], w: &mut impl Write) -> Result<()> {
    let (variant, scheme, q, p) = describe(index);
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{variant},{scheme},{q},{p},{},{},{},{:.4},{:.4},{}",
            r.m, r.queries, r.total_ns, r.ns_per_char, r.avg_steps, r.matched
        )?;
    }
    Ok(())
}

/// Size and shape report of a built index.
#[derive(Debug, Clone)]
pub struct IndexStats {
    pub n: usize,
    pub variant: &'static str,
    pub scheme: String,
    pub q: u8,
    pub p: u8,
    pub key_count: usize,
    pub total_entries: usize,
    pub serialized_bytes: u64,
    pub bytes_per_symbol: f64,
    /// List-length percentiles at 50/90/99 plus the maximum.
    pub list_len_p50: usize,
    pub list_len_p90: usize,
    pub list_len_p99: usize,
    pub list_len_max: usize,
    /// Average distance between consecutive text minimizers (linear only).
    pub avg_minimizer_gap: Option<f64>,
}

pub fn index_stats(index: &Index) -> IndexStats {
    let (variant, scheme, q, p) = describe(index);
    let store = index.store();
    let n = index.text().len();

    let mut lens: Vec<usize> = store.iter().map(|(_, l)| l.len()).collect();
    lens.sort_unstable();
    let pct = |f: f64| -> usize {
        if lens.is_empty() {
            0
        } else {
            lens[((lens.len() - 1) as f64 * f) as usize]
        }
    };

    let serialized_bytes = serialized_size(index);
    let avg_minimizer_gap = match index {
        Index::Linear(idx) => minimizer_positions(idx.text.payload(), idx.params).average_gap(),
        Index::Superlinear(_) => None,
    };

    IndexStats {
        n,
        variant,
        scheme,
        q,
        p,
        key_count: store.len(),
        total_entries: store.total_entries(),
        serialized_bytes,
        bytes_per_symbol: serialized_bytes as f64 / n as f64,
        list_len_p50: pct(0.50),
        list_len_p90: pct(0.90),
        list_len_p99: pct(0.99),
        list_len_max: lens.last().copied().unwrap_or(0),
        avg_minimizer_gap,
    }
}

impl std::fmt::Display for IndexStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "variant:          {}", self.variant)?;
        writeln!(f, "scheme:           {}", self.scheme)?;
        if self.variant == "linear" {
            writeln!(f, "q, p:             {}, {}", self.q, self.p)?;
        }
        writeln!(f, "n:                {}", self.n)?;
        writeln!(f, "keys:             {}", self.key_count)?;
        writeln!(f, "list entries:     {}", self.total_entries)?;
        writeln!(f, "serialized bytes: {}", self.serialized_bytes)?;
        writeln!(f, "bytes per symbol: {:.2}", self.bytes_per_symbol)?;
        writeln!(
            f,
            "list length p50/p90/p99/max: {}/{}/{}/{}",
            self.list_len_p50, self.list_len_p90, self.list_len_p99, self.list_len_max
        )?;
        if let Some(gap) = self.avg_minimizer_gap {
            writeln!(f, "avg minimizer gap: {gap:.2}")?;
        }
        Ok(())
    }
}
