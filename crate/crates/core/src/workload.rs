//! Seeded random query workloads, timing and CSV reporting.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index::{StructureKind, SubsetIndex, SubsetRankSelect};
use crate::strrank::Base;

pub const DEFAULT_QUERY_COUNT: usize = 20_000_000;
pub const DEFAULT_REPEATS: usize = 5;
const BATCH: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryKind {
    Rank,
    Select,
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QueryKind::Rank => "rank",
            QueryKind::Select => "select",
        })
    }
}

impl FromStr for QueryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank" => Ok(QueryKind::Rank),
            "select" => Ok(QueryKind::Select),
            _ => Err(Error::InvalidArgument(format!("unknown query kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub query_count: usize,
    pub repeats: usize,
    pub seed: u64,
    pub query_kind: QueryKind,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            query_count: DEFAULT_QUERY_COUNT,
            repeats: DEFAULT_REPEATS,
            seed: 0,
            query_kind: QueryKind::Rank,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.query_count == 0 || self.repeats == 0 {
            return Err(Error::InvalidArgument(
                "query count and repeats must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Deterministic query source.
///
/// Rank queries draw `i` uniformly from `[0, n]` and `c` from `[0, sigma)`.
/// Select queries draw `c` uniformly among symbols occurring at least once
/// and `j` uniformly from `[1, total(c)]`.
pub struct QueryStream {
    rng: ChaCha8Rng,
    kind: QueryKind,
    n: usize,
    sigma: usize,
    totals: Vec<usize>,
    present: Vec<usize>,
}

impl QueryStream {
    /// `totals[c]` must be the number of sets containing `c`; only select queries use it.
    pub fn new(seed: u64, kind: QueryKind, n: usize, totals: Vec<usize>) -> Result<Self> {
        let sigma = totals.len();
        if sigma == 0 {
            return Err(Error::InvalidArgument("empty alphabet".into()));
        }
        let present: Vec<usize> = (0..sigma).filter(|&c| totals[c] > 0).collect();
        if kind == QueryKind::Select && present.is_empty() {
            return Err(Error::InvalidArgument(
                "select workload needs at least one occurring symbol".into(),
            ));
        }
        Ok(Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            kind,
            n,
            sigma,
            totals,
            present,
        })
    }

    /// Stream for `idx`, taking per-symbol totals from the structure itself.
    pub fn for_index(seed: u64, kind: QueryKind, idx: &dyn SubsetRankSelect) -> Result<Self> {
        let n = idx.len();
        let totals = (0..idx.sigma())
            .map(|c| idx.subset_rank(n, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(seed, kind, n, totals)
    }

    pub fn kind(&self) -> QueryKind {
        self.kind
    }
}

impl Iterator for QueryStream {
    /// `(i, c)` for rank, `(j, c)` for select.
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        Some(match self.kind {
            QueryKind::Rank => {
                let i = self.rng.random_range(0..=self.n);
                let c = self.rng.random_range(0..self.sigma);
                (i, c)
            }
            QueryKind::Select => {
                let c = self.present[self.rng.random_range(0..self.present.len())];
                let j = self.rng.random_range(1..=self.totals[c]);
                (j, c)
            }
        })
    }
}

/// Order-sensitive fold of query answers: wrapping sum of `answer ^ query_index`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Checksum(u64);

impl Checksum {
    #[inline]
    pub fn add(&mut self, query_index: usize, answer: usize) {
        self.0 = self.0.wrapping_add(answer as u64 ^ query_index as u64);
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub structure: StructureKind,
    pub base: Base,
    pub n: usize,
    pub size: usize,
    pub n0: usize,
    pub sigma: usize,
    pub query_kind: QueryKind,
    pub ns_per_query: f64,
    pub bits_per_symbol: f64,
    pub checksum: u64,
}

pub const CSV_HEADER: &str =
    "structure,base,n,N,n0,sigma,query_kind,ns_per_query,bits_per_symbol,checksum";

impl BenchResult {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.structure,
            self.base,
            self.n,
            self.size,
            self.n0,
            self.sigma,
            self.query_kind,
            self.ns_per_query,
            self.bits_per_symbol,
            self.checksum
        )
    }

    pub fn from_csv_row(row: &str) -> Result<Self> {
        let fields: Vec<&str> = row.trim_end().split(',').collect();
        let bad = |what: &str| Error::InvalidArgument(format!("bad CSV {what} in {row:?}"));
        if fields.len() != 10 {
            return Err(bad("field count"));
        }
        let num = |k: usize| fields[k].parse::<usize>().map_err(|_| bad("integer"));
        let float = |k: usize| fields[k].parse::<f64>().map_err(|_| bad("float"));
        Ok(Self {
            structure: fields[0].parse()?,
            base: fields[1].parse()?,
            n: num(2)?,
            size: num(3)?,
            n0: num(4)?,
            sigma: num(5)?,
            query_kind: fields[6].parse()?,
            ns_per_query: float(7)?,
            bits_per_symbol: float(8)?,
            checksum: fields[9].parse().map_err(|_| bad("checksum"))?,
        })
    }
}

/// Answers and folds `count` queries from `stream`, timing only the query loop.
fn run_once(
    idx: &SubsetIndex,
    mut stream: QueryStream,
    count: usize,
) -> Result<(Duration, Checksum)> {
    let mut batch = Vec::with_capacity(BATCH.min(count));
    let mut checksum = Checksum::default();
    let mut elapsed = Duration::ZERO;
    let mut done = 0;
    while done < count {
        batch.clear();
        batch.extend(stream.by_ref().take(BATCH.min(count - done)));
        let start = Instant::now();
        match stream.kind() {
            QueryKind::Rank => {
                for (k, &(i, c)) in batch.iter().enumerate() {
                    checksum.add(done + k, idx.subset_rank(black_box(i), c)?);
                }
            }
            QueryKind::Select => {
                for (k, &(j, c)) in batch.iter().enumerate() {
                    checksum.add(done + k, idx.subset_select(black_box(j), c)?);
                }
            }
        }
        elapsed += start.elapsed();
        done += batch.len();
    }
    Ok((elapsed, checksum))
}

/// Runs the configured workload `repeats` times and averages the per-query time.
pub fn run_bench(idx: &SubsetIndex, config: &BenchConfig) -> Result<BenchResult> {
    config.validate()?;
    let mut total = Duration::ZERO;
    let mut checksum = None;
    for _ in 0..config.repeats {
        let stream = QueryStream::for_index(config.seed, config.query_kind, idx)?;
        let (t, sum) = run_once(idx, stream, config.query_count)?;
        total += t;
        if let Some(prev) = checksum {
            debug_assert_eq!(prev, sum);
        }
        checksum = Some(sum);
    }
    let size = idx.size();
    let ns_per_query =
        total.as_nanos() as f64 / (config.repeats as f64 * config.query_count as f64);
    Ok(BenchResult {
        structure: idx.kind(),
        base: idx.base(),
        n: idx.len(),
        size,
        n0: idx.empty_sets(),
        sigma: idx.sigma(),
        query_kind: config.query_kind,
        ns_per_query,
        bits_per_symbol: if size == 0 {
            0.0
        } else {
            idx.size_bits() as f64 / size as f64
        },
        checksum: checksum.map_or(0, Checksum::value),
    })
}
