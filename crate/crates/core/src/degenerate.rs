//! Degenerate strings: sequences of symbol sets over `[0, sigma)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A sequence of sets `X_0, ..., X_{n-1}`, each kept in input order.
///
/// The sets are kept concatenated in `symbols` with `offsets[i]..offsets[i + 1]`
/// delimiting set `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateString {
    sigma: usize,
    symbols: Vec<u32>,
    offsets: Vec<usize>,
}

/// Text encodings understood by [`DegenerateString::parse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Header line `sigma n`, then one line per set with its symbols separated by spaces.
    SetsText,
    /// One line over `ACGT`; each letter is a singleton set and `sigma = 4`.
    DnaText,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sets-text" => Ok(Format::SetsText),
            "dna-text" => Ok(Format::DnaText),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::SetsText => "sets-text",
            Format::DnaText => "dna-text",
        })
    }
}

pub const DNA_LETTERS: [u8; 4] = *b"ACGT";

fn dna_code(b: u8) -> Option<u32> {
    DNA_LETTERS.iter().position(|&l| l == b).map(|p| p as u32)
}

impl DegenerateString {
    /// Builds from arbitrary-order sets. Fails on a symbol `>= sigma` or a repeated symbol.
    pub fn from_sets<I, S>(sigma: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut x = Self {
            sigma,
            symbols: Vec::new(),
            offsets: vec![0],
        };
        for set in sets {
            x.push_set(set.as_ref(), x.offsets.len())?;
        }
        Ok(x)
    }

    fn push_set(&mut self, set: &[u32], line: usize) -> Result<()> {
        if let Some(&s) = set.iter().find(|&&s| s as usize >= self.sigma) {
            return Err(Error::Parse {
                line,
                msg: format!("symbol {s} not below alphabet size {}", self.sigma),
            });
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                line,
                msg: format!("symbol {} repeated in set", w[0]),
            });
        }
        self.symbols.extend_from_slice(set);
        self.offsets.push(self.symbols.len());
        Ok(())
    }

    /// Alphabet size.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Number of sets, `n`.
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total number of symbols over all sets, `N`.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    /// Number of empty sets, `n0`.
    pub fn empty_sets(&self) -> usize {
        self.offsets.windows(2).filter(|w| w[0] == w[1]).count()
    }

    pub fn set(&self, i: usize) -> &[u32] {
        &self.symbols[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn sets(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.offsets
            .windows(2)
            .map(move |w| &self.symbols[w[0]..w[1]])
    }

    /// Concatenation of all sets in order.
    pub fn concatenated(&self) -> &[u32] {
        &self.symbols
    }

    pub fn parse(text: &[u8], format: Format) -> Result<Self> {
        let text = std::str::from_utf8(text).map_err(|e| Error::Parse {
            line: 1,
            msg: format!("not UTF-8: {e}"),
        })?;
        match format {
            Format::SetsText => Self::parse_sets_text(text),
            Format::DnaText => Self::parse_dna_text(text),
        }
    }

    fn parse_sets_text(text: &str) -> Result<Self> {
        // every line ends in LF; only the final LF may be omitted
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
        let header = lines.next().unwrap_or("");
        let fields: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || Error::Parse {
            line: 1,
            msg: format!("expected header \"sigma n\", got {header:?}"),
        };
        if fields.len() != 2 {
            return Err(bad_header());
        }
        let sigma: usize = fields[0].parse().map_err(|_| bad_header())?;
        let n: usize = fields[1].parse().map_err(|_| bad_header())?;
        let mut x = Self {
            sigma,
            symbols: Vec::new(),
            offsets: Vec::with_capacity(n + 1),
        };
        x.offsets.push(0);
        for k in 0..n {
            let line_no = k + 2;
            let line = lines.next().ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("expected {n} sets, found {k}"),
            })?;
            let set = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad symbol {tok:?}"),
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            x.push_set(&set, line_no)?;
        }
        if lines.next().is_some() {
            return Err(Error::Parse {
                line: n + 2,
                msg: "trailing data after the last set".into(),
            });
        }
        Ok(x)
    }

    fn parse_dna_text(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let body = body.strip_suffix('\r').unwrap_or(body);
        if body.contains('\n') {
            return Err(Error::Parse {
                line: 2,
                msg: "dna-text holds a single line".into(),
            });
        }
        let symbols = body
            .bytes()
            .enumerate()
            .map(|(p, b)| {
                dna_code(b).ok_or_else(|| Error::Parse {
                    line: 1,
                    msg: format!("invalid DNA letter {:?} at column {}", b as char, p + 1),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        let offsets = (0..=symbols.len()).collect();
        Ok(Self {
            sigma: 4,
            symbols,
            offsets,
        })
    }

    pub fn serialize(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::SetsText => {
                let mut out = format!("{} {}\n", self.sigma, self.len());
                for set in self.sets() {
                    let line: Vec<String> = set.iter().map(u32::to_string).collect();
                    out.push_str(&line.join(" "));
                    out.push('\n');
                }
                Ok(out.into_bytes())
            }
            Format::DnaText => {
                if self.sigma != 4 {
                    return Err(Error::InvalidArgument(format!(
                        "dna-text needs sigma = 4, have {}",
                        self.sigma
                    )));
                }
                if let Some(i) = self.sets().position(|s| s.len() != 1) {
                    return Err(Error::InvalidArgument(format!(
                        "dna-text needs singleton sets, set {i} has size {}",
                        self.set(i).len()
                    )));
                }
                let mut out: Vec<u8> = self
                    .symbols
                    .iter()
                    .map(|&s| DNA_LETTERS[s as usize])
                    .collect();
                out.push(b'\n');
                Ok(out)
            }
        }
    }

    pub fn stats(&self) -> DegenStats {
        let mut histogram = vec![0usize; self.sigma + 1];
        let mut distinct: HashMap<Vec<u32>, usize> = HashMap::new();
        for set in self.sets() {
            histogram[set.len()] += 1;
            let mut key = set.to_vec();
            key.sort_unstable();
            *distinct.entry(key).or_default() += 1;
        }
        let n = self.len() as f64;
        let entropy = distinct
            .values()
            .map(|&k| {
                let p = k as f64 / n;
                -p * p.log2()
            })
            .sum::<f64>()
            .max(0.0);
        DegenStats {
            n: self.len(),
            size: self.size(),
            n0: histogram[0],
            sigma: self.sigma,
            set_size_histogram: histogram,
            empirical_entropy_bits: entropy,
        }
    }
}

/// Summary statistics of a degenerate string.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenStats {
    pub n: usize,
    /// `N`, the total number of symbols.
    pub size: usize,
    pub n0: usize,
    pub sigma: usize,
    /// `set_size_histogram[k]` = number of sets of size `k`.
    pub set_size_histogram: Vec<usize>,
    /// Empirical entropy of the distribution of distinct sets, in bits per set.
    pub empirical_entropy_bits: f64,
}

impl fmt::Display for DegenStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n\t{}", self.n)?;
        writeln!(f, "N\t{}", self.size)?;
        writeln!(f, "n0\t{}", self.n0)?;
        writeln!(f, "sigma\t{}", self.sigma)?;
        writeln!(
            f,
            "entropy_bits_per_set\t{:.6}",
            self.empirical_entropy_bits
        )?;
        for (k, &count) in self.set_size_histogram.iter().enumerate() {
            if count > 0 {
                writeln!(f, "sets_of_size_{k}\t{count}")?;
            }
        }
        Ok(())
    }
}

/// Set-size distributions for [`generate`].
#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    /// `weights[k]` is the relative probability of a set of size `k`; members drawn uniformly.
    Uniform(Vec<f64>),
    /// DNA-like: `sigma = 4`, mostly singletons.
    GenomicLike,
}

/// Size weights for sizes 0..=4 under [`Profile::GenomicLike`].
pub const GENOMIC_SIZE_WEIGHTS: [f64; 5] = [0.01, 0.80, 0.12, 0.05, 0.02];

impl FromStr for Profile {
    type Err = Error;

    /// `genomic`, `uniform` (all sizes equally likely) or `uniform:w0,w1,...`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "genomic" | "genomic-like" => Ok(Profile::GenomicLike),
            "uniform" => Ok(Profile::Uniform(Vec::new())),
            _ => {
                let list = s
                    .strip_prefix("uniform:")
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown profile {s:?}")))?;
                let weights = list
                    .split(',')
                    .map(|w| {
                        w.trim().parse::<f64>().map_err(|_| {
                            Error::InvalidArgument(format!("bad weight {w:?} in profile"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Profile::Uniform(weights))
            }
        }
    }
}

/// Deterministic random degenerate string.
///
/// An empty weight list under [`Profile::Uniform`] means every size in
/// `0..=sigma` is equally likely.
pub fn generate(seed: u64, n: usize, sigma: usize, profile: &Profile) -> Result<DegenerateString> {
    let weights: Vec<f64> = match profile {
        Profile::GenomicLike => {
            if sigma != 4 {
                return Err(Error::InvalidArgument(format!(
                    "genomic-like profile has sigma = 4, requested {sigma}"
                )));
            }
            GENOMIC_SIZE_WEIGHTS.to_vec()
        }
        Profile::Uniform(w) if w.is_empty() => vec![1.0; sigma + 1],
        Profile::Uniform(w) => w.clone(),
    };
    if weights.len() > sigma + 1 {
        return Err(Error::InvalidArgument(format!(
            "{} size weights given but sets hold at most {sigma} symbols",
            weights.len()
        )));
    }
    let sizes = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidArgument(format!("invalid size distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = DegenerateString {
        sigma,
        symbols: Vec::new(),
        offsets: Vec::with_capacity(n + 1),
    };
    x.offsets.push(0);
    let mut set = Vec::with_capacity(sigma);
    for _ in 0..n {
        let k = sizes.sample(&mut rng);
        set.clear();
        set.extend(
            rand::seq::index::sample(&mut rng, sigma, k)
                .into_iter()
                .map(|s| s as u32),
        );
        set.sort_unstable();
        x.symbols.extend_from_slice(&set);
        x.offsets.push(x.symbols.len());
    }
    Ok(x)
}
