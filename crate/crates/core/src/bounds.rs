//! Information-theoretic space lower bound and space audits.
//!
//! Any structure answering subset-rank or subset-select determines the
//! degenerate string, so it needs at least `log2 L` bits where `L` counts the
//! strings it must tell apart. Taking all strings of `N / k` sets of size
//! `k = floor(log2 N)` gives `L = C(sigma, k)^(N / k)`.

use std::fmt;

use crate::degenerate::DegenStats;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundReport {
    pub size: usize,
    pub sigma: usize,
    /// `floor(log2 N)`, the set size of the counting class.
    pub set_size: usize,
    /// `floor(N / set_size)`, the number of sets in the counting class.
    pub sets: usize,
    /// `sets * log2 C(sigma, set_size)`.
    pub exact_bits: f64,
    /// `sets * set_size * log2((sigma - set_size) / set_size)`, clamped at 0.
    pub relaxed_bits: f64,
    /// `N * log2 sigma`.
    pub headline_bits: f64,
    /// Set when `sigma <= 2 * set_size`, where the relaxed bound says nothing.
    pub relaxed_vacuous: bool,
}

/// `log2 C(n, k)` as a sum of `k` logarithms of exact integer ratios.
pub fn log2_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (1..=k)
        .map(|t| ((n - k + t) as f64).log2() - (t as f64).log2())
        .sum()
}

pub fn lower_bound(size: usize, sigma: usize) -> Result<LowerBoundReport> {
    if size < 2 || sigma < 2 {
        return Err(Error::Precondition(format!(
            "lower bound needs N >= 2 and sigma >= 2, got N = {size}, sigma = {sigma}"
        )));
    }
    let set_size = (usize::BITS - 1 - size.leading_zeros()) as usize;
    if sigma < set_size {
        return Err(Error::Precondition(format!(
            "sigma = {sigma} is below floor(log2 N) = {set_size}"
        )));
    }
    let sets = size / set_size;
    let exact_bits = sets as f64 * log2_binomial(sigma, set_size);
    let relaxed_vacuous = sigma <= 2 * set_size;
    let relaxed_bits = if sigma > set_size {
        let per_symbol = ((sigma - set_size) as f64 / set_size as f64).log2();
        ((sets * set_size) as f64 * per_symbol).max(0.0)
    } else {
        0.0
    };
    Ok(LowerBoundReport {
        size,
        sigma,
        set_size,
        sets,
        exact_bits,
        relaxed_bits,
        headline_bits: size as f64 * (sigma as f64).log2(),
        relaxed_vacuous,
    })
}

impl fmt::Display for LowerBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N\t{}", self.size)?;
        writeln!(f, "sigma\t{}", self.sigma)?;
        writeln!(f, "set_size\t{}", self.set_size)?;
        writeln!(f, "sets\t{}", self.sets)?;
        writeln!(f, "exact_bits\t{:.3}", self.exact_bits)?;
        writeln!(f, "relaxed_bits\t{:.3}", self.relaxed_bits)?;
        writeln!(f, "headline_bits\t{:.3}", self.headline_bits)?;
        writeln!(
            f,
            "exact_over_headline\t{:.6}",
            self.exact_bits / self.headline_bits
        )?;
        if self.relaxed_vacuous {
            writeln!(f, "note\trelaxed bound vacuous (sigma <= 2 log2 N)")?;
        }
        Ok(())
    }
}

/// Measured structure size relative to instance parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceAudit {
    pub measured_bits: usize,
    pub bits_per_symbol: f64,
    pub bits_per_set: f64,
    /// `measured / (N log2 sigma)`; `None` when `sigma < 2`.
    pub headline_ratio: Option<f64>,
    /// `measured / (n H)` with `H` the empirical set entropy; `None` when `H = 0`.
    pub entropy_ratio: Option<f64>,
}

pub fn space_audit(measured_bits: usize, stats: &DegenStats) -> Result<SpaceAudit> {
    if stats.size == 0 {
        return Err(Error::Precondition("space audit needs N > 0".into()));
    }
    let m = measured_bits as f64;
    let headline = stats.size as f64 * (stats.sigma as f64).log2();
    let entropy_total = stats.n as f64 * stats.empirical_entropy_bits;
    Ok(SpaceAudit {
        measured_bits,
        bits_per_symbol: m / stats.size as f64,
        bits_per_set: m / stats.n as f64,
        headline_ratio: (headline > 0.0).then(|| m / headline),
        entropy_ratio: (entropy_total > 0.0).then(|| m / entropy_total),
    })
}

impl fmt::Display for SpaceAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "total_bits\t{}", self.measured_bits)?;
        writeln!(f, "bits_per_symbol\t{:.4}", self.bits_per_symbol)?;
        writeln!(f, "bits_per_set\t{:.4}", self.bits_per_set)?;
        if let Some(r) = self.headline_ratio {
            writeln!(f, "ratio_to_N_log_sigma\t{r:.4}")?;
        }
        if let Some(r) = self.entropy_ratio {
            writeln!(f, "ratio_to_set_entropy\t{r:.4}")?;
        }
        Ok(())
    }
}
