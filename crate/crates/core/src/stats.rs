//! Paired nonparametric comparison: Wilcoxon signed-rank test and the
//! Hodges–Lehmann shift estimator.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Largest effective sample size for which the exact null distribution is used.
pub const EXACT_MAX_N: usize = 25;

fn check_sample(differences: &[f64]) -> Result<()> {
    if differences.is_empty() {
        return Err(Error::param("paired sample is empty"));
    }
    if differences.iter().any(|d| !d.is_finite()) {
        return Err(Error::param("paired sample contains non-finite values"));
    }
    Ok(())
}

/// Median of all Walsh averages `(d_i + d_j) / 2`, `i <= j`.
pub fn hodges_lehmann(differences: &[f64]) -> Result<f64> {
    check_sample(differences)?;
    let n = differences.len();
    let mut walsh = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            walsh.push((differences[i] + differences[j]) / 2.0);
        }
    }
    let m = walsh.len();
    let mid = m / 2;
    let (_, &mut upper, _) = walsh.select_nth_unstable_by(mid, f64::total_cmp);
    if m % 2 == 1 {
        return Ok(upper);
    }
    let lower = walsh[..mid].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lower + upper) / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilcoxonResult {
    /// Sum of the ranks of positive differences.
    pub w_plus: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    /// Sample size after dropping zero differences.
    pub n_effective: usize,
    /// Whether `p_value` comes from the exact null distribution.
    pub exact: bool,
    /// Every difference was zero; `p_value` is 1 by convention.
    pub degenerate: bool,
}

/// Ranks of `|d|` with midranks for ties, in input order.
pub fn signed_ranks(nonzero: &[f64]) -> Vec<f64> {
    let n = nonzero.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| nonzero[a].abs().total_cmp(&nonzero[b].abs()));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && nonzero[idx[j + 1]].abs() == nonzero[idx[i]].abs() {
            j += 1;
        }
        // positions i..=j share the average of ranks i+1..=j+1
        let mid = (i + j + 2) as f64 / 2.0;
        for &k in &idx[i..=j] {
            ranks[k] = mid;
        }
        i = j + 1;
    }
    ranks
}

/// How [`wilcoxon_signed_rank_with`] computes the p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PValueMethod {
    /// Exact up to [`EXACT_MAX_N`] nonzero differences, normal beyond.
    #[default]
    Auto,
    Exact,
    Normal,
}

/// Largest sample the exact distribution can count without overflow.
const EXACT_HARD_LIMIT: usize = 62;

/// Wilcoxon signed-rank test on paired differences.
///
/// Zeros are dropped. With at most [`EXACT_MAX_N`] remaining values the
/// p-value comes from the exact permutation distribution of `W+` given the
/// observed (mid)ranks; otherwise from the normal approximation with tie
/// correction and a 0.5 continuity correction.
pub fn wilcoxon_signed_rank(differences: &[f64]) -> Result<WilcoxonResult> {
    wilcoxon_signed_rank_with(differences, PValueMethod::Auto)
}

/// [`wilcoxon_signed_rank`] with the p-value branch chosen by the caller.
pub fn wilcoxon_signed_rank_with(differences: &[f64], method: PValueMethod) -> Result<WilcoxonResult> {
    check_sample(differences)?;
    let nonzero: Vec<f64> = differences.iter().copied().filter(|&d| d != 0.0).collect();
    let n = nonzero.len();
    if n == 0 {
        return Ok(WilcoxonResult {
            w_plus: 0.0,
            p_value: 1.0,
            n_effective: 0,
            exact: true,
            degenerate: true,
        });
    }
    let exact = match method {
        PValueMethod::Auto => n <= EXACT_MAX_N,
        PValueMethod::Exact if n > EXACT_HARD_LIMIT => {
            return Err(Error::param(format!("exact distribution limited to {EXACT_HARD_LIMIT} values, got {n}")))
        }
        PValueMethod::Exact => true,
        PValueMethod::Normal => false,
    };
    let ranks = signed_ranks(&nonzero);
    let w_plus: f64 = nonzero.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();
    let p_value = if exact { exact_p_value(&ranks, w_plus) } else { normal_p_value(&ranks, w_plus) };
    Ok(WilcoxonResult { w_plus, p_value, n_effective: n, exact, degenerate: false })
}

/// Two-sided p from the null distribution in which every rank carries a
/// positive sign independently with probability 1/2.
fn exact_p_value(ranks: &[f64], w_plus: f64) -> f64 {
    // midranks are multiples of 1/2, so doubled ranks are integers
    let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
    let max: usize = doubled.iter().sum();
    let mut counts = vec![0u64; max + 1];
    counts[0] = 1;
    for &r in &doubled {
        for s in (r..=max).rev() {
            counts[s] += counts[s - r];
        }
    }
    let observed = (w_plus * 2.0).round() as usize;
    let total = (1u64 << ranks.len()) as f64;
    let lower: u64 = counts[..=observed].iter().sum();
    let upper: u64 = counts[observed..].iter().sum();
    (2.0 * lower.min(upper) as f64 / total).min(1.0)
}

fn normal_p_value(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&r| r == sorted[i]).count();
        let t = j as f64;
        tie_term += t * t * t - t;
        i += j;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((w_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
    // two-sided tail: 2 * (1 - Phi(z)) = erfc(z / sqrt 2)
    erfc(z / std::f64::consts::SQRT_2).clamp(f64::MIN_POSITIVE, 1.0)
}
