//! Independent reference computations for the indicator engine.
//!
//! Nothing here calls into the engine's window, correlation or series
//! code: signals are plain `Vec<Vec<f64>>` indexed by period `t - 1`.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type Grid = Vec<Vec<f64>>;

/// `r_ij(t) = 1/(k-1) * sum_{l=1..k} v_i(t-l) v_j(t-l)`, literally.
pub fn raw_entry(signal: &Grid, t: usize, k: usize, i: usize, j: usize) -> f64 {
    let mut acc = 0.0;
    for l in 1..=k {
        acc += signal[t - l - 1][i] * signal[t - l - 1][j];
    }
    acc / (k as f64 - 1.0)
}

/// Sample Pearson coefficient over lags `1..=k`; 0 when either series is
/// constant over the window.
pub fn pearson_entry(signal: &Grid, t: usize, k: usize, i: usize, j: usize) -> f64 {
    let xs: Vec<f64> = (1..=k).map(|l| signal[t - l - 1][i]).collect();
    let ys: Vec<f64> = (1..=k).map(|l| signal[t - l - 1][j]).collect();
    let constant = |v: &[f64]| v.iter().all(|&x| x == v[0]);
    if constant(&xs) || constant(&ys) {
        return 0.0;
    }
    let n = k as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

pub fn entry(signal: &Grid, t: usize, k: usize, i: usize, j: usize, standardized: bool) -> f64 {
    if standardized {
        pearson_entry(signal, t, k, i, j)
    } else {
        raw_entry(signal, t, k, i, j)
    }
}

/// Number of lags used at anchor `t`, or `None` when `t` is not evaluated.
pub fn lags_at(t: usize, k: usize, grow: bool) -> Option<usize> {
    let available = t - 1;
    if available >= k {
        Some(k)
    } else if grow && available >= 2 {
        Some(available)
    } else {
        None
    }
}

/// `V_i(t)` for every evaluated anchor, in one pass over `t = 1..=T`.
pub fn naive_series(
    signal: &Grid,
    k: usize,
    standardized: bool,
    grow: bool,
) -> Vec<(usize, Vec<f64>)> {
    let p = signal[0].len();
    let mut out = Vec::new();
    for t in 1..=signal.len() {
        let Some(lags) = lags_at(t, k, grow) else {
            continue;
        };
        let v = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| entry(signal, t, lags, i, j, standardized).abs())
                    .sum()
            })
            .collect();
        out.push((t, v));
    }
    out
}

pub fn naive_total(signal: &Grid, k: usize, standardized: bool, grow: bool) -> f64 {
    naive_series(signal, k, standardized, grow)
        .iter()
        .map(|(_, v)| v.iter().sum::<f64>())
        .sum()
}

pub fn random_grid(seed: u64, periods: usize, channels: usize) -> Grid {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..periods)
        .map(|_| (0..channels).map(|_| rng.gen_range(-10.0..10.0)).collect())
        .collect()
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}
