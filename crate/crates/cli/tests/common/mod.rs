//! Shared synthetic-data builders for the integration and acceptance
//! suites. Each test binary compiles its own copy, so not every helper is
//! used by every binary.
#![allow(dead_code)]

use fxnet_core::rng::RngStream;
use std::fmt::Write as _;

/// Monotone ISO-shaped date label for row `i`.
pub fn date_label(i: usize) -> String {
    format!(
        "{:04}-{:02}-{:02}",
        2002 + i / 336,
        (i / 28) % 12 + 1,
        i % 28 + 1
    )
}

/// A delimited rate table of independent geometric random walks.
pub fn random_walk_rates_csv(codes: &[&str], rows: usize, seed: u64) -> String {
    let mut s = RngStream::derive(seed, &[0xCAFE]);
    let mut levels: Vec<f64> = codes.iter().map(|_| 1.0 + 9.0 * s.next_f64()).collect();
    let mut out = String::from("date");
    for c in codes {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for i in 0..rows {
        write!(out, "{}", date_label(i)).unwrap();
        for level in levels.iter_mut() {
            *level *= (0.01 * s.next_normal()).exp();
            write!(out, ",{level:.12}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Return columns where currencies within a block share a common factor:
/// `r = loading * f_block + noise`, everything unit-normal before scaling.
pub fn block_factor_returns(
    block_sizes: &[usize],
    rows: usize,
    loading: f64,
    seed: u64,
) -> (Vec<String>, Vec<Vec<f64>>, Vec<String>) {
    let mut s = RngStream::derive(seed, &[0xB10C]);
    let mut codes = Vec::new();
    let mut continents = Vec::new();
    let mut columns = Vec::new();
    let factors: Vec<Vec<f64>> = block_sizes
        .iter()
        .map(|_| (0..rows).map(|_| s.next_normal()).collect())
        .collect();
    for (b, &size) in block_sizes.iter().enumerate() {
        for m in 0..size {
            let code = format!("B{b}M{m:02}");
            continents.push(format!("{code},Block{b}"));
            codes.push(code);
            let col = (0..rows)
                .map(|t| 0.01 * (loading * factors[b][t] + s.next_normal()))
                .collect();
            columns.push(col);
        }
    }
    (codes, columns, continents)
}
