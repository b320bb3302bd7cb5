//! Goodness of fit against an exact law, and the test that a run's length
//! tells nothing about its output.

use std::collections::BTreeMap;

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use recycler_core::{ExactDistribution, Sample};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofReport {
    pub samples: u64,
    pub tv: f64,
    pub chi_square: f64,
    pub df: usize,
    pub p_value: f64,
    pub tolerance: f64,
    pub significance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// A configuration observed outside the exact support.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub impossible: Option<Sample>,
}

/// Upper tail probability of a chi-square statistic.
pub fn chi_square_p_value(statistic: f64, df: usize) -> f64 {
    if df == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    dist.sf(statistic).clamp(0.0, 1.0)
}

/// TV distance and Pearson chi-square of `counts` against `exact`. Passes
/// when TV is at most `tolerance` and the p-value is at least
/// `significance`. Any observation outside the support fails outright.
pub fn goodness_of_fit(
    exact: &ExactDistribution,
    counts: &BTreeMap<Sample, u64>,
    tolerance: f64,
    significance: f64,
) -> GofReport {
    let samples: u64 = counts.values().sum();
    let tv = exact.total_variation(counts);
    let impossible = counts
        .keys()
        .find(|s| !exact.entries.contains_key(*s))
        .cloned();
    let n = samples as f64;
    let chi_square: f64 = exact
        .entries
        .iter()
        .map(|(s, &p)| {
            let expected = n * p;
            let observed = counts.get(s).copied().unwrap_or(0) as f64;
            (observed - expected).powi(2) / expected
        })
        .sum();
    let df = exact.support_size().saturating_sub(1);
    let p_value = if impossible.is_some() {
        0.0
    } else {
        chi_square_p_value(chi_square, df)
    };
    let note = if samples == 0 {
        Some("no samples".to_string())
    } else {
        impossible
            .as_ref()
            .map(|s| format!("observed configuration outside the support: {s:?}"))
    };
    GofReport {
        samples,
        tv,
        chi_square,
        df,
        p_value,
        tolerance,
        significance,
        pass: samples > 0 && impossible.is_none() && tv <= tolerance && p_value >= significance,
        note,
        impossible,
    }
}

/// Minimum number of records [`independence_test`] accepts.
pub const MIN_RECORDS: usize = 1000;
// Statistic values seen fewer times than this share one column.
const SPARSE_COLUMN: u64 = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependenceReport {
    pub records: usize,
    pub median_t: u64,
    pub chi_square: f64,
    pub df: usize,
    pub p_value: f64,
    pub significance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Splits `(T, statistic)` records at the median of `T` (`T <= median`
/// against `T > median`) and tests homogeneity of the statistic's law
/// across the two halves with a 2×K chi-square.
pub fn independence_test(
    records: &[(u64, i64)],
    significance: f64,
) -> Result<IndependenceReport, String> {
    if records.len() < MIN_RECORDS {
        return Err(format!(
            "independence test needs at least {MIN_RECORDS} records, got {}",
            records.len()
        ));
    }
    let mut ts: Vec<u64> = records.iter().map(|r| r.0).collect();
    ts.sort_unstable();
    let median_t = ts[(ts.len() - 1) / 2];
    let degenerate = |note: &str| IndependenceReport {
        records: records.len(),
        median_t,
        chi_square: 0.0,
        df: 0,
        p_value: 1.0,
        significance,
        pass: true,
        note: Some(note.to_string()),
    };

    let mut table: BTreeMap<i64, [u64; 2]> = BTreeMap::new();
    for &(t, stat) in records {
        table.entry(stat).or_default()[usize::from(t > median_t)] += 1;
    }
    if table.len() == 1 {
        return Ok(degenerate("statistic takes a single value"));
    }
    let mut columns: Vec<[u64; 2]> = Vec::new();
    let mut other = [0u64; 2];
    for cell in table.values() {
        if cell[0] + cell[1] < SPARSE_COLUMN {
            other[0] += cell[0];
            other[1] += cell[1];
        } else {
            columns.push(*cell);
        }
    }
    if other[0] + other[1] > 0 {
        columns.push(other);
    }
    let rows = [
        columns.iter().map(|c| c[0]).sum::<u64>(),
        columns.iter().map(|c| c[1]).sum::<u64>(),
    ];
    if rows[0] == 0 || rows[1] == 0 {
        return Ok(degenerate("run length takes a single value"));
    }
    if columns.len() < 2 {
        return Ok(degenerate(
            "statistic concentrated in one column after merging",
        ));
    }
    let total = (rows[0] + rows[1]) as f64;
    let mut chi_square = 0.0;
    for col in &columns {
        let col_total = (col[0] + col[1]) as f64;
        for r in 0..2 {
            let expected = rows[r] as f64 * col_total / total;
            chi_square += (col[r] as f64 - expected).powi(2) / expected;
        }
    }
    let df = columns.len() - 1;
    let p_value = chi_square_p_value(chi_square, df);
    Ok(IndependenceReport {
        records: records.len(),
        median_t,
        chi_square,
        df,
        p_value,
        significance,
        pass: p_value >= significance,
        note: None,
    })
}
