//! Currency-to-continent mapping and intracontinental link fractions.

use super::{NetworkError, SpanningTree};
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

/// Assignment of currency codes to continent names.
#[derive(Clone, Debug, Default)]
pub struct ContinentMap {
    map: BTreeMap<String, String>,
}

impl ContinentMap {
    /// Parse `CCY,Continent` lines. Blank lines and `#` comments are
    /// allowed; duplicate codes are rejected.
    pub fn parse(text: &str) -> Result<Self, NetworkError> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (code, continent) = line.split_once(',').ok_or(NetworkError::MapLine {
                line: idx + 1,
                message: "expected `CCY,Continent`".to_string(),
            })?;
            let code = code.trim();
            let continent = continent.trim();
            if code.is_empty() || continent.is_empty() {
                return Err(NetworkError::MapLine {
                    line: idx + 1,
                    message: "empty code or continent".to_string(),
                });
            }
            if map.insert(code.to_string(), continent.to_string()).is_some() {
                return Err(NetworkError::DuplicateMapping(code.to_string()));
            }
        }
        Ok(ContinentMap { map })
    }

    pub fn continent(&self, code: &str) -> Option<&str> {
        self.map.get(code).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    fn require(&self, code: &str) -> Result<&str, NetworkError> {
        self.continent(code)
            .ok_or_else(|| NetworkError::UnmappedCurrency(code.to_string()))
    }
}

/// Fraction of tree edges whose endpoints share a continent.
pub fn intracontinental_fraction(
    tree: &SpanningTree,
    map: &ContinentMap,
) -> Result<f64, NetworkError> {
    let labels = tree.labels();
    let mut same = 0usize;
    for e in tree.edges() {
        let a = map.require(&labels[e.i])?;
        let b = map.require(&labels[e.j])?;
        if a == b {
            same += 1;
        }
    }
    Ok(same as f64 / tree.edges().len() as f64)
}

/// Intracontinental fraction of the complete graph over `labels`, computed
/// analytically as `sum_i C(n_i, 2) / C(N, 2)` over per-continent counts.
pub fn full_graph_intracontinental(
    labels: &[String],
    map: &ContinentMap,
) -> Result<f64, NetworkError> {
    let n = labels.len();
    assert!(n >= 2, "need at least two nodes");
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for code in labels {
        *counts.entry(map.require(code)?).or_insert(0) += 1;
    }
    let same: u64 = counts.values().map(|&c| c * (c - 1) / 2).sum();
    let total = (n as u64) * (n as u64 - 1) / 2;
    Ok(same as f64 / total as f64)
}
