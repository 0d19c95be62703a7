//! Kruskal minimum spanning tree with deterministic tie-breaking.

use super::{DistanceMatrix, NetworkError};
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Union-find with path halving and union by rank.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: alloc::vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when both nodes already share a component.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// One undirected tree edge between node indices `i < j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeEdge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// A spanning tree over labelled nodes: exactly N-1 edges, connected.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    labels: Vec<String>,
    edges: Vec<TreeEdge>,
}

impl SpanningTree {
    /// Assemble from parts, validating the tree invariants.
    pub fn from_parts(labels: Vec<String>, edges: Vec<TreeEdge>) -> Result<Self, NetworkError> {
        let tree = SpanningTree { labels, edges };
        tree.validate()?;
        Ok(tree)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Edges in construction order (ascending weight, label-lexicographic on
    /// ties).
    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Node degrees indexed like `labels`.
    pub fn degree_counts(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0usize; self.labels.len()];
        for e in &self.edges {
            deg[e.i] += 1;
            deg[e.j] += 1;
        }
        deg
    }

    /// Node degrees keyed by label.
    pub fn degree_map(&self) -> BTreeMap<String, usize> {
        self.labels
            .iter()
            .cloned()
            .zip(self.degree_counts())
            .collect()
    }

    /// Check the spanning-tree invariants: edge count, index bounds, finite
    /// weights, connectivity (which together imply acyclicity).
    pub fn validate(&self) -> Result<(), NetworkError> {
        let n = self.labels.len();
        if n < 2 {
            return Err(NetworkError::NotATree("fewer than two nodes".to_string()));
        }
        if self.edges.len() != n - 1 {
            return Err(NetworkError::NotATree(alloc::format!(
                "{} edges for {} nodes",
                self.edges.len(),
                n
            )));
        }
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            if e.i >= e.j || e.j >= n {
                return Err(NetworkError::NotATree(alloc::format!(
                    "edge ({}, {}) out of order or bounds",
                    e.i,
                    e.j
                )));
            }
            if !e.weight.is_finite() {
                return Err(NetworkError::NotATree("non-finite edge weight".to_string()));
            }
            if !uf.union(e.i, e.j) {
                return Err(NetworkError::NotATree("cycle detected".to_string()));
            }
        }
        // n-1 successful unions on n nodes leave a single component.
        Ok(())
    }
}

/// Minimum spanning tree of a distance matrix by Kruskal's construction.
///
/// Candidate links are taken in ascending distance order and added whenever
/// the graph stays a forest. Ties are broken by the lexicographic order of
/// the label pair, which makes the result invariant under column
/// permutations of the input data.
pub fn mst(d: &DistanceMatrix) -> Result<SpanningTree, NetworkError> {
    let n = d.size();
    if n < 2 {
        return Err(NetworkError::TooFewCurrencies { have: n });
    }
    let labels = d.labels();
    let mut edges: Vec<TreeEdge> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push(TreeEdge {
                i,
                j,
                weight: d.get(i, j),
            });
        }
    }
    edges.sort_unstable_by(|a, b| {
        a.weight.total_cmp(&b.weight).then_with(|| {
            let ka = label_pair(labels, a);
            let kb = label_pair(labels, b);
            ka.cmp(&kb)
        })
    });

    let mut uf = UnionFind::new(n);
    let mut chosen = Vec::with_capacity(n - 1);
    for e in edges {
        if uf.union(e.i, e.j) {
            chosen.push(e);
            if chosen.len() == n - 1 {
                break;
            }
        }
    }
    let tree = SpanningTree {
        labels: labels.to_vec(),
        edges: chosen,
    };
    debug_assert!(tree.validate().is_ok());
    Ok(tree)
}

fn label_pair<'a>(labels: &'a [String], e: &TreeEdge) -> (&'a str, &'a str) {
    let (a, b) = (labels[e.i].as_str(), labels[e.j].as_str());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
