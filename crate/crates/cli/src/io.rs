//! Result-file formats: the per-run manifest, per-window tree documents,
//! and the CSV tables the plotting side consumes. All outputs are UTF-8
//! with LF line endings and `%.6g` numbers.

use crate::format::{g6, g6_number};
use crate::CliError;
use fxnet_core::evolution::{NetworkSeries, WindowNetwork};
use fxnet_core::network::{ContinentMap, Measure, SpanningTree, TreeEdge};
use fxnet_core::returns::Date;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

/// Continent mapping shipped with the binary, used when no --continents
/// file is given.
pub const DEFAULT_CONTINENTS: &str = include_str!("../data/continents.csv");

pub fn load_continents(path: Option<&Path>) -> Result<ContinentMap, CliError> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| {
                CliError::input(format!("cannot read continent map {}: {e}", p.display()))
            })?;
            Ok(ContinentMap::parse(&text)?)
        }
        None => Ok(ContinentMap::parse(DEFAULT_CONTINENTS).expect("builtin map parses")),
    }
}

/// Where a run's continent mapping came from, for the manifest.
pub fn continents_source(path: Option<&Path>) -> String {
    match path {
        Some(p) => p.display().to_string(),
        None => "builtin".to_string(),
    }
}

/// Everything needed to audit or re-derive a run, written as
/// `manifest.json` once all other outputs are on disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub input: String,
    pub file_base: String,
    pub base: String,
    pub measure: String,
    pub window: usize,
    pub smoothing: usize,
    pub k: usize,
    pub repetitions: usize,
    pub ridge: f64,
    pub seed: u64,
    pub continents: String,
    pub currencies: Vec<String>,
    pub rate_rows: usize,
    pub return_rows: usize,
    pub networks: usize,
    pub first_end_date: String,
    pub last_end_date: String,
}

#[derive(Serialize, Deserialize)]
struct TreeDoc {
    date: String,
    labels: Vec<String>,
    edges: Vec<EdgeDoc>,
    degrees: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    i: String,
    j: String,
    weight: serde_json::Value,
}

fn tree_doc(entry: &WindowNetwork) -> TreeDoc {
    let labels = entry.tree.labels();
    let edges = entry
        .tree
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = ordered_codes(labels, e);
            EdgeDoc {
                i: a.to_string(),
                j: b.to_string(),
                weight: serde_json::Value::Number(g6_number(e.weight)),
            }
        })
        .collect();
    TreeDoc {
        date: entry.end_date.as_str().to_string(),
        labels: labels.to_vec(),
        edges,
        degrees: entry.degrees.clone(),
    }
}

/// Lexicographically ordered label pair of an edge.
fn ordered_codes<'a>(labels: &'a [String], e: &TreeEdge) -> (&'a str, &'a str) {
    let (a, b) = (labels[e.i].as_str(), labels[e.j].as_str());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Tracks files written so far so a failed run can clean up after itself.
pub struct OutputWriter {
    root: PathBuf,
    created: Vec<PathBuf>,
    created_dirs: Vec<PathBuf>,
}

impl OutputWriter {
    pub fn new(root: &Path) -> Result<Self, CliError> {
        let mut created_dirs = Vec::new();
        if !root.exists() {
            fs::create_dir_all(root)
                .map_err(|e| CliError::input(format!("cannot create {}: {e}", root.display())))?;
            created_dirs.push(root.to_path_buf());
        }
        Ok(OutputWriter {
            root: root.to_path_buf(),
            created: Vec::new(),
            created_dirs,
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn write(&mut self, relative: &str, contents: &str) -> Result<(), CliError> {
        let path = self.root.join(relative);
        if let Some(parent) = path.parent() {
            if !parent.exists() {
                fs::create_dir_all(parent).map_err(|e| {
                    CliError::internal(format!("cannot create {}: {e}", parent.display()))
                })?;
                self.created_dirs.push(parent.to_path_buf());
            }
        }
        fs::write(&path, contents)
            .map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display())))?;
        self.created.push(path);
        Ok(())
    }

    /// Remove everything written so far (best effort), for failure paths.
    pub fn remove_partial_outputs(&self) {
        for f in self.created.iter().rev() {
            let _ = fs::remove_file(f);
        }
        for d in self.created_dirs.iter().rev() {
            let _ = fs::remove_dir(d);
        }
    }
}

/// Serialize one spanning tree as edge-list lines `date,node_i,node_j,weight`
/// (no header), nodes lexicographic within each pair.
pub fn tree_edge_lines(date: &Date, tree: &SpanningTree) -> String {
    let labels = tree.labels();
    let mut out = String::new();
    for e in tree.edges() {
        let (a, b) = ordered_codes(labels, e);
        out.push_str(&format!("{},{},{},{}\n", date.as_str(), a, b, g6(e.weight)));
    }
    out
}

pub fn tree_json(entry: &WindowNetwork) -> String {
    serde_json::to_string_pretty(&tree_doc(entry)).expect("tree serializes") + "\n"
}

pub fn manifest_json(manifest: &Manifest) -> String {
    serde_json::to_string_pretty(manifest).expect("manifest serializes") + "\n"
}

pub fn read_manifest(dir: &Path) -> Result<Manifest, CliError> {
    let path = dir.join("manifest.json");
    let text = fs::read_to_string(&path).map_err(|_| {
        CliError::input(format!(
            "no manifest.json in {}; run `fxnet evolve` first",
            dir.display()
        ))
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("corrupt manifest {}: {e}", path.display())))
}

/// Load the tree documents of a finished run back into a network series.
pub fn read_network_series(dir: &Path, manifest: &Manifest) -> Result<NetworkSeries, CliError> {
    let trees_dir = dir.join("trees");
    let mut paths: Vec<PathBuf> = fs::read_dir(&trees_dir)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", trees_dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();

    let mut entries = Vec::with_capacity(paths.len());
    for path in &paths {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        let doc: TreeDoc = serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("corrupt tree {}: {e}", path.display())))?;
        entries.push(window_from_doc(doc, path)?);
    }
    if entries.is_empty() {
        return Err(CliError::input(format!(
            "no tree documents in {}",
            trees_dir.display()
        )));
    }
    entries.sort_by(|a, b| a.end_date.cmp(&b.end_date));
    let measure = manifest
        .measure
        .parse::<Measure>()
        .map_err(|e| CliError::input(e.to_string()))?;
    Ok(NetworkSeries {
        entries,
        window: manifest.window,
        measure,
    })
}

fn window_from_doc(doc: TreeDoc, path: &Path) -> Result<WindowNetwork, CliError> {
    let bad = |msg: String| CliError::input(format!("corrupt tree {}: {msg}", path.display()));
    let date = Date::parse(&doc.date).ok_or_else(|| bad(format!("bad date `{}`", doc.date)))?;
    let index_of = |code: &str| {
        doc.labels
            .iter()
            .position(|l| l == code)
            .ok_or_else(|| bad(format!("edge references unknown label `{code}`")))
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let a = index_of(&e.i)?;
        let b = index_of(&e.j)?;
        let weight = e
            .weight
            .as_f64()
            .ok_or_else(|| bad("non-numeric weight".to_string()))?;
        edges.push(TreeEdge {
            i: a.min(b),
            j: a.max(b),
            weight,
        });
    }
    let tree = SpanningTree::from_parts(doc.labels, edges)
        .map_err(|e| bad(e.to_string()))?;
    // Stored degrees are redundant with the edges; verify instead of trust.
    let recomputed = tree.degree_map();
    if recomputed != doc.degrees {
        return Err(bad("stored degrees disagree with edges".to_string()));
    }
    Ok(WindowNetwork {
        end_date: date,
        degrees: recomputed,
        tree,
    })
}
