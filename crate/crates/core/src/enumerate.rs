//! Isomorph-free enumeration of graphs by vertex count, with an in-memory
//! memo and an optional checksummed disk cache.
//!
//! Level `n` is built from the canonical graphs of level `n - 1`: every parent
//! is extended by one vertex with every possible neighbourhood, children are
//! reduced to canonical form, and duplicates are removed. The result is sorted
//! by edge count and then by graph6 string, so it does not depend on the
//! number of worker threads.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::canon::canonical_form;
use crate::graph::Graph;
use crate::graph6;
use crate::spectral::{self, SpectralError};
use crate::subgraph::FamilyError;

/// Largest order enumerated without an explicit opt-in.
pub const DEFAULT_MAX_ORDER: usize = 9;
/// Absolute cap on enumeration.
pub const HARD_MAX_ORDER: usize = 10;
/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "SPEXLAB_CACHE_DIR";

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("order {n} exceeds the enumeration budget of {max}")]
    Budget { n: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cache error at {path}: {message}")]
    Cache { path: PathBuf, message: String },
    #[error("witness failed re-verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Shared source of enumerated graphs and their spectral radii.
/// Radii memoised by order and tolerance bits.
type RadiiMemo = HashMap<(usize, u64), Arc<Vec<f64>>>;

pub struct Catalog {
    cache_dir: Option<PathBuf>,
    max_order: usize,
    graphs: Mutex<HashMap<usize, Arc<Vec<Graph>>>>,
    radii: Mutex<RadiiMemo>,
    cache_hits: AtomicUsize,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::new()
    }
}

impl Catalog {
    /// In-memory catalog limited to the default budget.
    pub fn new() -> Catalog {
        Catalog {
            cache_dir: None,
            max_order: DEFAULT_MAX_ORDER,
            graphs: Mutex::new(HashMap::new()),
            radii: Mutex::new(HashMap::new()),
            cache_hits: AtomicUsize::new(0),
        }
    }

    /// Catalog backed by the directory in `SPEXLAB_CACHE_DIR`, if set.
    pub fn from_env() -> Catalog {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Catalog::new().with_cache_dir(PathBuf::from(dir)),
            _ => Catalog::new(),
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Catalog {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Raises the budget to `HARD_MAX_ORDER` (about twelve million classes at n = 10).
    pub fn allow_order_ten(mut self) -> Catalog {
        self.max_order = HARD_MAX_ORDER;
        self
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    /// Number of levels served from the disk cache so far.
    pub fn cache_hits(&self) -> usize {
        self.cache_hits.load(Ordering::Relaxed)
    }

    pub fn check_budget(&self, n: usize) -> Result<(), SearchError> {
        if n > self.max_order {
            return Err(SearchError::Budget { n, max: self.max_order });
        }
        Ok(())
    }

    /// All graphs of order `n` up to isomorphism, in canonical form and in
    /// deterministic order.
    pub fn graphs(&self, n: usize) -> Result<Arc<Vec<Graph>>, SearchError> {
        if n == 0 {
            return Err(SearchError::InvalidParameter("enumeration needs n >= 1".into()));
        }
        self.check_budget(n)?;
        if let Some(level) = self.graphs.lock().unwrap().get(&n) {
            return Ok(level.clone());
        }
        let level = match self.load(n)? {
            Some(level) => {
                self.cache_hits.fetch_add(1, Ordering::Relaxed);
                level
            }
            None => {
                let level = if n == 1 { vec![Graph::empty(1)?] } else { extend_level(&self.graphs(n - 1)?) };
                self.store(n, &level)?;
                level
            }
        };
        let level = Arc::new(level);
        self.graphs.lock().unwrap().insert(n, level.clone());
        Ok(level)
    }

    /// Spectral radii of `graphs(n)`, index-aligned.
    pub fn radii(&self, n: usize, tol: f64) -> Result<Arc<Vec<f64>>, SearchError> {
        let key = (n, tol.to_bits());
        if let Some(r) = self.radii.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let graphs = self.graphs(n)?;
        let radii: Vec<f64> =
            graphs.par_iter().map(|g| spectral::spectral_radius(g, tol).map(|r| r.rho)).collect::<Result<_, _>>()?;
        let radii = Arc::new(radii);
        self.radii.lock().unwrap().insert(key, radii.clone());
        Ok(radii)
    }

    fn path(&self, n: usize) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("graphs_n{n}.g6")))
    }

    /// Reads a cache file; a missing, truncated or mismatching file is ignored
    /// and regenerated.
    fn load(&self, n: usize) -> Result<Option<Vec<Graph>>, SearchError> {
        let Some(path) = self.path(n) else { return Ok(None) };
        let Ok(text) = fs::read_to_string(&path) else { return Ok(None) };
        Ok(parse_cache(&text, n))
    }

    fn store(&self, n: usize, level: &[Graph]) -> Result<(), SearchError> {
        let Some(path) = self.path(n) else { return Ok(()) };
        let err = |e: std::io::Error| SearchError::Cache { path: path.clone(), message: e.to_string() };
        let dir = path.parent().expect("cache files live in a directory");
        fs::create_dir_all(dir).map_err(err)?;
        let body = cache_body(level);
        // write to a unique temporary name, then rename into place
        let tmp = dir.join(format!(".graphs_n{n}.{}.tmp", std::process::id()));
        let mut file = fs::File::create(&tmp).map_err(err)?;
        file.write_all(body.as_bytes()).map_err(err)?;
        file.sync_all().map_err(err)?;
        fs::rename(&tmp, &path).map_err(err)?;
        Ok(())
    }
}

fn checksum(lines: &str) -> String {
    hex::encode(Sha256::digest(lines.as_bytes()))
}

fn cache_body(level: &[Graph]) -> String {
    let mut lines = String::new();
    for g in level {
        lines.push_str(&graph6::encode(g));
        lines.push('\n');
    }
    let sum = checksum(&lines);
    format!("{lines}# sha256 {sum} count {}\n", level.len())
}

fn parse_cache(text: &str, n: usize) -> Option<Vec<Graph>> {
    let footer_start = text.trim_end_matches('\n').rfind('\n').map_or(0, |i| i + 1);
    let (lines, footer) = text.split_at(footer_start);
    let mut words = footer.split_whitespace();
    if words.next()? != "#" || words.next()? != "sha256" {
        return None;
    }
    let sum = words.next()?;
    if words.next()? != "count" {
        return None;
    }
    let count: usize = words.next()?.parse().ok()?;
    if checksum(lines) != sum {
        return None;
    }
    let level: Vec<Graph> = lines.lines().map(graph6::decode).collect::<Result<_, _>>().ok()?;
    if level.len() != count || level.iter().any(|g| g.order() != n) {
        return None;
    }
    Some(level)
}

fn sort_key(g: &Graph) -> (usize, String) {
    (g.edge_count(), graph6::encode(g))
}

fn extend_level(parents: &[Graph]) -> Vec<Graph> {
    let m = parents[0].order();
    let children: HashSet<Graph> = parents
        .par_iter()
        .fold(HashSet::new, |mut acc, parent| {
            for mask in 0u128..1u128 << m {
                let mut rows = parent.rows().to_vec();
                for (v, row) in rows.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *row |= 1u128 << m;
                    }
                }
                rows.push(mask);
                acc.insert(canonical_form(&Graph::from_rows_unchecked(rows)));
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            if a.len() < b.len() {
                return b.into_iter().chain(a).collect();
            }
            a.extend(b);
            a
        });
    let mut keyed: Vec<((usize, String), Graph)> = children.into_par_iter().map(|g| (sort_key(&g), g)).collect();
    keyed.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, g)| g).collect()
}

/// Graphs of order `n` up to isomorphism using a fresh in-memory catalog.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, SearchError> {
    Ok(Catalog::new().graphs(n)?.as_ref().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    /// Independent oracle: every labelled graph, deduplicated by pairwise isomorphism.
    fn naive_classes(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if !reps.iter().any(|r| brute_isomorphic(r, &g)) {
                reps.push(g);
            }
        }
        reps.len()
    }

    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        fn rec(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: u32) -> bool {
            let i = map.len();
            if i == a.order() {
                return true;
            }
            for v in 0..b.order() {
                if used >> v & 1 == 1 || a.degree(i) != b.degree(v) {
                    continue;
                }
                if (0..i).all(|j| a.has_edge(i, j) == b.has_edge(v, map[j])) {
                    map.push(v);
                    if rec(a, b, map, used | 1 << v) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        a.edge_count() == b.edge_count() && rec(a, b, &mut Vec::new(), 0)
    }

    #[test]
    fn counts_match_naive_oracle() {
        let catalog = Catalog::new();
        for n in 1..=5 {
            assert_eq!(catalog.graphs(n).unwrap().len(), naive_classes(n), "n = {n}");
        }
    }

    #[test]
    fn level_properties() {
        let level = enumerate_graphs(5).unwrap();
        for g in level.iter() {
            assert_eq!(&canonical_form(g), g);
        }
        for (i, a) in level.iter().enumerate() {
            for b in &level[i + 1..] {
                assert!(!are_isomorphic(a, b));
            }
        }
        let keys: Vec<_> = level.iter().map(sort_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_and_bad_order() {
        let catalog = Catalog::new();
        assert!(matches!(catalog.graphs(10), Err(SearchError::Budget { n: 10, max: 9 })));
        assert!(matches!(catalog.graphs(11), Err(SearchError::Budget { .. })));
        assert!(matches!(Catalog::new().allow_order_ten().graphs(11), Err(SearchError::Budget { n: 11, max: 10 })));
        assert!(matches!(catalog.graphs(0), Err(SearchError::InvalidParameter(_))));
    }

    #[test]
    fn cache_round_trip_and_corruption() {
        let dir = std::env::temp_dir().join(format!("spexlab-enum-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let first = Catalog::new().with_cache_dir(&dir);
        let level = first.graphs(5).unwrap();
        assert_eq!(first.cache_hits(), 0);
        let second = Catalog::new().with_cache_dir(&dir);
        assert_eq!(second.graphs(5).unwrap(), level);
        assert_eq!(second.cache_hits(), 1);

        let path = dir.join("graphs_n5.g6");
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.lines().last().unwrap().starts_with("# sha256 "));
        // drop one graph: the checksum no longer matches and the level is rebuilt
        let mut lines: Vec<&str> = text.lines().collect();
        lines.remove(3);
        fs::write(&path, lines.join("\n") + "\n").unwrap();
        let third = Catalog::new().with_cache_dir(&dir);
        assert_eq!(third.graphs(5).unwrap(), level);
        assert_eq!(third.cache_hits(), 1);
        assert_eq!(fs::read_to_string(&path).unwrap(), text);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn radii_are_aligned() {
        let catalog = Catalog::new();
        let graphs = catalog.graphs(4).unwrap();
        let radii = catalog.radii(4, spectral::DEFAULT_TOL).unwrap();
        assert_eq!(graphs.len(), radii.len());
        let k4 = graphs.iter().position(|g| g.edge_count() == 6).unwrap();
        assert!((radii[k4] - 3.0).abs() < 1e-9);
    }
}
