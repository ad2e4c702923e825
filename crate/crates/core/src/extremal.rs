//! Brute-force extremal searches over the enumerated catalog: the largest
//! edge count (EX) and the largest spectral radius (SPEX) among graphs that
//! avoid a forbidden family.

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_form;
use crate::enumerate::{Catalog, SearchError};
use crate::graph::Graph;
use crate::graph6;
use crate::spectral;
use crate::subgraph::ForbiddenFamily;

/// Spectral radii within this distance of the maximum are co-witnesses.
pub const TIE_TOL: f64 = 1e-9;
/// A SPEX witness is reported unique only if the runner-up trails by more than this.
pub const UNIQUE_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Edges,
    Spectral,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ExtremalValue {
    Edges(usize),
    Rho(f64),
}

impl ExtremalValue {
    pub fn as_f64(self) -> f64 {
        match self {
            ExtremalValue::Edges(e) => e as f64,
            ExtremalValue::Rho(r) => r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub graph6: String,
    pub edges: usize,
    pub rho: f64,
    /// Distance below the extremal spectral radius (0 for EX reports).
    pub gap: f64,
    pub connected: bool,
    pub min_degree: usize,
}

impl Witness {
    fn new(g: &Graph, rho: f64, gap: f64) -> Witness {
        let stats = g.basic_stats();
        Witness {
            graph6: graph6::encode(g),
            edges: stats.edges,
            rho,
            gap,
            connected: stats.connected,
            min_degree: stats.min_degree,
        }
    }

    pub fn graph(&self) -> Graph {
        graph6::decode(&self.graph6).expect("witnesses hold valid graph6")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub family: Vec<String>,
    pub mode: Mode,
    pub extremal_value: ExtremalValue,
    pub witnesses: Vec<Witness>,
    /// Best family-free class outside the witness set.
    pub runner_up: Option<Witness>,
    /// `extremal - runner_up` (spectral mode), `None` if every free class is a witness.
    pub gap: Option<f64>,
    /// One witness and, in spectral mode, a runner-up gap above `UNIQUE_GAP`.
    pub unique: bool,
    /// Several witnesses, or a runner-up within `UNIQUE_GAP`.
    pub tie: bool,
    pub classes_total: usize,
    /// Classes tested for family-freeness before the scan could stop.
    pub classes_checked: usize,
    /// Optional comparison target.
    pub predicted: Option<String>,
    pub agrees: Option<bool>,
}

impl SearchReport {
    pub fn witness_graphs(&self) -> Vec<Graph> {
        self.witnesses.iter().map(Witness::graph).collect()
    }

    /// Records whether the witness set is exactly the class of `predicted`.
    pub fn compare_with(&mut self, predicted: &Graph) {
        let canon = canonical_form(predicted);
        self.predicted = Some(graph6::encode(&canon));
        self.agrees = Some(self.witnesses.len() == 1 && self.witnesses[0].graph() == canon);
    }
}

fn family_strings(fam: &ForbiddenFamily) -> Vec<String> {
    fam.members().iter().map(graph6::encode).collect()
}

fn reverify(fam: &ForbiddenFamily, g: &Graph) -> Result<(), SearchError> {
    if !fam.is_free(g) {
        return Err(SearchError::Verification(format!("{} contains a forbidden member", graph6::encode(g))));
    }
    if canonical_form(g) != *g {
        return Err(SearchError::Verification(format!("{} is not canonical", graph6::encode(g))));
    }
    Ok(())
}

/// `ex(n, F)` with every extremal class. Classes are scanned from the highest
/// edge count down; the first edge level holding a free class is the answer.
pub fn ex_search(catalog: &Catalog, n: usize, fam: &ForbiddenFamily) -> Result<SearchReport, SearchError> {
    let graphs = catalog.graphs(n)?;
    let mut checked = 0;
    let mut hi = graphs.len();
    while hi > 0 {
        let e = graphs[hi - 1].edge_count();
        let lo = graphs[..hi].partition_point(|g| g.edge_count() < e);
        let level = &graphs[lo..hi];
        checked += level.len();
        let free: Vec<&Graph> = level.par_iter().filter(|g| fam.is_free(g)).collect();
        if !free.is_empty() {
            let mut witnesses = Vec::with_capacity(free.len());
            for g in free {
                reverify(fam, g)?;
                if g.edge_count() != e {
                    return Err(SearchError::Verification("witness edge count drifted".into()));
                }
                witnesses.push(Witness::new(g, spectral::rho(g)?, 0.0));
            }
            let unique = witnesses.len() == 1;
            return Ok(SearchReport {
                n,
                family: family_strings(fam),
                mode: Mode::Edges,
                extremal_value: ExtremalValue::Edges(e),
                witnesses,
                runner_up: None,
                gap: None,
                unique,
                tie: !unique,
                classes_total: graphs.len(),
                classes_checked: checked,
                predicted: None,
                agrees: None,
            });
        }
        hi = lo;
    }
    // the edgeless graph is free of every family with an edge in each member
    Err(SearchError::InvalidParameter("no family-free graph of this order: some member is edgeless and fits".into()))
}

/// `SPEX(n, F)`: free classes of maximum spectral radius. Classes are scanned
/// in decreasing radius; witnesses are those within `TIE_TOL` of the first
/// free class, and the runner-up is the next free class below that band.
pub fn spex_search(catalog: &Catalog, n: usize, fam: &ForbiddenFamily, tol: f64) -> Result<SearchReport, SearchError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SearchError::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let graphs = catalog.graphs(n)?;
    let radii = catalog.radii(n, tol)?;
    let mut order: Vec<usize> = (0..graphs.len()).collect();
    // ties in radius keep catalog order, so the scan is deterministic
    order.sort_by(|&a, &b| radii[b].total_cmp(&radii[a]).then(a.cmp(&b)));

    let mut best: Option<f64> = None;
    let mut witnesses: Vec<usize> = Vec::new();
    let mut runner_up: Option<usize> = None;
    let mut checked = 0;
    // test in parallel batches to keep the scan lazy without serialising containment checks
    const BATCH: usize = 256;
    'scan: for chunk in order.chunks(BATCH) {
        let free: Vec<bool> = chunk.par_iter().map(|&i| fam.is_free(&graphs[i])).collect();
        for (&i, is_free) in chunk.iter().zip(free) {
            checked += 1;
            if !is_free {
                continue;
            }
            match best {
                None => {
                    best = Some(radii[i]);
                    witnesses.push(i);
                }
                Some(b) if b - radii[i] <= TIE_TOL => witnesses.push(i),
                Some(_) => {
                    runner_up = Some(i);
                    break 'scan;
                }
            }
        }
    }
    let Some(best) = best else {
        return Err(SearchError::InvalidParameter("no family-free graph of this order".into()));
    };
    let mut ws = Vec::with_capacity(witnesses.len());
    for &i in &witnesses {
        let g = &graphs[i];
        reverify(fam, g)?;
        ws.push(Witness::new(g, radii[i], best - radii[i]));
    }
    let runner = runner_up.map(|i| Witness::new(&graphs[i], radii[i], best - radii[i]));
    let gap = runner.as_ref().map(|w| w.gap);
    let unique = ws.len() == 1 && gap.is_none_or(|g| g > UNIQUE_GAP);
    Ok(SearchReport {
        n,
        family: family_strings(fam),
        mode: Mode::Spectral,
        extremal_value: ExtremalValue::Rho(best),
        witnesses: ws,
        runner_up: runner,
        gap,
        unique,
        tie: !unique,
        classes_total: graphs.len(),
        classes_checked: checked,
        predicted: None,
        agrees: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    fn fam(g: Graph) -> ForbiddenFamily {
        ForbiddenFamily::single(g).unwrap()
    }

    #[test]
    fn mantel_instance() {
        let catalog = Catalog::new();
        let rep = ex_search(&catalog, 5, &fam(Graph::complete(3).unwrap())).unwrap();
        assert_eq!(rep.extremal_value, ExtremalValue::Edges(6));
        assert_eq!(rep.witnesses.len(), 1);
        assert!(are_isomorphic(&rep.witnesses[0].graph(), &Graph::turan(5, 2).unwrap()));
        assert!(rep.unique);
    }

    #[test]
    fn edge_free_family() {
        let catalog = Catalog::new();
        for n in 1..=5 {
            let rep = ex_search(&catalog, n, &fam(Graph::complete(2).unwrap())).unwrap();
            assert_eq!(rep.extremal_value, ExtremalValue::Edges(0));
            assert_eq!(rep.witness_graphs(), vec![Graph::empty(n).unwrap()]);
            let rep = spex_search(&catalog, n, &fam(Graph::complete(2).unwrap()), 1e-10).unwrap();
            assert_eq!(rep.extremal_value, ExtremalValue::Rho(0.0));
            assert_eq!(rep.witness_graphs(), vec![Graph::empty(n).unwrap()]);
        }
    }

    #[test]
    fn path_free_six() {
        let catalog = Catalog::new();
        let rep = ex_search(&catalog, 6, &fam(Graph::path(4).unwrap())).unwrap();
        assert_eq!(rep.extremal_value, ExtremalValue::Edges(6));
        let two_triangles = Graph::complete(3).unwrap().copies(2).unwrap();
        assert!(rep.witness_graphs().iter().any(|g| are_isomorphic(g, &two_triangles)));
        for g in rep.witness_graphs() {
            assert_eq!(g.edge_count(), 6);
        }
    }

    #[test]
    fn spex_examples() {
        let catalog = Catalog::new();
        let k3 = fam(Graph::complete(3).unwrap());
        let rep = spex_search(&catalog, 5, &k3, 1e-10).unwrap();
        assert!(are_isomorphic(&rep.witnesses[0].graph(), &Graph::complete_multipartite(&[2, 3]).unwrap()));
        assert!((rep.extremal_value.as_f64() - 6f64.sqrt()).abs() < 1e-9);
        assert!(rep.unique);
        let rep = spex_search(&catalog, 4, &k3, 1e-10).unwrap();
        assert!(are_isomorphic(&rep.witnesses[0].graph(), &Graph::cycle(4).unwrap()));
        assert!((rep.extremal_value.as_f64() - 2.0).abs() < 1e-9);
        assert!(matches!(spex_search(&catalog, 4, &k3, 0.0), Err(SearchError::InvalidParameter(_))));
    }

    #[test]
    fn spex_ties_are_flagged() {
        // P_3-free graphs on 4 vertices are matchings; 2K_2 and K_2 ∪ 2K_1 both have radius 1
        let catalog = Catalog::new();
        let rep = spex_search(&catalog, 4, &fam(Graph::path(3).unwrap()), 1e-10).unwrap();
        assert_eq!(rep.witnesses.len(), 2);
        assert!(rep.tie && !rep.unique);
        assert!((rep.extremal_value.as_f64() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spex_matches_full_scan() {
        let catalog = Catalog::new();
        let family = fam(Graph::join(&[Graph::complete(2).unwrap(), Graph::empty(2).unwrap()]).unwrap());
        for n in 4..=7 {
            let rep = spex_search(&catalog, n, &family, 1e-10).unwrap();
            let graphs = catalog.graphs(n).unwrap();
            let best =
                graphs.iter().filter(|g| family.is_free(g)).map(|g| spectral::rho(g).unwrap()).fold(f64::MIN, f64::max);
            assert!((rep.extremal_value.as_f64() - best).abs() < 1e-9);
        }
    }
}
