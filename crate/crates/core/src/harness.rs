//! Seeded randomized harnesses for the spectral and combinatorial lemmas.
//! Each returns a [`PropertyReport`]; the same seed always yields the same
//! instances and the same report.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Graph, VertexSet};
use crate::spectral::{
    apply_swap, check_swap_preconditions, rotate_edges, spectral_radius, turan_rho_floor, SpectralError, SwapSpec,
    DEFAULT_TOL,
};
use crate::subgraph::{intersection_lower_bound, ForbiddenFamily};
use crate::symmetry::{are_symmetric_subgraphs, extend_by_symmetric_copy, SymmetricTuple};

/// Required strict increase of the spectral radius.
pub const STRICT_MARGIN: f64 = 1e-12;
/// Margins below this are recomputed at [`FINE_TOL`].
pub const NEAR_TIE: f64 = 1e-9;
pub const FINE_TOL: f64 = 1e-13;
/// Slack allowed below the lower bound on the Turán radius.
pub const FLOOR_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub seed: u64,
    /// Instances that met the hypotheses and were checked.
    pub trials: usize,
    pub passed: usize,
    /// Candidate instances drawn, including rejected ones.
    pub generated: usize,
    /// Instances recomputed at the fine tolerance.
    pub rechecked: usize,
    /// Smallest observed margin (strict inequalities) or slack (bounds).
    pub min_margin: Option<f64>,
    pub violations: Vec<String>,
}

impl PropertyReport {
    fn new(name: &str, seed: u64) -> PropertyReport {
        PropertyReport {
            name: name.to_string(),
            seed,
            trials: 0,
            passed: 0,
            generated: 0,
            rechecked: 0,
            min_margin: None,
            violations: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.passed == self.trials
    }

    fn record(&mut self, margin: f64, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        self.min_margin = Some(self.min_margin.map_or(margin, |m| m.min(margin)));
        if ok {
            self.passed += 1;
        } else {
            self.violations.push(describe());
        }
    }
}

/// Gives up after this many candidates per requested trial.
const ATTEMPTS_PER_TRIAL: usize = 2000;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("orders stay small")
}

fn random_connected(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Graph {
    loop {
        let n = rng.gen_range(lo..=hi);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, s: VertexSet) -> VertexSet {
    s.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

fn random_nonempty_subset(rng: &mut ChaCha8Rng, s: VertexSet) -> VertexSet {
    loop {
        let t = random_subset(rng, s);
        if !t.is_empty() {
            return t;
        }
    }
}

/// `rho(bigger) - rho(smaller)`, recomputed at the fine tolerance when close.
fn strict_margin(bigger: &Graph, smaller: &Graph, report: &mut PropertyReport) -> Result<f64, SpectralError> {
    let margin = spectral_radius(bigger, DEFAULT_TOL)?.rho - spectral_radius(smaller, DEFAULT_TOL)?.rho;
    if margin > NEAR_TIE {
        return Ok(margin);
    }
    report.rechecked += 1;
    Ok(spectral_radius(bigger, FINE_TOL)?.rho - spectral_radius(smaller, FINE_TOL)?.rho)
}

fn budget_exceeded(report: &PropertyReport, trials: usize) -> bool {
    report.generated > trials.max(1) * ATTEMPTS_PER_TRIAL
}

fn give_up(report: &mut PropertyReport, trials: usize) {
    report.violations.push(format!(
        "generator produced only {} qualifying instances of {trials} in {} attempts",
        report.trials, report.generated
    ));
}

/// Deleting at least one edge of a connected graph strictly lowers the radius.
pub fn lemma21_monotonicity(seed: u64, trials: usize) -> Result<PropertyReport, SpectralError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("subgraph monotonicity", seed);
    while report.trials < trials {
        report.generated += 1;
        let g = random_connected(&mut rng, 2, 10);
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut removed: Vec<(usize, usize)> = edges.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
        if removed.is_empty() {
            removed.push(*edges.choose(&mut rng).expect("connected graphs on >= 2 vertices have edges"));
        }
        let h = g.with_edges_removed(&removed)?;
        let margin = strict_margin(&g, &h, &mut report)?;
        report.record(margin, margin > STRICT_MARGIN, || format!("{g:?} minus {removed:?}: margin {margin:e}"));
    }
    Ok(report)
}

/// Edge rotations meeting the Perron-weight hypothesis strictly raise the radius.
pub fn lemma22_rotation(seed: u64, trials: usize) -> Result<PropertyReport, SpectralError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("edge rotation", seed);
    while report.trials < trials {
        if budget_exceeded(&report, trials) {
            give_up(&mut report, trials);
            break;
        }
        report.generated += 1;
        let g = random_connected(&mut rng, 3, 10);
        let u = rng.gen_range(0..g.order());
        let nbrs = g.neighbors(u);
        let others = g.vertices().difference(nbrs).difference(VertexSet::singleton(u));
        if nbrs.is_empty() || others.is_empty() {
            continue;
        }
        let dels = random_nonempty_subset(&mut rng, nbrs);
        let adds = random_nonempty_subset(&mut rng, others);
        let (g2, rot) = rotate_edges(&g, u, dels, adds, DEFAULT_TOL)?;
        if !rot.hypothesis_holds() {
            continue;
        }
        let margin = strict_margin(&g2, &g, &mut report)?;
        report.record(margin, margin > STRICT_MARGIN, || {
            format!("{g:?}: u={u} dels={dels:?} adds={adds:?} margin {margin:e}")
        });
    }
    Ok(report)
}

/// Builds a swap instance: `A`, `B` complete bipartite, `A` sees `U_1`, `B`
/// sees `U_2` inside a random graph on `U`, vertex labels shuffled.
fn swap_instance(rng: &mut ChaCha8Rng) -> (Graph, SwapSpec) {
    let na = rng.gen_range(2..=5);
    let nb = rng.gen_range(1..na.min(5));
    let nu = rng.gen_range(1..=5);
    let n = na + nb + nu;
    let u_set = VertexSet::full(nu);
    let (u1, u2) = loop {
        let u1 = random_subset(rng, u_set);
        let u2 = random_subset(rng, u_set);
        if u1 != u2 {
            break (u1, u2);
        }
    };
    let p = rng.gen_range(0.2..0.8);
    let mut edges: Vec<(usize, usize)> = random_graph(rng, nu, p).edges().collect();
    let a: Vec<usize> = (nu..nu + na).collect();
    let b: Vec<usize> = (nu + na..n).collect();
    for &x in &a {
        edges.extend(b.iter().map(|&y| (x, y)));
        edges.extend(u1.iter().map(|w| (w, x)));
    }
    for &y in &b {
        edges.extend(u2.iter().map(|w| (w, y)));
    }
    let g = Graph::from_edges(n, &edges).expect("small order");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let map = |s: VertexSet| -> VertexSet { s.iter().map(|v| perm[v]).collect() };
    let spec =
        SwapSpec { a: map(VertexSet::from_slice(&a)), b: map(VertexSet::from_slice(&b)), u1: map(u1), u2: map(u2) };
    (g.permute(&perm), spec)
}

/// Neighbourhood swaps meeting all hypotheses strictly raise the radius.
pub fn lemma23_swap(seed: u64, trials: usize) -> Result<PropertyReport, SpectralError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("neighbourhood swap", seed);
    while report.trials < trials {
        if budget_exceeded(&report, trials) {
            give_up(&mut report, trials);
            break;
        }
        report.generated += 1;
        let (g, spec) = swap_instance(&mut rng);
        if !g.is_connected() || !check_swap_preconditions(&g, &spec, DEFAULT_TOL)?.passes() {
            continue;
        }
        let g2 = apply_swap(&g, &spec);
        let margin = strict_margin(&g2, &g, &mut report)?;
        report.record(margin, margin > STRICT_MARGIN, || format!("{g:?} with {spec:?}: margin {margin:e}"));
    }
    Ok(report)
}

/// `|∩ A_i| >= Σ|A_i| - (ℓ-1)|∪ A_i|` on random families, `ℓ <= 6`, universe `<= 20`,
/// cross-checked against a bitmask computation.
pub fn lemma26_sets(seed: u64, trials: usize) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("set intersection bound", seed);
    for _ in 0..trials {
        report.generated += 1;
        let l = rng.gen_range(2..=6);
        let universe = rng.gen_range(1..=20);
        let density = rng.gen_range(0.3..1.0);
        let masks: Vec<u32> =
            (0..l).map(|_| (0..universe).filter(|_| rng.gen_bool(density)).fold(0u32, |m, x| m | 1 << x)).collect();
        let sets: Vec<BTreeSet<u32>> =
            masks.iter().map(|&m| (0..universe).filter(|x| m >> x & 1 == 1).collect()).collect();
        let inter = masks.iter().fold(u32::MAX, |a, &m| a & m).count_ones() as i64;
        let union = masks.iter().fold(0, |a, &m| a | m).count_ones() as i64;
        let total: i64 = masks.iter().map(|m| m.count_ones() as i64).sum();
        let oracle_bound = total - (l as i64 - 1) * union;
        let got = intersection_lower_bound(&sets).expect("l >= 2");
        let agree = got.bound == oracle_bound && got.actual as i64 == inter;
        report.record((inter - oracle_bound) as f64, agree && got.holds && inter >= oracle_bound, || {
            format!("{sets:?}: |∩| = {inter}, bound = {oracle_bound}, reported {got:?}")
        });
    }
    report
}

fn small_members() -> Vec<Graph> {
    let k = |n| Graph::complete(n).unwrap();
    vec![
        k(3),
        k(4),
        Graph::cycle(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::path(4).unwrap(),
        Graph::join(&[k(2), Graph::empty(2).unwrap()]).unwrap(),
        Graph::complete_multipartite(&[1, 3]).unwrap(),
        Graph::complete_multipartite(&[2, 3]).unwrap(),
    ]
}

/// A graph holding `tau` symmetric copies of a random connected block, all
/// attached identically to a random base graph.
fn observation_instance(rng: &mut ChaCha8Rng, tau: usize) -> (Graph, SymmetricTuple) {
    let base_n = rng.gen_range(1..=4);
    let q = rng.gen_range(1..=2);
    let block = random_connected(rng, q, q);
    let n = base_n + tau * q;
    let p = rng.gen_range(0.2..0.7);
    let mut edges: Vec<(usize, usize)> = random_graph(rng, base_n, p).edges().collect();
    // attachment of each block position to the base
    let attach: Vec<VertexSet> = (0..q).map(|_| random_subset(rng, VertexSet::full(base_n))).collect();
    let mut blocks = Vec::with_capacity(tau);
    for j in 0..tau {
        let start = base_n + j * q;
        blocks.push((start..start + q).collect::<Vec<_>>());
        edges.extend(block.edges().map(|(x, y)| (start + x, start + y)));
        for (i, s) in attach.iter().enumerate() {
            edges.extend(s.iter().map(|w| (w, start + i)));
        }
    }
    let g = Graph::from_edges(n, &edges).expect("small order");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let tuple = SymmetricTuple::new(blocks.iter().map(|b| b.iter().map(|&v| perm[v]).collect()).collect());
    (g.permute(&perm), tuple)
}

/// Adding one more symmetric copy to an `F`-free graph holding at least
/// `max |F|` symmetric copies keeps it `F`-free.
pub fn observation_extension(seed: u64, trials: usize) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport::new("symmetric extension", seed);
    let pool = small_members();
    while report.trials < trials {
        if budget_exceeded(&report, trials) {
            give_up(&mut report, trials);
            break;
        }
        report.generated += 1;
        let count = rng.gen_range(1..=2);
        let members: Vec<Graph> = (0..count).map(|_| pool.choose(&mut rng).unwrap().clone()).collect();
        let fam = ForbiddenFamily::new(members).expect("nonempty family");
        let tau = fam.t() + rng.gen_range(0..=1);
        let (g, tuple) = observation_instance(&mut rng, tau);
        if !fam.is_free(&g) {
            continue;
        }
        let verified = are_symmetric_subgraphs(&g, &tuple).unwrap_or(false);
        let Ok((g2, t2)) = extend_by_symmetric_copy(&g, &tuple) else {
            report.record(0.0, false, || format!("{g:?}: extension rejected a generated tuple"));
            continue;
        };
        let still_free = fam.is_free(&g2);
        let new_block = VertexSet::from_slice(t2.blocks.last().unwrap());
        let round_trip = g2.remove_vertices(new_block) == g;
        let extended_ok = are_symmetric_subgraphs(&g2, &t2).unwrap_or(false);
        report.record(1.0, verified && still_free && round_trip && extended_ok, || {
            format!(
                "{g:?} tuple {:?}: verified={verified} free_after={still_free} round_trip={round_trip} extended={extended_ok}",
                tuple.blocks
            )
        });
    }
    report
}

/// `rho(T(n, r)) >= (r-1)n/r - r/(4n)` for every `r` in `rs`, `r <= n <= n_max`.
pub fn lemma31_sweep(rs: std::ops::RangeInclusive<usize>, n_max: usize) -> Result<PropertyReport, SpectralError> {
    let mut report = PropertyReport::new("Turán radius lower bound", 0);
    for r in rs {
        for n in r..=n_max {
            report.generated += 1;
            let g = Graph::turan(n, r)?;
            let rho = spectral_radius(&g, DEFAULT_TOL)?.rho;
            let floor = turan_rho_floor(n, r)?;
            let slack = rho - floor;
            report.record(slack, slack >= -FLOOR_SLACK, || format!("T({n},{r}): rho {rho} < floor {floor}"));
        }
    }
    Ok(report)
}
