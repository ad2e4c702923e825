//! Spectral radius, Perron vectors and the two rewiring moves that raise the
//! spectral radius of a connected graph.
//!
//! The eigensolver is power iteration on `A + I` per connected component,
//! started from the all-ones vector. The shift removes the `-rho` eigenvalue
//! of bipartite components, which would otherwise make the iteration oscillate.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Slack used when a Perron-vector inequality is evaluated numerically.
pub const PERRON_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("spectral radius of the null graph is undefined")]
    NullGraph,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error(
        "power iteration did not reach residual {tol:e} within {iterations} iterations (last residual {residual:e})"
    )]
    NoConvergence { tol: f64, iterations: usize, residual: f64 },
    #[error("vector has length {found}, graph has order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rotation precondition violated: {0}")]
    Rotation(String),
    #[error("swap precondition violated: {0}")]
    Swap(SwapClause),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    /// Unit-norm, entrywise nonnegative, supported on one component attaining `rho`.
    pub perron: Vec<f64>,
    /// `max_v |(A x)_v - rho x_v|`.
    pub residual: f64,
    pub iterations: usize,
}

fn residual(rows: &[u128], x: &[f64], rho: f64) -> f64 {
    rows.iter()
        .enumerate()
        .map(|(v, &r)| {
            let ax: f64 = VertexSet(r).iter().map(|u| x[u]).sum();
            (ax - rho * x[v]).abs()
        })
        .fold(0.0, f64::max)
}

/// Power iteration restricted to one component. Returns (rho, vector on the
/// whole vertex range, residual, iterations).
fn component_radius(g: &Graph, comp: VertexSet, tol: f64) -> Result<(f64, Vec<f64>, f64, usize), SpectralError> {
    let n = g.order();
    let rows = g.rows();
    let members = comp.to_vec();
    let mut x = vec![0.0; n];
    if members.len() == 1 {
        x[members[0]] = 1.0;
        return Ok((0.0, x, 0.0, 0));
    }
    let norm0 = (members.len() as f64).sqrt();
    for &v in &members {
        x[v] = 1.0 / norm0;
    }
    let mut y = vec![0.0; n];
    let mut last_residual = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        // y = (A + I) x
        for &v in &members {
            y[v] = x[v] + VertexSet(rows[v]).iter().map(|u| x[u]).sum::<f64>();
        }
        let norm = members.iter().map(|&v| y[v] * y[v]).sum::<f64>().sqrt();
        for &v in &members {
            x[v] = y[v] / norm;
        }
        // Rayleigh quotient of the normalised iterate
        let mut rho = 0.0;
        for &v in &members {
            rho += x[v] * VertexSet(rows[v]).iter().map(|u| x[u]).sum::<f64>();
        }
        if it % 8 == 0 || it < 8 {
            last_residual = residual(rows, &x, rho);
            if last_residual <= tol {
                return Ok((rho, x, last_residual, it));
            }
        }
    }
    Err(SpectralError::NoConvergence { tol, iterations: MAX_ITERATIONS, residual: last_residual })
}

/// Largest adjacency eigenvalue with a Perron vector.
///
/// Disconnected graphs are handled per component: the result is the largest
/// component value, with the vector of the first component (by smallest
/// vertex) attaining it, zero elsewhere.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    if g.order() == 0 {
        return Err(SpectralError::NullGraph);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::BadTolerance(tol));
    }
    let mut best: Option<(f64, Vec<f64>, usize)> = None;
    let mut total_iterations = 0;
    for comp in g.components() {
        let (rho, x, _, it) = component_radius(g, comp, tol)?;
        total_iterations += it;
        if best.as_ref().is_none_or(|(b, _, _)| rho > *b) {
            best = Some((rho, x, it));
        }
    }
    let (rho, perron, _) = best.expect("nonempty graph has a component");
    // residual over the whole graph: the vector is zero outside its component
    let res = residual(g.rows(), &perron, rho);
    Ok(SpectralResult { rho, perron, residual: res, iterations: total_iterations })
}

/// `rho(G)` at the default tolerance.
pub fn rho(g: &Graph) -> Result<f64, SpectralError> {
    spectral_radius(g, DEFAULT_TOL).map(|r| r.rho)
}

/// Quadratic form `x^T A x = 2 * sum over edges uv of x_u x_v`.
pub fn rayleigh(g: &Graph, x: &[f64]) -> Result<f64, SpectralError> {
    if x.len() != g.order() {
        return Err(SpectralError::LengthMismatch { expected: g.order(), found: x.len() });
    }
    Ok(2.0 * g.edges().map(|(u, v)| x[u] * x[v]).sum::<f64>())
}

/// Lower bound `(r-1)n/r - r/(4n)` on the spectral radius of `T(n, r)`.
pub fn turan_rho_floor(n: usize, r: usize) -> Result<f64, SpectralError> {
    if r < 1 || r > n {
        return Err(SpectralError::Graph(GraphError::InvalidParameter(format!(
            "need n >= r >= 1, got n = {n}, r = {r}"
        ))));
    }
    let (n, r) = (n as f64, r as f64);
    Ok((r - 1.0) * n / r - r / (4.0 * n))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RotationReport {
    pub connected: bool,
    pub sets_differ: bool,
    /// Sum of Perron entries over the added neighbours.
    pub added_weight: f64,
    /// Sum of Perron entries over the removed neighbours.
    pub removed_weight: f64,
    /// `added_weight >= removed_weight` up to [`PERRON_SLACK`].
    pub weight_condition: bool,
}

impl RotationReport {
    /// When true the rotated graph has strictly larger spectral radius.
    pub fn hypothesis_holds(&self) -> bool {
        self.connected && self.sets_differ && self.weight_condition
    }
}

/// Removes the edges from `u` to `dels` and adds edges from `u` to `adds`,
/// reporting the Perron-weight hypothesis under which the spectral radius
/// must grow. The Perron vector is the one of `G`, at `tol`.
pub fn rotate_edges(
    g: &Graph,
    u: usize,
    dels: VertexSet,
    adds: VertexSet,
    tol: f64,
) -> Result<(Graph, RotationReport), SpectralError> {
    g.check_vertex(u)?;
    g.check_set(dels)?;
    g.check_set(adds)?;
    if dels == adds {
        return Err(SpectralError::Rotation("deleted and added neighbour sets are equal".into()));
    }
    if dels.is_empty() || adds.is_empty() {
        return Err(SpectralError::Rotation("need at least one deleted and one added edge".into()));
    }
    let nbrs = g.neighbors(u);
    if !dels.is_subset(nbrs) {
        return Err(SpectralError::Rotation(format!("{:?} are not neighbours of {u}", dels.difference(nbrs))));
    }
    if adds.contains(u) {
        return Err(SpectralError::Rotation(format!("cannot add the loop at {u}")));
    }
    if !adds.is_disjoint(nbrs) {
        return Err(SpectralError::Rotation(format!("{:?} are already neighbours of {u}", adds.intersection(nbrs))));
    }
    let spec = spectral_radius(g, tol)?;
    let added_weight: f64 = adds.iter().map(|v| spec.perron[v]).sum();
    let removed_weight: f64 = dels.iter().map(|v| spec.perron[v]).sum();
    let report = RotationReport {
        connected: g.is_connected(),
        sets_differ: true,
        added_weight,
        removed_weight,
        weight_condition: added_weight >= removed_weight - PERRON_SLACK,
    };
    let mut out = g.clone();
    for v in dels {
        out.clear_edge(u, v);
    }
    for v in adds {
        out.set_edge(u, v);
    }
    Ok((out, report))
}

/// Vertex sets for the neighbourhood swap: `A` and `B` form a complete
/// bipartite pair, every vertex of `A` sees exactly `U_1` outside, every
/// vertex of `B` sees exactly `U_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapSpec {
    pub a: VertexSet,
    pub b: VertexSet,
    pub u1: VertexSet,
    pub u2: VertexSet,
}

/// The hypothesis clause a swap instance fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SwapClause {
    /// `G` must be connected for the Perron vector to be positive.
    Connected,
    /// A, B disjoint and nonempty, U = V - (A u B) nonempty, U_1, U_2 inside U.
    Partition,
    /// `|A| > |B| > 0`.
    Sizes,
    /// (i): `G[A u B]` is complete bipartite with parts A and B.
    CompleteBipartite,
    /// (ii): `N_U(a) = U_1` for all a in A and `N_U(b) = U_2` for all b in B.
    Attachments,
    /// (iii): Perron weight of `U_1` strictly below that of `U_2`.
    Weights,
}

impl SwapClause {
    pub fn label(&self) -> &'static str {
        match self {
            SwapClause::Connected => "connected",
            SwapClause::Partition => "partition",
            SwapClause::Sizes => "|A|>|B|>0",
            SwapClause::CompleteBipartite => "(i)",
            SwapClause::Attachments => "(ii)",
            SwapClause::Weights => "(iii)",
        }
    }
}

impl std::fmt::Display for SwapClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwapCheck {
    /// Failing clauses in evaluation order; empty means the instance passes.
    pub failures: Vec<SwapClause>,
    pub u1_weight: f64,
    pub u2_weight: f64,
}

impl SwapCheck {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every hypothesis of the neighbourhood swap. Structural clauses
/// are exact; the weight clause uses the Perron vector of `G` at `tol` and
/// demands a margin of [`PERRON_SLACK`].
pub fn check_swap_preconditions(g: &Graph, spec: &SwapSpec, tol: f64) -> Result<SwapCheck, SpectralError> {
    for s in [spec.a, spec.b, spec.u1, spec.u2] {
        g.check_set(s)?;
    }
    let mut failures = Vec::new();
    if !g.is_connected() {
        failures.push(SwapClause::Connected);
    }
    let ab = spec.a.union(spec.b);
    let rest = g.vertices().difference(ab);
    if !spec.a.is_disjoint(spec.b)
        || spec.a.is_empty()
        || spec.b.is_empty()
        || rest.is_empty()
        || !spec.u1.is_subset(rest)
        || !spec.u2.is_subset(rest)
    {
        failures.push(SwapClause::Partition);
    }
    if !(spec.a.len() > spec.b.len() && !spec.b.is_empty()) {
        failures.push(SwapClause::Sizes);
    }
    let bipartite = spec.a.iter().all(|a| g.neighbors(a).intersection(ab) == spec.b.difference(spec.a))
        && spec.b.iter().all(|b| g.neighbors(b).intersection(ab) == spec.a.difference(spec.b));
    if !bipartite {
        failures.push(SwapClause::CompleteBipartite);
    }
    let attached = spec.a.iter().all(|a| g.neighbors(a).intersection(rest) == spec.u1)
        && spec.b.iter().all(|b| g.neighbors(b).intersection(rest) == spec.u2);
    if !attached {
        failures.push(SwapClause::Attachments);
    }
    let perron = spectral_radius(g, tol)?.perron;
    let u1_weight: f64 = spec.u1.iter().map(|v| perron[v]).sum();
    let u2_weight: f64 = spec.u2.iter().map(|v| perron[v]).sum();
    if u1_weight + PERRON_SLACK >= u2_weight {
        failures.push(SwapClause::Weights);
    }
    Ok(SwapCheck { failures, u1_weight, u2_weight })
}

/// Moves `A`'s outside attachment from `U_1` to `U_2` and `B`'s from `U_2` to `U_1`.
/// Rejects instances that fail any clause of [`check_swap_preconditions`].
pub fn neighborhood_swap(g: &Graph, spec: &SwapSpec, tol: f64) -> Result<Graph, SpectralError> {
    let check = check_swap_preconditions(g, spec, tol)?;
    if let Some(clause) = check.failures.first() {
        return Err(SpectralError::Swap(clause.clone()));
    }
    Ok(apply_swap(g, spec))
}

/// The rewiring itself, without any hypothesis check.
pub fn apply_swap(g: &Graph, spec: &SwapSpec) -> Graph {
    let mut out = g.clone();
    for a in spec.a {
        for u in spec.u1 {
            out.clear_edge(a, u);
        }
    }
    for b in spec.b {
        for u in spec.u2 {
            out.clear_edge(b, u);
        }
    }
    for a in spec.a {
        for u in spec.u2 {
            out.set_edge(a, u);
        }
    }
    for b in spec.b {
        for u in spec.u1 {
            out.set_edge(b, u);
        }
    }
    out
}
