//! Extremal constructions and finite-instance harnesses for the spectral
//! Turán statements: the `K_{s-1} ∏ T(n-s+1, r)` prediction, the matching
//! family `(sK_2 ∪ K̄_{m-2s}) ∏ T(m(r-1), r-1)`, powers of cycles, the
//! `W ∪ S_1 ∪ ... ∪ S_r` structure, and the path bound.

use serde::Serialize;

use crate::canon::are_isomorphic;
use crate::enumerate::{Catalog, SearchError};
use crate::extremal::{ex_search, spex_search, SearchReport};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::spectral;
use crate::subgraph::{chromatic_number, find_embedding, independence_number, is_embedding, q_value, ForbiddenFamily};

fn invalid(msg: impl Into<String>) -> SearchError {
    SearchError::InvalidParameter(msg.into())
}

/// `K_{s-1} ∏ T(n-s+1, r)`; `s = 1` gives `T(n, r)`.
pub fn predicted_construction(s: usize, n: usize, r: usize) -> Result<Graph, SearchError> {
    if s < 1 || n < s || r < 2 {
        return Err(invalid(format!("need n >= s >= 1 and r >= 2, got s={s}, n={n}, r={r}")));
    }
    Ok(Graph::join(&[Graph::complete(s - 1)?, Graph::turan(n - s + 1, r)?])?)
}

/// Parameters of either harness. The cycle-power fields are present only
/// when the parameters come from `ckm_parameters`, in which case `s = b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremParams {
    pub s: usize,
    pub m: usize,
    pub r: usize,
    pub k: Option<usize>,
    pub p: Option<usize>,
    pub h: Option<usize>,
    pub b: Option<usize>,
}

impl TheoremParams {
    /// Validated `(s, m, r)` with `1 <= s <= m/2` and `r >= 2`.
    pub fn matching(s: usize, m: usize, r: usize) -> Result<TheoremParams, SearchError> {
        if s < 1 || 2 * s > m || r < 2 {
            return Err(invalid(format!("need 1 <= s <= m/2 and r >= 2, got s={s}, m={m}, r={r}")));
        }
        if m * r > crate::graph::MAX_ORDER {
            return Err(invalid(format!("the family member would have {} > 128 vertices", m * r)));
        }
        Ok(TheoremParams { s, m, r, k: None, p: None, h: None, b: None })
    }

    pub fn family(&self) -> Result<ForbiddenFamily, SearchError> {
        theorem16_family(self.s, self.m, self.r)
    }
}

/// `(sK_2 ∪ K̄_{m-2s}) ∏ T(m(r-1), r-1)` as a graph.
pub fn matching_member(s: usize, m: usize, r: usize) -> Result<Graph, SearchError> {
    TheoremParams::matching(s, m, r)?;
    let left = Graph::disjoint_union(&[Graph::complete(2)?.copies(s)?, Graph::empty(m - 2 * s)?])?;
    Ok(Graph::join(&[left, Graph::turan(m * (r - 1), r - 1)?])?)
}

/// The single-member family of `matching_member`, after checking `chi(F) = r + 1`
/// by an explicit `(r+1)`-colouring and an explicit `(r+1)`-clique.
pub fn theorem16_family(s: usize, m: usize, r: usize) -> Result<ForbiddenFamily, SearchError> {
    let f = matching_member(s, m, r)?;
    // left block: colours 0/1 (matching edges get both); right part j: colour j + 2
    let parts = Graph::turan_parts(m * (r - 1), r - 1)?;
    let mut colour = vec![0usize; f.order()];
    for i in 0..s {
        colour[2 * i + 1] = 1;
    }
    let mut v = m;
    for (j, &size) in parts.iter().enumerate() {
        for _ in 0..size {
            colour[v] = j + 2;
            v += 1;
        }
    }
    let proper = f.edges().all(|(a, b)| colour[a] != colour[b]);
    let mut clique = vec![0, 1];
    let mut start = m;
    for &size in &parts {
        clique.push(start);
        start += size;
    }
    let is_clique = clique.iter().enumerate().all(|(i, &a)| clique[i + 1..].iter().all(|&b| f.has_edge(a, b)));
    let fam = ForbiddenFamily::single(f)?;
    if !proper || !is_clique || fam.r() != r {
        return Err(SearchError::Verification(format!("chromatic number of the family member is not {}", r + 1)));
    }
    Ok(fam)
}

/// `C_m^k`.
pub fn cycle_power(m: usize, k: usize) -> Result<Graph, SearchError> {
    Ok(Graph::cycle(m)?.power(k)?)
}

/// `m = p(k+1) + h` with `p >= 2`, `1 <= h <= k`; `s = b = h - floor((h-1)/p) p`
/// and `r = k + ceil(h/p)`.
pub fn ckm_parameters(m: usize, k: usize) -> Result<TheoremParams, SearchError> {
    if k < 2 {
        return Err(invalid(format!("need k >= 2, got {k}")));
    }
    let p = m / (k + 1);
    let h = m % (k + 1);
    if h == 0 {
        return Err(invalid(format!("m = {m} is a multiple of k + 1 = {}", k + 1)));
    }
    if p < 2 {
        return Err(invalid(format!("need m >= 2(k+1) + 1, got m = {m}, k = {k}")));
    }
    let b = h - (h - 1) / p * p;
    let r = k + h.div_ceil(p);
    if m * r > crate::graph::MAX_ORDER {
        return Err(invalid(format!("the matching host would have {} > 128 vertices", m * r)));
    }
    debug_assert_eq!(m, p * r + b);
    Ok(TheoremParams { s: b, m, r, k: Some(k), p: Some(p), h: Some(h), b: Some(b) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, details: impl Into<String>) -> Check {
        Check { name: name.into(), pass, details: details.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem17Report {
    pub params: TheoremParams,
    pub independence_number: usize,
    /// Least chromatic number over all deletions of `b - 1` vertices.
    pub min_chi_after_deletion: usize,
    pub deletions_checked: usize,
    /// `map[v]` = host vertex of cycle-power vertex `v`, from the generic search.
    pub search_embedding: Option<Vec<usize>>,
    /// The same containment from the explicit independent-set layout.
    pub explicit_embedding: Option<Vec<usize>>,
    /// `(N, contained)` for each tested prediction host.
    pub prediction_hosts: Vec<(usize, bool)>,
    pub checks: Vec<Check>,
}

impl Theorem17Report {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Independent sets `S_1, ..., S_{r-1}` plus a block `X` inducing at most `b`
/// disjoint edges, covering `C_m^k`, following the residue-class layout of the
/// vertices along the cycle. Vertices are 0-based here.
fn explicit_layout(t: &TheoremParams) -> (Vec<Vec<usize>>, Vec<usize>) {
    let (m, r, p, b) = (t.m, t.r, t.p.unwrap(), t.b.unwrap());
    let mut sets: Vec<Vec<usize>> = Vec::new();
    if b < p {
        // S_i = {i, i+(r+1), ..., i+b(r+1)} then steps of r; W = {r+1+j(r+1)}
        for i in 1..=r {
            let mut s: Vec<usize> = (0..=b).map(|j| i + j * (r + 1)).collect();
            let base = i + b * (r + 1);
            s.extend((1..p - b).map(|j| base + j * r));
            sets.push(s.into_iter().map(|v| v - 1).collect());
        }
        let w: Vec<usize> = (0..b).map(|j| r + j * (r + 1)).collect();
        let mut x = sets.pop().unwrap();
        x.extend(w);
        debug_assert_eq!(sets.iter().map(Vec::len).sum::<usize>() + x.len(), m);
        (sets, x)
    } else {
        // S_i = {i + j(r+1) : j < p} for i <= r+1; S_r ∪ S_{r+1} is a matching
        for i in 1..=r + 1 {
            sets.push((0..p).map(|j| i + j * (r + 1) - 1).collect());
        }
        let last = sets.pop().unwrap();
        let mut x = sets.pop().unwrap();
        x.extend(last);
        (sets, x)
    }
}

/// Builds the embedding of `C_m^k` into the matching host from the layout, or
/// `None` if the layout does not have the claimed shape.
fn explicit_embedding(t: &TheoremParams, ckm: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let (m, r, b) = (t.m, t.r, t.b.unwrap());
    let (sets, x) = explicit_layout(t);
    let mut all: Vec<usize> = sets.iter().flatten().chain(&x).copied().collect();
    all.sort_unstable();
    if all != (0..m).collect::<Vec<_>>() {
        return None;
    }
    if sets.iter().any(|s| ckm.edges_within(VertexSet::from_slice(s)) > 0) {
        return None;
    }
    // X must induce disjoint edges only, at most b of them
    let xs = VertexSet::from_slice(&x);
    let x_edges: Vec<(usize, usize)> = ckm.edges().filter(|&(u, v)| xs.contains(u) && xs.contains(v)).collect();
    let touched: VertexSet = x_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    if x_edges.len() > b || touched.len() != 2 * x_edges.len() {
        return None;
    }
    // host layout: matching pairs (2i, 2i+1), i < b, then isolated m-2b
    // vertices, then r-1 parts of size m
    let mut map = vec![usize::MAX; m];
    for (i, &(u, v)) in x_edges.iter().enumerate() {
        map[u] = 2 * i;
        map[v] = 2 * i + 1;
    }
    let mut next = 2 * x_edges.len();
    for &v in &x {
        if map[v] == usize::MAX {
            map[v] = next;
            next += 1;
        }
    }
    for (j, s) in sets.iter().enumerate() {
        if j >= r - 1 {
            return None;
        }
        for (i, &v) in s.iter().enumerate() {
            map[v] = m + j * m + i;
        }
    }
    is_embedding(host, ckm, &map).then_some(map)
}

/// Exact finite checks behind the cycle-power reduction: independence number,
/// chromatic number after small deletions, containment in the matching host
/// (search and explicit layout), and non-containment in the predicted
/// extremal graph for `N = m, ..., m + 3`.
pub fn verify_theorem17_combinatorics(m: usize, k: usize) -> Result<Theorem17Report, SearchError> {
    let t = ckm_parameters(m, k)?;
    let (p, b, r) = (t.p.unwrap(), t.b.unwrap(), t.r);
    let ckm = cycle_power(m, k)?;
    let mut checks = Vec::new();

    let sigma = independence_number(&ckm);
    checks.push(Check::new("independence number", sigma == p, format!("alpha = {sigma}, floor(m/(k+1)) = {p}")));

    let deletions = combinations(m, b - 1);
    let min_chi = deletions
        .iter()
        .map(|u| chromatic_number(&ckm.remove_vertices(VertexSet::from_slice(u))))
        .min()
        .expect("at least the empty deletion");
    checks.push(Check::new(
        "chromatic number after deletions",
        min_chi > r,
        format!("min chi over {} deletions of {} vertices = {min_chi}, need >= {}", deletions.len(), b - 1, r + 1),
    ));

    let host = matching_member(b, m, r)?;
    let search = find_embedding(&host, &ckm);
    checks.push(Check::new(
        "containment in matching host (search)",
        search.as_ref().is_some_and(|map| is_embedding(&host, &ckm, map)),
        format!("host order {}", host.order()),
    ));
    let explicit = explicit_embedding(&t, &ckm, &host);
    checks.push(Check::new(
        "containment in matching host (explicit layout)",
        explicit.is_some(),
        "residue-class independent sets plus a matching block".to_string(),
    ));

    let mut hosts = Vec::new();
    for n in m..=m + 3 {
        let g = predicted_construction(b, n, r)?;
        hosts.push((n, find_embedding(&g, &ckm).is_some()));
    }
    checks.push(Check::new(
        "not contained in predicted extremal graph",
        hosts.iter().all(|&(_, c)| !c),
        format!("N = {}..={}", m, m + 3),
    ));

    Ok(Theorem17Report {
        params: t,
        independence_number: sigma,
        min_chi_after_deletion: min_chi,
        deletions_checked: deletions.len(),
        search_embedding: search,
        explicit_embedding: explicit,
        prediction_hosts: hosts,
        checks,
    })
}

/// `V = W ∪ S_1 ∪ ... ∪ S_r` with cores `S'_i = {v in S_i : N(v) = V - S_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructurePartition {
    pub w: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub cores: Vec<Vec<usize>>,
}

impl StructurePartition {
    /// `max_i |S_i - S'_i|`, over the parts indexed by `from..`.
    pub fn deficiency(&self, from: usize) -> usize {
        self.parts.iter().zip(&self.cores).skip(from).map(|(s, c)| s.len() - c.len()).max().unwrap_or(0)
    }

    pub fn min_core(&self, from: usize) -> usize {
        self.cores.iter().skip(from).map(Vec::len).min().unwrap_or(0)
    }

    /// Checks the partition and core invariants on `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::EMPTY;
        for block in std::iter::once(&self.w).chain(&self.parts) {
            let s = VertexSet::from_slice(block);
            if s.len() != block.len() || !s.is_disjoint(seen) {
                return false;
            }
            seen = seen.union(s);
        }
        if seen != g.vertices() {
            return false;
        }
        self.parts.iter().zip(&self.cores).all(|(s, c)| {
            let ps = VertexSet::from_slice(s);
            let cs = VertexSet::from_slice(c);
            cs.is_subset(ps) && cs == core_of(g, ps)
        })
    }
}

/// `{v in S : N(v) = V - S}`.
fn core_of(g: &Graph, s: VertexSet) -> VertexSet {
    let outside = g.vertices().difference(s);
    s.iter().filter(|&v| g.neighbors(v) == outside).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecomposeReport {
    pub q: usize,
    pub r: usize,
    pub m0: usize,
    /// Balanced shape with `|W| = q - 1` and every part within `m0` of its core.
    pub partition: Option<StructurePartition>,
    /// Weaker shape: no `W`, part sizes free, the first part exempt from the core bound.
    pub weak_partition: Option<StructurePartition>,
    /// Least `m0` for which the balanced shape exists.
    pub least_m0: Option<usize>,
}

/// Distinct sets `V - N(v)`, each the only possible part with nonempty core
/// containing `v`, in order of first vertex.
fn core_candidates(g: &Graph) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = Vec::new();
    for v in 0..g.order() {
        let c = g.vertices().difference(g.neighbors(v));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Chooses up to `slots` disjoint candidates (a part with nonempty core must be
/// one), fills the remaining slots arbitrarily and returns the best partition
/// under `accept`, maximising the smallest core. Ties keep the first found.
struct Shaper<'a> {
    cands: Vec<VertexSet>,
    sizes_ok: &'a dyn Fn(usize) -> bool,
}

impl Shaper<'_> {
    fn choose(
        &self,
        slots: usize,
        start: usize,
        used: VertexSet,
        chosen: &mut Vec<VertexSet>,
        out: &mut dyn FnMut(&[VertexSet]),
    ) {
        out(chosen);
        if chosen.len() == slots {
            return;
        }
        for i in start..self.cands.len() {
            let c = self.cands[i];
            if c.is_disjoint(used) && (self.sizes_ok)(c.len()) {
                chosen.push(c);
                self.choose(slots, i + 1, used.union(c), chosen, out);
                chosen.pop();
            }
        }
    }
}

fn balanced_shape(g: &Graph, r: usize, q: usize, m0: usize) -> Option<StructurePartition> {
    let n = g.order();
    if q == 0 || q - 1 > n {
        return None;
    }
    let rest = n - (q - 1);
    let (lo, hi) = (rest / r, rest.div_ceil(r));
    let sizes_ok = move |k: usize| k == lo || k == hi;
    let shaper = Shaper { cands: core_candidates(g), sizes_ok: &sizes_ok };
    let mut best: Option<StructurePartition> = None;
    let mut record = |chosen: &[VertexSet]| {
        let used = chosen.iter().fold(VertexSet::EMPTY, |a, &c| a.union(c));
        let left: Vec<usize> = g.vertices().difference(used).to_vec();
        let free = r - chosen.len();
        let big = rest % r;
        let big_chosen = chosen.iter().filter(|c| c.len() == hi && hi != lo).count();
        // how many of the arbitrary parts must take the larger size
        let big_needed = if hi == lo { 0 } else { big.checked_sub(big_chosen)? };
        if big_needed > free || (hi != lo && chosen.len() - big_chosen > r - big) {
            return Some(());
        }
        if left.len() != (q - 1) + big_needed * hi + (free - big_needed) * lo {
            return Some(());
        }
        let w = left[..q - 1].to_vec();
        let mut parts: Vec<VertexSet> = chosen.to_vec();
        let mut pos = q - 1;
        for i in 0..free {
            let size = if i < big_needed { hi } else { lo };
            parts.push(VertexSet::from_slice(&left[pos..pos + size]));
            pos += size;
        }
        let cores: Vec<VertexSet> = parts.iter().map(|&s| core_of(g, s)).collect();
        if parts.iter().zip(&cores).any(|(s, c)| s.len() - c.len() > m0) {
            return Some(());
        }
        let cand = StructurePartition {
            w,
            parts: parts.iter().map(|s| s.to_vec()).collect(),
            cores: cores.iter().map(|c| c.to_vec()).collect(),
        };
        if best.as_ref().is_none_or(|b| cand.min_core(0) > b.min_core(0)) {
            best = Some(cand);
        }
        Some(())
    };
    shaper.choose(r, 0, VertexSet::EMPTY, &mut Vec::new(), &mut |c| {
        record(c);
    });
    best
}

fn weak_shape(g: &Graph, r: usize, m0: usize) -> Option<StructurePartition> {
    let n = g.order();
    let sizes_ok = |k: usize| k >= 1;
    let shaper = Shaper { cands: core_candidates(g), sizes_ok: &sizes_ok };
    let mut best: Option<StructurePartition> = None;
    let mut record = |chosen: &[VertexSet]| {
        // parts 2..r are candidates; part 1 takes everything else and must be nonempty
        if chosen.len() != r - 1 {
            return;
        }
        let used = chosen.iter().fold(VertexSet::EMPTY, |a, &c| a.union(c));
        let first = g.vertices().difference(used);
        if first.is_empty() || n == 0 {
            return;
        }
        let parts: Vec<VertexSet> = std::iter::once(first).chain(chosen.iter().copied()).collect();
        let cores: Vec<VertexSet> = parts.iter().map(|&s| core_of(g, s)).collect();
        if parts.iter().zip(&cores).skip(1).any(|(s, c)| s.len() - c.len() > m0) {
            return;
        }
        let cand = StructurePartition {
            w: Vec::new(),
            parts: parts.iter().map(|s| s.to_vec()).collect(),
            cores: cores.iter().map(|c| c.to_vec()).collect(),
        };
        if best.as_ref().is_none_or(|b| cand.min_core(1) > b.min_core(1)) {
            best = Some(cand);
        }
    };
    shaper.choose(r - 1, 0, VertexSet::EMPTY, &mut Vec::new(), &mut record);
    best
}

/// Looks for the balanced `W ∪ S_1 ∪ ... ∪ S_r` shape with `|W| = q(F) - 1`
/// and `|S_i - S'_i| <= m0`, and separately for the weaker shape.
pub fn structure_decompose(g: &Graph, fam: &ForbiddenFamily, m0: usize) -> Result<DecomposeReport, SearchError> {
    let r = fam.r();
    if r < 2 {
        return Err(invalid(format!("structure needs r >= 2, family has r = {r}")));
    }
    let q = q_value(fam)?;
    Ok(decompose_with(g, r, q, m0))
}

/// As `structure_decompose` with `r` and `q` given directly.
pub fn decompose_with(g: &Graph, r: usize, q: usize, m0: usize) -> DecomposeReport {
    let partition = balanced_shape(g, r, q, m0);
    let weak_partition = weak_shape(g, r, m0);
    let least_m0 = (0..=g.order()).find(|&k| balanced_shape(g, r, q, k).is_some());
    DecomposeReport { q, r, m0, partition, weak_partition, least_m0 }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem16Row {
    pub n: usize,
    pub predicted: String,
    pub predicted_rho: f64,
    pub spex: SearchReport,
    pub agrees: bool,
    pub ex: SearchReport,
    pub ex_agrees: bool,
    /// Every SPEX witness is connected.
    pub connected: bool,
    /// `min degree / n` of the first SPEX witness (reported, not asserted).
    pub min_degree_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem16Report {
    pub params: TheoremParams,
    pub q: usize,
    pub rows: Vec<Theorem16Row>,
    /// Least `n` from which every tested order agrees.
    pub onset: Option<usize>,
    pub ex_onset: Option<usize>,
    /// Radius of the prediction strictly increases along the range.
    pub predicted_rho_increasing: bool,
    pub all_connected: bool,
}

fn onset(rows: &[Theorem16Row], agree: impl Fn(&Theorem16Row) -> bool) -> Option<usize> {
    let mut start = None;
    for row in rows {
        match (agree(row), start) {
            (true, None) => start = Some(row.n),
            (false, _) => start = None,
            _ => {}
        }
    }
    start
}

/// Compares SPEX and EX with the predicted construction for every `n` in range.
pub fn verify_theorem16(
    catalog: &Catalog,
    s: usize,
    m: usize,
    r: usize,
    ns: impl IntoIterator<Item = usize>,
) -> Result<Theorem16Report, SearchError> {
    let params = TheoremParams::matching(s, m, r)?;
    let fam = params.family()?;
    let q = q_value(&fam)?;
    let mut rows = Vec::new();
    for n in ns {
        catalog.check_budget(n)?;
        if n < s {
            return Err(invalid(format!("n = {n} is below s = {s}")));
        }
        let predicted = predicted_construction(s, n, r)?;
        let mut spex = spex_search(catalog, n, &fam, spectral::DEFAULT_TOL)?;
        spex.compare_with(&predicted);
        let mut ex = ex_search(catalog, n, &fam)?;
        ex.compare_with(&predicted);
        let first = &spex.witnesses[0];
        rows.push(Theorem16Row {
            n,
            predicted: graph6::encode(&predicted),
            predicted_rho: spectral::rho(&predicted)?,
            agrees: spex.agrees == Some(true),
            ex_agrees: ex.agrees == Some(true),
            connected: spex.witnesses.iter().all(|w| w.connected),
            min_degree_ratio: first.min_degree as f64 / n as f64,
            spex,
            ex,
        });
    }
    let predicted_rho_increasing = rows.windows(2).all(|w| w[1].predicted_rho > w[0].predicted_rho);
    let all_connected = rows.iter().all(|r| r.connected);
    Ok(Theorem16Report {
        params,
        q,
        onset: onset(&rows, |r| r.agrees),
        ex_onset: onset(&rows, |r| r.ex_agrees),
        predicted_rho_increasing,
        all_connected,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathBoundRow {
    pub n: usize,
    pub k: usize,
    pub ex: usize,
    /// `(k - 2) n`, twice the bound, so the comparison is `2 ex <= bound_doubled`.
    pub bound_doubled: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathBoundReport {
    pub rows: Vec<PathBoundRow>,
    pub holds: bool,
}

/// `ex(n, {P_k}) <= (k-2) n / 2` for `k <= n <= n_max`, compared in integers.
pub fn lemma27_check(catalog: &Catalog, n_max: usize, ks: &[usize]) -> Result<PathBoundReport, SearchError> {
    catalog.check_budget(n_max)?;
    let mut rows = Vec::new();
    for &k in ks {
        if k < 2 {
            return Err(invalid(format!("paths need k >= 2, got {k}")));
        }
        let fam = ForbiddenFamily::single(Graph::path(k)?)?;
        for n in k.max(1)..=n_max {
            let rep = ex_search(catalog, n, &fam)?;
            let ex = rep.witnesses[0].edges;
            let bound_doubled = (k - 2) * n;
            rows.push(PathBoundRow { n, k, ex, bound_doubled, holds: 2 * ex <= bound_doubled });
        }
    }
    let holds = rows.iter().all(|r| r.holds);
    Ok(PathBoundReport { rows, holds })
}

/// True when `a` and `b` are isomorphic; re-exported for report consumers.
pub fn same_class(a: &Graph, b: &Graph) -> bool {
    are_isomorphic(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicted_examples() {
        assert_eq!(predicted_construction(1, 8, 2).unwrap(), Graph::turan(8, 2).unwrap());
        let g = predicted_construction(2, 9, 3).unwrap();
        assert_eq!(g.degree(0), 8);
        assert_eq!(
            g.degrees()[1..],
            Graph::turan(8, 3).unwrap().degrees().iter().map(|d| d + 1).collect::<Vec<_>>()[..]
        );
        assert_eq!(predicted_construction(3, 10, 2).unwrap().edge_count(), 33);
        assert!(predicted_construction(0, 5, 2).is_err());
        assert!(predicted_construction(3, 2, 2).is_err());
        assert!(predicted_construction(1, 5, 1).is_err());
    }

    #[test]
    fn family_examples() {
        let f = theorem16_family(1, 2, 2).unwrap();
        let k4e = Graph::join(&[Graph::complete(2).unwrap(), Graph::empty(2).unwrap()]).unwrap();
        assert!(are_isomorphic(&f.members()[0], &k4e));
        assert_eq!(chromatic_number(&f.members()[0]), 3);
        let f = theorem16_family(1, 3, 2).unwrap();
        assert_eq!(f.members()[0].order(), 6);
        let f = theorem16_family(2, 4, 2).unwrap();
        assert_eq!(f.members()[0].order(), 8);
        assert_eq!(q_value(&f).unwrap(), 2);
        for (s, m, r) in [(1, 3, 3), (2, 5, 3), (3, 6, 2), (1, 2, 4)] {
            let f = theorem16_family(s, m, r).unwrap();
            assert_eq!(f.members()[0].order(), m * r);
            assert_eq!(chromatic_number(&f.members()[0]), r + 1);
        }
        assert!(theorem16_family(0, 4, 2).is_err());
        assert!(theorem16_family(3, 5, 2).is_err());
        assert!(theorem16_family(1, 4, 1).is_err());
    }

    #[test]
    fn ckm_examples() {
        let t = ckm_parameters(8, 2).unwrap();
        assert_eq!((t.p, t.h, t.s, t.r), (Some(2), Some(2), 2, 3));
        let t = ckm_parameters(7, 2).unwrap();
        assert_eq!((t.p, t.h, t.s, t.r), (Some(2), Some(1), 1, 3));
        let t = ckm_parameters(11, 3).unwrap();
        assert_eq!((t.p, t.h, t.s, t.r), (Some(2), Some(3), 1, 5));
        assert!(ckm_parameters(9, 2).is_err());
        assert!(ckm_parameters(5, 2).is_err());
        assert!(ckm_parameters(7, 1).is_err());
    }

    #[test]
    fn ckm_formula_matches_decomposition() {
        // h = a p + b with 1 <= b <= p, and m = p r + b
        for k in 2..=6 {
            for m in 2 * (k + 1) + 1..=40 {
                let Ok(t) = ckm_parameters(m, k) else { continue };
                let (p, h, b) = (t.p.unwrap(), t.h.unwrap(), t.b.unwrap());
                let a = (h - b) / p;
                assert_eq!(a * p + b, h);
                assert!((1..=p).contains(&b));
                assert_eq!(p * t.r + b, m);
            }
        }
    }

    #[test]
    fn explicit_layout_small() {
        for (m, k) in [(7, 2), (8, 2), (10, 2), (10, 3), (11, 3)] {
            let t = ckm_parameters(m, k).unwrap();
            let ckm = cycle_power(m, k).unwrap();
            let host = matching_member(t.b.unwrap(), m, t.r).unwrap();
            assert!(explicit_embedding(&t, &ckm, &host).is_some(), "(m, k) = ({m}, {k})");
        }
    }

    #[test]
    fn cycle_power_checks_m8_k2() {
        let rep = verify_theorem17_combinatorics(8, 2).unwrap();
        assert!(rep.passes(), "{:?}", rep.checks);
        assert_eq!(rep.independence_number, 2);
        assert_eq!(rep.deletions_checked, 8);
        assert!(rep.min_chi_after_deletion >= 4);
    }

    #[test]
    fn decompose_examples() {
        let g = predicted_construction(2, 9, 2).unwrap();
        let fam = theorem16_family(2, 4, 2).unwrap();
        let rep = structure_decompose(&g, &fam, 0).unwrap();
        let part = rep.partition.unwrap();
        assert_eq!(part.w, vec![0]);
        assert_eq!(part.parts, vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]]);
        assert_eq!(part.cores, part.parts);
        assert!(part.is_valid_for(&g));
        assert_eq!(rep.least_m0, Some(0));

        let t = Graph::turan(9, 3).unwrap();
        let k4 = ForbiddenFamily::single(Graph::complete(4).unwrap()).unwrap();
        let rep = structure_decompose(&t, &k4, 0).unwrap();
        assert_eq!(rep.q, 1);
        let part = rep.partition.unwrap();
        assert!(part.w.is_empty());
        assert_eq!(part.parts, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]);

        let c7 = Graph::cycle(7).unwrap();
        let k4e =
            ForbiddenFamily::single(Graph::join(&[Graph::complete(2).unwrap(), Graph::empty(2).unwrap()]).unwrap())
                .unwrap();
        let rep = structure_decompose(&c7, &k4e, 0).unwrap();
        assert_eq!(rep.partition, None);
        assert!(rep.least_m0.unwrap() > 0);

        // bipartite members give r = 1, outside the structural setting
        let p3 = ForbiddenFamily::single(Graph::path(3).unwrap()).unwrap();
        assert!(structure_decompose(&c7, &p3, 0).is_err());
    }

    #[test]
    fn decompose_with_defects() {
        // remove one edge across the parts of T(8,2): its endpoints leave the cores
        let g = Graph::turan(8, 2).unwrap().with_edges_removed(&[(0, 4)]).unwrap();
        let rep = decompose_with(&g, 2, 1, 1);
        let part = rep.partition.unwrap();
        assert!(part.is_valid_for(&g));
        assert_eq!(part.deficiency(0), 1);
        assert_eq!(rep.least_m0, Some(1));
        let weak = rep.weak_partition.unwrap();
        assert!(weak.is_valid_for(&g));
        assert!(weak.deficiency(1) <= 1);
    }

    #[test]
    fn path_bound_small() {
        let catalog = Catalog::new();
        let rep = lemma27_check(&catalog, 6, &[2, 4]).unwrap();
        assert!(rep.holds);
        let row = rep.rows.iter().find(|r| r.n == 6 && r.k == 4).unwrap();
        assert_eq!((row.ex, row.bound_doubled), (6, 12));
        assert!(rep.rows.iter().filter(|r| r.k == 2).all(|r| r.ex == 0));
    }

    #[test]
    fn matching_family_tiny_range() {
        let catalog = Catalog::new();
        let rep = verify_theorem16(&catalog, 1, 2, 2, 3..=5).unwrap();
        assert_eq!(rep.q, 1);
        // at n = 3 every graph is free, so K_3 wins; at n = 4 the paw beats C_4
        assert!(!rep.rows[0].agrees && !rep.rows[1].agrees);
        assert!(rep.predicted_rho_increasing);
        assert!(rep.all_connected);
    }
}
