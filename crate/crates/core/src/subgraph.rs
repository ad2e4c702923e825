//! Subgraph containment, forbidden families and the exact colouring,
//! independence and matching numbers they depend on.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::canon::lower_twins;
use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("a forbidden family needs at least one member")]
    Empty,
    #[error("member {0} has no vertices")]
    NullMember(usize),
    #[error("q(F) is only defined for r >= 1, family has r = {0}")]
    RankTooSmall(usize),
    #[error("no member embeds into the join of an independent set of size <= t with T(tr, r)")]
    QNotFound,
    #[error("need at least two sets, got {0}")]
    TooFewSets(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// containment

/// Twin classes of `g` numbered by their smallest vertex: `class[v]` is the
/// index of the class of `v` in increasing order of class minimum.
fn twin_class_ids(g: &Graph, lower: &[u128]) -> Vec<usize> {
    let mut ids = vec![0usize; g.order()];
    let mut next = 0;
    for v in 0..g.order() {
        if lower[v] == 0 {
            ids[v] = next;
            next += 1;
        } else {
            ids[v] = ids[lower[v].trailing_zeros() as usize];
        }
    }
    ids
}

struct Matcher<'a> {
    host: &'a Graph,
    /// Pattern vertices in search order.
    order: Vec<usize>,
    /// For each search position, earlier positions adjacent to it.
    back: Vec<Vec<usize>>,
    /// Host vertices whose degree is large enough for each search position.
    admissible: Vec<u128>,
    /// Host twins with a smaller index.
    host_lower: Vec<u128>,
    host_class: Vec<usize>,
    /// Earlier search position holding the previous pattern twin, if any.
    twin_prev: Vec<Option<usize>>,
    image: Vec<usize>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize, used: u128) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let rows = self.host.rows();
        let mut cand = self.admissible[depth] & !used;
        for &p in &self.back[depth] {
            cand &= rows[self.image[p]];
        }
        let min_class = self.twin_prev[depth].map(|p| self.host_class[self.image[p]]);
        for h in VertexSet(cand) {
            // an unused smaller twin gives an equivalent subtree
            if self.host_lower[h] & !used != 0 {
                continue;
            }
            if min_class.is_some_and(|c| self.host_class[h] < c) {
                continue;
            }
            self.image[depth] = h;
            if self.extend(depth + 1, used | 1u128 << h) {
                return true;
            }
        }
        false
    }
}

fn degree_sequence_fits(host: &Graph, pattern: &Graph) -> bool {
    let mut hd = host.degrees();
    let mut pd = pattern.degrees();
    hd.sort_unstable_by(|a, b| b.cmp(a));
    pd.sort_unstable_by(|a, b| b.cmp(a));
    pd.iter().zip(&hd).all(|(p, h)| p <= h)
}

/// Pattern vertices ordered to keep the explored prefix connected: start at a
/// maximum-degree vertex, then repeatedly take the vertex with most already
/// placed neighbours (ties: higher degree, then lower index).
fn search_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.order();
    let mut placed = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed.contains(v))
            .max_by(|&a, &b| {
                let ka = (pattern.neighbors(a).intersection(placed).len(), pattern.degree(a));
                let kb = (pattern.neighbors(b).intersection(placed).len(), pattern.degree(b));
                ka.cmp(&kb).then(b.cmp(&a))
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    order
}

/// Finds an injective adjacency-preserving map from `pattern` into `host`
/// (non-induced containment). Returns `map[p]` = host image of pattern vertex `p`.
///
/// Backtracking in a connectivity-first order with degree and neighbourhood
/// mask pruning. Twins on either side are interchangeable by automorphisms,
/// so only the smallest unused host twin is tried, and the images of pattern
/// twins are kept in nondecreasing host-twin-class order.
pub fn find_embedding(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let (hn, pn) = (host.order(), pattern.order());
    if pn > hn || pattern.edge_count() > host.edge_count() || !degree_sequence_fits(host, pattern) {
        return None;
    }
    if pn == 0 {
        return Some(Vec::new());
    }
    let order = search_order(pattern);
    let mut position = vec![0usize; pn];
    for (i, &p) in order.iter().enumerate() {
        position[p] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &p)| pattern.neighbors(p).iter().map(|q| position[q]).filter(|&j| j < i).collect())
        .collect();
    let host_degrees = host.degrees();
    let admissible = order
        .iter()
        .map(|&p| {
            let d = pattern.degree(p);
            (0..hn).filter(|&h| host_degrees[h] >= d).fold(0u128, |acc, h| acc | 1u128 << h)
        })
        .collect();
    let host_lower = lower_twins(host);
    let host_class = twin_class_ids(host, &host_lower);
    let pattern_lower = lower_twins(pattern);
    let pattern_class = twin_class_ids(pattern, &pattern_lower);
    let twin_prev =
        (0..pn).map(|i| (0..i).rev().find(|&j| pattern_class[order[j]] == pattern_class[order[i]])).collect();
    let mut m =
        Matcher { host, order, back, admissible, host_lower, host_class, twin_prev, image: vec![usize::MAX; pn] };
    if !m.extend(0, 0) {
        return None;
    }
    let mut map = vec![0usize; pn];
    for (i, &p) in m.order.iter().enumerate() {
        map[p] = m.image[i];
    }
    Some(map)
}

pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    find_embedding(host, pattern).is_some()
}

/// Checks that `map` is an injective adjacency-preserving map.
pub fn is_embedding(host: &Graph, pattern: &Graph, map: &[usize]) -> bool {
    map.len() == pattern.order()
        && map.iter().all(|&h| h < host.order())
        && map.iter().collect::<BTreeSet<_>>().len() == map.len()
        && pattern.edges().all(|(u, v)| host.has_edge(map[u], map[v]))
}

// ---------------------------------------------------------------------------
// cliques, independence, colouring, matching

fn greedy_color_bound(rows: &[u128], cand: u128) -> u32 {
    // number of colour classes in a greedy colouring of `cand`
    let mut left = cand;
    let mut colors = 0;
    while left != 0 {
        colors += 1;
        let mut avail = left;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1u128 << v) & !rows[v];
            left &= !(1u128 << v);
        }
    }
    colors
}

fn max_clique_rec(rows: &[u128], cand: u128, size: u32, best: &mut u32, best_set: &mut u128, cur: u128) {
    if cand == 0 {
        if size > *best {
            *best = size;
            *best_set = cur;
        }
        return;
    }
    if size + greedy_color_bound(rows, cand) <= *best {
        return;
    }
    let mut cand = cand;
    while cand != 0 {
        if size + cand.count_ones() <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        max_clique_rec(rows, cand & rows[v], size + 1, best, best_set, cur | 1u128 << v);
        cand &= !(1u128 << v);
    }
}

/// A maximum clique (smallest-index-first tie-break by search order).
pub fn max_clique(g: &Graph) -> VertexSet {
    let mut best = 0;
    let mut best_set = 0u128;
    max_clique_rec(g.rows(), g.vertices().0, 0, &mut best, &mut best_set, 0);
    VertexSet(best_set)
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

/// Size of a maximum independent set, as a maximum clique of the complement.
pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

pub fn max_independent_set(g: &Graph) -> VertexSet {
    max_clique(&g.complement())
}

struct Colorer<'a> {
    rows: &'a [u128],
    n: usize,
    color: Vec<usize>,
    /// `class_mask[c]` = vertices holding colour c.
    class_mask: Vec<u128>,
    best: usize,
    lower: usize,
}

impl Colorer<'_> {
    fn saturation(&self, v: usize, used: usize) -> usize {
        (0..used).filter(|&c| self.class_mask[c] & self.rows[v] != 0).count()
    }

    fn solve(&mut self, colored: usize, used: usize) {
        if used >= self.best {
            return;
        }
        if colored == self.n {
            self.best = used;
            return;
        }
        // DSATUR choice: max saturation, then max uncoloured degree, then smallest index
        let uncolored: u128 = (0..self.n).filter(|&v| self.color[v] == usize::MAX).fold(0, |a, v| a | 1u128 << v);
        let mut pick = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in VertexSet(uncolored) {
            let k = (self.saturation(v, used), (self.rows[v] & uncolored).count_ones() as usize);
            if pick == usize::MAX || k > key {
                pick = v;
                key = k;
            }
        }
        let v = pick;
        for c in 0..=used {
            if c >= self.best - 1 && c == used {
                // opening a new colour cannot beat the incumbent
                break;
            }
            if c < used && self.class_mask[c] & self.rows[v] != 0 {
                continue;
            }
            self.color[v] = c;
            self.class_mask[c] |= 1u128 << v;
            self.solve(colored + 1, used.max(c + 1));
            self.class_mask[c] &= !(1u128 << v);
            self.color[v] = usize::MAX;
            if self.best == self.lower {
                return;
            }
        }
    }
}

/// Exact chromatic number by DSATUR branch and bound, seeded with a greedy
/// upper bound and the clique number as lower bound. `chi` of the null graph is 0.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = clique_number(g);
    let upper = greedy_color_bound(g.rows(), g.vertices().0) as usize;
    if lower == upper {
        return lower;
    }
    let mut c =
        Colorer { rows: g.rows(), n, color: vec![usize::MAX; n], class_mask: vec![0; n + 1], best: upper, lower };
    c.solve(0, 0);
    c.best
}

/// Maximum matching size by Edmonds' blossom algorithm.
pub fn matching_number(g: &Graph) -> usize {
    let n = g.order();
    let mut mate = vec![usize::MAX; n];
    let mut count = 0;
    for root in 0..n {
        if mate[root] == usize::MAX && augment_from(g, root, &mut mate) {
            count += 1;
        }
    }
    count
}

fn augment_from(g: &Graph, root: usize, mate: &mut [usize]) -> bool {
    const NONE: usize = usize::MAX;
    let n = g.order();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut in_queue = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    in_queue[root] = true;
    queue.push_back(root);

    let lca = |base: &[usize], parent: &[usize], mate: &[usize], mut a: usize, mut b: usize| -> usize {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    while let Some(v) = queue.pop_front() {
        for to in g.neighbors(v) {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // blossom
                let cur = lca(&base, &parent, mate, v, to);
                let mut in_blossom = vec![false; n];
                for (start, child) in [(v, to), (to, v)] {
                    let mut x = start;
                    let mut c = child;
                    while base[x] != cur {
                        in_blossom[base[x]] = true;
                        in_blossom[base[mate[x]]] = true;
                        parent[x] = c;
                        c = mate[x];
                        x = parent[mate[x]];
                    }
                }
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur;
                        if !in_queue[i] {
                            in_queue[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    // augment along the alternating path ending at `to`
                    let mut u = to;
                    while u != NONE {
                        let pv = parent[u];
                        let ppv = mate[pv];
                        mate[u] = pv;
                        mate[pv] = u;
                        u = ppv;
                    }
                    return true;
                }
                let m = mate[to];
                in_queue[m] = true;
                queue.push_back(m);
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// forbidden families

/// A finite family of forbidden graphs with its derived parameters:
/// `r + 1` is the least member chromatic number, `t` the largest member order.
#[derive(Clone, Debug)]
pub struct ForbiddenFamily {
    members: Vec<Graph>,
    check_order: Vec<usize>,
    r: usize,
    t: usize,
}

impl ForbiddenFamily {
    pub fn new(members: Vec<Graph>) -> Result<ForbiddenFamily, FamilyError> {
        if members.is_empty() {
            return Err(FamilyError::Empty);
        }
        if let Some(i) = members.iter().position(|m| m.order() == 0) {
            return Err(FamilyError::NullMember(i));
        }
        let r = members.iter().map(chromatic_number).min().unwrap() - 1;
        let t = members.iter().map(Graph::order).max().unwrap();
        let mut check_order: Vec<usize> = (0..members.len()).collect();
        check_order.sort_by_key(|&i| (members[i].order(), members[i].edge_count(), i));
        Ok(ForbiddenFamily { members, check_order, r, t })
    }

    pub fn single(member: Graph) -> Result<ForbiddenFamily, FamilyError> {
        ForbiddenFamily::new(vec![member])
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    /// `min chi(F) - 1`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// `max |F|`.
    pub fn t(&self) -> usize {
        self.t
    }

    /// The structural theorems need `r >= 2`; smaller families are still usable.
    pub fn meets_rank_hypothesis(&self) -> bool {
        self.r >= 2
    }

    /// First member (cheapest first) contained in `g`, if any.
    pub fn first_contained(&self, g: &Graph) -> Option<usize> {
        self.check_order.iter().copied().find(|&i| contains_subgraph(g, &self.members[i]))
    }

    pub fn is_free(&self, g: &Graph) -> bool {
        self.first_contained(g).is_none()
    }

    pub fn with_member(&self, extra: Graph) -> Result<ForbiddenFamily, FamilyError> {
        let mut members = self.members.clone();
        members.push(extra);
        ForbiddenFamily::new(members)
    }
}

pub fn is_family_free(g: &Graph, fam: &ForbiddenFamily) -> bool {
    fam.is_free(g)
}

/// `(r, t)` of a family.
pub fn family_params(fam: &ForbiddenFamily) -> (usize, usize) {
    (fam.r(), fam.t())
}

/// Host `K̄_s ∏ T(tr, r)` used by the definition of q; `s = 0` gives `T(tr, r)`.
pub fn q_host(s: usize, t: usize, r: usize) -> Result<Graph, GraphError> {
    Graph::join(&[Graph::empty(s)?, Graph::turan(t * r, r)?])
}

/// Least `s >= 0` such that some member embeds in `K̄_s ∏ T(tr, r)`.
pub fn q_value(fam: &ForbiddenFamily) -> Result<usize, FamilyError> {
    let (r, t) = family_params(fam);
    if r < 1 {
        return Err(FamilyError::RankTooSmall(r));
    }
    for s in 0..=t {
        let host = q_host(s, t, r)?;
        if fam.members.iter().any(|f| contains_subgraph(&host, f)) {
            return Ok(s);
        }
    }
    Err(FamilyError::QNotFound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionBound {
    /// `sum |A_i| - (l - 1) |union A_i|`, possibly negative.
    pub bound: i64,
    /// `|intersection A_i|`.
    pub actual: usize,
    pub holds: bool,
}

/// Compares `|∩ A_i|` with `Σ|A_i| − (ℓ−1)|∪ A_i|` in exact integer arithmetic.
pub fn intersection_lower_bound<T: Ord + Clone>(sets: &[BTreeSet<T>]) -> Result<IntersectionBound, FamilyError> {
    if sets.len() < 2 {
        return Err(FamilyError::TooFewSets(sets.len()));
    }
    let total: i64 = sets.iter().map(|s| s.len() as i64).sum();
    let union: BTreeSet<&T> = sets.iter().flatten().collect();
    let actual = sets[0].iter().filter(|x| sets[1..].iter().all(|s| s.contains(*x))).count();
    let bound = total - (sets.len() as i64 - 1) * union.len() as i64;
    Ok(IntersectionBound { bound, actual, holds: actual as i64 >= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn k4e() -> Graph {
        Graph::join(&[k(2), Graph::empty(2).unwrap()]).unwrap()
    }

    fn c8sq() -> Graph {
        Graph::cycle(8).unwrap().power(2).unwrap()
    }

    /// All injections, no pruning.
    fn naive_contains(host: &Graph, pattern: &Graph) -> bool {
        fn rec(host: &Graph, pattern: &Graph, map: &mut Vec<usize>) -> bool {
            let i = map.len();
            if i == pattern.order() {
                return true;
            }
            for h in 0..host.order() {
                if map.contains(&h) {
                    continue;
                }
                if (0..i).all(|j| !pattern.has_edge(i, j) || host.has_edge(h, map[j])) {
                    map.push(h);
                    if rec(host, pattern, map) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        rec(host, pattern, &mut Vec::new())
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    #[test]
    fn containment_examples() {
        let k22 = Graph::complete_multipartite(&[2, 2]).unwrap();
        assert!(contains_subgraph(&k22, &Graph::cycle(4).unwrap()));
        assert!(!contains_subgraph(&Graph::turan(8, 2).unwrap(), &k(3)));
        let sq = c8sq();
        let map = find_embedding(&sq, &k(3)).unwrap();
        assert!(is_embedding(&sq, &k(3), &map));
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn agrees_with_naive_oracle() {
        // all patterns up to 4 vertices against random hosts up to 7 vertices
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut patterns = Vec::new();
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0..1u32 << pairs.len() {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                patterns.push(Graph::from_edges(n, &edges).unwrap());
            }
        }
        for _ in 0..60 {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.2..0.9);
            let host = random_graph(&mut rng, n, p);
            for p in &patterns {
                assert_eq!(contains_subgraph(&host, p), naive_contains(&host, p), "host {host:?} pattern {p:?}");
            }
        }
    }

    #[test]
    fn twin_heavy_hosts() {
        // F = 2K_2 ∏ K̄_4 needs the two matching edges inside one side
        let f = Graph::join(&[k(2).copies(2).unwrap(), Graph::empty(4).unwrap()]).unwrap();
        assert!(!contains_subgraph(&Graph::turan(16, 2).unwrap(), &f));
        assert!(!contains_subgraph(&q_host(1, 8, 2).unwrap(), &f));
        assert!(contains_subgraph(&q_host(2, 8, 2).unwrap(), &f));
    }

    #[test]
    fn family_freeness() {
        for r in 1..=4 {
            let fam = ForbiddenFamily::single(k(r + 1)).unwrap();
            for n in 0..=12 {
                assert!(fam.is_free(&Graph::turan(n, r).unwrap()), "T({n},{r})");
            }
        }
        let k1 = ForbiddenFamily::single(k(1)).unwrap();
        assert!(!is_family_free(&Graph::empty(3).unwrap(), &k1));
        let fam = ForbiddenFamily::single(k4e()).unwrap();
        assert!(!is_family_free(&k(4), &fam));
        assert!(matches!(ForbiddenFamily::new(vec![]), Err(FamilyError::Empty)));
        assert!(matches!(ForbiddenFamily::single(Graph::empty(0).unwrap()), Err(FamilyError::NullMember(0))));
    }

    #[test]
    fn chromatic_examples() {
        for r in 1..=5 {
            for n in r..=10 {
                assert_eq!(chromatic_number(&Graph::turan(n, r).unwrap()), r);
            }
        }
        assert_eq!(chromatic_number(&k4e()), 3);
        assert_eq!(chromatic_number(&c8sq()), 4);
        assert_eq!(chromatic_number(&Graph::empty(0).unwrap()), 0);
        assert_eq!(chromatic_number(&Graph::empty(4).unwrap()), 1);
        assert_eq!(chromatic_number(&Graph::cycle(7).unwrap()), 3);
        // Grötzsch-free check: C_7^2 needs 4 colours
        assert_eq!(chromatic_number(&Graph::cycle(7).unwrap().power(2).unwrap()), 4);
    }

    /// Exhaustive colouring oracle for tiny graphs.
    fn naive_chromatic(g: &Graph) -> usize {
        let n = g.order();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            let mut colors = vec![0usize; n];
            loop {
                if g.edges().all(|(u, v)| colors[u] != colors[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n {
                    colors[i] += 1;
                    if colors[i] < k {
                        break;
                    }
                    colors[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        n
    }

    #[test]
    fn chromatic_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.gen_range(1..=8);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let chi = chromatic_number(&g);
            assert_eq!(chi, naive_chromatic(&g), "{g:?}");
            assert!(chi >= clique_number(&g));
            assert!(chi <= g.basic_stats().max_degree + 1);
            let m = rng.gen_range(1..=4);
            let h = random_graph(&mut rng, m, 0.5);
            let j = Graph::join(&[g.clone(), h.clone()]).unwrap();
            assert_eq!(chromatic_number(&j), chi + chromatic_number(&h));
        }
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&c8sq()), 2);
        assert_eq!(independence_number(&Graph::empty(7).unwrap()), 7);
        assert_eq!(independence_number(&Graph::cycle(10).unwrap().power(2).unwrap()), 3);
        assert_eq!(independence_number(&Graph::empty(0).unwrap()), 0);
    }

    #[test]
    fn independence_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let brute = (0u32..1 << n)
                .filter(|&m| g.edges_within(VertexSet(m as u128)) == 0)
                .map(|m| m.count_ones() as usize)
                .max()
                .unwrap();
            assert_eq!(independence_number(&g), brute);
            assert_eq!(g.edges_within(max_independent_set(&g)), 0);
        }
    }

    #[test]
    fn matching_examples() {
        assert_eq!(matching_number(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(matching_number(&Graph::empty(6).unwrap()), 0);
        assert_eq!(matching_number(&k(2).copies(3).unwrap()), 3);
        for n in 0..=12 {
            assert_eq!(matching_number(&k(n)), n / 2);
        }
    }

    /// Matching number by exhaustive recursion over the lowest unmatched vertex.
    fn naive_matching(g: &Graph, left: u128) -> usize {
        let Some(v) = VertexSet(left).first() else { return 0 };
        let rest = left & !(1u128 << v);
        let mut best = naive_matching(g, rest);
        for u in VertexSet(g.rows()[v] & rest) {
            best = best.max(1 + naive_matching(g, rest & !(1u128 << u)));
        }
        best
    }

    #[test]
    fn matching_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let n = rng.gen_range(1..=11);
            let p = rng.gen_range(0.1..0.7);
            let g = random_graph(&mut rng, n, p);
            let nu = matching_number(&g);
            assert_eq!(nu, naive_matching(&g, g.vertices().0), "{g:?}");
            assert!(nu <= n / 2);
        }
    }

    #[test]
    fn params_examples() {
        assert_eq!(family_params(&ForbiddenFamily::single(k4e()).unwrap()), (2, 4));
        assert_eq!(family_params(&ForbiddenFamily::single(c8sq()).unwrap()), (3, 8));
        let fam = ForbiddenFamily::new(vec![k(3), Graph::cycle(5).unwrap()]).unwrap();
        assert_eq!(family_params(&fam), (2, 5));
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_value(&ForbiddenFamily::single(k4e()).unwrap()).unwrap(), 1);
        assert_eq!(q_value(&ForbiddenFamily::single(k(3)).unwrap()).unwrap(), 1);
        let f = Graph::join(&[k(2).copies(2).unwrap(), Graph::empty(4).unwrap()]).unwrap();
        assert_eq!(q_value(&ForbiddenFamily::single(f).unwrap()).unwrap(), 2);
        assert!(matches!(
            q_value(&ForbiddenFamily::single(Graph::empty(2).unwrap()).unwrap()),
            Err(FamilyError::RankTooSmall(0))
        ));
    }

    #[test]
    fn q_monotone_under_enlargement() {
        let base = ForbiddenFamily::single(Graph::join(&[k(2).copies(2).unwrap(), Graph::empty(4).unwrap()]).unwrap())
            .unwrap();
        let q0 = q_value(&base).unwrap();
        for extra in [k4e(), Graph::cycle(5).unwrap(), k(3)] {
            let bigger = base.with_member(extra).unwrap();
            if bigger.r() == base.r() {
                assert!(q_value(&bigger).unwrap() <= q0);
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let a: BTreeSet<u32> = [1, 2].into();
        let b: BTreeSet<u32> = [2, 3].into();
        assert_eq!(
            intersection_lower_bound(&[a.clone(), b]).unwrap(),
            IntersectionBound { bound: 1, actual: 1, holds: true }
        );
        let s: BTreeSet<u32> = [4, 5, 6].into();
        let r = intersection_lower_bound(&[s.clone(), s.clone(), s]).unwrap();
        assert_eq!((r.bound, r.actual), (3, 3));
        assert_eq!(intersection_lower_bound(&[a]), Err(FamilyError::TooFewSets(1)));
    }
}
