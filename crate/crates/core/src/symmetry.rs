//! Symmetric subgraphs: disjoint connected blocks that are isomorphic via
//! maps preserving every attachment to the rest of the graph.
//!
//! A tuple stores each block as an ordered vertex list; the isomorphism from
//! the first block to block `j` sends `blocks[0][i]` to `blocks[j][i]`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("a symmetric tuple needs at least one block")]
    NoBlocks,
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("block {block} has {found} vertices, the first block has {expected}")]
    SizeMismatch { block: usize, expected: usize, found: usize },
    #[error("block {0} lists a vertex twice, so its map is not a bijection")]
    RepeatedVertex(usize),
    #[error("tuple does not verify on the host: {0}")]
    Unverified(SymmetryFailure),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Ordered blocks `Q_1, ..., Q_tau` with implicit positional bijections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricTuple {
    pub blocks: Vec<Vec<usize>>,
}

impl SymmetricTuple {
    pub fn new(blocks: Vec<Vec<usize>>) -> SymmetricTuple {
        SymmetricTuple { blocks }
    }

    /// Single-vertex blocks.
    pub fn trivial(vertices: &[usize]) -> SymmetricTuple {
        SymmetricTuple { blocks: vertices.iter().map(|&v| vec![v]).collect() }
    }

    pub fn tau(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn block_set(&self, j: usize) -> VertexSet {
        VertexSet::from_slice(&self.blocks[j])
    }

    pub fn union(&self) -> VertexSet {
        (0..self.tau()).fold(VertexSet::EMPTY, |acc, j| acc.union(self.block_set(j)))
    }
}

/// First clause a tuple violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SymmetryFailure {
    /// (a) two blocks share a vertex.
    Overlap { first: usize, second: usize },
    /// (b) a block does not induce a connected subgraph.
    Disconnected { block: usize },
    /// (c) the positional map from block 0 to `block` breaks adjacency between
    /// positions `i` and `j`.
    NotIsomorphic { block: usize, i: usize, j: usize },
    /// (d) position `i` of block 0 and of `block` attach differently to `outside`.
    Attachment { block: usize, i: usize, outside: usize },
    /// Blocks must be mutually non-adjacent.
    Adjacent { first: usize, second: usize },
}

impl std::fmt::Display for SymmetryFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SymmetryFailure::Overlap { first, second } => write!(f, "(a) blocks {first} and {second} overlap"),
            SymmetryFailure::Disconnected { block } => write!(f, "(b) block {block} is not connected"),
            SymmetryFailure::NotIsomorphic { block, i, j } => {
                write!(f, "(c) map to block {block} breaks adjacency of positions {i},{j}")
            }
            SymmetryFailure::Attachment { block, i, outside } => {
                write!(f, "(d) position {i} of block {block} attaches differently to vertex {outside}")
            }
            SymmetryFailure::Adjacent { first, second } => write!(f, "blocks {first} and {second} are adjacent"),
        }
    }
}

fn check_shape(host: &Graph, tuple: &SymmetricTuple) -> Result<(), SymmetryError> {
    if tuple.blocks.is_empty() {
        return Err(SymmetryError::NoBlocks);
    }
    let size = tuple.block_size();
    for (j, block) in tuple.blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(SymmetryError::EmptyBlock(j));
        }
        if block.len() != size {
            return Err(SymmetryError::SizeMismatch { block: j, expected: size, found: block.len() });
        }
        for &v in block {
            host.check_vertex(v)?;
        }
        if VertexSet::from_slice(block).len() != block.len() {
            return Err(SymmetryError::RepeatedVertex(j));
        }
    }
    Ok(())
}

/// Checks the tuple clause by clause and returns the first failure, if any.
pub fn check_symmetric(host: &Graph, tuple: &SymmetricTuple) -> Result<Option<SymmetryFailure>, SymmetryError> {
    check_shape(host, tuple)?;
    let tau = tuple.tau();
    let sets: Vec<VertexSet> = (0..tau).map(|j| tuple.block_set(j)).collect();
    for a in 0..tau {
        for b in a + 1..tau {
            if !sets[a].is_disjoint(sets[b]) {
                return Ok(Some(SymmetryFailure::Overlap { first: a, second: b }));
            }
        }
    }
    for (j, &s) in sets.iter().enumerate() {
        if !host.induces_connected(s) {
            return Ok(Some(SymmetryFailure::Disconnected { block: j }));
        }
    }
    let first = &tuple.blocks[0];
    for (j, block) in tuple.blocks.iter().enumerate().skip(1) {
        for i in 0..first.len() {
            for k in i + 1..first.len() {
                if host.has_edge(first[i], first[k]) != host.has_edge(block[i], block[k]) {
                    return Ok(Some(SymmetryFailure::NotIsomorphic { block: j, i, j: k }));
                }
            }
        }
    }
    let outside = host.vertices().difference(tuple.union());
    for (j, block) in tuple.blocks.iter().enumerate().skip(1) {
        for i in 0..first.len() {
            let a = host.neighbors(first[i]).intersection(outside);
            let b = host.neighbors(block[i]).intersection(outside);
            if let Some(v) = VertexSet(a.0 ^ b.0).first() {
                return Ok(Some(SymmetryFailure::Attachment { block: j, i, outside: v }));
            }
        }
    }
    for a in 0..tau {
        let reach = sets[a].iter().fold(VertexSet::EMPTY, |acc, v| acc.union(host.neighbors(v)));
        for (b, &other) in sets.iter().enumerate().skip(a + 1) {
            if !reach.is_disjoint(other) {
                return Ok(Some(SymmetryFailure::Adjacent { first: a, second: b }));
            }
        }
    }
    Ok(None)
}

pub fn are_symmetric_subgraphs(host: &Graph, tuple: &SymmetricTuple) -> Result<bool, SymmetryError> {
    Ok(check_symmetric(host, tuple)?.is_none())
}

/// Classes of vertices with identical open neighbourhoods (such vertices are
/// automatically non-adjacent), ordered by smallest member.
pub fn symmetric_vertex_classes(g: &Graph) -> Vec<VertexSet> {
    let mut classes: Vec<(u128, VertexSet)> = Vec::new();
    for v in 0..g.order() {
        let row = g.rows()[v];
        match classes.iter_mut().find(|(r, _)| *r == row) {
            Some((_, c)) => c.insert(v),
            None => classes.push((row, VertexSet::singleton(v))),
        }
    }
    classes.into_iter().map(|(_, c)| c).collect()
}

pub const FINDER_MAX_ORDER: usize = 40;
pub const FINDER_MAX_BLOCK: usize = 4;
pub const FINDER_MAX_TAU: usize = 6;

/// Connected vertex sets of exactly `size` vertices, as sorted vectors in lexicographic order.
fn connected_sets(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            if g.induces_connected(VertexSet::from_slice(cur)) {
                out.push(cur.clone());
            }
            return;
        }
        for v in start..g.order() {
            cur.push(v);
            rec(g, size, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Orderings of `target` that are isomorphisms from `first` (positionally) and
/// make the two blocks attach identically outside their union, with no edges
/// between them.
fn partner_maps(g: &Graph, first: &[usize], first_set: VertexSet, target: VertexSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let both = first_set.union(target);
    let outside = g.vertices().difference(both);
    let reach = first_set.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(g.neighbors(v)));
    if !reach.is_disjoint(target) {
        return out;
    }
    fn rec(
        g: &Graph,
        first: &[usize],
        outside: VertexSet,
        left: VertexSet,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = cur.len();
        if i == first.len() {
            out.push(cur.clone());
            return;
        }
        let want = g.neighbors(first[i]).intersection(outside);
        for w in left {
            if g.neighbors(w).intersection(outside) != want {
                continue;
            }
            if (0..i).any(|k| g.has_edge(first[i], first[k]) != g.has_edge(w, cur[k])) {
                continue;
            }
            cur.push(w);
            rec(g, first, outside, left.difference(VertexSet::singleton(w)), cur, out);
            cur.pop();
        }
    }
    rec(g, first, outside, target, &mut Vec::with_capacity(first.len()), &mut out);
    out
}

/// Exhaustive search for `tau` symmetric blocks of equal order at most
/// `max_size`. Block orders are tried from 1 upward and first blocks in
/// lexicographic order, so the result is deterministic.
pub fn find_symmetric_subgraphs(
    g: &Graph,
    tau: usize,
    max_size: usize,
) -> Result<Option<SymmetricTuple>, SymmetryError> {
    if tau == 0 || max_size == 0 {
        return Err(SymmetryError::Budget("tau and max_size must be positive".into()));
    }
    if g.order() > FINDER_MAX_ORDER || max_size > FINDER_MAX_BLOCK || tau > FINDER_MAX_TAU {
        return Err(SymmetryError::Budget(format!(
            "finder limits are n <= {FINDER_MAX_ORDER}, block order <= {FINDER_MAX_BLOCK}, tau <= {FINDER_MAX_TAU}"
        )));
    }
    for size in 1..=max_size.min(g.order()) {
        let sets = connected_sets(g, size);
        for first in &sets {
            let first_set = VertexSet::from_slice(first);
            if tau == 1 {
                return Ok(Some(SymmetricTuple::new(vec![first.clone()])));
            }
            // candidate partners: connected sets disjoint from the first block
            let mut partners: Vec<(VertexSet, Vec<usize>)> = Vec::new();
            for other in &sets {
                let s = VertexSet::from_slice(other);
                if !s.is_disjoint(first_set) {
                    continue;
                }
                if let Some(map) = partner_maps(g, first, first_set, s).into_iter().next() {
                    partners.push((s, map));
                }
            }
            // pairwise compatibility with the first block implies mutual
            // non-adjacency and equal attachment once the partners are disjoint
            let mut chosen: Vec<usize> = Vec::new();
            if pick_disjoint(&partners, tau - 1, 0, VertexSet::EMPTY, &mut chosen) {
                let mut blocks = vec![first.clone()];
                blocks.extend(chosen.iter().map(|&i| partners[i].1.clone()));
                let tuple = SymmetricTuple::new(blocks);
                debug_assert!(are_symmetric_subgraphs(g, &tuple).unwrap());
                return Ok(Some(tuple));
            }
        }
    }
    Ok(None)
}

fn pick_disjoint(
    partners: &[(VertexSet, Vec<usize>)],
    need: usize,
    start: usize,
    used: VertexSet,
    chosen: &mut Vec<usize>,
) -> bool {
    if need == 0 {
        return true;
    }
    for i in start..partners.len() {
        if partners.len() - i < need {
            return false;
        }
        if partners[i].0.is_disjoint(used) {
            chosen.push(i);
            if pick_disjoint(partners, need - 1, i + 1, used.union(partners[i].0), chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Adds a new copy of the first block, attached to the outside of the tuple
/// exactly as the first block is. New vertices are `n..n+|Q_1|` in block order.
/// Returns the new graph and the tuple extended by the new block.
pub fn extend_by_symmetric_copy(g: &Graph, tuple: &SymmetricTuple) -> Result<(Graph, SymmetricTuple), SymmetryError> {
    if let Some(failure) = check_symmetric(g, tuple)? {
        return Err(SymmetryError::Unverified(failure));
    }
    let n = g.order();
    let first = &tuple.blocks[0];
    let size = first.len();
    let outside = g.vertices().difference(tuple.union());
    let mut rows: Vec<u128> = g.rows().to_vec();
    rows.resize(n + size, 0);
    if n + size > crate::graph::MAX_ORDER {
        return Err(GraphError::OrderTooLarge(n + size).into());
    }
    let mut out = Graph::from_rows_unchecked(rows);
    for (i, &q) in first.iter().enumerate() {
        for v in g.neighbors(q).intersection(outside) {
            out.set_edge(n + i, v);
        }
        for (k, &q2) in first.iter().enumerate().skip(i + 1) {
            if g.has_edge(q, q2) {
                out.set_edge(n + i, n + k);
            }
        }
    }
    let mut blocks = tuple.blocks.clone();
    blocks.push((n..n + size).collect());
    Ok((out, SymmetricTuple::new(blocks)))
}

pub const D_MAX_ORDER: usize = 12;
pub const D_MAX_OMIT: usize = 3;

/// Evidence that a graph lies in the symmetric family D(n, r, c).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DWitness {
    pub removed: Vec<usize>,
    /// The `r` join factors of `G - R`, as vertex sets of `G`.
    pub parts: Vec<Vec<usize>>,
    /// Per part, its connected components, each a symmetric block in `G`
    /// (ordered so positional maps from the first block are the isomorphisms).
    pub blocks: Vec<SymmetricTuple>,
}

/// Finds a positional ordering of every component in `comps` that makes them
/// symmetric subgraphs of `g`.
fn symmetric_ordering(g: &Graph, comps: &[VertexSet]) -> Option<SymmetricTuple> {
    let first = comps[0].to_vec();
    if comps.len() == 1 {
        return Some(SymmetricTuple::new(vec![first]));
    }
    if comps.iter().any(|c| c.len() != first.len()) {
        return None;
    }
    let union = comps.iter().fold(VertexSet::EMPTY, |a, &c| a.union(c));
    let outside = g.vertices().difference(union);
    let mut blocks = vec![first.clone()];
    for &c in &comps[1..] {
        // components of one join factor are already mutually non-adjacent
        let found = find_positional_map(g, &first, c, outside)?;
        blocks.push(found);
    }
    Some(SymmetricTuple::new(blocks))
}

fn find_positional_map(g: &Graph, first: &[usize], target: VertexSet, outside: VertexSet) -> Option<Vec<usize>> {
    fn rec(g: &Graph, first: &[usize], outside: VertexSet, left: VertexSet, cur: &mut Vec<usize>) -> bool {
        let i = cur.len();
        if i == first.len() {
            return true;
        }
        let want = g.neighbors(first[i]).intersection(outside);
        for w in left {
            if g.neighbors(w).intersection(outside) != want {
                continue;
            }
            if (0..i).any(|k| g.has_edge(first[i], first[k]) != g.has_edge(w, cur[k])) {
                continue;
            }
            cur.push(w);
            if rec(g, first, outside, left.difference(VertexSet::singleton(w)), cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(first.len());
    rec(g, first, outside, target, &mut cur).then_some(cur)
}

/// Set partitions of `0..k` into exactly `r` nonempty groups, as restricted
/// growth strings in lexicographic order.
fn set_partitions(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, r: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == k {
            if max == r {
                out.push(cur.clone());
            }
            return;
        }
        // remaining elements must be able to open the missing groups
        if r - max > k - i {
            return;
        }
        for g in 0..=max.min(r - 1) {
            cur.push(g);
            rec(k, r, cur, max.max(g + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 || r > k {
        return out;
    }
    rec(k, r, &mut Vec::new(), 0, &mut out);
    out
}

/// Subsets of `0..n` of size at most `c`, by size then lexicographically.
fn small_subsets(n: usize, c: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, size, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=c.min(n) {
        rec(n, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Decides membership in D(n, r, c): after omitting at most `c` vertices the
/// rest is a join of `r` graphs with `| |G_i| - n/r | <= c`, each a disjoint
/// union of blocks that are symmetric subgraphs of `G`. Returns the first
/// witness in (removal size, removal lexicographic, grouping) order.
pub fn check_d_membership(g: &Graph, r: usize, c: usize) -> Result<Option<DWitness>, SymmetryError> {
    let n = g.order();
    if r < 1 {
        return Err(SymmetryError::Budget("r must be at least 1".into()));
    }
    if n > D_MAX_ORDER || c > D_MAX_OMIT {
        return Err(SymmetryError::Budget(format!(
            "membership search is limited to n <= {D_MAX_ORDER} and c <= {D_MAX_OMIT}"
        )));
    }
    for removed in small_subsets(n, c) {
        let rset = VertexSet::from_slice(&removed);
        let rest = g.vertices().difference(rset);
        // join factors of G - R are unions of connected components of its complement
        let co = g.complement().components_within(rest);
        for grouping in set_partitions(co.len(), r) {
            let mut parts = vec![VertexSet::EMPTY; r];
            for (i, &grp) in grouping.iter().enumerate() {
                parts[grp] = parts[grp].union(co[i]);
            }
            // | |G_i| - n/r | <= c  <=>  | r|G_i| - n | <= c r
            if parts.iter().any(|p| (r * p.len()).abs_diff(n) > c * r) {
                continue;
            }
            let mut blocks = Vec::with_capacity(r);
            for &p in &parts {
                match symmetric_ordering(g, &g.components_within(p)) {
                    Some(t) => blocks.push(t),
                    None => break,
                }
            }
            if blocks.len() == r {
                return Ok(Some(DWitness { removed, parts: parts.iter().map(|p| p.to_vec()).collect(), blocks }));
            }
        }
    }
    Ok(None)
}
