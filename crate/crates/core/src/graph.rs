//! Simple undirected graphs stored as one 128-bit adjacency row per vertex.
//!
//! Every constructor documents the vertex layout it produces, so callers can
//! address vertices of a join or a Turán graph by index.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Largest order the bit-row representation can hold.
pub const MAX_ORDER: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation needs a nonempty list of graphs")]
    EmptyList,
    #[error("loops are not allowed (vertex {0})")]
    Loop(usize),
}

/// A set of vertices as a bitmask. Only meaningful relative to a host order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_ORDER);
        if n == MAX_ORDER {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1u128 << v)
    }

    pub fn from_slice(vertices: &[usize]) -> VertexSet {
        vertices.iter().copied().collect()
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// True when every member is below `n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(VertexSet::full(n))
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct VertexIter(u128);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Graph distance, with disconnection as its own value rather than a large number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

/// Named families accepted by [`construct`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Complete,
    Empty,
    Path,
    Cycle,
    CompleteMultipartite,
    Turan,
}

/// Finite simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasicStats {
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub connected: bool,
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n > MAX_ORDER {
        Err(GraphError::OrderTooLarge(n))
    } else {
        Ok(())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        check_order(n)?;
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        check_order(n)?;
        let full = VertexSet::full(n).0;
        let rows = (0..n).map(|v| full & !(1u128 << v)).collect();
        Ok(Graph { n, rows })
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        Ok(g)
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::path(n)?;
        g.set_edge(n - 1, 0);
        Ok(g)
    }

    /// Complete multipartite graph; parts occupy consecutive index blocks in
    /// the given order. Zero-sized parts are allowed and contribute nothing.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
        let parts: Vec<Graph> = parts.iter().map(|&p| Graph::empty(p)).collect::<Result<_, _>>()?;
        if parts.is_empty() {
            return Graph::empty(0);
        }
        Graph::join(&parts)
    }

    /// Part sizes of `T(n, r)`, larger parts first.
    pub fn turan_parts(n: usize, r: usize) -> Result<Vec<usize>, GraphError> {
        if r == 0 {
            return if n == 0 {
                Ok(Vec::new())
            } else {
                Err(GraphError::InvalidParameter(format!("T(n,0) is only defined for n = 0, got n = {n}")))
            };
        }
        Ok((0..r).map(|i| n / r + usize::from(i < n % r)).collect())
    }

    /// Turán graph `T(n, r)` with parts in decreasing size order.
    /// `T(n, 1)` is edgeless and `T(0, 0)` is the null graph.
    pub fn turan(n: usize, r: usize) -> Result<Graph, GraphError> {
        check_order(n)?;
        Graph::complete_multipartite(&Graph::turan_parts(n, r)?)
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range endpoints.
    /// Repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw rows. Rows must be symmetric, loop-free and in range.
    pub fn from_rows(rows: Vec<u128>) -> Result<Graph, GraphError> {
        let n = rows.len();
        check_order(n)?;
        let full = VertexSet::full(n).0;
        for (u, &row) in rows.iter().enumerate() {
            if row >> u & 1 == 1 {
                return Err(GraphError::Loop(u));
            }
            if row & !full != 0 {
                return Err(GraphError::InvalidParameter(format!("row {u} has bits beyond order {n}")));
            }
            for v in VertexSet(row) {
                if rows[v] >> u & 1 == 0 {
                    return Err(GraphError::InvalidParameter(format!("asymmetric adjacency at ({u},{v})")));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u128>) -> Graph {
        Graph { n: rows.len(), rows }
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1u128 << v;
        self.rows[v] |= 1u128 << u;
    }

    #[inline]
    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1u128 << v);
        self.rows[v] &= !(1u128 << u);
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.n })
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<(), GraphError> {
        match s.difference(VertexSet::full(self.n)).first() {
            None => Ok(()),
            Some(v) => Err(GraphError::VertexOutOfRange { vertex: v, order: self.n }),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let above = self.rows[u] & !((2u128 << u).wrapping_sub(1));
            VertexSet(above).iter().map(move |v| (u, v))
        })
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| (self.rows[v] & s.0).count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        let rows = self.rows.iter().enumerate().map(|(v, &r)| !r & full & !(1u128 << v)).collect();
        Graph { n: self.n, rows }
    }

    /// Vertex blocks concatenated in argument order, no edges between blocks.
    pub fn disjoint_union(parts: &[Graph]) -> Result<Graph, GraphError> {
        Graph::combine(parts, false)
    }

    /// Disjoint union plus every edge between distinct blocks.
    pub fn join(parts: &[Graph]) -> Result<Graph, GraphError> {
        Graph::combine(parts, true)
    }

    fn combine(parts: &[Graph], connect: bool) -> Result<Graph, GraphError> {
        if parts.is_empty() {
            return Err(GraphError::EmptyList);
        }
        let n: usize = parts.iter().map(|p| p.n).sum();
        check_order(n)?;
        let full = VertexSet::full(n).0;
        let mut rows = Vec::with_capacity(n);
        let mut offset = 0;
        for p in parts {
            let block = VertexSet::full(p.n).0 << offset;
            let outside = if connect { full & !block } else { 0 };
            rows.extend(p.rows.iter().map(|&r| (r << offset) | outside));
            offset += p.n;
        }
        Ok(Graph { n, rows })
    }

    /// `t` disjoint copies of `self`.
    pub fn copies(&self, t: usize) -> Result<Graph, GraphError> {
        if t == 0 {
            return Graph::empty(0);
        }
        Graph::disjoint_union(&vec![self.clone(); t])
    }

    /// Breadth-first distances from `source`.
    pub fn bfs_distances(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(d) = dist[u] else { unreachable!() };
            for v in self.neighbors(u) {
                if dist[v] == Distance::Infinite {
                    dist[v] = Distance::Finite(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Distance, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs_distances(u)[v])
    }

    /// `G^k`: same vertices, `uv` an edge iff `0 < dist(u, v) <= k`.
    pub fn power(&self, k: usize) -> Result<Graph, GraphError> {
        if k < 1 {
            return Err(GraphError::InvalidParameter("graph power needs k >= 1".into()));
        }
        let rows = (0..self.n)
            .map(|v| {
                let mut reached = 1u128 << v;
                let mut frontier = reached;
                for _ in 0..k {
                    let mut next = 0u128;
                    for u in VertexSet(frontier) {
                        next |= self.rows[u];
                    }
                    frontier = next & !reached;
                    if frontier == 0 {
                        break;
                    }
                    reached |= frontier;
                }
                reached & !(1u128 << v)
            })
            .collect();
        Ok(Graph { n: self.n, rows })
    }

    /// Vertices reachable from `v`, including `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = 1u128 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for u in VertexSet(frontier) {
                next |= self.rows[u];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        VertexSet(seen)
    }

    /// Connected components ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.component_of(v);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    /// Components of the subgraph induced by `s`.
    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut left = s;
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let mut seen = 1u128 << v;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0u128;
                for u in VertexSet(frontier) {
                    next |= self.rows[u];
                }
                frontier = next & s.0 & !seen;
                seen |= frontier;
            }
            left = left.difference(VertexSet(seen));
            out.push(VertexSet(seen));
        }
        out
    }

    /// The empty graph and `K_1` count as connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_of(0).len() == self.n
    }

    pub fn induces_connected(&self, s: VertexSet) -> bool {
        self.components_within(s).len() <= 1
    }

    pub fn basic_stats(&self) -> BasicStats {
        let degrees = self.degrees();
        BasicStats {
            edges: self.edge_count(),
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            connected: self.is_connected(),
        }
    }

    /// `G[S]`, relabelled so that the members of `s` become `0..|s|` in increasing order.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let members = s.to_vec();
        let rows = members
            .iter()
            .map(|&u| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.has_edge(u, v))
                    .fold(0u128, |acc, (i, _)| acc | 1u128 << i)
            })
            .collect();
        Graph { n: members.len(), rows }
    }

    /// `G - S`.
    pub fn remove_vertices(&self, s: VertexSet) -> Graph {
        self.induced(self.vertices().difference(s))
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u128; self.n];
        for (u, &pu) in perm.iter().enumerate() {
            let mut r = 0u128;
            for v in self.neighbors(u) {
                r |= 1u128 << perm[v];
            }
            rows[pu] = r;
        }
        Graph { n: self.n, rows }
    }

    /// True when `other` has the same order and every edge of `other` is an edge of `self`.
    pub fn is_spanning_supergraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| b & !a == 0)
    }

    pub fn with_edges_added(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn with_edges_removed(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            g.clear_edge(u, v);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Dispatches to the named constructors with integer parameters, rejecting
/// negative values instead of wrapping them.
pub fn construct(kind: Kind, params: &[i64]) -> Result<Graph, GraphError> {
    let sizes: Vec<usize> = params
        .iter()
        .map(|&p| usize::try_from(p).map_err(|_| GraphError::InvalidParameter(format!("negative parameter {p}"))))
        .collect::<Result<_, _>>()?;
    let arity = |want: usize| -> Result<(), GraphError> {
        if sizes.len() == want {
            Ok(())
        } else {
            Err(GraphError::InvalidParameter(format!("{kind:?} takes {want} parameter(s), got {}", sizes.len())))
        }
    };
    match kind {
        Kind::Complete => {
            arity(1)?;
            Graph::complete(sizes[0])
        }
        Kind::Empty => {
            arity(1)?;
            Graph::empty(sizes[0])
        }
        Kind::Path => {
            arity(1)?;
            Graph::path(sizes[0])
        }
        Kind::Cycle => {
            arity(1)?;
            Graph::cycle(sizes[0])
        }
        Kind::CompleteMultipartite => Graph::complete_multipartite(&sizes),
        Kind::Turan => {
            arity(2)?;
            Graph::turan(sizes[0], sizes[1])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn e(n: usize) -> Graph {
        Graph::empty(n).unwrap()
    }

    #[test]
    fn turan_7_3() {
        let t = construct(Kind::Turan, &[7, 3]).unwrap();
        assert_eq!(Graph::turan_parts(7, 3).unwrap(), vec![3, 2, 2]);
        assert_eq!(t.edge_count(), 16);
        // first part is {0,1,2}
        assert!(!t.has_edge(0, 2));
        assert!(t.has_edge(2, 3));
        assert!(!t.has_edge(3, 4));
    }

    #[test]
    fn turan_degenerate_cases() {
        assert_eq!(construct(Kind::Turan, &[5, 1]).unwrap(), e(5));
        assert_eq!(Graph::turan(0, 0).unwrap().order(), 0);
        assert!(Graph::turan(3, 0).is_err());
        assert!(construct(Kind::Turan, &[-1, 2]).is_err());
        assert!(construct(Kind::Complete, &[-3]).is_err());
    }

    #[test]
    fn cycle_degrees() {
        let c4 = construct(Kind::Cycle, &[4]).unwrap();
        assert!(c4.degrees().iter().all(|&d| d == 2));
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn complement_cases() {
        assert_eq!(k(4).complement(), e(4));
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.complement().complement(), p3);
        // C_5's complement is the pentagram 0-2-4-1-3-0
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.complement().permute(&[0, 3, 1, 4, 2]), c5);
    }

    #[test]
    fn unions() {
        let three = Graph::disjoint_union(&[k(2), k(2), k(2)]).unwrap();
        assert_eq!((three.order(), three.edge_count()), (6, 3));
        assert_eq!(Graph::disjoint_union(&[k(1)]).unwrap(), k(1));
        let g = Graph::disjoint_union(&[k(3), e(2)]).unwrap();
        assert_eq!((g.order(), g.edge_count(), g.components().len()), (5, 3, 3));
        assert_eq!(Graph::disjoint_union(&[]), Err(GraphError::EmptyList));
    }

    #[test]
    fn joins() {
        let g = Graph::join(&[k(2), e(2)]).unwrap();
        assert_eq!(g, k(4).with_edges_removed(&[(2, 3)]).unwrap());
        assert_eq!(Graph::join(&[e(2), e(3)]).unwrap(), Graph::complete_multipartite(&[2, 3]).unwrap());
        let apex = Graph::join(&[k(1), Graph::turan(8, 2).unwrap()]).unwrap();
        assert_eq!((apex.order(), apex.edge_count()), (9, 24));
        assert_eq!(Graph::join(&[]), Err(GraphError::EmptyList));
    }

    #[test]
    fn powers() {
        let c8 = Graph::cycle(8).unwrap();
        let sq = c8.power(2).unwrap();
        assert!(sq.degrees().iter().all(|&d| d == 4));
        assert_eq!(sq.edge_count(), 16);
        let c6sq = Graph::cycle(6).unwrap().power(2).unwrap();
        assert_eq!(c6sq, k(6).with_edges_removed(&[(0, 3), (1, 4), (2, 5)]).unwrap());
        assert_eq!(Graph::path(5).unwrap().power(4).unwrap(), k(5));
        assert_eq!(c8.power(1).unwrap(), c8);
        assert!(c8.power(0).is_err());
        // components stay apart
        let two = Graph::disjoint_union(&[k(2), k(2)]).unwrap();
        assert_eq!(two.power(5).unwrap(), two);
    }

    #[test]
    fn distances() {
        let c8 = Graph::cycle(8).unwrap();
        assert_eq!(c8.distance(0, 4).unwrap(), Distance::Finite(4));
        assert_eq!(c8.distance(3, 3).unwrap(), Distance::Finite(0));
        let two = Graph::disjoint_union(&[k(2), k(2)]).unwrap();
        assert_eq!(two.distance(0, 2).unwrap(), Distance::Infinite);
        assert!(two.distance(0, 4).is_err());
    }

    #[test]
    fn stats() {
        let t = Graph::turan(7, 3).unwrap().basic_stats();
        assert_eq!(t, BasicStats { edges: 16, min_degree: 4, max_degree: 5, connected: true });
        let e3 = e(3).basic_stats();
        assert_eq!(e3, BasicStats { edges: 0, min_degree: 0, max_degree: 0, connected: false });
        let sq = Graph::cycle(8).unwrap().power(2).unwrap().basic_stats();
        assert_eq!(sq, BasicStats { edges: 16, min_degree: 4, max_degree: 4, connected: true });
        assert!(e(0).is_connected() && e(1).is_connected());
    }

    #[test]
    fn turan_maximises_edges_among_multipartite() {
        fn compositions(n: usize, r: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
            if cur.len() == r - 1 {
                cur.push(n);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for a in 0..=n {
                cur.push(a);
                compositions(n - a, r, out, cur);
                cur.pop();
            }
        }
        for n in 1..=10 {
            for r in 1..=4 {
                let parts = Graph::turan_parts(n, r).unwrap();
                let t = Graph::turan(n, r).unwrap();
                let squares: usize = parts.iter().map(|p| p * p).sum();
                assert_eq!(t.edge_count(), (n * n - squares) / 2);
                let mut all = Vec::new();
                compositions(n, r, &mut all, &mut Vec::new());
                for c in all {
                    let mut sorted = c.clone();
                    sorted.sort_unstable_by(|a, b| b.cmp(a));
                    let g = Graph::complete_multipartite(&c).unwrap();
                    if sorted != parts {
                        assert!(g.edge_count() < t.edge_count(), "n={n} r={r} parts={c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn deleting_a_join_block() {
        let parts = [Graph::cycle(4).unwrap(), k(2), Graph::path(3).unwrap()];
        let j = Graph::join(&parts).unwrap();
        let without_first = j.remove_vertices(VertexSet::from_slice(&[0, 1, 2, 3]));
        assert_eq!(without_first, Graph::join(&parts[1..]).unwrap());
        let without_mid = j.remove_vertices(VertexSet::from_slice(&[4, 5]));
        assert_eq!(without_mid, Graph::join(&[parts[0].clone(), parts[2].clone()]).unwrap());
    }

    #[test]
    fn order_limit() {
        assert!(Graph::empty(128).is_ok());
        assert_eq!(Graph::empty(129), Err(GraphError::OrderTooLarge(129)));
        assert!(Graph::join(&[k(64), k(65)]).is_err());
        let full = Graph::complete(128).unwrap();
        assert_eq!(full.edge_count(), 128 * 127 / 2);
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        assert!(Graph::from_rows(vec![0b10, 0]).is_err());
        assert!(Graph::from_rows(vec![0b1]).is_err());
        assert_eq!(Graph::from_rows(vec![0b10, 0b01]).unwrap(), k(2));
    }
}
