//! Canonical labelling by equitable-partition refinement plus individualisation.
//!
//! The search tree is built from isomorphism-invariant choices only (first
//! non-singleton cell, children in vertex order), so the least leaf
//! certificate over the whole tree is a canonical form. Twin vertices in the
//! target cell are interchangeable by a transposition automorphism, so only
//! the smallest of each twin group is individualised.

use crate::graph::{Graph, VertexSet};

/// Mask, per vertex, of twins with a smaller index. Two vertices are twins
/// when they share their open neighbourhood or their closed neighbourhood.
pub fn lower_twins(g: &Graph) -> Vec<u128> {
    let rows = g.rows();
    (0..g.order())
        .map(|v| {
            let open = rows[v];
            let closed = open | 1u128 << v;
            (0..v).filter(|&u| rows[u] == open || rows[u] | 1u128 << u == closed).fold(0u128, |acc, u| acc | 1u128 << u)
        })
        .collect()
}

/// Refines an ordered partition to the coarsest equitable partition below it.
/// Cells are split by neighbour counts into each splitter cell, smallest count first.
pub(crate) fn refine(rows: &[u128], cells: &mut Vec<u128>) {
    let mut counts: Vec<(u32, usize)> = Vec::with_capacity(rows.len());
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut j = 0;
            while j < cells.len() {
                let cell = cells[j];
                if cell.count_ones() < 2 {
                    j += 1;
                    continue;
                }
                counts.clear();
                counts.extend(VertexSet(cell).iter().map(|v| ((rows[v] & splitter).count_ones(), v)));
                let first = counts[0].0;
                if counts.iter().all(|&(c, _)| c == first) {
                    j += 1;
                    continue;
                }
                counts.sort_unstable();
                let mut pieces: Vec<u128> = Vec::new();
                let mut current = counts[0].0;
                let mut acc = 0u128;
                for &(c, v) in counts.iter() {
                    if c != current {
                        pieces.push(acc);
                        acc = 0;
                        current = c;
                    }
                    acc |= 1u128 << v;
                }
                pieces.push(acc);
                let added = pieces.len();
                cells.splice(j..=j, pieces);
                j += added;
                changed = true;
            }
            s += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Search<'a> {
    rows: &'a [u128],
    twins: Vec<u128>,
    best_cert: Option<Vec<u128>>,
    best_labels: Vec<usize>,
}

impl Search<'_> {
    fn leaf(&mut self, cells: &[u128]) {
        let n = self.rows.len();
        let mut labels = vec![0usize; n];
        for (i, &c) in cells.iter().enumerate() {
            labels[c.trailing_zeros() as usize] = i;
        }
        let mut cert = vec![0u128; n];
        for (v, &lv) in labels.iter().enumerate() {
            let mut r = 0u128;
            for u in VertexSet(self.rows[v]) {
                r |= 1u128 << labels[u];
            }
            cert[lv] = r;
        }
        let better = match &self.best_cert {
            None => true,
            Some(b) => cert < *b,
        };
        if better {
            self.best_cert = Some(cert);
            self.best_labels = labels;
        }
    }

    fn descend(&mut self, mut cells: Vec<u128>) {
        refine(self.rows, &mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        for v in VertexSet(cell) {
            if self.twins[v] & cell != 0 {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u128 << v);
            child.push(cell & !(1u128 << v));
            child.extend_from_slice(&cells[target + 1..]);
            self.descend(child);
        }
    }
}

/// Returns `labels` with `labels[v]` the canonical position of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut search = Search { rows: g.rows(), twins: lower_twins(g), best_cert: None, best_labels: Vec::new() };
    // start from the degree partition, which is already invariant
    let mut by_degree: Vec<(u32, usize)> = (0..n).map(|v| (g.rows()[v].count_ones(), v)).collect();
    by_degree.sort_unstable();
    let mut cells = Vec::new();
    let mut acc = 0u128;
    let mut current = by_degree[0].0;
    for &(d, v) in &by_degree {
        if d != current {
            cells.push(acc);
            acc = 0;
            current = d;
        }
        acc |= 1u128 << v;
    }
    cells.push(acc);
    search.descend(cells);
    search.best_labels
}

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    g.permute(&canonical_labeling(g))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && {
            let mut da = a.degrees();
            let mut db = b.degrees();
            da.sort_unstable();
            db.sort_unstable();
            da == db
        }
        && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn invariant_under_relabelling() {
        let graphs = [
            Graph::cycle(6).unwrap(),
            Graph::path(5).unwrap(),
            Graph::join(&[Graph::complete(2).unwrap(), Graph::empty(3).unwrap()]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (2, 3)]).unwrap(),
            Graph::empty(6).unwrap(),
        ];
        for g in &graphs {
            let c = canonical_form(g);
            for p in all_perms(g.order()).into_iter().step_by(7) {
                assert_eq!(canonical_form(&g.permute(&p)), c);
            }
            assert_eq!(canonical_form(&c), c);
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let c6 = Graph::cycle(6).unwrap();
        let two_triangles = Graph::complete(3).unwrap().copies(2).unwrap();
        assert!(!are_isomorphic(&c6, &two_triangles));
        // the complement of C_6 is the triangular prism, not the octahedron T(6,3)
        assert!(!are_isomorphic(&c6.complement(), &Graph::turan(6, 3).unwrap()));
        assert!(are_isomorphic(
            &Graph::turan(6, 3).unwrap().complement(),
            &Graph::complete(2).unwrap().copies(3).unwrap()
        ));
    }

    #[test]
    fn c5_self_complementary() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&c5, &c5.complement()));
    }

    #[test]
    fn symmetric_graphs_stay_cheap() {
        // every vertex is a twin: the search must collapse to one leaf per level
        let g = Graph::empty(60).unwrap();
        assert_eq!(canonical_form(&g), g);
        let t = Graph::turan(40, 4).unwrap();
        assert!(are_isomorphic(&t, &t.permute(&(0..40).rev().collect::<Vec<_>>())));
    }
}
