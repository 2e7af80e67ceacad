//! Finite multigraphs with real and virtual edges.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Label, LabelledGraph};

/// One undirected edge. `label` is the label read when walking from
/// `ends[0]` to `ends[1]`; virtual edges carry none.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MEdge {
    pub ends: [usize; 2],
    /// Edge identity, unique within a decomposition.
    pub tag: usize,
    pub is_virtual: bool,
    pub label: Option<Label>,
}

impl MEdge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    pub fn key(&self) -> (usize, usize) {
        let [a, b] = self.ends;
        (a.min(b), a.max(b))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub edges: Vec<MEdge>,
}

impl MultiGraph {
    /// Builds a multigraph; the vertex set is taken from the edge endpoints
    /// together with `extra` vertices.
    pub fn new(edges: Vec<MEdge>, extra: &[usize]) -> Self {
        let mut vs: BTreeSet<usize> = extra.iter().copied().collect();
        for e in &edges {
            vs.insert(e.ends[0]);
            vs.insert(e.ends[1]);
        }
        MultiGraph {
            vertices: vs.into_iter().collect(),
            edges,
        }
    }

    /// The whole labelled graph, one edge per dart pair, tagged by the representative dart.
    pub fn from_labelled(g: &LabelledGraph) -> Self {
        Self::from_darts(g, g.edges())
    }

    /// The edges given by representative darts `darts`.
    pub fn from_darts(g: &LabelledGraph, darts: impl IntoIterator<Item = usize>) -> Self {
        let edges = darts
            .into_iter()
            .map(|d| {
                let dart = g.dart(d);
                MEdge {
                    ends: [dart.tail, dart.head],
                    tag: d,
                    is_virtual: false,
                    label: Some(dart.label),
                }
            })
            .collect();
        Self::new(edges, &[])
    }

    /// Unlabelled real edges between the given vertex pairs, tagged by position.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| MEdge {
                ends: [a, b],
                tag: i,
                is_virtual: false,
                label: None,
            })
            .collect();
        Self::new(edges, &[])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|e| e.ends[0] == e.ends[1])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.ends[0] == v) as usize + (e.ends[1] == v) as usize)
            .sum()
    }

    /// Adjacency lists of edge indices, keyed by vertex.
    pub fn incidence(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut inc: BTreeMap<usize, Vec<usize>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for (i, e) in self.edges.iter().enumerate() {
            inc.entry(e.ends[0]).or_default().push(i);
            if e.ends[1] != e.ends[0] {
                inc.entry(e.ends[1]).or_default().push(i);
            }
        }
        inc
    }

    /// Connected components of the graph with `removed` vertices deleted.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let inc = self.incidence();
        let mut seen: BTreeSet<usize> = removed.iter().copied().collect();
        let mut comps = Vec::new();
        for &s in &self.vertices {
            if seen.contains(&s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &ei in &inc[&v] {
                    let w = self.edges[ei].other(v);
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]).len() <= 1
    }

    /// Connected, at least 2 vertices, no loops and no cutvertex.
    pub fn is_two_connected(&self) -> bool {
        if self.vertices.len() < 2 || self.has_loop() || !self.is_connected() {
            return false;
        }
        if self.vertices.len() == 2 {
            return !self.edges.is_empty();
        }
        self.vertices
            .iter()
            .all(|&v| self.components_without(&[v]).len() == 1)
    }

    /// No cutvertex and no separation pair, with at least 4 vertices.
    pub fn is_three_connected(&self) -> bool {
        if self.vertices.len() < 4 || !self.is_two_connected() {
            return false;
        }
        for (i, &u) in self.vertices.iter().enumerate() {
            for &v in &self.vertices[i + 1..] {
                if self.components_without(&[u, v]).len() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// A cycle of length at least 3.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3
            && self.edges.len() == self.vertices.len()
            && self.is_connected()
            && self.vertices.iter().all(|&v| self.degree(v) == 2)
    }

    /// Two vertices joined by at least 3 edges.
    pub fn is_multilink(&self) -> bool {
        self.vertices.len() == 2 && self.edges.len() >= 3 && !self.has_loop()
    }

    /// Edges as a sorted multiset of `(endpoints, tag, virtual)`, for comparisons.
    pub fn edge_signature(&self) -> Vec<((usize, usize), usize, bool)> {
        let mut sig: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.key(), e.tag, e.is_virtual))
            .collect();
        sig.sort_unstable();
        sig
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity_predicates() {
        let k4 = MultiGraph::from_pairs(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(k4.is_three_connected());
        let c5 = MultiGraph::from_pairs(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(c5.is_cycle() && c5.is_two_connected() && !c5.is_three_connected());
        let path = MultiGraph::from_pairs(&[(0, 1), (1, 2)]);
        assert!(!path.is_two_connected());
        let bond = MultiGraph::from_pairs(&[(0, 1), (0, 1), (1, 0)]);
        assert!(bond.is_multilink());
    }
}
