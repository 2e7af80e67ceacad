//! Blocks and the block-cutvertex tree of a finite labelled graph.

use std::collections::BTreeSet;

use crate::graph::{DartId, LabelledGraph, VertexId};

use super::DecompError;

/// A maximal 2-connected subgraph, or a bridge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
    /// Representative darts of the block's edges, sorted.
    pub edges: Vec<DartId>,
}

impl Block {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    /// Sorted cutvertices.
    pub cutvertices: Vec<VertexId>,
    /// Pairs `(block index, cutvertex)` with the cutvertex inside the block.
    pub incidences: Vec<(usize, VertexId)>,
}

impl BlockCutTree {
    pub fn blocks_at(&self, v: VertexId) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].contains(v))
            .collect()
    }
}

/// Blocks of every component of `g`, ordered by their sorted vertex lists.
///
/// Isolated vertices belong to no block.
pub fn biconnected_blocks(g: &LabelledGraph) -> Vec<Block> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut edge_stack: Vec<DartId> = Vec::new();
    let mut blocks = Vec::new();

    for s in g.vertices() {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        // (vertex, dart used to enter it, next out-dart position)
        let mut stack: Vec<(VertexId, Option<DartId>, usize)> = vec![(s, None, 0)];
        while let Some(&(v, parent_dart, pos)) = stack.last() {
            let out = g.out_darts(v);
            if pos < out.len() {
                let d = out[pos];
                if let Some(top) = stack.last_mut() {
                    top.2 += 1;
                }
                if Some(g.reverse(d)) == parent_dart {
                    continue;
                }
                let w = g.dart(d).head;
                if disc[w] == usize::MAX {
                    edge_stack.push(d);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(d), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(d);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(pd), Some(&(u, _, _))) = (parent_dart, stack.last()) {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut edges = Vec::new();
                        let mut verts = BTreeSet::new();
                        while let Some(e) = edge_stack.pop() {
                            let dart = g.dart(e);
                            verts.insert(dart.tail);
                            verts.insert(dart.head);
                            edges.push(e.min(g.reverse(e)));
                            if e == pd {
                                break;
                            }
                        }
                        edges.sort_unstable();
                        blocks.push(Block {
                            vertices: verts.into_iter().collect(),
                            edges,
                        });
                    }
                }
            }
        }
    }
    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices).then(a.edges.cmp(&b.edges)));
    blocks
}

/// Block-cutvertex tree of a connected graph with at least two vertices.
pub fn block_cut_tree(g: &LabelledGraph) -> Result<BlockCutTree, DecompError> {
    if g.vertex_count() < 2 {
        return Err(DecompError::Disconnected(
            "need at least two vertices".to_string(),
        ));
    }
    let dist = crate::graph::cayley::bfs_distances(g, 0);
    if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(DecompError::Disconnected(format!(
            "vertex {} is not reachable from {}",
            g.name(v),
            g.name(0)
        )));
    }
    let blocks = biconnected_blocks(g);
    let mut count = vec![0usize; g.vertex_count()];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cutvertices: Vec<VertexId> = g.vertices().filter(|&v| count[v] > 1).collect();
    let mut incidences = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &c in &cutvertices {
            if b.contains(c) {
                incidences.push((i, c));
            }
        }
    }
    Ok(BlockCutTree {
        blocks,
        cutvertices,
        incidences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Alphabet;
    use std::sync::Arc;

    fn graph(n: usize, pairs: &[(usize, usize)]) -> LabelledGraph {
        // distinct labels per edge keep the labelling deterministic
        let toks: Vec<(String, String)> = (0..pairs.len())
            .map(|i| (format!("e{i}"), format!("E{i}")))
            .collect();
        let mut decl = Vec::new();
        for (t, i) in &toks {
            decl.push((t.as_str(), i.as_str()));
            decl.push((i.as_str(), t.as_str()));
        }
        let al = Arc::new(Alphabet::from_pairs(&decl).unwrap());
        let mut b = LabelledGraph::builder(al.clone());
        for v in 0..n {
            b.vertex(&v.to_string());
        }
        for (i, &(u, v)) in pairs.iter().enumerate() {
            b.edge(u, v, al.lookup(&format!("e{i}")).unwrap());
        }
        b.build().unwrap()
    }

    #[test]
    fn path_has_two_blocks() {
        let t = block_cut_tree(&graph(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cutvertices, vec![1]);
        assert_eq!(t.incidences.len(), 2);
    }

    #[test]
    fn cycle_is_one_block() {
        let t = block_cut_tree(&graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap();
        assert_eq!(t.blocks.len(), 1);
        assert!(t.cutvertices.is_empty());
    }

    #[test]
    fn bowtie() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let t = block_cut_tree(&g).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cutvertices, vec![2]);
        assert_eq!(t.blocks[0].vertices, vec![0, 1, 2]);
        assert_eq!(t.blocks[1].vertices, vec![2, 3, 4]);
    }

    #[test]
    fn disconnected_is_rejected() {
        assert!(block_cut_tree(&graph(4, &[(0, 1), (2, 3)])).is_err());
    }
}
