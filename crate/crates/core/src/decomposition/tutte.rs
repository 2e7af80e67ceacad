//! Tutte decomposition of finite 2-connected multigraphs into cycles,
//! multilinks and 3-connected pieces.
//!
//! The graph is split recursively at parallel classes and separation pairs
//! until every piece is a triangle, a bond or 3-connected; adjacent bonds
//! and adjacent cycles are then merged back together.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::multigraph::{MEdge, MultiGraph};
use super::DecompError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Cycle,
    Multilink,
    Rigid,
}

impl NodeKind {
    /// One-letter prefix used in orbit names.
    pub fn letter(self) -> char {
        match self {
            NodeKind::Cycle => 'C',
            NodeKind::Multilink => 'M',
            NodeKind::Rigid => 'R',
        }
    }

    pub fn of(g: &MultiGraph) -> NodeKind {
        if g.vertex_count() == 2 {
            NodeKind::Multilink
        } else if g.is_cycle() {
            NodeKind::Cycle
        } else {
            NodeKind::Rigid
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Cycle => "cycle",
            NodeKind::Multilink => "multilink",
            NodeKind::Rigid => "three-connected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub kind: NodeKind,
    pub graph: MultiGraph,
}

/// Two nodes sharing the virtual edge `virtual_tag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub virtual_tag: usize,
    pub nodes: [usize; 2],
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeBlockTree {
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<TreeEdge>,
}

impl ThreeBlockTree {
    /// Glues all nodes back along their virtual edges.
    pub fn amalgamate(&self) -> MultiGraph {
        let edges: Vec<MEdge> = self
            .nodes
            .iter()
            .flat_map(|n| n.graph.edges.iter().filter(|e| !e.is_virtual).cloned())
            .collect();
        let extra: Vec<usize> = self
            .nodes
            .iter()
            .flat_map(|n| n.graph.vertices.iter().copied())
            .collect();
        MultiGraph::new(edges, &extra)
    }

    /// Tree neighbours of `node` with the shared virtual tag.
    pub fn neighbours(&self, node: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.nodes[0] == node {
                    Some((e.nodes[1], e.virtual_tag))
                } else if e.nodes[1] == node {
                    Some((e.nodes[0], e.virtual_tag))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn nodes_containing(&self, v: usize) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].graph.contains_vertex(v))
            .collect()
    }
}

/// Computes the unique 3-block tree of a finite 2-connected multigraph.
pub fn tutte_decomposition(g: &MultiGraph) -> Result<ThreeBlockTree, DecompError> {
    if g.edge_count() < 3 {
        return Err(DecompError::TooFewEdges(g.edge_count()));
    }
    if !g.is_two_connected() {
        return Err(DecompError::NotTwoConnected);
    }
    let mut next_tag = g.edges.iter().map(|e| e.tag).max().map_or(0, |t| t + 1);
    let pieces = split_all(g.clone(), &mut next_tag);
    let pieces = merge(pieces);

    let mut nodes: Vec<TreeNode> = pieces
        .into_iter()
        .map(|mut graph| {
            graph.edges.sort_by_key(|e| (e.key(), e.tag));
            TreeNode {
                kind: NodeKind::of(&graph),
                graph,
            }
        })
        .collect();
    nodes.sort_by(|a, b| {
        a.graph
            .vertices
            .cmp(&b.graph.vertices)
            .then(a.kind.cmp(&b.kind))
            .then_with(|| a.graph.edge_signature().cmp(&b.graph.edge_signature()))
    });

    let mut holders: BTreeMap<usize, (Vec<usize>, [usize; 2])> = BTreeMap::new();
    for (i, n) in nodes.iter().enumerate() {
        for e in n.graph.edges.iter().filter(|e| e.is_virtual) {
            let entry = holders.entry(e.tag).or_insert((Vec::new(), [e.ends[0], e.ends[1]]));
            entry.0.push(i);
        }
    }
    let mut edges = Vec::new();
    for (tag, (ns, ends)) in holders {
        debug_assert_eq!(ns.len(), 2, "virtual edge {tag} must join two nodes");
        edges.push(TreeEdge {
            virtual_tag: tag,
            nodes: [ns[0], ns[1]],
            ends,
        });
    }
    edges.sort_by_key(|e| (e.nodes, e.virtual_tag));
    Ok(ThreeBlockTree { nodes, edges })
}

fn split_all(g: MultiGraph, next_tag: &mut usize) -> Vec<MultiGraph> {
    let mut stack = vec![g];
    let mut done = Vec::new();
    while let Some(h) = stack.pop() {
        if h.vertex_count() == 2 {
            done.push(h);
            continue;
        }
        if let Some((bond, rest)) = split_parallel(&h, next_tag) {
            done.push(bond);
            stack.push(rest);
            continue;
        }
        if h.vertex_count() == 3 {
            done.push(h);
            continue;
        }
        match separation_pair(&h) {
            Some((u, v)) => {
                let (a, b) = split_at(&h, u, v, next_tag);
                stack.push(b);
                stack.push(a);
            }
            None => done.push(h),
        }
    }
    done
}

fn virtual_edge(u: usize, v: usize, tag: usize) -> MEdge {
    MEdge {
        ends: [u.min(v), u.max(v)],
        tag,
        is_virtual: true,
        label: None,
    }
}

/// Splits off the first class of parallel edges as a bond.
fn split_parallel(h: &MultiGraph, next_tag: &mut usize) -> Option<(MultiGraph, MultiGraph)> {
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in h.edges.iter().enumerate() {
        classes.entry(e.key()).or_default().push(i);
    }
    let (&(u, v), idx) = classes.iter().find(|(_, idx)| idx.len() > 1)?;
    let tag = *next_tag;
    *next_tag += 1;
    let mut bond_edges: Vec<MEdge> = idx.iter().map(|&i| h.edges[i].clone()).collect();
    bond_edges.push(virtual_edge(u, v, tag));
    let mut rest: Vec<MEdge> = h
        .edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !idx.contains(i))
        .map(|(_, e)| e.clone())
        .collect();
    rest.push(virtual_edge(u, v, tag));
    Some((MultiGraph::new(bond_edges, &[]), MultiGraph::new(rest, &[])))
}

/// First pair `{u, v}` in vertex order whose removal disconnects `h`.
fn separation_pair(h: &MultiGraph) -> Option<(usize, usize)> {
    for &u in &h.vertices {
        if let Some(v) = articulation_points_without(h, u).into_iter().next() {
            return Some((u.min(v), u.max(v)));
        }
    }
    None
}

/// Sorted cutvertices of `h - u`.
fn articulation_points_without(h: &MultiGraph, u: usize) -> Vec<usize> {
    let verts: Vec<usize> = h.vertices.iter().copied().filter(|&v| v != u).collect();
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in h.edges.iter().enumerate() {
        if e.ends[0] == u || e.ends[1] == u {
            continue;
        }
        let (a, b) = (pos[&e.ends[0]], pos[&e.ends[1]]);
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize, usize)> = Vec::new(); // (vertex, parent edge, next pos)
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    stack.push((0, usize::MAX, 0));
    let mut root_children = 0;
    while let Some(&(v, pe, p)) = stack.last() {
        if p < adj[v].len() {
            if let Some(top) = stack.last_mut() {
                top.2 += 1;
            }
            let (w, ei) = adj[v][p];
            if ei == pe {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, ei, 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(parent, _, _)) = stack.last() {
                low[parent] = low[parent].min(low[v]);
                if parent != 0 && low[v] >= disc[parent] {
                    is_cut[parent] = true;
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[0] = true;
    }
    verts
        .iter()
        .enumerate()
        .filter(|(i, _)| is_cut[*i])
        .map(|(_, &v)| v)
        .collect()
}

/// Splits `h` at `{u, v}`: the component of `h - {u, v}` holding the
/// smallest vertex goes to the first part, everything else to the second.
fn split_at(h: &MultiGraph, u: usize, v: usize, next_tag: &mut usize) -> (MultiGraph, MultiGraph) {
    let comps = h.components_without(&[u, v]);
    let first = &comps[0];
    let tag = *next_tag;
    *next_tag += 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for e in &h.edges {
        let inside = first.binary_search(&e.ends[0]).is_ok() || first.binary_search(&e.ends[1]).is_ok();
        if inside {
            a.push(e.clone());
        } else {
            b.push(e.clone());
        }
    }
    a.push(virtual_edge(u, v, tag));
    b.push(virtual_edge(u, v, tag));
    (MultiGraph::new(a, &[]), MultiGraph::new(b, &[]))
}

/// Merges bond-bond and cycle-cycle neighbours until none remain.
fn merge(mut pieces: Vec<MultiGraph>) -> Vec<MultiGraph> {
    loop {
        let mut holders: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, p) in pieces.iter().enumerate() {
            for e in p.edges.iter().filter(|e| e.is_virtual) {
                holders.entry(e.tag).or_default().push(i);
            }
        }
        let mut target = None;
        for (&tag, hs) in &holders {
            if let [i, j] = hs[..] {
                let (ki, kj) = (NodeKind::of(&pieces[i]), NodeKind::of(&pieces[j]));
                if ki == kj && ki != NodeKind::Rigid {
                    target = Some((tag, i, j));
                    break;
                }
            }
        }
        let Some((tag, i, j)) = target else {
            return pieces;
        };
        let (i, j) = (i.min(j), i.max(j));
        let pj = pieces.remove(j);
        let pi = pieces.remove(i);
        let edges: Vec<MEdge> = pi
            .edges
            .into_iter()
            .chain(pj.edges)
            .filter(|e| !(e.is_virtual && e.tag == tag))
            .collect();
        pieces.push(MultiGraph::new(edges, &[]));
    }
}
