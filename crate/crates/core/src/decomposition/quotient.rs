//! Finite orbit data of the block and 3-block trees.
//!
//! Everything is stored "in root position": every stored 3-block is one
//! containing the root, and a directed tree edge together with a start
//! vertex on its virtual edge (a *pair*) is represented by translating the
//! start vertex to the root. In Cayley mode the group acts simply
//! transitively, so two pairs are equivalent exactly when their translates
//! coincide.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::graph::{
    expand_ball, render_vertex, Alphabet, BallView, CayleyGraphSpec, Label, VertexId, Word,
};

use super::blockcut::{biconnected_blocks, Block};
use super::multigraph::{MEdge, MultiGraph};
use super::tutte::{tutte_decomposition, NodeKind, ThreeBlockTree};
use super::DecompError;

/// Edge of a stored 3-block. Real edges carry the label read from
/// `ends[0]` to `ends[1]`; virtual edges carry `exits`, the pair entered
/// when leaving the block through this edge starting at `ends[0]` resp. `ends[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block3Edge {
    pub ends: [usize; 2],
    pub label: Option<Label>,
    pub exits: Option<[usize; 2]>,
}

impl Block3Edge {
    pub fn is_virtual(&self) -> bool {
        self.exits.is_some()
    }

    pub fn side_of(&self, v: usize) -> Option<usize> {
        self.ends.iter().position(|&x| x == v)
    }
}

/// A finite 3-block in root position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block3 {
    pub name: String,
    /// Name of the orbit of 3-blocks this one belongs to.
    pub orbit: String,
    pub kind: NodeKind,
    pub vertices: Vec<String>,
    pub edges: Vec<Block3Edge>,
    /// Per vertex, the level-2 edge of the incidence (block, vertex), if any.
    pub tags: Vec<Option<usize>>,
}

impl Block3 {
    pub fn multigraph(&self) -> MultiGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| MEdge {
                ends: e.ends,
                tag: i,
                is_virtual: e.is_virtual(),
                label: e.label,
            })
            .collect();
        MultiGraph::new(edges, &(0..self.vertices.len()).collect::<Vec<_>>())
    }
}

/// Orbit of a directed 3-block tree edge `a` together with a start vertex
/// `u` on its virtual edge; `block` is the 3-block on the far side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOrbit {
    pub name: String,
    pub block: usize,
    pub start: usize,
    /// The virtual edge shared with the near side.
    pub entry: usize,
    /// The reversed tree edge with the same start vertex.
    pub bar: usize,
    /// The same tree edge started from the other end of the virtual edge.
    pub other: usize,
}

impl PairOrbit {
    /// Index of the second vertex of the entry edge.
    pub fn second(&self, q: &QuotientDecomposition) -> usize {
        let e = &q.blocks3[self.block].edges[self.entry];
        if e.ends[0] == self.start {
            e.ends[1]
        } else {
            e.ends[0]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBlock {
    pub vertices: Vec<String>,
    /// `(ends, label read from ends[0] to ends[1])`.
    pub edges: Vec<([usize; 2], Label)>,
    /// The cutvertex through which the block is entered.
    pub cut: usize,
    pub tags: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YBlock {
    Finite(FiniteBlock),
    /// An infinite block given by level-3 data, entered at `start` of 3-block `node`.
    ThreeBlocks { node: usize, start: usize },
}

/// An edge of the level-2 factor graph: an orbit of incidences (block, cutvertex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YEdge {
    pub name: String,
    pub block_orbit: String,
    pub class: usize,
    pub neighbours: Vec<usize>,
    pub block: YBlock,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDecomposition {
    pub alphabet: Arc<Alphabet>,
    pub root: String,
    /// Names of the cutvertex classes.
    pub classes: Vec<String>,
    pub y_edges: Vec<YEdge>,
    pub root_edge: usize,
    pub blocks3: Vec<Block3>,
    pub pairs: Vec<PairOrbit>,
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> DecompError {
    DecompError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

impl QuotientDecomposition {
    /// True when the whole graph is one block described by 3-blocks.
    pub fn is_two_connected(&self) -> bool {
        self.y_edges.len() == 1 && matches!(self.y_edges[0].block, YBlock::ThreeBlocks { .. })
    }

    /// Distinct block orbit names in order of first appearance.
    pub fn block_orbits(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for e in &self.y_edges {
            if !seen.contains(&e.block_orbit.as_str()) {
                seen.push(e.block_orbit.as_str());
            }
        }
        seen
    }

    /// Distinct 3-block orbit names in order of first appearance.
    pub fn node_orbits(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for b in &self.blocks3 {
            if !seen.contains(&b.orbit.as_str()) {
                seen.push(b.orbit.as_str());
            }
        }
        seen
    }

    /// Checks every structural invariant; errors carry a path into the document.
    pub fn validate(&self) -> Result<(), DecompError> {
        let ny = self.y_edges.len();
        if ny == 0 {
            return Err(invalid("level2.y_edges", "no edges"));
        }
        if self.root_edge >= ny {
            return Err(invalid("level2.root_edge", "unknown edge"));
        }
        for (i, e) in self.y_edges.iter().enumerate() {
            let path = format!("level2.y_edges[{i}]");
            if e.class >= self.classes.len() {
                return Err(invalid(format!("{path}.class"), "unknown class"));
            }
            if e.neighbours.contains(&i) {
                return Err(invalid(format!("{path}.neighbours"), "N(e) must not contain e"));
            }
            let expected: Vec<usize> = (0..ny)
                .filter(|&f| f != i && self.y_edges[f].class == e.class)
                .collect();
            let mut got = e.neighbours.clone();
            got.sort_unstable();
            if got != expected {
                return Err(invalid(
                    format!("{path}.neighbours"),
                    "must be exactly the other edges of the same class",
                ));
            }
            match &e.block {
                YBlock::Finite(b) => self.validate_finite(&format!("{path}.block"), i, b)?,
                YBlock::ThreeBlocks { node, start } => {
                    let b = self
                        .blocks3
                        .get(*node)
                        .ok_or_else(|| invalid(format!("{path}.block.node"), "unknown 3-block"))?;
                    if *start >= b.vertices.len() {
                        return Err(invalid(format!("{path}.block.start"), "unknown vertex"));
                    }
                }
            }
        }
        for (i, b) in self.blocks3.iter().enumerate() {
            self.validate_block3(&format!("blocks3[{i}]"), b)?;
        }
        let np = self.pairs.len();
        for (i, p) in self.pairs.iter().enumerate() {
            let path = format!("edge_orbits[{i}]");
            let b = self
                .blocks3
                .get(p.block)
                .ok_or_else(|| invalid(format!("{path}.block"), "unknown 3-block"))?;
            let entry = b
                .edges
                .get(p.entry)
                .ok_or_else(|| invalid(format!("{path}.entry"), "unknown edge"))?;
            let Some(exits) = entry.exits else {
                return Err(invalid(format!("{path}.entry"), "entry edge must be virtual"));
            };
            let Some(side) = entry.side_of(p.start) else {
                return Err(invalid(format!("{path}.start"), "start must lie on the entry edge"));
            };
            if p.bar >= np || self.pairs[p.bar].bar != i {
                return Err(invalid(format!("{path}.bar"), "bar map must be an involution"));
            }
            if p.other >= np || self.pairs[p.other].other != i {
                return Err(invalid(format!("{path}.other"), "other-end map must be an involution"));
            }
            if exits[side] != p.bar || exits[1 - side] != self.pairs[p.other].bar {
                return Err(invalid(
                    format!("{path}.entry"),
                    "exits of the entry edge disagree with the bar maps",
                ));
            }
        }
        Ok(())
    }

    fn validate_finite(&self, path: &str, me: usize, b: &FiniteBlock) -> Result<(), DecompError> {
        let n = b.vertices.len();
        if b.edges.is_empty() {
            return Err(invalid(format!("{path}.edges"), "block has no edges"));
        }
        if b.cut >= n {
            return Err(invalid(format!("{path}.cut"), "unknown vertex"));
        }
        if b.tags.len() != n {
            return Err(invalid(format!("{path}.tags"), "one tag per vertex expected"));
        }
        if b.tags[b.cut] != Some(me) {
            return Err(invalid(format!("{path}.tags"), "the cutvertex must be tagged with its own edge"));
        }
        for (k, t) in b.tags.iter().enumerate() {
            if matches!(t, Some(f) if *f >= self.y_edges.len()) {
                return Err(invalid(format!("{path}.tags[{k}]"), "unknown edge"));
            }
        }
        let mut seen = BTreeSet::new();
        for (k, (ends, l)) in b.edges.iter().enumerate() {
            if ends[0] >= n || ends[1] >= n || ends[0] == ends[1] {
                return Err(invalid(format!("{path}.edges[{k}]"), "bad endpoints"));
            }
            if l.index() >= self.alphabet.len() {
                return Err(invalid(format!("{path}.edges[{k}]"), "unknown label"));
            }
            let inv = self.alphabet.inverse(*l);
            if !seen.insert((ends[0], *l)) || !seen.insert((ends[1], inv)) {
                return Err(invalid(format!("{path}.edges[{k}]"), "labelling is not deterministic"));
            }
        }
        let edges = b
            .edges
            .iter()
            .enumerate()
            .map(|(i, (ends, l))| MEdge {
                ends: *ends,
                tag: i,
                is_virtual: false,
                label: Some(*l),
            })
            .collect();
        if !MultiGraph::new(edges, &(0..n).collect::<Vec<_>>()).is_connected() {
            return Err(invalid(format!("{path}.edges"), "block is not connected"));
        }
        Ok(())
    }

    fn validate_block3(&self, path: &str, b: &Block3) -> Result<(), DecompError> {
        let n = b.vertices.len();
        if b.edges.len() < 3 {
            return Err(invalid(format!("{path}.edges"), "a 3-block needs at least 3 edges"));
        }
        if b.tags.len() != n {
            return Err(invalid(format!("{path}.tags"), "one tag per vertex expected"));
        }
        for (k, e) in b.edges.iter().enumerate() {
            let epath = format!("{path}.edges[{k}]");
            if e.ends[0] >= n || e.ends[1] >= n || e.ends[0] == e.ends[1] {
                return Err(invalid(epath, "bad endpoints"));
            }
            match (e.label, e.exits) {
                (Some(l), None) if l.index() < self.alphabet.len() => {}
                (None, Some(x)) if x[0] < self.pairs.len() && x[1] < self.pairs.len() => {}
                _ => {
                    return Err(invalid(
                        epath,
                        "an edge is either real with a label or virtual with two known exits",
                    ))
                }
            }
        }
        let g = b.multigraph();
        let ok = match b.kind {
            NodeKind::Cycle => g.is_cycle(),
            NodeKind::Multilink => g.is_multilink(),
            NodeKind::Rigid => g.is_three_connected(),
        };
        if !ok {
            return Err(invalid(format!("{path}.kind"), format!("edges do not form a {}", b.kind)));
        }
        Ok(())
    }
}

/// Knobs for [`quotient_from_cayley`].
#[derive(Clone, Debug, Default)]
pub struct QuotientOptions {
    /// Vertex count above which an unclosed 3-block is reported as a likely
    /// thick end. Defaults to 10 times the largest closed 3-block (at least 3).
    pub size_bound: Option<usize>,
}

struct Ctx<'a> {
    spec: &'a CayleyGraphSpec,
    ball: &'a BallView,
    words: &'a [Word],
    index: HashMap<&'a Word, VertexId>,
}

impl Ctx<'_> {
    /// The vertex `v^{-1} x`, if it lies in the ball.
    fn translate(&self, v: VertexId, x: VertexId) -> Result<Option<VertexId>, DecompError> {
        let w = self.spec.translate_to_identity(&self.words[v], &self.words[x])?;
        Ok(self.index.get(&w).copied())
    }

    fn name(&self, v: VertexId) -> String {
        self.ball.graph.name(v).to_string()
    }

    fn label_from(&self, dart: usize, v: VertexId) -> Label {
        let d = self.ball.graph.dart(dart);
        if d.tail == v {
            d.label
        } else {
            self.ball.graph.alphabet().inverse(d.label)
        }
    }
}

/// Structural fingerprint of a 3-block in absolute ball coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct NodeKey {
    kind: NodeKind,
    vertices: Vec<VertexId>,
    real: Vec<(VertexId, VertexId, Label)>,
    virt: Vec<(VertexId, VertexId)>,
}

fn node_key(
    kind: NodeKind,
    g: &MultiGraph,
    al: &Alphabet,
    map: &dyn Fn(usize) -> Option<usize>,
) -> Option<NodeKey> {
    let mut vertices = g.vertices.iter().map(|&v| map(v)).collect::<Option<Vec<_>>>()?;
    vertices.sort_unstable();
    let mut real = Vec::new();
    let mut virt = Vec::new();
    for e in &g.edges {
        let (a, b) = (map(e.ends[0])?, map(e.ends[1])?);
        if e.is_virtual {
            virt.push((a.min(b), a.max(b)));
        } else {
            let l = e.label.expect("real edge without label");
            if a < b {
                real.push((a, b, l));
            } else {
                real.push((b, a, al.inverse(l)));
            }
        }
    }
    real.sort_unstable();
    virt.sort_unstable();
    Some(NodeKey {
        kind,
        vertices,
        real,
        virt,
    })
}

struct RootNode {
    tree: usize,
    node: usize,
    key: NodeKey,
}

/// Expands a ball of radius `r` and computes the quotient data around the root.
pub fn quotient_from_cayley(
    spec: &CayleyGraphSpec,
    r: usize,
    opts: &QuotientOptions,
) -> Result<QuotientDecomposition, DecompError> {
    let ball = expand_ball(spec, r)?;
    quotient_from_ball(spec, &ball, opts)
}

/// As [`quotient_from_cayley`] on an already expanded ball.
pub fn quotient_from_ball(
    spec: &CayleyGraphSpec,
    ball: &BallView,
    opts: &QuotientOptions,
) -> Result<QuotientDecomposition, DecompError> {
    let words = ball
        .words
        .as_deref()
        .ok_or_else(|| invalid("ball", "Cayley quotients need a ball with normal-form words"))?;
    let ctx = Ctx {
        spec,
        ball,
        words,
        index: words.iter().enumerate().map(|(i, w)| (w, i)).collect(),
    };
    let g = &ball.graph;
    let al = g.alphabet().clone();
    let root = ball.root;
    let r = ball.radius;
    let interior = |v: VertexId| ball.distance[v] + 2 <= r;

    // Blocks at the root, ordered by the labels of their darts at the root.
    let all_blocks = biconnected_blocks(g);
    let mut root_blocks: Vec<(Vec<Label>, Block)> = all_blocks
        .into_iter()
        .filter(|b| b.contains(root))
        .map(|b| {
            let mut ls: Vec<Label> = b
                .edges
                .iter()
                .filter(|&&d| g.dart(d).tail == root || g.dart(d).head == root)
                .map(|&d| ctx.label_from(d, root))
                .collect();
            ls.sort_unstable();
            (ls, b)
        })
        .collect();
    root_blocks.sort_by(|a, b| a.0.cmp(&b.0));
    let root_blocks: Vec<Block> = root_blocks.into_iter().map(|(_, b)| b).collect();
    if root_blocks.is_empty() {
        return Err(invalid("ball", "the root has no edges"));
    }

    // The root block containing the edge leaving the root with label s.
    let block_of_label = |s: Label| -> Option<usize> {
        let u = g.step(root, s)?;
        root_blocks.iter().position(|b| b.contains(u))
    };
    // Level-2 tag of the incidence (B, v): the root block v^{-1}B, read off a dart of B at v.
    let tag_of = |b: &Block, v: VertexId| -> Option<usize> {
        if v == root {
            return root_blocks.iter().position(|x| x == b);
        }
        let d = b
            .edges
            .iter()
            .find(|&&d| g.dart(d).tail == v || g.dart(d).head == v)?;
        block_of_label(ctx.label_from(*d, v))
    };

    let mut closed = vec![false; root_blocks.len()];
    for (i, b) in root_blocks.iter().enumerate() {
        if !b.vertices.iter().all(|&v| interior(v)) {
            continue;
        }
        let mut ok = true;
        for &v in &b.vertices {
            let mut image = Vec::new();
            for &x in &b.vertices {
                match ctx.translate(v, x)? {
                    Some(y) => image.push(y),
                    None => ok = false,
                }
            }
            image.sort_unstable();
            if !ok || !root_blocks.iter().any(|rb| rb.vertices == image) {
                ok = false;
                break;
            }
        }
        closed[i] = ok;
    }

    // Tutte decompositions of the unclosed root blocks.
    let mut trees: Vec<(usize, ThreeBlockTree)> = Vec::new();
    for (i, b) in root_blocks.iter().enumerate() {
        if closed[i] {
            continue;
        }
        if b.is_bridge() {
            return Err(DecompError::IncreaseRadius {
                what: format!("block of edge {}", g.name(b.vertices[1])),
                radius: r,
            });
        }
        let mg = MultiGraph::from_darts(g, b.edges.iter().copied());
        trees.push((i, tutte_decomposition(&mg)?));
    }

    let mut roots: Vec<RootNode> = Vec::new();
    for (t, (_, tree)) in trees.iter().enumerate() {
        for n in tree.nodes_containing(root) {
            let node = &tree.nodes[n];
            let key = node_key(node.kind, &node.graph, &al, &|v| Some(v)).expect("identity map");
            roots.push(RootNode { tree: t, node: n, key });
        }
    }
    roots.sort_by(|a, b| a.key.kind.cmp(&b.key.kind).then(a.key.vertices.cmp(&b.key.vertices)));
    let by_key: HashMap<&NodeKey, usize> = roots.iter().enumerate().map(|(i, n)| (&n.key, i)).collect();

    let node_graph = |i: usize| &trees[roots[i].tree].1.nodes[roots[i].node].graph;
    // Tree neighbour of root node i across its virtual edge with the given tag.
    let across = |i: usize, tag: usize| -> Option<(usize, usize)> {
        let tree = &trees[roots[i].tree].1;
        tree.neighbours(roots[i].node)
            .into_iter()
            .find(|&(_, t)| t == tag)
            .map(|(m, _)| (roots[i].tree, m))
    };
    // Does root node i have a virtual edge {a, b} leading to root node j?
    let links = |i: usize, a: VertexId, b: VertexId, j: usize| -> bool {
        node_graph(i).edges.iter().any(|e| {
            e.is_virtual
                && e.key() == (a.min(b), a.max(b))
                && across(i, e.tag) == Some((roots[j].tree, roots[j].node))
        })
    };

    // Translate the 3-block `(tree, node)` by `v`; returns the root node it lands on.
    let translate_node = |tree: usize, node: usize, v: VertexId| -> Result<Option<usize>, DecompError> {
        let n = &trees[tree].1.nodes[node];
        let mut cache = BTreeMap::new();
        for &x in &n.graph.vertices {
            cache.insert(x, ctx.translate(v, x)?);
        }
        let key = node_key(n.kind, &n.graph, &al, &|x| cache.get(&x).copied().flatten());
        Ok(key.and_then(|k| by_key.get(&k).copied()))
    };

    let mut failures: Vec<(usize, String)> = Vec::new();
    let mut largest_closed = 0usize;
    for i in 0..roots.len() {
        let gi = node_graph(i);
        let what = format!(
            "3-block {} on [{}]",
            roots[i].key.kind,
            gi.vertices.iter().map(|&v| ctx.name(v)).collect::<Vec<_>>().join(", ")
        );
        let mut ok = gi.vertices.iter().all(|&v| interior(v));
        if ok {
            'check: for &v in &gi.vertices {
                let Some(ti) = translate_node(roots[i].tree, roots[i].node, v)? else {
                    ok = false;
                    break;
                };
                for e in gi.edges.iter().filter(|e| e.is_virtual) {
                    for side in 0..2 {
                        if e.ends[side] != v {
                            continue;
                        }
                        let w = e.ends[1 - side];
                        let Some((t, m)) = across(i, e.tag) else {
                            ok = false;
                            break 'check;
                        };
                        let Some(tj) = translate_node(t, m, v)? else {
                            ok = false;
                            break 'check;
                        };
                        let Some(w2) = ctx.translate(v, w)? else {
                            ok = false;
                            break 'check;
                        };
                        if !links(ti, root, w2, tj) {
                            ok = false;
                            break 'check;
                        }
                    }
                }
            }
        }
        if ok {
            largest_closed = largest_closed.max(gi.vertex_count());
        } else {
            failures.push((gi.vertex_count(), what));
        }
    }
    if let Some((size, what)) = failures.into_iter().max_by_key(|f| f.0) {
        let bound = opts.size_bound.unwrap_or(10 * largest_closed.max(3));
        if size > bound {
            return Err(DecompError::EndSizeLikelyThree {
                what,
                vertices: size,
                bound,
            });
        }
        return Err(DecompError::IncreaseRadius { what, radius: r });
    }

    // Orbits of root nodes under translation.
    let mut orbit_of: Vec<usize> = (0..roots.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..roots.len() {
        for &v in &node_graph(i).vertices {
            let j = translate_node(roots[i].tree, roots[i].node, v)?.expect("checked above");
            let (a, b) = (find(&mut orbit_of, i), find(&mut orbit_of, j));
            if a != b {
                orbit_of[a.max(b)] = a.min(b);
            }
        }
    }
    let reps: Vec<usize> = (0..roots.len()).map(|i| find(&mut orbit_of, i)).collect();
    let mut orbit_names: BTreeMap<usize, String> = BTreeMap::new();
    let mut per_kind: BTreeMap<NodeKind, usize> = BTreeMap::new();
    for &rep in &reps {
        if !orbit_names.contains_key(&rep) {
            let kind = roots[rep].key.kind;
            let k = per_kind.entry(kind).or_insert(0);
            orbit_names.insert(rep, format!("{}{}", kind.letter(), k));
            *k += 1;
        }
    }
    let mut member_rank: BTreeMap<usize, usize> = BTreeMap::new();
    let mut block_names = Vec::new();
    for i in 0..roots.len() {
        let size = reps.iter().filter(|&&x| x == reps[i]).count();
        let rank = member_rank.entry(reps[i]).or_insert(0);
        let base = &orbit_names[&reps[i]];
        block_names.push(if size == 1 {
            base.clone()
        } else {
            format!("{base}/{rank}")
        });
        *rank += 1;
    }

    // Pairs: (from root node, to root node) across a virtual edge at the root.
    let mut pair_keys: Vec<(usize, usize)> = Vec::new();
    for i in 0..roots.len() {
        for e in node_graph(i).edges.iter().filter(|e| e.is_virtual) {
            if e.ends.contains(&root) {
                let (t, m) = across(i, e.tag).expect("checked above");
                let j = roots
                    .iter()
                    .position(|n| n.tree == t && n.node == m)
                    .expect("neighbour across a root virtual edge contains the root");
                pair_keys.push((i, j));
            }
        }
    }
    pair_keys.sort_unstable();
    pair_keys.dedup();
    let pair_index: HashMap<(usize, usize), usize> =
        pair_keys.iter().enumerate().map(|(k, &p)| (p, k)).collect();

    // Exit pair when leaving root node i through its virtual edge `e` starting at `v`.
    let exit = |i: usize, e: &MEdge, v: VertexId| -> Result<usize, DecompError> {
        let ti = translate_node(roots[i].tree, roots[i].node, v)?.expect("checked above");
        let (t, m) = across(i, e.tag).expect("checked above");
        let tj = translate_node(t, m, v)?.expect("checked above");
        Ok(pair_index[&(ti, tj)])
    };

    let mut blocks3 = Vec::new();
    let mut local_of: Vec<BTreeMap<VertexId, usize>> = Vec::new();
    let mut edge_tags: Vec<Vec<usize>> = Vec::new();
    for i in 0..roots.len() {
        let gi = node_graph(i);
        let local: BTreeMap<VertexId, usize> =
            gi.vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let block = &root_blocks[trees[roots[i].tree].0];
        let mut edges = Vec::new();
        for e in &gi.edges {
            let (a, b) = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
            let ends = [local[&a], local[&b]];
            if e.is_virtual {
                edges.push((e.tag, Block3Edge {
                    ends,
                    label: None,
                    exits: Some([exit(i, e, a)?, exit(i, e, b)?]),
                }));
            } else {
                let l = e.label.expect("real edge without label");
                let l = if e.ends[0] == a { l } else { al.inverse(l) };
                edges.push((e.tag, Block3Edge {
                    ends,
                    label: Some(l),
                    exits: None,
                }));
            }
        }
        edges.sort_by_key(|(_, e)| (e.ends, e.exits.is_some(), e.label, e.exits));
        let (tags_here, edges): (Vec<usize>, Vec<Block3Edge>) = edges.into_iter().unzip();
        edge_tags.push(tags_here);
        let mut tags = Vec::new();
        for &v in &gi.vertices {
            tags.push(Some(tag_of(block, v).ok_or_else(|| DecompError::IncreaseRadius {
                what: format!("incidence at vertex {}", ctx.name(v)),
                radius: r,
            })?));
        }
        blocks3.push(Block3 {
            name: block_names[i].clone(),
            orbit: orbit_names[&reps[i]].clone(),
            kind: roots[i].key.kind,
            vertices: gi.vertices.iter().map(|&v| ctx.name(v)).collect(),
            edges,
            tags,
        });
        local_of.push(local);
    }

    let mut pairs = Vec::new();
    let mut name_count: BTreeMap<String, usize> = BTreeMap::new();
    for &(i, j) in &pair_keys {
        let base = format!("{}.{}", blocks3[i].orbit, blocks3[j].orbit);
        let k = name_count.entry(base.clone()).or_insert(0);
        let name = if *k == 0 { base.clone() } else { format!("{base}#{k}") };
        *k += 1;
        let gj = node_graph(j);
        let shared = gj
            .edges
            .iter()
            .find(|e| {
                e.is_virtual
                    && e.ends.contains(&root)
                    && across(j, e.tag) == Some((roots[i].tree, roots[i].node))
            })
            .expect("pair shares a virtual edge at the root");
        let y = shared.other(root);
        let start = local_of[j][&root];
        let entry = edge_tags[j]
            .iter()
            .position(|&t| t == shared.tag)
            .expect("entry edge present");
        let bar = pair_index[&(j, i)];
        let yi = translate_node(roots[i].tree, roots[i].node, y)?.expect("checked above");
        let yj = translate_node(roots[j].tree, roots[j].node, y)?.expect("checked above");
        let other = pair_index[&(yi, yj)];
        pairs.push(PairOrbit {
            name,
            block: j,
            start,
            entry,
            bar,
            other,
        });
    }

    // Level 2.
    let mut block_orbit: Vec<usize> = (0..root_blocks.len()).collect();
    for (i, b) in root_blocks.iter().enumerate() {
        for &v in &b.vertices {
            if ball.distance[v] < r {
                if let Some(j) = tag_of(b, v) {
                    let (a, c) = (find(&mut block_orbit, i), find(&mut block_orbit, j));
                    if a != c {
                        block_orbit[a.max(c)] = a.min(c);
                    }
                }
            }
        }
    }
    let orbit_reps: Vec<usize> = (0..root_blocks.len()).map(|i| find(&mut block_orbit, i)).collect();
    let mut distinct: Vec<usize> = orbit_reps.clone();
    distinct.sort_unstable();
    distinct.dedup();

    let ny = root_blocks.len();
    let mut y_edges = Vec::new();
    for (i, b) in root_blocks.iter().enumerate() {
        let block = if closed[i] {
            let local: BTreeMap<VertexId, usize> =
                b.vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
            let edges = b
                .edges
                .iter()
                .map(|&d| {
                    let dart = g.dart(d);
                    ([local[&dart.tail], local[&dart.head]], dart.label)
                })
                .collect();
            let tags = b.vertices.iter().map(|&v| tag_of(b, v)).collect();
            YBlock::Finite(FiniteBlock {
                vertices: b.vertices.iter().map(|&v| ctx.name(v)).collect(),
                edges,
                cut: local[&root],
                tags,
            })
        } else {
            let t = trees.iter().position(|(bi, _)| *bi == i).expect("tree per open block");
            let node = (0..roots.len())
                .filter(|&k| roots[k].tree == t)
                .min_by_key(|&k| (node_graph(k).vertex_count(), k))
                .ok_or_else(|| invalid("blocks3", "no 3-block contains the root"))?;
            YBlock::ThreeBlocks {
                node,
                start: local_of[node][&root],
            }
        };
        y_edges.push(YEdge {
            name: format!("e{i}"),
            block_orbit: format!("B{}", distinct.binary_search(&orbit_reps[i]).unwrap_or(0)),
            class: 0,
            neighbours: (0..ny).filter(|&f| f != i).collect(),
            block,
        });
    }

    let q = QuotientDecomposition {
        alphabet: al.clone(),
        root: render_vertex(&al, &[]),
        classes: vec!["o".to_string()],
        y_edges,
        root_edge: 0,
        blocks3,
        pairs,
    };
    q.validate()?;
    Ok(q)
}

/// Quotient data of a finite graph from `view.root`, without using any symmetry.
pub fn quotient_from_finite(view: &BallView) -> Result<QuotientDecomposition, DecompError> {
    let g = &view.graph;
    let al = g.alphabet().clone();
    let root = view.root;
    let dist = &view.distance;
    if dist.iter().any(|&d| d == usize::MAX) {
        return Err(DecompError::Disconnected("graph is not connected".to_string()));
    }
    let blocks = biconnected_blocks(g);
    if blocks.is_empty() {
        return Err(invalid("graph", "the graph has no edges"));
    }
    let root_name = g.name(root).to_string();

    if blocks.len() == 1 && !blocks[0].is_bridge() {
        let mg = MultiGraph::from_labelled(g);
        let tree = tutte_decomposition(&mg)?;
        return Ok(finite_level3(&al, g.names(), root, &tree, root_name));
    }

    let mut count = vec![0usize; g.vertex_count()];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let is_class = |v: VertexId| count[v] > 1 || v == root;
    let mut incid: Vec<(usize, VertexId)> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            if is_class(v) {
                incid.push((i, v));
            }
        }
    }
    let mut class_vertices: Vec<VertexId> = incid.iter().map(|&(_, v)| v).collect();
    class_vertices.sort_unstable();
    class_vertices.dedup();
    let class_of = |v: VertexId| class_vertices.binary_search(&v).expect("class vertex");
    let y_of = |b: usize, v: VertexId| incid.iter().position(|&x| x == (b, v));

    let mut y_edges = Vec::new();
    for (k, &(bi, c)) in incid.iter().enumerate() {
        let b = &blocks[bi];
        let local: BTreeMap<VertexId, usize> =
            b.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = b
            .edges
            .iter()
            .map(|&d| {
                let dart = g.dart(d);
                ([local[&dart.tail], local[&dart.head]], dart.label)
            })
            .collect();
        y_edges.push(YEdge {
            name: format!("e{k}"),
            block_orbit: format!("B{bi}"),
            class: class_of(c),
            neighbours: incid
                .iter()
                .enumerate()
                .filter(|&(f, &(_, v))| f != k && v == c)
                .map(|(f, _)| f)
                .collect(),
            block: YBlock::Finite(FiniteBlock {
                vertices: b.vertices.iter().map(|&v| g.name(v).to_string()).collect(),
                edges,
                cut: local[&c],
                tags: b.vertices.iter().map(|&v| y_of(bi, v)).collect(),
            }),
        });
    }
    let root_edge = incid
        .iter()
        .position(|&(_, v)| v == root)
        .expect("root lies in a block");
    let q = QuotientDecomposition {
        alphabet: al,
        root: root_name,
        classes: class_vertices.iter().map(|&v| g.name(v).to_string()).collect(),
        y_edges,
        root_edge,
        blocks3: Vec::new(),
        pairs: Vec::new(),
    };
    q.validate()?;
    Ok(q)
}

/// Level-3 data of a finite 2-connected graph, every node its own orbit.
fn finite_level3(
    al: &Arc<Alphabet>,
    names: &[String],
    root: VertexId,
    tree: &ThreeBlockTree,
    root_name: String,
) -> QuotientDecomposition {
    let mut per_kind: BTreeMap<NodeKind, usize> = BTreeMap::new();
    let node_names: Vec<String> = tree
        .nodes
        .iter()
        .map(|n| {
            let k = per_kind.entry(n.kind).or_insert(0);
            *k += 1;
            format!("{}{}", n.kind.letter(), *k - 1)
        })
        .collect();
    // pairs: (from node, to node, start vertex) for both ends of every tree edge
    let mut keys: Vec<(usize, usize, VertexId)> = Vec::new();
    for te in &tree.edges {
        for (a, b) in [(te.nodes[0], te.nodes[1]), (te.nodes[1], te.nodes[0])] {
            for &u in &te.ends {
                keys.push((a, b, u));
            }
        }
    }
    keys.sort_unstable();
    let pair_of: HashMap<(usize, usize, VertexId), usize> =
        keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let shared = |a: usize, b: usize| -> &super::tutte::TreeEdge {
        tree.edges
            .iter()
            .find(|e| e.nodes == [a, b] || e.nodes == [b, a])
            .expect("adjacent nodes")
    };

    let mut blocks3 = Vec::new();
    let mut locals = Vec::new();
    for (i, n) in tree.nodes.iter().enumerate() {
        let local: BTreeMap<usize, usize> =
            n.graph.vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut edges: Vec<Block3Edge> = n
            .graph
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
                let ends = [local[&a], local[&b]];
                if e.is_virtual {
                    let te = tree
                        .edges
                        .iter()
                        .find(|t| t.virtual_tag == e.tag)
                        .expect("virtual edge in tree");
                    let nb = if te.nodes[0] == i { te.nodes[1] } else { te.nodes[0] };
                    Block3Edge {
                        ends,
                        label: None,
                        exits: Some([pair_of[&(i, nb, a)], pair_of[&(i, nb, b)]]),
                    }
                } else {
                    let l = e.label.expect("real edge without label");
                    Block3Edge {
                        ends,
                        label: Some(if e.ends[0] == a { l } else { al.inverse(l) }),
                        exits: None,
                    }
                }
            })
            .collect();
        edges.sort_by_key(|e| (e.ends, e.exits.is_some(), e.label, e.exits));
        blocks3.push(Block3 {
            name: node_names[i].clone(),
            orbit: node_names[i].clone(),
            kind: n.kind,
            vertices: n.graph.vertices.iter().map(|&v| names[v].clone()).collect(),
            edges,
            tags: vec![Some(0); n.graph.vertex_count()],
        });
        locals.push(local);
    }
    let mut pairs = Vec::new();
    for (k, &(a, b, u)) in keys.iter().enumerate() {
        let te = shared(a, b);
        let w = if te.ends[0] == u { te.ends[1] } else { te.ends[0] };
        let (su, sw) = (locals[b][&u], locals[b][&w]);
        let entry = blocks3[b]
            .edges
            .iter()
            .position(|e| e.is_virtual() && e.ends == [su.min(sw), su.max(sw)] && e.exits.map(|x| keys[x[0]].1) == Some(a))
            .expect("entry edge present");
        let idx = |x: &(usize, usize, VertexId)| pair_of[x];
        pairs.push(PairOrbit {
            name: format!("{}.{}.{}", node_names[a], node_names[b], if u < w { 0 } else { 1 }),
            block: b,
            start: su,
            entry,
            bar: idx(&(b, a, u)),
            other: idx(&(a, b, w)),
        });
        debug_assert_eq!(pair_of[&(a, b, u)], k);
    }
    let alpha = tree
        .nodes_containing(root)
        .into_iter()
        .min_by_key(|&i| (tree.nodes[i].graph.vertex_count(), i))
        .expect("root lies in some node");
    QuotientDecomposition {
        alphabet: al.clone(),
        root: root_name,
        classes: vec!["o".to_string()],
        y_edges: vec![YEdge {
            name: "e0".to_string(),
            block_orbit: "B0".to_string(),
            class: 0,
            neighbours: Vec::new(),
            block: YBlock::ThreeBlocks {
                node: alpha,
                start: locals[alpha][&root],
            },
        }],
        root_edge: 0,
        blocks3,
        pairs,
    }
}
