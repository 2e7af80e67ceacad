//! Finite balls of Cayley graphs given by complete rewriting systems.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::label::{shortlex_cmp, Alphabet, Label, Word};
use super::labelled::{Dart, LabelledGraph, VertexId};
use super::rewriting::{check_confluence, RewritingSystem};
use super::GraphError;

/// Cayley graph of the group presented by `system`, rooted at the identity.
#[derive(Clone, Debug)]
pub struct CayleyGraphSpec {
    pub system: RewritingSystem,
}

impl CayleyGraphSpec {
    /// Wraps `system` after checking that it is locally confluent.
    pub fn new(system: RewritingSystem) -> Result<Self, GraphError> {
        let report = check_confluence(&system)?;
        if let Some(p) = report.unresolved.first() {
            let al = system.alphabet();
            return Err(GraphError::NotConfluent {
                unresolved: report.unresolved.len(),
                example: format!(
                    "{} reduces to both {} and {}",
                    render_vertex(al, &p.overlap),
                    render_vertex(al, &p.left),
                    render_vertex(al, &p.right)
                ),
            });
        }
        Ok(CayleyGraphSpec { system })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.system.alphabet()
    }

    /// Normal form of `g^{-1}·x`, i.e. the image of `x` under the left
    /// translation taking `g` to the identity.
    pub fn translate_to_identity(&self, g: &[Label], x: &[Label]) -> Result<Word, GraphError> {
        let mut w = self.alphabet().inverse_word(g);
        w.extend_from_slice(x);
        self.system.normal_form(&w)
    }
}

/// The name used for a group element: tokens joined by spaces, `ε` for the identity.
pub fn render_vertex(al: &Alphabet, w: &[Label]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        al.render(w)
    }
}

/// A finite piece of a (possibly infinite) labelled graph around a root.
///
/// Every vertex at distance `< radius` from the root carries all of its darts.
#[derive(Clone, Debug)]
pub struct BallView {
    pub graph: LabelledGraph,
    pub root: VertexId,
    pub radius: usize,
    /// Graph distance from the root.
    pub distance: Vec<usize>,
    /// Normal-form words of the vertices; present for Cayley balls.
    pub words: Option<Vec<Word>>,
    /// True when the view is a whole finite graph (nothing was cut off).
    pub complete: bool,
}

impl BallView {
    /// Views a whole finite graph from `root`.
    pub fn whole(graph: LabelledGraph, root: VertexId) -> Self {
        let distance = bfs_distances(&graph, root);
        let radius = graph.vertex_count();
        BallView {
            graph,
            root,
            radius,
            distance,
            words: None,
            complete: true,
        }
    }

    pub fn is_frontier(&self, v: VertexId) -> bool {
        !self.complete && self.distance[v] >= self.radius
    }

    pub fn frontier(&self) -> Vec<VertexId> {
        self.graph
            .vertices()
            .filter(|&v| self.is_frontier(v))
            .collect()
    }

    pub fn word(&self, v: VertexId) -> Option<&Word> {
        self.words.as_ref().map(|w| &w[v])
    }

    pub fn vertex_of_word(&self, w: &[Label]) -> Option<VertexId> {
        self.words.as_ref()?.iter().position(|x| x.as_slice() == w)
    }

    /// The sub-ball of radius `r ≤ self.radius`.
    pub fn restricted(&self, r: usize) -> Result<BallView, GraphError> {
        if r > self.radius {
            return Err(GraphError::Malformed(format!(
                "cannot restrict a ball of radius {} to radius {r}",
                self.radius
            )));
        }
        let keep: Vec<VertexId> = self
            .graph
            .vertices()
            .filter(|&v| self.distance[v] <= r)
            .collect();
        let mut new_index = vec![usize::MAX; self.graph.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let mut darts = Vec::new();
        let mut old_to_new = HashMap::new();
        for (i, d) in self.graph.darts().iter().enumerate() {
            if new_index[d.tail] != usize::MAX && new_index[d.head] != usize::MAX {
                old_to_new.insert(i, darts.len());
                darts.push(Dart {
                    tail: new_index[d.tail],
                    head: new_index[d.head],
                    label: d.label,
                });
            }
        }
        let mut involution = vec![0; darts.len()];
        for (&old, &new) in &old_to_new {
            involution[new] = old_to_new[&self.graph.reverse(old)];
        }
        let names = keep.iter().map(|&v| self.graph.name(v).to_string()).collect();
        let graph = LabelledGraph::from_parts(self.graph.alphabet().clone(), names, darts, involution)?;
        Ok(BallView {
            graph,
            root: new_index[self.root],
            radius: r,
            distance: keep.iter().map(|&v| self.distance[v]).collect(),
            words: self
                .words
                .as_ref()
                .map(|ws| keep.iter().map(|&v| ws[v].clone()).collect()),
            complete: self.complete,
        })
    }
}

pub(crate) fn bfs_distances(g: &LabelledGraph, root: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbours(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Breadth-first expansion of the Cayley graph up to distance `r`.
///
/// Vertices are ordered by shortlex of their normal forms; the graph is the
/// subgraph induced on the ball.
pub fn expand_ball(spec: &CayleyGraphSpec, r: usize) -> Result<BallView, GraphError> {
    let rs = &spec.system;
    let al = spec.alphabet().clone();
    let gens: Vec<Label> = al.labels().collect();

    // Left translations make every local defect visible at the identity.
    let mut seen_at_identity: HashMap<Word, Label> = HashMap::new();
    for &s in &gens {
        let nf = rs.normal_form(&[s])?;
        if nf.is_empty() {
            return Err(GraphError::InvalidSpec(format!(
                "generator {} is the identity",
                al.token(s)
            )));
        }
        if let Some(prev) = seen_at_identity.insert(nf, s) {
            return Err(GraphError::InvalidSpec(format!(
                "generators {} and {} give parallel edges",
                al.token(prev),
                al.token(s)
            )));
        }
        let back = rs.normal_form(&[s, al.inverse(s)])?;
        if !back.is_empty() {
            return Err(GraphError::InvalidSpec(format!(
                "{} followed by its declared inverse {} is not trivial",
                al.token(s),
                al.token(al.inverse(s))
            )));
        }
        if !al.is_involution(s) && rs.normal_form(&[s, s])?.is_empty() {
            return Err(GraphError::InvalidSpec(format!(
                "generator {} has order 2 but is declared with inverse {}",
                al.token(s),
                al.token(al.inverse(s))
            )));
        }
    }

    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut distance = vec![0usize];
    index.insert(Vec::new(), 0);
    let mut frontier_start = 0;
    for d in 0..r {
        let level_end = words.len();
        for v in frontier_start..level_end {
            for &s in &gens {
                let mut w = words[v].clone();
                w.push(s);
                let nf = rs.normal_form(&w)?;
                if !index.contains_key(&nf) {
                    index.insert(nf.clone(), words.len());
                    words.push(nf);
                    distance.push(d + 1);
                }
            }
        }
        frontier_start = level_end;
    }

    let mut order: Vec<usize> = (0..words.len()).collect();
    order.sort_by(|&a, &b| shortlex_cmp(&words[a], &words[b]));
    let mut rank = vec![0usize; words.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let words: Vec<Word> = order.iter().map(|&o| words[o].clone()).collect();
    let distance: Vec<usize> = order.iter().map(|&o| distance[o]).collect();
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let mut darts = Vec::new();
    let mut dart_at: HashMap<(usize, Label), usize> = HashMap::new();
    for (v, w) in words.iter().enumerate() {
        for &s in &gens {
            let mut x = w.clone();
            x.push(s);
            let nf = rs.normal_form(&x)?;
            if let Some(&h) = index.get(&nf) {
                dart_at.insert((v, s), darts.len());
                darts.push(Dart {
                    tail: v,
                    head: h,
                    label: s,
                });
            }
        }
    }
    let mut involution = vec![0; darts.len()];
    for (i, d) in darts.iter().enumerate() {
        let back = *dart_at.get(&(d.head, al.inverse(d.label))).ok_or_else(|| {
            GraphError::InvalidSpec("reverse dart missing inside the ball".to_string())
        })?;
        if darts[back].head != d.tail {
            return Err(GraphError::InvalidSpec(format!(
                "inverse of {} does not lead back",
                al.token(d.label)
            )));
        }
        involution[i] = back;
    }
    let names = words.iter().map(|w| render_vertex(&al, w)).collect();
    let graph = LabelledGraph::from_parts(al, names, darts, involution)?;
    Ok(BallView {
        graph,
        root: rank[0],
        radius: r,
        distance,
        words: Some(words),
        complete: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::labelled::validate;

    pub(crate) fn ladder_spec() -> CayleyGraphSpec {
        let al = Arc::new(Alphabet::from_pairs(&[("a", "A"), ("A", "a"), ("c", "c")]).unwrap());
        let rs = RewritingSystem::from_strs(
            al,
            &[("a A", ""), ("A a", ""), ("c c", ""), ("c a", "a c"), ("c A", "A c")],
        )
        .unwrap();
        CayleyGraphSpec::new(rs).unwrap()
    }

    #[test]
    fn integers_ball_is_a_path() {
        let al = Arc::new(Alphabet::from_pairs(&[("a", "A"), ("A", "a")]).unwrap());
        let rs = RewritingSystem::from_strs(al, &[("a A", ""), ("A a", "")]).unwrap();
        let spec = CayleyGraphSpec::new(rs).unwrap();
        let ball = expand_ball(&spec, 2).unwrap();
        assert_eq!(ball.graph.vertex_count(), 5);
        assert_eq!(ball.graph.edges().count(), 4);
        assert_eq!(ball.root, 0);
        assert_eq!(ball.graph.degree(ball.root), 2);
        assert_eq!(ball.frontier().len(), 2);
        assert!(validate(&ball.graph).is_valid());
    }

    #[test]
    fn ladder_radius_one() {
        let ball = expand_ball(&ladder_spec(), 1).unwrap();
        let names: Vec<&str> = ball.graph.names().iter().map(String::as_str).collect();
        assert_eq!(names, vec!["ε", "a", "A", "c"]);
        assert!(validate(&ball.graph).is_valid());
    }

    #[test]
    fn identity_generator_is_rejected() {
        let al = Arc::new(Alphabet::from_pairs(&[("a", "a"), ("c", "c")]).unwrap());
        let rs = RewritingSystem::from_strs(al, &[("a a", ""), ("c", "")]).unwrap();
        let spec = CayleyGraphSpec::new(rs).unwrap();
        assert!(matches!(expand_ball(&spec, 1), Err(GraphError::InvalidSpec(_))));
    }

    #[test]
    fn unconfluent_system_is_rejected() {
        let al = Arc::new(Alphabet::from_pairs(&[("a", "a"), ("b", "b")]).unwrap());
        let rs = RewritingSystem::from_strs(al, &[("a a", ""), ("a b a b a b", "")]).unwrap();
        assert!(matches!(
            CayleyGraphSpec::new(rs),
            Err(GraphError::NotConfluent { .. })
        ));
    }
}
