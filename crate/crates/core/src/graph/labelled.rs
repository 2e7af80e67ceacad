//! Deterministically labelled graphs with oriented darts and an involution.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::label::{Alphabet, Label};
use super::GraphError;

/// Vertex index inside a [`LabelledGraph`].
pub type VertexId = usize;
/// Dart index inside a [`LabelledGraph`].
pub type DartId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub tail: VertexId,
    pub head: VertexId,
    pub label: Label,
}

/// Finite labelled graph. Darts come in pairs linked by `involution`.
#[derive(Clone, Debug)]
pub struct LabelledGraph {
    alphabet: Arc<Alphabet>,
    names: Vec<String>,
    darts: Vec<Dart>,
    involution: Vec<DartId>,
    out: Vec<Vec<DartId>>,
}

impl LabelledGraph {
    /// Builds a graph without checking its invariants; see [`validate`].
    pub fn from_parts(
        alphabet: Arc<Alphabet>,
        names: Vec<String>,
        darts: Vec<Dart>,
        involution: Vec<DartId>,
    ) -> Result<Self, GraphError> {
        if involution.len() != darts.len() {
            return Err(GraphError::Malformed(format!(
                "{} darts but {} involution entries",
                darts.len(),
                involution.len()
            )));
        }
        for (i, d) in darts.iter().enumerate() {
            if d.tail >= names.len() || d.head >= names.len() {
                return Err(GraphError::Malformed(format!("dart {i} has an unknown endpoint")));
            }
            if d.label.index() >= alphabet.len() {
                return Err(GraphError::Malformed(format!("dart {i} has an unknown label")));
            }
            if involution[i] >= darts.len() {
                return Err(GraphError::Malformed(format!("dart {i} pairs with an unknown dart")));
            }
        }
        let mut out = vec![Vec::new(); names.len()];
        for (i, d) in darts.iter().enumerate() {
            out[d.tail].push(i);
        }
        for list in &mut out {
            list.sort_by_key(|&i| (darts[i].label, darts[i].head));
        }
        Ok(LabelledGraph {
            alphabet,
            names,
            darts,
            involution,
            out,
        })
    }

    /// Starts an empty graph over `alphabet`.
    pub fn builder(alphabet: Arc<Alphabet>) -> GraphBuilder {
        GraphBuilder {
            alphabet,
            names: Vec::new(),
            index: HashMap::new(),
            darts: Vec::new(),
            involution: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, d: DartId) -> Dart {
        self.darts[d]
    }

    pub fn reverse(&self, d: DartId) -> DartId {
        self.involution[d]
    }

    /// Darts leaving `v`, ordered by label.
    pub fn out_darts(&self, v: VertexId) -> &[DartId] {
        &self.out[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Follows the dart labelled `l` out of `v`, if any.
    pub fn step(&self, v: VertexId, l: Label) -> Option<VertexId> {
        self.out[v]
            .iter()
            .map(|&d| self.darts[d])
            .find(|d| d.label == l)
            .map(|d| d.head)
    }

    /// One representative dart per undirected edge (the one with the smaller index).
    pub fn edges(&self) -> impl Iterator<Item = DartId> + '_ {
        (0..self.darts.len()).filter(move |&d| d <= self.involution[d])
    }

    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out[v].iter().map(move |&d| self.darts[d].head)
    }
}

/// Incremental construction of a [`LabelledGraph`] from undirected labelled edges.
pub struct GraphBuilder {
    alphabet: Arc<Alphabet>,
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    darts: Vec<Dart>,
    involution: Vec<DartId>,
}

impl GraphBuilder {
    pub fn vertex(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    /// Adds the dart `u -> v` labelled `l` and its reverse labelled with the inverse of `l`.
    pub fn edge(&mut self, u: VertexId, v: VertexId, l: Label) -> &mut Self {
        let inv = self.alphabet.inverse(l);
        let d = self.darts.len();
        self.darts.push(Dart {
            tail: u,
            head: v,
            label: l,
        });
        self.darts.push(Dart {
            tail: v,
            head: u,
            label: inv,
        });
        self.involution.push(d + 1);
        self.involution.push(d);
        self
    }

    /// Same as [`edge`](Self::edge) with vertices and label given by name.
    pub fn named_edge(&mut self, u: &str, v: &str, token: &str) -> Result<&mut Self, GraphError> {
        let l = self
            .alphabet
            .lookup(token)
            .ok_or_else(|| GraphError::UnknownToken(token.to_string()))?;
        let (u, v) = (self.vertex(u), self.vertex(v));
        Ok(self.edge(u, v, l))
    }

    pub fn build(self) -> Result<LabelledGraph, GraphError> {
        LabelledGraph::from_parts(self.alphabet, self.names, self.darts, self.involution)
    }
}

/// One violated invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Loop { dart: DartId },
    Parallel { darts: Vec<DartId> },
    TailLabelRepeated { vertex: VertexId, label: Label, darts: Vec<DartId> },
    HeadLabelRepeated { vertex: VertexId, label: Label, darts: Vec<DartId> },
    InvolutionNotMatching { dart: DartId },
    InvolutionEndpoints { dart: DartId, partner: DartId },
    InvolutionLabel { dart: DartId, partner: DartId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { dart } => write!(f, "loop at dart {dart}"),
            Violation::Parallel { darts } => write!(f, "parallel darts {darts:?}"),
            Violation::TailLabelRepeated { vertex, label, darts } => write!(
                f,
                "darts {darts:?} leave vertex {vertex} with the same label {}",
                label.0
            ),
            Violation::HeadLabelRepeated { vertex, label, darts } => write!(
                f,
                "darts {darts:?} enter vertex {vertex} with the same label {}",
                label.0
            ),
            Violation::InvolutionNotMatching { dart } => {
                write!(f, "involution is not a perfect matching at dart {dart}")
            }
            Violation::InvolutionEndpoints { dart, partner } => {
                write!(f, "dart {dart} and its partner {partner} do not swap endpoints")
            }
            Violation::InvolutionLabel { dart, partner } => write!(
                f,
                "partner {partner} of dart {dart} does not carry the inverse label"
            ),
        }
    }
}

/// Result of [`validate`]; empty iff the graph satisfies all invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks simplicity, determinism of the labelling and the involution.
pub fn validate(g: &LabelledGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let n = g.darts.len();
    for d in 0..n {
        let dart = g.darts[d];
        if dart.tail == dart.head {
            violations.push(Violation::Loop { dart: d });
        }
        let p = g.involution[d];
        if p == d || g.involution[p] != d {
            violations.push(Violation::InvolutionNotMatching { dart: d });
            continue;
        }
        if d < p {
            let partner = g.darts[p];
            if partner.tail != dart.head || partner.head != dart.tail {
                violations.push(Violation::InvolutionEndpoints { dart: d, partner: p });
            }
            if partner.label != g.alphabet.inverse(dart.label) {
                violations.push(Violation::InvolutionLabel { dart: d, partner: p });
            }
        }
    }

    let mut by_ends: BTreeMap<(VertexId, VertexId), Vec<DartId>> = BTreeMap::new();
    let mut by_tail: BTreeMap<(VertexId, Label), Vec<DartId>> = BTreeMap::new();
    let mut by_head: BTreeMap<(VertexId, Label), Vec<DartId>> = BTreeMap::new();
    for (i, d) in g.darts.iter().enumerate() {
        by_ends.entry((d.tail, d.head)).or_default().push(i);
        by_tail.entry((d.tail, d.label)).or_default().push(i);
        by_head.entry((d.head, d.label)).or_default().push(i);
    }
    for (_, darts) in by_ends {
        if darts.len() > 1 {
            violations.push(Violation::Parallel { darts });
        }
    }
    for ((vertex, label), darts) in by_tail {
        if darts.len() > 1 {
            violations.push(Violation::TailLabelRepeated { vertex, label, darts });
        }
    }
    for ((vertex, label), darts) in by_head {
        if darts.len() > 1 {
            violations.push(Violation::HeadLabelRepeated { vertex, label, darts });
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet() -> Arc<Alphabet> {
        Arc::new(Alphabet::from_pairs(&[("s", "S"), ("S", "s"), ("c", "c")]).unwrap())
    }

    #[test]
    fn single_edge_is_valid() {
        let mut b = LabelledGraph::builder(alphabet());
        b.named_edge("x", "y", "s").unwrap();
        let g = b.build().unwrap();
        assert!(validate(&g).is_valid());
        assert_eq!(g.darts().len(), 2);
    }

    #[test]
    fn repeated_tail_label_is_reported() {
        let al = alphabet();
        let s = al.lookup("s").unwrap();
        let inv = al.lookup("S").unwrap();
        let darts = vec![
            Dart { tail: 0, head: 1, label: s },
            Dart { tail: 1, head: 0, label: inv },
            Dart { tail: 0, head: 2, label: s },
            Dart { tail: 2, head: 0, label: inv },
        ];
        let names = vec!["x".into(), "y".into(), "z".into()];
        let g = LabelledGraph::from_parts(al, names, darts, vec![1, 0, 3, 2]).unwrap();
        let report = validate(&g);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::TailLabelRepeated { vertex: 0, darts, .. } if darts == &vec![0, 2])));
    }

    #[test]
    fn involution_with_equal_tails_is_reported() {
        let al = alphabet();
        let c = al.lookup("c").unwrap();
        let darts = vec![
            Dart { tail: 0, head: 1, label: c },
            Dart { tail: 0, head: 2, label: c },
        ];
        let names = vec!["x".into(), "y".into(), "z".into()];
        let g = LabelledGraph::from_parts(al, names, darts, vec![1, 0]).unwrap();
        let report = validate(&g);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::InvolutionEndpoints { .. })));
    }

    #[test]
    fn loops_and_parallels_are_reported() {
        let al = alphabet();
        let c = al.lookup("c").unwrap();
        let s = al.lookup("s").unwrap();
        let mut b = LabelledGraph::builder(al);
        let x = b.vertex("x");
        let y = b.vertex("y");
        b.edge(x, x, c);
        b.edge(x, y, c);
        b.edge(x, y, s);
        let report = validate(&b.build().unwrap());
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Loop { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Parallel { .. })));
    }
}
