//! Graph description files.
//!
//! A UTF-8 JSON document whose `mode` is `finite`, `cayley` or `quotient`.
//! Words are arrays of tokens; unknown fields are rejected.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::decomposition::{
    quotient_from_cayley, quotient_from_finite, DecompError, QuotientDecomposition,
    QuotientOptions,
};
use crate::graph::{
    validate, Alphabet, BallView, CayleyGraphSpec, Dart, GraphError, LabelDecl, LabelledGraph,
    RewritingSystem, Rule, VertexId,
};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed input at {path}: {message}")]
    Json { path: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteDoc {
    pub labels: Vec<LabelDecl>,
    pub vertices: Vec<String>,
    pub darts: Vec<DartDoc>,
    /// Pairs of dart indices.
    pub involution: Vec<[usize; 2]>,
    /// Root vertex name; the first vertex by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DartDoc {
    pub tail: String,
    pub head: String,
    pub label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyDoc {
    pub generators: Vec<LabelDecl>,
    pub rules: Vec<RuleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_budget: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
enum GraphDoc {
    Finite(FiniteDoc),
    Cayley(CayleyDoc),
}

/// A parsed description file.
#[derive(Clone, Debug)]
pub enum GraphInput {
    Finite { graph: LabelledGraph, root: VertexId },
    Cayley(CayleyGraphSpec),
    Quotient(QuotientDecomposition),
}

fn json_error(e: serde_path_to_error::Error<serde_json::Error>) -> InputError {
    InputError::Json {
        path: e.path().to_string(),
        message: e.into_inner().to_string(),
    }
}

impl FiniteDoc {
    pub fn build(&self) -> Result<(LabelledGraph, VertexId), InputError> {
        let al = Arc::new(Alphabet::new(&self.labels)?);
        let vertex = |name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| GraphError::Malformed(format!("unknown vertex {name:?}")))
        };
        let mut darts = Vec::with_capacity(self.darts.len());
        for d in &self.darts {
            darts.push(Dart {
                tail: vertex(&d.tail)?,
                head: vertex(&d.head)?,
                label: al
                    .lookup(&d.label)
                    .ok_or_else(|| GraphError::UnknownToken(d.label.clone()))?,
            });
        }
        let mut involution = vec![usize::MAX; darts.len()];
        for &[x, y] in &self.involution {
            if x >= darts.len() || y >= darts.len() {
                return Err(GraphError::Malformed(format!("involution pair [{x}, {y}] out of range")).into());
            }
            if involution[x] != usize::MAX || involution[y] != usize::MAX {
                return Err(GraphError::Malformed(format!("dart paired twice in [{x}, {y}]")).into());
            }
            involution[x] = y;
            involution[y] = x;
        }
        if let Some(i) = involution.iter().position(|&x| x == usize::MAX) {
            return Err(GraphError::Malformed(format!("dart {i} has no partner")).into());
        }
        let root = match &self.root {
            Some(r) => vertex(r)?,
            None if self.vertices.is_empty() => {
                return Err(GraphError::Malformed("no vertices".to_string()).into())
            }
            None => 0,
        };
        let g = LabelledGraph::from_parts(al, self.vertices.clone(), darts, involution)?;
        Ok((g, root))
    }
}

impl CayleyDoc {
    pub fn build(&self) -> Result<CayleyGraphSpec, InputError> {
        let al = Arc::new(Alphabet::new(&self.generators)?);
        let rules = self
            .rules
            .iter()
            .map(|r| {
                Ok(Rule {
                    lhs: al.parse_word(&r.lhs)?,
                    rhs: al.parse_word(&r.rhs)?,
                })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        let mut rs = RewritingSystem::new(al, rules)?;
        if let Some(b) = self.step_budget {
            rs = rs.with_step_budget(b);
        }
        Ok(CayleyGraphSpec::new(rs)?)
    }
}

/// Parses a description file. Finite graphs are returned as given, even if
/// they violate the labelling invariants; see [`GraphInput::check`].
pub fn parse_input(text: &str) -> Result<GraphInput, InputError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::Json {
        path: ".".to_string(),
        message: e.to_string(),
    })?;
    if value.get("mode").and_then(|m| m.as_str()) == Some("quotient") {
        return Ok(GraphInput::Quotient(QuotientDecomposition::from_json(text)?));
    }
    let doc: GraphDoc = serde_path_to_error::deserialize(value).map_err(json_error)?;
    Ok(match doc {
        GraphDoc::Finite(f) => {
            let (graph, root) = f.build()?;
            GraphInput::Finite { graph, root }
        }
        GraphDoc::Cayley(c) => GraphInput::Cayley(c.build()?),
    })
}

impl GraphInput {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        match self {
            GraphInput::Finite { graph, .. } => graph.alphabet(),
            GraphInput::Cayley(s) => s.alphabet(),
            GraphInput::Quotient(q) => &q.alphabet,
        }
    }

    /// Labelling invariants of a finite graph; the other modes are checked while parsing.
    pub fn check(&self) -> Result<(), InputError> {
        if let GraphInput::Finite { graph, .. } = self {
            let report = validate(graph);
            if !report.is_valid() {
                return Err(GraphError::Invalid(report).into());
            }
        }
        Ok(())
    }

    /// The ball of radius `r` around the root; finite graphs are returned whole.
    pub fn ball(&self, r: usize) -> Result<BallView, InputError> {
        match self {
            GraphInput::Finite { graph, root } => {
                self.check()?;
                Ok(BallView::whole(graph.clone(), *root))
            }
            GraphInput::Cayley(s) => Ok(crate::graph::expand_ball(s, r)?),
            GraphInput::Quotient(_) => Err(GraphError::InvalidSpec(
                "a quotient file does not describe a ball".to_string(),
            )
            .into()),
        }
    }

    /// Quotient data. For Cayley inputs with `radius = None` the radius is
    /// raised from 2 until the quotient closes, up to `max_radius`.
    pub fn quotient(
        &self,
        radius: Option<usize>,
        max_radius: usize,
        opts: &QuotientOptions,
    ) -> Result<QuotientDecomposition, InputError> {
        match self {
            GraphInput::Finite { .. } => Ok(quotient_from_finite(&self.ball(0)?)?),
            GraphInput::Quotient(q) => Ok(q.clone()),
            GraphInput::Cayley(s) => match radius {
                Some(r) => Ok(quotient_from_cayley(s, r, opts)?),
                None => {
                    let mut last = None;
                    for r in 2..=max_radius.max(2) {
                        match quotient_from_cayley(s, r, opts) {
                            Ok(q) => return Ok(q),
                            Err(e @ DecompError::IncreaseRadius { .. }) => last = Some(e),
                            Err(e) => return Err(e.into()),
                        }
                    }
                    Err(last.expect("at least one radius tried").into())
                }
            },
        }
    }
}
