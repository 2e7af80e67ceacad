//! JSON form of [`QuotientDecomposition`].
//!
//! Labels are written as tokens, indices refer to positions in the
//! enclosing lists. Loading validates the result. The optional `mode`
//! field lets the document double as a graph description file.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graph::{Alphabet, Label, LabelDecl};

use super::quotient::{
    Block3, Block3Edge, FiniteBlock, PairOrbit, QuotientDecomposition, YBlock, YEdge,
};
use super::tutte::NodeKind;
use super::DecompError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    mode: Option<String>,
    alphabet: Vec<LabelDecl>,
    root: String,
    blocks3: Vec<Block3Doc>,
    edge_orbits: Vec<PairDoc>,
    level2: Level2Doc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Block3Doc {
    name: String,
    orbit: String,
    kind: NodeKind,
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
    tags: Vec<Option<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    ends: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exits: Option<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    name: String,
    block: usize,
    start: usize,
    entry: usize,
    bar: usize,
    other: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Level2Doc {
    classes: Vec<String>,
    y_edges: Vec<YEdgeDoc>,
    root_edge: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct YEdgeDoc {
    name: String,
    block_orbit: String,
    class: usize,
    neighbours: Vec<usize>,
    block: BlockDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum BlockDoc {
    Finite {
        vertices: Vec<String>,
        edges: Vec<FiniteEdgeDoc>,
        cut: usize,
        tags: Vec<Option<usize>>,
    },
    ThreeBlocks {
        node: usize,
        start: usize,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiniteEdgeDoc {
    ends: [usize; 2],
    label: String,
}

fn invalid(path: String, message: impl Into<String>) -> DecompError {
    DecompError::Invalid {
        path,
        message: message.into(),
    }
}

impl QuotientDecomposition {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let al = &self.alphabet;
        let tok = |l: Label| al.token(l).to_string();
        let doc = Document {
            mode: Some("quotient".to_string()),
            alphabet: al.decls(),
            root: self.root.clone(),
            blocks3: self
                .blocks3
                .iter()
                .map(|b| Block3Doc {
                    name: b.name.clone(),
                    orbit: b.orbit.clone(),
                    kind: b.kind,
                    vertices: b.vertices.clone(),
                    edges: b
                        .edges
                        .iter()
                        .map(|e| EdgeDoc {
                            ends: e.ends,
                            label: e.label.map(tok),
                            exits: e.exits,
                        })
                        .collect(),
                    tags: b.tags.clone(),
                })
                .collect(),
            edge_orbits: self
                .pairs
                .iter()
                .map(|p| PairDoc {
                    name: p.name.clone(),
                    block: p.block,
                    start: p.start,
                    entry: p.entry,
                    bar: p.bar,
                    other: p.other,
                })
                .collect(),
            level2: Level2Doc {
                classes: self.classes.clone(),
                y_edges: self
                    .y_edges
                    .iter()
                    .map(|e| YEdgeDoc {
                        name: e.name.clone(),
                        block_orbit: e.block_orbit.clone(),
                        class: e.class,
                        neighbours: e.neighbours.clone(),
                        block: match &e.block {
                            YBlock::Finite(b) => BlockDoc::Finite {
                                vertices: b.vertices.clone(),
                                edges: b
                                    .edges
                                    .iter()
                                    .map(|&(ends, l)| FiniteEdgeDoc { ends, label: tok(l) })
                                    .collect(),
                                cut: b.cut,
                                tags: b.tags.clone(),
                            },
                            YBlock::ThreeBlocks { node, start } => BlockDoc::ThreeBlocks {
                                node: *node,
                                start: *start,
                            },
                        },
                    })
                    .collect(),
                root_edge: self.root_edge,
            },
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Parses and validates a document written by [`QuotientDecomposition::to_json`].
    pub fn from_json(text: &str) -> Result<Self, DecompError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            invalid(path, e.into_inner().to_string())
        })?;
        if doc.mode.as_deref().is_some_and(|m| m != "quotient") {
            return Err(invalid("mode".to_string(), "expected \"quotient\""));
        }
        let al = Arc::new(Alphabet::new(&doc.alphabet)?);
        let label = |path: String, t: &str| {
            al.lookup(t)
                .ok_or_else(|| invalid(path, format!("unknown label {t:?}")))
        };
        let mut blocks3 = Vec::with_capacity(doc.blocks3.len());
        for (i, b) in doc.blocks3.into_iter().enumerate() {
            let mut edges = Vec::with_capacity(b.edges.len());
            for (k, e) in b.edges.into_iter().enumerate() {
                let path = format!("blocks3[{i}].edges[{k}]");
                let l = match &e.label {
                    Some(t) => Some(label(format!("{path}.label"), t)?),
                    None => None,
                };
                if l.is_some() == e.exits.is_some() {
                    return Err(invalid(path, "exactly one of label and exits is required"));
                }
                edges.push(Block3Edge {
                    ends: e.ends,
                    label: l,
                    exits: e.exits,
                });
            }
            blocks3.push(Block3 {
                name: b.name,
                orbit: b.orbit,
                kind: b.kind,
                vertices: b.vertices,
                edges,
                tags: b.tags,
            });
        }
        let pairs = doc
            .edge_orbits
            .into_iter()
            .map(|p| PairOrbit {
                name: p.name,
                block: p.block,
                start: p.start,
                entry: p.entry,
                bar: p.bar,
                other: p.other,
            })
            .collect();
        let mut y_edges = Vec::with_capacity(doc.level2.y_edges.len());
        for (i, e) in doc.level2.y_edges.into_iter().enumerate() {
            let block = match e.block {
                BlockDoc::Finite {
                    vertices,
                    edges,
                    cut,
                    tags,
                } => {
                    let mut out = Vec::with_capacity(edges.len());
                    for (k, fe) in edges.into_iter().enumerate() {
                        let path = format!("level2.y_edges[{i}].block.edges[{k}].label");
                        out.push((fe.ends, label(path, &fe.label)?));
                    }
                    YBlock::Finite(FiniteBlock {
                        vertices,
                        edges: out,
                        cut,
                        tags,
                    })
                }
                BlockDoc::ThreeBlocks { node, start } => YBlock::ThreeBlocks { node, start },
            };
            y_edges.push(YEdge {
                name: e.name,
                block_orbit: e.block_orbit,
                class: e.class,
                neighbours: e.neighbours,
                block,
            });
        }
        let q = QuotientDecomposition {
            alphabet: al.clone(),
            root: doc.root,
            classes: doc.level2.classes,
            y_edges,
            root_edge: doc.level2.root_edge,
            blocks3,
            pairs,
        };
        q.validate()?;
        Ok(q)
    }
}
