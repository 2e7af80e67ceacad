//! Exhaustive self-avoiding walk enumeration from the root of a ball.
//!
//! Every entry point refuses lengths that could reach darts missing at the
//! frontier of the ball, so all results are exact.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::graph::{Alphabet, BallView, GraphError, Label, VertexId, Word};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("length {requested} exceeds the ball radius {radius}; enlarge the ball")]
    Guard { requested: usize, radius: usize },
    #[error("walk leaves the explored ball at step {step} (radius {radius})")]
    OutsideBall { step: usize, radius: usize },
    #[error("bad word template: {0}")]
    Template(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Exact counts `c_0..c_N` of self-avoiding walks from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SawCounts {
    pub counts: Vec<BigUint>,
    pub root: VertexId,
    pub radius_guard: usize,
}

impl SawCounts {
    pub fn max_len(&self) -> usize {
        self.counts.len() - 1
    }

    /// Counts as `u64`, for tests and small censuses.
    pub fn to_u64(&self) -> Vec<u64> {
        self.counts
            .iter()
            .map(|c| u64::try_from(c).expect("count exceeds u64"))
            .collect()
    }
}

fn guard(view: &BallView, n_max: usize) -> Result<(), OracleError> {
    if !view.complete && n_max > view.radius {
        return Err(OracleError::Guard {
            requested: n_max,
            radius: view.radius,
        });
    }
    Ok(())
}

struct Dfs<'a> {
    view: &'a BallView,
    n_max: usize,
    on_path: Vec<bool>,
}

impl Dfs<'_> {
    fn count(&mut self, v: VertexId, depth: usize, counts: &mut [u64]) {
        counts[depth] += 1;
        if depth == self.n_max {
            return;
        }
        let g = &self.view.graph;
        for &d in g.out_darts(v) {
            let w = g.dart(d).head;
            if !self.on_path[w] {
                self.on_path[w] = true;
                self.count(w, depth + 1, counts);
                self.on_path[w] = false;
            }
        }
    }

    fn words(&mut self, v: VertexId, prefix: &mut Word, out: &mut Vec<Word>) {
        out.push(prefix.clone());
        if prefix.len() == self.n_max {
            return;
        }
        let g = &self.view.graph;
        for &d in g.out_darts(v) {
            let dart = g.dart(d);
            if !self.on_path[dart.head] {
                self.on_path[dart.head] = true;
                prefix.push(dart.label);
                self.words(dart.head, prefix, out);
                prefix.pop();
                self.on_path[dart.head] = false;
            }
        }
    }
}

fn first_steps(view: &BallView) -> Vec<(Label, VertexId)> {
    let g = &view.graph;
    g.out_darts(view.root)
        .iter()
        .map(|&d| (g.dart(d).label, g.dart(d).head))
        .collect()
}

fn count_branch(view: &BallView, n_max: usize, first: VertexId) -> Vec<u64> {
    let mut dfs = Dfs {
        view,
        n_max,
        on_path: vec![false; view.graph.vertex_count()],
    };
    dfs.on_path[view.root] = true;
    dfs.on_path[first] = true;
    let mut counts = vec![0u64; n_max + 1];
    dfs.count(first, 1, &mut counts);
    counts
}

fn merge_counts(view: &BallView, n_max: usize, branches: Vec<Vec<u64>>) -> SawCounts {
    let mut counts = vec![BigUint::from(0u32); n_max + 1];
    counts[0] = BigUint::from(1u32);
    for b in branches {
        for (c, x) in counts.iter_mut().zip(b) {
            *c += x;
        }
    }
    SawCounts {
        counts,
        root: view.root,
        radius_guard: view.radius,
    }
}

/// Counts SAWs of each length `0..=n_max` from the root by depth-first search.
pub fn count_saws(view: &BallView, n_max: usize) -> Result<SawCounts, OracleError> {
    guard(view, n_max)?;
    let branches = if n_max == 0 {
        Vec::new()
    } else {
        first_steps(view)
            .into_iter()
            .map(|(_, w)| count_branch(view, n_max, w))
            .collect()
    };
    Ok(merge_counts(view, n_max, branches))
}

/// As [`count_saws`], with the first-step branches run on the current rayon pool.
pub fn count_saws_parallel(view: &BallView, n_max: usize) -> Result<SawCounts, OracleError> {
    guard(view, n_max)?;
    let branches = if n_max == 0 {
        Vec::new()
    } else {
        first_steps(view)
            .into_par_iter()
            .map(|(_, w)| count_branch(view, n_max, w))
            .collect()
    };
    Ok(merge_counts(view, n_max, branches))
}

/// Label words of all SAWs of length `≤ n_max`, sorted shortlex.
pub fn saw_words(view: &BallView, n_max: usize) -> Result<Vec<Word>, OracleError> {
    guard(view, n_max)?;
    let mut dfs = Dfs {
        view,
        n_max,
        on_path: vec![false; view.graph.vertex_count()],
    };
    dfs.on_path[view.root] = true;
    let mut out = Vec::new();
    dfs.words(view.root, &mut Vec::new(), &mut out);
    // DFS visits children in label order, so a stable sort by length is shortlex.
    out.sort_by_key(Vec::len);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Saw,
    /// Step (1-based) that returns to an already visited vertex.
    NotSaw { position: usize },
    /// Step (1-based) whose label has no dart at the current vertex.
    NoSuchEdge { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkResult {
    pub vertices: Vec<VertexId>,
    pub verdict: Verdict,
}

/// Traces `w` from the root, stopping at the first revisit or missing dart.
pub fn walk_of_word(view: &BallView, w: &[Label]) -> Result<WalkResult, OracleError> {
    let g = &view.graph;
    let mut vertices = vec![view.root];
    let mut seen = vec![false; g.vertex_count()];
    seen[view.root] = true;
    let mut cur = view.root;
    for (i, &l) in w.iter().enumerate() {
        let position = i + 1;
        if view.is_frontier(cur) {
            return Err(OracleError::OutsideBall {
                step: position,
                radius: view.radius,
            });
        }
        let Some(next) = g.step(cur, l) else {
            return Ok(WalkResult {
                vertices,
                verdict: Verdict::NoSuchEdge { position },
            });
        };
        vertices.push(next);
        if seen[next] {
            return Ok(WalkResult {
                vertices,
                verdict: Verdict::NotSaw { position },
            });
        }
        seen[next] = true;
        cur = next;
    }
    Ok(WalkResult {
        vertices,
        verdict: Verdict::Saw,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    K,
    L,
    M,
}

impl Slot {
    fn parse(s: &str) -> Option<Slot> {
        match s {
            "k" => Some(Slot::K),
            "l" => Some(Slot::L),
            "m" => Some(Slot::M),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Const(u32),
    Slot(Slot),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub word: Word,
    pub exponent: Exponent,
}

/// A word with exponent slots `k`, `l`, `m`, such as `a c a^k c A^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordTemplate {
    pub pieces: Vec<Piece>,
}

impl WordTemplate {
    /// Parses whitespace separated pieces. A piece is a token or a
    /// parenthesised group of tokens, optionally followed by `^k`, `^l`, `^m`
    /// or `^<integer>`.
    pub fn parse(al: &Alphabet, text: &str) -> Result<WordTemplate, OracleError> {
        let bad = |m: &str| OracleError::Template(format!("{m} in {text:?}"));
        let mut pieces = Vec::new();
        let mut group: Option<Word> = None;
        for raw in text.split_whitespace() {
            let (body, exp) = match raw.rsplit_once('^') {
                Some((b, e)) => (b, Some(e)),
                None => (raw, None),
            };
            let mut body = body;
            let opens = body.starts_with('(');
            if opens {
                if group.is_some() {
                    return Err(bad("nested group"));
                }
                group = Some(Vec::new());
                body = &body[1..];
            }
            let closes = body.ends_with(')');
            if closes {
                body = &body[..body.len() - 1];
            }
            if exp.is_some() && group.is_some() && !closes {
                return Err(bad("exponent inside a group"));
            }
            let mut word = Vec::new();
            if !body.is_empty() {
                word.push(
                    al.lookup(body)
                        .ok_or_else(|| OracleError::Graph(GraphError::UnknownToken(body.into())))?,
                );
            }
            let exponent = match exp {
                None => Exponent::Const(1),
                Some(e) => match Slot::parse(e) {
                    Some(s) => Exponent::Slot(s),
                    None => Exponent::Const(e.parse().map_err(|_| bad("bad exponent"))?),
                },
            };
            match group.as_mut() {
                Some(gw) => {
                    gw.extend(word);
                    if closes {
                        let word = group.take().unwrap_or_default();
                        pieces.push(Piece { word, exponent });
                    }
                }
                None => {
                    if closes {
                        return Err(bad("unbalanced parenthesis"));
                    }
                    if word.is_empty() {
                        return Err(bad("empty piece"));
                    }
                    pieces.push(Piece { word, exponent });
                }
            }
        }
        if group.is_some() {
            return Err(bad("unclosed group"));
        }
        Ok(WordTemplate { pieces })
    }

    pub fn instantiate(&self, k: u32, l: u32, m: u32) -> Word {
        let mut out = Vec::new();
        for p in &self.pieces {
            let e = match p.exponent {
                Exponent::Const(c) => c,
                Exponent::Slot(Slot::K) => k,
                Exponent::Slot(Slot::L) => l,
                Exponent::Slot(Slot::M) => m,
            };
            for _ in 0..e {
                out.extend_from_slice(&p.word);
            }
        }
        out
    }

    pub fn uses(&self, s: Slot) -> bool {
        self.pieces.iter().any(|p| p.exponent == Exponent::Slot(s))
    }
}

/// Exponent ranges for [`probe_family`]; unused slots should be `0..=0`.
#[derive(Clone, Debug)]
pub struct SlotRanges {
    pub k: RangeInclusive<u32>,
    pub l: RangeInclusive<u32>,
    pub m: RangeInclusive<u32>,
}

/// Membership of every instantiated word in the SAW language, keyed by `(k, l, m)`.
pub fn probe_family(
    view: &BallView,
    t: &WordTemplate,
    ranges: &SlotRanges,
) -> Result<BTreeMap<(u32, u32, u32), bool>, OracleError> {
    let mut table = BTreeMap::new();
    for k in ranges.k.clone() {
        for l in ranges.l.clone() {
            for m in ranges.m.clone() {
                let w = t.instantiate(k, l, m);
                let r = walk_of_word(view, &w)?;
                table.insert((k, l, m), r.verdict == Verdict::Saw);
            }
        }
    }
    Ok(table)
}
