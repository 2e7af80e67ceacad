//! Grammar construction from quotient data.
//!
//! Inside one infinite block, a walk is cut into its pieces in the 3-blocks
//! it passes through. Variables, per pair orbit `P`:
//!
//! * `V0_P`, `V1_P`: walks that enter the far 3-block of `P` at its start
//!   vertex and end inside the subtree behind it; with `1` the second vertex
//!   of the shared virtual edge counts as already visited.
//! * `U_P`: walks crossing that subtree from the start to the second vertex,
//!   standing in for a traversal of the virtual edge.
//!
//! Across blocks, the block-cutvertex structure gives a right-linear grammar
//! over block languages `L(e)` and `L(e,f)` (walks in the block of `e`
//! ending at a vertex whose incidence lies in `f`), which are substituted
//! afterwards.

use std::collections::{BTreeMap, HashMap};

use crate::decomposition::{FiniteBlock, QuotientDecomposition, YBlock};

use super::cfg::{ContextFreeGrammar, Symbol};
use super::walks::{block_walks, walk_sets};
use super::GrammarError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Var {
    Root,
    V(u8, usize),
    U(usize),
}

fn var_name(q: &QuotientDecomposition, v: Var) -> String {
    match v {
        Var::Root => "S".to_string(),
        Var::V(w, p) => format!("V{w}_{}", q.pairs[p].name),
        Var::U(p) => format!("U_{}", q.pairs[p].name),
    }
}

/// Restriction on where the walks of an infinite block may end.
pub type EndFilter = Option<usize>;

/// Grammar of the walks in the infinite block containing 3-block `node`,
/// starting at its vertex `start`. Only nonempty walks are produced unless
/// `with_empty`; with `end_tag = Some(f)` only walks ending at a vertex
/// tagged `f` are kept.
pub fn walk_grammar(
    q: &QuotientDecomposition,
    node: usize,
    start: usize,
    end_tag: EndFilter,
    with_empty: bool,
) -> Result<ContextFreeGrammar, GrammarError> {
    Ok(schema_grammar(q, node, start, end_tag, with_empty, false)?.reduce())
}

/// With `all_pairs`, the variables of every pair orbit are declared and
/// expanded in pair order, reachable or not, and nothing is pruned.
fn schema_grammar(
    q: &QuotientDecomposition,
    node: usize,
    start: usize,
    end_tag: EndFilter,
    with_empty: bool,
    all_pairs: bool,
) -> Result<ContextFreeGrammar, GrammarError> {
    if node >= q.blocks3.len() || start >= q.blocks3[node].vertices.len() {
        return Err(GrammarError::Unsupported(format!(
            "no 3-block {node} with vertex {start}"
        )));
    }
    let mut g = ContextFreeGrammar::new("S")?;
    let al = q.alphabet.clone();
    let term: Vec<usize> = al
        .labels()
        .map(|l| g.terminal(al.token(l)))
        .collect::<Result<_, _>>()?;
    let mut index: HashMap<Var, usize> = HashMap::new();
    index.insert(Var::Root, 0);
    let mut queue = vec![Var::Root];
    let mut get = |g: &mut ContextFreeGrammar, v: Var, queue: &mut Vec<Var>| {
        if let Some(&i) = index.get(&v) {
            return Ok::<usize, GrammarError>(i);
        }
        let i = g.variable(&var_name(q, v))?;
        index.insert(v, i);
        queue.push(v);
        Ok(i)
    };
    if all_pairs {
        for p in 0..q.pairs.len() {
            for v in [Var::V(0, p), Var::V(1, p), Var::U(p)] {
                get(&mut g, v, &mut queue)?;
            }
        }
    }
    let mut done = 0;
    while done < queue.len() {
        let var = queue[done];
        done += 1;
        let lhs = get(&mut g, var, &mut queue)?;
        let (bi, walks, entry, second) = match var {
            Var::Root => (node, block_walks(&q.blocks3[node], start, None), None, None),
            Var::V(w, p) => {
                let sets = walk_sets(q, p);
                let pair = &q.pairs[p];
                let walks = if w == 0 { sets.free } else { sets.avoiding };
                (pair.block, walks, Some(pair.entry), Some(pair.second(q)))
            }
            Var::U(p) => {
                let pair = &q.pairs[p];
                (pair.block, walk_sets(q, p).crossing, Some(pair.entry), Some(pair.second(q)))
            }
        };
        let b = &q.blocks3[bi];
        for pi in &walks {
            let mut body = Vec::with_capacity(pi.len() + 1);
            for s in &pi.steps {
                let e = &b.edges[s.edge];
                match (e.label, e.exits) {
                    (Some(l), _) => {
                        let l = if e.ends[0] == s.from { l } else { al.inverse(l) };
                        body.push(Symbol::T(term[l.index()]));
                    }
                    (None, Some(exits)) => {
                        let side = e.side_of(s.from).expect("step leaves from an endpoint");
                        body.push(Symbol::V(get(&mut g, Var::U(exits[side]), &mut queue)?));
                    }
                    (None, None) => {
                        return Err(GrammarError::Unsupported(format!(
                            "edge {} of {} has neither label nor exits",
                            s.edge, b.name
                        )))
                    }
                }
            }
            if matches!(var, Var::U(_)) {
                g.add(lhs, body);
                continue;
            }
            let end = pi.end();
            let tag_ok = end_tag.is_none_or(|f| b.tags.get(end).copied().flatten() == Some(f));
            if pi.ends_real(b) && tag_ok {
                g.add(lhs, body.clone());
            }
            if pi.is_empty() && var == Var::Root && with_empty {
                g.add(lhs, Vec::new());
            }
            for (i, e) in b.edges.iter().enumerate() {
                let (Some(exits), Some(side)) = (e.exits, e.side_of(end)) else {
                    continue;
                };
                if Some(i) == entry || pi.uses(i) || e.ends[0] == e.ends[1] {
                    continue;
                }
                let far = e.ends[1 - side];
                let sup = match var {
                    Var::V(1, _) => u8::from(pi.visits(far) || Some(far) == second),
                    _ => u8::from(pi.visits(far)),
                };
                let mut cont = body.clone();
                cont.push(Symbol::V(get(&mut g, Var::V(sup, exits[side]), &mut queue)?));
                g.add(lhs, cont);
            }
        }
    }
    Ok(g)
}

/// The walk grammar of a graph that is a single infinite block, including
/// the empty walk. Variables are `S` followed by `V0_P`, `V1_P`, `U_P` for
/// every pair orbit `P`.
pub fn build_grammar_2connected(
    q: &QuotientDecomposition,
) -> Result<ContextFreeGrammar, GrammarError> {
    if !q.is_two_connected() {
        return Err(GrammarError::Unsupported(
            "the graph is not a single infinite block".to_string(),
        ));
    }
    match q.y_edges[0].block {
        YBlock::ThreeBlocks { node, start } => schema_grammar(q, node, start, None, true, true),
        YBlock::Finite(_) => unreachable!("checked above"),
    }
}

/// Name of the block language terminal; `None` for `e` stands for the root.
fn language_name(q: &QuotientDecomposition, e: Option<usize>, f: Option<usize>) -> String {
    let e = e.map_or("o", |e| q.y_edges[e].name.as_str());
    match f {
        Some(f) => format!("L({e},{})", q.y_edges[f].name),
        None => format!("L({e})"),
    }
}

/// Right-linear grammar over block language terminals: `S` starts at the
/// root, `W_e` continues into a block of edge orbit `e`.
pub fn build_grammar_blocklevel(
    q: &QuotientDecomposition,
) -> Result<ContextFreeGrammar, GrammarError> {
    let mut g = ContextFreeGrammar::new("S")?;
    let w: Vec<usize> = q
        .y_edges
        .iter()
        .map(|e| g.variable(&format!("W_{}", e.name)))
        .collect::<Result<_, _>>()?;
    let heads: Vec<(usize, Option<usize>)> = std::iter::once((0, None))
        .chain(w.iter().enumerate().map(|(e, &v)| (v, Some(e))))
        .collect();
    for (lhs, e) in heads {
        let t = g.terminal(&language_name(q, e, None))?;
        g.add(lhs, vec![Symbol::T(t)]);
        for (f, fe) in q.y_edges.iter().enumerate() {
            for &h in &fe.neighbours {
                let t = g.terminal(&language_name(q, e, Some(f)))?;
                g.add(lhs, vec![Symbol::T(t), Symbol::V(w[h])]);
            }
        }
    }
    Ok(g)
}

/// Self-avoiding walks of a finite block from its cutvertex, as token words.
fn finite_walks(q: &QuotientDecomposition, b: &FiniteBlock) -> Vec<(Vec<String>, usize)> {
    let n = b.vertices.len();
    let mut adj: Vec<Vec<(usize, String)>> = vec![Vec::new(); n];
    for &([x, y], l) in &b.edges {
        adj[x].push((y, q.alphabet.token(l).to_string()));
        adj[y].push((x, q.alphabet.token(q.alphabet.inverse(l)).to_string()));
    }
    for a in &mut adj {
        a.sort();
    }
    let mut out = Vec::new();
    let mut seen = vec![false; n];
    fn go(
        v: usize,
        adj: &[Vec<(usize, String)>],
        seen: &mut [bool],
        word: &mut Vec<String>,
        out: &mut Vec<(Vec<String>, usize)>,
    ) {
        out.push((word.clone(), v));
        for (w, t) in &adj[v] {
            if !seen[*w] {
                seen[*w] = true;
                word.push(t.clone());
                go(*w, adj, seen, word, out);
                word.pop();
                seen[*w] = false;
            }
        }
    }
    seen[b.cut] = true;
    go(b.cut, &adj, &mut seen, &mut Vec::new(), &mut out);
    out
}

fn block_language(
    q: &QuotientDecomposition,
    e: Option<usize>,
    f: Option<usize>,
) -> Result<ContextFreeGrammar, GrammarError> {
    let eo = e.unwrap_or(q.root_edge);
    let with_empty = e.is_none() && (f.is_none() || f == Some(eo));
    match &q.y_edges[eo].block {
        YBlock::ThreeBlocks { node, start } => walk_grammar(q, *node, *start, f, with_empty),
        YBlock::Finite(b) => {
            let mut g = ContextFreeGrammar::new("S")?;
            for l in q.alphabet.labels() {
                g.terminal(q.alphabet.token(l))?;
            }
            for (word, end) in finite_walks(q, b) {
                let keep = if word.is_empty() {
                    with_empty
                } else {
                    f.is_none_or(|f| b.tags[end] == Some(f))
                };
                if keep {
                    let body = word
                        .iter()
                        .map(|t| g.terminal(t).map(Symbol::T))
                        .collect::<Result<Vec<_>, _>>()?;
                    g.add(0, body);
                }
            }
            Ok(g)
        }
    }
}

/// Every block language terminal of [`build_grammar_blocklevel`] with its grammar.
pub fn block_languages(
    q: &QuotientDecomposition,
) -> Result<BTreeMap<String, ContextFreeGrammar>, GrammarError> {
    let mut out = BTreeMap::new();
    let ny = q.y_edges.len();
    let heads = std::iter::once(None).chain((0..ny).map(Some));
    for e in heads {
        out.insert(language_name(q, e, None), block_language(q, e, None)?);
        for f in 0..ny {
            out.insert(language_name(q, e, Some(f)), block_language(q, e, Some(f))?);
        }
    }
    Ok(out)
}

/// The grammar of all self-avoiding walks from the root, over the label tokens.
pub fn build_saw_grammar(q: &QuotientDecomposition) -> Result<ContextFreeGrammar, GrammarError> {
    let g = if q.is_two_connected() {
        build_grammar_2connected(q)?
    } else {
        build_grammar_blocklevel(q)?.substitute(&block_languages(q)?)?
    };
    g.check_proper()?;
    Ok(g)
}
