//! Naive triconnected components, used as an oracle for the Tutte decomposition.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use sawlang::decomposition::multigraph::MultiGraph;
use sawlang::decomposition::tutte::{tutte_decomposition, NodeKind, ThreeBlockTree};

/// Open ear decomposition: a cycle, then paths between distinct old vertices.
/// Every 2-connected multigraph arises this way.
pub fn ear_graph(cycle: usize, ears: &[(usize, usize, usize)], max_vertices: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..cycle).map(|i| (i, (i + 1) % cycle)).collect();
    let mut n = cycle;
    for &(a, b, len) in ears {
        let a = a % n;
        let mut b = b % n;
        if a == b {
            b = (a + 1) % n;
        }
        let len = if n + len > max_vertices { 0 } else { len };
        let mut prev = a;
        for _ in 0..len {
            pairs.push((prev, n));
            prev = n;
            n += 1;
        }
        pairs.push((prev, b));
    }
    pairs
}

#[derive(Clone, Debug)]
struct E {
    ends: [usize; 2],
    tag: usize,
    real: bool,
}

fn vertices(c: &[E]) -> BTreeSet<usize> {
    c.iter().flat_map(|e| e.ends).collect()
}

/// Separation classes of the edges with respect to `{a, b}`.
fn classes(c: &[E], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..c.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut first_at: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, e) in c.iter().enumerate() {
        for &x in &e.ends {
            if x == a || x == b {
                continue;
            }
            match first_at.get(&x) {
                Some(&j) => {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
                None => {
                    first_at.insert(x, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..c.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn is_separation(cl: &[Vec<usize>]) -> bool {
    let singles = cl.iter().filter(|c| c.len() == 1).count();
    cl.len() >= 2 && !(cl.len() == 2 && singles >= 1) && !(cl.len() == 3 && singles == 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Bond,
    Polygon,
    Rigid,
}

fn kind(c: &[E]) -> Kind {
    let vs = vertices(c);
    if vs.len() == 2 {
        return Kind::Bond;
    }
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    for e in c {
        for &x in &e.ends {
            *deg.entry(x).or_default() += 1;
        }
    }
    if vs.len() == c.len() && deg.values().all(|&d| d == 2) {
        Kind::Polygon
    } else {
        Kind::Rigid
    }
}

/// Triconnected components by repeated splitting at any separation pair,
/// followed by merging bonds with bonds and polygons with polygons.
fn split_components(pairs: &[(usize, usize)]) -> Vec<Vec<E>> {
    let mut next_tag = 1_000_000;
    let start: Vec<E> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| E { ends: [a, b], tag: i, real: true })
        .collect();
    let mut work = vec![start];
    let mut done = Vec::new();
    'comp: while let Some(c) = work.pop() {
        let vs: Vec<usize> = vertices(&c).into_iter().collect();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                let mut cl = classes(&c, a, b);
                if !is_separation(&cl) {
                    continue;
                }
                cl.sort_by_key(|x| std::cmp::Reverse(x.len()));
                let mut side = BTreeSet::new();
                for class in &cl {
                    if side.len() >= 2 {
                        break;
                    }
                    side.extend(class.iter().copied());
                }
                let virt = E { ends: [a, b], tag: next_tag, real: false };
                next_tag += 1;
                let mut left: Vec<E> = side.iter().map(|&k| c[k].clone()).collect();
                let mut right: Vec<E> = (0..c.len())
                    .filter(|k| !side.contains(k))
                    .map(|k| c[k].clone())
                    .collect();
                left.push(virt.clone());
                right.push(virt);
                work.push(left);
                work.push(right);
                continue 'comp;
            }
        }
        done.push(c);
    }
    loop {
        let mut merge = None;
        'search: for i in 0..done.len() {
            let ki = kind(&done[i]);
            if ki == Kind::Rigid {
                continue;
            }
            for j in i + 1..done.len() {
                if kind(&done[j]) != ki {
                    continue;
                }
                let shared = done[i]
                    .iter()
                    .find(|e| !e.real && done[j].iter().any(|f| f.tag == e.tag))
                    .map(|e| e.tag);
                if let Some(t) = shared {
                    merge = Some((i, j, t));
                    break 'search;
                }
            }
        }
        let Some((i, j, t)) = merge else { break };
        let cj = done.remove(j);
        done[i].retain(|e| e.tag != t);
        done[i].extend(cj.into_iter().filter(|e| e.tag != t));
    }
    done
}

pub type Key = (Kind, Vec<usize>, Vec<usize>, usize);

fn key_of(kind: Kind, vs: BTreeSet<usize>, edges: impl Iterator<Item = (usize, bool)>) -> Key {
    let mut real = Vec::new();
    let mut virt = 0;
    for (tag, is_real) in edges {
        if is_real {
            real.push(tag);
        } else {
            virt += 1;
        }
    }
    real.sort_unstable();
    (kind, vs.into_iter().collect(), real, virt)
}

pub fn oracle_keys(pairs: &[(usize, usize)]) -> Vec<Key> {
    let mut keys: Vec<Key> = split_components(pairs)
        .iter()
        .map(|c| key_of(kind(c), vertices(c), c.iter().map(|e| (e.tag, e.real))))
        .collect();
    keys.sort();
    keys
}

fn tree_keys(t: &ThreeBlockTree, rename: &dyn Fn(usize) -> usize) -> Vec<Key> {
    let mut keys: Vec<Key> = t
        .nodes
        .iter()
        .map(|n| {
            let kind = match n.kind {
                NodeKind::Cycle => Kind::Polygon,
                NodeKind::Multilink => Kind::Bond,
                NodeKind::Rigid => Kind::Rigid,
            };
            let vs = n.graph.vertices.iter().map(|&v| rename(v)).collect();
            key_of(kind, vs, n.graph.edges.iter().map(|e| (e.tag, !e.is_virtual)))
        })
        .collect();
    keys.sort();
    keys
}

fn three_connected(g: &MultiGraph) -> bool {
    let simple = g.edges.iter().map(|e| e.key()).collect::<BTreeSet<_>>().len() == g.edge_count();
    let vs = &g.vertices;
    simple
        && vs.len() >= 4
        && vs.iter().enumerate().all(|(i, &a)| {
            vs[i + 1..]
                .iter()
                .all(|&b| g.components_without(&[a, b]).len() == 1)
        })
}

fn check_tree(g: &MultiGraph, t: &ThreeBlockTree) -> Result<(), TestCaseError> {
    prop_assert_eq!(t.amalgamate().edge_signature(), g.edge_signature());
    prop_assert_eq!(&t.amalgamate().vertices, &g.vertices);
    for n in &t.nodes {
        prop_assert!(n.graph.edge_count() >= 3);
        match n.kind {
            NodeKind::Cycle => prop_assert!(n.graph.is_cycle()),
            NodeKind::Multilink => prop_assert!(n.graph.is_multilink()),
            NodeKind::Rigid => prop_assert!(three_connected(&n.graph)),
        }
    }
    prop_assert_eq!(t.edges.len() + 1, t.nodes.len());
    let mut owners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, n) in t.nodes.iter().enumerate() {
        for e in n.graph.edges.iter().filter(|e| e.is_virtual) {
            owners.entry(e.tag).or_default().push(i);
        }
    }
    prop_assert_eq!(owners.len(), t.edges.len());
    let mut reach = vec![false; t.nodes.len()];
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        if !std::mem::replace(&mut reach[i], true) {
            stack.extend(t.neighbours(i).into_iter().map(|(j, _)| j));
        }
    }
    prop_assert!(reach.iter().all(|&r| r), "tree is disconnected");
    for e in &t.edges {
        let [a, b] = e.nodes;
        prop_assert_eq!(&owners[&e.virtual_tag], &vec![a.min(b), a.max(b)]);
        let (ka, kb) = (t.nodes[a].kind, t.nodes[b].kind);
        prop_assert!(ka != kb || ka == NodeKind::Rigid, "adjacent {:?} nodes", ka);
        for n in [a, b] {
            let v = t.nodes[n].graph.edges.iter().find(|x| x.tag == e.virtual_tag).unwrap();
            prop_assert_eq!(v.key(), (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1])));
        }
    }
    Ok(())
}

pub fn graphs() -> impl Strategy<Value = (Vec<(usize, usize)>, Vec<usize>)> {
    (
        3usize..=6,
        prop::collection::vec((any::<usize>(), any::<usize>(), 0usize..=3), 0..10),
        Just((0..12).collect::<Vec<usize>>()).prop_shuffle(),
    )
        .prop_map(|(cycle, ears, perm)| (ear_graph(cycle, &ears, 12), perm))
}

/// Checks the library decomposition of the ear graph against naive
/// splitting, and against itself after relabelling the vertices by `perm`.
pub fn decomposition_property(pairs: &[(usize, usize)], perm: &[usize]) -> Result<(), TestCaseError> {
    let g = MultiGraph::from_pairs(pairs);
    let t = tutte_decomposition(&g).unwrap();
    check_tree(&g, &t)?;
    prop_assert_eq!(tree_keys(&t, &|v| v), oracle_keys(pairs));

    let moved: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    let gm = MultiGraph::from_pairs(&moved);
    let tm = tutte_decomposition(&gm).unwrap();
    check_tree(&gm, &tm)?;
    let back: BTreeMap<usize, usize> = perm.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    prop_assert_eq!(tree_keys(&tm, &|v| back[&v]), tree_keys(&t, &|v| v));
    Ok(())
}
