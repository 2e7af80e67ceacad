//! Self-avoiding walks inside one stored 3-block.

use crate::decomposition::{Block3, QuotientDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockStep {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWalk {
    pub start: usize,
    pub steps: Vec<BlockStep>,
}

impl BlockWalk {
    pub fn end(&self) -> usize {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    pub fn visits(&self, v: usize) -> bool {
        self.start == v || self.steps.iter().any(|s| s.to == v)
    }

    pub fn uses(&self, edge: usize) -> bool {
        self.steps.iter().any(|s| s.edge == edge)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Nonempty and ending with a real edge.
    pub fn ends_real(&self, b: &Block3) -> bool {
        self.steps
            .last()
            .is_some_and(|s| !b.edges[s.edge].is_virtual())
    }
}

/// All self-avoiding walks of `b` from `start`, the empty one included,
/// never using edge `avoid`. Parallel edges give distinct walks. The order
/// is depth first by edge index.
pub fn block_walks(b: &Block3, start: usize, avoid: Option<usize>) -> Vec<BlockWalk> {
    let n = b.vertices.len();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in b.edges.iter().enumerate() {
        if Some(i) == avoid || e.ends[0] == e.ends[1] {
            continue;
        }
        inc[e.ends[0]].push(i);
        inc[e.ends[1]].push(i);
    }
    let mut out = Vec::new();
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut steps = Vec::new();
    fn go(
        b: &Block3,
        inc: &[Vec<usize>],
        v: usize,
        start: usize,
        seen: &mut [bool],
        steps: &mut Vec<BlockStep>,
        out: &mut Vec<BlockWalk>,
    ) {
        out.push(BlockWalk {
            start,
            steps: steps.clone(),
        });
        for &i in &inc[v] {
            let e = &b.edges[i];
            let w = if e.ends[0] == v { e.ends[1] } else { e.ends[0] };
            if seen[w] {
                continue;
            }
            seen[w] = true;
            steps.push(BlockStep {
                edge: i,
                from: v,
                to: w,
            });
            go(b, inc, w, start, seen, steps, out);
            steps.pop();
            seen[w] = false;
        }
    }
    go(b, &inc, start, start, &mut seen, &mut steps, &mut out);
    out
}

/// The walk sets of one pair orbit, all leaving the start vertex inside the
/// far 3-block without using the shared virtual edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkSets {
    /// Every such walk.
    pub free: Vec<BlockWalk>,
    /// Those avoiding the second vertex of the shared edge.
    pub avoiding: Vec<BlockWalk>,
    /// Those ending at the second vertex.
    pub crossing: Vec<BlockWalk>,
}

pub fn walk_sets(q: &QuotientDecomposition, pair: usize) -> WalkSets {
    let p = &q.pairs[pair];
    let b = &q.blocks3[p.block];
    let second = p.second(q);
    let free = block_walks(b, p.start, Some(p.entry));
    let avoiding = free.iter().filter(|w| !w.visits(second)).cloned().collect();
    let crossing = free.iter().filter(|w| w.end() == second).cloned().collect();
    WalkSets {
        free,
        avoiding,
        crossing,
    }
}
