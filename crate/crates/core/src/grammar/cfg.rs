//! Context-free grammars over named terminals, with a plain text format.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::GrammarError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    T(usize),
    V(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<Symbol>,
}

/// A grammar whose productions form a multiset: repeated productions count
/// as distinct derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextFreeGrammar {
    terminals: Vec<String>,
    variables: Vec<String>,
    start: usize,
    productions: Vec<Production>,
}

/// A word of terminal indices with its number of leftmost derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedWord {
    pub terminals: Vec<usize>,
    pub derivations: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub length: usize,
    /// Distinct words of this length.
    pub words: u64,
    pub derivations: BigUint,
    pub max_multiplicity: BigUint,
}

/// A deterministic automaton over terminal names; missing transitions reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub terminals: Vec<String>,
    pub start: usize,
    pub accepting: Vec<bool>,
    /// `delta[state][terminal]`.
    pub delta: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    fn step(&self, state: usize, terminal: &str) -> Option<usize> {
        let t = self.terminals.iter().position(|x| x == terminal)?;
        self.delta[state][t]
    }

    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let mut s = self.start;
        for t in word {
            match self.step(s, t.as_ref()) {
                Some(n) => s = n,
                None => return false,
            }
        }
        self.accepting[s]
    }
}

fn check_token(name: &str) -> Result<(), GrammarError> {
    if name.is_empty()
        || name.chars().any(char::is_whitespace)
        || name == "->"
        || name == ";"
        || name.starts_with('#')
    {
        return Err(GrammarError::BadSymbol(name.to_string()));
    }
    Ok(())
}

impl ContextFreeGrammar {
    /// An empty grammar with start variable `start`.
    pub fn new(start: &str) -> Result<Self, GrammarError> {
        check_token(start)?;
        Ok(ContextFreeGrammar {
            terminals: Vec::new(),
            variables: vec![start.to_string()],
            start: 0,
            productions: Vec::new(),
        })
    }

    /// Index of terminal `name`, adding it if new.
    pub fn terminal(&mut self, name: &str) -> Result<usize, GrammarError> {
        if let Some(i) = self.terminals.iter().position(|t| t == name) {
            return Ok(i);
        }
        check_token(name)?;
        if self.variables.iter().any(|v| v == name) {
            return Err(GrammarError::BadSymbol(format!("{name} is already a variable")));
        }
        self.terminals.push(name.to_string());
        Ok(self.terminals.len() - 1)
    }

    /// Index of variable `name`, adding it if new.
    pub fn variable(&mut self, name: &str) -> Result<usize, GrammarError> {
        if let Some(i) = self.variables.iter().position(|t| t == name) {
            return Ok(i);
        }
        check_token(name)?;
        if self.terminals.iter().any(|v| v == name) {
            return Err(GrammarError::BadSymbol(format!("{name} is already a terminal")));
        }
        self.variables.push(name.to_string());
        Ok(self.variables.len() - 1)
    }

    pub fn add(&mut self, lhs: usize, rhs: Vec<Symbol>) {
        assert!(lhs < self.variables.len(), "unknown variable {lhs}");
        for s in &rhs {
            match *s {
                Symbol::T(t) => assert!(t < self.terminals.len(), "unknown terminal {t}"),
                Symbol::V(v) => assert!(v < self.variables.len(), "unknown variable {v}"),
            }
        }
        self.productions.push(Production { lhs, rhs });
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn productions_of(&self, v: usize) -> impl Iterator<Item = &Production> + '_ {
        self.productions.iter().filter(move |p| p.lhs == v)
    }

    pub fn find_variable(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn find_terminal(&self, name: &str) -> Option<usize> {
        self.terminals.iter().position(|v| v == name)
    }

    pub fn symbol_name(&self, s: Symbol) -> &str {
        match s {
            Symbol::T(t) => &self.terminals[t],
            Symbol::V(v) => &self.variables[v],
        }
    }

    /// Right-hand side as space separated names, `ε` when empty.
    pub fn rhs_text(&self, rhs: &[Symbol]) -> String {
        if rhs.is_empty() {
            return "ε".to_string();
        }
        rhs.iter()
            .map(|&s| self.symbol_name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Terminal indices as space separated names, `ε` when empty.
    pub fn render(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.iter()
            .map(|&t| self.terminals[t].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Every production is `A -> u` or `A -> u B` with `u` a terminal string.
    pub fn is_right_linear(&self) -> bool {
        self.productions.iter().all(|p| {
            let n = p.rhs.len();
            p.rhs
                .iter()
                .enumerate()
                .all(|(i, s)| matches!(s, Symbol::T(_)) || i + 1 == n)
        })
    }

    /// Variables deriving the empty word.
    pub fn nullable(&self) -> Vec<bool> {
        let mut null = vec![false; self.variables.len()];
        loop {
            let mut changed = false;
            for p in &self.productions {
                if !null[p.lhs]
                    && p.rhs.iter().all(|s| matches!(s, Symbol::V(v) if null[*v]))
                {
                    null[p.lhs] = true;
                    changed = true;
                }
            }
            if !changed {
                return null;
            }
        }
    }

    /// Edges `A -> B` for productions `A -> α B β` with `α β` nullable:
    /// derivations that may keep the length of `A` in `B`.
    fn unit_edges(&self, null: &[bool]) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.variables.len()];
        let is_null = |s: &Symbol| matches!(s, Symbol::V(v) if null[*v]);
        for p in &self.productions {
            for (i, s) in p.rhs.iter().enumerate() {
                if let Symbol::V(b) = *s {
                    let rest_null = p
                        .rhs
                        .iter()
                        .enumerate()
                        .all(|(j, s)| j == i || is_null(s));
                    if rest_null {
                        adj[p.lhs].insert(b);
                    }
                }
            }
        }
        adj
    }

    /// Order of the variables in which every length-preserving dependency
    /// comes first, or an error naming a variable on a cycle.
    fn dependency_order(&self) -> Result<Vec<usize>, GrammarError> {
        let null = self.nullable();
        let adj = self.unit_edges(&null);
        let n = self.variables.len();
        // 0 = new, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut order = Vec::with_capacity(n);
        for s in 0..n {
            if state[s] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(s, adj[s].iter().copied().collect())];
            state[s] = 1;
            while let Some((v, rest)) = stack.last_mut() {
                match rest.pop() {
                    Some(w) => match state[w] {
                        0 => {
                            state[w] = 1;
                            let next = adj[w].iter().copied().collect();
                            stack.push((w, next));
                        }
                        1 => {
                            return Err(GrammarError::Improper(format!(
                                "variable {} derives itself without producing terminals",
                                self.variables[w]
                            )))
                        }
                        _ => {}
                    },
                    None => {
                        state[*v] = 2;
                        order.push(*v);
                        stack.pop();
                    }
                }
            }
        }
        Ok(order)
    }

    /// A grammar is proper when no variable derives itself without producing
    /// a terminal; every word then has finitely many derivations.
    pub fn check_proper(&self) -> Result<(), GrammarError> {
        self.dependency_order().map(|_| ())
    }

    /// Only the start variable derives the empty word, and it does so directly.
    pub fn epsilon_only_at_start(&self) -> bool {
        let null = self.nullable();
        null.iter()
            .enumerate()
            .all(|(v, &n)| !n || v == self.start)
    }

    /// Shortest derivable length per variable, `None` for empty languages.
    fn min_lengths(&self) -> Vec<Option<usize>> {
        let mut best: Vec<Option<usize>> = vec![None; self.variables.len()];
        loop {
            let mut changed = false;
            for p in &self.productions {
                let mut total = Some(0usize);
                for s in &p.rhs {
                    total = match (total, s) {
                        (Some(t), Symbol::T(_)) => Some(t + 1),
                        (Some(t), Symbol::V(v)) => best[*v].map(|m| t + m),
                        (None, _) => None,
                    };
                }
                if let Some(t) = total {
                    if best[p.lhs].is_none_or(|b| t < b) {
                        best[p.lhs] = Some(t);
                        changed = true;
                    }
                }
            }
            if !changed {
                return best;
            }
        }
    }

    /// Derivation counts of the start variable by length, `0..=n`.
    pub fn count_by_length(&self, n: usize) -> Result<Vec<BigUint>, GrammarError> {
        let order = self.dependency_order()?;
        let nv = self.variables.len();
        let mut cnt = vec![vec![BigUint::zero(); n + 1]; nv];
        let by_lhs = self.by_lhs();
        for len in 0..=n {
            for &a in &order {
                let mut total = BigUint::zero();
                for &pi in &by_lhs[a] {
                    total += self.count_rhs(&self.productions[pi].rhs, len, &cnt);
                }
                cnt[a][len] = total;
            }
        }
        Ok(std::mem::take(&mut cnt[self.start]))
    }

    fn count_rhs(&self, rhs: &[Symbol], len: usize, cnt: &[Vec<BigUint>]) -> BigUint {
        // ways[k] = derivations of the processed prefix with total length k
        let mut ways = vec![BigUint::zero(); len + 1];
        ways[0] = BigUint::one();
        for s in rhs {
            let mut next = vec![BigUint::zero(); len + 1];
            for (k, w) in ways.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                match *s {
                    Symbol::T(_) => {
                        if k < len {
                            next[k + 1] += w;
                        }
                    }
                    Symbol::V(v) => {
                        for (l, c) in cnt[v].iter().enumerate().take(len - k + 1) {
                            if !c.is_zero() {
                                next[k + l] += w * c;
                            }
                        }
                    }
                }
            }
            ways = next;
        }
        std::mem::take(&mut ways[len])
    }

    fn by_lhs(&self) -> Vec<Vec<usize>> {
        let mut by = vec![Vec::new(); self.variables.len()];
        for (i, p) in self.productions.iter().enumerate() {
            by[p.lhs].push(i);
        }
        by
    }

    /// All words of length at most `n` with their derivation counts, sorted
    /// by length and then by terminal indices.
    pub fn words_up_to(&self, n: usize) -> Result<Vec<DerivedWord>, GrammarError> {
        let order = self.dependency_order()?;
        let minlen = self.min_lengths();
        let nv = self.variables.len();
        type Layer = HashMap<Vec<usize>, BigUint>;
        let mut table: Vec<Vec<Layer>> = vec![vec![Layer::new(); n + 1]; nv];
        let by_lhs = self.by_lhs();
        for len in 0..=n {
            for &a in &order {
                let mut acc = Layer::new();
                for &pi in &by_lhs[a] {
                    let rhs = &self.productions[pi].rhs;
                    let Some(suffix_min) = suffix_minima(rhs, &minlen) else {
                        continue;
                    };
                    if suffix_min[0] > len {
                        continue;
                    }
                    expand(rhs, 0, len, &suffix_min, &table, Vec::new(), BigUint::one(), &mut acc);
                }
                table[a][len] = acc;
            }
        }
        let mut out: Vec<DerivedWord> = table[self.start]
            .iter_mut()
            .flat_map(|layer| layer.drain())
            .map(|(terminals, derivations)| DerivedWord {
                terminals,
                derivations,
            })
            .collect();
        out.sort_by(|a, b| {
            (a.terminals.len(), &a.terminals).cmp(&(b.terminals.len(), &b.terminals))
        });
        Ok(out)
    }

    /// Per length `0..=n`: distinct words, derivations and the largest multiplicity.
    pub fn census(&self, n: usize) -> Result<Vec<CensusRow>, GrammarError> {
        let words = self.words_up_to(n)?;
        let mut rows: Vec<CensusRow> = (0..=n)
            .map(|length| CensusRow {
                length,
                words: 0,
                derivations: BigUint::zero(),
                max_multiplicity: BigUint::zero(),
            })
            .collect();
        for w in words {
            let row = &mut rows[w.terminals.len()];
            row.words += 1;
            row.derivations += &w.derivations;
            if w.derivations > row.max_multiplicity {
                row.max_multiplicity = w.derivations;
            }
        }
        Ok(rows)
    }

    /// Drops variables that derive no terminal word or are unreachable from
    /// the start, together with their productions. The start always survives.
    pub fn reduce(&self) -> ContextFreeGrammar {
        let nv = self.variables.len();
        let mut generating = vec![false; nv];
        loop {
            let mut changed = false;
            for p in &self.productions {
                if !generating[p.lhs]
                    && p.rhs.iter().all(|s| match s {
                        Symbol::T(_) => true,
                        Symbol::V(v) => generating[*v],
                    })
                {
                    generating[p.lhs] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let useful: Vec<&Production> = self
            .productions
            .iter()
            .filter(|p| {
                generating[p.lhs]
                    && p.rhs.iter().all(|s| match s {
                        Symbol::T(_) => true,
                        Symbol::V(v) => generating[*v],
                    })
            })
            .collect();
        let mut reach = vec![false; nv];
        reach[self.start] = true;
        let mut stack = vec![self.start];
        while let Some(v) = stack.pop() {
            for p in useful.iter().filter(|p| p.lhs == v) {
                for s in &p.rhs {
                    if let Symbol::V(w) = *s {
                        if !reach[w] {
                            reach[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; nv];
        let mut variables = Vec::new();
        for v in 0..nv {
            if reach[v] {
                map[v] = variables.len();
                variables.push(self.variables[v].clone());
            }
        }
        let productions = useful
            .into_iter()
            .filter(|p| reach[p.lhs])
            .map(|p| Production {
                lhs: map[p.lhs],
                rhs: p
                    .rhs
                    .iter()
                    .map(|s| match *s {
                        Symbol::T(t) => Symbol::T(t),
                        Symbol::V(v) => Symbol::V(map[v]),
                    })
                    .collect(),
            })
            .collect();
        ContextFreeGrammar {
            terminals: self.terminals.clone(),
            variables,
            start: map[self.start],
            productions,
        }
    }

    /// True when the reduced grammar has no recursive variable.
    pub fn is_finite_language(&self) -> bool {
        let g = self.reduce();
        let nv = g.variables.len();
        let mut adj = vec![BTreeSet::new(); nv];
        for p in &g.productions {
            for s in &p.rhs {
                if let Symbol::V(v) = *s {
                    adj[p.lhs].insert(v);
                }
            }
        }
        let mut state = vec![0u8; nv];
        fn cyclic(v: usize, adj: &[BTreeSet<usize>], state: &mut [u8]) -> bool {
            state[v] = 1;
            for &w in &adj[v] {
                if state[w] == 1 || (state[w] == 0 && cyclic(w, adj, state)) {
                    return true;
                }
            }
            state[v] = 2;
            false
        }
        (0..nv).all(|v| state[v] != 0 || !cyclic(v, &adj, &mut state))
    }

    /// The language intersected with the words accepted by `dfa`, by the
    /// triple construction. Derivation counts are preserved.
    pub fn intersect_regular(&self, dfa: &Dfa) -> Result<ContextFreeGrammar, GrammarError> {
        let ns = dfa.states();
        if dfa.start >= ns || dfa.delta.len() != ns {
            return Err(GrammarError::Automaton("inconsistent state count".to_string()));
        }
        if dfa
            .delta
            .iter()
            .any(|row| row.len() != dfa.terminals.len() || row.iter().flatten().any(|&s| s >= ns))
        {
            return Err(GrammarError::Automaton("transition table out of range".to_string()));
        }
        let mut start = format!("{}'", self.variables[self.start]);
        while self.variables.contains(&start) || self.terminals.contains(&start) {
            start.push('\'');
        }
        let mut out = ContextFreeGrammar::new(&start)?;
        let tmap: Vec<usize> = self
            .terminals
            .iter()
            .map(|t| out.terminal(t))
            .collect::<Result<_, _>>()?;
        let step: Vec<Vec<Option<usize>>> = (0..ns)
            .map(|s| self.terminals.iter().map(|t| dfa.step(s, t)).collect())
            .collect();
        let by_lhs = self.by_lhs();
        let mut index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        let mut queue: Vec<(usize, usize, usize)> = Vec::new();
        let mut get = |out: &mut ContextFreeGrammar,
                       key: (usize, usize, usize),
                       queue: &mut Vec<(usize, usize, usize)>|
         -> Result<usize, GrammarError> {
            if let Some(&i) = index.get(&key) {
                return Ok(i);
            }
            let (p, a, q) = key;
            let i = out.variable(&format!("{}@{}-{}", self.variables[a], p, q))?;
            index.insert(key, i);
            queue.push(key);
            Ok(i)
        };
        for f in (0..ns).filter(|&f| dfa.accepting[f]) {
            let v = get(&mut out, (dfa.start, self.start, f), &mut queue)?;
            out.add(0, vec![Symbol::V(v)]);
        }
        let mut done = 0;
        while done < queue.len() {
            let (p, a, q) = queue[done];
            done += 1;
            let lhs = get(&mut out, (p, a, q), &mut queue)?;
            for &pi in &by_lhs[a] {
                let rhs = &self.productions[pi].rhs;
                // partial assignments: (state, symbols so far, pending variable keys)
                let mut partial: Vec<(usize, Vec<Result<usize, (usize, usize, usize)>>)> =
                    vec![(p, Vec::new())];
                for s in rhs {
                    let mut next = Vec::new();
                    for (st, syms) in partial {
                        match *s {
                            Symbol::T(t) => {
                                if let Some(n2) = step[st][t] {
                                    let mut v = syms.clone();
                                    v.push(Ok(tmap[t]));
                                    next.push((n2, v));
                                }
                            }
                            Symbol::V(b) => {
                                for n2 in 0..ns {
                                    let mut v = syms.clone();
                                    v.push(Err((st, b, n2)));
                                    next.push((n2, v));
                                }
                            }
                        }
                    }
                    partial = next;
                }
                for (st, syms) in partial {
                    if st != q {
                        continue;
                    }
                    let mut body = Vec::with_capacity(syms.len());
                    for s in syms {
                        body.push(match s {
                            Ok(t) => Symbol::T(t),
                            Err(key) => Symbol::V(get(&mut out, key, &mut queue)?),
                        });
                    }
                    out.add(lhs, body);
                }
            }
        }
        Ok(out.reduce())
    }

    /// Replaces every terminal by the language of its grammar in `languages`.
    /// Finite languages are inlined word by word, which keeps right-linear
    /// grammars right-linear; the others are copied once with their
    /// variables prefixed by the terminal name. A direct `S -> ε` of such a
    /// copy becomes an alternative of the outer production without the
    /// terminal, so the copies stay ε-free.
    pub fn substitute(
        &self,
        languages: &BTreeMap<String, ContextFreeGrammar>,
    ) -> Result<ContextFreeGrammar, GrammarError> {
        let mut out = ContextFreeGrammar::new(&self.variables[self.start])?;
        for v in &self.variables {
            out.variable(v)?;
        }
        enum Replacement {
            Words(Vec<(Vec<usize>, BigUint)>),
            /// Start of the copy, and the number of direct ε-productions removed.
            Start(usize, usize),
        }
        let mut repl = Vec::new();
        for t in &self.terminals {
            let inner = languages
                .get(t)
                .ok_or_else(|| GrammarError::MissingLanguage(t.clone()))?;
            let inner = inner.reduce();
            if inner.is_finite_language() {
                let bound: usize = inner.min_lengths_upper();
                let words = inner
                    .words_up_to(bound)?
                    .into_iter()
                    .map(|w| {
                        let ts = w
                            .terminals
                            .iter()
                            .map(|&x| out.terminal(&inner.terminals[x]))
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok((ts, w.derivations))
                    })
                    .collect::<Result<Vec<_>, GrammarError>>()?;
                repl.push(Replacement::Words(words));
            } else {
                let vmap = inner
                    .variables
                    .iter()
                    .map(|v| out.variable(&format!("{t}:{v}")))
                    .collect::<Result<Vec<_>, _>>()?;
                let tm = inner
                    .terminals
                    .iter()
                    .map(|x| out.terminal(x))
                    .collect::<Result<Vec<_>, _>>()?;
                let starts_on_rhs = inner
                    .productions
                    .iter()
                    .any(|p| p.rhs.contains(&Symbol::V(inner.start)));
                let mut eps = 0;
                for p in &inner.productions {
                    if p.lhs == inner.start && p.rhs.is_empty() && !starts_on_rhs {
                        eps += 1;
                        continue;
                    }
                    let rhs = p
                        .rhs
                        .iter()
                        .map(|s| match *s {
                            Symbol::T(x) => Symbol::T(tm[x]),
                            Symbol::V(v) => Symbol::V(vmap[v]),
                        })
                        .collect();
                    out.add(vmap[p.lhs], rhs);
                }
                repl.push(Replacement::Start(vmap[inner.start], eps));
            }
        }
        for p in &self.productions {
            let mut bodies: Vec<(Vec<Symbol>, BigUint)> = vec![(Vec::new(), BigUint::one())];
            for s in &p.rhs {
                match *s {
                    Symbol::V(v) => bodies.iter_mut().for_each(|(b, _)| b.push(Symbol::V(v))),
                    Symbol::T(t) => match &repl[t] {
                        Replacement::Start(x, eps) => {
                            let mut next = Vec::new();
                            for (b, m) in &bodies {
                                let mut nb = b.clone();
                                nb.push(Symbol::V(*x));
                                next.push((nb, m.clone()));
                                if *eps > 0 {
                                    next.push((b.clone(), m * BigUint::from(*eps)));
                                }
                            }
                            bodies = next;
                        }
                        Replacement::Words(ws) => {
                            let mut next = Vec::new();
                            for (b, m) in &bodies {
                                for (w, k) in ws {
                                    let mut nb = b.clone();
                                    nb.extend(w.iter().map(|&x| Symbol::T(x)));
                                    next.push((nb, m * k));
                                }
                            }
                            bodies = next;
                        }
                    },
                }
            }
            for (b, m) in bodies {
                let copies = u64::try_from(&m)
                    .map_err(|_| GrammarError::Improper("too many parallel derivations".into()))?;
                for _ in 0..copies {
                    out.add(p.lhs, b.clone());
                }
            }
        }
        Ok(out.reduce())
    }

    /// Length of the longest word; only meaningful for finite languages.
    fn min_lengths_upper(&self) -> usize {
        // longest derivable length by fixpoint over an acyclic grammar
        let nv = self.variables.len();
        let mut best = vec![0usize; nv];
        for _ in 0..=nv {
            for p in &self.productions {
                let t: usize = p
                    .rhs
                    .iter()
                    .map(|s| match *s {
                        Symbol::T(_) => 1,
                        Symbol::V(v) => best[v],
                    })
                    .sum();
                if t > best[p.lhs] {
                    best[p.lhs] = t;
                }
            }
        }
        best[self.start]
    }

    /// Renames variables; names missing from `map` are kept.
    pub fn rename_variables(&self, map: &dyn Fn(&str) -> String) -> Result<Self, GrammarError> {
        let variables: Vec<String> = self.variables.iter().map(|v| map(v)).collect();
        let distinct: BTreeSet<&String> = variables.iter().collect();
        if distinct.len() != variables.len() {
            return Err(GrammarError::BadSymbol("renaming merges two variables".to_string()));
        }
        for v in &variables {
            check_token(v)?;
            if self.terminals.contains(v) {
                return Err(GrammarError::BadSymbol(format!("{v} is already a terminal")));
            }
        }
        Ok(ContextFreeGrammar {
            variables,
            ..self.clone()
        })
    }

    /// Productions as sorted `(lhs, rhs)` text pairs, for comparisons that
    /// ignore symbol numbering and production order.
    pub fn production_set(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = self
            .productions
            .iter()
            .map(|p| (self.variables[p.lhs].clone(), self.rhs_text(&p.rhs)))
            .collect();
        v.sort();
        v
    }

    /// The text format: a `start` line, `terminals` and `variables` lines,
    /// then one `A -> x y B ;` line per production.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "start {}", self.variables[self.start]);
        let _ = writeln!(s, "terminals {}", self.terminals.join(" "));
        let _ = writeln!(s, "variables {}", self.variables.join(" "));
        for p in &self.productions {
            let body: Vec<&str> = p.rhs.iter().map(|&x| self.symbol_name(x)).collect();
            if body.is_empty() {
                let _ = writeln!(s, "{} -> ;", self.variables[p.lhs]);
            } else {
                let _ = writeln!(s, "{} -> {} ;", self.variables[p.lhs], body.join(" "));
            }
        }
        s
    }

    /// Parses the text format. The `terminals` and `variables` lines are
    /// optional; without them every left-hand side is a variable and every
    /// other symbol a terminal. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, GrammarError> {
        let mut terminals: Option<Vec<String>> = None;
        let mut variables: Option<Vec<String>> = None;
        let mut start: Option<String> = None;
        let mut prods: Vec<(usize, String, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: &str| GrammarError::Parse {
                line: line_no,
                message: message.to_string(),
            };
            let mut words = line.split_whitespace();
            let first = words.next().unwrap_or("");
            match first {
                "terminals" | "variables" | "start"
                    if !line.contains("->") =>
                {
                    let rest: Vec<String> = words.map(str::to_string).collect();
                    match first {
                        "terminals" => terminals = Some(rest),
                        "variables" => variables = Some(rest),
                        _ => {
                            if rest.len() != 1 {
                                return Err(parse_err("start takes exactly one variable"));
                            }
                            start = Some(rest[0].clone());
                        }
                    }
                }
                _ => {
                    let (lhs, body) = line
                        .split_once("->")
                        .ok_or_else(|| parse_err("expected `A -> body ;`"))?;
                    let lhs = lhs.trim();
                    if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                        return Err(parse_err("left-hand side must be one variable"));
                    }
                    let body = body.trim();
                    let body = body
                        .strip_suffix(';')
                        .ok_or_else(|| parse_err("production must end with `;`"))?;
                    let rhs: Vec<String> = body
                        .split_whitespace()
                        .filter(|s| *s != "ε")
                        .map(str::to_string)
                        .collect();
                    prods.push((line_no, lhs.to_string(), rhs));
                }
            }
        }
        let start = start
            .or_else(|| prods.first().map(|p| p.1.clone()))
            .ok_or_else(|| GrammarError::Parse {
                line: 0,
                message: "no start variable".to_string(),
            })?;
        let mut g = ContextFreeGrammar::new(&start)?;
        let vars: Vec<String> = match variables {
            Some(v) => v,
            None => prods.iter().map(|p| p.1.clone()).collect(),
        };
        for v in &vars {
            g.variable(v)?;
        }
        if let Some(ts) = &terminals {
            for t in ts {
                g.terminal(t)?;
            }
        }
        for (line, lhs, rhs) in prods {
            let l = g.find_variable(&lhs).ok_or_else(|| GrammarError::Parse {
                line,
                message: format!("{lhs} is not a declared variable"),
            })?;
            let mut body = Vec::new();
            for s in rhs {
                if let Some(v) = g.find_variable(&s) {
                    body.push(Symbol::V(v));
                } else if terminals.is_some() && g.find_terminal(&s).is_none() {
                    return Err(GrammarError::Parse {
                        line,
                        message: format!("{s} is neither a declared terminal nor a variable"),
                    });
                } else {
                    body.push(Symbol::T(g.terminal(&s)?));
                }
            }
            g.add(l, body);
        }
        Ok(g)
    }
}

impl std::fmt::Display for ContextFreeGrammar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `out[i]` = shortest length of `rhs[i..]`, or `None` if some symbol is empty.
fn suffix_minima(rhs: &[Symbol], minlen: &[Option<usize>]) -> Option<Vec<usize>> {
    let mut out = vec![0usize; rhs.len() + 1];
    for i in (0..rhs.len()).rev() {
        let m = match rhs[i] {
            Symbol::T(_) => 1,
            Symbol::V(v) => minlen[v]?,
        };
        out[i] = out[i + 1] + m;
    }
    Some(out)
}

#[allow(clippy::too_many_arguments)]
fn expand(
    rhs: &[Symbol],
    i: usize,
    rem: usize,
    suffix_min: &[usize],
    table: &[Vec<HashMap<Vec<usize>, BigUint>>],
    prefix: Vec<usize>,
    mult: BigUint,
    acc: &mut HashMap<Vec<usize>, BigUint>,
) {
    if suffix_min[i] > rem {
        return;
    }
    if i == rhs.len() {
        if rem == 0 {
            *acc.entry(prefix).or_insert_with(BigUint::zero) += mult;
        }
        return;
    }
    match rhs[i] {
        Symbol::T(t) => {
            if rem >= 1 {
                let mut p = prefix;
                p.push(t);
                expand(rhs, i + 1, rem - 1, suffix_min, table, p, mult, acc);
            }
        }
        Symbol::V(v) => {
            let max = rem - suffix_min[i + 1];
            for l in 0..=max {
                for (w, c) in &table[v][l] {
                    let mut p = prefix.clone();
                    p.extend_from_slice(w);
                    expand(rhs, i + 1, rem - l, suffix_min, table, p, &mult * c, acc);
                }
            }
        }
    }
}
