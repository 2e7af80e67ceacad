//! Shortlex string rewriting systems for finitely presented groups.
//!
//! A system is supplied complete: [`check_confluence`] verifies local
//! confluence over all critical pairs instead of running a completion
//! procedure.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::label::{shortlex_cmp, Alphabet, Label, Word};
use super::GraphError;

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// Group generators with their inverse pairing plus an ordered list of rules.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    alphabet: Arc<Alphabet>,
    rules: Vec<Rule>,
    step_budget: usize,
}

impl RewritingSystem {
    /// Every rule must strictly decrease in shortlex order.
    pub fn new(alphabet: Arc<Alphabet>, rules: Vec<Rule>) -> Result<Self, GraphError> {
        for r in &rules {
            if r.lhs.is_empty() || shortlex_cmp(&r.lhs, &r.rhs) != Ordering::Greater {
                return Err(GraphError::NotDecreasing(format!(
                    "{} -> {}",
                    alphabet.render(&r.lhs),
                    alphabet.render(&r.rhs)
                )));
            }
        }
        Ok(RewritingSystem {
            alphabet,
            rules,
            step_budget: DEFAULT_STEP_BUDGET,
        })
    }

    /// Rules built from space separated token strings, e.g. `("c c", "")`.
    pub fn from_strs(alphabet: Arc<Alphabet>, rules: &[(&str, &str)]) -> Result<Self, GraphError> {
        let rules = rules
            .iter()
            .map(|(l, r)| {
                Ok(Rule {
                    lhs: alphabet.parse_spaced(l)?,
                    rhs: alphabet.parse_spaced(r)?,
                })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        Self::new(alphabet, rules)
    }

    pub fn with_step_budget(mut self, budget: usize) -> Self {
        self.step_budget = budget;
        self
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn step_budget(&self) -> usize {
        self.step_budget
    }

    /// Rewrites `w` to its irreducible form, always applying the leftmost match.
    pub fn normal_form(&self, w: &[Label]) -> Result<Word, GraphError> {
        let mut cur: Word = w.to_vec();
        let mut steps = 0usize;
        'outer: loop {
            for pos in 0..cur.len() {
                for r in &self.rules {
                    if cur[pos..].starts_with(&r.lhs) {
                        steps += 1;
                        if steps > self.step_budget {
                            return Err(GraphError::StepBudget(self.step_budget));
                        }
                        cur.splice(pos..pos + r.lhs.len(), r.rhs.iter().copied());
                        continue 'outer;
                    }
                }
            }
            return Ok(cur);
        }
    }

    pub fn is_irreducible(&self, w: &[Label]) -> bool {
        !self
            .rules
            .iter()
            .any(|r| w.windows(r.lhs.len()).any(|win| win == r.lhs.as_slice()))
    }

    /// Normal form of the product `u·v`.
    pub fn multiply(&self, u: &[Label], v: &[Label]) -> Result<Word, GraphError> {
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        self.normal_form(&w)
    }

    /// Normal form of the group inverse of `w`.
    pub fn invert(&self, w: &[Label]) -> Result<Word, GraphError> {
        self.normal_form(&self.alphabet.inverse_word(w))
    }
}

/// A critical pair whose two reducts have distinct normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
    pub rules: (usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub unresolved: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.unresolved.is_empty()
    }
}

impl fmt::Display for ConfluenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} critical pairs checked, {} unresolved",
            self.checked,
            self.unresolved.len()
        )
    }
}

/// Enumerates all overlaps and inclusions between rule left sides and
/// checks that both reducts share a normal form.
pub fn check_confluence(rs: &RewritingSystem) -> Result<ConfluenceReport, GraphError> {
    let mut report = ConfluenceReport::default();
    let rules = rs.rules();
    for (i, r1) in rules.iter().enumerate() {
        for (j, r2) in rules.iter().enumerate() {
            let l1 = &r1.lhs;
            let l2 = &r2.lhs;
            // suffix of l1 equals prefix of l2
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] == l2[..k] {
                    let mut overlap = l1.clone();
                    overlap.extend_from_slice(&l2[k..]);
                    let mut left = r1.rhs.clone();
                    left.extend_from_slice(&l2[k..]);
                    let mut right = l1[..l1.len() - k].to_vec();
                    right.extend_from_slice(&r2.rhs);
                    record(rs, &mut report, overlap, left, right, (i, j))?;
                }
            }
            // l2 occurs inside l1
            if i != j && l2.len() <= l1.len() {
                for pos in 0..=l1.len() - l2.len() {
                    if l1[pos..pos + l2.len()] == l2[..] {
                        let left = r1.rhs.clone();
                        let mut right = l1[..pos].to_vec();
                        right.extend_from_slice(&r2.rhs);
                        right.extend_from_slice(&l1[pos + l2.len()..]);
                        record(rs, &mut report, l1.clone(), left, right, (i, j))?;
                    }
                }
            }
        }
    }
    Ok(report)
}

fn record(
    rs: &RewritingSystem,
    report: &mut ConfluenceReport,
    overlap: Word,
    left: Word,
    right: Word,
    rules: (usize, usize),
) -> Result<(), GraphError> {
    report.checked += 1;
    let a = rs.normal_form(&left)?;
    let b = rs.normal_form(&right)?;
    if a != b {
        report.unresolved.push(CriticalPair {
            overlap,
            left: a,
            right: b,
            rules,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Arc<Alphabet> {
        Arc::new(Alphabet::from_pairs(&[("a", "a"), ("b", "b"), ("c", "c")]).unwrap())
    }

    /// Completed system for the Coxeter-type presentation with
    /// a² = b² = c² = (ab)³ = (bc)² = 1 under shortlex a < b < c.
    fn amalgam() -> RewritingSystem {
        RewritingSystem::from_strs(
            abc(),
            &[
                ("a a", ""),
                ("b b", ""),
                ("c c", ""),
                ("c b", "b c"),
                ("b a b", "a b a"),
                ("c a b a", "b c a b"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn involution_rule_cancels() {
        let rs = RewritingSystem::from_strs(abc(), &[("c c", "")]).unwrap();
        let al = rs.alphabet().clone();
        assert_eq!(rs.normal_form(&al.parse_spaced("c c").unwrap()).unwrap(), vec![]);
        let ac = al.parse_spaced("a c").unwrap();
        assert_eq!(rs.normal_form(&ac).unwrap(), ac);
    }

    #[test]
    fn amalgam_rewrites_bab() {
        let rs = amalgam();
        let al = rs.alphabet().clone();
        let nf = rs.normal_form(&al.parse_spaced("b a b").unwrap()).unwrap();
        assert_eq!(al.render(&nf), "a b a");
        // (ab)^3 is trivial
        let w = al.parse_spaced("a b a b a b").unwrap();
        assert_eq!(rs.normal_form(&w).unwrap(), vec![]);
        assert!(check_confluence(&rs).unwrap().is_confluent());
    }

    #[test]
    fn trivial_systems_are_confluent() {
        let rs = RewritingSystem::from_strs(abc(), &[("c c", "")]).unwrap();
        assert!(check_confluence(&rs).unwrap().is_confluent());
        let al = Arc::new(Alphabet::from_pairs(&[("a", "b"), ("b", "a")]).unwrap());
        let rs = RewritingSystem::from_strs(al, &[("a b", ""), ("b a", "")]).unwrap();
        assert!(check_confluence(&rs).unwrap().is_confluent());
    }

    #[test]
    fn raw_relators_are_not_confluent() {
        // Overlap "aa" / "ababab" on the word "aababab": the reducts are
        // "babab" and "a", both irreducible.
        let rs = RewritingSystem::from_strs(abc(), &[("a a", ""), ("a b a b a b", "")]).unwrap();
        let report = check_confluence(&rs).unwrap();
        assert!(!report.is_confluent());
        let al = rs.alphabet().clone();
        let expected = (al.parse_spaced("b a b a b").unwrap(), al.parse_spaced("a").unwrap());
        assert!(report
            .unresolved
            .iter()
            .any(|p| (p.left.clone(), p.right.clone()) == expected
                || (p.right.clone(), p.left.clone()) == expected));
    }

    #[test]
    fn rejects_non_decreasing_rule() {
        let err = RewritingSystem::from_strs(abc(), &[("a b", "b a")]).unwrap_err();
        assert!(matches!(err, GraphError::NotDecreasing(_)));
    }

    #[test]
    fn step_budget_is_enforced() {
        let rs = amalgam().with_step_budget(2);
        let al = rs.alphabet().clone();
        let w = al.parse_spaced("a b a b a b a b").unwrap();
        assert!(matches!(rs.normal_form(&w), Err(GraphError::StepBudget(2))));
    }
}
