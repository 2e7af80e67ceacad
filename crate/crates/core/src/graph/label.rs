//! Label alphabets with an inverse pairing.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GraphError;

/// Index of a label inside its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label(pub u16);

impl Label {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word over an alphabet.
pub type Word = Vec<Label>;

/// Declared label, as it appears in description files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelDecl {
    pub token: String,
    pub inverse: String,
}

/// Finite alphabet. Declaration order is the total order used for shortlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    inverse: Vec<Label>,
    by_token: HashMap<String, Label>,
}

impl Alphabet {
    pub fn new(decls: &[LabelDecl]) -> Result<Self, GraphError> {
        let mut by_token = HashMap::new();
        let mut tokens = Vec::with_capacity(decls.len());
        for d in decls {
            if d.token.is_empty() || d.token.chars().any(char::is_whitespace) {
                return Err(GraphError::BadToken(d.token.clone()));
            }
            if by_token.insert(d.token.clone(), Label(tokens.len() as u16)).is_some() {
                return Err(GraphError::DuplicateToken(d.token.clone()));
            }
            tokens.push(d.token.clone());
        }
        let mut inverse = Vec::with_capacity(decls.len());
        for d in decls {
            let inv = *by_token
                .get(&d.inverse)
                .ok_or_else(|| GraphError::UnknownToken(d.inverse.clone()))?;
            inverse.push(inv);
        }
        for (i, inv) in inverse.iter().enumerate() {
            if inverse[inv.index()].index() != i {
                return Err(GraphError::InverseNotInvolution(tokens[i].clone()));
            }
        }
        Ok(Alphabet {
            tokens,
            inverse,
            by_token,
        })
    }

    /// Convenience constructor from `(token, inverse)` pairs.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self, GraphError> {
        let decls: Vec<LabelDecl> = pairs
            .iter()
            .map(|(t, i)| LabelDecl {
                token: t.to_string(),
                inverse: i.to_string(),
            })
            .collect();
        Self::new(&decls)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.tokens.len()).map(|i| Label(i as u16))
    }

    pub fn token(&self, l: Label) -> &str {
        &self.tokens[l.index()]
    }

    pub fn inverse(&self, l: Label) -> Label {
        self.inverse[l.index()]
    }

    pub fn is_involution(&self, l: Label) -> bool {
        self.inverse(l) == l
    }

    pub fn lookup(&self, token: &str) -> Option<Label> {
        self.by_token.get(token).copied()
    }

    pub fn parse_word<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word, GraphError> {
        tokens
            .iter()
            .map(|t| {
                self.lookup(t.as_ref())
                    .ok_or_else(|| GraphError::UnknownToken(t.as_ref().to_string()))
            })
            .collect()
    }

    /// Parses a whitespace separated word; `ε` and the empty string give the empty word.
    pub fn parse_spaced(&self, text: &str) -> Result<Word, GraphError> {
        let parts: Vec<&str> = text.split_whitespace().filter(|t| *t != "ε").collect();
        self.parse_word(&parts)
    }

    pub fn inverse_word(&self, w: &[Label]) -> Word {
        w.iter().rev().map(|&l| self.inverse(l)).collect()
    }

    pub fn tokens_of(&self, w: &[Label]) -> Vec<String> {
        w.iter().map(|&l| self.token(l).to_string()).collect()
    }

    /// Space separated rendering, with the empty word rendered as the empty string.
    pub fn render(&self, w: &[Label]) -> String {
        self.tokens_of(w).join(" ")
    }

    pub fn decls(&self) -> Vec<LabelDecl> {
        self.labels()
            .map(|l| LabelDecl {
                token: self.token(l).to_string(),
                inverse: self.token(self.inverse(l)).to_string(),
            })
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.tokens.join(", "))
    }
}

/// Shortlex comparison: length first, then lexicographic by label index.
pub fn shortlex_cmp(a: &[Label], b: &[Label]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_is_involution() {
        let al = Alphabet::from_pairs(&[("a", "A"), ("A", "a"), ("c", "c")]).unwrap();
        for l in al.labels() {
            assert_eq!(al.inverse(al.inverse(l)), l);
        }
        assert!(al.is_involution(al.lookup("c").unwrap()));
        assert!(!al.is_involution(al.lookup("a").unwrap()));
    }

    #[test]
    fn rejects_non_involutive_pairing() {
        let err = Alphabet::from_pairs(&[("a", "b"), ("b", "b")]).unwrap_err();
        assert!(matches!(err, GraphError::InverseNotInvolution(_)));
    }

    #[test]
    fn shortlex_orders_by_length_first() {
        use std::cmp::Ordering::*;
        let a = Label(0);
        let b = Label(1);
        assert_eq!(shortlex_cmp(&[b], &[a, a]), Less);
        assert_eq!(shortlex_cmp(&[a, b], &[b, a]), Less);
        assert_eq!(shortlex_cmp(&[], &[]), Equal);
    }
}
