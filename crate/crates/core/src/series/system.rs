//! Power series with rational coefficients and the polynomial systems of grammars.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::grammar::{ContextFreeGrammar, Symbol};

use super::poly::MPoly;
use super::SeriesError;

/// Coefficients of `t^0 .. t^order`; everything beyond is unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeriesQ {
    coeffs: Vec<BigRational>,
}

impl PowerSeriesQ {
    /// A series known up to and including `t^(coeffs.len() - 1)`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        PowerSeriesQ { coeffs }
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    /// Geometric-type series `1/(1 - q t)` to the given order.
    pub fn geometric(q: &BigRational, order: usize) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        let mut x = BigRational::one();
        for _ in 0..=order {
            c.push(x.clone());
            x *= q;
        }
        Self::new(c)
    }

    /// Highest known degree.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![BigRational::zero(); n + 1];
        for (i, x) in self.coeffs.iter().enumerate().take(n + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] += x * y;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// All known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The coefficients as integers, if they all are.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for PowerSeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}] + O(t^{})", parts.join(", "), self.coeffs.len())
    }
}

/// `coeff · t^t · Π F_vars`, with `vars` a sorted multiset of unknowns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub coeff: BigInt,
    pub t: u32,
    pub vars: Vec<usize>,
}

/// Equations `F_i = Σ monomials` in the unknowns `F_0 .. F_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSystem {
    pub names: Vec<String>,
    pub start: usize,
    pub equations: Vec<Vec<Monomial>>,
}

/// Translates each variable into an unknown and each production into the
/// monomial `t^(terminals) · Π F_B`; identical monomials are merged.
pub fn grammar_to_system(g: &ContextFreeGrammar) -> Result<PolynomialSystem, SeriesError> {
    g.check_proper()?;
    let k = g.variables().len();
    let mut eqs: Vec<BTreeMap<(u32, Vec<usize>), BigInt>> = vec![BTreeMap::new(); k];
    for p in g.productions() {
        let mut t = 0u32;
        let mut vars = Vec::new();
        for s in &p.rhs {
            match *s {
                Symbol::T(_) => t += 1,
                Symbol::V(v) => vars.push(v),
            }
        }
        vars.sort_unstable();
        *eqs[p.lhs].entry((t, vars)).or_insert_with(BigInt::zero) += 1;
    }
    Ok(PolynomialSystem {
        names: g.variables().to_vec(),
        start: g.start(),
        equations: eqs
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|((t, vars), coeff)| Monomial { coeff, t, vars })
                    .collect()
            })
            .collect(),
    })
}

impl PolynomialSystem {
    pub fn unknowns(&self) -> usize {
        self.names.len()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `F_i - rhs_i` with variable 0 = t and variable `j + 1` = `F_j`.
    pub fn to_mpolys(&self) -> Vec<MPoly> {
        let nv = self.unknowns() + 1;
        self.equations
            .iter()
            .enumerate()
            .map(|(i, eq)| {
                let mut p = MPoly::var(nv, i + 1);
                for m in eq {
                    let mut e = vec![0u32; nv];
                    e[0] = m.t;
                    for &v in &m.vars {
                        e[v + 1] += 1;
                    }
                    p = p.sub(&MPoly::monomial(nv, e, m.coeff.clone()));
                }
                p
            })
            .collect()
    }

    /// Exact integer solution to order `n`. Coefficient `t^d` is found from
    /// the lower ones; monomials of t-degree 0 are resolved by repeated passes
    /// within the degree, which terminate for proper systems.
    pub fn solve_integer(&self, n: usize) -> Result<Vec<Vec<BigInt>>, SeriesError> {
        let k = self.unknowns();
        let mut f: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n + 1); k];
        // partial[i][m][j] = coefficients of Π of the first j+1 factors of monomial m
        let mut partial: Vec<Vec<Vec<Vec<BigInt>>>> = self
            .equations
            .iter()
            .map(|eq| eq.iter().map(|m| vec![Vec::with_capacity(n + 1); m.vars.len()]).collect())
            .collect();
        for d in 0..=n {
            for fi in f.iter_mut() {
                fi.push(BigInt::zero());
            }
            for pi in partial.iter_mut() {
                for pm in pi.iter_mut() {
                    for pj in pm.iter_mut() {
                        pj.push(BigInt::zero());
                    }
                }
            }
            let mut stable = false;
            for _ in 0..k + 2 {
                let mut changed = false;
                for i in 0..k {
                    let mut total = BigInt::zero();
                    for (mi, m) in self.equations[i].iter().enumerate() {
                        let pm = &mut partial[i][mi];
                        for j in 0..m.vars.len() {
                            let v = m.vars[j];
                            let c = if j == 0 {
                                f[v][d].clone()
                            } else {
                                let (prev, _) = pm.split_at(j);
                                let prev = &prev[j - 1];
                                (0..=d).map(|x| &prev[x] * &f[v][d - x]).sum()
                            };
                            pm[j][d] = c;
                        }
                        let t = m.t as usize;
                        if t > d {
                            continue;
                        }
                        let prod = if m.vars.is_empty() {
                            if t == d {
                                BigInt::one()
                            } else {
                                BigInt::zero()
                            }
                        } else {
                            pm[m.vars.len() - 1][d - t].clone()
                        };
                        total += &m.coeff * prod;
                    }
                    if total != f[i][d] {
                        f[i][d] = total;
                        changed = true;
                    }
                }
                if !changed {
                    stable = true;
                    break;
                }
            }
            if !stable {
                return Err(SeriesError::NotStabilizing { degree: d });
            }
        }
        Ok(f)
    }

    /// As [`PolynomialSystem::solve_integer`], as rational series.
    pub fn solve_series(&self, n: usize) -> Result<Vec<PowerSeriesQ>, SeriesError> {
        Ok(self
            .solve_integer(n)?
            .iter()
            .map(|c| PowerSeriesQ::from_integers(c))
            .collect())
    }
}

/// Series of every unknown to order `n`.
pub fn solve_series(sys: &PolynomialSystem, n: usize) -> Result<Vec<PowerSeriesQ>, SeriesError> {
    sys.solve_series(n)
}

impl fmt::Display for PolynomialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, eq) in self.equations.iter().enumerate() {
            let terms: Vec<String> = eq
                .iter()
                .map(|m| {
                    let mut parts = Vec::new();
                    if !m.coeff.is_one() || (m.t == 0 && m.vars.is_empty()) {
                        parts.push(m.coeff.to_string());
                    }
                    match m.t {
                        0 => {}
                        1 => parts.push("t".to_string()),
                        e => parts.push(format!("t^{e}")),
                    }
                    for &v in &m.vars {
                        parts.push(format!("F[{}]", self.names[v]));
                    }
                    parts.join("*")
                })
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "F[{}] = {}", self.names[i], rhs)?;
        }
        Ok(())
    }
}
