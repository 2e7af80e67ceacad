//! Resultant elimination down to one equation `P(t, y) = 0` for a chosen unknown.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, MPoly, UPoly};
use super::system::{PolynomialSystem, PowerSeriesQ};
use super::SeriesError;

/// `P(t, y) = Σ_k coeffs[k](t) y^k` with integer coefficients, content-free
/// and squarefree in `y`; the lowest coefficient of the leading `y` term is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicEquation {
    coeffs: Vec<UPoly>,
}

impl AlgebraicEquation {
    /// Normalizes content and sign; the zero polynomial is rejected.
    pub fn new(coeffs: Vec<UPoly>) -> Result<Self, SeriesError> {
        let c = bp_primitive(&coeffs);
        if c.is_empty() {
            return Err(SeriesError::Degenerate("zero polynomial".to_string()));
        }
        Ok(AlgebraicEquation { coeffs: c })
    }

    /// Coefficients of `y^k` as polynomials in `t`.
    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree_t(&self) -> usize {
        self.coeffs.iter().filter_map(|c| poly::degree(c)).max().unwrap_or(0)
    }

    pub fn leading_coefficient(&self) -> &UPoly {
        self.coeffs.last().expect("nonzero")
    }

    /// Rows `(deg_t, deg_y, coefficient)` of the nonzero coefficients.
    pub fn rows(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (j, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    out.push((j, k, x.clone()));
                }
            }
        }
        out.sort_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
        out
    }

    /// `P(t, f(t))` to the order of `f`.
    pub fn evaluate(&self, f: &PowerSeriesQ) -> PowerSeriesQ {
        let n = f.order();
        let lift = |c: &UPoly| {
            let mut v = vec![BigRational::zero(); n + 1];
            for (i, x) in c.iter().enumerate().take(n + 1) {
                v[i] = BigRational::from_integer(x.clone());
            }
            PowerSeriesQ::new(v)
        };
        let mut acc = lift(self.leading_coefficient());
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(f).add(&lift(c));
        }
        acc
    }

    /// `P(t, f) ≡ 0` to the order of `f`.
    pub fn annihilates(&self, f: &PowerSeriesQ) -> bool {
        self.evaluate(f).is_zero()
    }

    /// `(-1)^(n(n-1)/2) Res_y(P, ∂P/∂y) / lc_y(P)` for `n = deg_y P`, a
/// polynomial in `t`; `1` for linear `P`.
    pub fn discriminant(&self) -> UPoly {
        let d = self.degree_y();
        if d == 0 {
            return vec![BigInt::zero()];
        }
        if d == 1 {
            return vec![BigInt::one()];
        }
        let dp: Vec<UPoly> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| poly::scale(c, &BigInt::from(k)))
            .collect();
        let res = resultant_u(&self.coeffs, &dp);
        let q = poly::div_exact(&res, self.leading_coefficient())
            .expect("the leading coefficient divides the resultant");
        if (d * (d - 1) / 2) % 2 == 1 {
            poly::scale(&q, &BigInt::from(-1))
        } else {
            q
        }
    }

    /// `prem(other, self) == 0` over `Z[t][y]`: `self` divides `other` in `Q(t)[y]`.
    pub fn divides(&self, other: &[UPoly]) -> bool {
        bp_prem(other, &self.coeffs).is_empty()
    }
}

impl fmt::Display for AlgebraicEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_empty() {
                continue;
            }
            let y = match k {
                0 => String::new(),
                1 => "*y".to_string(),
                _ => format!("*y^{k}"),
            };
            parts.push(format!("({}){y}", poly::render(c, "t")));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

// --- polynomials in y over Z[t] ---

fn bp_trim(mut a: Vec<UPoly>) -> Vec<UPoly> {
    for c in a.iter_mut() {
        *c = poly::trim(std::mem::take(c));
    }
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
    a
}

fn bp_content(a: &[UPoly]) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in a {
        g = poly::gcd(&g, c);
    }
    g
}

/// Divides out the content in `Z[t]`; sign fixed by the lowest nonzero
/// coefficient of the leading `y` coefficient.
fn bp_primitive(a: &[UPoly]) -> Vec<UPoly> {
    let a = bp_trim(a.to_vec());
    if a.is_empty() {
        return a;
    }
    let g = bp_content(&a);
    let mut out: Vec<UPoly> = a
        .iter()
        .map(|c| poly::div_exact(c, &g).expect("content divides"))
        .collect();
    let lc = out.last().expect("nonzero");
    if lc.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for c in out.iter_mut() {
            *c = poly::scale(c, &BigInt::from(-1));
        }
    }
    out
}

fn bp_derivative(a: &[UPoly]) -> Vec<UPoly> {
    bp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| poly::scale(c, &BigInt::from(k)))
            .collect(),
    )
}

/// Pseudo-remainder in `y`.
fn bp_prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let b = bp_trim(b.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = bp_trim(a.to_vec());
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        let shift = dr - db;
        r = r.iter().map(|x| poly::mul(x, &lb)).collect();
        for (i, x) in b.iter().enumerate() {
            r[i + shift] = poly::sub(&r[i + shift], &poly::mul(&c, x));
        }
        r = bp_trim(r);
    }
    r
}

fn bp_gcd(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let (mut x, mut y) = (bp_primitive(a), bp_primitive(b));
    if y.is_empty() {
        return x;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = bp_prem(&x, &y);
        x = y;
        y = bp_primitive(&r);
    }
    x
}

/// Exact quotient `a / b` in `Z[t][y]`.
fn bp_div_exact(a: &[UPoly], b: &[UPoly]) -> Option<Vec<UPoly>> {
    let b = bp_trim(b.to_vec());
    let db = b.len().checked_sub(1)?;
    let mut r = bp_trim(a.to_vec());
    if r.len() <= db {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![Vec::new(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = poly::div_exact(&r[dr], &b[db])?;
        let shift = dr - db;
        for (i, x) in b.iter().enumerate() {
            r[i + shift] = poly::sub(&r[i + shift], &poly::mul(&c, x));
        }
        q[shift] = c;
        r = bp_trim(r);
    }
    r.is_empty().then(|| bp_trim(q))
}

/// Squarefree part in `y`.
fn bp_squarefree(a: &[UPoly]) -> Vec<UPoly> {
    let d = bp_derivative(a);
    if d.is_empty() {
        return bp_primitive(a);
    }
    let g = bp_gcd(a, &d);
    if g.len() <= 1 {
        return bp_primitive(a);
    }
    bp_primitive(&bp_div_exact(&bp_primitive(a), &g).expect("gcd divides"))
}

// --- determinants over integral domains ---

trait Domain: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Domain for MPoly {
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        MPoly::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MPoly::sub(self, o)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        MPoly::div_exact(self, o).expect("Bareiss division is exact")
    }
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MPoly::constant(self.nvars(), BigInt::one())
    }
}

#[derive(Clone)]
struct U(UPoly);

impl Domain for U {
    fn is_zero(&self) -> bool {
        poly::degree(&self.0).is_none()
    }
    fn mul(&self, o: &Self) -> Self {
        U(poly::mul(&self.0, &o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        U(poly::sub(&self.0, &o.0))
    }
    fn neg(&self) -> Self {
        U(poly::scale(&self.0, &BigInt::from(-1)))
    }
    fn div_exact(&self, o: &Self) -> Self {
        U(poly::div_exact(&self.0, &o.0).expect("Bareiss division is exact"))
    }
    fn zero_like(&self) -> Self {
        U(Vec::new())
    }
    fn one_like(&self) -> Self {
        U(vec![BigInt::one()])
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss<R: Domain>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    let mut sign = false;
    let mut prev = m[0][0].one_like();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return m[0][0].zero_like();
            };
            m.swap(k, s);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

fn sylvester<R: Domain>(a: &[R], b: &[R]) -> Vec<Vec<R>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let z = a[0].zero_like();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![z.clone(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![z.clone(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn resultant_u(a: &[UPoly], b: &[UPoly]) -> UPoly {
    let a: Vec<U> = bp_trim(a.to_vec()).into_iter().map(U).collect();
    let b: Vec<U> = bp_trim(b.to_vec()).into_iter().map(U).collect();
    if a.len() == 1 {
        return (0..b.len() - 1).fold(vec![BigInt::one()], |acc, _| poly::mul(&acc, &a[0].0));
    }
    if b.len() == 1 {
        return (0..a.len() - 1).fold(vec![BigInt::one()], |acc, _| poly::mul(&acc, &b[0].0));
    }
    bareiss(sylvester(&a, &b)).0
}

/// Resultant of `p` and `q` with respect to variable `x`, up to sign.
pub fn resultant(p: &MPoly, q: &MPoly, x: usize) -> MPoly {
    let a = p.coeffs_in(x);
    let b = q.coeffs_in(x);
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 {
        return p.pow(n as u32);
    }
    if n == 0 {
        return q.pow(m as u32);
    }
    if m == 1 {
        // a1^n q(-a0/a1) = Σ b_i (-a0)^i a1^(n-i)
        let na0 = a[0].neg();
        let mut out = MPoly::zero(p.nvars());
        let mut pa0 = MPoly::constant(p.nvars(), BigInt::one());
        let a1_pows: Vec<MPoly> = {
            let mut v = vec![MPoly::constant(p.nvars(), BigInt::one())];
            for _ in 0..n {
                let next = v.last().expect("nonempty").mul(&a[1]);
                v.push(next);
            }
            v
        };
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                out = out.add(&bi.mul(&pa0).mul(&a1_pows[n - i]));
            }
            pa0 = pa0.mul(&na0);
        }
        return out;
    }
    bareiss(sylvester(&a, &b))
}

/// Chooses the next unknown to eliminate: smallest pivot degree, then the
/// smallest pivot, then the fewest equations touched, then the lowest index.
fn choose(polys: &[MPoly], remaining: &[usize]) -> usize {
    let mut best: Option<((u32, usize, usize, usize), usize)> = None;
    for &x in remaining {
        let users: Vec<&MPoly> = polys.iter().filter(|p| p.uses(x)).collect();
        let key = match users.iter().map(|p| (p.degree_in(x), p.term_count())).min() {
            Some((d, t)) => (d, t, users.len(), x),
            None => (0, 0, 0, x),
        };
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, x));
        }
    }
    best.expect("nonempty").1
}

/// Eliminates every unknown but `target` by resultants. The result is
/// content-free and squarefree but may still carry extraneous factors.
/// With `order` the unknowns are eliminated in that order.
pub fn eliminate_raw(
    sys: &PolynomialSystem,
    target: usize,
    order: Option<&[usize]>,
) -> Result<AlgebraicEquation, SeriesError> {
    let k = sys.unknowns();
    if target >= k {
        return Err(SeriesError::Degenerate(format!("no unknown {target}")));
    }
    let mut polys: Vec<MPoly> = sys
        .to_mpolys()
        .into_iter()
        .map(|p| p.normalized(0))
        .filter(|p| !p.is_zero())
        .collect();
    let mut remaining: Vec<usize> = (0..k).filter(|&i| i != target).map(|i| i + 1).collect();
    if let Some(o) = order {
        let mut want: Vec<usize> = o.iter().map(|&i| i + 1).collect();
        want.sort_unstable();
        if want != remaining {
            return Err(SeriesError::Degenerate(
                "elimination order must list every other unknown once".to_string(),
            ));
        }
    }
    let mut step = 0;
    while !remaining.is_empty() {
        let x = match order {
            Some(o) => o[step] + 1,
            None => choose(&polys, &remaining),
        };
        step += 1;
        remaining.retain(|&r| r != x);
        let (users, mut rest): (Vec<MPoly>, Vec<MPoly>) =
            polys.into_iter().partition(|p| p.uses(x));
        if let Some(pi) = (0..users.len()).min_by_key(|&i| (users[i].degree_in(x), users[i].term_count(), i)) {
            let pivot = &users[pi];
            for (i, q) in users.iter().enumerate() {
                if i == pi {
                    continue;
                }
                let r = resultant(pivot, q, x).normalized(0);
                if r.is_zero() {
                    return Err(SeriesError::Degenerate(format!(
                        "resultant vanished while eliminating {}",
                        sys.names[x - 1]
                    )));
                }
                if !rest.contains(&r) {
                    rest.push(r);
                }
            }
        }
        polys = rest;
    }
    let y = target + 1;
    let best = polys
        .iter()
        .filter(|p| p.uses(y))
        .min_by_key(|p| (p.degree_in(y), p.degree_in(0), p.term_count()))
        .ok_or_else(|| SeriesError::Degenerate("no equation involves the target".to_string()))?;
    let coeffs: Vec<UPoly> = best
        .coeffs_in(y)
        .iter()
        .map(|c| {
            let mut u = vec![BigInt::zero(); c.degree_in(0) as usize + 1];
            for (e, v) in c.terms() {
                u[e[0] as usize] = v.clone();
            }
            poly::trim(u)
        })
        .collect();
    AlgebraicEquation::new(bp_squarefree(&coeffs))
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(x: &BigRational) -> Option<u64> {
    let m = BigInt::from(P);
    let n = ((x.numer() % &m) + &m) % &m;
    let d = ((x.denom() % &m) + &m) % &m;
    if d.is_zero() {
        return None;
    }
    let n = u64::try_from(n).ok()?;
    let d = u64::try_from(d).ok()?;
    Some(mulmod(n, powmod(d, P - 2)))
}

/// Rows `[t^n] t^j f^i` for `n < rows`, columns ordered by `(i, j)`.
fn annihilator_matrix(powers: &[PowerSeriesQ], d: usize, tdeg: usize, rows: usize) -> Vec<Vec<BigRational>> {
    let mut m = vec![vec![BigRational::zero(); (d + 1) * (tdeg + 1)]; rows];
    for (n, row) in m.iter_mut().enumerate() {
        for i in 0..=d {
            for j in 0..=tdeg.min(n) {
                row[i * (tdeg + 1) + j] = powers[i].coeff(n - j).clone();
            }
        }
    }
    m
}

fn rank_mod(m: &[Vec<BigRational>]) -> Option<usize> {
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(to_mod).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let inv = powmod(a[rank][c], P - 2);
        let pivot = a[rank].clone();
        for r in rank + 1..a.len() {
            if a[r][c] != 0 {
                let f = mulmod(a[r][c], inv);
                for (x, &y) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x + P - mulmod(f, y)) % P;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// One nonzero kernel vector over the rationals, if any.
fn kernel_vector(m: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][c].recip();
        for x in a[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[rank].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); cols];
    v[free] = BigRational::one();
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -a[r][free].clone();
    }
    Some(v)
}

/// Series terms needed by [`select_factor`] for a raw equation.
pub fn evidence_needed(raw: &AlgebraicEquation) -> usize {
    let (d, t) = (raw.degree_y(), raw.degree_t());
    ((d + 1) * (t + 1)).max(2 * t + 2 * d) + 16
}

/// The irreducible factor of `raw` annihilating `f`: the annihilator of `f`
/// of least `y`-degree (then least `t`-degree) that divides `raw`, checked
/// exactly on every known coefficient of `f`.
pub fn select_factor(
    raw: &AlgebraicEquation,
    f: &PowerSeriesQ,
) -> Result<AlgebraicEquation, SeriesError> {
    let need = evidence_needed(raw);
    if f.order() + 1 < need {
        return Err(SeriesError::EvidenceTooShort {
            have: f.order() + 1,
            need,
        });
    }
    let (dmax, tmax) = (raw.degree_y(), raw.degree_t());
    let mut powers = vec![PowerSeriesQ::new(
        std::iter::once(BigRational::one())
            .chain(std::iter::repeat_n(BigRational::zero(), f.order()))
            .collect(),
    )];
    for i in 1..=dmax {
        powers.push(powers[i - 1].mul(f));
    }
    let rows = f.order() + 1;
    for d in 1..=dmax {
        let has = |t: usize| {
            let m = annihilator_matrix(&powers, d, t, rows);
            rank_mod(&m).is_none_or(|r| r < m[0].len())
        };
        if !has(tmax) {
            continue;
        }
        let candidate = if d == dmax {
            raw.clone()
        } else {
            let tmin = (0..=tmax).find(|&t| has(t)).expect("tmax works");
            let m = annihilator_matrix(&powers, d, tmin, rows);
            let Some(v) = kernel_vector(&m) else {
                continue;
            };
            let lcm = v.iter().fold(BigInt::one(), |l, x| num_integer::lcm(l, x.denom().clone()));
            let coeffs: Vec<UPoly> = (0..=d)
                .map(|i| {
                    poly::trim(
                        (0..=tmin)
                            .map(|j| (&v[i * (tmin + 1) + j] * BigRational::from_integer(lcm.clone())).to_integer())
                            .collect(),
                    )
                })
                .collect();
            match AlgebraicEquation::new(coeffs) {
                Ok(c) => c,
                Err(_) => continue,
            }
        };
        if candidate.degree_y() == d && candidate.annihilates(f) && candidate.divides(&raw.coeffs) {
            return Ok(candidate);
        }
    }
    Err(SeriesError::NoAnnihilatingFactor)
}

/// Raw elimination followed by factor selection against `evidence`.
pub fn eliminate(
    sys: &PolynomialSystem,
    target: usize,
    evidence: &PowerSeriesQ,
) -> Result<AlgebraicEquation, SeriesError> {
    let raw = eliminate_raw(sys, target, None)?;
    select_factor(&raw, evidence)
}

/// The minimal polynomial of unknown `target` together with the series used
/// as evidence. The returned equation annihilates every known coefficient.
pub fn minimal_polynomial(
    sys: &PolynomialSystem,
    target: usize,
) -> Result<(AlgebraicEquation, PowerSeriesQ), SeriesError> {
    let raw = eliminate_raw(sys, target, None)?;
    let n = evidence_needed(&raw) + 16;
    let f = sys.solve_series(n)?.swap_remove(target);
    let eq = select_factor(&raw, &f)?;
    if !eq.annihilates(&f) {
        return Err(SeriesError::Verification(
            "the selected equation does not annihilate the series".to_string(),
        ));
    }
    Ok((eq, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::ContextFreeGrammar;
    use crate::series::grammar_to_system;

    fn sys(text: &str) -> PolynomialSystem {
        grammar_to_system(&ContextFreeGrammar::from_text(text).unwrap()).unwrap()
    }

    fn u(c: &[i64]) -> UPoly {
        poly::from_i64(c)
    }

    #[test]
    fn geometric_equation() {
        let (eq, _) = minimal_polynomial(&sys("S -> ;\nS -> a S ;"), 0).unwrap();
        // (1 - t) y - 1, normalized so that the y-coefficient starts positive
        assert_eq!(eq.coeffs(), &[u(&[-1]), u(&[1, -1])]);
    }

    #[test]
    fn catalan_equation() {
        let (eq, _) = minimal_polynomial(&sys("S -> ;\nS -> a S b S ;"), 0).unwrap();
        // t^2 y^2 - y + 1
        assert_eq!(eq.coeffs(), &[u(&[1]), u(&[-1]), u(&[0, 0, 1])]);
        assert_eq!(eq.discriminant(), u(&[1, 0, -4]));
    }

    #[test]
    fn elimination_order_does_not_matter() {
        let s = sys("S -> ;\nS -> A S ;\nA -> a S b ;");
        let f = s.solve_series(40).unwrap();
        let a = eliminate_raw(&s, 0, Some(&[1])).unwrap();
        let b = eliminate_raw(&s, 0, None).unwrap();
        let fa = select_factor(&a, &f[0]).unwrap();
        let fb = select_factor(&b, &f[0]).unwrap();
        assert_eq!(fa, fb);
        // and with A as target, eliminating S
        let c = eliminate_raw(&s, 1, Some(&[0])).unwrap();
        assert!(select_factor(&c, &f[1]).unwrap().annihilates(&f[1]));
    }

    #[test]
    fn extraneous_factors_are_dropped() {
        // (y - 1/(1-t)) * (y - 2) expanded: the raw polynomial is reducible
        let raw = AlgebraicEquation::new(vec![
            u(&[2]),
            u(&[-3, 2]),
            u(&[1, -1]),
        ])
        .unwrap();
        let f = PowerSeriesQ::geometric(&BigRational::one(), 30);
        let m = select_factor(&raw, &f).unwrap();
        assert_eq!(m.coeffs(), &[u(&[-1]), u(&[1, -1])]);
    }

    #[test]
    fn resultant_of_linear_forms() {
        let x = MPoly::var(3, 1);
        let y = MPoly::var(3, 2);
        let t = MPoly::var(3, 0);
        // eliminate x from {x - t y, x^2 - 1}
        let r = resultant(&x.sub(&t.mul(&y)), &x.mul(&x).sub(&MPoly::constant(3, 1.into())), 1);
        let expect = t.mul(&t).mul(&y).mul(&y).sub(&MPoly::constant(3, 1.into()));
        assert!(r == expect || r == expect.neg());
        // against the Sylvester route
        let s = bareiss(sylvester(
            &x.sub(&t.mul(&y)).coeffs_in(1),
            &x.mul(&x).sub(&MPoly::constant(3, 1.into())).coeffs_in(1),
        ));
        assert!(s == r || s == r.neg());
    }
}
