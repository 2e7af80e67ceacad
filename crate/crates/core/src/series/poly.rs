//! Exact integer polynomials: univariate `UPoly` helpers over `Vec<BigInt>`
//! (index = degree) and sparse multivariate `MPoly`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients by degree, without trailing zeros; the zero polynomial is empty.
pub type UPoly = Vec<BigInt>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn from_i64(c: &[i64]) -> UPoly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[BigInt], k: &BigInt) -> UPoly {
    trim(a.iter().map(|c| c * k).collect())
}

pub fn derivative(a: &[BigInt]) -> UPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the integer content and makes the leading coefficient positive.
pub fn primitive(a: &[BigInt]) -> UPoly {
    let g = content(a);
    if g.is_zero() {
        return Vec::new();
    }
    let sign = if a[degree(a).expect("nonzero")].is_negative() { -g } else { g };
    trim(a.iter().map(|c| c / &sign).collect())
}

/// `a / b` when the division is exact over the integers.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<UPoly> {
    let db = degree(b)?;
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); da - db + 1];
    let lb = &b[db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let (c, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, x) in b.iter().enumerate() {
            r[i + shift] -= &c * x;
        }
        q[shift] = c;
        r = trim(r);
    }
    Some(trim(q))
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^k a mod b` with `k = deg a - deg b + 1`.
pub fn prem(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let lb = b[db].clone();
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let mut k = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone();
        let shift = dr - db;
        r = r.iter().map(|x| x * &lb).collect();
        for (i, x) in b.iter().enumerate() {
            r[i + shift] -= &c * x;
        }
        r = trim(r);
        k -= 1;
    }
    let f = num_traits::pow(lb, k);
    scale(&r, &f)
}

/// Greatest common divisor up to sign, primitive with positive leading coefficient
/// times the gcd of the contents.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a.is_empty() {
        return primitive(&b).into_iter().map(|c| c * content(&b)).collect();
    }
    if b.is_empty() {
        return primitive(&a).into_iter().map(|c| c * content(&a)).collect();
    }
    let g = content(&a).gcd(&content(&b));
    let (mut x, mut y) = (primitive(&a), primitive(&b));
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    scale(&primitive(&x), &g)
}

/// `Σ a_i num^i den^(n-i)` with `n = deg a`: the value at `num/den` times `den^n`.
pub fn eval_scaled(a: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    let Some(n) = degree(a) else {
        return BigInt::zero();
    };
    let mut total = BigInt::zero();
    let mut np = BigInt::one();
    let mut dp: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut d = BigInt::one();
    for _ in 0..=n {
        dp.push(d.clone());
        d *= den;
    }
    for (i, c) in a.iter().enumerate().take(n + 1) {
        total += c * &np * &dp[n - i];
        np *= num;
    }
    total
}

/// `a(x + 1)`.
pub fn taylor_shift_one(a: &[BigInt]) -> UPoly {
    let mut c = a.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let v = c[j + 1].clone();
            c[j] += v;
        }
    }
    trim(c)
}

/// `x^n a(1/x)` with `n = deg a`.
pub fn reverse(a: &[BigInt]) -> UPoly {
    let mut c = trim(a.to_vec());
    c.reverse();
    trim(c)
}

/// `2^n a(x/2)`: the coefficient of degree i is multiplied by `2^(n-i)`.
pub fn halve_variable(a: &[BigInt]) -> UPoly {
    let Some(n) = degree(a) else {
        return Vec::new();
    };
    a.iter()
        .enumerate()
        .map(|(i, c)| c << (n - i))
        .collect()
}

/// `a(k x)`.
pub fn scale_variable(a: &[BigInt], k: &BigInt) -> UPoly {
    let mut p = BigInt::one();
    let mut out = Vec::with_capacity(a.len());
    for c in a {
        out.push(c * &p);
        p *= k;
    }
    trim(out)
}

pub fn sign_variations(a: &[BigInt]) -> usize {
    let mut last: Option<bool> = None;
    let mut v = 0;
    for c in a.iter().filter(|c| !c.is_zero()) {
        let s = c.is_positive();
        if last.is_some_and(|l| l != s) {
            v += 1;
        }
        last = Some(s);
    }
    v
}

/// Human-readable rendering in the variable `x`.
pub fn render(a: &[BigInt], x: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => x.to_string(),
            _ => format!("{x}^{i}"),
        };
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono
        } else {
            format!("{mag}*{mono}")
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        parts.push((sign, body));
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (sign, body)) in parts.iter().enumerate() {
        if k == 0 {
            if *sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(if *sign == "-" { " - " } else { " + " });
        }
        s.push_str(body);
    }
    s
}

/// Sparse polynomial in `nvars` variables; exponent vectors are compared
/// lexicographically, variable 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut r = MPoly::constant(self.nvars, BigInt::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn uses(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Coefficients with respect to variable `i`, by degree.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e2 = e.clone();
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// `Σ coeffs[k] x_i^k`.
    pub fn from_coeffs_in(nvars: usize, i: usize, coeffs: &[MPoly]) -> MPoly {
        let mut r = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[i] += k as u32;
                r.add_term(e2, v.clone());
            }
        }
        r
    }

    fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// `self / d` when `d` divides `self` exactly over the integers.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (ld, lc) = d.leading()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((le, c)) = r.leading() {
            if le.iter().zip(ld).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, rem) = c.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let e: Vec<u32> = le.iter().zip(ld).map(|(a, b)| a - b).collect();
            let m = MPoly::monomial(self.nvars, e, qc);
            r = r.sub(&m.mul(d));
            q = q.add(&m);
        }
        Some(q)
    }

    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the integer content, the largest monomial factor and the
    /// content as a polynomial in the variable `t` over the other variables.
    pub fn normalized(&self, t: usize) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut minexp = vec![u32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (m, &x) in minexp.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let e2: Vec<u32> = e.iter().zip(&minexp).map(|(a, b)| a - b).collect();
            terms.insert(e2, c.clone());
        }
        let mut p = MPoly {
            nvars: self.nvars,
            terms,
        };
        // content in Z[t]
        let mut groups: BTreeMap<Vec<u32>, UPoly> = BTreeMap::new();
        for (e, c) in &p.terms {
            let mut key = e.clone();
            let k = key[t] as usize;
            key[t] = 0;
            let g = groups.entry(key).or_default();
            if g.len() <= k {
                g.resize(k + 1, BigInt::zero());
            }
            g[k] = c.clone();
        }
        let mut g: UPoly = Vec::new();
        for u in groups.values() {
            g = gcd(&g, u);
            if degree(&g) == Some(0) && g[0].abs().is_one() {
                break;
            }
        }
        if degree(&g).is_some_and(|d| d > 0) || g.first().is_some_and(|c| !c.abs().is_one()) {
            let mut np = MPoly::zero(self.nvars);
            for (key, u) in groups {
                let qu = div_exact(&u, &g).expect("content divides");
                for (k, c) in qu.into_iter().enumerate() {
                    let mut e = key.clone();
                    e[t] = k as u32;
                    np.add_term(e, c);
                }
            }
            p = np;
        }
        // sign: leading term positive
        if p.leading().is_some_and(|(_, c)| c.is_negative()) {
            p = p.neg();
        }
        p
    }

    /// Evaluates at integer values for all variables.
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    v *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            s += v;
        }
        s
    }
}
