//! Exact isolation of positive real roots and the connective constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::eliminate::AlgebraicEquation;
use super::poly::{self, UPoly};
use super::SeriesError;

/// A closed interval with rational endpoints; `lo == hi` for an exact root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo.to_f64().is_some_and(|l| l <= x) && self.hi.to_f64().is_some_and(|h| x <= h)
    }

    /// The smallest enclosing interval with endpoints on the grid `10^-digits`.
    pub fn outward(&self, digits: u32) -> RootInterval {
        let step = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
        RootInterval {
            lo: (&self.lo / &step).floor() * &step,
            hi: (&self.hi / &step).ceil() * &step,
        }
    }

    /// Endpoints as decimals with `digits` fractional digits, rounded outward.
    pub fn to_decimal(&self, digits: u32) -> (String, String) {
        let r = self.outward(digits);
        let show = |x: &BigRational| {
            let scaled = (x * BigRational::from_integer(BigInt::from(10).pow(digits))).to_integer();
            let s = scaled.abs().to_string();
            let s = format!("{:0>width$}", s, width = digits as usize + 1);
            let (int, frac) = s.split_at(s.len() - digits as usize);
            let sign = if scaled < BigInt::zero() { "-" } else { "" };
            if digits == 0 {
                format!("{sign}{int}")
            } else {
                format!("{sign}{int}.{frac}")
            }
        };
        (show(&r.lo), show(&r.hi))
    }
}

/// Decimal digits of the grid used to report an interval of width at most `tol`.
pub fn digits_for(tol: f64) -> u32 {
    let mut d = 0;
    while 2.0 * 10f64.powi(-(d as i32)) > tol && d < 30 {
        d += 1;
    }
    d
}

fn squarefree(p: &[BigInt]) -> UPoly {
    let p = poly::primitive(p);
    let d = poly::derivative(&p);
    if poly::degree(&d).is_none() {
        return p;
    }
    let g = poly::gcd(&p, &d);
    poly::primitive(&poly::div_exact(&p, &g).expect("gcd divides"))
}

/// The roots of `p` in the open interval `(0, 2)`, each isolated in an
/// interval of width at most `2^-bits` (exact roots as points), ascending.
pub fn positive_roots_below_two(p: &[BigInt], bits: u32) -> Vec<RootInterval> {
    let mut q = squarefree(p);
    while q.first().is_some_and(|c| c.is_zero()) {
        q.remove(0);
    }
    if poly::degree(&q).is_none_or(|d| d == 0) {
        return Vec::new();
    }
    // t = 2x maps (0, 2) onto (0, 1)
    let q = poly::scale_variable(&q, &BigInt::from(2));
    let half = (BigInt::one(), BigInt::from(2));
    // (polynomial whose (0,1)-roots are those of q in (c/2^k, (c+1)/2^k), k, c)
    let mut stack: Vec<(UPoly, u32, BigInt)> = vec![(q, 0, BigInt::zero())];
    let mut out = Vec::new();
    let at = |k: u32, c: &BigInt| {
        BigRational::new(c * BigInt::from(2), BigInt::one() << k)
    };
    while let Some((r, k, c)) = stack.pop() {
        let v = poly::sign_variations(&poly::taylor_shift_one(&poly::reverse(&r)));
        if v == 0 {
            continue;
        }
        if v == 1 && k > bits {
            out.push(RootInterval {
                lo: at(k, &c),
                hi: at(k, &(&c + 1)),
            });
            continue;
        }
        if poly::eval_scaled(&r, &half.0, &half.1).is_zero() {
            let m = at(k + 1, &(&c * 2 + 1));
            out.push(RootInterval { lo: m.clone(), hi: m });
        }
        let left = poly::halve_variable(&r);
        let right = poly::taylor_shift_one(&left);
        stack.push((right, k + 1, &c * 2 + 1));
        stack.push((left, k + 1, &c * 2));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// The connective constant with the evidence used to pick it.
#[derive(Clone, Debug)]
pub struct ConnectiveConstant {
    /// Radius of convergence of the walk generating function.
    pub rho: RootInterval,
    /// An enclosure of `1/rho` with endpoints on a decimal grid.
    pub mu: RootInterval,
    /// Fractional digits of the grid of `mu`.
    pub digits: u32,
    /// Ratio estimate from the counts.
    pub estimate: f64,
    /// Every positive root below two of the discriminant and leading coefficient.
    pub candidates: Vec<RootInterval>,
}

/// Picks among the positive roots below two of the discriminant and the
/// leading coefficient the one whose reciprocal is nearest the ratio estimate
/// `(c_N / c_{N/2})^(1/(N - N/2))`, rejecting it if more than ten percent off.
/// `mu` is rounded outward to a width of at most `tol`.
pub fn connective_constant(
    eq: &AlgebraicEquation,
    counts: &[BigInt],
    tol: f64,
) -> Result<ConnectiveConstant, SeriesError> {
    let digits = digits_for(tol);
    // the radius itself is always isolated to width at most 2^-32 < 1e-9
    let bits = ((digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 12).max(32);
    let n = counts.len().saturating_sub(1);
    let h = n / 2;
    if n < 2 || counts[h].is_zero() || counts[n].is_zero() {
        return Err(SeriesError::NoSingularity);
    }
    let ratio = BigRational::new(counts[n].clone(), counts[h].clone())
        .to_f64()
        .unwrap_or(f64::NAN);
    let estimate = ratio.powf(1.0 / (n - h) as f64);
    let mut candidates = positive_roots_below_two(&eq.discriminant(), bits);
    candidates.extend(positive_roots_below_two(eq.leading_coefficient(), bits));
    candidates.sort_by(|a, b| a.lo.cmp(&b.lo));
    candidates.dedup_by(|a, b| a.lo <= b.hi && b.lo <= a.hi);
    let best = candidates
        .iter()
        .min_by(|a, b| {
            let da = (1.0 / a.midpoint() - estimate).abs();
            let db = (1.0 / b.midpoint() - estimate).abs();
            da.total_cmp(&db)
        })
        .ok_or(SeriesError::NoSingularity)?
        .clone();
    let mu_mid = 1.0 / best.midpoint();
    if (mu_mid - estimate).abs() > 0.1 * estimate {
        return Err(SeriesError::Inconsistent {
            estimate,
            nearest: mu_mid,
        });
    }
    let mu = RootInterval {
        lo: best.hi.recip(),
        hi: best.lo.recip(),
    }
    .outward(digits);
    Ok(ConnectiveConstant {
        rho: best,
        mu,
        digits,
        estimate,
        candidates,
    })
}
