//! Closed formulas for ranks and degrees of the syzygy bundles, the divisor
//! class coefficients, and the conjectured splitting types, in exact
//! arithmetic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::InvariantError;

pub type Rational = BigRational;

/// `binom(n, r)`, zero outside `0 <= r <= n`.
pub fn binomial(n: i64, r: i64) -> BigInt {
    if r < 0 || n < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for j in 0..r {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn to_u64(x: &Rational, what: &str) -> Result<u64, InvariantError> {
    if !x.is_integer() {
        return Err(InvariantError::OutOfRange(format!("{what} = {x} is not an integer")));
    }
    x.to_integer()
        .to_u64()
        .ok_or_else(|| InvariantError::OutOfRange(format!("{what} = {x} does not fit in u64")))
}

fn check_step(k: u64, i: u64) -> Result<(), InvariantError> {
    if k < 4 || i < 1 || i + 3 > k {
        return Err(InvariantError::OutOfRange(format!("need k >= 4 and 1 <= i <= k - 3, got k = {k}, i = {i}")));
    }
    Ok(())
}

/// `beta_i = i (k-2-i) / (k-1) * binom(k, i+1)`.
pub fn beta_rank(k: u64, i: u64) -> Result<u64, InvariantError> {
    check_step(k, i)?;
    let (k, i) = (k as i64, i as i64);
    let x = rat(i * (k - 2 - i)) / rat(k - 1) * rat(binomial(k, i + 1));
    to_u64(&x, "beta")
}

/// `beta_i = k / (i+1) * (k-2-i) * binom(k-2, i-1)`.
pub fn beta_rank_alt(k: u64, i: u64) -> Result<u64, InvariantError> {
    check_step(k, i)?;
    let (k, i) = (k as i64, i as i64);
    let x = rat(k) / rat(i + 1) * rat(k - 2 - i) * rat(binomial(k - 2, i - 1));
    to_u64(&x, "beta")
}

/// `deg N_i = (g-k-1)(k-2-i) binom(k-2, i-1)`.
pub fn bundle_degree(g: u64, k: u64, i: u64) -> Result<i64, InvariantError> {
    check_step(k, i)?;
    if k + 1 > g {
        return Err(InvariantError::OutOfRange(format!("k = {k} exceeds g - 1 for g = {g}")));
    }
    let (g, k, i) = (g as i64, k as i64, i as i64);
    (BigInt::from((g - k - 1) * (k - 2 - i)) * binomial(k - 2, i - 1))
        .to_i64()
        .ok_or_else(|| InvariantError::OutOfRange("degree overflows i64".into()))
}

/// Brill–Noether number `rho(g, 1, k) = g - 2(g - k + 1)`.
pub fn brill_noether_rho(g: u64, k: u64) -> i64 {
    let (g, k) = (g as i64, k as i64);
    g - 2 * (g - k + 1)
}

/// `A_i` and the class coefficients `(zeta, kappa, delta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCoefficients {
    pub a: Rational,
    pub zeta: BigInt,
    pub kappa: BigInt,
    pub delta: BigInt,
}

/// `A_i = (k-2)(k-3) / (6(i+1)(k-i-1)) * binom(k-4, i-1)^2`.
pub fn a_coefficient(k: u64, i: u64) -> Result<Rational, InvariantError> {
    check_step(k, i)?;
    let (k, i) = (k as i64, i as i64);
    let b = binomial(k - 4, i - 1);
    Ok(rat((k - 2) * (k - 3)) / rat(6 * (i + 1) * (k - i - 1)) * rat(&b * &b))
}

pub fn divisor_coefficient(g: u64, k: u64, i: u64) -> Result<DivisorCoefficients, InvariantError> {
    if k == 0 || (g as i64 - 1) % k as i64 != 0 {
        return Err(InvariantError::Hypothesis(format!("k = {k} does not divide g - 1 = {}", g as i64 - 1)));
    }
    let a = a_coefficient(k, i)?;
    let (g, k) = (BigInt::from(g), BigInt::from(k));
    Ok(DivisorCoefficients {
        a,
        zeta: BigInt::from(6) * (&g * &k - BigInt::from(6) * &g + &k + BigInt::from(6)),
        kappa: -(&k * (&k - BigInt::from(12))),
        delta: -(&k * &k),
    })
}

/// `A_i = beta_i binom(k-4, i-1) / (6k)` for every `1 <= i <= k-3`.
pub fn check_a_coefficient_identity(k: u64) -> bool {
    if k < 4 {
        return false;
    }
    (1..=k - 3).all(|i| {
        let (Ok(a), Ok(beta)) = (a_coefficient(k, i), beta_rank(k, i)) else {
            return false;
        };
        let rhs = rat(beta) * rat(binomial(k as i64 - 4, i as i64 - 1)) / rat(6 * k);
        a == rhs
    })
}

/// Twists differing by at most one; a summand `O(a) + O(b)` has
/// `h^1(End) = 0` iff `|a - b| <= 1`.
pub fn is_balanced(twists: &[i64]) -> bool {
    match (twists.iter().max(), twists.iter().min()) {
        (Some(hi), Some(lo)) => hi - lo <= 1,
        _ => true,
    }
}

/// Largest minus smallest twist.
pub fn twist_gap(twists: &[i64]) -> i64 {
    match (twists.iter().max(), twists.iter().min()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0,
    }
}

/// The balanced splitting of given rank and degree, descending.
pub fn balanced_splitting(rank: u64, degree: i64) -> Vec<i64> {
    assert!(rank >= 1);
    let q = degree.div_euclid(rank as i64);
    let r = (degree - q * rank as i64) as usize;
    let mut out = vec![q + 1; r];
    out.resize(rank as usize, q);
    out
}

/// Descending copy of a twist multiset.
pub fn sorted_desc(twists: &[i64]) -> Vec<i64> {
    let mut v = twists.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// `n` with `g - 1 = n k`, if it exists.
pub fn mu_quotient(g: u64, k: u64) -> Option<u64> {
    (k > 0 && g >= 1 && (g - 1).is_multiple_of(k) && g > k).then(|| (g - 1) / k)
}

/// Conjectured splitting of `N_j` on the divisors of unbalanced covers when
/// `g - 1 = n k`: `binom(k-4, j-1)` copies each of `(n-1)(j+1) -+ 1` and the
/// rest `(n-1)(j+1)`.
pub fn conjectured_mu_splitting(g: u64, k: u64, j: u64) -> Result<Vec<i64>, InvariantError> {
    let n = mu_quotient(g, k)
        .ok_or_else(|| InvariantError::Hypothesis(format!("g - 1 = {} is not a multiple of k = {k}", g as i64 - 1)))?;
    let rank = beta_rank(k, j)? as i64;
    let c = binomial(k as i64 - 4, j as i64 - 1)
        .to_i64()
        .ok_or_else(|| InvariantError::OutOfRange("binomial overflow".into()))?;
    if rank < 2 * c {
        return Err(InvariantError::OutOfRange(format!("rank {rank} below 2 binom(k-4, j-1) = {}", 2 * c)));
    }
    let mid = (n as i64 - 1) * (j as i64 + 1);
    let mut out = vec![mid + 1; c as usize];
    out.extend(vec![mid; (rank - 2 * c) as usize]);
    out.extend(vec![mid - 1; c as usize]);
    Ok(out)
}

/// `min{g - k - 1, i + 1}`.
pub fn refined_bound(g: u64, k: u64, i: u64) -> i64 {
    (g as i64 - k as i64 - 1).min(i as i64 + 1)
}

/// The stated range `i = 2..=ceil((k-3)/2)`.
pub fn refined_bound_range(k: u64) -> core::ops::RangeInclusive<u64> {
    2..=(k.saturating_sub(3)).div_ceil(2)
}

/// The dual range `k-2-i` of [`refined_bound_range`], minus the stated range.
pub fn refined_bound_dual_range(k: u64) -> Vec<u64> {
    let stated: Vec<u64> = refined_bound_range(k).collect();
    let mut dual: Vec<u64> = stated
        .iter()
        .filter_map(|&i| (k - 2).checked_sub(i))
        .filter(|j| *j >= 1 && !stated.contains(j))
        .collect();
    dual.sort_unstable();
    dual.dedup();
    dual
}

/// Per `i` in the stated range: does the observed gap respect the bound?
/// `observed[i-1]` are the twists of `N_i`. Missing steps are skipped.
pub fn refined_bound_holds(g: u64, k: u64, observed: &[Vec<i64>]) -> Vec<(u64, bool)> {
    refined_bound_range(k)
        .filter_map(|i| {
            observed
                .get(i as usize - 1)
                .map(|tw| (i, twist_gap(tw) <= refined_bound(g, k, i)))
        })
        .collect()
}

/// Same comparison over the dual range, reported separately.
pub fn refined_bound_dual_holds(g: u64, k: u64, observed: &[Vec<i64>]) -> Vec<(u64, bool)> {
    refined_bound_dual_range(k)
        .into_iter()
        .filter_map(|i| {
            observed
                .get(i as usize - 1)
                .map(|tw| (i, twist_gap(tw) <= refined_bound(g, k, k - 2 - i)))
        })
        .collect()
}

/// Predicted `N_1, ..., N_{k-3}` for `k = g - 2`: `i binom(g-4, i+1)` zeros
/// and `(g-4-i) binom(g-4, g-3-i)` ones, descending.
pub fn g_minus_k2_prediction(g: u64) -> Result<Vec<Vec<i64>>, InvariantError> {
    if g < 6 {
        return Err(InvariantError::OutOfRange(format!("need k = g - 2 >= 4, got g = {g}")));
    }
    let k = g - 2;
    let gi = g as i64;
    (1..=k - 3)
        .map(|i| {
            let ii = i as i64;
            let zeros = (BigInt::from(ii) * binomial(gi - 4, ii + 1)).to_u64().unwrap_or(u64::MAX);
            let ones = (BigInt::from(gi - 4 - ii) * binomial(gi - 4, gi - 3 - ii))
                .to_u64()
                .unwrap_or(u64::MAX);
            let rank = beta_rank(k, i)?;
            if zeros + ones != rank {
                return Err(InvariantError::RankMismatch {
                    found: zeros + ones,
                    expected: rank,
                });
            }
            let mut v = vec![1; ones as usize];
            v.extend(vec![0; zeros as usize]);
            Ok(v)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjectureKind {
    MuSplitting,
    RefinedBound,
    GMinusK2Form,
    NegRhoBalanced,
}

impl ConjectureKind {
    pub const ALL: [ConjectureKind; 4] = [
        ConjectureKind::MuSplitting,
        ConjectureKind::RefinedBound,
        ConjectureKind::GMinusK2Form,
        ConjectureKind::NegRhoBalanced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConjectureKind::MuSplitting => "muSplitting",
            ConjectureKind::RefinedBound => "refinedBound",
            ConjectureKind::GMinusK2Form => "gMinusK2Form",
            ConjectureKind::NegRhoBalanced => "negRhoBalanced",
        }
    }
}

/// What a conjecture predicts for `(g, k)`, if its hypotheses hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjecturePrediction {
    pub which: ConjectureKind,
    pub applicable: bool,
    pub reason: String,
    /// `(i, twists of N_i)`.
    pub predicted_twists: Vec<(u64, Vec<i64>)>,
    /// `(i, bound on the twist gap of N_i)`.
    pub bounds: Vec<(u64, i64)>,
}

pub fn prediction(which: ConjectureKind, g: u64, k: u64) -> ConjecturePrediction {
    let mut out = ConjecturePrediction {
        which,
        applicable: false,
        reason: String::new(),
        predicted_twists: Vec::new(),
        bounds: Vec::new(),
    };
    let rho = brill_noether_rho(g, k);
    match which {
        ConjectureKind::MuSplitting => match mu_quotient(g, k) {
            Some(_) if k >= 4 => {
                out.applicable = true;
                out.reason = format!("k = {k} divides g - 1 = {}", g - 1);
                out.predicted_twists = (1..=k - 3)
                    .filter_map(|j| conjectured_mu_splitting(g, k, j).ok().map(|t| (j, t)))
                    .collect();
            }
            _ => out.reason = format!("k = {k} does not divide g - 1 = {}", g as i64 - 1),
        },
        ConjectureKind::RefinedBound => {
            if rho >= 0 && k >= 4 {
                out.applicable = true;
                out.reason = format!("rho = {rho} >= 0");
                out.bounds = refined_bound_range(k).map(|i| (i, refined_bound(g, k, i))).collect();
            } else {
                out.reason = format!("rho = {rho} < 0 or k < 4");
            }
        }
        ConjectureKind::GMinusK2Form => {
            if k + 2 == g && k >= 4 {
                out.applicable = true;
                out.reason = "g - k = 2".into();
                if let Ok(p) = g_minus_k2_prediction(g) {
                    out.predicted_twists = p.into_iter().enumerate().map(|(i, t)| (i as u64 + 1, t)).collect();
                }
            } else {
                out.reason = format!("g - k = {} != 2", g as i64 - k as i64);
            }
        }
        ConjectureKind::NegRhoBalanced => {
            if rho <= 0 && k >= 4 {
                out.applicable = true;
                out.reason = format!("rho = {rho} <= 0");
                if let Ok(beta) = beta_rank(k, 1) {
                    if let Ok(deg) = bundle_degree(g, k, 1) {
                        out.predicted_twists = vec![(1, balanced_splitting(beta, deg))];
                    }
                }
            } else {
                out.reason = format!("rho = {rho} > 0 or k < 4");
            }
        }
    }
    out
}
