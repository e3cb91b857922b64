//! Codimension bound calculators: the classic `(d-1)^{2n}` bound, the
//! ball-complement bound `#B̂(K_n)` with `K_n = (n-d)/2`, crossover
//! thresholds, tensor-product identity degrees and the asymptotic estimates
//! used to compare them.
//!
//! Every comparison is done in exact arithmetic; only [`q_constant`] and
//! [`asymptotic_in`] use floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::mahonian::{factorial, mahonian_row};
use crate::scalar::{decimal, Real};
use crate::Radius;

/// `(n, d)` together with the radius `K_n = (n - d)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub n: usize,
    pub d: usize,
    pub radius: Radius,
}

impl BoundParams {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(domain(format!("d must be at least 2, got {d}")));
        }
        if n < d {
            return Err(domain(format!("need n >= d, got n = {n}, d = {d}")));
        }
        Ok(Self { n, d, radius: radius(n, d) })
    }
}

/// `K_n = (n - d)/2` as an exact rational.
pub fn radius(n: usize, d: usize) -> Radius {
    Radius::new(n as i64 - d as i64, 2)
}

/// `(d-1)^{2n}`.
pub fn classic_bound(n: usize, d: usize) -> Result<BigUint> {
    if d < 2 {
        return Err(domain(format!("d must be at least 2, got {d}")));
    }
    Ok(Pow::pow(BigUint::from(d - 1), 2 * n))
}

/// `#B̂(K_n)` for `K_n = (n-d)/2`.
pub fn theorem_bound(n: usize, d: usize) -> Result<BigUint> {
    let params = BoundParams::new(n, d)?;
    Ok(mahonian_row(n)?.ball_complement(&params.radius))
}

/// Least `m >= 1` with `base^m < m!`.
pub fn least_factorial_dominating(base: &BigUint) -> usize {
    let mut m = 1usize;
    let mut power = base.clone();
    let mut fact = BigUint::one();
    loop {
        if power < fact {
            return m;
        }
        m += 1;
        power *= base;
        fact *= BigUint::from(m);
    }
}

/// `n(d)`: least `n` with `(d-1)^{2n} < n!`.
pub fn crossover_n(d: usize) -> Result<usize> {
    if d < 2 {
        return Err(domain(format!("d must be at least 2, got {d}")));
    }
    let base = BigUint::from(d - 1).pow(2u32);
    Ok(least_factorial_dominating(&base))
}

/// Least `m` with `((d1-1)^2 (d2-1)^2)^m < m!`, an identity degree for `A ⊗ B`.
pub fn tensor_identity_degree(d1: usize, d2: usize) -> Result<usize> {
    if d1 < 2 || d2 < 2 {
        return Err(domain(format!("degrees must be at least 2, got {d1} and {d2}")));
    }
    let base = BigUint::from(d1 - 1).pow(2u32) * BigUint::from(d2 - 1).pow(2u32);
    Ok(least_factorial_dominating(&base))
}

/// `Q = ∏_{j>=1} (1 - 2^{-j})` and the number of factors used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticConstants<F> {
    pub q: F,
    pub terms: usize,
}

/// `∏_{j=1}^{terms} (1 - 2^{-j})`.
pub fn q_partial<F: Real>(terms: usize) -> F {
    let half = F::from_f64(0.5).unwrap();
    let mut scale = F::one();
    let mut q = F::one();
    for _ in 0..terms {
        scale = scale * half;
        q = q * (F::one() - scale);
    }
    q
}

/// Multiplies factors of `Q` until one changes the product by less than `tolerance`.
pub fn q_constant<F: Real>(tolerance: F) -> Result<AsymptoticConstants<F>> {
    if !(tolerance > F::zero()) {
        return Err(domain("tolerance must be positive"));
    }
    let half = F::from_f64(0.5).unwrap();
    let mut scale = F::one();
    let mut q = F::one();
    let mut terms = 0;
    loop {
        scale = scale * half;
        let next = q * (F::one() - scale);
        terms += 1;
        let change = q - next;
        q = next;
        if change < tolerance {
            return Ok(AsymptoticConstants { q, terms });
        }
    }
}

/// The estimate `Ĩ_n(n-k) = 2^{2n-k-1} Q / sqrt(nπ)`.
///
/// `value` is `None` when the estimate is not representable in `F`;
/// `ln_value` is always finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticEstimate<F> {
    pub ln_value: F,
    pub value: Option<F>,
}

impl<F: Real> AsymptoticEstimate<F> {
    pub fn overflowed(&self) -> bool {
        self.value.is_none()
    }
}

pub fn asymptotic_in<F: Real>(n: usize, k: usize, q: F) -> Result<AsymptoticEstimate<F>> {
    if n == 0 || k > n {
        return Err(domain(format!("estimate needs 0 <= k <= n and n >= 1, got n = {n}, k = {k}")));
    }
    let exponent = (2 * n - k - 1) as i32;
    let two = F::from_u8(2).unwrap();
    let nf = F::from_usize(n).unwrap();
    let denom = (nf * F::PI()).sqrt();
    let ln_value = F::from_i32(exponent).unwrap() * F::LN_2() + q.ln() - denom.ln();
    let value = two.powi(exponent) * q / denom;
    Ok(AsymptoticEstimate { ln_value, value: value.is_finite().then_some(value) })
}

/// `φ(n) = n! - (2^{2n-K} - 2^{n-1})` with `K = ⌊(n-d)/2⌋`; may be negative.
pub fn phi(n: usize, d: usize) -> Result<BigInt> {
    BoundParams::new(n, d)?;
    let k = (n - d) / 2;
    let two = BigInt::from(2);
    let subtracted = Pow::pow(&two, 2 * n - k) - Pow::pow(&two, n - 1);
    Ok(BigInt::from(factorial(n)) - subtracted)
}

/// Which of the two bounds is smaller on a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Classic,
    Theorem,
    Tie,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Classic => "classic",
            Winner::Theorem => "theorem",
            Winner::Tie => "tie",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    #[serde(with = "decimal")]
    pub classic: BigUint,
    #[serde(with = "decimal")]
    pub theorem: BigUint,
    #[serde(with = "decimal")]
    pub phi: BigInt,
    #[serde(with = "decimal")]
    pub factorial: BigUint,
    pub winner: Winner,
}

impl BoundRow {
    pub const CSV_HEADER: [&'static str; 6] = ["n", "classic", "theorem", "phi", "factorial", "winner"];

    pub fn csv_record(&self) -> [String; 6] {
        [
            self.n.to_string(),
            self.classic.to_string(),
            self.theorem.to_string(),
            self.phi.to_string(),
            self.factorial.to_string(),
            self.winner.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub d: usize,
    /// `n(d)`, where the classic bound first drops below `n!`.
    pub crossover_n: usize,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    /// Rows with `n < n(d)` where the ball-complement bound is already below `n!`,
    /// so it beats the (effectively `n!`) classic bound.
    pub fn sharper_region(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.n < self.crossover_n && r.theorem < r.factorial)
            .map(|r| r.n)
            .collect()
    }
}

/// One row per `n` in `d..=n_max`.
pub fn compare_bounds(d: usize, n_max: usize) -> Result<BoundReport> {
    BoundParams::new(n_max, d)?;
    let rows = (d..=n_max)
        .map(|n| {
            let classic = classic_bound(n, d)?;
            let theorem = theorem_bound(n, d)?;
            let winner = match theorem.cmp(&classic) {
                Ordering::Less => Winner::Theorem,
                Ordering::Greater => Winner::Classic,
                Ordering::Equal => Winner::Tie,
            };
            Ok(BoundRow { n, classic, theorem, phi: phi(n, d)?, factorial: factorial(n), winner })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport { d, crossover_n: crossover_n(d)?, rows })
}
