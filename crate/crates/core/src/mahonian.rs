//! Exact counts of permutations by inversion number.
//!
//! `I_n(k)` is the coefficient of `z^k` in `∏_{i=1}^{n-1} (1 + z + ··· + z^i)`.
//! Rows are generic over the counting type; [`BigRow`](crate::BigRow) never
//! overflows, machine-word rows report [`Error::Overflow`].

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::limits;
use crate::perm::Permutation;
use crate::scalar::{decimal, Count};
use crate::Radius;

/// `I_n(0), ..., I_n(C(n,2))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Display", deserialize = "T: FromStr, T::Err: Display"))]
pub struct MahonianRow<T> {
    n: usize,
    #[serde(with = "decimal::vec")]
    coefficients: Vec<T>,
}

impl<T: Count> MahonianRow<T> {
    /// The row for `S_1`.
    pub fn one() -> Self {
        Self { n: 1, coefficients: vec![T::one()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// `I_n(k)`, zero outside `0..=C(n,2)`.
    pub fn get(&self, k: usize) -> T {
        self.coefficients.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `C(n,2)`, the largest inversion count.
    pub fn max_length(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `Σ_k I_n(k)`, which is `n!`.
    pub fn total(&self) -> Result<T> {
        checked_sum(&self.coefficients, "row total")
    }

    /// Multiplies by `1 + z + ··· + z^n`, giving the row for `S_{n+1}`.
    pub fn extend(&self) -> Result<Self> {
        let width = self.n; // new factor has terms z^0..z^width
        let old = &self.coefficients;
        let len = old.len() + width;
        let mut prefix = Vec::with_capacity(old.len());
        let mut acc = T::zero();
        for c in old {
            acc = acc.checked_add(c).ok_or(Error::Overflow("mahonian row"))?;
            prefix.push(acc.clone());
        }
        let total = acc;
        let coefficients = (0..len)
            .map(|k| {
                let hi = if k < old.len() { prefix[k].clone() } else { total.clone() };
                match k.checked_sub(width + 1) {
                    Some(lo) if lo < old.len() => hi.checked_sub(&prefix[lo]).ok_or(Error::Overflow("mahonian row")),
                    _ => Ok(hi),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n + 1, coefficients })
    }

    /// Checks row sum `n!`, palindromic symmetry and unit end coefficients.
    pub fn check_invariants(&self) -> Result<()> {
        let m = self.max_length();
        if m != self.n * (self.n - 1) / 2 {
            return Err(Error::Falsified(format!("row {} has degree {m}", self.n)));
        }
        if self.coefficients[0] != T::one() || self.coefficients[m] != T::one() {
            return Err(Error::Falsified(format!("row {} end coefficients are not 1", self.n)));
        }
        if let Some(k) = (0..=m).find(|&k| self.coefficients[k] != self.coefficients[m - k]) {
            return Err(Error::Falsified(format!("row {} is not symmetric at k = {k}", self.n)));
        }
        let mut fact = T::one();
        for i in 2..=self.n as u64 {
            let mut next = T::zero();
            for _ in 0..i {
                next = next.checked_add(&fact).ok_or(Error::Overflow("factorial"))?;
            }
            fact = next;
        }
        if self.total()? != fact {
            return Err(Error::Falsified(format!("row {} does not sum to n!", self.n)));
        }
        Ok(())
    }
}

fn checked_sum<T: Count>(values: &[T], what: &'static str) -> Result<T> {
    values
        .iter()
        .try_fold(T::zero(), |acc, v| acc.checked_add(v))
        .ok_or(Error::Overflow(what))
}

/// The row of `I_n(k)` in the counting type `T`.
pub fn mahonian_row_in<T: Count>(n: usize) -> Result<MahonianRow<T>> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    let mut row = MahonianRow::one();
    for _ in 1..n {
        row = row.extend()?;
    }
    Ok(row)
}

/// Exact `I_n(0..=C(n,2))`; practical up to `n` of a few hundred.
pub fn mahonian_row(n: usize) -> Result<MahonianRow<BigUint>> {
    mahonian_row_in(n)
}

/// Histogram of `|σ|` over all of `S_n`. Oracle for [`mahonian_row`].
pub fn brute_force_row<T: Count>(n: usize) -> Result<MahonianRow<T>> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    limits::enforce("brute_force_row", n, limits::BRUTE_FORCE_ROW)?;
    let mut hist = vec![0u64; n * (n - 1) / 2 + 1];
    for p in Permutation::all(n) {
        hist[p.word_length()] += 1;
    }
    Ok(MahonianRow { n, coefficients: hist.into_iter().map(T::from).collect() })
}

/// The pentagonal number `u_j = j(3j-1)/2`.
pub fn pentagonal(j: u64) -> u64 {
    j * (3 * j - 1) / 2
}

/// `C(top, bottom)`, zero when `bottom < 0`.
fn binom(top: i64, bottom: i64) -> BigInt {
    if bottom < 0 || top < bottom {
        return BigInt::zero();
    }
    BigInt::from(binomial(BigUint::from(top as u64), BigUint::from(bottom as u64)))
}

/// Knuth's closed form for `I_n(k)`, valid for `k <= n`:
///
/// `C(n+k-1, k) + Σ_j (-1)^j [C(n+k-u_j-j-1, k-u_j-j) + C(n+k-u_j-1, k-u_j)]`.
pub fn mahonian_knuth(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    if k > n {
        return Err(domain(format!("the pentagonal formula needs k <= n, got k = {k}, n = {n}")));
    }
    let (n, k) = (n as i64, k as i64);
    let mut total = binom(n + k - 1, k);
    for j in 1.. {
        let u = pentagonal(j as u64) as i64;
        if k - u < 0 {
            break;
        }
        let terms = binom(n + k - u - j - 1, k - u - j) + binom(n + k - u - 1, k - u);
        if j % 2 == 1 {
            total -= terms;
        } else {
            total += terms;
        }
    }
    if total.is_negative() {
        return Err(Error::Falsified(format!("pentagonal formula negative at n = {n}, k = {k}")));
    }
    Ok(total.to_biguint().expect("nonnegative"))
}

fn ceil_of(radius: &Radius) -> i64 {
    radius.ceil().to_integer()
}

fn floor_of(radius: &Radius) -> i64 {
    radius.floor().to_integer()
}

impl MahonianRow<BigUint> {
    fn sum_range(&self, lo: usize, hi_inclusive: usize) -> BigUint {
        let hi = hi_inclusive.min(self.max_length());
        if lo > hi {
            return BigUint::zero();
        }
        self.coefficients[lo..=hi].iter().sum()
    }

    fn factorial(&self) -> BigUint {
        factorial(self.n)
    }

    /// `#B(K) = #{σ : |σ| < K}`.
    pub fn ball(&self, radius: &Radius) -> BigUint {
        let c = ceil_of(radius);
        if c <= 0 {
            return BigUint::zero();
        }
        self.sum_range(0, (c - 1).to_usize().unwrap_or(usize::MAX))
    }

    /// `#B̂(K) = #{σ : |σ| >= K}`, summed from `⌈K⌉` upwards.
    pub fn ball_complement(&self, radius: &Radius) -> BigUint {
        let start = ceil_of(radius).max(0).to_usize().unwrap_or(usize::MAX);
        self.sum_range(start, self.max_length())
    }

    /// `n! - Σ_{k=0}^{⌊K⌋} I_n(k)`. Differs from [`Self::ball_complement`] by
    /// `I_n(K)` when `K` is an integer.
    pub fn ball_complement_via_subtraction(&self, radius: &Radius) -> BigUint {
        let f = floor_of(radius);
        let total = self.factorial();
        if f < 0 {
            return total;
        }
        total - self.sum_range(0, f.to_usize().unwrap_or(usize::MAX))
    }
}

/// `#B(K)` in `S_n`.
pub fn ball_count(n: usize, radius: &Radius) -> Result<BigUint> {
    Ok(mahonian_row(n)?.ball(radius))
}

/// `#B̂(K)` in `S_n`; the canonical complement count.
pub fn ball_complement_count(n: usize, radius: &Radius) -> Result<BigUint> {
    Ok(mahonian_row(n)?.ball_complement(radius))
}

/// The floor-based subtraction variant of [`ball_complement_count`].
pub fn ball_complement_via_subtraction(n: usize, radius: &Radius) -> Result<BigUint> {
    Ok(mahonian_row(n)?.ball_complement_via_subtraction(radius))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}
