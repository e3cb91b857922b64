//! Permutations of `S_n`, inversion sets, the word metric and d-good/d-bad
//! classification.
//!
//! All positions and values are 1-based in the public API: `p.at(i)` is
//! `σ(i)` for `1 <= i <= n`, and inversion pairs are `(i, j)` with `i < j`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Axiom, Error, Result};
use crate::limits;

/// An element of `S_n` in one-line notation.
///
/// Ordering is the dictionary order on image sequences, which is also the
/// dictionary order on the associated monomials `x_σ(1)···x_σ(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates that `image` is a bijection of `{1..n}` with `n >= 1`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty sequence".into()));
        }
        let mut seen = vec![false; n];
        for (pos, &v) in image.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} at position {} is outside 1..={n}",
                    pos + 1
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} repeated at position {}",
                    pos + 1
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Self { image })
    }

    /// Internal constructor for sequences already known to be bijections.
    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Self::new(image.clone()).is_ok());
        Self { image }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "S_0 is not supported");
        Self { image: (1..=n).collect() }
    }

    /// The longest element `n, n-1, ..., 1`.
    pub fn reversal(n: usize) -> Self {
        assert!(n >= 1, "S_0 is not supported");
        Self { image: (1..=n).rev().collect() }
    }

    /// All of `S_n` in dictionary order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(|image| Permutation { image })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `σ(pos)` for a 1-based position.
    pub fn at(&self, pos: usize) -> usize {
        self.image[pos - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Inversion pairs `(i, j)`, `i < j`, `σ(j) < σ(i)`, in dictionary order.
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| {
            ((i + 1)..n)
                .filter(move |&j| self.image[j] < self.image[i])
                .map(move |j| (i + 1, j + 1))
        })
    }

    pub fn inversion_set(&self) -> InversionSet {
        InversionSet {
            n: self.n(),
            pairs: self.inversions().collect(),
        }
    }

    /// `|σ|`, the distance to the identity in the word metric.
    pub fn word_length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.image[j] < self.image[i] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.image.iter().join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split(',')
            .map(|tok| {
                tok.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidPermutation(format!("cannot parse {:?} as a positive integer", tok.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(image)
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

/// A set of position pairs `(i, j)` with `1 <= i < j <= n`.
///
/// Not every such set comes from a permutation; see [`InversionSet::check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionSet {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl InversionSet {
    /// Checks only the shape of each pair, not the axioms.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(domain("inversion set needs n >= 1"));
        }
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| !(1 <= i && i < j && j <= n)) {
            return Err(domain(format!("pair ({i},{j}) is not of the form 1 <= i < j <= {n}")));
        }
        Ok(Self { n, pairs })
    }

    /// Parses the JSON array-of-pairs form, e.g. `[[1,2],[3,4]]`.
    pub fn from_json(n: usize, json: &str) -> Result<Self> {
        let pairs: Vec<(usize, usize)> =
            serde_json::from_str(json).map_err(|e| domain(format!("bad inversion set JSON: {e}")))?;
        Self::new(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// Verifies the two axioms characterising inversion sets of permutations.
    /// Reports the lexicographically first failing triple, transitivity first.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    if self.contains(i, j) && self.contains(j, k) && !self.contains(i, k) {
                        return Err(Error::InvalidInversionSet { axiom: Axiom::Transitivity, i, j, k });
                    }
                }
            }
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    if self.contains(i, k) && !self.contains(i, j) && !self.contains(j, k) {
                        return Err(Error::InvalidInversionSet { axiom: Axiom::Interpolation, i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.pairs.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>())
            .expect("pairs serialize")
    }
}

impl Serialize for InversionSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.pairs.iter().map(|&(i, j)| [i, j]))
    }
}

/// Recovers the unique permutation with the given inversion set.
///
/// `σ(i)` is one plus the number of positions holding a smaller value: later
/// positions `j` with `(i, j)` an inversion, and earlier positions `j` with
/// `(j, i)` not an inversion.
pub fn from_inversion_set(r: &InversionSet) -> Result<Permutation> {
    r.check_axioms()?;
    let n = r.n();
    let image = (1..=n)
        .map(|i| {
            let later_smaller = ((i + 1)..=n).filter(|&j| r.contains(i, j)).count();
            let earlier_smaller = (1..i).filter(|&j| !r.contains(j, i)).count();
            1 + later_smaller + earlier_smaller
        })
        .collect();
    let p = Permutation::new(image)?;
    if p.inversion_set() != *r {
        return Err(Error::Falsified(format!("reconstruction of {} did not round-trip", r.to_json())));
    }
    Ok(p)
}

/// Dictionary comparison of two permutations of the same degree.
pub fn dictionary_compare(p: &Permutation, q: &Permutation) -> Result<Ordering> {
    if p.n() != q.n() {
        return Err(domain(format!("cannot compare elements of S_{} and S_{}", p.n(), q.n())));
    }
    Ok(p.image.cmp(&q.image))
}

/// Breadth-first distance from the identity in the Cayley graph of `S_n`
/// generated by the adjacent transpositions. Oracle for [`Permutation::word_length`].
pub fn cayley_distance_bfs(p: &Permutation) -> Result<usize> {
    let n = p.n();
    limits::enforce("cayley_distance_bfs", n, limits::CAYLEY_BFS)?;
    let start: Vec<usize> = (1..=n).collect();
    let target = p.image();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((word, dist)) = queue.pop_front() {
        if word == target {
            return Ok(dist);
        }
        for i in 0..n.saturating_sub(1) {
            let mut next = word.clone();
            next.swap(i, i + 1);
            if seen.insert(next.clone()) {
                queue.push_back((next, dist + 1));
            }
        }
    }
    unreachable!("the Cayley graph of S_n is connected")
}

/// Length of the longest strictly decreasing subsequence, by patience sorting.
pub fn longest_decreasing_subsequence(values: &[usize]) -> usize {
    // tails[len-1] = largest possible final value of a decreasing run of length len
    let mut tails: Vec<usize> = Vec::new();
    for &v in values {
        let pos = tails.partition_point(|&t| t > v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

fn check_degree(d: usize) -> Result<()> {
    if d < 2 {
        Err(domain(format!("d must be at least 2, got {d}")))
    } else {
        Ok(())
    }
}

/// The lexicographically least position tuple `i_1 < ... < i_d` with
/// `σ(i_1) > ... > σ(i_d)`, or `None` if `σ` is d-good.
pub fn find_d_bad_witness(p: &Permutation, d: usize) -> Result<Option<Vec<usize>>> {
    check_degree(d)?;
    let n = p.n();
    if d > n {
        return Ok(None);
    }
    let img = p.image();
    // from[i]: longest decreasing subsequence starting at position i
    let mut from = vec![1usize; n];
    for i in (0..n).rev() {
        for j in (i + 1)..n {
            if img[j] < img[i] {
                from[i] = from[i].max(from[j] + 1);
            }
        }
    }
    // With `from` as a feasibility test, the greedy leftmost choice never backtracks.
    let Some(first) = (0..n).find(|&i| from[i] >= d) else {
        return Ok(None);
    };
    let mut witness = vec![first];
    let mut cur = first;
    while witness.len() < d {
        let need = d - witness.len();
        cur = ((cur + 1)..n)
            .find(|&j| img[j] < img[cur] && from[j] >= need)
            .expect("feasible continuation exists");
        witness.push(cur);
    }
    Ok(Some(witness.into_iter().map(|i| i + 1).collect()))
}

/// `true` iff `σ` has no decreasing subsequence of length `d`.
pub fn is_d_good(p: &Permutation, d: usize) -> Result<bool> {
    check_degree(d)?;
    Ok(longest_decreasing_subsequence(p.image()) < d)
}

/// Exact number of d-good permutations in `S_n`, by enumeration.
pub fn count_d_good(n: usize, d: usize) -> Result<u64> {
    check_degree(d)?;
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    limits::enforce("count_d_good", n, limits::COUNT_D_GOOD)?;
    Ok(Permutation::all(n)
        .filter(|p| longest_decreasing_subsequence(p.image()) < d)
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction() {
        assert!(perm(&[1, 2, 3]).is_identity());
        assert_eq!(perm(&[2, 1, 4, 3]).n(), 4);
        assert!(matches!(Permutation::new(vec![1, 1, 3]), Err(Error::InvalidPermutation(_))));
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 4]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert_eq!("2,1,4,3".parse::<Permutation>().unwrap(), perm(&[2, 1, 4, 3]));
        assert!("2,x".parse::<Permutation>().is_err());
        assert_eq!(perm(&[2, 1, 4, 3]).to_string(), "2,1,4,3");
    }

    #[test]
    fn inversion_sets() {
        assert!(Permutation::identity(5).inversion_set().is_empty());
        let rev = perm(&[4, 3, 2, 1]).inversion_set();
        assert_eq!(rev.len(), 6);
        assert_eq!(rev.to_json(), "[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]");
        let r = perm(&[2, 1, 4, 3]).inversion_set();
        assert_eq!(r.pairs().collect::<Vec<_>>(), vec![(1, 2), (3, 4)]);
        assert_eq!(serde_json::to_string(&r).unwrap(), "[[1,2],[3,4]]");
    }

    #[test]
    fn word_lengths() {
        assert_eq!(Permutation::identity(4).word_length(), 0);
        assert_eq!(Permutation::reversal(5).word_length(), 10);
        assert_eq!(perm(&[3, 1, 2]).word_length(), 2);
    }

    #[test]
    fn bfs_distances() {
        assert_eq!(cayley_distance_bfs(&Permutation::identity(3)).unwrap(), 0);
        assert_eq!(cayley_distance_bfs(&perm(&[2, 1, 3])).unwrap(), 1);
        assert_eq!(cayley_distance_bfs(&Permutation::reversal(4)).unwrap(), 6);
        assert!(matches!(
            cayley_distance_bfs(&Permutation::identity(7)),
            Err(Error::Scale { .. })
        ));
    }

    #[test]
    fn reconstruct_from_inversions() {
        let empty = InversionSet::new(3, []).unwrap();
        assert_eq!(from_inversion_set(&empty).unwrap(), Permutation::identity(3));
        let all = InversionSet::new(3, [(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(from_inversion_set(&all).unwrap(), perm(&[3, 2, 1]));
        let bad = InversionSet::new(3, [(1, 3)]).unwrap();
        assert_eq!(
            from_inversion_set(&bad),
            Err(Error::InvalidInversionSet { axiom: Axiom::Interpolation, i: 1, j: 2, k: 3 })
        );
        let not_transitive = InversionSet::new(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(
            from_inversion_set(&not_transitive),
            Err(Error::InvalidInversionSet { axiom: Axiom::Transitivity, i: 1, j: 2, k: 3 })
        );
        assert!(InversionSet::new(3, [(2, 2)]).is_err());
        assert!(InversionSet::new(3, [(1, 4)]).is_err());
        let parsed = InversionSet::from_json(4, "[[3,4],[1,2]]").unwrap();
        assert_eq!(from_inversion_set(&parsed).unwrap(), perm(&[2, 1, 4, 3]));
    }

    #[test]
    fn witnesses() {
        assert_eq!(find_d_bad_witness(&Permutation::identity(5), 2).unwrap(), None);
        assert_eq!(
            find_d_bad_witness(&perm(&[4, 3, 2, 1]), 4).unwrap(),
            Some(vec![1, 2, 3, 4])
        );
        assert_eq!(
            find_d_bad_witness(&perm(&[5, 3, 4, 1, 2]), 3).unwrap(),
            Some(vec![1, 2, 4])
        );
        assert_eq!(
            find_d_bad_witness(&perm(&[4, 1, 3, 2]), 3).unwrap(),
            Some(vec![1, 3, 4])
        );
        assert_eq!(find_d_bad_witness(&perm(&[2, 1]), 3).unwrap(), None);
        assert!(find_d_bad_witness(&perm(&[2, 1]), 1).is_err());
    }

    /// Brute-force lexicographic search over all d-subsets of positions.
    fn witness_oracle(p: &Permutation, d: usize) -> Option<Vec<usize>> {
        (1..=p.n())
            .combinations(d)
            .find(|idx| idx.windows(2).all(|w| p.at(w[0]) > p.at(w[1])))
    }

    #[test]
    fn witness_matches_subset_search() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                for d in 2..=n + 1 {
                    assert_eq!(find_d_bad_witness(&p, d).unwrap(), witness_oracle(&p, d), "{p:?} d={d}");
                    assert_eq!(is_d_good(&p, d).unwrap(), witness_oracle(&p, d).is_none());
                }
            }
        }
    }

    #[test]
    fn d_good() {
        assert!(is_d_good(&Permutation::identity(3), 2).unwrap());
        assert!(is_d_good(&perm(&[2, 1, 4, 3]), 3).unwrap());
        assert!(!is_d_good(&perm(&[4, 3, 2, 1]), 3).unwrap());
        assert!(is_d_good(&perm(&[4, 3, 2, 1]), 5).unwrap());
        assert!(is_d_good(&perm(&[1]), 0).is_err());
    }

    #[test]
    fn comparisons() {
        assert_eq!(dictionary_compare(&perm(&[1, 2, 3]), &perm(&[1, 3, 2])).unwrap(), Ordering::Less);
        let p = perm(&[3, 1, 2]);
        assert_eq!(dictionary_compare(&p, &p).unwrap(), Ordering::Equal);
        assert_eq!(
            dictionary_compare(&perm(&[2, 1, 4, 3]), &perm(&[2, 1, 3, 4])).unwrap(),
            Ordering::Greater
        );
        assert!(dictionary_compare(&perm(&[1]), &perm(&[1, 2])).is_err());
    }

    #[test]
    fn counting_d_good() {
        assert_eq!(count_d_good(3, 2).unwrap(), 1);
        assert_eq!(count_d_good(4, 5).unwrap(), 24);
        // 3-good = 321-avoiding, counted by the Catalan numbers
        assert_eq!(count_d_good(4, 3).unwrap(), 14);
        assert!(count_d_good(4, 3).unwrap() <= 256);
        assert_eq!(count_d_good(6, 3).unwrap(), 132);
        assert!(matches!(count_d_good(10, 3), Err(Error::Scale { .. })));
    }

    #[test]
    fn serde_one_line() {
        let p = perm(&[2, 1, 4, 3]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "\"2,1,4,3\"");
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), p);
        assert!(serde_json::from_str::<Permutation>("\"1,1\"").is_err());
    }
}
