//! Exhaustive property suites over small symmetric groups.
//!
//! Each suite enumerates every instance up to its own cap on `n` and collects
//! counterexamples instead of stopping at the first.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::bounds::classic_bound;
use crate::error::{domain, Error, Result};
use crate::greedy::{enumerate_chunk_preserving, growth_counterexample, left_greedy_form};
use crate::limits;
use crate::mahonian::{brute_force_row, mahonian_knuth, mahonian_row};
use crate::perm::{cayley_distance_bfs, count_d_good, from_inversion_set, is_d_good, Permutation};
use crate::reduction::{classic_closure, main_closure};

const MAX_LISTED: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `|σ|` equals breadth-first distance in the Cayley graph.
    Metric,
    /// Inversion sets satisfy both axioms and determine `σ`.
    Axioms,
    /// d-bad implies `|σ| >= d(d-1)/2`.
    DBadLength,
    /// At most `(d-1)^{2n}` d-good permutations.
    Dilworth,
    /// Structure of left greedy form: gaps, chunks and length estimates.
    Lgf,
    /// Non-identity rearrangements of chunk-preserving decompositions grow `|σ|`.
    Growth,
    /// Dictionary-descent rewriting reaches d-good monomials.
    Classic,
    /// Length-ascent rewriting leaves the ball `B(K_n)`.
    Main,
    /// Product-formula rows agree with enumeration.
    Mahonian,
    /// Pentagonal formula agrees with product-formula rows.
    Knuth,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Metric,
        Suite::Axioms,
        Suite::DBadLength,
        Suite::Dilworth,
        Suite::Lgf,
        Suite::Growth,
        Suite::Classic,
        Suite::Main,
        Suite::Mahonian,
        Suite::Knuth,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Metric => "metric",
            Suite::Axioms => "axioms",
            Suite::DBadLength => "dbad",
            Suite::Dilworth => "dilworth",
            Suite::Lgf => "lgf",
            Suite::Growth => "growth",
            Suite::Classic => "classic",
            Suite::Main => "main",
            Suite::Mahonian => "mahonian",
            Suite::Knuth => "knuth",
        }
    }

    /// Largest `n` the suite will enumerate.
    pub fn cap(&self) -> usize {
        let default = match self {
            Suite::Metric => limits::CAYLEY_BFS,
            Suite::Axioms | Suite::DBadLength | Suite::Dilworth | Suite::Mahonian => 8,
            Suite::Lgf => 7,
            Suite::Growth => 6,
            Suite::Classic => limits::CLASSIC_CLOSURE,
            Suite::Main => limits::MAIN_CLOSURE,
            Suite::Knuth => 30,
        };
        limits::cap(default)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| domain(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    /// The `n` actually reached, after capping.
    pub n_max: usize,
    pub checked: u64,
    pub failure_count: u64,
    /// Up to twenty counterexamples.
    pub failures: Vec<String>,
    /// Optional per-case data, e.g. counts.
    pub table: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(describe());
            }
        }
    }
}

pub fn run_suite(suite: Suite, n_max: usize) -> SuiteReport {
    let n_max = n_max.min(suite.cap());
    let mut report = SuiteReport { suite: suite.name().into(), n_max, ..Default::default() };
    let r = &mut report;
    match suite {
        Suite::Metric => {
            for n in 1..=n_max {
                for p in Permutation::all(n) {
                    let bfs = cayley_distance_bfs(&p);
                    r.check(bfs.as_ref().ok() == Some(&p.word_length()), || {
                        format!("{p:?}: |σ| = {} but BFS gives {bfs:?}", p.word_length())
                    });
                }
            }
        }
        Suite::Axioms => {
            for n in 1..=n_max {
                for p in Permutation::all(n) {
                    let set = p.inversion_set();
                    let back = from_inversion_set(&set);
                    r.check(back.as_ref() == Ok(&p), || format!("{p:?}: reconstruction gave {back:?}"));
                }
            }
        }
        Suite::DBadLength => {
            for n in 2..=n_max {
                for p in Permutation::all(n) {
                    let len = p.word_length();
                    for d in 2..=n {
                        let bad = !is_d_good(&p, d).unwrap();
                        r.check(!bad || len >= d * (d - 1) / 2, || {
                            format!("{p:?} is {d}-bad with |σ| = {len} < {}", d * (d - 1) / 2)
                        });
                    }
                }
            }
        }
        Suite::Dilworth => {
            for n in 2..=n_max {
                for d in 2..=n {
                    match count_d_good(n, d) {
                        Ok(count) => {
                            let bound = classic_bound(n, d).unwrap();
                            r.table.push(format!("n={n} d={d} d-good={count} bound={bound}"));
                            r.check(BigUint::from(count) <= bound, || {
                                format!("n={n} d={d}: {count} d-good exceeds {bound}")
                            });
                        }
                        Err(e) => r.check(false, || format!("n={n} d={d}: {e}")),
                    }
                }
            }
        }
        Suite::Lgf => {
            for n in 1..=n_max {
                for p in Permutation::all(n) {
                    for problem in greedy_form_violations(&p) {
                        r.check(false, || format!("{p:?}: {problem}"));
                    }
                    r.check(true, String::new);
                }
            }
        }
        Suite::Growth => {
            for n in 2..=n_max {
                for p in Permutation::all(n) {
                    let gf = left_greedy_form(&p);
                    for pieces in 2..=n {
                        for dec in enumerate_chunk_preserving(&gf, pieces) {
                            let outcome = growth_counterexample(&dec);
                            r.check(matches!(outcome, Ok(None)), || {
                                format!("{p:?} pieces {:?}: {outcome:?}", dec.spans().collect::<Vec<_>>())
                            });
                        }
                    }
                }
            }
        }
        Suite::Classic => {
            for n in 2..=n_max {
                for d in 2..=n.min(4) {
                    match classic_closure(n, d) {
                        Ok(t) => {
                            let good = t.terminal_support.iter().all(|p| is_d_good(p, d).unwrap());
                            r.table.push(format!(
                                "n={n} d={d} sources={} visited={} depth={} terminal={}",
                                t.roots.len(),
                                t.visited(),
                                t.max_depth,
                                t.terminal_support.len()
                            ));
                            r.check(good, || format!("n={n} d={d}: terminal support has a {d}-bad element"));
                        }
                        Err(e) => r.check(false, || format!("n={n} d={d}: {e}")),
                    }
                }
            }
        }
        Suite::Main => {
            for n in 2..=n_max {
                for d in 2..=n {
                    match main_closure(n, d) {
                        Ok(t) => {
                            r.table.push(format!(
                                "n={n} d={d} sources={} visited={} depth={} terminal={} #B̂={}",
                                t.roots.len(),
                                t.visited(),
                                t.max_depth,
                                t.terminal_support.len(),
                                t.ball_complement.as_ref().unwrap()
                            ));
                            r.check(true, String::new);
                        }
                        Err(e) => r.check(false, || format!("n={n} d={d}: {e}")),
                    }
                }
            }
        }
        Suite::Mahonian => {
            for n in 1..=n_max {
                let fast = mahonian_row(n).unwrap();
                let slow = brute_force_row::<BigUint>(n);
                r.check(slow.as_ref() == Ok(&fast), || format!("row {n}: {fast:?} vs {slow:?}"));
            }
        }
        Suite::Knuth => {
            for n in 1..=n_max {
                let row = mahonian_row(n).unwrap();
                for k in 0..=n {
                    let knuth = mahonian_knuth(n, k);
                    r.check(knuth.as_ref() == Ok(&row.get(k)), || {
                        format!("I_{n}({k}) = {} but formula gives {knuth:?}", row.get(k))
                    });
                }
            }
        }
    }
    report
}

/// Every violated structural property of the left greedy form of `p`.
pub fn greedy_form_violations(p: &Permutation) -> Vec<String> {
    let n = p.n();
    let gf = left_greedy_form(p);
    let inv = p.inversion_set();
    let len = p.word_length();
    let mut out = Vec::new();

    // tiling w_0 c_1 w_1 ... c_k w_k
    let mut next = 1;
    let mut tiled = true;
    for (l, gap) in gf.gaps().iter().enumerate() {
        if let Some(g) = gap {
            tiled &= g.start() == next;
            next = g.end() + 1;
        }
        if let Some(c) = gf.chunks().get(l) {
            tiled &= c.start() == next;
            next = c.end() + 1;
        }
    }
    if !tiled || next != n + 1 {
        out.push("gaps and chunks do not tile the word".into());
    }
    if (gf.k() == 0) != p.is_identity() {
        out.push("no chunks, but not the identity (or vice versa)".into());
    }
    for gap in gf.gaps().iter().flatten() {
        for i in gap.positions() {
            if let Some((_, j)) = inv.pairs().find(|&(a, _)| a == i) {
                out.push(format!("gap position {i} is the left end of inversion ({i},{j})"));
            }
        }
    }
    for (i, j) in inv.pairs() {
        match (gf.chunk_of(i), gf.chunk_of(j)) {
            (Some(a), Some(b)) if a == b => {}
            _ => out.push(format!("inversion ({i},{j}) is not inside one chunk")),
        }
        if len < j - i {
            out.push(format!("|σ| = {len} < j - i for inversion ({i},{j})"));
        }
    }
    // defining conditions of each chunk; minimality of its first pair is the gap check above
    for c in gf.chunks() {
        let starts_pair = (c.start() + 1..=n).any(|j| inv.contains(c.start(), j));
        let ends_pair = (1..c.end()).any(|i| inv.contains(i, c.end()));
        let closed = c.positions().all(|i| !(c.end() + 1..=n).any(|j| inv.contains(i, j)));
        if !(starts_pair && ends_pair && closed) {
            out.push(format!("chunk {c:?} fails the initial-chunk conditions"));
        }
    }
    let stats = gf.stats();
    if stats.k > len {
        out.push(format!("k = {} exceeds |σ| = {len}", stats.k));
    }
    if stats.total_chunk_length > len + stats.k {
        out.push(format!(
            "Σ l(c_j) = {} exceeds |σ| + k = {}",
            stats.total_chunk_length,
            len + stats.k
        ));
    }
    out
}
