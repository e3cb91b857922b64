//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p codim-core --test acceptance`. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use codim::bounds::{asymptotic_in, crossover_n, phi, q_constant, theorem_bound};
use codim::greedy::{enumerate_chunk_preserving, growth_counterexample, left_greedy_form};
use codim::mahonian::{brute_force_row, factorial, mahonian_knuth, mahonian_row};
use codim::perm::{cayley_distance_bfs, count_d_good, is_d_good};
use codim::reduction::{classic_closure, main_closure};
use codim::verify::greedy_form_violations;
use codim::{bounds::classic_bound, Permutation, Radius};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn check(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn mahonian_oracle() -> Outcome {
    for n in 1..=8 {
        let fast = mahonian_row(n).unwrap();
        let slow = brute_force_row::<BigUint>(n).unwrap();
        if fast != slow {
            return fail(format!("row {n} differs: {fast:?} vs {slow:?}"));
        }
    }
    pass("rows 1..=8 equal")
}

fn knuth_formula() -> Outcome {
    let mut checked = 0;
    for n in 1..=30 {
        let row = mahonian_row(n).unwrap();
        for k in 0..=n {
            let via_formula = mahonian_knuth(n, k).unwrap();
            if via_formula != row.get(k) {
                return fail(format!("I_{n}({k}): product {} vs formula {via_formula}", row.get(k)));
            }
            checked += 1;
        }
    }
    pass(format!("{checked} coefficients equal"))
}

fn word_metric() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for p in Permutation::all(n) {
            let bfs = cayley_distance_bfs(&p).unwrap();
            if bfs != p.word_length() || bfs != p.inversion_set().len() {
                return fail(format!("{p:?}: |σ| = {}, BFS = {bfs}", p.word_length()));
            }
            checked += 1;
        }
    }
    pass(format!("{checked} permutations"))
}

fn d_bad_length() -> Outcome {
    let mut counterexamples = 0u64;
    let mut checked = 0u64;
    for n in 2..=8 {
        for p in Permutation::all(n) {
            let len = p.word_length();
            for d in 2..=n {
                checked += 1;
                if !is_d_good(&p, d).unwrap() && len < d * (d - 1) / 2 {
                    counterexamples += 1;
                }
            }
        }
    }
    check(counterexamples == 0, format!("{checked} (σ, d) pairs, {counterexamples} counterexamples"))
}

fn dilworth() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=8 {
        for d in 2..=n {
            let count = count_d_good(n, d).unwrap();
            let bound = classic_bound(n, d).unwrap();
            if BigUint::from(count) > bound {
                return fail(format!("n={n} d={d}: {count} > {bound}"));
            }
            worst = worst.max(count as f64 / bound.to_f64().unwrap());
        }
    }
    pass(format!("all (n, d) with n <= 8; max count/bound = {worst:.3}"))
}

fn structural() -> Outcome {
    let mut perms = 0u64;
    let mut decompositions = 0u64;
    for n in 1..=6 {
        for p in Permutation::all(n) {
            perms += 1;
            if let Some(v) = greedy_form_violations(&p).first() {
                return fail(format!("{p:?}: {v}"));
            }
            let gf = left_greedy_form(&p);
            for pieces in 2..=n {
                for dec in enumerate_chunk_preserving(&gf, pieces) {
                    decompositions += 1;
                    match growth_counterexample(&dec) {
                        Ok(None) => {}
                        other => return fail(format!("{p:?} {:?}: {other:?}", dec.spans().collect::<Vec<_>>())),
                    }
                }
            }
        }
    }
    pass(format!("{perms} permutations, {decompositions} chunk-preserving decompositions"))
}

fn classic_theorem() -> Outcome {
    let mut runs = 0;
    for n in 2..=6 {
        for d in [2, 3, 4].into_iter().filter(|&d| d <= n) {
            let t = match classic_closure(n, d) {
                Ok(t) => t,
                Err(e) => return fail(format!("n={n} d={d}: {e}")),
            };
            if let Some(bad) = t.terminal_support.iter().find(|p| !is_d_good(p, d).unwrap()) {
                return fail(format!("n={n} d={d}: terminal {bad:?} is {d}-bad"));
            }
            if t.terminal_support.len() as u64 > count_d_good(n, d).unwrap() {
                return fail(format!("n={n} d={d}: terminal support too large"));
            }
            runs += 1;
        }
    }
    pass(format!("{runs} closures terminate in d-good support"))
}

fn main_theorem() -> Outcome {
    let mut sources = 0;
    for n in 2..=8 {
        for d in 2..=n {
            let t = match main_closure(n, d) {
                Ok(t) => t,
                Err(e) => return fail(format!("n={n} d={d}: {e}")),
            };
            let radius = Radius::new(n as i64 - d as i64, 2);
            if let Some(p) = t.terminal_support.iter().find(|p| Radius::from(p.word_length() as i64) < radius) {
                return fail(format!("n={n} d={d}: terminal {p:?} inside B(K_n)"));
            }
            if t.max_depth > n * (n - 1) / 2 {
                return fail(format!("n={n} d={d}: chain of length {} too long", t.max_depth));
            }
            sources += t.roots.len();
        }
    }
    for n in 3..=12 {
        for d in 2..n {
            let bound = theorem_bound(n, d).unwrap();
            if bound >= factorial(n) {
                return fail(format!("#B̂(K_{n}) = {bound} is not below {n}! for d = {d}"));
            }
        }
    }
    pass(format!("{sources} sources rewritten, 0 falsifications; #B̂(K_n) < n! for d < n <= 12"))
}

fn crossover() -> Outcome {
    let column: Vec<usize> = (2..=10).map(|d| crossover_n(d).unwrap()).collect();
    let monotone = column.windows(2).all(|w| w[0] <= w[1]);
    check(
        column[0] == 2 && column[1] == 9 && monotone,
        format!("n(d) for d = 2..=10: {column:?}"),
    )
}

fn asymptotics() -> Outcome {
    let q = q_constant(1e-15_f64).unwrap().q;
    let n = 40;
    let row = mahonian_row(n).unwrap();
    let ratios: Vec<f64> = (0..=10)
        .map(|k| {
            let est = asymptotic_in(n, k, q).unwrap().value.unwrap();
            est / row.get(n - k).to_f64().unwrap()
        })
        .collect();
    let outside: Vec<(usize, f64)> = ratios
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, r)| !(0.8..=1.2).contains(&r))
        .collect();
    let phi_ok = (20..=60).all(|m| phi(m, 3).unwrap() > BigInt::from(4).pow(m as u32));
    let range = ratios.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    let detail = format!(
        "Q = {q:.13}; ratio range [{:.4}, {:.4}]; outside [0.8, 1.2]: {outside:?}; φ(n,3) > 4^n for 20..=60: {phi_ok}",
        range.0, range.1
    );
    check(outside.is_empty() && phi_ok, detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, Duration, fn() -> Outcome); 10] = [
        ("1", "Mahonian product = enumeration, n <= 8", Duration::from_secs(10), mahonian_oracle),
        ("2", "pentagonal formula = product, n <= 30, k <= n", Duration::from_secs(5), knuth_formula),
        ("3", "word length = Cayley BFS distance, n <= 6", Duration::from_secs(30), word_metric),
        ("4", "d-bad implies |σ| >= d(d-1)/2, n <= 8", Duration::from_secs(120), d_bad_length),
        ("5", "#d-good <= (d-1)^{2n}, n <= 8", Duration::from_secs(120), dilworth),
        ("6", "greedy-form structure and growth, n <= 6", Duration::from_secs(300), structural),
        ("7", "classic rewriting reaches d-good support", Duration::from_secs(120), classic_theorem),
        ("8", "main rewriting leaves B(K_n); #B̂(K_n) < n!", Duration::from_secs(300), main_theorem),
        ("9", "crossover n(d) values and monotonicity", Duration::from_secs(1), crossover),
        ("10", "asymptotic regime and φ(n,3) > 4^n", Duration::from_secs(5), asymptotics),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] criterion {id:>2}: {title} ({:.2?} / limit {:?}){} -- {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            limit,
            if in_time { "" } else { " TIME LIMIT EXCEEDED" },
            outcome.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
