use clap::ValueEnum;
use serde_json::{json, Value};

use codim::bounds::{compare_bounds, crossover_n, BoundRow};
use codim::greedy::{left_greedy_form, Segment};
use codim::limits;
use codim::mahonian::{brute_force_row, mahonian_knuth, mahonian_row};
use codim::perm::{is_d_good, Permutation};
use codim::reduction::{classic_closure, classic_step_detailed, main_closure, main_step_detailed, ReductionTrace};
use codim::verify::{run_suite, Suite};
use codim::Span;
use num_bigint::BigUint;

use crate::render::Rendered;
use crate::{Failure, Outcome, ReduceArgs};

type CmdResult = Result<Outcome, Failure>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Classic,
    Main,
}

fn ok(rendered: Rendered) -> CmdResult {
    Ok(Outcome { rendered, status: None, diagnostics: Vec::new() })
}

fn letters(p: &Permutation, span: Option<Span>) -> String {
    let values: Vec<String> = span.iter().flat_map(|s| s.positions()).map(|i| p.at(i).to_string()).collect();
    format!("[{}]", values.join(","))
}

pub fn mahonian(n: usize, check: bool) -> CmdResult {
    let row = mahonian_row(n)?;
    let rows = row
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, c)| vec![n.to_string(), k.to_string(), c.to_string()])
        .collect();
    let json = serde_json::to_value(&row).expect("row serialises");
    let rendered = Rendered::Both(Box::new(Rendered::rows(&["n", "k", "count"], rows)), json);
    let mut outcome = Outcome { rendered, status: None, diagnostics: Vec::new() };
    if !check {
        return Ok(outcome);
    }

    let mut problems = Vec::new();
    if let Err(e) = row.check_invariants() {
        problems.push(e.to_string());
    }
    let knuth_upto = n.min(row.max_length());
    for k in 0..=knuth_upto {
        let knuth = mahonian_knuth(n, k)?;
        if knuth != row.get(k) {
            problems.push(format!("I_{n}({k}): row has {}, pentagonal formula gives {knuth}", row.get(k)));
        }
    }
    let brute = n <= 8;
    if brute {
        let slow = brute_force_row::<BigUint>(n)?;
        if slow != row {
            problems.push(format!("row {n} disagrees with enumeration of S_{n}"));
        }
    }
    if problems.is_empty() {
        let how = if brute { "pentagonal formula and enumeration" } else { "pentagonal formula" };
        outcome.diagnostics.push(format!("OK: row {n} agrees with the {how} (k <= {knuth_upto})"));
    } else {
        outcome.status = Some(Failure::Check(problems.join("; ")));
    }
    Ok(outcome)
}

pub fn bounds(d: usize, n_max: usize) -> CmdResult {
    let report = compare_bounds(d, n_max)?;
    let json = serde_json::to_value(&report).expect("report serialises");
    let rows: Vec<Vec<String>> = report.rows.iter().map(|r| r.csv_record().to_vec()).collect();
    let region = report.sharper_region();
    let notes = vec![
        format!("n(d) = {} for d = {d}", report.crossover_n),
        if region.is_empty() {
            "no n below n(d) where the ball-complement bound is below n!".to_string()
        } else {
            format!("ball-complement bound below n! before n(d) at n = {region:?}")
        },
    ];
    ok(Rendered::Both(Box::new(Rendered::rows(&BoundRow::CSV_HEADER, rows).with_notes(notes)), json))
}

pub fn crossover(d_max: usize) -> CmdResult {
    if d_max < 2 {
        return Err(Failure::Usage(format!("--d-max must be at least 2, got {d_max}")));
    }
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for d in 2..=d_max {
        let n_d = crossover_n(d)?;
        rows.push(vec![d.to_string(), n_d.to_string()]);
        json.push(json!({ "d": d, "n_d": n_d }));
    }
    ok(Rendered::Both(Box::new(Rendered::rows(&["d", "n_d"], rows)), Value::Array(json)))
}

pub fn verify(n_max: usize, suites: &[Suite]) -> CmdResult {
    let suites: Vec<Suite> = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let mut json = Vec::new();
    let mut failed = Vec::new();
    for suite in suites {
        let r = run_suite(suite, n_max);
        rows.push(vec![
            r.suite.clone(),
            r.n_max.to_string(),
            r.checked.to_string(),
            r.failure_count.to_string(),
            if r.passed() { "pass" } else { "FAIL" }.to_string(),
        ]);
        if !r.table.is_empty() {
            notes.push(String::new());
            notes.push(format!("{}:", r.suite));
            notes.extend(r.table.iter().map(|line| format!("  {line}")));
        }
        if !r.passed() {
            failed.push(r.suite.clone());
            notes.push(String::new());
            notes.push(format!("{} counterexamples ({} total):", r.suite, r.failure_count));
            notes.extend(r.failures.iter().map(|line| format!("  {line}")));
        }
        json.push(json!({
            "suite": r.suite,
            "n_max": r.n_max,
            "checked": r.checked,
            "failures": r.failure_count,
            "passed": r.passed(),
            "counterexamples": r.failures,
            "table": r.table,
        }));
    }
    let rendered = Rendered::Both(
        Box::new(Rendered::rows(&["suite", "n_max", "checked", "failures", "status"], rows).with_notes(notes)),
        Value::Array(json),
    );
    let status = (!failed.is_empty()).then(|| Failure::Check(format!("suites failed: {}", failed.join(", "))));
    Ok(Outcome { rendered, status, diagnostics: Vec::new() })
}

pub fn greedy(p: &Permutation) -> CmdResult {
    let gf = left_greedy_form(p);
    let stats = gf.stats();
    let mut rows = Vec::new();
    let mut line = Vec::new();
    for seg in gf.segments() {
        let (kind, index, span) = match seg {
            Segment::Gap { index, span } => ("w", index, span),
            Segment::Chunk { index, span } => ("c", index, Some(span)),
        };
        line.push(format!("{kind}{index}={}", letters(p, span)));
        rows.push(vec![
            kind.to_string(),
            index.to_string(),
            span.map_or(String::new(), |s| s.start().to_string()),
            span.map_or(String::new(), |s| s.end().to_string()),
            letters(p, span),
        ]);
    }
    let notes = vec![
        format!("σ = {p}"),
        line.join(" "),
        format!(
            "k = {}, total chunk length = {}, |σ| = {}",
            stats.k, stats.total_chunk_length, stats.word_length
        ),
    ];
    let mut json = serde_json::to_value(&gf).expect("greedy form serialises");
    json["stats"] = serde_json::to_value(stats).expect("stats serialise");
    ok(Rendered::Both(
        Box::new(Rendered::rows(&["kind", "index", "start", "end", "letters"], rows).with_notes(notes)),
        json,
    ))
}

pub fn reduce(args: &ReduceArgs) -> CmdResult {
    if args.closure {
        let n = args.n.expect("clap enforces --n with --closure");
        let trace = match args.mode {
            ModeArg::Classic => classic_closure(n, args.d)?,
            ModeArg::Main => main_closure(n, args.d)?,
        };
        return ok(closure_output(&trace, args.summary_only));
    }
    let p = args
        .perm
        .as_ref()
        .ok_or_else(|| Failure::Usage("give --perm for one step, or --closure with --n".into()))?;
    let len = p.word_length();
    let (header, children, mut notes, mut json) = match args.mode {
        ModeArg::Classic => {
            let step = classic_step_detailed(p, args.d)?;
            let blocks: Vec<String> = step.blocks.iter().map(|&b| letters(p, Some(b))).collect();
            let notes = vec![
                format!("σ = {p}, |σ| = {len}"),
                format!("{}-bad witness at positions {:?}", args.d, step.witness),
                format!("w0 = {} blocks = {}", letters(p, step.prefix), blocks.join(" ")),
            ];
            let json = json!({
                "mode": "classic",
                "perm": p,
                "d": args.d,
                "witness": step.witness,
                "prefix": step.prefix,
                "blocks": step.blocks,
            });
            (["child", "length", "d-good"], step.children, notes, json)
        }
        ModeArg::Main => {
            let step = main_step_detailed(p, args.d)?;
            let pieces: Vec<String> = step
                .decomposition
                .pieces()
                .iter()
                .map(|piece| letters(p, Some(piece.span)))
                .collect();
            let notes = vec![format!("σ = {p}, |σ| = {len}"), format!("pieces = {}", pieces.join(" "))];
            let json = json!({
                "mode": "main",
                "perm": p,
                "d": args.d,
                "decomposition": step.decomposition,
            });
            (["child", "length", "d-good"], step.children, notes, json)
        }
    };
    let mut rows = Vec::new();
    let mut child_json = Vec::new();
    for c in &children {
        let good = is_d_good(c, args.d)?;
        rows.push(vec![c.to_string(), c.word_length().to_string(), good.to_string()]);
        child_json.push(json!({ "perm": c, "length": c.word_length(), "d_good": good }));
    }
    notes.push(format!("{} children", children.len()));
    json["children"] = Value::Array(child_json);
    ok(Rendered::Both(Box::new(Rendered::rows(&header, rows).with_notes(notes)), json))
}

fn closure_output(trace: &ReductionTrace, summary_only: bool) -> Rendered {
    let s = trace.summary();
    let mut rows = vec![
        vec!["mode".to_string(), format!("{:?}", trace.mode).to_lowercase()],
        vec!["n".to_string(), trace.n.to_string()],
        vec!["d".to_string(), trace.d.to_string()],
        vec!["sources".to_string(), s.sources.to_string()],
        vec!["visited".to_string(), s.visited.to_string()],
        vec!["expanded".to_string(), s.expanded.to_string()],
        vec!["max_depth".to_string(), s.max_depth.to_string()],
        vec!["terminal_size".to_string(), s.terminal_size.to_string()],
    ];
    if let Some(c) = &s.ball_complement {
        rows.push(vec!["ball_complement".to_string(), c.clone()]);
    }
    let cap = match trace.mode {
        codim::reduction::Mode::Classic => limits::cap(limits::CLASSIC_CLOSURE),
        codim::reduction::Mode::Main => limits::cap(limits::MAIN_CLOSURE),
    };
    let mut notes = vec![format!("(n is capped at {cap})")];
    if !summary_only {
        notes.push(String::new());
        notes.push("terminal support:".to_string());
        notes.extend(trace.terminal_support.iter().map(|p| format!("  {p}")));
    }
    Rendered::Both(
        Box::new(Rendered::rows(&["key", "value"], rows).with_notes(notes)),
        trace.to_json(summary_only),
    )
}
