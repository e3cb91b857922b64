//! Support-level rewriting of multilinear monomials.
//!
//! Both spanning arguments rewrite a monomial `x_σ` as a combination of the
//! monomials obtained by permuting the blocks of a decomposition of `x_σ`
//! (all non-identity block orders of an identity of degree `d`). Coefficients
//! play no role in either argument, so a rewrite step here maps a permutation
//! to the `d! - 1` permutations in the support of its replacement.
//!
//! * classic mode: blocks start at the positions of the least d-bad witness;
//!   every child is smaller in dictionary order, and the normal forms are d-good.
//! * main mode: blocks form a chunk-preserving decomposition of the left greedy
//!   form; every child is strictly longer, and the normal forms lie outside
//!   the ball `B(K_n)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::BoundParams;
use crate::error::{domain, Error, Result};
use crate::greedy::{enumerate_chunk_preserving, left_greedy_form, rearrange, rearranged_values, PieceDecomposition, Rearrangement, Span};
use crate::limits;
use crate::mahonian::mahonian_row;
use crate::perm::{find_d_bad_witness, is_d_good, Permutation};
use crate::Radius;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classic,
    Main,
}

/// One classic rewrite: the fixed prefix `w_0`, the permuted blocks
/// `w_1..w_d`, and the resulting children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicStep {
    pub witness: Vec<usize>,
    pub prefix: Option<Span>,
    pub blocks: Vec<Span>,
    pub children: Vec<Permutation>,
}

pub fn classic_step_detailed(p: &Permutation, d: usize) -> Result<ClassicStep> {
    let n = p.n();
    if d < 2 || d > n {
        return Err(domain(format!("classic rewriting needs 2 <= d <= n, got d = {d}, n = {n}")));
    }
    let witness = find_d_bad_witness(p, d)?
        .ok_or_else(|| Error::Precondition(format!("{p} is {d}-good")))?;
    let prefix = Span::maybe(1, witness[0] - 1);
    let blocks: Vec<Span> = witness
        .iter()
        .enumerate()
        .map(|(t, &start)| {
            let end = witness.get(t + 1).map_or(n, |&next| next - 1);
            Span::new(start, end).expect("witness positions increase")
        })
        .collect();
    let head: Vec<usize> = prefix.iter().flat_map(|s| s.positions()).map(|pos| p.at(pos)).collect();
    let mut children = Vec::with_capacity(blocks.len());
    for tau in Rearrangement::non_identity(d) {
        let mut image = head.clone();
        image.extend(rearranged_values(p, &blocks, &tau.0));
        let child = Permutation::from_image_unchecked(image);
        if child >= *p {
            return Err(Error::Falsified(format!(
                "classic child {child} of {p} is not smaller in dictionary order"
            )));
        }
        children.push(child);
    }
    Ok(ClassicStep { witness, prefix, blocks, children })
}

/// The `d! - 1` children of a d-bad permutation under the classic rewrite.
pub fn classic_step(p: &Permutation, d: usize) -> Result<Vec<Permutation>> {
    Ok(classic_step_detailed(p, d)?.children)
}

/// One main-mode rewrite: the chosen decomposition and the resulting children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainStep {
    pub decomposition: PieceDecomposition,
    pub children: Vec<Permutation>,
}

pub fn main_step_detailed(p: &Permutation, d: usize) -> Result<MainStep> {
    let params = BoundParams::new(p.n(), d)?;
    let len = p.word_length();
    if Radius::from_integer(len as i64) >= params.radius {
        return Err(Error::Precondition(format!(
            "|{p}| = {len} is not below K_n = {}",
            params.radius
        )));
    }
    let gf = left_greedy_form(p);
    let decomposition = enumerate_chunk_preserving(&gf, d).into_iter().next().ok_or_else(|| {
        Error::Falsified(format!("no chunk-preserving decomposition of {p} into {d} pieces"))
    })?;
    let pieces: Vec<Span> = decomposition.spans().collect();
    let mut children = Vec::new();
    for tau in Rearrangement::non_identity(d) {
        let child = rearrange(p, &pieces, &tau.0);
        if child.word_length() <= len {
            return Err(Error::Falsified(format!(
                "rearranging {p} by {} gives {child} of length {} <= {len}",
                tau.0,
                child.word_length()
            )));
        }
        children.push(child);
    }
    Ok(MainStep { decomposition, children })
}

/// The `d! - 1` strictly longer children of `σ ∈ B(K_n)`.
pub fn main_step(p: &Permutation, d: usize) -> Result<Vec<Permutation>> {
    Ok(main_step_detailed(p, d)?.children)
}

/// The rewrite graph explored from a set of roots until every leaf is in
/// normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub mode: Mode,
    pub n: usize,
    pub d: usize,
    pub roots: Vec<Permutation>,
    pub steps: BTreeMap<Permutation, Vec<Permutation>>,
    pub terminal_support: BTreeSet<Permutation>,
    /// Longest rewrite chain, in edges.
    pub max_depth: usize,
    /// `#B̂(K_n)` in main mode, for cross-reference with the terminal support.
    pub ball_complement: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceSummary {
    pub sources: usize,
    pub visited: usize,
    pub expanded: usize,
    pub max_depth: usize,
    pub terminal_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ball_complement: Option<String>,
}

impl ReductionTrace {
    pub fn visited(&self) -> usize {
        self.steps.len() + self.terminal_support.len()
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            sources: self.roots.len(),
            visited: self.visited(),
            expanded: self.steps.len(),
            max_depth: self.max_depth,
            terminal_size: self.terminal_support.len(),
            ball_complement: self.ball_complement.as_ref().map(|c| c.to_string()),
        }
    }

    /// JSON form; `summary_only` drops the edge lists.
    pub fn to_json(&self, summary_only: bool) -> Value {
        let mut v = json!({
            "mode": self.mode,
            "n": self.n,
            "d": self.d,
            "summary": self.summary(),
        });
        if !summary_only {
            v["roots"] = json!(self.roots);
            v["edges"] = Value::Object(
                self.steps
                    .iter()
                    .map(|(p, cs)| (p.to_string(), json!(cs)))
                    .collect(),
            );
            v["terminal_support"] = json!(self.terminal_support);
        }
        v
    }
}

/// Worklist closure with memoisation on permutation value.
fn close<F, T>(roots: &[Permutation], is_terminal: T, mut step: F) -> Result<(BTreeMap<Permutation, Vec<Permutation>>, BTreeSet<Permutation>)>
where
    F: FnMut(&Permutation) -> Result<Vec<Permutation>>,
    T: Fn(&Permutation) -> bool,
{
    let mut steps = BTreeMap::new();
    let mut terminal = BTreeSet::new();
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut work: Vec<Permutation> = roots.to_vec();
    while let Some(p) = work.pop() {
        if !seen.insert(p.clone()) {
            continue;
        }
        if is_terminal(&p) {
            terminal.insert(p);
            continue;
        }
        let children = step(&p)?;
        work.extend(children.iter().filter(|c| !seen.contains(*c)).cloned());
        steps.insert(p, children);
    }
    Ok((steps, terminal))
}

/// Longest chain length, visiting nodes so that children are settled first.
fn longest_chain(steps: &BTreeMap<Permutation, Vec<Permutation>>, order: &[&Permutation]) -> usize {
    let mut depth: HashMap<&Permutation, usize> = HashMap::new();
    let mut best = 0;
    for &p in order {
        let dp = 1 + steps[p].iter().map(|c| depth.get(c).copied().unwrap_or(0)).max().unwrap_or(0);
        depth.insert(p, dp);
        best = best.max(dp);
    }
    best
}

/// Rewrites every d-bad `σ ∈ S_n` down to d-good monomials.
pub fn classic_closure(n: usize, d: usize) -> Result<ReductionTrace> {
    if d < 2 || d > n {
        return Err(domain(format!("classic closure needs 2 <= d <= n, got d = {d}, n = {n}")));
    }
    limits::enforce("classic_closure", n, limits::CLASSIC_CLOSURE)?;
    let roots: Vec<Permutation> = Permutation::all(n).filter(|p| !is_d_good(p, d).unwrap()).collect();
    let (steps, terminal_support) = close(&roots, |p| is_d_good(p, d).unwrap(), |p| classic_step(p, d))?;
    if let Some(bad) = terminal_support.iter().find(|p| !is_d_good(p, d).unwrap()) {
        return Err(Error::Falsified(format!("terminal {bad} is {d}-bad")));
    }
    // children are dictionary-smaller, so ascending order settles them first
    let order: Vec<&Permutation> = steps.keys().collect();
    let max_depth = longest_chain(&steps, &order);
    Ok(ReductionTrace { mode: Mode::Classic, n, d, roots, steps, terminal_support, max_depth, ball_complement: None })
}

/// Rewrites every `σ ∈ B(K_n)` into monomials outside the ball.
pub fn main_closure(n: usize, d: usize) -> Result<ReductionTrace> {
    let params = BoundParams::new(n, d)?;
    limits::enforce("main_closure", n, limits::MAIN_CLOSURE)?;
    let inside = |p: &Permutation| Radius::from_integer(p.word_length() as i64) < params.radius;
    let roots: Vec<Permutation> = Permutation::all(n).filter(|p| inside(p)).collect();
    let (steps, terminal_support) = close(&roots, |p| !inside(p), |p| main_step(p, d))?;
    if let Some(bad) = terminal_support.iter().find(|p| inside(p)) {
        return Err(Error::Falsified(format!("terminal {bad} lies inside B(K_n)")));
    }
    // children are longer, so descending length settles them first
    let mut order: Vec<&Permutation> = steps.keys().collect();
    order.sort_by_key(|p| std::cmp::Reverse(p.word_length()));
    let max_depth = longest_chain(&steps, &order);
    let ball_complement = Some(mahonian_row(n)?.ball_complement(&params.radius));
    Ok(ReductionTrace { mode: Mode::Main, n, d, roots, steps, terminal_support, max_depth, ball_complement })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classic_steps() {
        let step = classic_step_detailed(&perm(&[3, 2, 1]), 3).unwrap();
        assert_eq!(step.witness, vec![1, 2, 3]);
        assert_eq!(step.prefix, None);
        assert_eq!(step.children.len(), 5);
        assert!(step.children.iter().all(|c| *c < perm(&[3, 2, 1])));

        let kids = classic_step(&perm(&[2, 1, 3]), 2).unwrap();
        assert_eq!(kids, vec![perm(&[1, 3, 2])]);

        let step = classic_step_detailed(&perm(&[4, 1, 3, 2]), 3).unwrap();
        assert_eq!(step.witness, vec![1, 3, 4]);
        assert_eq!(
            step.blocks,
            vec![Span::new(1, 2).unwrap(), Span::new(3, 3).unwrap(), Span::new(4, 4).unwrap()]
        );

        // prefix w_0 stays in front
        let step = classic_step_detailed(&perm(&[1, 3, 2]), 2).unwrap();
        assert_eq!(step.prefix, Some(Span::new(1, 1).unwrap()));
        assert_eq!(step.children, vec![perm(&[1, 2, 3])]);
    }

    #[test]
    fn classic_preconditions() {
        assert!(matches!(classic_step(&perm(&[1, 2, 3]), 2), Err(Error::Precondition(_))));
        assert!(matches!(classic_step(&perm(&[2, 1]), 3), Err(Error::Domain(_))));
        assert!(classic_closure(3, 4).is_err());
        assert!(matches!(classic_closure(8, 3), Err(Error::Scale { .. })));
    }

    #[test]
    fn classic_closures() {
        let t = classic_closure(3, 2).unwrap();
        assert_eq!(t.roots.len(), 5);
        assert_eq!(t.terminal_support, BTreeSet::from([Permutation::identity(3)]));

        let t = classic_closure(4, 3).unwrap();
        assert!(t.terminal_support.iter().all(|p| is_d_good(p, 3).unwrap()));
        assert!(t.terminal_support.len() <= 14);
        assert!(t.max_depth >= 1);
    }

    #[test]
    fn main_steps() {
        let id = Permutation::identity(5);
        let kids = main_step(&id, 2).unwrap();
        assert_eq!(kids.len(), 1);
        assert!(kids[0].word_length() > 0);

        let p = perm(&[1, 3, 2, 4, 5, 6]);
        let step = main_step_detailed(&p, 3).unwrap();
        assert_eq!(step.children.len(), 5);
        assert!(step.children.iter().all(|c| c.word_length() >= 2));

        let p2 = perm(&[2, 1, 4, 3, 5, 6]);
        assert!(matches!(main_step(&p2, 3), Err(Error::Precondition(_))));
        assert!(main_step(&id, 6).is_err());
    }

    #[test]
    fn main_closures() {
        let t = main_closure(4, 4).unwrap();
        assert!(t.roots.is_empty());
        assert!(t.steps.is_empty());
        assert_eq!(t.max_depth, 0);

        let t = main_closure(6, 4).unwrap();
        assert_eq!(t.roots, vec![Permutation::identity(6)]);
        assert_eq!(t.max_depth, 1);
        assert!(t.terminal_support.iter().all(|p| p.word_length() >= 1));
        assert_eq!(t.ball_complement, Some(BigUint::from(719u32)));

        let t = main_closure(7, 3).unwrap();
        assert_eq!(t.roots.len(), 7);
        assert!(t.terminal_support.iter().all(|p| p.word_length() >= 2));
    }

    #[test]
    fn trace_json() {
        let t = main_closure(6, 4).unwrap();
        let full = t.to_json(false);
        assert_eq!(full["summary"]["sources"], 1);
        assert_eq!(full["edges"]["1,2,3,4,5,6"].as_array().unwrap().len(), 23);
        let short = t.to_json(true);
        assert!(short.get("edges").is_none());
        assert_eq!(short["mode"], "main");
    }
}
