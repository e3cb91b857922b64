//! Initial chunks, left greedy form, chunk-preserving decompositions and the
//! action of `S_k` on the pieces of a decomposed monomial.
//!
//! A monomial `x_σ(1)···x_σ(n)` is identified with its permutation, and a
//! subword with the [`Span`] of positions it occupies.

use std::fmt;

use itertools::Itertools;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::perm::Permutation;

/// A nonempty run of consecutive positions `start..=end` (1-based).
///
/// Possibly-empty subwords are `Option<Span>`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    start: usize,
    end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start == 0 || end < start {
            return Err(domain(format!("invalid span [{start},{end}]")));
        }
        Ok(Self { start, end })
    }

    /// `Some` span for `start <= end`, `None` (the empty word) otherwise.
    pub fn maybe(start: usize, end: usize) -> Option<Self> {
        (start >= 1 && start <= end).then_some(Self { start, end })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    /// The subword length `l(w)`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.start <= pos && pos <= self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    /// `self ⪯ other`: same first letter, and `self` ends no later.
    pub fn precedes(&self, other: &Span) -> bool {
        self.start == other.start && self.end <= other.end
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

impl Serialize for Span {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.start, self.end].serialize(s)
    }
}

/// `x_σ = w_0 c w_1` split at the initial chunk `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InitialChunk {
    pub before: Option<Span>,
    pub chunk: Option<Span>,
    pub rest: Option<Span>,
}

/// For each 0-based position, the furthest 0-based inversion partner to its right.
fn furthest_partner(p: &Permutation) -> Vec<Option<usize>> {
    let img = p.image();
    let n = img.len();
    (0..n)
        .map(|i| ((i + 1)..n).rev().find(|&j| img[j] < img[i]))
        .collect()
}

/// Initial chunk of the suffix starting at 0-based position `from`.
fn chunk_in_suffix(p: &Permutation, partner: &[Option<usize>], from: usize) -> Option<Span> {
    let img = p.image();
    let n = img.len();
    // dictionary-least pair: least left element, then least right element
    let (i0, j_min) = (from..n).find_map(|i| ((i + 1)..n).find(|&j| img[j] < img[i]).map(|j| (i, j)))?;
    let mut j0 = j_min;
    let mut i = i0;
    while i <= j0 {
        if let Some(j) = partner[i] {
            j0 = j0.max(j);
        }
        i += 1;
    }
    Some(Span { start: i0 + 1, end: j0 + 1 })
}

/// The initial chunk of `x_σ`; empty exactly when `σ` is the identity.
pub fn initial_chunk(p: &Permutation) -> InitialChunk {
    let n = p.n();
    match chunk_in_suffix(p, &furthest_partner(p), 0) {
        None => InitialChunk { before: Span::maybe(1, n), chunk: None, rest: None },
        Some(c) => InitialChunk {
            before: Span::maybe(1, c.start - 1),
            chunk: Some(c),
            rest: Span::maybe(c.end + 1, n),
        },
    }
}

/// `x_σ = w_0 c_1 w_1 ··· c_k w_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyForm {
    perm: Permutation,
    gaps: Vec<Option<Span>>,
    chunks: Vec<Span>,
}

impl GreedyForm {
    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn chunks(&self) -> &[Span] {
        &self.chunks
    }

    /// `w_0, ..., w_k`; always one more than the number of chunks.
    pub fn gaps(&self) -> &[Option<Span>] {
        &self.gaps
    }

    /// Number of chunks `k`.
    pub fn k(&self) -> usize {
        self.chunks.len()
    }

    /// 1-based index of the chunk containing `pos`, if any.
    pub fn chunk_of(&self, pos: usize) -> Option<usize> {
        self.chunks.iter().position(|c| c.contains(pos)).map(|i| i + 1)
    }

    pub fn stats(&self) -> ChunkStats {
        ChunkStats {
            k: self.k(),
            total_chunk_length: self.chunks.iter().map(Span::len).sum(),
            word_length: self.perm.word_length(),
        }
    }

    /// Alternating gap/chunk spans in word order, empty gaps included.
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.gaps
            .iter()
            .enumerate()
            .flat_map(move |(l, gap)| {
                let gap = Segment::Gap { index: l, span: *gap };
                let chunk = self.chunks.get(l).map(|&span| Segment::Chunk { index: l + 1, span });
                std::iter::once(gap).chain(chunk)
            })
    }
}

/// One labelled entry of a [`GreedyForm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Segment {
    Gap { index: usize, span: Option<Span> },
    Chunk { index: usize, span: Span },
}

/// Iterated initial-chunk extraction.
pub fn left_greedy_form(p: &Permutation) -> GreedyForm {
    let n = p.n();
    let partner = furthest_partner(p);
    let mut gaps = Vec::new();
    let mut chunks = Vec::new();
    let mut from = 0;
    while let Some(c) = chunk_in_suffix(p, &partner, from) {
        gaps.push(Span::maybe(from + 1, c.start - 1));
        chunks.push(c);
        from = c.end;
    }
    gaps.push(Span::maybe(from + 1, n));
    GreedyForm { perm: p.clone(), gaps, chunks }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChunkStats {
    pub k: usize,
    pub total_chunk_length: usize,
    pub word_length: usize,
}

pub fn chunk_stats(p: &Permutation) -> ChunkStats {
    left_greedy_form(p).stats()
}

/// Role of a piece in a chunk-preserving decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceKind {
    /// A `y` piece lying inside a single gap.
    Gap,
    /// `c'_i`, extending chunk `c_i` (1-based index).
    Chunk(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub span: Span,
    pub kind: PieceKind,
}

impl Serialize for Piece {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("span", &self.span)?;
        match self.kind {
            PieceKind::Gap => map.serialize_entry("kind", "y")?,
            PieceKind::Chunk(i) => {
                map.serialize_entry("kind", "c")?;
                map.serialize_entry("chunk_index", &i)?;
            }
        }
        map.end()
    }
}

/// A decomposition `y^0_1···y^0_{m_0} c'_1 ··· c'_{k'} y^{k'}_1···y^{k'}_{m_{k'}}`
/// of `x_σ` that preserves the chunks of its left greedy form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceDecomposition {
    perm: Permutation,
    pieces: Vec<Piece>,
    chunk_count: usize,
}

impl PieceDecomposition {
    /// Classifies a tiling of `1..=n` against `gf`, rejecting it unless it
    /// preserves chunks.
    pub fn new(gf: &GreedyForm, spans: &[Span]) -> Result<Self> {
        let n = gf.perm.n();
        if spans.is_empty() {
            return Err(domain("decomposition needs at least one piece"));
        }
        let mut expect = 1;
        for s in spans {
            if s.start != expect {
                return Err(domain(format!("pieces do not tile 1..={n} at position {expect}")));
            }
            expect = s.end + 1;
        }
        if expect != n + 1 {
            return Err(domain(format!("pieces do not tile 1..={n}")));
        }

        let chunks = gf.chunks();
        let k = chunks.len();
        let last = spans.len() - 1;
        let mut next = 0;
        let mut pieces = Vec::with_capacity(spans.len());
        for (idx, &span) in spans.iter().enumerate() {
            if !chunks.iter().any(|c| c.overlaps(&span)) {
                pieces.push(Piece { span, kind: PieceKind::Gap });
                continue;
            }
            let Some(c) = chunks.get(next) else {
                return Err(domain(format!("piece {span:?} meets a chunk after all chunks were used")));
            };
            if !c.precedes(&span) {
                return Err(domain(format!("piece {span:?} does not extend chunk c_{} = {c:?}", next + 1)));
            }
            let absorbs_later = chunks.get(next + 1).is_some_and(|c2| span.end >= c2.start);
            if absorbs_later && idx != last {
                return Err(domain(format!(
                    "piece {span:?} absorbs chunk c_{} but is not the final piece",
                    next + 2
                )));
            }
            next += 1;
            pieces.push(Piece { span, kind: PieceKind::Chunk(next) });
        }
        if next < k && !matches!(pieces[last].kind, PieceKind::Chunk(_)) {
            return Err(domain("fewer chunk pieces than chunks, but the tail is not absorbed"));
        }
        Ok(Self { perm: gf.perm.clone(), pieces, chunk_count: next })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `k'`, the number of chunk pieces.
    pub fn chunk_pieces(&self) -> usize {
        self.chunk_count
    }

    /// `m`, the number of gap pieces.
    pub fn gap_pieces(&self) -> usize {
        self.pieces.len() - self.chunk_count
    }

    pub fn spans(&self) -> impl Iterator<Item = Span> + '_ {
        self.pieces.iter().map(|p| p.span)
    }
}

impl Serialize for PieceDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pieces.serialize(s)
    }
}

/// Every chunk-preserving decomposition of `gf` into exactly `pieces` pieces,
/// ordered lexicographically by piece end positions.
pub fn enumerate_chunk_preserving(gf: &GreedyForm, pieces: usize) -> Vec<PieceDecomposition> {
    let n = gf.perm.n();
    if pieces == 0 || pieces > n {
        return Vec::new();
    }
    (1..n)
        .combinations(pieces - 1)
        .filter_map(|cuts| {
            let spans: Vec<Span> = std::iter::once(0)
                .chain(cuts.iter().copied())
                .zip(cuts.iter().copied().chain(std::iter::once(n)))
                .map(|(a, b)| Span { start: a + 1, end: b })
                .collect();
            PieceDecomposition::new(gf, &spans).ok()
        })
        .collect()
}

/// A permutation `τ` of the pieces of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rearrangement(pub Permutation);

impl Rearrangement {
    pub fn identity(pieces: usize) -> Self {
        Self(Permutation::identity(pieces))
    }

    /// All non-identity rearrangements of `pieces` pieces, in dictionary order.
    pub fn non_identity(pieces: usize) -> impl Iterator<Item = Rearrangement> {
        Permutation::all(pieces).skip(1).map(Rearrangement)
    }

    pub fn degree(&self) -> usize {
        self.0.n()
    }
}

/// `τ(σ)`: the word `w_τ(1) ··· w_τ(p)` read back as a permutation.
pub fn apply_rearrangement(d: &PieceDecomposition, tau: &Rearrangement) -> Result<Permutation> {
    if tau.degree() != d.len() {
        return Err(domain(format!(
            "rearrangement of degree {} applied to {} pieces",
            tau.degree(),
            d.len()
        )));
    }
    Ok(rearrange(&d.perm, &d.pieces, &tau.0))
}

pub(crate) fn rearrange<P: HasSpan>(perm: &Permutation, pieces: &[P], tau: &Permutation) -> Permutation {
    Permutation::from_image_unchecked(rearranged_values(perm, pieces, tau))
}

/// Values of `perm` read off the pieces in the order given by `tau`.
pub(crate) fn rearranged_values<P: HasSpan>(perm: &Permutation, pieces: &[P], tau: &Permutation) -> Vec<usize> {
    tau.image()
        .iter()
        .flat_map(|&t| pieces[t - 1].span().positions().map(|pos| perm.at(pos)))
        .collect()
}

pub(crate) trait HasSpan {
    fn span(&self) -> Span;
}

impl HasSpan for Piece {
    fn span(&self) -> Span {
        self.span
    }
}

impl HasSpan for Span {
    fn span(&self) -> Span {
        *self
    }
}

/// The first non-identity rearrangement that fails to increase `|σ|`, with its result.
pub fn growth_counterexample(d: &PieceDecomposition) -> Result<Option<(Rearrangement, Permutation)>> {
    if d.len() < 2 {
        return Err(Error::Precondition(format!("need at least 2 pieces, got {}", d.len())));
    }
    let n = d.perm.n();
    let gf = left_greedy_form(&d.perm);
    if gf.k() == 1 && gf.chunks()[0] == (Span { start: 1, end: n }) {
        return Err(Error::Precondition(format!("{:?} is a single chunk", d.perm)));
    }
    let base = d.perm.word_length();
    for tau in Rearrangement::non_identity(d.len()) {
        let moved = rearrange(&d.perm, &d.pieces, &tau.0);
        if moved.word_length() <= base {
            return Ok(Some((tau, moved)));
        }
    }
    Ok(None)
}

/// `true` iff every non-identity rearrangement strictly increases `|σ|`.
/// A `false` is a counterexample to the growth property and should be reported.
pub fn check_growth(d: &PieceDecomposition) -> Result<bool> {
    Ok(growth_counterexample(d)?.is_none())
}
