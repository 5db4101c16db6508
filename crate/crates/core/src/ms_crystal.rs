//! Multisegment model of the crystal `B(∞)` in finite type `A_n`.
//!
//! A segment is an interval `[a,b]` with `1 ≤ a ≤ b ≤ n`; a
//! multisegment is a finite multiset of segments, with the empty
//! multiset playing the role of the highest-weight element `1`.
//!
//! Crystal operators are computed by a bracketing rule. For `f̃_i`/`ẽ_i`
//! every segment `[i+1,b]` contributes a `+`, every segment `[i,b]`
//! contributes a `-`; symbols are listed by end descending with `-`
//! before `+` at equal end, adjacent `+-` pairs cancel, and the
//! operators act on the leftmost surviving `+` (resp. rightmost
//! surviving `-`). The starred rule mirrors this through segment
//! starts. The rule reproduces the single-segment operator table for
//! every rank and the rank-2 closed forms exhaustively (see the tests
//! and the acceptance suite).

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors from multisegment crystal operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrystalError {
    #[error("index {i} out of range [1,{n}]")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("segment [{a},{b}] violates 1 <= a <= b <= {n}")]
    BadSegment { a: usize, b: usize, n: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank must be >= 1")]
    ZeroRank,
    #[error("saito reflection requires eps_{i}(m) = 0, got {eps}")]
    SaitoPrecondition { i: usize, eps: u64 },
    #[error("crystal operator {op} returned null mid-composition at index {i}")]
    UnexpectedNull { op: &'static str, i: usize },
    #[error("negative operator power {power} at index {i}")]
    NegativePower { power: i64, i: usize },
    #[error("removing absent segment [{a},{b}]")]
    AbsentSegment { a: usize, b: usize },
}

/// An interval `[a,b]` with `1 ≤ a ≤ b`. Ordered by `(end, start)` so
/// that reverse iteration yields the canonical order (end descending,
/// then start descending).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    start: usize,
    end: usize,
}

impl Segment {
    /// Build `[start, end]`, checking `1 ≤ start ≤ end ≤ rank`.
    pub fn new(start: usize, end: usize, rank: usize) -> Result<Self, CrystalError> {
        if start < 1 || start > end || end > rank {
            return Err(CrystalError::BadSegment { a: start, b: end, n: rank });
        }
        Ok(Segment { start, end })
    }

    /// The singleton `[i] = [i,i]`.
    pub fn point(i: usize, rank: usize) -> Result<Self, CrystalError> {
        Segment::new(i, i, rank)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    fn unchecked(start: usize, end: usize) -> Self {
        Segment { start, end }
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.end, self.start).cmp(&(other.end, other.start))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "[{}]", self.start)
        } else {
            write!(f, "[{},{}]", self.start, self.end)
        }
    }
}

/// A finite multiset of segments of a common rank. The empty multiset
/// is the highest-weight element `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "MsJson", into = "MsJson")]
pub struct Multisegment {
    rank: usize,
    segs: BTreeMap<Segment, u64>,
}

#[derive(Serialize, Deserialize)]
struct MsJson {
    rank: usize,
    segments: Vec<[usize; 2]>,
}

impl From<Multisegment> for MsJson {
    fn from(m: Multisegment) -> MsJson {
        let mut segments = Vec::new();
        for (seg, &mult) in m.segs.iter().rev() {
            for _ in 0..mult {
                segments.push([seg.start, seg.end]);
            }
        }
        MsJson { rank: m.rank, segments }
    }
}

impl TryFrom<MsJson> for Multisegment {
    type Error = CrystalError;
    fn try_from(j: MsJson) -> Result<Self, CrystalError> {
        let mut m = Multisegment::one(j.rank)?;
        for [a, b] in j.segments {
            m.add(Segment::new(a, b, j.rank)?, 1);
        }
        Ok(m)
    }
}

impl Multisegment {
    /// The highest-weight element `1` (empty multiset).
    pub fn one(rank: usize) -> Result<Self, CrystalError> {
        if rank == 0 {
            return Err(CrystalError::ZeroRank);
        }
        Ok(Multisegment { rank, segs: BTreeMap::new() })
    }

    /// Build from `(start, end, multiplicity)` triples.
    pub fn from_triples(
        rank: usize,
        triples: &[(usize, usize, u64)],
    ) -> Result<Self, CrystalError> {
        let mut m = Multisegment::one(rank)?;
        for &(a, b, c) in triples {
            m.add(Segment::new(a, b, rank)?, c);
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_one(&self) -> bool {
        self.segs.is_empty()
    }

    /// Total number of segments counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.segs.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn multiplicity(&self, seg: &Segment) -> u64 {
        self.segs.get(seg).copied().unwrap_or(0)
    }

    /// Segments with multiplicities in canonical order (end descending,
    /// then start descending).
    pub fn iter(&self) -> impl Iterator<Item = (Segment, u64)> + '_ {
        self.segs.iter().rev().map(|(s, &c)| (*s, c))
    }

    pub fn add(&mut self, seg: Segment, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.segs.entry(seg).or_insert(0) += mult;
    }

    pub fn remove(&mut self, seg: Segment, mult: u64) -> Result<(), CrystalError> {
        let cur = self.segs.get_mut(&seg).ok_or(CrystalError::AbsentSegment {
            a: seg.start,
            b: seg.end,
        })?;
        if *cur < mult {
            return Err(CrystalError::AbsentSegment { a: seg.start, b: seg.end });
        }
        *cur -= mult;
        if *cur == 0 {
            self.segs.remove(&seg);
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<(), CrystalError> {
        if i < 1 || i > self.rank {
            return Err(CrystalError::IndexOutOfRange { i, n: self.rank });
        }
        Ok(())
    }

    /// Cartan pairing `⟨h_i, wt(m)⟩` with `wt(m) = -Σ α_{a..b}`.
    pub fn wt_i(&self, i: usize) -> Result<i64, CrystalError> {
        self.check_index(i)?;
        let within = |j: usize, s: &Segment| -> i64 {
            i64::from(j >= 1 && s.start <= j && j <= s.end)
        };
        let mut total = 0i64;
        for (&seg, &c) in &self.segs {
            let pair = 2 * within(i, &seg) - within(i.wrapping_sub(1), &seg) - within(i + 1, &seg);
            total -= pair * c as i64;
        }
        Ok(total)
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (seg, mult) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mult != 1 {
                write!(f, "{}", mult)?;
            }
            write!(f, "{}", seg)?;
        }
        Ok(())
    }
}

/// The four crystal operators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OpKind {
    F,
    E,
    FStar,
    EStar,
}

impl OpKind {
    pub fn is_starred(self) -> bool {
        matches!(self, OpKind::FStar | OpKind::EStar)
    }

    pub fn is_lowering(self) -> bool {
        matches!(self, OpKind::F | OpKind::FStar)
    }
}

/// Crystal statistics at one index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Stats {
    pub eps: u64,
    pub eps_star: u64,
    pub phi: i64,
    pub phi_star: i64,
    pub wt_i: i64,
}

/// Outcome of the bracketing walk: surviving symbols after cancelling
/// adjacent `+-` pairs. Each entry carries the segment it came from.
struct Bracketing {
    surviving_plus: Vec<(Segment, u64)>,
    surviving_minus: Vec<(Segment, u64)>,
}

impl Bracketing {
    fn eps(&self) -> u64 {
        self.surviving_minus.iter().map(|&(_, c)| c).sum()
    }

    fn leftmost_plus(&self) -> Option<Segment> {
        self.surviving_plus.first().map(|&(s, _)| s)
    }

    fn rightmost_minus(&self) -> Option<Segment> {
        self.surviving_minus.last().map(|&(s, _)| s)
    }
}

/// Run the cancellation walk over symbol groups given in bracket order.
/// `symbols` yields `(is_minus, segment, multiplicity)`.
fn cancel(symbols: impl Iterator<Item = (bool, Segment, u64)>) -> Bracketing {
    let mut plus: Vec<(Segment, u64)> = Vec::new();
    let mut minus: Vec<(Segment, u64)> = Vec::new();
    for (is_minus, seg, count) in symbols {
        if count == 0 {
            continue;
        }
        if !is_minus {
            plus.push((seg, count));
        } else {
            let mut c = count;
            while c > 0 {
                match plus.last_mut() {
                    Some(top) => {
                        let t = top.1.min(c);
                        top.1 -= t;
                        c -= t;
                        if top.1 == 0 {
                            plus.pop();
                        }
                    }
                    None => break,
                }
            }
            if c > 0 {
                minus.push((seg, c));
            }
        }
    }
    Bracketing { surviving_plus: plus, surviving_minus: minus }
}

impl Multisegment {
    /// Bracketing for the unstarred operators at index `i`: `-` from
    /// `[i,b]`, `+` from `[i+1,b]`, listed by end descending, `-` first
    /// at equal end.
    fn bracket(&self, i: usize) -> Bracketing {
        let n = self.rank;
        let mut symbols = Vec::new();
        for b in (i..=n).rev() {
            symbols.push((true, Segment::unchecked(i, b), self.multiplicity(&Segment::unchecked(i, b))));
            if b >= i + 1 {
                symbols.push((
                    false,
                    Segment::unchecked(i + 1, b),
                    self.multiplicity(&Segment::unchecked(i + 1, b)),
                ));
            }
        }
        cancel(symbols.into_iter())
    }

    /// Bracketing for the starred operators at index `i`: `-` from
    /// `[a,i]`, `+` from `[a,i-1]`, listed by start ascending, `-` first
    /// at equal start.
    fn bracket_star(&self, i: usize) -> Bracketing {
        let mut symbols = Vec::new();
        for a in 1..=i {
            symbols.push((true, Segment::unchecked(a, i), self.multiplicity(&Segment::unchecked(a, i))));
            if a <= i.saturating_sub(1) {
                symbols.push((
                    false,
                    Segment::unchecked(a, i - 1),
                    self.multiplicity(&Segment::unchecked(a, i - 1)),
                ));
            }
        }
        cancel(symbols.into_iter())
    }

    /// All crystal statistics at index `i`.
    pub fn stats(&self, i: usize) -> Result<Stats, CrystalError> {
        self.check_index(i)?;
        let wt_i = self.wt_i(i)?;
        let eps = self.bracket(i).eps();
        let eps_star = self.bracket_star(i).eps();
        Ok(Stats {
            eps,
            eps_star,
            phi: eps as i64 + wt_i,
            phi_star: eps_star as i64 + wt_i,
            wt_i,
        })
    }

    pub fn eps(&self, i: usize) -> Result<u64, CrystalError> {
        self.check_index(i)?;
        Ok(self.bracket(i).eps())
    }

    pub fn eps_star(&self, i: usize) -> Result<u64, CrystalError> {
        self.check_index(i)?;
        Ok(self.bracket_star(i).eps())
    }

    /// Apply one crystal operator. `None` encodes the operator value 0;
    /// the lowering operators `f̃_i`, `f̃*_i` never return `None`.
    pub fn apply(&self, kind: OpKind, i: usize) -> Result<Option<Multisegment>, CrystalError> {
        self.check_index(i)?;
        let mut out = self.clone();
        match kind {
            OpKind::F => {
                match self.bracket(i).leftmost_plus() {
                    Some(seg) => {
                        // [i+1,b] -> [i,b]
                        out.remove(seg, 1)?;
                        out.add(Segment::unchecked(i, seg.end), 1);
                    }
                    None => out.add(Segment::unchecked(i, i), 1),
                }
                Ok(Some(out))
            }
            OpKind::E => match self.bracket(i).rightmost_minus() {
                Some(seg) => {
                    out.remove(seg, 1)?;
                    if seg.end > i {
                        // [i,b] -> [i+1,b]
                        out.add(Segment::unchecked(i + 1, seg.end), 1);
                    }
                    Ok(Some(out))
                }
                None => Ok(None),
            },
            OpKind::FStar => {
                match self.bracket_star(i).leftmost_plus() {
                    Some(seg) => {
                        // [a,i-1] -> [a,i]
                        out.remove(seg, 1)?;
                        out.add(Segment::unchecked(seg.start, i), 1);
                    }
                    None => out.add(Segment::unchecked(i, i), 1),
                }
                Ok(Some(out))
            }
            OpKind::EStar => match self.bracket_star(i).rightmost_minus() {
                Some(seg) => {
                    out.remove(seg, 1)?;
                    if seg.start < i {
                        // [a,i] -> [a,i-1]
                        out.add(Segment::unchecked(seg.start, i - 1), 1);
                    }
                    Ok(Some(out))
                }
                None => Ok(None),
            },
        }
    }

    fn apply_power(
        &self,
        kind: OpKind,
        i: usize,
        power: u64,
        op_name: &'static str,
    ) -> Result<Multisegment, CrystalError> {
        let mut cur = self.clone();
        for _ in 0..power {
            cur = cur
                .apply(kind, i)?
                .ok_or(CrystalError::UnexpectedNull { op: op_name, i })?;
        }
        Ok(cur)
    }

    /// Saito reflection `S_i(m) = f̃_i^{φ*_i(m)} (ẽ*_i)^{ε*_i(m)}(m)`,
    /// defined on `{ε_i = 0}`.
    pub fn saito(&self, i: usize) -> Result<Multisegment, CrystalError> {
        let st = self.stats(i)?;
        if st.eps != 0 {
            return Err(CrystalError::SaitoPrecondition { i, eps: st.eps });
        }
        if st.phi_star < 0 {
            return Err(CrystalError::NegativePower { power: st.phi_star, i });
        }
        let mid = self.apply_power(OpKind::EStar, i, st.eps_star, "e*")?;
        mid.apply_power(OpKind::F, i, st.phi_star as u64, "f")
    }

    /// `S*_i(m) = (f̃*_i)^{φ_i(m)} ẽ_i^{ε_i(m)}(m)` on `{ε*_i = 0}`;
    /// inverse of [`Multisegment::saito`].
    pub fn saito_star(&self, i: usize) -> Result<Multisegment, CrystalError> {
        let st = self.stats(i)?;
        if st.eps_star != 0 {
            return Err(CrystalError::SaitoPrecondition { i, eps: st.eps_star });
        }
        if st.phi < 0 {
            return Err(CrystalError::NegativePower { power: st.phi, i });
        }
        let mid = self.apply_power(OpKind::E, i, st.eps, "e")?;
        mid.apply_power(OpKind::FStar, i, st.phi as u64, "f*")
    }

    /// `S̃_i(m) = S_i(ẽ_i^{ε_i(m)}(m))`, defined on all of `B(∞)`.
    pub fn tilde_saito(&self, i: usize) -> Result<Multisegment, CrystalError> {
        let eps = self.eps(i)?;
        let raised = self.apply_power(OpKind::E, i, eps, "e")?;
        raised.saito(i)
    }
}
