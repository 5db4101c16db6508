//! The extended crystal `B̂(∞)`: finitely supported ℤ-sequences of
//! multisegments, the graded operators `F_{(i,k)}` / `E_{(i,k)}`, and
//! the braid maps `R_i`.

use crate::ms_crystal::{CrystalError, Multisegment, OpKind, Segment};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A finitely supported map `ℤ -> B(∞)`; absent grades hold the
/// highest-weight element. Stored entries are never empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "ExtJson", into = "ExtJson")]
pub struct ExtElement {
    rank: usize,
    entries: BTreeMap<i64, Multisegment>,
}

#[derive(Serialize, Deserialize)]
struct ExtEntryJson {
    k: i64,
    segments: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct ExtJson {
    rank: usize,
    entries: Vec<ExtEntryJson>,
}

impl From<ExtElement> for ExtJson {
    fn from(b: ExtElement) -> ExtJson {
        let entries = b
            .entries
            .iter()
            .map(|(&k, m)| ExtEntryJson {
                k,
                segments: m
                    .iter()
                    .flat_map(|(s, c)| std::iter::repeat([s.start(), s.end()]).take(c as usize))
                    .collect(),
            })
            .collect();
        ExtJson { rank: b.rank, entries }
    }
}

impl TryFrom<ExtJson> for ExtElement {
    type Error = CrystalError;
    fn try_from(j: ExtJson) -> Result<Self, CrystalError> {
        let mut b = ExtElement::one(j.rank)?;
        for e in j.entries {
            let mut m = Multisegment::one(j.rank)?;
            for [x, y] in e.segments {
                m.add(Segment::new(x, y, j.rank)?, 1);
            }
            b.set(e.k, m)?;
        }
        Ok(b)
    }
}

impl ExtElement {
    /// The identity element `1` (every grade highest weight).
    pub fn one(rank: usize) -> Result<Self, CrystalError> {
        if rank == 0 {
            return Err(CrystalError::ZeroRank);
        }
        Ok(ExtElement { rank, entries: BTreeMap::new() })
    }

    /// Place `m` at grade `k` (the embedding `ι_k`).
    pub fn embed(m: Multisegment, k: i64) -> Self {
        let mut b = ExtElement { rank: m.rank(), entries: BTreeMap::new() };
        if !m.is_one() {
            b.entries.insert(k, m);
        }
        b
    }

    /// Single segment `[a,b]_k`.
    pub fn segment_at(a: usize, bb: usize, k: i64, rank: usize) -> Result<Self, CrystalError> {
        let mut m = Multisegment::one(rank)?;
        m.add(Segment::new(a, bb, rank)?, 1);
        Ok(ExtElement::embed(m, k))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    /// The multisegment at grade `k` (highest weight if absent).
    pub fn entry(&self, k: i64) -> Multisegment {
        self.entries
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Multisegment::one(self.rank).expect("rank checked"))
    }

    /// Overwrite grade `k`, normalizing empty entries away.
    pub fn set(&mut self, k: i64, m: Multisegment) -> Result<(), CrystalError> {
        if m.rank() != self.rank {
            return Err(CrystalError::RankMismatch(m.rank(), self.rank));
        }
        if m.is_one() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, m);
        }
        Ok(())
    }

    /// Grades with nontrivial entries, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    /// Re-grade: the entry at `k` moves to `k + t`.
    pub fn grade_shift(&self, t: i64) -> Self {
        ExtElement {
            rank: self.rank,
            entries: self.entries.iter().map(|(&k, m)| (k + t, m.clone())).collect(),
        }
    }

    /// `ε̂_{(i,k)}(b) = ε_i(b_k) - ε*_i(b_{k+1})`.
    pub fn eps_hat(&self, i: usize, k: i64) -> Result<i64, CrystalError> {
        let a = self.entry(k).eps(i)?;
        let b = self.entry(k + 1).eps_star(i)?;
        Ok(a as i64 - b as i64)
    }

    /// Extended crystal operator `F_{(i,k)}`: lower grade `k` by `f̃_i`
    /// when `ε̂ ≥ 0`, otherwise raise grade `k+1` by `ẽ*_i`.
    pub fn f_op(&self, i: usize, k: i64) -> Result<ExtElement, CrystalError> {
        let mut out = self.clone();
        if self.eps_hat(i, k)? >= 0 {
            let m = self
                .entry(k)
                .apply(OpKind::F, i)?
                .ok_or(CrystalError::UnexpectedNull { op: "f", i })?;
            out.set(k, m)?;
        } else {
            let m = self
                .entry(k + 1)
                .apply(OpKind::EStar, i)?
                .ok_or(CrystalError::UnexpectedNull { op: "e*", i })?;
            out.set(k + 1, m)?;
        }
        Ok(out)
    }

    /// Matching raising move `E_{(i,k)}`: inverse of [`ExtElement::f_op`]
    /// on its image. Returns `None` when the operator value is 0.
    pub fn e_op(&self, i: usize, k: i64) -> Result<Option<ExtElement>, CrystalError> {
        let mut out = self.clone();
        if self.eps_hat(i, k)? > 0 {
            match self.entry(k).apply(OpKind::E, i)? {
                Some(m) => {
                    out.set(k, m)?;
                    Ok(Some(out))
                }
                None => Ok(None),
            }
        } else {
            let m = self
                .entry(k + 1)
                .apply(OpKind::FStar, i)?
                .ok_or(CrystalError::UnexpectedNull { op: "f*", i })?;
            out.set(k + 1, m)?;
            Ok(Some(out))
        }
    }

    /// Braid map `R_i`: grade `k` receives
    /// `(f̃*_i)^{ε_i(b_{k-1})}(S̃_i(b_k))`.
    pub fn braid_r(&self, i: usize) -> Result<ExtElement, CrystalError> {
        let mut out = ExtElement::one(self.rank)?;
        let lo = match self.entries.keys().next() {
            Some(&k) => k,
            None => return Ok(out),
        };
        let hi = *self.entries.keys().next_back().expect("nonempty");
        for k in lo..=hi + 1 {
            let mut m = self.entry(k).tilde_saito(i)?;
            let power = self.entry(k - 1).eps(i)?;
            for _ in 0..power {
                m = m
                    .apply(OpKind::FStar, i)?
                    .ok_or(CrystalError::UnexpectedNull { op: "f*", i })?;
            }
            out.set(k, m)?;
        }
        Ok(out)
    }

    /// Apply `R` along a word, rightmost letter first (operator
    /// composition order).
    pub fn braid_r_word(&self, word: &[usize]) -> Result<ExtElement, CrystalError> {
        let mut cur = self.clone();
        for &i in word.iter().rev() {
            cur = cur.braid_r(i)?;
        }
        Ok(cur)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&k, m) in &self.entries {
            for (seg, mult) in m.iter() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if mult != 1 {
                    write!(f, "{}", mult)?;
                }
                write!(f, "{}_{{{}}}", seg, k)?;
            }
        }
        Ok(())
    }
}

/// Random element with support in `[-spread, spread]` and at most
/// `max_segments` segments in total.
pub fn random_ext_element<R: Rng>(
    rng: &mut R,
    rank: usize,
    spread: i64,
    max_segments: usize,
) -> ExtElement {
    let mut b = ExtElement::one(rank).expect("rank >= 1");
    let count = rng.gen_range(0..=max_segments);
    for _ in 0..count {
        let k = rng.gen_range(-spread..=spread);
        let a = rng.gen_range(1..=rank);
        let end = rng.gen_range(a..=rank);
        let mut m = b.entry(k);
        m.add(Segment::new(a, end, rank).expect("in range"), 1);
        b.set(k, m).expect("same rank");
    }
    b
}

/// Inverse query by search: find `x` in `candidates` with `R_i(x) = b`.
/// Utility only; the inverse braid map itself is not modelled.
pub fn braid_r_inverse_search<'a, I>(
    b: &ExtElement,
    i: usize,
    candidates: I,
) -> Result<Option<ExtElement>, CrystalError>
where
    I: IntoIterator<Item = &'a ExtElement>,
{
    for cand in candidates {
        if cand.braid_r(i)? == *b {
            return Ok(Some(cand.clone()));
        }
    }
    Ok(None)
}
