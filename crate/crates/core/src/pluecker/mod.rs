//! Exact arithmetic in the quotient Grassmannian algebra: sign
//! normalized Plücker variables over ℤ-indexed columns, with the
//! frozen quotient (every variable on `m` consecutive columns is 1)
//! applied eagerly.
//!
//! Equality in the quotient is tested by evaluation on random
//! normalized configurations ([`eq_mod`]); a `false` answer is
//! definitive, a `true` answer has one-sided Schwartz-Zippel error
//! `deg/|field|` per trial.

mod config;
mod field;

pub use config::{eq_mod, eq_mod_witness, Config, EqOpts, EqWitness, P61};
pub use field::{FieldCtx, Fp, Rationals};

pub(crate) use field::det_columns;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors from Plücker arithmetic and evaluation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlueckerError {
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("index tuple {0:?} is not strictly increasing")]
    NotIncreasing(Vec<i64>),
    #[error("minor width must be >= 2, got {0}")]
    WidthTooSmall(usize),
    #[error("column {idx} outside configuration range [{lo},{hi}]")]
    OutOfRange { idx: i64, lo: i64, hi: i64 },
    #[error("configuration range [{lo},{hi}] shorter than width {m}")]
    RangeTooShort { lo: i64, hi: i64, m: usize },
    #[error("could not sample a nondegenerate column after {0} retries")]
    DegenerateSampling(usize),
    #[error("invalid coefficient literal {0:?}")]
    BadCoefficient(String),
    #[error("braid index {i} out of range [1,{max}]")]
    BraidIndexOutOfRange { i: usize, max: usize },
    #[error("window straddles configuration boundary at column {0}")]
    WindowStraddle(i64),
    #[error("zero denominator minor at column {0}")]
    ZeroDenominator(i64),
}

/// A strictly increasing tuple of `m ≥ 2` column indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MinorIndex {
    entries: Vec<i64>,
}

impl MinorIndex {
    pub fn new(entries: Vec<i64>) -> Result<Self, PlueckerError> {
        if entries.len() < 2 {
            return Err(PlueckerError::WidthTooSmall(entries.len()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PlueckerError::NotIncreasing(entries));
        }
        Ok(MinorIndex { entries })
    }

    pub fn width(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn min(&self) -> i64 {
        self.entries[0]
    }

    pub fn max(&self) -> i64 {
        *self.entries.last().expect("width >= 2")
    }

    /// Translate every entry by `t`.
    pub fn shifted(&self, t: i64) -> Self {
        MinorIndex { entries: self.entries.iter().map(|&x| x + t).collect() }
    }

    /// A run of consecutive integers, i.e. a frozen variable.
    pub fn is_frozen(&self) -> bool {
        self.entries.windows(2).all(|w| w[1] == w[0] + 1)
    }
}

impl fmt::Display for MinorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{{")?;
        for (t, x) in self.entries.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, "}}")
    }
}

/// Result of sorting a raw index tuple into canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Normalized {
    /// A repeated entry: the zero variable.
    Zero,
    /// Sorted tuple together with the permutation parity.
    NonZero { sign: i8, index: MinorIndex },
}

/// Sort `raw` into a canonical [`MinorIndex`], tracking permutation
/// parity; a repeated entry yields [`Normalized::Zero`].
pub fn normalize(raw: &[i64]) -> Result<Normalized, PlueckerError> {
    if raw.len() < 2 {
        return Err(PlueckerError::WidthTooSmall(raw.len()));
    }
    let mut v = raw.to_vec();
    // counting inversions; widths are tiny so O(m^2) is fine
    let mut swaps = 0usize;
    for a in 0..v.len() {
        for b in (a + 1)..v.len() {
            match v[a].cmp(&v[b]) {
                std::cmp::Ordering::Greater => swaps += 1,
                std::cmp::Ordering::Equal => return Ok(Normalized::Zero),
                std::cmp::Ordering::Less => {}
            }
        }
    }
    v.sort_unstable();
    Ok(Normalized::NonZero {
        sign: if swaps % 2 == 0 { 1 } else { -1 },
        index: MinorIndex { entries: v },
    })
}

/// A product of canonical nonfrozen minor indices, sorted.
pub type Monomial = Vec<MinorIndex>;

/// Exact sparse polynomial in sign-normalized Plücker variables with
/// the frozen quotient applied: frozen factors are dropped at
/// construction, zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct PlueckerPoly {
    width: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PlueckerPoly {
    pub fn zero(width: usize) -> Self {
        PlueckerPoly { width, terms: BTreeMap::new() }
    }

    pub fn one(width: usize) -> Self {
        PlueckerPoly::constant(width, BigInt::one())
    }

    pub fn constant(width: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        PlueckerPoly { width, terms }
    }

    /// The variable `P_idx`; frozen indices collapse to 1.
    pub fn var(idx: MinorIndex) -> Self {
        let width = idx.width();
        if idx.is_frozen() {
            return PlueckerPoly::one(width);
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![idx], BigInt::one());
        PlueckerPoly { width, terms }
    }

    /// Signed variable from a raw (unsorted) tuple; `Zero` gives 0.
    pub fn var_from_raw(raw: &[i64]) -> Result<Self, PlueckerError> {
        match normalize(raw)? {
            Normalized::Zero => Ok(PlueckerPoly::zero(raw.len())),
            Normalized::NonZero { sign, index } => {
                let mut p = PlueckerPoly::var(index);
                if sign < 0 {
                    p = p.neg();
                }
                Ok(p)
            }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Vec::new())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Constant (empty-monomial) coefficient.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Smallest and largest column index appearing, if any variable does.
    pub fn index_hull(&self) -> Option<(i64, i64)> {
        let mut hull: Option<(i64, i64)> = None;
        for mono in self.terms.keys() {
            for idx in mono {
                let (lo, hi) = hull.unwrap_or((idx.min(), idx.max()));
                hull = Some((lo.min(idx.min()), hi.max(idx.max())));
            }
        }
        hull
    }

    fn check_width(&self, other: &Self) -> Result<(), PlueckerError> {
        if self.width != other.width {
            return Err(PlueckerError::WidthMismatch(self.width, other.width));
        }
        Ok(())
    }

    /// Insert `coeff * mono`, dropping frozen factors and keeping the
    /// monomial sorted.
    pub fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let mut key: Monomial = mono.into_iter().filter(|idx| !idx.is_frozen()).collect();
        key.sort_unstable();
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PlueckerError> {
        self.check_width(other)?;
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(mono.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PlueckerError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PlueckerPoly {
            width: self.width,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return PlueckerPoly::zero(self.width);
        }
        PlueckerPoly {
            width: self.width,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PlueckerError> {
        self.check_width(other)?;
        let mut out = PlueckerPoly::zero(self.width);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut mono = ma.clone();
                mono.extend(mb.iter().cloned());
                out.add_term(mono, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self, PlueckerError> {
        let mut out = PlueckerPoly::one(self.width);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The shift automorphism `sh_t`: every index translated by `t`.
    pub fn sh(&self, t: i64) -> Self {
        PlueckerPoly {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().map(|idx| idx.shifted(t)).collect(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for PlueckerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{}", abs)?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}", abs)?;
            }
            let mut t = 0;
            while t < mono.len() {
                let mut e = 1;
                while t + e < mono.len() && mono[t + e] == mono[t] {
                    e += 1;
                }
                write!(f, "{}", mono[t])?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                t += e;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    vars: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    m: usize,
    terms: Vec<TermJson>,
}

impl From<PlueckerPoly> for PolyJson {
    fn from(p: PlueckerPoly) -> PolyJson {
        let terms = p
            .terms
            .iter()
            .map(|(mono, coeff)| TermJson {
                coeff: coeff.to_string(),
                vars: mono.iter().map(|idx| idx.entries.clone()).collect(),
            })
            .collect();
        PolyJson { m: p.width, terms }
    }
}

impl TryFrom<PolyJson> for PlueckerPoly {
    type Error = PlueckerError;
    fn try_from(j: PolyJson) -> Result<Self, PlueckerError> {
        let mut p = PlueckerPoly::zero(j.m);
        for term in j.terms {
            let coeff: BigInt = term
                .coeff
                .parse()
                .map_err(|_| PlueckerError::BadCoefficient(term.coeff.clone()))?;
            let mut mono = Vec::with_capacity(term.vars.len());
            for v in term.vars {
                if v.len() != j.m {
                    return Err(PlueckerError::WidthMismatch(v.len(), j.m));
                }
                mono.push(MinorIndex::new(v)?);
            }
            p.add_term(mono, coeff);
        }
        Ok(p)
    }
}

/// The Plücker relation generator attached to `i ∈ C^{m-1}` and
/// `j ∈ C^{m+1}`:
/// `Σ_{t=1}^{m+1} (-1)^t P_{i_1..i_{m-1}, j_t} · P_{j_1..ĵ_t..j_{m+1}}`.
/// Evaluates to 0 on every configuration.
pub fn plucker_generator(i: &[i64], j: &[i64]) -> Result<PlueckerPoly, PlueckerError> {
    let m = i.len() + 1;
    if j.len() != m + 1 {
        return Err(PlueckerError::WidthMismatch(j.len(), m + 1));
    }
    if i.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PlueckerError::NotIncreasing(i.to_vec()));
    }
    if j.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PlueckerError::NotIncreasing(j.to_vec()));
    }
    let mut out = PlueckerPoly::zero(m);
    for t in 1..=(m + 1) {
        let mut first = i.to_vec();
        first.push(j[t - 1]);
        let mut second = j.to_vec();
        second.remove(t - 1);
        let sign = if t % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let a = PlueckerPoly::var_from_raw(&first)?;
        let b = PlueckerPoly::var_from_raw(&second)?;
        out = out.add(&a.mul(&b)?.scale(&sign))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn idx(v: &[i64]) -> MinorIndex {
        MinorIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        match normalize(&[2, 1, 4, 5]).unwrap() {
            Normalized::NonZero { sign, index } => {
                assert_eq!(sign, -1);
                assert_eq!(index, idx(&[1, 2, 4, 5]));
            }
            Normalized::Zero => panic!("unexpected zero"),
        }
        assert_eq!(normalize(&[1, 3, 3]).unwrap(), Normalized::Zero);
        match normalize(&[3, 6, 5, 7]).unwrap() {
            Normalized::NonZero { sign, index } => {
                assert_eq!(sign, -1);
                assert_eq!(index, idx(&[3, 5, 6, 7]));
            }
            Normalized::Zero => panic!("unexpected zero"),
        }
    }

    #[test]
    fn frozen_collapses() {
        assert!(PlueckerPoly::var(idx(&[1, 2, 3])).is_one());
        let p = PlueckerPoly::var(idx(&[1, 3, 4]));
        // P_{1,2,3} * P_{1,3,4} = P_{1,3,4}
        let q = PlueckerPoly::var(idx(&[1, 2, 3])).mul(&p).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn cancellation() {
        let p = PlueckerPoly::var(idx(&[1, 3, 4]));
        assert!(p.sub(&p).unwrap().is_zero());
    }

    #[test]
    fn unit_law() {
        let p = PlueckerPoly::var(idx(&[1, 3, 5])).add(&PlueckerPoly::one(3)).unwrap();
        assert_eq!(p.mul(&PlueckerPoly::one(3)).unwrap(), p);
    }

    #[test]
    fn width_mismatch_rejected() {
        let p = PlueckerPoly::var(idx(&[1, 3, 4]));
        let q = PlueckerPoly::var(idx(&[1, 3, 4, 6]));
        assert!(p.mul(&q).is_err());
        assert!(p.add(&q).is_err());
    }

    #[test]
    fn sh_is_translation() {
        let p = PlueckerPoly::var(idx(&[1, 3, 4]));
        assert_eq!(p.sh(3), PlueckerPoly::var(idx(&[4, 6, 7])));
        assert_eq!(p.sh(0), p);
        let q = p.add(&PlueckerPoly::var(idx(&[2, 4, 5])).neg()).unwrap();
        assert_eq!(q.sh(5).sh(-5), q);
    }

    #[test]
    fn display_notation() {
        let p = PlueckerPoly::var(idx(&[1, 3, 4]))
            .mul(&PlueckerPoly::var(idx(&[2, 4, 5])))
            .unwrap()
            .sub(&PlueckerPoly::one(3))
            .unwrap();
        assert_eq!(p.to_string(), "-1 + P_{1,3,4}P_{2,4,5}");
    }

    #[test]
    fn json_round_trip() {
        let p = PlueckerPoly::var(idx(&[1, 3, 4]))
            .mul(&PlueckerPoly::var(idx(&[2, 4, 5])))
            .unwrap()
            .scale(&BigInt::from(-7))
            .add(&PlueckerPoly::one(3))
            .unwrap();
        let js = serde_json::to_string(&p).unwrap();
        let back: PlueckerPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        // frozen variables in input are cleaned away
        let cleaned: PlueckerPoly =
            serde_json::from_str(r#"{"m":3,"terms":[{"coeff":"2","vars":[[4,5,6]]}]}"#).unwrap();
        assert_eq!(cleaned, PlueckerPoly::constant(3, BigInt::from(2)));
    }

    #[test]
    fn generator_zero_when_degenerate() {
        // every term has a repeated entry
        let g = plucker_generator(&[1, 2], &[1, 2, 3, 4]).unwrap();
        // terms: P_{1,2,jt} P_{rest}: t=1: P_{1,2,1} = 0; t=2: P_{1,2,2} = 0;
        // t=3: P_{1,2,3} frozen = 1 times P_{1,2,4}; t=4: P_{1,2,4}*P_{1,2,3}
        // so the t=3 and t=4 terms cancel: (-1)^3 and (-1)^4 with same value
        assert!(g.is_zero());
    }

    proptest! {
        /// Permuting the input multiplies the sign by the permutation parity.
        #[test]
        fn normalize_parity(mut v in proptest::collection::vec(-20i64..20, 3..6)) {
            let a = 0;
            let b = v.len() - 1;
            prop_assume!(v[a] != v[b]);
            let base = normalize(&v).unwrap();
            // swapping two distinct values flips the sign unless Zero
            v.swap(a, b);
            let swapped = normalize(&v).unwrap();
            match (base, swapped) {
                (Normalized::Zero, Normalized::Zero) => {}
                (
                    Normalized::NonZero { sign: s1, index: i1 },
                    Normalized::NonZero { sign: s2, index: i2 },
                ) => {
                    prop_assert_eq!(i1, i2);
                    prop_assert_eq!(s1, -s2);
                }
                _ => prop_assert!(false, "zero-ness must agree"),
            }
        }

        /// Ring laws on small random polynomials.
        #[test]
        fn ring_laws(
            seeds in proptest::collection::vec((1i64..9, 1i64..9, 1i64..9, -4i64..5), 1..4),
        ) {
            let mk = |s: &[(i64, i64, i64, i64)]| {
                let mut p = PlueckerPoly::zero(3);
                for &(a, b, c, k) in s {
                    let raw = [a, a + b, a + b + c];
                    let v = PlueckerPoly::var_from_raw(&raw).unwrap();
                    p = p.add(&v.scale(&BigInt::from(k))).unwrap();
                }
                p
            };
            let p = mk(&seeds);
            let q = mk(&seeds[..seeds.len() / 2]);
            prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
            prop_assert_eq!(
                p.add(&q).unwrap().sh(2),
                p.sh(2).add(&q.sh(2)).unwrap()
            );
            prop_assert_eq!(
                p.mul(&q).unwrap().sh(-3),
                p.sh(-3).mul(&q.sh(-3)).unwrap()
            );
        }
    }
}
