//! The Grothendieck-ring side at `t = 1`: the polynomial ring on
//! fundamental classes `Y_{i,a}`, the spectral shift and dual maps,
//! the braid maps `T_i`, and the rank-2 closed forms for the braid
//! action on simple classes.
//!
//! Index bookkeeping: `(i,a)` ranges over the parity-constrained set
//! `a - i ≡ 1 (mod 2)`; the dual map is `D(i,a) = (n+1-i, a+n+1)` and
//! every index is `D^k` of a unique base in the fundamental window
//! `i-1 ≤ a ≤ 2n-i-1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KRingError {
    #[error("index ({i},{a}) violates parity a - i = 1 mod 2")]
    Parity { i: usize, a: i64 },
    #[error("index {i} out of range [1,{n}]")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("operation requires rank 2, got {0}")]
    NotRankTwo(usize),
    #[error("invalid coefficient literal {0:?}")]
    BadCoefficient(String),
    #[error("exponent must be positive")]
    ZeroExponent,
}

/// Index `(i, a)` of a fundamental class `Y_{i,a}`, with
/// `a - i ≡ 1 (mod 2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FundIndex {
    pub i: usize,
    pub a: i64,
}

impl FundIndex {
    pub fn new(i: usize, a: i64, n: usize) -> Result<Self, KRingError> {
        if i < 1 || i > n {
            return Err(KRingError::IndexOutOfRange { i, n });
        }
        if (a - i as i64).rem_euclid(2) != 1 {
            return Err(KRingError::Parity { i, a });
        }
        Ok(FundIndex { i, a })
    }

    /// The dual map `D(i,a) = (n+1-i, a+n+1)`.
    pub fn dual(self, n: usize) -> Self {
        FundIndex { i: n + 1 - self.i, a: self.a + n as i64 + 1 }
    }

    pub fn dual_inv(self, n: usize) -> Self {
        FundIndex { i: n + 1 - self.i, a: self.a - n as i64 - 1 }
    }

    /// `D^k` for signed `k`.
    pub fn dual_pow(self, k: i64, n: usize) -> Self {
        let mut f = self;
        if k >= 0 {
            for _ in 0..k {
                f = f.dual(n);
            }
        } else {
            for _ in 0..(-k) {
                f = f.dual_inv(n);
            }
        }
        f
    }

    /// Membership in the fundamental window `i-1 ≤ a ≤ 2n-i-1`.
    pub fn in_q_window(self, n: usize) -> bool {
        self.a >= self.i as i64 - 1 && self.a <= 2 * n as i64 - self.i as i64 - 1
    }
}

impl fmt::Display for FundIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{{{},{}}}", self.i, self.a)
    }
}

/// Decompose `f = D^k(base)` with `base` in the fundamental window;
/// the decomposition is unique.
pub fn locate(f: FundIndex, n: usize) -> (i64, FundIndex) {
    let mut k = 0i64;
    let mut x = f;
    while !x.in_q_window(n) {
        if x.a > 2 * n as i64 - x.i as i64 - 1 {
            x = x.dual_inv(n);
            k += 1;
        } else {
            x = x.dual(n);
            k -= 1;
        }
    }
    (k, x)
}

/// Monomial in fundamental classes: positive exponents only.
pub type KMonomial = BTreeMap<FundIndex, u32>;

/// Polynomial in the fundamental classes `Y_{i,a}` with arbitrary
/// precision integer coefficients. Equality is exact (free polynomial
/// ring, no quotient).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "KPolyJson", into = "KPolyJson")]
pub struct KPoly {
    rank: usize,
    terms: BTreeMap<KMonomial, BigInt>,
}

impl KPoly {
    pub fn zero(rank: usize) -> Self {
        KPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        KPoly::constant(rank, BigInt::one())
    }

    pub fn constant(rank: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(KMonomial::new(), c);
        }
        KPoly { rank, terms }
    }

    pub fn var(f: FundIndex, rank: usize) -> Result<Self, KRingError> {
        FundIndex::new(f.i, f.a, rank)?;
        let mut mono = KMonomial::new();
        mono.insert(f, 1);
        let mut terms = BTreeMap::new();
        terms.insert(mono, BigInt::one());
        Ok(KPoly { rank, terms })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mono: KMonomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
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

    fn check_rank(&self, other: &Self) -> Result<(), KRingError> {
        if self.rank != other.rank {
            return Err(KRingError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, KRingError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, KRingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        KPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, KRingError> {
        self.check_rank(other)?;
        let mut out = KPoly::zero(self.rank);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut mono = ma.clone();
                for (f, e) in mb {
                    *mono.entry(*f).or_insert(0) += e;
                }
                out.add_term(mono, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self, KRingError> {
        let mut out = KPoly::one(self.rank);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Apply a variable substitution `Y_f -> image(f)` as a ring
    /// homomorphism.
    pub fn substitute<E>(
        &self,
        mut image: impl FnMut(FundIndex) -> Result<KPoly, E>,
    ) -> Result<KPoly, E>
    where
        E: From<KRingError>,
    {
        let mut out = KPoly::zero(self.rank);
        for (mono, coeff) in &self.terms {
            let mut term = KPoly::constant(self.rank, coeff.clone());
            for (&f, &e) in mono {
                let img = image(f)?;
                term = term.mul(&img.pow(e).map_err(E::from)?).map_err(E::from)?;
            }
            out = out.add(&term).map_err(E::from)?;
        }
        Ok(out)
    }

    /// Spectral shift `S_k: Y_{i,a} -> Y_{i,a+2k}` (ring automorphism).
    pub fn shift(&self, k: i64) -> Self {
        KPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mono: KMonomial = m
                        .iter()
                        .map(|(f, &e)| (FundIndex { i: f.i, a: f.a + 2 * k }, e))
                        .collect();
                    (mono, c.clone())
                })
                .collect(),
        }
    }

    /// Right dual on classes: `Y_{i,a} -> Y_{n+1-i, a+n+1}`.
    pub fn dual(&self) -> Self {
        let n = self.rank;
        KPoly {
            rank: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mono: KMonomial = m.iter().map(|(f, &e)| (f.dual(n), e)).collect();
                    (mono, c.clone())
                })
                .collect(),
        }
    }

    /// Braid map `T_1` on each variable, extended multiplicatively.
    pub fn braid_t1(&self) -> Result<Self, KRingError> {
        let n = self.rank;
        self.substitute(|f| {
            let (k, base) = locate(f, n);
            let at = |i: usize, a: i64| -> Result<KPoly, KRingError> {
                let g = FundIndex::new(i, a, n)?.dual_pow(k, n);
                KPoly::var(g, n)
            };
            let (i, p) = (base.i, base.a);
            if i == 1 && p == 0 {
                at(n, n as i64 + 1)
            } else if p == i as i64 - 1 && i > 1 {
                let head = at(n, n as i64 + 1)?.mul(&at(i, i as i64 - 1)?)?;
                head.sub(&at(i - 1, i as i64)?)
            } else if p == i as i64 + 1 {
                at(i + 1, i as i64)
            } else {
                at(i, p)
            }
        })
    }

    /// Braid map `T_i = S_{i-1} ∘ T_1 ∘ S_{1-i}`.
    pub fn braid_t(&self, i: usize) -> Result<Self, KRingError> {
        if i < 1 || i > self.rank {
            return Err(KRingError::IndexOutOfRange { i, n: self.rank });
        }
        let k = i as i64 - 1;
        Ok(self.shift(-k).braid_t1()?.shift(k))
    }

    /// Apply `T` along a word, rightmost letter first (operator
    /// composition order).
    pub fn braid_t_word(&self, word: &[usize]) -> Result<Self, KRingError> {
        let mut cur = self.clone();
        for &i in word.iter().rev() {
            cur = cur.braid_t(i)?;
        }
        Ok(cur)
    }
}

impl fmt::Display for KPoly {
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
            // display in decreasing spectral parameter, matching the
            // factored products in rank 2
            for (fi, e) in mono.iter().rev() {
                write!(f, "{}", fi)?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct KVarJson {
    i: usize,
    a: i64,
    exp: u32,
}

#[derive(Serialize, Deserialize)]
struct KTermJson {
    coeff: String,
    monomial: Vec<KVarJson>,
}

#[derive(Serialize, Deserialize)]
struct KPolyJson {
    rank: usize,
    terms: Vec<KTermJson>,
}

impl From<KPoly> for KPolyJson {
    fn from(p: KPoly) -> KPolyJson {
        let terms = p
            .terms
            .iter()
            .map(|(mono, coeff)| KTermJson {
                coeff: coeff.to_string(),
                monomial: mono
                    .iter()
                    .map(|(f, &e)| KVarJson { i: f.i, a: f.a, exp: e })
                    .collect(),
            })
            .collect();
        KPolyJson { rank: p.rank, terms }
    }
}

impl TryFrom<KPolyJson> for KPoly {
    type Error = KRingError;
    fn try_from(j: KPolyJson) -> Result<Self, KRingError> {
        let mut p = KPoly::zero(j.rank);
        for term in j.terms {
            let coeff: BigInt = term
                .coeff
                .parse()
                .map_err(|_| KRingError::BadCoefficient(term.coeff.clone()))?;
            let mut mono = KMonomial::new();
            for v in term.monomial {
                if v.exp == 0 {
                    return Err(KRingError::ZeroExponent);
                }
                let f = FundIndex::new(v.i, v.a, j.rank)?;
                *mono.entry(f).or_insert(0) += v.exp;
            }
            p.add_term(mono, coeff);
        }
        Ok(p)
    }
}

/// A dominant monomial (all exponents positive) labelling a simple
/// class.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DominantMonomial {
    rank: usize,
    vars: KMonomial,
}

impl DominantMonomial {
    pub fn unit(rank: usize) -> Self {
        DominantMonomial { rank, vars: KMonomial::new() }
    }

    pub fn from_vars(rank: usize, vars: &[(usize, i64, u32)]) -> Result<Self, KRingError> {
        let mut m = DominantMonomial::unit(rank);
        for &(i, a, e) in vars {
            if e == 0 {
                return Err(KRingError::ZeroExponent);
            }
            let f = FundIndex::new(i, a, rank)?;
            *m.vars.entry(f).or_insert(0) += e;
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_unit(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn exponent(&self, f: &FundIndex) -> u32 {
        self.vars.get(f).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (FundIndex, u32)> + '_ {
        self.vars.iter().map(|(f, &e)| (*f, e))
    }

    pub fn total_degree(&self) -> u32 {
        self.vars.values().sum()
    }

    pub fn mul_var(&mut self, f: FundIndex, e: u32) {
        if e > 0 {
            *self.vars.entry(f).or_insert(0) += e;
        }
    }

    /// As an element of the polynomial ring.
    pub fn to_kpoly(&self) -> KPoly {
        let mut terms = BTreeMap::new();
        terms.insert(self.vars.clone(), BigInt::one());
        KPoly { rank: self.rank, terms }
    }

    pub fn shift(&self, k: i64) -> Self {
        DominantMonomial {
            rank: self.rank,
            vars: self
                .vars
                .iter()
                .map(|(f, &e)| (FundIndex { i: f.i, a: f.a + 2 * k }, e))
                .collect(),
        }
    }
}

impl fmt::Display for DominantMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "1");
        }
        for (fi, e) in self.vars.iter().rev() {
            write!(f, "{}", fi)?;
            if *e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// Rank-2 closed form for the braid action on simple classes: `m` is
/// written with exponents `a_k` at `D^k(1,2)`, `b_k` at `D^k(2,1)` and
/// `c_k` at `D^k(1,0)`, and the image exponents follow the displayed
/// min/max formulas.
pub fn rank2_braid(i: usize, m: &DominantMonomial) -> Result<DominantMonomial, KRingError> {
    let n = m.rank();
    if n != 2 {
        return Err(KRingError::NotRankTwo(n));
    }
    if i < 1 || i > 2 {
        return Err(KRingError::IndexOutOfRange { i, n: 2 });
    }
    // factored exponents per dual-power k
    let mut a: BTreeMap<i64, i64> = BTreeMap::new();
    let mut b: BTreeMap<i64, i64> = BTreeMap::new();
    let mut c: BTreeMap<i64, i64> = BTreeMap::new();
    let mut ks: Vec<i64> = Vec::new();
    for (f, e) in m.vars() {
        let (k, base) = locate(f, 2);
        ks.push(k);
        let slot = match (base.i, base.a) {
            (1, 2) => &mut a,
            (2, 1) => &mut b,
            (1, 0) => &mut c,
            _ => unreachable!("rank-2 window is exactly {{(1,0),(2,1),(1,2)}}"),
        };
        *slot.entry(k).or_insert(0) += e as i64;
    }
    let (kmin, kmax) = match (ks.iter().min(), ks.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo - 1, hi + 1),
        _ => return Ok(DominantMonomial::unit(2)),
    };
    let get = |t: &BTreeMap<i64, i64>, k: i64| t.get(&k).copied().unwrap_or(0);
    let mut out = DominantMonomial::unit(2);
    for k in kmin..=kmax {
        let (ak, bk, ck) = (get(&a, k), get(&b, k), get(&c, k));
        let (ak1, bk1, ck1) = (get(&a, k - 1), get(&b, k - 1), get(&c, k - 1));
        let (ea, eb, ec) = match i {
            1 => (
                ak.min(ck),
                bk + (ak - ck).max(0),
                bk1 + (ck1 - ak1).max(0),
            ),
            2 => (
                ak1 + ck - ak1.min(bk),
                ak1.min(bk),
                bk + ck - ak1.min(bk),
            ),
            _ => unreachable!(),
        };
        let base = |i0: usize, a0: i64| FundIndex { i: i0, a: a0 }.dual_pow(k, 2);
        out.mul_var(base(1, 2), ea as u32);
        out.mul_var(base(2, 1), eb as u32);
        out.mul_var(base(1, 0), ec as u32);
    }
    Ok(out)
}
