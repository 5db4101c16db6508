//! Grassmannian cluster seeds: the initial grid quivers with their
//! Plücker variables, standard quiver mutation, and exchange-relation
//! verification against the evaluation oracle.
//!
//! Mutation needs a division in the quotient algebra, which is
//! ill-posed over the unbounded variable set. Instead the exchange is
//! lifted to the honest cone algebra, where it is multidegree
//! homogeneous: the quotient is solved for in the standard-monomial
//! basis of its multidegree (componentwise-ordered chains of index
//! tuples) by linear algebra over a prime field, lifted to integers,
//! and then re-verified exactly on random integer configurations. When
//! no polynomial quotient exists the new variable is kept as a formal
//! exchange quotient and flagged.

use crate::pluecker::{
    det_columns, eq_mod, EqOpts, FieldCtx, Fp, MinorIndex, PlueckerError, PlueckerPoly, P61,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeedError {
    #[error("parameters require 2 <= m < N, got m={0}, N={1}")]
    BadParams(usize, usize),
    #[error("vertex ({0},{1}) not in quiver")]
    NoSuchVertex(i64, i64),
    #[error("vertex ({0},{1}) is frozen")]
    FrozenVertex(i64, i64),
    #[error("variable at ({0},{1}) is a non-expanded formal quotient")]
    FormalVariable(i64, i64),
    #[error(transparent)]
    Pluecker(#[from] PlueckerError),
}

/// Grid label: `(0,0)` or `(a,b)` with `a` the row and `b` the column.
pub type Vertex = (i64, i64);

/// Quiver on grid labels: arrow multiset plus frozen flags. No loops;
/// mutation keeps the quiver 2-cycle free.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    vertices: BTreeSet<Vertex>,
    frozen: BTreeSet<Vertex>,
    arrows: BTreeMap<(Vertex, Vertex), u32>,
}

impl Quiver {
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Arrows counted with multiplicity.
    pub fn arrow_count(&self) -> usize {
        self.arrows.values().map(|&c| c as usize).sum()
    }

    pub fn arrows(&self) -> impl Iterator<Item = ((Vertex, Vertex), u32)> + '_ {
        self.arrows.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_frozen(&self, v: Vertex) -> bool {
        self.frozen.contains(&v)
    }

    pub fn exchangeable(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied().filter(|v| !self.frozen.contains(v))
    }

    pub fn arrows_into(&self, v: Vertex) -> Vec<(Vertex, u32)> {
        self.arrows
            .iter()
            .filter(|((_, to), _)| *to == v)
            .map(|((from, _), &c)| (*from, c))
            .collect()
    }

    pub fn arrows_out_of(&self, v: Vertex) -> Vec<(Vertex, u32)> {
        self.arrows
            .iter()
            .filter(|((from, _), _)| *from == v)
            .map(|((_, to), &c)| (*to, c))
            .collect()
    }

    fn add_arrow(&mut self, from: Vertex, to: Vertex, mult: u32) {
        if mult == 0 {
            return;
        }
        *self.arrows.entry((from, to)).or_insert(0) += mult;
    }

    /// Standard three-step quiver mutation at `v`.
    pub fn mutate(&self, v: Vertex) -> Result<Quiver, SeedError> {
        if !self.vertices.contains(&v) {
            return Err(SeedError::NoSuchVertex(v.0, v.1));
        }
        if self.frozen.contains(&v) {
            return Err(SeedError::FrozenVertex(v.0, v.1));
        }
        let ins = self.arrows_into(v);
        let outs = self.arrows_out_of(v);
        let mut out = Quiver {
            vertices: self.vertices.clone(),
            frozen: self.frozen.clone(),
            arrows: self
                .arrows
                .iter()
                .filter(|((a, b), _)| *a != v && *b != v)
                .map(|(&k, &c)| (k, c))
                .collect(),
        };
        // composite arrows u -> w through v
        for &(u, p) in &ins {
            for &(w, q) in &outs {
                debug_assert_ne!(u, w, "2-cycle through the mutation vertex");
                out.add_arrow(u, w, p * q);
            }
        }
        // reverse arrows at v
        for &(u, p) in &ins {
            out.add_arrow(v, u, p);
        }
        for &(w, q) in &outs {
            out.add_arrow(w, v, q);
        }
        // cancel 2-cycles
        let pairs: Vec<(Vertex, Vertex)> = out
            .arrows
            .keys()
            .filter(|(a, b)| a < b && out.arrows.contains_key(&(*b, *a)))
            .copied()
            .collect();
        for (a, b) in pairs {
            let x = out.arrows[&(a, b)];
            let y = out.arrows[&(b, a)];
            let t = x.min(y);
            for key in [(a, b), (b, a)] {
                let c = out.arrows.get_mut(&key).expect("present");
                *c -= t;
                if *c == 0 {
                    out.arrows.remove(&key);
                }
            }
        }
        Ok(out)
    }
}

/// Polynomial in Plücker variables *without* the frozen quotient:
/// the honest cone algebra, used for multidegree bookkeeping during
/// mutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RawPoly {
    width: usize,
    terms: BTreeMap<Vec<MinorIndex>, BigInt>,
}

impl RawPoly {
    pub fn zero(width: usize) -> Self {
        RawPoly { width, terms: BTreeMap::new() }
    }

    pub fn one(width: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), BigInt::one());
        RawPoly { width, terms }
    }

    pub fn var(idx: MinorIndex) -> Self {
        let width = idx.width();
        let mut terms = BTreeMap::new();
        terms.insert(vec![idx], BigInt::one());
        RawPoly { width, terms }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mut mono: Vec<MinorIndex>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        mono.sort_unstable();
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = RawPoly::zero(self.width);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut mono = ma.clone();
                mono.extend(mb.iter().cloned());
                out.add_term(mono, ca * cb);
            }
        }
        out
    }

    /// Image in the frozen quotient.
    pub fn reduced(&self) -> PlueckerPoly {
        let mut p = PlueckerPoly::zero(self.width);
        for (mono, coeff) in &self.terms {
            p.add_term(mono.clone(), coeff.clone());
        }
        p
    }

    /// Column multidegree shared by every term, if the polynomial is
    /// homogeneous.
    fn homogeneous_multidegree(&self) -> Option<BTreeMap<i64, u32>> {
        let mut result: Option<BTreeMap<i64, u32>> = None;
        for mono in self.terms.keys() {
            let mu = multidegree(mono);
            match &result {
                None => result = Some(mu),
                Some(prev) if *prev == mu => {}
                Some(_) => return None,
            }
        }
        result
    }

    /// Evaluate over a prime field on the given columns.
    fn eval_fp(&self, ctx: &Fp, cols: &HashMap<i64, Vec<u64>>, cache: &mut HashMap<MinorIndex, u64>) -> u64 {
        let mut total = ctx.zero();
        for (mono, coeff) in &self.terms {
            let mut val = ctx.from_bigint(coeff);
            for idx in mono {
                let minor = *cache.entry(idx.clone()).or_insert_with(|| {
                    let sel: Vec<Vec<u64>> =
                        idx.entries().iter().map(|j| cols[j].clone()).collect();
                    det_columns(ctx, &sel)
                });
                val = ctx.mul(&val, &minor);
            }
            total = ctx.add(&total, &val);
        }
        total
    }

    /// Exact evaluation on integer columns.
    fn eval_int(&self, cols: &HashMap<i64, Vec<BigInt>>, cache: &mut HashMap<MinorIndex, BigInt>) -> BigInt {
        let mut total = BigInt::zero();
        for (mono, coeff) in &self.terms {
            let mut val = coeff.clone();
            for idx in mono {
                let minor = cache
                    .entry(idx.clone())
                    .or_insert_with(|| {
                        let sel: Vec<Vec<BigInt>> =
                            idx.entries().iter().map(|j| cols[j].clone()).collect();
                        det_bigint(&sel)
                    })
                    .clone();
                val *= minor;
            }
            total += val;
        }
        total
    }

    fn support_columns(&self) -> BTreeSet<i64> {
        let mut s = BTreeSet::new();
        for mono in self.terms.keys() {
            for idx in mono {
                s.extend(idx.entries().iter().copied());
            }
        }
        s
    }
}

impl std::fmt::Display for RawPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
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
            if mono.is_empty() || !abs.is_one() {
                write!(f, "{}", abs)?;
            }
            for idx in mono {
                write!(f, "{}", idx)?;
            }
        }
        Ok(())
    }
}

fn multidegree(mono: &[MinorIndex]) -> BTreeMap<i64, u32> {
    let mut mu = BTreeMap::new();
    for idx in mono {
        for &c in idx.entries() {
            *mu.entry(c).or_insert(0) += 1;
        }
    }
    mu
}

/// Exact integer determinant (Bareiss), columns given.
fn det_bigint(cols: &[Vec<BigInt>]) -> BigInt {
    let n = cols.len();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// A cluster variable attached to a vertex: either a fully expanded
/// honest representative or a formal exchange quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeedVar {
    Expanded(RawPoly),
    Formal { numerator: RawPoly, denominator: RawPoly },
}

impl SeedVar {
    pub fn is_expanded(&self) -> bool {
        matches!(self, SeedVar::Expanded(_))
    }

    pub fn expanded(&self) -> Option<&RawPoly> {
        match self {
            SeedVar::Expanded(p) => Some(p),
            SeedVar::Formal { .. } => None,
        }
    }

    /// Quotient image of the expanded representative.
    pub fn reduced(&self) -> Option<PlueckerPoly> {
        self.expanded().map(RawPoly::reduced)
    }
}

/// A seed: quiver plus variable assignment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seed {
    m: usize,
    n_cols: usize,
    quiver: Quiver,
    vars: BTreeMap<Vertex, SeedVar>,
}

/// The initial grid seed for `Gr(m, N)`, truncated at `N` columns;
/// the frozen last row and last column act as the truncation boundary
/// of the infinite seed and refuse mutation.
///
/// Vertices are `(0,0)` plus `(a,b)` for `a ∈ [1, N-m]`, `b ∈ [1, m]`;
/// arrows are `(1,1) -> (0,0)`, up-arrows `(a,b) -> (a-1,b)`,
/// left-arrows `(a,b) -> (a,b-1)` and diagonals `(a,b) -> (a+1,b+1)`
/// within the grid. The variable at `(a,b)` is the Plücker coordinate
/// on `{1..m-b} ∪ [m-b+a+1, m+a]`, and `(0,0)` carries `P_{1..m}`.
pub fn initial_seed(m: usize, n_cols: usize) -> Result<Seed, SeedError> {
    if m < 2 || n_cols <= m {
        return Err(SeedError::BadParams(m, n_cols));
    }
    let rows = (n_cols - m) as i64;
    let cols = m as i64;
    let mut vertices = BTreeSet::new();
    let mut frozen = BTreeSet::new();
    vertices.insert((0, 0));
    frozen.insert((0, 0));
    for a in 1..=rows {
        for b in 1..=cols {
            vertices.insert((a, b));
            if b == cols || a == rows {
                frozen.insert((a, b));
            }
        }
    }
    let mut quiver = Quiver { vertices, frozen, arrows: BTreeMap::new() };
    quiver.add_arrow((1, 1), (0, 0), 1);
    for a in 2..=rows {
        for b in 1..=cols {
            quiver.add_arrow((a, b), (a - 1, b), 1);
        }
    }
    for a in 1..=rows {
        for b in 2..=cols {
            quiver.add_arrow((a, b), (a, b - 1), 1);
        }
    }
    for a in 1..rows {
        for b in 1..cols {
            quiver.add_arrow((a, b), (a + 1, b + 1), 1);
        }
    }
    let mut vars = BTreeMap::new();
    let grid_var = |a: i64, b: i64| -> MinorIndex {
        let mut entries: Vec<i64> = (1..=(m as i64 - b)).collect();
        entries.extend(m as i64 - b + a + 1..=m as i64 + a);
        MinorIndex::new(entries).expect("strictly increasing")
    };
    vars.insert(
        (0, 0),
        SeedVar::Expanded(RawPoly::var(
            MinorIndex::new((1..=m as i64).collect()).expect("increasing"),
        )),
    );
    for a in 1..=rows {
        for b in 1..=cols {
            vars.insert((a, b), SeedVar::Expanded(RawPoly::var(grid_var(a, b))));
        }
    }
    Ok(Seed { m, n_cols, quiver, vars })
}

impl Seed {
    pub fn width(&self) -> usize {
        self.m
    }

    pub fn columns(&self) -> usize {
        self.n_cols
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn var(&self, v: Vertex) -> Option<&SeedVar> {
        self.vars.get(&v)
    }

    /// Exchange polynomial at `v` in the honest algebra:
    /// `Π(in-arrow vars) + Π(out-arrow vars)`. Errors if any involved
    /// variable is a formal quotient.
    fn exchange_poly(&self, v: Vertex) -> Result<(RawPoly, RawPoly), SeedError> {
        let get = |u: Vertex| -> Result<&RawPoly, SeedError> {
            self.vars
                .get(&u)
                .ok_or(SeedError::NoSuchVertex(u.0, u.1))?
                .expanded()
                .ok_or(SeedError::FormalVariable(u.0, u.1))
        };
        let mut in_prod = RawPoly::one(self.m);
        for (u, mult) in self.quiver.arrows_into(v) {
            let p = get(u)?;
            for _ in 0..mult {
                in_prod = in_prod.mul(p);
            }
        }
        let mut out_prod = RawPoly::one(self.m);
        for (u, mult) in self.quiver.arrows_out_of(v) {
            let p = get(u)?;
            for _ in 0..mult {
                out_prod = out_prod.mul(p);
            }
        }
        Ok((in_prod, out_prod))
    }

    /// Mutate at `v`: the quiver by the three-step rule, the variable
    /// by the exchange relation with the quotient expanded through the
    /// standard-monomial solve (formal on failure).
    pub fn mutate(&self, v: Vertex) -> Result<Seed, SeedError> {
        let quiver = self.quiver.mutate(v)?;
        let x = self
            .vars
            .get(&v)
            .ok_or(SeedError::NoSuchVertex(v.0, v.1))?
            .expanded()
            .ok_or(SeedError::FormalVariable(v.0, v.1))?;
        let (in_prod, out_prod) = self.exchange_poly(v)?;
        let exchange = in_prod.add(&out_prod);
        let new_var = match expand_quotient(&exchange, x) {
            Some(q) => SeedVar::Expanded(q),
            None => SeedVar::Formal { numerator: exchange, denominator: x.clone() },
        };
        let mut vars = self.vars.clone();
        vars.insert(v, new_var);
        Ok(Seed { m: self.m, n_cols: self.n_cols, quiver, vars })
    }

    /// Check `x · x' = Π(in) + Π(out)` at `v` through [`eq_mod`] after
    /// mutating; a non-expanded quotient counts as failure.
    pub fn verify_exchange(&self, v: Vertex, opts: EqOpts) -> Result<bool, SeedError> {
        let mutated = self.mutate(v)?;
        let new_var = match mutated.vars[&v].reduced() {
            Some(p) => p,
            None => return Ok(false),
        };
        let old_var = self.vars[&v].reduced().ok_or(SeedError::FormalVariable(v.0, v.1))?;
        let (in_prod, out_prod) = self.exchange_poly(v)?;
        let lhs = old_var.mul(&new_var)?;
        let rhs = in_prod.add(&out_prod).reduced();
        Ok(eq_mod(&lhs, &rhs, opts)?)
    }

    /// [`Seed::verify_exchange`] over every exchangeable vertex;
    /// vacuously true when none exist.
    pub fn verify_all_exchanges(&self, opts: EqOpts) -> Result<bool, SeedError> {
        for v in self.quiver.exchangeable().collect::<Vec<_>>() {
            if !self.verify_exchange(v, opts)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Enumerate the standard monomials of column content `mu`: chains
/// `K_1 ≤ K_2 ≤ … ≤ K_d` in the componentwise order, each `K_s` a
/// strictly increasing `m`-tuple, using each column `c` exactly
/// `mu[c]` times. These form a ℤ-basis of the multidegree-`mu` piece
/// of the cone algebra.
fn standard_monomials(mu: &BTreeMap<i64, u32>, m: usize) -> Vec<Vec<MinorIndex>> {
    let total: u32 = mu.values().sum();
    if total % m as u32 != 0 {
        return Vec::new();
    }
    let d = (total / m as u32) as usize;
    let mut out = Vec::new();
    let mut remaining = mu.clone();
    let mut chain: Vec<Vec<i64>> = Vec::new();
    fn rec(
        remaining: &mut BTreeMap<i64, u32>,
        chain: &mut Vec<Vec<i64>>,
        left: usize,
        m: usize,
        out: &mut Vec<Vec<MinorIndex>>,
    ) {
        if left == 0 {
            if remaining.values().all(|&c| c == 0) {
                out.push(
                    chain
                        .iter()
                        .map(|k| MinorIndex::new(k.clone()).expect("increasing"))
                        .collect(),
                );
            }
            return;
        }
        // the next tuple must start with the smallest remaining column
        let c0 = match remaining.iter().find(|(_, &c)| c > 0) {
            Some((&c, _)) => c,
            None => return,
        };
        let prev = chain.last().cloned();
        // chain order: the new first entry may not precede the previous one
        if let Some(p) = &prev {
            if c0 < p[0] {
                return;
            }
        }
        let mut tuple = vec![c0];
        *remaining.get_mut(&c0).expect("present") -= 1;
        fn extend(
            remaining: &mut BTreeMap<i64, u32>,
            chain: &mut Vec<Vec<i64>>,
            tuple: &mut Vec<i64>,
            prev: &Option<Vec<i64>>,
            left: usize,
            m: usize,
            out: &mut Vec<Vec<MinorIndex>>,
        ) {
            if tuple.len() == m {
                chain.push(tuple.clone());
                rec(remaining, chain, left - 1, m, out);
                chain.pop();
                return;
            }
            let pos = tuple.len();
            let floor_prev = prev.as_ref().map(|p| p[pos]).unwrap_or(i64::MIN);
            let floor = (*tuple.last().expect("nonempty") + 1).max(floor_prev);
            let choices: Vec<i64> = remaining
                .iter()
                .filter(|(&c, &cnt)| cnt > 0 && c >= floor)
                .map(|(&c, _)| c)
                .collect();
            for c in choices {
                *remaining.get_mut(&c).expect("present") -= 1;
                tuple.push(c);
                extend(remaining, chain, tuple, prev, left, m, out);
                tuple.pop();
                *remaining.get_mut(&c).expect("present") += 1;
            }
        }
        extend(remaining, chain, &mut tuple, &prev, left, m, out);
        *remaining.get_mut(&c0).expect("present") += 1;
    }
    rec(&mut remaining, &mut chain, d, m, &mut out);
    out
}

/// Solve `x · q = e` for `q` in the honest cone algebra. Both sides
/// must be multidegree homogeneous; `q` is sought in the standard
/// monomial basis of the difference multidegree via evaluations mod a
/// prime, lifted symmetrically and re-verified exactly over ℤ.
fn expand_quotient(e: &RawPoly, x: &RawPoly) -> Option<RawPoly> {
    if e.is_zero() {
        return Some(RawPoly::zero(e.width()));
    }
    let m = e.width();
    let mu_e = e.homogeneous_multidegree()?;
    let mu_x = x.homogeneous_multidegree()?;
    let mut mu: BTreeMap<i64, u32> = BTreeMap::new();
    for (&c, &cnt) in &mu_e {
        let used = mu_x.get(&c).copied().unwrap_or(0);
        if used > cnt {
            return None;
        }
        if cnt - used > 0 {
            mu.insert(c, cnt - used);
        }
    }
    for c in mu_x.keys() {
        if !mu_e.contains_key(c) {
            return None;
        }
    }
    let candidates = standard_monomials(&mu, m);
    let total: u32 = mu.values().sum();
    let candidates: Vec<Vec<MinorIndex>> = if total == 0 {
        vec![Vec::new()]
    } else if candidates.is_empty() {
        return None;
    } else {
        candidates
    };

    // columns needed for any evaluation
    let mut columns: BTreeSet<i64> = e.support_columns();
    columns.extend(x.support_columns());
    columns.extend(mu.keys().copied());

    let ctx = Fp::new(P61);
    let rows = candidates.len() + 12;
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1_05_7E_4D);
    let mut matrix: Vec<Vec<u64>> = Vec::with_capacity(rows);
    let mut target: Vec<u64> = Vec::with_capacity(rows);
    let mut guard = 0;
    while matrix.len() < rows {
        guard += 1;
        if guard > rows * 4 {
            return None;
        }
        let cols: HashMap<i64, Vec<u64>> = columns
            .iter()
            .map(|&c| (c, (0..m).map(|_| ctx.sample(&mut rng)).collect()))
            .collect();
        let mut cache: HashMap<MinorIndex, u64> = HashMap::new();
        let xv = x.eval_fp(&ctx, &cols, &mut cache);
        let xinv = match ctx.inv(&xv) {
            Some(v) => v,
            None => continue,
        };
        let ev = e.eval_fp(&ctx, &cols, &mut cache);
        let row: Vec<u64> = candidates
            .iter()
            .map(|mono| {
                let mut val = ctx.one();
                for idx in mono {
                    let minor = *cache.entry(idx.clone()).or_insert_with(|| {
                        let sel: Vec<Vec<u64>> =
                            idx.entries().iter().map(|j| cols[j].clone()).collect();
                        det_columns(&ctx, &sel)
                    });
                    val = ctx.mul(&val, &minor);
                }
                val
            })
            .collect();
        matrix.push(row);
        target.push(ctx.mul(&ev, &xinv));
    }

    let solution = solve_linear_fp(&ctx, matrix, target)?;
    // symmetric lift to ℤ
    let half = ctx.modulus() / 2;
    let mut q = RawPoly::zero(m);
    for (mono, &c) in candidates.iter().zip(&solution) {
        if c == 0 {
            continue;
        }
        let lifted = if c > half {
            BigInt::from(c) - BigInt::from(ctx.modulus())
        } else {
            BigInt::from(c)
        };
        q.add_term(mono.clone(), lifted);
    }
    // exact integer verification of x*q = e on random small configs
    let mut check_rng = ChaCha8Rng::seed_from_u64(0xBA5E_C4EC);
    for _ in 0..3 {
        let cols: HashMap<i64, Vec<BigInt>> = columns
            .iter()
            .map(|&c| {
                (c, (0..m).map(|_| BigInt::from(check_rng.gen_range(-9i64..=9))).collect())
            })
            .collect();
        let mut cache: HashMap<MinorIndex, BigInt> = HashMap::new();
        let lhs = x.eval_int(&cols, &mut cache) * q.eval_int(&cols, &mut cache);
        let rhs = e.eval_int(&cols, &mut cache);
        if lhs != rhs {
            return None;
        }
    }
    Some(q)
}

/// Gaussian elimination over `F_p`; returns a particular solution of
/// `A s = t` (free variables zero), or `None` when inconsistent.
fn solve_linear_fp(ctx: &Fp, mut a: Vec<Vec<u64>>, mut t: Vec<u64>) -> Option<Vec<u64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| a[r][col] != 0);
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        a.swap(rank, pivot);
        t.swap(rank, pivot);
        let inv = ctx.inv(&a[rank][col]).expect("nonzero");
        for c in col..cols {
            a[rank][c] = ctx.mul(&a[rank][c], &inv);
        }
        t[rank] = ctx.mul(&t[rank], &inv);
        for r in 0..rows {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in col..cols {
                    let sub = ctx.mul(&f, &a[rank][c]);
                    a[r][c] = ctx.sub(&a[r][c], &sub);
                }
                let sub = ctx.mul(&f, &t[rank]);
                t[r] = ctx.sub(&t[r], &sub);
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // consistency of the remaining rows
    for r in rank..rows {
        if t[r] != 0 {
            return None;
        }
    }
    let mut s = vec![0u64; cols];
    for (col, piv) in pivot_of_col.iter().enumerate() {
        if let Some(r) = piv {
            s[col] = t[*r];
        }
    }
    Some(s)
}

#[derive(Serialize)]
struct VertexJson {
    id: [i64; 2],
    frozen: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    var: Option<PlueckerPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formal: Option<FormalJson>,
}

#[derive(Serialize)]
struct FormalJson {
    numerator: PlueckerPoly,
    denominator: PlueckerPoly,
}

#[derive(Serialize)]
struct ArrowJson {
    from: [i64; 2],
    to: [i64; 2],
    mult: u32,
}

#[derive(Serialize)]
struct SeedJson {
    m: usize,
    #[serde(rename = "N")]
    n_cols: usize,
    vertices: Vec<VertexJson>,
    arrows: Vec<ArrowJson>,
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let vertices = self
            .quiver
            .vertices()
            .map(|v| {
                let var = &self.vars[&v];
                VertexJson {
                    id: [v.0, v.1],
                    frozen: self.quiver.is_frozen(v),
                    var: var.reduced(),
                    formal: match var {
                        SeedVar::Formal { numerator, denominator } => Some(FormalJson {
                            numerator: numerator.reduced(),
                            denominator: denominator.reduced(),
                        }),
                        SeedVar::Expanded(_) => None,
                    },
                }
            })
            .collect();
        let arrows = self
            .quiver
            .arrows()
            .map(|((from, to), mult)| ArrowJson {
                from: [from.0, from.1],
                to: [to.0, to.1],
                mult,
            })
            .collect();
        SeedJson { m: self.m, n_cols: self.n_cols, vertices, arrows }.serialize(serializer)
    }
}
