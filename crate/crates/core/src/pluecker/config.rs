//! Normalized vector configurations and the randomized equality
//! oracle for the quotient Grassmannian algebra.

use super::field::{det_columns, FieldCtx, Fp, Rationals};
use super::{MinorIndex, PlueckerError, PlueckerPoly};
use crate::exec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

/// Default prime modulus `2^61 - 1`.
pub const P61: u64 = (1u64 << 61) - 1;

/// A finite slice of an infinite column configuration over a field,
/// normalized so that every window of `width` consecutive columns
/// inside the declared range has determinant exactly 1. This realizes
/// the frozen quotient pointwise.
#[derive(Clone, Debug)]
pub struct Config<F: FieldCtx = Fp> {
    ctx: F,
    width: usize,
    lo: i64,
    cols: Vec<Vec<F::Elem>>,
}

impl Config<Fp> {
    /// Normalized random configuration over `F_p`.
    pub fn random_normalized_fp(
        seed: u64,
        lo: i64,
        hi: i64,
        width: usize,
        prime: u64,
    ) -> Result<Self, PlueckerError> {
        Config::random_normalized(Fp::new(prime), width, lo, hi, seed)
    }
}

impl Config<Rationals> {
    /// Normalized random configuration over ℚ (fully exact).
    pub fn random_normalized_q(
        seed: u64,
        lo: i64,
        hi: i64,
        width: usize,
    ) -> Result<Self, PlueckerError> {
        Config::random_normalized(Rationals, width, lo, hi, seed)
    }
}

impl<F: FieldCtx> Config<F> {
    /// Sample columns and rescale column-by-column so every window of
    /// `width` consecutive columns in `[lo, hi]` has determinant 1.
    /// Deterministic in `seed`.
    pub fn random_normalized(
        ctx: F,
        width: usize,
        lo: i64,
        hi: i64,
        seed: u64,
    ) -> Result<Self, PlueckerError> {
        if hi < lo || ((hi - lo + 1) as usize) < width {
            return Err(PlueckerError::RangeTooShort { lo, hi, m: width });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = (hi - lo + 1) as usize;
        let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(len);
        const MAX_TRIES: usize = 64;
        for t in 0..len {
            if t < width - 1 {
                cols.push((0..width).map(|_| ctx.sample(&mut rng)).collect());
                continue;
            }
            let mut tries = 0;
            loop {
                let cand: Vec<F::Elem> = (0..width).map(|_| ctx.sample(&mut rng)).collect();
                let mut window: Vec<Vec<F::Elem>> =
                    cols[t + 1 - width..t].iter().cloned().collect();
                window.push(cand.clone());
                let d = det_columns(&ctx, &window);
                if let Some(scale) = ctx.inv(&d) {
                    cols.push(cand.iter().map(|x| ctx.mul(x, &scale)).collect());
                    break;
                }
                tries += 1;
                if tries >= MAX_TRIES {
                    return Err(PlueckerError::DegenerateSampling(MAX_TRIES));
                }
            }
        }
        Ok(Config { ctx, width, lo, cols })
    }

    pub(crate) fn from_parts(ctx: F, width: usize, lo: i64, cols: Vec<Vec<F::Elem>>) -> Self {
        Config { ctx, width, lo, cols }
    }

    pub fn ctx(&self) -> &F {
        &self.ctx
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.cols.len() as i64 - 1
    }

    pub fn column(&self, j: i64) -> Result<&[F::Elem], PlueckerError> {
        if j < self.lo || j > self.hi() {
            return Err(PlueckerError::OutOfRange { idx: j, lo: self.lo, hi: self.hi() });
        }
        Ok(&self.cols[(j - self.lo) as usize])
    }

    /// Determinant of the columns selected by `idx`.
    pub fn minor(&self, idx: &MinorIndex) -> Result<F::Elem, PlueckerError> {
        if idx.width() != self.width {
            return Err(PlueckerError::WidthMismatch(idx.width(), self.width));
        }
        let selected: Vec<Vec<F::Elem>> = idx
            .entries()
            .iter()
            .map(|&j| self.column(j).map(|c| c.to_vec()))
            .collect::<Result<_, _>>()?;
        Ok(det_columns(&self.ctx, &selected))
    }

    /// Exact evaluation: substitute each variable by its minor and sum.
    pub fn evaluate(&self, p: &PlueckerPoly) -> Result<F::Elem, PlueckerError> {
        if p.width() != self.width {
            return Err(PlueckerError::WidthMismatch(p.width(), self.width));
        }
        let mut cache: HashMap<MinorIndex, F::Elem> = HashMap::new();
        let mut total = self.ctx.zero();
        for (mono, coeff) in p.terms() {
            let mut val = self.ctx.from_bigint(coeff);
            for idx in mono {
                let minor = match cache.get(idx) {
                    Some(v) => v.clone(),
                    None => {
                        let v = self.minor(idx)?;
                        cache.insert(idx.clone(), v.clone());
                        v
                    }
                };
                val = self.ctx.mul(&val, &minor);
            }
            total = self.ctx.add(&total, &val);
        }
        Ok(total)
    }

    /// Every in-range window has determinant 1 (sanity helper).
    pub fn is_normalized(&self) -> bool {
        let m = self.width as i64;
        let mut k = self.lo;
        while k + m - 1 <= self.hi() {
            let idx = MinorIndex::new((k..k + m).collect()).expect("increasing");
            match self.minor(&idx) {
                Ok(v) => {
                    if v != self.ctx.one() {
                        return false;
                    }
                }
                Err(_) => return false,
            }
            k += 1;
        }
        true
    }
}

/// Options for the randomized equality oracle.
#[derive(Clone, Copy, Debug)]
pub struct EqOpts {
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
}

impl Default for EqOpts {
    fn default() -> Self {
        EqOpts { trials: 8, prime: P61, seed: 0x5eed }
    }
}

impl EqOpts {
    pub fn with_seed(seed: u64) -> Self {
        EqOpts { seed, ..EqOpts::default() }
    }
}

/// A failing evaluation exhibited by [`eq_mod_witness`].
#[derive(Clone, Debug, Serialize)]
pub struct EqWitness {
    pub trial: usize,
    pub config_seed: u64,
    pub lo: i64,
    pub hi: i64,
    pub prime: u64,
    pub lhs: String,
    pub rhs: String,
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Randomized equality in the quotient algebra: evaluate `p - q` on
/// `trials` independent normalized configurations covering the joint
/// index range plus `width` columns of margin on each side. `false`
/// is definitive; `true` has one-sided error per trial bounded by
/// Schwartz-Zippel.
pub fn eq_mod(p: &PlueckerPoly, q: &PlueckerPoly, opts: EqOpts) -> Result<bool, PlueckerError> {
    Ok(eq_mod_witness(p, q, opts)?.is_none())
}

/// Like [`eq_mod`] but returns the first failing trial as a witness.
pub fn eq_mod_witness(
    p: &PlueckerPoly,
    q: &PlueckerPoly,
    opts: EqOpts,
) -> Result<Option<EqWitness>, PlueckerError> {
    if p.width() != q.width() {
        return Err(PlueckerError::WidthMismatch(p.width(), q.width()));
    }
    let diff = p.sub(q)?;
    if diff.is_zero() {
        return Ok(None);
    }
    let m = p.width() as i64;
    let (lo, hi) = match diff.index_hull() {
        Some((a, b)) => (a - m, b + m),
        // nonzero constant difference: evaluate on a minimal window
        None => (1, m),
    };
    let trials: Vec<usize> = (0..opts.trials.max(1)).collect();
    let p_ref = &diff;
    let lhs_ref = p;
    let rhs_ref = q;
    let results = exec::par_map(trials, move |t| -> Result<Option<EqWitness>, PlueckerError> {
        let seed = trial_seed(opts.seed, t);
        let cfg = Config::random_normalized_fp(seed, lo, hi, m as usize, opts.prime)?;
        let v = cfg.evaluate(p_ref)?;
        if cfg.ctx().is_zero(&v) {
            return Ok(None);
        }
        let lhs = cfg.evaluate(lhs_ref)?;
        let rhs = cfg.evaluate(rhs_ref)?;
        Ok(Some(EqWitness {
            trial: t,
            config_seed: seed,
            lo,
            hi,
            prime: opts.prime,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }))
    });
    let mut first: Option<EqWitness> = None;
    for r in results {
        if let Some(w) = r? {
            match &first {
                Some(existing) if existing.trial <= w.trial => {}
                _ => first = Some(w),
            }
        }
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::plucker_generator;
    use rand::Rng;

    fn var(v: &[i64]) -> PlueckerPoly {
        PlueckerPoly::var(MinorIndex::new(v.to_vec()).unwrap())
    }

    #[test]
    fn normalized_windows_are_one() {
        for m in 2..=5usize {
            let cfg = Config::random_normalized_fp(42, -3, 12, m, P61).unwrap();
            assert!(cfg.is_normalized(), "m={m}");
        }
        let cfg = Config::random_normalized_q(7, 1, 7, 3).unwrap();
        assert!(cfg.is_normalized());
    }

    #[test]
    fn deterministic_in_seed() {
        let a = Config::random_normalized_fp(9, 0, 9, 3, P61).unwrap();
        let b = Config::random_normalized_fp(9, 0, 9, 3, P61).unwrap();
        assert_eq!(a.cols, b.cols);
        let c = Config::random_normalized_fp(10, 0, 9, 3, P61).unwrap();
        assert_ne!(a.cols, c.cols);
    }

    #[test]
    fn range_too_short() {
        assert!(matches!(
            Config::random_normalized_fp(1, 0, 1, 3, P61),
            Err(PlueckerError::RangeTooShort { .. })
        ));
    }

    #[test]
    fn evaluate_constants_and_range_errors() {
        let cfg = Config::random_normalized_fp(3, 1, 6, 3, P61).unwrap();
        assert_eq!(cfg.evaluate(&PlueckerPoly::one(3)).unwrap(), 1);
        assert_eq!(cfg.evaluate(&PlueckerPoly::zero(3)).unwrap(), 0);
        let far = var(&[7, 9, 11]);
        assert!(matches!(
            cfg.evaluate(&far),
            Err(PlueckerError::OutOfRange { .. })
        ));
    }

    #[test]
    fn generators_vanish_numerically() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for m in 3..=4usize {
            for trial in 0..20 {
                // random strictly increasing tuples in a small window
                let mut pick = |len: usize| -> Vec<i64> {
                    let mut set = std::collections::BTreeSet::new();
                    while set.len() < len {
                        set.insert((rng.gen_range(0..14)) as i64 + 1);
                    }
                    set.into_iter().collect()
                };
                let i = pick(m - 1);
                let j = pick(m + 1);
                let g = plucker_generator(&i, &j).unwrap();
                let cfg =
                    Config::random_normalized_fp(100 + trial, -2, 18, m, P61).unwrap();
                assert_eq!(cfg.evaluate(&g).unwrap(), 0, "m={m} i={i:?} j={j:?}");
            }
        }
    }

    #[test]
    fn eq_mod_basic() {
        let p = var(&[1, 4, 5]);
        let rhs = var(&[1, 3, 4]).mul(&var(&[2, 4, 5])).unwrap().sub(&var(&[1, 2, 4])).unwrap();
        assert!(eq_mod(&p, &p, EqOpts::default()).unwrap());
        assert!(eq_mod(&p, &rhs, EqOpts::default()).unwrap());
        assert!(!eq_mod(&p, &var(&[1, 4, 6]), EqOpts::default()).unwrap());
        // witness carries the evaluations
        let w = eq_mod_witness(&p, &var(&[1, 4, 6]), EqOpts::default()).unwrap();
        let w = w.expect("must differ");
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn eq_mod_constant_difference() {
        let one = PlueckerPoly::one(3);
        let two = one.add(&one).unwrap();
        assert!(!eq_mod(&one, &two, EqOpts::default()).unwrap());
        // frozen variable equals 1 in the quotient
        assert!(eq_mod(&var(&[4, 5, 6]), &one, EqOpts::default()).unwrap());
    }

    #[test]
    fn eq_mod_respects_ring_ops() {
        let p = var(&[1, 3, 5]);
        let q = var(&[1, 3, 4]).mul(&var(&[2, 4, 5])).unwrap().sub(&var(&[1, 2, 4])).unwrap();
        let r = var(&[2, 4, 6]);
        // q == P_{1,4,5}; so p*r + q == q + p*r trivially, and
        // (p + q)*r == p*r + q*r as quotient elements
        let lhs = p.add(&q).unwrap().mul(&r).unwrap();
        let rhs = p.mul(&r).unwrap().add(&q.mul(&r).unwrap()).unwrap();
        assert!(eq_mod(&lhs, &rhs, EqOpts::default()).unwrap());
    }
}
