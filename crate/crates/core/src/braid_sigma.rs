//! Braid maps `σ_i` on the quotient Grassmannian algebra, in two
//! forms: a symbolic substitution-expansion on [`PlueckerPoly`] and the
//! numeric configuration map `κ_i`, cross-validated against each other.
//!
//! Columns are grouped into windows `[tm+1, (t+1)m]`, `t ∈ ℤ`. Under
//! `σ_i` a position `j ≡ i (mod m)` contributes column `j+1`; a
//! position `j ≡ i+1 (mod m)` contributes `C_j · v_j - v_{j-1}` with
//! `C_j = P_{(j-1, j+1, ..., j+m-1)}` (the denominator minor is frozen
//! and already 1 in the quotient); every other position is untouched.
//! The determinant is expanded multilinearly and collected.

use crate::pluecker::{
    normalize, Config, FieldCtx, MinorIndex, Normalized, PlueckerError, PlueckerPoly,
};
use num_bigint::BigInt;
use num_traits::One;

/// The gapped index tuple `(1, .., a, a+2, .., m+1)` translated by
/// `(b-a+1)/2`; defined for `a ∈ [1,m]` and `b ≡ a+1 (mod 2)`. For
/// `a < m` the gap keeps it out of the frozen set.
pub fn gapped_tuple(a: usize, b: i64, m: usize) -> Result<MinorIndex, PlueckerError> {
    if a < 1 || a > m {
        return Err(PlueckerError::BraidIndexOutOfRange { i: a, max: m });
    }
    let t = (b - a as i64 + 1).div_euclid(2);
    debug_assert_eq!((b - a as i64 + 1).rem_euclid(2), 0, "parity of (a,b)");
    let mut entries: Vec<i64> = (1..=a as i64).collect();
    entries.extend(a as i64 + 2..=m as i64 + 1);
    MinorIndex::new(entries.into_iter().map(|x| x + t).collect())
}

/// The index pairs `(a, b)` of the `σ_1` case table outside the frozen
/// row: `a ∈ [1, m-1]`, `b ∈ {a-1, a+1, .., a+2m-3}`.
pub fn sigma1_table_cases(m: usize) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for a in 1..m {
        let mut b = a as i64 - 1;
        while b <= a as i64 + 2 * m as i64 - 3 {
            out.push((a, b));
            b += 2;
        }
    }
    out
}

/// The stated value of `σ_1(P_{(a,b)-tuple})` from the case table:
/// four classes split on the shape of the tuple, with `w` the double
/// transposition swapping `1↔2` and `m+1↔m+2` (taken set-wise).
pub fn sigma1_table_expected(a: usize, b: i64, m: usize) -> Result<PlueckerPoly, PlueckerError> {
    let in_s = a >= 1
        && a <= m - 1
        && b >= a as i64 - 1
        && b <= a as i64 + 2 * m as i64 - 3
        && (b - a as i64).rem_euclid(2) == 1;
    if !in_s {
        return Err(PlueckerError::BraidIndexOutOfRange { i: a, max: m - 1 });
    }
    let class_a = b == a as i64 + 1 && a <= m - 2;
    let class_b = a == m - 1 && b == m as i64;
    let class_c = a as i64 + b == 2 * m as i64 - 1 && b > m as i64;
    if class_a {
        return Ok(PlueckerPoly::var(gapped_tuple(a + 1, a as i64, m)?));
    }
    if class_b {
        return Ok(PlueckerPoly::var(gapped_tuple(1, 2 * m as i64, m)?));
    }
    if class_c {
        let head = PlueckerPoly::var(gapped_tuple(1, 2 * m as i64, m)?);
        let mid = PlueckerPoly::var(gapped_tuple(a, b, m)?);
        let tail = PlueckerPoly::var(gapped_tuple(a + 1, b + 1, m)?);
        return head.mul(&mid)?.sub(&tail);
    }
    // otherwise: apply w entry-wise and resort set-wise
    let raw: Vec<i64> = gapped_tuple(a, b, m)?
        .entries()
        .iter()
        .map(|&x| {
            if x == 1 {
                2
            } else if x == 2 {
                1
            } else if x == m as i64 + 1 {
                m as i64 + 2
            } else if x == m as i64 + 2 {
                m as i64 + 1
            } else {
                x
            }
        })
        .collect();
    let mut sorted = raw;
    sorted.sort_unstable();
    Ok(PlueckerPoly::var(MinorIndex::new(sorted)?))
}

/// Euclidean residue of `j` in `[1, m]` (so `m` rather than 0).
fn residue(j: i64, m: usize) -> usize {
    let r = j.rem_euclid(m as i64) as usize;
    if r == 0 {
        m
    } else {
        r
    }
}

/// Coefficient minor attached to the second rewritten column at
/// position `j ≡ i+1 (mod m)`: `P_{(j-1, j+1, ..., j+m-1)}`.
fn coeff_index(j: i64, m: usize) -> MinorIndex {
    let mut entries = Vec::with_capacity(m);
    entries.push(j - 1);
    entries.extend((1..m as i64).map(|t| j + t));
    MinorIndex::new(entries).expect("strictly increasing")
}

/// Symbolic image of a single Plücker variable under `σ_i`, fully
/// expanded and collected in the quotient.
pub fn sigma_var(i: usize, index: &MinorIndex) -> Result<PlueckerPoly, PlueckerError> {
    let m = index.width();
    if i < 1 || i > m - 1 {
        return Err(PlueckerError::BraidIndexOutOfRange { i, max: m - 1 });
    }
    // per position: list of (column, coefficient-var, sign)
    enum Slot {
        Plain(i64),
        Pair { kept: i64, coeff: MinorIndex, dropped: i64 },
    }
    let slots: Vec<Slot> = index
        .entries()
        .iter()
        .map(|&j| {
            let r = residue(j, m);
            if r == i {
                Slot::Plain(j + 1)
            } else if r == i + 1 {
                Slot::Pair { kept: j, coeff: coeff_index(j, m), dropped: j - 1 }
            } else {
                Slot::Plain(j)
            }
        })
        .collect();

    let mut out = PlueckerPoly::zero(m);
    let pair_positions: Vec<usize> = slots
        .iter()
        .enumerate()
        .filter_map(|(t, s)| matches!(s, Slot::Pair { .. }).then_some(t))
        .collect();
    // expand the determinant multilinearly over the two-term slots
    for mask in 0..(1u32 << pair_positions.len()) {
        let mut columns: Vec<i64> = Vec::with_capacity(m);
        let mut extra: Vec<MinorIndex> = Vec::new();
        let mut sign = BigInt::one();
        let mut choice = 0usize;
        for slot in &slots {
            match slot {
                Slot::Plain(c) => columns.push(*c),
                Slot::Pair { kept, coeff, dropped } => {
                    if mask & (1 << choice) == 0 {
                        columns.push(*kept);
                        extra.push(coeff.clone());
                    } else {
                        columns.push(*dropped);
                        sign = -sign;
                    }
                    choice += 1;
                }
            }
        }
        match normalize(&columns)? {
            Normalized::Zero => {}
            Normalized::NonZero { sign: s, index } => {
                if s < 0 {
                    sign = -sign;
                }
                let mut mono = extra;
                mono.push(index);
                out.add_term(mono, sign);
            }
        }
    }
    Ok(out)
}

/// `σ_i` on a polynomial: multiplicative-additive extension of
/// [`sigma_var`].
pub fn sigma(i: usize, p: &PlueckerPoly) -> Result<PlueckerPoly, PlueckerError> {
    let m = p.width();
    if i < 1 || (m >= 2 && i > m - 1) {
        return Err(PlueckerError::BraidIndexOutOfRange { i, max: m.saturating_sub(1) });
    }
    let mut out = PlueckerPoly::zero(m);
    for (mono, coeff) in p.terms() {
        let mut term = PlueckerPoly::constant(m, coeff.clone());
        for idx in mono {
            term = term.mul(&sigma_var(i, idx)?)?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `σ_i` computed as `sh_{i-1} ∘ σ_1 ∘ sh_{1-i}`; agrees with
/// [`sigma`] term by term (used for cross-validation).
pub fn sigma_via_shift(i: usize, p: &PlueckerPoly) -> Result<PlueckerPoly, PlueckerError> {
    let m = p.width();
    if i < 1 || (m >= 2 && i > m - 1) {
        return Err(PlueckerError::BraidIndexOutOfRange { i, max: m.saturating_sub(1) });
    }
    let t = i as i64 - 1;
    Ok(sigma(1, &p.sh(-t))?.sh(t))
}

/// Apply a braid word to `p`, leftmost letter first.
pub fn sigma_word(word: &[usize], p: &PlueckerPoly) -> Result<PlueckerPoly, PlueckerError> {
    let mut cur = p.clone();
    for &i in word {
        cur = sigma(i, &cur)?;
    }
    Ok(cur)
}

/// Numeric configuration map `κ_i`: in every window fully contained in
/// the range (with the lookahead column), position `tm+i` receives the
/// old column `tm+i+1` and position `tm+i+1` receives
/// `(Δ_{(tm+i, tm+i+2..tm+i+m)} / Δ_{(tm+i+1..tm+i+m)}) · v_{tm+i+1} - v_{tm+i}`.
/// The declared output range shrinks by the width on the right.
pub fn kappa<F: FieldCtx>(c: &Config<F>, i: usize) -> Result<Config<F>, PlueckerError> {
    let m = c.width();
    if i < 1 || i > m - 1 {
        return Err(PlueckerError::BraidIndexOutOfRange { i, max: m - 1 });
    }
    let ctx = c.ctx().clone();
    let (lo, hi) = (c.lo(), c.hi());
    let new_hi = hi - m as i64;
    if new_hi < lo {
        return Err(PlueckerError::RangeTooShort { lo, hi, m });
    }
    let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity((new_hi - lo + 1) as usize);
    for j in lo..=new_hi {
        let r = residue(j, m);
        if r == i {
            // needs v_{j+1} .. v_{j+m} for this window's rewrite
            if j + m as i64 > hi {
                return Err(PlueckerError::WindowStraddle(j));
            }
            cols.push(c.column(j + 1)?.to_vec());
        } else if r == i + 1 {
            if j - 1 < lo {
                return Err(PlueckerError::WindowStraddle(j));
            }
            let num_sel: Vec<Vec<F::Elem>> = std::iter::once(j - 1)
                .chain((1..m as i64).map(|t| j + t))
                .map(|col| c.column(col).map(|x| x.to_vec()))
                .collect::<Result<_, _>>()?;
            let den_sel: Vec<Vec<F::Elem>> = (0..m as i64)
                .map(|t| c.column(j + t).map(|x| x.to_vec()))
                .collect::<Result<_, _>>()?;
            let num = crate::pluecker::det_columns(&ctx, &num_sel);
            let den = crate::pluecker::det_columns(&ctx, &den_sel);
            let ratio =
                ctx.mul(&num, &ctx.inv(&den).ok_or(PlueckerError::ZeroDenominator(j))?);
            let kept = c.column(j)?;
            let dropped = c.column(j - 1)?;
            cols.push(
                kept.iter()
                    .zip(dropped.iter())
                    .map(|(k, d)| ctx.sub(&ctx.mul(&ratio, k), d))
                    .collect(),
            );
        } else {
            cols.push(c.column(j)?.to_vec());
        }
    }
    Ok(Config::from_parts(ctx, m, lo, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::{eq_mod, EqOpts, P61};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn idx(v: &[i64]) -> MinorIndex {
        MinorIndex::new(v.to_vec()).unwrap()
    }

    fn var(v: &[i64]) -> PlueckerPoly {
        PlueckerPoly::var(idx(v))
    }

    #[test]
    fn sigma2_on_p134() {
        // raw expansion P_{2,4,5}P_{1,3,4} - P_{1,2,4}, equal to P_{1,4,5}
        let got = sigma_var(2, &idx(&[1, 3, 4])).unwrap();
        let raw = var(&[2, 4, 5]).mul(&var(&[1, 3, 4])).unwrap().sub(&var(&[1, 2, 4])).unwrap();
        assert_eq!(got, raw);
        assert!(eq_mod(&got, &var(&[1, 4, 5]), EqOpts::default()).unwrap());
    }

    #[test]
    fn sigma2_on_p235() {
        let got = sigma_var(2, &idx(&[2, 3, 5])).unwrap();
        assert_eq!(got, var(&[2, 3, 6]));
    }

    #[test]
    fn sigma_word_and_products() {
        // sigma_2(P_{1,3,4} P_{2,3,5} - 1) == P_{1,4,5} P_{2,3,6} - 1
        let p = var(&[1, 3, 4]).mul(&var(&[2, 3, 5])).unwrap().sub(&PlueckerPoly::one(3)).unwrap();
        let got = sigma(2, &p).unwrap();
        let expect = var(&[1, 4, 5]).mul(&var(&[2, 3, 6])).unwrap().sub(&PlueckerPoly::one(3)).unwrap();
        assert!(eq_mod(&got, &expect, EqOpts::default()).unwrap());
        // word application is leftmost-first
        let w = sigma_word(&[2, 1], &var(&[1, 3, 4])).unwrap();
        assert!(eq_mod(&w, &var(&[2, 4, 5]), EqOpts::default()).unwrap());
    }

    #[test]
    fn case_table_named_entries() {
        // class A entry at m=4: tuple (2,4,5,6) maps to P_{1,2,4,5}
        let j = gapped_tuple(1, 2, 4).unwrap();
        assert_eq!(j.entries(), &[2, 4, 5, 6]);
        let got = sigma_var(1, &j).unwrap();
        let expect = sigma1_table_expected(1, 2, 4).unwrap();
        assert_eq!(expect, var(&[1, 2, 4, 5]));
        assert!(eq_mod(&got, &expect, EqOpts::default()).unwrap());

        // class C entry at m=4: tuple (3,4,6,7); the coefficient is the
        // (1,2m)-tuple (5,7,8,9) and the expansion is exact
        let j = gapped_tuple(2, 5, 4).unwrap();
        assert_eq!(j.entries(), &[3, 4, 6, 7]);
        let got = sigma_var(1, &j).unwrap();
        let expect = var(&[5, 7, 8, 9])
            .mul(&var(&[3, 4, 6, 7]))
            .unwrap()
            .sub(&var(&[3, 4, 5, 7]))
            .unwrap();
        assert_eq!(got, expect);
        assert_eq!(sigma1_table_expected(2, 5, 4).unwrap(), expect);

        // fixed entry at m=4: tuple (3,5,6,7) contains both m+1 and m+2
        let j = gapped_tuple(1, 4, 4).unwrap();
        assert_eq!(j.entries(), &[3, 5, 6, 7]);
        assert_eq!(sigma_var(1, &j).unwrap(), PlueckerPoly::var(j.clone()));
        assert_eq!(sigma1_table_expected(1, 4, 4).unwrap(), PlueckerPoly::var(j));
    }

    #[test]
    fn case_table_full_small() {
        for m in 3..=4usize {
            for (a, b) in sigma1_table_cases(m) {
                let j = gapped_tuple(a, b, m).unwrap();
                let got = sigma_var(1, &j).unwrap();
                let expect = sigma1_table_expected(a, b, m).unwrap();
                assert!(
                    eq_mod(&got, &expect, EqOpts::default()).unwrap(),
                    "m={m} (a,b)=({a},{b}) tuple={j} got={got} expect={expect}"
                );
            }
        }
    }

    #[test]
    fn frozen_goes_to_one() {
        for m in 3..=5usize {
            for i in 1..m {
                for start in -1..=(2 * m as i64) {
                    let frozen = idx(&(start..start + m as i64).collect::<Vec<_>>());
                    let img = sigma_var(i, &frozen).unwrap();
                    assert!(
                        eq_mod(&img, &PlueckerPoly::one(m), EqOpts::default()).unwrap(),
                        "m={m} i={i} start={start}"
                    );
                }
            }
        }
    }

    #[test]
    fn conjugation_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for m in 3..=4usize {
            for _ in 0..40 {
                let mut set = std::collections::BTreeSet::new();
                while set.len() < m {
                    set.insert(rng.gen_range(-4..(3 * m as i64)));
                }
                let j = idx(&set.into_iter().collect::<Vec<_>>());
                let p = PlueckerPoly::var(j);
                for i in 1..m {
                    assert_eq!(
                        sigma(i, &p).unwrap(),
                        sigma_via_shift(i, &p).unwrap(),
                        "m={m} i={i} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn sigma_commutes_with_shm_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for m in 3..=4usize {
            for _ in 0..30 {
                let mut set = std::collections::BTreeSet::new();
                while set.len() < m {
                    set.insert(rng.gen_range(1..(3 * m as i64 + 1)));
                }
                let p = PlueckerPoly::var(idx(&set.into_iter().collect::<Vec<_>>()));
                for i in 1..m {
                    let lhs = sigma(i, &p.sh(m as i64)).unwrap();
                    let rhs = sigma(i, &p).unwrap().sh(m as i64);
                    assert_eq!(lhs, rhs, "m={m} i={i}");
                }
            }
        }
    }

    #[test]
    fn kappa_wedge_constraint() {
        // v_{tm+i} ∧ v_{tm+i+1} = v_{tm+i+1} ∧ w in every rewritten window
        for m in 3..=4usize {
            for i in 1..m {
                let cfg = Config::random_normalized_fp(77, 1, (4 * m) as i64, m, P61).unwrap();
                let out = kappa(&cfg, i).unwrap();
                let ctx = *cfg.ctx();
                let mut t = 0i64;
                loop {
                    let j = t * m as i64 + i as i64;
                    if j < cfg.lo() || j + m as i64 > cfg.hi() || j + 1 > out.hi() {
                        if j > cfg.hi() {
                            break;
                        }
                        t += 1;
                        continue;
                    }
                    let v_old = cfg.column(j).unwrap();
                    let v_next = cfg.column(j + 1).unwrap();
                    let w = out.column(j + 1).unwrap();
                    // 2-form equality componentwise
                    for a in 0..m {
                        for b in (a + 1)..m {
                            let lhs = ctx.sub(
                                &ctx.mul(&v_old[a], &v_next[b]),
                                &ctx.mul(&v_old[b], &v_next[a]),
                            );
                            let rhs = ctx.sub(
                                &ctx.mul(&v_next[a], &w[b]),
                                &ctx.mul(&v_next[b], &w[a]),
                            );
                            assert_eq!(lhs, rhs, "m={m} i={i} window at {j}");
                        }
                    }
                    t += 1;
                }
            }
        }
    }

    #[test]
    fn kappa_matches_sigma_numerically() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for m in 3..=4usize {
            for trial in 0..25 {
                let lo = 1i64 - m as i64; // window-aligned margin on the left
                let hi = (4 * m) as i64;
                let cfg = Config::random_normalized_fp(500 + trial, lo, hi, m, P61).unwrap();
                let i = rng.gen_range(1..m);
                let out = kappa(&cfg, i).unwrap();
                let mut set = std::collections::BTreeSet::new();
                while set.len() < m {
                    set.insert(rng.gen_range(1..=(2 * m as i64)));
                }
                let j = idx(&set.into_iter().collect::<Vec<_>>());
                let sym = sigma_var(i, &j).unwrap();
                let lhs = cfg.evaluate(&sym).unwrap();
                let rhs = out.minor(&j).unwrap();
                assert_eq!(lhs, rhs, "m={m} i={i} J={j}");
            }
        }
    }
}
