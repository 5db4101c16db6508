//! Dictionaries between the three pictures: `Φ_n` sends fundamental
//! classes to Plücker variables, `φ` sends graded segments to
//! fundamental indices, and the commuting-diagram verifiers check that
//! the braid maps agree across the dictionaries.
//!
//! The image of a *general* simple class on the Plücker side is not
//! determined here; translation exposes fundamentals, literal products
//! of fundamentals, and an explicit rank-2 lookup table. The crystal
//! commuting check is restricted to those.

use crate::braid_sigma::sigma;
use crate::exec;
use crate::ext_crystal::ExtElement;
use crate::grothendieck::{DominantMonomial, FundIndex, KPoly, KRingError};
use crate::ms_crystal::CrystalError;
use crate::pluecker::{
    eq_mod_witness, EqOpts, EqWitness, MinorIndex, PlueckerError, PlueckerPoly,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TranslationError {
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    KRing(#[from] KRingError),
    #[error(transparent)]
    Pluecker(#[from] PlueckerError),
    #[error("no known Plücker image for simple class {0}")]
    UnknownSimpleImage(String),
    #[error("segment [{a},{b}] out of rank {n}")]
    SegmentOutOfRank { a: usize, b: usize, n: usize },
}

/// The index tuple attached to a fundamental class: `(1..i, i+2..m+1)`
/// translated by `(a-i+1)/2`, with `m = n+1`. Never frozen, since
/// `i ≤ n < m` leaves the gap.
pub fn phi_tuple(f: FundIndex, n: usize) -> Result<MinorIndex, TranslationError> {
    let f = FundIndex::new(f.i, f.a, n)?;
    Ok(crate::braid_sigma::gapped_tuple(f.i, f.a, n + 1)?)
}

/// `Φ_n`: variable-wise [`phi_tuple`], extended as a ring
/// homomorphism into the width-`n+1` quotient algebra.
pub fn phi(p: &KPoly) -> Result<PlueckerPoly, TranslationError> {
    let n = p.rank();
    let m = n + 1;
    let mut out = PlueckerPoly::zero(m);
    for (mono, coeff) in p.terms() {
        let mut term = PlueckerPoly::constant(m, coeff.clone());
        for (f, e) in mono {
            let v = PlueckerPoly::var(phi_tuple(*f, n)?);
            term = term.mul(&v.pow(*e)?)?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// The crystal dictionary on segments:
/// `[a,b]_k -> D^k(b-a+1, a+b-2)`.
pub fn seg_to_fund(a: usize, b: usize, k: i64, n: usize) -> Result<FundIndex, TranslationError> {
    if a < 1 || a > b || b > n {
        return Err(TranslationError::SegmentOutOfRank { a, b, n });
    }
    let base = FundIndex::new(b - a + 1, a as i64 + b as i64 - 2, n)?;
    Ok(base.dual_pow(k, n))
}

/// Inverse dictionary on indices: a fundamental index corresponds to
/// the graded segment `[(p-i+3)/2, (p+i+1)/2]_k` through its base
/// `(i,p)` in the fundamental window.
pub fn fund_to_seg(f: FundIndex, n: usize) -> Result<(usize, usize, i64), TranslationError> {
    let f = FundIndex::new(f.i, f.a, n)?;
    let (k, base) = crate::grothendieck::locate(f, n);
    let a = (base.a - base.i as i64 + 3) / 2;
    let b = (base.a + base.i as i64 + 1) / 2;
    Ok((a as usize, b as usize, k))
}

/// Inverse of [`ext_to_monomial`]: rebuild the extended-crystal
/// element whose graded segments multiply to `m`.
pub fn monomial_to_ext(m: &DominantMonomial) -> Result<ExtElement, TranslationError> {
    let n = m.rank();
    let mut out = ExtElement::one(n)?;
    for (f, e) in m.vars() {
        let (a, b, k) = fund_to_seg(f, n)?;
        let mut entry = out.entry(k);
        entry.add(crate::ms_crystal::Segment::new(a, b, n)?, e as u64);
        out.set(k, entry)?;
    }
    Ok(out)
}

/// Product over all graded segments of their fundamental images.
pub fn ext_to_monomial(b: &ExtElement) -> Result<DominantMonomial, TranslationError> {
    let n = b.rank();
    let mut out = DominantMonomial::unit(n);
    for k in b.support().collect::<Vec<_>>() {
        for (seg, mult) in b.entry(k).iter() {
            let f = seg_to_fund(seg.start(), seg.end(), k, n)?;
            out.mul_var(f, mult as u32);
        }
    }
    Ok(out)
}

fn pvar(v: &[i64]) -> PlueckerPoly {
    PlueckerPoly::var(MinorIndex::new(v.to_vec()).expect("static index"))
}

/// The rank-2 lookup table of known simple-class images, at their base
/// spectral positions. Shifted copies are recognized through
/// `Φ ∘ S_k = sh_k ∘ Φ`.
fn rank2_table() -> Vec<(DominantMonomial, PlueckerPoly)> {
    let mono =
        |vars: &[(usize, i64, u32)]| DominantMonomial::from_vars(2, vars).expect("static");
    vec![
        (
            mono(&[(1, 2, 1), (1, 0, 1)]),
            pvar(&[1, 4, 5]),
        ),
        (
            mono(&[(2, 5, 1), (2, 3, 1)]),
            pvar(&[2, 3, 6]),
        ),
        (
            mono(&[(2, 5, 1), (1, 2, 1), (1, 0, 1)]),
            pvar(&[1, 4, 6]),
        ),
        // the exact-sequence identity for the dual pair
        (
            mono(&[(2, 3, 1), (1, 0, 1)]),
            pvar(&[1, 3, 4])
                .mul(&pvar(&[2, 3, 5]))
                .expect("same width")
                .sub(&PlueckerPoly::one(3))
                .expect("same width"),
        ),
        (
            mono(&[(2, 5, 1), (2, 3, 1), (1, 2, 1), (1, 0, 1)]),
            pvar(&[1, 4, 5])
                .mul(&pvar(&[2, 3, 6]))
                .expect("same width")
                .sub(&PlueckerPoly::one(3))
                .expect("same width"),
        ),
    ]
}

/// Plücker image of a simple class, where determined: the trivial
/// class, fundamentals at any rank, and the rank-2 table up to
/// spectral shift. `None` when the image is not known.
pub fn phi_of_simple(m: &DominantMonomial) -> Result<Option<PlueckerPoly>, TranslationError> {
    let n = m.rank();
    if m.is_unit() {
        return Ok(Some(PlueckerPoly::one(n + 1)));
    }
    if m.total_degree() == 1 {
        let (f, _) = m.vars().next().expect("nonempty");
        return Ok(Some(PlueckerPoly::var(phi_tuple(f, n)?)));
    }
    if n != 2 {
        return Ok(None);
    }
    let min_a = m.vars().map(|(f, _)| f.a).min().expect("nonempty");
    for (key, poly) in rank2_table() {
        let key_min = key.vars().map(|(f, _)| f.a).min().expect("nonempty");
        if (min_a - key_min) % 2 != 0 {
            continue;
        }
        let t = (min_a - key_min) / 2;
        if key.shift(t) == *m {
            return Ok(Some(poly.sh(t)));
        }
    }
    Ok(None)
}

/// One verified case of a commuting-diagram check.
#[derive(Clone, Debug, Serialize)]
pub struct CommuteCase {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<EqWitness>,
}

/// Batch report; `cases` keeps input order.
#[derive(Clone, Debug, Serialize)]
pub struct CommuteReport {
    pub n: usize,
    pub i: usize,
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
    pub cases: Vec<CommuteCase>,
}

impl CommuteReport {
    pub fn all_equal(&self) -> bool {
        self.cases.iter().all(|c| c.equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CommuteCase> {
        self.cases.iter().filter(|c| !c.equal)
    }
}

/// Verify `Φ ∘ T_i = σ_i ∘ Φ` on every fundamental `Y_{j,a}` with `a`
/// in the window. Failures are report entries with a witness
/// configuration, not errors.
pub fn commute_check(
    i: usize,
    n: usize,
    window: (i64, i64),
    opts: EqOpts,
) -> Result<CommuteReport, TranslationError> {
    if i < 1 || i > n {
        return Err(KRingError::IndexOutOfRange { i, n }.into());
    }
    let mut inputs = Vec::new();
    for j in 1..=n {
        for a in window.0..=window.1 {
            if (a - j as i64).rem_euclid(2) == 1 {
                inputs.push(FundIndex { i: j, a });
            }
        }
    }
    let cases = exec::par_map(inputs, move |f| -> Result<CommuteCase, TranslationError> {
        let var = KPoly::var(f, n)?;
        let lhs = phi(&var.braid_t(i)?)?;
        let rhs = sigma(i, &phi(&var)?)?;
        let witness = eq_mod_witness(&lhs, &rhs, opts)?;
        Ok(CommuteCase {
            case: f.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            equal: witness.is_none(),
            witness,
        })
    });
    let cases = cases.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CommuteReport {
        n,
        i,
        trials: opts.trials,
        prime: opts.prime,
        seed: opts.seed,
        cases,
    })
}

/// Verify `Φ ∘ R_i = σ_i ∘ Φ` on extended-crystal elements whose
/// Plücker image is known. A case with unknown image on either side is
/// rejected with a diagnostic error.
pub fn crystal_commute_check(
    i: usize,
    n: usize,
    cases: &[ExtElement],
    opts: EqOpts,
) -> Result<CommuteReport, TranslationError> {
    let work: Vec<(String, ExtElement)> =
        cases.iter().map(|b| (b.to_string(), b.clone())).collect();
    let results = exec::par_map(work, move |(label, b)| -> Result<CommuteCase, TranslationError> {
        let before = ext_to_monomial(&b)?;
        let lhs_base = phi_of_simple(&before)?
            .ok_or_else(|| TranslationError::UnknownSimpleImage(before.to_string()))?;
        let after = ext_to_monomial(&b.braid_r(i)?)?;
        let rhs = phi_of_simple(&after)?
            .ok_or_else(|| TranslationError::UnknownSimpleImage(after.to_string()))?;
        let lhs = sigma(i, &lhs_base)?;
        let witness = eq_mod_witness(&lhs, &rhs, opts)?;
        Ok(CommuteCase {
            case: label,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            equal: witness.is_none(),
            witness,
        })
    });
    let cases = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CommuteReport {
        n,
        i,
        trials: opts.trials,
        prime: opts.prime,
        seed: opts.seed,
        cases,
    })
}

/// One entry of the rank-2 worked-identity suite: a named identity
/// between two width-3 quotient elements.
fn example63_identities() -> Vec<(&'static str, PlueckerPoly, PlueckerPoly)> {
    let p134 = pvar(&[1, 3, 4]);
    let p235 = pvar(&[2, 3, 5]);
    let one = PlueckerPoly::one(3);
    let s2_p134 = sigma(2, &p134).expect("static");
    let five_term = one
        .neg()
        .add(&pvar(&[1, 2, 4]).mul(&pvar(&[3, 5, 6])).expect("w"))
        .expect("w")
        .sub(
            &p134
                .mul(&pvar(&[2, 4, 5]))
                .expect("w")
                .mul(&pvar(&[3, 5, 6]))
                .expect("w"),
        )
        .expect("w")
        .sub(
            &pvar(&[1, 2, 4])
                .mul(&p235)
                .expect("w")
                .mul(&pvar(&[3, 4, 6]))
                .expect("w"),
        )
        .expect("w")
        .add(
            &p134
                .mul(&p235)
                .expect("w")
                .mul(&pvar(&[2, 4, 5]))
                .expect("w")
                .mul(&pvar(&[3, 4, 6]))
                .expect("w"),
        )
        .expect("w");
    vec![
        ("sigma_2(P_{1,3,4}) = P_{1,4,5}", s2_p134.clone(), pvar(&[1, 4, 5])),
        (
            "sigma_2(P_{2,3,5}) = P_{2,3,6}",
            sigma(2, &p235).expect("static"),
            pvar(&[2, 3, 6]),
        ),
        (
            "sigma_1 sigma_2(P_{1,3,4}) = P_{2,4,5}",
            sigma(1, &s2_p134).expect("static"),
            pvar(&[2, 4, 5]),
        ),
        (
            "sigma_2^2(P_{1,3,4}) = P_{1,4,6}",
            sigma(2, &s2_p134).expect("static"),
            pvar(&[1, 4, 6]),
        ),
        (
            "sigma_2(P_{1,3,4}P_{2,3,5} - 1) = P_{1,4,5}P_{2,3,6} - 1",
            sigma(
                2,
                &p134.mul(&p235).expect("w").sub(&PlueckerPoly::one(3)).expect("w"),
            )
            .expect("static"),
            pvar(&[1, 4, 5]).mul(&pvar(&[2, 3, 6])).expect("w").sub(&PlueckerPoly::one(3)).expect("w"),
        ),
        (
            "P_{1,4,5}P_{2,3,6} - 1 expands to the 5-term alternating sum",
            pvar(&[1, 4, 5]).mul(&pvar(&[2, 3, 6])).expect("w").sub(&PlueckerPoly::one(3)).expect("w"),
            five_term,
        ),
    ]
}

/// The rank-2 worked-identity suite (`n = 2`, width 3), reported case
/// by case with witnesses on failure.
pub fn example63_suite(opts: EqOpts) -> Result<CommuteReport, TranslationError> {
    let work = example63_identities();
    let cases = exec::par_map(work, move |(name, lhs, rhs)| -> Result<CommuteCase, TranslationError> {
        let witness = eq_mod_witness(&lhs, &rhs, opts)?;
        Ok(CommuteCase {
            case: name.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            equal: witness.is_none(),
            witness,
        })
    });
    let cases = cases.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CommuteReport {
        n: 2,
        i: 2,
        trials: opts.trials,
        prime: opts.prime,
        seed: opts.seed,
        cases,
    })
}
