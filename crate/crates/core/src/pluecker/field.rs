//! Field contexts for configuration arithmetic: a prime field with
//! runtime modulus (default `2^61 - 1`) and the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Field operations routed through a context value, so the prime
/// modulus can be chosen at runtime.
pub trait FieldCtx: Clone + Send + Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

/// The prime field `F_p` with `p` fitting in 64 bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2, "modulus must be an odd prime");
        Fp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl FieldCtx for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b; // p < 2^63, no overflow
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        let p = self.p as i128;
        Some((((s0 % p) + p) % p) as u64)
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// The rational field, for fully exact evaluation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl FieldCtx for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(-99i64..=99)))
    }
}

/// Determinant over a field context by Gaussian elimination; `mat` is
/// a square matrix given as columns.
pub(crate) fn det_columns<F: FieldCtx>(ctx: &F, cols: &[Vec<F::Elem>]) -> F::Elem {
    let n = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == n));
    // row-major working copy
    let mut a: Vec<Vec<F::Elem>> = (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect();
    let mut det = ctx.one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !ctx.is_zero(&a[r][col])) {
            Some(p) => p,
            None => return ctx.zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = ctx.neg(&det);
        }
        let inv = ctx.inv(&a[col][col]).expect("nonzero pivot");
        det = ctx.mul(&det, &a[col][col]);
        for r in (col + 1)..n {
            if ctx.is_zero(&a[r][col]) {
                continue;
            }
            let factor = ctx.mul(&a[r][col], &inv);
            for c in col..n {
                let t = ctx.mul(&factor, &a[col][c]);
                a[r][c] = ctx.sub(&a[r][c], &t);
            }
        }
    }
    det
}
