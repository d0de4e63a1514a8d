//! Closed rational intervals with outward rounding, used wherever a
//! comparison involves `d`-th roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Default and minimum working precision for root enclosures, in bits.
pub const START_PRECISION: u32 = 128;
/// Default precision cap; `SUMSETLAB_PRECISION_CAP` overrides it.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// Precision cap from `SUMSETLAB_PRECISION_CAP`, clamped to at least [`START_PRECISION`].
pub fn precision_cap() -> u32 {
    std::env::var("SUMSETLAB_PRECISION_CAP")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map_or(DEFAULT_PRECISION_CAP, |v| v.max(START_PRECISION))
}

/// The precision ladder `128, 256, …` up to and including `cap`.
pub fn precision_ladder(cap: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut bits = START_PRECISION;
    while bits < cap {
        out.push(bits);
        bits = bits.saturating_mul(2);
    }
    out.push(cap.max(START_PRECISION));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn exact(value: Rational) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().expect("non-empty").clone();
        let hi = products.iter().max().expect("non-empty").clone();
        Interval { lo, hi }
    }

    pub fn pow(&self, exp: u32) -> Interval {
        let mut acc = Interval::exact(Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn exact_root(value: &BigInt, n: u32) -> Option<BigInt> {
    let r = value.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *value).then_some(r)
}

/// Encloses `x^(1/n)` for `x ≥ 0` in an interval of width at most `2^-bits`;
/// the enclosure is a point when the root is rational.
pub fn nth_root(x: &Rational, n: u32, bits: u32) -> Interval {
    assert!(!x.is_negative(), "root of a negative number");
    assert!(n >= 1);
    if let (Some(p), Some(q)) = (exact_root(x.numer(), n), exact_root(x.denom(), n)) {
        return Interval::exact(Rational::new(p, q));
    }
    let scale = BigInt::one() << (bits as usize * n as usize);
    let floor = (x.numer() * &scale) / x.denom();
    let r = floor.nth_root(n);
    let unit = BigInt::one() << bits as usize;
    Interval {
        lo: Rational::new(r.clone(), unit.clone()),
        hi: Rational::new(r + 1, unit),
    }
}

/// Sign of `value` if the interval excludes zero.
pub fn certified_sign(value: &Interval) -> Option<std::cmp::Ordering> {
    if value.lo > Rational::zero() {
        Some(std::cmp::Ordering::Greater)
    } else if value.hi < Rational::zero() {
        Some(std::cmp::Ordering::Less)
    } else if value.is_exact() {
        Some(std::cmp::Ordering::Equal)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn perfect_powers_are_exact() {
        assert_eq!(nth_root(&int(27), 3, 128), Interval::exact(int(3)));
        assert_eq!(nth_root(&ratio(4, 9), 2, 128), Interval::exact(ratio(2, 3)));
        assert_eq!(nth_root(&int(0), 2, 128), Interval::exact(int(0)));
    }

    #[test]
    fn irrational_roots_are_enclosed() {
        for bits in [8, 64, 256] {
            let iv = nth_root(&int(2), 2, bits);
            assert!(&iv.lo * &iv.lo < int(2));
            assert!(&iv.hi * &iv.hi > int(2));
            assert_eq!(iv.width(), Rational::new(BigInt::one(), BigInt::one() << bits as usize));
        }
        let cube = nth_root(&ratio(7, 5), 3, 100);
        assert!(cube.lo.pow(3) < ratio(7, 5) && cube.hi.pow(3) > ratio(7, 5));
    }

    #[test]
    fn ladder_doubles_to_cap() {
        assert_eq!(precision_ladder(4096), vec![128, 256, 512, 1024, 2048, 4096]);
        assert_eq!(precision_ladder(128), vec![128]);
        assert_eq!(precision_ladder(300), vec![128, 256, 300]);
    }

    #[test]
    fn arithmetic_is_outward() {
        let a = Interval { lo: int(-1), hi: int(2) };
        let b = Interval { lo: int(3), hi: int(4) };
        assert_eq!(a.mul(&b), Interval { lo: int(-4), hi: int(8) });
        assert_eq!(a.sub(&b), Interval { lo: int(-5), hi: int(-1) });
        assert_eq!(b.pow(2), Interval { lo: int(9), hi: int(16) });
    }
}
