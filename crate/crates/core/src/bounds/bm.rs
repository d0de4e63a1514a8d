use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::certificate::{decide, Bound, Certificate, Relation, StatementId, Verdict};
use crate::error::{check_dim, Result};
use crate::geometry::projection_size;
use crate::interval::{nth_root, precision_cap, precision_ladder, Interval};
use crate::io::digest_point_set;
use crate::linalg::Basis;
use crate::point::PointSet;
use crate::rational::Rational;
use crate::sumset::minkowski_sum;

use super::common_dim;

fn count(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `Σ_{I ⊊ [d]} (k − 1)^{d − |I|} |π_I(ΣA_i)|` with projections taken in `basis`.
fn correction(total: &PointSet, basis: &Basis, k: usize) -> Rational {
    let d = total.dim();
    let km1 = BigInt::from(k - 1);
    let mut sum = BigInt::from(0);
    for mask in 0u32..(1u32 << d) - 1 {
        let keep: BTreeSet<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        let weight = num_traits::pow(km1.clone(), d - keep.len());
        if weight == BigInt::from(0) {
            continue;
        }
        sum += weight * BigInt::from(projection_size(total, basis, &keep));
    }
    Rational::from_integer(sum)
}

/// Splits `n = c^d · r` with `r` free of `d`-th powers of primes below `10^6`.
fn split_power(mut n: u64, d: u32) -> (u64, u64) {
    let mut c = 1u64;
    let mut r = 1u64;
    let mut p = 2u64;
    while p * p <= n && p < 1_000_000 {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        c *= p.pow(e / d);
        r *= p.pow(e % d);
        p += 1;
    }
    (c, r * n)
}

/// `(Σ|A_i|^{1/d})^d`. Roots sharing the same `d`-th-power-free part are
/// combined first, so the result is exact whenever only one radical occurs.
fn main_term(sizes: &[usize], d: usize, bits: u32) -> Interval {
    let mut groups: BTreeMap<u64, u64> = BTreeMap::new();
    for &s in sizes {
        let (c, r) = split_power(s as u64, d as u32);
        *groups.entry(r).or_default() += c;
    }
    if let [(r, c)] = groups.iter().collect::<Vec<_>>()[..] {
        let exact = num_traits::pow(BigInt::from(*c), d) * BigInt::from(*r);
        return Interval::exact(Rational::from_integer(exact));
    }
    let sum = groups
        .iter()
        .map(|(&r, &c)| nth_root(&count(r as usize), d as u32, bits).mul(&Interval::exact(count(c as usize))))
        .fold(Interval::exact(Rational::from_integer(BigInt::from(0))), |acc, x| acc.add(&x));
    sum.pow(d as u32)
}

/// Discrete Brunn–Minkowski:
/// `|ΣA_i| ≥ (Σ|A_i|^{1/d})^d − Σ_{I ⊊ [d]} (k − 1)^{d−|I|} |π_I(ΣA_i)|`.
///
/// The right-hand side is enclosed at 128 bits, doubling up to the precision
/// cap until the comparison separates.
pub fn check_discrete_bm(sets: &[PointSet], basis: &Basis) -> Result<Certificate> {
    check_discrete_bm_with_cap(sets, basis, precision_cap())
}

pub fn check_discrete_bm_with_cap(sets: &[PointSet], basis: &Basis, cap: u32) -> Result<Certificate> {
    let d = common_dim(sets)?;
    check_dim(d, basis.dim())?;
    let k = sets.len();
    let total = minkowski_sum(sets)?;
    let lhs = Bound::Exact(count(total.len()));
    let corr = Interval::exact(correction(&total, basis, k));
    let sizes: Vec<usize> = sets.iter().map(PointSet::len).collect();
    let ladder = precision_ladder(cap);
    let mut last = None;
    for &bits in &ladder {
        let rhs = main_term(&sizes, d, bits).sub(&corr);
        let rhs = if rhs.is_exact() { Bound::Exact(rhs.lo) } else { Bound::Interval(rhs) };
        let exact = matches!(rhs, Bound::Exact(_));
        let verdict = decide(Relation::AtLeast, &lhs, &rhs);
        let cert = Certificate::new(StatementId::DiscreteBm, Relation::AtLeast, lhs.clone(), rhs)
            .with_inputs(sets.iter().map(digest_point_set))
            .with_detail("k", k)
            .with_detail("d", d);
        if exact {
            return Ok(cert);
        }
        let cert = cert.with_precision(bits);
        if verdict != Verdict::Indeterminate {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.expect("ladder is non-empty"))
}
