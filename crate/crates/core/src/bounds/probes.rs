//! Probes for statements whose error terms carry non-effective constants.
//! They report observations; none of them ever returns `Violated`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value as Json};

use crate::certificate::{decide, rational_to_f64, Bound, Certificate, Relation, StatementId, Verdict};
use crate::error::{check_dim, Error, Result};
use crate::interval::{nth_root, precision_cap, precision_ladder, Interval};
use crate::io::{digest_point_set, digest_system};
use crate::linalg::LinearSystem;
use crate::point::PointSet;
use crate::poly::Polynomial;
use crate::rational::{format_rational, Rational};
use crate::structure::decide_irreducible;
use crate::sumset::{iterated_sumset_sizes, weighted_sumset};

use super::{freiman_kfold_bound, informational, is_zero_or_less, require_full_dimensional};

fn count(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn log_ratio(deficit: &Rational, size: usize) -> f64 {
    if size <= 1 || is_zero_or_less(deficit) {
        return 0.0;
    }
    let d = rational_to_f64(deficit).max(1.0);
    d.ln() / (size as f64).ln()
}

/// Compares `|L_1(A) + … + L_k(A)|` with the main term `k^d|A|`.
///
/// The certificate carries the exact deficit `D = k^d|A| − |ΣL_i(A)|` and the
/// exponent `log max(D, 1) / log |A|`. The verdict is `Holds` when `D ≤ 0`
/// and `Indeterminate` otherwise.
pub fn main_term_probe(system: &LinearSystem, a: &PointSet) -> Result<Certificate> {
    check_dim(system.dim(), a.dim())?;
    a.require_nonempty("set")?;
    let d = system.dim();
    let k = system.len();
    let total = count(weighted_sumset(system, a)?.len());
    let main = Rational::from_integer(num_traits::pow(BigInt::from(k), d)) * count(a.len());
    let deficit = &main - &total;
    let irreducible = decide_irreducible(system)?;
    let holds = is_zero_or_less(&deficit);
    let cert = Certificate::exact(StatementId::MainTerm, Relation::AtLeast, total, main)
        .with_inputs([digest_system(system), digest_point_set(a)])
        .with_detail("deficit", format_rational(&deficit))
        .with_detail("exponent", format!("{:.6}", log_ratio(&deficit, a.len())))
        .with_detail("irreducibility", format!("{:?}", irreducible.status));
    Ok(informational(cert, holds))
}

/// Local log-log slope of the deficit between two instances,
/// `log(D_2/D_1) / log(|A_2|/|A_1|)`.
pub fn local_growth_exponent(first: (usize, &Rational), second: (usize, &Rational)) -> Result<f64> {
    let (s1, d1) = first;
    let (s2, d2) = second;
    if s1 == s2 || s1 == 0 || s2 == 0 || !d1.is_positive() || !d2.is_positive() {
        return Err(Error::InvalidArgument(
            "slope needs distinct sizes and positive deficits".into(),
        ));
    }
    let ratio = rational_to_f64(&(d2 / d1));
    Ok(ratio.ln() / (s2 as f64 / s1 as f64).ln())
}

/// `Λ = (Σ|det L_i|^{1/d})^d`, enclosed at `bits` of precision.
pub fn determinant_constant(system: &LinearSystem, bits: u32) -> Interval {
    let d = system.dim() as u32;
    system
        .maps()
        .iter()
        .map(|m| nth_root(&m.determinant().abs(), d, bits))
        .fold(Interval::exact(Rational::zero()), |acc, r| acc.add(&r))
        .pow(d)
}

/// Compares `|ΣL_i(A)|` with `Λ|A|`. `Holds` once the enclosure certifies
/// `|ΣL_i(A)| ≥ Λ|A|`, otherwise `Indeterminate`.
pub fn determinant_probe(system: &LinearSystem, a: &PointSet) -> Result<Certificate> {
    check_dim(system.dim(), a.dim())?;
    a.require_nonempty("set")?;
    let total = count(weighted_sumset(system, a)?.len());
    let lhs = Bound::Exact(total.clone());
    let mut last = None;
    for bits in precision_ladder(precision_cap()) {
        let rhs_iv = determinant_constant(system, bits).mul(&Interval::exact(count(a.len())));
        let deficit = rhs_iv.sub(&Interval::exact(total.clone()));
        let rhs = if rhs_iv.is_exact() { Bound::Exact(rhs_iv.lo.clone()) } else { Bound::Interval(rhs_iv) };
        let exact = matches!(rhs, Bound::Exact(_));
        let verdict = decide(Relation::AtLeast, &lhs, &rhs);
        let mut cert = Certificate::new(StatementId::DeterminantMainTerm, Relation::AtLeast, lhs.clone(), rhs)
            .with_inputs([digest_system(system), digest_point_set(a)])
            .with_detail("exponent", format!("{:.6}", log_ratio(&deficit.hi, a.len())));
        if !exact {
            cert = cert.with_precision(bits);
        }
        let cert = informational(cert, verdict == Verdict::Holds);
        if exact || verdict != Verdict::Indeterminate {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.expect("ladder is non-empty"))
}

/// Result of fitting the eventual polynomial `P_A` to `|kA|`.
#[derive(Clone, Debug)]
pub struct KhovanskiiReport {
    pub sizes: Vec<usize>,
    /// First `k` from which the computed sizes follow `polynomial`.
    pub threshold: Option<usize>,
    pub polynomial: Option<Polynomial>,
    /// `Q_A(k) = binom(k+d−1, d)|A| − (k−1)binom(k+d−1, d−1)`.
    pub lower_polynomial: Polynomial,
    pub certificate: Certificate,
}

impl KhovanskiiReport {
    pub fn to_json(&self) -> Json {
        json!({
            "sizes": self.sizes,
            "threshold": self.threshold,
            "polynomial": self.polynomial.as_ref().map(ToString::to_string),
            "lower_polynomial": self.lower_polynomial.to_string(),
            "certificate": self.certificate.to_json(),
        })
    }
}

/// `(d+1)`-th forward differences of `values` all vanish.
fn fits_degree(values: &[Rational], d: usize) -> bool {
    let mut diffs = values.to_vec();
    for _ in 0..=d {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    diffs.iter().all(Zero::is_zero)
}

/// Computes `|kA|` for `k = 1..=k_max`, finds the earliest `k` from which the
/// tail is a polynomial of degree at most `d` and compares it with `Q_A` on
/// the fitted range.
pub fn khovanskii_probe(a: &PointSet, k_max: usize) -> Result<KhovanskiiReport> {
    let d = require_full_dimensional(a)?;
    if k_max < d + 2 {
        return Err(Error::InvalidArgument(format!(
            "k_max must be at least d + 2 = {} to fit a degree-{d} polynomial",
            d + 2
        )));
    }
    let sizes = iterated_sumset_sizes(a, k_max)?;
    let values: Vec<Rational> = sizes.iter().map(|&s| count(s)).collect();
    let q_values: Vec<Rational> = (1..=d + 2).map(|k| freiman_kfold_bound(d, a.len(), k)).collect();
    let lower = Polynomial::from_consecutive_values(1, &q_values);
    let threshold = (1..=k_max - d - 1).find(|&t| fits_degree(&values[t - 1..], d));
    let digest = digest_point_set(a);
    let Some(t) = threshold else {
        let last = values.last().expect("k_max >= 1").clone();
        let cert = Certificate::exact(StatementId::Khovanskii, Relation::AtLeast, last, lower.eval(&count(k_max)))
            .with_inputs([digest])
            .with_verdict(Verdict::Indeterminate)
            .with_detail("stabilised", false);
        return Ok(KhovanskiiReport { sizes, threshold, polynomial: None, lower_polynomial: lower, certificate: cert });
    };
    let poly = Polynomial::from_consecutive_values(t as i64, &values[t - 1..]);
    let (k_star, _) = (t..=k_max)
        .map(|k| (k, poly.eval(&count(k)) - lower.eval(&count(k))))
        .min_by(|x, y| x.1.cmp(&y.1))
        .expect("non-empty range");
    let kr = count(k_star);
    let cert = Certificate::exact(StatementId::Khovanskii, Relation::AtLeast, poly.eval(&kr), lower.eval(&kr))
        .with_inputs([digest])
        .with_detail("k", k_star)
        .with_detail("threshold", t)
        .with_detail("degree", poly.degree().map_or(0, |x| x.to_i64().unwrap_or(0)))
        .with_detail("polynomial", &poly)
        .with_detail("equals_lower", poly == lower);
    Ok(KhovanskiiReport { sizes, threshold, polynomial: Some(poly), lower_polynomial: lower, certificate: cert })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cube, long_simplex, rotation_system};
    use crate::linalg::RationalMatrix;
    use crate::rational::int;

    #[test]
    fn rotation_deficit() {
        let sys = rotation_system(2).unwrap();
        for n in 1..=4u32 {
            let c = main_term_probe(&sys, &cube(2, n).unwrap()).unwrap();
            assert_eq!(c.details["deficit"], (8 * n + 3).to_string());
            assert_eq!(c.verdict, Verdict::Indeterminate);
            assert_eq!(c.details["irreducibility"], "Irreducible");
        }
    }

    #[test]
    fn identity_has_no_deficit() {
        let sys = LinearSystem::new(vec![RationalMatrix::identity(1)]).unwrap();
        let a = PointSet::from_ints(1, &[&[0], &[4], &[9]]).unwrap();
        let c = main_term_probe(&sys, &a).unwrap();
        assert_eq!(c.details["deficit"], "0");
        assert!(c.holds());
    }

    #[test]
    fn slope_of_linear_deficit() {
        let s = |n: i64| ((2 * n + 1) * (2 * n + 1)) as usize;
        let e = local_growth_exponent((s(19), &int(155)), (s(20), &int(163))).unwrap();
        assert!((e - 0.5).abs() < 0.01, "{e}");
    }

    #[test]
    fn determinant_constant_of_rotations() {
        let sys = rotation_system(3).unwrap();
        assert_eq!(determinant_constant(&sys, 128), Interval::exact(int(27)));
        let c = determinant_probe(&sys, &cube(3, 1).unwrap()).unwrap();
        assert_eq!(c.rhs, Bound::Exact(int(27 * 27)));
        assert_ne!(c.verdict, Verdict::Violated);
    }

    #[test]
    fn khovanskii_on_a24() {
        let r = khovanskii_probe(&long_simplex(2, 4).unwrap(), 6).unwrap();
        assert_eq!(r.sizes, vec![4, 9, 16, 25, 36, 49]);
        assert_eq!(r.threshold, Some(1));
        let p = r.polynomial.unwrap();
        assert_eq!(p.to_string(), "k^2 + 2k + 1");
        assert_eq!(p, r.lower_polynomial);
        assert!(r.certificate.holds());
    }

    #[test]
    fn khovanskii_in_one_dimension() {
        let r = khovanskii_probe(&PointSet::from_ints(1, &[&[0], &[1]]).unwrap(), 4).unwrap();
        assert_eq!(r.polynomial.unwrap().to_string(), "k + 1");
        let r = khovanskii_probe(&PointSet::from_ints(1, &[&[0], &[1], &[3]]).unwrap(), 6).unwrap();
        assert_eq!(r.sizes, vec![3, 6, 9, 12, 15, 18]);
        assert_eq!(r.polynomial.unwrap().to_string(), "3k");
        assert!(r.certificate.holds());
        assert!(khovanskii_probe(&long_simplex(2, 4).unwrap(), 3).is_err());
    }
}
