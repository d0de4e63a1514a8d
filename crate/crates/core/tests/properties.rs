use std::collections::BTreeSet;

use proptest::prelude::*;
use sumsetlab::bounds::{self, simplex_cardinality};
use sumsetlab::compression::{check_sum_containment, check_sum_monotone, compress, is_down_set, normalize_down};
use sumsetlab::structure::{decide_irreducible, IrreducibilityStatus};
use sumsetlab::sumset::{iterated_sumset, minkowski_sum};
use sumsetlab::{io, CompressionSpec, LinearSystem, Point, PointSet, RationalMatrix, Verdict};

fn points(d: usize, max: usize, side: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..side, d), 1..=max)
}

fn set_of(d: usize, rows: Vec<Vec<i64>>) -> PointSet {
    PointSet::from_int_vecs(d, rows).unwrap()
}

/// Independent oracle: pairwise sums over `BTreeSet<Vec<i64>>`.
fn naive_sum(a: &BTreeSet<Vec<i64>>, b: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect()))
        .collect()
}

fn invertible(entries: Vec<i64>, d: usize) -> Option<RationalMatrix> {
    let rows: Vec<&[i64]> = entries.chunks(d).collect();
    let m = RationalMatrix::from_ints(&rows).ok()?;
    m.inverse().ok().map(|_| m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sumset_matches_naive_oracle(a in points(2, 8, 6), b in points(2, 8, 6)) {
        let (sa, sb) = (set_of(2, a.clone()), set_of(2, b.clone()));
        let fast = minkowski_sum(&[sa, sb]).unwrap();
        let naive = naive_sum(&a.into_iter().collect(), &b.into_iter().collect());
        prop_assert_eq!(fast.len(), naive.len());
        let rows: BTreeSet<Vec<i64>> = fast.to_i64_rows().unwrap().into_iter().collect();
        prop_assert_eq!(rows, naive);
    }

    #[test]
    fn elementary_bound_holds(sets in prop::collection::vec(points(3, 6, 4), 2..4)) {
        let sets: Vec<PointSet> = sets.into_iter().map(|r| set_of(3, r)).collect();
        prop_assert_eq!(bounds::check_elementary(&sets).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn compressions_preserve_size_and_shrink_sums(
        sets in prop::collection::vec(points(2, 8, 5), 1..4),
        axis in 0usize..2,
    ) {
        let sets: Vec<PointSet> = sets.into_iter().map(|r| set_of(2, r)).collect();
        let spec = CompressionSpec::axis(2, axis);
        for s in &sets {
            let c = compress(s, &spec).unwrap();
            prop_assert_eq!(c.len(), s.len());
            prop_assert_eq!(compress(&c, &spec).unwrap(), c);
        }
        prop_assert_eq!(check_sum_monotone(&sets, &spec).unwrap().verdict, Verdict::Holds);
        prop_assert_eq!(check_sum_containment(&sets, &spec).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn general_direction_compressions_hold(
        sets in prop::collection::vec(points(2, 6, 5), 2..3),
        dx in -2i64..=2,
    ) {
        let sets: Vec<PointSet> = sets.into_iter().map(|r| set_of(2, r)).collect();
        let spec = CompressionSpec::onto_axis_hyperplane(2, 1, Point::from_ints(&[dx, 1])).unwrap();
        prop_assert_eq!(check_sum_monotone(&sets, &spec).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn down_normalisation_yields_down_sets(rows in points(3, 10, 4)) {
        let a = set_of(3, rows);
        let (down, trace) = normalize_down(&a).unwrap();
        prop_assert!(is_down_set(&down));
        prop_assert_eq!(down.len(), a.len());
        let replayed = trace.replay().unwrap();
        prop_assert_eq!(replayed.last().unwrap(), &down);
    }

    #[test]
    fn ruzsa_and_freiman_lemma_hold(u in points(2, 5, 5), v in points(2, 5, 5), w in points(2, 5, 5)) {
        let (u, v, w) = (set_of(2, u), set_of(2, v), set_of(2, w));
        prop_assert_eq!(bounds::check_ruzsa_triangle(&u, &v, &w).unwrap().verdict, Verdict::Holds);
        let a = minkowski_sum(&[u, v]).unwrap();
        if let Ok(cert) = bounds::check_freiman_lemma(&a) {
            prop_assert_eq!(cert.verdict, Verdict::Holds);
        }
    }

    #[test]
    fn freiman_kfold_holds_on_full_dimensional_sets(rows in points(2, 10, 5), k in 1usize..4) {
        let a = set_of(2, rows);
        if let Ok(cert) = bounds::check_freiman_kfold(&a, k) {
            prop_assert_eq!(cert.verdict, Verdict::Holds);
        }
    }

    #[test]
    fn discrete_bm_is_never_violated(sets in prop::collection::vec(points(2, 6, 4), 1..3)) {
        let sets: Vec<PointSet> = sets.into_iter().map(|r| set_of(2, r)).collect();
        let cert = bounds::check_discrete_bm(&sets, &sumsetlab::Basis::standard(2)).unwrap();
        prop_assert_ne!(cert.verdict, Verdict::Violated);
    }

    #[test]
    fn point_set_json_round_trips(rows in points(3, 10, 9)) {
        let a = set_of(3, rows);
        let text = io::point_set_to_json(&a);
        prop_assert_eq!(io::parse_point_set(&text).unwrap(), a);
    }

    #[test]
    fn irreducibility_is_conjugation_invariant(
        l2 in prop::collection::vec(-2i64..=2, 4),
        s in prop::collection::vec(-2i64..=2, 4),
    ) {
        let (Some(l2), Some(s)) = (invertible(l2, 2), invertible(s, 2)) else { return Ok(()) };
        let system = LinearSystem::new(vec![RationalMatrix::identity(2), l2]).unwrap();
        let a = decide_irreducible(&system).unwrap().status;
        let b = decide_irreducible(&system.conjugate(&s).unwrap()).unwrap().status;
        prop_assert_eq!(a, b);
        prop_assert_ne!(a, IrreducibilityStatus::Unknown);
        let c = decide_irreducible(&system.normalized()).unwrap().status;
        prop_assert_eq!(a, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn simplex_cardinality_matches_enumeration(d in 1usize..=3, extra in 0usize..5, k in 1usize..=4) {
        let n = d + 1 + extra;
        let a = sumsetlab::generators::long_simplex(d, n).unwrap();
        let brute = iterated_sumset(&a, k).unwrap().len();
        prop_assert_eq!(simplex_cardinality(d, n, k).unwrap(), brute.into());
    }

    #[test]
    fn simplex_cardinality_steps_in_n(d in 1usize..=4, extra in 0usize..8, k in 1usize..=6) {
        // Each further point on the long edge adds binom(k+d-1, d) points to kA.
        let n = d + 1 + extra;
        let step = simplex_cardinality(d, n + 1, k).unwrap() - simplex_cardinality(d, n, k).unwrap();
        let mut binom = num_bigint::BigInt::from(1);
        for i in 0..d {
            binom = binom * (k + d - 1 - i) / (i + 1);
        }
        prop_assert_eq!(step, binom);
    }
}
