//! Randomized cross-module invariants. Everything that needs a pinned
//! numeric landscape lives in the acceptance gate; these tests instead
//! sweep the input spaces the library promises to behave on.

use std::f64::consts::PI;

use proptest::prelude::*;

use pentiso::combinatorics::{derive_k_bounds, ratio_lower_bound, LinExpr};
use pentiso::equilateral::{adjacent_family, nonadjacent_family};
use pentiso::geom::{classify_pentagon, circumscribe, cot_perimeter, polygon_metrics, Vec2};
use pentiso::torus::{build_cairo, build_prismatic, cairo_pattern, truncate_pattern, validate};

fn normalized_angles(raw: &[f64], target: f64) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    raw.iter().map(|r| r * target / total).collect()
}

fn convex(angles: &[f64]) -> bool {
    angles.iter().all(|&a| a > 0.2 && a < PI - 0.05)
}

fn edge_lengths(vertices: &[Vec2]) -> Vec<f64> {
    (0..vertices.len())
        .map(|i| vertices[(i + 1) % vertices.len()].sub(vertices[i]).norm())
        .collect()
}

proptest! {
    // tangency construction always lands on unit area and the closed form
    #[test]
    fn circumscription_attains_the_cot_formula(
        raw in prop::collection::vec(0.5f64..1.5, 3..=6),
    ) {
        let n = raw.len();
        let angles = normalized_angles(&raw, (n as f64 - 2.0) * PI);
        prop_assume!(convex(&angles));
        let poly = circumscribe(&angles).unwrap();
        let (area, perimeter) = polygon_metrics(&poly.vertices).unwrap();
        prop_assert!((area - 1.0).abs() < 1e-9, "area {area}");
        let formula = cot_perimeter(&angles).unwrap();
        prop_assert!((perimeter - formula).abs() < 1e-9);
        prop_assert!((poly.perimeter - formula).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    // evening out any two angles never costs perimeter
    #[test]
    fn averaging_two_angles_never_raises_the_perimeter(
        raw in prop::collection::vec(0.5f64..1.5, 5),
        i in 0usize..5,
        j in 0usize..5,
    ) {
        prop_assume!(i != j);
        let angles = normalized_angles(&raw, 3.0 * PI);
        prop_assume!(convex(&angles));
        let before = cot_perimeter(&angles).unwrap();
        let mut evened = angles.clone();
        let mean = (angles[i] + angles[j]) / 2.0;
        evened[i] = mean;
        evened[j] = mean;
        let after = cot_perimeter(&evened).unwrap();
        prop_assert!(after <= before + 1e-12, "{before} -> {after}");
    }
}

proptest! {
    // a cheap tile closer to the benchmark saves less per copy and a dearer
    // expensive tile costs more, so the required ratio grows in both inputs
    #[test]
    fn ratio_bound_moves_the_right_way(
        p0 in 3.70f64..3.85,
        p2 in 4.30f64..5.20,
    ) {
        let h = 1e-3;
        let base = ratio_lower_bound(p0, p2);
        prop_assert!(base > 0.0);
        prop_assert!(ratio_lower_bound(p0 + h, p2) > base);
        prop_assert!(ratio_lower_bound(p0, p2 + h) > base);
    }
}

proptest! {
    // both one-parameter families really are equilateral and unit area,
    // rechecked from raw vertices rather than the construction algebra
    #[test]
    fn equilateral_families_stay_equilateral_and_unit_area(
        adj_deg in 61.0f64..119.0,
        non_deg in 50.0f64..130.0,
    ) {
        for pent in [
            adjacent_family(adj_deg * PI / 180.0).unwrap(),
            nonadjacent_family(non_deg * PI / 180.0).unwrap(),
        ] {
            for e in edge_lengths(&pent.vertices) {
                prop_assert!((e - pent.side).abs() < 1e-9, "edge {e} vs {}", pent.side);
            }
            let (area, perimeter) = polygon_metrics(&pent.vertices).unwrap();
            prop_assert!((area - 1.0).abs() < 1e-9);
            prop_assert!((perimeter - 5.0 * pent.side).abs() < 1e-9);
            prop_assert!((pent.perimeter - perimeter).abs() < 1e-9);
        }
    }
}

proptest! {
    // convexity class is a property of the cycle, not the starting corner
    #[test]
    fn classification_ignores_rotation_and_reflection(
        raw in prop::collection::vec(0.3f64..2.3, 5),
        shift in 0usize..5,
    ) {
        let angles = normalized_angles(&raw, 3.0 * PI);
        let Ok(class) = classify_pentagon(&angles) else {
            return Ok(());
        };
        let mut rotated = angles.clone();
        rotated.rotate_left(shift);
        prop_assert_eq!(classify_pentagon(&rotated).unwrap(), class);
        let reflected: Vec<f64> = angles.iter().rev().copied().collect();
        prop_assert_eq!(classify_pentagon(&reflected).unwrap(), class);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]
    // period counts beyond the exhaustive gate still give clean tori
    #[test]
    fn larger_random_periods_still_validate(p in 1usize..=6, q in 1usize..=6) {
        for mesh in [build_cairo(p, q).unwrap(), build_prismatic(p, q).unwrap()] {
            let report = validate(&mesh).unwrap();
            prop_assert!(report.violations.is_empty(), "{:?}", report.violations);
            prop_assert_eq!(report.euler_characteristic, 0);
        }
    }
}

#[test]
fn k_bound_certificates_recombine_exactly() {
    for derivation in derive_k_bounds() {
        let mut combined = LinExpr::zero();
        for (multiplier, (_, axiom)) in derivation.certificate.iter().zip(&derivation.axioms) {
            combined = combined.plus(&axiom.scaled(*multiplier));
        }
        assert_eq!(combined, derivation.bound, "{}", derivation.label);
        assert!(derivation
            .certificate
            .iter()
            .all(|m| !num_traits::Signed::is_negative(m)));
    }
}

#[test]
fn truncation_density_settles_as_the_disk_grows() {
    let pattern = cairo_pattern();
    let tile = &pattern.tiles[0];
    let origin = tile
        .iter()
        .fold(Vec2::new(0.0, 0.0), |c, p| c.add(*p))
        .scale(1.0 / tile.len() as f64);
    let rho = |radius: f64| {
        let stats = truncate_pattern(&pattern, radius, origin).unwrap();
        (stats.rho_hat, stats.covered_area)
    };
    let (r20, a20) = rho(20.0);
    let (r40, a40) = rho(40.0);
    let (r80, a80) = rho(80.0);
    assert!(a20 < a40 && a40 < a80, "covered area not growing");
    let first_gap = (r40 - r20).abs();
    let second_gap = (r80 - r40).abs();
    assert!(
        second_gap < first_gap,
        "density not settling: {first_gap} then {second_gap}"
    );
}
