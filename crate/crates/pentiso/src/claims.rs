//! Registry binding every reproduced numeric constant to the computation
//! that re-derives it, with tolerances and pass/fail bookkeeping.
//!
//! Each claim compares a solver output against a reference decimal. Claims
//! come in two modes: `as_published` reproduces the original arithmetic,
//! truncated inputs and all, while `full_precision` reruns it with solver
//! outputs in place of truncated literals. Where the two disagree beyond
//! tolerance the entry is whitelisted and reported as a documented
//! discrepancy rather than silently retuned; the whitelist is the complete
//! list of known deviations and anything else failing is a real regression.
//!
//! The environment variable `PENTISO_TOL_SCALE` multiplies every tolerance,
//! for noise control on exotic float hardware.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{
    builtin_counting_chains, derive_k_bounds, evaluate_counting_argument,
    perimeter_threshold_for_ratio, planar_epsilon_thresholds, ratio_lower_bound,
    surround_capacity,
};
use crate::equilateral::{best_adjacent, champion, special_closure_pentagon};
use crate::geom::{
    cairo_prismatic_perimeter, cot_perimeter, equilateral_triangle_perimeter,
    min_triangle_given_edge, regular_pentagon_perimeter,
};
use crate::optimize::{
    efficient_angle_bounds, efficient_edge_bounds, efficient_edge_bounds_exact,
    five_tile_deg4_minimizer, minimize_perimeter, quad_deg3_case_scan, AngleConstraintSet,
    CaseOutcome,
};
use crate::torus::{build_cairo, cairo_pattern, perimeter_per_tile, truncate_pattern};

#[derive(Debug, Error)]
pub enum ClaimsError {
    #[error("no claim id matches filter {0:?}")]
    UnknownClaim(String),
    #[error("cannot render an empty result set")]
    EmptyResults,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "as_published")]
    AsPublished,
    #[serde(rename = "full_precision")]
    FullPrecision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "discrepancy_documented")]
    DiscrepancyDocumented,
    #[serde(rename = "fail")]
    Fail,
}

/// How a computed value is judged against its reference.
#[derive(Debug, Clone, Copy)]
enum Kind {
    /// |computed - target| <= tol
    Near,
    /// computed >= target, shortfall within tol
    Floor,
}

pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    /// What computation backs the value; provenance by construction.
    pub source: &'static str,
    pub mode: Mode,
    expected: f64,
    tolerance: f64,
    kind: Kind,
    compute: fn() -> f64,
}

/// One executed claim; field order here is the JSON field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub source: String,
    pub expected: f64,
    pub computed: f64,
    pub abs_err: f64,
    pub tol: f64,
    pub status: ClaimStatus,
    pub mode: Mode,
}

/// Entries allowed to report `discrepancy_documented` instead of `fail`.
/// Everything here deviates because the original arithmetic used truncated
/// inputs; the deviations are analyzed, not bugs.
const DISCREPANCY_WHITELIST: &[&str] = &[
    "angle_bounds.min.published",
    "edge_bounds.e_max.published",
    "edge_bounds.e_max.full",
    "edge_bounds.e_min.full",
    "ratio.deg4_exclusion.full",
    "ratio.one_eff_type1.full",
    "ratio.quad_chain.full",
    "ratio.type2_chain.full",
];

const DEG: f64 = std::f64::consts::PI / 180.0;

// reference decimals reproduced by the as_published entries
const PUBLISHED_CHAMPION: f64 = 3.8414;
const PUBLISHED_DEG4: f64 = 3.8328;
const PUBLISHED_OUTSIDE: f64 = 3.819;
const PUBLISHED_TRIANGLE: f64 = 4.93594;

fn angle_bounds_cached() -> (f64, f64) {
    static CACHE: OnceLock<(f64, f64)> = OnceLock::new();
    *CACHE.get_or_init(|| efficient_angle_bounds().expect("angle bounds"))
}

fn edge_bounds_published() -> &'static crate::optimize::EdgeBounds {
    static CACHE: OnceLock<crate::optimize::EdgeBounds> = OnceLock::new();
    CACHE.get_or_init(|| efficient_edge_bounds().expect("edge bounds"))
}

fn edge_bounds_exact() -> &'static crate::optimize::EdgeBounds {
    static CACHE: OnceLock<crate::optimize::EdgeBounds> = OnceLock::new();
    CACHE.get_or_init(|| efficient_edge_bounds_exact().expect("edge bounds"))
}

fn champion_perimeter_cached() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| five_tile_deg4_minimizer().expect("five tile case tree").perimeter)
}

fn deg4_uniform_cached() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        minimize_perimeter(&AngleConstraintSet::pentagon().fix(0, 90.0 * DEG))
            .expect("one right angle preset")
            .perimeter
    })
}

fn outside_band_cached() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        minimize_perimeter(&AngleConstraintSet::pentagon().fix(0, 120.0 * DEG))
            .expect("one 120 degree preset")
            .perimeter
    })
}

fn deg3_case_floor_cached() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let (a_min, _) = angle_bounds_cached();
        let cases = quad_deg3_case_scan((a_min, 90.0 * DEG)).expect("degree-three scan");
        match &cases[2] {
            CaseOutcome::ScannedMinimum { min_perimeter, .. } => *min_perimeter,
            _ => f64::NAN,
        }
    })
}

fn special_angles_cached() -> &'static (Vec<f64>, f64) {
    static CACHE: OnceLock<(Vec<f64>, f64)> = OnceLock::new();
    CACHE.get_or_init(|| {
        let x = special_closure_pentagon().expect("special closure");
        (x.pentagon.angles.clone(), x.cot_bound)
    })
}

fn champion_angles_cached() -> &'static Vec<f64> {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    CACHE.get_or_init(|| champion().expect("equilateral champion").angles.clone())
}

fn two_pairs_perimeter() -> f64 {
    minimize_perimeter(
        &AngleConstraintSet::pentagon()
            .fix(0, 90.0 * DEG)
            .fix(1, 90.0 * DEG)
            .fix(2, 90.0 * DEG)
            .equate(3, 4),
    )
    .expect("three right angles preset")
    .perimeter
}

fn sevenths_perimeter() -> f64 {
    minimize_perimeter(
        &AngleConstraintSet::pentagon()
            .fix(0, 90.0 * DEG)
            .equate(1, 2)
            .relate(vec![0, 1, 0, 2, 0], 2.0 * std::f64::consts::PI)
            .relate(vec![0, 0, 0, 1, 2], 2.0 * std::f64::consts::PI),
    )
    .expect("sevenths preset")
    .perimeter
}

fn k_bound_m_coeff(index: usize) -> f64 {
    let b = &derive_k_bounds()[index].bound;
    *b.m.numer() as f64 / *b.m.denom() as f64
}

fn chain_cap(index: usize) -> f64 {
    let chains = builtin_counting_chains();
    let report = evaluate_counting_argument(&chains[index]).expect("builtin chain");
    let cap = report.cap.expect("terminal cap");
    *cap.numer() as f64 / *cap.denom() as f64
}

fn near(
    id: &'static str,
    description: &'static str,
    source: &'static str,
    mode: Mode,
    expected: f64,
    tolerance: f64,
    compute: fn() -> f64,
) -> Claim {
    Claim {
        id,
        description,
        source,
        mode,
        expected,
        tolerance,
        kind: Kind::Near,
        compute,
    }
}

fn floor(
    id: &'static str,
    description: &'static str,
    source: &'static str,
    expected: f64,
    compute: fn() -> f64,
) -> Claim {
    Claim {
        id,
        description,
        source,
        mode: Mode::AsPublished,
        expected,
        tolerance: 1e-12,
        kind: Kind::Floor,
        compute,
    }
}

/// The full registry. Kept in one place so the manifest test can audit it
/// against the reproduction checklist.
pub fn registry() -> Vec<Claim> {
    use Mode::{AsPublished, FullPrecision};
    let mut claims = vec![
        near(
            "const.cairo_prismatic",
            "benchmark pentagon perimeter, three 120 degree and two right angles",
            "cotangent perimeter formula at (90,120,120,90,120) degrees vs 2*sqrt(2+sqrt(3))",
            AsPublished,
            3.863703,
            5e-4,
            || cot_perimeter(&[90.0 * DEG, 120.0 * DEG, 120.0 * DEG, 90.0 * DEG, 120.0 * DEG])
                .expect("cairo angles"),
        ),
        near(
            "const.regular_pentagon",
            "regular pentagon perimeter at unit area",
            "cotangent perimeter formula at five 108 degree angles",
            AsPublished,
            3.811936,
            5e-4,
            || cot_perimeter(&[108.0 * DEG; 5]).expect("regular pentagon"),
        ),
        near(
            "const.square",
            "unit square perimeter",
            "cotangent perimeter formula at four right angles",
            AsPublished,
            4.0,
            5e-4,
            || cot_perimeter(&[90.0 * DEG; 4]).expect("square"),
        ),
        near(
            "const.triangle_equilateral",
            "unit-area equilateral triangle perimeter",
            "cotangent perimeter formula at three 60 degree angles",
            AsPublished,
            4.559014,
            5e-4,
            || cot_perimeter(&[60.0 * DEG; 3]).expect("triangle"),
        ),
        near(
            "angle_bounds.min.published",
            "smallest angle an efficient pentagon can carry",
            "bisection of the one-free-angle perimeter curve against the benchmark",
            AsPublished,
            80.91,
            0.01,
            || angle_bounds_cached().0.to_degrees(),
        ),
        near(
            "angle_bounds.min.full",
            "same root recorded at solver precision",
            "bisection of the one-free-angle perimeter curve against the benchmark",
            FullPrecision,
            80.92448427768,
            1e-6,
            || angle_bounds_cached().0.to_degrees(),
        ),
        near(
            "angle_bounds.max.published",
            "largest angle an efficient pentagon can carry",
            "bisection of the one-free-angle perimeter curve against the benchmark",
            AsPublished,
            142.29,
            0.01,
            || angle_bounds_cached().1.to_degrees(),
        ),
        near(
            "angle_bounds.max.full",
            "same root recorded at solver precision",
            "bisection of the one-free-angle perimeter curve against the benchmark",
            FullPrecision,
            142.28139458197,
            1e-6,
            || angle_bounds_cached().1.to_degrees(),
        ),
        near(
            "edge_bounds.alpha_lo.published",
            "inscribed-family parameter where the long-edge bound is attained",
            "bisection of the inscribed-family perimeter at the two-decimal threshold 3.86",
            AsPublished,
            62.8941,
            0.01,
            || edge_bounds_published().alpha_lo.to_degrees(),
        ),
        near(
            "edge_bounds.alpha_hi.published",
            "inscribed-family parameter where the short-edge bound is attained",
            "bisection of the inscribed-family perimeter at the two-decimal threshold 3.86",
            AsPublished,
            81.0706,
            0.01,
            || edge_bounds_published().alpha_hi.to_degrees(),
        ),
        near(
            "edge_bounds.e_min.published",
            "shortest edge an efficient pentagon can carry",
            "bisection of the inscribed-family perimeter at the two-decimal threshold 3.86",
            AsPublished,
            0.4073,
            5e-4,
            || edge_bounds_published().e_min,
        ),
        near(
            "edge_bounds.e_max.published",
            "longest edge an efficient pentagon can carry",
            "bisection of the inscribed-family perimeter at the two-decimal threshold 3.86",
            AsPublished,
            1.081,
            5e-4,
            || edge_bounds_published().e_max,
        ),
        near(
            "edge_bounds.e_min.full",
            "short-edge bound rerun at the untruncated benchmark",
            "bisection of the inscribed-family perimeter at 2*sqrt(2+sqrt(3))",
            FullPrecision,
            0.4073,
            5e-4,
            || edge_bounds_exact().e_min,
        ),
        near(
            "edge_bounds.e_max.full",
            "long-edge bound rerun at the untruncated benchmark",
            "bisection of the inscribed-family perimeter at 2*sqrt(2+sqrt(3))",
            FullPrecision,
            1.081,
            5e-4,
            || edge_bounds_exact().e_max,
        ),
        near(
            "extremal.champion",
            "least perimeter among pentagons with five tiling angles and a right angle",
            "constrained minimization over the degree-four case tree",
            AsPublished,
            PUBLISHED_CHAMPION,
            5e-4,
            champion_perimeter_cached,
        ),
        near(
            "extremal.deg4_uniform",
            "least perimeter with one right angle, other angles free",
            "linear elimination plus golden-section minimization",
            AsPublished,
            PUBLISHED_DEG4,
            5e-4,
            deg4_uniform_cached,
        ),
        near(
            "extremal.outside_band",
            "least perimeter with one angle pinned to 120 degrees",
            "linear elimination plus golden-section minimization",
            AsPublished,
            PUBLISHED_OUTSIDE,
            5e-4,
            outside_band_cached,
        ),
        near(
            "extremal.two_pairs",
            "least perimeter with three right angles",
            "linear elimination plus golden-section minimization",
            AsPublished,
            3.9132,
            5e-4,
            two_pairs_perimeter,
        ),
        floor(
            "extremal.sevenths_floor",
            "exclusion floor for the one-seventh-turn vertex pattern",
            "constrained minimization of the (90, 720/7, 720/7, 900/7, 810/7) pattern",
            3.849,
            sevenths_perimeter,
        ),
        floor(
            "extremal.deg3_case_floor",
            "exclusion floor for the surviving degree-three case family",
            "grid scan plus golden polish over the one-parameter case family",
            3.8574,
            deg3_case_floor_cached,
        ),
        near(
            "triangle.at_edge_bound",
            "least perimeter of a unit-area triangle on a base of 1.081",
            "closed form e + 2*sqrt(e^2/4 + 4/e^2) at the published edge bound",
            AsPublished,
            PUBLISHED_TRIANGLE,
            5e-4,
            || min_triangle_given_edge(1.081),
        ),
        near(
            "ratio.band_type1.recomputed",
            "pentagon-to-square replacement rate in the density inequality",
            "(P_square - benchmark) / (benchmark - P_regular)",
            FullPrecision,
            2.63,
            0.01315,
            || ratio_lower_bound(regular_pentagon_perimeter(), 4.0),
        ),
        floor(
            "ratio.band_type1.floor",
            "published slack version of the square replacement rate",
            "(P_square - benchmark) / (benchmark - P_regular)",
            2.6,
            || ratio_lower_bound(regular_pentagon_perimeter(), 4.0),
        ),
        near(
            "ratio.band_type2.recomputed",
            "pentagon-to-triangle replacement rate in the density inequality",
            "(P_triangle - benchmark) / (benchmark - P_regular)",
            FullPrecision,
            13.43,
            0.06715,
            || ratio_lower_bound(regular_pentagon_perimeter(), equilateral_triangle_perimeter()),
        ),
        floor(
            "ratio.band_type2.floor",
            "published slack version of the triangle replacement rate",
            "(P_triangle - benchmark) / (benchmark - P_regular)",
            13.4,
            || ratio_lower_bound(regular_pentagon_perimeter(), equilateral_triangle_perimeter()),
        ),
        near(
            "ratio.one_eff_type1.published",
            "efficient-to-nonconvex ratio forced by the 3.819 exclusion floor",
            "ratio_lower_bound(3.819, P_triangle), truncated floor as input",
            AsPublished,
            15.554,
            0.01,
            || ratio_lower_bound(PUBLISHED_OUTSIDE, equilateral_triangle_perimeter()),
        ),
        near(
            "ratio.one_eff_type1.full",
            "same ratio rerun with the solver's exclusion floor",
            "ratio_lower_bound(solver floor, P_triangle)",
            FullPrecision,
            15.554,
            0.01,
            || ratio_lower_bound(outside_band_cached(), equilateral_triangle_perimeter()),
        ),
        near(
            "ratio.quad_chain.published",
            "efficient-to-quad ratio forced by the 3.8414 case minimum",
            "ratio_lower_bound(3.8414, P_triangle), truncated minimum as input",
            AsPublished,
            31.1753,
            0.01,
            || ratio_lower_bound(PUBLISHED_CHAMPION, equilateral_triangle_perimeter()),
        ),
        near(
            "ratio.quad_chain.full",
            "same ratio rerun with the solver's case minimum",
            "ratio_lower_bound(solver minimum, P_triangle)",
            FullPrecision,
            31.1753,
            0.01,
            || ratio_lower_bound(champion_perimeter_cached(), equilateral_triangle_perimeter()),
        ),
        near(
            "ratio.deg4_exclusion.published",
            "ratio forced by the long-edge triangle floor, published inputs",
            "ratio_lower_bound(solver 120-degree floor, 4.93594)",
            AsPublished,
            24.117,
            0.01,
            || ratio_lower_bound(outside_band_cached(), PUBLISHED_TRIANGLE),
        ),
        near(
            "ratio.deg4_exclusion.full",
            "same ratio with the triangle floor at the solver's edge bound",
            "ratio_lower_bound(solver 120-degree floor, triangle at solver edge bound)",
            FullPrecision,
            24.117,
            0.01,
            || {
                ratio_lower_bound(
                    outside_band_cached(),
                    min_triangle_given_edge(edge_bounds_exact().e_max),
                )
            },
        ),
        near(
            "ratio.type2_chain.published",
            "ratio forced by the right-angle case minimum, published triangle floor",
            "ratio_lower_bound(solver right-angle minimum, 4.93594)",
            AsPublished,
            34.77,
            0.01,
            || ratio_lower_bound(deg4_uniform_cached(), PUBLISHED_TRIANGLE),
        ),
        near(
            "ratio.type2_chain.full",
            "same ratio with the triangle floor at the solver's edge bound",
            "ratio_lower_bound(solver right-angle minimum, triangle at solver edge bound)",
            FullPrecision,
            34.77,
            0.01,
            || {
                ratio_lower_bound(
                    deg4_uniform_cached(),
                    min_triangle_given_edge(edge_bounds_exact().e_max),
                )
            },
        ),
        near(
            "surround.cap_11",
            "efficient pentagons around one nonconvex quad, tight profile",
            "slot capacity sum 3*4 + 2*2 minus 5 shared corners",
            AsPublished,
            11.0,
            1e-9,
            || f64::from(surround_capacity(3, 4, 2, 2, 5)),
        ),
        near(
            "surround.cap_13",
            "efficient pentagons around one nonconvex quad, wide profile",
            "slot capacity sum 4*4 + 1*2 minus 5 shared corners",
            AsPublished,
            13.0,
            1e-9,
            || f64::from(surround_capacity(4, 4, 1, 2, 5)),
        ),
        near(
            "surround.cap_10",
            "efficient pentagons around one nonconvex quad, narrow profile",
            "slot capacity sum 3*4 + 1*2 minus 4 shared corners",
            AsPublished,
            10.0,
            1e-9,
            || f64::from(surround_capacity(3, 4, 1, 2, 4)),
        ),
        near(
            "surround.cap_14",
            "efficient pentagons around a nonconvex quad pair",
            "slot capacity sum 4*4 + 2*2 minus 6 shared corners",
            AsPublished,
            14.0,
            1e-9,
            || f64::from(surround_capacity(4, 4, 2, 2, 6)),
        ),
        near(
            "surround.cap_15",
            "efficient pentagons around a mixed pair with a free corner",
            "slot capacity sum 3*4 + 4*2 minus 8 shared corners, plus 3",
            AsPublished,
            15.0,
            1e-9,
            || f64::from(surround_capacity(3, 4, 4, 2, 8) + 3),
        ),
        near(
            "surround.cap_16",
            "efficient pentagons around a doubly reflex pentagon pair",
            "slot capacity sum 4*4 + 4*2 minus 8 shared corners",
            AsPublished,
            16.0,
            1e-9,
            || f64::from(surround_capacity(4, 4, 4, 2, 8)),
        ),
        near(
            "surround.cap_8",
            "efficient pentagons around a doubly reflex pentagon, tight profile",
            "slot capacity sum 4*3 + 4*1 minus 8 shared corners",
            AsPublished,
            8.0,
            1e-9,
            || f64::from(surround_capacity(4, 3, 4, 1, 8)),
        ),
        near(
            "counting.k_bound.k4_ge_half_minus_7m",
            "degree-four vertex floor, capacity 14 route",
            "exact rational combination of counting axioms",
            AsPublished,
            7.0,
            1e-12,
            || k_bound_m_coeff(0),
        ),
        near(
            "counting.k_bound.k4_ge_half_minus_12m",
            "degree-four vertex floor, capacity 15 route",
            "exact rational combination of counting axioms",
            AsPublished,
            12.0,
            1e-12,
            || k_bound_m_coeff(1),
        ),
        near(
            "counting.k_bound.k3_ge_n_minus_8m",
            "degree-three vertex floor, deficit 2m route",
            "exact rational combination of counting axioms",
            AsPublished,
            8.0,
            1e-12,
            || k_bound_m_coeff(2),
        ),
        near(
            "counting.k_bound.k4_le_half_plus_6m",
            "degree-four vertex ceiling, deficit 2m route",
            "exact rational combination of counting axioms",
            AsPublished,
            6.0,
            1e-12,
            || k_bound_m_coeff(3),
        ),
        near(
            "counting.k_bound.k4_ge_half_minus_10m",
            "degree-four vertex floor, capacity 14 with slack",
            "exact rational combination of counting axioms",
            AsPublished,
            10.0,
            1e-12,
            || k_bound_m_coeff(5),
        ),
        near(
            "counting.k_bound.k3_ge_n_minus_10m",
            "degree-three vertex floor, deficit 5m/2 route",
            "exact rational combination of counting axioms",
            AsPublished,
            10.0,
            1e-12,
            || k_bound_m_coeff(6),
        ),
        near(
            "counting.k_bound.k4_le_half_plus_15_2m",
            "degree-four vertex ceiling, deficit 5m/2 route",
            "exact rational combination of counting axioms",
            AsPublished,
            7.5,
            1e-12,
            || k_bound_m_coeff(7),
        ),
        near(
            "counting.k_bound.k4_ge_half_minus_17_2m",
            "degree-four vertex floor, capacity 8 with slack",
            "exact rational combination of counting axioms",
            AsPublished,
            8.5,
            1e-12,
            || k_bound_m_coeff(8),
        ),
        near(
            "counting.k_bound.k4_ge_half_minus_25_2m",
            "degree-four vertex floor, capacity 16 with slack",
            "exact rational combination of counting axioms",
            AsPublished,
            12.5,
            1e-12,
            || k_bound_m_coeff(9),
        ),
        near(
            "counting.chain_cap.quad_28",
            "population cap from the capacity-14 quad chain",
            "terminal inequality of an audited derivation chain",
            AsPublished,
            28.0,
            1e-12,
            || chain_cap(0),
        ),
        near(
            "counting.chain_cap.quad_30",
            "population cap from the capacity-15 quad chain",
            "terminal inequality of an audited derivation chain",
            AsPublished,
            30.0,
            1e-12,
            || chain_cap(1),
        ),
        near(
            "counting.chain_cap.quad_60",
            "population cap from the degree-three exclusion quad chain",
            "terminal inequality of an audited derivation chain",
            AsPublished,
            60.0,
            1e-12,
            || chain_cap(2),
        ),
        near(
            "counting.chain_cap.type2_34",
            "population cap from the capacity-16 doubly reflex chain",
            "terminal inequality of an audited derivation chain",
            AsPublished,
            34.0,
            1e-12,
            || chain_cap(3),
        ),
        near(
            "counting.chain_cap.type2_163_5",
            "population cap from the refined doubly reflex chain",
            "terminal inequality of an audited derivation chain",
            AsPublished,
            32.6,
            1e-12,
            || chain_cap(4),
        ),
        near(
            "counting.chain_cap.type2_75",
            "population cap from the degree-three exclusion doubly reflex chain",
            "terminal inequality of an audited derivation chain",
            AsPublished,
            75.0,
            1e-12,
            || chain_cap(5),
        ),
        near(
            "counting.threshold.ratio_60",
            "perimeter a pentagon needs before the ratio-60 argument applies",
            "benchmark minus (P2 - benchmark)/ratio at ratio 60",
            AsPublished,
            3.8458,
            5e-4,
            || perimeter_threshold_for_ratio(60.0, PUBLISHED_TRIANGLE),
        ),
        near(
            "counting.threshold.ratio_75",
            "perimeter a pentagon needs before the ratio-75 argument applies",
            "benchmark minus (P2 - benchmark)/ratio at ratio 75",
            AsPublished,
            3.8495,
            5e-4,
            || perimeter_threshold_for_ratio(75.0, PUBLISHED_TRIANGLE),
        ),
        near(
            "epsilon.ratio_threshold",
            "density slack below which the replacement inequality survives",
            "root of (13.43 - 38.63 eps)/(1 + 38.63 eps) = 13.4",
            AsPublished,
            5.39e-5,
            2e-7,
            || planar_epsilon_thresholds().ratio_eps,
        ),
        near(
            "epsilon.truncation_fraction",
            "tile fraction the disk boundary may claim, 1 - 11/13.4",
            "exact rational 12/67",
            AsPublished,
            0.1791044776119403,
            1e-15,
            || {
                let f = planar_epsilon_thresholds().truncation_fraction;
                *f.numer() as f64 / *f.denom() as f64
            },
        ),
        near(
            "epsilon.band_cap",
            "coefficient cap in the density inequality, exactly 13/5",
            "exact rational (4/5)*3 + (1/5)*1",
            AsPublished,
            2.6,
            1e-15,
            || {
                let c = planar_epsilon_thresholds().band_ratio_cap;
                *c.numer() as f64 / *c.denom() as f64
            },
        ),
        near(
            "equilateral.adjacent_side",
            "side of the best equilateral pentagon with adjacent right angles",
            "closed-form side 1/sqrt(sin a + sqrt(3)/4) at its golden-section optimum",
            AsPublished,
            0.8353,
            5e-4,
            || best_adjacent().expect("adjacent family").1.side,
        ),
        near(
            "equilateral.adjacent_perimeter",
            "perimeter of the best adjacent-family equilateral pentagon",
            "closed-form side 1/sqrt(sin a + sqrt(3)/4) at its golden-section optimum",
            AsPublished,
            4.177,
            5e-4,
            || best_adjacent().expect("adjacent family").1.perimeter,
        ),
        near(
            "equilateral.champion_side",
            "side of the least-perimeter unit-area equilateral convex pentagon",
            "nonadjacent-family closed form sqrt(4/(4+sqrt(7)))",
            AsPublished,
            0.7758,
            5e-4,
            || champion().expect("champion").side,
        ),
        near(
            "equilateral.champion_perimeter",
            "perimeter of the least-perimeter unit-area equilateral convex pentagon",
            "five times the nonadjacent-family closed-form side",
            AsPublished,
            3.879,
            5e-4,
            || champion().expect("champion").perimeter,
        ),
        near(
            "equilateral.champion_angle_d",
            "repeated upper angle of the equilateral champion",
            "pi/4 + arccos(1/(2*sqrt(2))) from the champion construction",
            AsPublished,
            114.30,
            0.05,
            || champion_angles_cached()[3].to_degrees(),
        ),
        near(
            "equilateral.champion_angle_e",
            "apex angle of the equilateral champion",
            "pi/2 + arccos(3/4) from the champion construction",
            AsPublished,
            131.41,
            0.05,
            || champion_angles_cached()[1].to_degrees(),
        ),
        near(
            "equilateral.x_angle_a",
            "first angle of the constrained-pattern equilateral pentagon",
            "damped Newton on the equilateral closure residual",
            AsPublished,
            70.88,
            0.05,
            || special_angles_cached().0[0].to_degrees(),
        ),
        near(
            "equilateral.x_angle_b",
            "second angle of the constrained-pattern equilateral pentagon",
            "damped Newton on the equilateral closure residual",
            AsPublished,
            144.56,
            0.05,
            || special_angles_cached().0[1].to_degrees(),
        ),
        near(
            "equilateral.x_angle_c",
            "third angle of the constrained-pattern equilateral pentagon",
            "damped Newton on the equilateral closure residual",
            AsPublished,
            89.26,
            0.05,
            || special_angles_cached().0[2].to_degrees(),
        ),
        near(
            "equilateral.x_angle_d",
            "fourth angle of the constrained-pattern equilateral pentagon",
            "damped Newton on the equilateral closure residual",
            AsPublished,
            99.93,
            0.05,
            || special_angles_cached().0[3].to_degrees(),
        ),
        near(
            "equilateral.x_angle_e",
            "fifth angle of the constrained-pattern equilateral pentagon",
            "damped Newton on the equilateral closure residual",
            AsPublished,
            135.37,
            0.05,
            || special_angles_cached().0[4].to_degrees(),
        ),
        floor(
            "equilateral.x_cot_bound",
            "perimeter floor at the constrained-pattern angles",
            "cotangent formula at the closure solution",
            3.994,
            || special_angles_cached().1,
        ),
        near(
            "torus.per_tile_edge_length",
            "edge length per tile of the benchmark pentagonal torus mesh",
            "mesh edge total over face count, half the benchmark perimeter",
            AsPublished,
            cairo_prismatic_perimeter() / 2.0,
            1e-9,
            || perimeter_per_tile(&build_cairo(2, 2).expect("mesh")).expect("torus"),
        ),
        near(
            "torus.truncation_rho_r80",
            "edge density of the benchmark tiling in a radius-80 disk",
            "disk truncation scan, edge length in disk over disk area",
            AsPublished,
            1.93185,
            0.00966,
            || {
                let pattern = cairo_pattern();
                let tile = &pattern.tiles[0];
                let mut c = crate::geom::Vec2::new(0.0, 0.0);
                for p in tile {
                    c = c.add(*p);
                }
                let origin = c.scale(1.0 / tile.len() as f64);
                truncate_pattern(&pattern, 80.0, origin)
                    .expect("truncation")
                    .rho_hat
            },
        ),
    ];
    claims.sort_by(|a, b| a.id.cmp(b.id));
    claims
}

fn tol_scale() -> f64 {
    match std::env::var("PENTISO_TOL_SCALE") {
        Ok(s) => s.parse::<f64>().ok().filter(|v| *v > 0.0).unwrap_or(1.0),
        Err(_) => 1.0,
    }
}

/// `*` in the filter matches any run of characters; no filter runs all.
fn wildcard_match(pattern: &str, text: &str) -> bool {
    if !pattern.contains('*') {
        return pattern == text;
    }
    let parts: Vec<&str> = pattern.split('*').collect();
    let first = parts[0];
    let last = parts[parts.len() - 1];
    if !text.starts_with(first) || !text.ends_with(last) {
        return false;
    }
    if text.len() < first.len() + last.len() {
        return false;
    }
    let mut pos = first.len();
    let limit = text.len() - last.len();
    for part in &parts[1..parts.len() - 1] {
        if part.is_empty() {
            continue;
        }
        match text[pos..limit].find(part) {
            Some(f) => pos += f + part.len(),
            None => return false,
        }
    }
    true
}

fn execute(claim: &Claim, scale: f64) -> ClaimResult {
    let computed = (claim.compute)();
    let abs_err = match claim.kind {
        Kind::Near => (computed - claim.expected).abs(),
        Kind::Floor => (claim.expected - computed).max(0.0),
    };
    let tol = claim.tolerance * scale;
    let status = if abs_err <= tol {
        ClaimStatus::Pass
    } else if DISCREPANCY_WHITELIST.contains(&claim.id) {
        ClaimStatus::DiscrepancyDocumented
    } else {
        ClaimStatus::Fail
    };
    ClaimResult {
        id: claim.id.to_string(),
        source: claim.source.to_string(),
        expected: claim.expected,
        computed,
        abs_err,
        tol,
        status,
        mode: claim.mode,
    }
}

/// Run every claim whose id matches the filter, in id order.
pub fn run_claims(filter: Option<&str>) -> Result<Vec<ClaimResult>, ClaimsError> {
    run_claims_scaled(filter, tol_scale())
}

pub fn run_claims_scaled(
    filter: Option<&str>,
    scale: f64,
) -> Result<Vec<ClaimResult>, ClaimsError> {
    let selected: Vec<Claim> = registry()
        .into_iter()
        .filter(|c| filter.map_or(true, |f| wildcard_match(f, c.id)))
        .collect();
    if selected.is_empty() {
        return Err(ClaimsError::UnknownClaim(
            filter.unwrap_or_default().to_string(),
        ));
    }
    Ok(selected.iter().map(|c| execute(c, scale)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl std::fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::DiscrepancyDocumented => "discrepancy_documented",
            ClaimStatus::Fail => "fail",
        };
        f.write_str(s)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mode::AsPublished => "as_published",
            Mode::FullPrecision => "full_precision",
        };
        f.write_str(s)
    }
}

/// Render results as a fixed-width text table (clean rows first, failures
/// last) or as a JSON array in stable field order.
pub fn render_report(results: &[ClaimResult], format: ReportFormat) -> Result<String, ClaimsError> {
    if results.is_empty() {
        return Err(ClaimsError::EmptyResults);
    }
    match format {
        ReportFormat::Json => {
            Ok(serde_json::to_string_pretty(results).expect("claim results serialize"))
        }
        ReportFormat::Text => {
            let rank = |s: ClaimStatus| match s {
                ClaimStatus::Pass => 0,
                ClaimStatus::DiscrepancyDocumented => 1,
                ClaimStatus::Fail => 2,
            };
            let mut rows: Vec<&ClaimResult> = results.iter().collect();
            rows.sort_by(|a, b| rank(a.status).cmp(&rank(b.status)).then(a.id.cmp(&b.id)));
            let mut out = String::new();
            out.push_str(&format!(
                "{:<42} {:>14} {:>14} {:>9} {:>9} {:<22} {}\n",
                "id", "expected", "computed", "abs_err", "tol", "status", "mode"
            ));
            for r in rows {
                out.push_str(&format!(
                    "{:<42} {:>14.6} {:>14.6} {:>9.2e} {:>9.2e} {:<22} {}\n",
                    r.id, r.expected, r.computed, r.abs_err, r.tol, r.status, r.mode
                ));
            }
            let pass = results.iter().filter(|r| r.status == ClaimStatus::Pass).count();
            let disc = results
                .iter()
                .filter(|r| r.status == ClaimStatus::DiscrepancyDocumented)
                .count();
            let fail = results.iter().filter(|r| r.status == ClaimStatus::Fail).count();
            out.push_str(&format!(
                "{} pass, {} documented discrepancies, {} fail of {}\n",
                pass,
                disc,
                fail,
                results.len()
            ));
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_results() -> Vec<ClaimResult> {
        run_claims_scaled(None, 1.0).unwrap()
    }

    #[test]
    fn registry_ids_unique_and_sorted() {
        let reg = registry();
        assert!(reg.len() >= 35, "registry has {} entries", reg.len());
        for w in reg.windows(2) {
            assert!(w[0].id < w[1].id, "{} vs {}", w[0].id, w[1].id);
        }
        for id in DISCREPANCY_WHITELIST {
            assert!(reg.iter().any(|c| c.id == *id), "whitelist orphan {id}");
        }
    }

    #[test]
    fn tolerances_stay_within_one_percent() {
        for c in registry() {
            if c.expected != 0.0 {
                assert!(
                    c.tolerance <= 0.01 * c.expected.abs() + 1e-30,
                    "{} tolerance {} too loose for {}",
                    c.id,
                    c.tolerance,
                    c.expected
                );
            }
        }
    }

    #[test]
    fn no_claim_fails_and_discrepancies_are_exactly_the_whitelist() {
        let results = all_results();
        let fails: Vec<&ClaimResult> = results
            .iter()
            .filter(|r| r.status == ClaimStatus::Fail)
            .collect();
        assert!(fails.is_empty(), "failing claims: {fails:#?}");
        let mut documented: Vec<&str> = results
            .iter()
            .filter(|r| r.status == ClaimStatus::DiscrepancyDocumented)
            .map(|r| r.id.as_str())
            .collect();
        documented.sort_unstable();
        let mut expected: Vec<&str> = DISCREPANCY_WHITELIST.to_vec();
        expected.sort_unstable();
        assert_eq!(documented, expected);
    }

    #[test]
    fn documented_discrepancies_have_the_analyzed_magnitudes() {
        let results = all_results();
        let get = |id: &str| results.iter().find(|r| r.id == id).unwrap();
        // truncated-threshold long edge lands 5.5e-4 from the published 1.081
        let r = get("edge_bounds.e_max.published");
        assert!((r.computed - 1.08045).abs() < 1e-4, "{}", r.computed);
        // exact-threshold reruns move the edge bounds visibly
        assert!((get("edge_bounds.e_max.full").computed - 1.0919892).abs() < 1e-4);
        assert!((get("edge_bounds.e_min.full").computed - 0.3928636).abs() < 1e-4);
        // the published angle floor is 0.0145 degrees off the true root
        let r = get("angle_bounds.min.published");
        assert!((r.abs_err - 0.01448).abs() < 1e-3, "{}", r.abs_err);
        // full-precision ratio reruns
        assert!((get("ratio.one_eff_type1.full").computed - 15.6397).abs() < 1e-3);
        assert!((get("ratio.quad_chain.full").computed - 31.2223).abs() < 1e-3);
        assert!((get("ratio.deg4_exclusion.full").computed - 23.6318).abs() < 1e-2);
        assert!((get("ratio.type2_chain.full").computed - 34.0694).abs() < 1e-2);
    }

    #[test]
    fn filter_selects_and_rejects() {
        let results = run_claims_scaled(Some("angle_bounds.*"), 1.0).unwrap();
        assert_eq!(results.len(), 4);
        assert!(results.iter().all(|r| r.id.starts_with("angle_bounds.")));
        let one = run_claims_scaled(Some("const.square"), 1.0).unwrap();
        assert_eq!(one.len(), 1);
        assert!(matches!(
            run_claims_scaled(Some("nonsense.*"), 1.0),
            Err(ClaimsError::UnknownClaim(_))
        ));
    }

    #[test]
    fn tolerance_scale_rescues_near_misses() {
        let strict = run_claims_scaled(Some("angle_bounds.min.published"), 1.0).unwrap();
        assert_eq!(strict[0].status, ClaimStatus::DiscrepancyDocumented);
        let loose = run_claims_scaled(Some("angle_bounds.min.published"), 2.0).unwrap();
        assert_eq!(loose[0].status, ClaimStatus::Pass);
    }

    #[test]
    fn json_report_round_trips() {
        let results = run_claims_scaled(Some("const.*"), 1.0).unwrap();
        let text = render_report(&results, ReportFormat::Json).unwrap();
        let back: Vec<ClaimResult> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, results);
        // stable field order in the emitted document
        let first_obj = text.find('{').unwrap();
        let id_pos = text[first_obj..].find("\"id\"").unwrap();
        let source_pos = text[first_obj..].find("\"source\"").unwrap();
        let mode_pos = text[first_obj..].find("\"mode\"").unwrap();
        assert!(id_pos < source_pos && source_pos < mode_pos);
    }

    #[test]
    fn text_report_lists_failures_last() {
        let mut results = run_claims_scaled(Some("const.*"), 1.0).unwrap();
        let mut broken = results[0].clone();
        broken.id = "zz.synthetic".into();
        broken.status = ClaimStatus::Fail;
        results.insert(0, broken);
        let text = render_report(&results, ReportFormat::Text).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        let last_row = lines[lines.len() - 2];
        assert!(last_row.starts_with("zz.synthetic"));
        assert!(text.contains("1 fail"));
        assert!(render_report(&[], ReportFormat::Text).is_err());
    }

    #[test]
    fn wildcard_matcher_basics() {
        assert!(wildcard_match("a*", "abc"));
        assert!(wildcard_match("*c", "abc"));
        assert!(wildcard_match("a*c", "abc"));
        assert!(wildcard_match("a*b*", "a1b2"));
        assert!(!wildcard_match("a*d", "abc"));
        assert!(!wildcard_match("abc", "abcd"));
        assert!(wildcard_match("abc", "abc"));
    }
}
