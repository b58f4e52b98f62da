//! Metric core: cotangent perimeter formula, circumscribed and inscribed
//! constructions, triangle bound, small planar helpers.
//!
//! Everything here works in radians and unit area. A convex n-gon with
//! interior angles `a_i` that circumscribes a circle of radius `r` has
//! tangent lengths `r·cot(a_i/2)`, area `r²·Σ cot(a_i/2)` and perimeter
//! `2r·Σ cot(a_i/2)`; at unit area the perimeter is `2·√(Σ cot(a_i/2))`,
//! which is the minimum over all unit-area polygons with those angles.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Angle-sum slack accepted when validating a polygon's interior angles.
pub const ANGLE_SUM_TOL: f64 = 1e-7;

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("polygon needs at least 3 angles, got {0}")]
    TooFewAngles(usize),
    #[error("interior angle {0} outside (0, pi)")]
    AngleOutOfRange(f64),
    #[error("interior angles sum to {got}, expected {expected}")]
    AngleSumMismatch { got: f64, expected: f64 },
    #[error("edge length {0} infeasible for a unit-area inscribed pentagon")]
    InfeasibleEdge(f64),
    #[error("bisection bracket failed: f({lo}) and f({hi}) have the same sign")]
    BracketFailure { lo: f64, hi: f64 },
    #[error("degenerate edge of length {0}")]
    DegenerateEdge(f64),
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Vec2) -> f64 {
        Vec2::new(self.x - o.x, self.y - o.y).norm()
    }

    pub fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

fn check_angles(angles: &[f64]) -> Result<(), GeomError> {
    if angles.len() < 3 {
        return Err(GeomError::TooFewAngles(angles.len()));
    }
    for &a in angles {
        if !(a > 0.0 && a < PI) || !a.is_finite() {
            return Err(GeomError::AngleOutOfRange(a));
        }
    }
    let expected = (angles.len() as f64 - 2.0) * PI;
    let got: f64 = angles.iter().sum();
    if (got - expected).abs() > ANGLE_SUM_TOL {
        return Err(GeomError::AngleSumMismatch { got, expected });
    }
    Ok(())
}

/// Minimum perimeter of a unit-area convex polygon with the given interior
/// angles: `2·√(Σ cot(a_i/2))`. The minimum is attained exactly by the
/// circumscribed polygon returned from [`circumscribe`].
pub fn cot_perimeter(angles: &[f64]) -> Result<f64, GeomError> {
    check_angles(angles)?;
    let s: f64 = angles.iter().map(|a| 1.0 / (a / 2.0).tan()).sum();
    Ok(2.0 * s.sqrt())
}

/// Perimeter shared by the two unit-area circumscribed pentagons with
/// angle multiset {90°, 90°, 120°, 120°, 120°}: `2·√(2 + √3)`.
pub fn cairo_prismatic_perimeter() -> f64 {
    2.0 * (2.0 + 3.0_f64.sqrt()).sqrt()
}

/// Perimeter of the unit-area regular pentagon, `2·√(5·tan(π/5))` in the
/// closed form `2·√(5·√(5 − 2√5))`.
pub fn regular_pentagon_perimeter() -> f64 {
    2.0 * (5.0 * (5.0 - 2.0 * 5.0_f64.sqrt()).sqrt()).sqrt()
}

/// Perimeter of the unit-area equilateral triangle, `3·√(4/√3)`.
pub fn equilateral_triangle_perimeter() -> f64 {
    3.0 * (4.0 / 3.0_f64.sqrt()).sqrt()
}

/// A unit-area polygon circumscribed about a circle centred at the origin,
/// with the first tangent point on the positive x axis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircumscribedPolygon {
    pub angles: Vec<f64>,
    pub incircle_radius: f64,
    pub tangent_lengths: Vec<f64>,
    pub vertices: Vec<Vec2>,
    pub perimeter: f64,
}

/// Build the unit-area polygon circumscribed about a circle that attains
/// [`cot_perimeter`]. Vertex `i` carries interior angle `angles[i]` and sits
/// between the tangent points of edges `i` and `i+1`.
pub fn circumscribe(angles: &[f64]) -> Result<CircumscribedPolygon, GeomError> {
    check_angles(angles)?;
    let cot_sum: f64 = angles.iter().map(|a| 1.0 / (a / 2.0).tan()).sum();
    let r = 1.0 / cot_sum.sqrt();
    let mut phi = 0.0;
    let mut vertices = Vec::with_capacity(angles.len());
    for &a in angles {
        let delta = PI - a;
        let psi = phi + delta / 2.0;
        let rho = r / (a / 2.0).sin();
        vertices.push(Vec2::new(rho * psi.cos(), rho * psi.sin()));
        phi += delta;
    }
    let tangent_lengths = angles.iter().map(|a| r / (a / 2.0).tan()).collect();
    Ok(CircumscribedPolygon {
        angles: angles.to_vec(),
        incircle_radius: r,
        tangent_lengths,
        vertices,
        perimeter: 2.0 * r * cot_sum,
    })
}

/// Shoelace area (sign stripped) and perimeter of a closed polygon chain.
pub fn polygon_metrics(vertices: &[Vec2]) -> Result<(f64, f64), GeomError> {
    if vertices.len() < 3 {
        return Err(GeomError::TooFewAngles(vertices.len()));
    }
    let (area, perim) = signed_metrics(vertices);
    let n = vertices.len();
    for i in 0..n {
        let len = vertices[i].dist(vertices[(i + 1) % n]);
        if len < 1e-12 {
            return Err(GeomError::DegenerateEdge(len));
        }
    }
    Ok((area.abs(), perim))
}

pub(crate) fn signed_metrics(vertices: &[Vec2]) -> (f64, f64) {
    let n = vertices.len();
    let mut area2 = 0.0;
    let mut perim = 0.0;
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        area2 += p.cross(q);
        perim += p.dist(q);
    }
    (area2 / 2.0, perim)
}

/// Convexity classification of a pentagon by its reflex-angle count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PentagonClass {
    Convex,
    NonConvexType1,
    NonConvexType2,
}

/// Classify a pentagon angle vector: zero reflex angles is convex, one is
/// Type 1, two is Type 2. Three or more reflex angles cannot happen with the
/// angles summing to 3π, so that input is rejected as corrupted.
pub fn classify_pentagon(angles: &[f64]) -> Result<PentagonClass, GeomError> {
    if angles.len() != 5 {
        return Err(GeomError::Domain(format!(
            "pentagon classification needs 5 angles, got {}",
            angles.len()
        )));
    }
    for &a in angles {
        if !(a > 0.0 && a < 2.0 * PI) || !a.is_finite() {
            return Err(GeomError::AngleOutOfRange(a));
        }
    }
    let got: f64 = angles.iter().sum();
    if (got - 3.0 * PI).abs() > ANGLE_SUM_TOL {
        return Err(GeomError::AngleSumMismatch {
            got,
            expected: 3.0 * PI,
        });
    }
    match angles.iter().filter(|&&a| a > PI).count() {
        0 => Ok(PentagonClass::Convex),
        1 => Ok(PentagonClass::NonConvexType1),
        2 => Ok(PentagonClass::NonConvexType2),
        k => Err(GeomError::Domain(format!(
            "{k} reflex angles cannot sum to 3 pi"
        ))),
    }
}

/// Perimeter floor for unit-area non-convex pentagons: a single reflex
/// angle forces more perimeter than the unit square, two reflex angles more
/// than the unit-area equilateral triangle.
pub fn nonconvex_perimeter_floor(class: PentagonClass) -> Result<f64, GeomError> {
    match class {
        PentagonClass::NonConvexType1 => Ok(4.0),
        PentagonClass::NonConvexType2 => Ok(equilateral_triangle_perimeter()),
        PentagonClass::Convex => Err(GeomError::Domain(
            "perimeter floor applies to non-convex classes only".into(),
        )),
    }
}

/// Verdict of the paired-small-angles screen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmallAnglesVerdict {
    NotEfficient,
    CairoPrismaticOnly,
    Inconclusive,
}

/// Screen a convex pentagon by its angle pairs: a pair averaging under π/2
/// rules the pentagon out, a pair averaging exactly π/2 pins it to the two
/// known minimisers, otherwise the test says nothing.
pub fn two_small_angles_test(angles: &[f64]) -> Result<SmallAnglesVerdict, GeomError> {
    check_angles(angles)?;
    if angles.len() != 5 {
        return Err(GeomError::Domain(format!(
            "small-angle screen needs 5 angles, got {}",
            angles.len()
        )));
    }
    let mut boundary = false;
    for i in 0..angles.len() {
        for j in (i + 1)..angles.len() {
            let avg = 0.5 * (angles[i] + angles[j]);
            if avg < PI / 2.0 - 1e-9 {
                return Ok(SmallAnglesVerdict::NotEfficient);
            }
            if (avg - PI / 2.0).abs() <= 1e-9 {
                boundary = true;
            }
        }
    }
    if boundary {
        Ok(SmallAnglesVerdict::CairoPrismaticOnly)
    } else {
        Ok(SmallAnglesVerdict::Inconclusive)
    }
}

/// Whether a unit-area pentagon perimeter is at or below the benchmark
/// `2√(2+√3)`; the boundary counts.
pub fn is_efficient(perimeter: f64) -> bool {
    perimeter <= cairo_prismatic_perimeter() + 1e-12
}

/// Interior angles of a simple counterclockwise polygon. Reflex vertices
/// come out greater than π.
pub fn polygon_angles(vertices: &[Vec2]) -> Vec<f64> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let p = vertices[i];
            let e_in = p.sub(vertices[(i + n - 1) % n]);
            let e_out = vertices[(i + 1) % n].sub(p);
            let turn = e_in.cross(e_out).atan2(e_in.dot(e_out));
            PI - turn
        })
        .collect()
}

/// Pentagon inscribed in a circle of radius `r` with four edges subtending
/// central angle `alpha` each and the fifth subtending `2π − 4α`; the fifth
/// edge has length `e = 2r·sin(2α)`. At unit area this family minimises
/// perimeter among pentagons with one edge pinned to `e`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct InscribedPentagonParams {
    pub r: f64,
    pub alpha: f64,
    pub e: f64,
    pub perimeter: f64,
}

/// Unit-area member of the inscribed family at central angle `alpha`.
pub fn inscribed_at_alpha(alpha: f64) -> InscribedPentagonParams {
    let unit_area = 2.0 * alpha.sin() - 0.5 * (4.0 * alpha).sin();
    let r = 1.0 / unit_area.sqrt();
    InscribedPentagonParams {
        r,
        alpha,
        e: 2.0 * r * (2.0 * alpha).sin(),
        perimeter: r * (8.0 * (alpha / 2.0).sin() + 2.0 * (2.0 * alpha).sin()),
    }
}

/// Generic bisection to 1e-15 in the variable; assumes one sign change.
pub(crate) fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> Result<f64, GeomError> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(GeomError::BracketFailure { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Solve the system {area = 1, e = 2r·sin(2α)} for the inscribed family.
/// The edge map α ↦ e is strictly decreasing on (0, π/2), from +∞ to 0, so
/// bisection on α recovers the unique parameters; `e` must lie in (0, 2).
pub fn inscribed_given_edge(e: f64) -> Result<InscribedPentagonParams, GeomError> {
    if !(e > 0.0 && e < 2.0) || !e.is_finite() {
        return Err(GeomError::InfeasibleEdge(e));
    }
    let mut lo = 1e-9;
    // Push lo down until the bracket straddles the target; e(lo) → ∞ as lo → 0.
    while inscribed_at_alpha(lo).e < e {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(GeomError::InfeasibleEdge(e));
        }
    }
    let alpha = bisect(lo, PI / 2.0 - 1e-12, |a| inscribed_at_alpha(a).e - e)?;
    Ok(inscribed_at_alpha(alpha))
}

/// Minimum perimeter of a unit-area triangle with one edge pinned to `e`:
/// the isosceles triangle on base `e` with apex height `2/e`, perimeter
/// `e + 2·√((e/2)² + (2/e)²)`.
pub fn min_triangle_given_edge(e: f64) -> f64 {
    e + 2.0 * ((e / 2.0).powi(2) + (2.0 / e).powi(2)).sqrt()
}

/// Both intersection points of two circles, or None when they are disjoint,
/// nested, or concentric. The two points are mirror images across the line
/// of centres; `.0` lies to the left of the direction c0 → c1.
pub fn circle_circle_intersection(
    c0: Vec2,
    r0: f64,
    c1: Vec2,
    r1: f64,
) -> Option<(Vec2, Vec2)> {
    let d = c0.dist(c1);
    if d == 0.0 || d > r0 + r1 || d < (r0 - r1).abs() {
        return None;
    }
    let a = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d);
    let h2 = r0 * r0 - a * a;
    let h = h2.max(0.0).sqrt();
    let u = c1.sub(c0).scale(1.0 / d);
    let m = c0.add(u.scale(a));
    let off = Vec2::new(-u.y, u.x).scale(h);
    Some((m.add(off), m.sub(off)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(v: &[f64]) -> Vec<f64> {
        v.iter().map(|d| d.to_radians()).collect()
    }

    #[test]
    fn cot_perimeter_closed_forms() {
        let sq = cot_perimeter(&deg(&[90.0, 90.0, 90.0, 90.0])).unwrap();
        assert!((sq - 4.0).abs() < 1e-12);
        let reg = cot_perimeter(&deg(&[108.0; 5])).unwrap();
        assert!((reg - regular_pentagon_perimeter()).abs() < 1e-12);
        assert!((reg - 3.8119352775338697).abs() < 1e-12);
        let tri = cot_perimeter(&deg(&[60.0, 60.0, 60.0])).unwrap();
        assert!((tri - equilateral_triangle_perimeter()).abs() < 1e-12);
        assert!((tri - 4.559014113909556).abs() < 1e-12);
    }

    #[test]
    fn two_right_angles_three_equal_gives_cairo_perimeter() {
        let p = cot_perimeter(&deg(&[90.0, 90.0, 120.0, 120.0, 120.0])).unwrap();
        assert!((p - cairo_prismatic_perimeter()).abs() < 1e-13);
        assert!((p - 3.8637033051562732).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(cot_perimeter(&[1.0, 1.0]), Err(GeomError::TooFewAngles(2)));
        assert!(matches!(
            cot_perimeter(&[0.0, PI / 2.0, PI / 2.0]),
            Err(GeomError::AngleOutOfRange(_))
        ));
        assert!(matches!(
            cot_perimeter(&deg(&[100.0, 100.0, 100.0, 100.0, 100.0])),
            Err(GeomError::AngleSumMismatch { .. })
        ));
    }

    #[test]
    fn circumscribed_polygon_attains_the_formula() {
        for angles in [
            deg(&[108.0; 5]),
            deg(&[90.0, 120.0, 120.0, 90.0, 120.0]),
            deg(&[90.0, 108.0, 108.0, 108.0, 126.0]),
            deg(&[80.0, 70.0, 120.0, 130.0, 140.0]),
        ] {
            let poly = circumscribe(&angles).unwrap();
            let (area, perim) = polygon_metrics(&poly.vertices).unwrap();
            assert!((area - 1.0).abs() < 1e-12, "area {area}");
            let want = cot_perimeter(&angles).unwrap();
            assert!((perim - want).abs() < 1e-12);
            assert!((poly.perimeter - want).abs() < 1e-12);
            let got = polygon_angles(&poly.vertices);
            for (g, w) in got.iter().zip(&angles) {
                assert!((g - w).abs() < 1e-9, "angle {g} vs {w}");
            }
        }
    }

    #[test]
    fn cairo_pentagon_edges_are_four_long_one_short() {
        let poly = circumscribe(&deg(&[90.0, 120.0, 120.0, 90.0, 120.0])).unwrap();
        let v = &poly.vertices;
        let mut edges: Vec<f64> = (0..5).map(|i| v[i].dist(v[(i + 1) % 5])).collect();
        edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let long = (2.0f64 / 3.0).sqrt();
        let short = long * (3.0f64.sqrt() - 1.0);
        assert!((edges[0] - short).abs() < 1e-12);
        for e in &edges[1..] {
            assert!((e - long).abs() < 1e-12);
        }
    }

    #[test]
    fn inscribed_family_hits_regular_pentagon_at_symmetric_alpha() {
        let p = inscribed_at_alpha(72.0_f64.to_radians());
        assert!((p.perimeter - regular_pentagon_perimeter()).abs() < 1e-9);
        assert!((p.e - 0.7623870555067739).abs() < 1e-12);
    }

    #[test]
    fn inscribed_given_edge_roundtrips() {
        for e in [0.39, 0.41, 0.7623870555067739, 1.08, 1.2, 1.9] {
            let p = inscribed_given_edge(e).unwrap();
            assert!((p.e - e).abs() < 1e-10);
            let area = 2.0 * p.r * p.r * p.alpha.sin()
                - 0.5 * p.r * p.r * (4.0 * p.alpha).sin();
            assert!((area - 1.0).abs() < 1e-10);
        }
        let reg = inscribed_given_edge(0.7623870555067739).unwrap();
        assert!((reg.alpha.to_degrees() - 72.0).abs() < 1e-8);
        assert!(inscribed_given_edge(0.0).is_err());
        assert!(inscribed_given_edge(2.0).is_err());
        assert!(inscribed_given_edge(-1.0).is_err());
    }

    #[test]
    fn triangle_bound_values() {
        assert!((min_triangle_given_edge(1.081) - 4.9359467870571).abs() < 1e-10);
        let eq_edge = (4.0 / 3.0_f64.sqrt()).sqrt();
        assert!(
            (min_triangle_given_edge(eq_edge) - equilateral_triangle_perimeter()).abs() < 1e-12
        );
        assert!((min_triangle_given_edge(2.0_f64.sqrt()) - 4.576491222541475).abs() < 1e-9);
        // equilateral edge is the global minimiser: central difference vanishes
        let h = 1e-6;
        let d = (min_triangle_given_edge(eq_edge + h) - min_triangle_given_edge(eq_edge - h))
            / (2.0 * h);
        assert!(d.abs() < 1e-6);
    }

    #[test]
    fn circle_intersections() {
        let (p, q) = circle_circle_intersection(
            Vec2::new(0.0, 0.0),
            1.0,
            Vec2::new(1.0, 0.0),
            1.0,
        )
        .unwrap();
        assert!((p.x - 0.5).abs() < 1e-12 && (p.y - 0.75f64.sqrt()).abs() < 1e-12);
        assert!((q.x - 0.5).abs() < 1e-12 && (q.y + 0.75f64.sqrt()).abs() < 1e-12);
        assert!(circle_circle_intersection(
            Vec2::new(0.0, 0.0),
            1.0,
            Vec2::new(5.0, 0.0),
            1.0
        )
        .is_none());
    }

    #[test]
    fn reflex_angle_detected() {
        // dart: reflex vertex at (2,1)
        let dart = [
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(4.0, 0.0),
            Vec2::new(2.0, 2.0),
        ];
        let angs = polygon_angles(&dart);
        assert!(angs[1] > PI);
        let (area, _) = polygon_metrics(&dart).unwrap();
        assert!(area > 0.0);
    }

    #[test]
    fn metrics_reports_degeneracy_and_fixed_shapes() {
        let sq = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ];
        assert_eq!(polygon_metrics(&sq).unwrap(), (1.0, 4.0));
        let tri = [
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0_f64.sqrt(), 0.0),
            Vec2::new(0.0, 2.0_f64.sqrt()),
        ];
        let (a, p) = polygon_metrics(&tri).unwrap();
        assert!((a - 1.0).abs() < 1e-12);
        assert!((p - (2.0 * 2.0_f64.sqrt() + 2.0)).abs() < 1e-12);
        let dup = [sq[0], sq[0], sq[1], sq[2]];
        assert!(matches!(
            polygon_metrics(&dup),
            Err(GeomError::DegenerateEdge(_))
        ));
    }

    #[test]
    fn pentagon_classes() {
        assert_eq!(
            classify_pentagon(&deg(&[108.0; 5])).unwrap(),
            PentagonClass::Convex
        );
        assert_eq!(
            classify_pentagon(&deg(&[200.0, 85.0, 85.0, 85.0, 85.0])).unwrap(),
            PentagonClass::NonConvexType1
        );
        assert_eq!(
            classify_pentagon(&deg(&[190.0, 190.0, 55.0, 55.0, 50.0])).unwrap(),
            PentagonClass::NonConvexType2
        );
        assert!(classify_pentagon(&deg(&[108.0; 4])).is_err());
        assert!(classify_pentagon(&deg(&[100.0; 5])).is_err());
        // rotation/reflection invariance
        let base = deg(&[200.0, 85.0, 85.0, 85.0, 85.0]);
        let mut rot = base.clone();
        rot.rotate_left(2);
        let refl: Vec<f64> = base.iter().rev().copied().collect();
        assert_eq!(
            classify_pentagon(&rot).unwrap(),
            classify_pentagon(&base).unwrap()
        );
        assert_eq!(
            classify_pentagon(&refl).unwrap(),
            classify_pentagon(&base).unwrap()
        );
    }

    #[test]
    fn nonconvex_floors() {
        let t1 = nonconvex_perimeter_floor(PentagonClass::NonConvexType1).unwrap();
        let t2 = nonconvex_perimeter_floor(PentagonClass::NonConvexType2).unwrap();
        assert_eq!(t1, 4.0);
        assert!((t2 - 4.559014113909556).abs() < 1e-12);
        assert!(t2 > t1);
        assert!(nonconvex_perimeter_floor(PentagonClass::Convex).is_err());
    }

    #[test]
    fn small_angle_screen() {
        let sum_fix = |a: f64, b: f64| {
            let rest = (540.0 - a - b) / 3.0;
            deg(&[a, b, rest, rest, rest])
        };
        assert_eq!(
            two_small_angles_test(&sum_fix(80.0, 80.0)).unwrap(),
            SmallAnglesVerdict::NotEfficient
        );
        assert_eq!(
            two_small_angles_test(&deg(&[90.0, 120.0, 120.0, 90.0, 120.0])).unwrap(),
            SmallAnglesVerdict::CairoPrismaticOnly
        );
        assert_eq!(
            two_small_angles_test(&deg(&[108.0; 5])).unwrap(),
            SmallAnglesVerdict::Inconclusive
        );
    }

    #[test]
    fn efficiency_boundary_is_inclusive() {
        assert!(is_efficient(3.8414));
        assert!(!is_efficient(3.87));
        assert!(is_efficient(cairo_prismatic_perimeter()));
    }
}
