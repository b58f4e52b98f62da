//! Reference tilings: the two circumscribed pentagonal tilings of the
//! plane, a square grid, and a two-dart torus fixture with reflex angles.
//!
//! Each periodic pattern is a translational block of unit-area tiles plus
//! two period vectors. The pentagon coordinates are closed forms chosen so
//! the block tiles the plane exactly; unit tests pin them to the
//! circumscribed ideal (area 1, perimeter `2√(2+√3)`, stated angles).

use crate::geom::Vec2;

use super::{assemble_mesh, TilingMesh, TorusError};

/// Translational block of a doubly periodic tiling.
#[derive(Debug, Clone)]
pub struct PeriodicPattern {
    pub tiles: Vec<Vec<Vec2>>,
    pub u: Vec2,
    pub v: Vec2,
}

impl PeriodicPattern {
    /// Tile copies for all block offsets `i·u + j·v`, `0 ≤ i < p`, `0 ≤ j < q`.
    pub fn translates(&self, p: usize, q: usize) -> Vec<Vec<Vec2>> {
        let mut out = Vec::with_capacity(self.tiles.len() * p * q);
        for i in 0..p {
            for j in 0..q {
                let t = self
                    .u
                    .scale(i as f64)
                    .add(self.v.scale(j as f64));
                for tile in &self.tiles {
                    out.push(tile.iter().map(|&c| c.add(t)).collect());
                }
            }
        }
        out
    }
}

/// Unit-area pentagon with angles (90°, 120°, 120°, 90°, 120°), the right
/// angles nonadjacent, circumscribed about a circle. Corner A sits at the
/// origin with its right angle opening along the positive axes.
pub fn cairo_pentagon() -> Vec<Vec2> {
    let l = (2.0 / 3.0_f64).sqrt();
    let s = l * (3.0_f64.sqrt() - 1.0);
    vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(l, 0.0),
        Vec2::new(l + s / 2.0, 3.0_f64.sqrt() * s / 2.0),
        Vec2::new(1.0 / 2.0_f64.sqrt(), (1.5_f64).sqrt()),
        Vec2::new(0.0, l),
    ]
}

/// Unit-area pentagon with angles (90°, 90°, 120°, 120°, 120°), the right
/// angles adjacent along the base, circumscribed about a circle.
pub fn prismatic_pentagon() -> Vec<Vec2> {
    let r = 1.0 / (2.0 + 3.0_f64.sqrt()).sqrt();
    let h = r * (1.0 + 1.0 / 3.0_f64.sqrt());
    vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(2.0 * r, 0.0),
        Vec2::new(2.0 * r, h),
        Vec2::new(r, h + r / 3.0_f64.sqrt()),
        Vec2::new(0.0, h),
    ]
}

/// Four rotated copies of the Cairo pentagon pinwheel around the origin;
/// the period vectors span the resulting 4-tile block.
pub fn cairo_pattern() -> PeriodicPattern {
    let base = cairo_pentagon();
    let tiles = (0..4)
        .map(|k| {
            let (sin, cos) = (std::f64::consts::FRAC_PI_2 * k as f64).sin_cos();
            base.iter()
                .map(|p| Vec2::new(cos * p.x - sin * p.y, sin * p.x + cos * p.y))
                .collect()
        })
        .collect();
    let u = Vec2::new(
        2.0 * (std::f64::consts::PI / 12.0).cos(),
        2.0 * (std::f64::consts::PI / 12.0).sin(),
    );
    let v = Vec2::new(-u.y, u.x);
    PeriodicPattern { tiles, u, v }
}

/// An upright and an upside-down prismatic house forming a 2-tile block.
pub fn prismatic_pattern() -> PeriodicPattern {
    let up = prismatic_pentagon();
    let r = 1.0 / (2.0 + 3.0_f64.sqrt()).sqrt();
    let h = r * (1.0 + 1.0 / 3.0_f64.sqrt());
    let t = Vec2::new(3.0 * r, 2.0 * h + r / 3.0_f64.sqrt());
    let down = up.iter().map(|&p| t.sub(p)).collect();
    PeriodicPattern {
        tiles: vec![up, down],
        u: Vec2::new(2.0 * r, 0.0),
        v: Vec2::new(r, 2.0 * h + r / 3.0_f64.sqrt()),
    }
}

fn build_periodic(pattern: &PeriodicPattern, p: usize, q: usize) -> Result<TilingMesh, TorusError> {
    if p == 0 || q == 0 {
        return Err(TorusError::Empty("periods"));
    }
    let lattice = [pattern.u.scale(p as f64), pattern.v.scale(q as f64)];
    assemble_mesh(Some(lattice), &pattern.translates(p, q))
}

/// Torus mesh of `4pq` Cairo pentagons.
pub fn build_cairo(p: usize, q: usize) -> Result<TilingMesh, TorusError> {
    build_periodic(&cairo_pattern(), p, q)
}

/// Torus mesh of `2pq` prismatic pentagons.
pub fn build_prismatic(p: usize, q: usize) -> Result<TilingMesh, TorusError> {
    build_periodic(&prismatic_pattern(), p, q)
}

/// Torus mesh of `pq` unit squares.
pub fn build_square_grid(p: usize, q: usize) -> Result<TilingMesh, TorusError> {
    if p == 0 || q == 0 {
        return Err(TorusError::Empty("periods"));
    }
    let square = vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(0.0, 1.0),
    ];
    let pattern = PeriodicPattern {
        tiles: vec![square],
        u: Vec2::new(1.0, 0.0),
        v: Vec2::new(0.0, 1.0),
    };
    build_periodic(&pattern, p, q)
}

/// Planar patch of `4pq` Cairo pentagons, no lattice.
pub fn build_cairo_patch(p: usize, q: usize) -> Result<TilingMesh, TorusError> {
    if p == 0 || q == 0 {
        return Err(TorusError::Empty("periods"));
    }
    assemble_mesh(None, &cairo_pattern().translates(p, q))
}

/// Two non-convex unit-area quadrilaterals (darts) tiling a torus with two
/// vertices and four edges. One corner of each dart is reflex, so this
/// exercises the validator away from the convex case.
pub fn dart_pair_mesh() -> Result<TilingMesh, TorusError> {
    let k = 1.0 / 2.0_f64.sqrt();
    let d1 = [(0.0, 0.0), (2.0, 1.0), (4.0, 0.0), (2.0, 2.0)];
    let d2 = [(6.0, 2.0), (4.0, 1.0), (2.0, 2.0), (4.0, 0.0)];
    let scale = |pts: &[(f64, f64)]| {
        pts.iter()
            .map(|&(x, y)| Vec2::new(x * k, y * k))
            .collect::<Vec<_>>()
    };
    let lattice = [Vec2::new(4.0 * k, 0.0), Vec2::new(0.0, k)];
    assemble_mesh(Some(lattice), &[scale(&d1), scale(&d2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{
        cairo_prismatic_perimeter, cot_perimeter, polygon_angles, polygon_metrics,
    };

    fn deg(a: f64) -> f64 {
        a.to_radians()
    }

    #[test]
    fn cairo_pentagon_matches_circumscribed_ideal() {
        let poly = cairo_pentagon();
        let (area, perimeter) = polygon_metrics(&poly).unwrap();
        assert!((area - 1.0).abs() < 1e-12);
        assert!((perimeter - cairo_prismatic_perimeter()).abs() < 1e-12);
        let angles = polygon_angles(&poly);
        let expected = [90.0, 120.0, 120.0, 90.0, 120.0];
        for (a, e) in angles.iter().zip(expected) {
            assert!((a - deg(e)).abs() < 1e-9, "angle {a} vs {e} deg");
        }
        let formula = cot_perimeter(&angles).unwrap();
        assert!((perimeter - formula).abs() < 1e-9);
    }

    #[test]
    fn prismatic_pentagon_matches_circumscribed_ideal() {
        let poly = prismatic_pentagon();
        let (area, perimeter) = polygon_metrics(&poly).unwrap();
        assert!((area - 1.0).abs() < 1e-12);
        assert!((perimeter - cairo_prismatic_perimeter()).abs() < 1e-12);
        let angles = polygon_angles(&poly);
        let expected = [90.0, 90.0, 120.0, 120.0, 120.0];
        for (a, e) in angles.iter().zip(expected) {
            assert!((a - deg(e)).abs() < 1e-9);
        }
    }

    #[test]
    fn pattern_blocks_have_expected_areas() {
        let cairo = cairo_pattern();
        let cell = (cairo.u.x * cairo.v.y - cairo.u.y * cairo.v.x).abs();
        assert!((cell - 4.0).abs() < 1e-12);
        let prism = prismatic_pattern();
        let cell = (prism.u.x * prism.v.y - prism.u.y * prism.v.x).abs();
        assert!((cell - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dart_corners_have_one_reflex_angle() {
        let mesh = dart_pair_mesh().unwrap();
        for f in 0..mesh.faces.len() {
            let poly = mesh.face_polygon(f).unwrap();
            let angles = polygon_angles(&poly);
            let reflex: Vec<f64> = angles
                .iter()
                .copied()
                .filter(|&a| a > std::f64::consts::PI)
                .collect();
            assert_eq!(reflex.len(), 1);
            assert!((reflex[0].to_degrees() - 233.13010235415598).abs() < 1e-9);
        }
    }
}
