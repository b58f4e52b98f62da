//! Disk truncation statistics for periodic planar tilings.
//!
//! Unrolls a periodic pattern far enough to cover a disk, then measures the
//! tiling inside: total edge length in the disk, covered area, the edge
//! length and area of wholly contained tiles, and how often the circle
//! crosses tile edges. Edge length and crossings are summed per tile and
//! halved (every edge of a full planar tiling borders exactly two tiles),
//! which avoids any matching tolerance; contained-tile edges are
//! deduplicated by quantized endpoints.

use std::collections::HashSet;

use serde::Serialize;

use crate::geom::Vec2;

use super::{generators::PeriodicPattern, TorusError};

/// What a disk of a given radius sees of the tiling.
#[derive(Debug, Clone, Serialize)]
pub struct TruncationStats {
    pub radius: f64,
    pub origin: [f64; 2],
    /// total edge length inside the disk, each edge counted once
    pub edge_length_in_disk: f64,
    /// area of the disk covered by tiles (equals the disk area for a
    /// gap-free tiling)
    pub covered_area: f64,
    pub disk_area: f64,
    /// tiles lying wholly inside the disk
    pub contained_tiles: usize,
    pub contained_area: f64,
    /// total length of the contained tiles' edges, each counted once
    pub contained_edge_length: f64,
    /// points where the circle crosses an edge transversally
    pub circle_edge_crossings: usize,
    /// edge length in the disk divided by the disk area
    pub rho_hat: f64,
    /// contained edge length over contained area, absent while no tile fits
    pub contained_ratio: Option<f64>,
}

/// Intersection parameters of the segment `a + t(b - a)`, `t` in (0, 1),
/// with the circle of radius `r` about the origin.
fn circle_hits(a: Vec2, b: Vec2, r: f64) -> Vec<f64> {
    let d = b.sub(a);
    let qa = d.dot(d);
    let qb = 2.0 * a.dot(d);
    let qc = a.dot(a) - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    let mut out = Vec::new();
    if disc > 0.0 && qa > 0.0 {
        let sq = disc.sqrt();
        for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
            if t > 1e-12 && t < 1.0 - 1e-12 {
                out.push(t);
            }
        }
        out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    }
    out
}

/// Length of the part of segment `ab` inside the disk, plus the number of
/// transversal circle crossings. Coordinates are relative to the center.
fn chord_in_disk(a: Vec2, b: Vec2, r: f64) -> (f64, usize) {
    let hits = circle_hits(a, b, r);
    let len = a.dist(b);
    let mut ts = Vec::with_capacity(hits.len() + 2);
    ts.push(0.0);
    ts.extend_from_slice(&hits);
    ts.push(1.0);
    let mut inside = 0.0;
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let tm = 0.5 * (t0 + t1);
        let m = a.add(b.sub(a).scale(tm));
        if m.dot(m) <= r * r {
            inside += (t1 - t0) * len;
        }
    }
    (inside, hits.len())
}

/// Area of a polygon clipped to the disk of radius `r` about the origin.
/// Inside pieces contribute their triangle with the center, outside pieces
/// the circular sector they subtend; coordinates relative to the center.
pub(crate) fn disk_clipped_area(poly: &[Vec2], r: f64) -> f64 {
    let n = poly.len();
    let mut area = 0.0;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let hits = circle_hits(a, b, r);
        let mut ts = Vec::with_capacity(hits.len() + 2);
        ts.push(0.0);
        ts.extend_from_slice(&hits);
        ts.push(1.0);
        for w in ts.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            if t1 - t0 < 1e-15 {
                continue;
            }
            let d = b.sub(a);
            let p = a.add(d.scale(t0));
            let q = a.add(d.scale(t1));
            let m = a.add(d.scale(0.5 * (t0 + t1)));
            if m.dot(m) <= r * r {
                area += 0.5 * p.cross(q);
            } else {
                area += 0.5 * r * r * p.cross(q).atan2(p.dot(q));
            }
        }
    }
    area
}

/// Measure the tiling generated by `pattern` inside the disk of the given
/// radius around `origin`.
pub fn truncate_pattern(
    pattern: &PeriodicPattern,
    radius: f64,
    origin: Vec2,
) -> Result<TruncationStats, TorusError> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(TorusError::BadTruncation(format!(
            "radius must be positive and finite, got {radius}"
        )));
    }
    if !origin.x.is_finite() || !origin.y.is_finite() {
        return Err(TorusError::BadTruncation("origin must be finite".into()));
    }
    let (u, v) = (pattern.u, pattern.v);
    let det = u.x * v.y - u.y * v.x;
    if det.abs() < 1e-12 {
        return Err(TorusError::SingularLattice);
    }
    // block diameter bounds how far a tile can reach out of its cell
    let mut diam = 0.0f64;
    for tile in &pattern.tiles {
        for a in tile {
            for b in tile {
                diam = diam.max(a.dist(*b));
            }
        }
        if tile.len() < 3 {
            return Err(TorusError::ShortPolygon(0));
        }
    }
    let row0 = Vec2::new(v.y / det, -v.x / det);
    let row1 = Vec2::new(-u.y / det, u.x / det);
    let fo = Vec2::new(row0.dot(origin), row1.dot(origin));
    let span = (radius + diam) * row0.norm().max(row1.norm()) * 1.5 + 1.0;
    let i_range = ((fo.x - span).floor() as i64)..=((fo.x + span).ceil() as i64);
    let j_range = ((fo.y - span).floor() as i64)..=((fo.y + span).ceil() as i64);

    let quantize = |p: Vec2| -> (i64, i64) {
        ((p.x * 1e7).round() as i64, (p.y * 1e7).round() as i64)
    };

    let mut covered_area = 0.0;
    let mut edge_length_doubled = 0.0;
    let mut crossings_doubled = 0usize;
    let mut contained_tiles = 0usize;
    let mut contained_area = 0.0;
    let mut contained_edge_length = 0.0;
    let mut contained_edges: HashSet<((i64, i64), (i64, i64))> = HashSet::new();

    let r2 = radius * radius;
    for i in i_range {
        for j in j_range.clone() {
            let t = u.scale(i as f64).add(v.scale(j as f64)).sub(origin);
            for tile in &pattern.tiles {
                let poly: Vec<Vec2> = tile.iter().map(|&c| c.add(t)).collect();
                if poly.iter().all(|c| c.norm() > radius + diam) {
                    continue;
                }
                covered_area += disk_clipped_area(&poly, radius);
                let contained = poly.iter().all(|c| c.dot(*c) <= r2);
                if contained {
                    contained_tiles += 1;
                    let mut twice_area = 0.0;
                    for k in 0..poly.len() {
                        twice_area += poly[k].cross(poly[(k + 1) % poly.len()]);
                    }
                    contained_area += 0.5 * twice_area.abs();
                }
                for k in 0..poly.len() {
                    let a = poly[k];
                    let b = poly[(k + 1) % poly.len()];
                    let (inside, hits) = chord_in_disk(a, b, radius);
                    edge_length_doubled += inside;
                    crossings_doubled += hits;
                    if contained {
                        let (ka, kb) = (quantize(a), quantize(b));
                        let key = if ka <= kb { (ka, kb) } else { (kb, ka) };
                        if contained_edges.insert(key) {
                            contained_edge_length += a.dist(b);
                        }
                    }
                }
            }
        }
    }

    let disk_area = std::f64::consts::PI * radius * radius;
    let edge_length_in_disk = edge_length_doubled / 2.0;
    Ok(TruncationStats {
        radius,
        origin: [origin.x, origin.y],
        edge_length_in_disk,
        covered_area,
        disk_area,
        contained_tiles,
        contained_area,
        contained_edge_length,
        circle_edge_crossings: crossings_doubled / 2,
        rho_hat: edge_length_in_disk / disk_area,
        contained_ratio: if contained_area > 0.0 {
            Some(contained_edge_length / contained_area)
        } else {
            None
        },
    })
}
