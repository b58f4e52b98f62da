//! Doubly periodic tiling meshes and their validation.
//!
//! A mesh lives on a flat torus when `lattice` holds two period vectors, or
//! in the plane when it is absent. Edges carry a lattice shift so that a
//! face can close up around the torus: the edge geometry runs from
//! `vertices[tail]` to `vertices[head] + shift·Λ`. Faces are oriented cycles
//! of one-based signed edge references; a negative reference traverses the
//! edge against its stored direction.
//!
//! `validate` separates malformed topology (hard errors) from geometric
//! defects (a report of violations with locations), so deliberately broken
//! fixtures can be inspected instead of panicking the caller.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{self, Vec2};

pub mod generators;
pub mod truncate;

pub use generators::{
    build_cairo, build_cairo_patch, build_prismatic, build_square_grid, cairo_pattern,
    cairo_pentagon, dart_pair_mesh, prismatic_pattern, prismatic_pentagon, PeriodicPattern,
};
pub use truncate::{truncate_pattern, TruncationStats};

/// Hard failures: topology so broken the mesh cannot be interpreted.
#[derive(Debug, Error)]
pub enum TorusError {
    #[error("mesh has no {0}")]
    Empty(&'static str),
    #[error("edge {edge} references vertex {vertex} but there are {count}")]
    BadVertexRef {
        edge: usize,
        vertex: usize,
        count: usize,
    },
    #[error("face {face} references edge {reference} but there are {count}")]
    BadEdgeRef {
        face: usize,
        reference: i64,
        count: usize,
    },
    #[error("face {face} has {len} edges, need at least 3")]
    ShortFace { face: usize, len: usize },
    #[error("face {face} walk breaks at position {position}: edge starts at vertex {got}, walk is at {expected}")]
    BrokenWalk {
        face: usize,
        position: usize,
        got: usize,
        expected: usize,
    },
    #[error("face {face} walk does not return to its start")]
    OpenWalk { face: usize },
    #[error("edge {0} has zero length")]
    ZeroLengthEdge(usize),
    #[error("edge {0} carries a lattice shift but the mesh has no lattice")]
    ShiftWithoutLattice(usize),
    #[error("lattice vectors are linearly dependent")]
    SingularLattice,
    #[error("polygon {0} has fewer than 3 corners")]
    ShortPolygon(usize),
    #[error("mesh is planar, not a torus")]
    NotATorus,
    #[error("{0}")]
    BadTruncation(String),
}

/// One directed edge: `(tail, head, shift)`. Serializes to the wire form
/// `[tail, head, [si, sj]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshEdge(pub usize, pub usize, pub [i32; 2]);

impl MeshEdge {
    pub fn tail(&self) -> usize {
        self.0
    }

    pub fn head(&self) -> usize {
        self.1
    }

    pub fn shift(&self) -> [i32; 2] {
        self.2
    }
}

/// Tiling mesh on a torus (with `lattice`) or in the plane (without).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TilingMesh {
    pub lattice: Option<[[f64; 2]; 2]>,
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<MeshEdge>,
    pub faces: Vec<Vec<i64>>,
}

/// Geometric defects found by `validate`, with enough location data to fix
/// the offending element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationRule {
    FaceOrientation,
    FaceArea,
    FaceAngles,
    EdgeUse,
    VertexAngle,
    TJunction,
    EulerCharacteristic,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub rule: ViolationRule,
    pub location: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub boundary_edges: usize,
    pub euler_characteristic: i64,
    pub tile_area_min: f64,
    pub tile_area_max: f64,
    pub edge_length_total: f64,
    pub per_tile_edge_length: f64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Face-by-face and vertex-by-vertex head count of a validated mesh.
///
/// A face is efficient when it is a convex pentagon whose perimeter is at
/// most the circumscribed benchmark; every other convex face (squares
/// included) lands in the convex-inefficient fraction. Non-convex faces are
/// split by reflex count. A vertex is efficient when every face meeting it
/// is efficient.
#[derive(Debug, Clone, Serialize)]
pub struct TileCensus {
    pub faces: usize,
    pub efficient_pentagons: usize,
    pub nonconvex_faces: usize,
    pub efficient_fraction: f64,
    pub convex_inefficient_fraction: f64,
    pub single_reflex_fraction: f64,
    pub multi_reflex_fraction: f64,
    pub efficient_degree3_vertices: usize,
    pub efficient_degree4_vertices: usize,
    pub inefficient_vertices: usize,
}

const MATCH_TOL: f64 = 1e-6;
const AREA_TOL: f64 = 1e-8;
const ANGLE_TOL: f64 = 1e-8;
const TJUNCTION_TOL: f64 = 1e-9;

impl TilingMesh {
    pub fn vertex(&self, i: usize) -> Vec2 {
        Vec2::new(self.vertices[i][0], self.vertices[i][1])
    }

    fn lattice_vec(&self, shift: [i32; 2]) -> Vec2 {
        match self.lattice {
            Some([u, v]) => Vec2::new(
                f64::from(shift[0]) * u[0] + f64::from(shift[1]) * v[0],
                f64::from(shift[0]) * u[1] + f64::from(shift[1]) * v[1],
            ),
            None => Vec2::new(0.0, 0.0),
        }
    }

    /// Both endpoints of an edge in the planar cover of the tail's copy.
    pub fn edge_endpoints(&self, e: &MeshEdge) -> (Vec2, Vec2) {
        let a = self.vertex(e.tail());
        let b = self.vertex(e.head()).add(self.lattice_vec(e.shift()));
        (a, b)
    }

    fn oriented(&self, face: usize, reference: i64) -> Result<(usize, bool), TorusError> {
        let forward = reference > 0;
        let idx = reference.unsigned_abs() as usize;
        if reference == 0 || idx > self.edges.len() {
            return Err(TorusError::BadEdgeRef {
                face,
                reference,
                count: self.edges.len(),
            });
        }
        Ok((idx - 1, forward))
    }

    /// Corner coordinates of a face, unrolled into the plane along its walk.
    /// Checks that consecutive edges chain head to tail and that the walk
    /// closes up with zero net lattice shift.
    pub fn face_polygon(&self, face: usize) -> Result<Vec<Vec2>, TorusError> {
        let refs = &self.faces[face];
        if refs.len() < 3 {
            return Err(TorusError::ShortFace {
                face,
                len: refs.len(),
            });
        }
        let mut corners = Vec::with_capacity(refs.len());
        let mut at = usize::MAX;
        let mut acc = [0i32; 2];
        let mut start = usize::MAX;
        for (pos, &r) in refs.iter().enumerate() {
            let (idx, forward) = self.oriented(face, r)?;
            let e = &self.edges[idx];
            let (from, to, shift) = if forward {
                (e.tail(), e.head(), e.shift())
            } else {
                (e.head(), e.tail(), [-e.shift()[0], -e.shift()[1]])
            };
            if pos == 0 {
                start = from;
            } else if from != at {
                return Err(TorusError::BrokenWalk {
                    face,
                    position: pos,
                    got: from,
                    expected: at,
                });
            }
            corners.push(self.vertex(from).add(self.lattice_vec(acc)));
            acc[0] += shift[0];
            acc[1] += shift[1];
            at = to;
        }
        if at != start || acc != [0, 0] {
            return Err(TorusError::OpenWalk { face });
        }
        Ok(corners)
    }

    fn check_structure(&self) -> Result<(), TorusError> {
        if self.vertices.is_empty() {
            return Err(TorusError::Empty("vertices"));
        }
        if self.edges.is_empty() {
            return Err(TorusError::Empty("edges"));
        }
        if self.faces.is_empty() {
            return Err(TorusError::Empty("faces"));
        }
        for (i, e) in self.edges.iter().enumerate() {
            for v in [e.tail(), e.head()] {
                if v >= self.vertices.len() {
                    return Err(TorusError::BadVertexRef {
                        edge: i,
                        vertex: v,
                        count: self.vertices.len(),
                    });
                }
            }
            if self.lattice.is_none() && e.shift() != [0, 0] {
                return Err(TorusError::ShiftWithoutLattice(i));
            }
            let (a, b) = self.edge_endpoints(e);
            if a.dist(b) < 1e-12 {
                return Err(TorusError::ZeroLengthEdge(i));
            }
        }
        Ok(())
    }
}

/// Cluster polygon corners into shared vertices and deduplicate edges.
///
/// With a lattice, corners are reduced modulo the period vectors; corners
/// that land on the same reduced point (within an absolute tolerance, wrap
/// respected) become one vertex, and each edge records the difference of
/// its endpoints' cell offsets as its shift.
pub fn assemble_mesh(
    lattice: Option<[Vec2; 2]>,
    polygons: &[Vec<Vec2>],
) -> Result<TilingMesh, TorusError> {
    if polygons.is_empty() {
        return Err(TorusError::Empty("faces"));
    }
    let inv = match lattice {
        Some([u, v]) => {
            let det = u.x * v.y - u.y * v.x;
            if det.abs() < 1e-12 {
                return Err(TorusError::SingularLattice);
            }
            Some(([v.y / det, -v.x / det], [-u.y / det, u.x / det]))
        }
        None => None,
    };
    let to_plane = |shift: [i32; 2]| -> Vec2 {
        match lattice {
            Some([u, v]) => u
                .scale(f64::from(shift[0]))
                .add(v.scale(f64::from(shift[1]))),
            None => Vec2::new(0.0, 0.0),
        }
    };

    // reduced representative position per vertex id
    let mut reps: Vec<Vec2> = Vec::new();
    let mut resolve = |p: Vec2| -> (usize, [i32; 2]) {
        let (reduced, cell) = match inv {
            Some((r0, r1)) => {
                let fx = r0[0] * p.x + r0[1] * p.y;
                let fy = r1[0] * p.x + r1[1] * p.y;
                let kx = fx.floor();
                let ky = fy.floor();
                let wrapped = p.sub(to_plane([kx as i32, ky as i32]));
                (wrapped, [kx as i32, ky as i32])
            }
            None => (p, [0, 0]),
        };
        for (vid, &rep) in reps.iter().enumerate() {
            if lattice.is_some() {
                // the reduced points can sit on opposite sides of the cell
                for ax in -1..=1_i32 {
                    for ay in -1..=1_i32 {
                        let image = rep.add(to_plane([ax, ay]));
                        if reduced.dist(image) < MATCH_TOL {
                            return (vid, [cell[0] + ax, cell[1] + ay]);
                        }
                    }
                }
            } else if reduced.dist(rep) < MATCH_TOL {
                return (vid, [0, 0]);
            }
        }
        reps.push(reduced);
        (reps.len() - 1, cell)
    };

    let mut edges: Vec<MeshEdge> = Vec::new();
    let mut index: HashMap<(usize, usize, [i32; 2]), usize> = HashMap::new();
    let mut faces: Vec<Vec<i64>> = Vec::new();
    for (pi, poly) in polygons.iter().enumerate() {
        if poly.len() < 3 {
            return Err(TorusError::ShortPolygon(pi));
        }
        let ids: Vec<(usize, [i32; 2])> = poly.iter().map(|&p| resolve(p)).collect();
        let mut refs = Vec::with_capacity(poly.len());
        for i in 0..ids.len() {
            let (tail, ct) = ids[i];
            let (head, ch) = ids[(i + 1) % ids.len()];
            let shift = [ch[0] - ct[0], ch[1] - ct[1]];
            if tail == head && shift == [0, 0] {
                return Err(TorusError::ZeroLengthEdge(edges.len()));
            }
            let key = (tail, head, shift);
            let rkey = (head, tail, [-shift[0], -shift[1]]);
            if let Some(&idx) = index.get(&key) {
                refs.push(idx as i64 + 1);
            } else if let Some(&idx) = index.get(&rkey) {
                refs.push(-(idx as i64 + 1));
            } else {
                let idx = edges.len();
                edges.push(MeshEdge(tail, head, shift));
                index.insert(key, idx);
                refs.push(idx as i64 + 1);
            }
        }
        faces.push(refs);
    }

    Ok(TilingMesh {
        lattice: lattice.map(|[u, v]| [[u.x, u.y], [v.x, v.y]]),
        vertices: reps.iter().map(|p| [p.x, p.y]).collect(),
        edges,
        faces,
    })
}

/// Check edge-to-edge structure, face areas, angle sums, and the Euler
/// characteristic. Malformed topology raises; geometric defects land in the
/// report's violation list.
pub fn validate(mesh: &TilingMesh) -> Result<ValidationReport, TorusError> {
    mesh.check_structure()?;
    let nv = mesh.vertices.len();
    let ne = mesh.edges.len();
    let nf = mesh.faces.len();
    let mut violations = Vec::new();

    let mut usage = vec![0u32; ne];
    let mut net_direction = vec![0i32; ne];
    let mut vertex_angle = vec![0.0f64; nv];
    let mut area_min = f64::INFINITY;
    let mut area_max = f64::NEG_INFINITY;

    for f in 0..nf {
        let poly = mesh.face_polygon(f)?;
        for &r in &mesh.faces[f] {
            let (idx, forward) = mesh.oriented(f, r)?;
            usage[idx] += 1;
            net_direction[idx] += if forward { 1 } else { -1 };
        }
        let (area, _) = geom::signed_metrics(&poly);
        if area <= 0.0 {
            violations.push(Violation {
                rule: ViolationRule::FaceOrientation,
                location: format!("face {f}"),
                detail: format!("signed area {area:.6}, faces must wind counterclockwise"),
            });
            area_min = area_min.min(area.abs());
            area_max = area_max.max(area.abs());
            continue;
        }
        area_min = area_min.min(area);
        area_max = area_max.max(area);
        if (area - 1.0).abs() > AREA_TOL {
            violations.push(Violation {
                rule: ViolationRule::FaceArea,
                location: format!("face {f}"),
                detail: format!("area {area:.12}, expected 1"),
            });
        }
        let angles = geom::polygon_angles(&poly);
        let expected = (poly.len() as f64 - 2.0) * std::f64::consts::PI;
        let total: f64 = angles.iter().sum();
        if (total - expected).abs() > ANGLE_TOL {
            violations.push(Violation {
                rule: ViolationRule::FaceAngles,
                location: format!("face {f}"),
                detail: format!(
                    "interior angles sum to {total:.12}, expected {expected:.12}"
                ),
            });
        }
        let ids = face_vertex_ids(mesh, f)?;
        for (vid, a) in ids.iter().zip(angles.iter()) {
            vertex_angle[*vid] += a;
        }
    }

    let torus = mesh.lattice.is_some();
    let mut boundary_edges = 0usize;
    let mut boundary_vertex = vec![false; nv];
    for i in 0..ne {
        let ok = if torus {
            usage[i] == 2 && net_direction[i] == 0
        } else {
            usage[i] >= 1 && usage[i] <= 2 && (usage[i] == 1 || net_direction[i] == 0)
        };
        if !ok {
            let detail = if usage[i] != 2 {
                format!(
                    "used by {} face sides, {} required",
                    usage[i],
                    if torus { "exactly 2" } else { "1 or 2" }
                )
            } else {
                "traversed twice in the same direction".to_string()
            };
            violations.push(Violation {
                rule: ViolationRule::EdgeUse,
                location: format!("edge {i}"),
                detail,
            });
        }
        if usage[i] == 1 {
            boundary_edges += 1;
            boundary_vertex[mesh.edges[i].tail()] = true;
            boundary_vertex[mesh.edges[i].head()] = true;
        }
    }

    for v in 0..nv {
        if boundary_vertex[v] {
            continue;
        }
        let total = vertex_angle[v];
        if (total - 2.0 * std::f64::consts::PI).abs() > ANGLE_TOL {
            violations.push(Violation {
                rule: ViolationRule::VertexAngle,
                location: format!("vertex {v}"),
                detail: format!("incident angles sum to {total:.12}, expected 2π"),
            });
        }
    }

    scan_t_junctions(mesh, &mut violations);

    let euler = nv as i64 - ne as i64 + nf as i64;
    let expected_euler = if boundary_edges > 0 { 1 } else { 0 };
    let closed_note = if torus { "torus" } else { "closed patch" };
    if euler != expected_euler {
        violations.push(Violation {
            rule: ViolationRule::EulerCharacteristic,
            location: "mesh".to_string(),
            detail: format!(
                "V - E + F = {euler}, expected {expected_euler} for a {}",
                if boundary_edges > 0 {
                    "disk-like patch"
                } else {
                    closed_note
                }
            ),
        });
    }
    if torus && boundary_edges > 0 {
        violations.push(Violation {
            rule: ViolationRule::EdgeUse,
            location: "mesh".to_string(),
            detail: format!("{boundary_edges} boundary edges on a torus"),
        });
    }

    let edge_length_total: f64 = mesh
        .edges
        .iter()
        .map(|e| {
            let (a, b) = mesh.edge_endpoints(e);
            a.dist(b)
        })
        .sum();

    Ok(ValidationReport {
        vertices: nv,
        edges: ne,
        faces: nf,
        boundary_edges,
        euler_characteristic: euler,
        tile_area_min: area_min,
        tile_area_max: area_max,
        edge_length_total,
        per_tile_edge_length: edge_length_total / nf as f64,
        violations,
    })
}

fn face_vertex_ids(mesh: &TilingMesh, face: usize) -> Result<Vec<usize>, TorusError> {
    let mut ids = Vec::with_capacity(mesh.faces[face].len());
    for &r in &mesh.faces[face] {
        let (idx, forward) = mesh.oriented(face, r)?;
        let e = &mesh.edges[idx];
        ids.push(if forward { e.tail() } else { e.head() });
    }
    Ok(ids)
}

/// A vertex sitting in the interior of some edge is a T-junction: the two
/// tiles along that edge do not meet edge to edge. On a torus each vertex is
/// also checked in the eight neighboring period copies.
fn scan_t_junctions(mesh: &TilingMesh, violations: &mut Vec<Violation>) {
    let offsets: Vec<[i32; 2]> = if mesh.lattice.is_some() {
        (-1..=1)
            .flat_map(|a| (-1..=1).map(move |b| [a, b]))
            .collect()
    } else {
        vec![[0, 0]]
    };
    for (ei, e) in mesh.edges.iter().enumerate() {
        let (a, b) = mesh.edge_endpoints(e);
        let d = b.sub(a);
        let len2 = d.dot(d);
        for v in 0..mesh.vertices.len() {
            for &off in &offsets {
                let p = mesh.vertex(v).add(mesh.lattice_vec(off));
                if p.dist(a) < TJUNCTION_TOL || p.dist(b) < TJUNCTION_TOL {
                    continue;
                }
                let t = p.sub(a).dot(d) / len2;
                if t <= 0.0 || t >= 1.0 {
                    continue;
                }
                let foot = a.add(d.scale(t));
                if p.dist(foot) < TJUNCTION_TOL {
                    violations.push(Violation {
                        rule: ViolationRule::TJunction,
                        location: format!("edge {ei}"),
                        detail: format!("vertex {v} lies in the edge interior at t = {t:.6}"),
                    });
                }
            }
        }
    }
}

/// Total edge length divided by the face count, each edge counted once.
pub fn perimeter_per_tile(mesh: &TilingMesh) -> Result<f64, TorusError> {
    if mesh.lattice.is_none() {
        return Err(TorusError::NotATorus);
    }
    mesh.check_structure()?;
    let total: f64 = mesh
        .edges
        .iter()
        .map(|e| {
            let (a, b) = mesh.edge_endpoints(e);
            a.dist(b)
        })
        .sum();
    Ok(total / mesh.faces.len() as f64)
}

/// Classify every face and vertex of a structurally sound mesh.
pub fn census(mesh: &TilingMesh) -> Result<TileCensus, TorusError> {
    mesh.check_structure()?;
    let nf = mesh.faces.len();
    let nv = mesh.vertices.len();
    let mut face_efficient = vec![false; nf];
    let mut efficient = 0usize;
    let mut convex_other = 0usize;
    let mut single_reflex = 0usize;
    let mut multi_reflex = 0usize;
    for f in 0..nf {
        let poly = mesh.face_polygon(f)?;
        let angles = geom::polygon_angles(&poly);
        let reflex = angles
            .iter()
            .filter(|&&a| a > std::f64::consts::PI + 1e-9)
            .count();
        let perimeter: f64 = (0..poly.len())
            .map(|i| poly[i].dist(poly[(i + 1) % poly.len()]))
            .sum();
        match reflex {
            0 => {
                if poly.len() == 5 && geom::is_efficient(perimeter) {
                    face_efficient[f] = true;
                    efficient += 1;
                } else {
                    convex_other += 1;
                }
            }
            1 => single_reflex += 1,
            _ => multi_reflex += 1,
        }
    }

    let mut degree = vec![0usize; nv];
    for e in &mesh.edges {
        degree[e.tail()] += 1;
        degree[e.head()] += 1;
    }
    let mut vertex_efficient = vec![true; nv];
    for f in 0..nf {
        if face_efficient[f] {
            continue;
        }
        for vid in face_vertex_ids(mesh, f)? {
            vertex_efficient[vid] = false;
        }
    }
    let mut k3 = 0usize;
    let mut k4 = 0usize;
    let mut inefficient = 0usize;
    for v in 0..nv {
        if vertex_efficient[v] {
            match degree[v] {
                3 => k3 += 1,
                4 => k4 += 1,
                _ => {}
            }
        } else {
            inefficient += 1;
        }
    }

    let frac = |k: usize| k as f64 / nf as f64;
    Ok(TileCensus {
        faces: nf,
        efficient_pentagons: efficient,
        nonconvex_faces: single_reflex + multi_reflex,
        efficient_fraction: frac(efficient),
        convex_inefficient_fraction: frac(convex_other),
        single_reflex_fraction: frac(single_reflex),
        multi_reflex_fraction: frac(multi_reflex),
        efficient_degree3_vertices: k3,
        efficient_degree4_vertices: k4,
        inefficient_vertices: inefficient,
    })
}
