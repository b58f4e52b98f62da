//! Discrete side of the argument: vertex figures over a finite angle set,
//! surround-capacity counts, tile-count ratios, and a small proof checker
//! for linear counting inequalities over (n, m, k3, k4).
//!
//! The checker works with exact rationals. A derived inequality is
//! accepted only if a stated nonnegative combination of earlier
//! inequalities dominates it coefficient by coefficient, which is sound
//! because every variable counts something and is therefore nonnegative.

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

/// Angle-sum slack accepted when testing whether a multiset of angles
/// closes up around a vertex.
pub const VERTEX_SUM_TOL: f64 = 1e-7;

/// All ways to surround a vertex with copies of the given angles: each
/// result is a multiplicity vector aligned with `angles`, with total count
/// between 3 and `max_degree` and angle sum 2π within [`VERTEX_SUM_TOL`].
/// Equal input angles (within 1e-9) are collapsed onto their first index.
/// With `required_index` set, only figures using that angle survive.
pub fn angle_tilings(
    angles: &[f64],
    required_index: Option<usize>,
    max_degree: usize,
) -> Vec<Vec<u32>> {
    let k = angles.len();
    if k == 0 || max_degree < 3 {
        return Vec::new();
    }
    // class representative for each index
    let mut rep = vec![0usize; k];
    for i in 0..k {
        rep[i] = (0..i)
            .find(|&j| (angles[j] - angles[i]).abs() < 1e-9)
            .unwrap_or(i);
    }
    let reps: Vec<usize> = (0..k).filter(|&i| rep[i] == i).collect();
    let required_rep = required_index.map(|i| rep[i]);
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut counts = vec![0u32; k];
    fn dfs(
        reps: &[usize],
        angles: &[f64],
        pos: usize,
        sum: f64,
        degree: usize,
        max_degree: usize,
        counts: &mut Vec<u32>,
        required_rep: Option<usize>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == reps.len() {
            if degree >= 3
                && (sum - 2.0 * PI).abs() <= VERTEX_SUM_TOL
                && required_rep.map_or(true, |r| counts[r] > 0)
            {
                out.push(counts.clone());
            }
            return;
        }
        let idx = reps[pos];
        let a = angles[idx];
        let room = ((2.0 * PI + VERTEX_SUM_TOL - sum) / a).floor() as i64;
        let cap = room.clamp(0, (max_degree - degree) as i64) as u32;
        for c in 0..=cap {
            counts[idx] = c;
            dfs(
                reps,
                angles,
                pos + 1,
                sum + c as f64 * a,
                degree + c as usize,
                max_degree,
                counts,
                required_rep,
                out,
            );
        }
        counts[idx] = 0;
    }
    if angles.iter().any(|&a| !(a > 1e-9) || !a.is_finite()) {
        return Vec::new();
    }
    dfs(
        &reps,
        angles,
        0,
        0.0,
        0,
        max_degree,
        &mut counts,
        required_rep,
        &mut out,
    );
    out.sort();
    out.dedup();
    out
}

/// True when every corner of the pentagon can sit at some tiling vertex:
/// each index appears with positive multiplicity in at least one figure
/// from [`angle_tilings`]. A pentagon failing this cannot tile the plane
/// edge-to-edge with all five corners used.
pub fn tiles_all_five(angles: &[f64]) -> bool {
    angles.len() == 5 && (0..5).all(|i| !angle_tilings(angles, Some(i), 12).is_empty())
}

/// Number of distinct tiles that can appear around a tile once its corner
/// vertices are classified: `small_slots` corners of degree-3 capacity
/// `small_cap`, `large_slots` corners of degree-4 capacity `large_cap`,
/// minus `shared` adjacencies counted twice.
pub fn surround_capacity(
    small_slots: u32,
    small_cap: u32,
    large_slots: u32,
    large_cap: u32,
    shared: u32,
) -> u32 {
    small_cap * small_slots + large_cap * large_slots - shared
}

/// How many ordinary tiles each marked tile must carry for a mixed
/// configuration to beat the benchmark: `(p2 − b)/(b − p0)` where `b` is
/// the benchmark perimeter, `p0` the cheap tile's perimeter and `p2` the
/// expensive one's.
pub fn ratio_lower_bound(p0: f64, p2: f64) -> f64 {
    let b = crate::geom::cairo_prismatic_perimeter();
    (p2 - b) / (b - p0)
}

/// Cheap-tile perimeter threshold that makes a given ratio unreachable:
/// `b − (p2 − b)/ratio`.
pub fn perimeter_threshold_for_ratio(ratio: f64, p2: f64) -> f64 {
    let b = crate::geom::cairo_prismatic_perimeter();
    b - (p2 - b) / ratio
}

/// Linear form c_n·n + c_m·m + c_3·k3 + c_4·k4 + c ≥ 0 over the tile
/// count n, marked-tile count m, and vertex counts k3, k4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinExpr {
    pub n: Rational64,
    pub m: Rational64,
    pub k3: Rational64,
    pub k4: Rational64,
    pub constant: Rational64,
}

impl LinExpr {
    pub fn new(n: (i64, i64), m: (i64, i64), k3: (i64, i64), k4: (i64, i64)) -> Self {
        LinExpr {
            n: Rational64::new(n.0, n.1),
            m: Rational64::new(m.0, m.1),
            k3: Rational64::new(k3.0, k3.1),
            k4: Rational64::new(k4.0, k4.1),
            constant: Rational64::zero(),
        }
    }

    pub fn zero() -> Self {
        LinExpr::new((0, 1), (0, 1), (0, 1), (0, 1))
    }

    pub fn scaled(&self, s: Rational64) -> Self {
        LinExpr {
            n: self.n * s,
            m: self.m * s,
            k3: self.k3 * s,
            k4: self.k4 * s,
            constant: self.constant * s,
        }
    }

    pub fn plus(&self, other: &LinExpr) -> Self {
        LinExpr {
            n: self.n + other.n,
            m: self.m + other.m,
            k3: self.k3 + other.k3,
            k4: self.k4 + other.k4,
            constant: self.constant + other.constant,
        }
    }

    pub fn minus(&self, other: &LinExpr) -> Self {
        self.plus(&other.scaled(Rational64::new(-1, 1)))
    }

    fn coeffs(&self) -> [Rational64; 5] {
        [self.n, self.m, self.k3, self.k4, self.constant]
    }

    pub fn is_componentwise_nonneg(&self) -> bool {
        self.coeffs().iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self
            .coeffs()
            .iter()
            .zip(["n", "m", "k3", "k4", ""])
        {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == Rational64::new(1, 1) {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " >= 0")
    }
}

#[derive(Debug, Error)]
#[error("step {step} ({label}) does not follow: {detail}")]
pub struct NonSequiturError {
    pub step: usize,
    pub label: String,
    pub detail: String,
}

/// One step of a counting chain: either a geometric axiom (capacity or
/// incidence fact, taken on trust and labelled) or an inequality derived
/// from earlier steps by a stated nonnegative combination.
#[derive(Debug, Clone)]
pub enum Justification {
    Axiom { why: String },
    /// `scale`·statement must be dominated by Σ λ_i·steps[i].
    Derived {
        scale: Rational64,
        certificate: Vec<(usize, Rational64)>,
    },
}

#[derive(Debug, Clone)]
pub struct ChainStep {
    pub label: String,
    pub statement: LinExpr,
    pub justification: Justification,
}

#[derive(Debug, Clone)]
pub struct CountingChain {
    pub label: String,
    /// Ordinary-per-marked tile ratio that the metric side forces; the
    /// chain contradicts it when its terminal cap is smaller.
    pub required_ratio: f64,
    pub steps: Vec<ChainStep>,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub label: String,
    pub terminal: LinExpr,
    /// Cap c with terminal of the shape c·m − n ≥ 0, when it has it.
    pub cap: Option<Rational64>,
    pub contradicts_required: Option<bool>,
}

/// Check every derived step of a chain and extract the terminal cap.
pub fn evaluate_counting_argument(
    chain: &CountingChain,
) -> Result<ChainReport, NonSequiturError> {
    for (i, step) in chain.steps.iter().enumerate() {
        if let Justification::Derived { scale, certificate } = &step.justification {
            if !scale.is_positive() {
                return Err(NonSequiturError {
                    step: i,
                    label: step.label.clone(),
                    detail: "scale must be positive".into(),
                });
            }
            let mut combo = LinExpr::zero();
            for &(j, lambda) in certificate {
                if j >= i {
                    return Err(NonSequiturError {
                        step: i,
                        label: step.label.clone(),
                        detail: format!("certificate references step {j} ahead of {i}"),
                    });
                }
                if lambda.is_negative() {
                    return Err(NonSequiturError {
                        step: i,
                        label: step.label.clone(),
                        detail: "negative multiplier".into(),
                    });
                }
                combo = combo.plus(&chain.steps[j].statement.scaled(lambda));
            }
            let residual = step.statement.scaled(*scale).minus(&combo);
            if !residual.is_componentwise_nonneg() {
                return Err(NonSequiturError {
                    step: i,
                    label: step.label.clone(),
                    detail: format!("residual {residual} has a negative component"),
                });
            }
        }
    }
    let terminal = chain
        .steps
        .last()
        .map(|s| s.statement.clone())
        .unwrap_or_else(LinExpr::zero);
    let cap = if terminal.k3.is_zero()
        && terminal.k4.is_zero()
        && terminal.constant.is_zero()
        && terminal.n.is_negative()
        && terminal.m.is_positive()
    {
        Some(-(terminal.m / terminal.n))
    } else {
        None
    };
    let contradicts = cap.map(|c| c.to_f64().unwrap() < chain.required_ratio);
    Ok(ChainReport {
        label: chain.label.clone(),
        terminal,
        cap,
        contradicts_required: contradicts,
    })
}

/// A two-axiom derivation of one of the k-bounds, checked on construction.
#[derive(Debug, Clone)]
pub struct KBoundDerivation {
    pub label: String,
    pub axioms: Vec<(String, LinExpr)>,
    /// Multiplier per axiom; the bound equals the combination exactly.
    pub certificate: Vec<Rational64>,
    pub bound: LinExpr,
}

fn corner_supply(capacity: i64) -> LinExpr {
    // (3/5)k3 + (4/5)k4 ≥ n − (capacity/5)(m/2)
    let mut e = LinExpr::new((-1, 1), (capacity, 10), (3, 5), (4, 5));
    e.constant = Rational64::zero();
    e
}

fn vertex_ceiling(extra_m: (i64, i64)) -> LinExpr {
    // k3 + k4 ≤ 3n/2 + extra·m
    LinExpr::new((3, 2), extra_m, (-1, 1), (-1, 1))
}

fn vertex_floor(deficit_m: (i64, i64)) -> LinExpr {
    // k3 + k4 ≥ 3n/2 − deficit·m
    LinExpr::new((-3, 2), deficit_m, (1, 1), (1, 1))
}

fn corner_demand() -> LinExpr {
    // (3/5)k3 + (4/5)k4 ≤ n
    LinExpr::new((1, 1), (0, 1), (-3, 5), (-4, 5))
}

fn derive(
    label: &str,
    axioms: Vec<(String, LinExpr)>,
    certificate: Vec<Rational64>,
) -> KBoundDerivation {
    let mut bound = LinExpr::zero();
    for ((_, a), &l) in axioms.iter().zip(&certificate) {
        bound = bound.plus(&a.scaled(l));
    }
    KBoundDerivation {
        label: label.into(),
        axioms,
        certificate,
        bound,
    }
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// The nine vertex-count bounds used by the counting chains, each derived
/// as an exact nonnegative combination of two capacity axioms.
pub fn derive_k_bounds() -> Vec<KBoundDerivation> {
    vec![
        derive(
            "k4 >= n/2 - 7m (capacity 14, tight ceiling)",
            vec![
                ("corner supply, capacity 14".into(), corner_supply(14)),
                ("vertex ceiling, no slack".into(), vertex_ceiling((0, 1))),
            ],
            vec![rat(5, 1), rat(3, 1)],
        ),
        derive(
            "k4 >= n/2 - 12m (capacity 15, ceiling slack 3m/2)",
            vec![
                ("corner supply, capacity 15".into(), corner_supply(15)),
                ("vertex ceiling, slack 3m/2".into(), vertex_ceiling((3, 2))),
            ],
            vec![rat(5, 1), rat(3, 1)],
        ),
        derive(
            "k3 >= n - 8m (floor deficit 2m)",
            vec![
                ("vertex floor, deficit 2m".into(), vertex_floor((2, 1))),
                ("corner demand".into(), corner_demand()),
            ],
            vec![rat(4, 1), rat(5, 1)],
        ),
        derive(
            "k4 <= n/2 + 6m (floor deficit 2m)",
            vec![
                ("vertex floor, deficit 2m".into(), vertex_floor((2, 1))),
                ("corner demand".into(), corner_demand()),
            ],
            vec![rat(3, 1), rat(5, 1)],
        ),
        derive(
            "k4 >= n/2 - 7m (capacity 8, ceiling slack m)",
            vec![
                ("corner supply, capacity 8".into(), corner_supply(8)),
                ("vertex ceiling, slack m".into(), vertex_ceiling((1, 1))),
            ],
            vec![rat(5, 1), rat(3, 1)],
        ),
        derive(
            "k4 >= n/2 - 10m (capacity 14, ceiling slack m)",
            vec![
                ("corner supply, capacity 14".into(), corner_supply(14)),
                ("vertex ceiling, slack m".into(), vertex_ceiling((1, 1))),
            ],
            vec![rat(5, 1), rat(3, 1)],
        ),
        derive(
            "k3 >= n - 10m (floor deficit 5m/2)",
            vec![
                ("vertex floor, deficit 5m/2".into(), vertex_floor((5, 2))),
                ("corner demand".into(), corner_demand()),
            ],
            vec![rat(4, 1), rat(5, 1)],
        ),
        derive(
            "k4 <= n/2 + 15m/2 (floor deficit 5m/2)",
            vec![
                ("vertex floor, deficit 5m/2".into(), vertex_floor((5, 2))),
                ("corner demand".into(), corner_demand()),
            ],
            vec![rat(3, 1), rat(5, 1)],
        ),
        derive(
            "k4 >= n/2 - 17m/2 (capacity 8, ceiling slack 3m/2)",
            vec![
                ("corner supply, capacity 8".into(), corner_supply(8)),
                ("vertex ceiling, slack 3m/2".into(), vertex_ceiling((3, 2))),
            ],
            vec![rat(5, 1), rat(3, 1)],
        ),
        derive(
            "k4 >= n/2 - 25m/2 (capacity 16, ceiling slack 3m/2)",
            vec![
                ("corner supply, capacity 16".into(), corner_supply(16)),
                ("vertex ceiling, slack 3m/2".into(), vertex_ceiling((3, 2))),
            ],
            vec![rat(5, 1), rat(3, 1)],
        ),
    ]
}

fn axiom(label: &str, statement: LinExpr) -> ChainStep {
    ChainStep {
        label: label.into(),
        statement,
        justification: Justification::Axiom {
            why: label.into(),
        },
    }
}

fn derived(
    label: &str,
    statement: LinExpr,
    certificate: Vec<(usize, Rational64)>,
) -> ChainStep {
    ChainStep {
        label: label.into(),
        statement,
        justification: Justification::Derived {
            scale: rat(1, 1),
            certificate,
        },
    }
}

/// The six counting chains, ready for [`evaluate_counting_argument`]. Each
/// pairs a terminal tile cap with the metric ratio it is tested against.
pub fn builtin_counting_chains() -> Vec<CountingChain> {
    vec![
        CountingChain {
            label: "cap 28 against ratio 31.1753".into(),
            required_ratio: 31.1753,
            steps: vec![
                axiom("corner supply, capacity 8", corner_supply(8)),
                axiom("vertex ceiling, slack m", vertex_ceiling((1, 1))),
                derived(
                    "k4 >= n/2 - 7m",
                    LinExpr::new((-1, 2), (7, 1), (0, 1), (1, 1)),
                    vec![(0, rat(5, 1)), (1, rat(3, 1))],
                ),
                axiom(
                    "degree-four stars use four distinct tiles",
                    LinExpr::new((1, 1), (0, 1), (0, 1), (-4, 1)),
                ),
                derived(
                    "n <= 28m",
                    LinExpr::new((-1, 1), (28, 1), (0, 1), (0, 1)),
                    vec![(2, rat(4, 1)), (3, rat(1, 1))],
                ),
            ],
        },
        CountingChain {
            label: "cap 30 against ratio 31.1753".into(),
            required_ratio: 31.1753,
            steps: vec![
                axiom("vertex floor, deficit 2m", vertex_floor((2, 1))),
                axiom("corner demand", corner_demand()),
                derived(
                    "k4 <= n/2 + 6m",
                    LinExpr::new((1, 2), (6, 1), (0, 1), (-1, 1)),
                    vec![(0, rat(3, 1)), (1, rat(5, 1))],
                ),
                axiom(
                    "tiles covered by one degree-four star or three marked rings",
                    LinExpr::new((-1, 1), (9, 1), (0, 1), (1, 1)),
                ),
                derived(
                    "n <= 30m",
                    LinExpr::new((-1, 1), (30, 1), (0, 1), (0, 1)),
                    vec![(2, rat(2, 1)), (3, rat(2, 1))],
                ),
            ],
        },
        CountingChain {
            label: "cap 60 against ratio 31.1753".into(),
            required_ratio: 31.1753,
            steps: vec![
                axiom("corner supply, capacity 14", corner_supply(14)),
                axiom("vertex ceiling, slack m", vertex_ceiling((1, 1))),
                derived(
                    "k4 >= n/2 - 10m",
                    LinExpr::new((-1, 2), (10, 1), (0, 1), (1, 1)),
                    vec![(0, rat(5, 1)), (1, rat(3, 1))],
                ),
                axiom(
                    "degree-four stars use three distinct tiles",
                    LinExpr::new((1, 1), (0, 1), (0, 1), (-3, 1)),
                ),
                derived(
                    "n <= 60m",
                    LinExpr::new((-1, 1), (60, 1), (0, 1), (0, 1)),
                    vec![(2, rat(6, 1)), (3, rat(2, 1))],
                ),
            ],
        },
        CountingChain {
            label: "cap 34 against ratio 34.77".into(),
            required_ratio: 34.77,
            steps: vec![
                axiom("corner supply, capacity 8", corner_supply(8)),
                axiom("vertex ceiling, slack 3m/2", vertex_ceiling((3, 2))),
                derived(
                    "k4 >= n/2 - 17m/2",
                    LinExpr::new((-1, 2), (17, 2), (0, 1), (1, 1)),
                    vec![(0, rat(5, 1)), (1, rat(3, 1))],
                ),
                axiom(
                    "degree-four stars use four distinct tiles",
                    LinExpr::new((1, 1), (0, 1), (0, 1), (-4, 1)),
                ),
                derived(
                    "n <= 34m",
                    LinExpr::new((-1, 1), (34, 1), (0, 1), (0, 1)),
                    vec![(2, rat(4, 1)), (3, rat(1, 1))],
                ),
            ],
        },
        CountingChain {
            label: "cap 163/5 against ratio 34.77".into(),
            required_ratio: 34.77,
            steps: vec![
                axiom("vertex floor, deficit 5m/2", vertex_floor((5, 2))),
                axiom("corner demand", corner_demand()),
                derived(
                    "k4 <= n/2 + 15m/2",
                    LinExpr::new((1, 2), (15, 2), (0, 1), (-1, 1)),
                    vec![(0, rat(3, 1)), (1, rat(5, 1))],
                ),
                axiom(
                    "tiles covered by one degree-four star or 44m/5 marked slots",
                    LinExpr::new((-1, 1), (44, 5), (0, 1), (1, 1)),
                ),
                derived(
                    "n <= 163m/5",
                    LinExpr::new((-1, 1), (163, 5), (0, 1), (0, 1)),
                    vec![(2, rat(2, 1)), (3, rat(2, 1))],
                ),
            ],
        },
        CountingChain {
            label: "cap 75 against ratio 34.77".into(),
            required_ratio: 34.77,
            steps: vec![
                axiom("corner supply, capacity 16", corner_supply(16)),
                axiom("vertex ceiling, slack 3m/2", vertex_ceiling((3, 2))),
                derived(
                    "k4 >= n/2 - 25m/2",
                    LinExpr::new((-1, 2), (25, 2), (0, 1), (1, 1)),
                    vec![(0, rat(5, 1)), (1, rat(3, 1))],
                ),
                axiom(
                    "degree-four stars use three distinct tiles",
                    LinExpr::new((1, 1), (0, 1), (0, 1), (-3, 1)),
                ),
                derived(
                    "n <= 75m",
                    LinExpr::new((-1, 1), (75, 1), (0, 1), (0, 1)),
                    vec![(2, rat(6, 1)), (3, rat(2, 1))],
                ),
            ],
        },
    ]
}

/// Thresholds for transferring the torus bound to the plane.
#[derive(Debug, Clone, Copy)]
pub struct PlanarEpsilons {
    /// Largest boundary fraction that keeps the effective ordinary-tile
    /// ratio above 13.4 after discounting boundary tiles.
    pub ratio_eps: f64,
    /// Fraction of the ratio that survives truncation: 1 − 11/13.4.
    pub truncation_fraction: Rational64,
    /// Worst-case ratio of band perimeter to enclosed count: (4·3 + 1)/5.
    pub band_ratio_cap: Rational64,
}

/// Solve (13.43 − 38.63ε)/(1 + 38.63ε) = 13.4 for ε and attach the two
/// exact companions.
pub fn planar_epsilon_thresholds() -> PlanarEpsilons {
    let drop = 13.43 - 13.4;
    let per_eps = 38.63;
    let ratio_eps = drop / (per_eps * (1.0 + 13.4));
    PlanarEpsilons {
        ratio_eps,
        truncation_fraction: rat(12, 67),
        band_ratio_cap: rat(13, 5),
    }
}

/// Vertices of an n-tile pentagonal torus tiling with m degree-four
/// vertices' worth of excess folded in: 3n/2 + m, exact.
pub fn torus_vertex_count(n: i64, m: i64) -> Rational64 {
    rat(3 * n, 2) + rat(m, 1)
}
