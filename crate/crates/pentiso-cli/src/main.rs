//! Command-line front end: reproduction reports, constrained perimeter
//! minimization, figure data, mesh generation and validation, disk
//! truncation scans, vertex-figure enumeration.
//!
//! Exit codes: 0 clean, 1 failed claims or validation violations, 2 usage
//! or input errors. Results go to standard output, diagnostics to standard
//! error; `-` stands for standard input or output in file arguments.

#![forbid(unsafe_code)]

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read as _, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use pentiso::claims::{render_report, run_claims, ClaimStatus, ReportFormat};
use pentiso::combinatorics::{angle_tilings, tiles_all_five};
use pentiso::equilateral::{
    adjacent_family, best_adjacent, best_nonadjacent, champion, nonadjacent_family,
    special_closure_pentagon, EquilateralPentagon,
};
use pentiso::geom::Vec2;
use pentiso::optimize::{minimize_perimeter, one_angle_curve, AngleConstraintSet};
use pentiso::torus::{
    build_cairo, build_prismatic, cairo_pattern, census, prismatic_pattern, truncate_pattern,
    validate, PeriodicPattern, TilingMesh,
};

#[derive(Parser)]
#[command(name = "pentiso", version, about = "Isoperimetric pentagon toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Re-derive the numeric constant registry and report pass/fail
    Claims(ClaimsArgs),
    /// Minimize perimeter over unit-area pentagons under angle constraints
    Minimize(MinimizeArgs),
    /// Sample the one-pinned-angle perimeter curve as CSV figure data
    Curve(CurveArgs),
    /// Generate, validate, and summarize doubly periodic tiling meshes
    #[command(subcommand)]
    Tiling(TilingCommand),
    /// Construct extremal equilateral pentagons family by family
    Equilateral(EquilateralArgs),
    /// Clip a periodic tiling to a disk and report boundary statistics
    Truncate(TruncateArgs),
    /// Enumerate the vertex figures a set of corner angles admits
    AngleTilings(AngleTilingsArgs),
}

#[derive(Args)]
struct ClaimsArgs {
    /// Only run claims whose id matches this pattern ('*' wildcards)
    #[arg(long)]
    filter: Option<String>,
    /// Write the report as JSON to this file instead of text to stdout
    #[arg(long, value_name = "FILE")]
    json: Option<String>,
}

#[derive(Args)]
struct MinimizeArgs {
    /// Constraint file ('-' reads standard input); angles in degrees
    #[arg(long, value_name = "FILE")]
    constraints: String,
    /// Emit the minimizing polygon as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum CurveFamily {
    /// one angle pinned, the other four equal
    OneAngleFree,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, value_enum, default_value = "one-angle-free")]
    family: CurveFamily,
    /// First sampled angle in degrees
    #[arg(long)]
    from: f64,
    /// Last sampled angle in degrees
    #[arg(long)]
    to: f64,
    /// Sample spacing in degrees
    #[arg(long)]
    step: f64,
    /// Output CSV file ('-' writes standard output)
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Copy, Clone, ValueEnum)]
enum PatternKind {
    Cairo,
    Prismatic,
}

#[derive(Subcommand)]
enum TilingCommand {
    /// Build a torus mesh for a named tiling and write it as JSON
    Generate {
        #[arg(value_enum)]
        pattern: PatternKind,
        /// Fundamental domain periods, e.g. 2x3
        #[arg(long, default_value = "1x1")]
        periods: String,
        /// Output file ('-' writes standard output)
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Check a mesh file; exits 1 when violations are found
    Validate {
        /// Mesh JSON file ('-' reads standard input)
        file: String,
    },
    /// Per-tile metrics and face census for a mesh file
    Stats {
        /// Mesh JSON file ('-' reads standard input)
        file: String,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    Adjacent,
    Nonadjacent,
    Special,
    Champion,
}

#[derive(Args)]
struct EquilateralArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Pin the family's free angle (degrees) instead of optimizing it
    #[arg(long, value_name = "DEG")]
    a1_deg: Option<f64>,
    /// Emit the pentagon as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TruncateArgs {
    #[arg(long, value_enum)]
    tiling: PatternKind,
    #[arg(long)]
    radius: f64,
    /// Disk center as "x,y"; centroid of the first tile when omitted
    #[arg(long)]
    origin: Option<String>,
    /// Emit statistics as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AngleTilingsArgs {
    /// Corner angles in degrees, comma separated
    #[arg(long, value_name = "DEG,DEG,..")]
    angles: String,
    /// Keep only figures using this angle (0-based index)
    #[arg(long)]
    required_index: Option<usize>,
    /// Largest vertex degree to search
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
}

/// Wire format for a single polygon result.
#[derive(Serialize)]
struct PolygonJson {
    angles_deg: Vec<f64>,
    vertices: Vec<[f64; 2]>,
    construction: &'static str,
}

impl PolygonJson {
    fn new(angles_rad: &[f64], vertices: &[Vec2], construction: &'static str) -> Self {
        PolygonJson {
            angles_deg: angles_rad.iter().map(|a| a.to_degrees()).collect(),
            vertices: vertices.iter().map(|v| [v.x, v.y]).collect(),
            construction,
        }
    }
}

/// Angle constraints as they arrive from a file, degrees throughout.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
struct ConstraintsJson {
    /// pairs [index, angle_deg]
    fix: Vec<(usize, f64)>,
    /// pairs [i, j] forced equal
    equate: Vec<(usize, usize)>,
    /// integer combinations summing to a constant
    relate: Vec<RelateJson>,
    /// triples [index, lo_deg, hi_deg]
    bounds: Vec<(usize, f64, f64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelateJson {
    coeffs: Vec<i64>,
    constant_deg: f64,
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn write_output(path: &str, content: &str) -> Result<(), String> {
    if path == "-" {
        io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| format!("writing standard output: {e}"))
    } else {
        fs::write(path, content).map_err(|e| format!("writing {path}: {e}"))
    }
}

fn parse_periods(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("periods must look like 2x3, got {s:?}"))?;
    let p = p.parse().map_err(|e| format!("bad period {p:?}: {e}"))?;
    let q = q.parse().map_err(|e| format!("bad period {q:?}: {e}"))?;
    Ok((p, q))
}

fn parse_origin(s: &str) -> Result<Vec2, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("origin must look like x,y, got {s:?}"))?;
    let x = x.trim().parse().map_err(|e| format!("bad x {x:?}: {e}"))?;
    let y = y.trim().parse().map_err(|e| format!("bad y {y:?}: {e}"))?;
    Ok(Vec2::new(x, y))
}

fn centroid(points: &[Vec2]) -> Vec2 {
    let mut c = Vec2::new(0.0, 0.0);
    for p in points {
        c = c.add(*p);
    }
    c.scale(1.0 / points.len() as f64)
}

fn pattern_for(kind: PatternKind) -> PeriodicPattern {
    match kind {
        PatternKind::Cairo => cairo_pattern(),
        PatternKind::Prismatic => prismatic_pattern(),
    }
}

fn angles_deg_line(angles_rad: &[f64]) -> String {
    angles_rad
        .iter()
        .map(|a| format!("{:.6}", a.to_degrees()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_claims_cmd(args: &ClaimsArgs) -> Result<bool, String> {
    let results = run_claims(args.filter.as_deref()).map_err(|e| e.to_string())?;
    let flagged = results.iter().any(|r| r.status == ClaimStatus::Fail);
    match &args.json {
        Some(path) => {
            let mut doc =
                render_report(&results, ReportFormat::Json).map_err(|e| e.to_string())?;
            doc.push('\n');
            write_output(path, &doc)?;
        }
        None => {
            let doc = render_report(&results, ReportFormat::Text).map_err(|e| e.to_string())?;
            print!("{doc}");
        }
    }
    Ok(flagged)
}

fn run_minimize(args: &MinimizeArgs) -> Result<(), String> {
    let text = read_input(&args.constraints)?;
    let wanted: ConstraintsJson =
        serde_json::from_str(&text).map_err(|e| format!("constraint file: {e}"))?;
    let index_ok = |i: usize| {
        if i < 5 {
            Ok(i)
        } else {
            Err(format!("angle index {i} out of range for a pentagon"))
        }
    };
    let mut set = AngleConstraintSet::pentagon();
    for (i, deg) in &wanted.fix {
        set = set.fix(index_ok(*i)?, deg.to_radians());
    }
    for (i, j) in &wanted.equate {
        set = set.equate(index_ok(*i)?, index_ok(*j)?);
    }
    for r in &wanted.relate {
        if r.coeffs.len() != 5 {
            return Err(format!("relation needs 5 coefficients, got {}", r.coeffs.len()));
        }
        set = set.relate(r.coeffs.clone(), r.constant_deg.to_radians());
    }
    for (i, lo, hi) in &wanted.bounds {
        set = set.bound(index_ok(*i)?, lo.to_radians(), hi.to_radians());
    }
    let result = minimize_perimeter(&set).map_err(|e| e.to_string())?;
    if args.json {
        let poly = PolygonJson::new(&result.angles, &result.construction.vertices, "circumscribed");
        println!("{}", serde_json::to_string_pretty(&poly).expect("polygon json"));
    } else {
        println!("angles_deg: {}", angles_deg_line(&result.angles));
        println!("perimeter: {:.6}", result.perimeter);
    }
    Ok(())
}

fn run_curve(args: &CurveArgs) -> Result<(), String> {
    let CurveFamily::OneAngleFree = args.family;
    let samples = one_angle_curve(
        args.from.to_radians(),
        args.to.to_radians(),
        args.step.to_radians(),
    )
    .map_err(|e| e.to_string())?;
    let mut csv = String::from("angle_deg,min_perimeter,margin\n");
    let benchmark = pentiso::geom::cairo_prismatic_perimeter();
    for (a, excess) in samples {
        let _ = writeln!(
            csv,
            "{:.6},{:.6},{:.6}",
            a.to_degrees(),
            benchmark + excess,
            excess
        );
    }
    write_output(&args.out, &csv)
}

fn load_mesh(path: &str) -> Result<TilingMesh, String> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| format!("mesh file: {e}"))
}

fn run_tiling(cmd: &TilingCommand) -> Result<bool, String> {
    match cmd {
        TilingCommand::Generate { pattern, periods, out } => {
            let (p, q) = parse_periods(periods)?;
            let mesh = match pattern {
                PatternKind::Cairo => build_cairo(p, q),
                PatternKind::Prismatic => build_prismatic(p, q),
            }
            .map_err(|e| e.to_string())?;
            let mut doc = serde_json::to_string_pretty(&mesh).expect("mesh json");
            doc.push('\n');
            write_output(out, &doc)?;
            Ok(false)
        }
        TilingCommand::Validate { file } => {
            let mesh = load_mesh(file)?;
            let report = match validate(&mesh) {
                Ok(r) => r,
                Err(e) => {
                    println!("invalid: {e}");
                    return Ok(true);
                }
            };
            println!("vertices: {}", report.vertices);
            println!("edges: {}", report.edges);
            println!("faces: {}", report.faces);
            println!("boundary_edges: {}", report.boundary_edges);
            println!("euler_characteristic: {}", report.euler_characteristic);
            println!("tile_area_min: {:.6}", report.tile_area_min);
            println!("tile_area_max: {:.6}", report.tile_area_max);
            println!("edge_length_total: {:.6}", report.edge_length_total);
            println!("per_tile_edge_length: {:.6}", report.per_tile_edge_length);
            println!("violations: {}", report.violations.len());
            for v in &report.violations {
                println!("  {:?} at {}: {}", v.rule, v.location, v.detail);
            }
            println!("{}", if report.is_valid() { "valid" } else { "invalid" });
            Ok(!report.is_valid())
        }
        TilingCommand::Stats { file, json } => {
            let mesh = load_mesh(file)?;
            let tally = census(&mesh).map_err(|e| e.to_string())?;
            if *json {
                println!("{}", serde_json::to_string_pretty(&tally).expect("census json"));
            } else {
                println!("faces: {}", tally.faces);
                println!("efficient_pentagons: {}", tally.efficient_pentagons);
                println!("nonconvex_faces: {}", tally.nonconvex_faces);
                println!("efficient_fraction: {:.6}", tally.efficient_fraction);
                println!(
                    "convex_inefficient_fraction: {:.6}",
                    tally.convex_inefficient_fraction
                );
                println!("single_reflex_fraction: {:.6}", tally.single_reflex_fraction);
                println!("multi_reflex_fraction: {:.6}", tally.multi_reflex_fraction);
                println!(
                    "efficient_degree3_vertices: {}",
                    tally.efficient_degree3_vertices
                );
                println!(
                    "efficient_degree4_vertices: {}",
                    tally.efficient_degree4_vertices
                );
                println!("inefficient_vertices: {}", tally.inefficient_vertices);
            }
            Ok(false)
        }
    }
}

fn run_equilateral(args: &EquilateralArgs) -> Result<(), String> {
    let mut cot_bound = None;
    let (label, pentagon): (&str, EquilateralPentagon) = match args.family {
        Family::Adjacent => match args.a1_deg {
            Some(deg) => ("adjacent", adjacent_family(deg.to_radians()).map_err(|e| e.to_string())?),
            None => ("adjacent", best_adjacent().map_err(|e| e.to_string())?.1),
        },
        Family::Nonadjacent => match args.a1_deg {
            Some(deg) => (
                "nonadjacent",
                nonadjacent_family(deg.to_radians()).map_err(|e| e.to_string())?,
            ),
            None => ("nonadjacent", best_nonadjacent().map_err(|e| e.to_string())?.1),
        },
        Family::Special => {
            if args.a1_deg.is_some() {
                return Err("the special family has no free angle".into());
            }
            let closure = special_closure_pentagon().map_err(|e| e.to_string())?;
            cot_bound = Some(closure.cot_bound);
            ("special", closure.pentagon)
        }
        Family::Champion => {
            if args.a1_deg.is_some() {
                return Err("the champion has no free angle".into());
            }
            ("champion", champion().map_err(|e| e.to_string())?)
        }
    };
    if args.json {
        let poly = PolygonJson::new(&pentagon.angles, &pentagon.vertices, "explicit");
        println!("{}", serde_json::to_string_pretty(&poly).expect("polygon json"));
    } else {
        println!("family: {label}");
        println!("side: {:.6}", pentagon.side);
        println!("perimeter: {:.6}", pentagon.perimeter);
        println!("angles_deg: {}", angles_deg_line(&pentagon.angles));
        if let Some(bound) = cot_bound {
            println!("cot_bound: {bound:.6}");
        }
    }
    Ok(())
}

fn run_truncate(args: &TruncateArgs) -> Result<(), String> {
    let pattern = pattern_for(args.tiling);
    let origin = match &args.origin {
        Some(s) => parse_origin(s)?,
        None => centroid(&pattern.tiles[0]),
    };
    let stats = truncate_pattern(&pattern, args.radius, origin).map_err(|e| e.to_string())?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&stats).expect("stats json"));
    } else {
        println!("radius: {:.6}", stats.radius);
        println!("origin: {:.6},{:.6}", stats.origin[0], stats.origin[1]);
        println!("edge_length_in_disk: {:.6}", stats.edge_length_in_disk);
        println!("covered_area: {:.6}", stats.covered_area);
        println!("disk_area: {:.6}", stats.disk_area);
        println!("contained_tiles: {}", stats.contained_tiles);
        println!("contained_area: {:.6}", stats.contained_area);
        println!("contained_edge_length: {:.6}", stats.contained_edge_length);
        println!("circle_edge_crossings: {}", stats.circle_edge_crossings);
        println!("rho_hat: {:.6}", stats.rho_hat);
        match stats.contained_ratio {
            Some(r) => println!("contained_ratio: {r:.6}"),
            None => println!("contained_ratio: none"),
        }
    }
    Ok(())
}

fn run_angle_tilings(args: &AngleTilingsArgs) -> Result<(), String> {
    let angles_deg: Vec<f64> = args
        .angles
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("bad angle {s:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if let Some(i) = args.required_index {
        if i >= angles_deg.len() {
            return Err(format!("required index {i} out of range"));
        }
    }
    let angles: Vec<f64> = angles_deg.iter().map(|d| d.to_radians()).collect();
    let figures = angle_tilings(&angles, args.required_index, args.max_degree);
    println!("figures: {}", figures.len());
    for figure in &figures {
        let terms: Vec<String> = figure
            .iter()
            .zip(&angles_deg)
            .filter(|(c, _)| **c > 0)
            .map(|(c, d)| format!("{c}x{d:.6}"))
            .collect();
        println!("{}", terms.join(" + "));
    }
    if angles.len() == 5 {
        println!("tiles_all_five: {}", tiles_all_five(&angles));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Claims(args) => run_claims_cmd(args),
        Command::Minimize(args) => run_minimize(args).map(|()| false),
        Command::Curve(args) => run_curve(args).map(|()| false),
        Command::Tiling(cmd) => run_tiling(cmd),
        Command::Equilateral(args) => run_equilateral(args).map(|()| false),
        Command::Truncate(args) => run_truncate(args).map(|()| false),
        Command::AngleTilings(args) => run_angle_tilings(args).map(|()| false),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
