//! Command-line front end for the engine: mesh export, pointwise invariant
//! queries, formula audits, and minimal-locus reports.
//!
//! Exit codes: 0 success (including --help/--version), 1 usage or
//! environment errors, 2 domain or degeneracy failures at the query point,
//! 3 strict-audit mismatch.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rotsurf_core::audit::{audit_all, minimal_locus, AuditGrid, MinimalLocus};
use rotsurf_core::beltrami::{lb1_position, lb3_position};
use rotsurf_core::curvature::point_geometry;
use rotsurf_core::mesh::{build_mesh, write_csv, write_obj, GridSpec, MeshError};
use rotsurf_core::ParametricSurface;

#[derive(Parser)]
#[command(name = "rotsurf", version, about = "Curvature engine for a rotational surface with a lightlike profile in Lorentz-Minkowski 3-space")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample the surface over a parameter grid and write OBJ or CSV.
    Mesh(MeshArgs),
    /// Print every pointwise invariant the pipeline knows at one (u, v).
    Invariants(InvariantsArgs),
    /// Grade the transcribed formulas against the pipeline and write reports.
    Audit(AuditArgs),
    /// Roots of the minimality condition H = 0, per rotation angle v.
    MinimalLocus(LocusArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeshFormat {
    Obj,
    Csv,
}

#[derive(Args)]
struct MeshArgs {
    #[arg(long, allow_negative_numbers = true)]
    u_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    u_max: f64,
    /// Grid points along u (>= 2), endpoints included.
    #[arg(long)]
    nu: usize,
    #[arg(long, allow_negative_numbers = true)]
    v_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    v_max: f64,
    /// Grid points along v (>= 2), endpoints included.
    #[arg(long)]
    nv: usize,
    /// Half-width of the dropped band around u = 0.
    #[arg(long, default_value_t = 1e-3)]
    u_exclude: f64,
    #[arg(long, value_enum)]
    format: MeshFormat,
    #[arg(long)]
    out: PathBuf,
    /// Add E,F,G,detI,L,M,N,detII,H,K columns (CSV only; OBJ ignores it).
    #[arg(long)]
    attrs: bool,
}

#[derive(Args)]
struct InvariantsArgs {
    #[arg(long, allow_negative_numbers = true)]
    u: f64,
    #[arg(long, allow_negative_numbers = true)]
    v: f64,
    /// Emit one flat JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// Grid override as NUxNV; NU is the total u count, split evenly
    /// between the positive and negative ranges, so it must be even.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    /// Half-width of the skipped band around u = 0.
    #[arg(long)]
    u_exclude: Option<f64>,
    /// Relative tolerance; overrides ROTSURF_TOL, which overrides 1e-6.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value = "report.json")]
    out: PathBuf,
    #[arg(long, default_value = "report.md")]
    markdown: PathBuf,
    /// Exit 3 when any verdict grades MISMATCH.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LocusArgs {
    /// Single rotation angle to report.
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    /// Report N angles uniformly spaced in [0, 2pi).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    sweep: Option<u64>,
}

enum Failure {
    Usage(String),
    Domain(String),
    Strict(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Strict(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m.clone(),
            Failure::Strict(n) => format!("strict audit: {n} MISMATCH verdicts"),
        }
    }
}

/// Writes to stdout, swallowing errors: a closed pipe on the consumer side
/// must not turn into a panic.
fn emit(text: &str) {
    use std::io::Write as _;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Mesh(args) => run_mesh(args),
        Cmd::Invariants(args) => run_invariants(args),
        Cmd::Audit(args) => run_audit(args),
        Cmd::MinimalLocus(args) => run_minimal_locus(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            use std::io::Write as _;
            let _ = writeln!(std::io::stderr(), "rotsurf: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run_mesh(args: MeshArgs) -> Result<(), Failure> {
    if !args.u_exclude.is_finite() || args.u_exclude < 0.0 {
        return Err(Failure::Usage(format!(
            "--u-exclude must be finite and non-negative, got {}",
            args.u_exclude
        )));
    }
    let grid = GridSpec::new(args.u_min, args.u_max, args.nu, args.v_min, args.v_max, args.nv)
        .map_err(|e| Failure::Usage(e.to_string()))?
        .with_u_exclude(args.u_exclude);
    let with_attrs = args.attrs && args.format == MeshFormat::Csv;
    let mesh = build_mesh(&ParametricSurface::tl_surface(), &grid, with_attrs).map_err(|e| {
        match e {
            MeshError::AllExcluded => Failure::Domain(e.to_string()),
            MeshError::Geom(g) => Failure::Domain(g.to_string()),
        }
    })?;
    let payload = match args.format {
        MeshFormat::Obj => write_obj(&mesh),
        MeshFormat::Csv => write_csv(&mesh),
    };
    std::fs::write(&args.out, payload)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", args.out.display())))?;
    emit(&format!(
        "wrote {} vertices, {} triangles to {}\n",
        mesh.vertices.len(),
        mesh.triangles.len(),
        args.out.display()
    ));
    Ok(())
}

fn run_invariants(args: InvariantsArgs) -> Result<(), Failure> {
    let s = ParametricSurface::tl_surface();
    let domain = |e: rotsurf_core::GeomError| Failure::Domain(e.to_string());
    let pg = point_geometry(&s, args.u, args.v).map_err(domain)?;
    let lb3 = lb3_position(&s, args.u, args.v).map_err(domain)?;
    let lb1 = lb1_position(&s, args.u, args.v).map_err(domain)?;
    let character = format!("{:?}", pg.character).to_lowercase();
    if args.json {
        let obj = serde_json::json!({
            "u": pg.u,
            "v": pg.v,
            "character": character,
            "E": pg.e,
            "F": pg.f,
            "G": pg.g,
            "detI": pg.det_i,
            "n1": pg.normal.x1,
            "n2": pg.normal.x2,
            "n3": pg.normal.x3,
            "L": pg.l,
            "M": pg.m,
            "N": pg.n,
            "detII": pg.det_ii,
            "e11": pg.e11,
            "e12": pg.e12,
            "e22": pg.e22,
            "H": pg.h,
            "K": pg.k,
            "X": pg.x,
            "Y": pg.y,
            "Z": pg.z,
            "lb3_1": lb3.x1,
            "lb3_2": lb3.x2,
            "lb3_3": lb3.x3,
            "lb1_1": lb1.x1,
            "lb1_2": lb1.x2,
            "lb1_3": lb1.x3,
        });
        let mut text = serde_json::to_string_pretty(&obj).expect("finite values");
        text.push('\n');
        emit(&text);
    } else {
        let mut out = String::new();
        writeln!(out, "point (u, v) = ({}, {})", pg.u, pg.v).unwrap();
        writeln!(out, "tangent plane character = {character}").unwrap();
        writeln!(out, "first form:  E = {}, F = {}, G = {}, detI = {}", pg.e, pg.f, pg.g, pg.det_i).unwrap();
        writeln!(out, "gauss map:   n = ({}, {}, {})", pg.normal.x1, pg.normal.x2, pg.normal.x3).unwrap();
        writeln!(out, "second form: L = {}, M = {}, N = {}, detII = {}", pg.l, pg.m, pg.n, pg.det_ii).unwrap();
        writeln!(out, "third form:  e11 = {}, e12 = {}, e22 = {}", pg.e11, pg.e12, pg.e22).unwrap();
        writeln!(out, "curvatures:  H = {}, K = {}", pg.h, pg.k).unwrap();
        writeln!(out, "combos:      X = {}, Y = {}, Z = {}", pg.x, pg.y, pg.z).unwrap();
        writeln!(out, "lb3 R = ({}, {}, {})", lb3.x1, lb3.x2, lb3.x3).unwrap();
        writeln!(out, "lb1 R = ({}, {}, {})", lb1.x1, lb1.x2, lb1.x3).unwrap();
        emit(&out);
    }
    Ok(())
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (nu, nv) = s
        .split_once('x')
        .ok_or_else(|| format!("expected NUxNV, got {s}"))?;
    let nu: usize = nu.parse().map_err(|_| format!("bad u count {nu}"))?;
    let nv: usize = nv.parse().map_err(|_| format!("bad v count {nv}"))?;
    if nu < 4 || nu % 2 != 0 {
        return Err(format!(
            "u count {nu} must be even and >= 4 (split across both signs)"
        ));
    }
    if nv == 0 {
        return Err("v count must be >= 1".into());
    }
    Ok((nu, nv))
}

fn resolve_tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    if let Some(tol) = flag {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Failure::Usage(format!("--tol must be finite and positive, got {tol}")));
        }
        return Ok(tol);
    }
    match std::env::var("ROTSURF_TOL") {
        Ok(raw) => {
            let tol: f64 = raw
                .parse()
                .map_err(|_| Failure::Usage(format!("ROTSURF_TOL is not a number: {raw:?}")))?;
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Failure::Usage(format!(
                    "ROTSURF_TOL must be finite and positive, got {raw:?}"
                )));
            }
            Ok(tol)
        }
        Err(std::env::VarError::NotPresent) => Ok(1e-6),
        Err(e) => Err(Failure::Usage(format!("ROTSURF_TOL unreadable: {e}"))),
    }
}

fn run_audit(args: AuditArgs) -> Result<(), Failure> {
    let tol = resolve_tolerance(args.tol)?;
    let mut grid = AuditGrid::default();
    if let Some((nu_total, nv)) = args.grid {
        grid.nu_per_range = nu_total / 2;
        grid.nv = nv;
    }
    if let Some(band) = args.u_exclude {
        if !band.is_finite() || band < 0.0 {
            return Err(Failure::Usage(format!(
                "--u-exclude must be finite and non-negative, got {band}"
            )));
        }
        grid.u_exclude = band;
    }
    let report = audit_all(&grid, tol);
    std::fs::write(&args.out, report.to_json())
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", args.out.display())))?;
    std::fs::write(&args.markdown, report.to_markdown())
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", args.markdown.display())))?;
    let mut summary = String::new();
    for vd in report.verdicts.iter().chain(&report.consistency_checks) {
        writeln!(
            summary,
            "{:32} {:12} evaluated {:4}  skipped {:4}  max rel {:.3e}",
            vd.formula_id,
            vd.verdict.as_str(),
            vd.evaluated(),
            vd.skipped,
            vd.max_rel_err
        )
        .unwrap();
    }
    writeln!(
        summary,
        "wrote {} and {}",
        args.out.display(),
        args.markdown.display()
    )
    .unwrap();
    emit(&summary);
    if args.strict && report.has_mismatch() {
        let n = report
            .verdicts
            .iter()
            .chain(&report.consistency_checks)
            .filter(|vd| vd.verdict == rotsurf_core::audit::Verdict::Mismatch)
            .count();
        return Err(Failure::Strict(n));
    }
    Ok(())
}

fn render_locus(ml: &MinimalLocus) -> String {
    let mut out = String::new();
    writeln!(out, "v = {}", ml.v).unwrap();
    writeln!(
        out,
        "  corrected quadratic u^2 + u sin(2v) + 2 cos(2v) = 0: discriminant = {}",
        ml.discriminant
    )
    .unwrap();
    if ml.corrected_roots.is_empty() {
        writeln!(out, "  corrected roots: none").unwrap();
    } else {
        writeln!(out, "  corrected roots:").unwrap();
        for root in &ml.corrected_roots {
            writeln!(
                out,
                "    u = {}  |H numerator| = {:.3e}",
                root.u, root.residual
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        "  transcribed roots (radicand = {}):",
        ml.transcribed_roots[0].radicand
    )
    .unwrap();
    for root in &ml.transcribed_roots {
        match (root.u, root.residual, root.failure) {
            (Some(u), Some(res), None) => {
                writeln!(out, "    {}: u = {}  |H numerator| = {:.3e}", root.branch, u, res)
                    .unwrap();
            }
            (_, _, Some(reason)) => {
                writeln!(out, "    {}: failed ({reason})", root.branch).unwrap();
            }
            _ => unreachable!("root carries either a value or a failure"),
        }
    }
    writeln!(out, "  complex pair: {}", ml.complex_pair).unwrap();
    out
}

fn run_minimal_locus(args: LocusArgs) -> Result<(), Failure> {
    let angles: Vec<f64> = if let Some(v) = args.v {
        if !v.is_finite() {
            return Err(Failure::Usage(format!("--v must be finite, got {v}")));
        }
        vec![v]
    } else {
        let n = args.sweep.expect("clap group guarantees one of --v/--sweep");
        (0..n)
            .map(|k| std::f64::consts::TAU * k as f64 / n as f64)
            .collect()
    };
    let stanzas: Vec<String> = angles
        .iter()
        .map(|&v| render_locus(&minimal_locus(v)))
        .collect();
    emit(&stanzas.join("\n"));
    Ok(())
}
