use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;

use curvecx::classes::{arc_from_path, curve_from_path};
use curvecx::complex::{build_ball, certified_lower_bound, check_vertex, distance_upper, BallParams, ComplexBall, ComplexKind, PathWitness, Vertex};
use curvecx::domains::{domains_disjoint, enumerate_domains, DomainClass, PantsIndex};
use curvecx::enumerate::{enumerate_arcs, enumerate_curves};
use curvecx::harness::{run_suite, CheckId, SuiteConfig, SuiteReport};
use curvecx::maps::{arc_path_to_bgraph_path, project_path_into_b, project_path_to_curves, rectify_genus0_path, wrap_construction, ProjectionRule};
use curvecx::surface::{admissible_for_arcs, build_surface, complexity, Surface};

/// Like `println!`, but a closed pipe (`curvecx ... | head`) ends the
/// process quietly instead of panicking.
macro_rules! out {
    ($($t:tt)*) => {
        emit(format_args!("{}\n", format_args!($($t)*)))
    };
}

fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

#[derive(Parser)]
#[command(name = "curvecx", version, about = "Truncated curve, arc and domain complexes of surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The reference model of a surface.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Curve and arc classes.
    Classes {
        #[command(subcommand)]
        cmd: ClassesCmd,
    },
    /// Domains and their disjointness.
    Domains {
        #[command(subcommand)]
        cmd: DomainsCmd,
    },
    /// Truncated balls of the complexes.
    Ball {
        #[command(subcommand)]
        cmd: BallCmd,
    },
    /// Coarse maps between complexes.
    Map {
        #[command(subcommand)]
        cmd: MapCmd,
    },
    /// The verification suite.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
}

#[derive(Args, Clone, Copy)]
struct SurfaceArgs {
    #[arg(long, short = 'g')]
    genus: usize,
    #[arg(long, short = 'b')]
    boundary: usize,
}

impl SurfaceArgs {
    fn build(&self) -> Result<Surface> {
        Ok(build_surface(self.genus, self.boundary)?)
    }
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Euler characteristic, complexity and the triangulation as JSON.
    Info {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Print the full JSON document instead of a summary.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassKind {
    Curve,
    Arc,
}

#[derive(Subcommand)]
enum ClassesCmd {
    /// All classes up to a norm bound, one JSON record per line.
    Enumerate {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_enum)]
        kind: ClassKind,
        #[arg(long)]
        norm: u32,
    },
    /// Canonical class of a path given as a JSON raw path.
    Canonicalize {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_enum)]
        kind: ClassKind,
        path: PathBuf,
    },
}

#[derive(Subcommand)]
enum DomainsCmd {
    /// Domains bounded by curves up to a norm bound, one per line.
    Enumerate {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        norm: u32,
        /// Largest number of essential boundary curves (default 3g+b-3).
        #[arg(long)]
        max_boundary_curves: Option<usize>,
    },
    /// Whether two domains (JSON files) are disjoint.
    Disjoint {
        #[command(flatten)]
        surface: SurfaceArgs,
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BallFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum BallCmd {
    /// Build a truncated ball and write it as JSON or DOT.
    Build {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// C, A, AB, P, D, AC, ABC, PC, span:pants, span:peripheral, span:G,B
        #[arg(long)]
        kind: ComplexKind,
        /// Curve norm bound.
        #[arg(long)]
        norm: u32,
        /// Arc norm bound (defaults to the curve bound).
        #[arg(long)]
        arc_norm: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: BallFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified lower bound and witnessed upper bound between two vertices.
    Distance {
        #[arg(long)]
        ball: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
}

#[derive(Subcommand)]
enum MapCmd {
    /// Project a path: D to C, A to A_B (through a ball), or P into the
    /// sphere side of the wrap curve, according to the path's kind.
    ProjectPath {
        #[command(flatten)]
        surface: SurfaceArgs,
        path: PathBuf,
        #[arg(long, default_value = "min")]
        rule: ProjectionRule,
        /// Arc norm of the A_B ball used for connectors.
        #[arg(long, default_value_t = 12)]
        ab_norm: u32,
        /// Arc norm of the defining-arc index for pants.
        #[arg(long, default_value_t = 12)]
        index_norm: u32,
    },
    /// Rewrite a D path between peripheral pants into a P path (genus 0).
    Rectify {
        #[command(flatten)]
        surface: SurfaceArgs,
        path: PathBuf,
        #[arg(long, default_value = "min")]
        rule: ProjectionRule,
        /// Curve norm of the D ball supplying replacement pants.
        #[arg(long, default_value_t = 12)]
        pool_norm: u32,
    },
    /// The wrap curve and the two sides it cuts off.
    Wrap {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Run checks; exits 1 if any check fails, 2 on configuration errors.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Surfaces as G,B; repeatable (default 0,5 0,6 1,3).
    #[arg(long = "surface")]
    surfaces: Vec<String>,
    /// Comma-separated check ids (default all).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    #[arg(long, default_value_t = 12)]
    norm: u32,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

/// A domain, bare or as a vertex record from `domains enumerate`.
fn read_domain(path: &Path) -> Result<DomainClass> {
    let mut v: serde_json::Value = read_json(path)?;
    if let Some(obj) = v.as_object_mut() {
        if obj.get("vertex").and_then(|x| x.as_str()) == Some("domain") {
            obj.remove("vertex");
        }
    }
    serde_json::from_value(v).with_context(|| format!("{} is not a domain", path.display()))
}

fn read_path(s: &Surface, path: &Path) -> Result<PathWitness> {
    let p: PathWitness = read_json(path)?;
    for v in &p.vertices {
        check_vertex(s, v)?;
    }
    p.validate(s)?;
    Ok(p)
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn surface_cmd(cmd: SurfaceCmd) -> Result<()> {
    let SurfaceCmd::Info { surface, json } = cmd;
    let s = surface.build()?;
    if json {
        out!("{}", s.to_json());
    } else {
        print_json(&json!({
            "genus": s.genus,
            "boundary_count": s.boundary_count,
            "euler_characteristic": s.euler_characteristic(),
            "complexity": complexity(&s),
            "admissible_for_arcs": admissible_for_arcs(&s),
            "triangles": s.num_triangles(),
            "edges": s.num_edges(),
        }))?;
    }
    Ok(())
}

fn classes_cmd(cmd: ClassesCmd) -> Result<()> {
    match cmd {
        ClassesCmd::Enumerate { surface, kind, norm } => {
            let s = surface.build()?;
            match kind {
                ClassKind::Curve => enumerate_curves(&s, norm).iter().try_for_each(|c| Ok(out!("{}", serde_json::to_string(&Vertex::Curve(c.clone()))?))),
                ClassKind::Arc => enumerate_arcs(&s, norm).iter().try_for_each(|a| Ok(out!("{}", serde_json::to_string(&Vertex::Arc(a.clone()))?))),
            }
        }
        ClassesCmd::Canonicalize { surface, kind, path } => {
            let s = surface.build()?;
            let raw = read_json(&path)?;
            let v = match kind {
                ClassKind::Curve => Vertex::Curve(curve_from_path(&s, &raw)?),
                ClassKind::Arc => Vertex::Arc(arc_from_path(&s, &raw)?),
            };
            print_json(&v)
        }
    }
}

fn domains_cmd(cmd: DomainsCmd) -> Result<()> {
    match cmd {
        DomainsCmd::Enumerate { surface, norm, max_boundary_curves } => {
            let s = surface.build()?;
            let max = max_boundary_curves.unwrap_or(BallParams::uniform(&s, norm).max_boundary_curves);
            for d in enumerate_domains(&s, norm, max) {
                out!("{}", serde_json::to_string(&Vertex::Domain(d))?);
            }
            Ok(())
        }
        DomainsCmd::Disjoint { surface, a, b } => {
            let s = surface.build()?;
            let (x, y) = (read_domain(&a)?, read_domain(&b)?);
            for d in [&x, &y] {
                check_vertex(&s, &Vertex::Domain(d.clone()))?;
            }
            print_json(&json!({ "disjoint": domains_disjoint(&s, &x, &y)? }))
        }
    }
}

fn ball_cmd(cmd: BallCmd) -> Result<()> {
    match cmd {
        BallCmd::Build { surface, kind, norm, arc_norm, format, out } => {
            let s = surface.build()?;
            let mut params = BallParams::uniform(&s, norm);
            if let Some(a) = arc_norm {
                params.arc_norm = a;
            }
            let ball = build_ball(&s, kind, params)?;
            let text = match format {
                BallFormat::Json => ball.to_json(),
                BallFormat::Dot => ball.to_dot(),
            };
            write_out(out.as_deref(), &text)?;
            if out.is_some() {
                eprintln!("{} vertices, {} edges", ball.len(), ball.edge_count());
            }
            Ok(())
        }
        BallCmd::Distance { ball, u, v } => {
            let text = fs::read_to_string(&ball).with_context(|| format!("reading {}", ball.display()))?;
            let ball = ComplexBall::from_json(&text)?;
            let s = build_surface(ball.genus, ball.boundary_count)?;
            let (u, v): (Vertex, Vertex) = (read_json(&u)?, read_json(&v)?);
            for x in [&u, &v] {
                check_vertex(&s, x)?;
            }
            let lower = certified_lower_bound(&s, ball.kind, &u, &v)?;
            let upper = distance_upper(&ball, &u, &v)?;
            if let Some((_, w)) = &upper {
                w.validate(&s)?;
            }
            print_json(&json!({
                "kind": ball.kind,
                "lower": lower,
                "upper": upper.as_ref().map(|x| x.0),
                "exact": upper.as_ref().is_some_and(|x| x.0 == lower),
                "witness": upper.map(|x| x.1),
            }))
        }
    }
}

fn map_cmd(cmd: MapCmd) -> Result<()> {
    match cmd {
        MapCmd::ProjectPath { surface, path, rule, ab_norm, index_norm } => {
            let s = surface.build()?;
            let p = read_path(&s, &path)?;
            let out = match p.kind {
                ComplexKind::D => project_path_to_curves(&s, &p, rule)?,
                ComplexKind::A => {
                    let mut params = BallParams::uniform(&s, ab_norm);
                    params.arc_norm = ab_norm;
                    let ab = build_ball(&s, ComplexKind::AB, params)?;
                    arc_path_to_bgraph_path(&s, &p, &ab, 4)?
                }
                ComplexKind::PBoundary => {
                    let wrap = wrap_construction(&s)?;
                    let index = PantsIndex::build(&s, &enumerate_arcs(&s, index_norm));
                    project_path_into_b(&s, &p, &wrap, rule, Some(&index))?
                }
                k => bail!("no path projection starts from {k}"),
            };
            out.validate(&s)?;
            print_json(&out)
        }
        MapCmd::Rectify { surface, path, rule, pool_norm } => {
            let s = surface.build()?;
            let p = read_path(&s, &path)?;
            let mut pool: Vec<DomainClass> = enumerate_domains(&s, pool_norm, BallParams::uniform(&s, pool_norm).max_boundary_curves)
                .into_iter()
                .filter(|d| d.is_peripheral_pants())
                .collect();
            pool.sort();
            let out = rectify_genus0_path(&s, &p, &pool, rule)?;
            print_json(&out)
        }
        MapCmd::Wrap { surface } => {
            let s = surface.build()?;
            let w = wrap_construction(&s)?;
            print_json(&json!({
                "curve": w.c,
                "b_side": { "type": w.b_side.topo_type(), "domain": w.b_side },
                "c_side": { "type": w.c_side.topo_type(), "domain": w.c_side },
            }))
        }
    }
}

/// Exit code 2 for configuration problems, 1 for failed checks.
fn check_cmd(cmd: CheckCmd) -> Result<ExitCode, ExitCode> {
    let CheckCmd::Run(args) = cmd;
    let config = (|| -> Result<SuiteConfig> {
        let mut cfg = SuiteConfig { norm: args.norm, samples: args.samples, seed: args.seed, ..SuiteConfig::default() };
        if !args.surfaces.is_empty() {
            cfg.surfaces = args
                .surfaces
                .iter()
                .map(|x| {
                    let (g, b) = x.split_once(',').with_context(|| format!("surface `{x}` is not G,B"))?;
                    Ok((g.trim().parse()?, b.trim().parse()?))
                })
                .collect::<Result<_>>()?;
        }
        if !args.checks.is_empty() {
            cfg.checks = args.checks.iter().map(|c| c.parse::<CheckId>()).collect::<Result<_, _>>()?;
        }
        cfg.validate()?;
        Ok(cfg)
    })()
    .map_err(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })?;
    let reports = run_suite(&config).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    let report = SuiteReport::new(config, reports);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(out) = &args.out {
        if let Err(e) = fs::write(out, &text) {
            eprintln!("error: writing {}: {e}", out.display());
            return Err(ExitCode::from(2));
        }
    }
    if args.json {
        out!("{text}");
    } else {
        emit(format_args!("{}", report.human()));
    }
    Ok(if report.failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Surface { cmd } => surface_cmd(cmd),
        Cmd::Classes { cmd } => classes_cmd(cmd),
        Cmd::Domains { cmd } => domains_cmd(cmd),
        Cmd::Ball { cmd } => ball_cmd(cmd),
        Cmd::Map { cmd } => map_cmd(cmd),
        Cmd::Check { cmd } => return check_cmd(cmd).unwrap_or_else(|code| code),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
