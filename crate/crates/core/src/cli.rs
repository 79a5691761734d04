//! Command-line front end: `subdivide`, `verify` and `serve`.
//!
//! Exit codes: 0 on success, 1 on invalid input or arguments, 2 when
//! `verify` finds a violated bound.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{verify_bounds, SweepReport, VerificationReport};
use crate::fit::FitOptions;
use crate::io::{
    curvature_csv, parse_input, render_svg, run, InputDocument, SchemeFamily, SvgOptions,
    DEMO_INPUT, VERSION,
};
use crate::quadrature::QuadratureConfig;
use crate::service::{serve, ServiceConfig};
use crate::subdivision::{FourPointOuter, SchemeKind, SchemeSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BOUND_VIOLATED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "clothoid", version = VERSION, about = "Clothoid-based Hermite subdivision")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Refine a curve and write JSON, CSV or SVG.
    Subdivide(SubdivideArgs),
    /// Check the defect and contraction bounds numerically.
    Verify(VerifyArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

/// `lr<n>` or `fourpoint`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum SchemeName {
    LaneRiesenfeld(usize),
    FourPoint,
}

fn parse_scheme(s: &str) -> Result<SchemeName, String> {
    if s == "fourpoint" {
        return Ok(SchemeName::FourPoint);
    }
    s.strip_prefix("lr")
        .and_then(|n| n.parse().ok())
        .map(SchemeName::LaneRiesenfeld)
        .ok_or_else(|| format!("expected lr<n> or fourpoint, got {s:?}"))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OuterArg {
    Clothoid,
    Mean,
}

#[derive(clap::Args, Debug)]
struct SubdivideArgs {
    /// Input document; the built-in demo polygon when omitted.
    input: Option<PathBuf>,
    /// lr1, lr2, lr3, ... or fourpoint [default: document setting or lr3]
    #[arg(long, value_parser = parse_scheme)]
    scheme: Option<SchemeName>,
    /// Four-point tension in [-1/4, 0) [default: -1/18]
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    /// Rounds of refinement [default: 5]
    #[arg(long)]
    levels: Option<usize>,
    /// Newton corrections per fit [default: 0]
    #[arg(long)]
    newton_steps: Option<usize>,
    #[arg(long, default_value_t = 1)]
    quad_panels: usize,
    #[arg(long, default_value_t = 3)]
    quad_nodes: usize,
    /// Outer average of the four-point rule.
    #[arg(long, value_enum, default_value = "clothoid")]
    outer: OuterArg,
    #[arg(long, value_enum, default_value = "json")]
    out: OutputFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// SVG: omit input normals.
    #[arg(long)]
    no_normals: bool,
    /// SVG: omit the curvature comb.
    #[arg(long)]
    no_comb: bool,
    /// SVG: omit the curvature chart.
    #[arg(long)]
    no_chart: bool,
    /// SVG: comb height per unit curvature.
    #[arg(long)]
    comb_scale: Option<f64>,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Grid points per axis of the defect sweep.
    #[arg(long, default_value_t = 129)]
    resolution: usize,
    /// Sample count of the contraction sweep.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args, Debug)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
    bind: IpAddr,
    /// Serve the editor bundle from this directory.
    #[arg(long)]
    static_dir: Option<PathBuf>,
}

/// Parse `args` (including the program name) and run, writing to the given
/// streams. Returns the process exit code.
pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Subdivide(args) => subdivide_command(args, out),
        Command::Verify(args) => verify_command(args, out),
        Command::Serve(args) => serve_command(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INVALID
        }
    }
}

/// [`run_cli_with`] on the process's standard streams.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_cli_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

fn subdivide_command(args: SubdivideArgs, out: &mut dyn Write) -> Result<i32, String> {
    let doc = match &args.input {
        Some(path) => {
            let bytes =
                std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_input(&bytes).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => parse_input(DEMO_INPUT.as_bytes()).map_err(|e| e.to_string())?,
    };
    let scheme = scheme_from_args(&args, &doc)?;
    let levels = args
        .levels
        .or(doc.scheme.and_then(|s| s.levels))
        .unwrap_or(5);
    let report = run(&doc.sequence, &scheme, levels, true).map_err(|e| e.to_string())?;
    let body = match args.out {
        OutputFormat::Json => report.to_json_string() + "\n",
        OutputFormat::Csv => match &report.curvature {
            Some(profile) => curvature_csv(profile),
            None => return Err("curvature needs at least three points".to_string()),
        },
        OutputFormat::Svg => render_svg(
            &report,
            &SvgOptions {
                show_normals: !args.no_normals,
                show_comb: !args.no_comb,
                comb_scale: args.comb_scale,
                show_chart: !args.no_chart,
            },
        ),
    };
    match &args.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| format!("cannot write output: {e}"))?,
    }
    Ok(EXIT_OK)
}

/// Command-line flags override the document's defaults, which override the
/// built-in ones.
fn scheme_from_args(args: &SubdivideArgs, doc: &InputDocument) -> Result<SchemeSpec, String> {
    let defaults = doc.scheme.unwrap_or_default();
    let name = match (args.scheme, defaults.kind) {
        (Some(name), _) => name,
        (None, Some(SchemeFamily::FourPoint)) => SchemeName::FourPoint,
        (None, Some(SchemeFamily::LaneRiesenfeld)) => {
            SchemeName::LaneRiesenfeld(defaults.n.unwrap_or(3))
        }
        (None, None) => SchemeName::LaneRiesenfeld(3),
    };
    let newton_steps = args.newton_steps.or(defaults.newton_steps).unwrap_or(0);
    let quad =
        QuadratureConfig::new(args.quad_nodes, args.quad_panels).map_err(|e| e.to_string())?;
    let fit = FitOptions::new(newton_steps, quad).map_err(|e| e.to_string())?;
    let kind = match name {
        SchemeName::LaneRiesenfeld(n) => SchemeKind::LaneRiesenfeld { n },
        SchemeName::FourPoint => SchemeKind::FourPoint {
            omega: args.omega.or(defaults.omega).unwrap_or(-1.0 / 18.0),
        },
    };
    let outer = match args.outer {
        OuterArg::Clothoid => FourPointOuter::ClothoidAverage,
        OuterArg::Mean => FourPointOuter::ComponentwiseMean,
    };
    let spec = SchemeSpec { kind, fit, outer };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn print_sweep(out: &mut dyn Write, label: &str, r: &SweepReport) -> std::io::Result<()> {
    writeln!(
        out,
        "{label}: grid {0}x{0}, newton {1}: max|defect| = {2:.3e}, 800*max|defect| = {3:.4}, \
         800*max|defect|/cubic = {4:.4} at {5:?}, failures {6}",
        r.grid_resolution,
        r.newton_steps,
        r.max_abs_defect,
        r.max_scaled_defect,
        r.max_ratio_defect,
        r.ratio_argmax_location,
        r.failures
    )
}

fn print_verification(out: &mut dyn Write, report: &VerificationReport) -> std::io::Result<()> {
    print_sweep(out, "defect sweep", &report.defect)?;
    print_sweep(out, "one newton step", &report.newton_one)?;
    print_sweep(out, "two newton steps", &report.newton_two)?;
    let c = &report.contraction;
    writeln!(
        out,
        "contraction sweep: {} samples: max r = {:.4} at {:?}, max rho = {:.4} at {:?}, failures {}",
        c.samples, c.max_r, c.argmax_r, c.max_rho, c.argmax_rho, c.failures
    )?;
    for check in &report.checks {
        writeln!(
            out,
            "[{}] {}: {:.6e} (bound {:.6e})",
            if check.pass { "pass" } else { "FAIL" },
            check.name,
            check.value,
            check.bound
        )?;
    }
    Ok(())
}

fn verify_command(args: VerifyArgs, out: &mut dyn Write) -> Result<i32, String> {
    if args.resolution < 2 {
        return Err("resolution must be at least 2".to_string());
    }
    if args.samples == 0 {
        return Err("samples must be positive".to_string());
    }
    let report = verify_bounds(args.resolution, args.samples);
    let written = if args.json {
        serde_json::to_writer_pretty(&mut *out, &report)
            .map_err(std::io::Error::other)
            .and_then(|_| writeln!(out))
    } else {
        print_verification(out, &report)
    };
    written.map_err(|e| format!("cannot write output: {e}"))?;
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_BOUND_VIOLATED
    })
}

fn serve_command(args: ServeArgs) -> Result<i32, String> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    let addr = SocketAddr::new(args.bind, args.port);
    let config = ServiceConfig {
        static_dir: args.static_dir,
    };
    runtime
        .block_on(serve(addr, config))
        .map_err(|e| format!("cannot serve on {addr}: {e}"))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_names() {
        assert_eq!(parse_scheme("lr1"), Ok(SchemeName::LaneRiesenfeld(1)));
        assert_eq!(parse_scheme("lr12"), Ok(SchemeName::LaneRiesenfeld(12)));
        assert_eq!(parse_scheme("fourpoint"), Ok(SchemeName::FourPoint));
        assert!(parse_scheme("lr").is_err());
        assert!(parse_scheme("bspline").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
