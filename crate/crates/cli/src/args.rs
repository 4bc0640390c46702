//! Flag parsing and validation into a [`JobSpec`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use riemann_core::mesh::DEFAULT_WELD_TOL;
use riemann_core::{BranchIndex, CharismaKind, DomainGrid, IndexedFunction, RadialSpacing};

use crate::error::CliError;

/// Branches shown for the logarithm when `--branches` is absent.
pub const DEFAULT_LOG_WINDOW: (i64, i64) = (-2, 2);

/// Upper bound on the number of sheets in one surface.
pub const MAX_BRANCHES: i64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ply,
    Obj,
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Ply => "ply",
            Format::Obj => "obj",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CharismaArg {
    Index,
    Phase,
    Sin,
    Cos,
    Imag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Log,
}

/// Ready-made surface configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Cube root, branch-index charisma, stacked flat sheets with walls.
    #[value(name = "3a")]
    IndexSheets,
    /// Cube root, charisma = phase of the range value.
    #[value(name = "3b-range")]
    RangePhase,
    /// Cube root, sine charisma: the smooth periodic surface.
    #[value(name = "4")]
    Sine,
    /// Cube root, cosine charisma.
    #[value(name = "5")]
    Cosine,
    /// Logarithm helix over branches -2..2.
    #[value(name = "6")]
    LogHelix,
}

impl Figure {
    fn preset(self) -> (IndexedFunction, CharismaArg, bool) {
        match self {
            Figure::IndexSheets => (IndexedFunction::Root(3), CharismaArg::Index, true),
            Figure::RangePhase => (IndexedFunction::Root(3), CharismaArg::Phase, false),
            Figure::Sine => (IndexedFunction::Root(3), CharismaArg::Sin, false),
            Figure::Cosine => (IndexedFunction::Root(3), CharismaArg::Cos, false),
            Figure::LogHelix => (IndexedFunction::Log, CharismaArg::Imag, false),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "riemann",
    version,
    about = "Build Riemann-surface meshes for indexed branches of log and n-th roots"
)]
struct Args {
    /// Function: `log` or `root:N` with N >= 2 [default: root:3]
    #[arg(long, value_name = "log|root:N", value_parser = parse_function)]
    function: Option<IndexedFunction>,

    /// Height function lifting each sheet [default: sin, or imag for log]
    #[arg(long, value_enum)]
    charisma: Option<CharismaArg>,

    /// With `--charisma sin`, use Im(w) instead of sin(ph w)
    #[arg(long)]
    sin_imag: bool,

    /// Inclusive branch range `KMIN..KMAX` (or a single `K`), intersected with
    /// the admissible set [default: all roots, -2..2 for log]
    #[arg(long, value_name = "KMIN..KMAX", allow_hyphen_values = true, value_parser = parse_branches)]
    branches: Option<(i64, i64)>,

    /// Inner radius of the polar domain [default: 0.05]
    #[arg(long, value_name = "R", allow_negative_numbers = true)]
    r_min: Option<f64>,

    /// Outer radius of the polar domain [default: 2]
    #[arg(long, value_name = "R", allow_negative_numbers = true)]
    r_max: Option<f64>,

    /// Radial samples [default: 40]
    #[arg(long, value_name = "N")]
    n_r: Option<usize>,

    /// Angular intervals across (-π, π] [default: 240]
    #[arg(long, value_name = "N")]
    n_theta: Option<usize>,

    #[arg(long, value_enum, default_value_t = SpacingArg::Linear)]
    radial: SpacingArg,

    /// Leave continuous seams open
    #[arg(long)]
    no_weld: bool,

    /// Largest seam gap that still welds [default: 1e-9]
    #[arg(long, value_name = "TOL", allow_negative_numbers = true)]
    weld_tol: Option<f64>,

    /// Add vertical wall strips across discontinuous seams
    #[arg(long)]
    walls: bool,

    #[arg(long, value_enum, default_value_t = Format::Ply)]
    format: Format,

    /// Mesh file to write [default: riemann_surface.<format>]
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Preset surface; explicit flags override it
    #[arg(long, value_enum)]
    figure: Option<Figure>,
}

/// A fully validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub function: IndexedFunction,
    pub charisma: CharismaKind,
    /// Ascending, non-empty, all admissible.
    pub branches: Vec<BranchIndex>,
    pub grid: DomainGrid,
    pub weld: bool,
    pub weld_tol: f64,
    pub walls: bool,
    pub format: Format,
    pub output: PathBuf,
}

fn parse_function(s: &str) -> Result<IndexedFunction, String> {
    if s == "log" {
        return Ok(IndexedFunction::Log);
    }
    let n = s
        .strip_prefix("root:")
        .ok_or_else(|| format!("expected `log` or `root:N`, got `{s}`"))?;
    let n: u32 = n
        .parse()
        .map_err(|_| format!("root order must be an integer, got `{n}`"))?;
    IndexedFunction::root(n).map_err(|e| e.to_string())
}

fn parse_branches(s: &str) -> Result<(i64, i64), String> {
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("expected `KMIN..KMAX` or `K`, got `{s}`"))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((int(a)?, int(b.strip_prefix('=').unwrap_or(b))?)),
        None => int(s).map(|k| (k, k)),
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {msg}"))
}

/// Parse `argv` (including the program name) into a validated [`JobSpec`].
pub fn parse_args<I, T>(argv: I) -> Result<JobSpec, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;
    let (preset_fn, preset_charisma, preset_walls) = match args.figure {
        Some(fig) => {
            let (f, c, w) = fig.preset();
            (Some(f), Some(c), w)
        }
        None => (None, None, false),
    };

    let function = args.function.or(preset_fn).unwrap_or(IndexedFunction::Root(3));
    let charisma_arg = args.charisma.or(preset_charisma).unwrap_or(match function {
        IndexedFunction::Log => CharismaArg::Imag,
        IndexedFunction::Root(_) => CharismaArg::Sin,
    });
    if args.sin_imag && charisma_arg != CharismaArg::Sin {
        return Err(usage("--sin-imag", "only applies to `--charisma sin`"));
    }
    let charisma = match charisma_arg {
        CharismaArg::Index => CharismaKind::Index,
        CharismaArg::Phase => CharismaKind::Phase,
        CharismaArg::Sin => CharismaKind::Sin {
            use_range_imag: args.sin_imag,
        },
        CharismaArg::Cos => CharismaKind::Cos,
        CharismaArg::Imag => CharismaKind::Imag,
    };
    if !charisma.is_compatible(function) {
        return Err(CliError::Incompatible(format!(
            "--charisma {charisma} is not defined for --function {function}"
        )));
    }

    let branches: Vec<BranchIndex> = {
        let (lo, hi) = match (args.branches, function.index_range()) {
            (Some(r), _) => r,
            (None, Some(r)) => (*r.start(), *r.end()),
            (None, None) => DEFAULT_LOG_WINDOW,
        };
        let (lo, hi) = match function.index_range() {
            Some(r) => (lo.max(*r.start()), hi.min(*r.end())),
            None => (lo, hi),
        };
        if hi >= lo && hi - lo >= MAX_BRANCHES {
            return Err(usage(
                "--branches",
                format!("at most {MAX_BRANCHES} branches per surface, got {lo}..{hi}"),
            ));
        }
        (lo..=hi).map(BranchIndex).collect()
    };
    if branches.is_empty() {
        let admissible = function
            .index_range()
            .map_or("any integer".to_string(), |r| format!("{}..{}", r.start(), r.end()));
        return Err(usage(
            "--branches",
            format!("no admissible branch in the range (admissible for {function}: {admissible})"),
        ));
    }

    let defaults = DomainGrid::default();
    let grid = DomainGrid {
        r_min: args.r_min.unwrap_or(defaults.r_min),
        r_max: args.r_max.unwrap_or(defaults.r_max),
        n_r: args.n_r.unwrap_or(defaults.n_r),
        n_theta: args.n_theta.unwrap_or(defaults.n_theta),
        spacing: match args.radial {
            SpacingArg::Linear => RadialSpacing::Linear,
            SpacingArg::Log => RadialSpacing::Logarithmic,
        },
    };
    if !(grid.r_min.is_finite() && grid.r_min > 0.0) {
        return Err(usage("--r-min", format!("must be positive, got {}", grid.r_min)));
    }
    if !(grid.r_max.is_finite() && grid.r_max > grid.r_min) {
        return Err(usage(
            "--r-max",
            format!("must exceed r_min = {}, got {}", grid.r_min, grid.r_max),
        ));
    }
    if grid.n_r < 2 {
        return Err(usage("--n-r", format!("must be at least 2, got {}", grid.n_r)));
    }
    if grid.n_theta < 8 {
        return Err(usage("--n-theta", format!("must be at least 8, got {}", grid.n_theta)));
    }

    let weld_tol = args.weld_tol.unwrap_or(DEFAULT_WELD_TOL);
    if !(weld_tol.is_finite() && weld_tol >= 0.0) {
        return Err(usage("--weld-tol", format!("must be finite and >= 0, got {weld_tol}")));
    }

    let output = args
        .output
        .unwrap_or_else(|| PathBuf::from(format!("riemann_surface.{}", args.format.extension())));

    Ok(JobSpec {
        function,
        charisma,
        branches,
        grid,
        weld: !args.no_weld,
        weld_tol,
        walls: args.walls || (preset_walls && args.charisma.is_none()),
        format: args.format,
        output,
    })
}
