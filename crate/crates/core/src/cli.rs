//! The `pentaspiral` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{apply_arms, spiral_arms, symmetry_detect, verify, SymmetryGroup};
use crate::assembly::{
    assemble_hexagons, houses_patch, pentagon_level, HousesKind, Patch, SymmetryKind,
};
use crate::io::{parse, render_svg, serialize, ColorBy, SvgOptions};
use crate::pentagon::{
    default_params, derive_pentagon, dihedral_params, validate_property1, Corner, FeasibleParams,
};

#[derive(Debug, Parser)]
#[command(
    name = "pentaspiral",
    version,
    about = "Rotationally symmetric pentagon tilings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a patch and write it as SVG and/or JSON.
    Generate(GenerateArgs),
    /// Check a JSON patch document.
    Verify(VerifyArgs),
    /// Print the pentagon for the given parameters.
    Info(InfoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HousesArg {
    C1,
    C2,
    D1,
    D2,
}

impl From<HousesArg> for HousesKind {
    fn from(h: HousesArg) -> Self {
        match h {
            HousesArg::C1 => HousesKind::C1,
            HousesArg::C2 => HousesKind::C2,
            HousesArg::D1 => HousesKind::D1,
            HousesArg::D2 => HousesKind::D2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Pentagon,
    Hexagon,
}

#[derive(Debug, Clone, clap::Args)]
pub struct ParamArgs {
    /// Rotation order; B = 360/n.
    #[arg(long)]
    pub n: Option<u32>,
    /// Angle C in degrees.
    #[arg(long = "C", value_name = "DEG")]
    pub c: Option<f64>,
    /// Angle D in degrees.
    #[arg(long = "D", value_name = "DEG")]
    pub d: Option<f64>,
    /// Use the mirror-symmetric parameters C = 180 - 180/n, D = 90.
    #[arg(long)]
    pub dihedral: bool,
}

impl ParamArgs {
    fn params(&self, n: u32) -> Result<FeasibleParams> {
        if self.dihedral {
            if self.c.is_some() || self.d.is_some() {
                bail!("--dihedral fixes C and D; drop --C/--D");
            }
            return Ok(dihedral_params(n));
        }
        let base = default_params(n);
        Ok(FeasibleParams::new(
            n,
            self.c.unwrap_or(base.c),
            self.d.unwrap_or(base.d),
        ))
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Houses tiling for the orders 1 and 2 instead of a rotational patch.
    #[arg(long, value_enum)]
    pub houses: Option<HousesArg>,
    /// Number of rings (strips on each side for houses).
    #[arg(long, default_value_t = 3)]
    pub rings: usize,
    #[arg(long, value_enum, default_value_t = LevelArg::Pentagon)]
    pub level: LevelArg,
    /// Label spiral arms.
    #[arg(long)]
    pub arms: bool,
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-7)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = ColorBy::Ring)]
    pub color_by: ColorBy,
    /// SVG width in pixels.
    #[arg(long, default_value_t = 800.0)]
    pub width: f64,
    /// Mark the centre of symmetry in the SVG.
    #[arg(long)]
    pub show_center: bool,
}

#[derive(Debug, Clone, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "PATH")]
    pub json: PathBuf,
    #[arg(long, default_value_t = 1e-7)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, clap::Args)]
pub struct InfoArgs {
    #[command(flatten)]
    pub params: ParamArgs,
}

fn declared_group(patch: &Patch) -> SymmetryGroup {
    match patch.symmetry_declared {
        SymmetryKind::C => SymmetryGroup::C(patch.n),
        SymmetryKind::D => SymmetryGroup::D(patch.n),
    }
}

fn check_tolerance(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        bail!("--tolerance must be a positive number, got {t}");
    }
    Ok(())
}

fn build(args: &GenerateArgs) -> Result<Patch> {
    check_tolerance(args.tolerance)?;
    if args.rings == 0 {
        bail!("--rings must be at least 1");
    }
    if !(args.width.is_finite() && args.width > 0.0) {
        bail!("--width must be positive");
    }
    let patch = match (args.houses, args.params.n) {
        (Some(_), Some(_)) => bail!("give either --n or --houses, not both"),
        (None, None) => bail!("one of --n or --houses is required"),
        (Some(kind), None) => {
            if args.params.c.is_some() || args.params.d.is_some() || args.params.dihedral {
                bail!("--houses takes no pentagon parameters");
            }
            if args.level == LevelArg::Hexagon {
                bail!("houses patches exist only at pentagon level");
            }
            if args.arms {
                bail!("houses patches have no spiral arms");
            }
            houses_patch(kind.into(), args.rings)
        }
        (None, Some(n)) => {
            if n < 3 {
                bail!("--n must be at least 3 (use --houses for orders 1 and 2)");
            }
            let params = args.params.params(n)?;
            let hex = assemble_hexagons(&params, args.rings).context("infeasible parameters")?;
            let patch = match args.level {
                LevelArg::Hexagon => hex,
                LevelArg::Pentagon => pentagon_level(&hex).context("splitting hexagons")?,
            };
            if args.arms {
                let labels = spiral_arms(&patch).context("spiral arms")?;
                apply_arms(&patch, &labels).context("spiral arms")?
            } else {
                patch
            }
        }
    };
    Ok(patch)
}

fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let patch = build(args)?;
    let symmetry = symmetry_detect(&patch, args.tolerance);
    if let Some(path) = &args.json {
        fs::write(path, serialize(&patch))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.svg {
        let options = SvgOptions {
            width: args.width,
            color_by: args.color_by,
            show_center: args.show_center,
        };
        fs::write(path, render_svg(&patch, &options))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    writeln!(
        out,
        "{} {} tiles, {} rings, symmetry {}",
        patch.tiles.len(),
        patch.level,
        patch.rings,
        symmetry.group
    )?;
    Ok(())
}

fn verify_cmd(args: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    check_tolerance(args.tolerance)?;
    let bytes = fs::read(&args.json).with_context(|| format!("reading {}", args.json.display()))?;
    let patch = parse(&bytes).context("schema error")?;
    let report = verify(&patch, args.tolerance);
    let symmetry = symmetry_detect(&patch, args.tolerance);
    let declared = declared_group(&patch);
    writeln!(out, "{report}")?;
    writeln!(
        out,
        "symmetry:      {} (declared {declared})",
        symmetry.group
    )?;
    if !report.passed() {
        bail!("verification failed");
    }
    if symmetry.group != declared {
        bail!(
            "verification failed: detected {} but document declares {declared}",
            symmetry.group
        );
    }
    writeln!(out, "{}, all checks passed", symmetry.group)?;
    Ok(())
}

fn info(args: &InfoArgs, out: &mut dyn Write) -> Result<()> {
    let n = args.params.n.ok_or_else(|| anyhow!("--n is required"))?;
    let params = args.params.params(n)?;
    if params.n < 3 {
        bail!("--n must be at least 3");
    }
    writeln!(out, "n = {n}, C = {}°, D = {}°", params.c, params.d)?;
    let spec = derive_pentagon(&params).context("infeasible parameters")?;
    for c in Corner::ALL {
        writeln!(
            out,
            "{c} = {:>12.8}°   {} = {:.12}",
            spec.angle(c),
            c.side_name(),
            spec.side(c)
        )?;
    }
    let violations = validate_property1(&spec, 1e-9);
    if violations.is_empty() {
        writeln!(out, "feasible: yes")?;
    } else {
        for v in &violations {
            writeln!(out, "violation: {v}")?;
        }
        bail!("infeasible parameters");
    }
    let family = if params.is_dihedral(1e-9) { "D" } else { "C" };
    writeln!(out, "symmetry type: {family}_{n}")?;
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Verify(a) => verify_cmd(a, out),
        Command::Info(a) => info(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}
