use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::electrostatics::{DielectricConstant, DielectricStack, DEFAULT_TOL};
use crate::scenarios::{material, Carrier, Material, DEFAULT_HAMAKER_J};
use crate::schrodinger::DEFAULT_POINTS;
use crate::units::NEUTRON_MASS_KG;

use super::sweep::{LayerRange, Sweep};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "IMAGEWELL_CONFIG";

const COMMANDS: [&str; 6] = ["potential", "eigen", "schottky", "film", "plates", "levitate"];

#[derive(Debug, Parser)]
#[command(name = "imagewell", version, about = "Image-charge potentials, bound states and plate forces")]
struct Cli {
    /// Config file with `[section]` headers and `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Truncation tolerance of the image series.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Grid points of the eigenvalue problems.
    #[arg(long, global = true)]
    points: Option<usize>,
    #[command(subcommand)]
    command: Commands,
}

#[derive(Debug, Subcommand)]
enum Commands {
    /// Self-potential of a charge inside the slab of a three-layer stack.
    Potential(PotentialArgs),
    /// Eigenstates between metal plates or in front of a single wall.
    Eigen(EigenArgs),
    /// Carrier in a semiconductor across a vacuum gap from a metal.
    Schottky(SchottkyArgs),
    /// Electron above a layered film on a metal.
    Film(FilmArgs),
    /// Electron between two metal plates, swept over the gap.
    Plates(PlatesArgs),
    /// Plate forces and the mass they can hold up.
    Levitate(LevitateArgs),
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct PotentialArgs {
    #[arg(long)]
    k1: Option<DielectricConstant>,
    #[arg(long)]
    k2: Option<f64>,
    #[arg(long)]
    k3: Option<DielectricConstant>,
    /// Left interface position, nm.
    #[arg(long)]
    a: Option<f64>,
    /// Right interface position, nm.
    #[arg(long)]
    b: Option<f64>,
    /// Charge position(s), nm.
    #[arg(long)]
    z0: Option<Sweep>,
    /// Charge in units of e.
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, value_enum)]
    method: Option<Method>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct EigenArgs {
    #[arg(long, value_enum)]
    domain: Option<Domain>,
    /// Plate gap, nm (interval domain).
    #[arg(long)]
    width: Option<f64>,
    /// Host permittivity (wall domain).
    #[arg(long)]
    eps_host: Option<f64>,
    /// Wall permittivity or `metal` (wall domain).
    #[arg(long)]
    wall: Option<DielectricConstant>,
    /// Carrier charge in units of e; 0 gives the bare box.
    #[arg(long)]
    charge: Option<f64>,
    /// Carrier mass in electron masses.
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long)]
    states: Option<usize>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct SchottkyArgs {
    #[arg(long)]
    material: Option<String>,
    #[arg(long)]
    carrier: Option<Carrier>,
    /// Vacuum gap sweep, nm.
    #[arg(long)]
    gap: Option<Sweep>,
    #[arg(long)]
    states: Option<usize>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct FilmArgs {
    #[arg(long)]
    material: Option<String>,
    /// Layer counts `first:last[:step]`.
    #[arg(long)]
    layers: Option<LayerRange>,
    #[arg(long)]
    states: Option<usize>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct PlatesArgs {
    /// Plate gap sweep, nm.
    #[arg(long)]
    gap: Option<Sweep>,
    #[arg(long)]
    states: Option<usize>,
    #[arg(long)]
    charge: Option<f64>,
    #[arg(long)]
    mass: Option<f64>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct LevitateArgs {
    #[arg(long, value_enum)]
    model: Option<LevitationModel>,
    /// Plate gap sweep, nm.
    #[arg(long)]
    gap: Option<Sweep>,
    /// Number of electrons between the plates.
    #[arg(long)]
    electrons: Option<u64>,
    /// Plate area, m².
    #[arg(long)]
    area: Option<f64>,
    /// Hamaker constant, J.
    #[arg(long)]
    hamaker: Option<f64>,
    /// Occupied state index.
    #[arg(long)]
    state: Option<usize>,
    /// Confined particle for the box model: `neutron`, `electron` or a mass in kg.
    #[arg(long)]
    particle: Option<String>,
    /// Quantum number for the box model.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Method {
    Series,
    Images,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Domain {
    /// Between two metal plates.
    Interval,
    /// Half-line in front of a single wall.
    Wall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum LevitationModel {
    /// Charged plates with binding, plate–plate, Casimir and van der Waals forces.
    Plates,
    /// A neutral particle in a box.
    Box,
}

/// A fully validated command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Command {
    Potential { stack: DielectricStack, z0: Sweep, q: f64, method: Method },
    Eigen { domain: Domain, width: f64, eps_host: f64, wall: DielectricConstant, charge: f64, mass: f64, states: usize },
    Schottky { material: Material, carrier: Carrier, gaps: Sweep, states: usize },
    Film { material: Material, layers: LayerRange, states: usize },
    Plates { gaps: Sweep, states: usize, charge: f64, mass: f64 },
    Levitate {
        model: LevitationModel,
        gaps: Sweep,
        electrons: u64,
        area: f64,
        hamaker: f64,
        state: usize,
        particle_kg: f64,
        n: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Potential { .. } => "potential",
            Command::Eigen { .. } => "eigen",
            Command::Schottky { .. } => "schottky",
            Command::Film { .. } => "film",
            Command::Plates { .. } => "plates",
            Command::Levitate { .. } => "levitate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub points: usize,
}

#[derive(Debug)]
pub enum CliError {
    /// Unknown flag, unparsable value, `--help` or `--version`.
    Clap(clap::Error),
    /// Every violated constraint of an otherwise parsable command line.
    Invalid(Vec<String>),
    Config(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Clap(e) => write!(f, "{e}"),
            CliError::Invalid(list) => {
                writeln!(f, "invalid arguments:")?;
                for item in list {
                    writeln!(f, "  - {item}")?;
                }
                Ok(())
            }
            CliError::Config(m) => write!(f, "config file: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Parses a command line, using `$IMAGEWELL_CONFIG` when `--config` is absent.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    parse_args_with_default_config(args, std::env::var_os(CONFIG_ENV).map(PathBuf::from))
}

/// Like [`parse_args`] with an explicit fallback config path.
pub fn parse_args_with_default_config<I, T>(args: I, default_config: Option<PathBuf>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let config_path = explicit_config(&argv).or(default_config);
    let argv = match &config_path {
        Some(path) => inject_config(argv, path)?,
        None => argv,
    };
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    resolve(cli)
}

fn explicit_config(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Inserts `--key value` pairs from the `[general]` section and the section
/// of the chosen command right after the command name, so that flags given
/// on the command line (which come later) take precedence.
fn inject_config(argv: Vec<OsString>, path: &Path) -> Result<Vec<OsString>, CliError> {
    let ini = ini::Ini::load_from_file(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let Some(pos) = argv.iter().position(|a| COMMANDS.contains(&a.to_string_lossy().as_ref())) else {
        return Ok(argv);
    };
    let command = argv[pos].to_string_lossy().into_owned();
    let mut extra: Vec<OsString> = Vec::new();
    for section in ["general", command.as_str()] {
        if let Some(props) = ini.section(Some(section)) {
            for (key, value) in props.iter() {
                if key == "config" {
                    continue;
                }
                extra.push(format!("--{}", key.trim().replace('_', "-")).into());
                extra.push(value.trim().into());
            }
        }
    }
    if let Some(props) = ini.section(None::<String>) {
        if props.iter().next().is_some() {
            return Err(CliError::Config("keys must sit under a [section] header".into()));
        }
    }
    let mut out = argv[..=pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&argv[pos + 1..]);
    Ok(out)
}

fn count_problem(errors: &mut Vec<String>, name: &str, v: usize) {
    if v == 0 {
        errors.push(format!("--{name} must be at least 1"));
    }
}

fn positive(errors: &mut Vec<String>, name: &str, v: f64) {
    if !(v > 0.0) || !v.is_finite() {
        errors.push(format!("--{name} must be positive, got {v}"));
    }
}

fn finite(errors: &mut Vec<String>, name: &str, v: f64) {
    if !v.is_finite() {
        errors.push(format!("--{name} must be finite, got {v}"));
    }
}

fn lookup(errors: &mut Vec<String>, name: Option<String>) -> Option<Material> {
    match name {
        None => {
            errors.push("--material is required".into());
            None
        }
        Some(n) => match material(&n) {
            Ok(m) => Some(m),
            Err(e) => {
                errors.push(format!("--material: {e}"));
                None
            }
        },
    }
}

fn particle_mass(errors: &mut Vec<String>, spec: Option<String>) -> f64 {
    let spec = spec.unwrap_or_else(|| "neutron".into());
    match spec.to_ascii_lowercase().as_str() {
        "neutron" => NEUTRON_MASS_KG,
        "electron" => crate::units::ELECTRON_MASS_KG,
        other => match other.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => v,
            _ => {
                errors.push(format!("--particle must be neutron, electron or a mass in kg, got `{spec}`"));
                f64::NAN
            }
        },
    }
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let mut errors = Vec::new();
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol < 1.0) {
        errors.push(format!("--tol must lie in (0, 1), got {tol}"));
    }
    let points = cli.points.unwrap_or(DEFAULT_POINTS);
    if points < 50 {
        errors.push(format!("--points must be at least 50, got {points}"));
    }

    let command = match cli.command {
        Commands::Potential(p) => {
            let k1 = p.k1.unwrap_or(DielectricConstant::Finite(1.0));
            let k3 = p.k3.unwrap_or(DielectricConstant::Finite(1.0));
            let k2 = p.k2.unwrap_or(1.0);
            let (a, b) = (p.a.unwrap_or(0.0), p.b.unwrap_or(1.0));
            let q = p.q.unwrap_or(-1.0);
            finite(&mut errors, "q", q);
            let z0 = match p.z0 {
                Some(z) => {
                    errors.extend(z.problems("z0", true));
                    for v in [z.start, z.stop] {
                        if !(v > a && v < b) {
                            errors.push(format!("--z0 value {v} must lie strictly between a = {a} and b = {b}"));
                        }
                    }
                    z
                }
                None => {
                    errors.push("--z0 is required".into());
                    Sweep::single(0.5 * (a + b))
                }
            };
            let stack = DielectricConstant::finite(k2)
                .and_then(|k2| DielectricStack::new(k1, k2, k3, a, b))
                .map_err(|e| errors.push(e.to_string()))
                .ok();
            stack.map(|stack| Command::Potential { stack, z0, q, method: p.method.unwrap_or(Method::Series) })
        }
        Commands::Eigen(e) => {
            let domain = e.domain.unwrap_or(Domain::Interval);
            let width = e.width.unwrap_or(1.0);
            let eps_host = e.eps_host.unwrap_or(1.0);
            let mass = e.mass.unwrap_or(1.0);
            let charge = e.charge.unwrap_or(-1.0);
            let states = e.states.unwrap_or(3);
            if domain == Domain::Interval {
                positive(&mut errors, "width", width);
            }
            positive(&mut errors, "eps-host", eps_host);
            positive(&mut errors, "mass", mass);
            finite(&mut errors, "charge", charge);
            count_problem(&mut errors, "states", states);
            Some(Command::Eigen {
                domain,
                width,
                eps_host,
                wall: e.wall.unwrap_or(DielectricConstant::Metal),
                charge,
                mass,
                states,
            })
        }
        Commands::Schottky(s) => {
            let material = lookup(&mut errors, s.material);
            let carrier = s.carrier.unwrap_or(Carrier::Electron);
            let states = s.states.unwrap_or(1);
            count_problem(&mut errors, "states", states);
            let gaps = s.gap.unwrap_or_else(|| {
                errors.push("--gap is required".into());
                Sweep::single(1.0)
            });
            errors.extend(gaps.problems("gap", true));
            if let Some(m) = &material {
                if let Err(e) = m.carrier_mass(carrier) {
                    errors.push(format!("--carrier: {e}"));
                }
                if m.eps.is_metal() {
                    errors.push(format!("--material: {} is not a semiconductor", m.name));
                }
            }
            material.map(|material| Command::Schottky { material, carrier, gaps, states })
        }
        Commands::Film(f) => {
            let material = lookup(&mut errors, f.material);
            let states = f.states.unwrap_or(1);
            count_problem(&mut errors, "states", states);
            let layers = f.layers.unwrap_or_else(|| {
                errors.push("--layers is required".into());
                LayerRange { first: 0, last: 0, step: 1 }
            });
            if let Some(m) = &material {
                if m.layer_thickness.is_none() {
                    errors.push(format!("--material: {} has no layer thickness", m.name));
                }
            }
            material.map(|material| Command::Film { material, layers, states })
        }
        Commands::Plates(p) => {
            let states = p.states.unwrap_or(2);
            let charge = p.charge.unwrap_or(-1.0);
            let mass = p.mass.unwrap_or(1.0);
            count_problem(&mut errors, "states", states);
            finite(&mut errors, "charge", charge);
            positive(&mut errors, "mass", mass);
            let gaps = p.gap.unwrap_or_else(|| {
                errors.push("--gap is required".into());
                Sweep::single(1.0)
            });
            errors.extend(gaps.problems("gap", false));
            Some(Command::Plates { gaps, states, charge, mass })
        }
        Commands::Levitate(l) => {
            let model = l.model.unwrap_or(LevitationModel::Plates);
            let gaps = l.gap.unwrap_or_else(|| {
                errors.push("--gap is required".into());
                Sweep::single(1.0)
            });
            errors.extend(gaps.problems("gap", false));
            let hamaker = l.hamaker.unwrap_or(DEFAULT_HAMAKER_J);
            let n = l.n.unwrap_or(1);
            if n == 0 {
                errors.push("--n must be at least 1".into());
            }
            let particle_kg = particle_mass(&mut errors, l.particle);
            let (electrons, area) = if model == LevitationModel::Plates {
                if l.electrons.is_none() {
                    errors.push("--electrons is required (there is no default electron count)".into());
                }
                match l.area {
                    None => errors.push("--area is required (m²)".into()),
                    Some(a) => positive(&mut errors, "area", a),
                }
                if !(hamaker >= 0.0) {
                    errors.push(format!("--hamaker must be non-negative, got {hamaker}"));
                }
                (l.electrons.unwrap_or(0), l.area.unwrap_or(f64::NAN))
            } else {
                (l.electrons.unwrap_or(0), l.area.unwrap_or(f64::NAN))
            };
            Some(Command::Levitate { model, gaps, electrons, area, hamaker, state: l.state.unwrap_or(0), particle_kg, n })
        }
    };

    match command {
        Some(command) if errors.is_empty() => Ok(RunConfig {
            command,
            format: cli.format.unwrap_or(Format::Csv),
            out: cli.out,
            tol,
            points,
        }),
        _ => Err(CliError::Invalid(errors)),
    }
}
