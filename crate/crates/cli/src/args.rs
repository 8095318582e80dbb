//! Command-line grammar.

use std::path::PathBuf;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use microcavity::fieldgrid::{GridSpec, DEFAULT_HALF_WIDTH, DEFAULT_SAMPLES};
use microcavity::sweep::{NRange, DEFAULT_N_STEP};
use microcavity::GridSpec64;

#[derive(Debug, Parser)]
#[command(name = "microcavity", version, about = "Resonances of circular dielectric billiards and microcavities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-billiard eigenvalues or open-cavity resonances.
    Modes(ModesArgs),
    /// Lamb shift between the closed and open spectra.
    Lamb(PointArgs),
    /// Barrier bounds and trapping class of resonances.
    Classify(PointArgs),
    /// Sweep over angular order at fixed refractive index.
    SweepM(SweepMArgs),
    /// Sweep over refractive index with continuation along each radial family.
    SweepN(SweepNArgs),
    /// Refractive index where the Lamb shift of a branch peaks.
    Threshold(ThresholdArgs),
    /// Intensity image of a mode.
    Field(FieldArgs),
    /// Boundary phase-space map of a mode.
    Husimi(HusimiArgs),
    /// Invariant residuals of the special-function kernel.
    #[command(hide = true)]
    SpecfunCheck(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Angular orders, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<u32>,
    /// Radial orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub ell: Vec<u32>,
    /// Refractive index.
    #[arg(long, default_value_t = 3.3)]
    pub n: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("spectrum").required(true).args(["closed", "open"])))]
pub struct ModesArgs {
    /// Dirichlet billiard eigenvalues.
    #[arg(long)]
    pub closed: bool,
    /// Complex resonances of the open cavity.
    #[arg(long)]
    pub open: bool,
    #[command(flatten)]
    pub point: PointArgs,
}

#[derive(Debug, Args)]
pub struct SweepMArgs {
    /// Angular order range LO:HI, inclusive.
    #[arg(long, value_parser = parse_m_range, default_value = "2:10")]
    pub m_range: (u32, u32),
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub ell: Vec<u32>,
    #[arg(long, default_value_t = 3.3)]
    pub n: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepNArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub ell: Vec<u32>,
    /// Refractive index range LO:HI[:STEP], inclusive.
    #[arg(long, value_parser = parse_n_range, default_value = "3.3:6")]
    pub n_range: NRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value_t = 4)]
    pub m: u32,
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    pub ell: Vec<u32>,
    #[arg(long, value_parser = parse_n_range, default_value = "3.3:6")]
    pub n_range: NRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldKind {
    /// Billiard normal mode.
    Closed,
    /// Interior part of the resonance.
    Interior,
    /// Exterior tail of the resonance.
    Tail,
    /// Interior and tail together.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    Pgm,
    Csv,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value_t = 1)]
    pub ell: u32,
    #[arg(long, default_value_t = 3.3)]
    pub n: f64,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    #[arg(long, value_enum, default_value_t = FieldKind::Full)]
    pub kind: FieldKind,
    /// Window half-width and samples per axis, HW:N.
    #[arg(long, value_parser = parse_grid, default_value_t = default_grid())]
    pub grid: GridArg,
    /// PGM bits per sample.
    #[arg(long, default_value_t = 16, value_parser = PossibleValuesParser::new(["8", "16"]).map(|s| s.parse::<u32>().expect("listed value")))]
    pub depth: u32,
    #[arg(long, value_enum, default_value_t = ImageFormat::Pgm)]
    pub format: ImageFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HusimiArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Grid size NS:NP over arc length and momentum.
    #[arg(long, value_parser = parse_resolution, default_value = "256:256")]
    pub resolution: (usize, usize),
    /// Matrix CSV; the header goes to the same path with `.hdr` appended.
    #[arg(long)]
    pub out: PathBuf,
}

/// Parsed `--grid` value that remembers its spelling for help output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg(pub GridSpec64);

impl std::fmt::Display for GridArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.0.half_width(), self.0.samples())
    }
}

fn default_grid() -> GridArg {
    GridArg(GridSpec::new(DEFAULT_HALF_WIDTH, DEFAULT_SAMPLES).expect("valid default grid"))
}

fn fields<const N: usize>(s: &str, what: &str) -> Result<[String; N], String> {
    let parts: Vec<String> = s.split(':').map(str::to_string).collect();
    parts.try_into().map_err(|_| format!("expected {what}"))
}

fn number<T: std::str::FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.trim().parse().map_err(|e| format!("'{s}': {e}"))
}

pub fn parse_n_range(s: &str) -> Result<NRange, String> {
    let (lo, hi, step) = match s.split(':').count() {
        2 => {
            let [lo, hi] = fields::<2>(s, "LO:HI[:STEP]")?;
            (lo, hi, DEFAULT_N_STEP.to_string())
        }
        _ => {
            let [lo, hi, step] = fields::<3>(s, "LO:HI[:STEP]")?;
            (lo, hi, step)
        }
    };
    NRange::new(number(&lo)?, number(&hi)?, number(&step)?).map_err(|e| e.to_string())
}

pub fn parse_m_range(s: &str) -> Result<(u32, u32), String> {
    let [lo, hi] = fields::<2>(s, "LO:HI")?;
    Ok((number(&lo)?, number(&hi)?))
}

pub fn parse_grid(s: &str) -> Result<GridArg, String> {
    let [hw, n] = fields::<2>(s, "HW:N")?;
    GridSpec::new(number(&hw)?, number(&n)?).map(GridArg).map_err(|e| e.to_string())
}

pub fn parse_resolution(s: &str) -> Result<(usize, usize), String> {
    let [ns, np] = fields::<2>(s, "NS:NP")?;
    let res: (usize, usize) = (number(&ns)?, number(&np)?);
    if res.0 < 1 || res.1 < 2 {
        return Err(format!("resolution {s} needs NS >= 1 and NP >= 2"));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use microcavity::husimi::DEFAULT_RESOLUTION;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn n_range_step_defaults() {
        let r = parse_n_range("3.3:6").unwrap();
        assert_eq!(r.step, DEFAULT_N_STEP);
        assert_eq!(parse_n_range("3.3:6:0.05").unwrap().step, 0.05);
        assert!(parse_n_range("0.5:6").is_err());
        assert!(parse_n_range("3.3").is_err());
        assert!(parse_n_range("3.3:6:0").is_err());
    }

    #[test]
    fn grid_and_resolution() {
        assert_eq!(parse_grid("1.5:64").unwrap().0.samples(), 64);
        assert!(parse_grid("0.9:64").is_err());
        assert_eq!(parse_resolution("64:129").unwrap(), (64, 129));
        assert!(parse_resolution("64:1").is_err());
        assert_eq!(parse_m_range("2:10").unwrap(), (2, 10));
        assert_eq!(parse_resolution("256:256").unwrap(), DEFAULT_RESOLUTION);
    }

    #[test]
    fn modes_needs_a_spectrum() {
        assert!(Cli::try_parse_from(["microcavity", "modes", "--m", "2"]).is_err());
        assert!(Cli::try_parse_from(["microcavity", "modes", "--m", "2", "--closed", "--open"]).is_err());
        assert!(Cli::try_parse_from(["microcavity", "modes", "--m", "2,3", "--open"]).is_ok());
    }
}
