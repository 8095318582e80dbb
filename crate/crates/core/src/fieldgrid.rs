//! Square-window intensity grids and their PGM / CSV serialization.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::c_exp;
use crate::mode::ModeIndex;
use crate::scalar::Real;
use crate::specfun;

pub const DEFAULT_HALF_WIDTH: f64 = 1.5;
pub const DEFAULT_SAMPLES: usize = 512;

/// Sampling window `[-half_width, half_width]²` with `samples` points per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    half_width: T,
    samples: usize,
}

impl<T: Real> GridSpec<T> {
    /// `half_width` must exceed the unit radius; at least two samples per axis.
    pub fn new(half_width: T, samples: usize) -> Result<Self> {
        if !half_width.is_finite() || half_width <= T::one() {
            return Err(Error::DegenerateGrid(format!("half width {half_width} must exceed the cavity radius 1")));
        }
        if samples < 2 {
            return Err(Error::DegenerateGrid(format!("{samples} samples per axis, need at least 2")));
        }
        Ok(Self { half_width, samples })
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Coordinate of sample `i`, exactly antisymmetric about the center.
    pub fn coordinate(&self, i: usize) -> T {
        let last = self.samples as i64 - 1;
        self.half_width * T::int(2 * i as i64 - last) / T::int(last)
    }
}

impl<T: Real> Default for GridSpec<T> {
    fn default() -> Self {
        Self { half_width: T::lit(DEFAULT_HALF_WIDTH), samples: DEFAULT_SAMPLES }
    }
}

/// Row-major intensity samples; row 0 is the top edge (`y = +half_width`),
/// column 0 the left edge (`x = -half_width`).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid<T> {
    pub spec: GridSpec<T>,
    pub values: Vec<T>,
    /// Free-form description of what was sampled.
    pub label: String,
}

impl<T: Real> FieldGrid<T> {
    pub fn width(&self) -> usize {
        self.spec.samples
    }

    pub fn height(&self) -> usize {
        self.spec.samples
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.values[row * self.spec.samples + col]
    }

    /// `(x, y)` of pixel `(row, col)`.
    pub fn position(&self, row: usize, col: usize) -> (T, T) {
        let last = self.spec.samples - 1;
        (self.spec.coordinate(col), self.spec.coordinate(last - row))
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::zero(), T::max)
    }

    /// Divides by the maximum; a grid of zeros is left unchanged.
    pub fn normalize(&mut self) {
        let peak = self.max();
        if peak > T::zero() {
            for v in &mut self.values {
                *v = *v / peak;
            }
        }
    }

    pub(crate) fn scale(&mut self, factor: T) {
        for v in &mut self.values {
            *v = *v * factor;
        }
    }
}

/// Which piece of a mode is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// `|J_m(n kR r)|²` inside the unit disk, zero outside.
    InteriorJ,
    /// `|B H_m^(1)(kR r)|²` outside the unit disk, zero inside.
    TailH,
    /// Interior and tail together.
    Full,
}

/// Radial intensity with the interior amplitude fixed to 1 and the tail
/// amplitude `B = J_m(n kR) / H_m^(1)(kR)` set by continuity at `r = 1`.
#[derive(Debug, Clone, Copy)]
pub struct RadialProfile<T> {
    pub kind: ProfileKind,
    pub m: u32,
    pub n: T,
    pub kr: Complex<T>,
    tail_amplitude: Complex<T>,
}

impl<T: Real> RadialProfile<T> {
    pub fn new(kind: ProfileKind, m: u32, n: T, kr: Complex<T>) -> Result<Self> {
        let tail_amplitude = if kind == ProfileKind::InteriorJ {
            Complex::new(T::zero(), T::zero())
        } else {
            let j = specfun::bessel_j(m, kr * n)?;
            let h = specfun::hankel1(m, kr)?;
            j / h
        };
        Ok(Self { kind, m, n, kr, tail_amplitude })
    }

    /// Intensity at squared radius `r2`. Interior is `r2 < 1`, tail `r2 >= 1`.
    pub fn intensity_r2(&self, r2: T) -> Result<T> {
        let inside = r2 < T::one();
        let r = r2.sqrt();
        match (self.kind, inside) {
            (ProfileKind::InteriorJ | ProfileKind::Full, true) => {
                Ok(specfun::bessel_j(self.m, self.kr * (self.n * r))?.norm_sqr())
            }
            (ProfileKind::TailH | ProfileKind::Full, false) => {
                Ok((self.tail_amplitude * specfun::hankel1(self.m, self.kr * r)?).norm_sqr())
            }
            _ => Ok(T::zero()),
        }
    }

    pub fn intensity(&self, r: T) -> Result<T> {
        self.intensity_r2(r * r)
    }
}

/// Samples a radial profile on the grid without normalizing.
///
/// The intensity of a single traveling mode `e^{imφ}` depends on `r` only, so
/// values are computed once per octant-equivalent pixel and mirrored.
pub(crate) fn sample_profile<T: Real>(profile: &RadialProfile<T>, spec: &GridSpec<T>) -> Result<Vec<T>> {
    let n = spec.samples;
    let last = n as i64 - 1;
    // |2i - last| takes `half` distinct values
    let half = n.div_ceil(2);
    let offset = |k: usize| (last - 2 * k as i64).unsigned_abs() as usize;
    let coord = |a: usize| spec.half_width * T::int(a as i64) / T::int(last);

    let table: Vec<Vec<T>> = (0..half)
        .into_par_iter()
        .map(|p| {
            (0..=p)
                .map(|q| {
                    let (x, y) = (coord(offset(p)), coord(offset(q)));
                    profile.intensity_r2(x * x + y * y)
                })
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<_>>()?;

    let fold = |i: usize| if i < half { i } else { n - 1 - i };
    let mut values = Vec::with_capacity(n * n);
    for row in 0..n {
        for col in 0..n {
            // smaller |offset| means larger table index
            let (a, b) = (fold(row), fold(col));
            let (p, q) = if a >= b { (a, b) } else { (b, a) };
            values.push(table[p][q]);
        }
    }
    Ok(values)
}

/// Samples one piece of a mode over the window, normalized to peak 1.
pub fn sample_radial_mode<T: Real>(
    kind: ProfileKind,
    mode: ModeIndex,
    n: T,
    kr: Complex<T>,
    spec: &GridSpec<T>,
) -> Result<FieldGrid<T>> {
    let profile = RadialProfile::new(kind, mode.m, n, kr)?;
    let mut grid = FieldGrid {
        spec: *spec,
        values: sample_profile(&profile, spec)?,
        label: format!("{kind:?} {mode} n={n} kR={kr}"),
    };
    grid.normalize();
    Ok(grid)
}

/// PGM sample depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Eight,
    Sixteen,
}

impl Depth {
    pub fn maxval(self) -> u16 {
        match self {
            Depth::Eight => 255,
            Depth::Sixteen => 65535,
        }
    }
}

impl TryFrom<u32> for Depth {
    type Error = Error;

    fn try_from(bits: u32) -> Result<Self> {
        match bits {
            8 => Ok(Depth::Eight),
            16 => Ok(Depth::Sixteen),
            other => Err(Error::DegenerateGrid(format!("unsupported PGM depth {other}"))),
        }
    }
}

/// Quantizes a normalized intensity; values are clamped to `[0, 1]`.
pub fn quantize<T: Real>(v: T, depth: Depth) -> u16 {
    let maxval = f64::from(depth.maxval());
    let x = v.as_f64().clamp(0.0, 1.0);
    (x * maxval).round() as u16
}

/// Binary graymap (`P5`), big-endian samples.
pub fn write_pgm<T: Real>(grid: &FieldGrid<T>, depth: Depth) -> Vec<u8> {
    let header = format!("P5\n{} {}\n{}\n", grid.width(), grid.height(), depth.maxval());
    let bytes_per = if depth == Depth::Eight { 1 } else { 2 };
    let mut out = Vec::with_capacity(header.len() + grid.values.len() * bytes_per);
    out.extend_from_slice(header.as_bytes());
    for &v in &grid.values {
        let q = quantize(v, depth);
        match depth {
            Depth::Eight => out.push(q as u8),
            Depth::Sixteen => out.extend_from_slice(&q.to_be_bytes()),
        }
    }
    out
}

/// Decoded `P5` image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graymap {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

/// Reads the binary graymaps produced by [`write_pgm`] (no comment lines).
pub fn read_pgm(bytes: &[u8]) -> Result<Graymap> {
    let bad = |what: &str| Error::DegenerateGrid(format!("malformed PGM: {what}"));
    let mut fields = Vec::with_capacity(4);
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("header encoding"))?);
    }
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    if fields[0] != "P5" {
        return Err(bad("magic"));
    }
    let parse = |s: &str| s.parse::<usize>().map_err(|_| bad("header number"));
    let (width, height, maxval) = (parse(fields[1])?, parse(fields[2])?, parse(fields[3])?);
    if maxval == 0 || maxval > 65535 {
        return Err(bad("maxval"));
    }
    let raster = bytes.get(pos..).ok_or_else(|| bad("missing raster"))?;
    let samples: Vec<u16> = if maxval < 256 {
        raster.iter().map(|&b| u16::from(b)).collect()
    } else {
        raster.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
    };
    if samples.len() != width * height {
        return Err(bad("raster size"));
    }
    Ok(Graymap { width, height, maxval: maxval as u16, samples })
}

/// Comma-separated matrix, one grid row per line, `%.9e` values.
pub fn write_csv<T: Real>(grid: &FieldGrid<T>) -> String {
    let mut out = String::new();
    for row in grid.values.chunks(grid.width()) {
        let line: Vec<String> = row.iter().map(|v| c_exp(v.as_f64(), 9)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
