//! Subcommand implementations. Each returns the number of failed rows.

use microcavity::analysis::{classify_resonance, lamb_shift_of};
use microcavity::billiard::{billiard_eigenvalue, normal_mode_field};
use microcavity::cavity::find_resonance;
use microcavity::fieldgrid::{sample_radial_mode, write_csv, write_pgm, Depth, ProfileKind};
use microcavity::format::c_exp;
use microcavity::husimi::{boundary_husimi, BoundaryTrace};
use microcavity::mode::ModeIndex;
use microcavity::specfun::diagnostics::invariant_residuals;
use microcavity::sweep::{find_threshold, revalidate, run_sweep_m, run_sweep_n, SweepRow};
use microcavity::table::{emit_csv, emit_json, PRECISION};
use microcavity::{Error, Resonance64};

use crate::args::{
    Command, FieldArgs, FieldKind, HusimiArgs, ImageFormat, ModesArgs, OutputArgs, PointArgs, SweepMArgs, SweepNArgs,
    TableFormat, ThresholdArgs,
};
use crate::output::{write_atomic, write_output, Cell, Table};
use crate::CliError;

/// Residual bound of the special-function invariants.
const SPECFUN_TOLERANCE: f64 = 1e-10;

pub fn run(command: Command) -> Result<usize, CliError> {
    match command {
        Command::Modes(a) => modes(&a),
        Command::Lamb(a) => emit_table(&lamb(&a), &a.output),
        Command::Classify(a) => emit_table(&classify(&a), &a.output),
        Command::SweepM(a) => sweep_m(&a),
        Command::SweepN(a) => sweep_n(&a),
        Command::Threshold(a) => emit_table(&threshold(&a), &a.output),
        Command::Field(a) => field(&a),
        Command::Husimi(a) => husimi(&a),
        Command::SpecfunCheck(a) => emit_table(&specfun_check(), &a),
    }
}

fn emit_table(table: &Table, output: &OutputArgs) -> Result<usize, CliError> {
    let bytes = match output.format {
        TableFormat::Csv => table.to_csv(),
        TableFormat::Json => table.to_json(),
    };
    write_output(output.out.as_deref(), &bytes)?;
    Ok(table.error_count())
}

fn emit_rows(mut rows: Vec<SweepRow>, output: &OutputArgs) -> Result<usize, CliError> {
    let errors = revalidate(&mut rows);
    let bytes = match output.format {
        TableFormat::Csv => emit_csv(&rows),
        TableFormat::Json => emit_json(&rows),
    };
    write_output(output.out.as_deref(), &bytes)?;
    Ok(errors)
}

/// Every `(m, ell)` pair of the request, `m` outermost.
fn pairs(a: &PointArgs) -> Vec<(u32, u32)> {
    a.m.iter().flat_map(|&m| a.ell.iter().map(move |&ell| (m, ell))).collect()
}

fn resonance(m: u32, ell: u32, n: f64) -> Result<Resonance64, Error> {
    find_resonance(ModeIndex::new(m, ell)?, n, None)
}

/// Appends an error row: the leading key cells, NaN elsewhere, then the message.
fn failed_row(key: Vec<Cell>, width: usize, e: &Error) -> Vec<Cell> {
    let mut row = key;
    row.resize(width - 1, Cell::Float(f64::NAN));
    row.push(Cell::Text(e.to_string()));
    row
}

fn modes(a: &ModesArgs) -> Result<usize, CliError> {
    let p = &a.point;
    let table = if a.closed {
        let mut t = Table::new(&["m", "ell", "n", "kR", "error"]);
        for (m, ell) in pairs(p) {
            let key = vec![m.into(), ell.into(), p.n.into()];
            let row = ModeIndex::new(m, ell).and_then(|mode| billiard_eigenvalue(mode, p.n));
            t.push(match row {
                Ok(ev) => vec![m.into(), ell.into(), p.n.into(), ev.kr.into(), Cell::Empty],
                Err(e) => failed_row(key, 5, &e),
            });
        }
        t
    } else {
        let mut t = Table::new(&["m", "ell", "n", "kR_re", "kR_im", "residual", "error"]);
        for (m, ell) in pairs(p) {
            let key = vec![m.into(), ell.into(), p.n.into()];
            t.push(match resonance(m, ell, p.n) {
                Ok(r) => vec![
                    m.into(),
                    ell.into(),
                    p.n.into(),
                    r.kr.re.into(),
                    r.kr.im.into(),
                    r.residual.into(),
                    Cell::Empty,
                ],
                Err(e) => failed_row(key, 7, &e),
            });
        }
        t
    };
    emit_table(&table, &p.output)
}

fn lamb(a: &PointArgs) -> Table {
    let mut t = Table::new(&["m", "ell", "n", "closed_kR", "open_kR_re", "open_kR_im", "L", "error"]);
    for (m, ell) in pairs(a) {
        let key = vec![m.into(), ell.into(), a.n.into()];
        let row = resonance(m, ell, a.n).and_then(|r| Ok((lamb_shift_of(&r)?, r.kr.im)));
        t.push(match row {
            Ok((rec, im)) => vec![
                m.into(),
                ell.into(),
                a.n.into(),
                rec.closed_kr.into(),
                rec.open_kr_re.into(),
                im.into(),
                rec.shift.into(),
                Cell::Empty,
            ],
            Err(e) => failed_row(key, 8, &e),
        });
    }
    t
}

fn classify(a: &PointArgs) -> Table {
    let mut t = Table::new(&["m", "ell", "n", "open_kR_re", "open_kR_im", "k_T", "k_B", "v_bottom", "class", "error"]);
    for (m, ell) in pairs(a) {
        let key = vec![m.into(), ell.into(), a.n.into()];
        let row = resonance(m, ell, a.n).and_then(|r| Ok((classify_resonance(&r)?, r.kr)));
        t.push(match row {
            Ok((b, kr)) => vec![
                m.into(),
                ell.into(),
                a.n.into(),
                kr.re.into(),
                kr.im.into(),
                b.k_t.into(),
                b.k_b.into(),
                b.v_bottom.into(),
                Cell::Text(b.class.as_str().into()),
                Cell::Empty,
            ],
            Err(e) => {
                let mut row = failed_row(key, 10, &e);
                row[8] = Cell::Empty;
                row
            }
        });
    }
    t
}

fn sweep_m(a: &SweepMArgs) -> Result<usize, CliError> {
    let (lo, hi) = a.m_range;
    let mut rows = Vec::new();
    let mut ells = a.ell.clone();
    ells.sort_unstable();
    ells.dedup();
    for ell in ells {
        rows.extend(run_sweep_m(ell, lo, hi, a.n)?);
    }
    emit_rows(rows, &a.output)
}

fn sweep_n(a: &SweepNArgs) -> Result<usize, CliError> {
    emit_rows(run_sweep_n(a.m, &a.ell, &a.n_range)?, &a.output)
}

fn threshold(a: &ThresholdArgs) -> Table {
    let mut t = Table::new(&["m", "ell", "T", "crossing_n", "error"]);
    let mut ells = a.ell.clone();
    ells.sort_unstable();
    ells.dedup();
    for ell in ells {
        let key = vec![a.m.into(), ell.into()];
        t.push(match ModeIndex::new(a.m, ell).and_then(|mode| find_threshold(mode, &a.n_range)) {
            Ok(th) => vec![a.m.into(), ell.into(), th.n.into(), th.crossing_n.unwrap_or(f64::NAN).into(), Cell::Empty],
            Err(e) => failed_row(key, 5, &e),
        });
    }
    t
}

fn field(a: &FieldArgs) -> Result<usize, CliError> {
    let mode = ModeIndex::new(a.mode.m, a.mode.ell)?;
    let spec = a.grid.0;
    let grid = match a.kind {
        FieldKind::Closed => normal_mode_field(mode, a.mode.n, &spec)?,
        kind => {
            let kind = match kind {
                FieldKind::Interior => ProfileKind::InteriorJ,
                FieldKind::Tail => ProfileKind::TailH,
                _ => ProfileKind::Full,
            };
            let res = find_resonance(mode, a.mode.n, None)?;
            sample_radial_mode(kind, mode, a.mode.n, res.kr, &spec)?
        }
    };
    let bytes = match a.format {
        ImageFormat::Pgm => write_pgm(&grid, Depth::try_from(a.depth)?),
        ImageFormat::Csv => write_csv(&grid).into_bytes(),
    };
    write_output(a.out.as_deref(), &bytes)?;
    Ok(0)
}

fn husimi(a: &HusimiArgs) -> Result<usize, CliError> {
    let (m, n) = (a.mode.m, a.mode.n);
    let res = resonance(m, a.mode.ell, n)?;
    let (ns, np) = a.resolution;
    let trace = BoundaryTrace::of_mode(m, n, res.kr, BoundaryTrace::<f64>::default_samples(m, ns))?;
    let map = boundary_husimi(&trace, n, res.kr.re, a.resolution)?;
    let f = |v: f64| c_exp(v, PRECISION);
    let header = [
        ("m", m.to_string()),
        ("ell", a.mode.ell.to_string()),
        ("n", f(n)),
        ("kR_re", f(res.kr.re)),
        ("kR_im", f(res.kr.im)),
        ("ns", ns.to_string()),
        ("np", np.to_string()),
        ("s_min", f(map.s_grid[0])),
        ("s_max", f(map.s_grid[ns - 1])),
        ("p_min", f(map.p_grid[0])),
        ("p_max", f(map.p_grid[np - 1])),
        ("rows", "p_ascending".to_string()),
        ("p_crit", f(map.p_crit)),
        ("peak_p", f(map.peak_p())),
    ];
    let header: String = header.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
    let mut sidecar = a.out.clone().into_os_string();
    sidecar.push(".hdr");
    write_atomic(&a.out, map.to_csv().as_bytes())?;
    write_atomic(sidecar.as_ref(), header.as_bytes())?;
    Ok(0)
}

fn specfun_check() -> Table {
    let mut t = Table::new(&["m", "z_re", "z_im", "wronskian", "recurrence", "conjugate", "error"]);
    for r in invariant_residuals() {
        let worst = r.wronskian.max(r.recurrence).max(r.conjugate);
        let error = (worst.is_nan() || worst >= SPECFUN_TOLERANCE)
            .then(|| format!("residual {worst:e} exceeds {SPECFUN_TOLERANCE:e}"));
        t.push(vec![
            r.m.into(),
            r.z.re.into(),
            r.z.im.into(),
            r.wronskian.into(),
            r.recurrence.into(),
            r.conjugate.into(),
            error.into(),
        ]);
    }
    t
}
