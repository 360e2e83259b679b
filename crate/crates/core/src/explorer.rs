//! Parameter scans over the additive family, the sink/wall duality
//! comparator, and CSV reporting.

use std::io::{self, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::additive::{AdditiveParams, CaseTag};
use crate::nim::{Convention, SubtractionSet};
use crate::period::{detect_period, minimal_rotation_equivalent, HorizonExhausted, PeriodInfo};

/// Search horizon for sets without a formula-backed estimate. The sharp
/// bound ρ^max S is astronomically loose; this empirical ceiling has never
/// been hit by the scans shipped here.
pub const DEFAULT_HORIZON: usize = 1_000_000;

/// One scanned parameter point. `matched` is the reproduction check: the
/// detected sink sequence is purely periodic with exactly the formula period.
/// The duality columns are recorded evidence, never asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub m: usize,
    pub delta: usize,
    pub d: usize,
    pub case: CaseTag,
    pub formula_period: usize,
    pub preperiod: usize,
    pub period: usize,
    pub matched: bool,
    pub wall_period: usize,
    pub rotation_dual: bool,
}

/// Detection horizon for an additive set: generous multiple of the formula
/// period, with a floor for the wall side where no formula is known.
fn additive_horizon(params: &AdditiveParams) -> usize {
    (8 * params.period()).max(DEFAULT_HORIZON)
}

pub fn scan_row(m: usize, delta: usize) -> Result<ScanRow, HorizonExhausted> {
    let params = AdditiveParams::new(m, delta);
    let formula_period = params.period();
    let set = params.set();
    let horizon = additive_horizon(&params);
    let sink = detect_period(&set, Convention::Sink, horizon)?;
    let wall = detect_period(&set, Convention::Wall, horizon)?;
    Ok(ScanRow {
        m,
        delta,
        d: params.d(),
        case: params.case(),
        formula_period,
        preperiod: sink.preperiod,
        period: sink.period,
        matched: sink.preperiod == 0 && sink.period == formula_period,
        wall_period: wall.period,
        rotation_dual: minimal_rotation_equivalent(&sink.period_word, &wall.period_word),
    })
}

/// All rows for 1 ≤ m ≤ m_max, 1 ≤ δ ≤ delta_max in lexicographic order.
/// The parallel path distributes rows over a thread pool and merges by
/// input order, so output is identical either way.
pub fn scan_rows(
    m_max: usize,
    delta_max: usize,
    parallel: bool,
) -> Result<Vec<ScanRow>, HorizonExhausted> {
    let cells: Vec<(usize, usize)> = (1..=m_max)
        .flat_map(|m| (1..=delta_max).map(move |delta| (m, delta)))
        .collect();
    if parallel {
        cells
            .par_iter()
            .map(|&(m, delta)| scan_row(m, delta))
            .collect()
    } else {
        cells.iter().map(|&(m, delta)| scan_row(m, delta)).collect()
    }
}

pub const CSV_HEADER: &str =
    "m,delta,d,case,formula_period,preperiod,period,match,wall_period,rotation_dual";

pub fn write_csv<W: Write>(rows: &[ScanRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.m,
            r.delta,
            r.d,
            r.case,
            r.formula_period,
            r.preperiod,
            r.period,
            r.matched,
            r.wall_period,
            r.rotation_dual
        )?;
    }
    Ok(())
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Horizon(#[from] HorizonExhausted),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Scan and write the CSV report; returns the rows for summarizing.
pub fn scan_additive<W: Write>(
    m_max: usize,
    delta_max: usize,
    parallel: bool,
    out: W,
) -> Result<Vec<ScanRow>, ScanError> {
    let rows = scan_rows(m_max, delta_max, parallel)?;
    write_csv(&rows, out)?;
    Ok(rows)
}

/// Sink and wall periods of one set side by side, with the two conjectured
/// duality readings: equal period length, and period words equal up to
/// rotation. Reported, never asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub sink: PeriodInfo,
    pub wall: PeriodInfo,
    pub same_length: bool,
    pub rotation_dual: bool,
}

pub fn duality_report(
    set: &SubtractionSet,
    horizon: usize,
) -> Result<DualityReport, HorizonExhausted> {
    let sink = detect_period(set, Convention::Sink, horizon)?;
    let wall = detect_period(set, Convention::Wall, horizon)?;
    Ok(DualityReport {
        same_length: sink.period == wall.period,
        rotation_dual: minimal_rotation_equivalent(&sink.period_word, &wall.period_word),
        sink,
        wall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_contains_worked_rows() {
        let rows = scan_rows(6, 12, false).unwrap();
        let row59 = rows.iter().find(|r| r.m == 5 && r.delta == 9).unwrap();
        assert_eq!(row59.formula_period, 160);
        assert_eq!((row59.preperiod, row59.period), (0, 160));
        assert!(row59.matched);
        let row68 = rows.iter().find(|r| r.m == 6 && r.delta == 8).unwrap();
        assert_eq!(row68.formula_period, 90);
        assert!(row68.matched);
    }

    #[test]
    fn scan_m1_is_case1_linear() {
        let rows = scan_rows(1, 3, false).unwrap();
        for r in &rows {
            assert_eq!(r.case, CaseTag::I);
            assert_eq!(r.formula_period, 3 + 2 * r.delta - r.d);
            assert!(r.matched);
        }
        assert_eq!(rows[0].formula_period, 4);
    }

    #[test]
    fn serial_and_parallel_agree() {
        let serial = scan_rows(4, 9, false).unwrap();
        let parallel = scan_rows(4, 9, true).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn csv_layout() {
        let rows = scan_rows(1, 1, false).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let wall = rows[0].wall_period;
        let rot = rows[0].rotation_dual;
        assert_eq!(
            lines.next(),
            Some(format!("1,1,1,I,4,0,4,true,{wall},{rot}").as_str())
        );
    }

    #[test]
    fn duality_of_2_5() {
        let set = SubtractionSet::new(vec![2, 5]).unwrap();
        let report = duality_report(&set, 10_000).unwrap();
        assert_eq!(report.sink.period, 7);
        assert_eq!(report.wall.period, 7);
        assert!(report.same_length);
        assert!(report.rotation_dual);
    }

    #[test]
    fn duality_of_1_2_3() {
        let set = SubtractionSet::new(vec![1, 2, 3]).unwrap();
        let report = duality_report(&set, 10_000).unwrap();
        assert_eq!(report.sink.period_word, vec![1, 2, 3, 0]);
        assert_eq!(report.wall.period_word, vec![0, 1, 2, 3]);
        assert!(report.rotation_dual);
    }
}
