//! Recorded smallest known complete arc sizes: loading, checking against the
//! bounds, and the data series for plotting them.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::bounds::{
    self, check_theorem1, conjectural, conjectural_scaled, transforms, Bound, BoundCheck,
    TransformValues, COMPLETE_SEARCH_LIMIT, FDL_HIGH, FDL_LOW, LOG_POWER_EXPONENT, PHI_SCALE,
    SPARSE_ORDERS,
};
use crate::field::{is_prime, prime_power};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: q = {q} is not a prime power")]
    NotPrimePower { line: usize, q: u64 },
    #[error("line {line}: size {t} for q = {q} does not exceed the lower bound {bound:.4}")]
    BelowLowerBound { line: usize, q: u64, t: u64, bound: f64 },
    #[error("line {line}: q = {q} appears twice for the same source")]
    DuplicateEntry { line: usize, q: u64 },
    #[error("unknown figure kind {0:?}")]
    UnknownKind(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Number of the table an entry was transcribed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Source(pub u8);

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Source, String> {
        let digits = s.trim().trim_start_matches(['T', 't']);
        digits
            .parse()
            .map(Source)
            .map_err(|_| format!("bad source tag {s:?}"))
    }
}

/// Which of the four ranges of recorded q an order belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeTag {
    /// Every prime power up to 49727 and every prime up to 150001.
    Q1,
    /// Proper prime powers in (49727, 150001].
    Q2,
    /// Every prime power in (150001, 160001].
    Q3,
    /// The sparse orders above 160001.
    Q4,
}

pub fn range_tag(q: u64) -> Option<RangeTag> {
    prime_power(q)?;
    if q <= 49_727 || (q <= 150_001 && is_prime(q)) {
        Some(RangeTag::Q1)
    } else if q <= 150_001 {
        Some(RangeTag::Q2)
    } else if q <= COMPLETE_SEARCH_LIMIT {
        Some(RangeTag::Q3)
    } else if SPARSE_ORDERS.contains(&q) {
        Some(RangeTag::Q4)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableEntry {
    pub q: u64,
    /// Smallest known complete arc size.
    pub t2: u64,
    pub source: Option<Source>,
}

impl TableEntry {
    pub fn range_tag(&self) -> Option<RangeTag> {
        range_tag(self.q)
    }
}

#[derive(Deserialize)]
struct Row {
    q: String,
    t2: String,
    source: Option<String>,
}

/// Parses `q,t2[,source]` CSV with a mandatory header, validating each row.
/// Entries come back sorted by q; a repeated `(q, source)` is an error.
pub fn parse_table(reader: impl Read) -> Result<Vec<TableEntry>, TableError> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let names: Vec<&str> = headers.iter().collect();
    if names.len() < 2 || names[0] != "q" || names[1] != "t2" {
        return Err(TableError::Parse {
            line: 1,
            msg: "header must start with q,t2".into(),
        });
    }
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for result in rdr.deserialize::<Row>() {
        let row_err = |e: csv::Error| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            TableError::Parse {
                line,
                msg: e.to_string(),
            }
        };
        let row = result.map_err(row_err)?;
        let line = out.len() + 2;
        let num = |s: &str, what: &str| {
            s.parse::<u64>().map_err(|_| TableError::Parse {
                line,
                msg: format!("bad {what} {s:?}"),
            })
        };
        let q = num(&row.q, "q")?;
        let t2 = num(&row.t2, "t2")?;
        let source = match row.source.as_deref() {
            None | Some("") => None,
            Some(s) => Some(s.parse().map_err(|msg| TableError::Parse { line, msg })?),
        };
        if prime_power(q).is_none() {
            return Err(TableError::NotPrimePower { line, q });
        }
        let bound = bounds::lower_any(q as f64);
        if (t2 as f64) <= bound {
            return Err(TableError::BelowLowerBound { line, q, t: t2, bound });
        }
        if seen.insert((q, source), line).is_some() {
            return Err(TableError::DuplicateEntry { line, q });
        }
        out.push(TableEntry { q, t2, source });
    }
    out.sort_by_key(|e| e.q);
    Ok(out)
}

/// Loads one table file and merges repeated q (see [`merge`]).
pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<TableEntry>, TableError> {
    let file = std::fs::File::open(path)?;
    Ok(merge(parse_table(file)?))
}

/// One entry per q, keeping the smallest size (then the lowest source).
pub fn merge(entries: impl IntoIterator<Item = TableEntry>) -> Vec<TableEntry> {
    let mut best: BTreeMap<u64, TableEntry> = BTreeMap::new();
    for e in entries {
        best.entry(e.q)
            .and_modify(|b| {
                if (e.t2, e.source) < (b.t2, b.source) {
                    *b = e;
                }
            })
            .or_insert(e);
    }
    best.into_values().collect()
}

const BUNDLED: [&str; 6] = [
    include_str!("../data/table1.csv"),
    include_str!("../data/table2.csv"),
    include_str!("../data/table3.csv"),
    include_str!("../data/table4.csv"),
    include_str!("../data/table5.csv"),
    include_str!("../data/table6.csv"),
];

/// One bundled table, numbered 1 to 6, exactly as transcribed.
pub fn bundled_table(id: u8) -> Option<Vec<TableEntry>> {
    let text = BUNDLED.get(usize::from(id).checked_sub(1)?)?;
    Some(parse_table(text.as_bytes()).expect("bundled tables are valid"))
}

/// Tables 1 to 4 merged: all q up to 10000 plus the larger listed orders.
pub fn bundled_tables() -> Vec<TableEntry> {
    merge((1..=4).flat_map(|i| bundled_table(i).unwrap()))
}

/// All six tables merged.
pub fn bundled_all() -> Vec<TableEntry> {
    merge((1..=6).flat_map(|i| bundled_table(i).unwrap()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryReport {
    pub entry: TableEntry,
    pub checks: Vec<BoundCheck>,
    /// With the `0.6` scale; `None` below q = 3.
    pub transforms: Option<TransformValues>,
}

impl EntryReport {
    pub fn diff(&self, c: &BoundCheck) -> f64 {
        c.value - self.entry.t2 as f64
    }

    pub fn percent(&self, c: &BoundCheck) -> f64 {
        100.0 * self.diff(c) / c.value
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundSummary {
    pub in_range: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub entries: Vec<EntryReport>,
    pub summary: BTreeMap<Bound, BoundSummary>,
}

impl TableReport {
    pub fn total_violations(&self) -> usize {
        self.summary.values().map(|s| s.violations).sum()
    }

    /// One row per entry and bound:
    /// `q,t2,bound_name,bound_value,in_range,pass,diff,percent`.
    pub fn write_csv(&self, w: impl Write) -> Result<(), TableError> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record([
            "q",
            "t2",
            "bound_name",
            "bound_value",
            "in_range",
            "pass",
            "diff",
            "percent",
        ])?;
        for r in &self.entries {
            for c in &r.checks {
                wtr.write_record([
                    r.entry.q.to_string(),
                    r.entry.t2.to_string(),
                    c.bound.name().to_string(),
                    c.value.to_string(),
                    c.in_range.to_string(),
                    c.pass.to_string(),
                    r.diff(c).to_string(),
                    r.percent(c).to_string(),
                ])?;
            }
        }
        wtr.flush()?;
        Ok(())
    }
}

pub fn verify_table(entries: &[TableEntry]) -> TableReport {
    let mut summary: BTreeMap<Bound, BoundSummary> =
        Bound::ALL.iter().map(|&b| (b, BoundSummary::default())).collect();
    let entries: Vec<EntryReport> = entries
        .iter()
        .map(|&entry| {
            let checks = check_theorem1(entry.q, entry.t2);
            for c in &checks {
                let s = summary.get_mut(&c.bound).unwrap();
                s.in_range += usize::from(c.in_range);
                s.violations += usize::from(c.is_violation());
            }
            EntryReport {
                entry,
                checks,
                transforms: transforms(entry.q as f64, entry.t2 as f64, PHI_SCALE).ok(),
            }
        })
        .collect();
    TableReport { entries, summary }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    /// Sizes against the conjectural, log-power, `fdl_1006` and `ddl_phi` curves.
    TVsBounds,
    DiffConjLogPower,
    PctConjLogPower,
    DiffFdlPhi,
    PctFdlPhi,
    /// `t / sqrt(3 q ln q)` against the scaled conjectural curve and the FDL constants.
    H,
    C,
    Phi,
}

impl FigureKind {
    pub const ALL: [FigureKind; 8] = [
        FigureKind::TVsBounds,
        FigureKind::DiffConjLogPower,
        FigureKind::PctConjLogPower,
        FigureKind::DiffFdlPhi,
        FigureKind::PctFdlPhi,
        FigureKind::H,
        FigureKind::C,
        FigureKind::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureKind::TVsBounds => "t_vs_bounds",
            FigureKind::DiffConjLogPower => "diff_conj_0p7295",
            FigureKind::PctConjLogPower => "pct_conj_0p7295",
            FigureKind::DiffFdlPhi => "diff_1006_phi",
            FigureKind::PctFdlPhi => "pct_1006_phi",
            FigureKind::H => "h",
            FigureKind::C => "c",
            FigureKind::Phi => "phi",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            FigureKind::TVsBounds => {
                &["q", "t2", "conjectural", "log_power_0.7295", "fdl_1006", "ddl_phi"]
            }
            FigureKind::DiffConjLogPower => &["q", "diff_conjectural", "diff_log_power_0.7295"],
            FigureKind::PctConjLogPower => &["q", "pct_conjectural", "pct_log_power_0.7295"],
            FigureKind::DiffFdlPhi => &["q", "diff_fdl_1006", "diff_ddl_phi"],
            FigureKind::PctFdlPhi => &["q", "pct_fdl_1006", "pct_ddl_phi"],
            FigureKind::H => &["q", "h_bar", "conjectural_scaled", "fdl_0998", "fdl_1006"],
            FigureKind::C => &["q", "c_bar", "log_power_exponent", "c_up"],
            FigureKind::Phi => &["q", "phi_bar", "phi_up"],
        }
    }
}

impl FromStr for FigureKind {
    type Err = TableError;

    fn from_str(s: &str) -> Result<FigureKind, TableError> {
        FigureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| TableError::UnknownKind(s.to_string()))
    }
}

/// Rows of a figure series; `None` where a value is undefined (q < 3).
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSeries {
    pub kind: FigureKind,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl FigureSeries {
    pub fn write_csv(&self, w: impl Write) -> Result<(), TableError> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(self.kind.columns())?;
        for row in &self.rows {
            wtr.write_record(row.iter().map(|v| v.map_or(String::new(), |x| x.to_string())))?;
        }
        wtr.flush()?;
        Ok(())
    }
}

pub fn figure_series(entries: &[TableEntry], kind: FigureKind) -> FigureSeries {
    let rows = entries
        .iter()
        .map(|e| {
            let q = e.q as f64;
            let t = e.t2 as f64;
            let conj = conjectural(q).ok();
            let lp = bounds::log_power(q, LOG_POWER_EXPONENT);
            let f06 = bounds::fdl(q, FDL_HIGH);
            let phi = bounds::ddl_phi(q);
            let diff = |b: f64| b - t;
            let pct = |b: f64| 100.0 * (b - t) / b;
            let tr = transforms(q, t, PHI_SCALE).ok();
            let values = match kind {
                FigureKind::TVsBounds => vec![Some(t), conj, Some(lp), Some(f06), Some(phi)],
                FigureKind::DiffConjLogPower => vec![conj.map(diff), Some(diff(lp))],
                FigureKind::PctConjLogPower => vec![conj.map(pct), Some(pct(lp))],
                FigureKind::DiffFdlPhi => vec![Some(diff(f06)), Some(diff(phi))],
                FigureKind::PctFdlPhi => vec![Some(pct(f06)), Some(pct(phi))],
                FigureKind::H => vec![
                    tr.map(|v| v.h),
                    conjectural_scaled(q).ok(),
                    Some(FDL_LOW),
                    Some(FDL_HIGH),
                ],
                FigureKind::C => vec![tr.map(|v| v.c), Some(LOG_POWER_EXPONENT), Some(bounds::c_up(q))],
                FigureKind::Phi => vec![tr.map(|v| v.phi), Some(bounds::phi_up(q))],
            };
            std::iter::once(Some(q)).chain(values).collect()
        })
        .collect();
    FigureSeries { kind, rows }
}
