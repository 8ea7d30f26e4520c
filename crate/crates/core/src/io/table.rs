//! Wide, header-first CSV for event matrices and indicator series.
//!
//! Event files: header `t,<ch1>,<ch2>,...`, one row per period. A channel
//! header may carry its business process as `process/name`; a bare name is
//! tagged with [`crate::model::DEFAULT_PROCESS`]. Indicator files: header `t,V` plus
//! optional per-channel columns, and an optional trailing `Total,<value>`.
//!
//! Values are written with the shortest representation that parses back
//! to the same `f64`.

use csv::{ReaderBuilder, StringRecord, WriterBuilder};

use crate::error::{Error, Result};
use crate::indicator::{IndicatorPoint, IndicatorSeries};
use crate::model::{validate_event_matrix, ChannelLabel, EventMatrix, RawEventGrid};

/// Per-period indicator values as exchanged on disk (the flat form of a
/// published results table).
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTable {
    /// `(t, V)` with `t` strictly increasing.
    pub rows: Vec<(usize, f64)>,
    pub declared_total: Option<f64>,
    /// Per-channel columns after `V`, if any.
    pub channel_names: Vec<String>,
    /// One vector per row, aligned with `channel_names`.
    pub channel_values: Vec<Vec<f64>>,
}

impl SeriesTable {
    /// Sum of the `V` column.
    pub fn replayed_total(&self) -> f64 {
        self.rows.iter().map(|&(_, v)| v).sum()
    }

    /// Total used for comparisons: the replayed rows, or the declared total
    /// when the file carries no rows.
    pub fn effective_total(&self) -> f64 {
        match (self.rows.is_empty(), self.declared_total) {
            (true, Some(total)) => total,
            _ => self.replayed_total(),
        }
    }

    /// Largest gap between replayed and declared totals explained by
    /// 2-decimal rounding of every cell and of the total itself.
    pub fn rounding_tolerance(&self) -> f64 {
        0.005 * (self.rows.len() + 1) as f64
    }

    /// `None` when no total is declared, otherwise whether replayed and
    /// declared totals agree within [`rounding_tolerance`](Self::rounding_tolerance).
    pub fn total_consistent(&self) -> Option<bool> {
        if self.rows.is_empty() {
            return self.declared_total.map(|_| true);
        }
        self.declared_total
            .map(|d| (d - self.replayed_total()).abs() <= self.rounding_tolerance())
    }

    pub fn to_indicator_series(&self) -> IndicatorSeries {
        if self.channel_names.is_empty() {
            return IndicatorSeries::from_totals(&self.rows);
        }
        let points = self
            .rows
            .iter()
            .zip(&self.channel_values)
            .map(|(&(t, _), values)| IndicatorPoint::new(t, values.clone()))
            .collect();
        IndicatorSeries::new(None, self.channel_names.clone(), points)
    }
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes())
}

fn line_of(record: &StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn read_error(err: csv::Error) -> Error {
    let line = err.position().map_or(0, |p| p.line());
    Error::MalformedRow {
        line,
        reason: err.to_string(),
    }
}

fn parse_number(text: &str, line: u64, column: usize) -> Result<f64> {
    text.parse::<f64>().map_err(|e| Error::MalformedNumber {
        line,
        column,
        text: text.to_string(),
        reason: e.to_string(),
    })
}

fn parse_time(text: &str, line: u64) -> Result<i64> {
    text.parse::<i64>().map_err(|e| Error::MalformedNumber {
        line,
        column: 1,
        text: text.to_string(),
        reason: e.to_string(),
    })
}

fn parse_label(cell: &str) -> ChannelLabel {
    match cell.split_once('/') {
        Some((process, name)) if !process.is_empty() => ChannelLabel::new(name, process),
        _ => ChannelLabel::untagged(cell),
    }
}

pub fn parse_event_csv(text: &str) -> Result<EventMatrix> {
    let mut records = reader(text).into_records();
    let header = match records.next() {
        Some(r) => r.map_err(read_error)?,
        None => {
            return Err(Error::MalformedHeader {
                line: 1,
                reason: "empty input".into(),
            })
        }
    };
    if header.get(0) != Some("t") {
        return Err(Error::MalformedHeader {
            line: 1,
            reason: format!(
                "first column must be `t`, found `{}`",
                header.get(0).unwrap_or("")
            ),
        });
    }
    if header.len() < 2 {
        return Err(Error::MalformedHeader {
            line: 1,
            reason: "no event channels".into(),
        });
    }
    let mut labels = Vec::with_capacity(header.len() - 1);
    for (c, cell) in header.iter().enumerate().skip(1) {
        let label = parse_label(cell);
        if label.name.is_empty() {
            return Err(Error::MalformedHeader {
                line: 1,
                reason: format!("column {} is unnamed", c + 1),
            });
        }
        if labels.iter().any(|l: &ChannelLabel| l.name == label.name) {
            return Err(Error::MalformedHeader {
                line: 1,
                reason: format!("duplicate channel `{}`", label.name),
            });
        }
        labels.push(label);
    }

    let mut times = Vec::new();
    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(read_error)?;
        let line = line_of(&record);
        if record.len() != header.len() {
            return Err(Error::MalformedRow {
                line,
                reason: format!("{} fields, header has {}", record.len(), header.len()),
            });
        }
        times.push(parse_time(&record[0], line)?);
        let values = record
            .iter()
            .enumerate()
            .skip(1)
            .map(|(c, cell)| parse_number(cell, line, c + 1))
            .collect::<Result<Vec<_>>>()?;
        rows.push(values);
    }
    validate_event_matrix(RawEventGrid {
        labels,
        times,
        rows,
    })
}

fn write_records<I>(records: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}

pub fn write_event_csv(events: &EventMatrix) -> String {
    let header = std::iter::once("t".to_string())
        .chain(
            events
                .labels()
                .iter()
                .map(|l| format!("{}/{}", l.process, l.name)),
        )
        .collect();
    let rows = events.rows().enumerate().map(|(r, row)| {
        std::iter::once((r + 1).to_string())
            .chain(row.iter().map(f64::to_string))
            .collect()
    });
    write_records(std::iter::once(header).chain(rows))
}

pub fn parse_indicator_csv(text: &str) -> Result<SeriesTable> {
    let mut records = reader(text).into_records();
    let header = match records.next() {
        Some(r) => r.map_err(read_error)?,
        None => {
            return Err(Error::MalformedHeader {
                line: 1,
                reason: "empty input".into(),
            })
        }
    };
    if header.get(0) != Some("t") || header.get(1) != Some("V") {
        return Err(Error::MalformedHeader {
            line: 1,
            reason: "header must start with `t,V`".into(),
        });
    }
    let channel_names: Vec<String> = header.iter().skip(2).map(str::to_string).collect();

    let mut table = SeriesTable {
        rows: Vec::new(),
        declared_total: None,
        channel_names,
        channel_values: Vec::new(),
    };
    for record in records {
        let record = record.map_err(read_error)?;
        let line = line_of(&record);
        if table.declared_total.is_some() {
            return Err(Error::MalformedRow {
                line,
                reason: "rows after the Total row".into(),
            });
        }
        if &record[0] == "Total" {
            let cell = record.get(1).unwrap_or("");
            let total = parse_number(cell, line, 2)?;
            if !total.is_finite() {
                return Err(Error::MalformedNumber {
                    line,
                    column: 2,
                    text: cell.to_string(),
                    reason: "total is not finite".into(),
                });
            }
            table.declared_total = Some(total);
            continue;
        }
        if record.len() != header.len() {
            return Err(Error::MalformedRow {
                line,
                reason: format!("{} fields, header has {}", record.len(), header.len()),
            });
        }
        let t = parse_time(&record[0], line)?;
        if t < 1 {
            return Err(Error::MalformedNumber {
                line,
                column: 1,
                text: record[0].to_string(),
                reason: "time index must be at least 1".into(),
            });
        }
        if let Some(&(prev, _)) = table.rows.last() {
            if t as usize <= prev {
                return Err(Error::NonMonotonicTime { line, t });
            }
        }
        let mut values = Vec::with_capacity(record.len() - 1);
        for (c, cell) in record.iter().enumerate().skip(1) {
            let v = parse_number(cell, line, c + 1)?;
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::MalformedNumber {
                    line,
                    column: c + 1,
                    text: cell.to_string(),
                    reason: "indicator values must be finite and non-negative".into(),
                });
            }
            values.push(v);
        }
        table.rows.push((t as usize, values[0]));
        table.channel_values.push(values.split_off(1));
    }
    if table.channel_names.is_empty() {
        table.channel_values.clear();
    }
    Ok(table)
}

/// Channel columns are written unless the series is a bare `V` column.
pub(crate) fn channel_columns(series: &IndicatorSeries) -> Option<&[String]> {
    let bare = series.channel_names.len() == 1 && series.channel_names[0] == "V";
    (!bare && !series.channel_names.is_empty()).then_some(&series.channel_names[..])
}

pub fn write_indicator_csv(series: &IndicatorSeries) -> String {
    let channels = channel_columns(series);
    let mut header = vec!["t".to_string(), "V".to_string()];
    header.extend(channels.into_iter().flatten().cloned());
    let rows = series.points.iter().map(|p| {
        let mut row = vec![p.t.to_string(), p.sum.to_string()];
        if channels.is_some() {
            row.extend(p.values.iter().map(f64::to_string));
        }
        row
    });
    let total = vec!["Total".to_string(), series.grand_total.to_string()];
    write_records(
        std::iter::once(header)
            .chain(rows)
            .chain(std::iter::once(total)),
    )
}
