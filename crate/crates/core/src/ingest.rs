//! Daily close series from CSV.
//!
//! Rows are indexed by trading day; calendar gaps carry no weight. Closes are
//! kept as natural logarithms so that synthetic series with very large
//! excursions stay representable.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// Names of the date and close columns in the input header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnConfig {
    pub date: String,
    pub close: String,
}

impl Default for ColumnConfig {
    fn default() -> Self {
        Self {
            date: "date".to_owned(),
            close: "close".to_owned(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PricePoint {
    pub date: NaiveDate,
    log_close: f64,
}

impl PricePoint {
    /// Builds a point from a strictly positive, finite close.
    pub fn new(date: NaiveDate, close: f64) -> Option<Self> {
        (close.is_finite() && close > 0.0).then(|| Self {
            date,
            log_close: close.ln(),
        })
    }

    pub fn from_log_close(date: NaiveDate, log_close: f64) -> Option<Self> {
        log_close.is_finite().then_some(Self { date, log_close })
    }

    /// The close price. May overflow to infinity for synthetic series whose
    /// log-price exceeds ~709.
    pub fn close(&self) -> f64 {
        self.log_close.exp()
    }

    pub fn log_close(&self) -> f64 {
        self.log_close
    }
}

/// An ordered daily series with strictly increasing dates and at least two
/// observations.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    symbol: String,
    points: Vec<PricePoint>,
}

impl PriceSeries {
    pub fn new(symbol: impl Into<String>, points: Vec<PricePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::SeriesTooShort { len: points.len() });
        }
        for (i, pair) in points.windows(2).enumerate() {
            if pair[1].date <= pair[0].date {
                return Err(Error::InvalidRow {
                    row: i + 2,
                    reason: date_order_reason(pair[0].date, pair[1].date),
                });
            }
        }
        Ok(Self {
            symbol: symbol.into(),
            points,
        })
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn points(&self) -> &[PricePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first_date(&self) -> NaiveDate {
        self.points[0].date
    }

    pub fn last_date(&self) -> NaiveDate {
        self.points[self.points.len() - 1].date
    }
}

fn date_order_reason(prev: NaiveDate, next: NaiveDate) -> String {
    if next == prev {
        format!("duplicate date {next}")
    } else {
        format!("date {next} is not after previous date {prev}")
    }
}

/// Loads a series from a CSV file. The symbol is the file stem.
pub fn load_price_csv(path: impl AsRef<Path>, columns: &ColumnConfig) -> Result<PriceSeries> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let symbol = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_price_csv(file, columns, symbol)
}

/// Parses CSV text from any reader. Row numbers in errors count data rows
/// from 1, header excluded.
pub fn read_price_csv<R: Read>(
    reader: R,
    columns: &ColumnConfig,
    symbol: impl Into<String>,
) -> Result<PriceSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_owned()))
    };
    let date_idx = find(&columns.date)?;
    let close_idx = find(&columns.close)?;

    let mut points: Vec<PricePoint> = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::InvalidRow {
            row,
            reason: e.to_string(),
        })?;
        let field = |idx: usize, what: &str| {
            record
                .get(idx)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| Error::InvalidRow {
                    row,
                    reason: format!("missing {what}"),
                })
        };

        let raw_date = field(date_idx, "date")?;
        let date =
            NaiveDate::parse_from_str(raw_date, "%Y-%m-%d").map_err(|_| Error::InvalidRow {
                row,
                reason: format!("`{raw_date}` is not an ISO-8601 date"),
            })?;

        let raw_close = field(close_idx, "close")?;
        let close: f64 = raw_close.parse().map_err(|_| Error::InvalidRow {
            row,
            reason: format!("close `{raw_close}` is not a number"),
        })?;
        let point = PricePoint::new(date, close).ok_or_else(|| Error::InvalidRow {
            row,
            reason: format!("close {close} is not a positive finite price"),
        })?;

        if let Some(prev) = points.last() {
            if date <= prev.date {
                return Err(Error::InvalidRow {
                    row,
                    reason: date_order_reason(prev.date, date),
                });
            }
        }
        points.push(point);
    }

    PriceSeries::new(symbol, points)
}

/// Natural-log prices aligned with the series dates.
pub fn to_log_prices(series: &PriceSeries) -> Vec<f64> {
    series.points.iter().map(PricePoint::log_close).collect()
}
