//! Dated exchange-rate tables, base redenomination and log returns.
//!
//! Rates are stored column-major per currency, with the units "base per one
//! unit of the quoted currency". Dates are opaque ordered labels; the
//! rolling pipeline counts rows, not calendar days, so holiday gaps simply
//! do not exist once missing cells are forward-filled.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// An ISO-8601 calendar date label (`YYYY-MM-DD`). Ordering is the string
/// ordering, which for this format matches chronological order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Date(String);

impl Date {
    /// Validate the `YYYY-MM-DD` shape. Only the shape is checked; dates act
    /// as ordered labels and never enter calendar arithmetic.
    pub fn parse(text: &str) -> Option<Date> {
        let b = text.as_bytes();
        if b.len() != 10 || b[4] != b'-' || b[7] != b'-' {
            return None;
        }
        let digits = b[..4]
            .iter()
            .chain(&b[5..7])
            .chain(&b[8..10])
            .all(u8::is_ascii_digit);
        if digits {
            Some(Date(text.to_string()))
        } else {
            None
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Calendar year of the label.
    pub fn year(&self) -> i32 {
        self.0[..4].parse().unwrap_or(0)
    }
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum IngestError {
    Empty,
    /// Header must start with a date column.
    MissingDateHeader(String),
    DuplicateCurrency(String),
    /// Row/column context uses the 1-based data row and the currency code.
    BadCell {
        row: usize,
        column: String,
        message: String,
    },
    BadDate {
        row: usize,
        text: String,
    },
    WrongFieldCount {
        row: usize,
        expected: usize,
        got: usize,
    },
    DuplicateDate(String),
    /// A currency column with no observations at all.
    EmptyColumn(String),
    UnknownCurrency(String),
    /// The requested base has no quote on the earliest dates, so the table
    /// cannot be re-expressed in it.
    BaseHasLeadingGaps(String),
}

impl fmt::Display for IngestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IngestError::Empty => write!(f, "input has no data rows"),
            IngestError::MissingDateHeader(got) => {
                write!(f, "first header column must be `date`, got `{got}`")
            }
            IngestError::DuplicateCurrency(c) => write!(f, "duplicate currency column `{c}`"),
            IngestError::BadCell { row, column, message } => {
                write!(f, "row {row}, column {column}: {message}")
            }
            IngestError::BadDate { row, text } => {
                write!(f, "row {row}: `{text}` is not an ISO-8601 date")
            }
            IngestError::WrongFieldCount { row, expected, got } => {
                write!(f, "row {row}: expected {expected} fields, got {got}")
            }
            IngestError::DuplicateDate(d) => write!(f, "duplicate date {d}"),
            IngestError::EmptyColumn(c) => write!(f, "currency `{c}` has no observations"),
            IngestError::UnknownCurrency(c) => write!(f, "unknown currency `{c}`"),
            IngestError::BaseHasLeadingGaps(c) => {
                write!(f, "currency `{c}` has no quotes on the earliest dates and cannot serve as base")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for IngestError {}

/// A dated matrix of exchange rates, one column per currency, expressed in
/// one base denomination.
#[derive(Clone, Debug)]
pub struct RateTable {
    dates: Vec<Date>,
    currencies: Vec<String>,
    /// Column-major: `rates[c * T + t]`. Cells before `first_valid[c]` are
    /// NaN placeholders for leading gaps and are never read by consumers
    /// that respect `first_valid`.
    rates: Vec<f64>,
    first_valid: Vec<usize>,
    base: String,
}

/// Dated matrix of logarithmic rate changes, column-major like [`RateTable`].
#[derive(Clone, Debug)]
pub struct ReturnsMatrix {
    dates: Vec<Date>,
    currencies: Vec<String>,
    values: Vec<f64>,
    first_valid: Vec<usize>,
}

/// Parse a delimited rate table (comma or tab separated).
///
/// The header row names the currencies; the first column must be `date`
/// (case-insensitive) with ISO-8601 values. Rows may arrive in any order and
/// are sorted by date. Empty cells and `NA`/`NaN` mark missing quotes, which
/// are forward-filled from the most recent prior value; leading gaps are
/// tracked so windows overlapping them can reject the currency.
///
/// `base` declares the denomination the quotes are expressed in; it is
/// metadata, not a column of the file.
pub fn parse_rates(input: &str, base: &str) -> Result<RateTable, IngestError> {
    let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(IngestError::Empty)?;
    let delim = if header.contains('\t') { '\t' } else { ',' };

    let mut fields = header.split(delim).map(str::trim);
    let date_col = fields.next().unwrap_or("");
    if !date_col.eq_ignore_ascii_case("date") {
        return Err(IngestError::MissingDateHeader(date_col.to_string()));
    }
    let currencies: Vec<String> = fields.map(ToString::to_string).collect();
    if currencies.is_empty() {
        return Err(IngestError::Empty);
    }
    for (i, c) in currencies.iter().enumerate() {
        if c.is_empty() {
            return Err(IngestError::DuplicateCurrency(String::new()));
        }
        if currencies[..i].contains(c) {
            return Err(IngestError::DuplicateCurrency(c.clone()));
        }
    }

    let ncol = currencies.len();
    // (date, cells) rows; cells are None for missing quotes.
    let mut rows: Vec<(Date, Vec<Option<f64>>)> = Vec::new();
    for (line_idx, line) in lines {
        let row_no = line_idx + 1; // 1-based, header included, matches editors
        let mut parts = line.split(delim).map(str::trim);
        let date_text = parts.next().unwrap_or("");
        let date = Date::parse(date_text).ok_or_else(|| IngestError::BadDate {
            row: row_no,
            text: date_text.to_string(),
        })?;
        let cells: Vec<&str> = parts.collect();
        if cells.len() != ncol {
            return Err(IngestError::WrongFieldCount {
                row: row_no,
                expected: ncol + 1,
                got: cells.len() + 1,
            });
        }
        let mut parsed = Vec::with_capacity(ncol);
        for (c, cell) in cells.iter().enumerate() {
            if cell.is_empty() || cell.eq_ignore_ascii_case("na") || cell.eq_ignore_ascii_case("nan")
            {
                parsed.push(None);
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| IngestError::BadCell {
                row: row_no,
                column: currencies[c].clone(),
                message: format!("`{cell}` is not a number"),
            })?;
            if !value.is_finite() {
                return Err(IngestError::BadCell {
                    row: row_no,
                    column: currencies[c].clone(),
                    message: format!("`{cell}` is not finite"),
                });
            }
            if value <= 0.0 {
                return Err(IngestError::BadCell {
                    row: row_no,
                    column: currencies[c].clone(),
                    message: format!("rate {value} is not positive"),
                });
            }
            parsed.push(Some(value));
        }
        rows.push((date, parsed));
    }
    if rows.is_empty() {
        return Err(IngestError::Empty);
    }

    rows.sort_by(|a, b| a.0.cmp(&b.0));
    for pair in rows.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(IngestError::DuplicateDate(pair[0].0.as_str().to_string()));
        }
    }

    let t_len = rows.len();
    let mut rates = alloc::vec![f64::NAN; ncol * t_len];
    let mut first_valid = alloc::vec![usize::MAX; ncol];
    for c in 0..ncol {
        let mut last: Option<f64> = None;
        for (t, (_, cells)) in rows.iter().enumerate() {
            if let Some(v) = cells[c] {
                if first_valid[c] == usize::MAX {
                    first_valid[c] = t;
                }
                last = Some(v);
            }
            if let Some(v) = last {
                rates[c * t_len + t] = v;
            }
        }
        if first_valid[c] == usize::MAX {
            return Err(IngestError::EmptyColumn(currencies[c].clone()));
        }
    }

    Ok(RateTable {
        dates: rows.into_iter().map(|(d, _)| d).collect(),
        currencies,
        rates,
        first_valid,
        base: base.to_string(),
    })
}

impl RateTable {
    /// Build a table from complete (gap-free) column data.
    pub fn from_columns(
        dates: Vec<Date>,
        currencies: Vec<String>,
        columns: &[Vec<f64>],
        base: &str,
    ) -> Result<Self, IngestError> {
        assert_eq!(currencies.len(), columns.len());
        let t_len = dates.len();
        let mut rates = Vec::with_capacity(t_len * currencies.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), t_len, "column length mismatch");
            for (t, &v) in col.iter().enumerate() {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(IngestError::BadCell {
                        row: t + 2,
                        column: currencies[c].clone(),
                        message: format!("rate {v} is not positive"),
                    });
                }
                rates.push(v);
            }
        }
        Ok(RateTable {
            first_valid: alloc::vec![0; currencies.len()],
            dates,
            currencies,
            rates,
            base: base.to_string(),
        })
    }

    pub fn dates(&self) -> &[Date] {
        &self.dates
    }

    pub fn currencies(&self) -> &[String] {
        &self.currencies
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn rows(&self) -> usize {
        self.dates.len()
    }

    /// First row index with an actual quote for column `c`.
    pub fn first_valid(&self, c: usize) -> usize {
        self.first_valid[c]
    }

    pub fn column(&self, c: usize) -> &[f64] {
        let t = self.dates.len();
        &self.rates[c * t..(c + 1) * t]
    }

    pub fn currency_index(&self, code: &str) -> Option<usize> {
        self.currencies.iter().position(|c| c == code)
    }

    /// Re-express every rate in a new base currency.
    ///
    /// If `new_base` is the current base this is the identity. Otherwise
    /// `new_base` must be one of the columns with quotes from the first date
    /// on; every other column is divided by it, the column itself is
    /// dropped, and the old base joins as a new final column with rate
    /// `1 / p_base`.
    pub fn redenominate(&self, new_base: &str) -> Result<RateTable, IngestError> {
        if new_base == self.base {
            return Ok(self.clone());
        }
        let b = self
            .currency_index(new_base)
            .ok_or_else(|| IngestError::UnknownCurrency(new_base.to_string()))?;
        if self.first_valid[b] != 0 {
            return Err(IngestError::BaseHasLeadingGaps(new_base.to_string()));
        }
        let t_len = self.dates.len();
        let pb = self.column(b).to_vec();

        let mut currencies = Vec::with_capacity(self.currencies.len());
        let mut rates = Vec::with_capacity(self.rates.len());
        let mut first_valid = Vec::with_capacity(self.currencies.len());
        for c in 0..self.currencies.len() {
            if c == b {
                continue;
            }
            currencies.push(self.currencies[c].clone());
            first_valid.push(self.first_valid[c]);
            let col = self.column(c);
            for t in 0..t_len {
                rates.push(col[t] / pb[t]);
            }
        }
        currencies.push(self.base.clone());
        first_valid.push(0);
        for t in 0..t_len {
            rates.push(1.0 / pb[t]);
        }

        Ok(RateTable {
            dates: self.dates.clone(),
            currencies,
            rates,
            first_valid,
            base: new_base.to_string(),
        })
    }

    /// Logarithmic rate changes: entry (t, e) is `ln p_e(t) - ln p_e(t-1)`,
    /// dated by the later day; the first date drops out.
    pub fn log_returns(&self) -> ReturnsMatrix {
        let t_len = self.dates.len();
        debug_assert!(t_len >= 2, "need at least two dates for returns");
        let n_ret = t_len - 1;
        let mut values = alloc::vec![f64::NAN; self.currencies.len() * n_ret];
        for c in 0..self.currencies.len() {
            let col = self.column(c);
            let out = &mut values[c * n_ret..(c + 1) * n_ret];
            for t in self.first_valid[c]..n_ret {
                out[t] = math::ln(col[t + 1]) - math::ln(col[t]);
            }
        }
        ReturnsMatrix {
            dates: self.dates[1..].to_vec(),
            currencies: self.currencies.clone(),
            values,
            first_valid: self.first_valid.clone(),
        }
    }
}

impl ReturnsMatrix {
    /// Build a returns matrix directly from complete column data.
    pub fn from_columns(dates: Vec<Date>, currencies: Vec<String>, columns: &[Vec<f64>]) -> Self {
        assert_eq!(currencies.len(), columns.len());
        let t_len = dates.len();
        let mut values = Vec::with_capacity(t_len * currencies.len());
        for col in columns {
            assert_eq!(col.len(), t_len, "column length mismatch");
            values.extend_from_slice(col);
        }
        ReturnsMatrix {
            first_valid: alloc::vec![0; currencies.len()],
            dates,
            currencies,
            values,
        }
    }

    pub fn dates(&self) -> &[Date] {
        &self.dates
    }

    pub fn currencies(&self) -> &[String] {
        &self.currencies
    }

    pub fn rows(&self) -> usize {
        self.dates.len()
    }

    /// First row index at which the currency's returns are real data rather
    /// than a leading gap.
    pub fn first_valid(&self, c: usize) -> usize {
        self.first_valid[c]
    }

    pub fn column(&self, c: usize) -> &[f64] {
        let t = self.dates.len();
        &self.values[c * t..(c + 1) * t]
    }

    pub fn currency_index(&self, code: &str) -> Option<usize> {
        self.currencies.iter().position(|c| c == code)
    }

    /// Serialize to the same delimited layout the parser accepts: a `date`
    /// header plus one column per currency. Cells in leading gaps are empty.
    pub fn to_delimited(&self, delim: char) -> String {
        let mut out = String::from("date");
        for c in &self.currencies {
            out.push(delim);
            out.push_str(c);
        }
        out.push('\n');
        for t in 0..self.rows() {
            out.push_str(self.dates[t].as_str());
            for c in 0..self.currencies.len() {
                out.push(delim);
                if t >= self.first_valid[c] {
                    out.push_str(&format!("{}", self.column(c)[t]));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn date(s: &str) -> Date {
        Date::parse(s).unwrap()
    }

    fn table(text: &str) -> RateTable {
        parse_rates(text, "XAG").unwrap()
    }

    #[test]
    fn parses_well_formed_input() {
        let t = table("date,USD,EUR\n2002-01-02,1.5,2.5\n2002-01-03,1.6,2.4\n");
        assert_eq!(t.rows(), 2);
        assert_eq!(t.currencies(), &["USD".to_string(), "EUR".to_string()]);
        assert_eq!(t.base(), "XAG");
        assert_eq!(t.column(0), &[1.5, 1.6]);
        assert_eq!(t.column(1), &[2.5, 2.4]);
    }

    #[test]
    fn accepts_tabs_and_sorts_rows() {
        let shuffled = "date\tUSD\n2002-01-04\t3.0\n2002-01-02\t1.0\n2002-01-03\t2.0\n";
        let t = table(shuffled);
        // Reference: parse the pre-sorted text and compare contents.
        let sorted = table("date\tUSD\n2002-01-02\t1.0\n2002-01-03\t2.0\n2002-01-04\t3.0\n");
        assert_eq!(t.dates(), sorted.dates());
        assert_eq!(t.column(0), sorted.column(0));
    }

    #[test]
    fn rejects_bad_cells_with_coordinates() {
        let err = parse_rates("date,USD\n2002-01-02,-1.0\n", "XAG").unwrap_err();
        match err {
            IngestError::BadCell { row, column, .. } => {
                assert_eq!(row, 2);
                assert_eq!(column, "USD");
            }
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse_rates("date,USD\n2002-01-02,abc\n", "XAG").unwrap_err();
        assert!(matches!(err, IngestError::BadCell { row: 2, .. }));
        let err = parse_rates("date,USD\n2002-01-02,1.0\n2002-01-02,2.0\n", "XAG").unwrap_err();
        assert_eq!(err, IngestError::DuplicateDate("2002-01-02".into()));
        let err = parse_rates("day,USD\n2002-01-02,1.0\n", "XAG").unwrap_err();
        assert!(matches!(err, IngestError::MissingDateHeader(_)));
        let err = parse_rates("date,USD,USD\n2002-01-02,1.0,1.0\n", "XAG").unwrap_err();
        assert_eq!(err, IngestError::DuplicateCurrency("USD".into()));
    }

    #[test]
    fn forward_fills_missing_and_tracks_leading_gaps() {
        let t = table("date,USD,EUR\n2002-01-02,,2.0\n2002-01-03,1.5,\n2002-01-04,,2.2\n");
        assert_eq!(t.first_valid(0), 1);
        assert_eq!(t.first_valid(1), 0);
        assert!(t.column(0)[0].is_nan());
        assert_eq!(t.column(0)[1..], [1.5, 1.5]);
        assert_eq!(t.column(1), &[2.0, 2.0, 2.2]);
    }

    #[test]
    fn redenominate_identity_and_ratio() {
        let t = table("date,A,B\n2002-01-02,2.0,4.0\n2002-01-03,3.0,6.0\n");
        let same = t.redenominate("XAG").unwrap();
        assert_eq!(same.column(0), t.column(0));
        assert_eq!(same.base(), "XAG");

        let b = t.redenominate("B").unwrap();
        assert_eq!(b.base(), "B");
        assert_eq!(b.currencies(), &["A".to_string(), "XAG".to_string()]);
        assert_eq!(b.column(0), &[0.5, 0.5]);
        assert_eq!(b.column(1), &[0.25, 1.0 / 6.0]);
        assert!(t.redenominate("Z").is_err());
    }

    #[test]
    fn log_returns_examples() {
        let e = core::f64::consts::E;
        let t = RateTable::from_columns(
            alloc::vec![date("2002-01-02"), date("2002-01-03"), date("2002-01-04")],
            alloc::vec!["A".into(), "B".into()],
            &[alloc::vec![1.0, e, e * e], alloc::vec![5.0, 5.0, 5.0]],
            "XAG",
        )
        .unwrap();
        let r = t.log_returns();
        assert_eq!(r.rows(), 2);
        assert!((r.column(0)[0] - 1.0).abs() < 1e-15);
        assert!((r.column(0)[1] - 1.0).abs() < 1e-15);
        assert_eq!(r.column(1), &[0.0, 0.0]);

        let t = RateTable::from_columns(
            alloc::vec![date("2002-01-02"), date("2002-01-03")],
            alloc::vec!["A".into()],
            &[alloc::vec![100.0, 110.0]],
            "XAG",
        )
        .unwrap();
        let r = t.log_returns();
        // Literal two-log form.
        assert_eq!(r.column(0)[0], math::ln(110.0) - math::ln(100.0));
        assert!((r.column(0)[0] - 0.09531017980432486).abs() < 1e-12);
    }

    #[test]
    fn returns_roundtrip_through_delimited_text() {
        let t = table("date,USD,EUR\n2002-01-02,1.5,2.5\n2002-01-03,1.6,2.4\n2002-01-04,1.7,2.6\n");
        let r = t.log_returns();
        let text = r.to_delimited(',');
        assert!(text.starts_with("date,USD,EUR\n2002-01-03,"));
        assert_eq!(text.lines().count(), 3);
    }

    proptest! {
        #[test]
        fn redenominate_roundtrip(
            seed in 0u64..500,
            rows in 2usize..12,
            cols in 2usize..6,
        ) {
            let mut s = crate::rng::RngStream::new(seed);
            let dates: Vec<Date> = (0..rows)
                .map(|i| date(&format!("2002-01-{:02}", i + 1)))
                .collect();
            let currencies: Vec<String> = (0..cols).map(|c| format!("C{c:02}")).collect();
            let columns: Vec<Vec<f64>> = (0..cols)
                .map(|_| (0..rows).map(|_| math::exp(s.next_normal())).collect())
                .collect();
            let t = RateTable::from_columns(dates, currencies, &columns, "X").unwrap();
            let roundtrip = t.redenominate("C00").unwrap().redenominate("X").unwrap();
            for code in t.currencies() {
                let a = t.column(t.currency_index(code).unwrap());
                let b = roundtrip.column(roundtrip.currency_index(code).unwrap());
                for (x, y) in a.iter().zip(b) {
                    prop_assert!(((x - y) / x).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn column_returns_telescope(seed in 0u64..500, rows in 2usize..40) {
            let mut s = crate::rng::RngStream::new(seed);
            let dates: Vec<Date> = (0..rows)
                .map(|i| date(&format!("2003-02-{:02}", i + 1)))
                .collect();
            let col: Vec<f64> = (0..rows).map(|_| math::exp(s.next_normal())).collect();
            let t = RateTable::from_columns(dates, alloc::vec!["A".into()], &[col.clone()], "X")
                .unwrap();
            let r = t.log_returns();
            let total: f64 = r.column(0).iter().sum();
            let expected = math::ln(col[rows - 1] / col[0]);
            prop_assert!((total - expected).abs() < 1e-10);
        }

        #[test]
        fn redenomination_subtracts_base_returns(seed in 0u64..300) {
            let mut s = crate::rng::RngStream::new(seed);
            let rows = 10;
            let dates: Vec<Date> = (0..rows)
                .map(|i| date(&format!("2004-03-{:02}", i + 1)))
                .collect();
            let columns: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..rows).map(|_| math::exp(0.1 * s.next_normal())).collect())
                .collect();
            let t = RateTable::from_columns(
                dates,
                alloc::vec!["A".into(), "B".into(), "C".into()],
                &columns,
                "X",
            )
            .unwrap();
            let r = t.log_returns();
            let rb = t.redenominate("B").unwrap().log_returns();
            // Returns in the new base are the old returns minus the base
            // column's returns.
            for code in ["A", "C"] {
                let orig = r.column(r.currency_index(code).unwrap());
                let base_col = r.column(r.currency_index("B").unwrap());
                let new = rb.column(rb.currency_index(code).unwrap());
                for t_idx in 0..orig.len() {
                    prop_assert!((new[t_idx] - (orig[t_idx] - base_col[t_idx])).abs() < 1e-12);
                }
            }
        }
    }
}
