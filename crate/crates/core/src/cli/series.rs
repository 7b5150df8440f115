//! CSV ingestion: a header row, comma separators, `.` decimal point.

use std::path::Path;

use super::CliError;
use crate::econmap::{EconSeries, Period};

fn open(path: &Path) -> Result<csv::Reader<std::fs::File>, CliError> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h == name)
}

fn require(headers: &csv::StringRecord, name: &str) -> Result<usize, CliError> {
    column(headers, name)
        .ok_or_else(|| CliError::parse(Some(1), format!("missing column `{name}`")))
}

fn number(record: &csv::StringRecord, idx: usize, name: &str) -> Result<f64, CliError> {
    let line = record.position().map(|p| p.line());
    let cell = record.get(idx).unwrap_or("");
    let v: f64 = cell
        .parse()
        .map_err(|_| CliError::parse(line, format!("column `{name}`: `{cell}` is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::parse(
            line,
            format!("column `{name}` must be finite"),
        ));
    }
    Ok(v)
}

fn records(reader: &mut csv::Reader<std::fs::File>) -> Result<Vec<csv::StringRecord>, CliError> {
    reader
        .records()
        .map(|r| {
            r.map_err(|e| {
                let line = e.position().map(|p| p.line());
                CliError::parse(line, e.to_string())
            })
        })
        .collect()
}

/// Reads two named numeric columns.
pub fn read_columns(path: &Path, x: &str, y: &str) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let mut reader = open(path)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::parse(Some(1), e.to_string()))?
        .clone();
    let xi = require(&headers, x)?;
    let yi = require(&headers, y)?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for record in records(&mut reader)? {
        xs.push(number(&record, xi, x)?);
        ys.push(number(&record, yi, y)?);
    }
    Ok((xs, ys))
}

/// Reads `period, investments, expenses, incomes[, quantity_out]`.
///
/// An empty `quantity_out` cell means the count is unknown for that period.
pub fn read_series(path: &Path) -> Result<EconSeries, CliError> {
    let mut reader = open(path)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::parse(Some(1), e.to_string()))?
        .clone();
    let label_i = require(&headers, "period")?;
    let inv_i = require(&headers, "investments")?;
    let exp_i = require(&headers, "expenses")?;
    let inc_i = require(&headers, "incomes")?;
    let qty_i = column(&headers, "quantity_out");

    let mut periods = Vec::new();
    for record in records(&mut reader)? {
        let quantity_out = match qty_i.map(|i| record.get(i).unwrap_or("")) {
            None | Some("") => None,
            Some(_) => Some(number(&record, qty_i.unwrap(), "quantity_out")?),
        };
        periods.push(Period {
            label: record.get(label_i).unwrap_or("").to_string(),
            investments: number(&record, inv_i, "investments")?,
            expenses: number(&record, exp_i, "expenses")?,
            incomes: number(&record, inc_i, "incomes")?,
            quantity_out,
        });
    }
    EconSeries::new(periods).map_err(|e| CliError::parse(None, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_series_with_optional_quantity() {
        let f = file("period,investments,expenses,incomes,quantity_out\n2001,200,0,1000,\n2002, 250 ,10,1300,40\n");
        let s = read_series(f.path()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.periods()[0].quantity_out, None);
        assert_eq!(s.periods()[1].investments, 250.0);
        assert_eq!(s.periods()[1].quantity_out, Some(40.0));
    }

    #[test]
    fn bad_cell_names_its_line() {
        let f = file("period,investments,expenses,incomes\n2001,200,0,1000\n2002,2.5e,0,1\n");
        match read_series(f.path()) {
            Err(CliError::Parse {
                line: Some(3),
                message,
            }) => assert!(message.contains("investments")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_column_and_file() {
        let f = file("period,investments,incomes\n1,2,3\n");
        assert!(matches!(read_series(f.path()), Err(CliError::Parse { .. })));
        assert!(matches!(
            read_columns(f.path(), "investments", "gdp"),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(
            read_series(Path::new("/nonexistent/series.csv")),
            Err(CliError::Io { .. })
        ));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let f = file("period,investments,expenses,incomes\n1,2,0,3\n1,2,0,3\n");
        assert!(matches!(read_series(f.path()), Err(CliError::Parse { .. })));
    }
}
