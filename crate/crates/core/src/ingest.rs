//! Reading samples from text: one value per line or a named CSV column.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::empirical::Sample;
use crate::error::{Error, Result};

fn parse_value(source_name: &str, line: usize, field: &str) -> Result<f64> {
    let input_error = |reason: String| Error::Input {
        source_name: source_name.to_string(),
        line,
        reason,
    };
    let value: f64 = field
        .parse()
        .map_err(|_| input_error(format!("`{field}` is not a number")))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(input_error(format!("{value} is not a strictly positive finite number")));
    }
    Ok(value)
}

fn finish(source_name: &str, values: Vec<f64>) -> Result<Sample> {
    if values.is_empty() {
        return Err(Error::Input {
            source_name: source_name.to_string(),
            line: 0,
            reason: "no observations".to_string(),
        });
    }
    Sample::new(values)
}

/// One number per line. Text after `#` and blank lines are ignored.
pub fn read_values<R: Read>(reader: R, source_name: &str) -> Result<Sample> {
    let mut values = Vec::new();
    for (index, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or_default().trim();
        if content.is_empty() {
            continue;
        }
        values.push(parse_value(source_name, index + 1, content)?);
    }
    finish(source_name, values)
}

/// The column named `column` of a CSV file with a header row.
pub fn read_csv_column<R: Read>(reader: R, source_name: &str, column: &str) -> Result<Sample> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let csv_error = |line: usize, e: csv::Error| Error::Input {
        source_name: source_name.to_string(),
        line,
        reason: e.to_string(),
    };
    let headers = rdr.headers().map_err(|e| csv_error(1, e))?;
    let position = headers.iter().position(|h| h == column).ok_or_else(|| Error::Input {
        source_name: source_name.to_string(),
        line: 1,
        reason: format!("no column named `{column}`"),
    })?;
    let mut values = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            csv_error(line, e)
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = record.get(position).unwrap_or_default();
        values.push(parse_value(source_name, line, field)?);
    }
    finish(source_name, values)
}

/// Reads `path` as plain values, or as a CSV column when `column` is given.
pub fn read_path(path: &Path, column: Option<&str>) -> Result<Sample> {
    let name = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::Io(format!("{name}: {e}")))?;
    match column {
        Some(column) => read_csv_column(file, &name, column),
        None => read_values(file, &name),
    }
}
