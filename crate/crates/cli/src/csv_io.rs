//! Profile tables: a `t,f` header, optional `#` comment lines, one sample per row.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

#[derive(Debug)]
pub struct CsvError {
    pub line: Option<u64>,
    pub message: String,
}

impl fmt::Display for CsvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn at(line: u64, message: impl Into<String>) -> CsvError {
    CsvError {
        line: Some(line),
        message: message.into(),
    }
}

/// Samples `(t, f)` read from a profile table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub t: Vec<f64>,
    pub f: Vec<f64>,
}

pub fn read_profile(path: &Path) -> Result<Table, CsvError> {
    let file = File::open(path).map_err(|e| CsvError {
        line: None,
        message: format!("cannot open {}: {e}", path.display()),
    })?;
    parse_profile(file)
}

pub fn parse_profile<R: Read>(input: R) -> Result<Table, CsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(false)
        .from_reader(input);
    let mut records = reader.records();
    let header = match records.next() {
        Some(Ok(h)) => h,
        Some(Err(e)) => return Err(csv_error(e)),
        None => return Err(at(1, "empty file; expected header `t,f`")),
    };
    let header_line = header.position().map_or(1, |p| p.line());
    if header.len() != 2 || &header[0] != "t" || &header[1] != "f" {
        return Err(at(
            header_line,
            format!(
                "expected header `t,f`, found `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }

    let mut table = Table {
        t: Vec::new(),
        f: Vec::new(),
    };
    for record in records {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(at(line, format!("expected 2 fields, found {}", record.len())));
        }
        let parse = |i: usize, name: &str| {
            record[i]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| at(line, format!("{name} = `{}` is not a finite number", &record[i])))
        };
        let t = parse(0, "t")?;
        let f = parse(1, "f")?;
        if f < 0.0 {
            return Err(at(line, format!("f = {f} is negative")));
        }
        match table.t.last() {
            None if t != 0.0 => return Err(at(line, format!("t must start at 0, found {t}"))),
            Some(&prev) if t <= prev => {
                return Err(at(line, format!("t = {t} does not increase (previous {prev})")));
            }
            _ => {}
        }
        table.t.push(t);
        table.f.push(f);
    }
    if table.t.is_empty() {
        return Err(at(header_line, "no samples after the header"));
    }
    Ok(table)
}

fn csv_error(e: csv::Error) -> CsvError {
    CsvError {
        line: e.position().map(|p| p.line()),
        message: e.to_string(),
    }
}

/// Writes `# comment`, the `t,f` header and one row per sample.
/// Values use the shortest representation that round-trips.
pub fn write_profile(path: &Path, comment: &str, t: &[f64], f: &[f64]) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# {comment}")?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["t", "f"])?;
    for (a, b) in t.iter().zip(f) {
        writer.write_record([a.to_string(), b.to_string()])?;
    }
    writer.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let table = parse_profile("# n=3\nt, f\n0,0\n0.5, 0.479425538604203\n# mid\n1,0\n".as_bytes()).unwrap();
        assert_eq!(table.t, vec![0.0, 0.5, 1.0]);
        assert_eq!(table.f[1], 0.479425538604203);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_profile("t,f\n0,0\n0.5,0.4\n0.4,0.3\n".as_bytes()).unwrap_err();
        assert_eq!(err.line, Some(4));
        let err = parse_profile("t,f\n0,0\n0.5,-0.1\n".as_bytes()).unwrap_err();
        assert_eq!(err.line, Some(3));
        assert!(err.to_string().contains("negative"));
        let err = parse_profile("0,0\n0.5,0.4\n".as_bytes()).unwrap_err();
        assert_eq!(err.line, Some(1));
        let err = parse_profile("t,f\n0,0\n0.5,abc\n".as_bytes()).unwrap_err();
        assert_eq!(err.line, Some(3));
        let err = parse_profile("t,f\n0,0\n1,2,3\n".as_bytes()).unwrap_err();
        assert_eq!(err.line, Some(3));
    }

    #[test]
    fn written_tables_read_back_exactly() {
        let dir = std::env::temp_dir().join(format!("warpvol-csv-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("p.csv");
        let t = vec![0.0, 0.1, 0.2 + 1e-17, 1.0 / 3.0];
        let f = vec![0.0, 0.1f64.sin(), 2f64.sqrt(), 0.0];
        write_profile(&path, "n=3 eps=1 m=1 grid=3", &t, &f).unwrap();
        let table = read_profile(&path).unwrap();
        assert_eq!(table.t, t);
        assert_eq!(table.f, f);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
