//! CSV tables keyed by grid point, written atomically and read back losslessly.
//!
//! Numbers are printed with Rust's shortest round-trip formatting, so parsing
//! an emitted table and writing it again reproduces the same bytes.

use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::CliError;

/// Rows `k, v1, …, vn` under a header, preceded by optional `#` comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct GridTable {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<(i64, Vec<f64>)>,
}

impl GridTable {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            comments: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    /// Header `k,<prefix>1,…,<prefix>n`.
    pub fn with_columns(prefix: &str, n: usize) -> Self {
        let mut header = vec!["k".to_string()];
        header.extend((1..=n).map(|i| format!("{prefix}{i}")));
        Self::new(header)
    }

    pub fn push(&mut self, k: i64, values: impl IntoIterator<Item = f64>) {
        self.rows.push((k, values.into_iter().collect()));
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let index = self.header.iter().position(|h| h == name)?.checked_sub(1)?;
        Some(self.rows.iter().map(|(_, v)| v[index]).collect())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for line in &self.comments {
            out.extend_from_slice(format!("# {line}\n").as_bytes());
        }
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        writer.write_record(&self.header).expect("writing to memory");
        for (k, values) in &self.rows {
            let mut record = vec![k.to_string()];
            record.extend(values.iter().map(|x| format!("{x:?}")));
            writer.write_record(&record).expect("writing to memory");
        }
        writer.into_inner().expect("flushing to memory")
    }

    pub fn parse(bytes: &[u8]) -> Result<Self, CliError> {
        let text = std::str::from_utf8(bytes).map_err(|e| CliError::Csv(e.to_string()))?;
        let comments = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim_start().to_string())
            .collect();
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(bytes);
        let header: Vec<String> = reader
            .headers()
            .map_err(|e| CliError::Csv(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if header.first().map(String::as_str) != Some("k") {
            return Err(CliError::Csv("first column must be `k`".into()));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| CliError::Csv(e.to_string()))?;
            let line = record.position().map_or(0, |p| p.line());
            let k = record[0]
                .parse()
                .map_err(|_| CliError::Csv(format!("line {line}: bad grid point {:?}", &record[0])))?;
            let values = record
                .iter()
                .skip(1)
                .map(|cell| {
                    cell.parse::<f64>()
                        .map_err(|_| CliError::Csv(format!("line {line}: bad number {cell:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push((k, values));
        }
        Ok(Self { comments, header, rows })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&bytes)
    }

    /// Writes to a temporary file beside `path` and renames it into place,
    /// so a failed run never leaves a partial file.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
        tmp.write_all(&self.to_bytes()).map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
        Ok(())
    }
}
