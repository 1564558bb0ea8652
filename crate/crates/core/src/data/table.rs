use std::io::Read;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::kernel::ClassId;

use super::Dataset;

/// Loads a headed numeric CSV. The label column is `label_column` when
/// given, otherwise a column named `class` if present; without one every
/// pattern is unlabeled. Class ids follow first appearance.
pub fn load_csv(path: impl AsRef<Path>, label_column: Option<&str>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    parse_csv(file, label_column, path)
}

pub fn parse_csv(reader: impl Read, label_column: Option<&str>, origin: &Path) -> Result<Dataset> {
    let err = |line: usize, msg: String| Error::Parse {
        path: PathBuf::from(origin),
        line,
        msg,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(err(1, "empty file or missing header".into()));
    }

    let label_idx = match label_column {
        Some(name) => Some(
            header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| err(1, format!("no column named `{name}`")))?,
        ),
        None => header.iter().position(|h| h.eq_ignore_ascii_case("class")),
    };
    let dim_names: Vec<String> = header
        .iter()
        .enumerate()
        .filter(|&(i, _)| Some(i) != label_idx)
        .map(|(_, h)| h.clone())
        .collect();

    let mut patterns = Vec::new();
    let mut labels = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(row + 2, |p| p.line() as usize);
        let mut values = Vec::with_capacity(dim_names.len());
        let mut label = None;
        for (i, cell) in record.iter().enumerate() {
            if Some(i) == label_idx {
                if cell.is_empty() || cell == "?" {
                    continue;
                }
                let id = match class_names.iter().position(|c| c == cell) {
                    Some(id) => id,
                    None => {
                        class_names.push(cell.to_string());
                        class_names.len() - 1
                    }
                };
                label = Some(ClassId(id as u32));
            } else {
                let v: f64 = cell.parse().map_err(|_| {
                    err(
                        line,
                        format!("`{cell}` in column `{}` is not a number", header[i]),
                    )
                })?;
                if !v.is_finite() {
                    return Err(err(line, format!("`{cell}` is not finite")));
                }
                values.push(v);
            }
        }
        patterns.push(values);
        labels.push(label);
    }
    if patterns.is_empty() {
        return Err(err(1, "no data rows".into()));
    }
    Dataset::new(patterns, labels, class_names, dim_names)
}
