//! libsvm sparse format: `<label> <index>:<value> ...`, 1-based ascending
//! indices, `#` starts a comment.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use dwta_core::{Dataset, SparseVector, ValueMode};

use crate::error::{Error, Result};

/// Parses libsvm text. The dimension is the largest index seen unless `dim`
/// is given (then every index must fit). Blank and comment-only lines are
/// skipped.
/// Line number, label and entries of one parsed row.
type Row = (usize, i64, Vec<(usize, f64)>);

pub fn parse(text: &str, dim: Option<usize>, mode: ValueMode, path: &Path) -> Result<Dataset> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut rows: Vec<Row> = Vec::new();
    let mut max_index = 0;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let label_field = fields.next().expect("non-empty line has a field");
        let label = parse_label(label_field)
            .ok_or_else(|| err(line_no, format!("bad label {label_field:?}")))?;
        let mut entries = Vec::new();
        let mut last = 0;
        for field in fields {
            let (i, v) = field
                .split_once(':')
                .ok_or_else(|| err(line_no, format!("expected index:value, got {field:?}")))?;
            let index: usize = i
                .parse()
                .map_err(|_| err(line_no, format!("bad index {i:?}")))?;
            let value: f64 = v
                .parse()
                .map_err(|_| err(line_no, format!("bad value {v:?}")))?;
            if index == 0 {
                return Err(err(line_no, "indices are 1-based".into()));
            }
            if index <= last {
                return Err(err(line_no, format!("index {index} not ascending")));
            }
            last = index;
            entries.push((index, value));
        }
        max_index = max_index.max(last);
        rows.push((line_no, label, entries));
    }
    let dim = match dim {
        Some(d) if d < max_index => {
            return Err(Error::Invalid(format!(
                "{}: index {max_index} exceeds --dim {d}",
                path.display()
            )))
        }
        Some(d) => d,
        None => max_index.max(1),
    };
    let mut vectors = Vec::with_capacity(rows.len());
    let mut labels = Vec::with_capacity(rows.len());
    for (line_no, label, entries) in rows {
        let v =
            SparseVector::with_mode(dim, entries, mode).map_err(|e| err(line_no, e.to_string()))?;
        vectors.push(v);
        labels.push(label);
    }
    Ok(Dataset::new(dim, vectors, Some(labels))?)
}

fn parse_label(s: &str) -> Option<i64> {
    s.parse::<i64>().ok().or_else(|| {
        let f: f64 = s.parse().ok()?;
        (f.fract() == 0.0).then_some(f as i64)
    })
}

pub fn read(path: &Path, dim: Option<usize>, mode: ValueMode) -> Result<Dataset> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text, dim, mode, path)
}

/// Renders a dataset; missing labels are written as 0.
pub fn render(ds: &Dataset) -> String {
    let mut out = String::new();
    for (j, v) in ds.vectors().iter().enumerate() {
        let label = ds.labels().map_or(0, |l| l[j]);
        write!(out, "{label}").unwrap();
        for &(i, x) in v.entries() {
            write!(out, " {i}:{x}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write(path: &Path, ds: &Dataset) -> Result<()> {
    fs::write(path, render(ds)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("<test>")
    }

    #[test]
    fn parses_worked_pair() {
        let text = "# worked pair\n1 3:5 6:7 7:6\n2 3:1  # second\n\n";
        let ds = parse(text, Some(9), ValueMode::Strict, p()).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.dim(), 9);
        assert_eq!(ds.labels().unwrap(), &[1, 2]);
        assert_eq!(
            ds.vectors()[0].to_dense(),
            vec![0., 0., 5., 0., 0., 7., 6., 0., 0.]
        );
    }

    #[test]
    fn dimension_defaults_to_max_index() {
        let ds = parse("0 2:1\n0 5:1\n", None, ValueMode::Strict, p()).unwrap();
        assert_eq!(ds.dim(), 5);
        assert!(parse("0 2:1\n0 5:1\n", Some(4), ValueMode::Strict, p()).is_err());
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in ["x 1:2", "1 2", "1 0:3", "1 3:1 2:1", "1 2:a", "1 2:-1"] {
            assert!(parse(bad, None, ValueMode::Strict, p()).is_err(), "{bad}");
        }
        assert!(parse("1 2:-1", None, ValueMode::Permissive, p()).is_ok());
    }

    #[test]
    fn float_labels_and_all_zero_rows() {
        let ds = parse("+1 1:2\n-1\n3.0 2:1\n", None, ValueMode::Strict, p()).unwrap();
        assert_eq!(ds.labels().unwrap(), &[1, -1, 3]);
        assert!(ds.vectors()[1].is_zero());
    }

    #[test]
    fn render_roundtrip() {
        let text = "1 3:5 6:7.5 7:6\n-2 3:1\n";
        let ds = parse(text, Some(9), ValueMode::Strict, p()).unwrap();
        assert_eq!(render(&ds), text);
    }
}
