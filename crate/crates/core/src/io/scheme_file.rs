//! Plain-text relation tables: a header `n r`, then `n` rows of `n` relation
//! indices. Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use crate::error::IoError;
use crate::scheme::{verify_scheme, RelationTable, Scheme};

/// Canonically relabelled table text.
pub fn write_scheme(s: &Scheme) -> String {
    write_table(s.canonicalize().0.table())
}

/// The table as stored, without relabelling.
pub fn write_table(t: &RelationTable) -> String {
    let n = t.points();
    let mut out = String::with_capacity(n * n * 3 + 16);
    let _ = writeln!(out, "{} {}", n, t.rank());
    for x in 0..n {
        let row: Vec<String> = t.row(x).iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>, IoError> {
    line.split_whitespace()
        .map(|w| w.parse().map_err(|_| IoError::Parse { line: lineno, msg: format!("not an integer: {w:?}") }))
        .collect()
}

/// Parses and verifies. Relation 0 must be the diagonal.
pub fn read_scheme(text: &str) -> Result<Scheme, IoError> {
    let table = read_table(text)?;
    Ok(verify_scheme(&table)?)
}

/// Parses without verifying the axioms; only the diagonal is checked.
pub fn read_table(text: &str) -> Result<RelationTable, IoError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(IoError::Parse { line: 0, msg: "missing header".into() })?;
    let h = numbers(header, hline)?;
    let [n, r] = h[..] else {
        return Err(IoError::Parse { line: hline, msg: "header must be `n r`".into() });
    };
    let mut rows = Vec::with_capacity(n);
    for (lineno, l) in lines {
        let row = numbers(l, lineno)?;
        if row.len() != n {
            return Err(IoError::Parse { line: lineno, msg: format!("expected {n} entries, found {}", row.len()) });
        }
        if let Some(&v) = row.iter().find(|&&v| v >= r) {
            return Err(IoError::Parse { line: lineno, msg: format!("relation {v} out of range 0..{r}") });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(IoError::Parse { line: hline, msg: format!("expected {n} rows, found {}", rows.len()) });
    }
    if let Some(x) = (0..n).find(|&x| rows[x][x] != 0) {
        return Err(IoError::Diagonal(x));
    }
    let table = RelationTable::from_rows(&rows)?;
    if table.rank() != r {
        return Err(IoError::Parse {
            line: hline,
            msg: format!("header says {r} relations, table uses {}", table.rank()),
        });
    }
    Ok(table)
}

/// Best-effort reader for catalogue-style matrices: any leading lines that
/// are not all integers are skipped, the remaining integers must form a
/// square matrix, and relation labels are renumbered by first appearance
/// with the diagonal label first.
pub fn import_matrix(text: &str) -> Result<Scheme, IoError> {
    let mut values = Vec::new();
    let mut started = false;
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        match numbers(l, i + 1) {
            Ok(v) => {
                started = true;
                values.extend(v);
            }
            Err(e) if started => return Err(e),
            Err(_) => {}
        }
    }
    let n = (values.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != values.len() {
        return Err(IoError::Unsupported(format!("{} integers do not form a square matrix", values.len())));
    }
    let mut label = std::collections::HashMap::new();
    label.insert(values[0], 0usize);
    let rows: Vec<Vec<usize>> = values
        .chunks(n)
        .map(|row| {
            row.iter()
                .map(|v| {
                    let next = label.len();
                    *label.entry(*v).or_insert(next)
                })
                .collect()
        })
        .collect();
    if let Some(x) = (0..n).find(|&x| rows[x][x] != 0) {
        return Err(IoError::Diagonal(x));
    }
    Ok(verify_scheme(&RelationTable::from_rows(&rows)?)?)
}
