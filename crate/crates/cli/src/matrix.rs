//! Plain-text generator matrices.
//!
//! Format: `#` comment lines, one `q <order>` line, then one row per
//! line as whitespace-separated elements in the field's notation
//! (integers for prime fields, `w^k` for extension fields):
//!
//! ```text
//! # [4,2] code over GF(4)
//! q 4
//! 1 0 w 1
//! 0 1 w^2 w
//! ```

use std::path::Path;
use std::sync::Arc;

use ccwb_core::constacode::LinearCode;
use ccwb_core::field::{Fe, FieldSpec};
use ccwb_core::{Error, Result};

pub fn load(path: &Path) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> Result<LinearCode> {
    let mut field: Option<Arc<FieldSpec>> = None;
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(order) = line.strip_prefix("q ") {
            if field.is_some() {
                return Err(Error::parse(format!("line {}: duplicate q line", idx + 1)));
            }
            let q: u32 = order
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("line {}: bad field order {order:?}", idx + 1)))?;
            field = Some(Arc::new(FieldSpec::of_order(q)?));
            continue;
        }
        let f = field
            .as_ref()
            .ok_or_else(|| Error::parse(format!("line {}: rows before the q line", idx + 1)))?;
        let row = line
            .split_whitespace()
            .map(|tok| f.parse_elem(tok))
            .collect::<Result<Vec<Fe>>>()
            .map_err(|e| Error::parse(format!("line {}: {e}", idx + 1)))?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::parse(format!(
                    "line {}: row has {} entries, expected {}",
                    idx + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    let field = field.ok_or_else(|| Error::parse("missing q line"))?;
    let n = rows.first().map(Vec::len).ok_or_else(|| Error::parse("no rows"))?;
    Ok(LinearCode::from_span(field, n, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let code = parse("# demo\nq 4\n1 0 w 1\n0 1 w^2 w\n1 1 1 w^2\n").unwrap();
        assert_eq!((code.n, code.k()), (4, 2)); // third row is dependent
        assert_eq!(code.field.q, 4);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("q 4\n1 0\n1 0 1\n").is_err()); // ragged rows
        assert!(parse("1 0 1\n").is_err()); // rows before q
        assert!(parse("q 4\n").is_err()); // no rows
        assert!(parse("q 4\n2 0\n").is_err()); // 2 is not GF(4) notation
    }
}
