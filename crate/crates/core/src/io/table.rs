use std::path::Path;

use super::lexer::{blocks, Block, Token};
use super::{read_text, Sections};
use crate::error::{Error, ParseError, Result};
use crate::semiring::{Table, TableSemiring};

fn label_index(elements: &[String], t: &Token) -> Result<usize, ParseError> {
    elements
        .iter()
        .position(|e| *e == t.text)
        .ok_or_else(|| t.error(format!("unknown element `{}`", t.text)))
}

fn grid(elements: &[String], b: &Block) -> Result<Vec<Vec<usize>>, ParseError> {
    let n = elements.len();
    b.grid(n, n)?
        .iter()
        .map(|row| row.iter().map(|t| label_index(elements, t)).collect())
        .collect()
}

/// Parses the table format:
///
/// ```text
/// elements: 0 1
/// zero: 0
/// one: 1
/// add:
///   0 1
///   1 1
/// mul:
///   0 0
///   0 1
/// ```
///
/// Only the shape is checked; axioms are left to
/// [`validate_table_semiring`](crate::semiring::validate_table_semiring).
pub fn parse_table(text: &str) -> Result<TableSemiring, ParseError> {
    let mut s = Sections::new(blocks(text)?, text)?;
    let el = s.require("elements")?;
    el.no_rows()?;
    if el.inline.is_empty() {
        return Err(el.end_error("at least one element is required"));
    }
    let mut elements: Vec<String> = Vec::new();
    for t in &el.inline {
        if elements.contains(&t.text) {
            return Err(t.error(format!("duplicate element `{}`", t.text)));
        }
        if t.text.ends_with(':') {
            return Err(t.error("element labels cannot end with `:`"));
        }
        elements.push(t.text.clone());
    }
    let zero = s.require("zero")?;
    let zero = label_index(&elements, &zero.inline_exact(1)?[0])?;
    let one = s.require("one")?;
    let one = label_index(&elements, &one.inline_exact(1)?[0])?;
    let add = grid(&elements, &s.require("add")?)?;
    let mul = grid(&elements, &s.require("mul")?)?;
    s.finish()?;
    TableSemiring::new(elements, add, mul, zero, one).map_err(|e| ParseError::new(el.line, el.column, e.to_string()))
}

pub fn format_table(t: &TableSemiring) -> String {
    let el = t.elements();
    let mut out = format!("elements: {}\n", el.join(" "));
    out += &format!("zero: {}\none: {}\n", el[t.zero_index()], el[t.one_index()]);
    for (name, table) in [("add", t.add_table()), ("mul", t.mul_table())] {
        out += &format!("{name}:\n");
        for row in table {
            let labels: Vec<&str> = row.iter().map(|&i| el[i].as_str()).collect();
            out += &format!("  {}\n", labels.join(" "));
        }
    }
    out
}

/// Loads and validates a table file. The handle remembers the canonical path.
pub fn read_table(path: &Path) -> Result<Table> {
    let text = read_text(path)?;
    let t = parse_table(&text).map_err(|e| e.in_file(path))?;
    let canonical = path.canonicalize().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Table::new(t)?.with_source(canonical))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for t in [TableSemiring::boolean(), TableSemiring::integers_mod(4)] {
            assert_eq!(parse_table(&format_table(&t)).unwrap(), t);
        }
    }

    #[test]
    fn unknown_label_position() {
        let text = "elements: 0 1\nzero: 0\none: 1\nadd:\n0 1\n1 x\nmul:\n0 0\n0 1\n";
        let e = parse_table(text).unwrap_err();
        assert_eq!((e.line, e.column), (6, 3));
    }

    #[test]
    fn missing_section() {
        let e = parse_table("elements: 0 1\nzero: 0\none: 1\n").unwrap_err();
        assert!(e.message.contains("add"));
    }
}
