use crate::error::ParseError;

/// A whitespace-separated token with its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }
}

/// A `key: inline…` line followed by zero or more row lines.
#[derive(Debug, Clone)]
pub struct Block {
    pub key: String,
    pub line: usize,
    pub column: usize,
    pub inline: Vec<Token>,
    /// Text after the colon, trimmed, for values that may contain spaces.
    pub rest: String,
    pub rows: Vec<Vec<Token>>,
}

impl Block {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }

    /// Position just past the last token of the block, for "missing" errors.
    pub fn end_error(&self, message: impl Into<String>) -> ParseError {
        let last = self.rows.last().and_then(|r| r.last()).or(self.inline.last());
        match last {
            Some(t) => ParseError::new(t.line, t.column + t.text.chars().count(), message),
            None => ParseError::new(self.line, self.column + self.key.chars().count() + 1, message),
        }
    }

    pub fn no_rows(&self) -> Result<(), ParseError> {
        match self.rows.first() {
            Some(row) => Err(row[0].error(format!("unexpected row after `{}:`", self.key))),
            None => Ok(()),
        }
    }

    pub fn no_inline(&self) -> Result<(), ParseError> {
        match self.inline.first() {
            Some(t) => Err(t.error(format!("unexpected value after `{}:`", self.key))),
            None => Ok(()),
        }
    }

    /// Exactly `n` inline values and no rows.
    pub fn inline_exact(&self, n: usize) -> Result<&[Token], ParseError> {
        self.no_rows()?;
        if self.inline.len() < n {
            return Err(self.end_error(format!("`{}` needs {n} entries, found {}", self.key, self.inline.len())));
        }
        if let Some(t) = self.inline.get(n) {
            return Err(t.error(format!("`{}` needs {n} entries, found {}", self.key, self.inline.len())));
        }
        Ok(&self.inline)
    }

    /// An `r × c` grid of row tokens and nothing inline.
    pub fn grid(&self, r: usize, c: usize) -> Result<&[Vec<Token>], ParseError> {
        self.no_inline()?;
        if self.rows.len() < r {
            return Err(self.end_error(format!("`{}` needs {r} rows, found {}", self.key, self.rows.len())));
        }
        if let Some(row) = self.rows.get(r) {
            return Err(row[0].error(format!("`{}` needs {r} rows, found {}", self.key, self.rows.len())));
        }
        for row in &self.rows {
            if row.len() != c {
                let at = row.get(c).unwrap_or(&row[row.len() - 1]);
                return Err(at.error(format!("row has {} entries, expected {c}", row.len())));
            }
        }
        Ok(&self.rows)
    }
}

fn tokenize(line_no: usize, line: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current: Option<(usize, String)> = None;
    for (col, ch) in line.chars().enumerate() {
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            if let Some((c, text)) = current.take() {
                tokens.push(Token { text, line: line_no, column: c });
            }
        } else {
            current.get_or_insert_with(|| (col + 1, String::new())).1.push(ch);
        }
    }
    if let Some((c, text)) = current {
        tokens.push(Token { text, line: line_no, column: c });
    }
    tokens
}

/// Splits a text file into blocks. A line starts a block when its first or
/// second token ends with `:`; other non-empty lines are rows of the
/// current block. `#` starts a comment.
pub fn blocks(text: &str) -> Result<Vec<Block>, ParseError> {
    let mut out: Vec<Block> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let tokens = tokenize(i + 1, raw);
        if tokens.is_empty() {
            continue;
        }
        let key_end = tokens.iter().take(2).position(|t| t.text.ends_with(':'));
        match key_end {
            Some(k) => {
                let key = tokens[..=k]
                    .iter()
                    .map(|t| t.text.as_str())
                    .collect::<Vec<_>>()
                    .join(" ");
                let key = key[..key.len() - 1].to_string();
                let colon = tokens[k].column + tokens[k].text.chars().count() - 1;
                let rest: String = raw.chars().skip(colon).collect();
                let rest = rest.split('#').next().unwrap_or("").trim().to_string();
                out.push(Block {
                    key,
                    line: tokens[0].line,
                    column: tokens[0].column,
                    inline: tokens[k + 1..].to_vec(),
                    rest,
                    rows: Vec::new(),
                });
            }
            None => match out.last_mut() {
                Some(b) => b.rows.push(tokens),
                None => return Err(tokens[0].error("expected a `key:` line")),
            },
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_blocks_and_rows() {
        let text = "# header\nsemiring: nat\nM a:   # matrix\n  1 2\n  3 4\nbeta: 1 0\n";
        let b = blocks(text).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b[0].key, "semiring");
        assert_eq!(b[0].rest, "nat");
        assert_eq!(b[1].key, "M a");
        assert_eq!(b[1].rows.len(), 2);
        assert_eq!((b[1].rows[1][1].line, b[1].rows[1][1].column), (5, 5));
        assert_eq!(b[2].inline.len(), 2);
    }

    #[test]
    fn row_before_key_is_an_error() {
        let e = blocks("\n  1 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn grid_reports_positions() {
        let b = blocks("X:\n1 2\n3\n").unwrap();
        let e = b[0].grid(2, 2).unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
    }
}
