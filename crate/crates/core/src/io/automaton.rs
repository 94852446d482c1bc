use std::fmt;
use std::path::{Path, PathBuf};

use super::lexer::{blocks, Block, Token};
use super::table::read_table;
use super::{read_text, Sections};
use crate::error::{Error, ParseError, Result};
use crate::matrix::Matrix;
use crate::semiring::{Boolean, MinPlus, Semiring, Table};
use crate::wfa::Automaton;
use crate::{Integers, Naturals, Rationals};

/// The `semiring:` header of an automaton file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiringKind {
    Bool,
    Nat,
    Int,
    Rat,
    Tropical,
    /// Path as written in the file.
    Table(PathBuf),
}

impl SemiringKind {
    pub fn name(&self) -> &'static str {
        match self {
            SemiringKind::Bool => "bool",
            SemiringKind::Nat => "nat",
            SemiringKind::Int => "int",
            SemiringKind::Rat => "rat",
            SemiringKind::Tropical => "tropical",
            SemiringKind::Table(_) => "table",
        }
    }

    fn from_block(b: &Block) -> Result<Self, ParseError> {
        b.no_rows()?;
        let Some(first) = b.inline.first() else {
            return Err(b.end_error("missing semiring name"));
        };
        let kind = match first.text.as_str() {
            "bool" => SemiringKind::Bool,
            "nat" => SemiringKind::Nat,
            "int" => SemiringKind::Int,
            "rat" => SemiringKind::Rat,
            "tropical" => SemiringKind::Tropical,
            "table" => {
                let path = b.rest["table".len()..].trim();
                if path.is_empty() {
                    return Err(b.end_error("`table` needs a path"));
                }
                return Ok(SemiringKind::Table(PathBuf::from(path)));
            }
            other => {
                return Err(first.error(format!(
                    "unknown semiring `{other}` (expected bool, nat, int, rat, tropical or table <path>)"
                )))
            }
        };
        b.inline_exact(1)?;
        Ok(kind)
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringKind::Table(p) => write!(f, "table {}", p.display()),
            other => f.write_str(other.name()),
        }
    }
}

fn elem<S: Semiring>(s: &S, t: &Token) -> Result<S::Elem, ParseError> {
    s.parse_elem(&t.text)
        .ok_or_else(|| t.error(format!("`{}` is not an element of {}", t.text, s.id())))
}

pub(crate) fn elems<S: Semiring>(s: &S, ts: &[Token]) -> Result<Vec<S::Elem>, ParseError> {
    ts.iter().map(|t| elem(s, t)).collect()
}

/// Reads an `r × c` matrix from the rows of a block.
pub(crate) fn matrix_block<S: Semiring>(s: &S, b: &Block, r: usize, c: usize) -> Result<Matrix<S>, ParseError> {
    let mut entries = Vec::with_capacity(r * c);
    for row in b.grid(r, c)? {
        entries.extend(elems(s, row)?);
    }
    Matrix::new(s.clone(), r, c, entries).map_err(|e| b.error(e.to_string()))
}

fn body<S: Semiring>(s: &S, mut sec: Sections) -> Result<Automaton<S>, ParseError> {
    let ab = sec.require("alphabet")?;
    ab.no_rows()?;
    let mut alphabet = Vec::new();
    for t in &ab.inline {
        let mut chars = t.text.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if !alphabet.contains(&c) => alphabet.push(c),
            (Some(c), None) => return Err(t.error(format!("letter `{c}` listed twice"))),
            _ => return Err(t.error(format!("`{}` is not a single letter", t.text))),
        }
    }
    let db = sec.require("dim")?;
    let dt = &db.inline_exact(1)?[0];
    let n: usize = match dt.text.parse() {
        Ok(n) if n >= 1 => n,
        _ => return Err(dt.error("dimension must be a positive integer")),
    };
    let alpha = elems(s, sec.require("alpha")?.inline_exact(n)?)?;
    let mut transitions = Vec::with_capacity(alphabet.len());
    for c in &alphabet {
        let b = sec.require(&format!("M {c}"))?;
        transitions.push(matrix_block(s, &b, n, n)?);
    }
    let beta = elems(s, sec.require("beta")?.inline_exact(n)?)?;
    sec.finish()?;
    Automaton::new(s.clone(), alphabet, alpha, transitions, beta).map_err(|e| ab.error(e.to_string()))
}

fn header(text: &str) -> Result<(Sections, SemiringKind, Block), ParseError> {
    let mut sec = Sections::new(blocks(text)?, text)?;
    let hb = sec.require("semiring")?;
    let kind = SemiringKind::from_block(&hb)?;
    Ok((sec, kind, hb))
}

/// Parses an automaton over a known semiring. The header must name the
/// same kind of semiring; a table path in the header is not followed.
pub fn parse_automaton<S: Semiring>(s: &S, text: &str) -> Result<Automaton<S>, ParseError> {
    let (sec, kind, hb) = header(text)?;
    let id = s.id();
    if id.split_whitespace().next() != Some(kind.name()) {
        return Err(hb.error(format!("file is over {kind}, expected {id}")));
    }
    body(s, sec)
}

/// Header line for `s` in a file stored in `dir`. Table paths are written
/// relative to `dir` when the table lives inside it.
fn header_id<S: Semiring>(s: &S, dir: Option<&Path>) -> String {
    let id = s.id();
    let Some(path) = id.strip_prefix("table ") else {
        return id;
    };
    let path = Path::new(path);
    let rel = dir
        .and_then(|d| d.canonicalize().ok())
        .and_then(|d| path.strip_prefix(d).ok().map(Path::to_path_buf));
    format!("table {}", rel.as_deref().unwrap_or(path).display())
}

fn format_with_header<S: Semiring>(a: &Automaton<S>, header: &str) -> String {
    let s = a.semiring();
    let fmt_row = |v: &[S::Elem]| v.iter().map(|e| s.format_elem(e)).collect::<Vec<_>>().join(" ");
    let letters: Vec<String> = a.alphabet().iter().map(char::to_string).collect();
    let mut out = format!("semiring: {header}\n");
    out += &format!("alphabet: {}\n", letters.join(" ")).replace(": \n", ":\n");
    out += &format!("dim: {}\n", a.dim());
    out += &format!("alpha: {}\n", fmt_row(a.initial().entries()));
    for (c, m) in a.alphabet().iter().zip(a.transitions()) {
        out += &format!("M {c}:\n");
        for row in m.row_iter() {
            out += &format!("  {}\n", fmt_row(row));
        }
    }
    out += &format!("beta: {}\n", fmt_row(a.final_weights().entries()));
    out
}

/// Serializes `a`. Table semirings are referenced by their source path.
pub fn format_automaton<S: Semiring>(a: &Automaton<S>) -> String {
    format_with_header(a, &header_id(a.semiring(), None))
}

/// An automaton over any of the shipped semirings, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyAutomaton {
    Bool(Automaton<Boolean>),
    Nat(Automaton<Naturals>),
    Int(Automaton<Integers>),
    Rat(Automaton<Rationals>),
    Tropical(Automaton<MinPlus>),
    Table(Automaton<Table>),
}

/// Runs `$body` with `$a` bound to the typed automaton inside an
/// [`AnyAutomaton`](crate::io::AnyAutomaton).
#[macro_export]
macro_rules! with_automaton {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            $crate::io::AnyAutomaton::Bool($a) => $body,
            $crate::io::AnyAutomaton::Nat($a) => $body,
            $crate::io::AnyAutomaton::Int($a) => $body,
            $crate::io::AnyAutomaton::Rat($a) => $body,
            $crate::io::AnyAutomaton::Tropical($a) => $body,
            $crate::io::AnyAutomaton::Table($a) => $body,
        }
    };
}

/// Runs `$body` on two automata over the same kind of semiring, or
/// evaluates to `Err(Error::SemiringMismatch)` when the kinds differ.
#[macro_export]
macro_rules! with_pair {
    ($x:expr, $y:expr, ($a:ident, $b:ident) => $body:expr) => {
        match ($x, $y) {
            ($crate::io::AnyAutomaton::Bool($a), $crate::io::AnyAutomaton::Bool($b)) => $body,
            ($crate::io::AnyAutomaton::Nat($a), $crate::io::AnyAutomaton::Nat($b)) => $body,
            ($crate::io::AnyAutomaton::Int($a), $crate::io::AnyAutomaton::Int($b)) => $body,
            ($crate::io::AnyAutomaton::Rat($a), $crate::io::AnyAutomaton::Rat($b)) => $body,
            ($crate::io::AnyAutomaton::Tropical($a), $crate::io::AnyAutomaton::Tropical($b)) => $body,
            ($crate::io::AnyAutomaton::Table($a), $crate::io::AnyAutomaton::Table($b)) => $body,
            (l, r) => Err($crate::Error::SemiringMismatch {
                left: l.semiring_id(),
                right: r.semiring_id(),
            }),
        }
    };
}

impl AnyAutomaton {
    pub fn semiring_id(&self) -> String {
        with_automaton!(self, a => a.semiring().id())
    }

    pub fn dim(&self) -> usize {
        with_automaton!(self, a => a.dim())
    }
}

/// Conversion between typed automata and [`AnyAutomaton`].
pub trait FileSemiring: Semiring + Sized {
    fn into_any(a: Automaton<Self>) -> AnyAutomaton;
    /// Gives the automaton back unchanged when it is over another semiring.
    fn from_any(a: AnyAutomaton) -> Result<Automaton<Self>, AnyAutomaton>;
}

macro_rules! file_semiring {
    ($ty:ty, $variant:ident) => {
        impl FileSemiring for $ty {
            fn into_any(a: Automaton<Self>) -> AnyAutomaton {
                AnyAutomaton::$variant(a)
            }

            fn from_any(a: AnyAutomaton) -> Result<Automaton<Self>, AnyAutomaton> {
                match a {
                    AnyAutomaton::$variant(a) => Ok(a),
                    other => Err(other),
                }
            }
        }
    };
}

file_semiring!(Boolean, Bool);
file_semiring!(Naturals, Nat);
file_semiring!(Integers, Int);
file_semiring!(Rationals, Rat);
file_semiring!(MinPlus, Tropical);
file_semiring!(Table, Table);

/// Parses an automaton over any semiring. A table path in the header is
/// resolved against `base_dir`.
pub fn parse_any_automaton(text: &str, base_dir: &Path) -> Result<AnyAutomaton> {
    let (sec, kind, _) = header(text)?;
    Ok(match kind {
        SemiringKind::Bool => AnyAutomaton::Bool(body(&Boolean, sec)?),
        SemiringKind::Nat => AnyAutomaton::Nat(body(&Naturals::new(), sec)?),
        SemiringKind::Int => AnyAutomaton::Int(body(&Integers::new(), sec)?),
        SemiringKind::Rat => AnyAutomaton::Rat(body(&Rationals::new(), sec)?),
        SemiringKind::Tropical => AnyAutomaton::Tropical(body(&MinPlus, sec)?),
        SemiringKind::Table(p) => {
            let table = read_table(&base_dir.join(p))?;
            AnyAutomaton::Table(body(&table, sec)?)
        }
    })
}

fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

pub fn read_automaton(path: &Path) -> Result<AnyAutomaton> {
    let text = read_text(path)?;
    parse_any_automaton(&text, parent(path)).map_err(|e| match e {
        Error::Parse(p) => Error::Parse(p.in_file(path)),
        other => other,
    })
}

/// Writes `a` to `path`; a table source inside the target directory is
/// referenced relatively.
pub fn write_automaton<S: Semiring>(path: &Path, a: &Automaton<S>) -> Result<()> {
    let text = format_with_header(a, &header_id(a.semiring(), Some(parent(path))));
    super::write_text(path, &text)
}
