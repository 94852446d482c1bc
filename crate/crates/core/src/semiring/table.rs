use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use super::laws::{self, Law};
use super::{Field, Flags, Ring, Semiring};
use crate::error::{Error, Overflow, Result};

/// A finite semiring given by explicit operation tables over labelled
/// elements. Entries are indices into `elements`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSemiring {
    elements: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl TableSemiring {
    /// Builds a table, rejecting malformed shapes. Axioms are not checked
    /// here; see [`validate_table_semiring`].
    pub fn new(
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::TableShape("no elements".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() || e.chars().any(|c| c.is_whitespace() || c == '#') || e.ends_with(':') {
                return Err(Error::TableShape(format!("bad element label {e:?}")));
            }
            if elements[..i].contains(e) {
                return Err(Error::TableShape(format!("duplicate element {e:?}")));
            }
        }
        for (name, table) in [("add", &add), ("mul", &mul)] {
            if table.len() != n || table.iter().any(|r| r.len() != n) {
                return Err(Error::TableShape(format!("{name} table is not {n}x{n}")));
            }
            for (i, row) in table.iter().enumerate() {
                if let Some(j) = row.iter().position(|&v| v >= n) {
                    return Err(Error::TableShape(format!(
                        "{name}[{i}][{j}] = {} is out of range",
                        row[j]
                    )));
                }
            }
        }
        if zero >= n || one >= n {
            return Err(Error::TableShape("zero/one index out of range".into()));
        }
        Ok(TableSemiring {
            elements,
            add,
            mul,
            zero,
            one,
        })
    }

    /// Builds a table from label grids, e.g. `add[i][j]` is the label of
    /// `elements[i] + elements[j]`.
    pub fn from_labels(
        elements: &[&str],
        zero: &str,
        one: &str,
        add: &[&[&str]],
        mul: &[&[&str]],
    ) -> Result<Self> {
        let index = |l: &str| {
            elements
                .iter()
                .position(|e| *e == l)
                .ok_or_else(|| Error::TableShape(format!("unknown label {l:?}")))
        };
        let grid = |g: &[&[&str]]| -> Result<Vec<Vec<usize>>> {
            g.iter().map(|row| row.iter().map(|l| index(l)).collect()).collect()
        };
        Self::new(
            elements.iter().map(|s| s.to_string()).collect(),
            grid(add)?,
            grid(mul)?,
            index(zero)?,
            index(one)?,
        )
    }

    pub fn boolean() -> Self {
        Self::from_labels(
            &["0", "1"],
            "0",
            "1",
            &[&["0", "1"], &["1", "1"]],
            &[&["0", "0"], &["0", "1"]],
        )
        .expect("well-formed")
    }

    /// Integers modulo `n` (a field, GF(n), when `n` is prime).
    pub fn integers_mod(n: usize) -> Self {
        assert!(n >= 2, "modulus must be at least 2");
        let elements = (0..n).map(|i| i.to_string()).collect();
        let add = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect();
        Self::new(elements, add, mul, 0, 1).expect("well-formed")
    }

    pub fn gf2() -> Self {
        Self::integers_mod(2)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn one_index(&self) -> usize {
        self.one
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    /// Copy with one cell of the addition table replaced.
    pub fn with_add_entry(&self, i: usize, j: usize, v: usize) -> Result<Self> {
        let mut add = self.add.clone();
        *add.get_mut(i).and_then(|r| r.get_mut(j)).ok_or_else(|| {
            Error::TableShape(format!("add[{i}][{j}] does not exist"))
        })? = v;
        Self::new(self.elements.clone(), add, self.mul.clone(), self.zero, self.one)
    }

    /// Copy with one cell of the multiplication table replaced.
    pub fn with_mul_entry(&self, i: usize, j: usize, v: usize) -> Result<Self> {
        let mut mul = self.mul.clone();
        *mul.get_mut(i).and_then(|r| r.get_mut(j)).ok_or_else(|| {
            Error::TableShape(format!("mul[{i}][{j}] does not exist"))
        })? = v;
        Self::new(self.elements.clone(), self.add.clone(), mul, self.zero, self.one)
    }
}

/// A violated axiom of a table semiring, with witnesses by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableViolation {
    pub law: Law,
    pub witnesses: Vec<String>,
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} [{}] fails for ({})", self.law, self.law, self.witnesses.join(", "))
    }
}

/// Exhaustively checks every semiring axiom; an empty list means the table
/// is a semiring.
pub fn validate_table_semiring(t: &TableSemiring) -> Vec<TableViolation> {
    let handle = Table::unchecked(t.clone());
    let elems: Vec<usize> = (0..t.len()).collect();
    laws::check_exhaustive(&handle, &elems)
        .expect("table products cannot overflow")
        .into_iter()
        .map(|v| TableViolation {
            law: v.law,
            witnesses: v.witnesses.iter().map(|&i| t.elements[i].clone()).collect(),
        })
        .collect()
}

/// Semiring handle for a validated [`TableSemiring`].
#[derive(Debug, Clone)]
pub struct Table {
    table: Arc<TableSemiring>,
    flags: Flags,
    negation: Option<Vec<usize>>,
    inverse: Option<Vec<Option<usize>>>,
    source: Option<PathBuf>,
}

impl PartialEq for Table {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }
}

impl Table {
    /// Wraps a table after checking all axioms.
    pub fn new(t: TableSemiring) -> Result<Self> {
        let violations = validate_table_semiring(&t);
        if let Some(v) = violations.first() {
            return Err(Error::TableAxioms(format!(
                "{v} (and {} more)",
                violations.len() - 1
            )));
        }
        Ok(Self::unchecked(t))
    }

    fn unchecked(t: TableSemiring) -> Self {
        let n = t.len();
        let commutative = (0..n).all(|i| (0..n).all(|j| t.mul[i][j] == t.mul[j][i]));
        let negation: Option<Vec<usize>> = (0..n)
            .map(|a| (0..n).find(|&b| t.add[a][b] == t.zero))
            .collect();
        let inverse: Vec<Option<usize>> = (0..n)
            .map(|a| (0..n).find(|&b| t.mul[a][b] == t.one && t.mul[b][a] == t.one))
            .collect();
        let is_ring = negation.is_some();
        let is_field = is_ring
            && commutative
            && t.zero != t.one
            && (0..n).all(|a| a == t.zero || inverse[a].is_some());
        Table {
            flags: Flags {
                is_finite: true,
                is_field,
                is_ring,
                is_commutative: commutative,
            },
            negation,
            inverse: Some(inverse),
            table: Arc::new(t),
            source: None,
        }
    }

    /// Records the file the table was loaded from; it is written back into
    /// automaton headers.
    pub fn with_source(mut self, path: impl Into<PathBuf>) -> Self {
        self.source = Some(path.into());
        self
    }

    pub fn source(&self) -> Option<&Path> {
        self.source.as_deref()
    }

    pub fn table(&self) -> &TableSemiring {
        &self.table
    }
}

impl Semiring for Table {
    type Elem = usize;

    fn id(&self) -> String {
        match &self.source {
            Some(p) => format!("table {}", p.display()),
            None => "table".into(),
        }
    }

    fn zero(&self) -> usize {
        self.table.zero
    }

    fn one(&self) -> usize {
        self.table.one
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.table.add[*a][*b]
    }

    fn mul(&self, a: &usize, b: &usize) -> Result<usize, Overflow> {
        Ok(self.table.mul[*a][*b])
    }

    fn flags(&self) -> Flags {
        self.flags
    }

    fn carrier(&self) -> Option<Vec<usize>> {
        Some((0..self.table.len()).collect())
    }

    fn contains(&self, a: &usize) -> bool {
        *a < self.table.len()
    }

    fn format_elem(&self, a: &usize) -> String {
        self.table.elements[*a].clone()
    }

    fn parse_elem(&self, s: &str) -> Option<usize> {
        self.table.index_of(s)
    }
}

impl Ring for Table {
    /// # Panics
    /// If the table has no additive inverses (`flags().is_ring` is false).
    fn neg(&self, a: &usize) -> usize {
        self.negation.as_ref().expect("table semiring is not a ring")[*a]
    }
}

impl Field for Table {
    fn inv(&self, a: &usize) -> Option<usize> {
        self.inverse.as_ref().and_then(|inv| inv[*a])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_tables_validate() {
        assert!(validate_table_semiring(&TableSemiring::boolean()).is_empty());
        assert!(validate_table_semiring(&TableSemiring::gf2()).is_empty());
        assert!(validate_table_semiring(&TableSemiring::integers_mod(4)).is_empty());
    }

    #[test]
    fn xor_and_is_gf2() {
        let t = TableSemiring::from_labels(
            &["0", "1"],
            "0",
            "1",
            &[&["0", "1"], &["1", "0"]],
            &[&["0", "0"], &["0", "1"]],
        )
        .unwrap();
        assert!(validate_table_semiring(&t).is_empty());
        let h = Table::new(t).unwrap();
        assert!(h.flags().is_field);
    }

    #[test]
    fn broken_unit_law_names_one() {
        let t = TableSemiring::boolean().with_mul_entry(1, 1, 0).unwrap();
        let v = validate_table_semiring(&t);
        assert!(v
            .iter()
            .any(|v| v.law == Law::MulLeftIdentity && v.witnesses == ["1"]));
        assert!(Table::new(t).is_err());
    }

    #[test]
    fn out_of_range_is_a_shape_error() {
        let err = TableSemiring::new(
            vec!["a".into(), "b".into()],
            vec![vec![0, 1], vec![1, 2]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::TableShape(_)));
    }

    #[test]
    fn flags_follow_structure() {
        let b = Table::new(TableSemiring::boolean()).unwrap();
        assert!(!b.flags().is_ring);
        let z4 = Table::new(TableSemiring::integers_mod(4)).unwrap();
        assert!(z4.flags().is_ring && !z4.flags().is_field);
        let z5 = Table::new(TableSemiring::integers_mod(5)).unwrap();
        assert!(z5.flags().is_field);
        assert_eq!(z5.neg(&2), 3);
        assert_eq!(z5.inv(&2), Some(3));
    }
}
