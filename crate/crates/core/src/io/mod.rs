//! Line-oriented text formats for semiring tables, automata, simulation
//! certificates, chains and inequivalence witnesses.
//!
//! Every format is a sequence of `key:` lines, optionally followed by
//! indented matrix rows. `#` starts a comment. Parse errors carry the line
//! and column of the offending token.

mod automaton;
mod evidence;
pub(crate) mod lexer;
mod table;

use std::collections::HashMap;
use std::path::Path;

pub use automaton::{
    format_automaton, parse_any_automaton, parse_automaton, read_automaton, write_automaton, AnyAutomaton,
    FileSemiring, SemiringKind,
};
pub use evidence::{
    build_chain, format_certificate, format_chain, format_witness, parse_certificate, parse_chain, parse_witness,
    read_certificate, read_chain, typed_chain, write_chain_evidence, write_joint_evidence, write_witness_evidence,
    CertificateFile, ChainFile,
};
pub use table::{format_table, parse_table, read_table};

use crate::error::{Error, ParseError, Result};
use lexer::Block;

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Blocks of one file keyed by name, each key at most once.
pub(crate) struct Sections {
    blocks: HashMap<String, Block>,
    order: Vec<String>,
    end: (usize, usize),
}

impl Sections {
    pub(crate) fn new(blocks: Vec<Block>, text: &str) -> Result<Self, ParseError> {
        let mut map = HashMap::new();
        let mut order = Vec::new();
        for b in blocks {
            if map.contains_key(&b.key) {
                return Err(b.error(format!("`{}` given twice", b.key)));
            }
            order.push(b.key.clone());
            map.insert(b.key.clone(), b);
        }
        Ok(Sections {
            blocks: map,
            order,
            end: (text.lines().count() + 1, 1),
        })
    }

    pub(crate) fn take(&mut self, key: &str) -> Option<Block> {
        self.blocks.remove(key)
    }

    pub(crate) fn require(&mut self, key: &str) -> Result<Block, ParseError> {
        self.take(key)
            .ok_or_else(|| ParseError::new(self.end.0, self.end.1, format!("missing `{key}:`")))
    }

    /// Fails on the first block nobody asked for.
    pub(crate) fn finish(self) -> Result<(), ParseError> {
        for key in &self.order {
            if let Some(b) = self.blocks.get(key) {
                return Err(b.error(format!("unexpected `{key}:`")));
            }
        }
        Ok(())
    }
}
