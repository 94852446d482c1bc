use std::path::{Path, PathBuf};

use super::automaton::{elems, matrix_block, write_automaton, AnyAutomaton, FileSemiring};
use super::lexer::{blocks, Block};
use super::{read_text, write_text, Sections};
use crate::error::{Error, ParseError, Result};
use crate::joint::{InequivalenceWitness, JointResult};
use crate::matrix::Matrix;
use crate::semiring::Semiring;
use crate::simulation::{ChainCertificate, Direction, Link};
use crate::wfa::{Automaton, Word};

fn fmt_matrix<S: Semiring>(x: &Matrix<S>) -> String {
    let s = x.semiring();
    x.row_iter()
        .map(|row| format!("  {}\n", row.iter().map(|e| s.format_elem(e)).collect::<Vec<_>>().join(" ")))
        .collect()
}

fn path_value(b: &Block, base: &Path) -> Result<PathBuf, ParseError> {
    b.no_rows()?;
    if b.rest.is_empty() {
        return Err(b.end_error(format!("`{}` needs a path", b.key)));
    }
    Ok(base.join(&b.rest))
}

fn with_file<T>(r: Result<T, ParseError>, file: Option<&Path>) -> Result<T, ParseError> {
    r.map_err(|e| match file {
        Some(f) => e.in_file(f),
        None => e,
    })
}

/// A simulation certificate whose matrix is parsed once the semiring and
/// dimensions are known.
///
/// ```text
/// source: A.wfa
/// target: B.wfa
/// X:
///   1
///   1
/// ```
///
/// `source` and `target` are optional.
#[derive(Debug, Clone)]
pub struct CertificateFile {
    pub source: Option<PathBuf>,
    pub target: Option<PathBuf>,
    pub file: Option<PathBuf>,
    x: Block,
}

impl CertificateFile {
    pub fn matrix<S: Semiring>(&self, s: &S, rows: usize, cols: usize) -> Result<Matrix<S>, ParseError> {
        with_file(matrix_block(s, &self.x, rows, cols), self.file.as_deref())
    }
}

/// Paths are resolved against `base`.
pub fn parse_certificate(text: &str, base: &Path) -> Result<CertificateFile, ParseError> {
    let mut sec = Sections::new(blocks(text)?, text)?;
    let source = sec.take("source").map(|b| path_value(&b, base)).transpose()?;
    let target = sec.take("target").map(|b| path_value(&b, base)).transpose()?;
    let x = sec.require("X")?;
    sec.finish()?;
    Ok(CertificateFile {
        source,
        target,
        file: None,
        x,
    })
}

pub fn read_certificate(path: &Path) -> Result<CertificateFile> {
    let text = read_text(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut c = parse_certificate(&text, base).map_err(|e| e.in_file(path))?;
    c.file = Some(path.to_path_buf());
    Ok(c)
}

pub fn format_certificate<S: Semiring>(source: Option<&str>, target: Option<&str>, x: &Matrix<S>) -> String {
    let mut out = String::new();
    if let Some(p) = source {
        out += &format!("source: {p}\n");
    }
    if let Some(p) = target {
        out += &format!("target: {p}\n");
    }
    out + "X:\n" + &fmt_matrix(x)
}

/// A chain of automata files with one link between each consecutive pair.
///
/// ```text
/// automaton: A.wfa
/// automaton: C.wfa
/// automaton: B.wfa
/// link backward:
///   1 0
/// link forward:
///   1
/// ```
///
/// A forward link `i` is a simulation `C_i → C_{i+1}`, a backward one
/// `C_{i+1} → C_i`.
#[derive(Debug, Clone)]
pub struct ChainFile {
    pub automata: Vec<PathBuf>,
    pub file: Option<PathBuf>,
    links: Vec<(Direction, Block)>,
}

impl ChainFile {
    pub fn directions(&self) -> Vec<Direction> {
        self.links.iter().map(|(d, _)| *d).collect()
    }
}

pub fn parse_chain(text: &str, base: &Path) -> Result<ChainFile, ParseError> {
    let mut automata = Vec::new();
    let mut links = Vec::new();
    for b in blocks(text)? {
        match b.key.as_str() {
            "automaton" => {
                if !links.is_empty() {
                    return Err(b.error("automata must be listed before the links"));
                }
                automata.push(path_value(&b, base)?);
            }
            "link forward" => links.push((Direction::Forward, b)),
            "link backward" => links.push((Direction::Backward, b)),
            other => return Err(b.error(format!("unexpected `{other}:`"))),
        }
    }
    if automata.is_empty() {
        return Err(ParseError::new(text.lines().count() + 1, 1, "missing `automaton:`"));
    }
    if links.len() + 1 != automata.len() {
        let at = links
            .get(automata.len().saturating_sub(1))
            .map(|(_, b)| (b.line, b.column))
            .unwrap_or((text.lines().count() + 1, 1));
        return Err(ParseError::new(
            at.0,
            at.1,
            format!("{} automata need {} links, found {}", automata.len(), automata.len() - 1, links.len()),
        ));
    }
    Ok(ChainFile {
        automata,
        file: None,
        links,
    })
}

pub fn read_chain(path: &Path) -> Result<ChainFile> {
    let text = read_text(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut c = parse_chain(&text, base).map_err(|e| e.in_file(path))?;
    c.file = Some(path.to_path_buf());
    Ok(c)
}

/// Parses the link matrices against already loaded automata.
pub fn build_chain<S: Semiring>(cf: &ChainFile, automata: Vec<Automaton<S>>) -> Result<ChainCertificate<S>> {
    if automata.len() != cf.links.len() + 1 {
        return Err(Error::MalformedChain(format!(
            "{} automata for {} links",
            automata.len(),
            cf.links.len()
        )));
    }
    let mut links = Vec::with_capacity(cf.links.len());
    for (i, (direction, b)) in cf.links.iter().enumerate() {
        let (p, q) = (automata[i].dim(), automata[i + 1].dim());
        let (r, c) = match direction {
            Direction::Forward => (p, q),
            Direction::Backward => (q, p),
        };
        let matrix = with_file(matrix_block(automata[i].semiring(), b, r, c), cf.file.as_deref())?;
        links.push(Link {
            direction: *direction,
            matrix,
        });
    }
    Ok(ChainCertificate { automata, links })
}

/// Converts loaded automata to one semiring type and builds the chain.
pub fn typed_chain<S: FileSemiring>(cf: &ChainFile, automata: Vec<AnyAutomaton>) -> Result<ChainCertificate<S>> {
    let mut typed = Vec::with_capacity(automata.len());
    for (a, path) in automata.into_iter().zip(&cf.automata) {
        match S::from_any(a) {
            Ok(a) => typed.push(a),
            Err(other) => {
                return Err(Error::MalformedChain(format!(
                    "{} is over {}, not the semiring of the first automaton",
                    path.display(),
                    other.semiring_id()
                )))
            }
        }
    }
    build_chain(cf, typed)
}

pub fn format_chain<S: Semiring>(paths: &[&str], chain: &ChainCertificate<S>) -> String {
    let mut out: String = paths.iter().map(|p| format!("automaton: {p}\n")).collect();
    for link in &chain.links {
        out += &format!("link {}:\n", link.direction);
        out += &fmt_matrix(&link.matrix);
    }
    out
}

/// ```text
/// word: ab
/// lhs: 1
/// rhs: 0
/// ```
pub fn format_witness<S: Semiring>(s: &S, w: &InequivalenceWitness<S>) -> String {
    format!(
        "word: {}\nlhs: {}\nrhs: {}\n",
        w.word,
        s.format_elem(&w.lhs),
        s.format_elem(&w.rhs)
    )
}

pub fn parse_witness<S: Semiring>(s: &S, text: &str) -> Result<InequivalenceWitness<S>, ParseError> {
    let mut sec = Sections::new(blocks(text)?, text)?;
    let wb = sec.require("word")?;
    let wt = &wb.inline_exact(1)?[0];
    let word: Word = wt.text.parse().map_err(|_| wt.error("invalid word"))?;
    let lhs = elems(s, sec.require("lhs")?.inline_exact(1)?)?.remove(0);
    let rhs = elems(s, sec.require("rhs")?.inline_exact(1)?)?.remove(0);
    sec.finish()?;
    Ok(InequivalenceWitness { word, lhs, rhs })
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

/// Writes `A.wfa`, `B.wfa`, `C.wfa`, the certificates `X.sim` (`C → A`)
/// and `Y.sim` (`C → B`), and `chain.txt` (`A ← C → B`). Returns the
/// written paths.
pub fn write_joint_evidence<S: Semiring>(
    dir: &Path,
    a: &Automaton<S>,
    b: &Automaton<S>,
    j: &JointResult<S>,
) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let mut written = Vec::new();
    for (name, aut) in [("A.wfa", a), ("B.wfa", b), ("C.wfa", &j.automaton)] {
        write_automaton(&dir.join(name), aut)?;
        written.push(dir.join(name));
    }
    for (name, target, x) in [("X.sim", "A.wfa", &j.x), ("Y.sim", "B.wfa", &j.y)] {
        write_text(&dir.join(name), &format_certificate(Some("C.wfa"), Some(target), x))?;
        written.push(dir.join(name));
    }
    let chain = crate::joint::emit_chain(j, a, b);
    write_text(&dir.join("chain.txt"), &format_chain(&["A.wfa", "C.wfa", "B.wfa"], &chain))?;
    written.push(dir.join("chain.txt"));
    Ok(written)
}

/// Writes the endpoints as `A.wfa` and `B.wfa`, intermediate automata as
/// `C1.wfa`, `C2.wfa`, … and the chain as `chain.txt`.
pub fn write_chain_evidence<S: Semiring>(
    dir: &Path,
    a: &Automaton<S>,
    b: &Automaton<S>,
    chain: &ChainCertificate<S>,
) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let k = chain.automata.len();
    let mut names: Vec<String> = vec!["A.wfa".into()];
    for i in 1..k.saturating_sub(1) {
        names.push(format!("C{i}.wfa"));
    }
    if k > 1 {
        names.push("B.wfa".into());
    }
    let mut written = Vec::new();
    write_automaton(&dir.join("A.wfa"), a)?;
    write_automaton(&dir.join("B.wfa"), b)?;
    written.extend([dir.join("A.wfa"), dir.join("B.wfa")]);
    for (name, aut) in names.iter().zip(&chain.automata).skip(1).take(k.saturating_sub(2)) {
        write_automaton(&dir.join(name), aut)?;
        written.push(dir.join(name));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    write_text(&dir.join("chain.txt"), &format_chain(&refs, chain))?;
    written.push(dir.join("chain.txt"));
    Ok(written)
}

/// Writes `A.wfa`, `B.wfa` and `witness.txt`.
pub fn write_witness_evidence<S: Semiring>(
    dir: &Path,
    a: &Automaton<S>,
    b: &Automaton<S>,
    w: &InequivalenceWitness<S>,
) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    write_automaton(&dir.join("A.wfa"), a)?;
    write_automaton(&dir.join("B.wfa"), b)?;
    write_text(&dir.join("witness.txt"), &format_witness(a.semiring(), w))?;
    Ok(vec![dir.join("A.wfa"), dir.join("B.wfa"), dir.join("witness.txt")])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Boolean;

    fn b1(alpha: bool, m: bool, beta: bool) -> Automaton<Boolean> {
        Automaton::new(
            Boolean,
            vec!['a'],
            vec![alpha],
            vec![Matrix::from_rows(Boolean, vec![vec![m]]).unwrap()],
            vec![beta],
        )
        .unwrap()
    }

    #[test]
    fn certificate_round_trip() {
        let x = Matrix::from_rows(Boolean, vec![vec![true, false], vec![false, true]]).unwrap();
        let text = format_certificate(Some("A.wfa"), Some("B.wfa"), &x);
        let c = parse_certificate(&text, Path::new("d")).unwrap();
        assert_eq!(c.source.as_deref(), Some(Path::new("d/A.wfa")));
        assert_eq!(c.matrix(&Boolean, 2, 2).unwrap(), x);
        let e = c.matrix(&Boolean, 3, 2).unwrap_err();
        assert!(e.message.contains("3 rows"));
    }

    #[test]
    fn chain_round_trip() {
        let a = b1(true, true, true);
        let chain = ChainCertificate {
            automata: vec![a.clone(), a.clone()],
            links: vec![Link {
                direction: Direction::Backward,
                matrix: Matrix::identity(Boolean, 1),
            }],
        };
        let text = format_chain(&["A.wfa", "B.wfa"], &chain);
        let cf = parse_chain(&text, Path::new(".")).unwrap();
        assert_eq!(cf.directions(), vec![Direction::Backward]);
        let back = build_chain(&cf, vec![a.clone(), a]).unwrap();
        assert_eq!(back.links[0].matrix, chain.links[0].matrix);
    }

    #[test]
    fn chain_link_count_is_checked() {
        let e = parse_chain("automaton: A\nautomaton: B\n", Path::new(".")).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn witness_round_trip() {
        for word in ["", "ab"] {
            let w = InequivalenceWitness {
                word: Word::from(word),
                lhs: true,
                rhs: false,
            };
            let back = parse_witness(&Boolean, &format_witness(&Boolean, &w)).unwrap();
            assert_eq!((back.word, back.lhs, back.rhs), (w.word, w.lhs, w.rhs));
        }
    }
}
