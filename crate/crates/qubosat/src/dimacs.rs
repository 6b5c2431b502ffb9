//! DIMACS CNF reading and writing.
//!
//! Only 3-literal clauses are accepted. Clauses may span lines; each one is
//! terminated by `0`. A `%` line (as found at the end of the SATLIB uniform
//! random files) ends the clause section.

use std::io::{self, Read, Write};

use qubosat_core::{Clause, Formula, FormulaError, Literal};

#[derive(Debug, thiserror::Error)]
pub enum DimacsError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: malformed header {text:?} (expected `p cnf <n> <m>`)")]
    Header { line: usize, text: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: duplicate `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid literal {token:?}")]
    Token { line: usize, token: String },
    #[error("clause {clause} has {got} literals; only 3-literal clauses are supported")]
    Arity { clause: usize, got: usize },
    #[error("line {line}: variable id {id} out of range 1..={n}")]
    VarOutOfRange { line: usize, id: i64, n: usize },
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Parses DIMACS text. `strict` rejects clauses that repeat a variable.
pub fn parse_dimacs(text: &str, strict: bool) -> Result<Formula, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line: line_no });
            }
            header = Some(parse_header(line).ok_or_else(|| DimacsError::Header {
                line: line_no,
                text: line.to_string(),
            })?);
            continue;
        }
        let (n, _) = header.ok_or(DimacsError::MissingHeader)?;
        for token in line.split_whitespace() {
            let id: i64 = token.parse().map_err(|_| DimacsError::Token {
                line: line_no,
                token: token.to_string(),
            })?;
            if id == 0 {
                let lits: [Literal; 3] =
                    pending
                        .as_slice()
                        .try_into()
                        .map_err(|_| DimacsError::Arity {
                            clause: clauses.len(),
                            got: pending.len(),
                        })?;
                clauses.push(Clause::new(lits));
                pending.clear();
                continue;
            }
            if id.unsigned_abs() > n as u64 {
                return Err(DimacsError::VarOutOfRange { line: line_no, id, n });
            }
            if pending.len() == 3 {
                return Err(DimacsError::Arity {
                    clause: clauses.len(),
                    got: 4,
                });
            }
            pending.push(Literal::from_dimacs(id).expect("nonzero id"));
        }
    }

    let (n, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !pending.is_empty() {
        return Err(DimacsError::Unterminated);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    let f = if strict {
        Formula::new(n, clauses)?
    } else {
        Formula::new_permissive(n, clauses)?
    };
    Ok(f)
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "p" || parts.next()? != "cnf" {
        return None;
    }
    let n = parts.next()?.parse().ok()?;
    let m = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some((n, m))
}

pub fn read_dimacs<R: Read>(mut reader: R, strict: bool) -> Result<Formula, DimacsError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_dimacs(&text, strict)
}

/// `p cnf n m` followed by one `a b c 0` line per clause.
pub fn write_dimacs(f: &Formula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.num_clauses());
    for clause in f.clauses() {
        let [a, b, c] = clause.lits().map(Literal::to_dimacs);
        out.push_str(&format!("{a} {b} {c} 0\n"));
    }
    out
}

pub fn write_dimacs_to<W: Write>(f: &Formula, mut writer: W) -> io::Result<()> {
    writer.write_all(write_dimacs(f).as_bytes())
}
