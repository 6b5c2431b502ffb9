//! 3-SAT → QUBO translations and their decoders.
//!
//! Every translation is a pure function of the formula and its parameters and
//! produces a [`Translation`]: the QUBO matrix, one [`QubitRole`] per matrix
//! index and enough metadata to decode bit-vectors without the formula.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::formula::{Assignment, Formula, FormulaError, Literal};
use crate::qubo::{BitVector, QuboError, QuboMatrix};

mod chancellor;
mod choi;
mod nuesslein;

pub use chancellor::{chancellor_clause_levels, translate_chancellor, ChancellorParams};
pub use choi::{decode_choi, translate_choi, ChoiParams};
pub use nuesslein::{
    decode_nuesslein2nm, pattern_for, translate_nuesslein2nm, translate_nuessleinnm, Pattern,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("clause {0} repeats a variable; translations need strict clauses")]
    NotStrict(usize),
    #[error("invalid Choi penalties: need X > 0, Y > 2|X| and Z > 2|X| (got X={x}, Y={y}, Z={z})")]
    ChoiParams { x: i64, y: i64, z: i64 },
    #[error("invalid Chancellor parameters: {0}")]
    ChancellorParams(&'static str),
    #[error("bit-vector has length {got}, translation has {expected} qubits")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{op} does not apply to the {method} translation")]
    MethodMismatch { op: &'static str, method: MethodKind },
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error("malformed qubit role {0:?}")]
    BadRole(String),
    #[error(transparent)]
    Qubo(#[from] QuboError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// The four translation families without their parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodKind {
    Nuesslein2nm,
    NuessleinNm,
    Chancellor,
    Choi,
}

impl MethodKind {
    /// All methods, in the row order used by the comparison tables.
    pub const ALL: [MethodKind; 4] = [
        MethodKind::Nuesslein2nm,
        MethodKind::NuessleinNm,
        MethodKind::Chancellor,
        MethodKind::Choi,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            MethodKind::Choi => "choi",
            MethodKind::Chancellor => "chancellor",
            MethodKind::Nuesslein2nm => "nuesslein2nm",
            MethodKind::NuessleinNm => "nuessleinnm",
        }
    }

    /// Human-readable label with the size class.
    pub const fn label(self) -> &'static str {
        match self {
            MethodKind::Choi => "Choi^3m",
            MethodKind::Chancellor => "Chancellor^n+m",
            MethodKind::Nuesslein2nm => "Nuesslein^2n+m",
            MethodKind::NuessleinNm => "Nuesslein^n+m",
        }
    }

    /// The method with its default parameters.
    pub fn with_defaults(self) -> Method {
        match self {
            MethodKind::Choi => Method::Choi(ChoiParams::default()),
            MethodKind::Chancellor => Method::Chancellor(ChancellorParams::default()),
            MethodKind::Nuesslein2nm => Method::Nuesslein2nm,
            MethodKind::NuessleinNm => Method::NuessleinNm { share_aux: true },
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodKind {
    type Err = TranslateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| TranslateError::UnknownMethod(s.to_string()))
    }
}

/// A translation method together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Choi(ChoiParams),
    Chancellor(ChancellorParams),
    Nuesslein2nm,
    NuessleinNm { share_aux: bool },
}

impl Method {
    pub fn kind(&self) -> MethodKind {
        match self {
            Method::Choi(_) => MethodKind::Choi,
            Method::Chancellor(_) => MethodKind::Chancellor,
            Method::Nuesslein2nm => MethodKind::Nuesslein2nm,
            Method::NuessleinNm { .. } => MethodKind::NuessleinNm,
        }
    }

    pub fn translate(&self, f: &Formula) -> Result<Translation, TranslateError> {
        match *self {
            Method::Choi(p) => translate_choi(f, p),
            Method::Chancellor(p) => translate_chancellor(f, p),
            Method::Nuesslein2nm => translate_nuesslein2nm(f),
            Method::NuessleinNm { share_aux } => translate_nuessleinnm(f, share_aux),
        }
    }

    /// Minimum QUBO energy of this method's translation of `f`, given the
    /// MAX-3-SAT optimum `opt` of `f`.
    pub fn expected_min_energy(&self, f: &Formula, opt: usize) -> Result<i64, TranslateError> {
        expected_min_energy(self, f, opt)
    }
}

impl From<MethodKind> for Method {
    fn from(kind: MethodKind) -> Self {
        kind.with_defaults()
    }
}

/// Key identifying a sub-formula that several clauses may share an aux qubit for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxKey {
    /// Disjunction of two literals, stored in ascending literal order.
    Pair(Literal, Literal),
    /// Conjunction of three negated literals, stored in ascending order.
    Triple([Literal; 3]),
}

/// What a QUBO index stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QubitRole {
    /// Truth value of variable `j` (`var:j`).
    Variable(usize),
    /// One of the `2n` literal qubits (`lit:j,0` for `v_j`, `lit:j,1` for `¬v_j`).
    Literal(Literal),
    /// Literal occurrence `i` of clause `k` (`slot:k,i,<signed id>`).
    LiteralSlot {
        clause: usize,
        position: usize,
        literal: Literal,
    },
    /// Ancilla owned by a single clause (`aux:clause:k`).
    ClauseAux(usize),
    /// Aux qubit shared by every clause with the same key
    /// (`aux:pair:<id>,<id>` or `aux:triple:<id>,<id>,<id>`, signed 1-based ids).
    SharedAux(AuxKey),
}

impl fmt::Display for QubitRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QubitRole::Variable(j) => write!(f, "var:{j}"),
            QubitRole::Literal(l) => write!(f, "lit:{},{}", l.var(), l.is_negated() as u8),
            QubitRole::LiteralSlot {
                clause,
                position,
                literal,
            } => write!(f, "slot:{clause},{position},{}", literal.to_dimacs()),
            QubitRole::ClauseAux(k) => write!(f, "aux:clause:{k}"),
            QubitRole::SharedAux(AuxKey::Pair(a, b)) => {
                write!(f, "aux:pair:{},{}", a.to_dimacs(), b.to_dimacs())
            }
            QubitRole::SharedAux(AuxKey::Triple([a, b, c])) => write!(
                f,
                "aux:triple:{},{},{}",
                a.to_dimacs(),
                b.to_dimacs(),
                c.to_dimacs()
            ),
        }
    }
}

impl FromStr for QubitRole {
    type Err = TranslateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TranslateError::BadRole(s.to_string());
        let ints = |body: &str| -> Result<Vec<i64>, TranslateError> {
            body.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
                .collect()
        };
        let lit = |id: i64| Literal::from_dimacs(id).ok_or_else(bad);
        let idx = |v: i64| usize::try_from(v).map_err(|_| bad());

        if let Some(body) = s.strip_prefix("var:") {
            return match ints(body)?.as_slice() {
                &[j] => Ok(QubitRole::Variable(idx(j)?)),
                _ => Err(bad()),
            };
        }
        if let Some(body) = s.strip_prefix("lit:") {
            return match ints(body)?.as_slice() {
                &[j, neg @ (0 | 1)] => Ok(QubitRole::Literal(Literal::new(idx(j)?, neg == 1))),
                _ => Err(bad()),
            };
        }
        if let Some(body) = s.strip_prefix("slot:") {
            return match ints(body)?.as_slice() {
                &[k, i, id] => Ok(QubitRole::LiteralSlot {
                    clause: idx(k)?,
                    position: idx(i)?,
                    literal: lit(id)?,
                }),
                _ => Err(bad()),
            };
        }
        if let Some(body) = s.strip_prefix("aux:clause:") {
            return match ints(body)?.as_slice() {
                &[k] => Ok(QubitRole::ClauseAux(idx(k)?)),
                _ => Err(bad()),
            };
        }
        if let Some(body) = s.strip_prefix("aux:pair:") {
            return match ints(body)?.as_slice() {
                &[a, b] => Ok(QubitRole::SharedAux(AuxKey::Pair(lit(a)?, lit(b)?))),
                _ => Err(bad()),
            };
        }
        if let Some(body) = s.strip_prefix("aux:triple:") {
            return match ints(body)?.as_slice() {
                &[a, b, c] => Ok(QubitRole::SharedAux(AuxKey::Triple([
                    lit(a)?,
                    lit(b)?,
                    lit(c)?,
                ]))),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

/// A QUBO matrix plus what each of its indices means.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub method: Method,
    pub qubo: QuboMatrix,
    pub roles: Vec<QubitRole>,
    /// Variable count of the source formula.
    pub num_vars: usize,
    /// Clause count of the source formula.
    pub num_clauses: usize,
    /// Clauses without negated literals.
    pub p: usize,
    /// Clauses with only negated literals.
    pub q: usize,
}

impl Translation {
    pub(crate) fn new(method: Method, f: &Formula, qubo: QuboMatrix, roles: Vec<QubitRole>) -> Self {
        debug_assert_eq!(qubo.k(), roles.len());
        let (p, q) = f.polarity_extremes();
        Self {
            method,
            qubo,
            roles,
            num_vars: f.num_vars(),
            num_clauses: f.num_clauses(),
            p,
            q,
        }
    }

    pub fn k(&self) -> usize {
        self.qubo.k()
    }

    pub fn kind(&self) -> MethodKind {
        self.method.kind()
    }

    /// Decodes with the method's own rule.
    pub fn decode(&self, x: &BitVector) -> Result<Assignment, TranslateError> {
        match self.kind() {
            MethodKind::Choi => decode_choi(self, x),
            MethodKind::Nuesslein2nm => decode_nuesslein2nm(self, x),
            MethodKind::Chancellor | MethodKind::NuessleinNm => decode_direct(self, x),
        }
    }

    pub(crate) fn check_len(&self, x: &BitVector) -> Result<(), TranslateError> {
        if x.len() != self.k() {
            return Err(TranslateError::LengthMismatch {
                expected: self.k(),
                got: x.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn require_strict(f: &Formula) -> Result<(), TranslateError> {
    match f.clauses().iter().position(|c| !c.is_strict()) {
        Some(k) => Err(TranslateError::NotStrict(k)),
        None => Ok(()),
    }
}

/// `v_j = ⊤` iff `x_j = 1`; aux and ancilla bits are ignored.
///
/// Applies to the Chancellor and Nüßlein `n+m` translations, whose first `n`
/// qubits are the variables.
pub fn decode_direct(t: &Translation, x: &BitVector) -> Result<Assignment, TranslateError> {
    match t.kind() {
        MethodKind::Chancellor | MethodKind::NuessleinNm => {}
        method => {
            return Err(TranslateError::MethodMismatch {
                op: "direct decoding",
                method,
            })
        }
    }
    t.check_len(x)?;
    Ok(Assignment::new(x.bits()[..t.num_vars].to_vec()))
}

/// Ground-state energy of `method`'s translation of `f` when the MAX-3-SAT
/// optimum of `f` is `opt`.
pub fn expected_min_energy(method: &Method, f: &Formula, opt: usize) -> Result<i64, TranslateError> {
    let m = f.num_clauses() as i64;
    let opt = opt as i64;
    Ok(match method {
        Method::Nuesslein2nm => -opt,
        Method::NuessleinNm { .. } => {
            let (p, q) = f.polarity_extremes();
            -((p + q) as i64) + (m - opt)
        }
        Method::Choi(p) => {
            p.validate()?;
            -p.x * opt
        }
        Method::Chancellor(p) => {
            p.validate()?;
            let mut base = 0;
            for clause in f.clauses() {
                base += chancellor_clause_levels(clause, p)?.0;
            }
            base + p.g * (m - opt)
        }
    })
}
