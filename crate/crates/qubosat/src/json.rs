//! JSON documents for QUBO matrices, translations, solver results and
//! annealing configuration.
//!
//! A QUBO is `{"k": 2, "entries": [[0, 0, -2], [0, 1, 3]]}` with entries in
//! `(i, j)` order. Weights may be written as reals but must be integer-valued.
//! A translation adds a `roles` array (one string per qubit) and a `meta`
//! object with the method, its parameters and the source formula's `n`, `m`,
//! `p` and `q`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Number, Value};

use qubosat_core::translate::QubitRole;
use qubosat_core::{
    ChancellorParams, ChoiParams, Method, MethodKind, QuboError, QuboMatrix, SaParams,
    SolveResult, TranslateError, Translation,
};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("weight {0} is not an integer")]
    NonIntegerWeight(String),
    #[error(transparent)]
    Qubo(#[from] QuboError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error("roles array has {got} entries for {k} qubits")]
    RoleCount { k: usize, got: usize },
    #[error("translation document needs `roles` and `meta`")]
    NotATranslation,
    #[error("invalid parameters for {method}: {reason}")]
    Params { method: MethodKind, reason: String },
}

#[derive(Serialize, Deserialize)]
struct QuboDoc {
    k: usize,
    entries: Vec<(usize, usize, Number)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roles: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

#[derive(Serialize, Deserialize)]
struct Meta {
    method: String,
    n: usize,
    m: usize,
    p: usize,
    q: usize,
    #[serde(default)]
    params: Map<String, Value>,
}

fn weight(n: &Number) -> Result<i64, JsonError> {
    if let Some(w) = n.as_i64() {
        return Ok(w);
    }
    match n.as_f64() {
        Some(w) if w.fract() == 0.0 && w.abs() < 9.0e15 => Ok(w as i64),
        _ => Err(JsonError::NonIntegerWeight(n.to_string())),
    }
}

fn qubo_doc(q: &QuboMatrix) -> QuboDoc {
    QuboDoc {
        k: q.k(),
        entries: q.entries().map(|(i, j, w)| (i, j, w.into())).collect(),
        roles: None,
        meta: None,
    }
}

fn matrix_of(doc: &QuboDoc) -> Result<QuboMatrix, JsonError> {
    let mut q = QuboMatrix::new(doc.k);
    for (i, j, w) in &doc.entries {
        q.add(*i, *j, weight(w)?)?;
    }
    Ok(q)
}

pub fn qubo_to_json(q: &QuboMatrix) -> String {
    serde_json::to_string(&qubo_doc(q)).expect("serializable")
}

/// Reads a bare QUBO document; `roles` and `meta`, if present, are ignored.
pub fn qubo_from_json(text: &str) -> Result<QuboMatrix, JsonError> {
    matrix_of(&serde_json::from_str(text)?)
}

/// Parameters of `method` as a JSON object.
pub fn method_params(method: &Method) -> Map<String, Value> {
    let value = match method {
        Method::Choi(p) => json!({"x": p.x, "y": p.y, "z": p.z}),
        Method::Chancellor(p) => {
            json!({"h": p.h, "g": p.g, "h_a": p.h_a, "j": p.j, "j_a": p.j_a})
        }
        Method::Nuesslein2nm => json!({}),
        Method::NuessleinNm { share_aux } => json!({"share_aux": share_aux}),
    };
    match value {
        Value::Object(map) => map,
        _ => unreachable!(),
    }
}

/// Rebuilds a [`Method`] from its kind and parameter object. Missing
/// parameters take their defaults.
pub fn method_from_params(kind: MethodKind, params: &Map<String, Value>) -> Result<Method, JsonError> {
    let bad = |reason: String| JsonError::Params { method: kind, reason };
    let int = |key: &str, default: i64| -> Result<i64, JsonError> {
        match params.get(key) {
            None => Ok(default),
            Some(Value::Number(n)) => weight(n),
            Some(v) => Err(bad(format!("{key} must be a number, got {v}"))),
        }
    };
    Ok(match kind {
        MethodKind::Choi => {
            let d = ChoiParams::default();
            let p = ChoiParams {
                x: int("x", d.x)?,
                y: int("y", d.y)?,
                z: int("z", d.z)?,
            };
            p.validate()?;
            Method::Choi(p)
        }
        MethodKind::Chancellor => {
            let d = ChancellorParams::default();
            let p = ChancellorParams {
                h: int("h", d.h)?,
                g: int("g", d.g)?,
                h_a: int("h_a", d.h_a)?,
                j: int("j", d.j)?,
                j_a: int("j_a", d.j_a)?,
            };
            p.validate()?;
            Method::Chancellor(p)
        }
        MethodKind::Nuesslein2nm => Method::Nuesslein2nm,
        MethodKind::NuessleinNm => match params.get("share_aux") {
            None => Method::NuessleinNm { share_aux: true },
            Some(Value::Bool(b)) => Method::NuessleinNm { share_aux: *b },
            Some(v) => return Err(bad(format!("share_aux must be a boolean, got {v}"))),
        },
    })
}

pub fn translation_to_json(t: &Translation) -> String {
    let mut doc = qubo_doc(&t.qubo);
    doc.roles = Some(t.roles.iter().map(ToString::to_string).collect());
    doc.meta = Some(Meta {
        method: t.kind().name().to_string(),
        n: t.num_vars,
        m: t.num_clauses,
        p: t.p,
        q: t.q,
        params: method_params(&t.method),
    });
    serde_json::to_string(&doc).expect("serializable")
}

/// Input of the solver: a bare QUBO or a full translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuboInput {
    Matrix(QuboMatrix),
    Translation(Translation),
}

impl QuboInput {
    pub fn qubo(&self) -> &QuboMatrix {
        match self {
            QuboInput::Matrix(q) => q,
            QuboInput::Translation(t) => &t.qubo,
        }
    }
}

/// Reads either document kind, depending on whether `meta` is present.
pub fn read_qubo_input(text: &str) -> Result<QuboInput, JsonError> {
    let doc: QuboDoc = serde_json::from_str(text)?;
    let qubo = matrix_of(&doc)?;
    let Some(meta) = doc.meta else {
        return Ok(QuboInput::Matrix(qubo));
    };
    let roles = doc.roles.unwrap_or_default();
    if roles.len() != qubo.k() {
        return Err(JsonError::RoleCount {
            k: qubo.k(),
            got: roles.len(),
        });
    }
    let roles = roles
        .iter()
        .map(|r| r.parse::<QubitRole>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QuboInput::Translation(Translation {
        method: method_from_params(meta.method.parse()?, &meta.params)?,
        qubo,
        roles,
        num_vars: meta.n,
        num_clauses: meta.m,
        p: meta.p,
        q: meta.q,
    }))
}

pub fn translation_from_json(text: &str) -> Result<Translation, JsonError> {
    match read_qubo_input(text)? {
        QuboInput::Translation(t) => Ok(t),
        QuboInput::Matrix(_) => Err(JsonError::NotATranslation),
    }
}

/// Solver output: `{"best_bits": "0101…", "energy": e, "evaluations": n, …}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub best_bits: String,
    pub energy: i64,
    pub evaluations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Decoded assignment as a bit string, `v_0` first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl SolveReport {
    pub fn new(r: &SolveResult, solver: &str) -> Self {
        Self {
            best_bits: r.best.to_string(),
            energy: r.best_energy,
            evaluations: r.evaluations,
            solver: Some(solver.to_string()),
            restarts: (r.restarts_used > 0).then_some(r.restarts_used),
            method: None,
            assignment: None,
            satisfied: None,
            m: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Annealing configuration block; omitted fields keep their defaults.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SaConfig {
    pub sweeps: usize,
    pub restarts: usize,
    pub t_initial: f64,
    pub t_final: f64,
    pub seed: u64,
}

impl Default for SaConfig {
    fn default() -> Self {
        SaParams::default().into()
    }
}

impl From<SaParams> for SaConfig {
    fn from(p: SaParams) -> Self {
        Self {
            sweeps: p.sweeps,
            restarts: p.restarts,
            t_initial: p.t_initial,
            t_final: p.t_final,
            seed: p.seed,
        }
    }
}

impl From<SaConfig> for SaParams {
    fn from(c: SaConfig) -> Self {
        Self {
            sweeps: c.sweeps,
            restarts: c.restarts,
            t_initial: c.t_initial,
            t_final: c.t_final,
            seed: c.seed,
        }
    }
}

impl SaConfig {
    pub fn from_json(text: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qubosat_core::formula::random_3sat;
    use qubosat_core::BitVector;

    #[test]
    fn small_matrix_document() {
        let q = QuboMatrix::from_entries(2, [(0, 0, -2), (0, 1, 3)]).unwrap();
        assert_eq!(qubo_to_json(&q), r#"{"k":2,"entries":[[0,0,-2],[0,1,3]]}"#);
        assert_eq!(qubo_from_json(&qubo_to_json(&q)).unwrap(), q);
    }

    #[test]
    fn integral_reals_are_accepted() {
        let q = qubo_from_json(r#"{"k":2,"entries":[[0,0,-2.0],[0,1,3e0]]}"#).unwrap();
        assert_eq!(q.get(0, 1), 3);
        assert!(matches!(
            qubo_from_json(r#"{"k":1,"entries":[[0,0,0.5]]}"#),
            Err(JsonError::NonIntegerWeight(_))
        ));
        assert!(matches!(
            qubo_from_json(r#"{"k":2,"entries":[[1,0,1]]}"#),
            Err(JsonError::Qubo(QuboError::LowerTriangle { .. }))
        ));
    }

    #[test]
    fn translation_round_trip() {
        let f = random_3sat(6, 9, 4).unwrap();
        for kind in MethodKind::ALL {
            let t = Method::from(kind).translate(&f).unwrap();
            let text = translation_to_json(&t);
            assert_eq!(translation_from_json(&text).unwrap(), t);
        }
        let t = Method::Chancellor(ChancellorParams::unscaled()).translate(&f).unwrap();
        assert_eq!(translation_from_json(&translation_to_json(&t)).unwrap(), t);
    }

    #[test]
    fn bare_matrix_is_not_a_translation() {
        assert!(matches!(
            translation_from_json(r#"{"k":0,"entries":[]}"#),
            Err(JsonError::NotATranslation)
        ));
        assert_eq!(
            read_qubo_input(r#"{"k":0,"entries":[]}"#).unwrap(),
            QuboInput::Matrix(QuboMatrix::new(0))
        );
    }

    #[test]
    fn report_round_trip() {
        let r = SolveResult {
            best: "0101".parse::<BitVector>().unwrap(),
            best_energy: -3,
            evaluations: 16,
            restarts_used: 0,
        };
        let report = SolveReport::new(&r, "exhaustive");
        let text = report.to_json();
        assert!(text.starts_with(r#"{"best_bits":"0101","energy":-3,"evaluations":16"#));
        assert_eq!(SolveReport::from_json(&text).unwrap(), report);
    }

    #[test]
    fn sa_config_defaults_and_overrides() {
        let c = SaConfig::from_json(r#"{"sweeps": 50, "seed": 7}"#).unwrap();
        let p: SaParams = c.into();
        assert_eq!((p.sweeps, p.seed, p.restarts), (50, 7, 20));
        assert!(SaConfig::from_json(r#"{"sweep": 50}"#).is_err());
    }
}
