//! JSON setup schema:
//!
//! ```json
//! { "name": "...", "dim_l": 1, "dim_m": 2, "labels": ["h","e","f"],
//!   "brackets": [[i,j,k,v]], "cobracket": [[i,j,k,v]], "phi": [[a,b,c,v]],
//!   "bidynamical": true, "tolerances": {"structure": 1e-10, "cond_max": 1e8} }
//! ```
//!
//! Indices are 0-based in the g basis order (l-block first). Entry values may
//! be JSON numbers or decimal strings.

use super::basis::DecomposedBasis;
use super::lie::LieAlgebraData;
use super::quasi::{QuasiBialgebra, Tolerances, ValidationReport};
use crate::error::AlgebraError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetupDoc {
    pub name: String,
    pub dim_l: usize,
    pub dim_m: usize,
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<serde_json::Value>,
    #[serde(default)]
    pub cobracket: Vec<serde_json::Value>,
    #[serde(default)]
    pub phi: Vec<serde_json::Value>,
    #[serde(default)]
    pub bidynamical: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<TolDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TolDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond_max: Option<f64>,
}

fn parse_entry(v: &serde_json::Value) -> Result<(usize, usize, usize, f64), AlgebraError> {
    let arr = v
        .as_array()
        .ok_or_else(|| AlgebraError::Parse(format!("entry {v} is not an array")))?;
    if arr.len() != 4 {
        return Err(AlgebraError::Parse(format!(
            "entry {v} must have 4 elements [i, j, k, value]"
        )));
    }
    let idx = |x: &serde_json::Value| -> Result<usize, AlgebraError> {
        x.as_u64()
            .map(|u| u as usize)
            .ok_or_else(|| AlgebraError::Parse(format!("index {x} is not a non-negative integer")))
    };
    let val = match &arr[3] {
        serde_json::Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| AlgebraError::Parse(format!("value {} not representable", arr[3])))?,
        // exact decimal strings are allowed for structure constants
        serde_json::Value::String(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|e| AlgebraError::Parse(format!("bad decimal string {s:?}: {e}")))?,
        other => return Err(AlgebraError::Parse(format!("bad value {other}"))),
    };
    Ok((idx(&arr[0])?, idx(&arr[1])?, idx(&arr[2])?, val))
}

fn entry_json(t: &(usize, usize, usize, f64)) -> serde_json::Value {
    serde_json::json!([t.0, t.1, t.2, t.3])
}

/// Parse and fully validate a setup document.
pub fn load_setup(text: &str) -> Result<(QuasiBialgebra, ValidationReport), AlgebraError> {
    let doc: SetupDoc =
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    let basis = DecomposedBasis::new(doc.dim_l, doc.dim_m, doc.labels.clone())?;
    let brackets = doc
        .brackets
        .iter()
        .map(parse_entry)
        .collect::<Result<Vec<_>, _>>()?;
    let cobracket = doc
        .cobracket
        .iter()
        .map(parse_entry)
        .collect::<Result<Vec<_>, _>>()?;
    let phi = doc
        .phi
        .iter()
        .map(parse_entry)
        .collect::<Result<Vec<_>, _>>()?;
    let g = LieAlgebraData::from_triples(basis, &brackets)?;
    let tol = doc.tolerances.as_ref().map(|t| {
        let base = Tolerances::for_scale(g.max_structure_constant());
        Tolerances {
            structure: t.structure.unwrap_or(base.structure),
            cond_max: t.cond_max.unwrap_or(base.cond_max),
        }
    });
    QuasiBialgebra::new(doc.name, g, &cobracket, &phi, doc.bidynamical, tol)
}

/// Export back to the schema (entries sorted, deterministic).
pub fn export_setup(qb: &QuasiBialgebra) -> SetupDoc {
    SetupDoc {
        name: qb.name.clone(),
        dim_l: qb.layout().dl,
        dim_m: qb.layout().dm,
        labels: qb.g.basis.labels.clone(),
        brackets: qb.g.triples_lower().iter().map(entry_json).collect(),
        cobracket: qb.cobracket_triples().iter().map(entry_json).collect(),
        phi: qb.phi_triples().iter().map(entry_json).collect(),
        bidynamical: qb.bidynamical,
        tolerances: None,
    }
}

pub fn export_json(qb: &QuasiBialgebra) -> String {
    serde_json::to_string_pretty(&export_setup(qb)).expect("setup serialization")
}
