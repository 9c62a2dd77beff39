//! JSON state files: `{"dims": [..], "kind": "pure" | "mixed", "data": .., "label": ..}`.
//!
//! Pure data is a list of `[re, im]` pairs of length `D`; mixed data is a
//! row-major `D × D` nested list of pairs.

use std::path::Path;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::tensor::{DenseOperator, DensityMatrix, Matrix, PureState, SubsystemDims, C64};
use crate::zoo::State;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFileKind {
    Pure,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateData {
    Vector(Vec<[f64; 2]>),
    Matrix(Vec<Vec<[f64; 2]>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub kind: StateFileKind,
    pub data: StateData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

impl StateFile {
    pub fn from_state(state: &State, label: Option<String>) -> Self {
        let dims = state.dims().as_slice().to_vec();
        match state {
            State::Pure(psi) => StateFile {
                dims,
                kind: StateFileKind::Pure,
                data: StateData::Vector(psi.amplitudes().iter().copied().map(pair).collect()),
                label,
            },
            State::Mixed(rho) => {
                let m = rho.matrix();
                let rows = (0..m.nrows())
                    .map(|r| (0..m.ncols()).map(|c| pair(m[(r, c)])).collect())
                    .collect();
                StateFile {
                    dims,
                    kind: StateFileKind::Mixed,
                    data: StateData::Matrix(rows),
                    label,
                }
            }
        }
    }

    /// Validates shape and state invariants; the error names the first
    /// failing check.
    pub fn to_state(&self) -> Result<State, String> {
        let dims = SubsystemDims::new(self.dims.clone()).map_err(|e| format!("dims: {e}"))?;
        let d = dims.total();
        let z = |p: &[f64; 2]| C64::new(p[0], p[1]);
        match (&self.kind, &self.data) {
            (StateFileKind::Pure, StateData::Vector(v)) => {
                if v.len() != d {
                    return Err(format!("data: {} amplitudes for dimension {d}", v.len()));
                }
                let amps = DVector::from_iterator(d, v.iter().map(z));
                PureState::new(dims, amps)
                    .map(State::Pure)
                    .map_err(|e| format!("pure state: {e}"))
            }
            (StateFileKind::Mixed, StateData::Matrix(rows)) => {
                if rows.len() != d {
                    return Err(format!("data: {} rows for dimension {d}", rows.len()));
                }
                if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != d) {
                    return Err(format!("data: row {i} has {} entries, expected {d}", r.len()));
                }
                let m = Matrix::from_fn(d, d, |r, c| z(&rows[r][c]));
                let op = DenseOperator::new(dims, m).map_err(|e| format!("data: {e}"))?;
                DensityMatrix::new(op)
                    .map(State::Mixed)
                    .map_err(|e| format!("density matrix: {e}"))
            }
            (StateFileKind::Pure, StateData::Matrix(_)) => {
                Err("data: kind \"pure\" needs a flat list of [re, im] pairs".into())
            }
            (StateFileKind::Mixed, StateData::Vector(_)) => {
                Err("data: kind \"mixed\" needs a nested D x D list".into())
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed state file: {e}"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state files always serialize")
    }

    pub fn load(path: &Path) -> Result<State, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text)?.to_state()
    }
}
