//! JSON file schemas for states and operations.
//!
//! Complex numbers are always two-element arrays `[re, im]`. A state file
//! carries either Dicke coefficients or a point list:
//!
//! ```json
//! {"n": 3, "dicke": [[0.7071, 0.0], [0.0, 0.0], [0.0, 0.0], [0.7071, 0.0]]}
//! {"n": 3, "points": [{"alpha": [1.0, 0.0], "beta": [0.0, 0.0], "mult": 3}]}
//! ```
//!
//! An operation file holds the row-major 2x2 matrix on basis order
//! `(|1>, |0>)`:
//!
//! ```json
//! {"matrix": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{DickeVector, LocalOperation, MajoranaDecomposition, SpinorPoint};

fn cx(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

/// One point entry in a state file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointJson {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub mult: usize,
}

/// A state file: exactly one of `dicke` or `points` must be present.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dicke: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointJson>>,
}

/// An operation file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IloJson {
    pub matrix: [[[f64; 2]; 2]; 2],
}

/// A parsed state file in whichever representation it used.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Dicke(DickeVector),
    Points(MajoranaDecomposition),
}

impl LoadedState {
    /// Coefficient form, converting a point list if necessary.
    pub fn into_dicke(self) -> DickeVector {
        match self {
            LoadedState::Dicke(d) => d,
            LoadedState::Points(p) => crate::majorana::points_to_dicke(&p),
        }
    }
}

impl StateJson {
    pub fn from_dicke(state: &DickeVector) -> Self {
        Self {
            n: state.n_qubits(),
            dicke: Some(state.coeffs().iter().map(|&c| pair(c)).collect()),
            points: None,
        }
    }

    pub fn from_points(decomp: &MajoranaDecomposition) -> Self {
        Self {
            n: decomp.n_qubits(),
            dicke: None,
            points: Some(
                decomp
                    .points()
                    .iter()
                    .map(|&(p, mult)| PointJson {
                        alpha: pair(p.alpha()),
                        beta: pair(p.beta()),
                        mult,
                    })
                    .collect(),
            ),
        }
    }

    /// Validates and converts into domain types.
    pub fn load(&self) -> Result<LoadedState> {
        match (&self.dicke, &self.points) {
            (Some(_), Some(_)) => Err(Error::InvalidFormat(
                "state file has both \"dicke\" and \"points\"".into(),
            )),
            (None, None) => Err(Error::InvalidFormat(
                "state file needs either \"dicke\" or \"points\"".into(),
            )),
            (Some(coeffs), None) => {
                let raw: Vec<Complex64> = coeffs.iter().map(|&p| cx(p)).collect();
                Ok(LoadedState::Dicke(DickeVector::new(self.n, &raw)?))
            }
            (None, Some(points)) => {
                let pairs = points
                    .iter()
                    .map(|p| Ok((SpinorPoint::new(cx(p.alpha), cx(p.beta))?, p.mult)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(LoadedState::Points(MajoranaDecomposition::new(
                    self.n, pairs,
                )?))
            }
        }
    }
}

impl IloJson {
    pub fn from_operation(op: &LocalOperation) -> Self {
        let e = op.entries();
        Self {
            matrix: [
                [pair(e[0][0]), pair(e[0][1])],
                [pair(e[1][0]), pair(e[1][1])],
            ],
        }
    }

    pub fn load(&self) -> Result<LocalOperation> {
        let m = &self.matrix;
        LocalOperation::new(cx(m[0][0]), cx(m[0][1]), cx(m[1][0]), cx(m[1][1]))
    }
}

/// Parses a state file from JSON text.
pub fn parse_state(text: &str) -> Result<LoadedState> {
    let json: StateJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidFormat(e.to_string()))?;
    json.load()
}

/// Parses an operation file from JSON text.
pub fn parse_ilo(text: &str) -> Result<LocalOperation> {
    let json: IloJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidFormat(e.to_string()))?;
    json.load()
}

/// Serializes a state in coefficient form.
pub fn state_to_json(state: &DickeVector) -> String {
    serde_json::to_string(&StateJson::from_dicke(state)).expect("schema serializes")
}

/// Serializes a state in point form.
pub fn points_to_json(decomp: &MajoranaDecomposition) -> String {
    serde_json::to_string(&StateJson::from_points(decomp)).expect("schema serializes")
}

/// Serializes an operation.
pub fn ilo_to_json(op: &LocalOperation) -> String {
    serde_json::to_string(&IloJson::from_operation(op)).expect("schema serializes")
}
