//! JSON state files.
//!
//! ```json
//! {
//!   "ordering": "xpxp",
//!   "omega_a": 1.0,
//!   "omega_b": 1.0,
//!   "cm": [16 numbers, row-major],
//!   "family": "tms",
//!   "params": {"k": 2.0, "r": 0.5},
//!   "gaussian": true,
//!   "seed": null
//! }
//! ```
//!
//! `ordering` may also be `"xxpp"`, in which case the matrix is permuted on
//! read. An optional `displacement` array is accepted but ignored: every
//! quantity computed here depends on second moments only.

use std::fs;
use std::path::Path;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::energetics::ModePair;
use crate::error::{Error, Result};
use crate::phase_space::{ensure_physical, CovarianceMatrix};
use crate::states::{FamilyParams, StateRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    Xpxp,
    Xxpp,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub ordering: Ordering,
    pub omega_a: f64,
    pub omega_b: f64,
    pub cm: Vec<f64>,
    #[serde(flatten)]
    pub params: FamilyParams,
    pub gaussian: bool,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub displacement: Option<Vec<f64>>,
}

/// A validated state together with its mode frequencies.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedState {
    pub record: StateRecord,
    pub modes: ModePair,
}

/// Maps `xxpp` indices to `xpxp` indices.
const XXPP_TO_XPXP: [usize; 4] = [0, 2, 1, 3];

fn reorder(m: &Matrix4<f64>) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| m[(XXPP_TO_XPXP[i], XXPP_TO_XPXP[j])])
}

impl StateFile {
    pub fn from_record(record: &StateRecord, modes: &ModePair) -> Self {
        Self {
            ordering: Ordering::Xpxp,
            omega_a: modes.omega_a(),
            omega_b: modes.omega_b(),
            cm: record.sigma.entries().to_vec(),
            params: record.params,
            gaussian: record.gaussian,
            seed: record.seed,
            displacement: None,
        }
    }

    pub fn into_state(self) -> Result<LoadedState> {
        if self.cm.len() != 16 {
            return Err(Error::Format(format!(
                "cm must hold 16 numbers, found {}",
                self.cm.len()
            )));
        }
        let mut m = Matrix4::from_row_slice(&self.cm);
        if self.ordering == Ordering::Xxpp {
            m = reorder(&m);
        }
        let sigma = CovarianceMatrix::new(m)?;
        ensure_physical(&sigma)?;
        let modes = ModePair::new(self.omega_a, self.omega_b)?;

        let family = self.params.family();
        if family != crate::states::Family::Raw && family.is_gaussian() != self.gaussian {
            return Err(Error::Format(format!(
                "family {family} is inconsistent with gaussian = {}",
                self.gaussian
            )));
        }
        if let Some(d) = &self.displacement {
            if d.iter().any(|x| *x != 0.0) {
                log::warn!("ignoring nonzero displacement {d:?}");
            }
        }
        if let Some(Ok(rebuilt)) = self.params.rebuild() {
            let diff = (rebuilt.matrix() - sigma.matrix()).amax();
            if diff > 1e-9 * sigma.matrix().amax().max(1.0) {
                log::warn!("cm differs from the {family} parameters by {diff:e}; using cm");
            }
        }
        Ok(LoadedState {
            record: StateRecord {
                sigma,
                params: self.params,
                gaussian: self.gaussian,
                seed: self.seed,
            },
            modes,
        })
    }
}

pub fn parse_state(text: &str) -> Result<LoadedState> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.into_state()
}

pub fn to_json(record: &StateRecord, modes: &ModePair) -> String {
    serde_json::to_string_pretty(&StateFile::from_record(record, modes))
        .expect("state files always serialize")
}

pub fn read_state(path: &Path) -> Result<LoadedState> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_state(&text)
}

pub fn write_state(path: &Path, record: &StateRecord, modes: &ModePair) -> Result<()> {
    fs::write(path, to_json(record, modes) + "\n")
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}
