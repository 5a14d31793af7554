//! Multipartite pure states: canonical constructors, copy formation, and
//! file I/O.
//!
//! A state file is a JSON document with two fields: `dims`, the list of party
//! dimensions, and `amps`, the amplitudes as `[real, imaginary]` pairs in
//! row-major order (last party index fastest). The reader accepts both
//! compact and pretty-printed documents.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::DenseTensor;

/// A state flagged as normalized keeps its norm within this of 1.
pub const NORM_FLAG_TOLERANCE: f64 = 1e-9;

/// Largest norm deviation the strict loading policy accepts.
pub const STRICT_NORM_TOLERANCE: f64 = 1e-6;

/// How to treat input amplitudes whose norm is not 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NormalizationPolicy {
    /// Rescale to unit norm, recording a warning for non-trivial deviations.
    #[default]
    Auto,
    /// Reject deviations beyond [`STRICT_NORM_TOLERANCE`].
    Strict,
}

/// Pure state of `m` parties with amplitudes stored as a rank-`m` tensor,
/// axis `j` indexing party `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: DenseTensor,
    normalized: bool,
}

/// Result of loading a state file: the state plus any policy warnings.
#[derive(Clone, Debug)]
pub struct LoadedState {
    pub state: PureState,
    pub warnings: Vec<String>,
}

impl PureState {
    /// Wraps amplitudes that are already unit-norm.
    pub fn new(amps: DenseTensor) -> Result<Self> {
        let state = Self::new_unnormalized(amps)?;
        let norm = state.amps.norm();
        if (norm - 1.0).abs() > NORM_FLAG_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { normalized: true, ..state })
    }

    /// Wraps amplitudes of arbitrary norm (the `normalized` flag stays off).
    pub fn new_unnormalized(amps: DenseTensor) -> Result<Self> {
        if amps.rank() == 0 {
            return Err(Error::InvalidParam("a state needs at least one party".into()));
        }
        if let Some(&d) = amps.shape().iter().find(|&&d| d < 2) {
            return Err(Error::InvalidParam(format!("party dimension {d} is below 2")));
        }
        Ok(Self { dims: amps.shape().to_vec(), amps, normalized: false })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of parties.
    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn amps(&self) -> &DenseTensor {
        &self.amps
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// Returns the same ray rescaled to unit norm.
    pub fn renormalized(&self) -> Result<Self> {
        let norm = self.amps.norm();
        if norm == 0.0 {
            return Err(Error::InvalidParam("cannot normalize the zero vector".into()));
        }
        let amps = self.amps.scaled(C64::new(1.0 / norm, 0.0));
        Ok(Self { dims: self.dims.clone(), amps, normalized: true })
    }

    /// `q`-fold tensor power of the amplitudes, laid out copy-major: axis
    /// `r*m + j` of the result is copy `r`, party `j` (for `m` parties).
    pub fn copies(&self, q: usize) -> Result<DenseTensor> {
        if q == 0 {
            return Err(Error::InvalidParam("copies needs q >= 1".into()));
        }
        let mut out = self.amps.clone();
        for _ in 1..q {
            out = out.outer(&self.amps)?;
        }
        Ok(out)
    }

    /// Writes the state to a file; see the module docs for the format.
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = StateFile {
            dims: self.dims.clone(),
            amps: self.amps.data().iter().map(|z| [z.re, z.im]).collect(),
        };
        let mut text = serde_json::to_string_pretty(&file)
            .map_err(|e| Error::Format(e.to_string()))?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    /// Reads a state file, applying the given normalization policy.
    pub fn load(path: &Path, policy: NormalizationPolicy) -> Result<LoadedState> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, policy)
    }

    /// Parses a state document from text; see [`PureState::load`].
    pub fn from_json(text: &str, policy: NormalizationPolicy) -> Result<LoadedState> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if file.dims.is_empty() {
            return Err(Error::Format("dims must list at least one party".into()));
        }
        if let Some(&d) = file.dims.iter().find(|&&d| d < 2) {
            return Err(Error::Format(format!("party dimension {d} is below 2")));
        }
        let amps: Vec<C64> = file.amps.iter().map(|[re, im]| C64::new(*re, *im)).collect();
        let tensor = DenseTensor::new(file.dims, amps).map_err(|e| match e {
            Error::ShapeMismatch(msg) => Error::Format(msg),
            other => other,
        })?;

        let norm = tensor.norm();
        if norm == 0.0 {
            return Err(Error::Format("state has zero norm".into()));
        }
        let deviation = (norm - 1.0).abs();
        let mut warnings = Vec::new();
        match policy {
            NormalizationPolicy::Strict => {
                if deviation > STRICT_NORM_TOLERANCE {
                    return Err(Error::NotNormalized { norm });
                }
            }
            NormalizationPolicy::Auto => {
                if deviation > STRICT_NORM_TOLERANCE {
                    warnings.push(format!(
                        "input norm {norm:.6e} deviates from 1; amplitudes were rescaled"
                    ));
                }
            }
        }
        let state = Self::new_unnormalized(tensor)?.renormalized()?;
        Ok(LoadedState { state, warnings })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: Vec<usize>,
    amps: Vec<[f64; 2]>,
}

/// Normalized product state of the given local vectors (each of dimension >= 2).
pub fn product_state(locals: &[Vec<C64>]) -> Result<PureState> {
    if locals.is_empty() {
        return Err(Error::InvalidParam("product state needs at least one party".into()));
    }
    let mut amps: Option<DenseTensor> = None;
    for local in locals {
        if local.len() < 2 {
            return Err(Error::InvalidParam(format!(
                "local vector of dimension {} is below 2",
                local.len()
            )));
        }
        let vec = DenseTensor::new(vec![local.len()], local.clone())?;
        let norm = vec.norm();
        if norm == 0.0 {
            return Err(Error::InvalidParam("local vector has zero norm".into()));
        }
        let vec = vec.scaled(C64::new(1.0 / norm, 0.0));
        amps = Some(match amps {
            None => vec,
            Some(acc) => acc.outer(&vec)?,
        });
    }
    PureState::new(amps.expect("at least one party"))
}

/// `m`-qubit state with equal weight on the all-0 and all-1 basis states.
pub fn ghz(m: usize) -> Result<PureState> {
    if m < 2 {
        return Err(Error::InvalidParam(format!("ghz needs m >= 2, got {m}")));
    }
    let mut amps = DenseTensor::zeros(&vec![2; m])?;
    let w = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps.set(&vec![0; m], w);
    amps.set(&vec![1; m], w);
    PureState::new(amps)
}

/// `m`-qubit state with equal weight on the basis states of Hamming weight 1.
pub fn w(m: usize) -> Result<PureState> {
    if m < 2 {
        return Err(Error::InvalidParam(format!("w needs m >= 2, got {m}")));
    }
    let mut amps = DenseTensor::zeros(&vec![2; m])?;
    let weight = C64::new(1.0 / (m as f64).sqrt(), 0.0);
    for j in 0..m {
        let mut idx = vec![0; m];
        idx[j] = 1;
        amps.set(&idx, weight);
    }
    PureState::new(amps)
}

/// Two-qubit state `(|00> + |11>)/sqrt(2)`.
pub fn bell() -> PureState {
    ghz(2).expect("fixed small constructor")
}

/// Maximally entangled state of two `n`-level parties, `sum_i |ii>/sqrt(n)`.
pub fn max_entangled_qudit(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "max_entangled_qudit needs n >= 2, got {n}"
        )));
    }
    let mut amps = DenseTensor::zeros(&[n, n])?;
    let w = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    for i in 0..n {
        amps.set(&[i, i], w);
    }
    PureState::new(amps)
}
