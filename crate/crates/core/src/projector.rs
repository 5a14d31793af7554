//! Projections of state copies onto symmetry components: symmetrizer,
//! antisymmetrizer, and total-spin projectors on qubit copies.
//!
//! Projectors are never materialized as matrices; they act on a copies
//! tensor by permutation averaging, so memory stays linear in the tensor.

use itertools::Itertools;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::state::PureState;
use crate::tensor::{permutation_sign, DenseTensor};

/// Per-party choice of symmetry component at copy order `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    /// Fully symmetric component (any local dimension).
    Symmetric,
    /// Fully antisymmetric component (needs `q <=` local dimension).
    Antisymmetric,
    /// Total-spin-`j` component of `q` qubit copies; stores `2j`.
    Spin { twice_j: usize },
}

impl std::fmt::Display for Selector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Selector::Symmetric => write!(f, "sym"),
            Selector::Antisymmetric => write!(f, "antisym"),
            Selector::Spin { twice_j } => {
                if twice_j.is_multiple_of(2) {
                    write!(f, "spin:{}", twice_j / 2)
                } else {
                    write!(f, "spin:{twice_j}/2")
                }
            }
        }
    }
}

impl std::str::FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "sym" | "+" => return Ok(Selector::Symmetric),
            "antisym" | "-" => return Ok(Selector::Antisymmetric),
            _ => {}
        }
        if let Some(j) = t.strip_prefix("spin:") {
            let twice_j = if let Some((num, den)) = j.split_once('/') {
                if den.trim() != "2" {
                    return Err(Error::InvalidParam(format!("bad spin value {j:?}")));
                }
                num.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParam(format!("bad spin value {j:?}")))?
            } else if let Some(doubled) = j.trim().parse::<f64>().ok().map(|x| x * 2.0) {
                if doubled < 0.0 || doubled.fract() != 0.0 {
                    return Err(Error::InvalidParam(format!("bad spin value {j:?}")));
                }
                doubled as usize
            } else {
                return Err(Error::InvalidParam(format!("bad spin value {j:?}")));
            };
            return Ok(Selector::Spin { twice_j });
        }
        Err(Error::InvalidParam(format!("unknown selector {s:?}")))
    }
}

/// A copy order plus one [`Selector`] per party.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorSpec {
    q: usize,
    parties: Vec<Selector>,
}

impl ProjectorSpec {
    pub fn new(q: usize, parties: Vec<Selector>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParam("projector spec needs q >= 1".into()));
        }
        if parties.is_empty() {
            return Err(Error::InvalidParam("projector spec needs at least one party".into()));
        }
        Ok(Self { q, parties })
    }

    /// Parses a comma-separated selector list such as `"antisym,antisym,sym"`.
    pub fn parse(q: usize, text: &str) -> Result<Self> {
        let parties = text
            .split(',')
            .map(|part| part.parse::<Selector>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, parties)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn parties(&self) -> &[Selector] {
        &self.parties
    }

    /// Selector list, e.g. `"antisym,antisym,sym"`.
    pub fn label(&self) -> String {
        self.parties.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Checks the spec against a state's party dimensions.
    pub fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if dims.len() != self.parties.len() {
            return Err(Error::Inapplicable(format!(
                "projector spec covers {} parties, state has {}",
                self.parties.len(),
                dims.len()
            )));
        }
        for (j, (sel, &d)) in self.parties.iter().zip(dims).enumerate() {
            match sel {
                Selector::Symmetric => {}
                Selector::Antisymmetric => {
                    if self.q > d {
                        return Err(Error::Inapplicable(format!(
                            "party {j}: antisymmetrizing {} copies of dimension {d} \
                             leaves a zero-dimensional component",
                            self.q
                        )));
                    }
                }
                Selector::Spin { twice_j } => {
                    if d != 2 {
                        return Err(Error::Inapplicable(format!(
                            "party {j}: spin selectors need dimension 2, state has {d}"
                        )));
                    }
                    if *twice_j > self.q || !(self.q - twice_j).is_multiple_of(2) {
                        return Err(Error::Inapplicable(format!(
                            "party {j}: spin {} is not reachable from {} copies",
                            Selector::Spin { twice_j: *twice_j },
                            self.q
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// All `2^m` sym/antisym patterns at `q = 2`, ordered with `sym` first.
pub fn q2_sign_patterns(m: usize) -> Vec<ProjectorSpec> {
    (0..1usize << m)
        .map(|mask| {
            let parties = (0..m)
                .map(|j| {
                    if mask >> (m - 1 - j) & 1 == 0 {
                        Selector::Symmetric
                    } else {
                        Selector::Antisymmetric
                    }
                })
                .collect();
            ProjectorSpec::new(2, parties).expect("m >= 1")
        })
        .collect()
}

/// Doubled total-spin values reachable by `q` qubit copies, descending.
pub fn admissible_twice_js(q: usize) -> Vec<usize> {
    (0..=q).rev().filter(|tj| (q - tj).is_multiple_of(2)).collect()
}

/// All per-party spin patterns for `m` qubit parties at copy order `q`.
pub fn spin_patterns(m: usize, q: usize) -> Vec<ProjectorSpec> {
    let js = admissible_twice_js(q);
    (0..m)
        .map(|_| js.iter().copied())
        .multi_cartesian_product()
        .map(|combo| {
            let parties = combo.into_iter().map(|twice_j| Selector::Spin { twice_j }).collect();
            ProjectorSpec::new(q, parties).expect("m >= 1")
        })
        .collect()
}

fn check_axes(t: &DenseTensor, axes: &[usize]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for &a in axes {
        if a >= t.rank() {
            return Err(Error::ShapeMismatch(format!(
                "axis {a} out of range for rank {}",
                t.rank()
            )));
        }
        if !seen.insert(a) {
            return Err(Error::ShapeMismatch(format!("axis {a} listed twice")));
        }
        if t.shape()[a] != t.shape()[axes[0]] {
            return Err(Error::ShapeMismatch("projector axes must share one extent".into()));
        }
    }
    Ok(())
}

fn permutation_average(t: &DenseTensor, axes: &[usize], signed: bool) -> Result<DenseTensor> {
    check_axes(t, axes)?;
    let q = axes.len();
    let mut acc = DenseTensor::zeros(t.shape())?;
    let mut count = 0.0f64;
    for perm in (0..q).permutations(q) {
        let mut full: Vec<usize> = (0..t.rank()).collect();
        for (k, &p) in perm.iter().enumerate() {
            full[axes[k]] = axes[p];
        }
        let term = t.permute_axes(&full)?;
        let weight = if signed { permutation_sign(&perm) } else { 1.0 };
        acc = acc.add(&term.scaled(C64::new(weight, 0.0)))?;
        count += 1.0;
    }
    Ok(acc.scaled(C64::new(1.0 / count, 0.0)))
}

/// Projects onto the fully symmetric component of the listed axes.
pub fn symmetrizer_apply(t: &DenseTensor, axes: &[usize]) -> Result<DenseTensor> {
    permutation_average(t, axes, false)
}

/// Projects onto the fully antisymmetric component of the listed axes.
pub fn antisymmetrizer_apply(t: &DenseTensor, axes: &[usize]) -> Result<DenseTensor> {
    permutation_average(t, axes, true)
}

/// Applies the total-spin Casimir on `q` qubit axes through pairwise swaps:
///
/// `J^2 = sum_{r<r'} SWAP_{r r'} + q(4 - q)/4 * Id`,
///
/// which follows from `SWAP = 2 S.S' + 1/2` for a pair of spin-1/2 factors
/// together with `S^2 = 3/4` per factor. At `q = 2` the derived projectors
/// therefore coincide with the symmetrizer (`j = 1`) and antisymmetrizer
/// (`j = 0`), which the tests pin down.
fn casimir_apply(t: &DenseTensor, axes: &[usize]) -> Result<DenseTensor> {
    let q = axes.len() as f64;
    let mut acc = t.scaled(C64::new(q * (4.0 - q) / 4.0, 0.0));
    for (i, &a) in axes.iter().enumerate() {
        for &b in &axes[i + 1..] {
            acc = acc.add(&t.swap_axes(a, b)?)?;
        }
    }
    Ok(acc)
}

/// Projects `q` qubit axes onto total spin `j` (`twice_j = 2j`) by evaluating
/// the spectral polynomial of the Casimir: the product over the other
/// reachable spins `j'` of `(J^2 - j'(j'+1)) / (j(j+1) - j'(j'+1))`.
pub fn spin_projector_apply(t: &DenseTensor, axes: &[usize], twice_j: usize) -> Result<DenseTensor> {
    check_axes(t, axes)?;
    if axes.iter().any(|&a| t.shape()[a] != 2) {
        return Err(Error::Inapplicable("spin projectors act on qubit axes".into()));
    }
    let q = axes.len();
    if twice_j > q || !(q - twice_j).is_multiple_of(2) {
        return Err(Error::Inapplicable(format!(
            "spin {} is not reachable from {q} copies",
            Selector::Spin { twice_j }
        )));
    }
    let casimir_of = |tj: usize| (tj * (tj + 2)) as f64 / 4.0;
    let target = casimir_of(twice_j);
    let mut out = t.clone();
    for other in admissible_twice_js(q) {
        if other == twice_j {
            continue;
        }
        let shift = casimir_of(other);
        let jj = casimir_apply(&out, axes)?;
        out = jj.sub(&out.scaled(C64::new(shift, 0.0)))?
            .scaled(C64::new(1.0 / (target - shift), 0.0));
    }
    Ok(out)
}

fn apply_selector(t: &DenseTensor, axes: &[usize], sel: Selector) -> Result<DenseTensor> {
    match sel {
        Selector::Symmetric => symmetrizer_apply(t, axes),
        Selector::Antisymmetric => antisymmetrizer_apply(t, axes),
        Selector::Spin { twice_j } => spin_projector_apply(t, axes, twice_j),
    }
}

/// Norm of the copies tensor after projecting each party onto its selected
/// component. Party `j` of an `m`-party state occupies copy axes
/// `{ r*m + j : r = 0..q }` of `copies(state, q)`.
pub fn component_norm(state: &PureState, spec: &ProjectorSpec) -> Result<f64> {
    spec.check_dims(state.dims())?;
    let q = spec.q;
    let m = state.parties();
    let mut t = state.copies(q)?;
    for (j, &sel) in spec.parties.iter().enumerate() {
        let axes: Vec<usize> = (0..q).map(|r| r * m + j).collect();
        t = apply_selector(&t, &axes, sel)?;
    }
    Ok(t.norm())
}

/// Squared norm of the all-parties fully-symmetric component of
/// `copies(state, q)`. Equals 1 exactly when the state is a product state.
pub fn husimi_moment(state: &PureState, q: usize) -> Result<f64> {
    let parties = vec![Selector::Symmetric; state.parties()];
    let spec = ProjectorSpec::new(q, parties)?;
    let norm = component_norm(state, &spec)?;
    Ok(norm * norm)
}
