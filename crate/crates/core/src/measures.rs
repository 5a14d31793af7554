//! Entanglement measures built on singlet overlaps and component norms.
//!
//! Every singlet-based measure reports the raw overlap, a headline magnitude
//! (possibly a conventional rescaling of the overlap), and the monotone value
//! `magnitude^(1/q)`, which is invariant under determinant-1 local
//! operations.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::projector::{component_norm, husimi_moment, ProjectorSpec};
use crate::singlet::{overlap, InvariantSpec, SingletId};
use crate::state::PureState;

/// Component norms below this count as zero for SLOCC separation.
pub const WITNESS_ZERO_THRESHOLD: f64 = 1e-8;

/// Minimum gap between two states' values before a witness separates them.
pub const WITNESS_GAP: f64 = 1e-6;

/// A named cross-check value and its deviation from the headline magnitude.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub name: String,
    pub value: f64,
    pub discrepancy: f64,
}

/// Result of evaluating one measure on one state.
#[derive(Clone, Debug)]
pub struct MeasureReport {
    /// Measure name, e.g. `"tangle3"`.
    pub name: String,
    /// Copy order of the underlying projection.
    pub q: usize,
    /// The complex overlap, for singlet-based measures.
    pub raw_overlap: Option<C64>,
    /// Headline value (conventions noted in `notes`).
    pub magnitude: f64,
    /// `magnitude^(1/q)` for singlet-based measures; absent where no
    /// monotonicity claim is made (component norms, Husimi moments).
    pub monotone: Option<f64>,
    /// Set when the overlap is an exact zero by the exchange-parity argument.
    pub vanishes_by_parity: bool,
    /// Alternative evaluations of the same quantity.
    pub cross_checks: Vec<CrossCheck>,
    /// Human-readable conventions and caveats.
    pub notes: Vec<String>,
}

impl MeasureReport {
    fn from_overlap(name: &str, spec: &InvariantSpec, state: &PureState) -> Result<Self> {
        let o = overlap(spec, state)?;
        let magnitude = o.value.norm();
        let q = spec.order();
        Ok(Self {
            name: name.to_string(),
            q,
            raw_overlap: Some(o.value),
            magnitude,
            monotone: Some(magnitude.powf(1.0 / q as f64)),
            vanishes_by_parity: o.vanishes_by_parity,
            cross_checks: Vec::new(),
            notes: Vec::new(),
        })
    }

    /// Largest discrepancy among the cross-checks.
    pub fn max_cross_discrepancy(&self) -> f64 {
        self.cross_checks.iter().map(|c| c.discrepancy).fold(0.0, f64::max)
    }
}

fn require_qubits(state: &PureState, what: &str) -> Result<()> {
    if state.dims().iter().any(|&d| d != 2) {
        return Err(Error::Inapplicable(format!("{what} needs qubit parties")));
    }
    Ok(())
}

/// Two-qubit concurrence `|c11 c00 - c10 c01|` as the magnitude of the
/// pair-singlet overlap. This convention is half the standard spin-flip
/// concurrence of a pure two-qubit state.
pub fn concurrence_2qubit(state: &PureState) -> Result<MeasureReport> {
    if state.dims() != [2, 2] {
        return Err(Error::Inapplicable("concurrence2 needs exactly two qubits".into()));
    }
    let spec = InvariantSpec::new(vec![SingletId::S2, SingletId::S2])?;
    let mut report = MeasureReport::from_overlap("concurrence2", &spec, state)?;
    report.notes.push(
        "half the standard spin-flip concurrence; multiply by 2 to compare".into(),
    );
    Ok(report)
}

/// Order-2 generalized concurrence of `m` qubits: the magnitude of the
/// all-pair-singlet overlap. Vanishes identically for odd `m` (the overlap
/// flips sign under the copy exchange).
pub fn gen_concurrence_order2(state: &PureState) -> Result<MeasureReport> {
    require_qubits(state, "genconc2")?;
    let spec = InvariantSpec::new(vec![SingletId::S2; state.parties()])?;
    let mut report = MeasureReport::from_overlap("genconc2", &spec, state)?;
    if report.vanishes_by_parity {
        report.notes.push("odd party count: the overlap vanishes identically".into());
    }
    Ok(report)
}

/// Residual entanglement (tangle) of three qubits at copy order 4.
///
/// The headline magnitude is `16 |<s4b,s4b,s4c | copies(state, 4)>|`; the
/// report cross-checks it against the two other singlet assignments that
/// compute the same quantity, `8 sqrt(3) |<s4a,s4a,s4a|.>|` and
/// `8 sqrt(3) |<s4b,s4b,s4a|.>|`.
pub fn three_tangle(state: &PureState) -> Result<MeasureReport> {
    if state.dims() != [2, 2, 2] {
        return Err(Error::Inapplicable("tangle3 needs exactly three qubits".into()));
    }
    let canonical = InvariantSpec::new(vec![SingletId::S4b, SingletId::S4b, SingletId::S4c])?;
    let mut report = MeasureReport::from_overlap("tangle3", &canonical, state)?;
    let raw = report.magnitude;
    report.magnitude = 16.0 * raw;
    report.monotone = Some(report.magnitude.powf(0.25));
    report.notes.push("magnitude is 16x the raw overlap".into());

    let scale = 8.0 * 3.0f64.sqrt();
    for (ids, name) in [
        (vec![SingletId::S4a, SingletId::S4a, SingletId::S4a], "8*sqrt(3)*|s4a,s4a,s4a|"),
        (vec![SingletId::S4b, SingletId::S4b, SingletId::S4a], "8*sqrt(3)*|s4b,s4b,s4a|"),
    ] {
        let spec = InvariantSpec::new(ids)?;
        let value = scale * overlap(&spec, state)?.value.norm();
        report.cross_checks.push(CrossCheck {
            name: name.into(),
            value,
            discrepancy: (value - report.magnitude).abs(),
        });
    }
    Ok(report)
}

/// Order-4 invariant of `m >= 3` qubits: the magnitude of the all-`s4a`
/// overlap. Vanishes on weight-1 superposition states for every `m`.
pub fn gen_tangle_order4(state: &PureState) -> Result<MeasureReport> {
    require_qubits(state, "gentangle4")?;
    if state.parties() < 3 {
        return Err(Error::Inapplicable("gentangle4 needs at least three parties".into()));
    }
    MeasureReport::from_overlap(
        "gentangle4",
        &InvariantSpec::new(vec![SingletId::S4a; state.parties()])?,
        state,
    )
}

/// Bipartite qudit measure: the magnitude of the `(sN, sN)` overlap, which
/// equals `|det C|` of the amplitude matrix.
pub fn qudit_det_measure(state: &PureState) -> Result<MeasureReport> {
    let dims = state.dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::Inapplicable(
            "detmeasure needs two parties of equal dimension".into(),
        ));
    }
    let n = dims[0];
    let spec = InvariantSpec::new(vec![SingletId::Sn(n); 2])?;
    let mut report = MeasureReport::from_overlap("detmeasure", &spec, state)?;
    report.notes.push("equals |det C| of the amplitude matrix".into());
    Ok(report)
}

/// Monotone value of an arbitrary singlet assignment:
/// `|overlap|^(1/q)`, reported with the raw overlap.
pub fn monotone(spec: &InvariantSpec, state: &PureState) -> Result<MeasureReport> {
    MeasureReport::from_overlap(&format!("singlet-overlap[{}]", spec.label()), spec, state)
}

/// Husimi moment as a measure report (no monotonicity claim).
pub fn husimi_measure(state: &PureState, q: usize) -> Result<MeasureReport> {
    let value = husimi_moment(state, q)?;
    Ok(MeasureReport {
        name: format!("husimi[q={q}]"),
        q,
        raw_overlap: None,
        magnitude: value,
        monotone: None,
        vanishes_by_parity: false,
        cross_checks: Vec::new(),
        notes: vec!["squared norm of the fully symmetric component; 1 exactly on product states".into()],
    })
}

/// Component norm as a measure report (no monotonicity claim).
pub fn component_measure(state: &PureState, spec: &ProjectorSpec) -> Result<MeasureReport> {
    let norm = component_norm(state, spec)?;
    Ok(MeasureReport {
        name: format!("component-norms[{}; q={}]", spec.label(), spec.q()),
        q: spec.q(),
        raw_overlap: None,
        magnitude: norm,
        monotone: None,
        vanishes_by_parity: false,
        cross_checks: Vec::new(),
        notes: vec!["norm of the selected component; no monotonicity claim is made".into()],
    })
}

/// A quantity usable as a SLOCC witness.
#[derive(Clone, Debug)]
pub enum WitnessQuantity {
    /// Magnitude of a singlet overlap (exactly SLOCC-invariant).
    Singlet(InvariantSpec),
    /// Norm of a projected component (zero/nonzero is SLOCC-invariant).
    Component(ProjectorSpec),
}

impl WitnessQuantity {
    fn evaluate(&self, state: &PureState) -> Result<f64> {
        match self {
            WitnessQuantity::Singlet(spec) => Ok(overlap(spec, state)?.value.norm()),
            WitnessQuantity::Component(spec) => component_norm(state, spec),
        }
    }
}

/// Outcome of comparing one witness quantity on two states.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessOutcome {
    /// One value is zero (below threshold) and the other clearly is not:
    /// no determinant-1 local operation maps one state to the other.
    Separated { value_a: f64, value_b: f64 },
    /// The values do not split cleanly; nothing can be concluded.
    Inconclusive { value_a: f64, value_b: f64 },
}

/// Tests whether a quantity separates two states into distinct SLOCC classes.
pub fn slocc_witness(
    a: &PureState,
    b: &PureState,
    quantity: &WitnessQuantity,
) -> Result<WitnessOutcome> {
    let value_a = quantity.evaluate(a)?;
    let value_b = quantity.evaluate(b)?;
    let lo = value_a.min(value_b);
    let hi = value_a.max(value_b);
    if lo <= WITNESS_ZERO_THRESHOLD && hi > WITNESS_ZERO_THRESHOLD && hi - lo > WITNESS_GAP {
        Ok(WitnessOutcome::Separated { value_a, value_b })
    } else {
        Ok(WitnessOutcome::Inconclusive { value_a, value_b })
    }
}

/// The measures exposed by name, as dispatched by the command-line tool.
#[derive(Clone, Debug)]
pub enum MeasureKind {
    Concurrence2,
    GenConc2,
    Tangle3,
    GenTangle4,
    DetMeasure,
    Husimi { q: usize },
    SingletOverlap(InvariantSpec),
    ComponentNorms(ProjectorSpec),
}

impl MeasureKind {
    pub fn evaluate(&self, state: &PureState) -> Result<MeasureReport> {
        match self {
            MeasureKind::Concurrence2 => concurrence_2qubit(state),
            MeasureKind::GenConc2 => gen_concurrence_order2(state),
            MeasureKind::Tangle3 => three_tangle(state),
            MeasureKind::GenTangle4 => gen_tangle_order4(state),
            MeasureKind::DetMeasure => qudit_det_measure(state),
            MeasureKind::Husimi { q } => husimi_measure(state, *q),
            MeasureKind::SingletOverlap(spec) => monotone(spec, state),
            MeasureKind::ComponentNorms(spec) => component_measure(state, spec),
        }
    }
}
