//! Randomized self-audit: numerical checks of the invariance and
//! completeness properties the library's quantities are supposed to have.
//!
//! All randomness flows through a counter-based ChaCha12 generator seeded
//! from a single explicit value, with one stream per (check, trial) pair, so
//! a report depends only on the seed and the trial counts — never on
//! scheduling or iteration order.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::distributions::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{
    concurrence_2qubit, gen_concurrence_order2, gen_tangle_order4, qudit_det_measure,
    slocc_witness, three_tangle, WitnessOutcome, WitnessQuantity,
};
use crate::oracle;
use crate::projector::{husimi_moment, q2_sign_patterns};
use crate::singlet::{overlap, InvariantSpec, SingletId};
use crate::state::{bell, ghz, w, PureState};
use crate::tensor::DenseTensor;

/// Parameters of one audit run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AuditConfig {
    /// Master seed; every random draw derives from it.
    pub seed: u64,
    /// Trials per randomized check.
    pub trials: usize,
    /// Tolerance for unitary-invariance residuals.
    pub lu_tolerance: f64,
    /// Tolerance for determinant-1 invariance residuals (looser: the
    /// transformed states have larger dynamic range).
    pub slocc_tolerance: f64,
    /// Upper bound on the condition number of sampled determinant-1
    /// operators; draws above it are rejected and retried.
    pub condition_cap: f64,
}

impl AuditConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            trials: 50,
            lu_tolerance: 1e-9,
            slocc_tolerance: 1e-7,
            condition_cap: 10.0,
        }
    }
}

/// One named check with its worst observed residual.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AuditCheck {
    pub group: String,
    pub name: String,
    /// Worst residual (or a sentinel 0/1 for yes-no checks).
    pub observed: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Full audit outcome: every check, plus the aggregate verdict.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AuditReport {
    pub config: AuditConfig,
    pub checks: Vec<AuditCheck>,
    pub passed: bool,
}

impl AuditReport {
    fn push(&mut self, group: &str, name: &str, observed: f64, tolerance: f64) {
        let passed = observed <= tolerance;
        self.passed &= passed;
        self.checks.push(AuditCheck {
            group: group.to_string(),
            name: name.to_string(),
            observed,
            tolerance,
            passed,
        });
    }
}

// Stream-id bases, spaced far enough apart that (base + trial) never
// collides between checks.
const STREAM_STATE: u64 = 1 << 32;
const STREAM_UNITARY: u64 = 2 << 32;
const STREAM_SLOCC: u64 = 3 << 32;

fn rng_for(config: &AuditConfig, base: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    rng.set_stream(base + trial);
    rng
}

fn standard_complex<R: rand::Rng>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

/// Draws a normalized pure state with Gaussian amplitudes (Haar-uniform on
/// the sphere).
pub fn random_state<R: rand::Rng>(rng: &mut R, dims: &[usize]) -> Result<PureState> {
    let len: usize = dims.iter().product();
    let data: Vec<C64> = (0..len).map(|_| standard_complex(rng)).collect();
    let amps = DenseTensor::new(dims.to_vec(), data)?;
    PureState::new_unnormalized(amps)?.renormalized()
}

/// Draws a Haar-distributed special unitary: Gaussian matrix, QR, phase-fix
/// the diagonal of R, then divide by a principal n-th root of the
/// determinant so the result lands in the determinant-1 subgroup.
pub fn random_local_unitary<R: rand::Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let g = DMatrix::from_fn(n, n, |_, _| standard_complex(rng));
    let qr = g.qr();
    let r_diag = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r_diag[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    let det = q.determinant();
    let root = det.powf(1.0 / n as f64);
    q.map(|x| x / root)
}

/// Draws an invertible determinant-1 operator with bounded condition number
/// (Gaussian entries, determinant-normalized; ill-conditioned draws are
/// rejected and resampled).
pub fn random_slocc_det1<R: rand::Rng>(
    rng: &mut R,
    n: usize,
    condition_cap: f64,
) -> Result<DMatrix<C64>> {
    for _ in 0..1000 {
        let g = DMatrix::from_fn(n, n, |_, _| standard_complex(rng));
        let det = g.determinant();
        if det.norm() < 1e-12 {
            continue;
        }
        let root = det.powf(1.0 / n as f64);
        let a = g.map(|x| x / root);
        let svd = a.clone().svd(false, false);
        let max = svd.singular_values.max();
        let min = svd.singular_values.min();
        if min > 0.0 && max / min <= condition_cap {
            return Ok(a);
        }
    }
    Err(Error::Sampling(
        "could not draw a well-conditioned determinant-1 operator in 1000 attempts".into(),
    ))
}

/// Applies one matrix per party to the state's amplitudes. The result is not
/// renormalized (determinant-1 operators do not preserve the norm).
pub fn apply_local(state: &PureState, ops: &[DMatrix<C64>]) -> Result<PureState> {
    if ops.len() != state.parties() {
        return Err(Error::ShapeMismatch(format!(
            "{} operators for {} parties",
            ops.len(),
            state.parties()
        )));
    }
    let mut amps = state.amps().clone();
    for (axis, op) in ops.iter().enumerate() {
        let d = state.dims()[axis];
        if op.nrows() != d || op.ncols() != d {
            return Err(Error::ShapeMismatch(format!(
                "operator {} is {}x{}, party has dimension {d}",
                axis,
                op.nrows(),
                op.ncols()
            )));
        }
        let flat: Vec<C64> = (0..d * d).map(|k| op[(k / d, k % d)]).collect();
        let matrix = DenseTensor::new(vec![d, d], flat)?;
        amps = amps.apply_matrix_axis(axis, &matrix)?;
    }
    PureState::new_unnormalized(amps)
}

/// The states every audit exercises alongside random draws.
pub fn canonical_states() -> Vec<(String, PureState)> {
    vec![
        ("bell".into(), bell()),
        ("ghz3".into(), ghz(3).expect("ghz(3)")),
        ("w3".into(), w(3).expect("w(3)")),
    ]
}

/// A named scalar evaluation used in invariance trials.
type NamedEval = (&'static str, fn(&PureState) -> Result<f64>);

/// The measure suite evaluated during invariance audits, per state shape.
fn measures_for(dims: &[usize]) -> Vec<NamedEval> {
    let mut out: Vec<NamedEval> = Vec::new();
    let all_qubits = dims.iter().all(|&d| d == 2);
    if dims == [2, 2] {
        out.push(("concurrence2", |s| Ok(concurrence_2qubit(s)?.magnitude)));
    }
    if all_qubits && dims.len().is_multiple_of(2) {
        out.push(("genconc2", |s| Ok(gen_concurrence_order2(s)?.magnitude)));
    }
    if dims == [2, 2, 2] {
        out.push(("tangle3", |s| Ok(three_tangle(s)?.magnitude)));
    }
    if all_qubits && dims.len() >= 3 {
        out.push(("gentangle4", |s| Ok(gen_tangle_order4(s)?.magnitude)));
    }
    if dims.len() == 2 && dims[0] == dims[1] {
        out.push(("detmeasure", |s| Ok(qudit_det_measure(s)?.magnitude)));
    }
    out
}

/// Raw overlaps compared under determinant-1 maps, per state shape.
fn overlap_specs_for(dims: &[usize]) -> Vec<InvariantSpec> {
    let mut out = Vec::new();
    let all_qubits = dims.iter().all(|&d| d == 2);
    if all_qubits && dims.len().is_multiple_of(2) {
        out.push(InvariantSpec::new(vec![SingletId::S2; dims.len()]).expect("s2 spec"));
    }
    if all_qubits && dims.len() >= 3 {
        out.push(InvariantSpec::new(vec![SingletId::S4a; dims.len()]).expect("s4a spec"));
    }
    if dims == [2, 2, 2] {
        out.push(
            InvariantSpec::new(vec![SingletId::S4b, SingletId::S4b, SingletId::S4c])
                .expect("tangle spec"),
        );
    }
    if dims.len() == 2 && dims[0] == dims[1] {
        out.push(InvariantSpec::new(vec![SingletId::Sn(dims[0]); 2]).expect("sN spec"));
    }
    out
}

const AUDIT_SHAPES: [&[usize]; 3] = [&[2, 2], &[2, 2, 2], &[3, 3]];

/// Checks that every catalogued singlet tensor is unit-norm and annihilated
/// by the diagonal action of the local special-unitary algebra.
pub fn singlet_integrity(report: &mut AuditReport) {
    for id in SingletId::catalogue() {
        let tensor = id.build().expect("catalogued tensor builds");
        report.push(
            "singlet_integrity",
            &format!("{id} unit norm"),
            (tensor.data().norm() - 1.0).abs(),
            1e-12,
        );
        report.push(
            "singlet_integrity",
            &format!("{id} su-invariance residual"),
            tensor.generator_residual(),
            1e-12,
        );
    }
}

/// Checks that measure values are unchanged by random per-party special
/// unitaries, on canonical and random states.
pub fn lu_invariance(config: &AuditConfig, report: &mut AuditReport) {
    let mut suite: Vec<(String, PureState)> = canonical_states();
    for (i, dims) in AUDIT_SHAPES.iter().enumerate() {
        let mut rng = rng_for(config, STREAM_STATE, i as u64);
        let s = random_state(&mut rng, dims).expect("random state");
        suite.push((format!("random{:?}", dims), s));
    }

    for (state_idx, (label, state)) in suite.iter().enumerate() {
        for (name, eval) in measures_for(state.dims()) {
            let base = eval(state).expect("baseline measure");
            let mut worst = 0.0f64;
            for trial in 0..config.trials {
                let mut rng = rng_for(
                    config,
                    STREAM_UNITARY,
                    (state_idx as u64) << 16 | trial as u64,
                );
                let ops: Vec<DMatrix<C64>> = state
                    .dims()
                    .iter()
                    .map(|&d| random_local_unitary(&mut rng, d))
                    .collect();
                let moved = apply_local(state, &ops)
                    .and_then(|s| s.renormalized())
                    .expect("unitary image");
                let value = eval(&moved).expect("measure on image");
                worst = worst.max((value - base).abs());
            }
            report.push(
                "lu_invariance",
                &format!("{name} on {label}"),
                worst,
                config.lu_tolerance,
            );
        }
    }
}

/// Checks that raw singlet overlaps are unchanged by random determinant-1
/// local operators (no renormalization), on canonical and random states.
pub fn slocc_invariance(config: &AuditConfig, report: &mut AuditReport) {
    let mut suite: Vec<(String, PureState)> = canonical_states();
    for (i, dims) in AUDIT_SHAPES.iter().enumerate() {
        let mut rng = rng_for(config, STREAM_STATE, 100 + i as u64);
        let s = random_state(&mut rng, dims).expect("random state");
        suite.push((format!("random{:?}", dims), s));
    }

    for (state_idx, (label, state)) in suite.iter().enumerate() {
        for (spec_idx, spec) in overlap_specs_for(state.dims()).iter().enumerate() {
            let base = overlap(spec, state).expect("baseline overlap").value;
            let mut worst = 0.0f64;
            for trial in 0..config.trials {
                let mut rng = rng_for(
                    config,
                    STREAM_SLOCC,
                    (state_idx as u64) << 24 | (spec_idx as u64) << 16 | trial as u64,
                );
                let ops: Result<Vec<DMatrix<C64>>> = state
                    .dims()
                    .iter()
                    .map(|&d| random_slocc_det1(&mut rng, d, config.condition_cap))
                    .collect();
                let moved = apply_local(state, &ops.expect("slocc draw")).expect("slocc image");
                let value = overlap(spec, &moved).expect("overlap on image").value;
                worst = worst.max((value - base).norm());
            }
            report.push(
                "slocc_invariance",
                &format!("[{}] on {label}", spec.label()),
                worst,
                config.slocc_tolerance,
            );
        }
    }
}

/// Structural identities: component norms resolve the identity, the
/// symmetric-component moment matches its reduced-density evaluation, and
/// known witnesses separate inequivalent states.
pub fn completeness(config: &AuditConfig, report: &mut AuditReport) {
    // Squared component norms over all two-copy sign patterns sum to 1.
    for (label, state) in canonical_states() {
        let m = state.parties();
        let total: f64 = q2_sign_patterns(m)
            .iter()
            .map(|spec| {
                let n = crate::projector::component_norm(&state, spec).expect("norm");
                n * n
            })
            .sum();
        report.push(
            "completeness",
            &format!("two-copy component norms resolve identity on {label}"),
            (total - 1.0).abs(),
            1e-10,
        );
    }

    // The two-copy symmetric moment equals its subset-purity expression.
    for (i, dims) in AUDIT_SHAPES.iter().enumerate() {
        let mut rng = rng_for(config, STREAM_STATE, 200 + i as u64);
        let state = random_state(&mut rng, dims).expect("random state");
        let direct = husimi_moment(&state, 2).expect("moment");
        let via_swap = oracle::husimi2_swap(&state).expect("swap identity");
        report.push(
            "completeness",
            &format!("two-copy symmetric moment identity on random{:?}", dims),
            (direct - via_swap).abs(),
            1e-10,
        );
    }

    // The all-s4a overlap separates the two genuinely tripartite classes.
    let spec = InvariantSpec::new(vec![SingletId::S4a; 3]).expect("s4a spec");
    let outcome = slocc_witness(
        &ghz(3).expect("ghz"),
        &w(3).expect("w"),
        &WitnessQuantity::Singlet(spec),
    )
    .expect("witness");
    report.push(
        "completeness",
        "order-4 overlap separates ghz3 from w3",
        if matches!(outcome, WitnessOutcome::Separated { .. }) { 0.0 } else { 1.0 },
        0.5,
    );

    // Degree-q homogeneity of the overlap under global scaling.
    let mut rng = rng_for(config, STREAM_STATE, 300);
    let state = random_state(&mut rng, &[2, 2, 2]).expect("random state");
    let scaled = PureState::new_unnormalized(state.amps().scaled(C64::new(1.3, 0.0)))
        .expect("scaled state");
    let spec = InvariantSpec::new(vec![SingletId::S4a; 3]).expect("s4a spec");
    let base = overlap(&spec, &state).expect("base").value;
    let moved = overlap(&spec, &scaled).expect("scaled").value;
    report.push(
        "completeness",
        "overlap scales as the fourth power of the amplitude scale",
        (moved - base * C64::new(1.3f64.powi(4), 0.0)).norm(),
        1e-10,
    );
}

/// Runs every audit group under one configuration.
pub fn run_full_audit(config: &AuditConfig) -> AuditReport {
    let mut report = AuditReport {
        config: config.clone(),
        checks: Vec::new(),
        passed: true,
    };
    singlet_integrity(&mut report);
    lu_invariance(config, &mut report);
    slocc_invariance(config, &mut report);
    completeness(config, &mut report);
    report
}
