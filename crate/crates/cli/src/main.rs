//! `entmeas`: generate states, compute entanglement measures, decompose
//! copies into component norms, and run the randomized self-audit.
//!
//! Exit codes: 0 success, 1 audit failure, 2 I/O or parse or parameter
//! problems, 3 measure inapplicable to the state's shape, 4 capacity limit.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::json;

use entmeas_core::audit::{random_state, run_full_audit, AuditConfig};
use entmeas_core::measures::MeasureKind;
use entmeas_core::projector::{component_norm, q2_sign_patterns, spin_patterns};
use entmeas_core::singlet::{InvariantSpec, SingletId};
use entmeas_core::state::{
    bell, ghz, max_entangled_qudit, product_state, w, LoadedState, NormalizationPolicy, PureState,
};
use entmeas_core::{Error, Result};

use report::{measure_value, numeric, ReportBuilder};

#[derive(Parser)]
#[command(name = "entmeas", version, about = "Entanglement measures via copy-space projections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a state file for a named family of states.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Evaluate a measure on a state file.
    Compute {
        /// One of: concurrence2, genconc2, tangle3, gentangle4, detmeasure,
        /// husimi, singlet-overlap, component-norms.
        measure: String,
        /// Path to the state file.
        state: PathBuf,
        /// Singlet assignment for `singlet-overlap`, e.g. "s4a,s4a,s4a".
        #[arg(long)]
        singlets: Option<String>,
        /// Per-party selectors for `component-norms`, e.g. "antisym,antisym,sym".
        #[arg(long)]
        selectors: Option<String>,
        /// Copy order for `husimi` and `component-norms`.
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Tabulate every component squared norm of the q-copy state.
    Decompose {
        /// Path to the state file.
        state: PathBuf,
        /// Copy order: 2 for any dimensions, higher orders for qubits only.
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Run the randomized self-audit (exit 1 if any check fails).
    Audit {
        /// Master seed for every random draw (required: no silent entropy).
        #[arg(long)]
        seed: u64,
        /// Trials per randomized check.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Tolerance for unitary-invariance residuals.
        #[arg(long, default_value_t = 1e-9)]
        lu_tol: f64,
        /// Tolerance for determinant-1 invariance residuals.
        #[arg(long, default_value_t = 1e-7)]
        slocc_tol: f64,
        /// Condition-number cap for sampled determinant-1 operators.
        #[arg(long, default_value_t = 10.0)]
        cond_cap: f64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect the built-in invariant tensors.
    Singlets {
        #[command(subcommand)]
        action: SingletsAction,
    },
}

#[derive(Args)]
struct CommonFlags {
    /// Normalization policy for loaded states: auto (rescale, warn) or
    /// strict (reject deviations beyond 1e-6).
    #[arg(long, default_value = "auto")]
    policy: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// |0...0> + |1...1> over m qubits, normalized.
    Ghz {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equal superposition of the weight-1 basis states of m qubits.
    W {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The two-qubit state (|00> + |11>)/sqrt(2).
    Bell {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product of per-party vectors, e.g. --locals "1,0;0.6,0.8"
    /// (parties split by ';', amplitudes by ',', complex entries as re:im).
    Product {
        #[arg(long)]
        locals: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximally entangled pair of n-dimensional parties.
    Maxent {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gaussian-random normalized state (requires an explicit seed).
    Random {
        /// Party dimensions, e.g. "2,2,2".
        #[arg(long)]
        dims: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SingletsAction {
    /// List every built-in invariant tensor with order, dimension, and
    /// copy-exchange signature.
    List,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapacityExceeded { .. } => 4,
        Error::Inapplicable(_) => 3,
        _ => 2,
    }
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn parse_policy(text: &str) -> Result<NormalizationPolicy> {
    match text {
        "auto" => Ok(NormalizationPolicy::Auto),
        "strict" => Ok(NormalizationPolicy::Strict),
        other => Err(Error::InvalidParam(format!(
            "unknown policy '{other}' (expected auto or strict)"
        ))),
    }
}

fn parse_dims(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParam(format!("bad dimension '{t}'")))
        })
        .collect()
}

/// Parses "1,0;0.6,0.8" into per-party complex vectors; a complex entry is
/// written re:im.
fn parse_locals(text: &str) -> Result<Vec<Vec<C64>>> {
    text.split(';')
        .map(|party| {
            party
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    let (re, im) = match tok.split_once(':') {
                        Some((r, i)) => (r, i),
                        None => (tok, "0"),
                    };
                    let re = re
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidParam(format!("bad amplitude '{tok}'")))?;
                    let im = im
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidParam(format!("bad amplitude '{tok}'")))?;
                    Ok(C64::new(re, im))
                })
                .collect()
        })
        .collect()
}

fn load_state(path: &Path, policy: &str) -> Result<(LoadedState, Vec<u8>)> {
    let policy = parse_policy(policy)?;
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Format("state file is not valid UTF-8".into()))?;
    let loaded = PureState::from_json(&text, policy)?;
    Ok((loaded, bytes))
}

fn emit(report: &ReportBuilder, out: Option<&Path>) -> Result<()> {
    let text = report.render();
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    let mut report = ReportBuilder::new(command_echo());
    match cli.command {
        Command::Gen { kind } => {
            let (state, default_name): (PureState, &str) = match &kind {
                GenKind::Ghz { m, .. } => (ghz(*m)?, "ghz.state"),
                GenKind::W { m, .. } => (w(*m)?, "w.state"),
                GenKind::Bell { .. } => (bell(), "bell.state"),
                GenKind::Product { locals, .. } => (product_state(&parse_locals(locals)?)?, "product.state"),
                GenKind::Maxent { n, .. } => (max_entangled_qudit(*n)?, "maxent.state"),
                GenKind::Random { dims, seed, .. } => {
                    let dims = parse_dims(dims)?;
                    let mut rng = ChaCha12Rng::seed_from_u64(*seed);
                    (random_state(&mut rng, &dims)?, "random.state")
                }
            };
            let out = match &kind {
                GenKind::Ghz { out, .. }
                | GenKind::W { out, .. }
                | GenKind::Bell { out }
                | GenKind::Product { out, .. }
                | GenKind::Maxent { out, .. }
                | GenKind::Random { out, .. } => out.clone(),
            }
            .unwrap_or_else(|| PathBuf::from(default_name));
            state.save(&out)?;
            report.push_result(json!({
                "kind": "written_state",
                "path": out.display().to_string(),
                "dims": state.dims(),
            }));
            print!("{}", report.render());
            Ok(0)
        }

        Command::Compute { measure, state, singlets, selectors, q, common } => {
            let (loaded, bytes) = load_state(&state, &common.policy)?;
            report.set_input_digest(&bytes);
            for warning in &loaded.warnings {
                report.push_warning(warning.clone());
            }
            let kind = match measure.as_str() {
                "concurrence2" => MeasureKind::Concurrence2,
                "genconc2" => MeasureKind::GenConc2,
                "tangle3" => MeasureKind::Tangle3,
                "gentangle4" => MeasureKind::GenTangle4,
                "detmeasure" => MeasureKind::DetMeasure,
                "husimi" => MeasureKind::Husimi { q },
                "singlet-overlap" => {
                    let text = singlets.ok_or_else(|| {
                        Error::InvalidParam("singlet-overlap needs --singlets".into())
                    })?;
                    MeasureKind::SingletOverlap(InvariantSpec::parse(&text)?)
                }
                "component-norms" => {
                    let text = selectors.ok_or_else(|| {
                        Error::InvalidParam("component-norms needs --selectors".into())
                    })?;
                    MeasureKind::ComponentNorms(
                        entmeas_core::projector::ProjectorSpec::parse(q, &text)?,
                    )
                }
                other => {
                    return Err(Error::InvalidParam(format!("unknown measure '{other}'")))
                }
            };
            let result = kind.evaluate(&loaded.state)?;
            report.push_result(measure_value(&result));
            emit(&report, common.out.as_deref())?;
            Ok(0)
        }

        Command::Decompose { state, q, common } => {
            let (loaded, bytes) = load_state(&state, &common.policy)?;
            report.set_input_digest(&bytes);
            for warning in &loaded.warnings {
                report.push_warning(warning.clone());
            }
            let s = &loaded.state;
            let m = s.parties();
            if q < 2 {
                return Err(Error::InvalidParam("decompose needs q >= 2".into()));
            }
            let specs = if q == 2 {
                q2_sign_patterns(m)
            } else {
                if s.dims().iter().any(|&d| d != 2) {
                    return Err(Error::Inapplicable(
                        "decomposition above two copies needs qubit parties".into(),
                    ));
                }
                spin_patterns(m, q)
            };
            let mut rows = Vec::new();
            let mut total = 0.0f64;
            for spec in &specs {
                let norm = component_norm(s, spec)?;
                total += norm * norm;
                rows.push(json!({
                    "selectors": spec.label(),
                    "squared_norm": numeric(norm * norm),
                }));
            }
            report.push_result(json!({
                "kind": "decomposition",
                "q": q,
                "rows": rows,
                "sum_of_squared_norms": numeric(total),
            }));
            emit(&report, common.out.as_deref())?;
            Ok(0)
        }

        Command::Audit { seed, trials, lu_tol, slocc_tol, cond_cap, out } => {
            let config = AuditConfig {
                seed,
                trials,
                lu_tolerance: lu_tol,
                slocc_tolerance: slocc_tol,
                condition_cap: cond_cap,
            };
            let audit = run_full_audit(&config);
            for check in &audit.checks {
                report.push_result(json!({
                    "kind": "audit_check",
                    "group": check.group,
                    "name": check.name,
                    "observed": numeric(check.observed),
                    "tolerance": numeric(check.tolerance),
                    "passed": check.passed,
                }));
            }
            report.push_result(json!({
                "kind": "audit_summary",
                "seed": config.seed,
                "trials": config.trials,
                "checks": audit.checks.len(),
                "failed": audit.checks.iter().filter(|c| !c.passed).count(),
                "passed": audit.passed,
            }));
            emit(&report, out.as_deref())?;
            Ok(if audit.passed { 0 } else { 1 })
        }

        Command::Singlets { action: SingletsAction::List } => {
            for id in SingletId::catalogue() {
                let tensor = id.build()?;
                let signs: Vec<String> =
                    tensor.exchange_signs().iter().map(|s| s.to_string()).collect();
                let note = match id {
                    SingletId::S4c => {
                        Some("linearly dependent: s4c = (sqrt(3)/2) s4a + (1/2) s4b")
                    }
                    _ => None,
                };
                report.push_result(json!({
                    "kind": "singlet",
                    "name": id.to_string(),
                    "order": id.order(),
                    "local_dim": id.local_dim(),
                    "exchange_signs": signs,
                    "note": note,
                }));
            }
            print!("{}", report.render());
            Ok(0)
        }
    }
}
