//! Entanglement measures for pure multipartite states via copy-space
//! projections.
//!
//! The library works with `q` copies of a pure state and projects them onto
//! irreducible components of the per-party copy-permutation action. Two
//! families of quantities come out of this:
//!
//! - **Singlet overlaps** ([`singlet`]): contractions of the copies against
//!   per-party invariant tensors. The raw overlap is exactly invariant under
//!   determinant-1 local operations, and `|overlap|^(1/q)` is an
//!   entanglement monotone. The standard two-qubit concurrence, the
//!   three-qubit tangle, and the bipartite determinant measure all arise
//!   this way ([`measures`]).
//! - **Component norms** ([`projector`]): norms of symmetric, antisymmetric,
//!   or spin-labelled components of the copies. Whether such a norm
//!   vanishes is invariant under invertible local operations, which makes
//!   the norms usable as SLOCC class witnesses; the fully symmetric moment
//!   also measures how close a state is to a product state.
//!
//! The [`audit`] module re-derives these properties numerically from
//! explicit random sampling, and [`oracle`] holds deliberately naive
//! reference implementations used to validate the fast paths.

pub mod audit;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod projector;
pub mod singlet;
pub mod state;
pub mod tensor;

pub use error::{Error, Result};
pub use measures::{MeasureKind, MeasureReport, WitnessOutcome, WitnessQuantity};
pub use projector::{ProjectorSpec, Selector};
pub use singlet::{InvariantSpec, Overlap, SingletId, SingletTensor};
pub use state::{LoadedState, NormalizationPolicy, PureState};
pub use tensor::{ContractionPlan, DenseTensor, CAPACITY_LIMIT};
