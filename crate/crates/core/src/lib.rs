//! Phase estimation with measurement-induced squeezed states of definite parity.
//!
//! A squeezed vacuum and a weak auxiliary state `|0> + b2 e^{i phi} |2>` meet
//! on a beam splitter; detecting `k` photons in one output heralds a probe
//! state whose photon statistics depend on the unknown phase `phi`.
//!
//! * [`params`] holds unit conversions and validated configurations.
//! * [`analytic`] evaluates the heralding probability, photon-number moments,
//!   quantum Fisher information and error-propagation uncertainty in closed form.
//! * [`fock`] recomputes the same quantities by brute force in a truncated Fock
//!   basis and models an inefficient detector with a binomial POVM.
//! * [`optimize`] searches `(S, B)` for the best Cramér–Rao bound and
//!   generates phase scans.
//! * [`crosscheck`] runs the closed forms against the Fock simulation.

pub mod analytic;
pub mod crosscheck;
pub mod error;
pub mod fock;
pub mod jet;
pub mod optimize;
pub mod params;

pub use analytic::{DetectorReport, MetrologyReport};
pub use error::{Error, Result};
pub use fock::{ConditionedState, FockVector, TwoModeState};
pub use jet::Jet;
pub use optimize::{CurveRow, OptimizationResult, SearchBounds, Table1Row};
pub use params::{AuxSpec, BeamSplitterSpec, ProbeConfig, ProbeSettings, SqueezeSpec, K_MAX};
