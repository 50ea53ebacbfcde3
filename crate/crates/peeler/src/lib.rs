//! Leaf peeling on multigraphs: the Karp–Sipser algorithm.
//!
//! Repeatedly pick a uniform leaf, match it to its unique neighbour, and
//! delete both together with everything the deletion isolates. Peeling
//! stops when no leaf remains; what survives is the leafless *core*. The
//! removed vertices split into an independent set and a matching whose
//! sizes, combined with the independence number of the core, recover the
//! independence number of the input exactly.
//!
//! The crate provides:
//! - [`Peeler`], the incremental engine, plus the one-shot [`ks_step`]
//!   and the full run [`run_karp_sipser`];
//! - [`KsTrace`], the per-step record of the (leaves, heavy, surplus)
//!   state triple driving the process;
//! - [`PeelCertificate`] and [`validate_certificate`] for checking the
//!   independent set / matching output against the original graph;
//! - [`core_summary`] for degree statistics of the leafless core;
//! - [`brute_force_mis`], an exact independence-number oracle for small
//!   graphs, used to test optimality.

mod certificate;
mod error;
mod mis;
mod peel;
mod summary;
mod trace;

pub use certificate::{validate_certificate, PeelCertificate};
pub use error::{CertificateError, PeelError};
pub use mis::brute_force_mis;
pub use peel::{ks_step, run_karp_sipser, KsRun, Peeler, StepDelta};
pub use summary::{core_summary, CoreSummary};
pub use trace::{KsTrace, TraceStep};
