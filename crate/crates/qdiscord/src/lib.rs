//! # qdiscord
//!
//! Quantum discord of bipartite density matrices.
//!
//! Two expressions for the mutual information of a pair of systems are
//! identical classically but split apart quantum mechanically:
//!
//! - `I(S:A) = H(S) + H(A) - H(S,A)`, which never references a measurement,
//! - `J(S:A)_Π = H(S) - H(S|{Π_j})`, which conditions S on the outcomes of a
//!   complete projective measurement `{Π_j}` on A.
//!
//! Their gap `δ = I - J` is the **quantum discord**: the share of the
//! correlations that no local measurement on A can extract. It vanishes for
//! a given basis exactly when the state already satisfies the superselection
//! identity `ρ = Σ_j Π_j ρ Π_j` in that basis, and minimizing it over bases
//! picks out the pointer states that survive decoherence. Separable states
//! can carry strictly positive discord, so absence of entanglement is not
//! classicality; the [`separability`] module's PPT test makes that contrast
//! executable.
//!
//! ## Layout
//!
//! | Module | Provides |
//! |--------|----------|
//! | [`linalg`] | complex matrices, Jacobi eigensolver, tensor/partial ops |
//! | [`states`] | validated density matrices and the named state families |
//! | [`measurement`] | projective measurements, conditioning, dephasing |
//! | [`discord`] | entropies, I, J, δ, basis minimization, proposition residuals |
//! | [`separability`] | partial-transpose (PPT) verdicts |
//! | [`cli`] | the `qdiscord` command-line interface |
//!
//! ## Quick start
//!
//! ```
//! use qdiscord::discord::{discord, minimize_discord, Variant};
//! use qdiscord::measurement::qubit_basis;
//! use qdiscord::separability::ppt_test;
//! use qdiscord::states::werner;
//!
//! // A Werner state below the z = 1/3 boundary is separable...
//! let state = werner(0.25).unwrap();
//! assert!(ppt_test(&state).unwrap().is_ppt);
//!
//! // ...yet no measurement basis brings its discord to zero.
//! let best = minimize_discord(&state, (32, 16), true).unwrap();
//! assert!(best.discord > 0.07);
//!
//! // Discord at a fixed basis, with the full report.
//! let report = discord(&state, &qubit_basis(0.0, 1.0), Variant::Rank1).unwrap();
//! assert!((report.discord - report.mutual_i + report.mutual_j).abs() < 1e-15);
//! ```

pub mod cli;
pub mod discord;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod separability;
pub mod states;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use states::BipartiteState;
