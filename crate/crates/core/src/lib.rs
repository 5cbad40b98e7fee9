//! Ranking arguments of abstract argumentation frameworks with cooperative-game
//! power indexes.
//!
//! The pipeline is: parse a framework ([`af`], [`format`]), enumerate the
//! extensions of a labelling-based semantics ([`semantics`]), turn the in-sets
//! and out-sets into 0/1 coalition games and evaluate every argument under the
//! Shapley, Banzhaf, Deegan-Packel or Johnston index ([`power`]), then order the
//! arguments lexicographically by `(pi_in, pi_out)` ([`ranking`]).
//!
//! [`properties`] checks the classic ranking properties on concrete frameworks
//! and searches for counterexamples; [`api`] and [`server`] expose everything as
//! a JSON solve service shared by the command-line tool.

pub mod af;
pub mod api;
pub mod budget;
pub mod error;
pub mod format;
pub mod power;
pub mod properties;
pub mod ranking;
pub mod semantics;
pub mod server;

pub use af::{ArgSet, ArgumentId, ArgumentationFramework, Isomorphism};
pub use budget::Budget;
pub use error::{Error, Result};
pub use power::{CharacteristicFunction, ExactValue, Polarity, PowerIndex};
pub use ranking::{Fixed5, PiScore, Preference, Ranking};
pub use semantics::{Acceptance, ExtensionFamily, Label, Labelling, Semantics};

/// Default upper bound on the number of arguments accepted from input.
pub const DEFAULT_MAX_ARGS: usize = 20;

/// Absolute upper bound; argument sets are 64-bit masks and every semantics is
/// enumerated over all subsets.
pub const HARD_MAX_ARGS: usize = 30;
