//! Rule-hidden interactive environments ("black-boxes") and the two-stage
//! exploration/evaluation session engine that scores agents against them.
//!
//! Six families are provided, each behind the [`env::BlackBox`] contract:
//!
//! | family | module   | hidden rule                                     |
//! |--------|----------|-------------------------------------------------|
//! | CII    | [`cii`]  | an instrumented reference algorithm             |
//! | CRI    | [`cri`]  | an acyclic AND/OR/NOT circuit                   |
//! | PSI    | [`psi`]  | a mechanical system, time to coordinates        |
//! | ERI    | [`eri`]  | a classical cipher                              |
//! | IPI    | [`ipi`]  | a puzzle with a hidden answer                   |
//! | GSI    | [`gsi`]  | a fixed opponent strategy in a simultaneous game|
//!
//! [`protocol::Session`] drives one environment through exploration turns and
//! evaluation shots and produces a [`protocol::ScoreReport`].
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cii;
pub mod cri;
pub mod env;
pub mod eri;
pub mod error;
pub mod gsi;
pub mod ipi;
pub mod protocol;
pub mod psi;
pub mod registry;
pub mod rng;
pub mod value;

pub use env::{BlackBox, Difficulty, EnvSpec, Family};
pub use error::Error;
pub use protocol::{FeedbackMode, ScoreReport, Session, Stage, TurnBudget};
pub use registry::{instantiate, list_environments, EnvFilter};
