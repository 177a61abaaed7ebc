//! Interval contractors and a branch-and-prune paver for solution sets of
//! `f(x) = 0`, `f: R^n -> R^p`.
//!
//! The [`contractor::CenteredContractor`] linearizes `f` around the box
//! center, preconditions the linearization with a Gauss-Jordan matrix so the
//! constraint network becomes a tree, and propagates intervals over it. It
//! is compared against forward-backward propagation ([`contractor::Hc4`]).

pub mod contractor;
pub mod expr;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod paver;

pub use contractor::{CenteredContractor, Contractor, Hc4, Hc4Revise};
pub use expr::{builtin_delay2, parse_expression, Expression, Function, ProblemSpec};
pub use interval::{Interval, IntervalBox};
pub use linalg::RealMatrix;
pub use paver::{pave, Paving, PaverConfig};
