//! Verification workbench for the pedal-handling rule DSL.
//!
//! The pipeline is: [`dsl::parse`] a `.phdsl` source, wrap it in a
//! [`semantics::Machine`], generate its state space with
//! [`lts::explore`], then compare engines with [`equiv`], check safety
//! properties with [`verify`], or test an implementation that speaks the
//! adapter protocol with [`mbt`]. [`refimpl`] provides such an
//! implementation, optionally with injected faults.

pub mod dsl;
pub mod equiv;
pub mod fixtures;
pub mod lts;
pub mod mbt;
pub mod refimpl;
pub mod semantics;
pub mod verify;

pub use dsl::{parse, pretty_print, PedalModel};
pub use lts::{explore, Lts};
pub use semantics::{Engine, Label, Machine, Plane, SemState, State, XRay};
