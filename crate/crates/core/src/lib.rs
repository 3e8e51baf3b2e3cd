//! Numerics for tubulin-driven axon growth under backstepping boundary control.
//!
//! The plant is a diffusion–advection–reaction PDE for the tubulin concentration
//! on the moving interval `[0, l(t)]`, coupled to two nonlinear ODEs for the
//! growth-cone concentration and the axon length. The boundary input at the soma
//! is driven by a backstepping feedback law, applied either continuously or
//! through a zero-order hold refreshed by a continuous-time (CETC) or periodic
//! (PETC) dynamic event trigger.
//!
//! The crate is `no_std` and only needs `alloc`. IO, configuration files and the
//! command line live in the companion `axon-cli` crate.
//!
//! Module map:
//!
//! * [`model`]: physical parameters, derived constants, steady state, error coordinates.
//! * [`kernels`]: gain kernels φ, k, p from the 4×4 matrix exponential and the feedback law.
//! * [`trigger`]: deviation, dynamic variable `m`, CETC/PETC triggers, dwell time.
//! * [`plant`]: front-fixed finite-difference integration of the moving-boundary plant.
//! * [`sim`]: closed-loop orchestration producing a [`sim::RunResult`].
//! * [`analysis`]: Lyapunov matrices, forward transformation, monitors and run metrics.
#![cfg_attr(not(test), no_std)]
// Negated comparisons make NaN fail validation; index loops mirror the matrix algebra;
// reference constants carry every digit they were computed with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::excessive_precision)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod model;
pub mod plant;
pub mod quadrature;
pub mod sim;
pub mod trigger;

pub use error::{Error, Result};
pub use kernels::{ControllerGains, GainArtifacts, KernelConvention};
pub use model::{DerivedConstants, PhysicalParams};
pub use plant::{Scheme, SimState, SolverConfig};
pub use sim::{ControllerMode, RunConfig, RunResult};
pub use trigger::{MDynamicsSource, TriggerConfig, TriggerParams};
