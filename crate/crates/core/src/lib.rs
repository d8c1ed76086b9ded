//! Toolkit for large-scale job-shop scheduling benchmarks.
//!
//! The crate covers the full life cycle of two benchmark families:
//!
//! * **Large-TA** — rectangular instances (every job visits every machine
//!   exactly once) generated on a 9-group size grid from 10×10 up to
//!   1000×1000, one million operations at the top end.
//! * **Known-Optima** — free-form instances built backwards from a zero-idle
//!   reference schedule, so the optimal makespan is known by construction
//!   and ships next to the instance as a machine-checkable certificate.
//!
//! On top of the generators sit bit-exact readers/writers for both text
//! formats, a benchmark directory scanner, schedule validation and optimum
//! certification, per-instance statistics, dispatching-rule baseline solvers,
//! and an exhaustive optimum search for tiny instances.
//!
//! Batch operations (suite generation, folder validation, batch solving) run
//! on a rayon pool when the default `parallel` feature is enabled and fall
//! back to sequential execution without it.

pub mod batch;
pub mod io;
pub mod known_optima;
pub mod model;
pub mod rng;
pub mod solver;
pub mod stats;
pub mod suite;
pub mod taillard;
pub mod validate;

pub use model::{
    job_length_bound, machine_load_bound, machine_loads, makespan, Instance, InstanceKind, Job,
    Operation, Schedule, Time,
};
