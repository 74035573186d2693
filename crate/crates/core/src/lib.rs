//! Simulation and verification toolkit for the Poissonized Erdos-Renyi
//! random graph: a core G(N, p) whose vertex count N is Poisson(alpha),
//! explored through an infinite stack of root vertices.
//!
//! The toolkit constructs the Lukasiewicz exploration walk of the model two
//! independent ways — by exploring a sampled core and analytically from
//! independent Poisson increments — decomposes it into stack-component
//! excursions and core sub-components, and drives Monte Carlo experiments
//! that check the model's limit behavior at desk scale: the fluid limit, the
//! giant-component phase transition and its CLT, the geometric law of the
//! pre-giant component count, near-critical scaling, the hitting-time CLT,
//! sharp connectedness, and the depoissonization sandwich.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod exploration;
pub mod graph;
pub mod stochastic;

pub use error::{Error, Result};
