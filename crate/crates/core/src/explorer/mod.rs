// SPDX-License-Identifier: Apache-2.0

//! Numerical exploration: matrix exponentials, group flows, and orbit
//! censuses by random sampling.

pub mod census;
pub mod expm;
pub mod flow;

pub use census::{base_points, empirical_orbit_census, CensusReport, LabelStats};
pub use flow::{flow_point, invariant_stability_test, FlowConfig, StabilityReport};
