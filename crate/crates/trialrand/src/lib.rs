//! Randomisation lists for controlled trials, generated by threshold
//! sampling without replacement and certified by Monte Carlo uniformity
//! tests.
//!
//! The pipeline has three stages:
//!
//! 1. [`threshold`] draws a random permutation of the patient numbers
//!    `1..=N`: at each step a `(0,1)`-uniform draw is compared against
//!    equally spaced thresholds over the remaining (survivor) numbers,
//!    the selected survivor is appended to the assignment list, and the
//!    thresholds shrink with the survivor count.
//! 2. [`grouping`] splits the completed list into `g` contiguous groups
//!    of exactly `N/g` patients each.
//! 3. [`phase`] draws one more threshold permutation over the group
//!    numbers and extends it to a `g x g` cyclic Latin square: the cell
//!    at (phase, treatment) names the group receiving that treatment in
//!    that phase.
//!
//! [`verify`] certifies the construction empirically: position
//! uniformity of the list, group-membership uniformity, phase-cell
//! uniformity of the matrix, and full-permutation uniformity at small
//! sizes, each scored by a chi-square goodness-of-fit test with
//! correctly calibrated degrees of freedom. [`output`] and [`cli`] wrap
//! everything in reproducible, audited file formats, including a
//! sealed-envelope export for allocation concealment.
//!
//! ```
//! use trialrand::rng::{make_source, SeedPolicy};
//! use trialrand::threshold::{generate_assignment_list, TrialConfig};
//! use trialrand::grouping::partition_groups;
//!
//! let config = TrialConfig::new(12, 2, SeedPolicy::Explicit(42)).unwrap();
//! let mut source = make_source(config.seed_policy());
//! let list = generate_assignment_list(&config, &mut source).unwrap();
//! let partition = partition_groups(&list, config.groups()).unwrap();
//! assert_eq!(partition.group_count(), 2);
//! assert_eq!(partition.group(1).len(), 6);
//! ```
//!
//! Runnable demonstrations of each capability live in `examples/`; the
//! `trialrand` binary is a thin front end over this crate.

pub mod cli;
pub mod grouping;
pub mod output;
pub mod phase;
pub mod rng;
pub mod stats;
pub mod threshold;
pub mod verify;

mod error;

pub use error::{Error, Result};
pub use grouping::GroupPartition;
pub use output::{Audit, OutputBundle, OutputFormat};
pub use phase::PhaseMatrix;
pub use rng::{make_source, ReplaySource, SeedPolicy, SeededSource, UniformSource};
pub use threshold::{
    generate_assignment_list, AssignmentList, GeneratorState, SurvivorList, ThresholdSet,
    TrialConfig,
};
pub use verify::VerificationReport;
