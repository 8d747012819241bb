//! An independent check of the counting formulas: explicit finite
//! subschemes of P1 x P1 built from combinatorial data, with sheaf
//! cohomology computed by exact rational linear algebra.
//!
//! - [`local`]: punctual ideals in staircase normal form and their
//!   reduction calculus;
//! - [`scheme`]: punctual components, unions, and the two line
//!   decompositions with their profiles;
//! - [`mod@cohomology`]: evaluation matrices, h0/h1, and the combinatorial
//!   h1 predictions they are compared against;
//! - [`generate`]: the deterministic instance generator;
//! - [`campaign`]: parallel verification runs with JSONL reports.

pub mod campaign;
pub mod cohomology;
pub mod generate;
pub mod local;
pub mod scheme;

pub use campaign::{expected_strata, run_campaign, run_replay, run_stratum, CampaignOutcome};
pub use cohomology::{
    cohomology, predict_h1, predict_h1_multiline, restriction_matrix, CohomologyReport, Ruling,
};
pub use generate::{
    enumerate_multipartitions, generate_instances, CampaignConfig, ComponentSpec, Instance,
};
pub use local::LocalIdeal;
pub use scheme::{
    build_scheme, extract_profile, CoefficientMode, FiniteScheme, LineProfile, Orientation,
    PunctualComponent,
};
