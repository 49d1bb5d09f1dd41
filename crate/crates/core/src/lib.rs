//! Exact joint linear-complexity profiles of multisequences over finite fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: prime and extension fields, polynomials, sequence prefixes.
//! * [`mscfa`]: the online multi-strict continued fraction engine.
//! * [`oracle`]: brute-force linear complexity by elimination, for differential testing.
//! * [`bdm`]: battery-discharge dynamics of the complexity deviation.
//! * [`regions`]: admissibility of `(liminf, limsup)` pairs and related constants.
//! * [`hexagon`]: schedules, discrepancy patterns and symbol synthesis for a target pair.
//! * [`analysis`]: profile post-processing.
//! * [`formats`]: the text and CSV formats shared with the command-line tool.

pub mod algebra;
pub mod analysis;
pub mod bdm;
mod error;
pub mod formats;
pub mod hexagon;
pub mod mscfa;
pub mod oracle;
pub mod rational;
pub mod regions;

pub use algebra::{residual_coeff, Degree, Field, FieldElement, Polynomial, SequencePrefix};
pub use analysis::{audit_bounds, deviation_profile, tail_extrema, AuditReport};
pub use bdm::{bdm_random, BdmConfig, BdmState, BdmStatistics, DiscrepancyPattern, Trajectory};
pub use error::{Error, Result};
pub use hexagon::{
    effective_s_tilde, generate_pattern, replay_hexagon, schedule, synthesize, GeneratedPattern, HexagonRecord,
    HexagonSchedule, Synthesis, SynthesisPlan,
};
pub use mscfa::{Mscfa, StepCase};
pub use oracle::{min_lc, profile_oracle};
pub use rational::Rational;
pub use regions::{
    admissible_for_k, hausdorff_bounds, k_prime, measure_constant, region_geometry,
    AdmissibilityReport, LimitPair, RegionPiece,
};
