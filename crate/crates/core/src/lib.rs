//! Exact arithmetic and proof search for the non-existence of binary linear
//! codes with given parameters.

pub mod bounds;
pub mod certificate;
pub mod combinatorics;
pub mod error;
pub mod exclusion;
pub mod feasibility;
pub mod prover;
pub mod serde_num;
pub mod spectra;
pub mod z4;

pub use bounds::{
    descent_chain, fixture_table, griesmer_dmax, griesmer_length, import_bounds, lookup_dmax,
    residual_params, BoundsFormat, BoundsTable, ChainVerdict, CodeParams, DescentChain,
};
pub use certificate::{verify, Certificate, Proof, Step, StepRule, Verdict, VerifyReport};
pub use combinatorics::{binomial, krawtchouk, KrawtchoukContext};
pub use error::{Error, Result};
pub use exclusion::{
    candidate_weights, dual_a1_zero, even_weight_restriction, exclude_2d_shortening,
    exclude_by_descent, exclude_by_sum, A1Verdict, CandidateReport, Exclusion, ExclusionRule,
    NoOracle, SublemmaOracle, WeightVerdict,
};
pub use feasibility::{
    build_problem, check_distribution, search, ExhaustionCertificate, FeasibilityProblem,
    FeasibilityVerdict, SearchConfig,
};
pub use prover::{candidate_weights_recursive, prove, ProveConfig};
pub use spectra::{
    macwilliams_dual, macwilliams_dual_with, moment_solve_small, pless_residuals, DualSpectrum,
    MomentVerdict, SpectrumMode, WeightDistribution,
};
pub use z4::{
    btl_statement, gray_map, k6_gray_image, kerdock_params, lee_distance, lee_weight, Btl,
    GrayImageRecord, KerdockParams, LinearBound, Z4Word,
};
