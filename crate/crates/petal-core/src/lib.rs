//! Petal consensus networks: graph construction, closed-form optimal
//! averaging weights, SLEM computation by independent routes, optimality
//! certificates, and consensus simulation.

pub mod certificates;
pub mod error;
pub mod linalg;
pub mod simulate;
pub mod spectral;
pub mod tables;
pub mod topology;
pub mod weights;

pub use certificates::{
    audit_paper_formulas, build_certificate, build_certificate_nearest, optimality_oracle,
    slackness_check, AuditRecord, AuditReport, DualCertificate, OracleResult, SlacknessReport,
    Verdict,
};
pub use error::{PetalError, Result};
pub use linalg::{eig_symmetric, Mat, SymEig};
pub use simulate::{asymptotic_rate, impulse_x0, run_consensus, Trajectory};
pub use spectral::{
    ccs_characteristic_44, closed_form_theta_24, convergence_factor, quotient_matrices,
    quotient_matrices_f64, slem_full, slem_quotient, QuotientPair, SlemSource, SpectralReport,
};
pub use topology::{build_graph, strata, CoreKind, Graph, LeafKind, PetalSpec, Profile};
pub use weights::{
    assemble_matrix, metropolis_hastings_weights, optimal_weights, Scheme, WeightAssignment,
    WeightMatrix,
};

/// Version tag stamped into every JSON document the tools emit.
pub const SCHEMA_VERSION: &str = "1";
