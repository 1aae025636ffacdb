//! Capacitated bipartite max-flow/min-cover duality and the flow-finder over
//! totally colored graphs.

mod bipartite;
mod brute;
mod findflow;

pub use bipartite::{mfmc, CapacitatedBipartite, FlowCertificate};
pub use brute::{max_flow_bruteforce, min_cover_bruteforce, MAX_BRUTEFORCE_VERTICES};
pub use findflow::{
    findflow, verify_findflow, ColoredDegreeProfile, FindFlowConfig, FindFlowResult, FlowCase, TotalColoring,
};
