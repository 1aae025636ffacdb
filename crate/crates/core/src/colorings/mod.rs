//! Two-colorings of complete graphs: explicit constructions, the adversarial
//! left-to-right coloring, finite a-good shadings and exhaustive embedding search.

mod adversary;
mod coloring;
mod embedding;
mod shading;

pub use adversary::{adversary, AdversaryCheck, AdversaryInstance, BOUND_THRESHOLD};
pub use coloring::{clique_coloring, density, upper_density, Color, ColoringRule, DensityReport, TwoColoring};
pub use embedding::{max_embedding_density_bruteforce, max_embedding_density_in, max_embedding_witness, MAX_BRUTEFORCE_N};
pub use shading::{a_good_shading, verify_shading, Shade, ShadeRound, Shading, ShadingCheck, ShadingReport};
