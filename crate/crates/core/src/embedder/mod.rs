//! W-structures and the embedding of an H prefix onto a monochromatic copy
//! containing W.

mod embed;
mod planted;
mod spec;
mod verify;
mod wstructure;

pub use embed::{assign_kappa, embed, EmbedStatus, EmbeddingState, EmbeddingSummary, Origin};
pub use planted::{planted_instance, PlantedConfig, PlantedInstance};
pub use spec::HPrefixSpec;
pub use verify::{t_set_bound, verify_embedding, EmbeddingReport};
pub use wstructure::{build_w, build_w_for_color, WComponent, WStructure, DEFAULT_WINDOW};
