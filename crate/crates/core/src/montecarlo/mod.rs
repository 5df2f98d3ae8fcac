//! Ray-tracing reference: sample building scenes from the Poisson process,
//! trace every single-bounce specular path and bin the survivors.
//!
//! Realization `r` of a run with master seed `s` draws its scene from a
//! ChaCha8 stream seeded with [`realization_seed`]`(s, r)`. Realizations
//! run in parallel but are reduced in index order, so every estimate is
//! bit-identical for any number of worker threads.

mod estimate;
mod paths;
mod scene;

pub use estimate::{
    estimate_avg_num_paths, estimate_avg_num_paths_within, estimate_los_probability, estimate_pdp,
    realization_seed, with_workers, PdpEstimate,
};
pub use paths::{enumerate_paths, los_blocked, PathRecord};
pub use scene::{sample_scene, Scene, SceneConfig};
