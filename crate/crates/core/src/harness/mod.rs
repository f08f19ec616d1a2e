//! Run configuration, end-to-end pipeline steps and the `relmix` command
//! line.

mod cli;
mod config;
mod pipeline;

pub use cli::run_cli;
pub use config::{load_config, save_config, RunConfig, SvrFeatures};
pub use pipeline::{
    build_index_from_dump, check_index_hash, ingest_pages, load_index, save_index, BuildReport, Measure, Resources,
    CACHE_ENV, HASH_KEY,
};
