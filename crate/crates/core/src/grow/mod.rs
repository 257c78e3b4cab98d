//! The growing search: vertex additions, rounds, registered searches, checkpoints and reports.

pub mod checkpoint;
pub mod columns;
pub mod config;
pub mod diagnostics;
pub mod filter;
pub mod report;
pub mod round;

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::equiv::EquivError;
use crate::graphmat::{GraphError, MAX_VERTICES};

pub use checkpoint::{checkpoint_bytes, load_checkpoint, save_checkpoint, state_from_bytes};
pub use columns::{alphabet_from_norms, for_each_column, generate_columns};
pub use config::{registered_config, registered_searches, ChargeRule, GrowConfig, TrianglePolicy, TriangleScope};
pub use filter::{filtered_additions, CompiledFilter};
pub use report::{ReportRow, SearchReport};
pub use round::{expand, grow_round, is_minimal_noncyclotomic, run_search, FoundGraph, RoundStats, SearchState};

#[derive(Debug, Error)]
pub enum GrowError {
    #[error("invalid search config: {0}")]
    Config(String),
    #[error("unknown search {0}")]
    UnknownSearch(String),
    #[error("{0} vertices exceeds the search bound of {MAX_VERTICES}")]
    Capacity(usize),
    #[error(transparent)]
    Equiv(#[from] EquivError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("checkpoint: {0}")]
    Checkpoint(#[from] CheckpointError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckpointError {
    #[error("not a checkpoint file")]
    BadMagic,
    #[error("unsupported checkpoint version {0}")]
    Version(u32),
    #[error("file truncated")]
    Truncated,
    #[error("checksum mismatch")]
    Checksum,
    #[error("config hash does not match the stored config")]
    ConfigHash,
    #[error("payload: {0}")]
    Payload(String),
}
