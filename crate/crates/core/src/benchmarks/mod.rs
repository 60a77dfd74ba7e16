//! Community-recovery experiments over collections of graphs.

mod dataset;
mod format;
mod run;
mod snap;

pub use dataset::{
    load_dataset, load_datasets_one_community, parse_groups, CommunitySelection, CommunityTask, Dataset,
    GROUPS_FILE, PAIRS_FILE,
};
pub use format::{format_table, format_value, TableStyle};
pub use run::{
    benchmark_run, evaluate_cell, split_community, BenchmarkConfig, BenchmarkResult, CellFailure, CommunitySplit,
};

pub use snap::{convert_snap, write_dataset, CommunitySource, ConversionSummary, Converted};

pub use crate::split::split;
