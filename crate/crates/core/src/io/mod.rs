//! Text frame files, the built-in corpus, command dispatch and JSON reports.

pub mod commands;
pub mod corpus;
pub mod frame_file;
pub mod report;

pub use commands::{examples_table, run_command, CommandError, CommandOptions, COMMANDS};
pub use frame_file::{parse_frame_file, serialize, FrameDoc, RingSpec, Tensor};
pub use report::{ExitCode, Report};
