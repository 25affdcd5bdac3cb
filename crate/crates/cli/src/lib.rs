//! Library side of the `centerkit` command: corpus generation, benchmarking,
//! reports and the invariant suite. `main.rs` only parses arguments.

pub mod bench;
pub mod corpus;
pub mod graph;
pub mod report;
pub mod verify;
