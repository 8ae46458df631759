pub mod applications;
pub mod bench;
pub mod engines;
pub mod generators;
pub mod graph;
