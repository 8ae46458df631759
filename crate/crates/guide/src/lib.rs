//! Every chapter of `book/` is pulled in as a module doc, so its Rust
//! listings run under `cargo test --doc`. One module per chapter keeps a
//! failing listing traceable to its file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/solving.md")]
pub mod solving {}
#[doc = include_str!("../../../book/src/applications.md")]
pub mod applications {}
#[doc = include_str!("../../../book/src/benchmarks.md")]
pub mod benchmarks {}
#[doc = include_str!("../../../book/src/acceptance.md")]
pub mod acceptance {}
