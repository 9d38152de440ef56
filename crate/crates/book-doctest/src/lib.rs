//! Doctest harness for the guide in `book/`. Each chapter is included as
//! documentation so `cargo test` compiles and runs its Rust snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/grid-calculus.md")]
pub mod grid_calculus {}

#[doc = include_str!("../../../book/src/word-sums.md")]
pub mod word_sums {}

#[doc = include_str!("../../../book/src/dpml.md")]
pub mod dpml {}

#[doc = include_str!("../../../book/src/solving.md")]
pub mod solving {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
