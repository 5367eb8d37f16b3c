//! mdbook cannot run the book's code fences as tests, so this crate includes
//! every chapter as rustdoc and lets `cargo test --doc` do it. One module per
//! chapter keeps failures attributable to their source file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/ground.md")]
pub mod ground {}

#[doc = include_str!("../../../book/src/hypergraphs.md")]
pub mod hypergraphs {}

#[doc = include_str!("../../../book/src/patterns.md")]
pub mod patterns {}

#[doc = include_str!("../../../book/src/extension.md")]
pub mod extension {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
