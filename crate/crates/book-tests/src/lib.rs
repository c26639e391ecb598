//! The guide's code listings, compiled and run as doc tests.
//!
//! mdbook cannot test snippets that depend on outside crates, so each
//! chapter is pulled in here as a module's documentation and `cargo test
//! --doc` runs its listings. One module per chapter keeps failures easy to
//! trace back to a page.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/surfaces.md")]
pub mod surfaces {}
#[doc = include_str!("../../../book/src/curves-and-arcs.md")]
pub mod curves_and_arcs {}
#[doc = include_str!("../../../book/src/domains.md")]
pub mod domains {}
#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}
#[doc = include_str!("../../../book/src/maps.md")]
pub mod maps {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
