//! The guide under `book/`, one module per chapter, so that every listing
//! runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/spectra.md")]
pub mod spectra {}

#[doc = include_str!("../../../book/src/zigzag.md")]
pub mod zigzag {}

#[doc = include_str!("../../../book/src/codes.md")]
pub mod codes {}

#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}

#[doc = include_str!("../../../book/src/sieves.md")]
pub mod sieves {}

#[doc = include_str!("../../../book/src/group-sieve.md")]
pub mod group_sieve {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
