//! The guide's chapters as modules, so `cargo test -p avn-book` runs every
//! listing in `book/src` as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/states.md")]
pub mod states {}
#[doc = include_str!("../../../book/src/correlations.md")]
pub mod correlations {}
#[doc = include_str!("../../../book/src/hidden-variables.md")]
pub mod hidden_variables {}
#[doc = include_str!("../../../book/src/mermin.md")]
pub mod mermin {}
#[doc = include_str!("../../../book/src/ghz.md")]
pub mod ghz {}
#[doc = include_str!("../../../book/src/contextuality.md")]
pub mod contextuality {}
#[doc = include_str!("../../../book/src/sampling.md")]
pub mod sampling {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
