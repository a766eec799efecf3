//! Two-level fractional factorial designs built from quaternary codes.
//!
//! A generator pair `(u, v)` over Z4 defines a linear code whose Gray-map
//! image is a two-level design. This crate builds those designs
//! ([`qc`]), measures their aliasing by brute force ([`oracle`]), predicts
//! the same quantities in closed form from a ten-number summary of
//! `(u, v)` ([`theory`]), and searches that summary space for optimal
//! designs ([`search`]).
//!
//! ```
//! use qcdesign::qc::{build_design, Family, GeneratorSpec};
//! use qcdesign::{oracle, theory};
//!
//! let spec = GeneratorSpec::new(Family::SixteenthEven, vec![2, 1, 1], vec![1, 1, 3], None)?;
//! let design = build_design(&spec);
//! assert_eq!((design.runs(), design.factors()), (64, 10));
//!
//! let measured = oracle::spectrum_bruteforce(&design)?;
//! let predicted = theory::theorem2_spectrum(&spec.lambda());
//! assert_eq!(measured, predicted);
//! # Ok::<(), qcdesign::Error>(())
//! ```
//!
//! The guide under `book/` walks through the construction and the
//! closed-form results chapter by chapter; its code blocks are compiled as
//! doctests of this crate.

pub mod combinatorics;
pub mod error;
pub mod oracle;
pub mod qc;
pub mod search;
pub mod spectrum;
pub mod theory;

pub use error::{Error, Result};
pub use qc::{build_design, Branch, DesignMatrix, Family, GeneratorSpec, LambdaProfile};
pub use spectrum::{DesignMetrics, Rational, Resolution, WordGroup, WordSpectrum};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/aliasing.md")]
    mod aliasing {}
    #[doc = include_str!("../../../book/src/lambda.md")]
    mod lambda {}
    #[doc = include_str!("../../../book/src/branching.md")]
    mod branching {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
