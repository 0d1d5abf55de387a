//! Digit-wise arithmetic in base `b` and base `-b`, and the Mealy
//! transducers that compute it.
//!
//! The crate is organised bottom up:
//!
//! - [`numeral`]: base `b` / base `-b` codecs and the digit-wise operators
//!   `(+)_{-b}`, `(-)_b` and `double_bar`, evaluated directly on integers.
//! - [`transducer`]: complete deterministic Mealy machines with zero-padded
//!   runs, products, output relabeling, minimization and isomorphism.
//! - [`machines`]: the concrete converters, carry machines and three-state
//!   machines, for any radix.
//! - [`verify`]: the identity
//!   `double_bar(((b + 1) n) (-)_b n) = n (+)_{-b} (-n)` checked by integer
//!   brute force and by machine isomorphism, plus OEIS A178729.
//!
//! ```
//! use negaxor::numeral::{oplus_neg, Radix};
//! use num_bigint::BigInt;
//!
//! let n = BigInt::from(10);
//! assert_eq!(oplus_neg(&n, &-&n, Radix::BINARY), BigInt::from(20));
//! ```
//!
//! The guide in `book/` walks through the same material; its code blocks
//! are compiled and run as doc-tests of this crate.

pub mod machines;
pub mod numeral;
pub mod transducer;
pub mod verify;

pub use numeral::{Digit, DigitString, NumeralError, Radix};
pub use transducer::{
    IsoMismatch, IsomorphismWitness, RunResult, StateId, Transducer, TransducerError,
};

// mdbook cannot run snippets that depend on this crate, so each chapter is
// pulled in as a doc comment and `cargo test --doc` runs it instead.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/numerals.md")]
    mod numerals {}
    #[doc = include_str!("../../../book/src/transducers.md")]
    mod transducers {}
    #[doc = include_str!("../../../book/src/machines.md")]
    mod machines {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
