//! Exact normal ordering of single-mode boson operators and the
//! combinatorics that come with it: Stirling and Bell numbers and their
//! generalizations, Dobiński series, coherent-state generating functions,
//! Sheffer-type exponentials and Padé resummation.
//!
//! Every closed formula is paired with an independent route (the
//! commutator-rewriting oracle in [`weyl`] or a truncated Fock-space
//! computation in [`fock`]) so the two can be checked against each other.

pub mod arith;
pub mod error;
pub mod expr;
pub mod fock;
pub mod genfun;
pub mod genstirling;
pub mod pade;
pub mod poly;
pub mod series;
pub mod sheffer;
pub mod stirling;
pub mod weyl;

pub use error::{Error, Result};
pub use expr::{parse, Expr, SyntaxError};
pub use genfun::{CoherentLabel, EgfQuery, NormalFormSeries};
pub use genstirling::GenStirlingTable;
pub use pade::PadeApproximant;
pub use poly::Poly;
pub use series::PowerSeries;
pub use sheffer::{BivariateSeries, PolySpec};
pub use stirling::{BellPolynomial, SeriesSum, StirlingTable};
pub use weyl::{extract_alpha, normal_order_word, AlphaSpec, Generator, NormalForm, Word};
