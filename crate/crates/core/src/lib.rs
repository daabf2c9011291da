//! Two-point divided-difference calculus on special non-uniform lattices
//! (snuls) and the orthogonal polynomials of the dense discrete measure
//! carried by the trigonometric lattice.
//!
//! Modules:
//!
//! * [`lattice`]: conics, their classification and parametrized point sets.
//! * [`diffop`]: the operators `D` and `M` on polynomials.
//! * [`diophantine`]: one-sided best approximations of a real `rho`.
//! * [`moments`]: Chebyshev moments of the dense measure and its truncation.
//! * [`orthopoly`]: Stieltjes procedure, second-kind functions, the
//!   closed-form polynomials and the table check.
//! * [`semiclassical`]: Stieltjes-function difference equation, Pearson-type
//!   masses, product-of-solutions recurrences.
//! * [`cli`]: the `snul` command-line front end.

pub mod cli;
pub mod diffop;
pub mod diophantine;
pub mod error;
pub mod lattice;
pub mod moments;
pub mod numeric;
pub mod orthopoly;
pub mod polynomial;
pub mod semiclassical;

pub use error::{Error, Result};
