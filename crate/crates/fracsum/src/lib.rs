//! Exact and sublinear evaluation of fractional sums of arithmetic
//! functions.
//!
//! The central object is `S_f(x) = sum_{n<=x} f(floor(x/n))` for an
//! arithmetic function `f`. The crate provides:
//!
//! - a catalog of arithmetic functions with sieved and pointwise
//!   evaluation ([`arith`]);
//! - exact evaluation of `S_f(x)` in O(sqrt x) time, the sawtooth `psi`,
//!   an exact five-term decomposition of `S_f`, and the mean-value
//!   constants `C_f` with rigorous tail control ([`sums`]);
//! - an exact rational exponent-pair calculus: the A/B processes, the
//!   iterated-A family, interval and balancing machinery ([`pairs`]);
//! - direct evaluation of divisor-weighted exponential sums with exact
//!   phase reduction and admissibility checks ([`expsum`]);
//! - empirical error-exponent fits against the catalog of proved
//!   exponents ([`analysis`]);
//! - a machine-readable CLI over all of the above ([`cli`]).
//!
//! Everything that can be exact is exact: integer sums accumulate in
//! checked 128-bit arithmetic, rational sums in arbitrary-precision
//! rationals, and identities are tested to zero residual.

pub mod analysis;
pub mod arith;
pub mod cli;
pub mod error;
pub mod expsum;
pub mod pairs;
pub mod sums;
pub mod value;
pub mod verify;

pub use arith::{ArithmeticFunction, FunctionId, FunctionTable, GSide, ValueKind};
pub use error::{Error, Result};
pub use value::{Rational, Value};
