//! Exact census of real algebraic integers of fixed degree and bounded naive
//! height, together with the density functions that model their distribution.
//!
//! The census side is exact: every monic polynomial in the height box is
//! enumerated, reducible ones are discarded, and real roots are counted with
//! Sturm chains over half-open rational intervals. The density side evaluates
//! the limit densities by semi-analytic quadrature with Monte Carlo
//! cross-checks and the available closed forms.

mod arith;
pub mod census;
pub mod density;
pub mod error;
pub mod exec;
pub mod irreducible;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use poly::{MonicIntPoly, IntPoly};
pub use rational::{Rat, RatInterval};
