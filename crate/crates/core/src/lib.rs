//! Point games for weak coin flipping: exact moves and validity, profile
//! functions, norm synthesis by linear programming, and explicit
//! concentration-based lower bounds.

pub mod bounds;
pub mod concentration;
pub mod game;
pub mod io;
pub mod lp;
pub mod moves;
pub mod poly;
pub mod profile;
pub mod rational;
pub mod validity;

pub use game::{GameError, Tdpg, Tipg};
pub use moves::{Coordinate, Move1D, Move2D, MoveError};
pub use poly::{nonneg_on_nonneg_axis, NonnegCheck, PolynomialR, SturmSequence};
pub use rational::Rational;
