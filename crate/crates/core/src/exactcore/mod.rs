//! Exact rational arithmetic, dense linear algebra and linear programming.

pub mod cone;
pub mod inequality;
pub mod lp;
pub mod matrix;
pub mod rat;
pub mod vector;

pub use cone::{in_cone, ConeMembership};
pub use inequality::{Equation, Inequality};
pub use lp::{lp_solve, LinearProgram, LpResult, LpStatus, VarSign};
pub use matrix::{rank_of, QMatrix};
pub use rat::Rat;
pub use vector::QVector;
