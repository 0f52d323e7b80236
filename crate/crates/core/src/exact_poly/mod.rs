//! Exact rational arithmetic and multivariate polynomials over ℚ in
//! named, graded variables.

mod json;
mod poly;
mod rational;
mod render;
mod vars;

pub use poly::{elementary_of, product_of_one_plus, sum, Algebra, Exps, MPoly};
pub use rational::{
    binomial, format_rational, int, parse_rational, rat, serde_rational, serde_rational_vec,
    Rational,
};
pub use render::{render, Style};
pub use vars::{Var, VarTable, Vars};
