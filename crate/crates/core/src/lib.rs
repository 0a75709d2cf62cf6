pub mod cli;
pub mod lattice;
pub mod ringcalc;
pub mod series;
pub mod topology;
mod rational;

pub use rational::{format_rational, parse_rational, Rational};
