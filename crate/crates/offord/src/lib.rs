//! Anti-concentration and entropic bounds for weighted sums of finitely
//! supported discrete log-concave random variables, together with an exact
//! convolution engine that certifies every bound numerically.

pub mod bounds;
pub mod dist;
pub mod entropy;
pub mod input;
pub mod majorization;
mod numeric;
pub mod rational;
pub mod verify;
