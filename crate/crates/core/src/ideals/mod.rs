//! Polynomial ideals over the rationals: Buchberger's algorithm under grevlex and
//! best-effort rational witness extraction. Used to decide whether the polynomial
//! systems produced by chart parametrizations have a common complex zero.

mod groebner;
mod multipoly;
mod solve;

pub use groebner::{
    groebner, ideal_contains_all, is_reduced, reduce, Budget, IdealStatus, IdealVerdict,
};
pub use multipoly::{names, Monomial, MultiPoly};
pub use solve::{
    find_rational_point, is_zero_dimensional, rational_roots, solve_if_zero_dimensional,
};
