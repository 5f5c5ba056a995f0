//! Newton-polygon Lipschitz invariants of two-variable mixed polynomials.

pub mod analysis;
pub mod arcs;
pub mod invariants;
pub mod links;
pub mod newton;
pub mod nondegen;
pub mod poly;
pub mod roots;
pub mod svg;
mod upoly;
