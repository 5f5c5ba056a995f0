//! Fixtures and generators shared by the integration suites.
#![allow(dead_code)]

pub mod props;

use std::sync::OnceLock;

use mixedlip::analysis::{analyze, Analysis, Options};
use mixedlip::poly::{GaussRat, MixedPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub const EX_NEWTON: &str = "u^8 + v^3*u^2 + ~v^6*u^2 + ~v^5*u + v^4*~v^4";
pub const EX_COUNTER: &str = "(u^3 - v*~v)*(u^5 - v*~v)";
/// Deformation `(u³ − (1+εi)vv̄)(u⁵ − vv̄)` written as `f + εθ`.
pub const EX_COUNTER_THETA: &str = "-i*v*~v*(u^5 - v*~v)";
/// The leading part `−i·vv̄·u⁵` of that θ alone.
pub const EX_COUNTER_THETA_LEAD: &str = "-i*v*~v*u^5";
pub const EX_COUNTER_DEFORMED: &str = "(u^3 - (1 + i)*v*~v)*(u^5 - v*~v)";
pub const EX_NC_F: &str = "u^14 + u^10*v^2 + u^7*v^2*~v^2 + u^5*v^3*~v^3 + u^3*v^5*~v^4 + v^9*~v^9";
pub const EX_NC_G: &str = "u^11 + u^7*v^2 + u^4*v^2*~v^2 + u^2*v^3*~v^3 + v^6*~v^6";
pub const EX_BRAID_F: &str = "(u + v^2*~v)*(u*~u + (v*~v)^2*v^2 + 2*i*(v*~v)^3)";
pub const EX_BRAID_G: &str = "u*(u*~u + v^2 + 2*i*v*~v)";
pub const EX_BRAID_H: &str = "v*(u*~u + (v*~v)^2*v^2 + 2*i*(v*~v)^3)";
pub const EX_RADIAL: &str = "u*v + u^4 + v^4";

/// Every polynomial the fixture suites analyse.
pub const FIXTURES: &[&str] = &[
    EX_NEWTON,
    EX_COUNTER,
    EX_COUNTER_DEFORMED,
    EX_NC_F,
    EX_NC_G,
    EX_BRAID_F,
    EX_BRAID_G,
    EX_BRAID_H,
    EX_RADIAL,
    "u*v",
    "u^2 - v^2",
    "u*v + u^3 + v^3",
];

pub fn opts() -> Options {
    Options::default()
}

/// Analyses of [`FIXTURES`], computed once per test binary.
pub fn fixture_analyses() -> &'static [Analysis] {
    static CELL: OnceLock<Vec<Analysis>> = OnceLock::new();
    CELL.get_or_init(|| FIXTURES.iter().map(|s| analyze(s, &opts()).expect("fixture parses")).collect())
}

pub fn fixture(s: &str) -> &'static Analysis {
    let i = FIXTURES.iter().position(|x| *x == s).expect("known fixture");
    &fixture_analyses()[i]
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn arb_coeff() -> impl Strategy<Value = GaussRat> {
    (-6i64..=6, -6i64..=6, 1i64..=4)
        .prop_filter("nonzero", |(a, b, _)| *a != 0 || *b != 0)
        .prop_map(|(a, b, d)| GaussRat::new(rat(a, d), rat(b, d)))
}

pub fn arb_exps(max: u32) -> impl Strategy<Value = [u32; 4]> {
    [0..=max, 0..=max, 0..=max, 0..=max]
}

/// Nonzero mixed polynomial with up to `n` terms.
pub fn arb_poly(n: usize, max: u32) -> impl Strategy<Value = MixedPoly> {
    prop::collection::vec((arb_exps(max), arb_coeff()), 1..=n)
        .prop_map(MixedPoly::from_terms)
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Nonzero polynomial without constant term (a germ at the origin).
pub fn arb_germ(n: usize, max: u32) -> impl Strategy<Value = MixedPoly> {
    arb_poly(n, max).prop_filter("vanishes at 0", |p| !p.has_constant_term())
}

/// Support sets: up to 8 distinct lattice points with coordinates ≤ 12.
pub fn arb_support() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::btree_set((0u32..=12, 0u32..=12), 1..=8)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_filter("not the origin alone", |s| s.iter().any(|&p| p != (0, 0)))
}

/// A polynomial with the given support; exponents split between a variable
/// and its conjugate by `split`.
pub fn poly_on_support(pts: &[(u32, u32)], split: &[(u32, u32)], coeffs: &[GaussRat]) -> MixedPoly {
    MixedPoly::from_terms(pts.iter().enumerate().filter(|(_, p)| **p != (0, 0)).map(|(j, &(x, y))| {
        let (sa, sb) = split[j % split.len()];
        let a = sa % (x + 1);
        let b = sb % (y + 1);
        ([x - a, a, y - b, b], coeffs[j % coeffs.len()].clone())
    }))
}

pub fn c64_close(a: num_complex::Complex64, b: num_complex::Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * (1.0 + a.norm().max(b.norm()))
}
