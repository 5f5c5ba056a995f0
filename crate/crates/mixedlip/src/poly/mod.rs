//! Mixed polynomials in `u, ū, v, v̄` with Gaussian-rational coefficients.

mod gauss;
mod parse;
mod slice;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

pub use gauss::{fmt_rat, rat_to_f64, GaussRat};
pub use parse::{parse, parse_any, ParseError};
pub use slice::{rdeg, rescale, Side, SliceFunction, SliceTerm};

/// Exponent vector `[ν1, μ1, ν2, μ2]` of `u^ν1 ū^μ1 v^ν2 v̄^μ2`.
pub type Exps = [u32; 4];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: GaussRat,
    pub nu: [u32; 2],
    pub mu: [u32; 2],
}

impl Monomial {
    pub fn exps(&self) -> Exps {
        [self.nu[0], self.mu[0], self.nu[1], self.mu[1]]
    }

    /// Point `(ν1+μ1, ν2+μ2)` of the support.
    pub fn point(&self) -> (i64, i64) {
        exps_point(&self.exps())
    }
}

pub fn exps_point(e: &Exps) -> (i64, i64) {
    ((e[0] + e[1]) as i64, (e[2] + e[3]) as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    U,
    #[serde(rename = "ubar")]
    UBar,
    V,
    #[serde(rename = "vbar")]
    VBar,
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::U => 0,
            Var::UBar => 1,
            Var::V => 2,
            Var::VBar => 3,
        }
    }
}

/// A finite sum of monomials, stored sorted by exponent with no zero
/// coefficients. Arithmetic is closed (derivatives may carry constants);
/// [`parse`] additionally rejects constant terms and the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MixedPoly {
    terms: BTreeMap<Exps, GaussRat>,
}

impl MixedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn monomial(c: GaussRat, e: Exps) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.slot()] = 1;
        Self::monomial(GaussRat::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, GaussRat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exps, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(GaussRat::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> Option<&GaussRat> {
        self.terms.get(e)
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(e, c)| Monomial { coeff: c.clone(), nu: [e[0], e[2]], mu: [e[1], e[3]] })
            .collect()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&[0; 4])
    }

    /// Distinct support points `(ν1+μ1, ν2+μ2)`, sorted.
    pub fn support(&self) -> Vec<(i64, i64)> {
        let mut pts: Vec<_> = self.terms.keys().map(exps_point).collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Keep only terms satisfying the predicate.
    pub fn filter<F: Fn(&Exps) -> bool>(&self, keep: F) -> Self {
        MixedPoly { terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (*e, c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -c);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(GaussRat::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugate: swaps `u ↔ ū`, `v ↔ v̄` and conjugates coefficients.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| ([e[1], e[0], e[3], e[2]], c.conj())))
    }

    /// Exchange the roles of `u` and `v`.
    pub fn swap_uv(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| ([e[2], e[3], e[0], e[1]], c.clone())))
    }

    /// Wirtinger derivative with respect to one of `u, ū, v, v̄`.
    pub fn wirtinger(&self, var: Var) -> Self {
        let s = var.slot();
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[s] > 0).map(|(e, c)| {
            let mut e2 = *e;
            e2[s] -= 1;
            (e2, c.scale(&BigRational::from_integer(BigInt::from(e[s]))))
        }))
    }

    pub fn evaluate(&self, u: Complex64, v: Complex64) -> Complex64 {
        let (uc, vc) = (u.conj(), v.conj());
        self.terms
            .iter()
            .map(|(e, c)| c.to_c64() * u.powu(e[0]) * uc.powu(e[1]) * v.powu(e[2]) * vc.powu(e[3]))
            .sum()
    }

    /// Exact evaluation at Gaussian-rational points.
    pub fn evaluate_exact(&self, u: &GaussRat, v: &GaussRat) -> GaussRat {
        let pw = |z: &GaussRat, n: u32| (0..n).fold(GaussRat::one(), |a, _| a * z);
        let (uc, vc) = (u.conj(), v.conj());
        self.terms.iter().fold(GaussRat::zero(), |acc, (e, c)| {
            acc + c * &pw(u, e[0]) * pw(&uc, e[1]) * pw(v, e[2]) * pw(&vc, e[3])
        })
    }

    fn none_in_slot(&self, s: usize) -> bool {
        self.terms.keys().all(|e| e[s] == 0)
    }

    /// No `ū` appears.
    pub fn is_u_semiholomorphic(&self) -> bool {
        self.none_in_slot(1)
    }

    /// No `u` appears.
    pub fn is_ubar_semiholomorphic(&self) -> bool {
        self.none_in_slot(0)
    }

    pub fn is_v_semiholomorphic(&self) -> bool {
        self.none_in_slot(3)
    }

    pub fn is_vbar_semiholomorphic(&self) -> bool {
        self.none_in_slot(2)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.none_in_slot(1) && self.none_in_slot(3)
    }

    /// Some monomial is a pure power of `u`/`ū` (support meets the x-axis).
    pub fn is_u_convenient(&self) -> bool {
        self.terms.keys().any(|e| e[2] + e[3] == 0 && e[0] + e[1] > 0)
    }

    /// Some monomial is a pure power of `v`/`v̄` (support meets the y-axis).
    pub fn is_v_convenient(&self) -> bool {
        self.terms.keys().any(|e| e[0] + e[1] == 0 && e[2] + e[3] > 0)
    }

    /// Sum of `|c|` over all coefficients.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.abs_f64()).sum()
    }
}

fn fmt_factor(out: &mut Vec<String>, name: &str, n: u32) {
    match n {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{n}")),
    }
}

fn monomial_body(e: &Exps) -> Vec<String> {
    let mut f = Vec::new();
    fmt_factor(&mut f, "u", e[0]);
    fmt_factor(&mut f, "~u", e[1]);
    fmt_factor(&mut f, "v", e[2]);
    fmt_factor(&mut f, "~v", e[3]);
    f
}

impl fmt::Display for MixedPoly {
    /// Canonical text in the input grammar; terms in decreasing exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            // pull a sign out of real or purely imaginary coefficients
            let negative = if c.im == BigRational::from_integer(0.into()) {
                c.re < BigRational::from_integer(0.into())
            } else {
                c.re == BigRational::from_integer(0.into()) && c.im < BigRational::from_integer(0.into())
            };
            let mag = if negative { -c } else { c.clone() };
            let sep = match (n, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mut parts = monomial_body(e);
            if !mag.is_one() || parts.is_empty() {
                parts.insert(0, mag.to_string());
            }
            write!(f, "{sep}{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for MixedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_and_print() {
        let f = parse("u^2*~u + 3*v*~v - i*u").unwrap();
        assert_eq!(f.wirtinger(Var::UBar).to_string(), "u^2");
        assert_eq!(f.wirtinger(Var::V).to_string(), "3*~v");
        let g = parse(&f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn conj_and_swap() {
        let f = parse("i*u*~v^2 + v").unwrap();
        assert_eq!(f.conj().to_string(), "-i*~u*v^2 + ~v");
        assert_eq!(f.swap_uv().swap_uv(), f);
    }
}
