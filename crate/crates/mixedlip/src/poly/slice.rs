//! Weighted-sphere rescaling of a polynomial along a weight vector `P`.
//!
//! u-side: `v = r·e^{it}`, `u = r^k·z` with `k = p1/p2`.
//! v-side: `u = r·e^{iφ}`, `v = r^{1/k}·z`.
//! Each monomial becomes `c·z^a·z̄^b·e^{iβ·angle}·r^γ` after dividing by the
//! leading power `r^{d/p2}` (u-side) or `r^{d/p1}` (v-side).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use super::{rat_to_f64, GaussRat, MixedPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::U => "u",
            Side::V => "v",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceTerm {
    pub coeff: GaussRat,
    /// Exponents of the fibre variable `z` and of `z̄`.
    pub a: u32,
    pub b: u32,
    /// Frequency of the base angle.
    pub beta: i64,
    /// Exponent of `r`; zero exactly on the principal part.
    pub gamma: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceFunction {
    pub weight: (i64, i64),
    pub side: Side,
    pub d: i64,
    pub terms: Vec<SliceTerm>,
}

/// Weighted degree `p1·(ν1+μ1) + p2·(ν2+μ2)`.
pub fn rdeg(e: &super::Exps, p: (i64, i64)) -> i64 {
    p.0 * (e[0] + e[1]) as i64 + p.1 * (e[2] + e[3]) as i64
}

pub fn rescale(f: &MixedPoly, p: (i64, i64), side: Side) -> SliceFunction {
    let d = f.terms().map(|(e, _)| rdeg(e, p)).min().unwrap_or(0);
    let den = match side {
        Side::U => p.1,
        Side::V => p.0,
    };
    let terms = f
        .terms()
        .map(|(e, c)| {
            let (a, b, beta) = match side {
                Side::U => (e[0], e[1], e[2] as i64 - e[3] as i64),
                Side::V => (e[2], e[3], e[0] as i64 - e[1] as i64),
            };
            SliceTerm {
                coeff: c.clone(),
                a,
                b,
                beta,
                gamma: BigRational::new(BigInt::from(rdeg(e, p) - d), BigInt::from(den)),
            }
        })
        .collect();
    SliceFunction { weight: p, side, d, terms }
}

impl SliceFunction {
    pub fn k(&self) -> f64 {
        self.weight.0 as f64 / self.weight.1 as f64
    }

    /// Exponent of the leading power of `r` that was divided out.
    pub fn lead_exponent(&self) -> f64 {
        match self.side {
            Side::U => self.d as f64 / self.weight.1 as f64,
            Side::V => self.d as f64 / self.weight.0 as f64,
        }
    }

    pub fn evaluate(&self, z: Complex64, angle: f64, r: f64) -> Complex64 {
        let zc = z.conj();
        self.terms
            .iter()
            .map(|t| {
                let rg = if t.gamma == BigRational::from_integer(0.into()) {
                    1.0
                } else {
                    r.powf(rat_to_f64(&t.gamma))
                };
                t.coeff.to_c64()
                    * z.powu(t.a)
                    * zc.powu(t.b)
                    * Complex64::from_polar(1.0, t.beta as f64 * angle)
                    * rg
            })
            .sum()
    }

    pub fn principal(&self) -> Vec<&SliceTerm> {
        self.terms.iter().filter(|t| t.gamma == BigRational::from_integer(0.into())).collect()
    }

    /// The point of the original curve this slice parametrises.
    pub fn point(&self, z: Complex64, angle: f64, r: f64) -> (Complex64, Complex64) {
        let k = self.k();
        match self.side {
            Side::U => (z * r.powf(k), Complex64::from_polar(r, angle)),
            Side::V => (Complex64::from_polar(r, angle), z * r.powf(1.0 / k)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn consistency() {
        let f = parse("u^8 + v^3*u^2 + ~v^6*u^2 + ~v^5*u + v^4*~v^4").unwrap();
        for side in [Side::U, Side::V] {
            let s = rescale(&f, (2, 1), side);
            assert_eq!(s.d, 7);
            let z = Complex64::new(0.3, -0.7);
            for &r in &[1e-3, 0.1, 1.0] {
                let (u, v) = s.point(z, 0.9, r);
                let lhs = f.evaluate(u, v);
                let rhs = s.evaluate(z, 0.9, r) * r.powf(s.lead_exponent());
                assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
            }
        }
    }
}
