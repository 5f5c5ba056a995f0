//! Dense univariate polynomials over ℚ(i), ascending coefficients.

use crate::poly::GaussRat;

pub type UPoly = Vec<GaussRat>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn derivative(p: &UPoly) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c * &GaussRat::from_int(j as i64))
            .collect(),
    )
}

fn monic(p: UPoly) -> UPoly {
    let p = trim(p);
    match p.last() {
        Some(lead) => {
            let inv = lead.inv().expect("nonzero lead");
            p.iter().map(|c| c * &inv).collect()
        }
        None => p,
    }
}

/// Remainder of `a` modulo `b` (`b` nonzero).
pub fn rem(a: &UPoly, b: &UPoly) -> UPoly {
    let b = trim(b.clone());
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero divisor");
    let mut r = trim(a.clone());
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let q = &r[r.len() - 1] * &inv;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&q * c);
        }
        r = trim(r);
    }
    r
}

/// Monic gcd.
pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let mut x = monic(a.clone());
    let mut y = monic(b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = monic(r);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UPoly {
        cs.iter().map(|&c| GaussRat::from_int(c)).collect()
    }

    #[test]
    fn gcd_of_square() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = p(&[2, -3, 0, 1]);
        let g = gcd(&f, &derivative(&f));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }
}
