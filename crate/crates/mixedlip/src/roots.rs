//! Simultaneous polynomial root finding (Aberth–Ehrlich).

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("leading coefficient vanishes")]
    DegenerateLeading,
    #[error("Aberth iteration did not converge")]
    NoConvergence,
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Roots of `Σ c[j] z^j` (ascending coefficients). `init`, if given, must
/// hold `deg` starting guesses; root `j` of the result then tends to be the
/// one nearest `init[j]`, which is what continuation relies on.
pub fn aberth(c: &[Complex64], init: Option<&[Complex64]>) -> Result<Vec<Complex64>, RootError> {
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let scale = c.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let lead = c[deg];
    if lead.norm() <= 1e-14 * scale {
        return Err(RootError::DegenerateLeading);
    }
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    if deg == 1 {
        return Ok(vec![-monic[0]]);
    }
    let mut z: Vec<Complex64> = match init {
        Some(g) if g.len() == deg => g.to_vec(),
        _ => {
            // Fujiwara-style radius, rotated so no guess sits on the real axis
            let rad = (0..deg)
                .map(|j| monic[j].norm().powf(1.0 / (deg - j) as f64))
                .fold(0.0, f64::max)
                .max(1e-3);
            (0..deg)
                .map(|j| Complex64::from_polar(rad, 2.0 * std::f64::consts::PI * (j as f64 + 0.25) / deg as f64 + 0.4))
                .collect()
        }
    };
    // separate coincident seeds
    for j in 0..deg {
        for i in 0..j {
            if (z[i] - z[j]).norm() < 1e-12 {
                z[j] += Complex64::new(1e-7, 1e-7 * (j as f64 + 1.0));
            }
        }
    }
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..deg {
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    // accept if residuals are tiny even without step convergence
    let ok = z.iter().all(|&r| {
        let (p, _) = horner(&monic, r);
        let bound: f64 = monic.iter().enumerate().map(|(j, a)| a.norm() * r.norm().powi(j as i32)).sum();
        p.norm() <= 1e-10 * bound.max(1.0)
    });
    if ok {
        Ok(z)
    } else {
        Err(RootError::NoConvergence)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic() {
        // z^3 - 1
        let c = [Complex64::new(-1.0, 0.0), 0.0.into(), 0.0.into(), 1.0.into()];
        let r = aberth(&c, None).unwrap();
        for z in r {
            assert!((z.powu(3) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn double_root() {
        // (z-1)^2 (z+2)
        let c = [Complex64::new(2.0, 0.0), (-3.0).into(), 0.0.into(), 1.0.into()];
        let r = aberth(&c, None).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().any(|z| (z + 2.0).norm() < 1e-10));
    }
}
