//! Singular-locus tests for face functions: inner non-degeneracy (IND),
//! Γ_inn-niceness and the radial obstruction locus.
//!
//! A point of `V(f)` is singular iff `f = 0`, `Y = A₁·conj(B₂) − A₂·conj(B₁) = 0`
//! and `Z = |A|² − |B|² = 0`, with `A = (f_u, f_v)`, `B = (f_ū, f_v̄)`.
//! Weighted homogeneity lets every test run on a compact chart, where a box
//! branch-and-bound either certifies `R = |f|² + |Y|² + Z² > 0` or polishes a
//! witness.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::poly::{exps_point, GaussRat, MixedPoly, Var};
use crate::upoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriValue {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    HolomorphicExact,
    Semiholomorphic,
    TorusTrig,
    NumericGrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl Witness {
    pub fn new(u: Complex64, v: Complex64) -> Self {
        Witness { u: [u.re, u.im], v: [v.re, v.im] }
    }
    pub fn u(&self) -> Complex64 {
        Complex64::new(self.u[0], self.u[1])
    }
    pub fn v(&self) -> Complex64 {
        Complex64::new(self.v[0], self.v[1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tri {
    pub value: TriValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub method: Method,
}

impl Tri {
    pub fn yes(method: Method) -> Self {
        Tri { value: TriValue::Yes, witness: None, method }
    }
    pub fn no(method: Method, w: Option<Witness>) -> Self {
        Tri { value: TriValue::No, witness: w, method }
    }
    pub fn unknown(method: Method) -> Self {
        Tri { value: TriValue::Unknown, witness: None, method }
    }
    pub fn is_yes(&self) -> bool {
        self.value == TriValue::Yes
    }
    pub fn is_no(&self) -> bool {
        self.value == TriValue::No
    }
}

/// Three-valued conjunction.
pub fn tri_and(vals: impl IntoIterator<Item = TriValue>) -> TriValue {
    let mut out = TriValue::Yes;
    for v in vals {
        match v {
            TriValue::No => return TriValue::No,
            TriValue::Unknown => out = TriValue::Unknown,
            TriValue::Yes => {}
        }
    }
    out
}

/// Where on `ℂ²∖{0}` a singular point is looked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Stratum {
    /// `(ℂ*)²`
    #[serde(rename = "torus")]
    Torus,
    /// `{v = 0, u ≠ 0}`
    #[serde(rename = "v=0")]
    VZero,
    /// `{u = 0, v ≠ 0}`
    #[serde(rename = "u=0")]
    UZero,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub polish: f64,
    pub witness: f64,
    pub max_boxes: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { polish: 1e-12, witness: 1e-8, max_boxes: 1 << 20 }
    }
}

// ---------------------------------------------------------------- charts

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Chart {
    /// `|v| = 1`, coordinate 0 is `|u|`.
    A,
    /// `|u| = 1`, coordinate 0 is `|v|`.
    B,
    /// `|u| = |v| = 1`.
    Torus,
    /// `v = 0`, `|u| = 1`.
    AxisV0,
    /// `u = 0`, `|v| = 1`.
    AxisU0,
}

impl Chart {
    fn point(self, x: &[f64; 3]) -> (Complex64, Complex64) {
        let e = |a: f64| Complex64::from_polar(1.0, a);
        match self {
            Chart::A => (Complex64::from_polar(x[0], x[1]), e(x[2])),
            Chart::B => (e(x[1]), Complex64::from_polar(x[0], x[2])),
            Chart::Torus => (e(x[1]), e(x[2])),
            Chart::AxisV0 => (e(x[1]), Complex64::new(0.0, 0.0)),
            Chart::AxisU0 => (Complex64::new(0.0, 0.0), e(x[2])),
        }
    }

    fn active(self) -> [bool; 3] {
        match self {
            Chart::A | Chart::B => [true, true, true],
            Chart::Torus => [false, true, true],
            Chart::AxisV0 => [false, true, false],
            Chart::AxisU0 => [false, false, true],
        }
    }
}

/// `c·ρ^n·e^{i(aφ + bt)}`
#[derive(Clone, Copy, Debug)]
struct TrigTerm {
    c: Complex64,
    n: i32,
    a: i32,
    b: i32,
}

fn chart_terms(p: &MixedPoly, chart: Chart) -> Vec<TrigTerm> {
    p.terms()
        .filter(|(e, _)| match chart {
            Chart::AxisV0 => e[2] + e[3] == 0,
            Chart::AxisU0 => e[0] + e[1] == 0,
            _ => true,
        })
        .map(|(e, c)| {
            let n = match chart {
                Chart::A => e[0] + e[1],
                Chart::B => e[2] + e[3],
                _ => 0,
            } as i32;
            TrigTerm { c: c.to_c64(), n, a: e[0] as i32 - e[1] as i32, b: e[2] as i32 - e[3] as i32 }
        })
        .collect()
}

/// Value at the box centre and a bound on the variation over the box.
fn eval_bound(terms: &[TrigTerm], x: &[f64; 3], h: &[f64; 3]) -> (Complex64, f64) {
    let rmax = x[0] + h[0];
    let mut val = Complex64::new(0.0, 0.0);
    let mut delta = 0.0;
    for t in terms {
        let rn = x[0].powi(t.n);
        val += t.c * rn * Complex64::from_polar(1.0, t.a as f64 * x[1] + t.b as f64 * x[2]);
        let m = t.c.norm();
        let rmn = rmax.powi(t.n);
        let dr = if t.n > 0 { t.n as f64 * rmax.powi(t.n - 1) * h[0] } else { 0.0 };
        delta += m * (dr + rmn * ((t.a.abs() as f64) * h[1] + (t.b.abs() as f64) * h[2]));
    }
    (val, delta)
}

struct Problem {
    chart: Chart,
    /// f, f_u, f_ū, f_v, f_v̄ on the chart
    polys: [Vec<TrigTerm>; 5],
    lo: [f64; 3],
    hi: [f64; 3],
}

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

fn prod_bound(a: (Complex64, f64), b: (Complex64, f64)) -> f64 {
    a.1 * (b.0.norm() + b.1) + a.0.norm() * b.1
}

fn sq_bound(a: (Complex64, f64)) -> f64 {
    a.1 * (2.0 * a.0.norm() + a.1)
}

/// `(f, Y, Z)` from the five values.
fn fyz(v: &[Complex64; 5]) -> (Complex64, Complex64, f64) {
    let (f, a1, b1, a2, b2) = (v[0], v[1], v[2], v[3], v[4]);
    let y = a1 * b2.conj() - a2 * b1.conj();
    let z = a1.norm_sqr() + a2.norm_sqr() - b1.norm_sqr() - b2.norm_sqr();
    (f, y, z)
}

impl Problem {
    /// (R at centre, certified lower bound of R on the box)
    fn bound(&self, x: &[f64; 3], h: &[f64; 3]) -> (f64, f64) {
        let e: Vec<(Complex64, f64)> = self.polys.iter().map(|p| eval_bound(p, x, h)).collect();
        let vals = [e[0].0, e[1].0, e[2].0, e[3].0, e[4].0];
        let (f, y, z) = fyz(&vals);
        let dy = prod_bound(e[1], e[4]) + prod_bound(e[3], e[2]);
        let dz = sq_bound(e[1]) + sq_bound(e[3]) + sq_bound(e[2]) + sq_bound(e[4]);
        let r = f.norm_sqr() + y.norm_sqr() + z * z;
        let lo = pos(f.norm() - e[0].1).powi(2) + pos(y.norm() - dy).powi(2) + pos(z.abs() - dz).powi(2);
        (r, lo)
    }

    fn residual(&self, x: &[f64; 3]) -> [f64; 5] {
        let z0 = [0.0; 3];
        let mut vals = [Complex64::new(0.0, 0.0); 5];
        for (k, p) in self.polys.iter().enumerate() {
            vals[k] = eval_bound(p, x, &z0).0;
        }
        let (f, y, z) = fyz(&vals);
        [f.re, f.im, y.re, y.im, z]
    }

    fn sensitivity(&self) -> [f64; 3] {
        let mut s = [0.0; 3];
        for p in &self.polys {
            for t in p {
                let m = t.c.norm();
                s[0] += m * t.n as f64;
                s[1] += m * t.a.abs() as f64;
                s[2] += m * t.b.abs() as f64;
            }
        }
        s
    }
}

/// Levenberg–Marquardt on the active coordinates.
fn polish(p: &Problem, x0: [f64; 3], tol: f64) -> [f64; 3] {
    let act = p.chart.active();
    let idx: Vec<usize> = (0..3).filter(|&i| act[i]).collect();
    let n = idx.len();
    let mut x = x0;
    let norm2 = |r: &[f64; 5]| r.iter().map(|v| v * v).sum::<f64>();
    let mut r = p.residual(&x);
    let mut lambda = 1e-3;
    for _ in 0..200 {
        if norm2(&r).sqrt() < tol {
            break;
        }
        let mut jac = vec![[0.0; 5]; n];
        for (col, &i) in idx.iter().enumerate() {
            let step = 1e-7 * (1.0 + x[i].abs());
            let mut xp = x;
            xp[i] += step;
            let mut xm = x;
            xm[i] -= step;
            let (rp, rm) = (p.residual(&xp), p.residual(&xm));
            for k in 0..5 {
                jac[col][k] = (rp[k] - rm[k]) / (2.0 * step);
            }
        }
        // normal equations (JᵀJ + λ diag) δ = −Jᵀ r
        let mut improved = false;
        for _ in 0..12 {
            let mut m = vec![vec![0.0; n + 1]; n];
            for a in 0..n {
                for b in 0..n {
                    m[a][b] = (0..5).map(|k| jac[a][k] * jac[b][k]).sum();
                }
                m[a][a] += lambda * (1.0 + m[a][a]);
                m[a][n] = -(0..5).map(|k| jac[a][k] * r[k]).sum::<f64>();
            }
            let Some(delta) = solve_dense(m) else {
                lambda *= 10.0;
                continue;
            };
            let mut xn = x;
            for (col, &i) in idx.iter().enumerate() {
                xn[i] += delta[col];
            }
            let rn = p.residual(&xn);
            if norm2(&rn) < norm2(&r) {
                x = xn;
                r = rn;
                lambda = (lambda * 0.3).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    x
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
pub(crate) fn solve_dense(mut m: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = m.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))?;
        if m[piv][c].abs() < 1e-300 {
            return None;
        }
        m.swap(c, piv);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

enum Outcome {
    Certified,
    Witness(Complex64, Complex64),
    Unknown,
}

fn singular_residual(polys: &[MixedPoly; 5], u: Complex64, v: Complex64) -> f64 {
    let mut vals = [Complex64::new(0.0, 0.0); 5];
    for k in 0..5 {
        vals[k] = polys[k].evaluate(u, v);
    }
    let (f, y, z) = fyz(&vals);
    (f.norm_sqr() + y.norm_sqr() + z * z).sqrt()
}

fn in_stratum(s: Stratum, u: Complex64, v: Complex64) -> bool {
    match s {
        Stratum::Torus => u.norm() > 1e-9 && v.norm() > 1e-9,
        Stratum::VZero => u.norm() > 1e-9 && v.norm() == 0.0,
        Stratum::UZero => v.norm() > 1e-9 && u.norm() == 0.0,
    }
}

fn branch_and_bound(p: &Problem, exact: &[MixedPoly; 5], stratum: Stratum, tol: &Tolerances) -> Outcome {
    let act = p.chart.active();
    let sens = p.sensitivity();
    let mut stack = Vec::new();
    // a coarse initial grid keeps the DFS from diving into one corner
    let splits = [if act[0] { 2 } else { 1 }, if act[1] { 8 } else { 1 }, if act[2] { 8 } else { 1 }];
    for i in 0..splits[0] {
        for j in 0..splits[1] {
            for k in 0..splits[2] {
                let ijk = [i, j, k];
                let mut lo = [0.0; 3];
                let mut hi = [0.0; 3];
                for d in 0..3 {
                    let w = (p.hi[d] - p.lo[d]) / splits[d] as f64;
                    lo[d] = p.lo[d] + w * ijk[d] as f64;
                    hi[d] = lo[d] + w;
                }
                stack.push((lo, hi));
            }
        }
    }
    let mut count = 0usize;
    let mut attempts = 0usize;
    let mut unresolved = false;
    while let Some((lo, hi)) = stack.pop() {
        count += 1;
        if count > tol.max_boxes {
            return Outcome::Unknown;
        }
        let mut x = [0.0; 3];
        let mut h = [0.0; 3];
        for d in 0..3 {
            x[d] = 0.5 * (lo[d] + hi[d]);
            h[d] = 0.5 * (hi[d] - lo[d]);
        }
        let (rc, rlo) = p.bound(&x, &h);
        if rlo > 0.0 {
            continue;
        }
        let hmax = (0..3).filter(|&d| act[d]).map(|d| h[d]).fold(0.0, f64::max);
        if rc.sqrt() < 1e-3 && hmax < 0.05 && attempts < 256 {
            attempts += 1;
            let xs = polish(p, x, tol.polish);
            let (u, v) = p.chart.point(&xs);
            if in_stratum(stratum, u, v) && singular_residual(exact, u, v) < tol.witness {
                return Outcome::Witness(u, v);
            }
        }
        if hmax < 1e-9 {
            unresolved = true;
            continue;
        }
        let d = (0..3)
            .filter(|&d| act[d])
            .max_by(|&a, &b| (h[a] * sens[a].max(1e-3)).total_cmp(&(h[b] * sens[b].max(1e-3))))
            .expect("some active dimension");
        let mid = x[d];
        let mut hi1 = hi;
        hi1[d] = mid;
        let mut lo2 = lo;
        lo2[d] = mid;
        stack.push((lo2, hi));
        stack.push((lo, hi1));
    }
    if unresolved {
        Outcome::Unknown
    } else {
        Outcome::Certified
    }
}

// ---------------------------------------------------------- trig minima

/// Certified lower bound on `min |h|` over the torus for `h = Σ c e^{i(aφ+bt)}`,
/// plus a zero if one was located. `terms` carry `(c, a, b)`.
pub fn certified_min_abs(terms: &[(Complex64, i32, i32)], max_boxes: usize) -> (f64, Option<(f64, f64)>) {
    match terms.len() {
        0 => (0.0, Some((0.0, 0.0))),
        1 => (terms[0].0.norm(), None),
        2 => {
            let (c1, a1, b1) = terms[0];
            let (c2, a2, b2) = terms[1];
            if (a1, b1) == (a2, b2) {
                let s = (c1 + c2).norm();
                return (s, if s == 0.0 { Some((0.0, 0.0)) } else { None });
            }
            let m = (c1.norm() - c2.norm()).abs();
            if m > 1e-14 * (c1.norm() + c2.norm()) {
                return (m, None);
            }
            // c1 e^{iθ1} = −c2 e^{iθ2}: θ1 − θ2 = π + arg c2 − arg c1
            let target = PI + c2.arg() - c1.arg();
            let (da, db) = (a1 - a2, b1 - b2);
            let w = if da != 0 { (target / da as f64, 0.0) } else { (0.0, target / db as f64) };
            (0.0, Some(w))
        }
        _ => {
            let tt: Vec<TrigTerm> = terms.iter().map(|&(c, a, b)| TrigTerm { c, n: 0, a, b }).collect();
            trig_bnb(&tt, max_boxes)
        }
    }
}

fn trig_bnb(tt: &[TrigTerm], max_boxes: usize) -> (f64, Option<(f64, f64)>) {
    let two_pi = 2.0 * PI;
    let mut stack = vec![([1.0, 0.0, 0.0], [1.0, two_pi, two_pi])];
    let mut lower = f64::INFINITY;
    let mut count = 0;
    while let Some((lo, hi)) = stack.pop() {
        count += 1;
        if count > max_boxes {
            return (0.0, None);
        }
        let x = [1.0, 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])];
        let h = [0.0, 0.5 * (hi[1] - lo[1]), 0.5 * (hi[2] - lo[2])];
        let (val, delta) = eval_bound(tt, &x, &h);
        if val.norm() < 1e-13 {
            // Newton on (Re h, Im h) to a genuine zero
            let mut p = (x[1], x[2]);
            for _ in 0..60 {
                let z = eval_bound(tt, &[1.0, p.0, p.1], &[0.0; 3]).0;
                if z.norm() < 1e-14 {
                    break;
                }
                let hf: Complex64 =
                    tt.iter().map(|t| t.c * Complex64::new(0.0, t.a as f64) * Complex64::from_polar(1.0, t.a as f64 * p.0 + t.b as f64 * p.1)).sum();
                let ht: Complex64 =
                    tt.iter().map(|t| t.c * Complex64::new(0.0, t.b as f64) * Complex64::from_polar(1.0, t.a as f64 * p.0 + t.b as f64 * p.1)).sum();
                let m = vec![vec![hf.re, ht.re, -z.re], vec![hf.im, ht.im, -z.im]];
                match solve_dense(m) {
                    Some(d) => {
                        p.0 += d[0];
                        p.1 += d[1];
                    }
                    None => break,
                }
            }
            return (0.0, Some(p));
        }
        if val.norm() > delta {
            lower = lower.min(val.norm() - delta);
            continue;
        }
        let d = if h[1] * sum_freq(tt, true) >= h[2] * sum_freq(tt, false) { 1 } else { 2 };
        if h[d] < 1e-10 {
            return (0.0, Some((x[1], x[2])));
        }
        let mut hi1 = hi;
        hi1[d] = x[d];
        let mut lo2 = lo;
        lo2[d] = x[d];
        stack.push((lo2, hi));
        stack.push((lo, hi1));
    }
    (lower, None)
}

fn sum_freq(tt: &[TrigTerm], phi: bool) -> f64 {
    tt.iter().map(|t| t.c.norm() * if phi { t.a.abs() } else { t.b.abs() } as f64).sum::<f64>().max(1e-12)
}

// ------------------------------------------------------- exact methods

/// Which of the four variables must be conjugated to make `f` holomorphic,
/// if that is possible: `(conj_u, conj_v)`.
fn holomorphic_flip(f: &MixedPoly) -> Option<(bool, bool)> {
    let cu = if f.is_u_semiholomorphic() {
        false
    } else if f.is_ubar_semiholomorphic() {
        true
    } else {
        return None;
    };
    let cv = if f.is_v_semiholomorphic() {
        false
    } else if f.is_vbar_semiholomorphic() {
        true
    } else {
        return None;
    };
    Some((cu, cv))
}

fn flip(f: &MixedPoly, cu: bool, cv: bool) -> MixedPoly {
    MixedPoly::from_terms(f.terms().map(|(e, c)| {
        let mut e2 = *e;
        if cu {
            e2.swap(0, 1);
        }
        if cv {
            e2.swap(2, 3);
        }
        (e2, c.clone())
    }))
}

/// Weight `(p1, p2)` of the segment through the support, if it spans one.
pub fn face_weight(f: &MixedPoly) -> Option<(i64, i64)> {
    let pts = f.support();
    let (a, b) = (pts.first()?, pts.last()?);
    if a == b {
        return None;
    }
    let (dx, dy) = ((b.0 - a.0).abs(), (b.1 - a.1).abs());
    let g = dx.gcd(&dy);
    Some((dy / g, dx / g))
}

fn holomorphic_exact(g: &MixedPoly, stratum: Stratum) -> (TriValue, Option<(Complex64, Complex64)>) {
    // g is holomorphic here
    let pts: Vec<(i64, i64)> = g.terms().map(|(e, _)| exps_point(e)).collect();
    match stratum {
        Stratum::VZero => {
            if pts.iter().any(|p| p.1 == 0) || pts.iter().any(|p| p.1 == 1) {
                (TriValue::Yes, None)
            } else {
                (TriValue::No, Some((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))))
            }
        }
        Stratum::UZero => {
            if pts.iter().any(|p| p.0 == 0) || pts.iter().any(|p| p.0 == 1) {
                (TriValue::Yes, None)
            } else {
                (TriValue::No, Some((Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))))
            }
        }
        Stratum::Torus => {
            let Some((_, p2)) = face_weight(g) else {
                return (TriValue::Yes, None);
            };
            // g = u^{a0} v^{b0} Σ c_m (u^{p2} v^{-p1})^m
            let a0 = pts.iter().map(|p| p.0).min().unwrap();
            let mut gx: upoly::UPoly = Vec::new();
            for (e, c) in g.terms() {
                let m = ((e[0] as i64 - a0) / p2) as usize;
                if gx.len() <= m {
                    gx.resize(m + 1, GaussRat::zero());
                }
                gx[m] = &gx[m] + c;
            }
            let d = upoly::gcd(&gx, &upoly::derivative(&gx));
            if d.len() <= 1 {
                return (TriValue::Yes, None);
            }
            let coeffs: Vec<Complex64> = d.iter().map(|c| c.to_c64()).collect();
            let w = crate::roots::aberth(&coeffs, None).ok().and_then(|r| r.first().copied()).map(|x| {
                let u = x.powf(1.0 / p2 as f64);
                (u, Complex64::new(1.0, 0.0))
            });
            (TriValue::No, w)
        }
    }
}

/// Decide whether the face function has no singular point of `V(f)` on the
/// stratum. `Yes` means the singular set there is empty.
pub fn face_sing_empty(f: &MixedPoly, stratum: Stratum, tol: &Tolerances) -> Tri {
    let unit = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let default_w = match stratum {
        Stratum::Torus => (unit, unit),
        Stratum::VZero => (unit, zero),
        Stratum::UZero => (zero, unit),
    };
    if f.is_zero() {
        return Tri::no(Method::HolomorphicExact, Some(Witness::new(default_w.0, default_w.1)));
    }
    if let Some((cu, cv)) = holomorphic_flip(f) {
        let (val, w) = holomorphic_exact(&flip(f, cu, cv), stratum);
        let w = w.map(|(u, v)| {
            let u = if cu { u.conj() } else { u };
            let v = if cv { v.conj() } else { v };
            Witness::new(u, v)
        });
        return Tri { value: val, witness: w, method: Method::HolomorphicExact };
    }
    let semi = f.is_u_semiholomorphic() || f.is_ubar_semiholomorphic() || f.is_v_semiholomorphic() || f.is_vbar_semiholomorphic();
    // normalise so tolerances are scale-free
    let scale = f.terms().map(|(_, c)| c.abs_f64()).fold(0.0, f64::max);
    let inv = GaussRat::real(num_rational::BigRational::from_float(1.0 / scale).expect("finite scale"));
    let fn_ = f.scale(&inv);
    let exact = [
        fn_.clone(),
        fn_.wirtinger(Var::U),
        fn_.wirtinger(Var::UBar),
        fn_.wirtinger(Var::V),
        fn_.wirtinger(Var::VBar),
    ];
    let two_pi = 2.0 * PI;
    let make = |chart: Chart, lo0: f64, hi0: f64| Problem {
        chart,
        polys: [
            chart_terms(&exact[0], chart),
            chart_terms(&exact[1], chart),
            chart_terms(&exact[2], chart),
            chart_terms(&exact[3], chart),
            chart_terms(&exact[4], chart),
        ],
        lo: [lo0, 0.0, 0.0],
        hi: [hi0, two_pi, two_pi],
    };
    let (problems, method) = match stratum {
        Stratum::VZero => (vec![make(Chart::AxisV0, 1.0, 1.0)], Method::TorusTrig),
        Stratum::UZero => (vec![make(Chart::AxisU0, 1.0, 1.0)], Method::TorusTrig),
        Stratum::Torus => {
            if f.support().len() == 1 {
                (vec![make(Chart::Torus, 1.0, 1.0)], Method::TorusTrig)
            } else {
                let m = if semi { Method::Semiholomorphic } else { Method::NumericGrid };
                let ra = chart_cutoff(&fn_, Chart::A, tol);
                let rb = chart_cutoff(&fn_, Chart::B, tol);
                (vec![make(Chart::A, ra, 1.0), make(Chart::B, rb, 1.0)], m)
            }
        }
    };
    let mut all_certified = true;
    for p in &problems {
        match branch_and_bound(p, &exact, stratum, tol) {
            Outcome::Certified => {}
            Outcome::Witness(u, v) => return Tri::no(method, Some(Witness::new(u, v))),
            Outcome::Unknown => all_certified = false,
        }
    }
    if all_certified {
        Tri::yes(method)
    } else {
        Tri::unknown(method)
    }
}

/// Radius below which `f` has no zeros in the chart (so no singular points).
fn chart_cutoff(f: &MixedPoly, chart: Chart, tol: &Tolerances) -> f64 {
    let terms = chart_terms(f, chart);
    let n0 = terms.iter().map(|t| t.n).min().unwrap_or(0);
    let low: Vec<(Complex64, i32, i32)> = terms.iter().filter(|t| t.n == n0).map(|t| (t.c, t.a, t.b)).collect();
    let s: f64 = terms.iter().filter(|t| t.n > n0).map(|t| t.c.norm()).sum();
    let (m0, _) = certified_min_abs(&low, tol.max_boxes / 16);
    if m0 <= 0.0 {
        return 0.0;
    }
    if s == 0.0 {
        return 0.5;
    }
    0.5 * (m0 / s).min(1.0)
}

/// Γ_inn-niceness of a single vertex face function: no zeros in `(ℂ*)²`.
pub fn vertex_nice(f_delta: &MixedPoly, tol: &Tolerances) -> Tri {
    let terms: Vec<(Complex64, i32, i32)> = f_delta
        .terms()
        .map(|(e, c)| (c.to_c64(), e[0] as i32 - e[1] as i32, e[2] as i32 - e[3] as i32))
        .collect();
    let (m, zero) = certified_min_abs(&terms, tol.max_boxes);
    if m > 0.0 {
        return Tri::yes(Method::TorusTrig);
    }
    match zero {
        Some((phi, t)) => {
            let (u, v) = (Complex64::from_polar(1.0, phi), Complex64::from_polar(1.0, t));
            let scale = f_delta.l1_norm().max(1e-300);
            if f_delta.evaluate(u, v).norm() / scale < tol.witness {
                Tri::no(Method::TorusTrig, Some(Witness::new(u, v)))
            } else {
                Tri::unknown(Method::TorusTrig)
            }
        }
        None => Tri::unknown(Method::TorusTrig),
    }
}

/// Which part of the origin's neighbourhood obstructs a radial bi-Lipschitz
/// trivialisation of a radially weighted homogeneous `f_P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ObstructionClass {
    #[serde(rename = "origin")]
    Origin,
    #[serde(rename = "u=0")]
    PlaneU0,
    #[serde(rename = "v=0")]
    PlaneV0,
}

pub fn obstruction_locus(f_radial: &MixedPoly, p: (i64, i64)) -> ObstructionClass {
    use std::cmp::Ordering::*;
    match p.0.cmp(&p.1) {
        Equal => ObstructionClass::Origin,
        Greater if f_radial.is_u_convenient() => ObstructionClass::Origin,
        Greater => ObstructionClass::PlaneV0,
        Less if f_radial.is_v_convenient() => ObstructionClass::Origin,
        Less => ObstructionClass::PlaneU0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn holomorphic_cases() {
        let f = parse("u^2 - v^3").unwrap();
        assert!(face_sing_empty(&f, Stratum::Torus, &t()).is_yes());
        let g = parse("(u - v)^2").unwrap();
        let r = face_sing_empty(&g, Stratum::Torus, &t());
        assert!(r.is_no());
        let w = r.witness.unwrap();
        assert!(g.evaluate(w.u(), w.v()).norm() < 1e-8);
        let h = parse("u^2*v^2").unwrap();
        assert!(face_sing_empty(&h, Stratum::VZero, &t()).is_no());
        let k = parse("u*v + u^3").unwrap();
        assert!(face_sing_empty(&k, Stratum::VZero, &t()).is_yes());
    }

    #[test]
    fn mixed_faces() {
        // |v|^4 − u^3 |v|^2: smooth on the torus, singular along v = 0
        let f = parse("v^2*~v^2 - u^3*v*~v").unwrap();
        assert!(face_sing_empty(&f, Stratum::Torus, &t()).is_yes());
        assert!(face_sing_empty(&f, Stratum::VZero, &t()).is_no());
        // |u|^2 − |v|^2 is real-valued: every zero is singular
        let g = parse("u*~u - v*~v").unwrap();
        let r = face_sing_empty(&g, Stratum::Torus, &t());
        assert!(r.is_no(), "{r:?}");
    }

    #[test]
    fn niceness() {
        assert!(vertex_nice(&parse("u*v").unwrap(), &t()).is_yes());
        let r = vertex_nice(&parse("u*v + ~u*v").unwrap(), &t());
        assert!(r.is_no());
        let w = r.witness.unwrap();
        assert!((w.u().arg().abs() - PI / 2.0).abs() < 1e-9);
        assert!(vertex_nice(&parse("2*u*v + ~u*v").unwrap(), &t()).is_yes());
    }
}
