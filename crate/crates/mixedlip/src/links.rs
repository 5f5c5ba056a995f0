//! Links of face functions on the weighted solid tori `ℂ×S¹` (u-side) and
//! `S¹×ℂ` (v-side).
//!
//! On the u-side a point is `(z, t)` with `v = e^{it}`, `u = z`; on the
//! v-side it is `(φ, w)` with `u = e^{iφ}`, `v = w`. For weight `k = p1/p2`
//! the two are related by `φ = arg z`, `w = |z|^{-1/k} e^{it}`.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::newton::{terms_on_line, GammaInnResult};
use crate::poly::{rescale, MixedPoly, Side, Var};
use crate::roots::aberth;

const TWO_PI: f64 = 2.0 * PI;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkOptions {
    pub grid: usize,
    /// Maximal local subdivision of one grid step during root matching.
    pub max_refine: usize,
}

impl Default for LinkOptions {
    fn default() -> Self {
        LinkOptions { grid: 1024, max_refine: 16 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinkError {
    #[error("face {face} has no {side}-side link (only faces with a compact representation there)")]
    InvalidSide { face: usize, side: &'static str },
    #[error("face index {0} out of range")]
    NoSuchFace(usize),
    #[error("grid size must be at least 64")]
    GridTooSmall,
    #[error("root tracking failed on face {face} near angle {angle:.6}: {reason}")]
    Tracking { face: usize, angle: f64, reason: String },
    #[error("curve tracing failed on face {face}: {reason}")]
    Tracing { face: usize, reason: String },
}

/// An arc of `S¹` on the grid `2π·j/G`: `len == G` is the full circle,
/// `len == 0` a single point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjArc {
    pub start: i64,
    pub len: i64,
    pub grid: i64,
}

impl Serialize for ProjArc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let step = TWO_PI / self.grid as f64;
        let mut st = s.serialize_struct("ProjArc", 3)?;
        st.serialize_field("start", &(self.start as f64 * step))?;
        st.serialize_field("end", &((self.start + self.len) as f64 * step))?;
        st.serialize_field("full", &self.is_full())?;
        st.end()
    }
}

impl ProjArc {
    pub fn full(grid: i64) -> Self {
        ProjArc { start: 0, len: grid, grid }
    }

    pub fn is_full(&self) -> bool {
        self.len >= self.grid
    }

    fn shifted(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (-1..=1).map(move |m| (self.start + m * self.grid, self.start + self.len + m * self.grid))
    }

    /// Closed arcs meet.
    pub fn meets(&self, o: &ProjArc) -> bool {
        if self.is_full() || o.is_full() {
            return true;
        }
        self.shifted().any(|(a, b)| o.start <= b && a <= o.start + o.len)
    }

    /// The open interior of `self` meets the closed arc `o`.
    pub fn interior_meets(&self, o: &ProjArc) -> bool {
        if self.is_full() {
            return true;
        }
        if self.len == 0 {
            return false;
        }
        if o.is_full() {
            return true;
        }
        self.shifted().any(|(a, b)| o.start < b && a < o.start + o.len)
    }

    pub fn contains_index(&self, j: i64) -> bool {
        self.meets(&ProjArc { start: j.rem_euclid(self.grid), len: 0, grid: self.grid })
    }
}

/// Union covers the circle.
pub fn arcs_cover_circle(arcs: &[ProjArc]) -> bool {
    let Some(g) = arcs.first().map(|a| a.grid) else {
        return false;
    };
    if arcs.iter().any(|a| a.is_full()) {
        return true;
    }
    let mut covered = vec![false; g as usize];
    for a in arcs {
        // cells between consecutive grid points
        for j in 0..a.len {
            covered[((a.start + j).rem_euclid(g)) as usize] = true;
        }
    }
    covered.iter().all(|&c| c)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub pos: [f64; 2],
    pub angle: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    /// Lies in `(ℂ*)²`.
    Torus,
    /// The circle `{u = 0} ∩ S³`.
    UAxis,
    /// The circle `{v = 0} ∩ S³`.
    VAxis,
}

/// Closed curve stored on one side as `(fibre point, unwrapped base angle)`.
#[derive(Clone, Debug, PartialEq)]
struct Curve {
    side: Side,
    pts: Vec<(Complex64, f64)>,
}

impl Curve {
    fn to_side(&self, side: Side, k: f64) -> Curve {
        if side == self.side {
            return self.clone();
        }
        let e = match self.side {
            Side::U => 1.0 / k,
            Side::V => k,
        };
        let mut out = Vec::with_capacity(self.pts.len());
        let mut prev: Option<f64> = None;
        for &(z, base) in &self.pts {
            let mut ang = z.arg();
            if let Some(p) = prev {
                ang = p + wrap_pi(ang - p);
            }
            prev = Some(ang);
            out.push((Complex64::from_polar(z.norm().powf(-e), base), ang));
        }
        Curve { side, pts: out }
    }
}

fn wrap_pi(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TWO_PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkComponent {
    #[serde(rename = "faceIndex")]
    pub face: usize,
    pub side: Side,
    pub kind: ComponentKind,
    /// Base angle is monotone along the component (a closed braid).
    pub braid: bool,
    #[serde(rename = "strandMultiplicity")]
    pub strand_multiplicity: usize,
    #[serde(rename = "projArcs")]
    pub proj_arcs: Vec<ProjArc>,
    #[serde(rename = "minAbs")]
    pub min_abs: f64,
    #[serde(rename = "maxAbs")]
    pub max_abs: f64,
    #[serde(skip)]
    pub samples: Vec<Sample>,
    #[serde(skip)]
    curve: CurveHolder,
}

#[derive(Clone, Debug, PartialEq, Default)]
struct CurveHolder(Option<Curve>);

impl LinkComponent {
    fn build(face: usize, kind: ComponentKind, curve: &Curve, side: Side, k: f64, grid: usize) -> Self {
        let c = curve.to_side(side, k);
        let n = c.pts.len();
        let (first, last) = (c.pts[0].1, c.pts[n - 1].1);
        let step = TWO_PI / grid as f64;
        // closed polyline: the last stored point precedes the first one
        let mut total = 0.0;
        let mut monotone_up = true;
        let mut monotone_down = true;
        for j in 0..n {
            let a = c.pts[j].1;
            let db = if j + 1 < n { c.pts[j + 1].1 - a } else { wrap_pi(first - last) };
            total += db;
            if db < -1e-12 {
                monotone_up = false;
            }
            if db > 1e-12 {
                monotone_down = false;
            }
        }
        let winding = (total / TWO_PI).round() as i64;
        let lo = c.pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let hi = c.pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let g = grid as i64;
        let arc = if winding != 0 || hi - lo >= TWO_PI - 0.5 * step {
            ProjArc::full(g)
        } else {
            let s = (lo / step).round() as i64;
            let e = (hi / step).round() as i64;
            ProjArc { start: s.rem_euclid(g), len: (e - s).min(g), grid: g }
        };
        let braid = winding != 0 && (monotone_up || monotone_down);
        let mult = match kind {
            ComponentKind::Torus => winding.unsigned_abs() as usize,
            _ => 1,
        };
        let samples = c
            .pts
            .iter()
            .map(|&(z, a)| Sample { pos: [z.re, z.im], angle: a.rem_euclid(TWO_PI) })
            .collect();
        let min_abs = c.pts.iter().map(|p| p.0.norm()).fold(f64::INFINITY, f64::min);
        let max_abs = c.pts.iter().map(|p| p.0.norm()).fold(0.0, f64::max);
        LinkComponent {
            face,
            side,
            kind,
            braid: braid || kind != ComponentKind::Torus,
            strand_multiplicity: mult.max(if kind == ComponentKind::Torus { 0 } else { 1 }),
            proj_arcs: vec![arc],
            min_abs,
            max_abs,
            samples,
            curve: CurveHolder(Some(curve.clone())),
        }
    }

    pub fn proj(&self) -> ProjArc {
        self.proj_arcs[0]
    }

    pub fn is_axis(&self) -> bool {
        self.kind != ComponentKind::Torus
    }

    /// Fibre positions where the component crosses base angle `a`
    /// (linear interpolation between samples).
    pub fn crossings(&self, a: f64) -> Vec<Complex64> {
        let s = &self.samples;
        let n = s.len();
        let mut out = Vec::new();
        for j in 0..n {
            let (p, q) = (s[j], s[(j + 1) % n]);
            let d0 = wrap_pi(p.angle - a);
            let d1 = wrap_pi(q.angle - a);
            if d0 == 0.0 {
                out.push(Complex64::new(p.pos[0], p.pos[1]));
            } else if d0 * d1 < 0.0 && (d0 - d1).abs() < PI {
                let t = d0 / (d0 - d1);
                let zp = Complex64::new(p.pos[0], p.pos[1]);
                let zq = Complex64::new(q.pos[0], q.pos[1]);
                out.push(zp + (zq - zp) * t);
            }
        }
        out
    }

    /// Representation on the requested side, if it exists.
    pub fn on_side(&self, side: Side, k: f64, grid: usize) -> Option<LinkComponent> {
        let ok = match (self.kind, side) {
            (ComponentKind::Torus, _) => true,
            (ComponentKind::UAxis, Side::U) | (ComponentKind::VAxis, Side::V) => true,
            _ => false,
        };
        ok.then(|| LinkComponent::build(self.face, self.kind, self.curve.0.as_ref().expect("curve"), side, k, grid))
    }

    /// Point of the face curve in `ℂ²` on the unit weighted sphere.
    pub fn points_c2(&self) -> Vec<(Complex64, Complex64)> {
        let c = self.curve.0.as_ref().expect("curve");
        c.pts
            .iter()
            .map(|&(z, a)| match c.side {
                Side::U => (z, Complex64::from_polar(1.0, a)),
                Side::V => (Complex64::from_polar(1.0, a), z),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceLink {
    pub face: usize,
    pub p: [i64; 2],
    pub k: String,
    #[serde(rename = "M")]
    pub m: usize,
    pub method: &'static str,
    pub components: Vec<LinkComponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl FaceLink {
    pub fn kf(&self) -> f64 {
        self.p[0] as f64 / self.p[1] as f64
    }
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkData {
    pub grid: usize,
    pub faces: Vec<FaceLink>,
    #[serde(rename = "axisKnots")]
    pub axis_knots: Vec<String>,
}

impl LinkData {
    pub fn components(&self) -> impl Iterator<Item = &LinkComponent> {
        self.faces.iter().flat_map(|f| f.components.iter())
    }
    pub fn all_ok(&self) -> bool {
        self.faces.iter().all(|f| f.ok())
    }
    pub fn face(&self, i: usize) -> Option<&FaceLink> {
        self.faces.get(i.wrapping_sub(1))
    }
}

/// Whether face `i` (1-based, of `n`) has a compact link on `side`.
pub fn side_valid(fp: &MixedPoly, i: usize, n: usize, side: Side) -> bool {
    match side {
        Side::U => i < n || fp.is_u_convenient(),
        Side::V => i > 1 || fp.is_v_convenient(),
    }
}

// ------------------------------------------------------------- tracking

struct Tracked {
    /// strands[j][m] = root j at angle 2πm/G, m = 0..=G
    strands: Vec<Vec<Complex64>>,
    perm: Vec<usize>,
}

fn min_sep(r: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..r.len() {
        for j in 0..i {
            m = m.min((r[i] - r[j]).norm());
        }
    }
    m
}

/// Nearest-neighbour matching `prev[j] → next[σ(j)]`, or `None` if it is not
/// a bijection within a quarter of the separation.
fn match_roots(prev: &[Complex64], next: &[Complex64]) -> Option<Vec<usize>> {
    let tol = if prev.len() > 1 { 0.25 * min_sep(prev) } else { f64::INFINITY };
    let mut used = vec![false; next.len()];
    let mut out = Vec::with_capacity(prev.len());
    for &p in prev {
        let (j, d) = next
            .iter()
            .enumerate()
            .map(|(j, &q)| (j, (q - p).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if used[j] || d > tol {
            return None;
        }
        used[j] = true;
        out.push(j);
    }
    Some(out)
}

fn track<F: Fn(f64) -> Vec<Complex64>>(coeffs: F, opts: &LinkOptions, face: usize) -> Result<Tracked, LinkError> {
    let g = opts.grid;
    let fail = |angle: f64, reason: &str| LinkError::Tracking { face, angle, reason: reason.to_string() };
    let start = aberth(&coeffs(0.0), None).map_err(|e| fail(0.0, &e.to_string()))?;
    let deg = start.len();
    let mut strands: Vec<Vec<Complex64>> = start.iter().map(|&r| vec![r]).collect();
    let mut cur = start.clone();
    let h = TWO_PI / g as f64;
    for m in 0..g {
        let t0 = m as f64 * h;
        let mut sub = 1;
        let next = loop {
            let mut roots = cur.clone();
            let mut ok = true;
            for s in 1..=sub {
                let t = t0 + h * s as f64 / sub as f64;
                let Ok(r) = aberth(&coeffs(t), Some(&roots)) else {
                    ok = false;
                    break;
                };
                match match_roots(&roots, &r) {
                    Some(sigma) => roots = sigma.iter().map(|&j| r[j]).collect(),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                break roots;
            }
            sub *= 2;
            if sub > opts.max_refine {
                return Err(fail(t0, "roots collide or escape"));
            }
        };
        for (j, r) in next.iter().enumerate() {
            strands[j].push(*r);
        }
        cur = next;
    }
    let perm = match_roots(&cur, &start).ok_or_else(|| fail(TWO_PI, "closure permutation is ambiguous"))?;
    debug_assert_eq!(perm.len(), deg);
    Ok(Tracked { strands, perm })
}

/// Strands of a slice that is polynomial in its fibre variable (or only in
/// its conjugate), tracked once around the base circle.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceBraid {
    /// Degree after removing the root at zero.
    pub degree: usize,
    /// `strands[j][m]` is strand `j` at base angle `2πm/grid`, `m = 0..=grid`.
    pub strands: Vec<Vec<Complex64>>,
    /// Closure permutation: strand `j` returns as strand `perm[j]`.
    pub perm: Vec<usize>,
    /// Number of cycles of `perm`, i.e. of link components.
    pub components: usize,
}

/// `None` if the slice of `fp` on `side` is not polynomial in the fibre.
pub fn slice_braid(fp: &MixedPoly, p: (i64, i64), side: Side, opts: &LinkOptions) -> Result<Option<SliceBraid>, LinkError> {
    let Some(terms) = slice_poly(fp, p, side) else { return Ok(None) };
    let tr = track(|a| eval_coeffs(&terms, a), opts, 0)?;
    let components = cycles(&tr, side).len();
    Ok(Some(SliceBraid { degree: tr.strands.len(), strands: tr.strands, perm: tr.perm, components }))
}

/// Components from tracked strands: cycles of the closure permutation.
fn cycles(tr: &Tracked, side: Side) -> Vec<(Curve, usize)> {
    let n = tr.strands.len();
    let g = tr.strands.first().map_or(0, |s| s.len() - 1);
    let h = TWO_PI / g.max(1) as f64;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for j0 in 0..n {
        if seen[j0] {
            continue;
        }
        let mut pts = Vec::new();
        let mut j = j0;
        let mut lap = 0;
        loop {
            seen[j] = true;
            for m in 0..g {
                let z = tr.strands[j][m];
                pts.push((z, (lap * g + m) as f64 * h));
            }
            lap += 1;
            j = tr.perm[j];
            if j == j0 {
                break;
            }
        }
        out.push((Curve { side, pts }, lap));
    }
    out
}

/// Coefficient function of the slice polynomial in the fibre variable
/// (or its conjugate), with zero roots removed.
///
/// A slice in `z̄` alone is conjugated: `Σ c z̄^b e^{iβθ} = 0` iff
/// `Σ c̄ z^b e^{-iβθ} = 0`, so roots come out directly in `z`.
fn slice_poly(fp: &MixedPoly, p: (i64, i64), side: Side) -> Option<Vec<(usize, Complex64, i64)>> {
    let s = rescale(fp, p, side);
    let conj = if s.terms.iter().all(|t| t.b == 0) {
        false
    } else if s.terms.iter().all(|t| t.a == 0) {
        true
    } else {
        return None;
    };
    let deg_of = |t: &crate::poly::SliceTerm| if conj { t.b } else { t.a } as usize;
    let low = s.terms.iter().map(deg_of).min().unwrap_or(0);
    let terms = s
        .terms
        .iter()
        .map(|t| {
            let c = if conj { t.coeff.to_c64().conj() } else { t.coeff.to_c64() };
            // conjugating the whole equation flips the angle frequency
            (deg_of(t) - low, c, if conj { -t.beta } else { t.beta })
        })
        .collect();
    Some(terms)
}

fn eval_coeffs(terms: &[(usize, Complex64, i64)], angle: f64) -> Vec<Complex64> {
    let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut c = vec![Complex64::new(0.0, 0.0); deg + 1];
    for &(n, a, beta) in terms {
        c[n] += a * Complex64::from_polar(1.0, beta as f64 * angle);
    }
    c
}

// -------------------------------------------------------------- tracing

/// Curves of `V(f) ∩ S³ ∩ (ℂ*)²` by pseudo-arclength continuation.
fn trace_s3(fp: &MixedPoly, grid: usize, face: usize) -> Result<Vec<Vec<[f64; 4]>>, LinkError> {
    let scale = fp.terms().map(|(_, c)| c.abs_f64()).fold(0.0, f64::max);
    let fu = fp.wirtinger(Var::U);
    let fub = fp.wirtinger(Var::UBar);
    let fv = fp.wirtinger(Var::V);
    let fvb = fp.wirtinger(Var::VBar);
    let cx = |x: &[f64; 4]| (Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3]));
    let value = |x: &[f64; 4]| -> [f64; 3] {
        let (u, v) = cx(x);
        let f = fp.evaluate(u, v) / scale;
        [f.re, f.im, x.iter().map(|a| a * a).sum::<f64>() - 1.0]
    };
    let jac = |x: &[f64; 4]| -> [[f64; 4]; 3] {
        let (u, v) = cx(x);
        let (a, b, c, d) = (fu.evaluate(u, v), fub.evaluate(u, v), fv.evaluate(u, v), fvb.evaluate(u, v));
        let i = Complex64::new(0.0, 1.0);
        let cols = [(a + b) / scale, i * (a - b) / scale, (c + d) / scale, i * (c - d) / scale];
        [
            [cols[0].re, cols[1].re, cols[2].re, cols[3].re],
            [cols[0].im, cols[1].im, cols[2].im, cols[3].im],
            [2.0 * x[0], 2.0 * x[1], 2.0 * x[2], 2.0 * x[3]],
        ]
    };
    let newton = |mut x: [f64; 4]| -> Option<[f64; 4]> {
        for _ in 0..40 {
            let f = value(&x);
            let nf = f.iter().map(|a| a.abs()).fold(0.0, f64::max);
            if nf < 1e-13 {
                return Some(x);
            }
            let j = jac(&x);
            // minimum-norm step: Δ = −Jᵀ (J Jᵀ)⁻¹ F
            let mut m = vec![vec![0.0; 4]; 3];
            for r in 0..3 {
                for s in 0..3 {
                    m[r][s] = (0..4).map(|c| j[r][c] * j[s][c]).sum();
                }
                m[r][3] = -f[r];
            }
            let y = crate::nondegen::solve_dense(m)?;
            let mut step = 0.0;
            for c in 0..4 {
                let d: f64 = (0..3).map(|r| j[r][c] * y[r]).sum();
                x[c] += d;
                step += d * d;
            }
            if step.sqrt() > 0.5 {
                return None;
            }
        }
        let f = value(&x);
        (f.iter().map(|a| a.abs()).fold(0.0, f64::max) < 1e-10).then_some(x)
    };
    let tangent = |x: &[f64; 4]| -> [f64; 4] {
        let j = jac(x);
        let det3 = |c: [usize; 3]| {
            let m = |r: usize, k: usize| j[r][c[k]];
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        };
        let t = [det3([1, 2, 3]), -det3([0, 2, 3]), det3([0, 1, 3]), -det3([0, 1, 2])];
        let n = t.iter().map(|a| a * a).sum::<f64>().sqrt();
        if n == 0.0 {
            t
        } else {
            [t[0] / n, t[1] / n, t[2] / n, t[3] / n]
        }
    };
    let near_axis = |x: &[f64; 4]| x[0].hypot(x[1]) < 1e-6 || x[2].hypot(x[3]) < 1e-6;

    let h0 = (TWO_PI / grid as f64).min(0.02);
    let cell = 0.05;
    let key = |x: &[f64; 4]| -> [i64; 4] { [0, 1, 2, 3].map(|c| (x[c] / cell).floor() as i64) };
    let mut hash: HashMap<[i64; 4], Vec<[f64; 4]>> = HashMap::new();
    let near_traced = |hash: &HashMap<[i64; 4], Vec<[f64; 4]>>, x: &[f64; 4], r: f64| -> bool {
        let k = key(x);
        for d0 in -1..=1 {
            for d1 in -1..=1 {
                for d2 in -1..=1 {
                    for d3 in -1..=1 {
                        if let Some(v) = hash.get(&[k[0] + d0, k[1] + d1, k[2] + d2, k[3] + d3]) {
                            if v.iter().any(|y| (0..4).map(|c| (x[c] - y[c]).powi(2)).sum::<f64>() < r * r) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    };

    // seeds: local minima of |f| on a Hopf-coordinate grid
    let (ne, na) = (24usize, 48usize);
    let pt = |ie: usize, ia: usize, ib: usize| -> [f64; 4] {
        let eta = (ie as f64 + 0.5) / ne as f64 * PI / 2.0;
        let (a, b) = (ia as f64 / na as f64 * TWO_PI, ib as f64 / na as f64 * TWO_PI);
        [eta.cos() * a.cos(), eta.cos() * a.sin(), eta.sin() * b.cos(), eta.sin() * b.sin()]
    };
    let mut vals = vec![0.0; ne * na * na];
    for ie in 0..ne {
        for ia in 0..na {
            for ib in 0..na {
                let x = pt(ie, ia, ib);
                let (u, v) = cx(&x);
                vals[(ie * na + ia) * na + ib] = fp.evaluate(u, v).norm() / scale;
            }
        }
    }
    let idx = |ie: usize, ia: usize, ib: usize| (ie * na + ia % na) * na + ib % na;
    let mut seeds = Vec::new();
    for ie in 0..ne {
        for ia in 0..na {
            for ib in 0..na {
                let v0 = vals[idx(ie, ia, ib)];
                let mut is_min = true;
                for (de, da, db) in [(-1i64, 0i64, 0i64), (1, 0, 0), (0, -1, 0), (0, 1, 0), (0, 0, -1), (0, 0, 1)] {
                    let e = ie as i64 + de;
                    if e < 0 || e >= ne as i64 {
                        continue;
                    }
                    let w = vals[idx(e as usize, (ia as i64 + da + na as i64) as usize, (ib as i64 + db + na as i64) as usize)];
                    if w < v0 {
                        is_min = false;
                        break;
                    }
                }
                if is_min {
                    seeds.push((v0, pt(ie, ia, ib)));
                }
            }
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut curves = Vec::new();
    for (_, s) in seeds {
        let Some(x0) = newton(s) else { continue };
        if near_axis(&x0) || near_traced(&hash, &x0, 4.0 * h0) {
            continue;
        }
        let mut pts = vec![x0];
        let mut x = x0;
        let mut t = tangent(&x);
        let mut h = h0;
        let mut closed = false;
        for _ in 0..200_000 {
            let pred = [x[0] + h * t[0], x[1] + h * t[1], x[2] + h * t[2], x[3] + h * t[3]];
            match newton(pred) {
                Some(y) if (0..4).map(|c| (y[c] - x[c]).powi(2)).sum::<f64>().sqrt() < 2.0 * h => {
                    let mut tn = tangent(&y);
                    if (0..4).map(|c| tn[c] * t[c]).sum::<f64>() < 0.0 {
                        tn = tn.map(|a| -a);
                    }
                    if (0..4).map(|c| tn[c] * t[c]).sum::<f64>() < 0.9 && h > 1e-6 {
                        h *= 0.5;
                        continue;
                    }
                    x = y;
                    t = tn;
                    if near_axis(&x) {
                        return Err(LinkError::Tracing { face, reason: "curve reaches a coordinate axis".into() });
                    }
                    let back = (0..4).map(|c| (x[c] - x0[c]).powi(2)).sum::<f64>().sqrt();
                    if pts.len() > 8 && back < 0.75 * h0 {
                        closed = true;
                        break;
                    }
                    pts.push(x);
                    h = (h * 1.5).min(h0);
                }
                _ => {
                    h *= 0.5;
                    if h < 1e-9 {
                        return Err(LinkError::Tracing { face, reason: "step size underflow".into() });
                    }
                }
            }
        }
        if !closed {
            return Err(LinkError::Tracing { face, reason: "curve did not close".into() });
        }
        for p in &pts {
            hash.entry(key(p)).or_default().push(*p);
        }
        curves.push(pts);
    }
    Ok(curves)
}

/// S³ point → u-side `(z, t)`.
fn s3_to_u(x: &[f64; 4], k: f64) -> (Complex64, f64) {
    let u = Complex64::new(x[0], x[1]);
    let v = Complex64::new(x[2], x[3]);
    (u / v.norm().powf(k), v.arg())
}

fn unwrap_curve(side: Side, raw: Vec<(Complex64, f64)>) -> Curve {
    let mut pts = Vec::with_capacity(raw.len());
    let mut prev: Option<f64> = None;
    for (z, a) in raw {
        let a = match prev {
            Some(p) => p + wrap_pi(a - p),
            None => a,
        };
        prev = Some(a);
        pts.push((z, a));
    }
    Curve { side, pts }
}

// -------------------------------------------------------------- assembly

fn axis_curve(side: Side, grid: usize) -> Curve {
    let h = TWO_PI / grid as f64;
    Curve { side, pts: (0..grid).map(|m| (Complex64::new(0.0, 0.0), m as f64 * h)).collect() }
}

/// Natural side of a torus component of a face with slope ratio `k`.
fn natural_side(k: f64, fp: &MixedPoly, i: usize, n: usize) -> Side {
    if k < 1.0 || (k == 1.0 && !side_valid(fp, i, n, Side::U)) {
        Side::V
    } else {
        Side::U
    }
}

/// All components of the face link `L_{P_i}`: torus part plus the axis
/// circles that belong to the first/last face.
pub fn face_link(f: &MixedPoly, gi: &GammaInnResult, i: usize, opts: &LinkOptions) -> Result<FaceLink, LinkError> {
    let dg = &gi.diagram;
    let n = dg.n_faces();
    if i == 0 || i > n {
        return Err(LinkError::NoSuchFace(i));
    }
    if opts.grid < 64 {
        return Err(LinkError::GridTooSmall);
    }
    let e = &dg.edges[i - 1];
    let p = e.p;
    let k = p.0 as f64 / p.1 as f64;
    let fp = terms_on_line(f, p, e.d);
    let mut comps: Vec<(ComponentKind, Curve)> = Vec::new();
    let has_x0 = fp.terms().any(|(e, _)| e[0] + e[1] == 0);
    let has_y0 = fp.terms().any(|(e, _)| e[2] + e[3] == 0);
    if i == 1 && !has_x0 {
        comps.push((ComponentKind::UAxis, axis_curve(Side::U, opts.grid)));
    }
    if i == n && !has_y0 {
        comps.push((ComponentKind::VAxis, axis_curve(Side::V, opts.grid)));
    }
    let method;
    let mut torus: Vec<Curve> = Vec::new();
    let sides = [Side::U, Side::V];
    let poly_side = sides.iter().copied().find_map(|s| slice_poly(&fp, p, s).map(|sp| (s, sp)));
    match poly_side {
        Some((side, terms)) => {
            method = match side {
                Side::U => "track-u",
                Side::V => "track-v",
            };
            let tr = track(|a| eval_coeffs(&terms, a), opts, i)?;
            torus.extend(cycles(&tr, side).into_iter().map(|(c, _)| c));
        }
        None => {
            method = "trace-s3";
            for raw in trace_s3(&fp, opts.grid, i)? {
                let pts: Vec<(Complex64, f64)> = raw.iter().map(|x| s3_to_u(x, k)).collect();
                torus.push(unwrap_curve(Side::U, pts));
            }
        }
    }
    comps.extend(torus.into_iter().map(|c| (ComponentKind::Torus, c)));
    let nat = natural_side(k, &fp, i, n);
    let mut components: Vec<LinkComponent> = comps
        .iter()
        .map(|(kind, c)| {
            let side = match kind {
                ComponentKind::UAxis => Side::U,
                ComponentKind::VAxis => Side::V,
                ComponentKind::Torus => nat,
            };
            LinkComponent::build(i, *kind, c, side, k, opts.grid)
        })
        .collect();
    sort_components(&mut components);
    Ok(FaceLink { face: i, p: [p.0, p.1], k: format!("{}/{}", p.0, p.1), m: components.len(), method, components, error: None })
}

/// Deterministic order: axis circles first, then by where each component
/// crosses base angle 0.
fn sort_components(c: &mut [LinkComponent]) {
    let key = |x: &LinkComponent| {
        let kind = match x.kind {
            ComponentKind::UAxis => 0,
            ComponentKind::VAxis => 1,
            ComponentKind::Torus => 2,
        };
        let s = x.samples.iter().min_by(|a, b| a.angle.total_cmp(&b.angle)).expect("samples");
        let arg = Complex64::new(s.pos[0], s.pos[1]).arg().rem_euclid(TWO_PI);
        let arg = if arg > TWO_PI - 1e-9 { 0.0 } else { arg };
        (kind, x.proj().start, (arg * 1e6).round() as i64, (s.pos[0].hypot(s.pos[1]) * 1e6).round() as i64)
    };
    c.sort_by_key(key);
}

/// The link of face `i` on the requested side.
pub fn compute_link(f: &MixedPoly, gi: &GammaInnResult, i: usize, side: Side, opts: &LinkOptions) -> Result<Vec<LinkComponent>, LinkError> {
    let dg = &gi.diagram;
    let n = dg.n_faces();
    if i == 0 || i > n {
        return Err(LinkError::NoSuchFace(i));
    }
    let e = &dg.edges[i - 1];
    let fp = terms_on_line(f, e.p, e.d);
    let valid = side_valid(&fp, i, n, side);
    let fl = face_link(f, gi, i, opts)?;
    let k = fl.kf();
    // torus components need not be compact on an invalid side; the axis
    // circle of that side still is
    let mut out: Vec<LinkComponent> = fl
        .components
        .iter()
        .filter(|c| valid || c.kind != ComponentKind::Torus)
        .filter_map(|c| c.on_side(side, k, opts.grid))
        .collect();
    if !valid && out.is_empty() {
        return Err(LinkError::InvalidSide { face: i, side: side.as_str() });
    }
    sort_components(&mut out);
    Ok(out)
}

/// Links of every face (failures are recorded per face, not fatal).
pub fn link_data(f: &MixedPoly, gi: &GammaInnResult, opts: &LinkOptions) -> LinkData {
    let n = gi.diagram.n_faces();
    let faces: Vec<FaceLink> = (1..=n)
        .into_par_iter()
        .map(|i| {
            face_link(f, gi, i, opts).unwrap_or_else(|e| {
                let p = gi.diagram.edges[i - 1].p;
                FaceLink { face: i, p: [p.0, p.1], k: format!("{}/{}", p.0, p.1), m: 0, method: "failed", components: Vec::new(), error: Some(e.to_string()) }
            })
        })
        .collect();
    let mut axis_knots = Vec::new();
    for c in faces.iter().flat_map(|f| f.components.iter()) {
        match c.kind {
            ComponentKind::UAxis => axis_knots.push(format!("u=0 (face {})", c.face)),
            ComponentKind::VAxis => axis_knots.push(format!("v=0 (face {})", c.face)),
            ComponentKind::Torus => {}
        }
    }
    LinkData { grid: opts.grid, faces, axis_knots }
}

/// `I_f`: faces whose link `L_{P_i}` is nonempty.
pub fn gamma_true(ld: &LinkData) -> Vec<usize> {
    ld.faces.iter().filter(|f| !f.components.is_empty()).map(|f| f.face).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arcs() {
        let g = 64;
        let a = ProjArc { start: 0, len: 10, grid: g };
        let b = ProjArc { start: 10, len: 5, grid: g };
        assert!(a.meets(&b));
        assert!(!a.interior_meets(&b) && !b.interior_meets(&a));
        let c = ProjArc { start: 60, len: 8, grid: g };
        assert!(c.interior_meets(&a));
        let pt = ProjArc { start: 3, len: 0, grid: g };
        assert!(pt.meets(&a) && !pt.interior_meets(&a) && a.interior_meets(&pt));
        assert!(arcs_cover_circle(&[ProjArc { start: 0, len: 40, grid: g }, ProjArc { start: 40, len: 24, grid: g }]));
        assert!(!arcs_cover_circle(&[ProjArc { start: 0, len: 40, grid: g }]));
    }
}
