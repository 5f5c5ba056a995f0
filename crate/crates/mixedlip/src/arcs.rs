//! Numeric arc oracle: real half-branches of `V(f)` continued towards the
//! origin, and log–log estimates of their orders of tangency. Independent
//! of the exact contact criterion, so the two can be cross-checked.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::links::{compute_link, LinkComponent, LinkError, LinkOptions};
use crate::newton::GammaInnResult;
use crate::nondegen::solve_dense;
use crate::poly::{MixedPoly, Side, Var};

/// `FACE:SIDE:IDX`, indexing the components returned by
/// [`compute_link`] for that face and side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRef {
    pub face: usize,
    pub side: Side,
    pub index: usize,
}

impl FromStr for ComponentRef {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("component reference {s:?} is not FACE:SIDE:IDX");
        if parts.len() != 3 {
            return Err(bad());
        }
        let side = match parts[1] {
            "u" | "U" => Side::U,
            "v" | "V" => Side::V,
            _ => return Err(bad()),
        };
        Ok(ComponentRef { face: parts[0].parse().map_err(|_| bad())?, side, index: parts[2].parse().map_err(|_| bad())? })
    }
}

impl std::fmt::Display for ComponentRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.face, self.side.as_str(), self.index)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Radii(pub Vec<f64>);

impl Radii {
    /// `n` geometric steps from `a` down to `b`.
    pub fn geometric(a: f64, b: f64, n: usize) -> Self {
        let (a, b) = (a.max(b), a.min(b));
        let n = n.max(2);
        Radii((0..n).map(|j| a * (b / a).powf(j as f64 / (n - 1) as f64)).collect())
    }
}

impl Default for Radii {
    fn default() -> Self {
        Radii::geometric(1e-1, 1e-4, 40)
    }
}

impl FromStr for Radii {
    type Err = String;
    /// `a:b:n`
    fn from_str(s: &str) -> Result<Self, String> {
        let p: Vec<&str> = s.split(':').collect();
        let bad = || format!("radii {s:?} is not a:b:n");
        if p.len() != 3 {
            return Err(bad());
        }
        let a: f64 = p[0].parse().map_err(|_| bad())?;
        let b: f64 = p[1].parse().map_err(|_| bad())?;
        let n: usize = p[2].parse().map_err(|_| bad())?;
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) || n < 2 {
            return Err(bad());
        }
        Ok(Radii::geometric(a, b, n))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Arc {
    pub component: ComponentRef,
    /// Base angle held fixed along the arc.
    pub angle: f64,
    /// Modulus of the fixed coordinate, decreasing.
    pub radii: Vec<f64>,
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<(Complex64, Complex64)>,
    pub residuals: Vec<f64>,
}

fn ser_points<S: Serializer>(p: &[(Complex64, Complex64)], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<[f64; 4]> = p.iter().map(|(u, v)| [u.re, u.im, v.re, v.im]).collect();
    v.serialize(s)
}

/// Accepted relative residual of an arc point.
pub const RESIDUAL: f64 = 1e-10;

/// `Σ |c| |monomial|`, the natural scale of `f` at a point.
fn scale(f: &MixedPoly, u: Complex64, v: Complex64) -> f64 {
    let (au, av) = (u.norm(), v.norm());
    f.terms().map(|(e, c)| c.abs_f64() * au.powi((e[0] + e[1]) as i32) * av.powi((e[2] + e[3]) as i32)).sum()
}

/// Damped minimum-norm Newton for one complex unknown `z` of a real-analytic
/// equation `g(z, z̄) = 0`; `eval` returns `(g, ∂g/∂z, ∂g/∂z̄)`. The
/// minimum-norm step keeps the iterate near the seed when the zero set is
/// a curve rather than a point.
pub(crate) fn newton_min_norm(eval: impl Fn(Complex64) -> (Complex64, Complex64, Complex64), mut z: Complex64, stop: impl Fn(Complex64, Complex64) -> bool) -> Complex64 {
    for _ in 0..60 {
        let (g, gz, gzb) = eval(z);
        if stop(z, g) {
            break;
        }
        let jx = gz + gzb;
        let jy = Complex64::i() * (gz - gzb);
        let m = [[jx.re, jy.re], [jx.im, jy.im]];
        let a = m[0][0] * m[0][0] + m[0][1] * m[0][1];
        let b = m[0][0] * m[1][0] + m[0][1] * m[1][1];
        let d = m[1][0] * m[1][0] + m[1][1] * m[1][1];
        let damp = 1e-14 * (a + d) + 1e-300;
        let Some(y) = solve_dense(vec![vec![a + damp, b, -g.re], vec![b, d + damp, -g.im]]) else {
            break;
        };
        let step = Complex64::new(m[0][0] * y[0] + m[1][0] * y[1], m[0][1] * y[0] + m[1][1] * y[1]);
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z += step;
    }
    z
}

/// Newton solves on `V(f)` with one coordinate fixed to `r e^{iα}`. The
/// base angle `α` starts at the arc's angle and is only released when no
/// solution exists at that angle (components whose angle drifts with `r`).
struct Continuation<'a> {
    f: &'a MixedPoly,
    /// Derivatives in the solved variable, its conjugate, the fixed variable
    /// and its conjugate.
    d: [MixedPoly; 4],
    side: Side,
    /// Growth exponent of the solved coordinate in `r`.
    expo: f64,
}

/// Point of an arc under construction: radius, solved coordinate, angle.
type State = (f64, Complex64, f64);

impl<'a> Continuation<'a> {
    fn new(f: &'a MixedPoly, side: Side, k: f64) -> Self {
        let (vars, expo) = match side {
            Side::U => ([Var::U, Var::UBar, Var::V, Var::VBar], k),
            Side::V => ([Var::V, Var::VBar, Var::U, Var::UBar], 1.0 / k),
        };
        Continuation { f, d: vars.map(|x| f.wirtinger(x)), side, expo }
    }

    fn point(&self, r: f64, angle: f64, x: Complex64) -> (Complex64, Complex64) {
        let fixed = Complex64::from_polar(r, angle);
        match self.side {
            Side::U => (x, fixed),
            Side::V => (fixed, x),
        }
    }

    fn residual(&self, r: f64, angle: f64, x: Complex64) -> f64 {
        let (u, v) = self.point(r, angle, x);
        self.f.evaluate(u, v).norm() / scale(self.f, u, v).max(f64::MIN_POSITIVE)
    }

    /// Solved coordinate, angle and relative residual at radius `r`.
    fn solve(&self, r: f64, seed: Complex64, angle: f64) -> (Complex64, f64, f64) {
        let f = self.f;
        let eval = |x: Complex64| {
            let (u, v) = self.point(r, angle, x);
            (f.evaluate(u, v), self.d[0].evaluate(u, v), self.d[1].evaluate(u, v))
        };
        let stop = |x: Complex64, g: Complex64| {
            let (u, v) = self.point(r, angle, x);
            g.norm() <= 1e-15 * scale(f, u, v)
        };
        let x = newton_min_norm(eval, seed, stop);
        let res = self.residual(r, angle, x);
        if res < RESIDUAL {
            return (x, angle, res);
        }
        let (x, angle) = self.solve_free(r, seed, angle);
        (x, angle, self.residual(r, angle, x))
    }

    /// Minimum-norm Newton in `(x, r·α)`: two real equations, three unknowns.
    fn solve_free(&self, r: f64, mut x: Complex64, mut angle: f64) -> (Complex64, f64) {
        let i = Complex64::i();
        for _ in 0..60 {
            let (u, v) = self.point(r, angle, x);
            let g = self.f.evaluate(u, v);
            if g.norm() <= 1e-15 * scale(self.f, u, v) {
                break;
            }
            let [gx, gxb, gy, gyb] = [0, 1, 2, 3].map(|j| self.d[j].evaluate(u, v));
            let y = Complex64::from_polar(r, angle);
            let cols = [gx + gxb, i * (gx - gxb), (gy * i * y - gyb * i * y.conj()) / r];
            let jjt = |a: usize, b: usize| -> f64 {
                cols.iter().map(|c| [c.re, c.im][a] * [c.re, c.im][b]).sum()
            };
            let (a, b, d) = (jjt(0, 0), jjt(0, 1), jjt(1, 1));
            let damp = 1e-14 * (a + d) + 1e-300;
            let Some(w) = solve_dense(vec![vec![a + damp, b, -g.re], vec![b, d + damp, -g.im]]) else {
                break;
            };
            let step: Vec<f64> = cols.iter().map(|c| c.re * w[0] + c.im * w[1]).collect();
            if step.iter().any(|s| !s.is_finite()) {
                break;
            }
            x += Complex64::new(step[0], step[1]);
            angle += step[2] / r;
        }
        (x, angle)
    }

    fn seed(&self, prev: Option<State>, z0: Complex64, r: f64) -> Complex64 {
        match prev {
            None => z0 * r.powf(self.expo),
            Some((rp, xp, _)) => xp * (r / rp).powf(self.expo),
        }
    }
}

/// Continue the weighted arc through `z0` (a point of the face link at base
/// angle `angle`) on `V(f)`. On the u-side the fixed coordinate is
/// `v = r e^{i angle}` and `u` is solved for; on the v-side the roles swap.
pub fn sample_arc(f: &MixedPoly, component: ComponentRef, k: f64, angle: f64, z0: Complex64, radii: &Radii) -> Arc {
    let c = Continuation::new(f, component.side, k);
    let mut arc = Arc { component, angle, radii: Vec::new(), points: Vec::new(), residuals: Vec::new() };
    let mut prev: Option<State> = None;
    for &r in &radii.0 {
        let a0 = prev.map_or(angle, |p| p.2);
        let (x, a, res) = c.solve(r, c.seed(prev, z0, r), a0);
        if !(res < RESIDUAL) {
            break;
        }
        arc.radii.push(r);
        arc.points.push(c.point(r, a, x));
        arc.residuals.push(res);
        prev = Some((r, x, a));
    }
    arc
}

/// Like [`sample_arc`], but the radii are chosen so that the `j`-th point
/// has Euclidean norm `norms[j]`: the arcs then meet the same spheres.
pub fn sample_arc_at_norms(f: &MixedPoly, component: ComponentRef, k: f64, angle: f64, z0: Complex64, norms: &[f64]) -> Arc {
    let c = Continuation::new(f, component.side, k);
    let mut arc = Arc { component, angle, radii: Vec::new(), points: Vec::new(), residuals: Vec::new() };
    let mut prev: Option<State> = None;
    'outer: for &t in norms {
        // secant iteration on log r ↦ log ‖point‖
        let mut r = match prev {
            None => t.min(t.powf(1.0 / c.expo.max(1e-3))),
            Some((rp, _, _)) => rp * (t / arc.points.last().map_or(t, |p| norm(*p))).powf(1.0 / c.expo.min(1.0)),
        };
        let a0 = prev.map_or(angle, |p| p.2);
        let mut last: Option<(f64, f64)> = None;
        let mut sol = None;
        for _ in 0..40 {
            let (x, a, res) = c.solve(r, c.seed(prev, z0, r), a0);
            if !(res < RESIDUAL) {
                break 'outer;
            }
            let err = (norm(c.point(r, a, x)) / t).ln();
            sol = Some((r, x, a, res));
            if err.abs() <= 1e-13 {
                break;
            }
            let slope = match last {
                Some((lr, le)) if (r.ln() - lr).abs() > 1e-15 => ((err - le) / (r.ln() - lr)).clamp(0.05, 20.0),
                _ => c.expo.min(1.0),
            };
            last = Some((r.ln(), err));
            r *= (-err / slope).exp();
        }
        let Some((r, x, a, res)) = sol else { break };
        let p = c.point(r, a, x);
        if (norm(p) / t - 1.0).abs() > 1e-9 {
            break;
        }
        arc.radii.push(r);
        arc.points.push(p);
        arc.residuals.push(res);
        prev = Some((r, x, a));
    }
    arc
}

#[derive(Clone, Debug, PartialEq)]
pub struct TordEstimate {
    /// `f64::INFINITY` for identical arcs.
    pub q_hat: f64,
    pub stderr: f64,
    pub n_points: usize,
}

impl Serialize for TordEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TordEstimate", 3)?;
        if self.q_hat.is_finite() {
            st.serialize_field("q_hat", &self.q_hat)?;
        } else {
            st.serialize_field("q_hat", "inf")?;
        }
        st.serialize_field("stderr", &self.stderr)?;
        st.serialize_field("nPoints", &self.n_points)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("too few usable radii ({0}); need at least 10")]
    TooFewPoints(usize),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error("no component {0}")]
    NoComponent(ComponentRef),
}

fn dist(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    ((a.0 - b.0).norm_sqr() + (a.1 - b.1).norm_sqr()).sqrt()
}

fn norm(a: (Complex64, Complex64)) -> f64 {
    (a.0.norm_sqr() + a.1.norm_sqr()).sqrt()
}

/// `(ρ, ‖a − b‖)` over pairs of points on a common sphere `‖·‖ = ρ`; arcs
/// sampled on a shared radius schedule instead pair by radius, with `ρ` the
/// mean norm of the pair.
pub fn distances(a: &Arc, b: &Arc) -> Vec<(f64, f64)> {
    let same_sphere = |pa: &(Complex64, Complex64), pb: &(Complex64, Complex64)| (norm(*pa) - norm(*pb)).abs() <= 1e-9 * norm(*pa);
    let matched = !a.points.is_empty() && !b.points.is_empty() && a.points.iter().zip(&b.points).all(|(x, y)| same_sphere(x, y));
    if matched {
        return a.points.iter().zip(&b.points).map(|(pa, pb)| (norm(*pa), dist(*pa, *pb))).collect();
    }
    a.radii
        .iter()
        .zip(&a.points)
        .filter_map(|(r, pa)| {
            let j = b.radii.iter().position(|rb| (rb - r).abs() <= 1e-12 * r)?;
            let pb = b.points[j];
            Some((0.5 * (norm(*pa) + norm(pb)), dist(*pa, pb)))
        })
        .collect()
}

/// Least-squares slope of `log ‖a − b‖` against `log ρ`, dropping the two
/// largest radii.
pub fn estimate_tord(a: &Arc, b: &Arc) -> Result<TordEstimate, OracleError> {
    let d = distances(a, b);
    if d.iter().any(|&(_, x)| x < 1e-13) && d.iter().all(|&(rho, x)| x < 1e-13 * rho.max(1.0)) {
        return Ok(TordEstimate { q_hat: f64::INFINITY, stderr: 0.0, n_points: d.len() });
    }
    let pts: Vec<(f64, f64)> = d.iter().skip(2).filter(|&&(_, x)| x > 0.0).map(|&(r, x)| (r.ln(), x.ln())).collect();
    let n = pts.len();
    if n < 10 {
        return Err(OracleError::TooFewPoints(n));
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let sse: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    let stderr = (sse / (nf - 2.0) / sxx).sqrt();
    Ok(TordEstimate { q_hat: slope, stderr, n_points: n })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairEstimate {
    pub angle: [f64; 2],
    pub estimate: TordEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContactEstimate {
    pub a: ComponentRef,
    pub b: ComponentRef,
    /// Maximum over the sampled pairs.
    pub estimate: TordEstimate,
    pub pairs: Vec<PairEstimate>,
    #[serde(skip)]
    pub arcs: Vec<(Arc, Arc)>,
}

impl ContactEstimate {
    /// `pair,r,distance` rows for external plotting.
    pub fn csv(&self) -> String {
        let mut s = String::from("pair,rho,distance\n");
        for (j, (a, b)) in self.arcs.iter().enumerate() {
            for (rho, d) in distances(a, b) {
                let _ = writeln!(s, "{j},{rho:.17e},{d:.17e}");
            }
        }
        s
    }
}

fn fetch(f: &MixedPoly, gi: &GammaInnResult, r: ComponentRef, opts: &LinkOptions) -> Result<(LinkComponent, f64), OracleError> {
    let comps = compute_link(f, gi, r.face, r.side, opts)?;
    let c = comps.into_iter().nth(r.index).ok_or(OracleError::NoComponent(r))?;
    let p = gi.diagram.edges[r.face - 1].p;
    Ok((c, p.0 as f64 / p.1 as f64))
}

/// Matched-angle estimate of the contact between two components: arcs of
/// the first component at `n_pairs` sample angles, each paired with the arc
/// of the second at the same angle (nearest angle when it does not reach
/// it) and the closest fibre point, the second arc sampled on the spheres
/// of the first.
pub fn estimate_contact(
    f: &MixedPoly,
    gi: &GammaInnResult,
    a: ComponentRef,
    b: ComponentRef,
    n_pairs: usize,
    radii: &Radii,
    opts: &LinkOptions,
) -> Result<ContactEstimate, OracleError> {
    let (ca, ka) = fetch(f, gi, a, opts)?;
    let (cb, kb) = fetch(f, gi, b, opts)?;
    let n = ca.samples.len();
    let n_pairs = n_pairs.clamp(1, n);
    let jobs: Vec<(f64, Complex64, f64, Complex64)> = (0..n_pairs)
        .map(|j| {
            let s = &ca.samples[j * n / n_pairs];
            let za = Complex64::new(s.pos[0], s.pos[1]);
            let same: Vec<Complex64> = if a.side == b.side { cb.crossings(s.angle) } else { Vec::new() };
            let closest = |zs: &[Complex64]| zs.iter().copied().min_by(|x, y| (x.arg() - za.arg()).sin().abs().total_cmp(&(y.arg() - za.arg()).sin().abs()).then((x - za).norm().total_cmp(&(y - za).norm())));
            match closest(&same) {
                Some(zb) => (s.angle, za, s.angle, zb),
                None => {
                    let sb = cb
                        .samples
                        .iter()
                        .min_by(|x, y| (x.angle - s.angle).sin().abs().total_cmp(&(y.angle - s.angle).sin().abs()))
                        .expect("samples");
                    (s.angle, za, sb.angle, Complex64::new(sb.pos[0], sb.pos[1]))
                }
            }
        })
        .collect();
    use rayon::prelude::*;
    let results: Vec<(PairEstimate, (Arc, Arc))> = jobs
        .par_iter()
        .map(|&(ta, za, tb, zb)| {
            let arc_a = sample_arc(f, a, ka, ta, za, radii);
            let norms: Vec<f64> = arc_a.points.iter().map(|p| norm(*p)).collect();
            let arc_b = sample_arc_at_norms(f, b, kb, tb, zb, &norms);
            let est = estimate_tord(&arc_a, &arc_b)?;
            Ok((PairEstimate { angle: [ta, tb], estimate: est }, (arc_a, arc_b)))
        })
        .collect::<Result<_, OracleError>>()?;
    let best = results
        .iter()
        .map(|r| r.0.estimate.clone())
        .max_by(|x, y| x.q_hat.total_cmp(&y.q_hat))
        .expect("at least one pair");
    let (pairs, arcs) = results.into_iter().unzip();
    Ok(ContactEstimate { a, b, estimate: best, pairs, arcs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn line(points: impl Fn(f64) -> (Complex64, Complex64)) -> Arc {
        let r = Radii::default();
        Arc {
            component: ComponentRef { face: 1, side: Side::U, index: 0 },
            angle: 0.0,
            points: r.0.iter().map(|&x| points(x)).collect(),
            residuals: vec![0.0; r.0.len()],
            radii: r.0,
        }
    }

    #[test]
    fn power_law_arcs() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let a = line(|r| (c(r), c(r.powf(1.5))));
        let b = line(|r| (c(r), c(r.powf(2.5))));
        let e = estimate_tord(&a, &b).unwrap();
        assert!((e.q_hat - 1.5).abs() < 0.05, "{e:?}");
        assert!(estimate_tord(&a, &a).unwrap().q_hat.is_infinite());
        let x = line(|r| (c(r), c(0.0)));
        let y = line(|r| (c(0.0), c(r)));
        assert!((estimate_tord(&x, &y).unwrap().q_hat - 1.0).abs() < 0.05);
    }

    #[test]
    fn arc_on_radial_polynomial_scales() {
        let f = parse("u^2 - v^3").unwrap();
        let r = ComponentRef { face: 1, side: Side::U, index: 0 };
        let arc = sample_arc(&f, r, 1.5, 0.0, Complex64::new(1.0, 0.0), &Radii::default());
        assert_eq!(arc.points.len(), 40);
        for (rad, (u, _)) in arc.radii.iter().zip(&arc.points) {
            assert!((u.norm() - rad.powf(1.5)).abs() < 1e-12 * rad.powf(1.5));
        }
    }

    #[test]
    fn parse_refs_and_radii() {
        let r: ComponentRef = "2:v:1".parse().unwrap();
        assert_eq!(r, ComponentRef { face: 2, side: Side::V, index: 1 });
        assert!("2:w:1".parse::<ComponentRef>().is_err());
        let s: Radii = "0.1:0.0001:40".parse().unwrap();
        assert_eq!(s.0.len(), 40);
        assert!((s.0[39] - 1e-4).abs() < 1e-18);
    }
}
