//! Newton boundaries, face functions, the inner C-diagram Γ_inn and
//! semi-radial decompositions.

use std::collections::HashMap;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::nondegen::{face_sing_empty, tri_and, Stratum, Tolerances, Tri, TriValue};
use crate::poly::{exps_point, rdeg, MixedPoly};

pub type Q = Rational64;

pub fn q_str(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Upper-left endpoint (index into `vertices`).
    pub from: usize,
    /// Lower-right endpoint.
    pub to: usize,
    pub p: (i64, i64),
    pub d: i64,
}

impl Edge {
    pub fn k(&self) -> Q {
        Q::new(self.p.0, self.p.1)
    }
}

/// A Newton boundary or C-diagram. Vertices run in decreasing `x`; edges run
/// `P1..PN` from the top-left (largest slope ratio `k = p1/p2`) downwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub vertices: Vec<(Q, Q)>,
    pub edges: Vec<Edge>,
    pub u_convenient: bool,
    pub v_convenient: bool,
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Edge", 5)?;
        st.serialize_field("from", &self.from)?;
        st.serialize_field("to", &self.to)?;
        st.serialize_field("p", &[self.p.0, self.p.1])?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("k", &format!("{}/{}", self.p.0, self.p.1))?;
        st.end()
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let verts: Vec<[String; 2]> = self.vertices.iter().map(|(x, y)| [q_str(x), q_str(y)]).collect();
        let mut st = s.serialize_struct("Diagram", 4)?;
        st.serialize_field("vertices", &verts)?;
        st.serialize_field("edges", &self.edges)?;
        st.serialize_field("u_convenient", &self.u_convenient)?;
        st.serialize_field("v_convenient", &self.v_convenient)?;
        st.end()
    }
}

fn cross(o: (Q, Q), a: (Q, Q), b: (Q, Q)) -> Q {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Primitive weight of the segment `a → b` (with `a.x > b.x`, `a.y < b.y`).
fn segment_weight(a: (Q, Q), b: (Q, Q)) -> (i64, i64) {
    let dx = a.0 - b.0;
    let dy = b.1 - a.1;
    let l = dx.denom().lcm(dy.denom());
    let (x, y) = ((dx * l).to_integer(), (dy * l).to_integer());
    let g = x.gcd(&y);
    (y / g, x / g)
}

impl Diagram {
    /// Build from a convex chain given in decreasing `x`.
    pub fn from_chain(mut vertices: Vec<(Q, Q)>) -> Self {
        // drop collinear interior points
        let mut i = 1;
        while vertices.len() >= 3 && i + 1 < vertices.len() {
            if cross(vertices[i - 1], vertices[i], vertices[i + 1]).is_zero() {
                vertices.remove(i);
            } else {
                i += 1;
            }
        }
        let n = vertices.len();
        let mut edges = Vec::new();
        for j in (1..n).rev() {
            let (upper, lower) = (vertices[j], vertices[j - 1]);
            let p = segment_weight(lower, upper);
            let d = Q::from(p.0) * upper.0 + Q::from(p.1) * upper.1;
            debug_assert!(d.is_integer());
            edges.push(Edge { from: j, to: j - 1, p, d: d.to_integer() });
        }
        let u_convenient = vertices.first().is_some_and(|v| v.1.is_zero());
        let v_convenient = vertices.last().is_some_and(|v| v.0.is_zero());
        Diagram { vertices, edges, u_convenient, v_convenient }
    }

    pub fn weights(&self) -> Vec<(i64, i64)> {
        self.edges.iter().map(|e| e.p).collect()
    }

    pub fn n_faces(&self) -> usize {
        self.edges.len()
    }

    /// Is `(x, y)` in the closed region on or above the diagram?
    pub fn contains(&self, x: Q, y: Q) -> bool {
        if x.is_negative() || y.is_negative() {
            return false;
        }
        for e in &self.edges {
            if Q::from(e.p.0) * x + Q::from(e.p.1) * y < Q::from(e.d) {
                return false;
            }
        }
        let (first, last) = (self.vertices[0], self.vertices[self.vertices.len() - 1]);
        if !self.u_convenient && y < first.1 {
            return false;
        }
        if !self.v_convenient && x < last.0 {
            return false;
        }
        if self.edges.is_empty() {
            return x >= first.0 && y >= first.1;
        }
        true
    }

    pub fn region_contains(&self, other: &Diagram) -> bool {
        other.vertices.iter().all(|&(x, y)| self.contains(x, y))
    }

    /// Twice the area below the diagram inside the quadrant (convenient case).
    fn area2(&self) -> Q {
        let mut a = Q::zero();
        for w in self.vertices.windows(2) {
            // trapezoid between x = w[1].0 and w[0].0
            a += (w[0].0 - w[1].0) * (w[0].1 + w[1].1);
        }
        a
    }
}

/// Distinct support points of `f`.
pub fn support(f: &MixedPoly) -> Vec<(i64, i64)> {
    f.support()
}

pub fn newton_boundary(f: &MixedPoly) -> Diagram {
    let mut pts: Vec<(Q, Q)> = f.support().into_iter().map(|(x, y)| (Q::from(x), Q::from(y))).collect();
    pts.sort();
    let mut hull: Vec<(Q, Q)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= Q::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    // keep the descending part: up to the first point of minimal height
    let ymin = hull.iter().map(|p| p.1).min().expect("nonempty support");
    let cut = hull.iter().position(|p| p.1 == ymin).unwrap();
    hull.truncate(cut + 1);
    hull.reverse();
    Diagram::from_chain(hull)
}

/// Principal part `f_P` (terms of minimal radial degree) and that degree.
pub fn face_function(f: &MixedPoly, p: (i64, i64)) -> (MixedPoly, i64) {
    let d = f.terms().map(|(e, _)| rdeg(e, p)).min().unwrap_or(0);
    (f.filter(|e| rdeg(e, p) == d), d)
}

/// Terms of `f` whose support lies on the line `l_P = d`.
pub fn terms_on_line(f: &MixedPoly, p: (i64, i64), d: i64) -> MixedPoly {
    f.filter(|e| rdeg(e, p) == d)
}

pub fn terms_at(f: &MixedPoly, pt: (i64, i64)) -> MixedPoly {
    f.filter(|e| exps_point(e) == pt)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceTest {
    /// `"edge"` or `"vertex"`.
    pub kind: &'static str,
    /// 1-based edge index, or 0-based vertex index.
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<[i64; 2]>,
    pub face_function: MixedPoly,
    pub stratum: Stratum,
    pub result: Tri,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaInnResult {
    pub diagram: Diagram,
    pub p_inn: Vec<[i64; 2]>,
    pub status: Status,
    /// IND of `f` with respect to `diagram`.
    pub ind: TriValue,
    #[serde(rename = "indReport")]
    pub ind_report: Vec<FaceTest>,
    /// Competing diagrams when the choice is not certified.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alternatives: Vec<Diagram>,
}

impl GammaInnResult {
    pub fn weights(&self) -> Vec<(i64, i64)> {
        self.diagram.weights()
    }
}

/// Memo for face tests, keyed by face polynomial and stratum.
#[derive(Default)]
pub struct FaceCache {
    map: HashMap<(MixedPoly, Stratum), Tri>,
}

impl FaceCache {
    pub fn test(&mut self, f: &MixedPoly, s: Stratum, tol: &Tolerances) -> Tri {
        if let Some(t) = self.map.get(&(f.clone(), s)) {
            return *t;
        }
        let t = face_sing_empty(f, s, tol);
        self.map.insert((f.clone(), s), t);
        t
    }
}

/// Run every IND test of `f` against the diagram.
pub fn ind_report(f: &MixedPoly, dg: &Diagram, cache: &mut FaceCache, tol: &Tolerances) -> Vec<FaceTest> {
    let mut out = Vec::new();
    for (i, e) in dg.edges.iter().enumerate() {
        let ff = terms_on_line(f, e.p, e.d);
        let (upper, lower) = (dg.vertices[e.from], dg.vertices[e.to]);
        let mut strata = vec![Stratum::Torus];
        if lower.1.is_zero() {
            strata.push(Stratum::VZero);
        }
        if upper.0.is_zero() {
            strata.push(Stratum::UZero);
        }
        for s in strata {
            let result = cache.test(&ff, s, tol);
            out.push(FaceTest { kind: "edge", index: i + 1, p: Some([e.p.0, e.p.1]), point: None, face_function: ff.clone(), stratum: s, result });
        }
    }
    for (j, &(x, y)) in dg.vertices.iter().enumerate() {
        if !(x.is_integer() && y.is_integer()) {
            continue;
        }
        let pt = (x.to_integer(), y.to_integer());
        let ff = terms_at(f, pt);
        if ff.is_zero() {
            continue;
        }
        let mut strata = vec![Stratum::Torus];
        if pt.1 == 0 {
            strata.push(Stratum::VZero);
        }
        if pt.0 == 0 {
            strata.push(Stratum::UZero);
        }
        for s in strata {
            let result = cache.test(&ff, s, tol);
            out.push(FaceTest { kind: "vertex", index: j, p: None, point: Some([pt.0, pt.1]), face_function: ff.clone(), stratum: s, result });
        }
    }
    out
}

/// Candidate diagram spanned by a chain `t` of Newton-boundary vertices
/// (decreasing `x`) and extended to both axes.
fn extend_chain(t: &[(Q, Q)]) -> Diagram {
    let mut pts = t.to_vec();
    let bottom = pts[0];
    if !bottom.1.is_zero() {
        let own = if pts.len() >= 2 {
            let p = segment_weight(pts[0], pts[1]);
            (p.0 <= p.1).then_some(p)
        } else {
            None
        };
        let ext = match own {
            Some(p) => {
                let d = Q::from(p.0) * bottom.0 + Q::from(p.1) * bottom.1;
                (d / Q::from(p.0), Q::zero())
            }
            None => (bottom.0 + bottom.1, Q::zero()),
        };
        pts.insert(0, ext);
    }
    let top = *pts.last().unwrap();
    if !top.0.is_zero() {
        let n = pts.len();
        let own = if n >= 2 {
            let p = segment_weight(pts[n - 2], pts[n - 1]);
            (p.0 >= p.1).then_some(p)
        } else {
            None
        };
        let ext = match own {
            Some(p) => {
                let d = Q::from(p.0) * top.0 + Q::from(p.1) * top.1;
                (Q::zero(), d / Q::from(p.1))
            }
            None => (Q::zero(), top.0 + top.1),
        };
        pts.push(ext);
    }
    Diagram::from_chain(pts)
}

const MAX_SUBSET_VERTICES: usize = 12;

/// Search for the inner C-diagram: among diagrams spanned by subsets of the
/// Newton-boundary vertices (extended to the axes) that lie below the
/// support and pass every IND test, take the one with the largest region.
pub fn gamma_inn(f: &MixedPoly, tol: &Tolerances, cache: &mut FaceCache) -> GammaInnResult {
    let gamma = newton_boundary(f);
    let vs = gamma.vertices.clone();
    let n = vs.len();
    let mut subsets: Vec<Vec<(Q, Q)>> = Vec::new();
    if n <= MAX_SUBSET_VERTICES {
        for mask in 1u32..(1 << n) {
            subsets.push((0..n).filter(|i| mask & (1 << i) != 0).map(|i| vs[i]).collect());
        }
    } else {
        for a in 0..n {
            for b in a..n {
                subsets.push(vs[a..=b].to_vec());
            }
        }
    }
    let supp = f.support();
    let mut seen: Vec<Diagram> = Vec::new();
    let mut passing: Vec<(Diagram, Vec<FaceTest>, TriValue)> = Vec::new();
    let mut failing: Vec<(Diagram, Vec<FaceTest>)> = Vec::new();
    for t in subsets {
        let dg = extend_chain(&t);
        if seen.contains(&dg) {
            continue;
        }
        seen.push(dg.clone());
        if !supp.iter().all(|&(x, y)| dg.contains(Q::from(x), Q::from(y))) {
            continue;
        }
        let report = ind_report(f, &dg, cache, tol);
        let ind = tri_and(report.iter().map(|r| r.result.value));
        if ind == TriValue::No {
            failing.push((dg, report));
        } else {
            passing.push((dg, report, ind));
        }
    }
    if passing.is_empty() {
        // not IND: report against the extended Newton boundary
        let dg = extend_chain(&vs);
        let report = ind_report(f, &dg, cache, tol);
        let ind = tri_and(report.iter().map(|r| r.result.value));
        return GammaInnResult {
            p_inn: dg.weights().iter().map(|p| [p.0, p.1]).collect(),
            diagram: dg,
            status: Status::Heuristic,
            ind,
            ind_report: report,
            alternatives: Vec::new(),
        };
    }
    // maximal elements under region inclusion
    let maximal: Vec<usize> = (0..passing.len())
        .filter(|&i| {
            !(0..passing.len()).any(|j| {
                j != i && passing[j].0.region_contains(&passing[i].0) && !passing[i].0.region_contains(&passing[j].0)
            })
        })
        .collect();
    let best = *maximal
        .iter()
        .max_by(|&&a, &&b| {
            passing[a].0.area2().cmp(&passing[b].0.area2()).then_with(|| passing[b].0.vertices.cmp(&passing[a].0.vertices))
        })
        .unwrap();
    let unique = maximal.len() == 1 && (0..passing.len()).all(|j| passing[best].0.region_contains(&passing[j].0));
    let all_known = passing.iter().all(|p| p.2 == TriValue::Yes);
    let status = if unique && all_known { Status::Certified } else { Status::Heuristic };
    let (dg, report, ind) = passing[best].clone();
    let alternatives = if status == Status::Heuristic {
        maximal.iter().filter(|&&i| i != best).map(|&i| passing[i].0.clone()).collect()
    } else {
        Vec::new()
    };
    GammaInnResult { p_inn: dg.weights().iter().map(|p| [p.0, p.1]).collect(), diagram: dg, status, ind, ind_report: report, alternatives }
}

/// `f = f_P + remainder` with `f_P` radially weighted homogeneous and
/// `Sing V(f_P) ⊆ {0}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiRadial {
    pub p: [i64; 2],
    pub d: i64,
    pub principal: MixedPoly,
    pub remainder: MixedPoly,
    pub k: String,
}

impl SemiRadial {
    pub fn weight(&self) -> (i64, i64) {
        (self.p[0], self.p[1])
    }
    pub fn kq(&self) -> Q {
        Q::new(self.p[0], self.p[1])
    }
}

/// All weights for which `f` is semi-radial. Candidates are the edge weights
/// of Γ_inn, or the single face weight of Γ(f).
pub fn radial_decompose(f: &MixedPoly, gi: &GammaInnResult, tol: &Tolerances, cache: &mut FaceCache) -> Vec<SemiRadial> {
    let mut cands = gi.weights();
    let g = newton_boundary(f);
    if g.edges.len() == 1 && !cands.contains(&g.edges[0].p) {
        cands.push(g.edges[0].p);
    }
    let mut out = Vec::new();
    for p in cands {
        let (fp, d) = face_function(f, p);
        let smooth = [Stratum::Torus, Stratum::VZero, Stratum::UZero].iter().all(|&s| cache.test(&fp, s, tol).is_yes());
        if smooth {
            out.push(SemiRadial {
                p: [p.0, p.1],
                d,
                remainder: f.sub(&fp),
                principal: fp,
                k: format!("{}/{}", p.0, p.1),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn q(x: i64) -> Q {
        Q::from(x)
    }

    #[test]
    fn boundary_of_running_example() {
        let f = parse("u^8 + v^3*u^2 + ~v^6*u^2 + ~v^5*u + v^4*~v^4").unwrap();
        let g = newton_boundary(&f);
        assert_eq!(g.vertices, vec![(q(8), q(0)), (q(2), q(3)), (q(1), q(5)), (q(0), q(8))]);
        assert_eq!(g.weights(), vec![(3, 1), (2, 1), (1, 2)]);
        assert_eq!(g.edges[1].d, 7);
    }

    #[test]
    fn single_vertex() {
        let g = newton_boundary(&parse("u*v").unwrap());
        assert!(g.edges.is_empty());
        assert!(!g.u_convenient && !g.v_convenient);
        assert!(g.contains(q(3), q(1)) && !g.contains(q(3), q(0)));
    }

    #[test]
    fn extensions() {
        let d = extend_chain(&[(q(1), q(1))]);
        assert_eq!(d.vertices, vec![(q(2), q(0)), (q(0), q(2))]);
        assert_eq!(d.weights(), vec![(1, 1)]);
    }
}
