//! Lipschitz invariants: semi-radial types, Conditions (A)–(D), contact
//! orders between link components, contact data and tangent cones.

mod engine;

pub use engine::{compare, family_check, Certificate, Decision, Hypothesis, LinkAssertion, Verdict};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::links::{arcs_cover_circle, ComponentKind, LinkComponent, LinkData, ProjArc};
use crate::newton::{q_str, SemiRadial, Q};
use crate::arcs::newton_min_norm;
use crate::nondegen::TriValue;
use crate::poly::{rdeg, MixedPoly, Side, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SemiRadialType {
    I,
    II,
    III,
}

/// Type I: `k ≠ 1` and `f_P` convenient towards the cone axis; II: `k = 1`;
/// III: otherwise.
pub fn type_of(sr: &SemiRadial) -> SemiRadialType {
    let k = sr.kq();
    if k == Q::one() {
        SemiRadialType::II
    } else if (k > Q::one() && sr.principal.is_u_convenient()) || (k < Q::one() && sr.principal.is_v_convenient()) {
        SemiRadialType::I
    } else {
        SemiRadialType::III
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Zones {
    #[serde(rename = "k>1")]
    pub gt1: Vec<usize>,
    #[serde(rename = "k=1")]
    pub eq1: Vec<usize>,
    #[serde(rename = "k<1")]
    pub lt1: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeProfile {
    /// `k_i = p1/p2` of the inner faces, strictly decreasing.
    pub ks: Vec<String>,
    /// First face with `k < 1` (`N + 1` if none).
    pub ell: usize,
    #[serde(skip)]
    pub i_f: Vec<usize>,
    /// Index sets of `I_f` by slope zone.
    pub zones: Zones,
    #[serde(skip)]
    pub gamma_inn_true: bool,
}

pub fn slope_profile(weights: &[(i64, i64)], i_f: &[usize]) -> SlopeProfile {
    let k = |i: usize| Q::new(weights[i - 1].0, weights[i - 1].1);
    let n = weights.len();
    SlopeProfile {
        ks: weights.iter().map(|p| format!("{}/{}", p.0, p.1)).collect(),
        ell: (1..=n).find(|&i| k(i) < Q::one()).unwrap_or(n + 1),
        i_f: i_f.to_vec(),
        zones: Zones {
            gt1: i_f.iter().copied().filter(|&i| k(i) > Q::one()).collect(),
            eq1: i_f.iter().copied().filter(|&i| k(i) == Q::one()).collect(),
            lt1: i_f.iter().copied().filter(|&i| k(i) < Q::one()).collect(),
        },
        gamma_inn_true: i_f.len() == n,
    }
}

fn face_k(ld: &LinkData, i: usize) -> Q {
    let p = ld.faces[i - 1].p;
    Q::new(p[0], p[1])
}

/// Reference to component `index` of face `face` (1-based face, natural side).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompRef {
    pub face: usize,
    pub index: usize,
}

impl std::fmt::Display for CompRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}#{}", self.face, self.index)
    }
}

fn comp<'a>(ld: &'a LinkData, r: CompRef) -> &'a LinkComponent {
    &ld.faces[r.face - 1].components[r.index]
}

fn refs_of(ld: &LinkData, faces: &[usize]) -> Vec<CompRef> {
    faces
        .iter()
        .flat_map(|&i| (0..ld.faces[i - 1].components.len()).map(move |j| CompRef { face: i, index: j }))
        .collect()
}

/// Projection of a component on a side (`None` if not representable there).
fn proj_on(ld: &LinkData, r: CompRef, side: Side) -> Option<ProjArc> {
    let c = comp(ld, r);
    if c.side == side {
        return Some(c.proj());
    }
    let k = face_k(ld, r.face);
    c.on_side(side, *k.numer() as f64 / *k.denom() as f64, ld.grid).map(|x| x.proj())
}

// ------------------------------------------------------------- conditions

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub value: TriValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Condition {
    fn yes() -> Self {
        Condition { value: TriValue::Yes, witness: None }
    }
    fn no(w: String) -> Self {
        Condition { value: TriValue::No, witness: Some(w) }
    }
    fn unknown(w: &str) -> Self {
        Condition { value: TriValue::Unknown, witness: Some(w.to_string()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conditions {
    #[serde(rename = "A")]
    pub a: Condition,
    #[serde(rename = "B")]
    pub b: Condition,
    #[serde(rename = "C")]
    pub c: Condition,
    #[serde(rename = "D")]
    pub d: Condition,
}

/// Projections of components of different faces that meet must overlap
/// with an interior point.
fn projection_condition(ld: &LinkData, faces: &[usize], side: Side) -> Condition {
    if faces.iter().any(|&i| !ld.faces[i - 1].ok()) {
        return Condition::unknown("face link unavailable");
    }
    let refs = refs_of(ld, faces);
    for (x, &ri) in refs.iter().enumerate() {
        for &rj in &refs[x + 1..] {
            if ri.face == rj.face {
                continue;
            }
            let (Some(a), Some(b)) = (proj_on(ld, ri, side), proj_on(ld, rj, side)) else {
                continue;
            };
            if a.meets(&b) && !a.interior_meets(&b) && !b.interior_meets(&a) {
                return Condition::no(format!("components {ri} and {rj}"));
            }
        }
    }
    Condition::yes()
}

/// The whole face link is a single strand around a coordinate axis.
pub fn face_is_metric_braid(ld: &LinkData, i: usize) -> bool {
    let fl = &ld.faces[i - 1];
    fl.components.len() == 1 && is_braid_piece(ld, CompRef { face: i, index: 0 }).is_some()
}

fn covering_condition(ld: &LinkData, faces: &[usize], side: Side, extreme: Option<usize>) -> Condition {
    if faces.is_empty() {
        return Condition::yes();
    }
    if !ld.all_ok() {
        return Condition::unknown("face link unavailable");
    }
    let covers = faces.iter().find(|&&i| {
        let arcs: Vec<ProjArc> = refs_of(ld, &[i]).into_iter().filter_map(|r| proj_on(ld, r, side)).collect();
        arcs_cover_circle(&arcs)
    });
    let Some(&cover_face) = covers else {
        return Condition::no("no face link projects onto the whole circle".into());
    };
    let _ = cover_face;
    match extreme {
        Some(e) if face_is_metric_braid(ld, e) => Condition::no(format!("face {e} link is a metric 1-braid closure")),
        _ => Condition::yes(),
    }
}

pub fn conditions(ld: &LinkData, sp: &SlopeProfile) -> Conditions {
    Conditions {
        a: projection_condition(ld, &sp.zones.gt1, Side::U),
        b: projection_condition(ld, &sp.zones.lt1, Side::V),
        c: covering_condition(ld, &sp.zones.gt1, Side::U, sp.i_f.first().copied()),
        d: covering_condition(ld, &sp.zones.lt1, Side::V, sp.i_f.last().copied()),
    }
}

// ----------------------------------------------------------------- cones

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cone {
    #[serde(rename = "u-axis")]
    PlaneU0,
    #[serde(rename = "v-axis")]
    PlaneV0,
    #[serde(rename = "subset-of-u-axis")]
    SubsetU0,
    #[serde(rename = "subset-of-v-axis")]
    SubsetV0,
    /// Real cone over the component (slope-1 faces).
    #[serde(rename = "cone-over-component")]
    OverComponent,
}

pub fn component_cone(ld: &LinkData, r: CompRef) -> Cone {
    let c = comp(ld, r);
    match c.kind {
        ComponentKind::UAxis => Cone::PlaneU0,
        ComponentKind::VAxis => Cone::PlaneV0,
        ComponentKind::Torus => {
            let k = face_k(ld, r.face);
            if k > Q::one() {
                if proj_on(ld, r, Side::U).is_some_and(|a| a.is_full()) {
                    Cone::PlaneU0
                } else {
                    Cone::SubsetU0
                }
            } else if k < Q::one() {
                if proj_on(ld, r, Side::V).is_some_and(|a| a.is_full()) {
                    Cone::PlaneV0
                } else {
                    Cone::SubsetV0
                }
            } else {
                Cone::OverComponent
            }
        }
    }
}

/// A single-strand closed braid whose tangent cone is a coordinate plane.
fn is_braid_piece(ld: &LinkData, r: CompRef) -> Option<Cone> {
    let c = comp(ld, r);
    let k = face_k(ld, r.face);
    let kf = *k.numer() as f64 / *k.denom() as f64;
    let single = |side: Side| {
        c.on_side(side, kf, ld.grid).is_some_and(|x| x.braid && x.strand_multiplicity == 1)
    };
    match (c.kind, component_cone(ld, r)) {
        (ComponentKind::UAxis, _) => (c.strand_multiplicity == 1).then_some(Cone::PlaneU0),
        (ComponentKind::VAxis, _) => (c.strand_multiplicity == 1).then_some(Cone::PlaneV0),
        (_, Cone::PlaneU0) if single(Side::U) => Some(Cone::PlaneU0),
        (_, Cone::PlaneV0) if single(Side::V) => Some(Cone::PlaneV0),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentCone {
    pub face: usize,
    pub index: usize,
    pub cone: Cone,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeDescription {
    /// One of `V(f_P)`, `u-axis`, `subset-of-u-axis`, `v-axis`,
    /// `subset-of-v-axis`, `union-v-axis-and-subset-u-axis`,
    /// `union-u-axis-and-subset-v-axis`, `per-component`.
    /// (`u-axis` is the plane `{u=0}`.)
    pub kind: String,
    pub components: Vec<ComponentCone>,
}

/// Tangent cone of `V(f)`: from the semi-radial type when available,
/// otherwise component by component.
pub fn tangent_cone(ld: &LinkData, sr: Option<&SemiRadial>) -> ConeDescription {
    let components: Vec<ComponentCone> = refs_of(ld, &(1..=ld.faces.len()).collect::<Vec<_>>())
        .into_iter()
        .map(|r| ComponentCone { face: r.face, index: r.index, cone: component_cone(ld, r) })
        .collect();
    let covered = |plane: Cone| components.iter().any(|c| c.cone == plane);
    let kind = match sr {
        Some(sr) => {
            let fp = &sr.principal;
            let k = sr.kq();
            match type_of(sr) {
                SemiRadialType::II => "V(f_P)",
                SemiRadialType::III if k > Q::one() => "union-v-axis-and-subset-u-axis",
                SemiRadialType::III => "union-u-axis-and-subset-v-axis",
                SemiRadialType::I if k > Q::one() => {
                    // the link may also show the whole circle is swept
                    if fp.is_u_semiholomorphic() || fp.is_ubar_semiholomorphic() || !fp.is_v_convenient() || covered(Cone::PlaneU0) {
                        "u-axis"
                    } else {
                        "subset-of-u-axis"
                    }
                }
                SemiRadialType::I => {
                    if fp.is_v_semiholomorphic() || fp.is_vbar_semiholomorphic() || !fp.is_u_convenient() || covered(Cone::PlaneV0) {
                        "v-axis"
                    } else {
                        "subset-of-v-axis"
                    }
                }
            }
        }
        None => "per-component",
    };
    ConeDescription { kind: kind.to_string(), components }
}

// ---------------------------------------------------------- link classes

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkType {
    Empty,
    #[serde(rename = "metric-1-braid-closure")]
    Metric1Braid,
    NonTangentHopfLink,
    General,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkClass {
    #[serde(rename = "type")]
    pub kind: LinkType,
    #[serde(rename = "braidAxis", skip_serializing_if = "Option::is_none")]
    pub braid_axis: Option<&'static str>,
    pub unclassified: bool,
}

pub fn classify_link(f: &MixedPoly, ld: &LinkData) -> LinkClass {
    let general = |unclassified| LinkClass { kind: LinkType::General, braid_axis: None, unclassified };
    if !ld.all_ok() {
        return general(true);
    }
    let refs = refs_of(ld, &(1..=ld.faces.len()).collect::<Vec<_>>());
    match refs.len() {
        0 => LinkClass { kind: LinkType::Empty, braid_axis: None, unclassified: false },
        1 => match is_braid_piece(ld, refs[0]) {
            Some(Cone::PlaneU0) => LinkClass { kind: LinkType::Metric1Braid, braid_axis: Some("L_v"), unclassified: false },
            Some(_) => LinkClass { kind: LinkType::Metric1Braid, braid_axis: Some("L_u"), unclassified: false },
            None => general(false),
        },
        2 => {
            let (a, b) = (is_braid_piece(ld, refs[0]), is_braid_piece(ld, refs[1]));
            let planes = matches!((a, b), (Some(Cone::PlaneU0), Some(Cone::PlaneV0)) | (Some(Cone::PlaneV0), Some(Cone::PlaneU0)));
            if planes && contact_order(f, ld, refs[0], refs[1], None).is_one() {
                LinkClass { kind: LinkType::NonTangentHopfLink, braid_axis: None, unclassified: false }
            } else {
                general(false)
            }
        }
        _ => general(false),
    }
}

// --------------------------------------------------------------- contact

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContactKind {
    Exact,
    One,
    Interval,
    ZonesDistinctOne,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContactVerdict {
    pub kind: ContactKind,
    /// Exact value, or the upper end of the interval `[1, hi]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub basis: String,
}

impl ContactVerdict {
    fn one(kind: ContactKind, basis: &str) -> Self {
        ContactVerdict { kind, value: None, basis: basis.to_string() }
    }
    fn exact(q: Q, basis: &str) -> Self {
        if q == Q::one() {
            return ContactVerdict::one(ContactKind::One, basis);
        }
        ContactVerdict { kind: ContactKind::Exact, value: Some(q_str(&q)), basis: basis.to_string() }
    }
    fn interval(hi: Q, basis: &str) -> Self {
        ContactVerdict { kind: ContactKind::Interval, value: Some(q_str(&hi)), basis: basis.to_string() }
    }
    pub fn is_one(&self) -> bool {
        matches!(self.kind, ContactKind::One | ContactKind::ZonesDistinctOne)
    }
    /// Exact value as a float (1 for the "one" kinds).
    pub fn exact_value(&self) -> Option<f64> {
        match self.kind {
            ContactKind::One | ContactKind::ZonesDistinctOne => Some(1.0),
            ContactKind::Exact => self.value.as_deref().and_then(parse_q).map(|q| *q.numer() as f64 / *q.denom() as f64),
            ContactKind::Interval => None,
        }
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((a, b)) => Some(Q::new(a.trim().parse().ok()?, b.trim().parse().ok()?)),
        None => Some(Q::from(s.trim().parse::<i64>().ok()?)),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Zone {
    Gt1,
    Eq1,
    Lt1,
}

fn zone(ld: &LinkData, r: CompRef) -> Zone {
    let c = comp(ld, r);
    match c.kind {
        ComponentKind::UAxis => Zone::Gt1,
        ComponentKind::VAxis => Zone::Lt1,
        ComponentKind::Torus => {
            let k = face_k(ld, r.face);
            if k > Q::one() {
                Zone::Gt1
            } else if k < Q::one() {
                Zone::Lt1
            } else {
                Zone::Eq1
            }
        }
    }
}

/// Contact order at the origin between the components of `V(f)` carried by
/// two link components. `cond` optionally supplies precomputed Conditions.
pub fn contact_order(f: &MixedPoly, ld: &LinkData, a: CompRef, b: CompRef, cond: Option<&Conditions>) -> ContactVerdict {
    if a == b {
        return ContactVerdict { kind: ContactKind::Exact, value: Some("inf".into()), basis: "same-component".into() };
    }
    let (za, zb) = (zone(ld, a), zone(ld, b));
    if za != zb {
        return ContactVerdict::one(ContactKind::ZonesDistinctOne, "different slope zones");
    }
    if za == Zone::Eq1 {
        return ContactVerdict::one(ContactKind::One, "slope-1 zone");
    }
    // order so that a.face <= b.face
    let (a, b) = if a.face <= b.face { (a, b) } else { (b, a) };
    let (side, bound, cond_val) = match za {
        Zone::Gt1 => {
            let c = cond.map(|c| c.a.value).unwrap_or_else(|| projection_condition(ld, &faces_in_zone(ld, Zone::Gt1), Side::U).value);
            (Side::U, face_k(ld, b.face), c)
        }
        _ => {
            let c = cond.map(|c| c.b.value).unwrap_or_else(|| projection_condition(ld, &faces_in_zone(ld, Zone::Lt1), Side::V).value);
            (Side::V, Q::one() / face_k(ld, a.face), c)
        }
    };
    let (Some(pa), Some(pb)) = (proj_on(ld, a, side), proj_on(ld, b, side)) else {
        return ContactVerdict::interval(bound, "projection unavailable");
    };
    if !pa.meets(&pb) {
        return ContactVerdict::one(ContactKind::One, "disjoint projections");
    }
    if a.face == b.face {
        return ContactVerdict::exact(bound, "same face, meeting projections");
    }
    let cname = if side == Side::U { "condition A" } else { "condition B" };
    if cond_val == TriValue::Yes {
        return ContactVerdict::exact(bound, cname);
    }
    if test_arc_witness(f, ld, a, b, &pa, &pb, side) {
        return ContactVerdict::exact(bound, "arcs of the face links lie on V(f)");
    }
    ContactVerdict::interval(bound, &format!("{cname} fails; upper bound only"))
}

fn faces_in_zone(ld: &LinkData, z: Zone) -> Vec<usize> {
    (1..=ld.faces.len())
        .filter(|&i| {
            let k = face_k(ld, i);
            match z {
                Zone::Gt1 => k > Q::one(),
                Zone::Lt1 => k < Q::one(),
                Zone::Eq1 => k == Q::one(),
            }
        })
        .collect()
}

/// At a shared base angle, check that the weighted arcs through both face
/// components lie exactly on `V(f)`; their order of contact then attains
/// the upper bound.
fn test_arc_witness(f: &MixedPoly, ld: &LinkData, a: CompRef, b: CompRef, pa: &ProjArc, pb: &ProjArc, side: Side) -> bool {
    let g = ld.grid as i64;
    let shared = (0..g).find(|&j| pa.contains_index(j) && pb.contains_index(j));
    let Some(j) = shared else { return false };
    let angle = 2.0 * std::f64::consts::PI * j as f64 / g as f64;
    let on_v = |r: CompRef| -> bool {
        let k = face_k(ld, r.face);
        let kf = *k.numer() as f64 / *k.denom() as f64;
        let Some(c) = comp(ld, r).on_side(side, kf, ld.grid) else { return false };
        let Some(z0) = c.crossings(angle).first().copied() else { return false };
        let p = ld.faces[r.face - 1].p;
        let z = polish_slice(f, (p[0], p[1]), side, z0, angle);
        arc_on_variety(f, (p[0], p[1]), side, z, angle)
    };
    on_v(a) && on_v(b)
}

/// Principal slice value and its Wirtinger derivatives at `(z, angle)`.
fn slice_eval(fp: &MixedPoly, side: Side, z: Complex64, angle: f64) -> (Complex64, Complex64, Complex64) {
    let e = Complex64::from_polar(1.0, angle);
    let (u, v) = match side {
        Side::U => (z, e),
        Side::V => (e, z),
    };
    let (dz, dzb) = match side {
        Side::U => (Var::U, Var::UBar),
        Side::V => (Var::V, Var::VBar),
    };
    (fp.evaluate(u, v), fp.wirtinger(dz).evaluate(u, v), fp.wirtinger(dzb).evaluate(u, v))
}

fn polish_slice(f: &MixedPoly, p: (i64, i64), side: Side, z: Complex64, angle: f64) -> Complex64 {
    let d = f.terms().map(|(e, _)| rdeg(e, p)).min().unwrap_or(0);
    let fp = f.filter(|e| rdeg(e, p) == d);
    newton_min_norm(|z| slice_eval(&fp, side, z, angle), z, |_, g| g.norm() < 1e-15)
}

/// `f(γ(R)) ≡ 0` for `γ(R) = (R^k z, R e^{iθ})` (u-side) or
/// `(R e^{iθ}, R^{1/k} z)` (v-side): every group of equal weighted degree
/// must cancel.
fn arc_on_variety(f: &MixedPoly, p: (i64, i64), side: Side, z: Complex64, angle: f64) -> bool {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<i64, (Complex64, f64)> = BTreeMap::new();
    let e = Complex64::from_polar(1.0, angle);
    for (ex, c) in f.terms() {
        let (u, v) = match side {
            Side::U => (z, e),
            Side::V => (e, z),
        };
        let val = c.to_c64() * u.powu(ex[0]) * u.conj().powu(ex[1]) * v.powu(ex[2]) * v.conj().powu(ex[3]);
        let g = groups.entry(rdeg(ex, p)).or_insert((Complex64::zero(), 0.0));
        g.0 += val;
        g.1 += val.norm();
    }
    groups.values().all(|(s, m)| s.norm() <= 1e-9 * m.max(1e-300))
}

// ---------------------------------------------------------- contact data

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContactEntry {
    pub kappa: String,
    pub m: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContactData {
    /// `C(f)`: pairs `(κ, m(κ))` in decreasing `κ`.
    #[serde(rename = "C")]
    pub c: Vec<ContactEntry>,
    /// `𝒩𝒞(f)`: number of faces followed by `C(f)`; only meaningful when
    /// every face carries link components.
    #[serde(rename = "NC")]
    pub nc: (usize, Vec<ContactEntry>),
    #[serde(rename = "gammaInnTrue")]
    pub gamma_inn_true: bool,
}

pub fn contact_data(weights: &[(i64, i64)], i_f: &[usize]) -> ContactData {
    let k: Vec<Q> = i_f.iter().map(|&i| Q::new(weights[i - 1].0, weights[i - 1].1)).collect();
    let mut kappas: Vec<Q> = k.iter().map(|&x| if x >= Q::one() { x } else { Q::one() / x }).collect();
    kappas.sort();
    kappas.dedup();
    kappas.reverse();
    let c: Vec<ContactEntry> = kappas
        .iter()
        .map(|&q| {
            let both = q != Q::one() && k.contains(&q) && k.contains(&(Q::one() / q));
            ContactEntry { kappa: q_str(&q), m: if both { 2 } else { 1 } }
        })
        .collect();
    ContactData { nc: (weights.len(), c.clone()), c, gamma_inn_true: i_f.len() == weights.len() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contact_data_of_known_slopes() {
        let w = [(3, 1), (3, 2), (1, 1), (2, 3), (1, 2)];
        let cd = contact_data(&w, &[1, 2, 3, 4, 5]);
        let pairs: Vec<(String, u8)> = cd.c.iter().map(|e| (e.kappa.clone(), e.m)).collect();
        assert_eq!(pairs, vec![("3/1".into(), 1), ("2/1".into(), 1), ("3/2".into(), 2), ("1/1".into(), 1)]);
        assert_eq!(cd.nc.0, 5);
    }

    #[test]
    fn q_parsing() {
        assert_eq!(parse_q("3/2"), Some(Q::new(3, 2)));
        assert_eq!(parse_q("4"), Some(Q::from(4)));
    }
}
