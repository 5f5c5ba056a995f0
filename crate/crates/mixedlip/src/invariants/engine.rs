//! Rule cascade deciding (non-)equivalence of two analysed germs, and
//! triviality of one-parameter families.

use num_traits::One;
use serde::Serialize;

use super::{LinkClass, LinkType, SemiRadialType};
use crate::analysis::{analyze_poly, Analysis, Options};
use crate::newton::{q_str, Q};
use crate::nondegen::TriValue;
use crate::poly::{rdeg, MixedPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    AmbientEquivalent,
    NotBilipschitzEquivalent,
    TopologicallyEquivalentAtLeast,
    Inconclusive,
}

/// Isotopy type of a link, supplied by the user (never computed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkAssertion {
    TrivialKnot,
    Hopf,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub value: TriValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn hyp(name: impl Into<String>, value: TriValue, witness: Option<String>) -> Hypothesis {
    Hypothesis { name: name.into(), value, witness }
}

fn hyp_bool(name: impl Into<String>, b: bool, witness: Option<String>) -> Hypothesis {
    hyp(name, if b { TriValue::Yes } else { TriValue::No }, witness)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub theorem: &'static str,
    pub hypotheses: Vec<Hypothesis>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub certificate: Vec<Certificate>,
    pub flags: Vec<String>,
}

impl Verdict {
    fn new(decision: Decision, certificate: Vec<Certificate>, flags: Vec<String>) -> Self {
        Verdict { decision, certificate, flags }
    }
}

fn all_yes(h: &[Hypothesis]) -> bool {
    h.iter().all(|h| h.value == TriValue::Yes)
}

fn ind_nice(tag: &str, a: &Analysis) -> Vec<Hypothesis> {
    vec![hyp(format!("{tag}: IND"), a.ind, None), hyp(format!("{tag}: Γ_inn-nice"), a.nice.value, None)]
}

fn class_name(c: &LinkClass) -> String {
    let t = serde_json::to_value(c.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    if c.unclassified {
        format!("{t}-unclassified")
    } else {
        t
    }
}

fn is_simple(c: &LinkClass) -> bool {
    !c.unclassified && matches!(c.kind, LinkType::Empty | LinkType::Metric1Braid | LinkType::NonTangentHopfLink)
}

fn kstr(a: &Analysis) -> String {
    a.semi_radial.as_ref().map(|s| q_str(&s.decomposition.kq())).unwrap_or_default()
}

/// Decide bi-Lipschitz V-equivalence of two germs where a result applies.
pub fn compare(a: &Analysis, b: &Analysis, assertion: Option<LinkAssertion>) -> Verdict {
    let mut flags = Vec::new();
    if a.uncertified() || b.uncertified() {
        flags.push("uncertified".to_string());
    }
    if a.polynomial == b.polynomial {
        return Verdict::new(
            Decision::AmbientEquivalent,
            vec![Certificate { theorem: "identity", hypotheses: vec![hyp_bool("same polynomial", true, Some(a.polynomial.to_string()))] }],
            flags,
        );
    }
    let (ca, cb) = (&a.link_summary.class, &b.link_summary.class);

    // simple metric links are rigid
    if ca.kind == cb.kind && is_simple(ca) && is_simple(cb) {
        let mut h = ind_nice("f", a);
        h.extend(ind_nice("g", b));
        h.push(hyp_bool("links of the same simple class", true, Some(class_name(ca))));
        if all_yes(&h) {
            return Verdict::new(Decision::AmbientEquivalent, vec![Certificate { theorem: "simple-metric-link-rigidity", hypotheses: h }], flags);
        }
    }

    // simple metric links against Type-II semi-radial germs of known isotopy type
    if let Some(asrt) = assertion {
        for (x, y) in [(a, b), (b, a)] {
            let cx = &x.link_summary.class;
            let wanted = match asrt {
                LinkAssertion::TrivialKnot => LinkType::Metric1Braid,
                LinkAssertion::Hopf => LinkType::NonTangentHopfLink,
            };
            if cx.unclassified || cx.kind != wanted || y.kind != Some(SemiRadialType::II) {
                continue;
            }
            let mut h = ind_nice("f", x);
            h.push(hyp_bool("f: link class", true, Some(class_name(cx))));
            h.push(hyp_bool("g: semi-radial Type II", true, Some(format!("k_g = {}", kstr(y)))));
            let what = match asrt {
                LinkAssertion::TrivialKnot => "g: link isotopic to the trivial knot",
                LinkAssertion::Hopf => "g: link isotopic to the Hopf link",
            };
            h.push(hyp(what, TriValue::Yes, Some("assumed (user assertion)".into())));
            if all_yes(&h) {
                let theorem = match asrt {
                    LinkAssertion::TrivialKnot => "trivial-knot-type-ii",
                    LinkAssertion::Hopf => "hopf-link-type-ii",
                };
                flags.push("assumption:link-isotopy-type".to_string());
                return Verdict::new(Decision::AmbientEquivalent, vec![Certificate { theorem, hypotheses: h }], flags);
            }
        }
    }

    let negatives_allowed = !ca.unclassified && !cb.unclassified;

    if let (Some(sa), Some(sb)) = (&a.semi_radial, &b.semi_radial) {
        // a semi-radial germ is equivalent to its principal part
        if sa.decomposition.principal == sb.decomposition.principal {
            return Verdict::new(
                Decision::AmbientEquivalent,
                vec![Certificate {
                    theorem: "semi-radial-principal-part",
                    hypotheses: vec![
                        hyp_bool("f, g semi-radial", true, None),
                        hyp_bool("equal principal parts", true, Some(sa.decomposition.principal.to_string())),
                    ],
                }],
                flags,
            );
        }
        let not_simple = |c: &LinkClass| !matches!(c.kind, LinkType::Empty | LinkType::Metric1Braid);
        let not_hopf = |c: &LinkClass| c.kind != LinkType::NonTangentHopfLink;
        let (ka, kb) = (sa.decomposition.kq(), sb.decomposition.kq());
        let k_match = ka == kb || ka == Q::one() / kb;
        let (ta, tb) = (sa.kind, sb.kind);
        if negatives_allowed && not_simple(ca) && not_simple(cb) {
            let mut h = vec![
                hyp_bool("f, g semi-radial", true, None),
                hyp_bool("links neither empty nor metric 1-braid closures", true, Some(format!("{} / {}", class_name(ca), class_name(cb)))),
            ];
            let types = Some(format!("f: Type {:?}, g: Type {:?}", ta, tb));
            let ks = Some(format!("k_f = {}, k_g = {}", kstr(a), kstr(b)));
            let type_i = ta == SemiRadialType::I || tb == SemiRadialType::I;
            if type_i && (ta != tb || !k_match) {
                if ta != tb {
                    h.push(hyp_bool("Type I on one side only", true, types));
                } else {
                    h.push(hyp_bool("k_f ∉ {k_g, 1/k_g}", true, ks));
                }
                return Verdict::new(Decision::NotBilipschitzEquivalent, vec![Certificate { theorem: "semi-radial-type-invariance", hypotheses: h }], flags);
            }
            if !type_i && not_hopf(ca) && not_hopf(cb) {
                h.push(hyp_bool("links not non-tangent Hopf links", true, None));
                if ta != tb {
                    h.push(hyp_bool("types differ", true, types));
                    return Verdict::new(Decision::NotBilipschitzEquivalent, vec![Certificate { theorem: "semi-radial-type-invariance", hypotheses: h }], flags);
                }
                if ta == SemiRadialType::III && !k_match {
                    h.push(hyp_bool("k_f ∉ {k_g, 1/k_g}", true, ks));
                    return Verdict::new(Decision::NotBilipschitzEquivalent, vec![Certificate { theorem: "semi-radial-type-invariance", hypotheses: h }], flags);
                }
            }
        }
    }

    // contact data
    let mut h = ind_nice("f", a);
    h.extend(ind_nice("g", b));
    for (tag, x) in [("f", a), ("g", b)] {
        h.push(hyp(format!("{tag}: condition C"), x.conditions.c.value, x.conditions.c.witness.clone()));
        h.push(hyp(format!("{tag}: condition D"), x.conditions.d.value, x.conditions.d.witness.clone()));
    }
    if negatives_allowed && all_yes(&h) {
        let show = |x: &Analysis| serde_json::to_string(&x.contact_data.nc).unwrap_or_default();
        if a.gamma_inn_true == TriValue::Yes && b.gamma_inn_true == TriValue::Yes && a.contact_data.nc != b.contact_data.nc {
            h.push(hyp_bool("f, g Γ_inn-true", true, None));
            h.push(hyp_bool("NC(f) ≠ NC(g)", true, Some(format!("{} vs {}", show(a), show(b)))));
            return Verdict::new(Decision::NotBilipschitzEquivalent, vec![Certificate { theorem: "normalised-contact-data-invariance", hypotheses: h }], flags);
        }
        if a.contact_data.c != b.contact_data.c {
            let show = |x: &Analysis| serde_json::to_string(&x.contact_data.c).unwrap_or_default();
            h.push(hyp_bool("C(f) ≠ C(g)", true, Some(format!("{} vs {}", show(a), show(b)))));
            return Verdict::new(Decision::NotBilipschitzEquivalent, vec![Certificate { theorem: "contact-data-invariance", hypotheses: h }], flags);
        }
    }
    Verdict::new(Decision::Inconclusive, Vec::new(), flags)
}

fn degree(f: &MixedPoly, p: (i64, i64)) -> Option<i64> {
    f.terms().map(|(e, _)| rdeg(e, p)).min()
}

/// Triviality of the family `f + εθ`.
pub fn family_check(f: &MixedPoly, theta: &MixedPoly, opts: &Options) -> Verdict {
    let a = analyze_poly(&f.to_string(), f.clone(), opts);
    let mut flags = Vec::new();
    if a.uncertified() {
        flags.push("uncertified".to_string());
    }
    if theta.is_zero() {
        return Verdict::new(
            Decision::AmbientEquivalent,
            vec![Certificate { theorem: "constant-family", hypotheses: vec![hyp_bool("θ = 0", true, None)] }],
            flags,
        );
    }
    if let Some(sr) = &a.semi_radial {
        let p = sr.decomposition.weight();
        let d = sr.decomposition.d;
        let dt = degree(theta, p).unwrap_or(i64::MAX);
        if dt >= d {
            let strict = dt > d;
            let h = vec![
                hyp_bool("f semi-radial", true, Some(format!("P = ({}, {}), d = {d}", p.0, p.1))),
                hyp_bool(if strict { "d(P;θ) > d" } else { "d(P;θ) = d" }, true, Some(format!("d(P;θ) = {dt}"))),
            ];
            if !strict {
                flags.push("small-parameter-neighbourhood".to_string());
            }
            return Verdict::new(
                Decision::AmbientEquivalent,
                vec![Certificate { theorem: if strict { "semi-radial-triviality" } else { "semi-radial-triviality-local" }, hypotheses: h }],
                flags,
            );
        }
    }
    let weights = a.gamma_inn.weights();
    let mut h = vec![hyp("f: IND", a.ind, None)];
    for &p in &weights {
        let df = degree(f, p).unwrap_or(0);
        let dt = degree(theta, p).unwrap_or(i64::MAX);
        h.push(hyp_bool(format!("d(P;θ) ≥ d(P;f) for P = ({}, {})", p.0, p.1), dt >= df, Some(format!("{dt} vs {df}"))));
    }
    if weights.is_empty() || !all_yes(&h) {
        return Verdict::new(Decision::Inconclusive, Vec::new(), flags);
    }
    let class = &a.link_summary.class;
    let mut hs = h.clone();
    hs.push(hyp("f: Γ_inn-nice", a.nice.value, None));
    hs.push(hyp_bool("f: link is simple (empty, metric 1-braid closure or non-tangent Hopf link)", is_simple(class), Some(class_name(class))));
    if all_yes(&hs) {
        return Verdict::new(Decision::AmbientEquivalent, vec![Certificate { theorem: "simple-link-family-triviality", hypotheses: hs }], flags);
    }
    if a.conditions.a.value != TriValue::Yes || a.conditions.b.value != TriValue::Yes {
        flags.push(format!(
            "warning: condition A = {:?}, condition B = {:?}; contact orders between components may jump along the family, so bi-Lipschitz triviality can fail",
            a.conditions.a.value, a.conditions.b.value
        ));
    }
    Verdict::new(Decision::TopologicallyEquivalentAtLeast, vec![Certificate { theorem: "link-constancy", hypotheses: h }], flags)
}
