//! The full per-polynomial pipeline behind `mixedlip analyze`.

use serde::Serialize;

use crate::invariants::{
    classify_link, conditions, contact_data, contact_order, slope_profile, tangent_cone, type_of, CompRef, ConeDescription, Conditions,
    ContactData, ContactVerdict, LinkClass, SemiRadialType, SlopeProfile,
};
use crate::links::{gamma_true, link_data, LinkData, LinkOptions};
use crate::newton::{gamma_inn, newton_boundary, radial_decompose, support, terms_at, Diagram, FaceCache, GammaInnResult, SemiRadial, Status};
use crate::nondegen::{obstruction_locus, tri_and, vertex_nice, Method, ObstructionClass, Tolerances, Tri, TriValue};
use crate::poly::{parse, MixedPoly, ParseError};

pub const SCHEMA: &str = "mixedlip.analysis/1";

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub tol: Tolerances,
    pub link: LinkOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexNice {
    pub point: [i64; 2],
    pub face_function: MixedPoly,
    pub result: Tri,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Niceness {
    pub value: TriValue,
    pub basis: &'static str,
    pub vertices: Vec<VertexNice>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiRadialReport {
    #[serde(flatten)]
    pub decomposition: SemiRadial,
    #[serde(rename = "type")]
    pub kind: SemiRadialType,
    pub obstruction: ObstructionClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkSummary {
    #[serde(flatten)]
    pub data: LinkData,
    pub class: LinkClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairContact {
    pub a: CompRef,
    pub b: CompRef,
    pub contact: ContactVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Analysis {
    pub schema: &'static str,
    pub input: String,
    pub polynomial: MixedPoly,
    pub support: Vec<[i64; 2]>,
    pub gamma: Diagram,
    #[serde(rename = "gammaInn")]
    pub gamma_inn: GammaInnResult,
    pub ind: TriValue,
    pub nice: Niceness,
    #[serde(rename = "semiRadial")]
    pub semi_radial: Option<SemiRadialReport>,
    #[serde(rename = "type")]
    pub kind: Option<SemiRadialType>,
    pub slopes: SlopeProfile,
    #[serde(rename = "I_f")]
    pub i_f: Vec<usize>,
    #[serde(rename = "gammaInnTrue")]
    pub gamma_inn_true: TriValue,
    #[serde(rename = "linkSummary")]
    pub link_summary: LinkSummary,
    pub conditions: Conditions,
    pub contacts: Vec<PairContact>,
    #[serde(rename = "contactData")]
    pub contact_data: ContactData,
    #[serde(rename = "tangentCone")]
    pub tangent_cone: ConeDescription,
    pub flags: Vec<String>,
}

impl Analysis {
    pub fn links(&self) -> &LinkData {
        &self.link_summary.data
    }

    /// Some input to the invariants is heuristic rather than certified.
    pub fn uncertified(&self) -> bool {
        self.flags.iter().any(|f| f != "not-ind")
    }
}

pub fn analyze(input: &str, opts: &Options) -> Result<Analysis, ParseError> {
    let f = parse(input)?;
    Ok(analyze_poly(input, f, opts))
}

pub fn analyze_poly(input: &str, f: MixedPoly, opts: &Options) -> Analysis {
    let tol = &opts.tol;
    let mut cache = FaceCache::default();
    let gamma = newton_boundary(&f);
    let gi = gamma_inn(&f, tol, &mut cache);
    let nice = niceness(&f, &gi, tol);
    let semi = radial_decompose(&f, &gi, tol, &mut cache).into_iter().next().map(|sr| SemiRadialReport {
        kind: type_of(&sr),
        obstruction: obstruction_locus(&sr.principal, sr.weight()),
        decomposition: sr,
    });
    let ld = link_data(&f, &gi, &opts.link);
    let i_f = gamma_true(&ld);
    let weights = gi.weights();
    let slopes = slope_profile(&weights, &i_f);
    let conds = conditions(&ld, &slopes);
    let class = classify_link(&f, &ld);
    let mut contacts = Vec::new();
    let refs: Vec<CompRef> = ld
        .faces
        .iter()
        .flat_map(|fl| (0..fl.components.len()).map(move |j| CompRef { face: fl.face, index: j }))
        .collect();
    for (x, &a) in refs.iter().enumerate() {
        for &b in &refs[x + 1..] {
            contacts.push(PairContact { a, b, contact: contact_order(&f, &ld, a, b, Some(&conds)) });
        }
    }
    let cd = contact_data(&weights, &i_f);
    let cone = tangent_cone(&ld, semi.as_ref().map(|s| &s.decomposition));

    let mut flags = Vec::new();
    if gi.status == Status::Heuristic {
        flags.push("gamma-inn-heuristic".to_string());
    }
    match gi.ind {
        TriValue::No => flags.push("not-ind".to_string()),
        TriValue::Unknown => flags.push("ind-unknown".to_string()),
        TriValue::Yes => {}
    }
    if nice.value == TriValue::Unknown {
        flags.push("nice-unknown".to_string());
    }
    for fl in &ld.faces {
        if let Some(e) = &fl.error {
            flags.push(format!("link-failed:face-{}:{e}", fl.face));
        }
    }
    let gamma_inn_true = if !ld.all_ok() {
        TriValue::Unknown
    } else if i_f.len() == weights.len() {
        TriValue::Yes
    } else {
        TriValue::No
    };

    Analysis {
        schema: SCHEMA,
        input: input.to_string(),
        support: support(&f).into_iter().map(|(a, b)| [a, b]).collect(),
        gamma,
        ind: gi.ind,
        gamma_inn: gi,
        nice,
        kind: semi.as_ref().map(|s| s.kind),
        semi_radial: semi,
        slopes,
        i_f,
        gamma_inn_true,
        link_summary: LinkSummary { data: ld, class },
        conditions: conds,
        contacts,
        contact_data: cd,
        tangent_cone: cone,
        flags,
        polynomial: f,
    }
}

/// `V(f_Δ) ∩ (C*)² = ∅` for the vertices of Γ_inn that carry support.
fn niceness(f: &MixedPoly, gi: &GammaInnResult, tol: &Tolerances) -> Niceness {
    let semiholo = f.is_u_semiholomorphic() || f.is_ubar_semiholomorphic() || f.is_v_semiholomorphic() || f.is_vbar_semiholomorphic();
    if semiholo && gi.status == Status::Certified && gi.ind == TriValue::Yes {
        return Niceness { value: TriValue::Yes, basis: "semiholomorphic-ind", vertices: Vec::new() };
    }
    let mut vertices = Vec::new();
    for &(x, y) in &gi.diagram.vertices {
        if !x.is_integer() || !y.is_integer() {
            continue;
        }
        let pt = (*x.numer(), *y.numer());
        let fd = terms_at(f, pt);
        if fd.is_zero() {
            continue;
        }
        // monomials never vanish on the torus
        let result = if fd.len() == 1 { Tri::yes(Method::TorusTrig) } else { vertex_nice(&fd, tol) };
        vertices.push(VertexNice { point: [pt.0, pt.1], face_function: fd, result });
    }
    Niceness { value: tri_and(vertices.iter().map(|v| v.result.value)), basis: "vertex-test", vertices }
}
