//! Randomised property checks, each run for [`CASES`] deterministic cases.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use mixedlip::arcs::{estimate_tord, sample_arc, sample_arc_at_norms, ComponentRef, Radii, RESIDUAL};
use mixedlip::invariants::{compare, contact_data, contact_order, CompRef, ContactKind, parse_q};
use mixedlip::links::{compute_link, slice_braid, LinkComponent, LinkOptions};
use mixedlip::newton::{face_function, gamma_inn, newton_boundary, terms_on_line, Diagram, FaceCache, GammaInnResult, Q};
use mixedlip::nondegen::{face_sing_empty, Stratum, Tolerances, TriValue};
use mixedlip::poly::{exps_point, parse, parse_any, rdeg, rescale, GaussRat, MixedPoly, Side, Var};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

use super::*;

pub const CASES: u32 = 200;

pub fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = Config { cases: CASES, failure_persistence: None, max_global_rejects: 4 * CASES, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng).run(&strategy, test).map_err(|e| e.to_string())
}

fn arb_c64() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| Complex64::new(a, b))
}

fn qi(q: &Q) -> i64 {
    assert!(q.is_integer(), "non-integral vertex {q}");
    q.to_integer()
}

// ------------------------------------------------------------------ poly

pub fn parse_print_roundtrip() -> Result<(), String> {
    run(arb_poly(6, 5), |f| {
        let back = parse_any(&f.to_string()).map_err(|e| TestCaseError::fail(format!("{f}: {e}")))?;
        prop_assert_eq!(back, f);
        Ok(())
    })
}

pub fn conj_swap() -> Result<(), String> {
    run((arb_poly(6, 4), arb_c64(), arb_c64()), |(f, u, v)| {
        let lhs = f.conj().evaluate(u, v);
        let rhs = f.evaluate(u, v).conj();
        prop_assert!(c64_close(lhs, rhs, 1e-12), "{} vs {}", lhs, rhs);
        prop_assert_eq!(f.conj().conj(), f);
        Ok(())
    })
}

pub fn wirtinger_leibniz() -> Result<(), String> {
    let var = prop_oneof![Just(Var::U), Just(Var::UBar), Just(Var::V), Just(Var::VBar)];
    run((arb_poly(4, 3), arb_poly(4, 3), var), |(f, g, x)| {
        let lhs = f.mul(&g).wirtinger(x);
        let rhs = f.wirtinger(x).mul(&g).add(&f.mul(&g.wirtinger(x)));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn rescale_consistency() -> Result<(), String> {
    let side = prop_oneof![Just(Side::U), Just(Side::V)];
    run((arb_germ(6, 4), 1i64..=5, 1i64..=5, side, arb_c64(), 0.0f64..6.3, 1e-3f64..1.0), |(f, p1, p2, side, z, t, r)| {
        let s = rescale(&f, (p1, p2), side);
        let (u, v) = s.point(z, t, r);
        let lhs = f.evaluate(u, v);
        let rhs = s.evaluate(z, t, r) * r.powf(s.lead_exponent());
        let scale: f64 = f.terms().map(|(e, c)| c.abs_f64() * u.norm().powi((e[0] + e[1]) as i32) * v.norm().powi((e[2] + e[3]) as i32)).sum();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * scale.max(1e-300), "{} vs {}", lhs, rhs);
        Ok(())
    })
}

// ---------------------------------------------------------------- newton

type BruteEdge = ((i64, i64), i64, (i64, i64), (i64, i64));

/// Exhaustive lower-hull search: a segment between support points is a
/// compact face iff some positive weight attains its minimum exactly on it.
pub fn brute_hull(s: &[(i64, i64)]) -> (Vec<(i64, i64)>, BTreeSet<BruteEdge>) {
    let mut edges = BTreeSet::new();
    for &a in s {
        for &b in s {
            if !(a.0 < b.0 && a.1 > b.1) {
                continue;
            }
            let (dx, dy) = (b.0 - a.0, a.1 - b.1);
            let g = dx.gcd(&dy);
            let p = (dy / g, dx / g);
            let l = |c: (i64, i64)| p.0 * c.0 + p.1 * c.1;
            let d = l(a);
            if s.iter().any(|&c| l(c) < d) {
                continue;
            }
            let on: Vec<(i64, i64)> = s.iter().copied().filter(|&c| l(c) == d).collect();
            let up = *on.iter().min_by_key(|c| c.0).unwrap();
            let lo = *on.iter().max_by_key(|c| c.0).unwrap();
            if up == a && lo == b {
                edges.insert((p, d, a, b));
            }
        }
    }
    let mut verts: BTreeSet<(i64, i64)> = edges.iter().flat_map(|e| [e.2, e.3]).collect();
    if edges.is_empty() {
        let m = *s.iter().find(|&&m| s.iter().all(|&c| m.0 <= c.0 && m.1 <= c.1)).expect("a minimal point");
        verts.insert(m);
    }
    let mut verts: Vec<(i64, i64)> = verts.into_iter().collect();
    verts.sort_by(|a, b| b.0.cmp(&a.0));
    (verts, edges)
}

fn diagram_edges(dg: &Diagram) -> BTreeSet<BruteEdge> {
    dg.edges
        .iter()
        .map(|e| {
            let a = dg.vertices[e.from];
            let b = dg.vertices[e.to];
            (e.p, e.d, (qi(&a.0), qi(&a.1)), (qi(&b.0), qi(&b.1)))
        })
        .collect()
}

fn arb_support_poly() -> impl Strategy<Value = MixedPoly> {
    (arb_support(), prop::collection::vec((0u32..13, 0u32..13), 1..4), prop::collection::vec(arb_coeff(), 1..4))
        .prop_map(|(s, split, c)| poly_on_support(&s, &split, &c))
}

pub fn hull_vs_brute_force() -> Result<(), String> {
    run(arb_support_poly(), |f| {
        let s = f.support();
        let dg = newton_boundary(&f);
        let (verts, edges) = brute_hull(&s);
        let got: Vec<(i64, i64)> = dg.vertices.iter().map(|(x, y)| (qi(x), qi(y))).collect();
        prop_assert_eq!(got, verts, "vertices of {}", f);
        prop_assert_eq!(diagram_edges(&dg), edges, "edges of {}", f);
        Ok(())
    })
}

pub fn hull_idempotent() -> Result<(), String> {
    run(arb_support_poly(), |f| {
        let dg = newton_boundary(&f);
        let g = MixedPoly::from_terms(dg.vertices.iter().map(|(x, y)| ([qi(x) as u32, 0, qi(y) as u32, 0], GaussRat::one())));
        prop_assert_eq!(newton_boundary(&g), dg);
        Ok(())
    })
}

pub fn weight_edge_duality() -> Result<(), String> {
    run(arb_support_poly(), |f| {
        let dg = newton_boundary(&f);
        for e in &dg.edges {
            prop_assert!(e.p.0 > 0 && e.p.1 > 0 && e.p.0.gcd(&e.p.1) == 1);
            let (a, b) = (dg.vertices[e.from], dg.vertices[e.to]);
            for (x, y) in f.support() {
                let l = e.p.0 * x + e.p.1 * y;
                let on_segment = Q::from(x) >= a.0 && Q::from(x) <= b.0 && l == e.d;
                prop_assert!(l >= e.d);
                prop_assert_eq!(l == e.d, on_segment);
            }
        }
        Ok(())
    })
}

/// Tolerances that keep the randomised suites fast; inconclusive tests only
/// weaken the certification status, never the region properties.
pub fn quick_tol() -> Tolerances {
    Tolerances { max_boxes: 1 << 12, ..Tolerances::default() }
}

fn arb_gamma_inn() -> impl Strategy<Value = (MixedPoly, GammaInnResult)> {
    arb_germ(5, 4).prop_map(|f| {
        let gi = gamma_inn(&f, &quick_tol(), &mut FaceCache::default());
        (f, gi)
    })
}

pub fn gamma_inn_dominance() -> Result<(), String> {
    run(arb_gamma_inn(), |(f, gi)| {
        let dg = &gi.diagram;
        prop_assert!(dg.u_convenient && dg.v_convenient, "Γ_inn of {} not convenient", f);
        prop_assert!(dg.region_contains(&newton_boundary(&f)), "Γ(f) escapes Γ_inn for {}", f);
        for (x, y) in f.support() {
            prop_assert!(dg.contains(Q::from(x), Q::from(y)), "({},{}) below Γ_inn of {}", x, y, f);
        }
        for w in dg.edges.windows(2) {
            prop_assert!(w[0].k() > w[1].k());
        }
        Ok(())
    })
}

pub fn rdeg_minimality() -> Result<(), String> {
    run(arb_gamma_inn(), |(f, gi)| {
        for e in &gi.diagram.edges {
            let (fp, d) = face_function(&f, e.p);
            prop_assert!(f.terms().all(|(m, _)| rdeg(m, e.p) >= d));
            prop_assert!(d >= e.d, "{} lies below the face {:?} of Γ_inn", f, e.p);
            let on = terms_on_line(&f, e.p, e.d);
            prop_assert_eq!(&on, &f.filter(|m| rdeg(m, e.p) == e.d));
            if d == e.d {
                prop_assert_eq!(&fp, &on);
            }
            prop_assert!(fp.terms().all(|(m, _)| rdeg(m, e.p) == d));
        }
        Ok(())
    })
}

// ----------------------------------------------------------------- links

/// Radial `f_P` polynomial in `u` of degree `n`, with leading term `u^n v^s`.
fn arb_radial_u() -> impl Strategy<Value = (MixedPoly, (i64, i64))> {
    (1i64..=4, 1i64..=3, 1u32..=4, 0u32..=2)
        .prop_flat_map(|(p1, p2, n, s)| {
            let d = p1 * n as i64 + p2 * s as i64;
            let lower: Vec<(u32, u32)> = (0..n)
                .filter_map(|a| {
                    let rest = d - p1 * a as i64;
                    (rest % p2 == 0).then(|| (a, (rest / p2) as u32))
                })
                .collect();
            let m = lower.len();
            (
                Just((p1, p2, n, s)),
                Just(lower),
                prop::collection::vec(any::<bool>(), m),
                prop::collection::vec(0u32..8, m),
                prop::collection::vec(arb_coeff(), m + 1),
            )
        })
        .prop_filter_map("needs a lower term", |((p1, p2, n, s), lower, keep, split, c)| {
            let mut f = MixedPoly::monomial(c[m_last(&c)].clone(), [n, 0, s, 0]);
            for (j, &(a, w)) in lower.iter().enumerate() {
                if keep[j] {
                    let b = split[j] % (w + 1);
                    f.add_term([a, 0, w - b, b], c[j].clone());
                }
            }
            (f.len() >= 2).then_some((f, (p1, p2)))
        })
}

fn m_last<T>(v: &[T]) -> usize {
    v.len() - 1
}

fn slice_residual(f: &MixedPoly, p: (i64, i64), z: Complex64, t: f64) -> f64 {
    let s = rescale(f, p, Side::U);
    let val = s.evaluate(z, t, 1.0);
    let scale: f64 = s.terms.iter().map(|x| x.coeff.abs_f64() * z.norm().powi((x.a + x.b) as i32)).sum();
    val.norm() / scale.max(1e-300)
}

pub fn strand_permutation_bijective() -> Result<(), String> {
    run(arb_radial_u(), |(f, p)| {
        let opts = LinkOptions { grid: 256, ..LinkOptions::default() };
        let b = match slice_braid(&f, p, Side::U, &opts) {
            Ok(Some(b)) => b,
            Ok(None) => return Err(TestCaseError::fail(format!("{f} is polynomial in u"))),
            // a root collision on the circle makes the slice singular
            Err(_) => return Err(TestCaseError::reject("singular slice")),
        };
        let top = f.terms().map(|(e, _)| e[0]).max().unwrap();
        let low = f.terms().map(|(e, _)| e[0]).min().unwrap();
        prop_assert_eq!(b.degree, (top - low) as usize, "root count of {}", f);
        prop_assert_eq!(b.strands.len(), b.degree);
        let mut seen = b.perm.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..b.degree).collect::<Vec<_>>(), "perm {:?}", b.perm);
        let step = std::f64::consts::TAU / opts.grid as f64;
        for (j, s) in b.strands.iter().enumerate() {
            prop_assert_eq!(s.len(), opts.grid + 1);
            prop_assert!(s.iter().all(|z| z.norm() > 0.0));
            for m in (0..=opts.grid).step_by(17) {
                let r = slice_residual(&f, p, s[m], m as f64 * step);
                prop_assert!(r < 1e-8, "strand {} off the curve at {}: {}", j, m, r);
            }
            let back = b.strands[b.perm[j]][0];
            prop_assert!(c64_close(s[opts.grid], back, 1e-8), "closure of strand {}", j);
        }
        let cycles = {
            let mut seen = vec![false; b.degree];
            let mut c = 0;
            for j in 0..b.degree {
                if !seen[j] {
                    c += 1;
                    let mut x = j;
                    while !seen[x] {
                        seen[x] = true;
                        x = b.perm[x];
                    }
                }
            }
            c
        };
        prop_assert_eq!(b.components, cycles);
        Ok(())
    })
}

pub fn grid_doubling_stable() -> Result<(), String> {
    run(arb_radial_u(), |(f, p)| {
        let coarse = LinkOptions { grid: 256, ..LinkOptions::default() };
        let fine = LinkOptions { grid: 512, ..LinkOptions::default() };
        let (a, b) = match (slice_braid(&f, p, Side::U, &coarse), slice_braid(&f, p, Side::U, &fine)) {
            (Ok(Some(a)), Ok(Some(b))) => (a, b),
            _ => return Err(TestCaseError::reject("singular slice")),
        };
        prop_assert_eq!(a.degree, b.degree);
        prop_assert_eq!(&a.perm, &b.perm, "closure permutation of {}", f);
        prop_assert_eq!(a.components, b.components);
        for (sa, sb) in a.strands.iter().zip(&b.strands) {
            for m in 0..=coarse.grid {
                prop_assert!(c64_close(sa[m], sb[2 * m], 1e-8));
            }
        }
        Ok(())
    })
}

// ------------------------------------------------------------ invariants

/// A strictly decreasing chain of slopes `k = p1/p2` with a random true set.
fn arb_slopes() -> impl Strategy<Value = (Vec<(i64, i64)>, Vec<usize>)> {
    prop::collection::btree_set((1i64..=9, 1i64..=9), 1..=6)
        .prop_map(|s| {
            let mut w: Vec<(i64, i64)> = s
                .into_iter()
                .map(|(a, b)| {
                    let g = a.gcd(&b);
                    (a / g, b / g)
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            w.sort_by(|x, y| Q::new(y.0, y.1).cmp(&Q::new(x.0, x.1)));
            w
        })
        .prop_flat_map(|w| {
            let n = w.len();
            (Just(w), prop::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(w, keep)| {
            let mut i_f: Vec<usize> = (1..=w.len()).filter(|&i| keep[i - 1]).collect();
            if i_f.is_empty() {
                i_f.push(1);
            }
            (w, i_f)
        })
}

pub fn contact_data_swap_invariant() -> Result<(), String> {
    run(arb_slopes(), |(w, i_f)| {
        let n = w.len();
        let ws: Vec<(i64, i64)> = w.iter().rev().map(|&(a, b)| (b, a)).collect();
        let mut is: Vec<usize> = i_f.iter().map(|&i| n + 1 - i).collect();
        is.sort_unstable();
        let (c, cs) = (contact_data(&w, &i_f), contact_data(&ws, &is));
        prop_assert_eq!(&c.c, &cs.c);
        prop_assert_eq!(&c.nc, &cs.nc);
        for e in &c.c {
            prop_assert!(parse_q(&e.kappa).unwrap() >= Q::one());
        }
        Ok(())
    })
}

/// Fixture index and a pair of component references in it.
fn arb_fixture_pair() -> impl Strategy<Value = (usize, CompRef, CompRef)> {
    let refs: Vec<(usize, Vec<CompRef>)> = fixture_analyses()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let r = a.links().faces.iter().flat_map(|fl| (0..fl.components.len()).map(move |j| CompRef { face: fl.face, index: j })).collect();
            (i, r)
        })
        .filter(|(_, r): &(usize, Vec<CompRef>)| r.len() >= 2)
        .collect();
    prop::sample::select(refs).prop_flat_map(|(i, r)| {
        let n = r.len();
        (Just(i), Just(r), 0..n, 0..n)
    })
    .prop_filter_map("distinct components", |(i, r, x, y)| (x != y).then(|| (i, r[x], r[y])))
}

pub fn contact_symmetry_and_bounds() -> Result<(), String> {
    run(arb_fixture_pair(), |(i, a, b)| {
        let an = &fixture_analyses()[i];
        let ld = an.links();
        let ab = contact_order(&an.polynomial, ld, a, b, Some(&an.conditions));
        let ba = contact_order(&an.polynomial, ld, b, a, Some(&an.conditions));
        prop_assert_eq!(ab.kind, ba.kind, "{} {} {}", FIXTURES[i], a, b);
        prop_assert_eq!(&ab.value, &ba.value);
        let k = |face: usize| {
            let p = an.gamma_inn.diagram.edges[face - 1].p;
            Q::new(p.0, p.1)
        };
        let (fi, fj) = (a.face.min(b.face), a.face.max(b.face));
        let bound = k(fj).max(Q::one() / k(fi));
        if let Some(v) = ab.value.as_deref().and_then(parse_q) {
            prop_assert!(v >= Q::one() && v <= bound, "{} outside [1, {}] for {} {} {}", v, bound, FIXTURES[i], a, b);
        }
        if ab.kind == ContactKind::Exact {
            prop_assert!(ab.value.is_some());
        }
        Ok(())
    })
}

pub fn compare_symmetric() -> Result<(), String> {
    let n = fixture_analyses().len();
    run((0..n, 0..n), |(i, j)| {
        let (a, b) = (&fixture_analyses()[i], &fixture_analyses()[j]);
        prop_assert_eq!(compare(a, b, None).decision, compare(b, a, None).decision, "{} vs {}", FIXTURES[i], FIXTURES[j]);
        Ok(())
    })
}

// ----------------------------------------------------------------- arcs

struct ArcPool {
    f: MixedPoly,
    side: Side,
    k: Vec<f64>,
    comps: Vec<(ComponentRef, LinkComponent)>,
}

/// Components with full projection, grouped by polynomial and side, so any
/// three of them can be compared at one common base angle.
fn arc_pools() -> &'static [ArcPool] {
    static CELL: OnceLock<Vec<ArcPool>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for s in [EX_NC_F, EX_NC_G, EX_NEWTON, EX_COUNTER] {
            let f = parse(s).unwrap();
            let gi = gamma_inn(&f, &Tolerances::default(), &mut FaceCache::default());
            let k: Vec<f64> = gi.weights().iter().map(|p| p.0 as f64 / p.1 as f64).collect();
            for side in [Side::U, Side::V] {
                let mut comps = Vec::new();
                for face in 1..=gi.diagram.n_faces() {
                    let Ok(cs) = compute_link(&f, &gi, face, side, &LinkOptions::default()) else { continue };
                    for (index, c) in cs.into_iter().enumerate() {
                        if c.proj().is_full() {
                            comps.push((ComponentRef { face, side, index }, c));
                        }
                    }
                }
                if comps.len() >= 3 {
                    out.push(ArcPool { f: f.clone(), side, k: k.clone(), comps });
                }
            }
        }
        out
    })
}

pub fn non_archimedean() -> Result<(), String> {
    let pools = arc_pools().len();
    let strategy = (0..pools)
        .prop_flat_map(|p| {
            let n = arc_pools()[p].comps.len();
            (Just(p), prop::sample::subsequence((0..n).collect::<Vec<_>>(), 3).prop_shuffle(), 0.0f64..std::f64::consts::TAU, any::<u8>())
        });
    run(strategy, |(p, idx, angle, pick)| {
        let pool = &arc_pools()[p];
        let mut arcs: Vec<mixedlip::arcs::Arc> = Vec::new();
        for &j in &idx {
            let (r, c) = &pool.comps[j];
            let xs = c.crossings(angle);
            prop_assume!(!xs.is_empty());
            let z0 = xs[pick as usize % xs.len()];
            let k = pool.k[r.face - 1];
            let arc = match arcs.first() {
                None => sample_arc(&pool.f, *r, k, angle, z0, &Radii::default()),
                Some(a) => sample_arc_at_norms(&pool.f, *r, k, angle, z0, &a.points.iter().map(|p| (p.0.norm_sqr() + p.1.norm_sqr()).sqrt()).collect::<Vec<_>>()),
            };
            prop_assert!(arc.residuals.iter().all(|&x| x < RESIDUAL), "residual above threshold on {}", r);
            arcs.push(arc);
        }
        let q = |a: usize, b: usize| estimate_tord(&arcs[a], &arcs[b]).map(|e| e.q_hat);
        let (Ok(q12), Ok(q13), Ok(q23)) = (q(0, 1), q(0, 2), q(1, 2)) else {
            return Err(TestCaseError::reject("too few accepted points"));
        };
        prop_assert!(q23 >= q12.min(q13) - 0.1, "q12={} q13={} q23={} side {:?}", q12, q13, q23, pool.side);
        Ok(())
    })
}

// ---------------------------------------------------------------- nondegen

/// `(u^p2 − c·v^p1)²·(u^p2 + e·v^p1)` is singular along a whole torus orbit.
fn arb_singular_face() -> impl Strategy<Value = MixedPoly> {
    (1u32..=3, 1u32..=3, arb_coeff(), arb_coeff()).prop_map(|(p1, p2, c, e)| {
        let mk = |k: GaussRat| MixedPoly::from_terms([([p2, 0, 0, 0], GaussRat::one()), ([0, 0, p1, 0], k)]);
        mk(-c).pow(2).mul(&mk(e))
    })
}

/// Rank of the real Jacobian of `(Re f, Im f)` at `(u, v)` is below two.
fn real_jacobian_defect(f: &MixedPoly, u: Complex64, v: Complex64) -> f64 {
    let d = |x: Var| f.wirtinger(x).evaluate(u, v);
    let i = Complex64::i();
    let cols = [d(Var::U) + d(Var::UBar), i * (d(Var::U) - d(Var::UBar)), d(Var::V) + d(Var::VBar), i * (d(Var::V) - d(Var::VBar))];
    let scale = |g: &MixedPoly| -> f64 {
        g.terms().map(|(e, c)| {
            let (x, y) = exps_point(e);
            c.abs_f64() * u.norm().powi(x as i32) * v.norm().powi(y as i32)
        }).sum()
    };
    let big = [Var::U, Var::UBar, Var::V, Var::VBar].iter().map(|&x| scale(&f.wirtinger(x))).fold(0.0, f64::max).powi(2).max(1e-300);
    let mut m = 0.0f64;
    for a in 0..4 {
        for b in a + 1..4 {
            m = m.max((cols[a].conj() * cols[b]).im.abs());
        }
    }
    m / big
}

pub fn nondegeneracy_no_is_sound() -> Result<(), String> {
    run(arb_singular_face(), |f| {
        let t = face_sing_empty(&f, Stratum::Torus, &Tolerances::default());
        prop_assert!(t.value != TriValue::Yes, "{} reported non-degenerate", f);
        if t.value == TriValue::No {
            let w = t.witness.ok_or_else(|| TestCaseError::fail("no witness"))?;
            let (u, v) = (w.u(), w.v());
            prop_assert!(u.norm() > 1e-6 && v.norm() > 1e-6);
            let scale: f64 = f.terms().map(|(e, c)| {
                let (x, y) = exps_point(e);
                c.abs_f64() * u.norm().powi(x as i32) * v.norm().powi(y as i32)
            }).sum();
            prop_assert!(f.evaluate(u, v).norm() <= 1e-8 * scale, "f(w) = {}", f.evaluate(u, v));
            prop_assert!(real_jacobian_defect(&f, u, v) <= 1e-6, "witness of {} is regular", f);
        }
        Ok(())
    })
}
