//! Seeded verification campaigns. Each one evaluates both sides of an
//! identity by separate code paths and reports per-instance records.

use std::collections::BTreeMap;

use dabru_core::affine::AffineGround;
use dabru_core::bruhat::order::{candidates, CoordMagnitude};
use dabru_core::bruhat::{
    self, decomposition_check, deodhar_count, edge, inv_pp, leq, shorten_chain, Budget, Decomposition,
    DeodharVerdict, LeqOutcome,
};
use dabru_core::daweyl::{
    self, da_act, da_reflection, mul_reflection, normalize, rn_act, rn_pairing, rn_rotate, sigma, DARootRN, Elt,
    RawDA, Root,
};
use dabru_core::ground::{FiniteGround, Ground};
use dabru_core::length::{
    self, build_window, close_under, ell, ell_eps, ell_via_eq19, enlarge_window, height_identity_check,
    minimal_height_window, window_flags, EpsLength, Window,
};
use dabru_core::oracle::{brute_interval, brute_inv_pp, certified_box, identify, CoxeterElt, CoxeterGroup};
use dabru_core::Result;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::grammar::{format_rn, Syntax};
use crate::report::{Check, Record, Report, Status};
use crate::sample::{instance_rng, up_edge, Sample, Shape};

pub const LENGTH_DIFF: Check =
    Check { name: "length-diff", anchor: "length difference: ell(x s) - ell(x) = #Inv++_x(s) on up-edges" };
pub const PHIPSI: Check =
    Check { name: "phipsi", anchor: "decomposition: Inv_S(s x^-1) = im(phi) disjoint-union im(psi)" };
pub const HEIGHT: Check =
    Check { name: "height", anchor: "height identity: 2ht(beta^v) = sum of <beta^v, g> over a window closed under |s_beta|" };
pub const ROTATION: Check =
    Check { name: "rotation", anchor: "(r,n) indexing: sigma, rotation about beta[r,n], reflection formula" };
pub const SINGLE_AFFINE: Check =
    Check { name: "single-affine", anchor: "finite ground: ell is the Coxeter length and the order is the Bruhat order" };
pub const COVERS: Check =
    Check { name: "covers", anchor: "ADE ground: x -> x s is a cover iff #Inv++_x(s) = 1" };
pub const DEODHAR: Check =
    Check { name: "deodhar", anchor: "Deodhar inequality: #{beta[n] : x <= y s <= z} >= ell(z) - ell(x)" };

/// Instance count and seed of a sampled campaign.
#[derive(Clone, Copy, Debug)]
pub struct Campaign {
    pub samples: u64,
    pub seed: u64,
    pub shape: Option<Shape>,
    /// Overrides the per-instance search budget where a campaign has one.
    pub budget: Option<Budget>,
}

impl Campaign {
    pub fn new(samples: u64, seed: u64) -> Campaign {
        Campaign { samples, seed, shape: None, budget: None }
    }

    fn shape<G: Ground>(&self, g: &G) -> Shape {
        self.shape.unwrap_or_else(|| Shape::for_rank(g.finite().rank()))
    }
}

/// Runs `body`, turning an error into a failing record that keeps `inputs`.
fn guarded(index: u64, inputs: Value, body: impl FnOnce(&Value) -> Result<Record>) -> Record {
    body(&inputs).unwrap_or_else(|e| Record::error(index, inputs, e))
}

fn with_inputs(inputs: &Value, extra: Value) -> Value {
    let mut m = inputs.as_object().cloned().unwrap_or_default();
    if let Value::Object(e) = extra {
        m.extend(e);
    }
    Value::Object(m)
}

fn eps_json(e: EpsLength) -> Value {
    json!([e.base, e.eps])
}

/// `ell = ell_via_eq19`, and the four-case membership agrees with the direct
/// action on `θ[m]` for every `θ ∈ window` and `m` in a range two wider than
/// where membership can hold.
pub fn consistency<G: Ground>(g: &G, x: &Elt<G>, window: &Window<G::Root>) -> Result<bool> {
    if ell(g, x)? != ell_via_eq19(g, x)? {
        return Ok(false);
    }
    let span = window.roots.iter().map(|t| g.pair(&x.mu, &g.act_root(&x.w, t)).abs()).max().unwrap_or(0) + 2;
    for beta in &window.roots {
        for n in -span..=span {
            let root = Root::<G> { beta: *beta, n };
            if length::inv_member(g, x, &root) != length::inv_member_direct(g, x, &root) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`consistency`] for every element of `elts` on a common window.
fn all_consistent<'a, G: Ground + 'a>(
    g: &G,
    elts: impl IntoIterator<Item = &'a Elt<G>>,
    window: &Window<G::Root>,
) -> Result<bool> {
    for x in elts {
        if !consistency(g, x, window)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn edge_inputs<G: Syntax>(g: &G, x: &Elt<G>, gamma: &Root<G>) -> Value {
    json!({ "x": g.format_element(x), "root": g.format_root(gamma) })
}

fn sampled_edge<G: Sample>(g: &G, c: &Campaign, index: u64) -> Result<(Elt<G>, Root<G>)> {
    up_edge(g, &mut instance_rng(c.seed, index), &c.shape(g))
}

// ---------------------------------------------------------------------------

pub fn length_diff_instance<G: Sample>(g: &G, x: &Elt<G>, gamma: &Root<G>, index: u64) -> Record {
    guarded(index, edge_inputs(g, x, gamma), |inputs| {
        let d = bruhat::length_diff(g, x, gamma)?;
        let xs = mul_reflection(g, x, gamma);
        let pp = inv_pp(g, x, gamma)?;
        let cert = certified_box(g, x, gamma)?;
        let oracle_agrees = brute_inv_pp(g, x, gamma, cert.r, cert.n)? == pp;
        let (ex, exs) = (ell_eps(g, x)?, ell_eps(g, &xs)?);
        let window = build_window(g, x, gamma)?;
        let consistent = consistency(g, x, &window)? && consistency(g, &xs, &window)?;
        let ok = d.holds() && oracle_agrees && exs > ex && consistent;
        Ok(Record::new(
            index,
            Status::from_bool(ok),
            with_inputs(
                inputs,
                json!({
                    "xs": g.format_element(&xs),
                    "ell_x": d.ell_x,
                    "ell_xs": d.ell_xs,
                    "inv_pp": d.inv_pp,
                    "oracle_box": [cert.r, cert.n],
                    "oracle_agrees": oracle_agrees,
                    "ell_eps_x": eps_json(ex),
                    "ell_eps_xs": eps_json(exs),
                    "eps_increases": exs > ex,
                    "consistent": consistent,
                }),
            ),
        ))
    })
}

/// Main theorem, `ℓ_ε` compatibility and internal consistency on sampled
/// up-edges.
pub fn length_diff<G: Sample>(g: &G, c: &Campaign) -> Report {
    let records = (0..c.samples)
        .into_par_iter()
        .map(|i| match sampled_edge(g, c, i) {
            Ok((x, gamma)) => length_diff_instance(g, &x, &gamma, i),
            Err(e) => Record::error(i, json!({}), e),
        })
        .collect();
    Report::new(LENGTH_DIFF, g.label(), Some(c.seed), records)
}

// ---------------------------------------------------------------------------

fn decomposition_json(d: &Decomposition) -> Value {
    json!({
        "source": d.source,
        "target": d.target,
        "inv_pp": d.inv_pp,
        "phi_injective": d.phi_injective,
        "psi_injective": d.psi_injective,
        "disjoint": d.disjoint,
        "covers": d.covers,
        "counts_match": d.counts_match,
    })
}

/// Extra positive roots added to the minimal window for the second pass.
pub const ENLARGE_BY: i64 = 2;

pub fn phipsi_instance<G: Sample>(g: &G, x: &Elt<G>, gamma: &Root<G>, index: u64) -> Record {
    guarded(index, edge_inputs(g, x, gamma), |inputs| {
        let xs = mul_reflection(g, x, gamma);
        let small = build_window(g, x, gamma)?;
        let big = enlarge_window(g, x, gamma, &small, ENLARGE_BY);
        let mut ok = true;
        let mut windows = Vec::new();
        for w in [&small, &big] {
            let flags = window_flags(g, x, gamma, w)?;
            let d = decomposition_check(g, x, gamma, w)?;
            ok &= flags.all() && d.ok();
            windows.push(json!({ "size": w.len(), "admissible": flags.all(), "check": decomposition_json(&d) }));
        }
        let consistent = consistency(g, x, &big)? && consistency(g, &xs, &big)?;
        ok &= consistent;
        Ok(Record::new(
            index,
            Status::from_bool(ok),
            with_inputs(inputs, json!({ "windows": windows, "consistent": consistent })),
        ))
    })
}

pub fn phipsi<G: Sample>(g: &G, c: &Campaign) -> Report {
    let records = (0..c.samples)
        .into_par_iter()
        .map(|i| match sampled_edge(g, c, i) {
            Ok((x, gamma)) => phipsi_instance(g, &x, &gamma, i),
            Err(e) => Record::error(i, json!({}), e),
        })
        .collect();
    Report::new(PHIPSI, g.label(), Some(c.seed), records)
}

// ---------------------------------------------------------------------------

/// Height identity for every positive ground root of size at most
/// `max_size`, on the minimal window and on the minimal window plus all
/// positive roots of size at most `size + ENLARGE_BY`, re-closed.
pub fn height<G: Syntax>(g: &G, max_size: i64) -> Report {
    let roots = g.positive_roots_up_to(max_size);
    let records = roots
        .par_iter()
        .enumerate()
        .map(|(i, beta)| {
            let (theta, r) = g.ground_root_parts(beta);
            let inputs = json!({ "theta": theta, "r": r });
            guarded(i as u64, inputs, |inputs| {
                let small = minimal_height_window(g, beta);
                let mut big = small.clone();
                big.roots.extend(g.positive_roots_up_to(g.root_size(beta) + ENLARGE_BY));
                close_under(g, beta, &mut big);
                let lhs = g.two_ht(&g.coroot(beta));
                let mut ok = true;
                let mut windows = Vec::new();
                for w in [&small, &big] {
                    let rhs: i64 = w.roots.iter().map(|t| g.root_pairing(beta, t)).sum();
                    let checked = height_identity_check(g, beta, w)?;
                    ok &= checked && lhs == rhs;
                    windows.push(json!({ "size": w.len(), "sum": rhs }));
                }
                Ok(Record::new(
                    i as u64,
                    Status::from_bool(ok),
                    with_inputs(inputs, json!({ "two_ht": lhs, "windows": windows })),
                ))
            })
        })
        .collect();
    let mut rep = Report::new(HEIGHT, g.label(), None, records);
    rep.extra.insert("max_size".into(), json!(max_size));
    rep
}

// ---------------------------------------------------------------------------

/// `s_{β[r,n]}(θ[s,m]) = θ[s,m] - <θ[s,m], β[r,n]> β[r,n]` evaluated on raw
/// coordinates, then normalized.
fn reflect_rn(g: &AffineGround, b: &DARootRN, t: &DARootRN) -> daweyl::Signed<AffineGround> {
    let k = rn_pairing(g, b, t);
    let (braw, traw) = (b.to_raw(), t.to_raw());
    let theta = dabru_core::rootsys::FiniteRoot(traw.g.theta.0 - braw.g.theta.0.scale(k));
    normalize(
        g,
        RawDA { g: dabru_core::affine::AffRealRoot::new(theta, traw.g.r - k * braw.g.r), m: traw.m - k * braw.m },
    )
}

/// Exhaustive over `β[r,n]` with `|r|, |n| <= grid`: σ antisymmetry away
/// from `(0,0)`, the rotation law against every `β[s,m]` in the grid, the
/// reflection formula against every `θ[s,m]`, and `rn_act = da_act` for
/// `elements` seeded elements.
pub fn rotation(g: &AffineGround, grid: i64, elements: u64, seed: u64) -> Report {
    let shape = Shape::for_rank(g.rank());
    let xs: Vec<Elt<AffineGround>> =
        (0..elements).map(|i| g.random_element(&mut instance_rng(seed, i), &shape)).collect();
    let pos = g.sys.positive_roots().to_vec();
    let mut points = Vec::new();
    for beta in &pos {
        for r in -grid..=grid {
            for n in -grid..=grid {
                points.push(DARootRN::new(*beta, r, n));
            }
        }
    }
    let records = points
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let inputs = json!({ "root": format_rn(g, b) });
            guarded(i as u64, inputs, |inputs| {
                let (r, n) = b.point();
                let sigma_ok = if (r, n) == (0, 0) {
                    sigma(0, 0) == 1 && sigma(-r, -n) == 1
                } else {
                    sigma(r, n) == -sigma(-r, -n)
                };
                let s = da_reflection(g, &b.to_da(g));
                let mut rotation_ok = true;
                let mut reflection_ok = true;
                for t in &pos {
                    for sr in -grid..=grid {
                        for sn in -grid..=grid {
                            let theta = DARootRN::new(*t, sr, sn);
                            let image = da_act(g, &s, &theta.to_da(g));
                            reflection_ok &= image == reflect_rn(g, b, &theta);
                            if *t == b.beta {
                                rotation_ok &= DARootRN::from_da(g, &image.root) == rn_rotate(b, &theta)?;
                            }
                        }
                    }
                }
                let mut act_ok = true;
                for x in &xs {
                    let (img, sign) = rn_act(g, x, b);
                    let direct = da_act(g, x, &b.to_da(g));
                    act_ok &= img.to_da(g) == direct.root && sign == direct.sign as i64;
                }
                let ok = sigma_ok && rotation_ok && reflection_ok && act_ok;
                Ok(Record::new(
                    i as u64,
                    Status::from_bool(ok),
                    with_inputs(
                        inputs,
                        json!({
                            "sigma": sigma_ok,
                            "rotation": rotation_ok,
                            "reflection": reflection_ok,
                            "rn_act": act_ok,
                        }),
                    ),
                ))
            })
        })
        .collect();
    let mut rep = Report::new(ROTATION, g.label(), Some(seed), records);
    let touched = Window::new(g.positive_roots_up_to(1));
    let consistent = all_consistent(g, &xs, &touched);
    rep.extra.insert("consistent".into(), json!(matches!(consistent, Ok(true))));
    if !matches!(consistent, Ok(true)) {
        let detail = consistent.map_or_else(|e| e.to_string(), |_| "ell or membership disagrees".into());
        let index = rep.records.len() as u64;
        rep.records.push(Record::error(index, json!({ "kind": "elements" }), detail));
    }
    rep.extra.insert("grid".into(), json!(grid));
    rep.extra.insert("elements".into(), json!(elements));
    rep
}

// ---------------------------------------------------------------------------

fn cox_word(e: &CoxeterElt) -> String {
    if e.word.is_empty() {
        "e".into()
    } else {
        e.word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
    }
}

/// Every element of the affine Weyl group with Coxeter length at most
/// `ell_len` (compares `ell` with `cox_length`), and every pair with length
/// at most `leq_len` (compares `leq` with the subword criterion).
pub fn single_affine(f: &FiniteGround, ell_len: usize, leq_len: usize) -> Report {
    let cox = CoxeterGroup::affine(&f.sys);
    let all = cox.elements_up_to(ell_len.max(leq_len));
    let window = Window::new(f.positive_roots_up_to(0));
    let ell_records: Vec<Record> = all
        .par_iter()
        .filter(|e| e.word.len() <= ell_len)
        .map(|e| {
            let x = identify(f, e);
            let inputs = json!({ "kind": "ell", "word": cox_word(e), "x": f.format_element(&x) });
            guarded(0, inputs, |inputs| {
                let (l, c) = (ell(f, &x)?, cox.cox_length(e) as i64);
                let consistent = consistency(f, &x, &window)?;
                Ok(Record::new(
                    0,
                    Status::from_bool(l == c && consistent),
                    with_inputs(inputs, json!({ "ell": l, "cox_length": c, "consistent": consistent })),
                ))
            })
        })
        .collect();
    let small: Vec<(&CoxeterElt, Elt<FiniteGround>)> =
        all.iter().filter(|e| e.word.len() <= leq_len).map(|e| (e, identify(f, e))).collect();
    let pairs: Vec<(usize, usize)> = (0..small.len()).flat_map(|a| (0..small.len()).map(move |b| (a, b))).collect();
    let leq_records: Vec<Record> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let ((ea, xa), (eb, xb)) = (&small[a], &small[b]);
            let inputs = json!({ "kind": "leq", "x": cox_word(ea), "y": cox_word(eb) });
            guarded(0, inputs, |inputs| {
                let expect = cox.cox_leq(ea, eb);
                let got = leq(f, xa, xb, Budget::new(0, 0))?;
                let ok = match got {
                    LeqOutcome::Yes(_) => expect,
                    LeqOutcome::No => !expect,
                    LeqOutcome::Inconclusive { .. } => false,
                };
                Ok(Record::new(
                    0,
                    Status::from_bool(ok),
                    with_inputs(inputs, json!({ "leq": got.is_yes(), "cox_leq": expect })),
                ))
            })
        })
        .collect();
    let mut records = ell_records;
    records.extend(leq_records);
    for (i, r) in records.iter_mut().enumerate() {
        r.index = i as u64;
    }
    let mut rep = Report::new(SINGLE_AFFINE, f.label(), None, records);
    rep.extra.insert("ell_max_length".into(), json!(ell_len));
    rep.extra.insert("leq_max_length".into(), json!(leq_len));
    rep.extra.insert("pairs".into(), json!(pairs.len()));
    rep
}

// ---------------------------------------------------------------------------

pub fn chain_record(g: &AffineGround, x: &Elt<AffineGround>, gamma: &Root<AffineGround>, index: u64) -> Record {
    guarded(index, edge_inputs(g, x, gamma), |inputs| {
        let xs = mul_reflection(g, x, gamma);
        let chain = shorten_chain(g, x, &DARootRN::from_da(g, gamma))?;
        let mut ok = chain.elements.len() == 4 && chain.elements[0] == *x && chain.elements[3] == xs;
        for (z, s) in chain.elements.iter().zip(&chain.steps) {
            let e = edge(g, z, &s.to_da(g))?;
            ok &= e.is_some_and(|e| e.up) && bruhat::length_diff_check(g, z, &s.to_da(g))?;
        }
        let lengths = chain.elements.iter().map(|z| ell(g, z)).collect::<Result<Vec<_>>>()?;
        let consistent = all_consistent(g, &chain.elements, &build_window(g, x, gamma)?)?;
        Ok(Record::new(
            index,
            Status::from_bool(ok && consistent),
            with_inputs(
                inputs,
                json!({
                    "kind": "chain",
                    "consistent": consistent,
                    "route": format!("{:?}", chain.route),
                    "frame": format!("{:?}", chain.frame),
                    "steps": chain.steps.iter().map(|s| format_rn(g, s)).collect::<Vec<_>>(),
                    "lengths": lengths,
                }),
            ),
        ))
    })
}

pub fn interval_record(g: &AffineGround, x: &Elt<AffineGround>, gamma: &Root<AffineGround>, index: u64) -> Record {
    guarded(index, edge_inputs(g, x, gamma), |inputs| {
        let xs = mul_reflection(g, x, gamma);
        let cert = certified_box(g, x, gamma)?;
        let dflt = Budget::default_for::<AffineGround>(&[x, &xs]);
        let budget = Budget::new(cert.r.max(dflt.r), cert.n.max(dflt.n));
        let iv = brute_interval(g, x, &xs, budget.r, budget.n)?;
        let mut expect = vec![*x, xs];
        expect.sort();
        let ok = iv.elements == expect;
        let consistent = all_consistent(g, &expect, &build_window(g, x, gamma)?)?;
        Ok(Record::new(
            index,
            Status::from_bool(ok && consistent),
            with_inputs(
                inputs,
                json!({
                    "kind": "interval",
                    "consistent": consistent,
                    "budget": [budget.r, budget.n],
                    "depth": iv.depth,
                    "interval_size": iv.elements.len(),
                }),
            ),
        ))
    })
}

const COVER_CHUNK: u64 = 512;

/// Collects `quota` sampled up-edges with `ℓ`-difference `>= 2` (checked by
/// an explicit chain) and `quota` with difference 1 (checked by a bounded
/// interval scan). Instances are taken in index order.
pub fn covers(g: &AffineGround, c: &Campaign, quota: usize) -> Report {
    let cap = (quota as u64).max(1) * 400;
    let (mut long, mut short) = (0usize, 0usize);
    let mut records = Vec::new();
    let mut next = 0u64;
    while (long < quota || short < quota) && next < cap {
        let diffs: Vec<(u64, Result<(Elt<AffineGround>, Root<AffineGround>, i64)>)> = (next..next + COVER_CHUNK)
            .into_par_iter()
            .map(|i| {
                let v = sampled_edge(g, c, i).and_then(|(x, gamma)| {
                    let d = ell(g, &mul_reflection(g, &x, &gamma))? - ell(g, &x)?;
                    Ok((x, gamma, d))
                });
                (i, v)
            })
            .collect();
        let mut todo = Vec::new();
        for (i, v) in diffs {
            match v {
                Ok((x, gamma, d)) if d >= 2 && long < quota => {
                    long += 1;
                    todo.push((i, x, gamma, true));
                }
                Ok((x, gamma, 1)) if short < quota => {
                    short += 1;
                    todo.push((i, x, gamma, false));
                }
                Ok(_) => {}
                Err(e) => records.push(Record::error(i, json!({}), e)),
            }
        }
        let done: Vec<Record> = todo
            .par_iter()
            .map(|(i, x, gamma, is_long)| {
                if *is_long {
                    chain_record(g, x, gamma, *i)
                } else {
                    interval_record(g, x, gamma, *i)
                }
            })
            .collect();
        records.extend(done);
        next += COVER_CHUNK;
    }
    records.sort_by_key(|r| r.index);
    let mut routes: BTreeMap<String, usize> = BTreeMap::new();
    let mut max_budget = (0i64, 0i64);
    for r in &records {
        if let Some(route) = r.fields.get("route").and_then(Value::as_str) {
            let key = match r.fields.get("frame").and_then(Value::as_str) {
                Some(frame) if route != "Search" && route != "OtherRoot" => format!("{route} in {frame} frame"),
                _ => route.to_string(),
            };
            *routes.entry(key).or_default() += 1;
        }
        if let Some(b) = r.fields.get("budget").and_then(Value::as_array) {
            max_budget.0 = max_budget.0.max(b[0].as_i64().unwrap_or(0));
            max_budget.1 = max_budget.1.max(b[1].as_i64().unwrap_or(0));
        }
    }
    if long < quota || short < quota {
        records.push(Record::new(
            next,
            Status::Fail,
            json!({ "kind": "quota", "error": format!("only {long} long and {short} short edges in {next} samples") }),
        ));
    }
    let mut rep = Report::new(COVERS, g.label(), Some(c.seed), records);
    rep.extra.insert("chains".into(), json!(long));
    rep.extra.insert("intervals".into(), json!(short));
    let off_slope: usize = routes.iter().filter(|(k, _)| k.contains("off_slope: true")).map(|(_, v)| v).sum();
    rep.extra.insert("routes".into(), json!(routes));
    rep.extra.insert("case3_off_slope".into(), json!(off_slope));
    rep.extra.insert("max_interval_budget".into(), json!([max_budget.0, max_budget.1]));
    rep.extra.insert("interval_depth".into(), json!(2));
    rep
}

// ---------------------------------------------------------------------------

/// Largest `ℓ(z) - ℓ(x)` drawn for Deodhar triples.
pub const DEODHAR_SPAN: i64 = 4;
/// Budget of the random up-edges that build a triple.
const STEP_BUDGET: Budget = Budget { r: 2, n: 2 };
/// Floor of the counting budget. In A1 the undercounts stop changing from
/// here up to at least `(24, 24)`.
pub const DEODHAR_BUDGET: Budget = Budget { r: 10, n: 10 };

/// A random chain `x = z_0 < z_1 < ... < z_k` of budgeted up-edges with
/// `ℓ(z_k) - ℓ(x)` at most `span`.
fn random_chain<G: Sample>(g: &G, rng: &mut rand_chacha::ChaCha8Rng, shape: &Shape, span: i64) -> Result<Vec<Elt<G>>> {
    let x = g.random_element(rng, shape);
    let target = ell(g, &x)? + rng.gen_range(1..=span);
    let cands = candidates(g, STEP_BUDGET);
    let mut path = vec![x];
    let mut cur = x;
    let mut lcur = ell(g, &cur)?;
    for _ in 0..256 {
        if lcur == target {
            break;
        }
        let c = cands[rng.gen_range(0..cands.len())];
        let Some(e) = edge(g, &cur, &c)? else { continue };
        let lt = ell(g, &e.target)?;
        if e.up && lt <= target {
            cur = e.target;
            lcur = lt;
            path.push(cur);
        }
    }
    Ok(path)
}

/// Default budget: `2 +` the largest coordinate, and at least
/// [`DEODHAR_BUDGET`].
pub fn deodhar_instance<G: Sample>(g: &G, x: &Elt<G>, y: &Elt<G>, z: &Elt<G>, index: u64) -> Record
where
    G::Coweight: CoordMagnitude,
    G::Weyl: CoordMagnitude,
{
    let dflt = Budget::default_for::<G>(&[x, y, z]);
    let budget = Budget::new(dflt.r.max(DEODHAR_BUDGET.r), dflt.n.max(DEODHAR_BUDGET.n));
    deodhar_instance_with(g, x, y, z, budget, index)
}

pub fn deodhar_instance_with<G: Sample>(
    g: &G,
    x: &Elt<G>,
    y: &Elt<G>,
    z: &Elt<G>,
    budget: Budget,
    index: u64,
) -> Record {
    let inputs = json!({ "x": g.format_element(x), "y": g.format_element(y), "z": g.format_element(z) });
    guarded(index, inputs, |inputs| {
        let out = deodhar_count(g, x, y, z, budget)?;
        let status = match out.verdict {
            DeodharVerdict::Confirmed => Status::Pass,
            DeodharVerdict::Inconclusive => Status::Inconclusive,
        };
        let consistent = all_consistent(g, [x, y, z], &Window::new(g.positive_roots_up_to(1)))?;
        let status = if consistent { status } else { Status::Fail };
        Ok(Record::new(
            index,
            status,
            with_inputs(
                inputs,
                json!({
                    "count": out.count,
                    "needed": out.needed,
                    "budget": [budget.r, budget.n],
                    "verdict": format!("{:?}", out.verdict),
                    "consistent": consistent,
                }),
            ),
        ))
    })
}

/// Sampled triples `x <= y <= z` built from random up-chains. A count below
/// `ℓ(z) - ℓ(x)` is reported as inconclusive, never as a refutation.
pub fn deodhar<G: Sample>(g: &G, c: &Campaign) -> Report
where
    G::Coweight: CoordMagnitude,
    G::Weyl: CoordMagnitude,
{
    let shape = c.shape.unwrap_or(Shape { coord: 1, max_level: 2, central: 1, word_len: 3, root_r: 1, root_n: 1 });
    let records = (0..c.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(c.seed, i);
            // redraw until the chain has at least one step
            let mut drawn = random_chain(g, &mut rng, &shape, DEODHAR_SPAN);
            while matches!(&drawn, Ok(p) if p.len() < 2) {
                drawn = random_chain(g, &mut rng, &shape, DEODHAR_SPAN);
            }
            match drawn {
                Ok(path) => {
                    let y = path[rng.gen_range(0..path.len())];
                    let (x, z) = (&path[0], path.last().unwrap());
                    match c.budget {
                        Some(b) => deodhar_instance_with(g, x, &y, z, b, i),
                        None => deodhar_instance(g, x, &y, z, i),
                    }
                }
                Err(e) => Record::error(i, json!({}), e),
            }
        })
        .collect();
    let mut rep = Report::new(DEODHAR, g.label(), Some(c.seed), records);
    rep.extra.insert("refutations".into(), json!(0));
    rep.extra.insert("max_span".into(), json!(DEODHAR_SPAN));
    rep
}
