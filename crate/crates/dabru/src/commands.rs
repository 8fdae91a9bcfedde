//! Single computations on parsed inputs, reported in the same record format
//! as the campaigns.

use dabru_core::affine::AffineGround;
use dabru_core::bruhat::order::CoordMagnitude;
use dabru_core::bruhat::{self, edge, inv_pp, leq, shorten_chain, Budget, LeqOutcome};
use dabru_core::daweyl::{DARootRN, Elt, Root};
use dabru_core::length::{ell, ell_eps, ell_via_eq19};
use dabru_core::oracle::{brute_inv_pp, certified_box};
use dabru_core::Result;
use serde_json::json;

use crate::grammar::{format_rn, Syntax};
use crate::report::{Check, Record, Report, Status};

pub const ELL: Check = Check { name: "ell", anchor: "length: ell(pi^mu w) as the size of the inversion set" };
pub const EDGE: Check = Check { name: "edge", anchor: "Bruhat edge x -- x s_beta[n] with x(beta[n]) > 0 pointing up" };
pub const INVPP: Check = Check { name: "invpp", anchor: "Inv++_x(s): finite, computed exactly and by grid scan" };
pub const COVER: Check = Check { name: "cover", anchor: "cover: ell(x s) = ell(x) + 1" };
pub const CHAIN: Check = Check { name: "chain", anchor: "ADE ground: an explicit chain below every non-cover edge" };
pub const LEQ: Check = Check { name: "leq", anchor: "Bruhat order as the transitive closure of up-edges" };

fn single(check: Check, g: &impl Syntax, status: Status, fields: serde_json::Value) -> Report {
    Report::new(check, g.label(), None, vec![Record::new(0, status, fields)])
}

pub fn ell_cmd<G: Syntax>(g: &G, x: &Elt<G>) -> Result<Report> {
    let (l, e, q) = (ell(g, x)?, ell_eps(g, x)?, ell_via_eq19(g, x)?);
    Ok(single(
        ELL,
        g,
        Status::from_bool(l == q),
        json!({ "x": g.format_element(x), "ell": l, "ell_eps": [e.base, e.eps], "ell_via_inversion_count": q }),
    ))
}

pub fn edge_cmd<G: Syntax>(g: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Report> {
    let inputs = json!({ "x": g.format_element(x), "root": g.format_root(gamma) });
    let fields = match edge(g, x, gamma)? {
        Some(e) => json!({
            "x": inputs["x"], "root": inputs["root"],
            "target": g.format_element(&e.target),
            "direction": if e.up { "up" } else { "down" },
        }),
        None => json!({ "x": inputs["x"], "root": inputs["root"], "target": null, "direction": "none" }),
    };
    Ok(single(EDGE, g, Status::Pass, fields))
}

/// Lists `Inv⁺⁺` of the up-edge between `x` and `x s_γ`, and compares it with
/// the grid scan over the certified box.
pub fn invpp_cmd<G: Syntax>(g: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Report> {
    let e = edge(g, x, gamma)?.ok_or_else(|| dabru_core::Error::Usage("x s is not in W_T".into()))?;
    let low = if e.up { *x } else { e.target };
    let pp = inv_pp(g, &low, gamma)?;
    let cert = certified_box(g, &low, gamma)?;
    let brute = brute_inv_pp(g, &low, gamma, cert.r, cert.n)?;
    Ok(single(
        INVPP,
        g,
        Status::from_bool(brute == pp),
        json!({
            "x": g.format_element(&low),
            "root": g.format_root(gamma),
            "count": pp.len(),
            "roots": pp.iter().map(|r| g.format_root(r)).collect::<Vec<_>>(),
            "oracle_box": [cert.r, cert.n],
            "oracle_agrees": brute == pp,
        }),
    ))
}

pub fn cover_cmd<G: Syntax>(g: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Report> {
    let cover = bruhat::is_cover(g, x, gamma)?;
    let d = bruhat::length_diff(g, x, gamma)?;
    Ok(single(
        COVER,
        g,
        Status::from_bool(cover == (d.inv_pp == 1) && d.holds()),
        json!({
            "x": g.format_element(x),
            "root": g.format_root(gamma),
            "cover": cover,
            "ell_difference": d.ell_xs - d.ell_x,
            "inv_pp": d.inv_pp,
        }),
    ))
}

pub fn chain_cmd(g: &AffineGround, x: &Elt<AffineGround>, gamma: &Root<AffineGround>) -> Result<Report> {
    let chain = shorten_chain(g, x, &DARootRN::from_da(g, gamma))?;
    let lengths = chain.elements.iter().map(|z| ell(g, z)).collect::<Result<Vec<_>>>()?;
    let ok = lengths.windows(2).all(|w| w[0] < w[1]);
    Ok(single(
        CHAIN,
        g,
        Status::from_bool(ok),
        json!({
            "x": g.format_element(x),
            "root": g.format_root(gamma),
            "route": format!("{:?}", chain.route),
            "frame": format!("{:?}", chain.frame),
            "steps": chain.steps.iter().map(|s| format_rn(g, s)).collect::<Vec<_>>(),
            "elements": chain.elements.iter().map(|z| g.format_element(z)).collect::<Vec<_>>(),
            "lengths": lengths,
        }),
    ))
}

pub fn leq_cmd<G: Syntax>(g: &G, x: &Elt<G>, y: &Elt<G>, budget: Option<Budget>) -> Result<Report>
where
    G::Coweight: CoordMagnitude,
    G::Weyl: CoordMagnitude,
{
    let budget = budget.unwrap_or_else(|| Budget::default_for::<G>(&[x, y]));
    let mut fields = json!({
        "x": g.format_element(x),
        "y": g.format_element(y),
        "budget": [budget.r, budget.n],
    });
    let status = match leq(g, x, y, budget)? {
        LeqOutcome::Yes(cert) => {
            fields["leq"] = json!("yes");
            fields["certificate"] = json!(cert.steps.iter().map(|s| g.format_root(s)).collect::<Vec<_>>());
            Status::Pass
        }
        LeqOutcome::No => {
            fields["leq"] = json!("no");
            Status::Pass
        }
        LeqOutcome::Inconclusive { explored, .. } => {
            fields["leq"] = json!("inconclusive");
            fields["explored"] = json!(explored);
            Status::Inconclusive
        }
    };
    Ok(single(LEQ, g, status, fields))
}
