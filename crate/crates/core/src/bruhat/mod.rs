//! Bruhat edges, `Inv⁺⁺`, the maps φ and ψ, and the length-difference identity.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::daweyl::{self, acts_positive, da_act, inverse, mul_reflection, mult, Elt, Root};
use crate::error::{domain, usage, Result};
use crate::ground::Ground;
use crate::length::{self, inv_window_enumerate, Window};

pub mod chain;
pub mod order;

pub use chain::{shorten_chain, verify_steps, Chain, ChainRoute, Frame};
pub use order::{deodhar_count, leq, Budget, DeodharOutcome, DeodharVerdict, LeqOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge<G: Ground> {
    pub x: Elt<G>,
    pub gamma: Root<G>,
    pub target: Elt<G>,
    /// `x(γ) > 0`, i.e. `x < x s_γ`.
    pub up: bool,
}

/// The edge `x -- x s_γ`, or `None` when `x s_γ ∉ W_T`.
pub fn edge<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Option<Edge<G>>> {
    if !daweyl::in_wt(ground, x) {
        return Err(domain!("{x:?} is not in W_T"));
    }
    let target = mul_reflection(ground, x, gamma);
    if !daweyl::in_wt(ground, &target) {
        return Ok(None);
    }
    Ok(Some(Edge { x: *x, gamma: *gamma, target, up: acts_positive(ground, x, gamma) }))
}

fn require_up<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Elt<G>> {
    match edge(ground, x, gamma)? {
        Some(e) if e.up => Ok(e.target),
        _ => Err(usage!("{x:?} → {gamma:?} is not an up-edge")),
    }
}

/// `μ + n w(β∨)`, the coweight of `x s_{β[n]}`.
pub fn shifted_mu<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> G::Coweight {
    mul_reflection(ground, x, gamma).mu
}

/// The defining conditions of `Inv⁺⁺_x(s_γ)` evaluated on `g`.
pub fn in_inv_pp<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>, g: &Root<G>) -> bool {
    let s = daweyl::da_reflection(ground, gamma);
    let sg = da_act(ground, &s, g);
    // g ∈ Inv(s_γ), x(g) > 0, x(-s_γ(g)) = x(sg.root) with sign -sg.sign > 0
    !sg.is_positive() && acts_positive(ground, x, g) && acts_positive(ground, x, &sg.root)
}

/// Candidate ψ-images `θ[m]` for an up-edge: `θ` ranges over roots with
/// `<ν̃,θ> < 0` (`ν̃ = s_{w(β)}(μ')`), over `Inv(s_{w(β)})`, and over roots
/// with `<μ',θ> < 0`, where `μ' = μ + n w(β∨)`; `m` ranges over the interval
/// where `θ[m] ∈ Inv(s_γ x^{-1})`.
fn psi_candidates<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Vec<Root<G>>> {
    let xs = mul_reflection(ground, x, gamma);
    let shifted = xs.mu;
    let wbeta = ground.abs_root(&ground.act_root(&x.w, &gamma.beta));
    let refl = ground.reflection(&wbeta);
    let nu_tilde = ground.act_cw(&refl, &shifted);
    let mut thetas: BTreeSet<G::Root> = ground.negative_roots(&nu_tilde)?.into_iter().collect();
    thetas.extend(ground.weyl_inversions(&refl));
    thetas.extend(ground.negative_roots(&shifted)?);
    let mut out = Vec::new();
    for theta in thetas {
        let p = ground.pair(&shifted, &theta);
        for m in p.min(0)..=p.max(0) {
            let root = Root::<G> { beta: theta, n: m };
            if length::inv_member(ground, &xs, &root) {
                out.push(root);
            }
        }
    }
    Ok(out)
}

/// Pull-backs `x^{-1}(θ[m])` of all ψ-candidates that are positive; a
/// superset of `Inv⁺⁺`.
pub fn inv_pp_candidates<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Vec<Root<G>>> {
    require_up(ground, x, gamma)?;
    let xi = inverse(ground, x);
    let mut out: Vec<Root<G>> = psi_candidates(ground, x, gamma)?
        .iter()
        .map(|t| da_act(ground, &xi, t))
        .filter(|v| v.is_positive())
        .map(|v| v.root)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `Inv⁺⁺_x(s_γ)`, exact and sorted.
pub fn inv_pp<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Vec<Root<G>>> {
    let mut out = inv_pp_candidates(ground, x, gamma)?;
    out.retain(|g| in_inv_pp(ground, x, gamma, g));
    Ok(out)
}

/// `ι = -s_γ` on a member of `Inv(s_γ)`.
pub fn iota<G: Ground>(ground: &G, gamma: &Root<G>, g: &Root<G>) -> Root<G> {
    da_act(ground, &daweyl::da_reflection(ground, gamma), g).root
}

/// φ on `η ∈ Inv(x^{-1})`.
pub fn phi<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>, eta: &Root<G>) -> Result<Root<G>> {
    let xs = require_up(ground, x, gamma)?;
    if !length::inv_member_direct(ground, x, eta) {
        return Err(usage!("{eta:?} is not in Inv(x^-1) for x = {x:?}"));
    }
    let y = inverse(ground, &xs);
    if !acts_positive(ground, &y, eta) {
        return Ok(*eta);
    }
    let conj = mult(ground, &xs, &inverse(ground, x));
    Ok(da_act(ground, &conj, eta).root)
}

/// ψ(g) = x(g) on `g ∈ Inv⁺⁺_x(s_γ)`.
pub fn psi<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>, g: &Root<G>) -> Result<Root<G>> {
    require_up(ground, x, gamma)?;
    if !in_inv_pp(ground, x, gamma, g) {
        return Err(usage!("{g:?} is not in Inv++"));
    }
    Ok(da_act(ground, x, g).root)
}

/// Outcome of checking `Inv_S(s_γ x^{-1}) = φ(Inv_S(x^{-1})) ⊔ ψ(Inv⁺⁺)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub source: usize,
    pub target: usize,
    pub inv_pp: usize,
    pub phi_injective: bool,
    pub psi_injective: bool,
    pub disjoint: bool,
    pub covers: bool,
    /// Closed-form counts agree with enumeration on both sides.
    pub counts_match: bool,
}

impl Decomposition {
    pub fn ok(&self) -> bool {
        self.phi_injective && self.psi_injective && self.disjoint && self.covers && self.counts_match
    }
}

pub fn decomposition_check<G: Ground>(
    ground: &G,
    x: &Elt<G>,
    gamma: &Root<G>,
    window: &Window<G::Root>,
) -> Result<Decomposition> {
    let xs = require_up(ground, x, gamma)?;
    let source = inv_window_enumerate(ground, window, x);
    let target: BTreeSet<Root<G>> = inv_window_enumerate(ground, window, &xs).into_iter().collect();
    let pp = inv_pp(ground, x, gamma)?;
    let phis = source.iter().map(|e| phi(ground, x, gamma, e)).collect::<Result<Vec<_>>>()?;
    let psis = pp.iter().map(|g| psi(ground, x, gamma, g)).collect::<Result<Vec<_>>>()?;
    let phi_set: BTreeSet<Root<G>> = phis.iter().copied().collect();
    let psi_set: BTreeSet<Root<G>> = psis.iter().copied().collect();
    let union: BTreeSet<Root<G>> = phi_set.union(&psi_set).copied().collect();
    let counts_match = length::inv_window_count(ground, window, x) == source.len() as i64
        && length::inv_window_count(ground, window, &xs) == target.len() as i64;
    Ok(Decomposition {
        source: source.len(),
        target: target.len(),
        inv_pp: pp.len(),
        phi_injective: phi_set.len() == phis.len(),
        psi_injective: psi_set.len() == psis.len(),
        disjoint: phi_set.is_disjoint(&psi_set),
        covers: union == target,
        counts_match,
    })
}

/// Both sides of `ℓ(x s_γ) - ℓ(x) = #Inv⁺⁺_x(s_γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthDiff {
    pub ell_x: i64,
    pub ell_xs: i64,
    pub inv_pp: usize,
}

impl LengthDiff {
    pub fn holds(&self) -> bool {
        self.inv_pp >= 1 && self.ell_xs - self.ell_x == self.inv_pp as i64
    }
}

/// Evaluates the identity on the up-edge between `x` and `x s_γ`, whichever
/// direction it points.
pub fn length_diff<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<LengthDiff> {
    let e = edge(ground, x, gamma)?.ok_or_else(|| usage!("{x:?} s_{gamma:?} is not in W_T"))?;
    let low = if e.up { *x } else { e.target };
    let high = mul_reflection(ground, &low, gamma);
    Ok(LengthDiff {
        ell_x: length::ell(ground, &low)?,
        ell_xs: length::ell(ground, &high)?,
        inv_pp: inv_pp(ground, &low, gamma)?.len(),
    })
}

pub fn length_diff_check<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<bool> {
    Ok(length_diff(ground, x, gamma)?.holds())
}

pub fn is_cover<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<bool> {
    let xs = require_up(ground, x, gamma)?;
    Ok(length::ell(ground, &xs)? == length::ell(ground, x)? + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{AffCoweight, AffineGround};
    use crate::daweyl::{DARootRN, WTElement};
    use crate::ground::FiniteGround;
    use crate::linalg::IVec;
    use crate::rootsys::{FiniteCoweight, FiniteRoot};

    fn a1() -> AffineGround {
        AffineGround::from_label("A1").unwrap()
    }

    fn alpha() -> FiniteRoot {
        FiniteRoot(IVec::unit(0))
    }

    fn pi_d(g: &AffineGround) -> Elt<AffineGround> {
        WTElement { mu: AffCoweight::d(), w: g.weyl_id() }
    }

    #[test]
    fn worked_instance() {
        let g = a1();
        let x = pi_d(&g);
        let gamma = DARootRN::new(alpha(), 0, 1).to_da(&g);
        let pp = inv_pp(&g, &x, &gamma).unwrap();
        let mut rn: Vec<(i64, i64)> = pp.iter().map(|r| DARootRN::from_da(&g, r).point()).collect();
        rn.sort();
        assert_eq!(rn, [(-1, 2), (0, 0), (0, 1), (0, 2), (1, 0)]);
        let d = length_diff(&g, &x, &gamma).unwrap();
        assert_eq!(d, LengthDiff { ell_x: 0, ell_xs: 5, inv_pp: 5 });
        for r in &pp {
            assert!(pp.contains(&iota(&g, &gamma, r)));
        }
        let w = length::build_window(&g, &x, &gamma).unwrap();
        assert!(decomposition_check(&g, &x, &gamma, &w).unwrap().ok());
        assert!(!is_cover(&g, &x, &gamma).unwrap());
    }

    #[test]
    fn edge_examples() {
        let g = a1();
        let x = pi_d(&g);
        let e = edge(&g, &x, &DARootRN::new(alpha(), 0, 1).to_da(&g)).unwrap().unwrap();
        assert!(e.up);
        let f = FiniteGround::from_label("A1").unwrap();
        let e = edge(&f, &daweyl::identity(&f), &Root::<FiniteGround> { beta: alpha(), n: 0 }).unwrap().unwrap();
        assert!(e.up);
        // level 0: a reflection with n != 0 leaves W_T
        let c = WTElement { mu: AffCoweight::c(), w: g.weyl_id() };
        assert!(edge(&g, &c, &DARootRN::new(alpha(), 0, 1).to_da(&g)).unwrap().is_none());
        let bad = WTElement { mu: AffCoweight::new(FiniteCoweight(IVec::unit(0)), 0, 0), w: g.weyl_id() };
        assert!(edge(&g, &bad, &DARootRN::new(alpha(), 0, 1).to_da(&g)).is_err());
    }

    #[test]
    fn simple_cover() {
        let g = a1();
        let x = pi_d(&g);
        let gamma = DARootRN::new(alpha(), 0, 0).to_da(&g);
        assert!(is_cover(&g, &x, &gamma).unwrap());
        assert_eq!(inv_pp(&g, &x, &gamma).unwrap(), [gamma]);
        let f = FiniteGround::from_label("A1").unwrap();
        let s = Root::<FiniteGround> { beta: alpha(), n: 0 };
        assert_eq!(inv_pp(&f, &daweyl::identity(&f), &s).unwrap(), [s]);
    }

    #[test]
    fn phi_psi_errors() {
        let g = a1();
        let x = pi_d(&g);
        let gamma = DARootRN::new(alpha(), 0, 1).to_da(&g);
        let outside = DARootRN::new(alpha(), 5, 5).to_da(&g);
        assert!(phi(&g, &x, &gamma, &outside).is_err());
        assert!(psi(&g, &x, &gamma, &outside).is_err());
        assert_eq!(psi(&g, &x, &gamma, &gamma).unwrap(), da_act(&g, &x, &gamma).root);
    }
}
