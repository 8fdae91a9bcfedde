//! Definition-level scans over bounded grids of double-affine roots.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::bruhat::{self, Budget};
use crate::daweyl::{acts_positive, da_act, da_reflection, mul_reflection, Elt, Root};
use crate::error::{usage, Result};
use crate::ground::Ground;
use crate::length::{ell, ell_eps, EpsLength};

/// Smallest `(R, N)` containing every candidate the exact `Inv⁺⁺` algorithm
/// examines. A scan at least this large is complete.
pub fn certified_box<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Budget> {
    let cands = bruhat::inv_pp_candidates(ground, x, gamma)?;
    let r = cands.iter().map(|c| ground.root_size(&c.beta)).max().unwrap_or(0);
    let n = cands.iter().map(|c| c.n.abs()).max().unwrap_or(0);
    Ok(Budget::new(r, n))
}

/// `Inv⁺⁺_x(s_γ)` by testing the definition on every `β[n]` with
/// `|r| <= r_max`, `|n| <= n_max`.
pub fn brute_inv_pp<G: Ground>(
    ground: &G,
    x: &Elt<G>,
    gamma: &Root<G>,
    r_max: i64,
    n_max: i64,
) -> Result<Vec<Root<G>>> {
    let cert = certified_box(ground, x, gamma)?;
    if r_max < cert.r || n_max < cert.n {
        return Err(usage!("grid ({r_max}, {n_max}) is smaller than the certified box {cert:?}"));
    }
    let s = da_reflection(ground, gamma);
    let mut out = Vec::new();
    for beta in ground.positive_roots_up_to(r_max) {
        for n in -n_max..=n_max {
            let g = Root::<G> { beta, n };
            let sg = da_act(ground, &s, &g);
            if !sg.is_positive() && acts_positive(ground, x, &g) && acts_positive(ground, x, &sg.root) {
                out.push(g);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Result of [`brute_interval`]: the elements found and the search budget.
#[derive(Clone, Debug)]
pub struct Interval<G: Ground> {
    pub elements: Vec<Elt<G>>,
    pub budget: Budget,
    pub depth: usize,
}

const DEPTH: usize = 2;

/// Elements up to `DEPTH` up-edges from `x`, pruned to `ℓ_ε < ℓ_ε(y)`.
fn up_layers<G: Ground>(ground: &G, x: &Elt<G>, cap: EpsLength, cands: &[Root<G>]) -> Result<BTreeSet<Elt<G>>> {
    let mut seen = BTreeSet::from([*x]);
    let mut layer = alloc::vec![*x];
    for _ in 0..DEPTH {
        let mut next = Vec::new();
        for z in &layer {
            for c in cands {
                if !acts_positive(ground, z, c) {
                    continue;
                }
                let t = mul_reflection(ground, z, c);
                if !crate::daweyl::in_wt(ground, &t) || seen.contains(&t) || ell_eps(ground, &t)? > cap {
                    continue;
                }
                seen.insert(t);
                next.push(t);
            }
        }
        layer = next;
    }
    Ok(seen)
}

/// Elements up to `DEPTH` down-edges from `y`, pruned to `ℓ_ε > ℓ_ε(x)`.
fn down_layers<G: Ground>(ground: &G, y: &Elt<G>, floor: EpsLength, cands: &[Root<G>]) -> Result<BTreeSet<Elt<G>>> {
    let mut seen = BTreeSet::from([*y]);
    let mut layer = alloc::vec![*y];
    for _ in 0..DEPTH {
        let mut next = Vec::new();
        for z in &layer {
            for c in cands {
                if acts_positive(ground, z, c) {
                    continue;
                }
                let t = mul_reflection(ground, z, c);
                if !crate::daweyl::in_wt(ground, &t) || seen.contains(&t) || ell_eps(ground, &t)? < floor {
                    continue;
                }
                seen.insert(t);
                next.push(t);
            }
        }
        layer = next;
    }
    Ok(seen)
}

/// Elements `z` with `x <= z <= y` reachable by at most two budgeted edges
/// from each end. Pruning uses only the `ℓ_ε` order, so the scan does not
/// presuppose anything about `ℓ`.
pub fn brute_interval<G: Ground>(
    ground: &G,
    x: &Elt<G>,
    y: &Elt<G>,
    r_max: i64,
    n_max: i64,
) -> Result<Interval<G>> {
    let (lx, ly) = (ell(ground, x)?, ell(ground, y)?);
    if ly - lx > 4 {
        return Err(usage!("ℓ(y) - ℓ(x) = {} exceeds the interval guard 4", ly - lx));
    }
    let budget = Budget::new(r_max, n_max);
    let cands = bruhat::order::candidates(ground, budget);
    let up = up_layers(ground, x, ell_eps(ground, y)?, &cands)?;
    let down = down_layers(ground, y, ell_eps(ground, x)?, &cands)?;
    let elements = up.intersection(&down).copied().collect();
    Ok(Interval { elements, budget, depth: DEPTH })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{AffCoweight, AffineGround};
    use crate::daweyl::{DARootRN, WTElement};
    use crate::ground::FiniteGround;
    use crate::linalg::IVec;
    use crate::rootsys::FiniteRoot;

    fn setup() -> (AffineGround, Elt<AffineGround>, Root<AffineGround>) {
        let g = AffineGround::from_label("A1").unwrap();
        let x = WTElement { mu: AffCoweight::d(), w: g.weyl_id() };
        let gamma = DARootRN::new(FiniteRoot(IVec::unit(0)), 0, 1).to_da(&g);
        (g, x, gamma)
    }

    #[test]
    fn worked_instance_grid() {
        let (g, x, gamma) = setup();
        let a = brute_inv_pp(&g, &x, &gamma, 6, 6).unwrap();
        let b = brute_inv_pp(&g, &x, &gamma, 12, 12).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a, b);
        assert_eq!(a, bruhat::inv_pp(&g, &x, &gamma).unwrap());
        assert!(brute_inv_pp(&g, &x, &gamma, 0, 0).is_err());
    }

    #[test]
    fn finite_simple_cover() {
        let f = FiniteGround::from_label("A2").unwrap();
        let s = Root::<FiniteGround> { beta: f.sys.simple_root(1), n: 0 };
        let e = crate::daweyl::identity(&f);
        assert_eq!(brute_inv_pp(&f, &e, &s, 0, 4).unwrap(), [s]);
    }

    #[test]
    fn intervals() {
        let (g, x, gamma) = setup();
        let i = brute_interval(&g, &x, &x, 2, 2).unwrap();
        assert_eq!(i.elements, [x]);
        let cover = DARootRN::new(FiniteRoot(IVec::unit(0)), 0, 0).to_da(&g);
        let y = mul_reflection(&g, &x, &cover);
        let i = brute_interval(&g, &x, &y, 3, 3).unwrap();
        assert_eq!(i.elements.len(), 2);
        let z = mul_reflection(&g, &x, &gamma);
        assert!(brute_interval(&g, &x, &z, 3, 3).is_err());
    }
}
