//! Length functions on `W_T`, explicit inversion-set formulas, and the finite
//! windows `S ⊂ Δ⁺` used to localize the length-difference identity.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::daweyl::{self, acts_positive, inverse, Elt, Root};
use crate::error::{domain, usage, Result};
use crate::ground::Ground;

/// `base + eps·ε`, ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsLength {
    pub base: i64,
    pub eps: i64,
}

impl EpsLength {
    pub fn at_one(&self) -> i64 {
        self.base + self.eps
    }
}

fn require_wt<G: Ground>(ground: &G, x: &Elt<G>) -> Result<()> {
    if daweyl::in_wt(ground, x) {
        Ok(())
    } else {
        Err(domain!("{x:?} is not in W_T"))
    }
}

/// `Inv(w^{-1})` as a set.
fn inv_winv<G: Ground>(ground: &G, x: &Elt<G>) -> BTreeSet<G::Root> {
    ground.weyl_inversions(&ground.weyl_inv(&x.w)).into_iter().collect()
}

pub fn ell_eps<G: Ground>(ground: &G, x: &Elt<G>) -> Result<EpsLength> {
    require_wt(ground, x)?;
    let (mu_plus, _) = ground.dominant(&x.mu)?;
    let eps = inv_winv(ground, x).iter().map(|g| if ground.pair(&x.mu, g) >= 0 { 1 } else { -1 }).sum();
    Ok(EpsLength { base: ground.two_ht(&mu_plus), eps })
}

pub fn ell<G: Ground>(ground: &G, x: &Elt<G>) -> Result<i64> {
    Ok(ell_eps(ground, x)?.at_one())
}

/// `ℓ(π^μ) = 2ht(μ) - Σ_{γ>0, <μ,γ><0} <μ, 2γ>`.
pub fn ell_translation<G: Ground>(ground: &G, mu: &G::Coweight) -> Result<i64> {
    if !ground.in_tits_cone(mu) {
        return Err(domain!("{mu:?} is not in the Tits cone"));
    }
    let correction: i64 = ground.negative_roots(mu)?.iter().map(|g| 2 * ground.pair(mu, g)).sum();
    Ok(ground.two_ht(mu) - correction)
}

/// The four-case sum over `η ∈ Δ⁺`; only `η` with `<μ,η> < 0` or
/// `η ∈ Inv(w^{-1})` contribute.
pub fn ell_via_eq19<G: Ground>(ground: &G, x: &Elt<G>) -> Result<i64> {
    require_wt(ground, x)?;
    let inv = inv_winv(ground, x);
    let mut support: BTreeSet<G::Root> = ground.negative_roots(&x.mu)?.into_iter().collect();
    support.extend(inv.iter().copied());
    let mut total = ground.two_ht(&x.mu);
    for eta in &support {
        let p = ground.pair(&x.mu, eta);
        total += match (p < 0, inv.contains(eta)) {
            (true, false) => -2 * p,
            (true, true) => -2 * p - 1,
            (false, true) => 1,
            (false, false) => 0,
        };
    }
    Ok(total)
}

/// Whether `η[m] ∈ Inv(w^{-1}π^{-μ})` for `x = π^μ w`, by the four-case
/// interval criterion.
pub fn inv_member<G: Ground>(ground: &G, x: &Elt<G>, root: &Root<G>) -> bool {
    let p = ground.pair(&x.mu, &root.beta);
    let in_inv = !ground.is_positive(&ground.act_root(&ground.weyl_inv(&x.w), &root.beta));
    inv_member_with(p, in_inv, root.n)
}

fn inv_member_with(p: i64, in_inv: bool, m: i64) -> bool {
    match (p < 0, in_inv) {
        (true, false) => p <= m && m < 0,
        (true, true) => p < m && m < 0,
        (false, true) => 0 <= m && m <= p,
        (false, false) => 0 <= m && m < p,
    }
}

/// Same question answered by acting: `x^{-1}(η[m]) < 0`.
pub fn inv_member_direct<G: Ground>(ground: &G, x: &Elt<G>, root: &Root<G>) -> bool {
    !acts_positive(ground, &inverse(ground, x), root)
}

/// `#Inv_S(w^{-1}π^{-μ})` by the closed form.
pub fn inv_window_count<G: Ground>(ground: &G, window: &Window<G::Root>, x: &Elt<G>) -> i64 {
    let winv = ground.weyl_inv(&x.w);
    window
        .roots
        .iter()
        .map(|eta| {
            let p = ground.pair(&x.mu, eta);
            let in_inv = !ground.is_positive(&ground.act_root(&winv, eta));
            p.abs()
                + match (p < 0, in_inv) {
                    (true, true) => -1,
                    (false, true) => 1,
                    _ => 0,
                }
        })
        .sum()
}

/// `Inv_S(w^{-1}π^{-μ})` by acting with `x^{-1}` on every `η[m]`, `η ∈ S`,
/// over a range of `m` two wider on each side than the closed form allows.
pub fn inv_window_enumerate<G: Ground>(ground: &G, window: &Window<G::Root>, x: &Elt<G>) -> Vec<Root<G>> {
    let xi = inverse(ground, x);
    let mut out = Vec::new();
    for eta in &window.roots {
        let p = ground.pair(&x.mu, eta);
        for m in p.min(0) - 2..=p.max(0) + 2 {
            let root = Root::<G> { beta: *eta, n: m };
            if !acts_positive(ground, &xi, &root) {
                out.push(root);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window<R: Ord> {
    pub roots: BTreeSet<R>,
}

impl<R: Ord + Copy> Window<R> {
    pub fn new(roots: impl IntoIterator<Item = R>) -> Window<R> {
        Window { roots: roots.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains_all<'a>(&self, it: impl IntoIterator<Item = &'a R>) -> bool
    where
        R: 'a,
    {
        it.into_iter().all(|r| self.roots.contains(r))
    }
}

/// Adds `|s_β|`-images until closed. `|s_β|` is an involution, so one pass
/// suffices.
pub fn close_under<G: Ground>(ground: &G, beta: &G::Root, window: &mut Window<G::Root>) {
    let images: Vec<G::Root> = window.roots.iter().map(|g| ground.abs_reflect(beta, g)).collect();
    window.roots.extend(images);
}

pub fn is_closed_under<G: Ground>(ground: &G, beta: &G::Root, window: &Window<G::Root>) -> bool {
    window.roots.iter().all(|g| window.roots.contains(&ground.abs_reflect(beta, g)))
}

/// The five window conditions, evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowFlags {
    pub closed: bool,
    pub has_inversions: bool,
    pub has_psi_support: bool,
    pub has_mu_negative: bool,
    pub has_shifted_negative: bool,
}

impl WindowFlags {
    pub fn all(&self) -> bool {
        self.closed && self.has_inversions && self.has_psi_support && self.has_mu_negative && self.has_shifted_negative
    }
}

/// Pieces of an edge `x → x s_{β[n]}` that the window conditions refer to.
struct EdgeData<G: Ground> {
    wbeta: G::Root,
    inv_refl: Vec<G::Root>,
    inv_winv: Vec<G::Root>,
    psi_support: Vec<G::Root>,
    mu_neg: Vec<G::Root>,
    shifted_neg: Vec<G::Root>,
}

fn edge_data<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<EdgeData<G>> {
    let e = crate::bruhat::edge(ground, x, gamma)?;
    if e.is_none_or(|e| !e.up) {
        return Err(domain!("{x:?} → {gamma:?} is not an up-edge in W_T"));
    }
    let wbeta = ground.abs_root(&ground.act_root(&x.w, &gamma.beta));
    let shifted = crate::bruhat::shifted_mu(ground, x, gamma);
    let pp = crate::bruhat::inv_pp(ground, x, gamma)?;
    let psi_support = pp.iter().map(|g| daweyl::da_act(ground, x, g).root.beta).collect();
    Ok(EdgeData {
        wbeta,
        inv_refl: ground.weyl_inversions(&ground.reflection(&wbeta)),
        inv_winv: ground.weyl_inversions(&ground.weyl_inv(&x.w)),
        psi_support,
        mu_neg: ground.negative_roots(&x.mu)?,
        shifted_neg: ground.negative_roots(&shifted)?,
    })
}

/// The smallest set containing the supports required by conditions (2)-(5),
/// closed under `|s_{w(β)}|`.
pub fn build_window<G: Ground>(ground: &G, x: &Elt<G>, gamma: &Root<G>) -> Result<Window<G::Root>> {
    let d = edge_data(ground, x, gamma)?;
    let mut window = Window::new(
        d.inv_refl.iter().chain(&d.inv_winv).chain(&d.psi_support).chain(&d.mu_neg).chain(&d.shifted_neg).copied(),
    );
    close_under(ground, &d.wbeta, &mut window);
    Ok(window)
}

/// `window` plus every positive root of size at most `extra`, re-closed.
pub fn enlarge_window<G: Ground>(
    ground: &G,
    x: &Elt<G>,
    gamma: &Root<G>,
    window: &Window<G::Root>,
    extra: i64,
) -> Window<G::Root> {
    let wbeta = ground.abs_root(&ground.act_root(&x.w, &gamma.beta));
    let mut out = window.clone();
    out.roots.extend(ground.positive_roots_up_to(extra));
    close_under(ground, &wbeta, &mut out);
    out
}

pub fn window_flags<G: Ground>(
    ground: &G,
    x: &Elt<G>,
    gamma: &Root<G>,
    window: &Window<G::Root>,
) -> Result<WindowFlags> {
    let d = edge_data(ground, x, gamma)?;
    Ok(WindowFlags {
        closed: is_closed_under(ground, &d.wbeta, window),
        has_inversions: window.contains_all(&d.inv_refl) && window.contains_all(&d.inv_winv),
        has_psi_support: window.contains_all(&d.psi_support),
        has_mu_negative: window.contains_all(&d.mu_neg),
        has_shifted_negative: window.contains_all(&d.shifted_neg),
    })
}

/// `2ht(β∨) = Σ_{γ∈S} <β∨, γ>` for `S ⊇ Inv(s_β)` closed under `|s_β|`.
pub fn height_identity_check<G: Ground>(ground: &G, beta: &G::Root, window: &Window<G::Root>) -> Result<bool> {
    if !ground.is_positive(beta) {
        return Err(usage!("{beta:?} is not positive"));
    }
    if !window.contains_all(&ground.weyl_inversions(&ground.reflection(beta))) {
        return Err(usage!("window does not contain Inv(s_{beta:?})"));
    }
    if !is_closed_under(ground, beta, window) {
        return Err(usage!("window is not closed under |s_{beta:?}|"));
    }
    let lhs = ground.two_ht(&ground.coroot(beta));
    let rhs: i64 = window.roots.iter().map(|g| ground.root_pairing(beta, g)).sum();
    Ok(lhs == rhs)
}

/// `Inv(s_β)` closed under `|s_β|`; the smallest admissible window.
pub fn minimal_height_window<G: Ground>(ground: &G, beta: &G::Root) -> Window<G::Root> {
    let mut w = Window::new(ground.weyl_inversions(&ground.reflection(beta)));
    close_under(ground, beta, &mut w);
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{AffCoweight, AffRealRoot, AffineGround};
    use crate::daweyl::{mul_reflection, DARootRN, WTElement};
    use crate::ground::FiniteGround;
    use crate::linalg::IVec;
    use crate::rootsys::{FiniteCoweight, FiniteRoot};

    fn a1() -> AffineGround {
        AffineGround::from_label("A1").unwrap()
    }

    fn alpha() -> FiniteRoot {
        FiniteRoot(IVec::unit(0))
    }

    fn cw(level: i64, nu: i64, central: i64) -> AffCoweight {
        AffCoweight::new(FiniteCoweight(IVec::from_slice(&[nu])), level, central)
    }

    #[test]
    fn ell_examples() {
        let g = a1();
        let id = daweyl::identity(&g);
        assert_eq!(ell_eps(&g, &id).unwrap(), EpsLength { base: 0, eps: 0 });
        let s = g.from_finite(g.sys.simple_reflection(0));
        let x = WTElement { mu: AffCoweight::d(), w: s };
        assert_eq!(ell_eps(&g, &x).unwrap(), EpsLength { base: 0, eps: 1 });
        assert_eq!(ell(&g, &x).unwrap(), 1);
        let x = WTElement { mu: cw(1, 0, 1), w: g.weyl_id() };
        assert_eq!(ell_eps(&g, &x).unwrap(), EpsLength { base: 4, eps: 0 });
        let pd = WTElement { mu: AffCoweight::d(), w: g.weyl_id() };
        let y = mul_reflection(&g, &pd, &DARootRN::new(alpha(), 0, 1).to_da(&g));
        assert_eq!(ell(&g, &y).unwrap(), 5);
        assert_eq!(ell_via_eq19(&g, &y).unwrap(), 5);
        let bad = WTElement { mu: cw(0, 2, 0), w: g.weyl_id() };
        assert!(ell(&g, &bad).is_err());
    }

    #[test]
    fn translation_examples() {
        let g = a1();
        assert_eq!(ell_translation(&g, &cw(1, 2, 0)).unwrap(), 4);
        assert_eq!(ell_translation(&g, &cw(1, -2, 0)).unwrap(), 4);
        assert_eq!(ell_translation(&g, &cw(1, 0, 3)).unwrap(), 12);
        assert!(ell_translation(&g, &cw(-1, 0, 0)).is_err());
    }

    #[test]
    fn eq46_boundary_cases() {
        assert!(!inv_member_with(3, false, 3));
        assert!(inv_member_with(3, true, 3));
        assert!(inv_member_with(-2, false, -2));
        assert!(!inv_member_with(-2, true, -2));
    }

    #[test]
    fn window_count_examples() {
        let f = FiniteGround::from_label("A1").unwrap();
        let empty = Window::new([]);
        let x = WTElement { mu: f.cw_zero(), w: f.sys.simple_reflection(0) };
        assert_eq!(inv_window_count(&f, &empty, &x), 0);
        let s = Window::new([f.sys.simple_root(0)]);
        assert_eq!(inv_window_count(&f, &s, &x), 1);
        assert_eq!(inv_window_enumerate(&f, &s, &x).len(), 1);
    }

    #[test]
    fn height_examples() {
        let f = FiniteGround::from_label("A2").unwrap();
        let theta = FiniteRoot(IVec::from_slice(&[1, 1]));
        let w = minimal_height_window(&f, &theta);
        assert_eq!(w.len(), 3);
        assert!(height_identity_check(&f, &theta, &w).unwrap());
        let g = a1();
        let beta = AffRealRoot::new(alpha(), 1);
        let w = minimal_height_window(&g, &beta);
        assert!(height_identity_check(&g, &beta, &w).unwrap());
        let sum: i64 = w.roots.iter().map(|r| g.root_pairing(&beta, r)).sum();
        assert_eq!(sum, 6);
        assert!(height_identity_check(&g, &beta, &Window::new([])).is_err());
    }

    #[test]
    fn worked_window() {
        let g = a1();
        let x = WTElement { mu: AffCoweight::d(), w: g.weyl_id() };
        let gamma = DARootRN::new(alpha(), 0, 1).to_da(&g);
        let w = build_window(&g, &x, &gamma).unwrap();
        assert!(window_flags(&g, &x, &gamma, &w).unwrap().all());
    }
}
