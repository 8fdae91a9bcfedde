//! Untwisted affinization of a finite ADE system.
//!
//! Real roots are `θ + rδ`; coweights are `ν + ℓd + kc` with `ν` in
//! fundamental-coweight coordinates; the affine Weyl group is `Q∨ ⋊ W_fin`
//! with elements `t^λ u`, `λ` stored in simple-coroot coordinates. Translations
//! act on roots by `t^λ(θ + rδ) = θ + (r + <λ, θ>)δ`, and on coweights by the
//! unique formula preserving the pairing:
//!
//! ```text
//! t^λ(ν + ℓd + kc) = (ν - ℓλ) + ℓd + (k + <ν, λ> - ℓ(λ,λ)/2) c
//! ```
//!
//! With this convention `s_{θ+rδ} = t^{rθ∨} s_θ`, so `s_0 = t^{-θ_h∨} s_{θ_h}`.
//! ρ is fixed as `h∨Λ_0 + ρ_fin`, making `<μ, 2ρ>` integral.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, internal, Result};
use crate::ground::Ground;
use crate::linalg::IVec;
use crate::rootsys::{FiniteCoweight, FiniteRoot, FiniteRootSystem, FiniteWeylElt};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffRealRoot {
    pub theta: FiniteRoot,
    pub r: i64,
}

impl AffRealRoot {
    pub fn new(theta: FiniteRoot, r: i64) -> AffRealRoot {
        AffRealRoot { theta, r }
    }

    pub fn is_positive(&self) -> bool {
        self.r > 0 || (self.r == 0 && self.theta.is_positive())
    }
}

impl fmt::Debug for AffRealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:+}δ", self.theta, self.r)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AffCoweight {
    pub nu: FiniteCoweight,
    pub level: i64,
    pub central: i64,
}

impl AffCoweight {
    pub fn new(nu: FiniteCoweight, level: i64, central: i64) -> AffCoweight {
        AffCoweight { nu, level, central }
    }

    pub fn d() -> AffCoweight {
        AffCoweight { level: 1, ..Default::default() }
    }

    pub fn c() -> AffCoweight {
        AffCoweight { central: 1, ..Default::default() }
    }
}

impl fmt::Debug for AffCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} {:+}d {:+}c)", self.nu.0, self.level, self.central)
    }
}

/// `t^λ u` with `λ` in simple-coroot coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffWeylElt {
    pub lam: IVec,
    pub u: FiniteWeylElt,
}

impl fmt::Debug for AffWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{:?} {:?}", self.lam, self.u)
    }
}

/// Result of [`AffineGround::dominant_translate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TitsConeTag {
    pub member: bool,
    pub dominant_rep: AffCoweight,
    /// `witness(μ) = dominant_rep` when `member`.
    pub witness: AffWeylElt,
}

#[derive(Clone, Debug)]
pub struct AffineGround {
    pub sys: FiniteRootSystem,
}

impl AffineGround {
    pub fn new(sys: FiniteRootSystem) -> AffineGround {
        AffineGround { sys }
    }

    pub fn from_label(label: &str) -> Result<AffineGround> {
        Ok(AffineGround::new(FiniteRootSystem::from_label(label)?))
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    /// α_0 = -θ_h + δ.
    pub fn alpha0(&self) -> AffRealRoot {
        AffRealRoot::new(-self.sys.highest_root(), 1)
    }

    /// `<λ, θ>` for `λ` in coroot coordinates.
    fn lam_pair(&self, lam: &IVec, theta: &FiniteRoot) -> i64 {
        self.sys.coroot_coords_to_coweight(lam).dot(&theta.0)
    }

    pub fn aff_pairing(&self, mu: &AffCoweight, g: &AffRealRoot) -> i64 {
        self.sys.pairing(&mu.nu, &g.theta) + mu.level * g.r
    }

    pub fn aff_act_root(&self, w: &AffWeylElt, g: &AffRealRoot) -> AffRealRoot {
        let ut = self.sys.act(&w.u, &g.theta);
        AffRealRoot::new(ut, g.r + self.lam_pair(&w.lam, &ut))
    }

    pub fn aff_act_cw(&self, w: &AffWeylElt, mu: &AffCoweight) -> AffCoweight {
        let nu = self.sys.act_cw(&w.u, &mu.nu);
        let lam_cw = self.sys.coroot_coords_to_coweight(&w.lam);
        let norm = lam_cw.dot(&w.lam);
        debug_assert!(norm % 2 == 0);
        AffCoweight {
            nu: FiniteCoweight(nu.0 - lam_cw.scale(mu.level)),
            level: mu.level,
            central: mu.central + nu.0.dot(&w.lam) - mu.level * (norm / 2),
        }
    }

    pub fn translation(&self, lam: IVec) -> AffWeylElt {
        AffWeylElt { lam, u: self.sys.identity() }
    }

    pub fn from_finite(&self, u: FiniteWeylElt) -> AffWeylElt {
        AffWeylElt { lam: IVec::ZERO, u }
    }

    pub fn tits_criterion(mu: &AffCoweight) -> bool {
        mu.level > 0 || (mu.level == 0 && mu.nu.0.is_zero())
    }

    /// Walks `μ` to the dominant chamber by simple reflections, lowest index
    /// first (α_0 has index 0). Fails with an internal error if the criterion
    /// claims membership but `cap` steps do not suffice.
    pub fn dominant_translate(&self, mu: &AffCoweight, cap: usize) -> Result<TitsConeTag> {
        let id = self.weyl_id();
        if !Self::tits_criterion(mu) {
            return Ok(TitsConeTag { member: false, dominant_rep: *mu, witness: id });
        }
        let mut cur = *mu;
        let mut witness = id;
        for _ in 0..=cap {
            let Some(i) = self.simple_indices().find(|&i| self.aff_pairing(&cur, &self.simple_root(i)) < 0) else {
                return Ok(TitsConeTag { member: true, dominant_rep: cur, witness });
            };
            let s = self.simple_reflection(i);
            cur = self.aff_act_cw(&s, &cur);
            witness = self.weyl_mul(&s, &witness);
        }
        Err(internal!("dominant_translate exceeded cap {cap} on {mu:?} (last {cur:?})"))
    }

    /// Number of simple reflections a dominant walk may need; generous.
    fn walk_cap(&self, mu: &AffCoweight) -> usize {
        // each step removes one inversion; there are at most about
        // 2|Δ⁺|(max|<ν,θ>|/ℓ + 1) of them
        let spread = (mu.nu.0.max_abs() * self.sys.dual_coxeter()) as usize;
        let level = mu.level.max(1) as usize;
        64 + 4 * self.sys.positive_roots().len() * (spread / level + 1)
    }

    pub fn two_ht(&self, mu: &AffCoweight) -> i64 {
        self.sys.two_ht(&mu.nu) + 2 * mu.central * self.sys.dual_coxeter()
    }

    /// Inversion set of an affine Weyl element. For `t^λ u` an inversion
    /// `θ + rδ` needs `0 <= r <= -<λ, u(θ)>`, so the scan is exact.
    pub fn aff_inv(&self, w: &AffWeylElt) -> Vec<AffRealRoot> {
        let mut out = Vec::new();
        for theta in self.sys.roots() {
            let ut = self.sys.act(&w.u, &theta);
            let shift = self.lam_pair(&w.lam, &ut);
            let r0 = if theta.is_positive() { 0 } else { 1 };
            for r in r0..=(-shift) {
                let img = AffRealRoot::new(ut, r + shift);
                if !img.is_positive() {
                    out.push(AffRealRoot::new(theta, r));
                }
            }
        }
        out.sort();
        out
    }
}

impl Ground for AffineGround {
    type Root = AffRealRoot;
    type Coweight = AffCoweight;
    type Weyl = AffWeylElt;

    fn finite(&self) -> &FiniteRootSystem {
        &self.sys
    }

    fn is_affine(&self) -> bool {
        true
    }

    fn pair(&self, mu: &AffCoweight, g: &AffRealRoot) -> i64 {
        self.aff_pairing(mu, g)
    }

    fn is_positive(&self, g: &AffRealRoot) -> bool {
        g.is_positive()
    }

    fn neg_root(&self, g: &AffRealRoot) -> AffRealRoot {
        AffRealRoot::new(-g.theta, -g.r)
    }

    /// (θ + rδ)∨ = θ∨ + r c.
    fn coroot(&self, g: &AffRealRoot) -> AffCoweight {
        AffCoweight::new(FiniteCoweight(self.sys.coroot_coords_to_coweight(&g.theta.0)), 0, g.r)
    }

    fn cw_zero(&self) -> AffCoweight {
        AffCoweight::default()
    }

    fn cw_add(&self, a: &AffCoweight, b: &AffCoweight) -> AffCoweight {
        AffCoweight::new(FiniteCoweight(a.nu.0 + b.nu.0), a.level + b.level, a.central + b.central)
    }

    fn cw_scale(&self, a: &AffCoweight, k: i64) -> AffCoweight {
        AffCoweight::new(FiniteCoweight(a.nu.0.scale(k)), a.level * k, a.central * k)
    }

    fn in_tits_cone(&self, mu: &AffCoweight) -> bool {
        Self::tits_criterion(mu)
    }

    fn level(&self, mu: &AffCoweight) -> i64 {
        mu.level
    }

    fn dominant(&self, mu: &AffCoweight) -> Result<(AffCoweight, AffWeylElt)> {
        let tag = self.dominant_translate(mu, self.walk_cap(mu))?;
        if !tag.member {
            return Err(domain!("{mu:?} is not in the Tits cone"));
        }
        Ok((tag.dominant_rep, tag.witness))
    }

    fn two_ht(&self, mu: &AffCoweight) -> i64 {
        AffineGround::two_ht(self, mu)
    }

    fn negative_roots(&self, mu: &AffCoweight) -> Result<Vec<AffRealRoot>> {
        if mu.level == 0 && mu.nu.0.is_zero() {
            return Ok(Vec::new());
        }
        if mu.level <= 0 {
            return Err(domain!("{mu:?} is not in the Tits cone"));
        }
        let mut out = Vec::new();
        for theta in self.sys.roots() {
            let p = self.sys.pairing(&mu.nu, &theta);
            let mut r = if theta.is_positive() { 0 } else { 1 };
            while p + mu.level * r < 0 {
                out.push(AffRealRoot::new(theta, r));
                r += 1;
            }
        }
        Ok(out)
    }

    fn weyl_id(&self) -> AffWeylElt {
        self.from_finite(self.sys.identity())
    }

    /// (t^λ u)(t^κ v) = t^{λ + u(κ)} uv.
    fn weyl_mul(&self, a: &AffWeylElt, b: &AffWeylElt) -> AffWeylElt {
        AffWeylElt { lam: a.lam + a.u.mat.apply(&b.lam), u: self.sys.mul(&a.u, &b.u) }
    }

    fn weyl_inv(&self, a: &AffWeylElt) -> AffWeylElt {
        let ui = self.sys.inverse(&a.u);
        AffWeylElt { lam: -ui.mat.apply(&a.lam), u: ui }
    }

    fn act_root(&self, w: &AffWeylElt, g: &AffRealRoot) -> AffRealRoot {
        self.aff_act_root(w, g)
    }

    fn act_cw(&self, w: &AffWeylElt, mu: &AffCoweight) -> AffCoweight {
        self.aff_act_cw(w, mu)
    }

    /// s_{θ+rδ} = t^{rθ∨} s_θ.
    fn reflection(&self, g: &AffRealRoot) -> AffWeylElt {
        AffWeylElt { lam: g.theta.0.scale(g.r), u: self.sys.reflection(&g.theta) }
    }

    fn weyl_inversions(&self, w: &AffWeylElt) -> Vec<AffRealRoot> {
        self.aff_inv(w)
    }

    fn simple_indices(&self) -> core::ops::RangeInclusive<usize> {
        0..=self.sys.rank()
    }

    fn simple_root(&self, i: usize) -> AffRealRoot {
        if i == 0 {
            self.alpha0()
        } else {
            AffRealRoot::new(self.sys.simple_root(i - 1), 0)
        }
    }

    fn positive_roots_up_to(&self, bound: i64) -> Vec<AffRealRoot> {
        let mut out: Vec<AffRealRoot> =
            self.sys.positive_roots().iter().map(|&t| AffRealRoot::new(t, 0)).collect();
        for r in 1..=bound {
            out.extend(self.sys.roots().map(|t| AffRealRoot::new(t, r)));
        }
        out
    }

    fn height_key(&self, g: &AffRealRoot) -> i64 {
        g.theta.height() + g.r * self.sys.dual_coxeter()
    }

    fn root_size(&self, g: &AffRealRoot) -> i64 {
        g.r.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> AffineGround {
        AffineGround::from_label("A1").unwrap()
    }

    fn alpha() -> FiniteRoot {
        FiniteRoot(IVec::unit(0))
    }

    fn cw1(x: i64) -> FiniteCoweight {
        FiniteCoweight(IVec::from_slice(&[x]))
    }

    #[test]
    fn pairing_examples() {
        let g = a1();
        let root = AffRealRoot::new(alpha(), 3);
        assert_eq!(g.aff_pairing(&AffCoweight::d(), &root), 3);
        assert_eq!(g.aff_pairing(&AffCoweight::c(), &root), 0);
        // α∨ + d against -α + δ
        let mu = AffCoweight::new(cw1(2), 1, 0);
        assert_eq!(g.aff_pairing(&mu, &AffRealRoot::new(-alpha(), 1)), -1);
    }

    #[test]
    fn s0_negates_alpha0_and_squares_to_one() {
        for label in ["A1", "A2", "D4"] {
            let g = AffineGround::from_label(label).unwrap();
            let s0 = g.simple_reflection(0);
            assert_eq!(g.aff_act_root(&s0, &g.alpha0()), g.neg_root(&g.alpha0()));
            assert_eq!(g.weyl_mul(&s0, &s0), g.weyl_id());
            assert_eq!(s0.lam, -g.sys.highest_root().0);
            for i in 1..=g.rank() {
                assert!(g.aff_act_root(&s0, &g.simple_root(i)).is_positive());
            }
        }
    }

    #[test]
    fn act_root_examples() {
        let g = a1();
        let t = g.translation(IVec::unit(0));
        assert_eq!(g.aff_act_root(&t, &AffRealRoot::new(alpha(), 0)), AffRealRoot::new(alpha(), 2));
        let s = g.from_finite(g.sys.simple_reflection(0));
        assert_eq!(g.aff_act_root(&s, &AffRealRoot::new(alpha(), 1)), AffRealRoot::new(-alpha(), 1));
    }

    #[test]
    fn act_cw_examples() {
        let g = a1();
        let t = g.translation(IVec::unit(0));
        assert_eq!(g.aff_act_cw(&t, &AffCoweight::d()), AffCoweight::new(cw1(-2), 1, -1));
        assert_eq!(g.aff_act_cw(&t, &AffCoweight::c()), AffCoweight::c());
    }

    #[test]
    fn dominant_translate_examples() {
        let g = a1();
        let mu = AffCoweight::new(cw1(2), 1, 0);
        let tag = g.dominant_translate(&mu, 10).unwrap();
        assert!(tag.member);
        assert_eq!(tag.dominant_rep, AffCoweight::new(cw1(0), 1, 1));
        assert_eq!(tag.witness, g.simple_reflection(0));
        let tag = g.dominant_translate(&AffCoweight::d(), 10).unwrap();
        assert_eq!(tag.dominant_rep, AffCoweight::d());
        assert_eq!(tag.witness, g.weyl_id());
        let tag = g.dominant_translate(&AffCoweight::new(cw1(1), 0, 0), 10).unwrap();
        assert!(!tag.member);
        assert!(g.dominant_translate(&AffCoweight::new(cw1(40), 1, 0), 2).is_err());
    }

    #[test]
    fn two_ht_examples() {
        let g = a1();
        assert_eq!(g.two_ht(&AffCoweight::c()), 4);
        assert_eq!(g.two_ht(&AffCoweight::d()), 0);
        let cor = g.coroot(&AffRealRoot::new(alpha(), 1));
        assert_eq!(g.two_ht(&cor), 6);
    }

    #[test]
    fn aff_inv_examples() {
        let g = a1();
        assert_eq!(g.aff_inv(&g.simple_reflection(0)), alloc::vec![AffRealRoot::new(-alpha(), 1)]);
        assert!(g.aff_inv(&g.weyl_id()).is_empty());
        let inv = g.aff_inv(&g.translation(IVec::unit(0)));
        assert_eq!(inv.len(), 2);
        assert_eq!(inv, alloc::vec![AffRealRoot::new(-alpha(), 1), AffRealRoot::new(-alpha(), 2)]);
    }
}
