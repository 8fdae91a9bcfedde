//! The ground root datum interface.
//!
//! Double-affine constructions only need a handful of facts about the ground
//! Kac-Moody root system: real roots with a positivity test, coweights with a
//! pairing and a Tits cone, and a Weyl group acting on both. [`Ground`]
//! collects those facts; [`FiniteGround`] instantiates it for a finite ADE
//! system (the single-affine case) and [`crate::affine::AffineGround`] for its
//! untwisted affinization (the double-affine case).

use alloc::vec::Vec;
use core::fmt::Debug;
use core::hash::Hash;

use crate::error::{domain, Result};
use crate::rootsys::{FiniteCoweight, FiniteRoot, FiniteRootSystem, FiniteWeylElt};

pub trait Ground: Sync + Send {
    type Root: Copy + Ord + Hash + Debug + Send + Sync;
    type Coweight: Copy + Ord + Hash + Debug + Send + Sync;
    type Weyl: Copy + Ord + Hash + Debug + Send + Sync;

    fn finite(&self) -> &FiniteRootSystem;
    fn is_affine(&self) -> bool;

    fn pair(&self, mu: &Self::Coweight, g: &Self::Root) -> i64;
    fn is_positive(&self, g: &Self::Root) -> bool;
    fn neg_root(&self, g: &Self::Root) -> Self::Root;
    fn coroot(&self, g: &Self::Root) -> Self::Coweight;

    /// `<β∨, γ>`.
    fn root_pairing(&self, beta: &Self::Root, gamma: &Self::Root) -> i64 {
        self.pair(&self.coroot(beta), gamma)
    }

    /// Positive representative of `±g`.
    fn abs_root(&self, g: &Self::Root) -> Self::Root {
        if self.is_positive(g) {
            *g
        } else {
            self.neg_root(g)
        }
    }

    fn cw_zero(&self) -> Self::Coweight;
    fn cw_add(&self, a: &Self::Coweight, b: &Self::Coweight) -> Self::Coweight;
    fn cw_scale(&self, a: &Self::Coweight, k: i64) -> Self::Coweight;
    fn cw_neg(&self, a: &Self::Coweight) -> Self::Coweight {
        self.cw_scale(a, -1)
    }

    fn in_tits_cone(&self, mu: &Self::Coweight) -> bool;
    /// `<μ, δ>`; preserved along edges. Zero on finite grounds.
    fn level(&self, mu: &Self::Coweight) -> i64;
    /// `(μ_+, u)` with `u(μ) = μ_+` dominant. Errors outside the Tits cone.
    fn dominant(&self, mu: &Self::Coweight) -> Result<(Self::Coweight, Self::Weyl)>;
    /// `<μ, 2ρ>` for the fixed integral choice of ρ.
    fn two_ht(&self, mu: &Self::Coweight) -> i64;
    /// `{γ > 0 : <μ, γ> < 0}`; finite for μ in the Tits cone.
    fn negative_roots(&self, mu: &Self::Coweight) -> Result<Vec<Self::Root>>;

    fn weyl_id(&self) -> Self::Weyl;
    fn weyl_mul(&self, a: &Self::Weyl, b: &Self::Weyl) -> Self::Weyl;
    fn weyl_inv(&self, a: &Self::Weyl) -> Self::Weyl;
    fn act_root(&self, w: &Self::Weyl, g: &Self::Root) -> Self::Root;
    fn act_cw(&self, w: &Self::Weyl, mu: &Self::Coweight) -> Self::Coweight;
    fn reflection(&self, g: &Self::Root) -> Self::Weyl;
    /// `{γ > 0 : w(γ) < 0}`.
    fn weyl_inversions(&self, w: &Self::Weyl) -> Vec<Self::Root>;

    /// Indices accepted by [`Ground::simple_reflection`].
    fn simple_indices(&self) -> core::ops::RangeInclusive<usize>;
    fn simple_root(&self, i: usize) -> Self::Root;
    fn simple_reflection(&self, i: usize) -> Self::Weyl {
        self.reflection(&self.simple_root(i))
    }

    /// Positive roots whose "size" (δ-coefficient for affine grounds) is at
    /// most `bound`. Finite grounds ignore the bound.
    fn positive_roots_up_to(&self, bound: i64) -> Vec<Self::Root>;

    /// Key used to order roots deterministically in searches.
    fn height_key(&self, g: &Self::Root) -> i64;

    /// `|r|` for `θ + rδ`; zero on finite grounds. The roots returned by
    /// [`Ground::positive_roots_up_to`] are exactly those with size `<= bound`.
    fn root_size(&self, g: &Self::Root) -> i64;

    /// `|s_β|(γ)`.
    fn abs_reflect(&self, beta: &Self::Root, gamma: &Self::Root) -> Self::Root {
        self.abs_root(&self.act_root(&self.reflection(beta), gamma))
    }
}

/// A finite simply-laced system used as ground datum. Its coweight lattice is
/// the coroot lattice (simply-connected group), so W_T is the affine Weyl group.
#[derive(Clone, Debug)]
pub struct FiniteGround {
    pub sys: FiniteRootSystem,
}

impl FiniteGround {
    pub fn new(sys: FiniteRootSystem) -> FiniteGround {
        FiniteGround { sys }
    }

    pub fn from_label(label: &str) -> Result<FiniteGround> {
        Ok(FiniteGround::new(FiniteRootSystem::from_label(label)?))
    }
}

impl Ground for FiniteGround {
    type Root = FiniteRoot;
    type Coweight = FiniteCoweight;
    type Weyl = FiniteWeylElt;

    fn finite(&self) -> &FiniteRootSystem {
        &self.sys
    }

    fn is_affine(&self) -> bool {
        false
    }

    fn pair(&self, mu: &FiniteCoweight, g: &FiniteRoot) -> i64 {
        self.sys.pairing(mu, g)
    }

    fn is_positive(&self, g: &FiniteRoot) -> bool {
        g.is_positive()
    }

    fn neg_root(&self, g: &FiniteRoot) -> FiniteRoot {
        -*g
    }

    fn coroot(&self, g: &FiniteRoot) -> FiniteCoweight {
        FiniteCoweight(self.sys.coroot_coords_to_coweight(&g.0))
    }

    fn cw_zero(&self) -> FiniteCoweight {
        FiniteCoweight::default()
    }

    fn cw_add(&self, a: &FiniteCoweight, b: &FiniteCoweight) -> FiniteCoweight {
        FiniteCoweight(a.0 + b.0)
    }

    fn cw_scale(&self, a: &FiniteCoweight, k: i64) -> FiniteCoweight {
        FiniteCoweight(a.0.scale(k))
    }

    fn in_tits_cone(&self, mu: &FiniteCoweight) -> bool {
        self.sys.coweight_to_coroot_coords(mu).is_some()
    }

    fn level(&self, _mu: &FiniteCoweight) -> i64 {
        0
    }

    fn dominant(&self, mu: &FiniteCoweight) -> Result<(FiniteCoweight, FiniteWeylElt)> {
        if !self.in_tits_cone(mu) {
            return Err(domain!("{mu:?} is not in the coroot lattice"));
        }
        Ok(self.sys.dominant(mu))
    }

    fn two_ht(&self, mu: &FiniteCoweight) -> i64 {
        self.sys.two_ht(mu)
    }

    fn negative_roots(&self, mu: &FiniteCoweight) -> Result<Vec<FiniteRoot>> {
        Ok(self.sys.positive_roots().iter().copied().filter(|g| self.pair(mu, g) < 0).collect())
    }

    fn weyl_id(&self) -> FiniteWeylElt {
        self.sys.identity()
    }

    fn weyl_mul(&self, a: &FiniteWeylElt, b: &FiniteWeylElt) -> FiniteWeylElt {
        self.sys.mul(a, b)
    }

    fn weyl_inv(&self, a: &FiniteWeylElt) -> FiniteWeylElt {
        self.sys.inverse(a)
    }

    fn act_root(&self, w: &FiniteWeylElt, g: &FiniteRoot) -> FiniteRoot {
        self.sys.act(w, g)
    }

    fn act_cw(&self, w: &FiniteWeylElt, mu: &FiniteCoweight) -> FiniteCoweight {
        self.sys.act_cw(w, mu)
    }

    fn reflection(&self, g: &FiniteRoot) -> FiniteWeylElt {
        self.sys.reflection(g)
    }

    fn weyl_inversions(&self, w: &FiniteWeylElt) -> Vec<FiniteRoot> {
        self.sys.inv_fin(w)
    }

    fn simple_indices(&self) -> core::ops::RangeInclusive<usize> {
        1..=self.sys.rank()
    }

    fn simple_root(&self, i: usize) -> FiniteRoot {
        self.sys.simple_root(i - 1)
    }

    fn positive_roots_up_to(&self, _bound: i64) -> Vec<FiniteRoot> {
        self.sys.positive_roots().to_vec()
    }

    fn height_key(&self, g: &FiniteRoot) -> i64 {
        g.height()
    }

    fn root_size(&self, _g: &FiniteRoot) -> i64 {
        0
    }
}
