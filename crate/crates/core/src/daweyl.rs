//! Double-affine roots and the semigroup `W_T ⊂ W_P = P ⋊ W`.
//!
//! A root `γ + mπ` is kept raw as `(γ, m)` with `γ` any ground real root and
//! normalized to the positive form `β[n] = sgn(n)(β + nπ)` on demand. Elements
//! of `W_P` are pairs `π^μ w` in canonical form; membership in `W_T` (μ in the
//! Tits cone) is a predicate, not a type.

use core::fmt;

use crate::affine::{AffCoweight, AffRealRoot, AffWeylElt, AffineGround};
use crate::error::{usage, Result};
use crate::ground::Ground;
use crate::rootsys::FiniteRoot;

/// `sgn(n)`: `+1` for `n >= 0`.
pub fn sgn(n: i64) -> i64 {
    if n >= 0 {
        1
    } else {
        -1
    }
}

/// A positive double-affine root `β[n]`, `β` a positive ground root.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DARoot<R> {
    pub beta: R,
    pub n: i64,
}

impl<R: fmt::Debug> fmt::Debug for DARoot<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.beta, self.n)
    }
}

/// The value `γ + mπ` with no positivity normalization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RawDA<R> {
    pub g: R,
    pub m: i64,
}

/// `sign · root`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedDARoot<R> {
    pub root: DARoot<R>,
    pub sign: i8,
}

impl<R> SignedDARoot<R> {
    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }
}

/// `π^μ w`. Lives in `W_P`; in `W_T` iff `μ` is in the Tits cone.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WTElement<C, W> {
    pub mu: C,
    pub w: W,
}

impl<C: fmt::Debug, W: fmt::Debug> fmt::Debug for WTElement<C, W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "π^{:?} {:?}", self.mu, self.w)
    }
}

pub type Elt<G> = WTElement<<G as Ground>::Coweight, <G as Ground>::Weyl>;
pub type Root<G> = DARoot<<G as Ground>::Root>;
pub type Signed<G> = SignedDARoot<<G as Ground>::Root>;

/// `β[n]` as the raw value `sgn(n)(β + nπ)`.
pub fn to_raw<G: Ground>(ground: &G, root: &Root<G>) -> RawDA<G::Root> {
    if root.n >= 0 {
        RawDA { g: root.beta, m: root.n }
    } else {
        RawDA { g: ground.neg_root(&root.beta), m: -root.n }
    }
}

/// Writes a raw value as `±β[n]`.
pub fn normalize<G: Ground>(ground: &G, v: RawDA<G::Root>) -> Signed<G> {
    let positive = if ground.is_positive(&v.g) { v.m >= 0 } else { v.m > 0 };
    let (g, m, sign) = if positive { (v.g, v.m, 1) } else { (ground.neg_root(&v.g), -v.m, -1) };
    // g + mπ is now positive
    let root = if ground.is_positive(&g) {
        DARoot { beta: g, n: m }
    } else {
        DARoot { beta: ground.neg_root(&g), n: -m }
    };
    SignedDARoot { root, sign }
}

pub fn negate<G: Ground>(ground: &G, v: RawDA<G::Root>) -> RawDA<G::Root> {
    RawDA { g: ground.neg_root(&v.g), m: -v.m }
}

pub fn identity<G: Ground>(ground: &G) -> Elt<G> {
    WTElement { mu: ground.cw_zero(), w: ground.weyl_id() }
}

/// `(π^μ w)(π^λ v) = π^{μ + w(λ)} wv`.
pub fn mult<G: Ground>(ground: &G, x: &Elt<G>, y: &Elt<G>) -> Elt<G> {
    WTElement { mu: ground.cw_add(&x.mu, &ground.act_cw(&x.w, &y.mu)), w: ground.weyl_mul(&x.w, &y.w) }
}

/// `(π^μ w)^{-1} = π^{-w^{-1}(μ)} w^{-1}`.
pub fn inverse<G: Ground>(ground: &G, x: &Elt<G>) -> Elt<G> {
    let wi = ground.weyl_inv(&x.w);
    WTElement { mu: ground.cw_neg(&ground.act_cw(&wi, &x.mu)), w: wi }
}

pub fn in_wt<G: Ground>(ground: &G, x: &Elt<G>) -> bool {
    ground.in_tits_cone(&x.mu)
}

/// `π^μ w(γ + mπ) = w(γ) + (m + <μ, w(γ)>)π`.
pub fn act_raw<G: Ground>(ground: &G, x: &Elt<G>, v: &RawDA<G::Root>) -> RawDA<G::Root> {
    let wg = ground.act_root(&x.w, &v.g);
    RawDA { g: wg, m: v.m + ground.pair(&x.mu, &wg) }
}

pub fn da_act<G: Ground>(ground: &G, x: &Elt<G>, root: &Root<G>) -> Signed<G> {
    normalize(ground, act_raw(ground, x, &to_raw(ground, root)))
}

/// Sign of `x(γ)`.
pub fn acts_positive<G: Ground>(ground: &G, x: &Elt<G>, root: &Root<G>) -> bool {
    let v = act_raw(ground, x, &to_raw(ground, root));
    if ground.is_positive(&v.g) {
        v.m >= 0
    } else {
        v.m > 0
    }
}

/// `s_{β[n]} = π^{nβ∨} s_β`.
pub fn da_reflection<G: Ground>(ground: &G, root: &Root<G>) -> Elt<G> {
    WTElement { mu: ground.cw_scale(&ground.coroot(&root.beta), root.n), w: ground.reflection(&root.beta) }
}

/// `x · s_γ`.
pub fn mul_reflection<G: Ground>(ground: &G, x: &Elt<G>, root: &Root<G>) -> Elt<G> {
    mult(ground, x, &da_reflection(ground, root))
}

/// `<β∨, γ>` on classical parts, used by the reflection formula
/// `s_{β[n]}(γ[m]) = γ[m] - sgn(m)sgn(n)<β∨,γ>β[n]`.
pub fn reflect_by_formula<G: Ground>(ground: &G, b: &Root<G>, g: &Root<G>) -> Signed<G> {
    let k = sgn(g.n) * sgn(b.n) * ground.root_pairing(&b.beta, &g.beta);
    // γ[m] - k β[n] as raw: sgn(m)(γ + mπ) - k sgn(n)(β + nπ)
    let graw = to_raw(ground, g);
    let braw = to_raw(ground, b);
    // classical part: sgn(m)γ - sgn(m)<β∨,γ>β = s_β(sgn(m)γ)
    let classical = ground.act_root(&ground.reflection(&b.beta), &graw.g);
    let m = graw.m - k * braw.m;
    normalize(ground, RawDA { g: classical, m })
}

// ---------------------------------------------------------------------------
// (r, n) indexing over an affine ground.

/// σ(r, n): `+1` iff `n > 0` or (`n = 0` and `r >= 0`).
pub fn sigma(r: i64, n: i64) -> i64 {
    if n > 0 || (n == 0 && r >= 0) {
        1
    } else {
        -1
    }
}

/// `β[r,n] = σ(r,n)(β + rδ + nπ)` with `β` a positive finite root.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DARootRN {
    pub beta: FiniteRoot,
    pub r: i64,
    pub n: i64,
}

impl fmt::Debug for DARootRN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{},{}]", self.beta, self.r, self.n)
    }
}

impl DARootRN {
    pub fn new(beta: FiniteRoot, r: i64, n: i64) -> DARootRN {
        DARootRN { beta, r, n }
    }

    pub fn at(&self, r: i64, n: i64) -> DARootRN {
        DARootRN { beta: self.beta, r, n }
    }

    pub fn point(&self) -> (i64, i64) {
        (self.r, self.n)
    }

    /// The raw value `σ(r,n)(β + rδ + nπ)`.
    pub fn to_raw(&self) -> RawDA<AffRealRoot> {
        let s = sigma(self.r, self.n);
        RawDA { g: AffRealRoot::new(FiniteRoot(self.beta.0.scale(s)), s * self.r), m: s * self.n }
    }

    pub fn to_da(&self, ground: &AffineGround) -> DARoot<AffRealRoot> {
        let v = normalize(ground, self.to_raw());
        debug_assert!(v.sign > 0);
        v.root
    }

    pub fn from_da(ground: &AffineGround, root: &DARoot<AffRealRoot>) -> DARootRN {
        rn_normalize(to_raw(ground, root)).0
    }
}

/// Writes a raw value `θ + rδ + nπ` as `±β[r', n']`.
pub fn rn_normalize(v: RawDA<AffRealRoot>) -> (DARootRN, i64) {
    let (beta, r, n, flip) = if v.g.theta.is_positive() {
        (v.g.theta, v.g.r, v.m, 1)
    } else {
        (-v.g.theta, -v.g.r, -v.m, -1)
    };
    // value = flip (β + rδ + nπ) = flip σ(r,n) β[r,n]
    (DARootRN::new(beta, r, n), flip * sigma(r, n))
}

/// `x = π^{ℓd + μ + kc} t^ν w` applied to `β[s,m]` through the closed form with
/// `a = -<ν, w(β)>` and `b = -<μ, w(β)>`.
pub fn rn_act(ground: &AffineGround, x: &WTElement<AffCoweight, AffWeylElt>, g: &DARootRN) -> (DARootRN, i64) {
    let sys = &ground.sys;
    let wb = sys.act(&x.w.u, &g.beta);
    let nu_cw = crate::rootsys::FiniteCoweight(sys.coroot_coords_to_coweight(&x.w.lam));
    let a = -sys.pairing(&nu_cw, &wb);
    let b = -sys.pairing(&x.mu.nu, &wb);
    let l = x.mu.level;
    let (s, m) = (g.r, g.n);
    if wb.is_positive() {
        let (p, q) = (s - a, m - b + l * (s - a));
        (DARootRN::new(wb, p, q), sigma(s, m) * sigma(p, q))
    } else {
        let (p, q) = (a - s, b - m + l * (a - s));
        (DARootRN::new(-wb, p, q), -sigma(s, m) * sigma(p, q))
    }
}

/// 180° rotation about `center`: `β[s,m] ↦ β[2r-s, 2n-m]`.
pub fn rn_rotate(center: &DARootRN, g: &DARootRN) -> Result<DARootRN> {
    if center.beta != g.beta {
        return Err(usage!("rotation centre {center:?} and {g:?} have different finite parts"));
    }
    Ok(g.at(2 * center.r - g.r, 2 * center.n - g.n))
}

/// `<β[r,n], θ[s,m]> = σ(r,n)σ(s,m)(β, θ)`.
pub fn rn_pairing(ground: &AffineGround, b: &DARootRN, t: &DARootRN) -> i64 {
    let sys = &ground.sys;
    let bv = crate::rootsys::FiniteCoweight(sys.coroot_coords_to_coweight(&b.beta.0));
    sigma(b.r, b.n) * sigma(t.r, t.n) * sys.pairing(&bv, &t.beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffCoweight;
    use crate::ground::FiniteGround;
    use crate::linalg::IVec;

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
    fn sigma_values() {
        assert_eq!(sigma(0, 0), 1);
        assert_eq!(sigma(-3, 0), -1);
        assert_eq!(sigma(5, -1), -1);
        for x in -4..=4 {
            for y in -4..=4 {
                if (x, y) != (0, 0) {
                    assert_eq!(sigma(-x, -y), -sigma(x, y));
                }
            }
        }
    }

    #[test]
    fn identity_action() {
        let g = a1();
        let gam = DARootRN::new(alpha(), 2, -1).to_da(&g);
        let v = da_act(&g, &identity(&g), &gam);
        assert_eq!(v, SignedDARoot { root: gam, sign: 1 });
    }

    #[test]
    fn pi_d_action() {
        let g = a1();
        let x = pi_d(&g);
        let v = da_act(&g, &x, &DARootRN::new(alpha(), 0, 1).to_da(&g));
        assert_eq!(v.sign, 1);
        assert_eq!(DARootRN::from_da(&g, &v.root), DARootRN::new(alpha(), 0, 1));
        let v = da_act(&g, &x, &DARootRN::new(alpha(), -1, 2).to_da(&g));
        assert_eq!(v.sign, 1);
        assert_eq!(DARootRN::from_da(&g, &v.root), DARootRN::new(alpha(), -1, 1));
    }

    #[test]
    fn reflection_examples() {
        let f = FiniteGround::from_label("A2").unwrap();
        let b = DARoot { beta: f.sys.simple_root(0), n: 0 };
        let s = da_reflection(&f, &b);
        assert_eq!(s.mu, f.cw_zero());
        assert_eq!(s.w, f.sys.simple_reflection(0));

        let g = a1();
        let s = da_reflection(&g, &DARootRN::new(alpha(), 0, 1).to_da(&g));
        assert_eq!(s.mu, AffCoweight::new(g.coroot(&AffRealRoot::new(alpha(), 0)).nu, 0, 0));
        assert_eq!(s.w, g.from_finite(g.sys.simple_reflection(0)));
        let s = da_reflection(&g, &DARootRN::new(alpha(), 1, 1).to_da(&g));
        assert_eq!(s.mu.central, 1);
        assert_eq!(s.mu.nu.0, IVec::from_slice(&[2]));
        assert_eq!(s.w, g.weyl_mul(&g.translation(IVec::unit(0)), &g.from_finite(g.sys.simple_reflection(0))));
    }

    #[test]
    fn reflections_are_involutions() {
        let g = AffineGround::from_label("A2").unwrap();
        for beta in g.sys.positive_roots() {
            for r in -3..=3 {
                for n in -3..=3 {
                    let s = da_reflection(&g, &DARootRN::new(*beta, r, n).to_da(&g));
                    assert_eq!(mult(&g, &s, &s), identity(&g));
                }
            }
        }
    }

    #[test]
    fn rotation_examples() {
        let c = DARootRN::new(alpha(), 0, 1);
        assert_eq!(rn_rotate(&c, &c.at(0, 0)).unwrap(), c.at(0, 2));
        let c = DARootRN::new(alpha(), 1, 2);
        assert_eq!(rn_rotate(&c, &c).unwrap(), c);
        let other = DARootRN::new(FiniteRoot(IVec::from_slice(&[0, 1])), 0, 0);
        assert!(rn_rotate(&c, &other).is_err());
    }

    #[test]
    fn rn_round_trip() {
        let g = AffineGround::from_label("A2").unwrap();
        for beta in g.sys.positive_roots() {
            for r in -4..=4 {
                for n in -4..=4 {
                    let rn = DARootRN::new(*beta, r, n);
                    assert_eq!(DARootRN::from_da(&g, &rn.to_da(&g)), rn);
                }
            }
        }
    }
}
