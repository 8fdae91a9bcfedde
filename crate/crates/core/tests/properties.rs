use dabru_core::affine::{AffCoweight, AffineGround};
use dabru_core::bruhat::{self, shorten_chain};
use dabru_core::daweyl::{
    self, da_act, da_reflection, mul_reflection, mult, rn_act, rn_pairing, rn_rotate, sigma, DARootRN, Elt, Root,
    WTElement,
};
use dabru_core::ground::{FiniteGround, Ground};
use dabru_core::length::{self, build_window, enlarge_window, window_flags};
use dabru_core::linalg::IVec;
use dabru_core::oracle::brute_inv_pp;
use dabru_core::rootsys::{FiniteCoweight, FiniteRoot};
use proptest::prelude::*;
use std::sync::OnceLock;

const LABELS: [&str; 3] = ["A1", "A2", "A3"];

fn ground(i: usize) -> &'static AffineGround {
    static G: OnceLock<Vec<AffineGround>> = OnceLock::new();
    &G.get_or_init(|| LABELS.iter().map(|l| AffineGround::from_label(l).unwrap()).collect())[i]
}

#[derive(Clone, Debug)]
struct Params {
    g: usize,
    level: i64,
    nu: [i64; 3],
    central: i64,
    lam: [i64; 3],
    word: Vec<usize>,
    beta: usize,
    r: i64,
    n: i64,
}

fn params(min_level: i64) -> impl Strategy<Value = Params> {
    (
        0..LABELS.len(),
        min_level..=2i64,
        prop::array::uniform3(-3..=3i64),
        -2..=2i64,
        prop::array::uniform3(-2..=2i64),
        prop::collection::vec(0..3usize, 0..6),
        0..6usize,
        -3..=3i64,
        -3..=3i64,
    )
        .prop_map(|(g, level, nu, central, lam, word, beta, r, n)| Params { g, level, nu, central, lam, word, beta, r, n })
}

fn build(p: &Params) -> (&'static AffineGround, Elt<AffineGround>, DARootRN) {
    let g = ground(p.g);
    let rank = g.rank();
    let mut nu = p.nu;
    if p.level == 0 {
        nu = [0; 3];
    }
    let mu = AffCoweight::new(FiniteCoweight(IVec::from_slice(&nu[..rank])), p.level, p.central);
    let mut w = g.translation(IVec::from_slice(&p.lam[..rank]));
    for &i in &p.word {
        w = g.weyl_mul(&w, &g.from_finite(g.sys.simple_reflection(i % rank)));
    }
    let pos = g.sys.positive_roots();
    let beta = pos[p.beta % pos.len()];
    (g, WTElement { mu, w }, DARootRN::new(beta, p.r, p.n))
}

/// Orients the edge upward: returns the lower end.
fn up_edge(g: &AffineGround, x: Elt<AffineGround>, gamma: &DARootRN) -> Elt<AffineGround> {
    let root = gamma.to_da(g);
    if daweyl::acts_positive(g, &x, &root) {
        x
    } else {
        mul_reflection(g, &x, &root)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn action_is_compatible_with_multiplication(p in params(0), q in params(0)) {
        let (g, x, gamma) = build(&p);
        let q = Params { g: p.g, ..q };
        let (_, y, _) = build(&q);
        let root = gamma.to_da(g);
        let xy = mult(g, &x, &y);
        let lhs = da_act(g, &xy, &root);
        let inner = da_act(g, &y, &root);
        let mut rhs = da_act(g, &x, &inner.root);
        rhs.sign *= inner.sign;
        prop_assert_eq!(lhs, rhs);
        let xi = daweyl::inverse(g, &x);
        prop_assert_eq!(mult(g, &x, &xi), daweyl::identity(g));
        let back = da_act(g, &xi, &da_act(g, &x, &root).root);
        prop_assert_eq!(back.root, root);
    }

    #[test]
    fn rn_formulas(p in params(0)) {
        let (g, x, gamma) = build(&p);
        let (img, sign) = rn_act(g, &x, &gamma);
        let direct = da_act(g, &x, &gamma.to_da(g));
        prop_assert_eq!(img.to_da(g), direct.root);
        prop_assert_eq!(sign, direct.sign as i64);
        let s = da_reflection(g, &gamma.to_da(g));
        for (ds, dm) in [(0, 0), (1, -2), (-3, 1), (2, 2)] {
            let theta = gamma.at(gamma.r + ds, gamma.n + dm);
            // |s_{β[r,n]}| rotates the grid
            prop_assert_eq!(DARootRN::from_da(g, &da_act(g, &s, &theta.to_da(g)).root), rn_rotate(&gamma, &theta).unwrap());
        }
        for other in g.sys.positive_roots() {
            let theta = DARootRN::new(*other, p.r - 1, p.n + 1);
            // s_{β[r,n]}(θ[s,m]) = θ[s,m] - <θ[s,m], β[r,n]> β[r,n]
            let k = rn_pairing(g, &gamma, &theta);
            let braw = gamma.to_raw();
            let traw = theta.to_raw();
            let expect = daweyl::RawDA {
                g: dabru_core::affine::AffRealRoot::new(
                    FiniteRoot(traw.g.theta.0 - braw.g.theta.0.scale(k)),
                    traw.g.r - k * braw.g.r,
                ),
                m: traw.m - k * braw.m,
            };
            prop_assert_eq!(da_act(g, &s, &theta.to_da(g)), daweyl::normalize(g, expect));
            prop_assert_eq!(da_act(g, &s, &theta.to_da(g)), daweyl::reflect_by_formula(g, &gamma.to_da(g), &theta.to_da(g)));
        }
    }

    #[test]
    fn positivity_is_monotone_in_the_quadrant(p in params(1)) {
        let (g, x, gamma) = build(&p);
        if sigma(gamma.r, gamma.n) > 0 && daweyl::acts_positive(g, &x, &gamma.to_da(g)) {
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert!(daweyl::acts_positive(g, &x, &gamma.at(gamma.r + i, gamma.n + j).to_da(g)));
                }
            }
        }
    }

    #[test]
    fn length_formulas_agree(p in params(0)) {
        let (g, x, _) = build(&p);
        prop_assert_eq!(length::ell(g, &x).unwrap(), length::ell_via_eq19(g, &x).unwrap());
        let t = length::ell_translation(g, &x.mu).unwrap();
        let moved = g.act_cw(&x.w, &x.mu);
        prop_assert_eq!(t, length::ell_translation(g, &moved).unwrap());
        let pure = WTElement { mu: x.mu, w: g.weyl_id() };
        prop_assert_eq!(t, length::ell(g, &pure).unwrap());
    }

    #[test]
    fn inversion_membership(p in params(1), m in -6..=6i64) {
        let (g, x, _) = build(&p);
        for beta in g.positive_roots_up_to(2) {
            let root = Root::<AffineGround> { beta, n: m };
            prop_assert_eq!(length::inv_member(g, &x, &root), length::inv_member_direct(g, &x, &root));
        }
        let window = length::Window::new(g.positive_roots_up_to(1 + p.r.abs()));
        prop_assert_eq!(
            length::inv_window_count(g, &window, &x),
            length::inv_window_enumerate(g, &window, &x).len() as i64
        );
    }

    #[test]
    fn main_theorem_and_oracles(p in params(1)) {
        let (g, x, gamma) = build(&p);
        let x = up_edge(g, x, &gamma);
        let root = gamma.to_da(g);
        let d = bruhat::length_diff(g, &x, &root).unwrap();
        prop_assert!(d.holds(), "{:?}", d);
        let pp = bruhat::inv_pp(g, &x, &root).unwrap();
        prop_assert!(pp.contains(&root));
        for r in &pp {
            prop_assert!(pp.contains(&bruhat::iota(g, &root, r)));
        }
        let cert = dabru_core::oracle::certified_box(g, &x, &root).unwrap();
        let brute = brute_inv_pp(g, &x, &root, cert.r, cert.n).unwrap();
        prop_assert_eq!(&brute, &pp);
        let wider = brute_inv_pp(g, &x, &root, 2 * cert.r + 1, 2 * cert.n + 1).unwrap();
        prop_assert_eq!(&wider, &pp);
        let xs = mul_reflection(g, &x, &root);
        prop_assert!(length::ell_eps(g, &xs).unwrap() > length::ell_eps(g, &x).unwrap());
        prop_assert_eq!(bruhat::is_cover(g, &x, &root).unwrap(), pp.len() == 1);
    }

    #[test]
    fn decomposition_and_windows(p in params(1)) {
        let (g, x, gamma) = build(&p);
        let x = up_edge(g, x, &gamma);
        let root = gamma.to_da(g);
        let w = build_window(g, &x, &root).unwrap();
        prop_assert!(window_flags(g, &x, &root, &w).unwrap().all());
        let d = bruhat::decomposition_check(g, &x, &root, &w).unwrap();
        prop_assert!(d.ok(), "{:?}", d);
        prop_assert_eq!(d.target - d.source, d.inv_pp);
        let big = enlarge_window(g, &x, &root, &w, 2);
        prop_assert!(window_flags(g, &x, &root, &big).unwrap().all());
        let d = bruhat::decomposition_check(g, &x, &root, &big).unwrap();
        prop_assert!(d.ok(), "{:?}", d);
        let wb = g.abs_root(&g.act_root(&x.w, &root.beta));
        prop_assert!(length::height_identity_check(g, &wb, &w).unwrap());
    }

    #[test]
    fn chains_for_non_covers(p in params(1)) {
        let (g, x, gamma) = build(&p);
        let x = up_edge(g, x, &gamma);
        let pp = bruhat::inv_pp(g, &x, &gamma.to_da(g)).unwrap();
        if pp.len() >= 2 {
            let chain = shorten_chain(g, &x, &gamma).unwrap();
            prop_assert_eq!(chain.elements.len(), 4);
            for (i, s) in chain.steps.iter().enumerate() {
                prop_assert!(bruhat::length_diff_check(g, &chain.elements[i], &s.to_da(g)).unwrap());
            }
        }
    }
}

#[test]
fn finite_ground_theorem() {
    let f = FiniteGround::from_label("A2").unwrap();
    let pos = f.sys.positive_roots().to_vec();
    let mut checked = 0;
    for a in -2..=2 {
        for b in -2..=2 {
            let mu = FiniteCoweight(f.sys.coroot_coords_to_coweight(&IVec::from_slice(&[a, b])));
            for word in [vec![], vec![0], vec![0, 1], vec![1, 0, 1]] {
                let x = WTElement { mu, w: f.sys.word(&word) };
                assert_eq!(length::ell(&f, &x).unwrap(), length::ell_via_eq19(&f, &x).unwrap());
                for beta in &pos {
                    for n in -2..=2 {
                        let root = Root::<FiniteGround> { beta: *beta, n };
                        let lo = if daweyl::acts_positive(&f, &x, &root) { x } else { mul_reflection(&f, &x, &root) };
                        assert!(bruhat::length_diff_check(&f, &lo, &root).unwrap());
                        let w = build_window(&f, &lo, &root).unwrap();
                        assert!(bruhat::decomposition_check(&f, &lo, &root, &w).unwrap().ok());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(checked, 25 * 4 * 3 * 5);
}
