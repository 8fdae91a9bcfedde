//! Seeded instance generation. Instance `i` of a campaign with seed `s` draws
//! from ChaCha8 seeded by `s` on stream `i`, so instances are independent of
//! scheduling and of each other.

use dabru_core::affine::{AffCoweight, AffineGround};
use dabru_core::bruhat::edge;
use dabru_core::daweyl::{DARoot, DARootRN, Elt, Root, WTElement};
use dabru_core::ground::{FiniteGround, Ground};
use dabru_core::linalg::IVec;
use dabru_core::rootsys::FiniteCoweight;
use dabru_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grammar::Syntax;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Coordinate ranges for random elements and roots.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// `|ν_i|`, `|λ_i|` bound.
    pub coord: i64,
    pub max_level: i64,
    pub central: i64,
    /// Generators in the random Weyl word.
    pub word_len: usize,
    /// `|r|` and `|n|` bounds for random roots.
    pub root_r: i64,
    pub root_n: i64,
}

impl Shape {
    pub fn for_rank(rank: usize) -> Shape {
        if rank >= 4 {
            Shape { coord: 1, max_level: 2, central: 2, word_len: 8, root_r: 2, root_n: 2 }
        } else {
            Shape { coord: 2, max_level: 2, central: 2, word_len: 6, root_r: 3, root_n: 3 }
        }
    }
}

fn coords(rng: &mut ChaCha8Rng, rank: usize, bound: i64) -> IVec {
    let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect();
    IVec::from_slice(&v)
}

pub trait Sample: Syntax {
    fn random_element(&self, rng: &mut ChaCha8Rng, shape: &Shape) -> Elt<Self>;
    fn random_root(&self, rng: &mut ChaCha8Rng, shape: &Shape) -> Root<Self>;
}

fn random_word<G: Ground>(g: &G, rng: &mut ChaCha8Rng, start: G::Weyl, len: usize) -> G::Weyl {
    let gens = g.simple_indices();
    let n = rng.gen_range(0..=len);
    (0..n).fold(start, |w, _| g.weyl_mul(&w, &g.simple_reflection(rng.gen_range(gens.clone()))))
}

impl Sample for AffineGround {
    /// Level `1..=max_level`, so always in the Tits cone.
    fn random_element(&self, rng: &mut ChaCha8Rng, shape: &Shape) -> Elt<AffineGround> {
        let rank = self.rank();
        let level = rng.gen_range(1..=shape.max_level);
        let nu = FiniteCoweight(coords(rng, rank, shape.coord));
        let central = rng.gen_range(-shape.central..=shape.central);
        let lam = coords(rng, rank, shape.coord);
        let w = random_word(self, rng, self.translation(lam), shape.word_len);
        WTElement { mu: AffCoweight::new(nu, level, central), w }
    }

    fn random_root(&self, rng: &mut ChaCha8Rng, shape: &Shape) -> Root<AffineGround> {
        let pos = self.sys.positive_roots();
        let beta = pos[rng.gen_range(0..pos.len())];
        let r = rng.gen_range(-shape.root_r..=shape.root_r);
        let n = rng.gen_range(-shape.root_n..=shape.root_n);
        DARootRN::new(beta, r, n).to_da(self)
    }
}

impl Sample for FiniteGround {
    /// `ν` drawn in coroot coordinates, so always in `Q∨`.
    fn random_element(&self, rng: &mut ChaCha8Rng, shape: &Shape) -> Elt<FiniteGround> {
        let rank = self.sys.rank();
        let c = coords(rng, rank, shape.coord);
        let mu = FiniteCoweight(self.sys.coroot_coords_to_coweight(&c));
        let w = random_word(self, rng, self.weyl_id(), shape.word_len);
        WTElement { mu, w }
    }

    fn random_root(&self, rng: &mut ChaCha8Rng, shape: &Shape) -> Root<FiniteGround> {
        let pos = self.sys.positive_roots();
        let beta = pos[rng.gen_range(0..pos.len())];
        DARoot { beta, n: rng.gen_range(-shape.root_n..=shape.root_n) }
    }
}

/// A random up-edge `(x, γ)`: draw `x` and `γ`, and replace `x` by `x s_γ`
/// when `x(γ) < 0`.
pub fn up_edge<G: Sample>(g: &G, rng: &mut ChaCha8Rng, shape: &Shape) -> Result<(Elt<G>, Root<G>)> {
    loop {
        let x = g.random_element(rng, shape);
        let gamma = g.random_root(rng, shape);
        if let Some(e) = edge(g, &x, &gamma)? {
            return Ok(if e.up { (x, gamma) } else { (e.target, gamma) });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dabru_core::daweyl::acts_positive;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let g = AffineGround::from_label("A2").unwrap();
        let shape = Shape::for_rank(2);
        let a = up_edge(&g, &mut instance_rng(7, 3), &shape).unwrap();
        let b = up_edge(&g, &mut instance_rng(7, 3), &shape).unwrap();
        assert_eq!(a, b);
        let others: Vec<_> = (0..8).map(|i| up_edge(&g, &mut instance_rng(7, i), &shape).unwrap()).collect();
        assert!(others.iter().filter(|o| **o == a).count() <= 2);
        for (x, gamma) in others {
            assert!(acts_positive(&g, &x, &gamma));
        }
    }
}
