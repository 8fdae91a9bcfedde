//! The affine Weyl group as a Coxeter group, through its geometric
//! representation on `α_0, ..., α_n`. Shares only the finite Cartan matrix
//! with the rest of the crate.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::daweyl::{self, Elt, Root};
use crate::ground::{FiniteGround, Ground};
use crate::rootsys::FiniteRootSystem;

/// A word in the generators `s_0, ..., s_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoxeterElt {
    pub word: Vec<usize>,
}

impl CoxeterElt {
    pub fn new(word: Vec<usize>) -> CoxeterElt {
        CoxeterElt { word }
    }
}

/// Square integer matrix stored row-major.
type Mat = Vec<i64>;

pub struct CoxeterGroup {
    dim: usize,
    /// Affine Cartan matrix `a_ij = <α_i∨, α_j>`.
    cartan: Vec<i64>,
    gens: Vec<Mat>,
}

impl CoxeterGroup {
    /// The affine Weyl group of the untwisted affinization of `sys`.
    pub fn affine(sys: &FiniteRootSystem) -> CoxeterGroup {
        let n = sys.rank();
        let dim = n + 1;
        let theta = sys.highest_root();
        let mut cartan = vec![0; dim * dim];
        for i in 0..n {
            for j in 0..n {
                cartan[(i + 1) * dim + j + 1] = sys.cartan_entry(i, j);
            }
        }
        cartan[0] = 2;
        for j in 0..n {
            // <α_0∨, α_j> = -<θ∨, α_j> and symmetric in the simply-laced case
            let t: i64 = (0..n).map(|k| theta.0 .0[k] * sys.cartan_entry(k, j)).sum();
            cartan[j + 1] = -t;
            cartan[(j + 1) * dim] = -t;
        }
        let gens = (0..dim)
            .map(|i| {
                // s_i(α_j) = α_j - a_ij α_i; column j holds the image of α_j
                let mut m = identity(dim);
                for j in 0..dim {
                    m[i * dim + j] -= cartan[i * dim + j];
                }
                m
            })
            .collect();
        CoxeterGroup { dim, cartan, gens }
    }

    pub fn rank(&self) -> usize {
        self.dim
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i * self.dim + j]
    }

    pub fn matrix(&self, e: &CoxeterElt) -> Mat {
        e.word.iter().fold(identity(self.dim), |acc, &i| mul(&acc, &self.gens[i], self.dim))
    }

    /// `w(α_i) < 0`, read off column `i`.
    fn is_right_descent(&self, m: &Mat, i: usize) -> bool {
        (0..self.dim).any(|k| m[k * self.dim + i] < 0)
    }

    /// A reduced word, by repeatedly stripping right descents.
    pub fn reduced_word_of(&self, m: &Mat) -> Vec<usize> {
        let mut m = m.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.dim).find(|&i| self.is_right_descent(&m, i)) {
            m = mul(&m, &self.gens[i], self.dim);
            word.push(i);
        }
        word.reverse();
        word
    }

    pub fn reduce(&self, e: &CoxeterElt) -> CoxeterElt {
        CoxeterElt::new(self.reduced_word_of(&self.matrix(e)))
    }

    pub fn cox_length(&self, e: &CoxeterElt) -> usize {
        self.reduced_word_of(&self.matrix(e)).len()
    }

    /// Matrices of all subword products of `word`.
    fn subword_products(&self, word: &[usize]) -> BTreeSet<Mat> {
        let mut set = BTreeSet::from([identity(self.dim)]);
        for &i in word {
            let extended: Vec<Mat> = set.iter().map(|m| mul(m, &self.gens[i], self.dim)).collect();
            set.extend(extended);
        }
        set
    }

    /// Subword criterion against a reduced word of `b`.
    pub fn cox_leq(&self, a: &CoxeterElt, b: &CoxeterElt) -> bool {
        let rb = self.reduced_word_of(&self.matrix(b));
        self.subword_products(&rb).contains(&self.matrix(a))
    }

    /// One reduced word for every element of length at most `max_len`.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<CoxeterElt> {
        let mut seen: BTreeMap<Mat, Vec<usize>> = BTreeMap::new();
        seen.insert(identity(self.dim), Vec::new());
        let mut layer = vec![(identity(self.dim), Vec::new())];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (m, w) in &layer {
                for i in 0..self.dim {
                    let m2 = mul(m, &self.gens[i], self.dim);
                    if !seen.contains_key(&m2) && !self.is_right_descent(m, i) {
                        let mut w2: Vec<usize> = w.clone();
                        w2.push(i);
                        seen.insert(m2.clone(), w2.clone());
                        next.push((m2, w2));
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<CoxeterElt> = seen.into_values().map(CoxeterElt::new).collect();
        out.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
        out
    }
}

fn identity(dim: usize) -> Mat {
    let mut m = vec![0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

fn mul(a: &Mat, b: &Mat, dim: usize) -> Mat {
    let mut out = vec![0; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik != 0 {
                for j in 0..dim {
                    out[i * dim + j] += aik * b[k * dim + j];
                }
            }
        }
    }
    out
}

/// The element of `W_T` over a finite ground named by a word: `s_i` for
/// `i >= 1` is the finite simple reflection, `s_0 = s_{θ[-1]} = π^{-θ∨} s_θ`.
pub fn identify(ground: &FiniteGround, e: &CoxeterElt) -> Elt<FiniteGround> {
    let theta = ground.sys.highest_root();
    e.word.iter().fold(daweyl::identity(ground), |acc, &i| {
        let root = if i == 0 {
            Root::<FiniteGround> { beta: theta, n: -1 }
        } else {
            Root::<FiniteGround> { beta: ground.simple_root(i), n: 0 }
        };
        daweyl::mul_reflection(ground, &acc, &root)
    })
}
