//! Finite simply-laced root systems: types A_n, D_n, E_6, E_7, E_8.
//!
//! Roots are integer vectors in the simple-root basis, coweights are integer
//! vectors in the fundamental-coweight basis, so `<ω_i∨, α_j> = δ_ij` and every
//! pairing is a dot product. Because the Cartan matrix is symmetric, the coroot
//! θ∨ of θ = Σ c_i α_i is Σ c_i α_i∨, whose fundamental coordinates are `A·c`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{internal, usage, Error, Result};
use crate::linalg::{det_adj, IMat, IVec, MAX_RANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    D(usize),
    E(usize),
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::D(n) | CartanType::E(n) => n,
        }
    }

    /// Parses labels such as `A2`, `D4`, `E6`.
    pub fn parse(label: &str) -> Result<CartanType> {
        let label = label.trim();
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(|| Error::Config("empty Cartan label".into()))?;
        let n: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Config(alloc::format!("bad Cartan label {label:?}")))?;
        let ty = match family.to_ascii_uppercase() {
            'A' if (1..=MAX_RANK).contains(&n) => CartanType::A(n),
            'D' if (4..=MAX_RANK).contains(&n) => CartanType::D(n),
            'E' if (6..=8).contains(&n) => CartanType::E(n),
            _ => {
                return Err(Error::Config(alloc::format!(
                    "unsupported Cartan label {label:?} (simply-laced A1..A8, D4..D8, E6..E8)"
                )))
            }
        };
        Ok(ty)
    }

    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            CartanType::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            CartanType::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            // Bourbaki numbering: 1-3-4-5-6-7-8 with 2 attached to 4.
            CartanType::E(n) => {
                let mut e = alloc::vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// A type-and-rank tag together with its Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub label: CartanType,
    pub cartan: IMat,
}

impl CartanDatum {
    pub fn new(label: CartanType) -> CartanDatum {
        let rank = label.rank();
        let mut cartan = IMat::identity(rank);
        for i in 0..rank {
            cartan.0[i][i] = 2;
        }
        for (i, j) in label.edges() {
            cartan.0[i][j] = -1;
            cartan.0[j][i] = -1;
        }
        CartanDatum { label, cartan }
    }

    pub fn from_label(label: &str) -> Result<CartanDatum> {
        Ok(CartanDatum::new(CartanType::parse(label)?))
    }

    pub fn rank(&self) -> usize {
        self.label.rank()
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let a = self.cartan.0[i][j];
                let ok = if i == j { a == 2 } else { (a == 0 || a == -1) && a == self.cartan.0[j][i] };
                if !ok {
                    return Err(Error::Config(alloc::format!("not a simply-laced Cartan matrix at ({i},{j})")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteRoot(pub IVec);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FiniteCoweight(pub IVec);

impl FiniteRoot {
    pub fn is_positive(&self) -> bool {
        self.0.sign() > 0
    }
    pub fn height(&self) -> i64 {
        self.0.sum()
    }
}

impl core::ops::Neg for FiniteRoot {
    type Output = FiniteRoot;
    fn neg(self) -> FiniteRoot {
        FiniteRoot(-self.0)
    }
}

impl fmt::Debug for FiniteRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α{:?}", self.0)
    }
}

impl fmt::Debug for FiniteCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω∨{:?}", self.0)
    }
}

/// Finite Weyl group element, stored as its action on simple-root
/// coordinates together with the inverse matrix.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWeylElt {
    pub mat: IMat,
    pub inv: IMat,
}

impl fmt::Debug for FiniteWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.mat)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteRootSystem {
    pub datum: CartanDatum,
    rank: usize,
    positive: Vec<FiniteRoot>,
    index: BTreeMap<FiniteRoot, usize>,
    /// 2ρ in simple-root coordinates (sum of the positive roots).
    two_rho: IVec,
    highest: FiniteRoot,
    dual_coxeter: i64,
    det: i64,
    adj: [[i64; MAX_RANK]; MAX_RANK],
}

impl FiniteRootSystem {
    /// Enumerates roots by closing the simple roots under simple reflections.
    pub fn build(datum: CartanDatum) -> Result<FiniteRootSystem> {
        datum.validate()?;
        let rank = datum.rank();
        let a = &datum.cartan;
        let mut seen: BTreeMap<FiniteRoot, ()> = BTreeMap::new();
        let mut queue: Vec<FiniteRoot> = (0..rank).map(|i| FiniteRoot(IVec::unit(i))).collect();
        for r in &queue {
            seen.insert(*r, ());
        }
        while let Some(root) = queue.pop() {
            for i in 0..rank {
                let c: i64 = (0..rank).map(|j| a.0[i][j] as i64 * root.0 .0[j]).sum();
                let mut img = root;
                img.0 .0[i] -= c;
                if seen.insert(img, ()).is_none() {
                    queue.push(img);
                }
            }
            if seen.len() > 1000 {
                return Err(internal!("root closure did not terminate"));
            }
        }
        let mut positive: Vec<FiniteRoot> = seen.keys().copied().filter(|r| r.is_positive()).collect();
        if positive.len() * 2 != seen.len() {
            return Err(internal!("root set is not symmetric under negation"));
        }
        positive.sort_by(|x, y| x.height().cmp(&y.height()).then(y.cmp(x)));
        let index = positive.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let two_rho = positive.iter().fold(IVec::ZERO, |acc, r| acc + r.0);
        let highest = *positive.last().expect("nonempty");
        let (det, adj) = det_adj(a, rank);
        let sys = FiniteRootSystem {
            dual_coxeter: 1 + highest.height(),
            datum,
            rank,
            positive,
            index,
            two_rho,
            highest,
            det,
            adj,
        };
        sys.check_ade_pairing_bound()?;
        Ok(sys)
    }

    pub fn from_label(label: &str) -> Result<FiniteRootSystem> {
        FiniteRootSystem::build(CartanDatum::from_label(label)?)
    }

    /// Distinct positive roots pair to -1, 0 or 1 in ADE type.
    fn check_ade_pairing_bound(&self) -> Result<()> {
        for b in &self.positive {
            let bv = self.coroot_unchecked(b);
            for t in &self.positive {
                if b != t && self.pairing(&bv, t).abs() > 1 {
                    return Err(internal!("pairing <{b:?}∨, {t:?}> outside {{-1,0,1}}"));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> CartanType {
        self.datum.label
    }

    pub fn positive_roots(&self) -> &[FiniteRoot] {
        &self.positive
    }

    /// All roots, positive ones first, then their negatives.
    pub fn roots(&self) -> impl Iterator<Item = FiniteRoot> + '_ {
        self.positive.iter().copied().chain(self.positive.iter().map(|r| -*r))
    }

    pub fn simple_root(&self, i: usize) -> FiniteRoot {
        FiniteRoot(IVec::unit(i))
    }

    pub fn highest_root(&self) -> FiniteRoot {
        self.highest
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn is_root(&self, r: &FiniteRoot) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&-*r)
    }

    pub fn positive_index(&self, r: &FiniteRoot) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.datum.cartan.0[i][j] as i64
    }

    pub fn pairing(&self, nu: &FiniteCoweight, theta: &FiniteRoot) -> i64 {
        nu.0.dot(&theta.0)
    }

    /// Pairing with a check that both vectors fit the rank.
    pub fn pairing_checked(&self, nu: &FiniteCoweight, theta: &FiniteRoot) -> Result<i64> {
        if nu.0 .0[self.rank..].iter().any(|&x| x != 0) || theta.0 .0[self.rank..].iter().any(|&x| x != 0) {
            return Err(usage!("dimension mismatch for rank {}", self.rank));
        }
        Ok(self.pairing(nu, theta))
    }

    fn coroot_unchecked(&self, theta: &FiniteRoot) -> FiniteCoweight {
        FiniteCoweight(self.coroot_coords_to_coweight(&theta.0))
    }

    pub fn coroot(&self, theta: &FiniteRoot) -> Result<FiniteCoweight> {
        if !self.is_root(theta) {
            return Err(Error::Domain(alloc::format!("{theta:?} is not a root")));
        }
        Ok(self.coroot_unchecked(theta))
    }

    /// Converts simple-coroot coordinates into fundamental-coweight coordinates.
    pub fn coroot_coords_to_coweight(&self, c: &IVec) -> IVec {
        let mut out = IVec::ZERO;
        for j in 0..self.rank {
            out.0[j] = (0..self.rank).map(|i| self.cartan_entry(i, j) * c.0[i]).sum();
        }
        out
    }

    /// Simple-coroot coordinates of a coweight, if it lies in the coroot lattice.
    pub fn coweight_to_coroot_coords(&self, nu: &FiniteCoweight) -> Option<IVec> {
        let mut out = IVec::ZERO;
        for i in 0..self.rank {
            let s: i64 = (0..self.rank).map(|j| self.adj[i][j] * nu.0 .0[j]).sum();
            if s % self.det != 0 {
                return None;
            }
            out.0[i] = s / self.det;
        }
        Some(out)
    }

    /// The W-invariant form on the coroot lattice in simple-coroot coordinates.
    pub fn coroot_form(&self, c: &IVec, d: &IVec) -> i64 {
        let ac = self.coroot_coords_to_coweight(c);
        ac.dot(d)
    }

    /// `<ν, 2ρ_fin>`.
    pub fn two_ht(&self, nu: &FiniteCoweight) -> i64 {
        nu.0.dot(&self.two_rho)
    }

    pub fn two_rho(&self) -> FiniteRoot {
        FiniteRoot(self.two_rho)
    }

    // ---- Weyl group ----

    pub fn identity(&self) -> FiniteWeylElt {
        let m = IMat::identity(self.rank);
        FiniteWeylElt { mat: m, inv: m }
    }

    pub fn simple_reflection(&self, i: usize) -> FiniteWeylElt {
        let mut m = IMat::identity(self.rank);
        for j in 0..self.rank {
            m.0[i][j] -= self.datum.cartan.0[i][j];
        }
        FiniteWeylElt { mat: m, inv: m }
    }

    /// s_θ(x) = x - <θ∨, x> θ.
    pub fn reflection(&self, theta: &FiniteRoot) -> FiniteWeylElt {
        let cv = self.coroot_unchecked(theta);
        let mut m = IMat::identity(self.rank);
        for k in 0..self.rank {
            for j in 0..self.rank {
                m.0[k][j] -= (theta.0 .0[k] * cv.0 .0[j]) as i32;
            }
        }
        FiniteWeylElt { mat: m, inv: m }
    }

    pub fn mul(&self, a: &FiniteWeylElt, b: &FiniteWeylElt) -> FiniteWeylElt {
        FiniteWeylElt { mat: a.mat.mul(&b.mat, self.rank), inv: b.inv.mul(&a.inv, self.rank) }
    }

    pub fn inverse(&self, w: &FiniteWeylElt) -> FiniteWeylElt {
        FiniteWeylElt { mat: w.inv, inv: w.mat }
    }

    /// Product of simple reflections, left to right.
    pub fn word(&self, word: &[usize]) -> FiniteWeylElt {
        word.iter().fold(self.identity(), |acc, &i| self.mul(&acc, &self.simple_reflection(i)))
    }

    pub fn act(&self, w: &FiniteWeylElt, theta: &FiniteRoot) -> FiniteRoot {
        FiniteRoot(w.mat.apply(&theta.0))
    }

    /// Dual action on coweights: ν ↦ (w^{-1})^T ν.
    pub fn act_cw(&self, w: &FiniteWeylElt, nu: &FiniteCoweight) -> FiniteCoweight {
        FiniteCoweight(w.inv.apply_transpose(&nu.0))
    }

    /// {θ > 0 : w(θ) < 0}.
    pub fn inv_fin(&self, w: &FiniteWeylElt) -> Vec<FiniteRoot> {
        self.positive.iter().copied().filter(|r| !self.act(w, r).is_positive()).collect()
    }

    pub fn length(&self, w: &FiniteWeylElt) -> usize {
        self.positive.iter().filter(|r| !self.act(w, r).is_positive()).count()
    }

    pub fn longest_element(&self) -> FiniteWeylElt {
        let mut w = self.identity();
        'outer: loop {
            for i in 0..self.rank {
                // w s_i is longer iff w(α_i) > 0
                if self.act(&w, &self.simple_root(i)).is_positive() {
                    w = self.mul(&w, &self.simple_reflection(i));
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Dominant W_fin-translate of `nu`, and `u` with `u(nu)` dominant.
    pub fn dominant(&self, nu: &FiniteCoweight) -> (FiniteCoweight, FiniteWeylElt) {
        let mut cur = *nu;
        let mut witness = self.identity();
        while let Some(i) = (0..self.rank).find(|&i| cur.0 .0[i] < 0) {
            let s = self.simple_reflection(i);
            cur = self.act_cw(&s, &cur);
            witness = self.mul(&s, &witness);
        }
        (cur, witness)
    }

    pub fn describe(&self) -> String {
        alloc::format!("{} with {} positive roots, h∨ = {}", self.label(), self.positive.len(), self.dual_coxeter)
    }
}
