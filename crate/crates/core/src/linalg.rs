//! Fixed-capacity integer vectors and matrices.
//!
//! Every supported Cartan datum has rank at most [`MAX_RANK`], so all
//! coordinates live in stack arrays and every value is `Copy`. Entries past the
//! rank of the system in use are kept at zero; equality and ordering rely on it.

use core::fmt;
use core::ops::{Add, Neg, Sub};

/// Largest supported rank (E_8).
pub const MAX_RANK: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IVec(pub [i64; MAX_RANK]);

impl IVec {
    pub const ZERO: IVec = IVec([0; MAX_RANK]);

    pub fn from_slice(xs: &[i64]) -> IVec {
        assert!(xs.len() <= MAX_RANK, "vector longer than MAX_RANK");
        let mut v = [0; MAX_RANK];
        v[..xs.len()].copy_from_slice(xs);
        IVec(v)
    }

    pub fn unit(i: usize) -> IVec {
        let mut v = IVec::ZERO;
        v.0[i] = 1;
        v
    }

    pub fn dot(&self, other: &IVec) -> i64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: i64) -> IVec {
        let mut v = *self;
        v.0.iter_mut().for_each(|x| *x *= k);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Sign of a root-like vector: `1` if all coordinates are `>= 0` and some
    /// is positive, `-1` for the mirror case, `0` otherwise.
    pub fn sign(&self) -> i8 {
        let pos = self.0.iter().any(|&x| x > 0);
        let neg = self.0.iter().any(|&x| x < 0);
        match (pos, neg) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn coords(&self, rank: usize) -> &[i64] {
        &self.0[..rank]
    }
}

impl Add for IVec {
    type Output = IVec;
    fn add(mut self, rhs: IVec) -> IVec {
        self.0.iter_mut().zip(rhs.0.iter()).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for IVec {
    type Output = IVec;
    fn sub(mut self, rhs: IVec) -> IVec {
        self.0.iter_mut().zip(rhs.0.iter()).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Neg for IVec {
    type Output = IVec;
    fn neg(self) -> IVec {
        self.scale(-1)
    }
}

impl fmt::Debug for IVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&x| x != 0).map_or(1, |i| i + 1);
        f.debug_list().entries(&self.0[..last]).finish()
    }
}

/// Square integer matrix acting on column vectors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IMat(pub [[i32; MAX_RANK]; MAX_RANK]);

impl IMat {
    pub fn identity(rank: usize) -> IMat {
        let mut m = [[0; MAX_RANK]; MAX_RANK];
        for (i, row) in m.iter_mut().enumerate().take(rank) {
            row[i] = 1;
        }
        IMat(m)
    }

    pub fn apply(&self, v: &IVec) -> IVec {
        let mut out = IVec::ZERO;
        for i in 0..MAX_RANK {
            let row = &self.0[i];
            let mut acc = 0i64;
            for j in 0..MAX_RANK {
                if row[j] != 0 {
                    acc += row[j] as i64 * v.0[j];
                }
            }
            out.0[i] = acc;
        }
        out
    }

    pub fn apply_transpose(&self, v: &IVec) -> IVec {
        let mut out = IVec::ZERO;
        for i in 0..MAX_RANK {
            if v.0[i] == 0 {
                continue;
            }
            for j in 0..MAX_RANK {
                out.0[j] += self.0[i][j] as i64 * v.0[i];
            }
        }
        out
    }

    pub fn mul(&self, rhs: &IMat, rank: usize) -> IMat {
        let mut m = [[0; MAX_RANK]; MAX_RANK];
        for i in 0..rank {
            for k in 0..rank {
                let a = self.0[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..rank {
                    m[i][j] += a * rhs.0[k][j];
                }
            }
        }
        IMat(m)
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(|r| &r[..])).finish()
    }
}

/// Determinant and adjugate of the leading `rank x rank` block, by cofactor
/// expansion over fraction-free elimination (Bareiss).
pub fn det_adj(m: &IMat, rank: usize) -> (i64, [[i64; MAX_RANK]; MAX_RANK]) {
    let det = bareiss_det(m, rank, None, None);
    let mut adj = [[0i64; MAX_RANK]; MAX_RANK];
    for i in 0..rank {
        for j in 0..rank {
            // adj[j][i] = (-1)^{i+j} * minor(i, j)
            let minor = if rank == 1 { 1 } else { bareiss_det(m, rank, Some(i), Some(j)) };
            let sgn = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sgn * minor;
        }
    }
    (det, adj)
}

fn bareiss_det(m: &IMat, rank: usize, skip_row: Option<usize>, skip_col: Option<usize>) -> i64 {
    let rows: alloc::vec::Vec<usize> = (0..rank).filter(|&r| Some(r) != skip_row).collect();
    let cols: alloc::vec::Vec<usize> = (0..rank).filter(|&c| Some(c) != skip_col).collect();
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut a = alloc::vec![alloc::vec![0i64; n]; n];
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            a[i][j] = m.0[r][c] as i64;
        }
    }
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
