//! Integer vectors and the few pieces of exact linear algebra the root data need.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// An element of a free abelian group of finite rank, written in a fixed basis.
pub type IVec = Vec<i64>;

/// A square or rectangular integer matrix, stored row-major.
pub type IMat = Vec<Vec<i64>>;

pub fn add(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: i64, a: &[i64]) -> IVec {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[i64]) -> IVec {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_vec(m: &IMat, v: &[i64]) -> IVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &IMat) -> IMat {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `gens`.
///
/// Rows are returned with strictly increasing pivot columns, positive pivots,
/// and entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(gens: &[IVec], dim: usize) -> Vec<IVec> {
    let mut rows: Vec<IVec> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    let mut out: Vec<IVec> = Vec::new();
    for col in 0..dim {
        // Euclid on the column until at most one row has a nonzero entry there.
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let pivot = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let p = rows[pivot][col];
            for &i in &nz {
                if i != pivot {
                    let f = Integer::div_floor(&rows[i][col], &p);
                    let prow = rows[pivot].clone();
                    for (x, y) in rows[i].iter_mut().zip(&prow) {
                        *x -= f * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut r = rows.swap_remove(i);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(r);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    // Reduce above pivots.
    for i in 0..out.len() {
        let pc = pivot_col(&out[i]);
        let p = out[i][pc];
        let pivot_row = out[i].clone();
        for row in out.iter_mut().take(i) {
            let f = Integer::div_floor(&row[pc], &p);
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    out
}

fn pivot_col(row: &[i64]) -> usize {
    row.iter().position(|&x| x != 0).expect("hermite rows are nonzero")
}

/// Canonical representative of `v` modulo the lattice with Hermite basis `hnf`.
pub fn reduce_mod(hnf: &[IVec], v: &[i64]) -> IVec {
    let mut v = v.to_vec();
    for row in hnf {
        let pc = pivot_col(row);
        let f = Integer::div_floor(&v[pc], &row[pc]);
        if f != 0 {
            for (x, y) in v.iter_mut().zip(row) {
                *x -= f * y;
            }
        }
    }
    v
}

/// Order of the torsion-free-rank-zero quotient `Z^dim / span(hnf)`, or `None`
/// when the quotient is infinite.
pub fn quotient_order(hnf: &[IVec], dim: usize) -> Option<u64> {
    if hnf.len() < dim {
        return None;
    }
    Some(hnf.iter().map(|r| r[pivot_col(r)].unsigned_abs()).product())
}

/// Exact coordinates with respect to a linearly independent family of integer
/// vectors.
///
/// Stores an integer left inverse `adj / det` restricted to a set of pivot
/// coordinates, so each solve is a few integer dot products plus a consistency
/// check against the full vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSolver {
    basis: Vec<IVec>,
    rows: Vec<usize>,
    adj: IMat,
    det: i64,
}

impl CoordinateSolver {
    /// Returns `None` if `basis` is linearly dependent.
    pub fn new(basis: &[IVec], dim: usize) -> Option<Self> {
        let r = basis.len();
        if r == 0 {
            return Some(Self { basis: Vec::new(), rows: Vec::new(), adj: Vec::new(), det: 1 });
        }
        // Pick r independent coordinates by rational elimination on the n x r matrix.
        let mut m: Vec<Vec<Ratio<i64>>> = (0..dim)
            .map(|i| basis.iter().map(|b| Ratio::from_integer(b[i])).collect())
            .collect();
        let mut rows = Vec::new();
        let mut used = vec![false; dim];
        for col in 0..r {
            let pick = (0..dim).find(|&i| !used[i] && !m[i][col].is_zero())?;
            used[pick] = true;
            rows.push(pick);
            let prow = m[pick].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != pick && !row[col].is_zero() {
                    let f = row[col] / prow[col];
                    for (x, y) in row.iter_mut().zip(&prow) {
                        *x -= f * y;
                    }
                }
            }
        }
        rows.sort_unstable();
        // Invert the r x r submatrix A[k][j] = basis[j][rows[k]].
        let mut aug: Vec<Vec<Ratio<i64>>> = rows
            .iter()
            .enumerate()
            .map(|(k, &row)| {
                let mut v: Vec<Ratio<i64>> = basis.iter().map(|b| Ratio::from_integer(b[row])).collect();
                v.extend((0..r).map(|j| if j == k { Ratio::one() } else { Ratio::zero() }));
                v
            })
            .collect();
        for col in 0..r {
            let piv = (col..r).find(|&i| !aug[i][col].is_zero())?;
            aug.swap(col, piv);
            let p = aug[col][col];
            aug[col].iter_mut().for_each(|x| *x /= p);
            let prow = aug[col].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                if i != col && !row[col].is_zero() {
                    let f = row[col];
                    for (x, y) in row.iter_mut().zip(&prow) {
                        *x -= f * y;
                    }
                }
            }
        }
        let inv: Vec<Vec<Ratio<i64>>> = aug.into_iter().map(|row| row[r..].to_vec()).collect();
        let det = inv.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let adj = inv
            .iter()
            .map(|row| row.iter().map(|x| (x * det).to_integer()).collect())
            .collect();
        Some(Self { basis: basis.to_vec(), rows, adj, det })
    }

    /// Integer coordinates of `v`, if `v` lies in the integral span.
    pub fn solve(&self, v: &[i64]) -> Option<IVec> {
        let sub: IVec = self.rows.iter().map(|&i| v[i]).collect();
        let mut coords = Vec::with_capacity(self.adj.len());
        for row in &self.adj {
            let num = dot(row, &sub);
            if num % self.det != 0 {
                return None;
            }
            coords.push(num / self.det);
        }
        let mut back = vec![0; v.len()];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (x, y) in back.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        (back == v).then_some(coords)
    }
}
