//! Smith normal form over the integers and integral homology.
//!
//! Elimination runs on a sparse row-major copy with minimal-magnitude,
//! minimal-fill pivots. Entries are `i64` with checked arithmetic; on overflow
//! the whole reduction is restarted with arbitrary-precision integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chain::ChainComplex;
use crate::sparse::SparseMatrix;

trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    /// Truncated quotient.
    fn quot(&self, p: &Self) -> Self;
    /// `self - q * x`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn into_biguint(self) -> BigUint;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn quot(&self, p: &Self) -> Self {
        self / p
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn into_biguint(self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn quot(&self, p: &Self) -> Self {
        self / p
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn into_biguint(self) -> BigUint {
        self.abs().to_biguint().expect("absolute value")
    }
}

struct Work<T> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
}

impl<T: Entry> Work<T> {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); m.nrows()];
        let mut cols = vec![BTreeSet::new(); m.ncols()];
        for (j, col) in cols.iter_mut().enumerate() {
            for &(i, v) in m.col(j) {
                rows[i].insert(j, T::from_i64(v));
                col.insert(i);
            }
        }
        Work { rows, cols }
    }

    fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.rows[i].get(&j)
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, v);
            self.cols[j].insert(i);
        }
    }

    /// `row_i -= q * row_r`.
    fn row_op(&mut self, i: usize, r: usize, q: &T) -> Option<()> {
        let src: Vec<(usize, T)> = self.rows[r].iter().map(|(&j, v)| (j, v.clone())).collect();
        for (j, v) in src {
            let cur = self.get(i, j).cloned().unwrap_or_else(|| T::from_i64(0));
            let nv = cur.sub_mul(q, &v)?;
            self.set(i, j, nv);
        }
        Some(())
    }

    /// Global pivot: smallest magnitude, then smallest Markowitz cost.
    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &T, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let rl = row.len() - 1;
            for (&j, v) in row {
                let cost = rl * (self.cols[j].len() - 1);
                let better = match &best {
                    None => true,
                    Some((_, _, bv, bc)) => {
                        v.magnitude_lt(bv) || (!bv.magnitude_lt(v) && cost < *bc)
                    }
                };
                if better {
                    best = Some((i, j, v, cost));
                    if v.is_unit() && cost == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    /// Diagonal entries (up to sign) of an equivalent diagonal matrix.
    fn diagonalize(mut self) -> Option<Vec<T>> {
        let mut diag = Vec::new();
        while let Some((mut r, mut c)) = self.choose_pivot() {
            loop {
                let p = self.get(r, c).cloned().expect("pivot");
                let mut smaller: Option<(usize, usize)> = None;
                let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
                for i in others {
                    let a = self.get(i, c).cloned().expect("entry");
                    let q = a.quot(&p);
                    if !q.is_zero() {
                        self.row_op(i, r, &q)?;
                    }
                    if self.get(i, c).is_some() && smaller.is_none() {
                        smaller = Some((i, c));
                    }
                }
                if smaller.is_none() {
                    // column c is now e_r * p; column operations only touch row r
                    let others: Vec<(usize, T)> = self.rows[r]
                        .iter()
                        .filter(|(&j, _)| j != c)
                        .map(|(&j, v)| (j, v.clone()))
                        .collect();
                    for (j, a) in others {
                        let q = a.quot(&p);
                        let rem = a.sub_mul(&q, &p)?;
                        self.set(r, j, rem);
                        if self.get(r, j).is_some() && smaller.is_none() {
                            smaller = Some((r, j));
                        }
                    }
                }
                match smaller {
                    None => break,
                    Some((i, j)) => {
                        r = i;
                        c = j;
                    }
                }
            }
            let p = self.get(r, c).cloned().expect("pivot");
            self.set(r, c, T::from_i64(0));
            diag.push(p);
        }
        Some(diag)
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
/// Their number is the rank.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigUint> {
    let diag: Vec<BigUint> = match Work::<i64>::new(m).diagonalize() {
        Some(d) => d.into_iter().map(Entry::into_biguint).collect(),
        None => Work::<BigInt>::new(m)
            .diagonalize()
            .expect("bigint elimination cannot overflow")
            .into_iter()
            .map(Entry::into_biguint)
            .collect(),
    };
    normalize_diagonal(diag)
}

/// Turn an arbitrary diagonal into Smith form by gcd/lcm exchanges.
fn normalize_diagonal(diag: Vec<BigUint>) -> Vec<BigUint> {
    let units = diag.iter().filter(|d| d.is_one()).count();
    let mut rest: Vec<BigUint> = diag.into_iter().filter(|d| !d.is_one()).collect();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = vec![BigUint::one(); units];
    out.extend(rest);
    out
}

pub fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

/// Betti numbers and torsion coefficients of a chain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Per dimension, the invariant factors greater than one.
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologyResult {
    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    pub fn euler_characteristic(&self) -> i64 {
        crate::chain::alternating_sum(&self.betti)
    }
}

pub fn betti_numbers(chain: &ChainComplex) -> HomologyResult {
    let counts = chain.counts();
    let top = counts.len() - 1;
    // factors[d] = invariant factors of D_d
    let factors: Vec<Vec<BigUint>> = (0..=top)
        .map(|d| {
            if d == 0 {
                Vec::new()
            } else {
                invariant_factors(chain.boundary(d))
            }
        })
        .collect();
    let rank = |d: usize| factors.get(d).map_or(0, Vec::len);
    let betti = (0..=top)
        .map(|d| counts[d] - rank(d) - rank(d + 1))
        .collect();
    let torsion = (0..=top)
        .map(|d| {
            factors
                .get(d + 1)
                .map(|f| f.iter().filter(|x| !x.is_one()).cloned().collect())
                .unwrap_or_default()
        })
        .collect();
    HomologyResult { betti, torsion }
}

/// Rank over the rationals by fraction-free Gaussian elimination on a dense
/// copy. Independent of the Smith-form path; used to cross-check it.
pub fn rank_fraction_free(m: &SparseMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let (nr, nc) = m.shape();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&i| a[i][c].sign() != Sign::NoSign) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..nr {
            for j in c + 1..nc {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<u64> {
        invariant_factors(&SparseMatrix::from_dense(rows))
            .into_iter()
            .map(|b| u64::try_from(b).unwrap())
            .collect()
    }

    #[test]
    fn smith_form_of_small_matrices() {
        assert_eq!(
            factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![2, 6, 12]
        );
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<u64>::new());
        assert_eq!(factors(&[vec![4, 6]]), vec![2]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let f = factors(&[vec![big, big - 1], vec![big - 1, big - 2]]);
        // det = -1 so both factors are units
        assert_eq!(f, vec![1, 1]);
    }

    #[test]
    fn rank_paths_agree() {
        let m = SparseMatrix::from_dense(&[
            vec![1, 2, 3, 4],
            vec![2, 4, 6, 8],
            vec![0, 1, 1, 0],
            vec![5, 0, 5, 1],
        ]);
        assert_eq!(rank(&m), rank_fraction_free(&m));
        assert_eq!(rank(&m), 3);
    }
}
