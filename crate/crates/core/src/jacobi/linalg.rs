//! Exact sparse row echelon forms and small dense solvers over the rationals.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::Q;

/// A sparse vector indexed by column.
pub type SparseVec = BTreeMap<usize, Q>;

/// Row echelon form where every row is normalized so that its largest
/// column carries coefficient one. Reducing a vector eliminates pivot columns
/// from the top down, so the residue is unique.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: HashMap<usize, Vec<(usize, Q)>>,
}

impl Echelon {
    /// An empty span.
    pub fn new() -> Self {
        Self::default()
    }

    /// Rank of the span.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Whether a column is a pivot.
    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Reduces `v` modulo the span in place.
    pub fn reduce(&self, v: &mut SparseVec) {
        let mut upper = usize::MAX;
        loop {
            let next = v.range(..upper).rev().find(|(k, _)| self.rows.contains_key(k)).map(|(k, _)| *k);
            let Some(k) = next else { break };
            let c = v.remove(&k).expect("present");
            for (j, a) in &self.rows[&k] {
                if *j == k {
                    continue;
                }
                let e = v.entry(*j).or_insert_with(Q::zero);
                *e -= &c * a;
                if e.is_zero() {
                    v.remove(j);
                }
            }
            upper = k;
        }
    }

    /// Adds a row to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        self.reduce(&mut v);
        let Some((&k, lead)) = v.iter().next_back() else { return false };
        let inv = Q::one() / lead;
        let row: Vec<(usize, Q)> = v.iter().map(|(j, a)| (*j, a * &inv)).collect();
        self.rows.insert(k, row);
        true
    }
}

/// Solves `A x = b` for a dense system; returns one solution (free variables
/// set to zero) or an error when inconsistent.
pub fn solve_dense(a: &[Vec<Q>], b: &[Q], nvars: usize) -> Result<Vec<Q>> {
    let (red, pivots) = rref_augmented(a, b, nvars);
    for row in &red {
        if row[..nvars].iter().all(|x| x.is_zero()) && !row[nvars].is_zero() {
            return Err(Error::Inconsistent("linear system has no solution".into()));
        }
    }
    let mut x = vec![Q::zero(); nvars];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red[r][nvars].clone();
    }
    Ok(x)
}

/// Inverse of a square matrix, or `None` when it is singular.
pub fn inverse_dense(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    if !nullspace_dense(a, n).is_empty() {
        return None;
    }
    let mut inv = vec![vec![Q::zero(); n]; n];
    for j in 0..n {
        let mut e = vec![Q::zero(); n];
        e[j] = Q::one();
        let col = solve_dense(a, &e, n).ok()?;
        for (i, x) in col.into_iter().enumerate() {
            inv[i][j] = x;
        }
    }
    Some(inv)
}

/// Basis of the nullspace of a dense matrix with `nvars` columns.
pub fn nullspace_dense(a: &[Vec<Q>], nvars: usize) -> Vec<Vec<Q>> {
    let zeros = vec![Q::zero(); a.len()];
    let (red, pivots) = rref_augmented(a, &zeros, nvars);
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); nvars];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[r][f].clone();
            }
            v
        })
        .collect()
}

fn rref_augmented(a: &[Vec<Q>], b: &[Q], nvars: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(nvars, Q::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (m, pivots)
}

/// Sparse Gaussian elimination returning the nullspace basis of the rows.
pub fn nullspace_sparse(rows: &[SparseVec], nvars: usize) -> Vec<Vec<Q>> {
    // Fully reduced echelon form with pivot at the smallest column.
    let mut piv: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for r in rows {
        let mut v = r.clone();
        loop {
            let hit = v.keys().find(|k| piv.contains_key(k)).copied();
            let Some(k) = hit else { break };
            let c = v.remove(&k).unwrap();
            for (j, a) in &piv[&k] {
                if *j == k {
                    continue;
                }
                let e = v.entry(*j).or_insert_with(Q::zero);
                *e -= &c * a;
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
        let Some((&k, lead)) = v.iter().next() else { continue };
        let inv = Q::one() / lead;
        let v: SparseVec = v.iter().map(|(j, a)| (*j, a * &inv)).collect();
        // Back-substitute into existing rows.
        for row in piv.values_mut() {
            if let Some(c) = row.remove(&k) {
                for (j, a) in &v {
                    if *j == k {
                        continue;
                    }
                    let e = row.entry(*j).or_insert_with(Q::zero);
                    *e -= &c * a;
                    if e.is_zero() {
                        row.remove(j);
                    }
                }
            }
        }
        piv.insert(k, v);
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !piv.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); nvars];
            x[f] = Q::one();
            for (&p, row) in &piv {
                if let Some(a) = row.get(&f) {
                    x[p] = -a.clone();
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn echelon_residue_is_unique() {
        let mut e = Echelon::new();
        e.insert([(0, q(1)), (2, q(1))].into_iter().collect());
        e.insert([(1, q(1)), (2, q(-1))].into_iter().collect());
        let mut v: SparseVec = [(2, q(3))].into_iter().collect();
        e.reduce(&mut v);
        assert_eq!(v, [(0, q(-3))].into_iter().collect());
        let mut w: SparseVec = [(1, q(3))].into_iter().collect();
        e.reduce(&mut w);
        assert_eq!(w, [(0, q(-3))].into_iter().collect());
    }

    #[test]
    fn dense_solution_and_nullspace() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let x = solve_dense(&a, &[q(1), q(2)], 2).unwrap();
        assert_eq!(x, vec![q(1), q(0)]);
        assert!(solve_dense(&a, &[q(1), q(3)], 2).is_err());
        assert_eq!(nullspace_dense(&a, 2), vec![vec![q(-1), q(1)]]);
        let rows: Vec<SparseVec> = vec![[(0, q(1)), (1, q(1))].into_iter().collect()];
        assert_eq!(nullspace_sparse(&rows, 2), vec![vec![q(-1), q(1)]]);
    }
}
