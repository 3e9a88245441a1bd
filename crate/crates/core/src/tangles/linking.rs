//! Linking matrices of closed programs and exact inertia counts of symmetric
//! rational matrices.

use num::{Signed, Zero};

use super::{Gen, TangleProgram};
use crate::error::{Error, Result};
use crate::Q;

/// Linking matrix of a link with its inertia.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingData {
    /// Symmetric matrix indexed by components; framings on the diagonal.
    pub matrix: Vec<Vec<i64>>,
    /// Number of positive eigenvalues.
    pub sigma_plus: usize,
    /// Number of negative eigenvalues.
    pub sigma_minus: usize,
    /// Number of zero eigenvalues.
    pub sigma_zero: usize,
}

/// Linking matrix of a closed program: off-diagonal entries are half the sum
/// of the signs of crossings between two components, diagonal entries the
/// writhe of each component.
pub fn linking(l: &TangleProgram) -> Result<LinkingData> {
    if !l.is_closed() {
        return Err(Error::InvalidArgument("linking matrix needs a closed program".into()));
    }
    let comps = l.components();
    let n = comps.len();
    let mut twice = vec![vec![0i64; n]; n];
    for (k, g) in l.gens().iter().enumerate() {
        if let Gen::Cross { pos, positive } = *g {
            let (a, b) = (comps.labels[k][pos], comps.labels[k][pos + 1]);
            let s = if positive { 1 } else { -1 };
            if a == b {
                twice[a][a] += 2 * s;
            } else {
                twice[a][b] += s;
                twice[b][a] += s;
            }
        }
    }
    let mut matrix = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if twice[i][j] % 2 != 0 {
                return Err(Error::Inconsistent(format!("odd crossing count between components {i} and {j}")));
            }
            matrix[i][j] = twice[i][j] / 2;
        }
    }
    let q: Vec<Vec<Q>> = matrix.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    let (sigma_plus, sigma_minus, sigma_zero) = signature(&q);
    Ok(LinkingData { matrix, sigma_plus, sigma_minus, sigma_zero })
}

/// Determinant of an integer matrix, computed exactly by elimination over
/// the rationals.
pub fn determinant(m: &[Vec<i64>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    let mut det = Q::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

/// Numbers of positive, negative and zero eigenvalues of a symmetric
/// rational matrix, by symmetric congruence with one- and two-dimensional
/// pivots.
pub fn signature(m: &[Vec<Q>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut alive: Vec<usize> = (0..a.len()).collect();
    let (mut pos, mut neg) = (0, 0);
    loop {
        if let Some(k) = alive.iter().position(|&i| !a[i][i].is_zero()) {
            let p = alive.remove(k);
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &i in &alive {
                let f = &a[i][p] / &d;
                if f.is_zero() {
                    continue;
                }
                for &j in &alive {
                    let v = &a[i][j] - &f * &a[p][j];
                    a[i][j] = v;
                }
            }
            continue;
        }
        let pair = alive
            .iter()
            .enumerate()
            .find_map(|(x, &i)| alive[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
        let Some((i, j)) = pair else { break };
        // The block [[0, b], [b, 0]] has one eigenvalue of each sign; adding
        // row/column j to i produces a nonzero diagonal entry 2b.
        for &k in &alive {
            let v = &a[k][i] + &a[k][j];
            a[k][i] = v;
        }
        for &k in &alive {
            let v = &a[i][k] + &a[j][k];
            a[i][k] = v;
        }
    }
    let zero = alive.len();
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangles::parse::{hopf, unknot};

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect()
    }

    #[test]
    fn hopf_link() {
        let d = linking(&hopf(0, 0)).unwrap();
        assert_eq!(d.matrix, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!((d.sigma_plus, d.sigma_minus, d.sigma_zero), (1, 1, 0));
    }

    #[test]
    fn framed_unknots() {
        for f in [-2i64, -1, 0, 1, 3] {
            let d = linking(&unknot(f)).unwrap();
            assert_eq!(d.matrix, vec![vec![f]]);
            assert_eq!(d.sigma_plus + d.sigma_minus + d.sigma_zero, 1);
            assert_eq!(d.sigma_plus, usize::from(f > 0));
            assert_eq!(d.sigma_minus, usize::from(f < 0));
        }
    }

    #[test]
    fn empty_link() {
        let d = linking(&TangleProgram::empty()).unwrap();
        assert!(d.matrix.is_empty());
        assert_eq!((d.sigma_plus, d.sigma_minus, d.sigma_zero), (0, 0, 0));
    }

    #[test]
    fn reversing_a_component_negates_its_off_diagonal_entries() {
        let d = linking(&hopf(2, -1).co(0).unwrap()).unwrap();
        assert_eq!(d.matrix, vec![vec![-1, -1], vec![-1, 2]]);
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(signature(&qm(&[&[1, 2], &[2, 1]])), (1, 1, 0));
        assert_eq!(signature(&qm(&[&[0, 0], &[0, 0]])), (0, 0, 2));
        assert_eq!(signature(&qm(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), (3, 0, 0));
        assert_eq!(signature(&qm(&[&[1, 1], &[1, 1]])), (1, 0, 1));
        assert_eq!(signature(&qm(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])), (1, 2, 0));
    }
}
