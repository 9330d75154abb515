//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::{QVec, Rat};

/// Row-reduces `m` in place to reduced row echelon form and returns the pivot columns.
pub fn rref(m: &mut [QVec]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in other.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vectors: &[QVec]) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m).len()
}

pub fn determinant(m: &[QVec]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

pub fn inverse(m: &[QVec]) -> Option<Vec<QVec>> {
    let n = m.len();
    let mut aug: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves the square system `m x = b`; `None` if `m` is singular.
pub fn solve(m: &[QVec], b: &[Rat]) -> Option<QVec> {
    let n = m.len();
    let mut aug: Vec<QVec> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

pub fn transpose(m: &[QVec]) -> Vec<QVec> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[QVec], v: &[Rat]) -> QVec {
    m.iter().map(|row| crate::rational::dot(row, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, qvec};

    #[test]
    fn determinant_and_inverse() {
        let m = vec![qvec(&[2, -1, 0]), qvec(&[-1, 2, -1]), qvec(&[0, -1, 2])];
        assert_eq!(determinant(&m), int(4));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0], vec![frac(3, 4), frac(1, 2), frac(1, 4)]);
        assert!(inverse(&[qvec(&[1, 2]), qvec(&[2, 4])]).is_none());
    }

    #[test]
    fn rank_and_solve() {
        assert_eq!(rank(&[qvec(&[1, 0]), qvec(&[1, 0]), qvec(&[2, 0])]), 1);
        assert_eq!(rank(&[qvec(&[1, 0, 1]), qvec(&[0, 1, 1]), qvec(&[1, 1, 2])]), 2);
        let x = solve(&[qvec(&[1, 1]), qvec(&[1, -1])], &qvec(&[3, 1])).unwrap();
        assert_eq!(x, qvec(&[2, 1]));
        assert!(solve(&[qvec(&[1, 1]), qvec(&[2, 2])], &qvec(&[3, 1])).is_none());
    }
}
