//! Fourier–Motzkin feasibility for `{x ≥ 0 : A x = b}`; an independent
//! oracle for the simplex code, meant for small instances.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::linalg;
use crate::rational::{QVec, Rat};

/// `coeffs · x ≤ rhs`, with the set of original rows it was combined from.
#[derive(Clone)]
struct Ineq {
    coeffs: QVec,
    rhs: Rat,
    history: BTreeSet<usize>,
}

pub fn is_feasible(a: &[QVec], b: &[Rat]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.contains(&n) {
        return false;
    }
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    // x_p = rhs − Σ_f a_f x_f ≥ 0  ⇔  Σ_f a_f x_f ≤ rhs ; x_f ≥ 0 ⇔ −x_f ≤ 0
    let mut ineqs = Vec::new();
    for (r, _) in pivots.iter().enumerate() {
        let coeffs = free.iter().map(|&f| aug[r][f].clone()).collect();
        ineqs.push(Ineq { coeffs, rhs: aug[r][n].clone(), history: BTreeSet::from([ineqs.len()]) });
    }
    for k in 0..free.len() {
        let mut coeffs = vec![Rat::zero(); free.len()];
        coeffs[k] = -Rat::from_integer(1.into());
        ineqs.push(Ineq { coeffs, rhs: Rat::zero(), history: BTreeSet::from([ineqs.len()]) });
    }
    for (step, var) in (0..free.len()).enumerate() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in ineqs {
            if q.coeffs[var].is_positive() {
                pos.push(q);
            } else if q.coeffs[var].is_negative() {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for p in &pos {
            for q in &neg {
                let history: BTreeSet<usize> = p.history.union(&q.history).copied().collect();
                if history.len() > step + 2 {
                    continue;
                }
                let (sp, sq) = (-&q.coeffs[var], p.coeffs[var].clone());
                let coeffs: QVec = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x * &sp + y * &sq).collect();
                let rhs = &p.rhs * &sp + &q.rhs * &sq;
                rest.push(Ineq { coeffs, rhs, history });
            }
        }
        ineqs = rest;
    }
    ineqs.iter().all(|q| !q.rhs.is_negative())
}
