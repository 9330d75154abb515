//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems are in equality form: maximize `c·x` subject to `A x = b`, `x ≥ 0`.

use num_traits::{One, Signed, Zero};

use crate::rational::{QVec, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: QVec },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    rows: Vec<QVec>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = Rat::one() / &self.rows[r][col];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex for `max obj·x` over columns in `allowed`. Returns false if unbounded.
    fn optimize(&mut self, obj: &[Rat], allowed: &[bool]) -> bool {
        loop {
            // reduced cost of column j: obj_j − Σ_r obj_{basis r} · a_{rj}
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = obj[j].clone();
                for (r, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        reduced -= &obj[self.basis[r]] * &row[j];
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x ≥ 0`.
pub fn maximize(a: &[QVec], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == m);
    // Columns: 0..n original, n..n+m artificial, then rhs.
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = QVec::with_capacity(width + 1);
        t.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
        t.extend((0..m).map(|j| if j == i { Rat::one() } else { Rat::zero() }));
        t.push(if flip { -bi } else { bi.clone() });
        rows.push(t);
    }
    let mut tab = Tableau { rows, basis: (n..n + m).collect(), width };

    let phase1: QVec = (0..width).map(|j| if j >= n { -Rat::one() } else { Rat::zero() }).collect();
    tab.optimize(&phase1, &vec![true; width]);
    if (0..m).any(|r| tab.basis[r] >= n && !tab.rhs(r).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // Drive remaining (zero-level) artificials out; drop redundant rows.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(col) => {
                    tab.pivot(r, col);
                    r += 1;
                }
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }

    let mut obj = c.to_vec();
    obj.extend((0..m).map(|_| Rat::zero()));
    let allowed: Vec<bool> = (0..width).map(|j| j < n).collect();
    if !tab.optimize(&obj, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &col) in tab.basis.iter().enumerate() {
        if col < n {
            x[col] = tab.rhs(r).clone();
        }
    }
    let value = crate::rational::dot(c, &x);
    LpOutcome::Optimal { value, x }
}

/// A point of `{x ≥ 0 : a x = b}`, if any.
pub fn feasible_point(a: &[QVec], b: &[Rat]) -> Option<QVec> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(a, b, &vec![Rat::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Constraint system for `p = Σ λ_j q_j`, `Σ λ_j = 1`, `λ ≥ 0`.
pub fn convex_combination_system(points: &[&QVec], p: &[Rat]) -> (Vec<QVec>, QVec) {
    let d = p.len();
    let mut a: Vec<QVec> = (0..d).map(|i| points.iter().map(|q| q[i].clone()).collect()).collect();
    a.push(vec![Rat::one(); points.len()]);
    let mut b = p.to_vec();
    b.push(Rat::one());
    (a, b)
}

/// Whether `p` is a convex combination of `points`.
pub fn in_convex_hull(points: &[&QVec], p: &[Rat]) -> bool {
    if points.is_empty() {
        return false;
    }
    let (a, b) = convex_combination_system(points, p);
    feasible_point(&a, &b).is_some()
}
