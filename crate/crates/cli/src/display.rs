//! Table cell formatting, including the ambient coordinates used for type A and B.

use brickforge::coxeter::{CartanType, Family, RootCoords};
use brickforge::rational::{self, compact, int, QVec, Rat};

/// Ambient coordinates of a vector given in the root basis.
///
/// Type A: `α_i = e_i − e_{i+1}` in `ℝ^{n+1}`. Type B: `α_i = 2(e_i − e_{i+1})`,
/// `α_n = 2e_n` in `ℝ^n`. Other families have no ambient display.
pub fn ambient(t: CartanType, v: &[Rat]) -> Option<QVec> {
    match t.family {
        Family::A => {
            let n = v.len();
            let mut out = Vec::with_capacity(n + 1);
            out.push(v[0].clone());
            for k in 1..n {
                out.push(&v[k] - &v[k - 1]);
            }
            out.push(-v[n - 1].clone());
            Some(out)
        }
        Family::B => {
            let two = int(2);
            let mut out = vec![&v[0] * &two];
            for k in 1..v.len() {
                out.push((&v[k] - &v[k - 1]) * &two);
            }
            Some(out)
        }
        _ => None,
    }
}

/// Type A weights live modulo `(1,…,1)`; shift so the minimal entry is zero.
fn normalize_weight(t: CartanType, mut a: QVec) -> QVec {
    if t.family == Family::A {
        let min = a.iter().min().cloned().unwrap_or_else(|| int(0));
        for x in &mut a {
            *x -= &min;
        }
    }
    a
}

pub fn has_ambient(t: CartanType) -> bool {
    matches!(t.family, Family::A | Family::B)
}

/// A root (or root-lattice difference) cell.
pub fn root_cell(t: CartanType, v: &RootCoords) -> String {
    match ambient(t, &v.0) {
        Some(a) => compact(&a),
        None => compact(&v.0),
    }
}

/// A weight cell, shifted to its canonical representative in type A.
pub fn weight_cell(t: CartanType, v: &RootCoords) -> String {
    match ambient(t, &v.0) {
        Some(a) => compact(&normalize_weight(t, a)),
        None => compact(&v.0),
    }
}

/// `ambient=Δ` for types with an ambient display, `Δ` otherwise.
pub fn shifted_cell(t: CartanType, v: &RootCoords) -> String {
    match ambient(t, &v.0) {
        Some(a) => format!("{}={}", compact(&a), compact(&v.0)),
        None => compact(&v.0),
    }
}

pub fn vertex_list(vertices: &[QVec]) -> String {
    vertices.iter().map(|v| rational::compact(v)).collect::<Vec<_>>().join(" ")
}
