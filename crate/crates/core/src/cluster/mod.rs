//! Cluster algebras of finite type with principal coefficients.

pub mod laurent;

use std::collections::{HashMap, HashSet, VecDeque};

use crate::brick::{g_vector_fan, BrickGeometry};
use crate::coxeter::{CartanMatrix, CoxeterWord, RootCoords, WeightCoords};
use crate::error::{Error, Result};
use crate::polyhedra::{hull_vertices, VPolytope};
use crate::rational::{int, QVec};
use crate::subword::SubwordComplex;

pub use laurent::Laurent;

/// Default bound on the number of seeds explored.
pub const DEFAULT_SEED_BUDGET: usize = 100_000;

/// `2n × n` integer matrix: exchange part on top, coefficient part below.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedMatrix {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl ExtendedMatrix {
    pub fn exchange_part(&self) -> &[Vec<i64>] {
        &self.rows[..self.n]
    }

    pub fn coefficient_part(&self) -> &[Vec<i64>] {
        &self.rows[self.n..]
    }

    /// `D·B` skew-symmetric for the given symmetrizer.
    pub fn is_skew_symmetrizable(&self, d: &[i64]) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| d[i] * self.rows[i][j] == -d[j] * self.rows[j][i]))
    }

    /// Matrix mutation in direction `k` (0-based).
    pub fn mutate(&self, k: usize) -> ExtendedMatrix {
        let mut rows = self.rows.clone();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let b = self.rows[i][j];
                *entry = if i == k || j == k {
                    -b
                } else {
                    let (bik, bkj) = (self.rows[i][k], self.rows[k][j]);
                    b + bik.signum() * (bik * bkj).max(0)
                };
            }
        }
        ExtendedMatrix { n: self.n, rows }
    }

    /// Simultaneous permutation of the exchange part, columns of the rest.
    fn permuted(&self, perm: &[usize]) -> ExtendedMatrix {
        let n = self.n;
        let rows = (0..2 * n)
            .map(|i| {
                let src = if i < n { perm[i] } else { i };
                (0..n).map(|j| self.rows[src][perm[j]]).collect()
            })
            .collect();
        ExtendedMatrix { n, rows }
    }
}

/// `M_c`: `−a_{ij}` if `s_i` precedes `s_j` in `c`, `a_{ij}` if it follows,
/// with the identity below.
pub fn initial_matrix(cartan: &CartanMatrix, c: &CoxeterWord) -> ExtendedMatrix {
    let n = cartan.rank();
    let pos = c.positions();
    let a = cartan.entries();
    let mut rows = vec![vec![0i64; n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                rows[i][j] = if pos[i] < pos[j] { -a[i][j] } else { a[i][j] };
            }
        }
        rows[n + i][i] = 1;
    }
    ExtendedMatrix { n, rows }
}

/// A cluster variable with its d-, g- and F-data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterVariable {
    pub expr: Laurent,
    pub d_vector: RootCoords,
    pub g_vector: WeightCoords,
    /// `None` for initial variables.
    pub f_polynomial: Option<Laurent>,
}

impl ClusterVariable {
    pub fn is_initial(&self) -> bool {
        self.f_polynomial.is_none()
    }

    pub fn newton_polytope(&self) -> Option<VPolytope> {
        self.f_polynomial.as_ref().map(newton_polytope)
    }
}

#[derive(Debug, Clone)]
struct Seed {
    vars: Vec<usize>,
    matrix: ExtendedMatrix,
}

impl Seed {
    fn canonical_key(&self) -> (Vec<usize>, ExtendedMatrix) {
        let mut perm: Vec<usize> = (0..self.vars.len()).collect();
        perm.sort_by_key(|&i| self.vars[i]);
        let vars = perm.iter().map(|&i| self.vars[i]).collect();
        (vars, self.matrix.permuted(&perm))
    }
}

/// Result of the seed search.
#[derive(Debug, Clone)]
pub struct ClusterData {
    pub n: usize,
    /// Initial variables first, then the others in order of discovery.
    pub variables: Vec<ClusterVariable>,
    pub num_seeds: usize,
}

impl ClusterData {
    pub fn initial(&self) -> &[ClusterVariable] {
        &self.variables[..self.n]
    }

    pub fn non_initial(&self) -> &[ClusterVariable] {
        &self.variables[self.n..]
    }

    pub fn by_d_vector(&self, beta: &RootCoords) -> Option<&ClusterVariable> {
        self.non_initial().iter().find(|v| v.d_vector == *beta)
    }

    /// Non-initial variables ordered by the position of their d-vector.
    pub fn in_position_order(&self, geometry: &BrickGeometry<'_>) -> Result<Vec<&ClusterVariable>> {
        geometry
            .roots_by_position()
            .iter()
            .map(|beta| self.by_d_vector(beta).ok_or_else(|| Error::RootNotPositive(crate::rational::compact(&beta.0))))
            .collect()
    }
}

/// Outcome of comparing Newton polytopes with the summands `Asso_β`.
#[derive(Debug, Clone)]
pub struct NewtonReport {
    pub num_variables: usize,
    pub num_positive_roots: usize,
    /// Roots whose Newton polytope differs from `Asso_β`.
    pub newton_mismatches: Vec<RootCoords>,
    /// Roots whose g-vector differs from the weight ray at their position.
    pub g_mismatches: Vec<RootCoords>,
    /// Roots whose F-polynomial fails [`check_extremal_exponents`].
    pub extremal_failures: Vec<RootCoords>,
    /// Positive roots with no cluster variable of that d-vector.
    pub missing: Vec<RootCoords>,
}

impl NewtonReport {
    pub fn passed(&self) -> bool {
        self.num_variables == self.num_positive_roots
            && self.newton_mismatches.is_empty()
            && self.g_mismatches.is_empty()
            && self.extremal_failures.is_empty()
            && self.missing.is_empty()
    }
}

/// Runs the seed search for a cluster word and compares every non-initial
/// variable against the brick geometry of the same word.
pub fn newton_report(spec: &SubwordComplex, budget: usize) -> Result<(ClusterData, NewtonReport)> {
    let c = spec
        .coxeter_word()
        .ok_or_else(|| Error::NotClusterWord(format!("word {} was not built from a Coxeter word", spec.word())))?;
    let geometry = BrickGeometry::new(spec)?;
    let gfan = g_vector_fan(spec)?;
    let data = all_cluster_variables(&initial_matrix(spec.cartan(), c), budget)?;
    let mut report = NewtonReport {
        num_variables: data.non_initial().len(),
        num_positive_roots: spec.num_positive_roots(),
        newton_mismatches: Vec::new(),
        g_mismatches: Vec::new(),
        extremal_failures: Vec::new(),
        missing: Vec::new(),
    };
    for beta in geometry.roots_by_position() {
        let Some(var) = data.by_d_vector(beta) else {
            report.missing.push(beta.clone());
            continue;
        };
        let f = var.f_polynomial.as_ref().expect("non-initial");
        if newton_polytope(f) != geometry.summand_polytope(beta)? {
            report.newton_mismatches.push(beta.clone());
        }
        let k = geometry.position_of_root(beta)?;
        if var.g_vector != gfan.weight_rays[k - 1] {
            report.g_mismatches.push(beta.clone());
        }
        if !check_extremal_exponents(f, beta) {
            report.extremal_failures.push(beta.clone());
        }
    }
    Ok((data, report))
}

/// Breadth-first search over seeds until no new seed appears.
pub fn all_cluster_variables(m: &ExtendedMatrix, budget: usize) -> Result<ClusterData> {
    let n = m.n;
    let mut exprs: Vec<Laurent> = (1..=n).map(|i| Laurent::x(n, i)).collect();
    let mut ids: HashMap<Laurent, usize> = exprs.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    // Exchange partner of a variable relative to the rest of its cluster.
    let mut exchanges: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    let start = Seed { vars: (0..n).collect(), matrix: m.clone() };
    let mut seen = HashSet::from([start.canonical_key()]);
    let mut queue = VecDeque::from([start]);
    while let Some(seed) = queue.pop_front() {
        for k in 0..n {
            let mut rest: Vec<usize> = seed.vars.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
            rest.sort_unstable();
            let key = (rest, seed.vars[k]);
            let new_id = match exchanges.get(&key) {
                Some(&id) => id,
                None => {
                    let expr = exchange(&seed, k, &exprs)?;
                    let id = *ids.entry(expr.clone()).or_insert_with(|| {
                        exprs.push(expr);
                        exprs.len() - 1
                    });
                    exchanges.insert(key, id);
                    id
                }
            };
            let mut vars = seed.vars.clone();
            vars[k] = new_id;
            let next = Seed { vars, matrix: seed.matrix.mutate(k) };
            if seen.insert(next.canonical_key()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                queue.push_back(next);
            }
        }
    }
    let variables = exprs
        .iter()
        .enumerate()
        .map(|(i, e)| if i < n { Ok(initial_record(n, i)) } else { record(e) })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClusterData { n, variables, num_seeds: seen.len() })
}

/// `(Π_{b>0} z^b + Π_{b<0} z^{−b}) / x_k` in terms of the initial variables.
fn exchange(seed: &Seed, k: usize, exprs: &[Laurent]) -> Result<Laurent> {
    let n = seed.matrix.n;
    let mut plus = Laurent::one(n);
    let mut minus = Laurent::one(n);
    for i in 0..2 * n {
        let b = seed.matrix.rows[i][k];
        if b == 0 {
            continue;
        }
        let z = if i < n { exprs[seed.vars[i]].clone() } else { Laurent::y(n, i - n + 1) };
        let factor = z.pow(b.unsigned_abs() as u32)?;
        if b > 0 {
            plus = plus.mul(&factor)?;
        } else {
            minus = minus.mul(&factor)?;
        }
    }
    let sum = plus.add(&minus)?;
    let old = &exprs[seed.vars[k]];
    // With old = p·x^μ and p free of monomial factors, sum/old = (S/p)·x^{min S}
    // where S = sum·x^{−μ} stripped of its monomial content: minimum
    // exponents are additive under products.
    let mu = old.min_exponents();
    let p = old.shift(&negate(&mu));
    let s = sum.shift(&negate(&mu));
    let content = s.min_exponents();
    let q = s.shift(&negate(&content)).div_exact(&p, k + 1)?;
    let result = q.shift(&content);
    if result.terms().values().any(|&c| c < 0) {
        return Err(Error::NonLaurent { direction: k + 1 });
    }
    Ok(result)
}

fn negate(e: &[i32]) -> Vec<i32> {
    e.iter().map(|a| -a).collect()
}

fn initial_record(n: usize, i: usize) -> ClusterVariable {
    let mut d = vec![0i64; n];
    d[i] = -1;
    let mut g = vec![int(0); n];
    g[i] = int(1);
    ClusterVariable {
        expr: Laurent::x(n, i + 1),
        d_vector: RootCoords::from_ints(&d),
        g_vector: WeightCoords(g),
        f_polynomial: None,
    }
}

fn record(expr: &Laurent) -> Result<ClusterVariable> {
    let n = expr.rank();
    if !expr.min_exponents()[n..].iter().all(|&a| a >= 0) {
        return Err(Error::NonLaurent { direction: 0 });
    }
    let d: Vec<i64> = expr.min_exponents()[..n].iter().map(|&m| i64::from((-m).max(0))).collect();
    let g = g_vector(expr)?;
    let f = expr.at_x_one()?;
    Ok(ClusterVariable { expr: expr.clone(), d_vector: RootCoords::from_ints(&d), g_vector: g, f_polynomial: Some(f) })
}

/// Exponent of the single monomial `u(x, 0)`.
pub fn g_vector(expr: &Laurent) -> Result<WeightCoords> {
    let low = expr.at_y_zero();
    let n = expr.rank();
    match low.terms().iter().next() {
        Some((e, &1)) if low.num_terms() == 1 => Ok(WeightCoords(e[..n].iter().map(|&a| int(i64::from(a))).collect())),
        _ => Err(Error::NotAMonomial(low.to_expression())),
    }
}

/// Newton polytope of a polynomial in y, exponents read as root coordinates.
pub fn newton_polytope(f: &Laurent) -> VPolytope {
    let points: Vec<QVec> = f.y_exponents().iter().map(|e| e.iter().map(|&a| int(i64::from(a))).collect()).collect();
    hull_vertices(&points).expect("F-polynomial has terms")
}

/// Constant term 1, every exponent below `beta`, `y^β` with coefficient 1.
pub fn check_extremal_exponents(f: &Laurent, beta: &RootCoords) -> bool {
    let n = f.rank();
    let Some(b) = crate::rational::to_ints(&beta.0) else {
        return false;
    };
    let mut zero = vec![0i32; 2 * n];
    if f.coefficient(&zero) != 1 {
        return false;
    }
    for (i, &bi) in b.iter().enumerate() {
        zero[n + i] = bi as i32;
    }
    if f.coefficient(&zero) != 1 {
        return false;
    }
    f.terms()
        .keys()
        .all(|e| e[..n].iter().all(|&a| a == 0) && e[n..].iter().zip(&b).all(|(&a, &bi)| i64::from(a) <= bi))
}
