//! Laurent polynomials in `x₁..x_n, y₁..y_n` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector of length `2n`: x-part first, then y-part.
pub type Exponent = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    n: usize,
    terms: BTreeMap<Exponent, i64>,
}

fn overflow() -> Error {
    Error::Overflow("Laurent coefficient exceeds i64")
}

impl Laurent {
    pub fn zero(n: usize) -> Self {
        Laurent { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; 2 * n], 1)
    }

    pub fn monomial(exp: Exponent, coeff: i64) -> Self {
        assert!(exp.len().is_multiple_of(2), "exponent length must be even");
        let n = exp.len() / 2;
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Laurent { n, terms }
    }

    /// `x_i` (1-based).
    pub fn x(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[i - 1] = 1;
        Self::monomial(e, 1)
    }

    /// `y_i` (1-based).
    pub fn y(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[n + i - 1] = 1;
        Self::monomial(e, 1)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exp: Exponent, coeff: i64) -> Result<()> {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                if coeff != 0 {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().checked_add(coeff).ok_or_else(overflow)?;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Laurent) -> Result<Laurent> {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Laurent) -> Result<Laurent> {
        let mut out = Laurent::zero(self.n);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.checked_mul(cb).ok_or_else(overflow)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Laurent> {
        let mut out = Laurent::one(self.n);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Multiplies by the monomial with exponent `shift`.
    pub fn shift(&self, shift: &[i32]) -> Laurent {
        let terms = self.terms.iter().map(|(e, &c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c)).collect();
        Laurent { n: self.n, terms }
    }

    /// Componentwise minimum exponent over all terms (zero polynomial: all zeros).
    pub fn min_exponents(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; 2 * self.n];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a >= 0))
    }

    /// Exact quotient `self / divisor`; both must be polynomials.
    pub fn div_exact(&self, divisor: &Laurent, direction: usize) -> Result<Laurent> {
        let non_laurent = || Error::NonLaurent { direction };
        let (lp_e, &lp_c) = divisor.terms.last_key_value().ok_or_else(non_laurent)?;
        let mut rem = self.clone();
        let mut quotient = Laurent::zero(self.n);
        while let Some((lt_e, &lt_c)) = rem.terms.last_key_value() {
            if lt_e.iter().zip(lp_e).any(|(a, b)| a < b) || lt_c % lp_c != 0 {
                return Err(non_laurent());
            }
            let t = Laurent::monomial(lt_e.iter().zip(lp_e).map(|(a, b)| a - b).collect(), lt_c / lp_c);
            let neg = Laurent::monomial(t.terms.keys().next().expect("nonzero").clone(), -(lt_c / lp_c));
            rem = rem.add(&neg.mul(divisor)?)?;
            quotient = quotient.add(&t)?;
        }
        Ok(quotient)
    }

    /// Sets every `x_i = 1`; the result only involves y.
    pub fn at_x_one(&self) -> Result<Laurent> {
        let mut out = Laurent::zero(self.n);
        for (e, &c) in &self.terms {
            let mut e2 = vec![0; 2 * self.n];
            e2[self.n..].copy_from_slice(&e[self.n..]);
            out.add_term(e2, c)?;
        }
        Ok(out)
    }

    /// Sets every `y_i = 0`.
    pub fn at_y_zero(&self) -> Laurent {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[self.n..].iter().all(|&a| a == 0))
            .map(|(e, &c)| (e.clone(), c))
            .collect();
        Laurent { n: self.n, terms }
    }

    /// The y-exponents of a y-only expression.
    pub fn y_exponents(&self) -> Vec<Vec<i32>> {
        self.terms.keys().map(|e| e[self.n..].to_vec()).collect()
    }

    pub fn coefficient(&self, exp: &[i32]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    /// Renders as `numerator/denominator` with x-denominators pulled out,
    /// e.g. `(x2^2 + y1)/x1`.
    pub fn to_expression(&self) -> String {
        let mins = self.min_exponents();
        let den: Vec<i32> = mins.iter().enumerate().map(|(i, &m)| if i < self.n { (-m).max(0) } else { 0 }).collect();
        let numerator = self.shift(&den);
        let num = numerator.polynomial_string();
        let den_str = monomial_string(self.n, &den);
        if den_str.is_empty() {
            return num;
        }
        let num = if numerator.num_terms() > 1 { format!("({num})") } else { num };
        if den_str.contains('*') {
            format!("{num}/({den_str})")
        } else {
            format!("{num}/{den_str}")
        }
    }

    /// Polynomial part only; terms in descending lexicographic order.
    fn polynomial_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, &c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_string(self.n, e);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if idx == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            match (mag, mono.is_empty()) {
                (m, true) => out.push_str(&m.to_string()),
                (1, false) => out.push_str(&mono),
                (m, false) => out.push_str(&format!("{m}*{mono}")),
            }
        }
        out
    }

    pub fn parse(n: usize, s: &str) -> Result<Laurent> {
        parse_expression(n, s)
    }
}

fn monomial_string(n: usize, e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let name = if i < n { format!("x{}", i + 1) } else { format!("y{}", i - n + 1) };
        parts.push(if a == 1 { name } else { format!("{name}^{a}") });
    }
    parts.join("*")
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

/// Parses `poly` or `(poly)/(monomial)` with terms like `2*x1*y2^3`.
fn parse_expression(n: usize, s: &str) -> Result<Laurent> {
    let s = s.trim();
    let (num, den) = match split_top_level_slash(s) {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let numerator = parse_polynomial(n, strip_parens(num))?;
    let Some(den) = den else {
        return Ok(numerator);
    };
    let d = parse_polynomial(n, strip_parens(den))?;
    if d.num_terms() != 1 {
        return Err(Error::Parse(format!("denominator {den:?} is not a monomial")));
    }
    let (e, &c) = d.terms.iter().next().expect("one term");
    if c != 1 {
        return Err(Error::Parse(format!("denominator {den:?} has a coefficient")));
    }
    let neg: Vec<i32> = e.iter().map(|a| -a).collect();
    Ok(numerator.shift(&neg))
}

fn split_top_level_slash(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s)
}

fn parse_polynomial(n: usize, s: &str) -> Result<Laurent> {
    let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty polynomial"));
    }
    let mut out = Laurent::zero(n);
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'-') => (-1, &term[1..]),
            Some(b'+') => (1, &term[1..]),
            _ => (1, term),
        };
        let mut coeff: i64 = sign;
        let mut exp = vec![0i32; 2 * n];
        for factor in body.split('*') {
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => (b, p.parse::<i32>().map_err(|_| bad("bad power"))?),
                None => (factor, 1),
            };
            let var_index = |prefix: char| -> Result<Option<usize>> {
                match base.strip_prefix(prefix) {
                    Some(idx) => {
                        let i: usize = idx.parse().map_err(|_| bad("bad variable"))?;
                        if i == 0 || i > n {
                            return Err(bad("variable out of range"));
                        }
                        Ok(Some(i - 1))
                    }
                    None => Ok(None),
                }
            };
            if let Some(i) = var_index('x')? {
                exp[i] += power;
            } else if let Some(i) = var_index('y')? {
                exp[n + i] += power;
            } else {
                let c: i64 = base.parse().map_err(|_| bad("bad factor"))?;
                coeff = coeff.checked_mul(c.checked_pow(power as u32).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
        }
        out.add_term(exp, coeff)?;
    }
    Ok(out)
}
