//! Line-oriented text format and JSON for polytopes and fans.
//!
//! ```text
//! # vpolytope dim=2
//! 0 0
//! 1/2 1
//! ```
//!
//! Fans use `ray` and `cone` lines after a `# fan dim=..` header.

use serde::{Deserialize, Serialize};

use super::fan::Fan;
use super::polytope::{hull_vertices, VPolytope};
use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat, QVec};

fn vector_line(v: &QVec) -> String {
    v.iter().map(format_rat).collect::<Vec<_>>().join(" ")
}

fn parse_vector(line: &str) -> Result<QVec> {
    line.split_whitespace().map(parse_rat).collect()
}

fn header_dim(line: Option<&str>, kind: &str) -> Result<usize> {
    let line = line.ok_or_else(|| Error::Parse("empty input".into()))?;
    let rest = line
        .strip_prefix("# ")
        .and_then(|l| l.strip_prefix(kind))
        .ok_or_else(|| Error::Parse(format!("expected `# {kind}` header, got {line:?}")))?;
    rest.split_whitespace()
        .find_map(|tok| tok.strip_prefix("dim="))
        .ok_or_else(|| Error::Parse(format!("missing dim in {line:?}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad dim in {line:?}")))
}

pub fn polytope_to_text(p: &VPolytope) -> String {
    let mut out = format!("# vpolytope dim={}\n", p.dim());
    for v in p.vertices() {
        out.push_str(&vector_line(v));
        out.push('\n');
    }
    out
}

pub fn polytope_from_text(s: &str) -> Result<VPolytope> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let dim = header_dim(lines.next(), "vpolytope")?;
    let points = lines.map(parse_vector).collect::<Result<Vec<_>>>()?;
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: points.iter().map(Vec::len).find(|&l| l != dim).unwrap_or(0),
        });
    }
    hull_vertices(&points)
}

pub fn fan_to_text(f: &Fan) -> String {
    let mut out = format!("# fan dim={}\n", f.dim());
    for r in f.rays() {
        out.push_str(&format!("ray {}\n", vector_line(r)));
    }
    for c in f.maximal_cones() {
        let idx: Vec<String> = c.iter().map(ToString::to_string).collect();
        out.push_str(&format!("cone {}\n", idx.join(" ")));
    }
    out
}

pub fn fan_from_text(s: &str) -> Result<Fan> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let dim = header_dim(lines.next(), "fan")?;
    let (mut rays, mut cones) = (Vec::new(), Vec::new());
    for line in lines {
        if let Some(rest) = line.strip_prefix("ray ") {
            rays.push(parse_vector(rest)?);
        } else if let Some(rest) = line.strip_prefix("cone ") {
            let cone = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            cones.push(cone);
        } else {
            return Err(Error::Parse(format!("unexpected line {line:?}")));
        }
    }
    let fan = Fan::new(rays, cones)?;
    if fan.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: fan.dim() });
    }
    Ok(fan)
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    dim: usize,
    rays: Vec<Vec<String>>,
    cones: Vec<Vec<usize>>,
}

fn strings(v: &QVec) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn from_strings(v: &[String]) -> Result<QVec> {
    v.iter().map(|s| parse_rat(s)).collect()
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn polytope_to_json(p: &VPolytope) -> String {
    let j = PolytopeJson { dim: p.dim(), vertices: p.vertices().iter().map(strings).collect() };
    serde_json::to_string(&j).expect("plain data serializes")
}

pub fn polytope_from_json(s: &str) -> Result<VPolytope> {
    let j: PolytopeJson = serde_json::from_str(s).map_err(json_err)?;
    let points = j.vertices.iter().map(|v| from_strings(v)).collect::<Result<Vec<_>>>()?;
    let p = hull_vertices(&points)?;
    if p.dim() != j.dim {
        return Err(Error::DimensionMismatch { expected: j.dim, got: p.dim() });
    }
    Ok(p)
}

pub fn fan_to_json(f: &Fan) -> String {
    let j = FanJson { dim: f.dim(), rays: f.rays().iter().map(strings).collect(), cones: f.maximal_cones().to_vec() };
    serde_json::to_string(&j).expect("plain data serializes")
}

pub fn fan_from_json(s: &str) -> Result<Fan> {
    let j: FanJson = serde_json::from_str(s).map_err(json_err)?;
    let rays = j.rays.iter().map(|v| from_strings(v)).collect::<Result<Vec<_>>>()?;
    let fan = Fan::new(rays, j.cones)?;
    if fan.dim() != j.dim {
        return Err(Error::DimensionMismatch { expected: j.dim, got: fan.dim() });
    }
    Ok(fan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, qvec};

    #[test]
    fn polytope_round_trip() {
        let p = hull_vertices(&[qvec(&[0, 0]), vec![frac(1, 2), int(1)], qvec(&[-3, 2])]).unwrap();
        let text = polytope_to_text(&p);
        assert!(text.starts_with("# vpolytope dim=2\n"));
        assert!(text.contains("1/2 1\n"));
        assert_eq!(polytope_from_text(&text).unwrap(), p);
        assert_eq!(polytope_from_json(&polytope_to_json(&p)).unwrap(), p);
        assert!(polytope_from_text("# fan dim=2\n").is_err());
    }

    #[test]
    fn fan_round_trip() {
        let rays = vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])];
        let f = Fan::new(rays, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(fan_from_text(&fan_to_text(&f)).unwrap(), f);
        assert_eq!(fan_from_json(&fan_to_json(&f)).unwrap(), f);
    }
}
