//! Plot data for rank-2 types: g-vector fan, Newton polytopes, brick polytope.

use brickforge::brick::{g_vector_fan, BrickGeometry};
use brickforge::coxeter::{CartanType, CoxeterWord};
use brickforge::rational::compact;
use brickforge::Result;

use crate::checks::{cluster_complex, cluster_data, Outcome};
use crate::display::vertex_list;

/// One line per object: `ray`, `cone`, `newton`, `brick`.
pub fn plot_data(t: CartanType, c: &CoxeterWord, seed_budget: usize) -> Result<Outcome> {
    let spec = cluster_complex(t, c)?;
    let geometry = BrickGeometry::new(&spec)?;
    let gfan = g_vector_fan(&spec)?;
    let data = cluster_data(&spec, seed_budget)?;
    let mut lines = Vec::new();
    for (pos, (w, dual)) in gfan.weight_rays.iter().zip(gfan.fan.rays()).enumerate() {
        lines.push(format!("ray {} weight {} coweight {}", pos + 1, compact(&w.0), compact(dual)));
    }
    for cone in gfan.fan.maximal_cones() {
        let rays: Vec<String> = cone.iter().map(|i| (i + 1).to_string()).collect();
        lines.push(format!("cone {}", rays.join(" ")));
    }
    for var in data.in_position_order(&geometry)? {
        if let Some(p) = var.newton_polytope() {
            lines.push(format!("newton {} {}", compact(&var.d_vector.0), vertex_list(p.vertices())));
        }
    }
    lines.push(format!("brick {}", vertex_list(geometry.asso_polytope().vertices())));
    Ok(Outcome::pass(lines))
}
