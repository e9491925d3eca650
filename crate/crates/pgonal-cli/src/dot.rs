//! DOT rendering of the strata / boundary-point incidence graph.
//!
//! Node ids are derived from canonical stratum strings and boundary labels,
//! so output is stable across runs and shared boundary points collapse to a
//! single node.

use std::fmt::Write;

use pgonal::boundary_graph::{BoundaryPoint, StrataGraph};
use pgonal::strata::classify_r4_type;

fn boundary_id(b: &BoundaryPoint) -> String {
    format!("B:P{}+P{}:m{}", b.pieces.0, b.pieces.1, b.multiplicity)
}

pub fn render(graph: &StrataGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph strata_p{} {{", graph.modulus.get()).unwrap();
    writeln!(out, "  layout=neato;").unwrap();
    writeln!(out, "  overlap=false;").unwrap();
    for s in &graph.strata {
        let tag = classify_r4_type(s).expect("graph strata have r = 4");
        writeln!(
            out,
            "  \"S:{s}\" [shape=box, label=\"{s}\\n{tag}\"];"
        )
        .unwrap();
    }
    for b in &graph.boundary_points {
        writeln!(
            out,
            "  \"{}\" [shape=ellipse, label=\"P{}+P{} x{}\"];",
            boundary_id(b),
            b.pieces.0,
            b.pieces.1,
            b.multiplicity
        )
        .unwrap();
    }
    for (i, row) in graph.incidence.iter().enumerate() {
        for &b in row {
            writeln!(
                out,
                "  \"S:{}\" -- \"{}\";",
                graph.strata[i],
                boundary_id(&graph.boundary_points[b])
            )
            .unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
