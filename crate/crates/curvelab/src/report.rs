//! Report emitters: link dumps in JSON and DOT, classification rows in CSV
//! mirroring the table column order (|L|, diam, shortcut-status), and the
//! short-curve CSV.

use crate::links::{DiameterReport, EdgeClassification, LinkGraph};
use serde_json::json;

pub fn link_json(link: &LinkGraph, diameter: &DiameterReport) -> serde_json::Value {
    json!({
        "provenance": {
            "family": link.provenance.family,
            "u": link.provenance.u,
            "v": link.provenance.v,
            "k": link.provenance.k,
        },
        "exact": link.is_exact(),
        "vertices": link.vertices.iter().map(|v| v.label()).collect::<Vec<_>>(),
        "edges": link
            .adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| {
                ns.iter()
                    .filter(move |&&j| j > i)
                    .map(move |&j| json!([i, j]))
            })
            .collect::<Vec<_>>(),
        "diameter": diameter_json(diameter),
    })
}

pub fn diameter_json(d: &DiameterReport) -> serde_json::Value {
    match d {
        DiameterReport::Exact(v) => json!({"kind": "exact", "value": v}),
        DiameterReport::Exact0 => json!({"kind": "exact", "value": 0}),
        DiameterReport::Disconnected => json!({"kind": "disconnected"}),
        DiameterReport::EvidenceOnly(v) => json!({"kind": "evidence-only", "value": v}),
    }
}

pub fn link_dot(link: &LinkGraph) -> String {
    let mut out = String::from("graph link {\n");
    for (i, v) in link.vertices.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", v.label()));
    }
    for (i, ns) in link.adj.iter().enumerate() {
        for &j in ns {
            if j > i {
                out.push_str(&format!("  n{i} -- n{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub const CLASSIFY_CSV_HEADER: &str =
    "edge,family,surface,k,row,link_cardinality,diameter,shortcut";

pub fn classification_csv_row(c: &EdgeClassification) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        c.edge_label,
        c.family,
        c.surface,
        c.k,
        c.row_name(),
        c.predicted_cardinality,
        c.predicted_diameter,
        c.predicted_shortcut
    )
}

pub const SHORT_CURVE_CSV_HEADER: &str = "chi_abs,k,cycle_len,bound_18log2,i_alpha_beta";

pub fn short_curve_csv_row(
    chi_abs: u64,
    k: u64,
    cycle_len: usize,
    weighted: u64,
) -> String {
    // The printed bound column is 18*log2(2 chi) rounded down; the exact
    // comparison lives in the pipeline output flags.
    let bound = (18.0 * (2.0 * chi_abs as f64).log2()).floor() as u64;
    format!("{chi_abs},{k},{cycle_len},{bound},{weighted}")
}
