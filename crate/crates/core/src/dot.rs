//! Graphviz export.

use std::fmt::Write;

use crate::format::Loaded;
use crate::graph::Graph;

fn cluster(
    out: &mut String,
    id: usize,
    title: &str,
    g: &Graph,
    vlabel: impl Fn(usize) -> String,
    elabel: impl Fn(usize) -> (String, u64),
) {
    let _ = writeln!(out, "  subgraph cluster_{id} {{");
    let _ = writeln!(out, "    label=\"{title}\";");
    for v in 0..g.num_vertices() {
        let _ = writeln!(out, "    l{id}v{v} [label=\"{}\"];", vlabel(v));
    }
    for e in 0..g.num_edges() {
        let (u, w) = g.edge_ends(e);
        let (label, weight) = elabel(e);
        let _ = writeln!(
            out,
            "    l{id}v{u} -- l{id}v{w} [label=\"{label}\", weight={weight}, penwidth={weight}];"
        );
    }
    let _ = writeln!(out, "  }}");
}

/// One cluster per level; cover edges are labelled with their dilation factor.
pub fn to_dot(l: &Loaded) -> String {
    let mut out = String::from("graph tower {\n");
    let base = &l.base;
    cluster(
        &mut out,
        0,
        "base",
        &base.graph,
        |v| format!("v{v}"),
        |e| (format!("e{e}: {}", base.lengths[e]), 1),
    );
    for (i, f) in l.levels.iter().enumerate() {
        cluster(
            &mut out,
            i + 1,
            &format!("level {i}"),
            f.source(),
            |v| {
                let d = f.vdeg()[v];
                let image = f.vmap()[v];
                if d > 1 {
                    format!("v{v} -> v{image} (x{d})")
                } else {
                    format!("v{v} -> v{image}")
                }
            },
            |e| {
                let d = f.edge_degree(e);
                (format!("e{e} -> e{} x{d}", f.edge_image(e)), d)
            },
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bigonal_example, path_metric};
    use crate::format::{Meta, TowerFile};

    #[test]
    fn dilation_labels() {
        let f = TowerFile::from_tower(
            &bigonal_example(),
            &path_metric(&[1, 2, 3]),
            Meta::default(),
        );
        let dot = to_dot(&f.load().unwrap());
        assert!(dot.starts_with("graph tower {"));
        assert!(dot.contains("e0 -> e0 x2"));
        assert_eq!(dot.matches("subgraph").count(), 3);
    }
}
