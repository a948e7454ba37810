//! Hand-built towers used by the tests and the CLI.

use crate::error::Result;
use crate::graph::Graph;
use crate::metric::{ExtLength, MetricGraph};
use crate::morphism::{DoubleCover, HarmonicMorphism, Tower};

/// Double cover with one vertex over each dilated vertex and two over each free one.
/// Free vertex `v` lifts to `v` and `n + j` for its rank `j` among free vertices;
/// free edge `k` lifts to two edges (the first starting on sheet 0) that change
/// sheet when `crossing[k]`, a dilated edge to a single edge of degree 2.
pub fn double_cover(
    g: &Graph,
    dilated_vertices: &[bool],
    dilated_edges: &[bool],
    crossing: &[bool],
) -> Result<DoubleCover> {
    let n = g.num_vertices();
    let mut second = vec![None; n];
    let mut vmap: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if !dilated_vertices[v] {
            second[v] = Some(vmap.len());
            vmap.push(v);
        }
    }
    let lift = |v: usize, s: usize| if s == 0 { v } else { second[v].unwrap_or(v) };
    let mut edges = Vec::new();
    let mut images = Vec::new();
    for k in 0..g.num_edges() {
        let (u, v) = g.edge_ends(k);
        if dilated_edges[k] {
            edges.push((u, v));
            images.push((k, true, 2));
            continue;
        }
        for s in 0..2 {
            let t = if crossing[k] { 1 - s } else { s };
            edges.push((lift(u, s), lift(v, t)));
            images.push((k, true, 1));
        }
    }
    let vdeg = vmap
        .iter()
        .map(|&v| if dilated_vertices[v] { 2 } else { 1 })
        .collect();
    let top = Graph::from_edges(vmap.len(), &edges)?;
    let f = HarmonicMorphism::from_edge_map(top, g.clone(), vmap, &images, vdeg)?;
    DoubleCover::new(f)
}

/// Free double cover with sheets `v` and `v + n`.
pub fn free_double_cover(g: &Graph, crossing: &[bool]) -> Result<DoubleCover> {
    let none = vec![false; g.num_vertices()];
    double_cover(g, &none, &vec![false; g.num_edges()], crossing)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n + 1, &edges).expect("path graph")
}

/// Metric on a path with the given edge lengths.
pub fn path_metric(lengths: &[i64]) -> MetricGraph {
    MetricGraph::new(
        path(lengths.len()),
        lengths.iter().map(|&l| ExtLength::integer(l)).collect(),
    )
    .expect("positive lengths")
}

/// A connected degree 2 tower over a path `a, b, c` whose bigonal image is also
/// connected: `Γ` is a cycle of two edges over `b` with a doubled edge on each
/// side, `π` is dilated exactly over the two end vertices.
pub fn bigonal_example() -> Tower {
    let k = path(3);
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 2), (2, 3)]).unwrap();
    let f = HarmonicMorphism::from_edge_map(
        g.clone(),
        k,
        vec![0, 1, 2, 3],
        &[(0, true, 2), (1, true, 1), (1, true, 1), (2, true, 2)],
        vec![2; 4],
    )
    .unwrap();
    // vertices 0, 5 dilated; 1, 2 over vertex 1 and 3, 4 over vertex 2
    let gt = Graph::from_edges(
        6,
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (2, 4),
            (1, 3),
            (2, 4),
            (3, 5),
            (4, 5),
        ],
    )
    .unwrap();
    let pi = HarmonicMorphism::from_edge_map(
        gt,
        g,
        vec![0, 1, 1, 2, 2, 3],
        &[
            (0, true, 1),
            (0, true, 1),
            (1, true, 1),
            (1, true, 1),
            (2, true, 1),
            (2, true, 1),
            (3, true, 1),
            (3, true, 1),
        ],
        vec![2, 1, 1, 1, 1, 2],
    )
    .unwrap();
    Tower::new(DoubleCover::new(pi).unwrap(), f).unwrap()
}

/// Cycles of the top of [`bigonal_example`]: the loop over the two middle edges
/// on the first sheet, its image under the involution, and the long loop
/// through both dilated vertices.
pub fn bigonal_example_cycles() -> [Vec<i64>; 3] {
    [
        vec![0, 0, 1, 0, -1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, -1, 0, 0],
        vec![1, -1, 1, -1, 0, 0, 1, -1],
    ]
}

/// A free degree 3 tower of genus 3 over a path `a, b, c, d, e` whose base
/// points have types C, B, B, B, B, C and edges B, A, B, A, B.
pub fn trigonal_example() -> Tower {
    let k = path(5);
    // 0 and 9 over the ends; 1..=4 the thick row, 5..=8 the thin row
    let g = Graph::from_edges(
        10,
        &[
            (0, 1),
            (0, 5),
            (1, 2),
            (1, 2),
            (5, 6),
            (2, 3),
            (6, 7),
            (3, 4),
            (3, 4),
            (7, 8),
            (4, 9),
            (8, 9),
        ],
    )
    .unwrap();
    let f = HarmonicMorphism::from_edge_map(
        g.clone(),
        k,
        vec![0, 1, 2, 3, 4, 1, 2, 3, 4, 5],
        &[
            (0, true, 2),
            (0, true, 1),
            (1, true, 1),
            (1, true, 1),
            (1, true, 1),
            (2, true, 2),
            (2, true, 1),
            (3, true, 1),
            (3, true, 1),
            (3, true, 1),
            (4, true, 2),
            (4, true, 1),
        ],
        vec![3, 2, 2, 2, 2, 1, 1, 1, 1, 3],
    )
    .unwrap();
    let mut crossing = vec![false; 12];
    crossing[2] = true;
    crossing[7] = true;
    let pi = free_double_cover(&g, &crossing).unwrap();
    Tower::new(pi, f).unwrap()
}

/// The cycles `η̃₁⁺, η̃₁⁻, η̃₂⁺, η̃₂⁻` on the top of [`trigonal_example`]: the
/// first runs across both crossing edges, the second around one sheet.
pub fn trigonal_example_cycles() -> [Vec<i64>; 4] {
    let lift = |sheet_edges: &[(usize, usize, i64)]| {
        let mut c = vec![0; 24];
        for &(k, s, x) in sheet_edges {
            c[2 * k + s] += x;
        }
        c
    };
    let eta1 = |s: usize| {
        let o = 1 - s;
        lift(&[
            (3, s, 1),
            (5, s, 1),
            (8, s, 1),
            (7, o, -1),
            (5, o, -1),
            (2, s, -1),
        ])
    };
    let eta2 = |s: usize| {
        lift(&[
            (0, s, 1),
            (3, s, 1),
            (5, s, 1),
            (8, s, 1),
            (10, s, 1),
            (11, s, -1),
            (9, s, -1),
            (6, s, -1),
            (4, s, -1),
            (1, s, -1),
        ])
    };
    [eta1(0), eta1(1), eta2(0), eta2(1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::genus;
    use crate::jacprym::is_closed;
    use crate::morphism::dilation_data;

    #[test]
    fn bigonal_example_shape() {
        let t = bigonal_example();
        assert_eq!(genus(t.middle()).unwrap(), 1);
        assert_eq!(genus(t.top()).unwrap(), 3);
        let d = dilation_data(&t.pi).unwrap();
        assert_eq!((d.a, d.b, d.c), (1, 1, 0));
        for c in bigonal_example_cycles() {
            assert!(is_closed(t.top(), &c));
        }
    }

    #[test]
    fn trigonal_example_shape() {
        let t = trigonal_example();
        assert_eq!(genus(t.middle()).unwrap(), 3);
        assert_eq!(genus(t.top()).unwrap(), 5);
        assert!(t.top().is_connected());
        for c in trigonal_example_cycles() {
            assert!(is_closed(t.top(), &c));
        }
    }
}
