use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{boundary, spanning_tree, Graph, SpanningTree};
use crate::linalg::IntMatrix;
use crate::morphism::{DoubleCover, HarmonicMorphism, Involution};

/// Fundamental cycles of a BFS spanning tree, one per complementary edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub graph: Graph,
    pub tree: SpanningTree,
    /// Edge coefficient vectors, ordered like `tree.complement`.
    pub cycles: Vec<Vec<i64>>,
}

pub fn h1_basis(g: &Graph) -> Result<CycleBasis> {
    let tree = spanning_tree(g)?;
    let cycles = tree
        .complement
        .iter()
        .map(|&e| tree.fundamental_cycle(g, e))
        .collect();
    Ok(CycleBasis {
        graph: g.clone(),
        tree,
        cycles,
    })
}

pub fn is_closed(g: &Graph, chain: &[i64]) -> bool {
    boundary(g, chain).iter().all(|&x| x == 0)
}

impl CycleBasis {
    pub fn genus(&self) -> usize {
        self.cycles.len()
    }

    /// Coordinates of a cycle, read off the complementary edges.
    pub fn coords(&self, chain: &[i64]) -> Result<Vec<i64>> {
        if !is_closed(&self.graph, chain) {
            return Err(Error::Invariant("chain is not a cycle".into()));
        }
        Ok(self.tree.complement.iter().map(|&e| chain[e]).collect())
    }

    pub fn chain(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.graph.num_edges()];
        for (z, &c) in self.cycles.iter().zip(coords) {
            for (o, &x) in out.iter_mut().zip(z) {
                *o += c * x;
            }
        }
        out
    }

    /// Columns are the coordinates of the given cycles.
    pub fn coord_matrix(&self, cycles: &[Vec<i64>]) -> Result<IntMatrix> {
        let cols: Vec<Vec<BigInt>> = cycles
            .iter()
            .map(|z| Ok(self.coords(z)?.into_iter().map(BigInt::from).collect()))
            .collect::<Result<_>>()?;
        Ok(IntMatrix::from_columns(&cols, self.genus()))
    }
}

/// Pushforward of an edge chain, each edge with coefficient one.
pub fn push_chain(f: &HarmonicMorphism, chain: &[i64]) -> Vec<i64> {
    let mut out = vec![0; f.target().num_edges()];
    for (e, &c) in chain.iter().enumerate() {
        if c != 0 {
            out[f.edge_image(e)] += c * f.edge_sign(e);
        }
    }
    out
}

/// Pullback of an edge chain, weighted by local degrees.
pub fn pull_chain(f: &HarmonicMorphism, chain: &[i64]) -> Vec<i64> {
    let s = f.source();
    let mut out = vec![0; s.num_edges()];
    for e in 0..s.num_edges() {
        let c = chain[f.edge_image(e)];
        if c != 0 {
            out[e] += c * f.edge_sign(e) * f.edge_degree(e) as i64;
        }
    }
    out
}

pub fn involution_chain(g: &Graph, iota: &Involution, chain: &[i64]) -> Vec<i64> {
    let mut out = vec![0; g.num_edges()];
    for (e, &c) in chain.iter().enumerate() {
        if c != 0 {
            let h = iota.h[g.edge_tail_half(e)];
            out[g.edge_of(h)] += c * g.orientation(h);
        }
    }
    out
}

/// `π_*`, `π^*` and `ι_*` in fundamental cycle bases.
#[derive(Clone, Debug)]
pub struct TransferMaps {
    pub top: CycleBasis,
    pub bottom: CycleBasis,
    /// `g × g̃`
    pub push: IntMatrix,
    /// `g̃ × g`
    pub pull: IntMatrix,
    /// `g̃ × g̃`
    pub iota: IntMatrix,
}

pub fn transfer_maps(c: &DoubleCover) -> Result<TransferMaps> {
    let top = h1_basis(c.source())?;
    let bottom = h1_basis(c.target())?;
    let f = c.cover();
    let push: Vec<Vec<i64>> = top.cycles.iter().map(|z| push_chain(f, z)).collect();
    let pull: Vec<Vec<i64>> = bottom.cycles.iter().map(|z| pull_chain(f, z)).collect();
    let iota: Vec<Vec<i64>> = top
        .cycles
        .iter()
        .map(|z| involution_chain(c.source(), c.involution(), z))
        .collect();
    let push = bottom.coord_matrix(&push)?;
    let pull = top.coord_matrix(&pull)?;
    let iota = top.coord_matrix(&iota)?;
    let lhs = &pull * &push;
    let rhs = &IntMatrix::identity(top.genus()) + &iota;
    if lhs != rhs {
        return Err(Error::Invariant(format!(
            "π^*π_* = {lhs} but Id + ι_* = {rhs}"
        )));
    }
    Ok(TransferMaps {
        top,
        bottom,
        push,
        pull,
        iota,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::theta;
    use crate::morphism::tests::{loop_connected, loop_split};

    #[test]
    fn bases() {
        let tree = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(h1_basis(&tree).unwrap().genus(), 0);
        let lp = Graph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(h1_basis(&lp).unwrap().cycles, vec![vec![1]]);
        let th = theta();
        let b = h1_basis(&th).unwrap();
        assert_eq!(b.genus(), 2);
        for z in &b.cycles {
            assert!(is_closed(&th, z));
            assert_eq!(b.chain(&b.coords(z).unwrap()), *z);
        }
    }

    #[test]
    fn connected_loop_cover() {
        let t = transfer_maps(&loop_connected()).unwrap();
        assert_eq!(t.push, IntMatrix::from_i64(&[&[2]]));
        assert_eq!(t.pull, IntMatrix::from_i64(&[&[1]]));
        assert_eq!(t.iota, IntMatrix::from_i64(&[&[1]]));
    }

    #[test]
    fn split_loop_cover_rejected() {
        assert!(matches!(
            transfer_maps(&loop_split()),
            Err(Error::Disconnected(_))
        ));
    }
}
