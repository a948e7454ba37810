use std::fmt;

use super::construct::{ngonal_construct, NGonal};
use crate::error::{precondition, Error, Result};
use crate::graph::Point;
use crate::morphism::{DoubleCover, Tower};

/// Point types of a degree 2 tower, read off the fibers of `Γ → K` and their
/// dilation under `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BigonalType {
    I,
    II,
    III,
    IV,
    V,
}

impl BigonalType {
    /// The type of the same point after the bigonal construction.
    pub fn image(self) -> BigonalType {
        match self {
            BigonalType::I | BigonalType::V => BigonalType::I,
            BigonalType::II => BigonalType::III,
            BigonalType::III => BigonalType::II,
            BigonalType::IV => BigonalType::IV,
        }
    }
}

impl fmt::Display for BigonalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BigonalType::I => "I",
            BigonalType::II => "II",
            BigonalType::III => "III",
            BigonalType::IV => "IV",
            BigonalType::V => "V",
        };
        f.write_str(s)
    }
}

/// Classifies from the dilation flags of the `Γ`-points over a base point.
pub fn classify_bigonal(dilated: &[bool]) -> Result<BigonalType> {
    match dilated {
        [true] => Ok(BigonalType::I),
        [false] => Ok(BigonalType::II),
        [true, false] | [false, true] => Ok(BigonalType::III),
        [false, false] => Ok(BigonalType::IV),
        [true, true] => Ok(BigonalType::V),
        _ => Err(precondition(
            "bigonal fiber",
            format!("{} preimages", dilated.len()),
        )),
    }
}

pub fn bigonal_type(t: &Tower, x: Point) -> Result<BigonalType> {
    let flags: Vec<bool> =
        t.f.fiber(x)
            .into_iter()
            .map(|y| t.pi.is_dilated_at(y))
            .collect();
    classify_bigonal(&flags)
}

/// Types of all base points, vertices first.
pub fn bigonal_types(t: &Tower) -> Result<Vec<BigonalType>> {
    t.base().points().map(|x| bigonal_type(t, x)).collect()
}

#[derive(Clone, Debug)]
pub struct Bigonal {
    /// `P̃ → P → K` with `P = K̃`.
    pub tower: Tower,
    pub construction: NGonal,
    pub input_types: Vec<BigonalType>,
    pub output_types: Vec<BigonalType>,
    /// No point of type V in the input.
    pub generic: bool,
}

pub fn bigonal(t: &Tower) -> Result<Bigonal> {
    if t.f.global_degree() != Some(2) {
        return Err(precondition(
            "deg f = 2",
            format!("deg f = {:?}", t.f.global_degree()),
        ));
    }
    if !t.base().is_tree() {
        return Err(precondition(
            "K a tree",
            "base graph has cycles or is disconnected",
        ));
    }
    let input_types = bigonal_types(t)?;
    let construction = ngonal_construct(t, 2)?;
    let pi = DoubleCover::new(construction.q.clone())?;
    let tower = Tower::new(pi, construction.ktilde.cover().clone())?;
    let output_types = bigonal_types(&tower)?;
    for (x, (a, b)) in t.base().points().zip(input_types.iter().zip(&output_types)) {
        if a.image() != *b {
            return Err(Error::Invariant(format!(
                "type {a} at {x} became {b}, expected {}",
                a.image()
            )));
        }
    }
    let generic = !input_types.contains(&BigonalType::V);
    Ok(Bigonal {
        tower,
        construction,
        input_types,
        output_types,
        generic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{genus, Graph};
    use crate::iso::towers_isomorphic;
    use crate::morphism::HarmonicMorphism;

    /// Single vertex base with one fiber of the given kind.
    fn point_tower(kind: BigonalType) -> Tower {
        let k = Graph::new(1, vec![], vec![]).unwrap();
        let (g_deg, tilde_deg, tilde_map): (Vec<u64>, Vec<u64>, Vec<usize>) = match kind {
            BigonalType::I => (vec![2], vec![2], vec![0]),
            BigonalType::II => (vec![2], vec![1, 1], vec![0, 0]),
            BigonalType::III => (vec![1, 1], vec![2, 1, 1], vec![0, 1, 1]),
            BigonalType::IV => (vec![1, 1], vec![1, 1, 1, 1], vec![0, 0, 1, 1]),
            BigonalType::V => (vec![1, 1], vec![2, 2], vec![0, 1]),
        };
        let g = Graph::new(g_deg.len(), vec![], vec![]).unwrap();
        let gt = Graph::new(tilde_deg.len(), vec![], vec![]).unwrap();
        let f = HarmonicMorphism::new(g.clone(), k, vec![0; g_deg.len()], vec![], g_deg, vec![])
            .unwrap();
        let pi = DoubleCover::new(
            HarmonicMorphism::new(gt, g, tilde_map, vec![], tilde_deg, vec![]).unwrap(),
        )
        .unwrap();
        Tower::new(pi, f).unwrap()
    }

    #[test]
    fn type_table() {
        use BigonalType::*;
        for (a, b) in [(I, I), (II, III), (III, II), (IV, IV), (V, I)] {
            let t = point_tower(a);
            assert_eq!(bigonal_type(&t, Point::Vertex(0)).unwrap(), a);
            let out = bigonal(&t).unwrap();
            assert_eq!(out.output_types, vec![b]);
            assert_eq!(out.generic, a != V);
        }
    }

    #[test]
    fn type_ii_fiber() {
        let c = ngonal_construct(&point_tower(BigonalType::II), 2).unwrap();
        let degs: Vec<u64> = c.ptilde.vdeg().to_vec();
        assert_eq!(degs, vec![1, 2, 1]);
        assert_eq!(c.ktilde.source().num_vertices(), 2);
        assert_eq!(c.iota.v, vec![2, 1, 0]);
    }

    #[test]
    fn generic_points_are_involutive() {
        use BigonalType::*;
        for a in [I, II, III, IV] {
            let t = point_tower(a);
            let twice = bigonal(&bigonal(&t).unwrap().tower).unwrap();
            assert!(towers_isomorphic(&t, &twice.tower).unwrap().is_some());
        }
    }

    /// Free double cover of a 2-cycle over an edge.
    #[test]
    fn free_tower_over_tree_splits() {
        let k = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g = Graph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let gt = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 3), (2, 1)]).unwrap();
        let f = HarmonicMorphism::new(
            g.clone(),
            k,
            vec![0, 1],
            vec![0, 1, 0, 1],
            vec![2, 2],
            vec![1; 4],
        )
        .unwrap();
        let pi = DoubleCover::new(
            HarmonicMorphism::new(
                gt.clone(),
                g.clone(),
                vec![0, 1, 0, 1],
                vec![0, 1, 0, 1, 2, 3, 2, 3],
                vec![1; 4],
                vec![1; 8],
            )
            .unwrap(),
        )
        .unwrap();
        let t = Tower::new(pi, f).unwrap();
        let out = bigonal(&t).unwrap();
        assert!(!out.tower.top().is_connected());
        assert!(gt.is_connected());
        assert_eq!(genus(&gt).unwrap(), genus(&g).unwrap());
    }
}
