//! Exact edge lengths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Report, Result};
use crate::graph::Graph;
use crate::morphism::{DoubleCover, HarmonicMorphism, Tower};

/// Positive rational length or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtLength {
    Finite(BigRational),
    Infinite,
}

impl ExtLength {
    pub fn finite(p: i64, q: i64) -> Self {
        ExtLength::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn integer(n: i64) -> Self {
        Self::finite(n, 1)
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtLength::Finite(x) => Some(x),
            ExtLength::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtLength::Infinite)
    }

    pub fn div(&self, d: u64) -> ExtLength {
        match self {
            ExtLength::Finite(x) => {
                ExtLength::Finite(x / BigRational::from_integer(BigInt::from(d)))
            }
            ExtLength::Infinite => ExtLength::Infinite,
        }
    }

    pub fn scale(&self, c: &BigRational) -> ExtLength {
        match self {
            ExtLength::Finite(x) => ExtLength::Finite(x * c),
            ExtLength::Infinite => ExtLength::Infinite,
        }
    }
}

impl fmt::Display for ExtLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLength::Finite(x) if x.is_integer() => write!(f, "{}", x.numer()),
            ExtLength::Finite(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            ExtLength::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtLength {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ExtLength::Infinite);
        }
        let bad = || Error::Format(format!("malformed length {s:?}"));
        let x = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.parse().map_err(|_| bad())?;
                let q: BigInt = q.parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        if !x.is_positive() {
            return Err(Error::Format(format!("length {s} is not positive")));
        }
        Ok(ExtLength::Finite(x))
    }
}

/// Graph with edge lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricGraph {
    pub graph: Graph,
    pub lengths: Vec<ExtLength>,
    /// Smooth models carry no finite leaves.
    pub smooth: bool,
}

impl MetricGraph {
    /// A non-smooth model: finite leaves allowed.
    pub fn new(graph: Graph, lengths: Vec<ExtLength>) -> Result<Self> {
        let m = MetricGraph {
            graph,
            lengths,
            smooth: false,
        };
        let r = m.validate();
        if !r.is_valid() {
            return Err(Error::Format(r.to_string()));
        }
        Ok(m)
    }

    pub fn uniform(graph: Graph, len: i64) -> Self {
        let n = graph.num_edges();
        MetricGraph::new(graph, vec![ExtLength::integer(len); n]).expect("positive lengths")
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let g = &self.graph;
        if self.lengths.len() != g.num_edges() {
            r.push(format!(
                "{} lengths for {} edges",
                self.lengths.len(),
                g.num_edges()
            ));
            return r;
        }
        for (e, l) in self.lengths.iter().enumerate() {
            let (u, w) = g.edge_ends(e);
            let extremal = u != w && (g.valence(u) == 1 || g.valence(w) == 1);
            match l {
                ExtLength::Infinite if !extremal => {
                    r.push(format!("infinite edge {e} is not extremal"))
                }
                ExtLength::Finite(x) if !x.is_positive() => {
                    r.push(format!("edge {e} has non-positive length"))
                }
                ExtLength::Finite(_) if self.smooth && extremal => {
                    r.push(format!("finite leaf edge {e} in a smooth model"))
                }
                _ => {}
            }
        }
        r
    }

    pub fn length(&self, e: usize) -> &ExtLength {
        &self.lengths[e]
    }

    pub fn scale(&self, c: &BigRational) -> MetricGraph {
        MetricGraph {
            graph: self.graph.clone(),
            lengths: self.lengths.iter().map(|l| l.scale(c)).collect(),
            smooth: self.smooth,
        }
    }
}

/// `ℓ(e) = ℓ(f(e)) / d_f(e)` on every source edge.
pub fn induce_metric(f: &HarmonicMorphism, target: &MetricGraph) -> Result<MetricGraph> {
    if &target.graph != f.target() {
        return Err(Error::NotComposable(
            "metric is not on the target of the map".into(),
        ));
    }
    let s = f.source();
    let lengths = (0..s.num_edges())
        .map(|e| target.lengths[f.edge_image(e)].div(f.edge_degree(e)))
        .collect();
    Ok(MetricGraph {
        graph: s.clone(),
        lengths,
        smooth: target.smooth,
    })
}

pub fn validate_metric_harmonic(
    f: &HarmonicMorphism,
    source: &MetricGraph,
    target: &MetricGraph,
) -> Report {
    let mut r = Report::new();
    if &source.graph != f.source() || &target.graph != f.target() {
        r.push("metrics do not live on the graphs of the map");
        return r;
    }
    for e in 0..f.source().num_edges() {
        let img = &target.lengths[f.edge_image(e)];
        let ok = match (&source.lengths[e], img) {
            (ExtLength::Infinite, ExtLength::Infinite) => true,
            (ExtLength::Finite(a), ExtLength::Finite(b)) => {
                a * BigRational::from_integer(BigInt::from(f.edge_degree(e))) == *b
            }
            _ => false,
        };
        if !ok {
            r.push(format!(
                "edge {e}: dilation {} times length {} differs from image length {img}",
                f.edge_degree(e),
                source.lengths[e]
            ));
        }
    }
    r
}

fn finite_leaves(m: &MetricGraph) -> Vec<usize> {
    let g = &m.graph;
    (0..g.num_vertices())
        .filter(|&v| {
            g.valence(v) == 1 && {
                let e = g.edge_of(g.star(v)[0]);
                !m.lengths[e].is_infinite()
            }
        })
        .collect()
}

/// Attaches an infinite ray at every finite leaf.
pub fn augment_smooth(m: &MetricGraph) -> MetricGraph {
    let leaves = finite_leaves(m);
    let g = &m.graph;
    let mut root = g.roots().to_vec();
    let mut partner = g.partners().to_vec();
    let mut lengths = m.lengths.clone();
    let mut nv = g.num_vertices();
    for v in leaves {
        let h = root.len();
        root.push(v);
        root.push(nv);
        partner.push(h + 1);
        partner.push(h);
        nv += 1;
        lengths.push(ExtLength::Infinite);
    }
    MetricGraph {
        graph: Graph::new(nv, root, partner).expect("augmentation keeps a valid graph"),
        lengths,
        smooth: true,
    }
}

struct Builder {
    nv: usize,
    root: Vec<usize>,
    partner: Vec<usize>,
    vmap: Vec<usize>,
    hmap: Vec<usize>,
    vdeg: Vec<u64>,
    hdeg: Vec<u64>,
}

impl Builder {
    fn from(f: &HarmonicMorphism) -> Self {
        Builder {
            nv: f.source().num_vertices(),
            root: f.source().roots().to_vec(),
            partner: f.source().partners().to_vec(),
            vmap: f.vmap().to_vec(),
            hmap: f.hmap().to_vec(),
            vdeg: f.vdeg().to_vec(),
            hdeg: f.hdeg().to_vec(),
        }
    }

    /// Adds a ray from `v` over the target ray `over`.
    fn ray(&mut self, v: usize, over: (usize, usize), far: usize, deg: u64) {
        let h = self.root.len();
        let w = self.nv;
        self.nv += 1;
        self.root.extend([v, w]);
        self.partner.extend([h + 1, h]);
        self.hmap.extend([over.0, over.1]);
        self.hdeg.extend([deg, deg]);
        self.vmap.push(far);
        self.vdeg.push(deg);
    }

    fn finish(self, target: Graph) -> Result<HarmonicMorphism> {
        HarmonicMorphism::new(
            Graph::new(self.nv, self.root, self.partner)?,
            target,
            self.vmap,
            self.hmap,
            self.vdeg,
            self.hdeg,
        )
    }
}

/// Smooth augmentation of a cover: a ray at each finite leaf of the base and
/// `d_f(v)` degree-one rays above it at each preimage `v`.
pub fn augment_smooth_cover(
    f: &HarmonicMorphism,
    base: &MetricGraph,
) -> Result<(HarmonicMorphism, MetricGraph)> {
    let leaves = finite_leaves(base);
    let aug = augment_smooth(base);
    let old_h = base.graph.num_half_edges();
    let old_v = base.graph.num_vertices();
    let mut b = Builder::from(f);
    for (i, &x) in leaves.iter().enumerate() {
        let over = (old_h + 2 * i, old_h + 2 * i + 1);
        for &v in f.vertex_fiber(x) {
            for _ in 0..f.vdeg()[v] {
                b.ray(v, over, old_v + i, 1);
            }
        }
    }
    Ok((b.finish(aug.graph.clone())?, aug))
}

/// Smooth augmentation of both levels of a tower.
pub fn augment_smooth_tower(t: &Tower, base: &MetricGraph) -> Result<(Tower, MetricGraph)> {
    let (f, aug) = augment_smooth_cover(&t.f, base)?;
    let pi = t.pi.cover();
    let old_gh = t.middle().num_half_edges();
    let old_gv = t.middle().num_vertices();
    // rays of the middle graph, in creation order: (root vertex, inner half-edge, far vertex)
    let mut rays = Vec::new();
    for h in (old_gh..f.source().num_half_edges()).step_by(2) {
        rays.push((f.source().root(h), h, f.source().root(h + 1)));
    }
    let mut b = Builder::from(pi);
    for &(v, h, far) in &rays {
        debug_assert!(far >= old_gv);
        for &w in pi.vertex_fiber(v) {
            for _ in 0..pi.vdeg()[w] {
                b.ray(w, (h, h + 1), far, 1);
            }
        }
    }
    let cover = b.finish(f.source().clone())?;
    Ok((Tower::new(DoubleCover::new(cover)?, f)?, aug))
}

/// Sum of lengths along a chain of finite edges, for integration pairings.
pub fn chain_length(m: &MetricGraph, a: &[i64], b: &[i64]) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for e in 0..a.len() {
        if a[e] == 0 || b[e] == 0 {
            continue;
        }
        match &m.lengths[e] {
            ExtLength::Finite(x) => acc += x * BigRational::from_integer(BigInt::from(a[e] * b[e])),
            ExtLength::Infinite => return Err(Error::InfiniteCycle(e)),
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!("3/6".parse::<ExtLength>().unwrap(), ExtLength::finite(1, 2));
        assert_eq!("inf".parse::<ExtLength>().unwrap(), ExtLength::Infinite);
        assert_eq!(ExtLength::finite(4, 2).to_string(), "2");
        assert_eq!(ExtLength::finite(1, 3).to_string(), "1/3");
        assert!("0".parse::<ExtLength>().is_err());
        assert!("-1/2".parse::<ExtLength>().is_err());
    }

    #[test]
    fn dilated_edge_gets_divided() {
        let k = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let f = HarmonicMorphism::new(g, k.clone(), vec![0, 1], vec![0, 1], vec![2, 2], vec![2, 2])
            .unwrap();
        let base = MetricGraph::new(k, vec![ExtLength::integer(4)]).unwrap();
        let m = induce_metric(&f, &base).unwrap();
        assert_eq!(m.lengths, vec![ExtLength::integer(2)]);
        assert!(validate_metric_harmonic(&f, &m, &base).is_valid());
        let wrong = MetricGraph::new(m.graph.clone(), vec![ExtLength::integer(4)]).unwrap();
        assert!(!validate_metric_harmonic(&f, &wrong, &base).is_valid());
    }

    #[test]
    fn free_cover_copies_lengths() {
        let k = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let f = HarmonicMorphism::new(
            g,
            k.clone(),
            vec![0, 1, 0, 1],
            vec![0, 1, 0, 1],
            vec![1; 4],
            vec![1; 4],
        )
        .unwrap();
        let base = MetricGraph::new(k, vec![ExtLength::finite(7, 3)]).unwrap();
        let m = induce_metric(&f, &base).unwrap();
        assert_eq!(m.lengths, vec![ExtLength::finite(7, 3); 2]);
    }

    #[test]
    fn augmentation() {
        let lp = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let m = MetricGraph::uniform(lp, 1);
        assert_eq!(augment_smooth(&m).graph, m.graph);
        let seg = MetricGraph::uniform(Graph::from_edges(2, &[(0, 1), (1, 1)]).unwrap(), 1);
        let a = augment_smooth(&seg);
        assert_eq!(a.graph.num_edges(), 3);
        assert!(a.validate().is_valid());
        assert_eq!(augment_smooth(&a), a);
    }

    #[test]
    fn dilated_leaf_gets_two_rays() {
        let k = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let f = HarmonicMorphism::new(g, k.clone(), vec![0, 1], vec![0, 1], vec![2, 2], vec![2, 2])
            .unwrap();
        let base = MetricGraph::uniform(k, 1);
        let (g, aug) = augment_smooth_cover(&f, &base).unwrap();
        assert_eq!(aug.graph.num_edges(), 3);
        // two leaves of the base, each with two rays above
        assert_eq!(g.source().num_edges(), 5);
        assert_eq!(g.global_degree(), Some(2));
    }
}
