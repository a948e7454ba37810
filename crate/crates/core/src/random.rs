//! Seeded random instances. All randomness flows from one `ChaCha8Rng`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fixtures::double_cover;
use crate::graph::{genus, Graph, Point};
use crate::metric::{ExtLength, MetricGraph};
use crate::morphism::{DoubleCover, HarmonicMorphism, Tower};
use crate::ngonal::{bigonal_types, BigonalType};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree; vertex `i > 0` attaches to a uniformly chosen earlier vertex.
pub fn random_tree(rng: &mut ChaCha8Rng, nv: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..nv).map(|i| (rng.gen_range(0..i), i)).collect();
    Graph::from_edges(nv, &edges).expect("tree")
}

/// Random connected loopless multigraph: a random tree plus `extra` edges.
pub fn random_graph(rng: &mut ChaCha8Rng, nv: usize, extra: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..nv).map(|i| (rng.gen_range(0..i), i)).collect();
    if nv > 1 {
        for _ in 0..extra {
            let u = rng.gen_range(0..nv);
            let mut v = rng.gen_range(0..nv - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(nv, &edges).expect("multigraph")
}

pub fn random_metric(rng: &mut ChaCha8Rng, g: &Graph, max_length: i64) -> MetricGraph {
    let lengths = (0..g.num_edges())
        .map(|_| {
            let q = if rng.gen_bool(0.25) { 2 } else { 1 };
            ExtLength::finite(rng.gen_range(1..=max_length.max(1)), q)
        })
        .collect();
    MetricGraph::new(g.clone(), lengths).expect("positive lengths")
}

/// Splits `n` into a random composition; each of the `n - 1` gaps is cut with probability `p`.
fn composition(rng: &mut ChaCha8Rng, n: u64, p: f64) -> Vec<u64> {
    let mut parts = vec![1];
    for _ in 1..n {
        if rng.gen_bool(p) {
            parts.push(1);
        } else {
            *parts.last_mut().unwrap() += 1;
        }
    }
    parts
}

/// Random degree `n` harmonic morphism onto `base` (built with `Graph::from_edges`).
/// Each base vertex gets a partition of the `n` sheets; over an edge the sheets
/// are matched by a random permutation and matched bundles may split into parallel edges.
pub fn random_harmonic(
    rng: &mut ChaCha8Rng,
    base: &Graph,
    n: u64,
    cut: f64,
) -> Result<HarmonicMorphism> {
    let mut vmap = Vec::new();
    let mut vdeg = Vec::new();
    // owner[x][slot] = source vertex containing that sheet over x
    let mut owner = Vec::with_capacity(base.num_vertices());
    for x in 0..base.num_vertices() {
        let mut slots = Vec::new();
        for d in composition(rng, n, cut) {
            let v = vmap.len();
            vmap.push(x);
            vdeg.push(d);
            slots.extend(std::iter::repeat_n(v, d as usize));
        }
        owner.push(slots);
    }
    let mut edges = Vec::new();
    let mut images = Vec::new();
    for e in 0..base.num_edges() {
        let (x, y) = base.edge_ends(e);
        let mut perm: Vec<usize> = (0..n as usize).collect();
        perm.shuffle(rng);
        let mut bundles: Vec<((usize, usize), u64)> = Vec::new();
        for (i, &j) in perm.iter().enumerate() {
            let key = (owner[x][i], owner[y][j]);
            match bundles.iter_mut().find(|(k, _)| *k == key) {
                Some((_, w)) => *w += 1,
                None => bundles.push((key, 1)),
            }
        }
        bundles.sort();
        for ((u, v), w) in bundles {
            for d in composition(rng, w, cut) {
                edges.push((u, v));
                images.push((e, true, d));
            }
        }
    }
    let source = Graph::from_edges(vmap.len(), &edges)?;
    HarmonicMorphism::from_edge_map(source, base.clone(), vmap, &images, vdeg)
}

/// Random double cover of `g`: vertices dilate with probability `p`, edges between
/// dilated vertices with probability `p`, free edges cross sheets with probability 1/2.
pub fn random_double_cover(rng: &mut ChaCha8Rng, g: &Graph, p: f64) -> Result<DoubleCover> {
    let dv: Vec<bool> = (0..g.num_vertices()).map(|_| rng.gen_bool(p)).collect();
    let de: Vec<bool> = (0..g.num_edges())
        .map(|k| {
            let (u, v) = g.edge_ends(k);
            let flip = rng.gen_bool(p);
            dv[u] && dv[v] && flip
        })
        .collect();
    let crossing: Vec<bool> = (0..g.num_edges()).map(|_| rng.gen_bool(0.5)).collect();
    double_cover(g, &dv, &de, &crossing)
}

/// Profiles allowed over a point of a generic tetragonal cover.
pub fn is_generic_tetragonal_profile(profile: &[u64]) -> bool {
    let mut p = profile.to_vec();
    p.sort_unstable();
    !(p == [2, 2] || p == [4])
}

#[derive(Clone, Debug)]
pub struct TowerParams {
    /// Number of vertices of the base tree.
    pub tree_size: usize,
    pub n: u64,
    /// Probability that a vertex or an edge of `Γ` dilates under `π`.
    pub dilation: f64,
    /// Probability of cutting a fiber into more points.
    pub cut: f64,
    pub max_length: i64,
    pub connected_top: bool,
    /// No type V point for `n = 2`; no `(2,2)` or `(4)` profile for `n = 4`.
    pub generic: bool,
    pub require_dilation: bool,
    pub min_genus: Option<i64>,
    pub max_genus: Option<i64>,
    pub budget: usize,
}

impl Default for TowerParams {
    fn default() -> Self {
        TowerParams {
            tree_size: 3,
            n: 2,
            dilation: 0.3,
            cut: 0.5,
            max_length: 5,
            connected_top: true,
            generic: true,
            require_dilation: false,
            min_genus: None,
            max_genus: None,
            budget: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomTower {
    pub tower: Tower,
    pub base: MetricGraph,
}

/// First constraint the tower fails, if any.
fn violation(t: &Tower, p: &TowerParams) -> Result<Option<&'static str>> {
    if !t.middle().is_connected() {
        return Ok(Some("Γ connected"));
    }
    if p.connected_top && !t.top().is_connected() {
        return Ok(Some("Γ̃ connected"));
    }
    if p.require_dilation && t.pi.is_free() {
        return Ok(Some("π dilated"));
    }
    let g = genus(t.middle())?;
    if p.min_genus.is_some_and(|m| g < m) || p.max_genus.is_some_and(|m| g > m) {
        return Ok(Some("genus bounds"));
    }
    if p.generic {
        match p.n {
            2 if bigonal_types(t)?.contains(&BigonalType::V) => return Ok(Some("no type V")),
            4 if !t
                .base()
                .points()
                .all(|x| is_generic_tetragonal_profile(&t.f.profile(x))) =>
            {
                return Ok(Some("generic tetragonal"))
            }
            _ => {}
        }
    }
    Ok(None)
}

pub fn random_tower(seed: u64, p: &TowerParams) -> Result<RandomTower> {
    if !(2..=4).contains(&p.n) {
        return Err(Error::Precondition {
            hypothesis: "n ∈ {2,3,4}",
            detail: format!("n = {}", p.n),
        });
    }
    let mut rng = rng(seed);
    let mut last = "none";
    for _ in 0..p.budget {
        let k = random_tree(&mut rng, p.tree_size.max(1));
        let f = random_harmonic(&mut rng, &k, p.n, p.cut)?;
        let pi = random_double_cover(&mut rng, f.source(), p.dilation)?;
        let t = Tower::new(pi, f)?;
        match violation(&t, p)? {
            Some(v) => last = v,
            None => {
                let base = random_metric(&mut rng, &k, p.max_length);
                return Ok(RandomTower { tower: t, base });
            }
        }
    }
    Err(Error::Budget(format!(
        "{} attempts, last failing constraint: {last}",
        p.budget
    )))
}

/// Random connected degree `n` cover of a tree whose fibers all satisfy `allowed`.
pub fn random_cover(
    seed: u64,
    tree_size: usize,
    n: u64,
    allowed: impl Fn(&[u64]) -> bool,
    budget: usize,
) -> Result<HarmonicMorphism> {
    let mut rng = rng(seed);
    for _ in 0..budget {
        let k = random_tree(&mut rng, tree_size.max(1));
        let f = random_harmonic(&mut rng, &k, n, 0.5)?;
        if f.source().is_connected() && k.points().all(|x| allowed(&f.profile(x))) {
            return Ok(f);
        }
    }
    Err(Error::Budget(format!(
        "{budget} attempts for a cover with allowed profiles"
    )))
}

/// Random connected double cover of a random connected graph.
pub fn random_connected_cover(
    seed: u64,
    nv: usize,
    extra: usize,
    dilation: f64,
    budget: usize,
) -> Result<DoubleCover> {
    let mut rng = rng(seed);
    for _ in 0..budget {
        let g = random_graph(&mut rng, nv, extra);
        let c = random_double_cover(&mut rng, &g, dilation)?;
        if c.source().is_connected() {
            return Ok(c);
        }
    }
    Err(Error::Budget(format!(
        "{budget} attempts for a connected double cover"
    )))
}

/// The base point with a non-generic tetragonal profile, if any.
pub fn non_generic_point(f: &HarmonicMorphism) -> Option<Point> {
    f.target()
        .points()
        .find(|&x| !is_generic_tetragonal_profile(&f.profile(x)))
}
