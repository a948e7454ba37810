//! Harmonic morphisms, double covers and towers.

use crate::error::{precondition, Error, Report, Result};
use crate::graph::{component_labels, genus, Graph, Point};

/// Structure-preserving map of half-edge graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    pub source: Graph,
    pub target: Graph,
    pub vmap: Vec<usize>,
    pub hmap: Vec<usize>,
}

impl GraphMorphism {
    pub fn validate(&self) -> Report {
        let (s, t) = (&self.source, &self.target);
        let mut report = Report::new();
        if self.vmap.len() != s.num_vertices() || self.hmap.len() != s.num_half_edges() {
            report.push("map sizes do not match the source graph");
            return report;
        }
        for (v, &w) in self.vmap.iter().enumerate() {
            if w >= t.num_vertices() {
                report.push(format!("v{v} maps to undefined vertex v{w}"));
            }
        }
        for (h, &k) in self.hmap.iter().enumerate() {
            if k >= t.num_half_edges() {
                report.push(format!("h{h} maps to undefined half-edge h{k}"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for h in 0..s.num_half_edges() {
            let k = self.hmap[h];
            if self.vmap[s.root(h)] != t.root(k) {
                report.push(format!("map does not commute with root at h{h}"));
            }
            if self.hmap[s.partner(h)] != t.partner(k) {
                report.push(format!("map does not commute with involution at h{h}"));
            }
        }
        report
    }
}

/// Graph morphism with positive local degrees satisfying the balancing condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicMorphism {
    morphism: GraphMorphism,
    vdeg: Vec<u64>,
    hdeg: Vec<u64>,
    vfiber: Vec<Vec<usize>>,
    hfiber: Vec<Vec<usize>>,
    global_degree: Option<u64>,
}

/// Outcome of harmonicity validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicReport {
    pub report: Report,
    pub global_degree: Option<u64>,
}

pub fn validate_harmonic(m: &GraphMorphism, vdeg: &[u64], hdeg: &[u64]) -> HarmonicReport {
    let mut report = m.validate();
    let (s, t) = (&m.source, &m.target);
    if vdeg.len() != s.num_vertices() || hdeg.len() != s.num_half_edges() {
        report.push("degree function sizes do not match the source graph");
    }
    if !report.is_valid() {
        return HarmonicReport {
            report,
            global_degree: None,
        };
    }
    for (v, &d) in vdeg.iter().enumerate() {
        if d == 0 {
            report.push(format!("degree of v{v} is not positive"));
        }
    }
    for h in 0..s.num_half_edges() {
        if hdeg[h] == 0 {
            report.push(format!("degree of h{h} is not positive"));
        }
        if hdeg[h] != hdeg[s.partner(h)] {
            report.push(format!("edge degree inconsistent at h{h}"));
        }
    }
    for v in 0..s.num_vertices() {
        let x = m.vmap[v];
        for &k in t.star(x) {
            let sum: u64 = s
                .star(v)
                .iter()
                .filter(|&&h| m.hmap[h] == k)
                .map(|&h| hdeg[h])
                .sum();
            if sum != vdeg[v] {
                report.push(format!(
                    "local harmonicity fails at (v{v}, h{k}): degree {} but half-edges sum to {sum}",
                    vdeg[v]
                ));
            }
        }
    }
    let mut global_degree = None;
    if report.is_valid() && t.num_vertices() > 0 {
        let labels = component_labels(t);
        let mut sums = vec![0u64; t.num_vertices() + t.num_half_edges()];
        for v in 0..s.num_vertices() {
            sums[m.vmap[v]] += vdeg[v];
        }
        for h in 0..s.num_half_edges() {
            sums[t.num_vertices() + m.hmap[h]] += hdeg[h];
        }
        let mut per_component: Vec<Option<u64>> = vec![None; t.num_vertices()];
        for p in t.points() {
            let (c, sum) = match p {
                Point::Vertex(v) => (labels[v], sums[v]),
                Point::HalfEdge(h) => (labels[t.root(h)], sums[t.num_vertices() + h]),
            };
            match per_component[c] {
                None => per_component[c] = Some(sum),
                Some(d) if d != sum => {
                    report.push(format!("fiber degree over {p} is {sum}, expected {d}"));
                }
                _ => {}
            }
        }
        if t.is_connected() && report.is_valid() {
            global_degree = per_component[0];
        }
    }
    HarmonicReport {
        report,
        global_degree,
    }
}

impl HarmonicMorphism {
    pub fn new(
        source: Graph,
        target: Graph,
        vmap: Vec<usize>,
        hmap: Vec<usize>,
        vdeg: Vec<u64>,
        hdeg: Vec<u64>,
    ) -> Result<Self> {
        let morphism = GraphMorphism {
            source,
            target,
            vmap,
            hmap,
        };
        let r = validate_harmonic(&morphism, &vdeg, &hdeg);
        if !r.report.is_valid() {
            return Err(Error::NotHarmonic(r.report));
        }
        let mut vfiber = vec![Vec::new(); morphism.target.num_vertices()];
        for (v, &w) in morphism.vmap.iter().enumerate() {
            vfiber[w].push(v);
        }
        let mut hfiber = vec![Vec::new(); morphism.target.num_half_edges()];
        for (h, &k) in morphism.hmap.iter().enumerate() {
            hfiber[k].push(h);
        }
        Ok(HarmonicMorphism {
            morphism,
            vdeg,
            hdeg,
            vfiber,
            hfiber,
            global_degree: r.global_degree,
        })
    }

    /// Builds a morphism from `Graph::from_edges` style data: source edge `k` maps to
    /// target edge `edges[k].0`, tail to tail when `edges[k].1`, with degree `edges[k].2`.
    pub fn from_edge_map(
        source: Graph,
        target: Graph,
        vmap: Vec<usize>,
        edges: &[(usize, bool, u64)],
        vdeg: Vec<u64>,
    ) -> Result<Self> {
        if edges.len() != source.num_edges() {
            return Err(Error::Dimension(format!(
                "{} edge images for {} edges",
                edges.len(),
                source.num_edges()
            )));
        }
        let mut hmap = vec![0; source.num_half_edges()];
        let mut hdeg = vec![0; source.num_half_edges()];
        for (k, &(t, same, d)) in edges.iter().enumerate() {
            if t >= target.num_edges() {
                return Err(Error::Dimension(format!(
                    "edge {k} maps to missing edge {t}"
                )));
            }
            let h = source.edge_tail_half(k);
            let th = target.edge_tail_half(t);
            let (a, b) = if same {
                (th, target.partner(th))
            } else {
                (target.partner(th), th)
            };
            hmap[h] = a;
            hmap[source.partner(h)] = b;
            hdeg[h] = d;
            hdeg[source.partner(h)] = d;
        }
        HarmonicMorphism::new(source, target, vmap, hmap, vdeg, hdeg)
    }

    pub fn identity(g: &Graph) -> Self {
        let nv = g.num_vertices();
        let nh = g.num_half_edges();
        HarmonicMorphism::new(
            g.clone(),
            g.clone(),
            (0..nv).collect(),
            (0..nh).collect(),
            vec![1; nv],
            vec![1; nh],
        )
        .expect("identity is harmonic")
    }

    pub fn source(&self) -> &Graph {
        &self.morphism.source
    }

    pub fn target(&self) -> &Graph {
        &self.morphism.target
    }

    pub fn morphism(&self) -> &GraphMorphism {
        &self.morphism
    }

    pub fn vmap(&self) -> &[usize] {
        &self.morphism.vmap
    }

    pub fn hmap(&self) -> &[usize] {
        &self.morphism.hmap
    }

    pub fn vdeg(&self) -> &[u64] {
        &self.vdeg
    }

    pub fn hdeg(&self) -> &[u64] {
        &self.hdeg
    }

    /// Degree of the map on a connected target.
    pub fn global_degree(&self) -> Option<u64> {
        self.global_degree
    }

    pub fn image(&self, p: Point) -> Point {
        match p {
            Point::Vertex(v) => Point::Vertex(self.morphism.vmap[v]),
            Point::HalfEdge(h) => Point::HalfEdge(self.morphism.hmap[h]),
        }
    }

    pub fn deg(&self, p: Point) -> u64 {
        match p {
            Point::Vertex(v) => self.vdeg[v],
            Point::HalfEdge(h) => self.hdeg[h],
        }
    }

    pub fn edge_degree(&self, e: usize) -> u64 {
        self.hdeg[self.source().edge_tail_half(e)]
    }

    /// Image edge of a source edge.
    pub fn edge_image(&self, e: usize) -> usize {
        let h = self.source().edge_tail_half(e);
        self.target().edge_of(self.morphism.hmap[h])
    }

    /// +1 when the map preserves the orientation of source edge `e`.
    pub fn edge_sign(&self, e: usize) -> i64 {
        let h = self.source().edge_tail_half(e);
        self.target().orientation(self.morphism.hmap[h])
    }

    /// Preimages of a target point, sorted by id.
    pub fn fiber(&self, p: Point) -> Vec<Point> {
        match p {
            Point::Vertex(v) => self.vfiber[v].iter().map(|&x| Point::Vertex(x)).collect(),
            Point::HalfEdge(h) => self.hfiber[h].iter().map(|&x| Point::HalfEdge(x)).collect(),
        }
    }

    pub fn vertex_fiber(&self, v: usize) -> &[usize] {
        &self.vfiber[v]
    }

    pub fn half_edge_fiber(&self, h: usize) -> &[usize] {
        &self.hfiber[h]
    }

    /// Degree profile over a target point, sorted descending.
    pub fn profile(&self, p: Point) -> Vec<u64> {
        let mut d: Vec<u64> = self.fiber(p).iter().map(|&q| self.deg(q)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// `g ∘ f`, with degrees multiplied pointwise.
pub fn compose_harmonic(f: &HarmonicMorphism, g: &HarmonicMorphism) -> Result<HarmonicMorphism> {
    if f.target() != g.source() {
        return Err(Error::NotComposable(
            "target of the first map differs from source of the second".into(),
        ));
    }
    let vmap = f.vmap().iter().map(|&w| g.vmap()[w]).collect();
    let hmap = f.hmap().iter().map(|&k| g.hmap()[k]).collect();
    let vdeg = (0..f.source().num_vertices())
        .map(|v| f.vdeg[v] * g.vdeg[f.vmap()[v]])
        .collect();
    let hdeg = (0..f.source().num_half_edges())
        .map(|h| f.hdeg[h] * g.hdeg[f.hmap()[h]])
        .collect();
    HarmonicMorphism::new(
        f.source().clone(),
        g.target().clone(),
        vmap,
        hmap,
        vdeg,
        hdeg,
    )
}

/// An involution of a graph, on vertices and half-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub v: Vec<usize>,
    pub h: Vec<usize>,
}

impl Involution {
    pub fn apply(&self, p: Point) -> Point {
        match p {
            Point::Vertex(x) => Point::Vertex(self.v[x]),
            Point::HalfEdge(x) => Point::HalfEdge(self.h[x]),
        }
    }

    /// Checks that this is an involutive automorphism of `g`.
    pub fn validate(&self, g: &Graph) -> Report {
        let mut r = Report::new();
        for (x, &y) in self.v.iter().enumerate() {
            if self.v[y] != x {
                r.push(format!("not an involution at v{x}"));
            }
        }
        for (h, &k) in self.h.iter().enumerate() {
            if self.h[k] != h {
                r.push(format!("not an involution at h{h}"));
            }
            if g.root(k) != self.v[g.root(h)] {
                r.push(format!("does not commute with root at h{h}"));
            }
            if g.partner(k) != self.h[g.partner(h)] {
                r.push(format!("does not commute with partner at h{h}"));
            }
        }
        r
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.v.iter().enumerate().all(|(x, &y)| x != y)
            && self.h.iter().enumerate().all(|(x, &y)| x != y)
    }
}

/// Harmonic morphism of degree 2 with its sheet involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    cover: HarmonicMorphism,
    involution: Involution,
}

impl DoubleCover {
    pub fn new(cover: HarmonicMorphism) -> Result<Self> {
        let t = cover.target();
        let mut iv = vec![usize::MAX; cover.source().num_vertices()];
        let mut ih = vec![usize::MAX; cover.source().num_half_edges()];
        for p in t.points() {
            let fib = cover.fiber(p);
            let degs: Vec<u64> = fib.iter().map(|&q| cover.deg(q)).collect();
            let pairs: Vec<(Point, Point)> = match degs.as_slice() {
                [2] => vec![(fib[0], fib[0])],
                [1, 1] => vec![(fib[0], fib[1]), (fib[1], fib[0])],
                _ => {
                    return Err(precondition(
                        "double cover",
                        format!("fiber over {p} has degrees {degs:?}"),
                    ))
                }
            };
            for (a, b) in pairs {
                match (a, b) {
                    (Point::Vertex(a), Point::Vertex(b)) => iv[a] = b,
                    (Point::HalfEdge(a), Point::HalfEdge(b)) => ih[a] = b,
                    _ => unreachable!(),
                }
            }
        }
        let involution = Involution { v: iv, h: ih };
        let r = involution.validate(cover.source());
        if !r.is_valid() {
            return Err(Error::Invariant(format!("sheet involution: {r}")));
        }
        Ok(DoubleCover { cover, involution })
    }

    pub fn cover(&self) -> &HarmonicMorphism {
        &self.cover
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    pub fn source(&self) -> &Graph {
        self.cover.source()
    }

    pub fn target(&self) -> &Graph {
        self.cover.target()
    }

    pub fn is_dilated_at(&self, p: Point) -> bool {
        self.cover.fiber(p).len() == 1
    }

    pub fn is_free(&self) -> bool {
        self.cover.vdeg().iter().all(|&d| d == 1)
    }

    /// Preimages of a target point: `[x̃]` if dilated, `[x̃⁺, x̃⁻]` by id order otherwise.
    pub fn lifts(&self, p: Point) -> Vec<Point> {
        self.cover.fiber(p)
    }
}

/// Double cover `Γ̃ → Γ` followed by a harmonic morphism `Γ → K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub pi: DoubleCover,
    pub f: HarmonicMorphism,
}

impl Tower {
    pub fn new(pi: DoubleCover, f: HarmonicMorphism) -> Result<Self> {
        if pi.target() != f.source() {
            return Err(Error::NotComposable(
                "target of the double cover differs from source of the base map".into(),
            ));
        }
        Ok(Tower { pi, f })
    }

    pub fn base(&self) -> &Graph {
        self.f.target()
    }

    pub fn middle(&self) -> &Graph {
        self.f.source()
    }

    pub fn top(&self) -> &Graph {
        self.pi.source()
    }

    pub fn degree(&self) -> Option<u64> {
        self.f.global_degree()
    }

    pub fn composite(&self) -> HarmonicMorphism {
        compose_harmonic(self.pi.cover(), &self.f).expect("tower levels compose")
    }
}

/// Dilation locus of a double cover and the derived invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationData {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub m_d: i64,
    pub n_d: i64,
    pub d: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

pub fn dilation_data(c: &DoubleCover) -> Result<DilationData> {
    if !c.source().is_connected() {
        return Err(Error::Disconnected("dilation data"));
    }
    let t = c.target();
    let g = genus(t)?;
    let vertices: Vec<usize> = (0..t.num_vertices())
        .filter(|&v| c.is_dilated_at(Point::Vertex(v)))
        .collect();
    let edges: Vec<usize> = (0..t.num_edges())
        .filter(|&e| c.is_dilated_at(Point::HalfEdge(t.edge_tail_half(e))))
        .collect();
    let (m_d, n_d) = (edges.len() as i64, vertices.len() as i64);
    if n_d == 0 {
        return Ok(DilationData {
            vertices,
            edges,
            m_d: 0,
            n_d: 0,
            d: 0,
            a: g - 1,
            b: 0,
            c: 0,
        });
    }
    let mut keep = vec![false; t.num_vertices()];
    for &v in &vertices {
        keep[v] = true;
    }
    // the dilation subgraph: dilated vertices and dilated edges only
    let index: Vec<Option<usize>> = {
        let mut k = 0;
        keep.iter()
            .map(|&b| {
                b.then(|| {
                    k += 1;
                    k - 1
                })
            })
            .collect()
    };
    let sub_edges: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let (u, w) = t.edge_ends(e);
            (index[u].unwrap(), index[w].unwrap())
        })
        .collect();
    let sub = Graph::from_edges(vertices.len(), &sub_edges)?;
    let d = crate::graph::connected_components(&sub).len() as i64;
    let data = DilationData {
        vertices,
        edges,
        m_d,
        n_d,
        d,
        a: g - m_d + n_d - d,
        b: d - 1,
        c: m_d - n_d + d,
    };
    let gs = genus(c.source())?;
    if data.a + data.b != gs - g {
        return Err(Error::Invariant(format!(
            "A + B = {} but g(source) - g(target) = {}",
            data.a + data.b,
            gs - g
        )));
    }
    Ok(data)
}

/// Result of contracting a target edge.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub morphism: HarmonicMorphism,
    /// Old source vertex to new source vertex.
    pub source_vertices: Vec<usize>,
    /// Old source half-edge to new one, `None` when contracted.
    pub source_half_edges: Vec<Option<usize>>,
    pub target_vertices: Vec<usize>,
    pub target_half_edges: Vec<Option<usize>>,
}

/// Contracts target edge `e`; each component of the preimage of its closure becomes one vertex.
pub fn contract_edge(f: &HarmonicMorphism, e: usize) -> Result<Contraction> {
    let t = f.target();
    if e >= t.num_edges() {
        return Err(Error::NoSuchEdge(e));
    }
    let (u, w) = t.edge_ends(e);
    let eh = t.edge_tail_half(e);
    let ehs = [eh, t.partner(eh)];
    // target: merge u and w into the position of min(u, w); drop the edge
    let (tv, tnv) = merge_vertices(t.num_vertices(), &[vec![u, w]]);
    let (tg, th) = rebuild(t, &tv, tnv, |h| ehs.contains(&h))?;

    let s = f.source();
    let in_closure = |v: usize| f.vmap()[v] == u || f.vmap()[v] == w;
    let over_e = |h: usize| ehs.contains(&f.hmap()[h]);
    // components of the preimage of {u, w, e}
    let mut parent: Vec<usize> = (0..s.num_vertices()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for h in 0..s.num_half_edges() {
        if over_e(h) {
            let a = find(&mut parent, s.root(h));
            let b = find(&mut parent, s.root(s.partner(h)));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; s.num_vertices()];
    for v in 0..s.num_vertices() {
        if in_closure(v) {
            let r = find(&mut parent, v);
            if group_of[r] == usize::MAX {
                group_of[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[group_of[r]].push(v);
        }
    }
    let (sv, snv) = merge_vertices(s.num_vertices(), &groups);
    let (sg, sh) = rebuild(s, &sv, snv, over_e)?;

    let mut vmap = vec![0; snv];
    let mut vdeg = vec![0; snv];
    for v in 0..s.num_vertices() {
        vmap[sv[v]] = tv[f.vmap()[v]];
    }
    for v in 0..s.num_vertices() {
        if !in_closure(v) {
            vdeg[sv[v]] = f.vdeg()[v];
        }
    }
    for g in &groups {
        // degree of the restriction: fiber sum over u within the component
        let d: u64 = g
            .iter()
            .filter(|&&v| f.vmap()[v] == u)
            .map(|&v| f.vdeg()[v])
            .sum();
        vdeg[sv[g[0]]] = d;
    }
    let mut hmap = vec![0; sg.num_half_edges()];
    let mut hdeg = vec![0; sg.num_half_edges()];
    for h in 0..s.num_half_edges() {
        if let Some(n) = sh[h] {
            hmap[n] = th[f.hmap()[h]].expect("non-contracted image");
            hdeg[n] = f.hdeg()[h];
        }
    }
    let morphism = HarmonicMorphism::new(sg, tg, vmap, hmap, vdeg, hdeg)?;
    Ok(Contraction {
        morphism,
        source_vertices: sv,
        source_half_edges: sh,
        target_vertices: tv,
        target_half_edges: th,
    })
}

/// Renumbers vertices so each group collapses to one vertex; order by smallest member.
fn merge_vertices(n: usize, groups: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let mut rep: Vec<usize> = (0..n).collect();
    for g in groups {
        let m = *g.iter().min().unwrap();
        for &v in g {
            rep[v] = m;
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if rep[v] == v {
            new_id[v] = count;
            count += 1;
        }
    }
    ((0..n).map(|v| new_id[rep[v]]).collect(), count)
}

fn rebuild(
    g: &Graph,
    vmap: &[usize],
    nv: usize,
    drop: impl Fn(usize) -> bool,
) -> Result<(Graph, Vec<Option<usize>>)> {
    let mut hmap = vec![None; g.num_half_edges()];
    let mut count = 0;
    for (h, slot) in hmap.iter_mut().enumerate() {
        if !drop(h) {
            *slot = Some(count);
            count += 1;
        }
    }
    let mut root = vec![0; count];
    let mut partner = vec![0; count];
    for h in 0..g.num_half_edges() {
        if let Some(n) = hmap[h] {
            root[n] = vmap[g.root(h)];
            partner[n] = hmap[g.partner(h)].expect("partner kept");
        }
    }
    Ok((Graph::new(nv, root, partner)?, hmap))
}

/// Contracts base edge `e` through both levels of a tower.
pub fn contract_tower(t: &Tower, e: usize) -> Result<Tower> {
    let fc = contract_edge(&t.f, e)?;
    let total = contract_edge(&t.composite(), e)?;
    let top = total.morphism.source().clone();
    let mid = fc.morphism.source().clone();
    let pi = t.pi.cover();
    let mut vmap = vec![usize::MAX; top.num_vertices()];
    for v in 0..t.top().num_vertices() {
        vmap[total.source_vertices[v]] = fc.source_vertices[pi.vmap()[v]];
    }
    let mut hmap = vec![0; top.num_half_edges()];
    let mut hdeg = vec![0; top.num_half_edges()];
    for h in 0..t.top().num_half_edges() {
        if let Some(n) = total.source_half_edges[h] {
            hmap[n] = fc.source_half_edges[pi.hmap()[h]].expect("kept");
            hdeg[n] = pi.hdeg()[h];
        }
    }
    let vdeg = (0..top.num_vertices())
        .map(|v| total.morphism.vdeg()[v] / fc.morphism.vdeg()[vmap[v]])
        .collect();
    let cover = HarmonicMorphism::new(top, mid, vmap, hmap, vdeg, hdeg)?;
    Tower::new(DoubleCover::new(cover)?, fc.morphism)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Connected free double cover of a loop: two vertices joined by two edges.
    pub fn loop_connected() -> DoubleCover {
        let k = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let g = Graph::new(2, vec![0, 1, 1, 0], vec![1, 0, 3, 2]).unwrap();
        let f = HarmonicMorphism::new(g, k, vec![0, 0], vec![0, 1, 0, 1], vec![1; 2], vec![1; 4])
            .unwrap();
        DoubleCover::new(f).unwrap()
    }

    pub fn loop_split() -> DoubleCover {
        let k = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let g = Graph::from_edges(2, &[(0, 0), (1, 1)]).unwrap();
        let f = HarmonicMorphism::new(g, k, vec![0, 0], vec![0, 1, 0, 1], vec![1; 2], vec![1; 4])
            .unwrap();
        DoubleCover::new(f).unwrap()
    }

    #[test]
    fn identity_is_degree_one() {
        let g = Graph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let id = HarmonicMorphism::identity(&g);
        assert_eq!(id.global_degree(), Some(1));
    }

    #[test]
    fn harmonicity_violation_reported() {
        // v0 of degree 2 with one half-edge of degree 1 over the target edge
        let k = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g = Graph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        let m = GraphMorphism {
            source: g,
            target: k,
            vmap: vec![0, 1, 0],
            hmap: vec![0, 1, 0, 1],
        };
        let r = validate_harmonic(&m, &[2, 2, 1], &[1, 1, 1, 1]);
        assert!(r.report.entries.iter().any(|e| e.contains("(v0, h0)")));
    }

    #[test]
    fn type_b_fiber_map() {
        // over a single edge: one preimage of degree 1, one of degree 2
        let k = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let f = HarmonicMorphism::new(
            g,
            k,
            vec![0, 1, 0, 1],
            vec![0, 1, 0, 1],
            vec![1, 1, 2, 2],
            vec![1, 1, 2, 2],
        )
        .unwrap();
        assert_eq!(f.global_degree(), Some(3));
        assert_eq!(f.profile(Point::Vertex(0)), vec![2, 1]);
    }

    #[test]
    fn composition_multiplies() {
        let c = loop_connected();
        let id = HarmonicMorphism::identity(c.target());
        let comp = compose_harmonic(c.cover(), &id).unwrap();
        assert_eq!(&comp, c.cover());
        assert!(compose_harmonic(&id, c.cover()).is_err());
    }

    #[test]
    fn sheet_involution() {
        let c = loop_connected();
        assert_eq!(c.involution().v, vec![1, 0]);
        assert!(c.is_free());
        assert!(c.involution().is_fixed_point_free());
    }

    #[test]
    fn dilation_single_vertex_on_genus_one() {
        // base: loop at v0; source: one dilated vertex with two loops
        let k = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let g = Graph::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        let c = DoubleCover::new(
            HarmonicMorphism::new(g, k, vec![0], vec![0, 1, 0, 1], vec![2], vec![1; 4]).unwrap(),
        )
        .unwrap();
        let d = dilation_data(&c).unwrap();
        assert_eq!((d.m_d, d.n_d, d.d), (0, 1, 1));
        assert_eq!((d.a, d.b, d.c), (1, 0, 0));
    }

    #[test]
    fn contract_free_edge() {
        let k = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let f = HarmonicMorphism::new(
            g,
            k,
            vec![0, 1, 0, 1],
            vec![0, 1, 0, 1],
            vec![1; 4],
            vec![1; 4],
        )
        .unwrap();
        let c = contract_edge(&f, 0).unwrap();
        assert_eq!(c.morphism.source().num_vertices(), 2);
        assert_eq!(c.morphism.vdeg(), &[1, 1]);
        assert!(contract_edge(&f, 1).is_err());
    }

    #[test]
    fn contract_dilated_edge() {
        let k = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let f =
            HarmonicMorphism::new(g, k, vec![0, 1], vec![0, 1], vec![2, 2], vec![2, 2]).unwrap();
        let c = contract_edge(&f, 0).unwrap();
        assert_eq!(c.morphism.vdeg(), &[2]);
        assert_eq!(c.morphism.global_degree(), Some(2));
    }
}
