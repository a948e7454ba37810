use std::collections::HashMap;

use super::multisection::{
    induce_multisection, multisection_degree, multisection_sign, multisections, FiberDatum,
    Multisection, Part, Refinement, Status,
};
use crate::error::{precondition, Error, Result};
use crate::graph::{component_labels, Graph, Point};
use crate::morphism::{DoubleCover, HarmonicMorphism, Involution, Tower};

/// The fiber of a tower over a base point.
pub fn fiber_datum(t: &Tower, x: Point) -> FiberDatum {
    let parts =
        t.f.fiber(x)
            .into_iter()
            .map(|y| {
                let lifts = t.pi.lifts(y);
                Part {
                    id: y,
                    d: t.f.deg(y),
                    status: if lifts.len() == 1 {
                        Status::Dilated
                    } else {
                        Status::Free
                    },
                    lifts,
                }
            })
            .collect();
    FiberDatum { point: x, parts }
}

/// Output of the n-gonal construction.
#[derive(Clone, Debug)]
pub struct NGonal {
    pub n: u64,
    /// `P̃ → K`
    pub ptilde: HarmonicMorphism,
    /// Sign exchange on `P̃`.
    pub iota: Involution,
    /// Orientation double cover `K̃ → K`.
    pub ktilde: DoubleCover,
    /// `P̃ → K̃`
    pub q: HarmonicMorphism,
    /// Fiber datum over each base vertex, then each base half-edge.
    pub fibers: Vec<FiberDatum>,
    /// Multisection of each `P̃` vertex.
    pub vertex_sections: Vec<Multisection>,
    /// Multisection of each `P̃` half-edge.
    pub half_edge_sections: Vec<Multisection>,
}

impl NGonal {
    fn fiber_index(&self, x: Point) -> usize {
        match x {
            Point::Vertex(v) => v,
            Point::HalfEdge(h) => self.ptilde.target().num_vertices() + h,
        }
    }

    /// The multisection of a `P̃` point written over the lifts in `Γ̃`.
    pub fn provenance(&self, p: Point) -> String {
        let x = self.ptilde.image(p);
        let fd = &self.fibers[self.fiber_index(x)];
        let ms = match p {
            Point::Vertex(v) => &self.vertex_sections[v],
            Point::HalfEdge(h) => &self.half_edge_sections[h],
        };
        ms.describe(fd)
    }
}

fn refinement(
    fine: &FiberDatum,
    coarse: &FiberDatum,
    step: impl Fn(Point) -> Point,
    step_top: impl Fn(Point) -> Point,
) -> Refinement {
    let map = fine
        .parts
        .iter()
        .map(|p| {
            let target = step(p.id);
            let j = coarse
                .parts
                .iter()
                .position(|c| c.id == target)
                .expect("image part lies over the image point");
            let same = match (p.status, coarse.parts[j].status) {
                (Status::Free, Status::Free) => step_top(p.lifts[0]) == coarse.parts[j].lifts[0],
                _ => true,
            };
            (j, same)
        })
        .collect();
    Refinement { map }
}

fn root_of(g: &Graph, p: Point) -> Point {
    match p {
        Point::HalfEdge(h) => Point::Vertex(g.root(h)),
        v => v,
    }
}

fn partner_of(g: &Graph, p: Point) -> Point {
    match p {
        Point::HalfEdge(h) => Point::HalfEdge(g.partner(h)),
        v => v,
    }
}

/// The n-gonal construction of a tower with `deg f = n`.
pub fn ngonal_construct(t: &Tower, n: u64) -> Result<NGonal> {
    if !(2..=4).contains(&n) {
        return Err(precondition("n in {2, 3, 4}", format!("n = {n}")));
    }
    let k = t.base();
    if !k.is_connected() {
        return Err(Error::Disconnected("the n-gonal construction"));
    }
    if t.f.global_degree() != Some(n) {
        return Err(precondition(
            "deg f = n",
            format!("deg f = {:?}, n = {n}", t.f.global_degree()),
        ));
    }
    let g = t.middle();
    let gt = t.top();
    let nv = k.num_vertices();
    let fibers: Vec<FiberDatum> = k.points().map(|x| fiber_datum(t, x)).collect();
    let fiber = |x: Point| -> &FiberDatum {
        match x {
            Point::Vertex(v) => &fibers[v],
            Point::HalfEdge(h) => &fibers[nv + h],
        }
    };

    let mut vertex_sections = Vec::new();
    let mut vbase = Vec::new();
    let mut vindex: HashMap<(usize, Multisection), usize> = HashMap::new();
    for v in 0..nv {
        for ms in multisections(&fibers[v]) {
            vindex.insert((v, ms.clone()), vertex_sections.len());
            vertex_sections.push(ms);
            vbase.push(v);
        }
    }
    let mut half_edge_sections = Vec::new();
    let mut hbase = Vec::new();
    let mut hindex: HashMap<(usize, Multisection), usize> = HashMap::new();
    for h in 0..k.num_half_edges() {
        for ms in multisections(&fibers[nv + h]) {
            hindex.insert((h, ms.clone()), half_edge_sections.len());
            half_edge_sections.push(ms);
            hbase.push(h);
        }
    }

    // root and partner maps by inducing multisections
    let mut root = Vec::with_capacity(hbase.len());
    let mut partner = Vec::with_capacity(hbase.len());
    for (i, ms) in half_edge_sections.iter().enumerate() {
        let h = hbase[i];
        let fine = fiber(Point::HalfEdge(h));
        let v = k.root(h);
        let coarse = fiber(Point::Vertex(v));
        let r = refinement(fine, coarse, |p| root_of(g, p), |p| root_of(gt, p));
        let rm = induce_multisection(fine, coarse, &r, ms)?;
        root.push(vindex[&(v, rm)]);

        let hb = k.partner(h);
        let coarse = fiber(Point::HalfEdge(hb));
        let r = refinement(fine, coarse, |p| partner_of(g, p), |p| partner_of(gt, p));
        let pm = induce_multisection(fine, coarse, &r, ms)?;
        partner.push(hindex[&(hb, pm)]);
    }
    let pt = Graph::new(vertex_sections.len(), root, partner)?;
    let vdeg: Vec<u64> = vertex_sections
        .iter()
        .zip(&vbase)
        .map(|(ms, &v)| multisection_degree(&fibers[v], ms))
        .collect();
    let hdeg: Vec<u64> = half_edge_sections
        .iter()
        .zip(&hbase)
        .map(|(ms, &h)| multisection_degree(&fibers[nv + h], ms))
        .collect();
    let ptilde = HarmonicMorphism::new(
        pt.clone(),
        k.clone(),
        vbase.clone(),
        hbase.clone(),
        vdeg.clone(),
        hdeg.clone(),
    )?;

    let iota = Involution {
        v: vertex_sections
            .iter()
            .zip(&vbase)
            .map(|(ms, &v)| vindex[&(v, ms.swapped(&fibers[v]))])
            .collect(),
        h: half_edge_sections
            .iter()
            .zip(&hbase)
            .map(|(ms, &h)| hindex[&(h, ms.swapped(&fibers[nv + h]))])
            .collect(),
    };
    let r = iota.validate(&pt);
    if !r.is_valid() {
        return Err(Error::Invariant(format!("sign involution: {r}")));
    }

    // orientation double cover: P̃ points grouped by sign, dilated fibers collapse
    let sign_class = |fd: &FiberDatum, ms: &Multisection| -> Option<usize> {
        multisection_sign(fd, ms)
            .ok()
            .map(|s| if s > 0 { 0 } else { 1 })
    };
    let mut kv_first = Vec::with_capacity(nv);
    let mut count = 0;
    for fd in &fibers[..nv] {
        kv_first.push(count);
        count += if fd.is_free() { 2 } else { 1 };
    }
    let kt_nv = count;
    let mut kh_first = Vec::with_capacity(k.num_half_edges());
    let mut count = 0;
    for fd in &fibers[nv..] {
        kh_first.push(count);
        count += if fd.is_free() { 2 } else { 1 };
    }
    let kt_nh = count;
    let qv: Vec<usize> = (0..pt.num_vertices())
        .map(|p| {
            let v = vbase[p];
            kv_first[v] + sign_class(&fibers[v], &vertex_sections[p]).unwrap_or(0)
        })
        .collect();
    let qh: Vec<usize> = (0..pt.num_half_edges())
        .map(|p| {
            let h = hbase[p];
            kh_first[h] + sign_class(&fibers[nv + h], &half_edge_sections[p]).unwrap_or(0)
        })
        .collect();
    let mut kt_root = vec![usize::MAX; kt_nh];
    let mut kt_partner = vec![usize::MAX; kt_nh];
    for p in 0..pt.num_half_edges() {
        let c = qh[p];
        let r = qv[pt.root(p)];
        let s = qh[pt.partner(p)];
        if (kt_root[c] != usize::MAX && kt_root[c] != r)
            || (kt_partner[c] != usize::MAX && kt_partner[c] != s)
        {
            return Err(Error::Invariant(
                "sign classes are not compatible with the root or partner maps".into(),
            ));
        }
        kt_root[c] = r;
        kt_partner[c] = s;
    }
    let kt = Graph::new(kt_nv, kt_root, kt_partner)?;
    let mut kt_vmap = vec![0; kt_nv];
    let mut kt_vdeg = vec![0; kt_nv];
    for v in 0..nv {
        let free = fibers[v].is_free();
        for s in 0..if free { 2 } else { 1 } {
            kt_vmap[kv_first[v] + s] = v;
            kt_vdeg[kv_first[v] + s] = if free { 1 } else { 2 };
        }
    }
    let mut kt_hmap = vec![0; kt_nh];
    let mut kt_hdeg = vec![0; kt_nh];
    for h in 0..k.num_half_edges() {
        let free = fibers[nv + h].is_free();
        for s in 0..if free { 2 } else { 1 } {
            kt_hmap[kh_first[h] + s] = h;
            kt_hdeg[kh_first[h] + s] = if free { 1 } else { 2 };
        }
    }
    let ktilde = DoubleCover::new(HarmonicMorphism::new(
        kt.clone(),
        k.clone(),
        kt_vmap,
        kt_hmap,
        kt_vdeg.clone(),
        kt_hdeg.clone(),
    )?)?;
    let q_vdeg = (0..pt.num_vertices())
        .map(|p| vdeg[p] / kt_vdeg[qv[p]])
        .collect();
    let q_hdeg = (0..pt.num_half_edges())
        .map(|p| hdeg[p] / kt_hdeg[qh[p]])
        .collect();
    let q = HarmonicMorphism::new(pt, kt, qv, qh, q_vdeg, q_hdeg)?;
    let expect = 1u64 << n;
    // K̃ may be disconnected, so q is checked fiberwise
    let q_ok = q
        .target()
        .points()
        .all(|y| q.fiber(y).iter().map(|&p| q.deg(p)).sum::<u64>() == expect / 2);
    if ptilde.global_degree() != Some(expect) || !q_ok {
        return Err(Error::Invariant(format!(
            "constructed degree {:?}, q fibers not of degree {}",
            ptilde.global_degree(),
            expect / 2
        )));
    }
    Ok(NGonal {
        n,
        ptilde,
        iota,
        ktilde,
        q,
        fibers,
        vertex_sections,
        half_edge_sections,
    })
}

/// Quotient of a cover by an involution of its source commuting with it.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// `P → K`
    pub map: HarmonicMorphism,
    /// `P̃ → P`
    pub quotient: HarmonicMorphism,
}

pub fn involution_quotient(f: &HarmonicMorphism, iota: &Involution) -> Result<Quotient> {
    let s = f.source();
    let r = iota.validate(s);
    if !r.is_valid() {
        return Err(precondition("involution", r.to_string()));
    }
    for p in s.points() {
        let q = iota.apply(p);
        if f.image(p) != f.image(q) || f.deg(p) != f.deg(q) {
            return Err(precondition(
                "involution over the base",
                format!("fails at {p}"),
            ));
        }
    }
    let mut vclass = vec![0; s.num_vertices()];
    let mut vrep = Vec::new();
    for v in 0..s.num_vertices() {
        let w = iota.v[v];
        if w >= v {
            vclass[v] = vrep.len();
            vrep.push(v);
        } else {
            vclass[v] = vclass[w];
        }
    }
    let mut hclass = vec![0; s.num_half_edges()];
    let mut hrep = Vec::new();
    for h in 0..s.num_half_edges() {
        let k = iota.h[h];
        if k >= h {
            hclass[h] = hrep.len();
            hrep.push(h);
        } else {
            hclass[h] = hclass[k];
        }
    }
    let root = hrep.iter().map(|&h| vclass[s.root(h)]).collect();
    let partner = hrep.iter().map(|&h| hclass[s.partner(h)]).collect();
    let p = Graph::new(vrep.len(), root, partner)?;
    let fixed_v = |v: usize| iota.v[v] == v;
    let fixed_h = |h: usize| iota.h[h] == h;
    let map = HarmonicMorphism::new(
        p.clone(),
        f.target().clone(),
        vrep.iter().map(|&v| f.vmap()[v]).collect(),
        hrep.iter().map(|&h| f.hmap()[h]).collect(),
        vrep.iter()
            .map(|&v| f.vdeg()[v] / if fixed_v(v) { 2 } else { 1 })
            .collect(),
        hrep.iter()
            .map(|&h| f.hdeg()[h] / if fixed_h(h) { 2 } else { 1 })
            .collect(),
    )?;
    let quotient = HarmonicMorphism::new(
        s.clone(),
        p,
        vclass,
        hclass,
        (0..s.num_vertices())
            .map(|v| if fixed_v(v) { 2 } else { 1 })
            .collect(),
        (0..s.num_half_edges())
            .map(|h| if fixed_h(h) { 2 } else { 1 })
            .collect(),
    )?;
    Ok(Quotient { map, quotient })
}

/// Restriction of a cover to a union of source components.
pub struct Restriction {
    pub map: HarmonicMorphism,
    pub vertices: Vec<Option<usize>>,
    pub half_edges: Vec<Option<usize>>,
}

pub fn restrict_source(f: &HarmonicMorphism, keep: &[bool]) -> Result<Restriction> {
    let (g, vnew, hnew) = f.source().induced(keep)?;
    let mut vmap = vec![0; g.num_vertices()];
    let mut vdeg = vec![0; g.num_vertices()];
    for (v, n) in vnew.iter().enumerate() {
        if let Some(n) = *n {
            vmap[n] = f.vmap()[v];
            vdeg[n] = f.vdeg()[v];
        }
    }
    let mut hmap = vec![0; g.num_half_edges()];
    let mut hdeg = vec![0; g.num_half_edges()];
    for (h, n) in hnew.iter().enumerate() {
        if let Some(n) = *n {
            hmap[n] = f.hmap()[h];
            hdeg[n] = f.hdeg()[h];
        }
    }
    let map = HarmonicMorphism::new(g, f.target().clone(), vmap, hmap, vdeg, hdeg)?;
    Ok(Restriction {
        map,
        vertices: vnew,
        half_edges: hnew,
    })
}

impl Restriction {
    /// Transports an involution that preserves the kept part.
    pub fn involution(&self, iota: &Involution) -> Result<Involution> {
        let mut v = vec![0; self.map.source().num_vertices()];
        for (old, n) in self.vertices.iter().enumerate() {
            if let Some(n) = *n {
                v[n] = self.vertices[iota.v[old]]
                    .ok_or_else(|| Error::Invariant("involution leaves the restriction".into()))?;
            }
        }
        let mut h = vec![0; self.map.source().num_half_edges()];
        for (old, n) in self.half_edges.iter().enumerate() {
            if let Some(n) = *n {
                h[n] = self.half_edges[iota.h[old]]
                    .ok_or_else(|| Error::Invariant("involution leaves the restriction".into()))?;
            }
        }
        Ok(Involution { v, h })
    }
}

/// The components of `K̃` when it is a trivial double cover, as `K̃`-vertex masks.
pub fn orientation_sheets(c: &NGonal) -> Result<[Vec<bool>; 2]> {
    let kt = c.ktilde.source();
    let labels = component_labels(kt);
    let count = labels.iter().max().map_or(0, |m| m + 1);
    if count != 2 || !c.ktilde.is_free() {
        return Err(precondition(
            "orientable tower",
            format!("orientation double cover has {count} components"),
        ));
    }
    let sheet = |s: usize| labels.iter().map(|&l| l == s).collect::<Vec<bool>>();
    Ok([sheet(0), sheet(1)])
}

/// `P̃` vertices lying over a set of `K̃` vertices.
pub fn over_sheet(c: &NGonal, sheet: &[bool]) -> Vec<bool> {
    c.q.vmap().iter().map(|&w| sheet[w]).collect()
}
