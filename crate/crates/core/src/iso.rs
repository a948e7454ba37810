//! Isomorphisms of covers over a fixed base.

use crate::error::{Error, Result};
use crate::graph::Point;
use crate::morphism::{HarmonicMorphism, Involution, Tower};

/// Source-graph isomorphism commuting with the maps to the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vmap: Vec<usize>,
    pub hmap: Vec<usize>,
}

impl Isomorphism {
    pub fn apply(&self, p: Point) -> Point {
        match p {
            Point::Vertex(v) => Point::Vertex(self.vmap[v]),
            Point::HalfEdge(h) => Point::HalfEdge(self.hmap[h]),
        }
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut vmap = vec![0; self.vmap.len()];
        for (a, &b) in self.vmap.iter().enumerate() {
            vmap[b] = a;
        }
        let mut hmap = vec![0; self.hmap.len()];
        for (a, &b) in self.hmap.iter().enumerate() {
            hmap[b] = a;
        }
        Isomorphism { vmap, hmap }
    }

    /// Re-checks that this is an isomorphism `f1 ≅ f2` over the base.
    pub fn verify(&self, f1: &HarmonicMorphism, f2: &HarmonicMorphism) -> bool {
        let (s1, s2) = (f1.source(), f2.source());
        if self.vmap.len() != s1.num_vertices() || self.hmap.len() != s1.num_half_edges() {
            return false;
        }
        let mut seen_v = vec![false; s2.num_vertices()];
        let mut seen_h = vec![false; s2.num_half_edges()];
        for (v, &w) in self.vmap.iter().enumerate() {
            if w >= seen_v.len()
                || seen_v[w]
                || f1.vmap()[v] != f2.vmap()[w]
                || f1.vdeg()[v] != f2.vdeg()[w]
            {
                return false;
            }
            seen_v[w] = true;
        }
        for (h, &k) in self.hmap.iter().enumerate() {
            if k >= seen_h.len()
                || seen_h[k]
                || f1.hmap()[h] != f2.hmap()[k]
                || f1.hdeg()[h] != f2.hdeg()[k]
                || self.vmap[s1.root(h)] != s2.root(k)
                || self.hmap[s1.partner(h)] != s2.partner(k)
            {
                return false;
            }
            seen_h[k] = true;
        }
        seen_v.iter().all(|&b| b) && seen_h.iter().all(|&b| b)
    }
}

struct Search<'a> {
    f1: &'a HarmonicMorphism,
    f2: &'a HarmonicMorphism,
    inv: Option<(&'a Involution, &'a Involution)>,
    vm: Vec<Option<usize>>,
    hm: Vec<Option<usize>>,
    vused: Vec<bool>,
    hused: Vec<bool>,
    trail: Vec<Point>,
}

impl Search<'_> {
    fn assign_v(&mut self, a: usize, b: usize) -> bool {
        if let Some(x) = self.vm[a] {
            return x == b;
        }
        if self.vused[b]
            || self.f1.vmap()[a] != self.f2.vmap()[b]
            || self.f1.vdeg()[a] != self.f2.vdeg()[b]
        {
            return false;
        }
        self.vm[a] = Some(b);
        self.vused[b] = true;
        self.trail.push(Point::Vertex(a));
        if let Some((i1, i2)) = self.inv {
            let (ia, ib) = (i1.v[a], i2.v[b]);
            if (ia == a) != (ib == b) {
                return false;
            }
            if ia != a && !self.assign_v(ia, ib) {
                return false;
            }
        }
        true
    }

    fn assign_h(&mut self, a: usize, b: usize) -> bool {
        if let Some(x) = self.hm[a] {
            return x == b;
        }
        if self.hused[b]
            || self.f1.hmap()[a] != self.f2.hmap()[b]
            || self.f1.hdeg()[a] != self.f2.hdeg()[b]
        {
            return false;
        }
        self.hm[a] = Some(b);
        self.hused[b] = true;
        self.trail.push(Point::HalfEdge(a));
        let (s1, s2) = (self.f1.source(), self.f2.source());
        if !self.assign_v(s1.root(a), s2.root(b)) {
            return false;
        }
        if !self.assign_h(s1.partner(a), s2.partner(b)) {
            return false;
        }
        if let Some((i1, i2)) = self.inv {
            let (ia, ib) = (i1.h[a], i2.h[b]);
            if (ia == a) != (ib == b) {
                return false;
            }
            if ia != a && !self.assign_h(ia, ib) {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Point::Vertex(a) => {
                    let b = self.vm[a].take().unwrap();
                    self.vused[b] = false;
                }
                Point::HalfEdge(a) => {
                    let b = self.hm[a].take().unwrap();
                    self.hused[b] = false;
                }
            }
        }
    }

    fn solve(&mut self) -> bool {
        let s1 = self.f1.source();
        let next_h = (0..s1.num_half_edges())
            .find(|&h| self.hm[h].is_none() && self.vm[s1.root(h)].is_some());
        if let Some(h) = next_h {
            let v2 = self.vm[s1.root(h)].unwrap();
            let cands: Vec<usize> = self.f2.source().star(v2).to_vec();
            for c in cands {
                let mark = self.trail.len();
                if self.assign_h(h, c) && self.solve() {
                    return true;
                }
                self.undo(mark);
            }
            return false;
        }
        if let Some(v) = (0..s1.num_vertices()).find(|&v| self.vm[v].is_none()) {
            let cands: Vec<usize> = self.f2.vertex_fiber(self.f1.vmap()[v]).to_vec();
            for c in cands {
                let mark = self.trail.len();
                if self.assign_v(v, c) && self.solve() {
                    return true;
                }
                self.undo(mark);
            }
            return false;
        }
        true
    }
}

fn search(
    f1: &HarmonicMorphism,
    f2: &HarmonicMorphism,
    inv: Option<(&Involution, &Involution)>,
) -> Result<Option<Isomorphism>> {
    if f1.target() != f2.target() {
        return Err(Error::NotComposable("covers have different targets".into()));
    }
    let (s1, s2) = (f1.source(), f2.source());
    if s1.num_vertices() != s2.num_vertices() || s1.num_half_edges() != s2.num_half_edges() {
        return Ok(None);
    }
    for p in f1.target().points() {
        if f1.profile(p) != f2.profile(p) {
            return Ok(None);
        }
    }
    let mut st = Search {
        f1,
        f2,
        inv,
        vm: vec![None; s1.num_vertices()],
        hm: vec![None; s1.num_half_edges()],
        vused: vec![false; s2.num_vertices()],
        hused: vec![false; s2.num_half_edges()],
        trail: Vec::new(),
    };
    if !st.solve() {
        return Ok(None);
    }
    let iso = Isomorphism {
        vmap: st.vm.into_iter().map(Option::unwrap).collect(),
        hmap: st.hm.into_iter().map(Option::unwrap).collect(),
    };
    if !iso.verify(f1, f2) {
        return Err(Error::Invariant(
            "isomorphism search produced an invalid map".into(),
        ));
    }
    Ok(Some(iso))
}

/// An isomorphism `φ` of sources with `f2 ∘ φ = f1`, if any.
pub fn covers_isomorphic_over_base(
    f1: &HarmonicMorphism,
    f2: &HarmonicMorphism,
) -> Result<Option<Isomorphism>> {
    search(f1, f2, None)
}

/// Compatible isomorphisms of both levels of two towers over the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerIsomorphism {
    pub top: Isomorphism,
    pub middle: Isomorphism,
}

pub fn towers_isomorphic(t1: &Tower, t2: &Tower) -> Result<Option<TowerIsomorphism>> {
    let (c1, c2) = (t1.composite(), t2.composite());
    let Some(top) = search(&c1, &c2, Some((t1.pi.involution(), t2.pi.involution())))? else {
        return Ok(None);
    };
    // the top map commutes with the sheet involutions, so it descends
    let (p1, p2) = (t1.pi.cover(), t2.pi.cover());
    let mut vmap = vec![usize::MAX; t1.middle().num_vertices()];
    for v in 0..t1.top().num_vertices() {
        vmap[p1.vmap()[v]] = p2.vmap()[top.vmap[v]];
    }
    let mut hmap = vec![usize::MAX; t1.middle().num_half_edges()];
    for h in 0..t1.top().num_half_edges() {
        hmap[p1.hmap()[h]] = p2.hmap()[top.hmap[h]];
    }
    let middle = Isomorphism { vmap, hmap };
    if !middle.verify(&t1.f, &t2.f) {
        return Ok(None);
    }
    Ok(Some(TowerIsomorphism { top, middle }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::morphism::DoubleCover;

    fn loop_cover(connected: bool) -> HarmonicMorphism {
        let k = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let g = if connected {
            Graph::new(2, vec![0, 1, 1, 0], vec![1, 0, 3, 2]).unwrap()
        } else {
            Graph::from_edges(2, &[(0, 0), (1, 1)]).unwrap()
        };
        HarmonicMorphism::new(g, k, vec![0, 0], vec![0, 1, 0, 1], vec![1; 2], vec![1; 4]).unwrap()
    }

    #[test]
    fn connected_and_split_loop_covers_differ() {
        let a = loop_cover(true);
        let b = loop_cover(false);
        assert!(covers_isomorphic_over_base(&a, &b).unwrap().is_none());
        assert!(covers_isomorphic_over_base(&a, &a).unwrap().is_some());
    }

    #[test]
    fn relabeled_cover_is_isomorphic() {
        let a = loop_cover(true);
        // swap the two vertices and relabel the half-edges
        let g = Graph::new(2, vec![1, 0, 0, 1], vec![1, 0, 3, 2]).unwrap();
        let k = a.target().clone();
        let b = HarmonicMorphism::new(g, k, vec![0, 0], vec![0, 1, 0, 1], vec![1; 2], vec![1; 4])
            .unwrap();
        let iso = covers_isomorphic_over_base(&a, &b).unwrap().unwrap();
        assert!(iso.inverse().verify(&b, &a));
    }

    #[test]
    fn profile_mismatch() {
        let k = Graph::new(1, vec![], vec![]).unwrap();
        let g3 = Graph::new(1, vec![], vec![]).unwrap();
        let g21 = Graph::new(2, vec![], vec![]).unwrap();
        let a = HarmonicMorphism::new(g3, k.clone(), vec![0], vec![], vec![3], vec![]).unwrap();
        let b = HarmonicMorphism::new(g21, k, vec![0, 0], vec![], vec![2, 1], vec![]).unwrap();
        assert!(covers_isomorphic_over_base(&a, &b).unwrap().is_none());
    }

    #[test]
    fn tower_self_isomorphism() {
        let pi = DoubleCover::new(loop_cover(true)).unwrap();
        let f = HarmonicMorphism::identity(pi.target());
        let t = Tower::new(pi, f).unwrap();
        let iso = towers_isomorphic(&t, &t).unwrap().unwrap();
        assert!(iso.middle.verify(&t.f, &t.f));
    }
}
