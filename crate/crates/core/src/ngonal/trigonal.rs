use std::collections::BTreeMap;
use std::fmt;

use super::construct::{
    involution_quotient, ngonal_construct, orientation_sheets, over_sheet, restrict_source, NGonal,
};
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Point};
use crate::morphism::{DoubleCover, HarmonicMorphism, Tower};

/// Point types shared by trigonal towers and generic tetragonal maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Abc {
    A,
    B,
    C,
}

impl fmt::Display for Abc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Abc::A => "A",
            Abc::B => "B",
            Abc::C => "C",
        };
        f.write_str(s)
    }
}

/// Type from a degree 3 fiber profile (sorted descending).
pub fn classify_trigonal(profile: &[u64]) -> Result<Abc> {
    match profile {
        [1, 1, 1] => Ok(Abc::A),
        [2, 1] => Ok(Abc::B),
        [3] => Ok(Abc::C),
        _ => Err(precondition(
            "trigonal fiber",
            format!("profile {profile:?}"),
        )),
    }
}

/// Type from a degree 4 fiber profile (sorted descending).
pub fn classify_tetragonal(profile: &[u64]) -> Result<Abc> {
    match profile {
        [1, 1, 1, 1] => Ok(Abc::A),
        [2, 1, 1] => Ok(Abc::B),
        [3, 1] => Ok(Abc::C),
        _ => Err(precondition(
            "generic tetragonal fiber",
            format!("profile {profile:?}"),
        )),
    }
}

/// Label of a base point for either classification scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointType {
    Bigonal(super::BigonalType),
    Abc(Abc),
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointType::Bigonal(t) => t.fmt(f),
            PointType::Abc(t) => t.fmt(f),
        }
    }
}

/// Classifies every base point of a tower of degree 2, 3 or 4.
pub fn classify_points(t: &Tower) -> Result<Vec<PointType>> {
    match t.f.global_degree() {
        Some(2) => Ok(super::bigonal_types(t)?
            .into_iter()
            .map(PointType::Bigonal)
            .collect()),
        Some(3) => t
            .base()
            .points()
            .map(|x| classify_trigonal(&t.f.profile(x)).map(PointType::Abc))
            .collect(),
        Some(4) => t
            .base()
            .points()
            .map(|x| classify_tetragonal(&t.f.profile(x)).map(PointType::Abc))
            .collect(),
        d => Err(precondition("degree 2, 3 or 4", format!("degree {d:?}"))),
    }
}

/// Checks that every fiber of a degree 4 map has a unit-degree point.
pub fn check_generic_tetragonal(p: &HarmonicMorphism) -> Result<()> {
    if p.global_degree() != Some(4) {
        return Err(precondition(
            "degree 4",
            format!("degree {:?}", p.global_degree()),
        ));
    }
    for x in p.target().points() {
        let profile = p.profile(x);
        if !profile.contains(&1) {
            return Err(Error::NonGeneric { point: x, profile });
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Trigonal {
    /// `Π → K`
    pub map: HarmonicMorphism,
    pub construction: NGonal,
    /// `P̃` vertices kept in `Π`.
    pub kept: Vec<bool>,
}

/// The trigonal construction, returning the component of `P̃` over the sheet of
/// `K̃` that contains the first lift of base vertex 0.
pub fn trigonal(t: &Tower) -> Result<Trigonal> {
    if t.f.global_degree() != Some(3) {
        return Err(precondition(
            "deg f = 3",
            format!("deg f = {:?}", t.f.global_degree()),
        ));
    }
    if !t.pi.is_free() {
        return Err(precondition("π free", "double cover is dilated"));
    }
    if !t.base().is_tree() {
        return Err(precondition(
            "K a tree",
            "base graph has cycles or is disconnected",
        ));
    }
    let construction = ngonal_construct(t, 3)?;
    let sheets = orientation_sheets(&construction)?;
    let even = if sheets[0][0] { &sheets[0] } else { &sheets[1] };
    let kept = over_sheet(&construction, even);
    for v in 0..kept.len() {
        if kept[v] == kept[construction.iota.v[v]] {
            return Err(Error::Invariant(
                "sign involution does not exchange the two sheets".into(),
            ));
        }
    }
    let map = restrict_source(&construction.ptilde, &kept)?.map;
    if map.global_degree() != Some(4) {
        return Err(Error::Invariant(format!(
            "trigonal output has degree {:?}",
            map.global_degree()
        )));
    }
    check_generic_tetragonal(&map)?;
    Ok(Trigonal {
        map,
        construction,
        kept,
    })
}

/// An unordered pair of fiber points, sorted.
type Pair = (usize, usize);

fn pair(a: usize, b: usize) -> Pair {
    (a.min(b), a.max(b))
}

/// The complement of a 2-element class inside a fiber with the given degrees.
fn complement(fiber: &[usize], deg: impl Fn(usize) -> u64, s: Pair) -> Pair {
    let mut rest = Vec::new();
    for &y in fiber {
        let mut d = deg(y);
        if y == s.0 {
            d -= 1;
        }
        if y == s.1 {
            d -= 1;
        }
        for _ in 0..d {
            rest.push(y);
        }
    }
    debug_assert_eq!(rest.len(), 2);
    pair(rest[0], rest[1])
}

fn pairs_of(fiber: &[usize], deg: impl Fn(usize) -> u64) -> Vec<(Pair, u64)> {
    let mut out = Vec::new();
    for (i, &a) in fiber.iter().enumerate() {
        let da = deg(a);
        if da >= 2 {
            out.push((pair(a, a), da * (da - 1) / 2));
        }
        for &b in &fiber[i + 1..] {
            out.push((pair(a, b), da * deg(b)));
        }
    }
    out.sort();
    out
}

/// The Recillas construction of a generic tetragonal map over a tree.
pub fn recillas(p: &HarmonicMorphism) -> Result<Tower> {
    check_generic_tetragonal(p)?;
    let k = p.target();
    if !k.is_tree() {
        return Err(precondition(
            "K a tree",
            "base graph has cycles or is disconnected",
        ));
    }
    let pi_g = p.source();

    // Γ̃ vertices
    let mut tv: Vec<(Pair, u64, usize)> = Vec::new();
    let mut tv_index = BTreeMap::new();
    for x in 0..k.num_vertices() {
        let fiber = p.vertex_fiber(x);
        for (s, d) in pairs_of(fiber, |y| p.vdeg()[y]) {
            tv_index.insert(s, tv.len());
            tv.push((s, d, x));
        }
    }
    let mut th: Vec<(Pair, u64, usize)> = Vec::new();
    let mut th_index = BTreeMap::new();
    for x in 0..k.num_half_edges() {
        let fiber = p.half_edge_fiber(x);
        for (s, d) in pairs_of(fiber, |y| p.hdeg()[y]) {
            th_index.insert(s, th.len());
            th.push((s, d, x));
        }
    }
    let troot: Vec<usize> = th
        .iter()
        .map(|&((a, b), _, _)| tv_index[&pair(pi_g.root(a), pi_g.root(b))])
        .collect();
    let tpartner: Vec<usize> = th
        .iter()
        .map(|&((a, b), _, _)| th_index[&pair(pi_g.partner(a), pi_g.partner(b))])
        .collect();
    let gt = Graph::new(tv.len(), troot, tpartner)?;

    // complement involution and the quotient Γ
    let vcomp: Vec<usize> = tv
        .iter()
        .map(|&(s, _, x)| tv_index[&complement(p.vertex_fiber(x), |y| p.vdeg()[y], s)])
        .collect();
    let hcomp: Vec<usize> = th
        .iter()
        .map(|&(s, _, x)| th_index[&complement(p.half_edge_fiber(x), |y| p.hdeg()[y], s)])
        .collect();
    let mut gv_of = vec![usize::MAX; tv.len()];
    let mut gv = Vec::new();
    for v in 0..tv.len() {
        if vcomp[v] == v {
            return Err(Error::NonGeneric {
                point: Point::Vertex(tv[v].2),
                profile: p.profile(Point::Vertex(tv[v].2)),
            });
        }
        if v < vcomp[v] {
            gv_of[v] = gv.len();
            gv_of[vcomp[v]] = gv.len();
            gv.push(v);
        }
    }
    let mut gh_of = vec![usize::MAX; th.len()];
    let mut gh = Vec::new();
    for h in 0..th.len() {
        if hcomp[h] == h {
            return Err(Error::NonGeneric {
                point: Point::HalfEdge(th[h].2),
                profile: p.profile(Point::HalfEdge(th[h].2)),
            });
        }
        if h < hcomp[h] {
            gh_of[h] = gh.len();
            gh_of[hcomp[h]] = gh.len();
            gh.push(h);
        }
    }
    let g = Graph::new(
        gv.len(),
        gh.iter().map(|&h| gv_of[gt.root(h)]).collect(),
        gh.iter().map(|&h| gh_of[gt.partner(h)]).collect(),
    )?;
    let f = HarmonicMorphism::new(
        g.clone(),
        k.clone(),
        gv.iter().map(|&v| tv[v].2).collect(),
        gh.iter().map(|&h| th[h].2).collect(),
        gv.iter().map(|&v| tv[v].1).collect(),
        gh.iter().map(|&h| th[h].1).collect(),
    )?;
    let pi = DoubleCover::new(HarmonicMorphism::new(
        gt.clone(),
        g,
        gv_of,
        gh_of,
        vec![1; gt.num_vertices()],
        vec![1; gt.num_half_edges()],
    )?)?;
    Tower::new(pi, f)
}

/// Splits the tetragonal construction of a free tower into two towers.
pub fn tetragonal_split(t: &Tower) -> Result<[Tower; 2]> {
    if t.f.global_degree() != Some(4) {
        return Err(precondition(
            "deg f = 4",
            format!("deg f = {:?}", t.f.global_degree()),
        ));
    }
    if !t.pi.is_free() {
        return Err(precondition("π free", "double cover is dilated"));
    }
    check_generic_tetragonal(&t.f)?;
    if !t.base().is_tree() {
        return Err(precondition(
            "K a tree",
            "base graph has cycles or is disconnected",
        ));
    }
    let c = ngonal_construct(t, 4)?;
    let sheets = orientation_sheets(&c)?;
    let input: Vec<Abc> = t
        .base()
        .points()
        .map(|x| classify_tetragonal(&t.f.profile(x)))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(2);
    for sheet in &sheets {
        let keep = over_sheet(&c, sheet);
        let r = restrict_source(&c.ptilde, &keep)?;
        let iota = r.involution(&c.iota)?;
        if !iota.is_fixed_point_free() {
            return Err(Error::Invariant("sign involution has fixed points".into()));
        }
        let quotient = involution_quotient(&r.map, &iota)?;
        let tower = Tower::new(DoubleCover::new(quotient.quotient)?, quotient.map)?;
        for (x, want) in t.base().points().zip(&input) {
            let got = classify_tetragonal(&tower.f.profile(x))?;
            if got != *want {
                return Err(Error::Invariant(format!("type {want} at {x} became {got}")));
            }
        }
        out.push(tower);
    }
    let second = out.pop().unwrap();
    let first = out.pop().unwrap();
    Ok([first, second])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{covers_isomorphic_over_base, towers_isomorphic};

    fn single(profile: &[u64]) -> HarmonicMorphism {
        let k = Graph::new(1, vec![], vec![]).unwrap();
        let s = Graph::new(profile.len(), vec![], vec![]).unwrap();
        HarmonicMorphism::new(
            s,
            k,
            vec![0; profile.len()],
            vec![],
            profile.to_vec(),
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn recillas_point_fibers() {
        let t = recillas(&single(&[1, 1, 1, 1])).unwrap();
        assert_eq!(t.top().num_vertices(), 6);
        assert_eq!(t.middle().num_vertices(), 3);
        let t = recillas(&single(&[3, 1])).unwrap();
        assert_eq!(t.pi.cover().vdeg(), &[1, 1]);
        let mut degs = t.composite().vdeg().to_vec();
        degs.sort();
        assert_eq!(degs, vec![3, 3]);
        let t = recillas(&single(&[2, 1, 1])).unwrap();
        assert_eq!(t.f.profile(Point::Vertex(0)), vec![2, 1]);
    }

    #[test]
    fn non_generic_rejected() {
        for bad in [vec![2, 2], vec![4]] {
            match recillas(&single(&bad)) {
                Err(Error::NonGeneric { point, profile }) => {
                    assert_eq!(point, Point::Vertex(0));
                    assert_eq!(profile, bad);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn point_round_trips() {
        for profile in [vec![1, 1, 1, 1], vec![2, 1, 1], vec![3, 1]] {
            let p = single(&profile);
            let t = recillas(&p).unwrap();
            let back = trigonal(&t).unwrap();
            assert_eq!(back.map.profile(Point::Vertex(0)), profile);
            assert!(covers_isomorphic_over_base(&p, &back.map)
                .unwrap()
                .is_some());
            let again = recillas(&back.map).unwrap();
            assert!(towers_isomorphic(&t, &again).unwrap().is_some());
        }
    }

    #[test]
    fn classification() {
        assert_eq!(classify_trigonal(&[2, 1]).unwrap(), Abc::B);
        assert_eq!(classify_tetragonal(&[3, 1]).unwrap(), Abc::C);
        assert!(classify_tetragonal(&[2, 2]).is_err());
    }

    #[test]
    fn split_point_fibers() {
        for profile in [vec![1, 1, 1, 1], vec![2, 1, 1], vec![3, 1]] {
            let p = single(&profile);
            // free double cover by two copies
            let n = profile.len();
            let top = Graph::new(2 * n, vec![], vec![]).unwrap();
            let pi = DoubleCover::new(
                HarmonicMorphism::new(
                    top,
                    p.source().clone(),
                    (0..2 * n).map(|i| i % n).collect(),
                    vec![],
                    vec![1; 2 * n],
                    vec![],
                )
                .unwrap(),
            )
            .unwrap();
            let t = Tower::new(pi, p).unwrap();
            let [a, b] = tetragonal_split(&t).unwrap();
            assert_eq!(a.f.profile(Point::Vertex(0)), profile);
            assert_eq!(b.f.profile(Point::Vertex(0)), profile);
        }
    }
}
