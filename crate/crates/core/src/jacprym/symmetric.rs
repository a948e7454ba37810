use std::collections::VecDeque;

use num_traits::{One, Signed};

use super::homology::{h1_basis, involution_chain, is_closed, pull_chain, push_chain};
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Point};
use crate::morphism::{dilation_data, DoubleCover};

/// BFS forest over the allowed edges, rooted at `roots` first and then at the
/// smallest unvisited vertex.
struct Forest {
    parent: Vec<Option<usize>>,
    component: Vec<usize>,
}

impl Forest {
    fn new(g: &Graph, allowed: impl Fn(usize) -> bool, roots: &[usize]) -> Forest {
        let n = g.num_vertices();
        let mut parent = vec![None; n];
        let mut component = vec![usize::MAX; n];
        let mut count = 0;
        let order = roots.iter().copied().chain(0..n).collect::<Vec<_>>();
        for r in order {
            if component[r] != usize::MAX {
                continue;
            }
            component[r] = count;
            let mut queue = VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                let mut out = g.star(v).to_vec();
                out.sort_by_key(|&h| (g.edge_of(h), h));
                for h in out {
                    if !allowed(g.edge_of(h)) {
                        continue;
                    }
                    let w = g.root(g.partner(h));
                    if component[w] == usize::MAX {
                        component[w] = count;
                        parent[w] = Some(g.partner(h));
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        Forest { parent, component }
    }

    fn to_root(&self, g: &Graph, mut v: usize) -> Vec<i64> {
        let mut chain = vec![0; g.num_edges()];
        while let Some(h) = self.parent[v] {
            chain[g.edge_of(h)] += g.orientation(h);
            v = g.root(g.partner(h));
        }
        chain
    }

    /// Chain of the forest path from `u` to `w`, in one component.
    fn path(&self, g: &Graph, u: usize, w: usize) -> Vec<i64> {
        debug_assert_eq!(self.component[u], self.component[w]);
        let a = self.to_root(g, u);
        let b = self.to_root(g, w);
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn unit(len: usize, e: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; len];
    v[e] = c;
    v
}

/// Which of the two families of relations a basis satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    Free,
    Dilated,
}

/// Adapted bases of `H₁(Γ̃)` and `H₁(Γ)`.
///
/// Free: top `(α̃₁⁺, α̃₁⁻, …, γ̃₁)`, bottom `(α₁, …, γ₁)`.
/// Dilated: top `(α̃ᵢ^±, β̃ⱼ, γ̃ₖ)`, bottom `(αᵢ, γₖ)`.
#[derive(Clone, Debug)]
pub struct SymmetricBasis {
    pub kind: CoverKind,
    pub top: Vec<Vec<i64>>,
    pub bottom: Vec<Vec<i64>>,
    pub num_alpha: usize,
    pub num_beta: usize,
    pub num_gamma: usize,
}

impl SymmetricBasis {
    pub fn alpha_plus(&self, i: usize) -> &[i64] {
        &self.top[2 * i]
    }

    pub fn alpha_minus(&self, i: usize) -> &[i64] {
        &self.top[2 * i + 1]
    }

    pub fn beta(&self, j: usize) -> &[i64] {
        &self.top[2 * self.num_alpha + j]
    }

    pub fn gamma_tilde(&self, k: usize) -> &[i64] {
        &self.top[2 * self.num_alpha + self.num_beta + k]
    }

    pub fn alpha(&self, i: usize) -> &[i64] {
        &self.bottom[i]
    }

    pub fn gamma(&self, k: usize) -> &[i64] {
        &self.bottom[self.num_alpha + k]
    }

    /// Checks every relation and that both families are lattice bases.
    pub fn verify(&self, c: &DoubleCover) -> Result<()> {
        let f = c.cover();
        let (gt, g) = (c.source(), c.target());
        let iota = |z: &[i64]| involution_chain(gt, c.involution(), z);
        let push = |z: &[i64]| push_chain(f, z);
        let pull = |z: &[i64]| pull_chain(f, z);
        let fail = |what: String| Err(Error::Invariant(format!("symmetric basis: {what}")));
        for z in &self.top {
            if !is_closed(gt, z) {
                return fail("open top chain".into());
            }
        }
        for z in &self.bottom {
            if !is_closed(g, z) {
                return fail("open bottom chain".into());
            }
        }
        for i in 0..self.num_alpha {
            let (p, m, a) = (self.alpha_plus(i), self.alpha_minus(i), self.alpha(i));
            if iota(p) != m || iota(m) != p {
                return fail(format!("ι does not exchange α̃{}^±", i + 1));
            }
            if push(p) != a || push(m) != a {
                return fail(format!("π_*(α̃{}^±) ≠ α{}", i + 1, i + 1));
            }
            if pull(a) != add(p, m) {
                return fail(format!("π^*(α{}) ≠ α̃⁺ + α̃⁻", i + 1));
            }
        }
        for j in 0..self.num_beta {
            let b = self.beta(j);
            if iota(b) != b.iter().map(|x| -x).collect::<Vec<_>>() {
                return fail(format!("ι(β̃{}) ≠ -β̃{}", j + 1, j + 1));
            }
            if push(b).iter().any(|&x| x != 0) {
                return fail(format!("π_*(β̃{}) ≠ 0", j + 1));
            }
        }
        for k in 0..self.num_gamma {
            let (t, b) = (self.gamma_tilde(k), self.gamma(k));
            if iota(t) != t {
                return fail(format!("ι(γ̃{}) ≠ γ̃{}", k + 1, k + 1));
            }
            let (push_factor, pull_factor) = match self.kind {
                CoverKind::Free => (2, 1),
                CoverKind::Dilated => (1, 2),
            };
            if push(t) != b.iter().map(|x| push_factor * x).collect::<Vec<_>>() {
                return fail(format!("π_*(γ̃{}) has the wrong multiple", k + 1));
            }
            if pull(b) != t.iter().map(|x| pull_factor * x).collect::<Vec<_>>() {
                return fail(format!("π^*(γ{}) has the wrong multiple", k + 1));
            }
        }
        let ht = h1_basis(gt)?;
        let hb = h1_basis(g)?;
        if self.top.len() != ht.genus() || self.bottom.len() != hb.genus() {
            return fail("wrong number of cycles".into());
        }
        if !ht.coord_matrix(&self.top)?.det().abs().is_one()
            || !hb.coord_matrix(&self.bottom)?.det().abs().is_one()
        {
            return fail("not a lattice basis".into());
        }
        Ok(())
    }
}

pub fn symmetric_basis(c: &DoubleCover) -> Result<SymmetricBasis> {
    let g = c.target();
    let gt = c.source();
    if !g.is_connected() || !gt.is_connected() {
        return Err(precondition("connected cover", "Γ̃ or Γ is disconnected"));
    }
    let basis = if c.is_free() {
        free_basis(c)?
    } else {
        dilated_basis(c)?
    };
    basis.verify(c)?;
    Ok(basis)
}

/// The lift of a base half-edge rooted at a given top vertex; the first one when dilated.
fn lift_at(c: &DoubleCover, h: usize, at: usize) -> usize {
    c.lifts(Point::HalfEdge(h))
        .into_iter()
        .map(|p| match p {
            Point::HalfEdge(x) => x,
            Point::Vertex(_) => unreachable!(),
        })
        .find(|&x| c.source().root(x) == at)
        .expect("half-edge lifts at every vertex over its root")
}

fn top_vertex_lifts(c: &DoubleCover, v: usize) -> Vec<usize> {
    c.lifts(Point::Vertex(v))
        .into_iter()
        .map(|p| match p {
            Point::Vertex(x) => x,
            Point::HalfEdge(_) => unreachable!(),
        })
        .collect()
}

fn free_basis(c: &DoubleCover) -> Result<SymmetricBasis> {
    let (g, gt) = (c.target(), c.source());
    let tree = Forest::new(g, |_| true, &[0]);
    let in_tree: Vec<bool> = (0..g.num_edges())
        .map(|e| {
            let (u, w) = g.edge_ends(e);
            tree.parent[u].map(|h| g.edge_of(h)) == Some(e)
                || tree.parent[w].map(|h| g.edge_of(h)) == Some(e)
        })
        .collect();
    let upstairs = Forest::new(
        gt,
        |e| in_tree[c.cover().edge_image(e)],
        &top_vertex_lifts(c, 0),
    );
    let sheet = &upstairs.component;
    let complement: Vec<usize> = (0..g.num_edges()).filter(|&e| !in_tree[e]).collect();
    let plus = |e: usize| {
        lift_at(
            c,
            g.edge_tail_half(e),
            top_vertex_lifts(c, g.edge_ends(e).0)[0],
        )
    };
    let crosses = |e: usize| {
        let h = plus(e);
        sheet[gt.root(h)] != sheet[gt.root(gt.partner(h))]
    };
    let Some(&e0) = complement.iter().find(|&&e| crosses(e)) else {
        return Err(precondition("connected cover", "Γ̃ is disconnected"));
    };
    let ne = gt.num_edges();
    let gamma = {
        let (u, w) = g.edge_ends(e0);
        add(&tree.path(g, w, u), &unit(g.num_edges(), e0, 1))
    };
    let gamma_tilde = pull_chain(c.cover(), &gamma);
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for &e in complement.iter().filter(|&&e| e != e0) {
        let h = plus(e);
        let (u, w) = (gt.root(h), gt.root(gt.partner(h)));
        let mut z = unit(ne, gt.edge_of(h), gt.orientation(h));
        if sheet[u] == sheet[w] {
            z = add(&z, &upstairs.path(gt, w, u));
        } else {
            // return to the starting sheet through a lift of e0
            let h0 = g.edge_tail_half(e0);
            let k = c
                .lifts(Point::HalfEdge(h0))
                .into_iter()
                .map(|p| match p {
                    Point::HalfEdge(x) => x,
                    Point::Vertex(_) => unreachable!(),
                })
                .find(|&x| sheet[gt.root(x)] == sheet[w])
                .expect("one lift of e0 starts in each sheet");
            let (a, b) = (gt.root(k), gt.root(gt.partner(k)));
            z = add(&z, &upstairs.path(gt, w, a));
            z = add(&z, &unit(ne, gt.edge_of(k), gt.orientation(k)));
            z = add(&z, &upstairs.path(gt, b, u));
        }
        let minus = involution_chain(gt, c.involution(), &z);
        bottom.push(push_chain(c.cover(), &z));
        top.push(z);
        top.push(minus);
    }
    let num_alpha = bottom.len();
    top.push(gamma_tilde);
    bottom.push(gamma);
    Ok(SymmetricBasis {
        kind: CoverKind::Free,
        top,
        bottom,
        num_alpha,
        num_beta: 0,
        num_gamma: 1,
    })
}

fn dilated_basis(c: &DoubleCover) -> Result<SymmetricBasis> {
    let (g, gt) = (c.target(), c.source());
    let data = dilation_data(c)?;
    let mut dilated_edge = vec![false; g.num_edges()];
    for &e in &data.edges {
        dilated_edge[e] = true;
    }
    let r0 = data.vertices[0];
    // spanning forest of the dilation subgraph, extended to a spanning tree
    let mut uf: Vec<usize> = (0..g.num_vertices()).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let n = uf[y];
            uf[y] = r;
            y = n;
        }
        r
    }
    let mut in_tree = vec![false; g.num_edges()];
    let order: Vec<usize> = data
        .edges
        .iter()
        .copied()
        .chain((0..g.num_edges()).filter(|&e| !dilated_edge[e]))
        .collect();
    for e in order {
        let (u, w) = g.edge_ends(e);
        let (a, b) = (find(&mut uf, u), find(&mut uf, w));
        if a != b {
            uf[a] = b;
            in_tree[e] = true;
        }
    }
    let tree = Forest::new(g, |e| in_tree[e], &[r0]);
    let r0_tilde = top_vertex_lifts(c, r0)[0];
    let upstairs = Forest::new(gt, |e| in_tree[c.cover().edge_image(e)], &[r0_tilde]);
    if upstairs.component.iter().any(|&x| x != 0) {
        return Err(Error::Invariant(
            "preimage of the spanning tree is disconnected".into(),
        ));
    }
    let ne = gt.num_edges();
    let mut top = Vec::new();
    let mut bottom = Vec::new();

    // α̃ᵢ^± from complementary edges outside the dilation subgraph
    for e in (0..g.num_edges()).filter(|&e| !in_tree[e] && !dilated_edge[e]) {
        let (u, w) = g.edge_ends(e);
        let h = lift_at(c, g.edge_tail_half(e), top_vertex_lifts(c, u)[0]);
        let (ut, wt) = (gt.root(h), gt.root(gt.partner(h)));
        let z = add(
            &unit(ne, gt.edge_of(h), gt.orientation(h)),
            &upstairs.path(gt, wt, ut),
        );
        let alpha = add(&tree.path(g, w, u), &unit(g.num_edges(), e, 1));
        if push_chain(c.cover(), &z) != alpha {
            return Err(Error::Invariant(
                "lifted cycle does not push forward to its base".into(),
            ));
        }
        top.push(involution_chain(gt, c.involution(), &z));
        top.insert(top.len() - 1, z);
        bottom.push(alpha);
    }
    let num_alpha = bottom.len();

    // β̃ⱼ from tree paths joining the dilation components
    let mut labels = uf_dilated(g, &data.edges);
    let mut comp_rep: Vec<usize> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &v in &data.vertices {
        if seen.insert(find(&mut labels, v)) {
            comp_rep.push(v);
        }
    }
    for &r in comp_rep.iter().skip(1) {
        let mut z = vec![0; ne];
        let mut x = r;
        let mut xt = top_vertex_lifts(c, r)[0];
        while let Some(h) = tree.parent[x] {
            let ht = lift_at(c, h, xt);
            z[gt.edge_of(ht)] += gt.orientation(ht);
            x = g.root(g.partner(h));
            xt = gt.root(gt.partner(ht));
        }
        if xt != r0_tilde {
            return Err(Error::Invariant(
                "lifted tree walk missed the dilated root".into(),
            ));
        }
        let beta = sub(&z, &involution_chain(gt, c.involution(), &z));
        top.push(beta);
    }
    let num_beta = top.len() - 2 * num_alpha;

    // γ̃ₖ from cycles of the dilation subgraph
    let mut gammas = Vec::new();
    for &e in data.edges.iter().filter(|&&e| !in_tree[e]) {
        let (u, w) = g.edge_ends(e);
        let gamma = add(&tree.path(g, w, u), &unit(g.num_edges(), e, 1));
        let lifted: Vec<i64> = pull_chain(c.cover(), &gamma)
            .iter()
            .map(|x| x / 2)
            .collect();
        top.push(lifted);
        gammas.push(gamma);
    }
    let num_gamma = gammas.len();
    bottom.extend(gammas);
    if (num_alpha as i64, num_beta as i64, num_gamma as i64) != (data.a, data.b, data.c) {
        return Err(Error::Invariant(format!(
            "basis sizes ({num_alpha}, {num_beta}, {num_gamma}) differ from A, B, C = ({}, {}, {})",
            data.a, data.b, data.c
        )));
    }
    Ok(SymmetricBasis {
        kind: CoverKind::Dilated,
        top,
        bottom,
        num_alpha,
        num_beta,
        num_gamma,
    })
}

/// Union-find labels of the dilation subgraph.
fn uf_dilated(g: &Graph, edges: &[usize]) -> Vec<usize> {
    let mut uf: Vec<usize> = (0..g.num_vertices()).collect();
    fn root(uf: &[usize], mut x: usize) -> usize {
        while uf[x] != x {
            x = uf[x];
        }
        x
    }
    for &e in edges {
        let (u, w) = g.edge_ends(e);
        let (a, b) = (root(&uf, u), root(&uf, w));
        if a != b {
            uf[a] = b;
        }
    }
    uf
}
