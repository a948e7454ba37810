//! Half-edge graphs.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Report, Result};

/// A vertex or a half-edge. Points of a graph are both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Vertex(usize),
    HalfEdge(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Vertex(v) => write!(f, "v{v}"),
            Point::HalfEdge(h) => write!(f, "h{h}"),
        }
    }
}

/// Immutable half-edge graph. Loops and parallel edges are allowed.
///
/// Edge `k` is the partner pair whose smaller half-edge is the `k`-th smallest
/// such half-edge; it is oriented from the root of that half-edge to the root of
/// its partner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    root: Vec<usize>,
    partner: Vec<usize>,
    num_vertices: usize,
    star: Vec<Vec<usize>>,
    edge_of: Vec<usize>,
    edge_half: Vec<usize>,
}

pub fn validate_graph(num_vertices: usize, root: &[usize], partner: &[usize]) -> Report {
    let mut report = Report::new();
    if root.len() != partner.len() {
        report.push(format!(
            "root map has {} entries but partner map has {}",
            root.len(),
            partner.len()
        ));
        return report;
    }
    for (h, &r) in root.iter().enumerate() {
        if r >= num_vertices {
            report.push(format!("root of h{h} is undefined vertex v{r}"));
        }
    }
    for (h, &p) in partner.iter().enumerate() {
        if p >= partner.len() {
            report.push(format!("partner of h{h} is undefined half-edge h{p}"));
        } else if p == h {
            report.push(format!("fixed point of involution at h{h}"));
        } else if partner[p] != h {
            report.push(format!("partner is not an involution at h{h}"));
        }
    }
    report
}

impl Graph {
    pub fn new(num_vertices: usize, root: Vec<usize>, partner: Vec<usize>) -> Result<Self> {
        let report = validate_graph(num_vertices, &root, &partner);
        if !report.is_valid() {
            return Err(Error::InvalidGraph(report));
        }
        let mut star = vec![Vec::new(); num_vertices];
        for (h, &r) in root.iter().enumerate() {
            star[r].push(h);
        }
        let mut edge_of = vec![0; root.len()];
        let mut edge_half = Vec::new();
        for h in 0..root.len() {
            if h < partner[h] {
                edge_of[h] = edge_half.len();
                edge_of[partner[h]] = edge_half.len();
                edge_half.push(h);
            }
        }
        Ok(Graph {
            root,
            partner,
            num_vertices,
            star,
            edge_of,
            edge_half,
        })
    }

    /// Edge `k` of the result joins `edges[k].0` to `edges[k].1` through half-edges `2k` and `2k+1`.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut root = Vec::with_capacity(2 * edges.len());
        let mut partner = Vec::with_capacity(2 * edges.len());
        for (k, &(u, v)) in edges.iter().enumerate() {
            root.push(u);
            root.push(v);
            partner.push(2 * k + 1);
            partner.push(2 * k);
        }
        Graph::new(num_vertices, root, partner)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_half_edges(&self) -> usize {
        self.root.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_half.len()
    }

    pub fn root(&self, h: usize) -> usize {
        self.root[h]
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h]
    }

    pub fn roots(&self) -> &[usize] {
        &self.root
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Half-edges rooted at `v`, sorted.
    pub fn star(&self, v: usize) -> &[usize] {
        &self.star[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.star[v].len()
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// The half-edge at the tail of edge `e`.
    pub fn edge_tail_half(&self, e: usize) -> usize {
        self.edge_half[e]
    }

    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        let h = self.edge_half[e];
        (self.root[h], self.root[self.partner[h]])
    }

    /// +1 when traversing `h` from its root follows the orientation of its edge.
    pub fn orientation(&self, h: usize) -> i64 {
        if self.edge_half[self.edge_of[h]] == h {
            1
        } else {
            -1
        }
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edge_ends(e);
        u == v
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.num_vertices)
            .map(Point::Vertex)
            .chain((0..self.root.len()).map(Point::HalfEdge))
    }

    pub fn has_point(&self, p: Point) -> bool {
        match p {
            Point::Vertex(v) => v < self.num_vertices,
            Point::HalfEdge(h) => h < self.root.len(),
        }
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.num_edges() + 1 == self.num_vertices
    }

    /// Keeps the given vertices (sorted) and every half-edge rooted at them.
    /// Returns the subgraph plus old-to-new vertex and half-edge maps.
    pub fn induced(
        &self,
        keep: &[bool],
    ) -> Result<(Graph, Vec<Option<usize>>, Vec<Option<usize>>)> {
        let mut vnew = vec![None; self.num_vertices];
        let mut count = 0;
        for v in 0..self.num_vertices {
            if keep[v] {
                vnew[v] = Some(count);
                count += 1;
            }
        }
        let mut hnew = vec![None; self.root.len()];
        let mut hc = 0;
        for h in 0..self.root.len() {
            if keep[self.root[h]] && keep[self.root[self.partner[h]]] {
                hnew[h] = Some(hc);
                hc += 1;
            }
        }
        let mut root = vec![0; hc];
        let mut partner = vec![0; hc];
        for h in 0..self.root.len() {
            if let Some(n) = hnew[h] {
                root[n] = vnew[self.root[h]].unwrap();
                partner[n] = hnew[self.partner[h]].unwrap();
            }
        }
        Ok((Graph::new(count, root, partner)?, vnew, hnew))
    }
}

/// `|E| - |V| + 1` for a connected graph.
pub fn genus(g: &Graph) -> Result<i64> {
    if !g.is_connected() {
        return Err(Error::Disconnected("genus"));
    }
    Ok(g.num_edges() as i64 - g.num_vertices() as i64 + 1)
}

/// Components as sorted vertex lists, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let labels = component_labels(g);
    let count = labels.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut comps = vec![Vec::new(); count];
    for (v, &c) in labels.iter().enumerate() {
        comps[c].push(v);
    }
    comps
}

/// Component index of each vertex, numbered by smallest vertex.
pub fn component_labels(g: &Graph) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.num_vertices()];
    let mut next = 0;
    for s in 0..g.num_vertices() {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &h in g.star(v) {
                let w = g.root(g.partner(h));
                if label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// BFS spanning tree from vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub tree_edges: Vec<usize>,
    /// Complementary edges sorted by id.
    pub complement: Vec<usize>,
    /// For each non-root vertex the half-edge at it pointing towards the parent.
    pub parent: Vec<Option<usize>>,
}

pub fn spanning_tree(g: &Graph) -> Result<SpanningTree> {
    if !g.is_connected() {
        return Err(Error::Disconnected("spanning tree"));
    }
    let n = g.num_vertices();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; g.num_edges()];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back(0);
    while let Some(v) = queue.pop_front() {
        let mut out: Vec<usize> = g.star(v).to_vec();
        out.sort_by_key(|&h| (g.edge_of(h), h));
        for h in out {
            let w = g.root(g.partner(h));
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(g.partner(h));
                in_tree[g.edge_of(h)] = true;
                queue.push_back(w);
            }
        }
    }
    let tree_edges = (0..g.num_edges()).filter(|&e| in_tree[e]).collect();
    let complement = (0..g.num_edges()).filter(|&e| !in_tree[e]).collect();
    Ok(SpanningTree {
        tree_edges,
        complement,
        parent,
    })
}

impl SpanningTree {
    /// Chain of the tree path from `v` up to the root vertex.
    fn to_root(&self, g: &Graph, mut v: usize) -> Vec<i64> {
        let mut chain = vec![0; g.num_edges()];
        while let Some(h) = self.parent[v] {
            chain[g.edge_of(h)] += g.orientation(h);
            v = g.root(g.partner(h));
        }
        chain
    }

    /// Chain of the tree path from `u` to `w`.
    pub fn path(&self, g: &Graph, u: usize, w: usize) -> Vec<i64> {
        let a = self.to_root(g, u);
        let b = self.to_root(g, w);
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    }

    /// Fundamental cycle of a complementary edge, with coefficient +1 on it.
    pub fn fundamental_cycle(&self, g: &Graph, e: usize) -> Vec<i64> {
        let (u, w) = g.edge_ends(e);
        let mut z = self.path(g, w, u);
        z[e] += 1;
        z
    }
}

/// Chain of a closed or open vertex walk, using the lowest numbered edge between
/// consecutive vertices.
pub fn walk_chain(g: &Graph, walk: &[usize]) -> Result<Vec<i64>> {
    let mut z = vec![0; g.num_edges()];
    for w in walk.windows(2) {
        let h = g
            .star(w[0])
            .iter()
            .copied()
            .filter(|&h| g.root(g.partner(h)) == w[1])
            .min_by_key(|&h| g.edge_of(h))
            .ok_or_else(|| Error::Dimension(format!("no edge from v{} to v{}", w[0], w[1])))?;
        z[g.edge_of(h)] += g.orientation(h);
    }
    Ok(z)
}

/// Boundary of an edge chain, as vertex coefficients.
pub fn boundary(g: &Graph, chain: &[i64]) -> Vec<i64> {
    let mut b = vec![0; g.num_vertices()];
    for (e, &c) in chain.iter().enumerate() {
        let (u, w) = g.edge_ends(e);
        b[w] += c;
        b[u] -= c;
    }
    b
}
