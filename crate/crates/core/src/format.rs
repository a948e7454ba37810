//! JSON tower files.
//!
//! A file has a `base` graph with edge lengths, a list of `levels` and `meta`
//! annotations. Level 0 maps onto the base and level `i + 1` onto the source of
//! level `i`; a tower `Γ̃ → Γ → K` has two levels. Half-edges are numbered from
//! 0 and an edge is the pair of its two half-edges. Lengths are strings `"p/q"`,
//! `"n"` or `"inf"`, never floats.
//!
//! A random generator never marks an edge dilated under `π` unless both its end
//! vertices are dilated: the local degree sum at a free vertex over a dilated
//! edge would be 2 instead of 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Report, Result};
use crate::graph::{validate_graph, Graph};
use crate::metric::{ExtLength, MetricGraph};
use crate::morphism::{validate_harmonic, DoubleCover, GraphMorphism, HarmonicMorphism, Tower};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSection {
    pub vertices: usize,
    pub roots: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub lengths: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Degrees {
    pub vertices: Vec<u64>,
    pub half_edges: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Level {
    pub vertices: usize,
    pub half_edges: usize,
    pub roots: Vec<usize>,
    pub partners: Vec<usize>,
    pub vmap: Vec<usize>,
    pub hmap: Vec<usize>,
    pub deg: Degrees,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerFile {
    pub base: BaseSection,
    pub levels: Vec<Level>,
    #[serde(default)]
    pub meta: Meta,
}

/// A validated file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub base: MetricGraph,
    pub levels: Vec<HarmonicMorphism>,
    pub meta: Meta,
}

impl Loaded {
    /// The two levels as a tower `Γ̃ → Γ → K`.
    pub fn tower(&self) -> Result<Tower> {
        match self.levels.as_slice() {
            [f, pi] => Tower::new(DoubleCover::new(pi.clone())?, f.clone()),
            other => Err(Error::Format(format!(
                "expected 2 levels, found {}",
                other.len()
            ))),
        }
    }

    /// The single level as a cover of the base.
    pub fn cover(&self) -> Result<&HarmonicMorphism> {
        match self.levels.as_slice() {
            [f] => Ok(f),
            other => Err(Error::Format(format!(
                "expected 1 level, found {}",
                other.len()
            ))),
        }
    }
}

fn base_section(m: &MetricGraph) -> BaseSection {
    let g = &m.graph;
    BaseSection {
        vertices: g.num_vertices(),
        roots: g.roots().to_vec(),
        edges: (0..g.num_edges())
            .map(|e| {
                let h = g.edge_tail_half(e);
                [h, g.partner(h)]
            })
            .collect(),
        lengths: m.lengths.iter().map(|l| l.to_string()).collect(),
    }
}

fn level(f: &HarmonicMorphism) -> Level {
    let s = f.source();
    Level {
        vertices: s.num_vertices(),
        half_edges: s.num_half_edges(),
        roots: s.roots().to_vec(),
        partners: s.partners().to_vec(),
        vmap: f.vmap().to_vec(),
        hmap: f.hmap().to_vec(),
        deg: Degrees {
            vertices: f.vdeg().to_vec(),
            half_edges: f.hdeg().to_vec(),
        },
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

impl TowerFile {
    pub fn from_levels(base: &MetricGraph, levels: &[&HarmonicMorphism], meta: Meta) -> Self {
        TowerFile {
            base: base_section(base),
            levels: levels.iter().map(|f| level(f)).collect(),
            meta,
        }
    }

    pub fn from_tower(t: &Tower, base: &MetricGraph, meta: Meta) -> Self {
        Self::from_levels(base, &[&t.f, t.pi.cover()], meta)
    }

    pub fn from_cover(f: &HarmonicMorphism, base: &MetricGraph, meta: Meta) -> Self {
        Self::from_levels(base, &[f], meta)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_error)
    }

    /// Canonical text: two-space indentation and a final newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    fn base_graph(&self, r: &mut Report) -> Option<Graph> {
        let b = &self.base;
        let nh = b.roots.len();
        let mut partner = vec![usize::MAX; nh];
        for (k, &[h, j]) in b.edges.iter().enumerate() {
            for x in [h, j] {
                if x >= nh {
                    r.push(format!("base edge {k} uses undefined half-edge h{x}"));
                    return None;
                }
                if partner[x] != usize::MAX {
                    r.push(format!("base half-edge h{x} lies on two edges"));
                    return None;
                }
            }
            partner[h] = j;
            partner[j] = h;
        }
        if let Some(h) = partner.iter().position(|&p| p == usize::MAX) {
            r.push(format!("base half-edge h{h} lies on no edge"));
            return None;
        }
        let rep = validate_graph(b.vertices, &b.roots, &partner);
        if !rep.is_valid() {
            r.push(format!("base: {rep}"));
            return None;
        }
        Graph::new(b.vertices, b.roots.clone(), partner).ok()
    }

    fn base_metric(&self, g: Graph, r: &mut Report) -> Option<MetricGraph> {
        let b = &self.base;
        if b.lengths.len() != b.edges.len() {
            r.push(format!(
                "{} lengths for {} base edges",
                b.lengths.len(),
                b.edges.len()
            ));
            return None;
        }
        let mut lengths = vec![ExtLength::Infinite; g.num_edges()];
        for (&[h, _], s) in b.edges.iter().zip(&b.lengths) {
            match s.parse::<ExtLength>() {
                Ok(l) => lengths[g.edge_of(h)] = l,
                Err(e) => {
                    r.push(e.to_string());
                    return None;
                }
            }
        }
        let m = MetricGraph {
            graph: g,
            lengths,
            smooth: false,
        };
        let rep = m.validate();
        if !rep.is_valid() {
            r.push(format!("base metric: {rep}"));
            return None;
        }
        Some(m)
    }

    /// Builds every level, collecting all violations.
    pub fn check(&self) -> (Report, Option<Loaded>) {
        let mut r = Report::new();
        let Some(g) = self.base_graph(&mut r) else {
            return (r, None);
        };
        let Some(base) = self.base_metric(g, &mut r) else {
            return (r, None);
        };
        let mut levels: Vec<HarmonicMorphism> = Vec::new();
        for (i, l) in self.levels.iter().enumerate() {
            let target = levels.last().map_or(&base.graph, |f| f.source()).clone();
            if l.roots.len() != l.half_edges {
                r.push(format!(
                    "level {i}: {} roots for {} half-edges",
                    l.roots.len(),
                    l.half_edges
                ));
                return (r, None);
            }
            let rep = validate_graph(l.vertices, &l.roots, &l.partners);
            if !rep.is_valid() {
                r.push(format!("level {i}: {rep}"));
                return (r, None);
            }
            let source = match Graph::new(l.vertices, l.roots.clone(), l.partners.clone()) {
                Ok(g) => g,
                Err(e) => {
                    r.push(format!("level {i}: {e}"));
                    return (r, None);
                }
            };
            let m = GraphMorphism {
                source,
                target,
                vmap: l.vmap.clone(),
                hmap: l.hmap.clone(),
            };
            let hr = validate_harmonic(&m, &l.deg.vertices, &l.deg.half_edges);
            if !hr.report.is_valid() {
                for e in hr.report.entries {
                    r.push(format!("level {i}: {e}"));
                }
                return (r, None);
            }
            match HarmonicMorphism::new(
                m.source,
                m.target,
                m.vmap,
                m.hmap,
                l.deg.vertices.clone(),
                l.deg.half_edges.clone(),
            ) {
                Ok(f) => levels.push(f),
                Err(e) => {
                    r.push(format!("level {i}: {e}"));
                    return (r, None);
                }
            }
        }
        if let [_, pi] = levels.as_slice() {
            if pi.global_degree() != Some(2) {
                r.push(format!(
                    "level 1 has degree {:?}, expected 2",
                    pi.global_degree()
                ));
            }
        }
        let loaded = Loaded {
            base,
            levels,
            meta: self.meta.clone(),
        };
        (r, Some(loaded))
    }

    pub fn validate(&self) -> Report {
        self.check().0
    }

    pub fn load(&self) -> Result<Loaded> {
        match self.check() {
            (r, Some(l)) if r.is_valid() => Ok(l),
            (r, _) => Err(Error::Format(r.to_string())),
        }
    }
}

/// Parses and loads in one step.
pub fn read_tower_file(text: &str) -> Result<Loaded> {
    TowerFile::parse(text)?.load()
}
