use crate::error::{Error, Result};
use crate::graph::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Free,
    Dilated,
}

/// One point of `f⁻¹(x)` with its local degree and its preimages in the double cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub id: Point,
    pub d: u64,
    pub status: Status,
    /// `[ỹ]` when dilated, `[ỹ⁺, ỹ⁻]` (by id order) when free.
    pub lifts: Vec<Point>,
}

/// The signed partition describing the fiber of a tower over `point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDatum {
    pub point: Point,
    pub parts: Vec<Part>,
}

impl FiberDatum {
    /// A datum without lift information, for standalone use.
    pub fn from_parts(point: Point, parts: &[(u64, Status)]) -> Self {
        FiberDatum {
            point,
            parts: parts
                .iter()
                .enumerate()
                .map(|(i, &(d, status))| Part {
                    id: Point::Vertex(i),
                    d,
                    status,
                    lifts: Vec::new(),
                })
                .collect(),
        }
    }

    pub fn n(&self) -> u64 {
        self.parts.iter().map(|p| p.d).sum()
    }

    pub fn is_free(&self) -> bool {
        self.parts.iter().all(|p| p.status == Status::Free)
    }
}

/// Coefficients `(a₊, a₋)` per part; dilated parts are stored as `(d, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisection {
    pub coeffs: Vec<(u64, u64)>,
}

impl Multisection {
    /// The multisection with all signs exchanged.
    pub fn swapped(&self, fd: &FiberDatum) -> Multisection {
        Multisection {
            coeffs: self
                .coeffs
                .iter()
                .zip(&fd.parts)
                .map(|(&(a, b), p)| match p.status {
                    Status::Free => (b, a),
                    Status::Dilated => (a, b),
                })
                .collect(),
        }
    }

    /// Human-readable sum over the lifts, e.g. `2v3 + v5`.
    pub fn describe(&self, fd: &FiberDatum) -> String {
        let mut terms = Vec::new();
        for (&(a, b), p) in self.coeffs.iter().zip(&fd.parts) {
            let pairs: Vec<(u64, Point)> = match p.status {
                Status::Dilated => vec![(a, p.lifts[0])],
                Status::Free => vec![(a, p.lifts[0]), (b, p.lifts[1])],
            };
            for (c, q) in pairs {
                match c {
                    0 => {}
                    1 => terms.push(q.to_string()),
                    _ => terms.push(format!("{c}{q}")),
                }
            }
        }
        terms.join(" + ")
    }
}

/// All multisections in lexicographic order of their coefficient vectors.
pub fn multisections(fd: &FiberDatum) -> Vec<Multisection> {
    let mut out = vec![Vec::new()];
    for p in &fd.parts {
        let options: Vec<(u64, u64)> = match p.status {
            Status::Dilated => vec![(p.d, 0)],
            Status::Free => (0..=p.d).map(|a| (a, p.d - a)).collect(),
        };
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<(u64, u64)>| {
                options.iter().map(move |&o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|coeffs| Multisection { coeffs })
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of sections inducing the multisection.
pub fn multisection_degree(fd: &FiberDatum, ms: &Multisection) -> u64 {
    ms.coeffs
        .iter()
        .zip(&fd.parts)
        .map(|(&(a, _), p)| match p.status {
            Status::Free => binomial(p.d, a),
            Status::Dilated => 1 << p.d,
        })
        .product()
}

/// `(-1)^{Σ a₊}`, defined only over free fibers.
pub fn multisection_sign(fd: &FiberDatum, ms: &Multisection) -> Result<i8> {
    if !fd.is_free() {
        return Err(Error::SignUndefined);
    }
    let s: u64 = ms.coeffs.iter().map(|&(a, _)| a).sum();
    Ok(if s % 2 == 0 { 1 } else { -1 })
}

/// Maps each fine part to a coarse part; the flag says whether `+` goes to `+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub map: Vec<(usize, bool)>,
}

/// Pushes coefficients along a refinement of signed partitions.
pub fn induce_multisection(
    fine: &FiberDatum,
    coarse: &FiberDatum,
    r: &Refinement,
    ms: &Multisection,
) -> Result<Multisection> {
    let mut coeffs = vec![(0u64, 0u64); coarse.parts.len()];
    for (i, &(j, same)) in r.map.iter().enumerate() {
        let (a, b) = ms.coeffs[i];
        let fp = &fine.parts[i];
        let cp = coarse
            .parts
            .get(j)
            .ok_or_else(|| Error::BadRefinement(format!("part {i} maps to missing part {j}")))?;
        match (cp.status, fp.status) {
            (Status::Dilated, _) => coeffs[j].0 += a + b,
            (Status::Free, Status::Dilated) => {
                return Err(Error::BadRefinement(format!(
                    "dilated part {i} maps to free part {j}"
                )))
            }
            (Status::Free, Status::Free) => {
                if same {
                    coeffs[j].0 += a;
                    coeffs[j].1 += b;
                } else {
                    coeffs[j].0 += b;
                    coeffs[j].1 += a;
                }
            }
        }
    }
    for (j, p) in coarse.parts.iter().enumerate() {
        if coeffs[j].0 + coeffs[j].1 != p.d {
            return Err(Error::BadRefinement(format!(
                "coarse part {j} of size {} receives {}",
                p.d,
                coeffs[j].0 + coeffs[j].1
            )));
        }
        if p.status == Status::Dilated {
            coeffs[j] = (p.d, 0);
        }
    }
    Ok(Multisection { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Status::*;

    fn fd(parts: &[(u64, Status)]) -> FiberDatum {
        FiberDatum::from_parts(Point::Vertex(0), parts)
    }

    #[test]
    fn counts() {
        assert_eq!(
            multisections(&fd(&[(1, Free), (1, Free), (1, Free)])).len(),
            8
        );
        assert_eq!(multisections(&fd(&[(2, Free), (1, Free)])).len(), 6);
        assert_eq!(multisections(&fd(&[(3, Dilated)])).len(), 1);
    }

    #[test]
    fn degrees() {
        let f = fd(&[(2, Free)]);
        let ms = Multisection {
            coeffs: vec![(1, 1)],
        };
        assert_eq!(multisection_degree(&f, &ms), 2);
        let f = fd(&[(3, Free)]);
        assert_eq!(
            multisection_degree(
                &f,
                &Multisection {
                    coeffs: vec![(1, 2)]
                }
            ),
            3
        );
        let f = fd(&[(1, Dilated)]);
        assert_eq!(
            multisection_degree(
                &f,
                &Multisection {
                    coeffs: vec![(1, 0)]
                }
            ),
            2
        );
    }

    #[test]
    fn signs() {
        let f = fd(&[(2, Free), (1, Free)]);
        let ms = Multisection {
            coeffs: vec![(2, 0), (1, 0)],
        };
        assert_eq!(multisection_sign(&f, &ms).unwrap(), -1);
        let ms = Multisection {
            coeffs: vec![(0, 2), (0, 1)],
        };
        assert_eq!(multisection_sign(&f, &ms).unwrap(), 1);
        let d = fd(&[(1, Dilated), (1, Free)]);
        assert!(multisection_sign(
            &d,
            &Multisection {
                coeffs: vec![(1, 0), (1, 0)]
            }
        )
        .is_err());
    }

    #[test]
    fn inducing() {
        let fine = fd(&[(1, Free), (1, Free)]);
        let coarse = fd(&[(2, Free)]);
        let r = Refinement {
            map: vec![(0, true), (0, true)],
        };
        let ms = Multisection {
            coeffs: vec![(1, 0), (0, 1)],
        };
        let out = induce_multisection(&fine, &coarse, &r, &ms).unwrap();
        assert_eq!(out.coeffs, vec![(1, 1)]);
        assert_eq!(
            multisection_sign(&fine, &ms).unwrap(),
            multisection_sign(&coarse, &out).unwrap()
        );
        let dil = fd(&[(2, Dilated)]);
        let out = induce_multisection(&fine, &dil, &r, &ms).unwrap();
        assert_eq!(out.coeffs, vec![(2, 0)]);
        let id = Refinement {
            map: vec![(0, true), (1, true)],
        };
        assert_eq!(induce_multisection(&fine, &fine, &id, &ms).unwrap(), ms);
        let bad = fd(&[(3, Free)]);
        assert!(induce_multisection(&fine, &bad, &r, &ms).is_err());
    }
}
