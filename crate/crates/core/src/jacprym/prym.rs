use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::homology::{h1_basis, transfer_maps, CycleBasis, TransferMaps};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_tf, IntMatrix, RatMatrix};
use crate::metric::{chain_length, induce_metric, MetricGraph};
use crate::morphism::{dilation_data, DilationData, DoubleCover};
use crate::tori::{
    induced_polarization, kernel_torus, polarization_type, pp_rescale, IntegralTorus, KernelTorus,
    PolarizedTorus, PpRescale, TorusHom,
};

/// Integration pairing `Σ aₑbₑℓ(e)` between two families of cycles.
pub fn pairing_matrix(m: &MetricGraph, rows: &[Vec<i64>], cols: &[Vec<i64>]) -> Result<RatMatrix> {
    let mut out = RatMatrix::zeros(rows.len(), cols.len());
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in cols.iter().enumerate() {
            out.set(i, j, chain_length(m, a, b)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Jacobian {
    pub basis: CycleBasis,
    pub polarized: PolarizedTorus,
}

impl Jacobian {
    pub fn gram(&self) -> &RatMatrix {
        self.polarized.torus.pairing()
    }
}

pub fn jacobian(m: &MetricGraph) -> Result<Jacobian> {
    let basis = h1_basis(&m.graph)?;
    let gram = pairing_matrix(m, &basis.cycles, &basis.cycles)?;
    let g = basis.genus();
    let polarized = PolarizedTorus::new(IntegralTorus::new(gram)?, IntMatrix::identity(g))?;
    Ok(Jacobian { basis, polarized })
}

/// `Nm = (π^*, π_*) : Jac(Γ̃) → Jac(Γ)` for a metric on `Γ`; `Γ̃` gets the induced metric.
#[derive(Clone, Debug)]
pub struct Norm {
    pub top_metric: MetricGraph,
    pub top: Jacobian,
    pub bottom: Jacobian,
    pub transfer: TransferMaps,
    pub hom: TorusHom,
}

pub fn norm_hom(c: &DoubleCover, bottom_metric: &MetricGraph) -> Result<Norm> {
    let top_metric = induce_metric(c.cover(), bottom_metric)?;
    let top = jacobian(&top_metric)?;
    let bottom = jacobian(bottom_metric)?;
    let transfer = transfer_maps(c)?;
    let hom = TorusHom::new(
        top.polarized.torus.clone(),
        bottom.polarized.torus.clone(),
        transfer.pull.clone(),
        transfer.push.clone(),
    )?;
    Ok(Norm {
        top_metric,
        top,
        bottom,
        transfer,
        hom,
    })
}

/// `(Ker Nm)₀` with its induced polarization and principal model.
#[derive(Clone, Debug)]
pub struct PrymData {
    pub norm: Norm,
    pub kernel: KernelTorus,
    pub polarized: PolarizedTorus,
    pub principal: PpRescale,
    pub dilation: DilationData,
    pub polarization_type: Vec<BigInt>,
}

impl PrymData {
    pub fn rank(&self) -> usize {
        self.polarized.rank()
    }

    pub fn principal_model(&self) -> PolarizedTorus {
        PolarizedTorus {
            torus: self.principal.torus.clone(),
            xi: self.principal.zeta.clone(),
        }
    }

    /// Cycles of `Γ̃` lifting the basis of `(coker π^*)^tf`.
    pub fn lattice_lifts(&self) -> Vec<Vec<i64>> {
        let lifts = cokernel_tf(&self.norm.transfer.pull).lifts;
        let basis = &self.norm.top.basis;
        (0..lifts.cols())
            .map(|j| basis.chain(&to_i64(&lifts.column(j))))
            .collect()
    }

    /// Cycles of `Γ̃` forming the basis of `ker π_*`.
    pub fn dual_lattice_cycles(&self) -> Vec<Vec<i64>> {
        let b = &self.kernel.inclusion.b;
        let basis = &self.norm.top.basis;
        (0..b.cols())
            .map(|j| basis.chain(&to_i64(&b.column(j))))
            .collect()
    }

    /// The Prym pairing between given cycle representatives of `Λ` and `Λ′`,
    /// after checking that they form bases.
    pub fn pairing_in(&self, lambda: &[Vec<i64>], dual: &[Vec<i64>]) -> Result<RatMatrix> {
        let basis = &self.norm.top.basis;
        let g = self.rank();
        if lambda.len() != g || dual.len() != g {
            return Err(Error::Dimension(format!(
                "{} and {} cycles for a rank {g} Prym",
                lambda.len(),
                dual.len()
            )));
        }
        let proj = &self.kernel.inclusion.a;
        let l = proj * &basis.coord_matrix(lambda)?;
        if !l.det().abs().is_one() {
            return Err(Error::Dimension(
                "cycles do not project to a lattice basis".into(),
            ));
        }
        let d = basis.coord_matrix(dual)?;
        let push = &self.norm.transfer.push * &d;
        if !push.is_zero() {
            return Err(Error::Dimension("dual cycles are not in ker π_*".into()));
        }
        // coordinates in the kernel basis must be integral and unimodular
        let kb = self.kernel.inclusion.b.to_rat();
        let kt = kb.transpose();
        let left = (&kt * &kb).inverse().expect("kernel basis has full rank");
        let m = &(&left * &kt) * &d.to_rat();
        if &kb * &m != d.to_rat() {
            return Err(Error::Dimension("dual cycles outside ker π_*".into()));
        }
        match m.to_int() {
            Some(m) if m.det().abs().is_one() => {}
            _ => {
                return Err(Error::Dimension(
                    "dual cycles are not a basis of ker π_*".into(),
                ))
            }
        }
        pairing_matrix(&self.norm.top_metric, lambda, dual)
    }
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| i64::try_from(x).expect("cycle coordinates fit in i64"))
        .collect()
}

pub fn prym(c: &DoubleCover, bottom_metric: &MetricGraph) -> Result<PrymData> {
    if !c.source().is_connected() {
        return Err(Error::Disconnected("Prym variety"));
    }
    let dilation = dilation_data(c)?;
    let norm = norm_hom(c, bottom_metric)?;
    let kernel = kernel_torus(&norm.hom)?;
    let xi = induced_polarization(&kernel.inclusion, &norm.top.polarized.xi)?;
    let polarization_type = polarization_type(&xi);
    let mut expected = vec![BigInt::one(); dilation.b as usize];
    expected.extend(std::iter::repeat_n(BigInt::from(2), dilation.a as usize));
    if polarization_type != expected {
        return Err(Error::Invariant(format!(
            "Prym polarization type {polarization_type:?}, expected (1^{}, 2^{})",
            dilation.b, dilation.a
        )));
    }
    // well-definedness of the pairing on coset representatives
    let check = &(&norm.transfer.pull.to_rat().transpose() * norm.top.polarized.torus.pairing())
        * &kernel.inclusion.b.to_rat();
    if !check.is_zero() {
        return Err(Error::Invariant(
            "π^*H₁(Γ) does not pair to zero with ker π_*".into(),
        ));
    }
    let polarized = PolarizedTorus {
        torus: kernel.torus.clone(),
        xi,
    };
    if !polarized.form().is_positive_definite() {
        return Err(Error::Invariant(
            "Prym form is not positive definite".into(),
        ));
    }
    let principal = pp_rescale(&polarized.torus, &polarized.xi)?;
    Ok(PrymData {
        norm,
        kernel,
        polarized,
        principal,
        dilation,
        polarization_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bigonal_example, free_double_cover, path_metric};
    use crate::graph::tests::theta;
    use crate::graph::Graph;
    use crate::linalg::int;
    use crate::metric::ExtLength;

    #[test]
    fn jacobian_grams() {
        let lp = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let j = jacobian(&MetricGraph::uniform(lp, 3)).unwrap();
        assert_eq!(*j.gram(), RatMatrix::from_i64(&[&[3]]));
        // weighted spanning tree count pq + qr + rp
        let m = MetricGraph::new(theta(), (1..=3).map(ExtLength::integer).collect()).unwrap();
        let j = jacobian(&m).unwrap();
        assert_eq!(j.gram().det(), crate::linalg::rat(11, 1));
        assert!(j.polarized.xi.is_principal());
    }

    #[test]
    fn free_cover_of_theta() {
        let c = free_double_cover(&theta(), &[true, false, false]).unwrap();
        let p = prym(&c, &MetricGraph::uniform(theta(), 1)).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.polarization_type, vec![int(2)]);
        assert_eq!((p.dilation.a, p.dilation.b), (1, 0));
    }

    #[test]
    fn dilated_cover_type() {
        let t = bigonal_example();
        let middle = induce_metric(&t.f, &path_metric(&[1, 2, 3])).unwrap();
        let p = prym(&t.pi, &middle).unwrap();
        assert_eq!(p.polarization_type, vec![int(1), int(2)]);
        assert!(p.principal_model().xi.is_principal());
    }

    #[test]
    fn split_cover_rejected() {
        let c = free_double_cover(&theta(), &[false; 3]).unwrap();
        assert!(matches!(
            prym(&c, &MetricGraph::uniform(theta(), 1)),
            Err(Error::Disconnected(_))
        ));
    }
}
