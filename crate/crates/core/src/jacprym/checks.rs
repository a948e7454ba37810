use num_bigint::BigInt;

use super::prym::{jacobian, prym, Jacobian, PrymData};
use crate::error::{precondition, Error, Result};
use crate::graph::genus;
use crate::metric::{induce_metric, MetricGraph};
use crate::morphism::Tower;
use crate::ngonal::{bigonal, trigonal, Bigonal, BigonalType, Trigonal};
use crate::tori::{
    dual_polarization_with_exponent, polarization_type, polarized_isomorphic, PolarizedTorus,
    TorusHom,
};

/// Prym of the double cover of a tower, with metrics induced from the base.
pub fn tower_prym(t: &Tower, base: &MetricGraph) -> Result<PrymData> {
    let middle = induce_metric(&t.f, base)?;
    prym(&t.pi, &middle)
}

#[derive(Clone, Debug)]
pub struct BigonalDuality {
    pub input: PrymData,
    pub bigonal: Bigonal,
    pub output: PrymData,
    /// The dual of the output Prym with the complementary polarization `2ξ⁻¹`.
    pub dual: PolarizedTorus,
    pub types_dual: bool,
    pub witness: Option<TorusHom>,
}

impl BigonalDuality {
    pub fn pass(&self) -> bool {
        self.types_dual && self.witness.is_some()
    }
}

pub fn check_bigonal_duality(t: &Tower, base: &MetricGraph) -> Result<BigonalDuality> {
    if t.f.global_degree() != Some(2) {
        return Err(precondition(
            "deg f = 2",
            format!("deg f = {:?}", t.f.global_degree()),
        ));
    }
    if !t.top().is_connected() {
        return Err(precondition("Γ̃ connected", "Γ̃ disconnected"));
    }
    let b = bigonal(t)?;
    if b.input_types.contains(&BigonalType::V) {
        return Err(precondition("generic tower", "base has a point of type V"));
    }
    if !b.tower.top().is_connected() {
        return Err(precondition("P̃ connected", "P̃ disconnected"));
    }
    let input = tower_prym(t, base)?;
    let output = tower_prym(&b.tower, base)?;
    let torus = output.polarized.torus.dual();
    let xi = dual_polarization_with_exponent(
        &output.polarized.torus,
        &output.polarized.xi,
        &BigInt::from(2),
    )?;
    let dual = PolarizedTorus { torus, xi };
    let types_dual = polarization_type(&dual.xi) == input.polarization_type;
    let witness = if input.rank() == dual.rank() {
        polarized_isomorphic(
            &input.polarized.torus,
            &input.polarized.xi,
            &dual.torus,
            &dual.xi,
        )?
    } else {
        None
    };
    Ok(BigonalDuality {
        input,
        bigonal: b,
        output,
        dual,
        types_dual,
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct TrigonalPrym {
    pub prym: PrymData,
    pub trigonal: Trigonal,
    pub pi_metric: MetricGraph,
    pub jacobian: Jacobian,
    pub witness: Option<TorusHom>,
}

impl TrigonalPrym {
    pub fn pass(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn check_trigonal_prym(t: &Tower, base: &MetricGraph) -> Result<TrigonalPrym> {
    if !t.top().is_connected() {
        return Err(precondition("Γ̃ connected", "Γ̃ disconnected"));
    }
    let tri = trigonal(t)?;
    let pi_metric = induce_metric(&tri.map, base)?;
    let jac = jacobian(&pi_metric)?;
    let prym = tower_prym(t, base)?;
    let g_pi = genus(&pi_metric.graph)?;
    if g_pi != prym.rank() as i64 || g_pi != genus(t.middle())? - 1 {
        return Err(Error::Invariant(format!(
            "g(Π) = {g_pi}, Prym rank {}, g(Γ) = {}",
            prym.rank(),
            genus(t.middle())?
        )));
    }
    let pp = prym.principal_model();
    let witness = polarized_isomorphic(&pp.torus, &pp.xi, &jac.polarized.torus, &jac.polarized.xi)?;
    Ok(TrigonalPrym {
        prym,
        trigonal: tri,
        pi_metric,
        jacobian: jac,
        witness,
    })
}
