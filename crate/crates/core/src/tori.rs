//! Real tori with integral structure, their homomorphisms and polarizations.
//!
//! A torus is stored as the pairing matrix `P[i][j] = [eᵢ, e′ⱼ]` between
//! bases of `Λ` and `Λ′`. A homomorphism `T₁ → T₂` is the pair `(A, B)` of
//! `f^#: Λ₂ → Λ₁` and `f_#: Λ₁′ → Λ₂′`, subject to `AᵀP₁ = P₂B`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    clear_denominators, cokernel_tf, gram_isometries, kernel_basis, snf, IntMatrix, RatMatrix,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralTorus {
    p: RatMatrix,
}

impl IntegralTorus {
    pub fn new(p: RatMatrix) -> Result<Self> {
        if !p.is_square() {
            return Err(Error::Dimension(format!(
                "pairing matrix is {}x{}",
                p.rows(),
                p.cols()
            )));
        }
        if p.rows() > 0 && p.det().is_zero() {
            return Err(Error::Dimension("degenerate pairing".into()));
        }
        Ok(IntegralTorus { p })
    }

    pub fn pairing(&self) -> &RatMatrix {
        &self.p
    }

    pub fn rank(&self) -> usize {
        self.p.rows()
    }

    /// `(Λ′, Λ, Pᵀ)`
    pub fn dual(&self) -> IntegralTorus {
        IntegralTorus {
            p: self.p.transpose(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusHom {
    pub source: IntegralTorus,
    pub target: IntegralTorus,
    /// `g₁ × g₂`
    pub a: IntMatrix,
    /// `g₂ × g₁`
    pub b: IntMatrix,
}

impl TorusHom {
    pub fn new(
        source: IntegralTorus,
        target: IntegralTorus,
        a: IntMatrix,
        b: IntMatrix,
    ) -> Result<Self> {
        let (g1, g2) = (source.rank(), target.rank());
        if a.rows() != g1 || a.cols() != g2 || b.rows() != g2 || b.cols() != g1 {
            return Err(Error::Dimension(format!(
                "A is {}x{}, B is {}x{} for ranks {g1}, {g2}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        let lhs = &a.to_rat().transpose() * &source.p;
        let rhs = &target.p * &b.to_rat();
        if lhs != rhs {
            return Err(Error::BadHom(format!("AᵀP₁ = {lhs}, P₂B = {rhs}")));
        }
        Ok(TorusHom {
            source,
            target,
            a,
            b,
        })
    }

    pub fn identity(t: &IntegralTorus) -> Self {
        let g = t.rank();
        TorusHom {
            source: t.clone(),
            target: t.clone(),
            a: IntMatrix::identity(g),
            b: IntMatrix::identity(g),
        }
    }

    /// `other ∘ self`
    pub fn then(&self, other: &TorusHom) -> Result<TorusHom> {
        if self.target != other.source {
            return Err(Error::NotComposable("torus homomorphisms".into()));
        }
        TorusHom::new(
            self.source.clone(),
            other.target.clone(),
            &self.a * &other.a,
            &other.b * &self.b,
        )
    }

    /// `f^∨ : T₂^∨ → T₁^∨`
    pub fn dual(&self) -> TorusHom {
        TorusHom {
            source: self.target.dual(),
            target: self.source.dual(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// Taxonomy of a homomorphism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HomKind {
    pub surjective: bool,
    pub finite: bool,
    pub injective: bool,
    pub isogeny: bool,
    pub free_isogeny: bool,
    pub dilation: bool,
    pub isomorphism: bool,
}

fn saturated(m: &IntMatrix) -> bool {
    snf(m).invariants().iter().all(|a| a.is_one())
}

pub fn classify_hom(h: &TorusHom) -> HomKind {
    let (g1, g2) = (h.source.rank(), h.target.rank());
    let rank = h.a.rank();
    let surjective = rank == g2;
    let finite = rank == g1;
    let injective = finite && saturated(&h.b);
    let isogeny = surjective && finite;
    let free_isogeny = isogeny && h.a.is_unimodular();
    let dilation = isogeny && h.b.is_unimodular();
    HomKind {
        surjective,
        finite,
        injective,
        isogeny,
        free_isogeny,
        dilation,
        isomorphism: free_isogeny && dilation,
    }
}

/// `h = dilation ∘ free`, through `Σ₃ = (Λ₁, Λ₂′)`.
#[derive(Clone, Debug)]
pub struct IsogenyFactorization {
    pub middle: IntegralTorus,
    pub free: TorusHom,
    pub dilation: TorusHom,
}

pub fn factor_isogeny(h: &TorusHom) -> Result<IsogenyFactorization> {
    if !classify_hom(h).isogeny {
        return Err(Error::NotIsogeny(format!("A = {}", h.a)));
    }
    let b_inv = h.b.to_rat().inverse().expect("isogeny has invertible B");
    let middle = IntegralTorus::new(&h.source.p * &b_inv)?;
    let g = h.source.rank();
    let free = TorusHom::new(
        h.source.clone(),
        middle.clone(),
        IntMatrix::identity(g),
        h.b.clone(),
    )?;
    let dilation = TorusHom::new(
        middle.clone(),
        h.target.clone(),
        h.a.clone(),
        IntMatrix::identity(g),
    )?;
    let composite = free.then(&dilation)?;
    if composite.a != h.a || composite.b != h.b {
        return Err(Error::Invariant(
            "isogeny factors do not compose back".into(),
        ));
    }
    Ok(IsogenyFactorization {
        middle,
        free,
        dilation,
    })
}

/// `(Ker h)₀` with its inclusion into the source.
#[derive(Clone, Debug)]
pub struct KernelTorus {
    pub torus: IntegralTorus,
    pub inclusion: TorusHom,
}

pub fn kernel_torus(h: &TorusHom) -> Result<KernelTorus> {
    let c = cokernel_tf(&h.a);
    let kb = kernel_basis(&h.b);
    if c.rank != kb.cols() {
        return Err(Error::Invariant(format!(
            "coker A has rank {}, ker B has rank {}",
            c.rank,
            kb.cols()
        )));
    }
    let torus = IntegralTorus::new(&(&c.lifts.to_rat().transpose() * &h.source.p) * &kb.to_rat())?;
    let inclusion = TorusHom::new(torus.clone(), h.source.clone(), c.projection, kb)?;
    Ok(KernelTorus { torus, inclusion })
}

/// `Coker h` with the projection from the target.
#[derive(Clone, Debug)]
pub struct CokernelTorus {
    pub torus: IntegralTorus,
    pub projection: TorusHom,
}

pub fn cokernel_torus(h: &TorusHom) -> Result<CokernelTorus> {
    let ka = kernel_basis(&h.a);
    let c = cokernel_tf(&h.b);
    if c.rank != ka.cols() {
        return Err(Error::Invariant(format!(
            "ker A has rank {}, coker B has rank {}",
            ka.cols(),
            c.rank
        )));
    }
    let torus = IntegralTorus::new(&(&ka.to_rat().transpose() * &h.target.p) * &c.lifts.to_rat())?;
    let projection = TorusHom::new(h.target.clone(), torus.clone(), ka, c.projection)?;
    Ok(CokernelTorus { torus, projection })
}

/// `ξ: Λ′ → Λ` with `Q = XᵀP` symmetric positive definite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub x: IntMatrix,
}

impl Polarization {
    pub fn new(t: &IntegralTorus, x: IntMatrix) -> Result<Self> {
        if x.rows() != t.rank() || x.cols() != t.rank() {
            return Err(Error::Dimension(format!(
                "polarization is {}x{} on a rank {} torus",
                x.rows(),
                x.cols(),
                t.rank()
            )));
        }
        let q = &x.to_rat().transpose() * &t.p;
        if !q.is_symmetric() || !q.is_positive_definite() {
            return Err(Error::NotPolarization(format!("form {q}")));
        }
        Ok(Polarization { x })
    }

    pub fn principal(t: &IntegralTorus) -> Result<Self> {
        Polarization::new(t, IntMatrix::identity(t.rank()))
    }

    /// The form `(λ′, μ′) = [ξλ′, μ′]`.
    pub fn form(&self, t: &IntegralTorus) -> RatMatrix {
        &self.x.to_rat().transpose() * &t.p
    }

    pub fn is_principal(&self) -> bool {
        self.x.is_unimodular()
    }
}

/// A torus together with a polarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedTorus {
    pub torus: IntegralTorus,
    pub xi: Polarization,
}

impl PolarizedTorus {
    pub fn new(torus: IntegralTorus, x: IntMatrix) -> Result<Self> {
        let xi = Polarization::new(&torus, x)?;
        Ok(PolarizedTorus { torus, xi })
    }

    /// `Q = XᵀP`
    pub fn form(&self) -> RatMatrix {
        self.xi.form(&self.torus)
    }

    pub fn rank(&self) -> usize {
        self.torus.rank()
    }
}

/// Pullback of a polarization along a finite homomorphism into its torus.
pub fn induced_polarization(h: &TorusHom, xi: &Polarization) -> Result<Polarization> {
    if !classify_hom(h).finite {
        return Err(Error::NotPolarization(
            "pullback along a non-finite map".into(),
        ));
    }
    Polarization::new(&h.source, &(&h.a * &xi.x) * &h.b)
}

/// Invariant factors of `X`.
pub fn polarization_type(xi: &Polarization) -> Vec<BigInt> {
    snf(&xi.x).invariants()
}

/// Principal model of a polarized torus.
#[derive(Clone, Debug)]
pub struct PpRescale {
    pub torus: IntegralTorus,
    pub zeta: Polarization,
    /// A dilation `T^pp → T` with `f*ξ = scale · ζ`.
    pub dilation: TorusHom,
    pub scale: BigInt,
}

pub fn pp_rescale(t: &IntegralTorus, xi: &Polarization) -> Result<PpRescale> {
    let g = t.rank();
    let s = snf(&xi.x);
    if s.rank != g {
        return Err(Error::NotPolarization("degenerate".into()));
    }
    let a = s.invariants();
    let top = a.last().cloned().unwrap_or_else(BigInt::one);
    let p_new = &(&s.u_inv.to_rat().transpose() * &t.p) * &s.v.to_rat();
    let shrink = RatMatrix::diagonal(
        &a.iter()
            .map(|ai| BigRational::new(ai.clone(), top.clone()))
            .collect::<Vec<_>>(),
    );
    let torus = IntegralTorus::new(&shrink * &p_new)?;
    let zeta = Polarization::principal(&torus)?;
    let stretch = IntMatrix::diagonal(&a.iter().map(|ai| &top / ai).collect::<Vec<_>>());
    let dilation = TorusHom::new(torus.clone(), t.clone(), &stretch * &s.u, s.v.clone())?;
    let pulled = induced_polarization(&dilation, xi)?;
    if pulled.x != IntMatrix::identity(g).scale(&top) {
        return Err(Error::Invariant(format!("f*ξ = {}", pulled.x)));
    }
    Ok(PpRescale {
        torus,
        zeta,
        dilation,
        scale: top,
    })
}

/// `ξ^∨` on the dual torus, with `ξ^∨(eᵢ) = (e/aᵢ)e′ᵢ` in adapted bases.
/// Every invariant factor must divide `e`.
pub fn dual_polarization_with_exponent(
    t: &IntegralTorus,
    xi: &Polarization,
    e: &BigInt,
) -> Result<Polarization> {
    let s = snf(&xi.x);
    let c: Vec<BigInt> = s
        .invariants()
        .iter()
        .map(|ai| {
            let (q, r) = e.div_rem(ai);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::NotPolarization(format!("{ai} does not divide {e}")))
            }
        })
        .collect::<Result<_>>()?;
    let x = &(&s.v * &IntMatrix::diagonal(&c)) * &s.u;
    let dual = Polarization::new(&t.dual(), x)?;
    let g = t.rank();
    let id = IntMatrix::identity(g).scale(e);
    if &xi.x * &dual.x != id || &dual.x * &xi.x != id {
        return Err(Error::Invariant(
            "ξ∘ξ^∨ is not a multiple of the identity".into(),
        ));
    }
    Ok(dual)
}

/// `ξ^∨` with `e = a₁·a_g`.
pub fn dual_polarization(t: &IntegralTorus, xi: &Polarization) -> Result<Polarization> {
    let a = polarization_type(xi);
    let e = match (a.first(), a.last()) {
        (Some(x), Some(y)) => x * y,
        _ => BigInt::one(),
    };
    dual_polarization_with_exponent(t, xi, &e)
}

/// Smallest `e` with `ξ^∨ = eξ⁻¹` integral, i.e. `a_g`.
pub fn exponent(xi: &Polarization) -> BigInt {
    polarization_type(xi)
        .last()
        .cloned()
        .unwrap_or_else(BigInt::one)
}

/// An isomorphism `(A, B): T₁ → T₂` with `f*ξ₂ = ξ₁`, if one exists.
pub fn polarized_isomorphic(
    t1: &IntegralTorus,
    xi1: &Polarization,
    t2: &IntegralTorus,
    xi2: &Polarization,
) -> Result<Option<TorusHom>> {
    if t1.rank() != t2.rank() {
        return Err(Error::Dimension(format!(
            "ranks {} and {}",
            t1.rank(),
            t2.rank()
        )));
    }
    let (q1, q2) = clear_denominators(&xi1.form(t1), &xi2.form(t2));
    let p1_inv_t = t1.p.inverse().expect("nondegenerate").transpose();
    let p2_t = t2.p.transpose();
    for b in gram_isometries(&q1, &q2)? {
        let a = &(&p1_inv_t * &b.to_rat().transpose()) * &p2_t;
        let Some(a) = a.to_int() else { continue };
        if !a.det().abs().is_one() {
            continue;
        }
        let h = TorusHom::new(t1.clone(), t2.clone(), a, b)?;
        if &(&h.a * &xi2.x) * &h.b != xi1.x {
            return Err(Error::Invariant(
                "witness does not pull back the polarization".into(),
            ));
        }
        return Ok(Some(h));
    }
    Ok(None)
}
