//! Finite subgroups of the torus and log quotients of toric pairs.
//!
//! A finite subgroup `F ⩽ T_N` is represented by the overlattice `N′ ⊇ N`
//! with `F ≅ N′/N`. The quotient `X_σ/F` is the toric variety of the same
//! cone read in `N′`. A ray whose primitive generator `v` upstairs equals
//! `r·v′` downstairs is ramified with index `r`, and the boundary coefficient
//! descends as `d = 1 − (1 − b)/r`, which keeps the log discrepancy
//! functional unchanged.
//!
//! Only abelian (torus) quotients are modelled; a nonabelian Galois tower is
//! represented by its abelian shadow, a chain of overlattices.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Int, QVec, Rat};
use crate::cones::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::{overlattice_quotient, FiniteAbelianGroup, Lattice};
use crate::pairs::ToricPair;

/// `F = N′/N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSubgroup {
    base: Lattice,
    over: Lattice,
    group: FiniteAbelianGroup,
}

impl TorusSubgroup {
    pub fn new(base: Lattice, over: Lattice) -> Result<Self> {
        let group = overlattice_quotient(&base, &over)?;
        Ok(TorusSubgroup { base, over, group })
    }

    pub fn trivial(base: Lattice) -> Self {
        TorusSubgroup { over: base.clone(), base, group: FiniteAbelianGroup::trivial() }
    }

    /// The cyclic group `1/r(a₁, …, aₙ)` acting on `Aⁿ`.
    pub fn cyclic(r: u64, weights: &[i64]) -> Result<Self> {
        let over = Lattice::cyclic_overlattice(r, weights)?;
        TorusSubgroup::new(Lattice::standard(weights.len()), over)
    }

    pub fn base(&self) -> &Lattice {
        &self.base
    }

    pub fn overlattice(&self) -> &Lattice {
        &self.over
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> Int {
        self.group.order()
    }
}

/// `Aⁿ/(1/r(a₁, …, aₙ))` as a boundaryless pair on the orthant in `N′`.
pub fn cyclic_quotient(r: u64, weights: &[i64]) -> Result<ToricPair> {
    let over = Lattice::cyclic_overlattice(r, weights)?;
    let cone = Cone::orthant(weights.len()).in_lattice(over)?;
    Ok(ToricPair::without_boundary(cone))
}

/// Per-ray data of a quotient: upstairs primitive `v`, downstairs primitive
/// `v′`, ramification `r` with `v = r·v′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayRamification {
    pub upstairs: QVec,
    pub downstairs: QVec,
    pub index: Int,
}

/// Ramification of every ray of `sigma` (given in `F`'s base lattice), in
/// the order of the downstairs cone's rays.
pub fn ray_ramification(sigma: &Cone, f: &TorusSubgroup) -> Result<Vec<RayRamification>> {
    let down = sigma.in_lattice(f.over.clone())?;
    down.rays()
        .iter()
        .map(|vd| {
            let vu = f.base.primitive_generator(vd)?;
            let (prim, index) = f.over.primitive_on_ray(&vu)?;
            debug_assert_eq!(&prim, vd);
            Ok(RayRamification { upstairs: vu, downstairs: prim, index })
        })
        .collect()
}

/// Log quotient `(Y, B_Y)` of `(X, B)` by `F`: `p*(K_Y + B_Y) = K_X + B`.
pub fn log_quotient(pair: &ToricPair, f: &TorusSubgroup) -> Result<ToricPair> {
    if pair.lattice() != &f.base {
        return Err(ToricError::LatticeMismatch);
    }
    let down = pair.cone().in_lattice(f.over.clone())?;
    let ram = ray_ramification(pair.cone(), f)?;
    let coefficients = ram
        .iter()
        .map(|rr| {
            let b = pair.coefficient_of(&rr.upstairs).expect("ray of the upstairs cone");
            Rat::one() - (Rat::one() - b) / arith::rat_int(&rr.index)
        })
        .collect();
    ToricPair::new(down, coefficients)
}

/// Log discrepancies of one invariant toric valuation upstairs and downstairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientLdCheck {
    #[serde(with = "crate::io::rat_serde")]
    pub upstairs: Rat,
    #[serde(with = "crate::io::rat_serde")]
    pub downstairs: Rat,
    #[serde(with = "crate::io::int_serde")]
    pub ramification: Int,
}

/// Checks `a_{E_Y}(Y, B_Y) = a_E(X, B)/r` for the toric valuation of a
/// primitive interior point `v ∈ N`.
///
/// The downstairs value uses the functional solved independently on the
/// quotient pair, so this is a genuine check and not a restatement.
pub fn quotient_ld_check(pair: &ToricPair, f: &TorusSubgroup, v: &[Rat]) -> Result<QuotientLdCheck> {
    if pair.lattice() != &f.base {
        return Err(ToricError::LatticeMismatch);
    }
    if !f.base.contains(v) {
        return Err(ToricError::NotInUpstairsLattice);
    }
    if !pair.cone().relint_contains(v) {
        return Err(ToricError::NotInterior);
    }
    let (_, mult) = f.base.primitive_on_ray(v)?;
    if !mult.is_one() {
        return Err(ToricError::NotPrimitive);
    }
    let upstairs = pair.log_discrepancy(v)?;
    let quotient = log_quotient(pair, f)?;
    let (v_down, r) = f.over.primitive_on_ray(v)?;
    let downstairs = quotient.log_discrepancy(&v_down)?;
    if downstairs != &upstairs / arith::rat_int(&r) {
        return Err(ToricError::Verification(format!(
            "downstairs log discrepancy {downstairs} differs from {upstairs}/{r}"
        )));
    }
    Ok(QuotientLdCheck { upstairs, downstairs, ramification: r })
}

/// One level of a quotient tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStage {
    pub pair: ToricPair,
    pub mld: Rat,
    pub cartier_index: Int,
}

/// `N = N₀ ⊆ N₁ ⊆ … ⊆ N_k` with the induced pairs on the same cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientTower {
    pub lattices: Vec<Lattice>,
    pub stages: Vec<TowerStage>,
    /// The quotient by `N_k/N₀` in one step.
    pub one_step: ToricPair,
}

/// Builds every stage as the log quotient of the previous one and verifies
/// that the composite agrees with the one-step quotient.
pub fn quotient_tower(chain: &[Lattice], base: &ToricPair) -> Result<QuotientTower> {
    let first = chain.first().ok_or_else(|| ToricError::OutOfRange("empty lattice chain".into()))?;
    if first != base.lattice() {
        return Err(ToricError::LatticeMismatch);
    }
    if !base.is_klt() {
        return Err(ToricError::NotKlt);
    }
    let m = base.logdisc_functional()?.clone();
    let mut stages = vec![stage(base.clone())?];
    for w in chain.windows(2) {
        let f = TorusSubgroup::new(w[0].clone(), w[1].clone())?;
        let next = log_quotient(&stages.last().expect("nonempty").pair, &f)?;
        if next.logdisc_functional()? != &m {
            return Err(ToricError::Verification("functional changed along the tower".into()));
        }
        stages.push(stage(next)?);
    }
    let f_all = TorusSubgroup::new(first.clone(), chain.last().expect("nonempty").clone())?;
    let one_step = log_quotient(base, &f_all)?;
    let top = &stages.last().expect("nonempty").pair;
    if &one_step != top {
        return Err(ToricError::Verification("tower composite differs from the one-step quotient".into()));
    }
    Ok(QuotientTower { lattices: chain.to_vec(), stages, one_step })
}

fn stage(pair: ToricPair) -> Result<TowerStage> {
    let mld = pair.mld()?.value;
    let cartier_index = pair.cartier_index()?;
    Ok(TowerStage { pair, mld, cartier_index })
}

/// Minimal generators of `σ^∨ ∩ M″` with `M″` dual to `N′`: the exponents
/// of the invariant monomials `K[σ^∨ ∩ M]^F`.
pub fn invariant_monoid(pair: &ToricPair, f: &TorusSubgroup, cap: usize) -> Result<Vec<QVec>> {
    if pair.lattice() != &f.base {
        return Err(ToricError::LatticeMismatch);
    }
    let down = pair.cone().in_lattice(f.over.clone())?;
    down.dual_cone()?.hilbert_basis(cap)
}

/// Whether a boundary coefficient has the form `1 − 1/k`.
pub fn is_standard_coefficient(b: &Rat) -> bool {
    let gap = Rat::one() - b;
    gap > Rat::zero() && gap.numer().is_one()
}
