//! JSON requests and reports for the single-pair tools (`mld`, `index`,
//! `cox`, `quotient`, `aut`).

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{Int, QVec, Rat};
use crate::automorphisms::{self, FanAutomorphism, JordanReport, OuterToricElement};
use crate::cones::Cone;
use crate::error::{Result, ToricError};
use crate::io::{ConeSpec, LatticeSpec, RatRepr};
use crate::lattice::{IntMatrix, Lattice};
use crate::pairs::{ClassGroupPresentation, ToricPair};
use crate::quotients::{self, QuotientLdCheck, TorusSubgroup};

/// Any subset of mld, Cartier index and class group of one pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rat")]
    pub value: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_qvec")]
    pub witness: Option<QVec>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_int")]
    pub index: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_group: Option<ClassGroupPresentation>,
}

macro_rules! opt_with {
    ($name:ident, $ty:ty, $inner:literal) => {
        mod $name {
            use super::*;
            use serde::{Deserializer, Serializer};

            #[derive(Serialize, Deserialize)]
            struct Wrap(#[serde(with = $inner)] $ty);

            pub fn serialize<S: Serializer>(v: &Option<$ty>, s: S) -> std::result::Result<S::Ok, S::Error> {
                match v {
                    Some(x) => s.serialize_some(&Wrap(x.clone())),
                    None => s.serialize_none(),
                }
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<$ty>, D::Error> {
                Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
            }
        }
    };
}

opt_with!(opt_rat, Rat, "crate::io::rat_serde");
opt_with!(opt_qvec, QVec, "crate::io::qvec_serde");
opt_with!(opt_int, Int, "crate::io::int_serde");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairQuery {
    Mld,
    Index,
    Cox,
    All,
}

pub fn pair_report(pair: &ToricPair, query: PairQuery) -> Result<PairReport> {
    let mut report = PairReport::default();
    if matches!(query, PairQuery::Mld | PairQuery::All) {
        let mld = pair.mld()?;
        report.value = Some(mld.value);
        report.witness = Some(mld.witness);
    }
    if matches!(query, PairQuery::Index | PairQuery::All) {
        report.index = Some(pair.cartier_index()?);
    }
    if matches!(query, PairQuery::Cox | PairQuery::All) {
        report.class_group = Some(pair.class_group());
    }
    Ok(report)
}

/// `{"r": 5, "weights": [1, 2]}` or a cone schema with `"overlattice"`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum QuotientRequest {
    Cyclic {
        r: u64,
        weights: Vec<i64>,
    },
    General {
        #[serde(flatten)]
        cone: ConeSpec,
        overlattice: LatticeSpec,
    },
}

impl QuotientRequest {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The upstairs pair and the subgroup.
    pub fn resolve(&self) -> Result<(ToricPair, TorusSubgroup)> {
        match self {
            QuotientRequest::Cyclic { r, weights } => {
                let f = TorusSubgroup::cyclic(*r, weights)?;
                Ok((ToricPair::without_boundary(Cone::orthant(weights.len())), f))
            }
            QuotientRequest::General { cone, overlattice } => {
                let pair = cone.pair()?;
                let gens: Vec<QVec> = overlattice
                    .generators
                    .iter()
                    .map(|g| g.iter().map(RatRepr::to_rat).collect::<Result<QVec>>())
                    .collect::<Result<_>>()?;
                let over = Lattice::new(&gens)?;
                let f = TorusSubgroup::new(pair.lattice().clone(), over)?;
                Ok((pair, f))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    #[serde(with = "crate::io::ints_serde")]
    pub group: Vec<Int>,
    /// Basis of the quotient lattice.
    #[serde(with = "crate::io::qvecs_serde")]
    pub lattice: Vec<QVec>,
    #[serde(with = "crate::io::qvecs_serde")]
    pub rays: Vec<QVec>,
    #[serde(with = "crate::io::qvec_serde")]
    pub boundary: QVec,
    #[serde(with = "crate::io::ints_serde")]
    pub ramification: Vec<Int>,
    #[serde(with = "crate::io::rat_serde")]
    pub mld: Rat,
    #[serde(with = "crate::io::qvec_serde")]
    pub witness: QVec,
    #[serde(with = "crate::io::int_serde")]
    pub cartier_index: Int,
    #[serde(with = "crate::io::rat_serde")]
    pub upstairs_mld: Rat,
    /// Quotient law for the upstairs ray sum and for the downstairs witness
    /// read upstairs.
    pub checks: Vec<QuotientLdCheck>,
}

/// Log quotient with its mld and quotient-law checks; a failed check is a
/// `Verification` error.
pub fn quotient_report(request: &QuotientRequest) -> Result<QuotientReport> {
    let (up, f) = request.resolve()?;
    let down = quotients::log_quotient(&up, &f)?;
    let ram = quotients::ray_ramification(up.cone(), &f)?;
    let mld = down.mld()?;
    let base = f.base();
    let mut checks = Vec::new();
    for v in [up.cone().ray_sum(), mld.witness.clone()] {
        let v = base.primitive_generator(&v)?;
        checks.push(quotients::quotient_ld_check(&up, &f, &v)?);
    }
    if checks[1].downstairs < mld.value {
        return Err(ToricError::Verification("quotient witness beats the mld".into()));
    }
    Ok(QuotientReport {
        group: f.group().factors().to_vec(),
        lattice: f.overlattice().basis().to_vec(),
        rays: down.cone().rays().to_vec(),
        boundary: down.boundary().to_vec(),
        ramification: ram.into_iter().map(|r| r.index).collect(),
        upstairs_mld: up.mld()?.value,
        cartier_index: down.cartier_index()?,
        mld: mld.value,
        witness: mld.witness,
        checks,
    })
}

/// `g` in basis coordinates of `N`, `t` in ambient coordinates.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GeneratorSpec {
    pub g: Vec<Vec<i64>>,
    pub t: Vec<RatRepr>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct AutRequest {
    #[serde(flatten)]
    pub cone: ConeSpec,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
}

impl AutRequest {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutElement {
    pub matrix: Vec<Vec<String>>,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutReport {
    pub aut_order: usize,
    pub automorphisms: Vec<AutElement>,
    pub group_order: usize,
    pub element_orders: Vec<usize>,
    pub jordan: JordanReport,
}

/// `Aut_σ(M)` and, for the group generated by the request's generators (or
/// by `Aut_σ(M)` itself when none are given), its Jordan report.
pub fn aut_report(request: &AutRequest, closure_cap: usize) -> Result<AutReport> {
    let sigma = request.cone.cone()?;
    let lattice = sigma.lattice();
    let auts = automorphisms::fan_automorphisms(&sigma)?;
    let automorphisms = auts
        .iter()
        .map(|g| {
            Ok(AutElement {
                matrix: g.matrix().to_rows().iter().map(|r| r.iter().map(Int::to_string).collect()).collect(),
                order: automorphisms::element_order(g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let generators: Vec<OuterToricElement> = if request.generators.is_empty() {
        auts.iter().map(|g| OuterToricElement::new(lattice, g, &vec![Rat::zero(); sigma.dim()])).collect::<Result<_>>()?
    } else {
        request
            .generators
            .iter()
            .map(|spec| {
                let rows: Vec<&[i64]> = spec.g.iter().map(Vec::as_slice).collect();
                let g = FanAutomorphism::from_basis_matrix(lattice, IntMatrix::from_i64(&rows))?;
                if !auts.contains(&g) {
                    return Err(ToricError::Verification("generator does not preserve the cone".into()));
                }
                let t: QVec = spec.t.iter().map(RatRepr::to_rat).collect::<Result<_>>()?;
                OuterToricElement::new(lattice, &g, &t)
            })
            .collect::<Result<_>>()?
    };
    let group = automorphisms::group_closure(sigma.dim(), &generators, closure_cap)?;
    let element_orders = group.elements().iter().map(|e| element_order(e, group.order())).collect::<Result<_>>()?;
    Ok(AutReport {
        aut_order: auts.len(),
        automorphisms,
        group_order: group.order(),
        element_orders,
        jordan: automorphisms::jordan_report(&group, &sigma)?,
    })
}

fn element_order(e: &OuterToricElement, cap: usize) -> Result<usize> {
    let mut power = e.clone();
    for k in 1..=cap {
        if power.is_identity() {
            return Ok(k);
        }
        power = power.compose(e);
    }
    Err(ToricError::OrderCapExceeded { cap })
}
