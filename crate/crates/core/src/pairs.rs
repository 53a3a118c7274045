//! Toric pairs `(X_σ, B)` with `B = Σ bᵢ Dᵢ` supported on the toric divisors.
//!
//! When `K_X + B` is Q-Cartier there is a unique `m ∈ M ⊗ Q` with
//! `⟨m, vᵢ⟩ = 1 − bᵢ` on every primitive ray generator. The log discrepancy of
//! the toric valuation of a lattice point `v` is then `⟨m, v⟩`, and the
//! minimal log discrepancy at the torus-fixed point is the minimum of
//! `⟨m, v⟩` over interior lattice points.

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Int, QMatrix, QVec, Rat};
use crate::cones::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::{smith_normal_form, FiniteAbelianGroup, IntMatrix, Lattice};

/// A toric pair on an affine toric variety with a boundary coefficient in
/// `[0, 1)` for each ray of the cone.
#[derive(Debug)]
pub struct ToricPair {
    cone: Cone,
    boundary: Vec<Rat>,
    functional: OnceLock<Option<QVec>>,
}

impl Clone for ToricPair {
    fn clone(&self) -> Self {
        ToricPair { cone: self.cone.clone(), boundary: self.boundary.clone(), functional: self.functional.clone() }
    }
}

impl PartialEq for ToricPair {
    fn eq(&self, other: &Self) -> bool {
        self.cone == other.cone && self.boundary == other.boundary
    }
}

impl Eq for ToricPair {}

/// Minimal log discrepancy at the torus-fixed point with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mld {
    pub value: Rat,
    pub witness: QVec,
}

impl ToricPair {
    /// Boundary coefficients are listed in the cone's (sorted) ray order.
    pub fn new(cone: Cone, boundary: Vec<Rat>) -> Result<Self> {
        if boundary.len() != cone.rays().len() {
            return Err(ToricError::InvalidBoundary(format!(
                "{} coefficients for {} rays",
                boundary.len(),
                cone.rays().len()
            )));
        }
        if let Some(b) = boundary.iter().find(|b| b.is_negative() || **b >= Rat::one()) {
            return Err(ToricError::InvalidBoundary(format!("coefficient {b} is outside [0, 1)")));
        }
        Ok(ToricPair { cone, boundary, functional: OnceLock::new() })
    }

    pub fn without_boundary(cone: Cone) -> Self {
        let k = cone.rays().len();
        ToricPair::new(cone, vec![Rat::zero(); k]).expect("zero boundary")
    }

    /// Boundary coefficients listed against the generators as given.
    pub fn from_rays(lattice: Lattice, generators: &[QVec], boundary: &[Rat]) -> Result<Self> {
        if generators.len() != boundary.len() {
            return Err(ToricError::InvalidBoundary(format!(
                "{} coefficients for {} rays",
                boundary.len(),
                generators.len()
            )));
        }
        let prims = generators.iter().map(|g| lattice.primitive_generator(g)).collect::<Result<Vec<_>>>()?;
        let cone = Cone::new(lattice, generators)?;
        let aligned = cone
            .rays()
            .iter()
            .map(|r| boundary[prims.iter().position(|p| p == r).expect("ray from generators")].clone())
            .collect();
        ToricPair::new(cone, aligned)
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn lattice(&self) -> &Lattice {
        self.cone.lattice()
    }

    pub fn boundary(&self) -> &[Rat] {
        &self.boundary
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// Coefficient of the ray through `v`, if `v` spans a ray of the cone.
    pub fn coefficient_of(&self, v: &[Rat]) -> Option<&Rat> {
        let p = self.lattice().primitive_generator(v).ok()?;
        self.cone.rays().iter().position(|r| *r == p).map(|i| &self.boundary[i])
    }

    /// The functional `m` with `⟨m, vᵢ⟩ = 1 − bᵢ`; computed once and cached.
    pub fn logdisc_functional(&self) -> Result<&QVec> {
        self.functional
            .get_or_init(|| solve_functional(&self.cone, &self.boundary).ok())
            .as_ref()
            .ok_or(ToricError::NotQGorenstein)
    }

    pub fn is_q_gorenstein(&self) -> bool {
        self.logdisc_functional().is_ok()
    }

    /// Boundary coefficients are below one by construction, so klt reduces to
    /// `K + B` being Q-Cartier.
    pub fn is_klt(&self) -> bool {
        self.boundary.iter().all(|b| *b < Rat::one()) && self.is_q_gorenstein()
    }

    /// `⟨m, v⟩` for a nonzero lattice point `v` of the cone.
    pub fn log_discrepancy(&self, v: &[Rat]) -> Result<Rat> {
        self.lattice().check_dim(v)?;
        if arith::is_zero_vec(v) {
            return Err(ToricError::ZeroVector);
        }
        if !self.lattice().contains(v) {
            return Err(ToricError::NotInLattice);
        }
        if !self.cone.contains(v) {
            return Err(ToricError::NotInCone);
        }
        Ok(arith::dot(self.logdisc_functional()?, v))
    }

    /// Upper end of the mld search: `⟨m, Σ vᵢ⟩` over primitive rays.
    pub fn mld_search_bound(&self) -> Result<Rat> {
        Ok(arith::dot(self.logdisc_functional()?, &self.cone.ray_sum()))
    }

    /// Minimal log discrepancy at the torus-fixed point.
    ///
    /// The sum of the ray generators is interior, so the minimum over
    /// interior points lies in the slice `⟨m, v⟩ ≤ ⟨m, Σ vᵢ⟩`. Ties go to the
    /// lexicographically smallest point.
    pub fn mld(&self) -> Result<Mld> {
        let m = self.logdisc_functional()?.clone();
        if !self.is_klt() {
            return Err(ToricError::NotKlt);
        }
        let bound = self.mld_search_bound()?;
        let points = self.cone.slice_lattice_points(&m, &bound)?;
        let witness = points
            .into_iter()
            .find(|v| self.cone.relint_contains(v))
            .ok_or_else(|| ToricError::Verification("no interior point below the ray-sum bound".into()))?;
        Ok(Mld { value: arith::dot(&m, &witness), witness })
    }

    /// Least `l ≥ 1` with `l·m ∈ M`.
    pub fn cartier_index(&self) -> Result<Int> {
        let m = self.logdisc_functional()?;
        Ok(self
            .lattice()
            .basis()
            .iter()
            .map(|g| arith::dot(m, g))
            .fold(Int::one(), |acc, q| acc.lcm(q.denom())))
    }

    pub fn class_group(&self) -> ClassGroupPresentation {
        class_group(&self.cone)
    }
}

/// Solves `⟨m, vᵢ⟩ = 1 − cᵢ` for arbitrary coefficients `cᵢ` (not
/// necessarily in `[0, 1)`), e.g. for crepant pullbacks on subdivisions.
pub fn solve_functional(cone: &Cone, coefficients: &[Rat]) -> Result<QVec> {
    if coefficients.len() != cone.rays().len() {
        return Err(ToricError::InvalidBoundary("coefficient count does not match rays".into()));
    }
    let rhs: Vec<Rat> = coefficients.iter().map(|b| Rat::one() - b).collect();
    let m = QMatrix::new(cone.rays().to_vec()).solve_right(&rhs).ok_or(ToricError::NotQGorenstein)?;
    Ok(m)
}

/// Degree of one Cox variable in `Cl(X) ≅ Z^ρ ⊕ torsion`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDegree {
    #[serde(with = "crate::io::ints_serde")]
    pub free: Vec<Int>,
    #[serde(with = "crate::io::ints_serde")]
    pub torsion: Vec<Int>,
}

/// `Cl(X) = coker(M → Z^k)` with the grading of the Cox ring
/// `K[x₁, …, x_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupPresentation {
    pub num_variables: usize,
    pub free_rank: usize,
    pub torsion: FiniteAbelianGroup,
    pub degrees: Vec<ClassDegree>,
    /// Left transform of the Smith form; row `i` reads coordinate `i` of the
    /// class of an exponent vector.
    #[serde(skip)]
    transform: Option<IntMatrix>,
    #[serde(skip)]
    diagonal: Vec<Int>,
}

impl ClassGroupPresentation {
    /// Class of the divisor `Σ aᵢ Dᵢ`.
    pub fn class_of(&self, exponents: &[Int]) -> ClassDegree {
        let u = self.transform.as_ref().expect("presentation built by class_group");
        let image = u.apply(exponents);
        split_class(&image, &self.diagonal)
    }

    pub fn is_trivial_class(&self, exponents: &[Int]) -> bool {
        let c = self.class_of(exponents);
        c.free.iter().all(Zero::is_zero) && c.torsion.iter().all(Zero::is_zero)
    }
}

fn split_class(image: &[Int], diagonal: &[Int]) -> ClassDegree {
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for (i, x) in image.iter().enumerate() {
        match diagonal.get(i) {
            Some(s) if s.is_one() => {}
            Some(s) if s.is_zero() => free.push(x.clone()),
            Some(s) => torsion.push(x.mod_floor(s)),
            None => free.push(x.clone()),
        }
    }
    ClassDegree { free, torsion }
}

/// Class group and Cox grading of the affine toric variety of `σ`.
pub fn class_group(sigma: &Cone) -> ClassGroupPresentation {
    let dual = sigma.lattice().dual();
    // pairing matrix: row i = (⟨m_j, v_i⟩)_j over a basis m_j of M
    let rows: Vec<Vec<Int>> = sigma
        .rays()
        .iter()
        .map(|v| dual.basis().iter().map(|m| arith::dot(m, v).to_integer()).collect())
        .collect();
    let k = rows.len();
    let p = IntMatrix::from_rows(rows);
    let snf = smith_normal_form(&p);
    let diagonal = snf.diagonal();
    let torsion = FiniteAbelianGroup::from_diagonal(diagonal.iter().filter(|d| !d.is_zero()).cloned())
        .expect("nonzero diagonal");
    let free_rank = k - diagonal.iter().filter(|d| !d.is_zero()).count();
    let degrees = (0..k)
        .map(|l| {
            let col: Vec<Int> = (0..k).map(|i| snf.u[(i, l)].clone()).collect();
            split_class(&col, &diagonal)
        })
        .collect();
    ClassGroupPresentation { num_variables: k, free_rank, torsion, degrees, transform: Some(snf.u), diagonal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qvec, rat};

    fn a1() -> Cone {
        Cone::from_int_rays(Lattice::standard(2), &[&[1, 0], &[1, 2]]).unwrap()
    }

    fn lattice_with(r: i64, a: &[i64]) -> Lattice {
        Lattice::cyclic_overlattice(r as u64, a).unwrap()
    }

    fn orthant_over(l: Lattice) -> ToricPair {
        ToricPair::without_boundary(Cone::orthant(l.dim()).in_lattice(l).unwrap())
    }

    #[test]
    fn functional_examples() {
        let smooth = ToricPair::without_boundary(Cone::orthant(2));
        assert_eq!(smooth.logdisc_functional().unwrap(), &qvec(&[1, 1]));
        assert_eq!(ToricPair::without_boundary(a1()).logdisc_functional().unwrap(), &qvec(&[1, 0]));
        let half = ToricPair::from_rays(
            Lattice::standard(2),
            &[qvec(&[1, 0]), qvec(&[0, 1])],
            &[rat(1, 2), rat(0, 1)],
        )
        .unwrap();
        assert_eq!(half.logdisc_functional().unwrap(), &vec![rat(1, 2), rat(1, 1)]);
    }

    #[test]
    fn non_q_gorenstein_square_cone() {
        let sq = Cone::from_int_rays(Lattice::standard(3), &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]).unwrap();
        let gorenstein = ToricPair::without_boundary(sq.clone());
        assert_eq!(gorenstein.logdisc_functional().unwrap(), &qvec(&[0, 0, 1]));
        let skew = ToricPair::new(sq, vec![rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(skew.logdisc_functional(), Err(ToricError::NotQGorenstein));
        assert!(!skew.is_klt());
        assert_eq!(skew.mld(), Err(ToricError::NotQGorenstein));
    }

    #[test]
    fn log_discrepancy_examples() {
        let smooth = ToricPair::without_boundary(Cone::orthant(2));
        assert_eq!(smooth.log_discrepancy(&qvec(&[1, 1])).unwrap(), rat(2, 1));
        assert_eq!(ToricPair::without_boundary(a1()).log_discrepancy(&qvec(&[1, 1])).unwrap(), rat(1, 1));
        let third = orthant_over(lattice_with(3, &[1, 1]));
        assert_eq!(third.log_discrepancy(&[rat(1, 3), rat(1, 3)]).unwrap(), rat(2, 3));
        assert_eq!(smooth.log_discrepancy(&qvec(&[-1, 1])), Err(ToricError::NotInCone));
        assert_eq!(smooth.log_discrepancy(&[rat(1, 2), rat(1, 1)]), Err(ToricError::NotInLattice));
    }

    #[test]
    fn mld_examples() {
        let smooth = ToricPair::without_boundary(Cone::orthant(2));
        assert_eq!(smooth.mld().unwrap(), Mld { value: rat(2, 1), witness: qvec(&[1, 1]) });
        let third = orthant_over(lattice_with(3, &[1, 1]));
        assert_eq!(third.mld().unwrap(), Mld { value: rat(2, 3), witness: vec![rat(1, 3), rat(1, 3)] });
        assert_eq!(ToricPair::without_boundary(a1()).mld().unwrap(), Mld { value: rat(1, 1), witness: qvec(&[1, 1]) });
        let halves = ToricPair::new(Cone::orthant(2), vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(halves.mld().unwrap(), Mld { value: rat(1, 1), witness: qvec(&[1, 1]) });
        assert_eq!(ToricPair::without_boundary(Cone::orthant(3)).mld().unwrap().value, rat(3, 1));
    }

    #[test]
    fn klt_and_boundary_validation() {
        assert!(ToricPair::without_boundary(Cone::orthant(2)).is_klt());
        assert!(ToricPair::without_boundary(a1()).is_klt());
        assert!(matches!(
            ToricPair::new(Cone::orthant(2), vec![rat(1, 1), rat(0, 1)]),
            Err(ToricError::InvalidBoundary(_))
        ));
        assert!(matches!(
            ToricPair::new(Cone::orthant(2), vec![rat(-1, 2), rat(0, 1)]),
            Err(ToricError::InvalidBoundary(_))
        ));
    }

    #[test]
    fn cartier_index_examples() {
        assert_eq!(ToricPair::without_boundary(Cone::orthant(2)).cartier_index().unwrap(), Int::from(1));
        assert_eq!(orthant_over(lattice_with(3, &[1, 1])).cartier_index().unwrap(), Int::from(3));
        assert_eq!(orthant_over(lattice_with(2, &[1, 1])).cartier_index().unwrap(), Int::from(1));
    }

    #[test]
    fn class_group_examples() {
        let smooth = class_group(&Cone::orthant(2));
        assert_eq!(smooth.num_variables, 2);
        assert_eq!(smooth.free_rank, 0);
        assert!(smooth.torsion.is_trivial());
        assert!(smooth.degrees.iter().all(|d| d.free.is_empty() && d.torsion.is_empty()));

        let a1 = class_group(&a1());
        assert_eq!(a1.torsion.factors(), &[Int::from(2)]);
        assert_eq!(a1.free_rank, 0);
        assert!(a1.degrees.iter().all(|d| d.torsion == vec![Int::from(1)]));

        let sq = Cone::from_int_rays(Lattice::standard(3), &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]).unwrap();
        let cl = class_group(&sq);
        assert_eq!((cl.num_variables, cl.free_rank), (4, 1));
        assert_eq!(cl.torsion.factors(), &[Int::from(2)]);
    }

    #[test]
    fn class_map_kills_characters() {
        let sq = Cone::from_int_rays(Lattice::standard(3), &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]).unwrap();
        let cl = class_group(&sq);
        for m in sq.lattice().dual().basis() {
            let div: Vec<Int> = sq.rays().iter().map(|v| arith::dot(m, v).to_integer()).collect();
            assert!(cl.is_trivial_class(&div));
        }
        assert!(!cl.is_trivial_class(&[Int::from(1), Int::zero(), Int::zero(), Int::zero()]));
    }
}
