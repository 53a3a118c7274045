//! Fan automorphisms and finite outer-toric groups.
//!
//! A fan automorphism is a lattice automorphism of `N` permuting the rays
//! (and the cones) of the fan. An outer-toric element is a pair `(g, t)` of a
//! fan automorphism and a torsion point `t ∈ (N ⊗ Q)/N` of the torus, with
//! `(g₁, t₁)·(g₂, t₂) = (g₁g₂, t₁ + g₁·t₂)`. Matrices act on column vectors
//! of coordinates in the canonical basis of `N`; torsion points are stored
//! in the same coordinates, reduced into `[0, 1)ⁿ`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Int, QMatrix, QVec, Rat};
use crate::cones::{Cone, Fan};
use crate::error::{Result, ToricError};
use crate::lattice::{overlattice_quotient, smith_normal_form, IntMatrix, Lattice};

/// Maximal order of a finite-order element of `GL_n(Z)`, `1 ≤ n ≤ 6`.
pub const MAX_ORDER: [usize; 6] = [2, 6, 6, 12, 12, 30];

pub fn max_order_table(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_ORDER.len() {
        return Err(ToricError::OutOfRange(format!("no order table for n = {n}")));
    }
    Ok(MAX_ORDER[n - 1])
}

/// A lattice automorphism permuting the rays of a cone or fan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FanAutomorphism {
    /// Integral matrix in the canonical basis of `N`.
    matrix: IntMatrix,
    /// The same map in ambient coordinates.
    ambient: QMatrix,
}

impl PartialOrd for FanAutomorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FanAutomorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.matrix.cmp(&other.matrix)
    }
}

impl FanAutomorphism {
    pub fn identity(lattice: &Lattice) -> Self {
        let n = lattice.dim();
        FanAutomorphism { matrix: IntMatrix::identity(n), ambient: QMatrix::identity(n) }
    }

    /// From a matrix in basis coordinates; checks integrality and `|det| = 1`.
    pub fn from_basis_matrix(lattice: &Lattice, matrix: IntMatrix) -> Result<Self> {
        let n = lattice.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(ToricError::DimensionMismatch { expected: n, got: matrix.nrows() });
        }
        if !matrix.determinant().abs().is_one() {
            return Err(ToricError::Verification("matrix is not unimodular".into()));
        }
        // ambient = Bᵀ A B⁻ᵀ
        let b_t = lattice.basis_matrix().transpose();
        let b_inv_t = b_t.inverse().expect("basis");
        let ambient = b_t.mul(&matrix.to_qmatrix()).mul(&b_inv_t);
        Ok(FanAutomorphism { matrix, ambient })
    }

    fn from_ambient(lattice: &Lattice, ambient: QMatrix) -> Option<Self> {
        let b_t = lattice.basis_matrix().transpose();
        let b_inv_t = b_t.inverse().expect("basis");
        let in_basis = b_inv_t.mul(&ambient).mul(&b_t);
        if !in_basis.rows.iter().flatten().all(Rat::is_integer) {
            return None;
        }
        let matrix = IntMatrix::from_rows(
            in_basis.rows.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect(),
        );
        if !matrix.determinant().abs().is_one() {
            return None;
        }
        Some(FanAutomorphism { matrix, ambient })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn ambient(&self) -> &QMatrix {
        &self.ambient
    }

    pub fn apply(&self, v: &[Rat]) -> QVec {
        self.ambient.apply(v)
    }

    pub fn compose(&self, other: &FanAutomorphism) -> FanAutomorphism {
        FanAutomorphism { matrix: self.matrix.mul(&other.matrix), ambient: self.ambient.mul(&other.ambient) }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Least `k ≥ 1` with `gᵏ = id`, searched up to `cap`.
    pub fn order(&self, cap: usize) -> Result<usize> {
        let mut power = self.matrix.clone();
        for k in 1..=cap {
            if power.is_identity() {
                return Ok(k);
            }
            power = power.mul(&self.matrix);
        }
        Err(ToricError::OrderCapExceeded { cap })
    }
}

/// Order of `g`, checked against the table bound `k(n)`.
pub fn element_order(g: &FanAutomorphism) -> Result<usize> {
    let n = g.matrix.nrows();
    let cap = max_order_table(n).unwrap_or(10_000);
    g.order(cap)
}

/// `Aut_σ(M)` for a single cone (the fan of its faces).
pub fn fan_automorphisms(sigma: &Cone) -> Result<Vec<FanAutomorphism>> {
    let all: Vec<usize> = (0..sigma.rays().len()).collect();
    automorphisms_of(sigma.lattice(), sigma.rays(), &[all])
}

/// `Aut_Σ(M)` for a fan: ray permutations that also permute the maximal cones.
pub fn fan_automorphisms_of_fan(fan: &Fan) -> Result<Vec<FanAutomorphism>> {
    let rays = fan.rays();
    let cones: Vec<Vec<usize>> = fan
        .cones()
        .iter()
        .map(|c| c.rays().iter().map(|r| rays.iter().position(|x| x == r).expect("fan ray")).collect())
        .collect();
    automorphisms_of(fan.lattice(), &rays, &cones)
}

fn automorphisms_of(lattice: &Lattice, rays: &[QVec], cones: &[Vec<usize>]) -> Result<Vec<FanAutomorphism>> {
    let n = lattice.dim();
    let mut seed: Vec<usize> = Vec::new();
    for i in 0..rays.len() {
        let mut trial: Vec<QVec> = seed.iter().map(|&k| rays[k].clone()).collect();
        trial.push(rays[i].clone());
        if QMatrix::new(trial).rank() == seed.len() + 1 {
            seed.push(i);
        }
    }
    if seed.len() < n {
        return Err(ToricError::DegenerateCone("rays do not span".into()));
    }
    // columns are the seed rays
    let source_inv = QMatrix::new(seed.iter().map(|&k| rays[k].clone()).collect())
        .transpose()
        .inverse()
        .expect("independent seed");
    let cone_sets: HashSet<BTreeSet<usize>> = cones.iter().map(|c| c.iter().copied().collect()).collect();

    let mut found: BTreeSet<FanAutomorphism> = BTreeSet::new();
    let mut images: Vec<usize> = Vec::with_capacity(n);
    injective_maps(rays.len(), n, &mut images, &mut |img| {
        let target = QMatrix::new(img.iter().map(|&k| rays[k].clone()).collect()).transpose();
        let g = target.mul(&source_inv);
        let mut perm = Vec::with_capacity(rays.len());
        for r in rays {
            let gr = g.apply(r);
            match rays.iter().position(|x| *x == gr) {
                Some(p) => perm.push(p),
                None => return,
            }
        }
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        if distinct.len() != rays.len() {
            return;
        }
        let preserves_cones = cones
            .iter()
            .all(|c| cone_sets.contains(&c.iter().map(|&i| perm[i]).collect::<BTreeSet<usize>>()));
        if !preserves_cones {
            return;
        }
        if let Some(aut) = FanAutomorphism::from_ambient(lattice, g) {
            found.insert(aut);
        }
    });
    Ok(found.into_iter().collect())
}

fn injective_maps(k: usize, len: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == len {
        visit(cur);
        return;
    }
    for i in 0..k {
        if cur.contains(&i) {
            continue;
        }
        cur.push(i);
        injective_maps(k, len, cur, visit);
        cur.pop();
    }
}

/// `(g, t)` with `t` a torsion point in basis coordinates, reduced mod `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OuterToricElement {
    g: IntMatrix,
    t: QVec,
}

impl OuterToricElement {
    pub fn identity(n: usize) -> Self {
        OuterToricElement { g: IntMatrix::identity(n), t: vec![Rat::zero(); n] }
    }

    /// From a fan automorphism and a torsion point in ambient coordinates.
    pub fn new(lattice: &Lattice, g: &FanAutomorphism, t: &[Rat]) -> Result<Self> {
        let coords = lattice.coordinates(t)?;
        Ok(OuterToricElement { g: g.matrix.clone(), t: coords.iter().map(arith::frac).collect() })
    }

    /// A pure torus element `(id, t)`.
    pub fn torsion(lattice: &Lattice, t: &[Rat]) -> Result<Self> {
        Self::new(lattice, &FanAutomorphism::identity(lattice), t)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.g
    }

    /// Torsion part in basis coordinates, in `[0, 1)ⁿ`.
    pub fn torsion_coords(&self) -> &[Rat] {
        &self.t
    }

    pub fn is_toric(&self) -> bool {
        self.g.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.g.is_identity() && self.t.iter().all(Zero::is_zero)
    }

    pub fn compose(&self, other: &OuterToricElement) -> OuterToricElement {
        let gt = self.g.to_qmatrix().apply(&other.t);
        let t = arith::add(&self.t, &gt).iter().map(arith::frac).collect();
        OuterToricElement { g: self.g.mul(&other.g), t }
    }

    pub fn inverse(&self) -> OuterToricElement {
        let inv = self.g.to_qmatrix().inverse().expect("unimodular");
        let g = IntMatrix::from_rows(inv.rows.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect());
        let t = inv.apply(&self.t).iter().map(|x| arith::frac(&-x)).collect();
        OuterToricElement { g, t }
    }
}

/// A finite group of outer-toric elements, sorted deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterToricGroup {
    dim: usize,
    generators: Vec<OuterToricElement>,
    elements: Vec<OuterToricElement>,
}

impl OuterToricGroup {
    pub fn elements(&self) -> &[OuterToricElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[OuterToricElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, e: &OuterToricElement) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    /// Image under `(g, t) ↦ g`.
    pub fn automorphism_image(&self) -> BTreeSet<IntMatrix> {
        self.elements.iter().map(|e| e.g.clone()).collect()
    }

    /// Elements with trivial automorphism part: `G ∩ T_N`.
    pub fn torus_part(&self) -> Vec<OuterToricElement> {
        self.elements.iter().filter(|e| e.is_toric()).cloned().collect()
    }
}

/// Closure of `generators` under composition; more than `cap` elements fails.
pub fn group_closure(dim: usize, generators: &[OuterToricElement], cap: usize) -> Result<OuterToricGroup> {
    if let Some(g) = generators.iter().find(|g| g.t.len() != dim) {
        return Err(ToricError::DimensionMismatch { expected: dim, got: g.t.len() });
    }
    let elements = closure(OuterToricElement::identity(dim), generators, cap)?;
    Ok(OuterToricGroup { dim, generators: generators.to_vec(), elements })
}

fn closure(identity: OuterToricElement, gens: &[OuterToricElement], cap: usize) -> Result<Vec<OuterToricElement>> {
    let mut seen: HashSet<OuterToricElement> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(e) = queue.pop_front() {
        for s in gens {
            let next = e.compose(s);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(ToricError::CapExceeded { cap });
                }
                queue.push_back(next);
            }
        }
    }
    let mut elements: Vec<OuterToricElement> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// Normal abelian subgroup `A = G ∩ T_N` with its index and invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanReport {
    pub group_order: usize,
    pub a_order: usize,
    #[serde(with = "crate::io::ints_serde")]
    pub a_invariant_factors: Vec<Int>,
    pub index: usize,
    pub rank_a: usize,
    pub aut_order: usize,
    pub normal: bool,
    pub abelian: bool,
    pub in_torus: bool,
}

impl JordanReport {
    /// `A` normal, abelian, rank at most `n`, index at most `|Aut_Σ(M)|`.
    pub fn holds(&self, n: usize) -> bool {
        self.normal && self.abelian && self.in_torus && self.rank_a <= n && self.index <= self.aut_order
    }
}

/// Computes `A = ker(G → Aut_σ(M))` and checks its structure.
pub fn jordan_report(group: &OuterToricGroup, sigma: &Cone) -> Result<JordanReport> {
    let n = group.dim();
    let a = group.torus_part();
    let aut_order = fan_automorphisms(sigma)?.len();
    let a_set: HashSet<&OuterToricElement> = a.iter().collect();

    let a_gens = generating_set(&a, n);
    let normal = group
        .elements()
        .iter()
        .all(|g| a_gens.iter().all(|x| a_set.contains(&g.compose(x).compose(&g.inverse()))));
    let abelian = a_gens.iter().all(|x| a_gens.iter().all(|y| x.compose(y) == y.compose(x)));
    let in_torus = a.iter().all(OuterToricElement::is_toric);

    let standard = Lattice::standard(n);
    let torsion: Vec<QVec> = a_gens.iter().map(|e| e.t.clone()).collect();
    let factors = overlattice_quotient(&standard, &standard.extended_by(&torsion)?)?;
    if factors.order() != Int::from(a.len()) {
        return Err(ToricError::Verification("torus part order disagrees with its invariant factors".into()));
    }
    let image = group.automorphism_image().len();
    let index = group.order() / a.len();
    if index * a.len() != group.order() || image != index {
        return Err(ToricError::Verification("projection to Aut is not a homomorphism with kernel A".into()));
    }
    let report = JordanReport {
        group_order: group.order(),
        a_order: a.len(),
        a_invariant_factors: factors.factors().to_vec(),
        index,
        rank_a: factors.rank(),
        aut_order,
        normal,
        abelian,
        in_torus,
    };
    Ok(report)
}

/// Greedy generating set of a finite subgroup given by its elements.
fn generating_set(elements: &[OuterToricElement], n: usize) -> Vec<OuterToricElement> {
    let mut gens: Vec<OuterToricElement> = Vec::new();
    let mut span: HashSet<OuterToricElement> = [OuterToricElement::identity(n)].into_iter().collect();
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        span = closure(OuterToricElement::identity(n), &gens, usize::MAX)
            .expect("uncapped")
            .into_iter()
            .collect();
    }
    gens
}

/// The one-parameter subgroup fixing the exceptional divisor of the star
/// subdivision at `v` pointwise: `v` itself, the kernel of `N → N/Zv`.
pub fn fixing_subtorus(sigma: &Cone, v: &[Rat]) -> Result<QVec> {
    sigma.lattice().check_dim(v)?;
    if !sigma.relint_contains(v) {
        return Err(ToricError::NotInterior);
    }
    match sigma.lattice().primitive_on_ray(v) {
        Ok((p, r)) if r.is_one() => Ok(p),
        _ => Err(ToricError::NotPrimitive),
    }
}

/// Whether the torsion point `t` acts trivially on the torus of the divisor
/// of `v`, i.e. `t ∈ (Q·v + N)/N`.
pub fn fixes_exceptional_torus(lattice: &Lattice, v: &[Rat], t: &[Rat]) -> Result<bool> {
    let (prim, _) = lattice.primitive_on_ray(v)?;
    let y: Vec<Int> = lattice.coordinates(&prim)?.iter().map(|q| q.to_integer()).collect();
    let x = lattice.coordinates(t)?;
    // y·V = (±1, 0, …, 0): the rows of V⁻¹ form a basis whose first vector is ±y
    let snf = smith_normal_form(&IntMatrix::from_rows(vec![y]));
    let z = snf.v.to_qmatrix().left_apply(&x);
    Ok(z.iter().skip(1).all(Rat::is_integer))
}

/// `|Aut_σ(M)|` is at most the number of ray permutations.
pub fn ray_permutation_bound(sigma: &Cone) -> usize {
    (1..=sigma.rays().len()).product()
}
