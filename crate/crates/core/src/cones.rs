//! Pointed full-dimensional rational polyhedral cones and fans.
//!
//! Rays are stored primitive in the ambient lattice and sorted
//! lexicographically; facet normals are primitive in the dual lattice.
//! Simplicial cones get their facets from the inverse of the ray matrix,
//! everything else goes through the double description method.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{self, Int, QMatrix, QVec, Rat};
use crate::error::{Result, ToricError};
use crate::lattice::Lattice;

/// A pointed, full-dimensional rational polyhedral cone in `N ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    lattice: Lattice,
    rays: Vec<QVec>,
    facets: Vec<QVec>,
}

impl Cone {
    /// Cone spanned by `generators`; each generator must span an extreme ray.
    pub fn new(lattice: Lattice, generators: &[QVec]) -> Result<Self> {
        let n = lattice.dim();
        let mut rays: Vec<QVec> = Vec::with_capacity(generators.len());
        for g in generators {
            lattice.check_dim(g)?;
            let p = lattice.primitive_generator(g)?;
            if rays.contains(&p) {
                return Err(ToricError::DegenerateCone("repeated ray".into()));
            }
            rays.push(p);
        }
        if QMatrix::new(rays.clone()).rank() < n {
            return Err(ToricError::DegenerateCone("not full-dimensional".into()));
        }
        rays.sort_by(|a, b| arith::lex_cmp(a, b));

        let directions = if rays.len() == n { simplicial_facets(&rays) } else { double_description(&rays) };
        let dual = lattice.dual();
        let mut facets: Vec<QVec> =
            directions.iter().map(|d| dual.primitive_generator(d)).collect::<Result<_>>()?;
        facets.sort_by(|a, b| arith::lex_cmp(a, b));
        facets.dedup();

        if QMatrix::new(facets.clone()).rank() < n {
            return Err(ToricError::DegenerateCone("not pointed".into()));
        }
        for r in &rays {
            let tight: Vec<QVec> = facets.iter().filter(|u| arith::dot(u, r).is_zero()).cloned().collect();
            let rank = if tight.is_empty() { 0 } else { QMatrix::new(tight).rank() };
            if rank != n - 1 {
                return Err(ToricError::DegenerateCone("generator is not an extreme ray".into()));
            }
        }
        Ok(Cone { lattice, rays, facets })
    }

    /// Convenience constructor from integer generators.
    pub fn from_int_rays(lattice: Lattice, rays: &[&[i64]]) -> Result<Self> {
        let rays: Vec<QVec> = rays.iter().map(|r| arith::qvec(r)).collect();
        Cone::new(lattice, &rays)
    }

    /// The positive orthant in `Zⁿ`.
    pub fn orthant(n: usize) -> Self {
        Cone::new(Lattice::standard(n), &QMatrix::identity(n).rows).expect("orthant is a cone")
    }

    /// The same directions, re-read in another lattice of the same dimension.
    pub fn in_lattice(&self, lattice: Lattice) -> Result<Cone> {
        if lattice.dim() != self.dim() {
            return Err(ToricError::DimensionMismatch { expected: self.dim(), got: lattice.dim() });
        }
        let facets = self
            .facets
            .iter()
            .map(|u| lattice.dual().primitive_generator(u))
            .collect::<Result<Vec<_>>>()?;
        let mut rays = self.rays.iter().map(|r| lattice.primitive_generator(r)).collect::<Result<Vec<_>>>()?;
        rays.sort_by(|a, b| arith::lex_cmp(a, b));
        let mut facets = facets;
        facets.sort_by(|a, b| arith::lex_cmp(a, b));
        Ok(Cone { lattice, rays, facets })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[QVec] {
        &self.facets
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        v.len() == self.dim() && self.facets.iter().all(|u| !arith::dot(u, v).is_negative())
    }

    /// `⟨u, v⟩ > 0` for every facet normal `u`.
    pub fn relint_contains(&self, v: &[Rat]) -> bool {
        v.len() == self.dim() && self.facets.iter().all(|u| arith::dot(u, v).is_positive())
    }

    /// Rays lying on the facet with normal `u`.
    pub fn facet_rays(&self, u: &[Rat]) -> Vec<QVec> {
        self.rays.iter().filter(|r| arith::dot(u, r).is_zero()).cloned().collect()
    }

    /// `σ^∨ ⊂ M ⊗ Q`, generated by the facet normals.
    pub fn dual_cone(&self) -> Result<Cone> {
        Cone::new(self.lattice.dual(), &self.facets)
    }

    /// Sum of the primitive ray generators; always in the relative interior.
    pub fn ray_sum(&self) -> QVec {
        self.rays.iter().fold(vec![Rat::zero(); self.dim()], |acc, r| arith::add(&acc, r))
    }

    /// `{ v ∈ σ ∩ N : 0 < ⟨m, v⟩ ≤ c }`, ordered by `⟨m, v⟩` then lexicographically.
    pub fn slice_lattice_points(&self, m: &[Rat], c: &Rat) -> Result<Vec<QVec>> {
        self.slice_points_capped(m, c, None)
    }

    pub(crate) fn slice_points_capped(&self, m: &[Rat], c: &Rat, cap: Option<usize>) -> Result<Vec<QVec>> {
        self.lattice.check_dim(m)?;
        let n = self.dim();
        let mut vertices: Vec<QVec> = vec![vec![Rat::zero(); n]];
        for r in &self.rays {
            let h = arith::dot(m, r);
            if !h.is_positive() {
                return Err(ToricError::UnboundedSlice);
            }
            vertices.push(arith::scale(r, &(c / h)));
        }
        let lo: QVec = (0..n).map(|j| vertices.iter().map(|v| v[j].clone()).min().unwrap()).collect();
        let hi: QVec = (0..n).map(|j| vertices.iter().map(|v| v[j].clone()).max().unwrap()).collect();

        let mut out = Vec::new();
        let mut coords: Vec<Int> = vec![Int::zero(); n];
        self.scan_box(0, &lo, &hi, &mut coords, &mut vec![Rat::zero(); n], &mut |v| {
            if !self.contains(v) {
                return Ok(());
            }
            let h = arith::dot(m, v);
            if h.is_positive() && h <= *c {
                out.push((h, v.to_vec()));
                if let Some(cap) = cap {
                    if out.len() > cap {
                        return Err(ToricError::CapExceeded { cap });
                    }
                }
            }
            Ok(())
        })?;
        out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| arith::lex_cmp(&a.1, &b.1)));
        Ok(out.into_iter().map(|(_, v)| v).collect())
    }

    /// Walks lattice points in the ambient box `[lo, hi]` using the upper
    /// triangular canonical basis, fixing one ambient coordinate per level.
    fn scan_box(
        &self,
        level: usize,
        lo: &[Rat],
        hi: &[Rat],
        coords: &mut Vec<Int>,
        partial: &mut QVec,
        visit: &mut dyn FnMut(&[Rat]) -> Result<()>,
    ) -> Result<()> {
        let n = self.dim();
        if level == n {
            return visit(partial);
        }
        let b = &self.lattice.basis()[level];
        let pivot = &b[level];
        let start = ((&lo[level] - &partial[level]) / pivot).ceil().to_integer();
        let end = ((&hi[level] - &partial[level]) / pivot).floor().to_integer();
        let mut x = start;
        while x <= end {
            let xq = arith::rat_int(&x);
            let saved = partial.clone();
            for j in level..n {
                partial[j] += &xq * &b[j];
            }
            coords[level] = x.clone();
            self.scan_box(level + 1, lo, hi, coords, partial, visit)?;
            *partial = saved;
            x += 1;
        }
        Ok(())
    }

    /// Minimal generating set of the monoid `σ ∩ N`, sorted lexicographically.
    ///
    /// Candidates are lattice points of degree at most the sum of the `n`
    /// largest ray degrees, which bounds the fundamental parallelepipeds of
    /// every simplicial subcone spanned by rays. More than `cap` candidates
    /// aborts with [`ToricError::CapExceeded`].
    pub fn hilbert_basis(&self, cap: usize) -> Result<Vec<QVec>> {
        let n = self.dim();
        let grading = self.facets.iter().fold(vec![Rat::zero(); n], |acc, u| arith::add(&acc, u));
        let mut degrees: Vec<Rat> = self.rays.iter().map(|r| arith::dot(&grading, r)).collect();
        degrees.sort_by(|a, b| b.cmp(a));
        let bound: Rat = degrees.iter().take(n).cloned().sum();
        let candidates = self.slice_points_capped(&grading, &bound, Some(cap))?;

        let mut basis: Vec<QVec> = Vec::new();
        for p in candidates {
            let reducible = basis.iter().any(|h| self.contains(&arith::sub(&p, h)));
            if !reducible {
                basis.push(p);
            }
        }
        basis.sort_by(|a, b| arith::lex_cmp(a, b));
        Ok(basis)
    }

    /// Star subdivision at a primitive interior lattice point `v`.
    pub fn star_subdivision(&self, v: &[Rat]) -> Result<Fan> {
        self.lattice.check_dim(v)?;
        if !self.relint_contains(v) {
            return Err(ToricError::NotInterior);
        }
        let (_, mult) = self.lattice.primitive_on_ray(v).map_err(|e| match e {
            ToricError::NotInLattice => ToricError::NotPrimitive,
            other => other,
        })?;
        if mult != Int::from(1) {
            return Err(ToricError::NotPrimitive);
        }
        let mut cones = self
            .facets
            .iter()
            .map(|u| {
                let mut gens = self.facet_rays(u);
                gens.push(v.to_vec());
                Cone::new(self.lattice.clone(), &gens)
            })
            .collect::<Result<Vec<_>>>()?;
        cones.sort_by(|a, b| {
            a.rays().iter().zip(b.rays()).map(|(x, y)| arith::lex_cmp(x, y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        });
        Fan::new(self.lattice.clone(), cones)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|b| format!("({})", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "cone[{}] in {}", rays.join(", "), self.lattice)
    }
}

/// `σ^∨` for a pointed full-dimensional `σ`.
pub fn dual_cone(sigma: &Cone) -> Result<Cone> {
    sigma.dual_cone()
}

fn simplicial_facets(rays: &[QVec]) -> Vec<QVec> {
    let inv = QMatrix::new(rays.to_vec()).inverse().expect("independent rays");
    // column j of R⁻¹ pairs to δ_ij with ray i
    inv.transpose().rows
}

/// Extreme rays of `{ u : ⟨u, r⟩ ≥ 0 for every generator r }`, seeded from a
/// simplicial subcone.
fn double_description(rays: &[QVec]) -> Vec<QVec> {
    let n = rays[0].len();
    let mut seed: Vec<usize> = Vec::with_capacity(n);
    for i in 0..rays.len() {
        let mut trial: Vec<QVec> = seed.iter().map(|&k| rays[k].clone()).collect();
        trial.push(rays[i].clone());
        if QMatrix::new(trial).rank() == seed.len() + 1 {
            seed.push(i);
        }
        if seed.len() == n {
            break;
        }
    }
    let seed_rays: Vec<QVec> = seed.iter().map(|&k| rays[k].clone()).collect();
    let mut current: Vec<QVec> = simplicial_facets(&seed_rays).iter().map(|u| normalize(u)).collect();
    let mut processed: Vec<usize> = seed.clone();

    for j in 0..rays.len() {
        if seed.contains(&j) {
            continue;
        }
        let vals: Vec<Rat> = current.iter().map(|u| arith::dot(u, &rays[j])).collect();
        let zero_sets: Vec<BTreeSet<usize>> = current
            .iter()
            .map(|u| processed.iter().copied().filter(|&k| arith::dot(u, &rays[k]).is_zero()).collect())
            .collect();
        let mut next: Vec<QVec> = Vec::new();
        for (u, h) in current.iter().zip(&vals) {
            if !h.is_negative() {
                next.push(u.clone());
            }
        }
        for p in 0..current.len() {
            if !vals[p].is_positive() {
                continue;
            }
            for q in 0..current.len() {
                if !vals[q].is_negative() {
                    continue;
                }
                let common: BTreeSet<usize> = zero_sets[p].intersection(&zero_sets[q]).copied().collect();
                if common.len() + 2 < n {
                    continue;
                }
                let blocked = (0..current.len())
                    .any(|w| w != p && w != q && common.is_subset(&zero_sets[w]));
                if blocked {
                    continue;
                }
                let combo = arith::sub(&arith::scale(&current[q], &vals[p]), &arith::scale(&current[p], &vals[q]));
                let combo = normalize(&combo);
                if !next.contains(&combo) {
                    next.push(combo);
                }
            }
        }
        current = next;
        processed.push(j);
    }
    current
}

fn normalize(v: &[Rat]) -> QVec {
    arith::primitive_integer_direction(v).iter().map(arith::rat_int).collect()
}

/// Extreme rays of the H-cone `{ x : ⟨u, x⟩ ≥ 0 for every u }`, which is
/// assumed pointed; brute force over `(n−1)`-subsets of constraints.
pub(crate) fn h_cone_rays(constraints: &[QVec], n: usize) -> Vec<QVec> {
    let mut out: Vec<QVec> = Vec::new();
    if n == 1 {
        for d in [arith::qvec(&[1]), arith::qvec(&[-1])] {
            if constraints.iter().all(|u| !arith::dot(u, &d).is_negative()) {
                out.push(d);
            }
        }
        return out;
    }
    for subset in combinations(constraints.len(), n - 1) {
        let sub = QMatrix::new(subset.iter().map(|&i| constraints[i].clone()).collect());
        let ns = sub.nullspace();
        if ns.len() != 1 {
            continue;
        }
        let d = normalize(&ns[0]);
        for cand in [d.clone(), arith::scale(&d, &arith::rat(-1, 1))] {
            if constraints.iter().all(|u| !arith::dot(u, &cand).is_negative()) && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// All `k`-subsets of `0..len` in lexicographic order.
pub(crate) fn combinations(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// A finite collection of cones in a common lattice whose pairwise
/// intersections are faces of both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    lattice: Lattice,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(lattice: Lattice, cones: Vec<Cone>) -> Result<Self> {
        if cones.iter().any(|c| c.lattice() != &lattice) {
            return Err(ToricError::LatticeMismatch);
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                if !meet_in_common_face(&cones[i], &cones[j]) {
                    return Err(ToricError::DegenerateCone(format!(
                        "cones {i} and {j} do not meet in a common face"
                    )));
                }
            }
        }
        Ok(Fan { lattice, cones })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// All distinct rays of the fan, lexicographically sorted.
    pub fn rays(&self) -> Vec<QVec> {
        let mut rays: Vec<QVec> = self.cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        rays.sort_by(|a, b| arith::lex_cmp(a, b));
        rays.dedup();
        rays
    }

    /// Whether `v` lies in some cone of the fan.
    pub fn support_contains(&self, v: &[Rat]) -> bool {
        self.cones.iter().any(|c| c.contains(v))
    }
}

/// σ ∩ τ is a face of σ and of τ.
pub fn meet_in_common_face(sigma: &Cone, tau: &Cone) -> bool {
    let n = sigma.dim();
    let constraints: Vec<QVec> = sigma.facet_normals().iter().chain(tau.facet_normals()).cloned().collect();
    let rays = h_cone_rays(&constraints, n);
    let p = rays.iter().fold(vec![Rat::zero(); n], |acc, r| arith::add(&acc, r));
    is_face_through(sigma, tau, &p) && is_face_through(tau, sigma, &p)
}

/// The smallest face of `sigma` containing `p` lies inside `other`.
fn is_face_through(sigma: &Cone, other: &Cone, p: &[Rat]) -> bool {
    let tight: Vec<&QVec> = sigma.facet_normals().iter().filter(|u| arith::dot(u, p).is_zero()).collect();
    sigma
        .rays()
        .iter()
        .filter(|r| tight.iter().all(|u| arith::dot(u, r).is_zero()))
        .all(|r| other.contains(r))
}
