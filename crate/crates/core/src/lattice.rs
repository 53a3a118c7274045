//! Exact integer and rational linear algebra on lattices.
//!
//! A [`Lattice`] is a full-rank subgroup of `Qⁿ`. It is stored in canonical
//! form: generators are scaled to integers, put in upper-triangular Hermite
//! normal form and scaled back, so two lattices with the same span compare
//! equal no matter how they were generated.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Int, QMatrix, QVec, Rat};
use crate::error::{Result, ToricError};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged integer matrix");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Int::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::new(
            (0..self.rows).map(|i| self.row(i).iter().map(arith::rat_int).collect()).collect(),
        )
    }

    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        self.to_qmatrix().determinant().to_integer()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == Int::from((i == j) as i64)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        for j in 0..self.cols {
            let d = c * &self[(src, j)];
            self[(dst, j)] += d;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        for i in 0..self.rows {
            let d = c * &self[(i, src)];
            self[(i, dst)] += d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = x;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal, `s₁ | s₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `S`, including zeros and ones.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.nrows().min(self.s.ncols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form by elementary row and column operations.
///
/// Pivot: smallest nonzero absolute value in the remaining block, ties to the
/// lowest row and then the lowest column.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.nrows(), a.ncols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if s[(pi, pj)].abs() <= x.abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return SmithDecomposition { s, u, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match bad_row {
                Some(i) => {
                    s.add_row(t, i, &Int::one());
                    u.add_row(t, i, &Int::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { s, u, v }
}

/// Upper-triangular row Hermite normal form of the row span of `rows`.
///
/// Returns exactly `rank` rows with positive pivots, entries above each pivot
/// reduced into `[0, pivot)`. Fails when the rows do not span full rank.
pub fn hermite_normal_form(rows: &[Vec<Int>], ncols: usize) -> Result<Vec<Vec<Int>>> {
    let mut pending: Vec<Vec<Int>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: Vec<Vec<Int>> = Vec::with_capacity(ncols);
    for col in 0..ncols {
        loop {
            let mut nonzero: Vec<usize> = (0..pending.len()).filter(|&i| !pending[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by(|&a, &b| pending[a][col].abs().cmp(&pending[b][col].abs()).then(a.cmp(&b)));
            let p = nonzero[0];
            let pivot_row = pending[p].clone();
            for &i in &nonzero[1..] {
                let q = pending[i][col].div_floor(&pivot_row[col]);
                for (x, y) in pending[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        let Some(p) = (0..pending.len()).find(|&i| !pending[i][col].is_zero()) else {
            return Err(ToricError::SingularLattice);
        };
        let mut row = pending.swap_remove(p);
        if row[col].is_negative() {
            row.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        out.push(row);
        pending.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    for j in 0..ncols {
        let pivot = out[j][j].clone();
        for i in 0..j {
            let q = out[i][j].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            let pj = out[j].clone();
            for (x, y) in out[i].iter_mut().zip(&pj) {
                *x -= &q * y;
            }
        }
    }
    Ok(out)
}

/// Invariant factors `d₁ | d₂ | … | d_k`, all greater than one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    #[serde(with = "crate::io::ints_serde")]
    factors: Vec<Int>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds the group from any diagonal; entries equal to one are dropped.
    pub fn from_diagonal(diag: impl IntoIterator<Item = Int>) -> Result<Self> {
        let mut factors: Vec<Int> = diag.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
        if factors.iter().any(Zero::is_zero) {
            return Err(ToricError::Verification("infinite quotient where a finite group was expected".into()));
        }
        factors.sort();
        if factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            // not yet a divisibility chain: re-run through SNF of the diagonal
            let k = factors.len();
            let mut m = IntMatrix::zeros(k, k);
            for (i, f) in factors.iter().enumerate() {
                m[(i, i)] = f.clone();
            }
            return Self::from_diagonal(smith_normal_form(&m).diagonal());
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn order(&self) -> Int {
        self.factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A full-rank lattice in `Qⁿ`, canonicalized by Hermite normal form.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: Vec<QVec>,
    inverse: QMatrix,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Lattice {}

impl Hash for Lattice {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl Lattice {
    /// The lattice spanned by `generators` (at least `n` vectors of length `n`).
    pub fn new(generators: &[QVec]) -> Result<Self> {
        let n = generators.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(ToricError::SingularLattice);
        }
        if let Some(bad) = generators.iter().find(|g| g.len() != n) {
            return Err(ToricError::DimensionMismatch { expected: n, got: bad.len() });
        }
        let den = arith::lcm_of_denominators(generators.iter().flatten());
        let den_q = arith::rat_int(&den);
        let ints: Vec<Vec<Int>> = generators
            .iter()
            .map(|g| g.iter().map(|x| (x * &den_q).to_integer()).collect())
            .collect();
        let hnf = hermite_normal_form(&ints, n)?;
        let basis: Vec<QVec> = hnf
            .into_iter()
            .map(|row| row.into_iter().map(|x| Rat::new(x, den.clone())).collect())
            .collect();
        let inverse = QMatrix::new(basis.clone()).inverse().ok_or(ToricError::SingularLattice)?;
        Ok(Lattice { basis, inverse })
    }

    /// `Zⁿ`.
    pub fn standard(n: usize) -> Self {
        Lattice::new(&QMatrix::identity(n).rows).expect("identity spans")
    }

    /// `Zⁿ + Z·(a₁/r, …, aₙ/r)`.
    pub fn cyclic_overlattice(r: u64, weights: &[i64]) -> Result<Self> {
        if r == 0 {
            return Err(ToricError::OutOfRange("cyclic order must be positive".into()));
        }
        let n = weights.len();
        let mut gens = QMatrix::identity(n).rows;
        gens.push(weights.iter().map(|&a| arith::rat(a, r as i64)).collect());
        Lattice::new(&gens)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis rows (upper triangular).
    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::new(self.basis.clone())
    }

    /// Least common denominator of the basis entries.
    pub fn denominator(&self) -> Int {
        arith::lcm_of_denominators(self.basis.iter().flatten())
    }

    /// Coordinates of `v` in the canonical basis.
    pub fn coordinates(&self, v: &[Rat]) -> Result<QVec> {
        self.check_dim(v)?;
        Ok(self.inverse.left_apply(v))
    }

    /// Point with the given integer coordinates.
    pub fn point(&self, coords: &[Int]) -> QVec {
        let mut out = vec![Rat::zero(); self.dim()];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            let c = arith::rat_int(c);
            for (o, x) in out.iter_mut().zip(b) {
                *o += &c * x;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        v.len() == self.dim() && self.inverse.left_apply(v).iter().all(Rat::is_integer)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.dim() == other.dim() && self.basis.iter().all(|b| other.contains(b))
    }

    /// `M = { m : ⟨m, v⟩ ∈ Z for all v ∈ N }`; generators are the rows of the
    /// inverse-transpose of the basis matrix.
    pub fn dual(&self) -> Lattice {
        Lattice::new(&self.inverse.transpose().rows).expect("inverse of a basis is a basis")
    }

    /// Covolume `|det B|`.
    pub fn covolume(&self) -> Rat {
        self.basis_matrix().determinant().abs()
    }

    pub(crate) fn check_dim(&self, v: &[Rat]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(ToricError::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// Primitive generator of the ray `Q≥0·v ∩ N`.
    pub fn primitive_generator(&self, v: &[Rat]) -> Result<QVec> {
        if arith::is_zero_vec(v) {
            return Err(ToricError::ZeroVector);
        }
        let coords = self.coordinates(v)?;
        Ok(self.point(&arith::primitive_integer_direction(&coords)))
    }

    /// Lattice element `v = r·v₀` with `v₀` primitive on the ray of `v`.
    ///
    /// Fails with [`ToricError::NotInLattice`] when `v` is not in `N`.
    pub fn primitive_on_ray(&self, v: &[Rat]) -> Result<(QVec, Int)> {
        if arith::is_zero_vec(v) {
            return Err(ToricError::ZeroVector);
        }
        let coords = self.coordinates(v)?;
        let prim = arith::primitive_integer_direction(&coords);
        // v = ratio · v₀, read off a nonzero coordinate
        let k = prim.iter().position(|x| !x.is_zero()).expect("nonzero");
        let ratio = &coords[k] / arith::rat_int(&prim[k]);
        if !ratio.is_integer() {
            return Err(ToricError::NotInLattice);
        }
        Ok((self.point(&prim), ratio.to_integer()))
    }

    /// `N′/N` for `self = N ⊆ over = N′`.
    pub fn quotient_in(&self, over: &Lattice) -> Result<FiniteAbelianGroup> {
        overlattice_quotient(self, over)
    }

    /// Sum `N + Z·extra₁ + …`.
    pub fn extended_by(&self, extra: &[QVec]) -> Result<Lattice> {
        let mut gens = self.basis.clone();
        for e in extra {
            self.check_dim(e)?;
            gens.push(e.clone());
        }
        Lattice::new(&gens)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|b| format!("({})", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// `M = Hom(N, Z)`.
pub fn dual_lattice(n: &Lattice) -> Lattice {
    n.dual()
}

/// Invariant factors of `N′/N` via the Smith form of the coordinate matrix of
/// `N`'s basis in `N′`'s basis.
pub fn overlattice_quotient(base: &Lattice, over: &Lattice) -> Result<FiniteAbelianGroup> {
    if base.dim() != over.dim() {
        return Err(ToricError::DimensionMismatch { expected: base.dim(), got: over.dim() });
    }
    let mut rows = Vec::with_capacity(base.dim());
    for b in base.basis() {
        let c = over.coordinates(b)?;
        if !c.iter().all(Rat::is_integer) {
            return Err(ToricError::NotSublattice);
        }
        rows.push(c.into_iter().map(|x| x.to_integer()).collect());
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(rows));
    FiniteAbelianGroup::from_diagonal(snf.diagonal())
}

/// `(v₀, r)` with `v = r·v₀` and `v₀` primitive in `N`.
pub fn primitive_on_ray(v: &[Rat], n: &Lattice) -> Result<(QVec, Int)> {
    n.primitive_on_ray(v)
}
