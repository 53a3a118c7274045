//! Exact scalar and vector helpers shared by every module.
//!
//! Everything is arbitrary precision: integers are [`BigInt`], rationals are
//! [`BigRational`]. Rational vectors are plain `Vec<Rat>` in ambient
//! coordinates; the pairing between `N ⊗ Q` and `M ⊗ Q` is the dot product.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, ToricError};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type QVec = Vec<Rat>;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Integer vector to rational vector.
pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| rat(x, 1)).collect()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.1"` exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || ToricError::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|_| bad())?;
        let q: Int = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
            return Err(bad());
        }
        let digits = format!("{}{}", if whole_digits.is_empty() { "0" } else { whole_digits }, frac);
        let num: Int = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(Int::from(10), frac.len());
        let value = Rat::new(num, den);
        return Ok(if neg { -value } else { value });
    }
    let p: Int = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(p))
}

pub fn format_rat(q: &Rat) -> String {
    q.to_string()
}

/// `(p₁/q₁, …, pₙ/qₙ)`.
pub fn format_vec(v: &[Rat]) -> String {
    format!("({})", v.iter().map(format_rat).collect::<Vec<_>>().join(", "))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> QVec {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Lexicographic order on rational vectors.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Int {
    xs.into_iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    xs.into_iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

pub fn is_integral(q: &Rat) -> bool {
    q.is_integer()
}

/// The fractional part in `[0, 1)`.
pub fn frac(q: &Rat) -> Rat {
    q - q.floor()
}

pub fn to_i64(x: &Int) -> Option<i64> {
    x.to_i64()
}

pub fn abs(x: &Int) -> Int {
    x.abs()
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    pub rows: Vec<QVec>,
}

impl QMatrix {
    pub fn new(rows: Vec<QVec>) -> Self {
        QMatrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        QMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.nrows(), self.ncols());
        QMatrix {
            rows: (0..c).map(|j| (0..r).map(|i| self.rows[i][j].clone()).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        let oc = other.ncols();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..oc)
                    .map(|j| {
                        row.iter()
                            .zip(&other.rows)
                            .fold(Rat::zero(), |acc, (a, orow)| acc + a * &orow[j])
                    })
                    .collect()
            })
            .collect();
        QMatrix { rows }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rat]) -> QVec {
        (0..self.ncols())
            .map(|j| v.iter().zip(&self.rows).fold(Rat::zero(), |acc, (a, row)| acc + a * &row[j]))
            .collect()
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rat]) -> QVec {
        self.rows.iter().map(|row| dot(row, v)).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.rows.clone();
        let (nr, nc) = (self.nrows(), self.ncols());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..nc {
            if row == nr {
                break;
            }
            let Some(p) = (row..nr).find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..nr {
                if i != row && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for j in 0..nc {
                        let d = &f * &m[row][j];
                        m[i][j] -= d;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (QMatrix { rows: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Rat {
        let n = self.nrows();
        let mut m = self.rows.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else { return Rat::zero() };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= &m[col][col];
            let pivot = m[col][col].clone();
            for i in col + 1..n {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = &m[i][col] / &pivot;
                for j in col..n {
                    let d = &f * &m[col][j];
                    m[i][j] -= d;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.nrows();
        if n != self.ncols() {
            return None;
        }
        let aug = QMatrix {
            rows: self
                .rows
                .iter()
                .zip(QMatrix::identity(n).rows)
                .map(|(a, b)| a.iter().cloned().chain(b).collect())
                .collect(),
        };
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(QMatrix { rows: r.rows.into_iter().map(|row| row[n..].to_vec()).collect() })
    }

    /// Basis of `{ x : self · x = 0 }`.
    pub fn nullspace(&self) -> Vec<QVec> {
        let nc = self.ncols();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rat::zero(); nc];
                x[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r.rows[i][f].clone();
                }
                x
            })
            .collect()
    }

    /// Solves `x · self = b` for a row vector `x`; `None` when inconsistent.
    /// Returns one solution (free variables set to zero).
    pub fn solve_left(&self, b: &[Rat]) -> Option<QVec> {
        // x · A = b  <=>  Aᵀ xᵀ = bᵀ
        self.transpose().solve_right(b)
    }

    /// Solves `self · x = b`; `None` when inconsistent.
    pub fn solve_right(&self, b: &[Rat]) -> Option<QVec> {
        let nc = self.ncols();
        let aug = QMatrix {
            rows: self
                .rows
                .iter()
                .zip(b)
                .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
                .collect(),
        };
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&nc) {
            return None;
        }
        let mut x = vec![Rat::zero(); nc];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.rows[i][nc].clone();
        }
        Some(x)
    }
}

/// Scales a nonzero rational vector to the primitive integer vector on its ray.
pub fn primitive_integer_direction(v: &[Rat]) -> Vec<Int> {
    let l = lcm_of_denominators(v);
    let ints: Vec<Int> = v.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
