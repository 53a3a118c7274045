//! Enumeration of cyclic quotient singularities and the reports built on it:
//! mld spectra over a window, Cartier-index tables, and accumulation scans.
//!
//! A record describes `Aⁿ/(1/r(a₁, …, aₙ))` as the log quotient of `(Aⁿ, 0)`,
//! so quasi-reflections show up as boundary coefficients `1 − 1/rᵢ`. On the
//! orthant the log discrepancy functional of that pair is `(1, …, 1)` in every
//! case, and interior points of `N′ = Zⁿ + Z·a/r` are `{k·a/r} + Z^n_{>0}`.
//! That turns mld, Cartier index and ramification into integer arithmetic on
//! residues mod `r`; [`MldRecord::verify`] recomputes everything through the
//! general lattice path.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, rat, Int, QVec, Rat};
use crate::cones::Cone;
use crate::error::{Result, ToricError};
use crate::pairs::ToricPair;
use crate::quotients::{self, TorusSubgroup};

/// Default ceiling on the sweep bound `R`.
pub const DEFAULT_CAP: u64 = 2000;

/// `1/n!`, the default upper end of a spectrum window.
pub fn default_epsilon(n: usize) -> Rat {
    let fact: u64 = (1..=n as u64).product();
    rat(1, fact as i64)
}

/// An interval of rationals; either end may be open or closed, the upper end
/// may be `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: Rat,
    pub lo_closed: bool,
    pub hi: Option<Rat>,
    pub hi_closed: bool,
}

impl Window {
    pub fn open(lo: Rat, hi: Rat) -> Self {
        Window { lo, lo_closed: false, hi: Some(hi), hi_closed: false }
    }

    pub fn closed(lo: Rat, hi: Rat) -> Self {
        Window { lo, lo_closed: true, hi: Some(hi), hi_closed: true }
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: Rat, hi: Rat) -> Self {
        Window { lo, lo_closed: true, hi: Some(hi), hi_closed: false }
    }

    pub fn above(lo: Rat) -> Self {
        Window { lo, lo_closed: false, hi: None, hi_closed: false }
    }

    /// `(0, 1/n!)`.
    pub fn default_for(n: usize) -> Self {
        Window::open(Rat::zero(), default_epsilon(n))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = match &self.hi {
            None => true,
            Some(h) if self.hi_closed => x <= h,
            Some(h) => x < h,
        };
        above && below
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        match &self.hi {
            None => write!(f, "{open}{}, inf)", self.lo),
            Some(h) => write!(f, "{open}{}, {}{}", self.lo, h, if self.hi_closed { ']' } else { ')' }),
        }
    }
}

/// Accepts `lo:hi` (open at both ends) or bracket notation such as
/// `[1/2, 1)`; `inf` stands for an unbounded upper end.
impl FromStr for Window {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || ToricError::Parse(format!("not a window: {s:?}"));
        let hi_of = |t: &str| -> Result<Option<Rat>> {
            match t.trim() {
                "inf" | "∞" | "+inf" => Ok(None),
                t => arith::parse_rat(t).map(Some),
            }
        };
        let (lo_closed, body, hi_closed) = match (s.chars().next(), s.chars().last()) {
            (Some(a @ ('[' | '(')), Some(b @ (']' | ')'))) if s.len() >= 2 => {
                (a == '[', &s[1..s.len() - 1], b == ']')
            }
            _ => {
                let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
                let w = Window { lo: arith::parse_rat(lo)?, lo_closed: false, hi: hi_of(hi)?, hi_closed: false };
                return Ok(w);
            }
        };
        let (lo, hi) = body.split_once(',').or_else(|| body.split_once(':')).ok_or_else(bad)?;
        let hi = hi_of(hi)?;
        if hi.is_none() && hi_closed {
            return Err(bad());
        }
        Ok(Window { lo: arith::parse_rat(lo)?, lo_closed, hi, hi_closed })
    }
}

impl Serialize for Window {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `1/r(a₁, …, aₙ)` together with its mld data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MldRecord {
    pub r: u64,
    pub weights: Vec<i64>,
    pub dim: usize,
    #[serde(with = "crate::io::rat_serde")]
    pub mld: Rat,
    #[serde(with = "crate::io::qvec_serde")]
    pub witness: QVec,
    pub cartier_index: u64,
    /// Coefficients on the coordinate divisors, in coordinate order.
    #[serde(with = "crate::io::qvec_serde")]
    pub boundary: QVec,
    pub quasi_reflection: bool,
}

impl MldRecord {
    /// Computes the record from residues alone.
    pub fn compute(r: u64, weights: &[i64]) -> Result<Self> {
        if r == 0 || weights.is_empty() {
            return Err(ToricError::OutOfRange("need r ≥ 1 and at least one weight".into()));
        }
        let ri = r as i64;
        let reduced: Vec<i64> = weights.iter().map(|a| a.rem_euclid(ri)).collect();
        let g = reduced.iter().fold(ri, |acc, &a| acc.gcd(&a));
        let order = ri / g;
        let a: Vec<i64> = reduced.iter().map(|x| x / g).collect();
        let n = a.len();

        let mut best: Option<(i64, Vec<i64>)> = None;
        for k in 0..order {
            let point: Vec<i64> = a
                .iter()
                .map(|&ai| match (k * ai).rem_euclid(order) {
                    0 => order,
                    x => x,
                })
                .collect();
            let s: i64 = point.iter().sum();
            let better = match &best {
                None => true,
                Some((bs, bp)) => s < *bs || (s == *bs && point < *bp),
            };
            if better {
                best = Some((s, point));
            }
        }
        let (s, point) = best.expect("k = 0 is always a candidate");
        let boundary: QVec = (0..n)
            .map(|i| {
                let ram = a.iter().enumerate().filter(|&(j, _)| j != i).fold(order, |acc, (_, &x)| acc.gcd(&x));
                Rat::one() - rat(1, ram)
            })
            .collect();
        let sum: i64 = a.iter().sum();
        Ok(MldRecord {
            r,
            weights: reduced,
            dim: n,
            mld: rat(s, order),
            witness: point.iter().map(|&x| rat(x, order)).collect(),
            cartier_index: (order / order.gcd(&sum)) as u64,
            quasi_reflection: boundary.iter().any(|b| !b.is_zero()),
            boundary,
        })
    }

    pub fn subgroup(&self) -> Result<TorusSubgroup> {
        TorusSubgroup::cyclic(self.r, &self.weights)
    }

    /// The log quotient of `(Aⁿ, 0)` by the cyclic group.
    pub fn pair(&self) -> Result<ToricPair> {
        let up = ToricPair::without_boundary(Cone::orthant(self.dim));
        quotients::log_quotient(&up, &self.subgroup()?)
    }

    /// Recomputes the record through the general lattice path and checks the
    /// quotient law for the witness pulled back to `Zⁿ`.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(ToricError::Verification(format!("1/{}{:?}: {what}", self.r, self.weights)));
        let f = self.subgroup()?;
        let pair = self.pair()?;
        let mld = pair.mld()?;
        if mld.value != self.mld {
            return fail(&format!("slice mld {} differs from {}", mld.value, self.mld));
        }
        if pair.log_discrepancy(&self.witness)? != self.mld {
            return fail("witness does not reproduce the mld");
        }
        if pair.cartier_index()? != Int::from(self.cartier_index) {
            return fail("Cartier index differs");
        }
        for (i, b) in self.boundary.iter().enumerate() {
            let mut e = vec![Rat::zero(); self.dim];
            e[i] = Rat::one();
            if pair.coefficient_of(&f.overlattice().primitive_generator(&e)?) != Some(b) {
                return fail("boundary differs");
            }
        }
        let up = ToricPair::without_boundary(Cone::orthant(self.dim));
        let v_up = f.base().primitive_generator(&self.witness)?;
        let check = quotients::quotient_ld_check(&up, &f, &v_up)?;
        let (v_down, _) = f.overlattice().primitive_on_ray(&v_up)?;
        if v_down != self.witness {
            return fail("witness is not primitive");
        }
        if check.downstairs != self.mld {
            return fail("quotient law does not reproduce the mld");
        }
        Ok(())
    }
}

const MAX_KEY_DIM: usize = 4;

/// Hermite key of `rZⁿ + Z·a` after permuting coordinates by `perm`.
fn hnf_key(r: i64, a: &[i64], perm: &[usize]) -> [i64; MAX_KEY_DIM * MAX_KEY_DIM] {
    let n = a.len();
    assert!(n <= MAX_KEY_DIM, "dedupe keys support n ≤ {MAX_KEY_DIM}");
    let mut rows = [[0i64; MAX_KEY_DIM]; MAX_KEY_DIM + 1];
    for (c, &p) in perm.iter().enumerate() {
        rows[0][c] = a[p].rem_euclid(r);
    }
    for i in 0..n {
        rows[i + 1][i] = r;
    }
    let modulus = r * r;
    for c in 0..n {
        loop {
            let pivot = (c..=n).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].abs());
            let Some(p) = pivot else { break };
            rows.swap(c, p);
            let pr = rows[c];
            let mut done = true;
            for row in rows.iter_mut().take(n + 1).skip(c + 1) {
                let q = row[c].div_euclid(pr[c]);
                if q != 0 {
                    for k in c..n {
                        row[k] = (row[k] - q * pr[k]).rem_euclid(modulus);
                    }
                }
                done &= row[c] == 0;
            }
            if done {
                break;
            }
        }
        let pr = rows[c];
        for row in rows.iter_mut().take(c) {
            let q = row[c].div_euclid(pr[c]);
            for k in c..n {
                row[k] -= q * pr[k];
            }
        }
    }
    let mut key = [0i64; MAX_KEY_DIM * MAX_KEY_DIM];
    for i in 0..n {
        key[i * MAX_KEY_DIM..i * MAX_KEY_DIM + n].copy_from_slice(&rows[i][..n]);
    }
    key
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Canonical form of the overlattice `Zⁿ + Z·a/r` up to permuting
/// coordinates: the least Hermite key over all permutations.
pub fn dedupe_key(r: u64, weights: &[i64]) -> Vec<i64> {
    let n = weights.len();
    let key = permutations(n).iter().map(|p| hnf_key(r as i64, weights, p)).min().expect("at least one permutation");
    (0..n).flat_map(|i| key[i * MAX_KEY_DIM..i * MAX_KEY_DIM + n].to_vec()).collect()
}

fn records_for_r(n: usize, r: u64, window: Option<&Window>, dedupe: bool) -> Vec<MldRecord> {
    let ri = r as i64;
    let perms = permutations(n);
    let mut seen: HashSet<[i64; MAX_KEY_DIM * MAX_KEY_DIM]> = HashSet::new();
    let mut out = Vec::new();
    let mut a = vec![0i64; n];
    loop {
        let keep = if dedupe {
            let g = a.iter().fold(ri, |acc, &x| acc.gcd(&x));
            g == 1 && seen.insert(perms.iter().map(|p| hnf_key(ri, &a, p)).min().expect("permutation"))
        } else {
            true
        };
        if keep {
            let rec = MldRecord::compute(r, &a).expect("r ≥ 1");
            if window.is_none_or(|w| w.contains(&rec.mld)) {
                out.push(rec);
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < ri {
                break;
            }
            a[i] = 0;
        }
    }
}

/// Streams records for `1 ≤ r ≤ rmax` in `(r, weights)` order. Batches of
/// `r` are computed in parallel and merged in order.
pub struct CyclicSweep {
    dim: usize,
    rmax: u64,
    next_r: u64,
    window: Option<Window>,
    dedupe: bool,
    buffer: VecDeque<MldRecord>,
}

const BATCH: u64 = 32;

impl Iterator for CyclicSweep {
    type Item = MldRecord;

    fn next(&mut self) -> Option<MldRecord> {
        while self.buffer.is_empty() {
            if self.next_r > self.rmax {
                return None;
            }
            let hi = (self.next_r + BATCH - 1).min(self.rmax);
            let batch: Vec<Vec<MldRecord>> = (self.next_r..=hi)
                .into_par_iter()
                .map(|r| records_for_r(self.dim, r, self.window.as_ref(), self.dedupe))
                .collect();
            self.buffer.extend(batch.into_iter().flatten());
            self.next_r = hi + 1;
        }
        self.buffer.pop_front()
    }
}

/// Cyclic quotient singularities `1/r(a)` with `a ∈ [0, r)ⁿ`, `r ≤ rmax`,
/// optionally restricted to mld in `window`.
///
/// With `dedupe` only weights generating a group of order exactly `r` are
/// kept (smaller orders were already seen at `r/gcd`), and within one `r`
/// the first weight vector per [`dedupe_key`] wins.
pub fn enumerate_cyclic(
    n: usize,
    rmax: u64,
    window: Option<Window>,
    dedupe: bool,
    cap: u64,
) -> Result<CyclicSweep> {
    if !(2..=3).contains(&n) {
        return Err(ToricError::OutOfRange(format!("cyclic sweeps support n = 2, 3, not {n}")));
    }
    if rmax > cap {
        return Err(ToricError::CapExceeded { cap: cap as usize });
    }
    Ok(CyclicSweep { dim: n, rmax, next_r: 1, window, dedupe, buffer: VecDeque::new() })
}

/// `1/r(a)` without its mld data; used for witnesses in reports.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicSpec {
    pub r: u64,
    pub weights: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumValue {
    #[serde(with = "crate::io::rat_serde")]
    pub value: Rat,
    pub multiplicity: usize,
    /// Records of least `r` attaining the value (at most four).
    pub witnesses: Vec<CyclicSpec>,
}

/// Strictly increasing runs in discovery order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccAudit {
    pub threshold: usize,
    pub longest_run: usize,
    pub runs_over_threshold: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub window: Window,
    pub r1: u64,
    pub r2: u64,
    #[serde(with = "crate::io::qvec_serde")]
    pub values_r1: Vec<Rat>,
    pub values_r2: Vec<SpectrumValue>,
    /// Values present at `r2` but not at `r1`.
    #[serde(with = "crate::io::qvec_serde")]
    pub new_at_r2: Vec<Rat>,
    pub stabilized: bool,
    pub acc_audit: AccAudit,
}

impl SpectrumReport {
    pub fn values(&self) -> Vec<Rat> {
        self.values_r2.iter().map(|v| v.value.clone()).collect()
    }
}

pub const ACC_RUN_THRESHOLD: usize = 8;

/// Distinct mld values in `window` among records with `r ≤ r1` and `r ≤ r2`.
pub fn spectrum(records: &[MldRecord], window: &Window, r1: u64, r2: u64) -> SpectrumReport {
    let mut at_r1: BTreeSet<Rat> = BTreeSet::new();
    let mut at_r2: BTreeMap<Rat, (usize, Vec<CyclicSpec>)> = BTreeMap::new();
    let mut discovery: Vec<Rat> = Vec::new();
    for rec in records.iter().filter(|rec| rec.r <= r2 && window.contains(&rec.mld)) {
        if rec.r <= r1 {
            at_r1.insert(rec.mld.clone());
        }
        let entry = at_r2.entry(rec.mld.clone()).or_insert_with(|| {
            discovery.push(rec.mld.clone());
            (0, Vec::new())
        });
        entry.0 += 1;
        let spec = CyclicSpec { r: rec.r, weights: rec.weights.clone() };
        match entry.1.first() {
            Some(w) if w.r < rec.r => {}
            Some(w) if w.r > rec.r => entry.1 = vec![spec],
            _ if entry.1.len() < 4 => entry.1.push(spec),
            _ => {}
        }
    }
    let (mut longest, mut over, mut run) = (0usize, 0usize, 0usize);
    for (i, v) in discovery.iter().enumerate() {
        run = if i > 0 && v > &discovery[i - 1] { run + 1 } else { 1 };
        longest = longest.max(run);
        let ends = i + 1 == discovery.len() || discovery[i + 1] <= *v;
        if ends && run > ACC_RUN_THRESHOLD {
            over += 1;
        }
    }
    let new_at_r2: Vec<Rat> = at_r2.keys().filter(|v| !at_r1.contains(*v)).cloned().collect();
    SpectrumReport {
        window: window.clone(),
        r1,
        r2,
        stabilized: new_at_r2.is_empty() && at_r1.len() == at_r2.len(),
        new_at_r2,
        values_r1: at_r1.into_iter().collect(),
        values_r2: at_r2
            .into_iter()
            .map(|(value, (multiplicity, witnesses))| SpectrumValue { value, multiplicity, witnesses })
            .collect(),
        acc_audit: AccAudit { threshold: ACC_RUN_THRESHOLD, longest_run: longest, runs_over_threshold: over },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexTableRow {
    pub window: Window,
    pub indices_r1: BTreeSet<u64>,
    pub indices_r2: BTreeSet<u64>,
    pub max: Option<u64>,
    pub grew: bool,
}

/// Observed Cartier indices per mld window, at the two sweep bounds.
pub fn index_table(records: &[MldRecord], windows: &[Window], r1: u64, r2: u64) -> Vec<IndexTableRow> {
    windows
        .iter()
        .map(|w| {
            let mut indices_r1 = BTreeSet::new();
            let mut indices_r2 = BTreeSet::new();
            for rec in records.iter().filter(|rec| rec.r <= r2 && w.contains(&rec.mld)) {
                indices_r2.insert(rec.cartier_index);
                if rec.r <= r1 {
                    indices_r1.insert(rec.cartier_index);
                }
            }
            IndexTableRow {
                window: w.clone(),
                max: indices_r2.iter().next_back().copied(),
                grew: indices_r1 != indices_r2,
                indices_r1,
                indices_r2,
            }
        })
        .collect()
}

/// The rational of least denominator (then least numerator) in `[lo, hi]`.
pub fn simplest_rational(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    if lo <= &Rat::zero() && hi >= &Rat::zero() {
        return Rat::zero();
    }
    if hi < &Rat::zero() {
        return -simplest_rational(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if &fl + Rat::one() <= *hi {
        return fl + Rat::one();
    }
    // lo, hi share the integer part; recurse on reciprocals of the fractions
    let (flo, fhi) = (lo - &fl, hi - &fl);
    fl + simplest_rational(&fhi.recip(), &flo.recip()).recip()
}

/// mld of a 2-dimensional pair: `1/r(1, q)` with boundary
/// `(1 − 1/m₁, 1 − 1/m₂)`.
fn standard_mld_2d(r: i64, q: i64, m1: i64, m2: i64) -> Rat {
    let mut best: Option<Rat> = None;
    for k in 0..r {
        let c1 = match k % r {
            0 => r,
            x => x,
        };
        let c2 = match (k * q) % r {
            0 => r,
            x => x,
        };
        let v = rat(c1, r * m1) + rat(c2, r * m2);
        if best.as_ref().is_none_or(|b| &v < b) {
            best = Some(v);
        }
    }
    best.expect("r ≥ 1")
}

/// A 2-dimensional pair with standard coefficients: `1/r(1, q)` and
/// boundary `(1 − 1/m₁, 1 − 1/m₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardPair2d {
    pub r: i64,
    pub q: i64,
    pub m1: i64,
    pub m2: i64,
    #[serde(with = "crate::io::rat_serde")]
    pub mld: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    #[serde(with = "crate::io::qvec_serde")]
    pub values: Vec<Rat>,
    /// Simplest rational within `resolution` of the dense end.
    #[serde(with = "crate::io::rat_serde")]
    pub limit: Rat,
    pub matches: Vec<StandardPair2d>,
    /// Nearest lower-dimensional value when nothing matches exactly.
    #[serde(default, with = "opt_rat")]
    pub nearest: Option<Rat>,
}

mod opt_rat {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&arith::format_rat(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rat>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|s| arith::parse_rat(&s)).transpose().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccumulationReport {
    pub dim: usize,
    #[serde(with = "crate::io::rat_serde")]
    pub resolution: Rat,
    pub matched: Vec<Cluster>,
    pub unmatched: Vec<Cluster>,
}

/// Clusters of at least this many values count as accumulating.
pub const MIN_CLUSTER: usize = 3;

/// Groups the distinct mld values into runs whose consecutive gaps are below
/// `resolution`, guesses a limit for each run, and looks the limit up among
/// 2-dimensional pairs with standard coefficients (`r, mᵢ ≤ denominator_cap`).
pub fn accumulation_scan(
    records: &[MldRecord],
    n: usize,
    resolution: &Rat,
    denominator_cap: i64,
) -> Result<AccumulationReport> {
    if n < 2 {
        return Err(ToricError::OutOfRange("accumulation scans need n ≥ 2".into()));
    }
    let values: Vec<Rat> = records
        .iter()
        .filter(|r| r.dim == n)
        .map(|r| r.mld.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut runs: Vec<Vec<Rat>> = Vec::new();
    for v in values {
        match runs.last_mut() {
            Some(run) if &(&v - run.last().expect("non-empty")) < resolution => run.push(v),
            _ => runs.push(vec![v]),
        }
    }

    let mut lower: BTreeMap<Rat, Vec<StandardPair2d>> = BTreeMap::new();
    if n == 3 {
        for r in 1..=denominator_cap {
            for q in 0..r {
                for m1 in 1..=denominator_cap {
                    for m2 in 1..=denominator_cap {
                        let mld = standard_mld_2d(r, q, m1, m2);
                        lower.entry(mld.clone()).or_default().push(StandardPair2d { r, q, m1, m2, mld });
                    }
                }
            }
        }
    }

    let mut report = AccumulationReport { dim: n, resolution: resolution.clone(), matched: vec![], unmatched: vec![] };
    for run in runs.into_iter().filter(|run| run.len() >= MIN_CLUSTER) {
        let first_gap = &run[1] - &run[0];
        let last_gap = &run[run.len() - 1] - &run[run.len() - 2];
        let dense_end = if first_gap <= last_gap { &run[0] } else { &run[run.len() - 1] };
        let limit = simplest_rational(&(dense_end - resolution), &(dense_end + resolution));
        let matches: Vec<StandardPair2d> = lower.get(&limit).map(|m| m.iter().take(8).cloned().collect()).unwrap_or_default();
        let nearest = if matches.is_empty() {
            let above = lower.range(limit.clone()..).next().map(|(k, _)| k.clone());
            let below = lower.range(..limit.clone()).next_back().map(|(k, _)| k.clone());
            match (below, above) {
                (Some(b), Some(a)) => Some(if &limit - &b <= &a - &limit { b } else { a }),
                (b, a) => b.or(a),
            }
        } else {
            None
        };
        let cluster = Cluster { values: run, limit, matches, nearest };
        if cluster.matches.is_empty() {
            report.unmatched.push(cluster);
        } else {
            report.matched.push(cluster);
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(ToricError::Parse(format!("unknown format {s:?}"))),
        }
    }
}

const CSV_HEADER: [&str; 8] = ["r", "weights", "dim", "mld", "witness", "cartier_index", "boundary", "quasi_reflection"];

fn join_rats(v: &[Rat]) -> String {
    v.iter().map(arith::format_rat).collect::<Vec<_>>().join(" ")
}

/// Writes records as CSV (vectors space-separated) or as a JSON array.
pub fn emit_records<W: Write>(records: &[MldRecord], format: Format, out: W) -> Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for rec in records {
                let weights = rec.weights.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
                w.write_record([
                    rec.r.to_string(),
                    weights,
                    rec.dim.to_string(),
                    arith::format_rat(&rec.mld),
                    join_rats(&rec.witness),
                    rec.cartier_index.to_string(),
                    join_rats(&rec.boundary),
                    rec.quasi_reflection.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn read_records_json<R: Read>(input: R) -> Result<Vec<MldRecord>> {
    Ok(serde_json::from_reader(input)?)
}

/// Pretty JSON of any report, newline-terminated.
pub fn emit_json<T: Serialize, W: Write>(report: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_spectrum_json<R: Read>(input: R) -> Result<SpectrumReport> {
    Ok(serde_json::from_reader(input)?)
}

/// Index set emitted for a window as a small golden document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexGolden {
    pub dim: usize,
    pub rmax: u64,
    pub window: Window,
    pub indices: BTreeSet<u64>,
}
