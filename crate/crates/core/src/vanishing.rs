//! Vanishing sums of roots of unity: exact tests, partitions into minimal blocks,
//! rotation to a canonical form and exhaustive enumeration by weight.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::sparse_of_sum;
use crate::error::{Error, Result};
use crate::ntheory::{factorize, inv_mod, primes_up_to, primorial_u64};
use crate::root::RootOfUnity;
use crate::sparse::vanishes_i64;
use crate::sum::SumOfRoots;

/// Default weight cap for subset searches.
pub const DEFAULT_MINIMALITY_CAP: usize = 16;
/// Default weight cap for [`enumerate_mvs`].
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

const NUMERIC_ZERO: f64 = 1e-6;

pub fn is_vanishing(s: &SumOfRoots) -> bool {
    s.is_empty() || sparse_of_sum(s).is_zero()
}

/// Terms of a sum at a common modulus with cached floating-point values.
struct Terms {
    modulus: u64,
    exps: Vec<u64>,
    values: Vec<Complex64>,
}

impl Terms {
    fn new(s: &SumOfRoots) -> Self {
        let modulus = s.base_modulus();
        let exps = s.terms().iter().map(|r| r.exponent_at(modulus)).collect();
        let values = s.terms().iter().map(|r| r.to_complex()).collect();
        Terms {
            modulus,
            exps,
            values,
        }
    }

    fn subset_vanishes(&self, idx: &[usize]) -> bool {
        let z: Complex64 = idx.iter().map(|&i| self.values[i]).sum();
        if z.norm() > NUMERIC_ZERO {
            return false;
        }
        let exps: Vec<(u64, i64)> = idx.iter().map(|&i| (self.exps[i], 1)).collect();
        vanishes_i64(self.modulus, &exps)
    }
}

/// Calls `f` on each `r`-subset of `0..n` in lexicographic order; stops at the first `true`.
fn any_combination(n: usize, r: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if r == 0 || r > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = r;
        while i > 0 && idx[i - 1] == i - 1 + n - r {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_cap(s: &SumOfRoots, cap: usize) -> Result<()> {
    if s.weight() > cap {
        return Err(Error::Budget(format!(
            "weight {} exceeds subset-search cap {cap}",
            s.weight()
        )));
    }
    Ok(())
}

/// Whether some proper nonempty sub-multiset vanishes. A vanishing sum has a vanishing
/// proper part iff it has one of size at most half the weight (the complement also vanishes).
fn has_proper_vanishing_subset(terms: &Terms, weight: usize, full_vanishes: bool) -> bool {
    let top = if full_vanishes { weight / 2 } else { weight - 1 };
    (2..=top).any(|r| any_combination(weight, r, |idx| terms.subset_vanishes(idx)))
}

pub fn is_minimal_vanishing(s: &SumOfRoots) -> Result<bool> {
    is_minimal_vanishing_with_cap(s, DEFAULT_MINIMALITY_CAP)
}

pub fn is_minimal_vanishing_with_cap(s: &SumOfRoots, cap: usize) -> Result<bool> {
    check_cap(s, cap)?;
    if s.is_empty() || !is_vanishing(s) {
        return Ok(false);
    }
    Ok(!has_proper_vanishing_subset(&Terms::new(s), s.weight(), true))
}

/// Splits a vanishing sum into minimal vanishing blocks, always extracting the block
/// that is least by size, then by term order.
pub fn partition_minimal(s: &SumOfRoots) -> Result<Vec<SumOfRoots>> {
    partition_minimal_with_cap(s, 2 * DEFAULT_MINIMALITY_CAP)
}

pub fn partition_minimal_with_cap(s: &SumOfRoots, cap: usize) -> Result<Vec<SumOfRoots>> {
    check_cap(s, cap)?;
    if !is_vanishing(s) {
        return Err(Error::NotVanishing);
    }
    let mut rest = s.clone();
    let mut blocks = Vec::new();
    while !rest.is_empty() {
        let terms = Terms::new(&rest);
        let w = rest.weight();
        let mut found = None;
        for r in 2..=w / 2 {
            any_combination(w, r, |idx| {
                if terms.subset_vanishes(idx) {
                    found = Some(idx.to_vec());
                    true
                } else {
                    false
                }
            });
            if found.is_some() {
                break;
            }
        }
        let block = match found {
            Some(idx) => rest.select(&idx),
            None => rest.clone(),
        };
        rest = rest.difference(&block).expect("block is a sub-multiset");
        blocks.push(block);
    }
    Ok(blocks)
}

/// Rotates a minimal vanishing sum so every term has square-free order with all primes
/// at most the weight. Returns the rotated sum and the rotation `ε` with `s' = ε·s`.
///
/// For `n = p^a·m`, the `p^a`-part `u` of each exponent splits as `r + j·p^{a-1}`; a
/// minimal sum has a single `r`, which is rotated away. At a square-free prime, a
/// single populated class `j` is rotated away as well.
pub fn square_free_rotate(s: &SumOfRoots) -> Result<(SumOfRoots, RootOfUnity)> {
    if !is_minimal_vanishing(s)? {
        return Err(Error::NotMinimalVanishing);
    }
    let mut cur = s.clone();
    let mut eps = RootOfUnity::ONE;
    'outer: loop {
        let n = cur.base_modulus();
        for (p, a) in factorize(n) {
            let q = p.pow(a);
            let m = n / q;
            let m_inv = inv_mod(m % q, q).expect("coprime parts");
            let s_unit = q / p;
            let us: Vec<u64> = cur
                .terms()
                .iter()
                .map(|t| crate::ntheory::mul_mod(t.exponent_at(n) % q, m_inv, q))
                .collect();
            let shift = if a >= 2 {
                let r = us[0] % s_unit;
                if us.iter().any(|u| u % s_unit != r) {
                    return Err(Error::Precondition(
                        "vanishing sum mixes residue classes".into(),
                    ));
                }
                (r != 0).then_some(r)
            } else {
                let j = us[0];
                us.iter().all(|&u| u == j).then_some(j).filter(|&j| j != 0)
            };
            if let Some(shift) = shift {
                let rot = RootOfUnity::from_parts(q, q - shift)?;
                cur = cur.rotate(&rot);
                eps = eps.mul(&rot);
                continue 'outer;
            }
        }
        break;
    }
    let w = cur.weight() as u64;
    let n = cur.base_modulus();
    let square_free_small = factorize(n).iter().all(|&(p, a)| a == 1 && p <= w);
    if !square_free_small {
        return Err(Error::Precondition(
            "rotation did not reach square-free orders".into(),
        ));
    }
    Ok((cur, eps))
}

/// A minimal vanishing sum up to rotation: sorted exponents mod `ℓ(k)`, lexicographically
/// least among translates, starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalMVS {
    pub weight: usize,
    pub primorial: u64,
    pub exponents: Vec<u64>,
}

impl CanonicalMVS {
    pub fn to_sum(&self) -> SumOfRoots {
        SumOfRoots::from_exponents(self.primorial, &self.exponents).expect("positive modulus")
    }
}

fn primorial_of(k: usize) -> Result<u64> {
    primorial_u64(k as u64).ok_or_else(|| Error::Budget(format!("primorial({k}) overflows u64")))
}

/// Lexicographically least sorted translate of `exps` mod `ell` that moves a term to 0.
fn least_translate(exps: &[u64], ell: u64) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for &shift in exps {
        let mut cand: Vec<u64> = exps.iter().map(|&e| (e + ell - shift) % ell).collect();
        cand.sort_unstable();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

pub fn canonicalize(s: &SumOfRoots) -> Result<CanonicalMVS> {
    let (rotated, _) = square_free_rotate(s)?;
    let k = rotated.weight();
    let ell = primorial_of(k)?;
    let exps: Vec<u64> = rotated.terms().iter().map(|t| t.exponent_at(ell)).collect();
    Ok(CanonicalMVS {
        weight: k,
        primorial: ell,
        exponents: least_translate(&exps, ell),
    })
}

/// All minimal vanishing sums of one weight up to rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MVSAtlas {
    pub weight: usize,
    pub primorial: u64,
    pub complete: bool,
    pub entries: Vec<CanonicalMVS>,
}

/// Serialized atlas layout: exponent lists mod the primorial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub weight: usize,
    pub primorial: u64,
    pub complete: bool,
    pub entries: Vec<Vec<u64>>,
}

impl MVSAtlas {
    pub fn record(&self) -> AtlasRecord {
        AtlasRecord {
            weight: self.weight,
            primorial: self.primorial,
            complete: self.complete,
            entries: self.entries.iter().map(|e| e.exponents.clone()).collect(),
        }
    }

    pub fn from_record(r: AtlasRecord) -> Self {
        MVSAtlas {
            weight: r.weight,
            primorial: r.primorial,
            complete: r.complete,
            entries: r
                .entries
                .into_iter()
                .map(|exponents| CanonicalMVS {
                    weight: r.weight,
                    primorial: r.primorial,
                    exponents,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub max_weight: usize,
    /// Abort (marking the atlas incomplete) after this many search nodes.
    pub node_budget: Option<u64>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_weight: DEFAULT_ENUMERATION_CAP,
            node_budget: None,
        }
    }
}

pub fn enumerate_mvs(k: usize) -> Result<MVSAtlas> {
    enumerate_mvs_with(k, &EnumOptions::default())
}

/// `(p1-1)(p2-1) + p3 - 1` for the three smallest primes of a set.
pub fn lam_leung_bound(primes: &[u64]) -> Option<u64> {
    let mut ps = primes.to_vec();
    ps.sort_unstable();
    ps.dedup();
    (ps.len() >= 3).then(|| (ps[0] - 1) * (ps[1] - 1) + ps[2] - 1)
}

/// Prime sets allowed by the structure theorem for a minimal vanishing sum containing 1:
/// a single prime `p = k`, or at least three primes with the weight bound satisfied.
fn admissible_masks(primes: &[u64], k: usize) -> Vec<bool> {
    let n = primes.len();
    let good: Vec<bool> = (0..1usize << n)
        .map(|mask| {
            let set: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).collect();
            match set.len() {
                1 => set[0] == k as u64,
                0 | 2 => false,
                _ => lam_leung_bound(&set).is_some_and(|b| b <= k as u64),
            }
        })
        .collect();
    (0..1usize << n)
        .map(|mask| (0..1usize << n).any(|sup| sup & mask == mask && good[sup]))
        .collect()
}

struct Search {
    k: usize,
    ell: u64,
    table: Vec<Complex64>,
    prime_mask: Vec<u16>,
    admissible: Vec<bool>,
    /// `(p, ℓ/p)` for primes `p < k`: a partial containing a rotated `R_p` is not minimal.
    sub_steps: Vec<(u64, u64)>,
    primes: Vec<u64>,
    /// `classes[i][x]`: the `ζ_{p_i}`-component of `ζ_ℓ^x`.
    classes: Vec<Vec<u8>>,
    budget: Option<u64>,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

/// Depth-indexed search state, mutated in place.
#[derive(Clone)]
struct Partial {
    exps: Vec<u64>,
    counts: Vec<u8>,
    sums: Vec<Complex64>,
    masks: Vec<u16>,
    gaps: Vec<u64>,
    /// Period of the gap prefix as a prenecklace (Fredricksen–Kessler–Maiorana).
    periods: Vec<usize>,
    class_counts: Vec<Vec<u8>>,
    populated: Vec<usize>,
}

impl Partial {
    fn new(ell: u64, k: usize, primes: &[u64]) -> Self {
        Partial {
            class_counts: primes.iter().map(|&p| vec![0u8; p as usize]).collect(),
            populated: vec![0; primes.len()],
            exps: Vec::with_capacity(k),
            counts: vec![0u8; ell as usize],
            sums: Vec::with_capacity(k),
            masks: Vec::with_capacity(k),
            gaps: Vec::with_capacity(k),
            periods: Vec::with_capacity(k),
        }
    }

    fn sum(&self) -> Complex64 {
        self.sums.last().copied().unwrap_or_default()
    }

    fn pop(&mut self, classes: &[Vec<u8>]) {
        let x = self.exps.pop().expect("nonempty");
        self.counts[x as usize] -= 1;
        for (i, cls) in classes.iter().enumerate() {
            let c = &mut self.class_counts[i][cls[x as usize] as usize];
            *c -= 1;
            if *c == 0 {
                self.populated[i] -= 1;
            }
        }
        self.sums.pop();
        self.masks.pop();
        self.periods.pop();
        if !self.exps.is_empty() {
            self.gaps.pop();
        }
    }
}

impl Search {
    fn new(k: usize, ell: u64, budget: Option<u64>) -> Self {
        let primes = primes_up_to(k as u64);
        let table = (0..ell)
            .map(|e| {
                let t = std::f64::consts::TAU * e as f64 / ell as f64;
                Complex64::new(t.cos(), t.sin())
            })
            .collect();
        let prime_mask = (0..ell)
            .map(|e| {
                primes
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| e % p != 0)
                    .fold(0u16, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let sub_steps = primes
            .iter()
            .filter(|&&p| (p as usize) < k)
            .map(|&p| (p, ell / p))
            .collect();
        let classes = primes
            .iter()
            .map(|&p| {
                let inv = inv_mod((ell / p) % p, p).expect("square-free");
                (0..ell).map(|x| ((x % p) * inv % p) as u8).collect()
            })
            .collect();
        Search {
            classes,
            k,
            ell,
            table,
            prime_mask,
            admissible: admissible_masks(&primes, k),
            sub_steps,
            primes,
            budget,
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
        }
    }

    /// Prenecklace update for a new gap; `None` when a rotation would be smaller.
    fn fkm(gaps: &[u64], period: usize, g: u64) -> Option<usize> {
        let t = gaps.len();
        if t == 0 {
            return Some(1);
        }
        match g.cmp(&gaps[t - period]) {
            std::cmp::Ordering::Less => None,
            std::cmp::Ordering::Equal => Some(period),
            std::cmp::Ordering::Greater => Some(t + 1),
        }
    }

    /// Appends exponent `x` if every prune admits it.
    fn push(&self, st: &mut Partial, x: u64) -> bool {
        let (period, gap) = match st.exps.last() {
            Some(&prev) => {
                if x < prev {
                    return false;
                }
                let g = x - prev;
                match Self::fkm(&st.gaps, *st.periods.last().expect("nonempty"), g) {
                    Some(p) => (p, Some(g)),
                    None => return false,
                }
            }
            None => (1, None),
        };
        let sum = st.sum() + self.table[x as usize];
        let rem = (self.k - st.exps.len() - 1) as f64;
        if sum.norm() > rem + 1e-9 {
            return false;
        }
        let mask = st.masks.last().copied().unwrap_or(0) | self.prime_mask[x as usize];
        if !self.admissible[mask as usize] {
            return false;
        }
        // A minimal sum containing 1 whose orders involve p has every ζ_p-class populated.
        let rem = rem as usize;
        for (i, &p) in self.primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let cls = self.classes[i][x as usize] as usize;
                let populated = st.populated[i] + usize::from(st.class_counts[i][cls] == 0);
                if p as usize - populated > rem {
                    return false;
                }
            }
        }
        let ell = self.ell;
        for &(p, step) in &self.sub_steps {
            if (1..p).all(|j| st.counts[((x + j * step) % ell) as usize] > 0) {
                return false;
            }
        }
        st.exps.push(x);
        st.counts[x as usize] += 1;
        for (i, cls) in self.classes.iter().enumerate() {
            let c = &mut st.class_counts[i][cls[x as usize] as usize];
            if *c == 0 {
                st.populated[i] += 1;
            }
            *c += 1;
        }
        st.sums.push(sum);
        st.masks.push(mask);
        st.periods.push(period);
        if let Some(g) = gap {
            st.gaps.push(g);
        }
        true
    }

    fn leaf(&self, st: &Partial, out: &mut BTreeSet<Vec<u64>>) {
        let last = *st.exps.last().expect("nonempty");
        let Some(period) = Self::fkm(&st.gaps, *st.periods.last().expect("nonempty"), self.ell - last)
        else {
            return;
        };
        if self.k % period != 0 || st.sum().norm() > NUMERIC_ZERO {
            return;
        }
        let signed: Vec<(u64, i64)> = st.exps.iter().map(|&e| (e, 1)).collect();
        if !vanishes_i64(self.ell, &signed) {
            return;
        }
        let terms = Terms {
            modulus: self.ell,
            exps: st.exps.clone(),
            values: st.exps.iter().map(|&e| self.table[e as usize]).collect(),
        };
        if has_proper_vanishing_subset(&terms, self.k, true) {
            return;
        }
        debug_assert_eq!(least_translate(&st.exps, self.ell), st.exps);
        out.insert(st.exps.clone());
    }

    fn round_exponent(&self, angle: f64) -> u64 {
        let e = (angle * self.ell as f64 / std::f64::consts::TAU).round() as i64;
        e.rem_euclid(self.ell as i64) as u64
    }

    fn tick(&self) -> bool {
        if let Some(b) = self.budget {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= b {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        self.aborted.load(Ordering::Relaxed)
    }

    fn dfs(&self, st: &mut Partial, out: &mut BTreeSet<Vec<u64>>) {
        if self.tick() {
            return;
        }
        let d = st.exps.len();
        let rem = self.k - d;
        if rem == 0 {
            return self.leaf(st, out);
        }
        let target = -st.sum();
        let r = target.norm();
        if rem == 1 {
            if (r - 1.0).abs() > 1e-6 {
                return;
            }
            if self.push(st, self.round_exponent(target.arg())) {
                self.leaf(st, out);
                st.pop(&self.classes);
            }
            return;
        }
        if rem == 2 && r > 1e-6 {
            // two unit vectors summing to `target` sit at arg(target) ± acos(|target|/2)
            if r > 2.0 + 1e-9 {
                return;
            }
            let phi = target.arg();
            let delta = (r / 2.0).min(1.0).acos();
            let mut a = self.round_exponent(phi - delta);
            let mut b = self.round_exponent(phi + delta);
            if (self.table[a as usize] + self.table[b as usize] - target).norm() > 1e-6 {
                return;
            }
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            if self.push(st, a) {
                if self.push(st, b) {
                    self.leaf(st, out);
                    st.pop(&self.classes);
                }
                st.pop(&self.classes);
            }
            return;
        }
        // every gap of a necklace is at least the first one
        let prev = *st.exps.last().expect("starts at 0");
        let (lo, hi) = if d == 1 {
            (0, self.ell / self.k as u64)
        } else {
            let g0 = st.gaps[0];
            (prev + g0, self.ell.saturating_sub(rem as u64 * g0))
        };
        for x in lo..=hi.min(self.ell - 1) {
            if self.push(st, x) {
                self.dfs(st, out);
                st.pop(&self.classes);
            }
        }
    }
}

pub fn enumerate_mvs_with(k: usize, opts: &EnumOptions) -> Result<MVSAtlas> {
    if k == 0 {
        return Err(Error::Domain("weight must be positive".into()));
    }
    if k > opts.max_weight {
        return Err(Error::Budget(format!(
            "weight {k} exceeds enumeration cap {}",
            opts.max_weight
        )));
    }
    let ell = primorial_of(k)?;
    let search = Search::new(k, ell, opts.node_budget);
    let mut entries = BTreeSet::new();
    if k >= 2 && search.admissible[0] {
        let mut root = Partial::new(ell, k, &search.primes);
        assert!(search.push(&mut root, 0));
        if k == 2 {
            search.dfs(&mut root, &mut entries);
        } else {
            let found: Vec<BTreeSet<Vec<u64>>> = (0..=ell / k as u64)
                .into_par_iter()
                .map(|x| {
                    let mut st = root.clone();
                    let mut out = BTreeSet::new();
                    if search.push(&mut st, x) {
                        search.dfs(&mut st, &mut out);
                    }
                    out
                })
                .collect();
            entries = found.into_iter().flatten().collect();
        }
    }
    Ok(MVSAtlas {
        weight: k,
        primorial: ell,
        complete: !search.aborted.load(Ordering::Relaxed),
        entries: entries
            .into_iter()
            .map(|exponents| CanonicalMVS {
                weight: k,
                primorial: ell,
                exponents,
            })
            .collect(),
    })
}

/// The sum `Σ_{i=0}^{p-1} ζ_p^i`.
pub fn full_prime_sum(p: u64) -> Result<SumOfRoots> {
    let exps: Vec<u64> = (0..p).collect();
    SumOfRoots::from_exponents(p, &exps)
}

/// `(Σ_{i=1}^{p1-1} ζ_{p1}^i)(Σ_{i=1}^{p2-1} ζ_{p2}^i) + Σ_{i=1}^{p3-1} ζ_{p3}^i`.
pub fn extremal_sum(p1: u64, p2: u64, p3: u64) -> Result<SumOfRoots> {
    let mut terms = Vec::new();
    for i in 1..p1 {
        for j in 1..p2 {
            terms.push(RootOfUnity::from_parts(p1, i)?.mul(&RootOfUnity::from_parts(p2, j)?));
        }
    }
    for i in 1..p3 {
        terms.push(RootOfUnity::from_parts(p3, i)?);
    }
    Ok(SumOfRoots::new(terms))
}

/// `Σ_{i=0}^{p-1} ζ_p^i` with each listed term `ζ_p^i` replaced by `ζ_p^i(ζ6 + ζ6^5)`,
/// which has the same value.
pub fn prime_sum_with_replaced(p: u64, positions: &[u64]) -> Result<SumOfRoots> {
    let pair = [RootOfUnity::from_parts(6, 1)?, RootOfUnity::from_parts(6, 5)?];
    let mut terms = Vec::new();
    for i in 0..p {
        let t = RootOfUnity::from_parts(p, i)?;
        if positions.contains(&i) {
            terms.extend(pair.iter().map(|z| t.mul(z)));
        } else {
            terms.push(t);
        }
    }
    Ok(SumOfRoots::new(terms))
}

/// Representatives of the known weight-7 classes: `R7` and `R5` with two replaced terms,
/// adjacent or not.
pub fn known_weight7_sums() -> Vec<SumOfRoots> {
    vec![
        full_prime_sum(7).expect("prime"),
        prime_sum_with_replaced(5, &[0, 1]).expect("valid"),
        prime_sum_with_replaced(5, &[0, 2]).expect("valid"),
    ]
}

/// Representatives of the known weight-8 classes: `R7` with one replaced term and `R5`
/// with three replaced terms, leaving an adjacent or a non-adjacent pair.
pub fn known_weight8_sums() -> Vec<SumOfRoots> {
    vec![
        prime_sum_with_replaced(7, &[0]).expect("valid"),
        prime_sum_with_replaced(5, &[0, 1, 2]).expect("valid"),
        prime_sum_with_replaced(5, &[0, 2, 3]).expect("valid"),
    ]
}

/// Consistency of a canonical class with the structure theorem for minimal vanishing sums.
pub fn lam_leung_check(c: &CanonicalMVS) -> bool {
    let k = c.weight as u64;
    let sum = c.to_sum();
    let mut primes: Vec<u64> = sum
        .terms()
        .iter()
        .flat_map(|t| factorize(t.order()).into_iter().map(|(p, _)| p))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    if primes.len() == 1 && primes[0] == k {
        return full_prime_sum(k)
            .and_then(|r| canonicalize(&r))
            .is_ok_and(|r| r == *c);
    }
    let Some(bound) = lam_leung_bound(&primes) else {
        return false;
    };
    if k < bound {
        return false;
    }
    if k == bound {
        return extremal_sum(primes[0], primes[1], primes[2])
            .and_then(|e| canonicalize(&e))
            .is_ok_and(|e| e == *c);
    }
    true
}

/// Summary used by `mvs-check`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MvsCheck {
    pub vanishing: bool,
    pub minimal: bool,
    pub canonical: Option<CanonicalMVS>,
}

pub fn mvs_check(s: &SumOfRoots) -> Result<MvsCheck> {
    let vanishing = is_vanishing(s);
    let minimal = vanishing && is_minimal_vanishing(s)?;
    let canonical = if minimal { Some(canonicalize(s)?) } else { None };
    Ok(MvsCheck {
        vanishing,
        minimal,
        canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::sum_to_element;

    fn sum(s: &str) -> SumOfRoots {
        s.parse().unwrap()
    }

    fn r7_one_replaced() -> SumOfRoots {
        sum("1/6, 5/6, 1/7, 2/7, 3/7, 4/7, 5/7, 6/7")
    }

    /// (ζ6 + ζ6^5)(1 + ζ5 + ζ5^2) + ζ5^3 + ζ5^4
    fn r5_adjacent_left() -> SumOfRoots {
        sum("1/6, 5/6, 11/30, 1/30, 17/30, 7/30, 3/5, 4/5")
    }

    /// (ζ6 + ζ6^5)(1 + ζ5^2 + ζ5^3) + ζ5 + ζ5^4
    fn r5_split_left() -> SumOfRoots {
        sum("1/6, 5/6, 17/30, 7/30, 23/30, 13/30, 1/5, 4/5")
    }

    #[test]
    fn replacement_builder_matches_written_sums() {
        assert_eq!(known_weight8_sums(), vec![r7_one_replaced(), r5_adjacent_left(), r5_split_left()]);
        for s in known_weight7_sums() {
            assert!(is_minimal_vanishing(&s).unwrap());
        }
    }

    #[test]
    fn vanishing_examples() {
        assert!(is_vanishing(&sum("0/1, 1/3, 2/3")));
        assert!(is_vanishing(&r7_one_replaced()));
        assert!(is_vanishing(&r5_adjacent_left()));
        assert!(is_vanishing(&r5_split_left()));
        assert!(!is_vanishing(&sum("1/5, 2/5")));
        for s in ["0/1, 1/3, 2/3", "1/8, 7/8, 1/7", "1/12, 5/12, 3/4", ""] {
            let s = sum(s);
            assert_eq!(is_vanishing(&s), sum_to_element(&s).is_zero());
        }
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimal_vanishing(&full_prime_sum(5).unwrap()).unwrap());
        assert!(!is_minimal_vanishing(&sum("0/1, 1/3, 2/3, 0/1, 1/2")).unwrap());
        assert!(is_minimal_vanishing(&r5_adjacent_left()).unwrap());
        assert!(!is_minimal_vanishing(&sum("1/5, 2/5")).unwrap());
        let big = SumOfRoots::from_exponents(17, &(0..17).collect::<Vec<_>>()).unwrap();
        assert!(matches!(is_minimal_vanishing(&big), Err(Error::Budget(_))));
    }

    #[test]
    fn partition_examples() {
        let s = sum("0/1, 1/2, 1/9, 4/9, 7/9");
        let blocks = partition_minimal(&s).unwrap();
        let sizes: Vec<usize> = blocks.iter().map(|b| b.weight()).collect();
        assert_eq!(sizes, vec![2, 3]);
        assert!(partition_minimal(&SumOfRoots::empty()).unwrap().is_empty());
        assert_eq!(partition_minimal(&sum("1/5")), Err(Error::NotVanishing));

        // α − σ_47(α) for α = i(ζ6 + ζ5 + ζ5^4)
        let alpha = sum("5/12, 9/20, 1/20");
        let diff = alpha.union(&alpha.galois_apply(47).unwrap().negate());
        let blocks = partition_minimal(&diff).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].weight(), 6);
    }

    #[test]
    fn square_free_rotation_examples() {
        let s = sum("1/9, 4/9, 7/9");
        let (r, eps) = square_free_rotate(&s).unwrap();
        assert!(r.terms().iter().all(|t| 3 % t.order() == 0));
        assert_eq!(s.rotate(&eps), r);

        let r7 = full_prime_sum(7).unwrap().rotate(&RootOfUnity::new(7, 3).unwrap());
        let (r, _) = square_free_rotate(&r7).unwrap();
        assert_eq!(r, full_prime_sum(7).unwrap());

        let w6 = extremal_sum(2, 3, 5).unwrap().rotate(&RootOfUnity::new(44, 5).unwrap());
        let (r, _) = square_free_rotate(&w6).unwrap();
        assert!(r.terms().iter().all(|t| 30 % t.order() == 0));
        assert!(square_free_rotate(&sum("1/5, 2/5")).is_err());
    }

    #[test]
    fn canonical_forms() {
        let c = canonicalize(&sum("1/7, 10/21, 17/21")).unwrap();
        assert_eq!(c.exponents, vec![0, 2, 4]);
        assert_eq!(c.primorial, 6);
        let r5 = full_prime_sum(5).unwrap();
        let a = canonicalize(&r5.rotate(&RootOfUnity::new(5, 1).unwrap())).unwrap();
        let b = canonicalize(&r5.rotate(&RootOfUnity::new(5, 3).unwrap())).unwrap();
        assert_eq!(a, b);
        assert_ne!(canonicalize(&r5_adjacent_left()).unwrap(), canonicalize(&r5_split_left()).unwrap());
    }

    #[test]
    fn small_atlases() {
        let counts: Vec<usize> = (1..=6).map(|k| enumerate_mvs(k).unwrap().entries.len()).collect();
        assert_eq!(counts, vec![0, 1, 1, 0, 1, 1]);
        let six = enumerate_mvs(6).unwrap();
        assert!(six.complete);
        assert_eq!(six.entries[0], canonicalize(&extremal_sum(2, 3, 5).unwrap()).unwrap());
        assert!(enumerate_mvs(9).is_err());
        assert!(enumerate_mvs(0).is_err());
    }

    #[test]
    fn lam_leung_examples() {
        assert!(lam_leung_check(&canonicalize(&full_prime_sum(5).unwrap()).unwrap()));
        assert!(lam_leung_check(&canonicalize(&extremal_sum(2, 3, 5).unwrap()).unwrap()));
        assert!(lam_leung_check(&canonicalize(&r7_one_replaced()).unwrap()));
        assert_eq!(lam_leung_bound(&[2, 3, 7]), Some(8));
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        any_combination(4, 2, |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
