//! Bounded exhaustive search for the length `l(α)`, the least number of roots of unity
//! summing to `α`.
//!
//! Order bound. Suppose `α = Σ ε_i` (weight `w`, no vanishing sub-multiset) also equals
//! `Σ δ_j` with `t' ≤ t` roots and no vanishing sub-multiset among the `δ_j`. Split the
//! vanishing sum `Σ ε_i − Σ δ_j` into minimal blocks. No block is made of `ε`s alone or
//! `δ`s alone, so every block holds some `ε_i`. A minimal block of weight at most `w + t`
//! can be rotated so all its terms have square-free order with primes at most `w + t`;
//! hence the ratio of any two of its terms has order dividing `primorial(w + t)`, and each
//! `δ_j` is an `ε_i` times such a ratio. So every `δ_j` is an
//! `lcm(N, primorial(w + t))`-th root of unity, where `N` is the target's base modulus.

use num_bigint::BigUint;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntheory::{binomial, lcm, primorial_u64};
use crate::sparse::vanishes_i64;
use crate::sum::SumOfRoots;
use crate::vanishing::{is_vanishing, DEFAULT_MINIMALITY_CAP};

/// Default cap on search leaves.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthQuery {
    pub target: SumOfRoots,
    pub max_weight: usize,
    /// Roots searched are `M`-th roots; `None` selects the sound default.
    pub order_bound: Option<u64>,
    pub node_budget: u64,
}

impl LengthQuery {
    pub fn new(target: SumOfRoots, max_weight: usize) -> Self {
        LengthQuery {
            target,
            max_weight,
            order_bound: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_order_bound(mut self, m: u64) -> Self {
        self.order_bound = Some(m);
        self
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn resolved_order_bound(&self) -> Result<u64> {
        match self.order_bound {
            Some(0) => Err(Error::Domain("order bound must be positive".into())),
            Some(m) if m % self.target.base_modulus() != 0 => Err(Error::Precondition(format!(
                "order bound {m} is not a multiple of {}",
                self.target.base_modulus()
            ))),
            Some(m) => Ok(m),
            None => default_order_bound(&self.target, self.max_weight),
        }
    }
}

/// `lcm(N_target, primorial(w + t))`.
pub fn default_order_bound(target: &SumOfRoots, t: usize) -> Result<u64> {
    let k = (target.weight() + t) as u64;
    let p = primorial_u64(k).ok_or_else(|| Error::Budget(format!("primorial({k}) overflows")))?;
    Ok(lcm(target.base_modulus(), p))
}

fn has_vanishing_subset(s: &SumOfRoots, max_size: usize) -> bool {
    let w = s.weight();
    (2..=max_size.min(w)).any(|r| {
        let mut found = false;
        for_each_subset(w, r, &mut |idx| {
            found = is_vanishing(&s.select(idx));
            found
        });
        found
    })
}

fn for_each_subset(n: usize, r: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == r {
            return f(cur);
        }
        for i in start..=n - (r - cur.len()) {
            cur.push(i);
            if rec(i + 1, n, r, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, r, &mut Vec::with_capacity(r), f)
}

/// Removes vanishing sub-multisets, smallest first, until none remains.
pub fn strip_vanishing(s: &SumOfRoots) -> SumOfRoots {
    let mut cur = s.clone();
    'again: loop {
        let w = cur.weight();
        for r in 2..=w {
            let mut hit = None;
            for_each_subset(w, r, &mut |idx| {
                let sub = cur.select(idx);
                if is_vanishing(&sub) {
                    hit = Some(sub);
                    true
                } else {
                    false
                }
            });
            if let Some(sub) = hit {
                cur = cur.difference(&sub).expect("sub-multiset");
                continue 'again;
            }
        }
        return cur;
    }
}

/// Weight after stripping vanishing parts; an upper bound on the length.
pub fn length_upper_bound(s: &SumOfRoots) -> usize {
    strip_vanishing(s).weight()
}

/// Leaves examined by a search up to weight `t` over `M`-th roots (the last root is solved).
pub fn search_size_estimate(m: u64, t: usize) -> BigUint {
    (1..=t)
        .map(|w| binomial(&BigUint::from(m + w as u64 - 2), (w - 1) as u64))
        .sum()
}

struct Searcher {
    m: u64,
    table: Vec<Complex64>,
    target: Complex64,
    /// Target exponents at `m`, coefficient +1.
    target_terms: Vec<(u64, i64)>,
}

impl Searcher {
    fn round(&self, z: Complex64) -> u64 {
        let e = (z.arg() * self.m as f64 / std::f64::consts::TAU).round() as i64;
        e.rem_euclid(self.m as i64) as u64
    }

    fn exact(&self, exps: &[u64]) -> bool {
        let mut terms = self.target_terms.clone();
        terms.extend(exps.iter().map(|&e| (e, -1)));
        vanishes_i64(self.m, &terms)
    }

    /// Lexicographically least nondecreasing `exps` extension of total length `w`.
    fn dfs(&self, exps: &mut Vec<u64>, partial: Complex64, w: usize) -> bool {
        let rem = w - exps.len();
        let diff = self.target - partial;
        if diff.norm() > rem as f64 + 1e-9 {
            return false;
        }
        let lo = exps.last().copied().unwrap_or(0);
        if rem == 1 {
            if (diff.norm() - 1.0).abs() > 1e-6 {
                return false;
            }
            let x = self.round(diff);
            if x < lo {
                return false;
            }
            exps.push(x);
            if self.exact(exps) {
                return true;
            }
            exps.pop();
            return false;
        }
        for x in lo..self.m {
            exps.push(x);
            if self.dfs(exps, partial + self.table[x as usize], w) {
                return true;
            }
            exps.pop();
        }
        false
    }
}

/// Least-weight sum of at most `t` `M`-th roots equal to the target, lexicographically least
/// exponents among ties.
pub fn min_weight_representation(q: &LengthQuery) -> Result<Option<SumOfRoots>> {
    let target = &q.target;
    if target.weight() > DEFAULT_MINIMALITY_CAP {
        return Err(Error::Budget(format!(
            "target weight {} exceeds {DEFAULT_MINIMALITY_CAP}",
            target.weight()
        )));
    }
    if has_vanishing_subset(target, target.weight().saturating_sub(1)) {
        return Err(Error::Precondition(
            "target has a vanishing sub-multiset; strip it first".into(),
        ));
    }
    let m = q.resolved_order_bound()?;
    if is_vanishing(target) {
        return Ok(Some(SumOfRoots::empty()));
    }
    let estimate = search_size_estimate(m, q.max_weight);
    if estimate > BigUint::from(q.node_budget) {
        return Err(Error::Budget(format!(
            "search over {m}-th roots up to weight {} needs ~{estimate} leaves (budget {})",
            q.max_weight, q.node_budget
        )));
    }
    let table: Vec<Complex64> = (0..m)
        .map(|e| {
            let t = std::f64::consts::TAU * e as f64 / m as f64;
            Complex64::new(t.cos(), t.sin())
        })
        .collect();
    let searcher = Searcher {
        m,
        target: target.to_complex(),
        target_terms: target.terms().iter().map(|r| (r.exponent_at(m), 1)).collect(),
        table,
    };
    for w in 1..=q.max_weight {
        let found = if w == 1 {
            let mut exps = Vec::new();
            searcher.dfs(&mut exps, Complex64::default(), 1).then_some(exps)
        } else {
            (0..m).into_par_iter().find_map_first(|x| {
                let mut exps = vec![x];
                searcher
                    .dfs(&mut exps, searcher.table[x as usize], w)
                    .then_some(exps)
            })
        };
        if let Some(exps) = found {
            return SumOfRoots::from_exponents(m, &exps).map(Some);
        }
    }
    Ok(None)
}

/// Length bracket `[lower, upper]` reported by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthInterval {
    pub lower: usize,
    pub upper: usize,
    /// The bracket is the true length: the sound default order bound was searched exhaustively.
    pub certified: bool,
    pub order_bound: u64,
    pub witness: SumOfRoots,
}

/// Strips vanishing parts, then searches up to weight `t` for a shorter representation.
pub fn length_interval(s: &SumOfRoots, t: usize, order_bound: Option<u64>, node_budget: u64) -> Result<LengthInterval> {
    let stripped = strip_vanishing(s);
    let hi = stripped.weight();
    let t = t.min(hi);
    let mut q = LengthQuery::new(stripped.clone(), t).with_node_budget(node_budget);
    let sound = default_order_bound(&stripped, t)?;
    if let Some(m) = order_bound {
        q = q.with_order_bound(m);
    }
    let m = q.resolved_order_bound()?;
    let certified = m % sound == 0;
    Ok(match min_weight_representation(&q)? {
        Some(rep) => LengthInterval {
            lower: rep.weight(),
            upper: rep.weight(),
            certified,
            order_bound: m,
            witness: rep,
        },
        None => {
            let lower = (t + 1).min(hi);
            LengthInterval {
                lower,
                upper: hi,
                certified: certified && lower == hi,
                order_bound: m,
                witness: stripped,
            }
        }
    })
}

/// Whether the length of `s` is certified to equal its weight.
pub fn certify_length_equals_weight(s: &SumOfRoots) -> Result<bool> {
    let w = s.weight();
    if w == 0 {
        return Ok(true);
    }
    if has_vanishing_subset(s, w) {
        return Ok(false);
    }
    let q = LengthQuery::new(s.clone(), w - 1);
    Ok(min_weight_representation(&q)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::sum_to_element;

    fn sum(s: &str) -> SumOfRoots {
        s.parse().unwrap()
    }

    #[test]
    fn representation_examples() {
        let q = LengthQuery::new(sum("1/3, 2/3"), 1);
        let rep = min_weight_representation(&q).unwrap().unwrap();
        assert_eq!(rep, sum("1/2"));

        let q = LengthQuery::new(sum("5/12, 9/20, 1/20"), 2);
        assert_eq!(q.resolved_order_bound().unwrap(), 60);
        assert_eq!(min_weight_representation(&q).unwrap(), None);

        let q = LengthQuery::new(sum("0/1, 0/1"), 1);
        assert_eq!(min_weight_representation(&q).unwrap(), None);

        let q = LengthQuery::new(sum("0/1, 1/3, 2/3"), 2);
        assert!(matches!(min_weight_representation(&q), Ok(Some(s)) if s.is_empty()));
        let q = LengthQuery::new(sum("0/1, 1/2, 1/5"), 2);
        assert!(matches!(min_weight_representation(&q), Err(Error::Precondition(_))));
    }

    #[test]
    fn witness_matches_value() {
        // 1 + ζ5 + ζ5^2 = −ζ5^3 − ζ5^4
        let target = sum("0/1, 1/5, 2/5");
        let q = LengthQuery::new(target.clone(), 3);
        let rep = min_weight_representation(&q).unwrap().unwrap();
        assert_eq!(rep.weight(), 2);
        assert_eq!(sum_to_element(&rep), sum_to_element(&target));
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(length_upper_bound(&sum("0/1, 1/3, 2/3, 1/5")), 1);
        assert_eq!(length_upper_bound(&sum("1/8, 7/8")), 2);
        assert_eq!(length_upper_bound(&sum("0/5, 1/5, 2/5, 3/5, 4/5")), 0);
    }

    #[test]
    fn intervals() {
        let i = length_interval(&sum("5/12, 9/20, 1/20"), 3, None, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!((i.lower, i.upper, i.certified), (3, 3, true));
        let i = length_interval(&sum("0/1, 1/5, 2/5, 1/2, 0/1"), 3, None, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!((i.lower, i.upper, i.certified), (2, 2, true));
        let i = length_interval(&sum("5/12, 9/20, 1/20"), 1, None, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!((i.lower, i.upper, i.certified), (2, 3, false));
    }

    #[test]
    fn budget_is_distinct_from_absent() {
        let q = LengthQuery::new(sum("1/7, 1/11"), 1).with_node_budget(0);
        assert!(matches!(min_weight_representation(&q), Err(Error::Budget(_))));
    }
}
