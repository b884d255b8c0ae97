//! Families of cyclotomic integers whose index `[Q_{c(α)} : Q(α)]` exceeds their length,
//! and desk-scale verifiers for the cases where index ≤ length is known to hold.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::{normalize_modulus, sparse_of_sum};
use crate::error::{Error, Result};
use crate::galois::{
    conductor_from_stabilizer, conductor_of_sum, crt_lift, lies_in_cyclotomic_field, orbit_sum,
    prime_subgroup_of_order, stabilizer_of_sum_at, stabilizer_sparse, subgroup_generated,
    UnitSubgroup,
};
use crate::length::{length_interval, min_weight_representation, LengthQuery, DEFAULT_NODE_BUDGET};
use crate::ntheory::{euler_phi, gcd, is_prime, lcm, mult_order};
use crate::root::RootOfUnity;
use crate::sum::SumOfRoots;
use crate::vanishing::is_vanishing;

/// Largest `φ(conductor)` for which the index is computed by a full stabilizer scan.
pub const EXACT_INDEX_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationBasis {
    CertifiedLength,
    WeightSurrogate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub alpha: SumOfRoots,
    pub weight: usize,
    pub primes: Vec<u64>,
    pub orders: Vec<u64>,
    pub conductor: u64,
    /// Exact index when `index_exact`, otherwise the verified lower bound.
    pub index: u64,
    pub index_exact: bool,
    /// Order of the CRT-lifted product subgroup, checked to fix `α`.
    pub product_subgroup_order: u64,
    pub certified_length: Option<usize>,
    pub violates: bool,
    pub basis: ViolationBasis,
}

impl CounterexampleReport {
    /// Runs the length oracle; on certification the violation flag uses the length.
    pub fn certify_length(&mut self, node_budget: u64) -> Result<()> {
        let w = self.weight;
        let interval = length_interval(&self.alpha, w.saturating_sub(1), None, node_budget)?;
        if interval.certified {
            self.certified_length = Some(interval.lower);
            self.violates = self.index > interval.lower as u64;
            self.basis = ViolationBasis::CertifiedLength;
        }
        Ok(())
    }
}

/// `Σ_i orbit_sum(p_i, H_i)` with its conductor and index. Conductor `Π p_i` is shown by
/// ruling out every `Q_{n/p_i}`; the index is exact below [`EXACT_INDEX_LIMIT`] and
/// otherwise bounded below by the lifted product subgroup.
fn orbit_family_report(parts: &[(u64, UnitSubgroup)]) -> Result<CounterexampleReport> {
    let primes: Vec<u64> = parts.iter().map(|(p, _)| *p).collect();
    let orders: Vec<u64> = parts.iter().map(|(_, h)| h.order()).collect();
    let mut terms = Vec::new();
    for (p, h) in parts {
        terms.extend_from_slice(orbit_sum(*p, h)?.terms());
    }
    let alpha = SumOfRoots::new(terms);
    let n: u64 = primes.iter().product();
    let sparse = sparse_of_sum(&alpha).lift(n);

    // τ_i acts as a generator of H_i at p_i and trivially elsewhere
    let mut lifts = Vec::new();
    for (i, (_, h)) in parts.iter().enumerate() {
        let gen = h
            .elements()
            .iter()
            .copied()
            .find(|&x| mult_order(x, h.modulus()) == h.order())
            .expect("subgroups of a cyclic group are cyclic");
        let residues: Vec<u64> = (0..parts.len()).map(|j| if j == i { gen } else { 1 }).collect();
        let tau = crt_lift(&primes, &residues)?;
        if !sparse.galois(tau).sub(&sparse).is_zero() {
            return Err(Error::Precondition(format!("lifted automorphism {tau} moves α")));
        }
        lifts.push(tau);
    }
    let product = subgroup_generated(n, &lifts)?;
    if product.order() != orders.iter().product::<u64>() {
        return Err(Error::Precondition("lifted subgroup is not the direct product".into()));
    }

    let (conductor, index, index_exact) = if euler_phi(n) <= EXACT_INDEX_LIMIT {
        let stab = stabilizer_sparse(&sparse);
        let report = conductor_from_stabilizer(&stab);
        (report.conductor, report.index, true)
    } else {
        let full = primes
            .iter()
            .all(|p| !lies_in_cyclotomic_field(&sparse, n / p));
        if !full {
            return Err(Error::Precondition("α lies in a smaller cyclotomic field".into()));
        }
        (n, product.order(), false)
    };
    let weight = alpha.weight();
    Ok(CounterexampleReport {
        violates: index > weight as u64,
        alpha,
        weight,
        primes,
        orders,
        conductor,
        index,
        index_exact,
        product_subgroup_order: product.order(),
        certified_length: None,
        basis: ViolationBasis::WeightSurrogate,
    })
}

/// Sum of Gaussian periods for subgroups of order `d_i` in `(Z/p_i)^×`.
pub fn theorem1_construct(primes: &[u64], orders: &[u64]) -> Result<CounterexampleReport> {
    if primes.len() < 2 || primes.len() != orders.len() {
        return Err(Error::Precondition("need at least two primes, one order each".into()));
    }
    let mut seen = primes.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != primes.len() {
        return Err(Error::Precondition("primes must be distinct".into()));
    }
    for (&p, &d) in primes.iter().zip(orders) {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::Precondition(format!("prime {p} is below 5")));
        }
        if d <= 1 || d >= p - 1 {
            return Err(Error::Precondition(format!(
                "order {d} is not a nontrivial proper subgroup order mod {p}"
            )));
        }
    }
    if orders.iter().all(|&d| d < 3) {
        return Err(Error::Precondition("some subgroup order must be at least 3".into()));
    }
    let parts = primes
        .iter()
        .zip(orders)
        .map(|(&p, &d)| Ok((p, prime_subgroup_of_order(p, d)?)))
        .collect::<Result<Vec<_>>>()?;
    orbit_family_report(&parts)
}

const PRIME_SEARCH_CAP: u64 = 1_000_000;

/// Least prime `q ∉ avoid` with `d | q − 1` and `(q − 1)/d > 1`.
fn least_prime_properly_divided(d: u64, avoid: &[u64]) -> Result<u64> {
    let mut q = 2 * d + 1;
    while q <= PRIME_SEARCH_CAP {
        if is_prime(q) && !avoid.contains(&q) {
            return Ok(q);
        }
        q += d;
    }
    Err(Error::Budget(format!("no prime ≡ 1 mod {d} below {PRIME_SEARCH_CAP}")))
}

/// Weight `k = 2 + (k − 2)` from two Gaussian periods.
pub fn corollary1_construct(k: usize) -> Result<CounterexampleReport> {
    if k < 5 {
        return Err(Error::Precondition(format!("weight {k} is below 5")));
    }
    let (i, j) = (2u64, k as u64 - 2);
    let p = least_prime_properly_divided(i, &[])?;
    let q = least_prime_properly_divided(j, &[p])?;
    theorem1_construct(&[p, q], &[i, j])
}

/// The `⌊k/3⌋` smallest primes `≡ 1 mod 3` carrying order-3 periods, padded with `ζ5`
/// (one term) or `ζ5 + ζ5^4` (two terms).
pub fn corollary2_construct(k: usize) -> Result<CounterexampleReport> {
    if k < 6 {
        return Err(Error::Precondition(format!("weight {k} is below 6")));
    }
    let r = k / 3;
    let mut parts = Vec::new();
    let mut p = 7u64;
    while parts.len() < r {
        if is_prime(p) {
            parts.push((p, prime_subgroup_of_order(p, 3)?));
        }
        p += 6;
    }
    match k % 3 {
        1 => parts.push((5, UnitSubgroup::trivial(5))),
        2 => parts.push((5, prime_subgroup_of_order(5, 2)?)),
        _ => {}
    }
    parts.sort_by_key(|(p, _)| *p);
    orbit_family_report(&parts)
}

/// `3^{⌊k/3⌋}`.
pub fn corollary2_guarantee(k: usize) -> u64 {
    3u64.pow((k / 3) as u32)
}

pub fn weight5_example() -> SumOfRoots {
    "1/8, 7/8, 1/7, 2/7, 4/7".parse().expect("valid")
}

/// `i(ζ6 + ζ5 + ζ5^4)`.
pub fn theorem4_example() -> SumOfRoots {
    "5/12, 9/20, 1/20".parse().expect("valid")
}

/// `i(ζ6 + ζ7 + ζ7^2 + ζ7^4)`.
pub fn theorem5_example() -> SumOfRoots {
    "5/12, 11/28, 15/28, 23/28".parse().expect("valid")
}

fn random_root(rng: &mut ChaCha8Rng, max_order: u64) -> RootOfUnity {
    let n = rng.gen_range(1..=max_order);
    RootOfUnity::from_parts(n, rng.gen_range(0..n)).expect("positive order")
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub checked: usize,
    pub excluded: usize,
    pub failures: Vec<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sums of `p^a`-th roots: index ≤ least `p^a`-representation weight, and the stabilizer
/// permutes the terms of that representation.
pub fn verify_theorem2(p: u64, a: u32, trials: usize, seed: u64) -> Result<VerifySummary> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = p.pow(a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = VerifySummary::default();
    while out.checked < trials {
        let w = rng.gen_range(1..=6);
        let exps: Vec<u64> = (0..w).map(|_| rng.gen_range(0..q)).collect();
        let s = SumOfRoots::from_exponents(q, &exps)?;
        let stripped = crate::length::strip_vanishing(&s);
        if stripped.is_empty() {
            out.excluded += 1;
            continue;
        }
        out.checked += 1;
        if let Some(msg) = theorem2_case(&stripped, q)? {
            out.failures.push(msg);
        }
    }
    Ok(out)
}

/// Index bound and term permutation for one sum of `q`-th roots; `Some` describes a failure.
pub fn theorem2_case(s: &SumOfRoots, q: u64) -> Result<Option<String>> {
    let query = LengthQuery::new(s.clone(), s.weight()).with_order_bound(q);
    let rep = min_weight_representation(&query)?.expect("the sum itself qualifies");
    let index = conductor_of_sum(s).index;
    if index > rep.weight() as u64 {
        return Ok(Some(format!("{s}: index {index} > weight {}", rep.weight())));
    }
    let stab = stabilizer_of_sum_at(&rep, normalize_modulus(q))?;
    for &x in stab.elements() {
        if rep.galois_apply(x)? != rep {
            return Ok(Some(format!("{s}: σ_{x} does not permute {rep}")));
        }
    }
    Ok(None)
}

/// Random two-root sums of certified length 2 have index at most 2.
pub fn verify_theorem3(trials: usize, order_cap: u64, seed: u64) -> Result<VerifySummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = VerifySummary::default();
    while out.checked < trials {
        let s = SumOfRoots::new(vec![random_root(&mut rng, order_cap), random_root(&mut rng, order_cap)]);
        if is_vanishing(&s) || min_weight_representation(&LengthQuery::new(s.clone(), 1))?.is_some() {
            out.excluded += 1;
            continue;
        }
        out.checked += 1;
        let index = conductor_of_sum(&s).index;
        if index > 2 {
            out.failures.push(format!("{s}: index {index}"));
        }
    }
    Ok(out)
}

/// Splits `s` as `ε·(ζ6^c + rest)` with `c ∈ {1, 5}`, trying each term as `εζ6^c`.
fn split_off_sixth(s: &SumOfRoots) -> Vec<(RootOfUnity, u64, SumOfRoots)> {
    let mut out = Vec::new();
    for (i, t) in s.terms().iter().enumerate() {
        for c in [1u64, 5] {
            let z6c = RootOfUnity::from_parts(6, c).expect("valid");
            let eps = t.mul(&z6c.inverse());
            let rest: Vec<usize> = (0..s.weight()).filter(|&j| j != i).collect();
            let rest = s.select(&rest).rotate(&eps.inverse());
            out.push((eps, c, rest));
        }
    }
    out
}

/// Exponents of `s` as `p`-th roots when every term is a primitive `p`-th root.
fn primitive_exponents(s: &SumOfRoots, p: u64) -> Option<Vec<u64>> {
    s.terms()
        .iter()
        .map(|t| (t.order() == p).then_some(t.exponent()))
        .collect()
}

/// `4 | m` and `gcd(m, 15) = 1`.
pub fn theorem4_epsilon_admissible(m: u64) -> bool {
    m % 4 == 0 && gcd(m, 15) == 1
}

/// Direct solvability of `x ≡ 17 (mod 30)`, `x ≡ m/2 + 1 (mod m)` with `x` a unit.
pub fn theorem4_epsilon_solvable(m: u64) -> bool {
    if m == 0 || m % 2 == 1 {
        return false;
    }
    let l = lcm(30, m);
    (17..l)
        .step_by(30)
        .any(|x| x % m == (m / 2 + 1) % m && gcd(x, l) == 1)
}

/// `s = ε(ζ6^c + ζ5^a + ζ5^{4a})` with `4 | ord ε` and `gcd(ord ε, 15) = 1`.
pub fn theorem4_form_check(s: &SumOfRoots) -> bool {
    s.weight() == 3
        && split_off_sixth(s).into_iter().any(|(eps, _, rest)| {
            theorem4_epsilon_admissible(eps.order())
                && primitive_exponents(&rest, 5).is_some_and(|e| (e[0] * 4) % 5 == e[1] || (e[1] * 4) % 5 == e[0])
        })
}

/// `4 | m` and `gcd(m, 21) = 1`.
pub fn theorem5_epsilon_admissible(m: u64) -> bool {
    m % 4 == 0 && gcd(m, 21) == 1
}

/// `s = ε(ζ6^c + ζ7^a + ζ7^{2a} + ζ7^{4a})` with `4 | ord ε` and `gcd(ord ε, 21) = 1`.
pub fn theorem5_form_check(s: &SumOfRoots) -> bool {
    s.weight() == 4
        && split_off_sixth(s).into_iter().any(|(eps, _, rest)| {
            theorem5_epsilon_admissible(eps.order())
                && primitive_exponents(&rest, 7).is_some_and(|mut e| {
                    e.sort_unstable();
                    (1..7u64).any(|a| {
                        let mut orbit = vec![a, 2 * a % 7, 4 * a % 7];
                        orbit.sort_unstable();
                        orbit == e
                    })
                })
        })
}

/// All roots of unity of exact order `m`.
fn roots_of_order(m: u64) -> Vec<RootOfUnity> {
    (0..m.max(1))
        .filter(|&e| gcd(e, m) == 1 || m == 1)
        .map(|e| RootOfUnity::from_parts(m, e).expect("positive"))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub sums: usize,
    /// Base sums whose length could not be certified; their rotations are reported, not tested.
    pub uncertified: Vec<String>,
    pub failures: Vec<String>,
    /// Number of equality cases per order of `ε`.
    pub equality_by_order: BTreeMap<u64, usize>,
    /// `x mod 30` over order-4 stabilizer elements of equality cases, when tracked.
    pub order4_residues_mod30: Vec<u64>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.uncertified.is_empty()
    }
}

fn sweep(
    epsilon_orders: &[u64],
    bases: Vec<SumOfRoots>,
    bound: u64,
    form: fn(&SumOfRoots) -> bool,
    track_order4: bool,
) -> Result<SweepSummary> {
    let mut out = SweepSummary::default();
    for base in bases {
        // length is invariant under rotation, so certify the ε-free sum once
        let interval = length_interval(&base, base.weight(), None, DEFAULT_NODE_BUDGET)?;
        if !(interval.certified && interval.lower == base.weight()) {
            out.uncertified.push(base.to_string());
            continue;
        }
        for &m in epsilon_orders {
            for eps in roots_of_order(m) {
                let alpha = base.rotate(&eps);
                out.sums += 1;
                let report = conductor_of_sum(&alpha);
                let equal = report.index == bound;
                if report.index > bound || equal != form(&alpha) {
                    out.failures.push(format!(
                        "{alpha}: index {} form {}",
                        report.index,
                        form(&alpha)
                    ));
                }
                if equal {
                    *out.equality_by_order.entry(m).or_default() += 1;
                    if track_order4 {
                        let stab = &report.stabilizer_at_conductor;
                        for &x in stab.elements() {
                            if mult_order(x, stab.modulus()) == 4 {
                                out.order4_residues_mod30.push(x % 30);
                            }
                        }
                    }
                }
            }
        }
    }
    out.order4_residues_mod30.sort_unstable();
    out.order4_residues_mod30.dedup();
    Ok(out)
}

/// `ε(ζ6^c + ζ5^a + ζ5^b)` over `c ∈ {1,5}`, `a < b`, and every `ε` of the given orders.
pub fn verify_theorem4_sweep(epsilon_orders: &[u64]) -> Result<SweepSummary> {
    let mut bases = Vec::new();
    for c in [1i64, 5] {
        for a in 1..=4i64 {
            for b in a + 1..=4 {
                bases.push(SumOfRoots::from_pairs(&[(6, c), (5, a), (5, b)])?);
            }
        }
    }
    sweep(epsilon_orders, bases, 4, theorem4_form_check, true)
}

/// `ε(ζ6^c + three distinct primitive 7th roots)` over every `ε` of the given orders.
pub fn verify_theorem5_sweep(epsilon_orders: &[u64]) -> Result<SweepSummary> {
    let mut bases = Vec::new();
    for c in [1i64, 5] {
        for a in 1..=6i64 {
            for b in a + 1..=6 {
                for d in b + 1..=6 {
                    bases.push(SumOfRoots::from_pairs(&[(6, c), (7, a), (7, b), (7, d)])?);
                }
            }
        }
    }
    sweep(epsilon_orders, bases, 6, theorem5_form_check, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(s: &str) -> SumOfRoots {
        s.parse().unwrap()
    }

    #[test]
    fn theorem1_instances() {
        let r = theorem1_construct(&[5, 7], &[2, 3]).unwrap();
        assert_eq!(r.alpha, sum("1/5, 4/5, 1/7, 2/7, 4/7"));
        assert_eq!((r.weight, r.conductor, r.index), (5, 35, 6));
        assert!(r.violates && r.index_exact);
        assert!(theorem1_construct(&[5, 7], &[4, 6]).is_err());
        assert!(theorem1_construct(&[5, 7], &[2, 2]).is_err());
        assert!(theorem1_construct(&[5, 7], &[3, 3]).is_err());
        assert!(theorem1_construct(&[7], &[3]).is_err());
    }

    #[test]
    fn corollary1_instances() {
        let r = corollary1_construct(5).unwrap();
        assert_eq!((r.primes.clone(), r.index), (vec![5, 7], 6));
        let r = corollary1_construct(6).unwrap();
        assert_eq!((r.primes.clone(), r.index, r.weight), (vec![5, 13], 8, 6));
        assert!(corollary1_construct(4).is_err());
    }

    #[test]
    fn corollary2_instances() {
        let r = corollary2_construct(6).unwrap();
        assert_eq!(r.alpha, sum("1/7, 2/7, 4/7, 1/13, 3/13, 9/13"));
        assert_eq!(r.conductor, 91);
        assert!(r.index >= 9);
        let r = corollary2_construct(7).unwrap();
        assert_eq!((r.weight, r.conductor), (7, 455));
        assert!(r.index >= 9);
        assert!(corollary2_construct(5).is_err());
    }

    #[test]
    fn theorem2_and_3_examples() {
        assert_eq!(theorem2_case(&sum("1/9, 2/9"), 9).unwrap(), None);
        assert!(verify_theorem2(3, 2, 20, 1).unwrap().passed());
        assert!(verify_theorem3(20, 30, 2).unwrap().passed());
    }

    #[test]
    fn form_checks() {
        assert!(theorem4_form_check(&theorem4_example()));
        // i(ζ6 + ζ5 + ζ5^2)
        assert!(!theorem4_form_check(&sum("5/12, 9/20, 13/20")));
        let z12 = RootOfUnity::new(12, 1).unwrap();
        assert!(!theorem4_form_check(&sum("1/6, 1/5, 4/5").rotate(&z12)));
        assert!(theorem5_form_check(&theorem5_example()));
        let i = RootOfUnity::new(4, 1).unwrap();
        assert!(!theorem5_form_check(&sum("1/6, 1/7, 2/7, 3/7").rotate(&i)));
        let z28 = RootOfUnity::new(28, 1).unwrap();
        assert!(!theorem5_form_check(&sum("1/6, 1/7, 2/7, 4/7").rotate(&z28)));
    }

    #[test]
    fn epsilon_admissibility_matches_congruences() {
        for m in 1..=240 {
            assert_eq!(theorem4_epsilon_admissible(m), theorem4_epsilon_solvable(m), "m = {m}");
        }
        assert!(theorem4_epsilon_admissible(4) && theorem4_epsilon_admissible(8));
        assert!(!theorem4_epsilon_admissible(12));
    }
}
