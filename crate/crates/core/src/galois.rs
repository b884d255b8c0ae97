//! Galois action on cyclotomic integers: stabilizers, conductors and the index
//! `[Q_{c(α)} : Q(α)]`.
//!
//! `Gal(Q_N/Q)` is identified with `(Z/N)^×` via `σ_x(ζ_N) = ζ_N^x`. The stabilizer of
//! `α` is found by testing every unit; the conductor is the least normalized divisor
//! `f | N` whose kernel `{x ≡ 1 mod f}` fixes `α`, and the stabilizer at `f` is the image
//! of the stabilizer at `N`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::{normalize_modulus, sparse_of_sum, CycElement};
use crate::error::{Error, Result};
use crate::ntheory::{
    crt, divisors, euler_phi, gcd, is_prime, mul_mod, mult_order, pow_mod, primitive_root,
    unit_residue, units,
};
use crate::root::RootOfUnity;
use crate::sparse::{Coeff, SparseSum};
use crate::sum::SumOfRoots;

/// A subgroup of `(Z/N)^×` for a normalized `N`, elements sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitSubgroup {
    modulus: u64,
    elements: Vec<u64>,
}

impl UnitSubgroup {
    /// Wraps a sorted element list already known to be a subgroup.
    fn from_sorted(modulus: u64, elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        UnitSubgroup { modulus, elements }
    }

    pub fn full(modulus: u64) -> Self {
        let n = normalize_modulus(modulus);
        Self::from_sorted(n, units(n))
    }

    pub fn trivial(modulus: u64) -> Self {
        let n = normalize_modulus(modulus);
        Self::from_sorted(n, vec![unit_residue(1, n)])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements
            .binary_search(&unit_residue(x, self.modulus))
            .is_ok()
    }

    pub fn is_subgroup_of(&self, other: &UnitSubgroup) -> bool {
        self.modulus == other.modulus && self.elements.iter().all(|&x| other.contains(x))
    }

    /// Closed under multiplication and contains 1.
    pub fn is_closed(&self) -> bool {
        let n = self.modulus;
        self.contains(1)
            && self
                .elements
                .iter()
                .all(|&a| self.elements.iter().all(|&b| self.contains(mul_mod(a, b, n.max(1)))))
    }

    pub fn is_cyclic(&self) -> bool {
        let ord = self.order();
        self.elements
            .iter()
            .any(|&x| mult_order(x, self.modulus) == ord)
    }

    /// Image under reduction `(Z/N)^× → (Z/f)^×` for `f | N`.
    pub fn reduce_to(&self, f: u64) -> UnitSubgroup {
        let f = normalize_modulus(f);
        assert!(self.modulus % f == 0, "{f} does not divide {}", self.modulus);
        let image: BTreeSet<u64> = self.elements.iter().map(|&x| unit_residue(x, f)).collect();
        Self::from_sorted(f, image.into_iter().collect())
    }
}

/// Closure of `gens` under multiplication modulo the normalized `modulus`.
pub fn subgroup_generated(modulus: u64, gens: &[u64]) -> Result<UnitSubgroup> {
    if modulus == 0 {
        return Err(Error::InvalidOrder);
    }
    let n = normalize_modulus(modulus);
    for &g in gens {
        if gcd(g, modulus) != 1 && gcd(g, n) != 1 {
            return Err(Error::NotAUnit { x: g, modulus });
        }
    }
    let gens: Vec<u64> = gens.iter().map(|&g| unit_residue(g, n)).collect();
    let mut seen = BTreeSet::from([unit_residue(1, n)]);
    let mut frontier = vec![unit_residue(1, n)];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = unit_residue(mul_mod(x, g, n.max(1)), n);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    Ok(UnitSubgroup::from_sorted(n, seen.into_iter().collect()))
}

/// The unique subgroup of order `d` in the cyclic group `(Z/p)^×`.
pub fn prime_subgroup_of_order(p: u64, d: u64) -> Result<UnitSubgroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 || (p - 1) % d != 0 {
        return Err(Error::NoSubgroup {
            modulus: p,
            order: d,
        });
    }
    let g = primitive_root(p)?;
    subgroup_generated(p, &[pow_mod(g, (p - 1) / d, p)])
}

/// Whether `σ_x` fixes `s`: floating-point rejection, exact confirmation.
fn fixes<C: Coeff>(s: &SparseSum<C>, numeric: &[(f64, f64)], value: num_complex::Complex64, tol: f64, x: u64) -> bool {
    let n = s.modulus();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for ((e, _), (_, c)) in s.terms().iter().zip(numeric) {
        let theta = std::f64::consts::TAU * (mul_mod(*e, x, n) as f64) / n as f64;
        acc += num_complex::Complex64::new(theta.cos(), theta.sin()) * *c;
    }
    if (acc - value).norm() > tol {
        return false;
    }
    s.galois(x).sub(s).is_zero()
}

/// `{x ∈ (Z/N)^× : σ_x(s) = s}` for a sparse sum at a normalized modulus.
pub fn stabilizer_sparse<C: Coeff + Send + Sync>(s: &SparseSum<C>) -> UnitSubgroup {
    let n = s.modulus();
    assert_eq!(normalize_modulus(n), n, "modulus must be normalized");
    if n == 1 {
        return UnitSubgroup::trivial(1);
    }
    let numeric: Vec<(f64, f64)> = s
        .terms()
        .iter()
        .map(|(e, c)| (*e as f64, c.to_f64()))
        .collect();
    let value = s.to_complex();
    let tol = 1e-8 * (1.0 + s.l1_norm());
    let mut elements: Vec<u64> = (1..n)
        .into_par_iter()
        .filter(|&x| gcd(x, n) == 1 && fixes(s, &numeric, value, tol, x))
        .collect();
    elements.sort_unstable();
    UnitSubgroup::from_sorted(n, elements)
}

/// Stabilizer of a cyclotomic integer at its own modulus.
pub fn stabilizer(a: &CycElement) -> UnitSubgroup {
    stabilizer_sparse(&a.to_sparse())
}

/// Stabilizer of the value of a formal sum at its normalized base modulus.
pub fn stabilizer_of_sum(s: &SumOfRoots) -> UnitSubgroup {
    stabilizer_sparse(&sparse_of_sum(s))
}

/// Stabilizer of the value of `s` in `Gal(Q_M/Q)` for a multiple `M` of its base modulus.
pub fn stabilizer_of_sum_at(s: &SumOfRoots, modulus: u64) -> Result<UnitSubgroup> {
    let base = sparse_of_sum(s);
    let m = normalize_modulus(modulus);
    if m == 0 || m % base.modulus() != 0 {
        return Err(Error::Precondition(format!(
            "modulus {modulus} is not a multiple of {}",
            base.modulus()
        )));
    }
    Ok(stabilizer_sparse(&base.lift(m)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorReport {
    pub conductor: u64,
    pub stabilizer_at_conductor: UnitSubgroup,
    pub index: u64,
    pub degree: u64,
}

/// Kernel of `(Z/N)^× → (Z/f)^×` is contained in `stab`.
fn kernel_fixes(stab: &UnitSubgroup, f: u64) -> bool {
    let n = stab.modulus();
    let mut x = 1u64;
    while x < n {
        if gcd(x, n) == 1 && !stab.contains(x) {
            return false;
        }
        x += f;
    }
    true
}

/// Conductor data derived from a stabilizer at any normalized modulus.
pub fn conductor_from_stabilizer(stab: &UnitSubgroup) -> ConductorReport {
    let n = stab.modulus();
    let conductor = divisors(n)
        .into_iter()
        .filter(|&f| normalize_modulus(f) == f)
        .find(|&f| kernel_fixes(stab, f))
        .expect("f = N always qualifies");
    let at_conductor = stab.reduce_to(conductor);
    let index = at_conductor.order();
    ConductorReport {
        conductor,
        degree: euler_phi(conductor) / index,
        index,
        stabilizer_at_conductor: at_conductor,
    }
}

pub fn conductor(a: &CycElement) -> ConductorReport {
    conductor_from_stabilizer(&stabilizer(a))
}

pub fn conductor_of_sum(s: &SumOfRoots) -> ConductorReport {
    conductor_from_stabilizer(&stabilizer_of_sum(s))
}

/// `[Q_{c(α)} : Q(α)]`.
pub fn index_at_conductor(a: &CycElement) -> u64 {
    conductor(a).index
}

pub fn index_of_sum(s: &SumOfRoots) -> u64 {
    conductor_of_sum(s).index
}

/// Whether the value of `s` lies in `Q_n`: every `σ_x` with `x ≡ 1 (mod n)` at the
/// common modulus fixes it. Only the kernel is scanned.
pub fn lies_in_cyclotomic_field<C: Coeff>(s: &SparseSum<C>, n: u64) -> bool {
    let n = normalize_modulus(n);
    let l = normalize_modulus(crate::ntheory::lcm(s.modulus(), n));
    let lifted = s.lift(l);
    let mut x = 1 + n;
    while x < l {
        if gcd(x, l) == 1 && !lifted.galois(x).sub(&lifted).is_zero() {
            return false;
        }
        x += n;
    }
    true
}

/// The unique `x mod Π moduli` with `x ≡ residues[i] (mod moduli[i])`.
pub fn crt_lift(moduli: &[u64], residues: &[u64]) -> Result<u64> {
    for (&m, &r) in moduli.iter().zip(residues) {
        if m > 1 && gcd(r, m) != 1 {
            return Err(Error::NotAUnit { x: r, modulus: m });
        }
    }
    crt(moduli, residues)
}

/// Gaussian period `Σ_{x ∈ H} ζ_p^x`.
pub fn orbit_sum(p: u64, h: &UnitSubgroup) -> Result<SumOfRoots> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if h.modulus() != normalize_modulus(p) {
        return Err(Error::Precondition(format!(
            "subgroup modulus {} does not match prime {p}",
            h.modulus()
        )));
    }
    h.elements()
        .iter()
        .map(|&x| RootOfUnity::from_parts(p, x))
        .collect::<Result<Vec<_>>>()
        .map(SumOfRoots::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::sum_to_element;

    fn sum(s: &str) -> SumOfRoots {
        s.parse().unwrap()
    }

    /// Oracle: dense power-basis Galois action, every unit.
    fn stabilizer_dense(a: &CycElement) -> Vec<u64> {
        units(a.modulus())
            .into_iter()
            .filter(|&x| a.modulus() == 1 || a.galois_apply(x).unwrap() == *a)
            .collect()
    }

    #[test]
    fn stabilizer_examples() {
        let a = sum_to_element(&sum("1/5, 4/5"));
        assert_eq!(stabilizer(&a).elements(), &[1, 4]);
        let alpha = sum_to_element(&sum("1/8, 7/8, 1/7, 2/7, 4/7"));
        let st = stabilizer(&alpha);
        assert_eq!(st.modulus(), 56);
        assert_eq!(st.order(), 6);
        assert!(st.contains(9) && st.contains(15));
        assert!(st.is_cyclic() && st.is_closed());
        let one = CycElement::one().lift(12).unwrap();
        assert_eq!(stabilizer(&one).elements(), &[1, 5, 7, 11]);
    }

    #[test]
    fn sparse_stabilizer_matches_dense_oracle() {
        for s in [
            "1/8, 7/8, 1/7, 2/7, 4/7",
            "5/12, 9/20, 1/20",
            "5/12, 11/28, 15/28, 23/28",
            "1/9, 2/9",
            "1/12, 5/12, 3/4",
            "1/15, 2/15, 4/15, 8/15",
        ] {
            let a = sum_to_element(&sum(s));
            assert_eq!(stabilizer(&a).elements(), stabilizer_dense(&a).as_slice(), "{s}");
            assert_eq!(stabilizer_of_sum(&sum(s)), stabilizer(&a));
        }
    }

    #[test]
    fn conductor_examples() {
        let r = conductor_of_sum(&sum("1/8, 7/8, 1/7, 2/7, 4/7"));
        assert_eq!((r.conductor, r.index, r.degree), (56, 6, 4));
        let r = conductor_of_sum(&sum("5/12, 9/20, 1/20"));
        assert_eq!((r.conductor, r.index), (60, 4));
        let r = conductor_of_sum(&sum("5/12, 11/28, 15/28, 23/28"));
        assert_eq!((r.conductor, r.index), (84, 6));
        let r = conductor_of_sum(&sum("1/3, 2/3"));
        assert_eq!((r.conductor, r.index, r.degree), (1, 1, 1));
        for n in [1u64, 3, 4, 5, 8, 12, 15, 30, 36] {
            let z = sum(&format!("1/{n}"));
            let r = conductor_of_sum(&z);
            assert_eq!(r.conductor, normalize_modulus(n));
            assert_eq!(r.index, 1);
        }
    }

    #[test]
    fn conductor_of_lifted_element_is_unchanged() {
        let a = sum_to_element(&sum("1/5, 4/5")).lift(60).unwrap();
        let r = conductor(&a);
        assert_eq!((r.conductor, r.index), (5, 2));
        assert_eq!(r.stabilizer_at_conductor.elements(), &[1, 4]);
    }

    #[test]
    fn subgroup_examples() {
        let g = subgroup_generated(56, &[9, 15]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_cyclic());
        assert_eq!(subgroup_generated(7, &[2]).unwrap().elements(), &[1, 2, 4]);
        assert_eq!(subgroup_generated(40, &[1]).unwrap().order(), 1);
        assert!(subgroup_generated(12, &[2]).is_err());
        assert_eq!(prime_subgroup_of_order(13, 3).unwrap().elements(), &[1, 3, 9]);
        assert!(prime_subgroup_of_order(13, 5).is_err());
    }

    #[test]
    fn crt_lift_examples() {
        assert_eq!(crt_lift(&[5, 6], &[2, 5]).unwrap(), 17);
        assert_eq!(crt_lift(&[5, 6], &[3, 5]).unwrap(), 23);
        assert_eq!(crt_lift(&[7], &[1]).unwrap(), 1);
        assert!(crt_lift(&[6, 9], &[1, 1]).is_err());
        assert!(crt_lift(&[5, 6], &[2, 3]).is_err());
    }

    #[test]
    fn orbit_sums() {
        let h = subgroup_generated(7, &[2]).unwrap();
        let s = orbit_sum(7, &h).unwrap();
        assert_eq!(s, sum("1/7, 2/7, 4/7"));
        let r = conductor_of_sum(&s);
        assert_eq!((r.conductor, r.index), (7, 3));
        assert_eq!(r.stabilizer_at_conductor, h);

        let r = conductor_of_sum(&orbit_sum(5, &subgroup_generated(5, &[4]).unwrap()).unwrap());
        assert_eq!((r.conductor, r.index), (5, 2));

        let full = orbit_sum(11, &UnitSubgroup::full(11)).unwrap();
        assert_eq!(sum_to_element(&full), CycElement::integer(-1));
        assert_eq!(conductor_of_sum(&full).conductor, 1);
        assert!(orbit_sum(9, &UnitSubgroup::full(9)).is_err());
    }

    #[test]
    fn field_membership() {
        let s = sparse_of_sum(&sum("1/8, 7/8"));
        assert!(lies_in_cyclotomic_field(&s, 8));
        assert!(lies_in_cyclotomic_field(&s, 24));
        assert!(!lies_in_cyclotomic_field(&s, 4));
        assert!(!lies_in_cyclotomic_field(&s, 28));
    }
}
