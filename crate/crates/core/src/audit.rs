//! End-to-end reproduction of the published results, one line per check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{bell_numbers, bell_upper_bound, d_lower_observed, ln_count, main_theorem_bound, stars_and_bars_count, THETA_CONSTANT};
use crate::constructions::{
    corollary2_construct, theorem1_construct, theorem4_example, theorem5_example, verify_theorem2, verify_theorem3,
    verify_theorem4_sweep, verify_theorem5_sweep, weight5_example, VerifySummary,
};
use crate::element::{normalize_modulus, sum_to_element, CycElement};
use crate::error::Result;
use crate::galois::{conductor, conductor_of_sum, stabilizer_of_sum_at, subgroup_generated};
use crate::length::{length_interval, DEFAULT_NODE_BUDGET};
use crate::ntheory::{divisors, euler_phi, gcd, mult_order, units};
use crate::root::RootOfUnity;
use crate::sum::SumOfRoots;
use crate::vanishing::{
    canonicalize, enumerate_mvs, extremal_sum, known_weight7_sums, known_weight8_sums, lam_leung_check, MVSAtlas,
};

/// Epsilon orders swept for the weight-3 family.
pub const WEIGHT3_SWEEP_ORDERS: [u64; 10] = [1, 2, 3, 4, 5, 6, 8, 12, 20, 24];
/// Epsilon orders swept for the weight-4 family.
pub const WEIGHT4_SWEEP_ORDERS: [u64; 8] = [1, 2, 3, 4, 6, 8, 12, 16];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditLine {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl AuditLine {
    fn new(check: &str, pass: bool, detail: impl Into<String>) -> Self {
        AuditLine {
            check: check.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditOptions {
    /// Skip the weight-8 enumeration.
    pub fast: bool,
    pub seed: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { fast: false, seed: 1 }
    }
}

fn line_of(check: &str, r: Result<AuditLine>) -> AuditLine {
    r.unwrap_or_else(|e| AuditLine::new(check, false, format!("error: {e}")))
}

fn summary_line(check: &str, s: Result<VerifySummary>) -> AuditLine {
    line_of(
        check,
        s.map(|s| {
            let detail = format!("{} checked, {} excluded, {} failures", s.checked, s.excluded, s.failures.len());
            AuditLine::new(check, s.passed(), detail)
        }),
    )
}

pub fn weight5_check() -> Result<AuditLine> {
    let alpha = weight5_example();
    let report = conductor_of_sum(&alpha);
    let stab = &report.stabilizer_at_conductor;
    let sub = subgroup_generated(56, &[9, 15])?;
    let pass = report.conductor == 56
        && stab.contains(9)
        && stab.contains(15)
        && sub.is_cyclic()
        && sub.order() == 6
        && report.index >= 6;
    Ok(AuditLine::new(
        "weight-5 example: c=56, <9,15> cyclic of order 6, index > 5",
        pass,
        format!("conductor {} index {} <9,15> order {}", report.conductor, report.index, sub.order()),
    ))
}

pub fn product_construction_check() -> Result<AuditLine> {
    let r = theorem1_construct(&[5, 7], &[2, 3])?;
    let pass = r.conductor == 35 && r.index == 6 && r.index_exact && r.weight == 5 && r.violates;
    Ok(AuditLine::new(
        "product construction (5,7)/(2,3): c=35, index 6, weight 5",
        pass,
        format!("{} conductor {} index {} weight {}", r.alpha, r.conductor, r.index, r.weight),
    ))
}

pub fn three_power_family_check() -> Result<AuditLine> {
    let k6 = corollary2_construct(6)?;
    let k9 = corollary2_construct(9)?;
    Ok(AuditLine::new(
        "3^(k/3) family: index >= 9 at k=6, >= 27 at k=9",
        k6.index >= 9 && k9.index >= 27,
        format!("k=6 index {} (c={}), k=9 index {} (c={})", k6.index, k6.conductor, k9.index, k9.conductor),
    ))
}

pub fn length_two_check(seed: u64) -> AuditLine {
    summary_line("length 2: index <= 2 (500 sums, orders <= 60)", verify_theorem3(500, 60, seed))
}

pub fn prime_power_checks(seed: u64) -> Vec<AuditLine> {
    [(3u64, 2u32), (2, 4), (5, 2), (3, 3)]
        .into_iter()
        .map(|(p, a)| {
            let q = p.pow(a);
            summary_line(
                &format!("prime power {q}: index <= weight, stabilizer permutes terms"),
                verify_theorem2(p, a, 100, seed ^ q),
            )
        })
        .collect()
}

pub fn weight3_family_checks() -> Vec<AuditLine> {
    let ex = line_of(
        "weight-3 example: c=60, sigma_47 fixes, order 4, index 4",
        (|| {
            let alpha = theorem4_example();
            let report = conductor_of_sum(&alpha);
            let fixes = stabilizer_of_sum_at(&alpha, 60)?.contains(47);
            let pass = report.conductor == 60 && fixes && mult_order(47, 60) == 4 && report.index == 4;
            Ok(AuditLine::new(
                "weight-3 example: c=60, sigma_47 fixes, order 4, index 4",
                pass,
                format!("conductor {} index {}", report.conductor, report.index),
            ))
        })(),
    );
    let sweep = line_of(
        "weight-3 sweep: index <= 4, equality iff form",
        verify_theorem4_sweep(&WEIGHT3_SWEEP_ORDERS).map(|s| {
            let residues_ok = s.order4_residues_mod30.iter().all(|r| [17, 23].contains(r));
            AuditLine::new(
                "weight-3 sweep: index <= 4, equality iff form, x = 17 or 23 mod 30",
                s.passed() && residues_ok && !s.equality_by_order.is_empty(),
                format!(
                    "{} sums, equality {:?}, residues mod 30 {:?}",
                    s.sums, s.equality_by_order, s.order4_residues_mod30
                ),
            )
        }),
    );
    vec![ex, sweep]
}

pub fn weight4_family_checks() -> Vec<AuditLine> {
    let ex = line_of(
        "weight-4 example: c=84, sigma_59 fixes, order 6, index 6",
        (|| {
            let alpha = theorem5_example();
            let report = conductor_of_sum(&alpha);
            let fixes = stabilizer_of_sum_at(&alpha, 84)?.contains(59);
            let pass = report.conductor == 84 && fixes && mult_order(59, 84) == 6 && report.index == 6;
            Ok(AuditLine::new(
                "weight-4 example: c=84, sigma_59 fixes, order 6, index 6",
                pass,
                format!("conductor {} index {}", report.conductor, report.index),
            ))
        })(),
    );
    let sweep = line_of(
        "weight-4 sweep: index <= 6, equality iff form",
        verify_theorem5_sweep(&WEIGHT4_SWEEP_ORDERS).map(|s| {
            AuditLine::new(
                "weight-4 sweep: index <= 6, equality iff form",
                s.passed() && !s.equality_by_order.is_empty(),
                format!("{} sums, equality {:?}", s.sums, s.equality_by_order),
            )
        }),
    );
    vec![ex, sweep]
}

fn canonical_set(sums: &[SumOfRoots]) -> Result<Vec<Vec<u64>>> {
    let mut out = sums
        .iter()
        .map(|s| canonicalize(s).map(|c| c.exponents))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

fn atlas_exponents(a: &MVSAtlas) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = a.entries.iter().map(|e| e.exponents.clone()).collect();
    out.sort();
    out
}

/// Atlas lines plus every atlas built, for the structure check.
pub fn atlas_checks(fast: bool) -> (Vec<AuditLine>, Vec<MVSAtlas>) {
    let mut lines = Vec::new();
    let mut atlases = Vec::new();
    for (k, expected) in [(2usize, 1usize), (3, 1), (4, 0), (5, 1), (6, 1)] {
        let check = format!("atlas weight {k}: {expected} class(es)");
        lines.push(line_of(
            &check,
            enumerate_mvs(k).map(|a| {
                let mut pass = a.complete && a.entries.len() == expected;
                if k == 6 {
                    pass &= canonical_set(&[extremal_sum(2, 3, 5).expect("primes")]).is_ok_and(|e| e == atlas_exponents(&a));
                }
                let line = AuditLine::new(&check, pass, format!("{} classes", a.entries.len()));
                atlases.push(a);
                line
            }),
        ));
    }
    let check = "atlas weight 7: R7 and two R5 replacement classes";
    lines.push(line_of(
        check,
        enumerate_mvs(7).and_then(|a| {
            let known = canonical_set(&known_weight7_sums())?;
            let line = AuditLine::new(check, a.complete && atlas_exponents(&a) == known, format!("{} classes", a.entries.len()));
            atlases.push(a);
            Ok(line)
        }),
    ));
    if !fast {
        let check = "atlas weight 8: exactly the three known classes";
        lines.push(line_of(
            check,
            enumerate_mvs(8).and_then(|a| {
                let known = canonical_set(&known_weight8_sums())?;
                let line = AuditLine::new(check, a.complete && atlas_exponents(&a) == known, format!("{} classes", a.entries.len()));
                atlases.push(a);
                Ok(line)
            }),
        ));
    }
    (lines, atlases)
}

pub fn structure_check(atlases: &[MVSAtlas]) -> AuditLine {
    let total: usize = atlases.iter().map(|a| a.entries.len()).sum();
    let bad: Vec<String> = atlases
        .iter()
        .flat_map(|a| a.entries.iter())
        .filter(|e| !lam_leung_check(e))
        .map(|e| e.to_sum().to_string())
        .collect();
    AuditLine::new(
        "every atlas entry satisfies the prime-support weight bound",
        bad.is_empty(),
        format!("{total} entries, failures {bad:?}"),
    )
}

pub fn length_checks() -> Vec<AuditLine> {
    [("length of the weight-3 example is 3", theorem4_example()), ("length of the weight-4 example is 4", theorem5_example())]
        .into_iter()
        .map(|(check, s)| {
            let w = s.weight();
            line_of(
                check,
                length_interval(&s, w, None, DEFAULT_NODE_BUDGET).map(|i| {
                    AuditLine::new(
                        check,
                        i.certified && i.lower == w && i.upper == w,
                        format!("[{}, {}] certified {} at M={}", i.lower, i.upper, i.certified, i.order_bound),
                    )
                }),
            )
        })
        .collect()
}

pub fn bound_checks() -> Vec<AuditLine> {
    let bells = bell_numbers(20);
    let bell_ok = (1..=20u64).all(|k| ln_count(&bells[k as usize]) < bell_upper_bound(k).expect("k >= 1").ln());
    let sb_ok = (1..=30u64).all(|k| ln_count(&stars_and_bars_count(k)) <= THETA_CONSTANT * (k * k) as f64);
    let d_check = "observed index <= upper bound for k = 2..15";
    let d_line = line_of(
        d_check,
        (2..=15u64)
            .map(|k| Ok(((d_lower_observed(k)? as f64).ln() <= main_theorem_bound(k)?, k)))
            .collect::<Result<Vec<_>>>()
            .map(|v| {
                let bad: Vec<u64> = v.iter().filter(|(ok, _)| !ok).map(|&(_, k)| k).collect();
                AuditLine::new(d_check, bad.is_empty(), format!("violations at {bad:?}"))
            }),
    );
    vec![
        AuditLine::new("Bell numbers below the Bell bound for k = 1..20", bell_ok, "exact triangle recurrence"),
        AuditLine::new("log C(l(k)+k-1, k) <= c k^2 for k = 1..30", sb_ok, "exact binomials"),
        d_line,
    ]
}

/// A random sum of at most 4 roots whose orders divide `n`, with coefficients in `-2..=2`.
fn random_element(rng: &mut ChaCha8Rng, n: u64) -> CycElement {
    let w = rng.gen_range(1..=4);
    let mut terms = Vec::new();
    for _ in 0..w {
        let r = RootOfUnity::from_parts(n, rng.gen_range(0..n)).expect("positive");
        let c = rng.gen_range(-2i32..=2);
        for _ in 0..c.unsigned_abs() {
            terms.push(if c < 0 { r.neg() } else { r });
        }
    }
    sum_to_element(&SumOfRoots::new(terms))
}

/// Randomized algebra laws at moduli up to 200: `σ_x` is a ring homomorphism,
/// `σ_x σ_y = σ_{xy}`, field membership at `n` and `m` forces `c | gcd(n, m)`, and
/// index times degree is `φ(c)`.
pub fn algebra_properties(instances: usize, seed: u64) -> VerifySummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = VerifySummary::default();
    while out.checked < instances {
        let n = rng.gen_range(1..=200u64);
        let us = units(n);
        let x = us[rng.gen_range(0..us.len())];
        let y = us[rng.gen_range(0..us.len())];
        let a = random_element(&mut rng, n);
        let b = random_element(&mut rng, n);
        out.checked += 1;
        let g = |e: &CycElement, u: u64| e.galois_apply(u).expect("unit");
        if g(&(&a + &b), x) != &g(&a, x) + &g(&b, x) || g(&(&a * &b), x) != &g(&a, x) * &g(&b, x) {
            out.failures.push(format!("homomorphism fails for x={x} at N={n}"));
        }
        if g(&g(&a, y), x) != g(&a, x * y % n) {
            out.failures.push(format!("action fails for x={x}, y={y} at N={n}"));
        }
        let report = conductor(&a);
        let c = report.conductor;
        if report.index * report.degree != euler_phi(c) {
            out.failures.push(format!("index*degree != phi({c}) for {a}"));
        }
        // fields containing a: Q_n and Q_m with c | n, m; then c | gcd(n, m) after normalization
        let ds = divisors(n);
        let containing: Vec<u64> = ds.iter().copied().filter(|&d| lies_in(&a, d)).collect();
        for &p in &containing {
            for &q in &containing {
                if normalize_modulus(gcd(p, q)) % c != 0 {
                    out.failures.push(format!("conductor {c} does not divide gcd({p}, {q})"));
                }
            }
        }
        if !lies_in(&a, c) {
            out.failures.push(format!("{a} not in its conductor field {c}"));
        }
    }
    out
}

fn lies_in(a: &CycElement, d: u64) -> bool {
    crate::galois::lies_in_cyclotomic_field(&a.to_sparse(), d)
}

/// Runs every check in order.
pub fn run_audit(opts: AuditOptions) -> Vec<AuditLine> {
    let mut lines = vec![
        line_of("weight-5 example", weight5_check()),
        line_of("product construction", product_construction_check()),
        line_of("3^(k/3) family", three_power_family_check()),
        length_two_check(opts.seed),
    ];
    lines.extend(prime_power_checks(opts.seed));
    lines.extend(weight3_family_checks());
    lines.extend(weight4_family_checks());
    let (atlas_lines, atlases) = atlas_checks(opts.fast);
    lines.extend(atlas_lines);
    lines.push(structure_check(&atlases));
    lines.extend(length_checks());
    lines.extend(bound_checks());
    lines.push(summary_line(
        "algebra laws on 1000 random elements, N <= 200",
        Ok(algebra_properties(1000, opts.seed)),
    ));
    lines
}
