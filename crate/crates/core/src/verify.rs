//! Seeded randomized self-checks and independent oracles.
//!
//! Each suite draws its own deterministic random stream, re-derives expected
//! values through an independent route (naive Taylor sums, truncated product
//! expansion, divisor-sum enumeration, bracket expansion), and compares
//! exactly. The command-line `verify` subcommand runs all of them; the
//! acceptance tests pin the same suites at fixed sizes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chow::{local_to_global_check, ChowModel, Stratum};
use crate::geometry::{divisors, CurveClass, Generator, Geometry};
use crate::git::{
    asymptotic_sign, git_stability_test, hm_weight, DimensionTriple, FiltrationStep, Sign,
    WeightData,
};
use crate::invariants::{InvariantTable, SlopeContext};
use crate::lie::{lie_transform_check, Charge, LieElement};
use crate::poly::Poly;
use crate::pt::{
    gv_expand, l_series_solve_multicover, l_symmetry_report, pt_beta, rationality_check, GvTable,
    PtSeries,
};
use crate::ratfun::RatFun;
use crate::rational::{rat, rat_int, Rational};
use crate::series::ConeSeries;
use crate::transforms::{
    check_multiple_cover, dt_par_from_n, gv_product_side, multiple_cover_extend, n_from_dt_par,
};

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &str, detail: String) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            passed: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            passed: false,
            detail,
        }
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn line_geometry(d: u64) -> Arc<Geometry> {
    Geometry::new(
        vec![Generator {
            name: "C".into(),
            omega: 1,
            h: 1,
        }],
        d,
    )
    .unwrap()
}

fn cls(m: u32) -> CurveClass {
    CurveClass::new(vec![m])
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-9..=9), rng.random_range(1..=9))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_geometry(rng: &mut ChaCha8Rng, max_generators: usize, max_d: u64) -> Arc<Geometry> {
    let count = rng.random_range(1..=max_generators);
    let generators: Vec<Generator> = (0..count)
        .map(|i| Generator {
            name: format!("g{i}"),
            omega: rng.random_range(1..=2),
            h: rng.random_range(1..=3),
        })
        .collect();
    let min_omega = generators.iter().map(|g| g.omega).min().unwrap();
    let low = (2 * min_omega).min(max_d);
    let d = rng.random_range(low..=max_d);
    Geometry::new(generators, d).unwrap()
}

pub fn random_slope(rng: &mut ChaCha8Rng) -> Rational {
    match rng.random_range(0..4) {
        0 => rat_int(1),
        1 => rat_int(2),
        2 => rat(1, 2),
        _ => rat(3, 2),
    }
}

pub fn random_primitive_table(rng: &mut ChaCha8Rng, geometry: &Arc<Geometry>) -> InvariantTable {
    let mut table = InvariantTable::new(geometry);
    for class in geometry.positive_classes() {
        if rng.random_bool(0.6) {
            table.insert(1, class, random_rational(rng)).unwrap();
        }
    }
    table
}

/// Random series with constant term zero: a handful of in-truncation
/// monomials with small q-exponents.
pub fn random_zero_constant_series(
    rng: &mut ChaCha8Rng,
    geometry: &Arc<Geometry>,
) -> ConeSeries<Rational> {
    let classes = geometry.positive_classes();
    let mut series = ConeSeries::zero(geometry);
    let picks = rng.random_range(1..=classes.len().min(6));
    for _ in 0..picks {
        let class = classes[rng.random_range(0..classes.len())].clone();
        let n = rng.random_range(-3..=3);
        let c = random_rational(rng);
        series = series
            .add(&ConeSeries::monomial(geometry, n, class, c).unwrap())
            .unwrap();
    }
    series
}

/// Naive Taylor oracle for exp: powers computed from scratch, summed with
/// explicit factorials.
fn naive_exp_oracle(series: &ConeSeries<Rational>) -> ConeSeries<Rational> {
    let geometry = series.geometry();
    let mut acc = ConeSeries::one(geometry);
    for k in 1..=geometry.nilpotency_order() {
        let mut power = ConeSeries::one(geometry);
        for _ in 0..k {
            power = power.mul(series).unwrap();
        }
        let factorial = Rational::from_integer(crate::rational::factorial(k));
        acc = acc.add(&power.scale(&(rat_int(1) / factorial))).unwrap();
    }
    acc
}

/// Exp against the Taylor oracle and log as its inverse, on random series.
pub fn exp_log_oracle(seed: u64, count: usize, max_d: u64) -> CheckOutcome {
    let name = "exp-log-oracle";
    let mut rng = rng_for(seed, 9);
    for i in 0..count {
        let geometry = random_geometry(&mut rng, 3, max_d);
        let a = random_zero_constant_series(&mut rng, &geometry);
        let exp = a.exp().unwrap();
        let oracle = naive_exp_oracle(&a);
        if exp != oracle {
            return CheckOutcome::fail(name, format!("exp mismatch at case {i}"));
        }
        if exp.log().unwrap() != a {
            return CheckOutcome::fail(name, format!("log(exp) mismatch at case {i}"));
        }
        let unit = ConeSeries::one(&geometry).add(&a).unwrap();
        if unit.log().unwrap().exp().unwrap() != unit {
            return CheckOutcome::fail(name, format!("exp(log) mismatch at case {i}"));
        }
    }
    CheckOutcome::pass(name, format!("{count} random series up to degree {max_d}"))
}

/// The rigid-curve forward transform at several slopes: the multiple-cover
/// family collapses to 1 + q^mu t.
pub fn rigid_curve_forward() -> CheckOutcome {
    let name = "rigid-curve-forward";
    let geometry = line_geometry(6);
    for mu in 0..=2i64 {
        let ctx = SlopeContext::new(&geometry, rat_int(mu));
        let mut table = InvariantTable::new(&geometry);
        for m in 1..=6i64 {
            table.insert(mu * m, cls(m as u32), rat(1, m * m)).unwrap();
        }
        let series = dt_par_from_n(&ctx, &table).unwrap();
        let expect = ConeSeries::one(&geometry)
            .add(&ConeSeries::monomial(&geometry, mu, cls(1), rat_int(1)).unwrap())
            .unwrap();
        if series != expect {
            return CheckOutcome::fail(name, format!("slope {mu}: got {}", series.pretty()));
        }
    }
    CheckOutcome::pass(name, "slopes 0, 1, 2 at degree 6".into())
}

/// Inverse transform on 1 + q^mu t recovers the multiple-cover family.
pub fn rigid_curve_inverse() -> CheckOutcome {
    let name = "rigid-curve-inverse";
    let geometry = line_geometry(6);
    for mu in 0..=2i64 {
        let ctx = SlopeContext::new(&geometry, rat_int(mu));
        let series = ConeSeries::one(&geometry)
            .add(&ConeSeries::monomial(&geometry, mu, cls(1), rat_int(1)).unwrap())
            .unwrap();
        let table = n_from_dt_par(&ctx, &series).unwrap();
        for m in 1..=6i64 {
            if table.get(mu * m, &cls(m as u32)) != rat(1, m * m) {
                return CheckOutcome::fail(name, format!("slope {mu}, multiple {m}"));
            }
        }
        if table.len() != 6 {
            return CheckOutcome::fail(name, format!("slope {mu}: {} entries", table.len()));
        }
    }
    CheckOutcome::pass(
        name,
        "recovered 1/m^2 for m = 1..6 at slopes 0, 1, 2".into(),
    )
}

/// Random-table equivalence: forward of the multiple-cover extension equals
/// the product side, the per-key checker agrees in both directions, and a
/// perturbed entry flips exactly its own flag.
pub fn multiple_cover_equivalence(seed: u64, count: usize, max_d: u64) -> CheckOutcome {
    let name = "multiple-cover-equivalence";
    let mut rng = rng_for(seed, 3);
    let mut perturbations = 0usize;
    for i in 0..count {
        let geometry = random_geometry(&mut rng, 3, max_d);
        let mut ctx = SlopeContext::new(&geometry, random_slope(&mut rng));
        // The perturbation step needs an admissible key away from the
        // primitive slice; slope one always has one since d >= 2 min omega.
        if !ctx.admissible_keys().iter().any(|(n, _)| *n != 1) {
            ctx = SlopeContext::new(&geometry, rat_int(1));
        }
        let primitive = random_primitive_table(&mut rng, &geometry);
        let extended = multiple_cover_extend(&ctx, &primitive).unwrap();
        let forward = dt_par_from_n(&ctx, &extended).unwrap();
        let product = gv_product_side(&ctx, &primitive).unwrap();
        if forward != product {
            return CheckOutcome::fail(name, format!("series mismatch at case {i}"));
        }
        let full = extended.merged(&primitive).unwrap();
        let report = check_multiple_cover(&ctx, &full).unwrap();
        if !report.all_ok() {
            return CheckOutcome::fail(name, format!("flag mismatch at case {i}"));
        }
        // Perturb one non-primitive admissible key, when the slope offers one.
        let candidates: Vec<(i64, CurveClass)> = ctx
            .admissible_keys()
            .into_iter()
            .filter(|(n, _)| *n != 1)
            .collect();
        if candidates.is_empty() {
            continue;
        }
        perturbations += 1;
        let (n, class) = candidates[rng.random_range(0..candidates.len())].clone();
        let mut perturbed = full.clone();
        perturbed
            .insert(n, class.clone(), full.get(n, &class) + rat_int(1))
            .unwrap();
        let report = check_multiple_cover(&ctx, &perturbed).unwrap();
        for row in &report.rows {
            let should_be_ok = !(row.n == n && row.class == class);
            if row.ok != should_be_ok {
                return CheckOutcome::fail(
                    name,
                    format!("case {i}: flag at ({}, {}) is {}", row.n, row.class, row.ok),
                );
            }
        }
    }
    CheckOutcome::pass(
        name,
        format!("{count} random tables, {perturbations} perturbation flips"),
    )
}

/// Random slope-fibered table over the admissible keys.
pub fn random_slope_table(rng: &mut ChaCha8Rng, ctx: &SlopeContext) -> InvariantTable {
    let mut table = InvariantTable::new(ctx.geometry());
    for (n, class) in ctx.admissible_keys() {
        if rng.random_bool(0.7) {
            table.insert(n, class, random_rational(rng)).unwrap();
        }
    }
    table
}

/// The adjoint-exponential route agrees with the series transform.
pub fn bch_cross_check(seed: u64, count: usize, max_d: u64) -> CheckOutcome {
    let name = "bch-cross-check";
    let mut rng = rng_for(seed, 4);
    for i in 0..count {
        let geometry = random_geometry(&mut rng, 3, max_d);
        let ctx = SlopeContext::new(&geometry, random_slope(&mut rng));
        let table = random_slope_table(&mut rng, &ctx);
        let report = lie_transform_check(&ctx, &table).unwrap();
        if !report.all_ok() {
            return CheckOutcome::fail(name, format!("mismatch at case {i}"));
        }
    }
    CheckOutcome::pass(name, format!("{count} random tables up to degree {max_d}"))
}

fn random_lie_element(rng: &mut ChaCha8Rng, geometry: &Arc<Geometry>) -> LieElement {
    let classes = geometry.positive_classes();
    let mut element = LieElement::zero(geometry);
    for _ in 0..rng.random_range(1..=3) {
        let class = if rng.random_bool(0.15) {
            geometry.zero_class()
        } else {
            classes[rng.random_range(0..classes.len())].clone()
        };
        let n = if class.is_zero() {
            0
        } else {
            rng.random_range(-3..=3)
        };
        let charge = Charge::new(rng.random_range(0..=2), class, n);
        element.insert(charge, random_rational(rng)).unwrap();
    }
    element
}

/// Antisymmetry and the Jacobi identity on random triples.
pub fn lie_axioms(seed: u64, triples: usize) -> CheckOutcome {
    let name = "lie-axioms";
    let mut rng = rng_for(seed, 5);
    for i in 0..triples {
        let geometry = random_geometry(&mut rng, 2, 5);
        let x = random_lie_element(&mut rng, &geometry);
        let y = random_lie_element(&mut rng, &geometry);
        let z = random_lie_element(&mut rng, &geometry);
        let xy = x.bracket(&y).unwrap();
        if xy != y.bracket(&x).unwrap().neg() {
            return CheckOutcome::fail(name, format!("antisymmetry fails at case {i}"));
        }
        let jacobi = x
            .bracket(&y.bracket(&z).unwrap())
            .unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap())
            .unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap())
            .unwrap();
        if !jacobi.is_zero() {
            return CheckOutcome::fail(name, format!("Jacobi fails at case {i}"));
        }
    }
    CheckOutcome::pass(name, format!("{triples} random triples"))
}

fn big_binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Coefficient of x^i in (1 - x)^e for a signed integer exponent:
/// C(e, i) (-1)^i for e >= 0, C(-e + i - 1, i) for e < 0.
fn one_minus_x_power_coeff(e: i64, i: u64) -> Rational {
    if e >= 0 {
        if i > e as u64 {
            Rational::zero()
        } else {
            let sign = if i.is_multiple_of(2) { 1 } else { -1 };
            Rational::from_integer(big_binomial(e as u64, i) * BigInt::from(sign))
        }
    } else {
        Rational::from_integer(big_binomial((-e) as u64 + i - 1, i))
    }
}

/// Truncated-product expansion of a single-generator genus-zero product
/// form prod_{c, j <= j_max} (1 - (-q)^j t^c)^(j n0_c): returns the
/// coefficient of t^m q^o at [m][o]. Works monomial by monomial in the
/// nilpotent variable x = (-q)^j t^c, so no division is ever needed.
fn genus_zero_product_oracle(
    n0: &BTreeMap<u32, i64>,
    t_cap: usize,
    q_cap: usize,
    j_max: u64,
) -> Vec<Vec<Rational>> {
    let mut acc = vec![vec![Rational::zero(); q_cap + 1]; t_cap + 1];
    acc[0][0] = rat_int(1);
    for (&mult, &value) in n0 {
        for j in 1..=j_max {
            let exponent = j as i64 * value;
            if exponent == 0 {
                continue;
            }
            let mut out = vec![vec![Rational::zero(); q_cap + 1]; t_cap + 1];
            for i in 0..=(t_cap / mult as usize) as u64 {
                let weight = one_minus_x_power_coeff(exponent, i);
                if weight.is_zero() {
                    continue;
                }
                let q_shift = (j * i) as usize;
                let t_shift = mult as usize * i as usize;
                if q_shift > q_cap && i > 0 {
                    continue;
                }
                // x^i = (-1)^(j i) q^(j i) t^(c i)
                let sign = if (j * i) % 2 == 0 { 1 } else { -1 };
                let weight = weight * rat_int(sign);
                for ti in 0..=t_cap - t_shift {
                    for qi in 0..=q_cap.saturating_sub(q_shift) {
                        if acc[ti][qi].is_zero() {
                            continue;
                        }
                        out[ti + t_shift][qi + q_shift] += &acc[ti][qi] * &weight;
                    }
                }
            }
            acc = out;
        }
    }
    acc
}

/// Genus-zero expansion at the rigid curve plus the truncated-product oracle.
pub fn gv_rationality(seed: u64) -> CheckOutcome {
    let name = "gv-rationality";
    let geometry = line_geometry(1);
    let gv = GvTable::from_entries(&geometry, [(0, cls(1), 1)]).unwrap();
    let series = gv_expand(&geometry, &gv).unwrap();
    let f = pt_beta(&series, &cls(1)).unwrap();
    let expect = RatFun::new(
        Poly::monomial(rat_int(1), 1),
        Poly::from_coeffs(vec![rat_int(1), rat_int(2), rat_int(1)]),
    )
    .unwrap();
    if f != expect {
        return CheckOutcome::fail(name, format!("expected q/(1+q)^2, got {f}"));
    }
    if !rationality_check(&f) {
        return CheckOutcome::fail(name, "q <-> 1/q symmetry fails".into());
    }
    // Truncated-product oracle: j <= 40, q-order 30.
    let (j_max, q_cap) = (40u64, 30usize);
    let oracle = genus_zero_product_oracle(&BTreeMap::from([(1u32, 1i64)]), 1, q_cap, j_max);
    let expansion = f.power_series(q_cap).unwrap();
    for order in 0..(j_max as usize).min(q_cap) {
        if oracle[1][order] != expansion[order] {
            return CheckOutcome::fail(name, format!("oracle mismatch at q^{order}"));
        }
    }
    // A few random single-generator genus-zero tables, all classes.
    let mut rng = rng_for(seed, 6);
    for case in 0..3 {
        let d = 3u64;
        let geometry = line_geometry(d);
        let mut data = BTreeMap::new();
        let mut gv = GvTable::new(&geometry);
        for m in 1..=d as u32 {
            let v = rng.random_range(-3..=3i64);
            if v != 0 {
                data.insert(m, v);
                gv.insert(0, cls(m), v).unwrap();
            }
        }
        let series = gv_expand(&geometry, &gv).unwrap();
        let (j_max, q_cap) = (25u64, 20usize);
        let oracle = genus_zero_product_oracle(&data, d as usize, q_cap, j_max);
        for (m, oracle_row) in oracle.iter().enumerate().skip(1) {
            let f = pt_beta(&series, &cls(m as u32)).unwrap();
            let expansion = f.power_series(q_cap).unwrap();
            for order in 0..(j_max as usize).min(q_cap) {
                if oracle_row[order] != expansion[order] {
                    return CheckOutcome::fail(
                        name,
                        format!("random case {case}: mismatch at t^{m} q^{order}"),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(name, "closed form matches product expansion".into())
}

/// The L-series of the rigid-curve pair is trivial and symmetric.
pub fn l_series_rigid_curve() -> CheckOutcome {
    let name = "l-series";
    let geometry = line_geometry(4);
    let gv = GvTable::from_entries(&geometry, [(0, cls(1), 1)]).unwrap();
    let pt = gv_expand(&geometry, &gv).unwrap();
    let primitive = InvariantTable::from_entries(&geometry, [(1, cls(1), rat_int(1))]).unwrap();
    let l = l_series_solve_multicover(&geometry, &pt, &primitive).unwrap();
    if pt_beta(&l, &cls(1)).unwrap() != RatFun::zero() {
        return CheckOutcome::fail(name, "primitive-class coefficient is nonzero".into());
    }
    if l != PtSeries::one(&geometry) {
        return CheckOutcome::fail(name, format!("L = {}", l.pretty()));
    }
    let report = l_symmetry_report(&l);
    if !report.all_ok() {
        return CheckOutcome::fail(name, "symmetry report failed".into());
    }
    CheckOutcome::pass(name, "L collapses to 1 at degree 4".into())
}

/// Builds a stratum whose local data is consistent by construction: local
/// primitive values are extended by the divisor sum and pushed through the
/// forward transform to produce the local pair counts.
fn consistent_stratum(
    rng: &mut ChaCha8Rng,
    geometry: &Arc<Geometry>,
    class: &CurveClass,
    n: i64,
    label: String,
) -> Stratum {
    let omega = geometry.omega_degree(class);
    let h = geometry.h_degree(class);
    let candidates: Vec<u64> = divisors(n.unsigned_abs().gcd(&class.divisibility()))
        .into_iter()
        .filter(|k| class.try_div(*k).is_some())
        .collect();
    let a = candidates[rng.random_range(0..candidates.len())];
    let local_geometry = Geometry::new(
        vec![Generator {
            name: "ray".into(),
            omega: omega / a,
            h: h / a,
        }],
        omega,
    )
    .unwrap();
    let slope = rat_int(n) / rat_int(omega as i64);
    let ctx = SlopeContext::new(&local_geometry, slope);

    let mut rho = BTreeMap::new();
    let mut primitive = InvariantTable::new(&local_geometry);
    for j in 1..=a {
        let value = if rng.random_bool(0.75) {
            nonzero_rational(rng)
        } else {
            Rational::zero()
        };
        if !value.is_zero() {
            primitive.insert(1, cls(j as u32), value.clone()).unwrap();
        }
        rho.insert(j, value);
    }
    let extended = multiple_cover_extend(&ctx, &primitive).unwrap();
    let series = dt_par_from_n(&ctx, &extended).unwrap();

    let mut dtpar = BTreeMap::new();
    for m in 1..=a {
        let local_n = (m as i64) * n / (a as i64);
        let value = series.coefficient(local_n, &cls(m as u32)).unwrap();
        if !value.is_zero() {
            dtpar.insert(local_n, value);
        }
    }
    let mut n1 = BTreeMap::new();
    for k in divisors(a) {
        let value = rho.get(&(a / k)).cloned().unwrap_or_else(Rational::zero);
        if !value.is_zero() {
            n1.insert(class.try_div(k).unwrap(), value);
        }
    }
    Stratum {
        label,
        chi: rng.random_range(-3..=3),
        cycle_mults: vec![u32::try_from(a).unwrap()],
        dtpar,
        n1,
    }
}

/// Synthetic stratified models with individually consistent strata always
/// aggregate to a consistent global relation.
pub fn local_to_global(seed: u64, count: usize) -> CheckOutcome {
    let name = "local-to-global";
    let mut rng = rng_for(seed, 8);
    for i in 0..count {
        let geometry = random_geometry(&mut rng, 2, 6);
        let classes = geometry.positive_classes();
        let class = classes[rng.random_range(0..classes.len())].clone();
        let omega = geometry.omega_degree(&class) as i64;
        let n = omega
            * if rng.random_bool(0.5) {
                rng.random_range(1..=2)
            } else {
                -rng.random_range(1..=2)
            };
        let slope = rat_int(n) / rat_int(omega);
        let strata: Vec<Stratum> = (0..rng.random_range(1..=4))
            .map(|s| consistent_stratum(&mut rng, &geometry, &class, n, format!("s{s}")))
            .collect();
        let model = ChowModel::new(&geometry, class, strata).unwrap();
        let report = local_to_global_check(&model, &slope).unwrap();
        if !report.all_strata_consistent() {
            return CheckOutcome::fail(name, format!("case {i}: a stratum is inconsistent"));
        }
        if !report.global_ok {
            return CheckOutcome::fail(name, format!("case {i}: global relation fails"));
        }
        // Regrouped aggregation agrees with the direct order of summation.
        let direct = report
            .rows
            .iter()
            .map(|row| &row.cover_side * rat_int(row.chi))
            .fold(Rational::zero(), |acc, v| acc + v);
        if direct != report.global_cover_side {
            return CheckOutcome::fail(name, format!("case {i}: regrouping mismatch"));
        }
    }
    CheckOutcome::pass(name, format!("{count} synthetic models"))
}

/// Weight vanishing, homogeneity, and the stability sign fixtures.
pub fn git_numerics(seed: u64) -> CheckOutcome {
    let name = "git-numerics";
    let mut rng = rng_for(seed, 10);
    for _ in 0..25 {
        let chi = Poly::from_coeffs(vec![random_rational(&mut rng), random_rational(&mut rng)]);
        let dim_v = rng.random_range(1..=9u32);
        let dim_a = rng.random_range(0..=9u32);
        let trivial = WeightData {
            dim_v,
            steps: vec![FiltrationStep {
                dim_v,
                chi_f: chi.clone(),
                dim_a,
            }],
            chi_f: chi.clone(),
            dim_a,
        };
        if !hm_weight(&trivial).unwrap().is_zero() {
            return CheckOutcome::fail(name, "trivial filtration has nonzero weight".into());
        }
        // Degree-one homogeneity under integer scaling.
        let scale = rng.random_range(2..=4u32);
        let steps = vec![
            FiltrationStep {
                dim_v: rng.random_range(1..dim_v.max(2)),
                chi_f: Poly::from_coeffs(vec![
                    random_rational(&mut rng),
                    random_rational(&mut rng),
                ]),
                dim_a: rng.random_range(0..=dim_a),
            },
            FiltrationStep {
                dim_v,
                chi_f: chi.clone(),
                dim_a,
            },
        ];
        let base = WeightData {
            dim_v,
            steps: steps.clone(),
            chi_f: chi.clone(),
            dim_a,
        };
        let scaled = WeightData {
            dim_v: dim_v * scale,
            steps: steps
                .iter()
                .map(|s| FiltrationStep {
                    dim_v: s.dim_v * scale,
                    chi_f: s.chi_f.scale(&rat_int(i64::from(scale))),
                    dim_a: s.dim_a * scale,
                })
                .collect(),
            chi_f: chi.scale(&rat_int(i64::from(scale))),
            dim_a: dim_a * scale,
        };
        let expect = hm_weight(&base).unwrap().scale(&rat_int(i64::from(scale)));
        if hm_weight(&scaled).unwrap() != expect {
            return CheckOutcome::fail(name, "weight is not degree-one homogeneous".into());
        }
        // Two-step weights carry the same asymptotic sign as the subspace test.
        let total = DimensionTriple {
            dim_v,
            chi_f: chi.clone(),
            dim_a,
        };
        let sub = DimensionTriple {
            dim_v: base.steps[0].dim_v,
            chi_f: base.steps[0].chi_f.clone(),
            dim_a: base.steps[0].dim_a,
        };
        if sub.dim_v > 0 && sub.dim_v < total.dim_v {
            let weight_sign = asymptotic_sign(&hm_weight(&base).unwrap());
            if weight_sign != git_stability_test(&total, &sub).unwrap() {
                return CheckOutcome::fail(name, "weight sign disagrees with subspace test".into());
            }
        }
    }
    // The rank-two destabilization pattern: equal slopes, marked dimension
    // split against the section.
    let total = DimensionTriple {
        dim_v: 6,
        chi_f: Poly::from_coeffs(vec![rat_int(4), rat_int(2)]),
        dim_a: 9,
    };
    let destabilizing = DimensionTriple {
        dim_v: 3,
        chi_f: Poly::from_coeffs(vec![rat_int(2), rat_int(1)]),
        dim_a: 4,
    };
    if git_stability_test(&total, &destabilizing).unwrap() != Sign::Negative {
        return CheckOutcome::fail(name, "destabilizing fixture is not negative".into());
    }
    let dominant = DimensionTriple {
        dim_v: 1,
        chi_f: Poly::from_coeffs(vec![rat_int(0), rat_int(1)]),
        dim_a: 0,
    };
    if git_stability_test(&total, &dominant).unwrap() != Sign::Positive {
        return CheckOutcome::fail(name, "leading-coefficient fixture is not positive".into());
    }
    let balanced = DimensionTriple {
        dim_v: 2,
        chi_f: Poly::from_coeffs(vec![rat(1, 3), rat(2, 3)]),
        dim_a: 4,
    };
    if git_stability_test(&total, &balanced).unwrap() != Sign::Zero {
        return CheckOutcome::fail(name, "balanced fixture is not zero".into());
    }
    CheckOutcome::pass(name, "weights, homogeneity and sign fixtures".into())
}

/// Self-check battery used by the command-line `verify` subcommand.
pub fn run_all(seed: u64, max_d: u64) -> Vec<CheckOutcome> {
    let max_d = max_d.max(2);
    vec![
        rigid_curve_forward(),
        rigid_curve_inverse(),
        multiple_cover_equivalence(seed, 100, max_d),
        bch_cross_check(seed, 50, max_d.min(5)),
        lie_axioms(seed, 500),
        gv_rationality(seed),
        l_series_rigid_curve(),
        local_to_global(seed, 50),
        exp_log_oracle(seed, 200, max_d),
        git_numerics(seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_quick() {
        for outcome in [
            rigid_curve_forward(),
            rigid_curve_inverse(),
            multiple_cover_equivalence(7, 5, 5),
            bch_cross_check(7, 5, 4),
            lie_axioms(7, 25),
            gv_rationality(7),
            l_series_rigid_curve(),
            local_to_global(7, 5),
            exp_log_oracle(7, 10, 5),
            git_numerics(7),
        ] {
            assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
        }
    }
}
