//! Weighted Euler-characteristic integration over finite stratified models.
//!
//! A constructible function on a finite stratification is an assignment of a
//! value to each stratum; its integral is the Euler-characteristic-weighted
//! sum of values. `ChowModel` is a synthetic cycle space for one class beta:
//! each stratum stands for a family of one-cycles with its own Euler
//! characteristic, a cycle-multiplicity vector recording how divisible those
//! cycles are, a local pair-count table keyed by Euler characteristic, and
//! local primitive invariants for each divisor of the cycle divisibility.
//! `local_to_global_check` integrates the local log coefficients and the
//! local divisor sums and verifies the signed relation between the two
//! globals, which holds whenever every stratum is itself consistent.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{divisors, CurveClass, Generator, Geometry};
use crate::invariants::SlopeContext;
use crate::rational::{as_integer, neg_one_pow, rat_int, Rational};
use crate::series::ConeSeries;
use crate::transforms::dt_hat;

/// A constructible function presented by strata: (label, Euler characteristic,
/// value). Labels must be distinct.
#[derive(Clone, PartialEq, Debug)]
pub struct StratifiedFunction {
    strata: Vec<(String, i64, Rational)>,
}

impl StratifiedFunction {
    pub fn new(strata: Vec<(String, i64, Rational)>) -> Result<StratifiedFunction> {
        let mut seen = std::collections::BTreeSet::new();
        for (label, _, _) in &strata {
            if !seen.insert(label.clone()) {
                return Err(Error::MalformedModel(format!(
                    "duplicate stratum label {label:?}"
                )));
            }
        }
        Ok(StratifiedFunction { strata })
    }

    pub fn strata(&self) -> &[(String, i64, Rational)] {
        &self.strata
    }
}

/// The weighted Euler characteristic: sum of value * chi over strata.
pub fn euler_integrate(f: &StratifiedFunction) -> Rational {
    f.strata
        .iter()
        .fold(Rational::zero(), |acc, (_, chi, value)| {
            acc + value * rat_int(*chi)
        })
}

/// One stratum of a synthetic cycle space.
#[derive(Clone, PartialEq, Debug)]
pub struct Stratum {
    pub label: String,
    pub chi: i64,
    /// Multiplicities of the cycle over its own irreducible support; their
    /// gcd (with n) is the divisibility that stratifies the space.
    pub cycle_mults: Vec<u32>,
    /// Local pair counts keyed by Euler characteristic.
    pub dtpar: BTreeMap<i64, Rational>,
    /// Local primitive invariants keyed by the quotient classes beta/k.
    pub n1: BTreeMap<CurveClass, Rational>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ChowModel {
    geometry: Arc<Geometry>,
    class: CurveClass,
    strata: Vec<Stratum>,
}

impl ChowModel {
    pub fn new(
        geometry: &Arc<Geometry>,
        class: CurveClass,
        strata: Vec<Stratum>,
    ) -> Result<ChowModel> {
        geometry.check_class(&class)?;
        if class.is_zero() {
            return Err(Error::MalformedModel("model class must be positive".into()));
        }
        let omega = geometry.omega_degree(&class);
        if omega > geometry.truncation() {
            return Err(Error::OutOfTruncation {
                omega,
                bound: geometry.truncation(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for stratum in &strata {
            if !seen.insert(stratum.label.clone()) {
                return Err(Error::MalformedModel(format!(
                    "duplicate stratum label {:?}",
                    stratum.label
                )));
            }
            if stratum.cycle_mults.is_empty() || stratum.cycle_mults.contains(&0) {
                return Err(Error::MalformedModel(format!(
                    "stratum {:?} needs positive cycle multiplicities",
                    stratum.label
                )));
            }
        }
        Ok(ChowModel {
            geometry: Arc::clone(geometry),
            class,
            strata,
        })
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn class(&self) -> &CurveClass {
        &self.class
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// The global pair count at Euler characteristic n: the integral of the
    /// local counts over the cycle space.
    pub fn aggregate_local(&self, n: i64) -> Rational {
        self.strata.iter().fold(Rational::zero(), |acc, stratum| {
            let local = stratum
                .dtpar
                .get(&n)
                .cloned()
                .unwrap_or_else(Rational::zero);
            acc + local * rat_int(stratum.chi)
        })
    }
}

/// Per-stratum outcome of the local-to-global aggregation.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumRow {
    pub label: String,
    pub divisibility: u64,
    pub chi: i64,
    /// Local log coefficient at (n, beta).
    pub dt_hat: Rational,
    /// Signed local divisor sum (-1)^(beta.H - 1) (beta.H) nhat.
    pub cover_side: Rational,
    /// Whether this stratum satisfies the local relation on its own.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalGlobalReport {
    pub n: i64,
    pub class: CurveClass,
    pub rows: Vec<StratumRow>,
    pub global_dt_hat: Rational,
    pub global_cover_side: Rational,
    /// The aggregated relation: global_dt_hat == global_cover_side.
    pub global_ok: bool,
}

impl LocalGlobalReport {
    pub fn all_strata_consistent(&self) -> bool {
        self.rows.iter().all(|row| row.consistent)
    }

    pub fn tsv_rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                vec![
                    row.label.clone(),
                    row.divisibility.to_string(),
                    row.chi.to_string(),
                    row.dt_hat.to_string(),
                    row.cover_side.to_string(),
                    row.consistent.to_string(),
                ]
            })
            .collect();
        rows.push(vec![
            "GLOBAL".to_string(),
            String::new(),
            String::new(),
            self.global_dt_hat.to_string(),
            self.global_cover_side.to_string(),
            self.global_ok.to_string(),
        ]);
        rows
    }
}

/// A stratum's cycles live on a single ray: multiples of the primitive cycle
/// gamma/a, with degrees scaled down by the divisibility a.
fn local_ray_context(
    geometry: &Geometry,
    class: &CurveClass,
    slope: &Rational,
    divisibility: u64,
    label: &str,
) -> Result<SlopeContext> {
    let omega = geometry.omega_degree(class);
    let h = geometry.h_degree(class);
    if class.try_div(divisibility).is_none() {
        return Err(Error::MalformedModel(format!(
            "stratum {label:?}: divisibility {divisibility} does not divide class {class}"
        )));
    }
    let local = Geometry::new(
        vec![Generator {
            name: "ray".into(),
            omega: omega / divisibility,
            h: h / divisibility,
        }],
        omega,
    )?;
    Ok(SlopeContext::new(&local, slope.clone()))
}

fn stratum_dt_hat(
    ctx: &SlopeContext,
    stratum: &Stratum,
    n: i64,
    divisibility: u64,
) -> Result<Rational> {
    // The stratum's pair counts are the series coefficients of its local
    // generating series 1 + sum dtpar[n'] q^n' t^m.
    let mut series = ConeSeries::one(ctx.geometry());
    for (&local_n, value) in &stratum.dtpar {
        // The entry sits at the m-th multiple of the primitive cycle, with
        // local_n = m n / a forced by the slope.
        let numerator = local_n
            .checked_mul(divisibility as i64)
            .ok_or_else(|| Error::MalformedModel("overflow in local key".into()))?;
        if n == 0 || numerator % n != 0 {
            return Err(Error::MalformedModel(format!(
                "stratum {:?}: local Euler characteristic {local_n} is off the slope ray",
                stratum.label
            )));
        }
        let m = numerator / n;
        if m < 1 || m as u64 > divisibility {
            return Err(Error::MalformedModel(format!(
                "stratum {:?}: local Euler characteristic {local_n} is off the slope ray",
                stratum.label
            )));
        }
        series = series.add(&ConeSeries::monomial(
            ctx.geometry(),
            local_n,
            CurveClass::new(vec![m as u32]),
            value.clone(),
        )?)?;
    }
    dt_hat(ctx, &series, n, &CurveClass::new(vec![divisibility as u32]))
}

fn stratum_n_hat(stratum: &Stratum, class: &CurveClass, divisibility: u64) -> Rational {
    let mut acc = Rational::zero();
    for k in divisors(divisibility) {
        if let Some(quotient) = class.try_div(k) {
            if let Some(value) = stratum.n1.get(&quotient) {
                acc += value / rat_int((k * k) as i64);
            }
        }
    }
    acc
}

/// Integrates the local log coefficients and the local divisor sums over the
/// strata and checks the signed relation between the globals.
///
/// The divisor-sum side is aggregated in regrouped order: for each k, the
/// primitive values at beta/k are integrated over the strata whose
/// divisibility k divides, then weighted by 1/k^2.
pub fn local_to_global_check(model: &ChowModel, slope: &Rational) -> Result<LocalGlobalReport> {
    let geometry = model.geometry();
    let omega = geometry.omega_degree(&model.class);
    let n = as_integer(&(slope.clone() * rat_int(omega as i64))).ok_or_else(|| {
        Error::InadmissibleKey(format!(
            "slope {slope} gives no integer Euler characteristic at degree {omega}"
        ))
    })?;
    if n == 0 {
        return Err(Error::MalformedModel(
            "local tables are keyed by Euler characteristic, which degenerates at slope 0".into(),
        ));
    }
    let h = geometry.h_degree(&model.class);
    let sign_h = neg_one_pow(h as i64 - 1) * rat_int(h as i64);

    let mut rows = Vec::new();
    let mut global_dt_hat = Rational::zero();
    for stratum in model.strata() {
        let divisibility = n
            .unsigned_abs()
            .gcd(&CurveClass::new(stratum.cycle_mults.clone()).divisibility());
        let ctx = local_ray_context(geometry, &model.class, slope, divisibility, &stratum.label)?;
        let dt_hat = stratum_dt_hat(&ctx, stratum, n, divisibility)?;
        let n_hat = stratum_n_hat(stratum, &model.class, divisibility);
        let cover_side = &sign_h * &n_hat;
        let consistent = dt_hat == cover_side;
        global_dt_hat += &dt_hat * rat_int(stratum.chi);
        rows.push(StratumRow {
            label: stratum.label.clone(),
            divisibility,
            chi: stratum.chi,
            dt_hat,
            cover_side,
            consistent,
        });
    }

    // Regrouped divisor-sum integral: sum over k of 1/k^2 times the integral
    // of the primitive values at beta/k over strata with k | divisibility.
    let e = crate::geometry::pair_divisibility(n, &model.class);
    let mut global_n_hat = Rational::zero();
    for k in divisors(e) {
        let Some(quotient) = model.class.try_div(k) else {
            continue;
        };
        let mut integral = Rational::zero();
        for (row, stratum) in rows.iter().zip(model.strata()) {
            if row.divisibility % k != 0 {
                continue;
            }
            if let Some(value) = stratum.n1.get(&quotient) {
                integral += value * rat_int(stratum.chi);
            }
        }
        global_n_hat += integral / rat_int((k * k) as i64);
    }
    let global_cover_side = &sign_h * &global_n_hat;
    let global_ok = global_dt_hat == global_cover_side;

    Ok(LocalGlobalReport {
        n,
        class: model.class().clone(),
        rows,
        global_dt_hat,
        global_cover_side,
        global_ok,
    })
}
