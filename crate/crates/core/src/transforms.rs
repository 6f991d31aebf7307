//! Wall-crossing transforms between generalized Donaldson-Thomas invariants
//! and parabolic stable-pair series.
//!
//! The forward transform sends a slope-fibered table {N_{n,beta}} to the
//! series
//!
//! ```text
//!   prod exp((-1)^(beta.H - 1) N_{n,beta} q^n t^beta)^(beta.H)
//! ```
//!
//! over admissible (n, beta). Its logarithm is linear in the table, which
//! makes the transform exactly invertible coefficient by coefficient. The
//! multiple-cover transform extends primitive (n = 1) data by the divisor sum
//! N_{n,beta} = sum_{k | (n,beta)} N_{1,beta/k} / k^2, and the equivalence
//! checker compares, key by key, the log coefficients of the forward series
//! against the signed divisor sums, which is exactly the coefficient-wise
//! content of the product-expansion identity.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{divisors, pair_divisibility, CurveClass};
use crate::invariants::{InvariantTable, SlopeContext};
use crate::rational::{neg_one_pow, rat_int, Rational};
use crate::series::ConeSeries;

fn sign_for(h_degree: u64) -> Rational {
    // (-1)^(beta.H - 1)
    neg_one_pow(h_degree as i64 - 1)
}

/// Forward transform: the truncated product of exponentials over the table.
/// Every key must be admissible for the context.
pub fn dt_par_from_n(ctx: &SlopeContext, table: &InvariantTable) -> Result<ConeSeries<Rational>> {
    if *ctx.geometry() != *table.geometry() {
        return Err(Error::GeometryMismatch);
    }
    let geom = ctx.geometry();
    let mut weighted = ConeSeries::zero(geom);
    for (key, value) in table.iter() {
        if !ctx.is_admissible(key.n, &key.class) {
            return Err(Error::InadmissibleKey(format!(
                "({}, {})",
                key.n, key.class
            )));
        }
        let h = geom.h_degree(&key.class);
        // exp(s v q^n t^b)^h collapses to a single commuting exponential
        // with weight h s v.
        let c = sign_for(h) * rat_int(h as i64) * value;
        weighted = weighted.add(&ConeSeries::monomial(geom, key.n, key.class.clone(), c)?)?;
    }
    weighted.exp()
}

/// Inverse transform: reads the table off the logarithm of the series.
pub fn n_from_dt_par(ctx: &SlopeContext, series: &ConeSeries<Rational>) -> Result<InvariantTable> {
    if *ctx.geometry() != *series.geometry() {
        return Err(Error::GeometryMismatch);
    }
    for (key, _) in series.terms() {
        if key.class.is_zero() {
            continue;
        }
        if !ctx.is_admissible(key.n, &key.class) {
            return Err(Error::InadmissibleKey(format!(
                "({}, {})",
                key.n, key.class
            )));
        }
    }
    let logarithm = series.log()?;
    let mut table = InvariantTable::new(ctx.geometry());
    for (key, coeff) in logarithm.terms() {
        let h = ctx.geometry().h_degree(&key.class);
        let value = sign_for(h) * coeff / rat_int(h as i64);
        table.insert(key.n, key.class.clone(), value)?;
    }
    Ok(table)
}

fn require_primitive(table: &InvariantTable) -> Result<()> {
    for (key, _) in table.iter() {
        if key.n != 1 {
            return Err(Error::BadPrimitiveTable(format!(
                "({}, {})",
                key.n, key.class
            )));
        }
    }
    Ok(())
}

/// The divisor sum sum_{k | (n, beta)} N_{1, beta/k} / k^2 read from a
/// primitive table.
pub fn n_hat(
    ctx: &SlopeContext,
    primitive: &InvariantTable,
    n: i64,
    class: &CurveClass,
) -> Result<Rational> {
    require_primitive(primitive)?;
    ctx.geometry().check_class(class)?;
    let omega = ctx.geometry().omega_degree(class);
    if omega > ctx.geometry().truncation() {
        return Err(Error::OutOfTruncation {
            omega,
            bound: ctx.geometry().truncation(),
        });
    }
    let mut acc = Rational::zero();
    for k in divisors(pair_divisibility(n, class)) {
        if let Some(quotient) = class.try_div(k) {
            let value = primitive.get(1, &quotient);
            if !value.is_zero() {
                acc += value / rat_int((k * k) as i64);
            }
        }
    }
    Ok(acc)
}

/// Extends primitive data to every admissible key by the multiple-cover sum.
pub fn multiple_cover_extend(
    ctx: &SlopeContext,
    primitive: &InvariantTable,
) -> Result<InvariantTable> {
    require_primitive(primitive)?;
    let mut table = InvariantTable::new(ctx.geometry());
    for (n, class) in ctx.admissible_keys() {
        let value = n_hat(ctx, primitive, n, &class)?;
        table.insert(n, class, value)?;
    }
    Ok(table)
}

/// The product side of the equivalence: over all admissible (n, beta),
/// (1 - (-1)^(beta.H) q^n t^beta)^((beta.H) N_{1,beta}), with absent
/// primitive entries contributing trivial factors.
pub fn gv_product_side(
    ctx: &SlopeContext,
    primitive: &InvariantTable,
) -> Result<ConeSeries<Rational>> {
    require_primitive(primitive)?;
    let geom = ctx.geometry();
    let mut acc = ConeSeries::one(geom);
    for (n, class) in ctx.admissible_keys() {
        let value = primitive.get(1, &class);
        if value.is_zero() {
            continue;
        }
        let h = geom.h_degree(&class);
        let exponent = rat_int(h as i64) * value;
        // 1 - (-1)^h q^n t^b
        let base = ConeSeries::one(geom).add(&ConeSeries::monomial(
            geom,
            n,
            class.clone(),
            sign_for(h),
        )?)?;
        acc = acc.mul(&base.pow(&exponent)?)?;
    }
    Ok(acc)
}

/// Log coefficient of the series at (n, beta).
pub fn dt_hat(
    ctx: &SlopeContext,
    series: &ConeSeries<Rational>,
    n: i64,
    class: &CurveClass,
) -> Result<Rational> {
    if *ctx.geometry() != *series.geometry() {
        return Err(Error::GeometryMismatch);
    }
    series.log()?.coefficient(n, class)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultipleCoverRow {
    pub n: i64,
    pub class: CurveClass,
    /// Log coefficient of the forward series at (n, beta).
    pub log_coeff: Rational,
    /// (-1)^(beta.H - 1) (beta.H) times the divisor sum from the n = 1 slice.
    pub cover_side: Rational,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultipleCoverReport {
    pub rows: Vec<MultipleCoverRow>,
}

impl MultipleCoverReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|row| row.ok)
    }

    pub fn tsv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                vec![
                    row.n.to_string(),
                    row.class.to_string(),
                    row.log_coeff.to_string(),
                    row.cover_side.to_string(),
                    row.ok.to_string(),
                ]
            })
            .collect()
    }
}

/// Per-key multiple-cover check. The table may combine slope-fibered entries
/// with the primitive (n = 1) entries the divisor sums read from; only the
/// slope-admissible part feeds the series side.
pub fn check_multiple_cover(
    ctx: &SlopeContext,
    table: &InvariantTable,
) -> Result<MultipleCoverReport> {
    let slope_part = table.slice_slope(ctx);
    let primitive = table.slice_n(1);
    let logarithm = dt_par_from_n(ctx, &slope_part)?.log()?;
    let mut rows = Vec::new();
    for (n, class) in ctx.admissible_keys() {
        let log_coeff = logarithm.coefficient(n, &class)?;
        let h = ctx.geometry().h_degree(&class);
        let cover_side = sign_for(h) * rat_int(h as i64) * n_hat(ctx, &primitive, n, &class)?;
        let ok = log_coeff == cover_side;
        rows.push(MultipleCoverRow {
            n,
            class,
            log_coeff,
            cover_side,
            ok,
        });
    }
    Ok(MultipleCoverReport { rows })
}
