//! Stable-pair series over the rational function field.
//!
//! Here the whole q-dependence of a series lives in its coefficients: a
//! `PtSeries` is a cone series with RatFun coefficients and q-exponent keys
//! fixed at zero, one rational function per class. `gv_expand` produces such
//! a series from integer genus data via the product form
//!
//! ```text
//!   prod_b [ prod_{j>=1} (1 - (-q)^j t^b)^(j n_0^b)
//!            prod_{g>=1} prod_{k=0}^{2g-2}
//!              (1 - (-q)^(g-1-k) t^b)^((-1)^(k+g) n_g^b C(2g-2,k)) ]
//! ```
//!
//! The genus-zero factor is an infinite product in j, but its logarithm has
//! closed-form t-coefficients: sum_{j>=1} j y^j = y/(1-y)^2 turns the
//! coefficient of t^(m b) into -n_0^b (-q)^m / (m (1 - (-q)^m)^2), a genuine
//! rational function that no finite j-truncation reaches. Genus >= 1 factors
//! are finite products and expand directly. The same resummation builds the
//! multiple-cover prefactor of the L-series factorization.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{divisors, CurveClass, Geometry};
use crate::invariants::InvariantTable;
use crate::poly::{LaurentPoly, Poly};
use crate::ratfun::RatFun;
use crate::rational::{neg_one_pow, rat_int, Rational};
use crate::series::ConeSeries;

/// Series with one rational function of q per effective class.
pub type PtSeries = ConeSeries<RatFun>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct GvKey {
    omega: u64,
    class: CurveClass,
    genus: u32,
}

/// Integer genus data n_g^beta keyed by (genus, class).
#[derive(Clone, PartialEq, Debug)]
pub struct GvTable {
    geometry: Arc<Geometry>,
    entries: BTreeMap<GvKey, i64>,
}

impl GvTable {
    pub fn new(geometry: &Arc<Geometry>) -> GvTable {
        GvTable {
            geometry: Arc::clone(geometry),
            entries: BTreeMap::new(),
        }
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn insert(&mut self, genus: u32, class: CurveClass, value: i64) -> Result<()> {
        self.geometry.check_class(&class)?;
        if class.is_zero() {
            return Err(Error::InadmissibleKey(format!("(g={genus}, {class})")));
        }
        let omega = self.geometry.omega_degree(&class);
        if omega > self.geometry.truncation() {
            return Err(Error::OutOfTruncation {
                omega,
                bound: self.geometry.truncation(),
            });
        }
        if value == 0 {
            return Ok(());
        }
        self.entries.insert(
            GvKey {
                omega,
                class,
                genus,
            },
            value,
        );
        Ok(())
    }

    pub fn from_entries<I>(geometry: &Arc<Geometry>, entries: I) -> Result<GvTable>
    where
        I: IntoIterator<Item = (u32, CurveClass, i64)>,
    {
        let mut table = GvTable::new(geometry);
        for (genus, class, value) in entries {
            table.insert(genus, class, value)?;
        }
        Ok(table)
    }

    pub fn get(&self, genus: u32, class: &CurveClass) -> i64 {
        let key = GvKey {
            omega: self.geometry.omega_degree(class),
            class: class.clone(),
            genus,
        };
        self.entries.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &CurveClass, i64)> {
        self.entries
            .iter()
            .map(|(key, value)| (key.genus, &key.class, *value))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Log coefficient of the genus-zero factor at the m-th multiple of a class:
/// -v (-q)^m / (m (1 - (-q)^m)^2).
fn genus_zero_log_coeff(value: i64, m: u64) -> RatFun {
    let m_usize = m as usize;
    let sign = neg_one_pow(m as i64);
    let num = Poly::monomial(-rat_int(value) * &sign / rat_int(m as i64), m_usize);
    // (1 - s q^m)^2 = 1 - 2 s q^m + q^(2m)
    let den = Poly::from_coeffs({
        let mut coeffs = vec![Rational::zero(); 2 * m_usize + 1];
        coeffs[0] = rat_int(1);
        coeffs[m_usize] = rat_int(-2) * sign;
        coeffs[2 * m_usize] = rat_int(1);
        coeffs
    });
    RatFun::new(num, den).expect("nonzero denominator")
}

/// Log coefficient of one genus >= 1 factor at the m-th multiple: a Laurent
/// polynomial -1/m sum_k (-1)^(k+g) v C(2g-2,k) (-q)^((g-1-k) m).
fn higher_genus_log_coeff(genus: u32, value: i64, m: u64) -> RatFun {
    let g = i64::from(genus);
    let mut acc = LaurentPoly::zero();
    for k in 0..=(2 * g - 2) {
        let exponent_weight = neg_one_pow(k + g)
            * rat_int(value)
            * Rational::from_integer(binomial((2 * g - 2) as u64, k as u64));
        let p = (g - 1 - k) * m as i64;
        let coeff = -exponent_weight * neg_one_pow(p) / rat_int(m as i64);
        acc = acc.add(&LaurentPoly::monomial(p, coeff));
    }
    RatFun::from_laurent(&acc)
}

/// Expands genus data into the stable-pair series over RatFun coefficients.
pub fn gv_expand(geometry: &Arc<Geometry>, gv: &GvTable) -> Result<PtSeries> {
    if **geometry != *gv.geometry {
        return Err(Error::GeometryMismatch);
    }
    let mut logarithm = PtSeries::zero(geometry);
    for (genus, class, value) in gv.iter() {
        let base_omega = geometry.omega_degree(class);
        let mut m = 1u64;
        while m * base_omega <= geometry.truncation() {
            let coeff = if genus == 0 {
                genus_zero_log_coeff(value, m)
            } else {
                higher_genus_log_coeff(genus, value, m)
            };
            let multiple = class.scaled(u32::try_from(m).expect("multiple fits"));
            logarithm = logarithm.add(&PtSeries::monomial(geometry, 0, multiple, coeff)?)?;
            m += 1;
        }
    }
    logarithm.exp()
}

/// The rational function attached to one class (zero if absent).
pub fn pt_beta(series: &PtSeries, class: &CurveClass) -> Result<RatFun> {
    series.coefficient(0, class)
}

/// Invariance under q <-> 1/q, decided in canonical form.
pub fn rationality_check(f: &RatFun) -> bool {
    f.q_inverse() == *f
}

/// Prefactor prod exp((-1)^(n-1) N_{n,beta} q^n t^beta)^n over the finitely
/// many table entries, with q^n embedded as a RatFun monomial.
pub fn rat_prefactor(geometry: &Arc<Geometry>, table: &InvariantTable) -> Result<PtSeries> {
    if *geometry != *table.geometry() {
        return Err(Error::GeometryMismatch);
    }
    let mut logarithm = PtSeries::zero(geometry);
    for (key, value) in table.iter() {
        if key.n <= 0 {
            return Err(Error::InadmissibleKey(format!(
                "({}, {}): prefactor needs n > 0",
                key.n, key.class
            )));
        }
        let coeff =
            RatFun::q_power(key.n).scale(&(neg_one_pow(key.n - 1) * rat_int(key.n) * value));
        logarithm = logarithm.add(&PtSeries::monomial(geometry, 0, key.class.clone(), coeff)?)?;
    }
    logarithm.exp()
}

/// Prefactor for a multiple-cover family generated by primitive data: the
/// full n-support per class is resummed in closed form, giving the log
/// coefficient -sum_{k | beta} N_{1,beta/k} (-q)^k / (k (1 - (-q)^k)^2).
pub fn multicover_prefactor(
    geometry: &Arc<Geometry>,
    primitive: &InvariantTable,
) -> Result<PtSeries> {
    if *geometry != *primitive.geometry() {
        return Err(Error::GeometryMismatch);
    }
    for (key, _) in primitive.iter() {
        if key.n != 1 {
            return Err(Error::BadPrimitiveTable(format!(
                "({}, {})",
                key.n, key.class
            )));
        }
    }
    let mut logarithm = PtSeries::zero(geometry);
    for class in geometry.positive_classes() {
        let mut coeff = RatFun::zero();
        for k in divisors(class.divisibility()) {
            let quotient = class.try_div(k).expect("divisor of all multiplicities");
            let value = primitive.get(1, &quotient);
            if value.is_zero() {
                continue;
            }
            let m = u32::try_from(k).expect("divisor fits");
            coeff = coeff.add(&genus_zero_log_coeff(1, u64::from(m)).scale(&value));
        }
        if !RatFun::is_zero(&coeff) {
            logarithm = logarithm.add(&PtSeries::monomial(geometry, 0, class, coeff)?)?;
        }
    }
    logarithm.exp()
}

/// Solves PT = prefactor * L for L, with the prefactor built from the finite
/// table.
pub fn l_series_solve(
    geometry: &Arc<Geometry>,
    pt: &PtSeries,
    table: &InvariantTable,
) -> Result<PtSeries> {
    if pt.constant_term() != RatFun::one() {
        return Err(Error::ConstantTermNotOne);
    }
    let prefactor = rat_prefactor(geometry, table)?;
    pt.mul(&prefactor.invert()?)
}

/// Solves PT = prefactor * L for L against the closed-form multiple-cover
/// prefactor generated by primitive data.
pub fn l_series_solve_multicover(
    geometry: &Arc<Geometry>,
    pt: &PtSeries,
    primitive: &InvariantTable,
) -> Result<PtSeries> {
    if pt.constant_term() != RatFun::one() {
        return Err(Error::ConstantTermNotOne);
    }
    let prefactor = multicover_prefactor(geometry, primitive)?;
    pt.mul(&prefactor.invert()?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryRow {
    pub class: CurveClass,
    pub fun: RatFun,
    /// f(q) = f(1/q) in canonical form.
    pub symmetric: bool,
    /// Denominator is a pure power of q, i.e. the q-support is finite.
    pub laurent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub rows: Vec<SymmetryRow>,
}

impl SymmetryReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|row| row.symmetric && row.laurent)
    }

    pub fn all_symmetric(&self) -> bool {
        self.rows.iter().all(|row| row.symmetric)
    }

    pub fn tsv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                vec![
                    row.class.to_string(),
                    row.fun.to_string(),
                    row.symmetric.to_string(),
                    row.laurent.to_string(),
                ]
            })
            .collect()
    }
}

/// Per-class symmetry and finite-support report; the constant term is skipped.
pub fn l_symmetry_report(series: &PtSeries) -> SymmetryReport {
    let rows = series
        .terms()
        .filter(|(key, _)| !key.class.is_zero())
        .map(|(key, fun)| SymmetryRow {
            class: key.class.clone(),
            fun: fun.clone(),
            symmetric: rationality_check(fun),
            laurent: fun.is_laurent_polynomial(),
        })
        .collect();
    SymmetryReport { rows }
}

/// Per-class q <-> 1/q report for a stable-pair series.
pub fn pt_rationality_report(series: &PtSeries) -> SymmetryReport {
    l_symmetry_report(series)
}
