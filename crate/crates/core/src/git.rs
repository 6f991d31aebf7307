//! Hilbert-Mumford weights and the stability sign test on abstract
//! filtration data.
//!
//! A one-parameter subgroup acting on a parametrized pair is encoded by the
//! dimensions it filters: subspace dimensions, degree-one Hilbert polynomials
//! in l, and marked-section dimensions. The weight is the exact rational
//! polynomial
//!
//! ```text
//!   1/dimV sum_k [ dimV (chi_{F<=k}(l) + dimA_{<=k})
//!                  - dimV_{<=k} (chi_F(l) + dimA) ]
//! ```
//!
//! and (semi)stability is the sign of the difference
//! dimV (chi_F'(l) + dimA') minus dimV' (chi_F(l) + dimA) for l >> 0,
//! decided by exact lexicographic comparison of coefficients, never by
//! sampling l.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::rat_int;

/// One filtration step: the dimensions at and below a weight level.
#[derive(Clone, PartialEq, Debug)]
pub struct FiltrationStep {
    pub dim_v: u32,
    pub chi_f: Poly,
    pub dim_a: u32,
}

/// A full one-parameter-subgroup datum: ordered steps plus the totals.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightData {
    pub dim_v: u32,
    pub steps: Vec<FiltrationStep>,
    pub chi_f: Poly,
    pub dim_a: u32,
}

/// (dimension, Hilbert polynomial, marked dimension) for a space or subspace.
#[derive(Clone, PartialEq, Debug)]
pub struct DimensionTriple {
    pub dim_v: u32,
    pub chi_f: Poly,
    pub dim_a: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let text = match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        };
        write!(f, "{text}")
    }
}

fn check_degree(p: &Poly, what: &str) -> Result<()> {
    if p.degree() > Some(1) {
        return Err(Error::MalformedFiltration(format!(
            "{what} must have degree at most one, got {p}"
        )));
    }
    Ok(())
}

/// The exact Hilbert-Mumford weight polynomial in l.
pub fn hm_weight(data: &WeightData) -> Result<Poly> {
    if data.dim_v == 0 {
        return Err(Error::MalformedFiltration("dim V must be positive".into()));
    }
    if data.steps.is_empty() {
        return Err(Error::MalformedFiltration(
            "filtration needs at least one step".into(),
        ));
    }
    check_degree(&data.chi_f, "total Hilbert polynomial")?;
    let mut prev_v = 0u32;
    let mut prev_a = 0u32;
    for step in &data.steps {
        check_degree(&step.chi_f, "step Hilbert polynomial")?;
        if step.dim_v < prev_v || step.dim_a < prev_a {
            return Err(Error::MalformedFiltration(
                "step dimensions must be weakly increasing".into(),
            ));
        }
        prev_v = step.dim_v;
        prev_a = step.dim_a;
    }
    let last = data.steps.last().expect("nonempty");
    if last.dim_v != data.dim_v || last.dim_a != data.dim_a || last.chi_f != data.chi_f {
        return Err(Error::MalformedFiltration(
            "final step must equal the totals".into(),
        ));
    }

    let dim_v = rat_int(i64::from(data.dim_v));
    let total = data
        .chi_f
        .add(&Poly::constant(rat_int(i64::from(data.dim_a))));
    let mut acc = Poly::zero();
    for step in &data.steps {
        let partial = step
            .chi_f
            .add(&Poly::constant(rat_int(i64::from(step.dim_a))))
            .scale(&dim_v);
        let counter = total.scale(&rat_int(i64::from(step.dim_v)));
        acc = acc.add(&partial.sub(&counter));
    }
    Ok(acc.scale(&(rat_int(1) / dim_v)))
}

/// Sign of a polynomial for l >> 0: the sign of its leading coefficient.
pub fn asymptotic_sign(p: &Poly) -> Sign {
    match p.leading() {
        None => Sign::Zero,
        Some(lead) if lead.is_positive() => Sign::Positive,
        _ => Sign::Negative,
    }
}

/// The (semi)stability test for a proper subspace datum: the asymptotic sign
/// of dimV (chi_F'(l) + dimA') - dimV' (chi_F(l) + dimA).
pub fn git_stability_test(total: &DimensionTriple, sub: &DimensionTriple) -> Result<Sign> {
    if sub.dim_v == 0 || sub.dim_v >= total.dim_v {
        return Err(Error::NotProperSubspace);
    }
    check_degree(&total.chi_f, "total Hilbert polynomial")?;
    check_degree(&sub.chi_f, "subspace Hilbert polynomial")?;
    let lhs = sub
        .chi_f
        .add(&Poly::constant(rat_int(i64::from(sub.dim_a))))
        .scale(&rat_int(i64::from(total.dim_v)));
    let rhs = total
        .chi_f
        .add(&Poly::constant(rat_int(i64::from(total.dim_a))))
        .scale(&rat_int(i64::from(sub.dim_v)));
    Ok(asymptotic_sign(&lhs.sub(&rhs)))
}
