//! Univariate polynomials and Laurent polynomials over the exact rationals.
//!
//! `Poly` is dense with ascending coefficients and no trailing zeros; it backs
//! the rational function field. `LaurentPoly` is a sparse map keyed by signed
//! exponents, suited to series whose q-support straddles q^0 with large gaps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, f: &Rational) -> Poly {
        if f.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroDenominator)?;
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = Poly::monomial(rem.coeff(rd) / &lead, rd - dd);
            quot = quot.add(&factor);
            rem = rem.sub(&factor.mul(divisor));
        }
        Ok((quot, rem))
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => self.scale(&(Rational::one() / lead)),
        }
    }

    /// Is this exactly x^k for some k (including 1 = x^0)?
    pub fn power_of_var(&self) -> Option<usize> {
        let deg = self.degree()?;
        for k in 0..deg {
            if !self.coeff(k).is_zero() {
                return None;
            }
        }
        (self.coeff(deg) == Rational::one()).then_some(deg)
    }

    /// x^bound * p(1/x) with bound >= deg p: the coefficient reversal used by
    /// the q <-> 1/q involution.
    pub fn reversed(&self, bound: usize) -> Poly {
        let mut coeffs = vec![Rational::zero(); bound + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[bound - k] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if var_part.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&var_part);
            } else {
                out.push_str(&format!("{abs}*{var_part}"));
            }
        }
        out
    }
}

/// Clears denominators into a primitive integer coefficient vector.
fn to_primitive_integers(p: &Poly) -> Vec<BigInt> {
    let mut common = BigInt::one();
    for c in p.coeffs() {
        common = common.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&common / c.denom()))
        .collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(num_traits::Zero::is_zero) {
        v.pop();
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if content > BigInt::one() {
        for c in &mut v {
            *c = &*c / &content;
        }
    }
    v
}

/// Pseudo-remainder of integer polynomials, content-normalized after every
/// elimination pass to keep coefficients small.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lead_r = r[dr].clone();
        let lead_b = b[db].clone();
        for c in r.iter_mut() {
            *c = &*c * &lead_b;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let delta = &lead_r * bc;
            r[shift + i] -= delta;
        }
        r = primitive_part(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Monic greatest common divisor over the rationals.
///
/// `gcd(a, 0) = monic(a)` and `gcd(0, 0) = 0`. Computed exactly through the
/// primitive pseudo-remainder sequence over the integers, which keeps
/// intermediate coefficients small where the rational Euclidean sequence
/// blows up.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let mut x = to_primitive_integers(a);
    let mut y = to_primitive_integers(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = r;
    }
    Poly::from_coeffs(x.into_iter().map(Rational::from_integer).collect()).monic()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("q"))
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Poly> {
        parse_poly(text)
    }
}

/// Parses the rendered polynomial grammar: terms like `3`, `q`, `-q^2`,
/// `1/2*q^3`, joined by `+`/`-`. Any single alphabetic identifier serves as
/// the variable.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut seen_term_char = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' if seen_term_char => {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
                seen_term_char = false;
            }
            '-' => {
                negative = !negative;
            }
            '+' => {}
            c if c.is_whitespace() => {}
            c => {
                current.push(c);
                seen_term_char = true;
            }
        }
    }
    terms.push((negative, current));

    let mut acc = Poly::zero();
    let mut var: Option<String> = None;
    for (negative, term) in terms {
        if term.is_empty() {
            return Err(Error::Parse(format!("bad polynomial: {text:?}")));
        }
        let (coeff_str, var_str) = match term.find(|c: char| c.is_alphabetic()) {
            Some(pos) => {
                let (head, tail) = term.split_at(pos);
                (head.trim_end_matches('*'), tail)
            }
            None => (term.as_str(), ""),
        };
        let mut coeff = if coeff_str.is_empty() {
            Rational::one()
        } else {
            parse_rational(coeff_str)?
        };
        if negative {
            coeff = -coeff;
        }
        let exponent = if var_str.is_empty() {
            0usize
        } else {
            let (name, exp) = match var_str.split_once('^') {
                Some((name, exp)) => {
                    let exp: usize = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
                    (name, exp)
                }
                None => (var_str, 1),
            };
            if !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("bad variable in {term:?}")));
            }
            match &var {
                Some(known) if known != name => {
                    return Err(Error::Parse(format!("mixed variables in {text:?}")));
                }
                _ => var = Some(name.to_string()),
            }
            exp
        };
        acc = acc.add(&Poly::monomial(coeff, exponent));
    }
    Ok(acc)
}

/// Sparse Laurent polynomial in q with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, Rational::one())
    }

    pub fn monomial(exponent: i64, c: Rational) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_poly(p: &Poly) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.insert(k as i64, c.clone());
            }
        }
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: i64) -> Rational {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            let entry = terms.entry(*k).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, f: &Rational) -> LaurentPoly {
        if f.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c * f)).collect(),
        }
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                let entry = acc.entry(i + j).or_insert_with(Rational::zero);
                *entry += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in &self.terms {
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let var_part = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if var_part.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&var_part);
            } else {
                out.push_str(&format!("{abs}*{var_part}"));
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn gcd_common_factor() {
        // gcd(q^2 - 1, q - 1) = q - 1
        let g = poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let g = poly_gcd(&p(&[2, 2]), &Poly::zero());
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn gcd_euclid() {
        // gcd((1+q)^2 q, (1+q) q^3) = q (1+q)
        let a = p(&[1, 1]).mul(&p(&[1, 1])).mul(&p(&[0, 1]));
        let b = p(&[1, 1]).mul(&p(&[0, 0, 0, 1]));
        assert_eq!(poly_gcd(&a, &b), p(&[0, 1, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, 0, -2, 5]);
        let b = p(&[1, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn render_and_parse_round_trip() {
        let samples = [
            p(&[0]),
            p(&[1, 1]),
            p(&[-1, 0, 3]),
            Poly::monomial(rat(1, 2), 3),
        ];
        for poly in samples {
            let text = poly.to_string();
            assert_eq!(text.parse::<Poly>().unwrap(), poly, "{text}");
        }
        assert_eq!("2*l + 1".parse::<Poly>().unwrap(), p(&[1, 2]));
        assert_eq!("-q^2 + q".parse::<Poly>().unwrap(), p(&[0, 1, -1]));
    }

    #[test]
    fn laurent_convolution() {
        let a = LaurentPoly::monomial(-1, rat_int(2)).add(&LaurentPoly::one());
        let b = LaurentPoly::monomial(1, rat_int(3));
        let ab = a.mul(&b);
        assert_eq!(ab.coeff(0), rat_int(6));
        assert_eq!(ab.coeff(1), rat_int(3));
    }

    #[test]
    fn power_of_var_detection() {
        assert_eq!(p(&[0, 0, 1]).power_of_var(), Some(2));
        assert_eq!(p(&[1]).power_of_var(), Some(0));
        assert_eq!(p(&[0, 2]).power_of_var(), None);
        assert_eq!(p(&[1, 1]).power_of_var(), None);
    }
}
