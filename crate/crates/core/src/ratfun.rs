//! The rational function field in q.
//!
//! Values are kept in canonical form: coprime numerator and denominator with
//! monic denominator, so equality is structural. The field carries the
//! q <-> 1/q involution used by the stable-pair rationality checks.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, poly_gcd, LaurentPoly, Poly};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Canonical form of `num/den`.
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.degree() > Some(0) {
            (
                num.div_rem(&g).expect("gcd divides").0,
                den.div_rem(&g).expect("gcd divides").0,
            )
        } else {
            (num, den)
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = Rational::one() / lead;
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> RatFun {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// q^n for signed n.
    pub fn q_power(n: i64) -> RatFun {
        if n >= 0 {
            RatFun::from_poly(Poly::monomial(Rational::one(), n as usize))
        } else {
            RatFun {
                num: Poly::one(),
                den: Poly::monomial(Rational::one(), (-n) as usize),
            }
        }
    }

    /// Clears negative exponents against a q-power denominator.
    pub fn from_laurent(p: &LaurentPoly) -> RatFun {
        let Some(min) = p.min_exponent() else {
            return RatFun::zero();
        };
        let shift = min.min(0);
        let mut coeffs = Vec::new();
        for (k, c) in p.terms() {
            let idx = (k - shift) as usize;
            if coeffs.len() <= idx {
                coeffs.resize(idx + 1, Rational::zero());
            }
            coeffs[idx] = c.clone();
        }
        let num = Poly::from_coeffs(coeffs);
        let den = Poly::monomial(Rational::one(), (-shift) as usize);
        Self::canonical(num, den)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        // Work over the least common denominator so the closing gcd sees the
        // smallest possible operands.
        let g = poly_gcd(&self.den, &rhs.den);
        let (left, right) = if g.degree() > Some(0) {
            (
                rhs.den.div_rem(&g).expect("gcd divides").0,
                self.den.div_rem(&g).expect("gcd divides").0,
            )
        } else {
            (rhs.den.clone(), self.den.clone())
        };
        Self::canonical(
            self.num.mul(&left).add(&rhs.num.mul(&right)),
            self.den.mul(&left),
        )
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        // Cross-cancel first: the product of the reduced pairs is already in
        // lowest terms when both inputs are.
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let reduce = |p: &Poly, g: &Poly| {
            if g.degree() > Some(0) {
                p.div_rem(g).expect("gcd divides").0
            } else {
                p.clone()
            }
        };
        let num = reduce(&self.num, &g1).mul(&reduce(&rhs.num, &g2));
        let den = reduce(&self.den, &g2).mul(&reduce(&rhs.den, &g1));
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = Rational::one() / lead;
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn scale(&self, f: &Rational) -> RatFun {
        if f.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(f),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// The canonical form of f(1/q): substitute q -> 1/q and clear powers of q.
    pub fn q_inverse(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let bound = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        Self::canonical(self.num.reversed(bound), self.den.reversed(bound))
    }

    /// Finite q-support means the denominator is a pure power of q.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.power_of_var().is_some()
    }

    /// First `order + 1` coefficients of the power-series expansion at q = 0.
    /// Fails when the denominator vanishes at q = 0.
    pub fn power_series(&self, order: usize) -> Result<Vec<Rational>> {
        let c0 = self.den.coeff(0);
        if c0.is_zero() {
            return Err(Error::Invalid(
                "no power series: denominator vanishes at q = 0".into(),
            ));
        }
        let mut inv = Vec::with_capacity(order + 1);
        inv.push(Rational::one() / &c0);
        for k in 1..=order {
            let mut s = Rational::zero();
            for i in 1..=k {
                s += self.den.coeff(i) * &inv[k - i];
            }
            inv.push(-s / &c0);
        }
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut s = Rational::zero();
            for i in 0..=k {
                s += self.num.coeff(i) * &inv[k - i];
            }
            out.push(s);
        }
        Ok(out)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl FromStr for RatFun {
    type Err = Error;

    fn from_str(text: &str) -> Result<RatFun> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix('(') {
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parens: {text:?}")))?;
            let num = parse_poly(&rest[..close])?;
            let tail = rest[close + 1..].trim();
            if tail.is_empty() {
                return RatFun::new(num, Poly::one());
            }
            let tail = tail
                .strip_prefix('/')
                .ok_or_else(|| Error::Parse(format!("expected '/': {text:?}")))?
                .trim();
            let den = tail
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected '(den)': {text:?}")))?;
            RatFun::new(num, parse_poly(den)?)
        } else {
            Ok(RatFun::from_poly(parse_poly(text)?))
        }
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
    fn cancellation() {
        // 2q^2 / 2q = q
        let f = RatFun::new(p(&[0, 0, 2]), p(&[0, 2])).unwrap();
        assert_eq!(f, RatFun::from_poly(p(&[0, 1])));
        // (q^2 - 1) / (q + 1) = q - 1
        let g = RatFun::new(p(&[-1, 0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(g, RatFun::from_poly(p(&[-1, 1])));
    }

    #[test]
    fn coprime_kept() {
        // q / (q + 1)^2 already canonical
        let f = RatFun::new(p(&[0, 1]), p(&[1, 2, 1])).unwrap();
        assert_eq!(f.num(), &p(&[0, 1]));
        assert_eq!(f.den(), &p(&[1, 2, 1]));
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(
            RatFun::new(p(&[1]), Poly::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn q_inverse_fixed_point() {
        let f = RatFun::new(p(&[0, 1]), p(&[1, 2, 1])).unwrap();
        assert_eq!(f.q_inverse(), f);
    }

    #[test]
    fn q_inverse_monomial_and_constant() {
        let q = RatFun::from_poly(p(&[0, 1]));
        assert_eq!(q.q_inverse(), RatFun::q_power(-1));
        let c = RatFun::constant(rat(7, 3));
        assert_eq!(c.q_inverse(), c);
    }

    #[test]
    fn q_inverse_involution() {
        let samples = [
            RatFun::new(p(&[1, 2]), p(&[3, 0, 1])).unwrap(),
            RatFun::new(p(&[0, 0, 5]), p(&[1, 1])).unwrap(),
            RatFun::q_power(-3),
            RatFun::zero(),
        ];
        for f in samples {
            assert_eq!(f.q_inverse().q_inverse(), f);
        }
    }

    #[test]
    fn laurent_detection() {
        assert!(RatFun::q_power(-2).is_laurent_polynomial());
        assert!(RatFun::from_poly(p(&[1, 1])).is_laurent_polynomial());
        let f = RatFun::new(p(&[0, 1]), p(&[1, 2, 1])).unwrap();
        assert!(!f.is_laurent_polynomial());
    }

    #[test]
    fn from_laurent_clears_negatives() {
        let l = LaurentPoly::monomial(-2, rat_int(3)).add(&LaurentPoly::monomial(1, rat_int(1)));
        let f = RatFun::from_laurent(&l);
        // (3 + q^3) / q^2
        assert_eq!(f.num(), &p(&[3, 0, 0, 1]));
        assert_eq!(f.den(), &p(&[0, 0, 1]));
    }

    #[test]
    fn power_series_expansion() {
        // q / (1+q)^2 = q - 2q^2 + 3q^3 - 4q^4 + ...
        let f = RatFun::new(p(&[0, 1]), p(&[1, 2, 1])).unwrap();
        let s = f.power_series(4).unwrap();
        assert_eq!(
            s,
            vec![rat_int(0), rat_int(1), rat_int(-2), rat_int(3), rat_int(-4)]
        );
    }

    #[test]
    fn display_parse_round_trip() {
        let samples = [
            RatFun::new(p(&[0, 1]), p(&[1, 2, 1])).unwrap(),
            RatFun::from_poly(p(&[-1, 0, 2])),
            RatFun::constant(rat(1, 2)),
            RatFun::q_power(-1),
        ];
        for f in samples {
            let text = f.to_string();
            assert_eq!(text.parse::<RatFun>().unwrap(), f, "{text}");
        }
    }
}
