//! Pluggable coefficient rings for the truncated cone series.
//!
//! A coefficient ring needs ring operations, equality, and scalar
//! multiplication by exact rationals. Three instances ship: plain rationals
//! (slope-fibered transforms keep the q-exponent in the series key), Laurent
//! polynomials in q, and the rational function field in q (stable-pair
//! rationality work, where the whole q-dependence lives in the coefficient).

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::LaurentPoly;
use crate::ratfun::RatFun;
use crate::rational::Rational;

pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, f: &Rational) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn neg(&self) -> Self {
        -self.clone()
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scale(&self, f: &Rational) -> Self {
        self * f
    }
}

impl Coeff for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }

    fn one() -> Self {
        LaurentPoly::one()
    }

    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        LaurentPoly::add(self, rhs)
    }

    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        LaurentPoly::mul(self, rhs)
    }

    fn scale(&self, f: &Rational) -> Self {
        LaurentPoly::scale(self, f)
    }
}

impl Coeff for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }

    fn one() -> Self {
        RatFun::one()
    }

    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        RatFun::add(self, rhs)
    }

    fn neg(&self) -> Self {
        RatFun::neg(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        RatFun::mul(self, rhs)
    }

    fn scale(&self, f: &Rational) -> Self {
        RatFun::scale(self, f)
    }
}
