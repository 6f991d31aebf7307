//! The effective cone of curve classes and its degree pairings.
//!
//! A `Geometry` fixes an ordered list of curve-class generators, each with a
//! polarization degree (which drives truncation) and a marked-divisor degree
//! (which drives signs and exponents), plus the truncation bound d. Effective
//! classes are non-negative integer vectors over the generators.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    /// Pairing with the polarization; must be >= 1.
    pub omega: u64,
    /// Pairing with the marked divisor; must be >= 1.
    pub h: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Geometry {
    generators: Vec<Generator>,
    truncation: u64,
}

/// An effective class: one non-negative multiplicity per generator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct CurveClass(Vec<u32>);

impl Geometry {
    pub fn new(generators: Vec<Generator>, truncation: u64) -> Result<Arc<Geometry>> {
        if generators.is_empty() {
            return Err(Error::Invalid(
                "geometry needs at least one generator".into(),
            ));
        }
        for g in &generators {
            if g.omega == 0 || g.h == 0 {
                return Err(Error::Invalid(format!(
                    "generator {} needs positive degrees",
                    g.name
                )));
            }
        }
        let min_omega = generators.iter().map(|g| g.omega).min().expect("nonempty");
        if truncation < min_omega {
            return Err(Error::Invalid(format!(
                "truncation {truncation} is below the minimal generator degree {min_omega}"
            )));
        }
        Ok(Arc::new(Geometry {
            generators,
            truncation,
        }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn min_omega(&self) -> u64 {
        self.generators
            .iter()
            .map(|g| g.omega)
            .min()
            .expect("nonempty")
    }

    /// Largest k with k * min_omega <= d: positive-degree elements are
    /// nilpotent of this order in the truncated ring.
    pub fn nilpotency_order(&self) -> u64 {
        self.truncation / self.min_omega()
    }

    pub fn check_class(&self, class: &CurveClass) -> Result<()> {
        if class.0.len() != self.arity() {
            return Err(Error::Invalid(format!(
                "class {class} has {} entries, geometry has {} generators",
                class.0.len(),
                self.arity()
            )));
        }
        Ok(())
    }

    pub fn omega_degree(&self, class: &CurveClass) -> u64 {
        debug_assert_eq!(class.0.len(), self.arity());
        class
            .0
            .iter()
            .zip(&self.generators)
            .map(|(m, g)| u64::from(*m) * g.omega)
            .sum()
    }

    pub fn h_degree(&self, class: &CurveClass) -> u64 {
        debug_assert_eq!(class.0.len(), self.arity());
        class
            .0
            .iter()
            .zip(&self.generators)
            .map(|(m, g)| u64::from(*m) * g.h)
            .sum()
    }

    pub fn zero_class(&self) -> CurveClass {
        CurveClass(vec![0; self.arity()])
    }

    /// All classes with 0 < omega-degree <= d, in canonical order
    /// (ascending omega-degree, then lexicographic).
    pub fn positive_classes(&self) -> Vec<CurveClass> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.arity()];
        self.enumerate_from(0, 0, &mut current, &mut out);
        out.sort_by_key(|c| (self.omega_degree(c), c.clone()));
        out
    }

    fn enumerate_from(
        &self,
        index: usize,
        used: u64,
        current: &mut Vec<u32>,
        out: &mut Vec<CurveClass>,
    ) {
        if index == self.arity() {
            if used > 0 {
                out.push(CurveClass(current.clone()));
            }
            return;
        }
        let step = self.generators[index].omega;
        let max_mult = (self.truncation - used) / step;
        for m in 0..=max_mult {
            current[index] = u32::try_from(m).expect("multiplicity fits u32");
            self.enumerate_from(index + 1, used + m * step, current, out);
        }
        current[index] = 0;
    }
}

impl CurveClass {
    pub fn new(mults: Vec<u32>) -> CurveClass {
        CurveClass(mults)
    }

    pub fn mults(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn add(&self, rhs: &CurveClass) -> CurveClass {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        CurveClass(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.checked_add(*b).expect("class multiplicity fits u32"))
                .collect(),
        )
    }

    pub fn scaled(&self, k: u32) -> CurveClass {
        CurveClass(
            self.0
                .iter()
                .map(|m| m.checked_mul(k).expect("class multiplicity fits u32"))
                .collect(),
        )
    }

    /// Componentwise quotient, when k divides every multiplicity.
    pub fn try_div(&self, k: u64) -> Option<CurveClass> {
        if k == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for &m in &self.0 {
            let m = u64::from(m);
            if m % k != 0 {
                return None;
            }
            out.push(u32::try_from(m / k).expect("quotient fits"));
        }
        Some(CurveClass(out))
    }

    /// gcd of the multiplicities; zero for the zero class.
    pub fn divisibility(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &m| acc.gcd(&u64::from(m)))
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Divisibility of a pair: gcd of |n| and every multiplicity, with
/// gcd(0, x) = x.
pub fn pair_divisibility(n: i64, class: &CurveClass) -> u64 {
    n.unsigned_abs().gcd(&class.divisibility())
}

/// Divisors of x in ascending order; x must be positive.
pub fn divisors(x: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= x {
        if x.is_multiple_of(k) {
            small.push(k);
            if k * k != x {
                large.push(x / k);
            }
        }
        k += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: &str, omega: u64, h: u64) -> Generator {
        Generator {
            name: name.into(),
            omega,
            h,
        }
    }

    #[test]
    fn validation() {
        assert!(Geometry::new(vec![], 3).is_err());
        assert!(Geometry::new(vec![gen("C", 0, 1)], 3).is_err());
        assert!(Geometry::new(vec![gen("C", 2, 1)], 1).is_err());
        assert!(Geometry::new(vec![gen("C", 1, 1)], 1).is_ok());
    }

    #[test]
    fn degrees() {
        let geom = Geometry::new(vec![gen("A", 1, 2), gen("B", 2, 1)], 4).unwrap();
        let c = CurveClass::new(vec![3, 1]);
        assert_eq!(geom.omega_degree(&c), 5);
        assert_eq!(geom.h_degree(&c), 7);
    }

    #[test]
    fn class_enumeration_canonical() {
        let geom = Geometry::new(vec![gen("A", 1, 1), gen("B", 2, 1)], 3).unwrap();
        let classes = geom.positive_classes();
        let expect: Vec<CurveClass> = [vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![3, 0]]
            .into_iter()
            .map(CurveClass::new)
            .collect();
        assert_eq!(classes, expect);
    }

    #[test]
    fn divisibility_rules() {
        let c = CurveClass::new(vec![4, 6]);
        assert_eq!(c.divisibility(), 2);
        assert_eq!(pair_divisibility(0, &c), 2);
        assert_eq!(pair_divisibility(3, &c), 1);
        assert_eq!(pair_divisibility(-4, &c), 2);
        assert_eq!(c.try_div(2), Some(CurveClass::new(vec![2, 3])));
        assert_eq!(c.try_div(4), None);
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
