//! Truncated series graded by the effective cone.
//!
//! A `ConeSeries` is a finite map (q-exponent n, class beta) -> coefficient,
//! with every key bounded by the truncation ideal: monomials whose class has
//! omega-degree above d are dropped by every operation. All positive-degree
//! elements are therefore nilpotent, which makes exp, log, rational powers and
//! inversion exact finite sums.
//!
//! Keys iterate in canonical order: ascending omega-degree, then class
//! lexicographic, then q-exponent.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::geometry::{CurveClass, Geometry};
use crate::rational::{rat_int, Rational};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SeriesKey {
    pub omega: u64,
    pub class: CurveClass,
    pub n: i64,
}

impl SeriesKey {
    pub(crate) fn new(geometry: &Geometry, n: i64, class: CurveClass) -> SeriesKey {
        SeriesKey {
            omega: geometry.omega_degree(&class),
            class,
            n,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct ConeSeries<C: Coeff> {
    geometry: Arc<Geometry>,
    terms: BTreeMap<SeriesKey, C>,
}

impl<C: Coeff> ConeSeries<C> {
    pub fn zero(geometry: &Arc<Geometry>) -> Self {
        ConeSeries {
            geometry: Arc::clone(geometry),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(geometry: &Arc<Geometry>) -> Self {
        let mut s = Self::zero(geometry);
        s.insert_term(0, geometry.zero_class(), C::one());
        s
    }

    /// A single monomial `c * q^n t^class`. The class must fit the geometry
    /// and lie inside the truncation bound.
    pub fn monomial(geometry: &Arc<Geometry>, n: i64, class: CurveClass, c: C) -> Result<Self> {
        geometry.check_class(&class)?;
        // The ring holds q^n t^beta with beta > 0 plus constants; a pure
        // q-power at the zero class would not be nilpotent below truncation.
        if class.is_zero() && n != 0 {
            return Err(Error::InadmissibleKey(format!("({n}, {class})")));
        }
        let omega = geometry.omega_degree(&class);
        if omega > geometry.truncation() {
            return Err(Error::OutOfTruncation {
                omega,
                bound: geometry.truncation(),
            });
        }
        let mut s = Self::zero(geometry);
        s.insert_term(n, class, c);
        Ok(s)
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeriesKey, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        let key = SeriesKey::new(&self.geometry, 0, self.geometry.zero_class());
        self.terms.get(&key).cloned().unwrap_or_else(C::zero)
    }

    /// The stored coefficient at (n, class), or zero. Errors if the class
    /// lies beyond the truncation bound, where nothing is known.
    pub fn coefficient(&self, n: i64, class: &CurveClass) -> Result<C> {
        self.geometry.check_class(class)?;
        let omega = self.geometry.omega_degree(class);
        if omega > self.geometry.truncation() {
            return Err(Error::OutOfTruncation {
                omega,
                bound: self.geometry.truncation(),
            });
        }
        let key = SeriesKey {
            omega,
            class: class.clone(),
            n,
        };
        Ok(self.terms.get(&key).cloned().unwrap_or_else(C::zero))
    }

    fn insert_term(&mut self, n: i64, class: CurveClass, c: C) {
        if c.is_zero() {
            return;
        }
        let key = SeriesKey::new(&self.geometry, n, class);
        if key.omega > self.geometry.truncation() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check_same_geometry(&self, rhs: &Self) -> Result<()> {
        if *self.geometry != *rhs.geometry {
            return Err(Error::GeometryMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_geometry(rhs)?;
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.insert_term(key.n, key.class.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        ConeSeries {
            geometry: Arc::clone(&self.geometry),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Rational) -> Self {
        let mut out = Self::zero(&self.geometry);
        for (key, c) in &self.terms {
            out.insert_term(key.n, key.class.clone(), c.scale(f));
        }
        out
    }

    pub fn scale_coeff(&self, f: &C) -> Self {
        let mut out = Self::zero(&self.geometry);
        for (key, c) in &self.terms {
            out.insert_term(key.n, key.class.clone(), c.mul(f));
        }
        out
    }

    /// Convolution product; monomials beyond the truncation bound are dropped.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_geometry(rhs)?;
        let bound = self.geometry.truncation();
        let mut out = Self::zero(&self.geometry);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                if ka.omega + kb.omega > bound {
                    continue;
                }
                out.insert_term(ka.n + kb.n, ka.class.add(&kb.class), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Exact exponential: requires constant term zero, so the Taylor sum
    /// terminates at the nilpotency order.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Self::one(&self.geometry);
        let mut term = Self::one(&self.geometry);
        for k in 1..=self.geometry.nilpotency_order() {
            term = term.mul(self)?.scale(&(rat_int(1) / rat_int(k as i64)));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Exact logarithm: requires constant term one.
    pub fn log(&self) -> Result<Self> {
        if self.constant_term() != C::one() {
            return Err(Error::ConstantTermNotOne);
        }
        let x = self.sub(&Self::one(&self.geometry))?;
        let mut acc = Self::zero(&self.geometry);
        let mut power = Self::one(&self.geometry);
        for l in 1..=self.geometry.nilpotency_order() {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            let mut f = rat_int(1) / rat_int(l as i64);
            if l % 2 == 0 {
                f = -f;
            }
            acc = acc.add(&power.scale(&f))?;
        }
        Ok(acc)
    }

    /// Rational power exp(e * log self); requires constant term one. Agrees
    /// with repeated multiplication for integer exponents.
    pub fn pow(&self, e: &Rational) -> Result<Self> {
        Ok(self
            .log()?
            .scale(e)
            .exp()
            .expect("log has zero constant term"))
    }

    /// Multiplicative inverse at the truncation: requires constant term one.
    pub fn invert(&self) -> Result<Self> {
        if self.constant_term() != C::one() {
            return Err(Error::ConstantTermNotOne);
        }
        let x = Self::one(&self.geometry).sub(self)?;
        let mut acc = Self::one(&self.geometry);
        let mut power = Self::one(&self.geometry);
        for _ in 1..=self.geometry.nilpotency_order() {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// One line per monomial: `n<TAB>class<TAB>coefficient`, canonical order.
    pub fn tsv_rows(&self) -> Vec<Vec<String>> {
        self.terms
            .iter()
            .map(|(key, c)| vec![key.n.to_string(), key.class.to_string(), c.to_string()])
            .collect()
    }

    /// Compact one-line rendering for messages and summaries.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(key, c)| {
                let mut factors = Vec::new();
                let coeff = c.to_string();
                if coeff != "1" || (key.n == 0 && key.class.is_zero()) {
                    if coeff.contains(' ') {
                        factors.push(format!("({coeff})"));
                    } else {
                        factors.push(coeff);
                    }
                }
                match key.n {
                    0 => {}
                    1 => factors.push("q".into()),
                    n => factors.push(format!("q^{n}")),
                }
                if !key.class.is_zero() {
                    factors.push(format!("t^({})", key.class));
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }

    /// Structured key/value form for machine consumption.
    pub fn to_doc(&self) -> serde_json::Value {
        let generators: Vec<serde_json::Value> = self
            .geometry
            .generators()
            .iter()
            .map(|g| {
                serde_json::json!({
                    "name": g.name,
                    "omega": g.omega,
                    "h": g.h,
                })
            })
            .collect();
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(key, c)| {
                serde_json::json!({
                    "n": key.n,
                    "beta": key.class.mults(),
                    "coeff": c.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "geometry": {
                "d": self.geometry.truncation(),
                "generators": generators,
            },
            "terms": terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Generator;
    use crate::rational::rat;

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

    fn qt(geom: &Arc<Geometry>, c: Rational) -> ConeSeries<Rational> {
        ConeSeries::monomial(geom, 1, CurveClass::new(vec![1]), c).unwrap()
    }

    #[test]
    fn mul_difference_of_squares() {
        let geom = line_geometry(2);
        let one = ConeSeries::one(&geom);
        let a = one.add(&qt(&geom, rat_int(1))).unwrap();
        let b = one.sub(&qt(&geom, rat_int(1))).unwrap();
        let ab = a.mul(&b).unwrap();
        // 1 - q^2 t^2
        assert_eq!(ab.coefficient(0, &geom.zero_class()).unwrap(), rat_int(1));
        assert_eq!(
            ab.coefficient(2, &CurveClass::new(vec![2])).unwrap(),
            rat_int(-1)
        );
        assert_eq!(ab.len(), 2);
    }

    #[test]
    fn mul_truncates() {
        let geom = line_geometry(1);
        let a = ConeSeries::one(&geom).add(&qt(&geom, rat_int(1))).unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.len(), 2);
        assert_eq!(
            sq.coefficient(1, &CurveClass::new(vec![1])).unwrap(),
            rat_int(2)
        );
    }

    #[test]
    fn mul_two_generators() {
        let geom = Geometry::new(
            vec![
                Generator {
                    name: "A".into(),
                    omega: 1,
                    h: 1,
                },
                Generator {
                    name: "B".into(),
                    omega: 1,
                    h: 1,
                },
            ],
            2,
        )
        .unwrap();
        let t1 = ConeSeries::monomial(&geom, 0, CurveClass::new(vec![1, 0]), rat_int(1)).unwrap();
        let t2 = ConeSeries::monomial(&geom, 0, CurveClass::new(vec![0, 1]), rat_int(1)).unwrap();
        let a = ConeSeries::one(&geom).add(&t1).unwrap();
        let b = ConeSeries::one(&geom).add(&t2).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.len(), 4);
        assert_eq!(
            ab.coefficient(0, &CurveClass::new(vec![1, 1])).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn geometry_mismatch() {
        let a = ConeSeries::<Rational>::one(&line_geometry(2));
        let b = ConeSeries::<Rational>::one(&line_geometry(3));
        assert_eq!(a.mul(&b), Err(Error::GeometryMismatch));
    }

    #[test]
    fn exp_taylor() {
        let geom = line_geometry(2);
        let c = rat(3, 2);
        let e = qt(&geom, c.clone()).exp().unwrap();
        assert_eq!(e.coefficient(0, &geom.zero_class()).unwrap(), rat_int(1));
        assert_eq!(
            e.coefficient(1, &CurveClass::new(vec![1])).unwrap(),
            c.clone()
        );
        assert_eq!(
            e.coefficient(2, &CurveClass::new(vec![2])).unwrap(),
            &c * &c / rat_int(2)
        );
        assert_eq!(
            ConeSeries::<Rational>::zero(&geom).exp().unwrap(),
            ConeSeries::one(&geom)
        );
    }

    #[test]
    fn exp_sums_two_classes() {
        // exp(qt + q^2 t^2) at d = 2 -> 1 + qt + (3/2) q^2 t^2
        let geom = line_geometry(2);
        let a = qt(&geom, rat_int(1))
            .add(&ConeSeries::monomial(&geom, 2, CurveClass::new(vec![2]), rat_int(1)).unwrap())
            .unwrap();
        let e = a.exp().unwrap();
        assert_eq!(
            e.coefficient(2, &CurveClass::new(vec![2])).unwrap(),
            rat(3, 2)
        );
    }

    #[test]
    fn exp_requires_zero_constant() {
        let geom = line_geometry(2);
        assert_eq!(
            ConeSeries::<Rational>::one(&geom).exp(),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn log_mercator() {
        let geom = line_geometry(3);
        let a = ConeSeries::one(&geom).add(&qt(&geom, rat_int(1))).unwrap();
        let l = a.log().unwrap();
        assert_eq!(
            l.coefficient(1, &CurveClass::new(vec![1])).unwrap(),
            rat_int(1)
        );
        assert_eq!(
            l.coefficient(2, &CurveClass::new(vec![2])).unwrap(),
            rat(-1, 2)
        );
        assert_eq!(
            l.coefficient(3, &CurveClass::new(vec![3])).unwrap(),
            rat(1, 3)
        );
        assert!(ConeSeries::<Rational>::one(&geom).log().unwrap().is_zero());
        assert_eq!(
            ConeSeries::<Rational>::zero(&geom).log(),
            Err(Error::ConstantTermNotOne)
        );
    }

    #[test]
    fn log_inverts_exp() {
        let geom = line_geometry(4);
        let a = qt(&geom, rat_int(1));
        assert_eq!(a.exp().unwrap().log().unwrap(), a);
    }

    #[test]
    fn pow_binomial() {
        let geom = line_geometry(2);
        let a = ConeSeries::one(&geom).add(&qt(&geom, rat_int(1))).unwrap();
        let sq = a.pow(&rat_int(2)).unwrap();
        assert_eq!(sq, a.mul(&a).unwrap());
        let root = a.pow(&rat(1, 2)).unwrap();
        assert_eq!(
            root.coefficient(1, &CurveClass::new(vec![1])).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            root.coefficient(2, &CurveClass::new(vec![2])).unwrap(),
            rat(-1, 8)
        );
        assert_eq!(a.pow(&rat_int(0)).unwrap(), ConeSeries::one(&geom));
    }

    #[test]
    fn invert_geometric() {
        let geom = line_geometry(3);
        let a = ConeSeries::one(&geom).sub(&qt(&geom, rat_int(1))).unwrap();
        let inv = a.invert().unwrap();
        for m in 0..=3 {
            assert_eq!(
                inv.coefficient(m, &CurveClass::new(vec![m as u32]))
                    .unwrap(),
                rat_int(1)
            );
        }
        assert_eq!(a.mul(&inv).unwrap(), ConeSeries::one(&geom));
        assert_eq!(
            ConeSeries::<Rational>::one(&geom).invert().unwrap(),
            ConeSeries::one(&geom)
        );
    }

    #[test]
    fn invert_triangular() {
        // invert(1 + qt + q^2 t^2) at d = 2 -> 1 - qt
        let geom = line_geometry(2);
        let a = ConeSeries::one(&geom)
            .add(&qt(&geom, rat_int(1)))
            .unwrap()
            .add(&ConeSeries::monomial(&geom, 2, CurveClass::new(vec![2]), rat_int(1)).unwrap())
            .unwrap();
        let inv = a.invert().unwrap();
        let expect = ConeSeries::one(&geom).sub(&qt(&geom, rat_int(1))).unwrap();
        assert_eq!(inv, expect);
    }

    #[test]
    fn pure_q_powers_rejected() {
        let geom = line_geometry(2);
        assert!(matches!(
            ConeSeries::monomial(&geom, 5, CurveClass::new(vec![0]), rat_int(1)),
            Err(Error::InadmissibleKey(_))
        ));
        assert!(ConeSeries::monomial(&geom, 0, CurveClass::new(vec![0]), rat_int(2)).is_ok());
    }

    #[test]
    fn coefficient_bounds() {
        let geom = line_geometry(2);
        let one = ConeSeries::<Rational>::one(&geom);
        assert_eq!(
            one.coefficient(5, &CurveClass::new(vec![1])).unwrap(),
            rat_int(0)
        );
        assert!(matches!(
            one.coefficient(0, &CurveClass::new(vec![3])),
            Err(Error::OutOfTruncation { omega: 3, bound: 2 })
        ));
        let s = one.add(&qt(&geom, rat_int(3))).unwrap();
        assert_eq!(
            s.coefficient(1, &CurveClass::new(vec![1])).unwrap(),
            rat_int(3)
        );
    }

    #[test]
    fn canonical_row_order() {
        let geom = Geometry::new(
            vec![
                Generator {
                    name: "A".into(),
                    omega: 1,
                    h: 1,
                },
                Generator {
                    name: "B".into(),
                    omega: 1,
                    h: 1,
                },
            ],
            2,
        )
        .unwrap();
        let mut s = ConeSeries::one(&geom);
        s = s
            .add(&ConeSeries::monomial(&geom, 2, CurveClass::new(vec![2, 0]), rat_int(1)).unwrap())
            .unwrap();
        s = s
            .add(&ConeSeries::monomial(&geom, -1, CurveClass::new(vec![0, 1]), rat_int(1)).unwrap())
            .unwrap();
        s = s
            .add(&ConeSeries::monomial(&geom, 3, CurveClass::new(vec![0, 1]), rat_int(1)).unwrap())
            .unwrap();
        let rows = s.tsv_rows();
        let keys: Vec<(String, String)> =
            rows.iter().map(|r| (r[1].clone(), r[0].clone())).collect();
        assert_eq!(
            keys,
            vec![
                ("0,0".to_string(), "0".to_string()),
                ("0,1".to_string(), "-1".to_string()),
                ("0,1".to_string(), "3".to_string()),
                ("2,0".to_string(), "2".to_string()),
            ]
        );
    }
}
