//! Invariant tables and the slope context.
//!
//! An `InvariantTable` holds finitely many rational invariants keyed by
//! (Euler characteristic n, effective class beta). Keys are bounded by the
//! truncation; slope or primitivity constraints are checked by the operations
//! that need them, so one table can carry a slope-fibered family together
//! with the primitive (n = 1) data living at other slopes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{CurveClass, Geometry};
use crate::rational::{as_integer, Rational};
use crate::series::SeriesKey;

/// A geometry together with a fixed slope. A pair (n, beta) is admissible
/// when beta > 0, its degree is within truncation, and n equals slope times
/// the degree exactly.
#[derive(Clone, Debug)]
pub struct SlopeContext {
    geometry: Arc<Geometry>,
    slope: Rational,
}

impl SlopeContext {
    pub fn new(geometry: &Arc<Geometry>, slope: Rational) -> SlopeContext {
        SlopeContext {
            geometry: Arc::clone(geometry),
            slope,
        }
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    /// The admissible Euler characteristic attached to a positive class, if
    /// slope * degree is an integer.
    pub fn admissible_n(&self, class: &CurveClass) -> Option<i64> {
        if class.is_zero() {
            return None;
        }
        let omega = self.geometry.omega_degree(class);
        if omega > self.geometry.truncation() {
            return None;
        }
        as_integer(&(self.slope.clone() * crate::rational::rat_int(omega as i64)))
    }

    pub fn is_admissible(&self, n: i64, class: &CurveClass) -> bool {
        self.admissible_n(class) == Some(n)
    }

    /// All admissible keys in canonical order.
    pub fn admissible_keys(&self) -> Vec<(i64, CurveClass)> {
        self.geometry
            .positive_classes()
            .into_iter()
            .filter_map(|class| self.admissible_n(&class).map(|n| (n, class)))
            .collect()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct InvariantTable {
    geometry: Arc<Geometry>,
    entries: BTreeMap<SeriesKey, Rational>,
}

impl InvariantTable {
    pub fn new(geometry: &Arc<Geometry>) -> InvariantTable {
        InvariantTable {
            geometry: Arc::clone(geometry),
            entries: BTreeMap::new(),
        }
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    /// Records an invariant. The class must be positive and within
    /// truncation; zero values are dropped.
    pub fn insert(&mut self, n: i64, class: CurveClass, value: Rational) -> Result<()> {
        self.geometry.check_class(&class)?;
        if class.is_zero() {
            return Err(Error::InadmissibleKey(format!("({n}, {class})")));
        }
        let omega = self.geometry.omega_degree(&class);
        if omega > self.geometry.truncation() {
            return Err(Error::OutOfTruncation {
                omega,
                bound: self.geometry.truncation(),
            });
        }
        let key = SeriesKey { omega, class, n };
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn from_entries<I>(geometry: &Arc<Geometry>, entries: I) -> Result<InvariantTable>
    where
        I: IntoIterator<Item = (i64, CurveClass, Rational)>,
    {
        let mut table = InvariantTable::new(geometry);
        for (n, class, value) in entries {
            table.insert(n, class, value)?;
        }
        Ok(table)
    }

    pub fn get(&self, n: i64, class: &CurveClass) -> Rational {
        let key = SeriesKey::new(&self.geometry, n, class.clone());
        self.entries
            .get(&key)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SeriesKey, &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with the given Euler characteristic, as a new table.
    pub fn slice_n(&self, n: i64) -> InvariantTable {
        InvariantTable {
            geometry: Arc::clone(&self.geometry),
            entries: self
                .entries
                .iter()
                .filter(|(key, _)| key.n == n)
                .map(|(key, value)| (key.clone(), value.clone()))
                .collect(),
        }
    }

    /// Entries admissible for the given slope context, as a new table.
    pub fn slice_slope(&self, ctx: &SlopeContext) -> InvariantTable {
        InvariantTable {
            geometry: Arc::clone(&self.geometry),
            entries: self
                .entries
                .iter()
                .filter(|(key, _)| ctx.is_admissible(key.n, &key.class))
                .map(|(key, value)| (key.clone(), value.clone()))
                .collect(),
        }
    }

    /// Union of two tables over the same geometry. Keys present in both must
    /// agree.
    pub fn merged(&self, other: &InvariantTable) -> Result<InvariantTable> {
        if *self.geometry != *other.geometry {
            return Err(Error::GeometryMismatch);
        }
        let mut out = self.clone();
        for (key, value) in &other.entries {
            match out.entries.get(key) {
                Some(existing) if existing != value => {
                    return Err(Error::Invalid(format!(
                        "conflicting values at ({}, {}): {existing} vs {value}",
                        key.n, key.class
                    )));
                }
                _ => {
                    out.entries.insert(key.clone(), value.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn tsv_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|(key, value)| vec![key.n.to_string(), key.class.to_string(), value.to_string()])
            .collect()
    }

    /// Structured key/value form for machine consumption.
    pub fn to_doc(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(key, value)| {
                serde_json::json!({
                    "n": key.n,
                    "beta": key.class.mults(),
                    "value": value.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "entries": entries })
    }
}
