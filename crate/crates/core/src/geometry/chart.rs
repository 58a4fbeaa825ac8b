//! Coordinate charts and rational point assignments.

use crate::algebra::{Rat, RatFun, VarSet};
use crate::geometry::GeomError;
use rand::Rng;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
struct ChartInner {
    name: String,
    vars: VarSet,
}

/// A named chart with an ordered list of coordinates.
#[derive(Clone, Debug)]
pub struct Chart(Arc<ChartInner>);

impl Chart {
    pub fn new<S: Into<String>>(name: &str, coords: impl IntoIterator<Item = S>) -> Self {
        Chart(Arc::new(ChartInner {
            name: name.to_string(),
            vars: VarSet::new(coords),
        }))
    }

    pub fn from_vars(name: &str, vars: VarSet) -> Self {
        Chart(Arc::new(ChartInner {
            name: name.to_string(),
            vars,
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn vars(&self) -> &VarSet {
        &self.0.vars
    }

    pub fn dim(&self) -> usize {
        self.0.vars.len()
    }

    pub fn coords(&self) -> &[String] {
        self.0.vars.names()
    }

    pub fn coord(&self, i: usize) -> &str {
        self.0.vars.name(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.vars.index_of(name)
    }

    /// Charts are the same when their coordinate lists agree.
    pub fn same(&self, other: &Chart) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.vars.same(&other.0.vars)
    }

    pub fn ensure_same(&self, other: &Chart) -> Result<(), GeomError> {
        if self.same(other) {
            Ok(())
        } else {
            Err(GeomError::ChartMismatch {
                left: self.name().to_string(),
                right: other.name().to_string(),
            })
        }
    }

    pub fn zero_fun(&self) -> RatFun {
        RatFun::zero(self.vars())
    }

    pub fn coord_fun(&self, name: &str) -> Result<RatFun, GeomError> {
        RatFun::var(self.vars(), name).map_err(GeomError::from)
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.0.name, self.coords().join(", "))
    }
}

/// A total assignment of rational values to a chart's coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PointAssignment {
    chart: Chart,
    values: Vec<Rat>,
}

impl PointAssignment {
    pub fn new(chart: &Chart, values: Vec<Rat>) -> Result<Self, GeomError> {
        if values.len() != chart.dim() {
            return Err(GeomError::PointArity {
                expected: chart.dim(),
                got: values.len(),
            });
        }
        Ok(PointAssignment {
            chart: chart.clone(),
            values,
        })
    }

    pub fn from_map(chart: &Chart, map: &HashMap<String, Rat>) -> Result<Self, GeomError> {
        let mut values = Vec::with_capacity(chart.dim());
        for c in chart.coords() {
            let v = map.get(c).ok_or_else(|| GeomError::MissingCoordinate {
                name: c.clone(),
            })?;
            values.push(v.clone());
        }
        PointAssignment::new(chart, values)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Evaluate `f` at the point; errors if a denominator vanishes there.
    pub fn eval(&self, f: &RatFun) -> Result<Rat, GeomError> {
        f.eval(&self.values).map_err(GeomError::from)
    }
}

impl fmt::Display for PointAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .chart
            .coords()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| format!("{c}={v}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Draw a generic rational point: numerators uniform in {-9..9}\{0},
/// denominators uniform in 1..=3.
pub fn random_point<R: Rng>(chart: &Chart, rng: &mut R) -> PointAssignment {
    let values = (0..chart.dim())
        .map(|_| {
            let mut n: i64 = rng.gen_range(-9..=9);
            if n == 0 {
                n = 1;
            }
            let d: i64 = rng.gen_range(1..=3);
            Rat::new(n, d)
        })
        .collect();
    PointAssignment {
        chart: chart.clone(),
        values,
    }
}
