use std::fmt;

use super::matrix::Matrix;
use super::scalar::{Ext, Scalar, Tol, DEFAULT_TOLERANCE};
use crate::error::{Result, WkamError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NumericMode {
    Exact,
    Float { tolerance: f64 },
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Exact => f.write_str("exact"),
            NumericMode::Float { .. } => f.write_str("float"),
        }
    }
}

/// A finite point set with its one-step cost `c(x, y)`, optionally a metric.
///
/// Instances whose costs are all finite are *total*; every theorem-level
/// operation requires a total instance. `+inf` entries ("graph mode") are
/// accepted by the kernels and by the critical-value solver only.
#[derive(Clone, Debug, PartialEq)]
pub struct CostInstance<T> {
    labels: Vec<String>,
    cost: Matrix<Ext<T>>,
    dense: Option<Matrix<T>>,
    metric: Option<Matrix<T>>,
    tolerance: f64,
}

impl<T: Scalar> CostInstance<T> {
    pub fn new(cost: Matrix<Ext<T>>) -> Result<Self> {
        let n = cost.n();
        if n == 0 {
            return Err(WkamError::EmptyInstance);
        }
        for ((x, y), v) in cost.iter() {
            if let Ext::Fin(v) = v {
                if v.is_nan() {
                    return Err(WkamError::Parse(format!("NaN cost at ({x}, {y})")));
                }
            }
        }
        let dense = if cost.iter().all(|(_, v)| v.is_finite()) {
            Some(cost.map(|v| v.finite().expect("checked finite").clone()))
        } else {
            None
        };
        Ok(CostInstance {
            labels: default_labels(n),
            cost,
            dense,
            metric: None,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn from_finite(cost: Matrix<T>) -> Result<Self> {
        Self::new(cost.map(|v| Ext::Fin(v.clone())))
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::from_finite(Matrix::from_rows(rows)?)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(WkamError::Parse(format!(
                "{} labels for {} points",
                labels.len(),
                self.n()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_metric(mut self, metric: Matrix<T>) -> Result<Self> {
        if metric.n() != self.n() {
            return Err(WkamError::InvalidMetric(format!(
                "metric is {}x{}, instance has {} points",
                metric.n(),
                metric.n(),
                self.n()
            )));
        }
        validate_metric(&metric, Tol(self.tolerance))?;
        self.metric = Some(metric);
        Ok(self)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(WkamError::InvalidArgument(format!("tolerance must be positive, got {tolerance}")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.cost.n()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn cost(&self) -> &Matrix<Ext<T>> {
        &self.cost
    }

    pub fn c(&self, x: usize, y: usize) -> &Ext<T> {
        &self.cost[(x, y)]
    }

    pub fn is_total(&self) -> bool {
        self.dense.is_some()
    }

    /// The cost as a finite matrix; fails in graph mode.
    pub fn dense(&self, op: &'static str) -> Result<&Matrix<T>> {
        self.dense.as_ref().ok_or(WkamError::GraphMode { op })
    }

    pub fn metric(&self) -> Option<&Matrix<T>> {
        self.metric.as_ref()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn mode(&self) -> NumericMode {
        if T::EXACT {
            NumericMode::Exact
        } else {
            NumericMode::Float { tolerance: self.tolerance }
        }
    }

    /// Comparison context for single-step quantities.
    pub fn tol(&self) -> Tol {
        if T::EXACT {
            Tol(0.0)
        } else {
            Tol(self.tolerance)
        }
    }

    /// Comparison context for sums along walks of length up to `n`:
    /// the tolerance is scaled by `n * max|c|`.
    pub fn walk_tol(&self) -> Tol {
        if T::EXACT {
            return Tol(0.0);
        }
        let max_abs = self
            .cost
            .iter()
            .filter_map(|(_, v)| v.finite().map(|v| v.to_f64().abs()))
            .fold(0.0f64, f64::max);
        Tol(self.tolerance * 1f64.max(self.n() as f64 * max_abs))
    }

    /// Same labels, metric and tolerance with a different cost matrix.
    pub fn with_cost(&self, cost: Matrix<Ext<T>>) -> Result<Self> {
        let mut out = CostInstance::new(cost)?;
        out.labels = self.labels.clone();
        out.metric = self.metric.clone();
        out.tolerance = self.tolerance;
        Ok(out)
    }

    /// Converts to another numeric backend (mode override).
    pub fn convert<U: Scalar>(&self) -> Result<CostInstance<U>> {
        let conv = |v: &T| -> Result<U> {
            let r = v
                .to_rational()
                .ok_or_else(|| WkamError::InvalidArgument(format!("cannot convert {v}")))?;
            Ok(U::from_rational(&r))
        };
        let mut rows = Vec::with_capacity(self.n());
        for row in self.cost.rows() {
            let mut out = Vec::with_capacity(row.len());
            for v in row {
                out.push(match v {
                    Ext::Fin(v) => Ext::Fin(conv(v)?),
                    Ext::Inf => Ext::Inf,
                });
            }
            rows.push(out);
        }
        let mut inst = CostInstance::new(Matrix::from_rows(rows)?)?;
        inst.labels = self.labels.clone();
        inst.tolerance = self.tolerance;
        if let Some(m) = &self.metric {
            let mut rows = Vec::with_capacity(self.n());
            for row in m.rows() {
                rows.push(row.iter().map(conv).collect::<Result<Vec<_>>>()?);
            }
            inst = inst.with_metric(Matrix::from_rows(rows)?)?;
        }
        Ok(inst)
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(WkamError::LengthMismatch { expected: self.n(), found: len });
        }
        Ok(())
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn validate_metric<T: Scalar>(m: &Matrix<T>, tol: Tol) -> Result<()> {
    let n = m.n();
    for x in 0..n {
        if !tol.is_zero(&m[(x, x)]) {
            return Err(WkamError::InvalidMetric(format!("d({x},{x}) != 0")));
        }
        for y in 0..n {
            let d = &m[(x, y)];
            if d.is_nan() || d < &T::zero() {
                return Err(WkamError::InvalidMetric(format!("d({x},{y}) is negative")));
            }
            if !tol.eq(d, &m[(y, x)]) {
                return Err(WkamError::InvalidMetric(format!("d({x},{y}) != d({y},{x})")));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let via = m[(x, y)].clone() + m[(y, z)].clone();
                if !tol.le(&m[(x, z)], &via) {
                    return Err(WkamError::InvalidMetric(format!(
                        "triangle inequality fails for ({x}, {y}, {z})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// One value per point; `tag` records where the function came from.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueFunction<T> {
    pub values: Vec<Ext<T>>,
    pub tag: String,
}

impl<T: Scalar> ValueFunction<T> {
    pub fn new(values: Vec<Ext<T>>, tag: impl Into<String>) -> Self {
        ValueFunction { values, tag: tag.into() }
    }

    pub fn from_finite(values: Vec<T>, tag: impl Into<String>) -> Self {
        ValueFunction { values: values.into_iter().map(Ext::Fin).collect(), tag: tag.into() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: usize) -> &Ext<T> {
        &self.values[x]
    }

    /// The values as finite scalars; fails at the first `+inf`.
    pub fn to_finite(&self) -> Result<Vec<T>> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v.finite().cloned().ok_or(WkamError::NonFiniteValue(i)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::scalar::{rat, Rational};

    #[test]
    fn total_flag_tracks_infinities() {
        let inst = CostInstance::<Rational>::from_rows(vec![vec![rat(1, 1)]]).unwrap();
        assert!(inst.is_total());
        let graph = CostInstance::<Rational>::new(
            Matrix::from_rows(vec![vec![Ext::Fin(rat(0, 1)), Ext::Inf], vec![Ext::Inf, Ext::Fin(rat(0, 1))]])
                .unwrap(),
        )
        .unwrap();
        assert!(!graph.is_total());
        assert!(graph.dense("test").is_err());
    }

    #[test]
    fn empty_and_nan_rejected() {
        assert!(matches!(
            CostInstance::<f64>::from_rows(vec![]),
            Err(WkamError::EmptyInstance)
        ));
        assert!(CostInstance::<f64>::from_rows(vec![vec![f64::NAN]]).is_err());
    }

    #[test]
    fn metric_validation() {
        let inst = CostInstance::<Rational>::from_rows(vec![vec![rat(0, 1); 3]; 3]).unwrap();
        let bad = Matrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 1), rat(5, 1)],
            vec![rat(1, 1), rat(0, 1), rat(1, 1)],
            vec![rat(5, 1), rat(1, 1), rat(0, 1)],
        ])
        .unwrap();
        assert!(matches!(inst.clone().with_metric(bad), Err(WkamError::InvalidMetric(_))));
        let asym = Matrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
            vec![rat(2, 1), rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1), rat(0, 1)],
        ])
        .unwrap();
        assert!(inst.clone().with_metric(asym).is_err());
        let good = Matrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 1), rat(2, 1)],
            vec![rat(1, 1), rat(0, 1), rat(1, 1)],
            vec![rat(2, 1), rat(1, 1), rat(0, 1)],
        ])
        .unwrap();
        assert!(inst.with_metric(good).is_ok());
    }

    #[test]
    fn converts_between_modes() {
        let inst = CostInstance::<Rational>::from_rows(vec![vec![rat(1, 2), rat(3, 4)], vec![rat(-1, 4), rat(0, 1)]])
            .unwrap();
        let f: CostInstance<f64> = inst.convert().unwrap();
        assert_eq!(f.c(0, 1), &Ext::Fin(0.75));
        let back: CostInstance<Rational> = f.convert().unwrap();
        assert_eq!(back.cost(), inst.cost());
    }
}
