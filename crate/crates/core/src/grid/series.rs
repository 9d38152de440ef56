use crate::error::{Error, Result};
use crate::Vector;

/// A vector-valued function sampled on a contiguous integer range `[first, last]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSeries {
    first: i64,
    dim: usize,
    values: Vec<Vector>,
}

impl GridSeries {
    /// Builds a series whose first sample sits at grid point `first`.
    ///
    /// Fails if `values` is empty or the samples disagree in dimension.
    pub fn new(first: i64, values: Vec<Vector>) -> Result<Self> {
        let dim = match values.first() {
            Some(v) => v.len(),
            None => {
                return Err(Error::InvalidParameter {
                    name: "values",
                    reason: "a grid series needs at least one sample".into(),
                })
            }
        };
        if dim == 0 {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: "samples must have positive dimension".into(),
            });
        }
        if let Some(bad) = values.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                name: "values",
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self { first, dim, values })
    }

    /// Samples `f` on `[first, last]`. `f` must return vectors of length `dim`.
    pub fn from_fn(first: i64, last: i64, dim: usize, mut f: impl FnMut(i64) -> Vector) -> Result<Self> {
        if last < first {
            return Err(Error::InvalidParameter {
                name: "last",
                reason: format!("empty range [{first}, {last}]"),
            });
        }
        let values: Vec<Vector> = (first..=last).map(&mut f).collect();
        let series = Self::new(first, values)?;
        if series.dim != dim {
            return Err(Error::DimensionMismatch {
                name: "values",
                expected: dim,
                found: series.dim,
            });
        }
        Ok(series)
    }

    /// Scalar series from plain numbers.
    pub fn scalar(first: i64, values: &[f64]) -> Result<Self> {
        Self::new(first, values.iter().map(|&x| Vector::from_element(1, x)).collect())
    }

    pub fn constant(first: i64, last: i64, value: &Vector) -> Result<Self> {
        Self::from_fn(first, last, value.len(), |_| value.clone())
    }

    pub fn zeros(first: i64, last: i64, dim: usize) -> Result<Self> {
        Self::from_fn(first, last, dim, |_| Vector::zeros(dim))
    }

    pub fn first(&self) -> i64 {
        self.first
    }

    pub fn last(&self) -> i64 {
        self.first + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; a series holds at least one sample.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, k: i64) -> bool {
        k >= self.first && k <= self.last()
    }

    /// Sample at `k`; reading outside the range is an error, never a silent zero.
    pub fn get(&self, k: i64) -> Result<&Vector> {
        if self.contains(k) {
            Ok(&self.values[(k - self.first) as usize])
        } else {
            Err(Error::OutOfRange {
                k,
                first: self.first,
                last: self.last(),
            })
        }
    }

    /// First component at `k`, convenient for scalar series.
    pub fn scalar_at(&self, k: i64) -> Result<f64> {
        self.get(k).map(|v| v[0])
    }

    pub fn values(&self) -> &[Vector] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Vector)> + '_ {
        (self.first..).zip(self.values.iter())
    }

    /// Largest componentwise absolute difference over the common range.
    pub fn max_abs_diff(&self, other: &GridSeries) -> Result<f64> {
        self.max_diff_by(other, |_| 1.0)
    }

    /// Largest `‖self(k) − reference(k)‖_max / max(1, ‖reference(k)‖_max)`
    /// over the common range: absolute for values of order one, relative
    /// for large ones.
    pub fn max_scaled_diff(&self, reference: &GridSeries) -> Result<f64> {
        self.max_diff_by(reference, |v| v.amax().max(1.0))
    }

    fn max_diff_by(&self, other: &GridSeries, scale: impl Fn(&Vector) -> f64) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                name: "series",
                expected: self.dim,
                found: other.dim,
            });
        }
        let first = self.first.max(other.first);
        let last = self.last().min(other.last());
        let mut worst: f64 = 0.0;
        for k in first..=last {
            let reference = other.get(k)?;
            worst = worst.max((self.get(k)? - reference).amax() / scale(reference));
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_and_range_errors() {
        let s = GridSeries::scalar(-2, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.first(), -2);
        assert_eq!(s.last(), 0);
        assert_eq!(s.scalar_at(-1).unwrap(), 2.0);
        assert_eq!(
            s.get(1).unwrap_err(),
            Error::OutOfRange {
                k: 1,
                first: -2,
                last: 0
            }
        );
        assert!(s.get(-3).is_err());
        let ks: Vec<i64> = s.iter().map(|(k, _)| k).collect();
        assert_eq!(ks, vec![-2, -1, 0]);
    }

    #[test]
    fn scaled_difference_is_relative_only_above_one() {
        let a = GridSeries::scalar(0, &[0.5, 1e6]).unwrap();
        let b = GridSeries::scalar(0, &[0.25, 1e6 + 1.0]).unwrap();
        assert_eq!(a.max_abs_diff(&b).unwrap(), 1.0);
        assert_eq!(a.max_scaled_diff(&b).unwrap(), 0.25);
    }

    #[test]
    fn rejects_empty_and_ragged() {
        assert!(GridSeries::new(0, vec![]).is_err());
        let ragged = vec![Vector::zeros(2), Vector::zeros(3)];
        assert!(matches!(
            GridSeries::new(0, ragged),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(GridSeries::from_fn(3, 2, 1, |_| Vector::zeros(1)).is_err());
    }
}
