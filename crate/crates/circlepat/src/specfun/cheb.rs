//! Chebyshev interpolation, evaluation and antiderivatives on an interval.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Chebyshev series `Σ' c_j T_j(y)` on `[a, b]` with `y = (2x - a - b)/(b - a)`.
///
/// The constant term enters with weight one half.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries<T> {
    coefficients: Vec<T>,
    interval: (T, T),
}

impl<T: Scalar> ChebSeries<T> {
    /// Wraps explicit coefficients.
    pub fn from_coefficients(coefficients: Vec<T>, a: T, b: T) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Domain("empty Chebyshev series".into()));
        }
        if !(a < b) {
            return Err(Error::Domain("Chebyshev interval must satisfy a < b".into()));
        }
        Ok(Self { coefficients, interval: (a, b) })
    }

    /// Interpolates `f` at the `n` Chebyshev nodes of `[a, b]`.
    pub fn fit<F: Fn(T) -> T>(f: F, a: T, b: T, n: usize) -> Result<Self> {
        Self::fit_truncated(f, a, b, n, T::zero())
    }

    /// Like [`ChebSeries::fit`], then drops trailing coefficients with magnitude below `threshold`.
    pub fn fit_truncated<F: Fn(T) -> T>(f: F, a: T, b: T, n: usize, threshold: T) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("Chebyshev fit needs degree >= 1".into()));
        }
        if !(a < b) {
            return Err(Error::Domain("Chebyshev interval must satisfy a < b".into()));
        }
        let half = T::lit(0.5);
        let bma = half * (b - a);
        let bpa = half * (b + a);
        let nn = T::from_count(n);
        let pi = T::PI();
        let samples: Vec<T> = (0..n)
            .map(|k| {
                let y = (pi * (T::from_count(k) + half) / nn).cos();
                f(y * bma + bpa)
            })
            .collect();
        let fac = T::lit(2.0) / nn;
        let mut coefficients: Vec<T> = (0..n)
            .map(|j| {
                let jj = T::from_count(j);
                let mut sum = T::zero();
                for (k, s) in samples.iter().enumerate() {
                    sum = sum + *s * (pi * jj * (T::from_count(k) + half) / nn).cos();
                }
                fac * sum
            })
            .collect();
        while coefficients.len() > 1 && coefficients.last().is_some_and(|c| c.abs() < threshold) {
            coefficients.pop();
        }
        Ok(Self { coefficients, interval: (a, b) })
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn interval(&self) -> (T, T) {
        self.interval
    }

    /// Evaluates the series; `x` must lie in the interval.
    pub fn eval(&self, x: T) -> Result<T> {
        let (a, b) = self.interval;
        if !(x >= a && x <= b) {
            return Err(Error::Domain(format!("Chebyshev evaluation point {x} outside [{a}, {b}]")));
        }
        Ok(clenshaw(&self.coefficients, a, b, x))
    }

    /// Antiderivative series, normalized to vanish at the left end of the interval.
    pub fn integrate(&self) -> Result<Self> {
        let (a, b) = self.interval;
        let mut c = self.coefficients.clone();
        if c.is_empty() {
            return Err(Error::Domain("empty Chebyshev series".into()));
        }
        if c.len() == 1 {
            c.push(T::zero());
        }
        Ok(Self { coefficients: integrate_coefficients(&c, a, b), interval: (a, b) })
    }
}

/// Clenshaw recurrence on `f64` coefficients with a generic argument.
pub(crate) fn clenshaw_f64<T: Scalar>(c: &[f64], a: f64, b: f64, x: T) -> T {
    let y = (T::lit(2.0) * x - T::lit(a + b)) / T::lit(b - a);
    let y2 = y + y;
    let (mut d, mut dd) = (T::zero(), T::zero());
    for cj in c.iter().skip(1).rev() {
        let sv = d;
        d = y2 * d - dd + T::lit(*cj);
        dd = sv;
    }
    y * d - dd + T::lit(0.5 * c[0])
}

fn clenshaw<T: Scalar>(c: &[T], a: T, b: T, x: T) -> T {
    let two = T::lit(2.0);
    let y = (two * x - a - b) / (b - a);
    let y2 = y + y;
    let (mut d, mut dd) = (T::zero(), T::zero());
    for cj in c.iter().skip(1).rev() {
        let sv = d;
        d = y2 * d - dd + *cj;
        dd = sv;
    }
    y * d - dd + T::lit(0.5) * c[0]
}

fn integrate_coefficients<T: Scalar>(c: &[T], a: T, b: T) -> Vec<T> {
    let n = c.len();
    let con = T::lit(0.25) * (b - a);
    let mut cint = vec![T::zero(); n];
    let mut sum = T::zero();
    let mut fac = T::one();
    for j in 1..n - 1 {
        cint[j] = con * (c[j - 1] - c[j + 1]) / T::from_count(j);
        sum = sum + fac * cint[j];
        fac = -fac;
    }
    cint[n - 1] = con * c[n - 2] / T::from_count(n - 1);
    sum = sum + fac * cint[n - 1];
    cint[0] = T::lit(2.0) * sum;
    cint
}
