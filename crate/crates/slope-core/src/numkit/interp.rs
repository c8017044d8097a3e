//! Monotone cubic (Fritsch-Carlson) interpolation.

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpError {
    /// Query outside the table span.
    OutOfRange,
    /// Fewer than two rows, or abscissae not strictly increasing.
    BadTable,
}

impl fmt::Display for InterpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpError::OutOfRange => write!(f, "query outside interpolation table span"),
            InterpError::BadTable => write!(f, "interpolation table invalid"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InterpError {}

/// Piecewise cubic Hermite interpolant with Fritsch-Carlson slope limiting.
///
/// Monotone data produces a monotone interpolant, which is what makes the
/// inverse arc-length map strictly increasing.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    /// Fit to `(x, y)` pairs with strictly increasing `x`.
    pub fn fit(xs: &[f64], ys: &[f64]) -> Result<MonotoneCubic, InterpError> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(InterpError::BadTable);
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(InterpError::BadTable);
        }
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();

        let mut slopes = alloc::vec![0.0; n];
        slopes[0] = endpoint_slope(h[0], h.get(1).copied(), delta[0], delta.get(1).copied());
        slopes[n - 1] = endpoint_slope(
            h[n - 2],
            if n >= 3 { Some(h[n - 3]) } else { None },
            delta[n - 2],
            if n >= 3 { Some(delta[n - 3]) } else { None },
        );
        for i in 1..n - 1 {
            let (d0, d1) = (delta[i - 1], delta[i]);
            if d0 * d1 <= 0.0 {
                slopes[i] = 0.0;
            } else {
                // Weighted harmonic mean; keeps the interpolant monotone.
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                slopes[i] = (w1 + w2) / (w1 / d0 + w2 / d1);
            }
        }

        Ok(MonotoneCubic {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            slopes,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    /// Evaluate inside the span; errors on out-of-range queries.
    pub fn eval(&self, x: f64) -> Result<f64, InterpError> {
        if x < self.x_min() || x > self.x_max() {
            return Err(InterpError::OutOfRange);
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluate, extending linearly (with the end slopes) beyond the span.
    pub fn eval_extrapolate(&self, x: f64) -> f64 {
        if x < self.x_min() {
            return self.ys[0] + self.slopes[0] * (x - self.x_min());
        }
        if x > self.x_max() {
            let n = self.xs.len();
            return self.ys[n - 1] + self.slopes[n - 1] * (x - self.x_max());
        }
        self.eval_unchecked(x)
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        // Binary search for the containing interval.
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ys[i],
            Err(i) => (i - 1).min(self.xs.len() - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

// Three-point one-sided estimate, clamped per Fritsch-Carlson.
fn endpoint_slope(h0: f64, h1: Option<f64>, d0: f64, d1: Option<f64>) -> f64 {
    let (h1, d1) = match (h1, d1) {
        (Some(h1), Some(d1)) => (h1, d1),
        _ => return d0,
    };
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

/// Inverse lookup in a `(t, s)` table strictly increasing in `s`: returns the
/// interpolated `t` at `s_query`.
pub fn invert_monotone(table: &[(f64, f64)], s_query: f64) -> Result<f64, InterpError> {
    let ss: Vec<f64> = table.iter().map(|&(_, s)| s).collect();
    let ts: Vec<f64> = table.iter().map(|&(t, _)| t).collect();
    MonotoneCubic::fit(&ss, &ts)?.eval(s_query)
}
