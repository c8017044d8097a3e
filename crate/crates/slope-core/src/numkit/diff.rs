//! Central finite differences on 5-point stencils.

use super::Vec3;

/// Derivative order requested from [`central_diff`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    First,
    Second,
}

/// Scale-aware default step for first-order stencils.
///
/// `1e-4` balances truncation against cancellation for 4th-order stencils in
/// double precision.
pub fn default_step(t: f64) -> f64 {
    f64::max(1e-4, 1e-4 * t.abs())
}

/// Default step for second-order stencils. Larger than the first-order step
/// since the roundoff term grows like `eps / h^2`.
pub fn default_step_order2(t: f64) -> f64 {
    f64::max(1e-3, 1e-3 * t.abs())
}

/// 5-point central difference of a vector-valued function.
///
/// Both stencils are 4th-order accurate: the caller must ensure `fn` is
/// evaluable on `[t - 2h, t + 2h]`.
pub fn central_diff<F>(f: F, t: f64, order: DiffOrder, h: f64) -> Vec3
where
    F: Fn(f64) -> Vec3,
{
    debug_assert!(h > 0.0);
    let fm2 = f(t - 2.0 * h);
    let fm1 = f(t - h);
    let fp1 = f(t + h);
    let fp2 = f(t + 2.0 * h);
    match order {
        DiffOrder::First => (fm2 - fp2 + 8.0 * (fp1 - fm1)) / (12.0 * h),
        DiffOrder::Second => {
            let f0 = f(t);
            (-fm2 - fp2 + 16.0 * (fm1 + fp1) - 30.0 * f0) / (12.0 * h * h)
        }
    }
}
