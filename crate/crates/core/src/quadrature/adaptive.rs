use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::rules::kronrod21;
use super::{Estimate, Scalar, Tolerance};
use crate::error::{Error, Result};

struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl<V> Eq for Panel<V> {}
impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<V> Ord for Panel<V> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Adaptive G10K21 on [a, b].
pub fn integrate<V: Scalar, F: Fn(f64) -> V + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: Tolerance,
    max_subdivisions: usize,
) -> Result<Estimate<V>> {
    integrate_with_breaks(f, &[a, b], tol, max_subdivisions)
}

/// Adaptive G10K21 over consecutive intervals of the sorted `points`.
pub fn integrate_with_breaks<V: Scalar, F: Fn(f64) -> V + ?Sized>(
    f: &F,
    points: &[f64],
    tol: Tolerance,
    max_subdivisions: usize,
) -> Result<Estimate<V>> {
    if points.len() < 2 {
        return Ok(Estimate::zero());
    }
    let mut heap = BinaryHeap::new();
    let mut total = V::ZERO;
    let mut total_err = 0.0;
    let mut total_abs = 0.0;
    let mut evaluations = 0;
    // Panels that cannot be split any further keep their error here.
    let mut frozen = V::ZERO;
    let mut frozen_err = 0.0;

    for w in points.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (v, e, abs) = kronrod21(f, w[0], w[1]);
        evaluations += 21;
        if !v.finite() {
            return Err(Error::domain(format!("non-finite integrand on [{}, {}]", w[0], w[1])));
        }
        total += v;
        total_err += e;
        total_abs += abs;
        heap.push(Panel { a: w[0], b: w[1], value: v, error: e });
    }

    let mut splits = 0;
    loop {
        let target = tol.target(total.norm());
        if total_err <= target || total_err <= 50.0 * f64::EPSILON * total_abs {
            break;
        }
        let Some(p) = heap.pop() else { break };
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b || (p.b - p.a) < 1e-13 * p.a.abs().max(p.b.abs()) {
            frozen += p.value;
            frozen_err += p.error;
            if heap.is_empty() {
                break;
            }
            continue;
        }
        if splits >= max_subdivisions {
            heap.push(p);
            return Err(Error::accuracy(
                total.norm(),
                total_err,
                format!("adaptive quadrature exhausted {max_subdivisions} subdivisions"),
            ));
        }
        splits += 1;
        let (v1, e1, a1) = kronrod21(f, p.a, mid);
        let (v2, e2, a2) = kronrod21(f, mid, p.b);
        evaluations += 42;
        if !v1.finite() || !v2.finite() {
            return Err(Error::domain(format!("non-finite integrand on [{}, {}]", p.a, p.b)));
        }
        total = total - p.value + v1 + v2;
        total_err = total_err - p.error + e1 + e2;
        total_abs += a1 + a2;
        heap.push(Panel { a: p.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: p.b, value: v2, error: e2 });
        if splits % 64 == 0 {
            // refresh the running sums to shed cancellation drift
            total = frozen;
            total_err = frozen_err;
            for q in heap.iter() {
                total += q.value;
                total_err += q.error;
            }
        }
    }
    Ok(Estimate {
        value: total,
        error: total_err.max(0.0),
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tol() -> Tolerance {
        Tolerance { abs: 1e-12, rel: 1e-12 }
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(&|x: f64| x.powf(-0.5), 0.0, 1.0, tol(), 2000).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn sharp_peak_with_breakpoint() {
        let f = |x: f64| 1e-4 / ((x - 0.3).powi(2) + 1e-8);
        let r = integrate_with_breaks(&f, &[0.0, 0.3, 1.0], tol(), 2000).unwrap();
        let exact = (0.7f64 / 1e-4).atan() + (0.3f64 / 1e-4).atan();
        assert!((r.value - exact).abs() < 1e-9);
    }

    #[test]
    fn complex_values() {
        let r = integrate(&|x: f64| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, tol(), 200)
            .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn reports_exhaustion() {
        let f = |x: f64| (1.0 / x).sin() / x;
        let e = integrate(&f, 1e-9, 1.0, Tolerance { abs: 1e-14, rel: 1e-14 }, 10).unwrap_err();
        assert!(matches!(e, Error::Accuracy { .. }));
    }
}
