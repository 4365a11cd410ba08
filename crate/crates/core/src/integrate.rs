//! Globally adaptive Gauss-Kronrod (7, 15) quadrature on finite intervals.

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    /// Integral of |f|, used to judge cancellation.
    pub abs_value: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kron += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kron * half;
    let raw = ((kron - gauss) * half).abs();
    // QUADPACK-style error scaling: (200 |K - G|)^1.5, floored by roundoff.
    let mut error = raw;
    if raw > 0.0 {
        let scale = (200.0 * raw / (abs * half.abs()).max(f64::MIN_POSITIVE)).powf(1.5);
        error = (abs * half.abs()) * scale.min(1.0);
    }
    error = error.max(50.0 * f64::EPSILON * (abs * half.abs()));
    Panel {
        a,
        b,
        value,
        error,
        abs_value: abs * half.abs(),
    }
}

/// Integrates `f` over `[a, b]`, pre-split at `breaks`, until the summed
/// error estimate is below `max(abs_tol, rel_tol * |I|)`, or below the
/// roundoff level of the integral of `|f|` when cancellation prevents that.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Integral> {
    let mut points = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(|x, y| x.total_cmp(y));
    inner.dedup();
    points.extend(inner);
    points.push(b);

    let mut panels: Vec<Panel> = points.windows(2).map(|w| kronrod(&f, w[0], w[1])).collect();
    let mut evaluations = 15 * panels.len();

    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let abs_value: f64 = panels.iter().map(|p| p.abs_value).sum();
        let roundoff = 100.0 * f64::EPSILON * abs_value;
        if error <= abs_tol.max(rel_tol * value.abs()).max(roundoff) {
            return Ok(Integral {
                value,
                error,
                abs_value,
                evaluations,
            });
        }
        if panels.len() >= max_panels {
            return Err(Error::Quadrature {
                estimate: value,
                error,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(Error::Quadrature {
                estimate: value,
                error,
            });
        }
        panels.push(kronrod(&f, p.a, mid));
        panels.push(kronrod(&f, mid, p.b));
        evaluations += 30;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, 0.0, 2.0, &[], 1e-12, 1e-12, 10).unwrap();
        assert!((r.value - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
    }

    #[test]
    fn exponential_tail() {
        let r = integrate(|k| (-3.0 * k).exp(), 0.0, 40.0, &[1.0], 1e-15, 1e-13, 500).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn sharp_feature_needs_refinement() {
        let r = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, &[], 1e-12, 1e-12, 2000).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((r.value - exact).abs() / exact < 1e-10);
    }
}
