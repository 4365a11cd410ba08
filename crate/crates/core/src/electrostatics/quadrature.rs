//! Direct numerical evaluation of the Fourier-Bessel kernel integrals.
//!
//! For each k the four interface conditions are solved as a 4×4 linear
//! system (with unknowns rescaled so that every entry stays bounded), and the
//! reflected part of the potential at the charge is integrated over k. This
//! shares no algebra with the reflection series and serves as their oracle.

use nalgebra::{Matrix4, Vector4};

use super::dielectric::{DielectricConstant, DielectricStack};
use super::series::PotentialValue;
use crate::integrate::integrate;
use crate::units::{nm_to_bohr, HARTREE_EV};
use crate::{Error, Result};

/// Relative accuracy requested from the adaptive quadrature.
pub const QUADRATURE_TOL: f64 = 1e-12;
const MAX_PANELS: usize = 20_000;

/// (outer, inner) weights of the flux condition, normalised by K_out + K2.
fn flux_weights(outer: DielectricConstant, k2: f64) -> (f64, f64) {
    match outer {
        DielectricConstant::Finite(k) => (k / (k + k2), k2 / (k + k2)),
        DielectricConstant::Metal => (1.0, 0.0),
    }
}

fn solve(m: Matrix4<f64>, rhs: Vector4<f64>) -> Result<Vector4<f64>> {
    m.lu()
        .solve(&rhs)
        .ok_or(Error::Quadrature { estimate: f64::NAN, error: f64::INFINITY })
}

/// Reflected kernel ψ(k) + θ(k) at the charge for a slab source.
/// Distances in Bohr.
fn slab_kernel(stack: &DielectricStack, app: f64, bp: f64, c: f64, k: f64) -> f64 {
    let k2 = stack.k2_value();
    let (w1, v1) = flux_weights(stack.k1, k2);
    let (w3, v3) = flux_weights(stack.k3, k2);
    let e = (-k * c).exp();
    let sa = (-k * app).exp();
    let sb = (-k * bp).exp();
    // Unknowns: [φ̃, ψ̃, θ̃, Ω̃].
    #[rustfmt::skip]
    let m = Matrix4::new(
        1.0, -1.0,     -e,       0.0,
        w1,   v1,      -v1 * e,  0.0,
        0.0,  e,        1.0,    -1.0,
        0.0, -v3 * e,   v3,      w3,
    );
    let rhs = Vector4::new(sa, v1 * sa, -sb, v3 * sb);
    match solve(m, rhs) {
        Ok(u) => u[1] * sa + u[2] * sb,
        Err(_) => f64::NAN,
    }
}

/// Reflected kernel φ(k) at a charge in the left half-space.
fn left_kernel(stack: &DielectricStack, k1: f64, da: f64, c: f64, k: f64) -> f64 {
    let k2 = stack.k2_value();
    let (w, v) = (k1 / (k1 + k2), k2 / (k1 + k2));
    let (w3, v3) = flux_weights(stack.k3, k2);
    let e = (-k * c).exp();
    let sa = (-k * da).exp();
    #[rustfmt::skip]
    let m = Matrix4::new(
        1.0, -1.0,     -e,       0.0,
        w,    v,       -v * e,   0.0,
        0.0,  e,        1.0,    -1.0,
        0.0, -v3 * e,   v3,      w3,
    );
    let rhs = Vector4::new(-sa, w * sa, 0.0, 0.0);
    match solve(m, rhs) {
        Ok(u) => u[0] * sa,
        Err(_) => f64::NAN,
    }
}

fn run(kernel: impl Fn(f64) -> f64, d_min: f64, c: f64, prefactor: f64) -> Result<PotentialValue> {
    // Kernels decay like e^{-2k d_min}; stop where the tail is negligible
    // against the smallest scale the value can take.
    let spread = (c / d_min).max(1.0);
    let k_max = ((4e3 / QUADRATURE_TOL).ln() + spread.ln()) / (2.0 * d_min);
    let breaks = [
        0.25 / c,
        1.0 / c,
        0.25 / d_min,
        1.0 / d_min,
        4.0 / d_min,
    ];
    let tail = 4.0 * (-2.0 * k_max * d_min).exp() / (2.0 * d_min);
    let abs_tol = QUADRATURE_TOL * 1e-3 / (2.0 * d_min * spread);
    let r = integrate(&kernel, 0.0, k_max, &breaks, abs_tol, QUADRATURE_TOL, MAX_PANELS)
        .map_err(|e| match e {
            Error::Quadrature { estimate, error } => Error::Quadrature {
                estimate: estimate * prefactor,
                error: error * prefactor.abs(),
            },
            other => other,
        })?;
    if !r.value.is_finite() {
        return Err(Error::Quadrature { estimate: r.value, error: r.error });
    }
    Ok(PotentialValue {
        v: prefactor * r.value,
        terms_used: r.evaluations,
        truncation_error_bound: prefactor.abs() * (r.error + tail),
    })
}

/// Self-potential (volts) of a slab charge by quadrature of the interface
/// kernels. Independent of both reflection series.
pub fn potential_kernel_quadrature(stack: &DielectricStack, z0: f64, q: f64) -> Result<PotentialValue> {
    if !(z0 > stack.a && z0 < stack.b) {
        return Err(Error::Domain(format!(
            "z0 = {z0} nm is not inside the slab ({}, {})",
            stack.a, stack.b
        )));
    }
    let (app, bp, c) = (
        nm_to_bohr(z0 - stack.a),
        nm_to_bohr(stack.b - z0),
        nm_to_bohr(stack.width()),
    );
    let prefactor = q / stack.k2_value() * HARTREE_EV;
    run(|k| slab_kernel(stack, app, bp, c, k), app.min(bp), c, prefactor)
}

/// Self-potential (volts) of a charge in the left half-space at distance
/// `dist_a` from the first interface, by kernel quadrature.
pub fn potential_left_halfplane_quadrature(stack: &DielectricStack, dist_a: f64, q: f64) -> Result<PotentialValue> {
    let k1 = match stack.k1 {
        DielectricConstant::Finite(v) => v,
        DielectricConstant::Metal => {
            return Err(Error::InvalidStack("a charge cannot sit inside a metal half-space".into()))
        }
    };
    if !(dist_a > 0.0) {
        return Err(Error::Domain(format!("distance must be positive, got {dist_a}")));
    }
    let (da, c) = (nm_to_bohr(dist_a), nm_to_bohr(stack.width()));
    let prefactor = q / k1 * HARTREE_EV;
    run(|k| left_kernel(stack, k1, da, c, k), da, c.max(da), prefactor)
}
