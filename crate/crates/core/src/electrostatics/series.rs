//! Grouped reflection series for the self-potential and the cross-plate
//! image interaction.
//!
//! Each series is summed block by block. A block collects every term of one
//! reflection order, so that when both half-spaces are metal (ratio 1) the
//! blocks decay like 1/n² even though the individual terms only decay like
//! 1/n. For ratio 1 the remainder is added by Euler-Maclaurin on the exact
//! rational form of a block, which keeps the cost at a few hundred blocks.

use serde::Serialize;

use super::dielectric::{DielectricConstant, DielectricStack};
use super::images::{Family, ImageSequence};
use crate::units::{hartree_to_ev, nm_to_bohr, HARTREE_EV};
use crate::{Error, Result};

/// Default relative truncation tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Maximum number of grouped blocks before giving up.
pub const MAX_BLOCKS: usize = 1_000_000;

/// Potential at the charge (volts) with truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialValue {
    /// Volts. Multiply by the charge in units of e to get eV.
    pub v: f64,
    pub terms_used: usize,
    /// Upper estimate of the neglected remainder, in volts.
    pub truncation_error_bound: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Summation {
    pub value: f64,
    pub blocks: usize,
    pub bound: f64,
}

/// A block function f(n) = Σ w_k / (n + p_k) with Σ w_k = 0.
#[derive(Debug, Clone)]
pub(crate) struct RationalBlocks {
    poles: Vec<(f64, f64)>,
}

impl RationalBlocks {
    pub fn new(poles: Vec<(f64, f64)>) -> Self {
        Self { poles }
    }

    fn derivative(&self, n: f64, order: i32) -> f64 {
        let fact: f64 = (1..=order).map(f64::from).product();
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        self.poles
            .iter()
            .map(|&(w, p)| sign * fact * w / (n + p).powi(order + 1))
            .sum()
    }

    /// Σ_{m ≥ n} f(m) by Euler-Maclaurin, with an estimate of its error.
    fn tail(&self, n: f64) -> (f64, f64) {
        // ∫_n^∞ f = −Σ w ln(n + p) = −Σ w ln(1 + p/n) because Σ w = 0.
        let integral: f64 = -self.poles.iter().map(|&(w, p)| w * (p / n).ln_1p()).sum::<f64>();
        let f0 = self.derivative(n, 0);
        let f1 = self.derivative(n, 1);
        let f3 = self.derivative(n, 3);
        let tail = integral + 0.5 * f0 - f1 / 12.0 + f3 / 720.0;
        (tail, (f3 / 720.0).abs())
    }
}

/// Sums blocks `block(n) -> (value, magnitude)` where `magnitude` majorises
/// the absolute block and decays like (n+1)^degree · |ratio|^n.
pub(crate) fn grouped_sum(
    ratio: f64,
    degree: u32,
    tol: f64,
    rational: Option<&RationalBlocks>,
    mut block: impl FnMut(usize) -> (f64, f64),
) -> Result<Summation> {
    let y = ratio.abs();
    let accept = |sum: f64, bound: f64| {
        if sum == 0.0 {
            bound <= tol
        } else {
            bound <= tol * sum.abs()
        }
    };
    let mut sum = 0.0;
    let mut n = 0usize;

    if y < 1.0 {
        let mut current = block(0);
        loop {
            sum += current.0;
            n += 1;
            let next = block(n);
            // Remainder from block n on, bounded through its majorant.
            let bound = match degree {
                0 => next.1 / (1.0 - y),
                _ => next.1 * (1.0 / (1.0 - y) + y / ((n as f64 + 1.0) * (1.0 - y).powi(2))),
            };
            if accept(sum, bound) || next.1 == 0.0 {
                return Ok(Summation { value: sum, blocks: n, bound });
            }
            if n >= MAX_BLOCKS {
                return Err(Error::Convergence { terms: n, partial: sum, bound });
            }
            current = next;
        }
    }

    let rational = rational.ok_or(Error::Convergence {
        terms: 0,
        partial: 0.0,
        bound: f64::INFINITY,
    })?;
    let mut target = 64usize;
    loop {
        while n < target {
            sum += block(n).0;
            n += 1;
        }
        let (tail, bound) = rational.tail(n as f64);
        let total = sum + tail;
        if accept(total, bound) {
            return Ok(Summation { value: total, blocks: n, bound });
        }
        if n >= MAX_BLOCKS {
            return Err(Error::Convergence { terms: n, partial: total, bound });
        }
        target = (2 * target).min(MAX_BLOCKS);
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")))
    }
}

fn to_potential(stack: &DielectricStack, q: f64, s: Summation) -> PotentialValue {
    let scale = q / stack.k2_value() * HARTREE_EV;
    PotentialValue {
        v: scale * s.value,
        terms_used: s.blocks,
        truncation_error_bound: (scale * s.bound).abs(),
    }
}

/// Slab geometry in Bohr: (a'', b', c).
fn slab_distances(stack: &DielectricStack, z0: f64) -> (f64, f64, f64) {
    (nm_to_bohr(z0 - stack.a), nm_to_bohr(stack.b - z0), nm_to_bohr(stack.width()))
}

/// Self-potential of a charge `q` (units of e) at `z0` inside the slab,
/// from the grouped closed-form reflection series.
pub fn potential_slab_series(stack: &DielectricStack, z0: f64, q: f64, tol: f64) -> Result<PotentialValue> {
    stack.check_slab_position(z0)?;
    check_tol(tol)?;
    let betas = stack.betas();
    let (b21, b23, x) = (betas.beta_21, betas.beta_23, betas.ratio());
    let (app, bp, c) = slab_distances(stack, z0);
    let rational = RationalBlocks::new(vec![
        (2.0 * x / (2.0 * c), 1.0),
        (b23 / (2.0 * c), bp / c),
        (b21 / (2.0 * c), app / c),
    ]);
    let s = grouped_sum(x, 0, tol, Some(&rational), |n| {
        let nf = n as f64;
        let xn = x.powi(n as i32);
        let t1 = x / ((nf + 1.0) * c);
        let t2 = b23 / (2.0 * nf * c + 2.0 * bp);
        let t3 = b21 / (2.0 * nf * c + 2.0 * app);
        (xn * (t1 + t2 + t3), xn.abs() * (t1.abs() + t2.abs() + t3.abs()))
    })?;
    Ok(to_potential(stack, q, s))
}

/// Self-potential from the explicit image charges of both reflection
/// families, summed in the same reflection-order blocks.
pub fn potential_slab_images(stack: &DielectricStack, z0: f64, q: f64, tol: f64) -> Result<PotentialValue> {
    stack.check_slab_position(z0)?;
    check_tol(tol)?;
    let x = stack.betas().ratio();
    let c = nm_to_bohr(stack.width());
    let mut left = ImageSequence::new(stack, z0, Family::FirstInK1);
    let mut right = ImageSequence::new(stack, z0, Family::FirstInK3);
    let mut block_terms: Vec<Vec<(f64, f64)>> = Vec::new();
    // Block n holds reflection orders 2n+1 and 2n+2 of both families,
    // stored as (charge, distance in Bohr).
    let mut fill = |n: usize, store: &mut Vec<Vec<(f64, f64)>>| {
        while store.len() <= n {
            let mut terms = Vec::with_capacity(4);
            for seq in [&mut left, &mut right] {
                for _ in 0..2 {
                    let im = seq.next().expect("infinite sequence");
                    terms.push((im.q, nm_to_bohr((im.z - z0).abs())));
                }
            }
            store.push(terms);
        }
    };
    fill(0, &mut block_terms);
    let rational = RationalBlocks::new(
        block_terms[0]
            .iter()
            .map(|&(qi, r)| (qi / (2.0 * c), r / (2.0 * c)))
            .collect(),
    );
    let s = grouped_sum(x, 0, tol, Some(&rational), |n| {
        fill(n, &mut block_terms);
        let terms = &block_terms[n];
        let value = terms.iter().map(|&(qi, r)| qi / r).sum();
        let magnitude = terms.iter().map(|&(qi, r)| qi.abs() / r).sum();
        (value, magnitude)
    })?;
    Ok(to_potential(stack, q, s))
}

/// Self-potential of a charge in the left half-space, `dist_a` and `dist_b`
/// being its (positive) distances to the two interfaces.
///
/// V₁ = q/(4πε₀K₁) · (1/β_P) Σₙ (β_N/β_P)ⁿ [β_D/(2nc + 2a) − β_C/(2nc + 2b)].
pub fn potential_left_halfplane(
    stack: &DielectricStack,
    dist_a: f64,
    dist_b: f64,
    q: f64,
    tol: f64,
) -> Result<PotentialValue> {
    check_tol(tol)?;
    let k1 = match stack.k1 {
        DielectricConstant::Finite(v) => v,
        DielectricConstant::Metal => {
            return Err(Error::InvalidStack("a charge cannot sit inside a metal half-space".into()))
        }
    };
    if !(dist_a > 0.0) {
        return Err(Error::Domain(format!("distance to the first interface must be positive, got {dist_a}")));
    }
    let c_nm = stack.width();
    if (dist_b - dist_a - c_nm).abs() > 1e-9 * dist_b.max(c_nm) {
        return Err(Error::Domain(format!(
            "dist_b ({dist_b}) must equal dist_a + gap ({})",
            dist_a + c_nm
        )));
    }
    let betas = stack.betas();
    let x = betas.ratio();
    let (d, cc) = (betas.beta_d / betas.beta_p, betas.beta_c / betas.beta_p);
    let (da, db, c) = (nm_to_bohr(dist_a), nm_to_bohr(dist_b), nm_to_bohr(c_nm));
    let s = grouped_sum(x, 0, tol, None, |n| {
        let nf = n as f64;
        let xn = x.powi(n as i32);
        let near = d / (2.0 * nf * c + 2.0 * da);
        let far = cc / (2.0 * nf * c + 2.0 * db);
        (xn * (near - far), xn.abs() * (near.abs() + far.abs()))
    })?;
    let scale = q / k1 * HARTREE_EV;
    Ok(PotentialValue {
        v: scale * s.value,
        terms_used: s.blocks,
        truncation_error_bound: (scale * s.bound).abs(),
    })
}

/// Self-potential of a charge at distance `dist` from a single planar
/// interface between its host `k_host` and `k_wall`.
pub fn potential_single_interface(k_host: f64, k_wall: DielectricConstant, dist: f64, q: f64) -> Result<f64> {
    if !(dist > 0.0) {
        return Err(Error::Domain(format!("distance must be positive, got {dist}")));
    }
    let r = k_wall.reflection_from(k_host);
    Ok(q / k_host * r / (2.0 * nm_to_bohr(dist)) * HARTREE_EV)
}

/// Interaction energy (eV) between the images on the left of the slab and
/// those on the right, for a charge `q` at `z0`. Pairs involving the real
/// charge and same-side pairs are not counted.
///
/// Pairing left block n with right block m only depends on s = n + m, so the
/// double sum collapses to Σ_s (s+1)·G(s).
pub fn plate_plate_energy(stack: &DielectricStack, z0: f64, q: f64, tol: f64) -> Result<f64> {
    stack.check_slab_position(z0)?;
    check_tol(tol)?;
    let betas = stack.betas();
    let (b21, b23, x) = (betas.beta_21, betas.beta_23, betas.ratio());
    let (app, bp, c) = slab_distances(stack, z0);
    let (alpha, beta) = (app / c, bp / c);
    // (s+1)·G(s) for ratio 1, written as Σ w / (s + p).
    let rational = RationalBlocks::new(vec![
        (-b21 * alpha / (2.0 * c), 1.0 + alpha),
        (-b23 * beta / (2.0 * c), 1.0 + beta),
        (-x / (2.0 * c), 2.0),
    ]);
    let s = grouped_sum(x, 1, tol, Some(&rational), |s| {
        let sf = s as f64;
        let w = (sf + 1.0) * x.powi(s as i32 + 1);
        let t = [
            1.0 / (2.0 * (sf + 1.0) * c),
            b21 / (2.0 * app + 2.0 * (sf + 1.0) * c),
            b23 / (2.0 * bp + 2.0 * (sf + 1.0) * c),
            x / (2.0 * (sf + 2.0) * c),
        ];
        (w * t.iter().sum::<f64>(), w.abs() * t.iter().map(|v| v.abs()).sum::<f64>())
    })?;
    Ok(hartree_to_ev(q * q / stack.k2_value() * s.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrostatics::images::{generate_images, Side};
    use crate::electrostatics::DielectricConstant::{Finite, Metal};

    fn stack(k1: DielectricConstant, k2: f64, k3: DielectricConstant, a: f64, b: f64) -> DielectricStack {
        DielectricStack::new(k1, Finite(k2), k3, a, b).unwrap()
    }

    #[test]
    fn uniform_medium_has_no_self_potential() {
        let s = stack(Finite(3.0), 3.0, Finite(3.0), 0.0, 2.0);
        assert_eq!(potential_slab_series(&s, 0.7, -1.0, DEFAULT_TOL).unwrap().v, 0.0);
        assert_eq!(potential_slab_images(&s, 0.7, -1.0, DEFAULT_TOL).unwrap().v, 0.0);
    }

    #[test]
    fn matched_left_layer_is_single_image() {
        let s = stack(Finite(2.0), 2.0, Finite(7.0), 0.0, 1.5);
        let v = potential_slab_series(&s, 0.4, 1.0, DEFAULT_TOL).unwrap().v;
        let beta23 = (2.0 - 7.0) / 9.0;
        let exact = 1.0 / 2.0 * beta23 / (2.0 * nm_to_bohr(1.1)) * HARTREE_EV;
        assert!((v - exact).abs() <= 1e-12 * exact.abs());
    }

    #[test]
    fn first_block_matches_first_order_images() {
        // Only the two first-order images: truncate at one block and drop order-2 terms.
        let s = stack(Finite(2.0), 1.0, Finite(5.0), 0.0, 1.0);
        let z0 = 0.4;
        let direct: f64 = generate_images(&s, z0, 1)
            .unwrap()
            .iter()
            .map(|im| im.q / nm_to_bohr((im.z - z0).abs()))
            .sum();
        let (b21, b23) = (-1.0 / 3.0, -2.0 / 3.0);
        let closed = b21 / nm_to_bohr(0.8) + b23 / nm_to_bohr(1.2);
        assert_eq!(direct, closed);
    }

    #[test]
    fn double_metal_is_binding_and_symmetric() {
        let s = stack(Metal, 1.0, Metal, 0.0, 1.6);
        for &z in &[0.05, 0.3, 0.8, 1.1] {
            let v = potential_slab_series(&s, z, -1.0, DEFAULT_TOL).unwrap();
            let m = potential_slab_series(&s, 1.6 - z, -1.0, DEFAULT_TOL).unwrap();
            assert!(-v.v < 0.0);
            assert!((v.v - m.v).abs() <= 1e-13 * v.v.abs());
            assert!(v.terms_used < 10_000);
        }
    }

    #[test]
    fn double_metal_midpoint_closed_form() {
        // At mid-gap the ratio-1 series sums to −2 ln 2 / c.
        let s = stack(Metal, 1.0, Metal, 0.0, 2.0);
        let v = potential_slab_series(&s, 1.0, 1.0, 1e-13).unwrap();
        let exact = -2.0 * std::f64::consts::LN_2 / nm_to_bohr(2.0) * HARTREE_EV;
        assert!((v.v - exact).abs() < 1e-11 * exact.abs(), "{} vs {}", v.v, exact);
    }

    #[test]
    fn series_and_images_agree_on_metal_stacks() {
        let s = stack(Finite(12.9), 1.0, Metal, -1.0, 3.0);
        let a = potential_slab_series(&s, 0.2, -1.0, DEFAULT_TOL).unwrap();
        let b = potential_slab_images(&s, 0.2, -1.0, DEFAULT_TOL).unwrap();
        assert!((a.v - b.v).abs() <= 1e-12 * a.v.abs());
    }

    #[test]
    fn singular_positions_rejected() {
        let s = stack(Metal, 1.0, Metal, 0.0, 1.0);
        assert!(matches!(
            potential_slab_series(&s, 1e-6, -1.0, DEFAULT_TOL),
            Err(Error::Singularity { .. })
        ));
        assert!(matches!(
            potential_slab_images(&s, 2.0, -1.0, DEFAULT_TOL),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn left_halfplane_limits() {
        // K1 = K2: image of the far wall only.
        let s = stack(Finite(4.0), 4.0, Finite(9.0), 0.0, 2.0);
        let v = potential_left_halfplane(&s, 0.5, 2.5, 1.0, DEFAULT_TOL).unwrap().v;
        let exact = 1.0 / 4.0 * (4.0 - 9.0) / 13.0 / (2.0 * nm_to_bohr(2.5)) * HARTREE_EV;
        assert!((v - exact).abs() < 1e-12 * exact.abs());
        // Zero width limit reproduces the single interface against K3.
        let s = stack(Finite(12.9), 1.0, Metal, 0.0, 1e-9);
        let v = potential_left_halfplane(&s, 0.5, 0.5 + 1e-9, 1.0, DEFAULT_TOL).unwrap().v;
        let exact = potential_single_interface(12.9, Metal, 0.5, 1.0).unwrap();
        assert!((v - exact).abs() < 1e-7 * exact.abs());
    }

    #[test]
    fn left_halfplane_matches_reflection_oracle() {
        // Reflection at the first interface plus the field transmitted into
        // the slab, bounced off the far wall and transmitted back.
        let oracle = |k1: f64, k2: f64, k3: DielectricConstant, da: f64, c: f64| {
            let r12 = (k1 - k2) / (k1 + k2);
            let r23 = k3.reflection_from(k2);
            let (da, c) = (nm_to_bohr(da), nm_to_bohr(c));
            let mut total = r12 / (2.0 * da);
            let mut amp = (1.0 + r12) * (1.0 - r12) * r23;
            for n in 0..20_000 {
                total += amp / (2.0 * da + 2.0 * (n as f64 + 1.0) * c);
                amp *= -r12 * r23;
            }
            total / k1 * HARTREE_EV
        };
        for (k1, k2, k3) in [(12.9, 1.0, Metal), (1.0, 1.7, Metal), (3.0, 8.0, Finite(2.0))] {
            let s = stack(Finite(k1), k2, k3, 0.0, 1.3);
            let v = potential_left_halfplane(&s, 0.7, 2.0, 1.0, 1e-14).unwrap().v;
            let o = oracle(k1, k2, k3, 0.7, 1.3);
            assert!((v - o).abs() < 1e-12 * o.abs(), "{v} vs {o}");
        }
    }

    #[test]
    fn left_halfplane_rejects_bad_geometry() {
        let s = stack(Finite(2.0), 1.0, Metal, 0.0, 1.0);
        assert!(potential_left_halfplane(&s, 0.0, 1.0, 1.0, DEFAULT_TOL).is_err());
        assert!(potential_left_halfplane(&s, 0.5, 2.0, 1.0, DEFAULT_TOL).is_err());
        let m = stack(Metal, 1.0, Metal, 0.0, 1.0);
        assert!(potential_left_halfplane(&m, 0.5, 1.5, 1.0, DEFAULT_TOL).is_err());
    }

    #[test]
    fn plate_plate_vanishes_without_right_images() {
        let s = stack(Metal, 1.0, Finite(1.0), 0.0, 1.0);
        assert_eq!(plate_plate_energy(&s, 0.3, -1.0, DEFAULT_TOL).unwrap(), 0.0);
    }

    fn brute_plate_plate(s: &DielectricStack, z0: f64, order: usize, max_block_sum: Option<usize>) -> f64 {
        let images = generate_images(s, z0, order).unwrap();
        let block = |o: usize| (o - 1) / 2;
        let mut total = 0.0;
        for l in images.iter().filter(|i| i.side == Side::LeftOfA) {
            for r in images.iter().filter(|i| i.side == Side::RightOfB) {
                if let Some(m) = max_block_sum {
                    if block(l.order) + block(r.order) > m {
                        continue;
                    }
                }
                total += l.q * r.q / nm_to_bohr(r.z - l.z);
            }
        }
        hartree_to_ev(total / s.k2_value())
    }

    #[test]
    fn plate_plate_matches_pair_loop_for_dielectrics() {
        let s = stack(Finite(2.0), 1.0, Finite(5.0), 0.0, 1.0);
        for &z0 in &[0.2, 0.5, 0.77] {
            let fast = plate_plate_energy(&s, z0, 1.0, 1e-14).unwrap();
            let brute = brute_plate_plate(&s, z0, 100, None);
            assert!((fast - brute).abs() < 1e-12 * brute.abs(), "{fast} vs {brute}");
        }
    }

    #[test]
    fn plate_plate_metal_peak_and_symmetry() {
        let s = stack(Metal, 1.0, Metal, 0.0, 0.75);
        let mid = plate_plate_energy(&s, 0.375, -1.0, DEFAULT_TOL).unwrap();
        assert!(mid > 0.0);
        for &z in &[0.05, 0.2, 0.3] {
            let u = plate_plate_energy(&s, z, -1.0, DEFAULT_TOL).unwrap();
            let m = plate_plate_energy(&s, 0.75 - z, -1.0, DEFAULT_TOL).unwrap();
            assert!(u < mid);
            assert!((u - m).abs() < 1e-12 * u.abs());
        }
        // The truncated pair loop converges toward the Euler-Maclaurin total.
        let brute = brute_plate_plate(&s, 0.3, 400, Some(199));
        let fast = plate_plate_energy(&s, 0.3, 1.0, 1e-13).unwrap();
        assert!(brute < fast && (fast - brute) / fast < 0.05, "{brute} {fast}");
    }
}
