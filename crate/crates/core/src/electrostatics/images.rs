use serde::Serialize;

use super::dielectric::DielectricStack;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    LeftOfA,
    RightOfB,
}

/// Which interface produced the first reflection of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    FirstInK1,
    FirstInK3,
}

/// A reflection image of the slab charge. `z` is absolute (nm); `q` is in
/// units of the source charge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImageCharge {
    pub z: f64,
    pub q: f64,
    pub side: Side,
    /// Number of reflections that produced this image (1 = first image).
    pub order: usize,
    pub family: Family,
}

/// Alternating reflections of one family, generated one image at a time.
#[derive(Debug, Clone)]
pub struct ImageSequence {
    a: f64,
    b: f64,
    beta_21: f64,
    beta_23: f64,
    family: Family,
    z: f64,
    q: f64,
    order: usize,
}

impl ImageSequence {
    pub fn new(stack: &DielectricStack, z0: f64, family: Family) -> Self {
        let betas = stack.betas();
        Self {
            a: stack.a,
            b: stack.b,
            beta_21: betas.beta_21,
            beta_23: betas.beta_23,
            family,
            z: z0,
            q: 1.0,
            order: 0,
        }
    }
}

impl Iterator for ImageSequence {
    type Item = ImageCharge;

    fn next(&mut self) -> Option<ImageCharge> {
        let reflect_left = match self.family {
            Family::FirstInK1 => self.order.is_multiple_of(2),
            Family::FirstInK3 => self.order % 2 == 1,
        };
        let side = if reflect_left {
            self.z = 2.0 * self.a - self.z;
            self.q *= self.beta_21;
            Side::LeftOfA
        } else {
            self.z = 2.0 * self.b - self.z;
            self.q *= self.beta_23;
            Side::RightOfB
        };
        self.order += 1;
        Some(ImageCharge {
            z: self.z,
            q: self.q,
            side,
            order: self.order,
            family: self.family,
        })
    }
}

/// All images of both families with at most `max_order` reflections,
/// ordered by reflection count and then by family.
pub fn generate_images(stack: &DielectricStack, z0: f64, max_order: usize) -> Result<Vec<ImageCharge>> {
    if !(z0 > stack.a && z0 < stack.b) {
        return Err(Error::Domain(format!(
            "z0 = {z0} nm is not inside the slab ({}, {})",
            stack.a, stack.b
        )));
    }
    if max_order == 0 {
        return Err(Error::InvalidParameter("max_order must be at least 1".into()));
    }
    let left = ImageSequence::new(stack, z0, Family::FirstInK1).take(max_order);
    let right = ImageSequence::new(stack, z0, Family::FirstInK3).take(max_order);
    Ok(left.zip(right).flat_map(|(l, r)| [l, r]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrostatics::DielectricConstant::{Finite, Metal};

    #[test]
    fn single_mirror_each_side() {
        let s = DielectricStack::new(Metal, Finite(1.0), Metal, 0.0, 1.0).unwrap();
        let im = generate_images(&s, 0.5, 1).unwrap();
        assert_eq!(im.len(), 2);
        assert_eq!((im[0].z, im[0].q, im[0].side), (-0.5, -1.0, Side::LeftOfA));
        assert_eq!((im[1].z, im[1].q, im[1].side), (1.5, -1.0, Side::RightOfB));
    }

    #[test]
    fn distance_and_magnitude_law() {
        // Family K1: r = 2ic + 2a'' with β21^(i+1) β23^i, and r = 2(i+1)c with (β21 β23)^(i+1).
        let s = DielectricStack::new(Finite(2.0), Finite(1.0), Finite(5.0), 0.0, 1.0).unwrap();
        let (z0, c) = (0.3, 1.0);
        let (app, bp) = (z0 - s.a, s.b - z0);
        let (b21, b23): (f64, f64) = (-1.0 / 3.0, -2.0 / 3.0);
        for im in generate_images(&s, z0, 12).unwrap() {
            let r = (im.z - z0).abs();
            let i = ((im.order - 1) / 2) as i32;
            let (r_exp, q_exp) = match (im.family, im.order % 2) {
                (Family::FirstInK1, 1) => (2.0 * i as f64 * c + 2.0 * app, b21.powi(i + 1) * b23.powi(i)),
                (Family::FirstInK3, 1) => (2.0 * i as f64 * c + 2.0 * bp, b23.powi(i + 1) * b21.powi(i)),
                (_, _) => (2.0 * (i + 1) as f64 * c, (b21 * b23).powi(i + 1)),
            };
            assert!((r - r_exp).abs() < 1e-12, "order {} r {r} vs {r_exp}", im.order);
            assert!((im.q - q_exp).abs() < 1e-14, "order {} q {} vs {q_exp}", im.order, im.q);
            match im.side {
                Side::LeftOfA => assert!(im.z < s.a),
                Side::RightOfB => assert!(im.z > s.b),
            }
        }
    }

    #[test]
    fn first_order_magnitudes() {
        let s = DielectricStack::new(Finite(2.0), Finite(1.0), Finite(5.0), 0.0, 1.0).unwrap();
        let im = generate_images(&s, 0.5, 1).unwrap();
        assert!((im[0].q + 1.0 / 3.0).abs() < 1e-15 && (0.5 - im[0].z - 1.0).abs() < 1e-15);
        assert!((im[1].q + 2.0 / 3.0).abs() < 1e-15 && (im[1].z - 0.5 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn outside_slab_rejected() {
        let s = DielectricStack::double_metal(1.0).unwrap();
        assert!(generate_images(&s, 1.5, 3).is_err());
        assert!(generate_images(&s, 0.5, 0).is_err());
    }
}
