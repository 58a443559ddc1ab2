//! Logarithmic derivative of the flat developing map on the Riemann sphere.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `sum_i -(k_i / 2 pi) / (z - y_i)` for cone points `y_i` of curvature `k_i`.
pub fn pre_schwarzian(points: &[Complex64], curv: &[f64], z: Complex64) -> Result<Complex64> {
    if points.len() != curv.len() {
        return Err(Error::Invalid("one curvature per point".into()));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for (&y, &k) in points.iter().zip(curv) {
        let d = z - y;
        if d.norm() == 0.0 {
            return Err(Error::Pole);
        }
        s -= (k / TAU) / d;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sample() -> (Vec<Complex64>, Vec<f64>) {
        let y = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(3.0, 1.0),
            Complex64::new(-2.0, 2.5),
            Complex64::new(1.0, -4.0),
        ];
        (y, vec![PI / 2.0, PI, 1.2, 4.0 * PI - 1.5 * PI - 1.2])
    }

    #[test]
    fn residues() {
        let (y, k) = sample();
        let m = 256;
        let mut integral = Complex64::new(0.0, 0.0);
        for j in 0..m {
            let w = Complex64::from_polar(0.5, TAU * j as f64 / m as f64);
            integral += pre_schwarzian(&y, &k, y[0] + w).unwrap() * w * (TAU / m as f64);
        }
        // dz = i w dtheta, so the i cancels against 2 pi i
        let residue = integral / TAU;
        assert!((residue - Complex64::new(-k[0] / TAU, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn decay_at_infinity() {
        let (y, k) = sample();
        let z = Complex64::new(1e6, 0.0);
        let v = pre_schwarzian(&y, &k, z).unwrap() * z;
        assert!((v - Complex64::new(-2.0, 0.0)).norm() < 1e-5);
    }

    #[test]
    fn pole() {
        let (y, k) = sample();
        assert_eq!(pre_schwarzian(&y, &k, y[2]), Err(Error::Pole));
    }
}
