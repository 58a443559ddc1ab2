//! Random positively curved cone surfaces, built as glued stars over perturbed regular polygons.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;

use super::delaunay::delaunay;
use super::star::{star_from_polygon, StarPolygon};
use super::ConeSurface;
use crate::error::{Error, Result};

/// A star with `tips` tips whose base and inner curvatures are all positive.
pub fn random_star<R: Rng>(rng: &mut R, tips: usize) -> Result<StarPolygon> {
    if tips < 3 {
        return Err(Error::Invalid(
            "random stars need at least three tips".into(),
        ));
    }
    for _ in 0..1000 {
        let base: Vec<Complex64> = (0..tips)
            .map(|j| {
                let a = TAU * (j as f64 + rng.random_range(-0.2..0.2)) / tips as f64;
                Complex64::from_polar(rng.random_range(0.8..1.2), a)
            })
            .collect();
        let base_curv = rng.random_range(0.3..TAU - 0.3);
        let u: Vec<f64> = (0..tips).map(|_| rng.random_range(0.5..1.5)).collect();
        let total: f64 = u.iter().sum();
        let alpha: Vec<f64> = u
            .iter()
            .map(|x| x * (2.0 * TAU - base_curv) / total)
            .collect();
        if alpha
            .iter()
            .any(|&a| !(0.1..TAU - 0.1).contains(&a) || (a - PI).abs() < 1e-3)
        {
            continue;
        }
        if let Ok(s) = star_from_polygon(&base, &alpha) {
            return Ok(s);
        }
    }
    Err(Error::Invalid("no random star found".into()))
}

/// Delaunay surface with `n` cone points, all positively curved.
pub fn random_surface<R: Rng>(rng: &mut R, n: usize) -> Result<ConeSurface> {
    if n < 4 {
        return Err(Error::Invalid(
            "random surfaces need at least four cone points".into(),
        ));
    }
    delaunay(&random_star(rng, n - 1)?.glue()?)
}
