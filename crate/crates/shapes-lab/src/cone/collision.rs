//! Cone angles created when cone points collide, in exact fractions of a full turn.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Turns = Ratio<i64>;

/// Cone angle after merging two points of curvature `a` and `b` (fractions of a turn).
/// Equal curvatures give the half-angle of the quotient by their exchange.
pub fn collision_cone_angle(a: Turns, b: Turns) -> Result<Turns> {
    let one = Turns::from_integer(1);
    if a + b >= one {
        return Err(Error::NoCollision);
    }
    Ok(if a == b {
        Turns::new(1, 2) - a
    } else {
        one - a - b
    })
}

/// [`collision_cone_angle`] in radians.
pub fn collision_cone_angle_f64(a: f64, b: f64) -> Result<f64> {
    use std::f64::consts::{PI, TAU};
    if a + b >= TAU {
        return Err(Error::NoCollision);
    }
    Ok(if a == b { PI - a } else { TAU - a - b })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    /// Cone angle of the merged point, in turns.
    pub cone_angle: Turns,
    /// Number of permutations preserving the curvatures.
    pub symmetry: u64,
    pub complex_link: Turns,
    pub real_link: Turns,
    /// Inverse of the real link volume, when it is an integer.
    pub local_order: Option<i64>,
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Link fractions of the stratum where all points with curvatures `kappa` (in turns) meet.
pub fn multi_collision(kappa: &[Turns]) -> Result<Collision> {
    if kappa.len() < 2 {
        return Err(Error::NoCollision);
    }
    let zero = Turns::from_integer(0);
    let one = Turns::from_integer(1);
    if kappa.iter().any(|&k| k <= zero || k >= one) {
        return Err(Error::Invalid(
            "curvatures must lie strictly between 0 and one turn".into(),
        ));
    }
    let gamma = one - kappa.iter().copied().sum::<Turns>();
    if gamma <= zero {
        return Err(Error::NoCollision);
    }
    let mut sorted = kappa.to_vec();
    sorted.sort();
    let mut symmetry = 1;
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            symmetry *= factorial(run);
            run = 1;
        }
    }
    symmetry *= factorial(run);
    let j = (kappa.len() - 1) as i32;
    let n = Turns::from_integer(symmetry as i64);
    let complex_link = gamma.pow(j - 1) / n;
    let real_link = gamma.pow(j) / n;
    let inv = real_link.recip();
    let local_order = inv.is_integer().then(|| inv.to_integer());
    Ok(Collision {
        cone_angle: gamma,
        symmetry,
        complex_link,
        real_link,
        local_order,
    })
}
