//! Lattice-quotient generators for the nonnegatively curved triangulation families.

use std::fmt::Write as _;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::eisenstein::{EisensteinInt as Eis, OMEGA, ONE, SQRT_MINUS_3, UNITS};
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::mesh::TriangulationMesh;
use crate::quotient::{quotient_mesh, PlaneGroup};

pub use crate::octahedral::{check_embeddable, gen_p2x6, Embeddability, OctahedronParams};

const START: [Eis; 3] = [Eis::new(0, 0), ONE, OMEGA];

fn nonzero(alpha: Eis) -> Result<()> {
    if alpha.is_zero() {
        Err(Error::Invalid("alpha must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// Order-3 rotation group whose rotation centres are the multiples of `alpha`.
pub fn group_444(alpha: Eis) -> Result<PlaneGroup> {
    nonzero(alpha)?;
    let l = Eis::new(2, -1).try_mul(alpha)?;
    PlaneGroup::new(vec![UNITS[0], UNITS[2], UNITS[4]], [l, l.try_mul(OMEGA)?])
}

/// Three valence-2 vertices, `2 |alpha|^2` triangles.
pub fn gen_p444(alpha: Eis) -> Result<TriangulationMesh> {
    let g = group_444(alpha)?;
    quotient_mesh(&g, START, g.triangle_count(), |_, t| Ok(t))
}

/// Valences 1, 2 and 3, `4 |alpha|^2` triangles.
pub fn gen_p345(alpha: Eis) -> Result<TriangulationMesh> {
    nonzero(alpha)?;
    let l = SQRT_MINUS_3.scale(2).try_mul(alpha)?;
    let g = PlaneGroup::new(UNITS.to_vec(), [l, l.try_mul(OMEGA)?])?;
    quotient_mesh(&g, START, g.triangle_count(), |_, t| Ok(t))
}

/// Four valence-3 vertices from the index-`ac` sublattice `<a, b + c w>`.
pub fn gen_p3333(a: i64, b: i64, c: i64) -> Result<TriangulationMesh> {
    if a <= 0 || c <= 0 {
        return Err(Error::Invalid("sublattice needs a, c > 0".into()));
    }
    let g = PlaneGroup::new(
        vec![ONE, -ONE],
        [Eis::new(2 * a, 0), Eis::new(2 * b, 2 * c)],
    )?;
    quotient_mesh(&g, START, g.triangle_count(), |_, t| Ok(t))
}

/// Shape `x + y sqrt(-3)` with exact rational parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub x: Ratio<i128>,
    pub y: Ratio<i128>,
}

impl Shape {
    pub fn re(&self) -> f64 {
        ratio_f64(self.x)
    }

    pub fn im(&self) -> f64 {
        ratio_f64(self.y) * 3f64.sqrt()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re(), self.im())
    }

    fn norm(&self) -> Ratio<i128> {
        self.x * self.x + Ratio::from_integer(3) * self.y * self.y
    }

    /// Standard modular-group reduction: `|z| >= 1`, `-1/2 < Re z <= 1/2`, `Re z >= 0` on the unit circle.
    pub fn sl2z_reduce(mut self) -> Self {
        let half = Ratio::new(1, 2);
        loop {
            self.x -= (self.x + half).floor();
            let n = self.norm();
            if n < Ratio::from_integer(1) {
                self = Self {
                    x: -self.x / n,
                    y: self.y / n,
                };
            } else {
                break;
            }
        }
        if self.x == -half {
            self.x = half;
        }
        if self.norm() == Ratio::from_integer(1) && self.x < Ratio::from_integer(0) {
            self.x = -self.x;
        }
        self
    }
}

fn ratio_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeShape {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub z: Shape,
}

/// One row per index-`n/2` sublattice in Hermite normal form, with its reduced shape.
pub fn enumerate_p3333(n: i64) -> Result<Vec<SublatticeShape>> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Invalid(format!(
            "n = {n} must be even and at least 2"
        )));
    }
    let d = n / 2;
    let mut out = Vec::new();
    for a in (1..=d).filter(|a| d % a == 0) {
        let c = d / a;
        for b in 0..a {
            // (b + c w) / a
            let z = Shape {
                x: Ratio::new(2 * b as i128 + c as i128, 2 * a as i128),
                y: Ratio::new(c as i128, 2 * a as i128),
            };
            out.push(SublatticeShape {
                a,
                b,
                c,
                z: z.sl2z_reduce(),
            });
        }
    }
    Ok(out)
}

pub fn shapes_csv(rows: &[SublatticeShape]) -> String {
    let mut s = String::from("a,b,c,re_z,im_z\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{}",
            r.a,
            r.b,
            r.c,
            sig12(r.z.re()),
            sig12(r.z.im())
        )
        .unwrap();
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NapoleonHexagon {
    /// Counterclockwise, sides `a, b, c, a, b, c` starting at `vertices[0]`.
    pub vertices: [Complex64; 6],
    /// Vertex of the original triangle shared by all six triangles of the fan.
    pub hub: Complex64,
    /// Distance between the start point and the point where the fan closes.
    pub closure: f64,
    /// Centres of the three equilateral triangles of the fan.
    pub equilateral_centers: [Complex64; 3],
}

/// Hexagon built by alternating copies of the triangle `(a, b, c)` with equilateral triangles around one vertex.
pub fn napoleon_hexagon(a: f64, b: f64, c: f64) -> Result<NapoleonHexagon> {
    let ok = a > 0.0 && b > 0.0 && c > 0.0 && a < b + c && b < a + c && c < a + b;
    if !ok {
        return Err(Error::Invalid(format!(
            "degenerate triangle ({a}, {b}, {c})"
        )));
    }
    let angle = |opp: f64, s1: f64, s2: f64| {
        ((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2))
            .clamp(-1.0, 1.0)
            .acos()
    };
    let at_hub = angle(c, a, b);
    let at_y = angle(b, a, c);
    let at_x = angle(a, b, c);
    let third = std::f64::consts::FRAC_PI_3;
    let polar = Complex64::from_polar;
    let x = polar(b, 0.0);
    let y = polar(a, at_hub);
    let z1 = polar(a, at_hub + third);
    let z2 = polar(c, at_hub + third + at_y);
    let z3 = polar(c, at_hub + 2.0 * third + at_y);
    let z4 = polar(b, at_hub + 2.0 * third + at_y + at_x);
    let back = polar(b, at_hub + 3.0 * third + at_y + at_x);
    let hub = Complex64::new(0.0, 0.0);
    Ok(NapoleonHexagon {
        vertices: [y, z1, z2, z3, z4, x],
        hub,
        closure: (back - x).norm(),
        equilateral_centers: [
            (hub + y + z1) / 3.0,
            (hub + z2 + z3) / 3.0,
            (hub + z4 + x) / 3.0,
        ],
    })
}

impl NapoleonHexagon {
    pub fn side_lengths(&self) -> [f64; 6] {
        std::array::from_fn(|i| (self.vertices[(i + 1) % 6] - self.vertices[i]).norm())
    }

    pub fn centroid(&self) -> Complex64 {
        self.vertices.iter().sum::<Complex64>() / 6.0
    }
}
