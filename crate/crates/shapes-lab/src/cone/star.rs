//! Star polygons: a disk whose boundary alternates tips (copies of one base cone point) and
//! inner cone points, with the two sides at each inner vertex glued by a fold.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use super::polygon::{ear_clip, is_simple_ccw, segments_meet};
use super::{arg_pos, ConeSurface};
use crate::eisenstein::EisensteinInt as Eis;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct StarPolygon {
    /// Counterclockwise: tip 0, inner 0, tip 1, inner 1, ...
    pub vertices: Vec<Complex64>,
    pub exact: Option<Vec<Eis>>,
}

/// Interior angle at vertex `i` of a counterclockwise polygon.
pub fn interior_angle(p: &[Complex64], i: usize) -> f64 {
    let n = p.len();
    let (prev, cur, next) = (p[(i + n - 1) % n], p[i], p[(i + 1) % n]);
    arg_pos((prev - cur) / (next - cur))
}

impl StarPolygon {
    pub fn from_float(vertices: Vec<Complex64>) -> Self {
        Self {
            vertices,
            exact: None,
        }
    }

    pub fn from_lattice(exact: Vec<Eis>) -> Self {
        Self {
            vertices: exact.iter().map(|z| z.embed()).collect(),
            exact: Some(exact),
        }
    }

    /// Number of tips, which equals the number of inner vertices.
    pub fn tips(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn tip(&self, k: usize) -> Complex64 {
        self.vertices[2 * (k % self.tips())]
    }

    pub fn inner(&self, k: usize) -> Complex64 {
        self.vertices[2 * (k % self.tips()) + 1]
    }

    pub fn tip_angles(&self) -> Vec<f64> {
        (0..self.tips())
            .map(|k| interior_angle(&self.vertices, 2 * k))
            .collect()
    }

    /// Curvatures of the inner cone points.
    pub fn inner_curvatures(&self) -> Vec<f64> {
        (0..self.tips())
            .map(|k| TAU - interior_angle(&self.vertices, 2 * k + 1))
            .collect()
    }

    /// Curvature of the base point, where all tips meet.
    pub fn base_curvature(&self) -> f64 {
        TAU - self.tip_angles().iter().sum::<f64>()
    }

    pub fn area(&self) -> f64 {
        super::polygon::signed_area(&self.vertices)
    }

    /// Simple, counterclockwise, and isosceles at every inner vertex.
    pub fn check(&self) -> Result<()> {
        let n = self.vertices.len();
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::Invalid(
                "a star needs an even number of vertices, at least four".into(),
            ));
        }
        if !is_simple_ccw(&self.vertices) {
            return Err(Error::Invalid(
                "star polygon is not simple and counterclockwise".into(),
            ));
        }
        let scale = self.vertices.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for k in 0..self.tips() {
            let (a, b) = (
                (self.tip(k) - self.inner(k)).norm(),
                (self.tip(k + 1) - self.inner(k)).norm(),
            );
            if (a - b).abs() > 1e-9 * scale {
                return Err(Error::Invalid(format!(
                    "sides at inner vertex {k} differ in length"
                )));
            }
        }
        Ok(())
    }

    /// Triangulates the star and folds the two sides at each inner vertex together.
    pub fn glue(&self) -> Result<ConeSurface> {
        self.check()?;
        let n = self.vertices.len();
        let tris = ear_clip(&self.vertices)?;
        let mut dir: HashMap<(usize, usize), usize> = HashMap::new();
        for (t, f) in tris.iter().enumerate() {
            for i in 0..3 {
                dir.insert((f[i], f[(i + 1) % 3]), 3 * t + i);
            }
        }
        let mut twin = vec![usize::MAX; 3 * tris.len()];
        for (&(a, b), &h) in &dir {
            twin[h] = match dir.get(&(b, a)) {
                Some(&g) => g,
                None if b == (a + 1) % n && a % 2 == 0 => dir[&(b, (b + 1) % n)],
                None => dir[&((a + n - 1) % n, a)],
            };
        }
        let p = &self.vertices;
        let edges = tris
            .iter()
            .flat_map(|f| (0..3).map(move |i| p[f[(i + 1) % 3]] - p[f[i]]))
            .collect();
        Ok(match &self.exact {
            Some(e) => {
                let lattice = tris
                    .iter()
                    .flat_map(|f| (0..3).map(move |i| e[f[(i + 1) % 3]] - e[f[i]]))
                    .collect();
                ConeSurface::from_lattice(lattice, twin)
            }
            None => ConeSurface::from_float(edges, twin),
        })
    }

    /// Boundary of the star with a disk sector of angle equal to the curvature added at each
    /// inner vertex, sampled with `per_arc` points per arc, is a simple curve.
    pub fn flower_is_simple(&self, per_arc: usize) -> bool {
        let mut pts = Vec::new();
        for k in 0..self.tips() {
            let (c, t0, t1) = (self.inner(k), self.tip(k), self.tip(k + 1));
            let (r, a0) = ((t0 - c).norm(), (t0 - c).arg());
            let sweep = arg_pos((t1 - c) / (t0 - c));
            pts.push(t0);
            for j in 1..per_arc {
                pts.push(c + Complex64::from_polar(r, a0 + sweep * j as f64 / per_arc as f64));
            }
        }
        is_simple_ccw(&pts)
    }
}

/// Apex of the isosceles triangle on the side `a -> b` with apex angle `alpha`, pointing into
/// the polygon when `alpha < pi` and out of it when `alpha > pi`.
pub fn notch_apex(a: Complex64, b: Complex64, alpha: f64) -> Complex64 {
    let m = (a + b) / 2.0;
    let half = (b - a) / 2.0;
    m + Complex64::new(0.0, 1.0) * half / (alpha / 2.0).tan()
}

/// Star on the polygon `p` (counterclockwise) with inner curvatures `alpha`, one per side.
pub fn star_from_polygon(p: &[Complex64], alpha: &[f64]) -> Result<StarPolygon> {
    let k = p.len();
    if alpha.len() != k {
        return Err(Error::Invalid("one curvature per polygon side".into()));
    }
    if !is_simple_ccw(p) {
        return Err(Error::Invalid(
            "base polygon is not simple and counterclockwise".into(),
        ));
    }
    if alpha.iter().any(|&a| !(a > 0.0 && a < TAU)) {
        return Err(Error::Invalid("curvatures must lie in (0, 2 pi)".into()));
    }
    let base = 2.0 * TAU - alpha.iter().sum::<f64>();
    if base <= 0.0 {
        return Err(Error::Invalid(format!(
            "base curvature {base} is not positive"
        )));
    }
    let mut q = Vec::with_capacity(2 * k);
    for i in 0..k {
        q.push(p[i]);
        q.push(notch_apex(p[i], p[(i + 1) % k], alpha[i]));
    }
    condition_a(p, &q)?;
    Ok(StarPolygon::from_float(q))
}

/// The notch triangles meet neither each other nor the polygon boundary away from their bases.
fn condition_a(p: &[Complex64], q: &[Complex64]) -> Result<()> {
    let k = p.len();
    let scale = p.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let eps = 1e-12 * scale * scale;
    let tri = |i: usize| [p[i], q[2 * i + 1], p[(i + 1) % k]];
    for i in 0..k {
        let ti = tri(i);
        for j in 0..k {
            // polygon sides other than the base against the two notch sides
            if j != i {
                let (a, b) = (p[j], p[(j + 1) % k]);
                for s in 0..2 {
                    let (c, d) = (ti[s], ti[s + 1]);
                    let shared: Vec<Complex64> =
                        [a, b].into_iter().filter(|x| *x == c || *x == d).collect();
                    let hit = if shared.is_empty() {
                        segments_meet(a, b, c, d, eps)
                    } else {
                        // share a corner: only that corner may be common
                        let o = shared[0];
                        let (x, y) = (if a == o { b } else { a }, if c == o { d } else { c });
                        super::cross(x - o, y - o).abs() <= eps && super::dot(x - o, y - o) > 0.0
                    };
                    if hit {
                        return Err(Error::ConditionA(format!(
                            "triangle {i} meets polygon side {j}"
                        )));
                    }
                }
            }
            if j > i {
                let tj = tri(j);
                let adjacent = j == i + 1 || (i == 0 && j == k - 1);
                for s in 0..2 {
                    for u in 0..2 {
                        let (a, b, c, d) = (ti[s], ti[s + 1], tj[u], tj[u + 1]);
                        let common = [a, b].iter().any(|x| *x == c || *x == d);
                        if adjacent && common {
                            continue;
                        }
                        if segments_meet(a, b, c, d, eps) {
                            return Err(Error::ConditionA(format!(
                                "triangles {i} and {j} intersect"
                            )));
                        }
                    }
                }
            }
        }
    }
    if !is_simple_ccw(q) {
        return Err(Error::ConditionA("notched polygon is not simple".into()));
    }
    Ok(())
}

/// Glues the polygon `p` with notches of curvature `alpha` into a sphere with a cone metric.
pub fn build_from_star(p: &[Complex64], alpha: &[f64]) -> Result<ConeSurface> {
    star_from_polygon(p, alpha)?.glue()
}

/// Regular `k`-gon of circumradius 1, counterclockwise from 1.
pub fn regular_polygon(k: usize) -> Vec<Complex64> {
    (0..k)
        .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / k as f64))
        .collect()
}

/// Lattice star whose notches are equilateral, i.e. every inner curvature is `pi / 3`.
pub fn equilateral_star(p: &[Eis]) -> StarPolygon {
    let k = p.len();
    let mut q = Vec::with_capacity(2 * k);
    for i in 0..k {
        q.push(p[i]);
        q.push(p[i] + crate::eisenstein::OMEGA * (p[(i + 1) % k] - p[i]));
    }
    StarPolygon::from_lattice(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cone_profile(s: &ConeSurface) -> Vec<f64> {
        let mut k: Vec<f64> = s
            .curvatures()
            .into_iter()
            .filter(|k| k.abs() > 1e-7)
            .collect();
        k.sort_by(f64::total_cmp);
        k
    }

    #[test]
    fn cube_like_heptagon() {
        let s = build_from_star(&regular_polygon(7), &[PI / 2.0; 7]).unwrap();
        assert!(s.validate().passed(), "{}", s.validate());
        let k = cone_profile(&s);
        assert_eq!(k.len(), 8);
        assert!(k.iter().all(|x| (x - PI / 2.0).abs() < 1e-9));
    }

    #[test]
    fn square_with_third_turns() {
        let s = build_from_star(&regular_polygon(4), &[2.0 * PI / 3.0; 4]).unwrap();
        assert!(s.validate().passed());
        let k = cone_profile(&s);
        assert_eq!(k.len(), 5);
        assert!((k[4] - 4.0 * PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn overlapping_notches_are_rejected() {
        let p: Vec<Complex64> = [(0., 0.), (4., 0.), (4., 0.3), (0., 0.3)]
            .iter()
            .map(|&(x, y)| Complex64::new(x, y))
            .collect();
        match build_from_star(&p, &[0.4, 1.0, 0.4, 1.0]) {
            Err(Error::ConditionA(m)) => assert!(m.contains("triangle"), "{m}"),
            other => panic!("expected a condition failure, got {other:?}"),
        }
    }

    #[test]
    fn outward_notches() {
        let s = build_from_star(&regular_polygon(6), &[3.8, 2.0, 2.0, 1.8, 1.3, 1.2]).unwrap();
        assert!(s.validate().passed());
        assert_eq!(cone_profile(&s).len(), 7);
    }

    #[test]
    fn base_curvature_of_a_star() {
        let st = star_from_polygon(&regular_polygon(5), &[2.0, 2.2, 2.4, 2.1, 2.3]).unwrap();
        assert!((st.base_curvature() - (2.0 * TAU - 11.0)).abs() < 1e-9);
        assert!(st.flower_is_simple(16));
    }

    /// Nearest lattice point.
    pub(crate) fn round(z: Complex64) -> Eis {
        let b = (2.0 * z.im / 3f64.sqrt()).round();
        Eis::new((z.re - b / 2.0).round() as i64, b as i64)
    }

    #[test]
    fn lattice_star_glues_exactly() {
        let p: Vec<Eis> = regular_polygon(7)
            .into_iter()
            .map(|z| round(z * 40.0))
            .collect();
        let s = equilateral_star(&p).glue().unwrap();
        assert!(s.validate().passed());
        let mut k = s.exact_cone_angles().unwrap();
        k.sort();
        assert_eq!(k, vec![1, 5, 5, 5, 5, 5, 5, 5]);
    }

    #[test]
    fn eleven_gon_gives_the_icosahedral_type_triangulation() {
        // scaled by 1 + w these vertices lie in the index-3 ideal, with its triangles as units
        let p: Vec<Eis> = [
            "4", "2+3w", "4w", "-2+4w", "-4+3w", "-4+1w", "-3-1w", "-1-3w", "2-4w", "3-3w", "4-2w",
        ]
        .iter()
        .map(|t| t.parse().unwrap())
        .collect();
        let st = equilateral_star(&p);
        st.check().unwrap();
        let s = st.glue().unwrap();
        assert_eq!(s.exact_cone_angles().unwrap(), vec![5; 12]);
        let m = crate::cone::unit::unit_mesh(&s).unwrap();
        assert_eq!(m.face_count(), 42);
        let mut want = vec![5; 12];
        want.extend([6; 11]);
        assert_eq!(m.valence_profile(), want);
    }
}
