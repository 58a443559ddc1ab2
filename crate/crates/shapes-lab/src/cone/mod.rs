//! Sphere cone metrics glued from Euclidean triangles.
//!
//! Half-edge `3t + i` carries the vector from corner `i` to corner `i + 1` of triangle `t`,
//! written in that triangle's own frame. Gluing `h` to `g` identifies the two sides by the
//! rotation `rho` with `e_g = -rho e_h`.

pub mod cocycle;
pub mod collapse;
pub mod collision;
pub mod darts;
pub mod delaunay;
pub mod geodesic;
pub mod polygon;
pub mod sample;
pub mod schwarzian;
pub mod star;
pub mod unit;

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::eisenstein::{EisensteinInt as Eis, UNITS};
use crate::error::{Error, Result};
use crate::mesh::{prev, TriangulationMesh};

pub const TOL: f64 = 1e-9;
pub const UNGLUED: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct ConeSurface {
    pub edges: Vec<Complex64>,
    /// Exact edge vectors when every triangle is a lattice triangle.
    pub lattice: Option<Vec<Eis>>,
    pub twin: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceReport {
    pub vertices: usize,
    pub faces: usize,
    pub euler: i64,
    pub curvature_sum: f64,
    pub failures: Vec<String>,
}

impl SurfaceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for SurfaceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "V={} F={} euler={} curvature/pi={:.12}",
            self.vertices,
            self.faces,
            self.euler,
            self.curvature_sum / PI
        )?;
        if self.passed() {
            write!(f, " pass")
        } else {
            write!(f, " fail({})", self.failures.join("; "))
        }
    }
}

pub(crate) fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

pub(crate) fn dot(u: Complex64, v: Complex64) -> f64 {
    u.re * v.re + u.im * v.im
}

/// Angle of `z` in `[0, 2 pi)`.
pub(crate) fn arg_pos(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

impl ConeSurface {
    pub fn from_float(edges: Vec<Complex64>, twin: Vec<usize>) -> Self {
        Self {
            edges,
            lattice: None,
            twin,
        }
    }

    pub fn from_lattice(lattice: Vec<Eis>, twin: Vec<usize>) -> Self {
        Self {
            edges: lattice.iter().map(|z| z.embed()).collect(),
            lattice: Some(lattice),
            twin,
        }
    }

    /// Exact surface of a lattice mesh; meshes without charts get unit equilateral triangles.
    /// Clockwise charts are reflected.
    pub fn from_mesh(mesh: &TriangulationMesh) -> Self {
        let unit = [Eis::new(0, 0), UNITS[0], UNITS[1]];
        let lattice = (0..mesh.face_count())
            .flat_map(|t| {
                let mut c = mesh.charts.as_ref().map_or(unit, |c| c[t]);
                // mirrored charts are clockwise
                if (c[1] - c[0]).cross2(c[2] - c[0]) < 0 {
                    c = c.map(|z| z.conj());
                }
                [c[1] - c[0], c[2] - c[1], c[0] - c[2]]
            })
            .collect();
        Self::from_lattice(lattice, mesh.twin.clone())
    }

    pub fn face_count(&self) -> usize {
        self.edges.len() / 3
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice.is_some()
    }

    /// Drops the exact coordinates.
    pub fn to_float(&self) -> Self {
        Self {
            edges: self.edges.clone(),
            lattice: None,
            twin: self.twin.clone(),
        }
    }

    /// Rotation carrying vectors in the frame of `h` to the frame of its twin.
    pub fn transition(&self, h: usize) -> Complex64 {
        let r = -self.edges[self.twin[h]] / self.edges[h];
        r / r.norm()
    }

    pub fn transition_exact(&self, h: usize) -> Option<Eis> {
        let l = self.lattice.as_ref()?;
        (-l[self.twin[h]]).div_exact(l[h]).filter(|u| u.is_unit())
    }

    pub fn edge_length(&self, h: usize) -> f64 {
        self.edges[h].norm()
    }

    /// Corner orbit label of the origin of every half-edge.
    pub fn vertex_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.twin.len()];
        let mut count = 0;
        for s in 0..self.twin.len() {
            if label[s] != usize::MAX {
                continue;
            }
            let mut h = s;
            loop {
                label[h] = count;
                let g = self.twin[prev(h)];
                if g == UNGLUED {
                    break;
                }
                h = g;
                if h == s || label[h] != usize::MAX {
                    break;
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels().1
    }

    pub fn origin(&self, h: usize) -> usize {
        self.vertex_labels().0[h]
    }

    /// Outgoing half-edges at the origin of `h`, counterclockwise starting at `h`.
    pub fn fan(&self, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut g = self.twin[prev(h)];
        while g != h {
            out.push(g);
            g = self.twin[prev(g)];
        }
        out
    }

    /// Interior angle of the triangle at the origin of `h`.
    pub fn corner_angle(&self, h: usize) -> f64 {
        let u = self.edges[h];
        let v = -self.edges[prev(h)];
        cross(u, v).atan2(dot(u, v))
    }

    pub fn vertex_angles(&self) -> Vec<f64> {
        let (label, n) = self.vertex_labels();
        let mut a = vec![0.0; n];
        for h in 0..self.edges.len() {
            a[label[h]] += self.corner_angle(h);
        }
        a
    }

    pub fn curvatures(&self) -> Vec<f64> {
        self.vertex_angles().into_iter().map(|a| TAU - a).collect()
    }

    /// Cone angles as exact multiples of `pi/3` for lattice surfaces.
    pub fn exact_cone_angles(&self) -> Option<Vec<i64>> {
        self.lattice.as_ref()?;
        let (label, n) = self.vertex_labels();
        let mut seen = vec![false; n];
        let mut out = vec![0; n];
        for h in 0..self.edges.len() {
            let v = label[h];
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let mut rot = UNITS[0];
            let mut angle = 0.0;
            for g in self.fan(h) {
                angle += self.corner_angle(g);
                rot = rot * self.transition_exact(prev(g))?;
            }
            let k = (angle / (PI / 3.0)).round() as i64;
            // the holonomy rotation is the inverse of the accumulated frame change
            let unit = rot.conj().unit_index()? as i64;
            if k.rem_euclid(6) != unit {
                return None;
            }
            out[v] = k;
        }
        Some(out)
    }

    /// Vertices with nonzero curvature.
    pub fn cone_points(&self) -> Vec<usize> {
        self.curvatures()
            .iter()
            .enumerate()
            .filter(|(_, k)| k.abs() > 1e-7)
            .map(|(v, _)| v)
            .collect()
    }

    /// Rotation angle in `[0, 2 pi)` picked up by developing the fan around `v`.
    pub fn holonomy(&self, v: usize) -> Result<f64> {
        let (label, _) = self.vertex_labels();
        let h = label
            .iter()
            .position(|&l| l == v)
            .ok_or_else(|| Error::Surface(format!("no vertex {v}")))?;
        let mut m = Complex64::new(1.0, 0.0);
        for g in self.fan(h) {
            m /= self.transition(prev(g));
        }
        let mut angle = arg_pos(m);
        if angle > TAU - 1e-9 {
            angle = 0.0;
        }
        Ok(angle)
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        cross(self.edges[3 * t], self.edges[3 * t + 1]) / 2.0
    }

    pub fn area(&self) -> f64 {
        (0..self.face_count()).map(|t| self.triangle_area(t)).sum()
    }

    /// Number of unit lattice triangles, for lattice surfaces.
    pub fn unit_area(&self) -> Option<i128> {
        let l = self.lattice.as_ref()?;
        Some(
            (0..self.face_count())
                .map(|t| l[3 * t].cross2(l[3 * t + 1]))
                .sum(),
        )
    }

    pub fn validate(&self) -> SurfaceReport {
        let hn = self.edges.len();
        let faces = hn / 3;
        let mut failures = Vec::new();
        if !hn.is_multiple_of(3) || self.twin.len() != hn {
            failures.push("half-edge tables have inconsistent sizes".into());
            return SurfaceReport {
                vertices: 0,
                faces,
                euler: 0,
                curvature_sum: 0.0,
                failures,
            };
        }
        let glued = self
            .twin
            .iter()
            .enumerate()
            .all(|(h, &g)| g < hn && g != h && self.twin[g] == h);
        if !glued {
            let h = (0..hn)
                .find(|&h| self.twin[h] >= hn || self.twin[self.twin[h]] != h)
                .unwrap_or(0);
            failures.push(format!("open edge at half-edge {h}"));
        }
        let scale = self
            .edges
            .iter()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
            .max(1e-300);
        for t in 0..faces {
            let s = self.edges[3 * t] + self.edges[3 * t + 1] + self.edges[3 * t + 2];
            if s.norm() > TOL * scale {
                failures.push(format!("triangle {t} does not close"));
            }
            if self.triangle_area(t) <= 0.0 {
                failures.push(format!("triangle {t} is not positively oriented"));
            }
        }
        if let Some(l) = &self.lattice {
            for t in 0..faces {
                if !(l[3 * t] + l[3 * t + 1] + l[3 * t + 2]).is_zero() {
                    failures.push(format!("lattice triangle {t} does not close"));
                }
            }
        }
        if !glued {
            return SurfaceReport {
                vertices: 0,
                faces,
                euler: 0,
                curvature_sum: 0.0,
                failures,
            };
        }
        for h in 0..hn {
            let g = self.twin[h];
            let ok = match &self.lattice {
                Some(l) => l[h].norm() == l[g].norm(),
                None => (self.edges[h].norm() - self.edges[g].norm()).abs() <= TOL * scale,
            };
            if !ok {
                failures.push(format!("glued sides {h} and {g} differ in length"));
                break;
            }
        }
        let vertices = self.vertex_count();
        let euler = vertices as i64 - (hn / 2) as i64 + faces as i64;
        if euler != 2 {
            failures.push(format!("euler characteristic {euler}"));
        }
        let curvature_sum: f64 = self.curvatures().iter().sum();
        if (curvature_sum - 2.0 * TAU).abs() > TOL * faces.max(1) as f64 {
            failures.push(format!("total curvature {curvature_sum} is not 4 pi"));
        }
        if self.lattice.is_some() && self.exact_cone_angles().is_none() {
            failures.push("lattice gluing is not by unit rotations".into());
        }
        SurfaceReport {
            vertices,
            faces,
            euler,
            curvature_sum,
            failures,
        }
    }

    /// Line-based text: a mode line, one `tri` line per triangle (edges 0 and 1), one `glue` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match &self.lattice {
            Some(l) => {
                s.push_str("mode lattice\n");
                for t in 0..self.face_count() {
                    writeln!(s, "tri {} {}", l[3 * t], l[3 * t + 1]).unwrap();
                }
            }
            None => {
                s.push_str("mode float\n");
                for t in 0..self.face_count() {
                    let (a, b) = (self.edges[3 * t], self.edges[3 * t + 1]);
                    writeln!(s, "tri {:?} {:?} {:?} {:?}", a.re, a.im, b.re, b.im).unwrap();
                }
            }
        }
        for h in 0..self.twin.len() {
            let g = self.twin[h];
            if g != UNGLUED && h < g {
                writeln!(s, "glue {h} {g}").unwrap();
            }
        }
        s
    }

    /// Parses [`to_text`](Self::to_text) output; missing glue lines leave sides open for `validate`.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lattice_mode = None;
        let mut lattice = Vec::new();
        let mut edges = Vec::new();
        let mut glue = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Surface(format!("line {}: cannot parse {raw:?}", i + 1));
            let mut it = line.split_whitespace();
            match it.next() {
                Some("mode") => {
                    lattice_mode = Some(match it.next() {
                        Some("lattice") => true,
                        Some("float") => false,
                        _ => return Err(bad()),
                    })
                }
                Some("tri") => {
                    let rest: Vec<&str> = it.collect();
                    match lattice_mode {
                        Some(true) => {
                            let [a, b] = rest[..] else { return Err(bad()) };
                            let a: Eis = a.parse().map_err(|_| bad())?;
                            let b: Eis = b.parse().map_err(|_| bad())?;
                            lattice.extend([a, b, -(a + b)]);
                        }
                        Some(false) => {
                            let v: Vec<f64> = rest
                                .iter()
                                .map(|x| x.parse::<f64>())
                                .collect::<std::result::Result<_, _>>()
                                .map_err(|_| bad())?;
                            let [ar, ai, br, bi] = v[..] else {
                                return Err(bad());
                            };
                            let (a, b) = (Complex64::new(ar, ai), Complex64::new(br, bi));
                            edges.extend([a, b, -(a + b)]);
                        }
                        None => return Err(Error::Surface("tri before mode line".into())),
                    }
                }
                Some("glue") => {
                    let v: Vec<usize> = it
                        .map(|x| x.parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad())?;
                    let [h, g] = v[..] else { return Err(bad()) };
                    glue.push((h, g));
                }
                _ => return Err(bad()),
            }
        }
        let hn = if lattice_mode == Some(true) {
            lattice.len()
        } else {
            edges.len()
        };
        let mut twin = vec![UNGLUED; hn];
        for (h, g) in glue {
            if h >= hn || g >= hn || twin[h] != UNGLUED || twin[g] != UNGLUED || h == g {
                return Err(Error::Surface(format!("bad glue {h} {g}")));
            }
            twin[h] = g;
            twin[g] = h;
        }
        Ok(if lattice_mode == Some(true) {
            Self::from_lattice(lattice, twin)
        } else {
            Self::from_float(edges, twin)
        })
    }

    /// Combinatorics as a mesh; vertex labels are corner orbits.
    pub fn to_mesh(&self) -> Result<TriangulationMesh> {
        TriangulationMesh::from_twins(self.twin.clone())
    }

    /// Half-edges whose twin lies in the same triangle.
    pub fn is_self_glued(&self, h: usize) -> bool {
        self.twin[h] / 3 == h / 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexagon::{envelope, HexagonParams};
    use crate::mesh::{icosahedron, octahedron};
    use crate::triangulations::gen_p345;

    #[test]
    fn octahedron_holonomy() {
        let s = ConeSurface::from_mesh(&octahedron());
        assert!(s.validate().passed());
        for v in 0..6 {
            assert!((s.holonomy(v).unwrap() - 4.0 * PI / 3.0).abs() < 1e-12);
        }
        assert_eq!(s.exact_cone_angles().unwrap(), vec![4; 6]);
    }

    #[test]
    fn flat_vertex_has_trivial_holonomy() {
        let s = ConeSurface::from_mesh(&envelope(&HexagonParams::new(3, 1, 1, 1)).unwrap());
        let angles = s.exact_cone_angles().unwrap();
        let flat = angles.iter().position(|&k| k == 6).unwrap();
        assert_eq!(s.holonomy(flat).unwrap(), 0.0);
    }

    #[test]
    fn valence_one_vertex_turns_by_a_sixth() {
        let m = gen_p345(UNITS[0]).unwrap();
        let s = ConeSurface::from_mesh(&m);
        let v = m.valences().iter().position(|&d| d == 1).unwrap();
        assert!((s.holonomy(v).unwrap() - PI / 3.0).abs() < 1e-12);
        assert!((s.curvatures()[v] - 5.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_bonnet_on_lattice_meshes() {
        for m in [
            icosahedron(),
            octahedron(),
            gen_p345(Eis::new(1, 1)).unwrap(),
        ] {
            let s = ConeSurface::from_mesh(&m);
            let k: i64 = s.exact_cone_angles().unwrap().iter().map(|a| 6 - a).sum();
            assert_eq!(k, 12);
            assert!(s.validate().passed());
        }
    }

    #[test]
    fn text_round_trip() {
        let s = ConeSurface::from_mesh(&octahedron());
        assert_eq!(ConeSurface::from_text(&s.to_text()).unwrap(), s);
        let f = s.to_float();
        assert_eq!(ConeSurface::from_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn missing_glue_is_reported() {
        let s = ConeSurface::from_mesh(&octahedron());
        let text = s.to_text();
        let first = text
            .lines()
            .find(|l| l.starts_with("glue"))
            .unwrap()
            .to_string();
        let text: String = text
            .lines()
            .filter(|l| *l != first)
            .map(|l| format!("{l}\n"))
            .collect();
        let t = ConeSurface::from_text(&text).unwrap();
        let r = t.validate();
        assert!(!r.passed());
        assert!(r.failures[0].contains("open edge"), "{r}");
    }
}
