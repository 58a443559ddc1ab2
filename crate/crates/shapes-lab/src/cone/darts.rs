//! Dart quadrilaterals of a star polygon, their wingtip angles as a measure on chords of the
//! tip polygon, and train-track coordinates of that measure.
//!
//! Tips are numbered `0..m` counterclockwise and inner vertex `i` lies between tips `i` and
//! `i + 1`. Chord `(x, y)` with `x < y` joins two tips; chord `(i, i + 1)` and `(0, m - 1)` are
//! sides. The rotated polygon has the inner vertices as corners, its side `i` running from
//! inner vertex `i` to `i + 1` across tip `i + 1`. Its fan triangulation from inner vertex 0
//! gives the coordinates: the `m` sides, then the diagonals to inner vertices `2..m-1`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::cross;
use super::polygon::{ear_clip, is_simple_ccw};
use super::star::{notch_apex, StarPolygon};
use crate::error::{Error, Result};

pub type Chord = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualVertex {
    /// Circumcenter of a triangle of tips.
    Center(usize),
    /// An inner vertex of the star.
    Inner(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dart {
    pub chord: Chord,
    /// Counterclockwise: tip, dual end, tip, dual end.
    pub corners: [Complex64; 4],
    pub ends: [DualVertex; 2],
    pub theta: f64,
}

impl Dart {
    pub fn area(&self) -> f64 {
        super::polygon::signed_area(&self.corners)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DartMeasure {
    pub tips: usize,
    /// Weight per chord, sorted by chord.
    pub chords: Vec<(Chord, f64)>,
    /// Sums of weights crossing each edge of the fan triangulation of the rotated polygon.
    pub coords: Vec<f64>,
}

fn key(x: usize, y: usize) -> Chord {
    (x.min(y), x.max(y))
}

/// Tip indices on one side of the rotated-polygon edge between inner vertices `a < b`.
fn crosses(chord: Chord, a: usize, b: usize) -> bool {
    let inside = |x: usize| x > a && x <= b;
    inside(chord.0) != inside(chord.1)
}

/// The fan edge behind coordinate `k`, as a pair of inner vertices.
fn fan_edge(m: usize, k: usize) -> (usize, usize) {
    if k < m - 1 {
        (k, k + 1)
    } else if k == m - 1 {
        (0, m - 1)
    } else {
        (0, k - m + 2)
    }
}

impl DartMeasure {
    pub fn from_chords(tips: usize, mut chords: Vec<(Chord, f64)>) -> Self {
        chords.sort_by_key(|a| a.0);
        let n = if tips == 2 { 2 } else { 2 * tips - 3 };
        let coords = (0..n)
            .map(|k| {
                let (a, b) = fan_edge(tips, k);
                chords
                    .iter()
                    .filter(|(c, _)| crosses(*c, a, b))
                    .map(|(_, w)| w)
                    .sum()
            })
            .collect();
        Self {
            tips,
            chords,
            coords,
        }
    }

    /// Decodes chord weights from fan coordinates.
    pub fn from_coords(tips: usize, coords: Vec<f64>) -> Result<Self> {
        let m = tips;
        let scale = coords.iter().map(|x| x.abs()).fold(1.0, f64::max);
        let tol = 1e-9 * scale;
        if m < 2 || coords.len() != if m == 2 { 2 } else { 2 * m - 3 } {
            return Err(Error::Invalid(format!(
                "{} coordinates do not fit {m} tips",
                coords.len()
            )));
        }
        if coords.iter().any(|&x| x < -tol) {
            return Err(Error::Invalid("coordinates must be nonnegative".into()));
        }
        if m == 2 {
            if (coords[0] - coords[1]).abs() > tol {
                return Err(Error::Invalid(
                    "the two sides of a two-tip measure differ".into(),
                ));
            }
            return Ok(Self {
                tips,
                chords: vec![((0, 1), coords[0])],
                coords,
            });
        }
        // diagonal k of the fan, with the first and last being sides
        let diag = |k: usize| {
            if k == 1 {
                coords[0]
            } else if k == m - 1 {
                coords[m - 1]
            } else {
                coords[m + k - 2]
            }
        };
        let name = |k: usize| {
            if k == 1 {
                "side 0".to_string()
            } else if k == m - 1 {
                format!("side {}", m - 1)
            } else {
                format!("diagonal {k}")
            }
        };
        let mut corner = vec![0.0; m];
        for j in 1..m - 1 {
            let (d0, s, d1) = (diag(j), coords[j], diag(j + 1));
            for (lhs, rhs, who) in [(d0 + d1, s, 0), (d0 + s, d1, 1), (s + d1, d0, 2)] {
                if lhs < rhs - tol {
                    let names = [name(j), format!("side {j}"), name(j + 1)];
                    let (a, b, c) = match who {
                        0 => (&names[0], &names[2], &names[1]),
                        1 => (&names[0], &names[1], &names[2]),
                        _ => (&names[1], &names[2], &names[0]),
                    };
                    return Err(Error::Invalid(format!(
                        "triangle inequality fails: {a} + {b} < {c}"
                    )));
                }
            }
            corner[j] = (d0 + d1 - s) / 2.0;
        }
        let mut w = std::collections::BTreeMap::new();
        let mut add = |a: usize, b: usize, x: f64| {
            if x > 0.0 {
                *w.entry(key((a + 1) % m, (b + 1) % m)).or_insert(0.0) += x;
            }
        };
        for a in 0..m - 1 {
            let (mut k, lo, mut hi) = if a == 0 {
                (1, 0.0, diag(1))
            } else {
                (a + 1, corner[a], diag(a + 1))
            };
            if k == m - 1 {
                add(a, m - 1, hi - lo);
                continue;
            }
            while k < m - 1 && hi > lo {
                let c = corner[k];
                add(a, k, hi - lo.max(c));
                hi = hi.min(c);
                k += 1;
                if k == m - 1 {
                    add(a, m - 1, hi - lo);
                }
            }
        }
        let chords: Vec<(Chord, f64)> = w.into_iter().filter(|&(_, x)| x > tol).collect();
        let decoded = Self::from_chords(m, chords);
        for (x, y) in decoded.coords.iter().zip(&coords) {
            if (x - y).abs() > 1e-7 * scale {
                return Err(Error::Invalid(
                    "coordinates are not those of a measure".into(),
                ));
            }
        }
        Ok(Self { coords, ..decoded })
    }

    pub fn total(&self) -> f64 {
        self.chords.iter().map(|(_, w)| w).sum()
    }

    pub fn weight(&self, c: Chord) -> f64 {
        self.chords
            .iter()
            .find(|(d, _)| *d == key(c.0, c.1))
            .map_or(0.0, |(_, w)| *w)
    }
}

#[derive(Debug, Clone)]
pub struct DartDecomposition {
    pub darts: Vec<Dart>,
    /// Triangles of tips, counterclockwise.
    pub triangles: Vec<[usize; 3]>,
    pub centers: Vec<Complex64>,
    pub measure: DartMeasure,
}

impl DartDecomposition {
    pub fn angle_sum(&self) -> f64 {
        self.darts.iter().map(|d| d.theta).sum()
    }

    pub fn area(&self) -> f64 {
        self.darts.iter().map(|d| d.area()).sum()
    }

    /// The darts joined along their dual ends form a tree on all centers and inner vertices.
    pub fn dual_is_tree(&self) -> bool {
        let m = self.measure.tips;
        let nv = m + self.centers.len();
        let id = |v: DualVertex| match v {
            DualVertex::Inner(i) => i,
            DualVertex::Center(t) => m + t,
        };
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        if self.darts.len() + 1 != nv {
            return false;
        }
        for d in &self.darts {
            let (a, b) = (
                find(&mut parent, id(d.ends[0])),
                find(&mut parent, id(d.ends[1])),
            );
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

fn circumcenter(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let (b, c) = (b - a, c - a);
    let d = 2.0 * cross(b, c);
    let (nb, nc) = (b.norm_sqr(), c.norm_sqr());
    a + Complex64::new(c.im * nb - b.im * nc, b.re * nc - c.re * nb) / d
}

fn angle_at(c: Complex64, a: Complex64, b: Complex64) -> f64 {
    let (u, v) = (a - c, b - c);
    cross(u, v).abs().atan2(super::dot(u, v))
}

/// Signed angle at `p` from the direction of `a` to that of `b`.
fn turn(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    ((b - p) / (a - p)).arg()
}

/// Constrained Delaunay triangulation of a simple counterclockwise polygon.
fn delaunay_polygon(p: &[Complex64]) -> Result<Vec<[usize; 3]>> {
    let mut tris = ear_clip(p)?;
    let limit = 100 * p.len() * p.len() + 100;
    for _ in 0..limit {
        let mut flipped = false;
        'search: for i in 0..tris.len() {
            for e in 0..3 {
                let (a, b, c) = (tris[i][e], tris[i][(e + 1) % 3], tris[i][(e + 2) % 3]);
                let Some((j, f)) = tris.iter().enumerate().find_map(|(j, t)| {
                    (0..3)
                        .find(|&f| t[f] == b && t[(f + 1) % 3] == a)
                        .map(|f| (j, f))
                }) else {
                    continue;
                };
                let d = tris[j][(f + 2) % 3];
                if angle_at(p[c], p[a], p[b]) + angle_at(p[d], p[b], p[a]) > PI + 1e-9 {
                    tris[i] = [a, d, c];
                    tris[j] = [d, b, c];
                    flipped = true;
                    break 'search;
                }
            }
        }
        if !flipped {
            return Ok(tris);
        }
    }
    Err(Error::Invalid("tip triangulation did not settle".into()))
}

/// Darts from the Delaunay triangulation of the tips and the inner vertices.
pub fn dart_decomposition(s: &StarPolygon) -> Result<DartDecomposition> {
    s.check()?;
    let m = s.tips();
    let tips: Vec<Complex64> = (0..m).map(|k| s.tip(k)).collect();
    if m == 2 {
        let (t0, t1, v0, v1) = (tips[0], tips[1], s.inner(0), s.inner(1));
        let theta = turn(t0, v0, v1);
        let dart = Dart {
            chord: (0, 1),
            corners: [t0, v0, t1, v1],
            ends: [DualVertex::Inner(0), DualVertex::Inner(1)],
            theta,
        };
        let measure = DartMeasure::from_chords(2, vec![((0, 1), theta)]);
        return Ok(DartDecomposition {
            darts: vec![dart],
            triangles: vec![],
            centers: vec![],
            measure,
        });
    }
    if !is_simple_ccw(&tips) {
        return Err(Error::Invalid("tip polygon is degenerate".into()));
    }
    let triangles = delaunay_polygon(&tips)?;
    let centers: Vec<Complex64> = triangles
        .iter()
        .map(|t| circumcenter(tips[t[0]], tips[t[1]], tips[t[2]]))
        .collect();
    let mut left = std::collections::HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for e in 0..3 {
            left.insert((t[e], t[(e + 1) % 3]), i);
        }
    }
    let mut darts = Vec::new();
    for (&(a, b), &fl) in &left {
        let side = b == (a + 1) % m;
        let (r, end) = if side {
            (s.inner(a), DualVertex::Inner(a))
        } else if a < b {
            let fr = left[&(b, a)];
            (centers[fr], DualVertex::Center(fr))
        } else {
            continue;
        };
        let (ta, tb, l) = (tips[a], tips[b], centers[fl]);
        let theta = turn(ta, r, l);
        if (turn(tb, l, r) - theta).abs() > 1e-7 {
            return Err(Error::Invalid(format!(
                "dart on chord ({a}, {b}) is not symmetric"
            )));
        }
        darts.push(Dart {
            chord: key(a, b),
            corners: [ta, r, tb, l],
            ends: [DualVertex::Center(fl), end],
            theta,
        });
    }
    darts.sort_by_key(|x| x.chord);
    let measure = DartMeasure::from_chords(m, darts.iter().map(|d| (d.chord, d.theta)).collect());
    Ok(DartDecomposition {
        darts,
        triangles,
        centers,
        measure,
    })
}

fn interleave(c: Chord, d: Chord) -> bool {
    let inside = |x: usize| x > c.0 && x < c.1;
    let shared = c.0 == d.0 || c.0 == d.1 || c.1 == d.0 || c.1 == d.1;
    !shared && inside(d.0) != inside(d.1)
}

/// Star with the given measure and inner curvatures, up to similarity.
pub fn measure_to_star(m: &DartMeasure, curvatures: &[f64]) -> Result<StarPolygon> {
    let n = m.tips;
    if curvatures.len() != n {
        return Err(Error::Invalid(format!("expected {n} curvatures")));
    }
    let measure = DartMeasure::from_coords(n, m.coords.clone())?;
    let want = (curvatures.iter().sum::<f64>() - TAU) / 2.0;
    if (measure.total() - want).abs() > 1e-9 * want.abs().max(1.0) {
        return Err(Error::Invalid(format!(
            "total weight {} differs from {want}",
            measure.total()
        )));
    }
    if n == 2 {
        let (t0, t1) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        let v = [
            notch_apex(t0, t1, curvatures[0]),
            notch_apex(t1, t0, curvatures[1]),
        ];
        return Ok(StarPolygon::from_float(vec![t0, v[0], t1, v[1]]));
    }
    // complete the support to a triangulation of the tips
    let mut chords: Vec<Chord> = (0..n).map(|i| key(i, (i + 1) % n)).collect();
    for &(c, w) in &measure.chords {
        if w > 0.0 && !chords.contains(&c) {
            chords.push(c);
        }
    }
    for x in 0..n {
        for y in x + 2..n {
            let c = (x, y);
            if !(x == 0 && y == n - 1)
                && !chords.contains(&c)
                && chords.iter().all(|&d| !interleave(c, d))
            {
                chords.push(c);
            }
        }
    }
    if chords.len() != 2 * n - 3 {
        return Err(Error::Invalid("measure support crosses itself".into()));
    }
    let mut faces = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if [(x, y), (y, z), (x, z)].iter().all(|c| chords.contains(c)) {
                    faces.push([x, y, z]);
                }
            }
        }
    }
    // central angle of each face over each of its ccw edges
    let mut phi: Vec<[Option<f64>; 3]> = vec![[None; 3]; faces.len()];
    let edge = |f: &[usize; 3], e: usize| key(f[e], f[(e + 1) % 3]);
    for (i, f) in faces.iter().enumerate() {
        for e in 0..3 {
            let (a, b) = (f[e], f[(e + 1) % 3]);
            if b == (a + 1) % n || (a == n - 1 && b == 0) {
                phi[i][e] = Some(curvatures[a] - 2.0 * measure.weight((a, b)));
            } else if a == 0 && b == n - 1 {
                unreachable!("faces are listed counterclockwise");
            }
        }
    }
    let mut progress = true;
    while progress {
        progress = false;
        for i in 0..faces.len() {
            let known: Vec<f64> = phi[i].iter().flatten().copied().collect();
            if known.len() == 2 {
                let e = (0..3).find(|&e| phi[i][e].is_none()).unwrap();
                phi[i][e] = Some(TAU - known.iter().sum::<f64>());
                progress = true;
            }
            for e in 0..3 {
                let Some(v) = phi[i][e] else { continue };
                let c = edge(&faces[i], e);
                for j in 0..faces.len() {
                    if j == i {
                        continue;
                    }
                    if let Some(g) = (0..3).find(|&g| edge(&faces[j], g) == c) {
                        if phi[j][g].is_none() {
                            phi[j][g] = Some(TAU - 2.0 * measure.weight(c) - v);
                            progress = true;
                        }
                    }
                }
            }
        }
    }
    let phi: Vec<[f64; 3]> = phi
        .iter()
        .map(|p| p.map(|x| x.unwrap_or(f64::NAN)))
        .collect();
    if phi.iter().flatten().any(|&x| !(x > 0.0 && x < TAU)) {
        return Err(Error::Invalid("measure and curvatures give no star".into()));
    }
    let mut pos: Vec<Option<Complex64>> = vec![None; n];
    let mut placed = vec![false; faces.len()];
    pos[faces[0][0]] = Some(Complex64::new(1.0, 0.0));
    pos[faces[0][1]] = Some(Complex64::from_polar(1.0, phi[0][0]));
    let mut queue = vec![0];
    while let Some(i) = queue.pop() {
        if placed[i] {
            continue;
        }
        let f = faces[i];
        let e = (0..3)
            .find(|&e| pos[f[e]].is_some() && pos[f[(e + 1) % 3]].is_some())
            .unwrap();
        let (p, q) = (pos[f[e]].unwrap(), pos[f[(e + 1) % 3]].unwrap());
        let r = Complex64::from_polar(1.0, phi[i][e]);
        let c = (q - p * r) / (Complex64::new(1.0, 0.0) - r);
        let x = f[(e + 2) % 3];
        if pos[x].is_none() {
            pos[x] = Some(c + (q - c) * Complex64::from_polar(1.0, phi[i][(e + 1) % 3]));
        }
        placed[i] = true;
        for j in 0..faces.len() {
            if !placed[j] && (0..3).filter(|&g| pos[faces[j][g]].is_some()).count() >= 2 {
                queue.push(j);
            }
        }
    }
    let tips: Vec<Complex64> = pos
        .into_iter()
        .map(|p| p.expect("faces are connected"))
        .collect();
    let mut verts = Vec::with_capacity(2 * n);
    for i in 0..n {
        verts.push(tips[i]);
        verts.push(notch_apex(tips[i], tips[(i + 1) % n], curvatures[i]));
    }
    let star = StarPolygon::from_float(verts);
    star.check()?;
    Ok(star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::delaunay::delaunay;
    use crate::cone::geodesic::cut_to_star;
    use crate::cone::polygon::{double, double_polygon};
    use crate::cone::star::regular_polygon;
    use crate::cone::ConeSurface;
    use crate::mesh::icosahedron;

    fn close_up_to_similarity(a: &StarPolygon, b: &StarPolygon) -> bool {
        let norm = |s: &StarPolygon| -> Vec<Complex64> {
            let (o, u) = (s.vertices[0], s.vertices[2] - s.vertices[0]);
            s.vertices.iter().map(|z| (z - o) / u).collect()
        };
        norm(a)
            .iter()
            .zip(norm(b))
            .all(|(x, y)| (x - y).norm() < 1e-7)
    }

    #[test]
    fn doubled_triangle_sum() {
        let tri = [0.0, 1.0].map(|x| Complex64::new(x, 0.0));
        let tri = [tri[0], tri[1], Complex64::new(0.5, 3f64.sqrt() / 2.0)];
        let star = cut_to_star(&double(&tri, None).unwrap(), 0).unwrap().star;
        let d = dart_decomposition(&star).unwrap();
        assert_eq!(d.darts.len(), 1);
        assert!((d.angle_sum() - PI / 3.0).abs() < 1e-12);
        assert!(d.dual_is_tree());
    }

    #[test]
    fn icosahedron_darts() {
        let s = ConeSurface::from_mesh(&icosahedron());
        let star = cut_to_star(&s, 0).unwrap().star;
        let d = dart_decomposition(&star).unwrap();
        assert_eq!(d.darts.len(), 2 * 11 - 3);
        assert!((d.angle_sum() - (TAU - PI / 3.0) / 2.0).abs() < 1e-9);
        assert!((d.area() - star.area()).abs() < 1e-9);
        assert!(d.dual_is_tree());
        assert!(d.darts.iter().all(|x| x.theta > -1e-9));
        let back = measure_to_star(&d.measure, &star.inner_curvatures()).unwrap();
        assert!(close_up_to_similarity(&back, &star));
    }

    #[test]
    fn irregular_round_trip() {
        let s =
            delaunay(&double_polygon(&[1.1, 1.7, 2.2, 2.5, 1.9, 4.0 * PI - 9.4]).unwrap()).unwrap();
        for v in 0..s.vertex_count() {
            let star = cut_to_star(&s, v).unwrap().star;
            let d = dart_decomposition(&star).unwrap();
            assert!(d.dual_is_tree());
            assert!((d.angle_sum() - (TAU - s.curvatures()[v]) / 2.0).abs() < 1e-9);
            let back = measure_to_star(&d.measure, &star.inner_curvatures()).unwrap();
            let again = dart_decomposition(&back).unwrap();
            for (x, y) in again.measure.coords.iter().zip(&d.measure.coords) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn coordinates_decode() {
        let chords = vec![
            ((0, 1), 0.1),
            ((1, 2), 0.2),
            ((2, 3), 0.05),
            ((3, 4), 0.3),
            ((0, 4), 0.4),
            ((1, 3), 0.25),
            ((1, 4), 0.15),
        ];
        let m = DartMeasure::from_chords(5, chords.clone());
        let back = DartMeasure::from_coords(5, m.coords.clone()).unwrap();
        for (c, w) in chords {
            assert!((back.weight(c) - w).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_inequality_is_named() {
        let mut m = DartMeasure::from_chords(
            4,
            vec![
                ((0, 1), 0.3),
                ((1, 2), 0.3),
                ((2, 3), 0.3),
                ((0, 3), 0.3),
                ((0, 2), 0.2),
            ],
        );
        m.coords[0] = 5.0;
        let err = DartMeasure::from_coords(4, m.coords)
            .unwrap_err()
            .to_string();
        assert!(err.contains("triangle inequality"), "{err}");
    }

    #[test]
    fn regular_star_from_its_measure() {
        let k = 6;
        let base = regular_polygon(k);
        let alpha = vec![2.0 * PI / 3.0 - 0.1; k];
        let star = crate::cone::star::star_from_polygon(&base, &alpha).unwrap();
        let d = dart_decomposition(&star).unwrap();
        let back = measure_to_star(&d.measure, &alpha).unwrap();
        assert!(close_up_to_similarity(&back, &star));
    }

    /// A cut star of a surface without symmetry.
    fn generic_star() -> StarPolygon {
        let base: Vec<Complex64> = [(0.0, 0.0), (2.0, -0.3), (2.6, 1.4), (1.1, 2.5), (-0.6, 1.3)]
            .iter()
            .map(|&(x, y)| Complex64::new(x, y))
            .collect();
        let s = crate::cone::star::build_from_star(&base, &[2.0, 2.2, 2.4, 2.1, 2.3]).unwrap();
        let s = delaunay(&s).unwrap();
        cut_to_star(&s, 2).unwrap().star
    }

    #[test]
    fn zero_side_weight_gives_a_tie() {
        let star = generic_star();
        let d = dart_decomposition(&star).unwrap();
        let w = d.measure.weight((0, 1));
        assert!(w > 1e-6, "{:?}", d.measure.chords);
        let chords = d
            .measure
            .chords
            .iter()
            .map(|&(c, x)| (c, if c == (0, 1) { 0.0 } else { x }))
            .collect();
        let m = DartMeasure::from_chords(star.tips(), chords);
        let mut curv = star.inner_curvatures();
        curv[0] -= 2.0 * w;
        let p = measure_to_star(&m, &curv).unwrap();
        let d2 = dart_decomposition(&p).unwrap();
        assert!(d2.measure.weight((0, 1)).abs() < 1e-9);
        let tri = d2
            .triangles
            .iter()
            .find(|t| t.contains(&0) && t.contains(&1))
            .unwrap();
        let z = *tri.iter().find(|&&x| x > 1).unwrap();
        let (v, t0, tz) = (p.inner(0), p.tip(0), p.tip(z));
        assert!(((v - t0).norm() - (v - tz).norm()).abs() < 1e-9);
    }

    #[test]
    fn generic_cut_star_has_honest_darts() {
        let star = generic_star();
        let d = dart_decomposition(&star).unwrap();
        assert!(d.darts.iter().all(|x| x.theta > -1e-9));
        assert!((d.area() - star.area()).abs() < 1e-9);
        assert!((d.angle_sum() - (TAU - star.base_curvature()) / 2.0).abs() < 1e-9);
        let back = measure_to_star(&d.measure, &star.inner_curvatures()).unwrap();
        assert!(close_up_to_similarity(&back, &star));
    }
}
