//! Six valence-4 vertices: hexagons cut out around the order-3 centres of a (3,3,3) group,
//! each hexagon boundary folded shut.
//!
//! Around a centre `c` of class `k` the hexagon has vertices `c + a_k w^j`. Side `2j` is glued
//! to side `2j+1` by the rotation through `w^4` about their common vertex.

use num_rational::Ratio;

use crate::eisenstein::{EisensteinInt as Eis, UNITS};
use crate::error::{Error, Result};
use crate::mesh::TriangulationMesh;
use crate::quotient::{quotient_mesh, Tri};
use crate::triangulations::group_444;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OctahedronParams {
    /// `alpha[0]` spans the centres; `alpha[1..]` size the hexagons of the three centre classes.
    pub alpha: [Eis; 4],
}

impl OctahedronParams {
    pub fn new(a1: Eis, a2: Eis, a3: Eis, a4: Eis) -> Self {
        Self {
            alpha: [a1, a2, a3, a4],
        }
    }

    /// `|a1|^2 - |a2|^2 - |a3|^2 - |a4|^2`
    pub fn n(&self) -> i64 {
        self.alpha[0].norm() - self.alpha[1..].iter().map(|a| a.norm()).sum::<i64>()
    }

    /// The family that always yields the regular octahedron.
    pub fn octahedron_family(k: i64) -> Self {
        let s = Eis::new(k, 1);
        Self::new(Eis::new(2 * k + 1, 2 - k), s, s, s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embeddability {
    /// Settled by the circumradius test.
    Disjoint,
    /// Settled by the inradius test, a nonpositive area or a degenerate hexagon.
    Overlapping,
    /// Settled by exact polygon separation.
    Resolved(bool),
}

impl Embeddability {
    pub fn is_embeddable(&self) -> bool {
        matches!(self, Self::Disjoint | Self::Resolved(true))
    }
}

#[derive(Debug, Clone, Copy)]
struct Hexagon {
    center: Eis,
    radius: Eis,
}

impl Hexagon {
    fn vertex(&self, j: usize) -> Eis {
        self.center + self.radius * UNITS[j % 6]
    }

    fn vertices_scaled(&self, s: i64) -> [Eis; 6] {
        std::array::from_fn(|j| self.vertex(j).scale(s))
    }
}

/// Class of the centre `a1 * m`, which selects `alpha[1 + class]`.
fn center_class(m: Eis) -> usize {
    (m.a + 2 * m.b).rem_euclid(3) as usize
}

fn hexagon_at(p: &OctahedronParams, m: Eis) -> Hexagon {
    Hexagon {
        center: p.alpha[0] * m,
        radius: p.alpha[1 + center_class(m)],
    }
}

/// Hexagons whose centres lie within a few steps of `z / a1`, with `z` given scaled by `s`.
fn hexagons_near(p: &OctahedronParams, z: Eis, s: i64) -> Vec<Hexagon> {
    let q = z * p.alpha[0].conj();
    let den = s * p.alpha[0].norm();
    let (fx, fy) = (q.a.div_euclid(den), q.b.div_euclid(den));
    let mut out = Vec::with_capacity(36);
    for dx in -2..=3 {
        for dy in -2..=3 {
            out.push(hexagon_at(p, Eis::new(fx + dx, fy + dy)));
        }
    }
    out
}

fn cross(u: Eis, v: Eis) -> i128 {
    u.cross2(v)
}

/// Sum of radii against centre distance, exactly: compares `sqrt(x) + sqrt(y)` with `sqrt(d)` scaled.
fn sqrt_sum_lt(x: i64, y: i64, d: i64) -> bool {
    let (x, y, d) = (x as i128, y as i128, d as i128);
    let r = d - x - y;
    r > 0 && 4 * x * y < r * r
}

fn inradius_overlap(x: i64, y: i64, d: i64) -> bool {
    // (sqrt 3 / 2)(sqrt x + sqrt y) >= sqrt d
    let (x, y, d) = (x as i128, y as i128, d as i128);
    let r = 4 * d - 3 * (x + y);
    r <= 0 || 36 * x * y >= r * r
}

/// Strict separation of two closed convex ccw polygons by an edge line of either.
fn separated(p: &[Eis], q: &[Eis]) -> bool {
    let by_edges = |p: &[Eis], q: &[Eis]| {
        (0..p.len()).any(|k| {
            let e = p[(k + 1) % p.len()] - p[k];
            q.iter().all(|&w| cross(e, w - p[k]) < 0)
        })
    };
    by_edges(p, q) || by_edges(q, p)
}

/// Whether the hexagons about all centres are pairwise disjoint.
pub fn check_embeddable(p: &OctahedronParams) -> Embeddability {
    if p.n() <= 0 || p.alpha.iter().any(|a| a.is_zero()) {
        return Embeddability::Overlapping;
    }
    let n1 = p.alpha[0].norm();
    let mut middle = false;
    let mut exact_ok = true;
    for m0 in [Eis::new(0, 0), Eis::new(1, 0), Eis::new(2, 0)] {
        let h0 = hexagon_at(p, m0);
        for dx in -3..=3 {
            for dy in -3..=3 {
                let d = Eis::new(dx, dy);
                if d.is_zero() {
                    continue;
                }
                let h1 = hexagon_at(p, m0 + d);
                let (x, y, dist) = (h0.radius.norm(), h1.radius.norm(), n1 * d.norm());
                if sqrt_sum_lt(x, y, dist) {
                    continue;
                }
                if inradius_overlap(x, y, dist) {
                    return Embeddability::Overlapping;
                }
                middle = true;
                if !separated(&h0.vertices_scaled(1), &h1.vertices_scaled(1)) {
                    exact_ok = false;
                }
            }
        }
    }
    if middle {
        Embeddability::Resolved(exact_ok)
    } else {
        Embeddability::Disjoint
    }
}

/// Rotation `z -> v + u (z - v)` applied to a point given scaled by `s`.
fn rotate_about(z: Eis, v: Eis, u: Eis, s: i64) -> Eis {
    let vs = v.scale(s);
    vs + u * (z - vs)
}

#[derive(Debug, Clone, Copy)]
struct Fold {
    pivot: Eis,
    turn: Eis,
}

impl Fold {
    /// The gluing applied when a path crosses side `k` into the hexagon.
    fn entering(h: &Hexagon, k: usize) -> Self {
        if k.is_multiple_of(2) {
            Self {
                pivot: h.vertex(k + 1),
                turn: UNITS[4],
            }
        } else {
            Self {
                pivot: h.vertex(k),
                turn: UNITS[2],
            }
        }
    }

    fn apply(&self, z: Eis, s: i64) -> Eis {
        rotate_about(z, self.pivot, self.turn, s)
    }

    fn apply_tri(&self, t: Tri) -> Tri {
        t.map(|z| self.apply(z, 1))
    }
}

struct Clip {
    lo: Ratio<i128>,
    side: usize,
    hi: Ratio<i128>,
    /// Two sides enter at `lo`: the line meets a vertex there.
    corner: bool,
}

/// Open-interior parameter interval of the segment `a + t (b - a)` in the hexagon, with the entry side.
fn clip(h: &Hexagon, a: Eis, b: Eis) -> Option<Clip> {
    let v = h.vertices_scaled(3);
    let d = b - a;
    let mut lo: Option<(Ratio<i128>, usize)> = None;
    let mut tie = false;
    let mut hi: Option<Ratio<i128>> = None;
    for k in 0..6 {
        let e = v[(k + 1) % 6] - v[k];
        let c = cross(e, a - v[k]);
        let s = cross(e, d);
        if s == 0 {
            if c <= 0 {
                return None;
            }
            continue;
        }
        let t = Ratio::new(-c, s);
        if s > 0 {
            match lo {
                Some((l, _)) if t < l => {}
                Some((l, _)) if t == l => tie = true,
                _ => {
                    lo = Some((t, k));
                    tie = false;
                }
            }
        } else if hi.is_none_or(|x| t < x) {
            hi = Some(t);
        }
    }
    match (lo, hi) {
        (Some((lo, side)), Some(hi)) if lo < hi => Some(Clip {
            lo,
            side,
            hi,
            corner: tie,
        }),
        _ => None,
    }
}

/// Carries the plane triangle `to`, reached from `from` across an edge, into the hexagon complement.
fn develop(p: &OctahedronParams, from: &Tri, to: Tri) -> Result<Tri> {
    let centroid3 = |t: &Tri| t[0] + t[1] + t[2];
    let mut a = centroid3(from);
    let mut b = centroid3(&to);
    let mut tri = to;
    let mut t0 = Ratio::from_integer(0);
    for _ in 0..64 {
        let mut first: Option<(Ratio<i128>, Hexagon, usize)> = None;
        for h in hexagons_near(p, a, 3)
            .into_iter()
            .chain(hexagons_near(p, b, 3))
        {
            if let Some(c) = clip(&h, a, b) {
                if c.hi <= t0 || c.lo >= Ratio::from_integer(1) {
                    continue;
                }
                if c.lo < t0 {
                    return Err(Error::Mesh(
                        "developing path starts inside a hexagon".into(),
                    ));
                }
                if c.corner {
                    return Err(Error::Mesh("developing path hits a hexagon vertex".into()));
                }
                if first.as_ref().is_none_or(|(f, _, _)| c.lo < *f) {
                    first = Some((c.lo, h, c.side));
                }
            }
        }
        let Some((l, h, k)) = first else {
            return Ok(settle(p, tri, b));
        };
        let f = Fold::entering(&h, k);
        a = f.apply(a, 3);
        b = f.apply(b, 3);
        tri = f.apply_tri(tri);
        t0 = l;
    }
    Err(Error::Mesh(
        "developing path does not leave the hexagons".into(),
    ))
}

/// Tie rule: a centroid on an odd side is moved onto the even side it is glued to.
fn settle(p: &OctahedronParams, tri: Tri, c3: Eis) -> Tri {
    for h in hexagons_near(p, c3, 3) {
        let v = h.vertices_scaled(3);
        let f: [i128; 6] = std::array::from_fn(|k| cross(v[(k + 1) % 6] - v[k], c3 - v[k]));
        if f.iter().all(|&x| x >= 0) {
            if let Some(k) = (0..6).find(|&k| f[k] == 0 && k % 2 == 1) {
                // the inverse of the fold entering through side k - 1
                return Fold {
                    pivot: h.vertex(k),
                    turn: UNITS[2],
                }
                .apply_tri(tri);
            }
        }
    }
    tri
}

fn strictly_outside(p: &OctahedronParams, c3: Eis) -> bool {
    hexagons_near(p, c3, 3).iter().all(|h| {
        let v = h.vertices_scaled(3);
        (0..6).any(|k| cross(v[(k + 1) % 6] - v[k], c3 - v[k]) < 0)
    })
}

/// The quotient of the hexagon complement: `2 n` triangles, six valence-4 vertices.
pub fn gen_p2x6(p: &OctahedronParams) -> Result<TriangulationMesh> {
    if p.n() <= 0 {
        return Err(Error::Invalid(format!("nonpositive area n = {}", p.n())));
    }
    let emb = check_embeddable(p);
    if !emb.is_embeddable() {
        return Err(Error::Invalid(format!("hexagons overlap ({emb:?})")));
    }
    let g = group_444(p.alpha[0])?;
    let r = 2 * (p.alpha[0].norm() as f64).sqrt().ceil() as i64 + 2;
    let start = (-r..=r)
        .flat_map(|y| (-r..=r).map(move |x| Eis::new(x, y)))
        .map(|z| [z, z + UNITS[0], z + UNITS[1]])
        .find(|t| strictly_outside(p, t[0] + t[1] + t[2]))
        .ok_or_else(|| Error::Mesh("no triangle outside the hexagons".into()))?;
    let expected = 2 * p.n() as usize;
    quotient_mesh(&g, start, expected, |from, to| develop(p, from, to))
}
