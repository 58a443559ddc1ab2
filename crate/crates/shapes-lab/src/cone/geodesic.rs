//! Shortest paths from one cone point by wedge propagation, and the star obtained by cutting
//! along them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::star::StarPolygon;
use super::{cross, ConeSurface};
use crate::eisenstein::{EisensteinInt as Eis, ONE, UNITS};
use crate::error::{Error, Result};
use crate::mesh::{next, prev};

/// A developed point, with exact coordinates on lattice surfaces.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Pt {
    f: Complex64,
    e: Option<Eis>,
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        Pt {
            f: self.f + o.f,
            e: self.e.zip(o.e).map(|(a, b)| a + b),
        }
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        Pt {
            f: self.f - o.f,
            e: self.e.zip(o.e).map(|(a, b)| a - b),
        }
    }
}

impl Mul for Pt {
    type Output = Pt;
    fn mul(self, o: Pt) -> Pt {
        Pt {
            f: self.f * o.f,
            e: self.e.zip(o.e).map(|(a, b)| a * b),
        }
    }
}

impl Pt {
    fn one(exact: bool) -> Pt {
        Pt {
            f: Complex64::new(1.0, 0.0),
            e: exact.then_some(ONE),
        }
    }

    fn zero(exact: bool) -> Pt {
        Pt {
            f: Complex64::new(0.0, 0.0),
            e: exact.then_some(Eis::new(0, 0)),
        }
    }

    /// Sign of the cross product, exact when possible.
    fn turn(self, o: Pt) -> i32 {
        if let (Some(a), Some(b)) = (self.e, o.e) {
            return a.cross_sign(b);
        }
        let c = cross(self.f, o.f);
        if c.abs() <= 1e-12 * self.f.norm() * o.f.norm() {
            0
        } else if c > 0.0 {
            1
        } else {
            -1
        }
    }
}

fn edge(s: &ConeSurface, h: usize) -> Pt {
    Pt {
        f: s.edges[h],
        e: s.lattice.as_ref().map(|l| l[h]),
    }
}

fn rot(s: &ConeSurface, h: usize) -> Pt {
    Pt {
        f: s.transition(h),
        e: s.transition_exact(h),
    }
}

fn inv(p: Pt) -> Pt {
    Pt {
        f: p.f.inv(),
        e: p.e.map(|u| u.conj()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPath {
    pub target: usize,
    /// Outgoing half-edge at the base whose corner contains the initial direction.
    pub start: usize,
    /// Entry half-edges of the triangles crossed, in order.
    pub crossed: Vec<usize>,
    /// Endpoint in the frame of the start triangle, with the base at the origin.
    pub end: Complex64,
    pub end_exact: Option<Eis>,
    pub length: f64,
    /// Another path of the same length exists.
    pub tied: bool,
}

struct Window {
    dist: f64,
    entry: usize,
    a: Pt,
    b: Pt,
    lo: Pt,
    hi: Pt,
    start: usize,
    crossed: Vec<usize>,
}

impl PartialEq for Window {
    fn eq(&self, o: &Self) -> bool {
        self.dist == o.dist
    }
}
impl Eq for Window {}
impl PartialOrd for Window {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Window {
    fn cmp(&self, o: &Self) -> Ordering {
        o.dist.total_cmp(&self.dist)
    }
}

fn segment_distance(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let t = (-(a.re * d.re + a.im * d.im) / d.norm_sqr()).clamp(0.0, 1.0);
    (a + d * t).norm()
}

/// Upper bounds from shortest edge paths.
fn edge_graph_bounds(s: &ConeSurface, label: &[usize], n: usize, v0: usize) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; n];
    d[v0] = 0.0;
    let mut done = vec![false; n];
    for _ in 0..n {
        let Some(u) = (0..n)
            .filter(|&v| !done[v])
            .min_by(|&x, &y| d[x].total_cmp(&d[y]))
        else {
            break;
        };
        done[u] = true;
        for h in 0..s.twin.len() {
            if label[h] == u {
                let w = label[next(h)];
                d[w] = d[w].min(d[u] + s.edge_length(h));
            }
        }
    }
    d
}

type Best = (f64, Option<i64>, usize, Vec<usize>, Pt);

/// Shortest geodesics from vertex `v0` to every other vertex. All vertices must be cone points
/// of positive curvature, e.g. after [`delaunay`](super::delaunay::delaunay).
pub fn shortest_paths(s: &ConeSurface, v0: usize) -> Result<Vec<ShortestPath>> {
    let (label, n) = s.vertex_labels();
    if v0 >= n {
        return Err(Error::Surface(format!("no vertex {v0}")));
    }
    if s.curvatures().iter().any(|&k| k <= 1e-9) {
        return Err(Error::Surface(
            "every vertex must be a positively curved cone point".into(),
        ));
    }
    let exact = s.is_lattice();
    let mut best: Vec<Option<Best>> = vec![None; n];
    let mut tied = vec![false; n];
    let mut bound = edge_graph_bounds(s, &label, n, v0);
    let better = |cand: &Best, cur: &Option<Best>, tie: &mut bool| -> bool {
        let Some(c) = cur else { return true };
        let ord = match (cand.1, c.1) {
            (Some(x), Some(y)) => x.cmp(&y),
            _ => {
                let tol = 1e-9 * c.0.max(1e-300);
                if (cand.0 - c.0).abs() <= tol {
                    Ordering::Equal
                } else {
                    cand.0.total_cmp(&c.0)
                }
            }
        };
        match ord {
            Ordering::Less => {
                *tie = false;
                true
            }
            Ordering::Greater => false,
            Ordering::Equal => {
                *tie = true;
                (cand.2, &cand.3) < (c.2, &c.3)
            }
        }
    };
    let mut record = |target: usize,
                      end: Pt,
                      start: usize,
                      crossed: &[usize],
                      best: &mut Vec<Option<Best>>,
                      bound: &mut Vec<f64>| {
        let cand = (
            end.f.norm_sqr(),
            end.e.map(|z| z.norm()),
            start,
            crossed.to_vec(),
            end,
        );
        let mut tie = tied[target];
        if better(&cand, &best[target], &mut tie) {
            best[target] = Some(cand);
        }
        tied[target] = tie;
        bound[target] = bound[target].min(end.f.norm());
    };
    let mut heap = BinaryHeap::new();
    for h0 in (0..s.twin.len()).filter(|&h| label[h] == v0) {
        let b = edge(s, h0);
        let a = Pt::zero(exact) - edge(s, prev(h0));
        if label[next(h0)] != v0 {
            record(label[next(h0)], b, h0, &[], &mut best, &mut bound);
        }
        let entry = s.twin[next(h0)];
        heap.push(Window {
            dist: segment_distance(a.f, b.f),
            entry,
            a,
            b,
            lo: b,
            hi: a,
            start: h0,
            crossed: vec![entry],
        });
    }
    let mut processed = 0usize;
    while let Some(w) = heap.pop() {
        let reach = (0..n)
            .filter(|&v| v != v0)
            .map(|v| bound[v])
            .fold(0.0, f64::max);
        if w.dist > reach * (1.0 + 1e-9) + 1e-12 {
            break;
        }
        processed += 1;
        if processed > 5_000_000 {
            return Err(Error::Surface(
                "shortest path search exceeded its budget".into(),
            ));
        }
        let g = w.entry;
        // frame of the new triangle: its half-edge g runs from a to b
        let r = Pt {
            f: (w.b.f - w.a.f) / s.edges[g],
            e: match (w.b.e, w.a.e, s.lattice.as_ref()) {
                (Some(b), Some(a), Some(l)) => (b - a).div_exact(l[g]),
                _ => None,
            },
        };
        let wpt = w.b + r * edge(s, next(g));
        let target = label[prev(g)];
        let right = w.lo.turn(wpt);
        let left = wpt.turn(w.hi);
        let push =
            |entry_side: usize, a: Pt, b: Pt, lo: Pt, hi: Pt, heap: &mut BinaryHeap<Window>| {
                if lo.turn(hi) <= 0 {
                    return;
                }
                let entry = s.twin[entry_side];
                let mut crossed = w.crossed.clone();
                crossed.push(entry);
                heap.push(Window {
                    dist: segment_distance(a.f, b.f),
                    entry,
                    a,
                    b,
                    lo,
                    hi,
                    start: w.start,
                    crossed,
                });
            };
        if right > 0 && left > 0 {
            if target != v0 {
                record(target, wpt, w.start, &w.crossed, &mut best, &mut bound);
            }
            push(next(g), wpt, w.b, w.lo, wpt, &mut heap);
            push(prev(g), w.a, wpt, wpt, w.hi, &mut heap);
        } else if right <= 0 {
            push(prev(g), w.a, wpt, w.lo, w.hi, &mut heap);
        } else {
            push(next(g), wpt, w.b, w.lo, w.hi, &mut heap);
        }
    }
    let mut out = Vec::new();
    for v in (0..n).filter(|&v| v != v0) {
        let (_, _, start, crossed, end) = best[v]
            .clone()
            .ok_or_else(|| Error::Surface(format!("no path to vertex {v}")))?;
        out.push(ShortestPath {
            target: v,
            start,
            crossed,
            end: end.f,
            end_exact: end.e,
            length: end.f.norm(),
            tied: tied[v],
        });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct StarCut {
    pub star: StarPolygon,
    pub base: usize,
    /// Vertex of the surface at each inner vertex of the star.
    pub inner: Vec<usize>,
    pub paths: Vec<ShortestPath>,
}

/// Cuts the surface along the shortest paths from `v0` and unfolds the result.
pub fn cut_to_star(s: &ConeSurface, v0: usize) -> Result<StarCut> {
    let paths = shortest_paths(s, v0)?;
    let exact = s.is_lattice();
    let (label, _) = s.vertex_labels();
    let first = (0..s.twin.len())
        .find(|&h| label[h] == v0)
        .expect("vertex has a corner");
    let fan = s.fan(first);
    // frame of fan triangle k inside the developed fan
    let mut frames = Vec::with_capacity(fan.len());
    let mut m = Pt::one(exact);
    for &h in &fan {
        frames.push(m);
        m = m * inv(rot(s, prev(h)));
    }
    let holonomy = m;
    let mut order: Vec<(usize, f64, usize)> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let k = fan
                .iter()
                .position(|&h| h == p.start)
                .expect("start lies in the fan");
            let a = super::arg_pos(p.end / s.edges[p.start]);
            let a = if a > 6.0 { 0.0 } else { a };
            (k, a, i)
        })
        .collect();
    order.sort_by(|x, y| (x.0, x.1).partial_cmp(&(y.0, y.1)).unwrap());
    for w in order.windows(2) {
        if w[0].0 == w[1].0 && (w[0].1 - w[1].1).abs() < 1e-12 {
            return Err(Error::Surface(
                "two shortest paths leave in the same direction".into(),
            ));
        }
    }
    let mq = order.len();
    let mut q: Vec<Pt> = order
        .iter()
        .map(|&(k, _, i)| {
            frames[k]
                * Pt {
                    f: paths[i].end,
                    e: paths[i].end_exact,
                }
        })
        .collect();
    q.push(holonomy * q[0]);
    let cone = s.vertex_angles();
    let exact_angles = s.exact_cone_angles();
    let turn = |v: usize| -> Pt {
        let f = Complex64::from_polar(1.0, -cone[v]);
        let e = exact_angles
            .as_ref()
            .map(|a| UNITS[(-a[v]).rem_euclid(6) as usize]);
        Pt {
            f,
            e: if exact { e } else { None },
        }
    };
    // chart k: z -> ak z + bk
    let mut charts = vec![(Pt::one(exact), Pt::zero(exact)); mq];
    for k in (1..mq).rev() {
        let (a, b) = charts[k];
        let c = turn(paths[order[k].2].target);
        charts[k - 1] = (a * c, a * (q[k] - c * q[k]) + b);
    }
    let apply = |k: usize, z: Pt| charts[k].0 * z + charts[k].1;
    let close = apply(0, q[0]) - apply(mq - 1, q[mq]);
    let ok = match close.e {
        Some(e) => e.is_zero(),
        None => close.f.norm() <= 1e-8 * q.iter().map(|p| p.f.norm()).fold(1.0, f64::max),
    };
    if !ok {
        return Err(Error::Surface("developed star does not close".into()));
    }
    let mut verts = Vec::with_capacity(2 * mq);
    let mut inner = Vec::with_capacity(mq);
    for k in (0..mq).rev() {
        verts.push(apply(k, Pt::zero(exact)));
        verts.push(apply(k, q[k]));
        inner.push(paths[order[k].2].target);
    }
    let star = match verts.iter().map(|p| p.e).collect::<Option<Vec<Eis>>>() {
        Some(e) if exact => StarPolygon::from_lattice(e),
        _ => StarPolygon::from_float(verts.iter().map(|p| p.f).collect()),
    };
    star.check()?;
    Ok(StarCut {
        star,
        base: v0,
        inner,
        paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::delaunay::delaunay;
    use crate::cone::polygon::double;
    use crate::mesh::{icosahedron, octahedron};
    use std::f64::consts::PI;

    #[test]
    fn octahedron_paths() {
        let s = ConeSurface::from_mesh(&octahedron());
        let p = shortest_paths(&s, 0).unwrap();
        let mut l: Vec<f64> = p.iter().map(|p| p.length).collect();
        l.sort_by(f64::total_cmp);
        assert!(l[..4].iter().all(|x| (x - 1.0).abs() < 1e-12));
        assert!((l[4] - 3f64.sqrt()).abs() < 1e-12);
        assert!(p.iter().find(|p| p.length > 1.5).unwrap().tied);
    }

    #[test]
    fn doubled_triangle_gives_a_quadrilateral() {
        let tri = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 3f64.sqrt() / 2.0),
        ];
        let s = double(&tri, None).unwrap();
        let c = cut_to_star(&s, 0).unwrap();
        assert_eq!(c.star.vertices.len(), 4);
        assert!((c.star.base_curvature() - 4.0 * PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn icosahedron_star() {
        let s = ConeSurface::from_mesh(&icosahedron());
        let c = cut_to_star(&s, 0).unwrap();
        assert_eq!(c.star.tips(), 11);
        assert!(c.star.exact.is_some());
        let g = c.star.glue().unwrap();
        assert_eq!(g.unit_area(), s.unit_area());
        assert!(g.validate().passed());
    }

    #[test]
    fn star_from_irregular_surface() {
        let s = delaunay(
            &double(
                &[(0.0, 0.0), (3.0, 0.2), (3.5, 2.0), (1.0, 2.5), (-0.5, 1.0)]
                    .map(|(x, y)| Complex64::new(x, y)),
                None,
            )
            .unwrap(),
        )
        .unwrap();
        for v in 0..s.vertex_count() {
            let c = cut_to_star(&s, v).unwrap();
            assert!((c.star.area() - s.area()).abs() < 1e-9);
            let k = s.curvatures();
            assert!((c.star.base_curvature() - k[v]).abs() < 1e-9);
            assert!(c.star.glue().unwrap().validate().passed());
        }
    }

    #[test]
    fn envelope_round_trip_is_an_isometry() {
        use crate::cone::unit::lattice_isometric;
        use crate::hexagon::{envelope, HexagonParams};
        let s = delaunay(&ConeSurface::from_mesh(
            &envelope(&HexagonParams::new(3, 1, 1, 1)).unwrap(),
        ))
        .unwrap();
        for v in 0..s.vertex_count() {
            let c = cut_to_star(&s, v).unwrap();
            assert_eq!(c.star.tips(), 5);
            let g = c.star.glue().unwrap();
            assert!(lattice_isometric(&s, &g).unwrap());
        }
    }
}
