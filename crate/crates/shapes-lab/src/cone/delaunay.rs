//! Intrinsic Delaunay triangulation with the cone points as its only vertices.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::polygon::ear_clip;
use super::{ConeSurface, UNGLUED};
use crate::eisenstein::{EisensteinInt as Eis, ONE};
use crate::error::{Error, Result};
use crate::mesh::{next, prev};

/// Replaces the triangles in `removed` by `tris`, a triangulation of the boundary polygon.
///
/// `boundary[k]` is the removed half-edge running from polygon vertex `k` to `k + 1`, and
/// `pos`/`exact` give developed positions of the polygon vertices in one common frame.
fn retriangulate(
    s: &ConeSurface,
    removed: &[usize],
    boundary: &[usize],
    pos: &[Complex64],
    exact: Option<&[Eis]>,
    tris: &[[usize; 3]],
) -> ConeSurface {
    let f = s.face_count();
    let d = boundary.len();
    let mut gone = vec![false; f];
    for &t in removed {
        gone[t] = true;
    }
    let mut renum = vec![usize::MAX; f];
    let mut kept = 0;
    for t in 0..f {
        if !gone[t] {
            renum[t] = kept;
            kept += 1;
        }
    }
    let map_old = |h: usize| 3 * renum[h / 3] + h % 3;
    let nf = kept + tris.len();
    let mut edges = Vec::with_capacity(3 * nf);
    let mut lattice = s.lattice.as_ref().map(|_| Vec::with_capacity(3 * nf));
    let mut twin = vec![UNGLUED; 3 * nf];
    for t in (0..f).filter(|&t| !gone[t]) {
        for i in 0..3 {
            edges.push(s.edges[3 * t + i]);
            if let (Some(l), Some(o)) = (lattice.as_mut(), s.lattice.as_ref()) {
                l.push(o[3 * t + i]);
            }
        }
    }
    // new half-edge along polygon side k, or along a diagonal
    let mut side = vec![UNGLUED; d];
    let mut diag = std::collections::HashMap::new();
    for (j, tri) in tris.iter().enumerate() {
        for i in 0..3 {
            let (a, b) = (tri[i], tri[(i + 1) % 3]);
            let h = 3 * (kept + j) + i;
            edges.push(pos[b] - pos[a]);
            if let (Some(l), Some(e)) = (lattice.as_mut(), exact) {
                l.push(e[b] - e[a]);
            }
            if b == (a + 1) % d {
                side[a] = h;
            } else {
                diag.insert((a, b), h);
            }
        }
    }
    for t in (0..f).filter(|&t| !gone[t]) {
        for i in 0..3 {
            let o = s.twin[3 * t + i];
            let h = 3 * renum[t] + i;
            twin[h] = if gone[o / 3] {
                let k = boundary
                    .iter()
                    .position(|&b| b == o)
                    .expect("boundary half-edge");
                side[k]
            } else {
                map_old(o)
            };
        }
    }
    for k in 0..d {
        let o = s.twin[boundary[k]];
        twin[side[k]] = match boundary.iter().position(|&b| b == o) {
            Some(j) => side[j],
            None => map_old(o),
        };
    }
    for (&(a, b), &h) in &diag {
        twin[h] = diag[&(b, a)];
    }
    ConeSurface {
        edges,
        lattice,
        twin,
    }
}

/// Developed positions of the two triangles at `h`, in the frame of `h`.
fn quad(s: &ConeSurface, h: usize) -> ([usize; 4], [Complex64; 4], Option<[Eis; 4]>) {
    let g = s.twin[h];
    let r = s.transition(g);
    let zero = Complex64::new(0.0, 0.0);
    let b = s.edges[h];
    let c = b + s.edges[next(h)];
    let dpt = r * s.edges[next(g)];
    let ex = s.lattice.as_ref().and_then(|l| {
        let r = s.transition_exact(g)?;
        let b = l[h];
        Some([Eis::new(0, 0), r * l[next(g)], b, b + l[next(h)]])
    });
    ([next(g), prev(g), next(h), prev(h)], [zero, dpt, b, c], ex)
}

/// Replaces the edge of `h` by the other diagonal of its quadrilateral.
pub fn flip(s: &ConeSurface, h: usize) -> Result<ConeSurface> {
    let g = s.twin[h];
    if g / 3 == h / 3 {
        return Err(Error::Surface(
            "cannot flip an edge inside one triangle".into(),
        ));
    }
    let (boundary, pos, ex) = quad(s, h);
    let tris = [[0, 1, 3], [1, 2, 3]];
    for t in &tris {
        if super::cross(pos[t[1]] - pos[t[0]], pos[t[2]] - pos[t[0]]) <= 0.0 {
            return Err(Error::Surface(format!("edge {h} is not flippable")));
        }
    }
    Ok(retriangulate(
        s,
        &[h / 3, g / 3],
        &boundary,
        &pos,
        ex.as_ref().map(|e| &e[..]),
        &tris,
    ))
}

/// `(dot, cross)` of the sides at the corner opposite `h`.
fn opposite(s: &ConeSurface, h: usize) -> (f64, f64) {
    let (u, v) = (s.edges[prev(h)], -s.edges[next(h)]);
    (super::dot(u, v), super::cross(u, v))
}

/// Opposite angles across the edge sum to at most `pi`; exact for lattice surfaces.
pub fn is_delaunay_edge(s: &ConeSurface, h: usize) -> bool {
    let g = s.twin[h];
    if g / 3 == h / 3 {
        return true;
    }
    if let Some(l) = &s.lattice {
        let part = |h: usize| {
            let (u, v) = (l[prev(h)], -l[next(h)]);
            (u.dot2(v), u.cross2(v))
        };
        let ((d1, c1), (d2, c2)) = (part(h), part(g));
        return d1 * c2 + d2 * c1 >= 0;
    }
    let ((d1, c1), (d2, c2)) = (opposite(s, h), opposite(s, g));
    c1.atan2(d1) + c2.atan2(d2) <= PI + super::TOL
}

pub fn is_delaunay(s: &ConeSurface) -> bool {
    (0..s.twin.len()).all(|h| is_delaunay_edge(s, h))
}

/// Removes one flat vertex whose outgoing half-edge is `h`.
fn remove_vertex(s: &ConeSurface, h: usize) -> Result<ConeSurface> {
    let fan = s.fan(h);
    let mut tris: Vec<usize> = fan.iter().map(|&g| g / 3).collect();
    tris.sort_unstable();
    tris.dedup();
    if tris.len() != fan.len() {
        return Err(Error::Surface("flat vertex meets a triangle twice".into()));
    }
    let mut m = Complex64::new(1.0, 0.0);
    let mut me = s.lattice.as_ref().map(|_| ONE);
    let mut pos = Vec::with_capacity(fan.len());
    let mut ex = Vec::with_capacity(fan.len());
    for &g in &fan {
        pos.push(m * s.edges[g]);
        if let (Some(u), Some(l)) = (me, s.lattice.as_ref()) {
            ex.push(u * l[g]);
        }
        m /= s.transition(prev(g));
        me = me
            .zip(s.transition_exact(prev(g)))
            .and_then(|(u, r)| u.div_exact(r));
    }
    let boundary: Vec<usize> = fan.iter().map(|&g| next(g)).collect();
    let tri = ear_clip(&pos)?;
    let exact = if me.is_some() && ex.len() == pos.len() {
        Some(&ex[..])
    } else {
        None
    };
    Ok(retriangulate(s, &tris, &boundary, &pos, exact, &tri))
}

/// Flips edges at the flat vertex of `h` until its fan meets distinct triangles, then removes it.
fn remove_vertex_flipping(s: &ConeSurface, h: usize) -> Result<ConeSurface> {
    let (mut s, mut h) = (s.clone(), h);
    for _ in 0..4 * s.twin.len() + 8 {
        let fan = s.fan(h);
        let mut tris: Vec<usize> = fan.iter().map(|&g| g / 3).collect();
        tris.sort_unstable();
        tris.dedup();
        if tris.len() == fan.len() {
            return remove_vertex(&s, h);
        }
        // a flip puts the quad's first vertex, here the flat one, at the first new corner;
        // take the flip leaving the smallest fan
        let best = fan
            .iter()
            .filter_map(|&g| flip(&s, g).ok())
            .min_by_key(|t| t.fan(3 * (t.face_count() - 2)).len());
        match best {
            Some(t) => {
                h = 3 * (t.face_count() - 2);
                s = t;
            }
            None => break,
        }
    }
    Err(Error::Surface(
        "cannot clear the fan of a flat vertex".into(),
    ))
}

/// Removes every vertex of zero curvature.
pub fn remove_flat_vertices(s: &ConeSurface) -> Result<ConeSurface> {
    let mut s = s.clone();
    loop {
        let (label, _) = s.vertex_labels();
        let curv = s.curvatures();
        let flat = (0..s.twin.len()).find(|&h| curv[label[h]].abs() < 1e-7);
        match flat {
            None => return Ok(s),
            Some(h) => s = remove_vertex_flipping(&s, h)?,
        }
    }
}

/// Delaunay triangulation on the cone points, by flat-vertex removal then edge flips.
pub fn delaunay(s: &ConeSurface) -> Result<ConeSurface> {
    let mut s = remove_flat_vertices(s)?;
    let limit = 100 * s.twin.len() * s.twin.len() + 1000;
    for _ in 0..limit {
        match (0..s.twin.len()).find(|&h| !is_delaunay_edge(&s, h)) {
            None => return Ok(s),
            Some(h) => s = flip(&s, h)?,
        }
    }
    Err(Error::Surface("edge flipping did not terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::polygon::double_polygon;
    use crate::hexagon::{envelope, HexagonParams};
    use crate::mesh::octahedron;
    use std::f64::consts::TAU;

    #[test]
    fn flip_keeps_the_surface() {
        let s = ConeSurface::from_mesh(&octahedron());
        let t = flip(&s, 0).unwrap();
        assert!(t.validate().passed());
        assert!((t.area() - s.area()).abs() < 1e-12);
        assert_eq!(t.unit_area(), s.unit_area());
        assert_eq!(t.exact_cone_angles(), s.exact_cone_angles());
        assert_eq!(
            t.to_mesh().unwrap().valence_profile(),
            vec![3, 3, 4, 4, 5, 5]
        );
    }

    #[test]
    fn envelope_loses_its_flat_vertices() {
        let s = ConeSurface::from_mesh(&envelope(&HexagonParams::new(3, 1, 1, 1)).unwrap());
        assert_eq!(s.vertex_count(), 8);
        let r = remove_flat_vertices(&s).unwrap();
        assert!(r.validate().passed(), "{}", r.validate());
        assert_eq!(r.unit_area(), s.unit_area());
        let d = delaunay(&s).unwrap();
        assert!(d.validate().passed());
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.face_count(), 8);
        assert!(is_delaunay(&d));
        assert_eq!(d.unit_area(), s.unit_area());
    }

    #[test]
    fn doubled_polygon_is_delaunay_after_flips() {
        let s = double_polygon(&[0.5, 1.0, 2.0, 3.0, 2.0 * TAU - 6.5]).unwrap();
        let d = delaunay(&s).unwrap();
        assert!(is_delaunay(&d));
        assert_eq!(d.face_count(), 6);
        assert!((d.area() - s.area()).abs() < 1e-9);
    }

    #[test]
    fn lattice_families_reduce_to_their_cone_points() {
        use crate::cone::unit::lattice_isometric;
        use crate::triangulations::{gen_p345, gen_p444};
        let alphas = [
            Eis::new(1, 0),
            Eis::new(1, 1),
            Eis::new(2, 1),
            Eis::new(3, -1),
        ];
        for m in alphas
            .iter()
            .flat_map(|&a| [gen_p345(a).unwrap(), gen_p444(a).unwrap()])
        {
            let s = ConeSurface::from_mesh(&m);
            let d = delaunay(&s).unwrap();
            assert_eq!(d.vertex_count(), 3);
            assert!(is_delaunay(&d));
            assert!(lattice_isometric(&s, &d).unwrap());
        }
    }

    #[test]
    fn thin_pillowcases_lose_their_flat_vertices() {
        use crate::cone::unit::lattice_isometric;
        use crate::triangulations::gen_p3333;
        for (a, b, c) in [(1, 0, 6), (1, 0, 12), (2, 1, 5), (6, 5, 1)] {
            let s = ConeSurface::from_mesh(&gen_p3333(a, b, c).unwrap());
            let d = delaunay(&s).unwrap();
            assert_eq!(d.vertex_count(), 4, "({a},{b},{c})");
            assert!(is_delaunay(&d));
            assert!(lattice_isometric(&s, &d).unwrap());
        }
    }
}
