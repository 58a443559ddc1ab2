//! The tiling of a lattice surface by unit equilateral triangles, as a combinatorial mesh.
//! Two lattice surfaces are isometric exactly when these meshes are isomorphic.

use std::collections::HashMap;

use super::ConeSurface;
use crate::eisenstein::{EisensteinInt as Eis, OMEGA, ONE};
use crate::error::{Error, Result};
use crate::mesh::{next, TriangulationMesh};

/// Affine map `z -> r z + b` between triangle frames.
#[derive(Clone, Copy)]
struct Map {
    r: Eis,
    b: Eis,
}

impl Map {
    fn apply(self, z: Eis) -> Eis {
        self.r * z + self.b
    }

    /// Map on tripled coordinates.
    fn apply3(self, z: Eis) -> Eis {
        self.r * z + self.b.scale(3)
    }

    fn then(self, o: Map) -> Map {
        Map {
            r: o.r * self.r,
            b: o.r * self.b + o.b,
        }
    }
}

struct Frames<'a> {
    l: &'a [Eis],
    twin: &'a [usize],
    rho: Vec<Eis>,
}

impl Frames<'_> {
    /// Position of the origin of half-edge `h` in its triangle's frame.
    fn start(&self, h: usize) -> Eis {
        let t = 3 * (h / 3);
        match h % 3 {
            0 => Eis::new(0, 0),
            1 => self.l[t],
            _ => self.l[t] + self.l[t + 1],
        }
    }

    fn across(&self, h: usize) -> Map {
        let g = self.twin[h];
        let r = self.rho[h];
        let end = self.start(next(h));
        Map {
            r,
            b: self.start(g) - r * end,
        }
    }

    /// Sign of the tripled point `z` against the line of half-edge `h`.
    fn side(&self, h: usize, z: Eis) -> i32 {
        self.l[h].cross_sign(z - self.start(h).scale(3))
    }

    /// Walks the segment from `from` to `to` (tripled, frame of `t`) to the triangle holding
    /// `to`, then moves points on an edge to the side of the smaller half-edge.
    fn locate(&self, t: usize, from: Eis, to: Eis) -> Result<(usize, Map)> {
        let mut t = t;
        let mut m = Map {
            r: ONE,
            b: Eis::new(0, 0),
        };
        let (mut a, mut z) = (from, to);
        let d_limit = 4 * self.l.len() + 8;
        for _ in 0..d_limit {
            let hs = [3 * t, 3 * t + 1, 3 * t + 2];
            let out: Vec<usize> = hs
                .iter()
                .copied()
                .filter(|&h| self.side(h, z) < 0)
                .collect();
            if out.is_empty() {
                if let Some(&h) = hs
                    .iter()
                    .find(|&&h| self.side(h, z) == 0 && self.twin[h] < h)
                {
                    let step = self.across(h);
                    return Ok((self.twin[h] / 3, m.then(step)));
                }
                return Ok((t, m));
            }
            let dir = z - a;
            let exit = out.iter().copied().find(|&h| {
                let p = self.start(h).scale(3) - a;
                let q = self.start(next(h)).scale(3) - a;
                dir.cross_sign(p) * dir.cross_sign(q) <= 0
            });
            let h = exit.ok_or_else(|| Error::Surface("unit walk lost its segment".into()))?;
            let step = self.across(h);
            a = step.apply3(a);
            z = step.apply3(z);
            m = m.then(step);
            t = self.twin[h] / 3;
        }
        Err(Error::Surface("unit walk did not terminate".into()))
    }
}

/// Some unit triangle whose centroid lies in a closed surface triangle.
fn first_unit(f: &Frames, faces: usize) -> Result<(usize, Eis, [Eis; 3])> {
    for t in 0..faces {
        let p = [f.start(3 * t), f.start(3 * t + 1), f.start(3 * t + 2)];
        let (a0, a1) = (
            p.iter().map(|z| z.a).min().unwrap(),
            p.iter().map(|z| z.a).max().unwrap(),
        );
        let (b0, b1) = (
            p.iter().map(|z| z.b).min().unwrap(),
            p.iter().map(|z| z.b).max().unwrap(),
        );
        for a in a0 - 1..=a1 {
            for b in b0 - 1..=b1 {
                let q = Eis::new(a, b);
                let up = [q, q + ONE, q + OMEGA];
                let down = [q + ONE, q + ONE + OMEGA, q + OMEGA];
                for v in [up, down] {
                    let c = v[0] + v[1] + v[2];
                    if (0..3).all(|i| f.side(3 * t + i, c) >= 0) {
                        return Ok((t, c, v));
                    }
                }
            }
        }
    }
    Err(Error::Surface("no unit triangle found".into()))
}

/// One unit triangle per unit of `unit_area`, glued as on the surface.
pub fn unit_mesh(s: &ConeSurface) -> Result<TriangulationMesh> {
    let l = s
        .lattice
        .as_ref()
        .ok_or_else(|| Error::Surface("unit mesh needs a lattice surface".into()))?;
    let total = s.unit_area().unwrap_or(0);
    if total <= 0 || total > 200_000 {
        return Err(Error::Surface(format!("unit area {total} out of range")));
    }
    let rho = (0..s.twin.len())
        .map(|h| {
            s.transition_exact(h)
                .ok_or_else(|| Error::Surface(format!("gluing at {h} is not a lattice rotation")))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = Frames {
        l,
        twin: &s.twin,
        rho,
    };
    let (t0, c0, first) = first_unit(&f, s.face_count())?;
    let (t0, m0) = f.locate(t0, c0, c0)?;
    let first = first.map(|z| m0.apply(z));
    let key = |t: usize, v: &[Eis; 3]| (t, v[0] + v[1] + v[2]);
    let mut ids: HashMap<(usize, Eis), usize> = HashMap::new();
    let mut tris: Vec<(usize, [Eis; 3])> = vec![(t0, first)];
    ids.insert(key(t0, &first), 0);
    let mut twin: Vec<usize> = vec![usize::MAX; 3];
    let mut i = 0;
    while i < tris.len() {
        let (t, v) = tris[i];
        for j in 0..3 {
            if twin[3 * i + j] != usize::MAX {
                continue;
            }
            let (a, b, x) = (v[j], v[(j + 1) % 3], v[(j + 2) % 3]);
            let y = a + b - x;
            let c = a + b + x;
            let nv = [b, a, y];
            let (nt, m) = f.locate(t, c, b + a + y)?;
            let nv = nv.map(|z| m.apply(z));
            let k = key(nt, &nv);
            let id = match ids.get(&k) {
                Some(&id) => id,
                None => {
                    let id = tris.len();
                    if id as i128 >= total {
                        return Err(Error::Surface("unit tiling exceeds the area".into()));
                    }
                    ids.insert(k, id);
                    tris.push((nt, nv));
                    twin.extend([usize::MAX; 3]);
                    id
                }
            };
            let stored = tris[id].1;
            let r = (0..3).find(|&r| stored[r] == nv[0] && stored[(r + 1) % 3] == nv[1]);
            let r = r.ok_or_else(|| Error::Surface("unit triangles disagree on an edge".into()))?;
            twin[3 * i + j] = 3 * id + r;
            twin[3 * id + r] = 3 * i + j;
        }
        i += 1;
    }
    if tris.len() as i128 != total {
        return Err(Error::Surface(format!(
            "unit tiling has {} triangles, expected {total}",
            tris.len()
        )));
    }
    TriangulationMesh::from_twins(twin)
}

/// Orientation-preserving isometry of two lattice surfaces.
pub fn lattice_isometric(a: &ConeSurface, b: &ConeSurface) -> Result<bool> {
    if a.unit_area() != b.unit_area() {
        return Ok(false);
    }
    Ok(unit_mesh(a)?.is_isomorphic(&unit_mesh(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::delaunay::{delaunay, flip};
    use crate::hexagon::{envelope, HexagonParams};
    use crate::mesh::{icosahedron, octahedron};

    #[test]
    fn unit_surfaces_are_their_own_tiling() {
        for m in [octahedron(), icosahedron()] {
            let s = ConeSurface::from_mesh(&m);
            assert!(unit_mesh(&s).unwrap().is_isomorphic(&m));
        }
    }

    #[test]
    fn retriangulation_is_an_isometry() {
        let s = ConeSurface::from_mesh(&envelope(&HexagonParams::new(3, 1, 1, 1)).unwrap());
        let d = delaunay(&s).unwrap();
        assert!(lattice_isometric(&s, &d).unwrap());
        let flipped = (0..d.twin.len()).find_map(|h| flip(&d, h).ok()).unwrap();
        assert!(lattice_isometric(&d, &flipped).unwrap());
        let o = ConeSurface::from_mesh(&octahedron());
        assert!(!lattice_isometric(&s, &o).unwrap());
    }
}
