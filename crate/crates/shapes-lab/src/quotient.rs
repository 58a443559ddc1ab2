//! Quotients of the unit triangle tiling by groups `z -> u z + l` with `u` a unit and `l` in a lattice.

use std::collections::HashMap;
use std::collections::VecDeque;

use num_integer::Integer;

use crate::eisenstein::EisensteinInt as Eis;
use crate::error::{Error, Result};
use crate::mesh::TriangulationMesh;

pub type Tri = [Eis; 3];

#[derive(Debug, Clone)]
pub struct PlaneGroup {
    pub units: Vec<Eis>,
    pub basis: [Eis; 2],
    det: i64,
}

impl PlaneGroup {
    /// `units` must form a group and the lattice must be invariant under it.
    pub fn new(units: Vec<Eis>, basis: [Eis; 2]) -> Result<Self> {
        let det = basis[0].a * basis[1].b - basis[0].b * basis[1].a;
        if det == 0 {
            return Err(Error::Invalid("degenerate translation lattice".into()));
        }
        for &u in &units {
            for &b in &basis {
                if !self::in_lattice(u * b, basis, det) {
                    return Err(Error::Invalid(format!(
                        "lattice not invariant under unit {u}"
                    )));
                }
            }
        }
        Ok(Self { units, basis, det })
    }

    /// Number of unit triangles in the quotient.
    pub fn triangle_count(&self) -> usize {
        2 * self.det.unsigned_abs() as usize / self.units.len()
    }

    /// Representative of `z` modulo the translation lattice.
    pub fn reduce_point(&self, z: Eis) -> Eis {
        let [b1, b2] = self.basis;
        let (x, y) = coords_num(z, self.basis);
        let (fx, fy) = (
            Integer::div_floor(&x, &self.det),
            Integer::div_floor(&y, &self.det),
        );
        z - b1.scale(fx) - b2.scale(fy)
    }

    pub fn in_lattice(&self, z: Eis) -> bool {
        in_lattice(z, self.basis, self.det)
    }

    /// Least image of the triangle under the group, and the corner moved to position 0.
    pub fn canonical(&self, t: &Tri) -> (Tri, usize) {
        let mut best: Option<(Tri, usize)> = None;
        for &u in &self.units {
            for j in 0..3 {
                let r = [u * t[j], u * t[(j + 1) % 3], u * t[(j + 2) % 3]];
                let shift = self.reduce_point(r[0]) - r[0];
                let c = [r[0] + shift, r[1] + shift, r[2] + shift];
                if best.as_ref().is_none_or(|(b, _)| key(&c) < key(b)) {
                    best = Some((c, j));
                }
            }
        }
        best.unwrap()
    }
}

fn key(t: &Tri) -> [i64; 6] {
    [t[0].a, t[0].b, t[1].a, t[1].b, t[2].a, t[2].b]
}

/// Integer numerators of the coordinates of `z` in `basis`, over the determinant.
fn coords_num(z: Eis, basis: [Eis; 2]) -> (i64, i64) {
    let [b1, b2] = basis;
    (z.a * b2.b - z.b * b2.a, b1.a * z.b - b1.b * z.a)
}

fn in_lattice(z: Eis, basis: [Eis; 2], det: i64) -> bool {
    let (x, y) = coords_num(z, basis);
    x % det == 0 && y % det == 0
}

/// The plane triangle across edge `i` of `t`, listed from the shared edge reversed.
pub fn across(t: &Tri, i: usize) -> Tri {
    let (p, q, r) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
    [q, p, p + q - r]
}

/// Breadth-first quotient. `develop` maps a neighbouring plane triangle to the one that
/// represents it (identity for plain groups); its corner 0 must stay the shared edge start.
pub fn quotient_mesh(
    group: &PlaneGroup,
    start: Tri,
    expected: usize,
    develop: impl Fn(&Tri, Tri) -> Result<Tri>,
) -> Result<TriangulationMesh> {
    let mut index: HashMap<Tri, usize> = HashMap::new();
    let mut charts: Vec<Tri> = Vec::new();
    let mut twin: Vec<usize> = Vec::new();
    let (s, _) = group.canonical(&start);
    index.insert(s, 0);
    charts.push(s);
    twin.extend([usize::MAX; 3]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        let tri = charts[t];
        for i in 0..3 {
            if twin[3 * t + i] != usize::MAX {
                continue;
            }
            let nb = develop(&tri, across(&tri, i))?;
            let (c, j) = group.canonical(&nb);
            let u = match index.get(&c) {
                Some(&u) => u,
                None => {
                    let u = charts.len();
                    if u >= expected {
                        return Err(Error::Mesh(format!(
                            "quotient exceeds {expected} triangles"
                        )));
                    }
                    index.insert(c, u);
                    charts.push(c);
                    twin.extend([usize::MAX; 3]);
                    queue.push_back(u);
                    u
                }
            };
            let g = 3 * u + (3 - j) % 3;
            if twin[g] != usize::MAX && twin[g] != 3 * t + i {
                return Err(Error::Mesh("inconsistent gluing in quotient".into()));
            }
            twin[3 * t + i] = g;
            twin[g] = 3 * t + i;
        }
    }
    if charts.len() != expected {
        return Err(Error::Mesh(format!(
            "quotient has {} triangles, expected {expected}",
            charts.len()
        )));
    }
    Ok(TriangulationMesh::from_twins(twin)?.with_charts(charts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{OMEGA, ONE, UNITS};

    #[test]
    fn reduction_is_a_coset_choice() {
        let g = PlaneGroup::new(vec![ONE], [Eis::new(3, 0), Eis::new(1, 2)]).unwrap();
        for a in -7..7 {
            for b in -7..7 {
                let z = Eis::new(a, b);
                let r = g.reduce_point(z);
                assert!(g.in_lattice(z - r));
                assert_eq!(g.reduce_point(r), r);
            }
        }
    }

    #[test]
    fn torus_quotient() {
        let g = PlaneGroup::new(vec![ONE], [Eis::new(3, 0), Eis::new(0, 3)]).unwrap();
        let m = quotient_mesh(&g, [Eis::new(0, 0), ONE, OMEGA], 18, |_, t| Ok(t)).unwrap();
        assert_eq!(m.vertex_count, 9);
        assert_eq!(m.valences(), vec![6; 9]);
    }

    #[test]
    fn lattice_must_be_invariant() {
        assert!(PlaneGroup::new(UNITS.to_vec(), [Eis::new(2, 0), Eis::new(0, 1)]).is_err());
    }
}
