//! Closed oriented triangulations stored as half-edge twin tables.
//!
//! Half-edge `3t + i` runs from corner `i` to corner `i + 1` of triangle `t`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::fmt::sig12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulationMesh {
    pub triangles: Vec<[usize; 3]>,
    pub twin: Vec<usize>,
    pub vertex_count: usize,
    /// Per-triangle lattice coordinates of the corners, when the mesh came from a lattice.
    pub charts: Option<Vec<[EisensteinInt; 3]>>,
}

#[inline]
pub fn next(h: usize) -> usize {
    3 * (h / 3) + (h % 3 + 1) % 3
}

#[inline]
pub fn prev(h: usize) -> usize {
    3 * (h / 3) + (h % 3 + 2) % 3
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub curvature_sum: i64,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "V={} E={} F={} euler={} sum(6-valence)={}",
            self.vertices, self.edges, self.faces, self.euler, self.curvature_sum
        )?;
        if self.passed() {
            write!(f, " pass")
        } else {
            write!(f, " fail({})", self.failures.join("; "))
        }
    }
}

/// Corner orbits around vertices, as a label per half-edge origin.
fn corner_orbits(twin: &[usize]) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; twin.len()];
    let mut count = 0;
    for s in 0..twin.len() {
        if label[s] != usize::MAX {
            continue;
        }
        let mut h = s;
        loop {
            label[h] = count;
            h = twin[prev(h)];
            if h == s || label[h] != usize::MAX {
                break;
            }
        }
        count += 1;
    }
    (label, count)
}

impl TriangulationMesh {
    /// Builds a mesh from an explicit gluing; vertex labels come from the corner orbits.
    pub fn from_twins(twin: Vec<usize>) -> Result<Self> {
        if !twin.len().is_multiple_of(3) {
            return Err(Error::Mesh("half-edge count not a multiple of 3".into()));
        }
        for (h, &g) in twin.iter().enumerate() {
            if g >= twin.len() || twin[g] != h || g == h {
                return Err(Error::Mesh(format!("open edge at half-edge {h}")));
            }
        }
        let (label, vertex_count) = corner_orbits(&twin);
        let triangles = (0..twin.len() / 3)
            .map(|t| [label[3 * t], label[3 * t + 1], label[3 * t + 2]])
            .collect();
        Ok(Self {
            triangles,
            twin,
            vertex_count,
            charts: None,
        })
    }

    /// Pairs each directed edge u->v with v->u.
    pub fn from_triangles(triangles: Vec<[usize; 3]>) -> Result<Self> {
        let twin = Self::pair_edges(&triangles)?;
        let vertex_count = triangles.iter().flatten().max().map_or(0, |m| m + 1);
        Ok(Self {
            triangles,
            twin,
            vertex_count,
            charts: None,
        })
    }

    fn pair_edges(triangles: &[[usize; 3]]) -> Result<Vec<usize>> {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for i in 0..3 {
                if seen.insert((tri[i], tri[(i + 1) % 3]), 3 * t + i).is_some() {
                    return Err(Error::Mesh(format!(
                        "non-manifold edge {}->{}",
                        tri[i],
                        tri[(i + 1) % 3]
                    )));
                }
            }
        }
        let mut twin = vec![0; 3 * triangles.len()];
        for (&(u, v), &h) in &seen {
            match seen.get(&(v, u)) {
                Some(&g) => twin[h] = g,
                None => return Err(Error::Mesh(format!("open edge {u}->{v}"))),
            }
        }
        Ok(twin)
    }

    pub fn with_charts(mut self, charts: Vec<[EisensteinInt; 3]>) -> Self {
        self.charts = Some(charts);
        self
    }

    pub fn face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn origin(&self, h: usize) -> usize {
        self.triangles[h / 3][h % 3]
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.vertex_count];
        for tri in &self.triangles {
            for &v in tri {
                val[v] += 1;
            }
        }
        val
    }

    /// Sorted valence multiset.
    pub fn valence_profile(&self) -> Vec<usize> {
        let mut v = self.valences();
        v.sort_unstable();
        v
    }

    pub fn validate(&self) -> ValidationReport {
        let faces = self.triangles.len();
        let mut failures = Vec::new();
        let hn = 3 * faces;
        let twins_ok = self.twin.len() == hn
            && self
                .twin
                .iter()
                .enumerate()
                .all(|(h, &g)| g < hn && g != h && self.twin[g] == h);
        if !twins_ok {
            failures.push("open edge".to_string());
        }
        if twins_ok {
            for h in 0..hn {
                let g = self.twin[h];
                if self.origin(g) != self.origin(next(h)) || self.origin(next(g)) != self.origin(h)
                {
                    failures.push(format!("inconsistent orientation at half-edge {h}"));
                    break;
                }
            }
            let (orbit, n_orbits) = corner_orbits(&self.twin);
            let mut owner = vec![usize::MAX; n_orbits];
            let mut used = vec![false; self.vertex_count];
            for h in 0..hn {
                let v = self.origin(h);
                if v >= self.vertex_count {
                    failures.push(format!("vertex {v} out of range"));
                    break;
                }
                used[v] = true;
                if owner[orbit[h]] == usize::MAX {
                    owner[orbit[h]] = v;
                } else if owner[orbit[h]] != v {
                    failures.push(format!("vertex link of {v} is not a single disk"));
                    break;
                }
            }
            let mut sorted = owner.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != n_orbits {
                failures.push("non-manifold vertex".to_string());
            }
            if used.iter().any(|u| !u) {
                failures.push("isolated vertex".to_string());
            }
        }
        let val = self.valences();
        if let Some(v) = val.iter().position(|&d| !(1..=6).contains(&d)) {
            failures.push(format!("valence {} at vertex {v} outside 1..=6", val[v]));
        }
        let edges = hn / 2;
        let euler = self.vertex_count as i64 - edges as i64 + faces as i64;
        if euler != 2 {
            failures.push(format!("euler characteristic {euler}"));
        }
        let curvature_sum: i64 = val.iter().map(|&d| 6 - d as i64).sum();
        if curvature_sum != 12 {
            failures.push(format!("sum of 6-valence is {curvature_sum}"));
        }
        ValidationReport {
            vertices: self.vertex_count,
            edges,
            faces,
            euler,
            curvature_sum,
            failures,
        }
    }

    /// BFS code of the mesh read from one oriented start half-edge.
    fn code_from(&self, start: usize, best: Option<&[u32]>) -> Option<Vec<u32>> {
        let f = self.triangles.len();
        let mut label = vec![u32::MAX; f];
        let mut rot = vec![0usize; f];
        let mut order = Vec::with_capacity(f);
        let mut code = Vec::with_capacity(6 * f);
        label[start / 3] = 0;
        rot[start / 3] = start % 3;
        order.push(start / 3);
        let mut idx = 0;
        let mut tight = best.is_some();
        while idx < order.len() {
            let t = order[idx];
            idx += 1;
            for k in 0..3 {
                let g = self.twin[3 * t + (rot[t] + k) % 3];
                let u = g / 3;
                if label[u] == u32::MAX {
                    label[u] = order.len() as u32;
                    rot[u] = g % 3;
                    order.push(u);
                }
                code.push(label[u]);
                code.push(((g % 3 + 3 - rot[u]) % 3) as u32);
                if tight {
                    let b = best.unwrap();
                    let n = code.len();
                    match code[n - 2..].cmp(&b[n - 2..n]) {
                        std::cmp::Ordering::Greater => return None,
                        std::cmp::Ordering::Less => tight = false,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
        }
        Some(code)
    }

    /// Orientation-preserving canonical form: the least BFS code over all rooted starts.
    pub fn canonical_code(&self) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for s in 0..self.twin.len() {
            if let Some(c) = self.code_from(s, best.as_deref()) {
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// The same surface with the opposite orientation.
    pub fn mirror(&self) -> Self {
        // corner order (0,2,1); old half-edge 3t+i becomes the reverse edge of the new triangle
        let map = |h: usize| 3 * (h / 3) + [2, 1, 0][h % 3];
        let mut twin = vec![0; self.twin.len()];
        for h in 0..self.twin.len() {
            twin[map(h)] = map(self.twin[h]);
        }
        Self {
            triangles: self.triangles.iter().map(|t| [t[0], t[2], t[1]]).collect(),
            twin,
            vertex_count: self.vertex_count,
            charts: self
                .charts
                .as_ref()
                .map(|c| c.iter().map(|t| [t[0], t[2], t[1]]).collect()),
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.triangles.len() == other.triangles.len()
            && self.valence_profile() == other.valence_profile()
            && self.canonical_code() == other.canonical_code()
    }

    /// Isomorphic after possibly reversing orientation.
    pub fn is_isomorphic_unoriented(&self, other: &Self) -> bool {
        self.is_isomorphic(other) || self.is_isomorphic(&other.mirror())
    }

    /// OFF text with every triangle flattened onto its own unit-equilateral chart.
    pub fn to_off_flattened(&self) -> String {
        let f = self.triangles.len();
        let mut s = format!("OFF\n{} {} {}\n", 3 * f, f, 3 * f);
        let h = 3f64.sqrt() / 2.0;
        for t in 0..f {
            let pts: [(f64, f64); 3] = match &self.charts {
                Some(c) => c[t].map(|z| (z.a as f64 + 0.5 * z.b as f64, h * z.b as f64)),
                None => {
                    let x = 2.0 * t as f64;
                    [(x, 0.0), (x + 1.0, 0.0), (x + 0.5, h)]
                }
            };
            for (x, y) in pts {
                writeln!(s, "{} {} 0", sig12(x), sig12(y)).unwrap();
            }
        }
        for t in 0..f {
            writeln!(s, "3 {} {} {}", 3 * t, 3 * t + 1, 3 * t + 2).unwrap();
        }
        s
    }

    /// OFF text keeping only the combinatorics; every vertex sits at the origin.
    pub fn to_off_combinatorial(&self) -> String {
        let f = self.triangles.len();
        let mut s = format!("OFF\n{} {} {}\n", self.vertex_count, f, 3 * f / 2);
        for _ in 0..self.vertex_count {
            s.push_str("0 0 0\n");
        }
        for t in &self.triangles {
            writeln!(s, "3 {} {} {}", t[0], t[1], t[2]).unwrap();
        }
        s
    }

    /// Reads the face list of an OFF file back into a mesh.
    pub fn from_off(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace);
        if tokens.next() != Some("OFF") {
            return Err(Error::Mesh("missing OFF header".into()));
        }
        let mut num = || -> Result<f64> {
            tokens
                .next()
                .ok_or_else(|| Error::Mesh("truncated OFF".into()))?
                .parse::<f64>()
                .map_err(|e| Error::Mesh(e.to_string()))
        };
        let v = num()? as usize;
        let f = num()? as usize;
        num()?;
        for _ in 0..3 * v {
            num()?;
        }
        let mut tris = Vec::with_capacity(f);
        for _ in 0..f {
            if num()? as usize != 3 {
                return Err(Error::Mesh("only triangular faces are supported".into()));
            }
            tris.push([num()? as usize, num()? as usize, num()? as usize]);
        }
        let mut mesh = Self::from_triangles(tris)?;
        mesh.vertex_count = mesh.vertex_count.max(v);
        Ok(mesh)
    }
}

pub fn tetrahedron() -> TriangulationMesh {
    TriangulationMesh::from_triangles(vec![[0, 1, 2], [0, 3, 1], [1, 3, 2], [0, 2, 3]]).unwrap()
}

pub fn octahedron() -> TriangulationMesh {
    // poles 0 and 5, equator 1..=4
    let mut t = Vec::new();
    for i in 0..4 {
        let a = 1 + i;
        let b = 1 + (i + 1) % 4;
        t.push([0, a, b]);
        t.push([5, b, a]);
    }
    TriangulationMesh::from_triangles(t).unwrap()
}

pub fn icosahedron() -> TriangulationMesh {
    // poles 0 and 11, upper ring 1..=5, lower ring 6..=10
    let mut t = Vec::new();
    for i in 0..5 {
        let u = 1 + i;
        let u1 = 1 + (i + 1) % 5;
        let l = 6 + i;
        let l1 = 6 + (i + 1) % 5;
        t.push([0, u, u1]);
        t.push([u, l, u1]);
        t.push([u1, l, l1]);
        t.push([11, l1, l]);
    }
    TriangulationMesh::from_triangles(t).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_fixtures_pass() {
        let ico = icosahedron();
        let r = ico.validate();
        assert!(r.passed(), "{r}");
        assert_eq!(ico.valences(), vec![5; 12]);
        let tet = tetrahedron();
        assert!(tet.validate().passed());
        assert_eq!(tet.valences(), vec![3; 4]);
        assert!(octahedron().validate().passed());
    }

    #[test]
    fn unmatched_edge_is_reported() {
        let err =
            TriangulationMesh::from_triangles(vec![[0, 1, 2], [0, 3, 1], [1, 3, 2]]).unwrap_err();
        assert!(err.to_string().contains("open edge"));
        let mut m = tetrahedron();
        m.twin[0] = 0;
        let r = m.validate();
        assert!(r.failures.iter().any(|f| f.contains("open edge")), "{r}");
    }

    #[test]
    fn doubled_triangle_from_twins() {
        // triangle 0 = (a,b,c), triangle 1 = (a,c,b)
        let m = TriangulationMesh::from_twins(vec![5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(m.vertex_count, 3);
        assert_eq!(m.valences(), vec![2, 2, 2]);
        assert!(m.validate().passed());
    }

    #[test]
    fn relabelling_keeps_canonical_code() {
        let ico = icosahedron();
        let perm: Vec<usize> = (0..12).map(|v| (v * 7 + 3) % 12).collect();
        let mut tris: Vec<[usize; 3]> = ico
            .triangles
            .iter()
            .map(|t| [perm[t[1]], perm[t[2]], perm[t[0]]])
            .collect();
        tris.reverse();
        let other = TriangulationMesh::from_triangles(tris).unwrap();
        assert!(ico.is_isomorphic(&other));
        assert!(!ico.is_isomorphic(&octahedron()));
    }

    #[test]
    fn mirror_is_valid() {
        let m = octahedron().mirror();
        assert!(m.validate().passed());
        assert!(m.is_isomorphic_unoriented(&octahedron()));
    }

    #[test]
    fn off_round_trip() {
        let ico = icosahedron();
        let text = ico.to_off_combinatorial();
        assert!(text.starts_with("OFF\n12 20 30\n"));
        let back = TriangulationMesh::from_off(&text).unwrap();
        assert!(back.is_isomorphic(&ico));
        let flat = ico.to_off_flattened();
        assert!(flat.starts_with("OFF\n60 20 60\n"));
    }
}
