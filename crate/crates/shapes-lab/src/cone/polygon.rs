//! Planar polygon helpers and doubled convex polygons.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{cross, ConeSurface};
use crate::eisenstein::EisensteinInt as Eis;
use crate::error::{Error, Result};

pub fn signed_area(p: &[Complex64]) -> f64 {
    (0..p.len())
        .map(|i| cross(p[i], p[(i + 1) % p.len()]))
        .sum::<f64>()
        / 2.0
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    cross(b - a, c - a)
}

/// Closed segments `ab` and `cd` meet.
pub fn segments_meet(a: Complex64, b: Complex64, c: Complex64, d: Complex64, eps: f64) -> bool {
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
        && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
    {
        return true;
    }
    let on = |p: Complex64, q: Complex64, r: Complex64, o: f64| {
        o.abs() <= eps
            && r.re >= p.re.min(q.re) - eps
            && r.re <= p.re.max(q.re) + eps
            && r.im >= p.im.min(q.im) - eps
            && r.im <= p.im.max(q.im) + eps
    };
    on(c, d, a, d1) || on(c, d, b, d2) || on(a, b, c, d3) || on(a, b, d, d4)
}

/// Counterclockwise polygon whose non-adjacent sides are disjoint.
pub fn is_simple_ccw(p: &[Complex64]) -> bool {
    let n = p.len();
    if n < 3 || signed_area(p) <= 0.0 {
        return false;
    }
    let scale = p.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let eps = 1e-12 * scale * scale;
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a, b, c, d) = (p[i], p[(i + 1) % n], p[j], p[(j + 1) % n]);
            if adjacent {
                // only the shared corner may be common
                let (x, y) = if j == i + 1 { (a, d) } else { (b, c) };
                let shared = if j == i + 1 { b } else { a };
                if (x - shared).norm() <= eps || (y - shared).norm() <= eps {
                    return false;
                }
                let back =
                    orient(x, shared, y).abs() <= eps && super::dot(x - shared, y - shared) > 0.0;
                if back {
                    return false;
                }
            } else if segments_meet(a, b, c, d, eps) {
                return false;
            }
        }
    }
    true
}

/// Triangulates a simple counterclockwise polygon by clipping ears.
pub fn ear_clip(p: &[Complex64]) -> Result<Vec<[usize; 3]>> {
    let n = p.len();
    if n < 3 {
        return Err(Error::Invalid("polygon needs three vertices".into()));
    }
    let scale = p.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let eps = 1e-12 * scale * scale;
    let mut idx: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n - 2);
    while idx.len() > 3 {
        let m = idx.len();
        let ear = (0..m).find(|&k| {
            let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            if orient(p[a], p[b], p[c]) <= eps {
                return false;
            }
            idx.iter().all(|&j| {
                if j == a || j == b || j == c {
                    return true;
                }
                let q = p[j];
                !(orient(p[a], p[b], q) >= -eps
                    && orient(p[b], p[c], q) >= -eps
                    && orient(p[c], p[a], q) >= -eps)
            })
        });
        let k = ear.ok_or_else(|| Error::Invalid("polygon has no ear; it is not simple".into()))?;
        out.push([idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]]);
        idx.remove(k);
    }
    if orient(p[idx[0]], p[idx[1]], p[idx[2]]) <= eps {
        return Err(Error::Invalid("degenerate final triangle".into()));
    }
    out.push([idx[0], idx[1], idx[2]]);
    Ok(out)
}

/// Glues a triangulated polygon to its mirror image along the boundary.
pub fn double(p: &[Complex64], exact: Option<&[Eis]>) -> Result<ConeSurface> {
    let n = p.len();
    let tris = ear_clip(p)?;
    let mut faces: Vec<[usize; 3]> = tris.clone();
    faces.extend(tris.iter().map(|&[a, b, c]| [c + n, b + n, a + n]));
    let pos = |v: usize| if v < n { p[v] } else { p[v - n].conj() };
    let mut dir: HashMap<(usize, usize), usize> = HashMap::new();
    for (t, f) in faces.iter().enumerate() {
        for i in 0..3 {
            dir.insert((f[i], f[(i + 1) % 3]), 3 * t + i);
        }
    }
    let mut twin = vec![usize::MAX; 3 * faces.len()];
    for (&(a, b), &h) in &dir {
        let g = match dir.get(&(b, a)) {
            Some(&g) => g,
            // boundary side of one copy meets the reversed side of the other
            None => {
                let flip = |v: usize| if v < n { v + n } else { v - n };
                dir[&(flip(b), flip(a))]
            }
        };
        twin[h] = g;
    }
    let edges = faces
        .iter()
        .flat_map(|f| (0..3).map(move |i| pos(f[(i + 1) % 3]) - pos(f[i])))
        .collect();
    let mut s = ConeSurface::from_float(edges, twin.clone());
    if let Some(e) = exact {
        let epos = |v: usize| if v < n { e[v] } else { e[v - n].conj() };
        let lattice = faces
            .iter()
            .flat_map(|f| (0..3).map(move |i| epos(f[(i + 1) % 3]) - epos(f[i])))
            .collect();
        s = ConeSurface::from_lattice(lattice, twin);
    }
    Ok(s)
}

fn check_curvatures(curv: &[f64]) -> Result<()> {
    if curv.len() < 3 {
        return Err(Error::Invalid("need at least three cone points".into()));
    }
    if curv.iter().any(|&k| !(k > 0.0 && k < TAU)) {
        return Err(Error::Invalid("curvatures must lie in (0, 2 pi)".into()));
    }
    let sum: f64 = curv.iter().sum();
    if (sum - 2.0 * TAU).abs() > 1e-9 {
        return Err(Error::Invalid(format!("curvatures sum to {sum}, not 4 pi")));
    }
    Ok(())
}

/// Convex polygon with turning angle `curv[i] / 2` at vertex `i`, circumscribed about the unit circle.
pub fn tangential_polygon(curv: &[f64]) -> Result<Vec<Complex64>> {
    check_curvatures(curv)?;
    let n = curv.len();
    let tl: Vec<f64> = curv.iter().map(|k| (k / 4.0).tan()).collect();
    let mut pts = Vec::with_capacity(n);
    let mut z = Complex64::new(0.0, 0.0);
    let mut heading = 0.0;
    for i in 0..n {
        pts.push(z);
        let len = tl[i] + tl[(i + 1) % n];
        z += Complex64::from_polar(len, heading);
        heading += curv[(i + 1) % n] / 2.0;
    }
    Ok(pts)
}

/// The doubled convex polygon realizing the given curvatures, in order.
pub fn double_polygon(curv: &[f64]) -> Result<ConeSurface> {
    let p = tangential_polygon(curv)?;
    double(&p, None)
}

/// A long doubled stadium: the curvatures in `cap_a` and in `cap_b` each sum to `2 pi` and sit at
/// opposite ends; the straight sides are `aspect` times the width.
pub fn thin_double_polygon(cap_a: &[f64], cap_b: &[f64], aspect: f64) -> Result<ConeSurface> {
    let all: Vec<f64> = cap_b.iter().chain(cap_a).copied().collect();
    check_curvatures(&all)?;
    for cap in [cap_a, cap_b] {
        if (cap.iter().sum::<f64>() - TAU).abs() > 1e-9 {
            return Err(Error::Invalid("each cap must carry curvature 2 pi".into()));
        }
    }
    // walk one cap with unit sides, starting along the heading `start`
    let chain = |cap: &[f64], start: f64| {
        let mut z = Complex64::new(0.0, 0.0);
        let mut pts = vec![z];
        let mut h = start + cap[0] / 2.0;
        for k in &cap[1..] {
            z += Complex64::from_polar(1.0, h);
            pts.push(z);
            h += k / 2.0;
        }
        pts
    };
    let b = chain(cap_b, 0.0);
    let a = chain(cap_a, PI);
    let (db, da) = (*b.last().unwrap(), *a.last().unwrap());
    if db.im <= 0.0 || da.im >= 0.0 {
        return Err(Error::Invalid(
            "each cap needs two or more cone points".into(),
        ));
    }
    let lambda = db.im / -da.im;
    let width = db.im;
    let bottom = aspect * width;
    let top = bottom + db.re + lambda * da.re;
    if top <= 0.0 {
        return Err(Error::Invalid("aspect too small for these caps".into()));
    }
    let mut pts: Vec<Complex64> = b.iter().map(|z| z + bottom).collect();
    let corner = Complex64::new(bottom, 0.0) + db + Complex64::new(-top, 0.0);
    pts.extend(a.iter().map(|z| corner + z * lambda));
    if (corner + da * lambda).norm() > 1e-9 * bottom {
        return Err(Error::Invalid("stadium does not close".into()));
    }
    double(&pts, None)
}
