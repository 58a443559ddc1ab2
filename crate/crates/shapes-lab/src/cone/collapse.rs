//! Merging two cone points by slitting a geodesic between them and sewing in a cap.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::ConeSurface;
use crate::error::{Error, Result};
use crate::mesh::{next, prev};

/// A straight chain of half-edges between two cone points through flat vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicArc {
    pub half_edges: Vec<usize>,
}

/// Area gained per squared arc length when points of curvature `a` and `b` merge.
pub fn cap_area_constant(a: f64, b: f64) -> f64 {
    (a / 2.0).sin() * (b / 2.0).sin() / ((a + b) / 2.0).sin()
}

fn check_arc(s: &ConeSurface, arc: &GeodesicArc) -> Result<(usize, usize)> {
    let (label, _) = s.vertex_labels();
    let curv = s.curvatures();
    let hs = &arc.half_edges;
    let bad = |m: &str| Error::Surface(format!("not a geodesic arc: {m}"));
    let (pi, pj) = (label[hs[0]], label[next(hs[hs.len() - 1])]);
    if pi == pj {
        return Err(bad("endpoints coincide"));
    }
    let mut used = std::collections::HashSet::new();
    for &h in hs {
        if h >= s.twin.len() || !used.insert(h.min(s.twin[h])) {
            return Err(bad("repeated edge"));
        }
    }
    for w in hs.windows(2) {
        let v = label[next(w[0])];
        if label[w[1]] != v {
            return Err(bad("half-edges do not chain"));
        }
        if curv[v].abs() > 1e-9 || v == pi || v == pj {
            return Err(bad("passes through a cone point"));
        }
        // angle on the left, from the outgoing edge around to the reversed incoming one
        let back = s.twin[w[0]];
        let mut g = w[1];
        let mut angle = 0.0;
        while g != back {
            angle += s.corner_angle(g);
            g = s.twin[prev(g)];
        }
        if (angle - PI).abs() > 1e-9 {
            return Err(bad("turns at a flat vertex"));
        }
    }
    Ok((pi, pj))
}

/// Merges the endpoints of `arc` into one cone point carrying their total curvature.
/// Existing half-edge indices are kept, with the cap appended; an empty arc changes nothing.
pub fn collapse_pair(s: &ConeSurface, arc: &GeodesicArc) -> Result<ConeSurface> {
    if arc.half_edges.is_empty() {
        return Ok(s.clone());
    }
    let (pi, pj) = check_arc(s, arc)?;
    let curv = s.curvatures();
    let (ki, kj) = (curv[pi], curv[pj]);
    if ki <= 1e-9 || kj <= 1e-9 {
        return Err(Error::Surface(
            "endpoints must be positively curved cone points".into(),
        ));
    }
    if ki + kj >= TAU - 1e-12 {
        return Err(Error::NoCollision);
    }
    let hs = &arc.half_edges;
    let m = hs.len();
    let mut cum = vec![0.0];
    for &h in hs {
        cum.push(cum.last().unwrap() + s.edge_length(h));
    }
    let len = cum[m];
    let side = len * (kj / 2.0).sin() / ((ki + kj) / 2.0).sin();
    let xa = Complex64::from_polar(side, -ki / 2.0);
    let xb = xa.conj();
    let w = |k: usize| Complex64::new(cum[k], 0.0);
    let mut out = s.to_float();
    let base = s.twin.len();
    let ta = |k: usize| base + 3 * (k - 1);
    let tb = |k: usize| base + 3 * m + 3 * (k - 1);
    out.edges.resize(base + 6 * m, Complex64::new(0.0, 0.0));
    out.twin.resize(base + 6 * m, super::UNGLUED);
    let link = |a: usize, b: usize, twin: &mut Vec<usize>| {
        twin[a] = b;
        twin[b] = a;
    };
    for k in 1..=m {
        let (a, b) = (ta(k), tb(k));
        out.edges[a] = w(k - 1) - w(k);
        out.edges[a + 1] = xa - w(k - 1);
        out.edges[a + 2] = w(k) - xa;
        out.edges[b] = w(k) - w(k - 1);
        out.edges[b + 1] = xb - w(k);
        out.edges[b + 2] = w(k - 1) - xb;
        let (h, g) = (hs[k - 1], s.twin[hs[k - 1]]);
        link(a, h, &mut out.twin);
        link(b, g, &mut out.twin);
        if k < m {
            link(a + 2, ta(k + 1) + 1, &mut out.twin);
            link(b + 1, tb(k + 1) + 2, &mut out.twin);
        }
    }
    link(ta(1) + 1, tb(1) + 2, &mut out.twin);
    link(ta(m) + 2, tb(m) + 1, &mut out.twin);
    Ok(out)
}
