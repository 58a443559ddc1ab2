//! Twisted edge cocycles and the Hermitian area form on them.
//!
//! A cocycle assigns a complex number to every half-edge, in its triangle's frame, with the
//! three values of each triangle summing to zero and `Z(twin h) = -rho_h Z(h)` for the
//! reference gluing rotations. The surface's own edge vectors are one such cocycle.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ConeSurface;
use crate::error::{Error, Result};
use crate::mesh::{next, prev};

#[derive(Debug, Clone)]
pub struct CocycleBasis {
    /// Half-edges whose values are free, one per spanning-tree edge.
    pub leaders: Vec<usize>,
    pub v_last: usize,
    label: Vec<usize>,
    rho: Vec<Complex64>,
    twin: Vec<usize>,
    own: Vec<Complex64>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Leaders form a spanning tree on all vertices but the last one.
pub fn cocycle_basis(s: &ConeSurface) -> Result<CocycleBasis> {
    let (label, n) = s.vertex_labels();
    if n < 3 {
        return Err(Error::Surface("need at least three vertices".into()));
    }
    let v_last = n - 1;
    let dest = |h: usize| label[next(h)];
    if (0..s.twin.len()).any(|h| label[h] == v_last && dest(h) == v_last) {
        return Err(Error::Surface("loop edge at the last vertex".into()));
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut leaders = Vec::new();
    while let Some(u) = queue.pop_front() {
        for h in 0..s.twin.len() {
            let w = dest(h);
            if label[h] == u && w != v_last && !seen[w] {
                seen[w] = true;
                leaders.push(h);
                queue.push_back(w);
            }
        }
    }
    if leaders.len() != n - 2 {
        return Err(Error::Surface(
            "vertices other than the last are disconnected".into(),
        ));
    }
    let rho = (0..s.twin.len()).map(|h| s.transition(h)).collect();
    Ok(CocycleBasis {
        leaders,
        v_last,
        label,
        rho,
        twin: s.twin.clone(),
        own: s.edges.clone(),
    })
}

impl CocycleBasis {
    pub fn dimension(&self) -> usize {
        self.leaders.len()
    }

    /// Leader values of the reference surface itself.
    pub fn own_leaders(&self) -> Vec<Complex64> {
        self.leaders.iter().map(|&h| self.own[h]).collect()
    }

    pub fn leader_values(&self, full: &[Complex64]) -> Vec<Complex64> {
        self.leaders.iter().map(|&h| full[h]).collect()
    }

    fn set(&self, z: &mut [Option<Complex64>], h: usize, v: Complex64) {
        z[h] = Some(v);
        z[self.twin[h]] = Some(-self.rho[h] * v);
    }

    /// The unique cocycle with the given leader values.
    pub fn extend(&self, leaders: &[Complex64]) -> Result<Vec<Complex64>> {
        if leaders.len() != self.leaders.len() {
            return Err(Error::Surface(format!(
                "expected {} leader values",
                self.leaders.len()
            )));
        }
        let hn = self.twin.len();
        let mut z: Vec<Option<Complex64>> = vec![None; hn];
        for (&h, &v) in self.leaders.iter().zip(leaders) {
            self.set(&mut z, h, v);
        }
        let touches = |h: usize| self.label[h] == self.v_last;
        let mut progress = true;
        while progress {
            progress = false;
            for t in 0..hn / 3 {
                let hs = [3 * t, 3 * t + 1, 3 * t + 2];
                if hs.iter().any(|&h| touches(h)) {
                    continue;
                }
                let unknown: Vec<usize> = hs.iter().copied().filter(|&h| z[h].is_none()).collect();
                if let [u] = unknown[..] {
                    let sum: Complex64 = hs.iter().filter_map(|&h| z[h]).sum();
                    self.set(&mut z, u, -sum);
                    progress = true;
                }
            }
        }
        let incident = |h: usize| touches(h) || touches(next(h));
        if (0..hn).any(|h| !incident(h) && z[h].is_none()) {
            return Err(Error::Surface("cocycle peeling is stuck".into()));
        }
        // develop the link of the last vertex; its position is the holonomy fixed point
        let start = (0..hn)
            .find(|&h| touches(h))
            .expect("last vertex has a corner");
        let mut fan = vec![start];
        let mut g = self.twin[prev(start)];
        while g != start {
            fan.push(g);
            g = self.twin[prev(g)];
        }
        let mut m = Complex64::new(1.0, 0.0);
        let mut a = zero();
        let mut frames = Vec::with_capacity(fan.len());
        for &h in &fan {
            frames.push((m, a));
            a += m * z[next(h)].ok_or_else(|| Error::Surface("link edge unknown".into()))?;
            // frame of the next fan triangle, seen from this one
            m /= self.rho[prev(h)];
        }
        let r = m;
        if (Complex64::new(1.0, 0.0) - r).norm() < 1e-12 {
            return Err(Error::NoFixedPoint);
        }
        let p = a / (Complex64::new(1.0, 0.0) - r);
        for (&h, &(m, a)) in fan.iter().zip(&frames) {
            self.set(&mut z, h, (a - p) / m);
        }
        Ok(z.into_iter().map(|v| v.unwrap_or_else(zero)).collect())
    }
}

/// `Z -> area` on full cocycles: half the sum over triangles of `Im(conj(z0) z1)`.
pub fn area_of(z: &[Complex64]) -> f64 {
    (0..z.len() / 3)
        .map(|t| (z[3 * t].conj() * z[3 * t + 1]).im / 2.0)
        .sum()
}

#[derive(Debug, Clone)]
pub struct AreaForm {
    /// Hermitian matrix `M` with `area(Z) = Z* M Z` in leader coordinates.
    pub matrix: DMatrix<Complex64>,
}

pub fn area_form(b: &CocycleBasis) -> Result<AreaForm> {
    let d = b.dimension();
    let cols: Vec<Vec<Complex64>> = (0..d)
        .map(|j| {
            let mut e = vec![zero(); d];
            e[j] = Complex64::new(1.0, 0.0);
            b.extend(&e)
        })
        .collect::<Result<_>>()?;
    let f = b.twin.len() / 3;
    let quarter_i = Complex64::new(0.0, 4.0).inv();
    let matrix = DMatrix::from_fn(d, d, |j, k| {
        let mut s = zero();
        for t in 0..f {
            let (aj, bj) = (cols[j][3 * t], cols[j][3 * t + 1]);
            let (ak, bk) = (cols[k][3 * t], cols[k][3 * t + 1]);
            s += aj.conj() * bk - bj.conj() * ak;
        }
        s * quarter_i
    });
    Ok(AreaForm { matrix })
}

impl AreaForm {
    pub fn eval(&self, z: &[Complex64]) -> f64 {
        let v = nalgebra::DVector::from_column_slice(z);
        (v.adjoint() * &self.matrix * v)[(0, 0)].re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self
            .matrix
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }

    /// Counts of positive and negative eigenvalues, relative to the largest one.
    pub fn signature(&self) -> (usize, usize) {
        let e = self.eigenvalues();
        let scale = e.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let tol = 1e-9 * scale.max(1e-300);
        (
            e.iter().filter(|&&x| x > tol).count(),
            e.iter().filter(|&&x| x < -tol).count(),
        )
    }
}
