//! Shapes of Eisenstein lattice hexagons as points of the Lorentz lattice Z^(1,3).
//!
//! Side lengths in cyclic order are `(p1, n-p1-p2, p2, n-p2-p3, p3, n-p3-p1)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::mesh::TriangulationMesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexagonParams {
    pub n: i64,
    pub p1: i64,
    pub p2: i64,
    pub p3: i64,
}

impl HexagonParams {
    pub const fn new(n: i64, p1: i64, p2: i64, p3: i64) -> Self {
        Self { n, p1, p2, p3 }
    }

    pub fn area(&self) -> i64 {
        self.n * self.n - self.p1 * self.p1 - self.p2 * self.p2 - self.p3 * self.p3
    }

    /// Area without overflow for any i64 entries.
    pub fn area_wide(&self) -> i128 {
        let sq = |x: i64| (x as i128) * (x as i128);
        sq(self.n) - sq(self.p1) - sq(self.p2) - sq(self.p3)
    }

    pub fn sides(&self) -> [i64; 6] {
        let Self { n, p1, p2, p3 } = *self;
        [p1, n - p1 - p2, p2, n - p2 - p3, p3, n - p3 - p1]
    }

    /// Inverse of [`sides`](Self::sides); fails unless the alternating sums agree.
    pub fn from_sides(s: [i64; 6]) -> Result<Self> {
        let n = s[0] + s[1] + s[2];
        if s[2] + s[3] + s[4] != n || s[4] + s[5] + s[0] != n {
            return Err(Error::Invalid(format!(
                "side lengths {s:?} do not close up"
            )));
        }
        Ok(Self::new(n, s[0], s[2], s[4]))
    }

    pub fn is_fundamental(&self) -> bool {
        self.sides().iter().all(|&s| s >= 0)
    }

    pub fn zero_sides(&self) -> usize {
        self.sides().iter().filter(|&&s| s == 0).count()
    }

    /// Negates side `side` (1..=6) by the Lorentz reflection fixing `{side = 0}`.
    pub fn butterfly(&self, side: usize) -> Result<Self> {
        let Self { n, p1, p2, p3 } = *self;
        let ov = || Error::Overflow("butterfly");
        // adds 2t to the two corners bounding edge side t
        let shift = |a: i64, b: i64| -> Result<(i64, i64, i64)> {
            let t2 = n
                .checked_sub(a)
                .and_then(|x| x.checked_sub(b))
                .and_then(|t| t.checked_mul(2))
                .ok_or_else(ov)?;
            Ok((
                n.checked_add(t2).ok_or_else(ov)?,
                a.checked_add(t2).ok_or_else(ov)?,
                b.checked_add(t2).ok_or_else(ov)?,
            ))
        };
        let h = match side {
            1 => Self::new(n, p1.checked_neg().ok_or_else(ov)?, p2, p3),
            3 => Self::new(n, p1, p2.checked_neg().ok_or_else(ov)?, p3),
            5 => Self::new(n, p1, p2, p3.checked_neg().ok_or_else(ov)?),
            2 => {
                let (n, p1, p2) = shift(p1, p2)?;
                Self::new(n, p1, p2, p3)
            }
            4 => {
                let (n, p2, p3) = shift(p2, p3)?;
                Self::new(n, p1, p2, p3)
            }
            6 => {
                let (n, p3, p1) = shift(p3, p1)?;
                Self::new(n, p1, p2, p3)
            }
            _ => return Err(Error::SideIndex(side)),
        };
        Ok(h)
    }

    pub fn apply_word(&self, word: &[usize]) -> Result<Self> {
        word.iter().try_fold(*self, |h, &s| h.butterfly(s))
    }

    /// Reduces into the fundamental domain, fixing the first violated side each time.
    pub fn reduce(&self) -> Result<(Self, Vec<usize>)> {
        self.reduce_with(|violated| violated[0])
    }

    /// Reduction with a caller-chosen violated side; negative corner sides always go first.
    pub fn reduce_with(
        &self,
        mut pick: impl FnMut(&[usize]) -> usize,
    ) -> Result<(Self, Vec<usize>)> {
        if self.area_wide() <= 0 || self.n <= 0 {
            return Err(Error::NonPositiveArea);
        }
        let mut h = *self;
        let mut word = Vec::new();
        loop {
            let s = h.sides();
            let corners: Vec<usize> = [1, 3, 5].into_iter().filter(|&i| s[i - 1] < 0).collect();
            let violated = if corners.is_empty() {
                [2, 4, 6].into_iter().filter(|&i| s[i - 1] < 0).collect()
            } else {
                corners
            };
            if violated.is_empty() {
                return Ok((h, word));
            }
            let side = pick(&violated);
            h = h.butterfly(side)?;
            word.push(side);
        }
    }
}

impl std::fmt::Display for HexagonParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.p1, self.p2, self.p3)
    }
}

impl FromStr for HexagonParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<i64> = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<_>>()?;
        match v[..] {
            [n, p1, p2, p3] => Ok(Self::new(n, p1, p2, p3)),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// Weighted hexagon counts; weight `2^-k` for `k` zero sides, stored in eighths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCounts {
    /// `eighths[m]` is eight times the weighted count of area `m`; index 0 unused.
    pub eighths: Vec<u64>,
}

impl WeightedCounts {
    pub fn m_max(&self) -> usize {
        self.eighths.len() - 1
    }

    pub fn count(&self, m: usize) -> Ratio<u64> {
        Ratio::new(self.eighths[m], 8)
    }

    pub fn count_f64(&self, m: usize) -> f64 {
        self.eighths[m] as f64 / 8.0
    }

    /// Centered moving average of the counts, window clipped at both ends.
    pub fn windowed(&self, window: usize) -> Vec<f64> {
        let m_max = self.m_max();
        let half = window / 2;
        (1..=m_max)
            .map(|m| {
                let lo = m.saturating_sub(half).max(1);
                let hi = (m + half).min(m_max);
                (lo..=hi).map(|k| self.count_f64(k)).sum::<f64>() / (hi - lo + 1) as f64
            })
            .collect()
    }

    /// Mean of count(m)/m over `lo..=hi`.
    pub fn mean_slope(&self, lo: usize, hi: usize) -> f64 {
        (lo..=hi).map(|m| self.count_f64(m) / m as f64).sum::<f64>() / (hi - lo + 1) as f64
    }

    pub fn to_csv(&self, window: usize) -> String {
        let avg = self.windowed(window);
        let mut s = String::from("m,weighted_count,windowed_average\n");
        for m in 1..=self.m_max() {
            let c = self.count(m);
            writeln!(s, "{m},{}/{},{}", c.numer(), c.denom(), sig12(avg[m - 1])).unwrap();
        }
        s
    }
}

fn weight_eighths(h: &HexagonParams) -> u64 {
    8 >> h.zero_sides()
}

/// Weighted count of fundamental hexagons of each area up to `m_max`.
pub fn enumerate_weighted(m_max: usize) -> WeightedCounts {
    let mm = m_max as i64;
    // a positive-area fundamental hexagon has area >= 2n - 2
    let n_max = (mm + 2) / 2;
    let parts: Vec<Vec<(usize, u64)>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut out = Vec::new();
            for p1 in 0..=n {
                for p2 in 0..=n - p1 {
                    let base = n * n - p1 * p1 - p2 * p2;
                    if base <= 0 {
                        continue;
                    }
                    let p3_hi = (n - p1).min(n - p2);
                    let need = base - mm;
                    let mut p3 = if need > 0 { isqrt_ceil(need) } else { 0 };
                    while p3 <= p3_hi {
                        let m = base - p3 * p3;
                        if m <= 0 {
                            break;
                        }
                        let h = HexagonParams::new(n, p1, p2, p3);
                        out.push((m as usize, weight_eighths(&h)));
                        p3 += 1;
                    }
                }
            }
            out
        })
        .collect();
    let mut eighths = vec![0u64; m_max + 1];
    for part in parts {
        for (m, w) in part {
            eighths[m] += w;
        }
    }
    WeightedCounts { eighths }
}

fn isqrt_ceil(x: i64) -> i64 {
    let mut r = (x as f64).sqrt() as i64;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

/// Two copies of the hexagon glued along their common boundary.
pub fn envelope(h: &HexagonParams) -> Result<TriangulationMesh> {
    if !h.is_fundamental() || h.area() <= 0 {
        return Err(Error::NotFundamental([h.n, h.p1, h.p2, h.p3]));
    }
    let HexagonParams { n, p1, p2, p3 } = *h;
    let e = EisensteinInt::new;
    // big triangle (0, n, n w); corners cut at 0, n and n w
    let inside =
        |cx3: i64, cy3: i64| cx3 + cy3 >= 3 * p1 && cx3 <= 3 * (n - p2) && cy3 <= 3 * (n - p3);
    let mut cells: Vec<[EisensteinInt; 3]> = Vec::new();
    for y in 0..n {
        for x in 0..n - y {
            if inside(3 * x + 1, 3 * y + 1) {
                cells.push([e(x, y), e(x + 1, y), e(x, y + 1)]);
            }
            if x + y + 2 <= n && inside(3 * x + 2, 3 * y + 2) {
                cells.push([e(x + 1, y), e(x + 1, y + 1), e(x, y + 1)]);
            }
        }
    }
    let f = cells.len();
    let mut edge_of: HashMap<(EisensteinInt, EisensteinInt), usize> = HashMap::new();
    for (t, c) in cells.iter().enumerate() {
        for i in 0..3 {
            edge_of.insert((c[i], c[(i + 1) % 3]), 3 * t + i);
        }
    }
    // copy B is the mirror image: corners (c0, c2, c1), so its half-edge 3t+j reverses copy-A edge [2,1,0][j]
    let rev = [2usize, 1, 0];
    let mut twin = vec![usize::MAX; 6 * f];
    for (t, c) in cells.iter().enumerate() {
        for i in 0..3 {
            let h = 3 * t + i;
            match edge_of.get(&(c[(i + 1) % 3], c[i])) {
                Some(&g) => {
                    twin[h] = g;
                    twin[3 * f + 3 * (g / 3) + rev[g % 3]] = 3 * f + 3 * t + rev[i];
                }
                None => {
                    twin[h] = 3 * f + 3 * t + rev[i];
                    twin[3 * f + 3 * t + rev[i]] = h;
                }
            }
        }
    }
    let charts: Vec<[EisensteinInt; 3]> = cells
        .iter()
        .copied()
        .chain(cells.iter().map(|c| [c[0], c[2], c[1]]))
        .collect();
    Ok(TriangulationMesh::from_twins(twin)?.with_charts(charts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(n: i64, p1: i64, p2: i64, p3: i64) -> HexagonParams {
        HexagonParams::new(n, p1, p2, p3)
    }

    /// Direct scan over every integer 4-tuple in a generous box.
    fn brute_counts(m_max: usize) -> Vec<u64> {
        let mut c = vec![0u64; m_max + 1];
        let n_max = (m_max as f64).sqrt().ceil() as i64 + m_max as i64;
        for n in 1..=n_max {
            for p1 in 0..=n {
                for p2 in 0..=n {
                    for p3 in 0..=n {
                        let x = h(n, p1, p2, p3);
                        let m = x.area();
                        if x.is_fundamental() && m > 0 && m as usize <= m_max {
                            c[m as usize] += 8 >> x.zero_sides();
                        }
                    }
                }
            }
        }
        c
    }

    #[test]
    fn area_examples() {
        assert_eq!(h(3, 1, 1, 1).area(), 6);
        assert_eq!(h(1, 0, 0, 0).area(), 1);
        assert_eq!(h(5, 3, 3, 1).area(), 6);
    }

    #[test]
    fn butterfly_examples() {
        assert_eq!(h(3, 1, 1, 1).butterfly(2).unwrap(), h(5, 3, 3, 1));
        assert_eq!(h(3, 1, 1, 1).butterfly(1).unwrap(), h(3, -1, 1, 1));
        assert_eq!(h(3, 1, 1, 1).butterfly(7), Err(Error::SideIndex(7)));
        assert_eq!(h(5, 3, 3, 1).sides()[1], -1);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(h(5, 3, 3, 1).reduce().unwrap(), (h(3, 1, 1, 1), vec![2]));
        assert_eq!(h(3, -1, 1, 1).reduce().unwrap(), (h(3, 1, 1, 1), vec![1]));
        assert_eq!(h(3, 1, 1, 1).reduce().unwrap(), (h(3, 1, 1, 1), vec![]));
        assert_eq!(h(1, 1, 1, 0).reduce(), Err(Error::NonPositiveArea));
    }

    #[test]
    fn side_lengths_round_trip() {
        let x = h(7, 2, -3, 4);
        assert_eq!(HexagonParams::from_sides(x.sides()).unwrap(), x);
        assert!(HexagonParams::from_sides([1, 1, 1, 1, 1, 2]).is_err());
        assert_eq!(
            "(5, 3,3,1)".parse::<HexagonParams>().unwrap(),
            h(5, 3, 3, 1)
        );
    }

    #[test]
    fn weights_of_small_hexagons() {
        assert_eq!(weight_eighths(&h(1, 0, 0, 0)), 1);
        assert_eq!(weight_eighths(&h(3, 1, 1, 1)), 8);
        // the two unit triangles (1,0,0,0) and (2,1,1,1)
        assert_eq!(h(2, 1, 1, 1).area(), 1);
        let c = enumerate_weighted(6);
        assert_eq!(c.count(1), Ratio::new(1, 4));
    }

    #[test]
    fn counts_match_brute_force_up_to_50() {
        let fast = enumerate_weighted(50);
        assert_eq!(fast.eighths, brute_counts(50));
    }

    #[test]
    fn adjacent_sides_never_both_zero() {
        for n in 1..=12 {
            for p1 in 0..=n {
                for p2 in 0..=n {
                    for p3 in 0..=n {
                        let x = h(n, p1, p2, p3);
                        if x.is_fundamental() && x.area() > 0 {
                            let s = x.sides();
                            assert!((0..6).all(|i| s[i] != 0 || s[(i + 1) % 6] != 0), "{x}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn csv_layout() {
        let csv = enumerate_weighted(10).to_csv(49);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 11);
        assert_eq!(lines[0], "m,weighted_count,windowed_average");
        assert!(lines[1].starts_with("1,1/4,"));
    }

    #[test]
    fn envelope_examples() {
        let m = envelope(&h(3, 1, 1, 1)).unwrap();
        assert_eq!(m.face_count(), 12);
        assert!(m.validate().passed(), "{}", m.validate());
        assert_eq!(m.valence_profile(), vec![4, 4, 4, 4, 4, 4, 6, 6]);
        let d = envelope(&h(1, 0, 0, 0)).unwrap();
        assert_eq!(d.face_count(), 2);
        assert_eq!(d.valence_profile(), vec![2, 2, 2]);
        assert_eq!(envelope(&h(2, 1, 0, 0)).unwrap().face_count(), 6);
        assert!(envelope(&h(5, 3, 3, 1)).is_err());
    }

    #[test]
    fn envelopes_are_spheres() {
        for n in 1..=7 {
            for p1 in 0..=n {
                for p2 in 0..=n - p1 {
                    for p3 in 0..=(n - p1).min(n - p2) {
                        let x = h(n, p1, p2, p3);
                        if x.area() <= 0 {
                            continue;
                        }
                        let m = envelope(&x).unwrap();
                        assert!(m.validate().passed(), "{x}: {}", m.validate());
                        assert_eq!(m.face_count() as i64, 2 * x.area());
                        // corners of the hexagon with nonzero turning
                        let six: usize = m.valences().iter().filter(|&&d| d != 6).count();
                        assert!(six <= 6);
                    }
                }
            }
        }
    }

    fn arb_fundamental() -> impl Strategy<Value = HexagonParams> {
        (1i64..40, 0i64..40, 0i64..40, 0i64..40)
            .prop_map(|(n, a, b, c)| h(n, a % (n + 1), b % (n + 1), c % (n + 1)))
            .prop_filter("fundamental", |x| x.is_fundamental() && x.area() > 0)
    }

    proptest! {
        #[test]
        fn butterfly_preserves_area(x in arb_fundamental(), word in prop::collection::vec(1usize..=6, 0..=50)) {
            let mut y = x;
            for &k in &word {
                match y.butterfly(k) {
                    Ok(z) => y = z,
                    Err(e) => {
                        // orbits grow exponentially; only a genuine i64 overflow may stop the walk
                        prop_assert_eq!(e, Error::Overflow("butterfly"));
                        prop_assert!(y.n.unsigned_abs() > 1 << 40);
                        break;
                    }
                }
                prop_assert_eq!(y.area_wide(), x.area_wide());
            }
        }

        #[test]
        fn butterfly_is_an_involution(n in -50i64..50, a in -50i64..50, b in -50i64..50, c in -50i64..50, k in 1usize..=6) {
            let x = h(n, a, b, c);
            let y = x.butterfly(k).unwrap();
            prop_assert_eq!(y.butterfly(k).unwrap(), x);
            prop_assert_eq!(y.sides()[k - 1], -x.sides()[k - 1]);
        }

        #[test]
        fn reduction_is_confluent(x in arb_fundamental(), word in prop::collection::vec(1usize..=6, 0..12), seed in any::<u64>()) {
            let y = x.apply_word(&word).unwrap();
            let (r, w) = y.reduce().unwrap();
            prop_assert_eq!(r, x);
            prop_assert_eq!(y.apply_word(&w).unwrap(), r);
            let mut state = seed;
            let (r2, _) = y.reduce_with(|v| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v[(state >> 33) as usize % v.len()]
            }).unwrap();
            prop_assert_eq!(r2, x);
        }

        #[test]
        fn edge_reflections_shrink_n(x in arb_fundamental(), word in prop::collection::vec(1usize..=6, 1..12)) {
            let mut y = x.apply_word(&word).unwrap();
            let bound = (x.area() as f64).sqrt().floor() as i64;
            while let Ok((_, w)) = y.reduce() {
                let Some(&s) = w.first() else { break };
                let z = y.butterfly(s).unwrap();
                if s % 2 == 0 {
                    prop_assert!(z.n < y.n);
                }
                prop_assert!(z.n >= bound);
                y = z;
            }
        }
    }
}
