//! Curvature tuples `p_i / q` (in units of 2pi, summing to 2) and the
//! classification of the ball-quotient orbifolds they define.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurvatureTuple {
    pub q: u32,
    /// Sorted descending.
    pub numerators: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    NotOrbifold,
    Pure,
    Interchange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arithmeticity {
    Arithmetic,
    NonArithmetic,
}

impl fmt::Display for Arithmeticity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arithmeticity::Arithmetic => "AR",
            Arithmeticity::NonArithmetic => "NA",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbifoldRow {
    pub tuple: CurvatureTuple,
    pub degree: u32,
    pub arithmetic: Arithmeticity,
    pub pure: bool,
    pub compact: bool,
}

impl CurvatureTuple {
    pub fn new(q: u32, mut numerators: Vec<u32>) -> Result<Self> {
        numerators.sort_unstable_by(|a, b| b.cmp(a));
        let t = CurvatureTuple { q, numerators };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        let q = self.q;
        if q < 2 {
            return Err(Error::Tuple(format!("denominator {q} too small")));
        }
        if let Some(&p) = self.numerators.iter().find(|&&p| p == 0 || p >= q) {
            return Err(Error::Tuple(format!("numerator {p} outside (0, {q})")));
        }
        let sum: u64 = self.numerators.iter().map(|&p| p as u64).sum();
        if sum != 2 * q as u64 {
            return Err(Error::Tuple(format!(
                "numerators sum to {sum}, expected {}",
                2 * q
            )));
        }
        let g = self.numerators.iter().fold(q, |g, &p| g.gcd(&p));
        if g != 1 {
            return Err(Error::Tuple(format!(
                "denominator {q} is not least (common factor {g})"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }
}

impl fmt::Display for CurvatureTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.q)?;
        for p in &self.numerators {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

/// Outcome of the pair test for curvatures `a/q`, `b/q` with `a + b < q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum PairTest {
    Free,
    Divides,
    Swap,
    Fails,
}

#[inline]
fn pair_test(q: u32, a: u32, b: u32) -> PairTest {
    if a + b >= q {
        return PairTest::Free;
    }
    if q.is_multiple_of(q - a - b) {
        PairTest::Divides
    } else if a == b && (2 * q).is_multiple_of(q - 2 * a) {
        PairTest::Swap
    } else {
        PairTest::Fails
    }
}

#[inline]
fn pair_ok(q: u32, a: u32, b: u32) -> bool {
    pair_test(q, a, b) != PairTest::Fails
}

pub fn classify(t: &CurvatureTuple) -> Classification {
    let ps = &t.numerators;
    let mut pure = true;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            match pair_test(t.q, ps[i], ps[j]) {
                PairTest::Free | PairTest::Divides => {}
                PairTest::Swap => pure = false,
                PairTest::Fails => return Classification::NotOrbifold,
            }
        }
    }
    if pure {
        Classification::Pure
    } else {
        Classification::Interchange
    }
}

/// No sub-multiset of curvatures sums to exactly 2pi.
pub fn is_compact(t: &CurvatureTuple) -> bool {
    let q = t.q as usize;
    let mut reach = vec![false; q + 1];
    reach[0] = true;
    for &p in &t.numerators {
        let p = p as usize;
        for s in (p..=q).rev() {
            if reach[s - p] {
                reach[s] = true;
            }
        }
    }
    !reach[q]
}

pub fn totient(q: u32) -> u32 {
    let mut n = q;
    let mut r = q;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            r -= r / d;
        }
        d += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

pub fn degree(t: &CurvatureTuple) -> u32 {
    totient(t.q)
}

/// `s_t = (1/q)·sum (t·p_i mod q)` for a unit `t` of `Z/q`.
pub fn galois_weight(t: &CurvatureTuple, unit: u32) -> u32 {
    let q = t.q as u64;
    let s: u64 = t
        .numerators
        .iter()
        .map(|&p| (unit as u64 * p as u64) % q)
        .sum();
    (s / q) as u32
}

/// Arithmetic iff every Galois conjugate form other than `t = ±1` is definite,
/// i.e. has weight `1` or `n − 1`.
pub fn arithmeticity(t: &CurvatureTuple) -> Arithmeticity {
    let n = t.len() as u32;
    for u in 2..t.q.saturating_sub(1) {
        if 2 * u > t.q {
            break;
        }
        if u.gcd(&t.q) != 1 {
            continue;
        }
        let s = galois_weight(t, u);
        if s != 1 && s + 1 != n {
            return Arithmeticity::NonArithmetic;
        }
    }
    Arithmeticity::Arithmetic
}

pub fn row(t: CurvatureTuple) -> Option<OrbifoldRow> {
    let cls = classify(&t);
    if cls == Classification::NotOrbifold {
        return None;
    }
    Some(OrbifoldRow {
        degree: degree(&t),
        arithmetic: arithmeticity(&t),
        pure: cls == Classification::Pure,
        compact: is_compact(&t),
        tuple: t,
    })
}

/// Table order: by denominator, then by the numerators read from the smallest
/// upward, compared lexicographically.
pub fn table_key(t: &CurvatureTuple) -> (u32, Vec<u32>) {
    (t.q, t.numerators.iter().rev().copied().collect())
}

fn sort_rows(rows: &mut [OrbifoldRow]) {
    rows.sort_by_cached_key(|r| table_key(&r.tuple));
}

/// Orbifold tuples with `n >= 5` at one denominator.
///
/// Two curvatures with `p_i + p_j >= q` cannot both be at least `q − p_min`,
/// since `n >= 5` leaves at least `3·p_min` for the rest. So every element but
/// possibly the largest lies in `[p_min, q − p_min)`, where the pair test with
/// `p_min` is a strong filter. The largest element is the remainder.
pub fn enumerate_q(q: u32) -> Vec<CurvatureTuple> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(32);
    for pmin in 1..q {
        if 5 * pmin > 2 * q {
            break;
        }
        let allowed: Vec<u32> = (pmin..q - pmin).filter(|&p| pair_ok(q, p, pmin)).collect();
        cur.clear();
        cur.push(pmin);
        grow(q, &allowed, &mut cur, 2 * q - pmin, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

fn grow(q: u32, allowed: &[u32], cur: &mut Vec<u32>, rem: u32, out: &mut Vec<CurvatureTuple>) {
    let last = *cur.last().unwrap();
    if cur.len() >= 4 && rem >= last && rem < q && cur.iter().all(|&x| pair_ok(q, rem, x)) {
        let g = cur.iter().fold(q.gcd(&rem), |g, &p| g.gcd(&p));
        if g == 1 {
            let mut nums = cur.clone();
            nums.push(rem);
            nums.reverse();
            out.push(CurvatureTuple {
                q,
                numerators: nums,
            });
        }
    }
    let start = allowed.partition_point(|&p| p < last);
    for &p in &allowed[start..] {
        if 2 * p > rem {
            break;
        }
        if cur.iter().all(|&x| pair_ok(q, p, x)) {
            cur.push(p);
            grow(q, allowed, cur, rem - p, out);
            cur.pop();
        }
    }
}

/// Every orbifold row with `3 <= q <= q_max` and `n >= 5`, sorted by
/// denominator and then by descending numerator sequence.
pub fn enumerate(q_max: u32) -> Vec<OrbifoldRow> {
    let mut rows: Vec<OrbifoldRow> = (3..=q_max)
        .into_par_iter()
        .flat_map_iter(|q| enumerate_q(q).into_iter().filter_map(row))
        .collect();
    sort_rows(&mut rows);
    rows
}

/// Unpruned search over all partitions of `2q` into parts in `(0, q)`.
pub fn enumerate_unpruned(q_max: u32) -> Vec<OrbifoldRow> {
    fn parts(q: u32, rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            parts(q, rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut rows = Vec::new();
    for q in 3..=q_max {
        let mut all = Vec::new();
        parts(q, 2 * q, q - 1, &mut Vec::new(), &mut all);
        for nums in all {
            if nums.len() < 5 {
                continue;
            }
            if let Ok(t) = CurvatureTuple::new(q, nums) {
                rows.extend(row(t));
            }
        }
    }
    sort_rows(&mut rows);
    rows
}

pub fn to_csv(rows: &[OrbifoldRow]) -> String {
    let mut s = String::from("q,numerators,degree,arithmetic,pure,compact\n");
    for r in rows {
        let nums: Vec<String> = r.tuple.numerators.iter().map(|p| p.to_string()).collect();
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.tuple.q,
            nums.join(" "),
            r.degree,
            r.arithmetic,
            if r.pure { "P" } else { "I" },
            if r.compact { "C" } else { "N" }
        ));
    }
    s
}

pub fn to_markdown(rows: &[OrbifoldRow]) -> String {
    let mut s = String::from(
        "| q | numerators | degree | AR/NA | P/I | C/N |\n|---|---|---|---|---|---|\n",
    );
    for r in rows {
        let nums: Vec<String> = r.tuple.numerators.iter().map(|p| p.to_string()).collect();
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            r.tuple.q,
            nums.join(" "),
            r.degree,
            r.arithmetic,
            if r.pure { "P" } else { "I" },
            if r.compact { "C" } else { "N" }
        ));
    }
    s
}

/// Parses rows written as whitespace separated `q p_1 .. p_n degree AR|NA P|I C|N`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_rows(text: &str) -> Result<Vec<OrbifoldRow>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Tuple(format!("bad row {line:?}"));
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() < 6 {
            return Err(bad());
        }
        let k = tok.len();
        let q: u32 = tok[0].parse().map_err(|_| bad())?;
        let nums = tok[1..k - 4]
            .iter()
            .map(|x| x.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let degree: u32 = tok[k - 4].parse().map_err(|_| bad())?;
        let arithmetic = match tok[k - 3] {
            "AR" => Arithmeticity::Arithmetic,
            "NA" | "NR" => Arithmeticity::NonArithmetic,
            _ => return Err(bad()),
        };
        let pure = match tok[k - 2] {
            "P" => true,
            "I" => false,
            _ => return Err(bad()),
        };
        let compact = match tok[k - 1] {
            "C" => true,
            "N" => false,
            _ => return Err(bad()),
        };
        rows.push(OrbifoldRow {
            tuple: CurvatureTuple::new(q, nums)?,
            degree,
            arithmetic,
            pure,
            compact,
        });
    }
    Ok(rows)
}

/// Parses the markdown table produced by [`to_markdown`].
pub fn parse_markdown(text: &str) -> Result<Vec<OrbifoldRow>> {
    let body: Vec<String> = text
        .lines()
        .filter(|l| l.starts_with('|') && !l.starts_with("| q ") && !l.starts_with("|---"))
        .map(|l| l.replace('|', " "))
        .collect();
    parse_rows(&body.join("\n"))
}

/// Field-by-field differences between two row lists, keyed by tuple.
pub fn diff_rows(got: &[OrbifoldRow], want: &[OrbifoldRow]) -> Vec<String> {
    use std::collections::BTreeMap;
    let g: BTreeMap<_, _> = got.iter().map(|r| (&r.tuple, r)).collect();
    let w: BTreeMap<_, _> = want.iter().map(|r| (&r.tuple, r)).collect();
    let mut out = Vec::new();
    for (k, r) in &w {
        match g.get(k) {
            None => out.push(format!("missing {k}")),
            Some(x) if x != r => out.push(format!("{k}: got {:?}, want {:?}", x, r)),
            _ => {}
        }
    }
    for k in g.keys() {
        if !w.contains_key(k) {
            out.push(format!("unexpected {k}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(q: u32, p: &[u32]) -> CurvatureTuple {
        CurvatureTuple::new(q, p.to_vec()).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&t(3, &[1; 6])), Classification::Pure);
        assert_eq!(classify(&t(6, &[1; 12])), Classification::Interchange);
        assert_eq!(classify(&t(5, &[2; 5])), Classification::Pure);
        assert_eq!(
            classify(&t(7, &[3, 3, 3, 3, 2])),
            Classification::NotOrbifold
        );
    }

    #[test]
    fn compactness_examples() {
        assert!(!is_compact(&t(3, &[1; 6])));
        assert!(is_compact(&t(5, &[2; 5])));
        assert!(!is_compact(&t(12, &[7, 5, 3, 3, 3, 3])));
    }

    #[test]
    fn degrees() {
        assert_eq!(totient(3), 2);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(42), 12);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(97), 96);
    }

    #[test]
    fn arithmeticity_examples() {
        let x = t(12, &[5, 5, 5, 3, 3, 3]);
        assert_eq!(galois_weight(&x, 5), 1);
        assert_eq!(galois_weight(&x, 7), 5);
        assert_eq!(arithmeticity(&x), Arithmeticity::Arithmetic);
        let y = t(12, &[7, 5, 3, 3, 3, 3]);
        assert_eq!(galois_weight(&y, 5), 2);
        assert_eq!(arithmeticity(&y), Arithmeticity::NonArithmetic);
        assert_eq!(arithmeticity(&t(3, &[1; 6])), Arithmeticity::Arithmetic);
    }

    #[test]
    fn invalid_tuples_are_rejected() {
        assert!(CurvatureTuple::new(6, vec![2, 2, 2, 2, 2, 2]).is_err());
        assert!(CurvatureTuple::new(5, vec![2, 2, 2, 2, 1]).is_err());
        assert!(CurvatureTuple::new(5, vec![5, 2, 2, 1]).is_err());
    }

    #[test]
    fn first_block_has_nine_rows() {
        let rows = enumerate(5);
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[0].tuple, t(3, &[1; 6]));
        assert!(rows.iter().all(|r| r.tuple.q <= 5));
    }

    #[test]
    fn pruned_matches_unpruned_small() {
        assert_eq!(enumerate(9), enumerate_unpruned(9));
    }

    #[test]
    fn text_formats_round_trip() {
        let rows = enumerate(12);
        assert_eq!(parse_markdown(&to_markdown(&rows)).unwrap(), rows);
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().count(), rows.len() + 1);
        assert!(diff_rows(&rows, &rows).is_empty());
    }

    proptest! {
        #[test]
        fn conjugate_weights_pair_up(q in 3u32..60, seed in 0u64..1000) {
            // build a random valid tuple at this denominator
            let mut nums = vec![];
            let mut rem = 2 * q;
            let mut s = seed;
            while rem > 0 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let hi = rem.min(q - 1);
                let p = 1 + (s >> 33) as u32 % hi;
                nums.push(p);
                rem -= p;
            }
            let g = nums.iter().fold(q, |g, &p| g.gcd(&p));
            prop_assume!(g == 1);
            let tup = CurvatureTuple::new(q, nums).unwrap();
            let n = tup.len() as u32;
            prop_assert_eq!(galois_weight(&tup, 1), 2);
            for u in 1..q {
                if u.gcd(&q) == 1 {
                    prop_assert_eq!(galois_weight(&tup, u) + galois_weight(&tup, q - u), n);
                }
            }
        }
    }
}
