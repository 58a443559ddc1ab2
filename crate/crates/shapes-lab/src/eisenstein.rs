//! Eisenstein integers `a + b·w` with `w = 1/2 + i·sqrt(3)/2`, so `w² = w − 1`.
//!
//! Arithmetic is on `i64` with overflow checks. The operator impls panic on
//! overflow; the `checked_*` methods return `None` instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

pub const ZERO: EisensteinInt = EisensteinInt { a: 0, b: 0 };
pub const ONE: EisensteinInt = EisensteinInt { a: 1, b: 0 };
pub const OMEGA: EisensteinInt = EisensteinInt { a: 0, b: 1 };
/// `sqrt(-3) = 2w − 1`.
pub const SQRT_MINUS_3: EisensteinInt = EisensteinInt { a: -1, b: 2 };

/// `w^k` for `k = 0..6`, counterclockwise from 1.
pub const UNITS: [EisensteinInt; 6] = [
    EisensteinInt { a: 1, b: 0 },
    EisensteinInt { a: 0, b: 1 },
    EisensteinInt { a: -1, b: 1 },
    EisensteinInt { a: -1, b: 0 },
    EisensteinInt { a: 0, b: -1 },
    EisensteinInt { a: 1, b: -1 },
];

impl EisensteinInt {
    pub const fn new(a: i64, b: i64) -> Self {
        EisensteinInt { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn checked_add(self, o: Self) -> Option<Self> {
        Some(Self::new(
            self.a.checked_add(o.a)?,
            self.b.checked_add(o.b)?,
        ))
    }

    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(Self::new(
            self.a.checked_sub(o.a)?,
            self.b.checked_sub(o.b)?,
        ))
    }

    /// `(a + bw)(c + dw) = (ac − bd) + (ad + bc + bd)w`.
    pub fn checked_mul(self, o: Self) -> Option<Self> {
        let ac = self.a.checked_mul(o.a)?;
        let bd = self.b.checked_mul(o.b)?;
        let ad = self.a.checked_mul(o.b)?;
        let bc = self.b.checked_mul(o.a)?;
        Some(Self::new(
            ac.checked_sub(bd)?,
            ad.checked_add(bc)?.checked_add(bd)?,
        ))
    }

    pub fn checked_scale(self, k: i64) -> Option<Self> {
        Some(Self::new(self.a.checked_mul(k)?, self.b.checked_mul(k)?))
    }

    pub fn checked_norm(self) -> Option<i64> {
        let aa = self.a.checked_mul(self.a)?;
        let ab = self.a.checked_mul(self.b)?;
        let bb = self.b.checked_mul(self.b)?;
        aa.checked_add(ab)?.checked_add(bb)
    }

    pub fn try_mul(self, o: Self) -> Result<Self> {
        self.checked_mul(o)
            .ok_or(Error::Overflow("Eisenstein multiplication"))
    }

    pub fn try_norm(self) -> Result<i64> {
        self.checked_norm()
            .ok_or(Error::Overflow("Eisenstein norm"))
    }

    /// `a² + ab + b²`.
    pub fn norm(self) -> i64 {
        self.checked_norm().expect("Eisenstein norm overflow")
    }

    /// `conj(a + bw) = (a + b) − bw`.
    pub fn conj(self) -> Self {
        Self::new(
            self.a
                .checked_add(self.b)
                .expect("Eisenstein conj overflow"),
            -self.b,
        )
    }

    pub fn scale(self, k: i64) -> Self {
        self.checked_scale(k).expect("Eisenstein scale overflow")
    }

    /// Exact quotient `self / d`, if it lies in the lattice.
    pub fn div_exact(self, d: Self) -> Option<Self> {
        let n = d.checked_norm()?;
        if n == 0 {
            return None;
        }
        let num = self.checked_mul(d.checked_conj()?)?;
        if num.a % n != 0 || num.b % n != 0 {
            return None;
        }
        Some(Self::new(num.a / n, num.b / n))
    }

    fn checked_conj(self) -> Option<Self> {
        Some(Self::new(self.a.checked_add(self.b)?, -self.b))
    }

    /// Position of `w^k` in [`UNITS`], if `self` is a unit.
    pub fn unit_index(self) -> Option<usize> {
        UNITS.iter().position(|&u| u == self)
    }

    pub fn is_unit(self) -> bool {
        self.unit_index().is_some()
    }

    /// The associate with polar angle in `[0, pi/3)`: `a > 0, b >= 0`.
    pub fn unit_canonical(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroAssociate);
        }
        for u in UNITS {
            let x = self.try_mul(u)?;
            if x.a > 0 && x.b >= 0 {
                return Ok(x);
            }
        }
        unreachable!("every nonzero element has an associate in the first sextant")
    }

    pub fn associates(self) -> [Self; 6] {
        UNITS.map(|u| self * u)
    }

    pub fn embed(self) -> Complex64 {
        let (a, b) = (self.a as f64, self.b as f64);
        Complex64::new(a + 0.5 * b, b * 3f64.sqrt() / 2.0)
    }

    pub fn abs(self) -> f64 {
        (self.norm() as f64).sqrt()
    }

    /// Sign of the planar cross product `Im(conj(self)·o)`, computed exactly.
    pub fn cross_sign(self, o: Self) -> i32 {
        let c = (self.a as i128) * (o.b as i128) - (self.b as i128) * (o.a as i128);
        c.signum() as i32
    }

    /// `2·Re(conj(self)·o)`, an integer.
    pub fn dot2(self, o: Self) -> i128 {
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        2 * a * c + 2 * b * d + a * d + b * c
    }

    /// `(2/sqrt 3)·Im(conj(self)·o)`, an integer.
    pub fn cross2(self, o: Self) -> i128 {
        (self.a as i128) * (o.b as i128) - (self.b as i128) * (o.a as i128)
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("Eisenstein addition overflow")
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o)
            .expect("Eisenstein subtraction overflow")
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o)
            .expect("Eisenstein multiplication overflow")
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(
            self.a.checked_neg().expect("overflow"),
            self.b.checked_neg().expect("overflow"),
        )
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}w", self.a, self.b.unsigned_abs())
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

impl FromStr for EisensteinInt {
    type Err = Error;

    /// Accepts `a+bw`, `a-bw`, `a`, `bw` and `w`, with optional spaces.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('w') else {
            return t.parse::<i64>().map(|a| Self::new(a, 0)).map_err(|_| bad());
        };
        // split the real part from the w coefficient at the last sign that is not leading
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let a = re.parse::<i64>().map_err(|_| bad())?;
        let b = match im {
            "" | "+" => 1,
            "-" => -1,
            x => x.parse::<i64>().map_err(|_| bad())?,
        };
        Ok(Self::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn norms_and_products() {
        assert_eq!(ONE.norm(), 1);
        assert_eq!(e(1, 2).norm(), 7);
        assert_eq!(OMEGA * OMEGA, e(-1, 1));
        assert_eq!(SQRT_MINUS_3 * SQRT_MINUS_3, e(-3, 0));
        assert_eq!(e(1, 2).conj(), e(3, -2));
    }

    #[test]
    fn unit_group_has_six_elements() {
        let mut found = vec![];
        for a in -3..=3 {
            for b in -3..=3 {
                if e(a, b).norm() == 1 {
                    found.push(e(a, b));
                }
            }
        }
        found.sort();
        let mut units = UNITS.to_vec();
        units.sort();
        assert_eq!(found, units);
        for k in 0..6 {
            assert_eq!(UNITS[k] * OMEGA, UNITS[(k + 1) % 6]);
        }
    }

    #[test]
    fn canonical_associates() {
        assert_eq!(OMEGA.unit_canonical().unwrap(), ONE);
        assert_eq!(e(3, 0).unit_canonical().unwrap(), e(3, 0));
        // the six associates of -1-2w, picked by angle
        let c = e(-1, -2).unit_canonical().unwrap();
        assert!(c.a > 0 && c.b >= 0);
        assert!(e(-1, -2).associates().contains(&c));
        assert_eq!(c, e(1, 2));
        assert_eq!(ZERO.unit_canonical(), Err(Error::ZeroAssociate));
    }

    #[test]
    fn text_form() {
        for s in ["1+2w", "-3+0w", "4-7w", "0+1w"] {
            let x: EisensteinInt = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("w".parse::<EisensteinInt>().unwrap(), OMEGA);
        assert_eq!("-w".parse::<EisensteinInt>().unwrap(), e(0, -1));
        assert_eq!(" 2 + 3 w".parse::<EisensteinInt>().unwrap(), e(2, 3));
        assert_eq!("5".parse::<EisensteinInt>().unwrap(), e(5, 0));
        assert!("1+2".parse::<EisensteinInt>().is_err());
        assert!("x".parse::<EisensteinInt>().is_err());
    }

    #[test]
    fn overflow_is_detected() {
        let big = e(i64::MAX / 2, i64::MAX / 2);
        assert!(big.checked_mul(big).is_none());
        assert!(big.checked_norm().is_none());
        assert_eq!(big.try_norm(), Err(Error::Overflow("Eisenstein norm")));
    }

    #[test]
    fn exact_division() {
        let x = e(2, 3) * e(-1, 4);
        assert_eq!(x.div_exact(e(-1, 4)), Some(e(2, 3)));
        assert_eq!(e(1, 0).div_exact(e(2, 0)), None);
    }

    fn small() -> impl Strategy<Value = EisensteinInt> {
        (-10_000i64..=10_000, -10_000i64..=10_000).prop_map(|(a, b)| e(a, b))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in small(), y in small()) {
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn ring_laws(x in small(), y in small(), z in small()) {
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            let nc = x * x.conj();
            prop_assert_eq!(nc, e(x.norm(), 0));
        }

        #[test]
        fn embedding_matches_norm(x in small()) {
            let z = x.embed();
            let n = x.norm() as f64;
            prop_assert!((z.norm_sqr() - n).abs() <= 1e-12 * n.max(1.0));
        }

        #[test]
        fn orbit_has_six_elements(x in small()) {
            prop_assume!(!x.is_zero());
            let mut orbit = x.associates().to_vec();
            orbit.sort();
            orbit.dedup();
            prop_assert_eq!(orbit.len(), 6);
            let c = x.unit_canonical().unwrap();
            for y in x.associates() {
                prop_assert_eq!(y.unit_canonical().unwrap(), c);
            }
            prop_assert_eq!(c.unit_canonical().unwrap(), c);
        }

        #[test]
        fn display_round_trips(x in small()) {
            prop_assert_eq!(x.to_string().parse::<EisensteinInt>().unwrap(), x);
        }
    }
}
