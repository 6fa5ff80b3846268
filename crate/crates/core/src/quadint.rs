//! Exact arithmetic in `Z[sqrt 2]` and its reduction `F_p[s]/(s^2 - 2)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// `a + b sqrt(2)`, serialized as `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { a: 0, b: 0 };
    pub const ONE: QuadInt = QuadInt { a: 1, b: 0 };
    pub const SQRT2: QuadInt = QuadInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        QuadInt { a, b }
    }

    pub const fn int(a: i64) -> Self {
        QuadInt { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// The rational integer value, if the `sqrt 2` part vanishes.
    pub fn as_integer(self) -> Option<i64> {
        (self.b == 0).then_some(self.a)
    }

    /// Exact quotient when it lies in `Z`, for divisors `+-1` and `+-sqrt 2`.
    pub fn div_unit_or_sqrt2(self, divisor: QuadInt) -> Option<i64> {
        match (divisor.a, divisor.b) {
            (d @ (1 | -1), 0) => self.as_integer().map(|x| x * d),
            (0, d @ (1 | -1)) => (self.a == 0).then_some(self.b * d),
            _ => None,
        }
    }
}

impl From<[i64; 2]> for QuadInt {
    fn from([a, b]: [i64; 2]) -> Self {
        QuadInt { a, b }
    }
}

impl From<QuadInt> for [i64; 2] {
    fn from(q: QuadInt) -> Self {
        [q.a, q.b]
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}*sqrt2"),
            (a, b) if b < 0 => write!(f, "{a}-{}*sqrt2", -b),
            (a, b) => write!(f, "{a}+{b}*sqrt2"),
        }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        QuadInt::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        QuadInt::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.a, -self.b)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        QuadInt::new(
            self.a * rhs.a + 2 * self.b * rhs.b,
            self.a * rhs.b + self.b * rhs.a,
        )
    }
}

impl Mul<QuadInt> for i64 {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        QuadInt::new(self * rhs.a, self * rhs.b)
    }
}

impl AddAssign for QuadInt {
    fn add_assign(&mut self, rhs: QuadInt) {
        *self = *self + rhs;
    }
}

impl SubAssign for QuadInt {
    fn sub_assign(&mut self, rhs: QuadInt) {
        *self = *self - rhs;
    }
}

/// `a + b s` in `F_p[s]/(s^2 - 2)`.
///
/// This is `F_{p^2}` when 2 is a non-residue mod `p` and `F_p x F_p`
/// otherwise; `s` is a unit for every odd `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

/// Arithmetic context for [`Fp2`] at a fixed odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2Ring {
    p: u64,
}

impl Fp2Ring {
    pub fn new(p: u64) -> Self {
        assert!(p >= 3 && p % 2 == 1, "Fp2Ring needs an odd prime");
        Fp2Ring { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> Fp2 {
        Fp2 { a: 0, b: 0 }
    }

    pub fn one(&self) -> Fp2 {
        Fp2 { a: 1, b: 0 }
    }

    pub fn int(&self, x: i64) -> Fp2 {
        Fp2 {
            a: x.rem_euclid(self.p as i64) as u64,
            b: 0,
        }
    }

    pub fn reduce(&self, q: QuadInt) -> Fp2 {
        let p = self.p as i64;
        Fp2 {
            a: q.a.rem_euclid(p) as u64,
            b: q.b.rem_euclid(p) as u64,
        }
    }

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            a: (x.a + y.a) % self.p,
            b: (x.b + y.b) % self.p,
        }
    }

    pub fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            a: (x.a + self.p - y.a) % self.p,
            b: (x.b + self.p - y.b) % self.p,
        }
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 {
            a: (x.a * y.a + 2 * (x.b * y.b % p)) % p,
            b: (x.a * y.b + x.b * y.a) % p,
        }
    }

    /// Inverse of a unit, `None` for zero divisors.
    pub fn inv(&self, x: Fp2) -> Option<Fp2> {
        let p = self.p;
        // (a + bs)(a - bs) = a^2 - 2 b^2
        let norm = (x.a * x.a % p + p - 2 * (x.b * x.b % p) % p) % p;
        let norm_inv = self.inv_scalar(norm)?;
        Some(Fp2 {
            a: x.a * norm_inv % p,
            b: (p - x.b) % p * norm_inv % p,
        })
    }

    fn inv_scalar(&self, x: u64) -> Option<u64> {
        if x.is_multiple_of(self.p) {
            return None;
        }
        let mut result = 1u64;
        let mut base = x % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Some(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(QuadInt::SQRT2 * QuadInt::SQRT2, QuadInt::int(2));
    }

    #[test]
    fn pivot_division() {
        let s = QuadInt::SQRT2;
        assert_eq!(QuadInt::new(0, 3).div_unit_or_sqrt2(s), Some(3));
        assert_eq!(QuadInt::new(0, 3).div_unit_or_sqrt2(-s), Some(-3));
        assert_eq!(QuadInt::new(2, 0).div_unit_or_sqrt2(s), None);
        assert_eq!(
            QuadInt::new(5, 0).div_unit_or_sqrt2(-QuadInt::ONE),
            Some(-5)
        );
        assert_eq!(QuadInt::new(5, 1).div_unit_or_sqrt2(QuadInt::ONE), None);
    }

    #[test]
    fn json_is_pair() {
        let q = QuadInt::new(-1, 2);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[-1,2]");
        assert_eq!(serde_json::from_str::<QuadInt>("[-1,2]").unwrap(), q);
    }

    #[test]
    fn sqrt2_invertible_mod_p() {
        for p in [3u64, 5, 7, 11, 13] {
            let ring = Fp2Ring::new(p);
            let s = ring.reduce(QuadInt::SQRT2);
            let inv = ring.inv(s).unwrap();
            assert_eq!(ring.mul(s, inv), ring.one());
        }
    }

    proptest! {
        #[test]
        fn ring_laws(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50,
                     e in -50i64..50, f in -50i64..50) {
            let x = QuadInt::new(a, b);
            let y = QuadInt::new(c, d);
            let z = QuadInt::new(e, f);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x * y, y * x);
        }

        #[test]
        fn reduction_is_a_homomorphism(a in -50i64..50, b in -50i64..50, c in -50i64..50,
                                       d in -50i64..50, pi in 0usize..4) {
            let p = [3u64, 5, 7, 11][pi];
            let ring = Fp2Ring::new(p);
            let x = QuadInt::new(a, b);
            let y = QuadInt::new(c, d);
            prop_assert_eq!(ring.reduce(x * y), ring.mul(ring.reduce(x), ring.reduce(y)));
            prop_assert_eq!(ring.reduce(x - y), ring.sub(ring.reduce(x), ring.reduce(y)));
        }
    }
}
