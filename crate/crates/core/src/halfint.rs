//! Exact half-integers for angular-momentum style labels (`j`, `m`, `k`).

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A value in `Z/2`, stored as twice its value so arithmetic stays exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt { twice: 2 * value }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    /// True when the value is an integer (twice-value even).
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// True when the value is a genuine half-integer (twice-value odd).
    pub const fn is_half_odd(self) -> bool {
        self.twice % 2 != 0
    }

    /// The integer value, if this is an integer.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_parity() {
        let j = HalfInt::from_twice(65);
        assert_eq!(j.to_string(), "65/2");
        assert!(j.is_half_odd());
        assert_eq!((j + HalfInt::HALF).to_int(), Some(33));
        assert_eq!(HalfInt::from_int(-3).to_string(), "-3");
        assert_eq!((-j).to_f64(), -32.5);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_twice_units(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
            let (x, y) = (HalfInt::from_twice(a), HalfInt::from_twice(b));
            prop_assert_eq!((x + y).twice(), a + b);
            prop_assert_eq!((x - y).twice(), a - b);
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
            prop_assert_eq!((x + y).to_f64(), x.to_f64() + y.to_f64());
        }
    }
}
