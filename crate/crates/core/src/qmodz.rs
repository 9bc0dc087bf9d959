//! Elements of ℚ/ℤ, the additive stand-in for roots of unity.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

use crate::error::Error;

/// A reduced fraction `num/den` with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ {
    num: u64,
    den: u64,
}

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };

    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        QmodZ {
            num: n / g,
            den: den / g,
        }
    }

    /// The value `v / modulus`.
    pub fn from_residue(v: u64, modulus: u64) -> Self {
        Self::new((v % modulus) as i64, modulus)
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Numerator when written over `modulus`; `None` if the denominator does not divide it.
    pub fn residue(self, modulus: u64) -> Option<u64> {
        if !modulus.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (modulus / self.den))
    }

    /// Additive order, which is the denominator.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn scale(self, k: i64) -> Self {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        Self::new(n, self.den)
    }
}

impl Default for QmodZ {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, o: QmodZ) -> QmodZ {
        let l = self.den.lcm(&o.den);
        let a = self.num * (l / self.den) + o.num * (l / o.den);
        QmodZ::new((a % l) as i64, l)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-(self.num as i64), self.den)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, o: QmodZ) -> QmodZ {
        self + (-o)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for QmodZ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: u64 = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(QmodZ::new(n, d))
    }
}
