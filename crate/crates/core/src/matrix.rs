//! Exact 2×2 integer matrices of determinant ±1.
//!
//! `IntMat2` is the element type of GL(2,ℤ). Construction checks the
//! determinant, so every value in circulation is invertible over ℤ and the
//! group operations are total.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::JsonInt;

/// A matrix `((a, b), (c, d))` with `ad - bc = ±1`.
///
/// Ordering is lexicographic on `(a, b, c, d)`; it carries no algebraic
/// meaning and exists so matrices can key ordered maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Reduction of a matrix modulo 2, rows `[[a, b], [c, d]]` with entries in {0, 1}.
pub type Mod2 = [[u8; 2]; 2];

impl IntMat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = IntMat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        let det = m.det();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular { det })
        }
    }

    /// Builds a matrix whose determinant is known to be ±1 by construction.
    pub(crate) fn from_parts(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let m = IntMat2 { a, b, c, d };
        debug_assert!(m.det().abs().is_one(), "non-unimodular matrix {m}");
        m
    }

    /// Small-integer constructor for fixed tables and tests.
    ///
    /// Panics if the determinant is not ±1.
    pub fn from_i64(rows: [[i64; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = rows;
        IntMat2::new(a, b, c, d).expect("constant matrix must be unimodular")
    }

    pub fn identity() -> Self {
        IntMat2::from_parts(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// `diag(s1, s2)` for signs `s1, s2`.
    pub fn diag(s1: Sign, s2: Sign) -> Self {
        IntMat2::from_parts(s1.to_bigint(), BigInt::zero(), BigInt::zero(), s2.to_bigint())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// The determinant as a sign.
    pub fn det_sign(&self) -> Sign {
        if self.det().is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn mul(&self, rhs: &IntMat2) -> IntMat2 {
        IntMat2::from_parts(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    /// Adjugate scaled by the determinant.
    pub fn inverse(&self) -> IntMat2 {
        let det = self.det();
        IntMat2::from_parts(
            &det * &self.d,
            -(&det * &self.b),
            -(&det * &self.c),
            &det * &self.a,
        )
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, exponent: i64) -> IntMat2 {
        let mut base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = IntMat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn neg(&self) -> IntMat2 {
        IntMat2::from_parts(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn mod2(&self) -> Mod2 {
        let bit = |x: &BigInt| u8::from(x.is_odd());
        [[bit(&self.a), bit(&self.b)], [bit(&self.c), bit(&self.d)]]
    }

    /// Largest absolute value among the four entries.
    pub fn max_abs_entry(&self) -> BigInt {
        self.entries().into_iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Rows as nested arrays of `i64`, if every entry fits.
    pub fn to_i64(&self) -> Option<[[i64; 2]; 2]> {
        use num_traits::ToPrimitive;
        Some([[self.a.to_i64()?, self.b.to_i64()?], [self.c.to_i64()?, self.d.to_i64()?]])
    }
}

impl Mul for &IntMat2 {
    type Output = IntMat2;

    fn mul(self, rhs: &IntMat2) -> IntMat2 {
        IntMat2::mul(self, rhs)
    }
}

/// Canonical text form `a,b;c,d`.
impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Parses `a,b;c,d`. Whitespace around entries is ignored.
impl FromStr for IntMat2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(Error::Parse(format!("expected two rows separated by ';' in {s:?}")));
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(Error::Parse(format!("expected two entries per row in {s:?}")));
            }
            for col in cols {
                let t = col.trim();
                let v: BigInt = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid integer {t:?} in {s:?}")))?;
                entries.push(v);
            }
        }
        let mut it = entries.into_iter();
        let (a, b, c, d) = (it.next(), it.next(), it.next(), it.next());
        match (a, b, c, d) {
            (Some(a), Some(b), Some(c), Some(d)) => IntMat2::new(a, b, c, d),
            _ => unreachable!("four entries collected"),
        }
    }
}

/// Structured form: `[[a, b], [c, d]]`.
impl Serialize for IntMat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [
            [JsonInt(self.a.clone()), JsonInt(self.b.clone())],
            [JsonInt(self.c.clone()), JsonInt(self.d.clone())],
        ];
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[JsonInt; 2]; 2]>::deserialize(deserializer)?;
        IntMat2::new(a.0, b.0, c.0, d.0).map_err(serde::de::Error::custom)
    }
}

/// A unit of ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.to_i64())
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "1",
            Sign::Minus => "-1",
        })
    }
}
