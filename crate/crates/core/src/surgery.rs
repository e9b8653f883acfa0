//! Surgery along a knot, seen through the boundary gluing of its tubular
//! neighborhood.
//!
//! A gluing is an orientation-preserving matrix in the basis (meridian,
//! longitude) of the boundary torus; its first column `(a, c)` is the image
//! of the meridian. Changing the trivialization of the solid torus
//! multiplies on the right by `((±1, m), (0, ±1))` and leaves `c` (up to
//! sign) and `a/c mod 1` alone.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::factor_h1;
use crate::matrix::{IntMat2, Sign};
use crate::subgroup::decompose_h2;
use crate::word::{GeneratorWord, Letter};

/// Isotopy class `C_{a,b}` of a simple closed curve on the torus.
///
/// Stored with its first nonzero coordinate positive, since `(a, b)` and
/// `(-a, -b)` name the same class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusCurveClass {
    a: BigInt,
    b: BigInt,
}

impl TorusCurveClass {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (mut a, mut b) = (a.into(), b.into());
        if !a.gcd(&b).is_one() {
            return Err(Error::NotCoprime { a, c: b });
        }
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(TorusCurveClass { a, b })
    }

    pub fn meridian() -> Self {
        TorusCurveClass { a: BigInt::one(), b: BigInt::zero() }
    }

    pub fn longitude() -> Self {
        TorusCurveClass { a: BigInt::zero(), b: BigInt::one() }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }
}

impl fmt::Display for TorusCurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// An orientation-preserving gluing of a solid-torus boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurgeryDescriptor(IntMat2);

impl SurgeryDescriptor {
    pub fn new(m: IntMat2) -> Result<Self> {
        if m.det().is_one() {
            Ok(SurgeryDescriptor(m))
        } else {
            Err(Error::OrientationReversing { matrix: Box::new(m) })
        }
    }

    pub fn matrix(&self) -> &IntMat2 {
        &self.0
    }

    /// Image of the meridian.
    pub fn meridian_image(&self) -> TorusCurveClass {
        TorusCurveClass::new(self.0.a().clone(), self.0.c().clone())
            .expect("columns of a unimodular matrix are primitive")
    }
}

impl fmt::Display for SurgeryDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element `p/q` of ℚ/ℤ, stored with `0 ≤ p < q` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMod1 {
    num: BigInt,
    den: BigInt,
}

impl RationalMod1 {
    /// `p/q mod 1`; `q` must be nonzero.
    pub fn new(p: &BigInt, q: &BigInt) -> Self {
        assert!(!q.is_zero(), "zero denominator");
        let (p, q) = if q.is_negative() { (-p, -q) } else { (p.clone(), q.clone()) };
        let p = p.mod_floor(&q);
        let g = p.gcd(&q);
        RationalMod1 { num: p / &g, den: q / g }
    }

    pub fn half() -> Self {
        RationalMod1 { num: BigInt::one(), den: BigInt::from(2) }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }
}

impl fmt::Display for RationalMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `c(φ)` and `r(φ) = a/c mod 1`.
///
/// `c` is reported as `|c|`: the gluing matrix is only determined up to a
/// global sign. `r` is `None` when `c = 0`, i.e. when the gluing extends over
/// the solid torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurgeryInvariants {
    pub c: BigInt,
    pub r: Option<RationalMod1>,
}

impl Serialize for SurgeryInvariants {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record {
            #[serde(with = "crate::json")]
            c: BigInt,
            r: String,
        }
        Record {
            c: self.c.clone(),
            r: self.r.as_ref().map_or_else(|| "undefined".to_owned(), ToString::to_string),
        }
        .serialize(serializer)
    }
}

pub fn surgery_invariants(s: &SurgeryDescriptor) -> SurgeryInvariants {
    let (a, c) = (s.0.a(), s.0.c());
    SurgeryInvariants {
        c: c.abs(),
        r: (!c.is_zero()).then(|| RationalMod1::new(a, c)),
    }
}

/// Re-trivializes the solid torus: right multiplication by `((s1, m), (0, s2))`.
///
/// When `s1·s2 = -1` that matrix reverses orientation, so it is followed by
/// `diag(1, -1)` (the result is the framing `((s1, -m), (0, -s2))`) and the
/// descriptor stays in SL(2,ℤ).
pub fn change_framing(s: &SurgeryDescriptor, m: &BigInt, s1: Sign, s2: Sign) -> SurgeryDescriptor {
    let (m, s2) = if s1 * s2 == Sign::Minus { (-m, s2.flip()) } else { (m.clone(), s2) };
    let framing = Letter::framing(m, s1, s2).matrix();
    SurgeryDescriptor(s.0.mul(&framing))
}

pub fn is_trivial_mod2(s: &SurgeryDescriptor) -> bool {
    s.0.c().is_even()
}

/// `r(φ) ≡ 1/2 mod 1`.
pub fn is_topological_flop(s: &SurgeryDescriptor) -> bool {
    surgery_invariants(s).r == Some(RationalMod1::half())
}

/// Result of [`normalize_to_h2`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedSurgery {
    /// Congruent to the identity mod 2.
    pub descriptor: SurgeryDescriptor,
    /// The framing shift `m` that was applied (`0` if none was needed).
    pub framing: BigInt,
    /// The K₄ factor of the normalized matrix, reported rather than absorbed.
    pub sign: IntMat2,
}

/// Moves a mod-2-trivial gluing into H₂ by a framing change.
///
/// `c` even forces `a`, `d` odd; if `b` is odd one shift `m = ±1` makes it even.
pub fn normalize_to_h2(s: &SurgeryDescriptor) -> Result<NormalizedSurgery> {
    if !is_trivial_mod2(s) {
        return Err(Error::NotTrivialMod2 { matrix: Box::new(s.0.clone()) });
    }
    let framing = if s.0.b().is_odd() {
        let sign = Sign::of(s.0.a()) * Sign::of(s.0.b());
        -sign.to_bigint()
    } else {
        BigInt::zero()
    };
    let descriptor = change_framing(s, &framing, Sign::Plus, Sign::Plus);
    let (sign, _) = decompose_h2(descriptor.matrix()).expect("normalized gluing lies in H2");
    Ok(NormalizedSurgery { descriptor, framing, sign })
}

/// Writes a mod-2-trivial gluing as framing changes and `L^{±1}` letters,
/// each `L^{±1}` being a topological flop.
pub fn flop_decomposition(s: &SurgeryDescriptor) -> Result<GeneratorWord> {
    if !is_trivial_mod2(s) {
        return Err(Error::NotTrivialMod2 { matrix: Box::new(s.0.clone()) });
    }
    factor_h1(&s.0)
}

/// `H₁` of the manifold obtained by `a/c` surgery on the unknot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LensHomology {
    /// Order of the cyclic group; `0` stands for ℤ.
    #[serde(rename = "h1_order", with = "crate::json")]
    pub order: BigInt,
    /// Dimension of `H₁ ⊗ ℤ/2`.
    #[serde(rename = "h1_mod2_rank")]
    pub mod2_rank: u8,
}

pub fn lens_space_h1(a: &BigInt, c: &BigInt) -> Result<LensHomology> {
    if !a.gcd(c).is_one() {
        return Err(Error::NotCoprime { a: a.clone(), c: c.clone() });
    }
    Ok(LensHomology { order: a.abs(), mod2_rank: u8::from(a.is_even()) })
}

/// Boundary class `(a, 2)` of the Möbius band `(x, y) ↦ (y·e^{iax/2}, e^{ix})`
/// in the solid torus.
pub fn mobius_boundary_class(a: &BigInt) -> Result<TorusCurveClass> {
    if a.is_even() {
        return Err(Error::EvenTwist { a: a.clone() });
    }
    TorusCurveClass::new(a.clone(), 2)
}

/// Whether `d = α·m + β·ℓ` bounds a Möbius band coming from a line subbundle
/// `O(-1) → O(a) ⊕ O(b)`.
///
/// With `m·ℓ = 1` the conditions read: `d` primitive mod 2, `m·d = β = ±2`,
/// and `|ℓ·d| = |α| ≤ min(a, b)`. Only `|ℓ·d|` enters, so the orientation of
/// the pairing does not matter.
pub fn moebius_embeddable(alpha: &BigInt, beta: &BigInt, a: &BigInt, b: &BigInt) -> Result<bool> {
    if (a - b).is_odd() {
        return Err(Error::NonOrientableBundle { a: a.clone(), b: b.clone() });
    }
    let two = BigInt::from(2);
    Ok(beta.abs() == two && alpha.is_odd() && &alpha.abs() <= a.min(b))
}
