//! Congruence subgroups of GL(2,ℤ) and the two split extensions
//!
//! ```text
//!     GL(2,ℤ) = K₆ ⋉ H₂        H₂ = K₄ ⋉ H₄
//! ```
//!
//! H₂ is the kernel of reduction mod 2 and K₆ maps isomorphically onto
//! GL(2,ℤ/2), so every matrix has exactly one K₆ factor: the element with the
//! same reduction. Inside H₂ the diagonal sign group K₄ picks out the residues
//! of `a` and `d` mod 4.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMat2, Mod2, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupTag {
    #[serde(rename = "GL2Z")]
    Gl2z,
    #[serde(rename = "SL2Z")]
    Sl2z,
    H1,
    H2,
    H4,
    K4,
    K6,
    SolidTorusExtendable,
}

impl SubgroupTag {
    /// Every tag, in reporting order.
    pub const ALL: [SubgroupTag; 8] = [
        SubgroupTag::Gl2z,
        SubgroupTag::Sl2z,
        SubgroupTag::H1,
        SubgroupTag::H2,
        SubgroupTag::H4,
        SubgroupTag::K6,
        SubgroupTag::K4,
        SubgroupTag::SolidTorusExtendable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubgroupTag::Gl2z => "GL2Z",
            SubgroupTag::Sl2z => "SL2Z",
            SubgroupTag::H1 => "H1",
            SubgroupTag::H2 => "H2",
            SubgroupTag::H4 => "H4",
            SubgroupTag::K4 => "K4",
            SubgroupTag::K6 => "K6",
            SubgroupTag::SolidTorusExtendable => "SolidTorusExtendable",
        }
    }
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubgroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SubgroupTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown subgroup {s:?}")))
    }
}

fn is_even(x: &BigInt) -> bool {
    x.is_even()
}

fn is_one_mod4(x: &BigInt) -> bool {
    x.mod_floor(&BigInt::from(4)).is_one()
}

fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

/// Membership test. Every `IntMat2` already lies in GL(2,ℤ).
pub fn membership(x: &IntMat2, tag: SubgroupTag) -> bool {
    match tag {
        SubgroupTag::Gl2z => true,
        SubgroupTag::Sl2z => x.det().is_one(),
        SubgroupTag::H1 => is_even(x.c()),
        SubgroupTag::H2 => x.mod2() == [[1, 0], [0, 1]],
        SubgroupTag::H4 => {
            is_one_mod4(x.a()) && is_one_mod4(x.d()) && is_even(x.b()) && is_even(x.c())
        }
        SubgroupTag::K4 => x.b().is_zero() && x.c().is_zero() && is_unit(x.a()) && is_unit(x.d()),
        SubgroupTag::K6 => K6_TABLE.iter().any(|e| &e.matrix == x),
        SubgroupTag::SolidTorusExtendable => {
            x.c().is_zero() && is_unit(x.a()) && is_unit(x.d())
        }
    }
}

/// The order-3 generator `((0, 1), (-1, -1))`.
pub fn tau3() -> IntMat2 {
    IntMat2::from_i64([[0, 1], [-1, -1]])
}

/// The involution `((0, 1), (1, 0))`.
pub fn tau2() -> IntMat2 {
    IntMat2::from_i64([[0, 1], [1, 0]])
}

/// Generators of K₆.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum K6Generator {
    Tau3,
    Tau2,
}

impl K6Generator {
    pub fn matrix(self) -> IntMat2 {
        match self {
            K6Generator::Tau3 => tau3(),
            K6Generator::Tau2 => tau2(),
        }
    }
}

/// One row of the K₆ table: the element and a shortest word for it.
#[derive(Debug, Clone)]
pub struct K6Entry {
    pub matrix: IntMat2,
    pub word: Vec<K6Generator>,
}

/// K₆ closed up from τ₃ and τ₂, in breadth-first order with shortest words:
///
/// | element              | word    |
/// |----------------------|---------|
/// | `1,0;0,1`            | (empty) |
/// | `0,1;-1,-1`          | τ₃      |
/// | `0,1;1,0`            | τ₂      |
/// | `-1,-1;1,0`          | τ₃ τ₃   |
/// | `1,0;-1,-1`          | τ₃ τ₂   |
/// | `-1,-1;0,1`          | τ₂ τ₃   |
pub static K6_TABLE: LazyLock<Vec<K6Entry>> = LazyLock::new(|| {
    let gens = [K6Generator::Tau3, K6Generator::Tau2];
    let mut table = vec![K6Entry { matrix: IntMat2::identity(), word: Vec::new() }];
    let mut next = 0;
    while next < table.len() {
        let base = table[next].clone();
        for g in gens {
            let product = base.matrix.mul(&g.matrix());
            if !table.iter().any(|e| e.matrix == product) {
                let mut word = base.word.clone();
                word.push(g);
                table.push(K6Entry { matrix: product, word });
            }
        }
        next += 1;
    }
    table
});

pub fn k6_elements() -> Vec<IntMat2> {
    K6_TABLE.iter().map(|e| e.matrix.clone()).collect()
}

pub fn k4_elements() -> Vec<IntMat2> {
    let signs = [Sign::Plus, Sign::Minus];
    signs
        .iter()
        .flat_map(|&s1| signs.iter().map(move |&s2| IntMat2::diag(s1, s2)))
        .collect()
}

/// The K₆ element with the given reduction mod 2.
pub fn k6_lift(residue: Mod2) -> IntMat2 {
    K6_TABLE
        .iter()
        .find(|e| e.matrix.mod2() == residue)
        .map(|e| e.matrix.clone())
        .expect("K6 surjects onto GL(2, Z/2)")
}

/// Splits `m = k·h` with `k ∈ K₆` and `h ∈ H₂`.
pub fn decompose_gl2(m: &IntMat2) -> (IntMat2, IntMat2) {
    let k = k6_lift(m.mod2());
    let h = k.inverse().mul(m);
    debug_assert!(membership(&h, SubgroupTag::H2));
    (k, h)
}

/// Splits `m = k·h` with `k = diag(ε₁, ε₂) ∈ K₄` and `h ∈ H₄`.
pub fn decompose_h2(m: &IntMat2) -> Result<(IntMat2, IntMat2)> {
    if !membership(m, SubgroupTag::H2) {
        return Err(Error::NotMember { matrix: Box::new(m.clone()), tag: SubgroupTag::H2 });
    }
    let sign_to_one_mod4 = |x: &BigInt| if is_one_mod4(x) { Sign::Plus } else { Sign::Minus };
    let k = IntMat2::diag(sign_to_one_mod4(m.a()), sign_to_one_mod4(m.d()));
    let h = k.mul(m);
    debug_assert!(membership(&h, SubgroupTag::H4));
    Ok((k, h))
}
