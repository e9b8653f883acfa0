//! Constructive factorizations into generator words.
//!
//! * [`factor_h4`]: H₄ over `U = ((1,2),(0,1))` and `L = ((1,0),(2,1))`, by a
//!   Euclidean reduction of the first row.
//! * [`factor_h1`]: H₁ over framing matrices `((±1, m), (0, ±1))` and `L`, by a
//!   Euclidean reduction of the first column.
//! * [`factor_h2_transport`]: H₂ over the quadric transport matrices
//!   `T(n) = ((-1, 2n), (0, 1))` and `T'(n) = ((1, 0), (2n, -1))`, `n ∈ {-1, 0, 1}`.
//!
//! Outputs are not shortest words. `U` and `L` letters are always emitted
//! with exponent ±1, so word length grows with the Euclidean quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMat2, Sign};
use crate::subgroup::{decompose_h2, membership, SubgroupTag};
use crate::word::{eval_word, GeneratorLetter, GeneratorWord, Letter, Ruling, Shift};

/// Words longer than this are refused rather than materialized.
pub const MAX_WORD_LEN: u64 = 1 << 26;

/// Returns `q` minimizing `|x + q·step|`. On a tie the nonnegative remainder wins.
fn nearest_quotient(x: &BigInt, step: &BigInt) -> BigInt {
    let s = step.abs();
    let mut r = x.mod_floor(&s);
    if &r * 2 > s {
        r -= &s;
    }
    (r - x) / step
}

fn unit_letters(letter: Letter, count: &BigInt, out: &mut Vec<GeneratorLetter>) -> Result<()> {
    if count.is_zero() {
        return Ok(());
    }
    let n = count
        .abs()
        .to_u64()
        .filter(|&n| n + out.len() as u64 <= MAX_WORD_LEN)
        .ok_or_else(|| Error::WordTooLong { letters: count.abs() })?;
    let e = if count.is_positive() { 1 } else { -1 };
    for _ in 0..n {
        out.push(GeneratorLetter::new(letter.clone(), e)?);
    }
    Ok(())
}

/// One right multiplication performed by the H₄ reduction: `row ← row·X^q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub letter: Letter,
    pub quotient: BigInt,
    /// First row after the step.
    pub row: (BigInt, BigInt),
}

/// Runs the H₄ first-row reduction and returns the steps taken.
///
/// Each step acts on the larger entry of the row, replacing `b` by the
/// representative of `b mod 2a` of least magnitude (a `U` power) or `a` by
/// that of `a mod 2b` (an `L` power), until the row is `(1, 0)`.
pub fn h4_reduction(m: &IntMat2) -> Result<Vec<ReductionStep>> {
    if !membership(m, SubgroupTag::H4) {
        return Err(Error::NotMember { matrix: Box::new(m.clone()), tag: SubgroupTag::H4 });
    }
    let (mut a, mut b) = (m.a().clone(), m.b().clone());
    let mut steps = Vec::new();
    while !b.is_zero() {
        let step = if b.abs() > a.abs() {
            let q = nearest_quotient(&b, &(&a * 2));
            b += &q * &a * 2;
            ReductionStep { letter: Letter::U, quotient: q, row: (a.clone(), b.clone()) }
        } else {
            let q = nearest_quotient(&a, &(&b * 2));
            a += &q * &b * 2;
            ReductionStep { letter: Letter::L, quotient: q, row: (a.clone(), b.clone()) }
        };
        steps.push(step);
    }
    debug_assert!(a.is_one());
    Ok(steps)
}

/// Factors `m ∈ H₄` as a word in `U^{±1}` and `L^{±1}`.
///
/// If `m·X₁^{q₁}⋯X_k^{q_k}` has first row `(1, 0)` it equals `L^j` for some
/// `j`, and `m = L^j·X_k^{-q_k}⋯X₁^{-q₁}`.
pub fn factor_h4(m: &IntMat2) -> Result<GeneratorWord> {
    let steps = h4_reduction(m)?;
    let mut residual = m.clone();
    for s in &steps {
        let q = s.quotient.to_i64().ok_or_else(|| Error::WordTooLong { letters: s.quotient.abs() })?;
        residual = residual.mul(&s.letter.matrix().pow(q));
    }
    debug_assert!(residual.a().is_one() && residual.b().is_zero() && residual.d().is_one());
    let mut letters = Vec::new();
    unit_letters(Letter::L, &(residual.c() / 2), &mut letters)?;
    for s in steps.iter().rev() {
        unit_letters(s.letter.clone(), &-&s.quotient, &mut letters)?;
    }
    Ok(GeneratorWord::new(letters))
}

/// Factors `m ∈ H₁` as framing letters and `L^{±1}`.
///
/// Left multiplication by `L^q` sends the first column `(a, c)` to
/// `(a, c + 2qa)`; by `((1, q), (0, 1))` it sends it to `(a + qc, c)`. With `c`
/// even and `a` odd this reaches `c = 0`, leaving a single framing matrix.
pub fn factor_h1(m: &IntMat2) -> Result<GeneratorWord> {
    if !membership(m, SubgroupTag::H1) {
        return Err(Error::NotMember { matrix: Box::new(m.clone()), tag: SubgroupTag::H1 });
    }
    let mut w = m.clone();
    let mut letters = Vec::new();
    while !w.c().is_zero() {
        let (a, c) = (w.a().clone(), w.c().clone());
        if c.abs() > a.abs() {
            let q = nearest_quotient(&c, &(&a * 2));
            let q64 = q.to_i64().ok_or_else(|| Error::WordTooLong { letters: q.abs() })?;
            w = Letter::L.matrix().pow(q64).mul(&w);
            unit_letters(Letter::L, &-q, &mut letters)?;
        } else {
            let q = nearest_quotient(&a, &c);
            w = Letter::framing(q.clone(), Sign::Plus, Sign::Plus).matrix().mul(&w);
            letters.push(Letter::framing(-q, Sign::Plus, Sign::Plus).into());
        }
    }
    if !w.is_identity() {
        letters.push(Letter::framing(w.b().clone(), Sign::of(w.a()), Sign::of(w.d())).into());
    }
    Ok(GeneratorWord::new(letters))
}

/// A maximal run of same-ruling factors, tracked by its product.
///
/// First-ruling runs have the shape `((s, 2k), (0, 1))`; second-ruling runs
/// `((1, 0), (2k, s))`.
struct Run {
    ruling: Ruling,
    flipped: bool,
    k: BigInt,
}

impl Run {
    fn new(ruling: Ruling) -> Self {
        Run { ruling, flipped: false, k: BigInt::zero() }
    }

    /// Right-multiplies the run by the sign matrix of its ruling.
    fn push_sign(&mut self) {
        self.flipped = !self.flipped;
    }

    /// Right-multiplies by `U^e` (first ruling) or `L^e` (second ruling).
    fn push_unipotent(&mut self, e: i64) {
        if self.flipped {
            self.k -= e;
        } else {
            self.k += e;
        }
    }

    fn matrix(&self) -> IntMat2 {
        let s = if self.flipped { -BigInt::one() } else { BigInt::one() };
        let two_k = &self.k * 2;
        match self.ruling {
            Ruling::First => IntMat2::from_parts(s, two_k, BigInt::zero(), BigInt::one()),
            Ruling::Second => IntMat2::from_parts(BigInt::one(), BigInt::zero(), two_k, s),
        }
    }

    /// Shortest transport word for the run.
    ///
    /// For either ruling `X(x₁)X(x₂)⋯X(x_L)` has alternating sum
    /// `Σ = x₁ - x₂ + x₃ - ⋯`; it equals `X(Σ)` when `L` is odd and the
    /// unipotent `U^Σ` (or `L^Σ`) when `L` is even. Each term contributes at
    /// most 1 in magnitude.
    fn emit(&self, out: &mut Vec<GeneratorLetter>) -> Result<()> {
        let need = self.k.abs().to_u64().ok_or_else(|| Error::WordTooLong { letters: self.k.abs() })?;
        let mut len = need;
        if (len % 2 == 1) != self.flipped {
            len += 1;
        }
        if len + out.len() as u64 > MAX_WORD_LEN {
            return Err(Error::WordTooLong { letters: BigInt::from(len) });
        }
        let unit = if self.k.is_negative() { -1 } else { 1 };
        for i in 0..len {
            let contribution = if i < need { unit } else { 0 };
            let x = if i % 2 == 0 { contribution } else { -contribution };
            out.push(Letter::transport(self.ruling, Shift::new(x)?).into());
        }
        Ok(())
    }
}

/// Factors `m ∈ H₂` over the six quadric transport matrices.
///
/// The sign matrices are `T(0) = diag(-1, 1)` and `T'(0) = diag(1, -1)`;
/// `T(±1)` are themselves generators, and `((1, 0), (±2, 1)) = T'(±1)·T'(0)`.
/// Consecutive factors of one ruling are merged and re-emitted as the
/// shortest transport word for their product.
pub fn factor_h2_transport(m: &IntMat2) -> Result<GeneratorWord> {
    let (k, h) = decompose_h2(m)?;
    let h4_word = factor_h4(&h)?;

    let first_flip = k.a().is_negative();
    let second_flip = k.d().is_negative();
    let starts_with_u = h4_word.letters().first().is_some_and(|l| l.letter() == &Letter::U);

    let mut runs: Vec<Run> = Vec::new();
    let sign_run = |ruling: Ruling, runs: &mut Vec<Run>| {
        let mut r = Run::new(ruling);
        r.push_sign();
        runs.push(r);
    };
    // diag(ε₁, 1) and diag(1, ε₂) commute; order them so the first-ruling
    // sign lands next to a leading U run.
    let sign_order = if starts_with_u {
        [(second_flip, Ruling::Second), (first_flip, Ruling::First)]
    } else {
        [(first_flip, Ruling::First), (second_flip, Ruling::Second)]
    };
    for (flip, ruling) in sign_order {
        if flip {
            sign_run(ruling, &mut runs);
        }
    }
    for l in h4_word.letters() {
        let ruling = match l.letter() {
            Letter::U => Ruling::First,
            Letter::L => Ruling::Second,
            other => unreachable!("factor_h4 emitted {other}"),
        };
        if runs.last().map(|r| r.ruling) != Some(ruling) {
            runs.push(Run::new(ruling));
        }
        runs.last_mut().expect("run pushed above").push_unipotent(l.exponent());
    }

    let mut letters = Vec::new();
    for r in &runs {
        let start = letters.len();
        r.emit(&mut letters)?;
        debug_assert_eq!(
            eval_word(&GeneratorWord::from_raw(letters[start..].to_vec())),
            r.matrix()
        );
    }
    Ok(GeneratorWord::new(letters))
}
