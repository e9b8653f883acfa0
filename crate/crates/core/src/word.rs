//! Words over tagged generator letters.
//!
//! Text form is whitespace separated, each letter optionally raised to a
//! nonzero power:
//!
//! ```text
//! U^-1 L F(3,-1,-1) T(1) T'(0) Tau3 Tau2 [1,2;0,1]^2
//! ```
//!
//! The structured form is an array of `{letter, exponent, parameters}`
//! records.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::JsonInt;
use crate::matrix::{IntMat2, Sign};
use crate::subgroup::K6Generator;

/// Which ruling of the quadric a transport letter comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ruling {
    /// `T(n) = ((-1, 2n), (0, 1))`
    First,
    /// `T'(n) = ((1, 0), (2n, -1))`
    Second,
}

/// Transport shift `n ∈ {-1, 0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Shift(i8);

impl TryFrom<i64> for Shift {
    type Error = Error;

    fn try_from(n: i64) -> Result<Shift> {
        Shift::new(n)
    }
}

impl From<Shift> for i64 {
    fn from(n: Shift) -> i64 {
        n.get()
    }
}

impl Shift {
    pub const MINUS: Shift = Shift(-1);
    pub const ZERO: Shift = Shift(0);
    pub const PLUS: Shift = Shift(1);

    pub fn new(n: i64) -> Result<Shift> {
        match n {
            -1..=1 => Ok(Shift(n as i8)),
            _ => Err(Error::TransportShift { n: BigInt::from(n) }),
        }
    }

    pub fn from_bigint(n: &BigInt) -> Result<Shift> {
        n.to_i64()
            .and_then(|v| Shift::new(v).ok())
            .ok_or_else(|| Error::TransportShift { n: n.clone() })
    }

    pub fn get(self) -> i64 {
        i64::from(self.0)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The quadric transport matrix for a ruling and shift.
pub fn transport_matrix(ruling: Ruling, n: Shift) -> IntMat2 {
    let two_n = 2 * n.get();
    match ruling {
        Ruling::First => IntMat2::from_i64([[-1, two_n], [0, 1]]),
        Ruling::Second => IntMat2::from_i64([[1, 0], [two_n, -1]]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `((1, 2), (0, 1))`
    U,
    /// `((1, 0), (2, 1))`
    L,
    /// `((s1, m), (0, s2))`, a self-map of the solid torus.
    Framing { m: BigInt, s1: Sign, s2: Sign },
    Transport { ruling: Ruling, n: Shift },
    Tau3,
    Tau2,
    /// An arbitrary GL(2,ℤ) element, for caller-supplied alphabets.
    Matrix(IntMat2),
}

impl Letter {
    pub fn framing(m: impl Into<BigInt>, s1: Sign, s2: Sign) -> Letter {
        Letter::Framing { m: m.into(), s1, s2 }
    }

    pub fn transport(ruling: Ruling, n: Shift) -> Letter {
        Letter::Transport { ruling, n }
    }

    pub fn matrix(&self) -> IntMat2 {
        match self {
            Letter::U => IntMat2::from_i64([[1, 2], [0, 1]]),
            Letter::L => IntMat2::from_i64([[1, 0], [2, 1]]),
            Letter::Framing { m, s1, s2 } => {
                IntMat2::from_parts(s1.to_bigint(), m.clone(), BigInt::zero(), s2.to_bigint())
            }
            Letter::Transport { ruling, n } => transport_matrix(*ruling, *n),
            Letter::Tau3 => K6Generator::Tau3.matrix(),
            Letter::Tau2 => K6Generator::Tau2.matrix(),
            Letter::Matrix(x) => x.clone(),
        }
    }

    /// Record tag used by the structured form.
    pub fn tag(&self) -> &'static str {
        match self {
            Letter::U => "U",
            Letter::L => "L",
            Letter::Framing { .. } => "F",
            Letter::Transport { ruling: Ruling::First, .. } => "T",
            Letter::Transport { ruling: Ruling::Second, .. } => "T'",
            Letter::Tau3 => "Tau3",
            Letter::Tau2 => "Tau2",
            Letter::Matrix(_) => "M",
        }
    }

    fn parameters(&self) -> Vec<BigInt> {
        match self {
            Letter::Framing { m, s1, s2 } => vec![m.clone(), s1.to_bigint(), s2.to_bigint()],
            Letter::Transport { n, .. } => vec![BigInt::from(n.get())],
            Letter::Matrix(x) => x.entries().into_iter().cloned().collect(),
            _ => Vec::new(),
        }
    }

    fn from_parts(tag: &str, params: &[BigInt]) -> Result<Letter> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!("letter {tag} takes {k} parameters, got {}", params.len())))
            }
        };
        let sign = |x: &BigInt| {
            x.to_i64()
                .and_then(Sign::from_i64)
                .ok_or_else(|| Error::Parse(format!("framing sign must be 1 or -1, got {x}")))
        };
        match tag {
            "U" => arity(0).map(|_| Letter::U),
            "L" => arity(0).map(|_| Letter::L),
            "Tau3" => arity(0).map(|_| Letter::Tau3),
            "Tau2" => arity(0).map(|_| Letter::Tau2),
            "F" => {
                arity(3)?;
                Ok(Letter::framing(params[0].clone(), sign(&params[1])?, sign(&params[2])?))
            }
            "T" | "T'" => {
                arity(1)?;
                let ruling = if tag == "T" { Ruling::First } else { Ruling::Second };
                let n = Shift::from_bigint(&params[0])
                    .map_err(|_| Error::Parse(format!("transport shift {} outside -1..=1", params[0])))?;
                Ok(Letter::transport(ruling, n))
            }
            "M" => {
                arity(4)?;
                let x = IntMat2::new(
                    params[0].clone(),
                    params[1].clone(),
                    params[2].clone(),
                    params[3].clone(),
                )
                .map_err(|e| Error::Parse(e.to_string()))?;
                Ok(Letter::Matrix(x))
            }
            other => Err(Error::Parse(format!("unknown letter {other:?}"))),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Framing { m, s1, s2 } => write!(f, "F({m},{s1},{s2})"),
            Letter::Transport { ruling: Ruling::First, n } => write!(f, "T({n})"),
            Letter::Transport { ruling: Ruling::Second, n } => write!(f, "T'({n})"),
            Letter::Matrix(x) => write!(f, "[{x}]"),
            other => f.write_str(other.tag()),
        }
    }
}

impl From<K6Generator> for Letter {
    fn from(g: K6Generator) -> Letter {
        match g {
            K6Generator::Tau3 => Letter::Tau3,
            K6Generator::Tau2 => Letter::Tau2,
        }
    }
}

/// A letter raised to a nonzero power.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorLetter {
    letter: Letter,
    exponent: i64,
}

impl GeneratorLetter {
    pub fn new(letter: Letter, exponent: i64) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(GeneratorLetter { letter, exponent })
    }

    pub fn letter(&self) -> &Letter {
        &self.letter
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn inverse(&self) -> GeneratorLetter {
        GeneratorLetter { letter: self.letter.clone(), exponent: -self.exponent }
    }

    pub fn matrix(&self) -> IntMat2 {
        self.letter.matrix().pow(self.exponent)
    }
}

impl From<Letter> for GeneratorLetter {
    fn from(letter: Letter) -> Self {
        GeneratorLetter { letter, exponent: 1 }
    }
}

impl fmt::Display for GeneratorLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}^{}", self.letter, self.exponent)
        }
    }
}

impl FromStr for GeneratorLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, exponent) = match s.rfind('^') {
            Some(i) if !s[i..].contains(']') && !s[i..].contains(')') => {
                let e: i64 = s[i + 1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid exponent in {s:?}")))?;
                (&s[..i], e)
            }
            _ => (s, 1),
        };
        if exponent == 0 {
            return Err(Error::Parse(format!("zero exponent in {s:?}")));
        }
        let letter = if let Some(inner) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            Letter::Matrix(inner.parse().map_err(|e: Error| match e {
                Error::Parse(_) => e,
                other => Error::Parse(other.to_string()),
            })?)
        } else if let Some(open) = body.find('(') {
            let inner = body[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            let params = inner
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("invalid parameter {p:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Letter::from_parts(&body[..open], &params)?
        } else {
            Letter::from_parts(body, &[])?
        };
        Ok(GeneratorLetter { letter, exponent })
    }
}

#[derive(Serialize, Deserialize)]
struct LetterRecord {
    letter: String,
    exponent: i64,
    parameters: Vec<JsonInt>,
}

impl Serialize for GeneratorLetter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LetterRecord {
            letter: self.letter.tag().to_owned(),
            exponent: self.exponent,
            parameters: self.letter.parameters().into_iter().map(JsonInt).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneratorLetter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = LetterRecord::deserialize(deserializer)?;
        let params: Vec<BigInt> = rec.parameters.into_iter().map(|p| p.0).collect();
        let letter = Letter::from_parts(&rec.letter, &params).map_err(serde::de::Error::custom)?;
        GeneratorLetter::new(letter, rec.exponent).map_err(serde::de::Error::custom)
    }
}

/// An ordered product of letters, kept freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorWord {
    letters: Vec<GeneratorLetter>,
}

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord::default()
    }

    /// Builds a word, cancelling adjacent letters that multiply to the identity.
    pub fn new(letters: impl IntoIterator<Item = GeneratorLetter>) -> Self {
        let mut w = GeneratorWord::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Appends a letter. If it shares its letter with the current last one
    /// and the two cancel, both are dropped instead.
    pub fn push(&mut self, l: GeneratorLetter) {
        if let Some(last) = self.letters.last() {
            if last.letter == l.letter {
                let total = last.exponent + l.exponent;
                if total == 0 || l.letter.matrix().pow(total).is_identity() {
                    self.letters.pop();
                    return;
                }
            }
        }
        self.letters.push(l);
    }

    pub fn letters(&self) -> &[GeneratorLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord::new(self.letters.iter().rev().map(GeneratorLetter::inverse))
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        GeneratorWord::new(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    pub fn eval(&self) -> IntMat2 {
        eval_word(self)
    }

    /// Unreduced words built from raw letter lists.
    pub(crate) fn from_raw(letters: Vec<GeneratorLetter>) -> Self {
        GeneratorWord { letters }
    }
}

/// Left-to-right product of the letters; the empty word is the identity.
pub fn eval_word(w: &GeneratorWord) -> IntMat2 {
    w.letters
        .iter()
        .fold(IntMat2::identity(), |acc, l| acc.mul(&l.matrix()))
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<GeneratorLetter>>>()?;
        Ok(GeneratorWord::from_raw(letters))
    }
}

impl FromIterator<GeneratorLetter> for GeneratorWord {
    fn from_iter<I: IntoIterator<Item = GeneratorLetter>>(iter: I) -> Self {
        GeneratorWord::new(iter)
    }
}
