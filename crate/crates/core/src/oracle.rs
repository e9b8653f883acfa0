//! Breadth-first enumeration of the Cayley graph of a finitely generated
//! subgroup of GL(2,ℤ).
//!
//! This is the brute-force ground truth the constructive factorizations are
//! checked against. It shares only [`IntMat2`] multiplication with them.
//!
//! Inverses of the alphabet letters are always added. Words are compared
//! first by length, then lexicographically by position in the closed
//! alphabet (each letter followed by its inverse); the witness stored for a
//! matrix is the least word reaching it.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::matrix::IntMat2;
use crate::subgroup::{membership, SubgroupTag};
use crate::word::{GeneratorLetter, GeneratorWord, Letter, Ruling, Shift};

pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_BOUND: i64 = 50;

/// The letters used by the enumeration: the alphabet plus inverses, with
/// repeated matrices dropped.
pub fn closed_alphabet(alphabet: &[GeneratorLetter]) -> Vec<(GeneratorLetter, IntMat2)> {
    let mut closed: Vec<(GeneratorLetter, IntMat2)> = Vec::new();
    for l in alphabet {
        for candidate in [l.clone(), l.inverse()] {
            let m = candidate.matrix();
            if !closed.iter().any(|(_, seen)| seen == &m) {
                closed.push((candidate, m));
            }
        }
    }
    closed
}

/// Shortest witnesses for every matrix within a given word length.
#[derive(Debug, Clone)]
pub struct ReachSet {
    words: BTreeMap<IntMat2, GeneratorWord>,
    depth: usize,
    layer_sizes: Vec<usize>,
}

impl ReachSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Depth the enumeration was run to.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of matrices first reached at each word length.
    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn contains(&self, m: &IntMat2) -> bool {
        self.words.contains_key(m)
    }

    pub fn witness(&self, m: &IntMat2) -> Option<&GeneratorWord> {
        self.words.get(m)
    }

    /// Matrices with their witnesses, in the entrywise order of the matrices.
    pub fn iter(&self) -> impl Iterator<Item = (&IntMat2, &GeneratorWord)> {
        self.words.iter()
    }

    pub fn matrices(&self) -> impl Iterator<Item = &IntMat2> {
        self.words.keys()
    }
}

/// All products of at most `depth` letters of the alphabet and their inverses.
pub fn bfs_enumerate(alphabet: &[GeneratorLetter], depth: usize) -> ReachSet {
    let letters = closed_alphabet(alphabet);
    let mut words = BTreeMap::new();
    words.insert(IntMat2::identity(), GeneratorWord::empty());
    let mut frontier = vec![IntMat2::identity()];
    let mut layer_sizes = vec![1];

    for _ in 0..depth {
        let mut next = Vec::new();
        // The frontier is in lexicographic order of its witnesses, so the
        // first time a matrix is produced its witness is the least one.
        for m in &frontier {
            let prefix = words[m].letters().to_vec();
            for (letter, step) in &letters {
                let product = m.mul(step);
                if words.contains_key(&product) {
                    continue;
                }
                let mut w = prefix.clone();
                w.push(letter.clone());
                words.insert(product.clone(), GeneratorWord::from_raw(w));
                next.push(product);
            }
        }
        layer_sizes.push(next.len());
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    ReachSet { words, depth, layer_sizes }
}

/// Every matrix in the subgroup `tag` whose entries are all at most `bound`
/// in absolute value, in entrywise order.
pub fn bounded_members(tag: SubgroupTag, bound: i64) -> Vec<IntMat2> {
    let mut out = Vec::new();
    let range = -bound..=bound;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                if a == 0 {
                    // det = -bc, so b, c = ±1 and d is free
                    if (b * c).abs() != 1 {
                        continue;
                    }
                    for d in range.clone() {
                        push_if_member(&mut out, [[a, b], [c, d]], tag);
                    }
                } else {
                    for det in [-1, 1] {
                        let num = det + b * c;
                        if num % a == 0 && (num / a).abs() <= bound {
                            push_if_member(&mut out, [[a, b], [c, num / a]], tag);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn push_if_member(out: &mut Vec<IntMat2>, rows: [[i64; 2]; 2], tag: SubgroupTag) {
    let m = IntMat2::from_i64(rows);
    if membership(&m, tag) {
        out.push(m);
    }
}

/// Outcome of [`verify_generation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub tag: SubgroupTag,
    pub depth: usize,
    pub bound: i64,
    /// Size of the reach set.
    pub reached: usize,
    /// Members of `tag` within the entry bound.
    pub bounded_members: usize,
    /// Reached matrices outside `tag`.
    pub violations: Vec<IntMat2>,
    /// Bounded members of `tag` not reached at this depth.
    pub gaps: Vec<IntMat2>,
}

impl GenerationReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.gaps.is_empty()
    }
}

impl fmt::Display for GenerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subgroup: {}", self.tag)?;
        writeln!(f, "depth: {}", self.depth)?;
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "reached: {}", self.reached)?;
        writeln!(f, "bounded members: {}", self.bounded_members)?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        write!(f, "gaps: {}", self.gaps.len())?;
        for g in &self.gaps {
            write!(f, "\n  {g}")?;
        }
        Ok(())
    }
}

/// Compares the reach set of `alphabet` with the members of `tag`.
///
/// Violations refute the claim that the alphabet lies in `tag`. Gaps only
/// say the depth was too small to reach some bounded member.
pub fn verify_generation(
    alphabet: &[GeneratorLetter],
    tag: SubgroupTag,
    bound: i64,
    depth: usize,
) -> GenerationReport {
    let reach = bfs_enumerate(alphabet, depth);
    report_for(&reach, tag, bound)
}

/// Builds a report from an existing reach set.
pub fn report_for(reach: &ReachSet, tag: SubgroupTag, bound: i64) -> GenerationReport {
    let violations = reach.matrices().filter(|m| !membership(m, tag)).cloned().collect();
    let members = bounded_members(tag, bound);
    let gaps = members.iter().filter(|m| !reach.contains(m)).cloned().collect();
    GenerationReport {
        tag,
        depth: reach.depth(),
        bound,
        reached: reach.len(),
        bounded_members: members.len(),
        violations,
        gaps,
    }
}

/// Named alphabets.
///
/// * `h4`: `U`, `L`
/// * `h1`: `F(1,1,1)`, `F(0,-1,1)`, `F(0,1,-1)`, `L`
/// * `h2`: `diag(-1,1)`, `((-1,±2),(0,1))`, `diag(1,-1)`, `((1,0),(±2,1))`
/// * `k6`: `τ₃`, `τ₂`
pub fn named_alphabet(name: &str) -> Option<Vec<GeneratorLetter>> {
    use crate::matrix::Sign::{Minus, Plus};
    let unit = |l: Letter| GeneratorLetter::from(l);
    let alphabet = match name {
        "h4" => vec![unit(Letter::U), unit(Letter::L)],
        "h1" => vec![
            unit(Letter::framing(1, Plus, Plus)),
            unit(Letter::framing(0, Minus, Plus)),
            unit(Letter::framing(0, Plus, Minus)),
            unit(Letter::L),
        ],
        "h2" => vec![
            unit(Letter::transport(Ruling::First, Shift::ZERO)),
            unit(Letter::transport(Ruling::First, Shift::PLUS)),
            unit(Letter::transport(Ruling::First, Shift::MINUS)),
            unit(Letter::transport(Ruling::Second, Shift::ZERO)),
            unit(Letter::L),
            GeneratorLetter::new(Letter::L, -1).expect("nonzero exponent"),
        ],
        "k6" => vec![unit(Letter::Tau3), unit(Letter::Tau2)],
        _ => return None,
    };
    Some(alphabet)
}

/// The subgroup a named alphabet is claimed to generate.
pub fn named_alphabet_subgroup(name: &str) -> Option<SubgroupTag> {
    match name {
        "h4" => Some(SubgroupTag::H4),
        "h1" => Some(SubgroupTag::H1),
        "h2" => Some(SubgroupTag::H2),
        "k6" => Some(SubgroupTag::K6),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::k6_elements;
    use crate::word::eval_word;

    #[test]
    fn k6_alphabet_reaches_k6() {
        let reach = bfs_enumerate(&named_alphabet("k6").unwrap(), 3);
        let mut got: Vec<_> = reach.matrices().cloned().collect();
        let mut want = k6_elements();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn depth_zero_is_identity() {
        for name in ["h4", "h1", "h2", "k6"] {
            let reach = bfs_enumerate(&named_alphabet(name).unwrap(), 0);
            assert_eq!(reach.len(), 1);
            assert!(reach.contains(&IntMat2::identity()));
            assert!(reach.witness(&IntMat2::identity()).unwrap().is_empty());
        }
    }

    #[test]
    fn ul_reaches_u_times_l() {
        let reach = bfs_enumerate(&named_alphabet("h4").unwrap(), 2);
        let target = IntMat2::from_i64([[5, 2], [2, 1]]);
        assert_eq!(reach.witness(&target).unwrap().to_string(), "U L");
    }

    #[test]
    fn witnesses_re_evaluate() {
        for name in ["h4", "h1", "h2", "k6"] {
            let reach = bfs_enumerate(&named_alphabet(name).unwrap(), 4);
            for (m, w) in reach.iter() {
                assert_eq!(&eval_word(w), m);
            }
        }
    }

    #[test]
    fn free_group_layer_sizes() {
        // U and L generate a free group: 4·3^(k-1) reduced words of length k
        let reach = bfs_enumerate(&named_alphabet("h4").unwrap(), 6);
        assert_eq!(reach.layer_sizes(), &[1, 4, 12, 36, 108, 324, 972]);
    }

    #[test]
    fn closure_drops_repeated_matrices() {
        let closed = closed_alphabet(&named_alphabet("h2").unwrap());
        assert_eq!(closed.len(), 6);
        let closed = closed_alphabet(&named_alphabet("k6").unwrap());
        // τ₃, τ₃⁻¹, τ₂
        assert_eq!(closed.len(), 3);
    }

    #[test]
    fn generation_reports() {
        let r = verify_generation(&named_alphabet("h4").unwrap(), SubgroupTag::H4, 3, 6);
        assert!(r.is_sound());

        let r = verify_generation(&named_alphabet("k6").unwrap(), SubgroupTag::K6, 1, 3);
        assert!(r.is_sound() && r.is_complete());
        assert_eq!(r.bounded_members, 6);

        let r = verify_generation(&named_alphabet("h2").unwrap(), SubgroupTag::H2, 3, 5);
        assert!(r.is_sound());
    }

    #[test]
    fn report_flags_violations() {
        let r = verify_generation(&named_alphabet("k6").unwrap(), SubgroupTag::H2, 1, 2);
        assert!(!r.is_sound());
        assert_eq!(r.violations.len(), 5);
    }

    #[test]
    fn bounded_members_brute_force() {
        // direct quadruple loop
        for tag in [SubgroupTag::Gl2z, SubgroupTag::H2, SubgroupTag::H1] {
            let mut want = Vec::new();
            for a in -2i64..=2 {
                for b in -2i64..=2 {
                    for c in -2i64..=2 {
                        for d in -2i64..=2 {
                            if (a * d - b * c).abs() == 1 {
                                let m = IntMat2::from_i64([[a, b], [c, d]]);
                                if membership(&m, tag) {
                                    want.push(m);
                                }
                            }
                        }
                    }
                }
            }
            want.sort();
            assert_eq!(bounded_members(tag, 2), want, "{tag}");
        }
    }
}
