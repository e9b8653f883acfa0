#![allow(dead_code)]

use flopcalc::matrix::Sign;
use flopcalc::oracle::named_alphabet;
use flopcalc::{GeneratorLetter, IntMat2, Letter};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn m(rows: [[i64; 2]; 2]) -> IntMat2 {
    IntMat2::from_i64(rows)
}

pub fn u() -> IntMat2 {
    Letter::U.matrix()
}

pub fn l() -> IntMat2 {
    Letter::L.matrix()
}

/// Generators of GL(2,Z) with their inverses.
pub fn gl2_generators() -> Vec<IntMat2> {
    let base = [
        m([[1, 1], [0, 1]]),
        m([[0, -1], [1, 0]]),
        m([[0, 1], [1, 0]]),
        m([[-1, 0], [0, 1]]),
        Letter::Tau3.matrix(),
    ];
    base.iter().flat_map(|x| [x.clone(), x.inverse()]).collect()
}

/// A generating set of H1 with inverses.
pub fn h1_generators() -> Vec<IntMat2> {
    let mut gens: Vec<IntMat2> = named_alphabet("h1").unwrap().iter().map(GeneratorLetter::matrix).collect();
    gens.push(m([[-1, 0], [0, -1]]));
    gens.iter().flat_map(|x| [x.clone(), x.inverse()]).collect()
}

/// A generating set of H2 with inverses.
pub fn h2_generators() -> Vec<IntMat2> {
    let mut gens: Vec<IntMat2> = named_alphabet("h2").unwrap().iter().map(GeneratorLetter::matrix).collect();
    gens.push(m([[-1, 0], [0, -1]]));
    gens.iter().flat_map(|x| [x.clone(), x.inverse()]).collect()
}

pub fn h4_generators() -> Vec<IntMat2> {
    vec![u(), u().inverse(), l(), l().inverse()]
}

pub fn product(gens: &[IntMat2], word: &[usize]) -> IntMat2 {
    word.iter().fold(IntMat2::identity(), |acc, &i| acc.mul(&gens[i % gens.len()]))
}

/// Proptest strategy: products of up to `max_len` generators.
pub fn words_over(gens: Vec<IntMat2>, max_len: usize) -> impl Strategy<Value = IntMat2> {
    prop::collection::vec(any::<usize>(), 0..=max_len).prop_map(move |w| product(&gens, &w))
}

pub fn gl2(max_len: usize) -> impl Strategy<Value = IntMat2> {
    words_over(gl2_generators(), max_len)
}

pub fn h1(max_len: usize) -> impl Strategy<Value = IntMat2> {
    words_over(h1_generators(), max_len)
}

pub fn h2(max_len: usize) -> impl Strategy<Value = IntMat2> {
    words_over(h2_generators(), max_len)
}

pub fn h4(max_len: usize) -> impl Strategy<Value = IntMat2> {
    words_over(h4_generators(), max_len)
}

pub fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random product of `1..=max_len` generators.
pub fn random_word(rng: &mut impl Rng, gens: &[IntMat2], max_len: usize) -> IntMat2 {
    let len = rng.gen_range(1..=max_len);
    (0..len).fold(IntMat2::identity(), |acc, _| acc.mul(&gens[rng.gen_range(0..gens.len())]))
}
