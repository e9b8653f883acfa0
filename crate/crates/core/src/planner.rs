//! Monodromy plans for torus bundles over the circle.
//!
//! A target `M ∈ GL(2,ℤ)` is split as `M = M₁·M₂` with `M₁ ∈ K₆` and
//! `M₂ ∈ H₂`. The K₆ part becomes a single Del Pezzo twist step (a word in
//! τ₃, τ₂); the H₂ part is factored over the quadric transport matrices and
//! each letter becomes one quadric transform step. The ordered product of the
//! step matrices is the target.
//!
//! Steps are symbolic: they carry a tag and a matrix, nothing else.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::factor_h2_transport;
use crate::matrix::IntMat2;
use crate::subgroup::{decompose_gl2, K6Generator, SubgroupTag, K6_TABLE};
use crate::word::{transport_matrix, GeneratorLetter, GeneratorWord, Letter, Ruling, Shift};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parameters", rename_all = "snake_case")]
pub enum StepKind {
    /// Realizes a K₆ element; the word is over τ₃ and τ₂.
    DelPezzoTwist { word: Vec<K6Generator> },
    /// Blow-up/contraction pair in one fiber, with transport `T(n)` or `T'(n)`.
    QuadricTransform { ruling: Ruling, n: Shift },
}

impl StepKind {
    /// The matrix this kind of step induces.
    pub fn matrix(&self) -> IntMat2 {
        match self {
            StepKind::DelPezzoTwist { word } => word
                .iter()
                .fold(IntMat2::identity(), |acc, g| acc.mul(&g.matrix())),
            StepKind::QuadricTransform { ruling, n } => transport_matrix(*ruling, *n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    #[serde(flatten)]
    pub kind: StepKind,
    /// Cached value of `kind.matrix()`.
    pub matrix: IntMat2,
}

impl PlanStep {
    pub fn new(kind: StepKind) -> Self {
        let matrix = kind.matrix();
        PlanStep { kind, matrix }
    }

    pub fn del_pezzo_twist(word: Vec<K6Generator>) -> Self {
        PlanStep::new(StepKind::DelPezzoTwist { word })
    }

    pub fn quadric_transform(ruling: Ruling, n: Shift) -> Self {
        PlanStep::new(StepKind::QuadricTransform { ruling, n })
    }
}

impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StepKind::DelPezzoTwist { word } => {
                let letters: Vec<String> = word.iter().map(|g| Letter::from(*g).to_string()).collect();
                write!(f, "del_pezzo_twist[{}]", letters.join(" "))?;
            }
            StepKind::QuadricTransform { ruling, n } => {
                let r = match ruling {
                    Ruling::First => "first",
                    Ruling::Second => "second",
                };
                write!(f, "quadric_transform[{r},{n}]")?;
            }
        }
        write!(f, " {}", self.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyPlan {
    pub target: IntMat2,
    pub steps: Vec<PlanStep>,
}

/// Why a plan fails [`verify_plan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanDefect {
    /// The cached matrix of a step disagrees with its kind.
    StaleMatrix { index: usize },
    /// A Del Pezzo twist somewhere other than the first step.
    MisplacedTwist { index: usize },
    /// The ordered product is not the target.
    ProductMismatch { product: Box<IntMat2> },
}

impl fmt::Display for PlanDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanDefect::StaleMatrix { index } => {
                write!(f, "step {index}: matrix does not match the step kind")
            }
            PlanDefect::MisplacedTwist { index } => {
                write!(f, "step {index}: Del Pezzo twist must be the first step")
            }
            PlanDefect::ProductMismatch { product } => {
                write!(f, "product of steps is {product}, not the target")
            }
        }
    }
}

impl MonodromyPlan {
    pub fn new(target: IntMat2, steps: Vec<PlanStep>) -> Self {
        MonodromyPlan { target, steps }
    }

    pub fn product(&self) -> IntMat2 {
        self.steps
            .iter()
            .fold(IntMat2::identity(), |acc, s| acc.mul(&s.matrix))
    }

    /// Checks every plan invariant, returning the first defect found.
    ///
    /// Shifts outside `{-1, 0, 1}` cannot be represented, so they are
    /// rejected when the plan is built or parsed.
    pub fn check(&self) -> std::result::Result<(), PlanDefect> {
        for (index, step) in self.steps.iter().enumerate() {
            if step.matrix != step.kind.matrix() {
                return Err(PlanDefect::StaleMatrix { index });
            }
            if index > 0 && matches!(step.kind, StepKind::DelPezzoTwist { .. }) {
                return Err(PlanDefect::MisplacedTwist { index });
            }
        }
        let product = self.product();
        if product != self.target {
            return Err(PlanDefect::ProductMismatch { product: Box::new(product) });
        }
        Ok(())
    }

    /// The K₆ part carried by the leading twist, or the identity.
    pub fn twist(&self) -> IntMat2 {
        match self.steps.first() {
            Some(PlanStep { kind: StepKind::DelPezzoTwist { .. }, matrix }) => matrix.clone(),
            _ => IntMat2::identity(),
        }
    }

    fn quadric_steps(&self) -> impl Iterator<Item = &PlanStep> {
        self.steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::QuadricTransform { .. }))
    }

    /// A plan for `self.target · other.target` that keeps `other`'s quadric
    /// steps verbatim.
    ///
    /// With `self = k₁·Q₁` and `other = k₂·Q₂`, the product is
    /// `(k₁k₂)·(k₂⁻¹Q₁k₂)·Q₂`; the conjugate stays in H₂ and is refactored.
    pub fn compose(&self, other: &MonodromyPlan) -> Result<MonodromyPlan> {
        let k1 = self.twist();
        let k2 = other.twist();
        let q1 = self.quadric_steps().fold(IntMat2::identity(), |acc, s| acc.mul(&s.matrix));
        let moved = k2.inverse().mul(&q1).mul(&k2);

        let mut steps = Vec::new();
        let k = k1.mul(&k2);
        if !k.is_identity() {
            steps.push(PlanStep::del_pezzo_twist(k6_generators(&k)?));
        }
        steps.extend(transport_steps(&factor_h2_transport(&moved)?));
        steps.extend(other.quadric_steps().cloned());
        Ok(MonodromyPlan::new(self.target.mul(&other.target), steps))
    }
}

pub fn verify_plan(p: &MonodromyPlan) -> bool {
    p.check().is_ok()
}

fn k6_generators(k: &IntMat2) -> Result<Vec<K6Generator>> {
    K6_TABLE
        .iter()
        .find(|e| &e.matrix == k)
        .map(|e| e.word.clone())
        .ok_or_else(|| Error::NotMember { matrix: Box::new(k.clone()), tag: SubgroupTag::K6 })
}

/// Word over τ₃ and τ₂ for an element of K₆, from the fixed table.
pub fn k6_word(k: &IntMat2) -> Result<GeneratorWord> {
    let gens = k6_generators(k)?;
    Ok(GeneratorWord::new(gens.into_iter().map(|g| GeneratorLetter::from(Letter::from(g)))))
}

fn transport_steps(w: &GeneratorWord) -> Vec<PlanStep> {
    w.letters()
        .iter()
        .map(|l| match l.letter() {
            // transport matrices are involutions, so the exponent's sign is irrelevant
            Letter::Transport { ruling, n } if l.exponent().abs() == 1 => {
                PlanStep::quadric_transform(*ruling, *n)
            }
            other => unreachable!("factor_h2_transport emitted {other}^{}", l.exponent()),
        })
        .collect()
}

/// Plans a torus bundle with monodromy `m`.
pub fn plan_monodromy(m: &IntMat2) -> MonodromyPlan {
    let (k, h) = decompose_gl2(m);
    let mut steps = Vec::new();
    if !k.is_identity() {
        steps.push(PlanStep::del_pezzo_twist(
            k6_generators(&k).expect("decompose_gl2 returns a K6 element"),
        ));
    }
    let word = factor_h2_transport(&h).expect("decompose_gl2 returns an H2 element");
    steps.extend(transport_steps(&word));
    let plan = MonodromyPlan::new(m.clone(), steps);
    assert!(verify_plan(&plan), "planner produced an invalid plan for {m}");
    plan
}
