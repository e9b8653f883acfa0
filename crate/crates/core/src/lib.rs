//! Exact surgery calculus on the torus.
//!
//! Everything here is integer arithmetic on 2×2 matrices of determinant ±1:
//!
//! * [`matrix`]: the [`IntMat2`] value type.
//! * [`subgroup`]: congruence subgroups H₁ ⊃ H₂ ⊃ H₄, the finite groups K₄
//!   and K₆, and the splittings `GL(2,ℤ) = K₆ ⋉ H₂`, `H₂ = K₄ ⋉ H₄`.
//! * [`word`] and [`factor`]: generator words and constructive
//!   factorizations by Euclidean reduction.
//! * [`surgery`]: surgery coefficients, mod-2 triviality, topological flops,
//!   lens-space homology and Möbius-band boundary classes.
//! * [`planner`]: torus-bundle monodromy plans built from Del Pezzo twists
//!   and quadric transforms.
//! * [`oracle`]: breadth-first Cayley-graph enumeration used to cross-check
//!   the constructive routines.

pub mod error;
pub mod factor;
pub mod json;
pub mod matrix;
pub mod oracle;
pub mod planner;
pub mod subgroup;
pub mod surgery;
pub mod word;

pub use error::{Error, Result};
pub use factor::{factor_h1, factor_h2_transport, factor_h4};
pub use matrix::{IntMat2, Sign};
pub use oracle::{bfs_enumerate, verify_generation, GenerationReport, ReachSet};
pub use planner::{k6_word, plan_monodromy, verify_plan, MonodromyPlan, PlanStep, StepKind};
pub use subgroup::{
    decompose_gl2, decompose_h2, k4_elements, k6_elements, membership, SubgroupTag,
};
pub use surgery::{
    change_framing, flop_decomposition, is_topological_flop, is_trivial_mod2, lens_space_h1,
    mobius_boundary_class, moebius_embeddable, normalize_to_h2, surgery_invariants,
    SurgeryDescriptor, SurgeryInvariants, TorusCurveClass,
};
pub use word::{eval_word, GeneratorLetter, GeneratorWord, Letter, Ruling, Shift};
