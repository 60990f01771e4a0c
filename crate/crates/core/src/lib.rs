//! Preference set constraint (PSC) logic programs.
//!
//! A PSC program is a set of rules whose heads are set constraint atoms,
//! possibly carrying a pre-order or a measure on their admissible sets.
//! [`engine`] computes stable models; [`preference`] ranks them.
//! [`aso`] and [`pp`] embed answer set optimization programs and general
//! planning preferences into PSC programs, and [`oracle`] holds
//! brute-force reference implementations used to cross-check the engine.
//!
//! Weights are generic over [`Scalar`]. The aliases at the crate root fix
//! the scalar to `f64`, with `Exact*` variants over [`Rational64`].

pub mod aso;
pub mod atoms;
pub mod engine;
pub mod error;
pub mod instances;
pub mod model;
pub mod oracle;
pub mod pp;
pub mod preference;
pub mod random;
pub mod scalar;
pub mod syntax;

pub use num_rational::Rational64;

pub use atoms::{atom, Atom, AtomSet};
pub use engine::{enumerate_stable, head_support, is_stable, DEFAULT_CAP};
pub use error::{Error, Result};
pub use model::{Family, ProgramKind, ScAtom};
pub use preference::{compare_models, preferred_models, CompareVerdict, OrderMode};
pub use scalar::Scalar;

pub type ExtReal = scalar::Extended<f64>;
pub type Preorder = model::Preorder<f64>;
pub type Measure = model::Measure<f64>;
pub type PreorderAtom = model::PreorderAtom<f64>;
pub type MeasureAtom = model::MeasureAtom<f64>;
pub type Head = model::Head<f64>;
pub type Rule = model::Rule<f64>;
pub type Program = model::Program<f64>;

pub type ExactExtReal = scalar::Extended<Rational64>;
pub type ExactPreorder = model::Preorder<Rational64>;
pub type ExactMeasure = model::Measure<Rational64>;
pub type ExactPreorderAtom = model::PreorderAtom<Rational64>;
pub type ExactMeasureAtom = model::MeasureAtom<Rational64>;
pub type ExactHead = model::Head<Rational64>;
pub type ExactRule = model::Rule<Rational64>;
pub type ExactProgram = model::Program<Rational64>;
