//! Exact and Monte Carlo verification of distribution identities for linear
//! forms with a Bernoulli coefficient on abelian groups.
//!
//! The toolkit has three layers:
//!
//! * exact rational probability calculus on finite abelian groups
//!   ([`group`], [`dist`], [`forms`]), where laws of the linear forms
//!   `2 xi_1`, `xi_1 + xi_2 + 2 alpha xi_3`, and `2 alpha xi_1` vs
//!   `xi_1 + xi_2` are compared mass by mass;
//! * a solver for the induced doubling equations on dual groups together
//!   with the structured solution families ([`solver`]), plus the dual side
//!   of a-adic solenoids with the hyperbolic-secant and counterexample
//!   characteristic functions ([`solenoid`]);
//! * real-line checks ([`realline`]): seeded samplers, two-sample
//!   Kolmogorov-Smirnov form tests, and dyadic halving descents.
//!
//! Here `alpha` always denotes a Bernoulli coefficient taking the values 0
//! and 1 with probability one half each, independent of the other variables.

pub mod dist;
pub mod error;
pub mod forms;
pub mod group;
pub mod realline;
pub mod solenoid;
pub mod solver;
pub mod tolerances;

pub use dist::{CfValue, CharFn, Dist};
pub use error::{Error, Result};
pub use forms::{EqMode, FormLawPair};
pub use group::{
    doubling_graph, subgroups, Character, DoublingGraph, FiniteAbelianGroup, GroupElement,
    Subgroup,
};
