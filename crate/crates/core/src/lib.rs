//! Exact word-length computations for dihedral groups `D_n` presented by
//! symmetric generating sets.
//!
//! The crate covers element arithmetic ([`group`]), validation and
//! classification of generating sets ([`genset`]), breadth-first word-length
//! tables and the conjugation-perturbation quantities λ₁/λ₂ ([`wordlen`]),
//! closed-form predictions checked against the exhaustive engine
//! ([`presentations`]), generator-bijection automorphisms ([`morphisms`]),
//! and report writers plus the command-line front end ([`report`], [`cli`]).

pub mod cli;
pub mod error;
pub mod genset;
pub mod group;
pub mod morphisms;
pub mod presentations;
pub mod report;
pub mod wordlen;

pub use error::{Error, Result};
pub use genset::{classify, Classification, GenSet, PairSubgroups, PresentationClass, ThreeInvClass};
pub use group::{DihedralElement, GroupDescriptor, GroupKind};
pub use morphisms::{AutomorphismTable, RelationSignature};
pub use presentations::{Family, PredictedBounds, Verdict, VerificationRecord};
pub use wordlen::{LambdaReport, LengthTable};
