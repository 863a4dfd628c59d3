//! MDS self-dual, self-orthogonal and almost self-dual codes built from
//! (extended) generalized Reed-Solomon codes over GF(r^2).
//!
//! The crate is layered bottom-up:
//!
//! - [`field`]: GF(p^m) in discrete-log form, with the quadratic character
//!   and square roots read off exponent parity.
//! - [`grs`]: evaluation sets, δ, GRS code objects, Gram checks.
//! - [`mds`]: column-subset rank checks and brute-force minimum distance.
//! - [`constructions`]: the coset-union evaluation sets `S` and `T` and the
//!   lemma/theorem pipeline that turns them into codes.
//! - [`enumeration`]: achievable length catalogs and the proportion table.

pub mod arith;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod grs;
pub mod matrix;
pub mod mds;
pub mod poly;
pub mod serial;

pub use constructions::{Branch, CharacterProfile, ConstructionParams, ProfileSummary};
pub use enumeration::{CatalogFamily, LengthCatalog, Table2Row};
pub use error::{Error, Result};
pub use field::{FieldElement, FiniteField, Sign};
pub use grs::{EvaluationSet, GrsCode, Recipe};
pub use mds::{MdsBudget, MdsVerdict};
pub use poly::Polynomial;
