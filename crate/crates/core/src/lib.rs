//! Degree-8 permutation polynomials over GF(2^r).
//!
//! Field arithmetic, Hermite's criterion coefficients over several
//! coefficient domains, normal forms under linear transformations, and the
//! exhaustive classification (r = 4, 5, 6) and proof replay (r = 7, 8, 9).

pub mod equiv;
pub mod error;
pub mod field;
pub mod hermite;
pub mod octic;
pub mod pptest;
pub mod report;
pub mod search;
pub mod symring;
pub mod unipoly;

pub use equiv::{is_exceptional_deg8, linearly_related, normalize, NormalForm};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement, Moduli};
pub use hermite::{hc, hc_octic, hc_symbolic, hermite_full_check, KRange};
pub use octic::{LinearWitness, Octic};
pub use pptest::{is_pp_brute, is_pp_wan, PpTester};
pub use report::ReportDocument;
pub use search::{classify, ClassRecord, Classification, ProofReport, ProofStep, StepStatus};
pub use symring::{CoeffDomain, Gf2Poly, Monomial, SparsePoly7};
pub use unipoly::{FunctionRing, UniPoly};
