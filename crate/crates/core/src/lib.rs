//! Exact decision procedure for permutation-like 2-groups with a maximal cycle.
//!
//! A group `G = <A, (B,) C>` of `2^n x 2^n` monomial matrices, where
//! `C = diag(λ^j)` has order `2^n`, is permutation-like when every element is
//! similar to a permutation matrix. [`group::analyze`] decides this by scanning
//! characteristic polynomials; [`synth::synthesize`] then builds an explicit
//! basis in which every element is a permutation matrix, and
//! [`oracle::verify_certificate`] checks that basis independently.

pub mod cli;
pub mod cyclotomic;
pub mod group;
pub mod monomial;
pub mod oracle;
pub mod presentations;
pub mod residue;
pub mod suites;
pub mod synth;

pub use group::{analyze, GroupAnalysis, GroupSpec};
pub use monomial::MonomialMatrix;
pub use residue::{Residue, SubgroupDescriptor, UnitElement};
