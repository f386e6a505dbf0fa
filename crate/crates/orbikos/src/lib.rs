//! Exact computer algebra for closed-string mirror symmetry of punctured
//! Riemann surfaces presented as finite abelian covers of the pair-of-pants.
//!
//! The library builds both sides of the mirror isomorphism
//! `SH*(X) = Kos(W, G^)` for the Landau-Ginzburg potential `W = xyz` and
//! machine-checks every identity that is finitely computable: character-twisted
//! Floer differentials, cocycle lemmas, matrix-factorization products, the
//! Kodaira-Spencer chain map, and sector-by-sector graded-dimension equality.
//! All arithmetic is exact over cyclotomic fields; there is no floating point
//! anywhere.

pub mod abelian;
pub mod amodel;
pub mod clifford;
pub mod cyclotomic;
pub mod floer;
pub mod koszul;
pub mod ks;
pub mod linalg;
pub mod mf;
pub mod poly;
pub mod report;
pub mod twisted;

pub mod cli;

/// Default top degree (tripled grading) for slice computations.
pub const DEFAULT_CUTOFF: i64 = 24;
