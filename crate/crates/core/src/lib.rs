//! Paley-type graphs G_n on Z_n and exact clique counts in G_{p^α}.
//!
//! G_n has vertex set Z_n, with a ~ b iff a - b is the square of a unit mod n.
//! The graph is well defined exactly when -1 is a unit square, i.e. when
//! n = 2^s · p_1^a_1 ⋯ p_k^a_k with s ≤ 1 and every p_i ≡ 1 (mod 4).
//!
//! - [`residue`]: modular arithmetic, factorization, admissibility.
//! - [`characters`]: ε, χ, ψ modulo p^α, Jacobi sums and character-sum lemmas.
//! - [`graph`], [`properties`], [`export`]: construction and structure of G_n.
//! - [`census`]: brute-force and closed-form triangle / K4 counts.

pub mod census;
pub mod characters;
pub mod error;
pub mod export;
pub mod graph;
pub mod properties;
pub mod residue;

pub use characters::{CharacterFamily, GaussianInt};
pub use error::{Error, Result};
pub use graph::{build_graph, Graph};
pub use residue::{Modulus, PrimePowerModulus};
