//! Exact computations for the vertex algebras attached to type-B Jordan
//! algebras: graded characters at level `-2n` via branching functions and
//! `sp(2n)` Clebsch-Gordan multiplicities, a symbolic mode algebra for the
//! quadratic generators `L_{a,b}(m,n)`, and a symplectic-fermion Fock-space
//! model that serves as an independent check of both.
//!
//! Module map:
//! - [`qseries`]: truncated integer q-series and Euler products.
//! - [`rootsys`]: weights, root data of `sp(2n)`/`so(2n+1)`, the signed-permutation Weyl group.
//! - [`laurent`]: sparse Laurent polynomials over half-integer exponents.
//! - [`weylchar`]: irreducible characters, decomposition, tensor multiplicities.
//! - [`branching`]: branching functions by the product and Weyl-sum formulas.
//! - [`characters`]: the fermionic character and the vacuum-module character.
//! - [`modealg`]: the Lie bracket, vacuum-module action, Griess and Jordan products.
//! - [`fock`]: the symplectic-fermion Fock space at bounded degree.

pub mod branching;
pub mod characters;
pub mod error;
pub mod fock;
pub mod laurent;
pub mod linalg;
pub mod modealg;
pub mod qseries;
pub mod rational;
pub mod rootsys;
pub mod weylchar;

pub use error::{Error, Result};

/// Size limits that guard the enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximal Weyl group order `2^n n!` that will be enumerated.
    pub weyl: u128,
    /// Maximal number of Fock basis monomials in one graded component.
    pub basis: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl: 100_000,
            basis: 20_000,
        }
    }
}
