//! q-analogues of graphs over finite fields.
//!
//! A q-graph on F_q^n has the 1-dimensional subspaces as vertices and a set
//! of 2-dimensional subspaces as edges. This crate constructs the classical
//! families (spreads and their interior/complement graphs, symplectic polar
//! spaces, the symplectic generalised hexagon in characteristic 2, field
//! reductions), implements semilinear group actions, and verifies regularity,
//! flag-transitivity and symmetry by explicit orbit computation.
//!
//! Everything is exact and deterministic: fields are built on Conway moduli,
//! subspaces carry unique reduced-row-echelon representatives, and orbit
//! enumeration keys on those canonical forms.

pub mod constructions;
pub mod error;
pub mod field;
pub mod octonion;
pub mod orbit;
pub mod qgraph;
pub mod report;
pub mod scan;
pub mod semilinear;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{ExtensionEmbedding, Field, FieldElement};
pub use subspace::{enumerate_subspaces, gaussian_binomial, rref, Subspace};

/// Resource limits for enumerations and orbit computations.
///
/// The defaults cover every ambient space with n*log2(q) <= 12 or so; the
/// heavy preset admits the F_2^12 experiments (millions of 2-subspaces and
/// flags).
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Largest subspace enumeration that will be materialised.
    pub max_enumeration: usize,
    /// Largest orbit the BFS will grow before giving up.
    pub max_orbit: usize,
    /// Largest group element closure.
    pub max_group: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_enumeration: 200_000,
            max_orbit: 2_000_000,
            max_group: 2_000_000,
        }
    }
}

impl Budget {
    pub fn heavy() -> Budget {
        Budget {
            max_enumeration: 3_000_000,
            max_orbit: 8_000_000,
            max_group: 2_000_000,
        }
    }
}
