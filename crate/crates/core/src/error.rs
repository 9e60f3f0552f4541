use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("face index {i} out of range for dimension {dim}")]
    FaceIndex { i: u32, dim: usize },

    #[error("degeneracy index {j} out of range for dimension {dim}")]
    DegeneracyIndex { j: u32, dim: usize },

    #[error("simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails on simplex {simplex}", jm1 = j - 1)]
    SimplicialIdentity { simplex: String, i: u32, j: u32 },

    #[error("construction would exceed dimension {dim} (cap {cap}); raise the cap to proceed")]
    DimensionCap { dim: usize, cap: usize },

    #[error("space is not pointed")]
    NotPointed,

    #[error("basepoint must be an existing vertex")]
    BadBasepoint,

    #[error("map does not commute with d_{i} on simplex {simplex}")]
    MapFaceMismatch { simplex: String, i: u32 },

    #[error("pointed map must send basepoint to basepoint")]
    MapNotPointed,

    #[error("domain/codomain mismatch in {context}")]
    SpaceMismatch { context: &'static str },

    #[error("cone does not commute; no mediating map exists ({context})")]
    NonCommutingCone { context: &'static str },

    #[error("map is not degreewise injective ({context})")]
    NotInjective { context: &'static str },

    #[error("retraction composed with inclusion is not the identity (at {simplex})")]
    NotRetraction { simplex: String },

    #[error("coaction labels incompatible: {0}")]
    BadLabels(String),

    #[error("coaction counit fails on simplex {simplex}")]
    CounitViolation { simplex: String },

    #[error("monoid axioms fail: {0}")]
    BadMonoid(String),

    #[error("space is not connected")]
    Disconnected,

    #[error("space is not reduced (needs exactly one vertex)")]
    NotReduced,

    #[error("coset enumeration exceeded the bound of {bound} cosets")]
    Exceeded { bound: usize },

    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("chain map fails to commute with the boundary in degree {degree}")]
    ChainMapMismatch { degree: usize },

    #[error("{0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),
}
