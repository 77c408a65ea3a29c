use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum HomlieError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("indeterminate mismatch: {0} vs {1}")]
    IndeterminateMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular map: {0}")]
    SingularMap(String),
    #[error("unknown example key: {0}")]
    UnknownKey(String),
    #[error("{0} is not an algebra endomorphism; witness pair (e{1}, e{2})")]
    NotEndomorphism(String, usize, usize),
    #[error("multiplication is not associative; witness triple (e{0}, e{1}, e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("bracket left the derivation space: {0}")]
    ClosureFailure(String),
    #[error("r-matrix violates the twist compatibility r#∘(φ⁻¹)* = φ∘r#")]
    ConrViolated,
    #[error("dual twist must be the inverse-transpose of the primal twist")]
    TwistMismatch,
    #[error("input representation fails its axioms: {0}")]
    InvalidRepresentation(String),
    #[error("input bialgebra fails its compatibility condition: {0}")]
    InvalidBialgebra(String),
    #[error("Manin triple pairing is not the standard one: {0}")]
    NonstandardPairing(String),
    #[error("T does not intertwine the twists (T∘β ≠ φ∘T)")]
    TwistIncompatible,
    #[error("pole at substitution value {1} in entry {0}")]
    PoleAtValue(String, String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
