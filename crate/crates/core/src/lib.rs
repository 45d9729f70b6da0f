//! Exact computations with Ω-tridendriform algebras: Ω-tables and their
//! axiom systems, typed planar trees and the free algebra on them, typed
//! words and matching algebras, Rota-Baxter families, tensor collapse and
//! the weight-2 operad relations.

pub mod axioms;
pub mod coeff;
pub mod error;
pub mod free;
pub mod linalg;
pub mod omega;
pub mod operad;
pub mod report;
pub mod rota_baxter;
pub mod tensor;
pub mod tree;
pub mod words;

pub use axioms::{TriOp, Tridendriform, TripleSource};
pub use coeff::{LinComb, Rational};
pub use error::{Error, Result};
pub use free::{Combo, FreeTridend};
pub use omega::{Builtin, OmegaOp, OmegaTable};
pub use operad::{KoszulDual, Pairing, Reading, RelationSpace, Weight2Basis};
pub use report::{AxiomReport, Violation};
pub use rota_baxter::OmegaRbAlgebra;
pub use tensor::{PhiKind, PhiReport, ProbeReport, Tagged};
pub use tree::{Child, Tree, Vertex};
pub use words::{MatchingAlgebra, TypedWord, TypedWords};
