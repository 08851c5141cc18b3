//! Discrete phase space over GF(2^n) for `n` qubits: field arithmetic,
//! lines and striations, Pauli translations, quantum nets, and discrete
//! Wigner functions.

pub mod apps;
pub mod dense;
pub mod error;
pub mod export;
pub mod galois;
pub mod gf2;
pub mod net;
pub mod pauli;
pub mod phasespace;
pub mod verify;
pub mod wigner;

pub use error::{Error, Result};
pub use galois::{FieldElement, FieldSpec, Generator, PolyTable, Polynomial};
pub use net::{NetConfig, NetMode, QuantumNet, Signs};
pub use pauli::{Gate, PauliTranslation};
pub use phasespace::{BinaryPoint, Line, PhasePoint, Striation, StriationLabel};
pub use wigner::{DensityMatrix, GridValues, PointOperators, Provenance, Rational, StabilizerGroup, WignerGrid};
