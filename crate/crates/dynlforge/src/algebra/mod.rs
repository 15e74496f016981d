//! Structure-constant representation of Lie quasi-bialgebras, their doubles,
//! twisting and splitting extraction.

pub mod basis;
pub mod double;
pub mod lie;
pub mod quasi;
pub mod schema;

pub use basis::{DecomposedBasis, Layout};
pub use double::{build_double, extract_from_splitting, twist, DoubleAlgebra, LagrangianSplitting};
pub use lie::LieAlgebraData;
pub use quasi::{CheckRecord, QuasiBialgebra, Tolerances, ValidationReport};
pub use schema::{export_json, export_setup, load_setup, SetupDoc};
