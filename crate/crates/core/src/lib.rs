//! Line arrangements in the projective plane: combinatorics, Jacobian
//! relations and freeness classification.

pub mod arrangement;
pub mod catalogue;
pub mod classify;
pub mod field;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod report;
pub mod syzygy;

pub use arrangement::{Arrangement, CombinatorialProfile, ProjectiveLine, TVector};
pub use catalogue::{CatalogueEntry, CatalogueFile};
pub use classify::{classify, classify_with, Classification, ClassifyOptions, Verdict};
pub use field::{FieldSpec, NumberField, Scalar};
