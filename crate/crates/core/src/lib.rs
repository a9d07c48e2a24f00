//! Data-parallel K-means clustering.
//!
//! The crate covers the whole pipeline used for large-scale experiments:
//!
//! - [`data`]: dense row-major matrices, min-max scaling, subset partitions and file IO.
//! - [`kmeans`]: nearest-prototype assignment, SSE, prototype updates, Lloyd's
//!   search loop and weighted clustering of candidate sets.
//! - [`init`]: random, K-means++, K-means||, subset K-means|| (SK) and subset
//!   random-projection K-means|| (SRPK) initialization.
//! - [`projection`]: Achlioptas random matrices and `(1/√P)·X·R` projection.
//! - [`msphere`]: the M-spheres synthetic dataset generator.
//! - [`metrics`]: entropy, contingency tables and normalized mutual information.
//! - [`runtime`]: SPMD-style sharding with ordered reductions and gathers.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`). The aliases
//! at the crate root fix the scalar to `f64`, which is what the CLI uses.

pub mod config;
pub mod data;
pub mod error;
pub mod init;
pub mod io;
pub mod kmeans;
pub mod metrics;
pub mod msphere;
pub mod projection;
pub mod rng;
pub mod runtime;
pub mod scalar;

pub use config::{ClusterConfig, RpDistribution};
pub use data::{minmax_scale, partition_rows, DataMatrix, SubsetPartition};
pub use error::{Error, Result};
pub use init::{InitMethod, InitReport};
pub use kmeans::{Assignment, LloydStats, PrototypeSet, WeightedPoints};
pub use metrics::{entropy, nmi, Contingency};
pub use msphere::{LabeledDataset, SphereSpec};
pub use projection::RpMatrix;
pub use runtime::{ShardPlan, WorkerGroup};
pub use scalar::Scalar;

/// Double-precision data matrix.
pub type Matrix = DataMatrix<f64>;
/// Single-precision data matrix.
pub type Matrix32 = DataMatrix<f32>;
/// Double-precision prototype set.
pub type Prototypes = PrototypeSet<f64>;
/// Single-precision prototype set.
pub type Prototypes32 = PrototypeSet<f32>;
/// Double-precision assignment.
pub type Labels = Assignment<f64>;
/// Double-precision labeled synthetic dataset.
pub type Dataset = LabeledDataset<f64>;
