//! Exact counting of Euler tours on connected Eulerian multigraphs.
//!
//! The main pipeline counts orbs — pairs of an Eulerian orientation and an
//! in-arborescence on it — by a dynamic program over a nice tree
//! decomposition, then multiplies by the per-vertex factorial factor
//! `prod_v (d_v - 1)!` (where vertex degrees are `2 d_v`) to obtain the
//! number of Euler tours up to cyclic rotation.
//!
//! Everything is exact: counts are arbitrary-precision integers and the
//! determinant oracle uses fraction-free elimination. The [`oracle`] module
//! provides independent brute-force routes (tour backtracking, orientation
//! enumeration, Matrix-Tree determinants) used to cross-validate the dynamic
//! program at small scale.

pub mod counting;
pub mod error;
pub mod multigraph;
pub mod nice;
pub mod oracle;
pub mod orbdp;
pub mod treedecomp;

pub use counting::{BigNat, Count};
pub use error::Error;
pub use multigraph::{EdgeId, EulerianStatus, MultiGraph, VertexId};
pub use nice::{NiceTreeDecomposition, NodeKind, NodeScope};
pub use orbdp::{count_euler_tours, count_orbs, ChargeVector, DpTable, RootVector};
pub use treedecomp::{min_fill_decompose, validate_decomposition, TreeDecomposition};
