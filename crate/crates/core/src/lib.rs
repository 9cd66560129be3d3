//! Exact computations on discriminantal arrangements.
//!
//! Given the normals of a generic arrangement of `n` hyperplanes in dimension
//! `k`, this crate builds the discriminantal arrangement `B(n, k)`, counts its
//! codimension-2 strata by multiplicity, detects dependent good 3s-partitions
//! along several independent routes, and for `k = 3` evaluates the quadrics in
//! Plücker coordinates that cut out the non-very-generic locus of `Gr(3, n)`.
//!
//! All arithmetic is exact over the rationals. Indices are 0-based in the API
//! and 1-based in every JSON document.

pub mod arrangement;
pub mod crosscheck;
pub mod discriminantal;
pub mod error;
pub mod exactnum;
pub mod generator;
pub mod grassmannian;
pub mod partitions;

pub use arrangement::{parse_arrangement, Arrangement};
pub use discriminantal::{alpha_l, plucker_matrix, strata_census, triple_codim, StrataCensus};
pub use error::{Error, Result};
pub use exactnum::{Matrix, Rational};
pub use generator::{generate, GeneratorConfig, Kind};
pub use grassmannian::{
    check_plucker_relations, plucker_coords, quadric_scan, quadric_value, single_minor_criterion,
    PluckerTable,
};
pub use partitions::{
    enumerate_good_partitions, find_dependent, is_dependent, kernel_triple, p_t, p_tilde, submatrix_a_t,
    GoodPartition,
};
