//! Exact computation in Gröbner cells of finite-colength ideals of `k[[x,y]]`.
//!
//! The crate computes standard bases and leading-term ideals under the local
//! degree order (smaller degree first, ties broken lexicographically with
//! `x > y`), parametrizes the ideals with a fixed leading-term ideal by
//! canonical Hilbert-Burch matrices, and answers structural questions about
//! the resulting affine cells: dimensions, Gorenstein loci, and covers of
//! quotient algebras.

pub mod cells;
pub mod error;
pub mod gorenstein;
pub mod hbm;
pub mod localstd;
pub mod monomial;
pub mod parser;
pub mod staircase;
pub mod poly;
pub mod scalar;
pub mod ypoly;

pub use cells::{
    canonical_deformation, change_coordinates, conjecture_probe, generic_initial, membership,
    nonsurj_witness, reduce_to_canonical, reduce_upper, reduction_move, syzygy_deformation,
    syzygy_deformation_from_basis, truncate_deformation, upper_reduction_move, CanonicalResult,
    CellReport, ProbeReport,
};
pub use error::{Error, Result};
pub use gorenstein::{
    cover_search, gcl_bound, is_cover, is_gorenstein_point, minimal_generator_count, rank_profile,
    CoverResult, GclBound, RankProfile, SearchStrategy,
};
pub use hbm::{
    cell_dimension, decode_cellpoint, encode_cellpoint, forced_zero_slots, lt_d_template_slots,
    n_le_s_template_slots, template_slots, CellPoint, Deformation, FamilyFlags,
};
pub use localstd::{
    buchberger_lex, contract_to_poly_ring, grauert_divide, is_lifting, lt_ideal_lex,
    lt_ideal_local, reduced_standard_basis, verify_standard_basis, y_divide, DivisionResult,
    IdealPresentation, LtCertificate, StandardBasis,
};
pub use monomial::{Monomial, OrderKind};
pub use poly::{BiPoly, Cap};
pub use staircase::{Staircase, StairFlags};
pub use scalar::{FieldTag, Scalar};
pub use ypoly::YPoly;
