//! Partitions, the monomial and elementary bases of symmetric polynomials,
//! and conversion of symmetric polynomials to the elementary basis.

mod basis;
mod partition;

pub use basis::{
    check_symmetric, elementary_product, elementary_to_monomial, expand_elementary,
    express_in_elementary, express_in_elementary_with_params, monomial_coefficients,
    monomial_symmetric, Basis, SymPolyInBasis,
};
pub use partition::{compare_order, compositions, partitions_of, Partition};
