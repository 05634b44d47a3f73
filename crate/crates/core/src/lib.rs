//! Exact eigenvector computation for integer and rational matrices.
//!
//! Eigenvectors are returned as vectors of polynomials in the eigenvalue:
//! for an irreducible factor `f` of the characteristic polynomial, a single
//! polynomial vector `phi(x)` represents the eigenvectors of every root of
//! `f` at once — substituting a root for `x` yields a classical eigenvector.
//! All arithmetic is exact rational arithmetic; no linear systems are solved
//! and no algebraic-number arithmetic is performed.
//!
//! The pipeline is: characteristic polynomial ([`charpoly`]), irreducible
//! factorization ([`unipoly`]), unit annihilating-polynomial estimation by
//! random row probes ([`annihilator`]), then per-factor eigenvector
//! construction through Horner evaluation and Krylov spaces ([`horner`],
//! [`krylov`], [`solver`]). [`matrixgen`] builds reproducible test matrices
//! from companion blocks and unimodular similarity transforms.

pub mod annihilator;
pub mod bench;
pub mod charpoly;
pub mod exact;
pub mod horner;
pub mod krylov;
pub mod matrixgen;
pub mod solver;
pub mod unipoly;

pub use exact::{
    column_reduce, matvec_count, rat, rational_bits, reset_matvec_count, ColumnBasis, ExactError,
    Integer, QMatrix, QVector, Rational,
};
pub use horner::PolyVector;
pub use unipoly::{FactoredCharPoly, UniPoly};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::exact::QMatrix;
    use crate::unipoly::UniPoly;

    /// 5x5 fixture with characteristic polynomial
    /// `(x^2 + x + 12)(x^3 - 5x^2 - 60x - 41)`.
    pub fn example_matrix() -> QMatrix {
        QMatrix::from_i64_rows(&[
            &[-3, -3, -4, 2, 1],
            &[-114, 56, 12, 6, -3],
            &[330, -179, -50, -11, 12],
            &[423, -255, -88, -4, 22],
            &[-303, 3, -79, 60, 5],
        ])
    }

    pub fn example_factor_quadratic() -> UniPoly {
        UniPoly::from_i64(&[12, 1, 1])
    }

    pub fn example_factor_cubic() -> UniPoly {
        UniPoly::from_i64(&[-41, -60, -5, 1])
    }
}
