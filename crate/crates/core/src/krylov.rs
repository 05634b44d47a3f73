//! Krylov vector sequences and spaces.
//!
//! For a seed `u` whose minimal annihilating polynomial is an irreducible
//! factor of degree `d`, the vectors `u, Au, …, A^(d-1)u` are linearly
//! independent and span `L_A(u)`, the Krylov space of `u`. Two such seeds
//! carry the same eigenvector information exactly when their Krylov spaces
//! coincide, which reduces to a membership test. The solver accumulates
//! pairwise-independent Krylov spaces one summand at a time.

use std::fmt;

use crate::annihilator::{min_annihilator_of_vector, AnnihilatorError};
use crate::exact::{column_reduce, ColumnBasis, ExactError, QMatrix, QVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KrylovError {
    ZeroSeed,
    /// A seed's minimal annihilating polynomial has unexpected degree.
    AnnihilatorDegreeMismatch { expected: usize, got: usize },
    /// The seed of an admitted sequence already lies in the space.
    SeedNotIndependent,
    Exact(ExactError),
    Annihilator(AnnihilatorError),
}

impl fmt::Display for KrylovError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrylovError::ZeroSeed => write!(f, "Krylov sequence of the zero vector"),
            KrylovError::AnnihilatorDegreeMismatch { expected, got } => write!(
                f,
                "minimal annihilating polynomial has degree {got}, expected {expected}"
            ),
            KrylovError::SeedNotIndependent => {
                write!(f, "seed already lies in the accumulated space")
            }
            KrylovError::Exact(e) => write!(f, "{e}"),
            KrylovError::Annihilator(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for KrylovError {}

impl From<ExactError> for KrylovError {
    fn from(e: ExactError) -> Self {
        KrylovError::Exact(e)
    }
}

impl From<AnnihilatorError> for KrylovError {
    fn from(e: AnnihilatorError) -> Self {
        KrylovError::Annihilator(e)
    }
}

/// The ordered Krylov vectors `u, Au, …, A^(d-1)u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrylovSequence {
    vectors: Vec<QVector>,
}

impl KrylovSequence {
    pub fn seed(&self) -> &QVector {
        &self.vectors[0]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    /// 1-indexed access matching the usual notation `K[1] = u`.
    pub fn at(&self, i: usize) -> &QVector {
        &self.vectors[i - 1]
    }
}

/// Computes `u, Au, …, A^(d-1)u` with exactly `d - 1` matrix–vector products.
pub fn krylov_sequence(a: &QMatrix, u: &QVector, d: usize) -> Result<KrylovSequence, KrylovError> {
    assert!(d >= 1, "Krylov sequence length must be positive");
    if u.is_zero() {
        return Err(KrylovError::ZeroSeed);
    }
    let mut vectors = Vec::with_capacity(d);
    vectors.push(u.clone());
    for _ in 1..d {
        let next = a.mul_vector(vectors.last().unwrap())?;
        vectors.push(next);
    }
    Ok(KrylovSequence { vectors })
}

/// Canonical basis of the span of a Krylov sequence.
pub fn krylov_space(seq: &KrylovSequence) -> ColumnBasis {
    column_reduce(seq.vectors())
}

/// Direct sum of Krylov spaces accumulated one summand at a time.
#[derive(Debug, Clone)]
pub struct AccumulatedSpace {
    basis: ColumnBasis,
    summands: usize,
}

impl AccumulatedSpace {
    pub fn new(dim: usize) -> Self {
        AccumulatedSpace {
            basis: ColumnBasis::empty(dim),
            summands: 0,
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }

    pub fn summand_count(&self) -> usize {
        self.summands
    }

    pub fn basis(&self) -> &ColumnBasis {
        &self.basis
    }

    pub fn contains(&self, v: &QVector) -> bool {
        self.basis.contains(v)
    }

    /// Admits a sequence whose seed lies outside the current space.
    ///
    /// For seeds annihilated by the same irreducible factor, seed
    /// independence already forces the whole Krylov space to intersect the
    /// accumulated space trivially; debug builds assert that stronger fact.
    pub fn admit(&mut self, seq: &KrylovSequence) -> Result<(), KrylovError> {
        if self.basis.contains(seq.seed()) {
            return Err(KrylovError::SeedNotIndependent);
        }
        let before = self.basis.rank();
        for v in seq.vectors() {
            let inserted = self.basis.insert(v);
            debug_assert!(inserted, "Krylov vector dependent on accumulated space");
            let _ = inserted;
        }
        debug_assert_eq!(self.basis.rank(), before + seq.len());
        let _ = before;
        self.summands += 1;
        Ok(())
    }
}

/// Membership `w ∈ L_A(u)` for seeds with the same irreducible annihilator
/// of degree `d`; checks the degree precondition on both seeds.
///
/// Over the rationals this single membership is equivalent to
/// `u ∈ L_A(w)` and to `L_A(u) = L_A(w)`.
pub fn check_prop1_equivalences(
    a: &QMatrix,
    u: &QVector,
    w: &QVector,
    d: usize,
) -> Result<bool, KrylovError> {
    for v in [u, w] {
        let pi = min_annihilator_of_vector(a, v)?;
        let got = pi.degree().unwrap_or(0);
        if got != d {
            return Err(KrylovError::AnnihilatorDegreeMismatch { expected: d, got });
        }
    }
    let space = krylov_space(&krylov_sequence(a, u, d)?);
    Ok(space.contains(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{matvec_count, reset_matvec_count};
    use crate::matrixgen::{block_diagonal, companion};
    use crate::testutil::example_matrix;
    use crate::unipoly::UniPoly;

    #[test]
    fn sequence_matches_example_vectors() {
        let a = example_matrix();
        let u = QVector::from_i64(&[-417, 1251, -5043, -9174, -1941]);
        reset_matvec_count();
        let seq = krylov_sequence(&a, &u, 3).unwrap();
        assert_eq!(matvec_count(), 2);
        assert_eq!(seq.at(1), &u);
        assert_eq!(
            seq.at(2),
            &QVector::from_i64(&[-2619, 7857, -31767, -57618, -31644])
        );
        assert_eq!(
            seq.at(3),
            &QVector::from_i64(&[-35526, 106578, -428253, -781572, -288579])
        );
    }

    #[test]
    fn sequence_of_length_one_is_the_seed() {
        let a = example_matrix();
        let u = QVector::unit(5, 1);
        let seq = krylov_sequence(&a, &u, 1).unwrap();
        assert_eq!(seq.vectors(), &[u]);
    }

    #[test]
    fn zero_seed_is_rejected() {
        let a = example_matrix();
        assert_eq!(
            krylov_sequence(&a, &QVector::zeros(5), 2),
            Err(KrylovError::ZeroSeed)
        );
    }

    #[test]
    fn sequence_matches_power_oracle() {
        let a = QMatrix::from_i64_rows(&[&[0, 1, 2], &[1, -1, 0], &[3, 0, 1]]);
        let u = QVector::from_i64(&[1, 2, -1]);
        let seq = krylov_sequence(&a, &u, 4).unwrap();
        let mut power = u.clone();
        for i in 0..4 {
            assert_eq!(seq.at(i + 1), &power);
            power = a.mul_vector(&power).unwrap();
        }
    }

    #[test]
    fn space_of_example_seed_has_simple_basis() {
        let a = example_matrix();
        let u = QVector::from_i64(&[-417, 1251, -5043, -9174, -1941]);
        let basis = krylov_space(&krylov_sequence(&a, &u, 3).unwrap());
        assert_eq!(basis.rank(), 3);
        assert_eq!(basis.vectors()[0], QVector::from_i64(&[1, -3, 0, 22, 0]));
        assert_eq!(basis.vectors()[1], QVector::unit(5, 2));
        assert_eq!(basis.vectors()[2], QVector::unit(5, 4));
    }

    #[test]
    fn space_of_unit_vectors_is_itself() {
        let a = QMatrix::identity(4);
        let seq = krylov_sequence(&a, &QVector::unit(4, 1), 1).unwrap();
        let basis = krylov_space(&seq);
        assert_eq!(basis.vectors(), &[QVector::unit(4, 1)]);
    }

    #[test]
    fn membership_equivalences_on_example() {
        let a = example_matrix();
        let u = QVector::from_i64(&[-417, 1251, -5043, -9174, -1941]);
        let e5 = QVector::unit(5, 4);
        assert!(check_prop1_equivalences(&a, &u, &e5, 3).unwrap());
        assert!(check_prop1_equivalences(&a, &e5, &u, 3).unwrap());
        assert!(check_prop1_equivalences(&a, &u, &u, 3).unwrap());
    }

    #[test]
    fn disjoint_companion_blocks_have_disjoint_spaces() {
        let f = UniPoly::from_i64(&[1, -3, 1, 0, 1]); // irreducible quartic
        let c = companion(&f).unwrap();
        let a = block_diagonal(&[c.clone(), c]);
        let u = QVector::unit(8, 0);
        let w = QVector::unit(8, 4);
        assert!(!check_prop1_equivalences(&a, &u, &w, 4).unwrap());
        assert!(!check_prop1_equivalences(&a, &w, &u, 4).unwrap());
        // The two spaces accumulate to a genuine direct sum.
        let mut acc = AccumulatedSpace::new(8);
        acc.admit(&krylov_sequence(&a, &u, 4).unwrap()).unwrap();
        acc.admit(&krylov_sequence(&a, &w, 4).unwrap()).unwrap();
        assert_eq!(acc.dimension(), 8);
        assert_eq!(acc.summand_count(), 2);
        // Readmitting a contained seed fails.
        assert_eq!(
            acc.admit(&krylov_sequence(&a, &u, 4).unwrap()),
            Err(KrylovError::SeedNotIndependent)
        );
    }

    #[test]
    fn degree_precondition_is_checked() {
        let a = example_matrix();
        let u = QVector::unit(5, 2); // annihilator degree 3
        let w = QVector::unit(5, 0); // annihilator degree 5
        assert_eq!(
            check_prop1_equivalences(&a, &u, &w, 3),
            Err(KrylovError::AnnihilatorDegreeMismatch {
                expected: 3,
                got: 5
            })
        );
    }
}
