//! Unit annihilating polynomials: cheap probe-based estimates and exact
//! certification.
//!
//! For the factorization `chi_A = f_1^{m_1} ··· f_q^{m_q}`, the minimal
//! annihilating polynomial of the j-th unit vector is
//! `pi_j = prod f_p^{l_{p,j}}`. Computing every `pi_j` exactly is expensive;
//! instead a single random integer row vector `r` probes all exponents of
//! one factor at once: with `G_p = prod_{p' != p} f_{p'}(A)^{m_{p'}}` and
//! `F_p = f_p(A)`, the j-th entry of `r·G_p·F_p^k` vanishes for good at
//! `k = l_{p,j}`, so scanning `k` recovers an estimate `l'_{p,j} <= l_{p,j}`
//! (a degenerate probe can undershoot, never overshoot). Everything is
//! evaluated with row Horner products; no matrix–matrix product is formed.
//!
//! The estimate is certified on demand: if `pi'_j(A)e_j != 0`, the true
//! `pi_j` is `pi'_j` times the minimal annihilating polynomial of the
//! residual vector.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, QMatrix, QVector, Rational};
use crate::horner::{eval_poly_at_matrix, eval_poly_at_matrix_row, HornerError};
use crate::unipoly::{FactoredCharPoly, UniPoly};

/// Probe entries are drawn uniformly from nonzero integers in this range.
const PROBE_BOUND: i64 = 1 << 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnnihilatorError {
    ZeroVector,
    /// Certification was requested although the pseudo annihilating
    /// polynomial already annihilates the unit vector.
    ResidualZero { column: usize },
    /// A minimal annihilating polynomial did not decompose over the supplied
    /// factor list; the factorization is wrong.
    ForeignFactor,
    Horner(HornerError),
}

impl fmt::Display for AnnihilatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnnihilatorError::ZeroVector => {
                write!(f, "minimal annihilating polynomial of the zero vector")
            }
            AnnihilatorError::ResidualZero { column } => {
                write!(f, "residual already zero for column {column}")
            }
            AnnihilatorError::ForeignFactor => {
                write!(f, "annihilator does not split over the supplied factors")
            }
            AnnihilatorError::Horner(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AnnihilatorError {}

impl From<HornerError> for AnnihilatorError {
    fn from(e: HornerError) -> Self {
        AnnihilatorError::Horner(e)
    }
}

/// Estimated (or certified) exponent table `l_{p,j}` plus the probe that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorProfile {
    /// `exponents[p][j]`, rows indexed like the factorization.
    exponents: Vec<Vec<usize>>,
    probe_seed: u64,
    probe: QVector,
    certified: bool,
}

impl AnnihilatorProfile {
    pub fn exponent(&self, p: usize, j: usize) -> usize {
        self.exponents[p][j]
    }

    pub fn num_factors(&self) -> usize {
        self.exponents.len()
    }

    pub fn dim(&self) -> usize {
        self.exponents.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn probe_seed(&self) -> u64 {
        self.probe_seed
    }

    pub fn probe(&self) -> &QVector {
        &self.probe
    }

    /// True when the table holds certified exponents rather than estimates.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Largest exponent of factor `p` over all columns.
    pub fn max_exponent(&self, p: usize) -> usize {
        self.exponents[p].iter().copied().max().unwrap_or(0)
    }

    /// The (pseudo) unit annihilating polynomial of column `j`.
    pub fn unit_annihilator(&self, fac: &FactoredCharPoly, j: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for (p, (f, _)) in fac.factors().iter().enumerate() {
            let e = self.exponents[p][j];
            if e > 0 {
                acc = acc.mul(&f.pow(e));
            }
        }
        acc
    }

    /// Cofactor of `f_p` in the unit annihilator of column `j`:
    /// the product of the other factors at their recorded exponents.
    pub fn cofactor(&self, fac: &FactoredCharPoly, p: usize, j: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for (q, (f, _)) in fac.factors().iter().enumerate() {
            if q == p {
                continue;
            }
            let e = self.exponents[q][j];
            if e > 0 {
                acc = acc.mul(&f.pow(e));
            }
        }
        acc
    }
}

/// Per-factor view of a profile: the columns with exponent one and zero and
/// the cofactor polynomials for the former.
#[derive(Debug, Clone)]
pub struct FactorContext {
    pub factor_index: usize,
    pub factor: UniPoly,
    pub multiplicity: usize,
    pub degree: usize,
    /// Columns with exponent exactly one, ascending.
    pub j1: Vec<usize>,
    /// Columns with exponent zero, ascending.
    pub j0: Vec<usize>,
    /// Cofactor polynomial for each column in `j1`.
    pub cofactors: BTreeMap<usize, UniPoly>,
}

/// Builds the per-factor context for factor `p` from a profile.
pub fn factor_context(fac: &FactoredCharPoly, profile: &AnnihilatorProfile, p: usize) -> FactorContext {
    let n = profile.dim();
    let mut j1 = Vec::new();
    let mut j0 = Vec::new();
    let mut cofactors = BTreeMap::new();
    for j in 0..n {
        match profile.exponent(p, j) {
            0 => j0.push(j),
            1 => {
                j1.push(j);
                cofactors.insert(j, profile.cofactor(fac, p, j));
            }
            _ => {}
        }
    }
    FactorContext {
        factor_index: p,
        factor: fac.factor(p).clone(),
        multiplicity: fac.multiplicity(p),
        degree: fac.factor(p).degree().unwrap_or(0),
        j1,
        j0,
        cofactors,
    }
}

/// Draws the integer probe row for a seed: entries uniform in
/// `[-PROBE_BOUND, PROBE_BOUND]`, zero excluded.
pub fn probe_vector(dim: usize, seed: u64) -> QVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..dim)
        .map(|_| loop {
            let x: i64 = rng.random_range(-PROBE_BOUND..=PROBE_BOUND);
            if x != 0 {
                break rat(x);
            }
        })
        .collect();
    QVector::from_entries(entries)
}

/// Estimates all exponents from one random row probe.
pub fn pseudo_profile(a: &QMatrix, fac: &FactoredCharPoly, seed: u64) -> AnnihilatorProfile {
    let probe = probe_vector(a.dim(), seed);
    pseudo_profile_with_probe(a, fac, probe, seed)
}

/// Probe-explicit variant; the seed is recorded for reporting only.
pub fn pseudo_profile_with_probe(
    a: &QMatrix,
    fac: &FactoredCharPoly,
    probe: QVector,
    seed: u64,
) -> AnnihilatorProfile {
    let n = a.dim();
    let q = fac.len();
    let mut exponents = vec![vec![0usize; n]; q];
    for p in 0..q {
        // r·G_p by row Horner, factor power by factor power.
        let mut row = probe.clone();
        for (p2, (f, m)) in fac.factors().iter().enumerate() {
            if p2 == p {
                continue;
            }
            for _ in 0..*m {
                row = eval_poly_at_matrix_row(f, a, &row).expect("square dims");
            }
        }
        let m_p = fac.multiplicity(p);
        let f_p = fac.factor(p);
        let mut pending: Vec<usize> = (0..n).filter(|&j| !row.get(j).is_zero()).collect();
        // Columns already zero in r·G_p keep exponent zero.
        let mut k = 0usize;
        while !pending.is_empty() && k < m_p {
            k += 1;
            row = eval_poly_at_matrix_row(f_p, a, &row).expect("square dims");
            pending.retain(|&j| {
                if row.get(j).is_zero() {
                    exponents[p][j] = k;
                    false
                } else {
                    true
                }
            });
        }
        debug_assert!(pending.is_empty(), "exponent exceeded multiplicity");
    }
    AnnihilatorProfile {
        exponents,
        probe_seed: seed,
        probe,
        certified: false,
    }
}

/// Minimal annihilating polynomial of a nonzero vector: the monic generator
/// of all polynomials `P` with `P(A)v = 0`, found as the first linear
/// dependence in the Krylov sequence `v, Av, A²v, …`.
pub fn min_annihilator_of_vector(
    a: &QMatrix,
    v: &QVector,
) -> Result<UniPoly, AnnihilatorError> {
    if v.is_zero() {
        return Err(AnnihilatorError::ZeroVector);
    }
    let n = a.dim();
    // Forward-reduced pairs (vector, polynomial) with vector = poly(A)·v.
    let mut reduced: Vec<(QVector, UniPoly, usize)> = Vec::new(); // (vec, poly, pivot)
    let mut raw = v.clone();
    for k in 0..=n {
        let mut w = raw.clone();
        let mut combo = UniPoly::monomial(k);
        for (b, q, pivot) in &reduced {
            let c = w.get(*pivot).clone();
            if !c.is_zero() {
                w.add_scaled_assign(&(-c.clone()), b);
                combo = combo.sub(&q.mul_scalar(&c));
            }
        }
        match w.lowest_nonzero_row() {
            None => return Ok(combo.monic()),
            Some(pivot) => {
                let inv = Rational::one() / w.get(pivot).clone();
                reduced.push((w.scale(&inv), combo.mul_scalar(&inv), pivot));
            }
        }
        if k < n {
            raw = a.mul_vector(&raw).expect("square dims");
        }
    }
    unreachable!("a dependence arises after at most dim steps");
}

/// Third certification step: given a column whose pseudo annihilator fails
/// to annihilate its unit vector, returns the true minimal annihilating
/// polynomial `pi'_j · (minimal annihilator of the residual)`.
pub fn certify_unit_annihilator(
    a: &QMatrix,
    fac: &FactoredCharPoly,
    profile: &AnnihilatorProfile,
    j: usize,
) -> Result<UniPoly, AnnihilatorError> {
    let pseudo = profile.unit_annihilator(fac, j);
    let e_j = QVector::unit(a.dim(), j);
    let residual = eval_poly_at_matrix(&pseudo, a, &e_j)?;
    if residual.is_zero() {
        return Err(AnnihilatorError::ResidualZero { column: j });
    }
    let tail = min_annihilator_of_vector(a, &residual)?;
    Ok(pseudo.mul(&tail))
}

/// Certifies a full profile: evaluates every pseudo annihilator at its unit
/// vector and corrects the undershooting columns. The result carries true
/// exponents.
pub fn certified_profile(
    a: &QMatrix,
    fac: &FactoredCharPoly,
    profile: &AnnihilatorProfile,
) -> Result<AnnihilatorProfile, AnnihilatorError> {
    let n = a.dim();
    let q = fac.len();
    let mut exponents = vec![vec![0usize; n]; q];
    for j in 0..n {
        let pseudo = profile.unit_annihilator(fac, j);
        let e_j = QVector::unit(n, j);
        let residual = eval_poly_at_matrix(&pseudo, a, &e_j)?;
        let mut pi = pseudo;
        if !residual.is_zero() {
            pi = pi.mul(&min_annihilator_of_vector(a, &residual)?);
        }
        // Decompose over the factor list by repeated exact division.
        for (p, (f, _)) in fac.factors().iter().enumerate() {
            loop {
                match pi.divrem(f) {
                    Ok((q, r)) if r.is_zero() => {
                        pi = q;
                        exponents[p][j] += 1;
                    }
                    _ => break,
                }
            }
        }
        if !pi.is_one() {
            return Err(AnnihilatorError::ForeignFactor);
        }
    }
    Ok(AnnihilatorProfile {
        exponents,
        probe_seed: profile.probe_seed,
        probe: profile.probe.clone(),
        certified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::characteristic_polynomial;
    use crate::matrixgen::companion;
    use crate::testutil::{example_factor_cubic, example_factor_quadratic, example_matrix};
    use crate::unipoly::factor_rationals;

    fn example_factorization() -> FactoredCharPoly {
        FactoredCharPoly::from_parts(vec![
            (example_factor_quadratic(), 1),
            (example_factor_cubic(), 1),
        ])
    }

    #[test]
    fn min_annihilator_of_unit_vectors_on_example() {
        // Columns 3 and 5 are annihilated by the cubic alone (the fifth
        // column lies in the Krylov space of a cubic-annihilated seed);
        // the other columns need the full product.
        let a = example_matrix();
        let f1 = example_factor_quadratic();
        let f2 = example_factor_cubic();
        for j in [2usize, 4] {
            assert_eq!(
                min_annihilator_of_vector(&a, &QVector::unit(5, j)).unwrap(),
                f2
            );
        }
        for j in [0usize, 1, 3] {
            assert_eq!(
                min_annihilator_of_vector(&a, &QVector::unit(5, j)).unwrap(),
                f1.mul(&f2)
            );
        }
    }

    #[test]
    fn min_annihilator_of_eigenvector_is_linear() {
        // e_1 is an eigenvector of this triangular matrix for eigenvalue 7.
        let a = QMatrix::from_i64_rows(&[&[7, 1, 0], &[0, 2, 5], &[0, 0, 3]]);
        let pi = min_annihilator_of_vector(&a, &QVector::unit(3, 0)).unwrap();
        assert_eq!(pi, UniPoly::linear(rat(7)));
    }

    #[test]
    fn min_annihilator_rejects_zero_vector() {
        let a = QMatrix::identity(3);
        assert_eq!(
            min_annihilator_of_vector(&a, &QVector::zeros(3)),
            Err(AnnihilatorError::ZeroVector)
        );
    }

    #[test]
    fn min_annihilator_divides_charpoly_on_block_matrix() {
        let f = UniPoly::from_i64(&[2, 0, 1]); // x^2+2
        let g = UniPoly::from_i64(&[-3, 1, 0, 1]); // x^3+x-3
        let a = crate::matrixgen::block_diagonal(&[companion(&f).unwrap(), companion(&g).unwrap()]);
        let chi = characteristic_polynomial(&a);
        for j in 0..5 {
            let pi = min_annihilator_of_vector(&a, &QVector::unit(5, j)).unwrap();
            assert!(chi.is_divisible_by(&pi));
            let image = eval_poly_at_matrix(&pi, &a, &QVector::unit(5, j)).unwrap();
            assert!(image.is_zero());
        }
    }

    #[test]
    fn pseudo_profile_matches_example_structure() {
        let a = example_matrix();
        let fac = example_factorization();
        let profile = pseudo_profile(&a, &fac, 7);
        // Factor 0 is the quadratic, factor 1 the cubic (canonical order).
        // Columns 3 and 5 carry no quadratic part.
        for j in 0..5 {
            assert_eq!(profile.exponent(1, j), 1, "cubic exponent at column {j}");
            let expect = if j == 2 || j == 4 { 0 } else { 1 };
            assert_eq!(profile.exponent(0, j), expect, "quadratic at column {j}");
        }
        assert_eq!(profile.max_exponent(0), 1);
        // A generic probe reproduces the certified profile exactly.
        let certified = certified_profile(&a, &fac, &profile).unwrap();
        assert_eq!(certified.exponents, profile.exponents);
        assert!(certified.is_certified());
    }

    #[test]
    fn identity_matrix_profile_is_all_ones() {
        let a = QMatrix::identity(4);
        let fac = factor_rationals(&characteristic_polynomial(&a));
        let profile = pseudo_profile(&a, &fac, 3);
        for j in 0..4 {
            assert_eq!(profile.exponent(0, j), 1);
        }
    }

    #[test]
    fn block_diagonal_profile_separates_columns() {
        let f1 = UniPoly::from_i64(&[2, 0, 1]);
        let f2 = UniPoly::from_i64(&[-3, 1, 0, 1]);
        let a = crate::matrixgen::block_diagonal(&[
            companion(&f1).unwrap(),
            companion(&f2).unwrap(),
        ]);
        let fac = FactoredCharPoly::from_parts(vec![(f1, 1), (f2, 1)]);
        let profile = pseudo_profile(&a, &fac, 11);
        // Columns of the first block never see the second factor and
        // vice versa.
        for j in 0..2 {
            assert_eq!(profile.exponent(0, j), 1);
            assert_eq!(profile.exponent(1, j), 0);
        }
        for j in 2..5 {
            assert_eq!(profile.exponent(0, j), 0);
            assert_eq!(profile.exponent(1, j), 1);
        }
        // Verified against the exact annihilators.
        let certified = certified_profile(&a, &fac, &profile).unwrap();
        assert_eq!(certified.exponents, profile.exponents);
    }

    #[test]
    fn certification_corrects_a_rigged_profile() {
        // Upper Jordan 2x2 block: the second column is the generalized
        // direction, its true annihilator is (x-2)^2.
        let a = QMatrix::from_i64_rows(&[&[2, 1], &[0, 2]]);
        let fac = FactoredCharPoly::from_parts(vec![(UniPoly::linear(rat(2)), 2)]);
        let rigged = AnnihilatorProfile {
            exponents: vec![vec![1, 1]],
            probe_seed: 0,
            probe: QVector::from_i64(&[1, 1]),
            certified: false,
        };
        let pi = certify_unit_annihilator(&a, &fac, &rigged, 1).unwrap();
        assert_eq!(pi, UniPoly::linear(rat(2)).pow(2));
        // Column 1 is genuinely annihilated by (x-2): certification refuses.
        let a_diag = QMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let profile_ok = AnnihilatorProfile {
            exponents: vec![vec![1, 1]],
            probe_seed: 0,
            probe: QVector::from_i64(&[1, 1]),
            certified: false,
        };
        assert_eq!(
            certify_unit_annihilator(&a_diag, &fac, &profile_ok, 0),
            Err(AnnihilatorError::ResidualZero { column: 0 })
        );
    }

    #[test]
    fn adversarial_probe_is_corrected_by_certification() {
        // diag(1, 2) with probe (1, 0): the probe misses the second factor
        // entirely, certification recovers the exact annihilators.
        let a = QMatrix::from_i64_rows(&[&[1, 0], &[0, 2]]);
        let fac = FactoredCharPoly::from_parts(vec![
            (UniPoly::linear(rat(1)), 1),
            (UniPoly::linear(rat(2)), 1),
        ]);
        let adversarial = pseudo_profile_with_probe(&a, &fac, QVector::from_i64(&[1, 0]), 0);
        assert_eq!(adversarial.exponent(1, 1), 0); // underestimate
        let certified = certified_profile(&a, &fac, &adversarial).unwrap();
        for j in 0..2 {
            let pi = certified.unit_annihilator(&fac, j);
            assert_eq!(pi, min_annihilator_of_vector(&a, &QVector::unit(2, j)).unwrap());
        }
    }

    #[test]
    fn profile_is_deterministic_in_the_seed() {
        let a = example_matrix();
        let fac = example_factorization();
        assert_eq!(pseudo_profile(&a, &fac, 5), pseudo_profile(&a, &fac, 5));
        assert_eq!(
            pseudo_profile(&a, &fac, 5).probe(),
            &probe_vector(5, 5)
        );
    }

    #[test]
    fn probe_cost_is_linear_in_the_total_degree() {
        use crate::exact::{matvec_count, reset_matvec_count};
        let a = example_matrix();
        let fac = example_factorization();
        reset_matvec_count();
        let _ = pseudo_profile(&a, &fac, 9);
        // Per factor: deg(cofactor product) + l'_p * deg(f_p) row products.
        // Here both factors have l' = 1, so each costs deg(chi) = 5.
        assert_eq!(matvec_count(), 10);
    }
}
