//! Reproducible test matrices: block-diagonal companion matrices densified
//! by unimodular similarity transforms.
//!
//! The characteristic polynomial of the result is the product of the block
//! polynomials, exactly. Transforms are products of elementary row
//! operations with bounded integer multipliers, applied together with their
//! inverses, so the result stays integral and the spectrum untouched.
//! Blocks can be partitioned into groups with transforms confined to each
//! group; that controls the degrees of the unit annihilating polynomials
//! (columns only ever mix within their group).

use std::fmt;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, QMatrix, Rational};
use crate::unipoly::{FactoredCharPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    NonMonicBlock { index: usize },
    ConstantBlock { index: usize },
    EmptyBlockList,
    GroupSizeMismatch { blocks: usize, grouped: usize },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::NonMonicBlock { index } => write!(f, "block {index} is not monic"),
            GenError::ConstantBlock { index } => write!(f, "block {index} is constant"),
            GenError::EmptyBlockList => write!(f, "no blocks given"),
            GenError::GroupSizeMismatch { blocks, grouped } => {
                write!(f, "group sizes cover {grouped} blocks, have {blocks}")
            }
        }
    }
}

impl std::error::Error for GenError {}

/// Companion matrix of a monic polynomial: ones on the subdiagonal, the
/// negated coefficients in the last column.
pub fn companion(f: &UniPoly) -> Result<QMatrix, GenError> {
    if !f.is_monic() {
        return Err(GenError::NonMonicBlock { index: 0 });
    }
    let d = f.degree().unwrap();
    if d == 0 {
        return Err(GenError::ConstantBlock { index: 0 });
    }
    let mut m = QMatrix::zeros(d);
    for i in 1..d {
        m.set(i, i - 1, rat(1));
    }
    for i in 0..d {
        m.set(i, d - 1, -f.coeff(i));
    }
    Ok(m)
}

/// Assembles a block-diagonal matrix.
pub fn block_diagonal(blocks: &[QMatrix]) -> QMatrix {
    let n: usize = blocks.iter().map(|b| b.dim()).sum();
    let mut m = QMatrix::zeros(n);
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let v = b.get(i, j);
                if !v.is_zero() {
                    m.set(offset + i, offset + j, v.clone());
                }
            }
        }
        offset += b.dim();
    }
    m
}

/// Construction recipe for one test matrix.
#[derive(Debug, Clone)]
pub struct GenSpec {
    /// Monic nonconstant blocks; repeats raise factor multiplicities.
    pub block_polys: Vec<UniPoly>,
    /// Number of elementary similarity operations to apply.
    pub transform_rounds: usize,
    /// Multipliers are drawn from `[-entry_bound, entry_bound] \ {0}`.
    pub entry_bound: i64,
    pub seed: u64,
    /// Optional partition of the blocks (counts, in order); transforms stay
    /// within each group. `None` means one group containing everything.
    pub group_sizes: Option<Vec<usize>>,
}

impl GenSpec {
    pub fn dense(block_polys: Vec<UniPoly>, seed: u64) -> Self {
        let n: usize = block_polys
            .iter()
            .map(|f| f.degree().unwrap_or(0))
            .sum();
        GenSpec {
            block_polys,
            transform_rounds: 4 * n,
            entry_bound: 2,
            seed,
            group_sizes: None,
        }
    }
}

/// What the generator knows about its output, for oracle checks.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    /// Block polynomials in layout order.
    pub blocks: Vec<UniPoly>,
    /// Irreducible factors with multiplicities (assumes irreducible blocks).
    pub factorization: FactoredCharPoly,
    /// Expanded characteristic polynomial.
    pub char_poly: UniPoly,
    /// Column ranges `(start, length)` of each group after assembly.
    pub group_column_ranges: Vec<(usize, usize)>,
    /// For each group, the indices into `factorization` of its factors.
    pub group_factor_indices: Vec<Vec<usize>>,
    pub seed: u64,
    pub transform_rounds: usize,
    pub entry_bound: i64,
}

impl GroundTruth {
    /// Expected degree of the unit annihilating polynomial of column `j`
    /// under generic mixing within its group.
    pub fn expected_unit_annihilator_degree(&self, j: usize) -> usize {
        let g = self
            .group_column_ranges
            .iter()
            .position(|&(start, len)| j >= start && j < start + len)
            .expect("column inside some group");
        self.group_factor_indices[g]
            .iter()
            .map(|&p| self.factorization.factor(p).degree().unwrap_or(0))
            .sum()
    }
}

/// Builds the matrix for a spec together with its ground truth.
pub fn generate(spec: &GenSpec) -> Result<(QMatrix, GroundTruth), GenError> {
    if spec.block_polys.is_empty() {
        return Err(GenError::EmptyBlockList);
    }
    for (index, f) in spec.block_polys.iter().enumerate() {
        if !f.is_monic() {
            return Err(GenError::NonMonicBlock { index });
        }
        if f.degree() == Some(0) {
            return Err(GenError::ConstantBlock { index });
        }
    }
    let group_sizes = match &spec.group_sizes {
        Some(sizes) => {
            if sizes.iter().sum::<usize>() != spec.block_polys.len() {
                return Err(GenError::GroupSizeMismatch {
                    blocks: spec.block_polys.len(),
                    grouped: sizes.iter().sum(),
                });
            }
            sizes.clone()
        }
        None => vec![spec.block_polys.len()],
    };

    let blocks: Vec<QMatrix> = spec
        .block_polys
        .iter()
        .map(|f| companion(f).expect("validated above"))
        .collect();
    let mut a = block_diagonal(&blocks);

    // Column ranges per group.
    let mut group_column_ranges = Vec::with_capacity(group_sizes.len());
    let mut block_idx = 0;
    let mut col = 0;
    for &count in &group_sizes {
        let start = col;
        for _ in 0..count {
            col += blocks[block_idx].dim();
            block_idx += 1;
        }
        group_column_ranges.push((start, col - start));
    }

    // Similarity by elementary operations: row_i += c * row_j paired with
    // col_j -= c * col_i keeps A similar to the block diagonal and integral.
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let eligible: Vec<usize> = group_column_ranges
        .iter()
        .enumerate()
        .filter(|(_, &(_, len))| len >= 2)
        .map(|(g, _)| g)
        .collect();
    if !eligible.is_empty() {
        for _ in 0..spec.transform_rounds {
            let g = eligible[rng.random_range(0..eligible.len())];
            let (start, len) = group_column_ranges[g];
            let i = start + rng.random_range(0..len);
            let j = loop {
                let j = start + rng.random_range(0..len);
                if j != i {
                    break j;
                }
            };
            let c = loop {
                let c = rng.random_range(-spec.entry_bound..=spec.entry_bound);
                if c != 0 {
                    break rat(c);
                }
            };
            apply_elementary(&mut a, i, j, &c);
        }
    }

    let factorization = FactoredCharPoly::from_parts(
        spec.block_polys.iter().map(|f| (f.clone(), 1)).collect(),
    );
    let char_poly = factorization.expand();
    let group_factor_indices = group_sizes
        .iter()
        .scan(0usize, |next, &count| {
            let range = *next..*next + count;
            *next += count;
            Some(range)
        })
        .map(|range| {
            let mut indices: Vec<usize> = range
                .map(|b| {
                    factorization
                        .factors()
                        .iter()
                        .position(|(f, _)| f == &spec.block_polys[b])
                        .expect("block present in factorization")
                })
                .collect();
            indices.sort_unstable();
            indices.dedup();
            indices
        })
        .collect();

    Ok((
        a,
        GroundTruth {
            blocks: spec.block_polys.clone(),
            factorization,
            char_poly,
            group_column_ranges,
            group_factor_indices,
            seed: spec.seed,
            transform_rounds: spec.transform_rounds,
            entry_bound: spec.entry_bound,
        },
    ))
}

/// `row_i += c·row_j` and `col_j -= c·col_i` (conjugation by the elementary
/// matrix `E + c·e_i e_j^T`).
fn apply_elementary(a: &mut QMatrix, i: usize, j: usize, c: &Rational) {
    let n = a.dim();
    for k in 0..n {
        let add = a.get(j, k) * c;
        if !add.is_zero() {
            let v = a.get(i, k) + add;
            a.set(i, k, v);
        }
    }
    for k in 0..n {
        let sub = a.get(k, i) * c;
        if !sub.is_zero() {
            let v = a.get(k, j) - sub;
            a.set(k, j, v);
        }
    }
}

// --- deterministic instance families for the benchmark harness ----------

/// Monic irreducible polynomial `x^d - prime`, Eisenstein at the prime.
pub fn eisenstein_block(degree: usize, prime: i64) -> UniPoly {
    let mut coeffs = vec![rat(0); degree + 1];
    coeffs[0] = rat(-prime);
    coeffs[degree] = rat(1);
    UniPoly::from_coeffs(coeffs)
}

/// Monic irreducible polynomial of the given degree with wide coefficients:
/// all middle coefficients even with `bits` random bits, constant ≡ 2 mod 4.
/// Irreducible by the Eisenstein criterion at 2.
pub fn wide_eisenstein_block(degree: usize, bits: u32, seed: u64) -> UniPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![rat(0); degree + 1];
    for c in coeffs.iter_mut().take(degree).skip(1) {
        let mut x = num_bigint::BigInt::from(0);
        for _ in 0..bits.div_ceil(32) {
            x = (x << 32) + rng.random_range(0u64..1 << 32);
        }
        if rng.random_bool(0.5) {
            x = -x;
        }
        *c = Rational::from_integer(x * 2);
    }
    let odd = 2 * rng.random_range(0i64..1 << 20) + 1;
    coeffs[0] = rat(2 * odd);
    coeffs[degree] = rat(1);
    UniPoly::from_coeffs(coeffs)
}

const BLOCK_PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Dimension-scaling instance: eight distinct irreducible blocks of equal
/// degree `n/8`, optionally grouped `blocks_per_group` at a time so every
/// column's unit annihilating polynomial has degree `16·blocks_per_group`
/// (for n = 128) rather than the full `n`.
pub fn scaling_instance(
    n: usize,
    blocks_per_group: usize,
    seed: u64,
) -> Result<(QMatrix, GroundTruth), GenError> {
    assert!(n % 8 == 0 && n >= 8, "dimension must be a positive multiple of 8");
    assert!(8 % blocks_per_group == 0, "groups must tile the eight blocks");
    let d = n / 8;
    let block_polys: Vec<UniPoly> = BLOCK_PRIMES
        .iter()
        .map(|&p| eisenstein_block(d, p))
        .collect();
    let spec = GenSpec {
        block_polys,
        transform_rounds: 2 * n,
        entry_bound: 1,
        seed,
        group_sizes: Some(vec![blocks_per_group; 8 / blocks_per_group]),
    };
    generate(&spec)
}

/// Multiplicity instance: one group mixing `multiplicity` copies of a small
/// irreducible factor with one wide cofactor block. The raw seed vectors
/// inherit the cofactor's coefficient width while the reduced basis of
/// their span stays narrow.
pub fn multiplicity_instance(
    multiplicity: usize,
    factor_degree: usize,
    cofactor_degree: usize,
    cofactor_bits: u32,
    seed: u64,
) -> Result<(QMatrix, GroundTruth), GenError> {
    let f = eisenstein_block(factor_degree, 2);
    let g = wide_eisenstein_block(cofactor_degree, cofactor_bits, seed ^ 0x5eed);
    let mut block_polys = vec![f; multiplicity];
    block_polys.push(g);
    let n = multiplicity * factor_degree + cofactor_degree;
    let spec = GenSpec {
        block_polys,
        transform_rounds: 4 * n,
        entry_bound: 1,
        seed,
        group_sizes: None,
    };
    generate(&spec)
}
