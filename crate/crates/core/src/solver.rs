//! Eigenvector computation per irreducible factor of the characteristic
//! polynomial.
//!
//! For a factor `f` of degree `d` with multiplicity `m` whose exponent in
//! every unit annihilating polynomial is at most one (geometric equals
//! algebraic multiplicity), the eigenspace of all roots of `f` together has
//! dimension `d·m` and is spanned by `m` polynomial vectors
//! `phi_k(x) = psi_f(A, xE)·u_k` whose seeds `u_k` generate pairwise
//! independent Krylov spaces. Seeds come from cofactor images
//! `g_j(A)·e_j`; the strategies differ in where they pick seeds and how
//! much verification they carry:
//!
//! * certified — true annihilator exponents (certified beforehand), seeds
//!   from the reduced basis of the cofactor images;
//! * quick — probe-estimated exponents, raw cofactor images as seeds, each
//!   candidate verified by the fused final Horner step, failed seeds
//!   rotated out;
//! * reduced — probe-estimated exponents, seeds from the reduced basis
//!   (simpler output vectors), an aggregate pre-check up front, any failed
//!   verification aborts so the caller can reprobe.
//!
//! A factor whose exponent exceeds one somewhere is reported as
//! unsupported: those eigenvalues need generalized eigenvectors, which are
//! out of scope here.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::annihilator::{
    certified_profile, factor_context, pseudo_profile, pseudo_profile_with_probe,
    AnnihilatorError, AnnihilatorProfile, FactorContext,
};
use crate::charpoly::characteristic_polynomial;
use crate::exact::{rat, ColumnBasis, ExactError, QMatrix, QVector};
use crate::horner::{
    certifies_eigenvector, eval_poly_at_matrix, psi_coefficients, psi_polyvector, psi_tail,
    HornerError, PolyVector,
};
use crate::krylov::{krylov_sequence, AccumulatedSpace, KrylovError, KrylovSequence};
use crate::unipoly::{factor_rationals, FactorValidationError, FactoredCharPoly, UniPoly};

/// Default seed for all randomness when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed_ba5e;

/// Aggregate pre-check coefficients are drawn from `[1, COMBO_BOUND]`.
const COMBO_BOUND: u64 = 1 << 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// No column carries exponent one for this factor.
    EmptySeedPool { factor_index: usize },
    /// The quick strategy ran out of candidate seeds before collecting all
    /// eigenvectors; the profile was too optimistic. Reprobe and retry.
    SeedPoolExhausted { factor_index: usize },
    /// A pseudo annihilating polynomial was wrong (reduced strategy);
    /// reprobe and restart.
    ProfileWrong { factor_index: usize },
    /// A seed claimed annihilated by the factor was not. With certified
    /// exponents this indicates a broken factorization input.
    SeedNotAnnihilated { factor_index: usize },
    /// Probe retries exhausted without a verified result.
    RetriesExhausted { factor_index: usize, attempts: usize },
    MultiplicityNotOne { factor_index: usize },
    InvalidFactorization(FactorValidationError),
    Krylov(KrylovError),
    Horner(HornerError),
    Annihilator(AnnihilatorError),
    Exact(ExactError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::EmptySeedPool { factor_index } => {
                write!(f, "factor {factor_index}: no seed columns available")
            }
            SolveError::SeedPoolExhausted { factor_index } => {
                write!(f, "factor {factor_index}: seed pool exhausted before completion")
            }
            SolveError::ProfileWrong { factor_index } => write!(
                f,
                "factor {factor_index}: one or more pseudo annihilating polynomials are wrong"
            ),
            SolveError::SeedNotAnnihilated { factor_index } => {
                write!(f, "factor {factor_index}: seed not annihilated by its factor")
            }
            SolveError::RetriesExhausted {
                factor_index,
                attempts,
            } => write!(
                f,
                "factor {factor_index}: no verified result after {attempts} probe attempts"
            ),
            SolveError::MultiplicityNotOne { factor_index } => {
                write!(f, "factor {factor_index}: single-seed path needs multiplicity one")
            }
            SolveError::InvalidFactorization(e) => write!(f, "invalid factorization: {e}"),
            SolveError::Krylov(e) => write!(f, "{e}"),
            SolveError::Horner(e) => write!(f, "{e}"),
            SolveError::Annihilator(e) => write!(f, "{e}"),
            SolveError::Exact(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SolveError {}

impl From<KrylovError> for SolveError {
    fn from(e: KrylovError) -> Self {
        SolveError::Krylov(e)
    }
}

impl From<HornerError> for SolveError {
    fn from(e: HornerError) -> Self {
        SolveError::Horner(e)
    }
}

impl From<AnnihilatorError> for SolveError {
    fn from(e: AnnihilatorError) -> Self {
        SolveError::Annihilator(e)
    }
}

impl From<ExactError> for SolveError {
    fn from(e: ExactError) -> Self {
        SolveError::Exact(e)
    }
}

/// How a returned eigenvector set was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Prototype,
    TrueMap,
    PseudoQuick,
    PseudoReduced,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Prototype => "prototype",
            Strategy::TrueMap => "map",
            Strategy::PseudoQuick => "pseudo-quick",
            Strategy::PseudoReduced => "pseudo-reduced",
        }
    }
}

/// Requested solving strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrategyChoice {
    /// Reduced-basis strategy with certification fallback after retries.
    #[default]
    Auto,
    /// Certify the annihilator exponents first, then solve.
    TrueMap,
    PseudoQuick,
    PseudoReduced,
}

/// Where a seed came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedOrigin {
    /// Cofactor image of this unit-vector column.
    Column(usize),
    /// Position in the reduced basis of the seed span.
    BasisVector(usize),
}

/// The eigenvectors of one supported factor.
#[derive(Debug, Clone)]
pub struct EigenvectorSet {
    pub factor_index: usize,
    pub factor: UniPoly,
    pub multiplicity: usize,
    pub vectors: Vec<PolyVector>,
    pub seeds: Vec<QVector>,
    pub seed_origins: Vec<SeedOrigin>,
    pub strategy: Strategy,
}

/// Candidate seed vectors with their origin tags.
#[derive(Debug, Clone)]
pub struct SeedPool {
    entries: Vec<(SeedOrigin, QVector)>,
    kind: SeedPoolKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedPoolKind {
    /// Raw cofactor images `g_j(A)·e_j`.
    CofactorImages,
    /// Reduced column-echelon basis of the span of the images.
    ReducedBasis,
}

impl SeedPool {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn kind(&self) -> SeedPoolKind {
        self.kind
    }

    pub fn entries(&self) -> &[(SeedOrigin, QVector)] {
        &self.entries
    }

    fn take(&mut self, pos: usize) -> (SeedOrigin, QVector) {
        self.entries.remove(pos)
    }
}

/// Builds the raw seed pool for a factor: `g_j(A)·e_j` for each column with
/// exponent one. Every image is nonzero when the profile is sound.
pub fn cofactor_seed_pool(a: &QMatrix, ctx: &FactorContext) -> Result<SeedPool, SolveError> {
    let n = a.dim();
    let mut entries = Vec::with_capacity(ctx.j1.len());
    for &j in &ctx.j1 {
        let g = &ctx.cofactors[&j];
        let v = eval_poly_at_matrix(g, a, &QVector::unit(n, j))?;
        debug_assert!(!v.is_zero(), "cofactor image vanished for column {j}");
        entries.push((SeedOrigin::Column(j), v));
    }
    Ok(SeedPool {
        entries,
        kind: SeedPoolKind::CofactorImages,
    })
}

fn reduced_seed_pool(raw: &SeedPool) -> SeedPool {
    let vectors: Vec<QVector> = raw.entries.iter().map(|(_, v)| v.clone()).collect();
    let basis = crate::exact::column_reduce(&vectors);
    SeedPool {
        entries: basis
            .vectors()
            .iter()
            .enumerate()
            .map(|(i, v)| (SeedOrigin::BasisVector(i), v.clone()))
            .collect(),
        kind: SeedPoolKind::ReducedBasis,
    }
}

/// Picks the "simplest" pool entry outside the accumulated space:
/// fewest nonzero entries, then smallest coefficient bit length, then the
/// lowest origin index. Returns its position in the pool.
pub fn select_simplest(pool: &SeedPool, exclude: &AccumulatedSpace) -> Option<usize> {
    let mut best: Option<(usize, (usize, u64, usize))> = None;
    for (pos, (origin, v)) in pool.entries.iter().enumerate() {
        if exclude.contains(v) {
            continue;
        }
        let origin_index = match origin {
            SeedOrigin::Column(j) => *j,
            SeedOrigin::BasisVector(i) => *i,
        };
        let key = (v.nonzero_count(), v.max_bits(), origin_index);
        if best.as_ref().is_none_or(|(_, k)| key < *k) {
            best = Some((pos, key));
        }
    }
    best.map(|(pos, _)| pos)
}

/// Builds one eigenvector directly from a Krylov sequence, spending no
/// additional matrix–vector products: `c_{d-j} = sum_k a_{d-k}·K[j-k]`.
pub fn eigenvector_from_krylov(
    f: &UniPoly,
    seq: &KrylovSequence,
) -> Result<PolyVector, SolveError> {
    let d = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or(SolveError::Horner(HornerError::ConstantPolynomial))?;
    assert_eq!(seq.len(), d, "sequence length must match the factor degree");
    let mut coeffs = Vec::with_capacity(d);
    for j in 1..=d {
        // c_{d-j} in terms of K[1..=j].
        let mut c = QVector::zeros(seq.seed().dim());
        for i in 1..=j {
            let coeff = f.coeff(d - j + i);
            if !coeff.is_zero() {
                c.add_scaled_assign(&coeff, seq.at(i));
            }
        }
        coeffs.push(c);
    }
    Ok(PolyVector::from_coeffs_highest_first(coeffs))
}

/// Single-seed path for multiplicity one: picks the cheapest column (lowest
/// cofactor degree, then coefficient size), evaluates its seed and the
/// difference-quotient coefficients, and verifies the fused tail.
pub fn single_factor_eigenvector(
    a: &QMatrix,
    ctx: &FactorContext,
) -> Result<(PolyVector, QVector, usize), SolveError> {
    if ctx.multiplicity != 1 {
        return Err(SolveError::MultiplicityNotOne {
            factor_index: ctx.factor_index,
        });
    }
    let j = *ctx
        .j1
        .iter()
        .min_by_key(|&&j| {
            let g = &ctx.cofactors[&j];
            (g.degree().unwrap_or(0), g.max_bits(), j)
        })
        .ok_or(SolveError::EmptySeedPool {
            factor_index: ctx.factor_index,
        })?;
    let seed = eval_poly_at_matrix(&ctx.cofactors[&j], a, &QVector::unit(a.dim(), j))?;
    let phi = psi_polyvector(&ctx.factor, a, &seed)?;
    let tail = psi_tail(&ctx.factor, a, &seed, &phi)?;
    if !tail.is_zero() {
        return Err(SolveError::SeedNotAnnihilated {
            factor_index: ctx.factor_index,
        });
    }
    Ok((phi, seed, j))
}

/// Certified-exponent strategy: seeds from the reduced basis, no candidate
/// rotation needed. Any verification failure means the supplied exponents
/// were not the true ones.
pub fn solve_factor_certified(
    a: &QMatrix,
    ctx: &FactorContext,
) -> Result<EigenvectorSet, SolveError> {
    let raw = cofactor_seed_pool(a, ctx)?;
    let pool = reduced_seed_pool(&raw);
    collect_eigenvectors(a, ctx, pool, Strategy::TrueMap, FailureMode::Fatal)
}

/// Quick strategy: raw cofactor images as seeds, rotate away any candidate
/// whose fused verification fails.
pub fn solve_factor_quick(a: &QMatrix, ctx: &FactorContext) -> Result<EigenvectorSet, SolveError> {
    let pool = cofactor_seed_pool(a, ctx)?;
    collect_eigenvectors(a, ctx, pool, Strategy::PseudoQuick, FailureMode::Rotate)
}

/// Reduced strategy: aggregate pre-check on a random combination of the
/// seed images, then seeds from the reduced basis; any failure aborts.
pub fn solve_factor_reduced(
    a: &QMatrix,
    ctx: &FactorContext,
    combo_seed: u64,
) -> Result<EigenvectorSet, SolveError> {
    let raw = cofactor_seed_pool(a, ctx)?;
    if raw.is_empty() {
        return Err(SolveError::EmptySeedPool {
            factor_index: ctx.factor_index,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(combo_seed);
    let mut combo = QVector::zeros(a.dim());
    for (_, v) in raw.entries() {
        let c = rat(rng.random_range(1..=COMBO_BOUND) as i64);
        combo.add_scaled_assign(&c, v);
    }
    if !combo.is_zero() {
        let image = eval_poly_at_matrix(&ctx.factor, a, &combo)?;
        if !image.is_zero() {
            return Err(SolveError::ProfileWrong {
                factor_index: ctx.factor_index,
            });
        }
    }
    let pool = reduced_seed_pool(&raw);
    collect_eigenvectors(a, ctx, pool, Strategy::PseudoReduced, FailureMode::Abort)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FailureMode {
    /// Failed verification is impossible with true exponents.
    Fatal,
    /// Discard the candidate and pick the next one.
    Rotate,
    /// Abort the whole factor; the caller reprobes.
    Abort,
}

/// Shared eigenvector collection loop. The first `m - 1` eigenvectors come
/// from explicit Krylov sequences whose spaces accumulate into a direct
/// sum; the last one is evaluated directly by Horner, which needs no
/// further Krylov space.
fn collect_eigenvectors(
    a: &QMatrix,
    ctx: &FactorContext,
    mut pool: SeedPool,
    strategy: Strategy,
    mode: FailureMode,
) -> Result<EigenvectorSet, SolveError> {
    let factor_index = ctx.factor_index;
    let m = ctx.multiplicity;
    let d = ctx.degree;
    let mut space = AccumulatedSpace::new(a.dim());
    let mut vectors = Vec::with_capacity(m);
    let mut seeds = Vec::with_capacity(m);
    let mut origins = Vec::with_capacity(m);

    let exhausted = |mode: FailureMode| match mode {
        FailureMode::Rotate => SolveError::SeedPoolExhausted { factor_index },
        FailureMode::Abort => SolveError::ProfileWrong { factor_index },
        FailureMode::Fatal => SolveError::SeedPoolExhausted { factor_index },
    };
    let failed = |mode: FailureMode| match mode {
        FailureMode::Rotate => None,
        FailureMode::Abort => Some(SolveError::ProfileWrong { factor_index }),
        FailureMode::Fatal => Some(SolveError::SeedNotAnnihilated { factor_index }),
    };

    for _k in 1..m {
        loop {
            let pos = select_simplest(&pool, &space).ok_or_else(|| exhausted(mode))?;
            let (origin, seed) = pool.take(pos);
            let seq = krylov_sequence(a, &seed, d)?;
            let phi = eigenvector_from_krylov(&ctx.factor, &seq)?;
            let tail = psi_tail(&ctx.factor, a, &seed, &phi)?;
            if tail.is_zero() {
                space.admit(&seq)?;
                vectors.push(phi);
                seeds.push(seed);
                origins.push(origin);
                break;
            }
            if let Some(err) = failed(mode) {
                return Err(err);
            }
        }
    }
    // Final eigenvector: straight Horner evaluation, no Krylov space.
    loop {
        let pos = select_simplest(&pool, &space).ok_or_else(|| exhausted(mode))?;
        let (origin, seed) = pool.take(pos);
        let (phi, tail) = psi_coefficients(&ctx.factor, a, &seed)?;
        if tail.is_zero() {
            vectors.push(phi);
            seeds.push(seed);
            origins.push(origin);
            break;
        }
        if let Some(err) = failed(mode) {
            return Err(err);
        }
    }
    Ok(EigenvectorSet {
        factor_index,
        factor: ctx.factor.clone(),
        multiplicity: m,
        vectors,
        seeds,
        seed_origins: origins,
        strategy,
    })
}

/// Result for one factor of the characteristic polynomial.
#[derive(Debug, Clone)]
pub enum FactorOutcome {
    Solved(EigenvectorSet),
    /// The factor's exponent in some unit annihilating polynomial exceeds
    /// one: its eigenvalues need generalized eigenvectors.
    UnsupportedGeneralized {
        factor_index: usize,
        factor: UniPoly,
        multiplicity: usize,
        observed_exponent: usize,
        /// Whether the exponent came from certification or from a probe
        /// estimate (estimates never overshoot, so both are conclusive).
        certified: bool,
    },
}

impl FactorOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, FactorOutcome::Solved(_))
    }
}

/// Per-factor report including how many probe attempts were spent.
#[derive(Debug, Clone)]
pub struct FactorReport {
    pub outcome: FactorOutcome,
    pub probe_attempts: usize,
    pub probe_seed: u64,
}

/// Everything the solver produced for one matrix.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub char_poly: UniPoly,
    pub factorization: FactoredCharPoly,
    pub base_seed: u64,
    pub factors: Vec<FactorReport>,
}

impl SolveReport {
    pub fn all_supported(&self) -> bool {
        self.factors.iter().all(|f| f.outcome.is_solved())
    }

    pub fn eigenvector_sets(&self) -> impl Iterator<Item = &EigenvectorSet> {
        self.factors.iter().filter_map(|f| match &f.outcome {
            FactorOutcome::Solved(set) => Some(set),
            FactorOutcome::UnsupportedGeneralized { .. } => None,
        })
    }
}

/// Options for [`solve_all`].
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub strategy: StrategyChoice,
    pub seed: u64,
    /// Externally supplied factorization of the characteristic polynomial;
    /// validated structurally plus by annihilation spot checks, which keeps
    /// this path free of the full characteristic-polynomial computation.
    pub factorization: Option<FactoredCharPoly>,
    /// Fresh probes drawn after a verification failure before giving up.
    pub max_probe_retries: usize,
    /// Test hook: explicit probe rows used for attempts 0, 1, …; later
    /// attempts fall back to seeded probes.
    pub probe_override: Vec<QVector>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            strategy: StrategyChoice::Auto,
            seed: DEFAULT_SEED,
            factorization: None,
            max_probe_retries: 3,
            probe_override: Vec::new(),
        }
    }
}

/// Full pipeline: characteristic polynomial (or supplied factorization),
/// probe profile, then per-factor eigenvectors with retry on verification
/// failures. Unsupported factors are reported, not errors.
pub fn solve_all(a: &QMatrix, options: &SolveOptions) -> Result<SolveReport, SolveError> {
    let n = a.dim();
    let (char_poly, fac) = match &options.factorization {
        Some(fac) => {
            fac.validate_structure(n)
                .map_err(SolveError::InvalidFactorization)?;
            let expanded = fac.expand();
            // Annihilation spot check: the expanded product must annihilate
            // deterministic pseudo-random vectors, as the true
            // characteristic polynomial does.
            for t in 0..2u64 {
                let v = crate::annihilator::probe_vector(n, options.seed ^ (0xc0ffee + t));
                let image = eval_poly_at_matrix(&expanded, a, &v)?;
                if !image.is_zero() {
                    return Err(SolveError::InvalidFactorization(
                        FactorValidationError::ProductMismatch,
                    ));
                }
            }
            (expanded, fac.clone())
        }
        None => {
            let chi = characteristic_polynomial(a);
            let fac = factor_rationals(&chi);
            debug_assert_eq!(fac.expand(), chi);
            (chi, fac)
        }
    };

    let mut profiles: HashMap<usize, AnnihilatorProfile> = HashMap::new();
    let mut certified: HashMap<usize, AnnihilatorProfile> = HashMap::new();
    let mut factors = Vec::with_capacity(fac.len());
    for p in 0..fac.len() {
        let report = solve_factor_with_retries(
            a,
            &fac,
            p,
            options,
            &mut profiles,
            &mut certified,
        )?;
        factors.push(report);
    }
    Ok(SolveReport {
        char_poly,
        factorization: fac,
        base_seed: options.seed,
        factors,
    })
}

fn profile_for<'a>(
    a: &QMatrix,
    fac: &FactoredCharPoly,
    options: &SolveOptions,
    attempt: usize,
    profiles: &'a mut HashMap<usize, AnnihilatorProfile>,
) -> &'a AnnihilatorProfile {
    profiles.entry(attempt).or_insert_with(|| {
        let seed = options.seed.wrapping_add(attempt as u64);
        match options.probe_override.get(attempt) {
            Some(probe) => pseudo_profile_with_probe(a, fac, probe.clone(), seed),
            None => pseudo_profile(a, fac, seed),
        }
    })
}

fn certified_for<'a>(
    a: &QMatrix,
    fac: &FactoredCharPoly,
    base: &AnnihilatorProfile,
    attempt: usize,
    certified: &'a mut HashMap<usize, AnnihilatorProfile>,
) -> Result<&'a AnnihilatorProfile, SolveError> {
    if !certified.contains_key(&attempt) {
        let profile = certified_profile(a, fac, base)?;
        certified.insert(attempt, profile);
    }
    Ok(&certified[&attempt])
}

fn solve_factor_with_retries(
    a: &QMatrix,
    fac: &FactoredCharPoly,
    p: usize,
    options: &SolveOptions,
    profiles: &mut HashMap<usize, AnnihilatorProfile>,
    certified: &mut HashMap<usize, AnnihilatorProfile>,
) -> Result<FactorReport, SolveError> {
    let max_attempts = options.max_probe_retries + 1;
    let mut attempt = 0usize;
    loop {
        let profile = profile_for(a, fac, options, attempt, profiles).clone();
        let probe_seed = profile.probe_seed();
        let observed = profile.max_exponent(p);
        if observed >= 2 {
            // Estimates never overshoot: the true exponent is at least two.
            return Ok(FactorReport {
                outcome: FactorOutcome::UnsupportedGeneralized {
                    factor_index: p,
                    factor: fac.factor(p).clone(),
                    multiplicity: fac.multiplicity(p),
                    observed_exponent: observed,
                    certified: false,
                },
                probe_attempts: attempt + 1,
                probe_seed,
            });
        }

        let result = if observed == 0 {
            // Degenerate probe: the factor divides the characteristic
            // polynomial, so some column must carry it.
            Err(SolveError::EmptySeedPool { factor_index: p })
        } else {
            let ctx = factor_context(fac, &profile, p);
            match options.strategy {
                StrategyChoice::TrueMap => {
                    return solve_certified_path(
                        a, fac, p, &profile, attempt, certified, probe_seed,
                    );
                }
                StrategyChoice::PseudoQuick => solve_factor_quick(a, &ctx),
                StrategyChoice::PseudoReduced | StrategyChoice::Auto => {
                    solve_factor_reduced(a, &ctx, options.seed.wrapping_add(attempt as u64))
                }
            }
        };

        match result {
            Ok(set) => {
                return Ok(FactorReport {
                    outcome: FactorOutcome::Solved(set),
                    probe_attempts: attempt + 1,
                    probe_seed,
                });
            }
            Err(
                SolveError::SeedPoolExhausted { .. }
                | SolveError::ProfileWrong { .. }
                | SolveError::EmptySeedPool { .. },
            ) if attempt + 1 < max_attempts => {
                attempt += 1;
            }
            Err(
                err @ (SolveError::SeedPoolExhausted { .. }
                | SolveError::ProfileWrong { .. }
                | SolveError::EmptySeedPool { .. }),
            ) => {
                if options.strategy == StrategyChoice::Auto {
                    // Fall back to certified exponents.
                    return solve_certified_path(
                        a, fac, p, &profile, attempt, certified, probe_seed,
                    );
                }
                return Err(err);
            }
            Err(err) => return Err(err),
        }
    }
}

fn solve_certified_path(
    a: &QMatrix,
    fac: &FactoredCharPoly,
    p: usize,
    base: &AnnihilatorProfile,
    attempt: usize,
    certified: &mut HashMap<usize, AnnihilatorProfile>,
    probe_seed: u64,
) -> Result<FactorReport, SolveError> {
    let profile = certified_for(a, fac, base, attempt, certified)?.clone();
    let observed = profile.max_exponent(p);
    if observed >= 2 {
        return Ok(FactorReport {
            outcome: FactorOutcome::UnsupportedGeneralized {
                factor_index: p,
                factor: fac.factor(p).clone(),
                multiplicity: fac.multiplicity(p),
                observed_exponent: observed,
                certified: true,
            },
            probe_attempts: attempt + 1,
            probe_seed,
        });
    }
    let ctx = factor_context(fac, &profile, p);
    let set = solve_factor_certified(a, &ctx)?;
    Ok(FactorReport {
        outcome: FactorOutcome::Solved(set),
        probe_attempts: attempt + 1,
        probe_seed,
    })
}

/// Recomputes every eigenvector of a set independently from its seed and
/// checks the exact certificate; used before reporting results.
pub fn verify_eigenvector_set(a: &QMatrix, set: &EigenvectorSet) -> Result<bool, SolveError> {
    if set.vectors.len() != set.multiplicity {
        return Ok(false);
    }
    for (phi, seed) in set.vectors.iter().zip(&set.seeds) {
        let (again, tail) = psi_coefficients(&set.factor, a, seed)?;
        if !tail.is_zero() || &again != phi {
            return Ok(false);
        }
        if !certifies_eigenvector(a, &set.factor, seed, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical basis of the union of the Krylov spaces of a set's seeds.
/// Strategies agree on this span whenever their profiles were sound.
pub fn krylov_span_union(a: &QMatrix, set: &EigenvectorSet) -> Result<ColumnBasis, SolveError> {
    let d = set.factor.degree().unwrap_or(1);
    let mut all = Vec::new();
    for seed in &set.seeds {
        let seq = krylov_sequence(a, seed, d)?;
        all.extend(seq.vectors().to_vec());
    }
    Ok(crate::exact::column_reduce(&all))
}
