//! Measurement harness: deterministic instance families and timed runs.
//!
//! Rows carry wall time plus the matrix–vector product count; the counter is
//! the portable cost signal, wall time depends on hardware. Each run is
//! handed the factorization and the probe profile as inputs (the pipeline
//! treats both as given); the timed region covers seed construction, the
//! difference-quotient evaluations and verification. Seed-pool construction
//! time is also reported on its own.

use std::time::Instant;

use crate::annihilator::{factor_context, pseudo_profile};
use crate::exact::{matvec_count, reset_matvec_count, QMatrix, QVector};
use crate::horner::{eval_poly_at_matrix, psi_polyvector, psi_tail};
use crate::matrixgen::{multiplicity_instance, scaling_instance, GenError};
use crate::solver::{
    cofactor_seed_pool, solve_factor_quick, solve_factor_reduced, SolveError, Strategy,
};

/// One benchmark measurement.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    /// Generic degree of the unit annihilating polynomials involved.
    pub deg_pi: usize,
    pub m_p: usize,
    pub strategy: &'static str,
    pub wall_time_s: f64,
    pub matvec_count: u64,
    /// Largest coefficient bit length seen across seeds and outputs.
    pub peak_coeff_bits: u64,
    pub time_seed_pool_s: f64,
    /// Largest coefficient bit length over the output eigenvectors only.
    pub max_output_norm_bits: u64,
}

#[derive(Debug)]
pub enum BenchError {
    Gen(GenError),
    Solve(SolveError),
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::Gen(e) => write!(f, "{e}"),
            BenchError::Solve(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BenchError {}

impl From<GenError> for BenchError {
    fn from(e: GenError) -> Self {
        BenchError::Gen(e)
    }
}

impl From<SolveError> for BenchError {
    fn from(e: SolveError) -> Self {
        BenchError::Solve(e)
    }
}

/// Times the single-seed path over every factor of a scaling instance:
/// per factor, the cheapest seed column is evaluated by Horner, the
/// difference-quotient coefficients follow, and the fused tail verifies.
fn prototype_row(
    a: &QMatrix,
    truth: &crate::matrixgen::GroundTruth,
    deg_pi: usize,
    seed: u64,
) -> Result<BenchRow, BenchError> {
    let fac = &truth.factorization;
    'attempt: for attempt in 0..3u64 {
        let profile = pseudo_profile(a, fac, seed.wrapping_add(attempt));
        reset_matvec_count();
        let started = Instant::now();
        let mut seed_pool_s = 0.0;
        let mut peak_bits = 0u64;
        let mut out_bits = 0u64;
        for p in 0..fac.len() {
            let ctx = factor_context(fac, &profile, p);
            let Some(&j) = ctx.j1.iter().min_by_key(|&&j| {
                let g = &ctx.cofactors[&j];
                (g.degree().unwrap_or(0), g.max_bits(), j)
            }) else {
                continue 'attempt;
            };
            let pool_started = Instant::now();
            let seed_vec =
                eval_poly_at_matrix(&ctx.cofactors[&j], a, &QVector::unit(a.dim(), j))
                    .map_err(SolveError::from)?;
            seed_pool_s += pool_started.elapsed().as_secs_f64();
            let phi = psi_polyvector(&ctx.factor, a, &seed_vec).map_err(SolveError::from)?;
            let tail = psi_tail(&ctx.factor, a, &seed_vec, &phi).map_err(SolveError::from)?;
            if !tail.is_zero() {
                continue 'attempt;
            }
            peak_bits = peak_bits.max(seed_vec.max_bits()).max(phi.max_bits());
            out_bits = out_bits.max(phi.max_bits());
        }
        return Ok(BenchRow {
            n: a.dim(),
            deg_pi,
            m_p: 1,
            strategy: Strategy::Prototype.name(),
            wall_time_s: started.elapsed().as_secs_f64(),
            matvec_count: matvec_count(),
            peak_coeff_bits: peak_bits,
            time_seed_pool_s: seed_pool_s,
            max_output_norm_bits: out_bits,
        });
    }
    Err(BenchError::Solve(SolveError::RetriesExhausted {
        factor_index: 0,
        attempts: 3,
    }))
}

/// Dimension scaling suite: eight fully mixed blocks of degree `n/8`, one
/// row per dimension. Every unit annihilating polynomial has degree `n`.
pub fn run_dimscale(sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let (a, truth) = scaling_instance(n, 8, seed.wrapping_add(n as u64))?;
        rows.push(prototype_row(&a, &truth, n, seed.wrapping_add(n as u64))?);
    }
    Ok(rows)
}

/// Degree scaling suite at fixed dimension: the block grouping varies, so
/// the unit annihilating polynomials have degree `deg` while the matrix and
/// its characteristic polynomial keep the same shape.
pub fn run_degscale(dim: usize, degrees: &[usize], seed: u64) -> Result<Vec<BenchRow>, BenchError> {
    let block_degree = dim / 8;
    let mut rows = Vec::with_capacity(degrees.len());
    for &deg in degrees {
        assert!(
            deg % block_degree == 0 && (deg / block_degree) <= 8 && 8 % (deg / block_degree) == 0,
            "target degree must group the eight blocks evenly"
        );
        let blocks_per_group = deg / block_degree;
        let (a, truth) = scaling_instance(dim, blocks_per_group, seed.wrapping_add(deg as u64))?;
        rows.push(prototype_row(&a, &truth, deg, seed.wrapping_add(deg as u64))?);
    }
    Ok(rows)
}

/// Multiplicity suite configurations: (multiplicity, cofactor degree,
/// cofactor coefficient bits). The repeated factor is a fixed quadratic.
pub const MULTIPLICITY_CONFIGS: [(usize, usize, u32); 21] = [
    (2, 6, 16),
    (2, 6, 64),
    (2, 8, 128),
    (2, 9, 256),
    (2, 8, 32),
    (2, 6, 2048),
    (2, 9, 96),
    (3, 6, 16),
    (3, 6, 64),
    (3, 8, 128),
    (3, 9, 256),
    (3, 8, 32),
    (3, 6, 2048),
    (3, 9, 96),
    (4, 6, 16),
    (4, 6, 64),
    (4, 8, 128),
    (4, 9, 256),
    (4, 8, 32),
    (4, 6, 2048),
    (4, 9, 96),
];

const MULTIPLICITY_FACTOR_DEGREE: usize = 2;

/// Multiplicity suite: per configuration, the same instance is solved with
/// the quick strategy (raw cofactor-image seeds) and the reduced strategy
/// (reduced-basis seeds); two rows per configuration. The wide cofactor
/// makes the raw seeds wide while the reduced basis stays narrow.
pub fn run_multiplicity(indices: &[usize], seed: u64) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    for &idx in indices {
        let (m, cofactor_degree, bits) = MULTIPLICITY_CONFIGS[idx % MULTIPLICITY_CONFIGS.len()];
        let instance_seed = seed.wrapping_add(idx as u64);
        let (a, truth) = multiplicity_instance(
            m,
            MULTIPLICITY_FACTOR_DEGREE,
            cofactor_degree,
            bits,
            instance_seed,
        )?;
        let fac = &truth.factorization;
        let p = (0..fac.len())
            .find(|&p| fac.multiplicity(p) == m)
            .expect("repeated factor present");
        let deg_pi = truth.expected_unit_annihilator_degree(0);
        'attempt: for attempt in 0..3u64 {
            let profile = pseudo_profile(&a, fac, instance_seed.wrapping_add(attempt));
            let ctx = factor_context(fac, &profile, p);
            let mut pair = Vec::with_capacity(2);
            for strategy in [Strategy::PseudoQuick, Strategy::PseudoReduced] {
                let pool_started = Instant::now();
                let pool = cofactor_seed_pool(&a, &ctx)?;
                let time_seed_pool_s = pool_started.elapsed().as_secs_f64();
                let pool_bits = pool
                    .entries()
                    .iter()
                    .map(|(_, v)| v.max_bits())
                    .max()
                    .unwrap_or(0);
                reset_matvec_count();
                let started = Instant::now();
                let result = match strategy {
                    Strategy::PseudoQuick => solve_factor_quick(&a, &ctx),
                    _ => solve_factor_reduced(&a, &ctx, instance_seed.wrapping_add(attempt)),
                };
                let set = match result {
                    Ok(set) => set,
                    Err(SolveError::SeedPoolExhausted { .. })
                    | Err(SolveError::ProfileWrong { .. }) => continue 'attempt,
                    Err(e) => return Err(e.into()),
                };
                let wall_time_s = started.elapsed().as_secs_f64();
                let out_bits = set
                    .vectors
                    .iter()
                    .map(|phi| phi.max_bits())
                    .max()
                    .unwrap_or(0);
                pair.push(BenchRow {
                    n: a.dim(),
                    deg_pi,
                    m_p: m,
                    strategy: strategy.name(),
                    wall_time_s,
                    matvec_count: matvec_count(),
                    peak_coeff_bits: pool_bits.max(out_bits),
                    time_seed_pool_s,
                    max_output_norm_bits: out_bits,
                });
            }
            rows.extend(pair);
            break 'attempt;
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Expected product count for the single-seed path: per factor, the
    /// chosen column's cofactor degree plus the factor degree (coefficients
    /// plus the fused tail). Recomputed from the profile the row used.
    fn expected_prototype_count(
        a: &QMatrix,
        truth: &crate::matrixgen::GroundTruth,
        probe_seed: u64,
    ) -> u64 {
        let fac = &truth.factorization;
        let profile = pseudo_profile(a, fac, probe_seed);
        let mut total = 0u64;
        for p in 0..fac.len() {
            let ctx = factor_context(fac, &profile, p);
            let g = ctx
                .j1
                .iter()
                .map(|j| &ctx.cofactors[j])
                .min_by_key(|g| (g.degree().unwrap_or(0), g.max_bits()))
                .expect("nonempty seed set");
            total += (g.degree().unwrap_or(0) + ctx.degree) as u64;
        }
        total
    }

    #[test]
    fn dimscale_runs_and_counts_products() {
        let rows = run_dimscale(&[8, 16], 1).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].n == 8 && rows[1].n == 16);
        for (&n, row) in [8usize, 16].iter().zip(&rows) {
            let (a, truth) = scaling_instance(n, 8, 1u64.wrapping_add(n as u64)).unwrap();
            let expect = expected_prototype_count(&a, &truth, 1u64.wrapping_add(n as u64));
            assert_eq!(row.matvec_count, expect, "n = {n}");
        }
    }

    #[test]
    fn degscale_grouping_changes_counts_not_dimension() {
        let rows = run_degscale(16, &[2, 8, 16], 3).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.n == 16));
        for (&deg, row) in [2usize, 8, 16].iter().zip(&rows) {
            let (a, truth) =
                scaling_instance(16, deg / 2, 3u64.wrapping_add(deg as u64)).unwrap();
            let expect = expected_prototype_count(&a, &truth, 3u64.wrapping_add(deg as u64));
            assert_eq!(row.matvec_count, expect, "deg = {deg}");
        }
        // Finer grouping means cheaper cofactors.
        assert!(rows[0].matvec_count < rows[2].matvec_count);
    }

    #[test]
    fn multiplicity_rows_come_in_strategy_pairs() {
        let rows = run_multiplicity(&[0], 5).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].strategy, "pseudo-quick");
        assert_eq!(rows[1].strategy, "pseudo-reduced");
        assert_eq!(rows[0].m_p, 2);
        assert_eq!(rows[0].n, rows[1].n);
        // Reduced-basis outputs are never wider than raw-seed outputs here.
        assert!(rows[1].max_output_norm_bits <= rows[0].max_output_norm_bits);
    }
}
