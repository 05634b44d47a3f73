//! File formats and CSV serialization shared by the `eigenpoly` binary and
//! its tests.

pub mod formats;

use eigenpoly::bench::BenchRow;

/// CSV header for benchmark output.
pub const CSV_HEADER: &str =
    "n,deg_pi,m_p,strategy,wall_time_s,matvec_count,peak_coeff_bits,time_seed_pool_s,max_output_norm_bits";

/// Serializes benchmark rows as CSV, header included.
pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.6},{},{},{:.6},{}\n",
            r.n,
            r.deg_pi,
            r.m_p,
            r.strategy,
            r.wall_time_s,
            r.matvec_count,
            r.peak_coeff_bits,
            r.time_seed_pool_s,
            r.max_output_norm_bits
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_the_documented_columns() {
        let rows = vec![BenchRow {
            n: 16,
            deg_pi: 16,
            m_p: 1,
            strategy: "prototype",
            wall_time_s: 0.25,
            matvec_count: 128,
            peak_coeff_bits: 300,
            time_seed_pool_s: 0.125,
            max_output_norm_bits: 200,
        }];
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "16,16,1,prototype,0.250000,128,300,0.125000,200"
        );
    }
}
