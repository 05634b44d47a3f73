//! Characteristic polynomial by the Berkowitz method.
//!
//! Division free, so integer matrices stay in integer arithmetic throughout.
//! The solver treats the characteristic polynomial and its factorization as
//! inputs; this module supplies them when not provided externally.

use num_traits::{One, Zero};

use crate::exact::{QMatrix, Rational};
use crate::unipoly::UniPoly;

/// Monic characteristic polynomial `det(x·E - A)` of a square matrix.
pub fn characteristic_polynomial(a: &QMatrix) -> UniPoly {
    let n = a.dim();
    if n == 0 {
        return UniPoly::one();
    }
    // Coefficient vector of the current leading principal submatrix,
    // highest power first.
    let mut coeffs: Vec<Rational> = vec![Rational::one(), -a.get(0, 0).clone()];
    for r in 1..n {
        // Toeplitz column for the (r+1)-th principal submatrix:
        // t = [1, -a, -R·S, -R·M·S, ..., -R·M^(r-1)·S] with M the r x r
        // principal block, R the new row, S the new column.
        let mut t: Vec<Rational> = Vec::with_capacity(r + 2);
        t.push(Rational::one());
        t.push(-a.get(r, r).clone());
        let mut w: Vec<Rational> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for k in 0..r {
            let mut dot = Rational::zero();
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() {
                    let arj = a.get(r, j);
                    if !arj.is_zero() {
                        dot += arj * wj;
                    }
                }
            }
            t.push(-dot);
            if k + 1 < r {
                let mut next = vec![Rational::zero(); r];
                for (i, slot) in next.iter_mut().enumerate() {
                    for (j, wj) in w.iter().enumerate() {
                        if !wj.is_zero() {
                            let aij = a.get(i, j);
                            if !aij.is_zero() {
                                *slot += aij * wj;
                            }
                        }
                    }
                }
                w = next;
            }
        }
        // Convolve with the previous coefficient vector.
        let mut next = vec![Rational::zero(); r + 2];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, tk) in t.iter().enumerate() {
                if i + k < next.len() && !tk.is_zero() {
                    next[i + k] += c * tk;
                }
            }
        }
        coeffs = next;
    }
    coeffs.reverse();
    UniPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, QVector};
    use crate::horner::eval_poly_at_matrix;
    use crate::testutil::{example_factor_cubic, example_factor_quadratic, example_matrix};
    use crate::unipoly::UniPoly;

    /// Symbolic determinant of x·E - A by cofactor expansion; independent of
    /// the Berkowitz path, usable for small n only.
    fn charpoly_by_determinant(a: &QMatrix) -> UniPoly {
        let n = a.dim();
        let rows: Vec<Vec<UniPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut p = UniPoly::constant(-a.get(i, j).clone());
                        if i == j {
                            p = p.add(&UniPoly::monomial(1));
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        poly_det(&rows)
    }

    fn poly_det(rows: &[Vec<UniPoly>]) -> UniPoly {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = UniPoly::zero();
        for j in 0..n {
            if rows[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<UniPoly>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = rows[0][j].mul(&poly_det(&minor));
            if j % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }

    #[test]
    fn example_matrix_charpoly_is_product_of_fixture_factors() {
        let chi = characteristic_polynomial(&example_matrix());
        assert_eq!(
            chi,
            example_factor_quadratic().mul(&example_factor_cubic())
        );
        assert!(chi.is_monic());
        assert_eq!(chi.degree(), Some(5));
    }

    #[test]
    fn identity_matrix_charpoly() {
        let chi = characteristic_polynomial(&QMatrix::identity(3));
        assert_eq!(chi, UniPoly::linear(rat(1)).pow(3));
    }

    #[test]
    fn matches_symbolic_determinant_on_random_matrices() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 11) as i64 - 5
        };
        for n in [2usize, 3, 4, 5] {
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| rat(next())).collect())
                .collect();
            let a = QMatrix::from_rows(rows).unwrap();
            assert_eq!(characteristic_polynomial(&a), charpoly_by_determinant(&a));
        }
    }

    #[test]
    fn cayley_hamilton_annihilates_random_vectors() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for n in [6usize, 16, 40] {
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| rat(next())).collect())
                .collect();
            let a = QMatrix::from_rows(rows).unwrap();
            let chi = characteristic_polynomial(&a);
            let v = QVector::from_entries((0..n).map(|_| rat(next())).collect());
            let image = eval_poly_at_matrix(&chi, &a, &v).unwrap();
            assert!(image.is_zero(), "chi(A)v != 0 at n={n}");
        }
    }
}
