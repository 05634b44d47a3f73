//! Horner evaluation of polynomials at a matrix, acting on a vector.
//!
//! `eval_poly_at_matrix` computes `f(A)v` with nested products, never forming
//! `f(A)` as a matrix: `deg f` matrix–vector products in total.
//!
//! `psi_coefficients` computes the coefficient vectors of
//! `psi_f(A, xE)·v`, where `psi_f(x, y) = (f(x) - f(y))/(x - y)` is the
//! difference quotient. When `f` annihilates `v`, the resulting polynomial
//! vector is an eigenvector for every root of `f` at once; the final Horner
//! step `A·c0 + a0·v` equals `f(A)v` and doubles as the verification that
//! `f` really annihilates the seed — one extra product buys the certificate.

use std::fmt;

use num_traits::Zero;

use crate::exact::{ExactError, QMatrix, QVector, Rational};
use crate::unipoly::UniPoly;

/// Errors from matrix-polynomial evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HornerError {
    ConstantPolynomial,
    Exact(ExactError),
}

impl fmt::Display for HornerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HornerError::ConstantPolynomial => {
                write!(f, "difference quotient requires degree at least one")
            }
            HornerError::Exact(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for HornerError {}

impl From<ExactError> for HornerError {
    fn from(e: ExactError) -> Self {
        HornerError::Exact(e)
    }
}

/// A vector of polynomials in one variable, stored as coefficient vectors
/// from highest power down: `phi(x) = x^(d-1)·c[0] + ... + x·c[d-2] + c[d-1]`.
///
/// For a monic eigenfactor the leading coefficient vector equals the seed
/// vector the polynomial was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector {
    coeffs: Vec<QVector>,
}

impl PolyVector {
    pub fn from_coeffs_highest_first(coeffs: Vec<QVector>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial vector needs a coefficient");
        PolyVector { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    /// Number of coefficient vectors (degree bound plus one).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of the highest power.
    pub fn leading(&self) -> &QVector {
        &self.coeffs[0]
    }

    /// Coefficient of x^0.
    pub fn constant(&self) -> &QVector {
        self.coeffs.last().unwrap()
    }

    pub fn coeffs_highest_first(&self) -> &[QVector] {
        &self.coeffs
    }

    /// Coefficient of `x^power`.
    pub fn coeff(&self, power: usize) -> &QVector {
        &self.coeffs[self.coeffs.len() - 1 - power]
    }

    pub fn iter_lowest_first(&self) -> impl Iterator<Item = &QVector> {
        self.coeffs.iter().rev()
    }

    /// Largest numerator/denominator bit length over all entries.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.max_bits()).max().unwrap_or(0)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_at(&self, x: &Rational) -> QVector {
        let mut acc = QVector::zeros(self.dim());
        for c in &self.coeffs {
            acc = acc.scale(x).add(c).expect("same dimension");
        }
        acc
    }
}

/// `f(A)·v` by Horner's rule: `deg f` matrix–vector products.
pub fn eval_poly_at_matrix(
    f: &UniPoly,
    a: &QMatrix,
    v: &QVector,
) -> Result<QVector, HornerError> {
    if v.dim() != a.dim() {
        return Err(HornerError::Exact(ExactError::DimensionMismatch {
            operation: "polynomial evaluation at matrix",
            expected: a.dim(),
            got: v.dim(),
        }));
    }
    let Some(d) = f.degree() else {
        return Ok(QVector::zeros(v.dim()));
    };
    let mut acc = v.scale(&f.coeff(d));
    for i in (0..d).rev() {
        acc = a.mul_vector(&acc)?;
        let ci = f.coeff(i);
        if !ci.is_zero() {
            acc.add_scaled_assign(&ci, v);
        }
    }
    Ok(acc)
}

/// Row-vector variant `r·f(A)`, same cost, used by the probe machinery.
pub fn eval_poly_at_matrix_row(
    f: &UniPoly,
    a: &QMatrix,
    r: &QVector,
) -> Result<QVector, HornerError> {
    if r.dim() != a.dim() {
        return Err(HornerError::Exact(ExactError::DimensionMismatch {
            operation: "polynomial evaluation at matrix (row)",
            expected: a.dim(),
            got: r.dim(),
        }));
    }
    let Some(d) = f.degree() else {
        return Ok(QVector::zeros(r.dim()));
    };
    let mut acc = r.scale(&f.coeff(d));
    for i in (0..d).rev() {
        acc = a.row_mul(&acc)?;
        let ci = f.coeff(i);
        if !ci.is_zero() {
            acc.add_scaled_assign(&ci, r);
        }
    }
    Ok(acc)
}

/// Coefficient vectors of `psi_f(A, xE)·v` via the Horner recursion
/// `c_{d-1} = a_d·v`, `c_{d-1-j} = A·c_{d-j} + a_{d-j}·v`.
///
/// Costs exactly `deg f - 1` matrix–vector products.
pub fn psi_polyvector(
    f: &UniPoly,
    a: &QMatrix,
    v: &QVector,
) -> Result<PolyVector, HornerError> {
    let d = f.degree().filter(|&d| d >= 1).ok_or(HornerError::ConstantPolynomial)?;
    if v.dim() != a.dim() {
        return Err(HornerError::Exact(ExactError::DimensionMismatch {
            operation: "difference-quotient evaluation",
            expected: a.dim(),
            got: v.dim(),
        }));
    }
    let mut coeffs = Vec::with_capacity(d);
    coeffs.push(v.scale(&f.coeff(d)));
    for j in 1..d {
        let mut c = a.mul_vector(coeffs.last().unwrap())?;
        let aj = f.coeff(d - j);
        if !aj.is_zero() {
            c.add_scaled_assign(&aj, v);
        }
        coeffs.push(c);
    }
    Ok(PolyVector::from_coeffs_highest_first(coeffs))
}

/// Difference-quotient coefficients plus the fused tail `f(A)v = A·c0 + a0·v`.
///
/// The tail costs one more matrix–vector product on top of the `deg f - 1`
/// spent on the coefficients; tail zero certifies that `f` annihilates `v`.
pub fn psi_coefficients(
    f: &UniPoly,
    a: &QMatrix,
    v: &QVector,
) -> Result<(PolyVector, QVector), HornerError> {
    let phi = psi_polyvector(f, a, v)?;
    let tail = psi_tail(f, a, v, &phi)?;
    Ok((phi, tail))
}

/// The single extra Horner step `A·c0 + a0·v`.
pub fn psi_tail(
    f: &UniPoly,
    a: &QMatrix,
    v: &QVector,
    phi: &PolyVector,
) -> Result<QVector, HornerError> {
    let mut tail = a.mul_vector(phi.constant())?;
    let a0 = f.coeff(0);
    if !a0.is_zero() {
        tail.add_scaled_assign(&a0, v);
    }
    Ok(tail)
}

/// `phi(t)` for a rational `t`, exact.
pub fn eval_polyvector_at_scalar(phi: &PolyVector, t: &Rational) -> QVector {
    phi.eval_at(t)
}

/// Checks the exact polynomial-vector identity
/// `(A - xE)·phi(x) = -f(x)·seed`, the symbolic eigenvector certificate.
///
/// Coefficient by coefficient this says: the leading coefficient is
/// `a_d·seed`, each inner coefficient satisfies `A·c_i - c_{i-1} = -a_i·seed`,
/// and the constant one satisfies `A·c_0 = -a_0·seed` (zero tail).
pub fn certifies_eigenvector(
    a: &QMatrix,
    f: &UniPoly,
    seed: &QVector,
    phi: &PolyVector,
) -> Result<bool, HornerError> {
    let d = f.degree().filter(|&d| d >= 1).ok_or(HornerError::ConstantPolynomial)?;
    if phi.len() != d {
        return Ok(false);
    }
    if phi.leading() != &seed.scale(&f.coeff(d)) {
        return Ok(false);
    }
    for power in 1..d {
        let lhs = a.mul_vector(phi.coeff(power))?;
        let mut rhs = phi.coeff(power - 1).clone();
        let ai = f.coeff(power);
        if !ai.is_zero() {
            rhs.add_scaled_assign(&(-ai), seed);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    let tail = psi_tail(f, a, seed, phi)?;
    Ok(tail.is_zero())
}
