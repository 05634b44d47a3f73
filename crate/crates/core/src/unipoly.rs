//! Univariate polynomials over the rationals.
//!
//! Provides exact ring arithmetic, gcd, square-free decomposition and full
//! irreducible factorization over Q (square-free split, factorization modulo
//! a small prime, Hensel lifting to a coefficient bound, subset
//! recombination). Factorizations carry their multiplicities in
//! [`FactoredCharPoly`] and can be validated independently, so an externally
//! supplied factorization can stand in for the built-in one.

mod factor;
mod modp;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exact::{rat, rational_bits, Rational};

pub use factor::factor_rationals;

/// Polynomial in one variable over Q; coefficients stored lowest degree
/// first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

/// Errors from polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    DivisionByZero,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DivisionByZero => write!(f, "division by the zero polynomial"),
        }
    }
}

impl std::error::Error for PolyError {}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Builds from coefficients, lowest degree first; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// The monomial `x^degree`.
    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = Rational::one();
        UniPoly { coeffs }
    }

    /// The linear polynomial `x - root`.
    pub fn linear(root: Rational) -> Self {
        UniPoly {
            coeffs: vec![-root, Rational::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: usize) -> UniPoly {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder of exact polynomial division.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = Rational::one() / divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = rem[i].clone() * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[i - d + j] -= &q * b;
                }
            }
            quot[i - d] = q;
        }
        rem.truncate(d);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// True when `divisor` divides `self` exactly.
    pub fn is_divisible_by(&self, divisor: &UniPoly) -> bool {
        match self.divrem(divisor) {
            Ok((_, rem)) => rem.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor (zero polynomial if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, mut r) = a.divrem(&b).expect("nonzero divisor");
            // Normalizing remainders keeps coefficient growth in check.
            if !r.is_zero() {
                r = r.monic();
            }
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => Self::zero(),
            Some(lead) if lead.is_one() => self.clone(),
            Some(lead) => {
                let inv = Rational::one() / lead.clone();
                self.mul_scalar(&inv)
            }
        }
    }

    /// Largest numerator/denominator bit length over all coefficients.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(rational_bits).max().unwrap_or(0)
    }

    /// Deterministic total order: by degree, then lexicographic on
    /// coefficients from the highest power down.
    pub fn cmp_canonical(&self, other: &UniPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    let ord = a.cmp(b);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Square-free decomposition of a nonzero polynomial (Musser's algorithm).
///
/// Returns pairs `(part, multiplicity)` with the parts square-free, pairwise
/// coprime and monic; the product of `part^multiplicity` equals the monic
/// normalization of the input. Constants decompose to an empty list.
pub fn square_free_decompose(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    assert!(!f.is_zero(), "square-free decomposition of zero");
    let f = f.monic();
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let mut result = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).expect("gcd divides").0;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.divrem(&y).expect("gcd divides").0;
        if !z.is_one() {
            result.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).expect("gcd divides").0;
    }
    result.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp_canonical(&b.0)));
    result
}

/// Irreducible factorization of a monic polynomial with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredCharPoly {
    factors: Vec<(UniPoly, usize)>,
    total_degree: usize,
}

/// Problems found while validating a factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorValidationError {
    NotMonic { index: usize },
    ConstantFactor { index: usize },
    ZeroMultiplicity { index: usize },
    NotCoprime { left: usize, right: usize },
    DegreeSumMismatch { expected: usize, got: usize },
    ProductMismatch,
    Reducible { index: usize },
}

impl fmt::Display for FactorValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorValidationError::NotMonic { index } => {
                write!(f, "factor {index} is not monic")
            }
            FactorValidationError::ConstantFactor { index } => {
                write!(f, "factor {index} is constant")
            }
            FactorValidationError::ZeroMultiplicity { index } => {
                write!(f, "factor {index} has multiplicity zero")
            }
            FactorValidationError::NotCoprime { left, right } => {
                write!(f, "factors {left} and {right} share a common divisor")
            }
            FactorValidationError::DegreeSumMismatch { expected, got } => {
                write!(f, "factor degrees sum to {got}, expected {expected}")
            }
            FactorValidationError::ProductMismatch => {
                write!(f, "product of factors does not equal the polynomial")
            }
            FactorValidationError::Reducible { index } => {
                write!(f, "factor {index} is reducible")
            }
        }
    }
}

impl std::error::Error for FactorValidationError {}

impl FactoredCharPoly {
    /// Assembles a factorization from `(factor, multiplicity)` pairs,
    /// merging duplicates and sorting canonically.
    pub fn from_parts(parts: Vec<(UniPoly, usize)>) -> Self {
        let mut factors: Vec<(UniPoly, usize)> = Vec::new();
        for (f, m) in parts {
            if let Some(existing) = factors
                .iter_mut()
                .find(|(g, _)| g.cmp_canonical(&f) == Ordering::Equal)
            {
                existing.1 += m;
            } else {
                factors.push((f, m));
            }
        }
        factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        let total_degree = factors
            .iter()
            .map(|(f, m)| f.degree().unwrap_or(0) * m)
            .sum();
        FactoredCharPoly {
            factors,
            total_degree,
        }
    }

    pub fn factors(&self) -> &[(UniPoly, usize)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, p: usize) -> &UniPoly {
        &self.factors[p].0
    }

    pub fn multiplicity(&self, p: usize) -> usize {
        self.factors[p].1
    }

    pub fn total_degree(&self) -> usize {
        self.total_degree
    }

    /// Expands the product of all factor powers.
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::one();
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }

    /// Structural checks that do not need the expanded polynomial: monic
    /// nonconstant factors, positive multiplicities, pairwise coprimality,
    /// degree sum, and an irreducibility check on every factor.
    pub fn validate_structure(
        &self,
        expected_degree: usize,
    ) -> Result<(), FactorValidationError> {
        for (i, (f, m)) in self.factors.iter().enumerate() {
            if !f.is_monic() {
                return Err(FactorValidationError::NotMonic { index: i });
            }
            if f.degree() == Some(0) {
                return Err(FactorValidationError::ConstantFactor { index: i });
            }
            if *m == 0 {
                return Err(FactorValidationError::ZeroMultiplicity { index: i });
            }
        }
        if self.total_degree != expected_degree {
            return Err(FactorValidationError::DegreeSumMismatch {
                expected: expected_degree,
                got: self.total_degree,
            });
        }
        for i in 0..self.factors.len() {
            for j in i + 1..self.factors.len() {
                if !self.factors[i].0.gcd(&self.factors[j].0).is_one() {
                    return Err(FactorValidationError::NotCoprime { left: i, right: j });
                }
            }
        }
        for (i, (f, _)) in self.factors.iter().enumerate() {
            if !factor::is_irreducible(f) {
                return Err(FactorValidationError::Reducible { index: i });
            }
        }
        Ok(())
    }

    /// Full validation against the polynomial this claims to factor.
    pub fn validate_against(&self, poly: &UniPoly) -> Result<(), FactorValidationError> {
        let expected = poly.degree().unwrap_or(0);
        self.validate_structure(expected)?;
        if self.expand() != poly.monic() {
            return Err(FactorValidationError::ProductMismatch);
        }
        Ok(())
    }
}
