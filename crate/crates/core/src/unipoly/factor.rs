//! Irreducible factorization over Q.
//!
//! Classical route: square-free decomposition, reduction modulo a small
//! prime with square-free image, distinct/equal-degree splitting, quadratic
//! Hensel lifting to a Landau–Mignotte style coefficient bound, then subset
//! recombination. Everything is deterministic: prime selection scans a fixed
//! sequence, the equal-degree splitting RNG is seeded from the prime, and
//! candidate subsets are enumerated in lexicographic order.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::modp::{self, Fp, FpPoly};
use super::{square_free_decompose, FactoredCharPoly, UniPoly};
use crate::exact::Rational;

const EDF_SEED: u64 = 0xe16e_7061;
/// Verification primes for irreducibility degree patterns start here.
const PATTERN_PRIME_FLOOR: u64 = 1 << 30;

/// Irreducible factorization of a nonzero polynomial.
///
/// The returned factors are monic and multiply (with multiplicities) to the
/// monic normalization of the input; constants factor to an empty list.
pub fn factor_rationals(f: &UniPoly) -> FactoredCharPoly {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let mut parts: Vec<(UniPoly, usize)> = Vec::new();
    for (squarefree, mult) in square_free_decompose(f) {
        let coeffs = integer_primitive(&squarefree);
        for factor in factor_squarefree_integer(&coeffs) {
            parts.push((integer_to_monic(&factor), mult));
        }
    }
    FactoredCharPoly::from_parts(parts)
}

/// Irreducibility test over Q for nonconstant polynomials.
///
/// First tries to certify with distinct-degree patterns modulo three
/// verification primes above 2^30 with good reduction: if no nontrivial
/// degree is attainable as a subset sum under every pattern, the polynomial
/// is irreducible. Otherwise falls back to a full factorization.
pub fn is_irreducible(f: &UniPoly) -> bool {
    let Some(d) = f.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if !f.gcd(&f.derivative()).is_one() {
        return false;
    }
    let coeffs = integer_primitive(f);
    if pattern_certifies_irreducible(&coeffs, d) {
        return true;
    }
    factor_squarefree_integer(&coeffs).len() == 1
}

fn pattern_certifies_irreducible(coeffs: &[BigInt], d: usize) -> bool {
    let mut possible = vec![true; d + 1];
    let mut used = 0;
    let mut p = PATTERN_PRIME_FLOOR;
    let mut attempts = 0;
    while used < 3 && attempts < 64 {
        p = modp::next_prime(p);
        attempts += 1;
        let Some((fp, image)) = good_reduction(coeffs, p) else {
            continue;
        };
        used += 1;
        let pattern = modp::degree_pattern(fp, &image);
        let attainable = subset_sums(&pattern, d);
        for (i, slot) in possible.iter_mut().enumerate() {
            *slot = *slot && attainable[i];
        }
        if !possible[1..d].iter().any(|&x| x) {
            return true;
        }
    }
    !possible[1..d].iter().any(|&x| x)
}

fn subset_sums(pattern: &[usize], cap: usize) -> Vec<bool> {
    let mut reach = vec![false; cap + 1];
    reach[0] = true;
    for &d in pattern {
        for i in (0..=cap.saturating_sub(d)).rev() {
            if reach[i] {
                reach[i + d] = true;
            }
        }
    }
    reach
}

/// Reduces modulo p when the image keeps full degree and stays square-free.
fn good_reduction(coeffs: &[BigInt], p: u64) -> Option<(Fp, FpPoly)> {
    let fp = Fp::new(p);
    let image: FpPoly = coeffs.iter().map(|c| reduce_mod_u64(c, p)).collect();
    if image.last() == Some(&0) {
        return None;
    }
    let deriv = modp::derivative(fp, &image);
    if deriv.is_empty() {
        return None;
    }
    if !modp::is_one_poly(&modp::gcd(fp, &image, &deriv)) {
        return None;
    }
    Some((fp, image))
}

fn reduce_mod_u64(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Clears denominators and content: primitive integer coefficients with a
/// positive leading coefficient.
fn integer_primitive(f: &UniPoly) -> Vec<BigInt> {
    assert!(!f.is_zero());
    let mut denom_lcm = BigInt::one();
    for c in f.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut coeffs: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &coeffs {
        content = content.gcd(c);
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    if coeffs.last().map(|c| c.is_negative()).unwrap_or(false) {
        content = -content;
    }
    for c in &mut coeffs {
        *c /= &content;
    }
    coeffs
}

fn integer_to_monic(coeffs: &[BigInt]) -> UniPoly {
    let lead = coeffs.last().expect("nonzero factor").clone();
    UniPoly::from_coeffs(
        coeffs
            .iter()
            .map(|c| Rational::new(c.clone(), lead.clone()))
            .collect(),
    )
}

fn content_free(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    let mut content = BigInt::zero();
    for c in &coeffs {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return coeffs;
    }
    if coeffs.last().map(|c| c.is_negative()).unwrap_or(false) {
        content = -content;
    }
    for c in &mut coeffs {
        *c /= &content;
    }
    coeffs
}

/// Factors a primitive square-free integer polynomial into irreducible
/// primitive integer polynomials with positive leading coefficients.
fn factor_squarefree_integer(coeffs: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut coeffs = coeffs.to_vec();
    let mut out = Vec::new();
    if coeffs.len() >= 2 && coeffs[0].is_zero() {
        // A square-free polynomial carries at most one factor of x.
        out.push(vec![BigInt::zero(), BigInt::one()]);
        coeffs.remove(0);
    }
    let d = coeffs.len() - 1;
    if d == 0 {
        return out;
    }
    if d == 1 {
        out.push(content_free(coeffs));
        return out;
    }

    // Prime selection: among the first good primes, prefer the one whose
    // modular image has the fewest irreducible factors.
    let mut best: Option<(Fp, FpPoly, Vec<usize>)> = None;
    let mut p = 2u64;
    let mut seen = 0;
    while seen < 5 {
        p = modp::next_prime(p);
        let Some((fp, image)) = good_reduction(&coeffs, p) else {
            continue;
        };
        seen += 1;
        let pattern = modp::degree_pattern(fp, &image);
        let better = match &best {
            None => true,
            Some((_, _, best_pattern)) => pattern.len() < best_pattern.len(),
        };
        if better {
            best = Some((fp, image, pattern));
        }
    }
    let (fp, image, pattern) = best.expect("a good prime always exists for square-free input");
    if pattern.len() == 1 {
        out.push(content_free(coeffs));
        return out;
    }

    let modular = modp::factor_squarefree(fp, &modp::monic(fp, &image), EDF_SEED);
    debug_assert_eq!(modular.len(), pattern.len());

    // Landau–Mignotte style bound on factor coefficients, including the
    // leading-coefficient correction used during recombination.
    let norm_inf = coeffs.iter().map(|c| c.abs()).max().unwrap();
    let lead = coeffs.last().unwrap().abs();
    let bound: BigInt =
        BigInt::from((d as u64 + 1).sqrt() + 1) * (BigInt::one() << d) * norm_inf * lead;
    let target = &bound * 2 + 1;
    let mut modulus = BigInt::from(fp.p);
    while modulus < target {
        modulus = &modulus * &modulus;
    }

    let lifted = hensel_lift_tree(&coeffs, &modular, fp, &modulus);
    out.extend(recombine(coeffs, lifted, &modulus));
    out
}

// --- arithmetic on polynomials modulo a big power p^k ------------------

fn zk_reduce(coeffs: &mut Vec<BigInt>, m: &BigInt) {
    for c in coeffs.iter_mut() {
        *c = c.mod_floor(m);
    }
    while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
}

fn zk_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    zk_reduce(&mut out, m);
    out
}

fn zk_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); len];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        *o = x + y;
    }
    zk_reduce(&mut out, m);
    out
}

fn zk_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); len];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        *o = x - y;
    }
    zk_reduce(&mut out, m);
    out
}

/// Division with remainder by a monic divisor, modulo m.
fn zk_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(b.last().map(|c| c.is_one()).unwrap_or(false));
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let q = rem[i].clone();
        if q.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                rem[i - db + j] = (&rem[i - db + j] - &q * y).mod_floor(m);
            }
        }
        quot[i - db] = q;
    }
    rem.truncate(db);
    zk_reduce(&mut rem, m);
    zk_reduce(&mut quot, m);
    (quot, rem)
}

/// Truncates to degree < cap, checking the discarded coefficients vanish.
fn zk_truncate(mut f: Vec<BigInt>, cap: usize) -> Vec<BigInt> {
    debug_assert!(f.iter().skip(cap).all(|c| c.is_zero()));
    f.truncate(cap);
    while f.last().map(|c| c.is_zero()).unwrap_or(false) {
        f.pop();
    }
    f
}

fn fppoly_to_zk(f: &FpPoly) -> Vec<BigInt> {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// Extended Euclid over F_p: returns (s, t) with s·a + t·b = 1 for coprime a, b.
fn fp_bezout(fp: Fp, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0: FpPoly = vec![1];
    let mut s1: FpPoly = Vec::new();
    let mut t0: FpPoly = Vec::new();
    let mut t1: FpPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = fp_divrem(fp, &r0, &r1);
        let s2 = fp_sub_mul(fp, &s0, &q, &s1);
        let t2 = fp_sub_mul(fp, &t0, &q, &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    debug_assert_eq!(modp::deg(&r0), 0);
    let inv = fp.inv(r0[0]);
    let scale = |f: &FpPoly| f.iter().map(|&c| fp.mul(c, inv)).collect::<Vec<_>>();
    (scale(&s0), scale(&t0))
}

fn fp_divrem(fp: Fp, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    let db = modp::deg(b);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    let lead_inv = fp.inv(b[db]);
    for i in (db..r.len()).rev() {
        let c = fp.mul(r[i], lead_inv);
        q[i - db] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[i - db + j] = fp.sub(r[i - db + j], fp.mul(c, y));
            }
        }
    }
    r.truncate(db);
    (modp::trim(q), modp::trim(r))
}

fn fp_sub_mul(fp: Fp, a: &FpPoly, q: &FpPoly, b: &FpPoly) -> FpPoly {
    modp::sub(fp, a, &modp::mul(fp, q, b))
}

/// Lifts the modular factorization of a primitive square-free polynomial to
/// monic factors modulo `modulus = p^k`, recursing on a factor tree.
fn hensel_lift_tree(
    coeffs: &[BigInt],
    modular: &[FpPoly],
    fp: Fp,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    // Work with the monic normalization of the input modulo p^k.
    let lead_inv = modinv_bigint(coeffs.last().unwrap(), modulus);
    let mut monic_f: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * &lead_inv).mod_floor(modulus))
        .collect();
    zk_reduce(&mut monic_f, modulus);
    lift_node(&monic_f, modular, fp, modulus)
}

fn lift_node(f: &[BigInt], factors: &[FpPoly], fp: Fp, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let mut g0: FpPoly = vec![1];
    for fac in left {
        g0 = modp::mul(fp, &g0, fac);
    }
    let mut h0: FpPoly = vec![1];
    for fac in right {
        h0 = modp::mul(fp, &h0, fac);
    }
    let (s0, t0) = fp_bezout(fp, &g0, &h0);

    let mut g = fppoly_to_zk(&g0);
    let mut h = fppoly_to_zk(&h0);
    let mut s = fppoly_to_zk(&s0);
    let mut t = fppoly_to_zk(&t0);
    let dg = modp::deg(&g0);
    let dh = modp::deg(&h0);

    let mut m = BigInt::from(fp.p);
    while &m < modulus {
        let m2 = (&m * &m).min(modulus.clone());
        // e = f - g*h
        let e = zk_sub(f, &zk_mul(&g, &h, &m2), &m2);
        let (q, r) = zk_divrem_monic(&zk_mul(&s, &e, &m2), &h, &m2);
        let correction = zk_add(&zk_mul(&t, &e, &m2), &zk_mul(&q, &g, &m2), &m2);
        g = zk_truncate(zk_add(&g, &correction, &m2), dg + 1);
        g.resize(dg + 1, BigInt::zero());
        g[dg] = BigInt::one();
        h = zk_add(&h, &r, &m2);
        h.resize(dh + 1, BigInt::zero());
        h[dh] = BigInt::one();
        // refresh the Bezout pair
        let b = zk_sub(
            &zk_add(&zk_mul(&s, &g, &m2), &zk_mul(&t, &h, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = zk_divrem_monic(&zk_mul(&s, &b, &m2), &h, &m2);
        s = zk_sub(&s, &d, &m2);
        let tb = zk_mul(&t, &b, &m2);
        let cg = zk_mul(&c, &g, &m2);
        t = zk_sub(&zk_sub(&t, &tb, &m2), &cg, &m2);
        t = zk_truncate(t, dg);
        m = m2;
    }
    let mut out = lift_node(&g, left, fp, modulus);
    out.extend(lift_node(&h, right, fp, modulus));
    out
}

/// Inverse of `a` modulo `m` (gcd(a, m) = 1).
fn modinv_bigint(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Centers a residue into (-m/2, m/2].
fn center(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Zassenhaus recombination: searches subsets of the lifted factors whose
/// centered product divides the polynomial over the integers.
fn recombine(
    mut f_cur: Vec<BigInt>,
    mut lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    let mut result = Vec::new();
    let mut s = 1usize;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let mut subset = first_subset(s);
        loop {
            if subset_degree(&lifted, &subset) < f_cur.len() - 1 {
                if let Some(g) = try_subset(&f_cur, &lifted, &subset, modulus) {
                    let quotient = exact_integer_quotient(&f_cur, &g)
                        .expect("trial division succeeded");
                    result.push(g);
                    f_cur = content_free(quotient);
                    let mut remove: Vec<usize> = subset.clone();
                    remove.sort_unstable_by(|a, b| b.cmp(a));
                    for idx in remove {
                        lifted.remove(idx);
                    }
                    found = true;
                    break;
                }
            }
            if !next_subset(&mut subset, lifted.len()) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if f_cur.len() > 1 {
        result.push(content_free(f_cur));
    }
    result.sort();
    result
}

fn subset_degree(lifted: &[Vec<BigInt>], subset: &[usize]) -> usize {
    subset.iter().map(|&i| lifted[i].len() - 1).sum()
}

fn first_subset(s: usize) -> Vec<usize> {
    (0..s).collect()
}

/// Advances to the next lexicographic s-subset of {0..n}; false when done.
fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let s = subset.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if subset[i] < n - (s - i) {
            subset[i] += 1;
            for j in i + 1..s {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn try_subset(
    f_cur: &[BigInt],
    lifted: &[Vec<BigInt>],
    subset: &[usize],
    modulus: &BigInt,
) -> Option<Vec<BigInt>> {
    let lead = f_cur.last().unwrap();
    let mut prod = vec![lead.mod_floor(modulus)];
    for &i in subset {
        prod = zk_mul(&prod, &lifted[i], modulus);
    }
    let centered: Vec<BigInt> = prod.iter().map(|c| center(c, modulus)).collect();
    // Cheap filter before the full trial division.
    let trailing = &centered[0];
    if trailing.is_zero() {
        if !f_cur[0].is_zero() {
            return None;
        }
    } else if !(lead * &f_cur[0]).is_multiple_of(trailing) {
        return None;
    }
    let candidate = content_free(centered);
    if candidate.len() <= 1 {
        return None;
    }
    exact_integer_quotient(f_cur, &candidate).map(|_| candidate)
}

/// Exact quotient over Z, or None when the division leaves a remainder.
fn exact_integer_quotient(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let pa = UniPoly::from_coeffs(a.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let pb = UniPoly::from_coeffs(b.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let (q, r) = pa.divrem(&pb).ok()?;
    if !r.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(q.coeffs().len());
    for c in q.coeffs() {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.numer().clone());
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::testutil::{example_factor_cubic, example_factor_quadratic};

    #[test]
    fn factors_example_characteristic_polynomial() {
        let f1 = example_factor_quadratic();
        let f2 = example_factor_cubic();
        let chi = f1.mul(&f2);
        let fac = factor_rationals(&chi);
        assert_eq!(fac.factors(), &[(f1, 1), (f2, 1)]);
        assert_eq!(fac.expand(), chi);
    }

    #[test]
    fn factors_difference_of_squares() {
        let f = UniPoly::from_i64(&[-1, 0, 1]);
        let fac = factor_rationals(&f);
        assert_eq!(
            fac.factors(),
            &[
                (UniPoly::from_i64(&[-1, 1]), 1),
                (UniPoly::from_i64(&[1, 1]), 1)
            ]
        );
    }

    #[test]
    fn recovers_three_random_irreducible_factors() {
        // Known-irreducible seeds (Eisenstein at 2 or 3, or cyclotomic).
        let seeds = [
            UniPoly::from_i64(&[2, 2, 1]),          // x^2+2x+2
            UniPoly::from_i64(&[3, -3, 0, 1]),      // x^3-3x+3
            UniPoly::from_i64(&[1, 1, 1, 1, 1]),    // x^4+x^3+x^2+x+1
            UniPoly::from_i64(&[-2, 0, 0, 1]),      // x^3-2
            UniPoly::from_i64(&[6, 4, 2, 0, 1]),    // x^4+2x^2+4x+6
        ];
        for skip in 0..seeds.len() {
            let chosen: Vec<&UniPoly> = seeds
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .take(3)
                .map(|(_, f)| f)
                .collect();
            let mut product = UniPoly::one();
            for f in &chosen {
                product = product.mul(f);
            }
            let fac = factor_rationals(&product);
            assert_eq!(fac.len(), 3, "product of {skip}");
            // Re-multiplication oracle plus pairwise coprimality.
            assert_eq!(fac.expand(), product.monic());
            for i in 0..fac.len() {
                for j in i + 1..fac.len() {
                    assert!(fac.factor(i).gcd(fac.factor(j)).is_one());
                }
            }
        }
    }

    #[test]
    fn factors_with_multiplicities() {
        // (x-1)^2 (x^2+1)^3 (x+4)
        let f = UniPoly::linear(rat(1))
            .pow(2)
            .mul(&UniPoly::from_i64(&[1, 0, 1]).pow(3))
            .mul(&UniPoly::linear(rat(-4)));
        let fac = factor_rationals(&f);
        assert_eq!(
            fac.factors(),
            &[
                (UniPoly::from_i64(&[-1, 1]), 2),
                (UniPoly::from_i64(&[4, 1]), 1),
                (UniPoly::from_i64(&[1, 0, 1]), 3),
            ]
        );
    }

    #[test]
    fn handles_non_monic_and_rational_input() {
        // 6 * (x - 1/2)(x - 1/3) = 6x^2 - 5x + 1 = (2x-1)(3x-1)
        let f = UniPoly::from_i64(&[1, -5, 6]);
        let fac = factor_rationals(&f);
        assert_eq!(
            fac.factors(),
            &[
                (
                    UniPoly::from_coeffs(vec![rat(-1) / rat(2), rat(1)]),
                    1
                ),
                (
                    UniPoly::from_coeffs(vec![rat(-1) / rat(3), rat(1)]),
                    1
                ),
            ]
        );
        assert_eq!(fac.expand(), f.monic());
    }

    #[test]
    fn factor_of_x_is_extracted() {
        // x^3 + x = x (x^2 + 1)
        let f = UniPoly::from_i64(&[0, 1, 0, 1]);
        let fac = factor_rationals(&f);
        assert_eq!(
            fac.factors(),
            &[
                (UniPoly::from_i64(&[0, 1]), 1),
                (UniPoly::from_i64(&[1, 0, 1]), 1)
            ]
        );
    }

    #[test]
    fn irreducibility_checks() {
        assert!(is_irreducible(&UniPoly::from_i64(&[12, 1, 1])));
        assert!(is_irreducible(&UniPoly::from_i64(&[-41, -60, -5, 1])));
        assert!(is_irreducible(&UniPoly::from_i64(&[-2, 0, 0, 0, 1])));
        assert!(!is_irreducible(&UniPoly::from_i64(&[-1, 0, 1])));
        assert!(!is_irreducible(&UniPoly::from_i64(&[1, 2, 1])));
        assert!(!is_irreducible(&UniPoly::one()));
    }

    #[test]
    fn high_degree_eisenstein_stays_irreducible() {
        // x^16 - 2
        let mut coeffs = vec![0i64; 17];
        coeffs[0] = -2;
        coeffs[16] = 1;
        assert!(is_irreducible(&UniPoly::from_i64(&coeffs)));
    }
}
