//! Polynomial arithmetic over prime fields F_p for primes below 2^31.
//!
//! Backs the rational factorization: distinct-degree splitting picks the
//! working prime and yields degree patterns, Cantor–Zassenhaus splits the
//! equal-degree products. Products of two residues fit in u64 since p < 2^31.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic Miller–Rabin, valid for all u64 with this base set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    if k <= 2 {
        return 2;
    }
    if k % 2 == 0 {
        k += 1;
    }
    while !is_prime_u64(k) {
        k += 2;
    }
    k
}

/// Prime field element operations; p must be an odd prime below 2^31.
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31) && is_prime_u64(p));
        Fp { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
}

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
pub type FpPoly = Vec<u64>;

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &FpPoly) -> usize {
    debug_assert!(!f.is_empty());
    f.len() - 1
}

pub fn is_one_poly(f: &FpPoly) -> bool {
    f.len() == 1 && f[0] == 1
}

pub fn mul(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = fp.add(out[i + j], fp.mul(x, y));
            }
        }
    }
    trim(out)
}

pub fn sub(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let len = a.len().max(b.len());
    let mut out = vec![0u64; len];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = fp.sub(x, y);
    }
    trim(out)
}

/// Remainder of `a` modulo nonzero `b`.
pub fn rem(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    debug_assert!(!b.is_empty());
    let mut r = a.clone();
    let db = deg(b);
    let lead_inv = fp.inv(b[db]);
    while r.len() > db {
        let k = r.len() - 1;
        let c = fp.mul(r[k], lead_inv);
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    let idx = k - db + j;
                    r[idx] = fp.sub(r[idx], fp.mul(c, y));
                }
            }
        }
        r.pop();
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

pub fn monic(fp: Fp, f: &FpPoly) -> FpPoly {
    if f.is_empty() {
        return Vec::new();
    }
    let inv = fp.inv(*f.last().unwrap());
    f.iter().map(|&c| fp.mul(c, inv)).collect()
}

pub fn gcd(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(fp, &a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(fp, &a)
    }
}

pub fn derivative(fp: Fp, f: &FpPoly) -> FpPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp.mul(c, (i as u64) % fp.p))
            .collect(),
    )
}

/// `base^e mod m` for polynomials, exponent given as a big integer.
pub fn powmod_big(fp: Fp, base: &FpPoly, e: &BigUint, m: &FpPoly) -> FpPoly {
    let mut acc = vec![1u64];
    let mut b = rem(fp, base, m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = rem(fp, &mul(fp, &acc, &b), m);
        }
        if i + 1 < bits {
            b = rem(fp, &mul(fp, &b, &b), m);
        }
    }
    acc
}

/// x^(p^k) mod f, iterating the Frobenius map from a cached x^p mod f.
fn frobenius_iterate(fp: Fp, xp: &FpPoly, prev: &FpPoly, f: &FpPoly) -> FpPoly {
    // prev = x^(p^(k-1)) mod f; compose with one more Frobenius power by
    // evaluating prev at x^p via Horner over F_p[x]/(f).
    let mut acc: FpPoly = Vec::new();
    for &c in prev.iter().rev() {
        acc = rem(fp, &mul(fp, &acc, xp), f);
        if c != 0 {
            if acc.is_empty() {
                acc = vec![c];
            } else {
                acc[0] = fp.add(acc[0], c);
            }
        }
    }
    acc
}

/// Distinct-degree factorization of a monic square-free `f`.
///
/// Returns `(d, product)` pairs: `product` is the product of all monic
/// irreducible factors of degree `d`, ascending in `d`.
pub fn distinct_degree(fp: Fp, f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let mut out = Vec::new();
    let mut rest = monic(fp, f);
    let xp = powmod_big(fp, &vec![0, 1], &BigUint::from(fp.p), f);
    let mut h = vec![0u64, 1]; // x^(p^0)
    let mut d = 0usize;
    while deg(&rest) > 0 {
        d += 1;
        if 2 * d > deg(&rest) {
            out.push((deg(&rest), rest.clone()));
            break;
        }
        h = frobenius_iterate(fp, &xp, &h, f);
        let h_mod_rest = rem(fp, &h, &rest);
        let diff = sub(fp, &h_mod_rest, &vec![0, 1]);
        if diff.is_empty() {
            // Everything remaining splits into degree <= d factors; the gcd
            // below would be rest itself.
            out.push((d, rest.clone()));
            break;
        }
        let g = gcd(fp, &rest, &diff);
        if !is_one_poly(&g) {
            out.push((d, g.clone()));
            rest = monic(fp, &rem_exact(fp, &rest, &g));
        }
    }
    out
}

/// Exact quotient (panics if not exact) used after a gcd split.
fn rem_exact(fp: Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let db = deg(b);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    let lead_inv = fp.inv(b[db]);
    for k in (db..a.len()).rev() {
        let c = fp.mul(*r.get(k).unwrap_or(&0), lead_inv);
        q[k - db] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[k - db + j] = fp.sub(r[k - db + j], fp.mul(c, y));
            }
        }
    }
    debug_assert!(trim(r).is_empty());
    trim(q)
}

/// Equal-degree splitting (Cantor–Zassenhaus) of a product of irreducible
/// factors all of degree `d`. Randomness is seeded deterministically.
pub fn equal_degree_split(fp: Fp, f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let k = deg(f) / d;
    if k == 1 {
        return vec![monic(fp, f)];
    }
    let exponent = (BigUint::from(fp.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: FpPoly = trim(
            (0..deg(f))
                .map(|_| rng.random_range(0..fp.p))
                .collect::<Vec<_>>(),
        );
        if a.len() < 2 {
            continue;
        }
        let b = powmod_big(fp, &a, &exponent, f);
        let b_minus_one = if b.is_empty() {
            vec![fp.p - 1]
        } else {
            let mut c = b.clone();
            c[0] = fp.sub(c[0], 1);
            trim(c)
        };
        if b_minus_one.is_empty() {
            continue;
        }
        let g = gcd(fp, f, &b_minus_one);
        if is_one_poly(&g) || deg(&g) == deg(f) {
            continue;
        }
        let h = rem_exact(fp, f, &g);
        let mut out = equal_degree_split(fp, &g, d, rng);
        out.extend(equal_degree_split(fp, &monic(fp, &h), d, rng));
        return out;
    }
}

/// Full factorization of a monic square-free polynomial over F_p.
pub fn factor_squarefree(fp: Fp, f: &FpPoly, seed: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fp.p);
    let mut out = Vec::new();
    for (d, product) in distinct_degree(fp, f) {
        out.extend(equal_degree_split(fp, &product, d, &mut rng));
    }
    // Canonical order keeps downstream subset enumeration deterministic.
    out.sort();
    out
}

/// Degree pattern of the distinct-degree factorization: the multiset of
/// irreducible factor degrees of a monic square-free `f` modulo p.
pub fn degree_pattern(fp: Fp, f: &FpPoly) -> Vec<usize> {
    let mut pattern = Vec::new();
    for (d, product) in distinct_degree(fp, f) {
        for _ in 0..deg(&product) / d {
            pattern.push(d);
        }
    }
    pattern
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_small_table() {
        let primes: Vec<u64> = (2..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64(1_073_741_827)); // first prime above 2^30
        assert!(!is_prime_u64(1_073_741_825));
        assert_eq!(next_prime(1 << 30), 1_073_741_827);
    }

    #[test]
    fn remainder_and_gcd_over_f7() {
        let fp = Fp::new(7);
        // (x^2+1)(x+3) = x^3+3x^2+x+3
        let prod = mul(fp, &vec![1, 0, 1], &vec![3, 1]);
        assert_eq!(prod, vec![3, 1, 3, 1]);
        assert_eq!(rem(fp, &prod, &vec![1, 0, 1]), Vec::<u64>::new());
        let g = gcd(fp, &prod, &vec![1, 0, 1]);
        assert_eq!(g, vec![1, 0, 1]);
    }

    #[test]
    fn distinct_degree_splits_linear_from_quadratic() {
        // Over F_5: x^2+2 is irreducible, (x-1)(x-2) = x^2 - 3x + 2.
        let fp = Fp::new(5);
        let f = mul(fp, &vec![2, 0, 1], &mul(fp, &vec![4, 1], &vec![3, 1]));
        let parts = distinct_degree(fp, &f);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 1);
        assert_eq!(deg(&parts[0].1), 2);
        assert_eq!(parts[1].0, 2);
        assert_eq!(parts[1].1, vec![2, 0, 1]);
    }

    #[test]
    fn cantor_zassenhaus_recovers_linear_factors() {
        let fp = Fp::new(13);
        // (x-3)(x-5)(x-11) over F_13
        let f = mul(fp, &mul(fp, &vec![10, 1], &vec![8, 1]), &vec![2, 1]);
        let factors = factor_squarefree(fp, &f, 42);
        assert_eq!(factors, vec![vec![2, 1], vec![8, 1], vec![10, 1]]);
    }

    #[test]
    fn degree_pattern_counts_factor_degrees() {
        let fp = Fp::new(5);
        let f = mul(fp, &vec![2, 0, 1], &mul(fp, &vec![4, 1], &vec![3, 1]));
        assert_eq!(degree_pattern(fp, &f), vec![1, 1, 2]);
    }
}
