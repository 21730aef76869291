//! Exact arithmetic modulo n: factorization, totients, unit squares, primitive
//! roots and the admissibility predicate for the Paley-type graph G_n.
//!
//! Everything here targets desk-scale moduli (n up to roughly 10^6 or so);
//! factoring is plain trial division.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Canonical factorization of `n` as `(prime, exponent)` pairs in increasing
/// prime order. `factorize(1)` is the empty product.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

pub fn is_prime(n: u64) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `base^exp mod n` by square-and-multiply. Negative bases are reduced first.
pub fn mod_pow(base: i64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let n128 = n as u128;
    let mut b = (base as i128).rem_euclid(n as i128) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % n128;
        }
        b = b * b % n128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative inverse of `a` modulo `n`, if `a` is a unit.
pub fn mod_inverse(a: i64, n: u64) -> Option<u64> {
    let n = n as i128;
    let a = (a as i128).rem_euclid(n);
    let eg = a.extended_gcd(&n);
    (eg.gcd == 1).then(|| eg.x.rem_euclid(n) as u64)
}

pub fn is_unit(a: i64, n: u64) -> bool {
    (a.rem_euclid(n as i64) as u64).gcd(&n) == 1
}

/// Why `n` fails to be admissible, or `None` when it is admissible.
pub fn inadmissibility_reason(n: u64) -> Option<String> {
    if n < 3 {
        return Some("excluded (n must be >= 3)".to_string());
    }
    for (p, e) in factorize(n) {
        if p == 2 && e > 1 {
            return Some("4 divides n".to_string());
        }
        if p != 2 && p % 4 != 1 {
            return Some(format!("prime {p} ≡ {} mod 4", p % 4));
        }
    }
    None
}

/// True iff n >= 3 and n = 2^s · p_1^a_1 ⋯ p_k^a_k with s in {0, 1} and every
/// p_i ≡ 1 (mod 4); equivalently, -1 is the square of a unit mod n.
pub fn is_admissible(n: u64) -> bool {
    inadmissibility_reason(n).is_none()
}

/// Chinese remaindering of pairwise coprime congruences `x ≡ r (mod m)`.
pub fn crt(congruences: &[(u64, u64)]) -> (u64, u64) {
    congruences.iter().fold((0u64, 1u64), |(r, m), &(r2, m2)| {
        let (r, m, r2, m2) = (r as i128, m as i128, r2 as i128, m2 as i128);
        let eg = m.extended_gcd(&m2);
        debug_assert_eq!(eg.gcd, 1, "moduli must be coprime");
        let modulus = m * m2;
        let t = ((r2 - r) * eg.x).rem_euclid(m2);
        (((r + m * t).rem_euclid(modulus)) as u64, modulus as u64)
    })
}

/// Smallest x with x² ≡ -1 (mod n), built from the square roots of -1 modulo
/// each prime-power factor and combined by CRT over every sign choice.
pub fn sqrt_of_minus_one(n: u64) -> Result<u64> {
    if let Some(reason) = inadmissibility_reason(n) {
        return Err(if n < 3 {
            Error::Excluded(n)
        } else {
            Error::NotAdmissible { n, reason }
        });
    }
    let mut local_roots: Vec<(u64, u64)> = Vec::new();
    for (p, alpha) in factorize(n) {
        if p == 2 {
            continue;
        }
        let m = PrimePowerModulus::new(p, alpha)?;
        // g has order φ, so g^(φ/4) has order 4 and squares to -1.
        local_roots.push((mod_pow(m.g as i64, m.phi / 4, m.n), m.n));
    }
    let two = if n.is_multiple_of(2) {
        Some((1u64, 2u64))
    } else {
        None
    };
    let k = local_roots.len();
    let mut best = u64::MAX;
    for signs in 0u32..(1 << k) {
        let mut system: Vec<(u64, u64)> = local_roots
            .iter()
            .enumerate()
            .map(|(i, &(r, q))| {
                if signs >> i & 1 == 1 {
                    (q - r, q)
                } else {
                    (r, q)
                }
            })
            .collect();
        system.extend(two);
        best = best.min(crt(&system).0);
    }
    Ok(best)
}

/// The edge-difference set R = { x² mod n : gcd(x, n) = 1 }.
pub fn unit_squares(n: u64) -> BTreeSet<u64> {
    (1..n)
        .filter(|x| x.gcd(&n) == 1)
        .map(|x| ((x as u128 * x as u128) % n as u128) as u64)
        .collect()
}

/// True iff (Z/nZ)^* is cyclic, i.e. n ∈ {1, 2, 4, p^α, 2p^α} with p odd.
pub fn is_cyclic_unit_group(n: u64) -> bool {
    match factorize(n).as_slice() {
        [] => true,
        [(2, e)] => *e <= 2,
        [(p, _)] => *p != 2,
        [(2, 1), (_, _)] => true,
        _ => false,
    }
}

/// Checks that binom(p^(α-1)(p-1)/2, i) · p^i ≡ 0 (mod p^α) for 1 <= i <= α-1,
/// with exact big-integer binomials.
pub fn check_binomial_divisibility(p: u64, alpha: u32) -> bool {
    let p_big = BigUint::from(p);
    let modulus = p_big.pow(alpha);
    let top = p_big.pow(alpha.saturating_sub(1)) * BigUint::from((p - 1) / 2);
    let mut binom = BigUint::one();
    let mut p_pow = BigUint::one();
    for i in 1..alpha {
        // binom(top, i) = binom(top, i-1) · (top - i + 1) / i
        binom = binom * (&top - BigUint::from(i - 1)) / BigUint::from(i);
        p_pow *= &p_big;
        if !(&binom * &p_pow % &modulus).is_zero() {
            return false;
        }
    }
    true
}

/// A validated modulus n >= 3 with its factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Excluded(n));
        }
        Ok(Modulus {
            n,
            factors: factorize(n),
        })
    }

    /// Like [`Modulus::new`] but also rejects inadmissible n.
    pub fn admissible(n: u64) -> Result<Self> {
        let m = Modulus::new(n)?;
        match inadmissibility_reason(n) {
            None => Ok(m),
            Some(reason) => Err(Error::NotAdmissible { n, reason }),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Exponent of 2 in n.
    pub fn s(&self) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| *p == 2)
            .map_or(0, |&(_, e)| e)
    }

    /// Number of distinct odd prime factors.
    pub fn k(&self) -> u32 {
        self.factors.iter().filter(|(p, _)| *p != 2).count() as u32
    }

    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .fold(self.n, |acc, &(p, _)| acc / p * (p - 1))
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(self.n)
    }

    /// Constructive admissibility certificate: the smallest x with x² ≡ -1.
    pub fn sqrt_of_minus_one(&self) -> Result<u64> {
        sqrt_of_minus_one(self.n)
    }

    /// Returns the prime-power view when n = p^α with p ≡ 1 (mod 4).
    pub fn as_prime_power(&self) -> Option<PrimePowerModulus> {
        match self.factors.as_slice() {
            [(p, alpha)] if p % 4 == 1 => PrimePowerModulus::new(*p, *alpha).ok(),
            _ => None,
        }
    }
}

/// n = p^α with p ≡ 1 (mod 4), together with φ(n) and the smallest primitive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePowerModulus {
    p: u64,
    alpha: u32,
    n: u64,
    phi: u64,
    g: u64,
}

impl PrimePowerModulus {
    pub fn new(p: u64, alpha: u32) -> Result<Self> {
        validate_prime_one_mod_four(p)?;
        if alpha == 0 {
            return Err(Error::ZeroExponent);
        }
        let n = p.checked_pow(alpha).ok_or(Error::TooLarge {
            what: "p^alpha",
            value: u64::MAX,
            limit: u64::MAX,
        })?;
        let phi = n / p * (p - 1);
        let g = smallest_primitive_root(p, n, phi);
        Ok(PrimePowerModulus {
            p,
            alpha,
            n,
            phi,
            g,
        })
    }

    /// Parses n as p^α with p ≡ 1 (mod 4).
    pub fn from_n(n: u64) -> Result<Self> {
        match factorize(n).as_slice() {
            [(p, alpha)] if p % 4 == 1 => PrimePowerModulus::new(*p, *alpha),
            _ => Err(Error::NotPrimePower(n)),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn alpha(&self) -> u32 {
        self.alpha
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn phi(&self) -> u64 {
        self.phi
    }
    pub fn primitive_root(&self) -> u64 {
        self.g
    }

    /// p^(α-1), the number of residues in each class mod p.
    pub fn p_pow_alpha_minus_one(&self) -> u64 {
        self.n / self.p
    }
}

/// The smallest positive primitive root modulo p^α.
pub fn primitive_root(m: &PrimePowerModulus) -> u64 {
    m.primitive_root()
}

pub(crate) fn validate_prime_one_mod_four(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 1 {
        return Err(Error::NotOneMod4(p));
    }
    Ok(())
}

fn smallest_primitive_root(p: u64, n: u64, phi: u64) -> u64 {
    let mut qs: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    if n != p {
        qs.push(p);
    }
    (2..n)
        .find(|&g| g % p != 0 && qs.iter().all(|&q| mod_pow(g as i64, phi / q, n) != 1))
        .expect("p^alpha with odd prime p has a primitive root")
}
