//! Clique counts in G_{p^α}: bitset brute-force oracles for triangles and
//! 4-cliques, the closed forms K3 and K4, the Evans–Pulham–Sheehan formula
//! at α = 1, and the full ledger of intermediate quantities behind K4.

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{jacobi_k, jacobi_sum, CharacterFamily};
use crate::error::{ensure_eq, Error, Result};
use crate::graph::{bit_indices, Graph};
use crate::residue::{validate_prime_one_mod_four, PrimePowerModulus};

/// Largest p^α accepted by the O(n²) enumerations.
pub const ENUMERATION_LIMIT: u64 = 2000;

/// Largest p^α for which [`k4_formula`] sums J(ψ,χ) directly; above it the
/// α = 1 sum is lifted by p^(α-1).
pub const DIRECT_JACOBI_LIMIT: u64 = 100_000;

fn and_popcount(a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as u64)
        .sum()
}

/// Number of triangles: Σ over edges of |N(u) ∩ N(v)|, divided by 3.
pub fn count_triangles_brute(g: &Graph) -> BigUint {
    let total: u64 = (0..g.vertex_count())
        .into_par_iter()
        .map(|u| {
            let ru = g.row(u);
            g.neighbors(u)
                .filter(|&v| v > u)
                .map(|v| and_popcount(ru, g.row(v)))
                .sum::<u64>()
        })
        .sum();
    debug_assert_eq!(total % 3, 0);
    BigUint::from(total / 3)
}

/// Number of 4-cliques: for each edge uv, the edges inside the common
/// neighbourhood N(u) ∩ N(v); every K4 is seen from its 6 edges.
pub fn count_k4_brute(g: &Graph) -> BigUint {
    let words = g.words_per_row();
    let total: u64 = (0..g.vertex_count())
        .into_par_iter()
        .map_init(
            || vec![0u64; words],
            |common, u| {
                let ru = g.row(u);
                let mut acc = 0u64;
                for v in g.neighbors(u).filter(|&v| v > u) {
                    for ((c, a), b) in common.iter_mut().zip(ru).zip(g.row(v)) {
                        *c = a & b;
                    }
                    // each inner edge counted from both endpoints
                    let twice: u64 = bit_indices(common)
                        .map(|w| and_popcount(g.row(w), common))
                        .sum();
                    acc += twice / 2;
                }
                acc
            },
        )
        .sum();
    debug_assert_eq!(total % 6, 0);
    BigUint::from(total / 6)
}

fn check_alpha(alpha: u32) -> Result<()> {
    if alpha == 0 {
        Err(Error::ZeroExponent)
    } else {
        Ok(())
    }
}

fn exact_div(identity: &'static str, num: BigInt, den: u64) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::violated(identity, "remainder 0", r))
    }
}

fn to_nonnegative(identity: &'static str, v: BigInt) -> Result<BigUint> {
    v.to_biguint()
        .ok_or_else(|| Error::violated(identity, "nonnegative value", v))
}

/// K3(G_{p^α}) = p^(3α-2)(p-1)(p-5)/48.
pub fn k3_formula(p: u64, alpha: u32) -> Result<BigUint> {
    validate_prime_one_mod_four(p)?;
    check_alpha(alpha)?;
    let pb = BigInt::from(p);
    let num = pb.pow(3 * alpha - 2) * (p - 1) * (p - 5);
    to_nonnegative("K3 >= 0", exact_div("48 | K3 numerator", num, 48)?)
}

/// J(ψ, χ)² + conj(J(ψ, χ))² modulo p^α for the canonical ψ, as a big integer.
pub fn jacobi_k_for(p: u64, alpha: u32) -> Result<BigInt> {
    validate_prime_one_mod_four(p)?;
    check_alpha(alpha)?;
    let direct = p.checked_pow(alpha).filter(|&n| n <= DIRECT_JACOBI_LIMIT);
    let level = if direct.is_some() { alpha } else { 1 };
    let fam = CharacterFamily::new(&PrimePowerModulus::new(p, level)?)?;
    let k = BigInt::from(jacobi_k(jacobi_sum(&fam.quartic, &fam.quadratic)?));
    Ok(if direct.is_some() {
        k
    } else {
        k * BigInt::from(p).pow(2 * alpha - 2)
    })
}

/// K4(G_{p^α}) = p^(2α-1)(p-1)[p^(2α-2)((p-9)² - 2p) + J² + conj(J)²]/1536.
pub fn k4_formula(p: u64, alpha: u32) -> Result<BigUint> {
    let k = jacobi_k_for(p, alpha)?;
    let pb = BigInt::from(p);
    let pi = p as i64;
    let bracket = pb.pow(2 * alpha - 2) * ((pi - 9) * (pi - 9) - 2 * pi) + k;
    let num = pb.pow(2 * alpha - 1) * (p - 1) * bracket;
    to_nonnegative("K4 >= 0", exact_div("1536 | K4 numerator", num, 1536)?)
}

/// The representation p = a² + b² with a even, both positive.
pub fn two_squares_even_odd(p: u64) -> Result<(u64, u64)> {
    validate_prime_one_mod_four(p)?;
    let mut a = 2u64;
    while a * a < p {
        let rest = p - a * a;
        let b = Roots::sqrt(&rest);
        if b * b == rest {
            return Ok((a, b));
        }
        a += 2;
    }
    Err(Error::violated(
        "p = a^2 + b^2 with a even",
        "a representation",
        "none",
    ))
}

/// K4(G(p)) = p(p-1)((p-9)² - 4a²)/(2⁹·3) with p = a² + b², a even.
pub fn evans_k4(p: u64) -> Result<BigUint> {
    let (a, _) = two_squares_even_odd(p)?;
    let (pi, ai) = (p as i64, a as i64);
    let num = BigInt::from(pi) * (pi - 1) * ((pi - 9) * (pi - 9) - 4 * ai * ai);
    to_nonnegative(
        "Evans K4 >= 0",
        exact_div("1536 | Evans numerator", num, 1536)?,
    )
}

/// Every intermediate quantity in the evaluation of K4(G_{p^α}).
///
/// X = {(x, y) : p ∤ x, y, 1-x², 1-y², x²-y²} splits into A_1..A_8 by the
/// signs of (χ(1-x²), χ(1-y²), χ(x²-y²)), ordered +++ ++- +-+ +-- -++ -+- --+ ---.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Trace {
    pub p: u64,
    pub alpha: u32,
    /// |A_1 ∪ A_2|
    pub a_count: i64,
    /// |A_3 ∪ A_4|
    pub b_count: i64,
    pub beta: [i64; 8],
    pub s: i64,
    pub s0: i64,
    pub i_sum: i64,
    pub j_sum: i64,
    pub k_sum: i64,
    /// Triangles through 1 in the graph induced on the unit squares.
    pub f: i64,
    pub k4: BigUint,
}

fn guard(m: &PrimePowerModulus) -> Result<()> {
    if m.n() > ENUMERATION_LIMIT {
        Err(Error::TooLarge {
            what: "p^alpha",
            value: m.n(),
            limit: ENUMERATION_LIMIT,
        })
    } else {
        Ok(())
    }
}

struct SSums {
    s: i64,
    s0: i64,
    beta: [i64; 8],
}

fn s_sums(fam: &CharacterFamily) -> SSums {
    let m = fam.modulus();
    let (n, p) = (m.n() as i64, m.p() as i64);
    let chi = |v: i64| fam.quadratic.sign(v);
    let one_minus_sq: Vec<i64> = (0..n).map(|x| (1 - x * x).rem_euclid(n)).collect();
    let sq: Vec<i64> = (0..n).map(|x| x * x % n).collect();
    let (mut s, mut s0, mut beta) = (0i64, 0i64, [0i64; 8]);
    for x in 0..n {
        let u = one_minus_sq[x as usize];
        for y in 0..n {
            let v = one_minus_sq[y as usize];
            let w = (sq[x as usize] - sq[y as usize]).rem_euclid(n);
            let value = chi(u * v % n * w % n);
            s += value;
            let in_x = [x, y, u, v, w].iter().all(|t| t % p != 0);
            if in_x {
                s0 += value;
                let idx =
                    (chi(u) < 0) as usize * 4 + (chi(v) < 0) as usize * 2 + (chi(w) < 0) as usize;
                beta[idx] += 1;
            }
        }
    }
    SSums { s, s0, beta }
}

/// (S, S0): S sums χ((1-x²)(1-y²)(x²-y²)) over all pairs, S0 over X only.
/// Checks S0 = S + 4p^(2α-2) and S = 2p^(2α-2) + J² + conj(J)².
pub fn lemma_s_pair(fam: &CharacterFamily) -> Result<(i64, i64)> {
    let m = fam.modulus();
    guard(m)?;
    let big_p = (m.p_pow_alpha_minus_one() as i64).pow(2);
    let SSums { s, s0, .. } = s_sums(fam);
    ensure_eq("S0 = S + 4p^(2alpha-2)", s + 4 * big_p, s0)?;
    let k = jacobi_k(jacobi_sum(&fam.quartic, &fam.quadratic)?);
    ensure_eq("S = 2p^(2alpha-2) + K", 2 * big_p + k, s)?;
    Ok((s, s0))
}

/// Enumerates every intermediate of K4(G_{p^α}) and checks all relations
/// between them. Requires p^α <= [`ENUMERATION_LIMIT`].
pub fn theorem2_trace(p: u64, alpha: u32) -> Result<Theorem2Trace> {
    check_alpha(alpha)?;
    validate_prime_one_mod_four(p)?;
    if p.checked_pow(alpha).is_none_or(|n| n > ENUMERATION_LIMIT) {
        return Err(Error::TooLarge {
            what: "p^alpha",
            value: p.saturating_pow(alpha),
            limit: ENUMERATION_LIMIT,
        });
    }
    let m = PrimePowerModulus::new(p, alpha)?;
    let fam = CharacterFamily::new(&m)?;
    let (n, pi) = (m.n() as i64, p as i64);
    let chi = |v: i64| fam.quadratic.sign(v);

    let SSums { s, s0, beta } = s_sums(&fam);

    let (mut i_sum, mut j_sum, mut k_sum) = (0i64, 0i64, 0i64);
    for x in (1..n).filter(|x| x % pi != 0) {
        for y in (1..n).filter(|y| y % pi != 0) {
            let base =
                (1 - x).rem_euclid(n) * (1 - y).rem_euclid(n) % n * (y - x).rem_euclid(n) % n;
            i_sum += chi(base);
            let with_x = base * x % n;
            j_sum += chi(with_x);
            k_sum += chi(with_x * y % n);
        }
    }

    let trace_f = beta[0] / 8;
    let k4 = BigInt::from(p).pow(2 * alpha - 1) * (p - 1) * trace_f;
    let trace = Theorem2Trace {
        p,
        alpha,
        a_count: beta[0] + beta[1],
        b_count: beta[2] + beta[3],
        beta,
        s,
        s0,
        i_sum,
        j_sum,
        k_sum,
        f: trace_f,
        k4: to_nonnegative("K4 >= 0", exact_div("24 | p^(2alpha-1)(p-1)f", k4, 24)?)?,
    };
    trace.verify(&fam)?;
    Ok(trace)
}

impl Theorem2Trace {
    fn verify(&self, fam: &CharacterFamily) -> Result<()> {
        let p = self.p as i64;
        let big_p = p.pow(2 * (self.alpha - 1));
        let b = &self.beta;
        let (a, bb) = (self.a_count, self.b_count);

        ensure_eq(
            "A = p^(2alpha-2)(p-5)(p-9)/4",
            big_p * (p - 5) * (p - 9) / 4,
            a,
        )?;
        ensure_eq(
            "B = p^(2alpha-2)(p-5)(p-1)/4",
            big_p * (p - 5) * (p - 1) / 4,
            bb,
        )?;
        ensure_eq("beta1 + beta2 = A", a, b[0] + b[1])?;
        ensure_eq("beta1 + beta3 = A", a, b[0] + b[2])?;
        ensure_eq("beta3 + beta4 = B", bb, b[2] + b[3])?;
        ensure_eq("beta1 + beta5 = A", a, b[0] + b[4])?;
        ensure_eq("beta2 + beta6 = B", bb, b[1] + b[5])?;
        ensure_eq("beta5 + beta7 = B", bb, b[4] + b[6])?;
        ensure_eq("beta7 + beta8 = B", bb, b[6] + b[7])?;
        ensure_eq(
            "S0 = beta1 - beta2 - beta3 + beta4 - beta5 + beta6 + beta7 - beta8",
            b[0] - b[1] - b[2] + b[3] - b[4] + b[5] + b[6] - b[7],
            self.s0,
        )?;
        ensure_eq("S0 = S + 4p^(2alpha-2)", self.s + 4 * big_p, self.s0)?;
        ensure_eq("I = 2p^(2alpha-2)", 2 * big_p, self.i_sum)?;
        ensure_eq("J = 2p^(2alpha-2)", 2 * big_p, self.j_sum)?;
        ensure_eq(
            "S = -4p^(2alpha-2) + I + 2J + K",
            -4 * big_p + self.i_sum + 2 * self.j_sum + self.k_sum,
            self.s,
        )?;
        ensure_eq("S = 2p^(2alpha-2) + K", 2 * big_p + self.k_sum, self.s)?;
        let j = jacobi_sum(&fam.quartic, &fam.quadratic)?;
        ensure_eq("K = J(psi,chi)^2 + conj(J)^2", jacobi_k(j), self.k_sum)?;
        ensure_eq("8 | beta1", 0, b[0] % 8)?;
        ensure_eq("f = beta1 / 8", b[0], 8 * self.f)?;
        ensure_eq(
            "64f = S0 - p^(2alpha-2)(p-5)(15-p)",
            self.s0 - big_p * (p - 5) * (15 - p),
            64 * self.f,
        )?;
        ensure_eq(
            "64f = p^(2alpha-2)(p^2-20p+81) + K",
            big_p * (p * p - 20 * p + 81) + self.k_sum,
            64 * self.f,
        )?;
        let k4 = BigInt::from(self.p).pow(2 * self.alpha - 1) * (self.p - 1) * self.f;
        ensure_eq(
            "k4 = p^(2alpha-1)(p-1)f/24",
            k4,
            BigInt::from(self.k4.clone()) * 24,
        )?;
        Ok(())
    }

    /// `k4` as u64 when it fits; convenient for reporting.
    pub fn k4_u64(&self) -> Option<u64> {
        self.k4.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paley(n: u64) -> Graph {
        Graph::paley(n).unwrap()
    }

    #[test]
    fn triangle_brute_examples() {
        assert_eq!(count_triangles_brute(&paley(5)), BigUint::from(0u32));
        assert_eq!(count_triangles_brute(&paley(13)), BigUint::from(26u32));
        assert_eq!(count_triangles_brute(&paley(25)), BigUint::from(0u32));
    }

    #[test]
    fn k4_brute_examples() {
        assert_eq!(count_k4_brute(&paley(13)), BigUint::from(0u32));
        assert_eq!(count_k4_brute(&paley(17)), BigUint::from(0u32));
        assert_eq!(count_k4_brute(&paley(29)), BigUint::from(203u32));
        assert_eq!(count_k4_brute(&Graph::complete(6)), BigUint::from(15u32));
    }

    #[test]
    fn k3_formula_examples() {
        assert_eq!(k3_formula(5, 3), Ok(BigUint::from(0u32)));
        assert_eq!(k3_formula(13, 1), Ok(BigUint::from(26u32)));
        assert_eq!(k3_formula(13, 2), Ok(BigUint::from(57122u32)));
        assert_eq!(k3_formula(7, 1), Err(Error::NotOneMod4(7)));
        assert_eq!(k3_formula(13, 0), Err(Error::ZeroExponent));
    }

    #[test]
    fn k4_formula_examples() {
        assert_eq!(k4_formula(13, 1), Ok(BigUint::from(0u32)));
        assert_eq!(k4_formula(29, 1), Ok(BigUint::from(203u32)));
        assert_eq!(k4_formula(5, 2), Ok(BigUint::from(0u32)));
        assert_eq!(k4_formula(11, 1), Err(Error::NotOneMod4(11)));
    }

    #[test]
    fn k4_formula_lifted_branch_matches_direct() {
        // 5^8 = 390625 is above DIRECT_JACOBI_LIMIT, 5^7 is below
        assert!(5u64.pow(8) > DIRECT_JACOBI_LIMIT && 5u64.pow(7) <= DIRECT_JACOBI_LIMIT);
        let direct = jacobi_k_for(5, 7).unwrap();
        let lifted = jacobi_k_for(5, 8).unwrap();
        assert_eq!(lifted, direct * 25);
    }

    #[test]
    fn evans_examples() {
        assert_eq!(two_squares_even_odd(13), Ok((2, 3)));
        assert_eq!(two_squares_even_odd(37), Ok((6, 1)));
        assert_eq!(evans_k4(13), Ok(BigUint::from(0u32)));
        assert_eq!(evans_k4(29), Ok(BigUint::from(203u32)));
        assert_eq!(evans_k4(37), Ok(BigUint::from(555u32)));
        assert_eq!(evans_k4(19), Err(Error::NotOneMod4(19)));
    }

    #[test]
    fn trace_examples() {
        let t = theorem2_trace(13, 1).unwrap();
        assert_eq!((t.a_count, t.b_count, t.f), (8, 24, 0));
        assert_eq!(t.k4, BigUint::from(0u32));

        let t = theorem2_trace(29, 1).unwrap();
        assert_eq!(t.f, 6);
        assert_eq!(t.k4, BigUint::from(203u32));

        let t = theorem2_trace(5, 2).unwrap();
        assert_eq!((t.a_count, t.b_count, t.f), (0, 0, 0));
        assert!(t.k4.is_zero());
    }

    #[test]
    fn trace_guard() {
        assert!(matches!(
            theorem2_trace(5, 5),
            Err(Error::TooLarge { value: 3125, .. })
        ));
        assert!(matches!(
            theorem2_trace(13, 40),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn lemma_s_pair_examples() {
        let fam = |p, a| CharacterFamily::new(&PrimePowerModulus::new(p, a).unwrap()).unwrap();
        assert_eq!(lemma_s_pair(&fam(5, 1)), Ok((-4, 0)));
        let (s, s0) = lemma_s_pair(&fam(13, 1)).unwrap();
        assert_eq!(s0, s + 4);
        let (s, s0) = lemma_s_pair(&fam(5, 2)).unwrap();
        assert_eq!(s0, s + 100);
    }
}
