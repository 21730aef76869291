//! Dirichlet characters modulo p^α with p ≡ 1 (mod 4): the trivial character ε,
//! the quadratic character χ and a quartic character ψ, all with exact
//! Gaussian-integer values, plus the character-sum evaluators used by the
//! clique counts.
//!
//! Every evaluator computes its sum by direct enumeration and then checks the
//! known closed form, returning [`Error::IdentityViolated`] on disagreement.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{ensure_eq, Error, Result};
use crate::residue::{mod_inverse, mod_pow, unit_squares, PrimePowerModulus};

/// An exact Gaussian integer `re + im·i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt::new(0, 0);
    pub const ONE: GaussianInt = GaussianInt::new(1, 0);
    pub const I: GaussianInt = GaussianInt::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, k: i64) -> Self {
        GaussianInt::new(self.re * k, self.im * k)
    }

    pub fn is_zero(self) -> bool {
        self == GaussianInt::ZERO
    }

    /// i^k for any integer k.
    pub fn i_pow(k: u64) -> Self {
        match k % 4 {
            0 => GaussianInt::new(1, 0),
            1 => GaussianInt::new(0, 1),
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, -1),
        }
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for GaussianInt {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussianInt::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Sum for GaussianInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GaussianInt::ZERO, Add::add)
    }
}

/// Formats as `a+bi` / `a-bi` with no spaces.
impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A Dirichlet character mod p^α with its full value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    modulus: PrimePowerModulus,
    order: u32,
    table: Vec<GaussianInt>,
}

impl Character {
    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn value(&self, x: i64) -> GaussianInt {
        self.table[x.rem_euclid(self.modulus.n() as i64) as usize]
    }

    /// Value of a real-valued (order 1 or 2) character as an integer.
    pub fn sign(&self, x: i64) -> i64 {
        debug_assert!(self.order <= 2, "sign() on a complex character");
        self.value(x).re
    }

    pub fn conj(&self) -> Character {
        Character {
            modulus: self.modulus,
            order: self.order,
            table: self.table.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Σ_{x mod n} value(x).
    pub fn total(&self) -> GaussianInt {
        self.table.iter().copied().sum()
    }
}

/// ε: 1 on units, 0 elsewhere.
pub fn trivial_char(m: &PrimePowerModulus) -> Character {
    let p = m.p() as usize;
    let table = (0..m.n() as usize)
        .map(|x| {
            if x % p == 0 {
                GaussianInt::ZERO
            } else {
                GaussianInt::ONE
            }
        })
        .collect();
    Character {
        modulus: *m,
        order: 1,
        table,
    }
}

/// χ(a) = a^(φ(n)/2) mod n read as ±1, cross-checked against unit-square
/// membership.
pub fn quadratic_char(m: &PrimePowerModulus) -> Result<Character> {
    let n = m.n();
    let p = m.p();
    let squares = unit_squares(n);
    let mut table = vec![GaussianInt::ZERO; n as usize];
    for a in 1..n {
        if a % p == 0 {
            continue;
        }
        let v = mod_pow(a as i64, m.phi() / 2, n);
        let sign = if v == 1 {
            1
        } else if v == n - 1 {
            -1
        } else {
            return Err(Error::MappingFailure { n, a, value: v });
        };
        let by_membership = if squares.contains(&a) { 1 } else { -1 };
        ensure_eq("chi2 = chi3 on cyclic moduli", by_membership, sign)?;
        table[a as usize] = GaussianInt::new(sign, 0);
    }
    Ok(Character {
        modulus: *m,
        order: 2,
        table,
    })
}

/// ψ(g^t) = i^t for the smallest primitive root g; filled by one sweep over
/// the powers of g.
pub fn quartic_char(m: &PrimePowerModulus) -> Character {
    let n = m.n();
    let g = m.primitive_root();
    let mut table = vec![GaussianInt::ZERO; n as usize];
    let mut x = 1u64;
    for t in 0..m.phi() {
        table[x as usize] = GaussianInt::i_pow(t);
        x = x * g % n;
    }
    Character {
        modulus: *m,
        order: 4,
        table,
    }
}

/// The three characters every evaluator needs, built once per modulus.
#[derive(Debug, Clone)]
pub struct CharacterFamily {
    pub trivial: Character,
    pub quadratic: Character,
    pub quartic: Character,
}

impl CharacterFamily {
    pub fn new(m: &PrimePowerModulus) -> Result<Self> {
        Ok(CharacterFamily {
            trivial: trivial_char(m),
            quadratic: quadratic_char(m)?,
            quartic: quartic_char(m),
        })
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        self.quadratic.modulus()
    }

    fn chi(&self, x: i64) -> i64 {
        self.quadratic.sign(x)
    }
}

/// The Jacobi symbol (a/n) for odd n >= 1.
///
/// # Panics
/// If `n` is even or zero.
pub fn jacobi_symbol(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus, got {n}");
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// J(ψ, χ) = Σ_{x mod n} ψ(x) χ(1 - x).
pub fn jacobi_sum(psi: &Character, chi: &Character) -> Result<GaussianInt> {
    let (left, right) = (psi.modulus().n(), chi.modulus().n());
    if left != right {
        return Err(Error::ModulusMismatch { left, right });
    }
    let n = left as i64;
    Ok((0..n).map(|x| psi.value(x) * chi.value(1 - x)).sum())
}

/// Σ_{x = 0}^{p-1} ψ(x) χ(1 - x) using the level-α characters on
/// representatives mod p. Both characters factor through reduction mod p, so
/// p^(α-1) times this equals the full Jacobi sum.
pub fn reduced_jacobi_sum(fam: &CharacterFamily) -> GaussianInt {
    let p = fam.modulus().p() as i64;
    (0..p)
        .map(|x| fam.quartic.value(x) * fam.quadratic.value(1 - x))
        .sum()
}

/// K from a Jacobi sum: J² + conj(J)², always a rational integer.
pub fn jacobi_k(j: GaussianInt) -> i64 {
    let k = j * j + j.conj() * j.conj();
    debug_assert_eq!(k.im, 0);
    k.re
}

/// Σ_{x unit} χ(x² - a); checked against -(1 + χ(a))·p^(α-1).
pub fn sum_chi_x2_minus_a(fam: &CharacterFamily, a: i64) -> Result<i64> {
    let m = fam.modulus();
    let (n, p) = (m.n() as i64, m.p() as i64);
    if a.rem_euclid(p) == 0 {
        return Err(Error::NonUnitShift { n: m.n(), a });
    }
    let sum: i64 = (1..n)
        .filter(|x| x % p != 0)
        .map(|x| fam.chi((x * x - a).rem_euclid(n)))
        .sum();
    let closed = -(1 + fam.chi(a)) * m.p_pow_alpha_minus_one() as i64;
    ensure_eq("sum chi(x^2 - a) = -(1 + chi(a)) p^(alpha-1)", closed, sum)?;
    Ok(sum)
}

/// |{x : p ∤ x, p ∤ 1 - x², χ(1 - x²) = 1}|; checked against p^(α-1)(p-5)/2.
pub fn count_chi_one_minus_x2(fam: &CharacterFamily) -> Result<u64> {
    let m = fam.modulus();
    let (n, p) = (m.n() as i64, m.p() as i64);
    let count = (0..n)
        .filter(|&x| {
            let v = (1 - x * x).rem_euclid(n);
            x % p != 0 && v % p != 0 && fam.chi(v) == 1
        })
        .count() as u64;
    let closed = m.p_pow_alpha_minus_one() * (m.p() - 5) / 2;
    ensure_eq("#{chi(1 - x^2) = 1} = p^(alpha-1)(p-5)/2", closed, count)?;
    Ok(count)
}

/// The four-case closed form for Σ_x χ((x - a)(x - b)).
pub fn shifted_pair_closed_form(m: &PrimePowerModulus, a: i64, b: i64) -> i64 {
    let p = m.p() as i64;
    let q = m.p_pow_alpha_minus_one() as i64;
    let full = q * (p - 1);
    match (a.rem_euclid(p) == 0, b.rem_euclid(p) == 0) {
        (true, true) => full,
        (true, false) | (false, true) => -q,
        (false, false) => {
            let a_inv = mod_inverse(a, m.n()).expect("a is a unit") as i64;
            let n = m.n() as i64;
            let c = (1 - (b.rem_euclid(n) * a_inv) % n).rem_euclid(n);
            if c % p == 0 {
                full
            } else {
                -q
            }
        }
    }
}

/// Σ_{x mod n} χ((x - a)(x - b)), checked against the four-case closed form.
pub fn sum_chi_shifted_pair(fam: &CharacterFamily, a: i64, b: i64) -> Result<i64> {
    let m = fam.modulus();
    let n = m.n() as i64;
    let (a, b) = (a.rem_euclid(n), b.rem_euclid(n));
    let sum: i64 = (0..n)
        .map(|x| fam.chi(((x - a).rem_euclid(n) * (x - b).rem_euclid(n)) % n))
        .sum();
    ensure_eq(
        "sum chi((x-a)(x-b)) four-case form",
        shifted_pair_closed_form(m, a, b),
        sum,
    )?;
    Ok(sum)
}

/// K = Σ_{x,y units} χ((1-x)(1-y)(y-x)xy) by double enumeration; checked
/// against J(ψ,χ)² + conj(J(ψ,χ))².
pub fn lemma_k_double_sum(fam: &CharacterFamily) -> Result<i64> {
    let m = fam.modulus();
    let (n, p) = (m.n() as i64, m.p() as i64);
    let mut k = 0i64;
    for x in (1..n).filter(|x| x % p != 0) {
        let ax = ((1 - x).rem_euclid(n) * x) % n;
        for y in (1..n).filter(|y| y % p != 0) {
            let ay = ((1 - y).rem_euclid(n) * y) % n;
            let v = (ax * ay % n) * (y - x).rem_euclid(n) % n;
            k += fam.chi(v);
        }
    }
    let j = jacobi_sum(&fam.quartic, &fam.quadratic)?;
    ensure_eq("K = J(psi,chi)^2 + conj(J)^2", jacobi_k(j), k)?;
    Ok(k)
}
