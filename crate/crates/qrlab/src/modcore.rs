//! Modular arithmetic substrate: residue symbols, factorials, primitive
//! roots, modular square roots and the small domain types everything else
//! builds on.
//!
//! All moduli are odd primes that fit in a `u64`; intermediate products go
//! through `u128` so no operation can overflow.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Multiply mod m without overflow.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Binary exponentiation mod m.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` mod the prime `p` via Fermat.
#[inline]
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of 0 mod {p}");
    pow_mod(a, p - 2, p)
}

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub fn reduce_signed(a: i64, m: u64) -> u64 {
    let r = a.rem_euclid(m as i64);
    r as u64
}

/// Deterministic Miller-Rabin, valid for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `[lo, hi]` by a segmented sieve: base primes up to
/// sqrt(hi), then one window over the requested range, so memory stays
/// O(sqrt(hi) + range) no matter where the range sits.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let lo = lo.max(2);
    let root = hi.isqrt();
    let mut composite = vec![false; (root + 1) as usize];
    let mut base = Vec::new();
    for i in 2..=root as usize {
        if !composite[i] {
            base.push(i as u64);
            let mut j = i * i;
            while j <= root as usize {
                composite[j] = true;
                j += i;
            }
        }
    }
    let mut window = vec![true; (hi - lo + 1) as usize];
    for &p in &base {
        let mut m = (lo.div_ceil(p) * p).max(p * p);
        while m <= hi {
            window[(m - lo) as usize] = false;
            m += p;
        }
    }
    window
        .iter()
        .enumerate()
        .filter(|(_, &keep)| keep)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// A residue in `[0, p)` tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModInt {
    pub value: u64,
    pub modulus: u64,
}

impl ModInt {
    pub fn new(value: u64, modulus: u64) -> Self {
        ModInt {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_signed(value: i64, modulus: u64) -> Self {
        ModInt {
            value: reduce_signed(value, modulus),
            modulus,
        }
    }

    pub fn inv(self) -> ModInt {
        ModInt {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn pow(self, e: u64) -> ModInt {
        ModInt {
            value: pow_mod(self.value, e, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Is this residue 1 or -1?
    pub fn is_pm_one(self) -> bool {
        self.value == 1 || self.value + 1 == self.modulus
    }
}

impl std::ops::Mul for ModInt {
    type Output = ModInt;
    fn mul(self, rhs: ModInt) -> ModInt {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ModInt {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Add for ModInt {
    type Output = ModInt;
    fn add(self, rhs: ModInt) -> ModInt {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ModInt {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl std::ops::Neg for ModInt {
    type Output = ModInt;
    fn neg(self) -> ModInt {
        ModInt {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl std::fmt::Display for ModInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Exact Gaussian integer `re + im*i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub fn conj(self) -> GaussianInt {
        GaussianInt {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm(self) -> u64 {
        (self.re as i128 * self.re as i128 + self.im as i128 * self.im as i128) as u64
    }

    /// Reduce through the residue map i -> i_image, coefficients mod p.
    pub fn reduce_mod(self, p: u64, i_image: u64) -> ModInt {
        let re = reduce_signed(self.re, p);
        let im = reduce_signed(self.im, p);
        ModInt::new(re + mul_mod(im, i_image, p), p)
    }
}

impl std::ops::Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        let re = self.re as i128 * rhs.re as i128 - self.im as i128 * rhs.im as i128;
        let im = self.re as i128 * rhs.im as i128 + self.im as i128 * rhs.re as i128;
        GaussianInt {
            re: re as i64,
            im: im as i64,
        }
    }
}

impl std::fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im >= 0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

/// Element `x + y*s` of the quadratic extension F_p(s) with `s^2 = d`,
/// `d` a fixed nonresidue. `y = 0` embeds the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadExtElem {
    pub x: u64,
    pub y: u64,
    pub d: u64,
    pub p: u64,
}

impl QuadExtElem {
    pub fn new(x: u64, y: u64, d: u64, p: u64) -> Self {
        QuadExtElem {
            x: x % p,
            y: y % p,
            d: d % p,
            p,
        }
    }

    pub fn pow(self, mut e: u64) -> QuadExtElem {
        let mut acc = QuadExtElem {
            x: 1,
            y: 0,
            d: self.d,
            p: self.p,
        };
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl std::ops::Mul for QuadExtElem {
    type Output = QuadExtElem;
    fn mul(self, rhs: QuadExtElem) -> QuadExtElem {
        debug_assert_eq!(self.p, rhs.p);
        debug_assert_eq!(self.d, rhs.d);
        let p = self.p;
        let x = (mul_mod(self.x, rhs.x, p) + mul_mod(mul_mod(self.y, rhs.y, p), self.d, p)) % p;
        let y = (mul_mod(self.x, rhs.y, p) + mul_mod(self.y, rhs.x, p)) % p;
        QuadExtElem { x, y, d: self.d, p }
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    Ok(())
}

/// Legendre symbol (a/p) via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i32> {
    check_odd_prime(p)?;
    let r = reduce_signed(a, p);
    if r == 0 {
        return Ok(0);
    }
    let e = pow_mod(r, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Jacobi symbol (a/n) for odd n >= 1, by the reciprocity loop.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidModulus(n));
    }
    let mut a = reduce_signed(a, n);
    let mut n = n;
    let mut sign = 1i32;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Rational 4-th power residue symbol (a/p)_4 for p = 1 (mod 4).
///
/// Returns 1 exactly when a is a 4-th power mod p; everything else that is
/// coprime to p (quadratic nonresidues included) maps to -1.
pub fn quartic_symbol(a: i64, p: u64) -> Result<i32> {
    check_odd_prime(p)?;
    if p % 4 != 1 {
        return Err(Error::UnsupportedResidueClass {
            p,
            want: 1,
            modulus: 4,
        });
    }
    let r = reduce_signed(a, p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 4, p) == 1 {
        1
    } else {
        -1
    })
}

/// n! mod p by incremental product; n >= p gives 0.
pub fn factorial_mod(n: u64, p: u64) -> ModInt {
    if n >= p {
        return ModInt::new(0, p);
    }
    let mut acc = 1u64;
    for k in 2..=n {
        acc = mul_mod(acc, k, p);
    }
    ModInt::new(acc, p)
}

/// Factorials mod one prime, memoized so that repeated requests cost at
/// most a single pass up to p.
pub struct FactorialCache {
    p: u64,
    // checkpoint n -> n! mod p, always contains 0 -> 1
    seen: BTreeMap<u64, u64>,
}

impl FactorialCache {
    pub fn new(p: u64) -> Self {
        let mut seen = BTreeMap::new();
        seen.insert(0, 1);
        FactorialCache { p, seen }
    }

    pub fn get(&mut self, n: u64) -> ModInt {
        if n >= self.p {
            return ModInt::new(0, self.p);
        }
        let (&start, &val) = self.seen.range(..=n).next_back().expect("0 is seeded");
        let mut acc = val;
        for k in start + 1..=n {
            acc = mul_mod(acc, k, self.p);
        }
        self.seen.insert(n, acc);
        ModInt::new(acc, self.p)
    }
}

/// Boolean table of nonzero quadratic residues mod p, index t in [0, p).
pub fn quadratic_residue_table(p: u64) -> Vec<bool> {
    let mut t = vec![false; p as usize];
    for x in 1..=(p - 1) / 2 {
        t[mul_mod(x, x, p) as usize] = true;
    }
    t
}

/// Boolean table of nonzero 4-th power residues mod p.
pub fn fourth_power_table(p: u64) -> Vec<bool> {
    let mut t = vec![false; p as usize];
    for x in 1..=(p - 1) / 2 {
        let s = mul_mod(x, x, p);
        t[mul_mod(s, s, p) as usize] = true;
    }
    t
}

/// Inverses of 1..p-1 mod p in O(p) via the standard recurrence.
pub fn inverse_table(p: u64) -> Vec<u64> {
    let mut inv = vec![0u64; p as usize];
    if p > 1 {
        inv[1] = 1;
        for i in 2..p {
            inv[i as usize] = mul_mod(p - p / i, inv[(p % i) as usize], p);
        }
    }
    inv
}

/// r = #{ 0 < x < p/2 : (x/p)_4 = 1 } for p = 1 (mod 4).
pub fn count_fourth_power_residues_half(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    if p % 4 != 1 {
        return Err(Error::UnsupportedResidueClass {
            p,
            want: 1,
            modulus: 4,
        });
    }
    let table = fourth_power_table(p);
    Ok((1..=(p - 1) / 2).filter(|&x| table[x as usize]).count() as u64)
}

/// Tonelli-Shanks. Returns the canonical root x with x <= p - x, or None
/// for a nonresidue. sqrt_mod(0) = 0.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let x = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let mut q = p - 1;
        let s = q.trailing_zeros();
        q >>= s;
        let mut z = 2;
        while pow_mod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Some(x.min(p - x))
}

fn factor_trial(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest positive primitive root mod p.
pub fn smallest_primitive_root(p: u64) -> u64 {
    if p == 3 {
        return 2;
    }
    let prime_factors = factor_trial(p - 1);
    'g: for g in 2..p {
        for &q in &prime_factors {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

/// An odd prime together with the canonical data every character-level
/// computation depends on: its class mod 8, the smallest primitive root g,
/// and (for p = 1 mod 4) the square root of -1 realized as g^((p-1)/4).
///
/// Fixing the smallest g pins one residue-field embedding once and for
/// all, so every downstream table and sign is reproducible.
#[derive(Clone, Debug)]
pub struct PrimeContext {
    pub p: u64,
    pub residue_class: u8,
    pub g: u64,
    pub i_image: Option<u64>,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let g = smallest_primitive_root(p);
        let i_image = if p % 4 == 1 {
            Some(pow_mod(g, (p - 1) / 4, p))
        } else {
            None
        };
        Ok(PrimeContext {
            p,
            residue_class: (p % 8) as u8,
            g,
            i_image,
        })
    }

    pub fn require_class(&self, want: u64, modulus: u64) -> Result<()> {
        if self.p % modulus != want {
            return Err(Error::UnsupportedResidueClass {
                p: self.p,
                want,
                modulus,
            });
        }
        Ok(())
    }

    /// Discrete logs reduced mod 4: table[t] = k mod 4 where t = g^k,
    /// table[0] unused. One sweep of g-powers, no per-element logs.
    pub fn dlog4_table(&self) -> Vec<u8> {
        let p = self.p;
        let mut table = vec![0u8; p as usize];
        let mut t = 1u64;
        for k in 0..p - 1 {
            table[t as usize] = (k % 4) as u8;
            t = mul_mod(t, self.g, p);
        }
        table
    }
}
