//! Gauss sums as cyclotomic integers reduced mod a prime above p, and the
//! (zeta_p - 1)-adic expansion that verifies Stickelberger's congruence.
//!
//! An element sum c_j zeta^j is held as its length-p coefficient vector
//! mod p. Writing zeta = 1 + pi and expanding zeta^j = (1+pi)^j binomially
//! gives sum_k e_k pi^k with e_k = sum_j c_j binom(j,k); a prime above p
//! divides an integer exactly when p does, so testing e_k mod p reads off
//! the pi-adic valuation and the leading unit. The coefficient vector is
//! ambiguous up to adding multiples of (1,1,...,1), but that vector's
//! expansion coefficients binom(p, k+1) vanish mod p for k <= p-2, so
//! every e_k we ever report is well defined.

use crate::error::{Error, Result};
use crate::modcore::{inv_mod, mul_mod, pow_mod, FactorialCache, PrimeContext};

/// sum_j coeffs[j] * zeta_p^j with coefficients in [0, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycIntModP {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl CycIntModP {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), p as usize);
        debug_assert!(coeffs.iter().all(|&c| c < p));
        CycIntModP { p, coeffs }
    }

    pub fn add(&self, rhs: &CycIntModP) -> CycIntModP {
        debug_assert_eq!(self.p, rhs.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        CycIntModP { p: self.p, coeffs }
    }

    /// Product using zeta^p = 1 (cyclic convolution). The result is one
    /// valid coefficient vector for the product element.
    pub fn mul(&self, rhs: &CycIntModP) -> CycIntModP {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p as usize;
        let mut out = vec![0u64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = if i + j >= p { i + j - p } else { i + j };
                out[k] = (out[k] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        CycIntModP {
            p: self.p,
            coeffs: out,
        }
    }

    /// Canonical representative with coefficient 0 at zeta^0, removing the
    /// all-ones ambiguity so representations can be compared directly.
    pub fn canonicalize(&self) -> CycIntModP {
        let c0 = self.coeffs[0];
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| (c + self.p - c0) % self.p)
            .collect();
        CycIntModP { p: self.p, coeffs }
    }
}

/// Coefficients e_0..e_kmax of the formal expansion in powers of
/// pi = zeta_p - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiAdicExpansion {
    pub p: u64,
    pub kmax: usize,
    pub e: Vec<u64>,
}

/// Coefficient vector of G(omega^-m) = sum_t omega^-m(t) zeta^t, where
/// omega(g^k) realizes zeta_{p-1}^k as g^k mod p; so the coefficient at
/// t = g^k is g^(-mk) mod p.
pub fn gauss_sum_coeffs(ctx: &PrimeContext, m: u64) -> Result<CycIntModP> {
    let p = ctx.p;
    if m >= p - 1 {
        return Err(Error::InvalidArgument(format!(
            "character exponent m = {m} out of range [0, {})",
            p - 1
        )));
    }
    let mut coeffs = vec![0u64; p as usize];
    let g_inv_m = inv_mod(pow_mod(ctx.g, m, p), p);
    let mut t = 1u64;
    let mut w = 1u64;
    for _ in 0..p - 1 {
        coeffs[t as usize] = w;
        t = mul_mod(t, ctx.g, p);
        w = mul_mod(w, g_inv_m, p);
    }
    Ok(CycIntModP { p, coeffs })
}

/// e_k = sum_j c_j binom(j,k) mod p for k <= kmax, streaming one Pascal
/// row per j so no binomial is ever formed from factorials of j >= p.
pub fn pi_expansion(x: &CycIntModP, kmax: usize) -> PiAdicExpansion {
    let p = x.p;
    debug_assert!((kmax as u64) < p);
    let mut e = vec![0u64; kmax + 1];
    // row[k] = binom(j, k) mod p, updated in place as j advances
    let mut row = vec![0u64; kmax + 1];
    row[0] = 1;
    for (j, &c) in x.coeffs.iter().enumerate() {
        if j > 0 {
            for k in (1..=kmax.min(j)).rev() {
                row[k] = (row[k] + row[k - 1]) % p;
            }
        }
        if c != 0 {
            for k in 0..=kmax {
                e[k] = (e[k] + mul_mod(c, row[k], p)) % p;
            }
        }
    }
    PiAdicExpansion { p, kmax, e }
}

/// Outcome of one Stickelberger check: the pi-adic valuation saw zeros
/// below r, the unit coefficient e_r, and the expected -1/r! mod p.
#[derive(Clone, Debug)]
pub struct StickelbergerReport {
    pub p: u64,
    pub r: u64,
    pub valuation_ok: bool,
    pub unit_value: u64,
    pub expected: u64,
}

/// Check G(omega^-r) / (zeta_p - 1)^r = -1/r! (mod p-above-p) for one r:
/// e_k = 0 mod p for k < r and e_r = -(r!)^-1 mod p.
pub fn stickelberger_check(ctx: &PrimeContext, r: u64) -> Result<StickelbergerReport> {
    let p = ctx.p;
    if r > p - 2 {
        return Err(Error::InvalidArgument(format!(
            "r = {r} out of range [0, {}]",
            p - 2
        )));
    }
    let coeffs = gauss_sum_coeffs(ctx, r)?;
    let exp = pi_expansion(&coeffs, r as usize);
    let valuation_ok = exp.e[..r as usize].iter().all(|&e| e == 0);
    let unit_value = exp.e[r as usize];
    let mut fact = FactorialCache::new(p);
    let expected = (-fact.get(r).inv()).value;
    if !valuation_ok || unit_value != expected {
        return Err(Error::IdentityViolation {
            p,
            what: format!(
                "Stickelberger at r = {r}: e = {:?}, expected unit {expected}",
                exp.e
            ),
        });
    }
    Ok(StickelbergerReport {
        p,
        r,
        valuation_ok,
        unit_value,
        expected,
    })
}

/// The default r-set scanned per prime: low valuations plus the quartic
/// and quadratic character exponents.
pub fn default_r_set(p: u64) -> Vec<u64> {
    let mut set = vec![0, 1, 2, (p - 1) / 4, (p - 1) / 2];
    set.sort_unstable();
    set.dedup();
    set
}
