//! The p = a^2 + 16 b^2 decomposition, exact Jacobi sums for the quartic
//! character, the Jacobi-sum congruence, the sign constant C_p and the
//! 2-is-a-fourth-power criterion.

use crate::error::{Error, Result};
use crate::modcore::{
    self, inv_mod, mul_mod, quartic_symbol, reduce_signed, sqrt_mod, FactorialCache, GaussianInt,
    ModInt, PrimeContext,
};

/// p = a^2 + 16 b^2 with the sign of a normalized to a = -1 (mod 4);
/// b is reported as |b| (only its parity ever matters downstream).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuarticDecomposition {
    pub p: u64,
    pub a: i64,
    pub b_abs: u64,
}

/// The order-4 character chi_pi with chi_pi(g) = -i, stored as the table
/// of exponents k mod 4 over t = g^k. chi_pi(t) = (-i)^exponent(t).
pub struct QuarticCharacter {
    pub ctx: PrimeContext,
    exps: Vec<u8>,
}

impl QuarticCharacter {
    pub fn new(ctx: &PrimeContext) -> Result<Self> {
        ctx.require_class(1, 4)?;
        Ok(QuarticCharacter {
            ctx: ctx.clone(),
            exps: ctx.dlog4_table(),
        })
    }

    /// Exponent k mod 4 with chi(t) = (-i)^k, or None at t = 0 mod p.
    pub fn exponent(&self, t: u64) -> Option<u8> {
        let r = (t % self.ctx.p) as usize;
        if r == 0 {
            None
        } else {
            Some(self.exps[r])
        }
    }

    /// chi(t) as an exact Gaussian integer in {1, -i, -1, i, 0}.
    pub fn value(&self, t: u64) -> GaussianInt {
        match self.exponent(t) {
            None => GaussianInt::new(0, 0),
            Some(0) => GaussianInt::new(1, 0),
            Some(1) => GaussianInt::new(0, -1),
            Some(2) => GaussianInt::new(-1, 0),
            Some(3) => GaussianInt::new(0, 1),
            Some(_) => unreachable!(),
        }
    }
}

fn isqrt_u64(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Cornacchia for p = x^2 + y^2, seeded with sqrt(-1) mod p.
fn two_squares(p: u64) -> Result<(u64, u64)> {
    let r0 = sqrt_mod(p - 1, p)
        .ok_or_else(|| Error::Internal(format!("-1 must be a square mod {p}")))?;
    // take the larger root so the Euclidean descent starts above sqrt(p)
    let mut a = p;
    let mut b = r0.max(p - r0);
    let bound = isqrt_u64(p);
    while b > bound {
        let t = a % b;
        a = b;
        b = t;
    }
    let y2 = p - b * b;
    let y = isqrt_u64(y2);
    if y * y != y2 {
        return Err(Error::Internal(format!("cornacchia failed at p = {p}")));
    }
    Ok((b, y))
}

/// Decompose p = 1 (mod 8) as a^2 + 16 b^2, a = -1 (mod 4), b = |b|.
///
/// From p = x^2 + y^2 the even member is divisible by 4 (its square is
/// p - 1 = 0 mod 8), so it supplies 4|b| and the odd member supplies a.
pub fn decompose(p: u64) -> Result<QuarticDecomposition> {
    let ctx_check = PrimeContext::new(p)?;
    ctx_check.require_class(1, 8)?;
    let (x, y) = two_squares(p)?;
    let (odd, even) = if x % 2 == 1 { (x, y) } else { (y, x) };
    if even % 4 != 0 {
        return Err(Error::Internal(format!(
            "even part {even} not divisible by 4 at p = {p}"
        )));
    }
    let a = if odd % 4 == 3 {
        odd as i64
    } else {
        -(odd as i64)
    };
    Ok(QuarticDecomposition {
        p,
        a,
        b_abs: even / 4,
    })
}

/// Exact J(chi_pi, chi_pi) = sum_t chi(t) chi(1-t) under chi(g) = -i.
///
/// Counts how many t land in each exponent class of chi(t)chi(1-t) and
/// assembles the four counts into a Gaussian integer at the end.
pub fn jacobi_sum(ctx: &PrimeContext) -> Result<GaussianInt> {
    ctx.require_class(1, 4)?;
    let p = ctx.p;
    let exps = ctx.dlog4_table();
    let mut counts = [0i64; 4];
    for t in 2..p {
        let u = p + 1 - t; // 1 - t mod p, nonzero for t in [2, p)
        counts[((exps[t as usize] + exps[u as usize]) % 4) as usize] += 1;
    }
    // (-i)^m over m = 0..3 contributes 1, -i, -1, i
    Ok(GaussianInt::new(
        counts[0] - counts[2],
        counts[3] - counts[1],
    ))
}

/// Both sides of J(chi,chi) = -((p-1)/2)! / (((p-1)/4)!)^2 (mod p),
/// the Jacobi sum reduced through i -> g^((p-1)/4).
pub fn jacobi_congruence_check(ctx: &PrimeContext) -> Result<(ModInt, ModInt)> {
    ctx.require_class(1, 8)?;
    let p = ctx.p;
    let i_image = ctx.i_image.expect("p = 1 mod 4 has i_image");
    let lhs = jacobi_sum(ctx)?.reduce_mod(p, i_image);
    let mut fact = FactorialCache::new(p);
    let quarter = fact.get((p - 1) / 4).value;
    let half = fact.get((p - 1) / 2).value;
    let rhs = mul_mod(half, inv_mod(mul_mod(quarter, quarter, p), p), p);
    Ok((lhs, -ModInt::new(rhs, p)))
}

/// C_p in {+1, -1} defined by C_p = (4|b|/a) ((p-1)/2)! (mod p).
/// The defining value squaring to 1 is part of what the scan verifies, so
/// anything outside {1, -1} is an identity violation.
pub fn c_sign(p: u64) -> Result<i32> {
    let d = decompose(p)?;
    let half = modcore::factorial_mod((p - 1) / 2, p).value;
    c_sign_from_parts(p, d.a, d.b_abs, half)
}

/// c_sign with the decomposition and ((p-1)/2)! mod p already in hand,
/// so scans sharing a factorial cache do not redo the pass.
pub(crate) fn c_sign_from_parts(p: u64, a: i64, b_abs: u64, half_fact: u64) -> Result<i32> {
    let a_inv = inv_mod(reduce_signed(a, p), p);
    let x = mul_mod(mul_mod(4 * b_abs % p, a_inv, p), half_fact, p);
    match x {
        1 => Ok(1),
        x if x == p - 1 => Ok(-1),
        x => Err(Error::IdentityViolation {
            p,
            what: format!("C_p defining value {x} is not +-1"),
        }),
    }
}

/// (b even, 2 is a 4-th power residue); the two must agree.
pub fn two_is_fourth_power(p: u64) -> Result<(bool, bool)> {
    let d = decompose(p)?;
    Ok((d.b_abs % 2 == 0, quartic_symbol(2, p)? == 1))
}
