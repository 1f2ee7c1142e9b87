//! Real and imaginary quadratic invariants: fundamental units, class
//! numbers, the generalized Bernoulli number B_{2,chi}, exact L(-1,chi),
//! and the residue sums A_p, B_p with their closed forms.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bigcomplex::{primitive_root_of_unity, BigComplex};
use crate::error::{Error, Result};
use crate::modcore::{
    self, inv_mod, legendre, mul_mod, quadratic_residue_table, ModInt, QuadExtElem,
};

/// Default working precision (bits) for regulator / class-number work.
pub const DEFAULT_PRECISION: u32 = 256;
const MAX_PRECISION: u32 = 8192;
/// The analytic class-number quotient must land within this distance of
/// an integer before rounding is trusted.
const INTEGRALITY_GUARD: f64 = 1e-6;

/// Fundamental unit eps_p = (u + v sqrt(p))/2 of Q(sqrt(p)) together with
/// the class number h(p) and the regulator log(eps_p).
#[derive(Clone, Debug)]
pub struct RealQuadData {
    pub p: u64,
    pub u: Integer,
    pub v: Integer,
    pub h: u64,
    pub regulator: Float,
}

impl RealQuadData {
    /// Sign of the norm: u^2 - p v^2 = norm_sign * 4.
    pub fn norm_sign(&self) -> i32 {
        let lhs = self.u.clone().square() - Integer::from(self.p) * self.v.clone().square();
        if lhs == 4i32 {
            1
        } else {
            debug_assert_eq!(lhs, -4i32);
            -1
        }
    }

    /// eps_p as a float at the given precision.
    pub fn unit_value(&self, prec: u32) -> Float {
        let sqrt_p = Float::with_val(prec, self.p).sqrt();
        let num = Float::with_val(prec, &self.u) + Float::with_val(prec, &self.v) * sqrt_p;
        Float::with_val(prec, num / 2u32)
    }

    /// eps_p^(h/2) (positive branch); `inverse` selects eps^(-h/2).
    pub fn unit_half_h_power(&self, inverse: bool, prec: u32) -> Float {
        let eps = self.unit_value(prec);
        let powed = eps.pow(self.h as u32);
        let root = powed.sqrt();
        if inverse {
            root.recip()
        } else {
            root
        }
    }
}

/// h(-p) for p = 3 (mod 4).
#[derive(Clone, Copy, Debug)]
pub struct ImagQuadData {
    pub p: u64,
    pub h: u64,
}

/// Exact B_{2,chi} and L(-1,chi) = -B_{2,chi}/2 for the Legendre
/// character mod p, p = 1 (mod 4).
#[derive(Clone, Debug)]
pub struct LValueData {
    pub p: u64,
    pub b2chi: Rational,
    pub l_minus1: Rational,
}

/// A_p = sum of quadratic residues in (0, p/2), B_p same for nonresidues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueSums {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

/// Continued-fraction expansion of sqrt(p): returns the fundamental
/// solution (x, y) of x^2 - p y^2 = (-1)^period and the period length.
fn pell_fundamental(p: u64) -> (Integer, Integer, u32) {
    let a0 = Integer::from(p).sqrt().to_u64().expect("p fits u64");
    debug_assert!(a0 * a0 != p, "p must not be a square");
    // convergents h_k / q_k
    let mut h_prev = Integer::from(1);
    let mut h = Integer::from(a0);
    let mut q_prev = Integer::from(0);
    let mut q = Integer::from(1);
    let (mut m, mut d) = (0u64, 1u64);
    let mut a = a0;
    let mut k = 0u32;
    loop {
        m = d * a - m;
        d = (p - m * m) / d;
        k += 1;
        if d == 1 {
            return (h, q, k);
        }
        a = (a0 + m) / d;
        let h_next = Integer::from(a) * &h + &h_prev;
        let q_next = Integer::from(a) * &q + &q_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Minimal (u, v) with u^2 - p v^2 = +-4 and eps = (u + v sqrt(p))/2 > 1.
///
/// The continued fraction of sqrt(p) yields the minimal solution (x, y)
/// of x^2 - p y^2 = +-1, i.e. the fundamental unit of the order Z[sqrt p].
/// The maximal order's unit is either that same unit (u, v) = (2x, 2y) or
/// its cube root with u, v odd; in the latter case u satisfies
/// u^3 -+ 3u = 2x, so an integer cube-root probe decides exactly.
fn unit_uv(p: u64) -> (Integer, Integer) {
    let (x, y, period) = pell_fundamental(p);
    let norm_is_minus = period % 2 == 1;
    let two_x = Integer::from(2) * &x;
    let approx = two_x.clone().root(3);
    for cand in [-1i32, 0, 1] {
        let u = approx.clone() + cand;
        if u <= 0 {
            continue;
        }
        // 2x = u^3 + 3u when the norm is -1, u^3 - 3u when it is +1
        let cube = u.clone().pow(3);
        let trace = if norm_is_minus {
            cube + Integer::from(3) * &u
        } else {
            cube - Integer::from(3) * &u
        };
        if trace != two_x {
            continue;
        }
        let vv_num = if norm_is_minus {
            u.clone().square() + 4u32
        } else {
            u.clone().square() - 4u32
        };
        let (vv, rem) = vv_num.div_rem(Integer::from(p));
        if rem != 0 || !vv.is_perfect_square() {
            continue;
        }
        return (u, vv.sqrt());
    }
    (two_x, Integer::from(2) * y)
}

/// Accumulated magnitudes of prod |1 - zeta^a| over residues vs
/// nonresidues a in (0, p/2); their log-quotient is h(p) * log(eps_p).
fn half_sine_products(p: u64, prec: u32) -> (Float, Float) {
    let zeta = primitive_root_of_unity(p, prec);
    let table = quadratic_residue_table(p);
    let one = BigComplex::one(prec);
    let mut prod_res = Float::with_val(prec, 1);
    let mut prod_non = Float::with_val(prec, 1);
    let mut z = zeta.clone();
    for a in 1..=(p - 1) / 2 {
        if a % 64 == 0 {
            let inv_abs = z.abs().recip();
            z = z.scale(&inv_abs);
        }
        let factor = one.sub(&z).abs();
        if table[a as usize] {
            prod_res *= factor;
        } else {
            prod_non *= factor;
        }
        z = z.mul(&zeta);
    }
    (prod_res, prod_non)
}

/// h(p) for p = 1 (mod 4) from the analytic class number formula,
/// with an integrality guard and automatic precision doubling.
fn class_number_with_unit(p: u64, u: &Integer, v: &Integer, prec0: u32) -> Result<(u64, Float)> {
    let mut prec = prec0.max(64);
    loop {
        let sqrt_p = Float::with_val(prec, p).sqrt();
        let eps = (Float::with_val(prec, u) + Float::with_val(prec, v) * sqrt_p) / 2u32;
        let regulator = Float::with_val(prec, eps).ln();
        let (prod_res, prod_non) = half_sine_products(p, prec);
        let quotient = Float::with_val(prec, prod_non / prod_res).ln() / &regulator;
        let rounded = Float::with_val(prec, quotient.clone().round());
        let guard = Float::with_val(prec, &quotient - &rounded).abs();
        if guard < INTEGRALITY_GUARD {
            let h = rounded.to_f64();
            if h >= 1.0 {
                return Ok((h as u64, regulator));
            }
        }
        if prec >= MAX_PRECISION {
            return Err(Error::Precision {
                p,
                what: "class number h(p)".into(),
            });
        }
        prec *= 2;
    }
}

/// Fundamental unit, class number and regulator of Q(sqrt(p)),
/// p = 1 (mod 4).
pub fn fundamental_unit(p: u64) -> Result<RealQuadData> {
    fundamental_unit_prec(p, DEFAULT_PRECISION)
}

pub fn fundamental_unit_prec(p: u64, prec: u32) -> Result<RealQuadData> {
    if !modcore::is_prime(p) || p < 5 {
        return Err(Error::InvalidModulus(p));
    }
    if p % 4 != 1 {
        return Err(Error::UnsupportedResidueClass {
            p,
            want: 1,
            modulus: 4,
        });
    }
    let (u, v) = unit_uv(p);
    let (h, regulator) = class_number_with_unit(p, &u, &v, prec)?;
    Ok(RealQuadData {
        p,
        u,
        v,
        h,
        regulator,
    })
}

/// h(p) for p = 1 (mod 4).
pub fn class_number_real(p: u64) -> Result<u64> {
    Ok(fundamental_unit(p)?.h)
}

/// h(-p) for p = 3 (mod 4) by Dirichlet's counting formula
/// h(-p) = (R - N) / (2 - (2/p)); p = 3 is the hardcoded special case.
pub fn class_number_imag(p: u64) -> Result<ImagQuadData> {
    if !modcore::is_prime(p) || p % 4 != 3 {
        return Err(Error::UnsupportedResidueClass {
            p,
            want: 3,
            modulus: 4,
        });
    }
    if p == 3 {
        return Ok(ImagQuadData { p, h: 1 });
    }
    let table = quadratic_residue_table(p);
    let r = (1..=(p - 1) / 2).filter(|&x| table[x as usize]).count() as i64;
    let n = ((p - 1) / 2) as i64 - r;
    let denom = 2 - legendre(2, p)? as i64;
    let diff = r - n;
    if diff <= 0 || diff % denom != 0 {
        return Err(Error::IdentityViolation {
            p,
            what: format!("(R-N)/(2-(2/p)) not a positive integer: R-N={diff}, denom={denom}"),
        });
    }
    Ok(ImagQuadData {
        p,
        h: (diff / denom) as u64,
    })
}

/// Exact B_{2,chi} = (1/p) sum chi(a) a^2 and L(-1,chi) = -B_{2,chi}/2.
pub fn l_minus_one(p: u64) -> Result<LValueData> {
    if !modcore::is_prime(p) || p % 4 != 1 {
        return Err(Error::UnsupportedResidueClass {
            p,
            want: 1,
            modulus: 4,
        });
    }
    let table = quadratic_residue_table(p);
    let mut sum = Integer::new();
    for a in 1..p {
        let sq = Integer::from(a) * a;
        if table[a as usize] {
            sum += sq;
        } else {
            sum -= sq;
        }
    }
    let b2chi = Rational::from((sum, Integer::from(p)));
    let l_minus1 = -b2chi.clone() / 2u32;
    Ok(LValueData { p, b2chi, l_minus1 })
}

/// Brute-force A_p and B_p over (0, p/2).
pub fn residue_sums(p: u64) -> Result<ResidueSums> {
    if !modcore::is_prime(p) || p < 3 {
        return Err(Error::InvalidModulus(p));
    }
    let table = quadratic_residue_table(p);
    let (mut a, mut b) = (0u64, 0u64);
    for x in 1..=(p - 1) / 2 {
        if table[x as usize] {
            a += x;
        } else {
            b += x;
        }
    }
    Ok(ResidueSums { p, a, b })
}

/// The closed form for A_p, split by p mod 8. Must agree with the brute
/// sum for every prime; a non-integral value is an identity violation.
pub fn a_p_closed_form(p: u64) -> Result<u64> {
    if !modcore::is_prime(p) || p <= 3 {
        return Err(Error::InvalidArgument(format!(
            "p must be a prime > 3, got {p}"
        )));
    }
    let base = Rational::from((Integer::from(p) * p - 1, Integer::from(1)));
    let value = match p % 8 {
        7 => base / 16u32,
        3 => {
            let h = class_number_imag(p)?.h;
            (base + Rational::from(8 * p * h)) / 16u32
        }
        1 => (base + l_minus_one(p)?.l_minus1 * 12u32) / 16u32,
        5 => (base + l_minus_one(p)?.l_minus1 * 20u32) / 16u32,
        _ => unreachable!("p is odd"),
    };
    if !value.is_integer() || value < 0u32 {
        return Err(Error::IdentityViolation {
            p,
            what: format!("closed form for A_p is not a nonnegative integer: {value}"),
        });
    }
    Ok(value.numer().to_u64().expect("A_p < p^2/8 fits u64"))
}

/// Both sides of the congruence a_p = -((p-1)/2)! (mod p), where
/// eps_p^h = a_p + b_p sqrt(p).
///
/// eps_p^h has exponentially many digits, so the power is taken in the
/// quotient ring F_p[s]/(s^2 - p); mod p this makes s nilpotent and the
/// constant term is exactly a_p mod p (division by 2 is a modular
/// inverse).
pub fn unit_congruence_check(p: u64) -> Result<(ModInt, ModInt)> {
    let data = fundamental_unit(p)?;
    let u_mod = (data.u.clone() % Integer::from(p))
        .to_u64()
        .expect("reduced");
    let v_mod = (data.v.clone() % Integer::from(p))
        .to_u64()
        .expect("reduced");
    let inv2 = inv_mod(2, p);
    let eps = QuadExtElem::new(mul_mod(u_mod, inv2, p), mul_mod(v_mod, inv2, p), 0, p);
    let a_p = eps.pow(data.h).x;
    let rhs = -modcore::factorial_mod((p - 1) / 2, p);
    Ok((ModInt::new(a_p, p), rhs))
}
