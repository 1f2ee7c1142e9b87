//! Arbitrary-precision complex arithmetic on top of MPFR floats, plus the
//! root-of-unity tables the analytic checks consume.
//!
//! Precision is always an explicit per-value parameter, never ambient
//! state. MPFR guarantees correctly rounded basic operations, so each
//! operation contributes at most one ulp (2^(1-prec) relative) of error;
//! callers budget a linear number of ulps per product chain.

use rug::float::Constant;
use rug::Float;

/// Complex number with explicit binary precision.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

/// Minimum working precision accepted by the analytic checks.
pub const MIN_PRECISION: u32 = 64;

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, 1),
            im: Float::new(prec),
        }
    }

    pub fn from_signed(re: i64, im: i64, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }

    pub fn sub(&self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }

    pub fn mul(&self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec();
        let re =
            Float::with_val(prec, &self.re * &rhs.re) - Float::with_val(prec, &self.im * &rhs.im);
        let im =
            Float::with_val(prec, &self.re * &rhs.im) + Float::with_val(prec, &self.im * &rhs.re);
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn neg(&self) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: Float::with_val(prec, -&self.re),
            im: Float::with_val(prec, -&self.im),
        }
    }

    pub fn conj(&self) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: self.re.clone(),
            im: Float::with_val(prec, -&self.im),
        }
    }

    /// Multiply by i.
    pub fn mul_i(&self) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: Float::with_val(prec, -&self.im),
            im: self.re.clone(),
        }
    }

    pub fn scale(&self, s: &Float) -> BigComplex {
        let prec = self.prec();
        BigComplex {
            re: Float::with_val(prec, &self.re * s),
            im: Float::with_val(prec, &self.im * s),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// |self - rhs|.
    pub fn dist(&self, rhs: &BigComplex) -> Float {
        self.sub(rhs).abs()
    }

    /// Principal square root (branch cut on the negative real axis,
    /// Re >= 0 on the result), by the numerically stable half-formulas.
    pub fn sqrt_principal(&self) -> BigComplex {
        let prec = self.prec();
        let m = self.abs();
        if m.is_zero() {
            return BigComplex::zero(prec);
        }
        if self.re >= 0 {
            let w = Float::with_val(prec, Float::with_val(prec, &m + &self.re) / 2).sqrt();
            let im = Float::with_val(prec, &self.im / &w) / 2u32;
            BigComplex {
                re: w,
                im: Float::with_val(prec, im),
            }
        } else {
            let mut w = Float::with_val(prec, Float::with_val(prec, &m - &self.re) / 2).sqrt();
            if self.im < 0 {
                w = -w;
            }
            let re = Float::with_val(prec, &self.im / &w) / 2u32;
            BigComplex {
                re: Float::with_val(prec, re),
                im: w,
            }
        }
    }
}

impl std::fmt::Display for BigComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}{}i", dec(&self.re), dec(&self.im))
        } else {
            write!(f, "{}+{}i", dec(&self.re), dec(&self.im))
        }
    }
}

/// Short deterministic decimal rendering for reports and display.
pub fn dec(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let (sign, digits, exp) = x.to_sign_string_exp(10, Some(8));
    let s = if sign { "-" } else { "" };
    format!("{s}0.{digits}e{}", exp.unwrap_or(0))
}

/// e^(2 pi i / n) at the requested precision.
pub fn primitive_root_of_unity(n: u64, prec: u32) -> BigComplex {
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let angle = Float::with_val(prec, two_pi / n);
    let (sin, cos) = angle.sin_cos(Float::new(prec));
    BigComplex { re: cos, im: sin }
}

/// Table of zeta^k for k in [0, n): one transcendental evaluation, then
/// repeated multiplication, renormalized against |z| = 1 every 64 steps
/// to stop magnitude drift.
pub fn zeta_powers(n: u64, prec: u32) -> Vec<BigComplex> {
    let zeta = primitive_root_of_unity(n, prec);
    let mut table = Vec::with_capacity(n as usize);
    table.push(BigComplex::one(prec));
    let mut z = zeta.clone();
    for k in 1..n {
        if k % 64 == 0 {
            let inv_abs = z.abs().recip();
            z = z.scale(&inv_abs);
        }
        table.push(z.clone());
        z = z.mul(&zeta);
    }
    table
}

/// 2^(-bits) as a Float, for residual thresholds.
pub fn two_pow_neg(bits: u32, prec: u32) -> Float {
    Float::with_val(prec, 1) >> bits
}
