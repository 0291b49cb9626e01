//! Dyadic numbers `mant * 2^exp` with exact ring operations and explicitly
//! rounded division/square roots. These are the midpoints and radii of the
//! certified ball arithmetic in `bigc`.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact dyadic rational. Normalized so the mantissa is odd or zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant = &self.mant >> tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::new(BigInt::from(1), 0)
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// Exact power of two `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mant: BigInt::from(1),
            exp: k,
        }
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(sign) * BigInt::from(mant), exp))
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> i8 {
        if self.mant.is_zero() {
            0
        } else if self.mant.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -self.mant.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Number of significant bits in the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the magnitude: `2^(mag_exp()-1) <= |v| < 2^mag_exp()`.
    pub fn mag_exp(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.mant.bits() as i64 + self.exp
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        Dyadic::new(&self.mant * k, self.exp)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn cmp_dyadic(&self, other: &Self) -> std::cmp::Ordering {
        match self.sub(other).sign() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }

    pub fn max_d(&self, other: &Self) -> Self {
        if self.cmp_dyadic(other) == std::cmp::Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// Round toward minus infinity to `prec` significant bits.
    /// Returns the rounded value and an upper bound on the absolute error.
    pub fn round_down(&self, prec: u32) -> (Self, Self) {
        if self.is_zero() || self.mant.bits() <= prec as u64 {
            return (self.clone(), Dyadic::zero());
        }
        let drop = self.mant.bits() - prec as u64;
        let m = &self.mant >> drop;
        let rounded = Dyadic::new(m, self.exp + drop as i64);
        let exact = rounded == *self;
        let err = if exact {
            Dyadic::zero()
        } else {
            Dyadic::pow2(self.exp + drop as i64)
        };
        (rounded, err)
    }

    /// Round to at most `prec` bits with the result >= the true value.
    pub fn round_up(&self, prec: u32) -> Self {
        let (down, err) = self.round_down(prec);
        if err.is_zero() {
            down
        } else {
            down.add(&err)
        }
    }

    /// `self / den` to roughly `prec` significant bits. Returns the
    /// quotient and an upper bound on the absolute error (one ulp).
    pub fn div(&self, den: &Self, prec: u32) -> (Self, Self) {
        assert!(!den.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let k = (prec as i64 + den.mant.bits() as i64 - self.mant.bits() as i64 + 2).max(0);
        let num = &self.mant << k as u64;
        let q = num / &den.mant;
        let exp = self.exp - den.exp - k;
        (Dyadic::new(q, exp), Dyadic::pow2(exp))
    }

    /// Largest dyadic with `prec`-bit granularity not exceeding `sqrt(self)`.
    /// Requires `self >= 0`.
    pub fn sqrt_lower(&self, prec: u32) -> Self {
        assert!(self.sign() >= 0, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let g = self.mag_exp().div_euclid(2) - prec as i64;
        let shift = self.exp - 2 * g;
        let x = if shift >= 0 {
            &self.mant << shift as u64
        } else {
            &self.mant >> (-shift) as u64
        };
        Dyadic::new(x.sqrt(), g)
    }

    /// Smallest dyadic with `prec`-bit granularity not below `sqrt(self)`.
    pub fn sqrt_upper(&self, prec: u32) -> Self {
        assert!(self.sign() >= 0, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let g = self.mag_exp().div_euclid(2) - prec as i64;
        let shift = self.exp - 2 * g;
        let x = if shift >= 0 {
            &self.mant << shift as u64
        } else {
            let down = &self.mant >> (-shift) as u64;
            let exact = (&down << (-shift) as u64) == self.mant;
            if exact {
                down
            } else {
                down + 1
            }
        };
        let s = x.sqrt();
        let s = if (&s * &s) == x { s } else { s + 1 };
        Dyadic::new(s, g)
    }

    /// Convert a scalar ratio to roughly `prec` bits; error bound returned.
    pub fn from_ratio(r: &Ratio<BigInt>, prec: u32) -> (Self, Self) {
        let num = Dyadic::from_bigint(r.numer().clone());
        let den = Dyadic::from_bigint(r.denom().clone());
        num.div(&den, prec)
    }

    /// Exact conversion to a ratio.
    pub fn to_ratio(&self) -> Ratio<BigInt> {
        if self.exp >= 0 {
            Ratio::from_integer(&self.mant << self.exp as u64)
        } else {
            Ratio::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // keep the mantissa in f64 range, then scale stepwise to dodge
        // premature over/underflow
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 64 {
            let drop = bits - 64;
            (&self.mant >> drop as u64, self.exp + drop)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mut x = m.to_f64().unwrap_or(f64::NAN);
        let mut e = e;
        while e > 0 {
            let s = e.min(1000);
            x *= 2f64.powi(s as i32);
            e -= s;
        }
        while e < 0 {
            let s = (-e).min(1000);
            x /= 2f64.powi(s as i32);
            e += s;
        }
        x
    }
}

/// A real interval `mid +/- rad` with exact dyadic endpoints.
/// Ring operations are exact; only explicit conversions round.
#[derive(Clone, Debug)]
pub struct RealBall {
    pub mid: Dyadic,
    pub rad: Dyadic,
}

impl RealBall {
    pub fn exact(mid: Dyadic) -> Self {
        RealBall {
            mid,
            rad: Dyadic::zero(),
        }
    }

    pub fn new(mid: Dyadic, rad: Dyadic) -> Self {
        debug_assert!(rad.sign() >= 0);
        RealBall { mid, rad }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        RealBall {
            mid: self.mid.add(&other.mid),
            rad: self.rad.add(&other.rad),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RealBall {
            mid: self.mid.sub(&other.mid),
            rad: self.rad.add(&other.rad),
        }
    }

    pub fn neg(&self) -> Self {
        RealBall {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let rad = self
            .mid
            .abs()
            .mul(&other.rad)
            .add(&other.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        RealBall {
            mid: self.mid.mul(&other.mid),
            rad,
        }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        RealBall {
            mid: self.mid.mul_bigint(k),
            rad: self.rad.mul_bigint(&k.abs()),
        }
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    /// Certified sign: `None` when the interval straddles zero inexactly.
    pub fn sign(&self) -> Option<i8> {
        if self.rad.is_zero() {
            return Some(self.mid.sign());
        }
        if self.lower().sign() > 0 {
            Some(1)
        } else if self.upper().sign() < 0 {
            Some(-1)
        } else {
            None
        }
    }
}
