//! Certified complex ball arithmetic: a dyadic midpoint pair plus an error
//! radius that is a proven upper bound on the distance to the represented
//! exact value. Every operation updates the radius.

use num_bigint::BigInt;
use serde::Serialize;

use crate::dyadic::{Dyadic, RealBall};
use crate::error::{Error, Result};
use crate::gauss::{GRational, Gaussian};

/// Default working precision in significand bits.
pub const DEFAULT_PREC: u32 = 192;
/// Hard cap on working precision.
pub const PREC_CAP: u32 = 4096;
const RADIUS_BITS: u32 = 24;

/// A complex number known to lie within `rad` of `re + im*i`.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
    pub prec: u32,
}

impl BigComplex {
    pub fn exact_dyadic(re: Dyadic, im: Dyadic, prec: u32) -> Self {
        BigComplex {
            re,
            im,
            rad: Dyadic::zero(),
            prec,
        }
    }

    pub fn from_f64s(re: f64, im: f64, prec: u32) -> Option<Self> {
        Some(BigComplex::exact_dyadic(
            Dyadic::from_f64(re)?,
            Dyadic::from_f64(im)?,
            prec,
        ))
    }

    pub fn from_gaussian(g: &Gaussian<BigInt>, prec: u32) -> Self {
        BigComplex::exact_dyadic(
            Dyadic::from_bigint(g.re.clone()),
            Dyadic::from_bigint(g.im.clone()),
            prec,
        )
    }

    pub fn from_rational(q: &GRational<BigInt>, prec: u32) -> Self {
        let (re, e1) = Dyadic::from_ratio(&q.re_ratio(), prec);
        let (im, e2) = Dyadic::from_ratio(&q.im_ratio(), prec);
        BigComplex {
            re,
            im,
            rad: e1.add(&e2).round_up(RADIUS_BITS),
            prec,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Interval on the real part (correlation with the imaginary part is
    /// discarded, which is sound).
    pub fn re_ball(&self) -> RealBall {
        RealBall::new(self.re.clone(), self.rad.clone())
    }

    pub fn im_ball(&self) -> RealBall {
        RealBall::new(self.im.clone(), self.rad.clone())
    }

    fn rounded(self) -> Self {
        let (re, e1) = self.re.round_down(self.prec);
        let (im, e2) = self.im.round_down(self.prec);
        let rad = self.rad.add(&e1).add(&e2).round_up(RADIUS_BITS);
        BigComplex {
            re,
            im,
            rad,
            prec: self.prec,
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.clone(),
            rad: self.rad.clone(),
            prec,
        }
        .rounded()
    }

    pub fn add(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
            rad: self.rad.add(&other.rad),
            prec: self.prec.max(other.prec),
        }
        .rounded()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn add_gaussian(&self, g: &Gaussian<BigInt>) -> Self {
        BigComplex {
            re: self.re.add(&Dyadic::from_bigint(g.re.clone())),
            im: self.im.add(&Dyadic::from_bigint(g.im.clone())),
            rad: self.rad.clone(),
            prec: self.prec,
        }
        .rounded()
    }

    pub fn sub_gaussian(&self, g: &Gaussian<BigInt>) -> Self {
        self.add_gaussian(&g.neg())
    }

    /// Exact squared modulus of the midpoint.
    pub fn magsq_mid(&self) -> Dyadic {
        self.re.square().add(&self.im.square())
    }

    /// Upper bound on `|value|`.
    pub fn abs_upper(&self) -> Dyadic {
        self.magsq_mid().sqrt_upper(48).add(&self.rad)
    }

    /// Lower bound on `|value|` (clamped at zero).
    pub fn abs_lower(&self) -> Dyadic {
        let lo = self.magsq_mid().sqrt_lower(48).sub(&self.rad);
        if lo.sign() < 0 {
            Dyadic::zero()
        } else {
            lo
        }
    }

    /// Interval containing `|value|^2`.
    pub fn magsq_ball(&self) -> RealBall {
        let mid = self.magsq_mid();
        if self.rad.is_zero() {
            return RealBall::exact(mid);
        }
        // | |z|^2 - |m|^2 | <= 2|m| r + r^2
        let delta = self
            .magsq_mid()
            .sqrt_upper(48)
            .mul(&self.rad)
            .shl(1)
            .add(&self.rad.square());
        RealBall::new(mid, delta.round_up(RADIUS_BITS))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        let rad = self
            .abs_upper()
            .mul(&other.rad)
            .add(&other.abs_upper().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        BigComplex {
            re,
            im,
            rad,
            prec,
        }
        .rounded()
    }

    pub fn scale_pow2(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.shl(k),
            im: self.im.shl(k),
            rad: self.rad.shl(k),
            prec: self.prec,
        }
    }

    /// Reciprocal; fails when the ball is not certified away from zero.
    pub fn inv(&self) -> Result<Self> {
        let msq = self.magsq_mid();
        let mid_lo = msq.sqrt_lower(self.prec.max(48));
        let val_lo = mid_lo.sub(&self.rad);
        if val_lo.sign() <= 0 {
            return Err(Error::AmbiguousChoice(
                "reciprocal of a ball containing zero".into(),
            ));
        }
        let (re, e1) = self.re.div(&msq, self.prec);
        let (im_neg, e2) = self.im.div(&msq, self.prec);
        // |1/z - 1/m| <= r / (|m| (|m| - r))
        let rad_prop = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            let den = mid_lo.mul(&val_lo);
            let (q, e) = self.rad.div(&den, RADIUS_BITS);
            q.add(&e)
        };
        let rad = rad_prop.add(&e1).add(&e2);
        Ok(BigComplex {
            re,
            im: im_neg.neg(),
            rad,
            prec: self.prec,
        }
        .rounded())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Certified enclosure of a square root of the Gaussian integer `d`.
    /// The returned branch has `re >= 0`, with `im >= 0` when `re = 0`
    /// (principal square root).
    pub fn sqrt_gaussian(d: &Gaussian<BigInt>, prec: u32) -> Self {
        if d.is_zero() {
            return BigComplex::exact_dyadic(Dyadic::zero(), Dyadic::zero(), prec);
        }
        let n = Dyadic::from_bigint(d.norm());
        let x = Dyadic::from_bigint(d.re.clone());
        let sgn_y = if d.im.sign() == num_bigint::Sign::Minus {
            -1i64
        } else {
            1
        };
        let wp = prec + 16;
        let s_lo = n.sqrt_lower(wp);
        let s_hi = n.sqrt_upper(wp);
        let half = |v: Dyadic| v.shl(-1);
        let clamp0 = |v: Dyadic| if v.sign() < 0 { Dyadic::zero() } else { v };
        // p0 = sqrt((s + x)/2), q0 = sqrt((s - x)/2)
        let p_lo = clamp0(half(s_lo.add(&x))).sqrt_lower(wp);
        let p_hi = clamp0(half(s_hi.add(&x))).sqrt_upper(wp);
        let q_lo = clamp0(half(s_lo.sub(&x))).sqrt_lower(wp);
        let q_hi = clamp0(half(s_hi.sub(&x))).sqrt_upper(wp);
        let re = half(p_lo.add(&p_hi));
        let im_mag = half(q_lo.add(&q_hi));
        let rad = half(p_hi.sub(&p_lo))
            .add(&half(q_hi.sub(&q_lo)))
            .round_up(RADIUS_BITS);
        let im = if sgn_y < 0 { im_mag.neg() } else { im_mag };
        BigComplex { re, im, rad, prec }.rounded()
    }

    /// Upper bound on the distance to another ball's value.
    pub fn dist_upper(&self, other: &Self) -> Dyadic {
        let dre = self.re.sub(&other.re);
        let dim = self.im.sub(&other.im);
        dre.square()
            .add(&dim.square())
            .sqrt_upper(48)
            .add(&self.rad)
            .add(&other.rad)
    }

    /// Lower bound on the distance to an exact Gaussian integer.
    pub fn dist_lower_to_gaussian(&self, g: &Gaussian<BigInt>) -> Dyadic {
        let dre = self.re.sub(&Dyadic::from_bigint(g.re.clone()));
        let dim = self.im.sub(&Dyadic::from_bigint(g.im.clone()));
        let lo = dre
            .square()
            .add(&dim.square())
            .sqrt_lower(48)
            .sub(&self.rad);
        if lo.sign() < 0 {
            Dyadic::zero()
        } else {
            lo
        }
    }

    /// Midpoint components rounded to nearest integers (a hint, not
    /// certified).
    pub fn nearest_gaussian_hint(&self) -> Gaussian<BigInt> {
        let round = |d: &Dyadic| -> BigInt {
            let r = d.to_ratio();
            let two = BigInt::from(2);
            use num_integer::Integer;
            (two.clone() * r.numer() + r.denom()).div_floor(&(two * r.denom()))
        };
        Gaussian::new(round(&self.re), round(&self.im))
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    /// Reduced-precision snapshot for logs.
    pub fn log_form(&self) -> ComplexLog {
        ComplexLog {
            re: self.re.to_f64(),
            im: self.im.to_f64(),
            rad: self.rad.to_f64(),
        }
    }
}

/// Reduced-precision serialized form of a ball.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexLog {
    pub re: f64,
    pub im: f64,
    pub rad: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> Gaussian<BigInt> {
        Gaussian::from_i64s(re, im)
    }

    #[test]
    fn arithmetic_encloses() {
        let a = BigComplex::from_f64s(1.25, -0.5, 96).unwrap();
        let b = BigComplex::from_f64s(-2.0, 3.5, 96).unwrap();
        let p = a.mul(&b);
        // exact: (1.25 - 0.5i)(-2 + 3.5i) = (-2.5 + 1.75) + (4.375 + 1)i
        assert!((p.re.to_f64() - (-0.75)).abs() <= p.rad.to_f64() + 1e-15);
        assert!((p.im.to_f64() - 5.375).abs() <= p.rad.to_f64() + 1e-15);

        let s = a.add(&b);
        assert_eq!(s.re.to_f64(), -0.75);
        assert_eq!(s.im.to_f64(), 3.0);
    }

    #[test]
    fn reciprocal_encloses() {
        let a = BigComplex::from_f64s(3.0, 4.0, 128).unwrap();
        let inv = a.inv().unwrap();
        assert!((inv.re.to_f64() - 0.12).abs() <= inv.rad.to_f64() + 1e-18);
        assert!((inv.im.to_f64() + 0.16).abs() <= inv.rad.to_f64() + 1e-18);
        assert!(inv.rad.to_f64() < 1e-30);

        let prod = a.mul(&inv);
        assert!((prod.re.to_f64() - 1.0).abs() <= prod.rad.to_f64() + 1e-18);
        assert!(prod.im.to_f64().abs() <= prod.rad.to_f64() + 1e-18);
    }

    #[test]
    fn reciprocal_of_zero_ball_fails() {
        let mut a = BigComplex::from_f64s(1e-8, 0.0, 64).unwrap();
        a.rad = Dyadic::from_f64(1e-6).unwrap();
        assert!(a.inv().is_err());
    }

    #[test]
    fn sqrt_of_gaussian() {
        // sqrt(2i) = 1 + i
        let w = BigComplex::sqrt_gaussian(&g(0, 2), 128);
        assert!((w.re.to_f64() - 1.0).abs() <= w.rad.to_f64() + 1e-20);
        assert!((w.im.to_f64() - 1.0).abs() <= w.rad.to_f64() + 1e-20);

        // sqrt(5) real
        let w = BigComplex::sqrt_gaussian(&g(5, 0), 128);
        assert!((w.re.to_f64() - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(w.im.to_f64(), 0.0);

        // sqrt(-4) = 2i
        let w = BigComplex::sqrt_gaussian(&g(-4, 0), 128);
        assert!(w.re.to_f64().abs() <= w.rad.to_f64() + 1e-20);
        assert!((w.im.to_f64() - 2.0).abs() <= w.rad.to_f64() + 1e-20);

        // sqrt(3 - 4i) = 2 - i
        let w = BigComplex::sqrt_gaussian(&g(3, -4), 128);
        assert!((w.re.to_f64() - 2.0).abs() <= w.rad.to_f64() + 1e-20);
        assert!((w.im.to_f64() + 1.0).abs() <= w.rad.to_f64() + 1e-20);

        // square it back for a non-square: sqrt(2 + 3i)
        let w = BigComplex::sqrt_gaussian(&g(2, 3), 160);
        let sq = w.mul(&w);
        assert!((sq.re.to_f64() - 2.0).abs() <= sq.rad.to_f64() + 1e-25);
        assert!((sq.im.to_f64() - 3.0).abs() <= sq.rad.to_f64() + 1e-25);
        assert!(w.rad.to_f64() < 1e-40);
    }

    #[test]
    fn rational_conversion() {
        let q = GRational::new(g(3, 1), g(2, 0)).unwrap();
        let b = BigComplex::from_rational(&q, 128);
        assert!((b.re.to_f64() - 1.5).abs() < 1e-30);
        assert!((b.im.to_f64() - 0.5).abs() < 1e-30);
    }

    #[test]
    fn error_grows_under_iteration_but_stays_certified() {
        // iterate z -> 1/(z - a) a few times against f64 reference
        let mut z = BigComplex::from_f64s(1.6180339887, 0.0, 128).unwrap();
        let mut zf = 1.6180339887f64;
        for _ in 0..10 {
            let a = g(2, 0);
            z = z.sub_gaussian(&a).inv().unwrap();
            zf = 1.0 / (zf - 2.0);
            assert!((z.re.to_f64() - zf).abs() <= z.rad.to_f64() + 1e-9);
        }
    }
}
