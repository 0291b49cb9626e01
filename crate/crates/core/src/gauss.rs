//! Exact arithmetic on Gaussian integers and Gaussian rationals.
//!
//! The ring type is generic over the integer scalar; `GaussianInt` /
//! `GaussianRational` at the crate root pin it to `BigInt`, which is what
//! everything upstream of plain lattice enumeration uses.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer component type of a Gaussian integer.
pub trait Scalar:
    Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + From<i64> + ToPrimitive + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + From<i64> + ToPrimitive + 'static
{
}

/// A Gaussian integer `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Gaussian<T> {
    pub fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }

    pub fn from_i64s(re: i64, im: i64) -> Self {
        Gaussian::new(T::from(re), T::from(im))
    }

    pub fn zero() -> Self {
        Gaussian::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Gaussian::new(T::one(), T::zero())
    }

    pub fn i() -> Self {
        Gaussian::new(T::zero(), T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// The norm `re^2 + im^2`. Nonnegative and multiplicative.
    pub fn norm(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// `x + iy` is even when `x + y` is even.
    pub fn is_even(&self) -> bool {
        (self.re.clone() + self.im.clone()).is_even()
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    /// Reflection in the imaginary axis, `z -> -conj(z)`. An involution.
    pub fn reflect_y(&self) -> Self {
        Gaussian::new(-self.re.clone(), self.im.clone())
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Gaussian::new(-self.im.clone(), self.re.clone())
    }

    /// True when the value lies in the half-open first quadrant
    /// `re > 0 && im >= 0`; the canonical representative of each nonzero
    /// unit orbit.
    pub fn is_canonical_assoc(&self) -> bool {
        self.re.is_positive() && !self.im.is_negative()
    }

    /// The unit `u` such that `self * u` is canonical (zero maps to one).
    pub fn canonical_unit(&self) -> Self {
        if self.is_zero() {
            return Gaussian::one();
        }
        let mut u = Gaussian::one();
        let mut z = self.clone();
        for _ in 0..4 {
            if z.is_canonical_assoc() {
                return u;
            }
            z = z.mul_i();
            u = u.mul_i();
        }
        unreachable!("some unit multiple is canonical for nonzero input")
    }

    pub fn canonical_assoc(&self) -> Self {
        self.mul(&self.canonical_unit())
    }

    pub fn add(&self, other: &Self) -> Self {
        Gaussian::new(
            self.re.clone() + other.re.clone(),
            self.im.clone() + other.im.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Gaussian::new(
            self.re.clone() - other.re.clone(),
            self.im.clone() - other.im.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        Gaussian::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Gaussian::new(
            self.re.clone() * other.re.clone() - self.im.clone() * other.im.clone(),
            self.re.clone() * other.im.clone() + self.im.clone() * other.re.clone(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Gaussian::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    /// Nearest-integer division: the quotient `q` minimizing (up to ties)
    /// `|self - q*den|`, with `norm(self - q*den) <= norm(den)/2`.
    pub fn div_round(&self, den: &Self) -> Self {
        debug_assert!(!den.is_zero());
        let n = den.norm();
        let t = self.mul(&den.conj());
        Gaussian::new(div_round_scalar(t.re, n.clone()), div_round_scalar(t.im, n))
    }

    /// Exact division; `None` when `den` does not divide `self`.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let n = den.norm();
        let t = self.mul(&den.conj());
        let (qr, rr) = t.re.div_rem(&n);
        let (qi, ri) = t.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(Gaussian::new(qr, qi))
        } else {
            None
        }
    }

    /// Euclidean gcd, returned as the canonical associate.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a.sub(&q.mul(&b));
            a = b;
            b = r;
        }
        a.canonical_assoc()
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Round `x / n` to the nearest integer (half away rounds up), `n > 0`.
fn div_round_scalar<T: Scalar>(x: T, n: T) -> T {
    debug_assert!(n.is_positive());
    let two = T::from(2);
    (two.clone() * x + n.clone()).div_floor(&(two * n))
}

impl<T: Scalar> fmt::Debug for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<T: Scalar> fmt::Display for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let unit_im = self.im.clone().abs().is_one();
        if self.re.is_zero() {
            return if unit_im {
                write!(f, "{}i", if self.im.is_negative() { "-" } else { "" })
            } else {
                write!(f, "{}i", self.im)
            };
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if unit_im {
            write!(f, "{}{}i", self.re, sign)
        } else {
            write!(f, "{}{}{}i", self.re, sign, self.im.clone().abs())
        }
    }
}

/// Split a trimmed complex literal into (real part, imaginary part) strings.
/// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, `+i`, `a+i`, `a-i`.
fn split_complex(s: &str) -> Result<(Option<String>, Option<String>)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty complex literal".into()));
    }
    let has_i = s.ends_with('i') || s.ends_with('I');
    if !has_i {
        return Ok((Some(s), None));
    }
    let body = &s[..s.len() - 1];
    // find the sign separating real and imaginary parts, if any
    let mut split_at = None;
    for (idx, ch) in body.char_indices().skip(1) {
        if (ch == '+' || ch == '-') && !matches!(&body[idx - 1..idx], "/" | "+" | "-") {
            split_at = Some(idx);
        }
    }
    match split_at {
        Some(idx) => {
            let re = body[..idx].to_string();
            let im_raw = &body[idx..];
            let im = match im_raw {
                "+" => "1".to_string(),
                "-" => "-1".to_string(),
                other => other.to_string(),
            };
            Ok((Some(re), Some(im)))
        }
        None => {
            let im = match body {
                "" | "+" => "1".to_string(),
                "-" => "-1".to_string(),
                other => other.to_string(),
            };
            Ok((None, Some(im)))
        }
    }
}

impl<T: Scalar + FromStr> FromStr for Gaussian<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (re, im) = split_complex(s)?;
        let parse = |p: &str| {
            p.parse::<T>()
                .map_err(|_| Error::InvalidInput(format!("bad integer component `{p}` in `{s}`")))
        };
        let re = match re {
            Some(p) => parse(&p)?,
            None => T::zero(),
        };
        let im = match im {
            Some(p) => parse(&p)?,
            None => T::zero(),
        };
        Ok(Gaussian::new(re, im))
    }
}

impl<T: Scalar> Serialize for Gaussian<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Gaussian", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im", &self.im.to_string())?;
        st.end()
    }
}

impl<'de, T: Scalar + FromStr> Deserialize<'de> for Gaussian<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct GVisitor<T>(std::marker::PhantomData<T>);

        impl<'de, T: Scalar + FromStr> Visitor<'de> for GVisitor<T> {
            type Value = Gaussian<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an `a+bi` string or {re, im} object of decimal strings")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_map<A: de::MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut re: Option<String> = None;
                let mut im: Option<String> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "re" => re = Some(map.next_value()?),
                        "im" => im = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["re", "im"])),
                    }
                }
                let parse = |p: Option<String>, what| {
                    p.ok_or_else(|| de::Error::missing_field(what)).and_then(|p| {
                        p.parse::<T>()
                            .map_err(|_| de::Error::custom(format!("bad {what} component")))
                    })
                };
                Ok(Gaussian::new(parse(re, "re")?, parse(im, "im")?))
            }
        }

        deserializer.deserialize_any(GVisitor(std::marker::PhantomData))
    }
}

/// A Gaussian rational in canonical form: `gcd(num, den)` is a unit and the
/// denominator lies in the half-open first quadrant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GRational<T> {
    num: Gaussian<T>,
    den: Gaussian<T>,
}

impl<T: Scalar> GRational<T> {
    /// Reduce `num/den` to canonical form. The only failure is a zero
    /// denominator.
    pub fn new(num: Gaussian<T>, den: Gaussian<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(GRational {
                num: Gaussian::zero(),
                den: Gaussian::one(),
            });
        }
        let g = Gaussian::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let u = den.canonical_unit();
        Ok(GRational {
            num: num.mul(&u),
            den: den.mul(&u),
        })
    }

    pub fn from_gaussian(g: Gaussian<T>) -> Self {
        GRational {
            num: g,
            den: Gaussian::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_gaussian(Gaussian::zero())
    }

    pub fn num(&self) -> &Gaussian<T> {
        &self.num
    }

    pub fn den(&self) -> &Gaussian<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value is a Gaussian integer.
    pub fn is_integral(&self) -> bool {
        self.den == Gaussian::one()
    }

    pub fn as_gaussian(&self) -> Option<&Gaussian<T>> {
        self.is_integral().then_some(&self.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        GRational::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        GRational::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        GRational::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        GRational::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn add_gaussian(&self, g: &Gaussian<T>) -> Self {
        GRational {
            num: self.num.add(&g.mul(&self.den)),
            den: self.den.clone(),
        }
    }

    pub fn sub_gaussian(&self, g: &Gaussian<T>) -> Self {
        self.add_gaussian(&g.neg())
    }

    /// Real part as an exact scalar ratio.
    pub fn re_ratio(&self) -> Ratio<T> {
        let t = self.num.mul(&self.den.conj());
        Ratio::new(t.re, self.den.norm())
    }

    /// Imaginary part as an exact scalar ratio.
    pub fn im_ratio(&self) -> Ratio<T> {
        let t = self.num.mul(&self.den.conj());
        Ratio::new(t.im, self.den.norm())
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        let n = self.den.norm().to_f64().unwrap_or(f64::NAN);
        let t = self.num.mul(&self.den.conj());
        (
            t.re.to_f64().unwrap_or(f64::NAN) / n,
            t.im.to_f64().unwrap_or(f64::NAN) / n,
        )
    }
}

impl<T: Scalar> fmt::Display for GRational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<T: Scalar> fmt::Debug for GRational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    type G = Gaussian<BigInt>;
    type Q = GRational<BigInt>;

    fn g(re: i64, im: i64) -> G {
        G::from_i64s(re, im)
    }

    #[test]
    fn norm_basics() {
        assert_eq!(g(0, 0).norm(), BigInt::from(0));
        assert_eq!(g(1, 1).norm(), BigInt::from(2));
        assert_eq!(g(3, 4).norm(), BigInt::from(25));
    }

    #[test]
    fn norm_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6a3f);
        for _ in 0..10_000 {
            let a = g(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
            let b = g(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
            assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        }
    }

    #[test]
    fn evenness() {
        assert!(g(1, 1).is_even());
        assert!(!g(1, 0).is_even());
        assert!(g(2, 0).is_even());
    }

    #[test]
    fn reflect_y_examples() {
        assert_eq!(g(1, 1).reflect_y(), g(-1, 1));
        assert_eq!(g(2, 0).reflect_y(), g(-2, 0));
        assert_eq!(g(0, -1).reflect_y(), g(0, -1));
    }

    #[test]
    fn reflect_y_involution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x11);
        for _ in 0..1000 {
            let a = g(rng.gen_range(-40..=40), rng.gen_range(-40..=40));
            assert_eq!(a.reflect_y().reflect_y(), a);
        }
    }

    #[test]
    fn canonical_assoc_unique() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x22);
        for _ in 0..1000 {
            let a = g(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            if a.is_zero() {
                continue;
            }
            let c = a.canonical_assoc();
            assert!(c.is_canonical_assoc(), "{a} -> {c}");
            // exactly one member of the orbit is canonical
            let orbit = [a.clone(), a.mul_i(), a.neg(), a.mul_i().neg()];
            assert_eq!(orbit.iter().filter(|z| z.is_canonical_assoc()).count(), 1);
        }
    }

    #[test]
    fn gcd_divides_both() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x33);
        for _ in 0..2000 {
            let a = g(rng.gen_range(-30..=30), rng.gen_range(-30..=30));
            let b = g(rng.gen_range(-30..=30), rng.gen_range(-30..=30));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let d = G::gcd(&a, &b);
            assert!(!d.is_zero());
            assert!(a.div_exact(&d).is_some());
            assert!(b.div_exact(&d).is_some());
        }
    }

    #[test]
    fn reduce_examples() {
        let q = Q::new(g(2, 2), g(2, 0)).unwrap();
        assert_eq!(q.num(), &g(1, 1));
        assert_eq!(q.den(), &g(1, 0));

        let q = Q::new(g(3, 1), g(1, -1)).unwrap();
        assert_eq!(q.num(), &g(1, 2));
        assert_eq!(q.den(), &g(1, 0));

        let q = Q::new(g(0, 0), g(5, 0)).unwrap();
        assert_eq!(q.num(), &g(0, 0));
        assert_eq!(q.den(), &g(1, 0));
    }

    #[test]
    fn reduce_zero_denominator() {
        assert_eq!(Q::new(g(1, 0), g(0, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn reduce_idempotent_and_equality() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x44);
        for _ in 0..2000 {
            let n = g(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
            let d = g(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
            if d.is_zero() {
                continue;
            }
            let q = Q::new(n.clone(), d.clone()).unwrap();
            let q2 = Q::new(q.num().clone(), q.den().clone()).unwrap();
            assert_eq!(q, q2);
            // scaling numerator and denominator leaves the value unchanged
            let s = g(rng.gen_range(1..=5), rng.gen_range(-5..=5));
            if !s.is_zero() {
                let q3 = Q::new(n.mul(&s), d.mul(&s)).unwrap();
                assert_eq!(q, q3);
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "0", "1", "-1", "i", "-i", "2i", "-2i", "1+i", "1-i", "-1+2i", "3-4i", "17",
            "-12-7i",
        ] {
            let z: G = s.parse().unwrap();
            let back: G = z.to_string().parse().unwrap();
            assert_eq!(z, back, "round trip through `{s}` -> `{z}`");
        }
        assert_eq!("1 + 2i".parse::<G>().unwrap(), g(1, 2));
        assert_eq!("- 3".parse::<G>().unwrap(), g(-3, 0));
        assert!("".parse::<G>().is_err());
        assert!("2+x i".parse::<G>().is_err());
    }

    #[test]
    fn serde_object_form() {
        let z = g(3, -4);
        let j = serde_json::to_string(&z).unwrap();
        assert_eq!(j, r#"{"re":"3","im":"-4"}"#);
        let back: G = serde_json::from_str(&j).unwrap();
        assert_eq!(z, back);
        let from_str: G = serde_json::from_str(r#""3-4i""#).unwrap();
        assert_eq!(z, from_str);
    }

    #[test]
    fn rational_field_ops() {
        let a = Q::new(g(3, 1), g(2, 0)).unwrap();
        let b = Q::new(g(1, -1), g(1, 1)).unwrap();
        let sum = a.add(&b);
        let diff = sum.sub(&b);
        assert_eq!(diff, a);
        let prod = a.mul(&b);
        let quot = prod.div(&b).unwrap();
        assert_eq!(quot, a);
        assert_eq!(a.mul(&a.inv().unwrap()), Q::from_gaussian(g(1, 0)));
    }
}
