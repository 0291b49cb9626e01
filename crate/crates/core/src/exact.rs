//! Exact sign determination for real quadratic expressions.
//!
//! Two layers:
//!   * `quad_sign` decides the sign of `a + b*sqrt(n)` over the rationals.
//!   * `TowerCtx` decides signs in the 6-dimensional real algebra
//!     `Q[s, P, Q] / (s^2 = N, P^2 = (s+x)/2, Q^2 = (s-x)/2, PQ = |y|/2)`
//!     where `D = x + iy` is a Gaussian integer and `N = x^2 + y^2`.
//!
//! With `s = sqrt(N)`, `P` and `Q` evaluate to the nonnegative real and
//! imaginary parts of the principal square root of `D`, so the real and
//! imaginary coordinates of any root of a quadratic over the Gaussian
//! integers live in this algebra. Every recursion below relies only on the
//! evaluation map into the reals, so perfect-square `N` and vanishing `P`
//! or `Q` need no special casing.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type BR = Ratio<BigInt>;

pub fn br_from_i64(v: i64) -> BR {
    Ratio::from_integer(BigInt::from(v))
}

pub fn br_sign(x: &BR) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Sign of `a + b*sqrt(n)` for rational `a`, `b` and rational `n >= 0`.
pub fn quad_sign(a: &BR, b: &BR, n: &BR) -> i8 {
    debug_assert!(!n.is_negative());
    if b.is_zero() || n.is_zero() {
        return br_sign(a);
    }
    let sa = br_sign(a);
    let sb = br_sign(b);
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    let t = a * a - b * b * n;
    sa * br_sign(&t)
}

/// An element `a + b*s` of `Q(sqrt(n))`; the context supplies `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quad {
    pub a: BR,
    pub b: BR,
}

impl Quad {
    pub fn zero() -> Self {
        Quad {
            a: BR::zero(),
            b: BR::zero(),
        }
    }

    pub fn from_br(a: BR) -> Self {
        Quad { a, b: BR::zero() }
    }

    pub fn new(a: BR, b: BR) -> Self {
        Quad { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Quad) -> Quad {
        Quad {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Quad) -> Quad {
        Quad {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn neg(&self) -> Quad {
        Quad {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn scale(&self, k: &BR) -> Quad {
        Quad {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn mul(&self, o: &Quad, n: &BR) -> Quad {
        Quad {
            a: &self.a * &o.a + &self.b * &o.b * n,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn square(&self, n: &BR) -> Quad {
        self.mul(self, n)
    }
}

/// Context for the quadratic tower attached to a Gaussian discriminant.
#[derive(Clone, Debug)]
pub struct TowerCtx {
    /// `N = x^2 + y^2`, the norm of the discriminant.
    pub n: BR,
    /// `p2 = (s + x)/2 = P^2` as an element of `Q(s)`.
    pub p2: Quad,
    /// `q2 = (s - x)/2 = Q^2`.
    pub q2: Quad,
    /// `|y|`, so that `P*Q = |y|/2`.
    pub y_abs: BR,
}

impl TowerCtx {
    pub fn new(d_re: &BigInt, d_im: &BigInt) -> Self {
        let x = BR::from_integer(d_re.clone());
        let y = BR::from_integer(d_im.clone());
        let n = &x * &x + &y * &y;
        let half = BR::new(BigInt::from(1), BigInt::from(2));
        TowerCtx {
            n,
            p2: Quad::new(&x * &half, half.clone()),
            q2: Quad::new(-(&x * &half), half.clone()),
            y_abs: y.abs(),
        }
    }

    pub fn q1_sign(&self, q: &Quad) -> i8 {
        quad_sign(&q.a, &q.b, &self.n)
    }

    /// Sign of `b*P + c*Q`.
    fn u_sign(&self, b: &Quad, c: &Quad) -> i8 {
        let sp = self.q1_sign(&self.p2);
        let sq = self.q1_sign(&self.q2);
        debug_assert!(sp >= 0 && sq >= 0);
        let sb = if sp == 0 { 0 } else { self.q1_sign(b) };
        let sc = if sq == 0 { 0 } else { self.q1_sign(c) };
        match (sb, sc) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            (sb, _) => {
                // mixed signs: compare |b*P| against |c*Q|
                let t = b
                    .square(&self.n)
                    .mul(&self.p2, &self.n)
                    .sub(&c.square(&self.n).mul(&self.q2, &self.n));
                sb * self.q1_sign(&t)
            }
        }
    }

    /// Sign of a full tower element.
    pub fn sign(&self, e: &TowerElem) -> i8 {
        let su = self.u_sign(&e.b, &e.c);
        let sa = self.q1_sign(&e.a);
        if su == 0 {
            return sa;
        }
        if sa == 0 || sa == su {
            return su;
        }
        // |a| against |bP + cQ|: u^2 = b^2 P^2 + c^2 Q^2 + bc |y|
        let usq = e
            .b
            .square(&self.n)
            .mul(&self.p2, &self.n)
            .add(&e.c.square(&self.n).mul(&self.q2, &self.n))
            .add(&e.b.mul(&e.c, &self.n).scale(&self.y_abs));
        let t = e.a.square(&self.n).sub(&usq);
        sa * self.q1_sign(&t)
    }

    pub fn add(&self, e1: &TowerElem, e2: &TowerElem) -> TowerElem {
        TowerElem {
            a: e1.a.add(&e2.a),
            b: e1.b.add(&e2.b),
            c: e1.c.add(&e2.c),
        }
    }

    pub fn mul(&self, e1: &TowerElem, e2: &TowerElem) -> TowerElem {
        let half_y = self.y_abs.clone() / BR::from_integer(BigInt::from(2));
        let cross = e1.b.mul(&e2.c, &self.n).add(&e1.c.mul(&e2.b, &self.n));
        let a = e1
            .a
            .mul(&e2.a, &self.n)
            .add(&e1.b.mul(&e2.b, &self.n).mul(&self.p2, &self.n))
            .add(&e1.c.mul(&e2.c, &self.n).mul(&self.q2, &self.n))
            .add(&cross.scale(&half_y));
        let b = e1.a.mul(&e2.b, &self.n).add(&e1.b.mul(&e2.a, &self.n));
        let c = e1.a.mul(&e2.c, &self.n).add(&e1.c.mul(&e2.a, &self.n));
        TowerElem { a, b, c }
    }
}

/// `a + b*P + c*Q` with coefficients in `Q(s)`.
#[derive(Clone, Debug)]
pub struct TowerElem {
    pub a: Quad,
    pub b: Quad,
    pub c: Quad,
}

impl TowerElem {
    pub fn from_br(v: BR) -> Self {
        TowerElem {
            a: Quad::from_br(v),
            b: Quad::zero(),
            c: Quad::zero(),
        }
    }

    /// Linear element `a0 + bp*P + cq*Q` with rational coefficients.
    pub fn linear(a0: BR, bp: BR, cq: BR) -> Self {
        TowerElem {
            a: Quad::from_br(a0),
            b: Quad::from_br(bp),
            c: Quad::from_br(cq),
        }
    }

    pub fn scale(&self, k: &BR) -> Self {
        TowerElem {
            a: self.a.scale(k),
            b: self.b.scale(k),
            c: self.c.scale(k),
        }
    }

    pub fn neg(&self) -> Self {
        TowerElem {
            a: self.a.neg(),
            b: self.b.neg(),
            c: self.c.neg(),
        }
    }

    pub fn sub(&self, ctx: &TowerCtx, other: &Self) -> Self {
        ctx.add(self, &other.neg())
    }
}
