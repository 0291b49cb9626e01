//! Exact quadratic surds over the Gaussian integers and constructive
//! periodicity detection for their continued fraction expansions.
//!
//! A surd is stored as a primitive coefficient triple of
//! `alpha z^2 + beta z + gamma` together with the sign `sigma` selecting one
//! of the two roots `(-beta +/- w)/(2 alpha)`, `w` the principal square root
//! of the discriminant. Shift-invert steps transport the triple exactly and
//! flip `sigma`, so iteration state equality is pure integer comparison.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::bigc::{BigComplex, PREC_CAP};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::exact::{br_from_i64, TowerCtx, TowerElem, BR};
use crate::gauss::{GRational, Gaussian};
use crate::qpair::Block;

type G = Gaussian<BigInt>;
type Q = GRational<BigInt>;

/// An exact root of `alpha z^2 + beta z + gamma` with `alpha != 0`,
/// irreducible over the Gaussian rationals.
#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    alpha: G,
    beta: G,
    gamma: G,
    /// Selects `(-beta + sigma*w)/(2 alpha)` where `w` is the principal
    /// square root of the discriminant.
    sigma: i8,
    /// Certified approximation; radius below a quarter of the root
    /// separation.
    branch: BigComplex,
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha
            && self.beta == other.beta
            && self.gamma == other.gamma
            && self.sigma == other.sigma
    }
}
impl Eq for QuadraticSurd {}

/// Hashable iteration-state key.
#[derive(Clone, PartialEq, Eq, Hash)]
struct StateKey(BigInt, BigInt, BigInt, BigInt, BigInt, BigInt, i8);

/// Outcome of period detection.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    pub preperiod: usize,
    pub period: usize,
    pub cycle: Block<BigInt>,
    /// Number of distinct states visited before the first repeat.
    pub states_seen: usize,
}

/// Try to write `d` as a square in the Gaussian integers.
pub fn gaussian_sqrt_exact(d: &G) -> Option<G> {
    if d.is_zero() {
        return Some(G::zero());
    }
    let n = d.norm();
    let s = n.sqrt();
    if &s * &s != n {
        return None;
    }
    // p^2 = (s + re)/2, q = im / (2p); p = 0 only for nonpositive real d
    let two = BigInt::from(2);
    let sp = &s + &d.re;
    if sp.is_negative() || (&sp % &two) != BigInt::zero() {
        return None;
    }
    let p2 = sp / &two;
    let p = p2.sqrt();
    if &p * &p != p2 {
        return None;
    }
    if p.is_zero() {
        if !d.im.is_zero() {
            return None;
        }
        let q2 = -d.re.clone();
        let q = q2.sqrt();
        if &q * &q != q2 {
            return None;
        }
        return Some(G::new(BigInt::zero(), q));
    }
    let (q, rem) = num_integer::Integer::div_rem(&d.im, &(&two * &p));
    if !rem.is_zero() {
        return None;
    }
    let w = G::new(p, q);
    if &w.mul(&w) == d {
        Some(w)
    } else {
        None
    }
}

/// Evaluate root `sigma` of a coefficient triple as a certified ball.
fn eval_root(alpha: &G, beta: &G, gamma: &G, sigma: i8, prec: u32) -> BigComplex {
    let d = discriminant_of(alpha, beta, gamma);
    let w = BigComplex::sqrt_gaussian(&d, prec + 8);
    let w = if sigma < 0 { w.neg() } else { w };
    let num = w.add_gaussian(&beta.neg());
    let den = alpha.scale(&BigInt::from(2));
    div_ball_gaussian(&num, &den, prec)
}

/// `z / g` for exact nonzero Gaussian `g`.
fn div_ball_gaussian(z: &BigComplex, g: &G, prec: u32) -> BigComplex {
    let t = z.mul(&BigComplex::from_gaussian(&g.conj(), prec));
    let n = Dyadic::from_bigint(g.norm());
    let (re, e1) = t.re.div(&n, prec);
    let (im, e2) = t.im.div(&n, prec);
    let (rad, er) = t.rad.div(&n, 24);
    let mut out = BigComplex::exact_dyadic(re, im, prec);
    out.rad = rad.add(&er).add(&e1).add(&e2);
    out
}

fn discriminant_of(alpha: &G, beta: &G, gamma: &G) -> G {
    beta.mul(beta).sub(&alpha.mul(gamma).scale(&BigInt::from(4)))
}

/// Exact real/imaginary coordinates of a surd in the quadratic tower, for
/// sign queries on polynomial predicates.
pub struct SurdSigns {
    pub ctx: TowerCtx,
    pub x: TowerElem,
    pub y: TowerElem,
}

/// Polynomial `c00 + c10 X + c01 Y + c20 X^2 + c02 Y^2 + c11 XY` with
/// rational coefficients, evaluated at a point's exact coordinates.
#[derive(Clone, Debug)]
pub struct Poly2 {
    pub c00: BR,
    pub c10: BR,
    pub c01: BR,
    pub c20: BR,
    pub c02: BR,
    pub c11: BR,
}

impl Poly2 {
    pub fn constant(c: BR) -> Self {
        Poly2 {
            c00: c,
            c10: BR::zero(),
            c01: BR::zero(),
            c20: BR::zero(),
            c02: BR::zero(),
            c11: BR::zero(),
        }
    }

    pub fn linear(c00: BR, c10: BR, c01: BR) -> Self {
        Poly2 {
            c00,
            c10,
            c01,
            c20: BR::zero(),
            c02: BR::zero(),
            c11: BR::zero(),
        }
    }

    /// `|z - (cx + cy i)|^2 - rhs`
    pub fn dist_sq_minus(cx: BR, cy: BR, rhs: BR) -> Self {
        Poly2 {
            c00: &cx * &cx + &cy * &cy - rhs,
            c10: -(cx * br_from_i64(2)),
            c01: -(cy * br_from_i64(2)),
            c20: br_from_i64(1),
            c02: br_from_i64(1),
            c11: BR::zero(),
        }
    }

    /// `|z|^2 - rhs`
    pub fn magsq_minus(rhs: BR) -> Self {
        Self::dist_sq_minus(BR::zero(), BR::zero(), rhs)
    }

    /// Evaluate exactly at a rational point.
    pub fn eval_rational(&self, x: &BR, y: &BR) -> BR {
        &self.c00
            + &self.c10 * x
            + &self.c01 * y
            + &self.c20 * x * x
            + &self.c02 * y * y
            + &self.c11 * x * y
    }
}

impl SurdSigns {
    pub fn sign_poly2(&self, p: &Poly2) -> i8 {
        let ctx = &self.ctx;
        let mut acc = TowerElem::from_br(p.c00.clone());
        if !p.c10.is_zero() {
            acc = ctx.add(&acc, &self.x.scale(&p.c10));
        }
        if !p.c01.is_zero() {
            acc = ctx.add(&acc, &self.y.scale(&p.c01));
        }
        if !p.c20.is_zero() {
            acc = ctx.add(&acc, &ctx.mul(&self.x, &self.x).scale(&p.c20));
        }
        if !p.c02.is_zero() {
            acc = ctx.add(&acc, &ctx.mul(&self.y, &self.y).scale(&p.c02));
        }
        if !p.c11.is_zero() {
            acc = ctx.add(&acc, &ctx.mul(&self.x, &self.y).scale(&p.c11));
        }
        ctx.sign(&acc)
    }
}

impl QuadraticSurd {
    /// Canonicalize coefficients and certify the branch singled out by
    /// `approx`. The gcd is divided out and `alpha` is brought to the
    /// half-open first quadrant.
    pub fn normalize(alpha: G, beta: G, gamma: G, approx: &BigComplex) -> Result<Self> {
        let (alpha, beta, gamma) = Self::reduce_full(alpha, beta, gamma)?;
        let sigma = Self::sigma_from_approx(&alpha, &beta, &gamma, approx)?;
        Self::assemble(alpha, beta, gamma, sigma)
    }

    /// Construct picking the root with the larger real part (ties broken by
    /// the larger imaginary part).
    pub fn with_default_branch(alpha: G, beta: G, gamma: G) -> Result<Self> {
        let (alpha, beta, gamma) = Self::reduce_full(alpha, beta, gamma)?;
        let sigma = Self::default_sigma(&alpha, &beta, &gamma);
        Self::assemble(alpha, beta, gamma, sigma)
    }

    fn reduce_full(alpha: G, beta: G, gamma: G) -> Result<(G, G, G)> {
        if alpha.is_zero() {
            return Err(Error::InvalidInput("leading coefficient is zero".into()));
        }
        let d = discriminant_of(&alpha, &beta, &gamma);
        if d.is_zero() {
            return Err(Error::DegenerateDisc);
        }
        if gaussian_sqrt_exact(&d).is_some() {
            return Err(Error::RationalRoot);
        }
        let g = Gaussian::gcd(&Gaussian::gcd(&alpha, &beta), &gamma);
        let alpha = alpha.div_exact(&g).expect("gcd divides");
        let beta = beta.div_exact(&g).expect("gcd divides");
        let gamma = gamma.div_exact(&g).expect("gcd divides");
        let u = alpha.canonical_unit();
        Ok((alpha.mul(&u), beta.mul(&u), gamma.mul(&u)))
    }

    /// Bring `alpha` into the half plane `re > 0 or (re = 0 and im > 0)`
    /// using only +/-1, which keeps the discriminant fixed.
    fn reduce_pm(alpha: G, beta: G, gamma: G, sigma: i8) -> (G, G, G, i8) {
        let canonical = alpha.re.is_positive()
            || (alpha.re.is_zero() && alpha.im.is_positive());
        if canonical {
            (alpha, beta, gamma, sigma)
        } else {
            // negating the triple swaps which sign of w selects the root
            (alpha.neg(), beta.neg(), gamma.neg(), -sigma)
        }
    }

    fn assemble(alpha: G, beta: G, gamma: G, sigma: i8) -> Result<Self> {
        let branch = Self::certified_branch(&alpha, &beta, &gamma, sigma)?;
        Ok(QuadraticSurd {
            alpha,
            beta,
            gamma,
            sigma,
            branch,
        })
    }

    /// Lower bound on the distance between the two roots.
    fn separation_lower(alpha: &G, beta: &G, gamma: &G) -> Dyadic {
        let d = discriminant_of(alpha, beta, gamma);
        let num = Dyadic::from_bigint(d.norm()).sqrt_lower(48).sqrt_lower(48);
        let den = Dyadic::from_bigint(alpha.norm()).sqrt_upper(48);
        let (q, _) = num.div(&den, 48);
        q
    }

    fn certified_branch(alpha: &G, beta: &G, gamma: &G, sigma: i8) -> Result<BigComplex> {
        let sep = Self::separation_lower(alpha, beta, gamma);
        let mut prec = 64u32;
        loop {
            let b = eval_root(alpha, beta, gamma, sigma, prec);
            // want rad < sep/4
            if b.rad.shl(2).cmp_dyadic(&sep) == std::cmp::Ordering::Less {
                return Ok(b);
            }
            prec *= 2;
            if prec > PREC_CAP {
                return Err(Error::PrecisionExhausted(
                    "branch approximation did not converge".into(),
                ));
            }
        }
    }

    /// The root certifiably nearer to `approx`.
    fn sigma_from_approx(alpha: &G, beta: &G, gamma: &G, approx: &BigComplex) -> Result<i8> {
        let mut prec = 64u32;
        loop {
            let plus = eval_root(alpha, beta, gamma, 1, prec);
            let minus = eval_root(alpha, beta, gamma, -1, prec);
            let plus_hi = approx.dist_upper(&plus);
            let minus_hi = approx.dist_upper(&minus);
            let plus_lo = plus.dist_lower_to_ball(approx);
            let minus_lo = minus.dist_lower_to_ball(approx);
            if plus_hi.cmp_dyadic(&minus_lo) == std::cmp::Ordering::Less {
                return Ok(1);
            }
            if minus_hi.cmp_dyadic(&plus_lo) == std::cmp::Ordering::Less {
                return Ok(-1);
            }
            prec *= 2;
            if prec > PREC_CAP {
                return Err(Error::AmbiguousBranch);
            }
        }
    }

    fn default_sigma(alpha: &G, beta: &G, gamma: &G) -> i8 {
        // Re(z_+) - Re(z_-) has the sign of Re(alpha)P + sgn_y Im(alpha)Q
        let d = discriminant_of(alpha, beta, gamma);
        let ctx = TowerCtx::new(&d.re, &d.im);
        let sgn_y = if d.im.is_negative() { -1i64 } else { 1 };
        let re_diff = TowerElem::linear(
            BR::zero(),
            BR::from_integer(alpha.re.clone()),
            BR::from_integer(&alpha.im * BigInt::from(sgn_y)),
        );
        match ctx.sign(&re_diff) {
            1 => 1,
            -1 => -1,
            _ => {
                let im_diff = TowerElem::linear(
                    BR::zero(),
                    BR::from_integer(-alpha.im.clone()),
                    BR::from_integer(&alpha.re * BigInt::from(sgn_y)),
                );
                if ctx.sign(&im_diff) >= 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn alpha(&self) -> &G {
        &self.alpha
    }
    pub fn beta(&self) -> &G {
        &self.beta
    }
    pub fn gamma(&self) -> &G {
        &self.gamma
    }
    pub fn sigma(&self) -> i8 {
        self.sigma
    }
    pub fn branch(&self) -> &BigComplex {
        &self.branch
    }

    pub fn discriminant(&self) -> G {
        discriminant_of(&self.alpha, &self.beta, &self.gamma)
    }

    /// Certified approximation of the selected root.
    pub fn eval(&self, bits: u32) -> BigComplex {
        eval_root(&self.alpha, &self.beta, &self.gamma, self.sigma, bits)
    }

    /// Exact surd for `w = 1/(z - a)`. Coefficients are transported as
    /// `(alpha a^2 + beta a + gamma, 2 alpha a + beta, alpha)`; the
    /// discriminant is untouched and the principal-root sign flips.
    pub fn shift_invert(&self, a: &G) -> Self {
        let new_alpha = self
            .alpha
            .mul(&a.mul(a))
            .add(&self.beta.mul(a))
            .add(&self.gamma);
        let new_beta = self.alpha.mul(a).scale(&BigInt::from(2)).add(&self.beta);
        let new_gamma = self.alpha.clone();
        debug_assert!(!new_alpha.is_zero(), "root irrational, so z != a");
        let (alpha, beta, gamma, sigma) =
            Self::reduce_pm(new_alpha, new_beta, new_gamma, -self.sigma);
        let branch = Self::certified_branch(&alpha, &beta, &gamma, sigma)
            .expect("separation is positive");
        QuadraticSurd {
            alpha,
            beta,
            gamma,
            sigma,
            branch,
        }
    }

    fn state_key(&self) -> StateKey {
        StateKey(
            self.alpha.re.clone(),
            self.alpha.im.clone(),
            self.beta.re.clone(),
            self.beta.im.clone(),
            self.gamma.re.clone(),
            self.gamma.im.clone(),
            self.sigma,
        )
    }

    /// Exact coordinates in the sign tower.
    pub fn signs(&self) -> SurdSigns {
        let d = self.discriminant();
        let ctx = TowerCtx::new(&d.re, &d.im);
        let sgn_y = BigInt::from(if d.im.is_negative() { -1 } else { 1 });
        let n2 = BigInt::from(2) * self.alpha.norm();
        let ab = self.alpha.conj().mul(&self.beta);
        let sig = BigInt::from(self.sigma as i64);
        let frac = |num: BigInt| BR::new(num, n2.clone());
        let x = TowerElem::linear(
            frac(-ab.re.clone()),
            frac(&sig * &self.alpha.re),
            frac(&sig * &sgn_y * &self.alpha.im),
        );
        let y = TowerElem::linear(
            frac(-ab.im.clone()),
            frac(&sig * -self.alpha.im.clone()),
            frac(&sig * &sgn_y * &self.alpha.re),
        );
        SurdSigns { ctx, x, y }
    }

    /// The other root of the same polynomial.
    pub fn conjugate_root(&self) -> Self {
        let mut s = self.clone();
        s.sigma = -s.sigma;
        s.branch = Self::certified_branch(&s.alpha, &s.beta, &s.gamma, s.sigma)
            .expect("separation is positive");
        s
    }

    /// Same exact complex value.
    pub fn value_eq(&self, other: &Self) -> bool {
        // unique primitive representative with alpha in the first quadrant
        let u1 = self.alpha.canonical_unit();
        let t1 = (
            self.alpha.mul(&u1),
            self.beta.mul(&u1),
            self.gamma.mul(&u1),
        );
        let u2 = other.alpha.canonical_unit();
        let t2 = (
            other.alpha.mul(&u2),
            other.beta.mul(&u2),
            other.gamma.mul(&u2),
        );
        if t1 != t2 {
            return false;
        }
        // same polynomial: roots coincide iff the branch balls overlap once
        // the radii are below half the separation (construction guarantees
        // a quarter)
        let sep = Self::separation_lower(&self.alpha, &self.beta, &self.gamma);
        let d = self.branch.dist_upper(&other.branch);
        d.cmp_dyadic(&sep.shl(-1)) == std::cmp::Ordering::Less
    }

    /// Image under the Moebius map `z -> (p x + q)/(r x + s)` given by a
    /// determinant +/-1 integer matrix.
    pub fn mobius_image(&self, p: &G, q: &G, r: &G, s: &G) -> Result<QuadraticSurd> {
        // substitute the inverse map x = (s z - q)/(-r z + p)
        let (al, be, ga) = (&self.alpha, &self.beta, &self.gamma);
        let a2 = al.mul(&s.mul(s)).sub(&be.mul(&s.mul(r))).add(&ga.mul(&r.mul(r)));
        let b2 = be
            .mul(&s.mul(p).add(&q.mul(r)))
            .sub(&al.mul(&s.mul(q)).scale(&BigInt::from(2)))
            .sub(&ga.mul(&r.mul(p)).scale(&BigInt::from(2)));
        let c2 = al.mul(&q.mul(q)).sub(&be.mul(&q.mul(p))).add(&ga.mul(&p.mul(p)));
        let (alpha, beta, gamma) = Self::reduce_full(a2, b2, c2)?;
        // pick the branch matching the transported ball
        let mut prec = 96u32;
        loop {
            let x = self.eval(prec);
            let num = x.mul(&BigComplex::from_gaussian(p, prec)).add_gaussian(q);
            let den = x.mul(&BigComplex::from_gaussian(r, prec)).add_gaussian(s);
            if let Ok(image) = num.div(&den) {
                match Self::sigma_from_approx(&alpha, &beta, &gamma, &image) {
                    Ok(sigma) => return Self::assemble(alpha, beta, gamma, sigma),
                    Err(Error::AmbiguousBranch) => {}
                    Err(e) => return Err(e),
                }
            }
            prec *= 2;
            if prec > PREC_CAP {
                return Err(Error::PrecisionExhausted(
                    "moebius image branch selection".into(),
                ));
            }
        }
    }

    /// Iterate `z_{n+1} = 1/(z_n - choose(z_n))` with exact state equality
    /// until a repeat, returning preperiod, period and the quotient cycle.
    pub fn detect_period(
        &self,
        alg: &crate::cfalgo::Algorithm,
        max_steps: usize,
    ) -> Result<PeriodReport> {
        let disc0 = self.discriminant();
        let mut seen: HashMap<StateKey, usize> = HashMap::new();
        let mut quotients: Vec<G> = Vec::new();
        let mut state = self.clone();
        for n in 0..max_steps {
            if let Some(&m) = seen.get(&state.state_key()) {
                return Ok(PeriodReport {
                    preperiod: m,
                    period: n - m,
                    cycle: Block::new(quotients[m..n].to_vec()),
                    states_seen: n,
                });
            }
            seen.insert(state.state_key(), n);
            let a = crate::cfalgo::choose_surd(alg, &state, n >= 1);
            quotients.push(a.clone());
            state = state.shift_invert(&a);
            if state.discriminant() != disc0 {
                return Err(Error::InvalidInput(
                    "discriminant drifted during iteration".into(),
                ));
            }
        }
        Err(Error::ExceededBudget { steps: max_steps })
    }

    /// Default period-search budget.
    pub fn default_budget(&self) -> usize {
        10 * (self.discriminant().norm().bits() as usize + 20)
    }

    /// Exact surd whose expansion has the given eventual cycle: the cycle's
    /// fixed point is solved from its recurrence matrix and pulled back
    /// through the preblock.
    pub fn from_periodic(preblock: &Block<BigInt>, cycle: &Block<BigInt>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidInput("empty cycle".into()));
        }
        let states = cycle.qpair_states();
        let last = states.last().expect("nonempty");
        // fixed point of x -> (p x + p')/(q x + q')
        let (pk, pk1, qk, qk1) = (
            last.p_cur.clone(),
            last.p_prev.clone(),
            last.q_cur.clone(),
            last.q_prev.clone(),
        );
        if qk.is_zero() {
            return Err(Error::ZeroDenominator { index: cycle.len() - 1 });
        }
        let alpha = qk.clone();
        let beta = qk1.sub(&pk);
        let gamma = pk1.neg();
        let (alpha, beta, gamma) = Self::reduce_full(alpha, beta, gamma)?;
        // choose the attracting fixed point: the root maximizing
        // |q_{k-1} x + q_{k-2}|; on ties (elliptic cycles) fall back to the
        // larger-real-part convention
        let sigma = {
            let plus = QuadraticSurd::raw(alpha.clone(), beta.clone(), gamma.clone(), 1);
            let t_plus = plus.lambda_norm_sq(&qk, &qk1);
            let minus = QuadraticSurd::raw(alpha.clone(), beta.clone(), gamma.clone(), -1);
            let t_minus = minus.lambda_norm_sq(&qk, &qk1);
            let ctx = &plus.signs().ctx;
            let diff = t_plus.sub(ctx, &t_minus);
            match ctx.sign(&diff) {
                1 => 1,
                -1 => -1,
                _ => Self::default_sigma(&alpha, &beta, &gamma),
            }
        };
        let fixed = Self::assemble(alpha, beta, gamma, sigma)?;
        if preblock.is_empty() {
            return Ok(fixed);
        }
        // z = M_pre(x)
        let pre_states = preblock.qpair_states();
        let m = pre_states.last().expect("nonempty");
        fixed.mobius_image(&m.p_cur, &m.p_prev, &m.q_cur, &m.q_prev)
    }

    fn raw(alpha: G, beta: G, gamma: G, sigma: i8) -> Self {
        // internal: skip branch certification (used only for sign queries)
        QuadraticSurd {
            branch: BigComplex::from_gaussian(&G::zero(), 32),
            alpha,
            beta,
            gamma,
            sigma,
        }
    }

    /// `|c x + d|^2` at this root, as a tower element.
    fn lambda_norm_sq(&self, c: &G, d: &G) -> TowerElem {
        let signs = self.signs();
        let ctx = &signs.ctx;
        // |c x + d|^2 = |c|^2 |x|^2 + 2 Re(x c conj(d)) + |d|^2
        let w = c.mul(&d.conj());
        let xsq = ctx.mul(&signs.x, &signs.x);
        let ysq = ctx.mul(&signs.y, &signs.y);
        let magsq = ctx.add(&xsq, &ysq);
        let re_xw = ctx.add(
            &signs.x.scale(&BR::from_integer(w.re.clone())),
            &signs.y.scale(&BR::from_integer(-w.im.clone())),
        );
        let mut acc = magsq.scale(&BR::from_integer(c.norm()));
        acc = ctx.add(&acc, &re_xw.scale(&br_from_i64(2)));
        ctx.add(&acc, &TowerElem::from_br(BR::from_integer(d.norm())))
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadraticSurd", 4)?;
        st.serialize_field("alpha", &self.alpha.to_string())?;
        st.serialize_field("beta", &self.beta.to_string())?;
        st.serialize_field("gamma", &self.gamma.to_string())?;
        st.serialize_field("branch_hint", &self.branch.log_form())?;
        st.end()
    }
}

/// Arithmetic in the quadratic extension `Q(i)[z]` modulo the surd's
/// polynomial: elements `u + v z` with Gaussian-rational coordinates.
#[derive(Clone, Debug)]
pub struct SurdField {
    /// `z^2 = -(beta/alpha) z - gamma/alpha`
    neg_beta_over_alpha: Q,
    neg_gamma_over_alpha: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdElem {
    pub u: Q,
    pub v: Q,
}

impl SurdField {
    pub fn new(s: &QuadraticSurd) -> Self {
        let alpha = Q::from_gaussian(s.alpha.clone());
        SurdField {
            neg_beta_over_alpha: Q::from_gaussian(s.beta.neg()).div(&alpha).unwrap(),
            neg_gamma_over_alpha: Q::from_gaussian(s.gamma.neg()).div(&alpha).unwrap(),
        }
    }

    pub fn zero(&self) -> SurdElem {
        SurdElem {
            u: Q::zero(),
            v: Q::zero(),
        }
    }

    pub fn from_rational(&self, q: Q) -> SurdElem {
        SurdElem { u: q, v: Q::zero() }
    }

    pub fn root(&self) -> SurdElem {
        SurdElem {
            u: Q::zero(),
            v: Q::from_gaussian(G::one()),
        }
    }

    pub fn add(&self, a: &SurdElem, b: &SurdElem) -> SurdElem {
        SurdElem {
            u: a.u.add(&b.u),
            v: a.v.add(&b.v),
        }
    }

    pub fn sub(&self, a: &SurdElem, b: &SurdElem) -> SurdElem {
        SurdElem {
            u: a.u.sub(&b.u),
            v: a.v.sub(&b.v),
        }
    }

    pub fn mul(&self, a: &SurdElem, b: &SurdElem) -> SurdElem {
        let vv = a.v.mul(&b.v);
        SurdElem {
            u: a.u.mul(&b.u).add(&vv.mul(&self.neg_gamma_over_alpha)),
            v: a.u
                .mul(&b.v)
                .add(&a.v.mul(&b.u))
                .add(&vv.mul(&self.neg_beta_over_alpha)),
        }
    }

    /// `1/(u + v z)`; fails only on the zero element.
    pub fn inv(&self, a: &SurdElem) -> Result<SurdElem> {
        if a.u.is_zero() && a.v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // multiply by u + v z~ where z~ = -beta/alpha - z is the other root
        let trace = &self.neg_beta_over_alpha; // z + z~
        let norm_term = &self.neg_gamma_over_alpha.neg(); // z z~ = gamma/alpha
        let n = a
            .u
            .mul(&a.u)
            .add(&a.u.mul(&a.v).mul(trace))
            .add(&a.v.mul(&a.v).mul(norm_term));
        // n = (u + v z)(u + v z~) is a nonzero Gaussian rational
        let n_inv = n.inv()?;
        let u_out = a.u.add(&a.v.mul(trace)).mul(&n_inv);
        let v_out = a.v.neg().mul(&n_inv);
        Ok(SurdElem { u: u_out, v: v_out })
    }

    pub fn sub_gaussian(&self, a: &SurdElem, g: &G) -> SurdElem {
        SurdElem {
            u: a.u.sub_gaussian(g),
            v: a.v.clone(),
        }
    }
}

trait DistLowerExt {
    fn dist_lower_to_ball(&self, other: &BigComplex) -> Dyadic;
}

impl DistLowerExt for BigComplex {
    /// Lower bound on the distance between the represented values.
    fn dist_lower_to_ball(&self, other: &BigComplex) -> Dyadic {
        let dre = self.re.sub(&other.re);
        let dim = self.im.sub(&other.im);
        let lo = dre
            .square()
            .add(&dim.square())
            .sqrt_lower(48)
            .sub(&self.rad)
            .sub(&other.rad);
        if lo.sign() < 0 {
            Dyadic::zero()
        } else {
            lo
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> G {
        G::from_i64s(re, im)
    }

    fn golden() -> QuadraticSurd {
        QuadraticSurd::with_default_branch(g(1, 0), g(-1, 0), g(-1, 0)).unwrap()
    }

    fn sqrt2() -> QuadraticSurd {
        QuadraticSurd::with_default_branch(g(1, 0), g(0, 0), g(-2, 0)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let s = QuadraticSurd::with_default_branch(g(2, 0), g(-2, 0), g(-2, 0)).unwrap();
        assert_eq!(s.alpha(), &g(1, 0));
        assert_eq!(s.beta(), &g(-1, 0));
        assert_eq!(s.gamma(), &g(-1, 0));

        let s = QuadraticSurd::with_default_branch(g(0, 1), g(0, -1), g(0, -1)).unwrap();
        assert_eq!(s.alpha(), &g(1, 0));
        assert_eq!(s.beta(), &g(-1, 0));
        assert_eq!(s.gamma(), &g(-1, 0));

        assert_eq!(
            QuadraticSurd::with_default_branch(g(1, 0), g(0, 0), g(-4, 0)),
            Err(Error::RationalRoot)
        );
        assert_eq!(
            QuadraticSurd::with_default_branch(g(1, 0), g(-2, 0), g(1, 0)),
            Err(Error::DegenerateDisc)
        );
    }

    #[test]
    fn eval_known_constants() {
        let phi = golden().eval(96);
        assert!((phi.re.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert!(phi.im.to_f64().abs() < 1e-12);
        assert!(phi.rad.to_f64() < 1e-25);

        let r2 = sqrt2().eval(96);
        assert!((r2.re.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-12);

        // z^2 - iz - 1 = 0, default branch has larger real part
        let s = QuadraticSurd::with_default_branch(g(1, 0), g(0, -1), g(-1, 0)).unwrap();
        let v = s.eval(96);
        assert!((v.re.to_f64() - 0.866_025_403_784_438_6).abs() < 1e-12);
        assert!((v.im.to_f64() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn branch_selection_from_approx() {
        let minus_phi_conj = BigComplex::from_f64s(-0.618, 0.0, 64).unwrap();
        let s = QuadraticSurd::normalize(g(1, 0), g(-1, 0), g(-1, 0), &minus_phi_conj).unwrap();
        let v = s.eval(96);
        assert!((v.re.to_f64() + 0.618_033_988_749_895).abs() < 1e-9);
    }

    #[test]
    fn shift_invert_examples() {
        // golden, a = 2 -> (1, 3, 1)
        let s = golden().shift_invert(&g(2, 0));
        assert_eq!(
            (s.alpha(), s.beta(), s.gamma()),
            (&g(1, 0), &g(3, 0), &g(1, 0))
        );
        // root is 1/(phi - 2) = -(3+sqrt5)/2
        let v = s.eval(96);
        assert!((v.re.to_f64() + 2.618_033_988_749_895).abs() < 1e-12);
        // discriminant preserved
        assert_eq!(s.discriminant(), golden().discriminant());

        // a = 0 swaps outer coefficients
        let s = golden().shift_invert(&g(0, 0));
        assert_eq!(
            (s.alpha(), s.beta(), s.gamma()),
            (&g(1, 0), &g(1, 0), &g(-1, 0))
        );

        // sqrt2, a = 1 -> normalized (1, -2, -1), root 1 + sqrt2
        let s = sqrt2().shift_invert(&g(1, 0));
        assert_eq!(
            (s.alpha(), s.beta(), s.gamma()),
            (&g(1, 0), &g(-2, 0), &g(-1, 0))
        );
        let v = s.eval(96);
        assert!((v.re.to_f64() - 2.414_213_562_373_095).abs() < 1e-12);
        assert_eq!(s.discriminant(), sqrt2().discriminant());
    }

    #[test]
    fn shift_invert_matches_field_arithmetic() {
        // exact cross-check: 1/(z - a) computed in Q(i)(z)
        let s = golden();
        let field = SurdField::new(&s);
        let z = field.root();
        for a in [g(2, 0), g(-3, 0), g(1, 1), g(0, 2)] {
            let w_field = field.inv(&field.sub_gaussian(&z, &a)).unwrap();
            // w satisfies the shifted surd's polynomial:
            // alpha' w^2 + beta' w + gamma' = 0
            let t = s.shift_invert(&a);
            let alpha = field.from_rational(Q::from_gaussian(t.alpha().clone()));
            let beta = field.from_rational(Q::from_gaussian(t.beta().clone()));
            let gamma = field.from_rational(Q::from_gaussian(t.gamma().clone()));
            let val = field.add(
                &field.add(
                    &field.mul(&alpha, &field.mul(&w_field, &w_field)),
                    &field.mul(&beta, &w_field),
                ),
                &gamma,
            );
            assert_eq!(val, field.zero(), "a = {a}");
        }
    }

    #[test]
    fn signs_locate_golden_ratio() {
        let s = golden();
        let signs = s.signs();
        // 1 < phi < 2
        assert_eq!(signs.sign_poly2(&Poly2::linear(br_from_i64(-1), br_from_i64(1), BR::zero())), 1);
        assert_eq!(signs.sign_poly2(&Poly2::linear(br_from_i64(-2), br_from_i64(1), BR::zero())), -1);
        // phi^2 = phi + 1: X^2 - X - 1 = 0
        let p = Poly2 {
            c00: br_from_i64(-1),
            c10: br_from_i64(-1),
            c01: BR::zero(),
            c20: br_from_i64(1),
            c02: BR::zero(),
            c11: BR::zero(),
        };
        assert_eq!(signs.sign_poly2(&p), 0);
        // |z|^2 > 2
        assert_eq!(signs.sign_poly2(&Poly2::magsq_minus(br_from_i64(2))), 1);
    }

    #[test]
    fn from_periodic_examples() {
        // preblock (1), cycle (2) -> sqrt(2)
        let s = QuadraticSurd::from_periodic(
            &Block::from_i64_pairs(&[(1, 0)]),
            &Block::from_i64_pairs(&[(2, 0)]),
        )
        .unwrap();
        assert!(s.value_eq(&sqrt2()), "got {:?}", s);

        // empty preblock, cycle (1) -> golden ratio
        let s = QuadraticSurd::from_periodic(
            &Block::new(vec![]),
            &Block::from_i64_pairs(&[(1, 0)]),
        )
        .unwrap();
        assert!(s.value_eq(&golden()));

        // cycle (i): z = i + 1/z, degenerate twelfth-root case, branch
        // convention picks (sqrt3 + i)/2
        let s = QuadraticSurd::from_periodic(
            &Block::new(vec![]),
            &Block::from_i64_pairs(&[(0, 1)]),
        )
        .unwrap();
        assert_eq!(
            (s.alpha(), s.beta(), s.gamma()),
            (&g(1, 0), &g(0, -1), &g(-1, 0))
        );
        let v = s.eval(96);
        assert!((v.re.to_f64() - 0.866_025_403_784_438_6).abs() < 1e-12);
        assert!((v.im.to_f64() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mobius_image_round_trip() {
        // z -> z + 3 via U_3, then back
        let s = golden();
        let t = s
            .mobius_image(&g(1, 0), &g(3, 0), &g(0, 0), &g(1, 0))
            .unwrap();
        let v = t.eval(96);
        assert!((v.re.to_f64() - (1.618_033_988_749_895 + 3.0)).abs() < 1e-12);
        let back = t
            .mobius_image(&g(1, 0), &g(-3, 0), &g(0, 0), &g(1, 0))
            .unwrap();
        assert!(back.value_eq(&s));
    }

    #[test]
    fn detect_period_examples() {
        use crate::cfalgo::Algorithm;
        // golden ratio under the nearest-integer rule: preperiod 1, cycle (-3, 3)
        let r = golden().detect_period(&Algorithm::Hurwitz, 100).unwrap();
        assert_eq!(r.preperiod, 1);
        assert_eq!(r.period, 2);
        assert_eq!(r.cycle, Block::from_i64_pairs(&[(-3, 0), (3, 0)]));

        // sqrt(2): preperiod 1, cycle (2)
        let r = sqrt2().detect_period(&Algorithm::Hurwitz, 100).unwrap();
        assert_eq!(r.preperiod, 1);
        assert_eq!(r.period, 1);
        assert_eq!(r.cycle, Block::from_i64_pairs(&[(2, 0)]));

        // golden ratio under displacement 0.3: purely periodic (1)
        let alg = Algorithm::shifted_hurwitz(
            BR::new(BigInt::from(3), BigInt::from(10)),
            BR::zero(),
            BR::from_integer(BigInt::one()),
        )
        .unwrap();
        let r = golden().detect_period(&alg, 100).unwrap();
        assert_eq!(r.preperiod, 0);
        assert_eq!(r.period, 1);
        assert_eq!(r.cycle, Block::from_i64_pairs(&[(1, 0)]));
    }

    #[test]
    fn detect_period_budget_error() {
        use crate::cfalgo::Algorithm;
        match golden().detect_period(&Algorithm::Hurwitz, 2) {
            Err(Error::ExceededBudget { steps: 2 }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_through_period() {
        use crate::cfalgo::Algorithm;
        // detect, rebuild from (preperiod, cycle), compare against the tail
        let s = QuadraticSurd::with_default_branch(g(2, 1), g(-3, 2), g(1, -4)).unwrap();
        let r = s.detect_period(&Algorithm::Hurwitz, 1000).unwrap();
        let rebuilt = QuadraticSurd::from_periodic(&Block::new(vec![]), &r.cycle).unwrap();
        // advance s to the start of the cycle
        let mut tail = s.clone();
        let e = crate::cfalgo::expand(
            &Algorithm::Hurwitz,
            &crate::cfalgo::CfValue::Surd(s.clone()),
            r.preperiod,
        )
        .unwrap();
        for a in &e.quotients {
            tail = tail.shift_invert(a);
        }
        assert!(rebuilt.value_eq(&tail), "rebuilt {rebuilt:?} vs tail {tail:?}");
    }

    #[test]
    fn serialization_shape() {
        let s = golden();
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j["alpha"], "1");
        assert_eq!(j["beta"], "-1");
        assert_eq!(j["gamma"], "-1");
        assert!(j["branch_hint"]["re"].as_f64().unwrap() > 1.6);
    }
}
