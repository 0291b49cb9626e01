//! Choice-function algorithms, the expansion driver, and iteration-sequence
//! validation.
//!
//! Decisions on exact inputs (Gaussian rationals, quadratic surds) are made
//! with exact arithmetic and never fail; decisions on certified balls fail
//! with `AmbiguousChoice` when the interval straddles a boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::bigc::{BigComplex, DEFAULT_PREC, PREC_CAP};
use crate::dyadic::RealBall;
use crate::error::{Error, Result};
use crate::exact::{br_from_i64, quad_sign, BR};
use crate::gauss::{GRational, Gaussian};
use crate::qpair::QPairState;
use crate::surd::{Poly2, QuadraticSurd, SurdSigns};

type G = Gaussian<BigInt>;
type Q = GRational<BigInt>;

fn br(n: i64, d: i64) -> BR {
    BR::new(BigInt::from(n), BigInt::from(d))
}

/// A continued fraction algorithm: a rule assigning to each complex number
/// a Gaussian integer within unit distance.
#[derive(Clone, Debug, PartialEq)]
pub enum Algorithm {
    /// Nearest Gaussian integer.
    Hurwitz,
    /// Nearest Gaussian integer to `z - d` among lattice points within
    /// distance `r` of `z`, with `r` in `[1/sqrt2, 1]`.
    ShiftedHurwitz { d_re: BR, d_im: BR, r: BR },
    /// Nearest even Gaussian integer (`re + im` even).
    NearestEven,
    /// Corner-of-cell rule: the lattice point below-left unless the
    /// fractional part leaves the unit disc, then the nearer of the two
    /// adjacent lattice points.
    FirstQuadrant,
    /// Nearest integer, except that fractional parts in the star region `R`
    /// take the nearest odd integer instead.
    Ppoi,
}

impl Algorithm {
    pub fn shifted_hurwitz(d_re: BR, d_im: BR, r: BR) -> Result<Self> {
        // require r in [1/sqrt2, 1]: r^2 >= 1/2 and r <= 1
        if r.is_negative() || &r * &r < br(1, 2) || r > br(1, 1) {
            return Err(Error::InvalidInput(
                "shifted-hurwitz radius must lie in [1/sqrt2, 1]".into(),
            ));
        }
        Ok(Algorithm::ShiftedHurwitz { d_re, d_im, r })
    }

    /// Whether the fundamental set is contained in an open ball of radius
    /// below 1 about the origin, which guarantees rational inputs
    /// terminate.
    pub fn has_contractive_fundamental_set(&self) -> bool {
        match self {
            Algorithm::Hurwitz => true,
            Algorithm::FirstQuadrant => true,
            Algorithm::NearestEven => false,
            Algorithm::Ppoi => false,
            Algorithm::ShiftedHurwitz { d_re, d_im, .. } => {
                // |d| < 1 - 1/sqrt2: |d|^2 - 3/2 + sqrt2 < 0
                let dsq = d_re * d_re + d_im * d_im;
                quad_sign(&(dsq - br(3, 2)), &br(1, 1), &br(2, 1)) < 0
            }
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Hurwitz => write!(f, "hurwitz"),
            Algorithm::ShiftedHurwitz { d_re, d_im, r } => {
                write!(f, "shifted-hurwitz(d={d_re}+{d_im}i,r={r})")
            }
            Algorithm::NearestEven => write!(f, "nearest-even"),
            Algorithm::FirstQuadrant => write!(f, "first-quadrant"),
            Algorithm::Ppoi => write!(f, "ppoi"),
        }
    }
}

/// An expansion input: exact rational, exact surd, or certified ball.
#[derive(Clone, Debug)]
pub enum CfValue {
    Rational(Q),
    Surd(QuadraticSurd),
    Ball(BigComplex),
}

impl CfValue {
    pub fn eval_ball(&self, prec: u32) -> BigComplex {
        match self {
            CfValue::Rational(q) => BigComplex::from_rational(q, prec),
            CfValue::Surd(s) => s.eval(prec),
            CfValue::Ball(b) => b.clone(),
        }
    }
}

/// A point on which sign predicates can be evaluated.
enum PointData<'a> {
    Rational { x: BR, y: BR },
    Surd { signs: SurdSigns, hint: (BigInt, BigInt) },
    Ball(&'a BigComplex),
}

pub(crate) struct Point<'a> {
    data: PointData<'a>,
}

impl<'a> Point<'a> {
    pub fn from_value(z: &'a CfValue) -> Self {
        let data = match z {
            CfValue::Rational(q) => PointData::Rational {
                x: q.re_ratio(),
                y: q.im_ratio(),
            },
            CfValue::Surd(s) => {
                let b = s.branch();
                PointData::Surd {
                    signs: s.signs(),
                    hint: (
                        b.re.to_ratio().floor().to_integer(),
                        b.im.to_ratio().floor().to_integer(),
                    ),
                }
            }
            CfValue::Ball(b) => PointData::Ball(b),
        };
        Point { data }
    }

    /// Certified sign of a polynomial predicate at this point.
    fn sign_poly2(&self, p: &Poly2) -> Result<i8> {
        match &self.data {
            PointData::Rational { x, y } => {
                let v = p.eval_rational(x, y);
                Ok(if v.is_zero() {
                    0
                } else if v.is_negative() {
                    -1
                } else {
                    1
                })
            }
            PointData::Surd { signs, .. } => Ok(signs.sign_poly2(p)),
            PointData::Ball(b) => {
                // clear denominators so the interval evaluation is exact
                let coeffs = [&p.c00, &p.c10, &p.c01, &p.c20, &p.c02, &p.c11];
                let mut l = BigInt::one();
                for c in coeffs {
                    l = l.lcm(c.denom());
                }
                let x = b.re_ball();
                let y = b.im_ball();
                let term = |c: &BR, t: RealBall| -> RealBall {
                    let k = c.numer() * (&l / c.denom());
                    t.mul_bigint(&k)
                };
                let one = RealBall::exact(crate::dyadic::Dyadic::one());
                let mut acc = term(&p.c00, one);
                acc = acc.add(&term(&p.c10, x.clone()));
                acc = acc.add(&term(&p.c01, y.clone()));
                acc = acc.add(&term(&p.c20, x.mul(&x)));
                acc = acc.add(&term(&p.c02, y.mul(&y)));
                acc = acc.add(&term(&p.c11, x.mul(&y)));
                acc.sign().ok_or_else(|| {
                    Error::AmbiguousChoice("interval straddles a decision boundary".into())
                })
            }
        }
    }

    /// Approximate integer parts of the coordinates; accuracy is repaired
    /// by certified floor queries.
    fn hint(&self) -> (BigInt, BigInt) {
        let fl = |r: &BR| r.floor().to_integer();
        match &self.data {
            PointData::Rational { x, y } => (fl(x), fl(y)),
            PointData::Surd { hint, .. } => hint.clone(),
            PointData::Ball(b) => (fl(&b.re.to_ratio()), fl(&b.im.to_ratio())),
        }
    }

    fn sign_x_minus(&self, c: &BR) -> Result<i8> {
        self.sign_poly2(&Poly2::linear(-c.clone(), br(1, 1), BR::zero()))
    }

    fn sign_y_minus(&self, c: &BR) -> Result<i8> {
        self.sign_poly2(&Poly2::linear(-c.clone(), BR::zero(), br(1, 1)))
    }

    /// Certified floor of a coordinate.
    fn floor_coord(&self, want_x: bool, hint: BigInt) -> Result<BigInt> {
        let mut k = hint;
        for _ in 0..256 {
            let lo = if want_x {
                self.sign_x_minus(&BR::from_integer(k.clone()))?
            } else {
                self.sign_y_minus(&BR::from_integer(k.clone()))?
            };
            if lo < 0 {
                k -= 1;
                continue;
            }
            let hi = if want_x {
                self.sign_x_minus(&BR::from_integer(&k + 1))?
            } else {
                self.sign_y_minus(&BR::from_integer(&k + 1))?
            };
            if hi >= 0 {
                k += 1;
                continue;
            }
            return Ok(k);
        }
        Err(Error::AmbiguousChoice("floor search did not settle".into()))
    }
}

/// Comparison polynomial `|z - p1|^2 - |z - p2|^2` (linear).
fn cmp_dist_poly(p1: &(BR, BR), p2: &(BR, BR)) -> Poly2 {
    let two = br(2, 1);
    Poly2::linear(
        &p1.0 * &p1.0 + &p1.1 * &p1.1 - &p2.0 * &p2.0 - &p2.1 * &p2.1,
        &two * (&p2.0 - &p1.0),
        &two * (&p2.1 - &p1.1),
    )
}

fn g_to_br(g: &G) -> (BR, BR) {
    (
        BR::from_integer(g.re.clone()),
        BR::from_integer(g.im.clone()),
    )
}

/// Candidate box around the hint, inclusive offsets.
fn candidate_box(hint: &(BigInt, BigInt), lo: i64, hi: i64) -> Vec<G> {
    let mut v = Vec::new();
    let mut dx = lo;
    while dx <= hi {
        let mut dy = lo;
        while dy <= hi {
            v.push(G::new(&hint.0 + BigInt::from(dx), &hint.1 + BigInt::from(dy)));
            dy += 1;
        }
        dx += 1;
    }
    v
}

fn lex_min(cands: Vec<G>) -> G {
    cands
        .into_iter()
        .min_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)))
        .expect("nonempty candidate set")
}

/// Among candidates, keep those minimizing distance to `target`, then break
/// ties lexicographically on `(re, im)`.
fn argmin_distance(point: &Point, cands: Vec<G>, target_shift: &(BR, BR)) -> Result<G> {
    let mut best: Vec<G> = Vec::new();
    for c in cands {
        let pc = {
            let (x, y) = g_to_br(&c);
            (x + &target_shift.0, y + &target_shift.1)
        };
        if best.is_empty() {
            best.push(c);
            continue;
        }
        let pb = {
            let (x, y) = g_to_br(&best[0]);
            (x + &target_shift.0, y + &target_shift.1)
        };
        match point.sign_poly2(&cmp_dist_poly(&pc, &pb))? {
            -1 => {
                best.clear();
                best.push(c);
            }
            0 => best.push(c),
            _ => {}
        }
    }
    if best.is_empty() {
        return Err(Error::AmbiguousChoice("empty candidate set".into()));
    }
    Ok(lex_min(best))
}

/// The eight boundary points of the star region: one coordinate `+/-1/6`,
/// the other `+/-1/2`.
pub fn ppoi_p_points() -> Vec<(BR, BR)> {
    let mut v = Vec::with_capacity(8);
    for sx in [1i64, -1] {
        for sy in [1i64, -1] {
            v.push((br(sx, 6), br(sy, 2)));
            v.push((br(sx, 2), br(sy, 6)));
        }
    }
    v
}

/// Exact star-region geometry of the odd-preferring algorithm.
pub struct PpoiGeometry;

impl PpoiGeometry {
    /// Closed unit square `|x| <= 1/2, |y| <= 1/2`.
    pub fn in_s(x: &BR, y: &BR) -> bool {
        x.abs() <= br(1, 2) && y.abs() <= br(1, 2)
    }

    /// `R`: points of `S` at distance >= 1/3 from all eight points of `P`.
    pub fn in_r(x: &BR, y: &BR) -> bool {
        debug_assert!(Self::in_s(x, y));
        ppoi_p_points().iter().all(|(px, py)| {
            let dx = x - px;
            let dy = y - py;
            &dx * &dx + &dy * &dy >= br(1, 9)
        })
    }

    pub fn corners() -> Vec<(BR, BR)> {
        let mut v = Vec::new();
        for sx in [1i64, -1] {
            for sy in [1i64, -1] {
                v.push((br(sx, 2), br(sy, 2)));
            }
        }
        v
    }

    /// `T(c)`: the closed triangle of the other three corners of `S`.
    pub fn in_t(c: &(BR, BR), x: &BR, y: &BR) -> bool {
        Self::in_s(x, y) && &c.0 * x + &c.1 * y <= BR::zero()
    }

    /// `Phi(c) = c + (R intersect T(c))`.
    pub fn in_phi_corner(c: &(BR, BR), x: &BR, y: &BR) -> bool {
        let wx = x - &c.0;
        let wy = y - &c.1;
        Self::in_s(&wx, &wy) && Self::in_t(c, &wx, &wy) && Self::in_r(&wx, &wy)
    }

    pub fn in_any_phi_corner(x: &BR, y: &BR) -> bool {
        Self::corners().iter().any(|c| Self::in_phi_corner(c, x, y))
    }
}

/// Membership of a point of `S` in the star region `R`, by the closed
/// inequality `d(w, p) >= 1/3` against all eight points.
pub fn in_ppoi_r(w: &CfValue) -> Result<bool> {
    let point = Point::from_value(w);
    in_ppoi_r_point(&point, &(BigInt::zero(), BigInt::zero()))
}

fn in_ppoi_r_point(point: &Point, origin: &(BigInt, BigInt)) -> Result<bool> {
    // precondition: the point lies in origin + closed unit square
    for (px, py) in ppoi_p_points() {
        let cx = BR::from_integer(origin.0.clone()) + px;
        let cy = BR::from_integer(origin.1.clone()) + py;
        let s = point.sign_poly2(&Poly2::dist_sq_minus(cx, cy, br(1, 9)))?;
        if s < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Apply the algorithm's choice function at a point.
fn choose_point(alg: &Algorithm, point: &Point, exclude_zero: bool) -> Result<G> {
    let zero_shift = (BR::zero(), BR::zero());
    let filter_zero = |v: Vec<G>| -> Vec<G> {
        if exclude_zero {
            v.into_iter().filter(|c| !c.is_zero()).collect()
        } else {
            v
        }
    };
    match alg {
        Algorithm::Hurwitz => {
            let hint = point.hint();
            let kx = point.floor_coord(true, hint.0)?;
            let ky = point.floor_coord(false, hint.1)?;
            let cands = filter_zero(candidate_box(&(kx, ky), 0, 1));
            argmin_distance(point, cands, &zero_shift)
        }
        Algorithm::ShiftedHurwitz { d_re, d_im, r } => {
            let hint = point.hint();
            let kx = point.floor_coord(true, hint.0)?;
            let ky = point.floor_coord(false, hint.1)?;
            let mut cands = Vec::new();
            for c in filter_zero(candidate_box(&(kx, ky), -1, 2)) {
                // keep candidates with |c - z| <= r
                let (cx, cy) = g_to_br(&c);
                let s =
                    point.sign_poly2(&Poly2::dist_sq_minus(cx, cy, r * r))?;
                if s <= 0 {
                    cands.push(c);
                }
            }
            // minimize |c - (z - d)| = |(c + d) - z|
            argmin_distance(point, cands, &(d_re.clone(), d_im.clone()))
        }
        Algorithm::NearestEven => {
            let hint = point.hint();
            let kx = point.floor_coord(true, hint.0)?;
            let ky = point.floor_coord(false, hint.1)?;
            let cands: Vec<G> = filter_zero(candidate_box(&(kx, ky), -1, 2))
                .into_iter()
                .filter(|c| c.is_even())
                .collect();
            argmin_distance(point, cands, &zero_shift)
        }
        Algorithm::FirstQuadrant => {
            let hint = point.hint();
            let kx = point.floor_coord(true, hint.0)?;
            let ky = point.floor_coord(false, hint.1)?;
            let z0 = G::new(kx.clone(), ky.clone());
            let (zx, zy) = g_to_br(&z0);
            let inside =
                point.sign_poly2(&Poly2::dist_sq_minus(zx, zy, br(1, 1)))? < 0;
            let allowed = |c: &G| !(exclude_zero && c.is_zero());
            if inside && allowed(&z0) {
                return Ok(z0);
            }
            let right = G::new(&kx + 1, ky.clone());
            let up = G::new(kx, &ky + 1);
            match (allowed(&right), allowed(&up)) {
                (true, false) => return Ok(right),
                (false, true) => return Ok(up),
                (false, false) => {
                    return Err(Error::AmbiguousChoice("no nonzero candidate".into()))
                }
                _ => {}
            }
            let pr = g_to_br(&right);
            let pu = g_to_br(&up);
            // nearer of the two; ties go to z0 + 1
            match point.sign_poly2(&cmp_dist_poly(&pr, &pu))? {
                1 => Ok(up),
                _ => Ok(right),
            }
        }
        Algorithm::Ppoi => {
            let hint = point.hint();
            let kx = point.floor_coord(true, hint.0)?;
            let ky = point.floor_coord(false, hint.1)?;
            // find a lattice point with z - z0 in the closed unit square
            let half = br(1, 2);
            let mut origin = None;
            'outer: for c in candidate_box(&(kx.clone(), ky.clone()), 0, 1) {
                let (cx, cy) = g_to_br(&c);
                for (want_x, center) in [(true, &cx), (false, &cy)] {
                    let lo = if want_x {
                        point.sign_x_minus(&(center - &half))?
                    } else {
                        point.sign_y_minus(&(center - &half))?
                    };
                    let hi = if want_x {
                        point.sign_x_minus(&(center + &half))?
                    } else {
                        point.sign_y_minus(&(center + &half))?
                    };
                    if lo < 0 || hi > 0 {
                        continue 'outer;
                    }
                }
                origin = Some(c);
                break;
            }
            let origin = origin.ok_or_else(|| {
                Error::AmbiguousChoice("no certified unit-square origin".into())
            })?;
            let in_r = in_ppoi_r_point(point, &(origin.re.clone(), origin.im.clone()))?;
            if !in_r {
                // plain nearest integer
                let cands = filter_zero(candidate_box(&(kx, ky), 0, 1));
                return argmin_distance(point, cands, &zero_shift);
            }
            // nearest odd integer
            let cands: Vec<G> = filter_zero(candidate_box(&(kx, ky), -1, 2))
                .into_iter()
                .filter(|c| !c.is_even())
                .collect();
            argmin_distance(point, cands, &zero_shift)
        }
    }
}

/// The algorithm's choice at a value (zero permitted, as for `a_0`).
pub fn choose(alg: &Algorithm, z: &CfValue) -> Result<G> {
    choose_point(alg, &Point::from_value(z), false)
}

/// Choice at an exact surd; total.
pub fn choose_surd(alg: &Algorithm, s: &QuadraticSurd, exclude_zero: bool) -> G {
    let value = CfValue::Surd(s.clone());
    let point = Point::from_value(&value);
    choose_point(alg, &point, exclude_zero).expect("exact signs are total")
}

/// Choice at an exact rational; total.
pub fn choose_rational(alg: &Algorithm, q: &Q, exclude_zero: bool) -> G {
    let value = CfValue::Rational(q.clone());
    let point = Point::from_value(&value);
    choose_point(alg, &point, exclude_zero).expect("exact signs are total")
}

/// A recorded expansion: quotients, iterate snapshots, recurrence states.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub algorithm: Algorithm,
    pub quotients: Vec<G>,
    pub iterates: Vec<BigComplex>,
    pub qpairs: Vec<QPairState<BigInt>>,
    pub terminated: bool,
    pub termination_index: Option<usize>,
}

impl Expansion {
    pub fn convergents(&self) -> Vec<Option<Q>> {
        self.qpairs.iter().map(|st| st.convergent().ok()).collect()
    }
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Expansion", 5)?;
        st.serialize_field("algorithm", &self.algorithm.to_string())?;
        let quots: Vec<String> = self.quotients.iter().map(|g| g.to_string()).collect();
        st.serialize_field("quotients", &quots)?;
        let convs: Vec<Option<String>> = self
            .convergents()
            .into_iter()
            .map(|c| c.map(|q| q.to_string()))
            .collect();
        st.serialize_field("convergents", &convs)?;
        st.serialize_field("terminated", &self.terminated)?;
        st.serialize_field("termination_index", &self.termination_index)?;
        st.end()
    }
}

/// Expand `z` to at most `max_depth` quotients (or until termination on
/// exact rational inputs).
pub fn expand(alg: &Algorithm, z: &CfValue, max_depth: usize) -> Result<Expansion> {
    expand_prec(alg, z, max_depth, DEFAULT_PREC)
}

/// As `expand`, with explicit working precision for ball inputs and
/// iterate snapshots. Ball inputs are replayed from the input at doubled
/// working precision whenever a choice is ambiguous.
pub fn expand_prec(
    alg: &Algorithm,
    z: &CfValue,
    max_depth: usize,
    prec: u32,
) -> Result<Expansion> {
    if max_depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    match z {
        CfValue::Rational(q) => expand_rational(alg, q, max_depth),
        CfValue::Surd(s) => expand_surd(alg, s, max_depth),
        CfValue::Ball(b) => {
            let mut p = prec;
            loop {
                match expand_ball(alg, b, max_depth, p) {
                    Err(Error::AmbiguousChoice(_)) => {
                        p *= 2;
                        if p > PREC_CAP {
                            return Err(Error::PrecisionExhausted(format!(
                                "ball expansion still ambiguous at the {PREC_CAP}-bit cap"
                            )));
                        }
                    }
                    other => return other,
                }
            }
        }
    }
}

fn expand_rational(alg: &Algorithm, z0: &Q, max_depth: usize) -> Result<Expansion> {
    let mut quotients = Vec::new();
    let mut iterates = Vec::new();
    let mut qpairs: Vec<QPairState<BigInt>> = Vec::new();
    let mut terminated = false;
    let mut termination_index = None;
    let mut z = z0.clone();
    for n in 0..max_depth {
        iterates.push(BigComplex::from_rational(&z, 64));
        let a = choose_rational(alg, &z, n >= 1);
        quotients.push(a.clone());
        qpairs.push(match qpairs.last() {
            None => QPairState::seed(a.clone()),
            Some(st) => st.extend(&a),
        });
        if z.as_gaussian() == Some(&a) {
            terminated = true;
            termination_index = Some(n);
            break;
        }
        z = z.sub_gaussian(&a).inv().expect("z != a here");
    }
    Ok(Expansion {
        algorithm: alg.clone(),
        quotients,
        iterates,
        qpairs,
        terminated,
        termination_index,
    })
}

fn expand_surd(alg: &Algorithm, s0: &QuadraticSurd, max_depth: usize) -> Result<Expansion> {
    let mut quotients = Vec::new();
    let mut iterates = Vec::new();
    let mut qpairs: Vec<QPairState<BigInt>> = Vec::new();
    let mut s = s0.clone();
    for n in 0..max_depth {
        iterates.push(s.eval(64));
        let a = choose_surd(alg, &s, n >= 1);
        quotients.push(a.clone());
        qpairs.push(match qpairs.last() {
            None => QPairState::seed(a.clone()),
            Some(st) => st.extend(&a),
        });
        s = s.shift_invert(&a);
    }
    Ok(Expansion {
        algorithm: alg.clone(),
        quotients,
        iterates,
        qpairs,
        terminated: false,
        termination_index: None,
    })
}

fn expand_ball(alg: &Algorithm, z0: &BigComplex, max_depth: usize, prec: u32) -> Result<Expansion> {
    let mut quotients = Vec::new();
    let mut iterates = Vec::new();
    let mut qpairs: Vec<QPairState<BigInt>> = Vec::new();
    let mut z = z0.with_prec(prec);
    for n in 0..max_depth {
        iterates.push(z.clone());
        let value = CfValue::Ball(z.clone());
        let point = Point::from_value(&value);
        let a = choose_point(alg, &point, n >= 1)?;
        quotients.push(a.clone());
        qpairs.push(match qpairs.last() {
            None => QPairState::seed(a.clone()),
            Some(st) => st.extend(&a),
        });
        let shifted = z.sub_gaussian(&a);
        if shifted.is_exact() && shifted.re.is_zero() && shifted.im.is_zero() {
            return Ok(Expansion {
                algorithm: alg.clone(),
                quotients,
                iterates,
                qpairs,
                terminated: true,
                termination_index: Some(n),
            });
        }
        z = shifted.inv()?;
    }
    Ok(Expansion {
        algorithm: alg.clone(),
        quotients,
        iterates,
        qpairs,
        terminated: false,
        termination_index: None,
    })
}

/// Verdict of iteration-sequence validation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum IterationVerdict {
    ValidNondegenerate,
    /// A trailing run (at least two entries) sits exactly on the unit
    /// circle, which forces twelfth roots of unity.
    ValidDegenerate { from: usize },
    Invalid { index: usize, reason: String },
}

/// Check `z_0 - 1/z_1 in G`, and for `n >= 1` that `|z_n| >= 1` and
/// `z_n - 1/z_{n+1}` is a nonzero Gaussian integer.
pub fn validate_iteration_sequence(zs: &[CfValue]) -> Result<IterationVerdict> {
    if zs.len() < 2 {
        return Err(Error::InvalidInput("need at least two iterates".into()));
    }
    // modulus conditions
    let mut unit_modulus = vec![false; zs.len()];
    for (n, z) in zs.iter().enumerate() {
        match modulus_cmp_one(z) {
            Some(c) => {
                if n >= 1 && c < 0 {
                    return Ok(IterationVerdict::Invalid {
                        index: n,
                        reason: "modulus below 1".into(),
                    });
                }
                unit_modulus[n] = c == 0;
            }
            None => {
                if n >= 1 {
                    return Err(Error::InexactDegeneracy { index: n });
                }
            }
        }
    }
    // residual conditions
    for n in 0..zs.len() - 1 {
        match residual_gaussian(&zs[n], &zs[n + 1])? {
            Some(a) => {
                if n >= 1 && a.is_zero() {
                    return Ok(IterationVerdict::Invalid {
                        index: n,
                        reason: "partial quotient is zero".into(),
                    });
                }
            }
            None => {
                return Ok(IterationVerdict::Invalid {
                    index: n,
                    reason: "difference with the next reciprocal is not a Gaussian integer"
                        .into(),
                });
            }
        }
    }
    // degenerate tail: trailing unit-modulus run of length >= 2
    let mut from = zs.len();
    while from > 0 && unit_modulus[from - 1] {
        from -= 1;
    }
    if zs.len() - from >= 2 {
        return Ok(IterationVerdict::ValidDegenerate { from });
    }
    Ok(IterationVerdict::ValidNondegenerate)
}

/// Sign of `|z| - 1`; `None` when not certifiable.
fn modulus_cmp_one(z: &CfValue) -> Option<i8> {
    match z {
        CfValue::Rational(q) => {
            let x = q.re_ratio();
            let y = q.im_ratio();
            let v = &x * &x + &y * &y - BR::one();
            Some(if v.is_zero() {
                0
            } else if v.is_negative() {
                -1
            } else {
                1
            })
        }
        CfValue::Surd(s) => Some(s.signs().sign_poly2(&Poly2::magsq_minus(br_from_i64(1)))),
        CfValue::Ball(b) => {
            let m = b.magsq_ball();
            let diff = RealBall::new(
                m.mid.sub(&crate::dyadic::Dyadic::one()),
                m.rad.clone(),
            );
            diff.sign()
        }
    }
}

/// `z_n - 1/z_{n+1}` when it is exactly (or certifiably) a Gaussian
/// integer; `None` when it is certifiably not one.
fn residual_gaussian(zn: &CfValue, znext: &CfValue) -> Result<Option<G>> {
    match (zn, znext) {
        (CfValue::Rational(a), CfValue::Rational(b)) => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let r = a.sub(&b.inv()?);
            Ok(r.as_gaussian().cloned())
        }
        (CfValue::Surd(a), CfValue::Surd(b))
            if a.alpha() == b.alpha() && a.beta() == b.beta() && a.gamma() == b.gamma() =>
        {
            // same polynomial: exact arithmetic in Q(i)[z], the generator
            // denoting the root of `a`
            use crate::surd::SurdField;
            let field = SurdField::new(a);
            let z_elem = field.root();
            let znext = if a.sigma() == b.sigma() {
                z_elem.clone()
            } else {
                // the other root is -beta/alpha - z
                let tr = Q::from_gaussian(a.beta().neg())
                    .div(&Q::from_gaussian(a.alpha().clone()))
                    .unwrap();
                field.sub(&field.from_rational(tr), &z_elem)
            };
            let inv = field.inv(&znext)?;
            let diff = field.sub(&z_elem, &inv);
            // diff = u + v z is Gaussian iff v = 0 and u integral
            if diff.v.is_zero() {
                Ok(diff.u.as_gaussian().cloned())
            } else {
                Ok(None)
            }
        }
        _ => {
            // certified-ball comparison at escalating precision
            let mut prec = 96u32;
            loop {
                let a = zn.eval_ball(prec);
                let b = znext.eval_ball(prec);
                if let Ok(binv) = b.inv() {
                    let r = a.sub(&binv);
                    let cand = r.nearest_gaussian_hint();
                    let d_lo = r.dist_lower_to_gaussian(&cand);
                    if d_lo.sign() > 0 {
                        return Ok(None);
                    }
                    // compatible with `cand`; accept once the ball is tight
                    if r.rad.cmp_dyadic(&crate::dyadic::Dyadic::pow2(-40))
                        == std::cmp::Ordering::Less
                    {
                        return Ok(Some(cand));
                    }
                }
                prec *= 2;
                if prec > PREC_CAP {
                    return Err(Error::AmbiguousChoice(
                        "residual integrality not certifiable".into(),
                    ));
                }
            }
        }
    }
}
