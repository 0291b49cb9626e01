//! The twelve unit-modulus constants `e^{ik pi/6}`, stored exactly with
//! coordinates of the form `(u + v*sqrt(3))/2`. These are precisely the
//! unit-circle points at distance exactly 1 from some nonzero Gaussian
//! integer, which is what degenerate iteration tails collapse onto.

use crate::gauss::Gaussian;

/// `(u + v*sqrt(3)) / 2` with integer `u`, `v`. Representation is unique.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct HalfRt3 {
    pub u: i64,
    pub v: i64,
}

impl HalfRt3 {
    pub const fn new(u: i64, v: i64) -> Self {
        HalfRt3 { u, v }
    }

    pub fn from_int(k: i64) -> Self {
        HalfRt3 { u: 2 * k, v: 0 }
    }

    pub fn add(&self, o: &Self) -> Self {
        HalfRt3 {
            u: self.u + o.u,
            v: self.v + o.v,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HalfRt3 {
            u: self.u - o.u,
            v: self.v - o.v,
        }
    }

    pub fn neg(&self) -> Self {
        HalfRt3 {
            u: -self.u,
            v: -self.v,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        HalfRt3 {
            u: self.u * k,
            v: self.v * k,
        }
    }

    /// Square, as `(x + y*sqrt(3))/4`.
    pub fn square_quarter(&self) -> QuarterRt3 {
        QuarterRt3 {
            x: self.u as i128 * self.u as i128 + 3 * self.v as i128 * self.v as i128,
            y: 2 * self.u as i128 * self.v as i128,
        }
    }

    pub fn to_f64(&self) -> f64 {
        (self.u as f64 + self.v as f64 * 3f64.sqrt()) / 2.0
    }
}

/// `(x + y*sqrt(3)) / 4`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuarterRt3 {
    pub x: i128,
    pub y: i128,
}

impl QuarterRt3 {
    pub fn add(&self, o: &Self) -> Self {
        QuarterRt3 {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }

    /// Exact comparison of `(x + y*sqrt(3))/4` against the integer `t`,
    /// returning the sign of the difference.
    pub fn cmp_int(&self, t: i128) -> i8 {
        let a = self.x - 4 * t;
        let b = self.y;
        if b == 0 {
            return a.signum() as i8;
        }
        let sa = a.signum() as i8;
        let sb = b.signum() as i8;
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        sa * (a * a - 3 * b * b).signum() as i8
    }

    pub fn is_int(&self, t: i128) -> bool {
        self.cmp_int(t) == 0
    }
}

/// A point of the unit circle with coordinates in `(Z + Z*sqrt(3))/2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct CirclePoint {
    pub re: HalfRt3,
    pub im: HalfRt3,
}

impl CirclePoint {
    pub fn norm_quarter(&self) -> QuarterRt3 {
        self.re.square_quarter().add(&self.im.square_quarter())
    }

    pub fn is_unit_modulus(&self) -> bool {
        self.norm_quarter().is_int(1)
    }

    /// Exact squared distance to a (small) Gaussian integer.
    pub fn dist_sq_quarter(&self, g: &Gaussian<i64>) -> QuarterRt3 {
        let dre = self.re.sub(&HalfRt3::from_int(g.re));
        let dim = self.im.sub(&HalfRt3::from_int(g.im));
        dre.square_quarter().add(&dim.square_quarter())
    }

    pub fn conj(&self) -> Self {
        CirclePoint {
            re: self.re,
            im: self.im.neg(),
        }
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// The constants `e^{ik pi/6}`, `k = 0..11`.
pub fn twelfth_roots() -> [CirclePoint; 12] {
    let h = HalfRt3::new;
    let pt = |re, im| CirclePoint { re, im };
    [
        pt(h(2, 0), h(0, 0)),   // 1
        pt(h(0, 1), h(1, 0)),   // (sqrt3 + i)/2
        pt(h(1, 0), h(0, 1)),   // (1 + sqrt3 i)/2
        pt(h(0, 0), h(2, 0)),   // i
        pt(h(-1, 0), h(0, 1)),  // (-1 + sqrt3 i)/2
        pt(h(0, -1), h(1, 0)),  // (-sqrt3 + i)/2
        pt(h(-2, 0), h(0, 0)),  // -1
        pt(h(0, -1), h(-1, 0)), // (-sqrt3 - i)/2
        pt(h(-1, 0), h(0, -1)), // (-1 - sqrt3 i)/2
        pt(h(0, 0), h(-2, 0)),  // -i
        pt(h(1, 0), h(0, -1)),  // (1 - sqrt3 i)/2
        pt(h(0, 1), h(-1, 0)),  // (sqrt3 - i)/2
    ]
}

/// Exact intersection of the unit circle with the unit circle about `a`.
/// Empty unless `norm(a)` is 1, 2 or 4.
pub fn unit_circle_points_at_unit_distance(a: &Gaussian<i64>) -> Vec<CirclePoint> {
    let (p, q) = (a.re, a.im);
    match p * p + q * q {
        // t = 1/2 +/- i sqrt(3)/2, z = a t
        1 => vec![
            CirclePoint {
                re: HalfRt3::new(p, -q),
                im: HalfRt3::new(q, p),
            },
            CirclePoint {
                re: HalfRt3::new(p, q),
                im: HalfRt3::new(q, -p),
            },
        ],
        // t = (1 +/- i)/2
        2 => vec![
            CirclePoint {
                re: HalfRt3::new(p - q, 0),
                im: HalfRt3::new(p + q, 0),
            },
            CirclePoint {
                re: HalfRt3::new(p + q, 0),
                im: HalfRt3::new(q - p, 0),
            },
        ],
        // tangent: z = a/2
        4 => vec![CirclePoint {
            re: HalfRt3::new(p, 0),
            im: HalfRt3::new(q, 0),
        }],
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> Gaussian<i64> {
        Gaussian::new(re, im)
    }

    #[test]
    fn constants_are_unit_modulus_and_distinct() {
        let roots = twelfth_roots();
        for r in &roots {
            assert!(r.is_unit_modulus(), "{r:?}");
        }
        for i in 0..12 {
            for j in (i + 1)..12 {
                assert_ne!(roots[i], roots[j]);
            }
        }
        // numeric spot check of the ordering
        for (k, r) in roots.iter().enumerate() {
            let (x, y) = r.to_f64s();
            let th = (k as f64) * std::f64::consts::PI / 6.0;
            assert!((x - th.cos()).abs() < 1e-12);
            assert!((y - th.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn intersections_lie_on_both_circles() {
        for p in -3i64..=3 {
            for q in -3i64..=3 {
                let a = g(p, q);
                if a.is_zero() {
                    continue;
                }
                for z in unit_circle_points_at_unit_distance(&a) {
                    assert!(z.is_unit_modulus(), "a={a:?} z={z:?}");
                    assert!(z.dist_sq_quarter(&a).is_int(1), "a={a:?} z={z:?}");
                }
            }
        }
    }

    #[test]
    fn characterization_and_multiplicities() {
        // Enumerate all nonzero a with norm(a) <= 8; collect the unit-circle
        // points at distance exactly 1 and count witnesses per point.
        let roots = twelfth_roots();
        let mut counts = [0usize; 12];
        for p in -3i64..=3 {
            for q in -3i64..=3 {
                let a = g(p, q);
                if a.is_zero() || a.norm() > 8 {
                    continue;
                }
                for z in unit_circle_points_at_unit_distance(&a) {
                    let idx = roots
                        .iter()
                        .position(|r| *r == z)
                        .unwrap_or_else(|| panic!("point {z:?} is not a twelfth root"));
                    counts[idx] += 1;
                }
            }
        }
        for (k, c) in counts.iter().enumerate() {
            let expect = if k % 3 == 0 { 3 } else { 1 };
            assert_eq!(*c, expect, "k={k}");
        }
    }
}
