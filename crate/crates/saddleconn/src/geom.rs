//! Exact planar primitives over arbitrary-precision rationals.
//!
//! Every predicate in this crate (orientation, in-circle, segment
//! intersection) is evaluated over `Q` with no floating point anywhere, so
//! downstream combinatorial decisions are never subject to rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// The coordinate field: arbitrary-precision rationals.
pub type Q = BigRational;

/// Parse a rational from `p`, `p/q`, or a decimal-free integer string.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

pub fn q_i64(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A point (or vector) of the developed plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }

    pub fn of_i64(x: i64, y: i64) -> Self {
        Pt::new(q_i64(x), q_i64(y))
    }

    pub fn zero() -> Self {
        Pt::new(Q::zero(), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Pt) -> Pt {
        Pt::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> Pt {
        Pt::new(-&self.x, -&self.y)
    }

    pub fn scale(&self, s: &Q) -> Pt {
        Pt::new(&self.x * s, &self.y * s)
    }

    pub fn norm_sq(&self) -> Q {
        &self.x * &self.x + &self.y * &self.y
    }
}

/// Exact cross product `u.x v.y - u.y v.x`.
pub fn cross(u: &Pt, v: &Pt) -> Q {
    &u.x * &v.y - &u.y * &v.x
}

pub fn dot(u: &Pt, v: &Pt) -> Q {
    &u.x * &v.x + &u.y * &v.y
}

/// Sign of the cross product as -1 / 0 / +1.
pub fn cross_sign(u: &Pt, v: &Pt) -> i8 {
    sign(&cross(u, v))
}

pub fn sign(q: &Q) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Orientation of the triple (a, b, c): +1 counterclockwise, -1 clockwise, 0 collinear.
pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> i8 {
    cross_sign(&b.sub(a), &c.sub(a))
}

/// Exact in-circle test for a CCW triangle (a, b, c) and query point d.
/// Returns +1 when d is strictly inside the circumcircle, 0 on it, -1 outside.
pub fn incircle(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> i8 {
    let ax = &a.x - &d.x;
    let ay = &a.y - &d.y;
    let bx = &b.x - &d.x;
    let by = &b.y - &d.y;
    let cx = &c.x - &d.x;
    let cy = &c.y - &d.y;
    let a2 = &ax * &ax + &ay * &ay;
    let b2 = &bx * &bx + &by * &by;
    let c2 = &cx * &cx + &cy * &cy;
    let det = &a2 * (&bx * &cy - &by * &cx) - &b2 * (&ax * &cy - &ay * &cx)
        + &c2 * (&ax * &by - &ay * &bx);
    sign(&det)
}

/// An affine map `z -> sigma * z + c` with `sigma` in {+1, -1}; the transition
/// maps of a half-translation structure and their compositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfTrans {
    pub sigma: i8,
    pub c: Pt,
}

impl HalfTrans {
    pub fn identity() -> Self {
        HalfTrans {
            sigma: 1,
            c: Pt::zero(),
        }
    }

    pub fn new(sigma: i8, c: Pt) -> Self {
        debug_assert!(sigma == 1 || sigma == -1);
        HalfTrans { sigma, c }
    }

    pub fn apply(&self, p: &Pt) -> Pt {
        if self.sigma == 1 {
            p.add(&self.c)
        } else {
            self.c.sub(p)
        }
    }

    /// Apply to a direction vector (translation part dropped).
    pub fn apply_vec(&self, v: &Pt) -> Pt {
        if self.sigma == 1 {
            v.clone()
        } else {
            v.neg()
        }
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &HalfTrans) -> HalfTrans {
        HalfTrans {
            sigma: self.sigma * other.sigma,
            c: self.apply_vec(&other.c).add(&self.c),
        }
    }

    pub fn inverse(&self) -> HalfTrans {
        // z = sigma w + c  =>  w = sigma (z - c) = sigma z - sigma c
        HalfTrans {
            sigma: self.sigma,
            c: if self.sigma == 1 {
                self.c.neg()
            } else {
                self.c.clone()
            },
        }
    }
}

/// Result of intersecting two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegHit {
    Empty,
    /// A single point, with the affine parameters along each segment in [0, 1].
    Point { p: Pt, ta: Q, tb: Q },
    /// The segments are collinear and overlap in more than one point.
    Overlap,
}

/// Exact intersection of closed segments [a0, a1] and [b0, b1].
pub fn seg_intersect(a0: &Pt, a1: &Pt, b0: &Pt, b1: &Pt) -> SegHit {
    let da = a1.sub(a0);
    let db = b1.sub(b0);
    let denom = cross(&da, &db);
    let diff = b0.sub(a0);
    if denom.is_zero() {
        // Parallel. Overlap only when collinear and the parameter ranges meet.
        if !cross(&diff, &da).is_zero() {
            return SegHit::Empty;
        }
        // Collinear: project onto da (or db when a is a single point).
        let len2 = da.norm_sq();
        if len2.is_zero() {
            // a is a point; check containment in b.
            let lb2 = db.norm_sq();
            if lb2.is_zero() {
                return if a0 == b0 {
                    SegHit::Point {
                        p: a0.clone(),
                        ta: Q::zero(),
                        tb: Q::zero(),
                    }
                } else {
                    SegHit::Empty
                };
            }
            let t = dot(&a0.sub(b0), &db) / &lb2;
            if t < Q::zero() || t > Q::one() {
                return SegHit::Empty;
            }
            return SegHit::Point {
                p: a0.clone(),
                ta: Q::zero(),
                tb: t,
            };
        }
        let t0 = dot(&diff, &da) / &len2;
        let t1 = dot(&b1.sub(a0), &da) / &len2;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo_c = if lo > Q::zero() { lo } else { Q::zero() };
        let hi_c = if hi < Q::one() { hi } else { Q::one() };
        match lo_c.cmp(&hi_c) {
            Ordering::Greater => SegHit::Empty,
            Ordering::Equal => {
                let p = a0.add(&da.scale(&lo_c));
                let tb = if db.norm_sq().is_zero() {
                    Q::zero()
                } else {
                    dot(&p.sub(b0), &db) / db.norm_sq()
                };
                SegHit::Point { p, ta: lo_c, tb }
            }
            Ordering::Less => SegHit::Overlap,
        }
    } else {
        let ta = cross(&diff, &db) / &denom;
        let tb = cross(&diff, &da) / &denom;
        if ta < Q::zero() || ta > Q::one() || tb < Q::zero() || tb > Q::one() {
            return SegHit::Empty;
        }
        let p = a0.add(&da.scale(&ta));
        SegHit::Point { p, ta, tb }
    }
}

/// Minimal squared distance from the origin to the part of segment [a, b]
/// whose direction from the origin lies in the closed cone between `lo` and
/// `hi` (a positively oriented wedge narrower than pi). `None` when the
/// constrained part is empty.
pub fn min_dist_sq_in_wedge(a: &Pt, b: &Pt, lo: &Pt, hi: &Pt) -> Option<Q> {
    // x(t) = a + t (b - a), t in [0,1]; constraints cross(lo, x) >= 0, cross(x, hi) >= 0.
    let d = b.sub(a);
    let mut t_lo = Q::zero();
    let mut t_hi = Q::one();
    // cross(lo, a) + t cross(lo, d) >= 0
    for (c0, c1) in [
        (cross(lo, a), cross(lo, &d)),
        (cross(a, hi), cross(&d, hi)),
    ] {
        if c1.is_zero() {
            if c0 < Q::zero() {
                return None;
            }
        } else {
            let bound = -&c0 / &c1;
            if c1 > Q::zero() {
                if bound > t_lo {
                    t_lo = bound;
                }
            } else if bound < t_hi {
                t_hi = bound;
            }
        }
    }
    if t_lo > t_hi {
        return None;
    }
    let len2 = d.norm_sq();
    let eval = |t: &Q| -> Q { a.add(&d.scale(t)).norm_sq() };
    if len2.is_zero() {
        return Some(a.norm_sq());
    }
    let t_star = -dot(a, &d) / &len2;
    let t_best = if t_star < t_lo {
        t_lo.clone()
    } else if t_star > t_hi {
        t_hi.clone()
    } else {
        t_star
    };
    let mut best = eval(&t_best);
    for t in [&t_lo, &t_hi] {
        let v = eval(t);
        if v < best {
            best = v;
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_basics() {
        let a = Pt::of_i64(0, 0);
        let b = Pt::of_i64(1, 0);
        let c = Pt::of_i64(0, 1);
        assert_eq!(orient(&a, &b, &c), 1);
        assert_eq!(orient(&a, &c, &b), -1);
        assert_eq!(orient(&a, &b, &Pt::of_i64(2, 0)), 0);
    }

    #[test]
    fn incircle_unit_square() {
        let a = Pt::of_i64(0, 0);
        let b = Pt::of_i64(1, 0);
        let c = Pt::of_i64(1, 1);
        // Fourth corner of the square is exactly on the circumcircle.
        assert_eq!(incircle(&a, &b, &c, &Pt::of_i64(0, 1)), 0);
        assert_eq!(
            incircle(&a, &b, &c, &Pt::new(Q::new(1.into(), 2.into()), Q::new(1.into(), 2.into()))),
            1
        );
        assert_eq!(incircle(&a, &b, &c, &Pt::of_i64(5, 5)), -1);
    }

    #[test]
    fn seg_intersection_cases() {
        let o = Pt::of_i64(0, 0);
        let e1 = Pt::of_i64(2, 2);
        let b0 = Pt::of_i64(0, 2);
        let b1 = Pt::of_i64(2, 0);
        match seg_intersect(&o, &e1, &b0, &b1) {
            SegHit::Point { p, .. } => assert_eq!(p, Pt::of_i64(1, 1)),
            other => panic!("expected point, got {other:?}"),
        }
        assert_eq!(
            seg_intersect(&o, &Pt::of_i64(1, 0), &Pt::of_i64(0, 1), &Pt::of_i64(1, 1)),
            SegHit::Empty
        );
        assert_eq!(
            seg_intersect(&o, &Pt::of_i64(2, 0), &Pt::of_i64(1, 0), &Pt::of_i64(3, 0)),
            SegHit::Overlap
        );
        // Touch at an endpoint.
        match seg_intersect(&o, &Pt::of_i64(1, 1), &Pt::of_i64(1, 1), &Pt::of_i64(2, 0)) {
            SegHit::Point { p, ta, tb } => {
                assert_eq!(p, Pt::of_i64(1, 1));
                assert_eq!(ta, Q::one());
                assert_eq!(tb, Q::zero());
            }
            other => panic!("expected touch point, got {other:?}"),
        }
    }

    #[test]
    fn half_translation_composition() {
        let f = HalfTrans::new(-1, Pt::of_i64(3, 1));
        let g = HalfTrans::new(1, Pt::of_i64(1, 2));
        let p = Pt::of_i64(5, 7);
        let fg = f.compose(&g);
        assert_eq!(fg.apply(&p), f.apply(&g.apply(&p)));
        let inv = f.inverse();
        assert_eq!(inv.apply(&f.apply(&p)), p);
    }

    #[test]
    fn wedge_distance_clamps() {
        // Segment from (2,0) to (0,2); wedge = first quadrant.
        let a = Pt::of_i64(2, 0);
        let b = Pt::of_i64(0, 2);
        let lo = Pt::of_i64(1, 0);
        let hi = Pt::of_i64(0, 1);
        let d = min_dist_sq_in_wedge(&a, &b, &lo, &hi).unwrap();
        assert_eq!(d, q_i64(2)); // foot of perpendicular at (1,1)
        // Wedge pointing away misses the segment.
        assert_eq!(
            min_dist_sq_in_wedge(&a, &b, &Pt::of_i64(-1, 0), &Pt::of_i64(0, -1)),
            None
        );
    }
}
