//! Exact planar primitives shared by the rectangle, diagonal, and
//! perturbation modules. Coordinates are [`QuadNum`]s; every predicate is
//! decided by exact sign computations.

use crate::exact::QuadNum;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A point of the orbit plane in (s, u) eigen-coordinates. Stable leaves
/// are the vertical lines {s = const}, unstable leaves the horizontal
/// lines {u = const}.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Pt {
    pub s: QuadNum,
    pub u: QuadNum,
}

impl Pt {
    pub fn new(s: QuadNum, u: QuadNum) -> Self {
        Pt { s, u }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.s.to_f64(), self.u.to_f64())
    }

    pub fn add(&self, o: &Pt) -> Pt {
        Pt::new(&self.s + &o.s, &self.u + &o.u)
    }

    pub fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.s - &o.s, &self.u - &o.u)
    }

    pub fn midpoint(&self, o: &Pt) -> Pt {
        Pt::new((&self.s + &o.s).half(), (&self.u + &o.u).half())
    }
}

impl PartialOrd for Pt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic (s, then u); the tie-breaking order used by every sweep.
impl Ord for Pt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.s.cmp(&other.s).then_with(|| self.u.cmp(&other.u))
    }
}

/// Twice the signed area of the triangle (a, b, c). Positive iff c lies to
/// the left of the directed line a -> b.
pub fn cross(a: &Pt, b: &Pt, c: &Pt) -> QuadNum {
    let ab = b.sub(a);
    let ac = c.sub(a);
    &ab.s * &ac.u - &ab.u * &ac.s
}

pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> Ordering {
    cross(a, b, c).sign()
}

/// True iff c lies on the closed segment [a, b].
pub fn on_segment(a: &Pt, b: &Pt, c: &Pt) -> bool {
    if orient(a, b, c) != Ordering::Equal {
        return false;
    }
    in_box(a, b, c)
}

fn in_box(a: &Pt, b: &Pt, c: &Pt) -> bool {
    let (slo, shi) = if a.s <= b.s {
        (&a.s, &b.s)
    } else {
        (&b.s, &a.s)
    };
    let (ulo, uhi) = if a.u <= b.u {
        (&a.u, &b.u)
    } else {
        (&b.u, &a.u)
    };
    &c.s >= slo && &c.s <= shi && &c.u >= ulo && &c.u <= uhi
}

/// Intersection of two closed segments, computed exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegInter {
    Empty,
    Point(Pt),
    /// Collinear overlap, endpoints ordered lexicographically.
    Overlap(Pt, Pt),
}

pub fn segment_intersection(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> SegInter {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);

    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        // Collinear. Overlap is the (possibly empty, possibly degenerate)
        // common box interval along the line.
        let mut pts: Vec<&Pt> = vec![a, b, c, d];
        pts.sort();
        // Common part is [max(min1,min2), min(max1,max2)].
        let (lo1, hi1) = if a <= b { (a, b) } else { (b, a) };
        let (lo2, hi2) = if c <= d { (c, d) } else { (d, c) };
        let lo = if lo1 >= lo2 { lo1 } else { lo2 };
        let hi = if hi1 <= hi2 { hi1 } else { hi2 };
        return match lo.cmp(hi) {
            Ordering::Greater => SegInter::Empty,
            Ordering::Equal => SegInter::Point(lo.clone()),
            Ordering::Less => SegInter::Overlap(lo.clone(), hi.clone()),
        };
    }

    let proper = |o: Ordering, p: Ordering| o != Ordering::Equal && p != Ordering::Equal && o != p;
    if proper(o1, o2) && proper(o3, o4) {
        // Proper crossing: solve exactly.
        return SegInter::Point(line_intersection(a, b, c, d));
    }

    // Touching cases: an endpoint of one lies on the other.
    for (p, q, r) in [(a, b, c), (a, b, d), (c, d, a), (c, d, b)] {
        if on_segment(p, q, r) {
            return SegInter::Point(r.clone());
        }
    }
    SegInter::Empty
}

/// Intersection point of the (non-parallel) lines through a-b and c-d.
pub fn line_intersection(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> Pt {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = &r.s * &s.u - &r.u * &s.s;
    debug_assert!(!denom.is_zero());
    let ca = c.sub(a);
    let t = (&ca.s * &s.u - &ca.u * &s.s) / denom;
    Pt::new(&a.s + &t * &r.s, &a.u + &t * &r.u)
}

/// Slope du/ds of the segment a -> b. Panics on vertical segments; arcs in
/// this artifact are transverse to the stable foliation, so ds != 0.
pub fn slope(a: &Pt, b: &Pt) -> QuadNum {
    let d = b.sub(a);
    assert!(!d.s.is_zero(), "vertical segment has no slope");
    &d.u / &d.s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: i64, u: i64) -> Pt {
        Pt::new(QuadNum::from_int(s, 5), QuadNum::from_int(u, 5))
    }

    #[test]
    fn proper_crossing() {
        let x = segment_intersection(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0));
        assert_eq!(x, SegInter::Point(p(1, 1)));
    }

    #[test]
    fn touch_at_endpoint() {
        let x = segment_intersection(&p(0, 0), &p(2, 2), &p(2, 2), &p(3, 0));
        assert_eq!(x, SegInter::Point(p(2, 2)));
    }

    #[test]
    fn collinear_overlap() {
        let x = segment_intersection(&p(0, 0), &p(4, 4), &p(1, 1), &p(6, 6));
        assert_eq!(x, SegInter::Overlap(p(1, 1), p(4, 4)));
        let y = segment_intersection(&p(0, 0), &p(1, 1), &p(2, 2), &p(3, 3));
        assert_eq!(y, SegInter::Empty);
        let z = segment_intersection(&p(0, 0), &p(1, 1), &p(1, 1), &p(3, 3));
        assert_eq!(z, SegInter::Point(p(1, 1)));
    }

    #[test]
    fn disjoint() {
        let x = segment_intersection(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1));
        assert_eq!(x, SegInter::Empty);
    }

    #[test]
    fn slope_exact() {
        assert_eq!(slope(&p(0, 0), &p(2, 6)), QuadNum::from_int(3, 5));
    }
}
