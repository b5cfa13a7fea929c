//! Edge, face, and tetrahedron rectangles over the drilled-orbit lift set,
//! the `lies above` partial order, staircases, and core points.

use crate::exact::QuadNum;
use crate::geom::Pt;
use crate::orbit::{enumerate_lifts, DeckElement, OrbitError, OrbitSpace, PointOrbitSet, Window};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RectError {
    #[error("needed lift points fall outside the materialized window; widen the window")]
    WindowExhausted,
    #[error("base point does not lie in the drilled-orbit lift set")]
    NotInC,
    #[error("no deck recurrence detected within {0} iterations")]
    NoRecurrence(usize),
    #[error("lift point on a rectangle side breaks the tetrahedron invariant")]
    DegenerateTetra,
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// Axis-aligned rectangle with strictly positive extent on both axes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub s: (QuadNum, QuadNum),
    pub u: (QuadNum, QuadNum),
}

impl Rect {
    pub fn new(s: (QuadNum, QuadNum), u: (QuadNum, QuadNum)) -> Self {
        assert!(s.0 < s.1 && u.0 < u.1, "degenerate rectangle");
        Rect { s, u }
    }

    pub fn spanned(a: &Pt, b: &Pt) -> Self {
        let (slo, shi) = if a.s < b.s {
            (a.s.clone(), b.s.clone())
        } else {
            (b.s.clone(), a.s.clone())
        };
        let (ulo, uhi) = if a.u < b.u {
            (a.u.clone(), b.u.clone())
        } else {
            (b.u.clone(), a.u.clone())
        };
        Rect::new((slo, shi), (ulo, uhi))
    }

    pub fn width(&self) -> QuadNum {
        &self.s.1 - &self.s.0
    }

    pub fn height(&self) -> QuadNum {
        &self.u.1 - &self.u.0
    }

    pub fn contains_interior(&self, p: &Pt) -> bool {
        p.s > self.s.0 && p.s < self.s.1 && p.u > self.u.0 && p.u < self.u.1
    }

    pub fn contains_closed(&self, p: &Pt) -> bool {
        p.s >= self.s.0 && p.s <= self.s.1 && p.u >= self.u.0 && p.u <= self.u.1
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.s.0 <= other.s.1
            && other.s.0 <= self.s.1
            && self.u.0 <= other.u.1
            && other.u.0 <= self.u.1
    }

    pub fn intersection(&self, other: &Rect) -> Option<Rect> {
        let slo = self.s.0.clone().max(other.s.0.clone());
        let shi = self.s.1.clone().min(other.s.1.clone());
        let ulo = self.u.0.clone().max(other.u.0.clone());
        let uhi = self.u.1.clone().min(other.u.1.clone());
        if slo < shi && ulo < uhi {
            Some(Rect::new((slo, shi), (ulo, uhi)))
        } else {
            None
        }
    }

    pub fn center(&self) -> Pt {
        Pt::new((&self.s.0 + &self.s.1).half(), (&self.u.0 + &self.u.1).half())
    }

    pub fn transport(&self, g: &DeckElement) -> Rect {
        let a = g.apply(&Pt::new(self.s.0.clone(), self.u.0.clone()));
        let b = g.apply(&Pt::new(self.s.1.clone(), self.u.1.clone()));
        Rect::spanned(&a, &b)
    }
}

/// R2 lies above R1: R2 is taller and thinner (nested ranges crosswise),
/// strict for distinct rectangles.
pub fn lies_above(r2: &Rect, r1: &Rect) -> bool {
    if r1 == r2 {
        return false;
    }
    r1.s.0 <= r2.s.0 && r2.s.1 <= r1.s.1 && r2.u.0 <= r1.u.0 && r1.u.1 <= r2.u.1
}

/// Rectangle with two opposite corners on the lift set and empty interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRect {
    pub rect: Rect,
    /// Corners ordered by increasing s.
    pub corners: (Pt, Pt),
    pub color: Color,
}

impl EdgeRect {
    /// Builds from two corner points; the interior-emptiness condition is
    /// the caller's responsibility (enumeration and verifiers check it).
    pub fn spanned(a: &Pt, b: &Pt) -> Self {
        let (lo, hi) = if a.s < b.s { (a, b) } else { (b, a) };
        let color = if lo.u < hi.u { Color::Red } else { Color::Blue };
        EdgeRect {
            rect: Rect::spanned(a, b),
            corners: (lo.clone(), hi.clone()),
            color,
        }
    }

    pub fn transport(&self, g: &DeckElement) -> EdgeRect {
        EdgeRect::spanned(&g.apply(&self.corners.0), &g.apply(&self.corners.1))
    }

    pub fn shares_corner(&self, other: &EdgeRect) -> bool {
        let mine = [&self.corners.0, &self.corners.1];
        let theirs = [&other.corners.0, &other.corners.1];
        mine.iter().any(|c| theirs.contains(c))
    }
}

/// Rectangle with one marked lift point in the interior of each side and
/// empty interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetraRect {
    pub rect: Rect,
    pub north: Pt,
    pub east: Pt,
    pub south: Pt,
    pub west: Pt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexRole {
    North,
    East,
    South,
    West,
}

pub const VERTEX_ROLES: [VertexRole; 4] = [
    VertexRole::North,
    VertexRole::East,
    VertexRole::South,
    VertexRole::West,
];

impl TetraRect {
    pub fn point(&self, role: VertexRole) -> &Pt {
        match role {
            VertexRole::North => &self.north,
            VertexRole::East => &self.east,
            VertexRole::South => &self.south,
            VertexRole::West => &self.west,
        }
    }

    pub fn points(&self) -> [&Pt; 4] {
        [&self.north, &self.east, &self.south, &self.west]
    }

    /// Classifies four marked points into side roles for their bounding box.
    pub fn from_points(pts: [Pt; 4]) -> Result<TetraRect, RectError> {
        let mut slo = pts[0].s.clone();
        let mut shi = pts[0].s.clone();
        let mut ulo = pts[0].u.clone();
        let mut uhi = pts[0].u.clone();
        for p in &pts[1..] {
            slo = slo.min(p.s.clone());
            shi = shi.max(p.s.clone());
            ulo = ulo.min(p.u.clone());
            uhi = uhi.max(p.u.clone());
        }
        if slo == shi || ulo == uhi {
            return Err(RectError::DegenerateTetra);
        }
        let rect = Rect::new((slo, shi), (ulo, uhi));
        let mut north = None;
        let mut east = None;
        let mut south = None;
        let mut west = None;
        for p in pts {
            let slot = if p.u == rect.u.1 {
                &mut north
            } else if p.u == rect.u.0 {
                &mut south
            } else if p.s == rect.s.1 {
                &mut east
            } else if p.s == rect.s.0 {
                &mut west
            } else {
                return Err(RectError::DegenerateTetra);
            };
            if slot.replace(p).is_some() {
                return Err(RectError::DegenerateTetra);
            }
        }
        match (north, east, south, west) {
            (Some(north), Some(east), Some(south), Some(west)) => {
                let t = TetraRect {
                    rect,
                    north,
                    east,
                    south,
                    west,
                };
                // Side points must be interior to their sides.
                if t.north.s <= t.rect.s.0
                    || t.north.s >= t.rect.s.1
                    || t.south.s <= t.rect.s.0
                    || t.south.s >= t.rect.s.1
                    || t.east.u <= t.rect.u.0
                    || t.east.u >= t.rect.u.1
                    || t.west.u <= t.rect.u.0
                    || t.west.u >= t.rect.u.1
                {
                    return Err(RectError::DegenerateTetra);
                }
                Ok(t)
            }
            _ => Err(RectError::DegenerateTetra),
        }
    }

    pub fn transport(&self, g: &DeckElement) -> TetraRect {
        TetraRect::from_points([
            g.apply(&self.north),
            g.apply(&self.east),
            g.apply(&self.south),
            g.apply(&self.west),
        ])
        .expect("deck transport preserves tetra structure")
    }

    /// Edge subrectangle spanned by the full u-extent.
    pub fn top_edge(&self) -> EdgeRect {
        EdgeRect::spanned(&self.south, &self.north)
    }

    /// Edge subrectangle spanned by the full s-extent.
    pub fn bottom_edge(&self) -> EdgeRect {
        EdgeRect::spanned(&self.west, &self.east)
    }

    pub fn edge_subrects(&self) -> [EdgeRect; 6] {
        [
            EdgeRect::spanned(&self.west, &self.north),
            EdgeRect::spanned(&self.north, &self.east),
            EdgeRect::spanned(&self.east, &self.south),
            EdgeRect::spanned(&self.south, &self.west),
            self.top_edge(),
            self.bottom_edge(),
        ]
    }

    /// Face subrectangles, indexed by omitted vertex role in the order
    /// [North, East, South, West].
    pub fn face_subrects(&self) -> [FaceRect; 4] {
        let f = |a: &Pt, b: &Pt, c: &Pt| FaceRect::new([a.clone(), b.clone(), c.clone()]);
        [
            f(&self.east, &self.south, &self.west),
            f(&self.north, &self.south, &self.west),
            f(&self.north, &self.east, &self.west),
            f(&self.north, &self.east, &self.south),
        ]
    }
}

/// Rectangle with one lift corner and two opposite sides marked in their
/// interiors; the bounding box of its three marked points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRect {
    pub rect: Rect,
    /// Marked points in lexicographic order.
    pub pts: [Pt; 3],
}

impl FaceRect {
    pub fn new(mut pts: [Pt; 3]) -> Self {
        pts.sort();
        let mut slo = pts[0].s.clone();
        let mut shi = pts[0].s.clone();
        let mut ulo = pts[0].u.clone();
        let mut uhi = pts[0].u.clone();
        for p in &pts[1..] {
            slo = slo.min(p.s.clone());
            shi = shi.max(p.s.clone());
            ulo = ulo.min(p.u.clone());
            uhi = uhi.max(p.u.clone());
        }
        let rect = Rect::new((slo, shi), (ulo, uhi));
        FaceRect { rect, pts }
    }

    /// The marked point sitting at a corner of the bounding box.
    pub fn corner_point(&self) -> &Pt {
        for p in &self.pts {
            let on_s = p.s == self.rect.s.0 || p.s == self.rect.s.1;
            let on_u = p.u == self.rect.u.0 || p.u == self.rect.u.1;
            if on_s && on_u {
                return p;
            }
        }
        unreachable!("face rectangle without a corner point")
    }

    /// The three edge subrectangles spanned by pairs of marked points.
    pub fn edge_subrects(&self) -> [EdgeRect; 3] {
        [
            EdgeRect::spanned(&self.pts[0], &self.pts[1]),
            EdgeRect::spanned(&self.pts[0], &self.pts[2]),
            EdgeRect::spanned(&self.pts[1], &self.pts[2]),
        ]
    }

    pub fn transport(&self, g: &DeckElement) -> FaceRect {
        FaceRect::new([
            g.apply(&self.pts[0]),
            g.apply(&self.pts[1]),
            g.apply(&self.pts[2]),
        ])
    }
}

/// Materialized lift points of a point-orbit set inside a window, with
/// exact band queries. Constructed either from an orbit set or from an
/// explicit point list (synthetic tests).
#[derive(Debug, Clone)]
pub struct Lifts {
    pub window: Window,
    points: Vec<Pt>,
}

impl Lifts {
    pub fn materialize(
        os: &OrbitSpace,
        set: &PointOrbitSet,
        window: &Window,
        budget: usize,
    ) -> Result<Lifts, OrbitError> {
        let points = enumerate_lifts(os, set, window, budget)?;
        Ok(Lifts {
            window: window.clone(),
            points,
        })
    }

    pub fn from_points(window: Window, mut points: Vec<Pt>) -> Lifts {
        points.sort();
        points.dedup();
        Lifts { window, points }
    }

    pub fn points(&self) -> &[Pt] {
        &self.points
    }

    pub fn contains(&self, p: &Pt) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn interior_empty(&self, r: &Rect) -> bool {
        self.points.iter().all(|p| !r.contains_interior(p))
    }

    /// Least-u point strictly inside the open s-band with u > u_ref.
    /// Errors when nothing is materialized there (the caller widens).
    pub fn first_above(
        &self,
        slo: &QuadNum,
        shi: &QuadNum,
        u_ref: &QuadNum,
    ) -> Result<&Pt, RectError> {
        let mut best: Option<&Pt> = None;
        for p in &self.points {
            if &p.s > slo && &p.s < shi && &p.u > u_ref && best.map_or(true, |b| p.u < b.u) {
                best = Some(p);
            }
        }
        best.ok_or(RectError::WindowExhausted)
    }

    pub fn first_below(
        &self,
        slo: &QuadNum,
        shi: &QuadNum,
        u_ref: &QuadNum,
    ) -> Result<&Pt, RectError> {
        let mut best: Option<&Pt> = None;
        for p in &self.points {
            if &p.s > slo && &p.s < shi && &p.u < u_ref && best.map_or(true, |b| p.u > b.u) {
                best = Some(p);
            }
        }
        best.ok_or(RectError::WindowExhausted)
    }

    pub fn first_left(
        &self,
        ulo: &QuadNum,
        uhi: &QuadNum,
        s_ref: &QuadNum,
    ) -> Result<&Pt, RectError> {
        let mut best: Option<&Pt> = None;
        for p in &self.points {
            if &p.u > ulo && &p.u < uhi && &p.s < s_ref && best.map_or(true, |b| p.s > b.s) {
                best = Some(p);
            }
        }
        best.ok_or(RectError::WindowExhausted)
    }

    pub fn first_right(
        &self,
        ulo: &QuadNum,
        uhi: &QuadNum,
        s_ref: &QuadNum,
    ) -> Result<&Pt, RectError> {
        let mut best: Option<&Pt> = None;
        for p in &self.points {
            if &p.u > ulo && &p.u < uhi && &p.s > s_ref && best.map_or(true, |b| p.s < b.s) {
                best = Some(p);
            }
        }
        best.ok_or(RectError::WindowExhausted)
    }
}

/// All edge rectangles with both corners in the window, sorted by corner
/// pair. An O(n^2) sweep: for each left corner, scanning right by s while
/// tracking the closest u-levels above and below prunes non-empty
/// interiors. Points sharing an s-level do not block one another.
pub fn enumerate_edge_rects(lifts: &Lifts) -> Vec<EdgeRect> {
    let pts = lifts.points();
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let mut min_above: Option<&QuadNum> = None;
        let mut max_below: Option<&QuadNum> = None;
        let mut j = i + 1;
        while j < pts.len() {
            let mut level_end = j;
            while level_end < pts.len() && pts[level_end].s == pts[j].s {
                level_end += 1;
            }
            for q in &pts[j..level_end] {
                if q.s == p.s || q.u == p.u {
                    continue;
                }
                if q.u > p.u {
                    if min_above.map_or(true, |m| &q.u < m) {
                        out.push(EdgeRect::spanned(p, q));
                    }
                } else if max_below.map_or(true, |m| &q.u > m) {
                    out.push(EdgeRect::spanned(p, q));
                }
            }
            for q in &pts[j..level_end] {
                if q.s == p.s {
                    continue;
                }
                if q.u > p.u {
                    if min_above.map_or(true, |m| &q.u < m) {
                        min_above = Some(&q.u);
                    }
                } else if q.u < p.u && max_below.map_or(true, |m| &q.u > m) {
                    max_below = Some(&q.u);
                }
            }
            j = level_end;
        }
    }
    out.sort_by(|a, b| a.corners.cmp(&b.corners));
    out
}

/// The unique tetrahedron rectangle having `r` as its bottom edge
/// subrectangle.
pub fn tetra_above(lifts: &Lifts, r: &EdgeRect) -> Result<TetraRect, RectError> {
    let (p, q) = (&r.corners.0, &r.corners.1);
    let u_top = p.u.clone().max(q.u.clone());
    let u_bot = p.u.clone().min(q.u.clone());
    let north = lifts.first_above(&p.s, &q.s, &u_top)?.clone();
    let south = lifts.first_below(&p.s, &q.s, &u_bot)?.clone();
    let t = TetraRect::from_points([north, south, p.clone(), q.clone()])?;
    verify_tetra(lifts, &t)?;
    Ok(t)
}

/// Recomputes and checks the tetra-rectangle invariants: empty interior,
/// exactly one marked lift point per side, six edge subrectangles and four
/// face subrectangles with empty interiors.
pub fn verify_tetra(lifts: &Lifts, t: &TetraRect) -> Result<(), RectError> {
    if !lifts.interior_empty(&t.rect) {
        return Err(RectError::DegenerateTetra);
    }
    for p in lifts.points() {
        if t.points().contains(&p) {
            continue;
        }
        let on_vert =
            (p.s == t.rect.s.0 || p.s == t.rect.s.1) && p.u > t.rect.u.0 && p.u < t.rect.u.1;
        let on_horiz =
            (p.u == t.rect.u.0 || p.u == t.rect.u.1) && p.s > t.rect.s.0 && p.s < t.rect.s.1;
        if on_vert || on_horiz {
            return Err(RectError::DegenerateTetra);
        }
    }
    let edges = t.edge_subrects();
    if edges.iter().any(|e| !lifts.interior_empty(&e.rect)) {
        return Err(RectError::DegenerateTetra);
    }
    let faces = t.face_subrects();
    if faces.iter().any(|f| !lifts.interior_empty(&f.rect)) {
        return Err(RectError::DegenerateTetra);
    }
    Ok(())
}

/// All tetra rectangles whose four side points lie in the window,
/// enumerated through their bottom edges.
pub fn enumerate_tetra_rects(lifts: &Lifts) -> Vec<TetraRect> {
    let mut out = Vec::new();
    for e in enumerate_edge_rects(lifts) {
        if let Ok(t) = tetra_above(lifts, &e) {
            if t.points().iter().all(|p| lifts.window.contains(p)) {
                out.push(t);
            }
        }
    }
    out.sort_by(|a, b| {
        let ka: Vec<&Pt> = a.points().to_vec();
        let kb: Vec<&Pt> = b.points().to_vec();
        ka.cmp(&kb)
    });
    out.dedup();
    out
}

/// The two tetra rectangles sharing a face rectangle: the lower one
/// extends the face across the vertical side through its corner point,
/// the upper one across the horizontal side.
pub fn expand_face(lifts: &Lifts, f: &FaceRect) -> Result<(TetraRect, TetraRect), RectError> {
    let c = f.corner_point().clone();
    let horiz_new = if c.s == f.rect.s.0 {
        lifts.first_left(&f.rect.u.0, &f.rect.u.1, &c.s)?
    } else {
        lifts.first_right(&f.rect.u.0, &f.rect.u.1, &c.s)?
    }
    .clone();
    let vert_new = if c.u == f.rect.u.0 {
        lifts.first_below(&f.rect.s.0, &f.rect.s.1, &c.u)?
    } else {
        lifts.first_above(&f.rect.s.0, &f.rect.s.1, &c.u)?
    }
    .clone();
    let mk = |extra: Pt| {
        TetraRect::from_points([f.pts[0].clone(), f.pts[1].clone(), f.pts[2].clone(), extra])
    };
    let lower = mk(horiz_new)?;
    let upper = mk(vert_new)?;
    verify_tetra(lifts, &lower)?;
    verify_tetra(lifts, &upper)?;
    debug_assert!(lies_above(&upper.rect, &lower.rect));
    Ok((lower, upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quadrant {
    I,
    II,
    III,
    IV,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV];

    fn contains(&self, base: &Pt, p: &Pt) -> bool {
        match self {
            Quadrant::I => p.s > base.s && p.u > base.u,
            Quadrant::II => p.s < base.s && p.u > base.u,
            Quadrant::III => p.s < base.s && p.u < base.u,
            Quadrant::IV => p.s > base.s && p.u < base.u,
        }
    }
}

/// A materialized chunk of the staircase of edge rectangles at a base
/// point, ascending in the `lies above` order.
#[derive(Debug, Clone)]
pub struct Staircase {
    pub base: Pt,
    pub quadrant: Quadrant,
    pub elements: Vec<EdgeRect>,
    /// Deck recurrence (g, shift) with g . elements[m] = elements[m + shift]
    /// for all stored m, when the base is periodic.
    pub recurrence: Option<(DeckElement, i32)>,
}

/// The first `count` staircase elements at `base` in the given quadrant
/// (ascending), with the deck recurrence when the base is periodic.
pub fn staircase(
    os: &OrbitSpace,
    lifts: &Lifts,
    base: &Pt,
    quadrant: Quadrant,
    count: usize,
) -> Result<Staircase, RectError> {
    if !lifts.contains(base) {
        return Err(RectError::NotInC);
    }
    let mut cands: Vec<&Pt> = lifts
        .points()
        .iter()
        .filter(|p| quadrant.contains(base, p))
        .collect();
    // Sweep by s-distance; keep the running minimum of u-distance.
    cands.sort_by(|a, b| {
        let da = (&a.s - &base.s).abs();
        let db = (&b.s - &base.s).abs();
        da.cmp(&db)
    });
    let mut chain: Vec<EdgeRect> = Vec::new();
    let mut min_du: Option<QuadNum> = None;
    for c in cands {
        let du = (&c.u - &base.u).abs();
        if min_du.as_ref().map_or(true, |m| &du < m) {
            chain.push(EdgeRect::spanned(base, c));
            min_du = Some(du);
        }
    }
    // The sweep runs tallest-last; reverse into ascending lies-above order.
    chain.reverse();
    let elements: Vec<EdgeRect> = chain.into_iter().take(count).collect();

    let recurrence = staircase_recurrence(os, base, &elements);
    Ok(Staircase {
        base: base.clone(),
        quadrant,
        elements,
        recurrence,
    })
}

fn staircase_recurrence(
    os: &OrbitSpace,
    base: &Pt,
    elements: &[EdgeRect],
) -> Option<(DeckElement, i32)> {
    if elements.len() < 2 {
        return None;
    }
    let g = quadrant_stabilizer(os, base)?;
    // The shift is the index offset of any element matched by g.
    let m0 = elements.iter().enumerate().find_map(|(m, e)| {
        let moved = e.transport(&g);
        elements
            .iter()
            .position(|f| *f == moved)
            .map(|j| j as i32 - m as i32)
    })?;
    for (m, e) in elements.iter().enumerate() {
        let target = m as i32 + m0;
        if target >= 0
            && (target as usize) < elements.len()
            && elements[target as usize] != e.transport(&g)
        {
            return None;
        }
    }
    Some((g, m0))
}

/// Smallest-height positive deck element fixing `p` and preserving its
/// quadrants, when `p` is periodic.
pub fn quadrant_stabilizer(os: &OrbitSpace, p: &Pt) -> Option<DeckElement> {
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::traits::ToPrimitive;
    let (x, y) = os.from_eigen(p);
    if !x.is_rational() || !y.is_rational() {
        return None;
    }
    let lat = (x.rat_part().clone(), y.rat_part().clone());
    let big = |n: i64| BigRational::from_integer(BigInt::from(n));
    for m in 1..=64u32 {
        let mut q = lat.clone();
        for _ in 0..m {
            q = (
                big(os.a[0][0]) * &q.0 + big(os.a[0][1]) * &q.1,
                big(os.a[1][0]) * &q.0 + big(os.a[1][1]) * &q.1,
            );
        }
        let diff = (&lat.0 - &q.0, &lat.1 - &q.1);
        if diff.0.is_integer() && diff.1.is_integer() {
            if os.sigma == -1 && m % 2 == 1 {
                continue; // orientation-reversing power; take an even one
            }
            let v = (diff.0.to_integer().to_i64()?, diff.1.to_integer().to_i64()?);
            let g = os.deck(v, m as i32);
            debug_assert_eq!(&g.apply(p), p);
            return Some(g);
        }
    }
    None
}

pub const CORE_ITERATION_CAP: usize = 64;

/// The core-point iteration outcome: the exact periodic point and its
/// recurrence element.
#[derive(Debug, Clone)]
pub struct CorePoint {
    pub point: Pt,
    pub recurrence: DeckElement,
}

/// Iterates R -> top edge of tetra_above(R) until a deck recurrence is
/// detected, then returns the exact fixed point of the recurrence element.
/// Widens its own lift materialization as the iterates grow taller.
pub fn core_point(
    os: &OrbitSpace,
    set: &PointOrbitSet,
    window: &Window,
    budget: usize,
    r: &EdgeRect,
) -> Result<CorePoint, RectError> {
    let mut lifts = Lifts::materialize(os, set, window, budget)?;
    let mut iterates: Vec<EdgeRect> = vec![r.clone()];
    for _ in 0..CORE_ITERATION_CAP {
        let cur = iterates.last().unwrap().clone();
        let t = loop {
            match tetra_above(&lifts, &cur) {
                Ok(t) => break t,
                Err(RectError::WindowExhausted) => {
                    let wider = lifts.window.widen(&os.lambda);
                    lifts = Lifts::materialize(os, set, &wider, budget)?;
                }
                Err(e) => return Err(e),
            }
        };
        let next = t.top_edge();
        for prev in &iterates {
            if let Some(g) = solve_deck_edge(os, prev, &next) {
                let c = fixed_point(os, &g);
                debug_assert_eq!(g.apply(&c), c);
                return Ok(CorePoint {
                    point: c,
                    recurrence: g,
                });
            }
        }
        iterates.push(next);
    }
    Err(RectError::NoRecurrence(CORE_ITERATION_CAP))
}

/// Deck element mapping one edge rectangle onto another, if any.
pub fn solve_deck_edge(os: &OrbitSpace, from: &EdgeRect, to: &EdgeRect) -> Option<DeckElement> {
    os.solve_deck(
        &from.corners.0,
        &from.corners.1,
        &to.corners.0,
        &to.corners.1,
    )
    .or_else(|| {
        os.solve_deck(
            &from.corners.0,
            &from.corners.1,
            &to.corners.1,
            &to.corners.0,
        )
    })
}

/// Exact fixed point of a deck element of nonzero height.
pub fn fixed_point(os: &OrbitSpace, g: &DeckElement) -> Pt {
    assert!(g.k != 0, "height-zero element has no isolated fixed point");
    let one = QuadNum::one(os.d);
    let sig = QuadNum::from_int(g.sigma as i64, os.d);
    let lk = os.lambda_pow(g.k);
    Pt::new(
        &g.t.s / &(&one - &(&sig * &lk)),
        &g.t.u / &(&one - &(&sig / &lk)),
    )
}

/// Deck element carrying `rect` into normal position: width in
/// [1, lambda), lower-left corner reduced into the fundamental lattice
/// cell.
fn normalizer(os: &OrbitSpace, rect: &Rect) -> DeckElement {
    use num::traits::ToPrimitive;
    let k = -os.log_floor(&rect.width());
    let g1 = os.deck((0, 0), k);
    let moved = rect.transport(&g1);
    let corner = Pt::new(moved.s.0.clone(), moved.u.0.clone());
    let (x, y) = os.from_eigen(&corner);
    let v0 = x.floor().to_i64().expect("lattice reduction overflow");
    let v1 = y.floor().to_i64().expect("lattice reduction overflow");
    let g2 = os.deck((-v0, -v1), 0);
    g2.compose(&g1)
}

/// Canonical form and the deck element g with `r = g . canonical`.
pub fn normalize_edge(os: &OrbitSpace, r: &EdgeRect) -> (EdgeRect, DeckElement) {
    let g = normalizer(os, &r.rect);
    (r.transport(&g), g.inverse())
}

pub fn normalize_tetra(os: &OrbitSpace, t: &TetraRect) -> (TetraRect, DeckElement) {
    let g = normalizer(os, &t.rect);
    (t.transport(&g), g.inverse())
}

pub fn normalize_face(os: &OrbitSpace, f: &FaceRect) -> (FaceRect, DeckElement) {
    let g = normalizer(os, &f.rect);
    (f.transport(&g), g.inverse())
}

pub fn orbit_key_edge(os: &OrbitSpace, r: &EdgeRect) -> String {
    let (canon, _) = normalize_edge(os, r);
    serde_json::to_string(&canon.corners).expect("orbit key serialization")
}

pub fn orbit_key_tetra(os: &OrbitSpace, t: &TetraRect) -> String {
    let (canon, _) = normalize_tetra(os, t);
    serde_json::to_string(&[&canon.north, &canon.east, &canon.south, &canon.west])
        .expect("orbit key serialization")
}

pub fn orbit_key_face(os: &OrbitSpace, f: &FaceRect) -> String {
    let (canon, _) = normalize_face(os, f);
    serde_json::to_string(&canon.pts).expect("orbit key serialization")
}

/// Groups materialized edge rectangles by deck orbit; each instance keeps
/// the deck element mapping the canonical rep onto it.
pub fn edge_orbits(
    os: &OrbitSpace,
    rects: &[EdgeRect],
) -> BTreeMap<String, Vec<(EdgeRect, DeckElement)>> {
    let mut map: BTreeMap<String, Vec<(EdgeRect, DeckElement)>> = BTreeMap::new();
    for r in rects {
        let (canon, g) = normalize_edge(os, r);
        let key = serde_json::to_string(&canon.corners).expect("orbit key serialization");
        map.entry(key).or_default().push((r.clone(), g));
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{MonodromySpec, DEFAULT_POINT_BUDGET};

    fn qn(n: i64) -> QuadNum {
        QuadNum::from_int(n, 5)
    }

    fn pt(s: i64, u: i64) -> Pt {
        Pt::new(qn(s), qn(u))
    }

    fn lr() -> (OrbitSpace, PointOrbitSet) {
        let os = OrbitSpace::build(&MonodromySpec::from_word("LR")).unwrap();
        let set = PointOrbitSet::drilled(&os).unwrap();
        (os, set)
    }

    fn lr_lifts(half: i64) -> (OrbitSpace, PointOrbitSet, Lifts) {
        let (os, set) = lr();
        let w = Window::square(half, 5);
        let lifts = Lifts::materialize(&os, &set, &w, DEFAULT_POINT_BUDGET).unwrap();
        (os, set, lifts)
    }

    #[test]
    fn lies_above_cases() {
        let tall = Rect::new((qn(0), qn(1)), (qn(0), qn(3)));
        let wide = Rect::new((qn(0), qn(2)), (qn(0), qn(1)));
        assert!(lies_above(&tall, &wide));
        assert!(!lies_above(&wide, &tall));
        assert!(!lies_above(&tall, &tall));
    }

    #[test]
    fn top_above_bottom_in_every_tetra() {
        let (_, _, lifts) = lr_lifts(4);
        let tets = enumerate_tetra_rects(&lifts);
        assert!(!tets.is_empty());
        for t in &tets {
            assert!(lies_above(&t.top_edge().rect, &t.bottom_edge().rect));
        }
    }

    #[test]
    fn edge_rect_interior_condition() {
        // A third lift strictly inside excludes the long diagonal pair.
        let w = Window::square(10, 5);
        let lifts = Lifts::from_points(w, vec![pt(0, 0), pt(2, 1), pt(4, 3)]);
        let rects = enumerate_edge_rects(&lifts);
        let bad = EdgeRect::spanned(&pt(0, 0), &pt(4, 3));
        assert!(!rects.contains(&bad));
        assert!(rects.contains(&EdgeRect::spanned(&pt(0, 0), &pt(2, 1))));
        assert!(rects.contains(&EdgeRect::spanned(&pt(2, 1), &pt(4, 3))));
    }

    #[test]
    fn single_point_no_rects() {
        let w = Window::square(2, 5);
        let lifts = Lifts::from_points(w, vec![pt(0, 0)]);
        assert!(enumerate_edge_rects(&lifts).is_empty());
    }

    #[test]
    fn enumerated_rects_pass_interior_recheck() {
        let (_, _, lifts) = lr_lifts(3);
        let rects = enumerate_edge_rects(&lifts);
        assert!(!rects.is_empty());
        for r in &rects {
            assert!(lifts.interior_empty(&r.rect), "{r:?}");
            assert!(lifts.contains(&r.corners.0) && lifts.contains(&r.corners.1));
        }
        // Completeness against a brute-force scan.
        let pts = lifts.points();
        let mut brute = Vec::new();
        for a in pts {
            for b in pts {
                if a.s < b.s && a.u != b.u {
                    let r = EdgeRect::spanned(a, b);
                    if lifts.interior_empty(&r.rect) {
                        brute.push(r);
                    }
                }
            }
        }
        brute.sort_by(|x, y| x.corners.cmp(&y.corners));
        assert_eq!(rects, brute);
    }

    #[test]
    fn color_assignment() {
        assert_eq!(EdgeRect::spanned(&pt(0, 0), &pt(1, 2)).color, Color::Red);
        assert_eq!(EdgeRect::spanned(&pt(0, 2), &pt(1, 0)).color, Color::Blue);
    }

    #[test]
    fn color_deck_equivariant() {
        let (os, _, lifts) = lr_lifts(3);
        let g = os.deck((1, -1), 1);
        for r in enumerate_edge_rects(&lifts).iter().take(40) {
            assert_eq!(r.transport(&g).color, r.color);
        }
    }

    #[test]
    fn lies_above_strict_partial_order() {
        let (_, _, lifts) = lr_lifts(3);
        let rects: Vec<Rect> = enumerate_edge_rects(&lifts)
            .into_iter()
            .map(|e| e.rect)
            .collect();
        for a in &rects {
            assert!(!lies_above(a, a));
        }
        for a in &rects {
            for b in &rects {
                for c in &rects {
                    if lies_above(b, a) && lies_above(c, b) {
                        assert!(lies_above(c, a));
                    }
                }
            }
        }
    }

    #[test]
    fn tetra_above_bottom_is_input() {
        let (_, _, lifts) = lr_lifts(4);
        for e in enumerate_edge_rects(&lifts).iter().take(30) {
            if let Ok(t) = tetra_above(&lifts, e) {
                assert_eq!(&t.bottom_edge(), e);
            }
        }
    }

    #[test]
    fn tetra_subrect_counts_and_face_colors() {
        let (_, _, lifts) = lr_lifts(4);
        let tets = enumerate_tetra_rects(&lifts);
        assert!(!tets.is_empty());
        for t in &tets {
            assert_eq!(t.edge_subrects().len(), 6);
            let faces = t.face_subrects();
            assert_eq!(faces.len(), 4);
            for f in &faces {
                // Exactly two edge subrectangles of one color, one of the other.
                let reds = f
                    .edge_subrects()
                    .iter()
                    .filter(|e| e.color == Color::Red)
                    .count();
                assert!(reds == 1 || reds == 2);
            }
        }
    }

    #[test]
    fn lr_has_two_tetra_orbits() {
        let (os, _, lifts) = lr_lifts(6);
        let tets = enumerate_tetra_rects(&lifts);
        let mut keys: Vec<String> = tets.iter().map(|t| orbit_key_tetra(&os, t)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 2);
    }

    #[test]
    fn staircase_monotone_and_recurrent() {
        let (os, _, lifts) = lr_lifts(6);
        let base = pt(0, 0);
        let st = staircase(&os, &lifts, &base, Quadrant::I, 6).unwrap();
        assert!(st.elements.len() >= 3);
        for w in st.elements.windows(2) {
            assert!(w[1].rect.width() < w[0].rect.width());
            assert!(w[1].rect.height() > w[0].rect.height());
            assert!(lies_above(&w[1].rect, &w[0].rect));
            assert!(w[0].shares_corner(&w[1]));
        }
        let (g, m0) = st.recurrence.clone().expect("origin is periodic");
        for (m, e) in st.elements.iter().enumerate() {
            let target = m as i32 + m0;
            if target >= 0 && (target as usize) < st.elements.len() {
                assert_eq!(st.elements[target as usize], e.transport(&g));
            }
        }
    }

    #[test]
    fn staircase_requires_base_in_set() {
        let (os, _, lifts) = lr_lifts(3);
        let err = staircase(&os, &lifts, &pt(0, 1), Quadrant::I, 3).unwrap_err();
        assert_eq!(err, RectError::NotInC);
    }

    #[test]
    fn core_points_fixed_and_inside() {
        let (os, set, lifts) = lr_lifts(4);
        let rects = enumerate_edge_rects(&lifts);
        let w = Window::square(4, 5);
        for r in rects.iter().take(12) {
            let core = core_point(&os, &set, &w, DEFAULT_POINT_BUDGET, r).unwrap();
            assert_eq!(core.recurrence.apply(&core.point), core.point);
            assert!(core.recurrence.k != 0);
            assert!(r.rect.contains_interior(&core.point));
        }
    }

    #[test]
    fn corner_sharing_distinct_cores_strictly_monotone() {
        let (os, set, lifts) = lr_lifts(5);
        let w = Window::square(5, 5);
        let base = pt(0, 0);
        let st = staircase(&os, &lifts, &base, Quadrant::I, 5).unwrap();
        let cores: Vec<Pt> = st
            .elements
            .iter()
            .map(|r| {
                core_point(&os, &set, &w, DEFAULT_POINT_BUDGET, r)
                    .unwrap()
                    .point
            })
            .collect();
        for i in 0..cores.len() {
            for j in (i + 1)..cores.len() {
                if cores[i] == cores[j] {
                    continue;
                }
                let wi = (&cores[i].s - &base.s).abs();
                let wj = (&cores[j].s - &base.s).abs();
                let hi = (&cores[i].u - &base.u).abs();
                let hj = (&cores[j].u - &base.u).abs();
                assert!(wi > wj && hi < hj, "staircase positions {i} vs {j}");
            }
        }
    }

    #[test]
    fn edge_orbit_count_matches_tetra_orbit_count() {
        let (os, _, lifts) = lr_lifts(6);
        let rects = enumerate_edge_rects(&lifts);
        let mut ekeys: Vec<String> = rects.iter().map(|r| orbit_key_edge(&os, r)).collect();
        ekeys.sort();
        ekeys.dedup();
        assert_eq!(ekeys.len(), 2);
    }

    #[test]
    fn normalization_constant_on_orbits() {
        let (os, _, lifts) = lr_lifts(4);
        let rects = enumerate_edge_rects(&lifts);
        let g = os.deck((2, 1), -1);
        for r in rects.iter().take(20) {
            assert_eq!(
                orbit_key_edge(&os, r),
                orbit_key_edge(&os, &r.transport(&g))
            );
            let (canon, back) = normalize_edge(&os, r);
            assert_eq!(&canon.transport(&back), r);
        }
    }

    #[test]
    fn expand_face_finds_both_tetras() {
        let (_, _, lifts) = lr_lifts(6);
        let tets = enumerate_tetra_rects(&lifts);
        let mut checked = 0;
        for t in &tets {
            for f in t.face_subrects() {
                match expand_face(&lifts, &f) {
                    Ok((lower, upper)) => {
                        assert!(&lower == t || &upper == t);
                        assert!(lies_above(&upper.rect, &lower.rect));
                        checked += 1;
                    }
                    Err(RectError::WindowExhausted) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(checked > 4);
    }
}
