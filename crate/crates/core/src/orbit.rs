//! The translation orbit space of a drilled hyperbolic torus-bundle
//! suspension: eigen-coordinates, the affine deck-group action, and
//! window-bounded enumeration of drilled-orbit lifts and synthetic
//! puncture sets.
//!
//! Points are written in (s, u) eigen-coordinates in which the monodromy
//! acts by (s, u) -> (sigma lambda s, sigma lambda^-1 u) and lattice
//! translations act by the image of Z^2 under the eigenbasis. Stable
//! leaves are vertical, unstable leaves horizontal.

use crate::exact::{is_valid_radicand, squarefree_part, ExactError, QuadNum};
use crate::geom::Pt;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

pub const DEFAULT_POINT_BUDGET: usize = 100_000;

/// Bound on |k| when testing whether two points share a deck orbit.
const ORBIT_TEST_HEIGHT_BOUND: i32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("monodromy matrix is not hyperbolic (|trace| = {0} <= 2)")]
    NotHyperbolic(i64),
    #[error("monodromy word contains letter {0:?} (expected L or R)")]
    BadWord(char),
    #[error("monodromy word is empty")]
    EmptyWord,
    #[error("monodromy matrix must have determinant 1 (got {0})")]
    BadDeterminant(i64),
    #[error("drilled point is not fixed by A^{0} modulo the lattice")]
    BadDrilledPoint(u32),
    #[error("window materialization exceeds the point budget of {0}")]
    WindowTooLarge(usize),
    #[error("representatives {0} and {1} lie in the same deck orbit")]
    DuplicateOrbit(usize, usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Mat2 = [[i64; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Result<Mat2, OrbitError> {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc: i64 = 0;
            for (k, row) in b.iter().enumerate() {
                acc = acc
                    .checked_add(
                        a[i][k]
                            .checked_mul(row[j])
                            .ok_or(OrbitError::EmptyWord)
                            .map_err(|_| overflow_err())?,
                    )
                    .ok_or_else(overflow_err)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

fn overflow_err() -> OrbitError {
    OrbitError::BadWord('#')
}

fn mat_det(a: &Mat2) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn mat_trace(a: &Mat2) -> i64 {
    a[0][0] + a[1][1]
}

/// Inverse of a determinant-1 integer matrix.
fn mat_inv(a: &Mat2) -> Mat2 {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

pub type RatVec = (BigRational, BigRational);

fn mat_apply_rat(a: &Mat2, v: &RatVec) -> RatVec {
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    (
        big(a[0][0]) * &v.0 + big(a[0][1]) * &v.1,
        big(a[1][0]) * &v.0 + big(a[1][1]) * &v.1,
    )
}

fn rat_frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

fn vec_mod_lattice(v: &RatVec) -> RatVec {
    (rat_frac(&v.0), rat_frac(&v.1))
}

fn is_integer_vec(v: &RatVec) -> bool {
    v.0.is_integer() && v.1.is_integer()
}

/// Monodromy data: a word in {L, R} or an explicit hyperbolic matrix,
/// plus the drilled periodic orbit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonodromySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Mat2>,
    #[serde(default = "DrillSpec::origin")]
    pub drill: DrillSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DrillSpec {
    pub period: u32,
    /// Representative point on the torus, rational coordinates as "p/q" strings.
    pub point: (String, String),
}

impl DrillSpec {
    pub fn origin() -> Self {
        DrillSpec {
            period: 1,
            point: ("0/1".into(), "0/1".into()),
        }
    }

    pub fn point_rat(&self) -> Result<RatVec, ExactError> {
        Ok((
            crate::exact::parse_rational(&self.point.0)?,
            crate::exact::parse_rational(&self.point.1)?,
        ))
    }
}

impl MonodromySpec {
    pub fn from_word(word: &str) -> Self {
        MonodromySpec {
            word: Some(word.to_string()),
            matrix: None,
            drill: DrillSpec::origin(),
        }
    }

    pub fn matrix_of(&self) -> Result<Mat2, OrbitError> {
        if let Some(m) = self.matrix {
            if mat_det(&m) != 1 {
                return Err(OrbitError::BadDeterminant(mat_det(&m)));
            }
            return Ok(m);
        }
        let word = self.word.as_deref().ok_or(OrbitError::EmptyWord)?;
        if word.is_empty() {
            return Err(OrbitError::EmptyWord);
        }
        let l: Mat2 = [[1, 1], [0, 1]];
        let r: Mat2 = [[1, 0], [1, 1]];
        let mut acc: Mat2 = [[1, 0], [0, 1]];
        for ch in word.chars() {
            let m = match ch {
                'L' => &l,
                'R' => &r,
                other => return Err(OrbitError::BadWord(other)),
            };
            acc = mat_mul(&acc, m)?;
        }
        Ok(acc)
    }
}

/// Eigen-coordinate model of the orbit space.
#[derive(Debug, Clone)]
pub struct OrbitSpace {
    pub a: Mat2,
    /// Leading eigenvalue magnitude, > 1.
    pub lambda: QuadNum,
    pub d: u64,
    /// Sign of the eigenvalues of A (+1 for trace > 2, -1 for trace < -2).
    pub sigma: i8,
    /// Rows send lattice coordinates to (s, u): row 0 is the expanding
    /// functional, row 1 the contracting one. First nonzero entry is 1.
    pub basis: [[QuadNum; 2]; 2],
    pub basis_inv: [[QuadNum; 2]; 2],
    /// Drilled orbit representative in lattice coordinates with its period.
    pub drill_point: RatVec,
    pub drill_period: u32,
}

impl OrbitSpace {
    pub fn build(spec: &MonodromySpec) -> Result<Self, OrbitError> {
        let a = spec.matrix_of()?;
        let tr = mat_trace(&a);
        if tr.abs() <= 2 {
            return Err(OrbitError::NotHyperbolic(tr));
        }
        let disc = (tr * tr - 4) as u64;
        let (d, f) = squarefree_part(disc);
        debug_assert!(is_valid_radicand(d));
        let half = |n: BigRational| n / BigRational::from_integer(BigInt::from(2));
        // lambda = (|tr| + f sqrt d)/2 > 1; eigenvalues are sigma*lambda,
        // sigma/lambda.
        let lambda = QuadNum::new(
            half(BigRational::from_integer(BigInt::from(tr.abs()))),
            half(BigRational::from_integer(BigInt::from(f))),
            d,
        );
        let sigma: i8 = if tr > 0 { 1 } else { -1 };
        let sig_q = QuadNum::from_int(sigma as i64, d);
        let mu_exp = &sig_q * &lambda;
        let mu_con = &sig_q * &lambda.inv()?;

        // Left eigenvector (1, (mu - a00)/a10); a10 != 0 for hyperbolic A.
        if a[1][0] == 0 {
            return Err(OrbitError::NotHyperbolic(tr));
        }
        let row = |mu: &QuadNum| -> [QuadNum; 2] {
            let a00 = QuadNum::from_int(a[0][0], d);
            let a10 = QuadNum::from_int(a[1][0], d);
            [QuadNum::one(d), &(mu - &a00) / &a10]
        };
        let basis = [row(&mu_exp), row(&mu_con)];
        let det = &(&basis[0][0] * &basis[1][1]) - &(&basis[0][1] * &basis[1][0]);
        let basis_inv = [
            [&basis[1][1] / &det, &(-&basis[0][1]) / &det],
            [&(-&basis[1][0]) / &det, &basis[0][0] / &det],
        ];

        let os = OrbitSpace {
            a,
            lambda,
            d,
            sigma,
            basis,
            basis_inv,
            drill_point: spec.drill.point_rat()?,
            drill_period: spec.drill.period,
        };

        // Exact conjugation identity basis * A = diag(mu) * basis.
        for (i, mu) in [mu_exp, mu_con].iter().enumerate() {
            for j in 0..2 {
                let lhs = &(&os.basis[i][0] * &QuadNum::from_int(a[0][j], d))
                    + &(&os.basis[i][1] * &QuadNum::from_int(a[1][j], d));
                assert_eq!(lhs, mu * &os.basis[i][j], "conjugation identity failed");
            }
        }

        // Drilled point must be fixed by A^period mod Z^2.
        if spec.drill.period == 0 {
            return Err(OrbitError::BadDrilledPoint(0));
        }
        let mut p = os.drill_point.clone();
        for _ in 0..spec.drill.period {
            p = mat_apply_rat(&os.a, &p);
        }
        let diff = (&p.0 - &os.drill_point.0, &p.1 - &os.drill_point.1);
        if !is_integer_vec(&diff) {
            return Err(OrbitError::BadDrilledPoint(spec.drill.period));
        }
        Ok(os)
    }

    fn rat_to_quad(&self, r: &BigRational) -> QuadNum {
        QuadNum::rational(r.clone(), self.d)
    }

    /// Eigen-coordinates of a lattice-coordinate point.
    pub fn to_eigen(&self, v: &RatVec) -> Pt {
        let x = self.rat_to_quad(&v.0);
        let y = self.rat_to_quad(&v.1);
        Pt::new(
            &(&self.basis[0][0] * &x) + &(&self.basis[0][1] * &y),
            &(&self.basis[1][0] * &x) + &(&self.basis[1][1] * &y),
        )
    }

    /// Inverse of `to_eigen`; the result has QuadNum entries that are
    /// rational exactly when the point lies in the rational lattice span.
    pub fn from_eigen(&self, p: &Pt) -> (QuadNum, QuadNum) {
        (
            &(&self.basis_inv[0][0] * &p.s) + &(&self.basis_inv[0][1] * &p.u),
            &(&self.basis_inv[1][0] * &p.s) + &(&self.basis_inv[1][1] * &p.u),
        )
    }

    /// True iff `t` lies in the translation lattice basis * Z^2.
    pub fn is_lattice_vector(&self, t: &Pt) -> bool {
        let (x, y) = self.from_eigen(t);
        x.is_rational() && y.is_rational() && x.rat_part().is_integer() && y.rat_part().is_integer()
    }

    pub fn lambda_pow(&self, k: i32) -> QuadNum {
        self.lambda.powi(k)
    }

    /// Unstable (expanding) right eigendirection, first entry normalized
    /// to 1; the second entry is the direction's slope in lattice
    /// coordinates.
    pub fn unstable_eigendirection(&self) -> [QuadNum; 2] {
        // (A - mu_exp) v = 0 with v = (1, t): t = (mu - a00)/a01.
        let d = self.d;
        let mu = &QuadNum::from_int(self.sigma as i64, d) * &self.lambda;
        let a00 = QuadNum::from_int(self.a[0][0], d);
        let a01 = QuadNum::from_int(self.a[0][1], d);
        [QuadNum::one(d), &(&mu - &a00) / &a01]
    }

    /// The deck element (v, k) acting by p -> sigma^k Lambda^k p + basis v.
    pub fn deck(&self, v: (i64, i64), k: i32) -> DeckElement {
        let t = self.to_eigen(&(
            BigRational::from_integer(BigInt::from(v.0)),
            BigRational::from_integer(BigInt::from(v.1)),
        ));
        DeckElement {
            t,
            k,
            sigma: self.sigma.pow(k.unsigned_abs()),
            lambda: self.lambda.clone(),
        }
    }

    /// Finds the deck element with g(a1) = b1 and g(a2) = b2, if any.
    pub fn solve_deck(&self, a1: &Pt, a2: &Pt, b1: &Pt, b2: &Pt) -> Option<DeckElement> {
        let da = a2.sub(a1);
        let db = b2.sub(b1);
        if da.s.is_zero() || db.s.is_zero() {
            return None;
        }
        let ratio = &db.s / &da.s;
        let k = self.solve_power(&ratio.abs())?;
        let sigma: i8 = if ratio.is_positive() { 1 } else { -1 };
        if sigma != self.sigma.pow(k.unsigned_abs()) {
            return None;
        }
        let lk = self.lambda_pow(k);
        let sig_q = QuadNum::from_int(sigma as i64, self.d);
        let t = Pt::new(
            &b1.s - &(&sig_q * &(&lk * &a1.s)),
            &b1.u - &(&sig_q * &(&a1.u / &lk)),
        );
        if !self.is_lattice_vector(&t) {
            return None;
        }
        let g = DeckElement {
            t,
            k,
            sigma,
            lambda: self.lambda.clone(),
        };
        if &g.apply(a1) == b1 && &g.apply(a2) == b2 {
            Some(g)
        } else {
            None
        }
    }

    /// Exact integer k with lambda^k = r, if one exists; r must be > 0.
    pub fn solve_power(&self, r: &QuadNum) -> Option<i32> {
        if !r.is_positive() {
            return None;
        }
        let guess = r.to_f64().ln() / self.lambda.to_f64().ln();
        let k0 = guess.round() as i32;
        for k in [k0, k0 - 1, k0 + 1] {
            if self.lambda_pow(k) == *r {
                return Some(k);
            }
        }
        None
    }

    /// Least k with lambda^k <= w < lambda^(k+1), i.e. floor(log_lambda w).
    pub fn log_floor(&self, w: &QuadNum) -> i32 {
        assert!(w.is_positive());
        let mut k = (w.to_f64().ln() / self.lambda.to_f64().ln()).floor() as i32;
        while self.lambda_pow(k) > *w {
            k -= 1;
        }
        while self.lambda_pow(k + 1) <= *w {
            k += 1;
        }
        k
    }

    /// Do two eigen-coordinate points lie in the same deck orbit? Exact,
    /// with |k| bounded.
    pub fn same_orbit(&self, p: &Pt, q: &Pt) -> bool {
        for k in -ORBIT_TEST_HEIGHT_BOUND..=ORBIT_TEST_HEIGHT_BOUND {
            let g = self.deck((0, 0), k);
            let moved = g.apply(p);
            if self.is_lattice_vector(&q.sub(&moved)) {
                return true;
            }
        }
        false
    }
}

/// Element (t, k, sigma) of the deck group, acting on eigen-coordinates by
/// (s, u) -> (sigma lambda^k s + t_s, sigma lambda^-k u + t_u). k is the
/// height of the element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckElement {
    pub t: Pt,
    pub k: i32,
    pub sigma: i8,
    lambda: QuadNum,
}

impl DeckElement {
    pub fn identity(os: &OrbitSpace) -> Self {
        os.deck((0, 0), 0)
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.sigma == 1 && self.t.s.is_zero() && self.t.u.is_zero()
    }

    pub fn apply(&self, p: &Pt) -> Pt {
        let lk = self.lambda.powi(self.k);
        let sig = QuadNum::from_int(self.sigma as i64, self.lambda.radicand());
        Pt::new(
            &(&sig * &(&lk * &p.s)) + &self.t.s,
            &(&sig * &(&p.u / &lk)) + &self.t.u,
        )
    }

    /// self after `other`: (self . other)(p) = self(other(p)).
    pub fn compose(&self, other: &DeckElement) -> DeckElement {
        let lk = self.lambda.powi(self.k);
        let sig = QuadNum::from_int(self.sigma as i64, self.lambda.radicand());
        DeckElement {
            t: Pt::new(
                &(&sig * &(&lk * &other.t.s)) + &self.t.s,
                &(&sig * &(&other.t.u / &lk)) + &self.t.u,
            ),
            k: self.k + other.k,
            sigma: self.sigma * other.sigma,
            lambda: self.lambda.clone(),
        }
    }

    pub fn inverse(&self) -> DeckElement {
        let lk = self.lambda.powi(self.k);
        let sig = QuadNum::from_int(self.sigma as i64, self.lambda.radicand());
        DeckElement {
            t: Pt::new(
                -&(&(&self.t.s / &lk) / &sig),
                -&(&(&self.t.u * &lk) / &sig),
            ),
            k: -self.k,
            sigma: self.sigma,
            lambda: self.lambda.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointLabel {
    Drilled,
    Puncture,
    Buoy,
    Anchor,
}

/// A deck-invariant point collection given by rational lattice-coordinate
/// representatives (all rational points are periodic under A mod Z^2, so
/// every finite window materializes to a finite list).
#[derive(Debug, Clone)]
pub struct PointOrbitSet {
    pub label: PointLabel,
    pub reps: Vec<OrbitRep>,
}

#[derive(Debug, Clone)]
pub struct OrbitRep {
    pub point: RatVec,
    pub period: u32,
}

const PERIOD_CAP: u32 = 4096;

impl PointOrbitSet {
    pub fn drilled(os: &OrbitSpace) -> Result<Self, OrbitError> {
        PointOrbitSet::new(os, PointLabel::Drilled, vec![os.drill_point.clone()])
    }

    pub fn new(os: &OrbitSpace, label: PointLabel, points: Vec<RatVec>) -> Result<Self, OrbitError> {
        let mut reps = Vec::new();
        for p in points {
            let p = vec_mod_lattice(&p);
            let period = orbit_period(os, &p)?;
            reps.push(OrbitRep { point: p, period });
        }
        let set = PointOrbitSet { label, reps };
        set.check_distinct(os)?;
        Ok(set)
    }

    pub fn empty(label: PointLabel) -> Self {
        PointOrbitSet {
            label,
            reps: Vec::new(),
        }
    }

    fn check_distinct(&self, os: &OrbitSpace) -> Result<(), OrbitError> {
        for i in 0..self.reps.len() {
            for j in (i + 1)..self.reps.len() {
                let pi = os.to_eigen(&self.reps[i].point);
                let pj = os.to_eigen(&self.reps[j].point);
                if os.same_orbit(&pi, &pj) {
                    return Err(OrbitError::DuplicateOrbit(i, j));
                }
            }
        }
        Ok(())
    }

    /// Stabilizer of representative `i`: the deck element of height
    /// `period` fixing its eigen-coordinate image.
    pub fn stabilizer(&self, os: &OrbitSpace, i: usize) -> DeckElement {
        let rep = &self.reps[i];
        let mut q = rep.point.clone();
        for _ in 0..rep.period {
            q = mat_apply_rat(&os.a, &q);
        }
        let diff = (&rep.point.0 - &q.0, &rep.point.1 - &q.1);
        debug_assert!(is_integer_vec(&diff));
        let v = (
            diff.0.to_integer().to_i64().expect("stabilizer overflow"),
            diff.1.to_integer().to_i64().expect("stabilizer overflow"),
        );
        os.deck(v, rep.period as i32)
    }
}

fn orbit_period(os: &OrbitSpace, p: &RatVec) -> Result<u32, OrbitError> {
    let start = vec_mod_lattice(p);
    let mut q = start.clone();
    for m in 1..=PERIOD_CAP {
        q = vec_mod_lattice(&mat_apply_rat(&os.a, &q));
        if q == start {
            return Ok(m);
        }
    }
    Err(OrbitError::BadDrilledPoint(PERIOD_CAP))
}

/// Axis-aligned window in eigen-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub s: (QuadNum, QuadNum),
    pub u: (QuadNum, QuadNum),
}

impl Window {
    pub fn new(s: (QuadNum, QuadNum), u: (QuadNum, QuadNum)) -> Self {
        assert!(s.0 <= s.1 && u.0 <= u.1, "window ranges reversed");
        Window { s, u }
    }

    pub fn square(half: i64, d: u64) -> Self {
        let h = QuadNum::from_int(half, d);
        Window::new((-&h, h.clone()), (-&h, h))
    }

    pub fn is_degenerate(&self) -> bool {
        self.s.0 == self.s.1 || self.u.0 == self.u.1
    }

    pub fn contains(&self, p: &Pt) -> bool {
        p.s >= self.s.0 && p.s <= self.s.1 && p.u >= self.u.0 && p.u <= self.u.1
    }

    /// Image under a deck element, re-normalized to an axis box.
    pub fn transport(&self, g: &DeckElement) -> Window {
        let a = g.apply(&Pt::new(self.s.0.clone(), self.u.0.clone()));
        let b = g.apply(&Pt::new(self.s.1.clone(), self.u.1.clone()));
        let (slo, shi) = if a.s <= b.s {
            (a.s.clone(), b.s.clone())
        } else {
            (b.s.clone(), a.s.clone())
        };
        let (ulo, uhi) = if a.u <= b.u {
            (a.u.clone(), b.u.clone())
        } else {
            (b.u.clone(), a.u.clone())
        };
        Window::new((slo, shi), (ulo, uhi))
    }

    /// Scales both ranges about their centers by lambda.
    pub fn widen(&self, lambda: &QuadNum) -> Window {
        let scale = |(lo, hi): &(QuadNum, QuadNum)| {
            let c = (lo + hi).half();
            let r = &(hi - lo).half() * lambda;
            (&c - &r, &c + &r)
        };
        Window::new(scale(&self.s), scale(&self.u))
    }
}

/// Materializes every deck-orbit point of `set` inside `w`, in
/// deterministic lexicographic order.
pub fn enumerate_lifts(
    os: &OrbitSpace,
    set: &PointOrbitSet,
    w: &Window,
    budget: usize,
) -> Result<Vec<Pt>, OrbitError> {
    if w.is_degenerate() {
        return Ok(Vec::new());
    }
    let mut out: Vec<Pt> = Vec::new();
    for rep in &set.reps {
        let mut base_lat = rep.point.clone();
        for _ in 0..rep.period {
            enumerate_coset(os, &base_lat, w, budget, &mut out)?;
            base_lat = vec_mod_lattice(&mat_apply_rat(&os.a, &base_lat));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Points of (base + basis Z^2) inside the window.
fn enumerate_coset(
    os: &OrbitSpace,
    base_lat: &RatVec,
    w: &Window,
    budget: usize,
    out: &mut Vec<Pt>,
) -> Result<(), OrbitError> {
    let base = os.to_eigen(base_lat);
    // basis v must land in the box w - base; bound v via the preimages of
    // the box corners under the basis.
    let corners = [
        Pt::new(&w.s.0 - &base.s, &w.u.0 - &base.u),
        Pt::new(&w.s.0 - &base.s, &w.u.1 - &base.u),
        Pt::new(&w.s.1 - &base.s, &w.u.0 - &base.u),
        Pt::new(&w.s.1 - &base.s, &w.u.1 - &base.u),
    ];
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    for c in &corners {
        let (x, y) = os.from_eigen(c);
        for (i, coord) in [x, y].into_iter().enumerate() {
            let f = coord.floor().to_i64().ok_or(OrbitError::WindowTooLarge(budget))?;
            lo[i] = lo[i].min(f);
            hi[i] = hi[i].max(f + 1);
        }
    }
    let cells = ((hi[0] - lo[0] + 1) as i128) * ((hi[1] - lo[1] + 1) as i128);
    if cells > budget as i128 {
        return Err(OrbitError::WindowTooLarge(budget));
    }
    for v0 in lo[0]..=hi[0] {
        for v1 in lo[1]..=hi[1] {
            let t = os.to_eigen(&(
                BigRational::from_integer(BigInt::from(v0)),
                BigRational::from_integer(BigInt::from(v1)),
            ));
            let p = base.add(&t);
            if w.contains(&p) {
                out.push(p);
                if out.len() > budget {
                    return Err(OrbitError::WindowTooLarge(budget));
                }
            }
        }
    }
    Ok(())
}

/// Affine image of a point under a deck element.
pub fn transport(g: &DeckElement, p: &Pt) -> Pt {
    g.apply(p)
}
