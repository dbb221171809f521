//! Rate-region evaluators and polygon geometry.
//!
//! Four regions are evaluated for a fixed joint distribution, each as three
//! right-hand sides clamped at zero:
//!
//! * [`RegionKind::Secure`]: confidential messages with noncausal state at
//!   the encoder,
//!   `R1 <= I(V1;Y1|U) - max[I(V1;Y2|U,V2), I(W;V1|U)]`, symmetric `R2`, and
//!   `R1+R2 <= I(V1;Y1|U) + I(V2;Y2|U) - I(V1;Y2|U,V2) - I(V2;Y1|U,V1)
//!   - I(V1;V2|U) - I(V1,V2;W|U)`.
//! * [`RegionKind::Steinberg`]: state at the encoder, no secrecy,
//!   `R1 <= I(V1;Y1) - I(W;V1)`, symmetric `R2`, and
//!   `R1+R2 <= I(V1;Y1) + I(V2;Y2) - I(V1;V2) - I(V1,V2;W)`.
//! * [`RegionKind::Marton`]: the classical broadcast region,
//!   `R1 <= I(V1;Y1)`, `R2 <= I(V2;Y2)`,
//!   `R1+R2 <= I(V1;Y1) + I(V2;Y2) - I(V1;V2)`.
//! * [`RegionKind::Liu`]: confidential messages without state,
//!   `R1 <= I(V1;Y1|U) - I(V1;Y2|U) - I(V1;V2|U)` and symmetric `R2`. The
//!   eavesdropper term is *not* conditioned on the other auxiliary, and there
//!   is no separate sum constraint, so the region is a rectangle.

use std::fmt;

use crate::error::{Error, Result};
use crate::prob::JointDistribution;

/// Collinearity tolerance of the hull computation.
pub const HULL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub const ORIGIN: RatePair = RatePair { r1: 0.0, r2: 0.0 };

    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    fn sub(self, o: RatePair) -> RatePair {
        RatePair::new(self.r1 - o.r1, self.r2 - o.r2)
    }

    fn cross(self, o: RatePair) -> f64 {
        self.r1 * o.r2 - self.r2 * o.r1
    }

    fn norm(self) -> f64 {
        self.r1.hypot(self.r2)
    }
}

impl fmt::Display for RatePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.r1, self.r2)
    }
}

/// Right-hand sides of the individual and sum-rate constraints, in bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateBounds {
    pub r1_max: f64,
    pub r2_max: f64,
    pub sum_max: f64,
}

impl RateBounds {
    /// Clamps each bound at zero.
    pub fn clamped(r1: f64, r2: f64, sum: f64) -> Self {
        Self { r1_max: r1.max(0.0), r2_max: r2.max(0.0), sum_max: sum.max(0.0) }
    }

    /// Whether `(r1, r2)` satisfies all five half-planes, with slack `tol`.
    pub fn admits(&self, p: RatePair, tol: f64) -> bool {
        p.r1 >= -tol
            && p.r2 >= -tol
            && p.r1 <= self.r1_max + tol
            && p.r2 <= self.r2_max + tol
            && p.r1 + p.r2 <= self.sum_max + tol
    }

    /// True when the sum line cuts into the `r1_max x r2_max` rectangle.
    pub fn sum_active(&self) -> bool {
        self.sum_max < self.r1_max + self.r2_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionKind {
    Secure,
    Steinberg,
    Marton,
    Liu,
}

impl RegionKind {
    pub const ALL: [RegionKind; 4] =
        [RegionKind::Secure, RegionKind::Steinberg, RegionKind::Marton, RegionKind::Liu];

    pub fn name(self) -> &'static str {
        match self {
            RegionKind::Secure => "secure",
            RegionKind::Steinberg => "steinberg",
            RegionKind::Marton => "marton",
            RegionKind::Liu => "liu",
        }
    }

    /// Vertex names in pentagon slot order: origin, R1 axis, right edge, top
    /// edge, R2 axis.
    pub fn corner_labels(self) -> [&'static str; 5] {
        match self {
            RegionKind::Secure => ["O", "A1", "F1", "E1", "C1"],
            RegionKind::Steinberg => ["O", "E", "F", "G", "H"],
            RegionKind::Marton => ["O", "I", "J", "K", "L"],
            RegionKind::Liu => ["O", "P", "Q", "R", "S"],
        }
    }

    pub fn evaluate(self, j: &JointDistribution) -> Result<RateBounds> {
        match self {
            RegionKind::Secure => eval_secure_si(j),
            RegionKind::Steinberg => eval_steinberg(j),
            RegionKind::Marton => eval_marton(j),
            RegionKind::Liu => eval_liu(j),
        }
    }
}

impl std::str::FromStr for RegionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RegionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown region kind `{s}`")))
    }
}

fn require(j: &JointDistribution, names: &[&str]) -> Result<JointDistribution> {
    for n in names {
        j.axis(n)?;
    }
    j.marginalize(names)
}

/// The conditional information terms shared by the secure region, its corner
/// points, and rate assignment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecureTerms {
    /// `I(V1;Y1|U)`
    pub v1_y1: f64,
    /// `I(V2;Y2|U)`
    pub v2_y2: f64,
    /// `I(V1;Y2|U,V2)`
    pub v1_y2_given_v2: f64,
    /// `I(V2;Y1|U,V1)`
    pub v2_y1_given_v1: f64,
    /// `I(W;V1|U)`
    pub w_v1: f64,
    /// `I(W;V2|U)`
    pub w_v2: f64,
    /// `I(V1;V2|U)`
    pub v1_v2: f64,
    /// `I(V1,V2;W|U)`
    pub v12_w: f64,
}

impl SecureTerms {
    pub fn compute(j: &JointDistribution) -> Result<Self> {
        let m = require(j, &["W", "U", "V1", "V2", "Y1", "Y2"])?;
        let mi = |a: &[&str], b: &[&str], c: &[&str]| m.mutual_information(a, b, c);
        Ok(Self {
            v1_y1: mi(&["V1"], &["Y1"], &["U"])?,
            v2_y2: mi(&["V2"], &["Y2"], &["U"])?,
            v1_y2_given_v2: mi(&["V1"], &["Y2"], &["U", "V2"])?,
            v2_y1_given_v1: mi(&["V2"], &["Y1"], &["U", "V1"])?,
            w_v1: mi(&["W"], &["V1"], &["U"])?,
            w_v2: mi(&["W"], &["V2"], &["U"])?,
            v1_v2: mi(&["V1"], &["V2"], &["U"])?,
            v12_w: mi(&["V1", "V2"], &["W"], &["U"])?,
        })
    }

    /// Unclamped right-hand sides of the secure region.
    pub fn raw_bounds(&self) -> (f64, f64, f64) {
        (
            self.v1_y1 - self.v1_y2_given_v2.max(self.w_v1),
            self.v2_y2 - self.v2_y1_given_v1.max(self.w_v2),
            self.v1_y1 + self.v2_y2
                - self.v1_y2_given_v2
                - self.v2_y1_given_v1
                - self.v1_v2
                - self.v12_w,
        )
    }
}

pub fn eval_secure_si(j: &JointDistribution) -> Result<RateBounds> {
    let (r1, r2, s) = SecureTerms::compute(j)?.raw_bounds();
    Ok(RateBounds::clamped(r1, r2, s))
}

pub fn eval_steinberg(j: &JointDistribution) -> Result<RateBounds> {
    let m = require(j, &["W", "V1", "V2", "Y1", "Y2"])?;
    let mi = |a: &[&str], b: &[&str]| m.mutual_information(a, b, &[]);
    let (i1, i2) = (mi(&["V1"], &["Y1"])?, mi(&["V2"], &["Y2"])?);
    Ok(RateBounds::clamped(
        i1 - mi(&["W"], &["V1"])?,
        i2 - mi(&["W"], &["V2"])?,
        i1 + i2 - mi(&["V1"], &["V2"])? - mi(&["V1", "V2"], &["W"])?,
    ))
}

pub fn eval_marton(j: &JointDistribution) -> Result<RateBounds> {
    let m = require(j, &["V1", "V2", "Y1", "Y2"])?;
    let mi = |a: &[&str], b: &[&str]| m.mutual_information(a, b, &[]);
    let (i1, i2) = (mi(&["V1"], &["Y1"])?, mi(&["V2"], &["Y2"])?);
    Ok(RateBounds::clamped(i1, i2, i1 + i2 - mi(&["V1"], &["V2"])?))
}

pub fn eval_liu(j: &JointDistribution) -> Result<RateBounds> {
    let m = require(j, &["U", "V1", "V2", "Y1", "Y2"])?;
    let mi = |a: &[&str], b: &[&str]| m.mutual_information(a, b, &["U"]);
    let v1v2 = mi(&["V1"], &["V2"])?;
    let r1 = (mi(&["V1"], &["Y1"])? - mi(&["V1"], &["Y2"])? - v1v2).max(0.0);
    let r2 = (mi(&["V2"], &["Y2"])? - mi(&["V2"], &["Y1"])? - v1v2).max(0.0);
    Ok(RateBounds { r1_max: r1, r2_max: r2, sum_max: r1 + r2 })
}

/// Named corner points of the secure region.
///
/// `A1`/`C1` are the axis intercepts, `F1`/`E1` the ends of the sum-rate
/// edge on the right and top sides, and `B1`/`D1` the heights of the two
/// wiretap-style rectangles `O A1 F1 B1` and `O C1 E1 D1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CornerPoints {
    pub a1: RatePair,
    pub b1: RatePair,
    pub c1: RatePair,
    pub d1: RatePair,
    pub e1: RatePair,
    pub f1: RatePair,
}

impl CornerPoints {
    /// `O, A1, F1, E1, C1` with coincident points merged.
    pub fn pentagon(&self) -> Vec<RatePair> {
        dedup(vec![RatePair::ORIGIN, self.a1, self.f1, self.e1, self.c1])
    }

    pub fn labeled(&self) -> [(&'static str, RatePair); 6] {
        [
            ("A1", self.a1),
            ("B1", self.b1),
            ("C1", self.c1),
            ("D1", self.d1),
            ("E1", self.e1),
            ("F1", self.f1),
        ]
    }
}

pub fn corner_points(j: &JointDistribution) -> Result<CornerPoints> {
    let t = SecureTerms::compute(j)?;
    let (r1, r2, s) = t.raw_bounds();
    let b = RateBounds::clamped(r1, r2, s);
    let [_, a1, f1, e1, c1] = pentagon_slots(&b);
    let b1 = (t.v2_y2 - t.v2_y1_given_v1 - t.v1_v2.max(t.w_v2)).max(0.0);
    let d1 = (t.v1_y1 - t.v1_y2_given_v2 - t.v1_v2.max(t.w_v1)).max(0.0);
    Ok(CornerPoints {
        a1,
        b1: RatePair::new(0.0, b1),
        c1,
        d1: RatePair::new(d1, 0.0),
        e1,
        f1,
    })
}

/// The five pentagon slots `O, A, F, E, C` of a bounds triple. When the sum
/// line misses the rectangle, `F` and `E` coincide at its far corner; when it
/// cuts an axis before the rectangle side, `A` (or `C`) moves in with it.
fn pentagon_slots(b: &RateBounds) -> [RatePair; 5] {
    let (r1, r2, s) = (b.r1_max, b.r2_max, b.sum_max);
    let o = RatePair::ORIGIN;
    if s >= r1 + r2 {
        let corner = RatePair::new(r1, r2);
        return [o, RatePair::new(r1, 0.0), corner, corner, RatePair::new(0.0, r2)];
    }
    let a = r1.min(s);
    let c = r2.min(s);
    [
        o,
        RatePair::new(a, 0.0),
        RatePair::new(a, s - a),
        RatePair::new(s - c, c),
        RatePair::new(0.0, c),
    ]
}

fn dedup(points: Vec<RatePair>) -> Vec<RatePair> {
    let mut out: Vec<RatePair> = Vec::with_capacity(points.len());
    for p in points {
        if out.last() != Some(&p) && out.first() != Some(&p) {
            out.push(p);
        }
    }
    out
}

/// A convex polygon of achievable rate pairs, counterclockwise from the
/// origin.
#[derive(Clone, Debug, PartialEq)]
pub struct RateRegion {
    pub vertices: Vec<RatePair>,
    pub labels: Vec<String>,
}

/// The region `{R >= 0 : R1 <= r1_max, R2 <= r2_max, R1 + R2 <= sum_max}`
/// labeled with the secure-region corner names.
pub fn polygon(b: &RateBounds) -> RateRegion {
    polygon_labeled(b, RegionKind::Secure)
}

pub fn polygon_labeled(b: &RateBounds, kind: RegionKind) -> RateRegion {
    let slots = pentagon_slots(b);
    let names = kind.corner_labels();
    let mut vertices: Vec<RatePair> = Vec::with_capacity(5);
    let mut labels = Vec::with_capacity(5);
    for (p, name) in slots.into_iter().zip(names) {
        if vertices.last() != Some(&p) && vertices.first() != Some(&p) {
            vertices.push(p);
            labels.push(name.to_string());
        }
    }
    RateRegion { vertices, labels }
}

impl RateRegion {
    pub fn from_vertices(vertices: Vec<RatePair>) -> Self {
        let labels = (0..vertices.len())
            .map(|i| if vertices[i] == RatePair::ORIGIN { "O".to_string() } else { format!("P{i}") })
            .collect();
        Self { vertices, labels }
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum::<f64>()
            / 2.0
    }

    /// Every turn is a left turn (or straight) to within `tol`.
    pub fn is_convex(&self, tol: f64) -> bool {
        let v = &self.vertices;
        let n = v.len();
        n < 3
            || (0..n).all(|i| {
                let e1 = v[(i + 1) % n].sub(v[i]);
                let e2 = v[(i + 2) % n].sub(v[(i + 1) % n]);
                e1.cross(e2) >= -tol
            })
    }

    /// Point membership with boundary slack `tol` (a Euclidean distance).
    pub fn contains_point(&self, p: RatePair, tol: f64) -> bool {
        let v = &self.vertices;
        let n = v.len();
        if n >= 3 {
            let inside = (0..n).all(|i| {
                let e = v[(i + 1) % n].sub(v[i]);
                let len = e.norm();
                len == 0.0 || e.cross(p.sub(v[i])) / len >= -tol
            });
            if inside {
                return true;
            }
        }
        match n {
            0 => false,
            1 => p.sub(v[0]).norm() <= tol,
            _ => (0..n).any(|i| segment_distance(p, v[i], v[(i + 1) % n]) <= tol),
        }
    }

    pub fn contains_region(&self, inner: &RateRegion, tol: f64) -> bool {
        inner.vertices.iter().all(|&p| self.contains_point(p, tol))
    }

    /// Distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: RatePair) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        match n {
            0 => f64::INFINITY,
            1 => p.sub(v[0]).norm(),
            _ => (0..n)
                .map(|i| segment_distance(p, v[i], v[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

fn segment_distance(p: RatePair, a: RatePair, b: RatePair) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.r1 * ab.r1 + ab.r2 * ab.r2;
    if len2 == 0.0 {
        return p.sub(a).norm();
    }
    let t = ((p.r1 - a.r1) * ab.r1 + (p.r2 - a.r2) * ab.r2) / len2;
    let t = t.clamp(0.0, 1.0);
    p.sub(RatePair::new(a.r1 + t * ab.r1, a.r2 + t * ab.r2)).norm()
}

/// Monotone-chain convex hull, counterclockwise from the lexicographically
/// smallest point. Collinear points (within [`HULL_TOL`]) are dropped.
pub fn convex_hull(points: &[RatePair]) -> Vec<RatePair> {
    let mut pts: Vec<RatePair> = points.to_vec();
    pts.sort_by(|a, b| a.r1.total_cmp(&b.r1).then(a.r2.total_cmp(&b.r2)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |a: RatePair, b: RatePair, c: RatePair| b.sub(a).cross(c.sub(a));
    let mut hull: Vec<RatePair> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &RatePair>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= HULL_TOL {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.is_empty() {
        // all points collinear and coincident after tolerance
        hull.push(pts[0]);
    }
    hull
}

/// Convex hull of a union of regions.
pub fn hull_of(regions: &[RateRegion]) -> RateRegion {
    let pts: Vec<RatePair> = regions.iter().flat_map(|r| r.vertices.iter().copied()).collect();
    RateRegion::from_vertices(convex_hull(&pts))
}
