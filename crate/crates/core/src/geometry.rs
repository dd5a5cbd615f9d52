//! Closed planar boundaries made of straight and circular pieces, equally
//! spaced collocation knots, and interior evaluation grids.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::operator::{Point, PointFn, PolyExpFunction};

/// Relative distance (to the diameter) under which a point counts as lying on
/// the boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// Knots closer than this arc length to a segment junction are rejected.
pub const JUNCTION_TOLERANCE: f64 = 1e-9;

const CLOSURE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve {
    Line {
        start: Point,
        end: Point,
    },
    /// Circular arc traversed from `start_angle` through `sweep` radians;
    /// positive sweep is counterclockwise about the center.
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

impl Curve {
    pub fn line(start: Point, end: Point) -> Self {
        Curve::Line { start, end }
    }

    pub fn arc(center: Point, radius: f64, start_angle: f64, sweep: f64) -> Self {
        Curve::Arc {
            center,
            radius,
            start_angle,
            sweep,
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Curve::Line { start, end } => dist(start, end),
            Curve::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn start(&self) -> Point {
        self.point_at(0.0)
    }

    pub fn end(&self) -> Point {
        match *self {
            Curve::Line { end, .. } => end,
            Curve::Arc { .. } => self.point_at(self.length()),
        }
    }

    fn angle_at(&self, s: f64) -> f64 {
        match *self {
            Curve::Arc {
                radius,
                start_angle,
                sweep,
                ..
            } => start_angle + sweep.signum() * s / radius,
            Curve::Line { .. } => unreachable!("angle_at on a line"),
        }
    }

    /// Point at arc length `s` from the start.
    pub fn point_at(&self, s: f64) -> Point {
        match *self {
            Curve::Line { start, end } => {
                let t = s / dist(start, end);
                [
                    start[0] + t * (end[0] - start[0]),
                    start[1] + t * (end[1] - start[1]),
                ]
            }
            Curve::Arc { center, radius, .. } => {
                let th = self.angle_at(s);
                [center[0] + radius * th.cos(), center[1] + radius * th.sin()]
            }
        }
    }

    /// Unit tangent along the direction of travel.
    pub fn tangent_at(&self, s: f64) -> [f64; 2] {
        match *self {
            Curve::Line { start, end } => {
                let l = dist(start, end);
                [(end[0] - start[0]) / l, (end[1] - start[1]) / l]
            }
            Curve::Arc { sweep, .. } => {
                let th = self.angle_at(s);
                let sg = sweep.signum();
                [-sg * th.sin(), sg * th.cos()]
            }
        }
    }

    /// Right-hand normal of the tangent; outward for a counterclockwise loop.
    pub fn normal_at(&self, s: f64) -> [f64; 2] {
        let t = self.tangent_at(s);
        [t[1], -t[0]]
    }

    fn validate(&self) -> Result<()> {
        let finite = |p: Point| p[0].is_finite() && p[1].is_finite();
        match *self {
            Curve::Line { start, end } => {
                if !finite(start) || !finite(end) {
                    return Err(Error::Geometry("non-finite line endpoint".into()));
                }
            }
            Curve::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                if !finite(center) || !start_angle.is_finite() || !sweep.is_finite() {
                    return Err(Error::Geometry("non-finite arc parameter".into()));
                }
                if !(radius > 0.0) {
                    return Err(Error::Geometry(format!(
                        "arc radius must be positive, got {radius}"
                    )));
                }
                if sweep.abs() > TAU * (1.0 + 1e-12) {
                    return Err(Error::Geometry("arc sweeps more than a full turn".into()));
                }
            }
        }
        if !(self.length() > 0.0) {
            return Err(Error::Geometry("segment has zero length".into()));
        }
        Ok(())
    }

    /// Angular interval `[lo, hi]` covered by an arc.
    fn angle_range(start_angle: f64, sweep: f64) -> (f64, f64) {
        if sweep >= 0.0 {
            (start_angle, start_angle + sweep)
        } else {
            (start_angle + sweep, start_angle)
        }
    }

    fn distance_to(&self, p: Point) -> f64 {
        match *self {
            Curve::Line { start, end } => {
                let d = [end[0] - start[0], end[1] - start[1]];
                let l2 = d[0] * d[0] + d[1] * d[1];
                let t =
                    (((p[0] - start[0]) * d[0] + (p[1] - start[1]) * d[1]) / l2).clamp(0.0, 1.0);
                dist(p, [start[0] + t * d[0], start[1] + t * d[1]])
            }
            Curve::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let (lo, _) = Self::angle_range(start_angle, sweep);
                let phi = (p[1] - center[1]).atan2(p[0] - center[0]);
                let rel = (phi - lo).rem_euclid(TAU);
                if rel <= sweep.abs() || sweep.abs() >= TAU {
                    (dist(p, center) - radius).abs()
                } else {
                    dist(p, self.start()).min(dist(p, self.end()))
                }
            }
        }
    }

    /// Endpoints plus the axis-extreme points of arcs.
    fn extreme_points(&self) -> Vec<Point> {
        let mut pts = vec![self.start(), self.end()];
        if let Curve::Arc {
            center,
            radius,
            start_angle,
            sweep,
        } = *self
        {
            let (lo, hi) = Self::angle_range(start_angle, sweep);
            let mut k = (lo / FRAC_PI_2).ceil();
            while k * FRAC_PI_2 <= hi {
                let th = k * FRAC_PI_2;
                pts.push([center[0] + radius * th.cos(), center[1] + radius * th.sin()]);
                k += 1.0;
            }
        }
        pts
    }

    /// `½ ∮ (x dy − y dx)` along this piece.
    fn area_contribution(&self) -> f64 {
        match *self {
            Curve::Line { start, end } => 0.5 * (start[0] * end[1] - end[0] * start[1]),
            Curve::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let (t0, t1) = (start_angle, start_angle + sweep);
                0.5 * (radius * center[0] * (t1.sin() - t0.sin())
                    - radius * center[1] * (t1.cos() - t0.cos())
                    + radius * radius * sweep)
            }
        }
    }

    /// Number of crossings of the ray `{(x, p_y) : x > p_x}` with this piece,
    /// using the half-open rule on y-monotone sub-pieces so that shared
    /// endpoints are counted once.
    fn ray_crossings(&self, p: Point) -> usize {
        match *self {
            Curve::Line { start: a, end: b } => {
                if (a[1] > p[1]) != (b[1] > p[1]) {
                    let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                    usize::from(x > p[0])
                } else {
                    0
                }
            }
            Curve::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let (lo, hi) = Self::angle_range(start_angle, sweep);
                let mut cuts = vec![lo];
                let mut k = ((lo - FRAC_PI_2) / PI).floor() + 1.0;
                while FRAC_PI_2 + k * PI < hi {
                    cuts.push(FRAC_PI_2 + k * PI);
                    k += 1.0;
                }
                cuts.push(hi);
                let y = |th: f64| center[1] + radius * th.sin();
                let mut count = 0;
                for w in cuts.windows(2) {
                    let (ta, tb) = (w[0], w[1]);
                    let (ya, yb) = (y(ta), y(tb));
                    if (ya > p[1]) == (yb > p[1]) {
                        continue;
                    }
                    // y is monotone on [ta, tb]; bisect for the crossing angle
                    let (mut l, mut h) = (ta, tb);
                    let increasing = yb > ya;
                    for _ in 0..80 {
                        let mid = 0.5 * (l + h);
                        if (y(mid) > p[1]) == increasing {
                            h = mid;
                        } else {
                            l = mid;
                        }
                    }
                    let x = center[0] + radius * (0.5 * (l + h)).cos();
                    count += usize::from(x > p[0]);
                }
                count
            }
        }
    }
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BcKind {
    Dirichlet,
    Neumann,
}

/// Boundary data on a segment.
#[derive(Clone)]
pub enum BoundaryData {
    /// Data taken from a known field: its value on Dirichlet segments and its
    /// outward normal derivative on Neumann segments.
    Field(PolyExpFunction),
    /// Data given directly: `R(x)` on Dirichlet segments, `N(x)` on Neumann
    /// segments.
    Pointwise(PointFn),
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryData::Field(g) => f.debug_tuple("Field").field(g).finish(),
            BoundaryData::Pointwise(_) => f.write_str("Pointwise(..)"),
        }
    }
}

impl BoundaryData {
    pub fn zero() -> Self {
        BoundaryData::Field(PolyExpFunction::zero())
    }

    /// Value (`Dirichlet`) or outward normal derivative (`Neumann`) at `x`.
    pub fn at(&self, kind: BcKind, x: Point, normal: [f64; 2]) -> f64 {
        match (self, kind) {
            (BoundaryData::Field(g), BcKind::Dirichlet) => g.evaluate(x),
            (BoundaryData::Field(g), BcKind::Neumann) => g.normal_derivative(x, normal),
            (BoundaryData::Pointwise(f), _) => f(x),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundarySegment {
    pub curve: Curve,
    pub bc_kind: BcKind,
    pub bc_data: BoundaryData,
}

impl BoundarySegment {
    pub fn new(curve: Curve, bc_kind: BcKind, bc_data: BoundaryData) -> Result<Self> {
        curve.validate()?;
        Ok(BoundarySegment {
            curve,
            bc_kind,
            bc_data,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot {
    pub position: Point,
    /// Unit outward normal.
    pub normal: [f64; 2],
    pub bc_kind: BcKind,
    pub segment: usize,
    /// Arc length from the loop origin.
    pub arc_length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Outside,
    Boundary,
}

/// A simply connected planar domain bounded by one counterclockwise loop.
#[derive(Debug, Clone)]
pub struct BoundaryModel {
    segments: Vec<BoundarySegment>,
    knots: Vec<Knot>,
    diameter: f64,
    perimeter: f64,
    area: f64,
}

impl BoundaryModel {
    pub fn new(segments: Vec<BoundarySegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Geometry("boundary has no segments".into()));
        }
        for s in &segments {
            s.curve.validate()?;
        }
        let diameter = diameter_of(&segments);
        let n = segments.len();
        for i in 0..n {
            let gap = dist(segments[i].curve.end(), segments[(i + 1) % n].curve.start());
            if gap > CLOSURE_TOLERANCE * diameter {
                return Err(Error::Geometry(format!(
                    "segment {i} ends {gap:.3e} away from the start of segment {}",
                    (i + 1) % n
                )));
            }
        }
        check_simple(&segments)?;
        let area: f64 = segments.iter().map(|s| s.curve.area_contribution()).sum();
        if area < 0.0 {
            return Err(Error::Geometry(
                "boundary loop must be counterclockwise (negative signed area)".into(),
            ));
        }
        let perimeter = segments.iter().map(|s| s.curve.length()).sum();
        Ok(BoundaryModel {
            segments,
            knots: Vec::new(),
            diameter,
            perimeter,
            area,
        })
    }

    /// Straight-sided domain; `edges[i]` describes the edge from vertex `i`
    /// to vertex `i + 1` (cyclically).
    pub fn polygon(vertices: &[Point], edges: Vec<(BcKind, BoundaryData)>) -> Result<Self> {
        if vertices.len() < 3 || edges.len() != vertices.len() {
            return Err(Error::Geometry(format!(
                "polygon needs at least 3 vertices and one edge description per vertex ({} vs {})",
                vertices.len(),
                edges.len()
            )));
        }
        let n = vertices.len();
        let segments = edges
            .into_iter()
            .enumerate()
            .map(|(i, (kind, data))| {
                BoundarySegment::new(Curve::line(vertices[i], vertices[(i + 1) % n]), kind, data)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(segments)
    }

    pub fn circle(center: Point, radius: f64, kind: BcKind, data: BoundaryData) -> Result<Self> {
        Self::new(vec![BoundarySegment::new(
            Curve::arc(center, radius, 0.0, TAU),
            kind,
            data,
        )?])
    }

    pub fn segments(&self) -> &[BoundarySegment] {
        &self.segments
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Domain diameter: the largest distance between segment endpoints and
    /// arc extremes. Used as the default scaling and Peclet length.
    pub fn characteristic_length(&self) -> f64 {
        self.diameter
    }

    /// `L` knots at equal arc-length spacing, offset by half a spacing from
    /// the loop origin.
    pub fn place_knots(&self, count: usize) -> Result<Self> {
        if count < 4 {
            return Err(Error::param(format!("need at least 4 knots, got {count}")));
        }
        let mut junctions = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = 0.0;
        junctions.push(0.0);
        for s in &self.segments {
            acc += s.curve.length();
            junctions.push(acc);
        }
        let spacing = self.perimeter / count as f64;
        let mut knots = Vec::with_capacity(count);
        let mut seg = 0;
        for k in 0..count {
            let s = (k as f64 + 0.5) * spacing;
            let nearest = junctions
                .iter()
                .map(|j| (s - j).abs())
                .fold(f64::INFINITY, f64::min);
            if nearest < JUNCTION_TOLERANCE {
                return Err(Error::Placement {
                    knot: k,
                    distance: nearest,
                });
            }
            while seg + 1 < self.segments.len() && s > junctions[seg + 1] {
                seg += 1;
            }
            let local = s - junctions[seg];
            let curve = &self.segments[seg].curve;
            knots.push(Knot {
                position: curve.point_at(local),
                normal: curve.normal_at(local),
                bc_kind: self.segments[seg].bc_kind,
                segment: seg,
                arc_length: s,
            });
        }
        Ok(BoundaryModel {
            knots,
            ..self.clone()
        })
    }

    /// Boundary data at knot `i`.
    pub fn knot_data(&self, i: usize) -> f64 {
        let k = &self.knots[i];
        self.segments[k.segment]
            .bc_data
            .at(k.bc_kind, k.position, k.normal)
    }

    /// Even-odd ray-crossing classification; points within
    /// `BOUNDARY_TOLERANCE · diameter` of the boundary are reported separately.
    pub fn point_in_domain(&self, x: Point) -> Location {
        let band = BOUNDARY_TOLERANCE * self.diameter;
        if self.segments.iter().any(|s| s.curve.distance_to(x) <= band) {
            return Location::Boundary;
        }
        let crossings: usize = self.segments.iter().map(|s| s.curve.ray_crossings(x)).sum();
        if crossings % 2 == 1 {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for s in &self.segments {
            for p in s.curve.extreme_points() {
                for a in 0..2 {
                    lo[a] = lo[a].min(p[a]);
                    hi[a] = hi[a].max(p[a]);
                }
            }
        }
        (lo, hi)
    }

    fn interior_grid(&self, pitch: f64) -> Vec<Point> {
        let (lo, hi) = self.bounding_box();
        let axis = |a: usize| {
            let w = hi[a] - lo[a];
            let n = ((w / pitch) + 1e-9).floor().max(1.0) as usize;
            let offset = lo[a] + 0.5 * (w - (n as f64 - 1.0) * pitch);
            (0..n).map(move |i| offset + i as f64 * pitch)
        };
        let mut pts = Vec::new();
        for y in axis(1) {
            for x in axis(0) {
                if self.point_in_domain([x, y]) == Location::Inside {
                    pts.push([x, y]);
                }
            }
        }
        pts
    }

    /// Interior grid points plus the knots, about `target` in total.
    pub fn evaluation_nodes(&self, target: usize) -> Result<Vec<Point>> {
        if target < 1 {
            return Err(Error::param("evaluation target must be at least 1"));
        }
        if !(self.area > 1e-14 * self.diameter * self.diameter) {
            return Err(Error::Geometry("domain has zero area".into()));
        }
        let knot_points: Vec<Point> = self.knots.iter().map(|k| k.position).collect();
        let interior_target = target.saturating_sub(knot_points.len());
        let mut nodes = Vec::new();
        if interior_target > 0 {
            let mut pitch = (self.area / interior_target as f64).sqrt();
            let mut grid = self.interior_grid(pitch);
            for _ in 0..60 {
                let total = grid.len() + knot_points.len();
                if (total as f64 - target as f64).abs() <= 0.1 * target as f64 {
                    break;
                }
                pitch *= if grid.is_empty() {
                    0.5
                } else {
                    (grid.len() as f64 / interior_target as f64).sqrt()
                };
                grid = self.interior_grid(pitch);
            }
            nodes = grid;
        }
        nodes.extend(knot_points);
        Ok(nodes)
    }
}

fn diameter_of(segments: &[BoundarySegment]) -> f64 {
    let pts: Vec<Point> = segments
        .iter()
        .flat_map(|s| s.curve.extreme_points())
        .collect();
    let mut d: f64 = 0.0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            d = d.max(dist(*a, *b));
        }
    }
    d
}

/// Rejects proper crossings between non-adjacent straight segments.
fn check_simple(segments: &[BoundarySegment]) -> Result<()> {
    let n = segments.len();
    let orient = |a: Point, b: Point, c: Point| {
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    };
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if let (Curve::Line { start: a, end: b }, Curve::Line { start: c, end: d }) =
                (segments[i].curve, segments[j].curve)
            {
                let d1 = orient(a, b, c);
                let d2 = orient(a, b, d);
                let d3 = orient(c, d, a);
                let d4 = orient(c, d, b);
                if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                    return Err(Error::Geometry(format!(
                        "segments {i} and {j} intersect; boundary must be simple"
                    )));
                }
            }
        }
    }
    Ok(())
}
