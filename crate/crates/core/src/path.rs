//! Piecewise line/arc paths in the parameter plane, lassos, and the loop
//! algebra (concatenation, reversal, powers, commutators).
//!
//! Paths are exact geometric objects; they are discretized only by
//! [`Path::sample`]. Counterclockwise is the positive orientation.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Complex, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error("EndpointMismatch: segment {index} starts {gap:e} away from the previous end")]
    EndpointMismatch { index: usize, gap: f64 },
    #[error("NotClosed: path does not return to its start")]
    NotClosed,
    #[error("BaseMismatch: loops have different base points")]
    BaseMismatch,
    #[error("RadiusTooLarge: lasso radius {radius} must be below the base distance {distance}")]
    RadiusTooLarge { radius: f64, distance: f64 },
    #[error("InvalidRadius: radius must be positive and finite")]
    InvalidRadius,
    #[error("InvalidPower: exponent must be at least 1")]
    InvalidPower,
    #[error("OnPath: point lies on the path")]
    OnPath,
    #[error("EmptyPath: operation needs at least one segment")]
    EmptyPath,
    #[error("InvalidJson: {0}")]
    InvalidJson(String),
}

const JOIN_TOL: f64 = 1e-12;

fn close<T: Real>(a: Complex<T>, b: Complex<T>) -> bool {
    let scale = a.norm().max(b.norm()).max(T::one());
    let tol = T::lit(JOIN_TOL).max(T::lit(64.0) * T::epsilon());
    (a - b).norm() <= tol * scale
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment<T> {
    Line {
        from: Complex<T>,
        to: Complex<T>,
    },
    /// `center + radius * exp(i theta)` for theta from `angle_from` to
    /// `angle_to`; the sweep may exceed a full turn.
    Arc {
        center: Complex<T>,
        radius: T,
        angle_from: T,
        angle_to: T,
    },
}

impl<T: Real> Segment<T> {
    pub fn start(&self) -> Complex<T> {
        self.point(T::zero())
    }

    pub fn end(&self) -> Complex<T> {
        self.point(T::one())
    }

    /// Point at local parameter `s` in `[0, 1]`.
    pub fn point(&self, s: T) -> Complex<T> {
        match *self {
            Segment::Line { from, to } => {
                if s == T::zero() {
                    from
                } else if s == T::one() {
                    to
                } else {
                    from + (to - from) * s
                }
            }
            Segment::Arc {
                center,
                radius,
                angle_from,
                angle_to,
            } => center + Complex::from_polar(radius, angle_from + (angle_to - angle_from) * s),
        }
    }

    pub fn length(&self) -> T {
        match *self {
            Segment::Line { from, to } => (to - from).norm(),
            Segment::Arc {
                radius,
                angle_from,
                angle_to,
                ..
            } => radius * (angle_to - angle_from).abs(),
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc {
                center,
                radius,
                angle_from,
                angle_to,
            } => Segment::Arc {
                center,
                radius,
                angle_from: angle_to,
                angle_to: angle_from,
            },
        }
    }

    /// Euclidean distance from `c` to the segment.
    pub fn distance_to(&self, c: Complex<T>) -> T {
        match *self {
            Segment::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2.is_zero() {
                    return (c - from).norm();
                }
                let s = ((c - from) * d.conj()).re / len2;
                let s = s.max(T::zero()).min(T::one());
                (c - (from + d * s)).norm()
            }
            Segment::Arc {
                center,
                radius,
                angle_from,
                angle_to,
            } => {
                let rel = c - center;
                let endpoints = (c - self.start()).norm().min((c - self.end()).norm());
                if rel.is_zero() {
                    return radius;
                }
                let two_pi = T::PI() + T::PI();
                let lo = angle_from.min(angle_to);
                let hi = angle_from.max(angle_to);
                let mut phi = rel.arg();
                if hi - lo >= two_pi {
                    return (rel.norm() - radius).abs();
                }
                while phi < lo {
                    phi += two_pi;
                }
                while phi >= lo + two_pi {
                    phi -= two_pi;
                }
                if phi <= hi {
                    (rel.norm() - radius).abs()
                } else {
                    endpoints
                }
            }
        }
    }
}

/// A continuous chain of segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Path<T> {
    segments: Vec<Segment<T>>,
    closed: bool,
}

impl<T: Real> Path<T> {
    /// Checks that consecutive segments meet.
    pub fn new(segments: Vec<Segment<T>>) -> Result<Self, PathError> {
        for (i, w) in segments.windows(2).enumerate() {
            let (a, b) = (w[0].end(), w[1].start());
            if !close(a, b) {
                return Err(PathError::EndpointMismatch {
                    index: i + 1,
                    gap: to_f64((a - b).norm()),
                });
            }
        }
        let closed = match (segments.first(), segments.last()) {
            (Some(f), Some(l)) => close(f.start(), l.end()),
            _ => false,
        };
        Ok(Path { segments, closed })
    }

    /// The path with no segments; identity for [`Path::concat`].
    pub fn empty() -> Self {
        Path {
            segments: Vec::new(),
            closed: false,
        }
    }

    /// Null loop resting at `p`.
    pub fn stationary(p: Complex<T>) -> Self {
        Path {
            segments: vec![Segment::Line { from: p, to: p }],
            closed: true,
        }
    }

    pub fn line(from: Complex<T>, to: Complex<T>) -> Self {
        Self::new(vec![Segment::Line { from, to }]).expect("single segment")
    }

    /// `turns` full circles (negative for clockwise) starting at angle `start_angle`.
    pub fn circle(center: Complex<T>, radius: T, start_angle: T, turns: i32) -> Self {
        let two_pi = T::PI() + T::PI();
        let dir = if turns >= 0 { T::one() } else { -T::one() };
        let segments = (0..turns.unsigned_abs())
            .map(|k| {
                let k = T::from_u32(k).expect("small");
                Segment::Arc {
                    center,
                    radius,
                    angle_from: start_angle + dir * two_pi * k,
                    angle_to: start_angle + dir * two_pi * (k + T::one()),
                }
            })
            .collect();
        Self::new(segments).expect("arcs chain")
    }

    /// Closed polygon through `vertices`, returning to the first one.
    pub fn polygon(vertices: &[Complex<T>]) -> Self {
        match vertices {
            [] => Self::empty(),
            [p] => Self::stationary(*p),
            _ => {
                let mut segments: Vec<Segment<T>> = vertices
                    .windows(2)
                    .map(|w| Segment::Line { from: w[0], to: w[1] })
                    .collect();
                segments.push(Segment::Line {
                    from: vertices[vertices.len() - 1],
                    to: vertices[0],
                });
                Self::new(segments).expect("polygon chains")
            }
        }
    }

    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn start(&self) -> Option<Complex<T>> {
        self.segments.first().map(Segment::start)
    }

    pub fn end(&self) -> Option<Complex<T>> {
        self.segments.last().map(Segment::end)
    }

    pub fn length(&self) -> T {
        self.segments.iter().fold(T::zero(), |acc, s| acc + s.length())
    }

    /// Point at path parameter `t`: segment `floor(t)` at local fraction `t - floor(t)`.
    pub fn point_at(&self, t: T) -> Option<Complex<T>> {
        let n = self.segments.len();
        if n == 0 {
            return None;
        }
        let t = t.max(T::zero());
        let k = t.floor().to_usize().unwrap_or(0);
        if k >= n {
            return self.end();
        }
        Some(self.segments[k].point(t - t.floor()))
    }

    pub fn concat(&self, q: &Path<T>) -> Result<Path<T>, PathError> {
        if self.is_empty() {
            return Ok(q.clone());
        }
        if q.is_empty() {
            return Ok(self.clone());
        }
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&q.segments);
        Self::new(segments)
    }

    pub fn reverse(&self) -> Path<T> {
        Path {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            closed: self.closed,
        }
    }

    /// The loop traversed `m` times.
    pub fn power(&self, m: u32) -> Result<Path<T>, PathError> {
        if !self.closed {
            return Err(PathError::NotClosed);
        }
        if m == 0 {
            return Err(PathError::InvalidPower);
        }
        let mut segments = Vec::with_capacity(self.segments.len() * m as usize);
        for _ in 0..m {
            segments.extend_from_slice(&self.segments);
        }
        Ok(Path {
            segments,
            closed: true,
        })
    }

    /// `p`, then `q`, then `p` backwards, then `q` backwards.
    pub fn commutator_path(p: &Path<T>, q: &Path<T>) -> Result<Path<T>, PathError> {
        if !p.closed || !q.closed {
            return Err(PathError::NotClosed);
        }
        match (p.start(), q.start()) {
            (Some(a), Some(b)) if close(a, b) => {}
            _ => return Err(PathError::BaseMismatch),
        }
        p.concat(q)?.concat(&p.reverse())?.concat(&q.reverse())
    }

    /// Ordered points with their path parameters, including every segment
    /// endpoint, consecutive spacing at most `max_step`.
    pub fn sample_with_params(&self, max_step: T) -> Vec<(T, Complex<T>)> {
        assert!(max_step > T::zero(), "max_step must be positive");
        let mut out = Vec::new();
        for (k, seg) in self.segments.iter().enumerate() {
            let kt = T::from_usize_lossy(k);
            if k == 0 {
                out.push((kt, seg.start()));
            }
            let pieces = (seg.length() / max_step - T::lit(1e-9)).ceil().max(T::one());
            let m = pieces.to_usize().unwrap_or(1);
            for j in 1..=m {
                let s = T::from_usize_lossy(j) / T::from_usize_lossy(m);
                out.push((kt + s, seg.point(s)));
            }
        }
        if self.closed {
            if let (Some(first), Some(last)) = (out.first().copied(), out.last_mut()) {
                last.1 = first.1;
            }
        }
        out
    }

    pub fn sample(&self, max_step: T) -> Vec<Complex<T>> {
        self.sample_with_params(max_step)
            .into_iter()
            .map(|(_, z)| z)
            .collect()
    }

    pub fn distance_to(&self, c: Complex<T>) -> T {
        self.segments
            .iter()
            .map(|s| s.distance_to(c))
            .fold(T::infinity(), T::min)
    }

    /// Winding number around `c`, by summing argument increments over a
    /// sampling fine enough that no increment reaches a quarter turn.
    pub fn winding_number(&self, c: Complex<T>) -> Result<i64, PathError> {
        if !self.closed {
            return Err(PathError::NotClosed);
        }
        let dist = self.distance_to(c);
        if dist <= T::lit(JOIN_TOL).max(T::lit(64.0) * T::epsilon()) {
            return Err(PathError::OnPath);
        }
        let pts = self.sample(dist / T::lit(2.0));
        let mut total = T::zero();
        for w in pts.windows(2) {
            total += ((w[1] - c) / (w[0] - c)).arg();
        }
        let turns = total / (T::PI() + T::PI());
        Ok(turns.round().to_i64().unwrap_or(0))
    }
}

/// Loop from `base` to a small circle around `target` and back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lasso<T> {
    pub base: Complex<T>,
    pub target: Complex<T>,
    pub radius: T,
    /// Signed number of counterclockwise turns around `target`.
    pub turns: i32,
}

impl<T: Real> Lasso<T> {
    pub fn new(base: Complex<T>, target: Complex<T>, radius: T, turns: i32) -> Self {
        Lasso {
            base,
            target,
            radius,
            turns,
        }
    }

    fn validate(&self) -> Result<(), PathError> {
        if !(self.radius > T::zero() && self.radius.is_finite()) {
            return Err(PathError::InvalidRadius);
        }
        let distance = (self.base - self.target).norm();
        if self.radius >= distance {
            return Err(PathError::RadiusTooLarge {
                radius: to_f64(self.radius),
                distance: to_f64(distance),
            });
        }
        Ok(())
    }

    /// Straight approach stopping `radius` short of the target, `|turns|`
    /// circles, and the approach reversed.
    pub fn compile(&self) -> Result<Path<T>, PathError> {
        self.compile_avoiding(&[])
    }

    /// As [`Lasso::compile`], but the approach leaves every obstacle
    /// `(point, clearance)` it would pass within `clearance` of on its right,
    /// along a clockwise arc of that clearance.
    pub fn compile_avoiding(&self, obstacles: &[(Complex<T>, T)]) -> Result<Path<T>, PathError> {
        self.validate()?;
        let dir = (self.target - self.base) / (self.target - self.base).norm();
        let entry = self.target - dir * self.radius;
        let approach = approach_path(self.base, entry, obstacles)?;
        let angle = (entry - self.target).arg();
        let circle = Path::circle(self.target, self.radius, angle, self.turns);
        approach.concat(&circle)?.concat(&approach.reverse())
    }
}

/// Lasso radius `0.25 * min(|target - base|, distance to the nearest other point)`.
pub fn default_lasso_radius<T: Real>(base: Complex<T>, target: Complex<T>, others: &[Complex<T>]) -> T {
    let nearest = others
        .iter()
        .filter(|&&o| !close(o, target))
        .map(|&o| (o - target).norm())
        .fold((base - target).norm(), T::min);
    T::lit(0.25) * nearest
}

fn approach_path<T: Real>(
    from: Complex<T>,
    to: Complex<T>,
    obstacles: &[(Complex<T>, T)],
) -> Result<Path<T>, PathError> {
    let d = to - from;
    let len = d.norm();
    if len.is_zero() {
        return Ok(Path::stationary(from));
    }
    let u = d / len;
    // (position along the segment where the detour starts and ends, center, clearance)
    let mut detours: Vec<(T, T, Complex<T>, T)> = Vec::new();
    for &(c, r) in obstacles {
        let rel = (c - from) * u.conj();
        let (along, across) = (rel.re, rel.im);
        if across.abs() >= r {
            continue;
        }
        let half = (r * r - across * across).sqrt();
        let (s0, s1) = (along - half, along + half);
        if s0 <= T::zero() || s1 >= len {
            continue;
        }
        detours.push((s0, s1, c, r));
    }
    detours.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let two_pi = T::PI() + T::PI();
    let mut segments = Vec::new();
    let mut cursor = from;
    let mut pos = T::zero();
    for (s0, s1, c, r) in detours {
        if s0 < pos {
            continue;
        }
        let p0 = from + u * s0;
        let p1 = from + u * s1;
        segments.push(Segment::Line { from: cursor, to: p0 });
        let a0 = (p0 - c).arg();
        let a1 = (p1 - c).arg();
        let mut sweep = a0 - a1;
        while sweep <= T::zero() {
            sweep += two_pi;
        }
        while sweep > two_pi {
            sweep -= two_pi;
        }
        segments.push(Segment::Arc {
            center: c,
            radius: r,
            angle_from: a0,
            angle_to: a0 - sweep,
        });
        cursor = segments.last().expect("just pushed").end();
        pos = s1;
    }
    segments.push(Segment::Line { from: cursor, to });
    Path::new(segments)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum SegmentJson {
    Line {
        from: [f64; 2],
        to: [f64; 2],
    },
    Arc {
        center: [f64; 2],
        radius: f64,
        angle_from: f64,
        angle_to: f64,
    },
}

fn pair(z: Complex<f64>) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: [f64; 2]) -> Complex<f64> {
    Complex::new(p[0], p[1])
}

impl Path<f64> {
    /// Parses the JSON path literal: an array of
    /// `{"type":"line","from":[re,im],"to":[re,im]}` and
    /// `{"type":"arc","center":[re,im],"radius":r,"angle_from":t0,"angle_to":t1}`.
    pub fn from_json(s: &str) -> Result<Self, PathError> {
        let raw: Vec<SegmentJson> =
            serde_json::from_str(s).map_err(|e| PathError::InvalidJson(e.to_string()))?;
        let mut segments = Vec::with_capacity(raw.len());
        for seg in raw {
            segments.push(match seg {
                SegmentJson::Line { from, to } => Segment::Line {
                    from: unpair(from),
                    to: unpair(to),
                },
                SegmentJson::Arc {
                    center,
                    radius,
                    angle_from,
                    angle_to,
                } => {
                    if !(radius > 0.0 && radius.is_finite()) {
                        return Err(PathError::InvalidRadius);
                    }
                    Segment::Arc {
                        center: unpair(center),
                        radius,
                        angle_from,
                        angle_to,
                    }
                }
            });
        }
        Self::new(segments)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<SegmentJson> = self
            .segments
            .iter()
            .map(|s| match *s {
                Segment::Line { from, to } => SegmentJson::Line {
                    from: pair(from),
                    to: pair(to),
                },
                Segment::Arc {
                    center,
                    radius,
                    angle_from,
                    angle_to,
                } => SegmentJson::Arc {
                    center: pair(center),
                    radius,
                    angle_from,
                    angle_to,
                },
            })
            .collect();
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn near(a: C, b: C) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn lasso_around_one_is_the_classic_route() {
        let p = Lasso::new(c(0.0, 0.0), c(1.0, 0.0), 0.01, 1).compile().unwrap();
        let s = p.segments();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], Segment::Line { from: c(0.0, 0.0), to: c(0.99, 0.0) });
        match s[1] {
            Segment::Arc { center, radius, angle_from, angle_to } => {
                assert_eq!(center, c(1.0, 0.0));
                assert_eq!(radius, 0.01);
                assert!((angle_to - angle_from - 2.0 * PI).abs() < 1e-15);
            }
            _ => panic!("expected arc"),
        }
        assert_eq!(s[2], Segment::Line { from: c(0.99, 0.0), to: c(0.0, 0.0) });
        assert!(p.is_closed());
        assert_eq!(p.winding_number(c(1.0, 0.0)).unwrap(), 1);
    }

    #[test]
    fn null_lasso_goes_out_and_back() {
        let p = Lasso::new(c(0.0, 0.0), c(2.0, 0.0), 0.1, 0).compile().unwrap();
        assert_eq!(p.segments().len(), 2);
        assert!(p.is_closed());
        assert_eq!(p.winding_number(c(2.0, 0.0)).unwrap(), 0);
    }

    #[test]
    fn lasso_around_4i() {
        let p = Lasso::new(c(0.0, 0.0), c(0.0, 4.0), 0.4, 1).compile().unwrap();
        assert!(near(p.segments()[0].end(), c(0.0, 3.6)));
        assert_eq!(p.winding_number(c(0.0, 4.0)).unwrap(), 1);
        assert_eq!(p.winding_number(c(4.0, 0.0)).unwrap(), 0);
    }

    #[test]
    fn lasso_radius_checks() {
        assert!(matches!(
            Lasso::new(c(0.0, 0.0), c(1.0, 0.0), 1.0, 1).compile(),
            Err(PathError::RadiusTooLarge { .. })
        ));
        assert_eq!(
            Lasso::new(c(0.0, 0.0), c(1.0, 0.0), -0.1, 1).compile(),
            Err(PathError::InvalidRadius)
        );
    }

    #[test]
    fn concat_examples() {
        let l = Path::line(c(0.0, 0.0), c(1.0, 0.0));
        let back = l.concat(&l.reverse()).unwrap();
        assert!(back.is_closed());
        let a = Lasso::new(c(0.0, 0.0), c(2.0, 0.0), 0.5, 1).compile().unwrap();
        let b = Lasso::new(c(0.0, 0.0), c(-2.0, 0.0), 0.5, 1).compile().unwrap();
        let ab = a.concat(&b).unwrap();
        assert!(ab.is_closed());
        assert_eq!(ab.segments().len(), 6);
        assert_eq!(Path::empty().concat(&a).unwrap(), a);
        assert!(matches!(
            l.concat(&l),
            Err(PathError::EndpointMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn reverse_examples() {
        let l = Path::line(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(l.reverse().segments()[0], Segment::Line { from: c(1.0, 0.0), to: c(0.0, 0.0) });
        let circle = Path::circle(c(0.0, 0.0), 1.0, 0.0, 1);
        assert_eq!(circle.reverse().reverse(), circle);
        match circle.reverse().segments()[0] {
            Segment::Arc { angle_from, angle_to, .. } => {
                assert_eq!(angle_from, 2.0 * PI);
                assert_eq!(angle_to, 0.0);
            }
            _ => panic!(),
        }
        assert_eq!(circle.reverse().winding_number(c(0.0, 0.0)).unwrap(), -1);
    }

    #[test]
    fn power_examples() {
        let circle = Path::circle(c(0.0, 0.0), 1.0, 0.0, 1);
        assert_eq!(circle.power(1).unwrap(), circle);
        let twice = circle.power(2).unwrap();
        assert!((twice.length() - 4.0 * PI).abs() < 1e-12);
        assert_eq!(twice.winding_number(c(0.0, 0.0)).unwrap(), 2);
        assert_eq!(Path::line(c(0.0, 0.0), c(1.0, 0.0)).power(2), Err(PathError::NotClosed));
        assert_eq!(circle.power(0), Err(PathError::InvalidPower));
    }

    #[test]
    fn commutator_examples() {
        let a = Lasso::new(c(0.0, 0.0), c(2.0, 0.0), 0.5, 1).compile().unwrap();
        let b = Lasso::new(c(0.0, 0.0), c(-2.0, 0.0), 0.5, 1).compile().unwrap();
        let k = Path::commutator_path(&a, &b).unwrap();
        assert!(k.is_closed());
        assert_eq!(k.winding_number(c(2.0, 0.0)).unwrap(), 0);
        assert_eq!(k.winding_number(c(-2.0, 0.0)).unwrap(), 0);
        let aa = Path::commutator_path(&a, &a).unwrap();
        assert_eq!(aa.start(), Some(c(0.0, 0.0)));
        let null = Path::stationary(c(0.0, 0.0));
        assert_eq!(Path::commutator_path(&a, &null).unwrap().segments().len(), 2 * a.segments().len() + 2);
        let far = Lasso::new(c(1.0, 1.0), c(2.0, 0.0), 0.5, 1).compile().unwrap();
        assert_eq!(Path::commutator_path(&a, &far), Err(PathError::BaseMismatch));
    }

    #[test]
    fn sample_examples() {
        let l = Path::line(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(l.sample(0.5), vec![c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)]);
        let circle = Path::circle(c(0.0, 0.0), 1.0, 0.0, 1);
        let pts = circle.sample(2.0 * PI / 8.0);
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], pts[8]);
        let lasso = Lasso::new(c(0.0, 0.0), c(0.0, 4.0), 0.4, 2).compile().unwrap();
        let pts = lasso.sample(0.05);
        assert_eq!(pts.first(), pts.last());
        for w in pts.windows(2) {
            assert!((w[1] - w[0]).norm() <= 0.05 + 1e-12);
        }
    }

    #[test]
    fn detour_keeps_obstacle_on_the_right() {
        // Base 0, target 4, obstacle 2 on the approach.
        let lasso = Lasso::new(c(0.0, 0.0), c(4.0, 0.0), 0.5, 1);
        let p = lasso.compile_avoiding(&[(c(2.0, 0.0), 0.5)]).unwrap();
        assert!(p.is_closed());
        assert!(p.distance_to(c(2.0, 0.0)) >= 0.5 - 1e-12);
        assert_eq!(p.winding_number(c(4.0, 0.0)).unwrap(), 1);
        assert_eq!(p.winding_number(c(2.0, 0.0)).unwrap(), 0);
        // The detour passes above the obstacle.
        assert!(p.sample(0.01).iter().any(|z| (z - c(2.0, 0.5)).norm() < 1e-2));
    }

    #[test]
    fn json_round_trip() {
        let p = Lasso::new(c(0.0, 0.0), c(1.0, 0.0), 0.01, 1).compile().unwrap();
        assert_eq!(Path::from_json(&p.to_json()).unwrap(), p);
        let bad = r#"[{"type":"line","from":[0,0],"to":[1,0]},{"type":"line","from":[2,0],"to":[0,0]}]"#;
        assert!(matches!(Path::from_json(bad), Err(PathError::EndpointMismatch { .. })));
        assert!(matches!(Path::from_json("{}"), Err(PathError::InvalidJson(_))));
    }

    #[test]
    fn f32_winding() {
        let circle: Path<f32> = Path::circle(Complex::new(0.0, 0.0), 1.0, 0.0, -2);
        assert_eq!(circle.winding_number(Complex::new(0.1, 0.2)).unwrap(), -2);
    }
}
