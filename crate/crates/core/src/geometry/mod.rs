//! Domains Ω: volume, covariance function g_Ω(y) = |Ω ∩ (Ω + y)|, perimeter
//! and directional variations.

mod polygon;
mod predicates;

pub use predicates::{orient2d, P2};

use crate::error::{Error, Result};
use crate::quad::{integrate, Tolerance};
use crate::special::{ball_volume, gamma, sphere_area};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Config-facing description of a shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSpec {
    Interval {
        a: f64,
        b: f64,
    },
    Box {
        dim: usize,
        lengths: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        origin: Option<Vec<f64>>,
    },
    Ball {
        dim: usize,
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Union {
        members: Vec<ShapeSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        min_gap: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeKind {
    Interval { a: f64, b: f64 },
    Box { origin: Vec<f64>, lengths: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Polygon { vertices: Vec<P2>, triangles: Vec<[P2; 3]> },
    Union { members: Vec<Shape> },
}

/// A validated domain in ℝ^d, d ∈ {1, 2, 3}.
#[derive(Debug, Clone, PartialEq)]
pub struct Shape {
    dim: usize,
    kind: ShapeKind,
}

pub const DEFAULT_MIN_GAP: f64 = 1e-9;

fn check_dim(dim: usize) -> Result<()> {
    if (1..=3).contains(&dim) {
        Ok(())
    } else {
        Err(Error::InvalidShape(format!("dimension {dim} not in 1..=3")))
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Measure of the intersection of two balls with radii `r1`, `r2` whose
/// centres are `dist` apart.
pub fn ball_intersection(dim: usize, r1: f64, r2: f64, dist: f64) -> f64 {
    let d = dist.abs();
    if d >= r1 + r2 {
        return 0.0;
    }
    let small = r1.min(r2);
    if d <= (r1 - r2).abs() {
        return ball_volume(dim) * small.powi(dim as i32);
    }
    match dim {
        1 => (r1 + r2 - d).min(2.0 * small),
        2 => {
            if r1 == r2 {
                let r = r1;
                return 2.0 * r * r * (d / (2.0 * r)).acos() - 0.5 * d * (4.0 * r * r - d * d).max(0.0).sqrt();
            }
            let c1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0);
            let c2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0);
            let k = ((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)).max(0.0);
            r1 * r1 * c1.acos() + r2 * r2 * c2.acos() - 0.5 * k.sqrt()
        }
        _ => {
            if r1 == r2 {
                return PI / 12.0 * (4.0 * r1 + d) * (2.0 * r1 - d).powi(2);
            }
            PI * (r1 + r2 - d).powi(2) * (d * d + 2.0 * d * (r1 + r2) - 3.0 * (r1 - r2).powi(2)) / (12.0 * d)
        }
    }
}

/// `|B_r| − |B_r ∩ (B_r + y)|` for `‖y‖ = dist`, without cancellation.
pub fn ball_deficit(dim: usize, r: f64, dist: f64) -> f64 {
    let d = dist.abs();
    let full = ball_volume(dim) * r.powi(dim as i32);
    if d >= 2.0 * r {
        return full;
    }
    match dim {
        1 => d,
        2 => 2.0 * r * r * (d / (2.0 * r)).asin() + 0.5 * d * (4.0 * r * r - d * d).sqrt(),
        _ => PI * d * (12.0 * r * r - d * d) / 12.0,
    }
}

impl Shape {
    pub fn interval(a: f64, b: f64) -> Result<Shape> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidShape(format!("interval needs a < b, got ({a}, {b})")));
        }
        Ok(Shape { dim: 1, kind: ShapeKind::Interval { a, b } })
    }

    /// Axis-aligned box with lower corner at the origin.
    pub fn rect(lengths: &[f64]) -> Result<Shape> {
        Shape::box_at(&vec![0.0; lengths.len()], lengths)
    }

    pub fn box_at(origin: &[f64], lengths: &[f64]) -> Result<Shape> {
        let dim = lengths.len();
        check_dim(dim)?;
        if origin.len() != dim {
            return Err(Error::InvalidShape("box origin and lengths differ in dimension".into()));
        }
        if lengths.iter().any(|l| !(l.is_finite() && *l > 0.0)) || origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidShape("box lengths must be positive and finite".into()));
        }
        if dim == 1 {
            return Shape::interval(origin[0], origin[0] + lengths[0]);
        }
        Ok(Shape { dim, kind: ShapeKind::Box { origin: origin.to_vec(), lengths: lengths.to_vec() } })
    }

    pub fn ball(center: &[f64], radius: f64) -> Result<Shape> {
        let dim = center.len();
        check_dim(dim)?;
        if !(radius.is_finite() && radius > 0.0) || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidShape(format!("ball radius must be positive, got {radius}")));
        }
        if dim == 1 {
            return Shape::interval(center[0] - radius, center[0] + radius);
        }
        Ok(Shape { dim, kind: ShapeKind::Ball { center: center.to_vec(), radius } })
    }

    pub fn polygon(vertices: &[P2]) -> Result<Shape> {
        polygon::validate(vertices)?;
        let triangles = polygon::triangulate(vertices);
        Ok(Shape { dim: 2, kind: ShapeKind::Polygon { vertices: vertices.to_vec(), triangles } })
    }

    /// Disjoint union; members must be at least `min_gap` apart.
    pub fn union(members: Vec<Shape>, min_gap: f64) -> Result<Shape> {
        if members.is_empty() {
            return Err(Error::InvalidShape("union needs at least one member".into()));
        }
        let dim = members[0].dim;
        let mut flat = Vec::new();
        for m in members {
            if m.dim != dim {
                return Err(Error::InvalidShape("union members differ in dimension".into()));
            }
            match m.kind {
                ShapeKind::Union { members } => flat.extend(members),
                _ => flat.push(m),
            }
        }
        for i in 0..flat.len() {
            for j in i + 1..flat.len() {
                let gap = member_distance(&flat[i], &flat[j])?;
                if gap < min_gap {
                    return Err(Error::InvalidShape(format!(
                        "union members {i} and {j} are {gap:.3e} apart, need at least {min_gap:.3e}"
                    )));
                }
            }
        }
        if flat.len() == 1 {
            return Ok(flat.pop().unwrap());
        }
        Ok(Shape { dim, kind: ShapeKind::Union { members: flat } })
    }

    pub fn from_spec(spec: &ShapeSpec) -> Result<Shape> {
        match spec {
            ShapeSpec::Interval { a, b } => Shape::interval(*a, *b),
            ShapeSpec::Box { dim, lengths, origin } => {
                if lengths.len() != *dim {
                    return Err(Error::InvalidShape(format!("box has dim {dim} but {} lengths", lengths.len())));
                }
                Shape::box_at(origin.as_deref().unwrap_or(&vec![0.0; *dim]), lengths)
            }
            ShapeSpec::Ball { dim, radius, center } => {
                let c = center.clone().unwrap_or_else(|| vec![0.0; *dim]);
                if c.len() != *dim {
                    return Err(Error::InvalidShape(format!("ball has dim {dim} but centre of length {}", c.len())));
                }
                Shape::ball(&c, *radius)
            }
            ShapeSpec::Polygon { vertices } => Shape::polygon(vertices),
            ShapeSpec::Union { members, min_gap } => {
                let ms = members.iter().map(Shape::from_spec).collect::<Result<Vec<_>>>()?;
                Shape::union(ms, min_gap.unwrap_or(DEFAULT_MIN_GAP))
            }
        }
    }

    pub fn spec(&self) -> ShapeSpec {
        match &self.kind {
            ShapeKind::Interval { a, b } => ShapeSpec::Interval { a: *a, b: *b },
            ShapeKind::Box { origin, lengths } => {
                ShapeSpec::Box { dim: self.dim, lengths: lengths.clone(), origin: Some(origin.clone()) }
            }
            ShapeKind::Ball { center, radius } => {
                ShapeSpec::Ball { dim: self.dim, radius: *radius, center: Some(center.clone()) }
            }
            ShapeKind::Polygon { vertices, .. } => ShapeSpec::Polygon { vertices: vertices.clone() },
            ShapeKind::Union { members } => {
                ShapeSpec::Union { members: members.iter().map(Shape::spec).collect(), min_gap: None }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &ShapeKind {
        &self.kind
    }

    /// Translate by `shift`.
    pub fn translated(&self, shift: &[f64]) -> Shape {
        let kind = match &self.kind {
            ShapeKind::Interval { a, b } => ShapeKind::Interval { a: a + shift[0], b: b + shift[0] },
            ShapeKind::Box { origin, lengths } => ShapeKind::Box {
                origin: origin.iter().zip(shift).map(|(o, s)| o + s).collect(),
                lengths: lengths.clone(),
            },
            ShapeKind::Ball { center, radius } => ShapeKind::Ball {
                center: center.iter().zip(shift).map(|(o, s)| o + s).collect(),
                radius: *radius,
            },
            ShapeKind::Polygon { vertices, triangles } => {
                let mv = |p: &P2| [p[0] + shift[0], p[1] + shift[1]];
                ShapeKind::Polygon {
                    vertices: vertices.iter().map(mv).collect(),
                    triangles: triangles.iter().map(|t| [mv(&t[0]), mv(&t[1]), mv(&t[2])]).collect(),
                }
            }
            ShapeKind::Union { members } => {
                ShapeKind::Union { members: members.iter().map(|m| m.translated(shift)).collect() }
            }
        };
        Shape { dim: self.dim, kind }
    }

    /// Dilate about the origin by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Shape {
        let kind = match &self.kind {
            ShapeKind::Interval { a, b } => ShapeKind::Interval { a: a * lambda, b: b * lambda },
            ShapeKind::Box { origin, lengths } => ShapeKind::Box {
                origin: origin.iter().map(|o| o * lambda).collect(),
                lengths: lengths.iter().map(|l| l * lambda).collect(),
            },
            ShapeKind::Ball { center, radius } => ShapeKind::Ball {
                center: center.iter().map(|o| o * lambda).collect(),
                radius: radius * lambda,
            },
            ShapeKind::Polygon { vertices, triangles } => {
                let mv = |p: &P2| [p[0] * lambda, p[1] * lambda];
                ShapeKind::Polygon {
                    vertices: vertices.iter().map(mv).collect(),
                    triangles: triangles.iter().map(|t| [mv(&t[0]), mv(&t[1]), mv(&t[2])]).collect(),
                }
            }
            ShapeKind::Union { members } => {
                ShapeKind::Union { members: members.iter().map(|m| m.scaled(lambda)).collect() }
            }
        };
        Shape { dim: self.dim, kind }
    }

    pub fn volume(&self) -> f64 {
        match &self.kind {
            ShapeKind::Interval { a, b } => b - a,
            ShapeKind::Box { lengths, .. } => lengths.iter().product(),
            ShapeKind::Ball { radius, .. } => ball_volume(self.dim) * radius.powi(self.dim as i32),
            ShapeKind::Polygon { vertices, .. } => polygon::signed_area(vertices),
            ShapeKind::Union { members } => members.iter().map(Shape::volume).sum(),
        }
    }

    pub fn perimeter(&self) -> f64 {
        match &self.kind {
            ShapeKind::Interval { .. } => 2.0,
            ShapeKind::Box { lengths, .. } => {
                let total: f64 = lengths.iter().product();
                2.0 * lengths.iter().map(|l| total / l).sum::<f64>()
            }
            ShapeKind::Ball { radius, .. } => sphere_area(self.dim) * radius.powi(self.dim as i32 - 1),
            ShapeKind::Polygon { vertices, .. } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| {
                        let (p, q) = (vertices[i], vertices[(i + 1) % n]);
                        (q[0] - p[0]).hypot(q[1] - p[1])
                    })
                    .sum()
            }
            ShapeKind::Union { members } => members.iter().map(Shape::perimeter).sum(),
        }
    }

    /// `2|Ω|/Per(Ω)`.
    pub fn inradius_scale(&self) -> f64 {
        2.0 * self.volume() / self.perimeter()
    }

    fn support_points(&self, out: &mut Vec<(Vec<f64>, f64)>) {
        match &self.kind {
            ShapeKind::Interval { a, b } => {
                out.push((vec![*a], 0.0));
                out.push((vec![*b], 0.0));
            }
            ShapeKind::Box { origin, lengths } => {
                for mask in 0..(1usize << self.dim) {
                    let p = (0..self.dim)
                        .map(|i| origin[i] + if mask >> i & 1 == 1 { lengths[i] } else { 0.0 })
                        .collect();
                    out.push((p, 0.0));
                }
            }
            ShapeKind::Ball { center, radius } => out.push((center.clone(), *radius)),
            ShapeKind::Polygon { vertices, .. } => out.extend(vertices.iter().map(|v| (v.to_vec(), 0.0))),
            ShapeKind::Union { members } => members.iter().for_each(|m| m.support_points(out)),
        }
    }

    /// Largest distance between two points of Ω; `g_Ω` vanishes beyond it.
    pub fn diameter(&self) -> f64 {
        let mut pts = Vec::new();
        self.support_points(&mut pts);
        let mut best: f64 = 0.0;
        for i in 0..pts.len() {
            for j in i..pts.len() {
                let d: f64 = pts[i].0.iter().zip(&pts[j].0).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
                best = best.max(d + pts[i].1 + pts[j].1);
            }
        }
        best
    }

    /// Axis-aligned bounding box `(lower, upper)`.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut pts = Vec::new();
        self.support_points(&mut pts);
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for (p, r) in &pts {
            for i in 0..self.dim {
                lo[i] = lo[i].min(p[i] - r);
                hi[i] = hi[i].max(p[i] + r);
            }
        }
        (lo, hi)
    }

    /// Open-set membership.
    pub fn contains(&self, x: &[f64]) -> bool {
        match &self.kind {
            ShapeKind::Interval { a, b } => x[0] > *a && x[0] < *b,
            ShapeKind::Box { origin, lengths } => {
                (0..self.dim).all(|i| x[i] > origin[i] && x[i] < origin[i] + lengths[i])
            }
            ShapeKind::Ball { center, radius } => {
                center.iter().zip(x).map(|(c, y)| (c - y) * (c - y)).sum::<f64>() < radius * radius
            }
            ShapeKind::Polygon { vertices, .. } => polygon::contains(vertices, [x[0], x[1]]),
            ShapeKind::Union { members } => members.iter().any(|m| m.contains(x)),
        }
    }

    fn triangles(&self) -> Option<Vec<[P2; 3]>> {
        match &self.kind {
            ShapeKind::Polygon { triangles, .. } => Some(triangles.clone()),
            ShapeKind::Box { origin, lengths } if self.dim == 2 => {
                let (x0, y0) = (origin[0], origin[1]);
                let (x1, y1) = (x0 + lengths[0], y0 + lengths[1]);
                Some(vec![[[x0, y0], [x1, y0], [x1, y1]], [[x0, y0], [x1, y1], [x0, y1]]])
            }
            _ => None,
        }
    }

    /// The covariance function `g_Ω(y) = |Ω ∩ (Ω + y)|`.
    pub fn covariance(&self, y: &[f64]) -> f64 {
        match &self.kind {
            ShapeKind::Union { members } => {
                let mut s = 0.0;
                for a in members {
                    for b in members {
                        s += overlap(a, b, y);
                    }
                }
                s
            }
            _ => overlap(self, self, y),
        }
    }

    /// `g_Ω(0) − g_Ω(y)`, evaluated without cancellation for intervals,
    /// boxes and balls.
    pub fn deficit(&self, y: &[f64]) -> f64 {
        match &self.kind {
            ShapeKind::Interval { a, b } => y[0].abs().min(b - a),
            ShapeKind::Box { lengths, .. } => {
                // Π L − Π (L − a) accumulated one factor at a time
                let (mut full, mut kept, mut diff) = (1.0, 1.0, 0.0);
                for (l, yi) in lengths.iter().zip(y) {
                    let a = yi.abs().min(*l);
                    diff = diff * l + kept * a;
                    full *= l;
                    kept *= l - a;
                }
                diff.min(full)
            }
            ShapeKind::Ball { radius, .. } => ball_deficit(self.dim, *radius, y.iter().map(|v| v * v).sum::<f64>().sqrt()),
            _ => (self.volume() - self.covariance(y)).max(0.0),
        }
    }

    pub fn covariance_fn(&self) -> CovarianceFn {
        CovarianceFn { shape: self.clone(), lipschitz_bound: 0.5 * self.perimeter() }
    }

    /// `V_u(Ω)`, the variation of the indicator in the unit direction `u`.
    pub fn directional_variation(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim {
            return Err(Error::InvalidArgument("direction has wrong dimension".into()));
        }
        if (norm(u) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("direction must be a unit vector, norm {}", norm(u))));
        }
        Ok(match &self.kind {
            ShapeKind::Interval { .. } => 2.0,
            ShapeKind::Box { lengths, .. } => {
                let total: f64 = lengths.iter().product();
                2.0 * (0..self.dim).map(|i| u[i].abs() * total / lengths[i]).sum::<f64>()
            }
            ShapeKind::Ball { radius, .. } => {
                2.0 * ball_volume(self.dim - 1) * radius.powi(self.dim as i32 - 1)
            }
            ShapeKind::Polygon { vertices, .. } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| {
                        let (p, q) = (vertices[i], vertices[(i + 1) % n]);
                        // |⟨n_e, u⟩|·len(e) = |cross(e, u)|
                        ((q[0] - p[0]) * u[1] - (q[1] - p[1]) * u[0]).abs()
                    })
                    .sum()
            }
            ShapeKind::Union { members } => {
                let mut s = 0.0;
                for m in members {
                    s += m.directional_variation(u)?;
                }
                s
            }
        })
    }

    /// Numerical `2·lim (g(0) − g(ru))/r` on `r_k = 0.1·diam·2^{−k}`, k ≤ 20,
    /// with two-point Richardson extrapolation.
    pub fn directional_variation_numeric(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim || (norm(u) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument("direction must be a unit vector of matching dimension".into()));
        }
        let r0 = 0.1 * self.diameter();
        let slope = |k: i32| {
            let r = r0 * 2f64.powi(-k);
            let y: Vec<f64> = u.iter().map(|c| c * r).collect();
            self.deficit(&y) / r
        };
        let (s19, s20) = (slope(19), slope(20));
        Ok(2.0 * (2.0 * s20 - s19))
    }

    /// `Per(Ω)` recovered from the covariance slopes by angular quadrature.
    pub fn perimeter_via_covariance(&self) -> Result<f64> {
        match self.dim {
            1 => Ok(0.5 * (self.directional_variation_numeric(&[1.0])? + self.directional_variation_numeric(&[-1.0])?)),
            2 => {
                let prefactor = gamma(1.5) / PI.sqrt();
                let pts: Vec<f64> = (0..=16).map(|k| PI * k as f64 / 16.0).collect();
                let e = integrate(
                    |th: f64| {
                        let u = [th.cos(), th.sin()];
                        self.directional_variation_numeric(&u).unwrap_or(f64::NAN) * 0.5
                    },
                    &pts,
                    Tolerance::new(1e-12, 1e-9),
                );
                Ok(prefactor * 2.0 * e.value)
            }
            d => Err(Error::Unsupported(format!("perimeter via covariance in dimension {d}"))),
        }
    }

    /// `∫_{S^{d−1}} (g(0) − g(su)) σ(du)` for d ∈ {1, 2}, and balls in d = 3.
    pub fn spherical_deficit(&self, s: f64) -> Result<f64> {
        let g0 = self.volume();
        if let ShapeKind::Ball { radius, .. } = &self.kind {
            return Ok(sphere_area(self.dim) * ball_deficit(self.dim, *radius, s));
        }
        match self.dim {
            1 => Ok(2.0 * self.deficit(&[s])),
            2 => {
                let mut pts: Vec<f64> = (0..=4).map(|k| PI * k as f64 / 4.0).collect();
                if let ShapeKind::Box { lengths, .. } = &self.kind {
                    for (i, l) in lengths.iter().enumerate() {
                        if *l < s {
                            let a = (l / s).acos();
                            let (c1, c2) = if i == 0 { (a, PI - a) } else { (0.5 * PI - a, 0.5 * PI + a) };
                            pts.push(c1);
                            pts.push(c2);
                        }
                    }
                    pts.sort_by(f64::total_cmp);
                }
                let e = integrate(
                    |th: f64| self.deficit(&[s * th.cos(), s * th.sin()]),
                    &pts,
                    Tolerance::new(1e-14 * g0, 1e-11),
                );
                Ok(2.0 * e.value)
            }
            d => Err(Error::Unsupported(format!("spherical deficit for this shape in dimension {d}"))),
        }
    }
}

/// `|a ∩ (b + y)|` for supported member pairs.
fn overlap(a: &Shape, b: &Shape, y: &[f64]) -> f64 {
    match (&a.kind, &b.kind) {
        (ShapeKind::Interval { a: a1, b: b1 }, ShapeKind::Interval { a: a2, b: b2 }) => {
            (b1.min(b2 + y[0]) - a1.max(a2 + y[0])).max(0.0)
        }
        (ShapeKind::Box { origin: o1, lengths: l1 }, ShapeKind::Box { origin: o2, lengths: l2 }) => {
            let mut p = 1.0;
            for i in 0..a.dim {
                let lo = o1[i].max(o2[i] + y[i]);
                let hi = (o1[i] + l1[i]).min(o2[i] + l2[i] + y[i]);
                p *= (hi - lo).max(0.0);
                if p == 0.0 {
                    break;
                }
            }
            p
        }
        (ShapeKind::Ball { center: c1, radius: r1 }, ShapeKind::Ball { center: c2, radius: r2 }) => {
            let d = (0..a.dim).map(|i| (c1[i] - c2[i] - y[i]).powi(2)).sum::<f64>().sqrt();
            ball_intersection(a.dim, *r1, *r2, d)
        }
        _ => {
            let (ta, tb) = (a.triangles().expect("checked pair"), b.triangles().expect("checked pair"));
            let mut s = 0.0;
            for t in &ta {
                let (alo, ahi) = tri_bounds(t);
                for u in &tb {
                    let v = [[u[0][0] + y[0], u[0][1] + y[1]], [u[1][0] + y[0], u[1][1] + y[1]], [u[2][0] + y[0], u[2][1] + y[1]]];
                    let (blo, bhi) = tri_bounds(&v);
                    if blo[0] >= ahi[0] || blo[1] >= ahi[1] || alo[0] >= bhi[0] || alo[1] >= bhi[1] {
                        continue;
                    }
                    s += polygon::triangle_overlap(t, &v);
                }
            }
            s
        }
    }
}

fn tri_bounds(t: &[P2; 3]) -> (P2, P2) {
    let lo = [t[0][0].min(t[1][0]).min(t[2][0]), t[0][1].min(t[1][1]).min(t[2][1])];
    let hi = [t[0][0].max(t[1][0]).max(t[2][0]), t[0][1].max(t[1][1]).max(t[2][1])];
    (lo, hi)
}

fn member_distance(a: &Shape, b: &Shape) -> Result<f64> {
    match (&a.kind, &b.kind) {
        (ShapeKind::Interval { a: a1, b: b1 }, ShapeKind::Interval { a: a2, b: b2 }) => {
            Ok((a2 - b1).max(a1 - b2).max(0.0))
        }
        (ShapeKind::Box { origin: o1, lengths: l1 }, ShapeKind::Box { origin: o2, lengths: l2 }) => {
            let mut s: f64 = 0.0;
            let mut separated = false;
            for i in 0..a.dim {
                let gap = (o2[i] - o1[i] - l1[i]).max(o1[i] - o2[i] - l2[i]);
                if gap > 0.0 {
                    s += gap * gap;
                }
                separated |= gap > 0.0;
            }
            Ok(if separated { s.sqrt() } else { 0.0 })
        }
        (ShapeKind::Ball { center: c1, radius: r1 }, ShapeKind::Ball { center: c2, radius: r2 }) => {
            let d = c1.iter().zip(c2).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
            Ok((d - r1 - r2).max(0.0))
        }
        _ => {
            let pa = polygon_vertices(a);
            let pb = polygon_vertices(b);
            match (pa, pb) {
                (Some(u), Some(v)) => Ok(polygon::distance(&u, &v)),
                _ => Err(Error::Unsupported(
                    "union members must all be intervals, all boxes, all balls, or 2D polygons/boxes".into(),
                )),
            }
        }
    }
}

fn polygon_vertices(s: &Shape) -> Option<Vec<P2>> {
    match &s.kind {
        ShapeKind::Polygon { vertices, .. } => Some(vertices.clone()),
        ShapeKind::Box { origin, lengths } if s.dim == 2 => {
            let (x0, y0) = (origin[0], origin[1]);
            let (x1, y1) = (x0 + lengths[0], y0 + lengths[1]);
            Some(vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
        }
        _ => None,
    }
}

/// Evaluator for `g_Ω` carrying its Lipschitz constant `Per(Ω)/2`.
#[derive(Debug, Clone)]
pub struct CovarianceFn {
    pub shape: Shape,
    pub lipschitz_bound: f64,
}

impl CovarianceFn {
    pub fn eval(&self, y: &[f64]) -> f64 {
        self.shape.covariance(y)
    }
}

pub fn volume(shape: &Shape) -> f64 {
    shape.volume()
}

pub fn covariance(shape: &Shape, y: &[f64]) -> f64 {
    shape.covariance(y)
}

pub fn perimeter(shape: &Shape) -> f64 {
    shape.perimeter()
}

pub fn directional_variation(shape: &Shape, u: &[f64]) -> Result<f64> {
    shape.directional_variation(u)
}

pub fn perimeter_via_covariance(shape: &Shape) -> Result<f64> {
    shape.perimeter_via_covariance()
}
