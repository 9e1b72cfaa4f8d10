//! Minimal 2D geometry kernel: points, rays, circles, signed angles,
//! perpendiculars, bisectors and intersections.
//!
//! Everything works at the single geometric tolerance [`crate::tol::GEOM`]
//! with the ridge length normalized to 1. All functions are pure.

use crate::error::{Error, Result};
use crate::tol;

/// A point in the plane, in ridge-length units.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// A plain 2-vector.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

/// A ray: origin plus unit direction. Several operations treat a `Ray`
/// as the full line through its origin; those say so in their name.
#[derive(Copy, Clone, Debug)]
pub struct Ray {
    pub origin: Point2,
    dir: Vec2,
}

/// A circle with positive radius.
#[derive(Copy, Clone, Debug)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

/// Rotation sense for angle measurements.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Point2 {
        Point2 { x, y }
    }

    /// Point at polar angle `theta` and distance `radius` from `center`.
    pub fn polar(center: Point2, radius: f64, theta: f64) -> Point2 {
        Point2::new(center.x + radius * theta.cos(), center.y + radius * theta.sin())
    }

    pub fn to(self, other: Point2) -> Vec2 {
        Vec2::new(other.x - self.x, other.y - self.y)
    }

    /// Translate by a vector (points and vectors are distinct types, so
    /// this is not the `Add` trait).
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, v: Vec2) -> Point2 {
        Point2::new(self.x + v.x, self.y + v.y)
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Vec2 {
        Vec2 { x, y }
    }

    /// Unit vector at polar angle `theta`.
    pub fn from_angle(theta: f64) -> Vec2 {
        Vec2::new(theta.cos(), theta.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// 2D cross product (z component of the 3D cross product).
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn scale(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }

    pub fn normalized(self) -> Result<Vec2> {
        let n = self.norm();
        if n <= tol::GEOM {
            return Err(Error::DegeneratePoint("cannot normalize a near-zero vector"));
        }
        Ok(self.scale(1.0 / n))
    }

    /// Polar angle in (-pi, pi].
    pub fn angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a == -std::f64::consts::PI {
            std::f64::consts::PI
        } else {
            a
        }
    }

    /// Counterclockwise rotation by `theta`.
    pub fn rotated(self, theta: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// The perpendicular on the requested side (`Ccw` is a +90 degree turn).
    pub fn perp(self, orientation: Orientation) -> Vec2 {
        match orientation {
            Orientation::Ccw => Vec2::new(-self.y, self.x),
            Orientation::Cw => Vec2::new(self.y, -self.x),
        }
    }
}

impl Ray {
    /// A ray from `origin` in the direction of `dir`; `dir` need not be unit.
    pub fn new(origin: Point2, dir: Vec2) -> Result<Ray> {
        Ok(Ray { origin, dir: dir.normalized()? })
    }

    /// A ray from `origin` at polar angle `theta`.
    pub fn at_angle(origin: Point2, theta: f64) -> Ray {
        Ray { origin, dir: Vec2::from_angle(theta) }
    }

    /// A ray from `a` through `b`.
    pub fn through(a: Point2, b: Point2) -> Result<Ray> {
        Ray::new(a, a.to(b))
    }

    pub fn dir(&self) -> Vec2 {
        self.dir
    }

    /// Point at signed parameter `t` along the ray.
    pub fn point_at(&self, t: f64) -> Point2 {
        self.origin.add(self.dir.scale(t))
    }

    /// Signed parameter of the orthogonal projection of `p` onto the line.
    pub fn project(&self, p: Point2) -> f64 {
        self.origin.to(p).dot(self.dir)
    }
}

/// Normalize an angle into (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut a = a % two_pi;
    if a <= -std::f64::consts::PI {
        a += two_pi;
    } else if a > std::f64::consts::PI {
        a -= two_pi;
    }
    a
}

/// Euclidean distance.
pub fn distance(a: Point2, b: Point2) -> f64 {
    a.to(b).norm()
}

/// Rotate `p` around `center` by `theta` (counterclockwise).
pub fn rotate_about(p: Point2, center: Point2, theta: f64) -> Point2 {
    center.add(center.to(p).rotated(theta))
}

/// Rotation angle at `vertex` from the ray towards `from` to the ray towards
/// `to`, measured in the given orientation. Result lies in (-pi, pi].
pub fn signed_angle(vertex: Point2, from: Point2, to: Point2, orientation: Orientation) -> Result<f64> {
    let u = vertex.to(from);
    let v = vertex.to(to);
    if u.norm() <= tol::GEOM || v.norm() <= tol::GEOM {
        return Err(Error::DegeneratePoint("signed_angle leg shorter than tolerance"));
    }
    let ccw = wrap_angle(v.angle() - u.angle());
    Ok(match orientation {
        Orientation::Ccw => ccw,
        Orientation::Cw => wrap_angle(-ccw),
    })
}

/// Unsigned angle at `vertex` between the rays towards `a` and `b`, in [0, pi].
pub fn angle_at(vertex: Point2, a: Point2, b: Point2) -> Result<f64> {
    Ok(signed_angle(vertex, a, b, Orientation::Ccw)?.abs())
}

/// The ray bisecting the non-reflex angle `a`-`vertex`-`b`. For a zero
/// angle the bisector points towards `a`.
pub fn angle_bisector(vertex: Point2, a: Point2, b: Point2) -> Result<Ray> {
    let u = vertex.to(a).normalized().map_err(|_| Error::DegeneratePoint("bisector leg a"))?;
    let v = vertex.to(b).normalized().map_err(|_| Error::DegeneratePoint("bisector leg b"))?;
    let sum = Vec2::new(u.x + v.x, u.y + v.y);
    if sum.norm() <= tol::GEOM {
        // Opposite legs: the non-reflex angle is pi; either perpendicular
        // bisects it. Pick the +90 degree side of u deterministically.
        return Ray::new(vertex, u.perp(Orientation::Ccw));
    }
    Ray::new(vertex, sum)
}

/// Perpendicular to the line of `base` through `p`, oriented by `side`
/// (`Ccw` turns the base direction by +90 degrees).
pub fn perpendicular_through(p: Point2, base: &Ray, side: Orientation) -> Ray {
    Ray { origin: p, dir: base.dir().perp(side) }
}

/// Perpendicular bisector of segment `ab`, oriented +90 degrees from `a -> b`.
pub fn perpendicular_bisector(a: Point2, b: Point2) -> Result<Ray> {
    let dir = a.to(b);
    if dir.norm() <= tol::GEOM {
        return Err(Error::DegeneratePoint("perpendicular bisector of a zero segment"));
    }
    Ray::new(a.midpoint(b), dir.perp(Orientation::Ccw))
}

/// Intersection parameters `(t, u)` of the *lines* through `a` and `b`,
/// so that `a.point_at(t) == b.point_at(u)`. `None` for (near-)parallel lines.
pub fn line_line_params(a: &Ray, b: &Ray) -> Option<(f64, f64)> {
    let denom = a.dir().cross(b.dir());
    if denom.abs() <= tol::GEOM {
        return None;
    }
    let w = a.origin.to(b.origin);
    let t = w.cross(b.dir()) / denom;
    let u = w.cross(a.dir()) / denom;
    Some((t, u))
}

/// Intersection point of the *lines* through `a` and `b`.
pub fn line_line_intersection(a: &Ray, b: &Ray) -> Option<Point2> {
    line_line_params(a, b).map(|(t, _)| a.point_at(t))
}

/// Intersections of the *line* through `r` with a circle, ordered by the
/// line parameter. A discriminant within tolerance of zero yields one
/// (tangent) point. Results are snapped radially onto the circle: when
/// the line origin is far away the cancellation in the quadratic can
/// push a point off the circle by more than the geometric tolerance.
pub fn line_circle_intersections(r: &Ray, c: &Circle) -> Vec<Point2> {
    // |o + t d - m|^2 = R^2 with unit d.
    let oc = c.center.to(r.origin);
    let b = oc.dot(r.dir());
    let disc = b * b - (oc.dot(oc) - c.radius * c.radius);
    let snap = |p: Point2| match c.center.to(p).normalized() {
        Ok(u) => c.center.add(u.scale(c.radius)),
        Err(_) => p,
    };
    // Tolerance on the point scale, not the squared scale.
    if disc < -tol::GEOM * c.radius {
        return Vec::new();
    }
    if disc <= tol::GEOM * c.radius {
        return vec![snap(r.point_at(-b))];
    }
    let s = disc.sqrt();
    vec![snap(r.point_at(-b - s)), snap(r.point_at(-b + s))]
}

/// Intersections of the ray `r` with a circle (nonnegative parameter only),
/// ordered by the ray parameter.
pub fn ray_circle_intersections(r: &Ray, c: &Circle) -> Vec<Point2> {
    line_circle_intersections(r, c)
        .into_iter()
        .filter(|p| r.project(*p) >= -tol::GEOM)
        .collect()
}

/// Intersections of segment `ab` with a circle, ordered from `a` to `b`.
pub fn segment_circle_intersection(a: Point2, b: Point2, c: &Circle) -> Result<Vec<Point2>> {
    let ray = Ray::through(a, b)?;
    let len = distance(a, b);
    Ok(line_circle_intersections(&ray, c)
        .into_iter()
        .filter(|p| {
            let t = ray.project(*p);
            (-tol::GEOM..=len + tol::GEOM).contains(&t)
        })
        .collect())
}

/// Distance from `p` to the *line* through `line`.
pub fn distance_to_line(p: Point2, line: &Ray) -> f64 {
    line.origin.to(p).cross(line.dir()).abs()
}

/// First intersection of ray `r` with segment `ab`, by ray parameter.
pub fn ray_segment_intersection(r: &Ray, a: Point2, b: Point2) -> Option<Point2> {
    let seg = Ray::through(a, b).ok()?;
    let len = distance(a, b);
    let (t, u) = line_line_params(r, &seg)?;
    if t >= -tol::GEOM && (-tol::GEOM..=len + tol::GEOM).contains(&u) {
        Some(r.point_at(t))
    } else {
        None
    }
}

/// Intersection of the *line* through `line` with segment `ab`.
pub fn line_segment_intersection(line: &Ray, a: Point2, b: Point2) -> Option<Point2> {
    let seg = Ray::through(a, b).ok()?;
    let len = distance(a, b);
    let (t, u) = line_line_params(line, &seg)?;
    if (-tol::GEOM..=len + tol::GEOM).contains(&u) {
        Some(line.point_at(t))
    } else {
        None
    }
}

/// Intersection of the *line* through `line` with the ray `r`.
pub fn line_ray_intersection(line: &Ray, r: &Ray) -> Option<Point2> {
    let (_, u) = line_line_params(line, r)?;
    if u >= -tol::GEOM {
        Some(r.point_at(u))
    } else {
        None
    }
}

/// Intersection of two rays (both parameters nonnegative).
pub fn ray_ray_intersection(a: &Ray, b: &Ray) -> Option<Point2> {
    let (t, u) = line_line_params(a, b)?;
    if t >= -tol::GEOM && u >= -tol::GEOM {
        Some(a.point_at(t))
    } else {
        None
    }
}
