//! Planar primitives on the unit table: points, discs and simple polygons.

use serde::{Deserialize, Serialize};

/// A point on the unit table. `+x` points right, `+y` points toward the viewer (front).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// True if the point lies in the closed unit square.
    pub fn in_unit_square(self) -> bool {
        (0.0..=1.0).contains(&self.x) && (0.0..=1.0).contains(&self.y)
    }
}

/// Distance from `p` to the closed segment `a`-`b`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (p.sub(a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(Point::new(a.x + t * ab.x, a.y + t * ab.y))
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    b.sub(a).cross(c.sub(a))
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

pub fn segment_segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Signed shoelace area; positive for counterclockwise vertex order.
pub fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
        .sum::<f64>()
        / 2.0
}

/// Even-odd ray casting. Points exactly on the boundary may land on either side;
/// callers that care use [`polygon_boundary_distance`] as well.
pub fn polygon_contains(vertices: &[Point], p: Point) -> bool {
    let n = vertices.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (vi, vj) = (vertices[i], vertices[j]);
        if (vi.y > p.y) != (vj.y > p.y) {
            let x_cross = (vj.x - vi.x) * (p.y - vi.y) / (vj.y - vi.y) + vi.x;
            if p.x < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

pub fn polygon_boundary_distance(vertices: &[Point], p: Point) -> f64 {
    edges(vertices)
        .map(|(a, b)| point_segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

fn edges(vertices: &[Point]) -> impl Iterator<Item = (Point, Point)> + '_ {
    let n = vertices.len();
    (0..n).map(move |i| (vertices[i], vertices[(i + 1) % n]))
}

/// The footprint of a plane on the table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// The whole table minus every geometric plane.
    Background,
    Disc { center: Point, radius: f64 },
    Polygon { vertices: Vec<Point> },
}

impl Region {
    pub fn area(&self) -> f64 {
        match self {
            Region::Background => 1.0,
            Region::Disc { radius, .. } => std::f64::consts::PI * radius * radius,
            Region::Polygon { vertices } => signed_area(vertices).abs(),
        }
    }

    /// Reference point used for plane-to-plane spatial relations.
    pub fn centroid(&self) -> Point {
        match self {
            Region::Background => Point::new(0.5, 0.5),
            Region::Disc { center, .. } => *center,
            Region::Polygon { vertices } => {
                let a = signed_area(vertices);
                let (mut cx, mut cy) = (0.0, 0.0);
                for (p, q) in edges(vertices) {
                    let w = p.cross(q);
                    cx += (p.x + q.x) * w;
                    cy += (p.y + q.y) * w;
                }
                Point::new(cx / (6.0 * a), cy / (6.0 * a))
            }
        }
    }

    /// Signed distance from `p` to the region boundary: negative inside, positive outside.
    /// The background region is treated as the unit square here.
    pub fn signed_distance(&self, p: Point) -> f64 {
        match self {
            Region::Background => {
                let inside = p.x.min(p.y).min(1.0 - p.x).min(1.0 - p.y);
                if inside >= 0.0 {
                    -inside
                } else {
                    let dx = (-p.x).max(p.x - 1.0).max(0.0);
                    let dy = (-p.y).max(p.y - 1.0).max(0.0);
                    dx.hypot(dy)
                }
            }
            Region::Disc { center, radius } => p.dist(*center) - radius,
            Region::Polygon { vertices } => {
                let d = polygon_boundary_distance(vertices, p);
                if polygon_contains(vertices, p) {
                    -d
                } else {
                    d
                }
            }
        }
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.signed_distance(p) <= 0.0
    }

    /// True if the whole disc `(center, radius)` lies inside the region.
    pub fn contains_disc(&self, center: Point, radius: f64) -> bool {
        self.signed_distance(center) <= -radius
    }

    /// Gap between the disc and the region; negative when they overlap.
    pub fn disc_gap(&self, center: Point, radius: f64) -> f64 {
        self.signed_distance(center) - radius
    }

    /// True if every point of the region lies in the unit square.
    pub fn within_unit_square(&self) -> bool {
        match self {
            Region::Background => true,
            Region::Disc { center, radius } => {
                Region::Background.signed_distance(*center) <= -radius
            }
            Region::Polygon { vertices } => vertices.iter().all(|v| v.in_unit_square()),
        }
    }

    /// True if the two geometric regions are at least `gap` apart (interiors disjoint when
    /// `gap == 0`). Background is never compared this way.
    pub fn separated_by(&self, other: &Region, gap: f64) -> bool {
        match (self, other) {
            (Region::Disc { center: c1, radius: r1 }, Region::Disc { center: c2, radius: r2 }) => {
                c1.dist(*c2) >= r1 + r2 + gap
            }
            (Region::Disc { center, radius }, poly @ Region::Polygon { .. })
            | (poly @ Region::Polygon { .. }, Region::Disc { center, radius }) => {
                poly.disc_gap(*center, *radius) >= gap
            }
            (Region::Polygon { vertices: a }, Region::Polygon { vertices: b }) => {
                if a.iter().any(|&v| polygon_contains(b, v))
                    || b.iter().any(|&v| polygon_contains(a, v))
                {
                    return false;
                }
                let min = edges(a)
                    .flat_map(|(p, q)| edges(b).map(move |(r, s)| segment_segment_distance(p, q, r, s)))
                    .fold(f64::INFINITY, f64::min);
                min >= gap
            }
            _ => false,
        }
    }
}
