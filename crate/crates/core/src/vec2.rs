//! Minimal planar vector helpers.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub const fn v2(x: f64, y: f64) -> Vec2 {
    Vec2 { x, y }
}

impl Vec2 {
    pub const ZERO: Vec2 = v2(0.0, 0.0);

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn scale(self, s: f64) -> Vec2 {
        v2(self.x * s, self.y * s)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        v2(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        v2(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        v2(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        v2(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        self.scale(s)
    }
}

/// 2x2 matrix in column-major order: columns `a` and `b`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: Vec2,
    pub b: Vec2,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: v2(1.0, 0.0),
        b: v2(0.0, 1.0),
    };

    pub fn from_columns(a: Vec2, b: Vec2) -> Mat2 {
        Mat2 { a, b }
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        v2(
            self.a.x * v.x + self.b.x * v.y,
            self.a.y * v.x + self.b.y * v.y,
        )
    }

    pub fn det(&self) -> f64 {
        self.a.x * self.b.y - self.b.x * self.a.y
    }

    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        Mat2 {
            a: v2(self.b.y / d, -self.a.y / d),
            b: v2(-self.b.x / d, self.a.x / d),
        }
    }
}

/// Quintic smoothstep on [0, 1]: C^2 at both ends, monotone increasing.
pub fn smoothstep5(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * (t * (t * 6.0 - 15.0) + 10.0)
    }
}

/// Distance from point `p` to the segment [a, b].
pub fn point_segment_dist(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    p.dist(a + ab.scale(t))
}
