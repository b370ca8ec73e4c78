//! Linear Anosov diffeomorphisms of the torus induced by hyperbolic
//! matrices in SL(2,Z), with the eigen-structure used by the DA surgery
//! and the quotient sphere map.

use crate::error::{Error, Result};
use crate::surface::{sphere_project, torus_reduce, SpherePoint, TorusPoint};
use crate::vec2::{v2, Mat2, Vec2};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A hyperbolic toral automorphism with precomputed eigen data.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AnosovMap {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub lambda_u: f64,
    pub lambda_s: f64,
    pub v_u: Vec2,
    pub v_s: Vec2,
}

impl AnosovMap {
    /// The default matrix (2 1; 1 1).
    pub fn cat_map() -> AnosovMap {
        anosov_make(2, 1, 1, 1).expect("cat map is hyperbolic")
    }
}

fn unit_eigenvector(a: f64, b: f64, c: f64, d: f64, lambda: f64) -> Vec2 {
    // Solve (A - lambda I)v = 0; pick the better-conditioned row.
    let r1 = v2(a - lambda, b);
    let r2 = v2(c, d - lambda);
    let raw = if r1.norm() >= r2.norm() {
        v2(-r1.y, r1.x)
    } else {
        v2(-r2.y, r2.x)
    };
    let n = raw.norm();
    let mut e = raw.scale(1.0 / n);
    // Normalize sign: positive first nonzero coordinate.
    if e.x < 0.0 || (e.x == 0.0 && e.y < 0.0) {
        e = -e;
    }
    e
}

/// Build an Anosov map from integer matrix entries.
///
/// Requires det = 1 and |trace| > 2. Eigen data is computed in closed
/// form from the characteristic polynomial.
pub fn anosov_make(a: i64, b: i64, c: i64, d: i64) -> Result<AnosovMap> {
    let det = a * d - b * c;
    if det != 1 {
        return Err(Error::NotSl2z { det });
    }
    let trace = a + d;
    if trace.abs() <= 2 {
        return Err(Error::NotHyperbolic { trace });
    }
    let t = trace as f64;
    let disc = (t * t - 4.0).sqrt();
    // Roots of lambda^2 - t*lambda + 1 = 0.
    let (l1, l2) = ((t + disc) / 2.0, (t - disc) / 2.0);
    let (lambda_u, lambda_s) = if l1.abs() > l2.abs() { (l1, l2) } else { (l2, l1) };
    let (af, bf, cf, df) = (a as f64, b as f64, c as f64, d as f64);
    Ok(AnosovMap {
        a,
        b,
        c,
        d,
        lambda_u,
        lambda_s,
        v_u: unit_eigenvector(af, bf, cf, df, lambda_u),
        v_s: unit_eigenvector(af, bf, cf, df, lambda_s),
    })
}

impl AnosovMap {
    pub fn matrix(&self) -> Mat2 {
        Mat2::from_columns(v2(self.a as f64, self.c as f64), v2(self.b as f64, self.d as f64))
    }

    /// Inverse matrix; exact in integers since det = 1.
    pub fn inverse_matrix(&self) -> Mat2 {
        Mat2::from_columns(v2(self.d as f64, -self.c as f64), v2(-self.b as f64, self.a as f64))
    }

    pub fn apply_planar(&self, p: Vec2, dir: Direction) -> Vec2 {
        match dir {
            Direction::Forward => self.matrix().apply(p),
            Direction::Inverse => self.inverse_matrix().apply(p),
        }
    }
}

/// Apply the toral automorphism to a reduced point.
pub fn anosov_apply(m: &AnosovMap, p: TorusPoint, dir: Direction) -> TorusPoint {
    torus_reduce(m.apply_planar(p.vec(), dir)).expect("finite")
}

/// The induced generalized pseudo-Anosov map on the quotient sphere.
///
/// Well-defined because the matrix is linear: both lifts X and -X have
/// identified images.
pub fn quotient_map(m: &AnosovMap, s: SpherePoint, dir: Direction) -> SpherePoint {
    sphere_project(anosov_apply(m, s.rep, dir))
}
