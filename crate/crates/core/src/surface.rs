//! Flat torus and quotient sphere coordinates.
//!
//! The torus is R^2/Z^2 with the half-open fundamental square
//! [-1/2, 1/2)^2, so reduction is a function and idempotent. The sphere
//! is the quotient T^2/(X ~ -X) with a canonical representative chosen
//! lexicographically.

use crate::error::{Error, Result};
use crate::vec2::{v2, Vec2};
use serde::{Deserialize, Serialize};

/// A point of the flat torus, reduced into [-1/2, 1/2)^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub x: f64,
    pub y: f64,
}

impl TorusPoint {
    pub fn vec(self) -> Vec2 {
        v2(self.x, self.y)
    }
}

fn reduce_coord(t: f64) -> f64 {
    // Half-open convention: 0.5 reduces to -0.5.
    let r = t - (t + 0.5).floor();
    if r >= 0.5 {
        r - 1.0
    } else if r < -0.5 {
        r + 1.0
    } else {
        r
    }
}

/// Reduce a planar point into the fundamental square.
pub fn torus_reduce(p: Vec2) -> Result<TorusPoint> {
    if !p.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite point {p:?}")));
    }
    Ok(TorusPoint {
        x: reduce_coord(p.x),
        y: reduce_coord(p.y),
    })
}

/// Flat metric: minimum Euclidean distance over the neighboring lattice
/// translates of the difference vector.
pub fn torus_dist(p: TorusPoint, q: TorusPoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let mut best = f64::INFINITY;
    for i in -1..=1 {
        for j in -1..=1 {
            let d = (dx + i as f64).hypot(dy + j as f64);
            if d < best {
                best = d;
            }
        }
    }
    best
}

/// The displacement from `q` to `p` through the nearest lattice translate.
pub fn torus_delta(p: TorusPoint, q: TorusPoint) -> Vec2 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let mut best = v2(dx, dy);
    let mut best_n = best.norm();
    for i in -1..=1 {
        for j in -1..=1 {
            let c = v2(dx + i as f64, dy + j as f64);
            let n = c.norm();
            if n < best_n {
                best_n = n;
                best = c;
            }
        }
    }
    best
}

/// A point of the quotient sphere S^2 = T^2 / (X ~ -X).
///
/// `rep` is the lexicographically smaller of the two reduced
/// representatives of the pair {X, -X}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub rep: TorusPoint,
}

fn lex_le(a: TorusPoint, b: TorusPoint) -> bool {
    if a.x != b.x {
        a.x < b.x
    } else {
        a.y <= b.y
    }
}

/// Project a torus point to the quotient sphere.
pub fn sphere_project(p: TorusPoint) -> SpherePoint {
    let neg = torus_reduce(v2(-p.x, -p.y)).expect("finite");
    let rep = if lex_le(p, neg) { p } else { neg };
    SpherePoint { rep }
}

/// Quotient metric: minimum of the torus distances to both representatives.
pub fn sphere_dist(a: SpherePoint, b: SpherePoint) -> f64 {
    let neg_b = torus_reduce(v2(-b.rep.x, -b.rep.y)).expect("finite");
    torus_dist(a.rep, b.rep).min(torus_dist(a.rep, neg_b))
}

/// Path-sampling resolution for cross-chart distances on glued surfaces.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MetricParams {
    pub chart_resolution: f64,
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams {
            chart_resolution: 0.1,
        }
    }
}

impl MetricParams {
    pub fn new(chart_resolution: f64) -> Result<Self> {
        if !(chart_resolution > 0.0) {
            return Err(Error::InvalidInput(
                "chart_resolution must be > 0".into(),
            ));
        }
        Ok(MetricParams { chart_resolution })
    }
}

/// Format a float with 17 significant digits (round-trip safe).
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn reduce_examples() {
        let p = torus_reduce(v2(0.75, 0.0)).unwrap();
        assert_eq!((p.x, p.y), (-0.25, 0.0));
        let p = torus_reduce(v2(0.0, 0.0)).unwrap();
        assert_eq!((p.x, p.y), (0.0, 0.0));
        // Half-open boundary convention.
        let p = torus_reduce(v2(-0.5, 0.5)).unwrap();
        assert_eq!((p.x, p.y), (-0.5, -0.5));
    }

    #[test]
    fn reduce_rejects_non_finite() {
        assert!(torus_reduce(v2(f64::NAN, 0.0)).is_err());
        assert!(torus_reduce(v2(0.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn reduce_idempotent_bulk() {
        // 10^6 random points: reduction differs from input by an integer
        // vector and is idempotent.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1_000_000 {
            let p = v2(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            let r = torus_reduce(p).unwrap();
            assert!(r.x >= -0.5 && r.x < 0.5 && r.y >= -0.5 && r.y < 0.5);
            let dx = p.x - r.x;
            let dy = p.y - r.y;
            assert!((dx - dx.round()).abs() < 1e-9 && (dy - dy.round()).abs() < 1e-9);
            let rr = torus_reduce(r.vec()).unwrap();
            assert_eq!(r, rr);
        }
    }

    #[test]
    fn dist_examples() {
        let p = torus_reduce(v2(-0.45, 0.0)).unwrap();
        let q = torus_reduce(v2(0.45, 0.0)).unwrap();
        assert!((torus_dist(p, q) - 0.1).abs() < 1e-15);
        assert_eq!(torus_dist(p, p), 0.0);
    }

    #[test]
    fn dist_matches_brute_force_oracle() {
        // Brute force over 25 lattice translates.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let p = torus_reduce(v2(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))).unwrap();
            let q = torus_reduce(v2(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))).unwrap();
            let mut brute = f64::INFINITY;
            for i in -2i32..=2 {
                for j in -2i32..=2 {
                    let d = (p.x - q.x + i as f64).hypot(p.y - q.y + j as f64);
                    brute = brute.min(d);
                }
            }
            assert!((torus_dist(p, q) - brute).abs() < 1e-15);
        }
    }

    #[test]
    fn sphere_projection_identifies_antipodes() {
        let p = torus_reduce(v2(0.3, -0.2)).unwrap();
        let q = torus_reduce(v2(-0.3, 0.2)).unwrap();
        assert_eq!(sphere_project(p), sphere_project(q));
        let origin = torus_reduce(v2(0.0, 0.0)).unwrap();
        assert_eq!(sphere_project(origin).rep, origin);
    }

    #[test]
    fn sphere_projection_boundary_case() {
        // (-0.5, 0.25): -p reduces to (-0.5, -0.25); rep is the lex min.
        let p = torus_reduce(v2(-0.5, 0.25)).unwrap();
        let s = sphere_project(p);
        assert_eq!((s.rep.x, s.rep.y), (-0.5, -0.25));
    }

    #[test]
    fn sphere_dist_identified_pair() {
        let a = sphere_project(torus_reduce(v2(0.4, 0.0)).unwrap());
        let b = sphere_project(torus_reduce(v2(-0.4, 0.0)).unwrap());
        assert_eq!(sphere_dist(a, b), 0.0);
        assert_eq!(sphere_dist(a, a), 0.0);
    }

    #[test]
    fn sphere_dist_matches_two_representative_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..2000 {
            let pa = torus_reduce(v2(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))).unwrap();
            let pb = torus_reduce(v2(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))).unwrap();
            let a = sphere_project(pa);
            let b = sphere_project(pb);
            let neg_b = torus_reduce(v2(-b.rep.x, -b.rep.y)).unwrap();
            let brute = torus_dist(a.rep, b.rep).min(torus_dist(a.rep, neg_b));
            assert!((sphere_dist(a, b) - brute).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn prop_reduce_idempotent(x in -50.0..50.0f64, y in -50.0..50.0f64) {
            let r = torus_reduce(v2(x, y)).unwrap();
            let rr = torus_reduce(r.vec()).unwrap();
            prop_assert_eq!(r, rr);
        }

        #[test]
        fn prop_dist_symmetric_triangle(
            ax in -0.5..0.5f64, ay in -0.5..0.5f64,
            bx in -0.5..0.5f64, by in -0.5..0.5f64,
            cx in -0.5..0.5f64, cy in -0.5..0.5f64,
        ) {
            let a = torus_reduce(v2(ax, ay)).unwrap();
            let b = torus_reduce(v2(bx, by)).unwrap();
            let c = torus_reduce(v2(cx, cy)).unwrap();
            prop_assert!((torus_dist(a, b) - torus_dist(b, a)).abs() < 1e-15);
            prop_assert!(torus_dist(a, c) <= torus_dist(a, b) + torus_dist(b, c) + 1e-12);
        }

        #[test]
        fn prop_sphere_canonical_idempotent(x in -0.5..0.5f64, y in -0.5..0.5f64) {
            let s = sphere_project(torus_reduce(v2(x, y)).unwrap());
            let again = sphere_project(s.rep);
            prop_assert_eq!(s, again);
        }
    }
}
