//! Small numerical helpers: finite-difference Jacobians, 2x2 eigenvalues,
//! a damped Newton inverse for planar maps, and a bracketed root finder.

use crate::error::{Error, Result};
use crate::vec2::{v2, Mat2, Vec2};

/// Central finite-difference Jacobian of a planar map.
pub fn fd_jacobian<F: Fn(Vec2) -> Vec2>(f: &F, p: Vec2, h: f64) -> Mat2 {
    let fx1 = f(v2(p.x + h, p.y));
    let fx0 = f(v2(p.x - h, p.y));
    let fy1 = f(v2(p.x, p.y + h));
    let fy0 = f(v2(p.x, p.y - h));
    Mat2::from_columns(
        (fx1 - fx0).scale(0.5 / h),
        (fy1 - fy0).scale(0.5 / h),
    )
}

/// Eigenvalue moduli of a 2x2 matrix, largest first, along with the real
/// eigenvalues when the spectrum is real.
pub fn eig2_moduli(m: &Mat2) -> ((f64, f64), Option<(f64, f64)>) {
    let tr = m.a.x + m.b.y;
    let det = m.det();
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let l1 = (tr + s) / 2.0;
        let l2 = (tr - s) / 2.0;
        let (hi, lo) = if l1.abs() >= l2.abs() { (l1, l2) } else { (l2, l1) };
        ((hi.abs(), lo.abs()), Some((hi, lo)))
    } else {
        let modulus = det.abs().sqrt();
        ((modulus, modulus), None)
    }
}

/// Hyperbolic fixed point classification by eigenvalue moduli.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FixedClass {
    Source,
    Sink,
    Saddle,
}

pub fn classify_moduli(hi: f64, lo: f64) -> Option<FixedClass> {
    if hi > 1.0 && lo > 1.0 {
        Some(FixedClass::Source)
    } else if hi < 1.0 && lo < 1.0 {
        Some(FixedClass::Sink)
    } else if hi > 1.0 && lo < 1.0 {
        Some(FixedClass::Saddle)
    } else {
        None
    }
}

/// Damped Newton iteration solving f(p) = target from the given seeds.
pub fn newton_inverse_2d<F: Fn(Vec2) -> Vec2>(
    f: &F,
    target: Vec2,
    seeds: &[Vec2],
    tol: f64,
    max_iter: usize,
) -> Result<Vec2> {
    for &seed in seeds {
        let mut p = seed;
        for _ in 0..max_iter {
            let r = f(p) - target;
            if r.norm() <= tol {
                return Ok(p);
            }
            let j = fd_jacobian(f, p, 1e-7 * (1.0 + p.norm()));
            if j.det().abs() < 1e-300 {
                break;
            }
            let step = j.inverse().apply(r);
            let mut t = 1.0;
            // Backtracking line search.
            let base = r.norm();
            loop {
                let cand = p - step.scale(t);
                if (f(cand) - target).norm() < base {
                    p = cand;
                    break;
                }
                t *= 0.5;
                if t < 1e-6 {
                    p = p - step.scale(t);
                    break;
                }
            }
        }
        if (f(p) - target).norm() <= tol {
            return Ok(p);
        }
    }
    Err(Error::Precondition(format!(
        "newton inversion failed for target {target:?}"
    )))
}

/// Illinois-damped regula falsi for a monotone function on [lo, hi] with
/// g(lo) <= 0 <= g(hi). Returns the root to absolute tolerance `tol`.
pub fn illinois_root<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut glo = g(lo);
    let mut ghi = g(hi);
    if glo > 0.0 || ghi < 0.0 {
        // Caller guarantees the bracket; fall back to the nearer endpoint.
        return if glo.abs() < ghi.abs() { lo } else { hi };
    }
    if glo == 0.0 {
        return lo;
    }
    if ghi == 0.0 {
        return hi;
    }
    let mut side = 0i8;
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let denom = ghi - glo;
        let mut mid = if denom.abs() > 0.0 {
            hi - ghi * (hi - lo) / denom
        } else {
            0.5 * (lo + hi)
        };
        if !(mid > lo && mid < hi) {
            mid = 0.5 * (lo + hi);
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm < 0.0 {
            lo = mid;
            glo = gm;
            if side == -1 {
                ghi *= 0.5;
            }
            side = -1;
        } else {
            hi = mid;
            ghi = gm;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_of_linear_map_is_exact() {
        let f = |p: Vec2| v2(2.0 * p.x + p.y, p.x + p.y);
        let j = fd_jacobian(&f, v2(0.3, 0.4), 1e-5);
        assert!((j.a.x - 2.0).abs() < 1e-9);
        assert!((j.b.x - 1.0).abs() < 1e-9);
        assert!((j.a.y - 1.0).abs() < 1e-9);
        assert!((j.b.y - 1.0).abs() < 1e-9);
    }

    #[test]
    fn eigen_and_classification() {
        let m = Mat2::from_columns(v2(3.0, 0.0), v2(0.0, 0.5));
        let ((hi, lo), real) = eig2_moduli(&m);
        assert!((hi - 3.0).abs() < 1e-14 && (lo - 0.5).abs() < 1e-14);
        assert_eq!(real, Some((3.0, 0.5)));
        assert_eq!(classify_moduli(hi, lo), Some(FixedClass::Saddle));
        assert_eq!(classify_moduli(2.0, 1.5), Some(FixedClass::Source));
        assert_eq!(classify_moduli(0.9, 0.2), Some(FixedClass::Sink));
    }

    #[test]
    fn newton_inverts_nonlinear_map() {
        let f = |p: Vec2| v2(p.x * 3.0 + 0.1 * p.y * p.y, p.y * 2.0 - 0.05 * p.x);
        let target = f(v2(0.2, -0.3));
        let p = newton_inverse_2d(&f, target, &[v2(0.0, 0.0)], 1e-13, 60).unwrap();
        assert!((p - v2(0.2, -0.3)).norm() < 1e-10);
    }

    #[test]
    fn illinois_finds_root() {
        let r = illinois_root(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2.0_f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }
}
