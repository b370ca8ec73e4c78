//! Derived-from-Anosov surgery in plug coordinates.
//!
//! A stable plug modifies a map with a saddle at the origin (vertical
//! stable foliation, eigenvalues 0 < lambda_s < 1 < lambda_u) by
//! post-composing with the time-tau flow of the vertical field
//! V(u1, u2) = (0, u2 * delta(|u|)). The surgered map keeps the vertical
//! foliation, turns the origin into a source, and gains two flanking
//! saddles on the center vertical line.

use crate::error::{Error, Result};
use crate::numerics::{
    classify_moduli, eig2_moduli, fd_jacobian, illinois_root, newton_inverse_2d, FixedClass,
};
use crate::vec2::{smoothstep5, v2, Vec2};
use serde::{Deserialize, Serialize};

/// Radial bump: 1 on [0, r0/2], quintic smoothstep down to 0 at r0.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BumpProfile {
    pub r0: f64,
}

impl BumpProfile {
    pub fn new(r0: f64) -> Result<Self> {
        if !(r0 > 0.0) {
            return Err(Error::InvalidInput("bump radius must be > 0".into()));
        }
        Ok(BumpProfile { r0 })
    }

    pub fn plateau(&self) -> f64 {
        self.r0 / 2.0
    }
}

/// Evaluate the bump at radius r >= 0.
pub fn bump_eval(b: &BumpProfile, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidInput(format!("negative radius {r}")));
    }
    Ok(bump_value(b, r))
}

#[inline]
fn bump_value(b: &BumpProfile, r: f64) -> f64 {
    let half = b.r0 / 2.0;
    if r <= half {
        1.0
    } else if r >= b.r0 {
        0.0
    } else {
        1.0 - smoothstep5((r - half) / half)
    }
}

/// Default fixed step count for the tau-flow.
pub fn default_flow_steps(t: f64) -> u32 {
    (64.0_f64).max((64.0 * t.abs()).ceil()) as u32
}

/// Fixed-step RK4 integration of u2' = u2 * delta(|u|) with u1 constant.
///
/// Exact identity outside the support ball and on the horizontal axis.
pub fn flow_v(p: Vec2, t: f64, b: &BumpProfile, steps: u32) -> Result<Vec2> {
    if !p.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite point {p:?}")));
    }
    if steps < 1 {
        return Err(Error::InvalidInput("steps must be >= 1".into()));
    }
    Ok(flow_v_unchecked(p, t, b, steps))
}

#[inline]
pub(crate) fn flow_v_unchecked(p: Vec2, t: f64, b: &BumpProfile, steps: u32) -> Vec2 {
    if p.y == 0.0 || t == 0.0 || p.norm() >= b.r0 {
        return p;
    }
    let x = p.x;
    let deriv = |y: f64| y * bump_value(b, x.hypot(y));
    let h = t / steps as f64;
    let mut y = p.y;
    for _ in 0..steps {
        let k1 = deriv(y);
        let k2 = deriv(y + 0.5 * h * k1);
        let k3 = deriv(y + 0.5 * h * k2);
        let k4 = deriv(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    v2(x, y)
}

/// Exact inverse of the numerical time-t flow: solves
/// flow_v((x, y0), t) = (x, target_y) for y0 by a bracketed root search
/// on the monotone column map.
pub(crate) fn flow_v_invert(q: Vec2, t: f64, b: &BumpProfile, steps: u32) -> Vec2 {
    if q.y == 0.0 || t == 0.0 || q.norm() >= b.r0 {
        return q;
    }
    let x = q.x;
    let support = (b.r0 * b.r0 - x * x).max(0.0).sqrt();
    if q.y.abs() >= support {
        return q;
    }
    let sign = q.y.signum();
    let target = q.y.abs();
    // Growth is bounded by e^{|t|} on either side of the flow.
    let (lo, hi) = if t > 0.0 {
        ((target * (-t).exp()).max(0.0), target.min(support))
    } else {
        (target, (target * (-t).exp()).min(support))
    };
    let g = |y0: f64| flow_v_unchecked(v2(x, sign * y0), t, b, steps).y * sign - target;
    let root = illinois_root(g, lo, hi, 1e-16 * (1.0 + target));
    v2(x, sign * root)
}

/// Stable-plug orientation: which direction of time the surgery flows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Stable,
    Unstable,
}

/// Report for one classified fixed point of a plug.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub location: [f64; 2],
    pub eigenvalues: [f64; 2],
    pub class: FixedClass,
}

/// The planar model of a stable DA-plug: base map diag(lambda_u, lambda_s)
/// followed by the time-tau vertical flow.
///
/// An unstable plug for a system is this same model acting as the system's
/// inverse, mirroring the corollary construction (a stable plug for f^-1
/// is an unstable plug for f).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelPlug {
    pub lambda_u: f64,
    pub lambda_s: f64,
    pub tau: f64,
    pub bump: BumpProfile,
    pub steps: u32,
    pub epsilon: f64,
}

impl ModelPlug {
    pub fn forward(&self, p: Vec2) -> Vec2 {
        let q = v2(p.x * self.lambda_u, p.y * self.lambda_s);
        flow_v_unchecked(q, self.tau, &self.bump, self.steps)
    }

    pub fn inverse(&self, q: Vec2) -> Vec2 {
        let p = flow_v_invert(q, self.tau, &self.bump, self.steps);
        v2(p.x / self.lambda_u, p.y / self.lambda_s)
    }
}

/// Full description of one DA surgery.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlugSpec {
    pub orientation: Orientation,
    pub tau: f64,
    pub bump: BumpProfile,
    pub epsilon: f64,
    pub period: u32,
    pub fixed_points: [FixedPointReport; 3],
}

/// Perform the DA surgery on the planar model with the given eigenvalues.
///
/// Validates e^tau * lambda_s > 1 and that the center is a saddle, then
/// locates and classifies the three fixed points on the center line.
pub fn da_surgery(
    lambda_u: f64,
    lambda_s: f64,
    tau: f64,
    bump: BumpProfile,
    epsilon: f64,
    orientation: Orientation,
) -> Result<(PlugSpec, ModelPlug)> {
    if !(lambda_u > 1.0 && lambda_s > 0.0 && lambda_s < 1.0) {
        return Err(Error::Precondition(format!(
            "center must be a saddle with 0 < lambda_s < 1 < lambda_u, got ({lambda_u}, {lambda_s})"
        )));
    }
    if !(bump.r0 < epsilon) {
        return Err(Error::Precondition(
            "bump support must lie strictly inside the plug domain".into(),
        ));
    }
    let product = tau.exp() * lambda_s;
    if product <= 1.0 {
        return Err(Error::SurgeryIneffective { product });
    }
    let model = ModelPlug {
        lambda_u,
        lambda_s,
        tau,
        bump,
        steps: default_flow_steps(tau),
        epsilon,
    };
    let fixed_points = find_plug_fixed_points(|p| model.forward(p), epsilon)?;
    Ok((
        PlugSpec {
            orientation,
            tau,
            bump,
            epsilon,
            period: 1,
            fixed_points,
        },
        model,
    ))
}

/// Locate and classify the three fixed points of a surgered map on the
/// center vertical line by a sign-change scan plus bisection.
pub fn find_plug_fixed_points<F: Fn(Vec2) -> Vec2>(
    map: F,
    epsilon: f64,
) -> Result<[FixedPointReport; 3]> {
    let g = |y: f64| map(v2(0.0, y)).y - y;
    let n = 10_000usize;
    let a = -epsilon * 0.999;
    let b = epsilon * 0.999;
    let step = (b - a) / n as f64;
    let mut roots: Vec<f64> = Vec::new();
    let mut prev = g(a);
    for i in 1..=n {
        let y = a + step * i as f64;
        let cur = g(y);
        if prev == 0.0 {
            roots.push(y - step);
        } else if prev * cur < 0.0 {
            let root = illinois_root(&g, y - step, y, 1e-15);
            roots.push(root);
        }
        prev = cur;
    }
    if prev == 0.0 {
        roots.push(b);
    }
    roots.dedup_by(|x, y| (*x - *y).abs() < 2.0 * step);
    if roots.len() != 3 {
        return Err(Error::SurgeryFailed { found: roots.len() });
    }
    let mut reports = Vec::with_capacity(3);
    for &y in &roots {
        let p = v2(0.0, y);
        let rep = classify_fixed_point(&map, p)?;
        reports.push(rep);
    }
    Ok([reports[0].clone(), reports[1].clone(), reports[2].clone()])
}

/// Classify a fixed point by a central finite-difference Jacobian, with a
/// Richardson consistency check at half the step.
pub fn classify_fixed_point<F: Fn(Vec2) -> Vec2>(map: &F, p: Vec2) -> Result<FixedPointReport> {
    let h = 1e-5;
    let j = fd_jacobian(map, p, h);
    let ((hi, lo), real) = eig2_moduli(&j);
    let class = classify_moduli(hi, lo).ok_or_else(|| {
        Error::Precondition(format!("fixed point at {p:?} is not hyperbolic: ({hi}, {lo})"))
    })?;
    let j2 = fd_jacobian(map, p, h / 2.0);
    let ((hi2, lo2), _) = eig2_moduli(&j2);
    let class2 = classify_moduli(hi2, lo2).ok_or_else(|| {
        Error::Precondition("classification unstable under step halving".into())
    })?;
    if class != class2 {
        return Err(Error::Precondition(
            "classification changed under finite-difference step halving".into(),
        ));
    }
    let eigenvalues = match real {
        Some((e1, e2)) => [e1, e2],
        None => [hi, lo],
    };
    Ok(FixedPointReport {
        location: [p.x, p.y],
        eigenvalues,
        class,
    })
}

/// Local chart normalization mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormMode {
    /// Source: exactly x -> 4x in chart coordinates.
    Expand4,
    /// Sink: exactly x -> x/4.
    Contract4,
    /// Saddle: exactly diag(2, 1/2), used by the rectangle surgery.
    SaddleStd,
}

/// A local replacement of a map near a fixed point: the exact model map
/// near the center, a radial monotone blend to the original map across a
/// collar, the original map outside.
///
/// The blend lives on the side of the map whose rates increase outward,
/// which keeps rays monotone: the inverse side for `Expand4` (rates go
/// 1/4 up to the map's own contraction) and the forward side for
/// `Contract4`. `r_exact`/`r_outer` are radii in the blend side's input
/// space. The saddle mode blends on the forward side and is validated by
/// the injectivity scan at build time.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChartNorm {
    pub center: Vec2,
    pub mode: NormMode,
    pub r_exact: f64,
    pub r_outer: f64,
}

impl ChartNorm {
    fn blend_on_inverse(&self) -> bool {
        matches!(self.mode, NormMode::Expand4)
    }

    /// Forward model map on offsets.
    pub fn model(&self, offset: Vec2) -> Vec2 {
        match self.mode {
            NormMode::Expand4 => offset.scale(4.0),
            NormMode::Contract4 => offset.scale(0.25),
            NormMode::SaddleStd => v2(offset.x * 2.0, offset.y * 0.5),
        }
    }

    pub fn model_inverse(&self, offset: Vec2) -> Vec2 {
        match self.mode {
            NormMode::Expand4 => offset.scale(0.25),
            NormMode::Contract4 => offset.scale(4.0),
            NormMode::SaddleStd => v2(offset.x * 0.5, offset.y * 2.0),
        }
    }

    /// Radius of the exact zone in source (p-space) coordinates.
    pub fn exact_source_radius(&self) -> f64 {
        if self.blend_on_inverse() {
            self.r_exact / 4.0
        } else {
            self.r_exact
        }
    }

    /// The blended map on its blend side: model near the center, the
    /// underlying map outside, smooth lerp across the collar.
    fn blend<B: Fn(Vec2) -> Vec2>(&self, x: Vec2, side_model: impl Fn(Vec2) -> Vec2, base: B) -> Vec2 {
        let off = x - self.center;
        let r = off.norm();
        if r <= self.r_exact {
            return self.center + side_model(off);
        }
        if r >= self.r_outer {
            return base(x);
        }
        let w = smoothstep5((r - self.r_exact) / (self.r_outer - self.r_exact));
        (self.center + side_model(off)).lerp(base(x), w)
    }

    /// Solve blend(x) = y by branch dispatch with a Newton fallback in the
    /// collar.
    fn dispatch<B, Binv>(
        &self,
        y: Vec2,
        side_model: impl Fn(Vec2) -> Vec2 + Copy,
        side_model_inv: impl Fn(Vec2) -> Vec2,
        base: B,
        base_inv: Binv,
    ) -> Result<Vec2>
    where
        B: Fn(Vec2) -> Vec2,
        Binv: Fn(Vec2) -> Vec2,
    {
        let cand = self.center + side_model_inv(y - self.center);
        if (cand - self.center).norm() <= self.r_exact {
            return Ok(cand);
        }
        let cand_out = base_inv(y);
        if (cand_out - self.center).norm() >= self.r_outer {
            return Ok(cand_out);
        }
        let tol = 1e-12 * (1.0 + y.norm());
        let f = |x: Vec2| self.blend(x, side_model, &base);
        let dir = cand - self.center;
        let mid = self.center
            + dir.scale((self.r_exact + self.r_outer) / (2.0 * dir.norm().max(1e-300)));
        newton_inverse_2d(&f, y, &[cand, cand_out, mid], tol, 80)
    }

    pub fn fwd<F, G>(&self, p: Vec2, inner_fwd: F, inner_inv: G) -> Result<Vec2>
    where
        F: Fn(Vec2) -> Vec2,
        G: Fn(Vec2) -> Vec2,
    {
        if self.blend_on_inverse() {
            // The inverse map is the blend; forward solves it.
            self.dispatch(
                p,
                |off| self.model_inverse(off),
                |off| self.model(off),
                &inner_inv,
                &inner_fwd,
            )
        } else {
            Ok(self.blend(p, |off| self.model(off), &inner_fwd))
        }
    }

    pub fn inv<F, G>(&self, q: Vec2, inner_fwd: F, inner_inv: G) -> Result<Vec2>
    where
        F: Fn(Vec2) -> Vec2,
        G: Fn(Vec2) -> Vec2,
    {
        if self.blend_on_inverse() {
            Ok(self.blend(q, |off| self.model_inverse(off), &inner_inv))
        } else {
            self.dispatch(
                q,
                |off| self.model(off),
                |off| self.model_inverse(off),
                &inner_fwd,
                &inner_inv,
            )
        }
    }

    /// True if the forward value at p may differ from the underlying map.
    pub fn touches_source<F: Fn(Vec2) -> Vec2>(&self, p: Vec2, inner_fwd: F) -> bool {
        if self.blend_on_inverse() {
            // Modified where the image falls inside the q-space collar.
            (inner_fwd(p) - self.center).norm() < self.r_outer
                || (p - self.center).norm() * 4.0 < self.r_outer
        } else {
            (p - self.center).norm() < self.r_outer
        }
    }
}

/// Scan a square grid around the normalization region for collisions:
/// no two samples with preimages >= `sep` apart may map within `coll` of
/// each other. Returns the number of samples checked.
pub fn injectivity_scan<F: Fn(Vec2) -> Vec2>(
    f: &F,
    center: Vec2,
    half_width: f64,
    n: usize,
    coll: f64,
    sep: f64,
) -> Result<usize> {
    let cell = coll * 4.0;
    let mut buckets: std::collections::HashMap<(i64, i64), Vec<(Vec2, Vec2)>> =
        std::collections::HashMap::new();
    let step = 2.0 * half_width / (n - 1) as f64;
    for i in 0..n {
        for j in 0..n {
            let p = v2(
                center.x - half_width + step * i as f64,
                center.y - half_width + step * j as f64,
            );
            let q = f(p);
            let key = ((q.x / cell).floor() as i64, (q.y / cell).floor() as i64);
            for di in -1..=1 {
                for dj in -1..=1 {
                    if let Some(list) = buckets.get(&(key.0 + di, key.1 + dj)) {
                        for &(p2, q2) in list {
                            if (q - q2).norm() < coll && (p - p2).norm() >= sep {
                                return Err(Error::CollarTooThin(format!(
                                    "images collide: {p:?} and {p2:?} map within {coll}"
                                )));
                            }
                        }
                    }
                }
            }
            buckets.entry(key).or_default().push((p, q));
        }
    }
    Ok(n * n)
}
