//! The canonical hypersurface families of Sol⁴₀ and the umbilical profile ODE.
//!
//! Five constructions return ready-made [`Immersion`]s with exact derivative
//! callbacks:
//!
//! * [`family_z_plane`] — slices z = c, totally geodesic;
//! * [`family_t_plane`] — slices t = c, parallel but not umbilical;
//! * [`family_vertical_plane`] — planes ax + by = c, totally geodesic;
//! * [`family_cylinder`] — products of a plane curve in the xy-factor with
//!   the (z, t) directions, Codazzi but generically not parallel;
//! * [`family_umbilical`] — graphs over the xy-factor whose (z, t) profile
//!   curve γ follows the umbilical flow, totally umbilical with
//!   mean-curvature factor λ = sin β.
//!
//! The profile is steered by the angle β(u) solving β′ = 3 sin β together
//! with γ₁′ = e^{−2γ₂} sin β and γ₂′ = −cos β. [`solve_beta`] integrates the
//! scalar flow (with the closed form tan(β/2) = tan(β₀/2)e^{3u} available as
//! [`beta_closed_form`] for cross-checks) and [`umbilical_profile`] carries
//! the full (β, γ₁, γ₂) state. Integration refuses to continue across the
//! band |cos β| < [`tol::COS_BETA_GUARD`], where the graph presentation of
//! the profile degenerates.

use std::sync::Arc;

use thiserror::Error;

use crate::curvedsl::{CurveSpec, EvalError};
use crate::hypersurface::{DomainBox, Immersion};
use crate::solgroup::Point;
use crate::tol;

/// Errors from family constructors and the profile integrator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("curve is not regular at u = {u} (speed² = {speed_sq:.3e})")]
    IrregularCurvePoint { u: f64, speed_sq: f64 },
    #[error("plane coefficients (a, b) must not both vanish")]
    DegeneratePlaneCoefficients,
    #[error("invalid parameter interval [{0}, {1}]")]
    InvalidInterval(f64, f64),
    #[error(
        "profile integration entered the singular band at u = {u:.6}: \
         |cos β| = {cos_beta:.3e} < {guard:.2e}"
    )]
    ProfileGuard { u: f64, cos_beta: f64, guard: f64 },
    #[error("parameter {u} outside the profile interval [{lo}, {hi}]")]
    OutsideInterval { u: f64, lo: f64, hi: f64 },
    #[error("curve expression failed: {0}")]
    Curve(#[from] EvalError),
}

type Curve2Fn = dyn Fn(f64) -> [f64; 2] + Send + Sync;

/// A twice-differentiable plane curve u ↦ (γ₁(u), γ₂(u)) on an interval.
#[derive(Clone)]
pub struct PlaneCurve {
    eval: Arc<Curve2Fn>,
    d1: Arc<Curve2Fn>,
    d2: Arc<Curve2Fn>,
    interval: (f64, f64),
}

impl PlaneCurve {
    /// Build from explicit position / velocity / acceleration closures.
    pub fn from_fns(
        eval: impl Fn(f64) -> [f64; 2] + Send + Sync + 'static,
        d1: impl Fn(f64) -> [f64; 2] + Send + Sync + 'static,
        d2: impl Fn(f64) -> [f64; 2] + Send + Sync + 'static,
        interval: (f64, f64),
    ) -> Result<Self, FamilyError> {
        check_interval(interval)?;
        Ok(PlaneCurve {
            eval: Arc::new(eval),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            interval,
        })
    }

    /// Build from a parsed expression pair; derivatives are symbolic.
    pub fn from_spec(spec: &CurveSpec) -> Result<Self, FamilyError> {
        check_interval(spec.interval)?;
        spec.validate()?;
        let (g1, g2) = (spec.gamma1.clone(), spec.gamma2.clone());
        let (d11, d21) = (g1.differentiate(), g2.differentiate());
        let (d12, d22) = (d11.differentiate(), d21.differentiate());
        let pair = move |a: &crate::curvedsl::Expr, b: &crate::curvedsl::Expr, u: f64| {
            [
                a.eval(u).unwrap_or(f64::NAN),
                b.eval(u).unwrap_or(f64::NAN),
            ]
        };
        Ok(PlaneCurve {
            eval: {
                let (a, b) = (g1.clone(), g2.clone());
                Arc::new(move |u| pair(&a, &b, u))
            },
            d1: {
                let (a, b) = (d11.clone(), d21.clone());
                Arc::new(move |u| pair(&a, &b, u))
            },
            d2: {
                let (a, b) = (d12, d22);
                Arc::new(move |u| pair(&a, &b, u))
            },
            interval: spec.interval,
        })
    }

    /// Counterclockwise unit circle (cos u, sin u) on [0, 2π].
    pub fn circle() -> Self {
        PlaneCurve {
            eval: Arc::new(|u| [u.cos(), u.sin()]),
            d1: Arc::new(|u| [-u.sin(), u.cos()]),
            d2: Arc::new(|u| [-u.cos(), -u.sin()]),
            interval: (0.0, std::f64::consts::TAU),
        }
    }

    /// Straight line p + u·v on [−1, 1].
    pub fn line(p: [f64; 2], v: [f64; 2]) -> Self {
        PlaneCurve {
            eval: Arc::new(move |u| [p[0] + u * v[0], p[1] + u * v[1]]),
            d1: Arc::new(move |_| v),
            d2: Arc::new(|_| [0.0, 0.0]),
            interval: (-1.0, 1.0),
        }
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn position(&self, u: f64) -> [f64; 2] {
        (self.eval)(u)
    }

    pub fn velocity(&self, u: f64) -> [f64; 2] {
        (self.d1)(u)
    }

    pub fn acceleration(&self, u: f64) -> [f64; 2] {
        (self.d2)(u)
    }

    /// The same trace with reversed parameter direction.
    pub fn reversed(&self) -> Self {
        let (lo, hi) = self.interval;
        let flip = move |u: f64| lo + hi - u;
        let (e, v, a) = (self.eval.clone(), self.d1.clone(), self.d2.clone());
        PlaneCurve {
            eval: Arc::new(move |u| e(flip(u))),
            d1: Arc::new(move |u| {
                let d = v(flip(u));
                [-d[0], -d[1]]
            }),
            d2: Arc::new(move |u| a(flip(u))),
            interval: self.interval,
        }
    }
}

fn check_interval(interval: (f64, f64)) -> Result<(), FamilyError> {
    if interval.0.is_finite() && interval.1.is_finite() && interval.1 > interval.0 {
        Ok(())
    } else {
        Err(FamilyError::InvalidInterval(interval.0, interval.1))
    }
}

/// Signed curvature κ = (γ₁″γ₂′ − γ₁′γ₂″) / |γ′|³ (counterclockwise unit
/// circle gives −1).
pub fn plane_curve_curvature(curve: &PlaneCurve, u: f64) -> Result<f64, FamilyError> {
    let d1 = curve.velocity(u);
    let d2 = curve.acceleration(u);
    let speed_sq = d1[0] * d1[0] + d1[1] * d1[1];
    if !(speed_sq > tol::DEGENERATE) {
        return Err(FamilyError::IrregularCurvePoint { u, speed_sq });
    }
    Ok((d2[0] * d1[1] - d1[0] * d2[1]) / speed_sq.powf(1.5))
}

// ---------------------------------------------------------------------------
// Family constructors
// ---------------------------------------------------------------------------

/// Slice z = c, parametrized as (u₁, u₂, c, u₃) over [−1, 1]³.
pub fn family_z_plane(c: f64) -> Immersion {
    Immersion::new(DomainBox::symmetric_unit(), move |u| {
        Point::new(u[0], u[1], c, u[2])
    })
    .with_jacobian(|_| {
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    })
    .with_hessian(|_| [[[0.0; 4]; 3]; 3])
}

/// Slice t = c, parametrized as (u₁, u₂, u₃, c) over [−1, 1]³.
pub fn family_t_plane(c: f64) -> Immersion {
    Immersion::new(DomainBox::symmetric_unit(), move |u| {
        Point::new(u[0], u[1], u[2], c)
    })
    .with_jacobian(|_| {
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
        ]
    })
    .with_hessian(|_| [[[0.0; 4]; 3]; 3])
}

/// Vertical plane ax + by = c (not both a, b zero), parametrized as
/// ((b u₁ + ac/q), (−a u₁ + bc/q), u₂, u₃) with q = a² + b², over [−1, 1]³.
pub fn family_vertical_plane(a: f64, b: f64, c: f64) -> Result<Immersion, FamilyError> {
    let q = a * a + b * b;
    if !(q > tol::DEGENERATE) {
        return Err(FamilyError::DegeneratePlaneCoefficients);
    }
    let (x0, y0) = (a * c / q, b * c / q);
    Ok(Immersion::new(DomainBox::symmetric_unit(), move |u| {
        Point::new(x0 + b * u[0], y0 - a * u[0], u[1], u[2])
    })
    .with_jacobian(move |_| {
        [
            [b, -a, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    })
    .with_hessian(|_| [[[0.0; 4]; 3]; 3]))
}

/// Cylinder (γ₁(u₁), γ₂(u₁), u₂, u₃) over a plane curve in the xy-factor.
/// u₁ runs over the curve's interval, u₂ and u₃ over [−1, 1].
pub fn family_cylinder(curve: &PlaneCurve) -> Immersion {
    let (lo, hi) = curve.interval();
    let domain = DomainBox::new([lo, -1.0, -1.0], [hi, 1.0, 1.0]);
    let (c0, c1, c2) = (curve.clone(), curve.clone(), curve.clone());
    Immersion::new(domain, move |u| {
        let g = c0.position(u[0]);
        Point::new(g[0], g[1], u[1], u[2])
    })
    .with_jacobian(move |u| {
        let d = c1.velocity(u[0]);
        [
            [d[0], d[1], 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    })
    .with_hessian(move |u| {
        let dd = c2.acceleration(u[0]);
        let mut h = [[[0.0; 4]; 3]; 3];
        h[0][0] = [dd[0], dd[1], 0.0, 0.0];
        h
    })
}

/// Umbilical hypersurface (u₁, u₂, γ₁(u₃), γ₂(u₃)) over a profile curve.
/// u₁ and u₂ run over [−1, 1], u₃ over the profile interval.
pub fn family_umbilical(profile: &UmbilicalProfile) -> Immersion {
    let (lo, hi) = profile.interval();
    let domain = DomainBox::new([-1.0, -1.0, lo], [1.0, 1.0, hi]);
    let (p0, p1, p2) = (profile.clone(), profile.clone(), profile.clone());
    Immersion::new(domain, move |u| {
        let [_, g1, g2] = p0.state(u[2]);
        Point::new(u[0], u[1], g1, g2)
    })
    .with_jacobian(move |u| {
        let d = p1.curve_velocity(u[2]);
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, d[0], d[1]],
        ]
    })
    .with_hessian(move |u| {
        let dd = p2.curve_acceleration(u[2]);
        let mut h = [[[0.0; 4]; 3]; 3];
        h[2][2] = [0.0, 0.0, dd[0], dd[1]];
        h
    })
}

// ---------------------------------------------------------------------------
// Umbilical profile flow
// ---------------------------------------------------------------------------

/// β(u) = 2 arctan(tan(β₀/2) e^{3u}): the closed-form solution of β′ = 3 sin β.
pub fn beta_closed_form(beta0: f64, u: f64) -> f64 {
    2.0 * ((0.5 * beta0).tan() * (3.0 * u).exp()).atan()
}

fn rk4_step<const N: usize>(
    rhs: &impl Fn(&[f64; N]) -> [f64; N],
    y: &[f64; N],
    h: f64,
) -> [f64; N] {
    let k1 = rhs(y);
    let mut y2 = *y;
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k1[i];
    }
    let k2 = rhs(&y2);
    for i in 0..N {
        y2[i] = y[i] + 0.5 * h * k2[i];
    }
    let k3 = rhs(&y2);
    for i in 0..N {
        y2[i] = y[i] + h * k3[i];
    }
    let k4 = rhs(&y2);
    let mut out = *y;
    for i in 0..N {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Cubic Hermite interpolation on one segment of width `h` with endpoint
/// values and derivatives.
fn hermite(p0: f64, m0: f64, p1: f64, m1: f64, h: f64, tau: f64) -> f64 {
    let t2 = tau * tau;
    let t3 = t2 * tau;
    (2.0 * t3 - 3.0 * t2 + 1.0) * p0
        + (t3 - 2.0 * t2 + tau) * h * m0
        + (-2.0 * t3 + 3.0 * t2) * p1
        + (t3 - t2) * h * m1
}

/// Generic RK4 sweep anchored at u = 0 covering [lo, hi] with nodes spaced
/// by `step`. Returns (node_lo, nodes) or the guard failure.
fn integrate_anchored<const N: usize>(
    rhs: impl Fn(&[f64; N]) -> [f64; N],
    y0: [f64; N],
    beta_index: usize,
    interval: (f64, f64),
    step: f64,
) -> Result<(f64, Vec<[f64; N]>), FamilyError> {
    let (lo, hi) = (interval.0.min(0.0), interval.1.max(0.0));
    let guard = tol::COS_BETA_GUARD;
    let check = |y: &[f64; N], u: f64| -> Result<(), FamilyError> {
        let cb = y[beta_index].cos();
        if cb.abs() < guard {
            Err(FamilyError::ProfileGuard {
                u,
                cos_beta: cb,
                guard,
            })
        } else {
            Ok(())
        }
    };
    check(&y0, 0.0)?;
    let n_fwd = (hi / step).ceil() as usize;
    let n_bwd = ((-lo) / step).ceil() as usize;
    let mut forward = Vec::with_capacity(n_fwd + 1);
    forward.push(y0);
    let mut y = y0;
    for k in 0..n_fwd {
        y = rk4_step(&rhs, &y, step);
        check(&y, (k + 1) as f64 * step)?;
        forward.push(y);
    }
    let mut backward = Vec::with_capacity(n_bwd);
    y = y0;
    for k in 0..n_bwd {
        y = rk4_step(&rhs, &y, -step);
        check(&y, -((k + 1) as f64) * step)?;
        backward.push(y);
    }
    backward.reverse();
    backward.extend(forward);
    Ok((-(n_bwd as f64) * step, backward))
}

/// Locate the Hermite segment for `u` (clamped to the node range).
fn segment(node_lo: f64, step: f64, count: usize, u: f64) -> (usize, f64) {
    if count < 2 {
        return (0, 0.0);
    }
    let s = ((u - node_lo) / step).floor();
    let i = (s.max(0.0) as usize).min(count - 2);
    let tau = ((u - node_lo - i as f64 * step) / step).clamp(0.0, 1.0);
    (i, tau)
}

/// Numeric solution of β′ = 3 sin β anchored at β(0) = β₀.
#[derive(Debug, Clone)]
pub struct BetaSolution {
    beta0: f64,
    interval: (f64, f64),
    step: f64,
    node_lo: f64,
    nodes: Vec<[f64; 1]>,
}

/// Integrate β′ = 3 sin β over `interval` (which is extended to contain the
/// anchor u = 0 if needed) with an RK4 sweep of the given step.
pub fn solve_beta(beta0: f64, interval: (f64, f64), step: f64) -> Result<BetaSolution, FamilyError> {
    check_interval(interval)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(FamilyError::InvalidInterval(step, step));
    }
    let rhs = |y: &[f64; 1]| [3.0 * y[0].sin()];
    let (node_lo, nodes) = integrate_anchored(rhs, [beta0], 0, interval, step)?;
    Ok(BetaSolution {
        beta0,
        interval,
        step,
        node_lo,
        nodes,
    })
}

impl BetaSolution {
    pub fn beta0(&self) -> f64 {
        self.beta0
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    /// β(u) by cubic Hermite interpolation between RK4 nodes.
    pub fn beta(&self, u: f64) -> Result<f64, FamilyError> {
        let (lo, hi) = self.interval;
        if !(u >= lo - 1e-9 && u <= hi + 1e-9) {
            return Err(FamilyError::OutsideInterval { u, lo, hi });
        }
        let (i, tau) = segment(self.node_lo, self.step, self.nodes.len(), u);
        let (p0, p1) = (self.nodes[i][0], self.nodes[i + 1][0]);
        Ok(hermite(
            p0,
            3.0 * p0.sin(),
            p1,
            3.0 * p1.sin(),
            self.step,
            tau,
        ))
    }
}

/// Profile curve state (β, γ₁, γ₂) of the umbilical flow.
#[derive(Debug, Clone)]
pub struct UmbilicalProfile {
    beta0: f64,
    interval: (f64, f64),
    step: f64,
    node_lo: f64,
    nodes: Vec<[f64; 3]>,
}

fn profile_rhs(y: &[f64; 3]) -> [f64; 3] {
    let (beta, g2) = (y[0], y[2]);
    [
        3.0 * beta.sin(),
        (-2.0 * g2).exp() * beta.sin(),
        -beta.cos(),
    ]
}

/// Integrate the full profile flow anchored at β(0) = β₀, γ(0) = (0, 0).
pub fn umbilical_profile(
    beta0: f64,
    interval: (f64, f64),
    step: f64,
) -> Result<UmbilicalProfile, FamilyError> {
    check_interval(interval)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(FamilyError::InvalidInterval(step, step));
    }
    let (node_lo, nodes) = integrate_anchored(profile_rhs, [beta0, 0.0, 0.0], 0, interval, step)?;
    Ok(UmbilicalProfile {
        beta0,
        interval,
        step,
        node_lo,
        nodes,
    })
}

impl UmbilicalProfile {
    pub fn beta0(&self) -> f64 {
        self.beta0
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    /// Interpolated state (β, γ₁, γ₂) at u (clamped to the covered range).
    pub fn state(&self, u: f64) -> [f64; 3] {
        let (i, tau) = segment(self.node_lo, self.step, self.nodes.len(), u);
        let (y0, y1) = (self.nodes[i], self.nodes[i + 1]);
        let (m0, m1) = (profile_rhs(&y0), profile_rhs(&y1));
        let mut out = [0.0; 3];
        for k in 0..3 {
            out[k] = hermite(y0[k], m0[k], y1[k], m1[k], self.step, tau);
        }
        out
    }

    /// β(u).
    pub fn beta(&self, u: f64) -> f64 {
        self.state(u)[0]
    }

    /// (γ₁′, γ₂′) = (e^{−2γ₂} sin β, −cos β).
    pub fn curve_velocity(&self, u: f64) -> [f64; 2] {
        let [beta, _, g2] = self.state(u);
        [(-2.0 * g2).exp() * beta.sin(), -beta.cos()]
    }

    /// (γ₁″, γ₂″) = (5 e^{−2γ₂} cos β sin β, 3 sin²β).
    pub fn curve_acceleration(&self, u: f64) -> [f64; 2] {
        let [beta, _, g2] = self.state(u);
        let (s, c) = beta.sin_cos();
        [5.0 * (-2.0 * g2).exp() * c * s, 3.0 * s * s]
    }

    /// The (z, t)-profile as a plane curve with closed-form derivatives.
    pub fn curve(&self) -> PlaneCurve {
        let (p0, p1, p2) = (self.clone(), self.clone(), self.clone());
        PlaneCurve {
            eval: Arc::new(move |u| {
                let [_, g1, g2] = p0.state(u);
                [g1, g2]
            }),
            d1: Arc::new(move |u| p1.curve_velocity(u)),
            d2: Arc::new(move |u| p2.curve_acceleration(u)),
            interval: self.interval,
        }
    }
}

/// Residual of the profile equation for a (z, t)-plane curve:
/// γ₁″γ₂′ − γ₁′γ₂″ + 5γ₁′(γ₂′)² + 3e^{4γ₂}(γ₁′)³.
///
/// Vanishes exactly on umbilical profiles; measures how far an arbitrary
/// curve is from steering an umbilical graph.
pub fn ode_residual(curve: &PlaneCurve, u: f64) -> f64 {
    let g = curve.position(u);
    let d1 = curve.velocity(u);
    let d2 = curve.acceleration(u);
    d2[0] * d1[1] - d1[0] * d2[1]
        + 5.0 * d1[0] * d1[1] * d1[1]
        + 3.0 * (4.0 * g[1]).exp() * d1[0].powi(3)
}

/// Mean-curvature factor of the hypersurface built over a (z, t)-profile
/// curve, oriented to the Hodge normal of [`family_umbilical`]:
///
/// λ = −e^{2γ₂}(γ₁″γ₂′ − γ₁′γ₂″ + 4γ₁′(γ₂′)² + 2e^{4γ₂}(γ₁′)³)
///     / ((γ₁′)²e^{4γ₂} + (γ₂′)²)^{3/2}.
///
/// On umbilical profiles this evaluates to sin β.
pub fn mean_curvature_closed_form(curve: &PlaneCurve, u: f64) -> Result<f64, FamilyError> {
    let g = curve.position(u);
    let d1 = curve.velocity(u);
    let d2 = curve.acceleration(u);
    let e4 = (4.0 * g[1]).exp();
    let speed_sq = d1[0] * d1[0] * e4 + d1[1] * d1[1];
    if !(speed_sq > tol::DEGENERATE) {
        return Err(FamilyError::IrregularCurvePoint { u, speed_sq });
    }
    let num = d2[0] * d1[1] - d1[0] * d2[1] + 4.0 * d1[0] * d1[1] * d1[1]
        + 2.0 * e4 * d1[0].powi(3);
    Ok(-(2.0 * g[1]).exp() * num / speed_sq.powf(1.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::{
        classify, second_fundamental_form, GridSpec, Tolerances,
    };
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn circle_curvature_is_minus_one() {
        let c = PlaneCurve::circle();
        for u in [0.0, 1.0, 2.5, 5.0] {
            assert_abs_diff_eq!(plane_curve_curvature(&c, u).unwrap(), -1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn reversal_flips_curvature_sign() {
        let c = PlaneCurve::circle();
        let r = c.reversed();
        assert_abs_diff_eq!(plane_curve_curvature(&r, 1.0).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn line_curvature_is_zero() {
        let l = PlaneCurve::line([1.0, 2.0], [3.0, -1.0]);
        assert_abs_diff_eq!(plane_curve_curvature(&l, 0.4).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ellipse_from_expressions() {
        let spec = CurveSpec::parse("2*cos(u)", "sin(u)", (0.0, 6.3)).unwrap();
        let c = PlaneCurve::from_spec(&spec).unwrap();
        assert_abs_diff_eq!(
            plane_curve_curvature(&c, 0.0).unwrap().abs(),
            2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn stationary_point_is_rejected() {
        let l = PlaneCurve::line([0.0, 0.0], [0.0, 0.0]);
        assert!(matches!(
            plane_curve_curvature(&l, 0.0),
            Err(FamilyError::IrregularCurvePoint { .. })
        ));
    }

    #[test]
    fn beta_flow_matches_closed_form() {
        let sol = solve_beta(0.3, (-0.3, 0.5), tol::ODE_STEP).unwrap();
        let mut worst = 0.0f64;
        for k in 0..=50 {
            let u = -0.3 + 0.8 * k as f64 / 50.0;
            worst = worst.max((sol.beta(u).unwrap() - beta_closed_form(0.3, u)).abs());
        }
        assert!(worst < 1e-10, "worst |β − closed form| = {worst:.3e}");
    }

    #[test]
    fn beta_zero_is_a_fixed_point() {
        let sol = solve_beta(0.0, (0.0, 1.0), tol::ODE_STEP).unwrap();
        assert_eq!(sol.beta(0.7).unwrap(), 0.0);
    }

    #[test]
    fn guard_trips_before_the_vertical_tangent() {
        // tan(β/2) reaches tan(π/4) at u = ln(cot(β₀/2))/3 ≈ 0.294 for
        // β₀ = π/4, inside [0, 0.4].
        let err = solve_beta(FRAC_PI_4, (0.0, 0.4), tol::ODE_STEP).unwrap_err();
        match err {
            FamilyError::ProfileGuard { u, .. } => assert!(u > 0.28 && u < 0.31, "u = {u}"),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(solve_beta(FRAC_PI_4, (0.0, 0.25), tol::ODE_STEP).is_ok());
    }

    #[test]
    fn profile_satisfies_the_curve_equation() {
        let prof = umbilical_profile(0.4, (-0.2, 0.3), tol::ODE_STEP).unwrap();
        let curve = prof.curve();
        for k in 0..=20 {
            let u = -0.2 + 0.5 * k as f64 / 20.0;
            assert!(ode_residual(&curve, u).abs() < 1e-9, "residual at {u}");
        }
    }

    #[test]
    fn profile_mean_curvature_equals_sin_beta() {
        let prof = umbilical_profile(0.7, (0.0, 0.3), tol::ODE_STEP).unwrap();
        let curve = prof.curve();
        for k in 0..=10 {
            let u = 0.3 * k as f64 / 10.0;
            let h = mean_curvature_closed_form(&curve, u).unwrap();
            assert_abs_diff_eq!(h, prof.beta(u).sin(), epsilon = 1e-10);
        }
    }

    #[test]
    fn zero_beta_profile_is_the_vertical_line() {
        let prof = umbilical_profile(0.0, (0.0, 1.0), tol::ODE_STEP).unwrap();
        let [_, g1, g2] = prof.state(0.6);
        assert_abs_diff_eq!(g1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g2, -0.6, epsilon = 1e-12);
    }

    #[test]
    fn straight_line_residuals() {
        let horizontal = PlaneCurve::line([0.0, 0.0], [1.0, 0.0]);
        assert_abs_diff_eq!(ode_residual(&horizontal, 0.2), 3.0, epsilon = 1e-14);
        let vertical = PlaneCurve::line([0.0, 0.0], [0.0, -1.0]);
        assert_abs_diff_eq!(ode_residual(&vertical, 0.2), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn z_plane_family_is_totally_geodesic() {
        let rep = classify(
            &family_z_plane(0.8),
            &GridSpec::default(),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(rep.totally_geodesic);
        assert!(rep.residual_totally_geodesic < 1e-10);
    }

    #[test]
    fn vertical_plane_family_is_totally_geodesic() {
        let f = family_vertical_plane(1.0, -2.0, 0.7).unwrap();
        let rep = classify(&f, &GridSpec::default(), &Tolerances::default()).unwrap();
        assert!(rep.totally_geodesic, "h = {}", rep.residual_totally_geodesic);
        let p = f.point_at([0.3, 0.1, -0.2]).as_array();
        assert_abs_diff_eq!(1.0 * p[0] - 2.0 * p[1], 0.7, epsilon = 1e-12);
    }

    #[test]
    fn vertical_plane_rejects_zero_coefficients() {
        assert!(matches!(
            family_vertical_plane(0.0, 0.0, 1.0),
            Err(FamilyError::DegeneratePlaneCoefficients)
        ));
    }

    #[test]
    fn t_plane_family_is_parallel() {
        let rep = classify(
            &family_t_plane(-0.3),
            &GridSpec::default(),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(rep.parallel);
        assert!(!rep.totally_umbilical);
    }

    #[test]
    fn cylinder_family_is_codazzi_only() {
        let rep = classify(
            &family_cylinder(&PlaneCurve::circle()),
            &GridSpec::default(),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(rep.codazzi);
        assert!(!rep.parallel);
        assert!(!rep.totally_geodesic);
    }

    #[test]
    fn umbilical_family_has_lambda_sin_beta() {
        let prof = umbilical_profile(FRAC_PI_4, (0.0, 0.25), tol::ODE_STEP).unwrap();
        let f = family_umbilical(&prof);
        let rep = classify(&f, &GridSpec::default(), &Tolerances::default()).unwrap();
        assert!(
            rep.totally_umbilical,
            "umbilical residual {}",
            rep.residual_totally_umbilical
        );
        assert!(!rep.totally_geodesic);
        for u3 in [0.05, 0.125, 0.2] {
            let forms = second_fundamental_form(&f, [0.1, -0.3, u3]).unwrap();
            assert_abs_diff_eq!(forms.lambda, prof.beta(u3).sin(), epsilon = 1e-9);
        }
    }

    #[test]
    fn beta_stays_in_range_before_the_guard() {
        let prof = umbilical_profile(0.1, (0.0, 0.5), tol::ODE_STEP).unwrap();
        for k in 0..=10 {
            let u = 0.5 * k as f64 / 10.0;
            let b = prof.beta(u);
            assert!(b > 0.0 && b < FRAC_PI_2, "β({u}) = {b}");
        }
        assert!(prof.beta(0.5) > prof.beta(0.0));
        let _ = PI;
    }
}
