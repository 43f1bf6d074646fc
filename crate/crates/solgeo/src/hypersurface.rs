//! Fundamental forms and classification of hypersurfaces immersed in Sol⁴₀.
//!
//! An [`Immersion`] is a map F: U ⊂ ℝ³ → Sol⁴₀ together with optional exact
//! first and second derivative callbacks (central differences fill in when
//! they are absent). From it the module computes, per parameter point:
//!
//! * the coordinate tangents ∂ᵢF expressed in the orthonormal frame,
//! * the unit normal N (Hodge dual of the tangent 3-plane),
//! * induced metric g, scalar second fundamental form h(∂ᵢ,∂ⱼ) = ⟨∇̃_{∂ᵢ}∂ⱼ, N⟩
//!   and mean-curvature factor λ = tr(g⁻¹h)/3,
//! * the covariant derivative ∇h on the hypersurface (the normal bundle is a
//!   trivial line bundle, so ∇⊥ drops out),
//! * residuals of the Gauss and Codazzi equations against the ambient
//!   curvature tables.
//!
//! [`classify`] sweeps a parameter grid and thresholds the residuals of the
//! four fundamental classes: totally geodesic (h = 0), totally umbilical
//! (h = λg), parallel (∇h = 0) and Codazzi (∇h totally symmetric).
//!
//! Orientation convention: the normal is the generalized cross product
//! Nˡ = ε_{ijkl} T₁ⁱT₂ʲT₃ᵏ with the free index last. Flipping the parameter
//! orientation flips N and the sign of h; all class residuals are invariant.

use std::sync::Arc;

use nalgebra::Matrix3;
use rayon::prelude::*;
use thiserror::Error;

use crate::solgroup::{
    self, coords_to_frame, curvature_on_comps, dot, gamma_frame, FrameComps, GeomError, Point,
    TangentVector,
};
use crate::tol;

/// Parameter-space point.
pub type Param3 = [f64; 3];

/// Rank-3 array over the three parameter directions.
pub type Rank3 = [[[f64; 3]; 3]; 3];

/// Errors from hypersurface computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperError {
    #[error("tangent vectors rank deficient at u = {u:?} (gram determinant {det:.3e})")]
    RankDeficient { u: Param3, det: f64 },
    #[error("parameter {u:?} outside the immersion domain")]
    OutsideDomain { u: Param3 },
    #[error("parameter {u:?} within {step:.1e} of the domain boundary")]
    BoundaryProximity { u: Param3, step: f64 },
    #[error("induced metric not invertible at u = {u:?}")]
    SingularMetric { u: Param3 },
    #[error("reparametrization matrix is singular (det = {0:.3e})")]
    SingularReparametrization(f64),
    #[error("classification grid is empty")]
    EmptyGrid,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Axis-aligned parameter box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainBox {
    pub lo: Param3,
    pub hi: Param3,
}

impl DomainBox {
    pub fn new(lo: Param3, hi: Param3) -> Self {
        DomainBox { lo, hi }
    }

    /// The unit cube [−1, 1]³.
    pub fn symmetric_unit() -> Self {
        DomainBox::new([-1.0; 3], [1.0; 3])
    }

    pub fn contains(&self, u: Param3, slack: f64) -> bool {
        (0..3).all(|k| u[k] >= self.lo[k] - slack && u[k] <= self.hi[k] + slack)
    }

    /// Shrink each side by `fraction` of its length.
    pub fn shrunk(&self, fraction: f64) -> Self {
        let mut lo = self.lo;
        let mut hi = self.hi;
        for k in 0..3 {
            let pad = fraction * (self.hi[k] - self.lo[k]);
            lo[k] += pad;
            hi[k] -= pad;
        }
        DomainBox::new(lo, hi)
    }
}

type MapFn = dyn Fn(Param3) -> Point + Send + Sync;
type JacFn = dyn Fn(Param3) -> [[f64; 4]; 3] + Send + Sync;
type HessFn = dyn Fn(Param3) -> [[[f64; 4]; 3]; 3] + Send + Sync;

/// A parametrized hypersurface patch with optional exact derivatives.
///
/// `jacobian(u)[i]` is ∂F/∂uᵢ and `hessian(u)[i][j]` is ∂²F/∂uᵢ∂uⱼ, both in
/// coordinate components. Without callbacks the derivatives fall back to
/// central differences ([`tol::FD_STEP_AMBIENT`] for the jacobian, the wider
/// [`tol::STEP_INDUCED`] for the hessian).
#[derive(Clone)]
pub struct Immersion {
    map: Arc<MapFn>,
    jacobian: Option<Arc<JacFn>>,
    hessian: Option<Arc<HessFn>>,
    domain: DomainBox,
}

impl std::fmt::Debug for Immersion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Immersion")
            .field("domain", &self.domain)
            .field("exact_jacobian", &self.jacobian.is_some())
            .field("exact_hessian", &self.hessian.is_some())
            .finish()
    }
}

impl Immersion {
    pub fn new(domain: DomainBox, map: impl Fn(Param3) -> Point + Send + Sync + 'static) -> Self {
        Immersion {
            map: Arc::new(map),
            jacobian: None,
            hessian: None,
            domain,
        }
    }

    pub fn with_jacobian(
        mut self,
        jac: impl Fn(Param3) -> [[f64; 4]; 3] + Send + Sync + 'static,
    ) -> Self {
        self.jacobian = Some(Arc::new(jac));
        self
    }

    pub fn with_hessian(
        mut self,
        hess: impl Fn(Param3) -> [[[f64; 4]; 3]; 3] + Send + Sync + 'static,
    ) -> Self {
        self.hessian = Some(Arc::new(hess));
        self
    }

    pub fn domain(&self) -> DomainBox {
        self.domain
    }

    /// True when both derivative callbacks are exact rather than differenced.
    pub fn has_exact_derivatives(&self) -> bool {
        self.jacobian.is_some() && self.hessian.is_some()
    }

    pub fn point_at(&self, u: Param3) -> Point {
        (self.map)(u)
    }

    /// ∂F/∂uᵢ in coordinate components.
    pub fn coord_derivs(&self, u: Param3) -> [[f64; 4]; 3] {
        if let Some(jac) = &self.jacobian {
            return jac(u);
        }
        let h = tol::FD_STEP_AMBIENT;
        let mut out = [[0.0; 4]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            let fp = self.point_at(offset(u, i, h)).as_array();
            let fm = self.point_at(offset(u, i, -h)).as_array();
            for a in 0..4 {
                row[a] = (fp[a] - fm[a]) / (2.0 * h);
            }
        }
        out
    }

    /// ∂²F/∂uᵢ∂uⱼ in coordinate components.
    pub fn coord_second_derivs(&self, u: Param3) -> [[[f64; 4]; 3]; 3] {
        if let Some(hess) = &self.hessian {
            return hess(u);
        }
        let s = tol::STEP_INDUCED;
        let f0 = self.point_at(u).as_array();
        let mut out = [[[0.0; 4]; 3]; 3];
        for i in 0..3 {
            let fp = self.point_at(offset(u, i, s)).as_array();
            let fm = self.point_at(offset(u, i, -s)).as_array();
            for a in 0..4 {
                out[i][i][a] = (fp[a] - 2.0 * f0[a] + fm[a]) / (s * s);
            }
            for j in (i + 1)..3 {
                let pp = self.point_at(offset(offset(u, i, s), j, s)).as_array();
                let pm = self.point_at(offset(offset(u, i, s), j, -s)).as_array();
                let mp = self.point_at(offset(offset(u, i, -s), j, s)).as_array();
                let mm = self.point_at(offset(offset(u, i, -s), j, -s)).as_array();
                for a in 0..4 {
                    let v = (pp[a] - pm[a] - mp[a] + mm[a]) / (4.0 * s * s);
                    out[i][j][a] = v;
                    out[j][i][a] = v;
                }
            }
        }
        out
    }

    /// The same patch translated by the isometry L_a. Exact derivative
    /// callbacks are rescaled by the differential of L_a.
    pub fn left_translate(&self, a: Point) -> Immersion {
        let e = a.t.exp();
        let em2 = (-2.0 * a.t).exp();
        let map = self.map.clone();
        let mut out = Immersion::new(self.domain, move |u| solgroup::group_mul(a, map(u)));
        if let Some(jac) = &self.jacobian {
            let jac = jac.clone();
            out = out.with_jacobian(move |u| {
                let d = jac(u);
                let mut scaled = [[0.0; 4]; 3];
                for i in 0..3 {
                    scaled[i] = [e * d[i][0], e * d[i][1], em2 * d[i][2], d[i][3]];
                }
                scaled
            });
        }
        if let Some(hess) = &self.hessian {
            let hess = hess.clone();
            out = out.with_hessian(move |u| {
                let h = hess(u);
                let mut scaled = [[[0.0; 4]; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        scaled[i][j] =
                            [e * h[i][j][0], e * h[i][j][1], em2 * h[i][j][2], h[i][j][3]];
                    }
                }
                scaled
            });
        }
        out
    }

    /// Precompose with the affine map u ↦ A·u + b. The new domain must be
    /// supplied by the caller since boxes do not map to boxes in general.
    pub fn reparametrize(
        &self,
        a: [[f64; 3]; 3],
        b: Param3,
        domain: DomainBox,
    ) -> Result<Immersion, HyperError> {
        let det = det3(&a);
        if det.abs() <= tol::DEGENERATE {
            return Err(HyperError::SingularReparametrization(det));
        }
        let apply = move |u: Param3| {
            let mut v = b;
            for r in 0..3 {
                for c in 0..3 {
                    v[r] += a[r][c] * u[c];
                }
            }
            v
        };
        let map = self.map.clone();
        let mut out = Immersion::new(domain, move |u| map(apply(u)));
        if let Some(jac) = &self.jacobian {
            let jac = jac.clone();
            out = out.with_jacobian(move |u| {
                let d = jac(apply(u));
                let mut nd = [[0.0; 4]; 3];
                for i in 0..3 {
                    for k in 0..3 {
                        for c in 0..4 {
                            nd[i][c] += a[k][i] * d[k][c];
                        }
                    }
                }
                nd
            });
        }
        if let Some(hess) = &self.hessian {
            let hess = hess.clone();
            out = out.with_hessian(move |u| {
                let h = hess(apply(u));
                let mut nh = [[[0.0; 4]; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        for k in 0..3 {
                            for l in 0..3 {
                                let w = a[k][i] * a[l][j];
                                if w != 0.0 {
                                    for c in 0..4 {
                                        nh[i][j][c] += w * h[k][l][c];
                                    }
                                }
                            }
                        }
                    }
                }
                nh
            });
        }
        Ok(out)
    }
}

fn offset(u: Param3, axis: usize, s: f64) -> Param3 {
    let mut v = u;
    v[axis] += s;
    v
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// diag(−e⁻ᵗ, −e⁻ᵗ, 2e²ᵗ, 0) applied to coordinate components: the
/// t-derivative of the coordinate→frame conversion.
fn frame_scale_derivative(p: Point, v: [f64; 4]) -> FrameComps {
    let em = (-p.t).exp();
    let e2 = (2.0 * p.t).exp();
    [-em * v[0], -em * v[1], 2.0 * e2 * v[2], 0.0]
}

fn check_in_domain(f: &Immersion, u: Param3) -> Result<(), HyperError> {
    if f.domain().contains(u, 1e-9) {
        Ok(())
    } else {
        Err(HyperError::OutsideDomain { u })
    }
}

/// Frame components of the coordinate tangents plus the base point.
fn tangents_at(f: &Immersion, u: Param3) -> Result<([FrameComps; 3], Point), HyperError> {
    check_in_domain(f, u)?;
    let p = f.point_at(u);
    let d = f.coord_derivs(u);
    let t = [
        coords_to_frame(p, d[0]),
        coords_to_frame(p, d[1]),
        coords_to_frame(p, d[2]),
    ];
    let g = gram(&t);
    let det = g.determinant();
    let scale: f64 = t.iter().map(|v| dot(*v, *v)).product();
    if !(det > tol::DEGENERATE * scale.max(f64::MIN_POSITIVE)) {
        return Err(HyperError::RankDeficient { u, det });
    }
    Ok((t, p))
}

fn gram(t: &[FrameComps; 3]) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| dot(t[i], t[j]))
}

/// The coordinate tangents ∂ᵢF as tangent vectors (frame components).
pub fn coordinate_tangents(f: &Immersion, u: Param3) -> Result<[TangentVector; 3], HyperError> {
    let (t, p) = tangents_at(f, u)?;
    Ok([
        TangentVector::new(p, t[0]),
        TangentVector::new(p, t[1]),
        TangentVector::new(p, t[2]),
    ])
}

/// Generalized cross product Nˡ = ε_{ijkl} T₁ⁱT₂ʲT₃ᵏ (free index last),
/// unnormalized.
fn hodge_normal(t: &[FrameComps; 3]) -> FrameComps {
    let minor = |drop: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != drop).collect();
        let m = [
            [t[0][cols[0]], t[0][cols[1]], t[0][cols[2]]],
            [t[1][cols[0]], t[1][cols[1]], t[1][cols[2]]],
            [t[2][cols[0]], t[2][cols[1]], t[2][cols[2]]],
        ];
        det3(&m)
    };
    [-minor(0), minor(1), -minor(2), minor(3)]
}

/// Unit normal at `u` in the Hodge orientation.
pub fn unit_normal(f: &Immersion, u: Param3) -> Result<TangentVector, HyperError> {
    let (t, p) = tangents_at(f, u)?;
    let n = hodge_normal(&t);
    let len = dot(n, n).sqrt();
    if !(len > tol::DEGENERATE) {
        return Err(HyperError::RankDeficient {
            u,
            det: gram(&t).determinant(),
        });
    }
    Ok(TangentVector::new(
        p,
        [n[0] / len, n[1] / len, n[2] / len, n[3] / len],
    ))
}

/// First and second fundamental forms at one parameter point.
#[derive(Debug, Clone)]
pub struct FundamentalForms {
    pub point: Point,
    /// Frame components of the coordinate tangents.
    pub tangents: [FrameComps; 3],
    /// Induced metric g(∂ᵢ, ∂ⱼ).
    pub g: Matrix3<f64>,
    /// Scalar second fundamental form h(∂ᵢ, ∂ⱼ) relative to [`Self::normal`].
    pub h: Matrix3<f64>,
    /// Unit normal in the Hodge orientation.
    pub normal: TangentVector,
    /// Mean-curvature factor λ = tr(g⁻¹h)/3.
    pub lambda: f64,
}

impl FundamentalForms {
    /// max |h(∂ᵢ,∂ⱼ)|: the totally geodesic residual at this point.
    pub fn h_norm(&self) -> f64 {
        self.h.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// max |h(∂ᵢ,∂ⱼ) − λ g(∂ᵢ,∂ⱼ)|: the umbilicity residual at this point.
    pub fn umbilical_deviation(&self) -> f64 {
        let dev = self.h - self.g * self.lambda;
        dev.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Compute the fundamental forms at `u`.
pub fn second_fundamental_form(f: &Immersion, u: Param3) -> Result<FundamentalForms, HyperError> {
    let (t, p) = tangents_at(f, u)?;
    let g = gram(&t);
    let n = unit_normal(f, u)?;
    let d = f.coord_derivs(u);
    let hess = f.coord_second_derivs(u);
    let mut h = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            // ∇̃_{∂ᵢ}∂ⱼ = ∂ᵢ(frame comps of ∂ⱼ) + connection term.
            let dy = solgroup::add(
                solgroup::scale(d[i][3], frame_scale_derivative(p, d[j])),
                coords_to_frame(p, hess[i][j]),
            );
            let amb = solgroup::add(dy, gamma_frame(t[i], t[j]));
            h[(i, j)] = dot(amb, n.comps);
        }
    }
    let g_inv = g
        .try_inverse()
        .ok_or(HyperError::SingularMetric { u })?;
    let lambda = (g_inv * h).trace() / 3.0;
    Ok(FundamentalForms {
        point: p,
        tangents: t,
        g,
        h,
        normal: n,
        lambda,
    })
}

/// Induced metric g(∂ᵢ, ∂ⱼ) at `u`.
pub fn induced_metric(f: &Immersion, u: Param3) -> Result<Matrix3<f64>, HyperError> {
    let (t, _) = tangents_at(f, u)?;
    Ok(gram(&t))
}

/// Shape operator A = g⁻¹h (acting on parameter components).
pub fn shape_operator(forms: &FundamentalForms) -> Result<Matrix3<f64>, HyperError> {
    let g_inv = forms.g.try_inverse().ok_or(HyperError::SingularMetric {
        u: [f64::NAN; 3],
    })?;
    Ok(g_inv * forms.h)
}

/// Principal curvatures: eigenvalues of the shape operator, ascending.
///
/// Computed from the g-symmetrized form L⁻¹ h L⁻ᵀ (Cholesky g = LLᵀ), which
/// shares the spectrum of g⁻¹h but is symmetric.
pub fn shape_eigenvalues(forms: &FundamentalForms) -> Result<[f64; 3], HyperError> {
    let chol = nalgebra::Cholesky::new(forms.g).ok_or(HyperError::SingularMetric {
        u: [f64::NAN; 3],
    })?;
    let l_inv = chol.l().try_inverse().ok_or(HyperError::SingularMetric {
        u: [f64::NAN; 3],
    })?;
    let sym = l_inv * forms.h * l_inv.transpose();
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok([ev[0], ev[1], ev[2]])
}

/// ∂ₖ g(∂ᵢ,∂ⱼ): exact via the second-derivative callback when available,
/// otherwise central differences with `step`.
fn metric_derivatives(f: &Immersion, u: Param3, step: f64) -> Result<Rank3, HyperError> {
    let mut dg = [[[0.0; 3]; 3]; 3];
    if f.has_exact_derivatives() {
        let p = f.point_at(u);
        let d = f.coord_derivs(u);
        let hess = f.coord_second_derivs(u);
        let t = [
            coords_to_frame(p, d[0]),
            coords_to_frame(p, d[1]),
            coords_to_frame(p, d[2]),
        ];
        let mut dt = [[[0.0; 4]; 3]; 3];
        for (k, row) in dt.iter_mut().enumerate() {
            for (i, slot) in row.iter_mut().enumerate() {
                *slot = solgroup::add(
                    solgroup::scale(d[k][3], frame_scale_derivative(p, d[i])),
                    coords_to_frame(p, hess[k][i]),
                );
            }
        }
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    dg[k][i][j] = dot(dt[k][i], t[j]) + dot(t[i], dt[k][j]);
                }
            }
        }
    } else {
        for k in 0..3 {
            let gp = induced_metric(f, offset(u, k, step))?;
            let gm = induced_metric(f, offset(u, k, -step))?;
            for i in 0..3 {
                for j in 0..3 {
                    dg[k][i][j] = (gp[(i, j)] - gm[(i, j)]) / (2.0 * step);
                }
            }
        }
    }
    Ok(dg)
}

/// Christoffel symbols Γˡᵢⱼ of the induced metric.
pub fn induced_christoffels(f: &Immersion, u: Param3, step: f64) -> Result<Rank3, HyperError> {
    let g = induced_metric(f, u)?;
    let g_inv = g.try_inverse().ok_or(HyperError::SingularMetric { u })?;
    let dg = metric_derivatives(f, u, step)?;
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut sum = 0.0;
                for m in 0..3 {
                    sum += g_inv[(l, m)] * (dg[i][m][j] + dg[j][i][m] - dg[m][i][j]);
                }
                gamma[l][i][j] = 0.5 * sum;
            }
        }
    }
    Ok(gamma)
}

fn check_interior(f: &Immersion, u: Param3, pad: f64) -> Result<(), HyperError> {
    let d = f.domain();
    let ok = (0..3).all(|k| u[k] >= d.lo[k] + pad - 1e-12 && u[k] <= d.hi[k] - pad + 1e-12);
    if ok {
        Ok(())
    } else if d.contains(u, 1e-9) {
        Err(HyperError::BoundaryProximity { u, step: pad })
    } else {
        Err(HyperError::OutsideDomain { u })
    }
}

/// Covariant derivative of the scalar second fundamental form:
/// (∇h)ᵢⱼₖ = ∂ᵢ h(∂ⱼ,∂ₖ) − Γˡᵢⱼ h(∂ₗ,∂ₖ) − Γˡᵢₖ h(∂ⱼ,∂ₗ).
///
/// The first index is the differentiation direction. The normal bundle is a
/// trivial line bundle with ∇⊥N = 0, so no normal-connection term appears.
/// `u` must sit at least `step` inside the domain.
pub fn nabla_h(f: &Immersion, u: Param3, step: f64) -> Result<Rank3, HyperError> {
    check_interior(f, u, step)?;
    let gamma = induced_christoffels(f, u, step)?;
    let h0 = second_fundamental_form(f, u)?.h;
    let mut dh = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        let hp = second_fundamental_form(f, offset(u, i, step))?.h;
        let hm = second_fundamental_form(f, offset(u, i, -step))?.h;
        for j in 0..3 {
            for k in 0..3 {
                dh[i][j][k] = (hp[(j, k)] - hm[(j, k)]) / (2.0 * step);
            }
        }
    }
    let mut out = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut v = dh[i][j][k];
                for l in 0..3 {
                    v -= gamma[l][i][j] * h0[(l, k)] + gamma[l][i][k] * h0[(j, l)];
                }
                out[i][j][k] = v;
            }
        }
    }
    Ok(out)
}

/// max |(∇h)ᵢⱼₖ|.
pub fn nabla_h_norm(nh: &Rank3) -> f64 {
    let mut m = 0.0f64;
    for plane in nh {
        for row in plane {
            for v in row {
                m = m.max(v.abs());
            }
        }
    }
    m
}

/// max |(∇h)ᵢⱼₖ − (∇h)ⱼᵢₖ|: the Codazzi residual of ∇h.
pub fn codazzi_asymmetry(nh: &Rank3) -> f64 {
    let mut m = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                m = m.max((nh[i][j][k] - nh[j][i][k]).abs());
            }
        }
    }
    m
}

/// Residuals of the Gauss and Codazzi equations at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussCodazziResidual {
    /// max component mismatch of (R̃(∂ᵢ,∂ⱼ)∂ₖ)ᵀ against
    /// R(∂ᵢ,∂ⱼ)∂ₖ − A_{h(∂ⱼ,∂ₖ)}∂ᵢ + A_{h(∂ᵢ,∂ₖ)}∂ⱼ.
    pub gauss: f64,
    /// max mismatch of ⟨R̃(∂ᵢ,∂ⱼ)∂ₖ, N⟩ against (∇h)ᵢⱼₖ − (∇h)ⱼᵢₖ.
    pub codazzi: f64,
}

/// Check the Gauss and Codazzi equations at `u` against the ambient
/// curvature. Needs `2·step` of interior room for the ∂Γ stencil.
pub fn gauss_codazzi_check(
    f: &Immersion,
    u: Param3,
    step: f64,
) -> Result<GaussCodazziResidual, HyperError> {
    check_interior(f, u, 2.0 * step)?;
    let forms = second_fundamental_form(f, u)?;
    let gamma = induced_christoffels(f, u, step)?;
    let nh = nabla_h(f, u, step)?;
    let a_op = shape_operator(&forms)?;
    // Fourth-order central differences of Γ; with exact metric derivatives
    // the only noise left is roundoff.
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        let gp = induced_christoffels(f, offset(u, i, step), step)?;
        let gm = induced_christoffels(f, offset(u, i, -step), step)?;
        let gp2 = induced_christoffels(f, offset(u, i, 2.0 * step), step)?;
        let gm2 = induced_christoffels(f, offset(u, i, -2.0 * step), step)?;
        for l in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    dgamma[i][l][j][k] = (8.0 * (gp[l][j][k] - gm[l][j][k])
                        - (gp2[l][j][k] - gm2[l][j][k]))
                        / (12.0 * step);
                }
            }
        }
    }
    let t = forms.tangents;
    let n = forms.normal.comps;
    let mut worst_gauss = 0.0f64;
    let mut worst_codazzi = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let amb = curvature_on_comps(t[i], t[j], t[k]);
                let normal_part = dot(amb, n);
                let tangential = solgroup::axpy(amb, -normal_part, n);
                // Induced curvature R(∂ᵢ,∂ⱼ)∂ₖ in parameter components.
                let mut rhs = [0.0f64; 4];
                for l in 0..3 {
                    let mut r = dgamma[i][l][j][k] - dgamma[j][l][i][k];
                    for m in 0..3 {
                        r += gamma[l][i][m] * gamma[m][j][k] - gamma[l][j][m] * gamma[m][i][k];
                    }
                    let coeff = r - forms.h[(j, k)] * a_op[(l, i)] + forms.h[(i, k)] * a_op[(l, j)];
                    rhs = solgroup::axpy(rhs, coeff, t[l]);
                }
                worst_gauss = worst_gauss.max(solgroup::max_abs(solgroup::sub(tangential, rhs)));
                let codazzi_rhs = nh[i][j][k] - nh[j][i][k];
                worst_codazzi = worst_codazzi.max((normal_part - codazzi_rhs).abs());
            }
        }
    }
    Ok(GaussCodazziResidual {
        gauss: worst_gauss,
        codazzi: worst_codazzi,
    })
}

/// Sectional curvature of the induced metric on the plane spanned by the
/// parameter-direction combinations a = Σ aᵢ∂ᵢ and b = Σ bᵢ∂ᵢ, evaluated
/// through the Gauss equation (ambient curvature plus h terms), so no
/// finite differences are involved.
pub fn induced_sectional_curvature(
    f: &Immersion,
    u: Param3,
    a: Param3,
    b: Param3,
) -> Result<f64, HyperError> {
    let forms = second_fundamental_form(f, u)?;
    let t = forms.tangents;
    let mut x = [0.0; 4];
    let mut y = [0.0; 4];
    for i in 0..3 {
        x = solgroup::axpy(x, a[i], t[i]);
        y = solgroup::axpy(y, b[i], t[i]);
    }
    let quad = |p: Param3, q: Param3| {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += p[i] * q[j] * forms.g[(i, j)];
            }
        }
        s
    };
    let hval = |p: Param3, q: Param3| {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += p[i] * q[j] * forms.h[(i, j)];
            }
        }
        s
    };
    let denom = quad(a, a) * quad(b, b) - quad(a, b) * quad(a, b);
    if !(denom > tol::DEGENERATE) {
        return Err(HyperError::Geom(GeomError::DegeneratePlane(denom)));
    }
    let ambient = dot(curvature_on_comps(x, y, y), x);
    let num = ambient + hval(a, a) * hval(b, b) - hval(a, b) * hval(a, b);
    Ok(num / denom)
}

/// Finite-difference Weingarten check at `u`: compares ∇̃_{∂ᵢ}N with −A(∂ᵢ)
/// and returns the worst component mismatch (including the normal component
/// of ∇̃_{∂ᵢ}N, which must vanish).
pub fn weingarten_residual(f: &Immersion, u: Param3, step: f64) -> Result<f64, HyperError> {
    check_interior(f, u, step)?;
    let forms = second_fundamental_form(f, u)?;
    let a_op = shape_operator(&forms)?;
    let mut worst = 0.0f64;
    for i in 0..3 {
        let np = unit_normal(f, offset(u, i, step))?.comps;
        let nm = unit_normal(f, offset(u, i, -step))?.comps;
        let dn = solgroup::scale(1.0 / (2.0 * step), solgroup::sub(np, nm));
        let cov = solgroup::add(dn, gamma_frame(forms.tangents[i], forms.normal.comps));
        let mut expect = [0.0f64; 4];
        for l in 0..3 {
            expect = solgroup::axpy(expect, -a_op[(l, i)], forms.tangents[l]);
        }
        worst = worst.max(solgroup::max_abs(solgroup::sub(cov, expect)));
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Sample-grid layout for [`classify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Points per parameter axis.
    pub n: [usize; 3],
    /// Fraction of each side length kept away from the boundary.
    pub margin: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n: [5, 5, 5],
            margin: 0.05,
        }
    }
}

impl GridSpec {
    pub fn points(&self, domain: &DomainBox) -> Vec<Param3> {
        let inner = domain.shrunk(self.margin);
        let axis = |k: usize| -> Vec<f64> {
            let n = self.n[k].max(1);
            if n == 1 {
                vec![0.5 * (inner.lo[k] + inner.hi[k])]
            } else {
                (0..n)
                    .map(|i| {
                        inner.lo[k]
                            + (inner.hi[k] - inner.lo[k]) * (i as f64) / ((n - 1) as f64)
                    })
                    .collect()
            }
        };
        let (xs, ys, zs) = (axis(0), axis(1), axis(2));
        let mut pts = Vec::with_capacity(xs.len() * ys.len() * zs.len());
        for &x in &xs {
            for &y in &ys {
                for &z in &zs {
                    pts.push([x, y, z]);
                }
            }
        }
        pts
    }
}

/// Thresholds for the four class verdicts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub geodesic: f64,
    pub umbilical: f64,
    pub parallel: f64,
    pub codazzi: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            geodesic: tol::GEODESIC,
            umbilical: tol::UMBILICAL,
            parallel: tol::PARALLEL,
            codazzi: tol::CODAZZI,
        }
    }
}

/// Residuals and λ at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRecord {
    pub u: Param3,
    pub lambda: f64,
    pub h_norm: f64,
    pub umbilical_dev: f64,
    pub nabla_h_norm: f64,
    pub codazzi_dev: f64,
}

/// Grid-wide classification result. Verdicts are residuals thresholded
/// against the tolerances; they are data, not errors.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub samples: Vec<SampleRecord>,
    pub residual_totally_geodesic: f64,
    pub residual_totally_umbilical: f64,
    pub residual_parallel: f64,
    pub residual_codazzi: f64,
    pub totally_geodesic: bool,
    pub totally_umbilical: bool,
    pub parallel: bool,
    pub codazzi: bool,
    pub lambda_range: (f64, f64),
    /// Worst Gauss-equation residual over the grid, when requested.
    pub gauss_residual: Option<f64>,
    /// Worst Codazzi-equation residual over the grid, when requested.
    pub codazzi_eq_residual: Option<f64>,
}

fn classify_impl(
    f: &Immersion,
    grid: &GridSpec,
    tols: &Tolerances,
    with_equations: bool,
) -> Result<ClassificationReport, HyperError> {
    let pts = grid.points(&f.domain());
    if pts.is_empty() {
        return Err(HyperError::EmptyGrid);
    }
    let step = tol::STEP_INDUCED;
    let results: Result<Vec<(SampleRecord, Option<GaussCodazziResidual>)>, HyperError> = pts
        .par_iter()
        .map(|&u| {
            let forms = second_fundamental_form(f, u)?;
            let nh = nabla_h(f, u, step)?;
            let rec = SampleRecord {
                u,
                lambda: forms.lambda,
                h_norm: forms.h_norm(),
                umbilical_dev: forms.umbilical_deviation(),
                nabla_h_norm: nabla_h_norm(&nh),
                codazzi_dev: codazzi_asymmetry(&nh),
            };
            let eqs = if with_equations {
                Some(gauss_codazzi_check(f, u, step)?)
            } else {
                None
            };
            Ok((rec, eqs))
        })
        .collect();
    let results = results?;
    let mut report = ClassificationReport {
        grid: *grid,
        tolerances: *tols,
        samples: Vec::with_capacity(results.len()),
        residual_totally_geodesic: 0.0,
        residual_totally_umbilical: 0.0,
        residual_parallel: 0.0,
        residual_codazzi: 0.0,
        totally_geodesic: false,
        totally_umbilical: false,
        parallel: false,
        codazzi: false,
        lambda_range: (f64::INFINITY, f64::NEG_INFINITY),
        gauss_residual: None,
        codazzi_eq_residual: None,
    };
    let mut gauss_max = 0.0f64;
    let mut codazzi_eq_max = 0.0f64;
    for (rec, eqs) in results {
        report.residual_totally_geodesic = report.residual_totally_geodesic.max(rec.h_norm);
        report.residual_totally_umbilical =
            report.residual_totally_umbilical.max(rec.umbilical_dev);
        report.residual_parallel = report.residual_parallel.max(rec.nabla_h_norm);
        report.residual_codazzi = report.residual_codazzi.max(rec.codazzi_dev);
        report.lambda_range.0 = report.lambda_range.0.min(rec.lambda);
        report.lambda_range.1 = report.lambda_range.1.max(rec.lambda);
        if let Some(e) = eqs {
            gauss_max = gauss_max.max(e.gauss);
            codazzi_eq_max = codazzi_eq_max.max(e.codazzi);
        }
        report.samples.push(rec);
    }
    report.totally_geodesic = report.residual_totally_geodesic <= tols.geodesic;
    report.totally_umbilical = report.residual_totally_umbilical <= tols.umbilical;
    report.parallel = report.residual_parallel <= tols.parallel;
    report.codazzi = report.residual_codazzi <= tols.codazzi;
    if with_equations {
        report.gauss_residual = Some(gauss_max);
        report.codazzi_eq_residual = Some(codazzi_eq_max);
    }
    Ok(report)
}

/// Sweep the grid and threshold the four class residuals.
pub fn classify(
    f: &Immersion,
    grid: &GridSpec,
    tols: &Tolerances,
) -> Result<ClassificationReport, HyperError> {
    classify_impl(f, grid, tols, false)
}

/// [`classify`] plus the Gauss and Codazzi equation residuals over the grid.
pub fn classify_with_equations(
    f: &Immersion,
    grid: &GridSpec,
    tols: &Tolerances,
) -> Result<ClassificationReport, HyperError> {
    classify_impl(f, grid, tols, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// The slice t = c with its exact derivatives.
    fn t_plane(c: f64) -> Immersion {
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

    /// The slice z = c with its exact derivatives.
    fn z_plane(c: f64) -> Immersion {
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

    /// Cylinder over the unit circle in the xy-plane.
    fn circle_cylinder() -> Immersion {
        Immersion::new(
            DomainBox::new([0.0, -1.0, -1.0], [std::f64::consts::TAU, 1.0, 1.0]),
            |u| Point::new(u[0].cos(), u[0].sin(), u[1], u[2]),
        )
        .with_jacobian(|u| {
            [
                [-u[0].sin(), u[0].cos(), 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]
        })
        .with_hessian(|u| {
            let mut h = [[[0.0; 4]; 3]; 3];
            h[0][0] = [-u[0].cos(), -u[0].sin(), 0.0, 0.0];
            h
        })
    }

    #[test]
    fn t_plane_normal_is_e4() {
        let n = unit_normal(&t_plane(0.4), [0.1, -0.2, 0.3]).unwrap();
        assert_abs_diff_eq!(n.comps[3], 1.0, epsilon = 1e-12);
        assert!(solgroup::max_abs([n.comps[0], n.comps[1], n.comps[2], 0.0]) < 1e-12);
    }

    #[test]
    fn z_plane_normal_is_minus_e3() {
        let n = unit_normal(&z_plane(0.7), [0.0, 0.0, 0.2]).unwrap();
        assert_abs_diff_eq!(n.comps[2], -1.0, epsilon = 1e-12);
    }

    #[test]
    fn t_plane_fundamental_forms_closed_form() {
        let c = 0.3;
        let forms = second_fundamental_form(&t_plane(c), [0.2, 0.5, -0.1]).unwrap();
        let em2 = (-2.0 * c).exp();
        let e4 = (4.0 * c).exp();
        assert_abs_diff_eq!(forms.g[(0, 0)], em2, epsilon = 1e-12);
        assert_abs_diff_eq!(forms.g[(2, 2)], e4, epsilon = 1e-12);
        assert_abs_diff_eq!(forms.h[(0, 0)], em2, epsilon = 1e-12);
        assert_abs_diff_eq!(forms.h[(1, 1)], em2, epsilon = 1e-12);
        assert_abs_diff_eq!(forms.h[(2, 2)], -2.0 * e4, epsilon = 1e-11);
        assert_abs_diff_eq!(forms.lambda, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn t_plane_shape_operator_spectrum() {
        let forms = second_fundamental_form(&t_plane(0.0), [0.0; 3]).unwrap();
        let ev = shape_eigenvalues(&forms).unwrap();
        assert_abs_diff_eq!(ev[0], -2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ev[2], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn z_plane_is_totally_geodesic_and_flat_minus_one() {
        let f = z_plane(1.2);
        let forms = second_fundamental_form(&f, [0.3, -0.4, 0.6]).unwrap();
        assert!(forms.h_norm() < 1e-12);
        for (a, b) in [
            ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
            ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
            ([0.3, -0.7, 0.2], [1.1, 0.4, -0.5]),
        ] {
            let k = induced_sectional_curvature(&f, [0.3, -0.4, 0.6], a, b).unwrap();
            assert_abs_diff_eq!(k, -1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn t_plane_induced_curvature_vanishes() {
        let f = t_plane(0.5);
        for (a, b) in [
            ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
            ([0.4, 0.9, -0.3], [-0.2, 0.8, 1.0]),
        ] {
            let k = induced_sectional_curvature(&f, [0.1, 0.1, 0.1], a, b).unwrap();
            assert_abs_diff_eq!(k, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn t_plane_classifies_parallel_not_umbilical() {
        let rep = classify(&t_plane(0.2), &GridSpec::default(), &Tolerances::default()).unwrap();
        assert!(!rep.totally_geodesic);
        assert!(!rep.totally_umbilical);
        assert!(rep.parallel, "∇h residual {}", rep.residual_parallel);
        assert!(rep.codazzi);
    }

    #[test]
    fn z_plane_classifies_totally_geodesic() {
        let rep = classify(&z_plane(-0.4), &GridSpec::default(), &Tolerances::default()).unwrap();
        assert!(rep.totally_geodesic, "h residual {}", rep.residual_totally_geodesic);
        assert!(rep.totally_umbilical);
        assert!(rep.parallel);
        assert!(rep.codazzi);
        assert!(rep.residual_totally_geodesic < 1e-10);
    }

    #[test]
    fn cylinder_h_matches_scaled_curve_curvature() {
        // For a cylinder over γ the only curved direction is the profile:
        // h(W,W) = e^t κ_γ with W the unit tangent of the profile circle,
        // up to the orientation of the chosen normal.
        let f = circle_cylinder();
        let u = [1.1, 0.2, -0.3];
        let forms = second_fundamental_form(&f, u).unwrap();
        let hww = forms.h[(0, 0)] / forms.g[(0, 0)];
        let kappa = -1.0; // counterclockwise unit circle
        let reference_n = [forms.tangents[0][1], -forms.tangents[0][0], 0.0, 0.0];
        let orient = dot(forms.normal.comps, reference_n).signum();
        assert_abs_diff_eq!(orient * hww, u[2].exp() * kappa, epsilon = 1e-10);
        assert!(forms.h[(1, 1)].abs() < 1e-10);
        assert!(forms.h[(2, 2)].abs() < 1e-10);
    }

    #[test]
    fn cylinder_is_codazzi_but_not_parallel() {
        let rep = classify(
            &circle_cylinder(),
            &GridSpec::default(),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(!rep.totally_geodesic);
        assert!(!rep.parallel, "∇h residual {}", rep.residual_parallel);
        assert!(rep.residual_parallel > 1e-2);
        assert!(rep.codazzi, "Codazzi residual {}", rep.residual_codazzi);
        assert!(rep.residual_codazzi < 1e-4);
    }

    #[test]
    fn cylinder_nabla_h_closed_form() {
        // With the Hodge normal, h = diag(e^{-u₃}, 0, 0) for the unit circle
        // and the only nonzero ∇h components are the symmetrized (3,1,1)
        // slots with value e^{-u₃}.
        let u = [0.7, 0.1, 0.4];
        let nh = nabla_h(&circle_cylinder(), u, tol::STEP_INDUCED).unwrap();
        let expect = (-u[2]).exp();
        assert_abs_diff_eq!(nh[2][0][0], expect, epsilon = 1e-6);
        assert_abs_diff_eq!(nh[0][2][0], expect, epsilon = 1e-6);
        assert_abs_diff_eq!(nh[0][0][2], expect, epsilon = 1e-6);
        assert!(nh[1][1][1].abs() < 1e-8);
    }

    #[test]
    fn gauss_codazzi_hold_on_cylinder() {
        let res = gauss_codazzi_check(&circle_cylinder(), [0.9, 0.0, 0.5], tol::STEP_INDUCED)
            .unwrap();
        assert!(res.gauss < tol::GAUSS_CODAZZI, "gauss {}", res.gauss);
        assert!(res.codazzi < tol::GAUSS_CODAZZI, "codazzi {}", res.codazzi);
    }

    #[test]
    fn gauss_codazzi_residuals_converge_with_step() {
        // First order or better as the step halves (worst grid corner).
        let f = circle_cylinder();
        let u = [0.9, 0.0, 0.5];
        let coarse = gauss_codazzi_check(&f, u, 2e-2).unwrap();
        let fine = gauss_codazzi_check(&f, u, 1e-2).unwrap();
        assert!(
            coarse.gauss >= 2.0 * fine.gauss || fine.gauss < 1e-10,
            "gauss {} -> {}",
            coarse.gauss,
            fine.gauss
        );
    }

    #[test]
    fn weingarten_relation_holds_on_cylinder() {
        let res = weingarten_residual(&circle_cylinder(), [1.3, -0.2, 0.1], tol::STEP_INDUCED)
            .unwrap();
        assert!(res < 1e-6, "weingarten residual {res}");
    }

    #[test]
    fn h_is_symmetric_on_cylinder_grid() {
        let f = circle_cylinder();
        for u in GridSpec::default().points(&f.domain()) {
            let forms = second_fundamental_form(&f, u).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert!(
                        (forms.h[(i, j)] - forms.h[(j, i)]).abs() < 1e-9,
                        "asymmetry at {u:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn orientation_flip_preserves_residuals_and_flips_lambda() {
        let f = circle_cylinder();
        // Swap u₂ and u₃: orientation-reversing, so the normal flips.
        let swapped = f
            .reparametrize(
                [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]],
                [0.0; 3],
                f.domain(),
            )
            .unwrap();
        let u = [1.0, 0.3, -0.2];
        let a = second_fundamental_form(&f, u).unwrap();
        let b = second_fundamental_form(&swapped, [u[0], u[2], u[1]]).unwrap();
        assert_abs_diff_eq!(a.lambda, -b.lambda, epsilon = 1e-12);
        assert_abs_diff_eq!(a.h_norm(), b.h_norm(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            a.umbilical_deviation(),
            b.umbilical_deviation(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn reparametrization_rejects_singular_matrix() {
        let f = t_plane(0.0);
        let err = f
            .reparametrize(
                [[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
                [0.0; 3],
                f.domain(),
            )
            .unwrap_err();
        assert!(matches!(err, HyperError::SingularReparametrization(_)));
    }

    #[test]
    fn degenerate_immersion_reports_rank_deficiency() {
        let f = Immersion::new(DomainBox::symmetric_unit(), |u| {
            Point::new(u[0], u[0], 0.0, 0.0)
        });
        assert!(matches!(
            unit_normal(&f, [0.0; 3]),
            Err(HyperError::RankDeficient { .. })
        ));
    }

    #[test]
    fn out_of_domain_is_rejected() {
        let f = t_plane(0.0);
        assert!(matches!(
            second_fundamental_form(&f, [2.0, 0.0, 0.0]),
            Err(HyperError::OutsideDomain { .. })
        ));
        assert!(matches!(
            nabla_h(&f, [1.0, 0.0, 0.0], 1e-4),
            Err(HyperError::BoundaryProximity { .. })
        ));
    }

    #[test]
    fn finite_difference_fallback_matches_exact_derivatives() {
        let exact = circle_cylinder();
        let approx_only = Immersion::new(exact.domain(), move |u| {
            Point::new(u[0].cos(), u[0].sin(), u[1], u[2])
        });
        let u = [0.8, 0.1, -0.2];
        let a = second_fundamental_form(&exact, u).unwrap();
        let b = second_fundamental_form(&approx_only, u).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(a.g[(i, j)], b.g[(i, j)], epsilon = 1e-8);
                assert_abs_diff_eq!(a.h[(i, j)], b.h[(i, j)], epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn left_translation_changes_residuals_negligibly() {
        let f = circle_cylinder();
        let g = f.left_translate(Point::new(1.0, -2.0, 0.5, 0.3));
        let grid = GridSpec::default();
        let tols = Tolerances::default();
        let a = classify(&f, &grid, &tols).unwrap();
        let b = classify(&g, &grid, &tols).unwrap();
        assert!((a.residual_totally_geodesic - b.residual_totally_geodesic).abs() < 1e-10);
        assert!((a.residual_totally_umbilical - b.residual_totally_umbilical).abs() < 1e-10);
        assert!((a.residual_parallel - b.residual_parallel).abs() < 1e-10);
        assert!((a.residual_codazzi - b.residual_codazzi).abs() < 1e-10);
        assert_eq!(a.totally_geodesic, b.totally_geodesic);
        assert_eq!(a.parallel, b.parallel);
        assert_eq!(a.codazzi, b.codazzi);
    }
}
