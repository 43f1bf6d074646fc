//! The solvable Lie group Sol⁴₀ and its left-invariant Riemannian geometry.
//!
//! The underlying space is ℝ⁴ with coordinates (x, y, z, t) and group law
//!
//! ```text
//! (a, b, c, d) · (x, y, z, t) = (a + eᵈx, b + eᵈy, c + e⁻²ᵈz, d + t).
//! ```
//!
//! The left-invariant metric is g = e⁻²ᵗ(dx² + dy²) + e⁴ᵗdz² + dt², with
//! orthonormal frame
//!
//! ```text
//! E₁ = eᵗ∂x,   E₂ = eᵗ∂y,   E₃ = e⁻²ᵗ∂z,   E₄ = ∂t.
//! ```
//!
//! Because the frame is left invariant, the Levi-Civita connection, the
//! curvature tensor, the pair of anticommuting-free almost complex structures
//! J₊, J₋ and the projector P onto E₄ all have constant components in this
//! frame. Those constant tables live here, together with the pointwise
//! machinery (coordinate/frame conversions, metric evaluation, covariant
//! differentiation of vector fields, sectional curvature) built on top of
//! them.
//!
//! Frame indices are 0-based throughout: index 0 ↔ E₁, …, index 3 ↔ E₄.

use std::sync::Arc;

use thiserror::Error;

/// Number of frame legs (the group is four dimensional).
pub const DIM: usize = 4;

/// Components of a tangent vector in the orthonormal frame {E₁, E₂, E₃, E₄}.
pub type FrameComps = [f64; 4];

/// Components of a tangent vector in the coordinate basis {∂x, ∂y, ∂z, ∂t}.
pub type CoordComps = [f64; 4];

/// Errors from the pointwise geometry operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// Two tangent vectors were combined but sit at different base points.
    #[error("base point mismatch: {0:?} vs {1:?}")]
    BasePointMismatch(Point, Point),
    /// A frame index outside 0..4 was supplied.
    #[error("frame index {0} out of range (expected 0..4)")]
    IndexOutOfRange(usize),
    /// A sectional-curvature plane was numerically degenerate.
    #[error("degenerate plane: |v|²|w|² - g(v,w)² = {0:.3e}")]
    DegeneratePlane(f64),
    /// A computation produced a non-finite value.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

/// A point of Sol⁴₀ in global coordinates (x, y, z, t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

impl Point {
    pub fn new(x: f64, y: f64, z: f64, t: f64) -> Self {
        Point { x, y, z, t }
    }

    /// The group identity (0, 0, 0, 0).
    pub fn identity() -> Self {
        Point::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.t.is_finite()
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.x, self.y, self.z, self.t]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Point::new(a[0], a[1], a[2], a[3])
    }
}

/// A tangent vector: a base point plus components in the orthonormal frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub base: Point,
    pub comps: FrameComps,
}

impl TangentVector {
    pub fn new(base: Point, comps: FrameComps) -> Self {
        TangentVector { base, comps }
    }

    /// The frame leg Eᵢ at `base` (index 0 ↔ E₁).
    pub fn frame_leg(base: Point, i: usize) -> Result<Self, GeomError> {
        check_index(i)?;
        let mut comps = [0.0; 4];
        comps[i] = 1.0;
        Ok(TangentVector { base, comps })
    }

    /// Norm induced by the metric (Euclidean on frame components).
    pub fn norm(&self) -> f64 {
        dot(self.comps, self.comps).sqrt()
    }
}

fn check_index(i: usize) -> Result<(), GeomError> {
    if i < DIM {
        Ok(())
    } else {
        Err(GeomError::IndexOutOfRange(i))
    }
}

fn check_same_base(a: &TangentVector, b: &TangentVector) -> Result<(), GeomError> {
    if a.base == b.base {
        Ok(())
    } else {
        Err(GeomError::BasePointMismatch(a.base, b.base))
    }
}

/// Euclidean dot product of frame components. Equals the metric because the
/// frame is orthonormal.
pub fn dot(a: FrameComps, b: FrameComps) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub(crate) fn add(a: FrameComps, b: FrameComps) -> FrameComps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub(crate) fn sub(a: FrameComps, b: FrameComps) -> FrameComps {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

pub(crate) fn scale(s: f64, a: FrameComps) -> FrameComps {
    [s * a[0], s * a[1], s * a[2], s * a[3]]
}

/// a + s·b in one shot.
pub(crate) fn axpy(a: FrameComps, s: f64, b: FrameComps) -> FrameComps {
    [
        a[0] + s * b[0],
        a[1] + s * b[1],
        a[2] + s * b[2],
        a[3] + s * b[3],
    ]
}

pub(crate) fn max_abs(a: FrameComps) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

// ---------------------------------------------------------------------------
// Group structure
// ---------------------------------------------------------------------------

/// Group multiplication p · q.
pub fn group_mul(p: Point, q: Point) -> Point {
    let e = p.t.exp();
    let em2 = (-2.0 * p.t).exp();
    Point::new(p.x + e * q.x, p.y + e * q.y, p.z + em2 * q.z, p.t + q.t)
}

/// Group inverse p⁻¹ = (−e⁻ᵗx, −e⁻ᵗy, −e²ᵗz, −t).
pub fn group_inv(p: Point) -> Point {
    let em = (-p.t).exp();
    let e2 = (2.0 * p.t).exp();
    Point::new(-em * p.x, -em * p.y, -e2 * p.z, -p.t)
}

/// Left translation L_a(p) = a · p.
pub fn left_translate(a: Point, p: Point) -> Point {
    group_mul(a, p)
}

// ---------------------------------------------------------------------------
// Frame and metric
// ---------------------------------------------------------------------------

/// Coordinate components of the frame legs at `p`: row i holds Eᵢ₊₁ in the
/// basis {∂x, ∂y, ∂z, ∂t}.
pub fn frame_at(p: Point) -> [[f64; 4]; 4] {
    let e = p.t.exp();
    let em2 = (-2.0 * p.t).exp();
    [
        [e, 0.0, 0.0, 0.0],
        [0.0, e, 0.0, 0.0],
        [0.0, 0.0, em2, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Convert frame components to coordinate components at `p`.
pub fn frame_to_coords(p: Point, v: FrameComps) -> CoordComps {
    let e = p.t.exp();
    let em2 = (-2.0 * p.t).exp();
    [v[0] * e, v[1] * e, v[2] * em2, v[3]]
}

/// Convert coordinate components to frame components at `p`.
pub fn coords_to_frame(p: Point, v: CoordComps) -> FrameComps {
    let em = (-p.t).exp();
    let e2 = (2.0 * p.t).exp();
    [v[0] * em, v[1] * em, v[2] * e2, v[3]]
}

/// The left-invariant metric, exposed in the coordinate basis.
///
/// At a point with height t the matrix is diag(e⁻²ᵗ, e⁻²ᵗ, e⁴ᵗ, 1).
#[derive(Debug, Clone, Copy, Default)]
pub struct Metric4;

impl Metric4 {
    /// Metric matrix in the coordinate basis at `p`.
    pub fn coord_matrix(&self, p: Point) -> [[f64; 4]; 4] {
        let em2 = (-2.0 * p.t).exp();
        let e4 = (4.0 * p.t).exp();
        let mut g = [[0.0; 4]; 4];
        g[0][0] = em2;
        g[1][1] = em2;
        g[2][2] = e4;
        g[3][3] = 1.0;
        g
    }

    /// Evaluate g(v, w) for coordinate components at `p`.
    pub fn eval_coords(&self, p: Point, v: CoordComps, w: CoordComps) -> f64 {
        let g = self.coord_matrix(p);
        (0..4).map(|i| g[i][i] * v[i] * w[i]).sum()
    }
}

/// Evaluate the metric on two tangent vectors at a common base point.
pub fn metric_eval(v: &TangentVector, w: &TangentVector) -> Result<f64, GeomError> {
    check_same_base(v, w)?;
    Ok(dot(v.comps, w.comps))
}

// ---------------------------------------------------------------------------
// Lie brackets, connection, curvature: the constant frame tables
// ---------------------------------------------------------------------------

/// Lie bracket [Eᵢ, Eⱼ] in frame components.
///
/// The only nonzero brackets are [E₁, E₄] = −E₁, [E₂, E₄] = −E₂ and
/// [E₃, E₄] = 2E₃.
pub fn lie_bracket_frame(i: usize, j: usize) -> Result<FrameComps, GeomError> {
    check_index(i)?;
    check_index(j)?;
    Ok(bracket_table(i, j))
}

pub(crate) fn bracket_table(i: usize, j: usize) -> FrameComps {
    let mut v = [0.0; 4];
    match (i, j) {
        (0, 3) => v[0] = -1.0,
        (3, 0) => v[0] = 1.0,
        (1, 3) => v[1] = -1.0,
        (3, 1) => v[1] = 1.0,
        (2, 3) => v[2] = 2.0,
        (3, 2) => v[2] = -2.0,
        _ => {}
    }
    v
}

/// Levi-Civita connection on the frame: ∇_{Eᵢ}Eⱼ in frame components.
///
/// Nonzero entries: ∇₁E₁ = E₄, ∇₁E₄ = −E₁, ∇₂E₂ = E₄, ∇₂E₄ = −E₂,
/// ∇₃E₃ = −2E₄, ∇₃E₄ = 2E₃; the E₄ row vanishes identically.
pub fn nabla_frame(i: usize, j: usize) -> Result<FrameComps, GeomError> {
    check_index(i)?;
    check_index(j)?;
    Ok(nabla_table(i, j))
}

pub(crate) fn nabla_table(i: usize, j: usize) -> FrameComps {
    let mut v = [0.0; 4];
    match (i, j) {
        (0, 0) => v[3] = 1.0,
        (0, 3) => v[0] = -1.0,
        (1, 1) => v[3] = 1.0,
        (1, 3) => v[1] = -1.0,
        (2, 2) => v[3] = -2.0,
        (2, 3) => v[2] = 2.0,
        _ => {}
    }
    v
}

/// ∇̃_A B for constant frame components A, B (the bilinear extension of the
/// connection table, with no derivative term).
pub(crate) fn gamma_frame(a: FrameComps, b: FrameComps) -> FrameComps {
    [
        -a[0] * b[3],
        -a[1] * b[3],
        2.0 * a[2] * b[3],
        a[0] * b[0] + a[1] * b[1] - 2.0 * a[2] * b[2],
    ]
}

/// Curvature tensor on frame legs: R(Eᵢ, Eⱼ)Eₖ in frame components.
///
/// Only six independent components are stored; the rest follow from the
/// antisymmetries and pair symmetry of R, and components not so determined
/// vanish. Sign convention: R(X, Y)Z = ∇_X∇_YZ − ∇_Y∇_XZ − ∇_{[X,Y]}Z.
pub fn curvature_table(i: usize, j: usize, k: usize) -> Result<FrameComps, GeomError> {
    check_index(i)?;
    check_index(j)?;
    check_index(k)?;
    let mut v = [0.0; 4];
    for (l, slot) in v.iter_mut().enumerate() {
        *slot = riemann_component(i, j, k, l);
    }
    Ok(v)
}

/// Sectional curvatures of the frame 2-planes, K(Eᵢ∧Eⱼ) for the unordered
/// pair {i, j}: K₁₂ = −1, K₁₃ = K₂₃ = 2, K₁₄ = K₂₄ = −1, K₃₄ = −4.
fn frame_plane_curvature(i: usize, j: usize) -> f64 {
    debug_assert!(i != j);
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 1) => -1.0,
        (0, 2) | (1, 2) => 2.0,
        (0, 3) | (1, 3) => -1.0,
        (2, 3) => -4.0,
        _ => unreachable!(),
    }
}

/// Fully lowered curvature component R_{ijkl} = g(R(Eᵢ, Eⱼ)Eₖ, Eₗ).
pub(crate) fn riemann_component(i: usize, j: usize, k: usize, l: usize) -> f64 {
    if i == j || k == l {
        return 0.0;
    }
    // Every nonzero component has {i, j} = {k, l}: the curvature operator is
    // diagonal on the frame 2-planes.
    if k == j && l == i {
        frame_plane_curvature(i, j)
    } else if k == i && l == j {
        -frame_plane_curvature(i, j)
    } else {
        0.0
    }
}

/// Sectional curvature of the plane spanned by v and w.
pub fn sectional_curvature(v: &TangentVector, w: &TangentVector) -> Result<f64, GeomError> {
    check_same_base(v, w)?;
    let a = v.comps;
    let b = w.comps;
    let denom = dot(a, a) * dot(b, b) - dot(a, b) * dot(a, b);
    if !(denom > 1e-12) {
        return Err(GeomError::DegeneratePlane(denom));
    }
    // g(R(v, w)w, v) expanded over the frame tables.
    let rww = curvature_on_comps(a, b, b);
    Ok(dot(rww, a) / denom)
}

/// R(A, B)C for constant frame components, expanded over the frame table.
pub(crate) fn curvature_on_comps(a: FrameComps, b: FrameComps, c: FrameComps) -> FrameComps {
    let mut out = [0.0; 4];
    for i in 0..4 {
        if a[i] == 0.0 {
            continue;
        }
        for j in 0..4 {
            if b[j] == 0.0 || i == j {
                continue;
            }
            for k in 0..4 {
                if c[k] == 0.0 {
                    continue;
                }
                for (l, slot) in out.iter_mut().enumerate() {
                    let r = riemann_component(i, j, k, l);
                    if r != 0.0 {
                        *slot += a[i] * b[j] * c[k] * r;
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Almost complex structures J₊, J₋ and the projector P
// ---------------------------------------------------------------------------

/// Which of the two left-invariant almost complex structures to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JSign {
    Plus,
    Minus,
}

/// Apply J₊ or J₋ to frame components.
///
/// J₊: E₁ ↦ E₂, E₂ ↦ −E₁, E₃ ↦ E₄, E₄ ↦ −E₃.
/// J₋: E₁ ↦ E₂, E₂ ↦ −E₁, E₃ ↦ −E₄, E₄ ↦ E₃.
pub fn j_comps(sign: JSign, v: FrameComps) -> FrameComps {
    match sign {
        JSign::Plus => [-v[1], v[0], -v[3], v[2]],
        JSign::Minus => [-v[1], v[0], v[3], -v[2]],
    }
}

/// Apply the orthogonal projector P onto the E₄ direction.
pub fn p_comps(v: FrameComps) -> FrameComps {
    [0.0, 0.0, 0.0, v[3]]
}

/// J₊ or J₋ on a tangent vector.
pub fn apply_j(sign: JSign, v: &TangentVector) -> TangentVector {
    TangentVector::new(v.base, j_comps(sign, v.comps))
}

/// P on a tangent vector.
pub fn apply_p(v: &TangentVector) -> TangentVector {
    TangentVector::new(v.base, p_comps(v.comps))
}

/// Curvature tensor assembled from the invariant decomposition
///
/// ```text
/// R(X,Y)Z = 2(g(Y,Z)X − g(X,Z)Y)
///         − ½ Σ_± ( g(J±Y,Z)J±X − g(J±X,Z)J±Y + 2 g(X,J±Y)J±Z )
///         − 3 ( g(PY,Z)X + g(Y,Z)PX − g(PX,Z)Y − g(X,Z)PY ).
/// ```
///
/// Agrees with [`curvature_table`] on all frame triples; the two routes are
/// kept separate so they can check each other.
pub fn curvature_invariant(
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
) -> Result<TangentVector, GeomError> {
    check_same_base(x, y)?;
    check_same_base(x, z)?;
    Ok(TangentVector::new(
        x.base,
        curvature_invariant_comps(x.comps, y.comps, z.comps),
    ))
}

pub(crate) fn curvature_invariant_comps(
    x: FrameComps,
    y: FrameComps,
    z: FrameComps,
) -> FrameComps {
    let mut out = axpy(scale(2.0 * dot(y, z), x), -2.0 * dot(x, z), y);
    for sign in [JSign::Plus, JSign::Minus] {
        let jx = j_comps(sign, x);
        let jy = j_comps(sign, y);
        let jz = j_comps(sign, z);
        out = axpy(out, -0.5 * dot(jy, z), jx);
        out = axpy(out, 0.5 * dot(jx, z), jy);
        out = axpy(out, -dot(x, jy), jz);
    }
    let px = p_comps(x);
    let py = p_comps(y);
    out = axpy(out, -3.0 * dot(py, z), x);
    out = axpy(out, -3.0 * dot(y, z), px);
    out = axpy(out, 3.0 * dot(px, z), y);
    out = axpy(out, 3.0 * dot(x, z), py);
    out
}

// ---------------------------------------------------------------------------
// Covariant derivatives of the invariant tensors (closed forms)
// ---------------------------------------------------------------------------

/// (∇̃_X J±)(Y) = −g(J±Y, E₄)X + g(Y, E₄)J±X + g(J±Y, X)E₄ − g(Y, X)J±E₄.
pub fn nabla_j(sign: JSign, x: &TangentVector, y: &TangentVector) -> Result<TangentVector, GeomError> {
    check_same_base(x, y)?;
    Ok(TangentVector::new(
        x.base,
        nabla_j_comps(sign, x.comps, y.comps),
    ))
}

pub(crate) fn nabla_j_comps(sign: JSign, x: FrameComps, y: FrameComps) -> FrameComps {
    let e4 = [0.0, 0.0, 0.0, 1.0];
    let jy = j_comps(sign, y);
    let jx = j_comps(sign, x);
    let je4 = j_comps(sign, e4);
    let mut out = scale(-jy[3], x);
    out = axpy(out, y[3], jx);
    out = axpy(out, dot(jy, x), e4);
    out = axpy(out, -dot(y, x), je4);
    out
}

/// (∇̃_X P)(Y) = ½(g(Y, X)E₄ + g(Y, E₄)X) − 4g(Y, PX)E₄
///             + 3/2 (g(Y, J₊J₋X)E₄ + g(Y, E₄)J₊J₋X).
pub fn nabla_p(x: &TangentVector, y: &TangentVector) -> Result<TangentVector, GeomError> {
    check_same_base(x, y)?;
    Ok(TangentVector::new(x.base, nabla_p_comps(x.comps, y.comps)))
}

pub(crate) fn nabla_p_comps(x: FrameComps, y: FrameComps) -> FrameComps {
    let e4 = [0.0, 0.0, 0.0, 1.0];
    let px = p_comps(x);
    let jjx = j_comps(JSign::Plus, j_comps(JSign::Minus, x));
    let mut out = scale(0.5 * dot(y, x), e4);
    out = axpy(out, 0.5 * y[3], x);
    out = axpy(out, -4.0 * dot(y, px), e4);
    out = axpy(out, 1.5 * dot(y, jjx), e4);
    out = axpy(out, 1.5 * y[3], jjx);
    out
}

/// ∇̃_X E₄ = ½X − 2PX + 3/2 J₊J₋X.
pub fn nabla_e4(x: &TangentVector) -> TangentVector {
    TangentVector::new(x.base, nabla_e4_comps(x.comps))
}

pub(crate) fn nabla_e4_comps(x: FrameComps) -> FrameComps {
    let jjx = j_comps(JSign::Plus, j_comps(JSign::Minus, x));
    let mut out = scale(0.5, x);
    out = axpy(out, -2.0, p_comps(x));
    out = axpy(out, 1.5, jjx);
    out
}

// ---------------------------------------------------------------------------
// Vector fields and covariant differentiation
// ---------------------------------------------------------------------------

/// A vector field given by its frame components as a function of position,
/// with an optional exact directional-derivative callback.
///
/// The callback receives a base point and a direction in coordinate
/// components and must return the directional derivatives of the four frame
/// component functions. When absent, central differences along a straight
/// coordinate line are used.
#[derive(Clone)]
pub struct VectorFieldFn {
    eval: Arc<dyn Fn(Point) -> FrameComps + Send + Sync>,
    directional: Option<Arc<dyn Fn(Point, CoordComps) -> FrameComps + Send + Sync>>,
}

impl VectorFieldFn {
    pub fn new(eval: impl Fn(Point) -> FrameComps + Send + Sync + 'static) -> Self {
        VectorFieldFn {
            eval: Arc::new(eval),
            directional: None,
        }
    }

    /// Attach an exact directional-derivative callback.
    pub fn with_directional(
        mut self,
        d: impl Fn(Point, CoordComps) -> FrameComps + Send + Sync + 'static,
    ) -> Self {
        self.directional = Some(Arc::new(d));
        self
    }

    /// A field with constant frame components (directional derivative zero).
    pub fn constant(comps: FrameComps) -> Self {
        VectorFieldFn::new(move |_| comps).with_directional(|_, _| [0.0; 4])
    }

    /// The frame leg Eᵢ as a field (index 0 ↔ E₁).
    pub fn frame(i: usize) -> Result<Self, GeomError> {
        check_index(i)?;
        let mut comps = [0.0; 4];
        comps[i] = 1.0;
        Ok(VectorFieldFn::constant(comps))
    }

    pub fn comps_at(&self, p: Point) -> FrameComps {
        (self.eval)(p)
    }

    fn directional_at(&self, p: Point, dir: CoordComps, h: f64) -> FrameComps {
        if let Some(d) = &self.directional {
            return d(p, dir);
        }
        let shift = |s: f64| {
            Point::new(
                p.x + s * dir[0],
                p.y + s * dir[1],
                p.z + s * dir[2],
                p.t + s * dir[3],
            )
        };
        let fwd = (self.eval)(shift(h));
        let bwd = (self.eval)(shift(-h));
        scale(1.0 / (2.0 * h), sub(fwd, bwd))
    }
}

/// Covariant derivative ∇̃_X Y at `p`:
/// X(Yᵃ)Eₐ plus the connection term on the frame components.
pub fn covariant_derivative(
    x: &VectorFieldFn,
    y: &VectorFieldFn,
    p: Point,
    h: f64,
) -> Result<TangentVector, GeomError> {
    let xc = x.comps_at(p);
    let dir = frame_to_coords(p, xc);
    let dy = y.directional_at(p, dir, h);
    let yc = y.comps_at(p);
    let comps = add(dy, gamma_frame(xc, yc));
    if comps.iter().all(|c| c.is_finite()) {
        Ok(TangentVector::new(p, comps))
    } else {
        Err(GeomError::NonFinite("covariant_derivative"))
    }
}

// ---------------------------------------------------------------------------
// Isometries
// ---------------------------------------------------------------------------

/// The isometries exercised by the verification sweeps.
#[derive(Debug, Clone, Copy)]
pub enum Isometry {
    /// L_a, the left translation by `a`.
    LeftTranslation(Point),
    /// Rotation by `angle` in the (x, y) plane.
    XyRotation(f64),
    /// The reflection z ↦ −z.
    ZReflection,
}

impl Isometry {
    /// Image of a point.
    pub fn apply_point(&self, p: Point) -> Point {
        match self {
            Isometry::LeftTranslation(a) => group_mul(*a, p),
            Isometry::XyRotation(th) => {
                let (s, c) = th.sin_cos();
                Point::new(c * p.x - s * p.y, s * p.x + c * p.y, p.z, p.t)
            }
            Isometry::ZReflection => Point::new(p.x, p.y, -p.z, p.t),
        }
    }

    /// Differential acting on frame components.
    ///
    /// Left translations are the identity on the frame; the rotation acts on
    /// the (E₁, E₂) pair; the reflection flips the E₃ component.
    pub fn apply_frame(&self, v: FrameComps) -> FrameComps {
        match self {
            Isometry::LeftTranslation(_) => v,
            Isometry::XyRotation(th) => {
                let (s, c) = th.sin_cos();
                [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2], v[3]]
            }
            Isometry::ZReflection => [v[0], v[1], -v[2], v[3]],
        }
    }

    /// Pushforward of a tangent vector.
    pub fn apply(&self, v: &TangentVector) -> TangentVector {
        TangentVector::new(self.apply_point(v.base), self.apply_frame(v.comps))
    }
}

/// |g(dφ v, dφ w) − g(v, w)| at the image point; zero up to roundoff for the
/// isometries above.
pub fn isometry_residual(
    iso: &Isometry,
    v: &TangentVector,
    w: &TangentVector,
) -> Result<f64, GeomError> {
    check_same_base(v, w)?;
    let fv = iso.apply(v);
    let fw = iso.apply(w);
    let before = metric_eval(v, w)?;
    let after = metric_eval(&fv, &fw)?;
    Ok((after - before).abs())
}
