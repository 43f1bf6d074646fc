//! Numerical tolerances and finite-difference steps used across the crate.
//!
//! Every threshold lives here with its rationale so the test suites, the
//! hypersurface analyzer and the command line all agree on what "passing"
//! means.

/// Identities built from constant dyadic-rational tables evaluate exactly
/// in f64; any disagreement at all is a defect.
pub const EXACT: f64 = 0.0;

/// Algebraic identities exercised at random points accumulate a few ulps
/// through exp evaluations and products.
pub const ALGEBRAIC: f64 = 1e-12;

/// Central-difference step for ambient derivatives (form components,
/// vector-field components). Balances O(h²) truncation against roundoff.
pub const FD_STEP_AMBIENT: f64 = 1e-5;

/// Central-difference step for derivatives of induced quantities on a
/// hypersurface (induced metric, second fundamental form). Larger than the
/// ambient step because these feed second differences.
pub const STEP_INDUCED: f64 = 1e-4;

/// Closedness residual for the conformally rescaled Kähler forms on the
/// verification grid at [`FD_STEP_AMBIENT`]: truncation is ≈ 6e-8 where the
/// metric coefficients are steepest (t = ±1).
pub const FORMS_CLOSED: f64 = 1e-7;

/// Tolerance on the recovered value 2 of the nonzero unscaled-form
/// derivative component at the origin.
pub const FORMS_VALUE: f64 = 1e-6;

/// A hypersurface counts as totally geodesic when max |h| stays below this.
pub const GEODESIC: f64 = 1e-6;

/// A hypersurface counts as totally umbilical when max |h − λg| stays
/// below this.
pub const UMBILICAL: f64 = 1e-6;

/// Parallelism threshold on max |∇h|; looser than the pointwise thresholds
/// because ∇h is assembled from finite differences at [`STEP_INDUCED`].
pub const PARALLEL: f64 = 1e-4;

/// Codazzi threshold on the antisymmetrized ∇h, same provenance as
/// [`PARALLEL`].
pub const CODAZZI: f64 = 1e-4;

/// Residual allowed when checking the Gauss and Codazzi equations against
/// the ambient curvature; dominated by second differences of the induced
/// metric at [`STEP_INDUCED`].
pub const GAUSS_CODAZZI: f64 = 1e-6;

/// Gram determinants below this mark a degenerate tangent configuration.
pub const DEGENERATE: f64 = 1e-12;

/// Fixed step for the profile-angle integrator.
pub const ODE_STEP: f64 = 1e-3;

/// The profile integrator refuses to continue once |cos β| drops below
/// this guard band around the singular normal direction.
pub const COS_BETA_GUARD: f64 = 0.01;
