//! Geometry of the four-dimensional solvable Lie group Sol⁴₀.
//!
//! The crate models the homogeneous Riemannian space Sol⁴₀ = (ℝ⁴, g) with
//! g = e⁻²ᵗ(dx² + dy²) + e⁴ᵗdz² + dt², and provides:
//!
//! * [`solgroup`] — group operations, the left-invariant orthonormal frame,
//!   metric, Levi-Civita connection, curvature, the almost complex pair
//!   J₊/J₋ and the projector P, all as exact constant frame tables;
//! * [`oracles`] — independent recomputation of every table (Koszul formula,
//!   curvature commutator, Leibniz rules, numerical exterior derivatives)
//!   for verification sweeps;
//! * [`hypersurface`] — fundamental forms, shape operator, ∇h, the Gauss and
//!   Codazzi equations and a classifier for immersed hypersurfaces;
//! * [`families`] — the standard hypersurface families (coordinate planes,
//!   cylinders over plane curves, profile hypersurfaces of the umbilical
//!   angle flow β′ = 3 sin β) with exact derivative callbacks;
//! * [`curvedsl`] — a small expression language for plane curves with exact
//!   symbolic differentiation;
//! * [`tol`] — the shared tolerance and step constants.

pub mod curvedsl;
pub mod families;
pub mod hypersurface;
pub mod oracles;
pub mod solgroup;
pub mod tol;

pub use solgroup::{Point, TangentVector};
