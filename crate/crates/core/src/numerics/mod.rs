//! Numerical kernels shared by the rest of the crate.

pub mod dd;
pub mod dual;
pub mod expint;
pub mod fd;
pub mod ode;
pub mod quad;
pub mod sum;

pub use dd::{Dd, Scalar};
pub use dual::{derivs1, derivs2, Dual, HyperDual, Real};
pub use expint::{exp_over_z_integral, exp_over_z_integral_quad, ein};
pub use fd::{fd_derivative, richardson_order};
pub use ode::{ode_integrate, OdeFailure, OdeSpec, Trajectory};
pub use quad::{quad_adaptive, QuadratureSpec};
pub use sum::NeumaierSum;
