//! Relativistic particle motion in the Coulomb field and the checks that
//! tie it to the u-field.
//!
//! The state is propagated in lab time t. Position, γv, proper time τ, the
//! internal phase Ω_p τ and the action ∫P·dx are integrated together with an
//! adaptive Dormand–Prince 5(4) scheme.

mod checks;
mod motion;
mod ode;

pub use checks::{
    angular_momentum, bohmian_velocity, bohmian_velocity_fd, conservation_report, constraint_residual, energy,
    phase_drift_rate, ConservationReport, ConstraintResidual,
};
pub use motion::{
    circular_initials, coulomb_acceleration, effective_mass, integrate_orbit, integrate_orbit_with, FieldGradient,
    GeneralForceSpec, IntegrationOptions, MotionParams, TrajectoryState,
};
