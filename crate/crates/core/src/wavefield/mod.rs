//! The u-field: Coulomb eigenmodes, amplitude matching and field diagnostics.
//!
//! A mode is A·R(r)·P_l^{±m}(cos θ)·e^{i(±mφ − ωt)}. Two counter-propagating
//! modes with frequencies ω± and azimuthal numbers m± of an orbit, each
//! matched to u₀/2 at (rₙ, π/2), add up on the orbit to
//!
//! ```text
//! u = u₀ e^{i(nφ/b − (N−α)t/(b rₙ))} cos(Nφ/b − n t/(b rₙ))
//! ```
//!
//! Associated Legendre functions carry the Condon–Shortley phase.

mod diagnostics;
mod maps;
mod matching;
mod mode;

pub use diagnostics::{
    current_divergence, dispersion_shifts, field_equation_residual, group_velocity, laplacian, pair_field_residual,
    phase_gradient_wavevector, quantum_potential, quantum_potential_closed_form, quantum_potential_on_orbit,
    radial_ode_residual,
};
pub use maps::{
    cyclic_sign_changes, default_extent, intensity_map, orbit_wave_curve, IntensityMap, MapPeak, OrbitWaveCurves,
    Plane, MIN_GRID,
};
pub use matching::{field_on_orbit, match_amplitudes, FieldSample, MatchedPair, SpacetimePoint};
pub use mode::{
    asymptotic_deviation, asymptotic_normalization, coulomb_phase, effective_order, eval_mode, integer_mode, radial,
    radial_asymptotic, radial_ratio, Mode, Regime, Sign,
};
