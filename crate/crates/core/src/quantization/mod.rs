//! Closed-form quantized circular orbits.
//!
//! For azimuthal number n (accepted as any positive real so that
//! half-integer and perturbed cases can be evaluated):
//!
//! ```text
//! v = α/n,  N = n²/α,  b·m± = N ± n,  r = n² a₀ √(1 − α²/n²),
//! E = m_eff √(1 − α²/n²),  P·r = n,  bΩ_p = m_eff (1 − α²/(n² − α²))
//! ```
//!
//! Mode numbers are integers only for special (α, b, n); the selection rule
//! is available in floating point and in exact rational arithmetic.

mod exact;
mod orbit;
mod params;

pub use exact::{
    distance_to_integer, fine_structure_exact, integer_gcd, mode_numbers_exact, mode_numbers_tilde_exact,
    parse_rational, rational_from_f64, ExactModes,
};
pub use orbit::{
    check_selection_rule, check_selection_rule_tilde, fine_structure_from_modes, historical_phase_wave, mode_numbers,
    mode_numbers_tilde, nonrel_energy, solve_orbit, HistoricalPhaseWave, OrbitSolution, SelectionCheck,
    DEFAULT_INTEGER_TOL,
};
pub use params::{MassSpec, PhysicalParams, POSITIVE_FREQUENCY_ALPHA_BOUND};

pub(crate) use exact::to_f64 as rational_to_f64;
