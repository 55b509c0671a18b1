// Every example doubles as a test: each file is compiled as a module and its
// `run_example` must succeed.

#[path = "../examples/cli_pipeline.rs"]
mod cli_pipeline;
#[path = "../examples/field_on_orbit.rs"]
mod field_on_orbit;
#[path = "../examples/guidance.rs"]
mod guidance;
#[path = "../examples/integrate_orbit.rs"]
mod integrate_orbit;
#[path = "../examples/intensity_map.rs"]
mod intensity_map;
#[path = "../examples/mode_number_table.rs"]
mod mode_number_table;
#[path = "../examples/orbit_wave.rs"]
mod orbit_wave;
#[path = "../examples/quantized_orbits.rs"]
mod quantized_orbits;
#[path = "../examples/quantum_potential.rs"]
mod quantum_potential;
#[path = "../examples/radial_modes.rs"]
mod radial_modes;
#[path = "../examples/selection_rule.rs"]
mod selection_rule;
#[path = "../examples/special_functions.rs"]
mod special_functions;

#[test]
fn all_examples_run() {
    cli_pipeline::run_example().expect("cli_pipeline");
    field_on_orbit::run_example().expect("field_on_orbit");
    guidance::run_example().expect("guidance");
    integrate_orbit::run_example().expect("integrate_orbit");
    intensity_map::run_example().expect("intensity_map");
    mode_number_table::run_example().expect("mode_number_table");
    orbit_wave::run_example().expect("orbit_wave");
    quantized_orbits::run_example().expect("quantized_orbits");
    quantum_potential::run_example().expect("quantum_potential");
    radial_modes::run_example().expect("radial_modes");
    selection_rule::run_example().expect("selection_rule");
    special_functions::run_example().expect("special_functions");
}
