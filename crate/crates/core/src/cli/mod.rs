//! Command-line front end.
//!
//! [`run`] takes the argument list and environment explicitly so the whole
//! pipeline (layering, dispatch, serialization, exit status) can be driven
//! from tests without spawning a process.

mod args;
mod check;
mod commands;
mod config;
mod envelope;

use std::io::Write;

use clap::Parser;

pub use args::{Cli, Command, GlobalArgs, NArgs};
pub use check::{run_checks, CheckItem, Status};
pub use commands::{
    cmd_check, cmd_field_map, cmd_integrate, cmd_orbit, cmd_orbit_wave, cmd_table, format_exact, table2_n, Failure,
    Outcome,
};
pub use config::{
    default_table, env_layer, file_layer, from_table, merge, preset_layer, Format, IntegrateConfig, MapConfig, Number,
    OutputConfig, ParamsConfig, Preset, ResolvedParams, RunConfig, WaveConfig, ENV_PREFIX,
};
pub use envelope::{
    format_float, parse_csv, Cell, ParsedCsv, Payload, Provenance, ResultEnvelope, Units, ENVELOPE_SCHEMA,
    SCHEMA_VERSION,
};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_config() || matches!(e, Error::Io(_)) {
        EXIT_CONFIG
    } else {
        EXIT_NUMERICAL
    }
}

/// Merge defaults, preset, file, environment and flags into a validated config.
pub fn resolve_config(cli: &Cli, env: &[(String, String)]) -> crate::Result<RunConfig> {
    let var = |name: &str| {
        env.iter()
            .find(|(k, _)| k == &format!("{ENV_PREFIX}{name}"))
            .map(|(_, v)| v.clone())
    };
    let mut table = default_table();
    let preset = match (cli.global.preset, var("PRESET")) {
        (Some(p), _) => Some(p),
        (None, Some(s)) => Some(
            <Preset as clap::ValueEnum>::from_str(&s, true).map_err(|e| Error::Config {
                path: format!("{ENV_PREFIX}PRESET"),
                detail: e,
            })?,
        ),
        (None, None) => None,
    };
    if let Some(p) = preset {
        merge(&mut table, preset_layer(p));
    }
    if let Some(path) = cli.global.config.clone().or_else(|| var("CONFIG").map(Into::into)) {
        merge(&mut table, file_layer(&path)?);
    }
    merge(&mut table, env_layer(env));
    merge(&mut table, cli.layer());
    from_table(table)
}

/// Execute a parsed command line.
pub fn execute(cli: &Cli, cfg: &RunConfig) -> crate::Result<Outcome> {
    match cli.command {
        Command::Orbit(_) => cmd_orbit(cfg),
        Command::Table(_) => cmd_table(cfg),
        Command::OrbitWave { .. } => cmd_orbit_wave(cfg),
        Command::FieldMap { .. } => cmd_field_map(cfg),
        Command::Integrate { .. } => cmd_integrate(cfg),
        Command::Check(_) => cmd_check(cfg),
    }
}

/// Run the tool and return its exit status.
pub fn run<I, S>(argv: I, env: &[(String, String)], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let cfg = match resolve_config(&cli, env) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let outcome = match execute(&cli, &cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cfg.output.path {
        Some(path) => std::fs::File::create(path)
            .map_err(Error::from)
            .and_then(|mut f| outcome.envelope.write(cfg.output.format, &mut f)),
        None => outcome.envelope.write(cfg.output.format, stdout),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return exit_code(&e);
    }
    for w in &outcome.envelope.payload.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match outcome.failure {
        None => EXIT_OK,
        Some(Failure::Numerical(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
        Some(Failure::Checks { failed }) => {
            let _ = writeln!(stderr, "{failed} check(s) failed");
            EXIT_CHECK_FAILED
        }
    }
}

/// [`run`] with the process arguments, environment and standard streams.
pub fn main() -> i32 {
    let env: Vec<(String, String)> = std::env::vars().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &env, &mut stdout.lock(), &mut stderr.lock())
}
