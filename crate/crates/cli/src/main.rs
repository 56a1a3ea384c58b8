//! Deterministic CSV exporter for gravitationally bound neutron states.

mod commands;
mod config;
mod error;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{
    dispatchable, CommonArgs, EvolveArgs, LevelsArgs, MixtureArgs, ModesArgs, Runnable,
    SpectrumArgs, WavefunctionArgs, WignerArgs, YukawaArgs,
};
use config::Resolver;
use error::CliError;
use table::Table;

const AFTER_HELP: &str = "Every subcommand writes one CSV table: `# key = value` metadata \
lines recording the full effective configuration, a header line, then data rows with 17 \
significant digits. Identical configurations produce byte-identical files.\n\nEnvironment: \
the only recognized variable is RAYON_NUM_THREADS, which caps the worker threads used for \
grid evaluation; it never changes results.";

#[derive(Parser, Debug)]
#[command(
    name = "qbounce",
    version,
    about = "CSV tables for neutrons bound by gravity above a mirror",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate bound-state energies and turning heights over one mirror
    Levels(LevelsArgs),
    /// Tabulate cavity modes confined between two horizontal mirrors
    Modes(ModesArgs),
    /// Sample wavefunctions and probability densities on a height axis
    Wavefunction(WavefunctionArgs),
    /// Sample momentum-space densities on a wavenumber axis
    Spectrum(SpectrumArgs),
    /// Sample a Wigner quasiprobability distribution on a phase-space grid
    Wigner(WignerArgs),
    /// Drop a cavity mode onto the lower mirror and export its evolution
    Evolve(EvolveArgs),
    /// Combine two dropped cavity modes coherently or incoherently
    Mixture(MixtureArgs),
    /// First-order effect of a short-range interaction sourced by the mirror
    Yukawa(YukawaArgs),
    /// Run every *.conf in a directory and write one CSV per file
    ReproduceFigures(ReproduceArgs),
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    /// Directory of *.conf run configurations (each needs a `command` entry)
    #[arg(long, value_name = "DIR", default_value = "configs")]
    config_dir: PathBuf,
    /// Directory receiving one CSV per configuration
    #[arg(long, value_name = "DIR", default_value = "reproduced")]
    out_dir: PathBuf,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Levels(_) => "levels",
            Command::Modes(_) => "modes",
            Command::Wavefunction(_) => "wavefunction",
            Command::Spectrum(_) => "spectrum",
            Command::Wigner(_) => "wigner",
            Command::Evolve(_) => "evolve",
            Command::Mixture(_) => "mixture",
            Command::Yukawa(_) => "yukawa",
            Command::ReproduceFigures(_) => "reproduce-figures",
        }
    }

    fn common(&self) -> Option<&CommonArgs> {
        match self {
            Command::Levels(a) => Some(&a.common),
            Command::Modes(a) => Some(&a.common),
            Command::Wavefunction(a) => Some(&a.common),
            Command::Spectrum(a) => Some(&a.common),
            Command::Wigner(a) => Some(&a.common),
            Command::Evolve(a) => Some(&a.common),
            Command::Mixture(a) => Some(&a.common),
            Command::Yukawa(a) => Some(&a.common),
            Command::ReproduceFigures(_) => None,
        }
    }

    fn resolve(&self, r: &mut Resolver) -> Result<Box<dyn Runnable>, CliError> {
        Ok(match self {
            Command::Levels(a) => Box::new(commands::resolve_levels(a, r)?),
            Command::Modes(a) => Box::new(commands::resolve_modes(a, r)?),
            Command::Wavefunction(a) => Box::new(commands::resolve_wavefunction(a, r)?),
            Command::Spectrum(a) => Box::new(commands::resolve_spectrum(a, r)?),
            Command::Wigner(a) => Box::new(commands::resolve_wigner(a, r)?),
            Command::Evolve(a) => Box::new(commands::resolve_evolve(a, r)?),
            Command::Mixture(a) => Box::new(commands::resolve_mixture(a, r)?),
            Command::Yukawa(a) => Box::new(commands::resolve_yukawa(a, r)?),
            Command::ReproduceFigures(_) => {
                unreachable!("reproduce-figures is handled before resolution")
            }
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests print to stdout and succeed; real
            // parse errors print to stderr and exit with the usage code.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Command::ReproduceFigures(a) = &cli.command {
        return reproduce(a);
    }
    let name = cli.command.name();
    let common = cli.command.common().expect("data command").clone();
    let mut resolver = Resolver::from_optional(common.config.as_deref())?;
    if let Some(file_command) = resolver.command_entry() {
        if file_command != name {
            return Err(CliError::Usage(format!(
                "config file selects command '{file_command}' but subcommand '{name}' was invoked"
            )));
        }
    }
    let output_from_file = resolver.output_entry().map(PathBuf::from);
    let runnable = cli.command.resolve(&mut resolver)?;
    resolver.finish()?;
    if common.emit_config {
        print!("{}", commands::emit_config_text(runnable.as_ref()));
        return Ok(());
    }
    let table = commands::finish_table(runnable.as_ref())?;
    let output = common.output.clone().or(output_from_file);
    write_table(&table, output.as_deref())
}

fn reproduce(args: &ReproduceArgs) -> Result<(), CliError> {
    let entries = std::fs::read_dir(&args.config_dir).map_err(|e| {
        CliError::Io(format!(
            "cannot read config directory {}: {e}",
            args.config_dir.display()
        ))
    })?;
    let mut configs: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "conf"))
        .collect();
    configs.sort();
    if configs.is_empty() {
        return Err(CliError::Usage(format!(
            "no *.conf files found in {}",
            args.config_dir.display()
        )));
    }
    std::fs::create_dir_all(&args.out_dir).map_err(|e| {
        CliError::Io(format!(
            "cannot create output directory {}: {e}",
            args.out_dir.display()
        ))
    })?;
    for path in configs {
        let mut resolver = Resolver::from_file(&path)?;
        let name = resolver.command_entry().ok_or_else(|| {
            CliError::Usage(format!(
                "{}: missing 'command' entry naming the subcommand to run",
                path.display()
            ))
        })?;
        // The batch runner controls the destination; an `output` entry in
        // the file is accepted but superseded.
        let _ = resolver.output_entry();
        let runnable = dispatchable(&name, &mut resolver).map_err(|e| match e {
            CliError::Usage(msg) => CliError::Usage(format!("{}: {msg}", path.display())),
            other => other,
        })?;
        resolver.finish()?;
        let table = commands::finish_table(runnable.as_ref())?;
        let stem = path.file_stem().unwrap_or_default();
        let out = args.out_dir.join(stem).with_extension("csv");
        write_table(&table, Some(&out))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn write_table(table: &Table, path: Option<&Path>) -> Result<(), CliError> {
    let mut rendered = Vec::new();
    table
        .render(&mut rendered)
        .map_err(|e| CliError::Io(format!("cannot render table: {e}")))?;
    match path {
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&rendered)
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
        Some(p) => {
            if let Some(parent) = p.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(|e| {
                        CliError::Io(format!("cannot create {}: {e}", parent.display()))
                    })?;
                }
            }
            std::fs::write(p, &rendered)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))
        }
    }
}
