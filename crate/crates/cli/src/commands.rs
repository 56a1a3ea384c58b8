//! One builder per subcommand: resolve parameters (flags override file
//! entries, file entries override defaults), validate them with errors
//! that name the offending key, then compute the output table.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_complex::Complex64;

use qbounce_core::free_fall::Region2Expansion;
use qbounce_core::quadrature::QuadratureSpec;
use qbounce_core::scales::{constants, ScaleSystem};
use qbounce_core::yukawa::{PerturbedExpansion, YukawaModel};
use qbounce_core::{double_mirror, free_fall, gravity, wigner};

use crate::config::{self, Resolver};
use crate::error::CliError;
use crate::table::{Cell, Table};

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Plain-text `key = value` file; command-line flags override file entries
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// CSV destination; stdout when absent
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Print the effective configuration as `key = value` lines and exit
    #[arg(long)]
    pub emit_config: bool,
    /// Absolute quadrature tolerance (1e-14..=1e-3)
    #[arg(long, value_name = "TOL")]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance (1e-14..=1e-3)
    #[arg(long, value_name = "TOL")]
    pub rel_tol: Option<f64>,
}

/// A resolved command, ready to emit its configuration or compute rows.
pub trait Runnable {
    fn command_name(&self) -> &'static str;
    /// Effective parameters as `(key, value)` pairs (unsorted).
    fn config_pairs(&self) -> Vec<(String, String)>;
    /// Column names and data rows.
    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError>;
}

/// Metadata block + data for a resolved command.
pub fn finish_table(cmd: &dyn Runnable) -> Result<Table, CliError> {
    let (columns, rows) = cmd.build()?;
    let mut pairs = cmd.config_pairs();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut meta = vec![("command".to_string(), cmd.command_name().to_string())];
    meta.extend(pairs);
    meta.push(("version".to_string(), env!("CARGO_PKG_VERSION").to_string()));
    Ok(Table { meta, columns, rows })
}

/// The canonical `key = value` text for --emit-config; feeding it back as
/// a --config file reproduces the same effective configuration.
pub fn emit_config_text(cmd: &dyn Runnable) -> String {
    let mut pairs = cmd.config_pairs();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = format!("command = {}\n", cmd.command_name());
    for (key, value) in pairs {
        out.push_str(&format!("{key} = {value}\n"));
    }
    out.push_str(&format!("version = {}\n", env!("CARGO_PKG_VERSION")));
    out
}

/// Resolve a command by its name with no command-line flags — used by the
/// batch runner, where the config file is the only parameter source.
pub fn dispatchable(name: &str, r: &mut Resolver) -> Result<Box<dyn Runnable>, CliError> {
    Ok(match name {
        "levels" => Box::new(resolve_levels(&LevelsArgs::default(), r)?),
        "modes" => Box::new(resolve_modes(&ModesArgs::default(), r)?),
        "wavefunction" => Box::new(resolve_wavefunction(&WavefunctionArgs::default(), r)?),
        "spectrum" => Box::new(resolve_spectrum(&SpectrumArgs::default(), r)?),
        "wigner" => Box::new(resolve_wigner(&WignerArgs::default(), r)?),
        "evolve" => Box::new(resolve_evolve(&EvolveArgs::default(), r)?),
        "mixture" => Box::new(resolve_mixture(&MixtureArgs::default(), r)?),
        "yukawa" => Box::new(resolve_yukawa(&YukawaArgs::default(), r)?),
        other => {
            return Err(CliError::Usage(format!(
                "unknown command '{other}' (expected one of levels, modes, wavefunction, \
                 spectrum, wigner, evolve, mixture, yukawa)"
            )))
        }
    })
}

fn usage(key: &str, what: String) -> CliError {
    CliError::Usage(format!("key '{key}': {what}"))
}

fn numerical(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    abs_tol: f64,
    rel_tol: f64,
}

impl Tolerances {
    fn quad(&self) -> QuadratureSpec {
        QuadratureSpec {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            ..QuadratureSpec::default()
        }
    }

    fn pairs(&self) -> Vec<(String, String)> {
        vec![
            ("abs-tol".into(), config::emit_f64(self.abs_tol)),
            ("rel-tol".into(), config::emit_f64(self.rel_tol)),
        ]
    }
}

fn resolve_tolerances(r: &mut Resolver, c: &CommonArgs) -> Result<Tolerances, CliError> {
    let abs_tol = r.take("abs-tol", c.abs_tol, 1e-9, config::parse_plain_f64)?;
    let rel_tol = r.take("rel-tol", c.rel_tol, 1e-9, config::parse_plain_f64)?;
    for (key, v) in [("abs-tol", abs_tol), ("rel-tol", rel_tol)] {
        if !(1e-14..=1e-3).contains(&v) {
            return Err(usage(key, format!("must lie in 1e-14..=1e-3 (got {v})")));
        }
    }
    Ok(Tolerances { abs_tol, rel_tol })
}

fn check_index(key: &str, v: usize, lo: usize, hi: usize) -> Result<(), CliError> {
    if !(lo..=hi).contains(&v) {
        return Err(usage(key, format!("must lie in {lo}..={hi} (got {v})")));
    }
    Ok(())
}

fn check_length(key: &str, v: f64, hi: f64) -> Result<(), CliError> {
    if !(v > 0.0 && v <= hi && v.is_finite()) {
        return Err(usage(key, format!("must be a length in (0, {hi}] um (got {v})")));
    }
    Ok(())
}

fn check_samples(key: &str, v: usize) -> Result<(), CliError> {
    check_index(key, v, 3, 4001)
}

fn check_axis(lo_key: &str, lo: f64, hi: f64) -> Result<(), CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(usage(
            lo_key,
            format!("axis bounds must be finite with min < max (got {lo}..{hi})"),
        ));
    }
    Ok(())
}

fn check_times(times: &[f64]) -> Result<(), CliError> {
    if times.is_empty() || times.len() > 10_000 {
        return Err(usage("times", format!("need 1..=10000 entries (got {})", times.len())));
    }
    for t in times {
        if !(0.0..=1000.0).contains(t) {
            return Err(usage("times", format!("each entry must lie in 0ms..=1000ms (got {t}ms)")));
        }
    }
    Ok(())
}

/// Validate the two weights; when `need_sum` the pair must sum to 1 and is
/// snapped onto the exact constraint so downstream constructors accept it.
fn check_weights(p1: f64, p2: f64, need_sum: bool) -> Result<(f64, f64), CliError> {
    for (key, p) in [("p1", p1), ("p2", p2)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(usage(key, format!("must lie in 0..=1 (got {p})")));
        }
    }
    if !need_sum {
        return Ok((p1, p2));
    }
    if (p1 + p2 - 1.0).abs() > 1e-9 {
        return Err(CliError::Usage(format!(
            "keys 'p1', 'p2': probabilities must sum to 1 (p1 + p2 = {})",
            p1 + p2
        )));
    }
    Ok((p1, 1.0 - p1))
}

fn axis_points(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect()
}

fn parse_enum_value<T: ValueEnum + Clone + Send + Sync + 'static>(s: &str) -> Result<T, String> {
    T::from_str(s, true).map_err(|_| {
        let names: Vec<String> = T::value_variants()
            .iter()
            .filter_map(|v| v.to_possible_value())
            .map(|p| p.get_name().to_string())
            .collect();
        format!("expected one of [{}], got '{s}'", names.join(", "))
    })
}

fn enum_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

/// Comma-separated ms times, as a clap value.
#[derive(Clone, Debug)]
pub struct TimesMs(pub Vec<f64>);

fn times_value(s: &str) -> Result<TimesMs, String> {
    config::parse_ms_list(s).map(TimesMs)
}

fn micron_value(s: &str) -> Result<f64, String> {
    config::parse_micron(s)
}

fn pev_value(s: &str) -> Result<f64, String> {
    config::parse_pev(s)
}

fn ms_value(s: &str) -> Result<f64, String> {
    config::parse_ms(s)
}

fn warn_fallback(exp: &Region2Expansion, label: &str) {
    if !exp.fallback_indices().is_empty() {
        eprintln!(
            "warning: {label}: coefficients at 1-based levels {:?} were rebuilt by direct \
             projection (deep-tunneling regime of the closed form)",
            exp.fallback_indices()
        );
    }
}

fn reference() -> ScaleSystem {
    ScaleSystem::reference()
}

fn solve_mode(slit_um: f64, m: usize, label: &str) -> Result<double_mirror::DoubleMirrorMode, CliError> {
    let modes = double_mirror::solve_modes(&reference(), slit_um, m).map_err(numerical)?;
    modes
        .into_iter()
        .nth(m - 1)
        .ok_or_else(|| CliError::Numerical(format!("{label}: cavity solve returned fewer than {m} modes")))
}

// ---------------------------------------------------------------------------
// levels
// ---------------------------------------------------------------------------

#[derive(Args, Clone, Debug, Default)]
pub struct LevelsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of bound states to tabulate (1..=100)
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
}

pub struct LevelsCmd {
    n_max: usize,
    tol: Tolerances,
}

pub fn resolve_levels(a: &LevelsArgs, r: &mut Resolver) -> Result<LevelsCmd, CliError> {
    let n_max = r.take("n-max", a.n_max, 6, config::parse_usize)?;
    check_index("n-max", n_max, 1, 100)?;
    let tol = resolve_tolerances(r, &a.common)?;
    Ok(LevelsCmd { n_max, tol })
}

impl Runnable for LevelsCmd {
    fn command_name(&self) -> &'static str {
        "levels"
    }

    fn config_pairs(&self) -> Vec<(String, String)> {
        let mut p = vec![("n-max".to_string(), self.n_max.to_string())];
        p.extend(self.tol.pairs());
        p
    }

    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
        let levels = gravity::levels(&reference(), self.n_max);
        let rows = levels
            .iter()
            .map(|lv| {
                vec![
                    Cell::Int(lv.n as i64),
                    Cell::Num(lv.zero),
                    Cell::Num(lv.energy / constants::PICO_EV),
                    Cell::Num(lv.height / constants::MICRON),
                ]
            })
            .collect();
        Ok((vec!["n", "a_n", "E_n_peV", "z_n_um"], rows))
    }
}

// ---------------------------------------------------------------------------
// modes
// ---------------------------------------------------------------------------

#[derive(Args, Clone, Debug, Default)]
pub struct ModesArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Slit width between the mirrors, e.g. 28um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub slit: Option<f64>,
    /// Number of cavity modes to tabulate (1..=20)
    #[arg(long, value_name = "M")]
    pub m_max: Option<usize>,
}

pub struct ModesCmd {
    slit_um: f64,
    m_max: usize,
    tol: Tolerances,
}

pub fn resolve_modes(a: &ModesArgs, r: &mut Resolver) -> Result<ModesCmd, CliError> {
    let slit_um = r.take("slit", a.slit, 28.0, config::parse_micron)?;
    check_length("slit", slit_um, 1000.0)?;
    let m_max = r.take("m-max", a.m_max, 6, config::parse_usize)?;
    check_index("m-max", m_max, 1, 20)?;
    let tol = resolve_tolerances(r, &a.common)?;
    Ok(ModesCmd { slit_um, m_max, tol })
}

impl Runnable for ModesCmd {
    fn command_name(&self) -> &'static str {
        "modes"
    }

    fn config_pairs(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("slit".to_string(), config::emit_micron(self.slit_um)),
            ("m-max".to_string(), self.m_max.to_string()),
        ];
        p.extend(self.tol.pairs());
        p
    }

    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
        let modes = double_mirror::solve_modes(&reference(), self.slit_um, self.m_max)
            .map_err(numerical)?;
        let rows = modes
            .iter()
            .map(|mode| {
                vec![
                    Cell::Int(mode.m as i64),
                    Cell::Num(mode.energy_pev),
                    Cell::Num(mode.zbar_um),
                ]
            })
            .collect();
        Ok((vec!["m", "E_bar_peV", "z_bar_um"], rows))
    }
}

// ---------------------------------------------------------------------------
// wavefunction
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WaveFamily {
    /// One bound state over a single mirror (scaled axes)
    Single,
    /// Weighted two-state superposition over a single mirror (scaled axes)
    Pair,
    /// One cavity mode between two mirrors (micron axes)
    Cavity,
}

#[derive(Args, Clone, Debug, Default)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// State family
    #[arg(long, value_enum, value_name = "FAMILY")]
    pub family: Option<WaveFamily>,
    /// Principal index of the (first) single-mirror state (1..=50)
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Second state of a pair (1..=50, distinct from --n)
    #[arg(long, value_name = "N")]
    pub n2: Option<usize>,
    /// Cavity mode index (1..=20)
    #[arg(long, value_name = "M")]
    pub m: Option<usize>,
    /// Weight of the first state of a pair
    #[arg(long, value_name = "P")]
    pub p1: Option<f64>,
    /// Weight of the second state of a pair
    #[arg(long, value_name = "P")]
    pub p2: Option<f64>,
    /// Slit width for the cavity family, e.g. 28um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub slit: Option<f64>,
    /// Sample instants for the pair family, e.g. 0ms,1.5ms
    #[arg(long, value_name = "LIST", value_parser = times_value)]
    pub times: Option<TimesMs>,
    /// Replace the beating pair density by its period average
    #[arg(long)]
    pub averaged: bool,
    /// Lower height bound (scaled for single/pair, um for cavity)
    #[arg(long, value_name = "Z")]
    pub z_min: Option<f64>,
    /// Upper height bound
    #[arg(long, value_name = "Z")]
    pub z_max: Option<f64>,
    /// Number of height samples (3..=4001)
    #[arg(long, value_name = "COUNT")]
    pub samples: Option<usize>,
}

pub struct WavefunctionCmd {
    family: WaveFamily,
    n: usize,
    n2: usize,
    m: usize,
    p1: f64,
    p2: f64,
    slit_um: f64,
    times_ms: Vec<f64>,
    averaged: bool,
    z_min: f64,
    z_max: f64,
    samples: usize,
    tol: Tolerances,
}

pub fn resolve_wavefunction(
    a: &WavefunctionArgs,
    r: &mut Resolver,
) -> Result<WavefunctionCmd, CliError> {
    let family = r.take("family", a.family, WaveFamily::Single, parse_enum_value)?;
    let n = r.take("n", a.n, 1, config::parse_usize)?;
    let n2 = r.take("n2", a.n2, 2, config::parse_usize)?;
    let m = r.take("m", a.m, 1, config::parse_usize)?;
    let p1 = r.take("p1", a.p1, 0.5, config::parse_plain_f64)?;
    let p2 = r.take("p2", a.p2, 0.5, config::parse_plain_f64)?;
    let slit_um = r.take("slit", a.slit, 28.0, config::parse_micron)?;
    let times_ms = r
        .take("times", a.times.clone(), TimesMs(vec![0.0]), times_value)?
        .0;
    let averaged = r.take(
        "averaged",
        if a.averaged { Some(true) } else { None },
        false,
        config::parse_bool,
    )?;
    let z_min = r.take("z-min", a.z_min, 0.0, config::parse_plain_f64)?;
    let default_z_max = match family {
        WaveFamily::Single | WaveFamily::Pair => 10.0,
        WaveFamily::Cavity => slit_um,
    };
    let z_max = r.take("z-max", a.z_max, default_z_max, config::parse_plain_f64)?;
    let samples = r.take("samples", a.samples, 201, config::parse_usize)?;

    check_index("n", n, 1, 50)?;
    check_index("n2", n2, 1, 50)?;
    check_index("m", m, 1, 20)?;
    check_length("slit", slit_um, 1000.0)?;
    if family == WaveFamily::Pair && n2 == n {
        return Err(usage("n2", format!("pair states must differ (both are {n})")));
    }
    let (p1, p2) = check_weights(p1, p2, family == WaveFamily::Pair)?;
    check_times(&times_ms)?;
    check_axis("z-min", z_min, z_max)?;
    check_samples("samples", samples)?;
    let tol = resolve_tolerances(r, &a.common)?;
    Ok(WavefunctionCmd {
        family,
        n,
        n2,
        m,
        p1,
        p2,
        slit_um,
        times_ms,
        averaged,
        z_min,
        z_max,
        samples,
        tol,
    })
}

impl Runnable for WavefunctionCmd {
    fn command_name(&self) -> &'static str {
        "wavefunction"
    }

    fn config_pairs(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("family".to_string(), enum_name(&self.family)),
            ("n".to_string(), self.n.to_string()),
            ("n2".to_string(), self.n2.to_string()),
            ("m".to_string(), self.m.to_string()),
            ("p1".to_string(), config::emit_f64(self.p1)),
            ("p2".to_string(), config::emit_f64(self.p2)),
            ("slit".to_string(), config::emit_micron(self.slit_um)),
            ("times".to_string(), config::emit_ms_list(&self.times_ms)),
            ("averaged".to_string(), config::emit_bool(self.averaged)),
            ("z-min".to_string(), config::emit_f64(self.z_min)),
            ("z-max".to_string(), config::emit_f64(self.z_max)),
            ("samples".to_string(), self.samples.to_string()),
        ];
        p.extend(self.tol.pairs());
        p
    }

    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
        let axis = axis_points(self.z_min, self.z_max, self.samples);
        match self.family {
            WaveFamily::Single => {
                let psi = gravity::eigenfunction(self.n);
                let rows = axis
                    .iter()
                    .map(|z| {
                        let v = psi.eval(*z);
                        vec![Cell::Num(*z), Cell::Num(v), Cell::Num(v * v)]
                    })
                    .collect();
                Ok((vec!["zeta", "psi", "density"], rows))
            }
            WaveFamily::Cavity => {
                let mode = solve_mode(self.slit_um, self.m, "wavefunction")?;
                let rows = axis
                    .iter()
                    .map(|z| {
                        let v = mode.spatial(*z);
                        vec![Cell::Num(*z), Cell::Num(v), Cell::Num(v * v)]
                    })
                    .collect();
                Ok((vec!["z_um", "psi", "density"], rows))
            }
            WaveFamily::Pair => {
                if self.averaged {
                    let a = gravity::eigenfunction(self.n);
                    let b = gravity::eigenfunction(self.n2);
                    let rows = axis
                        .iter()
                        .map(|z| {
                            let d = self.p1 * a.eval(*z).powi(2) + self.p2 * b.eval(*z).powi(2);
                            vec![Cell::Num(*z), Cell::Num(d)]
                        })
                        .collect();
                    return Ok((vec!["zeta", "density"], rows));
                }
                let pair = wigner::weighted_pair(&reference(), self.n, self.n2, self.p1, self.p2)
                    .map_err(numerical)?;
                let mut rows = Vec::with_capacity(axis.len() * self.times_ms.len());
                for z in &axis {
                    for t_ms in &self.times_ms {
                        rows.push(vec![
                            Cell::Num(*z),
                            Cell::Num(*t_ms),
                            Cell::Num(pair.density(*z, t_ms * 1e-3)),
                        ]);
                    }
                }
                Ok((vec!["zeta", "t_ms", "density"], rows))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

#[derive(Args, Clone, Debug, Default)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// State family (single/pair use scaled k, cavity uses 1/um)
    #[arg(long, value_enum, value_name = "FAMILY")]
    pub family: Option<WaveFamily>,
    /// Principal index of the (first) single-mirror state (1..=50)
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Second state of a pair (1..=50, distinct from --n)
    #[arg(long, value_name = "N")]
    pub n2: Option<usize>,
    /// Cavity mode index (1..=20)
    #[arg(long, value_name = "M")]
    pub m: Option<usize>,
    /// Weight of the first state of a pair
    #[arg(long, value_name = "P")]
    pub p1: Option<f64>,
    /// Weight of the second state of a pair
    #[arg(long, value_name = "P")]
    pub p2: Option<f64>,
    /// Slit width for the cavity family, e.g. 28um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub slit: Option<f64>,
    /// Sample instants for the pair family, e.g. 0ms,1.5ms
    #[arg(long, value_name = "LIST", value_parser = times_value)]
    pub times: Option<TimesMs>,
    /// Lower wavenumber bound
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub k_min: Option<f64>,
    /// Upper wavenumber bound
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub k_max: Option<f64>,
    /// Number of wavenumber samples (3..=4001)
    #[arg(long, value_name = "COUNT")]
    pub samples: Option<usize>,
}

pub struct SpectrumCmd {
    family: WaveFamily,
    n: usize,
    n2: usize,
    m: usize,
    p1: f64,
    p2: f64,
    slit_um: f64,
    times_ms: Vec<f64>,
    k_min: f64,
    k_max: f64,
    samples: usize,
    tol: Tolerances,
}

pub fn resolve_spectrum(a: &SpectrumArgs, r: &mut Resolver) -> Result<SpectrumCmd, CliError> {
    let family = r.take("family", a.family, WaveFamily::Single, parse_enum_value)?;
    let n = r.take("n", a.n, 1, config::parse_usize)?;
    let n2 = r.take("n2", a.n2, 2, config::parse_usize)?;
    let m = r.take("m", a.m, 1, config::parse_usize)?;
    let p1 = r.take("p1", a.p1, 0.5, config::parse_plain_f64)?;
    let p2 = r.take("p2", a.p2, 0.5, config::parse_plain_f64)?;
    let slit_um = r.take("slit", a.slit, 28.0, config::parse_micron)?;
    let times_ms = r
        .take("times", a.times.clone(), TimesMs(vec![0.0]), times_value)?
        .0;
    let default_cap = match family {
        WaveFamily::Single | WaveFamily::Pair => 6.0,
        WaveFamily::Cavity => 3.0,
    };
    let k_min = r.take("k-min", a.k_min, -default_cap, config::parse_plain_f64)?;
    let k_max = r.take("k-max", a.k_max, default_cap, config::parse_plain_f64)?;
    let samples = r.take("samples", a.samples, 201, config::parse_usize)?;

    check_index("n", n, 1, 50)?;
    check_index("n2", n2, 1, 50)?;
    check_index("m", m, 1, 20)?;
    check_length("slit", slit_um, 1000.0)?;
    if family == WaveFamily::Pair && n2 == n {
        return Err(usage("n2", format!("pair states must differ (both are {n})")));
    }
    let (p1, p2) = check_weights(p1, p2, family == WaveFamily::Pair)?;
    check_times(&times_ms)?;
    check_axis("k-min", k_min, k_max)?;
    check_samples("samples", samples)?;
    let tol = resolve_tolerances(r, &a.common)?;
    Ok(SpectrumCmd {
        family,
        n,
        n2,
        m,
        p1,
        p2,
        slit_um,
        times_ms,
        k_min,
        k_max,
        samples,
        tol,
    })
}

impl Runnable for SpectrumCmd {
    fn command_name(&self) -> &'static str {
        "spectrum"
    }

    fn config_pairs(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("family".to_string(), enum_name(&self.family)),
            ("n".to_string(), self.n.to_string()),
            ("n2".to_string(), self.n2.to_string()),
            ("m".to_string(), self.m.to_string()),
            ("p1".to_string(), config::emit_f64(self.p1)),
            ("p2".to_string(), config::emit_f64(self.p2)),
            ("slit".to_string(), config::emit_micron(self.slit_um)),
            ("times".to_string(), config::emit_ms_list(&self.times_ms)),
            ("k-min".to_string(), config::emit_f64(self.k_min)),
            ("k-max".to_string(), config::emit_f64(self.k_max)),
            ("samples".to_string(), self.samples.to_string()),
        ];
        p.extend(self.tol.pairs());
        p
    }

    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
        let quad = self.tol.quad();
        let axis = axis_points(self.k_min, self.k_max, self.samples);
        match self.family {
            WaveFamily::Single => {
                let psi = gravity::eigenfunction(self.n);
                let mut rows = Vec::with_capacity(axis.len());
                for k in &axis {
                    let d = gravity::momentum_spectrum(&psi, *k, &quad).map_err(numerical)?;
                    rows.push(vec![Cell::Num(*k), Cell::Num(d)]);
                }
                Ok((vec!["k", "density"], rows))
            }
            WaveFamily::Cavity => {
                let mode = solve_mode(self.slit_um, self.m, "spectrum")?;
                let mut rows = Vec::with_capacity(axis.len());
                for k in &axis {
                    let d = mode.spectral_function(*k, &quad).map_err(numerical)?;
                    rows.push(vec![Cell::Num(*k), Cell::Num(d)]);
                }
                Ok((vec!["k_per_um", "density"], rows))
            }
            WaveFamily::Pair => {
                let scales = reference();
                let psi_a = gravity::eigenfunction(self.n);
                let psi_b = gravity::eigenfunction(self.n2);
                let omega = scales.angular_frequency(
                    gravity::level(&scales, self.n2).energy
                        - gravity::level(&scales, self.n).energy,
                );
                let mut rows = Vec::with_capacity(axis.len() * self.times_ms.len());
                for k in &axis {
                    let fa = gravity::momentum_amplitude(&psi_a, *k, &quad).map_err(numerical)?;
                    let fb = gravity::momentum_amplitude(&psi_b, *k, &quad).map_err(numerical)?;
                    for t_ms in &self.times_ms {
                        let rotation = Complex64::from_polar(1.0, -omega * t_ms * 1e-3);
                        let d = (self.p1.sqrt() * fa + rotation * self.p2.sqrt() * fb).norm_sqr();
                        rows.push(vec![Cell::Num(*k), Cell::Num(*t_ms), Cell::Num(d)]);
                    }
                }
                Ok((vec!["k", "t_ms", "density"], rows))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// wigner
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WignerFamily {
    /// One bound state over a single mirror (scaled axes)
    Single,
    /// Weighted two-state superposition over a single mirror (scaled axes)
    Pair,
    /// One cavity mode between two mirrors (micron axes)
    Cavity,
    /// A cavity mode dropped onto the lower mirror (micron axes)
    Release,
    /// Two dropped cavity modes combined with weights p1, p2 (micron axes)
    Mixture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MixtureKind {
    /// Amplitude-level combination with interference
    Coherent,
    /// Probability-level combination of the two densities
    Incoherent,
}

#[derive(Args, Clone, Debug, Default)]
pub struct WignerArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// State family
    #[arg(long, value_enum, value_name = "FAMILY")]
    pub family: Option<WignerFamily>,
    /// Principal index of the (first) single-mirror state (1..=50)
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Second state of a pair (1..=50, distinct from --n)
    #[arg(long, value_name = "N")]
    pub n2: Option<usize>,
    /// Cavity mode index (1..=20)
    #[arg(long, value_name = "M")]
    pub m: Option<usize>,
    /// Weight of the first state (pair/mixture families)
    #[arg(long, value_name = "P")]
    pub p1: Option<f64>,
    /// Weight of the second state (pair/mixture families)
    #[arg(long, value_name = "P")]
    pub p2: Option<f64>,
    /// Slit width, e.g. 28um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub slit: Option<f64>,
    /// Release step height, e.g. 27um (release/mixture families)
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub step: Option<f64>,
    /// Number of bound states kept by the release expansion (1..=30)
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
    /// Coherent or incoherent combination (mixture family)
    #[arg(long, value_enum, value_name = "KIND")]
    pub kind: Option<MixtureKind>,
    /// Sample instant, e.g. 3ms
    #[arg(long, value_name = "T", value_parser = ms_value)]
    pub t: Option<f64>,
    /// Replace the beating pair by its period average (pair family)
    #[arg(long)]
    pub averaged: bool,
    /// Lower height bound (scaled or um by family)
    #[arg(long, value_name = "Z")]
    pub z_min: Option<f64>,
    /// Upper height bound
    #[arg(long, value_name = "Z")]
    pub z_max: Option<f64>,
    /// Height samples (3..=4001)
    #[arg(long, value_name = "COUNT")]
    pub z_samples: Option<usize>,
    /// Lower wavenumber bound
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub k_min: Option<f64>,
    /// Upper wavenumber bound
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub k_max: Option<f64>,
    /// Wavenumber samples (3..=4001)
    #[arg(long, value_name = "COUNT")]
    pub k_samples: Option<usize>,
}

pub struct WignerCmd {
    family: WignerFamily,
    n: usize,
    n2: usize,
    m: usize,
    p1: f64,
    p2: f64,
    slit_um: f64,
    step_um: f64,
    n_max: usize,
    kind: MixtureKind,
    t_ms: f64,
    averaged: bool,
    z_min: f64,
    z_max: f64,
    z_samples: usize,
    k_min: f64,
    k_max: f64,
    k_samples: usize,
    tol: Tolerances,
}

pub fn resolve_wigner(a: &WignerArgs, r: &mut Resolver) -> Result<WignerCmd, CliError> {
    let family = r.take("family", a.family, WignerFamily::Single, parse_enum_value)?;
    let n = r.take("n", a.n, 1, config::parse_usize)?;
    let n2 = r.take("n2", a.n2, 2, config::parse_usize)?;
    let m = r.take("m", a.m, 1, config::parse_usize)?;
    let p1 = r.take("p1", a.p1, 0.5, config::parse_plain_f64)?;
    let p2 = r.take("p2", a.p2, 0.5, config::parse_plain_f64)?;
    let slit_um = r.take("slit", a.slit, 28.0, config::parse_micron)?;
    let step_um = r.take("step", a.step, 27.0, config::parse_micron)?;
    let n_max = r.take("n-max", a.n_max, 15, config::parse_usize)?;
    let kind = r.take("kind", a.kind, MixtureKind::Coherent, parse_enum_value)?;
    let t_ms = r.take("t", a.t, 0.0, config::parse_ms)?;
    let averaged = r.take(
        "averaged",
        if a.averaged { Some(true) } else { None },
        false,
        config::parse_bool,
    )?;
    let (z_hi, k_cap) = match family {
        WignerFamily::Single | WignerFamily::Pair => (10.0, 6.0),
        WignerFamily::Cavity => (slit_um, 3.0),
        WignerFamily::Release | WignerFamily::Mixture => (80.0, 3.0),
    };
    let z_min = r.take("z-min", a.z_min, 0.0, config::parse_plain_f64)?;
    let z_max = r.take("z-max", a.z_max, z_hi, config::parse_plain_f64)?;
    let z_samples = r.take("z-samples", a.z_samples, 201, config::parse_usize)?;
    let k_min = r.take("k-min", a.k_min, -k_cap, config::parse_plain_f64)?;
    let k_max = r.take("k-max", a.k_max, k_cap, config::parse_plain_f64)?;
    let k_samples = r.take("k-samples", a.k_samples, 201, config::parse_usize)?;

    check_index("n", n, 1, 50)?;
    check_index("n2", n2, 1, 50)?;
    check_index("m", m, 1, 20)?;
    check_length("slit", slit_um, 1000.0)?;
    check_length("step", step_um, 1000.0)?;
    check_index("n-max", n_max, 1, 30)?;
    if family == WignerFamily::Pair && n2 == n {
        return Err(usage("n2", format!("pair states must differ (both are {n})")));
    }
    let (p1, p2) = check_weights(
        p1,
        p2,
        matches!(family, WignerFamily::Pair | WignerFamily::Mixture),
    )?;
    if !(0.0..=1000.0).contains(&t_ms) {
        return Err(usage("t", format!("must lie in 0ms..=1000ms (got {t_ms}ms)")));
    }
    check_axis("z-min", z_min, z_max)?;
    check_axis("k-min", k_min, k_max)?;
    check_samples("z-samples", z_samples)?;
    check_samples("k-samples", k_samples)?;
    let tol = resolve_tolerances(r, &a.common)?;
    Ok(WignerCmd {
        family,
        n,
        n2,
        m,
        p1,
        p2,
        slit_um,
        step_um,
        n_max,
        kind,
        t_ms,
        averaged,
        z_min,
        z_max,
        z_samples,
        k_min,
        k_max,
        k_samples,
        tol,
    })
}

impl WignerCmd {
    fn grid(&self) -> Result<wigner::PhaseSpaceGrid, CliError> {
        let quad = self.tol.quad();
        let z_axis = axis_points(self.z_min, self.z_max, self.z_samples);
        let k_axis = axis_points(self.k_min, self.k_max, self.k_samples);
        let t = self.t_ms * 1e-3;
        match self.family {
            WignerFamily::Single => {
                let psi = gravity::eigenfunction(self.n);
                wigner::single_state_grid(&psi, &z_axis, &k_axis, &quad).map_err(numerical)
            }
            WignerFamily::Pair => {
                if self.averaged {
                    // The period average of the beating pair is the weighted
                    // sum of the two stationary grids.
                    let ga = wigner::single_state_grid(
                        &gravity::eigenfunction(self.n),
                        &z_axis,
                        &k_axis,
                        &quad,
                    )
                    .map_err(numerical)?;
                    let gb = wigner::single_state_grid(
                        &gravity::eigenfunction(self.n2),
                        &z_axis,
                        &k_axis,
                        &quad,
                    )
                    .map_err(numerical)?;
                    let values: Vec<f64> = ga
                        .values
                        .iter()
                        .zip(&gb.values)
                        .map(|(a, b)| self.p1 * a + self.p2 * b)
                        .collect();
                    return Ok(wigner::PhaseSpaceGrid {
                        z_axis,
                        k_axis,
                        values,
                        unit: wigner::AxisUnit::Scaled,
                    });
                }
                let pair = wigner::weighted_pair(&reference(), self.n, self.n2, self.p1, self.p2)
                    .map_err(numerical)?;
                wigner::pair_grid(&pair, t, &z_axis, &k_axis, &quad).map_err(numerical)
            }
            WignerFamily::Cavity => {
                let mode = solve_mode(self.slit_um, self.m, "wigner")?;
                wigner::double_mirror_grid(&mode, &z_axis, &k_axis, &quad).map_err(numerical)
            }
            WignerFamily::Release => {
                let mode = solve_mode(self.slit_um, self.m, "wigner")?;
                let exp = free_fall::expand(&mode, self.step_um, self.n_max, &quad)
                    .map_err(numerical)?;
                warn_fallback(&exp, "wigner");
                wigner::region2_grid(&exp, t, &z_axis, &k_axis, &quad).map_err(numerical)
            }
            WignerFamily::Mixture => {
                let modes =
                    double_mirror::solve_modes(&reference(), self.slit_um, 2).map_err(numerical)?;
                let first = free_fall::expand(&modes[0], self.step_um, self.n_max, &quad)
                    .map_err(numerical)?;
                let second = free_fall::expand(&modes[1], self.step_um, self.n_max, &quad)
                    .map_err(numerical)?;
                warn_fallback(&first, "wigner (mode 1)");
                warn_fallback(&second, "wigner (mode 2)");
                let mix = free_fall::two_mode_mixture(first, second, self.p1, self.p2)
                    .map_err(numerical)?;
                wigner::mixture_grid(
                    &mix,
                    t,
                    self.kind == MixtureKind::Coherent,
                    &z_axis,
                    &k_axis,
                    &quad,
                )
                .map_err(numerical)
            }
        }
    }
}

impl Runnable for WignerCmd {
    fn command_name(&self) -> &'static str {
        "wigner"
    }

    fn config_pairs(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("family".to_string(), enum_name(&self.family)),
            ("n".to_string(), self.n.to_string()),
            ("n2".to_string(), self.n2.to_string()),
            ("m".to_string(), self.m.to_string()),
            ("p1".to_string(), config::emit_f64(self.p1)),
            ("p2".to_string(), config::emit_f64(self.p2)),
            ("slit".to_string(), config::emit_micron(self.slit_um)),
            ("step".to_string(), config::emit_micron(self.step_um)),
            ("n-max".to_string(), self.n_max.to_string()),
            ("kind".to_string(), enum_name(&self.kind)),
            ("t".to_string(), config::emit_ms(self.t_ms)),
            ("averaged".to_string(), config::emit_bool(self.averaged)),
            ("z-min".to_string(), config::emit_f64(self.z_min)),
            ("z-max".to_string(), config::emit_f64(self.z_max)),
            ("z-samples".to_string(), self.z_samples.to_string()),
            ("k-min".to_string(), config::emit_f64(self.k_min)),
            ("k-max".to_string(), config::emit_f64(self.k_max)),
            ("k-samples".to_string(), self.k_samples.to_string()),
        ];
        p.extend(self.tol.pairs());
        p
    }

    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
        let grid = self.grid()?;
        let scaled = matches!(self.family, WignerFamily::Single | WignerFamily::Pair);
        let columns = if scaled {
            vec!["zeta", "k", "wigner"]
        } else {
            vec!["z_um", "k_per_um", "wigner"]
        };
        let mut rows = Vec::with_capacity(grid.len());
        for (i, z) in grid.z_axis.iter().enumerate() {
            for (j, k) in grid.k_axis.iter().enumerate() {
                rows.push(vec![Cell::Num(*z), Cell::Num(*k), Cell::Num(grid.value(i, j))]);
            }
        }
        Ok((columns, rows))
    }
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvolveObservable {
    /// Spatial density over the height axis at each time
    Space,
    /// Momentum density over the wavenumber axis at each time
    Momentum,
    /// Mean height, mean wavenumber and momentum-space norm per time
    Summary,
}

#[derive(Args, Clone, Debug, Default)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Cavity mode that is released (1..=20)
    #[arg(long, value_name = "M")]
    pub m: Option<usize>,
    /// Slit width of the preparation cavity, e.g. 28um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub slit: Option<f64>,
    /// Step height of the drop, e.g. 27um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub step: Option<f64>,
    /// Number of bound states kept by the expansion (1..=30)
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
    /// What to export
    #[arg(long, value_enum, value_name = "WHAT")]
    pub observable: Option<EvolveObservable>,
    /// Sample instants, e.g. 0ms,1.5ms,3ms
    #[arg(long, value_name = "LIST", value_parser = times_value)]
    pub times: Option<TimesMs>,
    /// Lower height bound, um
    #[arg(long, value_name = "Z")]
    pub z_min: Option<f64>,
    /// Upper height bound, um
    #[arg(long, value_name = "Z")]
    pub z_max: Option<f64>,
    /// Lower wavenumber bound, 1/um
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub k_min: Option<f64>,
    /// Upper wavenumber bound, 1/um
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub k_max: Option<f64>,
    /// Axis samples (3..=4001)
    #[arg(long, value_name = "COUNT")]
    pub samples: Option<usize>,
}

pub struct EvolveCmd {
    m: usize,
    slit_um: f64,
    step_um: f64,
    n_max: usize,
    observable: EvolveObservable,
    times_ms: Vec<f64>,
    z_min: f64,
    z_max: f64,
    k_min: f64,
    k_max: f64,
    samples: usize,
    tol: Tolerances,
}

pub fn resolve_evolve(a: &EvolveArgs, r: &mut Resolver) -> Result<EvolveCmd, CliError> {
    let m = r.take("m", a.m, 1, config::parse_usize)?;
    let slit_um = r.take("slit", a.slit, 28.0, config::parse_micron)?;
    let step_um = r.take("step", a.step, 27.0, config::parse_micron)?;
    let n_max = r.take("n-max", a.n_max, 15, config::parse_usize)?;
    let observable = r.take("observable", a.observable, EvolveObservable::Space, parse_enum_value)?;
    let times_ms = r
        .take("times", a.times.clone(), TimesMs(vec![0.0]), times_value)?
        .0;
    let z_min = r.take("z-min", a.z_min, 0.0, config::parse_plain_f64)?;
    let z_max = r.take("z-max", a.z_max, 80.0, config::parse_plain_f64)?;
    let k_min = r.take("k-min", a.k_min, -3.0, config::parse_plain_f64)?;
    let k_max = r.take("k-max", a.k_max, 3.0, config::parse_plain_f64)?;
    let samples = r.take("samples", a.samples, 201, config::parse_usize)?;

    check_index("m", m, 1, 20)?;
    check_length("slit", slit_um, 1000.0)?;
    check_length("step", step_um, 1000.0)?;
    check_index("n-max", n_max, 1, 30)?;
    check_times(&times_ms)?;
    check_axis("z-min", z_min, z_max)?;
    check_axis("k-min", k_min, k_max)?;
    check_samples("samples", samples)?;
    let tol = resolve_tolerances(r, &a.common)?;
    Ok(EvolveCmd {
        m,
        slit_um,
        step_um,
        n_max,
        observable,
        times_ms,
        z_min,
        z_max,
        k_min,
        k_max,
        samples,
        tol,
    })
}

impl Runnable for EvolveCmd {
    fn command_name(&self) -> &'static str {
        "evolve"
    }

    fn config_pairs(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("m".to_string(), self.m.to_string()),
            ("slit".to_string(), config::emit_micron(self.slit_um)),
            ("step".to_string(), config::emit_micron(self.step_um)),
            ("n-max".to_string(), self.n_max.to_string()),
            ("observable".to_string(), enum_name(&self.observable)),
            ("times".to_string(), config::emit_ms_list(&self.times_ms)),
            ("z-min".to_string(), config::emit_f64(self.z_min)),
            ("z-max".to_string(), config::emit_f64(self.z_max)),
            ("k-min".to_string(), config::emit_f64(self.k_min)),
            ("k-max".to_string(), config::emit_f64(self.k_max)),
            ("samples".to_string(), self.samples.to_string()),
        ];
        p.extend(self.tol.pairs());
        p
    }

    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
        let quad = self.tol.quad();
        let mode = solve_mode(self.slit_um, self.m, "evolve")?;
        let exp = free_fall::expand(&mode, self.step_um, self.n_max, &quad).map_err(numerical)?;
        warn_fallback(&exp, "evolve");
        match self.observable {
            EvolveObservable::Space => {
                let axis = axis_points(self.z_min, self.z_max, self.samples);
                let mut rows = Vec::with_capacity(axis.len() * self.times_ms.len());
                for z in &axis {
                    for t_ms in &self.times_ms {
                        rows.push(vec![
                            Cell::Num(*z),
                            Cell::Num(*t_ms),
                            Cell::Num(exp.spatial_density(*z, t_ms * 1e-3)),
                        ]);
                    }
                }
                Ok((vec!["z_um", "t_ms", "density"], rows))
            }
            EvolveObservable::Momentum => {
                let axis = axis_points(self.k_min, self.k_max, self.samples);
                let table = exp.momentum_table(&axis, &quad).map_err(numerical)?;
                let mut rows = Vec::with_capacity(axis.len() * self.times_ms.len());
                for (j, k) in axis.iter().enumerate() {
                    for t_ms in &self.times_ms {
                        rows.push(vec![
                            Cell::Num(*k),
                            Cell::Num(*t_ms),
                            Cell::Num(table.density(j, t_ms * 1e-3)),
                        ]);
                    }
                }
                Ok((vec!["k_per_um", "t_ms", "density"], rows))
            }
            EvolveObservable::Summary => {
                let mut rows = Vec::with_capacity(self.times_ms.len());
                for t_ms in &self.times_ms {
                    let t = t_ms * 1e-3;
                    let norm = exp.momentum_norm(t, 6.0, &quad).map_err(numerical)?;
                    rows.push(vec![
                        Cell::Num(*t_ms),
                        Cell::Num(exp.mean_position(t)),
                        Cell::Num(exp.mean_momentum(t)),
                        Cell::Num(norm),
                    ]);
                }
                Ok((vec!["t_ms", "mean_z_um", "mean_k_per_um", "momentum_norm"], rows))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// mixture
// ---------------------------------------------------------------------------

#[derive(Args, Clone, Debug, Default)]
pub struct MixtureArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Weight of the first released mode
    #[arg(long, value_name = "P")]
    pub p1: Option<f64>,
    /// Weight of the second released mode
    #[arg(long, value_name = "P")]
    pub p2: Option<f64>,
    /// Coherent or incoherent combination
    #[arg(long, value_enum, value_name = "KIND")]
    pub kind: Option<MixtureKind>,
    /// Slit width of the preparation cavity, e.g. 28um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub slit: Option<f64>,
    /// Step height of the drop, e.g. 27um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub step: Option<f64>,
    /// Number of bound states kept by each expansion (1..=30)
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
    /// Sample instants, e.g. 0ms,1.5ms,3ms
    #[arg(long, value_name = "LIST", value_parser = times_value)]
    pub times: Option<TimesMs>,
    /// Lower height bound, um
    #[arg(long, value_name = "Z")]
    pub z_min: Option<f64>,
    /// Upper height bound, um
    #[arg(long, value_name = "Z")]
    pub z_max: Option<f64>,
    /// Height samples (3..=4001)
    #[arg(long, value_name = "COUNT")]
    pub samples: Option<usize>,
}

pub struct MixtureCmd {
    p1: f64,
    p2: f64,
    kind: MixtureKind,
    slit_um: f64,
    step_um: f64,
    n_max: usize,
    times_ms: Vec<f64>,
    z_min: f64,
    z_max: f64,
    samples: usize,
    tol: Tolerances,
}

pub fn resolve_mixture(a: &MixtureArgs, r: &mut Resolver) -> Result<MixtureCmd, CliError> {
    let p1 = r.take("p1", a.p1, 0.5, config::parse_plain_f64)?;
    let p2 = r.take("p2", a.p2, 0.5, config::parse_plain_f64)?;
    let kind = r.take("kind", a.kind, MixtureKind::Coherent, parse_enum_value)?;
    let slit_um = r.take("slit", a.slit, 28.0, config::parse_micron)?;
    let step_um = r.take("step", a.step, 27.0, config::parse_micron)?;
    let n_max = r.take("n-max", a.n_max, 15, config::parse_usize)?;
    let times_ms = r
        .take("times", a.times.clone(), TimesMs(vec![0.0]), times_value)?
        .0;
    let z_min = r.take("z-min", a.z_min, 0.0, config::parse_plain_f64)?;
    let z_max = r.take("z-max", a.z_max, 80.0, config::parse_plain_f64)?;
    let samples = r.take("samples", a.samples, 201, config::parse_usize)?;

    let (p1, p2) = check_weights(p1, p2, true)?;
    check_length("slit", slit_um, 1000.0)?;
    check_length("step", step_um, 1000.0)?;
    check_index("n-max", n_max, 1, 30)?;
    check_times(&times_ms)?;
    check_axis("z-min", z_min, z_max)?;
    check_samples("samples", samples)?;
    let tol = resolve_tolerances(r, &a.common)?;
    Ok(MixtureCmd {
        p1,
        p2,
        kind,
        slit_um,
        step_um,
        n_max,
        times_ms,
        z_min,
        z_max,
        samples,
        tol,
    })
}

impl Runnable for MixtureCmd {
    fn command_name(&self) -> &'static str {
        "mixture"
    }

    fn config_pairs(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("p1".to_string(), config::emit_f64(self.p1)),
            ("p2".to_string(), config::emit_f64(self.p2)),
            ("kind".to_string(), enum_name(&self.kind)),
            ("slit".to_string(), config::emit_micron(self.slit_um)),
            ("step".to_string(), config::emit_micron(self.step_um)),
            ("n-max".to_string(), self.n_max.to_string()),
            ("times".to_string(), config::emit_ms_list(&self.times_ms)),
            ("z-min".to_string(), config::emit_f64(self.z_min)),
            ("z-max".to_string(), config::emit_f64(self.z_max)),
            ("samples".to_string(), self.samples.to_string()),
        ];
        p.extend(self.tol.pairs());
        p
    }

    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
        let quad = self.tol.quad();
        let modes = double_mirror::solve_modes(&reference(), self.slit_um, 2).map_err(numerical)?;
        let first = free_fall::expand(&modes[0], self.step_um, self.n_max, &quad).map_err(numerical)?;
        let second = free_fall::expand(&modes[1], self.step_um, self.n_max, &quad).map_err(numerical)?;
        warn_fallback(&first, "mixture (mode 1)");
        warn_fallback(&second, "mixture (mode 2)");
        let mix = free_fall::two_mode_mixture(first, second, self.p1, self.p2).map_err(numerical)?;
        let axis = axis_points(self.z_min, self.z_max, self.samples);
        let mut rows = Vec::with_capacity(axis.len() * self.times_ms.len());
        for z in &axis {
            for t_ms in &self.times_ms {
                let t = t_ms * 1e-3;
                let d = match self.kind {
                    MixtureKind::Coherent => mix.coherent_density(*z, t),
                    MixtureKind::Incoherent => mix.incoherent_density(*z, t),
                };
                rows.push(vec![Cell::Num(*z), Cell::Num(*t_ms), Cell::Num(d)]);
            }
        }
        Ok((vec!["z_um", "t_ms", "density"], rows))
    }
}

// ---------------------------------------------------------------------------
// yukawa
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum YukawaObservable {
    /// Unperturbed vs first-order level table
    Levels,
    /// Full matrix of perturbation elements over the bound states
    Matrix,
    /// Momentum-density difference map (perturbed minus unperturbed)
    Delta,
}

#[derive(Args, Clone, Debug, Default)]
pub struct YukawaArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Perturbation strength at the mirror, e.g. -1peV
    #[arg(long, value_name = "W0", value_parser = pev_value, allow_hyphen_values = true)]
    pub strength: Option<f64>,
    /// Perturbation range, e.g. 10um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub range: Option<f64>,
    /// Number of bound states in the basis (1..=30)
    #[arg(long, value_name = "N")]
    pub n_max: Option<usize>,
    /// What to export
    #[arg(long, value_enum, value_name = "WHAT")]
    pub observable: Option<YukawaObservable>,
    /// Cavity mode released for the delta map (1..=20)
    #[arg(long, value_name = "M")]
    pub m: Option<usize>,
    /// Slit width of the preparation cavity, e.g. 28um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub slit: Option<f64>,
    /// Step height of the drop, e.g. 27um
    #[arg(long, value_name = "LEN", value_parser = micron_value)]
    pub step: Option<f64>,
    /// Sample instants for the delta map, e.g. 1.5ms,3ms,9ms
    #[arg(long, value_name = "LIST", value_parser = times_value)]
    pub times: Option<TimesMs>,
    /// Lower wavenumber bound, 1/um
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub k_min: Option<f64>,
    /// Upper wavenumber bound, 1/um
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub k_max: Option<f64>,
    /// Wavenumber samples (3..=4001)
    #[arg(long, value_name = "COUNT")]
    pub samples: Option<usize>,
}

pub struct YukawaCmd {
    strength_pev: f64,
    range_um: f64,
    n_max: usize,
    observable: YukawaObservable,
    m: usize,
    slit_um: f64,
    step_um: f64,
    times_ms: Vec<f64>,
    k_min: f64,
    k_max: f64,
    samples: usize,
    tol: Tolerances,
}

pub fn resolve_yukawa(a: &YukawaArgs, r: &mut Resolver) -> Result<YukawaCmd, CliError> {
    let strength_pev = r.take("strength", a.strength, -1.0, config::parse_pev)?;
    let range_um = r.take("range", a.range, 10.0, config::parse_micron)?;
    let n_max = r.take("n-max", a.n_max, 15, config::parse_usize)?;
    let observable = r.take("observable", a.observable, YukawaObservable::Levels, parse_enum_value)?;
    let m = r.take("m", a.m, 1, config::parse_usize)?;
    let slit_um = r.take("slit", a.slit, 28.0, config::parse_micron)?;
    let step_um = r.take("step", a.step, 27.0, config::parse_micron)?;
    let times_ms = r
        .take("times", a.times.clone(), TimesMs(vec![3.0]), times_value)?
        .0;
    let k_min = r.take("k-min", a.k_min, -3.0, config::parse_plain_f64)?;
    let k_max = r.take("k-max", a.k_max, 3.0, config::parse_plain_f64)?;
    let samples = r.take("samples", a.samples, 201, config::parse_usize)?;

    if !(strength_pev.is_finite() && strength_pev.abs() <= 1000.0) {
        return Err(usage("strength", format!("must lie in -1000peV..=1000peV (got {strength_pev}peV)")));
    }
    check_length("range", range_um, 1e12)?;
    check_index("n-max", n_max, 1, 30)?;
    check_index("m", m, 1, 20)?;
    check_length("slit", slit_um, 1000.0)?;
    check_length("step", step_um, 1000.0)?;
    check_times(&times_ms)?;
    check_axis("k-min", k_min, k_max)?;
    check_samples("samples", samples)?;
    let tol = resolve_tolerances(r, &a.common)?;
    Ok(YukawaCmd {
        strength_pev,
        range_um,
        n_max,
        observable,
        m,
        slit_um,
        step_um,
        times_ms,
        k_min,
        k_max,
        samples,
        tol,
    })
}

impl Runnable for YukawaCmd {
    fn command_name(&self) -> &'static str {
        "yukawa"
    }

    fn config_pairs(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("strength".to_string(), config::emit_pev(self.strength_pev)),
            ("range".to_string(), config::emit_micron(self.range_um)),
            ("n-max".to_string(), self.n_max.to_string()),
            ("observable".to_string(), enum_name(&self.observable)),
            ("m".to_string(), self.m.to_string()),
            ("slit".to_string(), config::emit_micron(self.slit_um)),
            ("step".to_string(), config::emit_micron(self.step_um)),
            ("times".to_string(), config::emit_ms_list(&self.times_ms)),
            ("k-min".to_string(), config::emit_f64(self.k_min)),
            ("k-max".to_string(), config::emit_f64(self.k_max)),
            ("samples".to_string(), self.samples.to_string()),
        ];
        p.extend(self.tol.pairs());
        p
    }

    fn build(&self) -> Result<(Vec<&'static str>, Vec<Vec<Cell>>), CliError> {
        let quad = self.tol.quad();
        match self.observable {
            YukawaObservable::Levels => {
                let model =
                    YukawaModel::new(&reference(), self.strength_pev, self.range_um, self.n_max, &quad)
                        .map_err(numerical)?;
                let e = model.unperturbed_energies_pev();
                let eps = model.perturbed_energies_pev();
                let rows = (0..self.n_max)
                    .map(|i| {
                        vec![
                            Cell::Int((i + 1) as i64),
                            Cell::Num(e[i]),
                            Cell::Num(eps[i]),
                            Cell::Num(eps[i] - e[i]),
                        ]
                    })
                    .collect();
                Ok((vec!["n", "E_n_peV", "eps_n_peV", "shift_peV"], rows))
            }
            YukawaObservable::Matrix => {
                let model =
                    YukawaModel::new(&reference(), self.strength_pev, self.range_um, self.n_max, &quad)
                        .map_err(numerical)?;
                let j = model.matrix_pev();
                let mut rows = Vec::with_capacity(self.n_max * self.n_max);
                for row in 0..self.n_max {
                    for col in 0..self.n_max {
                        rows.push(vec![
                            Cell::Int((row + 1) as i64),
                            Cell::Int((col + 1) as i64),
                            Cell::Num(j[(row, col)]),
                        ]);
                    }
                }
                Ok((vec!["n_row", "n_col", "J_peV"], rows))
            }
            YukawaObservable::Delta => {
                let mode = solve_mode(self.slit_um, self.m, "yukawa")?;
                let base =
                    free_fall::expand(&mode, self.step_um, self.n_max, &quad).map_err(numerical)?;
                warn_fallback(&base, "yukawa");
                let perturbed =
                    PerturbedExpansion::new(base, self.strength_pev, self.range_um, &quad)
                        .map_err(numerical)?;
                let axis = axis_points(self.k_min, self.k_max, self.samples);
                let table = perturbed.base().momentum_table(&axis, &quad).map_err(numerical)?;
                let weights: Vec<(Vec<Complex64>, Vec<Complex64>)> = self
                    .times_ms
                    .iter()
                    .map(|t_ms| {
                        let t = t_ms * 1e-3;
                        (
                            perturbed.perturbed_weights(t),
                            perturbed.base().evolution_weights(t),
                        )
                    })
                    .collect();
                let mut rows = Vec::with_capacity(axis.len() * self.times_ms.len());
                for (j, k) in axis.iter().enumerate() {
                    for (t_ms, (w_pert, w_base)) in self.times_ms.iter().zip(&weights) {
                        let delta = table.weighted_amplitude(j, w_pert).norm_sqr()
                            - table.weighted_amplitude(j, w_base).norm_sqr();
                        rows.push(vec![Cell::Num(*k), Cell::Num(*t_ms), Cell::Num(delta)]);
                    }
                }
                Ok((vec!["k_per_um", "t_ms", "delta_density"], rows))
            }
        }
    }
}
