use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qudit_eet::config::{default_config, parse_config, Config, OutputFormat};
use qudit_eet::dynamics::EvolutionGrid;
use qudit_eet::entanglement::EntanglementTrace;
use qudit_eet::estimation::{estimate_table1, gamma_from_pulse};
use qudit_eet::excitation::{populations, prepare_initial_state};
use qudit_eet::experiments::{
    compare_truncations, entanglement_trace, max_entanglement, sweep_gamma, sweep_surface,
};
use qudit_eet::model::default_params;
use qudit_eet::output::{
    fmt_f, kv_file, populations_csv, surface_csv, sweep_csv, trace_csv, truncation_csv, write_text,
    Manifest, OutputError,
};
use qudit_eet::svg::{heatmap, line_plot};

/// Deterministic simulator of excitation transfer and entanglement
/// generation between two coupled four-level chromophores.
#[derive(Parser)]
#[command(name = "qudit-eet", version, about)]
struct Cli {
    /// TOML configuration file; shipped defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the configured one).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write SVG plots.
    #[arg(long, global = true)]
    svg: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pulse-excite one chromophore and report its level populations.
    Excite,
    /// Entropy of entanglement over the transfer phase γ₂ at fixed γ.
    Trace,
    /// Populations and refined maximum entanglement for each γ.
    SweepGamma,
    /// The full (γ, γ₂) entanglement surface.
    SweepSurface,
    /// The same run under every level-truncation of the model.
    CompareTruncations,
    /// Derive model ratios from two-site blocks, couplings, and dipoles.
    EstimateParams,
    /// Convert a pulse specification into the excitation parameter γ.
    GammaFromPulse,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Excite => "excite",
            Command::Trace => "trace",
            Command::SweepGamma => "sweep-gamma",
            Command::SweepSurface => "sweep-surface",
            Command::CompareTruncations => "compare-truncations",
            Command::EstimateParams => "estimate-params",
            Command::GammaFromPulse => "gamma-from-pulse",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut src = e.source();
            while let Some(s) = src {
                eprintln!("  caused by: {s}");
                src = s.source();
            }
            ExitCode::FAILURE
        }
    }
}

/// Collects the files of one run and writes the manifest at the end.
struct RunOutput {
    dir: PathBuf,
    formats: Vec<OutputFormat>,
    manifest: Manifest,
}

impl RunOutput {
    fn new(cfg: &Config, subcommand: &str, config_source: &str) -> Self {
        Self {
            dir: cfg.output.directory.clone(),
            formats: cfg.output.formats.clone(),
            manifest: Manifest {
                subcommand: subcommand.to_string(),
                config_source: config_source.to_string(),
                notices: cfg.notices.clone(),
                outputs: Vec::new(),
            },
        }
    }

    fn file(&mut self, name: &str, content: &str, desc: &str) -> Result<(), OutputError> {
        write_text(&self.dir, name, content)?;
        self.manifest.outputs.push((name.to_string(), desc.to_string()));
        Ok(())
    }

    fn csv(&mut self, name: &str, content: &str, desc: &str) -> Result<(), OutputError> {
        if self.formats.contains(&OutputFormat::Csv) {
            self.file(name, content, desc)?;
        }
        Ok(())
    }

    fn svg(&mut self, name: &str, content: &str, desc: &str) -> Result<(), OutputError> {
        if self.formats.contains(&OutputFormat::Svg) {
            self.file(name, content, desc)?;
        }
        Ok(())
    }

    fn finish(self) -> Result<(), OutputError> {
        write_text(&self.dir, "manifest.txt", &self.manifest.render())?;
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn Error>> {
    let (mut cfg, source) = match &cli.config {
        Some(path) => (parse_config(path)?, path.display().to_string()),
        None => (default_config(), "(defaults)".to_string()),
    };
    if let Some(dir) = cli.out {
        cfg.output.directory = dir;
    }
    if cli.svg && !cfg.output.formats.contains(&OutputFormat::Svg) {
        cfg.output.formats.push(OutputFormat::Svg);
    }
    for n in &cfg.notices {
        eprintln!("notice: {n}");
    }
    let mut out = RunOutput::new(&cfg, cli.command.name(), &source);

    match cli.command {
        Command::Excite => excite(&cfg, &mut out)?,
        Command::Trace => trace(&cfg, &mut out)?,
        Command::SweepGamma => run_sweep_gamma(&cfg, &mut out)?,
        Command::SweepSurface => run_sweep_surface(&cfg, &mut out)?,
        Command::CompareTruncations => run_compare(&cfg, &mut out)?,
        Command::EstimateParams => estimate(&cfg, &mut out)?,
        Command::GammaFromPulse => pulse_gamma(&cfg, &mut out)?,
    }

    out.finish()?;
    Ok(())
}

fn excite(cfg: &Config, out: &mut RunOutput) -> Result<(), Box<dyn Error>> {
    let psi = prepare_initial_state(&cfg.model, &cfg.params)?;
    let pops = populations(&psi);
    println!(
        "post-pulse populations ({}, gamma = {}):",
        cfg.model.truncation.label(),
        cfg.params.gamma
    );
    for (level, p) in pops.iter().enumerate() {
        println!("  p{level} = {p:.6}");
    }
    out.csv("excite.csv", &populations_csv(&pops), "post-pulse level populations")?;
    Ok(())
}

fn trace_series(trace: &EntanglementTrace) -> (String, Vec<(f64, f64)>) {
    (
        format!("gamma = {}", trace.gamma),
        trace.samples.clone(),
    )
}

fn trace(cfg: &Config, out: &mut RunOutput) -> Result<(), Box<dyn Error>> {
    let grid = EvolutionGrid::linspace(cfg.params.gamma2_max, cfg.grid.samples)?;
    let trace = entanglement_trace(&cfg.model, &cfg.params, &grid)?;
    let ms = max_entanglement(&cfg.model, &cfg.params, &grid)?;
    println!(
        "trace ({}, gamma = {}): {} samples on gamma2 in [0, {}]",
        cfg.model.truncation.label(),
        cfg.params.gamma,
        grid.len(),
        cfg.params.gamma2_max
    );
    println!(
        "max E = {:.6} at gamma2 = {:.6} (grid value {:.6}, refined = {})",
        ms.e_max, ms.gamma2_at_max, ms.coarse_e_max, ms.refined
    );
    out.csv("trace.csv", &trace_csv(&trace), "entropy of entanglement over gamma2")?;
    out.svg(
        "trace.svg",
        &line_plot(
            "entropy of entanglement",
            "gamma2",
            "E",
            &[trace_series(&trace)],
        ),
        "trace plot",
    )?;
    Ok(())
}

fn run_sweep_gamma(cfg: &Config, out: &mut RunOutput) -> Result<(), Box<dyn Error>> {
    let grid = EvolutionGrid::linspace(cfg.params.gamma2_max, cfg.grid.sweep_samples)?;
    let gammas = cfg.grid.gamma_values();
    let sweep = sweep_gamma(&cfg.model, &cfg.params, &gammas, &grid)?;
    println!(
        "sweep over {} gammas in [{}, {}], e_max searched on {} gamma2 samples + refinement",
        gammas.len(),
        cfg.grid.gamma_min,
        cfg.grid.gamma_max,
        grid.len()
    );
    if let (Some(first), Some(last)) = (sweep.rows.first(), sweep.rows.last()) {
        println!(
            "e_max: {:.6} at gamma = {} ... {:.6} at gamma = {}",
            first.e_max, first.gamma, last.e_max, last.gamma
        );
    }
    println!(
        "largest e_max drop between consecutive rows = {}",
        fmt_f(sweep.largest_emax_drop)
    );
    out.csv(
        "sweep_gamma.csv",
        &sweep_csv(&sweep),
        "populations and max entanglement per gamma",
    )?;
    let emax_series = (
        "e_max".to_string(),
        sweep.rows.iter().map(|r| (r.gamma, r.e_max)).collect::<Vec<_>>(),
    );
    let p1_series = (
        "p1 after pulse".to_string(),
        sweep.rows.iter().map(|r| (r.gamma, r.populations[1])).collect::<Vec<_>>(),
    );
    out.svg(
        "sweep_gamma.svg",
        &line_plot("max entanglement vs excitation", "gamma", "", &[emax_series, p1_series]),
        "sweep plot",
    )?;
    Ok(())
}

fn run_sweep_surface(cfg: &Config, out: &mut RunOutput) -> Result<(), Box<dyn Error>> {
    let grid = EvolutionGrid::linspace(cfg.params.gamma2_max, cfg.grid.surface_samples)?;
    let gammas = cfg.grid.gamma_values();
    let cells = sweep_surface(&cfg.model, &cfg.params, &gammas, &grid)?;
    let best = cells
        .iter()
        .fold(None::<&qudit_eet::experiments::SurfaceCell>, |acc, c| match acc {
            Some(b) if b.entropy >= c.entropy => acc,
            _ => Some(c),
        });
    println!(
        "surface: {} gammas x {} gamma2 samples = {} cells",
        gammas.len(),
        grid.len(),
        cells.len()
    );
    if let Some(b) = best {
        println!(
            "surface max E = {:.6} at gamma = {:.6}, gamma2 = {:.6}",
            b.entropy, b.gamma, b.gamma2
        );
    }
    out.csv("surface.csv", &surface_csv(&cells), "entropy over the (gamma, gamma2) grid")?;
    let values: Vec<f64> = cells.iter().map(|c| c.entropy).collect();
    out.svg(
        "surface.svg",
        &heatmap("entropy of entanglement", "gamma2", "gamma", grid.values(), &gammas, &values),
        "surface heat map",
    )?;
    Ok(())
}

fn run_compare(cfg: &Config, out: &mut RunOutput) -> Result<(), Box<dyn Error>> {
    let grid = EvolutionGrid::linspace(cfg.params.gamma2_max, cfg.grid.surface_samples)?;
    let cmp = compare_truncations(&cfg.model, &cfg.params, cfg.params.gamma, &grid)?;
    println!("truncation comparison at gamma = {}:", cmp.gamma);
    for (mode, ms) in &cmp.maxima {
        println!(
            "  {:<24} e_max = {:.6} at gamma2 = {:.6}",
            mode.label(),
            ms.e_max,
            ms.gamma2_at_max
        );
    }
    for (a, b, dev) in &cmp.pairwise_deviation {
        println!("  max |dE| {} vs {} = {:.6}", a.label(), b.label(), dev);
    }
    out.csv(
        "compare_truncations.csv",
        &truncation_csv(&cmp),
        "traces for every truncation",
    )?;
    let series: Vec<(String, Vec<(f64, f64)>)> = cmp
        .traces
        .iter()
        .map(|t| (t.truncation.label().to_string(), t.samples.clone()))
        .collect();
    out.svg(
        "compare_truncations.svg",
        &line_plot("truncation comparison", "gamma2", "E", &series),
        "comparison plot",
    )?;
    Ok(())
}

fn estimate(cfg: &Config, out: &mut RunOutput) -> Result<(), Box<dyn Error>> {
    let (model, report) = estimate_table1(
        &cfg.estimation.block_a,
        &cfg.estimation.block_b,
        &cfg.estimation.v,
        &cfg.estimation.site_dipoles,
    )?;
    let text = report.render_text();
    print!("{text}");
    println!(
        "derived level ratios: ({}, {}, {:.9}, {}*)",
        model.level_ratios[0], model.level_ratios[1], model.level_ratios[2], model.level_ratios[3]
    );
    println!(
        "derived dipole ratios: ({}, {:.9}, {}*)",
        model.dipole_ratios[0], model.dipole_ratios[1], model.dipole_ratios[2]
    );
    let ratios: Vec<String> = model
        .coupling_ratios
        .iter()
        .enumerate()
        .map(|(i, r)| if i >= 4 { format!("{r}*") } else { format!("{r:.9}") })
        .collect();
    println!("derived coupling ratios: ({})", ratios.join(", "));
    println!("(* assigned canonical constants, not derived from these inputs)");
    out.file("report.txt", &text, "full estimation report")?;
    out.file("report.kv", &kv_file(&report.key_values()), "estimation values, machine readable")?;
    Ok(())
}

fn pulse_gamma(cfg: &Config, out: &mut RunOutput) -> Result<(), Box<dyn Error>> {
    let lab = cfg.estimation.pulse;
    let pulse = lab.to_pulse_spec();
    let gamma = gamma_from_pulse(&pulse)?;
    let reference = default_params().gamma;
    println!(
        "pulse: {} nJ, {} fs, {} um^2, {} D",
        lab.energy_nj, lab.duration_fs, lab.cross_section_um2, lab.dipole_debye
    );
    println!("gamma (formula) = {gamma:.6}");
    println!("gamma (default) = {reference:.6}");
    println!("formula/default = {:.4}", gamma / reference);
    out.file(
        "gamma_pulse.kv",
        &kv_file(&[
            ("gamma_formula".to_string(), gamma),
            ("gamma_default".to_string(), reference),
            ("ratio_formula_to_default".to_string(), gamma / reference),
        ]),
        "pulse-derived excitation parameter",
    )?;
    Ok(())
}
