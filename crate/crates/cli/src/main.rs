use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ratc_core::control::{Autopilot, ControllerMode};
use ratc_core::dynamics::{trim, AirData, AircraftModel, Environment, TrimOptions};
use ratc_core::scenario::{
    compare_controllers, export_csv, load_config, run_scenario, summary_table, write_summary_csv, RunStatus,
    ScenarioConfig, SummaryRow,
};
use ratc_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "ratc",
    version,
    about = "Fixed-wing AOTC/RATC lateral control simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the gust seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the simulated duration (s).
    #[arg(long, global = true)]
    duration: Option<f64>,

    /// Turn the course-command slew limiter on or off.
    #[arg(long, global = true)]
    slew: Option<Toggle>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Aotc,
    Ratc,
}

impl From<Mode> for ControllerMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Aotc => ControllerMode::Aotc,
            Mode::Ratc => ControllerMode::Ratc,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fly one controller over the scenario and write the per-step log.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        controller: Option<Mode>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Fly both controllers with identical plan and wind, then tabulate.
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print the synthesized heading, roll and course gains at trim.
    Gains {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve straight-and-level trim.
    Trim {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        airspeed: Option<f64>,
    },
}

fn load(cli: &Cli, path: &Path) -> Result<ScenarioConfig> {
    let mut cfg = load_config(path)?;
    if let Some(seed) = cli.seed {
        cfg.wind.seed = seed;
    }
    if let Some(d) = cli.duration {
        cfg.duration = d;
    }
    if let Some(s) = cli.slew {
        cfg.guidance.slew_enabled = matches!(s, Toggle::On);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn status_line(status: &RunStatus) -> String {
    match status {
        RunStatus::Completed => "plan completed".into(),
        RunStatus::Incomplete => "duration cap reached before plan completion".into(),
        RunStatus::Failed { time, message, .. } => format!("failed at t = {time:.2} s: {message}"),
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Simulate {
            config,
            controller,
            csv,
        } => {
            let cfg = load(cli, config)?;
            eprint!("{}", cfg.describe());
            let mode = controller.map(ControllerMode::from).unwrap_or(cfg.mode);
            let result = run_scenario(&cfg, mode)?;
            if let Some(path) = csv.clone().or_else(|| cfg.csv.clone()) {
                export_csv(&result, &path)?;
                eprintln!("wrote {}", path.display());
            }
            println!(
                "{} {}: {} ({} steps)",
                cfg.name,
                mode,
                status_line(&result.status),
                result.samples.len()
            );
            let result = result.ok()?;
            match result.stats() {
                Ok(stats) => print!(
                    "{}",
                    summary_table(&[SummaryRow::from_stats(&cfg.name, mode, &stats)])
                ),
                Err(Error::InsufficientData { got, .. }) => {
                    println!("no statistics: {got} samples after the {} s warm-up", cfg.warmup)
                }
                Err(e) => return Err(e),
            }
        }
        Command::Compare { config, out_dir } => {
            let cfg = load(cli, config)?;
            eprint!("{}", cfg.describe());
            let cmp = compare_controllers(&cfg)?;
            print!("{}", summary_table(&cmp.rows));
            print!("{}", cmp.ratio_lines());
            if let Some(dir) = out_dir.clone().or_else(|| cfg.out_dir.clone()) {
                std::fs::create_dir_all(&dir).map_err(|e| Error::Io {
                    path: dir.clone(),
                    source: e,
                })?;
                export_csv(&cmp.aotc, &dir.join("aotc.csv"))?;
                export_csv(&cmp.ratc, &dir.join("ratc.csv"))?;
                write_summary_csv(&cmp.rows, &dir.join("summary.csv"))?;
                let txt = dir.join("summary.txt");
                std::fs::write(&txt, summary_table(&cmp.rows) + &cmp.ratio_lines())
                    .map_err(|e| Error::Io { path: txt, source: e })?;
                eprintln!("wrote {}", dir.display());
            }
        }
        Command::Gains { config } => {
            let cfg = load(cli, config)?;
            let model = AircraftModel::new(cfg.aircraft)?;
            let sol = trim(&model, cfg.airspeed, 0.0, &TrimOptions::default())?;
            let ap = Autopilot::new(
                cfg.mode,
                cfg.controller,
                model,
                &sol,
                cfg.plan.altitude_agl,
                cfg.airspeed,
            )?;
            let air = AirData::from_state(&sol.state, &Environment::calm());
            let coeffs = ratc_core::dynamics::combined_yaw_coeffs(
                &model.params,
                &model.gammas,
                &air,
                sol.state.p,
                sol.command.delta_a,
            )?;
            let (ratc, aotc, lon) = ap.scheduled_gains(&sol.state, &air)?;
            let plant = ratc_core::control::roll_plant(&model, cfg.airspeed);
            println!("flight condition   Va = {} m/s, level trim", cfg.airspeed);
            println!("a_psi1             {:.6} 1/s", coeffs.a_psi1);
            println!("a_psi2             {:.6} 1/s^2", coeffs.a_psi2);
            println!("RATC kp_psi        {:.6}", ratc.kp_psi);
            println!("RATC kd_psi        {:.6} s", ratc.kd_psi);
            println!("design wn / zeta   {} rad/s / {}", ratc.wn_psi, ratc.zeta_psi);
            println!("a_phi1 / a_phi2    {:.6} / {:.6}", plant.a_phi1, plant.a_phi2);
            println!("AOTC kp_roll       {:.6}", aotc.kp_roll);
            println!("AOTC kd_roll       {:.6} s", aotc.kd_roll);
            println!("AOTC kp_course     {:.6}", aotc.kp_course);
            println!("AOTC ki_course     {:.6} 1/s", aotc.ki_course);
            println!(
                "AOTC wn roll/course {:.3} / {:.3} rad/s (separation {})",
                aotc.wn_roll, aotc.wn_course, aotc.separation
            );
            println!("pitch kp / kd      {:.6} / {:.6}", lon.kp_pitch, lon.kd_pitch);
            println!(
                "altitude kp / ki   {:.6} / {:.6}",
                lon.kp_altitude, lon.ki_altitude
            );
            println!(
                "airspeed kp / ki   {:.6} / {:.6}",
                lon.kp_airspeed, lon.ki_airspeed
            );
        }
        Command::Trim { config, airspeed } => {
            let cfg = load(cli, config)?;
            let va = airspeed.unwrap_or(cfg.airspeed);
            let model = AircraftModel::new(cfg.aircraft)?;
            let sol = trim(&model, va, 0.0, &TrimOptions::default())?;
            println!("airspeed   {va} m/s");
            println!("alpha      {:.4} deg", sol.alpha().to_degrees());
            println!("theta      {:.4} deg", sol.state.theta.to_degrees());
            println!("delta_e    {:.4} deg", sol.command.delta_e.to_degrees());
            println!("delta_t    {:.4}", sol.command.delta_t);
            println!("delta_a    {:.4} deg", sol.command.delta_a.to_degrees());
            println!("delta_r    {:.4} deg", sol.command.delta_r.to_degrees());
            println!(
                "residual   {:.3e} after {} iterations",
                sol.residual, sol.iterations
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
