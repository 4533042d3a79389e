//! One function per command. Each writes its artifacts into the output directory and
//! returns the checks it evaluated.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use breathers::checks::{self, Check, CriterionReport, SuiteParams};
use breathers::evolution::{self, Domain, EvolutionConfig, SeedMode};
use breathers::families::{self, FamilyCatalog};
use breathers::spectral::{self, Basis, SpectrumReport};
use breathers::{exact, io, Breather, BreatherKind, Error, SpaceTimeGrid, C64};
use serde::Serialize;

use crate::config::{BasisChoice, Command, ConfigError, ExperimentConfig, Kind};
use crate::svg::{Plot, Range};

pub const TOOL: &str = "breathers";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wrapper for every JSON artifact.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub seed: u64,
    pub config: &'a ExperimentConfig,
    pub result: T,
}

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Runtime(Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "configuration error: {e}"),
            RunError::Runtime(e) => write!(f, "{e}"),
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            // parameter problems surface as configuration errors
            Error::OutOfRange { .. } | Error::Grid(_) | Error::UnderResolved { .. } | Error::Incompatible(_) => {
                RunError::Config(ConfigError(e.to_string()))
            }
            other => RunError::Runtime(other),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Runtime(e.into())
    }
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 2,
            RunError::Runtime(_) => 1,
        }
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub artifacts: Vec<PathBuf>,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn exit_code(&self) -> u8 {
        if self.failures().is_empty() {
            0
        } else {
            1
        }
    }
}

struct Out<'a> {
    cfg: &'a ExperimentConfig,
    dir: &'a Path,
    outcome: Outcome,
}

impl<'a> Out<'a> {
    fn json<T: Serialize>(&mut self, name: &str, result: T) -> Result<(), RunError> {
        let env = Envelope { tool: TOOL, version: VERSION, command: self.cfg.command, seed: self.cfg.seed, config: self.cfg, result };
        let p = self.dir.join(name);
        io::write_json(&p, &env)?;
        self.outcome.artifacts.push(p);
        Ok(())
    }

    fn text(&mut self, name: &str, body: &str) -> Result<(), RunError> {
        let p = self.dir.join(name);
        fs::write(&p, body)?;
        self.outcome.artifacts.push(p);
        Ok(())
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    cfg.validate()?;
    let dir = cfg.output_dir.as_path();
    fs::create_dir_all(dir)?;
    let mut out = Out { cfg, dir, outcome: Outcome::default() };
    match cfg.command {
        Command::Generate => generate(&mut out)?,
        Command::Verify => verify(&mut out)?,
        Command::Spectrum => spectrum(&mut out)?,
        Command::Family => family(&mut out)?,
        Command::Evolve => evolve(&mut out)?,
        Command::Certify => certify(&mut out)?,
        Command::ReportAll => report_all(&mut out)?,
    }
    let failures: Vec<Check> = out.outcome.failures().into_iter().cloned().collect();
    if !failures.is_empty() {
        out.json("failures.json", &failures)?;
    }
    Ok(out.outcome)
}

fn stem(spec: &Breather) -> &'static str {
    spec.kind().short_name()
}

fn generate(o: &mut Out) -> Result<(), RunError> {
    let spec = o.cfg.spec()?;
    let grid = exact::default_window(&spec, o.cfg.nx, o.cfg.nt)?;
    let field = exact::WaveField::sample(spec, grid.clone());
    let (csv, side) = io::write_wavefield(o.dir, stem(&spec), &field)?;
    o.outcome.artifacts.extend([csv.clone(), side.clone()]);

    // |u| against x at five times across the window
    let ts: Vec<usize> = (0..5).map(|k| k * (grid.nt - 1) / 4).collect();
    let xs = grid.xs();
    let curves: Vec<Vec<(f64, f64)>> = ts.iter().map(|&j| xs.iter().enumerate().map(|(i, &x)| (x, field.at(j, i).norm())).collect()).collect();
    let yr = Range::covering(curves.iter().flatten().map(|p| p.1).chain([0.0]), 0.05);
    let mut plot = Plot::new(&format!("|u| for {}", stem(&spec)), "x", "|u|", Range::new(grid.x_min, grid.x_max), yr);
    for (k, (c, &j)) in curves.iter().zip(&ts).enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        plot.polyline(c, color, 1.5);
        plot.legend(k, color, &format!("t = {:.3}", grid.t(j)));
    }
    o.text(&format!("{}_profiles.svg", stem(&spec)), &plot.finish())?;
    #[derive(Serialize)]
    struct Generated {
        field: String,
        sidecar: String,
        derived: io::DerivedConstants,
        grid: SpaceTimeGrid,
    }
    let name = |p: &Path| p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    o.json("generate.json", Generated { field: name(&csv), sidecar: name(&side), derived: io::DerivedConstants::of(&spec), grid })
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn verify(o: &mut Out) -> Result<(), RunError> {
    let spec = o.cfg.spec()?;
    let checks = checks::verify_breather(&spec, o.cfg.nx, o.cfg.nt, o.cfg.seed);
    o.outcome.checks.extend(checks.iter().cloned());
    o.json("verify.json", &checks)
}

/// Fourier bases need a period: the AB period, else `2·half_width`.
fn fourier_period(cfg: &ExperimentConfig, spec: &Breather) -> Result<f64, ConfigError> {
    match spec.kind() {
        BreatherKind::Akhmediev => Ok(spec.period_x().unwrap_or(1.0)),
        BreatherKind::Constant => Ok(2.0 * cfg.half_width),
        k => Err(ConfigError(format!("{} is not periodic in x; use basis = line", k.short_name()))),
    }
}

fn spectrum(o: &mut Out) -> Result<(), RunError> {
    let cfg = o.cfg;
    let spec = cfg.spec()?;
    let choice = cfg.basis.unwrap_or(match spec.kind() {
        BreatherKind::Akhmediev => BasisChoice::Antiperiodic,
        BreatherKind::Constant => BasisChoice::Periodic,
        _ => BasisChoice::Line,
    });
    let f = move |x: f64, t: f64| spec.eval(x, t);
    let l0 = spec.lambda0().unwrap_or(0.0);
    let (basis, targets) = match choice {
        BasisChoice::Periodic | BasisChoice::Antiperiodic => {
            let period = fourier_period(cfg, &spec)?;
            let n = if cfg.modes == 0 { 128 } else { cfg.modes };
            if choice == BasisChoice::Periodic {
                (Basis::FourierInteger { n, period }, spectral::periodic_targets(period, 10))
            } else {
                (Basis::FourierHalfInteger { n, period }, spectral::antiperiodic_targets(period, 9))
            }
        }
        BasisChoice::Line => {
            let n = if cfg.modes == 0 { 1024 } else { cfg.modes };
            let t = if spec.kind() == BreatherKind::KuznetsovMa { vec![C64::new(l0, 0.0), C64::new(-l0, 0.0)] } else { vec![] };
            (Basis::FiniteDifference { n, half_width: cfg.half_width }, t)
        }
    };
    let op = spectral::discretize(&f, cfg.t, basis)?;
    let mut report = spectral::compute_spectrum(&op, &targets)?;
    if choice == BasisChoice::Line {
        let (_, band) = spectral::classify_by_drift(&f, cfg.t, 400, 14.0, 1.25, 1e-4)?;
        report.artifacts = band;
        for m in &report.matches {
            o.outcome.checks.push(Check::below(format!("isolated eigenvalue {:.6}", m.target), m.distance, checks::LINE_MATCH_TOL));
        }
    } else {
        if basis.n() <= 128 {
            for &z in targets.iter().filter(|z| z.im == 0.0 && z.re.abs() <= 1.0) {
                report.multiplicities.push(spectral::multiplicity_probe(&op, z)?);
            }
        }
        o.outcome.checks.push(Check::below("eigenvalues vs background set", report.max_match_distance, checks::FOURIER_MATCH_TOL));
    }
    o.text("spectrum.csv", &spectrum_csv(&report))?;
    o.text("spectrum.svg", &spectrum_svg(&report, &spec))?;
    o.json("spectrum.json", &report)
}

fn spectrum_csv(r: &SpectrumReport) -> String {
    let mut s = String::from("re,im,role\n");
    for z in &r.eigenvalues {
        s.push_str(&format!("{},{},eigenvalue\n", z.re, z.im));
    }
    for m in &r.matches {
        s.push_str(&format!("{},{},target\n", m.target.re, m.target.im));
    }
    for z in &r.artifacts {
        s.push_str(&format!("{},{},continuous\n", z.re, z.im));
    }
    s
}

/// Bands `iℝ ∪ [−1, 1]` as lines, eigenvalues as dots, matched points highlighted.
fn spectrum_svg(r: &SpectrumReport, spec: &Breather) -> String {
    let reach = spec.lambda0().unwrap_or(1.0).max(1.0) * 1.4;
    let (xr, yr) = (Range::new(-reach, reach), Range::new(-3.0, 3.0));
    let title = format!("Lax spectrum, {} ({}, N = {})", spec.kind().short_name(), r.basis.name(), r.n);
    let mut p = Plot::new(&title, "Re lambda", "Im lambda", xr, yr);
    p.polyline(&[(0.0, yr.min), (0.0, yr.max)], "#999999", 3.0);
    p.polyline(&[(-1.0, 0.0), (1.0, 0.0)], "#999999", 3.0);
    for z in &r.eigenvalues {
        p.circle(z.re, z.im, 2.0, "#1f77b4");
    }
    for m in &r.matches {
        p.circle(m.nearest.re, m.nearest.im, 4.0, "#d62728");
    }
    p.legend(0, "#999999", "background bands");
    p.legend(1, "#1f77b4", "computed eigenvalues");
    p.legend(2, "#d62728", "matched points");
    p.finish()
}

fn catalog(cfg: &ExperimentConfig) -> Result<FamilyCatalog, RunError> {
    let l = cfg.lambda0.unwrap_or_default();
    Ok(match cfg.kind {
        Kind::Ab => families::ab_family(l)?,
        _ => families::kmb_family(l)?,
    })
}

fn family(o: &mut Out) -> Result<(), RunError> {
    let c = catalog(o.cfg)?;
    let spec = c.about;
    let export_grid = match spec.kind() {
        BreatherKind::Akhmediev => {
            let (l, s0) = (spec.period_x().unwrap_or(1.0), spec.sigma0().unwrap_or(1.0));
            SpaceTimeGrid::periodic(0.0, l, 1, o.cfg.nx, -PI / s0, PI / s0, o.cfg.nt)?
        }
        _ => SpaceTimeGrid::line(-20.0, 20.0, o.cfg.nx, 0.0, spec.period_t().unwrap_or(1.0), o.cfg.nt)?,
    };
    let check_grid = export_grid.with_resolution(o.cfg.nx.min(64), o.cfg.nt.min(64))?;
    let manifest = if o.cfg.export {
        let m = io::export_catalog(o.dir, &c, &export_grid)?;
        for e in &m.entries {
            if let Some(f) = &e.file {
                o.outcome.artifacts.push(o.dir.join(f));
                o.outcome.artifacts.push(o.dir.join(f.replace(".csv", ".json")));
            }
        }
        o.outcome.artifacts.push(o.dir.join("manifest.json"));
        m
    } else {
        let m = io::manifest(&c);
        io::write_json(&o.dir.join("manifest.json"), &m)?;
        o.outcome.artifacts.push(o.dir.join("manifest.json"));
        m
    };
    for e in &c.entries {
        let r = families::lin_nls_residual(&spec, &e.solution, &check_grid).max;
        let scale = check_grid.nodes().map(|(x, t)| e.solution.eval(x, t).norm()).fold(1.0, f64::max);
        // large entries are judged relative to their size
        let ch = if scale > 100.0 {
            Check::below(format!("{} linearized residual / max|v|", e.label), r / scale, 1e-9)
        } else {
            Check::below(format!("{} linearized residual", e.label), r, 1e-7)
        };
        o.outcome.checks.push(ch);
    }
    #[derive(Serialize)]
    struct FamilyResult<'a> {
        manifest: &'a io::Manifest,
        checks: &'a [Check],
    }
    let checks = o.outcome.checks.clone();
    o.json("family.json", FamilyResult { manifest: &manifest, checks: &checks })
}

struct EvolvePlan {
    cfg: EvolutionConfig,
    tolerance: Option<f64>,
}

fn evolve_plan(cfg: &ExperimentConfig, spec: &Breather) -> Result<EvolvePlan, RunError> {
    let modes = |d: usize| if cfg.modes == 0 { d } else { cfg.modes };
    let (n, domain, t0, t1, dt, dealias, tol) = match spec.kind() {
        BreatherKind::Akhmediev => (modes(256), Domain::Periodic { span: spec.period_x().unwrap_or(1.0) }, -6.0, 6.0, 1e-3, 2.0 / 3.0, Some(1e-5)),
        BreatherKind::KuznetsovMa => {
            let tp = spec.period_t().unwrap_or(1.0);
            let span = 40.0 / spec.beta0().unwrap_or(1.0);
            (modes(512), Domain::TruncatedLine { span }, 0.0, tp, tp / 131072.0, 1.0, Some(1e-5))
        }
        BreatherKind::Constant => {
            let k = cfg.wavenumber.unwrap_or(2f64.sqrt());
            (modes(64), Domain::Periodic { span: 2.0 * PI / k }, 0.0, 12.0, 1e-3, 2.0 / 3.0, Some(1e-10))
        }
        // algebraic tails: the periodic box error is reported, not judged
        BreatherKind::Peregrine => (modes(1024), Domain::TruncatedLine { span: 2.0 * cfg.half_width }, -2.0, 2.0, 1e-3, 2.0 / 3.0, None),
    };
    let t0 = if cfg.t_start != 0.0 { cfg.t_start } else { t0 };
    let t1 = cfg.t_end.unwrap_or(t1);
    let dt = cfg.dt.unwrap_or(dt);
    let ecfg = EvolutionConfig::new(n, domain, t0, t1, dt).with_dealias(dealias).with_monitor_every(64);
    ecfg.validate()?;
    Ok(EvolvePlan { cfg: ecfg, tolerance: tol })
}

fn evolve(o: &mut Out) -> Result<(), RunError> {
    let spec = o.cfg.spec()?;
    let plan = evolve_plan(o.cfg, &spec)?;
    let ec = plan.cfg;
    let tr = evolution::evolve_nls(&ec.sample(|x| spec.eval(x, ec.t_start)), &ec)?;
    let err = evolution::max_deviation(tr.last(), &ec.sample(|x| spec.eval(x, ec.t_end)));
    if let Some(tol) = plan.tolerance {
        o.outcome.checks.push(Check::below("trajectory vs closed form at t_end", err, tol));
    }
    o.outcome.checks.push(Check::below("relative mass drift", tr.mass_drift(), 1e-8));
    o.text("diagnostics.csv", &tr.diagnostics_csv())?;
    o.text("final_field.csv", &io::snapshot_csv(&ec.xs(), ec.t_end, tr.last())?)?;
    let pts: Vec<(f64, f64)> = tr.diagnostics.iter().map(|d| (d.t, d.max_amp)).collect();
    let mut p = Plot::new(
        &format!("max |u| during evolution, {}", stem(&spec)),
        "t",
        "max |u|",
        Range::new(ec.t_start, ec.t_end),
        Range::covering(pts.iter().map(|p| p.1).chain([0.0]), 0.05),
    );
    p.polyline(&pts, PALETTE[0], 1.5);
    o.text("diagnostics.svg", &p.finish())?;

    let rate = match (spec.kind(), o.cfg.wavenumber) {
        (BreatherKind::Constant, k) => Some(instability(o.cfg, &spec, k.unwrap_or(2f64.sqrt()))?),
        (BreatherKind::KuznetsovMa, Some(k)) => Some(instability(o.cfg, &spec, k)?),
        _ => None,
    };
    if let Some((r, tol)) = &rate {
        o.outcome.checks.push(Check::below("growth rate relative error", r.rel_err, *tol));
        o.json("rate.json", r)?;
    }
    #[derive(Serialize)]
    struct Evolved {
        evolution: EvolutionConfig,
        steps: usize,
        max_error: f64,
        mass_drift: f64,
    }
    o.json("evolve.json", Evolved { evolution: ec, steps: ec.steps(), max_error: err, mass_drift: tr.mass_drift() })
}

/// Growth of a small Fourier-mode seed; returns the report and its tolerance.
fn instability(cfg: &ExperimentConfig, spec: &Breather, k: f64) -> Result<(evolution::RateReport, f64), RunError> {
    if spec.kind() == BreatherKind::KuznetsovMa {
        let tp = spec.period_t().unwrap_or(1.0);
        let ec = EvolutionConfig::new(512, Domain::TruncatedLine { span: 7.0 * 2.0 * PI / k }, 0.0, 3.0 * tp, tp / 4096.0)
            .with_dealias(1.0)
            .with_monitor_every(64);
        let r = evolution::instability_experiment(spec, &SeedMode::Wavenumber(k), cfg.amplitude, &ec, Some((tp, 3.0 * tp)))?;
        Ok((r, 0.05))
    } else {
        let ec = EvolutionConfig::new(64, Domain::Periodic { span: 2.0 * PI / k }, 0.0, 12.0, 1e-3).with_monitor_every(20);
        let r = evolution::instability_experiment(spec, &SeedMode::Wavenumber(k), cfg.amplitude, &ec, None)?;
        Ok((r, 0.02))
    }
}

fn certify(o: &mut Out) -> Result<(), RunError> {
    let spec = o.cfg.spec()?;
    let kind = breathers::darboux::seed_kind_of(&spec).ok_or_else(|| ConfigError("certify needs ab or kmb".into()))?;
    let seed = breathers::darboux::DarbouxSeed::new(kind, spec.lambda0().unwrap_or_default())?;
    let certs = seed.fredholm_certificates(o.cfg.t)?;
    o.outcome.checks.extend(checks::fredholm_checks(&seed, &[o.cfg.t])?);
    o.json("certificates.json", &certs)
}

fn report_all(o: &mut Out) -> Result<(), RunError> {
    let p = SuiteParams { lambda0_ab: o.cfg.lambda0_ab, lambda0_kmb: o.cfg.lambda0_kmb, seed: o.cfg.seed };
    let mut reports: Vec<CriterionReport> = Vec::new();
    for (id, _) in checks::CRITERIA {
        let r = checks::run_criterion(id, &p)?;
        println!("{}", r.summary_line());
        o.outcome.checks.extend(r.checks.iter().cloned());
        reports.push(r);
        // partial results survive an interrupted run
        write_summary(o.dir, o.cfg, &reports)?;
    }
    o.outcome.artifacts.push(o.dir.join("summary.json"));
    o.outcome.artifacts.push(o.dir.join("summary.md"));
    Ok(())
}

fn write_summary(dir: &Path, cfg: &ExperimentConfig, reports: &[CriterionReport]) -> Result<(), RunError> {
    #[derive(Serialize)]
    struct Summary<'a> {
        criteria: &'a [CriterionReport],
        passed: usize,
        total: usize,
    }
    let passed = reports.iter().filter(|r| r.pass()).count();
    let env = Envelope {
        tool: TOOL,
        version: VERSION,
        command: cfg.command,
        seed: cfg.seed,
        config: cfg,
        result: Summary { criteria: reports, passed, total: checks::CRITERIA.len() },
    };
    io::write_json(&dir.join("summary.json"), &env)?;
    let mut md = format!("# Acceptance summary\n\nbreathers {VERSION}, lambda0_ab = {}, lambda0_kmb = {}, seed = {}\n\n", cfg.lambda0_ab, cfg.lambda0_kmb, cfg.seed);
    for r in reports {
        md.push_str(&format!("- {}\n", r.summary_line()));
    }
    md.push('\n');
    md.push_str(&checks::markdown_table(reports));
    fs::write(dir.join("summary.md"), md)?;
    Ok(())
}
