//! Split-step Fourier evolution of the normalized NLS equation and of its linearization
//! about a closed-form breather.
//!
//! Strang splitting: half step of `u_t = (i/2) u_xx` in Fourier space, full step of the
//! pointwise potential flow, half step linear. The NLS potential flow is the exact phase
//! rotation `u ↦ u·e^{i(|u|²−1)dt}`; the linearized one is the exact 2×2 exponential with
//! the breather sampled at the step midpoint.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::BreatherSpec64;
use crate::families::{FamilyCatalog, LinearizedSolution};
use crate::fit::linear_fit;

/// Amplitude at which [`evolve_nls`] and [`evolve_linearized`] stop with [`Error::BlowUp`].
pub const BLOW_UP: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Domain {
    /// Periodic box of length `span`, nodes at `−span/2 + j·span/N`.
    Periodic { span: f64 },
    /// The line approximated by a periodic box of length `span`; only valid for data
    /// whose deviation from the background decays well inside the box.
    TruncatedLine { span: f64 },
}

impl Domain {
    pub fn span(&self) -> f64 {
        match *self {
            Domain::Periodic { span } | Domain::TruncatedLine { span } => span,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    /// Fourier modes (grid points).
    pub n: usize,
    pub dt: f64,
    pub t_start: f64,
    pub t_end: f64,
    /// Retained fraction of the wavenumber range; `2/3` is the usual rule, `1` disables.
    pub dealias: f64,
    pub domain: Domain,
    /// Snapshot and diagnostics cadence in steps.
    pub monitor_every: usize,
}

impl EvolutionConfig {
    pub fn new(n: usize, domain: Domain, t_start: f64, t_end: f64, dt: f64) -> Self {
        EvolutionConfig { n, dt, t_start, t_end, dealias: 2.0 / 3.0, domain, monitor_every: 100 }
    }

    pub fn with_dealias(mut self, dealias: f64) -> Self {
        self.dealias = dealias;
        self
    }

    pub fn with_monitor_every(mut self, every: usize) -> Self {
        self.monitor_every = every;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 8 || self.n % 2 != 0 {
            return Err(Error::Grid(format!("need an even number of modes >= 8, got {}", self.n)));
        }
        if !(self.dt > 0.0) || !(self.t_end > self.t_start) || !(self.domain.span() > 0.0) {
            return Err(Error::Grid(format!("need dt > 0, t_end > t_start and a positive span: {self:?}")));
        }
        if !(0.5..=1.0).contains(&self.dealias) {
            return Err(Error::Grid(format!("dealias fraction {} outside [1/2, 1]", self.dealias)));
        }
        if self.monitor_every == 0 {
            return Err(Error::Grid("monitor_every must be positive".into()));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        ((self.t_end - self.t_start) / self.dt).round().max(1.0) as usize
    }

    /// Step actually used: `(t_end − t_start)/steps`.
    pub fn effective_dt(&self) -> f64 {
        (self.t_end - self.t_start) / self.steps() as f64
    }

    pub fn dx(&self) -> f64 {
        self.domain.span() / self.n as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        let h = self.dx();
        (0..self.n).map(|j| -0.5 * self.domain.span() + j as f64 * h).collect()
    }

    /// Wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n as i64;
        let k0 = 2.0 * PI / self.domain.span();
        (0..n).map(|j| k0 * if j < n / 2 { j } else { j - n } as f64).collect()
    }

    /// `dt·k_max²/2`, the largest phase the linear half-steps rotate per step.
    pub fn phase_per_step(&self) -> f64 {
        let kmax = PI / self.dx() * self.dealias;
        0.5 * self.dt * kmax * kmax
    }

    /// Samples `f(x)` on the grid.
    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        self.xs().into_iter().map(f).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub t: f64,
    /// `∫|u|² dx` over the box.
    pub mass: f64,
    /// `∫ ½|u_x|² − ½(|u|²−1)² dx` (NLS runs) or `∫ ½|v_x|²` (linearized runs).
    pub energy: f64,
    pub max_amp: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub config: EvolutionConfig,
    pub times: Vec<f64>,
    pub fields: Vec<Vec<Complex64>>,
    pub diagnostics: Vec<Diagnostics>,
}

impl Trajectory {
    pub fn last(&self) -> &[Complex64] {
        self.fields.last().expect("trajectory has the initial state")
    }

    /// `max |mass(t) − mass(0)| / mass(0)`.
    pub fn mass_drift(&self) -> f64 {
        let m0 = self.diagnostics[0].mass;
        self.diagnostics.iter().map(|d| (d.mass - m0).abs() / m0).fold(0.0, f64::max)
    }

    /// Diagnostics as CSV text (`t,mass,energy,max_amp`).
    pub fn diagnostics_csv(&self) -> String {
        let mut s = String::from("t,mass,energy,max_amp\n");
        for d in &self.diagnostics {
            s.push_str(&format!("{:.17e},{:.17e},{:.17e},{:.17e}\n", d.t, d.mass, d.energy, d.max_amp));
        }
        s
    }
}

struct Spectral {
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    half_step: Vec<Complex64>,
    keep: Vec<bool>,
    k: Vec<f64>,
    n: usize,
}

impl Spectral {
    fn new(cfg: &EvolutionConfig) -> Self {
        let mut planner = FftPlanner::new();
        let k = cfg.wavenumbers();
        let kcut = PI / cfg.dx() * cfg.dealias;
        let dt = cfg.effective_dt();
        Spectral {
            fwd: planner.plan_fft_forward(cfg.n),
            inv: planner.plan_fft_inverse(cfg.n),
            half_step: k.iter().map(|k| Complex64::from_polar(1.0, -0.25 * k * k * dt)).collect(),
            keep: k.iter().map(|k| k.abs() <= kcut + 1e-12).collect(),
            k,
            n: cfg.n,
        }
    }

    /// Half linear step, with the dealiasing filter applied in Fourier space.
    fn linear_half(&self, u: &mut [Complex64]) {
        self.fwd.process(u);
        let s = 1.0 / self.n as f64;
        for ((c, m), keep) in u.iter_mut().zip(&self.half_step).zip(&self.keep) {
            *c = if *keep { *c * m * s } else { Complex64::new(0.0, 0.0) };
        }
        self.inv.process(u);
    }

    fn dealias(&self, u: &mut [Complex64]) {
        if self.keep.iter().all(|k| *k) {
            return;
        }
        self.fwd.process(u);
        let s = 1.0 / self.n as f64;
        for (c, keep) in u.iter_mut().zip(&self.keep) {
            *c = if *keep { *c * s } else { Complex64::new(0.0, 0.0) };
        }
        self.inv.process(u);
    }

    fn gradient_energy(&self, u: &[Complex64], dx: f64) -> f64 {
        let mut c = u.to_vec();
        self.fwd.process(&mut c);
        // Parseval: Σ|u_x|² dx = (L/N²) Σ k²|ĉ|²
        let l = dx * self.n as f64;
        0.5 * l / (self.n as f64).powi(2) * c.iter().zip(&self.k).map(|(c, k)| k * k * c.norm_sqr()).sum::<f64>()
    }
}

fn diagnostics(sp: &Spectral, u: &[Complex64], t: f64, dx: f64, nls: bool) -> Diagnostics {
    let mass = dx * u.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let pot = if nls { dx * u.iter().map(|z| 0.5 * (z.norm_sqr() - 1.0).powi(2)).sum::<f64>() } else { 0.0 };
    let max_amp = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Diagnostics { t, mass, energy: sp.gradient_energy(u, dx) - pot, max_amp }
}

fn run(
    init: &[Complex64],
    cfg: &EvolutionConfig,
    nls: bool,
    mut potential: impl FnMut(&mut [Complex64], f64),
) -> Result<Trajectory> {
    cfg.validate()?;
    if init.len() != cfg.n {
        return Err(Error::Grid(format!("initial data has {} samples, config expects {}", init.len(), cfg.n)));
    }
    let sp = Spectral::new(cfg);
    let dx = cfg.dx();
    let dt = cfg.effective_dt();
    let mut u = init.to_vec();
    sp.dealias(&mut u);
    let mut traj = Trajectory { config: *cfg, times: vec![cfg.t_start], fields: vec![u.clone()], diagnostics: vec![diagnostics(&sp, &u, cfg.t_start, dx, nls)] };
    let steps = cfg.steps();
    for s in 0..steps {
        let t = cfg.t_start + s as f64 * dt;
        sp.linear_half(&mut u);
        potential(&mut u, t + 0.5 * dt);
        sp.linear_half(&mut u);
        let t1 = t + dt;
        if (s + 1) % cfg.monitor_every == 0 || s + 1 == steps {
            let d = diagnostics(&sp, &u, t1, dx, nls);
            if !(d.max_amp < BLOW_UP) {
                return Err(Error::BlowUp { t: t1, max_amp: d.max_amp });
            }
            traj.times.push(t1);
            traj.fields.push(u.clone());
            traj.diagnostics.push(d);
        }
    }
    Ok(traj)
}

/// Full NLS `i u_t + ½u_xx + (|u|²−1)u = 0` from `u0` at `cfg.t_start`.
pub fn evolve_nls(u0: &[Complex64], cfg: &EvolutionConfig) -> Result<Trajectory> {
    let dt = cfg.effective_dt();
    run(u0, cfg, true, |u, _| {
        for z in u.iter_mut() {
            *z *= Complex64::from_polar(1.0, (z.norm_sqr() - 1.0) * dt);
        }
    })
}

/// Exact flow over `dt` of `v_t = i[(2|w|²−1)v + w² v̄]` with `w` frozen.
fn potential_flow(v: Complex64, w: Complex64, dt: f64) -> Complex64 {
    let a = 2.0 * w.norm_sqr() - 1.0;
    let b = w * w;
    // M = i[[a, b], [−b̄, −a]] acting on (v, v̄); M² = −(a² − |b|²) I
    let om2 = a * a - b.norm_sqr();
    let (c, s) = if om2 > 0.0 {
        let om = om2.sqrt();
        ((om * dt).cos(), (om * dt).sin() / om)
    } else if om2 < 0.0 {
        let mu = (-om2).sqrt();
        ((mu * dt).cosh(), (mu * dt).sinh() / mu)
    } else {
        (1.0, dt)
    };
    let mv = Complex64::i() * (v * a + b * v.conj());
    v * c + mv * s
}

/// Linearized NLS about the closed-form `about` from `v0` at `cfg.t_start`.
pub fn evolve_linearized(about: &BreatherSpec64, v0: &[Complex64], cfg: &EvolutionConfig) -> Result<Trajectory> {
    let dt = cfg.effective_dt();
    let xs = cfg.xs();
    run(v0, cfg, false, |v, tm| {
        for (z, &x) in v.iter_mut().zip(&xs) {
            *z = potential_flow(*z, about.eval(x, tm), dt);
        }
    })
}

/// `max_j |a_j − b_j|`.
pub fn max_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Modulation-instability rate `kλ(k) = ½k√(4−k²)` of the unit background (0 outside `(0, 2)`).
pub fn background_rate(k: f64) -> f64 {
    if k > 0.0 && k < 2.0 {
        0.5 * k * (4.0 - k * k).sqrt()
    } else {
        0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value")]
pub enum SeedMode {
    /// `cos(kx)` perturbation, measured through the Fourier coefficient at `k`.
    Wavenumber(f64),
    /// A catalog entry sampled at the start time, measured through the L² norm.
    Entry(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub seed_mode: SeedMode,
    pub amplitude: f64,
    pub predicted: f64,
    pub measured: f64,
    pub rel_err: f64,
    pub window: (f64, f64),
    /// Largest perturbation amplitude inside the fit window.
    pub max_perturbation: f64,
}

/// Amplitude at which the perturbation is considered to have left the linear regime.
pub const LINEAR_REGIME: f64 = 1e-2;

/// Slope of `ln a(t)` over the trailing stretch where sliding-window slopes agree with the
/// last one within `tol`.
pub fn stationary_slope(ts: &[f64], amps: &[f64], tol: f64) -> Result<(f64, (f64, f64))> {
    if ts.len() < 16 {
        return Err(Error::Fit(format!("{} samples are too few for a window search", ts.len())));
    }
    let logs: Vec<f64> = amps.iter().map(|a| a.max(f64::MIN_POSITIVE).ln()).collect();
    let w = (ts.len() / 8).max(8);
    let local: Vec<f64> = (0..=ts.len() - w)
        .map(|i| linear_fit(&ts[i..i + w], &logs[i..i + w]).map(|f| f.slope))
        .collect::<Result<_>>()?;
    // anchor on the latest slope and extend backwards while the local slopes agree with it
    let last = local.len() - 1;
    let anchor = local[last];
    let mut first = last;
    while first > 0 && (local[first - 1] - anchor).abs() <= tol * anchor.abs().max(1e-12) {
        first -= 1;
    }
    let best = (first, last + 1);
    let (a, b) = (best.0, best.1 - 1 + w);
    let f = linear_fit(&ts[a..b], &logs[a..b])?;
    Ok((f.slope, (ts[a], ts[b - 1])))
}

/// Evolves `û₀ + amplitude·mode` and the unperturbed `û₀` side by side and fits the growth
/// of their difference. With `window = None` the fit window is auto-selected.
pub fn instability_experiment(
    about: &BreatherSpec64,
    seed_mode: &SeedMode,
    amplitude: f64,
    cfg: &EvolutionConfig,
    window: Option<(f64, f64)>,
) -> Result<RateReport> {
    let xs = cfg.xs();
    let t0 = cfg.t_start;
    let (mode, predicted): (Vec<Complex64>, f64) = match seed_mode {
        SeedMode::Wavenumber(k) => (xs.iter().map(|x| Complex64::new((k * x).cos(), 0.0)).collect(), background_rate(*k)),
        SeedMode::Entry(label) => {
            let cat = catalog_for(about)?;
            let e = cat
                .get(label)
                .ok_or_else(|| Error::Incompatible(format!("no catalog entry {label} for {:?}", about.kind())))?;
            (xs.iter().map(|&x| e.eval(x, t0)).collect(), entry_rate(e))
        }
    };
    let mut amp = amplitude;
    for attempt in 0..2 {
        let base = cfg.sample(|x| about.eval(x, t0));
        let pert: Vec<Complex64> = base.iter().zip(&mode).map(|(b, m)| b + m * amp).collect();
        let a = evolve_nls(&base, cfg)?;
        let b = evolve_nls(&pert, cfg)?;
        let sizes: Vec<f64> = a
            .fields
            .iter()
            .zip(&b.fields)
            .map(|(fa, fb)| {
                let d: Vec<Complex64> = fb.iter().zip(fa).map(|(p, q)| p - q).collect();
                match seed_mode {
                    SeedMode::Wavenumber(k) => modal_amplitude(&d, cfg, *k),
                    SeedMode::Entry(_) => (cfg.dx() * d.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt(),
                }
            })
            .collect();
        let peak: Vec<f64> = a.fields.iter().zip(&b.fields).map(|(fa, fb)| max_deviation(fa, fb)).collect();
        let linear_end = peak.iter().position(|p| *p >= LINEAR_REGIME).unwrap_or(peak.len());
        let (ts, amps) = (&a.times[..linear_end], &sizes[..linear_end]);
        let fit = match window {
            Some((w0, w1)) => {
                let idx: Vec<usize> = (0..ts.len()).filter(|&i| ts[i] >= w0 - 1e-12 && ts[i] <= w1 + 1e-12).collect();
                if idx.len() < 4 || ts.last().copied().unwrap_or(t0) < w1 - 1e-9 {
                    None
                } else {
                    let tt: Vec<f64> = idx.iter().map(|&i| ts[i]).collect();
                    let ll: Vec<f64> = idx.iter().map(|&i| amps[i].ln()).collect();
                    Some((linear_fit(&tt, &ll)?.slope, (w0, w1)))
                }
            }
            None => stationary_slope(ts, amps, 0.01).ok(),
        };
        match fit {
            Some((measured, win)) => {
                let max_perturbation = (0..linear_end)
                    .filter(|&i| a.times[i] >= win.0 && a.times[i] <= win.1)
                    .map(|i| peak[i])
                    .fold(0.0, f64::max);
                return Ok(RateReport {
                    seed_mode: seed_mode.clone(),
                    amplitude: amp,
                    predicted,
                    measured,
                    rel_err: (measured - predicted).abs() / predicted.abs().max(f64::MIN_POSITIVE),
                    window: win,
                    max_perturbation,
                });
            }
            None if attempt == 0 => amp *= 1e-3,
            None => {}
        }
    }
    Err(Error::Fit("perturbation left the linear regime before the fit window".into()))
}

/// `|ĉ_k|` for the grid wavenumber closest to `k` (sum of `±k` components).
pub fn modal_amplitude(d: &[Complex64], cfg: &EvolutionConfig, k: f64) -> f64 {
    let mut c = d.to_vec();
    FftPlanner::new().plan_fft_forward(cfg.n).process(&mut c);
    let ks = cfg.wavenumbers();
    let idx = |target: f64| {
        (0..cfg.n)
            .min_by(|&a, &b| (ks[a] - target).abs().total_cmp(&(ks[b] - target).abs()))
            .expect("nonempty")
    };
    let s = 1.0 / cfg.n as f64;
    ((c[idx(k)] * s).norm_sqr() + (c[idx(-k)] * s).norm_sqr()).sqrt()
}

fn catalog_for(about: &BreatherSpec64) -> Result<FamilyCatalog> {
    use crate::exact::BreatherKind;
    match (about.kind(), about.lambda0()) {
        (BreatherKind::Akhmediev, Some(l)) => crate::families::ab_family(l),
        (BreatherKind::KuznetsovMa, Some(l)) => crate::families::kmb_family(l),
        (k, _) => Err(Error::Incompatible(format!("no family catalog about {k:?}"))),
    }
}

fn entry_rate(e: &LinearizedSolution) -> f64 {
    e.growth_class.rate().unwrap_or(0.0)
}
