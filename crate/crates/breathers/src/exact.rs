//! Closed-form breathers of the normalized focusing NLS equation
//! `i u_t + ½ u_xx + (|u|² − 1) u = 0`.

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fd;
use crate::grid::{Boundary, SpaceTimeGrid};
use crate::scalar::{lit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BreatherKind {
    Constant,
    Akhmediev,
    KuznetsovMa,
    Peregrine,
}

impl BreatherKind {
    pub fn short_name(self) -> &'static str {
        match self {
            BreatherKind::Constant => "constant",
            BreatherKind::Akhmediev => "ab",
            BreatherKind::KuznetsovMa => "kmb",
            BreatherKind::Peregrine => "prw",
        }
    }
}

/// A breather family member. Construct through the validating constructors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BreatherSpec<T> {
    kind: BreatherKind,
    lambda0: Option<T>,
}

impl<T: Real> BreatherSpec<T> {
    pub fn constant() -> Self {
        Self { kind: BreatherKind::Constant, lambda0: None }
    }

    pub fn peregrine() -> Self {
        Self { kind: BreatherKind::Peregrine, lambda0: None }
    }

    pub fn akhmediev(lambda0: T) -> Result<Self> {
        if !(lambda0 > T::zero() && lambda0 < T::one()) {
            return Err(Error::OutOfRange {
                name: "lambda0",
                value: lambda0.to_f64().unwrap_or(f64::NAN),
                interval: "(0, 1) for the Akhmediev breather",
            });
        }
        Ok(Self { kind: BreatherKind::Akhmediev, lambda0: Some(lambda0) })
    }

    pub fn kuznetsov_ma(lambda0: T) -> Result<Self> {
        if !(lambda0 > T::one() && lambda0.is_finite()) {
            return Err(Error::OutOfRange {
                name: "lambda0",
                value: lambda0.to_f64().unwrap_or(f64::NAN),
                interval: "(1, inf) for the Kuznetsov-Ma breather",
            });
        }
        Ok(Self { kind: BreatherKind::KuznetsovMa, lambda0: Some(lambda0) })
    }

    pub fn new(kind: BreatherKind, lambda0: Option<T>) -> Result<Self> {
        match kind {
            BreatherKind::Constant => Ok(Self::constant()),
            BreatherKind::Peregrine => Ok(Self::peregrine()),
            BreatherKind::Akhmediev | BreatherKind::KuznetsovMa => {
                let l = lambda0.ok_or_else(|| {
                    Error::Incompatible(format!("{} requires lambda0", kind.short_name()))
                })?;
                if kind == BreatherKind::Akhmediev {
                    Self::akhmediev(l)
                } else {
                    Self::kuznetsov_ma(l)
                }
            }
        }
    }

    pub fn kind(&self) -> BreatherKind {
        self.kind
    }

    pub fn lambda0(&self) -> Option<T> {
        self.lambda0
    }

    /// AB wavenumber `2√(1−λ0²)`.
    pub fn k0(&self) -> Option<T> {
        match self.kind {
            BreatherKind::Akhmediev => {
                let l = self.lambda0?;
                Some(lit::<T>(2.0) * (T::one() - l * l).sqrt())
            }
            _ => None,
        }
    }

    pub fn sigma0(&self) -> Option<T> {
        Some(self.lambda0? * self.k0()?)
    }

    /// Spatial period `2π/k0` of AB.
    pub fn period_x(&self) -> Option<T> {
        Some(T::TAU() / self.k0()?)
    }

    /// KMB decay rate `2√(λ0²−1)`.
    pub fn beta0(&self) -> Option<T> {
        match self.kind {
            BreatherKind::KuznetsovMa => {
                let l = self.lambda0?;
                Some(lit::<T>(2.0) * (l * l - T::one()).sqrt())
            }
            _ => None,
        }
    }

    pub fn alpha0(&self) -> Option<T> {
        Some(self.lambda0? * self.beta0()?)
    }

    /// Temporal period `2π/α0` of KMB.
    pub fn period_t(&self) -> Option<T> {
        Some(T::TAU() / self.alpha0()?)
    }

    pub fn eval(&self, x: T, t: T) -> Complex<T> {
        let one = T::one();
        let two = lit::<T>(2.0);
        match self.kind {
            BreatherKind::Constant => Complex::new(one, T::zero()),
            BreatherKind::Peregrine => {
                let den = one + lit::<T>(4.0) * (x * x + t * t);
                Complex::new(-one + lit::<T>(4.0) / den, lit::<T>(8.0) * t / den)
            }
            BreatherKind::Akhmediev => {
                let l = self.lambda0.unwrap_or_default();
                let k = self.k0().unwrap_or_default();
                let s = l * k * t;
                // divided through by cosh(σ0 t) so large |t| stays finite
                let sech = one / s.cosh();
                let num = Complex::new(two * (one - l * l), l * k * s.tanh());
                let den = one - l * (k * x).cos() * sech;
                num / den - one
            }
            BreatherKind::KuznetsovMa => {
                let l = self.lambda0.unwrap_or_default();
                let b = self.beta0().unwrap_or_default();
                let a = l * b;
                if (b * x).abs() > lit(300.0) {
                    return Complex::new(-one, T::zero());
                }
                let sech = one / (b * x).cosh();
                let (sa, ca) = (a * t).sin_cos();
                let num = Complex::new(two * (l * l - one) * ca, a * sa) * sech;
                let den = l - ca * sech;
                num / den - one
            }
        }
    }

    /// Closed-form `|û₀|²` from the complementary Darboux identity.
    pub fn modulus_sq_identity(&self, x: T, t: T) -> Result<T> {
        let one = T::one();
        match self.kind {
            BreatherKind::Akhmediev => {
                let l = self.lambda0.unwrap_or_default();
                let k = self.k0().unwrap_or_default();
                let sech = one / (l * k * t).cosh();
                let c = (k * x).cos();
                let den = one - l * c * sech;
                Ok(one + l * k * k * (c * sech - l * sech * sech) / (den * den))
            }
            BreatherKind::KuznetsovMa => {
                let l = self.lambda0.unwrap_or_default();
                let b = self.beta0().unwrap_or_default();
                let a = l * b;
                if (b * x).abs() > lit(300.0) {
                    return Ok(one);
                }
                let sech = one / (b * x).cosh();
                let c = (a * t).cos();
                let den = l - c * sech;
                Ok(one + a * b * (l * sech * sech - c * sech) / (den * den))
            }
            _ => Err(Error::Incompatible(format!(
                "the modulus identity is stated for Darboux-transformed solutions (AB, KMB), not {}",
                self.kind.short_name()
            ))),
        }
    }
}

pub fn eval_breather<T: Real>(spec: &BreatherSpec<T>, x: T, t: T) -> Complex<T> {
    spec.eval(x, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    TPlusInf,
    TMinusInf,
    XPlusInf,
    XMinusInf,
}

pub fn asymptotic_value<T: Real>(spec: &BreatherSpec<T>, dir: Direction) -> Result<Complex<T>> {
    let one = T::one();
    match (spec.kind(), dir) {
        (BreatherKind::Akhmediev, Direction::TPlusInf | Direction::TMinusInf) => {
            let l = spec.lambda0().unwrap_or_default();
            let k = spec.k0().unwrap_or_default();
            let sign = if dir == Direction::TPlusInf { one } else { -one };
            Ok(Complex::new(one - lit::<T>(2.0) * l * l, sign * k * l))
        }
        (BreatherKind::KuznetsovMa, Direction::XPlusInf | Direction::XMinusInf) => {
            Ok(Complex::new(-one, T::zero()))
        }
        (BreatherKind::Peregrine, _) => Ok(Complex::new(-one, T::zero())),
        (BreatherKind::Constant, _) => Ok(Complex::new(one, T::zero())),
        (kind, dir) => Err(Error::Incompatible(format!(
            "{} has no limit in direction {dir:?}",
            kind.short_name()
        ))),
    }
}

pub type BreatherSpec64 = BreatherSpec<f64>;

/// Samples of a breather on a grid, row-major over t then x.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveField {
    pub spec: BreatherSpec64,
    pub grid: SpaceTimeGrid,
    pub values: Vec<Complex64>,
}

impl WaveField {
    pub fn sample(spec: BreatherSpec64, grid: SpaceTimeGrid) -> Self {
        let values = grid.nodes().map(|(x, t)| spec.eval(x, t)).collect();
        Self { spec, grid, values }
    }

    pub fn at(&self, it: usize, ix: usize) -> Complex64 {
        self.values[it * self.grid.nx + ix]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max: f64,
    /// Smallest number of nodes across a characteristic length or time.
    pub points_per_scale: f64,
    pub under_resolved: bool,
}

/// Characteristic (x, t) scales used for the resolution warning.
pub fn characteristic_scales(spec: &BreatherSpec64) -> (f64, f64) {
    match spec.kind() {
        BreatherKind::Constant => (f64::INFINITY, f64::INFINITY),
        BreatherKind::Peregrine => (std::f64::consts::TAU, std::f64::consts::TAU),
        BreatherKind::Akhmediev => {
            let s = spec.sigma0().unwrap_or(1.0);
            (spec.period_x().unwrap_or(1.0), std::f64::consts::TAU / s)
        }
        BreatherKind::KuznetsovMa => (
            std::f64::consts::TAU / spec.beta0().unwrap_or(1.0),
            spec.period_t().unwrap_or(1.0),
        ),
    }
}

/// `i u_t + ½u_xx + (|u|²−1)u` at one point, derivatives from the oracle with steps `hx`, `ht`.
pub fn residual_at(spec: &BreatherSpec64, x: f64, t: f64, hx: f64, ht: f64) -> Complex64 {
    let u = spec.eval(x, t);
    let ut = fd::d1(|s| spec.eval(x, s), t, ht);
    let uxx = fd::d2(|s| spec.eval(s, t), x, hx);
    Complex64::i() * ut + uxx * 0.5 + u * (u.norm_sqr() - 1.0)
}

/// Max-norm of `i u_t + ½u_xx + (|u|²−1)u` at the nodes of the field.
pub fn nls_residual(field: &WaveField) -> ResidualReport {
    let spec = field.spec;
    let g = &field.grid;
    let hx = fd::oracle_step(g.dx());
    let ht = fd::oracle_step(g.dt());
    let mut max = 0.0f64;
    for j in 0..g.nt {
        let t = g.t(j);
        for i in 0..g.nx {
            let x = g.x(i);
            let u = field.at(j, i);
            let ut = fd::d1(|s| spec.eval(x, s), t, ht);
            let uxx = fd::d2(|s| spec.eval(s, t), x, hx);
            let r = Complex64::i() * ut + uxx * 0.5 + u * (u.norm_sqr() - 1.0);
            max = max.max(r.norm());
        }
    }
    let (sx, st) = characteristic_scales(&spec);
    let points_per_scale = (sx / g.dx()).min(st / g.dt().max(f64::MIN_POSITIVE));
    ResidualReport { max, points_per_scale, under_resolved: points_per_scale < 16.0 }
}

/// Standard verification window: one period (AB in x, KMB in t) and a fixed box otherwise.
pub fn default_window(spec: &BreatherSpec64, nx: usize, nt: usize) -> Result<SpaceTimeGrid> {
    match spec.kind() {
        BreatherKind::Constant => {
            SpaceTimeGrid::periodic(0.0, std::f64::consts::TAU, 1, nx, 0.0, 1.0, nt)
        }
        BreatherKind::Akhmediev => {
            let l = spec.period_x().unwrap_or(1.0);
            SpaceTimeGrid::periodic(0.0, l, 1, nx, -3.0, 3.0, nt)
        }
        BreatherKind::KuznetsovMa => {
            let tp = spec.period_t().unwrap_or(1.0);
            SpaceTimeGrid::line(-5.0, 5.0, nx, 0.0, tp, nt)
        }
        BreatherKind::Peregrine => SpaceTimeGrid::line(-3.0, 3.0, nx, -3.0, 3.0, nt),
    }
}

/// Residual at each resolution `n×n` of the grid shape.
pub fn residual_refinement(
    spec: &BreatherSpec64,
    window: &SpaceTimeGrid,
    sizes: &[usize],
) -> Result<Vec<(usize, f64)>> {
    sizes
        .iter()
        .map(|&n| {
            let g = window.with_resolution(n, n)?;
            Ok((n, nls_residual(&WaveField::sample(*spec, g)).max))
        })
        .collect()
}

/// Order measured on the finest refinement pair whose coarse value sits above `floor`.
pub fn asymptotic_order(study: &[(usize, f64)], floor: f64) -> Option<f64> {
    study
        .windows(2)
        .rfind(|w| w[0].1 > floor && w[1].1 > 0.0)
        .map(|w| fd::observed_order(w[0].1, w[1].1, w[1].0 as f64 / w[0].0 as f64))
}

/// Residual on the fixed nodes of `window` with the oracle steps of each `n×n` refinement.
/// Holding the nodes fixed isolates the truncation order from where the maximum lands.
pub fn fixed_node_refinement(
    spec: &BreatherSpec64,
    window: &SpaceTimeGrid,
    sizes: &[usize],
) -> Result<Vec<(usize, f64)>> {
    sizes
        .iter()
        .map(|&n| {
            let g = window.with_resolution(n, n)?;
            let (hx, ht) = (fd::oracle_step(g.dx()), fd::oracle_step(g.dt()));
            let max = window
                .nodes()
                .map(|(x, t)| residual_at(spec, x, t, hx, ht).norm())
                .fold(0.0, f64::max);
            Ok((n, max))
        })
        .collect()
}

/// Max over the grid of `| |û₀|² − identity |`.
pub fn modulus_identity_residual(spec: &BreatherSpec64, grid: &SpaceTimeGrid) -> Result<f64> {
    let mut max = 0.0f64;
    for (x, t) in grid.nodes() {
        let lhs = spec.eval(x, t).norm_sqr();
        let rhs = spec.modulus_sq_identity(x, t)?;
        max = max.max((lhs - rhs).abs());
    }
    Ok(max)
}

/// Max deviation from the Peregrine solution over `grid`.
pub fn peregrine_deviation(spec: &BreatherSpec64, grid: &SpaceTimeGrid) -> f64 {
    let prw = BreatherSpec64::peregrine();
    grid.nodes()
        .map(|(x, t)| (spec.eval(x, t) - prw.eval(x, t)).norm())
        .fold(0.0, f64::max)
}

/// Shift test: max |u(x + shift, t) − u(x, t)| relative to max |u|.
pub fn shift_mismatch(
    f: impl Fn(f64, f64) -> Complex64,
    grid: &SpaceTimeGrid,
    dx: f64,
    dt: f64,
) -> f64 {
    let mut num = 0.0f64;
    let mut scale = 0.0f64;
    for (x, t) in grid.nodes() {
        let a = f(x, t);
        num = num.max((f(x + dx, t + dt) - a).norm());
        scale = scale.max(a.norm());
    }
    num / scale.max(f64::MIN_POSITIVE)
}

impl Boundary {
    pub fn period(&self) -> Option<f64> {
        match self {
            Boundary::Periodic { period } => Some(*period),
            Boundary::TruncatedLine => None,
        }
    }
}
