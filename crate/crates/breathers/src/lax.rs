//! Lax pair of the normalized NLS equation and its closed-form solutions at `u = 1`.
//!
//! `φ_x = U(u,λ)φ`, `φ_t = V(u,λ)φ`, equivalently `(𝓛 − λ)φ = 0` with
//! `𝓛 = [[∂x, −u], [−ū, −∂x]]`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fd;
use crate::grid::SpaceTimeGrid;
use crate::quad;
use crate::scalar::{imag_unit, lit, re, Real};
use crate::v2::{M2, V2};

/// Absolute distance to an analytic set below which a λ counts as a member.
pub const SPECTRUM_TOL: f64 = 1e-9;

pub type VectorFn = Arc<dyn Fn(f64, f64) -> V2<f64> + Send + Sync>;
pub type FieldFn = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryClass {
    PeriodicL,
    AntiperiodicL,
    Localized,
    /// Bounded on the line, nonzero limits at `x → ±∞`.
    Bounded,
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Eigenfunction,
    GeneralizedEigenfunction,
    SecondSolution,
}

/// A solution of the Lax system, evaluable pointwise.
#[derive(Clone)]
pub struct VectorSolution {
    eval: VectorFn,
    pub lambda: Complex64,
    pub boundary: BoundaryClass,
    /// Shift under which `boundary` holds; `None` when it holds for every shift or not at all.
    pub period: Option<f64>,
    pub role: Role,
    pub label: String,
}

impl fmt::Debug for VectorSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorSolution")
            .field("label", &self.label)
            .field("lambda", &self.lambda)
            .field("boundary", &self.boundary)
            .field("period", &self.period)
            .field("role", &self.role)
            .finish()
    }
}

impl VectorSolution {
    pub fn new(
        label: impl Into<String>,
        lambda: Complex64,
        boundary: BoundaryClass,
        period: Option<f64>,
        role: Role,
        eval: impl Fn(f64, f64) -> V2<f64> + Send + Sync + 'static,
    ) -> Self {
        Self { eval: Arc::new(eval), lambda, boundary, period, role, label: label.into() }
    }

    #[inline]
    pub fn eval(&self, x: f64, t: f64) -> V2<f64> {
        (self.eval)(x, t)
    }

    pub fn evaluator(&self) -> VectorFn {
        self.eval.clone()
    }

    /// Same metadata, components multiplied by `(ca, cb)`.
    pub fn scaled(&self, ca: Complex64, cb: Complex64) -> Self {
        let f = self.eval.clone();
        Self {
            eval: Arc::new(move |x, t| {
                let v = f(x, t);
                V2::new(v.a * ca, v.b * cb)
            }),
            label: format!("{}(scaled)", self.label),
            ..self.clone()
        }
    }

    /// Max of `|φ(x+L,t) ∓ φ(x,t)|` over `grid`, relative to the max of `|φ|`; sign `+1` tests periodicity.
    pub fn shift_mismatch(&self, shift: f64, sign: f64, grid: &SpaceTimeGrid) -> f64 {
        let mut num = 0.0f64;
        let mut scale = 0.0f64;
        for (x, t) in grid.nodes() {
            let a = self.eval(x, t);
            let b = self.eval(x + shift, t);
            num = num.max((b - a * sign).max_abs());
            scale = scale.max(a.max_abs());
        }
        num / scale.max(f64::MIN_POSITIVE)
    }
}

/// `k(λ)` on a branch analytic near the real axis: `2√(1−λ)√(1+λ)` for `Re λ ≤ 1`, `2i√(λ−1)√(λ+1)` beyond.
pub fn k_of_lambda<T: Real>(lambda: Complex<T>) -> Complex<T> {
    let one = re(T::one());
    let two = lit::<T>(2.0);
    if lambda.re > T::one() {
        imag_unit::<T>() * ((lambda - one).sqrt() * (lambda + one).sqrt()) * two
    } else {
        (one - lambda).sqrt() * (one + lambda).sqrt() * two
    }
}

pub fn u_matrix<T: Real>(u: Complex<T>, lambda: Complex<T>) -> M2<T> {
    M2::new(lambda, u, -u.conj(), -lambda)
}

pub fn v_matrix<T: Real>(u: Complex<T>, ux: Complex<T>, lambda: Complex<T>) -> M2<T> {
    let half = lit::<T>(0.5);
    let d = lambda * lambda + re((u.norm_sqr() - T::one()) * half);
    let i = imag_unit::<T>();
    M2::new(
        i * d,
        i * (lambda * u + ux * half),
        i * (-lambda * u.conj() + ux.conj() * half),
        -(i * d),
    )
}

/// Which closed-form background solution to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BackgroundForm {
    /// `λ ∈ (0,1)`, the `e^{−ik(x+iλt)/2}` solution.
    RealFirst,
    /// `λ ∈ (0,1)`, the `e^{+ik(x+iλt)/2}` solution.
    RealSecond,
    /// `λ = 1`, constant eigenfunction.
    OneConstant,
    /// `λ = 1`, linearly growing companion.
    OneLinear,
    /// `λ = iγ`, `γ ≠ 0`.
    ImagFirst,
    ImagSecond,
    ZeroFirst,
    ZeroSecond,
    ZeroFirstGeneralized,
    ZeroSecondGeneralized,
}

/// Evaluates a background (`u = 1`) Lax solution at a positive real or imaginary λ.
pub fn background_eval<T: Real>(form: BackgroundForm, lambda: Complex<T>, x: T, t: T) -> V2<T> {
    let i = imag_unit::<T>();
    let one = re(T::one());
    let half = lit::<T>(0.5);
    match form {
        BackgroundForm::RealFirst | BackgroundForm::RealSecond => {
            let l = lambda.re;
            let k = lit::<T>(2.0) * (T::one() - l * l).sqrt();
            let a = Complex::new(l, -k * half).sqrt();
            let b = Complex::new(l, k * half).sqrt();
            // ik(x + iλt)/2 = (ikx − λkt)/2
            let arg = Complex::new(-l * k * t * half, k * x * half);
            if form == BackgroundForm::RealFirst {
                V2::new(a, -b) * (-arg).exp()
            } else {
                V2::new(b, -a) * arg.exp()
            }
        }
        BackgroundForm::OneConstant => V2::new(one, -one),
        BackgroundForm::OneLinear => {
            let z = Complex::new(x, t);
            V2::new(z + one, -z)
        }
        BackgroundForm::ImagFirst | BackgroundForm::ImagSecond => {
            let g = lambda.im;
            let k = lit::<T>(2.0) * (T::one() + g * g).sqrt();
            let sm = re((k * half - g).sqrt());
            let sp = re((k * half + g).sqrt());
            let arg = i * (k * (x - g * t) * half);
            if form == BackgroundForm::ImagFirst {
                V2::new(sm, -(i * sp)) * (-arg).exp()
            } else {
                V2::new(sp, i * sm) * arg.exp()
            }
        }
        BackgroundForm::ZeroFirst => V2::new(one, -i) * (-(i * x)).exp(),
        BackgroundForm::ZeroSecond => V2::new(one, i) * (i * x).exp(),
        BackgroundForm::ZeroFirstGeneralized => {
            V2::new(re(t), -one - i * t) * (-(i * x)).exp()
        }
        BackgroundForm::ZeroSecondGeneralized => {
            V2::new(re(-t), -one - i * t) * (i * x).exp()
        }
    }
}

/// `(p, q) ↦ (−q̄, p̄)`, mapping a solution at λ to one at `−λ̄`.
pub fn symmetry_partner(phi: &VectorSolution) -> VectorSolution {
    let f = phi.evaluator();
    VectorSolution {
        eval: Arc::new(move |x, t| {
            let v = f(x, t);
            V2::new(-v.b.conj(), v.a.conj())
        }),
        lambda: -phi.lambda.conj(),
        boundary: phi.boundary,
        period: phi.period,
        role: phi.role,
        label: format!("sym[{}]", phi.label),
    }
}

fn on_sigma0(lambda: Complex64) -> bool {
    (lambda.im.abs() <= SPECTRUM_TOL && lambda.re.abs() <= 1.0 + SPECTRUM_TOL)
        || lambda.re.abs() <= SPECTRUM_TOL
}

fn off_spectrum(lambda: Complex64, set: &'static str) -> Error {
    Error::OffSpectrum { re: lambda.re, im: lambda.im, set }
}

fn background_solution(
    form: BackgroundForm,
    lambda: Complex64,
    boundary: BoundaryClass,
    period: Option<f64>,
    role: Role,
    label: &str,
) -> VectorSolution {
    VectorSolution::new(label, lambda, boundary, period, role, move |x, t| {
        background_eval(form, lambda, x, t)
    })
}

/// Closed-form solutions of the Lax system at `u = 1`.
///
/// Returns two solutions for `λ ∈ (−1,1)∖{0}` and `λ ∈ iℝ∖{0}`, the eigenfunction and its
/// linear companion at `λ = ±1`, and two eigenfunctions plus two generalized eigenfunctions at 0.
pub fn background_solutions(lambda: Complex64) -> Result<Vec<VectorSolution>> {
    const SET: &str = "iR ∪ [-1, 1]";
    if !on_sigma0(lambda) || !lambda.is_finite() {
        return Err(off_spectrum(lambda, SET));
    }
    use BackgroundForm as F;
    use BoundaryClass as B;
    if lambda.norm() <= SPECTRUM_TOL {
        let z = Complex64::new(0.0, 0.0);
        let p = Some(PI);
        return Ok(vec![
            background_solution(F::ZeroFirst, z, B::AntiperiodicL, p, Role::Eigenfunction, "phi"),
            background_solution(F::ZeroSecond, z, B::AntiperiodicL, p, Role::Eigenfunction, "phi2"),
            background_solution(
                F::ZeroFirstGeneralized,
                z,
                B::AntiperiodicL,
                p,
                Role::GeneralizedEigenfunction,
                "phi_g",
            ),
            background_solution(
                F::ZeroSecondGeneralized,
                z,
                B::AntiperiodicL,
                p,
                Role::GeneralizedEigenfunction,
                "phi2_g",
            ),
        ]);
    }
    if lambda.im.abs() <= SPECTRUM_TOL {
        let l = lambda.re;
        let pos = Complex64::new(l.abs().min(1.0), 0.0);
        let sols = if (l.abs() - 1.0).abs() <= SPECTRUM_TOL {
            let one = Complex64::new(1.0, 0.0);
            vec![
                background_solution(F::OneConstant, one, B::PeriodicL, None, Role::Eigenfunction, "phi"),
                background_solution(F::OneLinear, one, B::Unbounded, None, Role::SecondSolution, "phi2"),
            ]
        } else {
            let k = 2.0 * (1.0 - pos.re * pos.re).sqrt();
            let p = Some(2.0 * PI / k);
            vec![
                background_solution(F::RealFirst, pos, B::AntiperiodicL, p, Role::Eigenfunction, "phi"),
                background_solution(F::RealSecond, pos, B::AntiperiodicL, p, Role::Eigenfunction, "phi2"),
            ]
        };
        return Ok(if l > 0.0 { sols } else { sols.iter().map(symmetry_partner).collect() });
    }
    // purely imaginary; the formulas hold for either sign of γ
    let g = lambda.im;
    let lam = Complex64::new(0.0, g);
    let k = 2.0 * (1.0 + g * g).sqrt();
    let p = Some(2.0 * PI / k);
    Ok(vec![
        background_solution(F::ImagFirst, lam, B::AntiperiodicL, p, Role::Eigenfunction, "phi"),
        background_solution(F::ImagSecond, lam, B::AntiperiodicL, p, Role::Eigenfunction, "phi2"),
    ])
}

/// Max-norms of `φ_x − Uφ` and `φ_t − Vφ` over the grid (finite-difference derivatives).
pub fn lax_residual(
    u: &(dyn Fn(f64, f64) -> Complex64 + Sync),
    lambda: Complex64,
    phi: &VectorSolution,
    grid: &SpaceTimeGrid,
) -> (f64, f64) {
    let hx = fd::oracle_step(grid.dx());
    let ht = fd::oracle_step(grid.dt());
    let mut rx = 0.0f64;
    let mut rt = 0.0f64;
    for (x, t) in grid.nodes() {
        let v = phi.eval(x, t);
        let uu = u(x, t);
        let ux = fd::d1(|s| u(s, t), x, hx);
        let px = fd::d1(|s| phi.eval(s, t), x, hx);
        let pt = fd::d1(|s| phi.eval(x, s), t, ht);
        rx = rx.max((px - u_matrix(uu, lambda).apply(v)).max_abs());
        rt = rt.max((pt - v_matrix(uu, ux, lambda).apply(v)).max_abs());
    }
    (rx, rt)
}

/// Max-norm of `(𝓛 − λ)φ − rhs` over the grid; `rhs = None` tests the homogeneous equation.
pub fn chain_residual(
    u: &(dyn Fn(f64, f64) -> Complex64 + Sync),
    lambda: Complex64,
    phi: &VectorSolution,
    rhs: Option<&VectorSolution>,
    grid: &SpaceTimeGrid,
) -> f64 {
    let hx = fd::oracle_step(grid.dx());
    grid.nodes()
        .map(|(x, t)| {
            let v = phi.eval(x, t);
            let d = fd::d1(|s| phi.eval(s, t), x, hx);
            let uu = u(x, t);
            let lv = V2::new(d.a - uu * v.b - lambda * v.a, -uu.conj() * v.a - d.b - lambda * v.b);
            let r = match rhs {
                Some(g) => lv - g.eval(x, t),
                None => lv,
            };
            r.max_abs()
        })
        .fold(0.0, f64::max)
}

/// `max |W(x,t) − W(x0,t0)| / |W(x0,t0)|` for the Wronskian `p₁q₂ − q₁p₂`.
pub fn wronskian_drift(a: &VectorSolution, b: &VectorSolution, grid: &SpaceTimeGrid) -> (Complex64, f64) {
    let w = |x: f64, t: f64| {
        let p = a.eval(x, t);
        let q = b.eval(x, t);
        p.a * q.b - p.b * q.a
    };
    let w0 = w(grid.x(0), grid.t(0));
    let drift = grid.nodes().map(|(x, t)| (w(x, t) - w0).norm()).fold(0.0, f64::max);
    (w0, drift / w0.norm().max(f64::MIN_POSITIVE))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Domain {
    WholeLine,
    PeriodicL { period: f64 },
    AntiperiodicL { period: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub lambda: Complex64,
    pub domain: Domain,
}

/// `√(1 − π²m²/L²)`, imaginary when `πm > L`.
pub fn lambda_m(period: f64, m: usize) -> Complex64 {
    let r = 1.0 - (PI * m as f64 / period).powi(2);
    if r >= 0.0 {
        Complex64::new(r.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-r).sqrt())
    }
}

/// `±λ_m` for `m ∈ {0} ∪ 2ℕ`, `m ≤ m_max`.
pub fn periodic_spectrum(period: f64, m_max: usize) -> Vec<Complex64> {
    (0..=m_max).step_by(2).flat_map(|m| pm(lambda_m(period, m))).collect()
}

/// `±λ_m` for odd `m ≤ m_max`.
pub fn antiperiodic_spectrum(period: f64, m_max: usize) -> Vec<Complex64> {
    (1..=m_max).step_by(2).flat_map(|m| pm(lambda_m(period, m))).collect()
}

fn pm(l: Complex64) -> Vec<Complex64> {
    if l.norm() == 0.0 {
        vec![l]
    } else {
        vec![l, -l]
    }
}

/// Geometric and algebraic multiplicity of λ for the Lax operator at `u = 1`.
pub fn classify_background_lambda(pt: SpectralPoint) -> Result<MultiplicityRecord> {
    let l = pt.lambda;
    let near = |z: Complex64| (l - z).norm() <= SPECTRUM_TOL;
    let generic = |l: Complex64| {
        if near(Complex64::new(0.0, 0.0)) {
            MultiplicityRecord::new(l, 2, 4)
        } else if near(Complex64::new(1.0, 0.0)) || near(Complex64::new(-1.0, 0.0)) {
            MultiplicityRecord::new(l, 1, 1)
        } else {
            MultiplicityRecord::new(l, 2, 2)
        }
    };
    let (period, parity, set) = match pt.domain {
        Domain::WholeLine => {
            return if on_sigma0(l) { Ok(generic(l)) } else { Err(off_spectrum(l, "iR ∪ [-1, 1]")) };
        }
        Domain::PeriodicL { period } => (period, 0usize, "{±λ_m : m = 0 or even}"),
        Domain::AntiperiodicL { period } => (period, 1usize, "{±λ_m : m odd}"),
    };
    if !(period > 0.0) {
        return Err(Error::Grid(format!("period {period} must be positive")));
    }
    // |λ_m| grows without bound on the imaginary branch, so only finitely many m can match
    let m_cap = ((l.norm() + 2.0) * period / PI).ceil() as usize + 2;
    for m in (parity..=m_cap).step_by(2) {
        let lm = lambda_m(period, m);
        if near(lm) || near(-lm) {
            return Ok(generic(l));
        }
    }
    Err(off_spectrum(l, set))
}

/// Geometric and algebraic multiplicity of an eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityRecord {
    pub lambda: Complex64,
    pub geometric: usize,
    pub algebraic: usize,
}

impl MultiplicityRecord {
    pub fn new(lambda: Complex64, geometric: usize, algebraic: usize) -> Self {
        Self { lambda, geometric, algebraic }
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.geometric, self.algebraic)
    }
}

/// `⟨φ*, ψ⟩ = ∫ (φ₂ψ₁ + φ₁ψ₂) dx` over `[a, b]` at time `t`, where `φ* = (φ̄₂, φ̄₁)` is the
/// adjoint eigenfunction built from `phi` and the inner product conjugates its first slot.
pub fn fredholm_inner_product(
    phi: &VectorSolution,
    psi: &VectorSolution,
    domain: (f64, f64),
    t: f64,
) -> Result<Complex64> {
    let r = quad::integrate(
        |x| {
            let a = phi.eval(x, t);
            let b = psi.eval(x, t);
            a.b * b.a + a.a * b.b
        },
        domain.0,
        domain.1,
        1e-10,
    )?;
    Ok(r.value)
}
