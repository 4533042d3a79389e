//! One-fold Darboux transformation from `u = 1` at a real seed `λ0 > 0`.

use std::sync::Arc;

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{BreatherKind, BreatherSpec};
use crate::lax::{self, BoundaryClass, Role, VectorSolution};
use crate::scalar::{cplx, imag_unit, lit, re, Real};
use crate::v2::{M2, V2};

/// `|λ − λ0|` below which `Φ̂(λ)` is refused outside the contour oracle.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeedKind {
    AB,
    KMB,
}

/// Seed solution `(p0, q0)` of the Lax system at `u = 1`, `λ = λ0`, together with the
/// fundamental matrix `Φ(λ) = [[p₊, p₋], [q₊, q₋]]` it is the second column of.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DarbouxSeed<T> {
    pub kind: SeedKind,
    pub lambda0: T,
}

impl<T: Real> DarbouxSeed<T> {
    pub fn new(kind: SeedKind, lambda0: T) -> Result<Self> {
        match kind {
            SeedKind::AB => BreatherSpec::akhmediev(lambda0)?,
            SeedKind::KMB => BreatherSpec::kuznetsov_ma(lambda0)?,
        };
        Ok(Self { kind, lambda0 })
    }

    pub fn spec(&self) -> BreatherSpec<T> {
        match self.kind {
            SeedKind::AB => BreatherSpec::akhmediev(self.lambda0),
            SeedKind::KMB => BreatherSpec::kuznetsov_ma(self.lambda0),
        }
        .expect("validated at construction")
    }

    /// `k0` (real for AB, `iβ0` for KMB).
    pub fn k0(&self) -> Complex<T> {
        lax::k_of_lambda(re(self.lambda0))
    }

    pub fn sigma0(&self) -> Complex<T> {
        self.k0() * self.lambda0
    }

    /// `dⁿΦ/dλⁿ` at `(λ, x, t)` for `n ∈ {0, 1, 2}`.
    pub fn fundamental(&self, lambda: Complex<T>, x: T, t: T, order: u8) -> M2<T> {
        let i = imag_unit::<T>();
        let half = lit::<T>(0.5);
        let k = lax::k_of_lambda(lambda);
        let a = (lambda - i * k * half).sqrt();
        let b = (lambda + i * k * half).sqrt();
        let e = (-(i * k) * x + lambda * k * t) * half;
        let (ep, em) = (e.exp(), (-e).exp());
        let pp = a * ep + b * em;
        let pm = a * ep - b * em;
        let qp = -b * ep - a * em;
        let qm = -b * ep + a * em;
        if order == 0 {
            return M2::new(pp, pm, qp, qm);
        }
        let one = T::one();
        let two = lit::<T>(2.0);
        let z = i * lambda * x * two + (re(one) - lambda * lambda * two) * t * two;
        if order == 1 {
            let cp = (i + z) / k;
            let cq = (-i + z) / k;
            return M2::new(cp * pm, cp * pp, cq * qm, cq * qp);
        }
        let zp = i * x * two - lambda * t * lit::<T>(8.0);
        let k2 = k * k;
        let k3 = k2 * k;
        let dd = |c: Complex<T>, other: Complex<T>, same: Complex<T>| {
            (lambda * lit::<T>(4.0) * (c + z) / k3 + zp / k) * other + (c + z) * (c + z) / k2 * same
        };
        M2::new(dd(i, pm, pp), dd(i, pp, pm), dd(-i, qm, qp), dd(-i, qp, qm))
    }

    pub fn pq0(&self, x: T, t: T) -> V2<T> {
        self.fundamental(re(self.lambda0), x, t, 0).col(1)
    }

    /// `(p₊, q₊)` at `λ0`.
    pub fn pq_plus(&self, x: T, t: T) -> V2<T> {
        self.fundamental(re(self.lambda0), x, t, 0).col(0)
    }

    /// `|p0|² + |q0|²`, evaluated from its closed form (`4[cosh σ0t − λ0 cos k0x]` for AB,
    /// `4[λ0 cosh β0x − cos α0t]` for KMB).
    pub fn norm(&self, x: T, t: T) -> T {
        let l = self.lambda0;
        let four = lit::<T>(4.0);
        match self.kind {
            SeedKind::AB => {
                let k = self.k0().re;
                four * ((l * k * t).cosh() - l * (k * x).cos())
            }
            SeedKind::KMB => {
                let b = self.k0().im;
                four * (l * (b * x).cosh() - (l * b * t).cos())
            }
        }
    }

    /// `(p̂0, q̂0) = 2λ0/(|p0|²+|q0|²) · (−q̄0, p̄0)`.
    pub fn transform_eigenfunction(&self, x: T, t: T) -> V2<T> {
        let v = self.pq0(x, t);
        let s = lit::<T>(2.0) * self.lambda0 / self.norm(x, t);
        V2::new(-v.b.conj(), v.a.conj()) * s
    }

    /// `û0 = 1 + 4λ0 p0 q̄0 / (|p0|²+|q0|²)`, with the norm taken directly from `(p0, q0)`.
    pub fn transform_potential(&self, x: T, t: T) -> Complex<T> {
        let v = self.pq0(x, t);
        re(T::one()) + v.a * v.b.conj() * (lit::<T>(4.0) * self.lambda0 / v.norm_sqr())
    }

    /// `D(λ) = I + (p̂0, q̂0)ᵀ(−q0, p0)/(λ − λ0)`.
    pub fn darboux_matrix(&self, lambda: Complex<T>, x: T, t: T) -> M2<T> {
        let one = re(T::one());
        M2::identity() + self.projector(x, t) * (one / (lambda - self.lambda0))
    }

    /// `P = (p̂0, q̂0)ᵀ(−q0, p0)`, the residue of `D`.
    pub fn projector(&self, x: T, t: T) -> M2<T> {
        let v = self.pq0(x, t);
        M2::outer(self.transform_eigenfunction(x, t), V2::new(-v.b, v.a))
    }

    /// `Φ̂(λ) = D(λ)Φ(λ)` without the pole guard (used by the contour oracle).
    pub fn transformed_fundamental(&self, lambda: Complex<T>, x: T, t: T) -> M2<T> {
        self.darboux_matrix(lambda, x, t) * self.fundamental(lambda, x, t, 0)
    }

    /// Laurent coefficients `(Φ̂₋₁, Φ̂₀, Φ̂₁)` from `P` and the λ-derivatives of `Φ`.
    pub fn laurent_matrices(&self, x: T, t: T) -> [M2<T>; 3] {
        let l0 = re(self.lambda0);
        let p = self.projector(x, t);
        let f0 = self.fundamental(l0, x, t, 0);
        let f1 = self.fundamental(l0, x, t, 1);
        let f2 = self.fundamental(l0, x, t, 2);
        [p * f0, f0 + p * f1, f1 + p * f2 * re(lit::<T>(0.5))]
    }

    fn hyper(&self, x: T, t: T) -> (Complex<T>, Complex<T>, Complex<T>) {
        let e = self.sigma0() * t - imag_unit::<T>() * self.k0() * x;
        let y = imag_unit::<T>() * self.lambda0 * x + re((T::one() - lit::<T>(2.0) * self.lambda0 * self.lambda0) * t);
        (e.cosh(), e.sinh(), y)
    }

    /// Generalized eigenfunction `φ1`, closed form.
    pub fn phi1(&self, x: T, t: T) -> V2<T> {
        let k = self.k0();
        let two = re(lit::<T>(2.0));
        let (ch, _, _) = self.hyper(x, t);
        self.pq_plus(x, t) * (re(T::one()) / (imag_unit::<T>() * k * two))
            + self.transform_eigenfunction(x, t) * (two / (k * k) * (ch - self.lambda0))
    }

    /// Second solution `ψ0` at `λ0` (not antiperiodic for AB, growing in `x` for KMB).
    pub fn psi0(&self, x: T, t: T) -> V2<T> {
        let i = imag_unit::<T>();
        let l = self.lambda0;
        let (_, sh, _) = self.hyper(x, t);
        let c = re(-l * x) + i * ((T::one() - lit::<T>(2.0) * l * l) * t) + i * sh / self.k0();
        self.pq0(x, t) + self.transform_eigenfunction(x, t) * (c * lit::<T>(4.0))
    }

    /// Second generalized eigenfunction `φ2`, closed form.
    pub fn phi2(&self, x: T, t: T) -> V2<T> {
        let i = imag_unit::<T>();
        let l = self.lambda0;
        let k = self.k0();
        let k2 = k * k;
        let (ch, sh, y) = self.hyper(x, t);
        let pq = self.pq0(x, t);
        let hat = self.transform_eigenfunction(x, t);
        let one = re(T::one());
        let half = lit::<T>(0.5);
        let lin = re(l * x) - i * ((T::one() - lit::<T>(2.0) * l * l) * t);
        pq * (lin / k2)
            + V2::new(pq.a, -pq.b) * (re(half) / k2)
            + hat * ((y * y * lit::<T>(4.0) - one) * half / k2)
            + hat * (y * sh * lit::<T>(4.0) / (k2 * k))
            + hat * ((ch - l) * (l * lit::<T>(4.0)) / (k2 * k2))
    }

    /// Second solution of the second Laurent order, `ψ1`, closed form.
    pub fn psi1(&self, x: T, t: T) -> V2<T> {
        let i = imag_unit::<T>();
        let l = self.lambda0;
        let k = self.k0();
        let k2 = k * k;
        let (ch, sh, y) = self.hyper(x, t);
        let pp = self.pq_plus(x, t);
        let hat = self.transform_eigenfunction(x, t);
        let eight = lit::<T>(8.0);
        pp * (y * lit::<T>(2.0) / k)
            + V2::new(pp.a, -pp.b) * (i / k)
            + hat * (i * y * ch * eight / k2)
            + hat * (i * sh * (eight * l) / (k2 * k))
            + hat * (i * (i * x - re(lit::<T>(4.0) * l * t)) * lit::<T>(2.0))
    }

    /// Eigenfunction at `λ = 1` of the transformed system: `D(1)(1, −1)ᵀ`.
    pub fn lambda_one_eigenfunction(&self, x: T, t: T) -> V2<T> {
        let pq = self.pq0(x, t);
        let one = re(T::one());
        let c = (pq.a + pq.b) / (T::one() - self.lambda0);
        V2::new(one, -one) - self.transform_eigenfunction(x, t) * c
    }

    /// Second solution at `λ = 1`: `D(1)(x+it+1, −x−it)ᵀ`.
    pub fn lambda_one_second(&self, x: T, t: T) -> V2<T> {
        let pq = self.pq0(x, t);
        let z = cplx(x, t);
        let c = (z * (pq.a + pq.b) + pq.b) / (T::one() - self.lambda0);
        V2::new(z + T::one(), -z) - self.transform_eigenfunction(x, t) * c
    }
}

pub type DarbouxSeed64 = DarbouxSeed<f64>;

pub fn build_seed(kind: SeedKind, lambda0: f64) -> Result<DarbouxSeed64> {
    DarbouxSeed::new(kind, lambda0)
}

impl DarbouxSeed64 {
    fn antiperiod(&self) -> Option<f64> {
        match self.kind {
            SeedKind::AB => Some(std::f64::consts::TAU / self.k0().re),
            SeedKind::KMB => None,
        }
    }

    /// `û0` as a shareable evaluator.
    pub fn potential_fn(&self) -> lax::FieldFn {
        let s = *self;
        Arc::new(move |x, t| s.transform_potential(x, t))
    }

    /// Seed `(p0, q0)` as a Lax solution at `u = 1`.
    pub fn seed_solution(&self) -> VectorSolution {
        let s = *self;
        let b = match self.kind {
            SeedKind::AB => BoundaryClass::AntiperiodicL,
            SeedKind::KMB => BoundaryClass::Unbounded,
        };
        VectorSolution::new("p0q0", Complex64::new(s.lambda0, 0.0), b, self.antiperiod(), Role::Eigenfunction, move |x, t| {
            s.pq0(x, t)
        })
    }

    pub fn eigenfunction(&self) -> VectorSolution {
        let s = *self;
        let b = match self.kind {
            SeedKind::AB => BoundaryClass::AntiperiodicL,
            SeedKind::KMB => BoundaryClass::Localized,
        };
        VectorSolution::new("phi0", Complex64::new(s.lambda0, 0.0), b, self.antiperiod(), Role::Eigenfunction, move |x, t| {
            s.transform_eigenfunction(x, t)
        })
    }

    pub fn darboux(&self) -> DarbouxMatrix {
        DarbouxMatrix { seed: *self }
    }

    pub fn laurent_expansion(&self) -> LaurentExpansion {
        let s = *self;
        let l0 = Complex64::new(s.lambda0, 0.0);
        let per = self.antiperiod();
        let other = BoundaryClass::Unbounded;
        let gen_class = match self.kind {
            SeedKind::AB => BoundaryClass::AntiperiodicL,
            SeedKind::KMB => BoundaryClass::Unbounded,
        };
        LaurentExpansion {
            phi0: self.eigenfunction(),
            phi1: VectorSolution::new("phi1", l0, gen_class, per, Role::GeneralizedEigenfunction, move |x, t| s.phi1(x, t)),
            phi2: VectorSolution::new("phi2", l0, other, None, Role::GeneralizedEigenfunction, move |x, t| s.phi2(x, t)),
            psi0: VectorSolution::new("psi0", l0, other, None, Role::SecondSolution, move |x, t| s.psi0(x, t)),
            psi1: VectorSolution::new("psi1", l0, other, None, Role::GeneralizedEigenfunction, move |x, t| s.psi1(x, t)),
            seed: *self,
        }
    }

    /// Bounded eigenfunction and unbounded companion at `λ = 1`.
    pub fn lambda_one_solutions(&self) -> (VectorSolution, VectorSolution) {
        let s = *self;
        let one = Complex64::new(1.0, 0.0);
        let (b, per) = match self.kind {
            SeedKind::AB => (BoundaryClass::PeriodicL, self.antiperiod()),
            SeedKind::KMB => (BoundaryClass::Bounded, None),
        };
        (
            VectorSolution::new("varphi_hat", one, b, per, Role::Eigenfunction, move |x, t| s.lambda_one_eigenfunction(x, t)),
            VectorSolution::new("phi_hat", one, BoundaryClass::Unbounded, None, Role::SecondSolution, move |x, t| {
                s.lambda_one_second(x, t)
            }),
        )
    }

    /// Closed-form Laurent coefficient against the matrix route, max over the given points.
    pub fn laurent_route_mismatch(&self, points: &[(f64, f64)]) -> f64 {
        let c = Complex64::new(0.0, 2.0) * self.k0();
        let mut worst = 0.0f64;
        for &(x, t) in points {
            let [m1, m0, p1] = self.laurent_matrices(x, t);
            let pairs = [
                (m1.col(0) * (1.0 / c), self.transform_eigenfunction(x, t)),
                (m0.col(0) * (1.0 / c), self.phi1(x, t)),
                (p1.col(0) * (1.0 / c), self.phi2(x, t)),
                (m0.col(1), self.psi0(x, t)),
                (p1.col(1), self.psi1(x, t)),
            ];
            for (a, b) in pairs {
                worst = worst.max((a - b).max_abs() / b.max_abs().max(1.0));
            }
            worst = worst.max(m1.col(1).max_abs());
        }
        worst
    }

    /// `(Φ̂₋₁, Φ̂₀)` recovered from `Φ̂(λ)` on the circle `|λ − λ0| = r` by discrete contour sums.
    pub fn contour_laurent(&self, x: f64, t: f64, radius: f64, angles: usize) -> (M2<f64>, M2<f64>) {
        let mut m1 = M2::new(C0, C0, C0, C0);
        let mut m0 = m1;
        for j in 0..angles {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / angles as f64);
            let lam = Complex64::new(self.lambda0, 0.0) + w * radius;
            let f = self.transformed_fundamental(lam, x, t);
            m1 = m1 + f * (w * radius);
            m0 = m0 + f;
        }
        let n = Complex64::new(1.0 / angles as f64, 0.0);
        (m1 * n, m0 * n)
    }

    pub fn fredholm_certificates(&self, t: f64) -> Result<Vec<Certificate>> {
        fredholm_certificates(self, t)
    }
}

const C0: Complex64 = Complex64::new(0.0, 0.0);

/// `D(λ)` as an evaluator with pole guards.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DarbouxMatrix {
    pub seed: DarbouxSeed64,
}

impl DarbouxMatrix {
    fn guard(&self, lambda: Complex64) -> Result<()> {
        let l0 = self.seed.lambda0;
        if (lambda - l0).norm() < POLE_GUARD {
            return Err(Error::Pole(l0));
        }
        if (lambda + l0).norm() < POLE_GUARD {
            return Err(Error::Pole(-l0));
        }
        Ok(())
    }

    pub fn eval(&self, lambda: Complex64, x: f64, t: f64) -> Result<M2<f64>> {
        self.guard(lambda)?;
        Ok(self.seed.darboux_matrix(lambda, x, t))
    }

    pub fn inverse(&self, lambda: Complex64, x: f64, t: f64) -> Result<M2<f64>> {
        self.eval(lambda, x, t)?
            .inverse()
            .ok_or_else(|| Error::Incompatible(format!("D({lambda}) is singular")))
    }

    /// Closed-form determinant `(λ + λ0)/(λ − λ0)`.
    pub fn det_expected(&self, lambda: Complex64) -> Complex64 {
        (lambda + self.seed.lambda0) / (lambda - self.seed.lambda0)
    }
}

/// `D(λ)φ`; a solution of the transformed Lax system at the same λ.
pub fn transform_solution(d: &DarbouxMatrix, phi: &VectorSolution, lambda: Complex64) -> Result<VectorSolution> {
    d.guard(lambda)?;
    let seed = d.seed;
    let f = phi.evaluator();
    Ok(VectorSolution::new(
        format!("D[{}]", phi.label),
        lambda,
        phi.boundary,
        phi.period,
        phi.role,
        move |x, t| seed.darboux_matrix(lambda, x, t).apply(f(x, t)),
    ))
}

/// `D(λ)⁻¹φ`.
pub fn inverse_transform_solution(d: &DarbouxMatrix, phi: &VectorSolution, lambda: Complex64) -> Result<VectorSolution> {
    d.guard(lambda)?;
    let seed = d.seed;
    let f = phi.evaluator();
    Ok(VectorSolution::new(
        format!("Dinv[{}]", phi.label),
        lambda,
        phi.boundary,
        phi.period,
        phi.role,
        move |x, t| {
            seed.darboux_matrix(lambda, x, t)
                .inverse()
                .map(|m| m.apply(f(x, t)))
                .unwrap_or_else(|| V2::new(Complex64::new(f64::NAN, 0.0), Complex64::new(f64::NAN, 0.0)))
        },
    ))
}

/// Eigenfunction `φ0`, generalized eigenfunctions `φ1, φ2` and second solutions `ψ0, ψ1` at `λ0`:
/// `(𝓛−λ0)φ0 = 0`, `(𝓛−λ0)φ1 = φ0`, `(𝓛−λ0)φ2 = φ1`, `(𝓛−λ0)ψ0 = 0`, `(𝓛−λ0)ψ1 = ψ0`.
#[derive(Clone, Debug)]
pub struct LaurentExpansion {
    pub phi0: VectorSolution,
    pub phi1: VectorSolution,
    pub phi2: VectorSolution,
    pub psi0: VectorSolution,
    pub psi1: VectorSolution,
    pub seed: DarbouxSeed64,
}

impl LaurentExpansion {
    /// `(name, solution, right-hand side)` for each chain relation.
    pub fn chain(&self) -> [(&'static str, &VectorSolution, Option<&VectorSolution>); 5] {
        [
            ("(L-l0)phi0 = 0", &self.phi0, None),
            ("(L-l0)phi1 = phi0", &self.phi1, Some(&self.phi0)),
            ("(L-l0)phi2 = phi1", &self.phi2, Some(&self.phi1)),
            ("(L-l0)psi0 = 0", &self.psi0, None),
            ("(L-l0)psi1 = psi0", &self.psi1, Some(&self.psi0)),
        ]
    }
}

/// One analytic-vs-quadrature comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub quantity: String,
    pub analytic: Complex64,
    pub computed: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub conclusion: String,
}

impl Certificate {
    fn new(quantity: &str, analytic: Complex64, computed: Complex64, conclusion: &str) -> Self {
        let abs_err = (computed - analytic).norm();
        let rel_err = if analytic.norm() > 0.0 { abs_err / analytic.norm() } else { abs_err };
        Self {
            quantity: quantity.into(),
            analytic,
            computed,
            abs_err,
            rel_err,
            conclusion: conclusion.into(),
        }
    }
}

/// Fredholm pairings deciding the algebraic multiplicity of `λ0` (and of `λ = 1` for AB).
pub fn fredholm_certificates(seed: &DarbouxSeed64, t: f64) -> Result<Vec<Certificate>> {
    let l0 = seed.lambda0;
    let exp = seed.laurent_expansion();
    match seed.kind {
        SeedKind::AB => {
            let k0 = seed.k0().re;
            let period = std::f64::consts::TAU / k0;
            let dom = (0.0, period);
            let p00 = lax::fredholm_inner_product(&exp.phi0, &exp.phi0, dom, t)?;
            let p01 = lax::fredholm_inner_product(&exp.phi0, &exp.phi1, dom, t)?;
            let (one, _) = seed.lambda_one_solutions();
            let p11 = lax::fredholm_inner_product(&one, &one, dom, t)?;
            Ok(vec![
                Certificate::new(
                    "<phi0*, phi0>",
                    C0,
                    p00,
                    "vanishes: a generalized eigenfunction phi1 exists, lambda0 is not algebraically simple",
                ),
                Certificate::new(
                    "<phi0*, phi1>",
                    Complex64::new(2.0 * l0 * l0 * period / (k0 * k0), 0.0),
                    p01,
                    "nonzero: no second generalized eigenfunction, lambda0 is algebraically double",
                ),
                Certificate::new(
                    "<varphi_hat*, varphi_hat> at lambda=1",
                    Complex64::new(-2.0 * (1.0 + l0) * period / (1.0 - l0), 0.0),
                    p11,
                    "nonzero: lambda = 1 is algebraically simple in the periodic space",
                ),
            ])
        }
        SeedKind::KMB => {
            let b0 = seed.k0().im;
            let span = 50.0 / b0;
            let p00 = lax::fredholm_inner_product(&exp.phi0, &exp.phi0, (-span, span), t)?;
            Ok(vec![Certificate::new(
                "<phi0*, phi0>",
                Complex64::new(-2.0 * l0 / b0, 0.0),
                p00,
                "nonzero: lambda0 is algebraically simple",
            )])
        }
    }
}

/// Max over `points` of `|D(λ)D(λ)⁻¹ − I|`.
pub fn inverse_identity_error(d: &DarbouxMatrix, lambda: Complex64, points: &[(f64, f64)]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(x, t) in points {
        let m = d.eval(lambda, x, t)?;
        let inv = d.inverse(lambda, x, t)?;
        worst = worst.max(((m * inv) - M2::identity()).max_abs());
    }
    Ok(worst)
}

/// Max relative deviation of `det D(λ)` from `(λ+λ0)/(λ−λ0)` over `(λ, x, t)` samples.
pub fn determinant_error(d: &DarbouxMatrix, samples: &[(Complex64, f64, f64)]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &(l, x, t) in samples {
        let det = d.eval(l, x, t)?.det();
        let want = d.det_expected(l);
        worst = worst.max((det - want).norm() / want.norm());
    }
    Ok(worst)
}

/// The transformed potential agrees with the closed-form breather of the matching kind.
pub fn potential_mismatch(seed: &DarbouxSeed64, grid: &crate::grid::SpaceTimeGrid) -> f64 {
    let spec = seed.spec();
    grid.nodes()
        .map(|(x, t)| {
            let a = seed.transform_potential(x, t);
            let b = spec.eval(x, t);
            (a - b).norm() / b.norm().max(1.0)
        })
        .fold(0.0, f64::max)
}

pub fn seed_kind_of(spec: &BreatherSpec<f64>) -> Option<SeedKind> {
    match spec.kind() {
        BreatherKind::Akhmediev => Some(SeedKind::AB),
        BreatherKind::KuznetsovMa => Some(SeedKind::KMB),
        _ => None,
    }
}
