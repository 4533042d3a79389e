//! Solutions of the linearized NLS equation
//! `i v_t + ½v_xx + (2|û|²−1)v + û²v̄ = 0`
//! built from squared Lax eigenfunctions, at `u = 1` and at the AB and KMB breathers.

use std::sync::Arc;

use ndarray::Array2;
use ndarray_linalg::SVD;
use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use crate::darboux::{DarbouxSeed, SeedKind};
use crate::error::{Error, Result};
use crate::exact::{characteristic_scales, BreatherSpec64, ResidualReport};
use crate::fd;
use crate::fit::{linear_fit, linspace};
use crate::grid::SpaceTimeGrid;
use crate::lax::{self, FieldFn, VectorSolution};
use crate::scalar::{imag_unit, lit, re, Real};
use crate::v2::V2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    PairI,
    PairII,
    PairIII,
    Generalized,
    Combination(String),
}

/// Growth of a solution. Rates are temporal (`t → +∞`) except for solutions about the
/// Kuznetsov-Ma breather, where `ExpDecaying` records the spatial decay rate as `|x| → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", content = "rate")]
pub enum GrowthClass {
    Decaying,
    Bounded,
    LinearT,
    ExpGrowing(f64),
    ExpDecaying(f64),
    UnboundedX,
}

impl GrowthClass {
    pub fn rate(&self) -> Option<f64> {
        match self {
            GrowthClass::ExpGrowing(r) => Some(*r),
            GrowthClass::ExpDecaying(r) => Some(-*r),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pair {
    I,
    II,
    III,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Real,
    Imag,
}

/// `a₁b₁ − conj(a₂b₂)` or `i(a₁b₁ + conj(a₂b₂))`.
pub fn pair_value<T: Real>(a: V2<T>, b: V2<T>, variant: Variant) -> Complex<T> {
    let p = a.a * b.a;
    let q = (a.b * b.b).conj();
    match variant {
        Variant::Real => p - q,
        Variant::Imag => imag_unit::<T>() * (p + q),
    }
}

#[derive(Clone)]
pub struct LinearizedSolution {
    eval: FieldFn,
    pub about: BreatherSpec64,
    pub provenance: Provenance,
    pub growth_class: GrowthClass,
    pub label: String,
}

impl std::fmt::Debug for LinearizedSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearizedSolution")
            .field("label", &self.label)
            .field("about", &self.about)
            .field("provenance", &self.provenance)
            .field("growth_class", &self.growth_class)
            .finish()
    }
}

impl LinearizedSolution {
    pub fn new(
        label: impl Into<String>,
        about: BreatherSpec64,
        provenance: Provenance,
        growth_class: GrowthClass,
        eval: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self { eval: Arc::new(eval), about, provenance, growth_class, label: label.into() }
    }

    #[inline]
    pub fn eval(&self, x: f64, t: f64) -> Complex64 {
        (self.eval)(x, t)
    }

    pub fn evaluator(&self) -> FieldFn {
        self.eval.clone()
    }

    pub fn with_class(mut self, growth_class: GrowthClass) -> Self {
        self.growth_class = growth_class;
        self
    }

    /// `c·v`, same metadata.
    pub fn scaled(&self, c: Complex64) -> Self {
        let f = self.eval.clone();
        Self { eval: Arc::new(move |x, t| f(x, t) * c), ..self.clone() }
    }
}

fn provisional_class(a: &VectorSolution, b: &VectorSolution) -> GrowthClass {
    use lax::BoundaryClass::*;
    match (a.boundary, b.boundary) {
        (Unbounded, _) | (_, Unbounded) => GrowthClass::UnboundedX,
        (Localized, _) | (_, Localized) => GrowthClass::Decaying,
        _ => GrowthClass::Bounded,
    }
}

/// Squared-eigenfunction map. Pair I uses `phi` alone, Pair III `psi` alone, Pair II both.
/// The growth class is read off the boundary classes of the inputs; catalogs certify it.
pub fn squared_map(
    about: BreatherSpec64,
    phi: &VectorSolution,
    psi: &VectorSolution,
    pair: Pair,
    variant: Variant,
) -> Result<LinearizedSolution> {
    if pair == Pair::II && (phi.lambda - psi.lambda).norm() > 1e-12 {
        return Err(Error::Incompatible(format!(
            "pair II needs a common lambda, got {} and {}",
            phi.lambda, psi.lambda
        )));
    }
    let (a, b, prov) = match pair {
        Pair::I => (phi.evaluator(), phi.evaluator(), Provenance::PairI),
        Pair::II => (phi.evaluator(), psi.evaluator(), Provenance::PairII),
        Pair::III => (psi.evaluator(), psi.evaluator(), Provenance::PairIII),
    };
    let class = match pair {
        Pair::I => provisional_class(phi, phi),
        Pair::II => provisional_class(phi, psi),
        Pair::III => provisional_class(psi, psi),
    };
    let label = format!("{:?}{:?}[{},{}]", pair, variant, phi.label, psi.label);
    Ok(LinearizedSolution::new(label, about, prov, class, move |x, t| {
        pair_value(a(x, t), b(x, t), variant)
    }))
}

/// Relative chain residual above which a generalized eigenfunction is rejected.
pub const CHAIN_TOL: f64 = 1e-6;

/// `2φ₁φ_g1 − 2φ̄₂φ̄_g2` (or the `i` variant) for a chain `(𝓛−λ)φ = 0`, `(𝓛−λ)φ_g = φ`,
/// after verifying the chain on `check`.
pub fn generalized_map(
    about: BreatherSpec64,
    phi: &VectorSolution,
    phi_g: &VectorSolution,
    variant: Variant,
    check: &SpaceTimeGrid,
) -> Result<LinearizedSolution> {
    let u = move |x: f64, t: f64| about.eval(x, t);
    let scale = check
        .nodes()
        .map(|(x, t)| phi.eval(x, t).max_abs().max(phi_g.eval(x, t).max_abs()))
        .fold(f64::MIN_POSITIVE, f64::max);
    let r0 = lax::chain_residual(&u, phi.lambda, phi, None, check) / scale;
    let r1 = lax::chain_residual(&u, phi.lambda, phi_g, Some(phi), check) / scale;
    let r = r0.max(r1);
    if !(r < CHAIN_TOL) {
        return Err(Error::Chain(r));
    }
    let (a, b) = (phi.evaluator(), phi_g.evaluator());
    let label = format!("Gen{:?}[{},{}]", variant, phi.label, phi_g.label);
    Ok(LinearizedSolution::new(label, about, Provenance::Generalized, provisional_class(phi, phi_g), move |x, t| {
        pair_value(a(x, t), b(x, t), variant) * 2.0
    }))
}

/// The four terms of the linearized operator at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinTerms {
    pub time: Complex64,
    pub dispersion: Complex64,
    pub potential: Complex64,
    pub conjugate: Complex64,
}

impl LinTerms {
    pub fn sum(&self) -> Complex64 {
        self.time + self.dispersion + self.potential + self.conjugate
    }
}

pub fn lin_terms(about: &BreatherSpec64, v: &LinearizedSolution, x: f64, t: f64, hx: f64, ht: f64) -> LinTerms {
    let u = about.eval(x, t);
    let w = v.eval(x, t);
    LinTerms {
        time: Complex64::i() * fd::d1_8(|s| v.eval(x, s), t, ht),
        dispersion: fd::d2_8(|s| v.eval(s, t), x, hx) * 0.5,
        potential: w * (2.0 * u.norm_sqr() - 1.0),
        conjugate: u * u * w.conj(),
    }
}

/// Max-norm of the linearized NLS residual over `grid`, 8th-order differences with
/// step [`fd::LIN_ORACLE_STEP`].
pub fn lin_nls_residual(about: &BreatherSpec64, v: &LinearizedSolution, grid: &SpaceTimeGrid) -> ResidualReport {
    let hx = fd::LIN_ORACLE_STEP;
    let ht = fd::LIN_ORACLE_STEP;
    let max = grid
        .nodes()
        .map(|(x, t)| lin_terms(about, v, x, t, hx, ht).sum().norm())
        .fold(0.0, f64::max);
    let (sx, st) = characteristic_scales(about);
    let points_per_scale = (sx / grid.dx()).min(st / grid.dt().max(f64::MIN_POSITIVE));
    ResidualReport { max, points_per_scale, under_resolved: points_per_scale < 16.0 }
}

/// Samples per fit in [`growth_rate`].
pub const GROWTH_SAMPLES: usize = 200;

/// Slope of `ln|v(x_probe, t)|` over `window`. A probe where `v` passes through zero is
/// shifted (up to five attempts).
pub fn growth_rate(v: &LinearizedSolution, window: (f64, f64), x_probe: f64) -> Result<f64> {
    let ts = linspace(window.0, window.1, GROWTH_SAMPLES);
    let mut x = x_probe;
    for _ in 0..5 {
        let amps: Vec<f64> = ts.iter().map(|&t| v.eval(x, t).norm()).collect();
        let top = amps.iter().cloned().fold(0.0, f64::max);
        if top > 0.0 && amps.iter().all(|a| *a > 1e-8 * top && a.is_finite()) {
            let logs: Vec<f64> = amps.iter().map(|a| a.ln()).collect();
            return Ok(linear_fit(&ts, &logs)?.slope);
        }
        x += 0.1234567;
    }
    Err(Error::Fit(format!("{} vanishes at every probe near x = {x_probe}", v.label)))
}

/// Slope of `ln|v(x, t_probe)|` over `|x| ∈ window`, averaged over both tails.
pub fn spatial_decay_rate(v: &LinearizedSolution, window: (f64, f64), t_probe: f64) -> Result<f64> {
    let xs = linspace(window.0, window.1, GROWTH_SAMPLES);
    let mut slopes = Vec::with_capacity(2);
    for sign in [1.0, -1.0] {
        let logs: Vec<f64> = xs.iter().map(|&x| v.eval(sign * x, t_probe).norm().ln()).collect();
        slopes.push(linear_fit(&xs, &logs)?.slope);
    }
    Ok(0.5 * (slopes[0] + slopes[1]))
}

/// Smallest singular value of the column-normalized sample matrix.
pub fn gram_min_singular(entries: &[&LinearizedSolution], grid: &SpaceTimeGrid) -> Result<f64> {
    let nodes: Vec<(f64, f64)> = grid.nodes().collect();
    let mut a = Array2::<Complex64>::zeros((nodes.len(), entries.len()));
    for (j, e) in entries.iter().enumerate() {
        let col: Vec<Complex64> = nodes.iter().map(|&(x, t)| e.eval(x, t)).collect();
        let n = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Incompatible(format!("{} has no usable samples", e.label)));
        }
        for (i, z) in col.into_iter().enumerate() {
            a[[i, j]] = z / n;
        }
    }
    let (_, s, _) = a.svd(false, false).map_err(|e| Error::Eigen(e.to_string()))?;
    Ok(s.iter().cloned().fold(f64::INFINITY, f64::min))
}

/// `max |v(x+L,t) − v(x,t)|` relative to `max |v|`.
pub fn period_mismatch(v: &LinearizedSolution, period: f64, grid: &SpaceTimeGrid) -> f64 {
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for (x, t) in grid.nodes() {
        let a = v.eval(x, t);
        num = num.max((v.eval(x + period, t) - a).norm());
        den = den.max(a.norm());
    }
    num / den.max(f64::MIN_POSITIVE)
}

/// Time factors `(ṽ⁺(t), ṽ⁻(t))` of the Fourier mode `k` at `u = 1`.
pub fn constant_mode<T: Real>(k: T, t: T) -> (Complex<T>, Complex<T>) {
    let i = imag_unit::<T>();
    let two = lit::<T>(2.0);
    if k == T::zero() {
        return (i * two, re(T::one()) + i * two * t);
    }
    if k < two {
        let l = (lit::<T>(4.0) - k * k).sqrt() / two;
        let e = (k * l * t).exp();
        return ((i * two * l + k) * e, (i * two * l - k) / e);
    }
    if k == two {
        return (re(two), i + re(two * t));
    }
    let g = (k * k - lit::<T>(4.0)).sqrt() / two;
    let (s, c) = (k * g * t).sin_cos();
    (re(k * c) - i * two * g * s, i * two * g * c + re(k * s))
}

/// `ṽ_k^±(t)cos(kx)` and `ṽ_k^±(t)sin(kx)` (the sine modes are omitted at `k = 0`).
pub fn constant_basis(k: f64) -> Vec<LinearizedSolution> {
    let about = BreatherSpec64::constant();
    let lam = if k < 2.0 { 0.5 * (4.0 - k * k).max(0.0).sqrt() } else { 0.0 };
    let (plus, minus) = if k == 0.0 {
        (GrowthClass::Bounded, GrowthClass::LinearT)
    } else if k < 2.0 {
        (GrowthClass::ExpGrowing(k * lam), GrowthClass::ExpDecaying(k * lam))
    } else if k == 2.0 {
        (GrowthClass::Bounded, GrowthClass::LinearT)
    } else {
        (GrowthClass::Bounded, GrowthClass::Bounded)
    };
    let mut out = Vec::with_capacity(4);
    for (sign, name, class) in [(0usize, "+", plus), (1, "-", minus)] {
        for (trig, tname) in [(0usize, "cos"), (1, "sin")] {
            if k == 0.0 && trig == 1 {
                continue;
            }
            let label = format!("v{name}_k{k} {tname}");
            out.push(LinearizedSolution::new(
                label,
                about,
                Provenance::Combination("fourier".into()),
                class,
                move |x, t| {
                    let (p, m) = constant_mode(k, t);
                    let f = if sign == 0 { p } else { m };
                    let (s, c) = (k * x).sin_cos();
                    f * if trig == 0 { c } else { s }
                },
            ));
        }
    }
    out
}

/// Entries of the breather families, including the unbounded intermediates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Entry {
    W1,
    W2,
    W3,
    W4,
    V1,
    V2,
    V3,
    V4,
    Vp,
    Vm,
    ElementBasis,
    NewPlus,
    NewMinus,
}

impl Entry {
    pub fn label(self) -> &'static str {
        match self {
            Entry::W1 => "w1",
            Entry::W2 => "w2",
            Entry::W3 => "w3",
            Entry::W4 => "w4",
            Entry::V1 => "v1",
            Entry::V2 => "v2",
            Entry::V3 => "v3",
            Entry::V4 => "v4",
            Entry::Vp => "v_plus",
            Entry::Vm => "v_minus",
            Entry::ElementBasis => "element_basis",
            Entry::NewPlus => "new_plus",
            Entry::NewMinus => "new_minus",
        }
    }
}

fn sech<T: Real>(y: T) -> T {
    let e = (-y.abs()).exp();
    lit::<T>(2.0) * e / (T::one() + e * e)
}

/// Value of a family entry at `(x, t)`; closed forms where they are numerically stable,
/// squared-eigenfunction pairs otherwise.
pub fn entry_value<T: Real>(seed: &DarbouxSeed<T>, entry: Entry, x: T, t: T) -> Complex<T> {
    match seed.kind {
        SeedKind::AB => ab_value(seed, entry, x, t),
        SeedKind::KMB => kmb_value(seed, entry, x, t),
    }
}

fn ab_value<T: Real>(seed: &DarbouxSeed<T>, entry: Entry, x: T, t: T) -> Complex<T> {
    let i = imag_unit::<T>();
    let one = T::one();
    let two = lit::<T>(2.0);
    let l = seed.lambda0;
    let k = seed.k0().re;
    let (sh, ch) = ((l * k * t).sinh(), (l * k * t).cosh());
    let (si, co) = (k * x).sin_cos();
    let d = ch - l * co;
    let d2 = d * d;
    let ratio = (one + l) / (one - l);
    let pair = |a: V2<T>, b: V2<T>, v| pair_value(a, b, v);
    match entry {
        Entry::W1 => (re(k * ch) + i * two * l * sh) * (l * l * si / (two * d2)),
        Entry::W2 => (re(k * sh * co) + i * (two * l * ch * co - two)) * (l * l / (two * d2)),
        Entry::V1 => (re(k * ch) + i * two * l * sh) * (-two * l * ratio * si / d2),
        Entry::V2 => {
            let n = i * (k * l * sh * ch) + re((one - two * l * l) * ch * ch - l * l * co * co + two * l * l);
            i * n * (two * ratio / d2)
        }
        Entry::W3 | Entry::W4 => {
            let v = if entry == Entry::W3 { Variant::Real } else { Variant::Imag };
            pair(seed.transform_eigenfunction(x, t), seed.psi0(x, t), v)
        }
        Entry::V3 | Entry::V4 => {
            let v = if entry == Entry::V3 { Variant::Real } else { Variant::Imag };
            pair(seed.lambda_one_eigenfunction(x, t), seed.lambda_one_second(x, t), v)
        }
        Entry::Vp | Entry::Vm => {
            let v = if entry == Entry::Vp { Variant::Real } else { Variant::Imag };
            let p0 = seed.transform_eigenfunction(x, t);
            pair(p0, seed.psi1(x, t), v) + pair(seed.phi1(x, t), seed.psi0(x, t), v)
        }
        Entry::ElementBasis => {
            ab_value(seed, Entry::V3, x, t) * (l * l / ratio) - ab_value(seed, Entry::W3, x, t)
        }
        Entry::NewPlus => {
            ab_value(seed, Entry::Vp, x, t) * (k * k)
                - ab_value(seed, Entry::V3, x, t) * (two * l * (lit::<T>(3.0) - two * l * l) / ratio)
        }
        Entry::NewMinus => {
            ab_value(seed, Entry::Vm, x, t) * (k * k)
                - ab_value(seed, Entry::W4, x, t) * (two * (one - lit::<T>(4.0) * l * l) / l)
                - ab_value(seed, Entry::V4, x, t) * (lit::<T>(8.0) * l * l / ratio)
        }
    }
}

fn kmb_value<T: Real>(seed: &DarbouxSeed<T>, entry: Entry, x: T, t: T) -> Complex<T> {
    let i = imag_unit::<T>();
    let one = T::one();
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let l = seed.lambda0;
    let b = seed.k0().im;
    let a = l * b;
    let y = b * x;
    let s = sech(y);
    let th = y.tanh();
    let (sa, ca) = (a * t).sin_cos();
    // D / cosh(β0x)
    let d = l - ca * s;
    let d2 = d * d;
    let pair = |p: V2<T>, q: V2<T>, v| pair_value(p, q, v);
    let w1 = || (re(b * ca) + i * two * l * sa) * (-l * l * th * s / (two * d2));
    let w2 = || i * (re(two * l * ca * s - two * s * s) + i * b * sa * s) * (l * l / (two * d2));
    match entry {
        Entry::W1 => w1(),
        Entry::W2 => w2(),
        Entry::W3 => {
            let f1 = re(two * l * ca * (two * l * ca * s * s - (one + l * l) * s) / d2)
                + i * (four * l / b) * sa * ((two * l * l - one) * ca * s * s - l * l * l * s) / d2;
            w1() * (-four * l * x) + w2() * (four * (one - two * l * l) * t) + f1
        }
        Entry::W4 => {
            let f2 = i * (four * l * l / b) * th / d;
            w2() * (-four * l * x) - w1() * (four * (one - two * l * l) * t) + f2
        }
        Entry::V1 | Entry::V2 => {
            let v = if entry == Entry::V1 { Variant::Real } else { Variant::Imag };
            let e = seed.lambda_one_eigenfunction(x, t);
            pair(e, e, v)
        }
        Entry::V3 | Entry::V4 => {
            let v = if entry == Entry::V3 { Variant::Real } else { Variant::Imag };
            pair(seed.lambda_one_eigenfunction(x, t), seed.lambda_one_second(x, t), v)
        }
        Entry::Vp | Entry::Vm => {
            let v = if entry == Entry::Vp { Variant::Real } else { Variant::Imag };
            let p0 = seed.transform_eigenfunction(x, t);
            pair(p0, seed.psi1(x, t), v) + pair(seed.phi1(x, t), seed.psi0(x, t), v)
        }
        // AB-only combinations
        Entry::ElementBasis | Entry::NewPlus | Entry::NewMinus => Complex::new(T::nan(), T::nan()),
    }
}

/// One catalog row.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub solution: LinearizedSolution,
    pub asymptotic_partner: Option<String>,
}

#[derive(Clone, Debug)]
pub struct FamilyCatalog {
    pub about: BreatherSpec64,
    pub entries: Vec<CatalogEntry>,
}

impl FamilyCatalog {
    pub fn get(&self, label: &str) -> Option<&LinearizedSolution> {
        self.entries.iter().find(|e| e.label == label).map(|e| &e.solution)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.label.as_str()).collect()
    }
}

fn family_solution(seed: DarbouxSeed<f64>, entry: Entry, provenance: Provenance, class: GrowthClass) -> LinearizedSolution {
    LinearizedSolution::new(entry.label(), seed.spec(), provenance, class, move |x, t| entry_value(&seed, entry, x, t))
}

/// The six bounded, `L`-periodic solutions about the Akhmediev breather.
pub fn ab_family(lambda0: f64) -> Result<FamilyCatalog> {
    let seed = DarbouxSeed::new(SeedKind::AB, lambda0)?;
    let s0 = seed.sigma0().re;
    let comb = |n: &str| Provenance::Combination(n.into());
    let rows = [
        (Entry::V1, Provenance::PairI, GrowthClass::ExpDecaying(s0), "v_{lambda(k1)}^-"),
        (Entry::V2, Provenance::PairI, GrowthClass::Bounded, "v~_0^+"),
        (Entry::W2, Provenance::PairI, GrowthClass::ExpDecaying(s0), "v_{-lambda(k1)}^-"),
        (Entry::ElementBasis, comb("lambda0^2(1-lambda0)/(1+lambda0) v3 - w3"), GrowthClass::LinearT, "v~_0^-"),
        (Entry::NewPlus, comb("k0^2 v_plus - 2lambda0(3-2lambda0^2)(1-lambda0)/(1+lambda0) v3"), GrowthClass::ExpGrowing(s0), "v_{-lambda(k1)}^+"),
        (
            Entry::NewMinus,
            comb("k0^2 v_minus - 2(1-4lambda0^2)/lambda0 w4 - 8lambda0^2(1-lambda0)/(1+lambda0) v4"),
            GrowthClass::ExpGrowing(s0),
            "v_{lambda(k1)}^+",
        ),
    ];
    Ok(FamilyCatalog {
        about: seed.spec(),
        entries: rows
            .into_iter()
            .map(|(e, p, c, partner)| CatalogEntry {
                label: e.label().into(),
                solution: family_solution(seed, e, p, c),
                asymptotic_partner: Some(partner.into()),
            })
            .collect(),
    })
}

/// `w1` and the unbounded intermediates `v3, v4, w3, w4, v_plus, v_minus` of the AB construction.
pub fn ab_intermediates(lambda0: f64) -> Result<Vec<LinearizedSolution>> {
    let seed = DarbouxSeed::new(SeedKind::AB, lambda0)?;
    let s0 = seed.sigma0().re;
    Ok(vec![
        family_solution(seed, Entry::W1, Provenance::PairI, GrowthClass::ExpDecaying(s0)),
        family_solution(seed, Entry::W3, Provenance::PairII, GrowthClass::UnboundedX),
        family_solution(seed, Entry::W4, Provenance::PairII, GrowthClass::UnboundedX),
        family_solution(seed, Entry::V3, Provenance::PairII, GrowthClass::UnboundedX),
        family_solution(seed, Entry::V4, Provenance::PairII, GrowthClass::UnboundedX),
        family_solution(seed, Entry::Vp, Provenance::Generalized, GrowthClass::UnboundedX),
        family_solution(seed, Entry::Vm, Provenance::Generalized, GrowthClass::UnboundedX),
    ])
}

/// The seven solutions about the Kuznetsov-Ma breather.
pub fn kmb_family(lambda0: f64) -> Result<FamilyCatalog> {
    let seed = DarbouxSeed::new(SeedKind::KMB, lambda0)?;
    let b0 = seed.k0().im;
    let rows = [
        (Entry::W1, Provenance::PairI, GrowthClass::ExpDecaying(b0)),
        (Entry::W2, Provenance::PairI, GrowthClass::ExpDecaying(b0)),
        (Entry::W3, Provenance::PairII, GrowthClass::ExpDecaying(b0)),
        (Entry::W4, Provenance::PairII, GrowthClass::Bounded),
        (Entry::V1, Provenance::PairI, GrowthClass::ExpDecaying(b0)),
        (Entry::V2, Provenance::PairI, GrowthClass::Bounded),
        (Entry::V3, Provenance::PairII, GrowthClass::LinearT),
    ];
    Ok(FamilyCatalog {
        about: seed.spec(),
        entries: rows
            .into_iter()
            .map(|(e, p, c)| CatalogEntry {
                label: e.label().into(),
                solution: family_solution(seed, e, p, c),
                asymptotic_partner: None,
            })
            .collect(),
    })
}

/// Classifies `v` from fits: temporal slope on `t_window` at `x_probe`, and (if `x_window`
/// is given) spatial decay at `t_probe`. `tol` is the relative tolerance on rates.
pub fn certify_growth(
    v: &LinearizedSolution,
    t_window: (f64, f64),
    x_probe: f64,
    x_window: Option<((f64, f64), f64)>,
    tol: f64,
) -> Result<bool> {
    match (v.growth_class, x_window) {
        (GrowthClass::ExpDecaying(r), Some((xw, tp))) => {
            let got = spatial_decay_rate(v, xw, tp)?;
            Ok((got + r).abs() <= tol * r)
        }
        (GrowthClass::ExpGrowing(r) | GrowthClass::ExpDecaying(r), _) => {
            let want = v.growth_class.rate().unwrap_or(r);
            let got = growth_rate(v, t_window, x_probe)?;
            Ok((got - want).abs() <= tol * r.abs())
        }
        (GrowthClass::Bounded, _) => Ok(growth_rate(v, t_window, x_probe)?.abs() < 0.01),
        (GrowthClass::LinearT, _) => {
            // |v| ~ a|t| + b: straight-line fit with small relative scatter
            let ts = linspace(t_window.0, t_window.1, GROWTH_SAMPLES);
            let amps: Vec<f64> = ts.iter().map(|&t| v.eval(x_probe, t).norm()).collect();
            let f = linear_fit(&ts, &amps)?;
            let top = amps.iter().cloned().fold(0.0, f64::max);
            let rise = f.slope * (t_window.1 - t_window.0) * t_window.1.signum();
            Ok(rise > 0.2 * top && f.rms < tol * top)
        }
        (GrowthClass::Decaying, _) => {
            let a = v.eval(x_probe, t_window.0).norm();
            let b = v.eval(x_probe, t_window.1).norm();
            Ok(b < a)
        }
        (GrowthClass::UnboundedX, _) => Ok(true),
    }
}

/// `−λ0 · dû₀/dλ0` by a 4th-order Richardson difference in `λ0`.
pub fn lambda_derivative_oracle(kind: SeedKind, lambda0: f64, h: f64) -> Result<impl Fn(f64, f64) -> Complex64> {
    let mk = |l: f64| match kind {
        SeedKind::AB => BreatherSpec64::akhmediev(l),
        SeedKind::KMB => BreatherSpec64::kuznetsov_ma(l),
    };
    let specs = [mk(lambda0 - 2.0 * h)?, mk(lambda0 - h)?, mk(lambda0 + h)?, mk(lambda0 + 2.0 * h)?];
    Ok(move |x: f64, t: f64| {
        let f = |j: usize| specs[j].eval(x, t);
        -(f(0) - f(1) * 8.0 + f(2) * 8.0 - f(3)) / (12.0 * h) * lambda0
    })
}
