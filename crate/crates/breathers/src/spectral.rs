//! Numerical ZS spectrum of `𝓛 = [[∂x, −u], [−ū, −∂x]]` for sampled potentials.
//!
//! Fourier bases differentiate exactly; the finite-difference basis truncates the line to
//! `[−X, X]` with zero closure. Nothing here uses Darboux structure.

use std::f64::consts::PI;

use ndarray::Array2;
use ndarray_linalg::{EigVals, SVD};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Basis {
    /// `N` modes `e^{2πijx/L}`, L-periodic.
    FourierInteger { n: usize, period: f64 },
    /// `N` modes `e^{2πi(j+1/2)x/L}`, L-antiperiodic.
    FourierHalfInteger { n: usize, period: f64 },
    /// `N` interior nodes on `[−X, X]`, 12th-order central differences, zero outside.
    FiniteDifference { n: usize, half_width: f64 },
}

impl Basis {
    pub fn n(&self) -> usize {
        match *self {
            Basis::FourierInteger { n, .. } | Basis::FourierHalfInteger { n, .. } | Basis::FiniteDifference { n, .. } => n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Basis::FourierInteger { .. } => "fourier-periodic",
            Basis::FourierHalfInteger { .. } => "fourier-antiperiodic",
            Basis::FiniteDifference { .. } => "line",
        }
    }
}

/// Relative size of the retained tail of Fourier coefficients accepted by [`discretize`].
pub const RESOLUTION_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct DiscretizedOperator {
    pub basis: Basis,
    pub t: f64,
    pub matrix: Array2<Complex64>,
}

impl DiscretizedOperator {
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let ev = self.matrix.eigvals().map_err(|e| Error::Eigen(e.to_string()))?;
        Ok(ev.to_vec())
    }
}

/// Fourier coefficients `c_n`, `n = −M/2..M/2−1`, of `x ↦ u(x, t)` on one period from `m` samples.
fn fourier_coefficients(u: &dyn Fn(f64, f64) -> Complex64, t: f64, period: f64, m: usize) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = (0..m).map(|s| u(period * s as f64 / m as f64, t)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

pub fn discretize(u: &dyn Fn(f64, f64) -> Complex64, t: f64, basis: Basis) -> Result<DiscretizedOperator> {
    let matrix = match basis {
        Basis::FourierInteger { n, period } => fourier_matrix(u, t, n, period, 0.0)?,
        Basis::FourierHalfInteger { n, period } => fourier_matrix(u, t, n, period, 0.5)?,
        Basis::FiniteDifference { n, half_width } => fd_matrix(u, t, n, half_width)?,
    };
    Ok(DiscretizedOperator { basis, t, matrix })
}

fn fourier_matrix(u: &dyn Fn(f64, f64) -> Complex64, t: f64, n: usize, period: f64, shift: f64) -> Result<Array2<Complex64>> {
    if n < 4 || n % 2 != 0 || !(period > 0.0) {
        return Err(Error::Grid(format!("Fourier basis needs even N >= 4 and L > 0, got N={n}, L={period}")));
    }
    let m = 2 * n;
    let c = fourier_coefficients(u, t, period, m);
    let coef = |k: i64| c[k.rem_euclid(m as i64) as usize];
    let top = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tail = (n as i64 / 2..=n as i64)
        .flat_map(|k| [coef(k).norm(), coef(-k).norm()])
        .fold(0.0, f64::max);
    if tail > RESOLUTION_TOL * top.max(1e-300) {
        // geometric decay c_k ~ ρ^k: estimate the k where it drops below tolerance
        let mid = (n as i64 / 4).max(1);
        let a = coef(mid).norm().max(coef(-mid).norm()).max(1e-300);
        let rho = (tail / a).powf(1.0 / (n as f64 / 4.0)).min(0.999);
        let need = (RESOLUTION_TOL * top / a).ln() / rho.ln() + mid as f64;
        let suggested = ((2.0 * need).ceil() as usize).next_power_of_two().max(2 * n);
        return Err(Error::UnderResolved { reason: format!("Fourier tail {tail:.1e} of {top:.1e}"), suggested });
    }
    let half = n as i64 / 2;
    let xi = |j: usize| 2.0 * PI / period * (j as i64 - half) as f64 + 2.0 * PI / period * shift;
    let mut a = Array2::<Complex64>::zeros((2 * n, 2 * n));
    for j in 0..n {
        a[[j, j]] = Complex64::new(0.0, xi(j));
        a[[n + j, n + j]] = Complex64::new(0.0, -xi(j));
        for l in 0..n {
            let d = j as i64 - l as i64;
            a[[j, n + l]] = -coef(d);
            a[[n + j, l]] = -coef(-d).conj();
        }
    }
    Ok(a)
}

/// Half-width of the central difference stencil (order `2·FD_REACH`).
pub const FD_REACH: usize = 6;

/// Central first-derivative weights `c_k = (−1)^{k+1}(p!)²/(k(p−k)!(p+k)!)`, `k = 1..=p`.
fn central_weights(p: usize) -> Vec<f64> {
    let fact = |n: usize| (1..=n).map(|i| i as f64).product::<f64>();
    (1..=p)
        .map(|k| {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * fact(p).powi(2) / (k as f64 * fact(p - k) * fact(p + k))
        })
        .collect()
}

fn fd_matrix(u: &dyn Fn(f64, f64) -> Complex64, t: f64, n: usize, x_half: f64) -> Result<Array2<Complex64>> {
    if n < 4 * FD_REACH || !(x_half > 0.0) {
        return Err(Error::Grid(format!("line basis needs N >= {} and X > 0, got N={n}, X={x_half}", 4 * FD_REACH)));
    }
    let h = 2.0 * x_half / (n + 1) as f64;
    let w = central_weights(FD_REACH);
    let mut a = Array2::<Complex64>::zeros((2 * n, 2 * n));
    for j in 0..n {
        for (o, c) in w.iter().enumerate() {
            let off = o + 1;
            for (k, s) in [(j + off, 1.0), (j.wrapping_sub(off), -1.0)] {
                if k < n {
                    a[[j, k]] += Complex64::new(s * c / h, 0.0);
                    a[[n + j, n + k]] -= Complex64::new(s * c / h, 0.0);
                }
            }
        }
        let uj = u(-x_half + (j + 1) as f64 * h, t);
        a[[j, n + j]] = -uj;
        a[[n + j, j]] = -uj.conj();
    }
    Ok(a)
}

/// Eigenvalues closer than this are reported as one cluster (defective pairs split by ~√ε).
pub const CLUSTER_TOL: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub center: Complex64,
    pub count: usize,
    /// Largest distance of a member from the center.
    pub spread: f64,
}

pub fn clusters(eigs: &[Complex64], tol: f64) -> Vec<Cluster> {
    let mut used = vec![false; eigs.len()];
    let mut out = Vec::new();
    for i in 0..eigs.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![eigs[i]];
        used[i] = true;
        // grow transitively so chains of nearby points end up together
        let mut k = 0;
        while k < members.len() {
            for j in 0..eigs.len() {
                if !used[j] && (eigs[j] - members[k]).norm() < tol {
                    used[j] = true;
                    members.push(eigs[j]);
                }
            }
            k += 1;
        }
        let center = members.iter().sum::<Complex64>() / members.len() as f64;
        let spread = members.iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
        out.push(Cluster { center, count: members.len(), spread });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetMatch {
    pub target: Complex64,
    pub nearest: Complex64,
    pub distance: f64,
    /// Eigenvalues in the matched cluster.
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum Multiplicity {
    Determined { geometric: usize, algebraic: usize },
    Indeterminate { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityRecord {
    pub lambda: Complex64,
    pub result: Multiplicity,
    /// Near-kernel dimensions of `(𝓛−λ)^k`, `k = 1, 2, 3`.
    pub kernel_dims: Vec<Option<usize>>,
    /// Smallest few singular values per power.
    pub smallest: Vec<Vec<f64>>,
}

impl MultiplicityRecord {
    pub fn pair(&self) -> Option<(usize, usize)> {
        match self.result {
            Multiplicity::Determined { geometric, algebraic } => Some((geometric, algebraic)),
            Multiplicity::Indeterminate { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub basis: Basis,
    #[serde(rename = "N")]
    pub n: usize,
    pub t: f64,
    pub eigenvalues: Vec<Complex64>,
    pub clusters: Vec<Cluster>,
    pub matches: Vec<TargetMatch>,
    pub multiplicities: Vec<MultiplicityRecord>,
    /// Eigenvalues classified as continuous-spectrum samples by refinement drift.
    pub artifacts: Vec<Complex64>,
    pub max_match_distance: f64,
}

impl SpectrumReport {
    pub fn matched(&self, target: Complex64) -> Option<&TargetMatch> {
        self.matches.iter().find(|m| (m.target - target).norm() < 1e-14)
    }

    /// See [`symmetry_defect`].
    pub fn symmetry_defect(&self, radius: f64) -> f64 {
        symmetry_defect(&self.eigenvalues, radius)
    }
}

/// Clustered eigensolve of `op`, with each target matched to the nearest cluster center.
pub fn compute_spectrum(op: &DiscretizedOperator, targets: &[Complex64]) -> Result<SpectrumReport> {
    let eigenvalues = op.eigenvalues()?;
    if eigenvalues.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Eigen("non-finite eigenvalue".into()));
    }
    let cl = clusters(&eigenvalues, CLUSTER_TOL);
    let matches: Vec<TargetMatch> = targets
        .iter()
        .map(|&target| {
            let c = cl
                .iter()
                .min_by(|a, b| (a.center - target).norm().total_cmp(&(b.center - target).norm()))
                .expect("nonempty spectrum");
            TargetMatch { target, nearest: c.center, distance: (c.center - target).norm(), count: c.count }
        })
        .collect();
    let max_match_distance = matches.iter().map(|m| m.distance).fold(0.0, f64::max);
    Ok(SpectrumReport {
        basis: op.basis,
        n: op.basis.n(),
        t: op.t,
        eigenvalues,
        clusters: cl,
        matches,
        multiplicities: vec![],
        artifacts: vec![],
        max_match_distance,
    })
}

/// Largest distance from `−λ̄` to the computed set over clusters with `|λ| ≤ radius`
/// (the outermost modes of a truncated basis carry no symmetry).
pub fn symmetry_defect(eigs: &[Complex64], radius: f64) -> f64 {
    let cl = clusters(eigs, CLUSTER_TOL);
    cl.iter()
        .filter(|c| c.center.norm() <= radius)
        .map(|c| {
            let m = -c.center.conj();
            cl.iter().map(|d| (d.center - m).norm()).fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Largest distance from any cluster of `a` to the nearest cluster of `b`, restricted to
/// clusters with `|λ| ≤ radius` in `a`.
pub fn spectral_drift(a: &[Complex64], b: &[Complex64], radius: f64) -> f64 {
    let cb = clusters(b, CLUSTER_TOL);
    clusters(a, CLUSTER_TOL)
        .iter()
        .filter(|c| c.center.norm() <= radius)
        .map(|c| cb.iter().map(|d| (d.center - c.center).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Required ratio between the last near-kernel singular value and the next one.
pub const GAP_RATIO: f64 = 1e3;
/// Singular values below this fraction of the largest count as kernel candidates.
pub const KERNEL_FRACTION: f64 = 1e-7;

fn kernel_dim(s: &[f64]) -> Option<usize> {
    // s ascending
    let top = *s.last().unwrap_or(&0.0);
    if s.is_empty() || s[0] > KERNEL_FRACTION * top {
        return Some(0);
    }
    let probe = s.len().min(12);
    (1..probe).find(|&i| s[i - 1] <= KERNEL_FRACTION * top && s[i] >= GAP_RATIO * s[i - 1].max(f64::MIN_POSITIVE))
}

/// Geometric and algebraic multiplicity of `lambda` from the near-kernels of `(𝓛−λ)^k`.
pub fn multiplicity_probe(op: &DiscretizedOperator, lambda: Complex64) -> Result<MultiplicityRecord> {
    let n = op.size();
    let mut b = op.matrix.clone();
    for i in 0..n {
        b[[i, i]] -= lambda;
    }
    let mut power = b.clone();
    let mut dims = Vec::new();
    let mut smallest = Vec::new();
    for k in 1..=3 {
        if k > 1 {
            power = power.dot(&b);
        }
        let (_, s, _) = power.svd(false, false).map_err(|e| Error::Eigen(e.to_string()))?;
        let mut s = s.to_vec();
        s.sort_by(f64::total_cmp);
        dims.push(kernel_dim(&s));
        smallest.push(s.iter().take(8).cloned().collect());
    }
    let result = match (dims[0], dims[1], dims[2]) {
        (Some(0), ..) => Multiplicity::Indeterminate { reason: format!("lambda = {lambda} is not an eigenvalue") },
        (Some(g), Some(a2), Some(a3)) if a2 == a3 && g <= a2 => Multiplicity::Determined { geometric: g, algebraic: a2 },
        (Some(_), Some(_), Some(_)) => Multiplicity::Indeterminate { reason: "near-kernel still growing at k = 3".into() },
        _ => Multiplicity::Indeterminate { reason: format!("no singular-value gap of {GAP_RATIO:e}") },
    };
    Ok(MultiplicityRecord { lambda, result, kernel_dims: dims, smallest })
}

/// Point-spectrum candidates on the truncated line: clusters that move less than
/// `drift_tol` when the box grows from `x_half` to `x_half·growth` at fixed spacing.
/// Returns `(candidates, band_samples)` for the reference box.
pub fn classify_by_drift(
    u: &dyn Fn(f64, f64) -> Complex64,
    t: f64,
    n: usize,
    x_half: f64,
    growth: f64,
    drift_tol: f64,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let h = 2.0 * x_half / (n + 1) as f64;
    let x2 = x_half * growth;
    let n2 = (2.0 * x2 / h).round() as usize - 1;
    let a = discretize(u, t, Basis::FiniteDifference { n, half_width: x_half })?.eigenvalues()?;
    let b = discretize(u, t, Basis::FiniteDifference { n: n2, half_width: x2 })?.eigenvalues()?;
    let cb = clusters(&b, CLUSTER_TOL);
    let (mut pts, mut band) = (Vec::new(), Vec::new());
    for c in clusters(&a, CLUSTER_TOL) {
        let d = cb.iter().map(|e| (e.center - c.center).norm()).fold(f64::INFINITY, f64::min);
        if d < drift_tol {
            pts.push(c.center);
        } else {
            band.push(c.center);
        }
    }
    Ok((pts, band))
}

/// Distance from `z` to the background spectrum `iℝ ∪ [−1, 1]`.
pub fn background_distance(z: Complex64) -> f64 {
    let to_axis = z.re.abs();
    let to_segment = Complex64::new((z.re.abs() - 1.0).max(0.0), z.im).norm();
    to_axis.min(to_segment)
}

/// `√(1 − ξ²)` with the branch on `iℝ₊ ∪ [0, 1]`.
pub fn background_lambda(xi: f64) -> Complex64 {
    let d = 1.0 - xi * xi;
    if d >= 0.0 {
        Complex64::new(d.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-d).sqrt())
    }
}

/// `±√(1 − π²m²/L²)` for `m` in `ms`, both signs.
pub fn lambda_set(period: f64, ms: impl IntoIterator<Item = u32>) -> Vec<Complex64> {
    let mut out = Vec::new();
    for m in ms {
        let l = background_lambda(PI * m as f64 / period);
        out.push(l);
        if l.norm() > 0.0 {
            out.push(-l);
        }
    }
    out
}

/// Antiperiodic targets: odd `m ≤ m_max`.
pub fn antiperiodic_targets(period: f64, m_max: u32) -> Vec<Complex64> {
    lambda_set(period, (1..=m_max).filter(|m| m % 2 == 1))
}

/// Periodic targets: `m = 0` and even `m ≤ m_max`.
pub fn periodic_targets(period: f64, m_max: u32) -> Vec<Complex64> {
    lambda_set(period, (0..=m_max).filter(|m| m % 2 == 0))
}

/// Exponential rate of `|λ(X) − λ0|` against the truncation half-width `X` at fixed spacing.
pub fn truncation_decay_rate(
    u: &dyn Fn(f64, f64) -> Complex64,
    lambda0: f64,
    widths: &[f64],
    spacing: f64,
) -> Result<(f64, Vec<(f64, f64)>)> {
    let target = Complex64::new(lambda0, 0.0);
    let mut pts = Vec::new();
    for &x in widths {
        let n = (2.0 * x / spacing).round() as usize - 1;
        let ev = discretize(u, 0.0, Basis::FiniteDifference { n, half_width: x })?.eigenvalues()?;
        let d = ev.iter().map(|z| (z - target).norm()).fold(f64::INFINITY, f64::min);
        pts.push((x, d));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.max(f64::MIN_POSITIVE).ln()).collect();
    Ok((crate::fit::linear_fit(&xs, &ys)?.slope, pts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_dim_needs_a_gap() {
        assert_eq!(kernel_dim(&[1e-15, 2e-15, 1e-3, 1.0, 5.0]), Some(2));
        assert_eq!(kernel_dim(&[0.1, 1.0]), Some(0));
        assert_eq!(kernel_dim(&[1e-15, 1e-14, 1e-13, 1e-12, 1e-11, 1e-10, 1e-9, 1e-9, 1e-9, 1e-9, 1e-9, 1e-9, 1.0]), None);
    }

    #[test]
    fn clusters_merge_defective_pairs() {
        let e = [Complex64::new(0.6 + 1e-7, 0.0), Complex64::new(0.6 - 1e-7, 0.0), Complex64::new(1.0, 0.0)];
        let c = clusters(&e, CLUSTER_TOL);
        assert_eq!(c.len(), 2);
        assert!((c[0].center.re - 0.6).abs() < 1e-15 && c[0].count == 2);
    }

    #[test]
    fn central_weights_known_orders() {
        assert_eq!(central_weights(1), vec![0.5]);
        let w = central_weights(4);
        let want = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
        assert!(w.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
        // consistency: Σ 2k c_k = 1
        let s: f64 = central_weights(FD_REACH).iter().enumerate().map(|(k, c)| 2.0 * (k + 1) as f64 * c).sum();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn lambda_sets() {
        let l = 2.0 * PI / 1.6;
        let a = antiperiodic_targets(l, 1);
        assert!((a[0].re - 0.6).abs() < 1e-14 && (a[1].re + 0.6).abs() < 1e-14);
        let p = periodic_targets(l, 2);
        assert_eq!(p.len(), 4);
        assert!((p[2].im - 1.56f64.sqrt()).abs() < 1e-14);
    }
}
