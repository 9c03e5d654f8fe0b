//! Haar-random unitary matrices and the matrix integrals the variances
//! converge to. Everything here depends only on eigenangles.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Eigenangles of a unitary matrix, each in `[0, 2 pi)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitarySample {
    pub angles: Vec<f64>,
}

impl UnitarySample {
    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    pub fn trace(&self) -> Complex64 {
        trace(&self.angles)
    }

    pub fn sym_trace(&self, k: usize) -> Complex64 {
        sym_trace(&self.angles, k)
    }

    pub fn secular(&self) -> Vec<Complex64> {
        secular_coeffs(&self.angles)
    }
}

pub fn normalize_angle(x: f64) -> f64 {
    let t = x.rem_euclid(std::f64::consts::TAU);
    if t >= std::f64::consts::TAU {
        0.0
    } else {
        t
    }
}

/// Haar sample from U(N): QR of a complex Ginibre matrix with the phases of `R` divided out.
pub fn haar_sample(n: usize, rng: &mut ChaCha8Rng) -> Result<UnitarySample> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size must be at least 1".into()));
    }
    let z = DMatrix::<Complex64>::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let (q, r) = qr.unpack();
    let mut u = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    let eig = u
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("Schur form of a unitary matrix is not triangular".into()))?;
    let angles = eig.iter().map(|z| normalize_angle(z.arg())).collect();
    Ok(UnitarySample { angles })
}

pub fn trace(angles: &[f64]) -> Complex64 {
    angles.iter().map(|&a| Complex64::from_polar(1.0, a)).sum()
}

/// `p_k = tr U^k` for `k = 1..=kmax`, index 0 unused.
pub fn power_sums(angles: &[f64], kmax: usize) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(0.0, 0.0); kmax + 1];
    for &a in angles {
        let z = Complex64::from_polar(1.0, a);
        let mut w = Complex64::new(1.0, 0.0);
        for pk in p.iter_mut().skip(1) {
            w *= z;
            *pk += w;
        }
    }
    p
}

/// `tr Sym^k U`, the complete homogeneous symmetric polynomial of the eigenvalues.
pub fn sym_trace(angles: &[f64], k: usize) -> Complex64 {
    sym_traces(angles, k)[k]
}

/// `tr Sym^j U` for `j = 0..=kmax`, via `j h_j = sum_{i=1}^j p_i h_{j-i}`.
pub fn sym_traces(angles: &[f64], kmax: usize) -> Vec<Complex64> {
    let p = power_sums(angles, kmax);
    let mut h = vec![Complex64::new(0.0, 0.0); kmax + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for j in 1..=kmax {
        let s: Complex64 = (1..=j).map(|i| p[i] * h[j - i]).sum();
        h[j] = s / j as f64;
    }
    h
}

/// Coefficients of `det(I - xU) = sum_j lambda_j x^j`, so `lambda_j = (-1)^j e_j`.
pub fn secular_coeffs(angles: &[f64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &a in angles {
        let z = Complex64::from_polar(1.0, a);
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (j, &cj) in c.iter().enumerate() {
            next[j] += cj;
            next[j + 1] -= cj * z;
        }
        c = next;
    }
    c
}

/// Statistics whose Haar averages the variances converge to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Statistic {
    /// `|tr Sym^k U|^2`.
    SymTraceSq { k: usize },
    /// `|tr U|^4`.
    TraceFourth,
    /// `|tr U|^2 |tr Sym^m U'|^2` with `U, U'` independent.
    TraceSymProduct { m: usize },
}

impl Statistic {
    pub fn name(&self) -> String {
        match self {
            Statistic::SymTraceSq { k } => format!("|tr Sym^{k} U|^2"),
            Statistic::TraceFourth => "|tr U|^4".into(),
            Statistic::TraceSymProduct { m } => format!("|tr U|^2 |tr Sym^{m} U'|^2"),
        }
    }

    /// Exact Haar average over U(N).
    pub fn haar_value(&self, n: usize) -> f64 {
        match self {
            Statistic::SymTraceSq { .. } => 1.0,
            Statistic::TraceFourth => {
                if n >= 2 {
                    2.0
                } else {
                    1.0
                }
            }
            Statistic::TraceSymProduct { .. } => 1.0,
        }
    }

    fn needs_pair(&self) -> bool {
        matches!(self, Statistic::TraceSymProduct { .. })
    }

    /// Value on one spectrum, or on an independent pair for product statistics.
    pub fn evaluate(&self, u: &[f64], u2: Option<&[f64]>) -> Result<f64> {
        Ok(match self {
            Statistic::SymTraceSq { k } => sym_trace(u, *k).norm_sqr(),
            Statistic::TraceFourth => trace(u).norm_sqr().powi(2),
            Statistic::TraceSymProduct { m } => {
                let v = u2.ok_or_else(|| Error::InvalidParameter("product statistic needs a second spectrum".into()))?;
                trace(u).norm_sqr() * sym_trace(v, *m).norm_sqr()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Monte Carlo estimate of a Haar average over U(N). Worker `w` draws from
/// stream `w` of a ChaCha8 generator keyed by `seed`, so the result depends
/// only on `(seed, workers)`.
pub fn mc_integral(stat: Statistic, n: usize, samples: u64, seed: u64, workers: usize) -> Result<McEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let workers = workers.max(1) as u64;
    let parts: Vec<Result<(f64, f64, u64)>> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(w);
            let count = samples / workers + u64::from(w < samples % workers);
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let u = haar_sample(n, &mut rng)?;
                let v = if stat.needs_pair() { Some(haar_sample(n, &mut rng)?) } else { None };
                let x = stat.evaluate(&u.angles, v.as_ref().map(|s| s.angles.as_slice()))?;
                s1 += x;
                s2 += x * x;
            }
            Ok((s1, s2, count))
        })
        .collect();
    let (mut s1, mut s2, mut count) = (0.0, 0.0, 0u64);
    for p in parts {
        let (a, b, c) = p?;
        s1 += a;
        s2 += b;
        count += c;
    }
    let mean = s1 / count as f64;
    let var = ((s2 - count as f64 * mean * mean) / (count - 1) as f64).max(0.0);
    Ok(McEstimate { mean, stderr: (var / count as f64).sqrt(), samples: count })
}

pub const MIN_CLASSES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquidistributionReport {
    pub family: String,
    pub q: u32,
    pub modulus: String,
    pub statistic: String,
    pub empirical: f64,
    pub haar_target: f64,
    pub deviation: f64,
    pub n_classes: usize,
}

/// Compares the empirical average of a statistic over a family of Frobenius
/// classes (paired with a second class for product statistics) to its Haar value.
pub fn equidistribution(
    family: &str,
    q: u32,
    modulus: &str,
    stat: Statistic,
    classes: &[(Vec<f64>, Option<Vec<f64>>)],
) -> Result<EquidistributionReport> {
    if classes.len() < MIN_CLASSES {
        return Err(Error::InvalidParameter(format!(
            "family has {} classes, at least {MIN_CLASSES} are needed",
            classes.len()
        )));
    }
    let n = classes[0].0.len();
    let mut s = 0.0;
    for (a, b) in classes {
        s += stat.evaluate(a, b.as_deref())?;
    }
    let empirical = s / classes.len() as f64;
    let haar_target = stat.haar_value(n);
    Ok(EquidistributionReport {
        family: family.into(),
        q,
        modulus: modulus.into(),
        statistic: stat.name(),
        empirical,
        haar_target,
        deviation: (empirical - haar_target).abs(),
        n_classes: classes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_matrix_traces() {
        let angles = vec![0.0; 3];
        // tr Sym^k I_3 = C(k + 2, 2)
        assert!((sym_trace(&angles, 2) - Complex64::new(6.0, 0.0)).norm() < 1e-12);
        let lam = secular_coeffs(&angles);
        // det(I - x I_3) = (1 - x)^3
        let expect = [1.0, -3.0, 3.0, -1.0];
        for (l, e) in lam.iter().zip(expect) {
            assert!((l - Complex64::new(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn haar_sample_is_unitary_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = haar_sample(4, &mut rng).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.angles.iter().all(|&a| (0.0..std::f64::consts::TAU).contains(&a)));
        // |lambda_N| = |det U| = 1 and |lambda_{N-1}| = |tr U|
        let lam = s.secular();
        assert!((lam[4].norm() - 1.0).abs() < 1e-10);
        assert!((lam[3].norm() - s.trace().norm()).abs() < 1e-10);
    }

    #[test]
    fn mc_is_reproducible() {
        let a = mc_integral(Statistic::SymTraceSq { k: 2 }, 3, 200, 11, 2).unwrap();
        let b = mc_integral(Statistic::SymTraceSq { k: 2 }, 3, 200, 11, 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_families_are_rejected() {
        let classes = vec![(vec![0.0, 1.0], None); 5];
        assert!(equidistribution("odd", 5, "t^3", Statistic::SymTraceSq { k: 1 }, &classes).is_err());
    }
}
