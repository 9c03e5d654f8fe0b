//! Means and variances of short-interval sums `N_alpha(A; h)` and progression
//! sums `S_alpha(A)`, each computed by brute force and by character sums.

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::ArithFn;
use crate::budget::{qpow, Budget};
use crate::dirichlet::{residue_histogram, LTable, UnitGroup};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldRef};
use crate::intervals::ShortInterval;
use crate::poly::Poly;
use crate::sieve::alpha_table;

pub type Rational = Ratio<i128>;

/// An exact rational for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: i128,
    pub den: i128,
}

impl From<Rational> for ExactRational {
    fn from(r: Rational) -> Self {
        ExactRational { num: *r.numer(), den: *r.denom() }
    }
}

impl ExactRational {
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact mean and variance of a list of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactMoments {
    pub count: i128,
    pub mean: Rational,
    pub variance: Rational,
}

pub fn exact_moments(xs: impl IntoIterator<Item = i64>) -> Result<ExactMoments> {
    let (mut k, mut s1, mut s2) = (0i128, 0i128, 0i128);
    for x in xs {
        k += 1;
        s1 += x as i128;
        s2 += (x as i128) * (x as i128);
    }
    if k == 0 {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    let var = Rational::new(k * s2 - s1 * s1, k * k);
    Ok(ExactMoments { count: k, mean: Rational::new(s1, k), variance: var })
}

pub fn exact_covariance(xs: &[i64], ys: &[i64]) -> Result<Rational> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::InvalidParameter("covariance needs two equal nonempty lists".into()));
    }
    let k = xs.len() as i128;
    let sx: i128 = xs.iter().map(|&x| x as i128).sum();
    let sy: i128 = ys.iter().map(|&y| y as i128).sum();
    let sxy: i128 = xs.iter().zip(ys).map(|(&x, &y)| x as i128 * y as i128).sum();
    Ok(Rational::new(k * sxy - sx * sy, k * k))
}

/// `N_alpha(A; h)` by direct evaluation over the interval.
pub fn interval_sum(alpha: &ArithFn, interval: &ShortInterval) -> Result<i64> {
    interval.members().map(|f| alpha.eval(&f)).sum()
}

/// Sums over consecutive blocks of `q^{h+1}` entries of a table indexed by monic index,
/// i.e. `N_alpha(t^{h+1} B; h)` for every `B` in index order.
pub fn block_sums<T: Copy + Into<i64>>(values: &[T], q: u32, h: usize) -> Vec<i64> {
    let len = (q as usize).pow(h as u32 + 1);
    values.chunks(len).map(|c| c.iter().map(|&v| v.into()).sum()).collect()
}

/// `S_alpha(A)` for a residue `A` reduced mod `Q`.
pub fn progression_sum(alpha: &ArithFn, n: usize, modulus: &Poly, a: &Poly) -> Result<i64> {
    a.check_field(modulus)?;
    let d = modulus.deg();
    if d < 1 || !modulus.is_monic() {
        return Err(Error::InvalidParameter("modulus must be monic of positive degree".into()));
    }
    if !a.is_zero() && a.deg() >= d {
        return Err(Error::InvalidParameter("residue is not reduced mod Q".into()));
    }
    if n < d {
        return if a.is_monic() && a.deg() == n { alpha.eval(a) } else { Ok(0) };
    }
    let field = modulus.field();
    let mut s = 0;
    for cof in crate::poly::monic_polys(field, n - d) {
        s += alpha.eval(&(a + &(modulus * &cof)))?;
    }
    Ok(s)
}

/// `<N_alpha> = q^{h+1-n} sum_{M_n} alpha`.
pub fn mean_interval(alpha: &ArithFn, field: &FieldRef, n: usize, h: usize, budget: &Budget) -> Result<Rational> {
    check_interval_params(n, h)?;
    let total: i64 = alpha_table(field, n, alpha, budget)?.iter().sum();
    let q = field.q() as i128;
    Ok(Rational::new(total as i128 * q.pow(h as u32 + 1), q.pow(n as u32)))
}

fn check_interval_params(n: usize, h: usize) -> Result<()> {
    if n < 2 || h > n - 2 {
        return Err(Error::InvalidParameter(format!("need 0 <= h <= n - 2, got n = {n}, h = {h}")));
    }
    Ok(())
}

/// Exact variance of `N_alpha(t^{h+1} B; h)` over `B in M_{n-h-1}`.
pub fn variance_interval_bruteforce<T: Copy + Into<i64>>(values: &[T], q: u32, h: usize) -> Result<ExactMoments> {
    exact_moments(block_sums(values, q, h))
}

/// Largest `|N_alpha(B) - target|` over all intervals.
pub fn interval_max_deviation<T: Copy + Into<i64>>(values: &[T], q: u32, h: usize, target: i64) -> i64 {
    block_sums(values, q, h).into_iter().map(|s| (s - target).abs()).max().unwrap_or(0)
}

fn t_power_values(alpha: &ArithFn, field: &FieldRef, n: usize) -> Result<Vec<f64>> {
    (0..=n).map(|k| alpha.at_t_power(field, k).map(|v| v as f64)).collect()
}

/// `M(m; alpha chi)` for `m = 0..=n` and every character, by summing `alpha`
/// over each `M_m` directly.
pub fn twisted_sums_direct(group: &UnitGroup, alpha: &ArithFn, n: usize, budget: &Budget) -> Result<Vec<Vec<Complex64>>> {
    let field = group.field();
    (0..=n)
        .map(|m| {
            let vals = alpha_table(field, m, alpha, budget)?;
            let hist = residue_histogram(group.ring(), m, &vals)?;
            group.char_sums_all(&hist)
        })
        .collect()
}

/// Spectral covariance of `N_alpha` and `N_beta` over intervals of degree `n`:
/// `Phi_ev^{-2} sum_{chi != chi_0 even} X_alpha(chi) conj X_beta(chi)` with
/// `X_alpha(chi) = sum_m alpha(t^{n-m}) M(m; alpha chi)`, characters mod `t^{n-h}`.
pub fn covariance_interval_spectral(
    group: &UnitGroup,
    table: &LTable,
    alpha: &ArithFn,
    beta: &ArithFn,
    n: usize,
    budget: &Budget,
) -> Result<f64> {
    let field = group.field().clone();
    let m_deg = group.degree();
    if *group.modulus() != Poly::monomial(&field, Fe::ONE, m_deg) {
        return Err(Error::InvalidParameter("interval variances use characters mod a power of t".into()));
    }
    if m_deg > n || m_deg < 2 {
        return Err(Error::InvalidParameter(format!("need 2 <= n - h <= n, got modulus degree {m_deg} and n = {n}")));
    }
    for f in [alpha, beta] {
        f.require_class(&field, n.min(6))?;
    }
    let ta = t_power_values(alpha, &field, n)?;
    let tb = t_power_values(beta, &field, n)?;
    let direct_a = if alpha.is_builtin() { None } else { Some(twisted_sums_direct(group, alpha, n, budget)?) };
    let direct_b = if beta.is_builtin() { None } else { Some(twisted_sums_direct(group, beta, n, budget)?) };
    let series = |f: &ArithFn, direct: &Option<Vec<Vec<Complex64>>>, chi: u64| -> Result<Vec<Complex64>> {
        match direct {
            Some(d) => Ok((0..=n).map(|m| d[m][chi as usize]).collect()),
            None => group.alpha_series(table, f, chi, n),
        }
    };
    let mut acc = 0.0;
    for chi in group.even_characters().filter(|&c| c != 0) {
        let sa = series(alpha, &direct_a, chi)?;
        let sb = series(beta, &direct_b, chi)?;
        let xa: Complex64 = (0..=n).map(|m| sa[m] * ta[n - m]).sum();
        let xb: Complex64 = (0..=n).map(|m| sb[m] * tb[n - m]).sum();
        acc += (xa * xb.conj()).re;
    }
    let phi_ev = (field.q() as f64).powi(m_deg as i32 - 1);
    Ok(acc / (phi_ev * phi_ev))
}

/// Exact variance of `S_alpha(A)` over units `A` mod `Q`, from the residue histogram.
pub fn variance_progression_bruteforce(group: &UnitGroup, hist: &[i64]) -> Result<ExactMoments> {
    exact_moments(
        hist.iter()
            .enumerate()
            .filter(|(code, _)| group.dlog(*code as u64).is_some())
            .map(|(_, &x)| x),
    )
}

/// `Phi(Q)^{-2} sum_{chi != chi_0} |M(n; alpha chi)|^2`.
pub fn variance_progression_spectral(
    group: &UnitGroup,
    table: &LTable,
    alpha: &ArithFn,
    n: usize,
    hist: Option<&[i64]>,
) -> Result<f64> {
    let phi = group.order() as f64;
    let mut acc = 0.0;
    if alpha.is_builtin() {
        for chi in 1..group.order() {
            acc += group.alpha_series(table, alpha, chi, n)?[n].norm_sqr();
        }
    } else {
        alpha.require_class(group.field(), n.min(6))?;
        let hist = hist.ok_or_else(|| Error::InvalidParameter("custom functions need their residue histogram".into()))?;
        let sums = group.char_sums_all(hist)?;
        acc = sums.iter().skip(1).map(|z| z.norm_sqr()).sum();
    }
    Ok(acc / (phi * phi))
}

/// Asymptotic main terms for the variances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `Var N_mu ~ H` for `h <= n - 5`.
    MobiusInterval,
    /// `Var N_{mu^2} ~ sqrt(H)/sqrt(q)` (h even) or `sqrt(H)/q` (h odd), `h <= n - 6`, `gcd(q, 6) = 1`.
    SquarefreeInterval,
    /// `Var S_{mu^2} ~ q^{n/2} |Q|^{-1/2}` times `q^{-1/2}` or `q^{-1}` by parity of `n - deg Q`.
    SquarefreeProgression,
    /// `Var S_mu ~ q^n / Phi(Q)` for `n >= deg Q >= 2`.
    MobiusProgression,
    /// `Var S_alpha ~ (q^n / Phi(Q)) <alpha^2>_n` for `n < deg Q`.
    SmallDegreeProgression,
}

impl Theorem {
    pub fn label(&self) -> &'static str {
        match self {
            Theorem::MobiusInterval => "mobius-interval",
            Theorem::SquarefreeInterval => "squarefree-interval",
            Theorem::SquarefreeProgression => "squarefree-progression",
            Theorem::MobiusProgression => "mobius-progression",
            Theorem::SmallDegreeProgression => "small-degree-progression",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub value: f64,
    pub theorem: Theorem,
    pub in_range: bool,
}

/// Parameters a prediction depends on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PredictionParams {
    pub q: u32,
    pub n: usize,
    /// Interval parameter `h`, for interval theorems.
    pub h: Option<usize>,
    /// `(deg Q, Phi(Q), Q squarefree)`, for progression theorems.
    pub modulus: Option<(usize, u64, bool)>,
}

/// The main term of `theorem` at `params`. Parameters outside the theorem's
/// hypotheses are an error unless `allow_out_of_range` is set, in which case
/// the value is returned with `in_range = false`.
pub fn theory_prediction(theorem: Theorem, p: &PredictionParams, allow_out_of_range: bool) -> Result<Prediction> {
    let q = p.q as f64;
    let n = p.n;
    let need_h = || p.h.ok_or_else(|| Error::InvalidParameter("interval theorem needs h".into()));
    let need_q = || p.modulus.ok_or_else(|| Error::InvalidParameter("progression theorem needs a modulus".into()));
    let (value, in_range, why) = match theorem {
        Theorem::MobiusInterval => {
            let h = need_h()?;
            let ok = n >= 5 && h <= n - 5;
            (q.powi(h as i32 + 1), ok, format!("requires h <= n - 5, got n = {n}, h = {h}"))
        }
        Theorem::SquarefreeInterval => {
            let h = need_h()?;
            let ok = n >= 6 && h <= n - 6 && p.q % 2 != 0 && p.q % 3 != 0;
            let big_h = q.powi(h as i32 + 1);
            let v = if h % 2 == 0 { big_h.sqrt() / q.sqrt() } else { big_h.sqrt() / q };
            (v, ok, format!("requires h <= n - 6 and gcd(q, 6) = 1, got q = {}, n = {n}, h = {h}", p.q))
        }
        Theorem::SquarefreeProgression => {
            let (d, _, sqf) = need_q()?;
            let ok = sqf && d >= 2 && n + 1 >= d;
            let base = q.powf(n as f64 / 2.0) / q.powf(d as f64 / 2.0);
            let v = if (n + d) % 2 == 1 { base / q.sqrt() } else { base / q };
            (v, ok, format!("requires squarefree Q of degree >= 2 and n >= deg Q - 1, got n = {n}, deg Q = {d}"))
        }
        Theorem::MobiusProgression => {
            let (d, phi, _) = need_q()?;
            let ok = d >= 2 && n >= d;
            (q.powi(n as i32) / phi as f64, ok, format!("requires n >= deg Q >= 2, got n = {n}, deg Q = {d}"))
        }
        Theorem::SmallDegreeProgression => {
            let (d, phi, _) = need_q()?;
            // <mu^2>_n: 1 for n <= 1, 1 - 1/q otherwise
            let mean_sq = if n <= 1 { 1.0 } else { 1.0 - 1.0 / q };
            (q.powi(n as i32) / phi as f64 * mean_sq, n < d, format!("requires n < deg Q, got n = {n}, deg Q = {d}"))
        }
    };
    if !in_range && !allow_out_of_range {
        return Err(Error::OutOfRange(format!("{}: {why}", theorem.label())));
    }
    Ok(Prediction { value, theorem, in_range })
}

/// Report parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportParams {
    Interval { alpha: String, q: u32, n: usize, h: usize },
    Progression { alpha: String, q: u32, n: usize, modulus: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarianceReport {
    pub params: ReportParams,
    pub mean_bf: f64,
    pub var_bf: ExactRational,
    /// `None` when the spectral side was not computed.
    pub var_spec: Option<f64>,
    pub prediction: Option<Prediction>,
    pub rel_dev_bf_spec: Option<f64>,
    pub ratio_bf_theory: Option<f64>,
    pub rel_dev_bf_theory: Option<f64>,
    /// Largest `|N - <N>|` over the family, rounded to an integer distance from the mean.
    pub max_abs_dev: f64,
    pub runtime_ms: Option<u64>,
    pub seed: u64,
}

/// `|a - b| / max(1, |b|)`.
pub fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn interval_theorem(alpha: &ArithFn) -> Option<Theorem> {
    match alpha {
        ArithFn::Mu => Some(Theorem::MobiusInterval),
        ArithFn::Mu2 => Some(Theorem::SquarefreeInterval),
        _ => None,
    }
}

/// Variance of `N_alpha(.; h)` over intervals of degree `n`, both ways.
pub fn interval_report(
    field: &FieldRef,
    alpha: &ArithFn,
    n: usize,
    h: usize,
    budget: &Budget,
    allow_out_of_range: bool,
    seed: u64,
) -> Result<VarianceReport> {
    check_interval_params(n, h)?;
    let values = alpha_table(field, n, alpha, budget)?;
    let group = UnitGroup::new(&Poly::monomial(field, Fe::ONE, n - h), budget)?;
    let table = group.l_coefficients()?;
    interval_report_with(field, alpha, n, h, &values, Some((&group, &table)), budget, allow_out_of_range, seed)
}

/// As [`interval_report`], reusing a value table over `M_n` and, if given, the
/// character data mod `t^{n-h}`.
#[allow(clippy::too_many_arguments)]
pub fn interval_report_with<T: Copy + Into<i64>>(
    field: &FieldRef,
    alpha: &ArithFn,
    n: usize,
    h: usize,
    values: &[T],
    spectral: Option<(&UnitGroup, &LTable)>,
    budget: &Budget,
    allow_out_of_range: bool,
    seed: u64,
) -> Result<VarianceReport> {
    check_interval_params(n, h)?;
    let q = field.q();
    let sums = block_sums(values, q, h);
    let bf = exact_moments(sums.iter().copied())?;
    let mean = to_f64(&bf.mean);
    let max_abs_dev = sums.iter().map(|&s| (s as f64 - mean).abs()).fold(0.0, f64::max);
    let spec = match spectral {
        Some((group, table)) => Some(covariance_interval_spectral(group, table, alpha, alpha, n, budget)?),
        None => None,
    };
    let var_bf = to_f64(&bf.variance);
    let prediction = match interval_theorem(alpha) {
        Some(th) => {
            let p = PredictionParams { q, n, h: Some(h), modulus: None };
            match theory_prediction(th, &p, allow_out_of_range) {
                Ok(p) => Some(p),
                Err(Error::OutOfRange(_)) => None,
                Err(e) => return Err(e),
            }
        }
        None => None,
    };
    Ok(VarianceReport {
        params: ReportParams::Interval { alpha: alpha.name().into(), q, n, h },
        mean_bf: mean,
        var_bf: bf.variance.into(),
        var_spec: spec,
        ratio_bf_theory: prediction.as_ref().map(|p| var_bf / p.value),
        rel_dev_bf_theory: prediction.as_ref().map(|p| (var_bf - p.value).abs() / p.value),
        prediction,
        rel_dev_bf_spec: spec.map(|v| rel_dev(v, var_bf)),
        max_abs_dev,
        runtime_ms: None,
        seed,
    })
}

/// Variance of `S_alpha` over units mod `Q`, both ways.
pub fn progression_report(
    alpha: &ArithFn,
    n: usize,
    modulus: &Poly,
    budget: &Budget,
    allow_out_of_range: bool,
    seed: u64,
) -> Result<VarianceReport> {
    let field = modulus.field().clone();
    qpow(field.q(), n)?;
    let values = alpha_table(&field, n, alpha, budget)?;
    let group = UnitGroup::new(modulus, budget)?;
    let table = group.l_coefficients()?;
    progression_report_with(alpha, n, &values, &group, Some(&table), allow_out_of_range, seed)
}

/// As [`progression_report`]; the spectral side is skipped without an L-table.
pub fn progression_report_with(
    alpha: &ArithFn,
    n: usize,
    values: &[i64],
    group: &UnitGroup,
    table: Option<&LTable>,
    allow_out_of_range: bool,
    seed: u64,
) -> Result<VarianceReport> {
    let field = group.field().clone();
    let q = field.q();
    let hist = residue_histogram(group.ring(), n, values)?;
    let bf = variance_progression_bruteforce(group, &hist)?;
    let spec = match table {
        Some(t) => Some(variance_progression_spectral(group, t, alpha, n, Some(&hist))?),
        None => None,
    };
    let mean = to_f64(&bf.mean);
    let max_abs_dev = hist
        .iter()
        .enumerate()
        .filter(|(c, _)| group.dlog(*c as u64).is_some())
        .map(|(_, &s)| (s as f64 - mean).abs())
        .fold(0.0, f64::max);
    let d = group.degree();
    let sqf = group.kind() == crate::dirichlet::ModulusKind::Squarefree;
    let theorem = if n < d {
        Some(Theorem::SmallDegreeProgression)
    } else {
        match alpha {
            ArithFn::Mu => Some(Theorem::MobiusProgression),
            ArithFn::Mu2 if sqf => Some(Theorem::SquarefreeProgression),
            _ => None,
        }
    };
    let prediction = match theorem {
        Some(th) if alpha.is_builtin() && !matches!(alpha, ArithFn::One) => {
            let p = PredictionParams { q, n, h: None, modulus: Some((d, group.order(), sqf)) };
            match theory_prediction(th, &p, allow_out_of_range) {
                Ok(p) => Some(p),
                Err(Error::OutOfRange(_)) => None,
                Err(e) => return Err(e),
            }
        }
        _ => None,
    };
    let var_bf = to_f64(&bf.variance);
    Ok(VarianceReport {
        params: ReportParams::Progression { alpha: alpha.name().into(), q, n, modulus: group.modulus().to_text() },
        mean_bf: mean,
        var_bf: bf.variance.into(),
        var_spec: spec,
        ratio_bf_theory: prediction.as_ref().map(|p| var_bf / p.value),
        rel_dev_bf_theory: prediction.as_ref().map(|p| (var_bf - p.value).abs() / p.value),
        prediction,
        rel_dev_bf_spec: spec.map(|v| rel_dev(v, var_bf)),
        max_abs_dev,
        runtime_ms: None,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::intervals::all_intervals;

    #[test]
    fn exact_moments_of_constants() {
        let m = exact_moments([3, 3, 3]).unwrap();
        assert_eq!(m.variance, Rational::from_integer(0));
        assert_eq!(m.mean, Rational::from_integer(3));
    }

    #[test]
    fn block_sums_match_interval_sums() {
        let f = Field::new(3).unwrap();
        let (n, h) = (4, 1);
        let vals = alpha_table(&f, n, &ArithFn::Mu, &Budget::default()).unwrap();
        let blocks = block_sums(&vals, 3, h);
        for (i, idx) in all_intervals(&f, n, h).unwrap().enumerate() {
            assert_eq!(blocks[i], interval_sum(&ArithFn::Mu, &idx.interval()).unwrap());
        }
    }

    #[test]
    fn predictions_and_ranges() {
        let p = PredictionParams { q: 5, n: 5, h: Some(0), modulus: None };
        let v = theory_prediction(Theorem::MobiusInterval, &p, false).unwrap();
        assert_eq!(v.value, 5.0);
        let p = PredictionParams { q: 5, n: 5, h: Some(1), modulus: None };
        assert!(matches!(theory_prediction(Theorem::MobiusInterval, &p, false), Err(Error::OutOfRange(_))));
        assert!(!theory_prediction(Theorem::MobiusInterval, &p, true).unwrap().in_range);
        let p = PredictionParams { q: 5, n: 5, h: None, modulus: Some((3, 124, true)) };
        let v = theory_prediction(Theorem::SquarefreeProgression, &p, false).unwrap();
        assert!((v.value - 5f64.powf(2.5) / 5f64.powf(1.5) / 5.0).abs() < 1e-12);
    }
}
