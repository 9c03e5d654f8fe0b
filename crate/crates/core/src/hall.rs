//! Pair correlations of squarefree polynomials, the singular series, and the
//! fixed-`q` variance of squarefree counts in short intervals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{qpow, Budget};
use crate::error::{Error, Result};
use crate::factor::{factor, irreducible_count, irreducibles};
use crate::field::FieldRef;
use crate::poly::{monic_polys, polys_up_to, Poly};
use crate::sieve::{translation_permutation, MobiusTable};
use crate::stats::{ExactRational, Rational};

/// Rough cap on the numerator size, in bits, of an exactly multiplied-out product.
const EXACT_BITS_LIMIT: f64 = 500_000.0;
const MAX_ACCELERATION: usize = 16;

/// `prod_P f(|P|^{-1})` over monic irreducibles `P`, for an integer polynomial
/// `f` with `f(0) = 1` and no linear term.
///
/// `f` is split as `prod_{k<K} (1 - x^k)^{a_k} * R(x)` with `R(x) = 1 + O(x^K)`.
/// The first part is a finite product of zeta values `1 - q^{1-k}`, the second
/// is multiplied out over primes of degree `<= cutoff`, and the rest of it is
/// bounded: the true value lies within a factor `1 +- tail_bound` of `value`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerProduct {
    pub value: BigRational,
    pub cutoff: usize,
    pub acceleration: usize,
    pub tail_bound: f64,
}

impl EulerProduct {
    pub fn to_f64(&self) -> f64 {
        ratio_f64(&self.value)
    }
}

pub fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// A product of rational powers, multiplied out without intermediate reduction.
struct Accumulator {
    num: BigInt,
    den: BigInt,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator { num: BigInt::one(), den: BigInt::one() }
    }

    fn mul_pow(&mut self, n: &BigInt, d: &BigInt, e: i64) {
        let k = e.unsigned_abs() as u32;
        let (pn, pd) = (Pow::pow(n, k), Pow::pow(d, k));
        if e >= 0 {
            self.num *= pn;
            self.den *= pd;
        } else {
            self.num *= pd;
            self.den *= pn;
        }
    }

    fn finish(self) -> BigRational {
        BigRational::new(self.num, self.den)
    }
}

/// `f(1/qd)` as an unreduced fraction with denominator `qd^{deg f}`.
fn eval_at_reciprocal(f: &[i64], qd: &BigInt) -> (BigInt, BigInt) {
    // Horner from the constant term gives sum c_i qd^{deg - i}
    let mut num = BigInt::zero();
    for &c in f {
        num = num * qd + BigInt::from(c);
    }
    (num, Pow::pow(qd, (f.len() - 1) as u32))
}

/// Exponents `a_k` with `f(x) = prod_k (1 - x^k)^{a_k}` up to `k < kmax`.
fn cyclotomic_exponents(f: &[i64], kmax: usize) -> Vec<i128> {
    // p_m = m [x^m] (-log f), from f' = -f * sum p_m x^{m-1}
    let coeff = |i: usize| f.get(i).copied().unwrap_or(0) as i128;
    let mut p = vec![0i128; kmax];
    for m in 1..kmax {
        let mut s = -(m as i128) * coeff(m);
        for i in 1..m {
            s -= coeff(i) * p[m - i];
        }
        p[m] = s;
    }
    let mut a = vec![0i128; kmax];
    for k in 1..kmax {
        let mut s = 0i128;
        for d in 1..=k {
            if k % d == 0 {
                s += crate::factor::mobius_int((k / d) as u64) as i128 * p[d];
            }
        }
        a[k] = s / k as i128;
    }
    a
}

fn tail_estimate(q: f64, deg: usize, rho: f64, s: f64, cutoff: usize, k: usize) -> f64 {
    let x = q.powi(-(cutoff as i32 + 1));
    if rho * x >= 1.0 {
        return f64::INFINITY;
    }
    let k_f = k as f64;
    let per = deg as f64 * rho.powi(k as i32) / (1.0 - rho * x) + s / (1.0 - x);
    let geometric = q.powf((cutoff as f64 + 1.0) * (1.0 - k_f)) / (1.0 - q.powf(1.0 - k_f));
    per * geometric / ((cutoff as f64 + 1.0) * k_f)
}

pub fn euler_product(q: u32, f: &[i64], cutoff: usize) -> Result<EulerProduct> {
    if f.first() != Some(&1) || f.get(1).copied().unwrap_or(0) != 0 {
        return Err(Error::InvalidParameter("local factor must be 1 + O(x^2)".into()));
    }
    if cutoff == 0 {
        return Err(Error::InvalidParameter("cutoff must be positive".into()));
    }
    let qq = q as u64;
    let deg = f.len() - 1;
    let rho = 1.0 + f.iter().skip(1).map(|c| c.unsigned_abs() as f64).fold(0.0, f64::max);
    let choose = |eff: usize| -> Result<(Vec<i128>, f64, usize, f64)> {
        let mut k = 3;
        loop {
            let a = cyclotomic_exponents(f, k);
            let s: f64 = a.iter().enumerate().map(|(i, &ai)| i as f64 * ai.unsigned_abs() as f64).sum();
            let t = tail_estimate(q as f64, deg, rho, s, eff, k);
            if t < 1e-15 || k == MAX_ACCELERATION {
                let mut bits = 0.0;
                for d in 1..=eff {
                    bits += irreducible_count(qq, d)? as f64 * d as f64 * (q as f64).log2() * (deg as f64 + s);
                }
                return Ok((a, t, k, bits));
            }
            k += 1;
        }
    };
    let mut eff = cutoff;
    let (a, tail, k) = loop {
        let (a, t, k, bits) = choose(eff)?;
        if bits <= EXACT_BITS_LIMIT || eff == 1 {
            break (a, t, k);
        }
        eff -= 1;
    };
    if !tail.is_finite() {
        return Err(Error::Numerical("Euler product tail is not controlled at this cutoff".into()));
    }
    let mut acc = Accumulator::new();
    for (kk, &ak) in a.iter().enumerate().skip(2) {
        if ak != 0 {
            let qk = Pow::pow(&big(qq), kk as u32 - 1);
            acc.mul_pow(&(&qk - BigInt::one()), &qk, ak as i64);
        }
    }
    for d in 1..=eff {
        let qd = Pow::pow(&big(qq), d as u32);
        let (mut rn, mut rd) = eval_at_reciprocal(f, &qd);
        if !rn.is_positive() {
            return Err(Error::Numerical(format!("local factor vanishes at degree {d}")));
        }
        for (kk, &ak) in a.iter().enumerate().skip(2) {
            if ak != 0 {
                // (1 - qd^{-k})^{-a_k}
                let qdk = Pow::pow(&qd, kk as u32);
                let e = ak.unsigned_abs() as u32;
                let (n, m) = (Pow::pow(&qdk, e), Pow::pow(&(&qdk - BigInt::one()), e));
                if ak > 0 {
                    rn *= n;
                    rd *= m;
                } else {
                    rn *= m;
                    rd *= n;
                }
            }
        }
        let count = irreducible_count(qq, d)? as i64;
        acc.mul_pow(&rn, &rd, count);
    }
    let value = acc.finish();
    Ok(EulerProduct { value, cutoff: eff, acceleration: k, tail_bound: tail.exp_m1() })
}

/// `prod_P (1 - 2/|P|^2)`.
pub fn alpha_sf(q: u32, cutoff: usize) -> Result<EulerProduct> {
    euler_product(q, &[1, 0, -2], cutoff)
}

/// `prod_P (1 - 3/|P|^2 + 2/|P|^3)`.
pub fn beta_q(q: u32, cutoff: usize) -> Result<EulerProduct> {
    euler_product(q, &[1, 0, -3, 2], cutoff)
}

/// Plain truncation `prod_{deg P <= cutoff} f(|P|^{-1})`.
pub fn euler_truncated(q: u32, f: &[i64], cutoff: usize) -> Result<BigRational> {
    let mut acc = Accumulator::new();
    for d in 1..=cutoff {
        let qd = Pow::pow(&big(q as u64), d as u32);
        let (n, m) = eval_at_reciprocal(f, &qd);
        acc.mul_pow(&n, &m, irreducible_count(q as u64, d)? as i64);
    }
    Ok(acc.finish())
}

/// Local coefficient `s(P^a, P^j)` of the singular series.
pub fn local_s(a: u32, j: u32) -> i64 {
    match a {
        0 => 1,
        1 if j <= 1 => -2,
        1 => -1,
        _ => 0,
    }
}

/// `s(J) = prod_{P^2 | J} (|P|^2 - 1)/(|P|^2 - 2)`.
pub fn s_factor(j: &Poly) -> Result<BigRational> {
    if j.is_zero() {
        return Err(Error::InvalidParameter("J must be nonzero".into()));
    }
    let q = j.field().q() as u64;
    let mut r = BigRational::one();
    for (p, e) in factor(j)?.factors {
        if e >= 2 {
            let norm2 = Pow::pow(&big(q), 2 * p.deg() as u32);
            r *= BigRational::new(&norm2 - 1u32, &norm2 - 2u32);
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularSeries {
    pub alpha_sf: EulerProduct,
    pub s_j: BigRational,
}

impl SingularSeries {
    pub fn value(&self) -> BigRational {
        &self.alpha_sf.value * &self.s_j
    }

    pub fn to_f64(&self) -> f64 {
        self.alpha_sf.to_f64() * ratio_f64(&self.s_j)
    }
}

/// `S(J) = alpha_sf * s(J)`.
pub fn singular_series(j: &Poly, cutoff: usize) -> Result<SingularSeries> {
    let s_j = s_factor(j)?;
    Ok(SingularSeries { alpha_sf: alpha_sf(j.field().q(), cutoff)?, s_j })
}

fn primes_up_to(field: &FieldRef, cutoff: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for d in 1..=cutoff {
        out.extend(irreducibles(field, d)?);
    }
    Ok(out)
}

/// `prod_{deg P <= cutoff} (1 + s(P, P^{v_P(J)})/|P|^2)`.
pub fn singular_series_truncated(j: &Poly, cutoff: usize) -> Result<BigRational> {
    if j.is_zero() {
        return Err(Error::InvalidParameter("J must be nonzero".into()));
    }
    let q = j.field().q() as u64;
    let mut r = BigRational::one();
    for p in primes_up_to(j.field(), cutoff)? {
        let mut v = 0;
        let mut rest = j.clone();
        while p.divides(&rest)? {
            rest = rest.exact_div(&p)?;
            v += 1;
        }
        let norm2 = Pow::pow(&big(q), 2 * p.deg() as u32);
        r *= BigRational::new(&norm2 + local_s(1, v), norm2);
    }
    Ok(r)
}

/// `sum_{d1, d2} mu(d1) mu(d2) [gcd(d1,d2)^2 | J] / |lcm(d1,d2)|^2` over `d1, d2`
/// composed of primes of degree `<= cutoff`.
pub fn singular_series_double_sum(j: &Poly, cutoff: usize) -> Result<BigRational> {
    if j.is_zero() {
        return Err(Error::InvalidParameter("J must be nonzero".into()));
    }
    let field = j.field();
    let primes = primes_up_to(field, cutoff)?;
    if primes.len() > 10 {
        return Err(Error::InvalidParameter(format!("{} primes is too many for the double sum", primes.len())));
    }
    let q = field.q() as u64;
    let divisors: Vec<(Poly, i64)> = (0u32..1 << primes.len())
        .map(|mask| {
            let mut d = Poly::one(field);
            for (i, p) in primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d = &d * p;
                }
            }
            (d, if mask.count_ones() % 2 == 0 { 1 } else { -1 })
        })
        .collect();
    let mut total = BigRational::zero();
    for (d1, m1) in &divisors {
        for (d2, m2) in &divisors {
            let g = d1.gcd(d2)?;
            if !(&g * &g).divides(j)? {
                continue;
            }
            let lcm_deg = d1.deg() + d2.deg() - g.deg();
            let den = Pow::pow(&big(q), 2 * lcm_deg as u32);
            total += BigRational::new(BigInt::from(m1 * m2), den);
        }
    }
    Ok(total)
}

/// `sum_{deg J <= h, J monic} s(J)` by factoring every `J`.
pub fn sum_singular_enumerate(field: &FieldRef, h: usize) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for d in 0..=h {
        for j in monic_polys(field, d) {
            total += s_factor(&j)?;
        }
    }
    Ok(total)
}

/// The same sum from `F(u) = Z(u) prod_P (1 + u^{2 deg P}/(|P|^2 - 2))`.
pub fn sum_singular_series(field: &FieldRef, h: usize) -> Result<BigRational> {
    let q = field.q() as u64;
    let mut c: Vec<BigRational> = (0..=h).map(|j| BigRational::from_integer(Pow::pow(&big(q), j as u32))).collect();
    for d in 1..=h / 2 {
        let norm2 = Pow::pow(&big(q), 2 * d as u32);
        let w = BigRational::new(BigInt::one(), norm2 - 2u32);
        for _ in 0..irreducible_count(q, d)? {
            for m in (2 * d..=h).rev() {
                let add = &c[m - 2 * d] * &w;
                c[m] += add;
            }
        }
    }
    Ok(c.into_iter().fold(BigRational::zero(), |a, b| a + b))
}

/// `S(J; n) = sum_{f in M_n} mu^2(f) mu^2(f + J)`.
pub fn pair_correlation(table: &MobiusTable, j: &Poly) -> Result<u64> {
    let n = table.degree();
    if j.is_zero() {
        return Err(Error::InvalidParameter("J must be nonzero".into()));
    }
    if j.field() != table.field() {
        return Err(Error::FieldMismatch);
    }
    if j.deg() >= n {
        return Err(Error::InvalidParameter(format!("need deg J < n, got deg J = {} and n = {n}", j.deg())));
    }
    Ok(shifted_overlap(table, j.deg(), j))
}

fn shifted_overlap(table: &MobiusTable, h: usize, j: &Poly) -> u64 {
    let perm = translation_permutation(table.field(), h, j);
    let vals = table.values();
    vals.par_chunks(perm.len())
        .map(|block| {
            block
                .iter()
                .zip(&perm)
                .filter(|(&v, &k)| v != 0 && block[k as usize] != 0)
                .count() as u64
        })
        .sum()
}

/// Exact mean and variance of squarefree counts in intervals `I(t^{h+1} B; h)`,
/// through `<N^2> = q^{h+1-n} sum_{deg J <= h} S(J; n)` (with `J = 0` included).
pub fn hall_variance_bruteforce(table: &MobiusTable, h: usize) -> Result<(Rational, Rational)> {
    let field = table.field().clone();
    let n = table.degree();
    if n < 2 || h > n - 2 {
        return Err(Error::InvalidParameter(format!("need 0 <= h <= n - 2, got n = {n}, h = {h}")));
    }
    let count = table.values().iter().filter(|&&v| v != 0).count() as i128;
    let q = field.q() as i128;
    let mut pairs = count;
    for j in polys_up_to(&field, h) {
        if j.is_zero() {
            continue;
        }
        // S(J) = S(-J): count each pair {J, -J} once
        let neg = -&j;
        if j.residue_code() > neg.residue_code() {
            continue;
        }
        pairs += 2 * shifted_overlap(table, h, &j) as i128;
    }
    let scale = Rational::new(q.pow(h as u32 + 1), qpow(field.q(), n)? as i128);
    let mean = scale * count;
    let second = scale * pairs;
    Ok((mean, second - mean * mean))
}

/// The main term `sqrt(H) beta_q / (1 - q^{-3})` times `(1 + q^{-2})/sqrt(q)`
/// for even `h` and `(1 + q^{-1})/q` for odd `h`.
pub fn hall_prediction(q: u32, h: usize, beta: &EulerProduct) -> f64 {
    let qf = q as f64;
    let big_h = qf.powi(h as i32 + 1);
    let base = big_h.sqrt() * beta.to_f64() / (1.0 - qf.powi(-3));
    if h % 2 == 0 {
        base * (1.0 + qf.powi(-2)) / qf.sqrt()
    } else {
        base * (1.0 + 1.0 / qf) / qf
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaReport {
    pub num: String,
    pub den: String,
    pub value: f64,
    pub cutoff: usize,
    pub tail_bound: f64,
}

impl From<&EulerProduct> for BetaReport {
    fn from(e: &EulerProduct) -> Self {
        BetaReport {
            num: e.value.numer().to_string(),
            den: e.value.denom().to_string(),
            value: e.to_f64(),
            cutoff: e.cutoff,
            tail_bound: e.tail_bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HallReport {
    pub q: u32,
    pub n: usize,
    pub h: usize,
    pub var_bf: ExactRational,
    pub prediction: f64,
    pub beta_q: BetaReport,
    pub rel_dev: f64,
}

pub fn hall_report(field: &FieldRef, n: usize, h: usize, cutoff: usize, budget: &Budget) -> Result<HallReport> {
    let table = MobiusTable::build(field, n, budget)?;
    hall_report_with(&table, h, cutoff)
}

pub fn hall_report_with(table: &MobiusTable, h: usize, cutoff: usize) -> Result<HallReport> {
    let q = table.field().q();
    let (_, var) = hall_variance_bruteforce(table, h)?;
    let beta = beta_q(q, cutoff)?;
    let prediction = hall_prediction(q, h, &beta);
    let v = crate::stats::to_f64(&var);
    Ok(HallReport {
        q,
        n: table.degree(),
        h,
        var_bf: var.into(),
        prediction,
        beta_q: (&beta).into(),
        rel_dev: (v - prediction).abs() / prediction,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCorrelationRow {
    pub j: String,
    pub n: usize,
    pub count: u64,
    pub expected: f64,
    pub rel_dev: f64,
    /// `n q^{2n/3} / (S(J) q^n)`.
    pub envelope: f64,
}

/// `S(J; n)` against `S(J) q^n` for each `J` and `n`.
pub fn pair_correlation_panel(field: &FieldRef, panel: &[Poly], ns: &[usize], cutoff: usize, budget: &Budget) -> Result<Vec<PairCorrelationRow>> {
    let series: Vec<f64> = panel.iter().map(|j| singular_series(j, cutoff).map(|s| s.to_f64())).collect::<Result<_>>()?;
    let q = field.q() as f64;
    let mut rows = Vec::new();
    for &n in ns {
        let table = MobiusTable::build(field, n, budget)?;
        for (j, &s) in panel.iter().zip(&series) {
            let count = pair_correlation(&table, j)?;
            let expected = s * q.powi(n as i32);
            rows.push(PairCorrelationRow {
                j: j.to_text(),
                n,
                count,
                expected,
                rel_dev: (count as f64 - expected).abs() / expected,
                envelope: n as f64 * q.powf(2.0 * n as f64 / 3.0) / expected,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn exponents_reproduce_the_local_factor() {
        // 1 - 3x^2 + 2x^3 = (1-x)^2 (1+2x): log has no linear term
        let a = cyclotomic_exponents(&[1, 0, -3, 2], 6);
        assert_eq!(a[1], 0);
        assert_eq!(a[2], 3);
        assert_eq!(a[3], -2);
    }

    #[test]
    fn local_values() {
        assert_eq!(local_s(1, 0), -2);
        assert_eq!(local_s(1, 1), -2);
        assert_eq!(local_s(1, 2), -1);
        assert_eq!(local_s(2, 5), 0);
    }

    #[test]
    fn series_sum_small_cases() {
        let f = Field::new(3).unwrap();
        assert_eq!(sum_singular_series(&f, 0).unwrap(), BigRational::one());
        assert_eq!(sum_singular_series(&f, 1).unwrap(), BigRational::from_integer(4.into()));
    }
}
