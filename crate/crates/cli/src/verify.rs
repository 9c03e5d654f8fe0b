//! The acceptance battery. Every check is deterministic: reports carry no
//! timings, so two runs with the same seed serialize identically.

use std::collections::HashMap;

use anyhow::Result;
use ffstat::dirichlet::{residue_histogram, twisted_mobius_spectral, twisted_sqfree_spectral, FrobeniusClass, UnitGroup};
use ffstat::hall::{beta_q, hall_prediction, hall_variance_bruteforce, pair_correlation_panel, sum_singular_enumerate, sum_singular_series};
use ffstat::intervals::ShortInterval;
use ffstat::rmt::{mc_integral, Statistic};
use ffstat::sieve::alpha_table;
use ffstat::stats::{
    block_sums, interval_report_with, theory_prediction, PredictionParams, Theorem, interval_sum, progression_report_with, to_f64, variance_interval_bruteforce,
    variance_progression_bruteforce, VarianceReport,
};
use ffstat::{ArithFn, Budget, Fe, Field, FieldRef, MobiusTable, Poly};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::moduli::{parse_modulus, squarefree_panel};

/// Work limits for the battery: the default polynomial cap, and enough
/// characters for the full unit group mod `t^7` over F_7.
pub const SUITE_BUDGET: Budget = Budget { max_polys: 100_000_000, max_characters: 1_000_000 };
pub const IDENTITY_TOL: f64 = 1e-8;
pub const RH_TOL: f64 = 1e-9;
pub const SPECTRAL_TOL: f64 = 1e-6;
const MC_WORKERS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub summary: String,
    pub details: Value,
}

impl Criterion {
    fn new(id: &str, name: &str, pass: bool, summary: String, details: Value) -> Criterion {
        Criterion { id: id.into(), name: name.into(), pass, summary, details }
    }

    pub fn line(&self) -> String {
        format!("{} criterion {:<3} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.summary)
    }
}

fn field(q: u32) -> Result<FieldRef> {
    Ok(Field::new(q)?)
}

fn crel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCell {
    pub pass: bool,
    pub report: VarianceReport,
}

/// Progression moduli of degree 2 and 3 for the identity suite.
pub fn identity_moduli(f: &FieldRef) -> Result<Vec<(String, Poly)>> {
    let mut out = vec![("t^2".to_string(), parse_modulus(f, "t^2")?), ("t^3".to_string(), parse_modulus(f, "t^3")?)];
    out.extend(squarefree_panel(f, 2)?);
    out.extend(squarefree_panel(f, 3)?);
    Ok(out)
}

/// Brute-force against spectral variances for `mu` and `mu^2`, over intervals
/// with `0 <= h <= n - 2` and over progressions to the moduli of [`identity_moduli`].
pub fn identity_cells(qs: &[u32], ns: &[usize], budget: &Budget, tol: f64) -> Result<Vec<IdentityCell>> {
    let alphas = [ArithFn::Mu, ArithFn::Mu2];
    let mut cells = Vec::new();
    for &q in qs {
        let f = field(q)?;
        let nmax = ns.iter().copied().max().unwrap_or(0);
        let tables: HashMap<usize, MobiusTable> =
            ns.iter().map(|&n| Ok((n, MobiusTable::build(&f, n, budget)?))).collect::<Result<_>>()?;
        for m in 2..=nmax {
            let group = UnitGroup::new(&Poly::monomial(&f, Fe::ONE, m), budget)?;
            let lt = group.l_coefficients()?;
            for &n in ns.iter().filter(|&&n| n >= m) {
                let h = n - m;
                for alpha in &alphas {
                    let vals = tables[&n].alpha_values(alpha)?;
                    let report = interval_report_with(&f, alpha, n, h, &vals, Some((&group, &lt)), budget, true, 0)?;
                    let pass = report.rel_dev_bf_spec.is_some_and(|d| d <= tol);
                    cells.push(IdentityCell { pass, report });
                }
            }
        }
        for (_, modulus) in identity_moduli(&f)? {
            let group = UnitGroup::new(&modulus, budget)?;
            let lt = group.l_coefficients()?;
            for n in 1..=nmax {
                for alpha in &alphas {
                    let vals = alpha_table(&f, n, alpha, budget)?;
                    let report = progression_report_with(alpha, n, &vals, &group, Some(&lt), true, 0)?;
                    let pass = report.rel_dev_bf_spec.is_some_and(|d| d <= tol);
                    cells.push(IdentityCell { pass, report });
                }
            }
        }
    }
    Ok(cells)
}

pub fn criterion_identity(qs: &[u32]) -> Result<Criterion> {
    let ns: Vec<usize> = (3..=7).collect();
    let cells = identity_cells(qs, &ns, &SUITE_BUDGET, IDENTITY_TOL)?;
    let failures = cells.iter().filter(|c| !c.pass).count();
    let worst = cells.iter().filter_map(|c| c.report.rel_dev_bf_spec).fold(0.0, f64::max);
    Ok(Criterion::new(
        "1",
        "exact identity, brute force = spectral",
        failures == 0,
        format!("{} cells over q in {qs:?}, {failures} failures, worst relative gap {worst:.2e}", cells.len()),
        json!({ "cells": cells.len(), "failures": failures, "worst_rel_dev": worst, "tolerance": IDENTITY_TOL }),
    ))
}

/// Moduli for the L-function checks: `t^m` for `2 <= m <= 5` and squarefree of degree 2 and 3.
pub fn lfunction_moduli(f: &FieldRef) -> Result<Vec<(String, Poly)>> {
    let mut out = Vec::new();
    for m in 2..=5 {
        let name = format!("t^{m}");
        out.push((name.clone(), parse_modulus(f, &name)?));
    }
    out.extend(squarefree_panel(f, 2)?);
    out.extend(squarefree_panel(f, 3)?);
    Ok(out)
}

const LFUNC_QS: [u32; 4] = [3, 5, 7, 9];

pub fn criterion_rh() -> Result<Criterion> {
    let mut worst = 0.0f64;
    let mut worst_trivial = 0.0f64;
    let mut count = 0usize;
    let mut bad = Vec::new();
    for q in LFUNC_QS {
        let f = field(q)?;
        for (name, modulus) in lfunction_moduli(&f)? {
            let group = UnitGroup::new(&modulus, &SUITE_BUDGET)?;
            let lt = group.l_coefficients()?;
            for chi in 1..group.order() {
                let rh = group.l_function_from_table(&lt, chi)?.rh_report()?;
                count += 1;
                worst = worst.max(rh.max_rel_dev);
                worst_trivial = worst_trivial.max(rh.max_trivial_dev);
                if rh.max_rel_dev >= RH_TOL && bad.len() < 10 {
                    bad.push(json!({ "q": q, "modulus": name, "chi": chi, "rel_dev": rh.max_rel_dev }));
                }
            }
        }
    }
    Ok(Criterion::new(
        "2",
        "Riemann hypothesis for character L-functions",
        worst < RH_TOL,
        format!("{count} nontrivial characters, worst ||alpha| - sqrt q|/sqrt q = {worst:.2e}"),
        json!({ "characters": count, "worst_rel_dev": worst, "worst_trivial_dev": worst_trivial, "violations": bad }),
    ))
}

pub fn criterion_spectral() -> Result<Criterion> {
    let nmax = 6;
    let (mut worst_mu, mut worst_mu2) = (0.0f64, 0.0f64);
    let (mut checks_mu, mut checks_mu2) = (0usize, 0usize);
    for q in LFUNC_QS {
        let f = field(q)?;
        let tables: Vec<MobiusTable> = (0..=nmax).map(|n| MobiusTable::build(&f, n, &SUITE_BUDGET)).collect::<Result<_, _>>()?;
        for (_, modulus) in lfunction_moduli(&f)? {
            let group = UnitGroup::new(&modulus, &SUITE_BUDGET)?;
            let lt = group.l_coefficients()?;
            let mut direct_mu = Vec::new();
            let mut direct_mu2 = Vec::new();
            for t in &tables {
                let mu: Vec<i64> = t.values().iter().map(|&v| v as i64).collect();
                let mu2: Vec<i64> = mu.iter().map(|&v| (v != 0) as i64).collect();
                direct_mu.push(group.char_sums_all(&residue_histogram(group.ring(), t.degree(), &mu)?)?);
                direct_mu2.push(group.char_sums_all(&residue_histogram(group.ring(), t.degree(), &mu2)?)?);
            }
            let mut classes: HashMap<u64, FrobeniusClass> = HashMap::new();
            let primitive: Vec<u64> = group.primitive_characters().collect();
            for &chi in &primitive {
                classes.insert(chi, group.l_function_from_table(&lt, chi)?.frobenius_class()?);
            }
            for &chi in &primitive {
                let class = &classes[&chi];
                let chi2 = group.char_pow(chi, 2);
                let class2 = classes.get(&chi2);
                for n in 0..=nmax {
                    let s = twisted_mobius_spectral(q, n, class);
                    worst_mu = worst_mu.max(crel(s, direct_mu[n][chi as usize]));
                    checks_mu += 1;
                    if let Some(c2) = class2 {
                        let s2 = twisted_sqfree_spectral(q, n, class, c2);
                        worst_mu2 = worst_mu2.max(crel(s2, direct_mu2[n][chi as usize]));
                        checks_mu2 += 1;
                    }
                }
            }
        }
    }
    let pass = worst_mu <= SPECTRAL_TOL && worst_mu2 <= SPECTRAL_TOL;
    Ok(Criterion::new(
        "3",
        "twisted sums from Frobenius classes = direct character sums",
        pass,
        format!("mu: {checks_mu} checks, worst {worst_mu:.2e}; mu^2: {checks_mu2} checks, worst {worst_mu2:.2e}"),
        json!({ "mu": { "checks": checks_mu, "worst_rel_dev": worst_mu }, "mu2": { "checks": checks_mu2, "worst_rel_dev": worst_mu2 }, "tolerance": SPECTRAL_TOL }),
    ))
}

fn interval_variance(q: u32, n: usize, h: usize, alpha: &ArithFn) -> Result<f64> {
    let f = field(q)?;
    let table = MobiusTable::build(&f, n, &SUITE_BUDGET)?;
    let vals = table.alpha_values(alpha)?;
    Ok(to_f64(&variance_interval_bruteforce(&vals, q, h)?.variance))
}

pub fn criterion_mobius_trend() -> Result<Criterion> {
    let qs = [3u32, 5, 7, 9, 11, 13];
    let mut rows = Vec::new();
    let mut devs = Vec::new();
    let mut bounds_ok = true;
    for q in qs {
        let var = interval_variance(q, 5, 0, &ArithFn::Mu)?;
        let ratio = var / q as f64;
        let dev = (ratio - 1.0).abs();
        let bound = 2.0 / (q as f64).sqrt();
        bounds_ok &= dev <= bound;
        devs.push(dev);
        rows.push(json!({ "q": q, "var": var, "ratio": ratio, "dev": dev, "bound": bound }));
    }
    let increases: Vec<u32> = devs.windows(2).zip(&qs[1..]).filter(|(w, _)| w[1] > 1.2 * w[0]).map(|(_, &q)| q).collect();
    let pass = bounds_ok && increases.is_empty();
    let shown: Vec<String> = devs.iter().map(|d| format!("{d:.4}")).collect();
    Ok(Criterion::new(
        "4",
        "Var N_mu / H trend at n = 5, h = 0",
        pass,
        format!("deviations {} (bounds {}), increases beyond 20% at q = {increases:?}", shown.join(" "), if bounds_ok { "ok" } else { "violated" }),
        json!({ "rows": rows, "bounds_ok": bounds_ok, "increases_at": increases }),
    ))
}

pub fn criterion_squarefree_parity() -> Result<Criterion> {
    let mut rows = Vec::new();
    let mut pass = true;
    for q in [5u32, 7, 11, 13] {
        for (n, h) in [(6usize, 0usize), (7, 1)] {
            let var = interval_variance(q, n, h, &ArithFn::Mu2)?;
            let pred = theory_prediction(Theorem::SquarefreeInterval, &PredictionParams { q, n, h: Some(h), modulus: None }, false)?;
            let normalized = var / pred.value;
            let bound = 3.0 / (q as f64).sqrt();
            let ok = (normalized - 1.0).abs() <= bound;
            pass &= ok;
            rows.push(json!({ "q": q, "n": n, "h": h, "var": var, "normalized": normalized, "bound": bound, "pass": ok }));
        }
    }
    let worst = rows.iter().map(|r| (r["normalized"].as_f64().unwrap() - 1.0).abs()).fold(0.0, f64::max);
    Ok(Criterion::new(
        "5",
        "Var N_{mu^2} parity split at (n,h) = (6,0), (7,1)",
        pass,
        format!("{} cells, worst |normalized - 1| = {worst:.4}", rows.len()),
        json!({ "rows": rows }),
    ))
}

pub fn criterion_progression_trend() -> Result<Criterion> {
    let mut rows = Vec::new();
    let mut pass = true;
    for q in [5u32, 7, 11, 13] {
        let f = field(q)?;
        let qf = q as f64;
        let bound = 3.0 / qf.sqrt();
        for (name, modulus) in squarefree_panel(&f, 3)? {
            let group = UnitGroup::new(&modulus, &SUITE_BUDGET)?;
            for n in [4usize, 5] {
                let mu = alpha_table(&f, n, &ArithFn::Mu, &SUITE_BUDGET)?;
                let mu2 = alpha_table(&f, n, &ArithFn::Mu2, &SUITE_BUDGET)?;
                let v_mu = to_f64(&variance_progression_bruteforce(&group, &residue_histogram(group.ring(), n, &mu)?)?.variance);
                let v_mu2 = to_f64(&variance_progression_bruteforce(&group, &residue_histogram(group.ring(), n, &mu2)?)?.variance);
                let params = PredictionParams { q, n, h: None, modulus: Some((3, group.order(), true)) };
                let r_mu = v_mu / theory_prediction(Theorem::MobiusProgression, &params, false)?.value;
                let r_mu2 = v_mu2 / theory_prediction(Theorem::SquarefreeProgression, &params, false)?.value;
                let ok = (r_mu - 1.0).abs() <= bound && (r_mu2 - 1.0).abs() <= bound;
                pass &= ok;
                rows.push(json!({ "q": q, "modulus": name, "n": n, "mu_ratio": r_mu, "mu2_ratio": r_mu2, "bound": bound, "pass": ok }));
            }
        }
    }
    let worst = rows
        .iter()
        .map(|r| (r["mu_ratio"].as_f64().unwrap() - 1.0).abs().max((r["mu2_ratio"].as_f64().unwrap() - 1.0).abs()))
        .fold(0.0, f64::max);
    Ok(Criterion::new(
        "6",
        "progression variance trends, squarefree cubic moduli",
        pass,
        format!("{} cells, worst |ratio - 1| = {worst:.4}", rows.len()),
        json!({ "rows": rows }),
    ))
}

pub fn criterion_squarefree_counts() -> Result<Criterion> {
    let mut constants: Vec<(usize, f64)> = Vec::new();
    for n in 3..=6usize {
        let mut c_n = 0.0f64;
        for q in [3u32, 5, 9] {
            let f = field(q)?;
            let table = MobiusTable::build(&f, n, &SUITE_BUDGET)?;
            let sq = table.alpha_values(&ArithFn::Mu2)?;
            for h in 1..=n - 2 {
                let big_h = (q as i64).pow(h as u32 + 1);
                let worst = block_sums(&sq, q, h).into_iter().map(|s| (s - big_h).abs()).max().unwrap_or(0);
                c_n = c_n.max(worst as f64 * q as f64 / big_h as f64);
            }
        }
        constants.push((n, c_n));
    }
    let mut pathological = Vec::new();
    for q in [3u32, 5, 9] {
        let f = field(q)?;
        let p = f.p() as usize;
        let interval = ShortInterval::new(Poly::monomial(&f, Fe::ONE, p), 0)?;
        pathological.push((q, interval_sum(&ArithFn::Mu2, &interval)?));
    }
    let fitted_ok = constants.iter().all(|&(_, c)| c <= 4.0);
    let zero_ok = pathological.iter().all(|&(_, c)| c == 0);
    let shown: Vec<String> = constants.iter().map(|(n, c)| format!("C_{n}={c:.3}")).collect();
    Ok(Criterion::new(
        "7",
        "squarefree counts in short intervals",
        fitted_ok && zero_ok,
        format!("{}; squarefrees in I(t^p;0): {:?}", shown.join(" "), pathological.iter().map(|p| p.1).collect::<Vec<_>>()),
        json!({ "constants": constants, "pathological_counts": pathological }),
    ))
}

pub fn criterion_counterexamples() -> Result<Criterion> {
    let mut notes = Vec::new();
    let mut pass = true;
    for q in [3u32, 9] {
        let f = field(q)?;
        let s = interval_sum(&ArithFn::Mu, &ShortInterval::new(Poly::monomial(&f, Fe::ONE, 6), 1)?)?;
        let want = (q * (q - 1)) as i64;
        pass &= s.abs() == want;
        notes.push(json!({ "q": q, "n": 6, "sum": s, "expected_abs": want }));
    }
    let mut collapse = Vec::new();
    for q in [3u32, 5, 7, 9] {
        let f = field(q)?;
        for n in 2..=6usize {
            if n % f.p() as usize == 0 {
                continue;
            }
            let table = MobiusTable::build(&f, n, &SUITE_BUDGET)?;
            let sums = block_sums(table.values(), q, n - 2);
            let constant = sums.iter().all(|&s| s == sums[0]);
            pass &= constant;
            collapse.push(json!({ "q": q, "n": n, "value": sums[0], "constant": constant }));
        }
    }
    Ok(Criterion::new(
        "8",
        "interval counterexamples and the h = n - 2 collapse",
        pass,
        format!(
            "|N_mu(t^6;1)| = {:?}; collapse holds in {}/{} cases",
            notes.iter().map(|v| v["sum"].as_i64().unwrap().abs()).collect::<Vec<_>>(),
            collapse.iter().filter(|v| v["constant"].as_bool().unwrap()).count(),
            collapse.len()
        ),
        json!({ "counterexamples": notes, "collapse": collapse }),
    ))
}

pub fn criterion_rmt(seed: u64) -> Result<Criterion> {
    let mut rows = Vec::new();
    let mut pass = true;
    let mut stats = Vec::new();
    for dim in 2..=4usize {
        for k in 1..=5 {
            stats.push((dim, Statistic::SymTraceSq { k }));
        }
        for m in 1..=3 {
            stats.push((dim, Statistic::TraceSymProduct { m }));
        }
    }
    let mut worst = 0.0f64;
    for (i, (dim, stat)) in stats.into_iter().enumerate() {
        let est = mc_integral(stat, dim, 10_000, seed.wrapping_add(i as u64), MC_WORKERS)?;
        let target = stat.haar_value(dim);
        let z = (est.mean - target).abs() / est.stderr;
        worst = worst.max(z);
        pass &= z <= 3.0;
        rows.push(json!({ "N": dim, "statistic": stat.name(), "mean": est.mean, "stderr": est.stderr, "target": target, "z": z }));
    }
    Ok(Criterion::new(
        "9",
        "Monte Carlo matrix integrals",
        pass,
        format!("{} integrals at 10^4 samples, worst |mean - target|/stderr = {worst:.2}", rows.len()),
        json!({ "rows": rows }),
    ))
}

pub fn criterion_singular_sums() -> Result<Criterion> {
    let mut pass = true;
    let mut rows = Vec::new();
    for q in [3u32, 5] {
        let f = field(q)?;
        for h in 0..=6 {
            let a = sum_singular_enumerate(&f, h)?;
            let b = sum_singular_series(&f, h)?;
            pass &= a == b;
            rows.push(json!({ "q": q, "h": h, "sum": a.to_string(), "equal": a == b }));
        }
    }
    Ok(Criterion::new(
        "10a",
        "singular series sums, enumeration = generating series",
        pass,
        format!("{} exact comparisons", rows.len()),
        json!({ "rows": rows }),
    ))
}

pub fn j_panel(f: &FieldRef) -> Result<Vec<Poly>> {
    Ok(vec![
        Poly::one(f),
        Poly::monomial(f, Fe::ONE, 2),
        Poly::from_codes(f, &[1, 2, 1])?,
        Poly::from_codes(f, &[0, 1, 1])?,
    ])
}

pub fn criterion_pair_correlation() -> Result<Criterion> {
    let f = field(3)?;
    let ns = [8usize, 10, 12, 14];
    let rows = pair_correlation_panel(&f, &j_panel(&f)?, &ns, 6, &SUITE_BUDGET)?;
    let panel_dev: Vec<f64> = ns
        .iter()
        .map(|&n| rows.iter().filter(|r| r.n == n).map(|r| r.rel_dev).fold(0.0, f64::max))
        .collect();
    let pass = panel_dev.windows(2).all(|w| w[1] < w[0]);
    let per_j_monotone: Vec<(String, bool)> = j_panel(&f)?
        .iter()
        .map(|j| {
            let d: Vec<f64> = rows.iter().filter(|r| r.j == j.to_text()).map(|r| r.rel_dev).collect();
            (j.to_text(), d.windows(2).all(|w| w[1] < w[0]))
        })
        .collect();
    let shown: Vec<String> = panel_dev.iter().map(|d| format!("{d:.2e}")).collect();
    Ok(Criterion::new(
        "10b",
        "pair correlation S(J;n)/(S(J) q^n) approaches 1, q = 3",
        pass,
        format!("largest panel deviation for n = 8, 10, 12, 14: {}", shown.join(" ")),
        json!({ "panel_max_dev": panel_dev, "per_j_monotone": per_j_monotone, "rows": rows }),
    ))
}

pub fn criterion_hall() -> Result<Criterion> {
    let f = field(3)?;
    let table = MobiusTable::build(&f, 16, &SUITE_BUDGET)?;
    let beta = beta_q(3, 8)?;
    let mut rows = Vec::new();
    let mut vars = Vec::new();
    let mut preds = Vec::new();
    let mut within = true;
    for h in [0usize, 1] {
        let (_, var) = hall_variance_bruteforce(&table, h)?;
        let v = to_f64(&var);
        let p = hall_prediction(3, h, &beta);
        let dev = (v - p).abs() / p;
        within &= dev <= 0.25;
        vars.push(v);
        preds.push(p);
        rows.push(json!({ "h": h, "var_bf": { "num": var.numer().to_string(), "den": var.denom().to_string() }, "value": v, "prediction": p, "rel_dev": dev }));
    }
    let ordering = (vars[1] > vars[0]) == (preds[1] > preds[0]);
    Ok(Criterion::new(
        "10c",
        "fixed-q squarefree variance at q = 3, n = 16",
        within && ordering,
        format!(
            "h=0: {:.4} vs {:.4}, h=1: {:.4} vs {:.4}; within 25%: {within}; even/odd ordering reproduced: {ordering}",
            vars[0], preds[0], vars[1], preds[1]
        ),
        json!({ "rows": rows, "beta_q": beta.to_f64(), "beta_tail_bound": beta.tail_bound, "within_25pct": within, "ordering": ordering }),
    ))
}

/// Runs the quick identity battery twice and compares the serialized output.
pub fn criterion_reproducible() -> Result<Criterion> {
    let a = serde_json::to_string(&identity_cells(&[3], &[3, 4, 5], &SUITE_BUDGET, IDENTITY_TOL)?)?;
    let b = serde_json::to_string(&identity_cells(&[3], &[3, 4, 5], &SUITE_BUDGET, IDENTITY_TOL)?)?;
    let mc_a = serde_json::to_string(&mc_integral(Statistic::SymTraceSq { k: 2 }, 3, 500, 11, MC_WORKERS)?)?;
    let mc_b = serde_json::to_string(&mc_integral(Statistic::SymTraceSq { k: 2 }, 3, 500, 11, MC_WORKERS)?)?;
    let pass = a == b && mc_a == mc_b;
    Ok(Criterion::new(
        "11",
        "reproducible reports",
        pass,
        format!("identity reports {} bytes, identical: {}; Monte Carlo identical: {}", a.len(), a == b, mc_a == mc_b),
        json!({ "bytes": a.len() }),
    ))
}

pub type CriterionFn = fn(u64) -> Result<Criterion>;

/// Every criterion, in order.
pub fn battery() -> Vec<(&'static str, CriterionFn)> {
    vec![
        ("1", |_| criterion_identity(&[3, 5, 7])),
        ("2", |_| criterion_rh()),
        ("3", |_| criterion_spectral()),
        ("4", |_| criterion_mobius_trend()),
        ("5", |_| criterion_squarefree_parity()),
        ("6", |_| criterion_progression_trend()),
        ("7", |_| criterion_squarefree_counts()),
        ("8", |_| criterion_counterexamples()),
        ("9", criterion_rmt),
        ("10a", |_| criterion_singular_sums()),
        ("10b", |_| criterion_pair_correlation()),
        ("10c", |_| criterion_hall()),
        ("11", |_| criterion_reproducible()),
    ]
}

/// The quick battery: the identity suite over F_3.
pub fn quick_battery() -> Vec<(&'static str, CriterionFn)> {
    vec![("1", |_| criterion_identity(&[3]))]
}
