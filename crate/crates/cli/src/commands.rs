use anyhow::{bail, Result};
use ffstat::budget::qpow;
use ffstat::dirichlet::{RhReport, UnitGroup};
use ffstat::hall::{hall_report_with, pair_correlation_panel, sum_singular_enumerate, sum_singular_series};
use ffstat::rmt::{equidistribution, mc_integral, Statistic};
use ffstat::sieve::alpha_table;
use ffstat::stats::{interval_report_with, progression_report_with, VarianceReport};
use ffstat::{ArithFn, Budget, Fe, FieldRef, MobiusTable, Poly};
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Command, FieldArgs, HallMode, Parity, SpectralMode};
use crate::moduli::{fields, parse_modulus};
use crate::output::Emitter;
use crate::verify::{self, RH_TOL};

/// Outcome of one command: the ids of failed checks.
pub type Failures = Vec<String>;

pub struct Ctx<'a> {
    pub cli: &'a Cli,
    pub budget: Budget,
    pub out: &'a mut Emitter,
}

pub fn dispatch(ctx: &mut Ctx) -> Result<Failures> {
    match &ctx.cli.command {
        Command::VarianceSi { field, n, h, alpha, spectral } => variance_si(ctx, field, &n.0, h.as_ref().map(|h| h.0.as_slice()), alpha, *spectral),
        Command::VarianceAp { field, n, modulus, alpha, spectral } => variance_ap(ctx, field, &n.0, modulus, alpha, *spectral),
        Command::IdentitySuite { field, n } => identity_suite(ctx, field, &n.0),
        Command::Lfunc { field, modulus, dump } => lfunc(ctx, field, modulus, *dump),
        Command::Equidist { field, modulus, stat, parity } => equidist(ctx, field, modulus, stat, *parity),
        Command::Rmt { dim, k, stat, samples } => rmt(ctx, &dim.0, &k.0, stat, *samples),
        Command::Hall { field, n, h, cutoff, what } => hall(ctx, field, &n.0, &h.0, *cutoff, *what),
        Command::Verify { quick } => run_verify(ctx, *quick),
    }
}

fn alpha_fn(name: &str) -> Result<ArithFn> {
    Ok(ArithFn::parse(name)?)
}

/// Whether to build the character data, given the mode and the group size.
fn want_spectral(mode: SpectralMode, budget: &Budget, what: &str, order: u128) -> Result<bool> {
    match mode {
        SpectralMode::Never => Ok(false),
        SpectralMode::Always => {
            budget.check_characters(what, order)?;
            Ok(true)
        }
        SpectralMode::Auto => Ok(order <= budget.max_characters),
    }
}

#[derive(Serialize)]
struct Cell<'a> {
    #[serde(flatten)]
    report: &'a VarianceReport,
    pass: bool,
}

fn check_cell(report: &VarianceReport, tol: f64) -> bool {
    report.rel_dev_bf_spec.is_none_or(|d| d <= tol)
}

fn cell_id(r: &VarianceReport) -> String {
    serde_json::to_string(&r.params).unwrap_or_default()
}

fn variance_si(ctx: &mut Ctx, fa: &FieldArgs, ns: &[usize], hs: Option<&[usize]>, alpha: &str, mode: SpectralMode) -> Result<Failures> {
    let alpha = alpha_fn(alpha)?;
    let mut failures = Vec::new();
    for f in fields(fa, &[])? {
        let q = f.q();
        for &n in ns {
            if n < 2 {
                bail!(ffstat::Error::InvalidParameter(format!("interval variance needs n >= 2, got {n}")));
            }
            let table = MobiusTable::build(&f, n, &ctx.budget)?;
            let hs: Vec<usize> = match hs {
                Some(h) => h.to_vec(),
                None => (0..=n - 2).collect(),
            };
            let values: Vec<i64> = if alpha.is_builtin() { Vec::new() } else { alpha_table(&f, n, &alpha, &ctx.budget)? };
            let small = if alpha.is_builtin() { table.alpha_values(&alpha)? } else { Vec::new() };
            for h in hs {
                let started = std::time::Instant::now();
                let order = (q as u128 - 1) * qpow(q, n.saturating_sub(h + 1))?;
                let spectral = if h + 2 <= n && want_spectral(mode, &ctx.budget, "characters mod t^(n-h)", order)? {
                    let group = UnitGroup::new(&Poly::monomial(&f, Fe::ONE, n - h), &ctx.budget)?;
                    let lt = group.l_coefficients()?;
                    Some((group, lt))
                } else {
                    None
                };
                let sp = spectral.as_ref().map(|(g, t)| (g, t));
                let allow = ctx.cli.allow_out_of_range;
                let seed = ctx.cli.seed;
                let mut report = if alpha.is_builtin() {
                    interval_report_with(&f, &alpha, n, h, &small, sp, &ctx.budget, allow, seed)?
                } else {
                    interval_report_with(&f, &alpha, n, h, &values, sp, &ctx.budget, allow, seed)?
                };
                if ctx.cli.timing {
                    report.runtime_ms = Some(started.elapsed().as_millis() as u64);
                }
                let pass = check_cell(&report, ctx.cli.tolerance);
                if !pass {
                    failures.push(cell_id(&report));
                }
                ctx.out.emit("variance-si", &Cell { report: &report, pass })?;
            }
        }
    }
    Ok(failures)
}

fn variance_ap(ctx: &mut Ctx, fa: &FieldArgs, ns: &[usize], moduli: &[String], alpha: &str, mode: SpectralMode) -> Result<Failures> {
    let alpha = alpha_fn(alpha)?;
    let mut failures = Vec::new();
    for f in fields(fa, &[])? {
        for spec in moduli {
            let modulus = parse_modulus(&f, spec)?;
            let group = UnitGroup::new(&modulus, &ctx.budget)?;
            let lt = if want_spectral(mode, &ctx.budget, "characters mod Q", group.order() as u128)? { Some(group.l_coefficients()?) } else { None };
            for &n in ns {
                let started = std::time::Instant::now();
                let values = alpha_table(&f, n, &alpha, &ctx.budget)?;
                let mut report = progression_report_with(&alpha, n, &values, &group, lt.as_ref(), ctx.cli.allow_out_of_range, ctx.cli.seed)?;
                if ctx.cli.timing {
                    report.runtime_ms = Some(started.elapsed().as_millis() as u64);
                }
                let pass = check_cell(&report, ctx.cli.tolerance);
                if !pass {
                    failures.push(cell_id(&report));
                }
                ctx.out.emit("variance-ap", &Cell { report: &report, pass })?;
            }
        }
    }
    Ok(failures)
}

fn identity_suite(ctx: &mut Ctx, fa: &FieldArgs, ns: &[usize]) -> Result<Failures> {
    let qs: Vec<u32> = fields(fa, &[3, 5, 7])?.iter().map(|f| f.q()).collect();
    let budget = Budget { max_characters: ctx.budget.max_characters.max(verify::SUITE_BUDGET.max_characters), ..ctx.budget };
    let cells = verify::identity_cells(&qs, ns, &budget, ctx.cli.tolerance)?;
    let mut failures = Vec::new();
    for c in &cells {
        if !c.pass {
            failures.push(cell_id(&c.report));
        }
        ctx.out.emit("identity", &Cell { report: &c.report, pass: c.pass })?;
    }
    Ok(failures)
}

#[derive(Serialize)]
struct LfuncSummary {
    q: u32,
    modulus: String,
    characters: u64,
    primitive: usize,
    max_rel_dev: f64,
    max_trivial_dev: f64,
    rh_ok: bool,
}

fn lfunc(ctx: &mut Ctx, fa: &FieldArgs, moduli: &[String], dump: bool) -> Result<Failures> {
    let mut failures = Vec::new();
    for f in fields(fa, &[])? {
        for spec in moduli {
            let modulus = parse_modulus(&f, spec)?;
            let group = UnitGroup::new(&modulus, &ctx.budget)?;
            let lt = group.l_coefficients()?;
            let (mut worst, mut worst_trivial) = (0.0f64, 0.0f64);
            for chi in 1..group.order() {
                let l = group.l_function_from_table(&lt, chi)?;
                let rh: RhReport = l.rh_report()?;
                worst = worst.max(rh.max_rel_dev);
                worst_trivial = worst_trivial.max(rh.max_trivial_dev);
                if dump {
                    let class = if l.is_primitive() { Some(l.frobenius_class()?) } else { None };
                    ctx.out.emit(
                        "lfunc-character",
                        &json!({ "q": f.q(), "modulus": modulus.to_text(), "even": l.is_even(), "primitive": l.is_primitive(), "rh": rh, "frobenius": class }),
                    )?;
                }
            }
            let summary = LfuncSummary {
                q: f.q(),
                modulus: modulus.to_text(),
                characters: group.order(),
                primitive: group.primitive_characters().count(),
                max_rel_dev: worst,
                max_trivial_dev: worst_trivial,
                rh_ok: worst < RH_TOL,
            };
            if !summary.rh_ok {
                failures.push(format!("rh q={} modulus={}", f.q(), summary.modulus));
            }
            ctx.out.emit("lfunc", &summary)?;
        }
    }
    Ok(failures)
}

fn parse_stat(s: &str) -> Result<Statistic> {
    let num = |x: &str| x.parse::<usize>().map_err(|_| ffstat::Error::InvalidParameter(format!("bad statistic {s:?}")));
    Ok(if let Some(k) = s.strip_prefix("sym:") {
        Statistic::SymTraceSq { k: num(k)? }
    } else if let Some(m) = s.strip_prefix("product:") {
        Statistic::TraceSymProduct { m: num(m)? }
    } else if s == "trace4" {
        Statistic::TraceFourth
    } else {
        bail!(ffstat::Error::InvalidParameter(format!("unknown statistic {s:?}: use sym:K, trace4 or product:M")))
    })
}

fn equidist(ctx: &mut Ctx, fa: &FieldArgs, moduli: &[String], stat: &str, parity: Parity) -> Result<Failures> {
    let stat = parse_stat(stat)?;
    let product = matches!(stat, Statistic::TraceSymProduct { .. });
    let even = parity == Parity::Even;
    for f in fields(fa, &[])? {
        for spec in moduli {
            let modulus = parse_modulus(&f, spec)?;
            let group = UnitGroup::new(&modulus, &ctx.budget)?;
            let lt = group.l_coefficients()?;
            let mut classes = Vec::new();
            for class in group.frobenius_classes(&lt, even)? {
                if product {
                    let chi2 = group.char_pow(class.chi, 2);
                    if !group.is_primitive(chi2) {
                        continue;
                    }
                    let c2 = group.l_function_from_table(&lt, chi2)?.frobenius_class()?;
                    classes.push((class.angles, Some(c2.angles)));
                } else {
                    classes.push((class.angles, None));
                }
            }
            let family = format!("{} primitive", if even { "even" } else { "odd" });
            let report = equidistribution(&family, f.q(), &modulus.to_text(), stat, &classes)?;
            let scaled = report.deviation * (f.q() as f64).sqrt();
            ctx.out.emit("equidist", &json!({ "report": report, "statistic": stat.name(), "sqrt_q_scaled_deviation": scaled }))?;
        }
    }
    Ok(Vec::new())
}

fn rmt(ctx: &mut Ctx, dims: &[usize], ks: &[usize], stat: &str, samples: u64) -> Result<Failures> {
    let mut failures = Vec::new();
    let workers = if ctx.cli.workers == 0 { 4 } else { ctx.cli.workers };
    for &dim in dims {
        for &k in ks {
            let stat = match stat {
                "sym" => Statistic::SymTraceSq { k },
                "product" => Statistic::TraceSymProduct { m: k },
                "trace4" => Statistic::TraceFourth,
                other => bail!(ffstat::Error::InvalidParameter(format!("unknown statistic {other:?}: use sym, trace4 or product"))),
            };
            let est = mc_integral(stat, dim, samples, ctx.cli.seed, workers)?;
            let target = stat.haar_value(dim);
            let z = (est.mean - target).abs() / est.stderr;
            let pass = z <= 3.0;
            if !pass {
                failures.push(format!("rmt N={dim} {}", stat.name()));
            }
            ctx.out.emit("rmt", &json!({ "N": dim, "statistic": stat, "name": stat.name(), "estimate": est, "target": target, "z": z, "workers": workers, "pass": pass }))?;
        }
    }
    Ok(failures)
}

fn hall(ctx: &mut Ctx, fa: &FieldArgs, ns: &[usize], hs: &[usize], cutoff: usize, what: HallMode) -> Result<Failures> {
    for f in fields(fa, &[3])? {
        match what {
            HallMode::Variance => {
                for &n in ns {
                    let table = MobiusTable::build(&f, n, &ctx.budget)?;
                    for &h in hs {
                        ctx.out.emit("hall-variance", &hall_report_with(&table, h, cutoff)?)?;
                    }
                }
            }
            HallMode::Pairs => {
                let rows = pair_correlation_panel(&f, &verify::j_panel(&f)?, ns, cutoff, &ctx.budget)?;
                for row in rows {
                    ctx.out.emit("hall-pairs", &row)?;
                }
            }
            HallMode::Singular => {
                for &h in hs {
                    singular_row(ctx, &f, h)?;
                }
            }
        }
    }
    Ok(Vec::new())
}

fn singular_row(ctx: &mut Ctx, f: &FieldRef, h: usize) -> Result<()> {
    let a = sum_singular_enumerate(f, h)?;
    let b = sum_singular_series(f, h)?;
    ctx.out.emit("hall-singular", &json!({ "q": f.q(), "h": h, "enumerated": a.to_string(), "series": b.to_string(), "equal": a == b }))
}

fn run_verify(ctx: &mut Ctx, quick: bool) -> Result<Failures> {
    let battery = if quick { verify::quick_battery() } else { verify::battery() };
    let mut failures = Vec::new();
    for (_, run) in battery {
        let c = run(ctx.cli.seed)?;
        if !c.pass {
            failures.push(c.id.clone());
        }
        ctx.out.emit("criterion", &c)?;
    }
    Ok(failures)
}
