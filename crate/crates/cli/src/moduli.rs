use anyhow::{anyhow, bail, Context, Result};
use ffstat::factor::irreducibles;
use ffstat::{Fe, FieldRef, Poly};

use crate::args::FieldArgs;

pub fn fields(args: &FieldArgs, default: &[u32]) -> Result<Vec<FieldRef>> {
    match (&args.q, args.p) {
        (Some(qs), _) => qs.0.iter().map(|&q| ffstat::Field::new(q).map_err(Into::into)).collect(),
        (None, Some(p)) => Ok(vec![ffstat::Field::with_degree(p, args.k.unwrap_or(1))?]),
        (None, None) if !default.is_empty() => default.iter().map(|&q| ffstat::Field::new(q).map_err(Into::into)).collect(),
        (None, None) => bail!(ffstat::Error::InvalidParameter("a field is required: pass --q or --p/--k".into())),
    }
}

fn first_irreducible(field: &FieldRef, d: usize, skip_t: bool) -> Result<Poly> {
    irreducibles(field, d)?
        .into_iter()
        .find(|p| !(skip_t && p.deg() == 1 && p.coeff(0).is_zero()))
        .ok_or_else(|| anyhow!("no irreducible of degree {d}"))
}

/// `prod_{c < d} (t - c)` over the first `d` field elements.
pub fn split(field: &FieldRef, d: usize) -> Result<Poly> {
    if d > field.q() as usize {
        bail!(ffstat::Error::InvalidParameter(format!("split:{d} needs d <= q")));
    }
    let mut acc = Poly::one(field);
    for c in 0..d as u32 {
        let lin = Poly::new(field, vec![field.neg(Fe(c)), Fe::ONE]);
        acc = &acc * &lin;
    }
    Ok(acc)
}

/// Parses `t^m`, `irr:d`, `split:d`, `mixed:d` (t times an irreducible of
/// degree d - 1), a full text form, or coefficients lowest first.
pub fn parse_modulus(field: &FieldRef, spec: &str) -> Result<Poly> {
    let spec = spec.trim();
    let num = |s: &str| s.parse::<usize>().with_context(|| format!("bad degree in modulus {spec:?}"));
    let poly = if let Some(m) = spec.strip_prefix("t^") {
        Poly::monomial(field, Fe::ONE, num(m)?)
    } else if let Some(d) = spec.strip_prefix("irr:") {
        first_irreducible(field, num(d)?, false)?
    } else if let Some(d) = spec.strip_prefix("split:") {
        split(field, num(d)?)?
    } else if let Some(d) = spec.strip_prefix("mixed:") {
        let d = num(d)?;
        if d < 3 {
            bail!(ffstat::Error::InvalidParameter("mixed:d needs d >= 3".into()));
        }
        &Poly::t(field) * &first_irreducible(field, d - 1, true)?
    } else if spec.contains('=') {
        Poly::parse_in(field, spec)?
    } else {
        let codes = spec
            .split(',')
            .map(|c| c.trim().parse::<u32>().with_context(|| format!("bad coefficient in modulus {spec:?}")))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_codes(field, &codes)?
    };
    if !poly.is_monic() || poly.deg() < 1 {
        bail!(ffstat::Error::InvalidParameter(format!("modulus {spec:?} must be monic of positive degree")));
    }
    Ok(poly)
}

/// Squarefree moduli of degree 2 or 3 covering each factorization shape.
pub fn squarefree_panel(field: &FieldRef, d: usize) -> Result<Vec<(String, Poly)>> {
    let names: &[&str] = match d {
        2 => &["irr:2", "split:2"],
        3 => &["irr:3", "mixed:3", "split:3"],
        _ => bail!("no squarefree panel for degree {d}"),
    };
    names.iter().map(|n| Ok((n.to_string(), parse_modulus(field, n)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ffstat::arith::is_squarefree;
    use ffstat::factor::factor;

    #[test]
    fn named_moduli() {
        let f = ffstat::Field::new(5).unwrap();
        assert_eq!(parse_modulus(&f, "t^3").unwrap(), Poly::monomial(&f, Fe::ONE, 3));
        for d in [2, 3] {
            for (name, m) in squarefree_panel(&f, d).unwrap() {
                assert_eq!(m.deg(), d, "{name}");
                assert!(is_squarefree(&m).unwrap(), "{name}");
            }
        }
        assert_eq!(factor(&parse_modulus(&f, "split:3").unwrap()).unwrap().omega(), 3);
        assert_eq!(factor(&parse_modulus(&f, "mixed:3").unwrap()).unwrap().omega(), 2);
        assert_eq!(parse_modulus(&f, "1,0,1").unwrap(), Poly::from_codes(&f, &[1, 0, 1]).unwrap());
        assert!(parse_modulus(&f, "1,0,2").is_err());
    }
}
