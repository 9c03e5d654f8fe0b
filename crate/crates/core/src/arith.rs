//! Arithmetic functions on F_q[t]: Möbius, squarefree indicator,
//! discriminants and factorization cycle types.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{distinct_degree, factor};
use crate::field::{Fe, FieldRef};
use crate::poly::{polys_up_to, Poly};

pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("squarefree test of zero".into()));
    }
    if f.deg() == 0 {
        return Ok(true);
    }
    let d = f.derivative();
    if d.is_zero() {
        return Ok(false);
    }
    Ok(f.gcd(&d)?.deg() == 0)
}

/// Möbius function; units map to 1.
pub fn mobius(f: &Poly) -> Result<i8> {
    if !is_squarefree(f)? {
        return Ok(0);
    }
    if f.deg() == 0 {
        return Ok(1);
    }
    let (_, g) = f.make_monic()?;
    let r: usize = distinct_degree(&g)?.iter().map(|(d, p)| p.deg() / d).sum();
    Ok(if r % 2 == 0 { 1 } else { -1 })
}

pub fn mu2(f: &Poly) -> Result<i8> {
    Ok(is_squarefree(f)? as i8)
}

/// Resultant `lc(a)^deg b * prod_{a(x)=0} b(x)` with actual degrees.
pub fn resultant(a: &Poly, b: &Poly) -> Result<Fe> {
    a.check_field(b)?;
    let field = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return Ok(Fe::ZERO);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = Fe::ONE;
    loop {
        let (m, n) = (a.deg(), b.deg());
        if n == 0 {
            return Ok(field.mul(acc, field.pow(b.leading(), m as u64)));
        }
        if m == 0 {
            return Ok(field.mul(acc, field.pow(a.leading(), n as u64)));
        }
        let r = b.rem(&a)?;
        if r.is_zero() {
            return Ok(Fe::ZERO);
        }
        // R(a, b) = lc(a)^(n - deg r) R(a, r) = lc(a)^(n - deg r) (-1)^(m deg r) R(r, a)
        let k = r.deg();
        acc = field.mul(acc, field.pow(a.leading(), (n - k) as u64));
        if (m * k) % 2 == 1 {
            acc = field.neg(acc);
        }
        b = a;
        a = r;
    }
}

/// Discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)` with `f'` taken at formal degree `n - 1`.
pub fn discriminant(f: &Poly) -> Result<Fe> {
    let n = match f.degree() {
        None => return Err(Error::InvalidParameter("discriminant of zero".into())),
        Some(0) => return Err(Error::InvalidParameter("discriminant of a constant".into())),
        Some(1) => return Ok(Fe::ONE),
        Some(n) => n,
    };
    let field = f.field().clone();
    let d = f.derivative();
    if d.is_zero() {
        return Ok(Fe::ZERO);
    }
    let lc = f.leading();
    let mut r = resultant(f, &d)?;
    r = field.mul(r, field.pow(lc, (n - 1 - d.deg()) as u64));
    if (n * (n - 1) / 2) % 2 == 1 {
        r = field.neg(r);
    }
    field.div(r, lc)
}

pub fn quadratic_character(field: &FieldRef, c: Fe) -> i8 {
    field.chi2(c)
}

/// Degrees of the irreducible factors with multiplicity, as counts `lambda_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleType {
    pub degree: usize,
    /// `counts[j - 1]` is the number of factors of degree `j`.
    pub counts: Vec<u32>,
}

impl CycleType {
    /// `(-1)^{n - sum lambda_j}`.
    pub fn sign(&self) -> i8 {
        let r: u32 = self.counts.iter().sum();
        if (self.degree as u32 - r) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn cycle_type(f: &Poly) -> Result<CycleType> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("cycle type of zero".into()));
    }
    let n = f.deg();
    let mut counts = vec![0u32; n];
    for (p, e) in factor(f)?.factors {
        counts[p.deg() - 1] += e;
    }
    Ok(CycleType { degree: n, counts })
}

/// An arithmetic function on F_q[t].
#[derive(Clone)]
pub enum ArithFn {
    Mu,
    Mu2,
    One,
    Custom { name: String, eval: fn(&Poly) -> i64 },
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArithFn({})", self.name())
    }
}

impl PartialEq for ArithFn {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name()
    }
}

impl ArithFn {
    pub fn name(&self) -> &str {
        match self {
            ArithFn::Mu => "mu",
            ArithFn::Mu2 => "mu2",
            ArithFn::One => "one",
            ArithFn::Custom { name, .. } => name,
        }
    }

    pub fn parse(s: &str) -> Result<ArithFn> {
        match s {
            "mu" => Ok(ArithFn::Mu),
            "mu2" => Ok(ArithFn::Mu2),
            "one" => Ok(ArithFn::One),
            other => Err(Error::Parse(format!("unknown arithmetic function {other:?}"))),
        }
    }

    pub fn eval(&self, f: &Poly) -> Result<i64> {
        match self {
            ArithFn::Mu => mobius(f).map(i64::from),
            ArithFn::Mu2 => mu2(f).map(i64::from),
            ArithFn::One => Ok(1),
            ArithFn::Custom { eval, .. } => Ok(eval(f)),
        }
    }

    /// Value at the Möbius value `mu` of a polynomial, for the built-in functions.
    #[inline]
    pub fn from_mu(&self, mu: i8) -> Option<i64> {
        match self {
            ArithFn::Mu => Some(mu as i64),
            ArithFn::Mu2 => Some((mu != 0) as i64),
            ArithFn::One => Some(1),
            ArithFn::Custom { .. } => None,
        }
    }

    pub fn at_t_power(&self, field: &FieldRef, k: usize) -> Result<i64> {
        self.eval(&Poly::monomial(field, Fe::ONE, k))
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, ArithFn::Custom { .. })
    }

    /// Checks evenness, weak multiplicativity and boundedness on all nonzero
    /// polynomials of degree `<= max_deg`.
    pub fn check_class(&self, field: &FieldRef, max_deg: usize) -> Result<ClassCheck> {
        let t = Poly::t(field);
        let mut even = true;
        let mut weakly_multiplicative = true;
        let mut bound = 0i64;
        for f in polys_up_to(field, max_deg) {
            if f.is_zero() {
                continue;
            }
            let v = self.eval(&f)?;
            bound = bound.max(v.abs());
            let (_, m) = f.make_monic()?;
            if v != self.eval(&m)? {
                even = false;
            }
            if !f.coeff(0).is_zero() {
                let mut tk = t.clone();
                for _ in f.deg() + 1..=max_deg {
                    if self.eval(&(&f * &tk))? != v * self.eval(&tk)? {
                        weakly_multiplicative = false;
                    }
                    tk = &tk * &t;
                }
            }
        }
        Ok(ClassCheck { even, weakly_multiplicative, bounded_by: bound })
    }

    /// Errors unless the function is even, weakly multiplicative and bounded.
    pub fn require_class(&self, field: &FieldRef, max_deg: usize) -> Result<()> {
        if self.is_builtin() {
            return Ok(());
        }
        let c = self.check_class(field, max_deg)?;
        if !c.even {
            return Err(Error::NotInClass(format!("{} is not even", self.name())));
        }
        if !c.weakly_multiplicative {
            return Err(Error::NotInClass(format!("{} is not multiplicative at t", self.name())));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub even: bool,
    pub weakly_multiplicative: bool,
    pub bounded_by: i64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn small_mobius_values() {
        let f = Field::new(5).unwrap();
        let t = Poly::t(&f);
        assert_eq!(mobius(&t).unwrap(), -1);
        assert_eq!(mobius(&(&t * &t)).unwrap(), 0);
        assert_eq!(mobius(&Poly::one(&f)).unwrap(), 1);
        // t^2 + 1 = (t + 2)(t + 3) over F_5
        assert_eq!(mobius(&Poly::from_codes(&f, &[1, 0, 1]).unwrap()).unwrap(), 1);
        assert!(mobius(&Poly::zero(&f)).is_err());
    }

    #[test]
    fn quadratic_discriminant() {
        let f = Field::new(7).unwrap();
        for b in f.elements() {
            for c in f.elements() {
                let g = Poly::new(&f, vec![c, b, Fe::ONE]);
                let expect = f.sub(f.mul(b, b), f.mul(f.from_int(4), c));
                assert_eq!(discriminant(&g).unwrap(), expect);
            }
        }
    }

    #[test]
    fn custom_function_class() {
        let f = Field::new(3).unwrap();
        let odd = ArithFn::Custom { name: "lc".into(), eval: |p| p.leading().0 as i64 };
        assert!(!odd.check_class(&f, 3).unwrap().even);
        assert!(odd.require_class(&f, 3).is_err());
        assert!(ArithFn::Mu.check_class(&f, 4).unwrap().even);
    }
}
