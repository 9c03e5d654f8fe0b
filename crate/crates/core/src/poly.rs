//! Polynomials over F_q, dense and lowest coefficient first.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, Field, FieldRef};

#[derive(Clone)]
pub struct Poly {
    field: FieldRef,
    coeffs: Vec<Fe>,
}

fn same_field(a: &FieldRef, b: &FieldRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    /// Builds a polynomial from coefficients, lowest first. Trailing zeros are dropped.
    pub fn new(field: &FieldRef, coeffs: Vec<Fe>) -> Poly {
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from integer codes, lowest first.
    pub fn from_codes(field: &FieldRef, codes: &[u32]) -> Result<Poly> {
        let coeffs = codes.iter().map(|&c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn zero(field: &FieldRef) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldRef) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: &FieldRef, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(field: &FieldRef) -> Poly {
        Poly::monomial(field, Fe::ONE, 1)
    }

    pub fn monomial(field: &FieldRef, c: Fe, k: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fe::ONE
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`, for call sites that already excluded zero.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    /// Norm `|f| = q^deg f` as a float.
    pub fn norm(&self) -> f64 {
        (self.field.q() as f64).powi(self.deg() as i32)
    }

    pub fn check_field(&self, other: &Poly) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    /// Leading coefficient and the monic associate.
    pub fn make_monic(&self) -> Result<(Fe, Poly)> {
        let lc = self.leading();
        let inv = self.field.inv(lc)?;
        Ok((lc, self.scale(inv)))
    }

    /// `f(t + c)`.
    pub fn translate(&self, c: Fe) -> Poly {
        let lin = Poly::new(&self.field, vec![c, Fe::ONE]);
        let mut acc = Poly::zero(&self.field);
        for &a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(&self.field, a);
        }
        acc
    }

    /// Reversal `t^n f(1/t)`; requires `deg f <= n`.
    pub fn reverse(&self, n: usize) -> Result<Poly> {
        if self.coeffs.len() > n + 1 {
            return Err(Error::InvalidParameter(format!("reverse of a degree {} polynomial at n = {n}", self.deg())));
        }
        let mut coeffs = vec![Fe::ZERO; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c;
        }
        Ok(Poly::new(&self.field, coeffs))
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut coeffs = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, coeffs))
    }

    /// Euclidean division: `self = quot * d + rem` with `deg rem < deg d`.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(d)?;
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let f = &self.field;
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, b));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divmod(d)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (quot, r) = self.divmod(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidParameter("division is not exact".into()));
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        Ok(a.make_monic()?.1)
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_field(other)?;
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (qt, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&qt * &s1);
            let t = &t0 - &(&qt * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = f.inv(r0.leading())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        self.try_mul(other)?.rem(m)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// Code of a polynomial of degree `< len`: `sum_i c_i q^i`.
    pub fn residue_code(&self) -> u64 {
        let q = self.field.q() as u64;
        self.coeffs.iter().rev().fold(0, |acc, c| acc * q + c.0 as u64)
    }

    pub fn from_residue_code(field: &FieldRef, mut code: u64) -> Poly {
        let q = field.q() as u64;
        let mut coeffs = Vec::new();
        while code > 0 {
            coeffs.push(Fe((code % q) as u32));
            code /= q;
        }
        Poly::new(field, coeffs)
    }

    /// Position of a monic polynomial in the enumeration of monic polynomials of its degree.
    pub fn monic_index(&self) -> Result<u64> {
        if !self.is_monic() {
            return Err(Error::InvalidParameter("monic index of a non-monic polynomial".into()));
        }
        let q = self.field.q() as u64;
        let n = self.deg();
        Ok(self.coeffs[..n].iter().rev().fold(0, |acc, c| acc * q + c.0 as u64))
    }

    /// The monic polynomial of degree `n` with the given enumeration index.
    pub fn from_monic_index(field: &FieldRef, n: usize, mut idx: u64) -> Poly {
        let q = field.q() as u64;
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push(Fe((idx % q) as u32));
            idx /= q;
        }
        coeffs.push(Fe::ONE);
        Poly { field: field.clone(), coeffs }
    }

    /// Text form `q=..;modulus=..;f=..`, the modulus omitted for prime fields.
    pub fn to_text(&self) -> String {
        let join = |v: &[u32]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        let mut s = format!("q={}", self.field.q());
        if self.field.k() > 1 {
            s.push_str(&format!(";modulus={}", join(self.field.modulus())));
        }
        s.push_str(&format!(";f={}", join(&self.codes())));
        s
    }

    /// Parses the text form, building the field it names.
    pub fn parse(s: &str) -> Result<Poly> {
        let mut q = None;
        let mut modulus = None;
        let mut coeffs = None;
        for part in s.trim().split(';') {
            let (key, val) = part.split_once('=').ok_or_else(|| Error::Parse(format!("missing '=' in {part:?}")))?;
            let list = || -> Result<Vec<u32>> {
                if val.trim().is_empty() {
                    return Ok(Vec::new());
                }
                val.split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                    .collect()
            };
            match key.trim() {
                "q" => q = Some(val.trim().parse::<u32>().map_err(|e| Error::Parse(format!("q: {e}")))?),
                "modulus" => modulus = Some(list()?),
                "f" => coeffs = Some(list()?),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let q = q.ok_or_else(|| Error::Parse("missing q".into()))?;
        let coeffs = coeffs.ok_or_else(|| Error::Parse("missing f".into()))?;
        let field = match modulus {
            Some(m) => {
                let (p, k) = crate::field::prime_power(q).ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?;
                if m.len() as u32 != k + 1 {
                    return Err(Error::Parse(format!("modulus degree does not match q = {q}")));
                }
                Field::with_modulus(p, &m)?
            }
            None => Field::new(q)?,
        };
        Poly::from_codes(&field, &coeffs)
    }

    /// Parses the text form into an existing field; the header must describe that field.
    pub fn parse_in(field: &FieldRef, s: &str) -> Result<Poly> {
        let p = Poly::parse(s)?;
        if !same_field(field, p.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly { field: field.clone(), coeffs: p.coeffs })
    }
}

/// All monic polynomials of degree `n`, in index order.
pub fn monic_polys(field: &FieldRef, n: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (field.q() as u64).pow(n as u32);
    (0..count).map(move |i| Poly::from_monic_index(field, n, i))
}

/// All polynomials of degree `<= h` including zero, in residue-code order.
pub fn polys_up_to(field: &FieldRef, h: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (field.q() as u64).pow(h as u32 + 1);
    (0..count).map(move |i| Poly::from_residue_code(field, i))
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({})", self.field.q(), self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "t")?,
                (1, v) => write!(f, "{v}*t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, v) => write!(f, "{v}*t^{e}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$try(rhs).expect("polynomial operands from different fields")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let f = Poly::parse("q=9;modulus=1,0,1;f=2,0,1").unwrap();
        assert_eq!(f.field().q(), 9);
        assert_eq!(f.deg(), 2);
        assert_eq!(f.to_text(), "q=9;modulus=1,0,1;f=2,0,1");
        let g = Poly::parse("q=5;f=1,0,1").unwrap();
        assert_eq!(g.to_text(), "q=5;f=1,0,1");
        assert!(Poly::parse("q=5;f=1,7").is_err());
        assert!(Poly::parse("q=9;modulus=0,0,1;f=1").is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = Field::new(5).unwrap();
        let a = Poly::t(&f);
        assert_eq!(a.divmod(&Poly::zero(&f)).unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Poly::t(&Field::new(5).unwrap());
        let b = Poly::t(&Field::new(7).unwrap());
        assert_eq!(a.try_add(&b).unwrap_err(), Error::FieldMismatch);
        assert_eq!(a.gcd(&b).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn monic_index_round_trip() {
        let f = Field::new(3).unwrap();
        for (i, g) in monic_polys(&f, 3).enumerate() {
            assert!(g.is_monic());
            assert_eq!(g.monic_index().unwrap(), i as u64);
        }
    }

    #[test]
    fn reverse_and_translate() {
        let f = Field::new(5).unwrap();
        let g = Poly::from_codes(&f, &[1, 2, 0, 1]).unwrap();
        let r = g.reverse(3).unwrap();
        assert_eq!(r.codes(), vec![1, 0, 2, 1]);
        assert!(g.reverse(2).is_err());
        let h = g.translate(Fe(1)).translate(f.neg(Fe(1)));
        assert_eq!(h, g);
    }
}
