//! Finite fields F_q with q = p^k, p an odd prime.
//!
//! Elements are encoded as integer codes `c = sum_i a_i p^i` where `(a_i)` are
//! the coordinates in the power basis of the defining modulus. Code 0 is zero
//! and code 1 is one. All arithmetic goes through precomputed tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field size for which tables are built.
pub const MAX_Q: u32 = 1024;

/// A field element, stored as its integer code.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to a field.
pub type FieldRef = Arc<Field>;

pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    chi2: Vec<i8>,
    generator: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k`, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl Field {
    /// The field with `q` elements, using the default modulus when `q` is not prime.
    pub fn new(q: u32) -> Result<FieldRef> {
        let (p, k) = prime_power(q).ok_or(Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::with_degree(p, k)
    }

    /// F_p[t]/(m) with `m` the first monic irreducible of degree `k` in code order.
    pub fn with_degree(p: u32, k: u32) -> Result<FieldRef> {
        Self::check_params(p, k)?;
        if k == 1 {
            return Self::build(p, vec![0, 1]);
        }
        let count = p.pow(k);
        for code in 0..count {
            let mut m: Vec<u32> = (0..k).map(|i| (code / p.pow(i)) % p).collect();
            m.push(1);
            if prime_field_irreducible(p, &m) {
                return Self::build(p, m);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// F_p[t]/(m) for an explicit monic modulus given lowest coefficient first.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<FieldRef> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let k = (modulus.len() - 1) as u32;
        Self::check_params(p, k)?;
        if modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic with coefficients in [0, p)".into()));
        }
        if k > 1 && !prime_field_irreducible(p, modulus) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible mod {p}")));
        }
        if k == 1 {
            // any monic linear modulus defines the same prime field
            return Self::build(p, vec![0, 1]);
        }
        Self::build(p, modulus.to_vec())
    }

    fn check_params(p: u32, k: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        match p.checked_pow(k) {
            Some(q) if q <= MAX_Q => Ok(()),
            _ => Err(Error::InvalidField(format!("{p}^{k} exceeds the supported size {MAX_Q}"))),
        }
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<FieldRef> {
        let k = (modulus.len() - 1) as u32;
        let q = p.pow(k);
        let qs = q as usize;
        let coords = |c: u32| -> Vec<u32> { (0..k).map(|i| (c / p.pow(i)) % p).collect() };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &a| acc * p + a) };

        let mut add = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        for a in 0..q {
            let ca = coords(a);
            neg[a as usize] = encode(&ca.iter().map(|&x| (p - x) % p).collect::<Vec<_>>());
            for b in 0..q {
                let cb = coords(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&s);
            }
        }

        let mut mul = vec![0u32; qs * qs];
        let kk = k as usize;
        for a in 0..q {
            let ca = coords(a);
            for b in a..q {
                let cb = coords(b);
                let mut prod = vec![0u32; 2 * kk - 1];
                for i in 0..kk {
                    for j in 0..kk {
                        prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
                    }
                }
                for d in (kk..prod.len()).rev() {
                    let c = prod[d];
                    if c != 0 {
                        for i in 0..kk {
                            let sub = (c * modulus[i]) % p;
                            prod[d - kk + i] = (prod[d - kk + i] + p - sub) % p;
                        }
                        prod[d] = 0;
                    }
                }
                let r = encode(&prod[..kk]);
                mul[a as usize * qs + b as usize] = r;
                mul[b as usize * qs + a as usize] = r;
            }
        }

        let mut inv = vec![0u32; qs];
        for a in 1..q {
            for b in 1..q {
                if mul[a as usize * qs + b as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }

        let mut chi2 = vec![0i8; qs];
        for a in 1..q {
            let sq = mul[a as usize * qs + a as usize];
            chi2[sq as usize] = 1;
        }
        for c in chi2.iter_mut().skip(1) {
            if *c == 0 {
                *c = -1;
            }
        }

        let order = |g: u32| {
            let (mut x, mut e) = (g, 1);
            while x != 1 {
                x = mul[x as usize * qs + g as usize];
                e += 1;
            }
            e
        };
        let generator = (1..q).find(|&g| order(g) == q - 1).unwrap();

        Ok(Arc::new(Field { p, k, q, modulus, add, mul, neg, inv, chi2, generator }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining modulus over F_p, lowest coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn units(&self) -> impl Iterator<Item = Fe> {
        (1..self.q).map(Fe)
    }

    pub fn elem(&self, code: u32) -> Result<Fe> {
        if code < self.q {
            Ok(Fe(code))
        } else {
            Err(Error::InvalidField(format!("code {code} is not an element of F_{}", self.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        (0..self.k).map(|i| (a.0 / self.p.pow(i)) % self.p).collect()
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            Err(Error::ZeroDivisor)
        } else {
            Ok(Fe(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: 0 at zero, 1 on nonzero squares, -1 otherwise.
    pub fn chi2(&self, a: Fe) -> i8 {
        self.chi2[a.0 as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        Fe(self.generator)
    }

    /// Frobenius-inverse: the unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: Fe) -> Fe {
        self.pow(a, (self.q / self.p) as u64)
    }

    #[inline]
    pub(crate) fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    #[inline]
    pub(crate) fn add_table(&self) -> &[u32] {
        &self.add
    }

    #[inline]
    pub(crate) fn neg_table(&self) -> &[u32] {
        &self.neg
    }
}

/// Irreducibility over F_p of a monic polynomial given lowest-first, by trial division.
fn prime_field_irreducible(p: u32, m: &[u32]) -> bool {
    let n = m.len() - 1;
    if n <= 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g: Vec<u32> = (0..d).map(|i| (code / p.pow(i as u32)) % p).collect();
            g.push(1);
            if prime_field_rem_is_zero(p, m, &g) {
                return false;
            }
        }
    }
    true
}

fn prime_field_rem_is_zero(p: u32, a: &[u32], monic: &[u32]) -> bool {
    let mut r = a.to_vec();
    let dg = monic.len() - 1;
    for d in (dg..r.len()).rev() {
        let c = r[d];
        if c != 0 {
            for i in 0..=dg {
                r[d - dg + i] = (r[d - dg + i] + p * p - c * monic[i]) % p;
            }
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_default_modulus_is_t2_plus_1() {
        let f = Field::new(9).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // t * t = -1 = 2
        assert_eq!(f.mul(Fe(3), Fe(3)), Fe(2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::new(2).is_err());
        assert!(Field::new(6).is_err());
        assert!(Field::new(2048).is_err());
        assert!(Field::with_modulus(3, &[0, 0, 1]).is_err());
    }

    #[test]
    fn inverses_and_generator() {
        for q in [3, 5, 7, 9, 25, 27] {
            let f = Field::new(q).unwrap();
            for a in f.units() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            }
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = Fe::ONE;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, q - 1);
            let squares = f.units().filter(|&a| f.chi2(a) == 1).count();
            assert_eq!(squares as u32, (q - 1) / 2);
        }
    }
}
