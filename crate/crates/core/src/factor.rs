//! Factorization over F_q: squarefree decomposition, distinct-degree
//! factorization and Cantor-Zassenhaus equal-degree splitting.
//!
//! Results are sorted, so they never depend on the random seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldRef};
use crate::poly::{monic_polys, Poly};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

/// A factorization `f = unit * prod P_i^{e_i}` with `P_i` monic irreducible, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn expand(&self, field: &FieldRef) -> Poly {
        let mut acc = Poly::constant(field, self.unit);
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e as u64);
        }
        acc
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i`, each `g_i` squarefree, monic and pairwise coprime.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("squarefree decomposition of zero".into()));
    }
    let (_, f) = f.make_monic()?;
    let mut out = Vec::new();
    sqf_rec(&f, 1, &mut out)?;
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn sqf_rec(f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    if f.deg() == 0 {
        return Ok(());
    }
    let field = f.field().clone();
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c)?;
        let fac = w.exact_div(&y)?;
        if fac.deg() > 0 {
            out.push((fac, i * mult));
        }
        w = y;
        c = c.exact_div(&w)?;
        i += 1;
    }
    if c.deg() > 0 {
        // c is a p-th power
        let p = field.p() as usize;
        let root: Vec<Fe> = c.coeffs().iter().step_by(p).map(|&a| field.pth_root(a)).collect();
        sqf_rec(&Poly::new(&field, root), mult * field.p(), out)?;
    }
    Ok(())
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(d, g_d)` with `g_d` the product of its irreducible factors of degree `d`.
pub fn distinct_degree(f: &Poly) -> Result<Vec<(usize, Poly)>> {
    let field = f.field().clone();
    let q = field.q() as u64;
    let t = Poly::t(&field);
    let mut rest = f.clone();
    let mut h = t.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest)?;
        let g = (&h - &t).gcd(&rest)?;
        if g.deg() > 0 {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((d, g));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of degree `d` into its factors.
pub fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = g.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == d {
        return Ok(vec![g.clone()]);
    }
    let field = g.field().clone();
    let q = field.q() as u64;
    let one = Poly::one(&field);
    loop {
        let a = Poly::new(&field, (0..n).map(|_| Fe(rng.random_range(0..field.q()))).collect());
        if a.deg() == 0 {
            continue;
        }
        let gg = a.gcd(g)?;
        let split = if gg.deg() > 0 {
            gg
        } else {
            // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q - 1)/2)
            let mut norm = a.clone();
            let mut conj = a.clone();
            for _ in 1..d {
                conj = conj.pow_mod(q, g)?;
                norm = norm.mul_mod(&conj, g)?;
            }
            let b = norm.pow_mod((q - 1) / 2, g)?;
            (&b - &one).gcd(g)?
        };
        if split.deg() > 0 && split.deg() < n {
            let other = g.exact_div(&split)?;
            let mut out = equal_degree(&split, d, rng)?;
            out.extend(equal_degree(&other, d, rng)?);
            return Ok(out);
        }
    }
}

/// Complete factorization with the default seed.
pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_with_seed(f, DEFAULT_SEED)
}

pub fn factor_with_seed(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("factorization of zero".into()));
    }
    let (unit, _) = f.make_monic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (g, e) in squarefree_decomposition(f)? {
        for (d, gd) in distinct_degree(&g)? {
            for p in equal_degree(&gd, d, &mut rng)? {
                factors.push((p, e));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let (_, f) = f.make_monic()?;
    let field = f.field().clone();
    let q = field.q() as u64;
    let t = Poly::t(&field);
    let frob = |k: usize| -> Result<Poly> {
        let mut h = t.clone();
        for _ in 0..k {
            h = h.pow_mod(q, &f)?;
        }
        Ok(h)
    };
    if frob(n)? != t.rem(&f)? {
        return Ok(false);
    }
    for r in prime_divisors(n as u64) {
        let h = frob(n / r as usize)?;
        if (&h - &t).gcd(&f)?.deg() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monic irreducibles of degree `d`, in index order.
pub fn irreducibles(field: &FieldRef, d: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for f in monic_polys(field, d) {
        if is_irreducible(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Number of monic irreducibles of degree `d` over F_q.
pub fn irreducible_count(q: u64, d: usize) -> Result<u128> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let mut s: i128 = 0;
    for e in 1..=d {
        if d % e == 0 {
            let term = (q as i128).checked_pow(e as u32).ok_or_else(|| Error::InvalidParameter("q^d overflows".into()))?;
            s += mobius_int((d / e) as u64) as i128 * term;
        }
    }
    Ok((s / d as i128) as u128)
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Classical Möbius function on positive integers.
pub fn mobius_int(mut n: u64) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn t2_plus_1_over_f5() {
        let f = Field::new(5).unwrap();
        let g = Poly::from_codes(&f, &[1, 0, 1]).unwrap();
        let fac = factor(&g).unwrap();
        let got: Vec<Vec<u32>> = fac.factors.iter().map(|(p, _)| p.codes()).collect();
        assert_eq!(got, vec![vec![2, 1], vec![3, 1]]);
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducible_count(3, 1).unwrap(), 3);
        assert_eq!(irreducible_count(3, 2).unwrap(), 3);
        assert_eq!(irreducible_count(3, 3).unwrap(), 8);
        assert_eq!(irreducible_count(3, 4).unwrap(), 18);
        let f = Field::new(3).unwrap();
        for d in 1..=5 {
            assert_eq!(irreducibles(&f, d).unwrap().len() as u128, irreducible_count(3, d).unwrap());
        }
        let f9 = Field::new(9).unwrap();
        assert_eq!(irreducibles(&f9, 2).unwrap().len() as u128, irreducible_count(9, 2).unwrap());
    }

    #[test]
    fn pth_powers_are_handled() {
        let f = Field::new(3).unwrap();
        // (t + 1)^3 (t^2 + 1)^2 t
        let a = Poly::from_codes(&f, &[1, 1]).unwrap().pow(3);
        let b = Poly::from_codes(&f, &[1, 0, 1]).unwrap().pow(2);
        let g = &(&a * &b) * &Poly::t(&f);
        let fac = factor(&g).unwrap();
        assert_eq!(fac.expand(&f), g);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.big_omega(), 6);
    }

    #[test]
    fn integer_mobius() {
        let mu: Vec<i64> = (1..=12).map(mobius_int).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }
}
