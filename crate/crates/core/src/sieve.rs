//! Möbius values of every monic polynomial of a fixed degree.
//!
//! Monic `f` of degree `n` is stored at index `sum_{j<n} f_j q^j`. The sieve
//! marks multiples of each irreducible `P` with `deg P <= n/2` and of each
//! `P^2`; whatever is left after dividing out the small primes is either 1 or a
//! single prime of degree `> n/2`. The table is split into chunks sharing their
//! top coefficients, and the chunks are processed in parallel.

use rayon::prelude::*;

use crate::arith::ArithFn;
use crate::budget::{qpow, Budget};
use crate::error::{Error, Result};
use crate::factor::irreducibles;
use crate::field::{Fe, FieldRef};
use crate::poly::Poly;

const DEG_MASK: u8 = 0x3f;
const PARITY: u8 = 0x40;
const SQUAREFUL: u8 = 0x80;

/// Largest supported degree; the degree accumulator has six bits.
pub const MAX_DEGREE: usize = 40;

const TARGET_CHUNK: usize = 1 << 15;

pub struct MobiusTable {
    field: FieldRef,
    n: usize,
    values: Vec<i8>,
}

impl MobiusTable {
    pub fn build(field: &FieldRef, n: usize, budget: &Budget) -> Result<MobiusTable> {
        if n > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let size = qpow(field.q(), n)?;
        budget.check_polys(&format!("Möbius table for degree {n}"), size)?;
        let size = size as usize;
        let q = field.q() as usize;

        let mut marks: Vec<(Poly, u8)> = Vec::new();
        for e in 1..=n / 2 {
            for p in irreducibles(field, e)? {
                if 2 * e <= n {
                    marks.push((p.pow(2), SQUAREFUL));
                }
                marks.push((p, e as u8));
            }
        }
        let marks: Vec<(Vec<u32>, u8)> = marks.into_iter().map(|(p, tag)| (p.codes(), tag)).collect();

        let mut k = 0;
        while k < n && size / q.pow(k as u32 + 1) >= TARGET_CHUNK {
            k += 1;
        }
        let chunk_len = q.pow((n - k) as u32);
        let mut state = vec![0u8; size];
        state.par_chunks_mut(chunk_len).enumerate().for_each(|(c, chunk)| {
            let top: Vec<u32> = (0..k).map(|j| ((c / q.pow(j as u32)) % q) as u32).collect();
            let sieve = ChunkSieve::new(field, n, k, &top);
            for (p, tag) in &marks {
                if *tag == SQUAREFUL {
                    sieve.for_each_multiple(p, |i| chunk[i] |= SQUAREFUL);
                } else {
                    let e = *tag;
                    sieve.for_each_multiple(p, |i| chunk[i] = (chunk[i] + e) ^ PARITY);
                }
            }
        });

        let values = state
            .into_iter()
            .map(|s| {
                if s & SQUAREFUL != 0 {
                    0
                } else {
                    let odd = (s & PARITY != 0) ^ (((s & DEG_MASK) as usize) < n);
                    if odd {
                        -1
                    } else {
                        1
                    }
                }
            })
            .collect();
        Ok(MobiusTable { field: field.clone(), n, values })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn get(&self, f: &Poly) -> Result<i8> {
        if f.deg() != self.n {
            return Err(Error::InvalidParameter(format!("degree {} polynomial in a degree {} table", f.deg(), self.n)));
        }
        Ok(self.values[f.monic_index()? as usize])
    }

    /// Values of a built-in arithmetic function in index order.
    pub fn alpha_values(&self, alpha: &ArithFn) -> Result<Vec<i8>> {
        match alpha {
            ArithFn::Mu => Ok(self.values.clone()),
            ArithFn::Mu2 => Ok(self.values.iter().map(|&m| (m != 0) as i8).collect()),
            ArithFn::One => Ok(vec![1; self.values.len()]),
            ArithFn::Custom { .. } => Err(Error::InvalidParameter("custom functions have no table".into())),
        }
    }

    pub fn sum(&self, alpha: &ArithFn) -> Result<i64> {
        Ok(self.alpha_values(alpha)?.iter().map(|&v| v as i64).sum())
    }
}

/// Values of any arithmetic function over all monic polynomials of degree `n`.
pub fn alpha_table(field: &FieldRef, n: usize, alpha: &ArithFn, budget: &Budget) -> Result<Vec<i64>> {
    if alpha.is_builtin() {
        let t = MobiusTable::build(field, n, budget)?;
        return Ok(t.alpha_values(alpha)?.into_iter().map(i64::from).collect());
    }
    let size = qpow(field.q(), n)?;
    budget.check_polys(&format!("{} over degree {n}", alpha.name()), size)?;
    (0..size as u64).map(|i| alpha.eval(&Poly::from_monic_index(field, n, i))).collect()
}

struct ChunkSieve<'a> {
    field: &'a FieldRef,
    n: usize,
    k: usize,
    top: &'a [u32],
    pw: Vec<i64>,
}

impl<'a> ChunkSieve<'a> {
    /// `top[j]` is coefficient `n - k + j` shared by the chunk.
    fn new(field: &'a FieldRef, n: usize, k: usize, top: &'a [u32]) -> Self {
        let q = field.q() as i64;
        let pw = (0..n).map(|d| q.pow(d as u32)).collect();
        ChunkSieve { field, n, k, top, pw }
    }

    fn top_digit(&self, d: usize) -> u32 {
        self.top[d - (self.n - self.k)]
    }

    /// Calls `mark` with the chunk-local index of every multiple `p * g` in the chunk.
    fn for_each_multiple(&self, p: &[u32], mut mark: impl FnMut(usize)) {
        let f = self.field;
        let (n, k) = (self.n, self.k);
        let e = p.len() - 1;
        let m = n - e;
        let q = f.q();
        let mul = f.mul_table();
        let add = f.add_table();
        let neg = f.neg_table();
        let qs = q as usize;
        let fmul = |a: u32, b: u32| mul[a as usize * qs + b as usize];
        let fadd = |a: u32, b: u32| add[a as usize * qs + b as usize];

        let mut g = vec![0u32; m + 1];
        g[m] = 1;
        for j in 1..=k.min(m) {
            let mut s = self.top_digit(n - j);
            for i in 1..=e.min(j) {
                s = fadd(s, neg[fmul(p[e - i], g[m - j + i]) as usize]);
            }
            g[m - j] = s;
        }
        for j in m + 1..=k {
            let mut s = 0;
            for i in (j - m)..=e.min(j) {
                s = fadd(s, fmul(p[e - i], g[i + m - j]));
            }
            if s != self.top_digit(n - j) {
                return;
            }
        }

        let low = n - k;
        let mut fd = vec![0u32; low];
        for (a, &pa) in p.iter().enumerate() {
            for (b, &gb) in g.iter().enumerate() {
                if a + b < low {
                    fd[a + b] = fadd(fd[a + b], fmul(pa, gb));
                }
            }
        }
        let mut idx: i64 = fd.iter().enumerate().map(|(d, &c)| c as i64 * self.pw[d]).sum();

        let free = m.saturating_sub(k);
        // delta[c * (e + 1) + a] = ((c + 1) - c) * p_a, codes taken mod q
        let mut delta = vec![0u32; qs * (e + 1)];
        for c in 0..q {
            let nc = (c + 1) % q;
            let dc = fadd(nc, neg[c as usize]);
            for a in 0..=e {
                delta[c as usize * (e + 1) + a] = fmul(dc, p[a]);
            }
        }

        loop {
            mark(idx as usize);
            let mut i = 0;
            loop {
                if i == free {
                    return;
                }
                let c = g[i];
                let row = &delta[c as usize * (e + 1)..(c as usize + 1) * (e + 1)];
                for (a, &dv) in row.iter().enumerate() {
                    let d = i + a;
                    let old = fd[d];
                    let new = fadd(old, dv);
                    fd[d] = new;
                    idx += (new as i64 - old as i64) * self.pw[d];
                }
                let nc = (c + 1) % q;
                g[i] = nc;
                if nc != 0 {
                    break;
                }
                i += 1;
            }
        }
    }
}

/// Digit permutation `low -> low + j` on the lowest `h + 1` coefficients.
pub fn translation_permutation(field: &FieldRef, h: usize, j: &Poly) -> Vec<u32> {
    let q = field.q();
    let size = q.pow(h as u32 + 1);
    (0..size)
        .map(|x| {
            let mut code = 0u32;
            let mut pw = 1u32;
            let mut rest = x;
            for d in 0..=h {
                let digit = Fe(rest % q);
                rest /= q;
                code += field.add(digit, j.coeff(d)).0 * pw;
                pw *= q;
            }
            code
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mobius;
    use crate::field::Field;

    #[test]
    fn sieve_matches_factorization() {
        for (q, n) in [(3, 1), (3, 2), (3, 5), (5, 4), (9, 3), (7, 3), (25, 2)] {
            let f = Field::new(q).unwrap();
            let table = MobiusTable::build(&f, n, &Budget::default()).unwrap();
            for (i, &v) in table.values().iter().enumerate() {
                let p = Poly::from_monic_index(&f, n, i as u64);
                assert_eq!(v, mobius(&p).unwrap(), "q={q} f={p}");
            }
        }
    }

    #[test]
    fn sieve_with_many_chunks() {
        let f = Field::new(3).unwrap();
        let table = MobiusTable::build(&f, 11, &Budget::default()).unwrap();
        for i in (0..table.len()).step_by(997) {
            let p = Poly::from_monic_index(&f, 11, i as u64);
            assert_eq!(table.values()[i], mobius(&p).unwrap());
        }
        assert_eq!(table.sum(&ArithFn::Mu).unwrap(), 0);
        assert_eq!(table.sum(&ArithFn::Mu2).unwrap(), 2 * 3i64.pow(10));
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::new(13).unwrap();
        let err = MobiusTable::build(&f, 9, &Budget::default()).err().unwrap();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
