//! The unit group `(F_q[t]/Q)^*` with an explicit invariant-factor basis.
//!
//! Residues of degree `< deg Q` are encoded as `sum_i c_i q^i`. Every unit gets
//! a discrete logarithm: its coordinate vector `y` with respect to generators
//! `b_j` of orders `d_1 | d_2 | ...`, flattened as `sum_j y_j s_j` with
//! `s_0 = 1` and `s_{j+1} = s_j d_j`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::snf::smith;
use crate::budget::{qpow, Budget};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{Fe, FieldRef};
use crate::poly::Poly;

pub const NONUNIT: u32 = u32::MAX;

const BASIS_SEED: u64 = 0x6a09_e667_f3bc_c909;

/// Arithmetic in `F_q[t]/Q` on residue codes.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    field: FieldRef,
    modulus: Poly,
    d: usize,
}

impl ResidueRing {
    pub fn new(modulus: &Poly) -> Result<ResidueRing> {
        if !modulus.is_monic() || modulus.deg() < 1 {
            return Err(Error::InvalidParameter("modulus must be monic of positive degree".into()));
        }
        Ok(ResidueRing { field: modulus.field().clone(), modulus: modulus.clone(), d: modulus.deg() })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> u64 {
        (self.field.q() as u64).pow(self.d as u32)
    }

    pub fn decode(&self, mut code: u64, out: &mut [u32]) {
        let q = self.field.q() as u64;
        for c in out.iter_mut().take(self.d) {
            *c = (code % q) as u32;
            code /= q;
        }
    }

    pub fn encode(&self, digits: &[u32]) -> u64 {
        let q = self.field.q() as u64;
        digits[..self.d].iter().rev().fold(0, |acc, &c| acc * q + c as u64)
    }

    /// Reduces a coefficient vector of any length in place; the result sits in `v[..d]`.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        let m = self.modulus.coeffs();
        for top in (self.d..v.len()).rev() {
            let c = Fe(v[top]);
            if c.is_zero() {
                continue;
            }
            for i in 0..self.d {
                let j = top - self.d + i;
                v[j] = f.sub(Fe(v[j]), f.mul(c, m[i])).0;
            }
            v[top] = 0;
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let d = self.d;
        let mut x = vec![0u32; d];
        let mut y = vec![0u32; d];
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        let f = &self.field;
        let mut prod = vec![0u32; 2 * d - 1];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = f.add(Fe(prod[i + j]), f.mul(Fe(x[i]), Fe(y[j]))).0;
            }
        }
        self.reduce(&mut prod);
        self.encode(&prod)
    }

    pub fn residue(&self, f: &Poly) -> Result<u64> {
        Ok(f.rem(&self.modulus)?.residue_code())
    }

    pub fn poly(&self, code: u64) -> Poly {
        Poly::from_residue_code(&self.field, code)
    }
}

/// Which of the two supported modulus families a modulus belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ModulusKind {
    /// `t^m` with `m >= 2`.
    TPower,
    /// Squarefree of degree at least 2.
    Squarefree,
}

pub struct UnitGroup {
    field: FieldRef,
    modulus: Poly,
    kind: ModulusKind,
    primes: Vec<Poly>,
    ring: ResidueRing,
    order: u64,
    dims: Vec<u64>,
    strides: Vec<u64>,
    dlog: Vec<u32>,
    elements: Vec<u32>,
    scalar_gen: u64,
    kernels: Vec<Vec<u64>>,
}

impl std::fmt::Debug for UnitGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnitGroup").field("modulus", &self.modulus).field("dims", &self.dims).finish()
    }
}

impl UnitGroup {
    pub fn new(modulus: &Poly, budget: &Budget) -> Result<UnitGroup> {
        let field = modulus.field().clone();
        if !modulus.is_monic() {
            return Err(Error::UnsupportedModulus("modulus must be monic".into()));
        }
        let d = modulus.deg();
        if d < 2 {
            return Err(Error::UnsupportedModulus("modulus degree must be at least 2".into()));
        }
        let fac = factor(modulus)?;
        let kind = if fac.factors.len() == 1 && fac.factors[0].0 == Poly::t(&field) {
            ModulusKind::TPower
        } else if fac.is_squarefree() {
            ModulusKind::Squarefree
        } else {
            return Err(Error::UnsupportedModulus(format!(
                "{modulus} is neither a power of t nor squarefree"
            )));
        };
        let q = field.q() as u64;
        let order: u64 = fac
            .factors
            .iter()
            .map(|(p, e)| {
                let np = q.pow(p.deg() as u32);
                np.pow(*e - 1) * (np - 1)
            })
            .product();
        budget.check_characters(&format!("characters mod {modulus}"), order as u128)?;
        let size = qpow(field.q(), d)?;
        budget.check_polys(&format!("residues mod {modulus}"), size)?;
        let primes: Vec<Poly> = fac.factors.iter().map(|(p, _)| p.clone()).collect();
        let ring = ResidueRing::new(modulus)?;
        let size = size as u64;

        let is_unit: Vec<bool> = match kind {
            ModulusKind::TPower => (0..size).map(|c| c % q != 0).collect(),
            ModulusKind::Squarefree => (0..size)
                .map(|c| {
                    let r = ring.poly(c);
                    !r.is_zero() && primes.iter().all(|p| !r.rem(p).unwrap().is_zero())
                })
                .collect(),
        };

        // grow a subgroup one random generator at a time
        let mut rng = ChaCha8Rng::seed_from_u64(BASIS_SEED);
        let mut coord = vec![NONUNIT; size as usize];
        coord[1] = 0;
        let mut list: Vec<u64> = vec![1];
        let mut radix: Vec<u64> = Vec::new();
        let mut relations: Vec<Vec<i128>> = Vec::new();
        while (list.len() as u64) < order {
            let g = loop {
                let c = rng.random_range(0..size);
                if is_unit[c as usize] && coord[c as usize] == NONUNIT {
                    break c;
                }
            };
            let mut x = g;
            let mut k = 1u64;
            while coord[x as usize] == NONUNIT {
                x = ring.mul(x, g);
                k += 1;
            }
            let landing = coord[x as usize] as u64;
            let old = list.len() as u64;
            let mut gp = 1u64;
            for j in 1..k {
                gp = ring.mul(gp, g);
                for i in 0..old {
                    let e = ring.mul(gp, list[i as usize]);
                    coord[e as usize] = (i + j * old) as u32;
                    list.push(e);
                }
            }
            let mut row: Vec<i128> = Vec::with_capacity(radix.len() + 1);
            let mut rest = landing;
            for &r in &radix {
                row.push(-((rest % r) as i128));
                rest /= r;
            }
            row.push(k as i128);
            relations.push(row);
            radix.push(k);
        }

        let r = radix.len();
        let mat: Vec<Vec<i128>> = relations
            .iter()
            .map(|row| (0..r).map(|j| row.get(j).copied().unwrap_or(0)).collect())
            .collect();
        let (diag, v) = smith(mat);
        let keep: Vec<usize> = (0..r).filter(|&j| diag[j] > 1).collect();
        let dims: Vec<u64> = keep.iter().map(|&j| diag[j] as u64).collect();
        let mut strides = Vec::with_capacity(dims.len());
        let mut s = 1u64;
        for &dj in &dims {
            strides.push(s);
            s *= dj;
        }
        if s != order {
            return Err(Error::Numerical(format!("invariant factors multiply to {s}, expected {order}")));
        }
        let vk: Vec<Vec<i128>> = (0..r)
            .map(|i| keep.iter().zip(&dims).map(|(&j, &dj)| v[i][j].rem_euclid(dj as i128)).collect())
            .collect();

        let mut dlog = vec![NONUNIT; size as usize];
        let mut elements = vec![NONUNIT; order as usize];
        let mut x = vec![0i128; r];
        for (old_flat, &code) in list.iter().enumerate() {
            let mut rest = old_flat as u64;
            for (i, &rd) in radix.iter().enumerate() {
                x[i] = (rest % rd) as i128;
                rest /= rd;
            }
            let mut flat = 0u64;
            for (jj, &dj) in dims.iter().enumerate() {
                let y: i128 = (0..r).map(|i| x[i] * vk[i][jj]).sum::<i128>().rem_euclid(dj as i128);
                flat += y as u64 * strides[jj];
            }
            if elements[flat as usize] != NONUNIT {
                return Err(Error::Numerical("discrete logarithm map is not injective".into()));
            }
            elements[flat as usize] = code as u32;
            dlog[code as usize] = flat as u32;
        }

        let scalar = field.primitive_element().0 as u64;
        let scalar_gen = dlog[scalar as usize] as u64;

        let mut group = UnitGroup {
            field,
            modulus: modulus.clone(),
            kind,
            primes,
            ring,
            order,
            dims,
            strides,
            dlog,
            elements,
            scalar_gen,
            kernels: Vec::new(),
        };
        group.kernels = group.primes.iter().map(|p| group.kernel_generators(p)).collect::<Result<_>>()?;
        Ok(group)
    }

    /// Generators of the kernel of reduction to `Q / P`.
    fn kernel_generators(&self, p: &Poly) -> Result<Vec<u64>> {
        let cofactor = self.modulus.exact_div(p)?;
        let dp = p.deg();
        let one = Poly::one(&self.field);
        let mut members = Vec::new();
        for s in 0..(self.field.q() as u64).pow(dp as u32) {
            let r = &one + &(&cofactor * &Poly::from_residue_code(&self.field, s));
            let code = self.ring.residue(&r)?;
            let l = self.dlog[code as usize];
            if l != NONUNIT {
                members.push(l as u64);
            }
        }
        let mut in_sub = vec![false; self.order as usize];
        in_sub[0] = true;
        let mut sub = vec![0u64];
        let mut gens = Vec::new();
        for &m in &members {
            if in_sub[m as usize] {
                continue;
            }
            gens.push(m);
            let mut frontier = sub.clone();
            loop {
                let next: Vec<u64> =
                    frontier.iter().map(|&a| self.log_add(a, m)).filter(|&b| !in_sub[b as usize]).collect();
                if next.is_empty() {
                    break;
                }
                for &b in &next {
                    in_sub[b as usize] = true;
                    sub.push(b);
                }
                frontier = next;
            }
        }
        Ok(gens)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn kind(&self) -> ModulusKind {
        self.kind
    }

    pub fn prime_factors(&self) -> &[Poly] {
        &self.primes
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.ring.degree()
    }

    /// `Phi(Q)`, the number of units and of characters.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Invariant factors `d_1 | d_2 | ...`.
    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn strides(&self) -> &[u64] {
        &self.strides
    }

    /// Exponent of the group, `lcm(d_j)`.
    pub fn exponent(&self) -> u64 {
        self.dims.last().copied().unwrap_or(1)
    }

    /// Basis element `b_j` as a residue code.
    pub fn generator(&self, j: usize) -> u64 {
        self.elements[self.strides[j] as usize] as u64
    }

    /// Discrete log (flat coordinates) of a residue code, or `None` for non-units.
    #[inline]
    pub fn dlog(&self, code: u64) -> Option<u64> {
        match self.dlog[code as usize] {
            NONUNIT => None,
            l => Some(l as u64),
        }
    }

    pub fn dlog_table(&self) -> &[u32] {
        &self.dlog
    }

    pub fn element(&self, flat: u64) -> u64 {
        self.elements[flat as usize] as u64
    }

    pub fn digits(&self, flat: u64) -> Vec<u64> {
        self.dims.iter().zip(&self.strides).map(|(&d, &s)| (flat / s) % d).collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        digits.iter().zip(&self.strides).zip(&self.dims).map(|((&y, &s), &d)| (y % d) * s).sum()
    }

    /// Flat index of the product of two elements given by flat index.
    pub fn log_add(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for (&d, &s) in self.dims.iter().zip(&self.strides) {
            out += (((a / s) % d + (b / s) % d) % d) * s;
        }
        out
    }

    pub fn log_scale(&self, a: u64, k: u64) -> u64 {
        let mut out = 0;
        for (&d, &s) in self.dims.iter().zip(&self.strides) {
            out += (((a / s) % d) * (k % d) % d) * s;
        }
        out
    }

    /// Flat log of a generator of the scalar subgroup `F_q^*`.
    pub fn scalar_generator(&self) -> u64 {
        self.scalar_gen
    }

    /// Generators of the kernels of reduction to each maximal proper divisor.
    pub fn kernel_generators_all(&self) -> &[Vec<u64>] {
        &self.kernels
    }

    /// Residue code of a polynomial, reduced mod Q.
    pub fn residue(&self, f: &Poly) -> Result<u64> {
        f.check_field(&self.modulus)?;
        self.ring.residue(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn group_orders() {
        let f = Field::new(3).unwrap();
        let t3 = Poly::monomial(&f, Fe::ONE, 3);
        let g = UnitGroup::new(&t3, &Budget::default()).unwrap();
        assert_eq!(g.order(), 18);
        assert_eq!(g.dims().iter().product::<u64>(), 18);
        let b = Budget::default();
        let sq = Poly::from_codes(&f, &[0, 1, 1]).unwrap(); // t(t+1)
        assert_eq!(UnitGroup::new(&sq, &b).unwrap().order(), 4);
        let bad = Poly::from_codes(&f, &[0, 1, 2, 1]).unwrap(); // t(t+1)^2
        assert!(matches!(UnitGroup::new(&bad, &b), Err(Error::UnsupportedModulus(_))));
    }

    #[test]
    fn dlog_is_a_homomorphism() {
        for q in [3, 5, 9] {
            let f = Field::new(q).unwrap();
            for m in [Poly::monomial(&f, Fe::ONE, 3), Poly::from_codes(&f, &[1, 0, 0, 1]).unwrap()] {
                let Ok(g) = UnitGroup::new(&m, &Budget::default()) else { continue };
                let ring = g.ring();
                for a in (0..ring.size()).step_by(7) {
                    for b in (0..ring.size()).step_by(5) {
                        if let (Some(la), Some(lb)) = (g.dlog(a), g.dlog(b)) {
                            assert_eq!(g.dlog(ring.mul(a, b)), Some(g.log_add(la, lb)));
                        }
                    }
                }
            }
        }
    }
}
