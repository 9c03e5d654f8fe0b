//! Short intervals `I(A; h) = {f : |f - A| <= q^h}` around monic centers,
//! arithmetic progressions, and the involution that exchanges them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldRef;
use crate::poly::{polys_up_to, Poly};

/// `theta_n(f) = t^n f(1/t)` for `deg f <= n`.
pub fn reverse(f: &Poly, n: usize) -> Result<Poly> {
    f.reverse(n)
}

/// `f* = theta_{deg f}(f)`; the zero polynomial maps to itself.
pub fn star(f: &Poly) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    f.reverse(f.deg()).expect("degree bound holds")
}

/// A short interval `{A + g : deg g <= h}` around a monic center of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortInterval {
    center: Poly,
    h: usize,
}

impl ShortInterval {
    pub fn new(center: Poly, h: usize) -> Result<ShortInterval> {
        if !center.is_monic() {
            return Err(Error::InvalidParameter("interval center must be monic".into()));
        }
        let n = center.deg();
        if n < 2 || h > n - 2 {
            return Err(Error::InvalidParameter(format!("need 0 <= h <= n - 2, got n = {n}, h = {h}")));
        }
        Ok(ShortInterval { center, h })
    }

    pub fn field(&self) -> &FieldRef {
        self.center.field()
    }

    pub fn degree(&self) -> usize {
        self.center.deg()
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn center(&self) -> &Poly {
        &self.center
    }

    /// `H = q^{h+1}`.
    pub fn size(&self) -> u64 {
        (self.field().q() as u64).pow(self.h as u32 + 1)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        let d = f.try_sub(&self.center);
        matches!(d, Ok(d) if d.is_zero() || d.deg() <= self.h)
    }

    pub fn members(&self) -> impl Iterator<Item = Poly> + '_ {
        polys_up_to(self.field(), self.h).map(move |g| &self.center + &g)
    }

    /// The canonical label `B` with `I(A; h) = I(t^{h+1} B; h)`.
    pub fn canonical(&self) -> IntervalIndex {
        let coeffs = self.center.coeffs()[self.h + 1..].to_vec();
        IntervalIndex { b: Poly::new(self.field(), coeffs), h: self.h }
    }
}

/// The interval `I(t^{h+1} B; h)` for monic `B`; with the monic index order it
/// is the `B.monic_index()`-th contiguous block of length `q^{h+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalIndex {
    pub b: Poly,
    pub h: usize,
}

impl IntervalIndex {
    pub fn new(b: Poly, h: usize) -> Result<IntervalIndex> {
        if !b.is_monic() || b.deg() < 1 {
            return Err(Error::InvalidParameter("interval label must be monic of positive degree".into()));
        }
        Ok(IntervalIndex { b, h })
    }

    pub fn degree(&self) -> usize {
        self.b.deg() + self.h + 1
    }

    pub fn center(&self) -> Poly {
        self.b.shift_up(self.h + 1)
    }

    pub fn interval(&self) -> ShortInterval {
        ShortInterval { center: self.center(), h: self.h }
    }

    pub fn block(&self) -> u64 {
        self.b.monic_index().expect("label is monic")
    }

    /// The progression `theta_n(I) = {g : deg g <= n, g = theta_{n-h-1}(B) mod t^{n-h}}`.
    pub fn to_progression(&self) -> ProgressionSpec {
        let n = self.degree();
        let m = n - self.h;
        let residue = self.b.reverse(m - 1).expect("degree bound holds");
        let modulus = Poly::monomial(self.b.field(), crate::field::Fe::ONE, m);
        ProgressionSpec { modulus, residue, max_degree: n }
    }
}

/// Every interval of degree `n` and size `q^{h+1}`, in block order.
pub fn all_intervals(field: &FieldRef, n: usize, h: usize) -> Result<impl Iterator<Item = IntervalIndex> + '_> {
    if n < 2 || h > n - 2 {
        return Err(Error::InvalidParameter(format!("need 0 <= h <= n - 2, got n = {n}, h = {h}")));
    }
    let m = n - h - 1;
    Ok(crate::poly::monic_polys(field, m).map(move |b| IntervalIndex { b, h }))
}

/// `{g : deg g <= max_degree, g = residue mod modulus}`, zero included when it qualifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressionSpec {
    pub modulus: Poly,
    pub residue: Poly,
    pub max_degree: usize,
}

impl ProgressionSpec {
    pub fn new(modulus: Poly, residue: Poly, max_degree: usize) -> Result<ProgressionSpec> {
        if modulus.deg() < 1 || !modulus.is_monic() {
            return Err(Error::InvalidParameter("progression modulus must be monic of positive degree".into()));
        }
        let residue = residue.rem(&modulus)?;
        if max_degree < modulus.deg() {
            return Err(Error::InvalidParameter("degree cap below the modulus degree".into()));
        }
        Ok(ProgressionSpec { modulus, residue, max_degree })
    }

    pub fn contains(&self, g: &Poly) -> bool {
        (g.is_zero() || g.deg() <= self.max_degree) && matches!(g.try_sub(&self.residue).and_then(|d| d.rem(&self.modulus)), Ok(r) if r.is_zero())
    }

    /// Members `residue + modulus * s` for `deg s <= max_degree - deg modulus`.
    pub fn members(&self) -> impl Iterator<Item = Poly> + '_ {
        let free = self.max_degree - self.modulus.deg();
        polys_up_to(self.modulus.field(), free).map(move |s| &self.residue + &(&self.modulus * &s))
    }
}

/// Serializable description of an interval.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IntervalDesc {
    pub center: String,
    pub h: usize,
}

impl From<&ShortInterval> for IntervalDesc {
    fn from(i: &ShortInterval) -> Self {
        IntervalDesc { center: i.center.to_text(), h: i.h }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::monic_polys;
    use std::collections::HashSet;

    #[test]
    fn intervals_partition_monic_polys() {
        let f = Field::new(3).unwrap();
        let (n, h) = (4, 1);
        let mut seen = HashSet::new();
        for idx in all_intervals(&f, n, h).unwrap() {
            let iv = idx.interval();
            assert_eq!(iv.members().count() as u64, iv.size());
            for g in iv.members() {
                assert!(seen.insert(g));
            }
        }
        assert_eq!(seen.len(), 81);
    }

    #[test]
    fn canonical_label_and_block() {
        let f = Field::new(5).unwrap();
        let a = Poly::from_codes(&f, &[3, 4, 2, 1]).unwrap();
        let iv = ShortInterval::new(a.clone(), 1).unwrap();
        let c = iv.canonical();
        assert_eq!(c.b.codes(), vec![2, 1]);
        assert!(c.interval().contains(&a));
        let first = c.interval().members().map(|g| g.monic_index().unwrap()).min().unwrap();
        assert_eq!(first, c.block() * 25);
    }

    #[test]
    fn involution_maps_interval_onto_progression() {
        let f = Field::new(3).unwrap();
        let (n, h) = (5, 1);
        for b in monic_polys(&f, n - h - 1) {
            let idx = IntervalIndex::new(b, h).unwrap();
            let ap = idx.to_progression();
            let image: HashSet<Poly> = idx.interval().members().map(|g| reverse(&g, n).unwrap()).collect();
            let members: HashSet<Poly> = ap.members().collect();
            assert_eq!(image, members);
        }
    }

    #[test]
    fn rejects_out_of_range_h() {
        let f = Field::new(3).unwrap();
        let a = Poly::monomial(&f, crate::field::Fe::ONE, 3);
        assert!(ShortInterval::new(a, 2).is_err());
    }
}
