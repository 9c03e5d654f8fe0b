//! Dirichlet characters as exponent vectors on the invariant-factor basis.
//!
//! Character `a` (flat index in the same mixed radix as the group) sends the
//! unit with coordinates `y` to `exp(2 pi i sum_j a_j y_j / d_j)`.

use num_complex::Complex64;
use serde::Serialize;

use super::group::UnitGroup;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// `exp(2 pi i k / l)` for `k < l`.
#[derive(Clone, Debug)]
pub struct RootTable {
    l: u64,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(l: u64) -> RootTable {
        let roots = (0..l)
            .map(|k| {
                let x = std::f64::consts::TAU * k as f64 / l as f64;
                Complex64::new(x.cos(), x.sin())
            })
            .collect();
        RootTable { l, roots }
    }

    #[inline]
    pub fn get(&self, k: u64) -> Complex64 {
        self.roots[(k % self.l) as usize]
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CharacterInfo {
    pub index: u64,
    pub exponents: Vec<u64>,
    pub order: u64,
    pub even: bool,
    pub primitive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterGroupInfo {
    pub modulus: String,
    pub order: u64,
    pub basis_orders: Vec<u64>,
    pub basis: Vec<String>,
    pub characters: Vec<CharacterInfo>,
}

impl UnitGroup {
    pub fn check_character(&self, chi: u64) -> Result<()> {
        if chi < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("character index {chi} out of range for a group of order {}", self.order())))
        }
    }

    /// `chi(g)` as an exponent `k` of `exp(2 pi i k / L)`, `L` the group exponent.
    #[inline]
    pub fn char_exponent(&self, chi: u64, g: u64) -> u64 {
        let l = self.exponent();
        let mut acc = 0u64;
        for (&d, &s) in self.dims().iter().zip(self.strides()) {
            let a = (chi / s) % d;
            let y = (g / s) % d;
            acc = (acc + (a * y % d) * (l / d)) % l;
        }
        acc
    }

    pub fn root_table(&self) -> RootTable {
        RootTable::new(self.exponent())
    }

    /// `chi(r)` for a residue code, zero on non-units.
    pub fn char_value_code(&self, chi: u64, code: u64, roots: &RootTable) -> Complex64 {
        match self.dlog(code) {
            Some(g) => roots.get(self.char_exponent(chi, g)),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn char_value(&self, chi: u64, f: &Poly) -> Result<Complex64> {
        self.check_character(chi)?;
        let code = self.residue(f)?;
        Ok(self.char_value_code(chi, code, &self.root_table()))
    }

    pub fn is_trivial(&self, chi: u64) -> bool {
        chi == 0
    }

    pub fn is_even(&self, chi: u64) -> bool {
        self.char_exponent(chi, self.scalar_generator()) == 0
    }

    /// Primitive iff nontrivial on the kernel of reduction to every maximal proper divisor.
    pub fn is_primitive(&self, chi: u64) -> bool {
        self.kernel_generators_all()
            .iter()
            .all(|gens| gens.iter().any(|&g| self.char_exponent(chi, g) != 0))
    }

    pub fn char_order(&self, chi: u64) -> u64 {
        use num_integer::Integer;
        self.dims()
            .iter()
            .zip(self.strides())
            .map(|(&d, &s)| d / ((chi / s) % d).gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Flat index of `chi^k`.
    pub fn char_pow(&self, chi: u64, k: u64) -> u64 {
        self.log_scale(chi, k)
    }

    pub fn char_conj(&self, chi: u64) -> u64 {
        let digits: Vec<u64> = self.digits(chi).iter().zip(self.dims()).map(|(&a, &d)| (d - a) % d).collect();
        self.from_digits(&digits)
    }

    pub fn characters(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }

    pub fn even_characters(&self) -> impl Iterator<Item = u64> + '_ {
        self.characters().filter(|&c| self.is_even(c))
    }

    pub fn primitive_characters(&self) -> impl Iterator<Item = u64> + '_ {
        self.characters().filter(|&c| self.is_primitive(c))
    }

    pub fn character_info(&self, chi: u64) -> CharacterInfo {
        CharacterInfo {
            index: chi,
            exponents: self.digits(chi),
            order: self.char_order(chi),
            even: self.is_even(chi),
            primitive: self.is_primitive(chi),
        }
    }

    pub fn info(&self) -> CharacterGroupInfo {
        let field = self.field();
        CharacterGroupInfo {
            modulus: self.modulus().to_text(),
            order: self.order(),
            basis_orders: self.dims().to_vec(),
            basis: (0..self.dims().len())
                .map(|j| Poly::from_residue_code(field, self.generator(j)).to_text())
                .collect(),
            characters: self.characters().map(|c| self.character_info(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::budget::Budget;
    use crate::field::{Fe, Field};
    use crate::poly::Poly;
    use crate::dirichlet::UnitGroup;

    #[test]
    fn primitive_and_even_counts_mod_t_power() {
        for q in [3u64, 5, 7] {
            let f = Field::new(q as u32).unwrap();
            for m in 2..=4u32 {
                let g = UnitGroup::new(&Poly::monomial(&f, Fe::ONE, m as usize), &Budget::default()).unwrap();
                let prim = g.primitive_characters().count() as u64;
                assert_eq!(prim, (q - 1).pow(2) * q.pow(m - 2));
                let even = g.even_characters().count() as u64;
                assert_eq!(even, q.pow(m - 1));
                let even_prim = g.even_characters().filter(|&c| g.is_primitive(c)).count() as u64;
                assert_eq!(even_prim, q.pow(m - 2) * (q - 1));
            }
        }
    }

    #[test]
    fn orthogonality() {
        let f = Field::new(5).unwrap();
        let m = Poly::from_codes(&f, &[1, 1, 0, 1]).unwrap();
        let g = UnitGroup::new(&m, &Budget::default()).unwrap();
        let roots = g.root_table();
        for chi in [1u64, 7, g.order() - 1] {
            let s: num_complex::Complex64 = (0..g.ring().size()).map(|r| g.char_value_code(chi, r, &roots)).sum();
            assert!(s.norm() < 1e-9);
        }
    }

    #[test]
    fn primitive_count_squarefree() {
        // primitive characters mod P1 P2 are products of nontrivial characters mod each
        let f = Field::new(5).unwrap();
        let m = Poly::from_codes(&f, &[0, 1, 1]).unwrap();
        let g = UnitGroup::new(&m, &Budget::default()).unwrap();
        assert_eq!(g.primitive_characters().count(), 9);
    }
}
