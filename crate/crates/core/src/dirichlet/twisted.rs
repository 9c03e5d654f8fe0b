//! Twisted sums `M(n; alpha chi) = sum_{f in M_n} alpha(f) chi(f)`, computed
//! directly, from L-function coefficients, and from Frobenius eigenangles.

use num_complex::Complex64;

use super::group::UnitGroup;
use super::lfunc::FrobeniusClass;
use super::transform::LTable;
use crate::arith::ArithFn;
use crate::error::{Error, Result};

/// Neumaier-compensated complex summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let t = acc.0 + x;
    if acc.0.abs() >= x.abs() {
        acc.1 += (acc.0 - t) + x;
    } else {
        acc.1 += (x - t) + acc.0;
    }
    acc.0 = t;
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl UnitGroup {
    /// `sum_r hist[r] chi(r)` for one character, `hist` the residue histogram
    /// of `alpha` over `M_n`.
    pub fn char_sum(&self, hist: &[i64], chi: u64) -> Result<Complex64> {
        self.check_character(chi)?;
        if hist.len() as u64 != self.ring().size() {
            return Err(Error::InvalidParameter("histogram length differs from the residue count".into()));
        }
        let roots = self.root_table();
        let mut s = CompensatedSum::default();
        for (code, &w) in hist.iter().enumerate() {
            if w != 0 {
                s.add(self.char_value_code(chi, code as u64, &roots) * w as f64);
            }
        }
        Ok(s.value())
    }

    /// Power series of `L(u, chi)` to order `order`, exact for every character.
    pub fn l_series(&self, table: &LTable, chi: u64, order: usize) -> Vec<Complex64> {
        let mut s = vec![Complex64::new(0.0, 0.0); order + 1];
        if chi == 0 {
            let mut num = vec![1i64];
            for p in self.prime_factors() {
                let e = p.deg();
                let mut next = vec![0i64; num.len() + e];
                for (i, &c) in num.iter().enumerate() {
                    next[i] += c;
                    next[i + e] -= c;
                }
                num = next;
            }
            let q = self.field().q() as f64;
            for m in 0..=order {
                let prev = if m > 0 { s[m - 1] * q } else { Complex64::new(0.0, 0.0) };
                s[m] = prev + Complex64::new(num.get(m).copied().unwrap_or(0) as f64, 0.0);
            }
        } else {
            for (m, &c) in table.row(chi).iter().enumerate().take(order + 1) {
                s[m] = c;
            }
        }
        s
    }

    /// `M(m; alpha chi)` for `m = 0..=order` from L-function coefficients, for
    /// the built-in functions: `1/L(u)` for mu, `L(u)/L(u^2, chi^2)` for mu^2,
    /// `L(u)` for the constant function.
    pub fn alpha_series(&self, table: &LTable, alpha: &ArithFn, chi: u64, order: usize) -> Result<Vec<Complex64>> {
        let l = self.l_series(table, chi, order);
        match alpha {
            ArithFn::One => Ok(l),
            ArithFn::Mu => Ok(series_inverse(&l)),
            ArithFn::Mu2 => {
                let chi2 = self.char_pow(chi, 2);
                let l2 = self.l_series(table, chi2, order / 2);
                let mut sub = vec![Complex64::new(0.0, 0.0); order + 1];
                for (k, &c) in l2.iter().enumerate() {
                    sub[2 * k] = c;
                }
                Ok(series_mul(&l, &series_inverse(&sub)))
            }
            ArithFn::Custom { .. } => Err(Error::InvalidParameter(
                "generating series are only known for the built-in functions".into(),
            )),
        }
    }
}

pub fn series_inverse(a: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return b;
    }
    let inv0 = Complex64::new(1.0, 0.0) / a[0];
    b[0] = inv0;
    for m in 1..n {
        let s: Complex64 = (1..=m).map(|i| a[i] * b[m - i]).sum();
        b[m] = -s * inv0;
    }
    b
}

pub fn series_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().min(b.len());
    (0..n).map(|m| (0..=m).map(|i| a[i] * b[m - i]).sum()).collect()
}

/// `M(n; mu chi)` from the Frobenius class of a primitive character:
/// `sum_{k<=n} q^{k/2} tr Sym^k Theta` for even `chi`, `q^{n/2} tr Sym^n Theta` for odd.
pub fn twisted_mobius_spectral(q: u32, n: usize, class: &FrobeniusClass) -> Complex64 {
    let h = class.sym_traces(n);
    let sq = (q as f64).sqrt();
    if class.even {
        (0..=n).map(|k| h[k] * sq.powi(k as i32)).sum()
    } else {
        h[n] * sq.powi(n as i32)
    }
}

/// `M(n; mu^2 chi)` from the classes of `chi` and `chi^2`, both primitive:
/// the `u^n` coefficient of
/// `(1-u)^{e(chi)} (1-u^2)^{-e(chi^2)} det(I - u sqrt(q) Theta_chi) / det(I - u^2 sqrt(q) Theta_{chi^2})`
/// with `e = 1` for even characters.
pub fn twisted_sqfree_spectral(q: u32, n: usize, class: &FrobeniusClass, class2: &FrobeniusClass) -> Complex64 {
    let sq = (q as f64).sqrt();
    let lam = class.secular();
    let mut a = vec![Complex64::new(0.0, 0.0); n + 1];
    for (j, &l) in lam.iter().enumerate().take(n + 1) {
        a[j] = l * sq.powi(j as i32);
    }
    if class.even {
        for j in (1..=n).rev() {
            let prev = a[j - 1];
            a[j] -= prev;
        }
    }
    let h2 = class2.sym_traces(n / 2);
    let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
    for (k, &h) in h2.iter().enumerate() {
        b[2 * k] = h * sq.powi(k as i32);
    }
    if class2.even {
        for j in 2..=n {
            let prev = b[j - 2];
            b[j] += prev;
        }
    }
    (0..=n).map(|j| a[j] * b[n - j]).sum()
}

impl UnitGroup {
    /// Spectral `M(n; mu chi)` for primitive `chi`.
    pub fn twisted_mobius_spectral(&self, table: &LTable, n: usize, chi: u64) -> Result<Complex64> {
        let class = self.l_function_from_table(table, chi)?.frobenius_class()?;
        Ok(twisted_mobius_spectral(self.field().q(), n, &class))
    }

    /// Spectral `M(n; mu^2 chi)`; both `chi` and `chi^2` must be primitive.
    pub fn twisted_sqfree_spectral(&self, table: &LTable, n: usize, chi: u64) -> Result<Complex64> {
        let chi2 = self.char_pow(chi, 2);
        if !self.is_primitive(chi2) {
            return Err(Error::InvalidParameter(format!("square of character {chi} is not primitive")));
        }
        let class = self.l_function_from_table(table, chi)?.frobenius_class()?;
        let class2 = self.l_function_from_table(table, chi2)?.frobenius_class()?;
        Ok(twisted_sqfree_spectral(self.field().q(), n, &class, &class2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::dirichlet::residue_histogram;
    use crate::field::{Fe, Field};
    use crate::poly::Poly;
    use crate::sieve::MobiusTable;

    #[test]
    fn three_routes_agree_mod_t4() {
        let f = Field::new(5).unwrap();
        let g = UnitGroup::new(&Poly::monomial(&f, Fe::ONE, 4), &Budget::default()).unwrap();
        let table = g.l_coefficients().unwrap();
        for n in 0..=7 {
            let mt = MobiusTable::build(&f, n, &Budget::default()).unwrap();
            let mu: Vec<i64> = mt.values().iter().map(|&v| v as i64).collect();
            let mu2: Vec<i64> = mt.values().iter().map(|&v| (v != 0) as i64).collect();
            let h1 = residue_histogram(g.ring(), n, &mu).unwrap();
            let h2 = residue_histogram(g.ring(), n, &mu2).unwrap();
            for chi in g.primitive_characters().step_by(7) {
                let direct = g.char_sum(&h1, chi).unwrap();
                let gen = g.alpha_series(&table, &ArithFn::Mu, chi, n).unwrap()[n];
                let spec = g.twisted_mobius_spectral(&table, n, chi).unwrap();
                let tol = 1e-8 * direct.norm().max(1.0);
                assert!((direct - gen).norm() < tol, "n={n} chi={chi}");
                assert!((direct - spec).norm() < tol, "n={n} chi={chi}");
                let direct2 = g.char_sum(&h2, chi).unwrap();
                let gen2 = g.alpha_series(&table, &ArithFn::Mu2, chi, n).unwrap()[n];
                assert!((direct2 - gen2).norm() < tol);
                if g.is_primitive(g.char_pow(chi, 2)) {
                    let spec2 = g.twisted_sqfree_spectral(&table, n, chi).unwrap();
                    assert!((direct2 - spec2).norm() < tol, "n={n} chi={chi}");
                }
            }
        }
    }
}
