//! L-functions of Dirichlet characters, their inverse roots, and the
//! unitary Frobenius classes of primitive characters.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::group::UnitGroup;
use super::transform::LTable;
use crate::error::{Error, Result};
use crate::rmt;

const TRIM_TOL: f64 = 1e-6;
const CLASS_TOL: f64 = 1e-6;

/// `L(u, chi) = sum_m M(m; chi) u^m`; a polynomial for nontrivial `chi`, and
/// `numerator(u) / (1 - q u)` for the trivial character.
#[derive(Clone, Debug)]
pub struct LFunction {
    q: u32,
    modulus_degree: usize,
    chi: u64,
    even: bool,
    primitive: bool,
    trivial: bool,
    coeffs: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// `|alpha| = 1`.
    Trivial,
    /// `|alpha| = sqrt(q)`.
    Nontrivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootInfo {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub kind: RootKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhReport {
    pub chi: u64,
    pub degree: usize,
    pub roots: Vec<RootInfo>,
    /// Largest `||alpha| - sqrt q| / sqrt q` over nontrivial roots.
    pub max_rel_dev: f64,
    /// Largest `||alpha| - 1|` over trivial roots.
    pub max_trivial_dev: f64,
}

/// Unitary conjugacy class `Theta_chi` of a primitive character, by eigenangles.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusClass {
    pub chi: u64,
    pub even: bool,
    pub angles: Vec<f64>,
}

impl FrobeniusClass {
    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    pub fn sym_trace(&self, k: usize) -> Complex64 {
        rmt::sym_trace(&self.angles, k)
    }

    pub fn sym_traces(&self, kmax: usize) -> Vec<Complex64> {
        rmt::sym_traces(&self.angles, kmax)
    }

    /// `lambda_j` with `det(I - x Theta) = sum_j lambda_j x^j`.
    pub fn secular(&self) -> Vec<Complex64> {
        rmt::secular_coeffs(&self.angles)
    }

    pub fn trace(&self) -> Complex64 {
        rmt::trace(&self.angles)
    }
}

impl UnitGroup {
    /// The L-function of `chi`, computing its coefficients directly.
    pub fn l_function(&self, chi: u64) -> Result<LFunction> {
        self.check_character(chi)?;
        let d = self.degree();
        let q = self.field().q() as u64;
        let roots = self.root_table();
        let coeffs: Vec<Complex64> = (0..d)
            .map(|m| {
                let lo = q.pow(m as u32);
                (lo..2 * lo).map(|code| self.char_value_code(chi, code, &roots)).sum()
            })
            .collect();
        self.l_function_from(chi, coeffs)
    }

    /// The L-function of `chi` from a precomputed coefficient table.
    pub fn l_function_from_table(&self, table: &LTable, chi: u64) -> Result<LFunction> {
        self.check_character(chi)?;
        self.l_function_from(chi, table.row(chi).to_vec())
    }

    fn l_function_from(&self, chi: u64, mut coeffs: Vec<Complex64>) -> Result<LFunction> {
        let trivial = self.is_trivial(chi);
        if trivial {
            // prod_{P | Q} (1 - u^{deg P})
            let mut num = vec![Complex64::new(1.0, 0.0)];
            for p in self.prime_factors() {
                let e = p.deg();
                let mut next = vec![Complex64::new(0.0, 0.0); num.len() + e];
                for (i, &c) in num.iter().enumerate() {
                    next[i] += c;
                    next[i + e] -= c;
                }
                num = next;
            }
            coeffs = num;
        } else {
            while coeffs.len() > 1 && coeffs.last().unwrap().norm() < TRIM_TOL {
                coeffs.pop();
            }
        }
        Ok(LFunction {
            q: self.field().q(),
            modulus_degree: self.degree(),
            chi,
            even: self.is_even(chi),
            primitive: self.is_primitive(chi),
            trivial,
            coeffs,
        })
    }

    /// Frobenius classes of every primitive character of the given parity.
    pub fn frobenius_classes(&self, table: &LTable, even: bool) -> Result<Vec<FrobeniusClass>> {
        self.primitive_characters()
            .filter(|&c| self.is_even(c) == even)
            .map(|c| self.l_function_from_table(table, c)?.frobenius_class())
            .collect()
    }
}

impl LFunction {
    pub fn chi(&self) -> u64 {
        self.chi
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// Degree of the numerator polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Power series coefficients up to `u^order`.
    pub fn series(&self, order: usize) -> Vec<Complex64> {
        let mut s = vec![Complex64::new(0.0, 0.0); order + 1];
        for (i, &c) in self.coeffs.iter().enumerate().take(order + 1) {
            s[i] = c;
        }
        if self.trivial {
            let q = self.q as f64;
            for m in 1..=order {
                let prev = s[m - 1];
                s[m] += prev * q;
            }
        }
        s
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        let num = self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c);
        if self.trivial {
            num / (Complex64::new(1.0, 0.0) - u * self.q as f64)
        } else {
            num
        }
    }

    /// Inverse roots `alpha_j` of the numerator: `L(u) = prod_j (1 - alpha_j u)`.
    pub fn inverse_roots(&self) -> Result<Vec<Complex64>> {
        inverse_roots(&self.coeffs)
    }

    fn classify(&self, a: Complex64) -> RootKind {
        let sq = (self.q as f64).sqrt();
        if (a.norm() - 1.0).abs() < (a.norm() - sq).abs() {
            RootKind::Trivial
        } else {
            RootKind::Nontrivial
        }
    }

    pub fn rh_report(&self) -> Result<RhReport> {
        let sq = (self.q as f64).sqrt();
        let roots = self.inverse_roots()?;
        let mut infos = Vec::with_capacity(roots.len());
        let (mut dev, mut tdev) = (0.0f64, 0.0f64);
        for a in roots {
            let kind = self.classify(a);
            match kind {
                RootKind::Trivial => tdev = tdev.max((a.norm() - 1.0).abs()),
                RootKind::Nontrivial => dev = dev.max((a.norm() - sq).abs() / sq),
            }
            infos.push(RootInfo { re: a.re, im: a.im, modulus: a.norm(), kind });
        }
        Ok(RhReport { chi: self.chi, degree: self.degree(), roots: infos, max_rel_dev: dev, max_trivial_dev: tdev })
    }

    /// `Theta_chi` for primitive nontrivial `chi`: the nontrivial inverse roots
    /// divided by `sqrt q`. For even `chi` the trivial root at 1 is removed.
    pub fn frobenius_class(&self) -> Result<FrobeniusClass> {
        if self.trivial || !self.primitive {
            return Err(Error::InvalidParameter(format!("character {} is not primitive", self.chi)));
        }
        let expected = if self.even { self.modulus_degree - 2 } else { self.modulus_degree - 1 };
        let mut roots = self.inverse_roots()?;
        if self.even {
            if self.eval(Complex64::new(1.0, 0.0)).norm() > CLASS_TOL * (self.q as f64).powf(self.degree() as f64 / 2.0) {
                return Err(Error::Numerical(format!("L(1, chi) != 0 for even character {}", self.chi)));
            }
            let (i, _) = roots
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - 1.0).norm().total_cmp(&(b.1 - 1.0).norm()))
                .ok_or_else(|| Error::Numerical("even L-function without roots".into()))?;
            roots.remove(i);
        }
        if roots.len() != expected {
            return Err(Error::Numerical(format!(
                "character {} has {} nontrivial roots, expected {expected}",
                self.chi,
                roots.len()
            )));
        }
        let sq = (self.q as f64).sqrt();
        let mut angles: Vec<f64> = roots.iter().map(|a| rmt::normalize_angle((a / sq).arg())).collect();
        angles.sort_by(f64::total_cmp);
        Ok(FrobeniusClass { chi: self.chi, even: self.even, angles })
    }
}

fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in p {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

/// Derivative of a polynomial given highest coefficient first.
fn derivative_desc(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    p[..n].iter().enumerate().map(|(i, &c)| c * (n - i) as f64).collect()
}

fn polish(p: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..60 {
        let (v, dv) = horner(p, z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        let next = z - step;
        if horner(p, next).0.norm() > v.norm() {
            break;
        }
        z = next;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// `|p(z)| / sum_i |a_i| |z|^i`.
fn relative_residual(p: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let size = p.iter().fold(0.0, |acc, c| acc * r + c.norm());
    horner(p, z).0.norm() / size.max(f64::MIN_POSITIVE)
}

/// Inverse roots of `sum_m c_m u^m` with `c_0 != 0`, i.e. the roots of
/// `z^N + (c_1/c_0) z^{N-1} + ... + c_N/c_0`, via companion-matrix eigenvalues
/// followed by Newton polishing. Clusters of nearly equal roots are polished
/// as a multiple root.
pub fn inverse_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let c0 = coeffs[0];
    if c0.norm() == 0.0 {
        return Err(Error::Numerical("L-function with vanishing constant term".into()));
    }
    // highest coefficient first: z^N + a_1 z^{N-1} + ... + a_N
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / c0).collect();
    let companion = DMatrix::<Complex64>::from_fn(n, n, |i, j| {
        if i == 0 {
            -monic[j + 1]
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eig = companion
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("companion Schur form is not triangular".into()))?;
    let mut raw: Vec<Complex64> = eig.iter().copied().collect();
    raw.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let scale = raw.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-3 * scale;
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if used[i] {
            continue;
        }
        let mut cluster = vec![i];
        used[i] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for j in 0..n {
                if !used[j] && cluster.iter().any(|&c| (raw[c] - raw[j]).norm() < tol) {
                    used[j] = true;
                    cluster.push(j);
                    changed = true;
                }
            }
        }
        let k = cluster.len();
        let centre: Complex64 = cluster.iter().map(|&c| raw[c]).sum::<Complex64>() / k as f64;
        let mut p = monic.clone();
        for _ in 1..k {
            p = derivative_desc(&p);
        }
        let z = polish(&p, centre);
        if k == 1 || relative_residual(&monic, z) <= 1e-10 {
            out.extend(std::iter::repeat_n(z, k));
        } else {
            // close but distinct roots
            out.extend(cluster.iter().map(|&c| polish(&monic, raw[c])));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::field::{Fe, Field};
    use crate::poly::Poly;

    #[test]
    fn trivial_character_mod_t2() {
        let f = Field::new(5).unwrap();
        let g = UnitGroup::new(&Poly::monomial(&f, Fe::ONE, 2), &Budget::default()).unwrap();
        let l = g.l_function(0).unwrap();
        assert!(l.is_trivial());
        // (1 - u) / (1 - 5u) = 1 + 4u + 20u^2 + ...
        let s = l.series(3);
        let expect = [1.0, 4.0, 20.0, 100.0];
        for (a, b) in s.iter().zip(expect) {
            assert!((a.re - b).abs() < 1e-9 && a.im.abs() < 1e-9);
        }
    }

    #[test]
    fn double_roots_are_polished() {
        // (1 - 2u)^2 (1 + 3u)
        let c = [1.0, -1.0, -8.0, 12.0].map(|x| Complex64::new(x, 0.0));
        let mut r = inverse_roots(&c).unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] + 3.0).norm() < 1e-12);
        assert!((r[1] - 2.0).norm() < 1e-12);
        assert!((r[2] - 2.0).norm() < 1e-12);
    }

    #[test]
    fn triple_and_close_roots() {
        // (1 + 3u)^3 (1 - u)
        let c = [1.0, 8.0, 18.0, 0.0, -27.0].map(|x| Complex64::new(x, 0.0));
        let r = inverse_roots(&c).unwrap();
        assert_eq!(r.iter().filter(|z| (*z + 3.0).norm() < 1e-12).count(), 3);
        // (1 - 2u)(1 - 2.0001u): two distinct roots inside the cluster radius
        let c = [1.0, -4.0001, 4.0002].map(|x| Complex64::new(x, 0.0));
        let mut r = inverse_roots(&c).unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - 2.0).norm() < 1e-10 && (r[1] - 2.0001).norm() < 1e-10, "{r:?}");
    }

    #[test]
    fn primitive_roots_on_critical_circle() {
        let f = Field::new(7).unwrap();
        let g = UnitGroup::new(&Poly::monomial(&f, Fe::ONE, 4), &Budget::default()).unwrap();
        let table = g.l_coefficients().unwrap();
        for chi in g.primitive_characters().take(50) {
            let l = g.l_function_from_table(&table, chi).unwrap();
            let rh = l.rh_report().unwrap();
            assert!(rh.max_rel_dev < 1e-9, "chi={chi} {rh:?}");
            let direct = g.l_function(chi).unwrap();
            for (a, b) in l.coefficients().iter().zip(direct.coefficients()) {
                assert!((a - b).norm() < 1e-9);
            }
            let theta = l.frobenius_class().unwrap();
            assert_eq!(theta.dim(), if l.is_even() { 2 } else { 3 });
        }
    }
}
