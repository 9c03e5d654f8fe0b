//! Batch evaluation of character sums through the group Fourier transform.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::group::{ResidueRing, UnitGroup};
use crate::error::{Error, Result};
use crate::field::Fe;

impl UnitGroup {
    /// Replaces `w` (indexed by flat log) with `chi -> sum_g w[g] chi(g)` for every character.
    pub fn fourier(&self, w: &mut [Complex64]) -> Result<()> {
        if w.len() as u64 != self.order() {
            return Err(Error::InvalidParameter("transform length differs from the group order".into()));
        }
        let mut planner = FftPlanner::<f64>::new();
        for (&d, &s) in self.dims().iter().zip(self.strides()) {
            let (d, s) = (d as usize, s as usize);
            let fft: Arc<dyn Fft<f64>> = planner.plan_fft_inverse(d);
            let mut line = vec![Complex64::new(0.0, 0.0); d];
            let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
            let block = s * d;
            for base in (0..w.len()).step_by(block) {
                for off in 0..s {
                    let start = base + off;
                    for (t, x) in line.iter_mut().enumerate() {
                        *x = w[start + t * s];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (t, x) in line.iter().enumerate() {
                        w[start + t * s] = *x;
                    }
                }
            }
        }
        Ok(())
    }

    /// `sum_r weights[r] chi(r)` for every character, `weights` indexed by residue code.
    pub fn char_sums_all(&self, weights: &[i64]) -> Result<Vec<Complex64>> {
        let mut w = vec![Complex64::new(0.0, 0.0); self.order() as usize];
        for (code, &x) in weights.iter().enumerate() {
            if x != 0 {
                if let Some(l) = self.dlog(code as u64) {
                    w[l as usize] += Complex64::new(x as f64, 0.0);
                }
            }
        }
        self.fourier(&mut w)?;
        Ok(w)
    }

    /// `M(m; chi) = sum_{f in M_m} chi(f)` for all `m < deg Q` and all characters.
    pub fn l_coefficients(&self) -> Result<LTable> {
        let d = self.degree();
        let q = self.field().q() as u64;
        let phi = self.order() as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); phi * d];
        for m in 0..d {
            let lo = q.pow(m as u32);
            let mut w = vec![Complex64::new(0.0, 0.0); phi];
            for code in lo..2 * lo {
                if let Some(l) = self.dlog(code) {
                    w[l as usize] += Complex64::new(1.0, 0.0);
                }
            }
            self.fourier(&mut w)?;
            for (chi, x) in w.into_iter().enumerate() {
                coeffs[chi * d + m] = x;
            }
        }
        Ok(LTable { d, coeffs })
    }
}

/// `M(m; chi)` for `m < d`, stored character-major.
#[derive(Clone, Debug)]
pub struct LTable {
    d: usize,
    coeffs: Vec<Complex64>,
}

impl LTable {
    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn row(&self, chi: u64) -> &[Complex64] {
        let i = chi as usize * self.d;
        &self.coeffs[i..i + self.d]
    }
}

/// Sums of `values` (indexed by monic index in degree `n`) over each residue class mod Q.
pub fn residue_histogram(ring: &ResidueRing, n: usize, values: &[i64]) -> Result<Vec<i64>> {
    let q = ring.field().q() as u64;
    if values.len() as u64 != q.pow(n as u32) {
        return Err(Error::InvalidParameter("value table length differs from q^n".into()));
    }
    let mut hist = vec![0i64; ring.size() as usize];
    walk_residues(ring, n, |idx, code| hist[code as usize] += values[idx as usize]);
    Ok(hist)
}

/// Calls `visit(monic_index, residue_code)` for every monic `f` of degree `n`, in index order.
pub fn walk_residues(ring: &ResidueRing, n: usize, mut visit: impl FnMut(u64, u64)) {
    let field = ring.field();
    let q = field.q();
    let d = ring.degree();
    let qpow: Vec<i64> = (0..d).map(|i| (q as i64).pow(i as u32)).collect();
    // tpow[j] = t^j mod Q as a digit vector
    let mut tpow: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut v = vec![0u32; j.max(d) + 1];
        v[j] = 1;
        ring.reduce(&mut v);
        v.truncate(d);
        tpow.push(v);
    }
    let mut res = tpow[n].clone();
    let mut code = ring.encode(&res) as i64;
    // step[c][j] = ((c + 1) - c) * t^j mod Q
    let mut step = vec![vec![vec![0u32; d]; n]; q as usize];
    for c in 0..q {
        let dc = field.sub(Fe((c + 1) % q), Fe(c));
        for (j, tj) in tpow.iter().take(n).enumerate() {
            for i in 0..d {
                step[c as usize][j][i] = field.mul(dc, Fe(tj[i])).0;
            }
        }
    }
    let mut digits = vec![0u32; n];
    let total = (q as u64).pow(n as u32);
    for idx in 0..total {
        visit(idx, code as u64);
        if idx + 1 == total {
            break;
        }
        let mut j = 0;
        loop {
            let c = digits[j];
            let row = &step[c as usize][j];
            for i in 0..d {
                if row[i] != 0 {
                    let old = res[i];
                    let new = field.add(Fe(old), Fe(row[i])).0;
                    res[i] = new;
                    code += (new as i64 - old as i64) * qpow[i];
                }
            }
            let nc = (c + 1) % q;
            digits[j] = nc;
            if nc != 0 {
                break;
            }
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::field::Field;
    use crate::poly::{monic_polys, Poly};

    #[test]
    fn walker_matches_reduction() {
        let f = Field::new(9).unwrap();
        let m = Poly::from_codes(&f, &[0, 1, 1]).unwrap();
        let ring = ResidueRing::new(&m).unwrap();
        let mut seen = Vec::new();
        walk_residues(&ring, 3, |_, c| seen.push(c));
        let expect: Vec<u64> = monic_polys(&f, 3).map(|g| ring.residue(&g).unwrap()).collect();
        assert_eq!(seen, expect);
    }

    #[test]
    fn fourier_matches_direct_sums() {
        let f = Field::new(5).unwrap();
        let m = Poly::monomial(&f, Fe::ONE, 3);
        let g = UnitGroup::new(&m, &Budget::default()).unwrap();
        let weights: Vec<i64> = (0..g.ring().size() as i64).map(|r| (r * 7919) % 13 - 6).collect();
        let all = g.char_sums_all(&weights).unwrap();
        let roots = g.root_table();
        for chi in (0..g.order()).step_by(11) {
            let direct: Complex64 =
                weights.iter().enumerate().map(|(r, &w)| g.char_value_code(chi, r as u64, &roots) * w as f64).sum();
            assert!((direct - all[chi as usize]).norm() < 1e-9);
        }
    }
}
