//! Smith normal form of a square integer matrix, tracking column operations.

/// Returns `(d, v)` with `U A V = diag(d)` for some unimodular `U`, `d_i | d_{i+1}`
/// and every `d_i >= 0`. `v` is the column transform.
pub fn smith(mut a: Vec<Vec<i128>>) -> (Vec<i128>, Vec<Vec<i128>>) {
    let r = a.len();
    let mut v: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i128).collect()).collect();
    for t in 0..r {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..r {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, v);
            };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let f = a[i][t] / p;
                if f != 0 {
                    for j in t..r {
                        a[i][j] -= f * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..r {
                let f = a[t][j] / p;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..r).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..r {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in t..r {
                a[t][j] = -a[t][j];
            }
        }
    }
    finish(a, v)
}

fn finish(a: Vec<Vec<i128>>, v: Vec<Vec<i128>>) -> (Vec<i128>, Vec<Vec<i128>>) {
    let d = (0..a.len()).map(|i| a[i][i].abs()).collect();
    (d, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn diagonalizes_and_divides() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (d, v) = smith(a.clone());
        assert_eq!(d, vec![2, 6, 12]);
        // rows of A V span the same lattice as diag(d)
        let av = mat_mul(&a, &v);
        for row in &av {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x % d[j], 0);
            }
        }
    }

    #[test]
    fn cyclic_relation() {
        // Z/2 x Z/3 = Z/6
        let (d, _) = smith(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(d, vec![1, 6]);
    }
}
