//! Dense complex LU factorization with partial pivoting.

use num_complex::Complex64;

/// Row-major LU factors of a square complex matrix, `P·A = L·U`.
#[derive(Debug, Clone)]
pub(crate) struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl LuFactors {
    /// Factor `a` (row-major, n×n). On failure returns the columns whose
    /// pivots vanished relative to the matrix scale.
    pub(crate) fn factor(mut a: Vec<Complex64>, n: usize) -> Result<Self, Vec<usize>> {
        assert_eq!(a.len(), n * n);
        let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tiny = scale * f64::EPSILON * n.max(1) as f64;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut deficient = Vec::new();

        for k in 0..n {
            let (pivot_row, pivot_mag) =
                (k..n)
                    .map(|r| (r, a[r * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pivot_mag <= tiny || scale == 0.0 {
                deficient.push(k);
                continue;
            }
            if pivot_row != k {
                for c in 0..n {
                    a.swap(k * n + c, pivot_row * n + c);
                }
                perm.swap(k, pivot_row);
            }
            let pivot = a[k * n + k];
            for r in (k + 1)..n {
                let factor = a[r * n + k] / pivot;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                a[r * n + k] = factor;
                for c in (k + 1)..n {
                    let upper = a[k * n + c];
                    a[r * n + c] -= factor * upper;
                }
            }
        }

        if deficient.is_empty() {
            Ok(LuFactors { n, lu: a, perm })
        } else {
            Err(deficient)
        }
    }

    pub(crate) fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let row = &self.lu[r * n..r * n + r];
            let acc = row.iter().zip(&x[..r]).fold(x[r], |acc, (l, xc)| acc - l * xc);
            x[r] = acc;
        }
        for r in (0..n).rev() {
            let row = &self.lu[r * n + r + 1..(r + 1) * n];
            let acc = row.iter().zip(&x[r + 1..]).fold(x[r], |acc, (u, xc)| acc - u * xc);
            x[r] = acc / self.lu[r * n + r];
        }
        x
    }

    /// 1-norm condition number `‖A‖₁·‖A⁻¹‖₁`, with the inverse built column
    /// by column. Only sensible for the small systems handled here.
    pub(crate) fn condition_1norm(&self, a_norm1: f64) -> f64 {
        let n = self.n;
        let mut inv_norm: f64 = 0.0;
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&e);
            inv_norm = inv_norm.max(col.iter().map(|z| z.norm()).sum());
        }
        a_norm1 * inv_norm
    }
}

pub(crate) fn norm1(a: &[Complex64], n: usize) -> f64 {
    (0..n)
        .map(|c| (0..n).map(|r| a[r * n + c].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}
