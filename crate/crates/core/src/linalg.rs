//! Small dense complex linear algebra.
//!
//! The matrices in this crate are at most a few dozen rows, so plain
//! row-major loops are all that is needed.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use num_complex::Complex64 as C64;

pub fn identity(n: usize) -> Array2<C64> {
    Array2::from_diag_elem(n, C64::new(1.0, 0.0))
}

/// Maximum absolute column sum.
pub fn norm1(a: ArrayView2<C64>) -> f64 {
    a.axis_iter(Axis(1))
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn matvec(a: ArrayView2<C64>, x: ArrayView1<C64>) -> Array1<C64> {
    a.dot(&x)
}

/// LU factorisation with partial pivoting, stored in place.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Array2<C64>,
    perm: Vec<usize>,
}

impl Lu {
    /// Returns `None` if a pivot vanishes exactly.
    pub fn factor(mut a: Array2<C64>) -> Option<Self> {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "LU needs a square matrix");
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, a[[i, k]].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.swap([k, j], [p, j]);
                }
                perm.swap(k, p);
            }
            let inv = a[[k, k]].inv();
            for i in k + 1..n {
                let factor = a[[i, k]] * inv;
                a[[i, k]] = factor;
                for j in k + 1..n {
                    let u = a[[k, j]];
                    a[[i, j]] -= factor * u;
                }
            }
        }
        Some(Self { lu: a, perm })
    }

    /// Solve `A X = B` column by column.
    pub fn solve(&self, b: ArrayView2<C64>) -> Array2<C64> {
        let n = self.lu.nrows();
        assert_eq!(b.nrows(), n);
        let mut x = Array2::zeros(b.raw_dim());
        for (col, mut out) in b.axis_iter(Axis(1)).zip(x.axis_iter_mut(Axis(1))) {
            let mut y: Vec<C64> = self.perm.iter().map(|&p| col[p]).collect();
            for i in 0..n {
                for j in 0..i {
                    let l = self.lu[[i, j]];
                    y[i] = y[i] - l * y[j];
                }
            }
            for i in (0..n).rev() {
                for j in i + 1..n {
                    let u = self.lu[[i, j]];
                    y[i] = y[i] - u * y[j];
                }
                y[i] /= self.lu[[i, i]];
            }
            for (o, v) in out.iter_mut().zip(y) {
                *o = v;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn solve_recovers_known_solution() {
        let a = array![
            [C64::new(0.0, 1.0), C64::new(2.0, 0.0), C64::new(1.0, -1.0)],
            [C64::new(3.0, 0.0), C64::new(-1.0, 0.5), C64::new(0.0, 0.0)],
            [C64::new(1.0, 1.0), C64::new(0.0, 0.0), C64::new(4.0, 0.0)],
        ];
        let x = array![
            [C64::new(1.0, 0.0), C64::new(0.0, 2.0)],
            [C64::new(-1.0, 1.0), C64::new(0.5, 0.0)],
            [C64::new(2.0, -3.0), C64::new(1.0, 1.0)]
        ];
        let b = a.dot(&x);
        let got = Lu::factor(a).unwrap().solve(b.view());
        for (g, e) in got.iter().zip(x.iter()) {
            assert!((g - e).norm() < 1e-13, "{g} vs {e}");
        }
    }

    #[test]
    fn singular_matrix_has_no_factorisation() {
        let a = array![
            [C64::new(1.0, 0.0), C64::new(2.0, 0.0)],
            [C64::new(2.0, 0.0), C64::new(4.0, 0.0)]
        ];
        assert!(Lu::factor(a).is_none());
    }

    #[test]
    fn one_norm_is_max_column_sum() {
        let a = array![
            [C64::new(3.0, 4.0), C64::new(1.0, 0.0)],
            [C64::new(0.0, -1.0), C64::new(-2.0, 0.0)]
        ];
        assert_eq!(norm1(a.view()), 6.0);
    }
}
