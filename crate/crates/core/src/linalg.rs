//! Dense linear algebra kernels: a scaling-and-squaring matrix exponential for
//! general complex matrices and an implicit-shift QL eigensolver for real
//! symmetric tridiagonal matrices.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest 1-norm allowed for the scaled matrix before the Taylor series is
/// summed.
const SCALED_NORM: f64 = 0.5;
const MAX_TAYLOR_TERMS: usize = 40;

fn one_norm(a: &Array2<C64>) -> f64 {
    a.columns()
        .into_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The matrix is scaled by `2^-s` until its 1-norm is at most 0.5, the series
/// is summed until the next term drops below machine precision relative to the
/// partial sum, and the result is squared `s` times.
pub fn expm(a: &Array2<C64>) -> Array2<C64> {
    assert!(a.is_square(), "expm: matrix must be square");
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / 2f64.powi(squarings));

    let mut sum = Array2::<C64>::eye(n);
    let mut term = Array2::<C64>::eye(n);
    for j in 1..=MAX_TAYLOR_TERMS {
        term = term.dot(&scaled).mapv(|z| z / j as f64);
        sum += &term;
        if one_norm(&term) <= f64::EPSILON * one_norm(&sum) * 1e-2 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.dot(&sum);
    }
    sum
}

/// Eigendecomposition of a real symmetric tridiagonal matrix.
///
/// `vectors[[i, j]]` is component `i` of the eigenvector belonging to
/// `values[j]`. Eigenvalues are sorted ascending. Only the first `rows`
/// components of each eigenvector are kept when built with
/// [`SymTridiagEigen::leading_rows`]; the QL rotations act on each row
/// independently, so the retained rows are exact.
#[derive(Clone, Debug)]
pub struct SymTridiagEigen {
    pub values: Array1<f64>,
    pub vectors: Array2<f64>,
}

impl SymTridiagEigen {
    /// `diag` has length n, `offdiag` has length n - 1 (`offdiag[i]` couples
    /// rows i and i + 1).
    pub fn new(diag: &[f64], offdiag: &[f64]) -> Result<Self> {
        Self::leading_rows(diag, offdiag, diag.len())
    }

    pub fn leading_rows(diag: &[f64], offdiag: &[f64], rows: usize) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if offdiag.len() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: offdiag.len(),
            });
        }
        let rows = rows.min(n);
        let mut d = diag.to_vec();
        let mut e = vec![0.0; n];
        e[..n - 1].copy_from_slice(offdiag);
        // basis[j] holds the first `rows` components of eigenvector j
        let mut basis: Vec<Vec<f64>> = (0..n)
            .map(|j| {
                let mut v = vec![0.0; rows];
                if j < rows {
                    v[j] = 1.0;
                }
                v
            })
            .collect();
        tql2(&mut d, &mut e, &mut basis)?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
        let values = order.iter().map(|&j| d[j]).collect::<Array1<f64>>();
        let mut vectors = Array2::<f64>::zeros((rows, n));
        for (col, &j) in order.iter().enumerate() {
            for (i, &x) in basis[j].iter().enumerate() {
                vectors[[i, col]] = x;
            }
        }
        Ok(Self { values, vectors })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Implicit-shift QL iteration (EISPACK tql2 lineage). `e[i]` couples i and
/// i + 1 on entry; it is destroyed. Rotations are accumulated into `basis`,
/// stored one eigenvector per entry.
fn tql2(d: &mut [f64], e: &mut [f64], basis: &mut [Vec<f64>]) -> Result<()> {
    const MAX_ITER: usize = 60;
    let n = d.len();
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_ITER {
                    return Err(Error::NoConvergence(MAX_ITER));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (lo, hi) = basis.split_at_mut(i + 1);
                    let vi = &mut lo[i];
                    let vi1 = &mut hi[0];
                    for (a, b) in vi.iter_mut().zip(vi1.iter_mut()) {
                        let t = *b;
                        *b = s * *a + c * t;
                        *a = c * *a - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

pub(crate) fn max_abs(a: &Array2<C64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiag_dense(diag: &[f64], off: &[f64]) -> Array2<f64> {
        let n = diag.len();
        let mut a = Array2::zeros((n, n));
        for i in 0..n {
            a[[i, i]] = diag[i];
            if i + 1 < n {
                a[[i, i + 1]] = off[i];
                a[[i + 1, i]] = off[i];
            }
        }
        a
    }

    #[test]
    fn eigenpairs_reconstruct_matrix() {
        let diag = [2.0, -1.0, 0.5, 3.0, 0.0, 1.25];
        let off = [1.0, -0.7, 0.3, 2.0, -1.5];
        let eig = SymTridiagEigen::new(&diag, &off).unwrap();
        let a = tridiag_dense(&diag, &off);
        let v = &eig.vectors;
        let lam = Array2::from_diag(&eig.values);
        let back = v.dot(&lam).dot(&v.t());
        let err = (&back - &a).iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(err < 1e-13, "reconstruction error {err}");
        let orth = v.t().dot(v) - Array2::<f64>::eye(6);
        assert!(orth.iter().all(|x| x.abs() < 1e-13));
        assert!(eig.values.windows(2).into_iter().all(|w| w[0] <= w[1]));
    }

    #[test]
    fn two_by_two_eigenvalues() {
        let eig = SymTridiagEigen::new(&[0.0, 0.0], &[1.0]).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn leading_rows_match_full_vectors() {
        let n = 40;
        let diag = vec![0.0; n];
        let off: Vec<f64> = (0..n - 1).map(|m| ((m + 1) as f64).sqrt()).collect();
        let full = SymTridiagEigen::new(&diag, &off).unwrap();
        let part = SymTridiagEigen::leading_rows(&diag, &off, 7).unwrap();
        assert_eq!(part.vectors.dim(), (7, n));
        for i in 0..7 {
            for j in 0..n {
                assert_eq!(part.vectors[[i, j]], full.vectors[[i, j]]);
            }
        }
    }

    #[test]
    fn offdiag_length_is_checked() {
        assert!(matches!(
            SymTridiagEigen::new(&[1.0, 2.0], &[]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn expm_of_rotation_generator() {
        let t = 0.83;
        let a = ndarray::array![
            [C64::new(0.0, 0.0), C64::new(-t, 0.0)],
            [C64::new(t, 0.0), C64::new(0.0, 0.0)]
        ];
        let e = expm(&a);
        let expected = ndarray::array![
            [C64::new(t.cos(), 0.0), C64::new(-t.sin(), 0.0)],
            [C64::new(t.sin(), 0.0), C64::new(t.cos(), 0.0)]
        ];
        assert!(max_abs(&(&e - &expected)) < 1e-15);
    }

    #[test]
    fn expm_of_large_diagonal_uses_squaring() {
        let d = [
            C64::new(0.0, 12.0),
            C64::new(-3.0, 0.0),
            C64::new(1.5, -7.0),
        ];
        let a = Array2::from_diag(&Array1::from(d.to_vec()));
        let e = expm(&a);
        for (i, z) in d.iter().enumerate() {
            let want = z.exp();
            assert!((e[[i, i]] - want).norm() < 1e-13 * want.norm().max(1.0));
        }
    }
}
