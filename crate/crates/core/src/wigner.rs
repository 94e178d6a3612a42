//! Wigner functions as displaced-parity expectation values,
//! `W(alpha) = <psi| D(2 alpha) (-1)^n |psi>`.
//!
//! This normalization puts the vacuum peak at 1. Multiply by
//! [`STANDARD_NORMALIZATION`] to get the usual `(2/pi) <D(2a) P D^dagger(2a)>`
//! convention that integrates to one over the plane.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::cats::GlauberKernel;
use crate::error::{Error, Result};
use crate::fock::{inner, parity_sign, StateVector};
use crate::lattice::{green_analytic, GreenQuery, LatticeSpec};
use crate::specialfn::damped_laguerre;

pub const STANDARD_NORMALIZATION: f64 = std::f64::consts::FRAC_2_PI;

/// Largest imaginary part tolerated before a Wigner value is declared broken.
pub const IMAG_TOL: f64 = 1e-9;
/// Same, for the diagonal propagator trace.
pub const TRACE_IMAG_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    pub x_axis: Vec<f64>,
    pub y_axis: Vec<f64>,
    /// `values[[i, j]] = W(x_axis[i] + i y_axis[j])`; `None` where the point
    /// could not be evaluated.
    pub values: Array2<Option<f64>>,
    pub state_label: String,
}

impl WignerGrid {
    /// Tabulate `f` over the grid.
    pub fn from_fn(
        x_axis: Vec<f64>,
        y_axis: Vec<f64>,
        state_label: &str,
        f: impl Fn(C64) -> f64,
    ) -> Self {
        let values = Array2::from_shape_fn((x_axis.len(), y_axis.len()), |(i, j)| {
            Some(f(C64::new(x_axis[i], y_axis[j])))
        });
        Self {
            x_axis,
            y_axis,
            values,
            state_label: state_label.to_string(),
        }
    }

    pub fn missing(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    /// Value at the grid point closest to `alpha`.
    pub fn nearest(&self, alpha: C64) -> Option<f64> {
        let closest = |axis: &[f64], t: f64| {
            axis.iter()
                .enumerate()
                .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
                .map(|(i, _)| i)
        };
        let i = closest(&self.x_axis, alpha.re)?;
        let j = closest(&self.y_axis, alpha.im)?;
        self.values[[i, j]]
    }

    /// Largest difference over points present in both grids.
    pub fn max_abs_diff(&self, other: &WignerGrid) -> Result<f64> {
        if self.values.dim() != other.values.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: other.values.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .filter_map(|(a, b)| Some((a.as_ref()? - b.as_ref()?).abs()))
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
    }
}

/// `W(alpha)` of a normalized pure state together with the discarded
/// imaginary part.
pub fn wigner_point_raw(psi: &StateVector, alpha: C64) -> Result<C64> {
    let defect = (psi.norm_sqr() - 1.0).abs();
    if defect > NORM_TOL {
        return Err(Error::NotNormalized(defect));
    }
    let kernel = GlauberKernel::new(2.0 * alpha, psi.dim())?;
    let flipped = StateVector::new(
        psi.amplitudes()
            .iter()
            .enumerate()
            .map(|(n, c)| c * parity_sign(n))
            .collect(),
    )?;
    inner(psi, &kernel.apply(&flipped)?)
}

pub fn wigner_point(psi: &StateVector, alpha: C64) -> Result<f64> {
    let w = wigner_point_raw(psi, alpha)?;
    if w.im.abs() > IMAG_TOL {
        return Err(Error::ImaginaryResidual {
            residual: w.im.abs(),
            tolerance: IMAG_TOL,
            context: format!("Wigner value at alpha = {alpha}"),
        });
    }
    Ok(w.re)
}

/// `(-1)^k exp(-2|alpha|^2) L_k(4|alpha|^2)`.
pub fn wigner_fock_closed(k: usize, alpha: C64) -> f64 {
    let x = 4.0 * alpha.norm_sqr();
    parity_sign(k) * damped_laguerre(k, x).unwrap_or(f64::NAN)
}

/// `exp(-2|beta - alpha|^2)`.
pub fn wigner_coherent_closed(beta: C64, alpha: C64) -> f64 {
    (-2.0 * (beta - alpha).norm_sqr()).exp()
}

/// `resolution` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    match resolution {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        n => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Wigner function of `psi` on a `resolution x resolution` grid.
///
/// Points that fail to evaluate (basis too small for the displacement, or an
/// imaginary residual above [`IMAG_TOL`]) are left as `None`.
pub fn wigner_grid(
    psi: &StateVector,
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: usize,
    state_label: &str,
) -> Result<WignerGrid> {
    if resolution == 0 {
        return Err(Error::Config("grid resolution must be positive".into()));
    }
    let defect = (psi.norm_sqr() - 1.0).abs();
    if defect > NORM_TOL {
        return Err(Error::NotNormalized(defect));
    }
    let x_axis = linspace(x_range.0, x_range.1, resolution);
    let y_axis = linspace(y_range.0, y_range.1, resolution);
    let ny = y_axis.len();
    let flat: Vec<Option<f64>> = (0..x_axis.len() * ny)
        .into_par_iter()
        .map(|idx| {
            let alpha = C64::new(x_axis[idx / ny], y_axis[idx % ny]);
            wigner_point(psi, alpha).ok()
        })
        .collect();
    let values = Array2::from_shape_vec((x_axis.len(), ny), flat).expect("grid shape");
    Ok(WignerGrid {
        x_axis,
        y_axis,
        values,
        state_label: state_label.to_string(),
    })
}

/// `<k|U(z_j)|k> = exp(-(g z)^2/2) L_k((g z)^2)` along `z_grid`, which traces
/// `(-1)^k W_k` along the line `2|alpha| = g z`.
pub fn diagonal_trace(spec: &LatticeSpec, k: usize, z_grid: &[f64]) -> Result<Vec<f64>> {
    spec.validate()?;
    z_grid
        .iter()
        .map(|&z| {
            if !(z >= 0.0) {
                return Err(Error::Domain(format!("z must be nonnegative, got {z}")));
            }
            let e = green_analytic(GreenQuery::new(k, k, spec.g * z))?;
            if e.im.abs() > TRACE_IMAG_TOL {
                return Err(Error::ImaginaryResidual {
                    residual: e.im.abs(),
                    tolerance: TRACE_IMAG_TOL,
                    context: format!("diagonal propagator at z = {z}"),
                });
            }
            Ok(e.re)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cats::coherent_state;
    use crate::lattice::Propagator;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn point_examples() {
        let vac = StateVector::vacuum(16).unwrap();
        assert!((wigner_point(&vac, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-14);
        for k in 0..6 {
            let e = StateVector::basis(32, k).unwrap();
            let w = wigner_point(&e, c(0.0, 0.0)).unwrap();
            assert!((w - parity_sign(k)).abs() < 1e-13, "k={k}");
        }
        let e1 = StateVector::basis(32, 1).unwrap();
        let a = c(0.5f64.sqrt(), 0.0);
        let w = wigner_point(&e1, a).unwrap();
        assert!((w - (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(wigner_fock_closed(2, c(0.0, 0.0)), 1.0);
        assert_eq!(wigner_fock_closed(1, c(0.0, 0.0)), -1.0);
        let a = c(0.3, -0.4);
        assert!((wigner_fock_closed(0, a) - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(wigner_coherent_closed(a, a), 1.0);
        assert_eq!(
            wigner_coherent_closed(c(0.0, 0.0), a),
            wigner_fock_closed(0, a)
        );
        let w = wigner_coherent_closed(c(1.0, 0.0), c(0.0, 0.0));
        assert!((w - 0.1353352832366127).abs() < 1e-15);
    }

    #[test]
    fn coherent_state_point_matches_closed_form() {
        let beta = c(0.8, -0.6);
        let psi = coherent_state(beta, 64).unwrap();
        for a in [c(0.0, 0.0), c(1.0, -1.0), c(0.3, 0.2), c(-1.5, 0.7)] {
            let w = wigner_point(&psi, a).unwrap();
            assert!((w - wigner_coherent_closed(beta, a)).abs() < 1e-10);
        }
    }

    #[test]
    fn unnormalized_state_is_rejected() {
        let v = StateVector::basis(8, 0).unwrap().scaled(c(2.0, 0.0));
        assert!(matches!(
            wigner_point(&v, c(0.0, 0.0)),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn grid_matches_fock_closed_form() {
        let psi = StateVector::basis(64, 3).unwrap();
        let grid = wigner_grid(&psi, (-2.0, 2.0), (-2.0, 2.0), 11, "fock:3").unwrap();
        assert_eq!(grid.missing(), 0);
        let closed = WignerGrid::from_fn(grid.x_axis.clone(), grid.y_axis.clone(), "closed", |a| {
            wigner_fock_closed(3, a)
        });
        assert!(grid.max_abs_diff(&closed).unwrap() < 1e-10);
        assert!(grid.max_abs() <= 1.0 + 1e-9);
        assert!((grid.nearest(c(0.0, 0.0)).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_trace_examples() {
        let spec = LatticeSpec::new(1.0, 60).unwrap();
        let t = diagonal_trace(&spec, 0, &[0.0, 1.0]).unwrap();
        assert_eq!(t[0], 1.0);
        assert!((t[1] - (-0.5f64).exp()).abs() < 1e-15);
        let prop = Propagator::new(&spec).unwrap();
        let num = prop.evolve(&StateVector::vacuum(60).unwrap(), 1.0).unwrap();
        assert!((num.amplitudes()[0] - c(t[1], 0.0)).norm() < 1e-12);
    }

    #[test]
    fn diagonal_trace_is_signed_fock_wigner() {
        let spec = LatticeSpec::new(1.0, 60).unwrap();
        let zs: Vec<f64> = (0..=50).map(|j| 0.1 * j as f64).collect();
        for k in 0..=5 {
            let t = diagonal_trace(&spec, k, &zs).unwrap();
            for (z, v) in zs.iter().zip(t) {
                let w = wigner_fock_closed(k, c(z / 2.0, 0.0));
                assert!((v - parity_sign(k) * w).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(-2.0, 2.0, 41);
        assert_eq!(v.len(), 41);
        assert_eq!(v[0], -2.0);
        assert_eq!(v[20], 0.0);
        assert_eq!(v[40], 2.0);
    }
}
