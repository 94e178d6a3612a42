//! Truncated Fock space: states, ladder and parity operators, inner products.
//!
//! Index `m` of every vector is both the occupation number of the oscillator
//! and the waveguide number of the lattice; index 0 is the vacuum / edge
//! waveguide.

use std::ops::{Add, Mul, Sub};

use ndarray::{s, Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg;

/// Rows at the truncation edge excluded from operator identities by default.
pub const DEFAULT_EDGE_ROWS: usize = 5;

pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub(crate) const I: C64 = C64 { re: 0.0, im: 1.0 };

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidDimension(dim))
    } else {
        Ok(())
    }
}

/// Complex amplitudes over a truncated number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Array1<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Array1<C64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        Ok(Self { amplitudes })
    }

    pub fn from_vec(amplitudes: Vec<C64>) -> Result<Self> {
        Self::new(Array1::from(amplitudes))
    }

    /// The number state `|k>`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        check_dim(dim)?;
        if k >= dim {
            return Err(Error::Domain(format!(
                "basis index {k} outside a basis of dimension {dim}"
            )));
        }
        let mut amplitudes = Array1::from_elem(dim, ZERO);
        amplitudes[k] = ONE;
        Ok(Self { amplitudes })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        Self::basis(dim, 0)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Array1<C64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// `|c_m|^2` for every site.
    pub fn intensities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `sum_m m |c_m|^2`.
    pub fn mean_occupation(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(m, z)| m as f64 * z.norm_sqr())
            .sum()
    }

    /// Population held by the last `edge` sites.
    pub fn edge_population(&self, edge: usize) -> f64 {
        let start = self.dim().saturating_sub(edge);
        self.amplitudes
            .slice(s![start..])
            .iter()
            .map(|z| z.norm_sqr())
            .sum()
    }

    /// Largest index whose population exceeds `floor`.
    pub fn support_edge(&self, floor: f64) -> usize {
        self.amplitudes
            .iter()
            .rposition(|z| z.norm_sqr() > floor)
            .unwrap_or(0)
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn scaled(&self, factor: C64) -> StateVector {
        StateVector {
            amplitudes: self.amplitudes.mapv(|z| z * factor),
        }
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `sum_m conj(bra_m) ket_m`.
pub fn inner(bra: &StateVector, ket: &StateVector) -> Result<C64> {
    same_dim(bra.dim(), ket.dim())?;
    Ok(bra
        .amplitudes
        .iter()
        .zip(ket.amplitudes.iter())
        .map(|(b, k)| b.conj() * k)
        .sum())
}

/// Dense square operator in the number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    entries: Array2<C64>,
}

impl OperatorMatrix {
    pub fn new(entries: Array2<C64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        check_dim(entries.nrows())?;
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            entries: Array2::zeros((dim, dim)),
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            entries: Array2::eye(dim),
        })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        check_dim(diag.len())?;
        let d = diag
            .iter()
            .map(|&x| C64::new(x, 0.0))
            .collect::<Array1<_>>();
        Ok(Self {
            entries: Array2::from_diag(&d),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[[row, col]]
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            entries: self.entries.t().mapv(|z| z.conj()),
        }
    }

    pub fn scale(&self, factor: C64) -> OperatorMatrix {
        OperatorMatrix {
            entries: self.entries.mapv(|z| z * factor),
        }
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        same_dim(self.dim(), state.dim())?;
        Ok(StateVector {
            amplitudes: self.entries.dot(&state.amplitudes),
        })
    }

    pub fn column(&self, k: usize) -> StateVector {
        StateVector {
            amplitudes: self.entries.column(k).to_owned(),
        }
    }

    /// `exp(self)` by scaling and squaring.
    pub fn exp(&self) -> OperatorMatrix {
        OperatorMatrix {
            entries: linalg::expm(&self.entries),
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &OperatorMatrix) -> OperatorMatrix {
        &(self * other) - &(other * self)
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.entries)
    }

    /// Largest entry difference over the leading `block x block` sub-matrix.
    pub fn max_abs_diff_block(&self, other: &OperatorMatrix, block: usize) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator dimensions differ");
        let b = block.min(self.dim());
        self.entries
            .slice(s![..b, ..b])
            .iter()
            .zip(other.entries.slice(s![..b, ..b]).iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        self.max_abs_diff_block(other, self.dim())
    }

    /// `max|M - M^dagger| <= tol * max|M|`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol * self.max_abs()
    }

    /// `max|M^dagger M - I|` over the leading block.
    pub fn unitarity_defect(&self, block: usize) -> f64 {
        let product = &self.adjoint() * self;
        product.max_abs_diff_block(&OperatorMatrix::identity(self.dim()).unwrap(), block)
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            entries: self.entries.dot(&rhs.entries),
        }
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix {
            entries: &self.entries - &rhs.entries,
        }
    }
}

/// `a|n> = sqrt(n)|n-1>`.
pub fn annihilation(dim: usize) -> Result<OperatorMatrix> {
    check_dim(dim)?;
    let mut m = Array2::zeros((dim, dim));
    for n in 1..dim {
        m[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    Ok(OperatorMatrix { entries: m })
}

/// `a^dagger|n> = sqrt(n+1)|n+1>`.
pub fn creation(dim: usize) -> Result<OperatorMatrix> {
    let a = annihilation(dim)?;
    Ok(OperatorMatrix {
        entries: a.entries.reversed_axes(),
    })
}

/// Photon-number parity `(-1)^n`.
pub fn parity(dim: usize) -> Result<OperatorMatrix> {
    check_dim(dim)?;
    let signs: Vec<f64> = (0..dim).map(parity_sign).collect();
    OperatorMatrix::from_real_diagonal(&signs)
}

pub(crate) fn parity_sign(m: usize) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The parity-deformed pair `(A, A^dagger) = ((-1)^n a, a^dagger (-1)^n)`.
pub fn deformed_ladder(dim: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let p = parity(dim)?;
    let a = annihilation(dim)?;
    let ad = creation(dim)?;
    Ok((&p * &a, &ad * &p))
}

/// Number of leading indices on which truncated identities are compared when
/// the last `edge` rows are quarantined.
pub fn interior_rows(dim: usize, edge: usize) -> usize {
    dim.saturating_sub(edge).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn annihilation_entries() {
        let a = annihilation(2).unwrap();
        assert_eq!(a.get(0, 1), ONE);
        assert_eq!(a.get(0, 0), ZERO);
        assert_eq!(a.get(1, 0), ZERO);
        assert_eq!(a.get(1, 1), ZERO);

        let a4 = annihilation(4).unwrap();
        assert!((a4.get(2, 3).re - 1.7320508075688772).abs() < 1e-15);

        let a1 = annihilation(1).unwrap();
        assert_eq!(a1.get(0, 0), ZERO);
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(matches!(annihilation(0), Err(Error::InvalidDimension(0))));
        assert!(matches!(creation(0), Err(Error::InvalidDimension(0))));
        assert!(matches!(parity(0), Err(Error::InvalidDimension(0))));
        assert!(matches!(
            deformed_ladder(0),
            Err(Error::InvalidDimension(0))
        ));
        assert!(StateVector::from_vec(vec![]).is_err());
    }

    #[test]
    fn creation_is_adjoint_of_annihilation() {
        let ad = creation(4).unwrap();
        assert_eq!(ad.get(1, 0), ONE);
        assert_eq!(ad.get(3, 2), c(3f64.sqrt()));
        for d in 1..=256 {
            assert_eq!(creation(d).unwrap(), annihilation(d).unwrap().adjoint());
        }
    }

    #[test]
    fn parity_is_an_involution() {
        let p = parity(3).unwrap();
        assert_eq!(p.get(0, 0), ONE);
        assert_eq!(p.get(1, 1), -ONE);
        assert_eq!(p.get(2, 2), ONE);
        for d in [1, 2, 7, 64] {
            let p = parity(d).unwrap();
            assert_eq!(&p * &p, OperatorMatrix::identity(d).unwrap());
        }
        let psi = StateVector::basis(4, 1).unwrap();
        let out = parity(4).unwrap().apply(&psi).unwrap();
        assert_eq!(out.amplitudes().to_vec(), vec![ZERO, -ONE, ZERO, ZERO]);
    }

    #[test]
    fn parity_conjugation_flips_annihilation() {
        for d in [2, 5, 32] {
            let p = parity(d).unwrap();
            let a = annihilation(d).unwrap();
            let flipped = &(&p * &a) * &p;
            assert_eq!(flipped, a.scale(-ONE));
        }
    }

    #[test]
    fn deformed_ladder_entries() {
        let (a, ad) = deformed_ladder(3).unwrap();
        assert_eq!(a.get(0, 1), ONE);
        assert!((a.get(1, 2) - c(-(2f64.sqrt()))).norm() < 1e-15);
        assert_eq!(ad, a.adjoint());
        let vac = StateVector::vacuum(3).unwrap();
        assert!(a.apply(&vac).unwrap().norm_sqr() == 0.0);
    }

    #[test]
    fn truncated_commutator_defect_sits_on_last_row() {
        let d = 12;
        let a = annihilation(d).unwrap();
        let ad = creation(d).unwrap();
        let defect = &a.commutator(&ad) - &OperatorMatrix::identity(d).unwrap();
        for i in 0..d - 1 {
            for j in 0..d {
                assert!(defect.get(i, j).norm() < 1e-14, "row {i}");
            }
        }
        // [a, a^dagger] = 1 - d |d-1><d-1| after truncation
        assert!((defect.get(d - 1, d - 1) - c(-(d as f64))).norm() < 1e-12);
    }

    #[test]
    fn deformed_commutator_is_identity_in_the_interior() {
        let d = 16;
        let (a, ad) = deformed_ladder(d).unwrap();
        let defect = &a.commutator(&ad) - &OperatorMatrix::identity(d).unwrap();
        for i in 0..d - 1 {
            for j in 0..d {
                assert!(defect.get(i, j).norm() < 1e-13, "({i},{j})");
            }
        }
        assert!(defect.get(d - 1, d - 1).norm() > 1.0);
    }

    #[test]
    fn inner_products() {
        let e = |k| StateVector::basis(5, k).unwrap();
        assert_eq!(inner(&e(2), &e(2)).unwrap(), ONE);
        assert_eq!(inner(&e(1), &e(3)).unwrap(), ZERO);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let sup = StateVector::from_vec(vec![c(h), c(h), ZERO, ZERO, ZERO]).unwrap();
        assert!((inner(&sup, &e(0)).unwrap() - c(h)).norm() < 1e-16);
        let other = StateVector::basis(4, 0).unwrap();
        assert!(matches!(
            inner(&sup, &other),
            Err(Error::DimensionMismatch {
                expected: 5,
                found: 4
            })
        ));
    }

    #[test]
    fn apply_checks_dimensions() {
        let p = parity(3).unwrap();
        let psi = StateVector::basis(4, 0).unwrap();
        assert!(p.apply(&psi).is_err());
    }

    #[test]
    fn hermitian_tag() {
        let a = annihilation(6).unwrap();
        let x = &a + &a.adjoint();
        assert!(x.is_hermitian(1e-12));
        assert!(!a.is_hermitian(1e-12));
    }
}
