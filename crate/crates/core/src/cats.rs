//! Coherent and displaced number states, the parity-deformed displacement
//! operator and the cat superpositions it produces.
//!
//! Glauber displacements are evaluated as the leading block of the operator in
//! a larger working basis, so their entries are those of the untruncated
//! operator. The working basis diagonalizes the position quadrature
//! `X = a + a^dagger`: with `alpha = r e^{i phi}`,
//!
//! ```text
//! D(alpha) = U exp(i r X) U^dagger,   U = diag((-i e^{i phi})^n)
//! ```

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;
use std::sync::{Arc, Mutex};

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{self, OperatorMatrix, StateVector, I, ONE, ZERO};
use crate::linalg::SymTridiagEigen;
use crate::specialfn::log_factorial;
use crate::truncation::TruncationGuard;

/// Working bases are rounded up to a multiple of this to share cached
/// eigendecompositions.
const WORKING_DIM_STEP: usize = 64;
/// Upper bound on the working basis (the eigendecomposition is O(n^2 dim)).
pub const MAX_WORKING_DIM: usize = 4096;

type EigenCache = Mutex<HashMap<(usize, usize), Arc<SymTridiagEigen>>>;

static POSITION_EIGEN: std::sync::LazyLock<EigenCache> =
    std::sync::LazyLock::new(|| Mutex::new(HashMap::new()));

fn position_eigen(working_dim: usize, rows: usize) -> Result<Arc<SymTridiagEigen>> {
    let mut cache = POSITION_EIGEN.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(e) = cache.get(&(working_dim, rows)) {
        return Ok(Arc::clone(e));
    }
    let diag = vec![0.0; working_dim];
    let off: Vec<f64> = (1..working_dim).map(|n| (n as f64).sqrt()).collect();
    let eig = Arc::new(SymTridiagEigen::leading_rows(&diag, &off, rows)?);
    cache.insert((working_dim, rows), Arc::clone(&eig));
    Ok(eig)
}

fn working_dim(displacement: f64, dim: usize) -> Result<usize> {
    let needed = TruncationGuard::default()
        .min_dim(displacement, dim - 1)
        .max(dim);
    let rounded = needed.div_ceil(WORKING_DIM_STEP) * WORKING_DIM_STEP;
    if rounded > MAX_WORKING_DIM {
        return Err(Error::TruncationRisk {
            displacement,
            fock_index: dim - 1,
            required_dim: rounded,
            dim: MAX_WORKING_DIM,
        });
    }
    Ok(rounded)
}

/// Glauber displacement `D(alpha)` restricted to the first `dim` number
/// states. Use [`GlauberKernel::apply`] when only `D(alpha)|psi>` is needed.
#[derive(Clone, Debug)]
pub struct GlauberKernel {
    alpha: C64,
    dim: usize,
    eigen: Arc<SymTridiagEigen>,
    // (-i e^{i phi})^n
    gauge: Array1<C64>,
    // exp(i r lambda_j)
    phases: Array1<C64>,
}

impl GlauberKernel {
    pub fn new(alpha: C64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::Domain(format!("non-finite displacement {alpha}")));
        }
        let r = alpha.norm();
        let eigen = position_eigen(working_dim(r, dim)?, dim)?;
        let step = if r > 0.0 { -I * alpha / r } else { -I };
        let mut gauge = Array1::from_elem(dim, ONE);
        for n in 1..dim {
            gauge[n] = gauge[n - 1] * step;
        }
        let phases = eigen.values.mapv(|lam| C64::from_polar(1.0, r * lam));
        Ok(Self {
            alpha,
            dim,
            eigen,
            gauge,
            phases,
        })
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> OperatorMatrix {
        let v = &self.eigen.vectors;
        let working = self.eigen.dim();
        let mut left = Array2::<C64>::zeros((self.dim, working));
        let mut right = Array2::<C64>::zeros((working, self.dim));
        for m in 0..self.dim {
            for j in 0..working {
                left[[m, j]] = self.gauge[m] * v[[m, j]] * self.phases[j];
                right[[j, m]] = self.gauge[m].conj() * v[[m, j]];
            }
        }
        OperatorMatrix::new(left.dot(&right)).expect("square by construction")
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: psi.dim(),
            });
        }
        let v = &self.eigen.vectors;
        let rotated: Array1<C64> = psi
            .amplitudes()
            .iter()
            .zip(self.gauge.iter())
            .map(|(c, u)| u.conj() * c)
            .collect();
        let mut spectral = Array1::<C64>::zeros(self.eigen.dim());
        for (n, c) in rotated.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            for (j, y) in spectral.iter_mut().enumerate() {
                *y += v[[n, j]] * c;
            }
        }
        spectral *= &self.phases;
        let out: Array1<C64> = (0..self.dim)
            .map(|m| {
                let row = v.row(m);
                let acc: C64 = row.iter().zip(spectral.iter()).map(|(x, y)| *x * y).sum();
                self.gauge[m] * acc
            })
            .collect();
        StateVector::new(out)
    }

    /// `D(alpha)|k>`.
    pub fn column(&self, k: usize) -> Result<StateVector> {
        self.apply(&StateVector::basis(self.dim, k)?)
    }
}

/// Standard coherent state `|beta>` with `c_n = e^{-|beta|^2/2} beta^n / sqrt(n!)`.
pub fn coherent_state(beta: C64, dim: usize) -> Result<StateVector> {
    coherent_state_guarded(beta, dim, &TruncationGuard::default())
}

pub fn coherent_state_guarded(
    beta: C64,
    dim: usize,
    guard: &TruncationGuard,
) -> Result<StateVector> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    guard.check(beta.norm(), 0, dim)?;
    let r = beta.norm();
    if r == 0.0 {
        return StateVector::vacuum(dim);
    }
    let phase = beta / r;
    let mut rotor = ONE;
    let amps = (0..dim)
        .map(|n| {
            let mag = (-0.5 * r * r + n as f64 * r.ln() - 0.5 * log_factorial(n)).exp();
            let c = rotor * mag;
            rotor *= phase;
            c
        })
        .collect::<Vec<_>>();
    StateVector::from_vec(amps)
}

/// `D(alpha)` on the first `dim` number states.
pub fn glauber_displacement(alpha: C64, dim: usize) -> Result<OperatorMatrix> {
    Ok(GlauberKernel::new(alpha, dim)?.matrix())
}

/// Displaced number state `|alpha, k> = D(alpha)|k>`.
pub fn displaced_fock(alpha: C64, k: usize, dim: usize) -> Result<StateVector> {
    displaced_fock_guarded(alpha, k, dim, &TruncationGuard::default())
}

pub fn displaced_fock_guarded(
    alpha: C64,
    k: usize,
    dim: usize,
    guard: &TruncationGuard,
) -> Result<StateVector> {
    if k >= dim {
        return Err(Error::Domain(format!(
            "Fock index {k} outside a basis of dimension {dim}"
        )));
    }
    guard.check(alpha.norm(), k, dim)?;
    GlauberKernel::new(alpha, dim)?.column(k)
}

/// Parity-deformed displacement `exp(alpha A^dagger - alpha^* A)` with
/// `A = (-1)^n a`, assembled as
/// `[D(i alpha) - D^dagger(i alpha)] (-1)^n / 2i + [D(i alpha) + D^dagger(i alpha)] / 2`.
pub fn deformed_displacement(alpha: C64, dim: usize) -> Result<OperatorMatrix> {
    let d = glauber_displacement(I * alpha, dim)?;
    let dd = d.adjoint();
    let p = fock::parity(dim)?;
    let odd = (&(&d - &dd) * &p).scale(C64::new(0.0, -0.5));
    let even = (&d + &dd).scale(C64::new(0.5, 0.0));
    Ok(&odd + &even)
}

/// One term `weight * |displacement, fock_index>` of a cat superposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatComponent {
    pub weight: C64,
    pub displacement: C64,
    pub fock_index: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatDecomposition {
    pub components: Vec<CatComponent>,
}

fn parity_phase(k: usize) -> f64 {
    fock::parity_sign(k)
}

impl CatDecomposition {
    /// `D_NL(alpha)|k>` as two displaced number states with phases
    /// `exp(-/+ i (-1)^k pi/4) / sqrt 2` at displacements `+/- i alpha`.
    pub fn from_fock(alpha: C64, k: usize) -> Self {
        let s = parity_phase(k);
        let w = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            components: vec![
                CatComponent {
                    weight: C64::from_polar(w, -s * FRAC_PI_4),
                    displacement: I * alpha,
                    fock_index: k,
                },
                CatComponent {
                    weight: C64::from_polar(w, s * FRAC_PI_4),
                    displacement: -I * alpha,
                    fock_index: k,
                },
            ],
        }
    }

    /// `D_NL(alpha)|beta, k>` as four displaced number states.
    pub fn from_displaced(alpha: C64, beta: C64, k: usize) -> Self {
        let s = parity_phase(k);
        let re = (alpha * beta.conj()).re;
        let minus = C64::from_polar(0.5, -re);
        let plus = C64::from_polar(0.5, re);
        let term = |weight, displacement| CatComponent {
            weight,
            displacement,
            fock_index: k,
        };
        Self {
            components: vec![
                term(minus, -I * alpha + beta),
                term(minus * (-I * s), I * alpha - beta),
                term(plus, I * alpha + beta),
                term(plus * (I * s), -I * alpha - beta),
            ],
        }
    }

    /// Lattice evolution of `|beta, k>` over `theta = g z`: four displaced
    /// number states at `-theta + beta`, `theta - beta`, `theta + beta` and
    /// `-theta - beta`.
    pub fn from_lattice(beta: C64, k: usize, theta: f64) -> Self {
        let s = parity_phase(k);
        let lead = C64::from_polar(0.5, theta * beta.im);
        let trail = lead.conj();
        let t = C64::new(theta, 0.0);
        let term = |weight, displacement| CatComponent {
            weight,
            displacement,
            fock_index: k,
        };
        Self {
            components: vec![
                term(lead, -t + beta),
                term(lead * (-I * s), t - beta),
                term(trail, t + beta),
                term(trail * (I * s), -t - beta),
            ],
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Largest `|displacement|` among the components.
    pub fn max_displacement(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.displacement.norm())
            .fold(0.0, f64::max)
    }

    /// `sum_i weight_i |displacement_i, k_i>` in a basis of size `dim`.
    pub fn reconstruct(&self, dim: usize) -> Result<StateVector> {
        let mut acc = Array1::<C64>::zeros(dim);
        for c in &self.components {
            let col = GlauberKernel::new(c.displacement, dim)?.column(c.fock_index)?;
            acc.scaled_add(c.weight, col.amplitudes());
        }
        StateVector::new(acc)
    }

    /// Components with coinciding displacements (within `tol`) summed, and
    /// those whose merged weight falls below `tol` dropped.
    pub fn merged(&self, tol: f64) -> CatDecomposition {
        let mut out: Vec<CatComponent> = Vec::new();
        for c in &self.components {
            match out.iter_mut().find(|o| {
                o.fock_index == c.fock_index && (o.displacement - c.displacement).norm() <= tol
            }) {
                Some(o) => o.weight += c.weight,
                None => out.push(*c),
            }
        }
        out.retain(|c| c.weight.norm() > tol);
        CatDecomposition { components: out }
    }
}

/// `D_NL(alpha)|k>` and its two-component decomposition.
pub fn cat_from_fock(alpha: C64, k: usize, dim: usize) -> Result<(StateVector, CatDecomposition)> {
    if k >= dim {
        return Err(Error::Domain(format!(
            "Fock index {k} outside a basis of dimension {dim}"
        )));
    }
    TruncationGuard::default().check(alpha.norm(), k, dim)?;
    let state = deformed_displacement(alpha, dim)?.column(k);
    Ok((state, CatDecomposition::from_fock(alpha, k)))
}

/// `D_NL(alpha)|beta, k>` and its four-component decomposition.
pub fn cat_from_displaced(
    alpha: C64,
    beta: C64,
    k: usize,
    dim: usize,
) -> Result<(StateVector, CatDecomposition)> {
    let guard = TruncationGuard::default();
    guard.check(alpha.norm() + beta.norm(), k, dim)?;
    let input = displaced_fock_guarded(beta, k, dim, &guard)?;
    let state = deformed_displacement(alpha, dim)?.apply(&input)?;
    Ok((state, CatDecomposition::from_displaced(alpha, beta, k)))
}
