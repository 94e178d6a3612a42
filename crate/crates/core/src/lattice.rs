//! The deformed Glauber-Fock waveguide lattice: Hamiltonian, numerical
//! propagation, the closed-form Green function and cat splitting of
//! displaced-number-state inputs.
//!
//! Coupled-mode equations
//!
//! ```text
//! i dE_m/dz = g (-1)^{m-1} sqrt(m) E_{m-1} + g (-1)^m sqrt(m+1) E_{m+1}
//! ```
//!
//! i.e. `E(z) = exp(-i z H) E(0)` with `H = g (A^dagger + A)`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::cats::{displaced_fock_guarded, CatDecomposition};
use crate::error::{Error, Result};
use crate::fock::{parity_sign, OperatorMatrix, StateVector, DEFAULT_EDGE_ROWS, I};
use crate::linalg::SymTridiagEigen;
use crate::specialfn::{log_amplitude_prefactor, LogAmplitude};
use crate::truncation::{TruncationGuard, DEFAULT_MARGIN};

pub const DEFAULT_LEAKAGE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeSpec {
    pub g: f64,
    pub sites: usize,
    pub leakage_tol: f64,
    /// Number of boundary sites whose population counts as leakage.
    pub edge_sites: usize,
}

impl LatticeSpec {
    pub fn new(g: f64, sites: usize) -> Result<Self> {
        let spec = Self {
            g,
            sites,
            leakage_tol: DEFAULT_LEAKAGE_TOL,
            edge_sites: DEFAULT_EDGE_ROWS,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_leakage_tol(mut self, tol: f64) -> Result<Self> {
        self.leakage_tol = tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g > 0.0) || !self.g.is_finite() {
            return Err(Error::Config(format!(
                "coupling g must be positive, got {}",
                self.g
            )));
        }
        if self.sites < 2 {
            return Err(Error::Config(format!(
                "a lattice needs at least 2 sites, got {}",
                self.sites
            )));
        }
        if !(self.leakage_tol >= 0.0) {
            return Err(Error::Config(format!(
                "leakage tolerance must be nonnegative, got {}",
                self.leakage_tol
            )));
        }
        Ok(())
    }

    /// Coupling between sites `m` and `m + 1`.
    pub fn coupling(&self, m: usize) -> f64 {
        self.g * parity_sign(m) * ((m + 1) as f64).sqrt()
    }

    fn offdiag(&self) -> Vec<f64> {
        (0..self.sites - 1).map(|m| self.coupling(m)).collect()
    }
}

/// `H = g (a^dagger (-1)^n + (-1)^n a)` on `sites` waveguides.
pub fn hamiltonian(spec: &LatticeSpec) -> Result<OperatorMatrix> {
    spec.validate()?;
    let n = spec.sites;
    let mut h = Array2::<C64>::zeros((n, n));
    for (m, c) in spec.offdiag().into_iter().enumerate() {
        h[[m, m + 1]] = C64::new(c, 0.0);
        h[[m + 1, m]] = C64::new(c, 0.0);
    }
    OperatorMatrix::new(h)
}

/// `exp(-i z H)` through a one-time eigendecomposition of `H`.
#[derive(Clone, Debug)]
pub struct Propagator {
    spec: LatticeSpec,
    eigen: SymTridiagEigen,
}

impl Propagator {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        spec.validate()?;
        let eigen = SymTridiagEigen::new(&vec![0.0; spec.sites], &spec.offdiag())?;
        Ok(Self { spec: *spec, eigen })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn eigenvalues(&self) -> &Array1<f64> {
        &self.eigen.values
    }

    fn spectral(&self, input: &StateVector) -> Result<Array1<C64>> {
        if input.dim() != self.spec.sites {
            return Err(Error::DimensionMismatch {
                expected: self.spec.sites,
                found: input.dim(),
            });
        }
        let v = &self.eigen.vectors;
        Ok(v.t().mapv(|x| C64::new(x, 0.0)).dot(input.amplitudes()))
    }

    fn synthesize(&self, spectral: &Array1<C64>, z: f64) -> Array1<C64> {
        let rotated: Array1<C64> = spectral
            .iter()
            .zip(self.eigen.values.iter())
            .map(|(c, lam)| c * C64::from_polar(1.0, -z * lam))
            .collect();
        let v = &self.eigen.vectors;
        (0..self.spec.sites)
            .map(|m| {
                v.row(m)
                    .iter()
                    .zip(rotated.iter())
                    .map(|(x, c)| c * *x)
                    .sum()
            })
            .collect()
    }

    pub fn evolve(&self, input: &StateVector, z: f64) -> Result<StateVector> {
        if z == 0.0 {
            return Ok(input.clone());
        }
        let c = self.spectral(input)?;
        StateVector::new(self.synthesize(&c, z))
    }

    /// The full propagator matrix `exp(-i z H)`.
    pub fn matrix(&self, z: f64) -> OperatorMatrix {
        let v = self.eigen.vectors.mapv(|x| C64::new(x, 0.0));
        let phased = Array2::from_shape_fn(v.dim(), |(m, j)| {
            v[[m, j]] * C64::from_polar(1.0, -z * self.eigen.values[j])
        });
        OperatorMatrix::new(phased.dot(&v.t())).expect("square by construction")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LeakageStatus {
    Ok,
    /// Boundary population exceeded the tolerance; results near the lattice
    /// edge are unreliable.
    Warning {
        max_leakage: f64,
        at_z: f64,
        min_safe_sites: usize,
    },
}

impl LeakageStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, LeakageStatus::Ok)
    }
}

#[derive(Clone, Debug)]
pub struct EvolutionRecord {
    pub z_grid: Vec<f64>,
    /// Row `j` holds `E_m(z_j)`.
    pub fields: Array2<C64>,
    pub input_label: String,
    pub leakage: Vec<f64>,
    pub status: LeakageStatus,
}

impl EvolutionRecord {
    pub fn intensities(&self) -> Array2<f64> {
        self.fields.mapv(|z| z.norm_sqr())
    }

    pub fn state(&self, j: usize) -> StateVector {
        StateVector::new(self.fields.row(j).to_owned()).expect("non-empty row")
    }

    pub fn max_leakage(&self) -> f64 {
        self.leakage.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_norm_defect(&self) -> f64 {
        self.fields
            .rows()
            .into_iter()
            .map(|r| (r.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Rough lattice size that keeps an input with support up to site `top`
/// away from the boundary until `theta_max = g z_max`.
pub fn min_safe_sites(top: usize, theta_max: f64) -> usize {
    let r = (top as f64).sqrt() + theta_max + 1.0 + DEFAULT_MARGIN;
    (r * r).ceil() as usize
}

fn leakage_status(
    spec: &LatticeSpec,
    input: &StateVector,
    z_grid: &[f64],
    leakage: &[f64],
) -> LeakageStatus {
    let worst = leakage.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1));
    match worst {
        Some((j, &max_leakage)) if max_leakage > spec.leakage_tol => {
            let z_max = z_grid.iter().copied().fold(0.0, f64::max);
            let top = input.support_edge(1e-30);
            LeakageStatus::Warning {
                max_leakage,
                at_z: z_grid[j],
                min_safe_sites: min_safe_sites(top, spec.g * z_max).max(spec.sites + 1),
            }
        }
        _ => LeakageStatus::Ok,
    }
}

fn check_z_grid(z_grid: &[f64]) -> Result<()> {
    if z_grid.is_empty() {
        return Err(Error::Config("empty z grid".into()));
    }
    if z_grid.iter().any(|z| !(*z >= 0.0) || !z.is_finite()) {
        return Err(Error::Config(
            "z grid must be finite and nonnegative".into(),
        ));
    }
    if z_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Config("z grid must be ascending".into()));
    }
    Ok(())
}

/// `E(z_j) = exp(-i z_j H) E(0)` for every sample of `z_grid`.
pub fn evolve_numeric(
    spec: &LatticeSpec,
    input: &StateVector,
    z_grid: &[f64],
    input_label: &str,
) -> Result<EvolutionRecord> {
    check_z_grid(z_grid)?;
    let prop = Propagator::new(spec)?;
    let c = prop.spectral(input)?;
    let rows: Vec<Array1<C64>> = z_grid
        .par_iter()
        .map(|&z| {
            if z == 0.0 {
                input.amplitudes().clone()
            } else {
                prop.synthesize(&c, z)
            }
        })
        .collect();
    let mut fields = Array2::<C64>::zeros((z_grid.len(), spec.sites));
    for (j, row) in rows.into_iter().enumerate() {
        fields.row_mut(j).assign(&row);
    }
    let leakage: Vec<f64> = fields
        .rows()
        .into_iter()
        .map(|r| {
            r.iter()
                .skip(spec.sites.saturating_sub(spec.edge_sites))
                .map(|z| z.norm_sqr())
                .sum()
        })
        .collect();
    let status = leakage_status(spec, input, z_grid, &leakage);
    Ok(EvolutionRecord {
        z_grid: z_grid.to_vec(),
        fields,
        input_label: input_label.to_string(),
        leakage,
        status,
    })
}

/// Output site `m`, input site `k`, `theta = g z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenQuery {
    pub m: usize,
    pub k: usize,
    pub theta: f64,
}

impl GreenQuery {
    pub fn new(m: usize, k: usize, theta: f64) -> Self {
        Self { m, k, theta }
    }
}

/// Which closed form of the Green function to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenBranch {
    /// `m <= k`
    Left,
    /// `m >= k`
    Right,
}

fn phase(angle: f64) -> C64 {
    C64::from_polar(1.0, angle)
}

/// `<m|U|k>` from the requested branch, which must cover `(m, k)`.
pub fn green_branch(branch: GreenBranch, q: GreenQuery) -> Result<C64> {
    let GreenQuery { m, k, theta } = q;
    let (s, first, second) = match branch {
        GreenBranch::Left => {
            if m > k {
                return Err(Error::Domain(format!(
                    "left branch needs m <= k, got m={m} k={k}"
                )));
            }
            if k % 2 == 1 {
                (k - m, phase(-FRAC_PI_4), phase(FRAC_PI_4))
            } else {
                (k - m, phase(FRAC_PI_4), phase(-FRAC_PI_4))
            }
        }
        GreenBranch::Right => {
            if m < k {
                return Err(Error::Domain(format!(
                    "right branch needs m >= k, got m={m} k={k}"
                )));
            }
            if k % 2 == 1 {
                (m - k, phase(FRAC_PI_4), phase(-FRAC_PI_4))
            } else {
                (m - k, phase(-FRAC_PI_4), phase(FRAC_PI_4))
            }
        }
    };
    let amp = log_amplitude_prefactor(m, k, theta)?;
    // theta^s and (-theta)^s differ by (-1)^s; the magnitude lives in `amp`
    let combo = (first + second * parity_sign(s)) * FRAC_1_SQRT_2;
    // the combination is exactly 1, -1, i or -i
    let combo = C64::new(combo.re.round(), combo.im.round());
    Ok(combo * amp.value())
}

/// Green function `E_m(z) = <m|exp(-i z H)|k>` of the semi-infinite lattice.
pub fn green_analytic(q: GreenQuery) -> Result<C64> {
    if q.m < q.k {
        green_branch(GreenBranch::Left, q)
    } else {
        green_branch(GreenBranch::Right, q)
    }
}

#[derive(Clone, Debug)]
pub struct GreenColumn {
    pub state: StateVector,
    pub leakage: f64,
    pub status: LeakageStatus,
}

/// `E_m(z)` for `m = 0..sites` with site `k` excited.
pub fn green_column(k: usize, spec: &LatticeSpec, z: f64) -> Result<GreenColumn> {
    spec.validate()?;
    if k >= spec.sites {
        return Err(Error::Domain(format!(
            "input site {k} outside a lattice of {} sites",
            spec.sites
        )));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "z must be finite and nonnegative, got {z}"
        )));
    }
    let theta = spec.g * z;
    let amps = (0..spec.sites)
        .map(|m| green_analytic(GreenQuery::new(m, k, theta)))
        .collect::<Result<Vec<_>>>()?;
    let state = StateVector::from_vec(amps)?;
    let leakage = state.edge_population(spec.edge_sites);
    let input = StateVector::basis(spec.sites, k)?;
    let status = leakage_status(spec, &input, &[z], &[leakage]);
    Ok(GreenColumn {
        state,
        leakage,
        status,
    })
}

/// The eight closed-form matrix elements behind the disentangled propagator
/// `U = exp(-theta^2/2) [F (1 - i(-1)^n)/2 + B (1 + i(-1)^n)/2]` with
/// `F = exp(theta a^dagger) exp(-theta a)` and `B = exp(-theta a^dagger) exp(theta a)`.
/// `Lower` variants cover `m >= k`, `Upper` variants `m <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AppendixVariant {
    /// `<m|F (-1)^n|k>`, `m >= k`
    ForwardParityLower,
    /// `<m|F (-1)^n|k>`, `m <= k`
    ForwardParityUpper,
    /// `<m|B (-1)^n|k>`, `m >= k`
    BackwardParityLower,
    /// `<m|B (-1)^n|k>`, `m <= k`
    BackwardParityUpper,
    /// `<m|B|k>`, `m >= k`
    BackwardLower,
    /// `<m|B|k>`, `m <= k`
    BackwardUpper,
    /// `<m|F|k>`, `m >= k`
    ForwardLower,
    /// `<m|F|k>`, `m <= k`
    ForwardUpper,
}

impl AppendixVariant {
    pub const ALL: [AppendixVariant; 8] = [
        Self::ForwardParityLower,
        Self::ForwardParityUpper,
        Self::BackwardParityLower,
        Self::BackwardParityUpper,
        Self::BackwardLower,
        Self::BackwardUpper,
        Self::ForwardLower,
        Self::ForwardUpper,
    ];

    pub fn is_lower(self) -> bool {
        matches!(
            self,
            Self::ForwardParityLower
                | Self::BackwardParityLower
                | Self::BackwardLower
                | Self::ForwardLower
        )
    }

    pub fn has_parity(self) -> bool {
        matches!(
            self,
            Self::ForwardParityLower
                | Self::ForwardParityUpper
                | Self::BackwardParityLower
                | Self::BackwardParityUpper
        )
    }

    pub fn is_forward(self) -> bool {
        matches!(
            self,
            Self::ForwardParityLower
                | Self::ForwardParityUpper
                | Self::ForwardLower
                | Self::ForwardUpper
        )
    }

    pub fn applies(self, m: usize, k: usize) -> bool {
        if self.is_lower() {
            m >= k
        } else {
            m <= k
        }
    }

    /// The variant for operator (`forward`, `parity`) that covers `(m, k)`.
    pub fn select(forward: bool, parity: bool, m: usize, k: usize) -> Self {
        let lower = m >= k;
        match (forward, parity, lower) {
            (true, true, true) => Self::ForwardParityLower,
            (true, true, false) => Self::ForwardParityUpper,
            (false, true, true) => Self::BackwardParityLower,
            (false, true, false) => Self::BackwardParityUpper,
            (false, false, true) => Self::BackwardLower,
            (false, false, false) => Self::BackwardUpper,
            (true, false, true) => Self::ForwardLower,
            (true, false, false) => Self::ForwardUpper,
        }
    }

    // Sign relative to sqrt(min!/max!) theta^s L_min^s(theta^2).
    fn sign(self, m: usize, k: usize) -> f64 {
        let s = m.abs_diff(k);
        // F carries (-theta)^s above the diagonal, B below it
        let flips = self.is_forward() != self.is_lower();
        let mut sign = if flips { parity_sign(s) } else { 1.0 };
        if self.has_parity() {
            sign *= parity_sign(k);
        }
        sign
    }
}

fn appendix_log_element(
    variant: AppendixVariant,
    m: usize,
    k: usize,
    theta: f64,
) -> Result<LogAmplitude> {
    if !variant.applies(m, k) {
        return Err(Error::Domain(format!(
            "{variant:?} does not cover m={m}, k={k}"
        )));
    }
    let amp = log_amplitude_prefactor(m, k, theta)?;
    Ok(LogAmplitude {
        log_magnitude: amp.log_magnitude,
        sign: amp.sign * variant.sign(m, k),
    })
}

/// Closed-form `<m|...|k>` for one of the eight [`AppendixVariant`]s.
pub fn appendix_matrix_element(
    variant: AppendixVariant,
    m: usize,
    k: usize,
    theta: f64,
) -> Result<f64> {
    let amp = appendix_log_element(variant, m, k, theta)?;
    Ok(LogAmplitude {
        log_magnitude: amp.log_magnitude + 0.5 * theta * theta,
        sign: amp.sign,
    }
    .value())
}

/// `U(theta)` on the first `dim` number states, assembled from the eight
/// closed-form elements as
/// `exp(-theta^2/2) [(F - i F(-1)^n)/2 + (B + i B(-1)^n)/2]`.
///
/// The Gaussian factor is folded into each element in log form so that large
/// `theta` does not overflow.
pub fn assemble_evolution(theta: f64, dim: usize) -> Result<OperatorMatrix> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let half = C64::new(0.5, 0.0);
    let mut u = Array2::<C64>::zeros((dim, dim));
    for m in 0..dim {
        for k in 0..dim {
            let el = |forward, parity| -> Result<f64> {
                let v = AppendixVariant::select(forward, parity, m, k);
                Ok(appendix_log_element(v, m, k, theta)?.value())
            };
            let f = el(true, false)?;
            let fp = el(true, true)?;
            let b = el(false, false)?;
            let bp = el(false, true)?;
            u[[m, k]] = half * (C64::new(f, 0.0) - I * fp) + half * (C64::new(b, 0.0) + I * bp);
        }
    }
    OperatorMatrix::new(u)
}

/// Evolve `|beta, k>` over length `z` and return it with its four-component
/// decomposition.
pub fn propagate_cat(
    spec: &LatticeSpec,
    beta: C64,
    k: usize,
    z: f64,
) -> Result<(StateVector, CatDecomposition)> {
    propagate_cat_guarded(spec, beta, k, z, &TruncationGuard::default())
}

pub fn propagate_cat_guarded(
    spec: &LatticeSpec,
    beta: C64,
    k: usize,
    z: f64,
    guard: &TruncationGuard,
) -> Result<(StateVector, CatDecomposition)> {
    spec.validate()?;
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "z must be finite and nonnegative, got {z}"
        )));
    }
    let theta = spec.g * z;
    guard.check(beta.norm() + theta, k, spec.sites)?;
    let input = displaced_fock_guarded(beta, k, spec.sites, guard)?;
    let state = Propagator::new(spec)?.evolve(&input, z)?;
    Ok((state, CatDecomposition::from_lattice(beta, k, theta)))
}

/// The `z_j = z_max j / (samples - 1)` grid.
pub fn uniform_z_grid(z_max: f64, samples: usize) -> Vec<f64> {
    if samples < 2 {
        return vec![0.0];
    }
    (0..samples)
        .map(|j| z_max * j as f64 / (samples - 1) as f64)
        .collect()
}
