//! Truncation guard for displaced number states.
//!
//! `D(alpha)|k>` has its photon-number support roughly inside
//! `sqrt(n) in [|alpha| - sqrt(k+1), |alpha| + sqrt(k+1)]`, with Gaussian tails
//! in `sqrt(n)`. The guard asks for `margin` extra units of `sqrt(n)` beyond
//! that ring, shrunk by `|alpha|^{1/4}` below `|alpha| = 1` because the tail
//! of a small displacement decays like `|alpha|^{2n}/n!`. With the default
//! margin of 3.5 the population outside the basis stays below 1e-21 for
//! `0.01 <= |alpha| <= 12`, `k <= 20`; `alpha = 0` needs only `dim > k`.

use crate::error::{Error, Result};

pub const DEFAULT_MARGIN: f64 = 3.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationGuard {
    pub margin: f64,
}

impl Default for TruncationGuard {
    fn default() -> Self {
        Self {
            margin: DEFAULT_MARGIN,
        }
    }
}

impl TruncationGuard {
    pub fn with_margin(margin: f64) -> Self {
        Self { margin }
    }

    fn effective_margin(&self, displacement: f64) -> f64 {
        self.margin * displacement.abs().min(1.0).powf(0.25)
    }

    /// Smallest basis that holds `D(alpha)|k>` with `|alpha| = displacement`.
    pub fn min_dim(&self, displacement: f64, fock_index: usize) -> usize {
        let r = displacement.abs()
            + ((fock_index + 1) as f64).sqrt()
            + self.effective_margin(displacement);
        ((r * r) - 1e-9).ceil().max((fock_index + 1) as f64) as usize
    }

    pub fn check(&self, displacement: f64, fock_index: usize, dim: usize) -> Result<()> {
        let required_dim = self.min_dim(displacement, fock_index);
        if required_dim > dim {
            Err(Error::TruncationRisk {
                displacement: displacement.abs(),
                fock_index,
                required_dim,
                dim,
            })
        } else {
            Ok(())
        }
    }

    /// Number of leading indices `k` for which `D(alpha)|k>` passes the guard
    /// in a basis of size `dim`; operator identities are compared on this block.
    pub fn interior_block(&self, displacement: f64, dim: usize) -> usize {
        let r = (dim as f64).sqrt() - displacement.abs() - self.effective_margin(displacement);
        if r <= 0.0 {
            0
        } else {
            ((r * r + 1e-9).floor() as usize).min(dim)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_block_agrees_with_check() {
        let g = TruncationGuard::default();
        for dim in [16, 64, 150] {
            for r in [0.0, 0.05, 0.7, 2.0, 5.0] {
                let b = g.interior_block(r, dim);
                for k in 0..b {
                    assert!(g.check(r, k, dim).is_ok(), "dim={dim} r={r} k={k}");
                }
                if b < dim {
                    assert!(g.check(r, b, dim).is_err(), "dim={dim} r={r} b={b}");
                }
            }
        }
    }

    #[test]
    fn zero_displacement_needs_only_the_index() {
        let g = TruncationGuard::default();
        assert_eq!(g.min_dim(0.0, 0), 1);
        assert_eq!(g.min_dim(0.0, 3), 4);
        assert_eq!(g.interior_block(0.0, 12), 12);
    }

    #[test]
    fn figure_inputs_fit() {
        let g = TruncationGuard::default();
        let beta = 50f64.sqrt();
        assert!(g.check(beta, 0, 150).is_ok());
        assert!(g.check(beta, 2, 160).is_ok());
        let err = g.check(beta + 4.0, 2, 160).unwrap_err();
        assert!(matches!(err, Error::TruncationRisk { required_dim, .. } if required_dim > 160));
    }
}
