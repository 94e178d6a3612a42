//! The return amplitude <k|U(z)|k> is a Laguerre-Gaussian and traces the
//! number-state Wigner function along 2|alpha| = gz.

use glauber_fock::wigner::{diagonal_trace, linspace};
use glauber_fock::LatticeSpec;

fn main() -> glauber_fock::Result<()> {
    let spec = LatticeSpec::new(1.0, 160)?;
    let zs = linspace(0.0, 4.0, 401);
    for k in 0..=3 {
        let t = diagonal_trace(&spec, k, &zs)?;
        let zeros: Vec<String> = t
            .windows(2)
            .zip(&zs)
            .filter(|(w, _)| w[0].signum() != w[1].signum() && w[1] != 0.0)
            .map(|(_, z)| format!("{z:.2}"))
            .collect();
        println!(
            "k={k}: min {:+.4}, sign changes near gz = [{}]",
            t.iter().copied().fold(f64::INFINITY, f64::min),
            zeros.join(", ")
        );
    }
    Ok(())
}
