//! Wigner functions of number states along the real axis, numeric vs closed form.

use glauber_fock::wigner::{linspace, wigner_fock_closed, wigner_point, STANDARD_NORMALIZATION};
use glauber_fock::{StateVector, C64};

fn main() -> glauber_fock::Result<()> {
    for k in 0..=3 {
        let psi = StateVector::basis(64, k)?;
        print!("k={k}:");
        for x in linspace(0.0, 2.0, 5) {
            let a = C64::new(x, 0.0);
            let w = wigner_point(&psi, a)?;
            assert!((w - wigner_fock_closed(k, a)).abs() < 1e-10);
            print!(" {w:+.4}");
        }
        println!();
    }
    println!("(multiply by {STANDARD_NORMALIZATION:.6} for unit-area normalization)");
    Ok(())
}
