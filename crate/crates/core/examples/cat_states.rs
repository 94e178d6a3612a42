//! Generalized cat states from the parity-deformed displacement.

use glauber_fock::cats::{cat_from_displaced, cat_from_fock};
use glauber_fock::C64;

fn main() -> glauber_fock::Result<()> {
    let alpha = C64::new(1.5, 0.5);
    let (psi, dec) = cat_from_fock(alpha, 1, 64)?;
    println!("D_NL(alpha)|1>: <n> = {:.4}", psi.mean_occupation());
    for c in &dec.components {
        println!(
            "  {:+.4} x D({:.3})|{}>",
            c.weight, c.displacement, c.fock_index
        );
    }
    println!(
        "  reconstruction error {:.1e}",
        psi.max_abs_diff(&dec.reconstruct(64)?)?
    );

    let beta = C64::new(0.0, 1.2);
    let (psi, dec) = cat_from_displaced(alpha, beta, 2, 96)?;
    println!(
        "D_NL(alpha)D(beta)|2>: {} components, reconstruction error {:.1e}",
        dec.len(),
        psi.max_abs_diff(&dec.reconstruct(96)?)?
    );
    Ok(())
}
