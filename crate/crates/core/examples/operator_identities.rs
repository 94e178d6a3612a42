//! The deformed displacement and its normal-ordered form, checked against a
//! brute-force matrix exponential on the well-resolved block.

use glauber_fock::cats::deformed_displacement;
use glauber_fock::fock::deformed_ladder;
use glauber_fock::lattice::{assemble_evolution, Propagator};
use glauber_fock::truncation::TruncationGuard;
use glauber_fock::{LatticeSpec, C64};

fn main() -> glauber_fock::Result<()> {
    let dim = 64;
    let guard = TruncationGuard::with_margin(1.0);
    let (a, ad) = deformed_ladder(dim)?;
    let alpha = C64::new(0.9, -0.6);
    let block = guard.interior_block(alpha.norm(), dim);
    let direct = (&ad.scale(alpha) - &a.scale(alpha.conj())).exp();
    let d = deformed_displacement(alpha, dim)?;
    println!(
        "D_NL vs exp(alpha A^+ - alpha* A): {:.1e} on {block} rows",
        d.max_abs_diff_block(&direct, block)
    );
    let normal = (&ad.scale(alpha).exp() * &a.scale(-alpha.conj()).exp())
        .scale(C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0));
    println!(
        "normal-ordered form: {:.1e}",
        d.max_abs_diff_block(&normal, block)
    );

    let prop = Propagator::new(&LatticeSpec::new(1.0, dim)?)?;
    for theta in [1.0, 2.0, 3.0] {
        let b = guard.interior_block(theta, dim);
        let u = assemble_evolution(theta, dim)?;
        println!(
            "theta={theta}: closed-form U vs exp(-i theta H) {:.1e}",
            u.max_abs_diff_block(&prop.matrix(theta), b)
        );
    }
    Ok(())
}
