//! Closed-form Green function against direct diagonalization, and the
//! leakage-driven breakdown on a short lattice.

use glauber_fock::lattice::{green_column, Propagator};
use glauber_fock::{LatticeSpec, StateVector};

fn main() -> glauber_fock::Result<()> {
    for sites in [60, 160] {
        let spec = LatticeSpec::new(1.0, sites)?;
        let prop = Propagator::new(&spec)?;
        for z in [1.0, 2.0, 3.0, 4.0] {
            let col = green_column(3, &spec, z)?;
            let num = prop.evolve(&StateVector::basis(sites, 3)?, z)?;
            println!(
                "N={sites:3} gz={z:.0}  max diff {:.1e}  analytic leakage {:.1e}",
                col.state.max_abs_diff(&num)?,
                col.leakage
            );
        }
    }
    Ok(())
}
