//! Single-site launches on a 60-site lattice: the vacuum spreads as a Poisson
//! distribution with mean (gz)^2, excited sites oscillate through zeros.

use glauber_fock::lattice::{evolve_numeric, uniform_z_grid};
use glauber_fock::{LatticeSpec, StateVector};

fn main() -> glauber_fock::Result<()> {
    let spec = LatticeSpec::new(1.0, 60)?;
    let zs = uniform_z_grid(4.0, 9);
    for k in [0, 3] {
        let rec = evolve_numeric(
            &spec,
            &StateVector::basis(60, k)?,
            &zs,
            &format!("fock:{k}"),
        )?;
        println!("launch site {k} (max leakage {:.1e})", rec.max_leakage());
        for (j, z) in zs.iter().enumerate() {
            let s = rec.state(j);
            println!(
                "  gz={z:.1}  <m>={:7.3}  I_k={:.4}",
                s.mean_occupation(),
                s.intensities()[k]
            );
        }
    }
    Ok(())
}
