//! Displaced number state D(beta)|2> with |beta|^2 = 50 on 160 sites.

use glauber_fock::cats::displaced_fock;
use glauber_fock::lattice::{evolve_numeric, uniform_z_grid};
use glauber_fock::{LatticeSpec, C64};

fn main() -> glauber_fock::Result<()> {
    let beta = C64::new(50f64.sqrt(), 0.0);
    let spec = LatticeSpec::new(1.0, 160)?;
    let input = displaced_fock(beta, 2, 160)?;
    println!("input mean occupation {:.3}", input.mean_occupation());
    let zs = uniform_z_grid(4.0, 5);
    let rec = evolve_numeric(&spec, &input, &zs, "dfock")?;
    for (j, z) in zs.iter().enumerate() {
        let s = rec.state(j);
        println!(
            "gz={z:.1}  <m>={:8.3}  edge {:.1e}",
            s.mean_occupation(),
            s.edge_population(5)
        );
    }
    println!("status: {:?}", rec.status);
    Ok(())
}
