//! A coherent launch with |beta|^2 = 50 splits into two lobes centred near
//! (|beta| -/+ gz)^2. On 150 sites the outer lobe reaches the edge by gz ~ 3.

use glauber_fock::cats::{coherent_state, CatDecomposition};
use glauber_fock::lattice::Propagator;
use glauber_fock::{LatticeSpec, C64};

fn main() -> glauber_fock::Result<()> {
    let beta = C64::new(50f64.sqrt(), 0.0);
    let spec = LatticeSpec::new(1.0, 150)?;
    let prop = Propagator::new(&spec)?;
    let psi = coherent_state(beta, 150)?;
    for z in [0.0, 1.0, 2.0, 3.0, 4.0] {
        let out = prop.evolve(&psi, z)?;
        let ideal = CatDecomposition::from_lattice(beta, 0, z).reconstruct(150)?;
        let lobes = [(beta.re - z).powi(2), (beta.re + z).powi(2)];
        println!(
            "gz={z:.1}  lobes near {:6.2} / {:6.2}  edge {:.1e}  vs infinite lattice {:.1e}",
            lobes[0],
            lobes[1],
            out.edge_population(spec.edge_sites),
            out.max_abs_diff(&ideal)?
        );
    }
    Ok(())
}
