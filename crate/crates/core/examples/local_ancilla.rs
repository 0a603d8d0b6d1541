//! Appending an uncorrelated ancilla to the unmeasured party rescales the
//! Hilbert-Schmidt MIN by the ancilla purity but leaves the F-MIN alone.
//!
//! ```bash
//! cargo run -p qmin --example local_ancilla
//! ```

use qmin::measures::min_exact_2xn;
use qmin::random::RandomSource;
use qmin::state::{random_density, random_mixed_bipartite};

fn main() -> qmin::Result<()> {
    let mut rng = RandomSource::new(9);
    let ab = random_mixed_bipartite(2, 2, &mut rng);
    let base = min_exact_2xn(&ab)?;
    println!(
        "rho_ab            hs_min {:.8}  f_min {:.8}",
        base.hs_min, base.f_min
    );
    for d in [2, 3, 4] {
        let c = random_density(d, &mut rng);
        let e = min_exact_2xn(&ab.append_to_b(&c)?)?;
        println!(
            "rho_ab x rho_c({d}) hs_min {:.8}  f_min {:.8}   hs_min/purity(c) {:.8}",
            e.hs_min,
            e.f_min,
            e.hs_min / c.purity()
        );
    }
    Ok(())
}
