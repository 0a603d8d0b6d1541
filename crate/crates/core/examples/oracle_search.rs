//! The brute-force measurement oracle: marginal structure, the allowed
//! measurement family, and convergence of the Haar sampling plus Givens
//! refinement.
//!
//! ```bash
//! cargo run -p qmin --example oracle_search
//! ```

use qmin::measures::min_exact_2xn;
use qmin::optimizer::{allowed_measurements, marginal_structure, minimize, MeasurementFamily, OracleConfig};
use qmin::random::RandomSource;
use qmin::state::{balance_qubit_marginal, random_mixed_bipartite};

fn main() -> qmin::Result<()> {
    let generic = random_mixed_bipartite(3, 3, &mut RandomSource::new(3));
    let degenerate = balance_qubit_marginal(&random_mixed_bipartite(2, 3, &mut RandomSource::new(4)))?;
    for (name, s) in [("random 3x3", &generic), ("balanced 2x3", &degenerate)] {
        let ms = marginal_structure(s);
        let blocks: Vec<usize> = ms.blocks.iter().map(|b| b.multiplicity).collect();
        let family = match allowed_measurements(&ms) {
            MeasurementFamily::Unique { .. } => "unique eigenbasis".to_string(),
            MeasurementFamily::Manifold { blocks, .. } => format!("unitary manifold on {blocks:?}"),
        };
        println!("{name}: marginal blocks {blocks:?}, {family}");

        for samples in [10, 100, 2000] {
            let cfg = OracleConfig {
                samples,
                ..OracleConfig::default()
            };
            let min = minimize(s, &cfg);
            println!(
                "  samples {samples:<5} min purity {:.12}  f_min {:.12}  refinement cycles {}",
                min.value,
                1.0 - min.value / s.purity(),
                min.history.len() - 1
            );
        }
    }
    println!(
        "balanced 2x3 closed form f_min {:.12}",
        min_exact_2xn(&degenerate)?.f_min
    );
    Ok(())
}
