//! For pure states the F-MIN is `1 − Σ λ_i²`, the linear entropy of the
//! Schmidt spectrum.
//!
//! ```bash
//! cargo run -p qmin --example pure_states
//! ```

use qmin::measures::fmin_pure;
use qmin::optimizer::{oracle_report, OracleConfig};
use qmin::random::RandomSource;
use qmin::state::{random_pure_vector, schmidt};
use qmin::BipartiteState;

fn main() -> qmin::Result<()> {
    let mut rng = RandomSource::new(1);
    let cfg = OracleConfig::default();
    println!("dims  schmidt coefficients              1 - sum l^2   oracle f_min");
    for (m, n) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        let psi = random_pure_vector(m * n, &mut rng);
        let sd = schmidt(&psi, m, n)?;
        let s = BipartiteState::from_pure(&psi, m, n)?;
        let coeffs: Vec<String> = sd.coefficients.iter().map(|l| format!("{l:.4}")).collect();
        println!(
            "{m}x{n}   {:<34} {:.10}  {:.10}",
            coeffs.join(" "),
            fmin_pure(&sd),
            oracle_report(&s, &cfg)?.f_min
        );
    }
    Ok(())
}
