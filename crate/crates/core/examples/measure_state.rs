//! Every measure of one mixed two-qubit state, by the exact qubit route and
//! by the measurement oracle.
//!
//! ```bash
//! cargo run -p qmin --example measure_state
//! ```

use qmin::measures::measure_report;
use qmin::optimizer::{oracle_report, OracleConfig};
use qmin::random::RandomSource;
use qmin::state::random_mixed_bipartite;

fn main() -> qmin::Result<()> {
    let mut rng = RandomSource::new(42);
    let s = random_mixed_bipartite(2, 2, &mut rng);
    let cfg = OracleConfig::default();

    let exact = measure_report(&s, &cfg)?;
    let oracle = oracle_report(&s, &cfg)?;

    println!("purity            {:.10}", exact.purity);
    println!("concurrence       {:.10}", exact.concurrence.unwrap());
    println!(
        "hs_min   exact    {:.10}   oracle {:.10}",
        exact.hs_min, oracle.hs_min
    );
    println!(
        "f_min    exact    {:.10}   oracle {:.10}",
        exact.f_min, oracle.f_min
    );
    println!("f_min    (mu2+mu3)/|Gamma|^2  {:.10}", exact.f_min_paper.unwrap());
    println!("f_min    upper bound          {:.10}", exact.f_min_upper_bound);
    println!(
        "hs_min - purity * f_min       {:.2e}",
        exact.hs_min - exact.purity * exact.f_min
    );
    Ok(())
}
