//! Qubit `a`: the constrained closed form, the `(μ₂ + μ₃)/‖Γ‖²` value and the
//! eigenvalue bound, with and without a maximally mixed marginal.
//!
//! When `ρ^a` is not maximally mixed only one measurement preserves it, and
//! `(μ₂ + μ₃)/‖Γ‖²` can overshoot the constrained value. Balancing the
//! marginal makes all three agree.
//!
//! ```bash
//! cargo run -p qmin --example qubit_closed_form
//! ```

use qmin::basis::gamma_decompose;
use qmin::measures::{fmin_paper_2xn, fmin_upper_bound, min_exact_2xn};
use qmin::random::RandomSource;
use qmin::state::{balance_qubit_marginal, random_mixed_bipartite};

fn main() -> qmin::Result<()> {
    let mut rng = RandomSource::new(5);
    println!("dims  |x|        constrained    (mu2+mu3)/G2   bound");
    for n in [2, 3, 4] {
        let raw = random_mixed_bipartite(2, n, &mut rng);
        for s in [raw.clone(), balance_qubit_marginal(&raw)?] {
            let x = gamma_decompose(&s)?.x_norm();
            println!(
                "2x{n}   {x:.2e}   {:.10}   {:.10}   {:.10}",
                min_exact_2xn(&s)?.f_min,
                fmin_paper_2xn(&s)?,
                fmin_upper_bound(&s)?
            );
        }
    }
    Ok(())
}
