//! Isotropic and Werner states: closed-form F-MIN against the oracle, the
//! vanishing points and the large-`m` limits.
//!
//! ```bash
//! cargo run -p qmin --example named_families
//! ```

use qmin::families::{fmin_isotropic, fmin_werner, isotropic, werner};
use qmin::optimizer::{oracle_report, OracleConfig};

fn main() -> qmin::Result<()> {
    let cfg = OracleConfig::default();
    for m in [2, 3] {
        println!("m = {m}");
        for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let o = oracle_report(&isotropic(m, x)?, &cfg)?.f_min;
            println!(
                "  isotropic x = {x:<5} closed {:.10}  oracle {o:.10}",
                fmin_isotropic(m, x)?
            );
        }
        for x in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let o = oracle_report(&werner(m, x)?, &cfg)?.f_min;
            println!(
                "  werner    x = {x:<5} closed {:.10}  oracle {o:.10}",
                fmin_werner(m, x)?
            );
        }
    }

    println!(
        "\nlarge m (isotropic x = 0.7 -> 1, werner x = 0.8 -> 0.64/1.64 = {:.6})",
        0.64 / 1.64
    );
    for m in [2, 4, 8, 16, 32, 1024] {
        println!(
            "  m = {m:<5} {:.6}  {:.6}",
            fmin_isotropic(m, 0.7)?,
            fmin_werner(m, 0.8)?
        );
    }
    Ok(())
}
