//! The Bell state under amplitude damping, depolarizing and generalized
//! amplitude damping noise on both qubits: concurrence dies, MIN survives.
//!
//! ```bash
//! cargo run -p qmin --example noisy_channels
//! ```

use qmin::channels::{
    analytic_evolved_xstate, depol_sudden_death_threshold, gad_sudden_death_threshold,
    sudden_death_threshold, sweep, xstate_measures, ChannelKind,
};

fn main() -> qmin::Result<()> {
    for (kind, p) in [
        (ChannelKind::AmplitudeDamping, None),
        (ChannelKind::Depolarizing, None),
        (ChannelKind::GeneralizedAmplitudeDamping, Some(2.0 / 3.0)),
    ] {
        println!("{kind}{}", p.map(|p| format!(" p = {p:.3}")).unwrap_or_default());
        println!("  gamma  concurrence  hs_min    f_min");
        for r in sweep(kind, 0.5, p, 11)? {
            println!(
                "  {:.1}    {:.6}     {:.6}  {:.6}",
                r.gamma, r.concurrence, r.hs_min, r.f_min
            );
        }
    }

    let e = analytic_evolved_xstate(ChannelKind::Depolarizing, 0.5, 0.5, None)?;
    let m = xstate_measures(&e);
    println!("\ndepolarizing gamma = 0.5 X state {e:?}");
    println!(
        "  C = {:.6}, hs_min = {:.6}, f_min = {:.6}",
        m.concurrence, m.hs_min, m.f_min
    );

    println!("\nsudden-death thresholds at alpha = 1/2");
    println!(
        "  depolarizing (Kraus evolution)  {:.6}",
        sudden_death_threshold(ChannelKind::Depolarizing, 0.5, None)?.unwrap()
    );
    println!(
        "  depolarizing closed form        {:.6}",
        depol_sudden_death_threshold(0.5)?
    );
    for p in [0.5, 2.0 / 3.0, 0.9, 1.0] {
        println!(
            "  gad p = {p:.3}                   {:?}",
            gad_sudden_death_threshold(0.5, p)?
        );
    }
    Ok(())
}
