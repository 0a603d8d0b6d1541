//! JSON state files and sweep CSV, the interchange formats of the `qmin`
//! binary.
//!
//! ```bash
//! cargo run -p qmin --example state_files
//! ```

use qmin::channels::{sweep, ChannelKind};
use qmin::families::pure_alpha;
use qmin::io::{parse_state, state_to_json, sweep_csv};

fn main() -> qmin::Result<()> {
    let s = pure_alpha(0.3)?;
    let json = state_to_json(&s);
    println!("{json}");
    let back = parse_state(&json)?;
    println!(
        "round trip error {:.1e}\n",
        back.matrix().max_abs_diff(s.matrix())
    );

    print!(
        "{}",
        sweep_csv(&sweep(ChannelKind::AmplitudeDamping, 0.3, None, 6)?)
    );

    match parse_state(
        r#"{"dims": [2, 2], "matrix": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0.5,0]]]}"#,
    ) {
        Err(e) => println!("\nrejected: {e}"),
        Ok(_) => unreachable!("trace is 1.5"),
    }
    Ok(())
}
