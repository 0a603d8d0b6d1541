//! Operator-basis expansion of a state: `Γ = (γ₀₀, x, y, T)` in the scaled
//! generalized Gell-Mann basis, with `‖Γ‖²` equal to the purity.
//!
//! ```bash
//! cargo run -p qmin --example gamma_basis
//! ```

use qmin::basis::{gamma_decompose, hs_inner, orthonormal_hermitian_basis, reconstruct};
use qmin::families::isotropic;
use qmin::measures::correlation_spectrum;

fn main() -> qmin::Result<()> {
    let b = orthonormal_hermitian_basis(3);
    let mut worst = 0.0f64;
    for (i, x) in b.ops().iter().enumerate() {
        for (j, y) in b.ops().iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((hs_inner(x, y).re - want).abs());
        }
    }
    println!(
        "d = 3 basis: {} elements, orthonormality defect {worst:.1e}",
        b.len()
    );

    let s = isotropic(3, 0.6)?;
    let g = gamma_decompose(&s)?;
    println!("isotropic m = 3, x = 0.6");
    println!(
        "  |x| = {:.2e}, |y| = {:.2e}",
        g.x_norm(),
        g.y.iter().map(|v| v * v).sum::<f64>().sqrt()
    );
    println!(
        "  |Gamma|^2 = {:.12}, purity = {:.12}",
        g.gamma_norm_sq,
        s.purity()
    );
    let spectrum: Vec<String> = correlation_spectrum(&g)?
        .iter()
        .map(|v| format!("{v:.5}"))
        .collect();
    println!("  spectrum of xx^t + TT^t: {}", spectrum.join(" "));
    println!(
        "  reconstruction error {:.1e}",
        reconstruct(&g)?.matrix().max_abs_diff(s.matrix())
    );
    Ok(())
}
