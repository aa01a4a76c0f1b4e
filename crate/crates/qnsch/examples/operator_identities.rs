//! Summation-by-parts and stencil identities on random staggered fields.
//!
//! `cargo run --release --example operator_identities`

use qnsch::bench::selftest::{algebraic_identities, bc_families, grid_identities, suite_grid, Sample};
use qnsch::scheme::ch_advection_flux;

fn main() {
    for (name, bc) in bc_families() {
        let s = Sample::new(suite_grid(16), bc, 7);
        println!("{name}:");
        for (identity, v) in grid_identities(&s, ch_advection_flux) {
            println!("  {identity:<26} {v:.3e}");
        }
    }
    for (identity, v) in algebraic_identities(1_000_000, 11) {
        println!("{identity:<28} {v:.3e}");
    }
}
