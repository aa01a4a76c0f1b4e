//! The full identity suite as run by `qnsch selftest`.

fn main() {
    let r = qnsch::bench::selftest();
    for c in &r.checks {
        println!("{:<26} {:<9} m={:<3} {:.3e}", c.name, c.bc, c.m, c.violation);
    }
    println!("max violation {:.3e} (pass at 1e-12: {})", r.max_violation(), r.passed(1e-12));
}
